"""Shipped instances: differential 2-crossed modules and finite group modules.

The differential collection covers the degenerate corners (abelian chains,
trivial legs for the reduction diagram) plus two structured families:

* ``rot_u1`` — a rotation action on an abelian plane with a nonzero Peiffer
  tensor commuting with the rotation; the smallest instance whose eta maps
  are nontrivial.
* ``e2_cone`` — the mapping-cone module of the Euclidean plane algebra: for
  the translation module V of a rotation generator, h = V ⋊ u(1) with
  alpha the projection, l = V with beta the inclusion, and Peiffer lifting
  {Y1, Y2} = -x2·J v1.  Every piece of structure (alpha, beta, actions,
  lifting) is nonzero, so all terms of the curvature identities and field
  equations are exercised.

The same data ships as TOML configs; tests assert the two agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import LieAlgebra, so3, so3_adjoint_rep, tensor_from_entries
from .crossed import DifferentialTwoCrossedModule
from .forms import MatrixRep
from .groups import FiniteGroup, FiniteTwoCrossedGroupModule
from .invariants import InvariantFormTriple, project_invariant
from .linalg import Mat, eye, mat, zeros


@dataclass(frozen=True)
class InstanceData:
    name: str
    module: DifferentialTwoCrossedModule | None
    axioms_disabled: tuple[str, ...] = ()
    rep_g: MatrixRep | None = None
    rep_h: MatrixRep | None = None
    alpha_right_inverse: Mat | None = None
    beta_right_inverse: Mat | None = None
    reduction: str | None = None
    finite: FiniteTwoCrossedGroupModule | None = None

    def invariant_triple(self) -> InvariantFormTriple:
        return project_invariant(self.module)


def abelian_chain() -> InstanceData:
    M = DifferentialTwoCrossedModule.build(
        l=LieAlgebra.abelian("l", 1),
        h=LieAlgebra.abelian("h", 2),
        g=LieAlgebra.abelian("g", 1),
    )
    return InstanceData("abelian-chain", M)


def rot_u1() -> InstanceData:
    l = LieAlgebra.abelian("l", 1)
    h = LieAlgebra.abelian("h", 2)
    g = LieAlgebra.abelian("g", 1)
    rot = tensor_from_entries(1, 2, 2, [(0, 0, 1, 1), (0, 1, 0, -1)])
    # {Y1, Y2} = Y1·Y2 + Y1ᵀ J Y2: commutes with the rotation generator.
    peiffer = tensor_from_entries(
        2, 2, 1, [(0, 0, 0, 1), (1, 1, 0, 1), (0, 1, 0, -1), (1, 0, 0, 1)]
    )
    M = DifferentialTwoCrossedModule.build(
        l=l, h=h, g=g, act_g_on_h=rot, peiffer_tensor=peiffer
    )
    return InstanceData("rot-u1", M)


def e2_cone() -> InstanceData:
    l = LieAlgebra.abelian("l", 2)
    h = LieAlgebra.from_brackets("h", 3, [(0, 2, 1, -1), (1, 2, 0, 1)])
    g = LieAlgebra.abelian("g", 1)
    alpha = mat([[0, 0, 1]])
    beta = mat([[1, 0], [0, 1], [0, 0]])
    act_h = tensor_from_entries(1, 3, 3, [(0, 0, 1, 1), (0, 1, 0, -1)])
    act_l = tensor_from_entries(1, 2, 2, [(0, 0, 1, 1), (0, 1, 0, -1)])
    peiffer = tensor_from_entries(3, 3, 2, [(0, 2, 1, -1), (1, 2, 0, 1)])
    M = DifferentialTwoCrossedModule.build(
        l=l, h=h, g=g, beta=beta, alpha=alpha,
        act_g_on_h=act_h, act_g_on_l=act_l, peiffer_tensor=peiffer,
    )
    return InstanceData(
        "e2-cone", M, alpha_right_inverse=mat([[0], [0], [1]])
    )


def so3_adjoint_l0() -> InstanceData:
    g = LieAlgebra("g", 3, so3().structure)
    h = LieAlgebra("h", 3, so3().structure)
    l = LieAlgebra.abelian("l", 0)
    M = DifferentialTwoCrossedModule.build(
        l=l, h=h, g=g, alpha=eye(3), act_g_on_h=g.structure
    )
    return InstanceData(
        "so3-adjoint-l0",
        M,
        rep_g=MatrixRep.build(g, so3_adjoint_rep()),
        rep_h=MatrixRep.build(h, so3_adjoint_rep()),
        reduction="2ym",
    )


def so3_peiffer_bracket() -> InstanceData:
    """The identity tower over the rotation algebra: l = h = g = so3 with
    beta the identity, alpha zero, adjoint actions, and the Peiffer lifting
    equal to the bracket.

    The pair axiom forces {beta Z, beta Z'} = [Z, Z'], so with beta = id the
    lifting must be the bracket, and the remaining axioms reduce to the
    Jacobi identity.  This is the shipped instance with a nonabelian l."""
    s = so3().structure
    M = DifferentialTwoCrossedModule.build(
        l=LieAlgebra("l", 3, s),
        h=LieAlgebra("h", 3, s),
        g=LieAlgebra("g", 3, s),
        beta=eye(3),
        alpha=zeros(3, 3),
        act_g_on_h=s,
        act_g_on_l=s,
        peiffer_tensor=s,
    )
    return InstanceData("so3-peiffer-bracket", M)


def so3_g_only() -> InstanceData:
    M = DifferentialTwoCrossedModule.build(
        l=LieAlgebra.abelian("l", 0),
        h=LieAlgebra.abelian("h", 0),
        g=LieAlgebra("g", 3, so3().structure),
    )
    return InstanceData("so3-g-only", M, reduction="1ym")


def so3_l_u1() -> InstanceData:
    M = DifferentialTwoCrossedModule.build(
        l=LieAlgebra.abelian("l", 1),
        h=LieAlgebra.abelian("h", 0),
        g=LieAlgebra("g", 3, so3().structure),
    )
    return InstanceData("so3-l-u1", M)


def elec1() -> InstanceData:
    M = DifferentialTwoCrossedModule.build(
        l=LieAlgebra.abelian("l", 0),
        h=LieAlgebra.abelian("h", 0),
        g=LieAlgebra.abelian("g", 1),
    )
    return InstanceData("elec1", M, reduction="1elec")


def elec2() -> InstanceData:
    M = DifferentialTwoCrossedModule.build(
        l=LieAlgebra.abelian("l", 0),
        h=LieAlgebra.abelian("h", 1),
        g=LieAlgebra.abelian("g", 0),
    )
    return InstanceData("elec2", M, reduction="2elec")


def elec3() -> InstanceData:
    M = DifferentialTwoCrossedModule.build(
        l=LieAlgebra.abelian("l", 1),
        h=LieAlgebra.abelian("h", 0),
        g=LieAlgebra.abelian("g", 0),
    )
    return InstanceData("elec3", M, reduction="3elec")


def flatland() -> InstanceData:
    """g trivial, beta surjective: the leg where fake-flat witnesses with
    nonzero 2-curvature can be solved for exactly."""
    M = DifferentialTwoCrossedModule.build(
        l=LieAlgebra.abelian("l", 2),
        h=LieAlgebra.abelian("h", 1),
        g=LieAlgebra.abelian("g", 0),
        beta=mat([[1, 0]]),
    )
    return InstanceData("flatland", M, beta_right_inverse=mat([[1], [0]]))


def noninvariant_action() -> InstanceData:
    """A hyperbolic (non-skew) action on h: no invariant SPD form exists."""
    act = tensor_from_entries(1, 2, 2, [(0, 0, 0, 1), (0, 1, 1, -1)])
    M = DifferentialTwoCrossedModule.build(
        l=LieAlgebra.abelian("l", 1),
        h=LieAlgebra.abelian("h", 2),
        g=LieAlgebra.abelian("g", 1),
        act_g_on_h=act,
    )
    return InstanceData("noninvariant-action", M)


DIFFERENTIAL_BUILDERS = {
    "abelian-chain": abelian_chain,
    "rot-u1": rot_u1,
    "e2-cone": e2_cone,
    "so3-adjoint-l0": so3_adjoint_l0,
    "so3-peiffer-bracket": so3_peiffer_bracket,
    "so3-g-only": so3_g_only,
    "so3-l-u1": so3_l_u1,
    "elec1": elec1,
    "elec2": elec2,
    "elec3": elec3,
    "flatland": flatland,
    "noninvariant-action": noninvariant_action,
}

# Instances whose projected invariant triple exists (all but the hyperbolic one).
VALIDATED_NAMES = tuple(n for n in DIFFERENTIAL_BUILDERS if n != "noninvariant-action")


# -- finite group instances -------------------------------------------------


def finite_trivial() -> FiniteTwoCrossedGroupModule:
    return FiniteTwoCrossedGroupModule.build(
        FiniteGroup.trivial("L"), FiniteGroup.trivial("H"), FiniteGroup.trivial("G"),
        [0], [0], [[0]], [[0]], [[0]],
    )


def finite_cyclic_chain() -> FiniteTwoCrossedGroupModule:
    """Z2 -> Z4 -> Z2 with trivial actions and lifting."""
    L = FiniteGroup.cyclic("L", 2)
    H = FiniteGroup.cyclic("H", 4)
    G = FiniteGroup.cyclic("G", 2)
    beta = [0, 2]
    alpha = [h % 2 for h in range(4)]
    act_l = [[0, 1], [0, 1]]
    act_h = [[0, 1, 2, 3], [0, 1, 2, 3]]
    lift = [[0] * 4 for _ in range(4)]
    return FiniteTwoCrossedGroupModule.build(L, H, G, beta, alpha, act_l, act_h, lift)


def finite_s3_lift() -> FiniteTwoCrossedGroupModule:
    """G = S3 acting on H = Z3 by conjugation, L = Z3 with the product lifting.

    beta is trivial, alpha embeds Z3 as the rotations, and {h1, h2} = h1·h2
    mod 3 is a nonzero G-equivariant Peiffer lifting (odd permutations invert
    both arguments, fixing the product).
    """
    L = FiniteGroup.cyclic("L", 3)
    H = FiniteGroup.cyclic("H", 3)
    G = FiniteGroup.symmetric3("G")
    beta = [0, 0, 0]
    alpha = [0, 1, 2]
    act_l = [[0, 1, 2]] * 6
    invert = [0, 2, 1]
    act_h = [[0, 1, 2]] * 3 + [invert] * 3
    lift = [[(h1 * h2) % 3 for h2 in range(3)] for h1 in range(3)]
    return FiniteTwoCrossedGroupModule.build(L, H, G, beta, alpha, act_l, act_h, lift)


FINITE_BUILDERS = {
    "finite-trivial": finite_trivial,
    "finite-cyclic-chain": finite_cyclic_chain,
    "finite-s3-lift": finite_s3_lift,
}
