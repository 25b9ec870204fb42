"""3-connections, their curvatures, Bianchi residuals and field equations.

Conventions, for a connection (A, B, C) of degrees (1, 2, 3) valued in
(g, h, l):

    curv1 = dA + A∧A              fake1 = curv1 - alpha(B)
    curv2 = dB + A∧▷B             fake2 = curv2 - beta(C)
    curv3 = dC + A∧▷C + B∧{,}B

A∧A is computed as ½ A∧^[,]A, which agrees with the associative wedge for
1-forms; instances shipping a matrix representation may request the
associative route instead, and the two are compared in tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import StructureError
from .crossed import DifferentialTwoCrossedModule
from .forms import (
    AlgebraValuedForm,
    MatrixRep,
    alpha_star_form,
    beta_star_form,
    d,
    eta_bar,
    hodge,
    kappa_bar,
    lift_linear,
    lift_map,
    matrix_wedge,
    random_form,
    sigma_bar,
    wedge_action,
    wedge_bracket,
    wedge_peiffer,
    zero_form,
)
from .invariants import InvariantFormTriple
from .linalg import Mat


@dataclass(frozen=True)
class ThreeConnection:
    a: AlgebraValuedForm  # degree 1 in g
    b: AlgebraValuedForm  # degree 2 in h
    c: AlgebraValuedForm  # degree 3 in l

    def __post_init__(self):
        if (self.a.degree, self.b.degree, self.c.degree) != (1, 2, 3):
            raise StructureError("connection degrees must be (1, 2, 3)")
        if len({self.a.dim, self.b.dim, self.c.dim}) != 1:
            raise StructureError("connection forms live on different ambient spaces")
        if len({self.a.nvars, self.b.nvars, self.c.nvars}) != 1:
            raise StructureError("connection forms carry different parameters")

    @property
    def dim(self) -> int:
        return self.a.dim

    def check_module(self, M: DifferentialTwoCrossedModule):
        if (self.a.algebra, self.b.algebra, self.c.algebra) != (M.g, M.h, M.l):
            raise StructureError("connection algebras do not match the module")

    def pad_params(self, extra: int) -> "ThreeConnection":
        return ThreeConnection(
            self.a.pad_params(extra), self.b.pad_params(extra), self.c.pad_params(extra)
        )


@dataclass(frozen=True)
class CurvatureSet:
    omega1: AlgebraValuedForm  # 2-form, g
    omega2: AlgebraValuedForm  # 3-form, h
    omega3: AlgebraValuedForm  # 4-form, l
    f1: AlgebraValuedForm  # 2-form, g
    f2: AlgebraValuedForm  # 3-form, h


def zero_connection(
    M: DifferentialTwoCrossedModule, dim: int, nvars: int | None = None
) -> ThreeConnection:
    return ThreeConnection(
        zero_form(M.g, dim, 1, nvars),
        zero_form(M.h, dim, 2, nvars),
        zero_form(M.l, dim, 3, nvars),
    )


def random_connection(
    M: DifferentialTwoCrossedModule,
    dim: int,
    seed: int,
    degree_cap: int = 3,
    terms: int = 2,
    coeff_bound: int = 3,
) -> ThreeConnection:
    rng = random.Random(seed)
    return ThreeConnection(
        random_form(rng, M.g, dim, 1, degree_cap, terms, coeff_bound),
        random_form(rng, M.h, dim, 2, degree_cap, terms, coeff_bound),
        random_form(rng, M.l, dim, 3, degree_cap, terms, coeff_bound),
    )


def a_wedge_a(
    M: DifferentialTwoCrossedModule,
    a: AlgebraValuedForm,
    policy: str = "half-bracket",
    rep: MatrixRep | None = None,
) -> AlgebraValuedForm:
    """The quadratic term of curv1 as a g-valued 2-form.

    'half-bracket' uses ½ A∧^[,]A, valid for any 1-form.  'matrix-rep'
    multiplies in a faithful representation and converts back to
    coordinates; it requires the representation and must agree exactly.
    """
    if policy == "half-bracket":
        return wedge_bracket(a, a).scale(Fraction(1, 2))
    if policy == "matrix-rep":
        if rep is None:
            raise StructureError("matrix-rep policy requires a representation")
        return rep.decompose(matrix_wedge(rep.embed(a), rep.embed(a)))
    raise StructureError(f"unknown a_wedge_a policy {policy!r}")


def curvatures(
    M: DifferentialTwoCrossedModule,
    conn: ThreeConnection,
    policy: str = "half-bracket",
    rep: MatrixRep | None = None,
) -> CurvatureSet:
    conn.check_module(M)
    aa = a_wedge_a(M, conn.a, policy, rep)
    omega1 = d(conn.a) + aa
    omega2 = d(conn.b) + wedge_action(M, conn.a, conn.b)
    omega3 = (
        d(conn.c)
        + wedge_action(M, conn.a, conn.c)
        + wedge_peiffer(M, conn.b, conn.b)
    )
    f1 = omega1 - lift_map(M, "alpha", conn.b)
    f2 = omega2 - lift_map(M, "beta", conn.c)
    return CurvatureSet(omega1, omega2, omega3, f1, f2)


def is_fake_flat(
    M: DifferentialTwoCrossedModule, conn: ThreeConnection
) -> tuple[bool, bool]:
    cs = curvatures(M, conn)
    return cs.f1.is_zero(), cs.f2.is_zero()


def bianchi_residuals(
    M: DifferentialTwoCrossedModule, conn: ThreeConnection
) -> tuple[AlgebraValuedForm, AlgebraValuedForm, AlgebraValuedForm]:
    """Residual forms of the three differential identities; all zero for
    any connection over a module satisfying the structural axioms."""
    cs = curvatures(M, conn)
    r1 = d(cs.f1) + wedge_bracket(conn.a, cs.f1) + lift_map(M, "alpha", cs.f2)
    bb = wedge_peiffer(M, conn.b, conn.b)
    r2 = (
        d(cs.f2)
        + wedge_action(M, conn.a, cs.f2)
        - wedge_action(M, cs.f1 + lift_map(M, "alpha", conn.b), conn.b)
        + lift_map(M, "beta", cs.omega3 - bb)
    )
    f2_beta = cs.f2 + lift_map(M, "beta", conn.c)
    r3 = (
        d(cs.omega3)
        + wedge_action(M, conn.a, cs.omega3)
        - wedge_action(M, cs.f1 + lift_map(M, "alpha", conn.b), conn.c)
        - wedge_peiffer(M, f2_beta, conn.b)
        - wedge_peiffer(M, conn.b, f2_beta)
    )
    return r1, r2, r3


def flat_bianchi_residuals(
    M: DifferentialTwoCrossedModule, conn: ThreeConnection
) -> tuple[AlgebraValuedForm, AlgebraValuedForm, AlgebraValuedForm]:
    """Residuals of the plain-curvature identities; requires alpha = beta = 0."""
    if not (M.has_trivial_alpha() and M.has_trivial_beta()):
        raise StructureError(
            "plain-curvature identities require trivial alpha and beta"
        )
    cs = curvatures(M, conn)
    r1 = d(cs.omega1) + wedge_bracket(conn.a, cs.omega1)
    r2 = (
        d(cs.omega2)
        + wedge_action(M, conn.a, cs.omega2)
        - wedge_action(M, cs.omega1, conn.b)
    )
    r3 = (
        d(cs.omega3)
        + wedge_action(M, conn.a, cs.omega3)
        - wedge_action(M, cs.omega1, conn.c)
        - wedge_peiffer(M, cs.omega2, conn.b)
        - wedge_peiffer(M, conn.b, cs.omega2)
    )
    return r1, r2, r3


def field_eq_residuals(
    M: DifferentialTwoCrossedModule,
    conn: ThreeConnection,
    T: InvariantFormTriple,
    eta_convention: tuple[int, int] = (1, 2),
) -> tuple[AlgebraValuedForm, AlgebraValuedForm, AlgebraValuedForm]:
    """Left-minus-right residuals of the three field equations.

    eta_convention selects which of the two eta maps is called first; the
    sum is convention independent, so the output never changes.
    """
    conn.check_module(M)
    dim = conn.dim
    if dim < 4:
        raise StructureError("field equations need ambient dimension >= 4")
    cs = curvatures(M, conn)
    sf1, sf2, so3 = hodge(cs.f1), hodge(cs.f2), hodge(cs.omega3)
    i, j = eta_convention
    sign_d = Fraction((-1) ** dim)
    ea = (
        d(sf1)
        + wedge_bracket(conn.a, sf1)
        - sigma_bar(M, T, sf2, conn.b)
        - kappa_bar(M, T, so3, conn.c).scale(sign_d)
    )
    eb = (
        d(sf2)
        + wedge_action(M, conn.a, sf2)
        + eta_bar(M, T, i, so3, conn.b)
        + eta_bar(M, T, j, so3, conn.b)
        + alpha_star_form(T, sf1)
    )
    ec = d(so3) + wedge_action(M, conn.a, so3) - beta_star_form(T, sf2)
    return ea, eb, ec


def fake_flat_field_eq_residuals(
    M: DifferentialTwoCrossedModule,
    conn: ThreeConnection,
    T: InvariantFormTriple,
) -> tuple[AlgebraValuedForm, AlgebraValuedForm, AlgebraValuedForm]:
    """Residuals of the plain-curvature field equations; connection must be fake-flat."""
    flags = is_fake_flat(M, conn)
    if flags != (True, True):
        raise StructureError(f"connection is not fake-flat: {flags}")
    dim = conn.dim
    if dim < 4:
        raise StructureError("field equations need ambient dimension >= 4")
    cs = curvatures(M, conn)
    so1, so2, so3 = hodge(cs.omega1), hodge(cs.omega2), hodge(cs.omega3)
    sign_d = Fraction((-1) ** dim)
    ea = (
        d(so1)
        + wedge_bracket(conn.a, so1)
        - sigma_bar(M, T, so2, conn.b)
        - kappa_bar(M, T, so3, conn.c).scale(sign_d)
    )
    eb = (
        d(so2)
        + wedge_action(M, conn.a, so2)
        + eta_bar(M, T, 1, so3, conn.b)
        + eta_bar(M, T, 2, so3, conn.b)
    )
    ec = d(so3) + wedge_action(M, conn.a, so3)
    return ea, eb, ec


def fake_flat_witness(
    M: DifferentialTwoCrossedModule,
    dim: int,
    seed: int,
    alpha_right_inverse: Mat | None = None,
    beta_right_inverse: Mat | None = None,
    degree_cap: int = 3,
) -> ThreeConnection:
    """Construct a fake-flat connection by solving for B and C componentwise.

    Needs right inverses for whichever of alpha/beta must absorb curvature:
    B is solved from curv1 through the alpha right inverse (A is set to zero
    when dim g = 0), then C from curv2 through the beta right inverse (C is
    zero when that leg is not needed).  Raises if the result is not fake-flat.
    """
    rng = random.Random(seed)
    a = random_form(rng, M.g, dim, 1, degree_cap)
    omega1 = d(a) + a_wedge_a(M, a)
    if omega1.is_zero():
        b = random_form(rng, M.h, dim, 2, degree_cap)
        # keep fake 1-flatness: alpha(B) must stay zero
        if not lift_map(M, "alpha", b).is_zero():
            b = zero_form(M.h, dim, 2)
    elif alpha_right_inverse is not None:
        b = lift_linear(omega1, alpha_right_inverse, M.h)
    else:
        raise StructureError("cannot absorb curv1: no alpha right inverse")
    omega2 = d(b) + wedge_action(M, a, b)
    if omega2.is_zero():
        c = zero_form(M.l, dim, 3)
    elif beta_right_inverse is not None:
        c = lift_linear(omega2, beta_right_inverse, M.l)
    else:
        raise StructureError("cannot absorb curv2: no beta right inverse")
    conn = ThreeConnection(a, b, c)
    if is_fake_flat(M, conn) != (True, True):
        raise StructureError("witness construction failed to reach fake-flatness")
    return conn
