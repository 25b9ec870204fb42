"""Differential crossed modules and differential 2-crossed modules.

A differential 2-crossed module is a complex of Lie algebras

    l --beta--> h --alpha--> g

with alpha∘beta = 0, a left action of g on all three algebras (on g itself
by the adjoint bracket) and a bilinear Peiffer lifting {,}: h x h -> l.
The axiom checker evaluates every defining identity on basis tuples and
reports exact residuals; individual axioms can be toggled off so that
partially-validated data can still be loaded for experiments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    AlgebraElement,
    LieAlgebra,
    StructureError,
    Tensor3,
    antisymmetry_residual,
    bracket,
    jacobi_residual,
    zero_tensor,
)
from .linalg import Mat, ZERO, mat_mul, mat_vec, shape, zeros


@dataclass(frozen=True)
class AxiomResult:
    residual: Fraction
    passed: bool
    skipped: bool = False
    reason: str | None = None


@dataclass
class AxiomReport:
    """Exact residual per named axiom; passes iff every enabled residual is 0."""

    results: dict[str, AxiomResult] = field(default_factory=dict)

    def record(self, name: str, residual: Fraction):
        self.results[name] = AxiomResult(residual, residual == 0)

    def skip(self, name: str, reason: str):
        self.results[name] = AxiomResult(ZERO, True, skipped=True, reason=reason)

    def all_passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def failed(self) -> list[str]:
        return [n for n, r in self.results.items() if not r.passed]

    def max_residual(self) -> Fraction:
        return max((r.residual for r in self.results.values()), default=ZERO)


def _act(tensor: Tensor3, x: AlgebraElement, target: LieAlgebra, coords) -> AlgebraElement:
    out = [ZERO] * target.dim
    for a, ca in enumerate(x.coords):
        if ca == 0:
            continue
        for b, cb in enumerate(coords):
            if cb == 0:
                continue
            cab = ca * cb
            row = tensor[a][b]
            for k in range(target.dim):
                if row[k] != 0:
                    out[k] += cab * row[k]
    return AlgebraElement(target, tuple(out))


@dataclass(frozen=True)
class DifferentialCrossedModule:
    """(h, g; alpha, act): alpha: h -> g equivariant, g acts on h by derivations."""

    h: LieAlgebra
    g: LieAlgebra
    alpha: Mat  # dim(g) x dim(h)
    act_on_h: Tensor3  # act_on_h[x][y][k]: coefficient of e_k in X_x |> Y_y

    def __post_init__(self):
        if shape(self.alpha) != (self.g.dim, self.h.dim) and self.g.dim * self.h.dim > 0:
            raise StructureError("alpha must be dim(g) x dim(h)")

    def alpha_apply(self, y: AlgebraElement) -> AlgebraElement:
        if y.algebra != self.h:
            raise StructureError("alpha_apply expects an element of h")
        return AlgebraElement(self.g, mat_vec(self.alpha, y.coords))

    def act(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        if x.algebra != self.g or y.algebra != self.h:
            raise StructureError("act expects (g, h) elements")
        return _act(self.act_on_h, x, self.h, y.coords)

    def axiom_report(self) -> AxiomReport:
        rep = AxiomReport()
        g, h = self.g, self.h
        rep.record("antisymmetry-g", antisymmetry_residual(g))
        rep.record("antisymmetry-h", antisymmetry_residual(h))
        rep.record("jacobi-g", jacobi_residual(g))
        rep.record("jacobi-h", jacobi_residual(h))
        rep.record("alpha-lie-map", _lie_map_residual(h, g, self.alpha))
        rep.record(
            "act-hom-h", _action_hom_residual(g, h, self.act_on_h)
        )
        rep.record(
            "act-derivation-h", _action_derivation_residual(g, h, self.act_on_h)
        )
        # alpha(X |> Y) = [X, alpha(Y)]
        worst = ZERO
        for a in range(g.dim):
            X = g.basis(a)
            for b in range(h.dim):
                Y = h.basis(b)
                lhs = self.alpha_apply(self.act(X, Y))
                rhs = bracket(X, self.alpha_apply(Y))
                worst = max(worst, (lhs - rhs).max_abs())
        rep.record("alpha-equivariant", worst)
        # alpha(Y) |> Y' = [Y, Y']  (crossed-module Peiffer identity)
        worst = ZERO
        for a in range(h.dim):
            Y = h.basis(a)
            for b in range(h.dim):
                Yp = h.basis(b)
                lhs = self.act(self.alpha_apply(Y), Yp)
                rhs = bracket(Y, Yp)
                worst = max(worst, (lhs - rhs).max_abs())
        rep.record("peiffer-identity", worst)
        return rep


# Axioms beyond the complex/action plumbing; each can be toggled off.
PEIFFER_AXIOMS = (
    "peiffer-equivariant",
    "peiffer-beta",
    "peiffer-pair",
    "peiffer-bracket-left",
    "peiffer-bracket-right",
)

ALL_AXIOMS = (
    "antisymmetry-g",
    "antisymmetry-h",
    "antisymmetry-l",
    "jacobi-g",
    "jacobi-h",
    "jacobi-l",
    "alpha-lie-map",
    "beta-lie-map",
    "alpha-beta-zero",
    "act-g-adjoint",
    "act-hom-g",
    "act-hom-h",
    "act-hom-l",
    "act-derivation-g",
    "act-derivation-h",
    "act-derivation-l",
    "alpha-equivariant",
    "beta-equivariant",
) + PEIFFER_AXIOMS


@dataclass(frozen=True)
class DifferentialTwoCrossedModule:
    l: LieAlgebra
    h: LieAlgebra
    g: LieAlgebra
    beta: Mat  # dim(h) x dim(l)
    alpha: Mat  # dim(g) x dim(h)
    act_g_on_g: Tensor3
    act_g_on_h: Tensor3
    act_g_on_l: Tensor3
    peiffer_tensor: Tensor3  # P[a][b][z]: coefficient of l-basis e_z in {Y_a, Y_b}

    def __post_init__(self):
        dl, dh, dg = self.l.dim, self.h.dim, self.g.dim
        if len(self.beta) != dh or any(len(r) != dl for r in self.beta):
            raise StructureError("beta must be dim(h) x dim(l)")
        if len(self.alpha) != dg or any(len(r) != dh for r in self.alpha):
            raise StructureError("alpha must be dim(g) x dim(h)")

    @classmethod
    def build(
        cls,
        l: LieAlgebra,
        h: LieAlgebra,
        g: LieAlgebra,
        beta: Mat | None = None,
        alpha: Mat | None = None,
        act_g_on_h: Tensor3 | None = None,
        act_g_on_l: Tensor3 | None = None,
        peiffer_tensor: Tensor3 | None = None,
    ) -> "DifferentialTwoCrossedModule":
        """Missing maps default to zero; the action of g on g is the adjoint."""
        return cls(
            l=l,
            h=h,
            g=g,
            beta=beta if beta is not None else zeros(h.dim, l.dim),
            alpha=alpha if alpha is not None else zeros(g.dim, h.dim),
            act_g_on_g=g.structure,
            act_g_on_h=act_g_on_h
            if act_g_on_h is not None
            else zero_tensor(g.dim, h.dim, h.dim),
            act_g_on_l=act_g_on_l
            if act_g_on_l is not None
            else zero_tensor(g.dim, l.dim, l.dim),
            peiffer_tensor=peiffer_tensor
            if peiffer_tensor is not None
            else zero_tensor(h.dim, h.dim, l.dim),
        )

    # -- basic maps ------------------------------------------------------

    def alpha_apply(self, y: AlgebraElement) -> AlgebraElement:
        if y.algebra != self.h:
            raise StructureError("alpha_apply expects an element of h")
        return AlgebraElement(self.g, mat_vec(self.alpha, y.coords))

    def beta_apply(self, z: AlgebraElement) -> AlgebraElement:
        if z.algebra != self.l:
            raise StructureError("beta_apply expects an element of l")
        return AlgebraElement(self.h, mat_vec(self.beta, z.coords))

    def act(self, x: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
        """Left action of g; on g itself this is the adjoint bracket."""
        if x.algebra != self.g:
            raise StructureError("act expects x in g")
        tensor = self.action_tensor_for(v.algebra)
        return _act(tensor, x, v.algebra, v.coords)

    def action_tensor_for(self, target: LieAlgebra) -> Tensor3:
        if target == self.g:
            return self.act_g_on_g
        if target == self.h:
            return self.act_g_on_h
        if target == self.l:
            return self.act_g_on_l
        raise StructureError(f"algebra {target.name} is not part of this module")

    def peiffer(self, y1: AlgebraElement, y2: AlgebraElement) -> AlgebraElement:
        """Peiffer lifting {y1, y2} in l, bilinear in both slots."""
        if y1.algebra != self.h or y2.algebra != self.h:
            raise StructureError("peiffer expects two elements of h")
        return _act(self.peiffer_tensor, y1, self.l, y2.coords)

    def act_h_prime(self, y: AlgebraElement, z: AlgebraElement) -> AlgebraElement:
        """Derived action of h on l: y |>' z = -{beta(z), y}."""
        if y.algebra != self.h or z.algebra != self.l:
            raise StructureError("act_h_prime expects (h, l) elements")
        return -self.peiffer(self.beta_apply(z), y)

    def prime_action_tensor(self) -> Tensor3:
        """Q[a][b][k]: coefficient of e_k in Y_a |>' Z_b."""
        dh, dl = self.h.dim, self.l.dim
        dlz = self.l.dim
        data = [[[ZERO] * dlz for _ in range(dl)] for _ in range(dh)]
        for a in range(dh):
            for b in range(dl):
                val = self.act_h_prime(self.h.basis(a), self.l.basis(b))
                for k in range(dlz):
                    data[a][b][k] = val.coords[k]
        return tuple(tuple(tuple(r) for r in p) for p in data)

    # -- axiom checker ---------------------------------------------------

    def axiom_report(self, disabled: tuple[str, ...] = ()) -> AxiomReport:
        for name in disabled:
            if name not in ALL_AXIOMS:
                raise StructureError(f"unknown axiom toggle: {name}")
        rep = AxiomReport()
        l, h, g = self.l, self.h, self.g

        def check(name, fn):
            if name in disabled:
                rep.skip(name, "disabled by toggle")
            else:
                rep.record(name, fn())

        check("antisymmetry-g", lambda: antisymmetry_residual(g))
        check("antisymmetry-h", lambda: antisymmetry_residual(h))
        check("antisymmetry-l", lambda: antisymmetry_residual(l))
        check("jacobi-g", lambda: jacobi_residual(g))
        check("jacobi-h", lambda: jacobi_residual(h))
        check("jacobi-l", lambda: jacobi_residual(l))
        check("alpha-lie-map", lambda: _lie_map_residual(h, g, self.alpha))
        check("beta-lie-map", lambda: _lie_map_residual(l, h, self.beta))
        check("alpha-beta-zero", self._alpha_beta_residual)
        check("act-g-adjoint", self._adjoint_residual)
        check("act-hom-g", lambda: _action_hom_residual(g, g, self.act_g_on_g))
        check("act-hom-h", lambda: _action_hom_residual(g, h, self.act_g_on_h))
        check("act-hom-l", lambda: _action_hom_residual(g, l, self.act_g_on_l))
        check(
            "act-derivation-g",
            lambda: _action_derivation_residual(g, g, self.act_g_on_g),
        )
        check(
            "act-derivation-h",
            lambda: _action_derivation_residual(g, h, self.act_g_on_h),
        )
        check(
            "act-derivation-l",
            lambda: _action_derivation_residual(g, l, self.act_g_on_l),
        )
        check("alpha-equivariant", self._alpha_equivariant_residual)
        check("beta-equivariant", self._beta_equivariant_residual)
        check("peiffer-equivariant", self._peiffer_equivariant_residual)
        check("peiffer-beta", self._peiffer_beta_residual)
        check("peiffer-pair", self._peiffer_pair_residual)
        check("peiffer-bracket-left", self._peiffer_bracket_left_residual)
        check("peiffer-bracket-right", self._peiffer_bracket_right_residual)
        return rep

    def validate(self, disabled: tuple[str, ...] = ()) -> AxiomReport:
        rep = self.axiom_report(disabled)
        if not rep.all_passed():
            raise StructureError(
                "axiom check failed: " + ", ".join(rep.failed())
            )
        return rep

    def _alpha_beta_residual(self) -> Fraction:
        prod = mat_mul(self.alpha, self.beta)
        return max((abs(x) for row in prod for x in row), default=ZERO)

    def _adjoint_residual(self) -> Fraction:
        worst = ZERO
        for a in range(self.g.dim):
            for b in range(self.g.dim):
                for k in range(self.g.dim):
                    worst = max(
                        worst,
                        abs(self.act_g_on_g[a][b][k] - self.g.structure[a][b][k]),
                    )
        return worst

    def _alpha_equivariant_residual(self) -> Fraction:
        # alpha(X |> Y) = [X, alpha(Y)]
        worst = ZERO
        for a in range(self.g.dim):
            X = self.g.basis(a)
            for b in range(self.h.dim):
                Y = self.h.basis(b)
                r = self.alpha_apply(self.act(X, Y)) - bracket(X, self.alpha_apply(Y))
                worst = max(worst, r.max_abs())
        return worst

    def _beta_equivariant_residual(self) -> Fraction:
        # beta(X |> Z) = X |> beta(Z)
        worst = ZERO
        for a in range(self.g.dim):
            X = self.g.basis(a)
            for b in range(self.l.dim):
                Z = self.l.basis(b)
                r = self.beta_apply(self.act(X, Z)) - self.act(X, self.beta_apply(Z))
                worst = max(worst, r.max_abs())
        return worst

    def _peiffer_equivariant_residual(self) -> Fraction:
        # X |> {Y1, Y2} = {X |> Y1, Y2} + {Y1, X |> Y2}
        worst = ZERO
        for a in range(self.g.dim):
            X = self.g.basis(a)
            for b in range(self.h.dim):
                Y1 = self.h.basis(b)
                for c in range(self.h.dim):
                    Y2 = self.h.basis(c)
                    r = (
                        self.act(X, self.peiffer(Y1, Y2))
                        - self.peiffer(self.act(X, Y1), Y2)
                        - self.peiffer(Y1, self.act(X, Y2))
                    )
                    worst = max(worst, r.max_abs())
        return worst

    def _peiffer_beta_residual(self) -> Fraction:
        # beta{Y1, Y2} = [Y1, Y2] - alpha(Y1) |> Y2
        worst = ZERO
        for a in range(self.h.dim):
            Y1 = self.h.basis(a)
            for b in range(self.h.dim):
                Y2 = self.h.basis(b)
                r = (
                    self.beta_apply(self.peiffer(Y1, Y2))
                    - bracket(Y1, Y2)
                    + self.act(self.alpha_apply(Y1), Y2)
                )
                worst = max(worst, r.max_abs())
        return worst

    def _peiffer_pair_residual(self) -> Fraction:
        # {beta Z1, beta Z2} = [Z1, Z2]
        worst = ZERO
        for a in range(self.l.dim):
            Z1 = self.l.basis(a)
            for b in range(self.l.dim):
                Z2 = self.l.basis(b)
                r = self.peiffer(self.beta_apply(Z1), self.beta_apply(Z2)) - bracket(
                    Z1, Z2
                )
                worst = max(worst, r.max_abs())
        return worst

    def _peiffer_bracket_left_residual(self) -> Fraction:
        # {[Y1,Y2], Y3} = alpha(Y1)|>{Y2,Y3} + {Y1,[Y2,Y3]}
        #                 - alpha(Y2)|>{Y1,Y3} - {Y2,[Y1,Y3]}
        worst = ZERO
        basis = [self.h.basis(a) for a in range(self.h.dim)]
        for Y1 in basis:
            for Y2 in basis:
                for Y3 in basis:
                    r = (
                        self.peiffer(bracket(Y1, Y2), Y3)
                        - self.act(self.alpha_apply(Y1), self.peiffer(Y2, Y3))
                        - self.peiffer(Y1, bracket(Y2, Y3))
                        + self.act(self.alpha_apply(Y2), self.peiffer(Y1, Y3))
                        + self.peiffer(Y2, bracket(Y1, Y3))
                    )
                    worst = max(worst, r.max_abs())
        return worst

    def _peiffer_bracket_right_residual(self) -> Fraction:
        # {Y1, [Y2,Y3]} = {beta{Y1,Y2}, Y3} - {beta{Y1,Y3}, Y2}
        worst = ZERO
        basis = [self.h.basis(a) for a in range(self.h.dim)]
        for Y1 in basis:
            for Y2 in basis:
                for Y3 in basis:
                    r = (
                        self.peiffer(Y1, bracket(Y2, Y3))
                        - self.peiffer(self.beta_apply(self.peiffer(Y1, Y2)), Y3)
                        + self.peiffer(self.beta_apply(self.peiffer(Y1, Y3)), Y2)
                    )
                    worst = max(worst, r.max_abs())
        return worst

    def has_trivial_peiffer(self) -> bool:
        return all(
            c == 0 for plane in self.peiffer_tensor for row in plane for c in row
        )

    def hg_pair_is_crossed_module(self) -> bool:
        """Whether (h, g; alpha, act) satisfies the crossed-module Peiffer
        identity alpha(Y) |> Y' = [Y, Y'], i.e. beta∘{,} vanishes.

        Bilinear-form identities on the h leg (ad-skewness of an invariant
        Gram) hold exactly in this restricted setting.
        """
        for a in range(self.h.dim):
            Y = self.h.basis(a)
            for b in range(self.h.dim):
                Yp = self.h.basis(b)
                if not self.beta_apply(self.peiffer(Y, Yp)).is_zero():
                    return False
        return True

    def has_trivial_beta(self) -> bool:
        return all(c == 0 for row in self.beta for c in row)

    def has_trivial_alpha(self) -> bool:
        return all(c == 0 for row in self.alpha for c in row)


def induced_crossed_module(
    M: DifferentialTwoCrossedModule, disabled: tuple[str, ...] = ()
) -> DifferentialCrossedModule:
    """The crossed module (l, h; beta, |>') derived from a validated module."""
    M.validate(disabled)
    return DifferentialCrossedModule(
        h=M.l, g=M.h, alpha=M.beta, act_on_h=M.prime_action_tensor()
    )


def _lie_map_residual(src: LieAlgebra, dst: LieAlgebra, m: Mat) -> Fraction:
    """Residual of f([a,b]) = [f(a), f(b)] over source basis pairs."""
    worst = ZERO
    for a in range(src.dim):
        ea = src.basis(a)
        for b in range(src.dim):
            eb = src.basis(b)
            lhs = AlgebraElement(dst, mat_vec(m, bracket(ea, eb).coords))
            rhs = bracket(
                AlgebraElement(dst, mat_vec(m, ea.coords)),
                AlgebraElement(dst, mat_vec(m, eb.coords)),
            )
            worst = max(worst, (lhs - rhs).max_abs())
    return worst


def _action_hom_residual(g: LieAlgebra, target: LieAlgebra, tensor: Tensor3) -> Fraction:
    """Residual of [X1,X2] |> v = X1 |> (X2 |> v) - X2 |> (X1 |> v)."""
    worst = ZERO
    for a in range(g.dim):
        X1 = g.basis(a)
        for b in range(g.dim):
            X2 = g.basis(b)
            for c in range(target.dim):
                v = target.basis(c)
                lhs = _act(tensor, bracket(X1, X2), target, v.coords)
                rhs = _act(tensor, X1, target, _act(tensor, X2, target, v.coords).coords) - _act(
                    tensor, X2, target, _act(tensor, X1, target, v.coords).coords
                )
                worst = max(worst, (lhs - rhs).max_abs())
    return worst


def _action_derivation_residual(
    g: LieAlgebra, target: LieAlgebra, tensor: Tensor3
) -> Fraction:
    """Residual of X |> [v,w] = [X |> v, w] + [v, X |> w]."""
    worst = ZERO
    for a in range(g.dim):
        X = g.basis(a)
        for b in range(target.dim):
            v = target.basis(b)
            for c in range(target.dim):
                w = target.basis(c)
                lhs = _act(tensor, X, target, bracket(v, w).coords)
                rhs = bracket(_act(tensor, X, target, v.coords), w) + bracket(
                    v, _act(tensor, X, target, w.coords)
                )
                worst = max(worst, (lhs - rhs).max_abs())
    return worst
