"""The quadratic action of a 3-connection and exact first-variation checks.

The action is S = ∫ <fake1, *fake1> + <fake2, *fake2> + <curv3, *curv3>
over the unit box.  Perturbing along a variation triple and extracting the
coefficient of the perturbation parameter symbolically turns the derivation
of the field equations into an exact algebraic identity:

    linear term of S(conn + eps*v)  ==  2 ∫ <vA, EA> - <vB, EB> + <vC, EC>

for boundary-vanishing (bumped) variations, where (EA, EB, EC) are the
field-equation residual forms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import StructureError
from .crossed import DifferentialTwoCrossedModule
from .forms import (
    AlgebraValuedForm,
    hodge,
    integrate_box,
    pair,
    random_form,
    zero_form,
)
from .gauge import ThreeConnection, curvatures, field_eq_residuals
from .invariants import InvariantFormTriple
from .polynomial import Polynomial
from .linalg import q


@dataclass(frozen=True)
class VariationTriple:
    """Perturbation directions for the three connection legs."""

    da: AlgebraValuedForm  # degree 1 in g
    db: AlgebraValuedForm  # degree 2 in h
    dc: AlgebraValuedForm  # degree 3 in l

    def __post_init__(self):
        if (self.da.degree, self.db.degree, self.dc.degree) != (1, 2, 3):
            raise StructureError("variation degrees must be (1, 2, 3)")

    @property
    def dim(self) -> int:
        return self.da.dim

    def pad_params(self, extra: int) -> "VariationTriple":
        return VariationTriple(
            self.da.pad_params(extra), self.db.pad_params(extra), self.dc.pad_params(extra)
        )

    def scale(self, c) -> "VariationTriple":
        return VariationTriple(self.da.scale(c), self.db.scale(c), self.dc.scale(c))


def random_variation(
    M: DifferentialTwoCrossedModule,
    dim: int,
    seed: int,
    degree_cap: int = 2,
    sparse: bool = True,
) -> VariationTriple:
    """Random perturbation directions; sparse picks one random component
    per leg (a random basis direction on a random index tuple), which keeps
    the exact arithmetic of repeated checks affordable."""
    rng = random.Random(seed)
    if not sparse:
        return VariationTriple(
            random_form(rng, M.g, dim, 1, degree_cap),
            random_form(rng, M.h, dim, 2, degree_cap),
            random_form(rng, M.l, dim, 3, degree_cap),
        )
    import itertools

    legs = []
    for algebra, degree in ((M.g, 1), (M.h, 2), (M.l, 3)):
        if algebra.dim == 0 or degree > dim:
            legs.append(zero_form(algebra, dim, degree))
            continue
        idx = rng.choice(list(itertools.combinations(range(dim), degree)))
        basis = rng.randrange(algebra.dim)
        exps = [0] * dim
        for _ in range(rng.randint(0, degree_cap)):
            exps[rng.randrange(dim)] += 1
        coeff = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 2))
        poly = Polynomial.monomial(tuple(exps), coeff, dim)
        vec = tuple(
            poly if a == basis else Polynomial.zero(dim) for a in range(algebra.dim)
        )
        legs.append(AlgebraValuedForm(dim, degree, algebra, {idx: vec}))
    return VariationTriple(*legs)


@lru_cache(maxsize=None)
def bump_polynomial(dim: int, nvars: int) -> Polynomial:
    """The window ∏_i x_i (1 - x_i) vanishing on every face of the box."""
    out = Polynomial.const(1, nvars)
    for i in range(dim):
        x = Polynomial.var(i, nvars)
        out = out * (x - x * x)
    return out


def bump(v: VariationTriple) -> VariationTriple:
    """Multiply every coefficient by the face-vanishing window."""
    w = bump_polynomial(v.dim, v.da.nvars)
    return VariationTriple(
        v.da.scale_poly(w), v.db.scale_poly(w), v.dc.scale_poly(w)
    )


def is_bumped(v: VariationTriple) -> bool:
    """Exact check that every coefficient vanishes on all faces of the box."""
    for form in (v.da, v.db, v.dc):
        for vec in form.components.values():
            for p in vec:
                for i in range(form.dim):
                    if not (p.substitute(i, 0).is_zero() and p.substitute(i, 1).is_zero()):
                        return False
    return True


def action_integrand(
    M: DifferentialTwoCrossedModule, conn: ThreeConnection, T: InvariantFormTriple
) -> AlgebraValuedForm:
    """The scalar top form <fake1,*fake1> + <fake2,*fake2> + <curv3,*curv3>."""
    conn.check_module(M)
    cs = curvatures(M, conn)
    total = pair(cs.f1, hodge(cs.f1), T)
    total = total + pair(cs.f2, hodge(cs.f2), T)
    total = total + pair(cs.omega3, hodge(cs.omega3), T)
    return total


def action(
    M: DifferentialTwoCrossedModule, conn: ThreeConnection, T: InvariantFormTriple
):
    """Exact action value; a Fraction, or a Polynomial if parameters are present."""
    if conn.dim < 4:
        raise StructureError("the action needs ambient dimension >= 4")
    return integrate_box(action_integrand(M, conn, T))


def perturbed_connection(conn: ThreeConnection, v: VariationTriple) -> ThreeConnection:
    """conn + eps * v with eps a fresh symbolic parameter (last variable)."""
    cp = conn.pad_params(1)
    vp = v.pad_params(1)
    nv = cp.a.nvars
    eps = Polynomial.var(nv - 1, nv)
    return ThreeConnection(
        cp.a + vp.da.scale_poly(eps),
        cp.b + vp.db.scale_poly(eps),
        cp.c + vp.dc.scale_poly(eps),
    )


def action_polynomial_in_eps(
    M: DifferentialTwoCrossedModule,
    conn: ThreeConnection,
    v: VariationTriple,
    T: InvariantFormTriple,
) -> Polynomial:
    """S(conn + eps v) as an exact univariate polynomial in eps."""
    return integrate_box(action_integrand(M, perturbed_connection(conn, v), T))


def first_variation_exact(
    M: DifferentialTwoCrossedModule,
    conn: ThreeConnection,
    v: VariationTriple,
    T: InvariantFormTriple,
) -> Fraction:
    """Coefficient of eps in S(conn + eps v), extracted symbolically.

    The curvatures of the perturbed connection are truncated to eps-degree 1
    before pairing; the dropped parts only feed eps^2 and higher, so the
    linear coefficient is exact.
    """
    pc = perturbed_connection(conn, v)
    eps_index = pc.a.nvars - 1
    cs = curvatures(M, pc)

    def trunc(w):
        return w.map_coefficients(lambda p: p.truncate_var(eps_index, 1))

    f1, f2, om3 = trunc(cs.f1), trunc(cs.f2), trunc(cs.omega3)
    total = pair(f1, hodge(f1), T)
    total = total + pair(f2, hodge(f2), T)
    total = total + pair(om3, hodge(om3), T)
    s = integrate_box(total)
    return s.terms.get((1,), Fraction(0))


def bulk_pairing(
    M: DifferentialTwoCrossedModule,
    conn: ThreeConnection,
    v: VariationTriple,
    T: InvariantFormTriple,
    require_bumped: bool = True,
) -> Fraction:
    """2 ∫ <vA, EA> - <vB, EB> + <vC, EC> for the residual forms.

    Needs a boundary-vanishing variation; otherwise the discarded boundary
    terms of the integrations by parts would not cancel.
    """
    if require_bumped and not is_bumped(v):
        raise StructureError("bulk pairing needs a bumped (boundary-vanishing) variation")
    ea, eb, ec = field_eq_residuals(M, conn, T)
    total = integrate_box(pair(v.da, ea, T))
    total -= integrate_box(pair(v.db, eb, T))
    total += integrate_box(pair(v.dc, ec, T))
    return 2 * total


def boundary_discrepancy(
    M: DifferentialTwoCrossedModule,
    conn: ThreeConnection,
    v: VariationTriple,
    T: InvariantFormTriple,
) -> Fraction:
    """|linear term - bulk pairing| without requiring a bumped variation.

    This is exactly the boundary contribution the integrations by parts
    discard; it vanishes for bumped variations and is generally nonzero
    otherwise, which is where the no-boundary assumption enters.
    """
    exact = first_variation_exact(M, conn, v, T)
    bulk = bulk_pairing(M, conn, v, T, require_bumped=False)
    return abs(exact - bulk)


@dataclass(frozen=True)
class GradCheckReport:
    exact_linear_coefficient: Fraction
    bulk_pairing_value: Fraction
    discrepancy: Fraction
    per_channel: dict[str, tuple[Fraction, Fraction]]
    float_sweep: tuple[tuple[float, float], ...] | None = None


def central_difference_exact(
    M: DifferentialTwoCrossedModule,
    conn: ThreeConnection,
    v: VariationTriple,
    T: InvariantFormTriple,
    step,
) -> Fraction:
    """(S(conn + t v) - S(conn - t v)) / 2t at a rational step, all exact."""
    t = q(step)
    splus = action(M, _shift(conn, v, t), T)
    sminus = action(M, _shift(conn, v, -t), T)
    return (splus - sminus) / (2 * t)


def _shift(conn: ThreeConnection, v: VariationTriple, t: Fraction) -> ThreeConnection:
    return ThreeConnection(
        conn.a + v.da.scale(t), conn.b + v.db.scale(t), conn.c + v.dc.scale(t)
    )


def gradcheck_report(
    M: DifferentialTwoCrossedModule,
    conn: ThreeConnection,
    v: VariationTriple,
    T: InvariantFormTriple,
    float_sweep: tuple | None = None,
) -> GradCheckReport:
    """Exact comparison of the symbolic linear term against the bulk pairing.

    The optional sweep evaluates exact central differences at the given
    rational steps and reports |quotient - bulk| as floats; the error decays
    quadratically in the step.
    """
    exact = first_variation_exact(M, conn, v, T)
    bulk = bulk_pairing(M, conn, v, T)
    per_channel = {}
    zero_a = zero_form(M.g, conn.dim, 1)
    zero_b = zero_form(M.h, conn.dim, 2)
    zero_c = zero_form(M.l, conn.dim, 3)
    channels = {
        "a": VariationTriple(v.da, zero_b, zero_c),
        "b": VariationTriple(zero_a, v.db, zero_c),
        "c": VariationTriple(zero_a, zero_b, v.dc),
    }
    for name, vc in channels.items():
        per_channel[name] = (
            first_variation_exact(M, conn, vc, T),
            bulk_pairing(M, conn, vc, T),
        )
    sweep = None
    if float_sweep is not None:
        rows = []
        for step in float_sweep:
            quotient = central_difference_exact(M, conn, v, T, step)
            rows.append((float(step), float(abs(quotient - bulk))))
        sweep = tuple(rows)
    return GradCheckReport(
        exact_linear_coefficient=exact,
        bulk_pairing_value=bulk,
        discrepancy=abs(exact - bulk),
        per_channel=per_channel,
        float_sweep=sweep,
    )


def convergence_order(sweep) -> float | None:
    """Least-squares slope of log error against log step; None if degenerate."""
    import math

    pts = [(s, e) for s, e in sweep if e > 0]
    if len(pts) < 2:
        return None
    xs = [math.log10(s) for s, _ in pts]
    ys = [math.log10(e) for _, e in pts]
    n = len(pts)
    xbar = sum(xs) / n
    ybar = sum(ys) / n
    denom = sum((x - xbar) ** 2 for x in xs)
    if denom == 0:
        return None
    return sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / denom
