"""Reduced gauge theories, coded directly from their own field equations.

Each function below writes out the residuals of a classical theory in its
own terms — 2-form Yang-Mills, ordinary Yang-Mills, and the abelian p-form
theories — without calling the general residual machinery.  Feeding the
same connection data through both paths and comparing exactly is the check
that the general theory degenerates correctly when parts of the structure
are trivial.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import StructureError
from .crossed import DifferentialTwoCrossedModule
from .forms import (
    AlgebraValuedForm,
    alpha_star_form,
    d,
    hodge,
    lift_map,
    sigma_bar,
    wedge_action,
    wedge_bracket,
)
from .invariants import InvariantFormTriple

REDUCTION_TARGETS = ("2ym", "1ym", "3elec", "2elec", "1elec")


def two_form_ym_residuals(
    M: DifferentialTwoCrossedModule,
    T: InvariantFormTriple,
    a: AlgebraValuedForm,
    b: AlgebraValuedForm,
) -> tuple[AlgebraValuedForm, AlgebraValuedForm]:
    """2-form Yang-Mills for the crossed module (h, g): fake curvature
    F = dA + A∧A - alpha(B), 2-curvature G = dB + A∧▷B, equations

        d*F + A∧^[,]*F = sigma_bar(*G, B),   d*G + A∧▷*G = -alpha*(*F).
    """
    f = d(a) + wedge_bracket(a, a).scale(Fraction(1, 2)) - lift_map(M, "alpha", b)
    g2 = d(b) + wedge_action(M, a, b)
    sf, sg = hodge(f), hodge(g2)
    ea = d(sf) + wedge_bracket(a, sf) - sigma_bar(M, T, sg, b)
    eb = d(sg) + wedge_action(M, a, sg) + alpha_star_form(T, sf)
    return ea, eb


def ym_residuals(a: AlgebraValuedForm) -> AlgebraValuedForm:
    """Ordinary Yang-Mills: F = dA + A∧A, residual d*F + A∧^[,]*F."""
    f = d(a) + wedge_bracket(a, a).scale(Fraction(1, 2))
    sf = hodge(f)
    return d(sf) + wedge_bracket(a, sf)


def electromagnetism_residual(w: AlgebraValuedForm) -> AlgebraValuedForm:
    """Abelian p-form electrodynamics: field strength dW, residual d*dW."""
    if not w.algebra.is_abelian() or w.algebra.dim != 1:
        raise StructureError("abelian electrodynamics expects a 1-dim abelian algebra")
    return d(hodge(d(w)))


def reduction_applicable(M: DifferentialTwoCrossedModule, target: str) -> str | None:
    """Returns None when the instance matches the target's triviality
    pattern, otherwise a human-readable reason."""
    dl, dh, dg = M.l.dim, M.h.dim, M.g.dim
    if target == "2ym":
        if dl != 0:
            return "2-form Yang-Mills needs l trivial"
    elif target == "1ym":
        if dl != 0 or dh != 0:
            return "Yang-Mills needs l and h trivial"
    elif target == "3elec":
        if dh != 0 or dg != 0 or dl != 1 or not M.l.is_abelian():
            return "3-form electrodynamics needs h, g trivial and l = u(1)"
    elif target == "2elec":
        if dl != 0 or dg != 0 or dh != 1 or not M.h.is_abelian():
            return "2-form electrodynamics needs l, g trivial and h = u(1)"
    elif target == "1elec":
        if dl != 0 or dh != 0 or dg != 1 or not M.g.is_abelian():
            return "electrodynamics needs l, h trivial and g = u(1)"
    else:
        return f"unknown reduction target {target!r}"
    return None


def reduced_residuals(
    M: DifferentialTwoCrossedModule,
    T: InvariantFormTriple,
    target: str,
    conn,
) -> dict[str, AlgebraValuedForm]:
    """Residuals of the directly coded reduced theory, keyed by channel."""
    reason = reduction_applicable(M, target)
    if reason:
        raise StructureError(reason)
    if target == "2ym":
        ea, eb = two_form_ym_residuals(M, T, conn.a, conn.b)
        return {"a": ea, "b": eb}
    if target == "1ym":
        return {"a": ym_residuals(conn.a)}
    if target == "3elec":
        return {"c": electromagnetism_residual(conn.c)}
    if target == "2elec":
        return {"b": electromagnetism_residual(conn.b)}
    if target == "1elec":
        return {"a": electromagnetism_residual(conn.a)}
    raise StructureError(f"unknown reduction target {target!r}")
