"""Lie-algebra-valued differential forms on the unit box in R^d.

A degree-k form stores, per strictly increasing index tuple I (0-based),
a coordinate vector of polynomials over the algebra basis.  All wedge
combinators share one bilinear kernel contracted against a rank-3 tensor;
the Hodge star is the flat Euclidean one for the standard orientation
dx_1 ∧ ... ∧ dx_d.

Polynomials may carry extra parameter variables beyond the d box
coordinates (``nvars > dim``); the exterior derivative, star and box
integral act on the box coordinates only.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement, LieAlgebra, StructureError, Tensor3
from .invariants import (
    InvariantFormTriple,
    alpha_star_matrix,
    beta_star_matrix,
    eta_tensor,
    kappa_tensor,
    sigma_tensor,
)
from .crossed import DifferentialTwoCrossedModule
from .linalg import Mat, ZERO, mat, mat_sub, mat_mul
from .polynomial import Polynomial

SCALAR = LieAlgebra.abelian("scalar", 1)

Index = tuple[int, ...]


def merge_indices(I: Index, J: Index) -> tuple[Index, int] | None:
    """Sorted union of disjoint increasing tuples with the shuffle sign."""
    if set(I) & set(J):
        return None
    inversions = sum(1 for i in I for j in J if i > j)
    merged = tuple(sorted(I + J))
    return merged, (-1) ** inversions


class AlgebraValuedForm:
    __slots__ = ("dim", "degree", "algebra", "nvars", "components")

    def __init__(
        self,
        dim: int,
        degree: int,
        algebra: LieAlgebra,
        components: dict[Index, tuple[Polynomial, ...]] | None = None,
        nvars: int | None = None,
    ):
        if degree < 0:
            raise StructureError("negative form degree")
        self.dim = dim
        self.degree = degree
        self.algebra = algebra
        self.nvars = nvars if nvars is not None else dim
        clean: dict[Index, tuple[Polynomial, ...]] = {}
        if components:
            if degree > dim:
                raise StructureError("components given for degree above ambient dim")
            for idx, vec in components.items():
                idx = tuple(idx)
                if len(idx) != degree or any(
                    idx[i] >= idx[i + 1] for i in range(len(idx) - 1)
                ):
                    raise StructureError(f"index tuple {idx} not strictly increasing of length {degree}")
                if any(i < 0 or i >= dim for i in idx):
                    raise StructureError(f"index out of range in {idx}")
                if len(vec) != algebra.dim:
                    raise StructureError("component vector does not match algebra dim")
                if any(p.nvars != self.nvars for p in vec):
                    raise StructureError("component polynomial has wrong nvars")
                if any(not p.is_zero() for p in vec):
                    clean[idx] = tuple(vec)
        self.components = clean

    # -- basics ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraValuedForm)
            and self.dim == other.dim
            and self.degree == other.degree
            and self.algebra == other.algebra
            and self.nvars == other.nvars
            and self.components == other.components
        )

    def component(self, idx: Index) -> tuple[Polynomial, ...]:
        zero = Polynomial.zero(self.nvars)
        return self.components.get(tuple(idx), (zero,) * self.algebra.dim)

    def _compat(self, other: "AlgebraValuedForm"):
        if self.dim != other.dim or self.nvars != other.nvars:
            raise StructureError("forms over different ambient spaces")

    def __add__(self, other: "AlgebraValuedForm") -> "AlgebraValuedForm":
        self._compat(other)
        if self.algebra != other.algebra or self.degree != other.degree:
            raise StructureError("can only add forms of equal degree and algebra")
        out = dict(self.components)
        for idx, vec in other.components.items():
            if idx in out:
                out[idx] = tuple(a + b for a, b in zip(out[idx], vec))
            else:
                out[idx] = vec
        return AlgebraValuedForm(self.dim, self.degree, self.algebra, out, self.nvars)

    def __sub__(self, other: "AlgebraValuedForm") -> "AlgebraValuedForm":
        return self + (-other)

    def __neg__(self) -> "AlgebraValuedForm":
        return AlgebraValuedForm(
            self.dim,
            self.degree,
            self.algebra,
            {i: tuple(-p for p in v) for i, v in self.components.items()},
            self.nvars,
        )

    def scale(self, c) -> "AlgebraValuedForm":
        return AlgebraValuedForm(
            self.dim,
            self.degree,
            self.algebra,
            {i: tuple(c * p for p in v) for i, v in self.components.items()},
            self.nvars,
        )

    def scale_poly(self, p: Polynomial) -> "AlgebraValuedForm":
        """Multiply every coefficient by a fixed polynomial factor."""
        return AlgebraValuedForm(
            self.dim,
            self.degree,
            self.algebra,
            {i: tuple(p * c for c in v) for i, v in self.components.items()},
            self.nvars,
        )

    def pad_params(self, extra: int) -> "AlgebraValuedForm":
        return AlgebraValuedForm(
            self.dim,
            self.degree,
            self.algebra,
            {i: tuple(p.pad(extra) for p in v) for i, v in self.components.items()},
            self.nvars + extra,
        )

    def max_abs_coeff(self) -> Fraction:
        worst = ZERO
        for vec in self.components.values():
            for p in vec:
                for c in p.terms.values():
                    worst = max(worst, abs(c))
        return worst

    def map_coefficients(self, fn) -> "AlgebraValuedForm":
        return AlgebraValuedForm(
            self.dim,
            self.degree,
            self.algebra,
            {i: tuple(fn(p) for p in v) for i, v in self.components.items()},
            self.nvars,
        )

    def __repr__(self):
        return (
            f"AlgebraValuedForm(dim={self.dim}, degree={self.degree}, "
            f"algebra={self.algebra.name}, nonzero={len(self.components)})"
        )


def zero_form(
    algebra: LieAlgebra, dim: int, degree: int, nvars: int | None = None
) -> AlgebraValuedForm:
    return AlgebraValuedForm(dim, degree, algebra, None, nvars)


def scalar_form(
    dim: int, components: dict[Index, Polynomial], degree: int, nvars: int | None = None
) -> AlgebraValuedForm:
    return AlgebraValuedForm(
        dim, degree, SCALAR, {i: (p,) for i, p in components.items()}, nvars
    )


def constant_form(
    element: AlgebraElement, dim: int, idx: Index, nvars: int | None = None
) -> AlgebraValuedForm:
    """The form coords * dx_idx with constant coefficients."""
    nv = nvars if nvars is not None else dim
    vec = tuple(Polynomial.const(c, nv) for c in element.coords)
    return AlgebraValuedForm(dim, len(idx), element.algebra, {tuple(idx): vec}, nv)


# -- exterior derivative and star -----------------------------------------


def d(w: AlgebraValuedForm) -> AlgebraValuedForm:
    """Exterior derivative; box coordinates only, parameters are constants."""
    if w.degree >= w.dim:
        return zero_form(w.algebra, w.dim, w.degree + 1, w.nvars)
    out: dict[Index, list[Polynomial]] = {}
    zero = Polynomial.zero(w.nvars)
    for idx, vec in w.components.items():
        in_idx = set(idx)
        for v in range(w.dim):
            if v in in_idx:
                continue
            sign = (-1) ** sum(1 for i in idx if i < v)
            nidx = tuple(sorted(idx + (v,)))
            dest = out.setdefault(nidx, [zero] * w.algebra.dim)
            for a, p in enumerate(vec):
                dp = p.diff(v)
                if not dp.is_zero():
                    dest[a] = dest[a] + sign * dp
    return AlgebraValuedForm(
        w.dim, w.degree + 1, w.algebra, {i: tuple(v) for i, v in out.items()}, w.nvars
    )


def hodge(w: AlgebraValuedForm) -> AlgebraValuedForm:
    """Euclidean star on [0,1]^d with orientation dx_1 ∧ ... ∧ dx_d."""
    if w.degree > w.dim:
        return zero_form(w.algebra, w.dim, w.dim - w.degree if w.dim >= w.degree else 0, w.nvars)
    allv = set(range(w.dim))
    out = {}
    for idx, vec in w.components.items():
        comp = tuple(sorted(allv - set(idx)))
        _, sign = merge_indices(idx, comp)
        out[comp] = tuple(-p for p in vec) if sign == -1 else vec
    return AlgebraValuedForm(w.dim, w.dim - w.degree, w.algebra, out, w.nvars)


# -- wedges ----------------------------------------------------------------


def wedge_scalar(w1: AlgebraValuedForm, w2: AlgebraValuedForm) -> AlgebraValuedForm:
    """Plain wedge of two scalar forms."""
    if w1.algebra != SCALAR or w2.algebra != SCALAR:
        raise StructureError("wedge_scalar expects scalar forms")
    return wedge_bilinear(w1, w2, ((  (Fraction(1),),),), SCALAR)


def wedge_bilinear(
    w1: AlgebraValuedForm,
    w2: AlgebraValuedForm,
    tensor: Tensor3,
    out_algebra: LieAlgebra,
) -> AlgebraValuedForm:
    """Sum over components of w1^a ∧ w2^b tensor[a][b] in the target algebra."""
    w1._compat(w2)
    deg = w1.degree + w2.degree
    if deg > w1.dim:
        return zero_form(out_algebra, w1.dim, deg, w1.nvars)
    out: dict[Index, list[Polynomial]] = {}
    zero = Polynomial.zero(w1.nvars)
    for i1, v1 in w1.components.items():
        for i2, v2 in w2.components.items():
            merged = merge_indices(i1, i2)
            if merged is None:
                continue
            nidx, sign = merged
            dest = out.setdefault(nidx, [zero] * out_algebra.dim)
            for a, p1 in enumerate(v1):
                if p1.is_zero():
                    continue
                for b, p2 in enumerate(v2):
                    if p2.is_zero():
                        continue
                    row = tensor[a][b]
                    prod = None
                    for k in range(out_algebra.dim):
                        if row[k] != 0:
                            if prod is None:
                                prod = p1 * p2
                                if sign == -1:
                                    prod = -prod
                            dest[k] = dest[k] + row[k] * prod
    return AlgebraValuedForm(
        w1.dim, deg, out_algebra, {i: tuple(v) for i, v in out.items()}, w1.nvars
    )


def wedge_bracket(w1: AlgebraValuedForm, w2: AlgebraValuedForm) -> AlgebraValuedForm:
    if w1.algebra != w2.algebra:
        raise StructureError("bracket wedge expects forms in the same algebra")
    return wedge_bilinear(w1, w2, w1.algebra.structure, w1.algebra)


def wedge_action(
    M: DifferentialTwoCrossedModule, a: AlgebraValuedForm, w: AlgebraValuedForm
) -> AlgebraValuedForm:
    if a.algebra != M.g:
        raise StructureError("action wedge expects the first form in g")
    return wedge_bilinear(a, w, M.action_tensor_for(w.algebra), w.algebra)


def wedge_peiffer(
    M: DifferentialTwoCrossedModule, b1: AlgebraValuedForm, b2: AlgebraValuedForm
) -> AlgebraValuedForm:
    if b1.algebra != M.h or b2.algebra != M.h:
        raise StructureError("Peiffer wedge expects two h-valued forms")
    return wedge_bilinear(b1, b2, M.peiffer_tensor, M.l)


def wedge_prime_action(
    M: DifferentialTwoCrossedModule, b: AlgebraValuedForm, c: AlgebraValuedForm
) -> AlgebraValuedForm:
    if b.algebra != M.h or c.algebra != M.l:
        raise StructureError("prime action wedge expects (h, l) forms")
    return wedge_bilinear(b, c, M.prime_action_tensor(), M.l)


def wedge(
    w1: AlgebraValuedForm,
    w2: AlgebraValuedForm,
    combinator: str,
    M: DifferentialTwoCrossedModule | None = None,
    rep: "MatrixRep | None" = None,
):
    """Dispatch over the wedge combinators.

    'plain' requires an associative matrix representation and returns a
    MatrixForm; the other combinators return algebra-valued forms.
    """
    if combinator == "bracket":
        return wedge_bracket(w1, w2)
    if combinator in ("action", "peiffer", "prime_action"):
        if M is None:
            raise StructureError(f"{combinator!r} wedge needs the 2-crossed module")
        if combinator == "action":
            return wedge_action(M, w1, w2)
        if combinator == "peiffer":
            return wedge_peiffer(M, w1, w2)
        return wedge_prime_action(M, w1, w2)
    if combinator == "plain":
        if rep is None:
            raise StructureError(
                "plain wedge needs a matrix representation; structure constants alone do not determine it"
            )
        return matrix_wedge(rep.embed(w1), rep.embed(w2))
    raise StructureError(f"unknown combinator {combinator!r}")


def lift_linear(
    w: AlgebraValuedForm, matrix: Mat, out_algebra: LieAlgebra
) -> AlgebraValuedForm:
    """Apply a constant linear map component-wise (degree unchanged)."""
    out = {}
    zero = Polynomial.zero(w.nvars)
    for idx, vec in w.components.items():
        dest = [zero] * out_algebra.dim
        for k in range(out_algebra.dim):
            row = matrix[k]
            for a, p in enumerate(vec):
                if row[a] != 0 and not p.is_zero():
                    dest[k] = dest[k] + row[a] * p
        out[idx] = tuple(dest)
    return AlgebraValuedForm(w.dim, w.degree, out_algebra, out, w.nvars)


def lift_map(
    M: DifferentialTwoCrossedModule, which: str, w: AlgebraValuedForm
) -> AlgebraValuedForm:
    """alpha/beta applied to a form: sum_a w^a (map basis_a)."""
    if which == "alpha":
        if w.algebra != M.h:
            raise StructureError("alpha lifts h-valued forms")
        return lift_linear(w, M.alpha, M.g)
    if which == "beta":
        if w.algebra != M.l:
            raise StructureError("beta lifts l-valued forms")
        return lift_linear(w, M.beta, M.h)
    raise StructureError("lift_map expects 'alpha' or 'beta'")


# -- pairings ---------------------------------------------------------------


def pair_gram(w1: AlgebraValuedForm, w2: AlgebraValuedForm, gram: Mat) -> AlgebraValuedForm:
    if w1.algebra != w2.algebra:
        raise StructureError("pairing expects forms in the same algebra")
    tensor = tuple(tuple((gram[a][b],) for b in range(len(gram))) for a in range(len(gram)))
    if w1.algebra.dim == 0:
        return zero_form(SCALAR, w1.dim, w1.degree + w2.degree, w1.nvars)
    return wedge_bilinear(w1, w2, tensor, SCALAR)


def pair(
    w1: AlgebraValuedForm, w2: AlgebraValuedForm, T: InvariantFormTriple
) -> AlgebraValuedForm:
    """<w1, w2>: scalar form of degree k1 + k2."""
    return pair_gram(w1, w2, T.gram_for(w1.algebra))


def integrate_box(w: AlgebraValuedForm):
    """Exact integral of a scalar top form over [0,1]^d.

    Returns a Fraction, or a Polynomial in the parameter variables when the
    form carries parameters.
    """
    if w.algebra != SCALAR:
        raise StructureError("integrate_box expects a scalar form")
    if w.degree != w.dim:
        raise StructureError("integrate_box expects a top-degree form")
    top = tuple(range(w.dim))
    poly = w.component(top)[0]
    result = poly.box_integral(w.dim)
    if w.nvars == w.dim:
        return result.as_fraction()
    return result


def integrate_box_quadrature(w: AlgebraValuedForm) -> float:
    """Gauss-Legendre tensor quadrature of a scalar top form (float oracle)."""
    import numpy as np

    if w.algebra != SCALAR or w.degree != w.dim:
        raise StructureError("quadrature expects a scalar top-degree form")
    if w.nvars != w.dim:
        raise StructureError("quadrature does not support parameter variables")
    poly = w.component(tuple(range(w.dim)))[0]
    if poly.is_zero():
        return 0.0
    max_exp = max(max(e) for e in poly.terms)
    n = max_exp // 2 + 1
    nodes, weights = np.polynomial.legendre.leggauss(n)
    nodes = 0.5 * (nodes + 1.0)
    weights = 0.5 * weights
    total = 0.0
    for pt in itertools.product(range(n), repeat=w.dim):
        x = [nodes[i] for i in pt]
        wgt = 1.0
        for i in pt:
            wgt *= weights[i]
        total += wgt * poly.eval_float(x)
    return total


# -- lifted bilinear maps ---------------------------------------------------


def sigma_bar(
    M: DifferentialTwoCrossedModule,
    T: InvariantFormTriple,
    b1: AlgebraValuedForm,
    b2: AlgebraValuedForm,
) -> AlgebraValuedForm:
    if b1.algebra != M.h or b2.algebra != M.h:
        raise StructureError("sigma_bar expects h-valued forms")
    return wedge_bilinear(b1, b2, sigma_tensor(M, T), M.g)


def kappa_bar(
    M: DifferentialTwoCrossedModule,
    T: InvariantFormTriple,
    c1: AlgebraValuedForm,
    c2: AlgebraValuedForm,
) -> AlgebraValuedForm:
    if c1.algebra != M.l or c2.algebra != M.l:
        raise StructureError("kappa_bar expects l-valued forms")
    return wedge_bilinear(c1, c2, kappa_tensor(M, T), M.g)


def eta_bar(
    M: DifferentialTwoCrossedModule,
    T: InvariantFormTriple,
    i: int,
    c: AlgebraValuedForm,
    b: AlgebraValuedForm,
) -> AlgebraValuedForm:
    """eta_i lifted to forms: sum_{a,b} C^b ∧ B^a eta_i(Z_b, Y_a)."""
    if c.algebra != M.l or b.algebra != M.h:
        raise StructureError("eta_bar expects (l, h) forms")
    return wedge_bilinear(c, b, eta_tensor(M, T, i), M.h)


def alpha_star_form(T: InvariantFormTriple, w: AlgebraValuedForm) -> AlgebraValuedForm:
    if w.algebra != T.module.g:
        raise StructureError("alpha_star_form expects a g-valued form")
    return lift_linear(w, alpha_star_matrix(T), T.module.h)


def beta_star_form(T: InvariantFormTriple, w: AlgebraValuedForm) -> AlgebraValuedForm:
    if w.algebra != T.module.h:
        raise StructureError("beta_star_form expects an h-valued form")
    return lift_linear(w, beta_star_matrix(T), T.module.l)


# -- random forms -----------------------------------------------------------


def random_polynomial(
    rng: random.Random,
    nvars: int,
    dim: int,
    degree_cap: int = 4,
    terms: int = 2,
    coeff_bound: int = 3,
) -> Polynomial:
    out = Polynomial.zero(nvars)
    for _ in range(terms):
        exps = [0] * nvars
        budget = rng.randint(0, degree_cap)
        for _ in range(budget):
            exps[rng.randrange(dim)] += 1
        coeff = Fraction(rng.randint(-coeff_bound, coeff_bound), rng.randint(1, 2))
        out = out + Polynomial.monomial(tuple(exps), coeff, nvars)
    return out


def random_form(
    rng: random.Random,
    algebra: LieAlgebra,
    dim: int,
    degree: int,
    degree_cap: int = 4,
    terms: int = 2,
    coeff_bound: int = 3,
    nvars: int | None = None,
) -> AlgebraValuedForm:
    nv = nvars if nvars is not None else dim
    if degree > dim or algebra.dim == 0:
        return zero_form(algebra, dim, degree, nv)
    comps = {}
    for idx in itertools.combinations(range(dim), degree):
        comps[idx] = tuple(
            random_polynomial(rng, nv, dim, degree_cap, terms, coeff_bound)
            for _ in range(algebra.dim)
        )
    return AlgebraValuedForm(dim, degree, algebra, comps, nv)


# -- matrix representation route --------------------------------------------


@dataclass(frozen=True)
class MatrixRep:
    """Faithful matrix images of an algebra basis, enabling the plain wedge."""

    algebra: LieAlgebra
    matrices: tuple[Mat, ...]
    size: int

    @classmethod
    def build(cls, algebra: LieAlgebra, matrices) -> "MatrixRep":
        mats = tuple(mat(m) for m in matrices)
        if len(mats) != algebra.dim:
            raise StructureError("need one matrix per basis element")
        n = len(mats[0]) if mats else 0
        if any(len(m) != n or any(len(r) != n for r in m) for m in mats):
            raise StructureError("representation matrices must be square of equal size")
        rep = cls(algebra, mats, n)
        rep.validate()
        return rep

    def validate(self):
        # Lie homomorphism: R_a R_b - R_b R_a = sum_k c[a][b][k] R_k
        for a in range(self.algebra.dim):
            for b in range(self.algebra.dim):
                comm = mat_sub(
                    mat_mul(self.matrices[a], self.matrices[b]),
                    mat_mul(self.matrices[b], self.matrices[a]),
                )
                expect = [[ZERO] * self.size for _ in range(self.size)]
                for k in range(self.algebra.dim):
                    ck = self.algebra.structure[a][b][k]
                    if ck != 0:
                        for i in range(self.size):
                            for j in range(self.size):
                                expect[i][j] += ck * self.matrices[k][i][j]
                if any(
                    comm[i][j] != expect[i][j]
                    for i in range(self.size)
                    for j in range(self.size)
                ):
                    raise StructureError("matrices do not represent the bracket")
        # Faithfulness: vectorized matrices are linearly independent.
        from .linalg import nullspace as _nullspace

        if self.algebra.dim:
            vt = tuple(
                tuple(m[i][j] for m in self.matrices)
                for i in range(self.size)
                for j in range(self.size)
            )
            if _nullspace(vt):
                raise StructureError("representation is not faithful")

    def embed(self, w: AlgebraValuedForm) -> "MatrixForm":
        if w.algebra != self.algebra:
            raise StructureError("form is valued in a different algebra")
        zero = Polynomial.zero(w.nvars)
        comps = {}
        for idx, vec in w.components.items():
            entries = [[zero] * self.size for _ in range(self.size)]
            for a, p in enumerate(vec):
                if p.is_zero():
                    continue
                m = self.matrices[a]
                for i in range(self.size):
                    for j in range(self.size):
                        if m[i][j] != 0:
                            entries[i][j] = entries[i][j] + m[i][j] * p
            comps[idx] = tuple(tuple(r) for r in entries)
        return MatrixForm(w.dim, w.degree, self.size, comps, w.nvars)

    def decompose(self, mform: "MatrixForm") -> AlgebraValuedForm:
        """Exact coordinates of a matrix form that lies in the basis span."""
        from .linalg import lstsq_exact

        n2 = self.size * self.size
        vt = tuple(
            tuple(m[i // self.size][i % self.size] for m in self.matrices)
            for i in range(n2)
        )
        comps = {}
        for idx, entries in mform.components.items():
            coords = []
            for c in range(self.algebra.dim):
                coords.append(Polynomial.zero(mform.nvars))
            # Solve per monomial: collect all exponent keys in this component.
            keys = set()
            for row in entries:
                for p in row:
                    keys.update(p.terms)
            for key in keys:
                vec = tuple(
                    entries[i // self.size][i % self.size].terms.get(key, ZERO)
                    for i in range(n2)
                )
                sol = lstsq_exact(vt, vec)
                # verify the residual vanishes: the matrix must lie in the span
                for i in range(n2):
                    acc = ZERO
                    for c, s in enumerate(sol):
                        acc += vt[i][c] * s
                    if acc != vec[i]:
                        raise StructureError(
                            "matrix form does not lie in the algebra's span"
                        )
                for c, s in enumerate(sol):
                    if s != 0:
                        coords[c] = coords[c] + Polynomial.monomial(key, s, mform.nvars)
            comps[idx] = tuple(coords)
        return AlgebraValuedForm(mform.dim, mform.degree, self.algebra, comps, mform.nvars)


class MatrixForm:
    """Differential form with n x n polynomial matrix coefficients."""

    __slots__ = ("dim", "degree", "size", "components", "nvars")

    def __init__(self, dim, degree, size, components, nvars):
        self.dim = dim
        self.degree = degree
        self.size = size
        self.nvars = nvars
        clean = {}
        for idx, entries in components.items():
            if any(not p.is_zero() for row in entries for p in row):
                clean[tuple(idx)] = tuple(tuple(row) for row in entries)
        self.components = clean

    def is_zero(self):
        return not self.components

    def __eq__(self, other):
        return (
            isinstance(other, MatrixForm)
            and (self.dim, self.degree, self.size, self.nvars)
            == (other.dim, other.degree, other.size, other.nvars)
            and self.components == other.components
        )

    def __add__(self, other):
        out = dict(self.components)
        for idx, entries in other.components.items():
            if idx in out:
                out[idx] = tuple(
                    tuple(a + b for a, b in zip(ra, rb))
                    for ra, rb in zip(out[idx], entries)
                )
            else:
                out[idx] = entries
        return MatrixForm(self.dim, self.degree, self.size, out, self.nvars)

    def __neg__(self):
        return MatrixForm(
            self.dim,
            self.degree,
            self.size,
            {
                i: tuple(tuple(-p for p in row) for row in e)
                for i, e in self.components.items()
            },
            self.nvars,
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return MatrixForm(
            self.dim,
            self.degree,
            self.size,
            {
                i: tuple(tuple(c * p for p in row) for row in e)
                for i, e in self.components.items()
            },
            self.nvars,
        )


def matrix_wedge(m1: MatrixForm, m2: MatrixForm) -> MatrixForm:
    """Wedge with matrix multiplication on the coefficients."""
    if m1.size != m2.size or m1.dim != m2.dim or m1.nvars != m2.nvars:
        raise StructureError("incompatible matrix forms")
    n = m1.size
    deg = m1.degree + m2.degree
    if deg > m1.dim:
        return MatrixForm(m1.dim, deg, n, {}, m1.nvars)
    zero = Polynomial.zero(m1.nvars)
    out: dict[Index, list[list[Polynomial]]] = {}
    for i1, e1 in m1.components.items():
        for i2, e2 in m2.components.items():
            merged = merge_indices(i1, i2)
            if merged is None:
                continue
            nidx, sign = merged
            dest = out.setdefault(nidx, [[zero] * n for _ in range(n)])
            for i in range(n):
                for k in range(n):
                    p1 = e1[i][k]
                    if p1.is_zero():
                        continue
                    for j in range(n):
                        p2 = e2[k][j]
                        if p2.is_zero():
                            continue
                        prod = p1 * p2
                        if sign == -1:
                            prod = -prod
                        dest[i][j] = dest[i][j] + prod
    return MatrixForm(
        m1.dim, deg, n, {i: tuple(tuple(r) for r in v) for i, v in out.items()}, m1.nvars
    )
