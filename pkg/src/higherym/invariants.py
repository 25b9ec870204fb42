"""Invariant bilinear form triples and the maps they induce.

A triple of symmetric non-degenerate Gram matrices on (g, h, l) is invariant
when the g-action is infinitesimally skew with respect to each form.  The
compact-group averaging argument that produces such forms is replaced here
by exact orthogonal projection (Frobenius inner product) of a seed onto the
linear subspace of invariant symmetric matrices, followed by positive
definiteness and non-degeneracy checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement, LieAlgebra, StructureError, Tensor3
from .crossed import AxiomReport, DifferentialTwoCrossedModule
from .linalg import (
    Mat,
    ZERO,
    det,
    eye,
    inverse,
    is_positive_definite,
    is_symmetric,
    mat_vec,
    nullspace,
    solve,
    transpose,
)


class ProjectionError(ValueError):
    """No invariant positive-definite form is reachable from the seed."""


@dataclass(frozen=True)
class InvariantFormTriple:
    module: DifferentialTwoCrossedModule
    gram_g: Mat
    gram_h: Mat
    gram_l: Mat
    inv_g: Mat
    inv_h: Mat
    inv_l: Mat

    @classmethod
    def from_grams(
        cls, M: DifferentialTwoCrossedModule, gram_g: Mat, gram_h: Mat, gram_l: Mat
    ) -> "InvariantFormTriple":
        for name, gram, dim in (
            ("gram_g", gram_g, M.g.dim),
            ("gram_h", gram_h, M.h.dim),
            ("gram_l", gram_l, M.l.dim),
        ):
            if len(gram) != dim or any(len(r) != dim for r in gram):
                raise StructureError(f"{name} must be {dim} x {dim}")
            if not is_symmetric(gram):
                raise StructureError(f"{name} must be symmetric")
            if dim > 0 and det(gram) == 0:
                raise StructureError(f"{name} is degenerate")
        return cls(
            M, gram_g, gram_h, gram_l,
            inverse(gram_g), inverse(gram_h), inverse(gram_l),
        )

    def gram_for(self, algebra: LieAlgebra) -> Mat:
        if algebra == self.module.g:
            return self.gram_g
        if algebra == self.module.h:
            return self.gram_h
        if algebra == self.module.l:
            return self.gram_l
        raise StructureError(f"no Gram matrix for algebra {algebra.name}")

    def pair_elements(self, a: AlgebraElement, b: AlgebraElement) -> Fraction:
        if a.algebra != b.algebra:
            raise StructureError("pairing expects elements of the same algebra")
        gram = self.gram_for(a.algebra)
        return sum(
            (ca * cb * gram[i][j]
             for i, ca in enumerate(a.coords) if ca
             for j, cb in enumerate(b.coords) if cb),
            ZERO,
        )


def _skew_residual(gram: Mat, action: Tensor3, gdim: int, tdim: int) -> Fraction:
    """Max residual of <X|>v, w> + <v, X|>w> over basis triples."""
    worst = ZERO
    for x in range(gdim):
        # action matrix of basis element x: at[k][b] = coefficient of e_k in X|>e_b
        for b in range(tdim):
            for c in range(tdim):
                s = ZERO
                for k in range(tdim):
                    s += action[x][b][k] * gram[k][c]
                    s += gram[b][k] * action[x][c][k]
                worst = max(worst, abs(s))
    return worst


def invariance_residual(
    T: InvariantFormTriple, M: DifferentialTwoCrossedModule
) -> AxiomReport:
    """Infinitesimal invariance of the three forms under the g-action.

    The form on l is additionally checked against the derived h-action, but
    only when the Peiffer lifting or beta is trivial; outside that regime the
    h-invariance of <,>_l is not asserted.
    """
    if T.module != M:
        raise StructureError("triple belongs to a different module")
    rep = AxiomReport()
    rep.record(
        "invariance-g", _skew_residual(T.gram_g, M.act_g_on_g, M.g.dim, M.g.dim)
    )
    rep.record(
        "invariance-h", _skew_residual(T.gram_h, M.act_g_on_h, M.g.dim, M.h.dim)
    )
    rep.record(
        "invariance-l", _skew_residual(T.gram_l, M.act_g_on_l, M.g.dim, M.l.dim)
    )
    if M.has_trivial_peiffer() or M.has_trivial_beta():
        rep.record(
            "invariance-l-under-h",
            _skew_residual(T.gram_l, M.prime_action_tensor(), M.h.dim, M.l.dim),
        )
    else:
        rep.skip(
            "invariance-l-under-h",
            "asserted only for trivial Peiffer lifting or trivial beta",
        )
    return rep


def gram_is_ad_invariant(gram: Mat, algebra) -> bool:
    """Whether the Gram is skew for the algebra's own bracket:
    <[v,w], u> + <w, [v,u]> = 0 on basis triples.

    This is the hypothesis under which bracket-pairing transpositions hold
    on that algebra; the g leg has it automatically for invariant triples,
    the h and l legs only in restricted regimes or by accident of the Gram.
    """
    return _skew_residual(gram, algebra.structure, algebra.dim, algebra.dim) == 0


def _sym_basis(n: int) -> list[tuple[tuple[int, int], ...]]:
    """Index pairs (i, j), i <= j, coordinatizing symmetric n x n matrices."""
    return [((i, j),) for i in range(n) for j in range(i, n)]


def _project_one(seed: Mat, action: Tensor3, gdim: int, n: int) -> Mat:
    """Frobenius-orthogonal projection of a symmetric seed onto the invariant cone's span."""
    if n == 0:
        return ()
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    ncoords = len(pairs)

    def to_matrix(v):
        m = [[ZERO] * n for _ in range(n)]
        for idx, (i, j) in enumerate(pairs):
            m[i][j] = v[idx]
            m[j][i] = v[idx]
        return tuple(tuple(r) for r in m)

    # Invariance system: for each g-basis x and each (b, c):
    #   sum_k action[x][b][k] S[k][c] + S[b][k] action[x][c][k] = 0
    rows = []
    for x in range(gdim):
        for b in range(n):
            for c in range(n):
                row = [ZERO] * ncoords
                for idx, (i, j) in enumerate(pairs):
                    coeff = ZERO
                    # S[i][j] entry contributes wherever S[k][c] or S[b][k] hits (i,j)/(j,i)
                    for k in range(n):
                        if (k, c) in ((i, j), (j, i)):
                            coeff += action[x][b][k]
                        if (b, k) in ((i, j), (j, i)):
                            coeff += action[x][c][k]
                    row[idx] = coeff
                rows.append(tuple(row))
    basis = nullspace(tuple(rows)) if rows else [
        tuple(Fraction(1) if t == s else ZERO for t in range(ncoords))
        for s in range(ncoords)
    ]
    if not basis:
        raise ProjectionError("invariance system admits only the zero form")
    # Frobenius inner product on symmetric matrices: off-diagonal pairs count twice.
    weights = [Fraction(1) if i == j else Fraction(2) for (i, j) in pairs]
    seedv = [seed[i][j] for (i, j) in pairs]
    gramm = tuple(
        tuple(
            sum((w * u[t] * v[t] for t, w in enumerate(weights)), ZERO)
            for v in basis
        )
        for u in basis
    )
    rhs = tuple(
        sum((w * u[t] * seedv[t] for t, w in enumerate(weights)), ZERO) for u in basis
    )
    coeffs = solve(gramm, rhs)
    proj = [ZERO] * ncoords
    for c, v in zip(coeffs, basis):
        for t in range(ncoords):
            proj[t] += c * v[t]
    return to_matrix(proj)


def project_invariant(
    M: DifferentialTwoCrossedModule,
    seed_gram_g: Mat | None = None,
    seed_gram_h: Mat | None = None,
    seed_gram_l: Mat | None = None,
) -> InvariantFormTriple:
    """Project SPD seeds (default: identities) onto the invariant subspace.

    Raises ProjectionError when a projected form fails positive definiteness:
    the instance then carries no invariant SPD form reachable from that seed.
    """
    seeds = (
        seed_gram_g if seed_gram_g is not None else eye(M.g.dim),
        seed_gram_h if seed_gram_h is not None else eye(M.h.dim),
        seed_gram_l if seed_gram_l is not None else eye(M.l.dim),
    )
    dims = (M.g.dim, M.h.dim, M.l.dim)
    actions = (M.act_g_on_g, M.act_g_on_h, M.act_g_on_l)
    grams = []
    for name, seed, action, n in zip(("g", "h", "l"), seeds, actions, dims):
        if n > 0 and not is_positive_definite(seed):
            raise StructureError(f"seed Gram for {name} must be symmetric positive definite")
        proj = _project_one(seed, action, M.g.dim, n)
        if n > 0 and not is_positive_definite(proj):
            raise ProjectionError(
                f"projected form on {name} is not positive definite"
            )
        grams.append(proj)
    return InvariantFormTriple.from_grams(M, *grams)


# -- induced maps --------------------------------------------------------


def sigma(
    M: DifferentialTwoCrossedModule,
    T: InvariantFormTriple,
    y1: AlgebraElement,
    y2: AlgebraElement,
) -> AlgebraElement:
    """The g-valued map defined by <sigma(Y,Y'), X>_g = -<Y, X |> Y'>_h."""
    if y1.algebra != M.h or y2.algebra != M.h:
        raise StructureError("sigma expects two elements of h")
    rhs = tuple(
        -T.pair_elements(y1, M.act(M.g.basis(x), y2)) for x in range(M.g.dim)
    )
    return AlgebraElement(M.g, mat_vec(T.inv_g, rhs))


def kappa(
    M: DifferentialTwoCrossedModule,
    T: InvariantFormTriple,
    z1: AlgebraElement,
    z2: AlgebraElement,
) -> AlgebraElement:
    """The g-valued map defined by <kappa(Z,Z'), X>_g = -<Z, X |> Z'>_l."""
    if z1.algebra != M.l or z2.algebra != M.l:
        raise StructureError("kappa expects two elements of l")
    rhs = tuple(
        -T.pair_elements(z1, M.act(M.g.basis(x), z2)) for x in range(M.g.dim)
    )
    return AlgebraElement(M.g, mat_vec(T.inv_g, rhs))


def eta(
    M: DifferentialTwoCrossedModule,
    T: InvariantFormTriple,
    i: int,
    z: AlgebraElement,
    y: AlgebraElement,
) -> AlgebraElement:
    """eta_1 / eta_2: h-valued solutions of the Peiffer pairing relation.

    Convention: <{Y, Y'}, Z>_l = -<Y', eta_1(Z, Y)>_h = -<Y, eta_2(Z, Y')>_h.
    The swapped convention amounts to exchanging the two maps; consumers of
    eta_1 + eta_2 are unaffected.
    """
    if i not in (1, 2):
        raise StructureError("eta index must be 1 or 2")
    if z.algebra != M.l or y.algebra != M.h:
        raise StructureError("eta expects (l, h) elements")
    rhs = []
    for b in range(M.h.dim):
        probe = M.h.basis(b)
        if i == 1:
            val = T.pair_elements(M.peiffer(y, probe), z)  # Y fixed in first slot
        else:
            val = T.pair_elements(M.peiffer(probe, y), z)  # Y fixed in second slot
        rhs.append(-val)
    return AlgebraElement(M.h, mat_vec(T.inv_h, tuple(rhs)))


def alpha_star_matrix(T: InvariantFormTriple) -> Mat:
    """Matrix of alpha*: g -> h, the metric adjoint of alpha."""
    from .linalg import mat_mul, zeros

    M = T.module
    if M.g.dim == 0 or M.h.dim == 0:
        return zeros(M.h.dim, M.g.dim)
    return mat_mul(T.inv_h, mat_mul(transpose(M.alpha), T.gram_g))


def beta_star_matrix(T: InvariantFormTriple) -> Mat:
    """Matrix of beta*: h -> l, the metric adjoint of beta."""
    from .linalg import mat_mul, zeros

    M = T.module
    if M.h.dim == 0 or M.l.dim == 0:
        return zeros(M.l.dim, M.h.dim)
    return mat_mul(T.inv_l, mat_mul(transpose(M.beta), T.gram_h))


def alpha_star(T: InvariantFormTriple, x: AlgebraElement) -> AlgebraElement:
    if x.algebra != T.module.g:
        raise StructureError("alpha_star expects an element of g")
    return AlgebraElement(T.module.h, mat_vec(alpha_star_matrix(T), x.coords))


def beta_star(T: InvariantFormTriple, y: AlgebraElement) -> AlgebraElement:
    if y.algebra != T.module.h:
        raise StructureError("beta_star expects an element of h")
    return AlgebraElement(T.module.l, mat_vec(beta_star_matrix(T), y.coords))


def sigma_tensor(M: DifferentialTwoCrossedModule, T: InvariantFormTriple) -> Tensor3:
    """sigma on basis pairs, as a rank-3 tensor for lifting to forms."""
    return tuple(
        tuple(sigma(M, T, M.h.basis(a), M.h.basis(b)).coords for b in range(M.h.dim))
        for a in range(M.h.dim)
    )


def kappa_tensor(M: DifferentialTwoCrossedModule, T: InvariantFormTriple) -> Tensor3:
    return tuple(
        tuple(kappa(M, T, M.l.basis(a), M.l.basis(b)).coords for b in range(M.l.dim))
        for a in range(M.l.dim)
    )


def eta_tensor(
    M: DifferentialTwoCrossedModule, T: InvariantFormTriple, i: int
) -> Tensor3:
    """eta_i on basis pairs, indexed [z][y] -> h coords."""
    return tuple(
        tuple(eta(M, T, i, M.l.basis(zb), M.h.basis(ya)).coords for ya in range(M.h.dim))
        for zb in range(M.l.dim)
    )
