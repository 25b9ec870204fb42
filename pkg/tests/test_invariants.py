from fractions import Fraction

import pytest

from higherym.algebra import LieAlgebra, bracket, random_element, so3
from higherym.crossed import DifferentialTwoCrossedModule
from higherym.instances import noninvariant_action
from higherym.invariants import (
    InvariantFormTriple,
    ProjectionError,
    alpha_star,
    beta_star,
    eta,
    invariance_residual,
    kappa,
    project_invariant,
    sigma,
)
from higherym.linalg import eye, mat, nullspace, solve


def killing_form(L):
    """K(a,b) = tr(ad_a ad_b) from structure constants."""
    n = L.dim
    def ad(a):
        return [[L.structure[a][b][k] for b in range(n)] for k in range(n)]
    K = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            ada, adb = ad(a), ad(b)
            K[a][b] = sum(ada[i][j] * adb[j][i] for i in range(n) for j in range(n))
    return mat(K)


def test_invariance_identity_grams_on_abelian(inst, triples):
    M = inst["abelian-chain"].module
    rep = invariance_residual(triples["abelian-chain"], M)
    assert rep.all_passed()


def test_negative_killing_form_is_invariant():
    """On the rotation algebra, -K is SPD and ad-invariant."""
    g = so3()
    M = DifferentialTwoCrossedModule.build(
        l=LieAlgebra.abelian("l", 0), h=LieAlgebra.abelian("h", 0), g=g
    )
    K = killing_form(g)
    minus_k = mat([[-x for x in row] for row in K])
    T = InvariantFormTriple.from_grams(M, minus_k, (), ())
    assert invariance_residual(T, M).all_passed()


def test_perturbed_gram_detected():
    g = so3()
    M = DifferentialTwoCrossedModule.build(
        l=LieAlgebra.abelian("l", 0), h=LieAlgebra.abelian("h", 0), g=g
    )
    bad = mat([[1, 1, 0], [1, 1, 0], [0, 0, 1]])  # symmetric but degenerate
    with pytest.raises(Exception):
        InvariantFormTriple.from_grams(M, bad, (), ())
    skew_broken = mat([[2, 1, 0], [1, 2, 0], [0, 0, 2]])
    T = InvariantFormTriple.from_grams(M, skew_broken, (), ())
    assert not invariance_residual(T, M).all_passed()


def test_projection_is_identity_for_trivial_actions(inst):
    M = inst["abelian-chain"].module
    T = project_invariant(M)
    assert T.gram_g == eye(M.g.dim)
    assert T.gram_h == eye(M.h.dim)
    assert T.gram_l == eye(M.l.dim)


def brute_force_invariant_projection(g):
    """Solve the 6-dimensional symmetric invariance system directly and
    project the identity onto its span under the Frobenius product."""
    n = g.dim
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    rows = []
    for x in range(n):
        ad_x = [[g.structure[x][b][k] for b in range(n)] for k in range(n)]
        for b in range(n):
            for c in range(n):
                row = []
                for (i, j) in pairs:
                    coeff = Fraction(0)
                    for k in range(n):
                        s_kc = 1 if (k, c) in ((i, j), (j, i)) else 0
                        s_bk = 1 if (b, k) in ((i, j), (j, i)) else 0
                        coeff += ad_x[k][b] * s_kc + s_bk * ad_x[k][c]
                    row.append(coeff)
                rows.append(tuple(row))
    basis = nullspace(tuple(rows))
    weights = [Fraction(1) if i == j else Fraction(2) for (i, j) in pairs]
    seed = [Fraction(1) if i == j else Fraction(0) for (i, j) in pairs]
    gram = tuple(
        tuple(sum(w * u[t] * v[t] for t, w in enumerate(weights)) for v in basis)
        for u in basis
    )
    rhs = tuple(sum(w * u[t] * seed[t] for t, w in enumerate(weights)) for u in basis)
    coeffs = solve(gram, rhs)
    proj = [sum(c * v[t] for c, v in zip(coeffs, basis)) for t in range(len(pairs))]
    out = [[Fraction(0)] * n for _ in range(n)]
    for val, (i, j) in zip(proj, pairs):
        out[i][j] = val
        out[j][i] = val
    return mat(out)


def test_projection_on_so3_is_killing_multiple():
    g = so3()
    M = DifferentialTwoCrossedModule.build(
        l=LieAlgebra.abelian("l", 0), h=LieAlgebra.abelian("h", 0), g=g
    )
    T = project_invariant(M)
    assert T.gram_g == brute_force_invariant_projection(g)
    # a positive multiple of -K: K = -2 I here, so -K/2 = I
    K = killing_form(g)
    lam = T.gram_g[0][0] / -K[0][0]
    assert lam > 0
    assert T.gram_g == tuple(tuple(-lam * x for x in row) for row in K)


def test_projection_failure_reported():
    M = noninvariant_action().module
    with pytest.raises(ProjectionError):
        project_invariant(M)


def test_projection_failure_rank_analysis():
    """Independent rank check: for the hyperbolic action diag(1,-1), the
    invariant symmetric forms on h are spanned by the off-diagonal matrix
    alone, so the invariance system's nullspace is 1-dimensional and
    contains no definite element."""
    M = noninvariant_action().module
    n = M.h.dim
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    rows = []
    act = M.act_g_on_h
    for x in range(M.g.dim):
        for b in range(n):
            for c in range(n):
                row = []
                for (i, j) in pairs:
                    coeff = Fraction(0)
                    for k in range(n):
                        if (k, c) in ((i, j), (j, i)):
                            coeff += act[x][b][k]
                        if (b, k) in ((i, j), (j, i)):
                            coeff += act[x][c][k]
                    row.append(coeff)
                rows.append(tuple(row))
    basis = nullspace(tuple(rows))
    assert len(basis) == 1
    # the surviving direction is the pure off-diagonal form (indefinite)
    coords = dict(zip(pairs, basis[0]))
    assert coords[(0, 0)] == 0 and coords[(1, 1)] == 0 and coords[(0, 1)] != 0


def test_projection_idempotent(inst, triples):
    for name, T in triples.items():
        M = inst[name].module
        again = project_invariant(M, T.gram_g, T.gram_h, T.gram_l)
        assert (again.gram_g, again.gram_h, again.gram_l) == (
            T.gram_g,
            T.gram_h,
            T.gram_l,
        ), name


def test_invariance_residuals_zero_for_projected(inst, triples):
    for name, T in triples.items():
        rep = invariance_residual(T, inst[name].module)
        assert rep.all_passed(), (name, rep.failed())


# -- induced maps -----------------------------------------------------------


def killing_square():
    alg = so3()
    g = LieAlgebra("kg", 3, alg.structure)
    h = LieAlgebra("kh", 3, alg.structure)
    l = LieAlgebra("kl", 3, alg.structure)
    M = DifferentialTwoCrossedModule.build(
        l=l, h=h, g=g, alpha=eye(3),
        act_g_on_h=alg.structure, act_g_on_l=alg.structure,
    )
    T = InvariantFormTriple.from_grams(M, eye(3), eye(3), eye(3))
    return M, T


def test_sigma_is_bracket_in_killing_case():
    M, T = killing_square()
    for seed in range(6):
        y1 = random_element(M.h, seed)
        y2 = random_element(M.h, 13 + seed)
        expect = bracket(y1, y2).coords
        assert sigma(M, T, y1, y2).coords == expect


def test_kappa_is_bracket_in_killing_case():
    M, T = killing_square()
    for seed in range(6):
        z1 = random_element(M.l, seed)
        z2 = random_element(M.l, 17 + seed)
        assert kappa(M, T, z1, z2).coords == bracket(z1, z2).coords


def test_sigma_kappa_antisymmetry(inst, triples):
    M = inst["e2-cone"].module
    T = triples["e2-cone"]
    for seed in range(5):
        y1 = random_element(M.h, seed)
        y2 = random_element(M.h, 40 + seed)
        assert sigma(M, T, y1, y2) == -sigma(M, T, y2, y1)
        assert sigma(M, T, y1, y1).is_zero()
        z1 = random_element(M.l, seed)
        z2 = random_element(M.l, 60 + seed)
        assert kappa(M, T, z1, z2) == -kappa(M, T, z2, z1)
        assert kappa(M, T, z1, z1).is_zero()


def test_sigma_defining_relation(inst, triples):
    M = inst["e2-cone"].module
    T = triples["e2-cone"]
    for seed in range(5):
        y1 = random_element(M.h, seed)
        y2 = random_element(M.h, 21 + seed)
        s = sigma(M, T, y1, y2)
        for x in range(M.g.dim):
            X = M.g.basis(x)
            assert T.pair_elements(s, X) == -T.pair_elements(y1, M.act(X, y2))


def test_kappa_defining_relation(inst, triples):
    M = inst["e2-cone"].module
    T = triples["e2-cone"]
    for seed in range(5):
        z1 = random_element(M.l, seed)
        z2 = random_element(M.l, 23 + seed)
        k = kappa(M, T, z1, z2)
        for x in range(M.g.dim):
            X = M.g.basis(x)
            assert T.pair_elements(k, X) == -T.pair_elements(z1, M.act(X, z2))


def test_pairing_skew_consequences(inst, triples):
    """<Y, X|>Y'> = -<X|>Y, Y'> and the l analog, for invariant triples."""
    M = inst["e2-cone"].module
    T = triples["e2-cone"]
    for x in range(M.g.dim):
        X = M.g.basis(x)
        for a in range(M.h.dim):
            for b in range(M.h.dim):
                Y, Yp = M.h.basis(a), M.h.basis(b)
                assert T.pair_elements(Y, M.act(X, Yp)) == -T.pair_elements(
                    M.act(X, Y), Yp
                )
        for a in range(M.l.dim):
            for b in range(M.l.dim):
                Z, Zp = M.l.basis(a), M.l.basis(b)
                assert T.pair_elements(Z, M.act(X, Zp)) == -T.pair_elements(
                    M.act(X, Z), Zp
                )


def test_eta_zero_for_trivial_peiffer(inst, triples):
    M = inst["abelian-chain"].module
    T = triples["abelian-chain"]
    z = random_element(M.l, 1)
    y = random_element(M.h, 2)
    assert eta(M, T, 1, z, y).is_zero()
    assert eta(M, T, 2, z, y).is_zero()


def test_eta_defining_relations(inst, triples):
    """<{Y,Y'},Z> = -<Y', eta1(Z,Y)> = -<Y, eta2(Z,Y')> on basis tuples."""
    for name in ("rot-u1", "e2-cone"):
        M = inst[name].module
        T = triples[name]
        for a in range(M.h.dim):
            Y = M.h.basis(a)
            for b in range(M.h.dim):
                Yp = M.h.basis(b)
                for c in range(M.l.dim):
                    Z = M.l.basis(c)
                    lhs = T.pair_elements(M.peiffer(Y, Yp), Z)
                    assert lhs == -T.pair_elements(Yp, eta(M, T, 1, Z, Y))
                    assert lhs == -T.pair_elements(Y, eta(M, T, 2, Z, Yp))


def test_eta_conventions_agree_on_diagonal(inst, triples):
    """With Y' = Y both defining relations constrain the same pairing."""
    M = inst["rot-u1"].module
    T = triples["rot-u1"]
    for seed in range(5):
        y = random_element(M.h, seed)
        z = random_element(M.l, 80 + seed)
        assert T.pair_elements(y, eta(M, T, 1, z, y)) == T.pair_elements(
            y, eta(M, T, 2, z, y)
        )


def test_alpha_star_identity_case():
    M, T = killing_square()
    x = random_element(M.g, 3)
    assert alpha_star(T, x).coords == x.coords


def test_beta_star_zero_for_trivial_beta(inst, triples):
    M = inst["rot-u1"].module
    T = triples["rot-u1"]
    y = random_element(M.h, 4)
    assert beta_star(T, y).is_zero()


def test_adjoint_relations_random_grams():
    """<Y, alpha*(X)>_h = <alpha(Y), X>_g and the beta analog with
    non-identity invariant grams (scaled blocks stay invariant)."""
    from higherym.instances import e2_cone

    M = e2_cone().module
    gram_g = mat([[3]])
    gram_h = mat([[2, 0, 0], [0, 2, 0], [0, 0, 5]])
    gram_l = mat([[7, 0], [0, 7]])
    T = InvariantFormTriple.from_grams(M, gram_g, gram_h, gram_l)
    assert invariance_residual(T, M).all_passed()
    for a in range(M.h.dim):
        Y = M.h.basis(a)
        for x in range(M.g.dim):
            X = M.g.basis(x)
            assert T.pair_elements(Y, alpha_star(T, X)) == T.pair_elements(
                M.alpha_apply(Y), X
            )
    for c in range(M.l.dim):
        Z = M.l.basis(c)
        for a in range(M.h.dim):
            Y = M.h.basis(a)
            assert T.pair_elements(Z, beta_star(T, Y)) == T.pair_elements(
                M.beta_apply(Z), Y
            )


def test_l_invariance_under_derived_action_checked_when_trivial(inst, triples):
    rep = invariance_residual(triples["abelian-chain"], inst["abelian-chain"].module)
    assert not rep.results["invariance-l-under-h"].skipped
    rep2 = invariance_residual(triples["e2-cone"], inst["e2-cone"].module)
    assert rep2.results["invariance-l-under-h"].skipped
