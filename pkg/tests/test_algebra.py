from fractions import Fraction

import pytest

from higherym.algebra import (
    AlgebraElement,
    LieAlgebra,
    StructureError,
    bracket,
    jacobi_residual,
    random_element,
    so3,
)


def naive_bracket(L, a, b):
    """Index-by-index contraction, independent of the library loops."""
    out = [Fraction(0)] * L.dim
    for i in range(L.dim):
        for j in range(L.dim):
            for k in range(L.dim):
                out[k] += a.coords[i] * b.coords[j] * L.structure[i][j][k]
    return AlgebraElement(L, tuple(out))


def test_so3_cyclic_brackets():
    L = so3()
    e1, e2, e3 = (L.basis(i) for i in range(3))
    assert bracket(e1, e2) == e3
    assert bracket(e2, e3) == e1
    assert bracket(e3, e1) == e2


def test_abelian_bracket_vanishes():
    L = LieAlgebra.abelian("a", 3)
    a = random_element(L, 1)
    b = random_element(L, 2)
    assert bracket(a, b).is_zero()


def test_bracket_matches_naive_contraction():
    L = so3()
    for seed in range(10):
        a = random_element(L, seed)
        b = random_element(L, seed + 100)
        assert bracket(a, b) == naive_bracket(L, a, b)


def test_bracket_antisymmetry():
    L = so3()
    for seed in range(10):
        a = random_element(L, seed)
        b = random_element(L, 1000 + seed)
        assert bracket(a, b) == -bracket(b, a)


def test_bracket_rejects_mixed_algebras():
    with pytest.raises(StructureError):
        bracket(so3().basis(0), LieAlgebra.abelian("other", 3).basis(0))


def test_jacobi_residual_zero_cases():
    assert jacobi_residual(LieAlgebra.abelian("a", 4)) == 0
    assert jacobi_residual(so3()) == 0


def test_jacobi_residual_detects_perturbation():
    L = so3()
    structure = [[list(row) for row in plane] for plane in L.structure]
    structure[0][1][2] += 1  # breaks antisymmetry partner and Jacobi
    broken = LieAlgebra("broken", 3, tuple(tuple(tuple(r) for r in p) for p in structure))
    assert jacobi_residual(broken) > 0


def test_random_element_deterministic():
    L = so3()
    assert random_element(L, 7, 5) == random_element(L, 7, 5)


def test_random_element_bound_one():
    L = so3()
    for seed in range(20):
        e = random_element(L, seed, 1)
        assert all(c.denominator == 1 and abs(c) <= 1 for c in e.coords)


def test_random_element_seeds_differ():
    L = so3()
    draws = {random_element(L, seed, 5).coords for seed in range(100)}
    assert len(draws) > 95


def test_exact_vs_float_contraction():
    L = so3()
    for seed in range(10):
        a = random_element(L, seed)
        b = random_element(L, 50 + seed)
        exact = bracket(a, b)
        af = [float(c) for c in a.coords]
        bf = [float(c) for c in b.coords]
        for k in range(3):
            approx = sum(
                af[i] * bf[j] * float(L.structure[i][j][k])
                for i in range(3)
                for j in range(3)
            )
            target = float(exact.coords[k])
            assert abs(approx - target) <= 1e-12 * max(1.0, abs(target))


def test_element_arithmetic():
    L = so3()
    a = random_element(L, 3)
    b = random_element(L, 4)
    assert (a + b) - b == a
    assert Fraction(2) * a == a + a
    assert (-a + a).is_zero()


def test_coordinate_length_checked():
    with pytest.raises(StructureError):
        AlgebraElement(so3(), (Fraction(1),))
