import pytest

from higherym.groups import (
    CompositionError,
    Cube,
    FiniteGroup,
    FiniteTwoCrossedGroupModule,
    GroupTableError,
    Square,
    all_cubes,
    all_squares,
    cube_compose_h,
    cube_compose_v,
    cube_inverse_h,
    cube_inverse_v,
    exhaustive_checks,
    identity_cube,
    identity_square,
    semidirect_product_table,
    square_compose_h,
    square_compose_v,
    square_inverse_h,
    square_inverse_v,
)
from higherym.instances import finite_cyclic_chain, finite_s3_lift, finite_trivial


def test_group_table_validation():
    with pytest.raises(GroupTableError):
        FiniteGroup.from_table("bad", [[0, 1], [1, 1]])  # not a group
    with pytest.raises(GroupTableError):
        FiniteGroup.from_table("bad", [[1, 0], [0, 1]])  # 0 not identity
    s3 = FiniteGroup.symmetric3()
    assert s3.order == 6
    assert any(s3.mul(a, b) != s3.mul(b, a) for a in range(6) for b in range(6))


def test_module_validation_rejects_broken_lifting():
    good = finite_s3_lift()
    lift = [list(r) for r in good.peiffer_lift]
    lift[1][1] = (lift[1][1] + 1) % 3  # breaks equivariance/derived laws
    with pytest.raises(GroupTableError):
        FiniteTwoCrossedGroupModule.build(
            good.L, good.H, good.G, good.beta, good.alpha,
            good.act_on_l, good.act_on_h, lift,
        )


def test_square_boundary_enforced():
    m = finite_s3_lift()
    with pytest.raises(GroupTableError):
        Square(m, 0, 0, 1)  # alpha(1) = rotation != identity


def test_square_identity_composition():
    m = finite_s3_lift()
    for s in all_squares(m):
        assert square_compose_h(s, identity_square(m, s.g2)) == s
        assert square_compose_h(identity_square(m, s.g1), s) == s


def test_square_compose_requires_shared_edge():
    m = finite_s3_lift()
    squares = list(all_squares(m))
    s1 = squares[0]
    s2 = next(s for s in squares if s.g1 != s1.g2)
    with pytest.raises(CompositionError):
        square_compose_h(s1, s2)


def test_square_inverses_cancel():
    m = finite_cyclic_chain()
    for s in all_squares(m):
        assert square_compose_h(s, square_inverse_h(s)).is_identity()
        assert square_compose_v(s, square_inverse_v(s)).is_identity()


def test_vertical_square_composition_is_semidirect_product():
    m = finite_s3_lift()
    sd = semidirect_product_table(m)
    pairs = [(g, h) for g in m.G.elements() for h in m.H.elements()]
    index = {p: i for i, p in enumerate(pairs)}
    for s1 in all_squares(m):
        for s2 in all_squares(m):
            s = square_compose_v(s1, s2)
            assert index[(s.g1, s.h)] == sd.mul(index[(s1.g1, s1.h)], index[(s2.g1, s2.h)])


def test_horizontal_square_composition_is_not_semidirect_product():
    """Recorded: ∘ (value h2 h1) does not realize the G⋉H law on the
    nonabelian instance."""
    m = finite_s3_lift()
    sd = semidirect_product_table(m)
    pairs = [(g, h) for g in m.G.elements() for h in m.H.elements()]
    index = {p: i for i, p in enumerate(pairs)}
    mismatches = 0
    for s1 in all_squares(m):
        for s2 in all_squares(m):
            if s1.g2 != s2.g1:
                continue
            s = square_compose_h(s1, s2)
            if index[(s.g1, s.h)] != sd.mul(index[(s1.g1, s1.h)], index[(s2.g1, s2.h)]):
                mismatches += 1
    assert mismatches > 0


def test_cube_boundary_enforced():
    m = finite_cyclic_chain()
    s_a = Square(m, 0, 0, 0)
    s_b = Square(m, 0, 0, 0)
    with pytest.raises(GroupTableError):
        Cube(m, s_a, s_b, 1)  # beta(1) = 2 != h2 h1^{-1} = 0


def test_cube_identity_composition():
    m = finite_cyclic_chain()
    for c in all_cubes(m):
        assert cube_compose_h(c, identity_cube(c.s2)) == c
        assert cube_compose_h(identity_cube(c.s1), c) == c


def test_cube_compose_requires_shared_face():
    m = finite_cyclic_chain()
    cubes = list(all_cubes(m))
    c1 = cubes[0]
    c2 = next(c for c in cubes if c.s1 != c1.s2)
    with pytest.raises(CompositionError):
        cube_compose_h(c1, c2)


def test_cube_inverse_boundaries():
    m = finite_s3_lift()
    H = m.H
    for c in list(all_cubes(m))[:50]:
        ch = cube_inverse_h(c)
        assert m.beta[ch.l] == H.mul(c.s1.h, H.inv(c.s2.h))
        cv = cube_inverse_v(c)
        assert m.beta[cv.l] == H.mul(H.inv(c.s2.h), c.s1.h)
        assert cube_compose_h(c, ch).is_identity()
        assert cube_compose_v(c, cv).is_unit()


def test_exhaustive_checks_all_instances(finite):
    for name, mod in finite.items():
        results = exhaustive_checks(mod)
        for check, (bad, total) in results.items():
            assert bad == 0, (name, check, bad, total)
            assert total >= 1


def test_nontrivial_case_counts():
    results = exhaustive_checks(finite_s3_lift())
    assert results["cube-horizontal-boundary"][1] > 1000
    assert results["square-vertical-semidirect"][1] == 324


def test_trivial_instance_runs():
    results = exhaustive_checks(finite_trivial())
    assert all(bad == 0 for bad, _ in results.values())
