import random
from fractions import Fraction

import pytest

from higherym.algebra import StructureError
from higherym.crossed import DifferentialTwoCrossedModule
from higherym.forms import (
    d,
    hodge,
    lift_map,
    random_form,
    wedge_action,
    wedge_bracket,
    wedge_peiffer,
    zero_form,
)
from higherym.gauge import (
    ThreeConnection,
    a_wedge_a,
    bianchi_residuals,
    curvatures,
    fake_flat_field_eq_residuals,
    fake_flat_witness,
    field_eq_residuals,
    flat_bianchi_residuals,
    is_fake_flat,
    random_connection,
    zero_connection,
)
from higherym.instances import DIFFERENTIAL_BUILDERS, e2_cone, flatland, so3_adjoint_l0

D = 4


def naive_curvatures(M, conn):
    """Term-by-term reimplementation with its own wedge calls."""
    aa = wedge_bracket(conn.a, conn.a).scale(Fraction(1, 2))
    omega1 = d(conn.a) + aa
    omega2 = d(conn.b) + wedge_action(M, conn.a, conn.b)
    omega3 = d(conn.c) + wedge_action(M, conn.a, conn.c) + wedge_peiffer(M, conn.b, conn.b)
    return (
        omega1,
        omega2,
        omega3,
        omega1 - lift_map(M, "alpha", conn.b),
        omega2 - lift_map(M, "beta", conn.c),
    )


def test_zero_connection_curvatures_vanish():
    M = e2_cone().module
    cs = curvatures(M, zero_connection(M, D))
    assert all(
        w.is_zero() for w in (cs.omega1, cs.omega2, cs.omega3, cs.f1, cs.f2)
    )


def test_abelian_curvatures_formula(inst):
    """Abelian instance with C = 0: omega3 = 0 and fake2 = dB."""
    M = inst["abelian-chain"].module
    rng = random.Random(0)
    conn = ThreeConnection(
        random_form(rng, M.g, D, 1),
        random_form(rng, M.h, D, 2),
        zero_form(M.l, D, 3),
    )
    cs = curvatures(M, conn)
    assert cs.omega3.is_zero()
    assert cs.f2 == d(conn.b)
    assert cs.f1 == d(conn.a)


def test_curvatures_match_naive_oracle():
    for name in ("e2-cone", "so3-adjoint-l0", "rot-u1"):
        M = DIFFERENTIAL_BUILDERS[name]().module
        for seed in (3, 4):
            conn = random_connection(M, D, seed)
            cs = curvatures(M, conn)
            o1, o2, o3, f1, f2 = naive_curvatures(M, conn)
            assert (cs.omega1, cs.omega2, cs.omega3, cs.f1, cs.f2) == (o1, o2, o3, f1, f2)


def test_curvature_fake_relations(inst):
    """omega1 - fake1 = alpha(B) and omega2 - fake2 = beta(C)."""
    for name in ("e2-cone", "so3-adjoint-l0", "flatland"):
        M = inst[name].module
        conn = random_connection(M, D, 9)
        cs = curvatures(M, conn)
        assert cs.omega1 - cs.f1 == lift_map(M, "alpha", conn.b), name
        assert cs.omega2 - cs.f2 == lift_map(M, "beta", conn.c), name


def test_a_wedge_a_matrix_route_agrees():
    data = so3_adjoint_l0()
    M = data.module
    for seed in range(4):
        rng = random.Random(seed)
        a = random_form(rng, M.g, D, 1)
        half = a_wedge_a(M, a, "half-bracket")
        via_rep = a_wedge_a(M, a, "matrix-rep", data.rep_g)
        assert half == via_rep


def test_a_wedge_a_matrix_route_needs_rep():
    M = so3_adjoint_l0().module
    a = random_form(random.Random(1), M.g, D, 1)
    with pytest.raises(StructureError):
        a_wedge_a(M, a, "matrix-rep")
    with pytest.raises(StructureError):
        a_wedge_a(M, a, "bogus")


def test_is_fake_flat_trivial_cases(inst):
    M = inst["rot-u1"].module  # beta = 0
    conn = ThreeConnection(
        zero_form(M.g, D, 1),
        zero_form(M.h, D, 2),
        random_form(random.Random(2), M.l, D, 3),
    )
    assert is_fake_flat(M, conn) == (True, True)
    generic = random_connection(inst["e2-cone"].module, D, 5)
    assert is_fake_flat(inst["e2-cone"].module, generic) == (False, False)


def test_fake_one_flat_constructed_witness():
    """Solve alpha(B) = curv1 componentwise through the right inverse."""
    data = e2_cone()
    M = data.module
    rng = random.Random(7)
    a = random_form(rng, M.g, D, 1)
    from higherym.forms import lift_linear

    omega1 = d(a) + a_wedge_a(M, a)
    b = lift_linear(omega1, data.alpha_right_inverse, M.h)
    conn = ThreeConnection(a, b, zero_form(M.l, D, 3))
    flags = is_fake_flat(M, conn)
    assert flags[0] is True


def test_fake_flat_witness_builders():
    data = e2_cone()
    conn = fake_flat_witness(
        data.module, D, 11, alpha_right_inverse=data.alpha_right_inverse
    )
    assert is_fake_flat(data.module, conn) == (True, True)
    assert not conn.a.is_zero()

    fdata = flatland()
    conn2 = fake_flat_witness(
        fdata.module, D, 12, beta_right_inverse=fdata.beta_right_inverse
    )
    assert is_fake_flat(fdata.module, conn2) == (True, True)
    assert not conn2.b.is_zero() and not conn2.c.is_zero()


def test_bianchi_zero_connection(inst):
    M = inst["e2-cone"].module
    r1, r2, r3 = bianchi_residuals(M, zero_connection(M, D))
    assert r1.is_zero() and r2.is_zero() and r3.is_zero()


def test_bianchi_exact_zero_random(inst):
    for name, data in inst.items():
        M = data.module
        for seed in range(1, 6):
            conn = random_connection(M, D, seed)
            r1, r2, r3 = bianchi_residuals(M, conn)
            assert r1.is_zero() and r2.is_zero() and r3.is_zero(), (name, seed)


def test_bianchi_nontrivial_at_d5(inst):
    """At d = 4 the third identity is a 5-form, trivially zero; run d = 5
    so curv3's identity carries content."""
    for name in ("e2-cone", "rot-u1"):
        M = inst[name].module
        for seed in (1, 2, 3):
            conn = random_connection(M, 5, seed, degree_cap=2)
            r1, r2, r3 = bianchi_residuals(M, conn)
            assert r1.is_zero() and r2.is_zero() and r3.is_zero(), (name, seed)
            # the ingredients of the third identity are themselves nonzero
            cs = curvatures(M, conn)
            assert not cs.omega3.is_zero()
            assert not d(cs.omega3).is_zero()


def test_bianchi_detects_broken_structure():
    """Perturbing the action tensor violates the second identity on a
    witness connection."""
    base = e2_cone().module
    act = [[list(r) for r in plane] for plane in base.act_g_on_h]
    act[0][2][2] += 1  # no longer equivariant for alpha
    M = DifferentialTwoCrossedModule(
        l=base.l, h=base.h, g=base.g, beta=base.beta, alpha=base.alpha,
        act_g_on_g=base.act_g_on_g,
        act_g_on_h=tuple(tuple(tuple(r) for r in p) for p in act),
        act_g_on_l=base.act_g_on_l, peiffer_tensor=base.peiffer_tensor,
    )
    assert not M.axiom_report().all_passed()
    hits = 0
    for seed in range(1, 6):
        conn = random_connection(M, D, seed)
        r1, r2, r3 = bianchi_residuals(M, conn)
        if not (r1.is_zero() and r2.is_zero() and r3.is_zero()):
            hits += 1
    assert hits > 0


def test_first_identity_rhs_variants_agree(inst):
    """alpha(fake2) = alpha(fake2 + beta(C)) exactly, since alpha∘beta = 0;
    the two printed right-hand sides of the first identity coincide."""
    for name in ("e2-cone", "so3-adjoint-l0"):
        M = inst[name].module
        for seed in (1, 2):
            conn = random_connection(M, D, seed)
            cs = curvatures(M, conn)
            lhs = lift_map(M, "alpha", cs.f2)
            rhs = lift_map(M, "alpha", cs.f2 + lift_map(M, "beta", conn.c))
            assert lhs == rhs, (name, seed)


def test_flat_bianchi_requires_trivial_maps(inst):
    M = inst["e2-cone"].module
    with pytest.raises(StructureError):
        flat_bianchi_residuals(M, random_connection(M, D, 1))


def test_flat_bianchi_zero_and_agrees(inst):
    """On alpha = beta = 0 instances the plain-curvature identities hold and
    agree with the general ones (fake and plain curvatures coincide)."""
    for name in ("rot-u1", "abelian-chain"):
        M = inst[name].module
        if not (M.has_trivial_alpha() and M.has_trivial_beta()):
            continue
        for seed in (1, 2):
            conn = random_connection(M, D, seed)
            f1, f2, f3 = flat_bianchi_residuals(M, conn)
            assert f1.is_zero() and f2.is_zero() and f3.is_zero(), (name, seed)
            r1, r2, r3 = bianchi_residuals(M, conn)
            assert (f1, f2, f3) == (r1, r2, r3)


def test_field_eq_zero_connection(inst, triples):
    M = inst["e2-cone"].module
    T = triples["e2-cone"]
    ea, eb, ec = field_eq_residuals(M, zero_connection(M, D), T)
    assert ea.is_zero() and eb.is_zero() and ec.is_zero()


def test_field_eq_degrees(inst, triples):
    M = inst["e2-cone"].module
    T = triples["e2-cone"]
    ea, eb, ec = field_eq_residuals(M, random_connection(M, D, 3), T)
    assert (ea.degree, eb.degree, ec.degree) == (D - 1, D - 2, D - 3)
    assert (ea.algebra, eb.algebra, ec.algebra) == (M.g, M.h, M.l)


def test_field_eq_requires_dim4(inst, triples):
    M = inst["e2-cone"].module
    with pytest.raises(StructureError):
        field_eq_residuals(M, random_connection(M, 3, 1), triples["e2-cone"])


def test_field_eq_l_trivial_reduces_to_two_form_theory(inst, triples):
    """With l = 0 the kappa/eta terms drop and EC is empty."""
    from higherym.reductions import two_form_ym_residuals

    M = inst["so3-adjoint-l0"].module
    T = triples["so3-adjoint-l0"]
    for seed in (1, 2, 3):
        conn = random_connection(M, D, seed)
        ea, eb, ec = field_eq_residuals(M, conn, T)
        ea2, eb2 = two_form_ym_residuals(M, T, conn.a, conn.b)
        assert ea == ea2 and eb == eb2
        assert ec.is_zero()


def test_eb_invariant_under_eta_convention_swap(inst, triples):
    for name in ("rot-u1", "e2-cone"):
        M = inst[name].module
        T = triples[name]
        conn = random_connection(M, D, 8)
        r12 = field_eq_residuals(M, conn, T, eta_convention=(1, 2))
        r21 = field_eq_residuals(M, conn, T, eta_convention=(2, 1))
        assert r12 == r21


def test_fake_flat_field_eqs_precondition(inst, triples):
    M = inst["e2-cone"].module
    with pytest.raises(StructureError):
        fake_flat_field_eq_residuals(M, random_connection(M, D, 1), triples["e2-cone"])


def naive_fake_flat_residuals(M, T, conn):
    from higherym.forms import eta_bar, kappa_bar, sigma_bar

    cs = curvatures(M, conn)
    so1, so2, so3_ = hodge(cs.omega1), hodge(cs.omega2), hodge(cs.omega3)
    sign = Fraction((-1) ** conn.dim)
    ea = (
        d(so1)
        + wedge_bracket(conn.a, so1)
        - sigma_bar(M, T, so2, conn.b)
        - kappa_bar(M, T, so3_, conn.c).scale(sign)
    )
    eb = (
        d(so2)
        + wedge_action(M, conn.a, so2)
        + eta_bar(M, T, 1, so3_, conn.b)
        + eta_bar(M, T, 2, so3_, conn.b)
    )
    ec = d(so3_) + wedge_action(M, conn.a, so3_)
    return ea, eb, ec


def test_fake_flat_field_eqs_on_witnesses(inst, triples):
    data = e2_cone()
    M = data.module
    T = triples["e2-cone"]
    conn = fake_flat_witness(M, D, 21, alpha_right_inverse=data.alpha_right_inverse)
    got = fake_flat_field_eq_residuals(M, conn, T)
    assert got == naive_fake_flat_residuals(M, T, conn)
    assert not got[0].is_zero()  # d*omega1 does not vanish for this witness

    fdata = flatland()
    Mf = fdata.module
    Tf = triples["flatland"]
    conn2 = fake_flat_witness(Mf, D, 22, beta_right_inverse=fdata.beta_right_inverse)
    got2 = fake_flat_field_eq_residuals(Mf, conn2, Tf)
    assert got2 == naive_fake_flat_residuals(Mf, Tf, conn2)


def test_fake_flat_equals_general_when_maps_trivial(inst, triples):
    """With alpha = beta = 0, fake and plain curvatures coincide, so the two
    residual sets agree on fake-flat connections."""
    M = inst["rot-u1"].module
    T = triples["rot-u1"]
    rng = random.Random(4)
    # constant-coefficient B with A = 0 gives curv1 = curv2 = 0
    conn = ThreeConnection(
        zero_form(M.g, D, 1),
        random_form(rng, M.h, D, 2, degree_cap=0),
        random_form(rng, M.l, D, 3, degree_cap=0),
    )
    assert is_fake_flat(M, conn) == (True, True)
    assert fake_flat_field_eq_residuals(M, conn, T) == field_eq_residuals(M, conn, T)
