import pytest

from higherym.algebra import StructureError
from higherym.gauge import field_eq_residuals, random_connection
from higherym.reductions import (
    REDUCTION_TARGETS,
    electromagnetism_residual,
    reduced_residuals,
    reduction_applicable,
    ym_residuals,
)

D = 4
CHANNEL = {"a": 0, "b": 1, "c": 2}

CASES = [
    ("so3-adjoint-l0", "2ym"),
    ("so3-g-only", "1ym"),
    ("elec3", "3elec"),
    ("elec2", "2elec"),
    ("elec1", "1elec"),
]


@pytest.mark.parametrize("name,target", CASES)
def test_general_machinery_matches_direct_theories(name, target, inst, triples):
    M = inst[name].module
    T = triples[name]
    assert reduction_applicable(M, target) is None
    for seed in range(1, 11):
        conn = random_connection(M, D, seed)
        general = field_eq_residuals(M, conn, T)
        direct = reduced_residuals(M, T, target, conn)
        for channel, form in direct.items():
            assert general[CHANNEL[channel]] == form, (name, target, seed, channel)
        # channels outside the reduced theory are identically zero
        for channel, idx in CHANNEL.items():
            if channel not in direct:
                assert general[idx].is_zero(), (name, target, seed, channel)


def test_reductions_are_nontrivial(inst, triples):
    """The matched residuals are not identically zero."""
    for name, target in CASES:
        M = inst[name].module
        T = triples[name]
        found = False
        for seed in range(1, 6):
            conn = random_connection(M, D, seed)
            direct = reduced_residuals(M, T, target, conn)
            if any(not f.is_zero() for f in direct.values()):
                found = True
                break
        assert found, (name, target)


def test_applicability_reasons(inst):
    assert reduction_applicable(inst["e2-cone"].module, "2ym") is not None
    assert reduction_applicable(inst["so3-adjoint-l0"].module, "1ym") is not None
    assert reduction_applicable(inst["so3-g-only"].module, "1elec") is not None
    assert reduction_applicable(inst["elec1"].module, "bogus") is not None
    for target in REDUCTION_TARGETS:
        assert isinstance(target, str)


def test_reduced_residuals_rejects_wrong_instance(inst, triples):
    with pytest.raises(StructureError):
        reduced_residuals(
            inst["e2-cone"].module,
            triples["e2-cone"],
            "2ym",
            random_connection(inst["e2-cone"].module, D, 1),
        )


def test_electromagnetism_rejects_nonabelian(inst):
    M = inst["so3-g-only"].module
    conn = random_connection(M, D, 1)
    with pytest.raises(StructureError):
        electromagnetism_residual(conn.a)


def test_two_form_ym_contains_plain_ym(inst, triples):
    """With B = 0 and alpha = 0 the 2-form theory's A-equation is plain
    Yang-Mills (here checked on the l,h-trivial instance directly)."""
    M = inst["so3-g-only"].module
    conn = random_connection(M, D, 3)
    general = field_eq_residuals(M, conn, triples["so3-g-only"])
    assert general[0] == ym_residuals(conn.a)
