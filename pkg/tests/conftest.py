from __future__ import annotations

import pytest

from higherym import instances
from higherym.invariants import project_invariant

try:
    from hypothesis import settings

    settings.register_profile("repro", derandomize=True, max_examples=40)
    settings.load_profile("repro")
except ImportError:  # pragma: no cover
    pass


@pytest.fixture(scope="session")
def inst():
    """All shipped differential instances, built once."""
    return {name: builder() for name, builder in instances.DIFFERENTIAL_BUILDERS.items()}


@pytest.fixture(scope="session")
def triples(inst):
    """Projected invariant triples for every instance that admits one."""
    out = {}
    for name in instances.VALIDATED_NAMES:
        out[name] = project_invariant(inst[name].module)
    return out


@pytest.fixture(scope="session")
def finite():
    return {name: builder() for name, builder in instances.FINITE_BUILDERS.items()}
