import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from gsk import groups as G

settings.register_profile("gsk", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("gsk")


def params_for(desc, linear=2.0, log=1.0):
    """Strategy for parameter tuples inside the fuzzing box."""
    parts = []
    for kind in desc.param_kinds:
        if kind == G.POSITIVE:
            parts.append(st.floats(-log, log).map(math.exp))
        elif kind == G.LOG:
            parts.append(st.floats(-log, log))
        else:
            parts.append(st.floats(-linear, linear))
    return st.tuples(*parts)


def elements_of(desc, **kw):
    return params_for(desc, **kw).map(lambda p: desc.element(*p))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
