import pytest

from lrc_regen.lrc import LinearCode, LrcParams, build_generator, fixture_example, plan_construction
from lrc_regen.matrix import Matrix

PROP_CASES = [(8, 2, 3, 2), (10, 2, 3, 2), (9, 3, 2, 3)]


@pytest.fixture(scope="session")
def fixture_code():
    return fixture_example()


@pytest.fixture(scope="session")
def built_codes():
    out = {}
    for args in PROP_CASES:
        plan = plan_construction(*args)
        out[args] = (plan, build_generator(plan, seed=42))
    return out


@pytest.fixture(scope="session")
def toy_codes():
    """Small hand-written codes for the n!-copy tests."""
    parity3 = LinearCode(LrcParams(3, 2, 2, 2, 2, 3), ((1, 2, 3),), Matrix([[1, 0, 1], [0, 1, 1]], 3))
    repetition3 = LinearCode(LrcParams(3, 1, 3, 1, 2, 3), ((1, 2, 3),), Matrix([[1, 1, 1]], 3))
    pairs4 = LinearCode(
        LrcParams(4, 2, 2, 1, 2, 3), ((1, 2), (3, 4)), Matrix([[1, 1, 0, 0], [0, 0, 1, 1]], 3)
    )
    return {"parity3": parity3, "repetition3": repetition3, "pairs4": pairs4}
