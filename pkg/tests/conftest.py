import numpy as np
import pytest
from hypothesis import strategies as st

from quatspec.quat import Frame, Quaternion, build_frame, make_imaginary_unit

# lines reported by the acceptance module, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
quats = st.tuples(finite, finite, finite, finite).map(lambda t: np.array(t))


def nonreal_quats():
    return quats.filter(lambda q: np.linalg.norm(q[1:]) > 1e-3)


FRAME_UNITS = {
    "i": Quaternion(0, 1, 0, 0),
    "diag": Quaternion(0, 1, 1, 1) / np.sqrt(3),
    "random": make_imaginary_unit(Quaternion(0.0, 0.3, -1.2, 0.7)),
}


@pytest.fixture(params=sorted(FRAME_UNITS))
def frame(request) -> Frame:
    return build_frame(FRAME_UNITS[request.param])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def qdiag(*entries) -> np.ndarray:
    n = len(entries)
    out = np.zeros((n, n, 4))
    for k, q in enumerate(entries):
        out[k, k] = np.asarray(q, dtype=float)
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
