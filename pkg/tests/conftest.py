import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from locc_ensembles.states import PureState

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record():
    """Print and remember one pass/fail line per acceptance criterion."""
    def _record(name, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] {name}" + (f" -- {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed
    return _record


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hermitian(rng, n):
    x = random_complex(rng, n, n)
    return (x + x.conj().T) / 2


def random_pure(rng, dA, dB):
    return PureState.from_vector(dA, dB, random_complex(rng, dA * dB))


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def pure_states(draw, max_dim=6):
    dA = draw(st.integers(1, max_dim))
    dB = draw(st.integers(1, max_dim))
    rng = np.random.default_rng(draw(seeds))
    return random_pure(rng, dA, dB)


@st.composite
def prob_vectors(draw, min_len=1, max_len=8):
    n = draw(st.integers(min_len, max_len))
    rng = np.random.default_rng(draw(seeds))
    v = rng.dirichlet(np.ones(n) * draw(st.sampled_from([0.3, 1.0, 3.0])))
    return np.sort(v / v.sum())
