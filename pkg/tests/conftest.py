import warnings

import numpy as np
import pytest
from hypothesis import strategies as st

from specgeo.factorization import CepstrumDecayWarning
from specgeo.psd import FrequencyGrid
from specgeo.sampling import random_spd


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def grid():
    return FrequencyGrid(512)


@pytest.fixture(scope="session")
def small_grid():
    return FrequencyGrid(128)


@pytest.fixture(autouse=True)
def _quiet_cepstrum():
    # the worked AR examples are known to be coarse at N=512
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CepstrumDecayWarning)
        yield


@st.composite
def spd_matrices(draw, m=None, cond=50.0):
    m = m or draw(st.integers(1, 4))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_spd(np.random.default_rng(seed), m, cond)


@st.composite
def spd_pairs(draw, cond=50.0):
    m = draw(st.integers(1, 4))
    return draw(spd_matrices(m, cond)), draw(spd_matrices(m, cond))


_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def report(request):
    """Record and print one pass/fail line for an acceptance criterion."""
    store = request.config.stash.setdefault(_ACCEPTANCE, {})

    def _report(number, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
        store[number] = line
        print(line)
        return ok

    return _report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_ACCEPTANCE, {})
    if store:
        terminalreporter.section("acceptance criteria")
        for number in sorted(store):
            terminalreporter.write_line(store[number])
