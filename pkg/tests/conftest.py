import numpy as np
import pytest

from credalfusion import CredalSet, EvidenceSet, Frame

PRIOR_EXTREMES = [(1, 0, 0), (0.5, 0.5, 0), (0.5, 0.3, 0.2), (0.8, 0, 0.2)]
O1 = (1, 0.5, 0.2)
O2 = (0.1, 0.6, 1)
URN_EXTREMES = [(0.9801, 0.0099, 0.0099, 0.0001), (0.0001, 0.0099, 0.0099, 0.9801)]


@pytest.fixture
def frame3():
    return Frame(("1", "2", "3"))


@pytest.fixture
def prior_c(frame3):
    return CredalSet.from_points(frame3, PRIOR_EXTREMES)


@pytest.fixture
def obs1(frame3):
    return EvidenceSet.precise(frame3, O1)


@pytest.fixture
def obs2(frame3):
    return EvidenceSet.precise(frame3, O2)


@pytest.fixture
def urn_frame():
    return Frame(("R1R2", "R1B2", "B1R2", "B1B2"))


@pytest.fixture
def urn_prior(urn_frame):
    return CredalSet.from_points(urn_frame, URN_EXTREMES)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)
