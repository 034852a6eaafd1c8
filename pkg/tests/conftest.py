import hypothesis
import numpy as np
import pytest

from fcssc.dataset import FuzzyDecisionSystem

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")

_ACCEPTANCE = []


def random_fds(rng, n=None, m=None, c=None, n_max=50, m_max=10, c_max=4):
    """Random decision system with every class non-empty."""
    n = n or int(rng.integers(2, n_max + 1))
    c = c or int(rng.integers(1, min(c_max, n) + 1))
    m = m or int(rng.integers(1, m_max + 1))
    labels = np.concatenate([np.arange(c), rng.integers(0, c, n - c)])
    rng.shuffle(labels)
    X = rng.random((n, m))
    if rng.random() < 0.3:
        X = np.round(X * 4) / 4  # ties, duplicates, constant columns
    return FuzzyDecisionSystem(X, labels)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        crit_id, title = marker.args
        _ACCEPTANCE.append((crit_id, title, rep.outcome, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit_id, title, outcome, dur in sorted(_ACCEPTANCE):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  AC{crit_id}  {title}  ({dur:.2f}s)")
