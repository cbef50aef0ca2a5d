import pytest

from drummodes import _kernels
from drummodes.profiles import Uniform, default_continuous, default_rings
from drummodes.shooting import SearchConfig, eigen_spectrum


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance" in rep.nodeid and rep.when == "call":
                name = rep.nodeid.split("::")[-1]
                lines.append((name, outcome.upper()))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, outcome in sorted(lines):
            terminalreporter.write_line(f"{outcome:6s} {name}")


@pytest.fixture(scope="session", autouse=True)
def compiled_kernels():
    """Compile (or load from cache) the integration kernels once per session."""
    _kernels.warmup()


@pytest.fixture(scope="session")
def uniform_profile():
    return Uniform()


@pytest.fixture(scope="session")
def continuous_profile():
    return default_continuous()


@pytest.fixture(scope="session")
def rings_profile():
    return default_rings()


# Reference-accuracy spectra (h = 1e-4) shared across test modules; each
# covers the mode range of the published 14-row table.
@pytest.fixture(scope="session")
def uniform_spectrum(uniform_profile):
    return eigen_spectrum(uniform_profile, m_max=4, c_max=3, config=SearchConfig())


@pytest.fixture(scope="session")
def continuous_spectrum(continuous_profile):
    return eigen_spectrum(continuous_profile, m_max=4, c_max=3, config=SearchConfig())


@pytest.fixture(scope="session")
def rings_spectrum(rings_profile):
    return eigen_spectrum(rings_profile, m_max=4, c_max=3, config=SearchConfig())


@pytest.fixture(scope="session")
def coarse_config():
    """Fast solver settings for tests that do not probe accuracy."""
    return SearchConfig(h=1e-3)
