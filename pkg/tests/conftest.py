import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from monotone_moments import rmt  # noqa: E402

_CRITERIA: dict[int, tuple[str, bool, str]] = {}
_MC_CACHE: dict = {}


def record_criterion(number: int, title: str, passed: bool, detail: str) -> None:
    _CRITERIA[number] = (title, bool(passed), detail)


def cached_mc(spec, ks, config):
    """Monte Carlo estimates memoized for the session, with wall time of the first run."""
    key = (spec, tuple(ks), config)
    if key not in _MC_CACHE:
        t0 = time.perf_counter()
        est = rmt.mc_moment_estimates(spec, ks, config)
        _MC_CACHE[key] = (est, time.perf_counter() - t0)
    return _MC_CACHE[key]


@pytest.fixture
def criterion():
    return record_criterion


@pytest.fixture
def mc():
    return cached_mc


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok, detail = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}  [{detail}]")
