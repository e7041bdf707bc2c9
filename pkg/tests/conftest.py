import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from coxfano.dataio import load_all  # noqa: E402
from coxfano.validity import validate  # noqa: E402


@lru_cache(maxsize=None)
def _all():
    return tuple(load_all())


@lru_cache(maxsize=None)
def report(entry_id: str):
    return validate(by_id(entry_id).data())


def by_id(entry_id: str):
    return next(e for e in _all() if e.id == entry_id)


def sporadic_entries():
    return [e for e in _all() if not e.is_series]


def series_entries():
    return [e for e in _all() if e.is_series]


@pytest.fixture(scope="session")
def sporadic():
    return sporadic_entries()


@pytest.fixture(scope="session")
def series():
    return series_entries()


@pytest.fixture(scope="session")
def entry():
    return by_id


@pytest.fixture(scope="session")
def valid_report():
    return report


# One line per acceptance criterion, filled in by test_acceptance.py.
CRITERIA: dict[int, str] = {}


def record(n: int, title: str, ok: bool, detail: str) -> str:
    line = f"criterion {n} {title}: {'PASS' if ok else 'FAIL'} ({detail})"
    CRITERIA[n] = line
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[n])
