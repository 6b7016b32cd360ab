from pathlib import Path

import numpy as np
import pytest

DATA_DIR = Path(__file__).parent / "data"
_CRITERIA: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def floyd_path():
    return DATA_DIR / "floyd.txt"


@pytest.fixture(scope="session")
def floyd(floyd_path):
    return np.loadtxt(floyd_path, comments="#")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def criterion(request):
    """Record a named acceptance criterion outcome for the end-of-run report."""

    def record(name, passed, detail=""):
        _CRITERIA[name] = (bool(passed), detail)
        assert passed, f"{name}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda s: int(s.split()[0]) if s.split()[0].isdigit() else 99):
        ok, detail = _CRITERIA[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
