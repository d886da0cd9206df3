import random

import pytest
from hypothesis import HealthCheck, settings

from char3link.exactfield import FunctionField
from char3link.symbolalg import SymbolAlgebra

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")

_CRITERIA: list[str] = []


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def F():
    return FunctionField("ab")


@pytest.fixture(scope="session")
def A(F):
    a, b = F.gens()
    return SymbolAlgebra(F, a, b)


@pytest.fixture
def criterion():
    """Record a one-line pass/fail verdict for an acceptance criterion."""

    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
        _CRITERIA.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA):
            terminalreporter.write_line(line)
