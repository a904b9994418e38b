import pytest

from braces.catalog import full_catalog
from braces.engine import classify_mn
from braces.seeds import seed_braces, seed_q_braces


@pytest.fixture(scope="session")
def seeds3():
    return seed_braces(3)


@pytest.fixture(scope="session")
def seeds7():
    return seed_q_braces(7)


@pytest.fixture(scope="session")
def catalog37():
    return full_catalog(3, 7)


@pytest.fixture(scope="session")
def engine37(seeds7, seeds3):
    return classify_mn(seeds7, seeds3)


# acceptance criteria register their verdicts here; printed at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[number] = (ok, detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}", flush=True)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
