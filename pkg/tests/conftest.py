import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

from capitul.multiquad import Field  # noqa: E402

# ordered pairs with known behaviour: K3 branch q=2, q=1, the E_sqrt_i2 shape, role swaps
PAIRS = [(5, 13), (13, 5), (5, 17), (17, 5), (37, 5), (149, 137)]
PRIMES_1MOD4 = [5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97, 101, 109, 113, 137, 149]


@pytest.fixture(scope="session")
def F513():
    return Field(5, 13)


@pytest.fixture(scope="session")
def F517():
    return Field(5, 17)


# -- acceptance reporting: one line per criterion in the terminal summary ----
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def record():
    def _record(n: int, name: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE[n] = (name, ok, detail)
        print(f"criterion {n} [PRIMARY] {name}: {'PASS' if ok else 'FAIL'}  {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        name, ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n} [PRIMARY] {name}: {'PASS' if ok else 'FAIL'}  {detail}")
