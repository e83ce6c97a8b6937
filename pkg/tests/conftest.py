import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from torsion_obstruction.finite_field import FieldSpec  # noqa: E402
from torsion_obstruction.models import get_model  # noqa: E402
from torsion_obstruction.obstruction import run_obstruction  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"

# criterion number -> (passed, detail); filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def golden():
    return GOLDEN


@pytest.fixture(scope="session")
def f27():
    return FieldSpec(3, 3, (1, 2, 0, 1))


@pytest.fixture(scope="session")
def f125():
    return FieldSpec(5, 3, (3, 3, 0, 1))


@pytest.fixture(scope="session")
def m32():
    return get_model("x0_32")


@pytest.fixture(scope="session")
def m24():
    return get_model("x0_24")


@pytest.fixture(scope="session")
def e27(m32):
    return m32.reduced()


@pytest.fixture(scope="session")
def e125(m24):
    return m24.reduced()


@pytest.fixture(scope="session")
def report32(m32):
    return run_obstruction(m32, branch="both")


@pytest.fixture(scope="session")
def report24(m24):
    return run_obstruction(m24)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
