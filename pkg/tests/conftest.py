import pytest

from asymwave.models import solve_kernel_params


@pytest.fixture(scope="session")
def wi23():
    return solve_kernel_params("whitham-inf", 2, 3, {"T": 1.0})


@pytest.fixture(scope="session")
def bi23():
    return solve_kernel_params("babenko-inf", 2, 3)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
