import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from selberg_lab import corpus  # noqa: E402


@pytest.fixture(scope="session")
def zeta():
    return corpus.zeta()


@pytest.fixture(scope="session")
def l_chi4():
    return corpus.l_chi4()


@pytest.fixture(scope="session")
def l_chi3():
    return corpus.l_chi3()


@pytest.fixture(scope="session")
def zeta_l_chi4():
    return corpus.zeta_l_chi4()


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    verdicts = getattr(acceptance, "VERDICTS", None)
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for n in sorted(verdicts):
            terminalreporter.write_line(verdicts[n])
