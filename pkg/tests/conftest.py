import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from decmin.instances import random_instances  # noqa: E402

SEED = 20240611
COUNT = 200


@pytest.fixture(scope="session")
def instances():
    return random_instances(SEED, COUNT)


@pytest.fixture(scope="session")
def small_instances():
    return random_instances(SEED + 1, 40, n_range=(2, 5))


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
