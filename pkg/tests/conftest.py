import re

import pytest

from sandpile_trees import kernels

ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(re.match(r"\d+", k).group()), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
