import os

import pytest

ACCEPTANCE_LINES: list[str] = []


def pytest_addoption(parser):
    parser.addoption(
        "--skip-stretch",
        action="store_true",
        default=False,
        help="skip the A_5 stretch criterion (also MLAW_SKIP_STRETCH=1)",
    )


@pytest.fixture
def stretch_enabled(request) -> bool:
    return not (request.config.getoption("--skip-stretch") or os.environ.get("MLAW_SKIP_STRETCH") == "1")


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
