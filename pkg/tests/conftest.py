import pytest
from hypothesis import settings

# Fixed example generation so failures reproduce across runs and machines.
settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")

_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def acceptance_lines():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for index in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[index])
