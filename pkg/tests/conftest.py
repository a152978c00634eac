import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


@pytest.fixture
def acceptance(request):
    """Recorder for acceptance criteria: ``acceptance(number, name, passed, detail)``."""

    def record(number, name, passed, detail=""):
        request.config.stash[ACCEPTANCE].append((number, name, bool(passed), detail))

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = sorted(config.stash.get(ACCEPTANCE, []))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, detail in rows:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number:2d} {name}: {detail}")
