import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "wildaut", deadline=None, derandomize=True, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("wildaut")


@pytest.fixture(scope="session")
def classic_report():
    from wildaut.cover import analyze
    from wildaut.realize import classic_D8_example

    return analyze(classic_D8_example())


class Verdicts:
    """One PASS/FAIL line per acceptance criterion, printed in the terminal summary."""

    def __init__(self):
        self.lines = {}

    def record(self, key, ok, detail):
        self.lines[key] = f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}"


def pytest_configure(config):
    config._wildaut_verdicts = Verdicts()


@pytest.fixture
def verdicts(request):
    return request.config._wildaut_verdicts


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    v = getattr(config, "_wildaut_verdicts", None)
    if v is None or not v.lines:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(v.lines, key=lambda k: (int(str(k).split(".")[0]), str(k))):
        terminalreporter.write_line(v.lines[key])
