import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "regsurf", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("regsurf")

# criterion number -> (status, seconds, detail); filled by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        status, secs, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {status:<10} {secs:8.2f}s  {detail}")


@pytest.fixture
def record():
    return ACCEPTANCE
