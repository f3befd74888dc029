import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=60
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(autouse=True)
def _no_disk_cache(monkeypatch):
    # every test recomputes its tables unless it sets the cache itself
    monkeypatch.delenv("PILTZ_CACHE_DIR", raising=False)


@pytest.fixture(scope="session")
def fields():
    from piltz.fields import builtin_fields

    return builtin_fields()


# --- acceptance criteria: one PASS/FAIL line each, printed after the run ------

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or rep.when not in ("setup", "call"):
        return
    if rep.when == "setup" and rep.passed:
        return
    number, title = mark.args
    detail = dict(item.user_properties).get("detail", "")
    if rep.failed:
        detail = detail or rep.longreprtext.strip().splitlines()[-1][:160]
    _ACCEPTANCE[number] = ("PASS" if rep.passed else "FAIL", title, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, title, detail = _ACCEPTANCE[number]
        line = f"{status}  criterion {number:>2}: {title}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))
