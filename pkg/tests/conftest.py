import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

_ACCEPTANCE: dict[int, dict] = {}


@pytest.fixture
def configs_dir() -> Path:
    return CONFIGS


@pytest.fixture
def criterion():
    """Record a sub-check of an acceptance criterion: ``record(num, title, part, passed, detail)``."""
    def record(num: int, title: str, part: str, passed: bool, detail: str = "") -> bool:
        entry = _ACCEPTANCE.setdefault(num, {"title": title, "parts": []})
        entry["parts"].append((part, bool(passed), detail))
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        entry = _ACCEPTANCE[num]
        failed = [f"{part}: {detail}" if detail else part for part, ok, detail in entry["parts"] if not ok]
        status = "FAIL" if failed else "PASS"
        line = f"{status} [{num:2d}] {entry['title']} ({len(entry['parts'])} checks)"
        if failed:
            line += " -- failed " + "; ".join(failed)
        terminalreporter.write_line(line)
