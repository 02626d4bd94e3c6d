import re

import pytest
from hypothesis import HealthCheck, settings

from waring.poly import parse_poly

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def P(text, names=None):
    """Parse with variables named in order of appearance unless given."""
    if names is None:
        names = []
        for m in re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text):
            if m not in names and m != "i":
                names.append(m)
    return parse_poly(text, names=names)


@pytest.fixture
def poly():
    return P


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(number, ok, detail=""):
    prev = ACCEPTANCE.get(number)
    if prev is not None:
        ok = ok and prev[0]
        detail = "; ".join(x for x in (prev[1], detail) if x)
    ACCEPTANCE[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}"
        terminalreporter.write_line(f"{line} - {detail}" if detail else line)
