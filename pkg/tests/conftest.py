import pytest

from fskan.reference import load_reference

# (beta0, beta) rows of the published alpha comparison, in table order
REFERENCE_ROWS = [
    (0.5, 0.0),
    (2.0, 1.0),
    (1.0, 2.0),
    (1.0, 1.0),
    (1.0, 0.5),
    (1.0, 0.0),
    (1.0, -0.1),
    (1.0, -0.15),
    (1.0, -0.18),
    (1.0, -0.1988),
]

_ACCEPTANCE_LINES = []


def record_criterion(number, title, passed, detail=""):
    status = "PASS" if passed else "FAIL"
    _ACCEPTANCE_LINES.append(f"[{status}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def reference():
    return load_reference()
