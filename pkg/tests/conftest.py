"""Collects one line per acceptance criterion and prints them at the end of the run."""

ACCEPTANCE_LINES: list = []


def record(num: int, title: str, ok: bool, detail: str = "") -> None:
    line = "criterion %2d  %s  %s" % (num, "PASS" if ok else "FAIL", title)
    if detail:
        line += "  [%s]" % detail
    ACCEPTANCE_LINES.append((num, line))
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
