"""Shared pytest hooks.

The acceptance tests record one PASS/FAIL line each with their measured
values; the terminal-summary hook echoes the collected lines after the
run so they are visible without -s.
"""

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, ok: bool, detail: str) -> bool:
    line = f"ACCEPTANCE {number} {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
