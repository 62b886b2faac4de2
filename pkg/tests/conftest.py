"""Shared test plumbing: uncaptured per-criterion result lines.

Acceptance tests register one line each; the terminal-summary hook
prints them after the run, outside pytest's output capture, so the
lines survive piped and quiet runs.
"""

criterion_lines = []


def record_criterion(name: str, ok: bool, detail: str) -> None:
    criterion_lines.append(f"criterion {name}: {'PASS' if ok else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in criterion_lines:
            terminalreporter.line(line)
