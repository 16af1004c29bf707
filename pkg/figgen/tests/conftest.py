from _figgen_helpers import ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria (figure generator)")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
