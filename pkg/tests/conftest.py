import oracles


def pytest_terminal_summary(terminalreporter):
    if not oracles.ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, line in sorted(oracles.ACCEPTANCE.items()):
        terminalreporter.write_line(line)
