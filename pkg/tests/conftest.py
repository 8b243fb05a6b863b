import test_acceptance


def pytest_terminal_summary(terminalreporter):
    if not test_acceptance.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(test_acceptance.VERDICTS):
        terminalreporter.write_line(test_acceptance.VERDICTS[n])
