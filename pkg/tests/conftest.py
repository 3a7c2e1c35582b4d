import sys


def pytest_terminal_summary(terminalreporter):
    acc = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if not acc or not acc.RESULTS:
        return
    terminalreporter.section("acceptance")
    for num in sorted(acc.RESULTS):
        terminalreporter.write_line(acc.RESULTS[num])
