def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS, TITLES
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(TITLES):
        terminalreporter.write_line(RESULTS.get(n, f"criterion {n} ({TITLES[n]}): NOT RUN"))
