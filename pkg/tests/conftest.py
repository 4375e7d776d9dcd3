import acceptance_log


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(acceptance_log.RESULTS):
        title, status, elapsed, msg = acceptance_log.RESULTS[n]
        line = f"criterion {n:2d}: {status}  ({elapsed:7.2f}s)  {title}"
        if msg:
            line += f"  -- {msg}"
        tr.write_line(line)
