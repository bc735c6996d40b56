import re

ACCEPTANCE = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    rows = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            m = ACCEPTANCE.search(getattr(rep, "nodeid", ""))
            if not m or rep.when not in ("call", "setup"):
                continue
            key = int(m.group(1))
            ok = status == "passed"
            prev = rows.get(key)
            rows[key] = (m.group(2).replace("_", " "), ok and (prev is None or prev[1]))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(rows):
        name, ok = rows[key]
        terminalreporter.write_line(f"criterion {key:2d} {'PASS' if ok else 'FAIL'}  {name}")
