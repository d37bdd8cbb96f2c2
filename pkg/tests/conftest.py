"""Shared test plumbing: the acceptance-criteria summary block.

Acceptance tests record a `criterion` number (and a `headline`) through
the record_property fixture; after the run this hook prints one PASS or
FAIL line per criterion so the checklist can be read off the bottom of
any pytest invocation that included tests/test_acceptance.py.
"""


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = {}
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call":
                continue
            props = dict(getattr(rep, "user_properties", []) or [])
            if "criterion" in props:
                rows[props["criterion"]] = (outcome, props.get("headline", ""))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(rows):
        outcome, headline = rows[num]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status}  {headline}")
