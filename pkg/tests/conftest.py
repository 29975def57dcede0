import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, in criterion order."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py" not in rep.nodeid or rep.when != "call":
                continue
            label = getattr(rep, "criterion", None)
            if label is None:
                for name, value in rep.user_properties:
                    if name == "criterion":
                        label = value
            if label is not None:
                rows.append((label, "PASS" if outcome == "passed" else "FAIL", rep.nodeid))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for label, status, nodeid in sorted(rows, key=lambda r: (int(r[0].rstrip("ab")), r[0])):
        terminalreporter.write_line(f"criterion {label:>3}: {status}  {nodeid.split('::')[-1]}")
