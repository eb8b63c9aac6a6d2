import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

from acceptance_log import ACCEPTANCE_DETAIL  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    reports = []
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            if "test_acceptance.py::test_criterion_" in rep.nodeid and rep.when == "call":
                reports.append(rep)
    if not reports:
        return
    terminalreporter.section("acceptance criteria")
    for rep in sorted(reports, key=lambda r: int(r.nodeid.split("_criterion_")[1].split("_")[0])):
        name = rep.nodeid.split("::")[-1]
        num = int(name.split("_")[2])
        verdict = "PASS" if rep.passed else "FAIL"
        detail = ACCEPTANCE_DETAIL.get(name, "")
        terminalreporter.write_line(f"criterion {num:2d} {verdict} {name[len('test_criterion_'):]} {detail}")
