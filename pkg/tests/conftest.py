import math

import pytest

from graphene_cfield import MagneticProfile, ProfileKind

PI_10 = math.pi / 10

# figure parameter sets: (profile, k)
FIGURES = {
    "constant": (MagneticProfile(ProfileKind.CONSTANT, 0.5, PI_10), 1.0),
    "trig": (MagneticProfile(ProfileKind.TRIG, 4.0, PI_10, 1.0), -2.0),
    "exp": (MagneticProfile(ProfileKind.EXP, 1.0, PI_10, 1.0), 6.0),
}


@pytest.fixture(params=sorted(FIGURES))
def figure(request):
    return FIGURES[request.param]


_criteria = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.split("::")[-1].split("[")[0]
        ok, dur = _criteria.get(name, (True, 0.0))
        _criteria[name] = (ok and report.outcome == "passed", dur + report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda s: int(s.split("_")[2])):
        ok, dur = _criteria[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  ({dur:.1f} s)")
