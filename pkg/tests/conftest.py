import json
from pathlib import Path

import pytest

from ecmds.code import matrix_from_strings
from ecmds.ec import new_curve, parse_point
from ecmds.gf import make_field

FIXTURES = Path(__file__).parent / "fixtures"


def load_example(name):
    fx = json.loads((FIXTURES / f"{name}.json").read_text())
    F = make_field(fx["p"], fx["m"], fx["modulus"])
    E = new_curve(F, *fx["curve"])
    fx["field"] = F
    fx["E"] = E
    fx["M"] = matrix_from_strings(F, fx["matrix"])
    fx["std"] = matrix_from_strings(F, fx["standard"])
    fx["H_points"] = [parse_point(E, s) for s in fx.get("H", [])]
    return fx


@pytest.fixture(scope="session")
def ex1():
    return load_example("example1")


@pytest.fixture(scope="session")
def ex2():
    return load_example("example2")


@pytest.fixture(scope="session")
def ex3():
    return load_example("example3")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
