import functools
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from configph.metric_graph import generalized_h, star
from configph.param_chambers import arrangement, critical_lines
from configph.persistence_module import build_module

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CRITERIA: dict[int, tuple[bool, str]] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    CRITERIA[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}")


@functools.lru_cache(maxsize=None)
def graph(kind: str, *params: int):
    return star(params[0], Fraction(1)) if kind == "star" else generalized_h(params[0], params[1], Fraction(1))


@functools.lru_cache(maxsize=None)
def chambers(kind: str, *params: int):
    return arrangement(critical_lines(graph(kind, *params)))


@functools.lru_cache(maxsize=None)
def module(kind: str, degree: int, *params: int):
    return build_module(graph(kind, *params), degree, arr=chambers(kind, *params))


@pytest.fixture
def y_graph():
    return graph("star", 3)
