import math

import numpy as np
import pytest

from magnomech.params import TWO_PI, baseline, validate
from magnomech.steadystate import is_stable


def random_params(rng, *, stable=True, temperature=None, max_ratio=0.999):
    """Draw a parameter set in the regime the package targets (log-uniform rates)."""
    while True:
        logu = lambda lo, hi: 10 ** rng.uniform(math.log10(lo), math.log10(hi))
        g_minus = TWO_PI * logu(1e4, 5e6)
        raw = dict(
            omega_a=TWO_PI * 10e9,
            omega_m=TWO_PI * 10e9,
            omega_b=TWO_PI * 30e6,
            kappa_a=TWO_PI * logu(1e5, 5e6),
            kappa_m=TWO_PI * logu(1e5, 5e6),
            gamma_b=TWO_PI * logu(10.0, 1e5),
            g=TWO_PI * logu(1e4, 5e6),
            g_minus=g_minus,
            g_plus=rng.uniform(0.0, max_ratio) * g_minus,
            temperature=rng.uniform(0.0, 1.0) if temperature is None else temperature,
        )
        p = validate(raw)
        if not stable or is_stable(p).stable:
            return p


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def reference_point():
    return baseline(g_plus_hz=0.9 * 3e6)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion.

    Usage: ``criterion(number, label)`` once, then optional ``.detail = "..."``.
    The line is written when the test finishes, whatever its outcome.
    """
    state = {}

    class Recorder:
        detail = ""

        def __call__(self, number, label):
            state["number"], state["label"] = number, label
            return self

    rec = Recorder()
    yield rec
    if "number" not in state:
        return
    report = getattr(request.node, "rep_call", None)
    ok = report is not None and report.passed
    line = f"criterion {state['number']:>2} {'PASS' if ok else 'FAIL'}  {state['label']}"
    if rec.detail:
        line += f"  [{rec.detail}]"
    ACCEPTANCE_LINES.append(line)
    print("\n" + line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
