import random

import pytest

from opident.opalg import make_context

SEED = 20261016

ACCEPTANCE = {}


def record(criterion, ok, detail=""):
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    terminalreporter.write_line(f"random seed: {SEED}")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def rng():
    return random.Random(SEED)


ALL_CONTEXTS = {
    "classical": lambda: make_context(2, 0, "classical"),
    "grassmann": lambda: make_context(1, 2, "grassmann"),
    "qline": lambda: make_context(1, 0, "qline"),
    "qplane": lambda: make_context(2, 0, "qplane"),
    "qhyperplane": lambda: make_context(3, 0, "qhyperplane"),
}


@pytest.fixture(params=sorted(ALL_CONTEXTS))
def any_ctx(request):
    return ALL_CONTEXTS[request.param]()
