import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hadamard_coord.domain import make_rectangle  # noqa: E402

SWEEP_RECTS = [
    make_rectangle(0, 1, 0, 1),
    make_rectangle(-1, 2, 0, 3),
    make_rectangle(0.5, 1.5, -0.5, 0.5),
]


@pytest.fixture
def unit():
    return make_rectangle(0, 1, 0, 1)


@pytest.fixture(params=SWEEP_RECTS, ids=lambda r: r.label())
def sweep_rect(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        status, detail = mod.RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {detail}")
