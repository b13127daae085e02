from __future__ import annotations

import pytest
from hypothesis import settings

from projgeom.flats import canonicalize, point
from projgeom.scalars import QUATERNION, RATIONAL, gf

settings.register_profile("project", max_examples=60, deadline=None)
settings.load_profile("project")

GF2, GF3, GF5, GF7 = gf(2), gf(3), gf(5), gf(7)


def pt(ring, *coords):
    return point(ring, *coords)


def line(ring, *rows):
    return canonicalize(rows, ring)


@pytest.fixture(params=[GF3, GF5, RATIONAL, QUATERNION], ids=lambda r: r.tag)
def any_ring(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if RESULTS[n] else 'FAIL'}")
