import math
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ftb.udg import PointNode, build_udg

settings.register_profile("ci", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")


def graph_from_points(points, weights=None):
    weights = weights or [1.0] * len(points)
    return build_udg(PointNode(i, x, y, w) for i, ((x, y), w) in enumerate(zip(points, weights)))


def points_of(g):
    return [(p.x, p.y) for p in g.nodes]


def point_lists(min_size=2, max_size=8, side=1.6):
    coord = st.floats(0.0, side, allow_nan=False, allow_infinity=False)
    return st.lists(st.tuples(coord, coord), min_size=min_size, max_size=max_size)


def random_points(rng: random.Random, n: int, side: float):
    return [(rng.uniform(0, side), rng.uniform(0, side)) for _ in range(n)]


@pytest.fixture
def petal_wheel():
    """Degree-six hub: spokes of length 0.9 at 60 degrees, neighbouring spoke ends joined via outer petal nodes.

    Hub 0; spoke ends 1..6 at angle (i-1)*60 degrees; petal node 6+i sits on the
    bisector between spoke ends i and i+1 at radius 1.5.
    """
    pts = [(0.0, 0.0)]
    pts += [(0.9 * math.cos(i * math.pi / 3), 0.9 * math.sin(i * math.pi / 3)) for i in range(6)]
    pts += [(1.5 * math.cos((i + 0.5) * math.pi / 3), 1.5 * math.sin((i + 0.5) * math.pi / 3)) for i in range(6)]
    g = graph_from_points(pts)
    edges = {(0, i) for i in range(1, 7)}
    for i in range(6):
        a, b, w = 1 + i, 1 + (i + 1) % 6, 7 + i
        edges |= {tuple(sorted((a, w))), tuple(sorted((b, w)))}
    return g, edges


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when == "call":
                lines += [v for k, v in rep.user_properties if k == "criterion"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
