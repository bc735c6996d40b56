"""Named example graphs used by tests, the CLI and the verification suites."""

from __future__ import annotations

import json
from importlib import resources
from itertools import combinations

from .graph import WeightedGraph
from .homology import complete_graph


def theta() -> WeightedGraph:
    return WeightedGraph((0, 0), ((0, 1), (0, 1), (0, 1)))


def dumbbell() -> WeightedGraph:
    """Loops e1 (vertex 0) and e2 (vertex 1), bridge e3."""
    return WeightedGraph((0, 0), ((0, 0), (1, 1), (0, 1)))


def two_loops() -> WeightedGraph:
    return WeightedGraph((0,), ((0, 0), (0, 0)))


def loop_and_weight() -> WeightedGraph:
    """Weight-0 vertex with a loop, joined to a weight-1 vertex."""
    return WeightedGraph((0, 1), ((0, 0), (0, 1)))


def weighted_loop() -> WeightedGraph:
    return WeightedGraph((1,), ((0, 0),))


def two_weighted_vertices() -> WeightedGraph:
    return WeightedGraph((1, 1), ((0, 1),))


def single_vertex(g: int) -> WeightedGraph:
    return WeightedGraph((g,), ())


def k(n: int) -> WeightedGraph:
    return complete_graph(n)


def k33() -> WeightedGraph:
    return WeightedGraph((0,) * 6, tuple((i, j) for i in range(3) for j in range(3, 6)))


def prism() -> WeightedGraph:
    return WeightedGraph((0,) * 6, ((0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
                                    (0, 3), (1, 4), (2, 5)))


def k5_minus_edge() -> WeightedGraph:
    es = [p for p in combinations(range(5), 2) if p != (3, 4)]
    return WeightedGraph((0,) * 5, tuple(es))


def peterson() -> WeightedGraph:
    """The Petersen graph with the edge names and orientation of the data file."""
    return load_curve("peterson")[0]


def peterson_basis() -> list[list[int]]:
    return load_curve("peterson")[2]


def gamma1() -> WeightedGraph:
    """Triangle a-v-b (e1: a-v, e2: a-b, e3: b-v) plus a double edge v-u (e4, e5)."""
    # vertices: v=0, a=1, b=2, u=3
    return WeightedGraph((0, 0, 0, 0), ((1, 0), (1, 2), (2, 0), (0, 3), (0, 3)))


def gamma2() -> WeightedGraph:
    """Triple edge x-w (f1, f2, f3) and double edge w-y (f4, f5)."""
    # vertices: x=0, w=1, y=2
    return WeightedGraph((0, 0, 0), ((0, 1), (0, 1), (0, 1), (1, 2), (1, 2)),
                         ("f1", "f2", "f3", "f4", "f5"))


def whitney_pair() -> tuple[WeightedGraph, WeightedGraph]:
    """Two 2-isomorphic, non-isomorphic graphs related by a Whitney twist.

    Both are glued along the cut pair {0, 3}; the second flips the side
    carrying vertices 1 and 2.
    """
    side_a = [(0, 1), (1, 2), (2, 3), (0, 2)]
    side_b = [(0, 4), (4, 5), (5, 3), (0, 5)]
    flip = {0: 3, 3: 0}
    twisted = [(flip.get(a, a), flip.get(b, b)) for a, b in side_a]
    names = tuple(f"e{i + 1}" for i in range(8))
    g1 = WeightedGraph((0,) * 6, tuple(side_a + side_b), names)
    g2 = WeightedGraph((0,) * 6, tuple(twisted + side_b), names)
    return g1, g2


GENUS2_FIGURE = {
    "theta": theta,
    "dumbbell": dumbbell,
    "two_loops": two_loops,
    "loop_and_weight": loop_and_weight,
    "weighted_loop": weighted_loop,
    "two_weighted_vertices": two_weighted_vertices,
    "point": lambda: single_vertex(2),
}

GENUS2_ARROWS = [
    ("theta", "two_loops"),
    ("dumbbell", "two_loops"),
    ("dumbbell", "loop_and_weight"),
    ("two_loops", "weighted_loop"),
    ("loop_and_weight", "weighted_loop"),
    ("loop_and_weight", "two_weighted_vertices"),
    ("weighted_loop", "point"),
    ("two_weighted_vertices", "point"),
]


def data_text(name: str) -> str:
    return resources.files("tropitor").joinpath("data").joinpath(f"{name}.json").read_text()


def load_curve(name: str):
    """(graph, lengths or None, basis or None) from a packaged curve file."""
    from .io import curve_parts
    return curve_parts(json.loads(data_text(name)))


def peterson_displayed_matrix() -> list[list[dict[str, object]]]:
    """Symbolic 6x6 matrix as printed in the source example: entry -> {edge: coeff}."""
    raw = json.loads(data_text("peterson_displayed"))["matrix"]
    from fractions import Fraction
    return [[{k: Fraction(v) for k, v in cell.items()} for cell in row] for row in raw]
