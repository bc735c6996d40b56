"""The Torelli map from tropical curves to principally polarized tori.

A curve is sent to its Jacobian form; a combinatorial type is sent to the
simple cographic matroid of its graph.  Two curves have the same Jacobian
exactly when their 3-edge-connectivizations carry isomorphic cographic
matroids with matching lengths; :func:`same_jacobian` decides this
combinatorially and :func:`arith_equiv_bruteforce` gives the independent
check on the forms themselves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import exact
from .graph import (GraphError, WeightedGraph, c1_sets, cycles, genus, is_planar,
                    is_stable, three_edge_connectivization)
from .homology import cycle_basis, validate_basis
from .matroid import CapacityError, Matroid, cographic_matroid, is_graphic, matroid_isomorphic, vector_matroid
from .quadform import QuadForm, jacobian, parse_lengths


class GenusMismatch(ValueError):
    pass


@dataclass(frozen=True)
class TropicalCurve:
    graph: WeightedGraph
    lengths: Mapping[str, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "lengths", parse_lengths(self.graph, self.lengths))
        if not is_stable(self.graph):
            raise GraphError("tropical curves need a stable graph")

    @property
    def genus(self) -> int:
        return genus(self.graph)

    def length_vector(self) -> list[Fraction]:
        return [self.lengths[n] for n in self.graph.edge_names]


def torelli_point(C: TropicalCurve) -> QuadForm:
    """Jacobian in the default fundamental-cycle basis."""
    return jacobian(C.graph, C.lengths)


def torelli_cell_image(G: WeightedGraph) -> tuple[Matroid, int]:
    """Simple cographic matroid of G and the dimension of its cell."""
    m = cographic_matroid(G).simple()
    return m, m.size


# ---------------------------------------------------------------------------
# metric classes

@dataclass
class MetricClass:
    graph: WeightedGraph  # 3-edge-connected representative
    lengths: dict[str, Fraction]
    classes: dict[str, frozenset[str]]  # kept edge -> its C1-set in the original
    token: str

    def matroid(self) -> Matroid:
        return cographic_matroid(self.graph)


def metric_class(C: TropicalCurve) -> MetricClass:
    """Drop separating edges; merge every C1-set into one edge of the summed length.

    The token is an invariant of the class (matroid shape plus sorted
    lengths); use :func:`same_jacobian` to decide equality.
    """
    G = C.graph
    rep = three_edge_connectivization(G)
    classes = {}
    lengths = {}
    for s in c1_sets(G):
        kept = G.edge_names[min(s)]
        members = frozenset(G.edge_names[i] for i in s)
        classes[kept] = members
        lengths[kept] = sum((C.lengths[x] for x in members), Fraction(0))
    assert set(rep.edge_names) == set(lengths)
    m = cographic_matroid(rep)
    from .moduli import matroid_key
    size, rank, circ, _ = matroid_key(m)
    token = (f"g={C.genus};n={size};r={rank};c={','.join(map(str, circ))};"
             f"l={','.join(str(x) for x in sorted(lengths.values()))}")
    return MetricClass(rep, lengths, classes, token)


@dataclass
class JacobianVerdict:
    equal: bool
    certificate: dict = field(default_factory=dict)


def same_jacobian(C1: TropicalCurve, C2: TropicalCurve) -> JacobianVerdict:
    """Length-preserving isomorphism of the cographic matroids of the
    3-edge-connectivizations (the bijection is returned as certificate)."""
    if C1.genus != C2.genus:
        raise GenusMismatch(f"genus {C1.genus} vs {C2.genus}")
    k1, k2 = metric_class(C1), metric_class(C2)
    if sorted(k1.lengths.values()) != sorted(k2.lengths.values()):
        return JacobianVerdict(False, {"reason": "length multisets differ",
                                       "lengths": [sorted(map(str, k1.lengths.values())),
                                                   sorted(map(str, k2.lengths.values()))]})
    iso = matroid_isomorphic(k1.matroid(), k2.matroid(), k1.lengths, k2.lengths)
    if iso is None:
        return JacobianVerdict(False, {"reason": "no length-preserving matroid isomorphism"})
    return JacobianVerdict(True, {"bijection": {a: iso[a] for a in sorted(iso)}})


# ---------------------------------------------------------------------------
# Schottky, planarity

@dataclass
class SchottkyVerdict:
    in_image: bool
    graph: WeightedGraph | None = None
    lengths: list[Fraction] | None = None


SCHOTTKY_GENUS_CAP = 4


def _cographic_realization(m: Matroid, cap: int) -> WeightedGraph | None:
    from .moduli import three_edge_connected_graphs
    r = m.rank
    if r > cap:
        raise CapacityError(f"Schottky search capped at genus {cap}")
    for G in three_edge_connected_graphs(r):
        if genus(G) != r or G.n_edges != m.size:
            continue
        if matroid_isomorphic(cographic_matroid(G), m) is not None:
            return G
    return None


def schottky_membership(obj, tu_matrix: Sequence[Sequence] | None = None,
                        cap: int = SCHOTTKY_GENUS_CAP) -> SchottkyVerdict:
    """Is the cell of a simple regular matroid (or of a form in the open cone
    of a TU matrix) hit by the Torelli map?  Searches 3-edge-connected graphs
    of genus rank(M) for one with an isomorphic cographic matroid."""
    lengths = None
    if isinstance(obj, QuadForm):
        if tu_matrix is None:
            raise ValueError("a form needs a totally unimodular matrix whose cone contains it")
        lengths = cone_coordinates(obj, tu_matrix)
        if lengths is None:
            raise ValueError("form is not in the open cone of the given matrix")
        m = vector_matroid(tu_matrix).simple()
    else:
        m = obj
        if not m.is_simple():
            m = m.simple()
    G = _cographic_realization(m, cap)
    return SchottkyVerdict(G is not None, G, lengths)


def cone_coordinates(Q: QuadForm, A: Sequence[Sequence]) -> list[Fraction] | None:
    """Positive l with Q = A diag(l) A^T, or None."""
    g = len(A)
    n = len(A[0]) if A else 0
    rows, rhs = [], []
    for i in range(g):
        for j in range(i, g):
            rows.append([A[i][k] * A[j][k] for k in range(n)])
            rhs.append(Q.matrix[i][j])
    sol = exact.solve(rows, rhs)
    if sol is None or exact.rank(rows) < n or any(x <= 0 for x in sol):
        return None
    return sol


@dataclass
class PlanarVerdict:
    planar: bool
    cographic_is_graphic: bool
    agree: bool
    witness: WeightedGraph | None = None


def planar_image_test(C) -> PlanarVerdict:
    """Planarity of the graph, and independently graphicness of its simple
    cographic matroid; both are reported and must agree."""
    G = C.graph if isinstance(C, TropicalCurve) else C
    planar = is_planar(G)
    H = is_graphic(cographic_matroid(G).simple())
    return PlanarVerdict(planar, H is not None, planar == (H is not None), H)


# ---------------------------------------------------------------------------
# reconstruction of lengths

def oriented_cycle(G: WeightedGraph, edge_set: frozenset[int], start: int) -> list[int]:
    """Signed chain of a circuit, traversed so that ``start`` has sign +1."""
    chain = [0] * G.n_edges
    s, t = G.edges[start]
    chain[start] = 1
    if s == t:
        return chain
    v = t
    used = {start}
    while v != s:
        nxt = next(i for i in edge_set if i not in used and v in G.edges[i])
        a, b = G.edges[nxt]
        chain[nxt] = 1 if a == v else -1
        v = b if a == v else a
        used.add(nxt)
    return chain


def crossing_cycles(G: WeightedGraph, e: int) -> tuple[list[int], list[int]] | None:
    """Two cycles through e meeting only in e, both oriented along e."""
    through = sorted((c for c in cycles(G) if e in c), key=lambda c: (len(c), sorted(c)))
    for i, c1 in enumerate(through):
        for c2 in through[i:]:
            if c1 & c2 == {e} and (c1 != c2 or len(c1) == 1):
                return oriented_cycle(G, c1, e), oriented_cycle(G, c2, e)
    return None


def reconstruct_lengths(Q: QuadForm, G: WeightedGraph,
                        basis: Sequence[Sequence[int]] | None = None) -> dict[str, Fraction]:
    """Recover edge lengths from a Jacobian form in the basis ``basis``.

    For each edge e pick cycles D1, D2 with D1 and D2 sharing only e; then
    l(e) = Q(D1, D2) evaluated in basis coordinates.
    """
    basis = cycle_basis(G) if basis is None else validate_basis(G, basis)
    k = len(basis)
    core = QuadForm.of([row[:k] for row in Q.rows()[:k]])
    bt = exact.transpose(basis)
    out = {}
    for e, name in enumerate(G.edge_names):
        pair = crossing_cycles(G, e)
        if pair is None:
            raise GraphError(f"no pair of cycles meeting exactly in {name}")
        x1 = exact.solve(bt, pair[0])
        x2 = exact.solve(bt, pair[1])
        out[name] = core.bilinear(x1, x2)
    rebuilt = [row[:k] for row in jacobian(G, out, basis).rows()[:k]]
    if any(v <= 0 for v in out.values()) or rebuilt != core.rows():
        raise ValueError("recovered lengths do not reproduce the form")
    return out
