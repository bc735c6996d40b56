"""Integral cycle and cut spaces of an oriented graph.

Edge ``i`` of a :class:`WeightedGraph` is oriented from ``edges[i][0]`` to
``edges[i][1]``.  Chains are integer vectors indexed by edges.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from . import exact
from .graph import GraphError, WeightedGraph, graph_genus


def boundary(G: WeightedGraph, chain: Sequence[int]) -> list[int]:
    """Boundary of an edge chain: sum of c_e (head(e) - tail(e))."""
    out = [0] * G.n_vertices
    for c, (s, t) in zip(chain, G.edges):
        out[t] += c
        out[s] -= c
    return out


def is_cycle_chain(G: WeightedGraph, chain: Sequence[int]) -> bool:
    return len(chain) == G.n_edges and not any(boundary(G, chain))


def spanning_tree(G: WeightedGraph) -> dict[int, tuple[int, int]]:
    """BFS tree from vertex 0: maps each non-root vertex to (parent, edge)."""
    parent: dict[int, tuple[int, int]] = {}
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for i, (a, b) in enumerate(G.edges):
            if a == b or v not in (a, b):
                continue
            u = b if a == v else a
            if u not in seen:
                seen.add(u)
                parent[u] = (v, i)
                queue.append(u)
    return parent


def _path_to_root(G, parent, v) -> list[int]:
    """Chain of the tree path from the root to v."""
    chain = [0] * G.n_edges
    while v in parent:
        p, i = parent[v]
        chain[i] += 1 if G.edges[i] == (p, v) else -1
        v = p
    return chain


def cycle_basis(G: WeightedGraph) -> list[list[int]]:
    """Fundamental cycles of the BFS tree, one per non-tree edge.

    The non-tree edge appears with coefficient +1, so the basis is integral
    and unimodular in H_1(G, Z).
    """
    parent = spanning_tree(G)
    tree = {i for _, i in parent.values()}
    basis = []
    for i, (s, t) in enumerate(G.edges):
        if i in tree:
            continue
        chain = [0] * G.n_edges
        chain[i] = 1
        to_s = _path_to_root(G, parent, s)
        to_t = _path_to_root(G, parent, t)
        basis.append([c + a - b for c, a, b in zip(chain, to_s, to_t)])
    return basis


def coordinates(G: WeightedGraph, chain: Sequence[int]) -> list[int]:
    """Coordinates of a cycle chain in :func:`cycle_basis`.

    A cycle is determined by its values on non-tree edges, so the coordinates
    are just those values.
    """
    if not is_cycle_chain(G, chain):
        raise GraphError("chain is not a cycle")
    tree = {i for _, i in spanning_tree(G).values()}
    return [chain[i] for i in range(G.n_edges) if i not in tree]


def parse_signed_cycle(G: WeightedGraph, items: Sequence[str]) -> list[int]:
    """``["e1", "-e13", ...]`` to a chain vector."""
    chain = [0] * G.n_edges
    for it in items:
        it = it.strip()
        sign = -1 if it.startswith("-") else 1
        chain[G.edge_index(it.lstrip("+-"))] += sign
    return chain


def validate_basis(G: WeightedGraph, chains: Sequence[Sequence[int]]) -> list[list[int]]:
    """Check that ``chains`` is a Z-basis of H_1(G, Z); return it as lists."""
    rows = [list(map(int, c)) for c in chains]
    if len(rows) != graph_genus(G):
        raise GraphError(f"expected {graph_genus(G)} cycles, got {len(rows)}")
    coords = [coordinates(G, c) for c in rows]
    if abs(exact.det(coords)) != 1:
        raise GraphError("cycles do not form an integral basis of H1")
    return rows


def vertex_cut(G: WeightedGraph, v: int) -> list[int]:
    """Edges into v minus edges out of v (loops cancel)."""
    out = [0] * G.n_edges
    for i, (s, t) in enumerate(G.edges):
        if s == t:
            continue
        if t == v:
            out[i] += 1
        if s == v:
            out[i] -= 1
    return out


def cut_basis(G: WeightedGraph) -> list[list[int]]:
    """Vertex cuts of all vertices except the last; a basis of the cut lattice."""
    return [vertex_cut(G, v) for v in range(G.n_vertices - 1)]


def complete_graph(n: int) -> WeightedGraph:
    """K_n with edges (i, j), i < j, in lexicographic order, oriented i -> j."""
    es = tuple((i, j) for i in range(n) for j in range(i + 1, n))
    names = tuple(f"e{i + 1}{j + 1}" for i, j in es)
    return WeightedGraph((0,) * n, es, names)


def complete_graph_cut_matrix(g: int) -> list[list[int]]:
    """Rows are the vertex cuts of v_1..v_g in K_{g+1}."""
    return cut_basis(complete_graph(g + 1))


def boundary_matrices(G: WeightedGraph) -> tuple[list[list[int]], list[list[int]]]:
    """(boundary #V x #E, coboundary #E x #V); the second is the transpose."""
    d = [[0] * G.n_edges for _ in range(G.n_vertices)]
    for i, (s, t) in enumerate(G.edges):
        d[t][i] += 1
        d[s][i] -= 1
    return d, exact.transpose(d)


def h1_basis(G: WeightedGraph) -> list[list[int]]:
    return cycle_basis(G)


def cographic_matrix(G: WeightedGraph, basis: Sequence[Sequence[int]] | None = None) -> list[list[int]]:
    """Rows are the edge coordinates of an H1 basis (default: fundamental cycles)."""
    if basis is None:
        return cycle_basis(G)
    return validate_basis(G, basis)


def graphic_matrix(G: WeightedGraph) -> list[list[int]]:
    return cut_basis(G)
