"""Planarity by searching for a K5 or K_{3,3} minor.

Works on the underlying simple graph.  Degree <= 1 vertices are removed and
degree-2 vertices suppressed before each step; the search then branches on
deleting or contracting an edge, memoized on isomorphism class.  Meant for
the small graphs of the moduli code, not for large inputs.
"""

from __future__ import annotations

from .graph import WeightedGraph, _components

Adj = dict[int, set[int]]


def _reduce(adj: Adj) -> Adj:
    adj = {v: set(ns) for v, ns in adj.items()}
    changed = True
    while changed:
        changed = False
        for v in list(adj):
            if v not in adj:
                continue
            d = len(adj[v])
            if d <= 1:
                for u in adj[v]:
                    adj[u].discard(v)
                del adj[v]
                changed = True
            elif d == 2:
                a, b = adj[v]
                adj[a].discard(v)
                adj[b].discard(v)
                adj[a].add(b)
                adj[b].add(a)
                del adj[v]
                changed = True
    return adj


def _edges(adj: Adj) -> list[tuple[int, int]]:
    return sorted((a, b) for a in adj for b in adj[a] if a < b)


def _key(adj: Adj) -> str:
    verts = sorted(adj)
    idx = {v: i for i, v in enumerate(verts)}
    es = tuple((idx[a], idx[b]) for a, b in _edges(adj))
    return WeightedGraph(tuple([0] * len(verts)), es).canonical_form


def _is_k5(adj: Adj) -> bool:
    return len(adj) == 5 and all(len(ns) == 4 for ns in adj.values())


def _is_k33(adj: Adj) -> bool:
    if len(adj) != 6 or any(len(ns) != 3 for ns in adj.values()):
        return False
    v = next(iter(adj))
    side = adj[v]
    other = set(adj) - side
    return all(adj[u] == other for u in side) and all(adj[u] == side for u in other)


def _search(adj: Adj, memo: dict[str, str | None]) -> str | None:
    adj = _reduce(adj)
    es = _edges(adj)
    for comp in _components(max(adj, default=-1) + 1, es, adj.keys()):
        if len(comp) < 5:
            continue
        sub = {v: adj[v] for v in comp}
        found = _search_connected(sub, memo)
        if found:
            return found
    return None


def _search_connected(adj: Adj, memo) -> str | None:
    es = _edges(adj)
    m = len(es)
    if m < 9:
        return None
    if _is_k5(adj):
        return "K5"
    if _is_k33(adj):
        return "K33"
    key = _key(adj)
    if key in memo:
        return memo[key]
    memo[key] = None
    found = None
    for a, b in es:
        deleted = {v: set(ns) for v, ns in adj.items()}
        deleted[a].discard(b)
        deleted[b].discard(a)
        found = _search(deleted, memo)
        if found:
            break
        contracted = {v: set(ns) for v, ns in adj.items() if v != b}
        for u in adj[b]:
            if u != a:
                contracted[u].discard(b)
                contracted[u].add(a)
                contracted[a].add(u)
        contracted[a].discard(b)
        found = _search(contracted, memo)
        if found:
            break
    memo[key] = found
    return found


def kuratowski_minor(G: WeightedGraph) -> str | None:
    """"K5" or "K33" naming a minor found, or None if G is planar."""
    adj: Adj = {v: set() for v in range(G.n_vertices)}
    for a, b in G.edges:
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return _search(adj, {})
