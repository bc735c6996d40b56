"""Weighted multigraphs: stability, specialization, connectivity, C1-sets.

Vertices are ``0..n-1``.  Edges are an indexed list of endpoint pairs; a
loop is a pair with equal endpoints.  Every edge also carries a name
(``"e1"``, ``"e2"``, ... by default) which survives contraction, so that
edges of a specialization can be traced back to the original graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Structurally invalid graph input."""


class _Infinity:
    """The symbolic +infinity used by connectivity and girth."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    __str__ = __repr__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("tropitor.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinity()


def _components(n: int, edges: Iterable[tuple[int, int]], alive=None) -> list[list[int]]:
    alive = set(range(n)) if alive is None else set(alive)
    parent = {v: v for v in alive}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        if a in parent and b in parent:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for v in sorted(alive):
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def _is_connected(n: int, edges: Iterable[tuple[int, int]], alive=None) -> bool:
    return len(_components(n, edges, alive)) <= 1


@dataclass(frozen=True)
class WeightedGraph:
    """A finite connected multigraph with a non-negative weight per vertex."""

    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    edge_names: tuple[str, ...] = field(default=None)

    def __post_init__(self):
        weights = tuple(int(w) for w in self.weights)
        edges = tuple((int(a), int(b)) for a, b in self.edges)
        names = self.edge_names
        if names is None:
            names = tuple(f"e{i + 1}" for i in range(len(edges)))
        names = tuple(str(x) for x in names)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "edge_names", names)
        n = len(weights)
        if n == 0:
            raise GraphError("a graph needs at least one vertex")
        if any(w < 0 for w in weights):
            raise GraphError(f"negative vertex weight in {weights}")
        if len(names) != len(edges) or len(set(names)) != len(names):
            raise GraphError("edge names must be unique, one per edge")
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise GraphError(f"edge ({a}, {b}) has an endpoint outside 0..{n - 1}")
        if not _is_connected(n, edges):
            raise GraphError("graph is disconnected")

    @property
    def n_vertices(self) -> int:
        return len(self.weights)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    def edge_index(self, e) -> int:
        if isinstance(e, str):
            try:
                return self.edge_names.index(e)
            except ValueError:
                raise GraphError(f"unknown edge {e!r}") from None
        if not 0 <= e < self.n_edges:
            raise GraphError(f"unknown edge id {e!r}")
        return e

    def valence(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def valences(self) -> list[int]:
        val = [0] * self.n_vertices
        for a, b in self.edges:
            val[a] += 1
            val[b] += 1
        return val

    def is_loop(self, e: int) -> bool:
        a, b = self.edges[e]
        return a == b

    def incident(self, v: int) -> list[int]:
        return [i for i, (a, b) in enumerate(self.edges) if v in (a, b)]

    def names(self, edge_ids: Iterable[int]) -> frozenset[str]:
        return frozenset(self.edge_names[i] for i in edge_ids)

    @cached_property
    def _canonical(self):
        return _canonical_search(self)

    @property
    def canonical_form(self) -> str:
        """Relabeling-invariant certificate: equal iff isomorphic."""
        cert = self._canonical[0]
        w, es = cert
        return "w=" + ",".join(map(str, w)) + ";e=" + ",".join(f"{a}-{b}" for a, b in es)

    @property
    def canonical_labeling(self) -> tuple[int, ...]:
        """A vertex relabeling realizing :attr:`canonical_form`."""
        return self._canonical[1][0]

    def relabeled(self, labeling: Sequence[int]) -> "WeightedGraph":
        """Copy with vertex v renamed to ``labeling[v]``; edge order kept."""
        n = self.n_vertices
        w = [0] * n
        for v in range(n):
            w[labeling[v]] = self.weights[v]
        es = tuple((labeling[a], labeling[b]) for a, b in self.edges)
        return WeightedGraph(tuple(w), es, self.edge_names)

    def with_edge_names(self, names: Sequence[str]) -> "WeightedGraph":
        return WeightedGraph(self.weights, self.edges, tuple(names))


# ---------------------------------------------------------------------------
# canonical labeling by individualization / refinement

def _neighbourhoods(G: WeightedGraph):
    n = G.n_vertices
    mult: list[dict[int, int]] = [dict() for _ in range(n)]
    loops = [0] * n
    for a, b in G.edges:
        if a == b:
            loops[a] += 1
        else:
            mult[a][b] = mult[a].get(b, 0) + 1
            mult[b][a] = mult[b].get(a, 0) + 1
    return [sorted(m.items()) for m in mult], loops


def _rank(keys: list) -> list[int]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _refine(colors: list[int], nbrs) -> list[int]:
    ncls = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted((colors[u], k) for u, k in nbrs[v])))
                for v in range(len(colors))]
        colors = _rank(sigs)
        k = len(set(colors))
        if k == ncls:
            return colors
        ncls = k


def _leaf_labelings(colors: list[int], nbrs) -> Iterator[list[int]]:
    n = len(colors)
    if len(set(colors)) == n:
        yield colors
        return
    sizes: dict[int, int] = {}
    for c in colors:
        sizes[c] = sizes.get(c, 0) + 1
    target = min(c for c, s in sizes.items() if s > 1)
    for v in range(n):
        if colors[v] != target:
            continue
        ind = _rank([(colors[x], 0 if x == v else 1) for x in range(n)])
        yield from _leaf_labelings(_refine(ind, nbrs), nbrs)


def _certificate(G: WeightedGraph, lab: Sequence[int]):
    w = [0] * G.n_vertices
    for v, x in enumerate(G.weights):
        w[lab[v]] = x
    es = sorted(tuple(sorted((lab[a], lab[b]))) for a, b in G.edges)
    return tuple(w), tuple(es)


def _canonical_search(G: WeightedGraph):
    nbrs, loops = _neighbourhoods(G)
    val = G.valences()
    start = _rank([(G.weights[v], loops[v], val[v]) for v in range(G.n_vertices)])
    best = None
    best_leaves: list[tuple[int, ...]] = []
    for lab in _leaf_labelings(_refine(start, nbrs), nbrs):
        cert = _certificate(G, lab)
        if best is None or cert < best:
            best, best_leaves = cert, [tuple(lab)]
        elif cert == best:
            best_leaves.append(tuple(lab))
    return best, best_leaves


def canonical_form(G: WeightedGraph) -> str:
    return G.canonical_form


def isomorphism(G1: WeightedGraph, G2: WeightedGraph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """A (vertex map, edge map) isomorphism G1 -> G2, or None."""
    if G1.canonical_form != G2.canonical_form:
        return None
    l1, l2 = G1.canonical_labeling, G2.canonical_labeling
    inv2 = [0] * G2.n_vertices
    for v, i in enumerate(l2):
        inv2[i] = v
    vmap = tuple(inv2[l1[v]] for v in range(G1.n_vertices))
    pool: dict[tuple[int, int], list[int]] = {}
    for j, (a, b) in enumerate(G2.edges):
        pool.setdefault(tuple(sorted((a, b))), []).append(j)
    emap = []
    for a, b in G1.edges:
        emap.append(pool[tuple(sorted((vmap[a], vmap[b])))].pop(0))
    return vmap, tuple(emap)


def vertex_automorphisms(G: WeightedGraph) -> list[tuple[int, ...]]:
    """All weight-preserving vertex permutations preserving edge multiplicities."""
    leaves = G._canonical[1]
    p0 = leaves[0]
    inv0 = [0] * len(p0)
    for v, i in enumerate(p0):
        inv0[i] = v
    return sorted({tuple(inv0[p[v]] for v in range(len(p))) for p in leaves})


def automorphism_edge_action(G: WeightedGraph) -> frozenset[tuple[int, ...]]:
    """Image of Aut(G, w) in the permutations of E(G).

    A permutation ``phi`` is returned as a tuple with ``phi[e]`` the image of
    edge ``e``.  Parallel edges (and loops at one vertex) may be permuted
    freely among themselves on top of every vertex automorphism.
    """
    by_ends: dict[tuple[int, int], list[int]] = {}
    for i, (a, b) in enumerate(G.edges):
        by_ends.setdefault(tuple(sorted((a, b))), []).append(i)
    keys = sorted(by_ends)
    group = set()
    for psi in vertex_automorphisms(G):
        choices = []
        for k in keys:
            src = by_ends[k]
            dst = by_ends[tuple(sorted((psi[k[0]], psi[k[1]])))]
            choices.append([(src, p) for p in permutations(dst)])
        for combo in product(*choices):
            phi = [0] * G.n_edges
            for src, dst in combo:
                for s, d in zip(src, dst):
                    phi[s] = d
            group.add(tuple(phi))
    return frozenset(group)


# ---------------------------------------------------------------------------
# genus, stability, specialization

def genus(G: WeightedGraph) -> int:
    """1 - #V + #E + total weight."""
    return 1 - G.n_vertices + G.n_edges + G.total_weight


def graph_genus(G: WeightedGraph) -> int:
    """First Betti number only (the weight part excluded)."""
    return 1 - G.n_vertices + G.n_edges


def is_stable(G: WeightedGraph) -> bool:
    return all(w > 0 or val >= 3 for w, val in zip(G.weights, G.valences()))


def contract_edges(G: WeightedGraph, edge_ids: Iterable) -> WeightedGraph:
    """Contract a set of edges at once.

    Each connected piece of the contracted subgraph becomes one vertex whose
    weight is the total weight of the piece plus its first Betti number, so
    contracting a loop adds one to the weight of its vertex.
    """
    S = {G.edge_index(e) for e in edge_ids}
    n = G.n_vertices
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in S:
        a, b = G.edges[i]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(v) for v in range(n)})
    new_index = {r: i for i, r in enumerate(roots)}
    weights = [0] * len(roots)
    nverts = [0] * len(roots)
    nedges = [0] * len(roots)
    for v in range(n):
        k = new_index[find(v)]
        weights[k] += G.weights[v]
        nverts[k] += 1
    for i in S:
        nedges[new_index[find(G.edges[i][0])]] += 1
    for k in range(len(roots)):
        weights[k] += nedges[k] - nverts[k] + 1
    keep = [i for i in range(G.n_edges) if i not in S]
    edges = tuple((new_index[find(G.edges[i][0])], new_index[find(G.edges[i][1])]) for i in keep)
    return WeightedGraph(tuple(weights), edges, tuple(G.edge_names[i] for i in keep))


def contract_edge(G: WeightedGraph, e) -> WeightedGraph:
    """Specialize along one edge (loop: weight + 1; otherwise merge endpoints)."""
    return contract_edges(G, [G.edge_index(e)])


def one_edge_specializations(G: WeightedGraph) -> list[WeightedGraph]:
    """Stable one-edge contractions of G, one per isomorphism class."""
    seen: dict[str, WeightedGraph] = {}
    for e in range(G.n_edges):
        H = contract_edge(G, e)
        if is_stable(H):
            seen.setdefault(H.canonical_form, H)
    return [seen[k] for k in sorted(seen)]


# ---------------------------------------------------------------------------
# cycles, bonds, connectivity

def cycles(G: WeightedGraph) -> set[frozenset[int]]:
    """Edge sets of the circuits of G (connected, 2-regular subgraphs)."""
    out: set[frozenset[int]] = set()
    inc: list[list[tuple[int, int]]] = [[] for _ in range(G.n_vertices)]
    for i, (a, b) in enumerate(G.edges):
        if a == b:
            out.add(frozenset([i]))
        else:
            inc[a].append((i, b))
            inc[b].append((i, a))

    def walk(start, v, visited, path):
        for i, u in inc[v]:
            if path and i == path[-1]:
                continue
            if u == start:
                out.add(frozenset(path + [i]))
            elif u > start and u not in visited:
                visited.add(u)
                walk(start, u, visited, path + [i])
                visited.discard(u)

    for s in range(G.n_vertices):
        walk(s, s, {s}, [])
    return out


def bonds(G: WeightedGraph) -> set[frozenset[int]]:
    """Minimal cuts: E(V1, V2) with both induced subgraphs connected."""
    n = G.n_vertices
    out = set()
    rest = list(range(1, n))
    for k in range(0, n - 1):
        for extra in combinations(rest, k):
            side = {0, *extra}
            other = [v for v in range(n) if v not in side]
            inner = [(a, b) for a, b in G.edges if a in side and b in side]
            outer = [(a, b) for a, b in G.edges if a not in side and b not in side]
            if _is_connected(n, inner, side) and _is_connected(n, outer, other):
                out.add(frozenset(i for i, (a, b) in enumerate(G.edges)
                                  if (a in side) != (b in side)))
    return out


def cycles_and_bonds(G: WeightedGraph) -> tuple[set[frozenset[int]], set[frozenset[int]]]:
    return cycles(G), bonds(G)


def separating_edges(G: WeightedGraph) -> list[int]:
    out = []
    for i, (a, b) in enumerate(G.edges):
        if a != b and not _is_connected(G.n_vertices, [e for j, e in enumerate(G.edges) if j != i]):
            out.append(i)
    return out


def c1_sets(G: WeightedGraph) -> list[frozenset[int]]:
    """Partition of the non-separating edges into C1-sets.

    Two non-separating edges lie on exactly the same cycles iff removing both
    disconnects the graph; classes are listed by their smallest edge.
    """
    seps = set(separating_edges(G))
    nonsep = [i for i in range(G.n_edges) if i not in seps]
    parent = {i: i for i in nonsep}
    for i, j in combinations(nonsep, 2):
        if G.is_loop(i) or G.is_loop(j):
            continue
        rest = [e for k, e in enumerate(G.edges) if k not in (i, j)]
        if not _is_connected(G.n_vertices, rest):
            ri, rj = parent[i], parent[j]
            while parent[ri] != ri:
                ri = parent[ri]
            while parent[rj] != rj:
                rj = parent[rj]
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, set[int]] = {}
    for i in nonsep:
        r = i
        while parent[r] != r:
            r = parent[r]
        groups.setdefault(r, set()).add(i)
    return [frozenset(groups[k]) for k in sorted(groups)]


def is_3_edge_connected(G: WeightedGraph) -> bool:
    return not separating_edges(G) and all(len(s) == 1 for s in c1_sets(G))


def vertex_connectivity(G: WeightedGraph):
    n = G.n_vertices
    if n == 1:
        return INF
    for k in range(1, n - 1):
        for X in combinations(range(n), k):
            alive = [v for v in range(n) if v not in X]
            if not _is_connected(n, G.edges, alive):
                return k
    return n - 1


def edge_connectivity(G: WeightedGraph):
    n = G.n_vertices
    if n == 1:
        return INF
    best = None
    for k in range(0, n - 1):
        for extra in combinations(range(1, n), k):
            side = {0, *extra}
            cut = sum((a in side) != (b in side) for a, b in G.edges)
            best = cut if best is None else min(best, cut)
    return best


def girth(G: WeightedGraph):
    cs = cycles(G)
    return min(map(len, cs)) if cs else INF


def connectivity_stats(G: WeightedGraph):
    """(vertex connectivity, edge connectivity, girth), INF per convention."""
    return vertex_connectivity(G), edge_connectivity(G), girth(G)


# ---------------------------------------------------------------------------
# simplification and 3-edge-connectivization

def simplification(G: WeightedGraph) -> WeightedGraph:
    """Drop loops and keep one edge of every parallel class."""
    seen = set()
    keep = []
    for i, (a, b) in enumerate(G.edges):
        key = tuple(sorted((a, b)))
        if a != b and key not in seen:
            seen.add(key)
            keep.append(i)
    return WeightedGraph(G.weights, tuple(G.edges[i] for i in keep),
                         tuple(G.edge_names[i] for i in keep))


def three_edge_connectivization(G: WeightedGraph) -> WeightedGraph:
    """One representative of the 3-edge-connectivization class.

    Separating edges are contracted; of every C1-set only its first edge
    survives.  Surviving edges keep their names.
    """
    drop = set(separating_edges(G))
    for s in c1_sets(G):
        drop |= set(sorted(s)[1:])
    return contract_edges(G, drop)


def max_edges_bound_holds(G: WeightedGraph) -> tuple[bool, bool]:
    """(#E <= 3g-3-|w|, equality iff every vertex is (0,3) or (1,1))."""
    g = genus(G)
    bound = 3 * g - 3 - G.total_weight
    tight = all((w, val) in ((0, 3), (1, 1)) for w, val in zip(G.weights, G.valences()))
    return G.n_edges <= bound, (G.n_edges == bound) == tight


def is_planar(G: WeightedGraph) -> bool:
    from .planarity import kuratowski_minor
    return kuratowski_minor(G) is None


def are_2_isomorphic(G1: WeightedGraph, G2: WeightedGraph) -> dict[str, str] | None:
    """Cycle-preserving edge bijection, as an edge-name map, or None."""
    from .matroid import graphic_matroid, matroid_isomorphic
    return matroid_isomorphic(graphic_matroid(G1), graphic_matroid(G2))
