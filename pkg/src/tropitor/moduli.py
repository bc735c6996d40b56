"""Cell complexes of tropical curves and of cographic / graphic matroids.

Curve cells are stable weighted graphs up to isomorphism, one per
combinatorial type; the cone of a cell is the space of edge lengths.
Matroid cells are simple regular matroids up to isomorphism, with one
coordinate per ground element.  A cover (face, cell) records the integral
linear map taking coordinates of the cell to coordinates of the face.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterator

from .graph import (WeightedGraph, automorphism_edge_action, contract_edges, genus,
                    is_3_edge_connected, is_stable, isomorphism, vertex_automorphisms,
                    _is_connected)
from .matroid import (CapacityError, Matroid, cographic_matroid, graphic_matroid,
                      is_graphic, matroid_isomorphic, _popcount, _profiles)
from .parallel import pmap

GENUS_CAP = 4


@dataclass
class Cell:
    id: str
    kind: str  # "curve" or "matroid"
    dim: int
    payload: object  # WeightedGraph or Matroid
    key: str
    stabilizer_order: int | None = None

    @property
    def coordinates(self) -> tuple[str, ...]:
        if isinstance(self.payload, WeightedGraph):
            return self.payload.edge_names
        return self.payload.ground


@dataclass
class Cover:
    face: str
    cell: str
    matrix: list[list[Fraction]]  # rows: face coordinates, columns: cell coordinates
    contracted: tuple[str, ...] = ()


@dataclass
class CellComplex:
    kind: str
    genus: int
    cells: list[Cell]
    covers: list[Cover] = field(default_factory=list)

    def cell(self, cid: str) -> Cell:
        return self._index()[cid]

    def _index(self) -> dict[str, Cell]:
        return {c.id: c for c in self.cells}

    def cover_pairs(self) -> set[tuple[str, str]]:
        return {(c.face, c.cell) for c in self.covers}

    def faces_of(self, cid: str) -> list[str]:
        return sorted({c.face for c in self.covers if c.cell == cid})

    def cofaces_of(self, cid: str) -> list[str]:
        return sorted({c.cell for c in self.covers if c.face == cid})

    def maximal_cells(self) -> list[Cell]:
        covered = {c.face for c in self.covers}
        return [c for c in self.cells if c.id not in covered]

    def dimension_counts(self) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for c in self.cells:
            out[c.dim] += 1
        return dict(sorted(out.items(), reverse=True))

    def without_cover(self, face: str, cell: str) -> "CellComplex":
        return CellComplex(self.kind, self.genus, list(self.cells),
                           [c for c in self.covers if (c.face, c.cell) != (face, cell)])


def _edge_map_matrix(n_face: int, n_cell: int, image: dict[int, int]) -> list[list[Fraction]]:
    m = [[Fraction(0)] * n_cell for _ in range(n_face)]
    for i, j in image.items():
        m[j][i] = Fraction(1)
    return m


def _assign_ids(cells: list[Cell], prefix: str) -> None:
    cells.sort(key=lambda c: (-c.dim, c.key))
    for i, c in enumerate(cells):
        c.id = f"{prefix}{i}"


# ---------------------------------------------------------------------------
# generation of graphs

def cubic_graphs(g: int) -> list[WeightedGraph]:
    """Connected 3-regular multigraphs (loops allowed) of genus g >= 2."""
    n = 2 * g - 2
    found: dict[str, WeightedGraph] = {}
    deg = [0] * n
    edges: list[tuple[int, int]] = []

    def rec():
        v = next((i for i in range(n) if deg[i] < 3), None)
        if v is None:
            if _is_connected(n, edges):
                G = WeightedGraph((0,) * n, tuple(edges))
                found.setdefault(G.canonical_form, G)
            return
        lo = edges[-1] if edges and edges[-1][0] == v else (v, v)
        for u in range(lo[1], n):
            need = 2 if u == v else 1
            if deg[v] + need > 3 or (u != v and deg[u] + 1 > 3):
                continue
            deg[v] += need if u == v else 1
            if u != v:
                deg[u] += 1
            edges.append((v, u))
            rec()
            edges.pop()
            deg[v] -= need if u == v else 1
            if u != v:
                deg[u] -= 1

    rec()
    return [found[k] for k in sorted(found)]


def _weight_vectors(n: int, total: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing weight vectors of length n summing to total."""
    def rec(prefix, left, cap):
        if len(prefix) == n:
            if left == 0:
                yield tuple(prefix)
            return
        for w in range(min(cap, left), -1, -1):
            yield from rec(prefix + [w], left - w, w)
    yield from rec([], total, total)


def stable_graphs_direct(g: int, weight_zero_only: bool = False) -> list[WeightedGraph]:
    """All stable weighted graphs of genus g, generated without contraction.

    Vertices are ordered by weight (non-increasing) and, within a weight
    block, by degree (non-increasing); edge multiplicities are then chosen
    pair by pair, each vertex degree being final once its row is done.
    """
    found: dict[str, WeightedGraph] = {}
    max_n = max(1, 2 * g - 2)
    for n in range(1, max_n + 1):
        for total in range(0, g + 1):
            if weight_zero_only and total:
                break
            m = g - 1 + n - total
            if m < 0:
                continue
            for w in _weight_vectors(n, total):
                for G in _fill_edges(n, w, m):
                    if genus(G) == g and is_stable(G):
                        found.setdefault(G.canonical_form, G)
    return [found[k] for k in sorted(found)]


def _fill_edges(n: int, w: tuple[int, ...], m: int) -> Iterator[WeightedGraph]:
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    deg = [0] * n
    chosen: list[tuple[int, int]] = []

    def row_done(i):
        if w[i] == 0 and deg[i] < 3:
            return False
        if i > 0 and w[i] == w[i - 1] and deg[i] > deg[i - 1]:
            return False
        return True

    def rec(k, left):
        if k == len(pairs):
            if left == 0 and _is_connected(n, chosen):
                yield WeightedGraph(w, tuple(chosen))
            return
        i, j = pairs[k]
        for mult in range(left, -1, -1):
            add = 2 * mult if i == j else mult
            deg[i] += add if i == j else mult
            if i != j:
                deg[j] += mult
            chosen.extend([(i, j)] * mult)
            ok = True
            if j == n - 1 and not row_done(i):
                ok = False
            if ok:
                yield from rec(k + 1, left - mult)
            del chosen[len(chosen) - mult:]
            deg[i] -= add if i == j else mult
            if i != j:
                deg[j] -= mult

    yield from rec(0, m)


# ---------------------------------------------------------------------------
# curve complex

def _specializations_of(G: WeightedGraph) -> list[tuple[int, WeightedGraph]]:
    out = []
    for e in range(G.n_edges):
        H = contract_edges(G, [e])
        if is_stable(H):
            out.append((e, H))
    return out


def enumerate_tropical_cells(g: int, cap: int = GENUS_CAP) -> CellComplex:
    """Stable graphs of genus g: cubic graphs closed under contraction."""
    if g < 2:
        raise ValueError("genus must be at least 2")
    if g > cap:
        raise CapacityError(f"curve complex enumeration capped at genus {cap}")
    reps: dict[str, WeightedGraph] = {}
    raw_covers: list[tuple[str, str, WeightedGraph, int, WeightedGraph]] = []
    layer = cubic_graphs(g)
    for G in layer:
        reps[G.canonical_form] = G
    while layer:
        results = pmap(_specializations_of, layer)
        nxt: dict[str, WeightedGraph] = {}
        for G, specs in zip(layer, results):
            seen_faces = set()
            for e, H in specs:
                k = H.canonical_form
                if k not in reps:
                    reps[k] = H
                    nxt[k] = H
                if k not in seen_faces:
                    seen_faces.add(k)
                    raw_covers.append((k, G.canonical_form, G, e, H))
        layer = [nxt[k] for k in sorted(nxt)]
    cells = []
    for k, G in reps.items():
        cells.append(Cell("", "curve", G.n_edges, G, k, len(automorphism_edge_action(G))))
    _assign_ids(cells, "c")
    by_key = {c.key: c for c in cells}
    covers = []
    for fk, ck, G, e, H in raw_covers:
        face = by_key[fk]
        covers.append(Cover(face.id, by_key[ck].id,
                            _contraction_map(G, [e], H, face.payload), (G.edge_names[e],)))
    covers.sort(key=lambda c: (c.cell, c.face))
    return CellComplex("curves", g, cells, covers)


def _contraction_map(G, contracted, H, rep) -> list[list[Fraction]]:
    """Coordinates of G -> coordinates of rep, through G/contracted = H ~ rep."""
    vmap_emap = isomorphism(H, rep)
    assert vmap_emap is not None
    _, emap = vmap_emap
    name_to_g = {n: i for i, n in enumerate(G.edge_names)}
    image = {name_to_g[H.edge_names[j]]: emap[j] for j in range(H.n_edges)}
    return _edge_map_matrix(rep.n_edges, G.n_edges, image)


# ---------------------------------------------------------------------------
# checks on the curve complex

def codim1_type(G: WeightedGraph) -> str | None:
    """"a": one 4-valent vertex, others 3-valent, weights zero.
    "b": one 1-valent weight-1 vertex, others 3-valent weight-0."""
    val = G.valences()
    pairs = sorted(zip(G.weights, val))
    if all(w == 0 for w in G.weights) and sorted(val) == [3] * (len(val) - 1) + [4]:
        return "a"
    if pairs.count((1, 1)) == 1 and all(p == (0, 3) for p in pairs if p != (1, 1)):
        return "b"
    return None


@dataclass
class Report:
    ok: bool
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def fail(self, msg: str) -> None:
        self.ok = False
        self.failures.append(msg)


def maximal_connectivity(X: CellComplex, top: int) -> tuple[bool, list[list[str]]]:
    """Components of the graph on top-dimensional cells sharing a codim-1 face."""
    maxi = [c.id for c in X.cells if c.dim == top]
    parent = {m: m for m in maxi}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    cofaces = defaultdict(set)
    for cv in X.covers:
        if cv.cell in parent:
            cofaces[cv.face].add(cv.cell)
    for ups in cofaces.values():
        ups = sorted(ups)
        for u in ups[1:]:
            a, b = find(ups[0]), find(u)
            if a != b:
                parent[max(a, b)] = min(a, b)
    comps = defaultdict(list)
    for m in maxi:
        comps[find(m)].append(m)
    return len(comps) <= 1, sorted(comps.values())


def verify_purity_and_codim1(X: CellComplex) -> Report:
    g = X.genus
    top = 3 * g - 3
    rep = Report(True)
    ids = X._index()
    for c in X.maximal_cells():
        G = c.payload
        if c.dim != top or any(G.weights) or any(v != 3 for v in G.valences()):
            rep.fail(f"maximal cell {c.id} is not a cubic weight-zero graph of dimension {top}")
    for c in X.cells:
        G = c.payload
        cubic = not any(G.weights) and all(v == 3 for v in G.valences())
        if cubic and c.dim != top:
            rep.fail(f"cubic cell {c.id} has dimension {c.dim}")
    codim1 = {}
    for c in X.cells:
        if c.dim != top - 1:
            continue
        t = codim1_type(c.payload)
        ups = [u for u in X.cofaces_of(c.id) if ids[u].dim == top]
        codim1[c.id] = {"type": t, "covered_by": ups}
        if t is None:
            rep.fail(f"codim-1 cell {c.id} is of neither type")
        elif t == "b" and len(ups) != 1:
            rep.fail(f"type (b) cell {c.id} covered by {len(ups)} maximal cells")
        elif t == "a" and not 1 <= len(ups) <= 3:
            rep.fail(f"type (a) cell {c.id} covered by {len(ups)} maximal cells")
    connected, comps = maximal_connectivity(X, top)
    if not connected:
        rep.fail(f"not connected through codimension one: components {comps}")
    rep.details = {"codim1": codim1, "components": comps}
    return rep


def _is_integral(m) -> bool:
    return all(Fraction(x).denominator == 1 for row in m for x in row)


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def validate_stacky_axioms(X: CellComplex) -> Report:
    """Disjoint cells, integral coordinate-projection face maps, and
    coherence of composed maps along every 2-chain (up to automorphisms)."""
    rep = Report(True)
    keys = [c.key for c in X.cells]
    if len(set(keys)) != len(keys):
        rep.fail("two cells share a canonical key")
    ids = X._index()
    by_pair = {}
    for cv in X.covers:
        face, cell = ids[cv.face], ids[cv.cell]
        m = cv.matrix
        if len(m) != face.dim or any(len(r) != cell.dim for r in m):
            rep.fail(f"face map {cv.cell}->{cv.face} has wrong shape")
            continue
        if not _is_integral(m):
            rep.fail(f"face map {cv.cell}->{cv.face} is not integral")
            continue
        cols = [sum(m[i][j] for i in range(len(m))) for j in range(cell.dim)]
        rows_ok = all(sorted(r) == [0] * (cell.dim - 1) + [1] for r in m)
        if not rows_ok or any(c not in (0, 1) for c in cols):
            rep.fail(f"face map {cv.cell}->{cv.face} is not a coordinate projection")
        by_pair[(cv.face, cv.cell)] = cv
    # 2-chains C < B < A
    ups = defaultdict(list)
    for (f, c) in by_pair:
        ups[f].append(c)
    checked = 0
    for (b, a), top in by_pair.items():
        for c in [f for (f, cc) in by_pair if cc == b]:
            comp = _matmul(by_pair[(c, b)].matrix, top.matrix)
            if not _is_integral(comp):
                rep.fail(f"composite {a}->{b}->{c} not integral")
                continue
            if not _coherent(ids[a], ids[c], comp, X.kind):
                rep.fail(f"composite {a}->{b}->{c} is not a direct face map")
            checked += 1
    rep.details = {"covers": len(by_pair), "two_chains": checked}
    return rep


def _coherent(big: Cell, small: Cell, comp, kind: str) -> bool:
    """The composite must be the projection onto the surviving coordinates
    followed by an identification with the face (checked by rebuilding it)."""
    dropped = [j for j in range(big.dim) if not any(row[j] for row in comp)]
    image = {j: i for i, row in enumerate(comp) for j in range(big.dim) if row[j]}
    if kind == "curves":
        G = big.payload
        H = contract_edges(G, dropped)
        if H.canonical_form != small.key:
            return False
        # the map restricted to survivors must be an isomorphism H -> rep
        names = {n: i for i, n in enumerate(G.edge_names)}
        rep_g = small.payload
        emap = [image[names[n]] for n in H.edge_names]
        return _is_edge_isomorphism(H, rep_g, emap)
    M = big.payload
    N = M.delete([M.ground[j] for j in dropped])
    mapping = {M.ground[j]: small.payload.ground[i] for j, i in image.items()}
    return {frozenset(mapping[x] for x in c) for c in N.named_circuits()} == \
        small.payload.named_circuits()


def _is_edge_isomorphism(H: WeightedGraph, R: WeightedGraph, emap) -> bool:
    """Does this edge bijection come from a weighted graph isomorphism?"""
    iso = isomorphism(H, R)
    if iso is None:
        return False
    # candidate vertex maps: iso composed with automorphisms of R
    vmap0, _ = iso
    for psi in vertex_automorphisms(R):
        vmap = [psi[vmap0[v]] for v in range(H.n_vertices)]
        if all(sorted((vmap[a], vmap[b])) == sorted(R.edges[emap[i]])
               for i, (a, b) in enumerate(H.edges)):
            return True
    return False


# ---------------------------------------------------------------------------
# matroid complexes

def matroid_key(m: Matroid) -> tuple:
    """Isomorphism invariant used to bucket matroids before a full search."""
    return (m.size, m.rank, tuple(sorted(_popcount(c) for c in m.circuits)),
            tuple(sorted(map(repr, _profiles(m, None)))))


class MatroidClasses:
    """Incremental dedup of matroids up to isomorphism."""

    def __init__(self):
        self.buckets: dict[tuple, list[Matroid]] = defaultdict(list)

    def find(self, m: Matroid) -> Matroid | None:
        for r in self.buckets.get(matroid_key(m), []):
            if matroid_isomorphic(m, r) is not None:
                return r
        return None

    def add(self, m: Matroid) -> tuple[Matroid, bool]:
        r = self.find(m)
        if r is not None:
            return r, False
        self.buckets[matroid_key(m)].append(m)
        return m, True

    def all(self) -> list[Matroid]:
        return [m for k in sorted(self.buckets, key=repr) for m in self.buckets[k]]


def _matroid_complex(kind: str, g: int, seeds: list[Matroid]) -> CellComplex:
    classes = MatroidClasses()
    for m in seeds:
        classes.add(m)
    # close under single deletions (simple matroids stay simple)
    queue = deque(classes.all())
    while queue:
        m = queue.popleft()
        for x in m.ground:
            r, new = classes.add(m.delete([x]))
            if new:
                queue.append(r)
    mats = classes.all()
    cells = [Cell("", "matroid", m.size, m, _token(i, m)) for i, m in enumerate(mats)]
    _assign_ids(cells, "m")
    lookup = {id(c.payload): c for c in cells}
    covers = []
    for c in cells:
        M = c.payload
        seen = set()
        for x in M.ground:
            N = M.delete([x])
            r = classes.find(N)
            face = lookup[id(r)]
            if face.id in seen:
                continue
            seen.add(face.id)
            iso = matroid_isomorphic(N, r)
            image = {M.ground.index(a): r.ground.index(b) for a, b in iso.items()}
            covers.append(Cover(face.id, c.id, _edge_map_matrix(r.size, M.size, image), (x,)))
    covers.sort(key=lambda cv: (cv.cell, cv.face))
    return CellComplex(kind, g, cells, covers)


def _token(i: int, m: Matroid) -> str:
    size, rank, circ, _ = matroid_key(m)
    return f"n={size};r={rank};c={','.join(map(str, circ))};#{i}"


def three_edge_connected_graphs(max_genus: int) -> list[WeightedGraph]:
    """Weight-zero 3-edge-connected graphs of genus 0..max_genus."""
    out = [WeightedGraph((0,), ()), WeightedGraph((0,), ((0, 0),))]
    for h in range(2, max_genus + 1):
        out.extend(G for G in stable_graphs_direct(h, weight_zero_only=True) if is_3_edge_connected(G))
    return out


def enumerate_cographic_cells(g: int, cap: int = GENUS_CAP) -> CellComplex:
    """Simple cographic matroids M*(G), G 3-edge-connected of genus <= g."""
    if g > cap:
        raise CapacityError(f"cographic complex capped at genus {cap}")
    seeds = [cographic_matroid(G) for G in three_edge_connected_graphs(g)]
    X = _matroid_complex("cographic", g, seeds)
    _check_closed(X, seeds)
    return X


def _check_closed(X: CellComplex, seeds: list[Matroid]) -> None:
    """Deletions of cographic seeds are cographic seeds again (sanity)."""
    classes = MatroidClasses()
    for m in seeds:
        classes.add(m)
    for c in X.cells:
        if classes.find(c.payload) is None:
            raise AssertionError(f"cell {c.id} is not among the generating matroids")


def connected_simple_graphs(n: int) -> list[WeightedGraph]:
    pairs = list(combinations(range(n), 2))
    found = {}
    for k in range(n - 1, len(pairs) + 1):
        for es in combinations(pairs, k):
            if _is_connected(n, es):
                G = WeightedGraph((0,) * n, es)
                found.setdefault(G.canonical_form, G)
    return [found[k] for k in sorted(found)]


def enumerate_graphic_cells(g: int, cap: int = GENUS_CAP) -> CellComplex:
    """Graphic matroids M(G), G simple with at most g+1 vertices."""
    if g > cap:
        raise CapacityError(f"graphic complex capped at genus {cap}")
    seeds = []
    for n in range(1, g + 2):
        seeds.extend(graphic_matroid(G) for G in connected_simple_graphs(n))
    X = _matroid_complex("graphic", g, seeds)
    _check_closed(X, seeds)
    return X


def principal_deletion_closure(g: int) -> list[Matroid]:
    """Classes reachable from M(K_{g+1}) by deletions."""
    from .homology import complete_graph
    classes = MatroidClasses()
    start, _ = classes.add(graphic_matroid(complete_graph(g + 1)))
    queue = deque([start])
    while queue:
        m = queue.popleft()
        for x in m.ground:
            r, new = classes.add(m.delete([x]))
            if new:
                queue.append(r)
    return classes.all()


def enumerate_gr_cogr_cells(g: int, cap: int = GENUS_CAP) -> CellComplex:
    """Cells of the cographic complex whose matroid is also graphic."""
    X = enumerate_cographic_cells(g, cap)
    keep = {c.id for c in X.cells if is_graphic(c.payload) is not None}
    cells = [Cell(c.id, c.kind, c.dim, c.payload, c.key) for c in X.cells if c.id in keep]
    covers = [cv for cv in X.covers if cv.face in keep and cv.cell in keep]
    return CellComplex("gr-cogr", g, cells, covers)


def same_classes(a: list[Matroid], b: list[Matroid]) -> bool:
    """Equal sets of isomorphism classes."""
    ca, cb = MatroidClasses(), MatroidClasses()
    for m in a:
        ca.add(m)
    for m in b:
        cb.add(m)
    if len(ca.all()) != len(cb.all()):
        return False
    return all(cb.find(m) is not None for m in ca.all())


def enumerate_complex(kind: str, g: int, cap: int = GENUS_CAP) -> CellComplex:
    makers: dict[str, Callable[[int, int], CellComplex]] = {
        "curves": enumerate_tropical_cells,
        "cographic": enumerate_cographic_cells,
        "graphic": enumerate_graphic_cells,
        "gr-cogr": enumerate_gr_cogr_cells,
    }
    if kind not in makers:
        raise ValueError(f"unknown complex kind {kind!r}")
    return makers[kind](g, cap)
