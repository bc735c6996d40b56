"""Finite matroids stored by their bases.

A :class:`Matroid` has an ordered ground set of names; subsets are bitmasks
over that order.  Everything is exhaustive, so ground sets are expected to
stay in the tens of elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import exact
from .graph import WeightedGraph, _is_connected


class MatroidError(ValueError):
    pass


class CapacityError(RuntimeError):
    """Input exceeds the size the exhaustive algorithms are run on."""


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Matroid:
    ground: tuple[str, ...]
    bases: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "ground", tuple(self.ground))
        object.__setattr__(self, "bases", frozenset(self.bases))
        if len(set(self.ground)) != len(self.ground):
            raise MatroidError("ground set has repeated names")
        if not self.bases:
            raise MatroidError("a matroid needs at least one basis")
        full = (1 << len(self.ground)) - 1
        sizes = {_popcount(b) for b in self.bases}
        if len(sizes) != 1 or any(b & ~full for b in self.bases):
            raise MatroidError("bases must be equicardinal subsets of the ground set")

    @classmethod
    def from_named_bases(cls, ground: Sequence[str], bases: Iterable[Iterable[str]]) -> "Matroid":
        idx = {x: i for i, x in enumerate(ground)}
        try:
            masks = {sum(1 << idx[x] for x in B) for B in bases}
        except KeyError as exc:
            raise MatroidError(f"basis element {exc.args[0]!r} not in ground set") from None
        return cls(tuple(ground), frozenset(masks))

    @property
    def size(self) -> int:
        return len(self.ground)

    @cached_property
    def rank(self) -> int:
        return _popcount(next(iter(self.bases)))

    def mask(self, names: Iterable[str]) -> int:
        idx = {x: i for i, x in enumerate(self.ground)}
        return sum(1 << idx[x] for x in names)

    def names(self, mask: int) -> frozenset[str]:
        return frozenset(self.ground[i] for i in _bits(mask))

    def named_bases(self) -> list[list[str]]:
        return sorted(sorted(self.names(b), key=self.ground.index) for b in self.bases)

    def rank_of(self, mask: int) -> int:
        return max(_popcount(b & mask) for b in self.bases)

    def satisfies_exchange(self) -> bool:
        """Basis exchange axiom, checked exhaustively."""
        for b1 in self.bases:
            for b2 in self.bases:
                for x in _bits(b1 & ~b2):
                    if not any((b1 & ~(1 << x)) | (1 << y) in self.bases for y in _bits(b2 & ~b1)):
                        return False
        return True

    @cached_property
    def independent_sets(self) -> frozenset[int]:
        seen = set(self.bases)
        frontier = set(self.bases)
        while frontier:
            nxt = set()
            for s in frontier:
                for i in _bits(s):
                    t = s & ~(1 << i)
                    if t not in seen:
                        seen.add(t)
                        nxt.add(t)
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def circuits(self) -> frozenset[int]:
        indep = self.independent_sets
        out = set()
        # a circuit is C = I + x with I independent and every C - y independent
        for s in indep:
            for x in range(self.size):
                if s >> x & 1:
                    continue
                c = s | (1 << x)
                if c in indep or c in out:
                    continue
                if all((c & ~(1 << y)) in indep for y in _bits(c)):
                    out.add(c)
        return frozenset(out)

    def named_circuits(self) -> set[frozenset[str]]:
        return {self.names(c) for c in self.circuits}

    @cached_property
    def loops(self) -> list[int]:
        return [i for i in range(self.size) if (1 << i) in self.circuits]

    def is_simple(self) -> bool:
        return all(_popcount(c) > 2 for c in self.circuits)

    def dual(self) -> "Matroid":
        full = (1 << self.size) - 1
        return Matroid(self.ground, frozenset(full & ~b for b in self.bases))

    def delete(self, names: Iterable[str]) -> "Matroid":
        drop = self.mask(names)
        keep = [i for i in range(self.size) if not drop >> i & 1]
        restricted = {b & ~drop for b in self.bases}
        top = max(map(_popcount, restricted))
        return Matroid(tuple(self.ground[i] for i in keep),
                       frozenset(_compress(b, keep) for b in restricted if _popcount(b) == top))

    def contract(self, names: Iterable[str]) -> "Matroid":
        return self.dual().delete(names).dual()

    def relabel(self, mapping: Mapping[str, str]) -> "Matroid":
        return Matroid(tuple(mapping.get(x, x) for x in self.ground), self.bases)

    def simplification(self) -> tuple["Matroid", dict[str, frozenset[str]]]:
        """Remove loops and keep the first element of each parallel class.

        Returns the simple matroid and a map from each kept element to its
        parallel class.
        """
        loops = set(self.loops)
        parent = {i: i for i in range(self.size) if i not in loops}
        for c in self.circuits:
            if _popcount(c) == 2:
                a, b = _bits(c)
                parent[b] = min(parent[b], parent[a])
        changed = True
        while changed:
            changed = False
            for i in parent:
                if parent[parent[i]] != parent[i]:
                    parent[i] = parent[parent[i]]
                    changed = True
        classes: dict[int, set[int]] = {}
        for i, r in parent.items():
            classes.setdefault(r, set()).add(i)
        drop = [self.ground[i] for i in range(self.size)
                if i in loops or parent[i] != i]
        simple = self.delete(drop)
        return simple, {self.ground[r]: frozenset(self.ground[i] for i in cl)
                        for r, cl in classes.items()}

    def simple(self) -> "Matroid":
        return self.simplification()[0]


def _compress(mask: int, keep: Sequence[int]) -> int:
    return sum(1 << j for j, i in enumerate(keep) if mask >> i & 1)


def equal_on_common_ground(m1: Matroid, m2: Matroid) -> bool:
    """Literal equality: same ground names and the same named bases."""
    if set(m1.ground) != set(m2.ground):
        return False
    return {m1.names(b) for b in m1.bases} == {m2.names(b) for b in m2.bases}


# ---------------------------------------------------------------------------
# constructions

def graphic_matroid(G: WeightedGraph) -> Matroid:
    """Cycle matroid: bases are the spanning trees (loops are never in one)."""
    r = G.n_vertices - 1
    edges = G.edges
    bases = set()
    candidates = [i for i, (a, b) in enumerate(edges) if a != b]
    for T in combinations(candidates, r):
        if _is_connected(G.n_vertices, [edges[i] for i in T]):
            bases.add(sum(1 << i for i in T))
    return Matroid(G.edge_names, frozenset(bases))


def cographic_matroid(G: WeightedGraph) -> Matroid:
    return graphic_matroid(G).dual()


def vector_matroid(columns_matrix: Sequence[Sequence], ground: Sequence[str] | None = None) -> Matroid:
    """Column matroid of a rational matrix (rows x columns)."""
    m = len(columns_matrix[0]) if columns_matrix else 0
    ground = tuple(ground) if ground is not None else tuple(f"c{j + 1}" for j in range(m))
    rref, pivots = exact.row_echelon(columns_matrix)
    r = len(pivots)
    rows = rref[:r]
    bases = set()
    for S in combinations(range(m), r):
        if exact.det([[row[j] for j in S] for row in rows]) != 0:
            bases.add(sum(1 << j for j in S))
    return Matroid(ground, frozenset(bases))


def is_totally_unimodular(a: Sequence[Sequence]) -> bool:
    """Every square minor lies in {-1, 0, 1}; see :func:`tu_violation`."""
    return tu_violation(a) is None


# ---------------------------------------------------------------------------
# isomorphism

def _profiles(m: Matroid, colors) -> list:
    by_elem: list[list[int]] = [[] for _ in range(m.size)]
    for c in m.circuits:
        k = _popcount(c)
        for i in _bits(c):
            by_elem[i].append(k)
    return [(colors[i] if colors else None, tuple(sorted(v))) for i, v in enumerate(by_elem)]


def matroid_isomorphic(m1: Matroid, m2: Matroid,
                       colors1: Mapping[str, object] | None = None,
                       colors2: Mapping[str, object] | None = None) -> dict[str, str] | None:
    """A bijection of ground sets carrying circuits onto circuits, or None.

    With colors, the bijection must also preserve the color of every element.
    """
    if m1.size != m2.size or m1.rank != m2.rank or len(m1.circuits) != len(m2.circuits):
        return None
    c1 = [colors1[x] for x in m1.ground] if colors1 is not None else None
    c2 = [colors2[x] for x in m2.ground] if colors2 is not None else None
    p1, p2 = _profiles(m1, c1), _profiles(m2, c2)
    if sorted(p1, key=repr) != sorted(p2, key=repr):
        return None
    n = m1.size
    circ1, circ2 = m1.circuits, m2.circuits
    through1 = [[c for c in circ1 if c >> i & 1] for i in range(n)]
    through2 = [[c for c in circ2 if c >> i & 1] for i in range(n)]
    # most constrained elements first
    counts: dict = {}
    for p in p1:
        counts[repr(p)] = counts.get(repr(p), 0) + 1
    order = sorted(range(n), key=lambda i: (counts[repr(p1[i])], -len(through1[i]), i))
    fwd = [-1] * n
    bwd = [-1] * n

    def image(mask, table):
        out = 0
        for i in _bits(mask):
            if table[i] < 0:
                return None
            out |= 1 << table[i]
        return out

    def consistent(x, y):
        for c in through1[x]:
            im = image(c, fwd)
            if im is not None and im not in circ2:
                return False
        for c in through2[y]:
            im = image(c, bwd)
            if im is not None and im not in circ1:
                return False
        return True

    def extend(k):
        if k == n:
            return True
        x = order[k]
        for y in range(n):
            if bwd[y] >= 0 or p2[y] != p1[x]:
                continue
            fwd[x], bwd[y] = y, x
            if consistent(x, y) and extend(k + 1):
                return True
            fwd[x], bwd[y] = -1, -1
        return False

    if not extend(0):
        return None
    return {m1.ground[i]: m2.ground[fwd[i]] for i in range(n)}


# ---------------------------------------------------------------------------
# graphicness

GRAPHIC_RANK_CAP = 9


def _element_order(m: Matroid) -> list[int]:
    """Greedy order that closes circuits as early as possible."""
    order: list[int] = []
    chosen = 0
    left = set(range(m.size))
    while left:
        base = m.rank_of(chosen)
        best = min(left, key=lambda i: (m.rank_of(chosen | 1 << i) - base, i))
        order.append(best)
        chosen |= 1 << best
        left.discard(best)
    return order


def _paths(adj: dict[int, list[tuple[int, int]]], a: int, b: int) -> list[int]:
    """Edge masks of all simple a-b paths."""
    out = []

    def walk(v, seen, mask):
        if v == b:
            out.append(mask)
            return
        for u, e in adj.get(v, ()):
            if u not in seen:
                seen.add(u)
                walk(u, seen, mask | 1 << e)
                seen.discard(u)

    walk(a, {a}, 0)
    return out


def _realize_simple(m: Matroid) -> list[tuple[int, int]] | None:
    if m.size == 0:
        return []
    n_target = m.rank + 1
    order = _element_order(m)
    through = [[c for c in m.circuits if c >> i & 1] for i in range(m.size)]
    ends: dict[int, tuple[int, int]] = {}
    adj: dict[int, list[tuple[int, int]]] = {}

    def step(k, used, prefix):
        if k == m.size:
            return used == n_target
        if used + 2 * (m.size - k) < n_target:
            return False
        x = order[k]
        want = {c for c in through[x] if not c & ~(prefix | 1 << x)}
        pairs = [(a, b) for b in range(used) for a in range(b)]
        pairs += [(a, used) for a in range(used)]
        pairs.append((used, used + 1))
        for a, b in pairs:
            new_used = max(used, b + 1)
            if new_used > n_target:
                continue
            got = {p | 1 << x for p in _paths(adj, a, b)}
            if got != want:
                continue
            ends[x] = (a, b)
            adj.setdefault(a, []).append((b, x))
            adj.setdefault(b, []).append((a, x))
            if step(k + 1, new_used, prefix | 1 << x):
                return True
            adj[a].pop()
            adj[b].pop()
            del ends[x]
        return False

    if not step(0, 0, 0):
        return None
    return [ends[i] for i in range(m.size)]


def is_graphic(m: Matroid, rank_cap: int = GRAPHIC_RANK_CAP) -> WeightedGraph | None:
    """A graph whose cycle matroid is isomorphic to m, or None.

    Loops and parallel classes are stripped first.  The simple part is then
    realized edge by edge on rank+1 vertices, each placement checked against
    the circuits it closes.  Edge names of the returned graph are the ground
    names of m.
    """
    simple, classes = m.simplification()
    if simple.rank > rank_cap:
        raise CapacityError(f"graphicness search capped at rank {rank_cap}, got {simple.rank}")
    n = simple.rank + 1
    if simple.size > n * (n - 1) // 2:
        return None
    ends = _realize_simple(simple)
    if ends is None:
        return None
    names = list(simple.ground)
    edges = list(ends)
    for kept, cls in classes.items():
        pos = names.index(kept)
        for extra in sorted(cls - {kept}, key=m.ground.index):
            edges.append(edges[pos])
            names.append(extra)
    for x in m.ground:
        if x not in names:
            edges.append((0, 0))
            names.append(x)
    return WeightedGraph((0,) * n, tuple(edges), tuple(names))


def from_bases(ground: Sequence[str], bases: Iterable[Iterable[str]], check: bool = True) -> Matroid:
    """Validated construction; raises MatroidError naming a failing exchange."""
    m = Matroid.from_named_bases(ground, bases)
    if check:
        w = exchange_violation(m)
        if w is not None:
            raise MatroidError(f"basis exchange fails for {w}")
    return m


def exchange_violation(m: Matroid):
    for b1 in sorted(m.bases):
        for b2 in sorted(m.bases):
            for x in _bits(b1 & ~b2):
                if not any((b1 & ~(1 << x)) | (1 << y) in m.bases for y in _bits(b2 & ~b1)):
                    return sorted(m.names(b1)), sorted(m.names(b2)), m.ground[x]
    return None


def dual(m: Matroid) -> Matroid:
    return m.dual()


def delete(m: Matroid, names: Iterable[str]) -> Matroid:
    return m.delete(names)


def simplify(m: Matroid) -> Matroid:
    return m.simple()


def relabel(m: Matroid, mapping: Mapping[str, str]) -> Matroid:
    return m.relabel(mapping)


def tu_violation(a: Sequence[Sequence]) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Rows and columns of a square submatrix with determinant outside {-1,0,1}.

    Minors are built up one size at a time by Laplace expansion along the
    first row, reusing all minors of the previous size; the first bad one
    found is returned.
    """
    a = [[exact.to_fraction(x) for x in row] for row in a]
    if not a or not a[0]:
        return None
    n, m = len(a), len(a[0])
    for i in range(n):
        for j in range(m):
            if a[i][j] not in (-1, 0, 1):
                return (i,), (j,)
    prev = {((i,), (j,)): a[i][j] for i in range(n) for j in range(m)}
    for k in range(2, min(n, m) + 1):
        cur = {}
        for R in combinations(range(n), k):
            r0, rest = R[0], R[1:]
            for C in combinations(range(m), k):
                d = 0
                for pos, c in enumerate(C):
                    x = a[r0][c]
                    if x:
                        sub = prev[(rest, C[:pos] + C[pos + 1:])]
                        d += -x * sub if pos % 2 else x * sub
                if d not in (-1, 0, 1):
                    return R, C
                cur[(R, C)] = d
        prev = cur
    return None
