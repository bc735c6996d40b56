"""Exact quadratic forms, Jacobians, zonotopes and Dirichlet-Voronoi polytopes.

A quadratic form on R^g is a symmetric rational matrix Q with
Q(x) = x^T Q x.  Polytopes carry both a vertex list and a facet list, and
every constructor cross-checks the two.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Mapping, Sequence

from . import exact
from .graph import GraphError, WeightedGraph
from .homology import cycle_basis, is_cycle_chain
from .matroid import CapacityError

VORONOI_DIM_CAP = 3


class NotDefiniteError(ValueError):
    pass


# ---------------------------------------------------------------------------
# forms

@dataclass(frozen=True)
class QuadForm:
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(exact.to_fraction(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if not exact.is_symmetric(m):
            raise ValueError("quadratic form matrix must be square and symmetric")

    @classmethod
    def of(cls, rows) -> "QuadForm":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def g(self) -> int:
        return len(self.matrix)

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.matrix]

    def __call__(self, v: Sequence) -> Fraction:
        return self.bilinear(v, v)

    def bilinear(self, u: Sequence, v: Sequence) -> Fraction:
        return sum((u[i] * self.matrix[i][j] * v[j]
                    for i in range(self.g) for j in range(self.g) if u[i] and v[j]), Fraction(0))

    def transform(self, h: Sequence[Sequence]) -> "QuadForm":
        """h Q h^T."""
        return QuadForm.of(exact.matmul(exact.matmul(h, self.rows()), exact.transpose(h)))

    @property
    def rank(self) -> int:
        return exact.rank(self.rows())

    @property
    def det(self) -> Fraction:
        return exact.det(self.rows())

    def is_positive_semidefinite(self) -> bool:
        """All principal minors are non-negative."""
        rows = self.rows()
        for k in range(1, self.g + 1):
            for idx in combinations(range(self.g), k):
                if exact.det([[rows[i][j] for j in idx] for i in idx]) < 0:
                    return False
        return True

    def is_positive_definite(self) -> bool:
        rows = self.rows()
        return all(exact.det([r[:k] for r in rows[:k]]) > 0 for k in range(1, self.g + 1))

    def kernel_basis(self) -> list[list[Fraction]]:
        return exact.nullspace(self.rows())


def definite_reduction(Q: QuadForm) -> tuple[list[list[int]], QuadForm]:
    """(U, Q') with U unimodular and U Q U^T = diag(Q', 0), Q' non-degenerate.

    The trailing rows of U span the integer kernel lattice of Q.  In the
    notation Q = h diag(Q', 0) h^T one has h = U^{-1}.
    """
    ints, _ = exact.clear_denominators(Q.rows())
    u, h = exact.unimodular_row_reduce(ints)
    nonzero = [i for i, row in enumerate(h) if any(row)]
    zero = [i for i, row in enumerate(h) if not any(row)]
    u = [u[i] for i in nonzero + zero]
    reduced = Q.transform(u)
    r = len(nonzero)
    return u, QuadForm.of([row[:r] for row in reduced.rows()[:r]])


# ---------------------------------------------------------------------------
# Jacobians

def parse_lengths(G: WeightedGraph, lengths, allow_zero: bool = False) -> dict[str, Fraction]:
    """Normalize a length assignment (mapping by edge name, or a sequence)."""
    if isinstance(lengths, Mapping):
        out = {}
        for k, v in lengths.items():
            name = G.edge_names[G.edge_index(k)] if not isinstance(k, str) else k
            out[name] = exact.to_fraction(v)
    else:
        vals = list(lengths)
        if len(vals) != G.n_edges:
            raise GraphError(f"expected {G.n_edges} lengths, got {len(vals)}")
        out = {n: exact.to_fraction(v) for n, v in zip(G.edge_names, vals)}
    missing = set(G.edge_names) - set(out)
    if missing:
        raise GraphError(f"missing lengths for edges {sorted(missing)}")
    for n, v in out.items():
        if v < 0 or (v == 0 and not allow_zero):
            raise GraphError(f"length of {n} must be positive, got {v}")
    return {n: out[n] for n in G.edge_names}


def jacobian(G: WeightedGraph, lengths, basis: Sequence[Sequence[int]] | None = None) -> QuadForm:
    """Jacobian form in the given cycle basis, plus a zero block for weights.

    Entry (i, j) is sum_e B_i[e] B_j[e] l(e).
    """
    ls = parse_lengths(G, lengths)
    if basis is None:
        basis = cycle_basis(G)
    basis = [list(b) for b in basis]
    for b in basis:
        if not is_cycle_chain(G, b):
            raise GraphError("basis vector is not a cycle of the graph")
    lv = [ls[n] for n in G.edge_names]
    k = len(basis)
    size = k + G.total_weight
    m = [[Fraction(0)] * size for _ in range(size)]
    for i in range(k):
        for j in range(i, k):
            x = sum((bi * bj * l for bi, bj, l in zip(basis[i], basis[j], lv) if bi and bj), Fraction(0))
            m[i][j] = m[j][i] = x
    return QuadForm.of(m)


def symbolic_jacobian(G: WeightedGraph, basis: Sequence[Sequence[int]] | None = None
                      ) -> list[list[dict[str, int]]]:
    """Jacobian with lengths left symbolic: entries map edge name -> coefficient."""
    if basis is None:
        basis = cycle_basis(G)
    k = len(basis)
    size = k + G.total_weight
    m: list[list[dict[str, int]]] = [[{} for _ in range(size)] for _ in range(size)]
    for i in range(k):
        for j in range(k):
            for e, name in enumerate(G.edge_names):
                c = basis[i][e] * basis[j][e]
                if c:
                    m[i][j][name] = m[i][j].get(name, 0) + c
    return m


def format_linear(form: Mapping[str, int], symbols: Mapping[str, str] | None = None) -> str:
    """Render {"e1": 1, "e3": -1} as "l1-l3" (symbol names configurable)."""
    if not form:
        return "0"
    parts = []
    for name in sorted(form, key=lambda x: (len(x), x)):
        c = form[name]
        sym = symbols[name] if symbols else "l" + name.lstrip("e")
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign}{mag}{sym}")
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def q_from_tu(A: Sequence[Sequence], lengths: Sequence) -> QuadForm:
    """A diag(l) A^T.  Zero lengths are allowed and give boundary forms."""
    ls = [exact.to_fraction(x) for x in lengths]
    if A and len(A[0]) != len(ls):
        raise ValueError("one length per column required")
    if any(x < 0 for x in ls):
        raise ValueError("lengths must be non-negative")
    g = len(A)
    m = [[sum((A[i][k] * A[j][k] * ls[k] for k in range(len(ls))), Fraction(0))
          for j in range(g)] for i in range(g)]
    return QuadForm.of(m)


def in_principal_cone(Q: QuadForm) -> bool:
    """Open principal cone: negative off-diagonal entries, positive row sums."""
    m = Q.matrix
    g = Q.g
    if any(m[i][j] >= 0 for i in range(g) for j in range(g) if i != j):
        return False
    return all(sum(row) > 0 for row in m)


def principal_cone_position(Q: QuadForm) -> str:
    """"interior", "boundary" or "outside" of the closed principal cone."""
    if in_principal_cone(Q):
        return "interior"
    m = Q.matrix
    g = Q.g
    closed = all(m[i][j] <= 0 for i in range(g) for j in range(g) if i != j) and \
        all(sum(row) >= 0 for row in m)
    return "boundary" if closed else "outside"


# ---------------------------------------------------------------------------
# lattice point enumeration

def _ldl(Q: QuadForm) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2 for definite Q."""
    g = Q.g
    a = Q.rows()
    d = [Fraction(0)] * g
    mu = [[Fraction(0)] * g for _ in range(g)]
    for i in range(g):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise NotDefiniteError("form is not positive definite")
        for j in range(i + 1, g):
            mu[i][j] = a[i][j] / d[i]
        for j in range(i + 1, g):
            for k in range(i + 1, g):
                a[j][k] -= mu[i][j] * mu[i][k] * d[i]
    return d, mu


def lattice_points(Q: QuadForm, radius, center: Sequence | None = None,
                   strict: bool = False) -> list[tuple[int, ...]]:
    """All integer v with Q(v - center) <= radius (< when strict).

    Fincke-Pohst enumeration: float square roots only choose candidate
    ranges (widened by one); membership is decided exactly.
    """
    g = Q.g
    R = exact.to_fraction(radius)
    c = [exact.to_fraction(x) for x in center] if center is not None else [Fraction(0)] * g
    if g == 0:
        return [()] if (R > 0 or (R == 0 and not strict)) else []
    d, mu = _ldl(Q)
    out = []
    x = [0] * g

    def rec(i, rem):
        s = sum((mu[i][j] * (x[j] - c[j]) for j in range(i + 1, g)), Fraction(0))
        mid = c[i] - s
        if rem < 0:
            return
        r = math.sqrt(float(rem / d[i]))
        lo = math.floor(float(mid) - r) - 1
        hi = math.ceil(float(mid) + r) + 1
        for xi in range(lo, hi + 1):
            t = xi - mid
            left = rem - d[i] * t * t
            if left < 0 or (i == 0 and strict and left == 0):
                continue
            x[i] = xi
            if i == 0:
                out.append(tuple(x))
            else:
                rec(i - 1, left)
        x[i] = 0

    rec(g - 1, R)
    return sorted(out)


def theta_series(Q: QuadForm, bound) -> dict[Fraction, int]:
    """Number of lattice vectors per value Q(v) <= bound, definite Q."""
    return dict(sorted(Counter(Q(v) for v in lattice_points(Q, bound)).items()))


# ---------------------------------------------------------------------------
# polytopes

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class Polytope:
    vertices: tuple[Vector, ...]
    halfspaces: tuple[tuple[Vector, Fraction], ...] = field(default=())

    @property
    def dim_ambient(self) -> int:
        return len(self.vertices[0]) if self.vertices else 0

    def vertex_set(self) -> frozenset[Vector]:
        return frozenset(self.vertices)

    def same_as(self, other: "Polytope") -> bool:
        return self.vertex_set() == other.vertex_set()

    def affine_dimension(self) -> int:
        if not self.vertices:
            return -1
        base = self.vertices[0]
        return exact.rank([[a - b for a, b in zip(v, base)] for v in self.vertices[1:]]) \
            if len(self.vertices) > 1 else 0

    def contains(self, x: Sequence) -> bool:
        return all(exact.dot(n, x) <= b for n, b in self.halfspaces)

    def is_centrally_symmetric(self) -> bool:
        vs = self.vertex_set()
        return all(tuple(-a for a in v) in vs for v in vs)

    def certify(self) -> bool:
        """Vertices satisfy every halfspace; each halfspace supports a facet."""
        d = self.affine_dimension()
        for n, b in self.halfspaces:
            vals = [exact.dot(n, v) for v in self.vertices]
            if any(x > b for x in vals):
                return False
        return d >= 0


def _vec(v) -> Vector:
    return tuple(exact.to_fraction(x) for x in v)


def polytope_from_halfspaces(halfspaces: Sequence[tuple[Sequence, object]], dim: int) -> Polytope:
    """Vertex enumeration over all dim-subsets of a bounded full-dimensional system.

    Redundant inequalities (those not supporting a facet) are dropped.
    """
    hs = []
    seen = set()
    for n, b in halfspaces:
        key = (_vec(n), exact.to_fraction(b))
        if key not in seen and any(key[0]):
            seen.add(key)
            hs.append(key)
    verts = set()
    for idx in combinations(range(len(hs)), dim):
        a = [list(hs[i][0]) for i in idx]
        if exact.det(a) == 0:
            continue
        x = exact.solve(a, [hs[i][1] for i in idx])
        if all(exact.dot(n, x) <= b for n, b in hs):
            verts.add(tuple(x))
    verts = sorted(verts)
    facets = []
    for n, b in hs:
        tight = [v for v in verts if exact.dot(n, v) == b]
        if len(tight) >= dim and (dim == 1 or exact.rank(
                [[p - q for p, q in zip(v, tight[0])] for v in tight[1:]]) == dim - 1):
            facets.append((n, b))
    return Polytope(tuple(verts), tuple(sorted(facets)))


def _column_space_basis(A: Sequence[Sequence]) -> list[list[Fraction]]:
    """Rows spanning the column space of A (as vectors of R^g)."""
    rref, pivots = exact.row_echelon(exact.transpose(A))
    return rref[:len(pivots)]


def _nonzero_columns(A: Sequence[Sequence]) -> list[Vector]:
    cols = []
    seen = set()
    for col in exact.transpose(A):
        v = _vec(col)
        if not any(v):
            continue
        neg = tuple(-x for x in v)
        if v in seen or neg in seen:
            continue
        seen.add(v)
        cols.append(v)
    return cols


def zonotope(A: Sequence[Sequence]) -> Polytope:
    """{x in span : -1/2 <= v_i . x <= 1/2} over the nonzero columns v_i of A.

    When A has rank r < g the set is cut down to the column space of A, so
    its linear span has dimension r.
    """
    g = len(A)
    cols = _nonzero_columns(A)
    W = _column_space_basis(A)
    r = len(W)
    if r == 0:
        return Polytope((tuple([Fraction(0)] * g),), ())
    # coordinates y with x = W^T y
    hs = []
    for v in cols:
        n = [exact.dot(v, w) for w in W]
        hs.append((n, Fraction(1, 2)))
        hs.append(([-x for x in n], Fraction(1, 2)))
    inner = polytope_from_halfspaces(hs, r)
    Wt = exact.transpose(W)
    verts = sorted(tuple(exact.matvec(Wt, y)) for y in inner.vertices)
    halfspaces = []
    for v in cols:
        halfspaces.append((v, Fraction(1, 2)))
        halfspaces.append((tuple(-x for x in v), Fraction(1, 2)))
    for k in exact.nullspace(W):
        halfspaces.append((tuple(k), Fraction(0)))
        halfspaces.append((tuple(-x for x in k), Fraction(0)))
    return Polytope(tuple(verts), tuple(sorted(halfspaces)))


def minkowski_zonotope(A: Sequence[Sequence], lengths: Sequence | None = None) -> Polytope:
    """Sum of segments [-l_i v_i / 2, l_i v_i / 2] over the columns v_i (full rank A)."""
    g = len(A)
    cols = [_vec(c) for c in exact.transpose(A)]
    ls = [exact.to_fraction(x) for x in lengths] if lengths is not None else [Fraction(1)] * len(cols)
    gens = [tuple(l * x for x in c) for c, l in zip(cols, ls) if any(c)]
    if exact.rank(gens) != g:
        raise ValueError("Minkowski zonotope needs generators spanning R^g")
    hs = []
    for idx in combinations(range(len(gens)), g - 1):
        sub = [list(gens[i]) for i in idx]
        if g > 1 and exact.rank(sub) != g - 1:
            continue
        normal = exact.nullspace(sub)[0] if g > 1 else [Fraction(1)]
        rhs = sum((abs(exact.dot(normal, v)) for v in gens), Fraction(0)) / 2
        hs.append((normal, rhs))
        hs.append(([-x for x in normal], rhs))
    return polytope_from_halfspaces(hs, g)


# ---------------------------------------------------------------------------
# Dirichlet-Voronoi polytopes

def voronoi_relevant_vectors(Q: QuadForm) -> list[tuple[int, ...]]:
    """Strict Voronoi vectors: the unique (up to sign) shortest vector of a
    nonzero class of Z^g / 2Z^g."""
    g = Q.g
    reps = [c for c in product((0, 1), repeat=g) if any(c)]
    bound = max(Q(c) for c in reps)
    best: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    best_val: dict[tuple[int, ...], Fraction] = {}
    for v in lattice_points(Q, bound):
        cls = tuple(x % 2 for x in v)
        if not any(cls):
            continue
        val = Q(v)
        if cls not in best_val or val < best_val[cls]:
            best_val[cls], best[cls] = val, [v]
        elif val == best_val[cls]:
            best[cls].append(v)
    out = []
    for cls in reps:
        if len(best[cls]) == 2:
            out.extend(best[cls])
    return sorted(out)


def _voronoi_definite(Q: QuadForm) -> Polytope:
    if not Q.is_positive_definite():
        raise NotDefiniteError("Voronoi polytope needs a positive definite form or a reducer")
    g = Q.g
    if g == 0:
        return Polytope(((),), ())
    rows = Q.rows()
    hs = []
    for v in voronoi_relevant_vectors(Q):
        n = [2 * x for x in exact.matvec(rows, v)]
        hs.append((n, Q(v)))
    return polytope_from_halfspaces(hs, g)


def certify_voronoi(Q: QuadForm, P: Polytope) -> bool:
    """Closest-vector check: no lattice point is strictly closer to any
    vertex than the origin, and every vertex has at least g+1 equidistant
    lattice points (so it is a genuine vertex of the Voronoi cell)."""
    for x in P.vertices:
        r = Q(x)
        if lattice_points(Q, r, center=x, strict=True):
            return False
        if len(lattice_points(Q, r, center=x)) < Q.g + 1:
            return False
    return True


def voronoi_polytope(Q: QuadForm, reducer: Sequence[Sequence[int]] | None = None,
                     cap: int = VORONOI_DIM_CAP) -> Polytope:
    """{x : Q(x) <= Q(v - x) for all integer v}, computed exactly.

    A semi-definite Q needs ``reducer`` h in GL_g(Z) with
    Q = h diag(Q', 0) h^T; the result is h^{-T} (Vor(Q') x 0).
    """
    g = Q.g
    if reducer is None:
        if g > cap:
            raise CapacityError(f"Voronoi computation capped at g={cap}")
        P = _voronoi_definite(Q)
        if not certify_voronoi(Q, P):
            raise AssertionError("Voronoi certification failed")
        return P
    h = [list(map(int, r)) for r in reducer]
    if abs(exact.det(h)) != 1:
        raise ValueError("reducer must be unimodular")
    hinv = exact.inverse(h)
    block = QuadForm.of(exact.matmul(exact.matmul(hinv, Q.rows()), exact.transpose(hinv)))
    r = block.rank
    m = block.rows()
    if any(m[i][j] for i in range(g) for j in range(g) if i >= r or j >= r):
        raise ValueError("reducer does not split off the kernel of the form")
    inner_q = QuadForm.of([row[:r] for row in m[:r]])
    if r > cap:
        raise CapacityError(f"Voronoi computation capped at g={cap}")
    inner = _voronoi_definite(inner_q)
    if not certify_voronoi(inner_q, inner):
        raise AssertionError("Voronoi certification failed")
    hinv_t = exact.transpose(hinv)
    verts = sorted(tuple(exact.matvec(hinv_t, list(y) + [Fraction(0)] * (g - r))) for y in inner.vertices)
    # x = h^{-T} y  <=>  y = h^T x
    ht = exact.transpose(h)
    halfspaces = []
    for n, b in inner.halfspaces:
        normal = [sum(ht[k][i] * n[k] for k in range(r)) for i in range(g)]
        halfspaces.append((tuple(normal), b))
    for k in range(r, g):
        row = tuple(Fraction(ht[k][i]) for i in range(g))
        halfspaces.append((row, Fraction(0)))
        halfspaces.append((tuple(-x for x in row), Fraction(0)))
    return Polytope(tuple(verts), tuple(sorted(halfspaces)))


# ---------------------------------------------------------------------------
# arithmetic equivalence

@dataclass
class EquivalenceResult:
    status: str  # "equivalent", "inequivalent" or "undetermined"
    witness: list[list[int]] | None = None
    invariants: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.witness is not None


def parity_threshold(Q: QuadForm) -> Fraction:
    """Largest value among the minima of the nonzero classes of Z^g / 2Z^g.

    Unimodular maps permute these classes, so this number is an invariant of
    the GL_g(Z)-class of a definite form.
    """
    reps = [c for c in product((0, 1), repeat=Q.g) if any(c)]
    if not reps:
        return Fraction(0)
    best: dict[tuple[int, ...], Fraction] = {}
    for v in lattice_points(Q, max(Q(c) for c in reps)):
        cls = tuple(x % 2 for x in v)
        if any(cls):
            val = Q(v)
            if cls not in best or val < best[cls]:
                best[cls] = val
    return max(best.values())


def gl_invariants(Q: QuadForm, threshold=None) -> dict:
    """Rank, determinant and truncated theta series of the definite part.

    The default truncation is :func:`parity_threshold` of the definite part.
    """
    _, core = definite_reduction(Q)
    if threshold is None:
        threshold = parity_threshold(core)
    return {"rank": core.g, "det": core.det,
            "theta": theta_series(core, threshold) if core.g else {}}


def arith_equiv_bruteforce(Q1: QuadForm, Q2: QuadForm, bound: int) -> EquivalenceResult:
    """Search h with |h_ij| <= bound and h Q1 h^T = Q2, det h = +-1.

    Rows of h are chosen one at a time among box vectors v with
    Q1(v) = Q2_ii, matching cross terms as they go.  If the search fails,
    GL_g(Z)-invariants of the two forms are compared; a difference certifies
    inequivalence, otherwise the result is undetermined.
    """
    if Q1.g != Q2.g:
        raise ValueError("forms of different dimension")
    g = Q1.g
    box = [v for v in product(range(-bound, bound + 1), repeat=g)]
    by_value: dict[Fraction, list[tuple[int, ...]]] = {}
    for v in box:
        by_value.setdefault(Q1(v), []).append(v)
    target = Q2.matrix
    rows: list[tuple[int, ...]] = []

    def extend(i):
        if i == g:
            return abs(exact.det(rows)) == 1
        for v in by_value.get(target[i][i], []):
            if all(Q1.bilinear(rows[j], v) == target[j][i] for j in range(i)):
                rows.append(v)
                if exact.rank(rows) == i + 1 and extend(i + 1):
                    return True
                rows.pop()
        return False

    if extend(0):
        return EquivalenceResult("equivalent", [list(r) for r in rows])
    _, c1 = definite_reduction(Q1)
    _, c2 = definite_reduction(Q2)
    t = 2 * max(parity_threshold(c1), parity_threshold(c2))
    inv1, inv2 = gl_invariants(Q1, t), gl_invariants(Q2, t)
    diff = {k: (inv1[k], inv2[k]) for k in inv1 if inv1[k] != inv2[k]}
    if diff:
        return EquivalenceResult("inequivalent", None, diff)
    return EquivalenceResult("undetermined", None, {})
