"""Invariant suites behind ``tropitor verify``.

Each suite returns a list of :class:`Check` records; nothing here raises on a
failed property, so a report always lists every check that ran.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import fixtures as fx
from .graph import (bonds, canonical_form, connectivity_stats, cycles, genus, is_3_edge_connected,
                    is_planar, isomorphism, three_edge_connectivization, vertex_automorphisms)
from .homology import cographic_matrix, complete_graph_cut_matrix, cycle_basis, graphic_matrix
from .matroid import (cographic_matroid, graphic_matroid, is_graphic, is_totally_unimodular,
                      matroid_isomorphic)
from .moduli import (MatroidClasses, enumerate_cographic_cells, enumerate_gr_cogr_cells,
                     enumerate_tropical_cells, same_classes, validate_stacky_axioms,
                     verify_purity_and_codim1)
from .quadform import (QuadForm, arith_equiv_bruteforce, in_principal_cone, jacobian, minkowski_zonotope,
                       principal_cone_position, q_from_tu, voronoi_polytope, zonotope)
from .torelli import (TropicalCurve, planar_image_test, reconstruct_lengths, same_jacobian,
                      schottky_membership, torelli_cell_image, torelli_point)

SUITES = ("graph", "matroid", "quadform", "moduli", "torelli")


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0


@dataclass
class SuiteRun:
    checks: list[Check] = field(default_factory=list)

    def add(self, suite: str, name: str, fn: Callable[[], tuple[bool, str] | bool]) -> None:
        t = time.perf_counter()
        try:
            res = fn()
            ok, detail = res if isinstance(res, tuple) else (bool(res), "")
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        self.checks.append(Check(suite, name, bool(ok), detail, time.perf_counter() - t))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


# ---------------------------------------------------------------------------
# shared helpers

def figure_one_matches(X) -> tuple[bool, str]:
    """Compare the genus-2 specialization poset with the named fixture arrows."""
    names = {}
    for name, make in fx.GENUS2_FIGURE.items():
        key = canonical_form(make())
        hit = [c.id for c in X.cells if canonical_form(c.payload) == key]
        if len(hit) != 1:
            return False, f"{name} matched {len(hit)} cells"
        names[hit[0]] = name
    got = {(names[c], names[f]) for f, c in X.cover_pairs()}
    want = set(fx.GENUS2_ARROWS)
    if got != want:
        return False, f"extra {sorted(got - want)} missing {sorted(want - got)}"
    return True, f"{len(got)} arrows"


def rational_lengths(rng: random.Random, n: int) -> list[Fraction]:
    return [Fraction(rng.randint(1, 20), rng.randint(1, 6)) for _ in range(n)]


def vor_equals_zonotope(A, lengths) -> bool:
    return voronoi_polytope(q_from_tu(A, lengths)).same_as(zonotope(A))


def vor_scaled_is_minkowski_sum(A, lengths) -> bool:
    """Q maps Vor(Q) onto the sum of segments l_i [-v_i/2, v_i/2]."""
    Q = q_from_tu(A, lengths)
    P = voronoi_polytope(Q)
    image = {tuple(sum(Q.matrix[i][j] * v[j] for j in range(Q.g)) for i in range(Q.g)) for v in P.vertices}
    return image == minkowski_zonotope(A, lengths).vertex_set()


def zonotope_cases() -> dict[str, list[list[int]]]:
    return {
        "A*(theta)": cographic_matrix(fx.theta()),
        "A(K3)": complete_graph_cut_matrix(2),
        "A(K4)": complete_graph_cut_matrix(3),
        "A*(K4)": cographic_matrix(fx.k(4)),
    }


# ---------------------------------------------------------------------------
# suites

def graph_suite(run: SuiteRun, gcap: int, seed: int) -> None:
    s = "graph"
    P = fx.peterson()
    run.add(s, "petersen genus 6", lambda: genus(P) == 6)
    run.add(s, "petersen connectivity (3,3,5)", lambda: connectivity_stats(P) == (3, 3, 5))
    run.add(s, "petersen 120 automorphisms", lambda: len(vertex_automorphisms(P)) == 120)
    run.add(s, "petersen cycles 57 bonds 191", lambda: (len(cycles(P)), len(bonds(P))) == (57, 191))
    run.add(s, "planarity of K4, K5, K33, petersen",
            lambda: (is_planar(fx.k(4)), is_planar(fx.k(5)), is_planar(fx.k33()), is_planar(P))
            == (True, False, False, False))

    def relabel_invariance():
        rng = random.Random(seed)
        for G in (P, fx.prism(), fx.gamma1(), fx.dumbbell()):
            perm = list(range(G.n_vertices))
            rng.shuffle(perm)
            H = G.relabeled(perm)
            if canonical_form(H) != canonical_form(G) or isomorphism(G, H) is None:
                return False
        return True
    run.add(s, "canonical form invariant under relabeling", relabel_invariance)

    def conn_everywhere():
        for g in range(2, gcap + 1):
            for c in enumerate_tropical_cells(g).cells:
                if not is_3_edge_connected(three_edge_connectivization(c.payload)):
                    return False, f"{c.id} at genus {g}"
        return True
    run.add(s, "3-edge-connectivization is 3-edge-connected", conn_everywhere)


def matroid_suite(run: SuiteRun, gcap: int, seed: int) -> None:
    s = "matroid"
    g1, g2 = fx.gamma1(), fx.gamma2()
    run.add(s, "graphic of gamma1 = cographic of gamma2 under e_i -> f_i",
            lambda: sorted(map(sorted, graphic_matroid(g1).named_bases()))
            == sorted(map(sorted, cographic_matroid(g2).relabel(
                {f"f{i}": f"e{i}" for i in range(1, 6)}).named_bases())))
    for G, name in ((fx.k(4), "K4"), (fx.prism(), "prism"), (fx.k33(), "K33")):
        run.add(s, f"exchange axiom and double dual on {name}",
                lambda G=G: (graphic_matroid(G).satisfies_exchange()
                             and graphic_matroid(G).dual().dual() == graphic_matroid(G)))
    run.add(s, "TU: A(K4) and A*(K4)",
            lambda: is_totally_unimodular(complete_graph_cut_matrix(3))
            and is_totally_unimodular(cographic_matrix(fx.k(4))))
    run.add(s, "TU: cycle matrix of petersen", lambda: is_totally_unimodular(cographic_matrix(fx.peterson())))
    run.add(s, "non-TU matrix rejected", lambda: not is_totally_unimodular([[1, 1], [-1, 1]]))
    run.add(s, "M*(K5) and M*(K33) are not graphic",
            lambda: is_graphic(cographic_matroid(fx.k(5))) is None
            and is_graphic(cographic_matroid(fx.k33())) is None)
    run.add(s, "M*(K4) graphic", lambda: is_graphic(cographic_matroid(fx.k(4))) is not None)
    run.add(s, "graphic realization round trip on prism",
            lambda: matroid_isomorphic(graphic_matroid(is_graphic(graphic_matroid(fx.prism()))),
                                       graphic_matroid(fx.prism())) is not None)


def quadform_suite(run: SuiteRun, gcap: int, seed: int) -> None:
    s = "quadform"
    run.add(s, "theta(1,1,1) jacobian class",
            lambda: arith_equiv_bruteforce(jacobian(fx.theta(), [1, 1, 1]),
                                           QuadForm.of([[2, -1], [-1, 2]]), 2).status == "equivalent")
    run.add(s, "weight-only curve has zero form",
            lambda: jacobian(fx.single_vertex(3), {}).rows() == [[0] * 3 for _ in range(3)])
    rng = random.Random(seed)
    for name, A in zonotope_cases().items():
        ls = [rational_lengths(rng, len(A[0])) for _ in range(5)]
        run.add(s, f"Vor(Q_A,l) = Z_A for {name}", lambda A=A, ls=ls: all(vor_equals_zonotope(A, l) for l in ls))
        run.add(s, f"Q Vor(Q_A,l) = sum l_i[-v_i/2, v_i/2] for {name}",
                lambda A=A, ls=ls: all(vor_scaled_is_minkowski_sum(A, l) for l in ls))
    run.add(s, "hexagon and permutahedron vertex counts",
            lambda: (len(voronoi_polytope(q_from_tu(complete_graph_cut_matrix(2), [1, 2, 3])).vertices),
                     len(voronoi_polytope(q_from_tu(complete_graph_cut_matrix(3), [1, 2, 3, 4, 5, 6])).vertices))
            == (6, 24))

    def principal():
        for g in (2, 3):
            A = complete_graph_cut_matrix(g)
            for _ in range(20):
                l = rational_lengths(rng, len(A[0]))
                if not in_principal_cone(q_from_tu(A, l)):
                    return False
                l[rng.randrange(len(l))] = Fraction(0)
                if principal_cone_position(q_from_tu(A, l)) != "boundary":
                    return False
        return True
    run.add(s, "principal cone interior and boundary", principal)


def moduli_suite(run: SuiteRun, gcap: int, seed: int) -> None:
    s = "moduli"
    counts = {2: 7, 3: 42, 4: 379}
    for g in range(2, gcap + 1):
        X = enumerate_tropical_cells(g)
        run.add(s, f"genus {g} curve cells = {counts.get(g)}", lambda X=X, g=g: len(X.cells) == counts.get(g))
        run.add(s, f"genus {g} purity and codim-1 types",
                lambda X=X: (lambda r: (r.ok, "; ".join(r.failures[:3])))(verify_purity_and_codim1(X)))
        if g <= 3:
            run.add(s, f"genus {g} stacky face maps",
                    lambda X=X: (lambda r: (r.ok, "; ".join(r.failures[:3])))(validate_stacky_axioms(X)))
    if gcap >= 2:
        run.add(s, "genus 2 poset matches the fixture arrows",
                lambda: figure_one_matches(enumerate_tropical_cells(2)))
    if gcap >= 4:
        run.add(s, "genus 4 cographic: 2 maximal cells of dim 9",
                lambda: sorted(c.dim for c in enumerate_cographic_cells(4).maximal_cells()) == [9, 9])
        run.add(s, "genus 4 graphic-and-cographic: 1 maximal cell of dim 9",
                lambda: [c.dim for c in enumerate_gr_cogr_cells(4).maximal_cells()] == [9])


def torelli_suite(run: SuiteRun, gcap: int, seed: int) -> None:
    s = "torelli"
    db = fx.dumbbell()
    run.add(s, "bridge length is invisible",
            lambda: same_jacobian(TropicalCurve(db, [1, 2, 5]), TropicalCurve(db, [1, 2, 7])).equal)
    run.add(s, "theta vs dumbbell differ",
            lambda: not same_jacobian(TropicalCurve(fx.theta(), [1, 1, 1]), TropicalCurve(db, [1, 1, 1])).equal)
    for g in range(2, min(gcap, 3) + 1):
        def image(g=g):
            classes = MatroidClasses()
            for c in enumerate_tropical_cells(g).cells:
                classes.add(torelli_cell_image(c.payload)[0])
            return same_classes(classes.all(), [c.payload for c in enumerate_cographic_cells(g).cells])
        run.add(s, f"genus {g} Torelli image = cographic cells", image)

    def planar(g_top=gcap):
        bad = []
        for g in range(2, g_top + 1):
            for c in enumerate_tropical_cells(g).cells:
                if not planar_image_test(c.payload).agree:
                    bad.append(f"g{g}:{c.id}")
        return not bad, ",".join(bad[:5])
    run.add(s, "planar iff simple cographic matroid is graphic", planar)

    def degree_one():
        rng = random.Random(seed)
        for G in (fx.theta(), fx.k(4), fx.k33(), fx.prism()):
            if genus(G) > gcap:
                continue
            for _ in range(5):
                C = TropicalCurve(G, rational_lengths(rng, G.n_edges))
                if reconstruct_lengths(torelli_point(C), G, cycle_basis(G)) != C.lengths:
                    return False
        return True
    run.add(s, "lengths recovered from the jacobian", degree_one)
    if gcap >= 4:
        run.add(s, "M(K5) not in the image", lambda: not schottky_membership(graphic_matroid(fx.k(5))).in_image)
    run.add(s, "graphic matrix of theta is TU", lambda: is_totally_unimodular(graphic_matrix(fx.theta())))


SUITE_FUNCS = {
    "graph": graph_suite,
    "matroid": matroid_suite,
    "quadform": quadform_suite,
    "moduli": moduli_suite,
    "torelli": torelli_suite,
}


def run_suites(name: str, gcap: int, seed: int = 0) -> SuiteRun:
    run = SuiteRun()
    for suite in (SUITES if name == "all" else (name,)):
        SUITE_FUNCS[suite](run, gcap, seed)
    return run
