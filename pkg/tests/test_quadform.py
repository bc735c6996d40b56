from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from tropitor import exact
from tropitor import fixtures as fx
from tropitor.graph import GraphError
from tropitor.homology import cographic_matrix, complete_graph_cut_matrix
from tropitor.matroid import CapacityError
from tropitor.quadform import (NotDefiniteError, QuadForm, arith_equiv_bruteforce, certify_voronoi,
                               definite_reduction, gl_invariants, in_principal_cone, jacobian, lattice_points,
                               minkowski_zonotope, principal_cone_position, q_from_tu, symbolic_jacobian,
                               theta_series, voronoi_polytope, voronoi_relevant_vectors, zonotope)

F = Fraction
THETA_BASIS = [[1, -1, 0], [0, 1, -1]]


def shoelace(vertices):
    cx = sum(v[0] for v in vertices) / len(vertices)
    cy = sum(v[1] for v in vertices) / len(vertices)
    import math
    ring = sorted(vertices, key=lambda v: math.atan2(float(v[1] - cy), float(v[0] - cx)))
    return abs(sum(a[0] * b[1] - a[1] * b[0] for a, b in zip(ring, ring[1:] + ring[:1]))) / 2


@st.composite
def definite_forms(draw, g=2):
    """A diag(l) A^T with a random integer A of full rank and positive l."""
    cols = draw(st.lists(st.lists(st.integers(-2, 2), min_size=g, max_size=g), min_size=g, max_size=g + 2))
    A = exact.transpose(cols)
    assume(exact.rank(A) == g)
    ls = draw(st.lists(st.integers(1, 5), min_size=len(cols), max_size=len(cols)))
    return q_from_tu(A, ls)


@st.composite
def unimodular(draw, g=2):
    h = exact.identity(g)
    for _ in range(draw(st.integers(0, 3))):
        i, j = draw(st.integers(0, g - 1)), draw(st.integers(0, g - 1))
        if i != j:
            s = draw(st.sampled_from((-1, 1)))
            h = [[h[r][c] + (s * h[j][c] if r == i else 0) for c in range(g)] for r in range(g)]
    if draw(st.booleans()):
        h[0] = [-x for x in h[0]]
    return h


# -- jacobian -------------------------------------------------------------------------

def test_theta_jacobian_in_the_two_step_basis():
    Q = jacobian(fx.theta(), [2, 3, 5], THETA_BASIS)
    assert Q.rows() == [[5, -3], [-3, 8]]
    sym = symbolic_jacobian(fx.theta(), THETA_BASIS)
    assert sym == [[{"e1": 1, "e2": 1}, {"e2": -1}], [{"e2": -1}, {"e2": 1, "e3": 1}]]


def test_theta_default_basis_is_equivalent():
    Q = jacobian(fx.theta(), [1, 1, 1])
    assert arith_equiv_bruteforce(Q, QuadForm.of([[2, -1], [-1, 2]]), 2).status == "equivalent"


def test_dumbbell_jacobian_ignores_bridge():
    assert jacobian(fx.dumbbell(), [2, 7, 100]).rows() == [[2, 0], [0, 7]]


def test_weight_only_curve_is_zero():
    assert jacobian(fx.single_vertex(2), {}).rows() == [[0, 0], [0, 0]]
    Q = jacobian(fx.loop_and_weight(), [3, 1])
    assert Q.rows() == [[3, 0], [0, 0]]


def test_peterson_gram_is_twice_the_displayed_off_diagonal():
    G, _, basis = fx.load_curve("peterson")
    sym = symbolic_jacobian(G, basis)
    shown = fx.peterson_displayed_matrix()
    for i in range(6):
        assert sym[i][i] == shown[i][i]
        for j in range(6):
            if i != j:
                assert {k: F(v) for k, v in sym[i][j].items()} == {k: 2 * v for k, v in shown[i][j].items()}


def test_lengths_validated():
    with pytest.raises(GraphError):
        jacobian(fx.theta(), [1, 0, 1])
    with pytest.raises(GraphError):
        jacobian(fx.theta(), [1, 1])


# -- forms from TU matrices, principal cone ------------------------------------------

def test_q_from_tu_examples():
    assert q_from_tu([[1, 0], [0, 1]], [1, 1]).rows() == [[1, 0], [0, 1]]
    ls = [F(1, 2), 3, 7]
    A = cographic_matrix(fx.theta(), THETA_BASIS)
    assert q_from_tu(A, ls) == jacobian(fx.theta(), ls, THETA_BASIS)


def test_principal_cone_examples():
    assert in_principal_cone(q_from_tu(complete_graph_cut_matrix(2), [1, 2, 3]))
    assert in_principal_cone(q_from_tu(complete_graph_cut_matrix(3), [1, 2, 3, 4, 5, 6]))
    assert not in_principal_cone(QuadForm.of([[1, 0], [0, 1]]))
    assert principal_cone_position(QuadForm.of([[1, 0], [0, 1]])) == "boundary"
    assert principal_cone_position(QuadForm.of([[1, 1], [1, 1]])) == "outside"
    assert in_principal_cone(jacobian(fx.theta(), [1, 2, 3], THETA_BASIS))


# -- lattice enumeration -------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(definite_forms(), st.integers(1, 12))
def test_lattice_points_match_box_search(Q, radius):
    got = set(lattice_points(Q, radius))
    box = {v for v in product(range(-8, 9), repeat=2) if Q(v) <= radius}
    assert got == box


def test_definite_reduction_splits_kernel():
    Q = QuadForm.of([[2, 2, 0], [2, 2, 0], [0, 0, 1]])
    U, core = definite_reduction(Q)
    assert abs(exact.det(U)) == 1
    assert core.g == 2 and core.is_positive_definite()
    assert Q.transform(U).rows()[2] == [0, 0, 0]


# -- polytopes -----------------------------------------------------------------------

def test_zonotope_examples():
    sq = zonotope([[1, 0], [0, 1]])
    assert sq.vertex_set() == {(F(a, 2), F(b, 2)) for a in (-1, 1) for b in (-1, 1)}
    assert len(zonotope(complete_graph_cut_matrix(2)).vertices) == 6
    assert len(zonotope(complete_graph_cut_matrix(3)).vertices) == 14


def test_voronoi_of_diagonal_form_is_box():
    P = voronoi_polytope(QuadForm.of([[3, 0], [0, 5]]))
    assert P.vertex_set() == {(F(a, 2), F(b, 2)) for a in (-1, 1) for b in (-1, 1)}


def test_voronoi_of_cut_forms_hexagon_and_permutahedron():
    assert len(voronoi_polytope(q_from_tu(cographic_matrix(fx.theta()), [1, 1, 1])).vertices) == 6
    assert len(voronoi_polytope(q_from_tu(complete_graph_cut_matrix(3), [1] * 6)).vertices) == 24


@pytest.mark.parametrize("A", [cographic_matrix(fx.theta()), complete_graph_cut_matrix(2),
                               complete_graph_cut_matrix(3), cographic_matrix(fx.k(4))])
def test_voronoi_image_is_weighted_zonotope(A):
    """Q sends Vor(Q_{A,l}) onto the Minkowski sum of l_i [-v_i/2, v_i/2]."""
    for ls in ([1] * len(A[0]), list(range(1, len(A[0]) + 1))):
        Q = q_from_tu(A, ls)
        P = voronoi_polytope(Q)
        image = {tuple(exact.matvec(Q.rows(), v)) for v in P.vertices}
        assert image == minkowski_zonotope(A, ls).vertex_set()


@settings(max_examples=40, deadline=None)
@given(definite_forms())
def test_voronoi_cell_properties(Q):
    P = voronoi_polytope(Q)
    assert certify_voronoi(Q, P)
    assert P.is_centrally_symmetric()
    assert shoelace(list(P.vertices)) == 1  # a fundamental domain of Z^2
    assert len(voronoi_relevant_vectors(Q)) in (4, 6)


@settings(max_examples=15, deadline=None)
@given(definite_forms(g=3))
def test_voronoi_cell_properties_3d(Q):
    P = voronoi_polytope(Q)
    assert certify_voronoi(Q, P)
    assert P.is_centrally_symmetric()
    assert len(voronoi_relevant_vectors(Q)) <= 14


def test_voronoi_needs_reducer_for_singular_forms():
    Q = QuadForm.of([[1, 1], [1, 1]])
    with pytest.raises(NotDefiniteError):
        voronoi_polytope(Q)
    P = voronoi_polytope(Q, reducer=[[1, 0], [1, 1]])
    assert P.affine_dimension() == 1


def test_voronoi_capacity():
    with pytest.raises(CapacityError):
        voronoi_polytope(QuadForm.of(exact.identity(4)))


# -- arithmetic equivalence ----------------------------------------------------------

def test_equivalence_examples():
    res = arith_equiv_bruteforce(QuadForm.of([[1, 0], [0, 1]]), QuadForm.of([[2, 1], [1, 1]]), 1)
    assert res.status == "equivalent"
    h = res.witness
    assert QuadForm.of([[1, 0], [0, 1]]).transform(h).rows() == [[2, 1], [1, 1]]
    Q = jacobian(fx.theta(), [1, 2, 3])
    assert arith_equiv_bruteforce(Q, Q, 1).witness is not None
    res = arith_equiv_bruteforce(jacobian(fx.theta(), [1, 1, 1]), jacobian(fx.dumbbell(), [1, 1, 1]), 2)
    assert res.status == "inequivalent"


@settings(max_examples=40, deadline=None)
@given(definite_forms(), unimodular())
def test_equivalence_finds_transformed_forms(Q, h):
    bound = max(abs(x) for row in h for x in row)
    R = Q.transform(h)
    res = arith_equiv_bruteforce(Q, R, bound)
    assert res.status == "equivalent"
    assert Q.transform(res.witness) == R
    assert gl_invariants(Q) == gl_invariants(R)


@settings(max_examples=40, deadline=None)
@given(definite_forms(), unimodular())
def test_theta_series_is_invariant(Q, h):
    assert theta_series(Q, 10) == theta_series(Q.transform(h), 10)


def test_quadform_requires_symmetry():
    with pytest.raises(ValueError):
        QuadForm.of([[1, 2], [0, 1]])
