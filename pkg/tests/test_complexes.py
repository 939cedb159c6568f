"""Core simplicial-complex behaviour."""

from itertools import combinations

import pytest

from morseshell.complexes import (
    barycentric_subdivision,
    betti_numbers_mod2,
    connected_components,
    euler_characteristic,
    is_closed_surface,
    is_subcomplex,
    link,
    make_complex,
    simplex,
    single_face_intersection,
    skeleton,
    star,
)


def full_simplex(n):
    return make_complex([range(n + 1)])


def boundary_simplex(n):
    return make_complex(combinations(range(n + 1), n))


def brute_faces(maximal):
    out = set()
    for m in maximal:
        for r in range(1, len(m) + 1):
            out.update(combinations(tuple(sorted(m)), r))
    return out


def test_simplex_canonical_form():
    assert simplex([3, 1, 0]) == (0, 1, 3)
    with pytest.raises(ValueError):
        simplex([])
    with pytest.raises(ValueError):
        simplex([1, 1])
    with pytest.raises(ValueError):
        simplex([-1, 2])


def test_make_complex_single_triangle():
    K = make_complex([[0, 1, 2]])
    assert K.faces == frozenset(
        {(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)})


def test_make_complex_absorbs_dominated():
    assert make_complex([[0, 1], [1, 2], [0, 1, 2]]) == make_complex([[0, 1, 2]])


def test_make_complex_empty_input_errors():
    with pytest.raises(ValueError):
        make_complex([])


def test_boundary_tetrahedron_face_count():
    K = boundary_simplex(3)
    # independent enumeration of subsets
    assert K.faces == frozenset(brute_faces(K.maximal_simplices))
    assert len(K.faces) == 14
    assert K.f_vector == (4, 6, 4)


def test_skeleton_triangle():
    K = skeleton(full_simplex(2), 1)
    assert len(K.faces) == 6
    assert K.dim == 1


def test_skeleton_vertices():
    K = skeleton(full_simplex(3), 0)
    assert K.maximal_simplices == ((0,), (1,), (2,), (3,))


def test_skeleton_of_boundary_is_complete_graph():
    K = skeleton(boundary_simplex(3), 1)
    expect = {f for f in brute_faces([[0, 1, 2, 3]]) if len(f) <= 2}
    assert K.faces == frozenset(expect)


def test_skeleton_above_dim_is_identity():
    K = boundary_simplex(3)
    assert skeleton(K, 5) is K


def test_subdivision_of_edge():
    sd = barycentric_subdivision(make_complex([[0, 1]]))
    assert len(sd.complex.faces_of_dim(0)) == 3
    assert len(sd.complex.faces_of_dim(1)) == 2


def test_subdivision_of_triangle():
    sd = barycentric_subdivision(full_simplex(2))
    assert sd.complex.f_vector == (7, 12, 6)
    # one fresh vertex per face of the base complex
    assert len(sd.vertex_face) == 7


def test_subdivision_of_boundary_tetrahedron():
    sd = barycentric_subdivision(boundary_simplex(3))
    assert len(sd.complex.faces_of_dim(0)) == 14
    assert len(sd.complex.faces_of_dim(2)) == 24


def test_subdivision_top_count_is_factorial():
    for K, n in [(full_simplex(2), 2), (full_simplex(3), 3), (boundary_simplex(3), 2)]:
        sd = barycentric_subdivision(K)
        top_base = len(K.faces_of_dim(n))
        import math
        assert len(sd.complex.faces_of_dim(n)) == top_base * math.factorial(n + 1)


def test_subdivision_carrier_labelling():
    K = full_simplex(2)
    sd = barycentric_subdivision(K)
    inner = sd.faces_over({(0, 1, 2)})
    # open triangle of the base carries its barycenter vertex and every flag
    # simplex through it
    assert (sd.face_vertex[(0, 1, 2)],) in inner
    assert all(sd.carrier_face(f) == (0, 1, 2) for f in inner)
    assert euler_characteristic(inner) == euler_characteristic({(0, 1, 2)})


def test_subdivision_preserves_euler_characteristic():
    for K in [full_simplex(3), boundary_simplex(3), make_complex([[0, 1, 2], [2, 3]])]:
        sd = barycentric_subdivision(K)
        assert euler_characteristic(sd.complex.faces) == euler_characteristic(K.faces)


def test_link_in_boundary_tetrahedron_is_cycle():
    K = boundary_simplex(3)
    L = link(K, 0)
    assert L.f_vector == (3, 3)
    assert is_closed_surface(K)


def test_link_of_triangle_vertex_is_edge():
    L = link(full_simplex(2), 0)
    assert L.maximal_simplices == ((1, 2),)


def test_link_missing_vertex_errors():
    with pytest.raises(ValueError):
        link(full_simplex(2), 7)


def test_star_counts():
    K = boundary_simplex(3)
    st = star(K, 0)
    assert len(st) == 1 + 3 + 3  # vertex, edges, triangles


def test_star_in_seven_vertex_torus():
    from morseshell.catalog import moebius_kantor_torus
    K = moebius_kantor_torus()
    st = star(K, 0)
    # every vertex has degree six: the open star holds 6 triangles,
    # 6 edges and the vertex itself
    assert sum(1 for f in st if len(f) == 3) == 6
    assert len(st) == 13


def test_is_closed_surface_negative_cases():
    assert not is_closed_surface(full_simplex(2))  # boundary edges
    glued = make_complex([[0, 1, 2], [0, 3, 4]])  # two triangles at a vertex
    assert not is_closed_surface(glued)
    assert not is_closed_surface(full_simplex(3))


def test_euler_characteristic_examples():
    assert euler_characteristic(boundary_simplex(3).faces) == 2
    assert euler_characteristic({(0, 1, 2)}) == 1
    assert euler_characteristic(full_simplex(4).faces) == 1


def test_betti_sphere():
    assert betti_numbers_mod2(boundary_simplex(3)) == [1, 0, 1]


def test_betti_contractible():
    for n in range(1, 5):
        assert betti_numbers_mod2(full_simplex(n)) == [1] + [0] * n


def test_betti_circle_and_wedge():
    circle = make_complex([[0, 1], [1, 2], [0, 2]])
    assert betti_numbers_mod2(circle) == [1, 1]
    wedge = make_complex([[0, 1], [1, 2], [0, 2], [0, 3], [3, 4], [0, 4]])
    assert betti_numbers_mod2(wedge) == [1, 2]


def test_betti_alternating_sum_is_euler():
    for K in [boundary_simplex(3), full_simplex(3),
              make_complex([[0, 1, 2], [2, 3], [4]])]:
        b = betti_numbers_mod2(K)
        assert sum((-1) ** i * x for i, x in enumerate(b)) == \
            euler_characteristic(K.faces)


def test_connected_components():
    K = make_complex([[0, 1, 2], [5, 6], [9]])
    comps = connected_components(K)
    assert [c.vertices for c in comps] == [(0, 1, 2), (5, 6), (9,)]


def test_single_face_intersection_simple_cases():
    K = full_simplex(2)
    assert single_face_intersection(K, make_complex([[0, 1]]))
    assert not single_face_intersection(K, make_complex([[0], [1]]))
    with pytest.raises(ValueError):
        single_face_intersection(K, make_complex([[7]]))


def test_single_face_intersection_in_subdivision():
    sd = barycentric_subdivision(full_simplex(2))
    boundary = sd.subcomplex(boundary_simplex(2))
    assert is_subcomplex(sd.complex, boundary)
    assert single_face_intersection(sd.complex, boundary)


def test_single_face_intersection_subdivided_pairs():
    # manifold-with-boundary pairs keep the property after subdividing
    pairs = [
        (full_simplex(2), boundary_simplex(2)),
        (full_simplex(3), boundary_simplex(3)),
        (make_complex([[0, 1, 2], [1, 2, 3]]), make_complex([[0, 1], [0, 2], [1, 3], [2, 3]])),
    ]
    for K, L in pairs:
        sd = barycentric_subdivision(K)
        assert single_face_intersection(sd.complex, sd.subcomplex(L))


def test_complex_json_round_trip():
    K = boundary_simplex(3)
    from morseshell.complexes import SimplicialComplex
    assert SimplicialComplex.from_dict(K.to_dict()) == K
