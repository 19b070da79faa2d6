from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from prismcactus.embedgraph import (
    PlaneGraph,
    bounded_subgraph,
    canonical_cycle,
    classify_external,
    face_parities,
    parse_pgr,
    trace_faces,
)
from prismcactus.errors import InconsistentRotation, NotACycle, ParseError
from prismcactus.oracle import cycle_graph, k2_graph, octahedron


def test_four_cycle_has_two_square_faces():
    faces = trace_faces(cycle_graph(4))
    assert len(faces) == 2
    assert sorted(f.degree for f in faces) == [4, 4]
    assert sum(1 for f in faces if not f.bounded) == 1


def test_octahedron_has_eight_triangles():
    g = octahedron()
    faces = trace_faces(g)
    assert len(faces) == 8
    assert all(f.degree == 3 for f in faces)
    assert g.n - g.m + len(faces) == 2


def test_single_edge_one_face_of_degree_two():
    faces = trace_faces(k2_graph())
    assert len(faces) == 1
    assert faces[0].degree == 2
    assert not faces[0].bounded


def test_face_parities_even_cycle():
    all_even, odd = face_parities(cycle_graph(6))
    assert all_even and odd == []


def test_face_parities_odd_cycle():
    all_even, odd = face_parities(cycle_graph(5))
    assert not all_even
    assert len(odd) == 1


def test_face_parities_octahedron():
    all_even, odd = face_parities(octahedron())
    assert not all_even
    assert len(odd) == 7  # all bounded triangles
    assert not octahedron().is_bipartite


def test_parity_matches_bipartiteness_on_fixtures(fixtures):
    for name, g in fixtures.items():
        all_even, _ = face_parities(g)
        assert all_even == g.is_bipartite, name


def test_euler_and_degree_identity_on_fixtures(fixtures):
    for name, g in fixtures.items():
        faces = g.faces
        assert g.n - g.m + len(faces) == 2, name
        assert sum(f.degree for f in faces) == 2 * g.m, name


def test_classify_external_cycle():
    g = cycle_graph(4)
    ext_v, ext_e = classify_external(g)
    assert ext_v == frozenset({0, 1, 2, 3})
    assert len(ext_e) == 4


def test_classify_external_octahedron():
    ext_v, _ = classify_external(octahedron())
    assert ext_v == frozenset({0, 1, 2})


def test_classify_external_k2():
    ext_v, _ = classify_external(k2_graph())
    assert ext_v == frozenset({0, 1})


def test_bounded_subgraph_identity():
    g = cycle_graph(4)
    sub = bounded_subgraph(g, (0, 1, 2, 3))
    assert sub.edges == g.edges
    assert sub.vertices == g.vertices


def test_bounded_subgraph_octahedron_inner_triangle():
    g = octahedron()
    # (0, 1, 4) bounds a single triangular face
    sub = bounded_subgraph(g, (0, 1, 4))
    assert set(sub.vertices) == {0, 1, 4}
    assert sub.m == 3


def test_bounded_subgraph_outer_triangle_is_everything():
    g = octahedron()
    sub = bounded_subgraph(g, (0, 1, 2))
    assert sub.edges == g.edges


def test_bounded_subgraph_idempotent_on_own_outer_cycle(fixtures):
    g = fixtures["grid_3x3"]
    cyc = g.outer_face.boundary
    once = bounded_subgraph(g, cyc)
    twice = bounded_subgraph(once, cyc)
    assert once.edges == twice.edges


def test_bounded_subgraph_rejects_non_cycles():
    g = cycle_graph(5)
    with pytest.raises(NotACycle):
        bounded_subgraph(g, (0, 1, 3))


def test_rotation_validation_rejects_asymmetry():
    with pytest.raises(InconsistentRotation):
        PlaneGraph({0: (1,), 1: ()}, outer=(0, 1))


def test_rotation_validation_rejects_duplicates():
    with pytest.raises(InconsistentRotation):
        PlaneGraph({0: (1, 1), 1: (0, 0)}, outer=(0, 1))


def test_pgr_roundtrip_on_fixtures(fixtures):
    for name, g in fixtures.items():
        back = parse_pgr(g.to_pgr())
        assert back.edges == g.edges, name
        assert back.outer_face.canonical == g.outer_face.canonical, name
        for v in g.vertices:
            assert back.rotation(v) == g.rotation(v), name


def test_pgr_parse_errors():
    with pytest.raises(ParseError):
        parse_pgr("")
    with pytest.raises(ParseError):
        parse_pgr("x\n")
    with pytest.raises(ParseError):
        parse_pgr("2\n0: 1\n1: 0\n")  # missing outer line
    with pytest.raises(ParseError):
        parse_pgr("2\n0: 1\n1: 0\nouter: 0\n")  # bad outer walk


def test_pgr_comments_and_whitespace():
    text = "# a square\n4\n0: 1 3\n1: 2 0\n2: 3 1\n3: 0 2  # last\nouter: 0 1 2 3\n"
    g = parse_pgr(text)
    assert g.n == 4 and g.m == 4


@given(st.lists(st.integers(0, 20), min_size=1, max_size=12))
def test_canonical_cycle_rotation_invariant(seq):
    base = canonical_cycle(seq)
    for i in range(len(seq)):
        assert canonical_cycle(seq[i:] + seq[:i]) == base
    assert canonical_cycle(list(reversed(seq))) == base


def test_subgraph_keeps_original_ids():
    g = octahedron()
    sub = g.delete_vertex(0)
    assert set(sub.vertices) == {1, 2, 3, 4, 5}
