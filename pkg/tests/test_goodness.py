from __future__ import annotations

import pytest

from prismcactus.errors import NotExternal
from prismcactus.goodness import (
    Chain,
    GoodReason,
    is_bad,
    is_good_chain,
    judge_chain,
    make_set_of_chains,
    validate_cycle_set_of_chains,
    validate_set_of_chains,
)
from prismcactus.oracle import (
    brute_hamilton_prism,
    cycle_graph,
    cycle_with_chords,
    grid_graph,
    k2_graph,
    octahedron,
)
from prismcactus.structure import CircuitGraph, decompose_chain, delete_vertex_chain


def test_odd_cycle_bad_for_nonadjacent():
    b = CircuitGraph.from_graph(cycle_graph(5))
    verdict = is_bad(b, 0, 2)
    assert verdict.bad
    assert verdict.witness_face is not None
    assert verdict.witness_face.odd and verdict.witness_face.bounded
    assert verdict.witness_face.incident(0) and verdict.witness_face.incident(2)


def test_odd_cycle_good_for_adjacent():
    b = CircuitGraph.from_graph(cycle_graph(5))
    verdict = is_bad(b, 0, 1)
    assert not verdict.bad
    assert verdict.reason is GoodReason.EXTERNAL_EDGE_XY


def test_bipartite_good_for_every_external_pair(circuit_fixtures):
    for name, b in circuit_fixtures.items():
        if not b.graph.is_bipartite:
            continue
        for x in b.outer_cycle:
            for y in b.outer_cycle:
                verdict = is_bad(b, x, y)
                assert not verdict.bad, (name, x, y)
                assert verdict.reason is GoodReason.MULTIPLE_ODD_FACES


def test_octahedron_good_everywhere():
    b = CircuitGraph.from_graph(octahedron())
    for x in (0, 1, 2):
        for y in (0, 1, 2):
            assert not is_bad(b, x, y).bad


def test_one_odd_face_witness_is_triangle():
    b = CircuitGraph.from_graph(cycle_with_chords(5, [(0, 2)]))
    v = is_bad(b, 0, 2)
    # 0-2 is a chord (internal edge), both on the unique odd face: bad
    assert v.bad
    assert v.witness_face.degree == 3
    # 0 and 1 adjacent externally: good
    assert not is_bad(b, 0, 1).bad
    # 3 not on the triangle: good
    assert not is_bad(b, 0, 3).bad
    assert is_bad(b, 0, 3).reason is GoodReason.NOT_INCIDENT


def test_k1_k2_convention():
    assert not is_bad(k2_graph(), 0, 1).bad
    assert is_bad(k2_graph(), 0, 0).reason is GoodReason.TRIVIAL_BLOCK_RULE


def test_is_bad_requires_external():
    b = CircuitGraph.from_graph(octahedron())
    with pytest.raises(NotExternal):
        is_bad(b, 0, 5)


def test_bad_pair_obstructs_vertical_edges(circuit_fixtures):
    """Wherever a pair is bad, no prism Hamilton cycle uses verticals at both."""
    checked = 0
    for name, b in circuit_fixtures.items():
        if b.n > 8:
            continue
        for i, x in enumerate(b.outer_cycle):
            for y in b.outer_cycle[i + 1:]:
                if is_bad(b, x, y).bad:
                    assert brute_hamilton_prism(b.graph, (x, y)) is None, (name, x, y)
                    checked += 1
    assert checked >= 5


# ----------------------------------------------------------------------
# chains
# ----------------------------------------------------------------------


def test_good_chain_single_even_cycle_block():
    g = cycle_graph(6)
    chain = Chain(frozenset(g.vertices), g.edges, attach=0)
    ok, _ = judge_chain(g, chain, far=3)
    assert ok


def test_good_chain_odd_cycle_nonadjacent_anchors_fails():
    g = cycle_graph(5)
    chain = Chain(frozenset(g.vertices), g.edges, attach=0)
    ok, problems = judge_chain(g, chain, far=2)
    assert not ok
    assert any("bad" in p for p in problems)
    # adjacent anchors are fine (external edge)
    ok2, _ = judge_chain(g, chain, far=1)
    assert ok2


def test_good_chain_two_trivial_blocks():
    g = cycle_graph(4)
    chain = Chain(frozenset({1, 2, 3}), frozenset({(1, 2), (2, 3)}), attach=1)
    ok, _ = judge_chain(g, chain, far=3)
    assert ok
    # attach at the middle vertex is not an end anchor
    bad = Chain(frozenset({1, 2, 3}), frozenset({(1, 2), (2, 3)}), attach=2)
    ok2, _ = judge_chain(g, bad, far=None)
    assert not ok2


def test_is_good_chain_on_structured_chain():
    b = CircuitGraph.from_graph(grid_graph(2, 3))
    chain = delete_vertex_chain(b, 0)
    assert is_good_chain(chain, chain.b0)
    assert is_good_chain(chain, chain.b0, chain.bn)


def test_single_vertex_chain_good():
    g = cycle_graph(4)
    chain = Chain(frozenset({2}), frozenset(), attach=2)
    ok, _ = judge_chain(g, chain, far=None)
    assert ok


# ----------------------------------------------------------------------
# set-of-chains validators
# ----------------------------------------------------------------------


def test_validate_hamilton_path_spine():
    b = CircuitGraph.from_graph(cycle_graph(4))
    s = make_set_of_chains((0, 3, 2, 1), [], (0, 1))
    assert validate_set_of_chains(b, 0, 1, (0, 1), s)


def test_validate_rejects_chain_touching_spine_twice():
    b = CircuitGraph.from_graph(cycle_graph(4))
    chain = Chain(frozenset({1, 2, 3}), frozenset({(1, 2), (2, 3)}), attach=2)
    s = make_set_of_chains((0, 1), [chain], ())
    v = validate_set_of_chains(b, 0, 1, (), s)
    assert not v
    assert any("meets the spine" in p for p in v.problems)


def test_validate_correct_single_chain():
    b = CircuitGraph.from_graph(cycle_graph(4))
    chain = Chain(frozenset({1, 2, 3}), frozenset({(1, 2), (2, 3)}), attach=1)
    s = make_set_of_chains((0, 1), [chain], (3,))
    assert validate_set_of_chains(b, 0, 1, (3,), s, strict_marks=True)


def test_validate_strict_rejects_attach_marks():
    # a single trivial block attached at the marked vertex: fine literally
    # (K2 is good with respect to any of its vertices), rejected strictly
    b = CircuitGraph.from_graph(cycle_graph(4))
    chain = Chain(frozenset({0, 3}), frozenset({(0, 3)}), attach=0)
    s = make_set_of_chains((0, 1, 2), [chain], (0,))
    assert validate_set_of_chains(b, 0, 2, (0,), s)
    assert not validate_set_of_chains(b, 0, 2, (0,), s, strict_marks=True)


def test_validate_coverage_failure():
    b = CircuitGraph.from_graph(cycle_graph(4))
    s = make_set_of_chains((0, 1), [], ())
    v = validate_set_of_chains(b, 0, 1, (), s)
    assert not v
    assert any("covered" in p for p in v.problems)


def test_validate_cycle_spine_full_cover():
    b = CircuitGraph.from_graph(cycle_graph(4))
    s = make_set_of_chains((0, 1, 2, 3), [], (0, 2), cyclic=True)
    assert validate_cycle_set_of_chains(b, (0, 2), s)


def test_validate_cycle_even_spine_with_chord_host():
    g = cycle_with_chords(6, [(0, 2)])
    b = CircuitGraph.from_graph(g)
    s = make_set_of_chains(tuple(b.outer_cycle), [], (0, 1), cyclic=True)
    assert validate_cycle_set_of_chains(b, (0, 1), s)


def test_validate_cycle_rejects_odd_spine():
    g = cycle_with_chords(5, [(0, 2)])
    b = CircuitGraph.from_graph(g)
    chain_rest = Chain(frozenset({3, 4, 0}), frozenset({(3, 4), (0, 4)}), attach=0)
    s = make_set_of_chains((0, 1, 2), [chain_rest], (), cyclic=True)
    v = validate_cycle_set_of_chains(b, (), s)
    assert not v
    assert any("odd" in p for p in v.problems)


def test_decompose_chain_judges_plainness():
    # a triangle hanging inside would violate plainness, but a plain path is fine
    g = cycle_graph(6)
    chain, problems = decompose_chain(g, {0, 1, 2}, {(0, 1), (1, 2)})
    assert chain is not None and not problems
    assert chain.n_blocks == 2
