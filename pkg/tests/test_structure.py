from __future__ import annotations

import pytest

from prismcactus.embedgraph import PlaneGraph
from prismcactus.errors import NotExternal, TooSmall
from prismcactus.oracle import (
    bowtie_squares,
    cycle_graph,
    grid_graph,
    octahedron,
)
from prismcactus.structure import (
    CircuitGraph,
    blocks_cutvertices,
    delete_vertex_chain,
    is_circuit_graph,
    is_three_connected,
    outer_path_without,
)


def test_blocks_path_on_three_vertices():
    tree = blocks_cutvertices({0: [1], 1: [0, 2], 2: [1]})
    assert len(tree.blocks) == 2
    assert tree.cutvertices == frozenset({1})


def test_blocks_single_cycle():
    tree = blocks_cutvertices(cycle_graph(4))
    assert len(tree.blocks) == 1
    assert not tree.cutvertices


def test_blocks_two_triangles_sharing_a_vertex():
    adj = {0: [1, 2, 3, 4], 1: [0, 2], 2: [0, 1], 3: [0, 4], 4: [0, 3]}
    tree = blocks_cutvertices(adj)
    assert len(tree.blocks) == 2
    assert tree.cutvertices == frozenset({0})
    assert tree.is_path


def test_three_connected_k4():
    adj = {i: [j for j in range(4) if j != i] for i in range(4)}
    assert is_three_connected(adj)


def test_three_connected_c5_false():
    assert not is_three_connected(cycle_graph(5))


def test_three_connected_octahedron():
    assert is_three_connected(octahedron())


def test_three_connected_too_small():
    with pytest.raises(TooSmall):
        is_three_connected({0: [1], 1: [0]})


def test_circuit_c4_apex_is_wheel():
    assert is_circuit_graph(cycle_graph(4))


def test_circuit_octahedron_with_separating_pair_assertion():
    assert is_circuit_graph(octahedron(), check_separating_pairs=True)


def test_circuit_bowtie_false():
    assert not is_circuit_graph(bowtie_squares())


def test_delete_vertex_chain_c4():
    b = CircuitGraph.from_graph(cycle_graph(4))
    chain = delete_vertex_chain(b, 0)
    assert chain.n_blocks == 2
    assert all(blk.kind == "edge" for blk in chain.blocks)
    cycle = b.outer_cycle
    pos = cycle.index(0)
    assert chain.b0 == cycle[(pos + 1) % 4]
    assert chain.bn == cycle[(pos - 1) % 4]


def test_delete_vertex_chain_octahedron():
    b = CircuitGraph.from_graph(octahedron())
    chain = delete_vertex_chain(b, 0)
    assert chain.n_blocks == 1
    blk = chain.blocks[0]
    assert blk.kind == "circuit"
    assert sorted(blk.vertices) == [1, 2, 3, 4, 5]
    # anchors are the neighbors of the deleted vertex on the outer triangle
    assert {chain.b0, chain.bn} == {1, 2}


def test_delete_vertex_chain_domino():
    b = CircuitGraph.from_graph(grid_graph(2, 3))
    for x in b.outer_cycle:
        chain = delete_vertex_chain(b, x)
        assert chain.n_blocks >= 1
        for blk in chain.blocks:
            if blk.kind == "circuit":
                assert is_circuit_graph(blk.graph)


def test_delete_vertex_chain_requires_external():
    b = CircuitGraph.from_graph(octahedron())
    with pytest.raises(NotExternal):
        delete_vertex_chain(b, 5)


def test_chain_lemma_properties_across_corpus(circuit_fixtures):
    """Deleting any external vertex of any circuit fixture yields a certified
    plane chain of blocks whose blocks meet the outer cycle in paths."""
    for name, b in circuit_fixtures.items():
        if b.n < 4:
            continue
        for x in b.outer_cycle:
            chain = delete_vertex_chain(b, x)  # certifies internally
            assert chain.vertices == frozenset(b.graph.vertices) - {x}, (name, x)


def test_external_degree_two_vertices_in_bipartite_circuits(circuit_fixtures):
    """A bipartite circuit graph with internal degrees >= 4 has at least four
    external vertices of degree 2."""
    checked = 0
    for name, b in circuit_fixtures.items():
        g = b.graph
        if not g.is_bipartite or not b.min_internal_degree_ok(4):
            continue
        ext_deg2 = [v for v in g.external_vertices if g.degree(v) == 2]
        assert len(ext_deg2) >= 4, name
        checked += 1
    assert checked >= 5


def test_blocks_meet_degree_path_when_remainder_bipartite(circuit_fixtures):
    """If deleting x leaves a bipartite graph and some outer path keeps all
    off-path degrees >= 3, every block of the chain meets that path twice."""
    from tests.conftest import q_candidates

    checked = 0
    for name, b in circuit_fixtures.items():
        if not b.min_internal_degree_ok(4):
            continue
        for x in b.outer_cycle:
            if b.graph.delete_vertex(x).bipartition is None:
                continue
            chain = delete_vertex_chain(b, x)
            for y in b.outer_cycle:
                if y == x:
                    continue
                for q in q_candidates(b, x, y):
                    for blk in chain.blocks:
                        assert len(blk.vertices & set(q)) >= 2, (name, x, y)
                    checked += 1
    assert checked > 20


def test_outer_path_without():
    assert outer_path_without((0, 1, 2, 3), 0) == (1, 2, 3)
    assert outer_path_without((0, 1, 2, 3), 2) == (3, 0, 1)
