"""Connectivity machinery: blocks, 3-connectivity, circuit graphs, chains.

A circuit graph is a 2-connected plane graph whose apex augmentation (a new
vertex joined to every external vertex) is 3-connected.  Deleting an external
vertex from a circuit graph always yields a plane chain of blocks: the blocks
line up along a path of the block-cutvertex tree and every block's external
vertices stay external in the whole.  ``delete_vertex_chain`` computes that
decomposition and certifies each guaranteed property, raising
``InternalInconsistency`` on any failure.

3-connectivity is decided by exhaustive pair deletion; instances here are
desk-scale, so the O(n^2 (n+m)) cost is irrelevant and the check doubles as
its own certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .embedgraph import Edge, PlaneGraph, canonical_cycle, edge_key
from .errors import (
    Disconnected,
    InternalInconsistency,
    NotExternal,
    OuterNotFace,
    TooSmall,
)

Adjacency = Mapping[int, Iterable[int]]


def _adjacency(g: PlaneGraph | Adjacency) -> dict[int, list[int]]:
    if isinstance(g, PlaneGraph):
        return {v: list(g.neighbors(v)) for v in g.vertices}
    return {v: list(ns) for v, ns in g.items()}


def _is_connected(adj: dict[int, list[int]], skip: frozenset[int] = frozenset()) -> bool:
    live = [v for v in adj if v not in skip]
    if not live:
        return True
    seen = {live[0]}
    stack = [live[0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in skip and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(live)


# ----------------------------------------------------------------------
# blocks and cutvertices
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class BlockCutTree:
    """Blocks (as edge sets), cutvertices, and their bipartite incidence."""

    blocks: tuple[frozenset[Edge], ...]
    block_vertices: tuple[frozenset[int], ...]
    cutvertices: frozenset[int]

    def blocks_at(self, v: int) -> list[int]:
        return [i for i, vs in enumerate(self.block_vertices) if v in vs]

    @cached_property
    def is_path(self) -> bool:
        """True iff the block-cutvertex tree is a path (a chain of blocks)."""
        if len(self.blocks) <= 1:
            return True
        # Cutvertices of a chain lie in exactly two blocks and each block
        # holds at most two cutvertices; the block adjacency must be a path.
        degree: dict[int, int] = {i: 0 for i in range(len(self.blocks))}
        for c in self.cutvertices:
            touching = self.blocks_at(c)
            if len(touching) != 2:
                return False
            for i in touching:
                degree[i] += 1
        ends = [i for i, d in degree.items() if d == 1]
        middles = [i for i, d in degree.items() if d == 2]
        if len(ends) != 2 or len(ends) + len(middles) != len(self.blocks):
            return False
        # Connectivity of the block graph follows from the host being connected.
        return True


def blocks_cutvertices(g: PlaneGraph | Adjacency) -> BlockCutTree:
    """Biconnected components and cutvertices (iterative Hopcroft-Tarjan)."""
    adj = _adjacency(g)
    if not _is_connected(adj):
        raise Disconnected("block decomposition requires a connected graph")
    if len(adj) == 1:
        v = next(iter(adj))
        return BlockCutTree((frozenset(),), (frozenset({v}),), frozenset())

    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    cutvertices: set[int] = set()
    blocks: list[frozenset[Edge]] = []
    edge_stack: list[Edge] = []
    timer = 0

    for root in adj:
        if root in disc:
            continue
        parent[root] = None
        stack: list[tuple[int, int]] = [(root, 0)]
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        while stack:
            v, i = stack[-1]
            if i < len(adj[v]):
                stack[-1] = (v, i + 1)
                w = adj[v][i]
                if w not in disc:
                    parent[w] = v
                    edge_stack.append(edge_key(v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, 0))
                elif w != parent[v] and disc[w] < disc[v]:
                    edge_stack.append(edge_key(v, w))
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if not stack:
                    continue
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    if u == root:
                        root_children += 1
                    else:
                        cutvertices.add(u)
                    component: set[Edge] = set()
                    target = edge_key(u, v)
                    while True:
                        e = edge_stack.pop()
                        component.add(e)
                        if e == target:
                            break
                    blocks.append(frozenset(component))
        if root_children > 1:
            cutvertices.add(root)

    block_vertices = tuple(frozenset(itertools.chain.from_iterable(b)) for b in blocks)
    return BlockCutTree(tuple(blocks), block_vertices, frozenset(cutvertices))


# ----------------------------------------------------------------------
# 3-connectivity and the circuit-graph predicate
# ----------------------------------------------------------------------


def is_three_connected(g: PlaneGraph | Adjacency) -> bool:
    """Exhaustive pair-deletion test; requires at least 4 vertices."""
    adj = _adjacency(g)
    if len(adj) < 4:
        raise TooSmall("3-connectivity needs at least 4 vertices")
    if not _is_connected(adj):
        return False
    for pair in itertools.combinations(adj, 2):
        if not _is_connected(adj, skip=frozenset(pair)):
            return False
    return True


def is_circuit_graph(
    g: PlaneGraph,
    outer_cycle: Sequence[int] | None = None,
    *,
    check_separating_pairs: bool = False,
) -> bool:
    """Whether the apex augmentation of ``g`` is 3-connected.

    ``outer_cycle`` defaults to the boundary of the designated outer face;
    passing anything else is rejected.  With ``check_separating_pairs`` the
    consequence that every 2-cut leaves all components touching the outer
    cycle is asserted as well.
    """
    boundary = tuple(g.outer_face.boundary)
    if outer_cycle is not None:
        if canonical_cycle(outer_cycle) != canonical_cycle(boundary):
            raise OuterNotFace("given cycle is not the outer face boundary")
    if len(set(boundary)) != len(boundary):
        return False  # outer walk revisits a vertex: not even 2-connected
    if g.n < 3:
        return False

    apex = max(g.vertices) + 1
    adj = {v: list(g.neighbors(v)) for v in g.vertices}
    adj[apex] = sorted(g.external_vertices)
    for v in adj[apex]:
        adj[v].append(apex)
    if not is_three_connected(adj):
        return False

    if check_separating_pairs:
        base = {v: list(g.neighbors(v)) for v in g.vertices}
        ext = g.external_vertices
        for pair in itertools.combinations(g.vertices, 2):
            skip = frozenset(pair)
            comps = _components(base, skip)
            if len(comps) > 1 and any(not (c & ext) for c in comps):
                raise InternalInconsistency(
                    "a 2-cut separates a component from the outer cycle",
                    {"pair": sorted(pair)},
                )
    return True


def _components(adj: dict[int, list[int]], skip: frozenset[int]) -> list[set[int]]:
    seen: set[int] = set()
    comps: list[set[int]] = []
    for v in adj:
        if v in skip or v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if b not in skip and b not in comp:
                    comp.add(b)
                    stack.append(b)
        seen |= comp
        comps.append(comp)
    return comps


@dataclass(frozen=True)
class CircuitGraph:
    """A plane graph certified (or trusted) to be a circuit graph."""

    graph: PlaneGraph

    @classmethod
    def from_graph(cls, g: PlaneGraph, *, check: bool = True) -> CircuitGraph:
        if check and not is_circuit_graph(g):
            raise OuterNotFace("graph is not a circuit graph for its outer face")
        return cls(g)

    @property
    def outer_cycle(self) -> tuple[int, ...]:
        return tuple(self.graph.outer_face.boundary)

    @property
    def n(self) -> int:
        return self.graph.n

    def internal_vertices(self) -> frozenset[int]:
        return frozenset(self.graph.vertices) - self.graph.external_vertices

    def min_internal_degree_ok(self, bound: int = 4) -> bool:
        return all(self.graph.degree(v) >= bound for v in self.internal_vertices())


# ----------------------------------------------------------------------
# plane chains of blocks
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ChainBlock:
    """One block of a chain: a circuit graph, a single edge, or a vertex."""

    vertices: frozenset[int]
    edges: frozenset[Edge]
    graph: PlaneGraph | None  # None for trivial (edge/vertex) blocks

    @property
    def trivial(self) -> bool:
        return self.graph is None

    @property
    def kind(self) -> str:
        if self.graph is not None:
            return "circuit"
        return "edge" if self.edges else "vertex"

    @property
    def outer_cycle(self) -> tuple[int, ...]:
        if self.graph is None:
            return tuple(sorted(self.vertices))
        return tuple(self.graph.outer_face.boundary)


@dataclass(frozen=True)
class PlainChainOfBlocks:
    """Blocks B1,b1,...,b(n-1),Bn in path order, with optional end anchors."""

    host: PlaneGraph
    blocks: tuple[ChainBlock, ...]
    cutvertices: tuple[int, ...]
    b0: int | None = None
    bn: int | None = None

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    @cached_property
    def vertices(self) -> frozenset[int]:
        out: set[int] = set()
        for b in self.blocks:
            out |= b.vertices
        return frozenset(out)

    @cached_property
    def edges(self) -> frozenset[Edge]:
        out: set[Edge] = set()
        for b in self.blocks:
            out |= b.edges
        return frozenset(out)

    def reversed(self) -> PlainChainOfBlocks:
        return PlainChainOfBlocks(
            host=self.host,
            blocks=self.blocks[::-1],
            cutvertices=self.cutvertices[::-1],
            b0=self.bn,
            bn=self.b0,
        )

    def left_cut(self, i: int) -> int | None:
        """Cutvertex b_{i-1} preceding block i (1-based); b0 for i=1."""
        return self.cutvertices[i - 2] if i >= 2 else self.b0

    def right_cut(self, i: int) -> int | None:
        """Cutvertex b_i following block i (1-based); bn for i=n."""
        return self.cutvertices[i - 1] if i <= len(self.cutvertices) else self.bn

    def first_block_index(self, v: int) -> int:
        """Smallest 1-based block index whose block contains ``v``."""
        for i, b in enumerate(self.blocks, start=1):
            if v in b.vertices:
                return i
        raise KeyError(v)

    def last_block_index(self, v: int) -> int:
        for i in range(len(self.blocks), 0, -1):
            if v in self.blocks[i - 1].vertices:
                return i
        raise KeyError(v)


def order_blocks_as_path(
    tree: BlockCutTree,
) -> tuple[list[int], list[int]] | None:
    """Order block indices along the path of the block-cut tree.

    Returns (ordered block indices, cutvertices between consecutive blocks),
    or None if the tree is not a path.
    """
    if not tree.is_path:
        return None
    k = len(tree.blocks)
    if k == 1:
        return [0], []
    cut_blocks = {c: tree.blocks_at(c) for c in tree.cutvertices}
    neighbor: dict[int, list[tuple[int, int]]] = {i: [] for i in range(k)}
    for c, (a, b) in cut_blocks.items():
        neighbor[a].append((b, c))
        neighbor[b].append((a, c))
    ends = [i for i in range(k) if len(neighbor[i]) == 1]
    order = [min(ends)]
    cuts: list[int] = []
    prev = -1
    while len(order) < k:
        cur = order[-1]
        nexts = [(b, c) for b, c in neighbor[cur] if b != prev]
        if len(nexts) != 1:
            return None
        nb, cut = nexts[0]
        order.append(nb)
        cuts.append(cut)
        prev = cur
    return order, cuts


def decompose_chain(
    host: PlaneGraph,
    vertices: Iterable[int],
    edges: Iterable[Edge],
) -> tuple[PlainChainOfBlocks | None, list[str]]:
    """Decompose a subgraph of ``host`` into a plane chain of blocks.

    Judges rather than certifies: returns (chain-or-None, problems).  The
    plain-chain requirement is that every block's external vertices (in the
    inherited embedding) are external in the whole subgraph.
    """
    problems: list[str] = []
    vset = set(vertices)
    eset = {edge_key(*e) for e in edges}
    if len(vset) == 1 and not eset:
        v = next(iter(vset))
        block = ChainBlock(frozenset({v}), frozenset(), None)
        return PlainChainOfBlocks(host, (block,), ()), problems

    try:
        sub = host.subgraph(vset, eset)
    except Disconnected:
        return None, ["chain subgraph is disconnected"]

    adj = {v: [w for w in sub.neighbors(v)] for v in sub.vertices}
    tree = blocks_cutvertices(adj)
    ordering = order_blocks_as_path(tree)
    if ordering is None:
        return None, ["block-cutvertex graph is not a path"]
    order, cuts = ordering

    chain_external = sub.external_vertices
    blocks: list[ChainBlock] = []
    for idx in order:
        b_edges = tree.blocks[idx]
        b_vertices = tree.block_vertices[idx]
        if len(b_edges) == 1:
            blocks.append(ChainBlock(b_vertices, b_edges, None))
            continue
        bg = host.subgraph(b_vertices, b_edges)
        if not bg.external_vertices <= chain_external:
            problems.append(
                f"block with vertices {sorted(b_vertices)} has external vertices "
                "that are internal in the chain"
            )
        if not is_circuit_graph(bg):
            problems.append(
                f"nontrivial block with vertices {sorted(b_vertices)} is not a circuit graph"
            )
        blocks.append(ChainBlock(b_vertices, b_edges, bg))

    chain = PlainChainOfBlocks(host, tuple(blocks), tuple(cuts))
    return chain, problems


def delete_vertex_chain(b: CircuitGraph, x: int) -> PlainChainOfBlocks:
    """Decompose ``B - x`` into its plane chain of blocks, for external ``x``.

    The chain is oriented so that b0 is the successor of ``x`` along the
    stored outer walk and bn is its predecessor.  Every property the theory
    guarantees (path-shaped block tree, blocks are circuit graphs, each block
    meets the outer cycle in a path ending at consecutive cutvertices) is
    certified; failures raise ``InternalInconsistency``.
    """
    g = b.graph
    cycle = b.outer_cycle
    if x not in g.external_vertices:
        raise NotExternal(f"vertex {x} is not on the outer cycle")
    pos = cycle.index(x)
    succ = cycle[(pos + 1) % len(cycle)]
    pred = cycle[(pos - 1) % len(cycle)]

    remaining_vertices = set(g.vertices) - {x}
    remaining_edges = {e for e in g.edges if x not in e}
    chain, problems = decompose_chain(g, remaining_vertices, remaining_edges)
    if chain is None or problems:
        raise InternalInconsistency(
            "deleting an external vertex did not give a plane chain of blocks",
            {"x": x, "problems": problems or ["not a chain"]},
        )

    n = chain.n_blocks
    first, last = chain.blocks[0], chain.blocks[-1]
    if succ in first.vertices and (n == 1 or succ not in chain.blocks[1].vertices):
        oriented = chain
    elif succ in last.vertices and (n == 1 or succ not in chain.blocks[-2].vertices):
        oriented = chain.reversed()
    else:
        raise InternalInconsistency(
            "neighbor of deleted vertex is not at a chain end", {"x": x, "succ": succ}
        )
    oriented = PlainChainOfBlocks(
        host=oriented.host,
        blocks=oriented.blocks,
        cutvertices=oriented.cutvertices,
        b0=succ,
        bn=pred,
    )

    _certify_chain_outer_paths(b, x, oriented)
    return oriented


def outer_path_without(cycle: Sequence[int], x: int) -> tuple[int, ...]:
    """The outer cycle opened at ``x``: a path from its successor to its
    predecessor along the stored orientation."""
    pos = tuple(cycle).index(x)
    c = tuple(cycle)
    return c[pos + 1 :] + c[:pos]


def _certify_chain_outer_paths(b: CircuitGraph, x: int, chain: PlainChainOfBlocks) -> None:
    """Each block must meet the outer cycle in the path between its cuts."""
    path = outer_path_without(b.outer_cycle, x)
    index = {v: i for i, v in enumerate(path)}
    cursor = 0
    for i, block in enumerate(chain.blocks, start=1):
        left = chain.left_cut(i)
        right = chain.right_cut(i)
        on_c = sorted((index[v] for v in block.vertices if v in index))
        if not on_c:
            raise InternalInconsistency(
                "a block avoids the outer cycle entirely", {"x": x, "block": i}
            )
        span = list(range(on_c[0], on_c[-1] + 1))
        if on_c != span or on_c[0] != cursor:
            raise InternalInconsistency(
                "block intersection with the outer cycle is not a contiguous path",
                {"x": x, "block": i, "positions": on_c},
            )
        if path[on_c[0]] != left or path[on_c[-1]] != right:
            raise InternalInconsistency(
                "outer-cycle path of a block does not end at its cutvertices",
                {"x": x, "block": i, "left": left, "right": right},
            )
        cursor = on_c[-1]
