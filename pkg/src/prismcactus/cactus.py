"""Spanning bipartite cactuses of circuit graphs.

A cactus is a connected graph whose blocks are single edges or cycles, with
every vertex in at most two blocks; a vertex in exactly one block is *good*.
Every circuit graph with all internal degrees at least 4 has a spanning
bipartite cactus, built here recursively: find an even-cycle-spined set of
chains marking the two anchor vertices, keep the spine as a cycle block,
then recurse into every block of every chain and graft the sub-cactuses at
the chain cutvertices.  The strengthened induction keeps both anchors good,
which is exactly what the grafting step consumes one level up.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from . import chains as chains_mod
from .chains import BranchLog
from .embedgraph import PlaneGraph, canonical_cycle, edge_key
from .errors import BadPair, InternalInconsistency, NotExternal, PreconditionViolated
from .goodness import Chain, ValidationResult, is_bad, validate_cycle_set_of_chains
from .structure import CircuitGraph, decompose_chain


@dataclass(frozen=True)
class Cactus:
    """Blocks only: length-2 tuples are edges, longer tuples are cycles in
    cyclic order.  Everything else is derived."""

    blocks: tuple[tuple[int, ...], ...]

    @cached_property
    def vertices(self) -> frozenset[int]:
        out: set[int] = set()
        for b in self.blocks:
            out.update(b)
        return frozenset(out)

    @cached_property
    def incidence(self) -> dict[int, int]:
        count: dict[int, int] = {}
        for b in self.blocks:
            for v in b:
                count[v] = count.get(v, 0) + 1
        return count

    @cached_property
    def good_vertices(self) -> frozenset[int]:
        return frozenset(v for v, c in self.incidence.items() if c == 1)

    def block_edges(self, block: tuple[int, ...]) -> list[tuple[int, int]]:
        if len(block) == 2:
            return [edge_key(block[0], block[1])]
        return [edge_key(block[i], block[(i + 1) % len(block)]) for i in range(len(block))]

    def edges(self) -> set[tuple[int, int]]:
        out: set[tuple[int, int]] = set()
        for b in self.blocks:
            out.update(self.block_edges(b))
        return out

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges():
            adj[u].add(v)
            adj[v].add(u)
        return adj

    # ------------------------------------------------------------------
    # serialization
    # ------------------------------------------------------------------

    def canonical_blocks(self) -> list[tuple[str, tuple[int, ...]]]:
        out = []
        for b in self.blocks:
            if len(b) == 2:
                out.append(("edge", tuple(sorted(b))))
            else:
                out.append(("cycle", canonical_cycle(b)))
        out.sort()
        return out

    def serialize(self) -> str:
        lines = [
            f"block {kind} " + " ".join(str(v) for v in vs)
            for kind, vs in self.canonical_blocks()
        ]
        lines.append("good " + " ".join(str(v) for v in sorted(self.good_vertices)))
        return "\n".join(lines) + "\n"

    @staticmethod
    def parse(text: str) -> Cactus:
        blocks: list[tuple[int, ...]] = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("good"):
                continue
            parts = line.split()
            if parts[0] != "block" or len(parts) < 4:
                raise ValueError(f"bad cactus line: {line!r}")
            blocks.append(tuple(int(t) for t in parts[2:]))
        return Cactus(tuple(blocks))

    def to_dot(self) -> str:
        lines = ["graph cactus {"]
        for v in sorted(self.vertices):
            shape = ' [shape=doublecircle]' if v in self.good_vertices else ""
            lines.append(f'  "{v}"{shape};')
        for i, (kind, vs) in enumerate(self.canonical_blocks()):
            color = "black" if kind == "edge" else f"/dark28/{i % 8 + 1}"
            if kind == "edge":
                lines.append(f'  "{vs[0]}" -- "{vs[1]}";')
            else:
                for j in range(len(vs)):
                    a, b = vs[j], vs[(j + 1) % len(vs)]
                    lines.append(f'  "{a}" -- "{b}" [color="{color}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def validate_cactus(g, t: Cactus, bipartite_required: bool = False) -> ValidationResult:
    """Judge that ``t`` is a spanning cactus of ``g`` (and bipartite if asked).

    ``g`` may be a plane graph or a plain adjacency mapping.
    """
    if isinstance(g, PlaneGraph):
        adj: Mapping[int, Iterable[int]] = {v: g.neighbors(v) for v in g.vertices}
    else:
        adj = g
    adj_sets = {v: set(ns) for v, ns in adj.items()}
    result = ValidationResult(True, [])

    for b in t.blocks:
        if len(b) < 2:
            result.note(f"block {b} too small")
            continue
        if len(set(b)) != len(b):
            result.note(f"block {b} repeats a vertex")
            continue
        for u, v in t.block_edges(b):
            if u not in adj_sets or v not in adj_sets[u]:
                result.note(f"block edge {u}-{v} is not a host edge")
        if bipartite_required and len(b) >= 3 and len(b) % 2 == 1:
            result.note(f"odd cycle block {b}")

    # two blocks sharing >= 2 vertices show up as a repeated block pair when
    # walking each vertex's (short) block list; linear in the incidence size
    vertex_blocks: dict[int, list[int]] = {}
    for bi, b_ in enumerate(t.blocks):
        for v in b_:
            vertex_blocks.setdefault(v, []).append(bi)
    pair_seen: dict[tuple[int, int], int] = {}
    for v, bl in vertex_blocks.items():
        for i in range(len(bl)):
            for j in range(i + 1, len(bl)):
                key = (bl[i], bl[j])
                pair_seen[key] = pair_seen.get(key, 0) + 1
                if pair_seen[key] == 2:
                    result.note(f"blocks {key[0]} and {key[1]} share two vertices")

    too_many = [v for v, c in t.incidence.items() if c > 2]
    if too_many:
        result.note(f"vertices {sorted(too_many)} lie in more than two blocks")

    if t.vertices != set(adj_sets):
        result.note("cactus does not span the host vertex set")

    # connected tree of blocks: n - 1 = sum over blocks of (|block| - 1)
    if t.blocks:
        expected = sum(len(b) - 1 for b in t.blocks)
        if expected != len(t.vertices) - 1:
            result.note("blocks do not form a tree (a block cycle exists)")
        seen = {next(iter(t.vertices))}
        cadj = t.adjacency()
        stack = list(seen)
        while stack:
            v = stack.pop()
            for w in cadj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(t.vertices):
            result.note("cactus is disconnected")
    return result


# ----------------------------------------------------------------------
# the spanning construction
# ----------------------------------------------------------------------


def _is_plain_cycle(g: PlaneGraph) -> bool:
    return all(g.degree(v) == 2 for v in g.vertices)


def _free_partner(block_graph: PlaneGraph, anchor: int) -> int:
    """An external neighbor of the anchor: the pair is good because their
    shared edge is external."""
    boundary = block_graph.outer_face.boundary
    i = boundary.index(anchor)
    return boundary[(i + 1) % len(boundary)]


def spanning_bipartite_cactus(
    b: CircuitGraph,
    x: int | None = None,
    y: int | None = None,
    *,
    log: BranchLog | None = None,
    depth: int = 0,
) -> Cactus:
    """Spanning bipartite cactus of ``b`` in which x and y are good vertices.

    The pair (x, y) must be good; by default two adjacent external vertices
    are used, which is always a good pair.  Internal vertices must all have
    degree at least 4.
    """
    g = b.graph
    if x is None or y is None:
        boundary = g.outer_face.boundary
        x, y = boundary[0], boundary[1]
    if x not in g.external_vertices or y not in g.external_vertices:
        raise NotExternal(f"anchors {x},{y} must be external")
    if depth == 0 and not b.min_internal_degree_ok(4):
        raise PreconditionViolated("an internal vertex has degree below 4")
    if is_bad(b, x, y).bad:
        raise BadPair(f"{x},{y} is an obstructed pair")

    if _is_plain_cycle(g):
        cycle = g.outer_face.boundary
        if len(cycle) % 2 == 0:
            return Cactus((tuple(cycle),))
        # odd cycle: a good pair is adjacent; drop their shared edge
        if not g.has_edge(x, y):
            raise InternalInconsistency(
                "good pair on an odd cycle must be adjacent", {"x": x, "y": y}
            )
        edges = {edge_key(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))}
        edges.discard(edge_key(x, y))
        return Cactus(tuple(sorted(edges)))

    if g.is_bipartite:
        s = chains_mod.cycle_chains_bip(b, x, y, x, log=log, depth=depth + 1)
    else:
        s = chains_mod.cycle_chains_nonbip(b, x, y, log=log, depth=depth + 1)
    verdict = validate_cycle_set_of_chains(g, (x, y), s, strict_marks=True)
    if not verdict:
        raise InternalInconsistency(
            "cycle set of chains failed validation inside the cactus recursion",
            {"problems": verdict.problems, "x": x, "y": y, "host": g.to_pgr()},
        )

    blocks: list[tuple[int, ...]] = [tuple(s.spine)]
    served = {m.vertex: m.chain_index for m in s.marked}
    for ci, chain in enumerate(s.chains):
        marks_here = sorted(v for v, idx in served.items() if idx == ci)
        blocks.extend(_cactus_blocks_for_chain(g, chain, marks_here, log, depth))
    cactus = Cactus(tuple(blocks))

    check = validate_cactus(g, cactus, bipartite_required=True)
    if not check:
        raise InternalInconsistency(
            "assembled cactus failed validation",
            {"problems": check.problems, "host": g.to_pgr()},
        )
    for v in (x, y):
        if v not in cactus.good_vertices:
            raise InternalInconsistency(
                "an anchor vertex is not good in the assembled cactus", {"vertex": v}
            )
    return cactus


def _cactus_blocks_for_chain(
    host: PlaneGraph,
    chain: Chain,
    marks: list[int],
    log: BranchLog | None,
    depth: int,
) -> list[tuple[int, ...]]:
    """Recurse into the blocks of one chain, anchored at its attach vertex."""
    if len(chain.vertices) == 1:
        return []
    pcob, problems = decompose_chain(host, chain.vertices, chain.edges)
    if pcob is None or problems:
        raise InternalInconsistency(
            "chain failed to decompose during the cactus recursion",
            {"problems": problems},
        )
    if chain.attach not in pcob.blocks[0].vertices or (
        pcob.n_blocks >= 2 and chain.attach == pcob.cutvertices[0]
    ):
        pcob = pcob.reversed()
    first = pcob.blocks[0]
    if chain.attach not in first.vertices or (
        pcob.n_blocks >= 2 and chain.attach == pcob.cutvertices[0]
    ):
        raise InternalInconsistency(
            "chain attach vertex is not a proper end anchor", {"attach": chain.attach}
        )

    far_mark = None
    for m in marks:
        if m == chain.attach:
            raise InternalInconsistency(
                "a served mark coincides with the chain attach vertex", {"mark": m}
            )
        if far_mark is not None and m != far_mark:
            raise InternalInconsistency(
                "one chain serves two distinct marks", {"marks": marks}
            )
        far_mark = m
    last = pcob.blocks[-1]
    if far_mark is not None and far_mark not in last.vertices:
        raise InternalInconsistency(
            "served mark is not in the chain's far block", {"mark": far_mark}
        )

    out: list[tuple[int, ...]] = []
    n = pcob.n_blocks
    for i, block in enumerate(pcob.blocks, start=1):
        left = chain.attach if i == 1 else pcob.cutvertices[i - 2]
        if i < n:
            right: int | None = pcob.cutvertices[i - 1]
        else:
            right = far_mark
        if block.trivial:
            if block.edges:
                out.append(tuple(sorted(block.vertices)))
            continue
        bg = block.graph
        assert bg is not None
        sub = CircuitGraph(bg)
        if not sub.min_internal_degree_ok(4):
            raise InternalInconsistency(
                "a chain block has an internal vertex of degree below 4",
                {"block": sorted(block.vertices)},
            )
        if right is None:
            right = _free_partner(bg, left)
        if is_bad(bg, left, right).bad:
            raise InternalInconsistency(
                "designated block pair is bad before recursion",
                {"block": sorted(block.vertices), "pair": (left, right)},
            )
        sub_cactus = spanning_bipartite_cactus(sub, left, right, log=log, depth=depth + 1)
        out.extend(sub_cactus.blocks)
    return out


# ----------------------------------------------------------------------
# random bipartite cactuses (test/benchmark material)
# ----------------------------------------------------------------------


def random_bipartite_cactus(rng: random.Random, target_n: int) -> Cactus:
    """Seeded random bipartite cactus with roughly ``target_n`` vertices.

    Grown block by block: each new even cycle or edge is attached at a
    vertex currently in only one block, so the two-blocks-per-vertex cap
    holds by construction.
    """
    if target_n < 2:
        raise ValueError("need at least two vertices")
    blocks: list[tuple[int, ...]] = []
    incidence: dict[int, int] = {}
    open_vertices: list[int] = []
    next_id = 0

    def new_vertex() -> int:
        nonlocal next_id
        v = next_id
        next_id += 1
        return v

    def register(members: tuple[int, ...]) -> None:
        blocks.append(members)
        for v in members:
            incidence[v] = incidence.get(v, 0) + 1
            if incidence[v] == 1:
                open_vertices.append(v)

    first_len = 2 * rng.randint(2, 5)
    register(tuple(new_vertex() for _ in range(first_len)))

    while next_id < target_n:
        while True:
            i = rng.randrange(len(open_vertices))
            anchor = open_vertices[i]
            if incidence[anchor] == 1:
                break
            open_vertices[i] = open_vertices[-1]
            open_vertices.pop()
        if rng.random() < 0.35:
            members = (anchor, new_vertex())
        else:
            length = 2 * rng.randint(2, 5)
            members = tuple([anchor] + [new_vertex() for _ in range(length - 1)])
        register(members)
    return Cactus(tuple(blocks))
