"""Bad pairs, good chains, and the set-of-chains validators.

A circuit graph is *bad* with respect to two external vertices x, y when it
has exactly one bounded odd face, that face touches both x and y, and the
edge xy (if present) is internal.  A bad pair obstructs prism hamiltonicity:
no Hamilton cycle of the prism can use vertical edges at both vertices.  The
complete graphs K1 and K2 count as good with respect to any of their
vertices, and a bipartite circuit graph is good with respect to every pair
of external vertices (it has no bounded odd face at all).

A *good chain* is a plane chain of blocks each of whose blocks is good with
respect to its two designated vertices (the neighboring cutvertices, with
the given anchors standing in at the ends).  With a single anchor the far
end block is unconstrained: any circuit graph is good with respect to one
external vertex paired with an adjacent external neighbor.

The validators here judge; they never repair.  They are the independent
oracle against which the constructive operations are checked.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .embedgraph import Edge, Face, PlaneGraph, edge_key
from .errors import AnchorInvalid, NotExternal
from .structure import (
    ChainBlock,
    CircuitGraph,
    PlainChainOfBlocks,
    decompose_chain,
)


class GoodReason(enum.Enum):
    """Why a pair is good; ``MULTIPLE_ODD_FACES`` covers any count != 1."""

    MULTIPLE_ODD_FACES = "odd-face count differs from one"
    NOT_INCIDENT = "the odd face misses one of the vertices"
    EXTERNAL_EDGE_XY = "xy is an external edge"
    TRIVIAL_BLOCK_RULE = "K1/K2 are good with respect to any vertex"


@dataclass(frozen=True)
class GoodnessVerdict:
    bad: bool
    witness_face: Face | None = None
    reason: GoodReason | None = None

    def __bool__(self) -> bool:  # truthy iff bad, mirroring the predicate name
        return self.bad


def _plane(g: PlaneGraph | CircuitGraph) -> PlaneGraph:
    return g.graph if isinstance(g, CircuitGraph) else g


def is_bad(g: PlaneGraph | CircuitGraph, x: int, y: int) -> GoodnessVerdict:
    """Decide badness of the pair (x, y); both must be external.

    ``x == y`` is allowed and means the single vertex must avoid the unique
    bounded odd face for the pair to be good.
    """
    graph = _plane(g)
    if graph.n <= 2:
        if x not in graph.vertices or y not in graph.vertices:
            raise NotExternal(f"{x} or {y} not a vertex of the trivial block")
        return GoodnessVerdict(False, reason=GoodReason.TRIVIAL_BLOCK_RULE)
    for v in (x, y):
        if v not in graph.external_vertices:
            raise NotExternal(f"vertex {v} is not external")
    odd = [f for f in graph.bounded_faces if f.odd]
    if len(odd) != 1:
        return GoodnessVerdict(False, reason=GoodReason.MULTIPLE_ODD_FACES)
    face = odd[0]
    if not (face.incident(x) and face.incident(y)):
        return GoodnessVerdict(False, reason=GoodReason.NOT_INCIDENT)
    if x != y and graph.has_edge(x, y) and graph.is_external_edge(x, y):
        return GoodnessVerdict(False, reason=GoodReason.EXTERNAL_EDGE_XY)
    return GoodnessVerdict(True, witness_face=face)


# ----------------------------------------------------------------------
# chains
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Chain:
    """A chain as carried inside a set of chains: a subgraph plus its
    attachment vertex on the spine."""

    vertices: frozenset[int]
    edges: frozenset[Edge]
    attach: int

    @staticmethod
    def induced(host: PlaneGraph, vertices: Iterable[int], attach: int) -> Chain:
        vset = frozenset(vertices)
        eset = frozenset(e for e in host.edges if e[0] in vset and e[1] in vset)
        return Chain(vset, eset, attach)

    def union_blocks(self, blocks: Sequence[ChainBlock]) -> Chain:
        vs = set(self.vertices)
        es = set(self.edges)
        for b in blocks:
            vs |= b.vertices
            es |= b.edges
        return Chain(frozenset(vs), frozenset(es), self.attach)


def _block_pair_good(block: ChainBlock, p: int, q: int, problems: list[str]) -> bool:
    if block.graph is None:
        if p not in block.vertices or q not in block.vertices:
            problems.append(f"anchor {p} or {q} missing from trivial block")
            return False
        return True
    ext = block.graph.external_vertices
    if p not in ext or q not in ext:
        problems.append(f"designated vertex {p} or {q} is internal in a block")
        return False
    if is_bad(block.graph, p, q).bad:
        problems.append(f"block {sorted(block.vertices)} is bad with respect to {p},{q}")
        return False
    return True


def _judge_oriented(
    chain: PlainChainOfBlocks, b0: int, bn: int | None, problems: list[str]
) -> bool:
    """Definition check for one orientation of the block path."""
    blocks = chain.blocks
    n = len(blocks)
    first = blocks[0]
    if b0 not in first.vertices:
        problems.append(f"anchor {b0} is not in the first block")
        return False
    if first.graph is not None and b0 not in first.graph.external_vertices:
        problems.append(f"anchor {b0} is internal in its block")
        return False
    if n >= 2 and b0 == chain.cutvertices[0]:
        problems.append(f"anchor {b0} coincides with the adjacent cutvertex")
        return False
    if bn is not None:
        last = blocks[-1]
        if bn not in last.vertices:
            problems.append(f"anchor {bn} is not in the last block")
            return False
        if last.graph is not None and bn not in last.graph.external_vertices:
            problems.append(f"anchor {bn} is internal in its block")
            return False
        if n >= 2 and bn == chain.cutvertices[-1]:
            problems.append(f"anchor {bn} coincides with the adjacent cutvertex")
            return False

    designated: list[tuple[ChainBlock, int, int] | None] = []
    for i, block in enumerate(blocks, start=1):
        left = b0 if i == 1 else chain.cutvertices[i - 2]
        if i < n:
            right: int | None = chain.cutvertices[i - 1]
        else:
            right = bn
        if right is None:
            designated.append(None)  # far end unconstrained with one anchor
        else:
            designated.append((block, left, right))
    ok = True
    for item in designated:
        if item is None:
            continue
        block, p, q = item
        if not _block_pair_good(block, p, q, problems):
            ok = False
    return ok


def judge_chain(
    host: PlaneGraph,
    chain: Chain,
    far: int | None = None,
) -> tuple[bool, list[str]]:
    """Judge whether ``chain`` is a good chain with respect to its attach
    vertex (and ``far``, when given) inside ``host``.

    Tries both orientations of the block path.  Returns (verdict, problems);
    problems explain the last failing orientation.
    """
    cache = host.__dict__.setdefault("_chain_judgments", {})
    key = (chain.vertices, chain.edges, chain.attach, far)
    if key in cache:
        return cache[key]

    problems: list[str] = []
    verdict = _judge_chain_uncached(host, chain, far, problems)
    cache[key] = (verdict, problems)
    return verdict, problems


def _judge_chain_uncached(
    host: PlaneGraph, chain: Chain, far: int | None, problems: list[str]
) -> bool:
    attach = chain.attach
    if attach not in chain.vertices:
        problems.append(f"attach vertex {attach} is not in the chain")
        return False
    if len(chain.vertices) == 1:
        # A single vertex is good with respect to itself.
        if far is not None and far != attach:
            problems.append("single-vertex chain cannot reach a second anchor")
            return False
        return True

    pcob, decomposition_problems = decompose_chain(host, chain.vertices, chain.edges)
    if pcob is None or decomposition_problems:
        problems.extend(decomposition_problems or ["not a chain of blocks"])
        return False

    if far is not None and far == attach and pcob.n_blocks > 1:
        problems.append("coincident anchors require a single-block chain")
        return False

    for oriented in (pcob, pcob.reversed()):
        local: list[str] = []
        if _judge_oriented(oriented, attach, far, local):
            return True
        problems.extend(local)
    return False


def is_good_chain(
    chain: PlainChainOfBlocks, b0: int, bn: int | None = None
) -> bool:
    """Judgment on a structured chain; anchors must lie in the chain."""
    if b0 not in chain.vertices or (bn is not None and bn not in chain.vertices):
        raise AnchorInvalid(f"anchor {b0}/{bn} not in chain")
    as_chain = Chain(chain.vertices, chain.edges, attach=b0)
    ok, _ = judge_chain(chain.host, as_chain, far=bn)
    return ok


# ----------------------------------------------------------------------
# sets of chains
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class MarkResolution:
    vertex: int
    chain_index: int | None  # None: the mark lies on the spine, in no chain


@dataclass(frozen=True)
class SetOfChains:
    """A spine (path or even cycle) plus disjoint good chains covering the rest."""

    spine: tuple[int, ...]
    cyclic: bool
    chains: tuple[Chain, ...]
    marked: tuple[MarkResolution, ...]
    parity: int
    branches: tuple[str, ...] = field(default=(), compare=False)

    @property
    def spine_edge_count(self) -> int:
        return len(self.spine) if self.cyclic else len(self.spine) - 1

    def chain_with(self, v: int) -> int | None:
        for i, c in enumerate(self.chains):
            if v in c.vertices:
                return i
        return None

    def covered_vertices(self) -> frozenset[int]:
        out = set(self.spine)
        for c in self.chains:
            out |= c.vertices
        return frozenset(out)

    def with_branches(self, tags: Iterable[str]) -> SetOfChains:
        return replace(self, branches=self.branches + tuple(tags))


def make_set_of_chains(
    spine: Sequence[int],
    chains: Iterable[Chain],
    marks: Sequence[int],
    *,
    cyclic: bool = False,
    branches: Iterable[str] = (),
) -> SetOfChains:
    spine_t = tuple(spine)
    chains_t = tuple(chains)
    marked = []
    for u in marks:
        idx = None
        for i, c in enumerate(chains_t):
            if u in c.vertices:
                idx = i
                break
        marked.append(MarkResolution(u, idx))
    parity = (len(spine_t) if cyclic else len(spine_t) - 1) % 2
    return SetOfChains(
        spine=spine_t,
        cyclic=cyclic,
        chains=chains_t,
        marked=tuple(marked),
        parity=parity,
        branches=tuple(branches),
    )


@dataclass
class ValidationResult:
    ok: bool
    problems: list[str]

    def __bool__(self) -> bool:
        return self.ok

    def note(self, msg: str) -> None:
        self.ok = False
        self.problems.append(msg)


def _validate_chain_placement(
    host: PlaneGraph, s: SetOfChains, result: ValidationResult
) -> None:
    spine_set = set(s.spine)
    seen: set[int] = set()
    for i, chain in enumerate(s.chains):
        if chain.attach not in chain.vertices:
            result.note(f"chain {i}: attach vertex missing")
            continue
        if not chain.vertices <= set(host.vertices):
            result.note(f"chain {i}: vertices outside the host")
            continue
        if not chain.edges <= host.edges:
            result.note(f"chain {i}: edges outside the host")
            continue
        overlap = chain.vertices & seen
        if overlap:
            result.note(f"chain {i}: shares vertices {sorted(overlap)} with another chain")
        seen |= chain.vertices
        meet = chain.vertices & spine_set
        if meet != {chain.attach}:
            result.note(
                f"chain {i}: meets the spine in {sorted(meet)}, expected only its attach"
            )
    uncovered = set(host.vertices) - spine_set - seen
    if uncovered:
        result.note(f"vertices {sorted(uncovered)} covered by neither spine nor chains")


def _validate_marks(
    host: PlaneGraph,
    marks: Sequence[int],
    s: SetOfChains,
    result: ValidationResult,
    *,
    strict_marks: bool,
) -> None:
    stored = sorted({m.vertex for m in s.marked})
    if stored != sorted(set(marks)):
        result.note(f"stored marks {stored} differ from requested {sorted(set(marks))}")
    for m in s.marked:
        if m.chain_index != s.chain_with(m.vertex):
            result.note(f"mark {m.vertex}: stored resolution is wrong")
    for u in marks:
        if u not in host.vertices:
            result.note(f"mark {u} is not a host vertex")
            continue
        idx = s.chain_with(u)
        if idx is None:
            continue  # not in any chain: condition holds
        chain = s.chains[idx]
        if strict_marks and u == chain.attach:
            result.note(f"mark {u} is the attach vertex of its chain (weak service)")
            continue
        ok, problems = judge_chain(host, chain, far=u)
        if not ok:
            result.note(
                f"chain serving mark {u} is not good with respect to it: {problems}"
            )


def validate_set_of_chains(
    b: CircuitGraph | PlaneGraph,
    x: int,
    y: int,
    marks: Sequence[int],
    s: SetOfChains,
    *,
    strict_marks: bool = False,
) -> ValidationResult:
    """Judge a path-spined set of chains against its definition.

    ``marks`` holds up to two vertices for the plain variant, but any number
    is accepted (the condition is per-mark).  With ``strict_marks`` a mark
    served by the chain attached at it is rejected; the constructive code
    uses this stronger reading so that marked vertices can later anchor
    recursive cactus builds.
    """
    host = _plane(b)
    result = ValidationResult(True, [])
    if s.cyclic:
        result.note("expected a path spine, got a cycle")
        return result
    spine = s.spine
    if len(spine) != len(set(spine)) or not spine:
        result.note("spine is not a simple path")
        return result
    if {spine[0], spine[-1]} != {x, y}:
        result.note(f"spine runs {spine[0]}..{spine[-1]}, expected endpoints {x},{y}")
    for a, bb in zip(spine, spine[1:]):
        if not host.has_edge(a, bb):
            result.note(f"spine step {a}-{bb} is not an edge")
    if s.parity != (len(spine) - 1) % 2:
        result.note("stored parity does not match the spine length")

    _validate_chain_placement(host, s, result)
    for i, chain in enumerate(s.chains):
        ok, problems = judge_chain(host, chain, far=None)
        if not ok:
            result.note(f"chain {i} is not a good chain at its attach: {problems}")
    _validate_marks(host, marks, s, result, strict_marks=strict_marks)
    return result


def validate_cycle_set_of_chains(
    b: CircuitGraph | PlaneGraph,
    marks: Sequence[int],
    s: SetOfChains,
    *,
    strict_marks: bool = False,
) -> ValidationResult:
    """Judge a cycle-spined set of chains: the spine must be an even cycle."""
    host = _plane(b)
    result = ValidationResult(True, [])
    if not s.cyclic:
        result.note("expected a cycle spine, got a path")
        return result
    spine = s.spine
    if len(spine) < 3 or len(spine) != len(set(spine)):
        result.note("spine is not a simple cycle")
        return result
    for i in range(len(spine)):
        a, bb = spine[i], spine[(i + 1) % len(spine)]
        if not host.has_edge(a, bb):
            result.note(f"spine step {a}-{bb} is not an edge")
    if len(spine) % 2 != 0:
        result.note("spine cycle is odd")
    if s.parity != len(spine) % 2:
        result.note("stored parity does not match the spine length")

    _validate_chain_placement(host, s, result)
    for i, chain in enumerate(s.chains):
        ok, problems = judge_chain(host, chain, far=None)
        if not ok:
            result.note(f"chain {i} is not a good chain at its attach: {problems}")
    _validate_marks(host, marks, s, result, strict_marks=strict_marks)
    return result
