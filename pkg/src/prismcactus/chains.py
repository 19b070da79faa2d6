"""Constructive decomposition of circuit graphs into sets of chains.

Each operation realizes one existence statement as an algorithm: delete an
external vertex, recurse into the blocks of the resulting plane chain, and
join the per-block spines and chains back together.  Marked vertices steer
the recursion: a mark is always served either by lying on the spine or by
being a far anchor of the chain containing it (the *strict* reading), which
is what keeps neighboring block solutions vertex-disjoint at their shared
cutvertices and lets the cactus recursion anchor itself downstream.

The bipartite base case with one mark is an external result; it is backed
by the exhaustive spine search in :mod:`prismcactus.oracle`.  Every
operation validates its own output and falls back to the same exhaustive
search (recorded in the branch log) if a guaranteed step fails; a fallback
that also exhausts raises ``InternalInconsistency`` with diagnostics.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from . import oracle
from .embedgraph import PlaneGraph, edge_key
from .errors import (
    BadPair,
    ExhaustionFailure,
    InternalInconsistency,
    NotExternal,
    OddCycleInput,
    PreconditionViolated,
    TooLarge,
)
from .goodness import (
    Chain,
    SetOfChains,
    is_bad,
    make_set_of_chains,
    validate_cycle_set_of_chains,
    validate_set_of_chains,
)
from .structure import (
    ChainBlock,
    CircuitGraph,
    PlainChainOfBlocks,
    delete_vertex_chain,
    outer_path_without,
)


class ParityRequest(enum.Enum):
    ANY = None
    ODD = 1
    EVEN = 0

    @property
    def bit(self) -> int | None:
        return self.value


@dataclass
class BranchLog:
    """Trace of the recursion: one entry per branch taken, plus fallbacks."""

    entries: list[tuple[int, str, int, str]] = field(default_factory=list)
    fallbacks: list[str] = field(default_factory=list)

    def record(self, depth: int, branch: str, host_size: int, params: str = "") -> None:
        self.entries.append((depth, branch, host_size, params))

    def fallback(self, where: str) -> None:
        self.fallbacks.append(where)

    def tags(self) -> set[str]:
        return {branch for _, branch, _, _ in self.entries}

    def format(self) -> str:
        return "".join(
            f"{depth} {branch} {size} {params}\n" for depth, branch, size, params in self.entries
        )


def _rec(log: BranchLog | None, depth: int, branch: str, size: int, params: str = "") -> None:
    if log is not None:
        log.record(depth, branch, size, params)


# ----------------------------------------------------------------------
# small geometry helpers on outer cycles
# ----------------------------------------------------------------------


def _arcs_between(cycle: tuple[int, ...], a: int, b: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two a..b paths along a cycle (both starting at a)."""
    ia = cycle.index(a)
    rotated = cycle[ia:] + cycle[:ia]
    ib = rotated.index(b)
    forward = rotated[: ib + 1]
    backward = (rotated[0],) + tuple(reversed(rotated[ib:]))
    return forward, backward


def _external_arc(host: PlaneGraph, block: ChainBlock, a: int, b: int) -> tuple[int, ...]:
    """The a..b arc of the block's outer cycle whose edges are external in
    the host (the side the block shares with the host's outer cycle)."""
    assert block.graph is not None
    for arc in _arcs_between(block.outer_cycle, a, b):
        if all(host.is_external_edge(u, v) for u, v in zip(arc, arc[1:])):
            return arc
    raise InternalInconsistency(
        "no host-external arc between block anchors",
        {"a": a, "b": b, "outer": list(block.outer_cycle)},
    )


def _parity_arc(block: ChainBlock, a: int, b: int, mark: int) -> tuple[int, ...] | None:
    """An a..b arc of the block's outer cycle usable as the degree-constraint
    path for a parity-controlled recursive call: it must contain the mark and
    leave only degree >= 3 vertices off it."""
    assert block.graph is not None
    g = block.graph
    for arc in _arcs_between(block.outer_cycle, a, b):
        if mark not in arc:
            continue
        off = set(block.outer_cycle) - set(arc)
        if all(g.degree(v) >= 3 for v in off):
            return arc
    return None


# ----------------------------------------------------------------------
# pieces: per-block sub-solutions glued along the chain
# ----------------------------------------------------------------------


@dataclass
class _Piece:
    """A sub-path of the spine plus the chains covering its block."""

    path: tuple[int, ...]
    chains: tuple[Chain, ...]
    block_index: int | None = None  # 1-based index in the host chain, if any
    request: tuple | None = None  # (x, y, marks, parity) used to build it

    def parity(self) -> int:
        return (len(self.path) - 1) % 2


def _oriented_spine(s: SetOfChains, start: int) -> tuple[int, ...]:
    if s.spine[0] == start:
        return s.spine
    assert s.spine[-1] == start
    return s.spine[::-1]


def _piece_from_set(s: SetOfChains, start: int, block_index: int | None, request: tuple | None) -> _Piece:
    return _Piece(_oriented_spine(s, start), s.chains, block_index, request)


def _block_piece(
    host: CircuitGraph,
    chain: PlainChainOfBlocks,
    i: int,
    x2: int,
    y2: int,
    marks: tuple[int, ...],
    parity: ParityRequest,
    log: BranchLog | None,
    depth: int,
) -> _Piece:
    """Solve block i of ``chain`` for a path x2..y2 with the given marks."""
    block = chain.blocks[i - 1]
    if block.trivial:
        assert {x2, y2} == set(block.vertices), "trivial block endpoints mismatch"
        return _Piece((x2, y2), (), i, (x2, y2, marks, parity))
    sub = CircuitGraph(block.graph)
    if sub.graph.is_bipartite:
        assert parity is ParityRequest.ANY, "bipartite blocks have fixed spine parity"
        s = _bip_block_set(host, block, sub, x2, y2, marks, log, depth)
    else:
        mark = marks[0] if marks else y2
        if parity is ParityRequest.ANY:
            s = set_chains_nonbip(sub, x2, y2, mark, ParityRequest.ANY, None, log=log, depth=depth + 1)
        else:
            arc = _parity_arc(block, x2, y2, mark)
            if arc is None:
                raise InternalInconsistency(
                    "no admissible degree-constraint arc for a parity request",
                    {"block": i, "anchors": (x2, y2), "mark": mark},
                )
            s = set_chains_nonbip(sub, x2, y2, mark, parity, arc, log=log, depth=depth + 1)
        for extra in marks[1:]:
            if extra != mark:
                raise InternalInconsistency(
                    "non-bipartite block asked for two distinct marks",
                    {"block": i, "marks": marks},
                )
    return _piece_from_set(s, x2, i, (x2, y2, marks, parity))


def _bip_block_set(
    host: CircuitGraph,
    block: ChainBlock,
    sub: CircuitGraph,
    x2: int,
    y2: int,
    marks: tuple[int, ...],
    log: BranchLog | None,
    depth: int,
) -> SetOfChains:
    if set(marks) == {x2, y2}:
        # both endpoints marked: exactly the shape the endpoint-marked
        # construction guarantees under the block's degree structure
        q = _external_arc(host.graph, block, x2, y2)
        return set_chains_xyxy(sub, x2, y2, q, log=log, depth=depth + 1)
    m1 = marks[0]
    m2 = marks[1] if len(marks) > 1 else marks[0]
    return set_chains_bip(sub, x2, y2, m1, m2, log=log, depth=depth + 1)


def _repair_piece(host_chain: PlainChainOfBlocks, piece: _Piece, avoid: int) -> _Piece | None:
    """Re-solve a block piece with a vertex excluded from all chains."""
    if piece.block_index is None or piece.request is None:
        return None
    block = host_chain.blocks[piece.block_index - 1]
    if block.trivial or block.graph is None:
        return None
    x2, y2, marks, parity = piece.request
    try:
        s = oracle.brute_set_of_chains(
            block.graph, x2, y2, tuple(marks), parity.bit, False, avoid_chained=(avoid,)
        )
    except TooLarge:
        return None
    if s is None:
        return None
    return _piece_from_set(s, x2, piece.block_index, piece.request)


def _assemble(
    host_chain: PlainChainOfBlocks,
    pieces: list[_Piece],
    log: BranchLog | None,
) -> tuple[list[int], list[Chain]]:
    """Concatenate piece paths and chains, resolving junction collisions.

    A collision (chains from both sides containing the shared cutvertex) is
    prevented by the mark discipline; if one slips through, the later piece
    is re-solved with the junction excluded from its chains.
    """
    for idx in range(len(pieces) - 1):
        left, right = pieces[idx], pieces[idx + 1]
        w = right.path[0]
        assert left.path[-1] == w, "piece paths do not share their junction"
        left_has = any(w in c.vertices for c in left.chains)
        right_has = any(w in c.vertices for c in right.chains)
        if left_has and right_has:
            if log is not None:
                log.fallback(f"junction:{w}")
            fixed = _repair_piece(host_chain, right, w)
            if fixed is None:
                fixed_left = _repair_piece(host_chain, left, w)
                if fixed_left is None:
                    raise InternalInconsistency(
                        "chains from both sides occupy a junction cutvertex",
                        {"junction": w},
                    )
                pieces[idx] = fixed_left
            else:
                pieces[idx + 1] = fixed

    spine: list[int] = list(pieces[0].path)
    chains: list[Chain] = list(pieces[0].chains)
    for piece in pieces[1:]:
        spine.extend(piece.path[1:])
        chains.extend(piece.chains)
    return spine, chains


def _tail_chain(b: CircuitGraph, x: int, drop_blocks: list[ChainBlock]) -> Chain | None:
    """The induced chain on everything outside the listed blocks, attached at
    x; None when only x itself remains."""
    dropped: set[int] = set()
    for blk in drop_blocks:
        dropped |= blk.vertices
    keep = (set(b.graph.vertices) - dropped) | {x}
    if keep == {x}:
        return None
    return Chain.induced(b.graph, keep, attach=x)


def _extend_through(
    chain: PlainChainOfBlocks,
    piece: _Piece,
    j: int,
    ell: int,
    far: int | None,
) -> _Piece:
    """Absorb blocks strictly between j and ell (inclusive of ell) into the
    chain holding the junction cutvertex, or a fresh chain attached there."""
    if ell == j:
        return piece
    if ell > j:
        junction = chain.right_cut(j)
        absorbed = [chain.blocks[i - 1] for i in range(j + 1, ell + 1)]
    else:
        junction = chain.left_cut(j)
        absorbed = [chain.blocks[i - 1] for i in range(ell, j)]
    assert junction is not None
    if far is not None:
        far_block = absorbed[-1] if ell > j else absorbed[0]
        assert far in far_block.vertices, "far anchor outside the absorbed blocks"

    for idx, c in enumerate(piece.chains):
        if junction in c.vertices:
            grown = c.union_blocks(absorbed)
            new_chains = piece.chains[:idx] + (grown,) + piece.chains[idx + 1 :]
            return replace(piece, chains=new_chains, request=None)
    assert junction in piece.path, "junction neither chained nor on the spine"
    vs: set[int] = set()
    es: set = set()
    for blk in absorbed:
        vs |= blk.vertices
        es |= blk.edges
    fresh = Chain(frozenset(vs), frozenset(es), attach=junction)
    return replace(piece, chains=piece.chains + (fresh,), request=None)


# ----------------------------------------------------------------------
# finishing: validate, fall back to search, or fail loudly
# ----------------------------------------------------------------------


def _finish_path(
    b: CircuitGraph | PlaneGraph,
    x: int,
    y: int,
    marks: tuple[int, ...],
    spine: list[int],
    chains: list[Chain],
    parity_bit: int | None,
    op: str,
    branches: tuple[str, ...],
    log: BranchLog | None,
) -> SetOfChains:
    host = b.graph if isinstance(b, CircuitGraph) else b
    s = make_set_of_chains(spine, chains, marks, branches=branches)
    verdict = validate_set_of_chains(host, x, y, marks, s, strict_marks=True)
    if verdict and (parity_bit is None or s.parity == parity_bit):
        return s
    if log is not None:
        log.fallback(op)
    try:
        rescue = oracle.brute_set_of_chains(host, x, y, marks, parity_bit, False)
    except TooLarge:
        rescue = None
    if rescue is not None:
        return rescue.with_branches(branches + (f"{op}:fallback",))
    raise InternalInconsistency(
        f"{op}: constructed set failed validation and search found no substitute",
        {
            "op": op,
            "x": x,
            "y": y,
            "marks": list(marks),
            "parity": parity_bit,
            "problems": verdict.problems,
            "spine": spine,
            "host": host.to_pgr(),
        },
    )


def _finish_cycle(
    b: CircuitGraph | PlaneGraph,
    marks: tuple[int, ...],
    spine: list[int],
    chains: list[Chain],
    op: str,
    branches: tuple[str, ...],
    log: BranchLog | None,
) -> SetOfChains:
    host = b.graph if isinstance(b, CircuitGraph) else b
    s = make_set_of_chains(spine, chains, marks, cyclic=True, branches=branches)
    verdict = validate_cycle_set_of_chains(host, marks, s, strict_marks=True)
    if verdict:
        return s
    if log is not None:
        log.fallback(op)
    try:
        rescue = oracle.brute_set_of_chains(host, None, None, marks, None, True)
    except TooLarge:
        rescue = None
    if rescue is not None:
        return rescue.with_branches(branches + (f"{op}:fallback",))
    raise InternalInconsistency(
        f"{op}: constructed cycle set failed validation and search found no substitute",
        {"op": op, "marks": list(marks), "problems": verdict.problems, "spine": spine,
         "host": host.to_pgr()},
    )


def _require_external(b: CircuitGraph, *vs: int) -> None:
    for v in vs:
        if v not in b.graph.external_vertices:
            raise NotExternal(f"vertex {v} is not on the outer cycle")


# ----------------------------------------------------------------------
# bipartite base: one mark (external result, search-backed)
# ----------------------------------------------------------------------


def rihta(
    b: CircuitGraph, x: int, y: int, u: int, *, log: BranchLog | None = None, depth: int = 0
) -> SetOfChains:
    """Path-spined set of chains with one mark in a bipartite circuit graph.

    Backed by the exhaustive spine search; the underlying existence theorem
    holds for every bipartite circuit graph, so exhaustion here signals a bug
    or an invalid input rather than true nonexistence.
    """
    if not b.graph.is_bipartite:
        raise PreconditionViolated("host must be bipartite")
    _require_external(b, x, y, u)
    _rec(log, depth, "rihta", b.n, f"x={x} y={y} u={u}")
    s = oracle.brute_set_of_chains(b.graph, x, y, (u,), None, False)
    if s is None:
        raise ExhaustionFailure(
            f"no ({x},{y};{u})-set of chains found in a bipartite circuit graph"
        )
    return s


def _rihta_piece(
    host: CircuitGraph,
    chain: PlainChainOfBlocks,
    i: int,
    x2: int,
    y2: int,
    mark: int,
    log: BranchLog | None,
    depth: int,
) -> _Piece:
    block = chain.blocks[i - 1]
    if block.trivial:
        assert {x2, y2} == set(block.vertices)
        return _Piece((x2, y2), (), i, (x2, y2, (mark,), ParityRequest.ANY))
    s = rihta(CircuitGraph(block.graph), x2, y2, mark, log=log, depth=depth + 1)
    return _piece_from_set(s, x2, i, (x2, y2, (mark,), ParityRequest.ANY))


# ----------------------------------------------------------------------
# gluing along a chain
# ----------------------------------------------------------------------


def glue(
    chain: PlainChainOfBlocks,
    j: int,
    base: SetOfChains,
    ell: int,
    v: int | None,
    *,
    log: BranchLog | None = None,
    depth: int = 0,
) -> SetOfChains:
    """Extend a set of chains from block j across the chain to block ell.

    ``ell > j`` consumes the mark at the right cutvertex of block j,
    ``ell < j`` the left one; the blocks passed over must be bipartite.  The
    spine is unchanged; ``v`` (in block ell) becomes a far anchor of the
    extended chain and is reported as a mark of the result.
    """
    if not (1 <= j <= chain.n_blocks and 1 <= ell <= chain.n_blocks):
        raise PreconditionViolated("block indices out of range")
    lo, hi = min(j, ell), max(j, ell)
    for i in range(lo, hi + 1):
        if i != j:
            blk = chain.blocks[i - 1]
            if blk.graph is not None and not blk.graph.is_bipartite:
                raise PreconditionViolated("blocks passed over by glue must be bipartite")
    _rec(log, depth, "glue", chain.blocks[j - 1].vertices.__len__(), f"j={j} ell={ell} v={v}")

    junction = chain.right_cut(j) if ell > j else chain.left_cut(j)
    start = base.spine[0]
    piece = _Piece(base.spine, base.chains, j, None)
    extended = _extend_through(chain, piece, j, ell, v)

    carried = [m.vertex for m in base.marked if m.vertex != junction]
    marks = tuple(dict.fromkeys(carried + ([v] if v is not None else [])))

    vs: set[int] = set()
    es: set = set()
    for i in range(lo, hi + 1):
        vs |= chain.blocks[i - 1].vertices
        es |= chain.blocks[i - 1].edges
    union_host = chain.host.subgraph(vs, es)
    return _finish_path(
        union_host,
        start,
        base.spine[-1],
        marks,
        list(extended.path),
        list(extended.chains),
        None,
        "glue",
        base.branches,
        log,
    )


def glue_cycle(
    chain: PlainChainOfBlocks,
    j: int,
    base: SetOfChains,
    u: int | None,
    *,
    v_first: int | None = None,
    v_last: int | None = None,
    log: BranchLog | None = None,
    depth: int = 0,
) -> SetOfChains:
    """Extend a cycle-spined set of chains from block j over the whole chain.

    The head (blocks before j) is absorbed at the left cutvertex and the tail
    (blocks after j) at the right one; ``v_first``/``v_last`` become far
    anchors of the absorbing chains and are reported as marks together with
    the carried mark ``u``.
    """
    if not base.cyclic:
        raise PreconditionViolated("base must have a cycle spine")
    n = chain.n_blocks
    _rec(log, depth, "glue_cycle", len(chain.vertices), f"j={j} n={n} u={u}")
    piece = _Piece(base.spine, base.chains, j, None)
    if j > 1:
        piece = _extend_through(chain, piece, j, 1, v_first)
    if j < n:
        piece = _extend_through(chain, piece, j, n, v_last)

    marks = [m for m in (v_first, v_last, u) if m is not None]
    marks = list(dict.fromkeys(marks))
    union_host = chain.host.subgraph(set(chain.vertices), set(chain.edges))
    return _finish_cycle(
        union_host, tuple(marks), list(piece.path), list(piece.chains),
        "glue_cycle", base.branches, log,
    )


# ----------------------------------------------------------------------
# two marks equal to the path endpoints (bipartite)
# ----------------------------------------------------------------------


def set_chains_xyxy(
    b: CircuitGraph,
    x: int,
    y: int,
    q: tuple[int, ...] | None = None,
    *,
    log: BranchLog | None = None,
    depth: int = 0,
) -> SetOfChains:
    """Set of chains whose spine runs x..y with both endpoints marked.

    ``q`` is the x..y path along the outer cycle whose off-path vertices keep
    degree >= 3; it fixes which way around the cycle the recursion walks.
    """
    if not b.graph.is_bipartite:
        raise PreconditionViolated("host must be bipartite")
    _require_external(b, x, y)
    if x == y:
        raise PreconditionViolated("endpoints must differ")
    cycle = b.outer_cycle
    if q is None:
        q = min(_arcs_between(cycle, x, y), key=len)
    q = tuple(q)
    if q[0] != x or q[-1] != y:
        raise PreconditionViolated("q must run from x to y")

    chain = delete_vertex_chain(b, x)
    # The walk enters the chain from the far side of q: its last cut is q's
    # neighbor of x.
    if chain.bn != q[1]:
        chain = chain.reversed()
    if chain.bn != q[1]:
        raise InternalInconsistency("q does not start at a neighbor of x on the cycle")
    n = chain.n_blocks

    first = chain.blocks[0]
    if y not in first.vertices or (n >= 2 and y == chain.cutvertices[0]):
        # The degree hypothesis forces y into the far end block; otherwise
        # the recursion shape is unavailable and the search takes over.
        if log is not None:
            log.fallback("set_chains_xyxy:shape")
        s = oracle.brute_set_of_chains(b.graph, x, y, (x, y), None, False)
        if s is None:
            raise InternalInconsistency(
                "no endpoint-marked set of chains exists", {"x": x, "y": y}
            )
        return s

    pieces: list[_Piece] = []
    chains_extra: list[Chain] = []
    if first.trivial:
        _rec(log, depth, "set_chains_xyxy:adjacent", b.n, f"x={x} y={y}")
        b1 = chain.right_cut(1)
        pieces.append(_Piece((y, b1), (), 1, None))
        branches = ("set_chains_xyxy:adjacent",)
    else:
        _rec(log, depth, "set_chains_xyxy:main", b.n, f"x={x} y={y}")
        branches = ("set_chains_xyxy:main",)
        sub_host = CircuitGraph(first.graph)
        dchain = delete_vertex_chain(sub_host, y)
        d0 = q[-2]  # neighbor of y along q
        if dchain.b0 != d0:
            dchain = dchain.reversed()
        if dchain.b0 != d0:
            raise InternalInconsistency("q-neighbor of y is not a chain end")
        m = dchain.n_blocks
        on_q = set(q)
        k = max(i for i in range(1, m + 1) if dchain.blocks[i - 1].vertices & on_q)
        b1 = chain.right_cut(1)
        assert b1 is not None

        meet = dchain.blocks[k - 1].vertices & on_q
        dpieces: list[_Piece] = [_Piece((y, d0), (), None, None)]
        if meet == {dchain.left_cut(k)}:
            if dchain.left_cut(k) != b1:
                raise InternalInconsistency(
                    "single-vertex meeting block does not end at the first cutvertex",
                    {"k": k, "meet": sorted(meet)},
                )
            tail = _tail_chain_from(dchain, range(k, m + 1), attach=dchain.left_cut(k))
            if tail is not None:
                chains_extra.append(tail)
            for i in range(1, k):
                dpieces.append(
                    _rihta_piece(sub_host, dchain, i, dchain.left_cut(i), dchain.right_cut(i),
                                 dchain.right_cut(i), log, depth)
                )
        else:
            for i in range(1, k):
                dpieces.append(
                    _rihta_piece(sub_host, dchain, i, dchain.left_cut(i), dchain.right_cut(i),
                                 dchain.right_cut(i), log, depth)
                )
            dk = dchain.blocks[k - 1]
            if dk.trivial:
                if dchain.right_cut(k) != b1:
                    raise InternalInconsistency("trivial meeting block does not reach b1")
                kp = _Piece((dchain.left_cut(k), dchain.right_cut(k)), (), k, None)
            else:
                sk = rihta(CircuitGraph(dk.graph), dchain.left_cut(k), b1,
                           dchain.right_cut(k), log=log, depth=depth + 1)
                kp = _piece_from_set(sk, dchain.left_cut(k), k, None)
            if k < m:
                kp = _extend_through(dchain, kp, k, m, None)
            dpieces.append(kp)
        d_spine, d_chains = _assemble(dchain, dpieces, log)
        pieces.append(_Piece(tuple(d_spine), tuple(d_chains), None, None))

    for i in range(2, n + 1):
        pieces.append(
            _rihta_piece(b, chain, i, chain.left_cut(i), chain.right_cut(i),
                         chain.left_cut(i), log, depth)
        )
    pieces.append(_Piece((chain.bn, x), (), None, None))

    spine, set_chains = _assemble(chain, pieces, log)
    set_chains.extend(chains_extra)
    return _finish_path(b, x, y, (x, y), spine, set_chains, None,
                        "set_chains_xyxy", branches, log)


def _tail_chain_from(chain: PlainChainOfBlocks, indices, attach: int) -> Chain | None:
    vs: set[int] = set()
    es: set = set()
    for i in indices:
        vs |= chain.blocks[i - 1].vertices
        es |= chain.blocks[i - 1].edges
    if vs <= {attach}:
        return None
    return Chain(frozenset(vs), frozenset(es), attach=attach)


# ----------------------------------------------------------------------
# two arbitrary marks (bipartite)
# ----------------------------------------------------------------------


def set_chains_bip(
    b: CircuitGraph,
    x: int,
    y: int,
    u1: int,
    u2: int,
    *,
    log: BranchLog | None = None,
    depth: int = 0,
) -> SetOfChains:
    """Set of chains with spine x..y and two marked vertices.

    Requires ``{x, y} != {u1, u2}``.  The recursion deletes x, classifies the
    marks by the blocks containing them, and dispatches one of seven cases
    (tagged a..g in the branch log) mirroring the underlying case analysis.
    """
    if not b.graph.is_bipartite:
        raise PreconditionViolated("host must be bipartite")
    if {x, y} == {u1, u2}:
        raise PreconditionViolated("marks must not equal the endpoint pair")
    if x == y:
        raise PreconditionViolated("endpoints must differ")
    _require_external(b, x, y, u1, u2)
    if y in (u1, u2):
        x, y = y, x
    if u1 == x and u2 != x:
        u1, u2 = u2, u1

    cycle = b.outer_cycle
    chain = delete_vertex_chain(b, x)
    arc_cw = outer_path_without(cycle, x)  # b0 .. bn in stored orientation

    if u1 != x:
        # orient so u1 lies strictly inside the x..y walk through b0
        prefix = arc_cw[: arc_cw.index(y)]
        if u1 not in prefix:
            chain = chain.reversed()
    else:
        if chain.b0 == y:
            chain = chain.reversed()
    if chain.b0 == y:
        # both marks equal x and y is adjacent on both sides: impossible on a
        # simple cycle, so reaching here means u1 placement failed
        raise InternalInconsistency("could not orient the chain away from y")

    n = chain.n_blocks
    k = chain.first_block_index(y)
    k1 = chain.first_block_index(u1) if u1 != x else None
    k2 = chain.first_block_index(u2) if u2 != x else None
    if k1 is not None and k2 is not None and k2 < k1:
        u1, u2 = u2, u1
        k1, k2 = k2, k1
    params = f"x={x} y={y} u1={u1} u2={u2} k={k} k1={k1} k2={k2}"

    def block_piece(i: int, x2: int, y2: int, marks: tuple[int, ...]) -> _Piece:
        return _block_piece(b, chain, i, x2, y2, marks, ParityRequest.ANY, log, depth)

    def std_piece(i: int) -> _Piece:
        return block_piece(i, chain.left_cut(i), chain.right_cut(i),
                           (chain.left_cut(i), chain.right_cut(i)))

    if u2 == x:
        case = "g" if k1 == k else "f"
        _rec(log, depth, f"set_chains_bip:{case}", b.n, params)
        pieces = []
        for i in range(1, k):
            if k1 is not None and i == k1 and case == "f":
                pieces.append(block_piece(i, chain.left_cut(i), chain.right_cut(i),
                                          (chain.left_cut(i), u1)))
            else:
                pieces.append(std_piece(i))
        if case == "g":
            kp = block_piece(k, chain.left_cut(k), y, (u1, chain.right_cut(k)))
        else:
            kp = block_piece(k, chain.left_cut(k), y,
                             (chain.left_cut(k), chain.right_cut(k)))
        if k < n:
            kp = _extend_through(chain, kp, k, n, None)
        pieces.append(kp)
        pieces_full = [_Piece((x, chain.b0), (), None, None)] + pieces
        spine, chains_out = _assemble(chain, pieces_full, log)
        marks_out = (u1, u2) if u1 != x else (x, x)
        return _finish_path(b, x, y, marks_out, spine, chains_out, None,
                            "set_chains_bip", (f"set_chains_bip:{case}",), log)

    assert k1 is not None and k2 is not None
    pieces = []
    tail: Chain | None = None
    if k2 < k:
        case = "a" if k1 < k2 else "d"
        _rec(log, depth, f"set_chains_bip:{case}", b.n, params)
        for i in range(1, k):
            if i == k1 and k1 < k2:
                pieces.append(block_piece(i, chain.left_cut(i), chain.right_cut(i),
                                          (chain.left_cut(i), u1)))
            elif i == k2 and k1 < k2:
                pieces.append(block_piece(i, chain.left_cut(i), chain.right_cut(i),
                                          (chain.left_cut(i), u2)))
            elif i == k1:  # k1 == k2
                pieces.append(block_piece(i, chain.left_cut(i), chain.right_cut(i), (u1, u2)))
            else:
                pieces.append(std_piece(i))
        pieces.append(block_piece(k, chain.left_cut(k), y,
                                  (chain.left_cut(k), chain.right_cut(k))))
        tail = _tail_chain(b, x, [chain.blocks[i - 1] for i in range(1, k + 1)])
    elif k2 == k:
        case = "b" if k1 < k2 else "e"
        _rec(log, depth, f"set_chains_bip:{case}", b.n, params)
        for i in range(1, k):
            if i == k1 and k1 < k:
                pieces.append(block_piece(i, chain.left_cut(i), chain.right_cut(i),
                                          (chain.left_cut(i), u1)))
            else:
                pieces.append(std_piece(i))
        marks_k = (chain.left_cut(k), u2) if k1 < k else (u1, u2)
        pieces.append(block_piece(k, chain.left_cut(k), y, marks_k))
        tail = _tail_chain(b, x, [chain.blocks[i - 1] for i in range(1, k + 1)])
    else:  # k2 > k; the first mark may sit anywhere up to and inside y's block
        case = "c"
        _rec(log, depth, "set_chains_bip:c", b.n, params)
        for i in range(1, k):
            if i == k1:
                pieces.append(block_piece(i, chain.left_cut(i), chain.right_cut(i),
                                          (chain.left_cut(i), u1)))
            else:
                pieces.append(std_piece(i))
        if k1 < k:
            marks_k = (chain.left_cut(k), chain.right_cut(k))
        else:  # k1 == k: carry the first mark through y's block directly
            marks_k = (u1, chain.right_cut(k))
        kp = block_piece(k, chain.left_cut(k), y, marks_k)
        kp = _extend_through(chain, kp, k, k2, u2)
        pieces.append(kp)
        tail = _tail_chain(b, x, [chain.blocks[i - 1] for i in range(1, k2 + 1)])

    pieces_full = [_Piece((x, chain.b0), (), None, None)] + pieces
    spine, chains_out = _assemble(chain, pieces_full, log)
    if tail is not None:
        chains_out.append(tail)
    return _finish_path(b, x, y, (u1, u2), spine, chains_out, None,
                        "set_chains_bip", (f"set_chains_bip:{case}",), log)


# ----------------------------------------------------------------------
# cycle spine with three marks (bipartite)
# ----------------------------------------------------------------------


def cycle_chains_bip(
    b: CircuitGraph,
    u1: int,
    u2: int,
    u3: int,
    *,
    log: BranchLog | None = None,
    depth: int = 0,
) -> SetOfChains:
    """Even-cycle-spined set of chains with three marks: delete u3, solve
    each block for its cutvertex path, and close the cycle through u3."""
    if not b.graph.is_bipartite:
        raise PreconditionViolated("host must be bipartite")
    _require_external(b, u1, u2, u3)
    x = u3
    chain = delete_vertex_chain(b, x)
    n = chain.n_blocks
    real = [u for u in (u1, u2) if u != x]
    ks = {u: chain.first_block_index(u) for u in real}
    _rec(log, depth, "cycle_chains_bip", b.n, f"u1={u1} u2={u2} u3={u3}")

    pieces: list[_Piece] = [_Piece((x, chain.b0), (), None, None)]
    for i in range(1, n + 1):
        here = [u for u in real if ks[u] == i]
        if len(here) >= 2:
            marks_i = tuple(here)  # both marks in one block: request them alone
        else:
            marks_i = (chain.left_cut(i),) + tuple(here)
        pieces.append(
            _block_piece(b, chain, i, chain.left_cut(i), chain.right_cut(i),
                         marks_i, ParityRequest.ANY, log, depth)
        )
    spine, chains_out = _assemble(chain, pieces, log)
    assert spine[0] == x and spine[-1] == chain.bn
    return _finish_cycle(b, tuple(dict.fromkeys((u1, u2, u3))), spine, chains_out,
                         "cycle_chains_bip", ("cycle_chains_bip",), log)


# ----------------------------------------------------------------------
# parity control when deleting x leaves a bipartite graph
# ----------------------------------------------------------------------


def _pick_z(b: CircuitGraph, x: int, y: int, parity: ParityRequest) -> int:
    """Pick the neighbor of x that starts a spine of the requested parity.

    With ``B - x`` bipartite and connected every z..y path has the parity of
    the color difference, so the spine parity is decided by which color class
    of neighbors the first edge enters.
    """
    without_x = b.graph.delete_vertex(x)
    colors = without_x.bipartition
    assert colors is not None, "parity control requires a bipartite remainder"
    nbrs = sorted(b.graph.neighbors(x))
    if parity is ParityRequest.ANY:
        return nbrs[0]
    want_path_parity = (parity.bit - 1) % 2  # spine = xz edge + z..y path
    for z in nbrs:
        if (colors[z] ^ colors[y]) % 2 == want_path_parity:
            return z
    raise InternalInconsistency(
        "no neighbor of x starts a spine of the requested parity; the host "
        "would have to be bipartite",
        {"x": x, "y": y, "parity": parity.name},
    )


def set_chains_parity_bxbip(
    b: CircuitGraph,
    x: int,
    y: int,
    q: tuple[int, ...],
    u: int,
    parity: ParityRequest = ParityRequest.ANY,
    *,
    log: BranchLog | None = None,
    depth: int = 0,
) -> SetOfChains:
    """Odd or even set of chains when the host is non-bipartite but deleting
    x leaves a bipartite chain.

    The spine is forced to start with the edge x..z, where z is chosen in the
    color class that yields the requested parity; both classes occur among
    x's neighbors precisely because the host is non-bipartite.
    """
    if b.graph.is_bipartite:
        raise PreconditionViolated("host must be non-bipartite")
    _require_external(b, x, y)
    if u == x:
        raise PreconditionViolated("the mark must avoid x")
    q = tuple(q)
    z = _pick_z(b, x, y, parity)

    chain = delete_vertex_chain(b, x)
    last = chain.blocks[-1]
    if y not in last.vertices or (chain.n_blocks >= 2 and y == chain.cutvertices[-1]):
        chain = chain.reversed()
    n = chain.n_blocks
    last = chain.blocks[-1]
    if y not in last.vertices or (n >= 2 and y == chain.cutvertices[-1]):
        # The degree hypothesis forces y into a far end block; without it the
        # recursion shape is unavailable and the search takes over.
        if log is not None:
            log.fallback("set_chains_parity_bxbip:shape")
        s = oracle.brute_set_of_chains(b.graph, x, y, (u,), parity.bit, False)
        if s is None:
            raise InternalInconsistency("no parity-matching set of chains", {"x": x, "y": y})
        return s

    ku = chain.last_block_index(u)
    kz = chain.last_block_index(z)
    params = f"x={x} y={y} u={u} z={z} ku={ku} kz={kz} parity={parity.name}"

    def piece(i: int, x2: int, y2: int, marks: tuple[int, ...]) -> _Piece:
        return _block_piece(b, chain, i, x2, y2, marks, ParityRequest.ANY, log, depth)

    pieces: list[_Piece] = [_Piece((x, z), (), None, None)]
    branch: str

    if kz < n:
        if kz <= ku:
            if kz == ku:
                branch = "set_chains_parity_bxbip:kz=ku<n"
                pieces.append(piece(kz, z, chain.right_cut(kz), (u,)))
            else:
                branch = ("set_chains_parity_bxbip:kz<ku<n" if ku < n
                          else "set_chains_parity_bxbip:kz<ku=n")
                pieces.append(piece(kz, z, chain.right_cut(kz),
                                    (chain.left_cut(kz), chain.right_cut(kz))))
            for i in range(kz + 1, n):
                if i == ku:
                    pieces.append(piece(i, chain.left_cut(i), chain.right_cut(i), (u,)))
                else:
                    pieces.append(piece(i, chain.left_cut(i), chain.right_cut(i),
                                        (chain.left_cut(i), chain.right_cut(i))))
            if n == ku:
                pieces.append(piece(n, chain.left_cut(n), y, (u,)))
            else:
                pieces.append(piece(n, chain.left_cut(n), y, (chain.left_cut(n),)))
            tail = _tail_chain(b, x, [chain.blocks[i - 1] for i in range(kz, n + 1)])
        else:  # ku < kz
            branch = "set_chains_parity_bxbip:ku<kz<n"
            kp = piece(kz, z, chain.right_cut(kz), (chain.left_cut(kz), chain.right_cut(kz)))
            kp = _extend_through(chain, kp, kz, ku, u)
            pieces.append(kp)
            for i in range(kz + 1, n):
                pieces.append(piece(i, chain.left_cut(i), chain.right_cut(i),
                                    (chain.left_cut(i), chain.right_cut(i))))
            pieces.append(piece(n, chain.left_cut(n), y, (chain.left_cut(n),)))
            tail = _tail_chain(b, x, [chain.blocks[i - 1] for i in range(ku, n + 1)])
        spine, chains_out = _assemble(chain, pieces, log)
        if tail is not None:
            chains_out.append(tail)
    else:  # kz == n
        if ku == n:
            if z != y:
                branch = "set_chains_parity_bxbip:kz=ku=n"
                pieces.append(piece(n, z, y, (u,)))
                tail = _tail_chain(b, x, [chain.blocks[n - 1]])
                spine, chains_out = _assemble(chain, pieces, log)
                if tail is not None:
                    chains_out.append(tail)
            elif u == y:  # z == y == u
                branch = "set_chains_parity_bxbip:z=y=u"
                spine = [x, y]
                rest = Chain.induced(b.graph, set(b.graph.vertices) - {y}, attach=x)
                chains_out = [rest]
            else:  # z == y != u
                branch = "set_chains_parity_bxbip:z=y"
                spine = [x, y]
                block_chain = Chain(last.vertices, last.edges, attach=y)
                chains_out = [block_chain]
                tail = _tail_chain(b, x, [last])
                if tail is not None:
                    chains_out.append(tail)
        else:  # ku < n
            if z != y:
                branch = "set_chains_parity_bxbip:ku<kz=n"
                kp = piece(n, z, y, (chain.left_cut(n),))
                kp = _extend_through(chain, kp, n, ku, u)
                pieces.append(kp)
                tail = _tail_chain(b, x, [chain.blocks[i - 1] for i in range(ku, n + 1)])
                spine, chains_out = _assemble(chain, pieces, log)
                if tail is not None:
                    chains_out.append(tail)
            else:  # z == y
                branch = "set_chains_parity_bxbip:z=y,ku<n"
                spine = [x, y]
                g4 = _tail_chain_from(chain, range(ku, n + 1), attach=y)
                tail = _tail_chain(b, x, [chain.blocks[i - 1] for i in range(ku, n + 1)])
                chains_out = [c for c in (g4, tail) if c is not None]

    _rec(log, depth, branch, b.n, params)
    return _finish_path(b, x, y, (u,), list(spine), list(chains_out), parity.bit,
                        "set_chains_parity_bxbip", (branch,), log)


# ----------------------------------------------------------------------
# one mark, non-bipartite host (with optional parity control)
# ----------------------------------------------------------------------


def _solve_parity(target: int | None, fixed_edges: int) -> ParityRequest:
    if target is None:
        return ParityRequest.ANY
    return ParityRequest((target - fixed_edges) % 2)


def set_chains_nonbip(
    b: CircuitGraph,
    x: int,
    y: int,
    u: int,
    parity: ParityRequest = ParityRequest.ANY,
    q: tuple[int, ...] | None = None,
    *,
    log: BranchLog | None = None,
    depth: int = 0,
) -> SetOfChains:
    """Set of chains with one mark in a non-bipartite circuit graph.

    Without a parity request any mark on the outer cycle is served by
    construction A (walk the chain of ``B - x`` up to y's block and park the
    rest as a chain on x).  A parity request additionally needs ``q``, the
    x..y path along the outer cycle with off-path degrees >= 3 and u on it;
    the spine parity is then adjusted inside one non-bipartite block, walking
    the chain from whichever side makes such a block available (construction
    A or B), or delegated to the bipartite-remainder construction when every
    block is bipartite.
    """
    if b.graph.is_bipartite:
        raise PreconditionViolated("host must be non-bipartite")
    if x == y:
        raise PreconditionViolated("endpoints must differ")
    _require_external(b, x, y, u)
    if parity is not ParityRequest.ANY and q is None:
        raise PreconditionViolated("a parity request needs the degree-constraint path")
    if u == x:
        x, y = y, x
        if q is not None:
            q = tuple(reversed(q))
    cycle = b.outer_cycle
    if q is None:
        arcs = [a for a in _arcs_between(cycle, x, y) if u in a]
        if not arcs:
            raise PreconditionViolated("mark does not lie on an x..y arc of the cycle")
        q = min(arcs, key=lambda a: (len(a), a))
    q = tuple(q)
    if q[0] != x or q[-1] != y or u not in q:
        raise PreconditionViolated("q must be an x..y path through the mark")

    chain = delete_vertex_chain(b, x)
    if chain.b0 != q[1]:
        chain = chain.reversed()
    if chain.b0 != q[1]:
        raise InternalInconsistency("q does not leave x along the outer cycle")
    n = chain.n_blocks
    k2 = chain.first_block_index(y)
    k1 = chain.first_block_index(u)
    params = f"x={x} y={y} u={u} k1={k1} k2={k2} parity={parity.name}"

    def nonbip_block(i: int) -> bool:
        blk = chain.blocks[i - 1]
        return blk.graph is not None and not blk.graph.is_bipartite

    a_adjust = [i for i in range(1, k2) if nonbip_block(i)]
    if nonbip_block(k2) and y == chain.right_cut(k2):
        a_adjust.append(k2)
    b_adjust = []
    if nonbip_block(k2) and y != chain.right_cut(k2):
        b_adjust.append(k2)
    b_adjust.extend(i for i in range(k2 + 1, n + 1) if nonbip_block(i))

    if y == chain.b0:
        # q is the single edge x..y and the mark coincides with y
        assert u == y
        if parity in (ParityRequest.ANY, ParityRequest.ODD):
            _rec(log, depth, "set_chains_nonbip:A", b.n, params + " ybase")
            rest = Chain.induced(b.graph, set(b.graph.vertices) - {y}, attach=x)
            return _finish_path(b, x, y, (u,), [x, y], [rest], parity.bit,
                                "set_chains_nonbip", ("set_chains_nonbip:A",), log)
        if b_adjust:
            return _construction_b(b, chain, x, y, u, k1, k2, min(b_adjust), parity,
                                   params, log, depth)
        return set_chains_parity_bxbip(b, x, y, q, u, parity, log=log, depth=depth + 1)

    if parity is ParityRequest.ANY:
        return _construction_a(b, chain, x, y, u, k1, k2, None, parity, params, log, depth)
    if a_adjust:
        return _construction_a(b, chain, x, y, u, k1, k2, min(a_adjust), parity,
                               params, log, depth)
    if b_adjust:
        return _construction_b(b, chain, x, y, u, k1, k2, min(b_adjust), parity,
                               params, log, depth)
    return set_chains_parity_bxbip(b, x, y, q, u, parity, log=log, depth=depth + 1)


def _construction_a(
    b: CircuitGraph,
    chain: PlainChainOfBlocks,
    x: int,
    y: int,
    u: int,
    k1: int,
    k2: int,
    adjustable: int | None,
    parity: ParityRequest,
    params: str,
    log: BranchLog | None,
    depth: int,
) -> SetOfChains:
    """Walk blocks 1..k2 from x's q-side neighbor and park the rest on x."""
    _rec(log, depth, "set_chains_nonbip:A", b.n, params)

    def request(i: int) -> tuple[int, int, tuple[int, ...]]:
        left, right = chain.left_cut(i), chain.right_cut(i)
        if i == k2:
            mark = u if k1 == k2 else left
            return left, y, (mark,)
        if i == k1:
            return left, right, (u,)
        if i < k1:
            return left, right, (right,)
        return left, right, (left,)

    pieces: dict[int, _Piece] = {}
    fixed_edges = 1  # the x..b0 edge
    for i in range(1, k2 + 1):
        if i == adjustable:
            continue
        x2, y2, marks = request(i)
        pieces[i] = _block_piece(b, chain, i, x2, y2, marks, ParityRequest.ANY, log, depth)
        fixed_edges += pieces[i].parity()
    if adjustable is not None:
        x2, y2, marks = request(adjustable)
        need = _solve_parity(parity.bit, fixed_edges)
        pieces[adjustable] = _block_piece(b, chain, adjustable, x2, y2, marks, need, log, depth)

    ordered = [_Piece((x, chain.b0), (), None, None)] + [pieces[i] for i in range(1, k2 + 1)]
    spine, chains_out = _assemble(chain, ordered, log)
    tail = _tail_chain(b, x, [chain.blocks[i - 1] for i in range(1, k2 + 1)])
    if tail is not None:
        chains_out.append(tail)
    return _finish_path(b, x, y, (u,), spine, chains_out, parity.bit,
                        "set_chains_nonbip", ("set_chains_nonbip:A",), log)


def _construction_b(
    b: CircuitGraph,
    chain: PlainChainOfBlocks,
    x: int,
    y: int,
    u: int,
    k1: int,
    k2: int,
    adjustable: int,
    parity: ParityRequest,
    params: str,
    log: BranchLog | None,
    depth: int,
) -> SetOfChains:
    """Walk blocks n..k2 from x's other neighbor; the far blocks carry the
    parity adjustment and the near blocks are absorbed into a chain."""
    _rec(log, depth, "set_chains_nonbip:B", b.n, params)
    n = chain.n_blocks
    y_is_cut = k2 < n and y == chain.right_cut(k2)
    last_walk = k2 + 1 if y_is_cut else k2
    ell = k1 if u != chain.right_cut(k1) else k1 + 1

    def request(i: int) -> tuple[int, int, tuple[int, ...]]:
        left, right = chain.left_cut(i), chain.right_cut(i)
        if i == last_walk and not y_is_cut:
            mark = u if k1 == k2 else left
            return right, y, (mark,)
        return right, left, (left,)

    pieces: dict[int, _Piece] = {}
    fixed_edges = 1  # the x..bn edge
    for i in range(last_walk, n + 1):
        if i == adjustable:
            continue
        x2, y2, marks = request(i)
        pieces[i] = _block_piece(b, chain, i, x2, y2, marks, ParityRequest.ANY, log, depth)
        fixed_edges += pieces[i].parity()
    if adjustable >= last_walk:
        x2, y2, marks = request(adjustable)
        need = _solve_parity(parity.bit, fixed_edges)
        pieces[adjustable] = _block_piece(b, chain, adjustable, x2, y2, marks, need, log, depth)

    if k1 < k2 or y_is_cut:
        pieces[last_walk] = _extend_through(chain, pieces[last_walk], last_walk, ell, u)
    ordered = [_Piece((x, chain.bn), (), None, None)] + [
        pieces[i] for i in range(n, last_walk - 1, -1)
    ]
    spine, chains_out = _assemble(chain, ordered, log)
    tail = _tail_chain(b, x, [chain.blocks[i - 1] for i in range(ell, n + 1)])
    if tail is not None:
        chains_out.append(tail)
    return _finish_path(b, x, y, (u,), spine, chains_out, parity.bit,
                        "set_chains_nonbip", ("set_chains_nonbip:B",), log)


# ----------------------------------------------------------------------
# cycle spine with two marks, non-bipartite host
# ----------------------------------------------------------------------


def _append_trivial_block(chain: PlainChainOfBlocks, a: int, b2: int) -> PlainChainOfBlocks:
    """Extend the chain with the edge a..b2 as one more trivial block
    (a must be the current far cutvertex)."""
    blk = ChainBlock(frozenset({a, b2}), frozenset({edge_key(a, b2)}), None)
    return PlainChainOfBlocks(
        host=chain.host,
        blocks=chain.blocks + (blk,),
        cutvertices=chain.cutvertices + (a,),
        b0=chain.b0,
        bn=None,
    )


def cycle_chains_nonbip(
    b: CircuitGraph,
    x: int,
    y: int,
    *,
    log: BranchLog | None = None,
    depth: int = 0,
) -> SetOfChains:
    """Even-cycle-spined set of chains marking a good pair x, y.

    Dispatches on the chain of ``B - x``: a non-bipartite block lets the
    spine close through x with its parity adjusted inside that block;
    otherwise the structure of the bounded odd faces (all incident to x)
    decides between closing around both odd faces, rerouting along an odd
    face that avoids y, growing a block cycle across the whole chain, or the
    all-trivial chord fallback.
    """
    if b.graph.is_bipartite:
        raise PreconditionViolated("host must be non-bipartite")
    _require_external(b, x, y)
    host = b.graph
    if all(host.degree(v) == 2 for v in host.vertices):
        raise OddCycleInput("the host is a single (odd) cycle")
    if is_bad(b, x, y).bad:
        raise BadPair(f"the pair {x},{y} is obstructed")

    chain = delete_vertex_chain(b, x)
    n = chain.n_blocks
    k = chain.first_block_index(y)
    params = f"x={x} y={y} k={k} n={n}"

    def nonbip_block(i: int) -> bool:
        blk = chain.blocks[i - 1]
        return blk.graph is not None and not blk.graph.is_bipartite

    nonbip = [i for i in range(1, n + 1) if nonbip_block(i)]

    if nonbip:
        return _glavni_nonbip_block(b, chain, x, y, k, min(nonbip), params, log, depth)

    if y not in (chain.left_cut(k), chain.right_cut(k)):
        _rec(log, depth, "cycle_chains_nonbip:bip_y_interior", b.n, params)
        block = chain.blocks[k - 1]
        assert block.graph is not None, "y interior to a trivial block"
        base = cycle_chains_bip(
            CircuitGraph(block.graph), chain.left_cut(k), chain.right_cut(k), y,
            log=log, depth=depth + 1,
        )
        ext = _append_trivial_block(chain, chain.bn, x)
        glued = glue_cycle(
            ext, k, base, y,
            v_first=(chain.b0 if k > 1 else None), v_last=x,
            log=log, depth=depth + 1,
        )
        return _finish_cycle(b, (x, y), list(glued.spine), list(glued.chains),
                             "cycle_chains_nonbip",
                             glued.branches + ("cycle_chains_nonbip:bip_y_interior",), log)

    if y in (chain.b0, chain.bn):
        if y == chain.bn:
            chain = chain.reversed()
            k = chain.first_block_index(y)
        return _glavni_y_end(b, chain, x, y, params, log, depth)

    return _glavni_y_cut(b, chain, x, y, k, params, log, depth)


def _glavni_nonbip_block(
    b: CircuitGraph,
    chain: PlainChainOfBlocks,
    x: int,
    y: int,
    k: int,
    adjustable: int,
    params: str,
    log: BranchLog | None,
    depth: int,
) -> SetOfChains:
    _rec(log, depth, "cycle_chains_nonbip:nonbip_block", b.n, params)
    n = chain.n_blocks

    def request(i: int) -> tuple[int, int, tuple[int, ...]]:
        left, right = chain.left_cut(i), chain.right_cut(i)
        if i < k:
            return left, right, (right,)
        if i == k:
            return left, right, (y,)
        return left, right, (left,)

    pieces: dict[int, _Piece] = {}
    fixed_edges = 2  # the two cycle edges at x
    for i in range(1, n + 1):
        if i == adjustable:
            continue
        x2, y2, marks = request(i)
        pieces[i] = _block_piece(b, chain, i, x2, y2, marks, ParityRequest.ANY, log, depth)
        fixed_edges += pieces[i].parity()
    x2, y2, marks = request(adjustable)
    need = _solve_parity(0, fixed_edges)
    pieces[adjustable] = _block_piece(b, chain, adjustable, x2, y2, marks, need, log, depth)

    ordered = [_Piece((x, chain.b0), (), None, None)] + [pieces[i] for i in range(1, n + 1)]
    spine, chains_out = _assemble(chain, ordered, log)
    assert spine[0] == x and spine[-1] == chain.bn
    return _finish_cycle(b, (x, y), spine, chains_out, "cycle_chains_nonbip",
                         ("cycle_chains_nonbip:nonbip_block",), log)


def _glavni_y_end(
    b: CircuitGraph,
    chain: PlainChainOfBlocks,
    x: int,
    y: int,
    params: str,
    log: BranchLog | None,
    depth: int,
) -> SetOfChains:
    """All blocks bipartite and y is a neighbor of x on the outer cycle."""
    _rec(log, depth, "cycle_chains_nonbip:bip_y_end", b.n, params)
    host = b.graph
    n = chain.n_blocks
    nontrivial = [i for i in range(1, n + 1) if not chain.blocks[i - 1].trivial]

    if nontrivial:
        j = min(nontrivial)
        block = chain.blocks[j - 1]
        base = cycle_chains_bip(
            CircuitGraph(block.graph), chain.left_cut(j), chain.right_cut(j),
            chain.right_cut(j), log=log, depth=depth + 1,
        )
        ext = _append_trivial_block(chain, chain.bn, x)
        glued = glue_cycle(
            ext, j, base, (y if j == 1 else None),
            v_first=(y if j > 1 else None), v_last=x,
            log=log, depth=depth + 1,
        )
        return _finish_cycle(b, (x, y), list(glued.spine), list(glued.chains),
                             "cycle_chains_nonbip",
                             glued.branches + ("cycle_chains_nonbip:bip_y_end",), log)

    # every block trivial: the graph is its outer cycle plus chords at x
    cycle = b.outer_cycle
    if len(cycle) % 2 == 0:
        return _finish_cycle(b, (x, y), list(cycle), [], "cycle_chains_nonbip",
                             ("cycle_chains_nonbip:bip_y_end",), log)
    path = outer_path_without(cycle, x)  # b0 .. bn
    chords = sorted(w for w in host.neighbors(x) if w not in (chain.b0, chain.bn))
    if not chords:
        raise InternalInconsistency("an odd outer cycle with no chord at x", {"x": x})
    w = chords[0]
    wi = path.index(w)
    side_a = (x,) + path[: wi + 1]                    # x, b0 .. w
    side_b = (x,) + tuple(reversed(path[wi:]))        # x, bn .. w
    spine = side_a if len(side_a) % 2 == 0 else side_b
    rest = [v for v in path if v not in spine]
    chains_out: list[Chain] = []
    if rest:
        chains_out.append(Chain.induced(host, set(rest) | {w}, attach=w))
    return _finish_cycle(b, (x, y), list(spine), chains_out, "cycle_chains_nonbip",
                         ("cycle_chains_nonbip:bip_y_end",), log)


def _glavni_y_cut(
    b: CircuitGraph,
    chain: PlainChainOfBlocks,
    x: int,
    y: int,
    k: int,
    params: str,
    log: BranchLog | None,
    depth: int,
) -> SetOfChains:
    """All blocks bipartite and y is the cutvertex after y's block."""
    host = b.graph
    n = chain.n_blocks
    odd_faces = [f for f in host.bounded_faces if f.odd]
    if any(not f.incident(x) for f in odd_faces):
        raise InternalInconsistency(
            "an odd bounded face avoids x although every block is bipartite",
            {"x": x},
        )
    avoid_y = [f for f in odd_faces if not f.incident(y)]

    if not avoid_y:
        if len(odd_faces) != 2:
            raise InternalInconsistency(
                "expected exactly two bounded odd faces through x and y",
                {"count": len(odd_faces)},
            )
        _rec(log, depth, "cycle_chains_nonbip:two_odd_faces", b.n, params)
        pieces: list[_Piece] = [_Piece((x, chain.b0), (), None, None)]
        for i in range(1, n + 1):
            left, right = chain.left_cut(i), chain.right_cut(i)
            if i < k:
                marks: tuple[int, ...] = (right,)
            elif i == k:
                marks = (y,)
            else:
                marks = (left,)
            pieces.append(_block_piece(b, chain, i, left, right, marks,
                                       ParityRequest.ANY, log, depth))
        spine, chains_out = _assemble(chain, pieces, log)
        return _finish_cycle(b, (x, y), spine, chains_out, "cycle_chains_nonbip",
                             ("cycle_chains_nonbip:two_odd_faces",), log)

    _rec(log, depth, "cycle_chains_nonbip:odd_face_avoiding_y", b.n, params)
    face = min(avoid_y, key=lambda f: f.canonical)
    boundary = face.boundary
    xi = boundary.index(x)
    cand1, cand2 = boundary[xi - 1], boundary[(xi + 1) % len(boundary)]
    probe = next(v for v in boundary if v != x)
    if chain.first_block_index(probe) > k:
        chain = chain.reversed()
        k = n - k
    colors = host.delete_vertex(x).bipartition
    assert colors is not None
    if colors[cand1] == colors[cand2]:
        raise InternalInconsistency(
            "odd-face neighbors of x share a color class", {"face": list(boundary)}
        )
    x1 = cand1 if colors[cand1] == colors[chain.bn] else cand2
    kp_idx = chain.last_block_index(x1)

    pieces = []
    kp = _block_piece(
        b, chain, kp_idx, x1, chain.right_cut(kp_idx),
        (chain.left_cut(kp_idx), chain.right_cut(kp_idx)), ParityRequest.ANY, log, depth,
    )
    if kp_idx > 1:
        kp = _extend_through(chain, kp, kp_idx, 1, None)
    pieces.append(kp)
    for i in range(kp_idx + 1, n + 1):
        pieces.append(_block_piece(
            b, chain, i, chain.left_cut(i), chain.right_cut(i),
            (chain.left_cut(i), chain.right_cut(i)), ParityRequest.ANY, log, depth,
        ))
    full = [_Piece((x, x1), (), None, None)] + pieces
    spine, chains_out = _assemble(chain, full, log)
    assert spine[-1] == chain.bn
    return _finish_cycle(b, (x, y), spine, chains_out, "cycle_chains_nonbip",
                         ("cycle_chains_nonbip:odd_face_avoiding_y",), log)
