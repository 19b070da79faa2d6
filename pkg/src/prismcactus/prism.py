"""Hamilton cycles in the prism G x K2.

The prism has two layers ``a`` and ``b``; a *vertical* edge joins the two
copies of one vertex.  Every bipartite cactus is prism-hamiltonian, and the
construction here realizes the stronger inductive statement: the produced
cycle uses a vertical edge at every good vertex (vertex in exactly one
block).

The construction is local and linear: each block contributes a Hamilton
cycle of its own prism that uses verticals at all of its vertices (the
zig-zag pattern around an even cycle, or the 4-cycle over an edge), and at
each cutvertex the two incident block cycles are spliced by dropping the
shared vertical edge.  Good vertices keep theirs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Mapping

from .errors import InternalInconsistency, NotBipartiteCactus

if TYPE_CHECKING:  # pragma: no cover
    from .cactus import Cactus

Step = tuple[int, str]  # (vertex, layer), layer in {"a", "b"}

LAYERS = ("a", "b")


def _adjacency(g) -> dict[int, set[int]]:
    if hasattr(g, "neighbors") and hasattr(g, "vertices"):
        return {v: set(g.neighbors(v)) for v in g.vertices}
    return {v: set(ns) for v, ns in g.items()}


@dataclass(frozen=True)
class PrismCycle:
    """A closed walk in G x K2, stored as an open step sequence."""

    steps: tuple[Step, ...]

    @cached_property
    def vertical_edges(self) -> frozenset[int]:
        out: set[int] = set()
        k = len(self.steps)
        for i, (v, layer) in enumerate(self.steps):
            w, other = self.steps[(i + 1) % k]
            if v == w and layer != other:
                out.add(v)
        return frozenset(out)

    def __len__(self) -> int:
        return len(self.steps)

    def serialize(self) -> str:
        return " ".join(f"{v}/{layer}" for v, layer in self.steps) + "\n"

    @staticmethod
    def parse(text: str) -> PrismCycle:
        steps: list[Step] = []
        for tok in text.split():
            v, _, layer = tok.partition("/")
            steps.append((int(v), layer))
        return PrismCycle(tuple(steps))


def normalize_cycle(steps: Iterable[Step]) -> PrismCycle:
    """Rotate to start at the smallest ``(v, 'a')`` pair, heading toward the
    smaller of its two cycle neighbors."""
    seq = list(steps)
    start = min(seq)
    i = seq.index(start)
    seq = seq[i:] + seq[:i]
    if seq[-1] < seq[1]:
        seq = [seq[0]] + seq[1:][::-1]
    return PrismCycle(tuple(seq))


def verify_prism_hamilton(g, cycle: PrismCycle) -> bool:
    """True iff ``cycle`` is a Hamilton cycle of the prism over ``g``."""
    adj = _adjacency(g)
    n = len(adj)
    steps = cycle.steps
    if len(steps) != 2 * n or len(set(steps)) != 2 * n:
        return False
    for v, layer in steps:
        if v not in adj or layer not in LAYERS:
            return False
    for i in range(len(steps)):
        (v, lv), (w, lw) = steps[i], steps[(i + 1) % len(steps)]
        if lv == lw:
            if w not in adj[v]:
                return False
        elif v != w:
            return False
    return True


def prism_hamilton_from_cactus(t: Cactus) -> PrismCycle:
    """Hamilton cycle of the prism over a bipartite cactus, with a vertical
    edge at every good vertex."""
    from .cactus import validate_cactus  # local import to keep layering acyclic

    check = validate_cactus(t.adjacency(), t, bipartite_required=True)
    if not check:
        raise NotBipartiteCactus("; ".join(check.problems))

    edges: set[frozenset[Step]] = set()
    for block in t.blocks:
        if len(block) == 2:
            u, v = block
            edges.add(frozenset(((u, "a"), (u, "b"))))
            edges.add(frozenset(((v, "a"), (v, "b"))))
            edges.add(frozenset(((u, "a"), (v, "a"))))
            edges.add(frozenset(((u, "b"), (v, "b"))))
            continue
        k = len(block)
        for i, v in enumerate(block):
            w = block[(i + 1) % k]
            edges.add(frozenset(((v, "a"), (v, "b"))))
            # zig-zag: alternate the layer carrying each cycle edge
            layer = "b" if i % 2 == 0 else "a"
            edges.add(frozenset(((v, layer), (w, layer))))

    for v in t.vertices:
        if v not in t.good_vertices:
            edges.discard(frozenset(((v, "a"), (v, "b"))))

    adj: dict[Step, list[Step]] = {}
    for e in edges:
        p, q = tuple(e)
        adj.setdefault(p, []).append(q)
        adj.setdefault(q, []).append(p)
    for p, ns in adj.items():
        if len(ns) != 2:
            raise InternalInconsistency(
                "spliced block cycles are not 2-regular", {"at": p, "degree": len(ns)}
            )

    start: Step = min(adj)
    walk = [start]
    prev: Step | None = None
    cur = start
    while True:
        nxt = [q for q in adj[cur] if q != prev]
        step = min(nxt) if len(walk) == 1 else nxt[0]
        if step == start:
            break
        walk.append(step)
        prev, cur = cur, step
    if len(walk) != len(adj):
        raise InternalInconsistency(
            "spliced cycles did not merge into one", {"walk": len(walk), "expected": len(adj)}
        )
    cycle = normalize_cycle(walk)
    missing = t.good_vertices - cycle.vertical_edges
    if missing:
        raise InternalInconsistency(
            "a good vertex lost its vertical edge", {"missing": sorted(missing)}
        )
    return cycle


def prism_to_dot(g, cycle: PrismCycle | None = None) -> str:
    """Deterministic DOT rendering of G x K2, highlighting ``cycle``."""
    adj = _adjacency(g)
    cyc_edges: set[frozenset[Step]] = set()
    if cycle is not None:
        k = len(cycle.steps)
        for i in range(k):
            cyc_edges.add(frozenset((cycle.steps[i], cycle.steps[(i + 1) % k])))

    def node(s: Step) -> str:
        return f'"{s[0]}/{s[1]}"'

    lines = ["graph prism {"]
    for v in sorted(adj):
        for layer in LAYERS:
            lines.append(f"  {node((v, layer))};")
    drawn: set[frozenset[Step]] = set()
    all_edges: list[tuple[Step, Step]] = []
    for v in sorted(adj):
        all_edges.append(((v, "a"), (v, "b")))
        for w in sorted(adj[v]):
            if v < w:
                all_edges.append(((v, "a"), (w, "a")))
                all_edges.append(((v, "b"), (w, "b")))
    for p, q in all_edges:
        key = frozenset((p, q))
        if key in drawn:
            continue
        drawn.add(key)
        style = " [penwidth=3]" if key in cyc_edges else ""
        lines.append(f"  {node(p)} -- {node(q)}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
