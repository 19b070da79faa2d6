"""Plane graphs as rotation systems.

A plane graph is stored as a clockwise rotation system (per-vertex cyclic
neighbor order) plus a designated outer face.  Faces are derived by dart
tracing: the successor of dart ``(u, v)`` is ``(v, w)`` where ``w`` follows
``u`` in the rotation at ``v``.  Under this convention every face is traced
with its interior on the left; bounded faces come out counterclockwise and
the unbounded face clockwise.

Embeddings are input, never computed: the ``.pgr`` file format carries the
rotation system and the outer walk.  Subgraphs inherit the embedding by
restricting rotations; their outer face is recovered by merging host faces
across deleted edges and locating the region that contains the host's outer
face.

Vertex identifiers are integers.  Fresh graphs use dense ids ``0..n-1``;
subgraphs keep the original ids so chains stay cross-referenceable against
their host.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    Disconnected,
    InconsistentRotation,
    InternalInconsistency,
    NotACycle,
    OuterNotFace,
    ParseError,
)

Edge = tuple[int, int]
Dart = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Canonical form of a cyclic sequence: start at the minimum id, in the
    lexicographically smaller direction."""
    items = tuple(seq)
    if not items:
        return items
    best: tuple[int, ...] | None = None
    n = len(items)
    for direction in (items, items[::-1]):
        for i, v in enumerate(direction):
            if v != min(items):
                continue
            cand = direction[i:] + direction[:i]
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best


@dataclass(frozen=True)
class Face:
    """A face given by its boundary walk (vertices, with multiplicity)."""

    boundary: tuple[int, ...]
    bounded: bool

    @property
    def degree(self) -> int:
        return len(self.boundary)

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1

    @property
    def canonical(self) -> tuple[int, ...]:
        return canonical_cycle(self.boundary)

    @property
    def darts(self) -> tuple[Dart, ...]:
        b = self.boundary
        return tuple((b[i], b[(i + 1) % len(b)]) for i in range(len(b)))

    def incident(self, v: int) -> bool:
        return v in self.boundary

    def __repr__(self) -> str:  # stable, for diagnostics
        kind = "outer" if not self.bounded else "face"
        return f"<{kind} {list(self.boundary)}>"


class PlaneGraph:
    """Immutable plane graph: clockwise rotations plus a designated outer face.

    All derived data (faces, external vertices, bipartition) is computed
    lazily and cached; instances are safe to share across threads once
    constructed.
    """

    def __init__(
        self,
        rotation: Mapping[int, Sequence[int]],
        outer: Sequence[int],
        *,
        validate: bool = True,
    ):
        self._rotation: dict[int, tuple[int, ...]] = {
            v: tuple(rotation[v]) for v in sorted(rotation)
        }
        self._outer_walk = tuple(outer)
        if validate:
            self._validate_rotation()

    # ------------------------------------------------------------------
    # construction helpers
    # ------------------------------------------------------------------

    def _validate_rotation(self) -> None:
        for v, nbrs in self._rotation.items():
            seen: set[int] = set()
            for w in nbrs:
                if w == v:
                    raise InconsistentRotation(f"loop at vertex {v}")
                if w in seen:
                    raise InconsistentRotation(f"duplicate edge {v}-{w} in rotation")
                if w not in self._rotation:
                    raise InconsistentRotation(f"rotation at {v} names unknown vertex {w}")
                seen.add(w)
        for v, nbrs in self._rotation.items():
            for w in nbrs:
                if v not in self._rotation[w]:
                    raise InconsistentRotation(f"edge {v}-{w} missing from rotation at {w}")

    # ------------------------------------------------------------------
    # basic accessors
    # ------------------------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._rotation)

    @property
    def n(self) -> int:
        return len(self._rotation)

    def rotation(self, v: int) -> tuple[int, ...]:
        return self._rotation[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._rotation[v]

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        return {v: frozenset(ns) for v, ns in self._rotation.items()}

    @cached_property
    def edges(self) -> frozenset[Edge]:
        out: set[Edge] = set()
        for v, nbrs in self._rotation.items():
            for w in nbrs:
                out.add(edge_key(v, w))
        return frozenset(out)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self._rotation[v])

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edges

    def has_vertex(self, v: int) -> bool:
        return v in self._rotation

    @cached_property
    def connected(self) -> bool:
        if not self._rotation:
            return True
        start = next(iter(self._rotation))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self._rotation[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    @cached_property
    def bipartition(self) -> dict[int, int] | None:
        """Two-coloring by BFS, or None if an odd cycle exists."""
        color: dict[int, int] = {}
        for start in self._rotation:
            if start in color:
                continue
            color[start] = 0
            queue = [start]
            while queue:
                v = queue.pop()
                for w in self._rotation[v]:
                    if w not in color:
                        color[w] = color[v] ^ 1
                        queue.append(w)
                    elif color[w] == color[v]:
                        return None
        return color

    @property
    def is_bipartite(self) -> bool:
        return self.bipartition is not None

    # ------------------------------------------------------------------
    # faces
    # ------------------------------------------------------------------

    def _next_dart(self, u: int, v: int) -> Dart:
        rot = self._rotation[v]
        i = self._rotation_index[(v, u)]
        return (v, rot[(i + 1) % len(rot)])

    @cached_property
    def _rotation_index(self) -> dict[Dart, int]:
        idx: dict[Dart, int] = {}
        for v, nbrs in self._rotation.items():
            for i, w in enumerate(nbrs):
                idx[(v, w)] = i
        return idx

    @cached_property
    def _face_data(self) -> tuple[tuple[Face, ...], dict[Dart, int], int]:
        """Trace all dart orbits; returns (faces, dart->face index, outer index)."""
        orbits: list[tuple[int, ...]] = []
        dart_orbit: dict[Dart, int] = {}
        for v in self._rotation:
            for w in self._rotation[v]:
                if (v, w) in dart_orbit:
                    continue
                walk: list[int] = []
                d = (v, w)
                while d not in dart_orbit:
                    dart_orbit[d] = len(orbits)
                    walk.append(d[0])
                    d = self._next_dart(*d)
                if d != (v, w):
                    raise InconsistentRotation("face tracing did not close its orbit")
                orbits.append(tuple(walk))

        if not orbits:
            # Edgeless graph (single vertex): one unbounded face.
            outer = Face(boundary=self._outer_walk, bounded=False)
            idx: dict[Dart, int] = {}
            return (outer,), idx, 0

        outer_idx = self._match_outer(orbits, dart_orbit)
        faces = tuple(
            Face(boundary=walk, bounded=(i != outer_idx)) for i, walk in enumerate(orbits)
        )
        return faces, dart_orbit, outer_idx

    def _match_outer(self, orbits: list[tuple[int, ...]], dart_orbit: dict[Dart, int]) -> int:
        walk = self._outer_walk
        if len(walk) < 2:
            raise OuterNotFace(f"outer walk too short: {walk}")
        for probe in ((walk[0], walk[1]), (walk[1], walk[0])):
            idx = dart_orbit.get(probe)
            if idx is None:
                continue
            orbit = orbits[idx]
            if len(orbit) != len(walk):
                continue
            if probe == (walk[0], walk[1]):
                target = walk
            else:
                target = walk[::-1]
            doubled = orbit + orbit
            for i in range(len(orbit)):
                if doubled[i : i + len(orbit)] == target:
                    return idx
        raise OuterNotFace(f"outer walk {list(walk)} does not bound a face")

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        return self._face_data[0]

    @cached_property
    def dart_face(self) -> dict[Dart, int]:
        return self._face_data[1]

    @property
    def outer_face(self) -> Face:
        data = self._face_data
        return data[0][data[2]]

    @cached_property
    def external_vertices(self) -> frozenset[int]:
        return frozenset(self.outer_face.boundary)

    @cached_property
    def external_edges(self) -> frozenset[Edge]:
        return frozenset(edge_key(u, v) for u, v in self.outer_face.darts)

    def is_external(self, v: int) -> bool:
        return v in self.external_vertices

    def is_external_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.external_edges

    @cached_property
    def bounded_faces(self) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if f.bounded)

    # ------------------------------------------------------------------
    # subgraphs
    # ------------------------------------------------------------------

    def subgraph(self, vertices: Iterable[int], edges: Iterable[Edge]) -> PlaneGraph:
        """Connected subgraph with the inherited embedding.

        The outer face of the result is the face whose region contains the
        host's outer face, found by merging host faces across the edges that
        were dropped.
        """
        vset = set(vertices)
        eset = {edge_key(*e) for e in edges}
        for u, v in eset:
            if edge_key(u, v) not in self.edges:
                raise InternalInconsistency(f"subgraph edge {u}-{v} not in host")
            if u not in vset or v not in vset:
                raise InternalInconsistency(f"subgraph edge {u}-{v} has endpoint outside")

        rot = {
            v: tuple(w for w in self._rotation[v] if edge_key(v, w) in eset)
            for v in sorted(vset)
        }
        if vset:
            start = next(iter(rot))
            seen = {start}
            stack = [start]
            while stack:
                a = stack.pop()
                for b in rot[a]:
                    if b not in seen:
                        seen.add(b)
                        stack.append(b)
            if len(seen) != len(vset):
                raise Disconnected("subgraph is not connected")

        # Merge host faces across dropped edges; the region holding the host's
        # outer face is the new unbounded region.
        faces, dart_face, outer_idx = self._face_data
        parent = list(range(len(faces)))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in self.edges - eset:
            ra, rb = find(dart_face[(u, v)]), find(dart_face[(v, u)])
            if ra != rb:
                parent[ra] = rb
        outer_region = find(outer_idx)

        sub = PlaneGraph(rot, outer=(0, 0), validate=False)
        sub._outer_walk = ()  # fixed below once orbits exist

        orbits: list[tuple[int, ...]] = []
        dart_seen: dict[Dart, int] = {}
        for v in rot:
            for w in rot[v]:
                if (v, w) in dart_seen:
                    continue
                walk: list[int] = []
                d = (v, w)
                while d not in dart_seen:
                    dart_seen[d] = len(orbits)
                    walk.append(d[0])
                    d = sub._next_dart(*d)
                orbits.append(tuple(walk))

        outer_orbits = [
            i for i, walk in enumerate(orbits)
            if find(dart_face[(walk[0], walk[1])]) == outer_region
        ]
        if len(outer_orbits) != 1:
            raise InternalInconsistency(
                "subgraph outer face is not unique; subgraph is likely disconnected",
                {"outer_orbits": outer_orbits, "vertices": sorted(vset)},
            )
        sub._outer_walk = orbits[outer_orbits[0]]
        if not sub.connected:
            raise Disconnected("subgraph is not connected")
        return sub

    def induced_subgraph(self, vertices: Iterable[int]) -> PlaneGraph:
        vset = set(vertices)
        eset = {e for e in self.edges if e[0] in vset and e[1] in vset}
        return self.subgraph(vset, eset)

    def delete_vertex(self, x: int) -> PlaneGraph:
        return self.induced_subgraph(set(self.vertices) - {x})

    # ------------------------------------------------------------------
    # serialization
    # ------------------------------------------------------------------

    def to_pgr(self) -> str:
        lines = [str(self.n)]
        for v in self.vertices:
            lines.append(f"{v}: " + " ".join(str(w) for w in self._rotation[v]))
        lines.append("outer: " + " ".join(str(v) for v in self.outer_face.boundary))
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self.n}, m={self.m})"


def from_rotation_and_outer_dart(
    rotation: Mapping[int, Sequence[int]], dart: Dart, *, validate: bool = True
) -> PlaneGraph:
    """Build a plane graph when only one dart of the outer face is known."""
    g = PlaneGraph(rotation, outer=(dart[0], dart[1]), validate=validate)
    walk: list[int] = []
    d = dart
    while True:
        walk.append(d[0])
        d = g._next_dart(*d)
        if d == dart:
            break
    g._outer_walk = tuple(walk)
    return g


# ----------------------------------------------------------------------
# module-level operations
# ----------------------------------------------------------------------


def trace_faces(g: PlaneGraph) -> list[Face]:
    """All faces of ``g``; exactly one is unbounded.

    For a connected graph the result satisfies Euler's relation
    ``v - e + f = 2`` and the degree identity ``sum(deg F) = 2e``.
    """
    return list(g.faces)


def face_parities(g: PlaneGraph) -> tuple[bool, list[Face]]:
    """Whether all bounded faces are even, plus the bounded odd faces.

    For plane graphs this flag coincides with bipartiteness.
    """
    odd = [f for f in g.bounded_faces if f.odd]
    return (not odd, odd)


def classify_external(g: PlaneGraph) -> tuple[frozenset[int], frozenset[Edge]]:
    """Vertices and edges incident to the unbounded face."""
    return g.external_vertices, g.external_edges


def is_simple_cycle(g: PlaneGraph, cycle: Sequence[int]) -> bool:
    c = tuple(cycle)
    if len(c) < 3 or len(set(c)) != len(c):
        return False
    return all(g.has_edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c)))


def bounded_subgraph(g: PlaneGraph, cycle: Sequence[int]) -> PlaneGraph:
    """The subgraph consisting of ``cycle`` and everything embedded inside it.

    The cycle becomes the outer face of the result; rotations are the
    restrictions of the host's rotations.
    """
    c = tuple(cycle)
    if not is_simple_cycle(g, c):
        raise NotACycle(f"{list(cycle)} is not a simple cycle of the graph")
    cycle_edges = {edge_key(c[i], c[(i + 1) % len(c)]) for i in range(len(c))}

    faces, dart_face, outer_idx = g._face_data
    parent = list(range(len(faces)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    # Faces adjacent across a non-cycle edge lie on the same side of the cycle.
    for u, v in g.edges - cycle_edges:
        ra, rb = find(dart_face[(u, v)]), find(dart_face[(v, u)])
        if ra != rb:
            parent[ra] = rb
    outside = find(outer_idx)

    kept_edges = set(cycle_edges)
    for u, v in g.edges - cycle_edges:
        side_a, side_b = find(dart_face[(u, v)]), find(dart_face[(v, u)])
        if (side_a == outside) != (side_b == outside):
            raise InternalInconsistency(f"edge {u}-{v} straddles the cycle")
        if side_a != outside:
            kept_edges.add(edge_key(u, v))
    kept_vertices = set(c)
    for u, v in kept_edges:
        kept_vertices.add(u)
        kept_vertices.add(v)

    sub = g.subgraph(kept_vertices, kept_edges)
    if canonical_cycle(sub.outer_face.boundary) != canonical_cycle(c):
        raise InternalInconsistency(
            "bounded subgraph's outer face is not the given cycle",
            {"cycle": list(c), "outer": list(sub.outer_face.boundary)},
        )
    return sub


# ----------------------------------------------------------------------
# .pgr text format
# ----------------------------------------------------------------------


def parse_pgr(text: str) -> PlaneGraph:
    """Parse the canonical ``.pgr`` text format.

    Line 1 is the vertex count, then one ``v: w1 w2 ... wk`` line per vertex
    (neighbors in clockwise rotation order), then ``outer: v1 v2 ... vm``.
    ``#`` starts a comment.
    """
    rows: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise ParseError("empty file")

    lineno, first = rows[0]
    try:
        n = int(first)
    except ValueError:
        raise ParseError(f"expected vertex count, got {first!r}", lineno) from None
    if n < 1:
        raise ParseError("vertex count must be positive", lineno)
    if len(rows) != n + 2:
        raise ParseError(f"expected {n} rotation lines plus an outer line")

    rotation: dict[int, list[int]] = {}
    for lineno, line in rows[1 : n + 1]:
        if ":" not in line:
            raise ParseError("rotation line must look like 'v: w1 w2 ...'", lineno)
        head, _, tail = line.partition(":")
        try:
            v = int(head)
            nbrs = [int(tok) for tok in tail.split()]
        except ValueError:
            raise ParseError("rotation line has a non-integer token", lineno) from None
        if v in rotation:
            raise ParseError(f"duplicate rotation line for vertex {v}", lineno)
        rotation[v] = nbrs
    if sorted(rotation) != list(range(n)):
        raise ParseError(f"vertex ids must be exactly 0..{n - 1}")

    lineno, outer_line = rows[n + 1]
    if not outer_line.startswith("outer:"):
        raise ParseError("last line must start with 'outer:'", lineno)
    try:
        outer = [int(tok) for tok in outer_line[len("outer:"):].split()]
    except ValueError:
        raise ParseError("outer line has a non-integer token", lineno) from None

    try:
        g = PlaneGraph(rotation, outer)
        g.faces  # force face tracing so bad outer walks fail at parse time
    except (InconsistentRotation, OuterNotFace) as exc:
        raise ParseError(str(exc)) from exc
    return g


def load_pgr(path: str) -> PlaneGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_pgr(fh.read())


def dump_pgr(g: PlaneGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(g.to_pgr())
