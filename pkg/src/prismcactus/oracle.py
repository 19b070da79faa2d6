"""Independent brute-force ground truth and corpus tooling.

Two exhaustive searches live here.  ``brute_set_of_chains`` enumerates
candidate spines (paths or even cycles) in increasing length and derives the
chains as the components of the host minus the spine, each glued back at a
single attachment vertex; the first candidate passing the validator wins.
It is both the oracle for the constructive operations and the backend for
the bipartite base theorem whose proof lives outside this project.
``brute_hamilton_prism`` searches the prism for a Hamilton cycle, optionally
forced to use vertical edges at given vertices, and certifies absence by
exhaustion.

Mark service is *strict* by default: a marked vertex is either on the spine
or a far anchor of its chain (never the attachment vertex).  The downstream
cactus recursion needs exactly this, and the constructive machinery marks
block junctions to keep its pieces disjoint.

Corpus generation combines hand-pinned fixtures, a seeded vertex-split
mutator, and a planar_code ingestion path; duplicates are removed with a
canonical rotation-system form.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .embedgraph import (
    Edge,
    PlaneGraph,
    canonical_cycle,
    edge_key,
    from_rotation_and_outer_dart,
    parse_pgr,
)
from .errors import LimitExceeded, ParseError, TooLarge, TooSmall
from .goodness import (
    Chain,
    SetOfChains,
    judge_chain,
    make_set_of_chains,
    validate_cycle_set_of_chains,
    validate_set_of_chains,
)
from .prism import PrismCycle, Step, normalize_cycle
from .structure import CircuitGraph, is_circuit_graph, is_three_connected

DEFAULT_PRISM_BOUND = 12
DEFAULT_CHAINS_BOUND = 16


# ----------------------------------------------------------------------
# exhaustive set-of-chains search
# ----------------------------------------------------------------------


def _all_paths(host: PlaneGraph, x: int, y: int) -> list[tuple[int, ...]]:
    paths: list[tuple[int, ...]] = []
    path = [x]
    visited = {x}

    def dfs(v: int) -> None:
        if v == y:
            paths.append(tuple(path))
            return
        for w in sorted(host.neighbors(v)):
            if w not in visited:
                visited.add(w)
                path.append(w)
                dfs(w)
                path.pop()
                visited.remove(w)

    dfs(x)
    paths.sort(key=lambda p: (len(p), p))
    return paths


def _all_cycles(host: PlaneGraph, even_only: bool) -> list[tuple[int, ...]]:
    cycles: list[tuple[int, ...]] = []
    for s in sorted(host.vertices):
        path = [s]
        visited = {s}

        def dfs(v: int) -> None:
            for w in sorted(host.neighbors(v)):
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    if not even_only or len(path) % 2 == 0:
                        cycles.append(tuple(path))
                elif w not in visited and w > s:
                    visited.add(w)
                    path.append(w)
                    dfs(w)
                    path.pop()
                    visited.remove(w)

        dfs(s)
    cycles.sort(key=lambda c: (len(c), c))
    return cycles


def _components_off_spine(host: PlaneGraph, spine: set[int]) -> list[frozenset[int]]:
    comps: list[frozenset[int]] = []
    seen: set[int] = set(spine)
    for v in sorted(host.vertices):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            a = stack.pop()
            for b in host.neighbors(a):
                if b not in seen and b not in comp:
                    comp.add(b)
                    stack.append(b)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def _fit_chains(
    host: PlaneGraph,
    spine: tuple[int, ...],
    marks: tuple[int, ...],
    avoid: frozenset[int],
    strict_marks: bool,
) -> list[Chain] | None:
    """Assign one attachment vertex per off-spine component, or fail."""
    spine_set = set(spine)
    if any(a in host.vertices and a not in spine_set for a in avoid):
        return None
    comps = _components_off_spine(host, spine_set)
    if any(comp & avoid for comp in comps):
        return None

    blocked = set(avoid)
    if strict_marks:
        blocked |= {u for u in marks if u in spine_set}

    candidates: list[list[Chain]] = []
    for comp in sorted(comps, key=min):
        comp_marks = [u for u in marks if u in comp]
        options: list[Chain] = []
        attach_pool = sorted(
            {p for v in comp for p in host.neighbors(v) if p in spine_set} - blocked
        )
        for p in attach_pool:
            chain = Chain.induced(host, comp | {p}, attach=p)
            ok, _ = judge_chain(host, chain, far=None)
            if not ok:
                continue
            if all(judge_chain(host, chain, far=u)[0] for u in comp_marks):
                options.append(chain)
        if not options:
            return None
        candidates.append(options)

    chosen: list[Chain] = []
    used: set[int] = set()

    def assign(i: int) -> bool:
        if i == len(candidates):
            return True
        for chain in candidates[i]:
            if chain.attach in used:
                continue
            used.add(chain.attach)
            chosen.append(chain)
            if assign(i + 1):
                return True
            chosen.pop()
            used.remove(chain.attach)
        return False

    if not assign(0):
        return None
    return chosen


def brute_set_of_chains(
    b: CircuitGraph | PlaneGraph,
    x: int | None,
    y: int | None,
    marks: tuple[int, ...] = (),
    parity: int | None = None,
    cyclic: bool = False,
    *,
    avoid_chained: tuple[int, ...] = (),
    strict_marks: bool = True,
    max_n: int = DEFAULT_CHAINS_BOUND,
) -> SetOfChains | None:
    """First valid set of chains in deterministic search order, or None.

    ``parity`` constrains the spine edge count modulo 2 (None = any).  With
    ``cyclic`` the spine is an even cycle and ``x``/``y`` are ignored.
    Vertices in ``avoid_chained`` may not appear in any chain.
    """
    host = b.graph if isinstance(b, CircuitGraph) else b
    if host.n > max_n:
        raise TooLarge(f"host has {host.n} > {max_n} vertices")
    marks = tuple(marks)
    avoid = frozenset(avoid_chained)

    if cyclic:
        spines = _all_cycles(host, even_only=True)
    else:
        assert x is not None and y is not None
        spines = _all_paths(host, x, y)

    for spine in spines:
        edge_count = len(spine) if cyclic else len(spine) - 1
        if parity is not None and edge_count % 2 != parity:
            continue
        chains = _fit_chains(host, spine, marks, avoid, strict_marks)
        if chains is None:
            continue
        s = make_set_of_chains(spine, chains, marks, cyclic=cyclic)
        if cyclic:
            verdict = validate_cycle_set_of_chains(host, marks, s, strict_marks=strict_marks)
        else:
            verdict = validate_set_of_chains(host, x, y, marks, s, strict_marks=strict_marks)
        if verdict:
            return s
    return None


# ----------------------------------------------------------------------
# exhaustive prism Hamilton search
# ----------------------------------------------------------------------


def brute_hamilton_prism(
    g,
    required_vertical: tuple[int, ...] = (),
    *,
    max_n: int = DEFAULT_PRISM_BOUND,
) -> PrismCycle | None:
    """Hamilton cycle of the prism using vertical edges at all required
    vertices, or None once the search space is exhausted."""
    if hasattr(g, "neighbors") and hasattr(g, "vertices"):
        adj = {v: sorted(g.neighbors(v)) for v in g.vertices}
    else:
        adj = {v: sorted(ns) for v, ns in g.items()}
    n = len(adj)
    if n > max_n:
        raise TooLarge(f"graph has {n} > {max_n} vertices")
    required = sorted(set(required_vertical))
    if any(v not in adj for v in required):
        raise KeyError("required vertical at a vertex not in the graph")
    if n == 0:
        return None

    def prism_neighbors(s: Step) -> list[Step]:
        v, layer = s
        out: list[Step] = [(w, layer) for w in adj[v]]
        out.append((v, "b" if layer == "a" else "a"))
        return sorted(out)

    if required:
        start: Step = (required[0], "a")
        first: list[Step] = [(required[0], "b")]  # forced vertical, WLOG first
    else:
        start = (min(adj), "a")
        first = prism_neighbors(start)

    total = 2 * n
    visited: set[Step] = {start}
    walk: list[Step] = [start]
    used_vertical: set[int] = set()
    result: list[PrismCycle] = []

    def vertical_feasible() -> bool:
        for v in required:
            if v in used_vertical:
                continue
            a_done = (v, "a") in visited and (v, "a") != walk[-1]
            b_done = (v, "b") in visited and (v, "b") != walk[-1]
            if a_done and b_done:
                return False
        return True

    def degree_feasible() -> bool:
        # every unvisited prism vertex still needs two usable neighbors
        end = walk[-1]
        for v in adj:
            for layer in ("a", "b"):
                s = (v, layer)
                if s in visited:
                    continue
                free = 0
                for t in prism_neighbors(s):
                    if t not in visited or t == end or t == start:
                        free += 1
                        if free >= 2:
                            break
                if free < 2:
                    return False
        return True

    def extend(options: list[Step]) -> bool:
        for nxt in options:
            if nxt in visited:
                continue
            is_vertical = nxt[0] == walk[-1][0]
            visited.add(nxt)
            walk.append(nxt)
            if is_vertical:
                used_vertical.add(nxt[0])
            ok_here = vertical_feasible() and degree_feasible()
            if ok_here:
                if len(walk) == total:
                    if start in prism_neighbors(nxt) and all(
                        v in used_vertical for v in required
                    ):
                        result.append(normalize_cycle(walk))
                        return True
                elif extend(prism_neighbors(nxt)):
                    return True
            walk.pop()
            visited.remove(nxt)
            if is_vertical:
                used_vertical.discard(nxt[0])
        return False

    if extend(first):
        return result[0]
    return None


# ----------------------------------------------------------------------
# pinned fixtures
# ----------------------------------------------------------------------


def plane_graph_from_points(
    points: dict[int, tuple[float, float]],
    edges: list[tuple[int, int]],
    outer: tuple[int, ...],
) -> PlaneGraph:
    """Rotation system of a straight-line drawing: clockwise = decreasing angle."""
    nbrs: dict[int, list[int]] = {v: [] for v in points}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    rotation = {}
    for v, ns in nbrs.items():
        vx, vy = points[v]
        rotation[v] = tuple(
            sorted(ns, key=lambda w: -math.atan2(points[w][1] - vy, points[w][0] - vx))
        )
    return PlaneGraph(rotation, outer)


def cycle_graph(k: int) -> PlaneGraph:
    pts = {
        i: (math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k)) for i in range(k)
    }
    edges = [(i, (i + 1) % k) for i in range(k)]
    return plane_graph_from_points(pts, edges, outer=tuple(range(k - 1, -1, -1)))


def cycle_with_chords(k: int, chords: list[tuple[int, int]]) -> PlaneGraph:
    """Convex k-cycle plus straight chords (caller keeps them non-crossing)."""
    pts = {
        i: (math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k)) for i in range(k)
    }
    edges = [(i, (i + 1) % k) for i in range(k)] + list(chords)
    return plane_graph_from_points(pts, edges, outer=tuple(range(k - 1, -1, -1)))


def octahedron() -> PlaneGraph:
    # Schlegel diagram with outer triangle 0,1,2 and inner triangle 3,4,5.
    pts = {
        0: (0.0, 2.0),
        1: (-2.0, -1.0),
        2: (2.0, -1.0),
        3: (0.5, 0.2),
        4: (-0.5, 0.2),
        5: (0.0, -0.6),
    }
    edges = [
        (0, 1), (0, 2), (0, 3), (0, 4),
        (1, 2), (1, 4), (1, 5),
        (2, 3), (2, 5),
        (3, 4), (3, 5),
        (4, 5),
    ]
    return plane_graph_from_points(pts, edges, outer=(1, 0, 2))


def cube() -> PlaneGraph:
    pts = {
        0: (-2.0, 2.0), 1: (2.0, 2.0), 2: (2.0, -2.0), 3: (-2.0, -2.0),
        4: (-1.0, 1.0), 5: (1.0, 1.0), 6: (1.0, -1.0), 7: (-1.0, -1.0),
    }
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4),
             (0, 4), (1, 5), (2, 6), (3, 7)]
    return plane_graph_from_points(pts, edges, outer=(0, 1, 2, 3))


def double_wheel(m: int) -> PlaneGraph:
    """Rim cycle of length m plus one hub inside and one outside; all degrees
    at least 4, 3-connected, planar.  m = 4 gives the octahedron."""
    if m < 3:
        raise ValueError("rim needs at least 3 vertices")
    t, u = m, m + 1
    rotation: dict[int, tuple[int, ...]] = {}
    for i in range(m):
        rotation[i] = ((i - 1) % m, t, (i + 1) % m, u)
    rotation[t] = tuple([0] + list(range(m - 1, 0, -1)))
    rotation[u] = tuple(range(m))
    return PlaneGraph(rotation, outer=(u, 1, 0))


def antiprism(m: int) -> PlaneGraph:
    """Two concentric m-cycles joined by a band of 2m triangles; 4-regular."""
    if m < 3:
        raise ValueError("antiprism needs m >= 3")
    pts: dict[int, tuple[float, float]] = {}
    for i in range(m):
        ang = 2 * math.pi * i / m
        pts[i] = (2 * math.cos(ang), 2 * math.sin(ang))
        ang_b = 2 * math.pi * (i + 0.5) / m
        pts[m + i] = (math.cos(ang_b), math.sin(ang_b))
    edges = []
    for i in range(m):
        edges.append((i, (i + 1) % m))
        edges.append((m + i, m + (i + 1) % m))
        edges.append((i, m + i))
        edges.append(((i + 1) % m, m + i))
    return plane_graph_from_points(pts, edges, outer=tuple(range(m - 1, -1, -1)) if m > 3 else (2, 1, 0))


def grid_graph(rows: int, cols: int) -> PlaneGraph:
    """rows x cols grid; vertex (r, c) gets id r*cols + c."""
    pts = {r * cols + c: (float(c), float(rows - 1 - r)) for r in range(rows) for c in range(cols)}
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((r * cols + c, r * cols + c + 1))
            if r + 1 < rows:
                edges.append((r * cols + c, (r + 1) * cols + c))
    outer = (
        [c for c in range(cols)]
        + [r * cols + cols - 1 for r in range(1, rows)]
        + [(rows - 1) * cols + c for c in range(cols - 2, -1, -1)]
        + [r * cols for r in range(rows - 2, 0, -1)]
    )
    return plane_graph_from_points(pts, edges, outer=tuple(outer))


def pentagon_hub() -> PlaneGraph:
    """Pentagon x,c1..c4 with a hub adjacent to c1..c4 (degree 4 inside).

    Deleting x leaves a single non-bipartite block while x keeps degree 2;
    exercises the far-side parity construction.
    """
    pts = {
        0: (0.0, 2.0),     # x
        1: (-1.9, 0.6),    # c1
        2: (-1.2, -1.6),   # c2
        3: (1.2, -1.6),    # c3
        4: (1.9, 0.6),     # c4
        5: (0.0, -0.4),    # hub
    }
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 1), (5, 2), (5, 3), (5, 4)]
    return plane_graph_from_points(pts, edges, outer=(0, 1, 2, 3, 4))


def bowtie_squares() -> PlaneGraph:
    """Two 4-cycles sharing one vertex; has a cutvertex, so not a circuit
    graph (the outer walk passes the shared vertex twice)."""
    pts = {
        0: (0.0, 0.0),
        1: (-2.0, 0.5), 2: (-2.0, -1.5), 3: (-0.5, -2.0),
        4: (2.0, 0.5), 5: (2.0, -1.5), 6: (0.5, -2.0),
    }
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)]
    return plane_graph_from_points(pts, edges, outer=(0, 4, 5, 6, 0, 3, 2, 1))


def k2_graph() -> PlaneGraph:
    return PlaneGraph({0: (1,), 1: (0,)}, outer=(0, 1))


# ----------------------------------------------------------------------
# canonical form and corpus
# ----------------------------------------------------------------------


def canonical_form(g: PlaneGraph) -> tuple:
    """Canonical encoding of the rotation system, minimized over root darts
    and reflection; two plane graphs are sphere-equivalent (up to relabeling
    and mirror image) iff their forms agree."""
    best: tuple | None = None
    for u in g.vertices:
        for v in g.neighbors(u):
            for flip in (False, True):
                code = _bfs_code(g, u, v, flip)
                if best is None or code < best:
                    best = code
    return best if best is not None else (g.n,)


def _bfs_code(g: PlaneGraph, root: int, root_nbr: int, flip: bool) -> tuple:
    label: dict[int, int] = {root: 0}
    order: list[tuple[int, int]] = [(root, root_nbr)]  # (vertex, rotation start)
    rows: list[tuple[int, ...]] = []
    i = 0
    while i < len(order):
        v, start = order[i]
        i += 1
        rot = g.rotation(v)
        j = rot.index(start)
        seq = [rot[(j + k) % len(rot)] for k in range(len(rot))]
        if flip:
            seq = [seq[0]] + seq[1:][::-1]
        row = []
        for w in seq:
            if w not in label:
                label[w] = len(label)
                order.append((w, v))
            row.append(label[w])
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    graph: PlaneGraph
    meta: dict = field(compare=False)

    def describe(self) -> str:
        m = self.meta
        flags = ",".join(k for k in ("bipartite", "circuit", "three_connected") if m.get(k))
        return (
            f"{self.name} n={m['n']} m={m['m']} min_deg={m['min_degree']} "
            f"min_int_deg={m['min_internal_degree']} [{flags}]"
        )


@dataclass
class Corpus:
    entries: list[CorpusEntry]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def manifest(self) -> str:
        return "".join(e.describe() + "\n" for e in self.entries)


def _entry(name: str, g: PlaneGraph) -> CorpusEntry:
    degs = [g.degree(v) for v in g.vertices]
    internal = set(g.vertices) - g.external_vertices
    try:
        three = g.n >= 4 and is_three_connected(g)
    except TooSmall:
        three = False
    meta = {
        "n": g.n,
        "m": g.m,
        "min_degree": min(degs) if degs else 0,
        "min_internal_degree": min((g.degree(v) for v in internal), default=99),
        "bipartite": g.is_bipartite,
        "circuit": g.n >= 3 and is_circuit_graph(g),
        "three_connected": three,
    }
    return CorpusEntry(name, g, meta)


def builtin_fixtures() -> list[CorpusEntry]:
    out: list[CorpusEntry] = []
    for k in range(3, 11):
        out.append(_entry(f"c{k}", cycle_graph(k)))
    out.append(_entry("octahedron", octahedron()))
    out.append(_entry("cube", cube()))
    for m in (5, 6, 7, 8, 9):
        out.append(_entry(f"double_wheel_{m}", double_wheel(m)))
    for m in (4, 5):
        out.append(_entry(f"antiprism_{m}", antiprism(m)))
    out.append(_entry("grid_2x3", grid_graph(2, 3)))
    out.append(_entry("grid_3x3", grid_graph(3, 3)))
    out.append(_entry("grid_3x4", grid_graph(3, 4)))
    out.append(_entry("c5_chord", cycle_with_chords(5, [(0, 2)])))
    out.append(_entry("c6_chord_short", cycle_with_chords(6, [(0, 2)])))
    out.append(_entry("c6_chord_long", cycle_with_chords(6, [(0, 3)])))
    out.append(_entry("c7_chord", cycle_with_chords(7, [(0, 2)])))
    out.append(_entry("c8_chord_long", cycle_with_chords(8, [(0, 4)])))
    out.append(_entry("c8_fan", cycle_with_chords(8, [(0, 2), (0, 4), (0, 6)])))
    out.append(_entry("c7_fan", cycle_with_chords(7, [(0, 2), (0, 4)])))
    out.append(_entry("pentagon_hub", pentagon_hub()))
    out.append(_entry("bowtie_squares", bowtie_squares()))
    return out


def vertex_split(g: PlaneGraph, v: int, i: int, j: int) -> PlaneGraph:
    """Split ``v`` along rotation positions i < j; the second arc moves to a
    new vertex joined to ``v``.  Preserves the embedding."""
    rot = g.rotation(v)
    k = len(rot)
    if not (0 <= i < j < k):
        raise ValueError("split positions out of range")
    arc1 = list(rot[i:j])
    arc2 = list(rot[j:]) + list(rot[:i])
    if len(arc1) < 2 or len(arc2) < 2:
        raise ValueError("each side of a split needs at least 2 neighbors")
    nv = max(g.vertices) + 1
    rotation = {w: list(g.rotation(w)) for w in g.vertices}
    rotation[v] = arc1 + [nv]
    rotation[nv] = arc2 + [v]
    for w in arc2:
        rotation[w] = [nv if z == v else z for z in rotation[w]]

    outer = g.outer_face.boundary
    dart = None
    for a, b in zip(outer, outer[1:] + outer[:1]):
        if v not in (a, b):
            dart = (a, b)
            break
    if dart is None:
        raise ValueError("outer face too small to re-anchor after a split")
    return from_rotation_and_outer_dart(rotation, dart)


def _random_splits(rng: random.Random, base: PlaneGraph, rounds: int) -> list[PlaneGraph]:
    out: list[PlaneGraph] = []
    g = base
    for _ in range(rounds):
        splittable = [v for v in g.vertices if g.degree(v) >= 6]
        if not splittable:
            break
        v = rng.choice(splittable)
        k = g.degree(v)
        i = rng.randrange(0, k - 5)
        j = rng.randrange(i + 3, min(i + k - 2, k))
        try:
            g = vertex_split(g, v, i, j)
        except ValueError:
            break
        out.append(g)
    return out


def generate_corpus(
    max_n: int = 11,
    seed: int = 0,
    *,
    split_rounds: int = 40,
    min_degree: int | None = None,
    min_internal_degree: int | None = None,
    bipartite: bool | None = None,
    circuit: bool | None = None,
    three_connected: bool | None = None,
    extra: list[CorpusEntry] | None = None,
    hard_limit: int = 14,
) -> Corpus:
    """Deterministic corpus: fixtures, seeded vertex splits, optional extras.

    Entries are filtered by the given predicates and deduplicated by the
    canonical rotation-system form (only attempted for n <= 10; larger
    fixtures are distinct by construction).
    """
    if max_n > hard_limit:
        raise LimitExceeded(f"max_n {max_n} exceeds hard limit {hard_limit}")
    rng = random.Random(seed)
    entries = builtin_fixtures()
    for base_name in ("double_wheel_6", "double_wheel_7", "double_wheel_8"):
        base = next(e.graph for e in entries if e.name == base_name)
        for t, g in enumerate(_random_splits(rng, base, split_rounds)):
            entries.append(_entry(f"{base_name}_split{t}", g))
    if extra:
        entries.extend(extra)

    picked: list[CorpusEntry] = []
    seen_forms: set[tuple] = set()
    for e in entries:
        m = e.meta
        if m["n"] > max_n:
            continue
        if min_degree is not None and m["min_degree"] < min_degree:
            continue
        if min_internal_degree is not None and m["min_internal_degree"] < min_internal_degree:
            continue
        if bipartite is not None and m["bipartite"] != bipartite:
            continue
        if circuit is not None and m["circuit"] != circuit:
            continue
        if three_connected is not None and m["three_connected"] != three_connected:
            continue
        if m["n"] <= 10:
            form = canonical_form(e.graph)
            if form in seen_forms:
                continue
            seen_forms.add(form)
        picked.append(e)
    return Corpus(picked)


# ----------------------------------------------------------------------
# planar_code ingestion
# ----------------------------------------------------------------------

PLANAR_CODE_HEADER = b">>planar_code<<"


def read_planar_code(data: bytes) -> list[PlaneGraph]:
    """Binary planar_code: header, then per graph a vertex-count byte and
    0-terminated clockwise neighbor lists (1-based, unsigned bytes)."""
    if not data.startswith(PLANAR_CODE_HEADER):
        raise ParseError("missing >>planar_code<< header")
    pos = len(PLANAR_CODE_HEADER)
    graphs: list[PlaneGraph] = []
    while pos < len(data):
        n = data[pos]
        pos += 1
        if n == 0:
            raise ParseError("planar_code vertex count of zero")
        rotation: dict[int, list[int]] = {}
        for v in range(n):
            nbrs: list[int] = []
            while True:
                if pos >= len(data):
                    raise ParseError("truncated planar_code record")
                byte = data[pos]
                pos += 1
                if byte == 0:
                    break
                nbrs.append(byte - 1)
            rotation[v] = nbrs
        g = from_rotation_and_outer_dart(rotation, (0, rotation[0][0]))
        best = min(f.canonical for f in g.faces)
        for f in g.faces:
            if f.canonical == best:
                g = PlaneGraph(rotation, outer=f.boundary)
                break
        graphs.append(g)
    return graphs


def load_planar_code(path: str) -> list[PlaneGraph]:
    with open(path, "rb") as fh:
        return read_planar_code(fh.read())


def load_graph(path: str, fmt: str = "pgr") -> list[PlaneGraph]:
    if fmt == "pgr":
        with open(path, "r", encoding="utf-8") as fh:
            return [parse_pgr(fh.read())]
    if fmt == "planar_code":
        return load_planar_code(path)
    raise ParseError(f"unknown format {fmt!r}")
