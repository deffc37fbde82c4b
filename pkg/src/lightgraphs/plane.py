"""Combinatorial embeddings as rotation systems.

A plane multigraph is stored as darts (half-edges): every dart has a twin
and belongs to the cyclic rotation of its origin vertex.  Faces are the
orbits of dart -> successor-in-rotation of its twin; a rotation system is
accepted as plane only when Euler's formula holds on the connected
embedding.  Parallel edges and loops are allowed, so normal plane maps
fit without special cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Graph, build_graph
from .errors import InputError


class PlaneGraph:
    """Immutable rotation-system embedding."""

    __slots__ = ("_rot", "_twin", "_vertex_of", "_succ")

    def __init__(self, rotations: Sequence[Sequence[int]], twins: Sequence[tuple[int, int]]):
        rot = tuple(tuple(r) for r in rotations)
        dart_count = sum(len(r) for r in rot)
        vertex_of = [-1] * dart_count
        for v, r in enumerate(rot):
            for d in r:
                if not (0 <= d < dart_count):
                    raise InputError(f"dart {d} out of range")
                if vertex_of[d] != -1:
                    raise InputError(f"dart {d} appears in two rotations")
                vertex_of[d] = v
        if -1 in vertex_of:
            raise InputError("some dart is missing from the rotations")

        twin = [-1] * dart_count
        for a, b in twins:
            if not (0 <= a < dart_count and 0 <= b < dart_count):
                raise InputError(f"twin pair ({a}, {b}) out of range")
            if a == b:
                raise InputError(f"dart {a} cannot be its own twin")
            for d, other in ((a, b), (b, a)):
                if twin[d] not in (-1, other):
                    raise InputError(f"dart {d} has two twins")
                twin[d] = other
        if -1 in twin:
            raise InputError("some dart has no twin")

        succ = [-1] * dart_count
        for r in rot:
            for i, d in enumerate(r):
                succ[d] = r[(i + 1) % len(r)]

        self._rot = rot
        self._twin = tuple(twin)
        self._vertex_of = tuple(vertex_of)
        self._succ = tuple(succ)

    @property
    def n(self) -> int:
        return len(self._rot)

    @property
    def dart_count(self) -> int:
        return len(self._twin)

    @property
    def m(self) -> int:
        return len(self._twin) // 2

    def rotation(self, v: int) -> tuple[int, ...]:
        return self._rot[v]

    def twin(self, d: int) -> int:
        return self._twin[d]

    def vertex_of(self, d: int) -> int:
        return self._vertex_of[d]

    def degree(self, v: int) -> int:
        # A loop contributes both darts, hence 2, the usual convention.
        return len(self._rot[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        seen = {self._vertex_of[self._twin[d]] for d in self._rot[v]}
        seen.discard(v)
        return tuple(sorted(seen))

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and v in self.neighbors(u)

    def has_loop(self) -> bool:
        return any(self._vertex_of[self._twin[d]] == self._vertex_of[d]
                   for d in range(self.dart_count))

    def has_parallel(self) -> bool:
        ends = [tuple(sorted((self._vertex_of[d], self._vertex_of[self._twin[d]])))
                for d in range(self.dart_count) if d < self._twin[d]]
        return len(ends) != len(set(ends))

    def simple_graph(self) -> Graph:
        """Underlying simple graph: loops dropped, parallels merged."""
        edges = set()
        for d in range(self.dart_count):
            u, v = self._vertex_of[d], self._vertex_of[self._twin[d]]
            if u != v:
                edges.add((min(u, v), max(u, v)))
        return build_graph(self.n, sorted(edges))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, PlaneGraph)
                and self._rot == other._rot and self._twin == other._twin)

    def __hash__(self) -> int:
        return hash((self._rot, self._twin))

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class FaceReport:
    faces: tuple[tuple[int, ...], ...]  # dart sequences
    sizes: tuple[int, ...]


@dataclass(frozen=True)
class PlaneStats:
    min_face_size: int
    triangle_free_map: bool
    is_npm: bool
    min_degree: int


def build_plane_graph(rotations: Sequence[Sequence[int]],
                      twins: Sequence[tuple[int, int]]) -> PlaneGraph:
    """Validate and build a rotation-system embedding."""
    return PlaneGraph(rotations, twins)


def faces(pg: PlaneGraph) -> FaceReport:
    """All face orbits of a connected plane embedding.

    Rejects disconnected input, and rejects rotation systems whose genus
    is not zero (Euler check V - E + F = 2).
    """
    if pg.n == 0:
        raise InputError("empty embedding has no faces")
    _require_connected(pg)
    visited = [False] * pg.dart_count
    orbits: list[tuple[int, ...]] = []
    for start in range(pg.dart_count):
        if visited[start]:
            continue
        orbit = []
        d = start
        while not visited[d]:
            visited[d] = True
            orbit.append(d)
            d = pg._succ[pg.twin(d)]
        orbits.append(tuple(orbit))
    if pg.n - pg.m + len(orbits) != 2:
        raise InputError("rotation system is not a plane embedding")
    return FaceReport(tuple(orbits), tuple(len(o) for o in orbits))


def boundary_vertices(pg: PlaneGraph, face: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(pg.vertex_of(d) for d in face)


def _require_connected(pg: PlaneGraph) -> None:
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for d in pg.rotation(v):
            w = pg.vertex_of(pg.twin(d))
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != pg.n:
        raise InputError("embedding is disconnected")


def plane_stats(pg: PlaneGraph) -> PlaneStats:
    report = faces(pg)
    min_face = min(report.sizes)
    min_degree = min(pg.degree(v) for v in range(pg.n))
    triangle_free = min_face >= 4 and not _has_triangle(pg)
    return PlaneStats(
        min_face_size=min_face,
        triangle_free_map=triangle_free,
        is_npm=min_degree >= 3 and min_face >= 3,
        min_degree=min_degree,
    )


def _has_triangle(pg: PlaneGraph) -> bool:
    for u in range(pg.n):
        nbrs = pg.neighbors(u)
        for i, v in enumerate(nbrs):
            if v < u:
                continue
            for w in nbrs[i + 1:]:
                if pg.has_edge(v, w):
                    return True
    return False


def plane_girth(pg: PlaneGraph) -> int | float:
    """Multigraph girth: 1 with a loop, 2 with a parallel pair."""
    if pg.has_loop():
        return 1
    if pg.has_parallel():
        return 2
    from .core import girth

    return girth(pg.simple_graph())


# ---------------------------------------------------------------------------
# building embeddings from face lists


def plane_from_faces(n: int, face_cycles: Sequence[Sequence[int]]) -> PlaneGraph:
    """Embed a simple 2-connected planar graph given its face cycles.

    Orientations are normalized automatically: faces are flipped until
    every edge is traversed once in each direction, then rotations are
    recovered from the corner successors.
    """
    oriented = _orient_faces(face_cycles)
    darts: dict[tuple[int, int], int] = {}
    for cycle in oriented:
        for a, b in _cycle_pairs(cycle):
            if a == b:
                raise InputError("face cycles must not contain loops")
            if (a, b) in darts:
                raise InputError(f"directed edge ({a}, {b}) used twice")
            darts[(a, b)] = len(darts)
    twins = []
    for (a, b), d in darts.items():
        if (b, a) not in darts:
            raise InputError(f"edge ({a}, {b}) appears in only one face")
        if a < b:
            twins.append((d, darts[(b, a)]))

    # Within a face, dart (a -> b) followed by (b -> c) forces the
    # rotation at b to place (b -> c) right after (b -> a).
    rot_next: dict[int, int] = {}
    for cycle in oriented:
        pairs = list(_cycle_pairs(cycle))
        for (a, b), (_, c) in zip(pairs, pairs[1:] + pairs[:1]):
            rot_next[darts[(b, a)]] = darts[(b, c)]

    out_darts: list[list[int]] = [[] for _ in range(n)]
    for (a, _), d in darts.items():
        out_darts[a].append(d)
    rotations = []
    for v in range(n):
        if not out_darts[v]:
            raise InputError(f"vertex {v} lies on no face")
        start = min(out_darts[v])
        cycle = [start]
        while True:
            nxt = rot_next[cycle[-1]]
            if nxt == start:
                break
            cycle.append(nxt)
        if len(cycle) != len(out_darts[v]):
            raise InputError(f"rotation at vertex {v} is not a single cycle")
        rotations.append(cycle)

    pg = PlaneGraph(rotations, twins)
    report = faces(pg)
    if len(report.faces) != len(oriented):
        raise InputError("face list does not describe a plane embedding")
    return pg


def _cycle_pairs(cycle: Sequence[int]):
    for i, a in enumerate(cycle):
        yield a, cycle[(i + 1) % len(cycle)]


def _orient_faces(face_cycles: Sequence[Sequence[int]]) -> list[list[int]]:
    cycles = [list(c) for c in face_cycles]
    by_edge: dict[tuple[int, int], list[int]] = {}
    for idx, cycle in enumerate(cycles):
        for a, b in _cycle_pairs(cycle):
            by_edge.setdefault((min(a, b), max(a, b)), []).append(idx)
    for edge, owners in by_edge.items():
        if len(owners) != 2:
            raise InputError(f"edge {edge} lies on {len(owners)} faces, needs 2")

    flipped = [False] * len(cycles)
    settled = [False] * len(cycles)
    for root in range(len(cycles)):
        if settled[root]:
            continue
        settled[root] = True
        stack = [root]
        while stack:
            i = stack.pop()
            directed_i = _directed_edges(cycles[i], flipped[i])
            for a, b in directed_i:
                owners = by_edge[(min(a, b), max(a, b))]
                j = owners[0] if owners[1] == i else owners[1]
                if j == i:
                    continue
                needs_flip = (a, b) in _directed_edges(cycles[j], flipped[j])
                if settled[j]:
                    if needs_flip:
                        raise InputError("face cycles cannot be oriented consistently")
                    continue
                flipped[j] = needs_flip
                settled[j] = True
                stack.append(j)
    return [list(reversed(c)) if f else c for c, f in zip(cycles, flipped)]


def _directed_edges(cycle: list[int], flip: bool) -> set[tuple[int, int]]:
    ordered = list(reversed(cycle)) if flip else cycle
    return set(_cycle_pairs(ordered))


# ---------------------------------------------------------------------------
# stock embeddings


def cycle_plane(n: int) -> PlaneGraph:
    """C_n embedded with its two faces."""
    if n < 3:
        raise InputError("cycle embedding needs at least 3 vertices")
    ring = list(range(n))
    return plane_from_faces(n, [ring, list(reversed(ring))])


def cylinder_plane(n: int, k: int) -> PlaneGraph:
    """C_n x P_k grid on a cylinder; k=2 is the n-prism, cube is n=4, k=2.

    Vertex (ring i, position j) is i*n + j.  Faces: the outer n-gon,
    (k-1)*n quads, and the inner n-gon.
    """
    if n < 3 or k < 2:
        raise InputError("cylinder needs n >= 3 and k >= 2")
    face_cycles: list[list[int]] = [list(range(n))]
    for i in range(k - 1):
        for j in range(n):
            a = i * n + j
            b = i * n + (j + 1) % n
            face_cycles.append([a, b, b + n, a + n])
    face_cycles.append([(k - 1) * n + j for j in reversed(range(n))])
    return plane_from_faces(n * k, face_cycles)


def cube_plane() -> PlaneGraph:
    return cylinder_plane(4, 2)


def icosahedron_faces() -> list[list[int]]:
    """The twenty triangles: apex 0, pentagons 1..5 and 6..10, apex 11."""
    up = [1 + i for i in range(5)]
    low = [6 + i for i in range(5)]
    out: list[list[int]] = []
    for i in range(5):
        j = (i + 1) % 5
        out.append([0, up[i], up[j]])
        out.append([up[i], low[i], up[j]])
        out.append([low[i], up[j], low[j]])
        out.append([11, low[j], low[i]])
    return out


def icosahedron_plane() -> PlaneGraph:
    return plane_from_faces(12, icosahedron_faces())


def plane_subdivide(pg: PlaneGraph, counts: dict[tuple[int, int], int]) -> PlaneGraph:
    """Insert vertices on edges of a simple embedding, keeping it plane.

    New ids are assigned in sorted edge order, running from the smaller
    endpoint, exactly as the abstract subdivision does.
    """
    if pg.has_loop() or pg.has_parallel():
        raise InputError("plane subdivision requires a simple embedding")
    normalized = {(min(e), max(e)): t for e, t in counts.items()}
    for (u, v), t in normalized.items():
        if not pg.has_edge(u, v):
            raise InputError(f"edge ({u}, {v}) not in embedding")
        if t < 0:
            raise InputError("insertion count must be nonnegative")

    next_id = pg.n
    inserted: dict[tuple[int, int], list[int]] = {}
    for edge in sorted(normalized):
        t = normalized[edge]
        inserted[edge] = list(range(next_id, next_id + t))
        next_id += t

    new_faces = []
    for face in faces(pg).faces:
        cycle: list[int] = []
        for d in face:
            a = pg.vertex_of(d)
            b = pg.vertex_of(pg.twin(d))
            cycle.append(a)
            chain = inserted.get((min(a, b), max(a, b)), [])
            cycle.extend(chain if a < b else list(reversed(chain)))
        new_faces.append(cycle)
    return plane_from_faces(next_id, new_faces)


# ---------------------------------------------------------------------------
# rotation file format


def dumps_rotation_system(pg: PlaneGraph) -> str:
    """Canonical text: one ``v: darts`` line per vertex, then twin pairs."""
    lines = [f"{v}: {' '.join(str(d) for d in pg.rotation(v))}" for v in range(pg.n)]
    lines.append("")
    lines.extend(f"{d} {pg.twin(d)}" for d in range(pg.dart_count) if d < pg.twin(d))
    return "\n".join(lines) + "\n"


def loads_rotation_system(text: str) -> PlaneGraph:
    rotations: dict[int, list[int]] = {}
    twins: list[tuple[int, int]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if ":" in line:
                head, tail = line.split(":", 1)
                rotations[int(head)] = [int(tok) for tok in tail.split()]
            else:
                a, b = line.split()
                twins.append((int(a), int(b)))
        except ValueError:
            raise InputError(f"bad rotation line: {raw!r}") from None
    if sorted(rotations) != list(range(len(rotations))):
        raise InputError("rotation lines must cover vertices 0..n-1")
    ordered = [rotations[v] for v in range(len(rotations))]
    return PlaneGraph(ordered, twins)


def load_rotation_system(path: str) -> PlaneGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_rotation_system(fh.read())


def save_rotation_system(pg: PlaneGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_rotation_system(pg))
