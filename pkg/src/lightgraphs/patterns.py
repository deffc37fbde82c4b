"""Degree-constrained configuration matching.

A pattern constrains the host-graph degrees of a small subgraph: a path,
a star (center plus its full neighborhood), a cycle, or a thread profile
(a center vertex together with lower bounds on the lengths of its
incident maximal threads).  Matching is anchored backtracking over the
host graph; witnesses come out in lexicographic order, so the first one
found is the canonical one.

Matchers only need ``n``, ``degree``, ``neighbors`` and ``has_edge`` from
the host, so they run unchanged on plane graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Protocol, Union

from .errors import InputError


class DegreeHost(Protocol):
    @property
    def n(self) -> int: ...

    def degree(self, v: int) -> int: ...

    def neighbors(self, v: int) -> tuple[int, ...]: ...

    def has_edge(self, u: int, v: int) -> bool: ...


@dataclass(frozen=True)
class DegSpec:
    """One degree constraint: exact k, at most k, at least k, or anything."""

    kind: str  # this: "exact" | "at_most" | "at_least" | "any"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("exact", "at_most", "at_least", "any"):
            raise InputError(f"unknown degree spec kind {self.kind!r}")
        if self.kind != "any" and self.k < 1:
            raise InputError("degree spec bound must be at least 1")

    def matches(self, degree: int) -> bool:
        if self.kind == "exact":
            return degree == self.k
        if self.kind == "at_most":
            return degree <= self.k
        if self.kind == "at_least":
            return degree >= self.k
        return True


def exact(k: int) -> DegSpec:
    return DegSpec("exact", k)


def at_most(k: int) -> DegSpec:
    return DegSpec("at_most", k)


def at_least(k: int) -> DegSpec:
    return DegSpec("at_least", k)


ANY = DegSpec("any")


@dataclass(frozen=True)
class PathPattern:
    """Degree pattern along a simple path; matches in either direction."""

    specs: tuple[DegSpec, ...]

    def __post_init__(self):
        if len(self.specs) < 2:
            raise InputError("path pattern needs at least two vertices")


@dataclass(frozen=True)
class StarPattern:
    """Center of the given degree with its full neighbor multiset."""

    center: DegSpec
    leaves: tuple[DegSpec, ...]

    def __post_init__(self):
        if not self.leaves:
            raise InputError("star pattern needs at least one leaf")
        if self.center.kind == "exact" and self.center.k != len(self.leaves):
            raise InputError(
                f"star center degree {self.center.k} does not match "
                f"{len(self.leaves)} leaves"
            )


@dataclass(frozen=True)
class CyclePattern:
    """Degree pattern around a cycle, up to rotation and reflection."""

    specs: tuple[DegSpec, ...]

    def __post_init__(self):
        if len(self.specs) < 3:
            raise InputError("cycle pattern needs at least three vertices")


@dataclass(frozen=True)
class ThreadEntry:
    """Requirement on one incident thread of the profile's center.

    The assigned thread must have at least ``min_len`` internal
    2-vertices.  When ``zero_neighbor`` is set and the assigned thread has
    length zero, the vertex at its far end must satisfy it.
    """

    min_len: int
    zero_neighbor: DegSpec | None = None

    def __post_init__(self):
        if self.min_len < 0:
            raise InputError("thread length bound must be nonnegative")

    def admits(self, segment: tuple[int, ...], far_degree: int) -> bool:
        if len(segment) < self.min_len:
            return False
        if self.zero_neighbor is not None and len(segment) == 0:
            return self.zero_neighbor.matches(far_degree)
        return True


@dataclass(frozen=True)
class ThreadProfilePattern:
    """Center vertex plus requirements on distinct incident threads."""

    center: DegSpec
    entries: tuple[ThreadEntry, ...]

    def __post_init__(self):
        if not self.entries:
            raise InputError("thread profile needs at least one entry")


Pattern = Union[PathPattern, StarPattern, CyclePattern, ThreadProfilePattern]


@dataclass(frozen=True)
class Witness:
    """A concrete occurrence of a pattern.

    For paths and cycles the vertices are listed in pattern order.  For
    stars the center comes first, then the leaves in assignment order.
    For thread profiles the center comes first, then each assigned thread
    from the center outward including its far endpoint.
    """

    pattern: str
    vertices: tuple[int, ...]


def render_pattern(p: Pattern) -> str:
    """DSL text for a pattern; inverse of the parser in theorems."""
    if isinstance(p, PathPattern):
        return f"path({_render_specs(p.specs)})"
    if isinstance(p, StarPattern):
        return f"star({_render_spec(p.center)};{_render_specs(p.leaves)})"
    if isinstance(p, CyclePattern):
        return f"cycle({_render_specs(p.specs)})"
    if isinstance(p, ThreadProfilePattern):
        entries = ",".join(_render_entry(e) for e in p.entries)
        return f"threads({_render_spec(p.center)};[{entries}])"
    raise InputError(f"unknown pattern {p!r}")


def _render_spec(s: DegSpec) -> str:
    if s.kind == "exact":
        return str(s.k)
    if s.kind == "at_most":
        return f"{s.k}-"
    if s.kind == "at_least":
        return f"{s.k}+"
    return "*"


def _render_specs(specs) -> str:
    return ",".join(_render_spec(s) for s in specs)


def _render_entry(e: ThreadEntry) -> str:
    if e.zero_neighbor is None:
        return str(e.min_len)
    return f"{e.min_len}:{_render_spec(e.zero_neighbor)}"


def find_pattern(g: DegreeHost, p: Pattern) -> Witness | None:
    """Lexicographically smallest witness of p in g, or None."""
    for vertices in _iter_matches(g, p):
        return Witness(render_pattern(p), vertices)
    return None


def find_all(g: DegreeHost, p: Pattern, limit: int) -> list[Witness]:
    """Up to ``limit`` distinct witnesses, deduplicated and sorted.

    Witnesses that differ only by a symmetry of the pattern (reversal of a
    palindromic path, a rotation or reflection fixing the cycle specs,
    permutations within equal star leaves or equal thread entries) count
    once.  Enumeration is lexicographic and each orbit's minimum is itself
    a witness, so keeping only self-canonical matches yields the smallest
    ``limit`` representatives.
    """
    if limit < 1:
        raise InputError("limit must be at least 1")
    name = render_pattern(p)
    out: list[Witness] = []
    for vertices in _iter_matches(g, p):
        if _canonical(g, p, vertices) != vertices:
            continue
        out.append(Witness(name, vertices))
        if len(out) == limit:
            break
    return out


def omega_k(g: DegreeHost, kappa: int) -> int | None:
    """Minimum degree sum over simple paths on kappa vertices, or None."""
    if kappa < 1:
        raise InputError("path length must be at least 1")
    if kappa == 1:
        return min((g.degree(v) for v in range(g.n)), default=None)
    best: int | None = None
    path: list[int] = []
    on_path = [False] * g.n

    def extend(total: int) -> None:
        nonlocal best
        if len(path) == kappa:
            # Each path is seen from both ends; count it once.
            if path[0] < path[-1]:
                if best is None or total < best:
                    best = total
            return
        for w in g.neighbors(path[-1]):
            if on_path[w]:
                continue
            path.append(w)
            on_path[w] = True
            extend(total + g.degree(w))
            on_path[w] = False
            path.pop()

    for v in range(g.n):
        path.append(v)
        on_path[v] = True
        extend(g.degree(v))
        on_path[v] = False
        path.pop()
    return best


# ---------------------------------------------------------------------------
# enumeration


def _iter_matches(g: DegreeHost, p: Pattern) -> Iterator[tuple[int, ...]]:
    if isinstance(p, PathPattern):
        return _iter_chains(g, p.specs, closed=False)
    if isinstance(p, CyclePattern):
        return _iter_chains(g, p.specs, closed=True)
    if isinstance(p, StarPattern):
        return _iter_stars(g, p)
    if isinstance(p, ThreadProfilePattern):
        return _iter_thread_profiles(g, p)
    raise InputError(f"unknown pattern {p!r}")


def _iter_chains(g, specs, closed: bool) -> Iterator[tuple[int, ...]]:
    length = len(specs)
    chain: list[int] = []
    used: set[int] = set()

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        if i == length:
            if not closed or g.has_edge(chain[-1], chain[0]):
                yield tuple(chain)
            return
        candidates = range(g.n) if i == 0 else g.neighbors(chain[-1])
        spec = specs[i]
        for v in candidates:
            if v in used or not spec.matches(g.degree(v)):
                continue
            chain.append(v)
            used.add(v)
            yield from extend(i + 1)
            used.remove(v)
            chain.pop()

    return extend(0)


def _iter_stars(g, p: StarPattern) -> Iterator[tuple[int, ...]]:
    k = len(p.leaves)
    for c in range(g.n):
        if g.degree(c) != k or not p.center.matches(k):
            continue
        nbrs = g.neighbors(c)
        taken = [False] * k
        assigned: list[int] = []

        def place(i: int) -> Iterator[tuple[int, ...]]:
            if i == k:
                yield (c, *assigned)
                return
            for j in range(k):
                if taken[j] or not p.leaves[i].matches(g.degree(nbrs[j])):
                    continue
                taken[j] = True
                assigned.append(nbrs[j])
                yield from place(i + 1)
                assigned.pop()
                taken[j] = False

        yield from place(0)


def incident_threads(g: DegreeHost, v: int) -> list[tuple[tuple[int, ...], int]]:
    """One (internal vertices, far endpoint) segment per edge at v.

    Walking an edge of v runs through degree-2 vertices until a vertex of
    other degree, or v itself for a thread looping back.  A thread whose
    both endpoints are v therefore shows up once per end, matching how
    charge flows along it.
    """
    segments = []
    for u in g.neighbors(v):
        seg: list[int] = []
        prev, cur = v, u
        while g.degree(cur) == 2 and cur != v:
            seg.append(cur)
            following = [w for w in g.neighbors(cur) if w != prev]
            if not following:
                break  # double edge in a multigraph; treat as the far end
            prev, cur = cur, following[0]
        segments.append((tuple(seg), cur))
    return segments


def _iter_thread_profiles(g, p: ThreadProfilePattern) -> Iterator[tuple[int, ...]]:
    k = len(p.entries)
    for c in range(g.n):
        if not p.center.matches(g.degree(c)) or g.degree(c) < k:
            continue
        segments = incident_threads(g, c)
        order = sorted(
            range(len(segments)),
            key=lambda i: segments[i][0] + (segments[i][1],),
        )
        taken = [False] * len(segments)
        chosen: list[int] = []

        def place(i: int) -> Iterator[tuple[int, ...]]:
            if i == k:
                flat: list[int] = [c]
                for idx in chosen:
                    seg, far = segments[idx]
                    flat.extend(seg)
                    flat.append(far)
                yield tuple(flat)
                return
            entry = p.entries[i]
            for idx in order:
                if taken[idx]:
                    continue
                seg, far = segments[idx]
                if not entry.admits(seg, g.degree(far)):
                    continue
                taken[idx] = True
                chosen.append(idx)
                yield from place(i + 1)
                chosen.pop()
                taken[idx] = False

        yield from place(0)


# ---------------------------------------------------------------------------
# canonical forms under pattern symmetry


def _canonical(g, p: Pattern, w: tuple[int, ...]) -> tuple[int, ...]:
    if isinstance(p, PathPattern):
        if p.specs == tuple(reversed(p.specs)):
            return min(w, tuple(reversed(w)))
        return w
    if isinstance(p, CyclePattern):
        return min(_cycle_orbit(p.specs, w))
    if isinstance(p, StarPattern):
        return (w[0], *_sort_within_groups(p.leaves, w[1:]))
    if isinstance(p, ThreadProfilePattern):
        segments = _split_thread_witness(g, w)
        ordered = _sort_within_groups(p.entries, segments)
        flat = [w[0]]
        for seg in ordered:
            flat.extend(seg)
        return tuple(flat)
    raise InputError(f"unknown pattern {p!r}")


def _cycle_orbit(specs, w):
    length = len(w)
    for r in range(length):
        if all(specs[(i + r) % length] == specs[i] for i in range(length)):
            yield tuple(w[(i + r) % length] for i in range(length))
        if all(specs[(r - i) % length] == specs[i] for i in range(length)):
            yield tuple(w[(r - i) % length] for i in range(length))


def _sort_within_groups(keys, values):
    """Sort values within blocks of equal keys, preserving key positions."""
    buckets: dict[object, list] = {}
    for key, value in zip(keys, values):
        buckets.setdefault(key, []).append(value)
    for bucket in buckets.values():
        bucket.sort()
    iters = {key: iter(bucket) for key, bucket in buckets.items()}
    return tuple(next(iters[key]) for key in keys)


def _split_thread_witness(g, w):
    """Recover the per-entry segments from a flattened thread witness."""
    c = w[0]
    segments = []
    i = 1
    while i < len(w):
        j = i
        while g.degree(w[j]) == 2 and w[j] != c:
            j += 1
        segments.append(tuple(w[i : j + 1]))
        i = j + 1
    return segments
