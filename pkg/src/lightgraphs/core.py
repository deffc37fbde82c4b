"""Simple undirected graphs with exact degree statistics.

Vertices are dense integers 0..n-1.  Graph values are immutable and every
operation returns a new graph; nothing in this package ever compares a
density or a charge through a float, so the average degree here is an
exact fraction.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError

Edge = tuple[int, int]

#: Returned by :func:`girth` for forests.
INFINITE = math.inf


class Graph:
    """Immutable simple undirected graph.

    Adjacency is stored per vertex as a sorted tuple, which makes every
    traversal in the package deterministic.
    """

    __slots__ = ("_nbrs",)

    def __init__(self, neighbor_lists: Sequence[Iterable[int]]):
        self._nbrs = tuple(tuple(sorted(set(ns))) for ns in neighbor_lists)

    @property
    def n(self) -> int:
        return len(self._nbrs)

    @property
    def m(self) -> int:
        return sum(len(ns) for ns in self._nbrs) // 2

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._nbrs[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbrs[u]

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in self._nbrs[u] if u < v]

    def min_degree(self) -> int:
        if self.n == 0:
            raise InputError("empty graph has no minimum degree")
        return min(len(ns) for ns in self._nbrs)

    def max_degree(self) -> int:
        if self.n == 0:
            raise InputError("empty graph has no maximum degree")
        return max(len(ns) for ns in self._nbrs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._nbrs == other._nbrs

    def __hash__(self) -> int:
        return hash(self._nbrs)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Thread:
    """A maximal chain of degree-2 vertices.

    ``endpoints`` are the two vertices of degree >= 3 bounding the chain
    (they may coincide), or ``None`` for a closed thread, i.e. a connected
    component that is a cycle of 2-vertices.  ``internal`` lists the
    degree-2 vertices in path order.
    """

    endpoints: tuple[int, int] | None
    internal: tuple[int, ...]

    @property
    def closed(self) -> bool:
        return self.endpoints is None

    @property
    def length(self) -> int:
        return len(self.internal)


def build_graph(n: int, edges: Iterable[Edge]) -> Graph:
    """Build a simple graph on vertices 0..n-1 from an edge list.

    Duplicate edges are merged; loops and out-of-range endpoints are
    rejected.
    """
    if n < 0:
        raise InputError("vertex count must be nonnegative")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
        if u == v:
            raise InputError(f"loop edge at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(nbrs)


def average_degree(g: Graph) -> Fraction:
    """Exact average degree 2m/n in lowest terms."""
    if g.n == 0:
        raise InputError("average degree of the empty graph is undefined")
    return Fraction(2 * g.m, g.n)


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle, or INFINITE for forests.

    Runs a BFS from every vertex; a non-tree edge seen at depths du, dv
    witnesses a closed walk of length du+dv+1, and the minimum over all
    roots is exact because a root on a shortest cycle realizes it.
    """
    best: int | float = INFINITE
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            # Any candidate discovered from here on has length >= 2*dist[u].
            if 2 * dist[u] >= best:
                break
            for v in g.neighbors(u):
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    candidate = dist[u] + dist[v] + 1
                    if candidate < best:
                        best = candidate
    return best


def maximal_threads(g: Graph) -> tuple[Thread, ...]:
    """Decompose all degree-2 vertices into maximal threads.

    Every 2-vertex lands in exactly one thread.  A 2-regular component
    becomes a single closed thread.  Threads are listed by smallest
    internal vertex id, with a canonical internal order, so the result is
    reproducible.
    """
    if g.n == 0:
        return ()
    if g.min_degree() <= 1:
        raise InputError("thread decomposition requires minimum degree 2")

    seen: set[int] = set()
    threads: list[Thread] = []
    for v in range(g.n):
        if g.degree(v) != 2 or v in seen:
            continue
        a, b = g.neighbors(v)
        left, end_left, closed = _walk_thread(g, v, a)
        if closed:
            cycle = [v] + left[:-1]  # left ends with v again
            threads.append(_canonical_closed(g, cycle))
            seen.update(cycle)
            continue
        right, end_right, _ = _walk_thread(g, v, b)
        internal = list(reversed(left)) + [v] + right
        threads.append(_canonical_open(end_left, end_right, internal))
        seen.update(internal)
    threads.sort(key=lambda t: min(t.internal))
    return tuple(threads)


def _walk_thread(g: Graph, origin: int, first: int) -> tuple[list[int], int, bool]:
    """Walk from origin through first while on 2-vertices.

    Returns (visited 2-vertices, stopping vertex, closed?).  The walk is
    closed when it comes back to the origin.
    """
    seq: list[int] = []
    prev, cur = origin, first
    while g.degree(cur) == 2 and cur != origin:
        seq.append(cur)
        x, y = g.neighbors(cur)
        prev, cur = cur, (y if x == prev else x)
    if cur == origin:
        seq.append(cur)
        return seq, cur, True
    return seq, cur, False


def _canonical_open(e1: int, e2: int, internal: list[int]) -> Thread:
    forward = (e1, tuple(internal))
    backward = (e2, tuple(reversed(internal)))
    if backward < forward:
        e1, e2 = e2, e1
        internal = list(reversed(internal))
    return Thread(endpoints=(e1, e2), internal=tuple(internal))


def _canonical_closed(g: Graph, cycle: list[int]) -> Thread:
    # Rotate to the smallest vertex, then run toward its smaller neighbor.
    start = cycle.index(min(cycle))
    cycle = cycle[start:] + cycle[:start]
    if len(cycle) > 2 and cycle[-1] < cycle[1]:
        cycle = [cycle[0]] + list(reversed(cycle[1:]))
    return Thread(endpoints=None, internal=tuple(cycle))


def subdivide(g: Graph, edge: Edge, t: int) -> Graph:
    """Replace an edge by a path with t new internal vertices.

    New vertices take ids n..n+t-1 in order from the smaller endpoint.
    t=0 returns the graph unchanged.
    """
    u, v = min(edge), max(edge)
    if not g.has_edge(u, v):
        raise InputError(f"edge ({u}, {v}) not in graph")
    if t < 0:
        raise InputError("insertion count must be nonnegative")
    if t == 0:
        return g
    n = g.n
    edges = [e for e in g.edges() if e != (u, v)]
    chain = [u] + list(range(n, n + t)) + [v]
    edges.extend(zip(chain, chain[1:]))
    return build_graph(n + t, edges)


def subdivide_edges(g: Graph, counts: dict[Edge, int]) -> Graph:
    """Subdivide several edges, processed in sorted edge order."""
    normalized = {(min(e), max(e)): t for e, t in counts.items()}
    for edge in sorted(normalized):
        g = subdivide(g, edge, normalized[edge])
    return g


def dumps_edge_list(g: Graph) -> str:
    """Canonical edge-list text: header ``n m`` then sorted ``u v`` lines."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def loads_edge_list(text: str) -> Graph:
    """Parse edge-list text; ``#`` starts a comment."""
    tokens: list[str] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(line.split())
    if len(tokens) < 2:
        raise InputError("edge list needs a header line 'n m'")
    try:
        values = [int(tok) for tok in tokens]
    except ValueError as exc:
        raise InputError(f"non-integer token in edge list: {exc}") from None
    n, m = values[0], values[1]
    body = values[2:]
    if len(body) != 2 * m:
        raise InputError(f"expected {m} edges, found {len(body) // 2}")
    edges = list(zip(body[0::2], body[1::2]))
    g = build_graph(n, edges)
    if g.m != m:
        raise InputError("edge list contains duplicate edges")
    return g


def load_edge_list(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_edge_list(fh.read())


def save_edge_list(g: Graph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_edge_list(g))
