"""Exact maximum average degree via flow-based densest subgraph.

mad(G) is the maximum of 2|E(H)|/|V(H)| over nonempty subgraphs H.  The
search runs a binary search over candidate densities q = |E|/|V| with a
max-flow feasibility test on an integer-capacity network, so every
comparison is exact.  Two distinct subgraph densities with denominators
at most n differ by at least 1/(n(n-1)) (equal denominators differ by at
least 1/n, distinct ones by at least 1/(n(n-1))), which bounds how far
the search must narrow the interval.

The feasibility network for a guess q = p/r has a node per edge and per
vertex: source -> edge with capacity r, edge -> both endpoints with
effectively infinite capacity, vertex -> sink with capacity p.  The min
cut is r*m minus max over vertex sets S of (r*|E(S)| - p*|S|), so flow
short of r*m exhibits a subgraph denser than q, recovered from the source
side of the cut.

The reported witness is the inclusion-largest maximum-density vertex set,
which is unique because maximum-density sets are closed under union; the
brute-force oracle reports the same set, so the two agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Graph
from .errors import InputError

BRUTEFORCE_LIMIT = 20


@dataclass(frozen=True)
class DensityResult:
    mad: Fraction
    witness: tuple[int, ...]


def mad_exact(g: Graph) -> DensityResult:
    """Exact mad with a witness subset; invariant under relabeling."""
    n = g.n
    if n == 0:
        raise InputError("mad of the empty graph is undefined")
    if g.m == 0:
        return DensityResult(Fraction(0), (0,))

    lo = Fraction(g.m, n)  # density of the whole graph, always achieved
    witness = tuple(range(n))
    hi = Fraction(g.max_degree(), 2)  # |E(H)| <= max_degree*|V(H)|/2
    separation = Fraction(1, n * (n - 1))
    while hi - lo >= separation:
        mid = (lo + hi) / 2
        subset = _subset_denser_than(g, mid)
        if subset is None:
            hi = mid
        else:
            lo = _density(g, subset)
            witness = subset
    # One more cut just below the optimum isolates the union of all
    # maximum-density sets, the canonical witness.
    final = _subset_denser_than(g, lo - Fraction(1, 2 * n * (n - 1)))
    if final is not None and _density(g, final) == lo:
        witness = final
    return DensityResult(2 * lo, witness)


def mad_bruteforce(g: Graph) -> DensityResult:
    """Oracle: exhaustive subset enumeration, same contract as mad_exact."""
    n = g.n
    if n == 0:
        raise InputError("mad of the empty graph is undefined")
    if n > BRUTEFORCE_LIMIT:
        raise InputError(f"brute force refuses n > {BRUTEFORCE_LIMIT}")
    if g.m == 0:
        return DensityResult(Fraction(0), (0,))

    masks = [0] * n
    for v in range(n):
        for u in g.neighbors(v):
            masks[v] |= 1 << u

    best_e, best_v = g.m, n  # whole graph
    for edges_in, size, _ in _gray_subsets(masks):
        if edges_in * best_v > best_e * size:
            best_e, best_v = edges_in, size
    union = 0
    for edges_in, size, mask in _gray_subsets(masks):
        if edges_in * best_v == best_e * size:
            union |= mask
    witness = tuple(v for v in range(n) if union >> v & 1)
    return DensityResult(Fraction(2 * best_e, best_v), witness)


def _gray_subsets(masks):
    """Yield (edge count, size, mask) over all nonempty vertex subsets."""
    n = len(masks)
    mask = 0
    edges_in = 0
    size = 0
    for i in range(1, 1 << n):
        v = (i & -i).bit_length() - 1  # bit toggled by the Gray code
        bit = 1 << v
        if mask & bit:
            mask ^= bit
            edges_in -= bin(masks[v] & mask).count("1")
            size -= 1
        else:
            edges_in += bin(masks[v] & mask).count("1")
            mask ^= bit
            size += 1
        yield edges_in, size, mask


def _density(g: Graph, subset: tuple[int, ...]) -> Fraction:
    inside = set(subset)
    edges = sum(1 for v in subset for u in g.neighbors(v) if u in inside and u < v)
    return Fraction(edges, len(subset))


def _subset_denser_than(g: Graph, q: Fraction) -> tuple[int, ...] | None:
    """Vertex set with |E(S)|/|S| > q, or None; exact via integer flow."""
    n, m = g.n, g.m
    p, r = q.numerator, q.denominator
    source = 0
    edge_base = 1
    vertex_base = 1 + m
    sink = 1 + m + n
    net = _Dinic(sink + 1)
    infinite = r * m + 1
    for idx, (u, v) in enumerate(g.edges()):
        net.add(source, edge_base + idx, r)
        net.add(edge_base + idx, vertex_base + u, infinite)
        net.add(edge_base + idx, vertex_base + v, infinite)
    for v in range(n):
        net.add(vertex_base + v, sink, p)
    flow = net.max_flow(source, sink)
    if flow >= r * m:
        return None
    reachable = net.residual_reachable(source)
    return tuple(v for v in range(n) if (vertex_base + v) in reachable)


class _Dinic:
    """Integer max flow; standard level graph + blocking flow."""

    def __init__(self, size: int):
        self.size = size
        self.head: list[list[int]] = [[] for _ in range(size)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add(self, u: int, v: int, capacity: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(capacity)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.size
        level[s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for e in self.head[u]:
                    v = self.to[e]
                    if self.cap[e] > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        nxt.append(v)
            frontier = nxt
        return level if level[t] >= 0 else None

    def _push(self, u: int, t: int, limit: int, level, it) -> int:
        if u == t:
            return limit
        while it[u] < len(self.head[u]):
            e = self.head[u][it[u]]
            v = self.to[e]
            if self.cap[e] > 0 and level[v] == level[u] + 1:
                pushed = self._push(v, t, min(limit, self.cap[e]), level, it)
                if pushed:
                    self.cap[e] -= pushed
                    self.cap[e ^ 1] += pushed
                    return pushed
            it[u] += 1
        return 0

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            it = [0] * self.size
            while True:
                pushed = self._push(s, t, 1 << 62, level, it)
                if not pushed:
                    break
                total += pushed

    def residual_reachable(self, s: int) -> set[int]:
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for e in self.head[u]:
                v = self.to[e]
                if self.cap[e] > 0 and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen
