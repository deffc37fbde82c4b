"""Seeded random corpora tailored to each built-in theorem.

Abstract instances come from the pairing model: sample an r-regular base
(rejecting loops and parallel pairs), then insert a random number of
vertices on each edge.  Plane instances subdivide a random cylinder grid,
and triangle-free normal plane maps are random cylinder grids themselves.
Instances that miss their theorem's hypotheses are regenerated, with a
retry bound so an impossible profile fails loudly instead of spinning.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Union

from .core import Graph, build_graph, subdivide_edges
from .errors import InputError
from .plane import PlaneGraph, cylinder_plane, plane_subdivide
from .theorems import Instance, builtin_theorem, check_hypotheses

MAX_ATTEMPTS_PER_INSTANCE = 400


@dataclass(frozen=True)
class RegularSubdivisionProfile:
    theorem: str
    regularity: int
    base_size: int
    insertions: tuple[int, ...]  # choices per edge


@dataclass(frozen=True)
class PlaneSubdivisionProfile:
    theorem: str
    ring_sizes: tuple[int, int]  # inclusive range for the cylinder ring
    heights: tuple[int, int]  # inclusive range for the cylinder height
    insertions: tuple[int, ...]


@dataclass(frozen=True)
class CylinderProfile:
    theorem: str
    ring_sizes: tuple[int, int]
    heights: tuple[int, int]


CorpusProfile = Union[RegularSubdivisionProfile, PlaneSubdivisionProfile,
                      CylinderProfile]


CORPUS_PROFILES: dict[str, CorpusProfile] = {
    "madthm1": RegularSubdivisionProfile("madthm1", 3, 8, (2, 3)),
    "madthm2": RegularSubdivisionProfile("madthm2", 3, 8, (1, 2)),
    "madthm3": RegularSubdivisionProfile("madthm3", 4, 8, (1, 2)),
    "madthm4": RegularSubdivisionProfile("madthm4", 4, 8, (1, 2)),
    "madthm5": RegularSubdivisionProfile("madthm5", 4, 8, (1, 2)),
    "mad14_5": RegularSubdivisionProfile("mad14_5", 3, 8, (1, 2)),
    "mad3": RegularSubdivisionProfile("mad3", 3, 8, (0, 1, 2)),
    "mad3_variant": RegularSubdivisionProfile("mad3_variant", 3, 8, (0, 1, 2)),
    "mad10_3": RegularSubdivisionProfile("mad10_3", 4, 7, (0, 1)),
    "delta3": RegularSubdivisionProfile("delta3", 3, 10, (0,)),
    "girth7": PlaneSubdivisionProfile("girth7", (4, 8), (2, 3), (1, 2, 3)),
    "thmlast": CylinderProfile("thmlast", (4, 23), (2, 5)),
}


def random_regular_graph(r: int, n: int, rng: random.Random) -> Graph:
    """Pairing model with simplicity rejection."""
    if r < 0 or n < 1 or r >= n:
        raise InputError("need 0 <= r < n")
    if (r * n) % 2:
        raise InputError("r*n must be even")
    while True:
        stubs = [v for v in range(n) for _ in range(r)]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for u, v in zip(stubs[0::2], stubs[1::2]):
            if u == v or (min(u, v), max(u, v)) in edges:
                ok = False
                break
            edges.add((min(u, v), max(u, v)))
        if ok:
            return build_graph(n, sorted(edges))


def gen_corpus(profile: CorpusProfile, seed: int, count: int) -> list[Instance]:
    """Deterministic list of instances satisfying the profile's theorem."""
    if count < 1:
        raise InputError("count must be at least 1")
    spec = builtin_theorem(profile.theorem)
    rng = random.Random(seed)
    out: list[Instance] = []
    for _ in range(count):
        for _attempt in range(MAX_ATTEMPTS_PER_INSTANCE):
            candidate = _generate(profile, rng)
            holds, _ = check_hypotheses(candidate, spec)
            if holds:
                out.append(candidate)
                break
        else:
            raise InputError(
                f"profile for {profile.theorem} infeasible after "
                f"{MAX_ATTEMPTS_PER_INSTANCE} attempts")
    return out


def corpus_for_theorem(name: str, seed: int, count: int) -> list[Instance]:
    try:
        profile = CORPUS_PROFILES[name]
    except KeyError:
        raise InputError(f"no corpus profile for theorem {name!r}") from None
    return gen_corpus(profile, seed, count)


def _generate(profile: CorpusProfile, rng: random.Random) -> Instance:
    if isinstance(profile, RegularSubdivisionProfile):
        base = random_regular_graph(profile.regularity, profile.base_size, rng)
        counts = {e: rng.choice(profile.insertions) for e in base.edges()}
        return subdivide_edges(base, counts)
    if isinstance(profile, PlaneSubdivisionProfile):
        n = rng.randint(*profile.ring_sizes)
        k = rng.randint(*profile.heights)
        base = cylinder_plane(n, k)
        counts = {e: rng.choice(profile.insertions)
                  for e in base.simple_graph().edges()}
        return plane_subdivide(base, counts)
    if isinstance(profile, CylinderProfile):
        n = rng.randint(*profile.ring_sizes)
        k = rng.randint(*profile.heights)
        return cylinder_plane(n, k)
    raise InputError(f"unknown profile {profile!r}")
