"""Mechanical execution of discharging rules on a concrete instance.

Each element (vertex, and face for plane instances) starts with an exact
initial charge; every rule in a closed catalog moves exact amounts
between elements, all evaluated against the untouched instance
(simultaneous semantics).  The run reports final charges, the elements
that went negative, and checks conservation to the last fraction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .core import Graph, maximal_threads
from .errors import InputError
from .patterns import ANY, DegSpec, at_least, exact
from .plane import PlaneGraph, boundary_vertices, faces

Element = tuple[str, int]  # ("v", id) or ("f", id)


@dataclass(frozen=True)
class ChargeSpec:
    """Initial charges: deg(v) - vertex_constant, deg(face) - face_constant."""

    vertex_constant: Fraction
    face_constant: Fraction | None = None


# -- predicates on a prospective receiver ----------------------------------


@dataclass(frozen=True)
class Always:
    def holds(self, g, v: int) -> bool:
        return True


@dataclass(frozen=True)
class AdjacentTo:
    spec: DegSpec

    def holds(self, g, v: int) -> bool:
        return any(self.spec.matches(g.degree(u)) for u in g.neighbors(v))


@dataclass(frozen=True)
class NotAdjacentTo:
    spec: DegSpec

    def holds(self, g, v: int) -> bool:
        return not any(self.spec.matches(g.degree(u)) for u in g.neighbors(v))


@dataclass(frozen=True)
class AdjacentToExactlyOne:
    """Exactly one neighbor matches; the 3_1-vertex test."""

    spec: DegSpec

    def holds(self, g, v: int) -> bool:
        return sum(1 for u in g.neighbors(v) if self.spec.matches(g.degree(u))) == 1


Predicate = Union[Always, AdjacentTo, NotAdjacentTo, AdjacentToExactlyOne]


def _is_three_star(g, v: int) -> bool:
    """3-vertex adjacent to both a 3-vertex and a 5-vertex."""
    if g.degree(v) != 3:
        return False
    degrees = [g.degree(u) for u in g.neighbors(v)]
    return 3 in degrees and 5 in degrees


# -- the rule catalog -------------------------------------------------------


@dataclass(frozen=True)
class ThreadEndpointRule:
    """Each 2-vertex receives the amount from each endpoint of its thread."""

    amount: Fraction


@dataclass(frozen=True)
class VertexToNeighborRule:
    sender: DegSpec
    receiver: DegSpec
    context: Predicate
    amount: Fraction


@dataclass(frozen=True)
class VertexProportionalToNeighborsRule:
    """Sender w gives (deg(w) - 4)/deg(w) to each adjacent vertex."""

    sender: DegSpec


@dataclass(frozen=True)
class VertexProportionalToFacesRule:
    """Sender w gives (deg(w) - 4)/deg(w) to each face incidence."""

    sender: DegSpec


@dataclass(frozen=True)
class VertexToFaceRule:
    """Flat amount from matching vertices to each face incidence."""

    sender: DegSpec
    amount: Fraction


@dataclass(frozen=True)
class FaceToVertexRule:
    face: DegSpec
    vertex: DegSpec
    amount: Fraction


@dataclass(frozen=True)
class FiveVertexStarRule:
    """5-vertex charity: 1 to each adjacent 3*-vertex when one exists,
    otherwise 1/5 to every neighbor."""


@dataclass(frozen=True)
class FourFaceRelayRule:
    """On a 4-face, what a 4+-vertex paid in is passed along the boundary
    to the 3-non-star vertices beside it."""


Rule = Union[
    ThreadEndpointRule,
    VertexToNeighborRule,
    VertexProportionalToNeighborsRule,
    VertexProportionalToFacesRule,
    VertexToFaceRule,
    FaceToVertexRule,
    FiveVertexStarRule,
    FourFaceRelayRule,
]

_FACE_RULES = (VertexProportionalToFacesRule, VertexToFaceRule,
               FaceToVertexRule, FourFaceRelayRule)


@dataclass
class DischargeResult:
    initial: dict[Element, Fraction]
    final: dict[Element, Fraction]
    negatives: list[tuple[Element, Fraction]]
    total_initial: Fraction
    total_final: Fraction
    elements: list[Element] = field(default_factory=list)


def run_discharge(instance: Graph | PlaneGraph, spec: ChargeSpec,
                  rules: list[Rule]) -> DischargeResult:
    """Apply all rules to the initial configuration and settle charges."""
    plane = isinstance(instance, PlaneGraph)
    if not plane:
        if spec.face_constant is not None or any(isinstance(r, _FACE_RULES) for r in rules):
            raise InputError("face charges require a plane instance")

    initial: dict[Element, Fraction] = {}
    for v in range(instance.n):
        initial[("v", v)] = Fraction(instance.degree(v)) - spec.vertex_constant

    face_list: tuple[tuple[int, ...], ...] = ()
    if plane:
        face_list = faces(instance).faces
        if spec.face_constant is not None:
            for idx, face in enumerate(face_list):
                initial[("f", idx)] = Fraction(len(face)) - spec.face_constant

    delta: dict[Element, Fraction] = {e: Fraction(0) for e in initial}

    def move(src: Element, dst: Element, amount: Fraction) -> None:
        delta[src] -= amount
        delta[dst] += amount

    for rule in rules:
        _apply_rule(instance, rule, face_list, move)

    final = {e: initial[e] + delta[e] for e in initial}
    total_initial = sum(initial.values(), Fraction(0))
    total_final = sum(final.values(), Fraction(0))
    if total_initial != total_final:
        raise RuntimeError("charge conservation violated; rule engine bug")

    order = sorted(initial)  # ("f", i) before ("v", i), each by id
    negatives = [(e, final[e]) for e in order if final[e] < 0]
    return DischargeResult(
        initial=initial,
        final=final,
        negatives=negatives,
        total_initial=total_initial,
        total_final=total_final,
        elements=order,
    )


def _apply_rule(g, rule: Rule, face_list, move) -> None:
    if isinstance(rule, ThreadEndpointRule):
        if not isinstance(g, Graph):
            raise InputError("thread rule requires an abstract graph")
        for thread in maximal_threads(g):
            if thread.closed:
                cycle = ",".join(str(v) for v in thread.internal)
                raise InputError(
                    f"closed thread {cycle}: a 2-regular component is an "
                    "immediate (2,2,2)-path; discharge refused"
                )
            e1, e2 = thread.endpoints
            for w in thread.internal:
                move(("v", e1), ("v", w), rule.amount)
                move(("v", e2), ("v", w), rule.amount)
        return

    if isinstance(rule, VertexToNeighborRule):
        for v in range(g.n):
            if not rule.sender.matches(g.degree(v)):
                continue
            for u in g.neighbors(v):
                if rule.receiver.matches(g.degree(u)) and rule.context.holds(g, u):
                    move(("v", v), ("v", u), rule.amount)
        return

    if isinstance(rule, VertexProportionalToNeighborsRule):
        for v in range(g.n):
            d = g.degree(v)
            if not rule.sender.matches(d):
                continue
            share = Fraction(d - 4, d)
            for u in g.neighbors(v):
                move(("v", v), ("v", u), share)
        return

    if isinstance(rule, VertexProportionalToFacesRule):
        for idx, face in enumerate(face_list):
            for w in boundary_vertices(g, face):
                d = g.degree(w)
                if rule.sender.matches(d):
                    move(("v", w), ("f", idx), Fraction(d - 4, d))
        return

    if isinstance(rule, VertexToFaceRule):
        for idx, face in enumerate(face_list):
            for w in boundary_vertices(g, face):
                if rule.sender.matches(g.degree(w)):
                    move(("v", w), ("f", idx), rule.amount)
        return

    if isinstance(rule, FaceToVertexRule):
        for idx, face in enumerate(face_list):
            if not rule.face.matches(len(face)):
                continue
            for w in boundary_vertices(g, face):
                if rule.vertex.matches(g.degree(w)):
                    move(("f", idx), ("v", w), rule.amount)
        return

    if isinstance(rule, FiveVertexStarRule):
        for v in range(g.n):
            if g.degree(v) != 5:
                continue
            starred = [u for u in g.neighbors(v) if _is_three_star(g, u)]
            if starred:
                for u in starred:
                    move(("v", v), ("v", u), Fraction(1))
            else:
                for u in g.neighbors(v):
                    move(("v", v), ("v", u), Fraction(1, 5))
        return

    if isinstance(rule, FourFaceRelayRule):
        for idx, face in enumerate(face_list):
            if len(face) != 4:
                continue
            ring = boundary_vertices(g, face)
            for i in range(4):
                w2 = ring[i]
                d2 = g.degree(w2)
                if d2 < 6:
                    continue  # paid nothing in, nothing to relay
                paid = Fraction(d2 - 4, d2)
                w1, w3 = ring[i - 1], ring[(i + 1) % 4]
                relay_w1 = g.degree(w1) == 3 and not _is_three_star(g, w1)
                relay_w3 = g.degree(w3) == 3 and not _is_three_star(g, w3)
                if (relay_w3 and g.degree(w1) == 3) or (relay_w1 and g.degree(w3) == 3):
                    move(("f", idx), ("v", w1), paid / 2)
                    move(("f", idx), ("v", w3), paid / 2)
                elif relay_w3 and g.degree(w1) >= 4:
                    move(("f", idx), ("v", w3), paid)
                elif relay_w1 and g.degree(w3) >= 4:
                    move(("f", idx), ("v", w1), paid)
        return

    raise InputError(f"unknown rule {rule!r}")


def lemma_l_margin(kappa: int, rho: Fraction) -> Fraction:
    """Exact value of kappa - (2 + 2*rho) - 2*kappa*rho."""
    if kappa < 1:
        raise InputError("kappa must be at least 1")
    if rho < 0:
        raise InputError("rho must be nonnegative")
    rho = Fraction(rho)
    return kappa - (2 + 2 * rho) - 2 * kappa * rho


def render_discharge_report(result: DischargeResult) -> str:
    """Deterministic text table of the run."""
    lines = ["element kind initial final"]
    for element in result.elements:
        kind = "vertex" if element[0] == "v" else "face"
        lines.append(
            f"{element[0]}{element[1]} {kind} "
            f"{result.initial[element]} {result.final[element]}"
        )
    lines.append("negatives:")
    if result.negatives:
        lines.extend(f"{e[0]}{e[1]} {charge}" for e, charge in result.negatives)
    else:
        lines.append("(none)")
    lines.append(f"total: initial={result.total_initial} final={result.total_final}")
    return "\n".join(lines) + "\n"


# -- named rule sets, one per built-in theorem ------------------------------

F = Fraction

RULE_SETS: dict[str, tuple[ChargeSpec, tuple[Rule, ...]]] = {
    "madthm1": (
        ChargeSpec(F(12, 5)),
        (ThreadEndpointRule(F(1, 5)),
         VertexToNeighborRule(at_least(4), at_least(3), Always(), F(2, 5))),
    ),
    "madthm2": (
        ChargeSpec(F(5, 2)),
        (ThreadEndpointRule(F(1, 4)),),
    ),
    "madthm3": (
        ChargeSpec(F(18, 7)),
        (ThreadEndpointRule(F(2, 7)),
         VertexToNeighborRule(at_least(6), at_least(3), Always(), F(4, 7))),
    ),
    "madthm4": (
        ChargeSpec(F(21, 8)),
        (ThreadEndpointRule(F(5, 16)),
         VertexToNeighborRule(at_least(7), at_least(3), Always(), F(5, 8))),
    ),
    "madthm5": (
        ChargeSpec(F(8, 3)),
        (ThreadEndpointRule(F(1, 3)),
         VertexToNeighborRule(at_least(7), at_least(3), Always(), F(2, 3))),
    ),
    "mad14_5": (
        ChargeSpec(F(14, 5)),
        (ThreadEndpointRule(F(2, 5)),
         VertexToNeighborRule(at_least(4), exact(3), Always(), F(1, 10))),
    ),
    "girth7": (
        ChargeSpec(F(4), F(4)),
        (FaceToVertexRule(ANY, exact(2), F(1)),
         FaceToVertexRule(ANY, exact(3), F(1, 3)),
         VertexToFaceRule(at_least(6), F(1, 3))),
    ),
    "mad3": (
        ChargeSpec(F(3)),
        (ThreadEndpointRule(F(1, 2)),
         VertexToNeighborRule(exact(4), exact(3), AdjacentTo(exact(2)), F(1, 4)),
         VertexToNeighborRule(exact(5), exact(3), Always(), F(1, 4)),
         VertexToNeighborRule(exact(6), at_least(3), Always(), F(1, 4)),
         VertexToNeighborRule(at_least(7), at_least(3), Always(), F(1, 2))),
    ),
    "mad10_3": (
        ChargeSpec(F(10, 3)),
        (ThreadEndpointRule(F(2, 3)),
         VertexToNeighborRule(at_least(4), exact(3), NotAdjacentTo(exact(2)), F(1, 6)),
         VertexToNeighborRule(at_least(7), exact(3), AdjacentToExactlyOne(exact(2)), F(1, 2))),
    ),
    "delta3": (
        ChargeSpec(F(4)),
        (VertexProportionalToNeighborsRule(at_least(4)),),
    ),
    "thmlast": (
        ChargeSpec(F(4), F(4)),
        (VertexProportionalToFacesRule(at_least(6)),
         FiveVertexStarRule(),
         FaceToVertexRule(at_least(5), exact(3), F(1, 2)),
         FourFaceRelayRule()),
    ),
}

RULE_SETS["mad3_variant"] = RULE_SETS["mad3"]
