"""Textual format for patterns and theorem statements, plus verification.

Pattern grammar (no whitespace significance)::

    path(2,2,13-,2)    star(4;2,2,2,3-)    cycle(2,2,*)
    threads(4;[2,2,1,0:6-])
    spec := INT | INT- | INT+ | *

Theorem files are line oriented: a ``theorem`` header, ``hypothesis``
lines, optional ``forbid`` patterns, ``conclude name: pattern`` lines in
the order the unavoidable set is stated, and an optional ``rules``
binding naming a discharge rule set.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources

from .core import Graph, girth
from .errors import InputError, PatternSyntaxError
from .patterns import (
    ANY,
    CyclePattern,
    DegSpec,
    PathPattern,
    Pattern,
    StarPattern,
    ThreadEntry,
    ThreadProfilePattern,
    Witness,
    at_least,
    at_most,
    exact,
    find_pattern,
    render_pattern,
)
from .plane import PlaneGraph, plane_girth, plane_stats


# ---------------------------------------------------------------------------
# pattern parsing


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, token: str) -> None:
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            raise PatternSyntaxError(f"expected {token!r}", self.pos)
        self.pos += len(token)

    def try_take(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise PatternSyntaxError("expected an integer", start)
        return int(self.text[start:self.pos])

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        return self.text[start:self.pos]

    def done(self) -> None:
        self.skip_ws()
        if self.pos != len(self.text):
            raise PatternSyntaxError("trailing input", self.pos)


def _parse_spec(s: _Scanner) -> DegSpec:
    if s.try_take("*"):
        return ANY
    start = s.pos
    k = s.integer()
    if k < 1:
        raise PatternSyntaxError("degree bound must be at least 1", start)
    if s.try_take("-"):
        return at_most(k)
    if s.try_take("+"):
        return at_least(k)
    return exact(k)


def _parse_spec_list(s: _Scanner, closer: str) -> tuple[DegSpec, ...]:
    specs = [_parse_spec(s)]
    while s.try_take(","):
        specs.append(_parse_spec(s))
    s.expect(closer)
    return tuple(specs)


def _parse_entry(s: _Scanner) -> ThreadEntry:
    start = s.pos
    min_len = s.integer()
    if s.try_take(":"):
        return ThreadEntry(min_len, _parse_spec(s))
    if min_len < 0:
        raise PatternSyntaxError("thread length must be nonnegative", start)
    return ThreadEntry(min_len)


def parse_pattern(text: str) -> Pattern:
    """Parse pattern text; raises PatternSyntaxError with an offset."""
    s = _Scanner(text)
    head = s.word()
    try:
        if head == "path":
            s.expect("(")
            pattern: Pattern = PathPattern(_parse_spec_list(s, ")"))
        elif head == "cycle":
            s.expect("(")
            pattern = CyclePattern(_parse_spec_list(s, ")"))
        elif head == "star":
            s.expect("(")
            center = _parse_spec(s)
            s.expect(";")
            pattern = StarPattern(center, _parse_spec_list(s, ")"))
        elif head == "threads":
            s.expect("(")
            center = _parse_spec(s)
            s.expect(";")
            s.expect("[")
            entries = [_parse_entry(s)]
            while s.try_take(","):
                entries.append(_parse_entry(s))
            s.expect("]")
            s.expect(")")
            pattern = ThreadProfilePattern(center, tuple(entries))
        else:
            raise PatternSyntaxError(f"unknown pattern kind {head!r}", 0)
    except InputError as exc:
        if isinstance(exc, PatternSyntaxError):
            raise
        raise PatternSyntaxError(str(exc), s.pos) from None
    s.done()
    return pattern


# ---------------------------------------------------------------------------
# theorem specifications


@dataclass(frozen=True)
class TheoremSpec:
    name: str
    min_degree: int | None = None
    min_degree_exact: bool = False
    avg_upper: Fraction | None = None  # strict
    mad_upper: Fraction | None = None  # strict
    girth_min: int | None = None
    requires_plane: bool = False
    face_size_min: int | None = None
    triangle_free_npm: bool = False
    forbidden: tuple[Pattern, ...] = ()
    unavoidable: tuple[tuple[str, Pattern], ...] = ()
    rules: str | None = None


@dataclass(frozen=True)
class Verdict:
    status: str  # "satisfied" | "counterexample" | "hypotheses-not-met"
    config_name: str | None = None
    witness: Witness | None = None
    reasons: tuple[str, ...] = ()

    @property
    def satisfied(self) -> bool:
        return self.status == "satisfied"


def parse_theorem_spec(text: str) -> TheoremSpec:
    spec = TheoremSpec(name="")
    seen: set[str] = set()
    forbidden: list[Pattern] = []
    unavoidable: list[tuple[str, Pattern]] = []

    def once(key: str) -> None:
        if key in seen:
            raise InputError(f"duplicate {key!r} line")
        seen.add(key)

    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "theorem":
            once("theorem")
            if not rest:
                raise InputError("theorem line needs a name")
            spec = replace(spec, name=rest)
        elif head == "hypothesis":
            spec = _parse_hypothesis(spec, rest, once)
        elif head == "forbid":
            forbidden.append(parse_pattern(rest))
        elif head == "conclude":
            name, sep, pat_text = rest.partition(":")
            if not sep:
                raise InputError(f"conclude line needs 'name: pattern': {raw!r}")
            name = name.strip()
            if any(name == existing for existing, _ in unavoidable):
                raise InputError(f"duplicate conclusion name {name!r}")
            unavoidable.append((name, parse_pattern(pat_text.strip())))
        elif head == "rules":
            once("rules")
            spec = replace(spec, rules=rest)
        else:
            raise InputError(f"unknown line {raw!r}")
    if "theorem" not in seen:
        raise InputError("missing theorem header")
    if not unavoidable:
        raise InputError("theorem has no conclusions")
    return replace(spec, forbidden=tuple(forbidden), unavoidable=tuple(unavoidable))


def _parse_hypothesis(spec: TheoremSpec, rest: str, once) -> TheoremSpec:
    tokens = rest.split()
    key = tokens[0] if tokens else ""
    once(f"hypothesis {key}")
    if key == "plane" and len(tokens) == 1:
        return replace(spec, requires_plane=True)
    if key == "triangle_free_npm" and len(tokens) == 1:
        return replace(spec, requires_plane=True, triangle_free_npm=True)
    if len(tokens) != 3:
        raise InputError(f"bad hypothesis {rest!r}")
    key, op, value = tokens
    if key == "min_degree" and op in ("=", ">="):
        return replace(spec, min_degree=_positive_int(value),
                       min_degree_exact=(op == "="))
    if key == "avg_degree" and op == "<":
        return replace(spec, avg_upper=_positive_fraction(value))
    if key == "mad" and op == "<":
        return replace(spec, mad_upper=_positive_fraction(value))
    if key == "girth" and op == ">=":
        return replace(spec, girth_min=_positive_int(value))
    if key == "face_size" and op == ">=":
        return replace(spec, face_size_min=_positive_int(value))
    raise InputError(f"bad hypothesis {rest!r}")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise InputError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise InputError(f"bound must be positive: {text}")
    return value


def _positive_fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational: {text!r}") from None
    if value <= 0:
        raise InputError(f"bound must be positive: {text}")
    return value


def render_theorem_spec(spec: TheoremSpec) -> str:
    lines = [f"theorem {spec.name}"]
    if spec.min_degree is not None:
        op = "=" if spec.min_degree_exact else ">="
        lines.append(f"hypothesis min_degree {op} {spec.min_degree}")
    if spec.avg_upper is not None:
        lines.append(f"hypothesis avg_degree < {spec.avg_upper}")
    if spec.mad_upper is not None:
        lines.append(f"hypothesis mad < {spec.mad_upper}")
    if spec.girth_min is not None:
        lines.append(f"hypothesis girth >= {spec.girth_min}")
    if spec.requires_plane and not spec.triangle_free_npm:
        lines.append("hypothesis plane")
    if spec.triangle_free_npm:
        lines.append("hypothesis triangle_free_npm")
    if spec.face_size_min is not None:
        lines.append(f"hypothesis face_size >= {spec.face_size_min}")
    lines.extend(f"forbid {render_pattern(p)}" for p in spec.forbidden)
    lines.extend(f"conclude {name}: {render_pattern(p)}"
                 for name, p in spec.unavoidable)
    if spec.rules is not None:
        lines.append(f"rules {spec.rules}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# built-in catalog

BUILTIN_THEOREMS = (
    "madthm1", "madthm2", "madthm3", "madthm4", "madthm5",
    "mad14_5", "girth7", "mad3", "mad3_variant", "mad10_3",
    "delta3", "thmlast",
)

_catalog: dict[str, TheoremSpec] = {}


def builtin_theorem(name: str) -> TheoremSpec:
    if name not in BUILTIN_THEOREMS:
        raise InputError(f"unknown built-in theorem {name!r}")
    if name not in _catalog:
        text = resources.files("lightgraphs").joinpath(f"data/{name}.thm").read_text()
        _catalog[name] = parse_theorem_spec(text)
    return _catalog[name]


def builtin_theorem_text(name: str) -> str:
    if name not in BUILTIN_THEOREMS:
        raise InputError(f"unknown built-in theorem {name!r}")
    return resources.files("lightgraphs").joinpath(f"data/{name}.thm").read_text()


# ---------------------------------------------------------------------------
# hypothesis checking and verification

Instance = Graph | PlaneGraph


def check_hypotheses(instance: Instance, spec: TheoremSpec) -> tuple[bool, list[str]]:
    """True iff every hypothesis holds; reasons list each failure."""
    plane = isinstance(instance, PlaneGraph)
    if spec.requires_plane and not plane:
        raise InputError(f"theorem {spec.name} needs a plane instance")
    if instance.n == 0:
        raise InputError("empty instance")

    reasons: list[str] = []
    degrees = [instance.degree(v) for v in range(instance.n)]
    if spec.min_degree is not None:
        if spec.min_degree_exact:
            if min(degrees) != spec.min_degree:
                reasons.append(
                    f"minimum degree {min(degrees)} != {spec.min_degree}")
        elif min(degrees) < spec.min_degree:
            reasons.append(
                f"minimum degree {min(degrees)} < {spec.min_degree}")
    if spec.avg_upper is not None:
        avg = Fraction(2 * instance.m, instance.n)
        if avg >= spec.avg_upper:
            reasons.append(f"average degree {avg} >= {spec.avg_upper}")
    if spec.mad_upper is not None:
        if plane:
            raise InputError("mad hypothesis needs an abstract graph")
        from .density import mad_exact

        mad = mad_exact(instance).mad
        if mad >= spec.mad_upper:
            reasons.append(f"mad {mad} >= {spec.mad_upper}")
    if spec.girth_min is not None:
        got = plane_girth(instance) if plane else girth(instance)
        if got < spec.girth_min:
            reasons.append(f"girth {got} < {spec.girth_min}")
    for pattern in spec.forbidden:
        witness = find_pattern(instance, pattern)
        if witness is not None:
            reasons.append(
                f"forbidden {witness.pattern} at "
                f"{' '.join(map(str, witness.vertices))}")
    if spec.face_size_min is not None or spec.triangle_free_npm:
        if not plane:
            raise InputError(f"theorem {spec.name} needs a plane instance")
        stats = plane_stats(instance)
        if spec.face_size_min is not None and stats.min_face_size < spec.face_size_min:
            reasons.append(
                f"minimum face size {stats.min_face_size} < {spec.face_size_min}")
        if spec.triangle_free_npm:
            if not stats.is_npm:
                reasons.append("not a normal plane map")
            if not stats.triangle_free_map:
                reasons.append("not triangle-free")
    return not reasons, reasons


def verify_theorem(instance: Instance, spec: TheoremSpec) -> Verdict:
    """HypothesesNotMet, or the first unavoidable configuration found, or
    Counterexample when the whole set is missing (an artifact bug, since
    the statements are proved)."""
    holds, reasons = check_hypotheses(instance, spec)
    if not holds:
        return Verdict("hypotheses-not-met", reasons=tuple(reasons))
    for name, pattern in spec.unavoidable:
        witness = find_pattern(instance, pattern)
        if witness is not None:
            return Verdict("satisfied", config_name=name, witness=witness)
    return Verdict("counterexample")
