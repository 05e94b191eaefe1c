"""Verifiability structures: which messages each sender type can send.

A structure is a finite list of named messages, each with an interval-union
support (the set of types able to send it), plus an optional full-verifiability
flag.  When the flag is set, every type s additionally owns an identity message
whose support is exactly {s}; these are never enumerated, all queries
special-case the flag.  Identity messages are addressed as ``id:<rational>``,
so that prefix is reserved.

Support intervals are left-closed (the minimum of every support is attained,
which is what the lowest-consistent machinery needs); the right endpoint may be
closed or open.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ConstructionError, DomainError, UnknownMessageError
from .piecewise import StepFunction
from .rationals import ONE, ZERO, format_rational, in_unit_interval, parse_rational

IDENTITY_PREFIX = "id:"


@dataclass(frozen=True)
class SupportInterval:
    lo: Fraction
    hi: Fraction
    hi_closed: bool = True

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not (in_unit_interval(lo) and in_unit_interval(hi)):
            raise ConstructionError(f"interval [{lo},{hi}] must lie in [0,1]")
        if lo > hi:
            raise ConstructionError(f"interval has lo {lo} > hi {hi}")
        if lo == hi and not self.hi_closed:
            raise ConstructionError("degenerate interval must be closed")

    def contains(self, x: Fraction) -> bool:
        if self.hi_closed:
            return self.lo <= x <= self.hi
        return self.lo <= x < self.hi


@dataclass(frozen=True)
class IntervalUnion:
    """Canonical (sorted, merged) finite union of left-closed intervals."""

    intervals: tuple[SupportInterval, ...]

    def __post_init__(self):
        ivs = sorted(self.intervals, key=lambda iv: (iv.lo, iv.hi, iv.hi_closed))
        if not ivs:
            raise ConstructionError("support must be non-empty")
        merged = [ivs[0]]
        for iv in ivs[1:]:
            cur = merged[-1]
            if iv.lo < cur.hi or (iv.lo == cur.hi):
                # overlapping or touching: the union stays one interval because
                # iv is left-closed
                if iv.hi > cur.hi or (iv.hi == cur.hi and iv.hi_closed):
                    merged[-1] = SupportInterval(cur.lo, iv.hi, iv.hi_closed)
            else:
                merged.append(iv)
        object.__setattr__(self, "intervals", tuple(merged))

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "IntervalUnion":
        """Build from (lo, hi) or (lo, hi, hi_closed) tuples; closed by default."""
        ivs = []
        for p in pairs:
            lo, hi = Fraction(p[0]), Fraction(p[1])
            hi_closed = bool(p[2]) if len(p) > 2 else True
            ivs.append(SupportInterval(lo, hi, hi_closed))
        return cls(tuple(ivs))

    def contains(self, x: Fraction) -> bool:
        return any(iv.contains(x) for iv in self.intervals)

    @property
    def minimum(self) -> Fraction:
        return self.intervals[0].lo

    def hull_bounds(self) -> tuple[Fraction, Fraction]:
        """Closure of the convex hull, [min, sup]."""
        return self.intervals[0].lo, self.intervals[-1].hi

    def endpoints(self) -> list[Fraction]:
        out = []
        for iv in self.intervals:
            out.append(iv.lo)
            out.append(iv.hi)
        return out

    def complement_pieces(self) -> list[tuple[Fraction, bool, Fraction, bool]]:
        """Complement within [0,1] as (lo, lo_closed, hi, hi_closed) pieces."""
        out = []
        cursor, cursor_closed = ZERO, True
        for iv in self.intervals:
            if cursor < iv.lo:  # gap up to the left-closed start of iv
                out.append((cursor, cursor_closed, iv.lo, False))
            cursor, cursor_closed = iv.hi, not iv.hi_closed
        if cursor < ONE or (cursor == ONE and cursor_closed):
            out.append((cursor, cursor_closed, ONE, True))
        return out


@dataclass(frozen=True)
class VerifStructure:
    messages: tuple[tuple[str, IntervalUnion], ...]
    full_verifiability: bool = False

    def __post_init__(self):
        names = [name for name, _ in self.messages]
        if len(set(names)) != len(names):
            raise ConstructionError("message names must be unique")
        for name in names:
            if name.startswith(IDENTITY_PREFIX):
                raise ConstructionError(f"message name {name!r} uses the reserved prefix {IDENTITY_PREFIX!r}")
        if not self.full_verifiability:
            if not self.messages:
                raise ConstructionError("a structure without full verifiability needs messages")
            union = IntervalUnion(tuple(iv for _, supp in self.messages for iv in supp.intervals))
            covered = union.intervals
            if len(covered) != 1 or covered[0].lo != ZERO or covered[0].hi != ONE or not covered[0].hi_closed:
                raise ConstructionError("message supports must cover all of [0,1]")

    def support(self, name: str) -> IntervalUnion:
        for n, supp in self.messages:
            if n == name:
                return supp
        raise UnknownMessageError(name)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.messages)

    def support_endpoints(self) -> list[Fraction]:
        pts = {ZERO, ONE}
        for _, supp in self.messages:
            pts.update(supp.endpoints())
        return sorted(pts)


def identity_name(s: Fraction) -> str:
    return IDENTITY_PREFIX + format_rational(s)


def messages_at(structure: VerifStructure, s: Fraction) -> set[str]:
    """All messages available to type s (identity message included under the flag)."""
    s = Fraction(s)
    if not in_unit_interval(s):
        raise DomainError(f"type {s} outside [0,1]")
    out = {name for name, supp in structure.messages if supp.contains(s)}
    if structure.full_verifiability:
        out.add(identity_name(s))
    if not out:
        raise ConstructionError(f"no message available at type {s}: structure violates coverage")
    return out


def min_inverse(structure: VerifStructure, name: str) -> Fraction:
    """Smallest type able to send the message (attained: supports are left-closed)."""
    if name.startswith(IDENTITY_PREFIX):
        if not structure.full_verifiability:
            raise UnknownMessageError(name)
        return parse_rational(name[len(IDENTITY_PREFIX):])
    return structure.support(name).minimum


def max_min_available(structure: VerifStructure, s: Fraction) -> Fraction:
    """Best credible type reachable from s: max over M(s) of min of the support."""
    if structure.full_verifiability:
        # the identity message dominates: every finite message at s has minimum <= s
        return Fraction(s)
    return max(min_inverse(structure, m) for m in messages_at(structure, s))


@dataclass(frozen=True)
class LowestConsistentSet:
    types: tuple[Fraction, ...]
    all_of_unit_interval: bool = False

    def contains(self, s: Fraction) -> bool:
        return self.all_of_unit_interval or Fraction(s) in self.types

    def issuperset(self, other: "LowestConsistentSet") -> bool:
        if self.all_of_unit_interval:
            return True
        if other.all_of_unit_interval:
            return False
        return set(self.types) >= set(other.types)


def lowest_consistent_set(structure: VerifStructure) -> LowestConsistentSet:
    """Types that are the minimum of some message support (all of [0,1] under the flag)."""
    minima = sorted({supp.minimum for _, supp in structure.messages})
    return LowestConsistentSet(tuple(minima), structure.full_verifiability)


class IdentityTypeMap:
    """Flag object standing in for the map s -> s under full verifiability."""

    def __call__(self, s: Fraction) -> Fraction:
        return Fraction(s)

    def __repr__(self):
        return "IdentityTypeMap()"

    def __eq__(self, other):
        return isinstance(other, IdentityTypeMap)

    def __hash__(self):
        return hash(IdentityTypeMap)


IDENTITY_TYPE_MAP = IdentityTypeMap()


def skeptical_type_map(structure: VerifStructure) -> StepFunction | IdentityTypeMap:
    """Step function g(s) = max over available messages of the support minimum.

    Under full verifiability g is the identity, returned as the flagged
    IdentityTypeMap (a piecewise-linear special case the equilibrium module
    consumes directly).

    The step representation carries the value of each open inter-endpoint
    interval; at an endpoint whose exact value differs from the value just to
    its right (a support closed at an interior right end, or a degenerate
    interior support point), the pointwise-exact value is recovered via
    max_min_available, not from this representation.
    """
    if structure.full_verifiability:
        return IDENTITY_TYPE_MAP
    grid = structure.support_endpoints()
    bps: list[Fraction] = []
    vals: list[Fraction] = []
    for a, b in zip(grid, grid[1:]):
        mid = (a + b) / 2
        v = max_min_available(structure, mid)
        if not vals or v != vals[-1]:
            bps.append(a)
            vals.append(v)
    v1 = max_min_available(structure, ONE)
    if v1 != vals[-1]:
        bps.append(ONE)
        vals.append(v1)
    return StepFunction(tuple(bps), tuple(vals))


# ---------------------------------------------------------------------------
# builders for the canonical environments
# ---------------------------------------------------------------------------

def cheap_talk(names: Sequence[str] = ("m_0",)) -> VerifStructure:
    """Every message available to every type: talk is cheap."""
    if not names:
        raise ConstructionError("cheap talk needs at least one message")
    full = IntervalUnion.from_pairs([(ZERO, ONE)])
    return VerifStructure(tuple((n, full) for n in names))


def thresholds(levels: Sequence, names: Sequence[str] | None = None) -> VerifStructure:
    """Certifiable thresholds: message i provable exactly by types >= level i.

    A base message on all of [0,1] is always included, so `levels` lists the
    strictly ascending thresholds in (0,1].
    """
    lvls = [Fraction(x) for x in levels]
    if any(not (ZERO < x <= ONE) for x in lvls):
        raise ConstructionError("thresholds must lie in (0,1]")
    if any(not a < b for a, b in zip(lvls, lvls[1:])):
        raise ConstructionError("thresholds must be strictly ascending")
    if names is None:
        names = [f"m_{i}" for i in range(len(lvls) + 1)]
    if len(names) != len(lvls) + 1:
        raise ConstructionError("need one name per threshold plus the base message")
    msgs = [(names[0], IntervalUnion.from_pairs([(ZERO, ONE)]))]
    for name, lvl in zip(names[1:], lvls):
        msgs.append((name, IntervalUnion.from_pairs([(lvl, ONE)])))
    return VerifStructure(tuple(msgs))


def partition(cells: Sequence, names: Sequence[str] | None = None) -> VerifStructure:
    """Interval-partition structure: one message per left-closed cell.

    `cells` are (lo, hi) pairs tiling [0,1]; every cell is [lo, hi) except the
    last, which is closed at 1.
    """
    pairs = [(Fraction(lo), Fraction(hi)) for lo, hi in cells]
    if not pairs or pairs[0][0] != ZERO or pairs[-1][1] != ONE:
        raise ConstructionError("partition cells must tile [0,1]")
    for (lo, hi), (lo2, _) in zip(pairs, pairs[1:]):
        if hi != lo2:
            raise ConstructionError("partition cells must be contiguous and disjoint")
    for lo, hi in pairs:
        if not lo < hi:
            raise ConstructionError("partition cells must be non-degenerate")
    if names is None:
        names = [f"m_{i}" for i in range(len(pairs))]
    if len(names) != len(pairs):
        raise ConstructionError("need one name per cell")
    msgs = []
    for i, (name, (lo, hi)) in enumerate(zip(names, pairs)):
        closed = i == len(pairs) - 1
        msgs.append((name, IntervalUnion.from_pairs([(lo, hi, closed)])))
    return VerifStructure(tuple(msgs))


def add_message(structure: VerifStructure, name: str, support: IntervalUnion) -> VerifStructure:
    """The 'adding a message' shift: identical except `name` is newly available."""
    return replace(structure, messages=structure.messages + ((name, support),))


def full_verif(base: VerifStructure) -> VerifStructure:
    """Grant every type its identity message on top of an existing structure."""
    return replace(base, full_verifiability=True)


def mandatory_disclosure() -> VerifStructure:
    """Each type can only report itself truthfully."""
    return VerifStructure((), full_verifiability=True)
