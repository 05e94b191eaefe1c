"""Exact piecewise-constant functions on [0,1] and their concave envelopes.

Conventions, fixed once for the whole toolkit:

* A StepFunction takes value ``values[i]`` on ``[breakpoints[i], breakpoints[i+1])``
  and ``values[-1]`` on ``[breakpoints[-1], 1]``.  Pieces are left-closed; the
  final piece is closed at 1.  Non-decreasing instances are therefore upper
  semicontinuous automatically.  Non-monotone instances are allowed (the
  skepticism-adjusted payoff can be non-monotone).
* All arithmetic is over ``fractions.Fraction``; every comparison in this module
  is exact, there are no tolerances anywhere.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import DomainError
from .rationals import ONE, ZERO, in_unit_interval

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class StepFunction:
    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        bps = tuple(Fraction(b) for b in self.breakpoints)
        vals = tuple(Fraction(v) for v in self.values)
        if len(bps) != len(vals) or not bps:
            raise ValueError("breakpoints and values must be non-empty and same length")
        if bps[0] != ZERO:
            raise ValueError("first breakpoint must be 0")
        for a, b in zip(bps, bps[1:]):
            if not a < b:
                raise ValueError("breakpoints must be strictly ascending")
        if bps[-1] > ONE:
            raise ValueError("breakpoints must lie in [0,1]")
        # canonical form: merge adjacent pieces with equal values
        merged_b = [bps[0]]
        merged_v = [vals[0]]
        for b, v in zip(bps[1:], vals[1:]):
            if v != merged_v[-1]:
                merged_b.append(b)
                merged_v.append(v)
        object.__setattr__(self, "breakpoints", tuple(merged_b))
        object.__setattr__(self, "values", tuple(merged_v))

    def __call__(self, x: Fraction) -> Fraction:
        return step_eval(self, x)

    def pieces(self) -> Iterator[tuple[Fraction, Fraction, Fraction]]:
        """Yield (lo, hi, value); every piece is [lo, hi) except the last, [lo, 1]."""
        for i, (b, v) in enumerate(zip(self.breakpoints, self.values)):
            hi = self.breakpoints[i + 1] if i + 1 < len(self.breakpoints) else ONE
            yield b, hi, v

    @property
    def is_non_decreasing(self) -> bool:
        return all(a <= b for a, b in zip(self.values, self.values[1:]))

    def map_values(self, fn) -> "StepFunction":
        """Compose an outer function piece-by-piece (exact for any outer map)."""
        return StepFunction(self.breakpoints, tuple(fn(v) for v in self.values))


def constant(value) -> StepFunction:
    return StepFunction((ZERO,), (Fraction(value),))


def step_eval(f: StepFunction, x: Fraction) -> Fraction:
    """Value of f at x under the left-closed piece convention."""
    x = Fraction(x)
    if not in_unit_interval(x):
        raise DomainError(f"step function argument {x} outside [0,1]")
    return f.values[bisect_right(f.breakpoints, x) - 1]


def step_max(f: StepFunction, g: StepFunction) -> StepFunction:
    """Pointwise maximum, exact on the merged breakpoint grid."""
    bps = sorted(set(f.breakpoints) | set(g.breakpoints))
    return StepFunction(tuple(bps), tuple(max(step_eval(f, b), step_eval(g, b)) for b in bps))


@dataclass(frozen=True)
class ConcavePL:
    """Concave piecewise-linear function given by its vertex chain over [0,1]."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        vs = tuple((Fraction(x), Fraction(y)) for x, y in self.vertices)
        if len(vs) < 2:
            raise ValueError("need at least two vertices")
        if vs[0][0] != ZERO or vs[-1][0] != ONE:
            raise ValueError("vertex chain must span [0,1]")
        slopes = []
        for (x0, y0), (x1, y1) in zip(vs, vs[1:]):
            if not x0 < x1:
                raise ValueError("vertex x-coordinates must be strictly ascending")
            slopes.append((y1 - y0) / (x1 - x0))
        for s0, s1 in zip(slopes, slopes[1:]):
            if not s1 < s0:
                raise ValueError("slopes must strictly decrease (concavity)")
        object.__setattr__(self, "vertices", vs)

    def __call__(self, x: Fraction) -> Fraction:
        return pl_eval(self, x)

    @property
    def xs(self) -> tuple[Fraction, ...]:
        return tuple(x for x, _ in self.vertices)


def pl_eval(g: ConcavePL, x: Fraction) -> Fraction:
    """Exact linear interpolation between the bracketing vertices."""
    x = Fraction(x)
    if not in_unit_interval(x):
        raise DomainError(f"piecewise-linear argument {x} outside [0,1]")
    xs = g.xs
    i = bisect_right(xs, x) - 1
    if i == len(xs) - 1:
        return g.vertices[-1][1]
    (x0, y0), (x1, y1) = g.vertices[i], g.vertices[i + 1]
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def upper_hull_points(points: Iterable[Point]) -> list[Point]:
    """Vertices of the upper concave hull of a finite point set, left to right.

    Collinear interior points are dropped, so consecutive slopes strictly
    decrease.  Duplicate x-coordinates keep only the highest y.
    """
    best: dict[Fraction, Fraction] = {}
    for x, y in points:
        if x not in best or y > best[x]:
            best[x] = y
    pts = sorted(best.items())
    if len(pts) == 1:
        return pts
    hull: list[Point] = []
    for p in pts:
        # pop while the middle point is on or below the chord (cross >= 0
        # means a non-clockwise turn, i.e. not a strict upper-hull vertex)
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            cross = (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox)
            if cross >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def hull_candidates(f: StepFunction) -> list[Point]:
    """Candidate points whose upper hull is the concave envelope of f.

    Each piece contributes its value at both of its endpoints: any concave
    majorant of a constant piece must weakly exceed the piece value at both
    ends (concave functions are continuous on the interior of [0,1]), so the
    hull over this set is the smallest concave majorant.
    """
    pts: list[Point] = []
    for lo, hi, v in f.pieces():
        pts.append((lo, v))
        pts.append((hi, v))
    pts.append((ONE, step_eval(f, ONE)))
    return pts


def cav(f: StepFunction) -> ConcavePL:
    """Smallest concave majorant of f (monotonicity of f not required)."""
    hull = upper_hull_points(hull_candidates(f))
    # candidates always include x=0 and x=1, so the hull spans [0,1]
    return ConcavePL(tuple(hull))


ContactInterval = tuple[Fraction, Fraction, bool]  # (lo, hi, hi_closed); lo always attained


def contact_set(f: StepFunction, g: ConcavePL) -> list[ContactInterval]:
    """Exact set {x in [0,1] : g(x) = f(x)} as maximal intervals/points.

    Within one piece of f the set {g = value} is the touching set of a concave
    function with its floor, hence a single interval; clipping at a right-open
    piece end can make the component half-open, encoded by hi_closed=False.
    A (lo, lo, True) triple is an isolated contact point.
    """
    out: list[ContactInterval] = []
    last_index = len(f.breakpoints) - 1
    for idx, (lo, hi, v) in enumerate(f.pieces()):
        closed_right = idx == last_index
        seg = _level_touch(g, v, lo, hi)
        if seg is None:
            continue
        a, b = seg
        if b == hi and not closed_right:
            if a == b:
                continue  # single touch exactly at the open end: not attained
            out.append((a, b, False))
        else:
            out.append((a, b, True))
    # merge touching components
    merged: list[ContactInterval] = []
    for comp in out:
        if merged and merged[-1][1] == comp[0]:
            merged[-1] = (merged[-1][0], comp[1], comp[2])
        else:
            merged.append(comp)
    return merged


def _level_touch(g: ConcavePL, level: Fraction, lo: Fraction, hi: Fraction):
    """Largest interval [a,b] within [lo,hi] where g equals `level`.

    Requires g >= level on [lo,hi] (g majorizes the piece): the solution set is
    then the touching set of a concave function with a floor, a single closed
    interval whose endpoints are vertices of g or the piece ends, all of which
    the scan below visits.
    """
    xs = [lo] + [x for x in g.xs if lo < x < hi] + [hi]
    touch = [x for x in xs if pl_eval(g, x) == level]
    if not touch:
        return None
    return min(touch), max(touch)


def contact_points(intervals: Sequence[ContactInterval]) -> list[Fraction]:
    """All interval endpoints of a contact set (attained ones only)."""
    pts = []
    for lo, hi, hi_closed in intervals:
        pts.append(lo)
        if hi_closed:
            pts.append(hi)
    return sorted(set(pts))
