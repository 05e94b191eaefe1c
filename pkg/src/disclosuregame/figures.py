"""Deterministic SVG rendering of a game and its solved equilibrium.

Layout: the payoff as a bold step curve with
filled dots at attained jump points and open circles at the limits, the
skepticism-adjusted payoff dashed, its concave envelope as a gray chord, the
equilibrium expected payoff as a large gray dot above the prior, the two
ex-post payoffs as small gray dots, and one availability bar per message below
the horizontal axis.

All geometry is computed in exact rationals and only converted to fixed-width
decimals when written, so output is byte-for-byte deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .equilibrium import Equilibrium, GameSpec, skeptical_value, value_hull
from .rationals import ONE, ZERO, format_rational


@dataclass(frozen=True)
class FigureSpec:
    """Canvas geometry and which layers to draw."""

    width: int = 720
    plot_left: int = 60
    plot_right: int = 620
    plot_top: int = 30
    plot_bottom: int = 330
    row_height: int = 26
    draw_payoff: bool = True
    draw_adjusted: bool = True
    draw_envelope: bool = True
    draw_equilibrium: bool = True
    draw_availability: bool = True


DEFAULT_FIGURE = FigureSpec()


def _fmt(x: float) -> str:
    return f"{x:.3f}"


class _Mapper:
    def __init__(self, spec: FigureSpec, y_lo: Fraction, y_hi: Fraction):
        self.spec = spec
        self.y_lo, self.y_hi = y_lo, y_hi

    def x(self, v: Fraction) -> str:
        t = Fraction(v)
        return _fmt(self.spec.plot_left + float(t) * (self.spec.plot_right - self.spec.plot_left))

    def y(self, v: Fraction) -> str:
        span = self.y_hi - self.y_lo
        t = (Fraction(v) - self.y_lo) / span
        return _fmt(self.spec.plot_bottom - float(t) * (self.spec.plot_bottom - self.spec.plot_top))


def render_game_svg(game: GameSpec, eq: Equilibrium, spec: FigureSpec = DEFAULT_FIGURE) -> str:
    WIDTH = spec.width
    PLOT_LEFT = spec.plot_left
    PLOT_RIGHT = spec.plot_right
    PLOT_TOP = spec.plot_top
    PLOT_BOTTOM = spec.plot_bottom
    ROW_HEIGHT = spec.row_height

    v = game.payoff
    vm = skeptical_value(game)
    hull = value_hull(game)
    ys = set(v.values) | set(vm.values) | {y for _, y in hull.vertices} | {eq.value, ZERO}
    y_lo, y_hi = min(ys), max(ys)
    if y_lo == y_hi:
        y_hi = y_lo + 1
    pad = (y_hi - y_lo) / 12
    m = _Mapper(spec, y_lo - pad, y_hi + pad)

    rows = list(game.structure.names) if spec.draw_availability else []
    if spec.draw_availability and game.structure.full_verifiability:
        rows.append("identity")
    height = PLOT_BOTTOM + 40 + ROW_HEIGHT * len(rows) + 20

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
        f'viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{height}" fill="white"/>',
        # axes
        f'<line x1="{m.x(ZERO)}" y1="{PLOT_BOTTOM}" x2="{m.x(ONE)}" y2="{PLOT_BOTTOM}" stroke="black"/>',
        f'<line x1="{m.x(ZERO)}" y1="{PLOT_BOTTOM}" x2="{m.x(ZERO)}" y2="{PLOT_TOP}" stroke="black"/>',
    ]

    # x ticks: breakpoints, support endpoints, prior
    ticks = sorted(set(v.breakpoints) | {ZERO, ONE, game.prior})
    for t in ticks:
        xt = m.x(t)
        parts.append(f'<line x1="{xt}" y1="{PLOT_BOTTOM}" x2="{xt}" y2="{PLOT_BOTTOM + 4}" stroke="black"/>')
        parts.append(
            f'<text x="{xt}" y="{PLOT_BOTTOM + 16}" text-anchor="middle">{format_rational(t)}</text>'
        )
    for yv in sorted(set(v.values)):
        parts.append(
            f'<text x="{PLOT_LEFT - 8}" y="{m.y(yv)}" text-anchor="end" dominant-baseline="middle">'
            f"{format_rational(yv)}</text>"
        )

    if spec.draw_envelope:
        # concave envelope of the adjusted payoff: gray chord
        chord = " ".join(f"{m.x(x)},{m.y(y)}" for x, y in hull.vertices)
        parts.append(f'<polyline points="{chord}" fill="none" stroke="#9a9a9a" stroke-width="1.5"/>')

    if spec.draw_adjusted:
        # adjusted payoff: dashed
        for lo, hi, val in vm.pieces():
            parts.append(
                f'<line x1="{m.x(lo)}" y1="{m.y(val)}" x2="{m.x(hi)}" y2="{m.y(val)}" '
                f'stroke="#555555" stroke-width="1.5" stroke-dasharray="6,4"/>'
            )

    if spec.draw_payoff:
        # payoff: bold step with attained/limit markers
        pieces = list(v.pieces())
        for i, (lo, hi, val) in enumerate(pieces):
            parts.append(
                f'<line x1="{m.x(lo)}" y1="{m.y(val)}" x2="{m.x(hi)}" y2="{m.y(val)}" '
                f'stroke="black" stroke-width="3"/>'
            )
            if i > 0:
                parts.append(f'<circle cx="{m.x(lo)}" cy="{m.y(val)}" r="4" fill="black"/>')
                prev_val = pieces[i - 1][2]
                parts.append(
                    f'<circle cx="{m.x(lo)}" cy="{m.y(prev_val)}" r="4" fill="white" stroke="black"/>'
                )

    # prior marker and equilibrium dots
    xp = m.x(game.prior)
    parts.append(
        f'<line x1="{xp}" y1="{PLOT_BOTTOM}" x2="{xp}" y2="{PLOT_TOP}" '
        f'stroke="#cccccc" stroke-width="1" stroke-dasharray="2,3"/>'
    )
    if spec.draw_equilibrium:
        for s, w in zip(eq.signal.support, eq.signal.weights):
            ys_post = step_value_at(game, eq, s)
            parts.append(
                f'<circle cx="{m.x(s)}" cy="{m.y(ys_post)}" r="4" fill="#9a9a9a" stroke="black"/>'
            )
        parts.append(
            f'<circle cx="{xp}" cy="{m.y(eq.value)}" r="7" fill="#9a9a9a" stroke="black"/>'
        )

    # message availability bars below the axis
    base = PLOT_BOTTOM + 44
    for i, name in enumerate(rows):
        y_row = base + i * ROW_HEIGHT
        if name == "identity":
            parts.append(
                f'<line x1="{m.x(ZERO)}" y1="{y_row}" x2="{m.x(ONE)}" y2="{y_row}" '
                f'stroke="black" stroke-width="1" stroke-dasharray="1,3"/>'
            )
        else:
            supp = game.structure.support(name)
            for iv in supp.intervals:
                if iv.lo == iv.hi:
                    parts.append(f'<circle cx="{m.x(iv.lo)}" cy="{y_row}" r="2.5" fill="black"/>')
                else:
                    parts.append(
                        f'<line x1="{m.x(iv.lo)}" y1="{y_row}" x2="{m.x(iv.hi)}" y2="{y_row}" '
                        f'stroke="black" stroke-width="2"/>'
                    )
        parts.append(
            f'<text x="{PLOT_RIGHT + 10}" y="{y_row}" dominant-baseline="middle">{name}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def step_value_at(game: GameSpec, eq: Equilibrium, s: Fraction) -> Fraction:
    """Ex-post payoff of an on-path type: v at the induced receiver belief."""
    from .piecewise import step_eval
    from .verifiability import min_inverse

    name = eq.messaging[s]
    if name in eq.beliefs:
        return step_eval(game.payoff, eq.beliefs[name])
    return step_eval(game.payoff, min_inverse(game.structure, name))
