"""Equilibrium computation for covert acquisition-and-disclosure games.

The solver follows the two canonical constructions:

* With PNBP (the sender can prove news better than the prior), beliefs are
  maximally skeptical, the signal splits the prior between the nearest
  lowest-consistent contact points of the concave envelope of the
  skepticism-adjusted payoff, and the unique value is that envelope at the
  prior.
* Without PNBP, the sender acquires no information: a degenerate signal at the
  prior, one designated message m0 interpreted at the prior, skeptical beliefs
  everywhere else, value v(prior).

Everything is exact rational arithmetic; verification re-derives optimality on
an independent grid oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple, Optional

from .errors import DomainError, EquilibriumExistenceError, PreconditionError, UnknownMessageError
from .piecewise import (
    ConcavePL,
    StepFunction,
    cav,
    contact_set,
    hull_candidates,
    pl_eval,
    step_eval,
    upper_hull_points,
)
from .rationals import ONE, ZERO, in_unit_interval
from .verifiability import (
    IDENTITY_PREFIX,
    VerifStructure,
    identity_name,
    max_min_available,
    messages_at,
    min_inverse,
)


@dataclass(frozen=True)
class GameSpec:
    payoff: StepFunction
    prior: Fraction
    structure: VerifStructure

    def __post_init__(self):
        object.__setattr__(self, "prior", Fraction(self.prior))
        if not in_unit_interval(self.prior):
            raise DomainError(f"prior {self.prior} outside [0,1]")
        if not self.payoff.is_non_decreasing:
            raise ValueError("payoff function must be non-decreasing")


@dataclass(frozen=True)
class Signal:
    """Finite-support distribution over posteriors; mean must equal the prior."""

    support: tuple[Fraction, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        sup = tuple(Fraction(s) for s in self.support)
        wts = tuple(Fraction(w) for w in self.weights)
        if len(sup) != len(wts) or not sup:
            raise ValueError("support and weights must be non-empty and same length")
        if len(set(sup)) != len(sup):
            raise ValueError("support entries must be distinct")
        if any(not in_unit_interval(s) for s in sup):
            raise ValueError("support entries must lie in [0,1]")
        if any(w <= 0 for w in wts):
            raise ValueError("weights must be positive")
        if sum(wts) != 1:
            raise ValueError("weights must sum to 1")
        order = sorted(range(len(sup)), key=lambda i: sup[i])
        object.__setattr__(self, "support", tuple(sup[i] for i in order))
        object.__setattr__(self, "weights", tuple(wts[i] for i in order))

    @property
    def mean(self) -> Fraction:
        return sum(w * s for w, s in zip(self.weights, self.support))


@dataclass(frozen=True)
class Equilibrium:
    signal: Signal
    messaging: Mapping[Fraction, str]
    beliefs: Mapping[str, Fraction]
    value: Fraction
    w_beta: StepFunction
    s_minus: Fraction
    s_plus: Fraction


@dataclass(frozen=True)
class PnbpVerdict:
    holds: bool
    witness: Optional[str] = None

    def __bool__(self):
        return self.holds


class ValueResult(NamedTuple):
    value: Fraction
    tag: str  # "unique" | "sender_preferred"


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    condition: Optional[int] = None  # 1 info acquisition, 2 communication, 3 beliefs
    detail: str = ""
    witness: object = None


def pnbp(game: GameSpec) -> PnbpVerdict:
    """Can the sender prove news better than the prior?

    True iff some message m has v(min of its support) strictly above v(prior);
    under full verifiability that reduces to v(prior) < v(1), witnessed by the
    identity message of type 1.
    """
    v, p = game.payoff, game.prior
    vp = step_eval(v, p)
    if game.structure.full_verifiability:
        if step_eval(v, ONE) > vp:
            return PnbpVerdict(True, identity_name(ONE))
        return PnbpVerdict(False)
    best: Optional[tuple[Fraction, str]] = None
    for name, supp in game.structure.messages:
        val = step_eval(v, supp.minimum)
        if val > vp and (best is None or val > best[0] or (val == best[0] and name < best[1])):
            best = (val, name)
    if best is None:
        return PnbpVerdict(False)
    return PnbpVerdict(True, best[1])


def skeptical_value(game: GameSpec) -> StepFunction:
    """Skepticism-adjusted payoff v(g(s)) as a step function; v itself under full verifiability.

    The step representation carries open-interval values; exact point values at
    support endpoints come from `skeptical_payoff_at`.
    """
    if game.structure.full_verifiability:
        return game.payoff
    from .verifiability import skeptical_type_map

    g = skeptical_type_map(game.structure)
    return g.map_values(lambda t: step_eval(game.payoff, t))


def skeptical_payoff_at(game: GameSpec, s: Fraction) -> Fraction:
    """Pointwise-exact skepticism-adjusted payoff v(max min available at s)."""
    return step_eval(game.payoff, max_min_available(game.structure, s))


def value_hull(game: GameSpec) -> ConcavePL:
    """Concave envelope of the skepticism-adjusted payoff.

    Candidates are the step-representation piece endpoints plus the exact point
    values at every support endpoint, so supports closed at an interior right
    end (or degenerate at a point) contribute the value they actually attain.
    """
    vm = skeptical_value(game)
    pts = hull_candidates(vm)
    if not game.structure.full_verifiability:
        for e in game.structure.support_endpoints():
            pts.append((e, skeptical_payoff_at(game, e)))
    return ConcavePL(tuple(upper_hull_points(pts)))


def equilibrium_value(game: GameSpec) -> ValueResult:
    """Unique value (cav of adjusted payoff at the prior) under PNBP, else v(prior)."""
    if pnbp(game).holds:
        return ValueResult(pl_eval(value_hull(game), game.prior), "unique")
    return ValueResult(step_eval(game.payoff, game.prior), "sender_preferred")


def split_points(w: StepFunction, prior: Fraction) -> tuple[Fraction, Fraction]:
    """Nearest contact points of w with its concave envelope around the prior.

    s_minus is the supremum of contact points <= prior, s_plus the infimum of
    those >= prior.  For upper-semicontinuous w both are attained; a
    non-monotone step representation can leave the left supremum at the open
    end of a contact component, in which case the supremum value is still
    returned.
    """
    prior = Fraction(prior)
    if not in_unit_interval(prior):
        raise DomainError(f"prior {prior} outside [0,1]")
    comps = contact_set(w, cav(w))
    s_minus = None
    s_plus = None
    for lo, hi, hi_closed in comps:
        inside = lo <= prior and (prior < hi or (prior == hi and hi_closed))
        if inside:
            return prior, prior
        if lo <= prior:
            s_minus = min(hi, prior)
        if lo >= prior and s_plus is None:
            s_plus = lo
    if s_minus is None or s_plus is None:
        raise PreconditionError("contact set misses one side of the prior")
    return s_minus, s_plus


def _skeptical_beliefs(structure: VerifStructure) -> dict[str, Fraction]:
    return {name: supp.minimum for name, supp in structure.messages}


def _argmax_message(structure: VerifStructure, s: Fraction) -> str:
    """Deterministic argmax of min-support over available messages (lexicographic ties)."""
    best_name = None
    best_min = None
    for m in sorted(messages_at(structure, s)):
        mv = min_inverse(structure, m)
        if best_min is None or mv > best_min:
            best_name, best_min = m, mv
    return best_name


def w_beta_step(structure: VerifStructure, payoff: StepFunction, beliefs: Mapping[str, Fraction]) -> StepFunction:
    """Interim value w(s) = max over available m of v(beliefs[m]) as a step function.

    Identity messages (full verifiability) contribute v(s).  Grid granularity
    covers both support endpoints and payoff breakpoints so each open piece is
    genuinely constant.
    """
    grid = sorted(set(structure.support_endpoints()) | set(payoff.breakpoints) | {ZERO, ONE})

    def w_at(s: Fraction) -> Fraction:
        best = None
        for m in messages_at(structure, s):
            if m.startswith(IDENTITY_PREFIX):
                val = step_eval(payoff, s)
            else:
                val = step_eval(payoff, beliefs[m])
            if best is None or val > best:
                best = val
        return best

    bps: list[Fraction] = []
    vals: list[Fraction] = []
    for a, b in zip(grid, grid[1:]):
        v = w_at((a + b) / 2)
        if not vals or v != vals[-1]:
            bps.append(a)
            vals.append(v)
    v1 = w_at(ONE)
    if v1 != vals[-1]:
        bps.append(ONE)
        vals.append(v1)
    return StepFunction(tuple(bps), tuple(vals))


def solve(game: GameSpec) -> Equilibrium:
    """Canonical equilibrium: skeptical two-point split under PNBP, no acquisition otherwise."""
    if pnbp(game).holds:
        return _solve_pnbp(game)
    return _solve_no_pnbp(game)


def _solve_no_pnbp(game: GameSpec) -> Equilibrium:
    structure, v, p = game.structure, game.payoff, game.prior
    available = sorted(messages_at(structure, p))
    best_min = max(min_inverse(structure, m) for m in available)
    m0 = min(m for m in available if min_inverse(structure, m) == best_min)
    beliefs = _skeptical_beliefs(structure)
    beliefs[m0] = p
    signal = Signal((p,), (ONE,))
    messaging = {p: m0}
    value = step_eval(v, p)
    return Equilibrium(
        signal=signal,
        messaging=messaging,
        beliefs=beliefs,
        value=value,
        w_beta=w_beta_step(structure, v, beliefs),
        s_minus=p,
        s_plus=p,
    )


def _solve_pnbp(game: GameSpec) -> Equilibrium:
    structure, v, p = game.structure, game.payoff, game.prior
    hull = value_hull(game)
    # candidate split points: exact contact with the envelope plus
    # lowest-consistency, so Bayes on path holds with skeptical beliefs.
    xs = set(hull.xs) | {ZERO, ONE, p} | set(structure.support_endpoints())
    vm = skeptical_value(game)
    xs |= set(vm.breakpoints) | set(v.breakpoints)
    candidates = []
    for x in sorted(xs):
        if max_min_available(structure, x) != x:
            continue
        if pl_eval(hull, x) == skeptical_payoff_at(game, x):
            candidates.append(x)
    if p in candidates:
        s_minus = s_plus = p
        signal = Signal((p,), (ONE,))
    else:
        left = [x for x in candidates if x < p]
        right = [x for x in candidates if x > p]
        if not left or not right:
            raise EquilibriumExistenceError(
                "no lowest-consistent contact point on one side of the prior; "
                "structure violates the upper-semicontinuity assumption"
            )
        s_minus, s_plus = max(left), min(right)
        w_lo = (s_plus - p) / (s_plus - s_minus)
        signal = Signal((s_minus, s_plus), (w_lo, 1 - w_lo))
    # value identity: the envelope must be affine between the chosen points
    target = pl_eval(hull, p)
    achieved = sum(
        w * skeptical_payoff_at(game, s) for w, s in zip(signal.weights, signal.support)
    )
    if achieved != target:
        raise EquilibriumExistenceError(
            "two-point split cannot attain the envelope value; "
            "structure violates the upper-semicontinuity assumption"
        )
    beliefs = _skeptical_beliefs(structure)
    messaging = {}
    for s in signal.support:
        m = _argmax_message(structure, s)
        messaging[s] = m
        if m.startswith(IDENTITY_PREFIX):
            beliefs[m] = min_inverse(structure, m)
    return Equilibrium(
        signal=signal,
        messaging=messaging,
        beliefs=beliefs,
        value=target,
        w_beta=skeptical_value(game),
        s_minus=s_minus,
        s_plus=s_plus,
    )


def _belief_of(game: GameSpec, beliefs: Mapping[str, Fraction], name: str) -> Fraction:
    if name in beliefs:
        return beliefs[name]
    if name.startswith(IDENTITY_PREFIX) and game.structure.full_verifiability:
        return min_inverse(game.structure, name)  # identity beliefs are forced
    raise UnknownMessageError(name)


def _validate_structure(game: GameSpec, eq: Equilibrium) -> None:
    """Structural validity: shapes, Bayes plausibility of the signal, value identity."""
    if eq.signal.mean != game.prior:
        raise ValueError("signal is not Bayes-plausible for the game's prior")
    for name in game.structure.names:
        if name not in eq.beliefs:
            raise ValueError(f"beliefs missing finite message {name!r}")
    for name in eq.beliefs:
        if name.startswith(IDENTITY_PREFIX) and not game.structure.full_verifiability:
            raise ValueError(f"identity belief {name!r} without full verifiability")
    total = ZERO
    for s, w in zip(eq.signal.support, eq.signal.weights):
        if s not in eq.messaging:
            raise ValueError(f"messaging missing support type {s}")
        total += w * step_eval(game.payoff, _belief_of(game, eq.beliefs, eq.messaging[s]))
    if total != eq.value:
        raise ValueError("value does not match the signal/messaging/beliefs it claims")


def verify_equilibrium(game: GameSpec, eq: Equilibrium) -> VerifyReport:
    """Check the three equilibrium conditions; first violation wins.

    1. Optimal information acquisition: the claimed value equals the grid
       oracle's best-response value against the stated beliefs.
    2. Sequentially rational communication: each on-path type sends a message
       maximizing v(beliefs) among its available messages.
    3. Consistent beliefs: every belief lies in the convex hull of the
       message's support, and on-path messages satisfy Bayes' rule.
    """
    from . import oracle  # late import: oracle builds on this module's types

    _validate_structure(game, eq)
    beliefs = dict(eq.beliefs)

    # (1) optimal information acquisition
    best_value, best_signal = oracle.best_deviation(game, beliefs)
    if best_value != eq.value:
        return VerifyReport(
            False,
            1,
            f"profitable deviation: value {eq.value} below best response {best_value}",
            best_signal,
        )

    # (2) sequentially rational communication
    for s in eq.signal.support:
        m = eq.messaging[s]
        avail = messages_at(game.structure, s)
        if m not in avail:
            return VerifyReport(False, 2, f"type {s} sends unavailable message {m!r}", (s, m))
        vm = step_eval(game.payoff, _belief_of(game, beliefs, m))
        for other in sorted(avail):
            vo = step_eval(game.payoff, _belief_of(game, beliefs, other))
            if vo > vm:
                return VerifyReport(
                    False, 2, f"type {s} prefers message {other!r} over {m!r}", (s, other)
                )

    # (3) consistent receiver beliefs
    for name, supp in game.structure.messages:
        lo, hi = supp.hull_bounds()
        b = beliefs[name]
        if not (lo <= b <= hi):
            return VerifyReport(False, 3, f"belief for {name!r} outside conv support", (name, b))
    for name, b in beliefs.items():
        if name.startswith(IDENTITY_PREFIX) and b != min_inverse(game.structure, name):
            return VerifyReport(False, 3, f"identity belief {name!r} must equal its type", (name, b))
    senders: dict[str, list[tuple[Fraction, Fraction]]] = {}
    for s, w in zip(eq.signal.support, eq.signal.weights):
        senders.setdefault(eq.messaging[s], []).append((s, w))
    for name, group in senders.items():
        imbalance = sum(w * (s - beliefs[name]) for s, w in group)
        if imbalance != 0:
            return VerifyReport(
                False, 3, f"on-path Bayes fails for {name!r}", (name, beliefs[name])
            )
    return VerifyReport(True)


def check_theorem1(game: GameSpec, eq: Equilibrium) -> bool:
    """Every on-path type is lowest-consistent with the message it sends."""
    if not pnbp(game).holds:
        raise PreconditionError("check_theorem1 requires PNBP")
    return all(min_inverse(game.structure, eq.messaging[s]) == s for s in eq.signal.support)
