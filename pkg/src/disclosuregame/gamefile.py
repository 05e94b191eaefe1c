"""JSON schemas for games, structures, equilibria and verdicts.

All rationals travel as strings ("p/q" or an integer string); floats are
rejected so files round-trip exactly.  Parse failures raise GameFileError with
a field-path diagnostic like ``payoff.values[2]``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .comparative import OrderVerdict
from .equilibrium import Equilibrium, GameSpec, Signal
from .errors import ConstructionError, GameFileError
from .piecewise import StepFunction
from .rationals import format_rational, parse_rational
from .verifiability import IntervalUnion, SupportInterval, VerifStructure


def _rat(obj: Any, path: str) -> Fraction:
    try:
        return parse_rational(obj)
    except ValueError as exc:
        raise GameFileError(f"{path}: {exc}") from exc


def _expect(obj: Any, kind: type, path: str):
    if not isinstance(obj, kind):
        raise GameFileError(f"{path}: expected {kind.__name__}, got {type(obj).__name__}")
    return obj


# ---------------------------------------------------------------------------
# structures
# ---------------------------------------------------------------------------

def structure_to_obj(structure: VerifStructure) -> dict:
    return {
        "full_verifiability": structure.full_verifiability,
        "messages": [
            {
                "name": name,
                "support": [
                    {
                        "lo": format_rational(iv.lo),
                        "hi": format_rational(iv.hi),
                        "hi_closed": iv.hi_closed,
                    }
                    for iv in supp.intervals
                ],
            }
            for name, supp in structure.messages
        ],
    }


def structure_from_obj(obj: Any, path: str = "structure") -> VerifStructure:
    _expect(obj, dict, path)
    full = obj.get("full_verifiability", False)
    if not isinstance(full, bool):
        raise GameFileError(f"{path}.full_verifiability: expected bool")
    messages = []
    raw_msgs = _expect(obj.get("messages", []), list, f"{path}.messages")
    for i, m in enumerate(raw_msgs):
        mp = f"{path}.messages[{i}]"
        _expect(m, dict, mp)
        name = _expect(m.get("name"), str, f"{mp}.name")
        raw_supp = _expect(m.get("support"), list, f"{mp}.support")
        ivs = []
        for j, iv in enumerate(raw_supp):
            ip = f"{mp}.support[{j}]"
            _expect(iv, dict, ip)
            lo = _rat(iv.get("lo"), f"{ip}.lo")
            hi = _rat(iv.get("hi"), f"{ip}.hi")
            hi_closed = iv.get("hi_closed", True)
            if not isinstance(hi_closed, bool):
                raise GameFileError(f"{ip}.hi_closed: expected bool")
            try:
                ivs.append(SupportInterval(lo, hi, hi_closed))
            except ConstructionError as exc:
                raise GameFileError(f"{ip}: {exc}") from exc
        try:
            messages.append((name, IntervalUnion(tuple(ivs))))
        except ConstructionError as exc:
            raise GameFileError(f"{mp}.support: {exc}") from exc
    try:
        return VerifStructure(tuple(messages), full)
    except ConstructionError as exc:
        raise GameFileError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# games
# ---------------------------------------------------------------------------

def game_to_obj(game: GameSpec) -> dict:
    return {
        "prior": format_rational(game.prior),
        "payoff": {
            "breakpoints": [format_rational(b) for b in game.payoff.breakpoints],
            "values": [format_rational(v) for v in game.payoff.values],
        },
        "structure": structure_to_obj(game.structure),
    }


def game_from_obj(obj: Any, path: str = "") -> GameSpec:
    _expect(obj, dict, path or "game")
    prefix = f"{path}." if path else ""
    prior = _rat(obj.get("prior"), f"{prefix}prior")
    payoff_obj = _expect(obj.get("payoff"), dict, f"{prefix}payoff")
    raw_b = _expect(payoff_obj.get("breakpoints"), list, f"{prefix}payoff.breakpoints")
    raw_v = _expect(payoff_obj.get("values"), list, f"{prefix}payoff.values")
    bps = tuple(_rat(b, f"{prefix}payoff.breakpoints[{i}]") for i, b in enumerate(raw_b))
    vals = tuple(_rat(v, f"{prefix}payoff.values[{i}]") for i, v in enumerate(raw_v))
    try:
        payoff = StepFunction(bps, vals)
    except ValueError as exc:
        raise GameFileError(f"{prefix}payoff: {exc}") from exc
    structure = structure_from_obj(obj.get("structure"), f"{prefix}structure")
    try:
        return GameSpec(payoff, prior, structure)
    except ValueError as exc:
        raise GameFileError(f"{prefix}: {exc}") from exc


def load_game(path: str) -> GameSpec:
    return game_from_obj(_load_json(path))


def load_structure(path: str) -> VerifStructure:
    """Read a structure file, or the structure part of a full game file."""
    obj = _load_json(path)
    if isinstance(obj, dict) and "structure" in obj and "messages" not in obj:
        return structure_from_obj(obj["structure"])
    return structure_from_obj(obj)


def _load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise GameFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise GameFileError(f"parse error in {path} at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


# ---------------------------------------------------------------------------
# equilibria and verdicts
# ---------------------------------------------------------------------------

def equilibrium_to_obj(eq: Equilibrium, pnbp_holds: bool) -> dict:
    return {
        "value": format_rational(eq.value),
        "signal": [
            {
                "posterior": format_rational(s),
                "weight": format_rational(w),
                "message": eq.messaging[s],
            }
            for s, w in zip(eq.signal.support, eq.signal.weights)
        ],
        "beliefs": {name: format_rational(b) for name, b in sorted(eq.beliefs.items())},
        "pnbp": pnbp_holds,
        "s_minus": format_rational(eq.s_minus),
        "s_plus": format_rational(eq.s_plus),
    }


def signal_from_obj(obj: Any, path: str = "signal") -> tuple[Signal, dict]:
    """Parse a serialized signal; returns (Signal, messaging map)."""
    _expect(obj, list, path)
    support, weights, messaging = [], [], {}
    for i, entry in enumerate(obj):
        ep = f"{path}[{i}]"
        _expect(entry, dict, ep)
        s = _rat(entry.get("posterior"), f"{ep}.posterior")
        w = _rat(entry.get("weight"), f"{ep}.weight")
        m = _expect(entry.get("message"), str, f"{ep}.message")
        support.append(s)
        weights.append(w)
        messaging[s] = m
    try:
        return Signal(tuple(support), tuple(weights)), messaging
    except ValueError as exc:
        raise GameFileError(f"{path}: {exc}") from exc


def verdict_to_obj(verdict: OrderVerdict) -> dict:
    witness: Any = None
    if not verdict.holds:
        if verdict.relation == "lc":
            witness = {"type": format_rational(verdict.witness)}
        else:
            s, pieces = verdict.witness
            witness = {
                "type": format_rational(s),
                "separating_set": [
                    {
                        "lo": format_rational(lo),
                        "lo_closed": lo_closed,
                        "hi": format_rational(hi),
                        "hi_closed": hi_closed,
                    }
                    for lo, lo_closed, hi, hi_closed in pieces
                ],
            }
    return {"relation": verdict.relation, "holds": verdict.holds, "witness": witness}
