"""Intervals over the extended reals and the reflection algebra built on them.

Endpoints may be ``int``, ``float`` or :class:`fractions.Fraction`; the
operations only use ``+``, ``-``, ``*2``, ``/2``, ``min`` and ``max`` so rational
inputs stay exact.  Infinite endpoints are ``math.inf`` / ``-math.inf`` and are
always open.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import List, Union

from .errors import InvalidParams, NotSubinterval, SpecError

Number = Union[int, float, Fraction]

__all__ = [
    "Interval",
    "ReflectionSequence",
    "reflect",
    "reflection_sequence",
    "reflection_closure",
    "shrink",
    "lower_complement",
    "upper_complement",
    "midset",
    "lemma_s_check",
]


@dataclass(frozen=True)
class Interval:
    """A (possibly empty) interval with independently open/closed ends.

    Construction canonicalizes: infinite ends become open and every empty
    interval is stored identically, so ``==`` is a set equality test.
    """

    lower: Number = 0
    upper: Number = 0
    lower_open: bool = True
    upper_open: bool = True
    empty: bool = False

    def __post_init__(self):
        lo, hi = self.lower, self.upper
        if isinstance(lo, float) and math.isnan(lo) or isinstance(hi, float) and math.isnan(hi):
            raise InvalidParams("interval endpoints must not be NaN")
        lo_open = bool(self.lower_open) or lo == -math.inf
        hi_open = bool(self.upper_open) or hi == math.inf
        empty = (
            self.empty
            or lo > hi
            or (lo == hi and (lo_open or hi_open))
            or lo == math.inf
            or hi == -math.inf
        )
        if empty:
            lo, hi, lo_open, hi_open = 0, 0, False, False
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        object.__setattr__(self, "lower_open", lo_open)
        object.__setattr__(self, "upper_open", hi_open)
        object.__setattr__(self, "empty", bool(empty))

    # -- constructors -------------------------------------------------
    @classmethod
    def open(cls, lo: Number, hi: Number) -> "Interval":
        return cls(lo, hi, True, True)

    @classmethod
    def closed(cls, lo: Number, hi: Number) -> "Interval":
        return cls(lo, hi, False, False)

    @classmethod
    def point(cls, p: Number) -> "Interval":
        return cls(p, p, False, False)

    @classmethod
    def empty_set(cls) -> "Interval":
        return cls(empty=True)

    @classmethod
    def real_line(cls) -> "Interval":
        return cls(-math.inf, math.inf)

    # -- predicates ---------------------------------------------------
    @property
    def is_singleton(self) -> bool:
        return not self.empty and self.lower == self.upper

    @property
    def is_open(self) -> bool:
        return not self.empty and self.lower_open and self.upper_open

    @property
    def is_closed(self) -> bool:
        return self.empty or (not self.lower_open and not self.upper_open)

    @property
    def bounded(self) -> bool:
        return self.empty or (math.isfinite(self.lower) and math.isfinite(self.upper))

    @property
    def diam(self) -> Number:
        if self.empty:
            return 0
        return self.upper - self.lower

    def __contains__(self, x) -> bool:
        if self.empty:
            return False
        if x < self.lower or x > self.upper:
            return False
        if x == self.lower and self.lower_open:
            return False
        if x == self.upper and self.upper_open:
            return False
        return True

    def contains(self, x) -> bool:
        return x in self

    def issubset(self, other: "Interval") -> bool:
        if self.empty:
            return True
        if other.empty:
            return False
        if self.lower < other.lower or self.upper > other.upper:
            return False
        if self.lower == other.lower and other.lower_open and not self.lower_open:
            return False
        if self.upper == other.upper and other.upper_open and not self.upper_open:
            return False
        return True

    def __le__(self, other: "Interval") -> bool:
        return self.issubset(other)

    def intersection(self, other: "Interval") -> "Interval":
        if self.empty or other.empty:
            return Interval.empty_set()
        lo, lo_open = _tighter(self.lower, self.lower_open, other.lower, other.lower_open, max)
        hi, hi_open = _tighter(self.upper, self.upper_open, other.upper, other.upper_open, min)
        return Interval(lo, hi, lo_open, hi_open)

    __and__ = intersection

    def hull(self, other: "Interval") -> "Interval":
        """Smallest interval containing both (the union when they overlap)."""
        if self.empty:
            return other
        if other.empty:
            return self
        lo, lo_open = _looser(self.lower, self.lower_open, other.lower, other.lower_open, min)
        hi, hi_open = _looser(self.upper, self.upper_open, other.upper, other.upper_open, max)
        return Interval(lo, hi, lo_open, hi_open)

    def translate(self, t: Number) -> "Interval":
        if self.empty:
            return self
        return Interval(self.lower + t, self.upper + t, self.lower_open, self.upper_open)

    # -- serialization ------------------------------------------------
    def to_json(self) -> dict:
        if self.empty:
            return {"empty": True}
        return {
            "lo": _endpoint_out(self.lower),
            "hi": _endpoint_out(self.upper),
            "lo_open": self.lower_open,
            "hi_open": self.upper_open,
        }

    @classmethod
    def from_json(cls, obj) -> "Interval":
        if not isinstance(obj, dict):
            raise SpecError(f"interval must be a JSON object, got {obj!r}")
        if obj.get("empty") is True:
            if set(obj) != {"empty"}:
                raise SpecError(f"unexpected keys in empty interval: {sorted(set(obj) - {'empty'})}")
            return cls.empty_set()
        allowed = {"lo", "hi", "lo_open", "hi_open"}
        extra = set(obj) - allowed
        if extra:
            raise SpecError(f"unknown interval keys: {sorted(extra)}")
        missing = {"lo", "hi"} - set(obj)
        if missing:
            raise SpecError(f"interval missing keys: {sorted(missing)}")
        lo_open = obj.get("lo_open", True)
        hi_open = obj.get("hi_open", True)
        if not isinstance(lo_open, bool) or not isinstance(hi_open, bool):
            raise SpecError("lo_open/hi_open must be booleans")
        return cls(_endpoint_in(obj["lo"]), _endpoint_in(obj["hi"]), lo_open, hi_open)

    def __str__(self) -> str:
        if self.empty:
            return "∅"
        if self.is_singleton:
            return f"{{{_fmt(self.lower)}}}"
        left = "(" if self.lower_open else "["
        right = ")" if self.upper_open else "]"
        return f"{left}{_fmt(self.lower)}, {_fmt(self.upper)}{right}"


def _tighter(a, a_open, b, b_open, pick):
    v = pick(a, b)
    if a == b:
        return v, a_open or b_open
    return v, a_open if v == a else b_open


def _looser(a, a_open, b, b_open, pick):
    v = pick(a, b)
    if a == b:
        return v, a_open and b_open
    return v, a_open if v == a else b_open


def _fmt(x) -> str:
    if x == math.inf:
        return "+inf"
    if x == -math.inf:
        return "-inf"
    return str(x)


def _endpoint_out(x):
    if x == math.inf:
        return "+inf"
    if x == -math.inf:
        return "-inf"
    if isinstance(x, Fraction):
        return float(x)
    return x


def _endpoint_in(v):
    if isinstance(v, bool):
        raise SpecError(f"bad interval endpoint {v!r}")
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("+inf", "inf", "infinity", "+infinity"):
            return math.inf
        if s in ("-inf", "-infinity"):
            return -math.inf
        raise SpecError(f"bad interval endpoint {v!r}")
    if isinstance(v, Real):
        if isinstance(v, float) and math.isnan(v):
            raise SpecError("interval endpoint is NaN")
        return v
    raise SpecError(f"bad interval endpoint {v!r}")


# ---------------------------------------------------------------------
# reflection algebra
# ---------------------------------------------------------------------

def reflect(S: Interval, P: Interval, ambient: Interval) -> Interval:
    """Ref(S|P): the points of ``ambient`` of the form 2p - s, p in P, s in S."""
    if S.empty or P.empty or ambient.empty:
        return Interval.empty_set()
    # 2P - S is an interval; each end mixes one end of P with the opposite end of S.
    lo = 2 * P.lower - S.upper
    hi = 2 * P.upper - S.lower
    dilated = Interval(lo, hi, P.lower_open or S.upper_open, P.upper_open or S.lower_open)
    return dilated & ambient


@dataclass(frozen=True)
class ReflectionSequence:
    """The nondecreasing chain J_0 = J, J_n = Ref(J_{n-1} | J) inside ``ambient``."""

    base: Interval
    ambient: Interval
    terms: List[Interval] = field(default_factory=list)

    @property
    def lowers(self) -> list:
        return [t.lower for t in self.terms]

    @property
    def uppers(self) -> list:
        return [t.upper for t in self.terms]

    def union(self) -> Interval:
        out = Interval.empty_set()
        for t in self.terms:
            out = out.hull(t)
        return out

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "ambient": self.ambient.to_json(),
            "terms": [t.to_json() for t in self.terms],
        }


def _require_sub(J: Interval, ambient: Interval):
    if not J.issubset(ambient):
        raise NotSubinterval(f"{J} is not contained in {ambient}")


def reflection_sequence(J: Interval, ambient: Interval, n: int) -> ReflectionSequence:
    if n < 0:
        raise InvalidParams("n must be nonnegative")
    _require_sub(J, ambient)
    terms = [J]
    for _ in range(n):
        terms.append(reflect(terms[-1], J, ambient))
    return ReflectionSequence(J, ambient, terms)


def reflection_closure(J: Interval, ambient: Interval) -> Interval:
    """Union of the whole reflection sequence of ``J``."""
    _require_sub(J, ambient)
    if J.empty or J.is_singleton or J == ambient:
        return J
    return reflect(ambient, J, ambient)


def shrink(I: Interval, h) -> Interval:
    """I_h = (I - h) ∩ (I + h)."""
    if not h > 0:
        raise InvalidParams("shrink requires h > 0")
    return I.translate(-h) & I.translate(h)


def lower_complement(S: Interval, ambient: Interval) -> Interval:
    """S_*: points of ``ambient`` strictly below inf S."""
    if S.empty:
        return ambient
    return ambient & Interval(-math.inf, S.lower, True, True)


def upper_complement(S: Interval, ambient: Interval) -> Interval:
    """S^*: points of ``ambient`` strictly above sup S."""
    if S.empty:
        return ambient
    return ambient & Interval(S.upper, math.inf, True, True)


def midset(P: Interval, Q: Interval) -> Interval:
    """(P + Q) / 2."""
    if P.empty or Q.empty:
        return Interval.empty_set()
    return Interval(
        _half(P.lower + Q.lower),
        _half(P.upper + Q.upper),
        P.lower_open or Q.lower_open,
        P.upper_open or Q.upper_open,
    )


def _half(x):
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x, 2)
    return x / 2


def lemma_s_check(S: Interval, ambient: Interval) -> bool:
    """Check S_* = Ref(I | s_*) and S^* = Ref(I | s^*) wherever s_*, s^* are finite.

    Here s_* and s^* are the ends of (S + I)/2.  The identity is stated for
    open ambient intervals.
    """
    if S.empty:
        raise InvalidParams("lemma_s_check needs a nonempty S")
    _require_sub(S, ambient)
    mids = midset(S, ambient)
    ok = True
    if math.isfinite(mids.lower):
        ok &= lower_complement(S, ambient) == reflect(ambient, Interval.point(mids.lower), ambient)
    if math.isfinite(mids.upper):
        ok &= upper_complement(S, ambient) == reflect(ambient, Interval.point(mids.upper), ambient)
    return bool(ok)
