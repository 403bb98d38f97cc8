"""Named elementary functions addressable from JSON job files.

Each entry carries the function, its derivative, its inverse when it is
invertible, and a natural domain on which it is defined (and strictly
monotone when invertible).  Parametrised names use a colon: ``power:2.5``,
``exp:-1``, ``const:3``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import SpecError
from .intervals import Interval

POSITIVE = Interval(0, math.inf, True, True)
REALS = Interval.real_line()


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    fn: Callable
    d1: Optional[Callable]
    inverse: Optional[Callable]
    domain: Interval


def _square(x):
    return x * x


def _recip(x):
    return 1 / x


def _power(p):
    return CatalogEntry(
        f"power:{p:g}",
        lambda x: np.power(x, p),
        lambda x: p * np.power(x, p - 1),
        lambda y: np.power(y, 1.0 / p),
        POSITIVE,
    )


def _exp(c):
    return CatalogEntry(
        f"exp:{c:g}",
        lambda x: np.exp(c * x),
        lambda x: c * np.exp(c * x),
        lambda y: np.log(y) / c,
        REALS,
    )


def _const(c):
    return CatalogEntry(f"const:{c:g}", lambda x: c, lambda x: 0.0, None, REALS)


_FIXED = {
    "identity": CatalogEntry("identity", lambda x: x, lambda x: 1.0, lambda y: y, REALS),
    "square": CatalogEntry("square", _square, lambda x: 2 * x, np.sqrt, POSITIVE),
    "log": CatalogEntry("log", np.log, _recip, np.exp, POSITIVE),
    "reciprocal": CatalogEntry("reciprocal", _recip, lambda x: -1 / (x * x), _recip, POSITIVE),
    "sin": CatalogEntry("sin", np.sin, np.cos, None, REALS),
    "cos": CatalogEntry("cos", np.cos, lambda x: -np.sin(x), None, REALS),
}

_PARAMETRIC = {"power": _power, "exp": _exp, "const": _const}


def lookup(name: str) -> CatalogEntry:
    if not isinstance(name, str):
        raise SpecError(f"function name must be a string, got {name!r}")
    if name in _FIXED:
        return _FIXED[name]
    head, sep, arg = name.partition(":")
    if sep and head in _PARAMETRIC:
        try:
            value = float(arg)
        except ValueError:
            raise SpecError(f"bad parameter in {name!r}") from None
        if not math.isfinite(value) or (head in ("power", "exp") and value == 0):
            raise SpecError(f"invalid parameter in {name!r}")
        return _PARAMETRIC[head](value)
    raise SpecError(f"unknown function {name!r}; known: {sorted(_FIXED)} and power:p, exp:c, const:c")


def names() -> list:
    return sorted(_FIXED) + ["power:p", "exp:c", "const:c"]
