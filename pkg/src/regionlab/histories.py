"""Catalog of region histories and sequences with known limit behavior.

A History is a time-indexed family phi(t) for t in (0, t_max] together with
its candidate limit phi(0); a SequenceFamily is indexed by a positive integer
instead.  Both carry a space label:

  C  single convex region
  D  at most two strictly separated convex components
  S  star-shaped about the origin

The catalog entries are the standing witnesses used by the convergence
matrix: vanishing-area satellites, splitting slabs, escaping-to-height boxes
and spiked discs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import OutOfRange, UnknownName
from .regions import ConvexPolygon, PolarRegion, TwoComponent, box, disc
from .transport import MulhollandFn


@dataclass(frozen=True)
class History:
    """Continuous-time family phi(t), t in (0, t_max], with limit phi(0)."""

    name: str
    t_max: float
    space: str
    limit: object
    _eval: object
    params: dict = field(default_factory=dict)
    kind: str = "history"

    def eval(self, t: float):
        if not (0.0 < t <= self.t_max):
            raise OutOfRange(f"{self.name}: t={t:g} outside (0, {self.t_max:g}]")
        return self._eval(t)


@dataclass(frozen=True)
class SequenceFamily:
    """Integer-indexed family phi(k), k >= k_min, with limit region."""

    name: str
    k_min: int
    space: str
    limit: object
    _eval: object
    params: dict = field(default_factory=dict)
    kind: str = "family"
    k_list: tuple = (4, 8, 16, 32, 64)

    def eval(self, k):
        kk = int(k)
        if kk != k or kk < self.k_min:
            raise OutOfRange(f"{self.name}: index {k!r} must be an integer >= {self.k_min}")
        return self._eval(kk)


def classify(region) -> list:
    """Space labels a region belongs to."""
    out = []
    parts = region.components()
    if len(parts) == 1 and isinstance(parts[0], ConvexPolygon):
        out.append("C")
    if all(isinstance(c, ConvexPolygon) for c in parts) and len(parts) <= 2:
        out.append("D")
    if isinstance(region, PolarRegion) and region.is_star_shaped():
        out.append("S")
    if len(parts) == 1 and isinstance(parts[0], ConvexPolygon):
        out.append("S")  # convex regions are star-shaped about any inner point
    return out


_UNIT = box(0.0, 0.0, 1.0, 1.0)
_T_BOX = 0.5


def _resolve_psi(params) -> MulhollandFn:
    psi = params.get("psi", "x^2") if params else "x^2"
    if isinstance(psi, MulhollandFn):
        return psi
    from .transport import parse_generator
    return parse_generator(str(psi))


def _history_1_0():
    def ev(t):
        return TwoComponent(_UNIT, box(1.0 + t, 0.0, 1.0 + 2.0 * t, t))
    return History("history_1_0", _T_BOX, "D", _UNIT, ev)


def _history_1_1():
    def ev(t):
        return TwoComponent(_UNIT, box(1.0 + t, 0.0, 1.0 + 2.0 * t, 1.0))
    return History("history_1_1", _T_BOX, "D", _UNIT, ev)


def _history_4():
    big = box(0.0, 0.0, 2.0, 2.0)

    def ev(t):
        return TwoComponent(box(0.0, 0.0, 1.0 - t, 2.0), box(1.0 + t, 0.0, 2.0, 2.0))
    return History("history_4", _T_BOX, "D", big, ev)


def _history_5_1():
    def ev(t):
        return TwoComponent(_UNIT, box(2.0, 0.0, 2.0 + t, t))
    return History("history_5_1", _T_BOX, "D", _UNIT, ev)


def _history_5_2():
    def ev(t):
        return TwoComponent(_UNIT, box(2.0, 0.0, 2.0 + t, 1.0))
    return History("history_5_2", _T_BOX, "D", _UNIT, ev)


def _history_6(variant: int):
    def ev(t):
        if variant == 0:
            second = box(2.0, 2.0, 2.0 + 2.0 * t, 2.0 + 2.0 * t)
        else:
            second = box(0.0, 2.0, 1.0, 2.0 + 2.0 * t)
        return TwoComponent(_UNIT, second)
    return History(f"history_6_{variant}", _T_BOX, "D", _UNIT, ev,
                   params={"variant": variant})


def _history_7(params=None):
    f = _resolve_psi(params)

    def ev(t, _f=f):
        height = float(_f.inverse(t ** -2.0))
        return TwoComponent(_UNIT, box(0.0, height, t, height + t))
    return History("history_7", _T_BOX, "D", _UNIT, ev, params={"psi": f.name})


def _history_8():
    base = disc(1.0)

    def ev(t):
        return PolarRegion(1.0, [(-t / 2.0, t / 2.0, 1.0, 2.0)])
    return History("history_8", np.pi / 8.0, "S", base, ev)


def _history_9(params=None):
    f = _resolve_psi(params)
    base = disc(1.0)

    def ev(t, _f=f):
        outer = float(_f.inverse(1.0 / t))
        if outer <= 1.0:
            raise OutOfRange("time too large for a nonempty wedge")
        width = t / outer ** 2
        return PolarRegion(1.0, [(-width / 2.0, width / 2.0, 1.0, outer)])
    return History("history_9", np.pi / 8.0, "S", base, ev, params={"psi": f.name})


def _fig1():
    def ev(i):
        return TwoComponent(_UNIT, box(2.0, 0.0, 2.0 + 1.0 / i, 1.0))
    return SequenceFamily("fig1", 1, "D", _UNIT, ev)


def _porcupine_1():
    limit = disc(2.0)

    def ev(k):
        width = 2.0 * np.pi / k ** 2
        segs = [(2.0 * np.pi * i / k, 2.0 * np.pi * i / k + width, 1.0, 2.0)
                for i in range(k)]
        return PolarRegion(1.0, segs)
    return SequenceFamily("porcupine_1", 2, "S", limit, ev)


def _porcupine_2():
    limit = disc(2.0)

    def ev(k):
        width = 2.0 * np.pi / k ** 2
        segs = [(2.0 * np.pi * i / k, 2.0 * np.pi * i / k + width, 1.0 / k, 2.0)
                for i in range(k)]
        return PolarRegion(1.0 / k, segs)
    return SequenceFamily("porcupine_2", 2, "S", limit, ev)


_BUILDERS = {
    "fig1": lambda params: _fig1(),
    "history_1_0": lambda params: _history_1_0(),
    "history_1_1": lambda params: _history_1_1(),
    "history_4": lambda params: _history_4(),
    "history_5_1": lambda params: _history_5_1(),
    "history_5_2": lambda params: _history_5_2(),
    "history_6_0": lambda params: _history_6(0),
    "history_6_1": lambda params: _history_6(1),
    "history_7": _history_7,
    "history_8": lambda params: _history_8(),
    "history_9": _history_9,
    "porcupine_1": lambda params: _porcupine_1(),
    "porcupine_2": lambda params: _porcupine_2(),
}


def catalog_names() -> list:
    return sorted(_BUILDERS)


def catalog(name: str, params: dict | None = None):
    """Look up a history or sequence family by name."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownName(
            f"unknown history {name!r}; known: {', '.join(catalog_names())}") from None
    return builder(params)


def evaluate(h, t):
    """Region of a history or family at parameter t (or index k)."""
    return h.eval(t)
