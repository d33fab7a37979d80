"""Finitely presented dynamical systems.

A system is a disjoint union of

* cycles ``y_0, ..., y_{L-1}`` of isolated points with ``phi(y_i) = y_{i-1 mod L}``,
* bi-infinite chains ``{x_j : j in Z}`` of isolated points with
  ``phi(x_j) = x_{j-1}``; each end either converges to a declared limit point
  or escapes to infinity,
* finitely many accumulation points ("limits"), each the limit of at least
  one chain end.

Limits are necessarily fixed by ``phi``: ``phi(lim x_j) = lim x_{j-1}``.
No metric is stored; the topology is carried entirely by the end labels.
A neighbourhood basis of a limit ``a`` is ``{a}`` together with the tails of
the chain ends converging to ``a``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Union

from .errors import DanglingLimitRef, DuplicatePoint, ForeignPoint, OrphanLimit, ValidationError
from .profile import Profile

INFINITY = "inf"


@dataclass(frozen=True)
class Cycle:
    name: str
    length: int


@dataclass(frozen=True)
class Chain:
    name: str
    minus: str | None  # limit name, or None for an end escaping to infinity
    plus: str | None
    # declared index range of a one-sided chain; functions vanish outside it
    start: int | None = None
    stop: int | None = None


@dataclass(frozen=True, order=True)
class CyclePoint:
    cycle: str
    index: int

    def __str__(self) -> str:
        return f"{self.cycle}[{self.index}]"


@dataclass(frozen=True, order=True)
class ChainPoint:
    chain: str
    index: int

    def __str__(self) -> str:
        return f"{self.chain}[{self.index}]"


@dataclass(frozen=True, order=True)
class LimitPoint:
    name: str

    def __str__(self) -> str:
        return self.name


Point = Union[CyclePoint, ChainPoint, LimitPoint]


def point_key(p: Point) -> tuple:
    """Deterministic order: cycle points, then chain points, then limits."""
    if isinstance(p, CyclePoint):
        return (0, p.cycle, p.index)
    if isinstance(p, ChainPoint):
        return (1, p.chain, abs(p.index), p.index)
    return (2, p.name, 0)


@dataclass(frozen=True)
class DynamicalSystem:
    limits: tuple[str, ...] = ()
    cycles: tuple[Cycle, ...] = ()
    chains: tuple[Chain, ...] = ()

    def __post_init__(self):
        names = list(self.limits) + [c.name for c in self.cycles] + [c.name for c in self.chains]
        seen = set()
        for n in names:
            if n in seen:
                raise DuplicatePoint(f"name {n!r} declared twice")
            seen.add(n)
        for cyc in self.cycles:
            if cyc.length < 1:
                raise ValidationError(f"cycle {cyc.name!r} must have positive length")
        referenced = set()
        for ch in self.chains:
            for end in (ch.minus, ch.plus):
                if end is None:
                    continue
                if end not in self.limits:
                    raise DanglingLimitRef(f"chain {ch.name!r} refers to unknown limit {end!r}")
                referenced.add(end)
        for a in self.limits:
            if a not in referenced:
                raise OrphanLimit(f"limit {a!r} is not the limit of any chain end")

    @cached_property
    def cycle_by_name(self) -> dict[str, Cycle]:
        return {c.name: c for c in self.cycles}

    @cached_property
    def chain_by_name(self) -> dict[str, Chain]:
        return {c.name: c for c in self.chains}

    def check_point(self, p: Point) -> None:
        if isinstance(p, CyclePoint):
            cyc = self.cycle_by_name.get(p.cycle)
            if cyc is not None and 0 <= p.index < cyc.length:
                return
        elif isinstance(p, ChainPoint):
            if p.chain in self.chain_by_name and isinstance(p.index, int):
                return
        elif isinstance(p, LimitPoint):
            if p.name in self.limits:
                return
        raise ForeignPoint(f"{p!r} is not a point of this system")

    def cycle_points(self) -> Iterator[CyclePoint]:
        for cyc in self.cycles:
            for i in range(cyc.length):
                yield CyclePoint(cyc.name, i)

    def limit_points(self) -> Iterator[LimitPoint]:
        for a in self.limits:
            yield LimitPoint(a)

    def chain_points(self, window: int) -> Iterator[ChainPoint]:
        for ch in self.chains:
            for j in range(-window, window + 1):
                yield ChainPoint(ch.name, j)

    def points(self, window: int) -> list[Point]:
        """Cycle points, chain points with ``|j| <= window``, and limits."""
        return [*self.cycle_points(), *self.chain_points(window), *self.limit_points()]

    def chains_ending_at(self, limit: str) -> Iterator[tuple[Chain, str]]:
        for ch in self.chains:
            if ch.minus == limit:
                yield ch, "minus"
            if ch.plus == limit:
                yield ch, "plus"

    def is_empty(self) -> bool:
        return not (self.limits or self.cycles or self.chains)


def apply_power(sys: DynamicalSystem, p: Point, k: int) -> Point:
    """``phi^k(p)`` for any integer ``k``."""
    sys.check_point(p)
    if isinstance(p, CyclePoint):
        return CyclePoint(p.cycle, (p.index - k) % sys.cycle_by_name[p.cycle].length)
    if isinstance(p, ChainPoint):
        return ChainPoint(p.chain, p.index - k)
    return p


def parse_point(sys: DynamicalSystem, text: str) -> Point:
    text = text.strip()
    if text.endswith("]") and "[" in text:
        name, idx = text[:-1].split("[", 1)
        try:
            index = int(idx)
        except ValueError:
            raise ValidationError(f"bad point index in {text!r}") from None
        if name in sys.cycle_by_name:
            p: Point = CyclePoint(name, index)
        else:
            p = ChainPoint(name, index)
    else:
        p = LimitPoint(text)
    sys.check_point(p)
    return p


def _end(value) -> str | None:
    if value is None or value == INFINITY:
        return None
    if not isinstance(value, str):
        raise ValidationError(f"chain end must be a limit name or {INFINITY!r}, got {value!r}")
    return value


def parse_system(description: str | Mapping) -> DynamicalSystem:
    """Build a system from JSON text or an already decoded mapping.

    Recognised keys: ``limits`` (list of names), ``cycles`` (list of
    ``{"name", "length"}``), ``chains`` (list of ``{"name", "minus", "plus"}``
    with ends given as a limit name or ``"inf"``). A chain may instead carry a
    ``"range": [start, null]`` or ``[null, stop]``; the missing side is then an
    end at infinity.
    """
    if isinstance(description, str):
        try:
            description = json.loads(description)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"system description is not valid JSON: {exc}") from None
    if not isinstance(description, Mapping):
        raise ValidationError("system description must be an object")
    try:
        limits = tuple(str(a) for a in description.get("limits", []))
        cycles = tuple(
            Cycle(str(c["name"]), int(c["length"])) for c in description.get("cycles", [])
        )
        chains = []
        for c in description.get("chains", []):
            start = stop = None
            minus, plus = _end(c.get("minus")), _end(c.get("plus"))
            if "range" in c:
                start, stop = c["range"]
                if (start is None) == (stop is None):
                    raise ValidationError(
                        f"chain {c['name']!r}: range must leave exactly one side open"
                    )
                if start is not None:
                    start = int(start)
                    if c.get("minus", INFINITY) != INFINITY:
                        raise ValidationError(f"chain {c['name']!r} has no minus side")
                    minus = None
                else:
                    stop = int(stop)
                    if c.get("plus", INFINITY) != INFINITY:
                        raise ValidationError(f"chain {c['name']!r} has no plus side")
                    plus = None
            chains.append(Chain(str(c["name"]), minus, plus, start, stop))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"malformed system description: {exc!r}") from None
    return DynamicalSystem(limits, cycles, tuple(chains))


def system_to_dict(sys: DynamicalSystem) -> dict:
    chains = []
    for ch in sys.chains:
        entry: dict = {"name": ch.name}
        if ch.start is not None:
            entry["range"] = [ch.start, None]
            entry["plus"] = ch.plus or INFINITY
        elif ch.stop is not None:
            entry["range"] = [None, ch.stop]
            entry["minus"] = ch.minus or INFINITY
        else:
            entry["minus"] = ch.minus or INFINITY
            entry["plus"] = ch.plus or INFINITY
        chains.append(entry)
    return {
        "limits": list(sys.limits),
        "cycles": [{"name": c.name, "length": c.length} for c in sys.cycles],
        "chains": chains,
    }


# -- point sets ---------------------------------------------------------------


def _clean(chains: Mapping[str, Profile]) -> dict[str, Profile]:
    return {k: v for k, v in sorted(chains.items()) if not (v.is_constant() and not v.minus)}


@dataclass(frozen=True)
class PointSet:
    """A subset of X: explicit cycle points and limits, boolean chain profiles."""

    cycle_points: frozenset = frozenset()
    chains: Mapping[str, Profile] = field(default_factory=dict)
    limits: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "cycle_points", frozenset(self.cycle_points))
        object.__setattr__(self, "limits", frozenset(self.limits))
        object.__setattr__(self, "chains", _clean(self.chains))

    def __contains__(self, p: Point) -> bool:
        if isinstance(p, CyclePoint):
            return p in self.cycle_points
        if isinstance(p, ChainPoint):
            prof = self.chains.get(p.chain)
            return bool(prof is not None and prof[p.index])
        return p.name in self.limits

    def is_empty(self) -> bool:
        return not (self.cycle_points or self.chains or self.limits)

    def is_finite(self) -> bool:
        return all(not p.minus and not p.plus for p in self.chains.values())

    def _combine(self, other: PointSet, op) -> PointSet:
        names = set(self.chains) | set(other.chains)
        empty = Profile.constant(False)
        chains = {
            n: self.chains.get(n, empty).zip_with(other.chains.get(n, empty), op) for n in names
        }
        return PointSet(
            frozenset(p for p in self.cycle_points | other.cycle_points
                      if op(p in self.cycle_points, p in other.cycle_points)),
            chains,
            frozenset(a for a in self.limits | other.limits
                      if op(a in self.limits, a in other.limits)),
        )

    def __or__(self, other: PointSet) -> PointSet:
        return self._combine(other, lambda a, b: a or b)

    def __and__(self, other: PointSet) -> PointSet:
        return self._combine(other, lambda a, b: a and b)

    def __sub__(self, other: PointSet) -> PointSet:
        return self._combine(other, lambda a, b: a and not b)

    def issubset(self, other: PointSet) -> bool:
        return (self - other).is_empty()

    def finite_points(self) -> list[Point]:
        """All members; only valid for finite sets."""
        if not self.is_finite():
            raise ValueError("point set has an infinite chain tail")
        pts: list[Point] = list(self.cycle_points)
        for name, prof in self.chains.items():
            pts.extend(ChainPoint(name, j) for j, v in prof.window() if v)
        pts.extend(LimitPoint(a) for a in self.limits)
        return sorted(pts, key=point_key)

    def members(self, sys: DynamicalSystem, window: int) -> list[Point]:
        return [p for p in sys.points(window) if p in self]

    def describe(self) -> dict:
        chains = {}
        for name, prof in self.chains.items():
            chains[name] = {
                "minus_tail": bool(prof.minus),
                "plus_tail": bool(prof.plus),
                "split": prof.lo,
                "members": [j for j, v in prof.window() if v],
                "non_members": [j for j, v in prof.window() if not v],
            }
        return {
            "cycle_points": sorted(str(p) for p in self.cycle_points),
            "chains": chains,
            "limits": sorted(self.limits),
        }


def whole_chains(sys: DynamicalSystem) -> dict[str, Profile]:
    return {ch.name: Profile.constant(True) for ch in sys.chains}


def everything(sys: DynamicalSystem) -> PointSet:
    return PointSet(frozenset(sys.cycle_points()), whole_chains(sys), frozenset(sys.limits))


def taxonomy(sys: DynamicalSystem) -> tuple[PointSet, PointSet, PointSet]:
    """``(X_i, X_a, X_{a,i})``.

    Cycle and chain points are isolated. Every limit is by construction the
    limit of chain points, so the accumulation points coincide with those
    that are limits of isolated points.
    """
    isolated = PointSet(frozenset(sys.cycle_points()), whole_chains(sys))
    accumulation = PointSet(limits=frozenset(sys.limits))
    return isolated, accumulation, accumulation


def recurrent_set(sys: DynamicalSystem) -> PointSet:
    # chain points move strictly along the chain and are isolated, so they
    # neither return nor accumulate at themselves
    return PointSet(frozenset(sys.cycle_points()), {}, frozenset(sys.limits))


def wandering_set(sys: DynamicalSystem) -> PointSet:
    # a singleton {x_j} is open with pairwise disjoint iterates; a periodic
    # point or a fixed limit meets its own image in every neighbourhood
    return PointSet(chains=whole_chains(sys))

