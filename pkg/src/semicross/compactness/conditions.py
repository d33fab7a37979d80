"""Exact decision of the three pair conditions for ``U^m f`` and ``U^n g``.

Write ``h_l = (f o phi^{n+l}) g`` for ``l >= 0``.

(a) ``h_l`` vanishes on the accumulation points. Limits are fixed, so
    ``h_l(a) = f(a) g(a)`` for every ``l``.

(b) ``h_l(x) -> 0`` at every isolated ``x``. On a cycle ``h_l(y)`` is periodic
    in ``l``, so this means ``g(y) = 0`` or ``f`` vanishes on the whole cycle.
    On a chain ``phi^{n+l}(x_j) = x_{j-n-l}`` runs into the minus tail of
    ``f``, so this means ``g(x_j) = 0`` or the minus tail of ``f`` is zero.

(c) ``{h_l}`` is equicontinuous. Isolated points are trivial. At a limit
    ``a`` the neighbourhoods are ``{a}`` plus the chain tails ending at ``a``,
    and it suffices to look at each such tail separately:

    * a minus tail: deep enough, ``f(x_{j-n-l})`` sits in the minus tail of
      ``f`` and ``g(x_j)`` in that of ``g``, so ``h_l(x_j) = f(a) g(a) = h_l(a)``
      for every ``l``; nothing to check.
    * a plus tail: for large ``j``, ``g(x_j) = g(a)`` and, as ``l`` ranges over
      ``Z_+``, ``x_{j-n-l}`` visits every point of the chain with index
      ``<= j-n``. The oscillation ``sup_l |h_l(x_j) - h_l(a)|`` is therefore
      ``|g(a)| sup_{i <= j-n} |f(x_i) - f(a)|``, nondecreasing in ``j``. It tends
      to zero iff ``g(a) = 0`` or ``f`` is constant, equal to ``f(a)``, on the
      whole chain (minus tail included).

    When (a) holds and ``g(a) != 0`` the constant is ``f(a) = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..dynsys import ChainPoint, CyclePoint, DynamicalSystem, LimitPoint, Point, apply_power, point_key
from ..errors import HorizonTooSmall, SystemMismatch
from ..funcspace import ModelFunction, evaluate, function_window
from ..profile import Profile
from ..scalar import ZERO


@dataclass(frozen=True)
class Failure:
    """Where a condition fails. ``detail`` is informational and not compared."""

    condition: str
    point: Point
    chain: str | None = None
    l: int | None = None
    degree: int | None = None  # coefficient index, for per-coefficient conditions
    detail: str = field(default="", compare=False)


@dataclass(frozen=True)
class ConditionReport:
    m: int
    n: int
    a: Failure | None = None
    b: Failure | None = None
    c: Failure | None = None

    @property
    def passed(self) -> bool:
        return self.a is None and self.b is None and self.c is None

    def failures(self) -> list[Failure]:
        return [x for x in (self.a, self.b, self.c) if x is not None]

    def verdicts(self) -> dict[str, bool]:
        return {"a": self.a is None, "b": self.b is None, "c": self.c is None}


def nearest_member(prof: Profile) -> int | None:
    """Index minimising ``(|j|, j)`` among ``j`` with ``prof[j]`` truthy."""
    cands = [j for j, v in prof.window() if v]
    if prof[0]:
        cands.append(0)
    if prof.minus:
        cands.append(prof.lo - 1)
    if prof.plus:
        cands.append(prof.hi)
    if not cands:
        return None
    return min(cands, key=lambda j: (abs(j), j))


def _first(failures: list[Failure]) -> Failure | None:
    if not failures:
        return None
    return min(failures, key=lambda x: (point_key(x.point), x.chain or ""))


def _check_a(sys: DynamicalSystem, f: ModelFunction, g: ModelFunction) -> Failure | None:
    bad = []
    for a in sys.limits:
        val = f.limit_values.get(a, ZERO) * g.limit_values.get(a, ZERO)
        if val:
            bad.append(Failure("a", LimitPoint(a), l=0, detail=f"f(a)g(a) = {val} for every l"))
    return _first(bad)


def _check_b(sys: DynamicalSystem, f: ModelFunction, g: ModelFunction) -> Failure | None:
    bad = []
    for cyc in sys.cycles:
        if not any(f.cycle_values.get(CyclePoint(cyc.name, i)) for i in range(cyc.length)):
            continue
        for i in range(cyc.length):
            p = CyclePoint(cyc.name, i)
            if g.cycle_values.get(p):
                bad.append(Failure("b", p, cyc.name,
                                   detail="g(y) != 0 and f does not vanish on the cycle of y"))
                break
    for ch in sys.chains:
        tail = f.chain(ch.name).minus
        if ch.minus is None or not tail:
            continue
        j = nearest_member(g.chain(ch.name).map(bool))
        if j is not None:
            bad.append(Failure("b", ChainPoint(ch.name, j), ch.name,
                               detail=f"f o phi^(n+l) tends to {tail} along the chain "
                                      f"while g != 0 at every index of its support"))
    return _first(bad)


def _check_c(sys: DynamicalSystem, f: ModelFunction, g: ModelFunction) -> Failure | None:
    bad = []
    for ch in sys.chains:
        a = ch.plus
        if a is None or not g.limit_values.get(a):
            continue
        prof = f.chain(ch.name)
        if prof.is_constant() and prof.minus == f.limit_values.get(a, ZERO):
            continue
        bad.append(Failure("c", LimitPoint(a), ch.name,
                           detail=f"g({a}) != 0 and f is not constant on chain {ch.name}; "
                                  f"the family oscillates along its plus tail"))
    return _first(bad)


def _same(sys: DynamicalSystem, *fs: ModelFunction) -> None:
    for f in fs:
        if f.system != sys:
            raise SystemMismatch("function does not live on the given system")


def check_pair(sys: DynamicalSystem, f: ModelFunction, m: int, g: ModelFunction, n: int
               ) -> ConditionReport:
    """Decide (a), (b), (c) for the pair ``U^m f``, ``U^n g`` exactly."""
    _same(sys, f, g)
    return ConditionReport(m, n, _check_a(sys, f, g), _check_b(sys, f, g), _check_c(sys, f, g))


# -- brute force ---------------------------------------------------------------


def _extent(f: ModelFunction) -> int:
    lo, hi = function_window(f)
    return max(abs(lo), abs(hi))


def stabilization_bound(sys: DynamicalSystem, f: ModelFunction, g: ModelFunction, n: int) -> int:
    """Smallest window / horizon for which :func:`oracle_check_pair` is exact.

    With ``E`` bounding every explicit chain index of ``f`` and ``g`` and ``P``
    the longest cycle, ``2E + n + P + 2`` leaves room for the orbit of every
    representative point to reach the minus tail of ``f`` and run through a
    full period there.
    """
    e = max(_extent(f), _extent(g))
    period = max((c.length for c in sys.cycles), default=1)
    return 2 * e + n + period + 2


def oracle_check_pair(sys: DynamicalSystem, f: ModelFunction, m: int, g: ModelFunction, n: int,
                      window: int, horizon: int) -> ConditionReport:
    """Brute-force (a), (b), (c) by tabulating ``h_l(x)`` on a finite grid.

    Points are cycle points, limits and chain indices in ``[-window, window]``;
    ``l`` runs over ``[0, horizon]``. Shares nothing with :func:`check_pair`
    except point evaluation.
    """
    _same(sys, f, g)
    bound = stabilization_bound(sys, f, g, n)
    if window < bound or horizon < bound:
        raise HorizonTooSmall(f"window and horizon must be >= {bound}")
    e = max(_extent(f), _extent(g))
    period = max((c.length for c in sys.cycles), default=1)
    points = sorted(sys.points(window), key=point_key)

    table: dict[Point, list] = {}
    for p in points:
        gp = evaluate(g, p)
        if not gp:
            table[p] = None  # h_l(p) = 0 for every l
            continue
        table[p] = [evaluate(f, apply_power(sys, p, n + l)) * gp for l in range(horizon + 1)]

    def h(p: Point, l: int):
        row = table[p]
        return ZERO if row is None else row[l]

    fail_a = None
    for p in points:
        if isinstance(p, LimitPoint):
            nz = [l for l in range(horizon + 1) if h(p, l)]
            if nz:
                fail_a = Failure("a", p, l=nz[0], detail="oracle: h_l(a) != 0")
                break

    tail_ls = range(horizon - period + 1, horizon + 1)
    fail_b = None
    for p in points:
        if isinstance(p, LimitPoint):
            continue
        if isinstance(p, ChainPoint):
            # the last period of l must land in the minus tail of f
            if p.index - n - tail_ls.start >= -e:
                continue
            chain = p.chain
        else:
            chain = p.cycle
        if any(h(p, l) for l in tail_ls):
            fail_b = Failure("b", p, chain, detail="oracle: h_l(x) does not settle at 0")
            break

    fail_c = None
    bad = []
    for a in sorted(sys.limits):
        pa = LimitPoint(a)
        for ch, end in sys.chains_ending_at(a):
            if end == "plus":
                # deep enough that g is in its tail and l in [0, horizon] sweeps the chain
                idx = range(e + 1 + n, min(window, horizon + n - e - 1) + 1)
            else:
                idx = range(-window, -e)
            diffs = [h(ChainPoint(ch.name, j), l) - h(pa, l)
                     for j in idx for l in range(horizon + 1)
                     if h(ChainPoint(ch.name, j), l) != h(pa, l)]
            if diffs:
                osc2 = max(d.abs2() for d in diffs)
                bad.append(Failure("c", pa, ch.name,
                                   detail=f"oracle: oscillation {float(osc2) ** 0.5:.6g} "
                                          f"along the {end} tail"))
    if bad:
        fail_c = min(bad, key=lambda x: (point_key(x.point), x.chain))
    return ConditionReport(m, n, fail_a, fail_b, fail_c)
