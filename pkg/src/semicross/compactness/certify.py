"""Compactness certificates for polynomial elements.

``M_{A,B} = sum_{m,n} M_{U^m f_m, U^n g_n}`` for polynomials, and the
operator is compact exactly when every coefficient pair satisfies (a), (b)
and (c). Element compactness and membership in the ideal generated by the
compact elements reduce to pointwise conditions on the coefficients.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from ..algebra import AlgebraElement
from ..dynsys import (
    CyclePoint,
    DynamicalSystem,
    LimitPoint,
    everything,
    point_key,
    recurrent_set,
    wandering_set,
)
from ..errors import SystemMismatch
from ..funcspace import ModelFunction, evaluate
from .conditions import ConditionReport, Failure, check_pair


class Verdict(str, enum.Enum):
    COMPACT = "COMPACT"
    NOT_COMPACT = "NOT_COMPACT"
    MEMBER = "MEMBER"
    NOT_MEMBER = "NOT_MEMBER"

    @property
    def positive(self) -> bool:
        return self in (Verdict.COMPACT, Verdict.MEMBER)


@dataclass(frozen=True)
class MinimalIndices:
    """The failing pair a witness family is built around, plus its locus."""

    condition: str
    m0: int
    n0: int
    l0: int | None
    failure: Failure


@dataclass(frozen=True)
class Certificate:
    kind: str  # "operator", "element" or "ideal"
    verdict: Verdict
    method: str
    pairs: tuple[ConditionReport, ...] = ()
    failures: tuple[Failure, ...] = ()
    approximants: tuple = field(default=(), compare=False)

    @property
    def positive(self) -> bool:
        return self.verdict.positive

    def all_failures(self) -> list[Failure]:
        out = [f for r in self.pairs for f in r.failures()]
        return out + list(self.failures)

    def minimal_indices(self) -> MinimalIndices | None:
        return minimal_indices(self.pairs)


def minimal_indices(pairs: tuple[ConditionReport, ...] | list[ConditionReport]
                    ) -> MinimalIndices | None:
    """Minimal failing indices, conditions tried in the order a, b, c.

    For (a) and (b): ``n0`` is the least failing ``n``, then ``m0`` the least
    ``m`` failing with ``n0``; for (a), ``l0 = 0`` because limits are fixed.
    For (c) the pair is the lexicographically least ``(n, m)``.
    """
    for cond in ("a", "b", "c"):
        failing = [r for r in pairs if getattr(r, cond) is not None]
        if not failing:
            continue
        n0 = min(r.n for r in failing)
        m0 = min(r.m for r in failing if r.n == n0)
        rep = next(r for r in failing if r.n == n0 and r.m == m0)
        fail = getattr(rep, cond)
        return MinimalIndices(cond, m0, n0, 0 if cond == "a" else None, fail)
    return None


def _check_same(sys: DynamicalSystem, *elements: AlgebraElement) -> None:
    for e in elements:
        if e.system != sys:
            raise SystemMismatch("element does not live on the given system")


def _discrete_pair(sys: DynamicalSystem, f: ModelFunction, m: int, g: ModelFunction, n: int
                   ) -> ConditionReport:
    """Discrete X: compact iff ``(f o phi^{n+l}) g`` vanishes on the recurrent set."""
    bad = []
    for y in sys.cycle_points():
        gy = evaluate(g, y)
        if not gy:
            continue
        length = sys.cycle_by_name[y.cycle].length
        if any(evaluate(f, CyclePoint(y.cycle, (y.index - n - l) % length)) * gy
               for l in range(length)):
            bad.append(Failure("b", y, y.cycle, detail="product does not vanish on X_r"))
    fail = min(bad, key=lambda x: point_key(x.point)) if bad else None
    return ConditionReport(m, n, None, fail, None)


def _perfect_pair(sys: DynamicalSystem, f: ModelFunction, m: int, g: ModelFunction, n: int
                  ) -> ConditionReport:
    """No isolated points: compact iff every product vanishes, i.e. ``M_{A,B} = 0``."""
    for a in sorted(sys.limits):
        p = LimitPoint(a)
        if evaluate(f, p) * evaluate(g, p):
            return ConditionReport(m, n, Failure("a", p, l=0, detail="product is nonzero"))
    return ConditionReport(m, n)


def pair_reports(sys: DynamicalSystem, a: AlgebraElement, b: AlgebraElement, method: str
                 ) -> tuple[ConditionReport, ...]:
    checker = {"general": check_pair, "discrete": _discrete_pair, "perfect": _perfect_pair}[method]
    return tuple(checker(sys, f, m, g, n) for m, f in a.items() for n, g in b.items())


def choose_method(sys: DynamicalSystem) -> str:
    if not sys.cycles and not sys.chains:
        return "perfect"
    if not sys.limits:
        return "discrete"
    return "general"


def certify_mult_compact(sys: DynamicalSystem, a: AlgebraElement, b: AlgebraElement,
                         method: str | None = None) -> Certificate:
    """Decide compactness of ``T -> a T b``.

    ``method`` forces ``"general"``, ``"discrete"`` or ``"perfect"``; by default
    shortcut procedures are used when X has no accumulation points or no
    isolated points.
    """
    _check_same(sys, a, b)
    method = method or choose_method(sys)
    reports = pair_reports(sys, a, b, method)
    ok = all(r.passed for r in reports)
    return Certificate("operator", Verdict.COMPACT if ok else Verdict.NOT_COMPACT, method, reports)


def certify_element_compact(sys: DynamicalSystem, a: AlgebraElement) -> Certificate:
    """Decide whether ``T -> a T a`` is compact.

    Conditions: (a) and (c) for every pair of coefficients, and every
    coefficient vanishes on the recurrent points. The pair reports also carry
    (b), which those conditions imply.
    """
    _check_same(sys, a)
    reports = pair_reports(sys, a, a, "general")
    rec = recurrent_set(sys)
    extra = []
    for m, f in a.items():
        bad = [p for p in sorted(rec.finite_points(), key=point_key) if evaluate(f, p)]
        if bad:
            extra.append(Failure("recurrent", bad[0], degree=m,
                                 detail=f"coefficient {m} does not vanish on X_r"))
    ok = all(r.a is None and r.c is None for r in reports) and not extra
    return Certificate("element", Verdict.COMPACT if ok else Verdict.NOT_COMPACT, "recurrent",
                       reports, tuple(extra))


def ideal_membership(sys: DynamicalSystem, a: AlgebraElement) -> Certificate:
    """Membership in the closed ideal generated by the compact elements.

    Every coefficient must vanish off the wandering set, and the constant
    coefficient on the accumulation points. Here the non-wandering set is the
    cycles plus the limits, so the second clause is implied, but it is still
    checked and reported on its own.
    """
    _check_same(sys, a)
    nonwandering = (everything(sys) - wandering_set(sys)).finite_points()
    extra = []
    for n, f in a.items():
        bad = [p for p in nonwandering if evaluate(f, p)]
        if bad:
            extra.append(Failure("nonwandering", bad[0], degree=n,
                                 detail=f"E_{n}(A) does not vanish at a non-wandering point"))
    f0 = a.coefficients.get(0)
    if f0 is not None:
        bad = [p for p in sys.limit_points() if evaluate(f0, p)]
        if bad:
            extra.append(Failure("accumulation", bad[0], degree=0,
                                 detail="E_0(A) does not vanish on X_a"))
    verdict = Verdict.NOT_MEMBER if extra else Verdict.MEMBER
    return Certificate("ideal", verdict, "wandering", (), tuple(extra))
