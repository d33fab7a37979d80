"""Separated sequences in the image of the unit ball.

When a pair condition fails there are unit-ball monomials
``T_i = U^{l_i} chi_i`` whose images under ``M_{A,B}`` stay a fixed distance
apart. We build the same sequences and compute the separation exactly: the
``(m0+n0+l_u)``-th Fourier coefficient of ``M(T_u) - M(T_v)`` evaluated at a
probe point is a lower bound for the norm of the difference, and is split
into the dominant ``(m0, n0)`` term minus the absolute values of all others.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..algebra import AlgebraElement, fourier_coefficient, sandwich
from ..dynsys import ChainPoint, CyclePoint, DynamicalSystem, Point, apply_power
from ..errors import NoFailure
from ..funcspace import ModelFunction, evaluate, indicator, sup_norm
from .certify import minimal_indices
from .conditions import ConditionReport, Failure


@dataclass(frozen=True)
class WitnessFamily:
    condition: str  # which condition fails: "a", "b" or "c"
    m0: int
    n0: int
    l0: int | None
    locus: Failure
    shifts: tuple[int, ...]
    supports: tuple[Point, ...]  # T_i = U^{shifts[i]} * indicator(supports[i])
    probes: tuple[Point, ...]  # where the separating coefficient is evaluated
    elements: tuple[AlgebraElement, ...]
    delta: Fraction | float

    def __len__(self) -> int:
        return len(self.elements)


def _terms(sys, a: AlgebraElement, b: AlgebraElement, shift: int, h: ModelFunction,
           degree: int, p: Point) -> dict[tuple[int, int], object]:
    """Summands of ``E_degree(a U^shift h b)(p)``, keyed by ``(m, n)``."""
    out = {}
    for m, f in a.items():
        for n, g in b.items():
            if m + n + shift != degree:
                continue
            out[(m, n)] = (evaluate(f, apply_power(sys, p, shift + n))
                           * evaluate(h, apply_power(sys, p, n)) * evaluate(g, p))
    return out


def separation_bound(sys: DynamicalSystem, a: AlgebraElement, b: AlgebraElement,
                     shifts, supports, probes, m0: int, n0: int) -> Fraction | float:
    """``min_{u<v} |dominant_u| - J_{u,v}`` over the family."""
    hs = [indicator(sys, [q]) for q in supports]
    best = None
    for u in range(len(shifts)):
        d = m0 + n0 + shifts[u]
        own = _terms(sys, a, b, shifts[u], hs[u], d, probes[u])
        dominant = abs(own.pop((m0, n0), 0))
        interference = sum((abs(t) for t in own.values()), Fraction(0))
        for v in range(u + 1, len(shifts)):
            other = _terms(sys, a, b, shifts[v], hs[v], d, probes[u])
            j = interference + sum((abs(t) for t in other.values()), Fraction(0))
            bound = dominant - j
            best = bound if best is None else min(best, bound)
    return best


def _span(elements: list[AlgebraElement], chain: str) -> tuple[int, int]:
    los, his = [], []
    for e in elements:
        for _, f in e.items():
            prof = f.chain(chain)
            if not prof.is_constant():
                los.append(prof.lo)
                his.append(prof.hi)
    return (min(los), max(his)) if los else (0, 0)


def _family_a(sys, a, b, m0, n0, locus, count):
    limit = locus.point.name
    ch, end = min(sys.chains_ending_at(limit), key=lambda ce: (ce[0].name, ce[1]))
    lo, hi = _span([a, b], ch.name)
    gap = max(a.degree, 0) + max(b.degree, 0) + 2
    if end == "plus":
        idx = [hi + max(b.degree, 0) + i * gap for i in range(count)]
    else:
        idx = [lo - 1 - i * gap for i in range(count)]
    probes = [ChainPoint(ch.name, j) for j in idx]
    # h_i o phi^{-n0} is the indicator of phi^{n0}(probe)
    supports = [apply_power(sys, p, n0) for p in probes]
    return [0] * count, supports, probes


def _family_b(sys, a, b, m0, n0, locus, count):
    x0 = locus.point
    q = apply_power(sys, x0, n0)
    gap = m0 + n0 + 2
    f = a.coefficients[m0]
    if isinstance(x0, CyclePoint):
        period = sys.cycle_by_name[x0.cycle].length
        start = next(l for l in range(period) if evaluate(f, apply_power(sys, x0, n0 + l)))
        step = period * math.ceil(gap / period)
    else:
        lo, _ = _span([a], x0.chain)
        start = max(0, x0.index - lo + 1)
        step = gap
    shifts = [start + i * step for i in range(count)]
    return shifts, [q] * count, [x0] * count


def _family_c(sys, a, b, m0, n0, locus, count):
    f, g = a.coefficients[m0], b.coefficients[n0]
    chain = locus.chain
    fp, gp = f.chain(chain), g.chain(chain)
    cands = [(j, v) for j, v in fp.window() if v]
    if fp.minus:
        cands.append((fp.lo - 1, fp.minus))
    if fp.plus:
        cands.append((fp.hi, fp.plus))
    top = max(v.abs2() for _, v in cands)
    istar = next(j for j, v in cands if v.abs2() == top)
    gap = m0 + n0 + 2
    start = max(0, gp.hi - istar - n0)
    shifts = [start + i * gap for i in range(count)]
    probes = [ChainPoint(chain, istar + n0 + l) for l in shifts]
    supports = [apply_power(sys, p, n0) for p in probes]
    return shifts, supports, probes


def witness_family(sys: DynamicalSystem, a: AlgebraElement, b: AlgebraElement,
                   reports: tuple[ConditionReport, ...] | list[ConditionReport], count: int
                   ) -> WitnessFamily:
    """``count`` unit-ball monomials whose images are ``delta``-separated."""
    if count < 2:
        raise ValueError("a witness family needs at least two elements")
    mi = minimal_indices(reports)
    if mi is None:
        raise NoFailure("all conditions hold; M_{A,B} is compact")
    builder = {"a": _family_a, "b": _family_b, "c": _family_c}[mi.condition]
    shifts, supports, probes = builder(sys, a, b, mi.m0, mi.n0, mi.failure, count)
    elements = tuple(AlgebraElement.monomial(l, indicator(sys, [q]))
                     for l, q in zip(shifts, supports))
    delta = separation_bound(sys, a, b, shifts, supports, probes, mi.m0, mi.n0)
    return WitnessFamily(mi.condition, mi.m0, mi.n0, mi.l0, mi.failure, tuple(shifts),
                         tuple(supports), tuple(probes), elements, delta)


def verify_separation(sys: DynamicalSystem, a: AlgebraElement, b: AlgebraElement,
                      family: WitnessFamily) -> Fraction | float:
    """``min_{u != v} max_k ||E_k(M(T_u) - M(T_v))||``, fully symbolic.

    Each ``E_k`` is contractive, so this bounds ``||M(T_u) - M(T_v)||`` below.
    """
    images = [sandwich(a, t, b) for t in family.elements]
    best = None
    for u in range(len(images)):
        for v in range(u + 1, len(images)):
            diff = images[u] - images[v]
            val = max((sup_norm(fourier_coefficient(diff, k)) for k, _ in diff.items()),
                      default=Fraction(0))
            best = val if best is None else min(best, val)
    return best
