"""Finite-rank approximants of a compact ``M_{U^m f, U^n g}``.

Cut ``f`` and ``g`` down with the Urysohn weights to ``f_k``, ``g_k``. For
``T = sum_l U^l h_l`` the operator ``T -> U^m f_k T U^n g_k`` sends ``U^l h``
to ``U^{m+l+n} (f_k o phi^{n+l}) (h o phi^n) g_k``. When the pair conditions
hold, only finitely many isolated points ``y`` have ``g_k(y) != 0`` and
``f_k(phi^{n+l} y) != 0`` for some ``l``; restricting ``g_k`` to that set does
not change the operator, and beyond a horizon ``L0`` every term vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..algebra import AlgebraElement, l1_norm, sandwich
from ..dynsys import ChainPoint, DynamicalSystem, Point, apply_power, point_key
from ..errors import NotCompact
from ..funcspace import ModelFunction, evaluate, indicator, sup_norm, urysohn_cutoff, zero
from .conditions import check_pair


@dataclass(frozen=True)
class Approximant:
    k: int
    m: int
    n: int
    a_k: AlgebraElement  # U^m f_k
    b_k: AlgebraElement  # U^n g~_k
    exceptional: tuple[Point, ...]  # the finite set I_k carrying g~_k
    horizon: int  # L0: every U^l h with l >= L0 is annihilated
    image: tuple[tuple[int, Point], ...]  # (degree, y): the range sits in span U^d chi_y
    error_bound: Fraction | float  # sup over the unit ball of ||M_{A,B}(T) - M_k(T)||

    @property
    def rank_bound(self) -> int:
        return len(self.exceptional) * self.horizon

    def apply(self, t: AlgebraElement) -> AlgebraElement:
        return sandwich(self.a_k, t, self.b_k)


def _single(e: AlgebraElement) -> tuple[int, ModelFunction]:
    if len(e.coefficients) > 1:
        raise ValueError("finite-rank approximants are built for monomials")
    if e.is_zero():
        return 0, zero(e.system)
    return next(e.items())


def _chain_part(sys, name: str, fk: ModelFunction, gk: ModelFunction, n: int
                ) -> tuple[list[Point], int]:
    """Exceptional points of one chain and the horizon they need."""
    fp, gp = fk.chain(name), gk.chain(name)
    nonzero = [j for j, v in fp.window() if v]
    if not nonzero and not fp.minus and not fp.plus:
        return [], 0
    if not (gp.minus or gp.plus or any(v for _, v in gp.window())):
        return [], 0
    if fp.minus or gp.plus:
        raise NotCompact(f"infinitely many exceptional points on chain {name}")
    # fp.plus != 0 with fp.minus == 0 still leaves a least nonzero index
    i_min = min(nonzero) if nonzero else fp.hi
    pts, horizon = [], 0
    for j in range(i_min + n, gp.hi):
        if gp[j]:
            pts.append(ChainPoint(name, j))
            horizon = max(horizon, j - n - i_min + 1)
    return pts, horizon


def finite_rank_approximant(sys: DynamicalSystem, a: AlgebraElement, b: AlgebraElement,
                            k: int) -> Approximant:
    """Approximant of ``T -> a T b`` for monomials ``a = U^m f``, ``b = U^n g``.

    Any ``k >= 1`` is accepted; the error bound ``(||f|| + ||g||)/k`` is
    reported with the result.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    m, f = _single(a)
    n, g = _single(b)
    rep = check_pair(sys, f, m, g, n)
    if not rep.passed:
        raise NotCompact(f"pair (m={m}, n={n}) fails condition "
                         f"{rep.failures()[0].condition}; no finite-rank approximation")
    _, fk = urysohn_cutoff(f, k)
    _, gk = urysohn_cutoff(g, k)

    points: list[Point] = []
    horizon = 0
    for y in sys.cycle_points():
        if evaluate(gk, y) and any(evaluate(fk, apply_power(sys, y, n + l))
                                   for l in range(sys.cycle_by_name[y.cycle].length)):
            raise NotCompact(f"{y} is recurrent and the products do not vanish there")
    for ch in sys.chains:
        pts, hz = _chain_part(sys, ch.name, fk, gk, n)
        points += pts
        horizon = max(horizon, hz)
    points.sort(key=point_key)

    gtilde = gk * indicator(sys, points) if points else zero(sys)
    image = []
    for l in range(horizon):
        for y in points:
            if evaluate(fk, apply_power(sys, y, n + l)):
                image.append((m + l + n, y))
    image.sort(key=lambda t: (t[0], point_key(t[1])))

    nf, ng = sup_norm(f), sup_norm(g)
    # ||M_{f,g} - M_{f_k,g_k}|| <= ||f|| ||g - g_k|| + ||f - f_k|| ||g||, at most (||f|| + ||g||)/k
    err = nf * sup_norm(g - gk) + sup_norm(f - fk) * ng
    return Approximant(k, m, n, AlgebraElement.monomial(m, fk),
                       AlgebraElement.monomial(n, gtilde) if points else AlgebraElement(sys),
                       tuple(points), horizon, tuple(image), err)


def coefficient_error(a: AlgebraElement, approx: Approximant) -> Fraction | float:
    """``||A - A_k||_1``."""
    return l1_norm(a - approx.a_k)
