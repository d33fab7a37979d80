"""Polynomials ``sum_n U^n f_n`` in the semicrossed product.

Multiplication follows ``U^n f U^m g = U^{n+m} (f o phi^m) g``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping

from .dynsys import DynamicalSystem
from .errors import SystemMismatch
from .funcspace import ModelFunction, compose_power, sup_norm, zero
from .scalar import Number, Scalar


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    system: DynamicalSystem
    coefficients: Mapping[int, ModelFunction] = field(default_factory=dict)

    def __post_init__(self):
        coeffs = {}
        for n, f in sorted(self.coefficients.items()):
            if n < 0:
                raise ValueError("degrees must be non-negative")
            if f.system != self.system:
                raise SystemMismatch("coefficient lives on a different system")
            if not f.is_zero():
                coeffs[n] = f
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def monomial(cls, n: int, f: ModelFunction) -> AlgebraElement:
        return cls(f.system, {n: f})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.system == other.system and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(tuple(self.coefficients.items()))

    def __repr__(self) -> str:
        if not self.coefficients:
            return "AlgebraElement(0)"
        return "AlgebraElement(" + " + ".join(f"U^{n} {f!r}" for n, f in self.items()) + ")"

    def items(self) -> Iterator[tuple[int, ModelFunction]]:
        return iter(self.coefficients.items())

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        """Top degree; ``-1`` for the zero element."""
        return max(self.coefficients, default=-1)

    def is_monomial(self) -> bool:
        return len(self.coefficients) == 1

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        return add(self, other)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return add(self, scale(other, -1))

    def __neg__(self) -> AlgebraElement:
        return scale(self, -1)

    def __mul__(self, other: AlgebraElement | Number) -> AlgebraElement:
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return scale(self, other)

    def __rmul__(self, other: Number) -> AlgebraElement:
        return scale(self, other)


def _check(a: AlgebraElement, b: AlgebraElement) -> None:
    if a.system != b.system:
        raise SystemMismatch("elements live on different systems")


def add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _check(a, b)
    out = dict(a.coefficients)
    for n, g in b.items():
        out[n] = out[n] + g if n in out else g
    return AlgebraElement(a.system, out)


def scale(a: AlgebraElement, lam: Number | str) -> AlgebraElement:
    lam = Scalar.coerce(lam)
    return AlgebraElement(a.system, {n: f * lam for n, f in a.items()})


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """``E_p(ab) = sum_{n+m=p} (f_n o phi^m) g_m``."""
    _check(a, b)
    out: dict[int, ModelFunction] = {}
    for n, f in a.items():
        for m, g in b.items():
            term = compose_power(f, m) * g
            out[n + m] = out[n + m] + term if n + m in out else term
    return AlgebraElement(a.system, out)


def fourier_coefficient(a: AlgebraElement, n: int) -> ModelFunction:
    if n < 0:
        raise ValueError("Fourier coefficients are indexed by n >= 0")
    return a.coefficients.get(n) or zero(a.system)


def l1_norm(a: AlgebraElement) -> Fraction | float:
    return sum((sup_norm(f) for _, f in a.items()), Fraction(0))


def cesaro_mean(a: AlgebraElement, k: int) -> AlgebraElement:
    """The k-th arithmetic mean of the partial sums ``S_0, ..., S_k``.

    Averaging the partial sums weights degree ``n <= k`` by ``(k+1-n)/(k+1)``
    and drops everything above ``k``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    return AlgebraElement(
        a.system,
        {n: f * Fraction(k + 1 - n, k + 1) for n, f in a.items() if n <= k},
    )


def partial_sum(a: AlgebraElement, k: int) -> AlgebraElement:
    return AlgebraElement(a.system, {n: f for n, f in a.items() if n <= k})


def sandwich(a: AlgebraElement, t: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """``M_{a,b}(t) = a t b``."""
    return multiply(multiply(a, t), b)
