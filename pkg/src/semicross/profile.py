"""Eventually constant two-sided sequences.

A :class:`Profile` is a map ``Z -> T`` that equals ``minus`` below some index,
``plus`` above another, and is given explicitly in between. The canonical
form trims the explicit window so that equal sequences compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Generic, Iterator, Mapping, TypeVar

T = TypeVar("T")
S = TypeVar("S")


@dataclass(frozen=True)
class Profile(Generic[T]):
    minus: T
    plus: T
    lo: int
    values: tuple

    def __post_init__(self):
        vals = list(self.values)
        lo = self.lo
        while vals and vals[0] == self.minus:
            vals.pop(0)
            lo += 1
        while vals and vals[-1] == self.plus:
            vals.pop()
        if not vals and self.minus == self.plus:
            lo = 0
        object.__setattr__(self, "values", tuple(vals))
        object.__setattr__(self, "lo", lo)

    @classmethod
    def constant(cls, value: T) -> Profile[T]:
        return cls(value, value, 0, ())

    @classmethod
    def build(
        cls,
        minus: T,
        plus: T,
        explicit: Mapping[int, T] | None = None,
        split: int = 0,
    ) -> Profile[T]:
        """``minus`` below ``split``, ``plus`` from ``split`` on, then overrides."""
        explicit = dict(explicit or {})
        keys = list(explicit) + [split]
        lo, hi = min(keys), max(keys) + 1
        vals = []
        for j in range(lo, hi):
            if j in explicit:
                vals.append(explicit[j])
            else:
                vals.append(minus if j < split else plus)
        return cls(minus, plus, lo, tuple(vals))

    @property
    def hi(self) -> int:
        """First index of the plus tail."""
        return self.lo + len(self.values)

    def __getitem__(self, j: int) -> T:
        if j < self.lo:
            return self.minus
        if j >= self.hi:
            return self.plus
        return self.values[j - self.lo]

    def window(self) -> Iterator[tuple[int, T]]:
        for i, v in enumerate(self.values):
            yield self.lo + i, v

    def is_constant(self) -> bool:
        return not self.values and self.minus == self.plus

    def shift(self, k: int) -> Profile[T]:
        """The sequence ``j -> self[j - k]``."""
        if self.is_constant():
            return self
        return Profile(self.minus, self.plus, self.lo + k, self.values)

    def map(self, fn: Callable[[T], S]) -> Profile[S]:
        return Profile(fn(self.minus), fn(self.plus), self.lo, tuple(fn(v) for v in self.values))

    def zip_with(self, other: Profile, fn: Callable[[T, object], S]) -> Profile[S]:
        spans = [p for p in (self, other) if p.values or p.minus != p.plus]
        if spans:
            lo = min(p.lo for p in spans)
            hi = max(p.hi for p in spans)
        else:
            lo = hi = 0
        vals = tuple(fn(self[j], other[j]) for j in range(lo, hi))
        return Profile(fn(self.minus, other.minus), fn(self.plus, other.plus), lo, vals)

    def all_values(self) -> list[T]:
        """Every value the sequence takes (tails included)."""
        return [self.minus, self.plus, *self.values]
