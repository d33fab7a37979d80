"""Exact C_0(X) functions that are eventually constant along every chain.

This class is closed under sums, products, composition with powers of phi,
pointwise functions of the value (cutoffs) and finite indicators, which is
everything the compactness machinery needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .dynsys import (
    ChainPoint,
    CyclePoint,
    DynamicalSystem,
    LimitPoint,
    Point,
    PointSet,
)
from .errors import Discontinuous, NotIsolated, SystemMismatch, VanishingViolation
from .profile import Profile
from .scalar import ONE, ZERO, Number, Scalar, exact_sqrt

ZERO_PROFILE: Profile = Profile.constant(ZERO)


@dataclass(frozen=True, eq=False)
class ModelFunction:
    system: DynamicalSystem
    cycle_values: Mapping[CyclePoint, Scalar] = field(default_factory=dict)
    chains: Mapping[str, Profile] = field(default_factory=dict)
    limit_values: Mapping[str, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "cycle_values", {p: v for p, v in sorted(self.cycle_values.items()) if v}
        )
        object.__setattr__(
            self,
            "chains",
            {n: p for n, p in sorted(self.chains.items()) if not (p.is_constant() and not p.minus)},
        )
        object.__setattr__(
            self, "limit_values", {a: v for a, v in sorted(self.limit_values.items()) if v}
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModelFunction):
            return NotImplemented
        return (
            self.system == other.system
            and self.cycle_values == other.cycle_values
            and self.chains == other.chains
            and self.limit_values == other.limit_values
        )

    def __hash__(self) -> int:
        return hash((tuple(self.cycle_values.items()), tuple(self.chains.items()),
                     tuple(self.limit_values.items())))

    def __repr__(self) -> str:
        parts = [f"{p}={v}" for p, v in self.cycle_values.items()]
        for name, prof in self.chains.items():
            win = ", ".join(f"{j}:{v}" for j, v in prof.window())
            parts.append(f"{name}<{prof.minus}|{win}|{prof.plus}>@{prof.lo}")
        parts += [f"{a}={v}" for a, v in self.limit_values.items()]
        return f"ModelFunction({'; '.join(parts) or '0'})"

    def __call__(self, p: Point) -> Scalar:
        return evaluate(self, p)

    def is_zero(self) -> bool:
        return not (self.cycle_values or self.chains or self.limit_values)

    def chain(self, name: str) -> Profile:
        return self.chains.get(name, ZERO_PROFILE)

    def values(self) -> list[Scalar]:
        """Every value attained, up to the implicit zeros."""
        out = list(self.cycle_values.values()) + list(self.limit_values.values())
        for prof in self.chains.values():
            out.extend(prof.all_values())
        return out

    def __add__(self, other: ModelFunction) -> ModelFunction:
        return pointwise("add", self, other)

    def __sub__(self, other: ModelFunction) -> ModelFunction:
        return pointwise("add", self, pointwise("scale", other, -1))

    def __mul__(self, other: ModelFunction | Number) -> ModelFunction:
        if isinstance(other, ModelFunction):
            return pointwise("mul", self, other)
        return pointwise("scale", self, other)

    __rmul__ = __mul__

    def __neg__(self) -> ModelFunction:
        return pointwise("scale", self, -1)


def zero(sys: DynamicalSystem) -> ModelFunction:
    return ModelFunction(sys)


def make_function(
    sys: DynamicalSystem,
    cycles: Mapping[CyclePoint, Number | str] | None = None,
    chains: Mapping[str, Profile] | None = None,
    limits: Mapping[str, Number | str] | None = None,
    validate: bool = True,
) -> ModelFunction:
    """Assemble and validate a function; chain profiles may hold plain numbers."""
    cyc = {}
    for p, v in (cycles or {}).items():
        sys.check_point(p)
        cyc[p] = Scalar.coerce(v)
    prof = {}
    for name, pr in (chains or {}).items():
        if name not in sys.chain_by_name:
            raise SystemMismatch(f"unknown chain {name!r}")
        prof[name] = _mask_range(sys, name, pr.map(Scalar.coerce))
    lim = {}
    for a, v in (limits or {}).items():
        sys.check_point(LimitPoint(a))
        lim[a] = Scalar.coerce(v)
    f = ModelFunction(sys, cyc, prof, lim)
    if validate:
        validate_c0(f)
    return f


def _mask_range(sys: DynamicalSystem, name: str, prof: Profile) -> Profile:
    ch = sys.chain_by_name[name]
    if ch.start is not None:
        keep = Profile(False, True, ch.start, ())
    elif ch.stop is not None:
        keep = Profile(True, False, ch.stop + 1, ())
    else:
        return prof
    return prof.zip_with(keep, lambda v, k: v if k else ZERO)


def _same_system(*fs: ModelFunction) -> DynamicalSystem:
    sys = fs[0].system
    for f in fs[1:]:
        if f.system is not sys and f.system != sys:
            raise SystemMismatch("functions live on different systems")
    return sys


def evaluate(f: ModelFunction, p: Point) -> Scalar:
    f.system.check_point(p)
    if isinstance(p, CyclePoint):
        return f.cycle_values.get(p, ZERO)
    if isinstance(p, ChainPoint):
        return f.chain(p.chain)[p.index]
    return f.limit_values.get(p.name, ZERO)


def c0_violations(f: ModelFunction) -> list[Exception]:
    out: list[Exception] = []
    for ch in f.system.chains:
        prof = f.chain(ch.name)
        for end, label, tail in (("minus", ch.minus, prof.minus), ("plus", ch.plus, prof.plus)):
            if label is None:
                if tail:
                    out.append(VanishingViolation(ch.name, end, tail))
            else:
                expected = f.limit_values.get(label, ZERO)
                if tail != expected:
                    out.append(Discontinuous(ch.name, end, expected, tail))
    return out


def validate_c0(f: ModelFunction) -> None:
    """Raise the first continuity / vanishing-at-infinity violation, if any."""
    problems = c0_violations(f)
    if problems:
        raise problems[0]


def _map_values(f: ModelFunction, fn: Callable[[Scalar], Scalar]) -> ModelFunction:
    # valid only when fn(0) == 0; implicit zeros stay zero
    return ModelFunction(
        f.system,
        {p: fn(v) for p, v in f.cycle_values.items()},
        {n: prof.map(fn) for n, prof in f.chains.items()},
        {a: fn(v) for a, v in f.limit_values.items()},
    )


def _zip_values(f: ModelFunction, g: ModelFunction, fn) -> ModelFunction:
    sys = _same_system(f, g)
    cyc = {p: fn(f.cycle_values.get(p, ZERO), g.cycle_values.get(p, ZERO))
           for p in set(f.cycle_values) | set(g.cycle_values)}
    chains = {n: f.chain(n).zip_with(g.chain(n), fn) for n in set(f.chains) | set(g.chains)}
    lim = {a: fn(f.limit_values.get(a, ZERO), g.limit_values.get(a, ZERO))
           for a in set(f.limit_values) | set(g.limit_values)}
    return ModelFunction(sys, cyc, chains, lim)


def pointwise(mode: str, f: ModelFunction, other=None) -> ModelFunction:
    """``mode`` is one of ``add``, ``mul`` (other is a function), ``scale``
    (other is a scalar) or ``abs2`` (no other)."""
    if mode == "add":
        return _zip_values(f, other, lambda a, b: a + b)
    if mode == "mul":
        return _zip_values(f, other, lambda a, b: a * b)
    if mode == "scale":
        lam = Scalar.coerce(other)
        if not lam:
            return zero(f.system)
        return _map_values(f, lambda v: v * lam)
    if mode == "abs2":
        return _map_values(f, lambda v: Scalar(v.abs2()))
    raise ValueError(f"unknown pointwise mode {mode!r}")


def compose_power(f: ModelFunction, k: int) -> ModelFunction:
    """``f o phi^k``; on a chain ``(f o phi^k)(x_j) = f(x_{j-k})``."""
    if k == 0:
        return f
    sys = f.system
    cyc = {}
    for p, v in f.cycle_values.items():
        length = sys.cycle_by_name[p.cycle].length
        cyc[CyclePoint(p.cycle, (p.index + k) % length)] = v
    return ModelFunction(sys, cyc, {n: prof.shift(k) for n, prof in f.chains.items()},
                         f.limit_values)


def sup_norm(f: ModelFunction) -> Fraction | float:
    """Exact whenever the largest modulus is rational (always for real data)."""
    return exact_sqrt(max((v.abs2() for v in f.values()), default=Fraction(0)))


def support(f: ModelFunction) -> PointSet:
    return threshold_set(f, lambda a2: a2 > 0)


def threshold_set(f: ModelFunction, pred: Callable[[Fraction], bool]) -> PointSet:
    """``{x : pred(|f(x)|^2)}``; ``pred(0)`` must be false."""
    return PointSet(
        frozenset(p for p, v in f.cycle_values.items() if pred(v.abs2())),
        {n: prof.map(lambda v: pred(v.abs2())) for n, prof in f.chains.items()},
        frozenset(a for a, v in f.limit_values.items() if pred(v.abs2())),
    )


def level_sets(f: ModelFunction, k: int) -> tuple[PointSet, PointSet]:
    """``D_k = {|f| >= 1/k}`` and ``U_k = {|f| > 2/(3k)}``, compared via squares."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    d2 = Fraction(1, k * k)
    u2 = Fraction(4, 9 * k * k)
    return threshold_set(f, lambda a2: a2 >= d2), threshold_set(f, lambda a2: a2 > u2)


def _clamp01(q: Fraction) -> Fraction:
    return min(Fraction(1), max(Fraction(0), q))


def cutoff_weight(z: Scalar, k: int) -> Fraction:
    """The Urysohn weight at a point where ``f`` takes the value ``z``.

    ``clamp(3k|z| - 2)`` when ``|z|`` is rational. Otherwise
    ``clamp((9k^2|z|^2 - 4)/5)``, which has the same zero and one sets and
    keeps everything rational.
    """
    a2 = z.abs2()
    mod = exact_sqrt(a2)
    if isinstance(mod, Fraction):
        return _clamp01(3 * k * mod - 2)
    return _clamp01((9 * k * k * a2 - 4) / 5)


def urysohn_cutoff(f: ModelFunction, k: int) -> tuple[ModelFunction, ModelFunction]:
    """Return ``(v, v*f)`` with ``v = 1`` on ``D_k(f)`` and ``v = 0`` off ``U_k(f)``.

    ``v`` is a function of the value of ``f``, so its chain tails follow the
    tails of ``f`` and continuity is inherited. ``||f - v f|| <= 1/k``.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    v = _map_values(f, lambda z: Scalar(cutoff_weight(z, k)))
    return v, _map_values(f, lambda z: z * cutoff_weight(z, k))


def indicator(sys: DynamicalSystem, points: Iterable[Point]) -> ModelFunction:
    """Characteristic function of a finite set of isolated points."""
    cyc: dict[CyclePoint, Scalar] = {}
    explicit: dict[str, dict[int, Scalar]] = {}
    for p in points:
        sys.check_point(p)
        if isinstance(p, LimitPoint):
            raise NotIsolated(f"the indicator of the accumulation point {p} is not continuous")
        if isinstance(p, CyclePoint):
            cyc[p] = ONE
        else:
            explicit.setdefault(p.chain, {})[p.index] = ONE
    chains = {n: Profile.build(ZERO, ZERO, vals) for n, vals in explicit.items()}
    return ModelFunction(sys, cyc, chains, {})


def indicator_of_set(sys: DynamicalSystem, points: PointSet) -> ModelFunction:
    return indicator(sys, points.finite_points())


def function_window(f: ModelFunction) -> tuple[int, int]:
    """Smallest ``[lo, hi)`` containing every chain window of ``f``."""
    spans = [(p.lo, p.hi) for p in f.chains.values() if not p.is_constant()]
    if not spans:
        return 0, 0
    return min(s[0] for s in spans), max(s[1] for s in spans)
