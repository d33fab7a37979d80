"""Truncated matrices of the regular representation and operator-norm estimates.

The Hilbert space is ``l^2(X_0) (x) l^2({0..K})`` where ``X_0`` holds the
cycle points, the limits and the chain points with ``|j| <= W``, and ``C_0(X)``
acts by multiplication. ``U^n f`` sends ``delta_x (x) e_k`` to
``f(phi^k x) delta_x (x) e_{k+n}``, so the matrix splits into one
``(K+1) x (K+1)`` lower-triangular block per point.

This is the only module that leaves exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterator

import numpy as np

from .algebra import AlgebraElement, l1_norm
from .dynsys import DynamicalSystem, Point, apply_power
from .errors import NoConvergence
from .funcspace import evaluate, sup_norm

MAX_ITERATIONS = 100_000
SQUARINGS = 30


@dataclass(frozen=True)
class TruncationSpec:
    window: int
    depth: int

    def __post_init__(self):
        if self.window < 0 or self.depth < 0:
            raise ValueError("window and depth must be non-negative")


@dataclass(frozen=True, eq=False)
class RepMatrix:
    points: tuple[Point, ...]
    blocks: np.ndarray  # shape (len(points), K+1, K+1), complex

    @property
    def depth(self) -> int:
        return self.blocks.shape[1] - 1

    @property
    def shape(self) -> tuple[int, int]:
        size = len(self.points) * (self.depth + 1)
        return size, size

    def __matmul__(self, other: RepMatrix) -> RepMatrix:
        if self.points != other.points or self.depth != other.depth:
            raise ValueError("matrices are built over different truncations")
        return RepMatrix(self.points, np.matmul(self.blocks, other.blocks))

    def entries(self) -> Iterator[tuple[int, int, complex]]:
        """Nonzero entries ``(row, col, value)`` with row ``p*(K+1) + k``."""
        size = self.depth + 1
        for p, k_row, k_col in zip(*np.nonzero(self.blocks)):
            yield int(p) * size + int(k_row), int(p) * size + int(k_col), \
                complex(self.blocks[p, k_row, k_col])

    def dense(self) -> np.ndarray:
        size = self.depth + 1
        out = np.zeros(self.shape, dtype=complex)
        for p in range(len(self.points)):
            out[p * size:(p + 1) * size, p * size:(p + 1) * size] = self.blocks[p]
        return out

    def dump_coo(self, out: IO[str]) -> None:
        """Coordinate list, one ``row col re im`` line per nonzero entry."""
        for r, c, v in self.entries():
            out.write(f"{r} {c} {v.real!r} {v.imag!r}\n")


def build_truncated_rep(sys: DynamicalSystem, a: AlgebraElement, spec: TruncationSpec
                        ) -> RepMatrix:
    points = tuple(sys.points(spec.window))
    size = spec.depth + 1
    blocks = np.zeros((len(points), size, size), dtype=complex)
    for i, x in enumerate(points):
        orbit = [apply_power(sys, x, k) for k in range(size)]
        for n, f in a.items():
            for k in range(size - n):
                v = evaluate(f, orbit[k])
                if v:
                    blocks[i, k + n, k] = complex(v)
    return RepMatrix(points, blocks)


def _power_iteration(gram: np.ndarray, start: np.ndarray, tol: float) -> np.ndarray:
    """Top eigenvalue of each Hermitian PSD block, from per-block start vectors."""
    v = start.astype(complex)
    lam = np.zeros(gram.shape[0])
    active = np.ones(gram.shape[0], dtype=bool)
    for _ in range(MAX_ITERATIONS):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            return lam
        w = np.einsum("bij,bj->bi", gram[idx], v[idx])
        rq = np.einsum("bi,bi->b", v[idx].conj(), w).real
        lam[idx] = np.maximum(rq, 0.0)
        resid = np.linalg.norm(w - rq[:, None] * v[idx], axis=1)
        nrm = np.linalg.norm(w, axis=1)
        done = (resid <= tol * np.maximum(rq, 0.0)) | (nrm == 0.0)
        active[idx[done]] = False
        keep = ~done
        v[idx[keep]] = w[keep] / nrm[keep, None]
    raise NoConvergence(f"power iteration did not settle within {MAX_ITERATIONS} steps")


def _high_power(gram: np.ndarray) -> np.ndarray:
    """``(S / tr S)^(2^SQUARINGS)``, renormalised after every squaring."""
    p = gram.copy()
    for _ in range(SQUARINGS):
        tr = np.einsum("bii->b", p).real
        tr[tr == 0] = 1.0
        p = p / tr[:, None, None]
        p = np.matmul(p, p)
    return p


def op_norm_estimate(m: RepMatrix, tol: float) -> float:
    """Largest singular value of the truncated matrix, block by block.

    Power iteration on ``S = M* M`` stops once ``||S v - lam v|| <= tol * lam``.
    The fixed start vector (normalised all-ones, plus a fixed ramp for blocks
    where all-ones misses the top eigenspace exactly) is first pushed through
    ``S^(2^SQUARINGS)`` by repeated squaring, so nearly equal top singular
    values do not stall the iteration.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if m.blocks.size == 0:
        return 0.0
    blocks = m.blocks
    gram = np.matmul(blocks.conj().transpose(0, 2, 1), blocks)
    power = _high_power(gram)
    size = blocks.shape[1]
    best = np.zeros(blocks.shape[0])
    for start in (np.ones(size), np.arange(1, size + 1, dtype=float)):
        start = start / np.linalg.norm(start)
        v = np.einsum("bij,j->bi", power, start)
        nrm = np.linalg.norm(v, axis=1)
        # a zero image means the start misses the top eigenspace; fall back to it
        v = np.where(nrm[:, None] > 0, v / np.where(nrm > 0, nrm, 1.0)[:, None], start)
        best = np.maximum(best, _power_iteration(gram, v, tol))
    return float(np.sqrt(best.max()))


def norm_sandwich(sys: DynamicalSystem, a: AlgebraElement, spec: TruncationSpec, tol: float
                  ) -> tuple[Fraction | float, float, Fraction | float]:
    """``(max_n ||E_n(a)||, truncated operator norm, ||a||_1)``."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    lower = max((sup_norm(f) for _, f in a.items()), default=Fraction(0))
    estimate = op_norm_estimate(build_truncated_rep(sys, a, spec), tol)
    return lower, estimate, l1_norm(a)
