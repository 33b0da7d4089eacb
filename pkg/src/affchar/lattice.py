"""Enumeration of lattice points under a positive-definite quadratic form.

Finds every ``n`` in ``Z^l`` with

    F(n) = (scale/2) * n M n^t + linear . n  <=  bound

for a symmetric (or symmetrizable) integer matrix ``M``.  The square is
completed around the exact rational center and ``scale*M = L^t D L`` is
factored exactly (``L`` unit lower triangular), which gives nested
per-coordinate intervals, first coordinate outermost.  Intervals are widened
slightly when evaluated in floating point and every candidate is then
filtered by the exact integer value of ``2F``, so the result is exact.

Points come out in lexicographic order, in numpy chunks of bounded size.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import DimensionMismatch, NotPositiveDefinite

_CHUNK = 1 << 18
_FLOAT_SAFE = 1 << 20
_SLACK = 1e-7


@dataclass(frozen=True)
class QuadraticProblem:
    """``(scale/2) n M n^t + linear . n <= bound`` with exact data."""

    matrix: tuple[tuple[int, ...], ...]
    scale: int
    linear: tuple[int, ...]
    bound: int

    @classmethod
    def make(cls, matrix: Sequence[Sequence[int]], scale: int = 1,
             linear: Sequence[int] | None = None, bound: int = 0) -> QuadraticProblem:
        m = tuple(tuple(int(x) for x in row) for row in matrix)
        n = len(m)
        if any(len(row) != n for row in m):
            raise DimensionMismatch("quadratic form matrix must be square")
        lin = tuple(int(x) for x in linear) if linear is not None else (0,) * n
        if len(lin) != n:
            raise DimensionMismatch(f"linear term of length {len(lin)} for a {n}x{n} form")
        if scale < 1:
            raise NotPositiveDefinite(f"scale must be positive, got {scale}")
        return cls(m, int(scale), lin, int(bound))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def symmetric(self) -> list[list[Fraction]]:
        m = self.matrix
        return [[Fraction(m[i][j] + m[j][i], 2) for j in range(self.dim)] for i in range(self.dim)]

    def twice_value(self, points: np.ndarray) -> np.ndarray:
        """Exact ``2F(n)`` for each row of ``points`` (int64)."""
        pts = np.asarray(points, dtype=np.int64)
        m = np.asarray(self.matrix, dtype=np.int64)
        if len(pts) and np.abs(pts).max() * max(1, np.abs(m).max()) < _FLOAT_SAFE and self.dim < 64:
            # every partial sum is an integer far below 2^53, so float matmul is exact
            f = pts.astype(np.float64)
            quad = np.rint(np.einsum("ij,ij->i", f @ m.astype(np.float64), f)).astype(np.int64)
        else:
            quad = np.einsum("ki,ij,kj->k", pts, m, pts)
        return self.scale * quad + 2 * (pts @ np.asarray(self.linear, dtype=np.int64))

    def twice_value_exact(self, n: Sequence[int]) -> int:
        m, d = self.matrix, self.dim
        quad = sum(n[i] * m[i][j] * n[j] for i in range(d) for j in range(d))
        return self.scale * quad + 2 * sum(a * b for a, b in zip(self.linear, n))


def _decompose(a: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """``a = L^t D L`` with ``L`` unit lower triangular; eliminates the last variable first."""
    n = len(a)
    s = [row[:] for row in a]
    low = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    diag = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        piv = s[i][i]
        if piv <= 0:
            raise NotPositiveDefinite("quadratic form is not positive definite")
        diag[i] = piv
        for j in range(i):
            low[i][j] = s[i][j] / piv
        for j in range(i):
            for k in range(i):
                s[j][k] -= s[j][i] * s[i][k] / piv
    return low, diag


def _solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(a)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for k in range(n):
        p = next(i for i in range(k, n) if m[i][k] != 0)
        m[k], m[p] = m[p], m[k]
        for i in range(n):
            if i != k and m[i][k] != 0:
                r = m[i][k] / m[k][k]
                for j in range(k, n + 1):
                    m[i][j] -= r * m[k][j]
    return [m[i][n] / m[i][i] for i in range(n)]


class _Plan:
    def __init__(self, prob: QuadraticProblem):
        a = [[prob.scale * x for x in row] for row in prob.symmetric()]
        self.low, self.diag = _decompose(a)
        center = _solve(a, [Fraction(-x) for x in prob.linear])
        # F(n) = 1/2 (n-c) A (n-c)^t - 1/2 c A c^t
        cac = sum(center[i] * a[i][j] * center[j] for i in range(prob.dim) for j in range(prob.dim))
        self.budget = 2 * prob.bound + cac  # bound on (n-c) A (n-c)^t
        self.center = np.array([float(c) for c in center])
        self.lowf = np.array([[float(x) for x in row] for row in self.low])
        self.diagf = np.array([float(x) for x in self.diag])
        self.eps = _SLACK * (1 + abs(float(self.budget)))


def iter_points(prob: QuadraticProblem, chunk: int = _CHUNK) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield ``(points, twice_values)`` chunks covering all solutions in lexicographic order."""
    if prob.dim == 0:
        if 0 <= 2 * prob.bound:
            yield np.zeros((1, 0), dtype=np.int64), np.zeros(1, dtype=np.int64)
        return
    plan = _Plan(prob)
    if plan.budget < 0:
        return
    budget = float(plan.budget) + plan.eps
    pts = np.zeros((1, 0), dtype=np.int64)
    rem = np.array([budget])
    for out in _expand(plan, prob, pts, rem, 0, chunk):
        yield out


def _expand(plan: _Plan, prob: QuadraticProblem, pts: np.ndarray, rem: np.ndarray,
            level: int, chunk: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    dim = prob.dim
    while level < dim:
        if level:
            off = (pts - plan.center[:level]) @ plan.lowf[level, :level]
        else:
            off = np.zeros(len(pts))
        mid = plan.center[level] - off
        rad = np.sqrt(np.maximum(rem, 0.0) / plan.diagf[level])
        lo = np.ceil(mid - rad - _SLACK).astype(np.int64)
        hi = np.floor(mid + rad + _SLACK).astype(np.int64)
        counts = np.maximum(hi - lo + 1, 0)
        total = int(counts.sum())
        if total == 0:
            return
        if total > chunk and len(pts) > 1:
            # depth-first over slices of prefixes keeps memory bounded and order lexicographic
            cuts = np.searchsorted(np.cumsum(counts), np.arange(chunk, total, chunk), side="left")
            inner = sorted(set(int(c) for c in cuts if 0 < c < len(pts))) or [len(pts) // 2]
            edges = [0] + inner + [len(pts)]
            for a, b in zip(edges, edges[1:]):
                yield from _expand(plan, prob, pts[a:b], rem[a:b], level, chunk)
            return
        parent = np.repeat(np.arange(len(pts)), counts)
        first = np.repeat(np.cumsum(counts) - counts, counts)
        vals = lo[parent] + (np.arange(total) - first)
        t = vals - mid[parent]
        new_rem = rem[parent] - plan.diagf[level] * t * t
        keep = new_rem >= -plan.eps
        pts = np.concatenate([pts[parent], vals[:, None]], axis=1)[keep]
        rem = new_rem[keep]
        level += 1
    if len(pts) == 0:
        return
    twice = prob.twice_value(pts)
    ok = twice <= 2 * prob.bound
    if ok.any():
        yield pts[ok], twice[ok]


def enumerate_points(prob: QuadraticProblem) -> list[tuple[int, ...]]:
    """All solutions as tuples, lexicographically sorted."""
    out: list[tuple[int, ...]] = []
    for pts, _ in iter_points(prob):
        out.extend(map(tuple, pts.tolist()))
    return out


def count_points(prob: QuadraticProblem) -> int:
    return sum(len(p) for p, _ in iter_points(prob))


def box_radius(prob: QuadraticProblem) -> int:
    """A coordinate bound ``|n_i| <= R`` valid for every solution."""
    plan = _Plan(prob)
    if plan.budget < 0:
        return 0
    # |n_i - c_i|^2 <= budget * (A^-1)_ii
    a = [[prob.scale * x for x in row] for row in prob.symmetric()]
    radius = 0
    for i in range(prob.dim):
        e = [Fraction(int(i == j)) for j in range(prob.dim)]
        inv_ii = _solve(a, e)[i]
        r = math.isqrt(math.ceil(plan.budget * inv_ii)) + 1
        radius = max(radius, r + math.ceil(abs(float(_solve(a, [Fraction(-x) for x in prob.linear])[i]))))
    return radius


def enumerate_box(prob: QuadraticProblem, radius: int | None = None) -> list[tuple[int, ...]]:
    """Exhaustive scan of ``[-R, R]^l``; for small ranks and as an independent check."""
    r = box_radius(prob) if radius is None else radius
    bound2 = 2 * prob.bound
    return [
        n for n in itertools.product(range(-r, r + 1), repeat=prob.dim)
        if prob.twice_value_exact(n) <= bound2
    ]
