"""Root data of the finite-dimensional simple Lie algebras.

Nodes are numbered as in Bourbaki's tables, except G2, whose long root is
node 1 (so ``norm_squared == (2, 2/3)``).  Long roots have squared length 2.

The Cartan matrix follows ``a_ij = 2<a_i, a_j> / <a_i, a_i>``, so that
``diag(<a_i,a_i>/2) @ C`` is the Gram matrix of the simple roots.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DimensionMismatch, InputError, InvalidRank

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


@dataclass(frozen=True, order=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family in _MIN_RANK:
            ok = self.rank >= _MIN_RANK[self.family]
        elif self.family in _FIXED_RANKS:
            ok = self.rank in _FIXED_RANKS[self.family]
        else:
            raise InputError(f"unknown Lie algebra family {self.family!r}")
        if not ok:
            raise InvalidRank(f"{self.family}{self.rank} is not a valid simple Lie algebra type")

    @classmethod
    def parse(cls, text: str, rank: int | None = None) -> LieType:
        """Parse ``"A2"``, ``"e8"``, or a bare family letter together with ``rank``."""
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d*)\s*", text)
        if not m:
            raise InputError(f"cannot parse Lie type {text!r}")
        family, digits = m.group(1).upper(), m.group(2)
        if digits and rank is not None and int(digits) != rank:
            raise InputError(f"type {text!r} conflicts with rank {rank}")
        if not digits and rank is None:
            raise InputError(f"type {text!r} needs a rank")
        return cls(family, int(digits) if digits else rank)

    @property
    def simply_laced(self) -> bool:
        return self.family in "ADE"

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class RootSystemData:
    lie_type: LieType
    cartan: tuple[tuple[int, ...], ...]
    norm_squared: tuple[Fraction, ...]
    coweight_factor: tuple[int, ...]
    marks: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def height_theta(self) -> int:
        return sum(self.marks)

    @property
    def coxeter_h(self) -> int:
        return self.height_theta + 1

    @property
    def simply_laced(self) -> bool:
        return all(c == 1 for c in self.coweight_factor)

    @property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """Symmetrized Cartan matrix ``<a_i, a_j>``."""
        return tuple(
            tuple(self.norm_squared[i] / 2 * self.cartan[i][j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def coroot_pairing(self, m: int, i: int) -> int:
        """``a_m(H_i) = 2<a_m, a_i>/<a_i, a_i>``, the entry ``a_im`` in this module's convention."""
        return self.cartan[i][m]


def _dynkin(t: LieType) -> tuple[list[tuple[int, int]], list[Fraction], list[int]]:
    """Edges (0-based), squared root lengths, and highest-root marks."""
    f, n = t.family, t.rank
    two, one = Fraction(2), Fraction(1)
    chain = [(i, i + 1) for i in range(n - 1)]
    if f == "A":
        return chain, [two] * n, [1] * n
    if f == "B":
        return chain, [two] * (n - 1) + [one], [1] + [2] * (n - 1)
    if f == "C":
        return chain, [one] * (n - 1) + [two], [2] * (n - 1) + [1]
    if f == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        marks = [1, 1, 1] if n == 3 else [1] + [2] * (n - 3) + [1, 1]
        return edges, [two] * n, marks
    if f == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)]
        marks = {6: [1, 2, 2, 3, 2, 1], 7: [2, 2, 3, 4, 3, 2, 1], 8: [2, 3, 4, 6, 5, 4, 3, 2]}[n]
        return edges, [two] * n, marks
    if f == "F":
        return chain, [two, two, one, one], [2, 3, 4, 2]
    if f == "G":
        return [(0, 1)], [two, Fraction(2, 3)], [2, 3]
    raise AssertionError(f)


def leading_minors(matrix: Sequence[Sequence[Fraction | int]]) -> list[Fraction]:
    """Leading principal minors, computed exactly by fraction-valued elimination."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    minors, det = [], Fraction(1)
    for k in range(n):
        if a[k][k] == 0:
            # a zero pivot means this leading minor vanishes; later ones need pivoting
            minors.append(Fraction(0))
            minors.extend(_minor_by_det(matrix, j) for j in range(k + 1, n))
            return minors
        det *= a[k][k]
        minors.append(det)
        for i in range(k + 1, n):
            r = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= r * a[k][j]
    return minors


def _minor_by_det(matrix: Sequence[Sequence[Fraction | int]], size: int) -> Fraction:
    a = [[Fraction(matrix[i][j]) for j in range(size)] for i in range(size)]
    det = Fraction(1)
    for k in range(size):
        p = next((i for i in range(k, size) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, size):
            r = a[i][k] / a[k][k]
            for j in range(k, size):
                a[i][j] -= r * a[k][j]
    return det


def is_positive_definite(matrix: Sequence[Sequence[Fraction | int]]) -> bool:
    return all(m > 0 for m in leading_minors(matrix))


def _self_check(d: RootSystemData) -> None:
    c, n = d.cartan, d.rank
    for i in range(n):
        assert c[i][i] == 2, d.lie_type
        for j in range(n):
            if i != j:
                assert c[i][j] <= 0 and (c[i][j] == 0) == (c[j][i] == 0), d.lie_type
    g = d.gram
    assert all(g[i][j] == g[j][i] for i in range(n) for j in range(n)), d.lie_type
    assert is_positive_definite(c), d.lie_type
    for f, ns in zip(d.coweight_factor, d.norm_squared):
        assert f in (1, 2, 3) and Fraction(2) / ns == f, d.lie_type
    assert d.simply_laced == d.lie_type.simply_laced, d.lie_type
    # the highest root is the unique dominant long root
    theta = d.marks
    assert sum(theta[i] * g[i][j] * theta[j] for i in range(n) for j in range(n)) == 2, d.lie_type
    assert all(sum(theta[i] * g[i][j] for i in range(n)) >= 0 for j in range(n)), d.lie_type


@lru_cache(maxsize=None)
def root_system_data(t: LieType | str) -> RootSystemData:
    if isinstance(t, str):
        t = LieType.parse(t)
    edges, norms, marks = _dynkin(t)
    n = t.rank
    gram = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = norms[i]
    for i, j in edges:
        # long roots have norm 2, so a bond always pairs to minus half the longer norm
        gram[i][j] = gram[j][i] = -max(norms[i], norms[j]) / 2
    cartan = []
    for i in range(n):
        row = [2 * gram[i][j] / norms[i] for j in range(n)]
        assert all(x.denominator == 1 for x in row)
        cartan.append(tuple(int(x) for x in row))
    data = RootSystemData(
        lie_type=t,
        cartan=tuple(cartan),
        norm_squared=tuple(norms),
        coweight_factor=tuple(int(Fraction(2) / x) for x in norms),
        marks=tuple(marks),
    )
    _self_check(data)
    return data


def quadratic_form(data: RootSystemData, n: Sequence[int]) -> Fraction:
    """``(1/2) n G n^t`` with ``G`` the symmetrized Cartan matrix (equal to ``C`` when simply laced)."""
    if len(n) != data.rank:
        raise DimensionMismatch(f"vector of length {len(n)} for a rank {data.rank} algebra")
    g = data.gram
    total = sum(n[i] * g[i][j] * n[j] for i in range(data.rank) for j in range(data.rank))
    return total / 2
