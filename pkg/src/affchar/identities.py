"""Product = multisum identities from the principally specialized level-1 character.

Two right-hand sides are in play.  The full multisum of the principal
character carries an Euler-type prefactor,

    prod_j (1 - q^(h j))^(-l) * sum_n q^((h/2) n C n^t - sum n),

while the Macdonald-type identities for ``A_l`` and ``D_l`` equate a product
with the *bare* theta sum (the prefactor moved to the product side).
:func:`multisum_side` builds the former, :func:`theta_series` the latter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .characters import (
    _require_simply_laced,
    closed_form_level1,
    lattice_problem,
    principal_certified_order,
    principal_character,
)
from .errors import InputError, InvalidRank, NonIntegralExponent, NotPositiveDefinite
from .lattice import QuadraticProblem, iter_points
from .lie import LieType, is_positive_definite
from .qseries import ProductSpec, QSeries, expand_product, mul
from .report import IdentityReport, compare_series

DEFAULT_ORDER = 200


@dataclass(frozen=True)
class ThetaSpec:
    """``sum_n q^((scale/2) n M n^t + shift . n)``."""

    matrix: tuple[tuple[int, ...], ...]
    scale: int
    shift: tuple[int, ...]

    @classmethod
    def make(cls, matrix: Sequence[Sequence[int]], scale: int, shift: Sequence[int]) -> ThetaSpec:
        m = tuple(tuple(int(x) for x in row) for row in matrix)
        if any(len(row) != len(m) for row in m) or len(shift) != len(m):
            raise InputError("theta matrix must be square and match the shift length")
        sym = [[(m[i][j] + m[j][i]) / 2 for j in range(len(m))] for i in range(len(m))]
        if scale < 1 or not is_positive_definite(sym):
            raise NotPositiveDefinite("theta form must be positive definite with positive scale")
        return cls(m, int(scale), tuple(int(x) for x in shift))

    def to_json(self) -> dict:
        return {"matrix": [list(r) for r in self.matrix], "scale": self.scale, "shift": list(self.shift)}


def _series_from_problem(prob: QuadraticProblem, order: int) -> QSeries:
    counts: dict[int, int] = {}
    for _, twice in iter_points(prob):
        if (twice % 2).any():
            raise NonIntegralExponent("theta exponent takes half-integral values")
        vals, cnt = np.unique(twice // 2, return_counts=True)
        for v, c in zip(vals.tolist(), cnt.tolist()):
            counts[v] = counts.get(v, 0) + c
    if not counts:
        return QSeries.zero(order)
    low = min(counts)
    return QSeries(low, tuple(counts.get(e, 0) for e in range(low, order + 1)), order)


def theta_series(spec: ThetaSpec, order: int) -> QSeries:
    """Expand the theta sum up to ``q^order``."""
    prob = QuadraticProblem.make(spec.matrix, spec.scale, spec.shift, order)
    return _series_from_problem(prob, order)


def principal_theta(t: LieType | str, order: int) -> QSeries:
    """Bare theta sum ``sum_n q^((h/2) n C n^t - sum n)`` of a simply-laced type."""
    if isinstance(t, str):
        t = LieType.parse(t)
    data = _require_simply_laced(t, "the principal multisum")
    prob = lattice_problem(data, order, [-1] * data.rank, data.coxeter_h)
    return _series_from_problem(prob, order)


def multisum_side(t: LieType | str, order: int) -> QSeries:
    """Principal character of the level-1 vacuum module in multisum form, to ``q^order``."""
    if isinstance(t, str):
        t = LieType.parse(t)
    data = _require_simply_laced(t, "the principal multisum")
    prefactor = expand_product(ProductSpec.of((data.coxeter_h, 0, -data.rank)), order)
    return mul(prefactor, principal_theta(t, order))


def macdonald_product_a(rank: int) -> ProductSpec:
    """``prod_j (1 - q^((l+1) j))^(l+1) / (1 - q^j)``."""
    if rank < 1:
        raise InvalidRank(f"A-type rank must be >= 1, got {rank}")
    return ProductSpec.of((rank + 1, 0, rank + 1), (1, 0, -1))


def macdonald_product_d(rank: int) -> ProductSpec:
    """``prod_j (1 - q^(2(l-1) j))^l / ((1 - q^(2j-1)) (1 - q^((l-1)(2j-1))))``."""
    if rank < 3:
        raise InvalidRank(f"D-type rank must be >= 3, got {rank}")
    m = rank - 1
    return ProductSpec.of((2 * m, 0, rank), (2, -1, -1), (2 * m, -m, -1))


def builtin_product(family: str, rank: int) -> ProductSpec:
    if family == "A":
        return macdonald_product_a(rank)
    if family == "D":
        return macdonald_product_d(rank)
    raise InputError(f"no builtin product side for family {family!r}")


def _note(order: int) -> str:
    return f"{order + 1} coefficients compared"


def verify_identity(lhs: ProductSpec, t: LieType | str, order: int = DEFAULT_ORDER) -> IdentityReport:
    """Compare a product with the bare principal theta sum of ``t`` up to ``q^order``."""
    if order < 0:
        raise InputError(f"order must be >= 0, got {order}")
    if isinstance(t, str):
        t = LieType.parse(t)
    rhs = principal_theta(t, order)
    left = expand_product(lhs, order)
    return compare_series(left, rhs, order, note=_note(order),
                          detail={"lhs": lhs.to_json(), "rhs": f"bare principal theta sum of {t}"})


def verify_level1_identity(lhs: ProductSpec, t: LieType | str, order: int = DEFAULT_ORDER) -> IdentityReport:
    """Compare a product with the full multisum (prefactor included) of ``t``."""
    if order < 0:
        raise InputError(f"order must be >= 0, got {order}")
    if isinstance(t, str):
        t = LieType.parse(t)
    rhs = multisum_side(t, order)
    left = expand_product(lhs, order)
    return compare_series(left, rhs, order, note=_note(order),
                          detail={"lhs": lhs.to_json(), "rhs": f"principal multisum of {t}"})


def verify_user_identity(lhs: ProductSpec, rhs: ThetaSpec, order: int = DEFAULT_ORDER) -> IdentityReport:
    """Compare a product with a user-supplied theta sum."""
    if order < 0:
        raise InputError(f"order must be >= 0, got {order}")
    right = theta_series(rhs, order)
    left = expand_product(lhs, order)
    return compare_series(left, right, order, note=_note(order),
                          detail={"lhs": lhs.to_json(), "rhs": rhs.to_json()})


def level1_table_order(t: LieType | str, order: int) -> int:
    """Smallest table order whose principal specialization is certified to ``q^order``."""
    if isinstance(t, str):
        t = LieType.parse(t)
    h = _require_simply_laced(t, "the principal specialization").coxeter_h
    n = max(0, order // h)
    while True:
        if principal_certified_order(closed_form_level1(t, n)) >= order:
            return n
        n += 1


def verify_specialization(t: LieType | str, order: int) -> IdentityReport:
    """Principal specialization of the level-1 table against the multisum, to ``q^order``."""
    if isinstance(t, str):
        t = LieType.parse(t)
    table = closed_form_level1(t, level1_table_order(t, order))
    left = principal_character(table)
    right = multisum_side(t, order)
    return compare_series(left, right, order, note=_note(order), detail={
        "lhs": f"principal specialization of the level-1 table of {t} (table order {table.order})",
        "rhs": f"principal multisum of {t}",
    })
