"""Comparison results shared by the recurrence and identity verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .errors import InsufficientOrder
from .qseries import QSeries


@dataclass(frozen=True)
class IdentityReport:
    order_checked: int
    equal: bool
    first_mismatch_exponent: int | None = None
    lhs_coefficient: int | None = None
    rhs_coefficient: int | None = None
    timing_note: str = ""
    detail: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        assert self.equal == (self.first_mismatch_exponent is None)

    def to_json(self) -> dict:
        def big(x: int | None) -> str | None:
            return None if x is None else str(x)

        return {
            "orderChecked": self.order_checked,
            "equal": self.equal,
            "firstMismatchExponent": self.first_mismatch_exponent,
            "lhsCoefficient": big(self.lhs_coefficient),
            "rhsCoefficient": big(self.rhs_coefficient),
            "timingNote": self.timing_note,
            "detail": self.detail,
        }

    def to_text(self) -> str:
        if self.equal:
            lines = [f"EQUAL to order {self.order_checked}"]
        else:
            lines = [
                f"MISMATCH at q^{self.first_mismatch_exponent} "
                f"(lhs {self.lhs_coefficient}, rhs {self.rhs_coefficient}); "
                f"checked to order {self.order_checked}"
            ]
        for key, value in self.detail.items():
            lines.append(f"  {key}: {value}")
        if self.timing_note:
            lines.append(f"  note: {self.timing_note}")
        return "\n".join(lines)


def first_difference(lhs: QSeries, rhs: QSeries, order: int) -> tuple[int, int, int] | None:
    """``(exponent, lhs_coeff, rhs_coeff)`` of the lowest differing term up to ``order``."""
    if lhs.order < order or rhs.order < order:
        raise InsufficientOrder(f"cannot compare to order {order}: series known to {lhs.order} and {rhs.order}")
    starts = [s.low for s in (lhs, rhs) if not s.is_zero()]
    if not starts:
        return None
    for e in range(min(starts), order + 1):
        a, b = lhs[e], rhs[e]
        if a != b:
            return e, a, b
    return None


def compare_series(lhs: QSeries, rhs: QSeries, order: int | None = None, note: str = "",
                   detail: dict[str, Any] | None = None) -> IdentityReport:
    """Compare two series up to ``order`` (default: the common truncation order)."""
    if order is None:
        order = min(lhs.order, rhs.order)
    diff = first_difference(lhs, rhs, order)
    if diff is None:
        return IdentityReport(order, True, timing_note=note, detail=detail or {})
    e, a, b = diff
    return IdentityReport(order, False, e, a, b, timing_note=note, detail=detail or {})
