"""Truncated Laurent series in one variable with exact integer coefficients.

A :class:`QSeries` stores the coefficients of ``q^low .. q^(low+len-1)`` and a
truncation order ``N``: every exponent ``<= N`` is known (coefficients beyond
the stored block are zero), nothing is claimed above ``N``.  The zero series
to order ``N`` is stored with no coefficients and ``low = N + 1``; with that
convention the product order rule ``min(N_s + low_t, N_t + low_s)`` needs no
special case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import EmptySeries, InputError, InsufficientOrder, InvalidFactor, NotAUnit


@dataclass(frozen=True)
class QSeries:
    low: int
    coeffs: tuple[int, ...]
    order: int

    def __post_init__(self) -> None:
        coeffs = tuple(int(c) for c in self.coeffs)
        low = int(self.low)
        order = int(self.order)
        # drop anything above the truncation order
        if coeffs and low + len(coeffs) - 1 > order:
            coeffs = coeffs[: max(0, order - low + 1)]
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        end = len(coeffs)
        while end > start and coeffs[end - 1] == 0:
            end -= 1
        if start == end:
            coeffs, low = (), order + 1
        else:
            coeffs, low = coeffs[start:end], low + start
        object.__setattr__(self, "low", low)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "order", order)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> QSeries:
        return cls(order + 1, (), order)

    @classmethod
    def one(cls, order: int) -> QSeries:
        return cls.monomial(0, order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coeff: int = 1) -> QSeries:
        return cls(exponent, (coeff,), order)

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int], order: int | None = None, low: int = 0) -> QSeries:
        """Series with ``coeffs[i]`` at ``q^(low+i)``; order defaults to the last given exponent."""
        coeffs = tuple(coeffs)
        if order is None:
            order = low + len(coeffs) - 1
        return cls(low, coeffs, order)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self) -> int | None:
        """Lowest exponent with a nonzero coefficient, or None for the zero series."""
        return self.low if self.coeffs else None

    def __getitem__(self, exponent: int) -> int:
        if exponent > self.order:
            raise InsufficientOrder(f"coefficient of q^{exponent} is unknown (series known to order {self.order})")
        i = exponent - self.low
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def coefficient_list(self, start: int = 0, stop: int | None = None) -> list[int]:
        """Coefficients for exponents ``start..stop`` inclusive (``stop`` defaults to the order)."""
        stop = self.order if stop is None else stop
        return [self[e] for e in range(start, stop + 1)]

    def truncate(self, order: int) -> QSeries:
        if order > self.order:
            raise InputError(f"cannot extend a series known to order {self.order} up to {order}")
        return QSeries(self.low, self.coeffs, order)

    def terms(self) -> Iterable[tuple[int, int]]:
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.low + i, c

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> QSeries:
        return QSeries(self.low, tuple(-c for c in self.coeffs), self.order)

    def __add__(self, other: QSeries) -> QSeries:
        return add(self, other)

    def __sub__(self, other: QSeries) -> QSeries:
        return add(self, -other)

    def __mul__(self, other: QSeries | int) -> QSeries:
        if isinstance(other, int):
            return QSeries(self.low, tuple(other * c for c in self.coeffs), self.order)
        return mul(self, other)

    __rmul__ = __mul__

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"low": self.low, "order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> QSeries:
        try:
            return cls(int(obj["low"]), tuple(int(c) for c in obj["coeffs"]), int(obj["order"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed series JSON: {exc}") from exc

    def __str__(self) -> str:
        parts = []
        for e, c in self.terms():
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' if mono else ''}{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        head = " ".join(parts).lstrip("+ ") if parts else "0"
        if head.startswith("- "):
            head = "-" + head[2:]
        return f"{head} + O(q^{self.order + 1})"


def add(s: QSeries, t: QSeries) -> QSeries:
    order = min(s.order, t.order)
    if s.is_zero():
        return t.truncate(order)
    if t.is_zero():
        return s.truncate(order)
    low = min(s.low, t.low)
    high = min(order, max(s.low + len(s.coeffs), t.low + len(t.coeffs)) - 1)
    if high < low:
        return QSeries.zero(order)
    out = [0] * (high - low + 1)
    for series in (s, t):
        off = series.low - low
        for i, c in enumerate(series.coeffs):
            if off + i < len(out):
                out[off + i] += c
    return QSeries(low, tuple(out), order)


def mul(s: QSeries, t: QSeries) -> QSeries:
    order = min(s.order + t.low, t.order + s.low)
    if s.is_zero() or t.is_zero():
        return QSeries.zero(order)
    low = s.low + t.low
    length = order - low + 1
    if length <= 0:
        return QSeries.zero(order)
    out = [0] * length
    tc = t.coeffs
    for i, a in enumerate(s.coeffs):
        if i >= length:
            break
        if a:
            for j in range(min(len(tc), length - i)):
                out[i + j] += a * tc[j]
    return QSeries(low, tuple(out), order)


def invert(s: QSeries) -> QSeries:
    """Multiplicative inverse; the leading coefficient must be +1 or -1."""
    if s.is_zero():
        raise EmptySeries("cannot invert a series with no known nonzero term")
    lead = s.coeffs[0]
    if lead not in (1, -1):
        raise NotAUnit(f"leading coefficient {lead} is not a unit over the integers")
    rel = s.order - s.low  # relative order of the unit part
    u = list(s.coeffs) + [0] * max(0, rel + 1 - len(s.coeffs))
    inv = [0] * (rel + 1)
    inv[0] = lead
    for m in range(1, rel + 1):
        acc = 0
        for j in range(1, min(m, len(s.coeffs) - 1) + 1):
            acc += u[j] * inv[m - j]
        inv[m] = -lead * acc
    return QSeries(-s.low, tuple(inv), rel - s.low)


def scale_exponents(s: QSeries, h: int) -> QSeries:
    """Substitute ``q -> q^h``."""
    if h < 1:
        raise InputError(f"exponent scale must be >= 1, got {h}")
    if h == 1 or s.is_zero():
        return QSeries(h * s.low, s.coeffs, h * s.order)
    out = [0] * ((len(s.coeffs) - 1) * h + 1)
    for i, c in enumerate(s.coeffs):
        out[i * h] = c
    return QSeries(h * s.low, tuple(out), h * s.order)


def shift(s: QSeries, d: int) -> QSeries:
    """Multiply by ``q^d``."""
    return QSeries(s.low + d, s.coeffs, s.order + d)


@dataclass(frozen=True)
class Factor:
    """``prod_{j>=1} (1 - q^(a*j + b))^e``."""

    a: int
    b: int
    e: int

    def __post_init__(self) -> None:
        if self.a < 1 or self.a + self.b < 1 or self.e == 0:
            raise InvalidFactor(f"invalid product factor (a={self.a}, b={self.b}, e={self.e})")

    def exponents(self, order: int) -> range:
        """The exponents ``a*j + b <= order`` occurring in this factor."""
        return range(self.a + self.b, order + 1, self.a)


@dataclass(frozen=True)
class ProductSpec:
    factors: tuple[Factor, ...] = field(default_factory=tuple)

    @classmethod
    def of(cls, *triples: tuple[int, int, int]) -> ProductSpec:
        return cls(tuple(Factor(*t) for t in triples))

    def to_json(self) -> list[dict]:
        return [{"a": f.a, "b": f.b, "e": f.e} for f in self.factors]

    @classmethod
    def from_json(cls, obj: Sequence[dict]) -> ProductSpec:
        try:
            return cls(tuple(Factor(int(f["a"]), int(f["b"]), int(f["e"])) for f in obj))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidFactor):
                raise
            raise InvalidFactor(f"malformed product JSON: {exc}") from exc

    def triples(self) -> list[tuple[int, int, int]]:
        return [(f.a, f.b, f.e) for f in self.factors]


def _times_binomial(poly: list[int], m: int) -> None:
    # poly <- poly * (1 - q^m), in place, truncated to len(poly)
    for i in range(len(poly) - 1, m - 1, -1):
        poly[i] -= poly[i - m]


def expand_product(spec: ProductSpec, order: int) -> QSeries:
    """Expand ``spec`` up to and including ``q^order``."""
    if order < 0:
        raise InputError(f"order must be >= 0, got {order}")
    num = [1] + [0] * order
    den = [1] + [0] * order
    for f in spec.factors:
        target = num if f.e > 0 else den
        for m in f.exponents(order):
            for _ in range(abs(f.e)):
                _times_binomial(target, m)
    numerator = QSeries(0, tuple(num), order)
    denominator = QSeries(0, tuple(den), order)
    if denominator == QSeries.one(order):
        return numerator
    inv = invert(denominator)
    assert inv.order == order
    return mul(numerator, inv)
