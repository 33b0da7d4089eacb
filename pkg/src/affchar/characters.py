"""Coefficient tables of multi-parameter characters of level-k vacuum modules.

The character ``chi(x_1..x_l; q) = sum_n A(n; q) x^n`` is only ever held as
the table ``n -> A(n; q)``.  The substitution ``x_j -> x_j q^(a_ji)`` that
defines the recurrence becomes, coefficientwise,

    A(n) = A(n - s_i e_i) * q^(-s_i + sum_m a_m(H_i) n_m),   s_i = k * 2/<a_i, a_i>,

where ``a_m(H_i) = 2<a_m, a_i>/<a_i, a_i>`` (``cartan[i][m]`` here).

A table is *complete* when every lattice point it does not store is known to
vanish up to the table order.  Complete tables may also carry an
:class:`ExponentFloor`, a per-point lower bound on the valuation, which is
what makes sums over the whole lattice (specializations) certifiable.
"""

from __future__ import annotations

import heapq
import itertools
import math
from collections.abc import Mapping
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    InputError,
    InsufficientOrder,
    InsufficientSupport,
    MissingSeed,
    NonIntegralExponent,
    NotSimplyLaced,
    OutsideSupport,
)
from .lattice import QuadraticProblem, enumerate_points, iter_points
from .lie import LieType, RootSystemData, quadratic_form, root_system_data
from .qseries import ProductSpec, QSeries, expand_product, scale_exponents, shift
from .report import IdentityReport, first_difference

Point = tuple[int, ...]

_ABSENT = 1 << 60


# -- lattice helpers ----------------------------------------------------------

def integer_gram(data: RootSystemData) -> tuple[tuple[tuple[int, ...], ...], int]:
    """``(m * G, m)`` with ``G`` the symmetrized Cartan matrix and ``m`` the least integer clearing it."""
    g = data.gram
    m = math.lcm(*(x.denominator for row in g for x in row))
    return tuple(tuple(int(x * m) for x in row) for row in g), m


def lattice_problem(data: RootSystemData, max_exponent: int, linear_shift: Sequence[int] | None = None,
                    scale: int = 1) -> QuadraticProblem:
    """``(scale/2) n G n^t + linear_shift . n <= max_exponent`` as an integer problem."""
    mat, m = integer_gram(data)
    lin = None if linear_shift is None else [m * x for x in linear_shift]
    if lin is not None and len(lin) != data.rank:
        raise DimensionMismatch(f"shift of length {len(lin)} for a rank {data.rank} algebra")
    return QuadraticProblem.make(mat, scale, lin, m * max_exponent)


def enumerate_lattice(data: RootSystemData, max_exponent: int,
                      linear_shift: Sequence[int] | None = None) -> list[Point]:
    """Lattice points with exponent at most ``max_exponent``, in lexicographic order.

    Without a shift the exponent is ``quadratic_form(n)``; with one it is the
    principally specialized exponent ``(h/2) n G n^t + shift . n`` where ``h``
    is the Coxeter number ``ht(theta) + 1``.
    """
    if max_exponent < 0:
        return []
    scale = 1 if linear_shift is None else data.coxeter_h
    return enumerate_points(lattice_problem(data, max_exponent, linear_shift, scale))


def recurrence_factor(data: RootSystemData, k: int, n: Sequence[int], i: int) -> tuple[Point, int]:
    """Source point and ``q``-exponent of the recurrence in direction ``i`` (1-based)."""
    if len(n) != data.rank:
        raise DimensionMismatch(f"point of length {len(n)} for a rank {data.rank} algebra")
    if not 1 <= i <= data.rank:
        raise InputError(f"direction {i} out of range 1..{data.rank}")
    j = i - 1
    step = data.coweight_factor[j] * k
    source = tuple(x - step if m == j else x for m, x in enumerate(n))
    exponent = -step + sum(data.coroot_pairing(m, j) * n[m] for m in range(data.rank))
    return source, exponent


def _require_simply_laced(t: LieType, what: str) -> RootSystemData:
    data = root_system_data(t)
    if not data.simply_laced:
        raise NotSimplyLaced(f"{what} is only available for simply-laced types, not {t}")
    return data


# -- tables -------------------------------------------------------------------

@dataclass(frozen=True)
class ExponentFloor:
    """``A(n)`` lies in ``q^v Z[[q]]`` with ``v = n G n^t/(2k) + offsets[n mod k]``.

    A residue mapped to ``None`` vanishes identically.
    """

    level: int
    offsets: tuple[tuple[Point, Fraction | None], ...]

    def value(self, data: RootSystemData, n: Sequence[int]) -> Fraction | None:
        off = dict(self.offsets)[tuple(x % self.level for x in n)]
        if off is None:
            return None
        return quadratic_form(data, n) / self.level + off

    def min_offset(self) -> Fraction | None:
        vals = [o for _, o in self.offsets if o is not None]
        return min(vals) if vals else None

    def to_json(self) -> list[dict]:
        return [{"residue": list(r), "offset": None if o is None else str(o)} for r, o in self.offsets]

    @classmethod
    def from_json(cls, level: int, obj: list[dict]) -> ExponentFloor:
        return cls(level, tuple(
            (tuple(int(x) for x in d["residue"]), None if d["offset"] is None else Fraction(d["offset"]))
            for d in obj
        ))


class ThetaEntries(Mapping):
    """Lazy entries ``n -> q^(Q(n)) * base`` for ``Q(n) <= order - val(base)``, truncated at ``order``."""

    def __init__(self, data: RootSystemData, base: QSeries, order: int):
        if base.is_zero():
            raise InputError("theta table needs a nonzero base series")
        self.data = data
        self.base = base
        self.order = order
        self.bound = order - base.low
        mat, m = integer_gram(data)
        if m != 1:
            raise NotSimplyLaced("theta tables need an integral quadratic form")
        self.problem = QuadraticProblem.make(mat, 1, None, self.bound)
        self._len: int | None = None

    def _q(self, n: Sequence[int]) -> int:
        return int(quadratic_form(self.data, n))

    def __getitem__(self, n: Point) -> QSeries:
        q = self._q(n)
        if q > self.bound:
            raise KeyError(n)
        return shift(self.base, q).truncate(self.order)

    def __contains__(self, n: object) -> bool:
        try:
            return len(n) == self.data.rank and self._q(n) <= self.bound  # type: ignore[arg-type]
        except TypeError:
            return False

    def __iter__(self) -> Iterator[Point]:
        for pts, _ in self.chunks():
            yield from map(tuple, pts.tolist())

    def __len__(self) -> int:
        if self._len is None:
            self._len = sum(len(p) for p, _ in self.chunks())
        return self._len

    def chunks(self) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        return iter_points(self.problem)


class OverlayEntries(Mapping):
    """``base`` with some entries replaced or added."""

    def __init__(self, base: Mapping, overrides: Mapping[Point, QSeries]):
        self.base = base
        self.overrides = dict(overrides)

    def __getitem__(self, n: Point) -> QSeries:
        if n in self.overrides:
            return self.overrides[n]
        return self.base[n]

    def __contains__(self, n: object) -> bool:
        return n in self.overrides or n in self.base

    def __iter__(self) -> Iterator[Point]:
        extra = sorted(n for n in self.overrides if n not in self.base)
        return heapq.merge(iter(self.base), extra)

    def __len__(self) -> int:
        return len(self.base) + sum(1 for n in self.overrides if n not in self.base)


@dataclass(frozen=True)
class CharacterTable:
    lie_type: LieType
    level: int
    order: int
    entries: Mapping[Point, QSeries]
    mu: Fraction = Fraction(0)
    complete: bool = False
    floor: ExponentFloor | None = field(default=None, compare=False)

    @property
    def data(self) -> RootSystemData:
        return root_system_data(self.lie_type)

    @property
    def support_policy(self) -> str:
        if self.complete:
            return "complete: stored points are those whose minimal exponent is <= order; all others vanish to order"
        return "explicit: only stored points are known"

    def in_support(self, n: Point) -> bool:
        return self.complete or n in self.entries

    def __getitem__(self, n: Sequence[int]) -> QSeries:
        n = tuple(int(x) for x in n)
        if len(n) != self.lie_type.rank:
            raise DimensionMismatch(f"point of length {len(n)} for a rank {self.lie_type.rank} table")
        if n in self.entries:
            return self.entries[n]
        if self.complete:
            return QSeries.zero(self.order)
        raise OutsideSupport(f"no information about A{n} in this table")

    def points(self) -> Iterator[Point]:
        """Stored lattice points in lexicographic order."""
        if isinstance(self.entries, (ThetaEntries, OverlayEntries)):
            return iter(self.entries)
        return iter(sorted(self.entries))

    def with_entry(self, n: Sequence[int], series: QSeries) -> CharacterTable:
        """A copy with one entry replaced; used for fault injection and hand edits."""
        n = tuple(int(x) for x in n)
        if isinstance(self.entries, OverlayEntries):
            entries = OverlayEntries(self.entries.base, {**self.entries.overrides, n: series})
        else:
            entries = OverlayEntries(self.entries, {n: series})
        return replace(self, entries=entries)

    def materialize(self) -> CharacterTable:
        return replace(self, entries={n: self.entries[n] for n in self.points()})

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "type": str(self.lie_type),
            "level": self.level,
            "order": self.order,
            "mu": str(self.mu),
            "complete": self.complete,
        }
        if self.floor is not None:
            out["floor"] = self.floor.to_json()
        out["entries"] = [{"n": list(n), "series": self.entries[n].to_json()} for n in self.points()]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> CharacterTable:
        try:
            t = LieType.parse(obj["type"])
            level = int(obj["level"])
            order = int(obj["order"])
            mu = Fraction(obj.get("mu", "0"))
            entries = {}
            for item in obj["entries"]:
                n = tuple(int(x) for x in item["n"])
                if len(n) != t.rank:
                    raise DimensionMismatch(f"entry {n} has wrong length for {t}")
                if n in entries:
                    raise InputError(f"duplicate entry {n}")
                entries[n] = QSeries.from_json(item["series"])
            complete = bool(obj.get("complete", False))
            floor = ExponentFloor.from_json(level, obj["floor"]) if "floor" in obj else None
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed character table JSON: {exc}") from exc
        if level < 1:
            raise InputError("level must be >= 1")
        short = [n for n, s in entries.items() if s.order < order]
        if short:
            raise InsufficientOrder(f"entry {short[0]} is known only to order {entries[short[0]].order} < {order}")
        if floor is not None and not complete:
            raise InputError("an exponent floor only makes sense for a complete table")
        return cls(t, level, order, entries, mu, complete, floor)


# -- constructions ------------------------------------------------------------

def euler_inverse_power(rank: int, order: int) -> QSeries:
    """``prod_j (1 - q^j)^(-rank)``, the vacuum coefficient ``A(0)`` at level 1."""
    return expand_product(ProductSpec.of((1, 0, -rank)), order)


def closed_form_level1(t: LieType | str, order: int) -> CharacterTable:
    """Level-1 table ``A(n) = q^(n C n^t / 2) prod_j (1 - q^j)^(-l)`` (simply-laced only)."""
    if isinstance(t, str):
        t = LieType.parse(t)
    data = _require_simply_laced(t, "the level-1 closed form")
    if order < 0:
        raise InputError(f"order must be >= 0, got {order}")
    base = euler_inverse_power(data.rank, order)
    zero = (0,) * data.rank
    return CharacterTable(
        t, 1, order, ThetaEntries(data, base, order), Fraction(0), True,
        ExponentFloor(1, ((zero, Fraction(base.low)),)),
    )


def seed_box(rank: int, k: int) -> list[Point]:
    return list(itertools.product(range(k), repeat=rank))


def propagation_exponent(data: RootSystemData, k: int, n: Sequence[int],
                         coordinate_order: Sequence[int] | None = None) -> tuple[Point, int]:
    """Walk ``n`` into the seed box ``{0..k-1}^l`` one recurrence step at a time.

    Returns the box point ``r`` and the exponent ``d`` with ``A(n) = q^d A(r)``.
    Coordinates are moved in ``coordinate_order`` (0-based, default natural).
    """
    cur = list(n)
    d = 0
    for j in coordinate_order if coordinate_order is not None else range(data.rank):
        while cur[j] >= k:
            _, e = recurrence_factor(data, k, cur, j + 1)
            d += e
            cur[j] -= k
        while cur[j] < 0:
            cur[j] += k
            # A(cur + k e_j) = q^e A(cur), so going down costs -e
            _, e = recurrence_factor(data, k, cur, j + 1)
            d -= e
    return tuple(cur), d


def propagate_from_initial(t: LieType | str, k: int, seeds: Mapping[Sequence[int], QSeries],
                           order: int) -> CharacterTable:
    """Extend the ``k^l`` seed series on ``{0..k-1}^l`` to the full table by the recurrence."""
    if isinstance(t, str):
        t = LieType.parse(t)
    data = _require_simply_laced(t, "seed propagation")
    if k < 1:
        raise InputError(f"level must be >= 1, got {k}")
    box = seed_box(data.rank, k)
    given = {tuple(int(x) for x in n): s for n, s in seeds.items()}
    missing = [r for r in box if r not in given]
    if missing:
        raise MissingSeed(f"no seed for box point {missing[0]} ({len(missing)} missing)")
    extra = [n for n in given if n not in set(box)]
    if extra:
        raise InputError(f"seed {extra[0]} lies outside the box {{0..{k - 1}}}^{data.rank}")

    offsets = {}
    for r in box:
        s = given[r]
        offsets[r] = None if s.is_zero() else Fraction(s.low) - quadratic_form(data, r) / k
    floor = ExponentFloor(k, tuple(sorted(offsets.items())))
    live = [o for o in offsets.values() if o is not None]
    entries: dict[Point, QSeries] = {}
    if live:
        # v(n) <= order  <=>  n C n^t / 2 <= k (order - offset)
        radius = math.floor(k * (order - min(live)))
        for n in enumerate_lattice(data, radius):
            r, d = propagation_exponent(data, k, n)
            off = offsets[r]
            if off is None or quadratic_form(data, n) / k + off > order:
                continue
            seed = given[r]
            if seed.order + d < order:
                raise InsufficientOrder(
                    f"seed at {r} is known to order {seed.order}; reaching A{n} to order {order} "
                    f"needs it to order {order - d}"
                )
            entries[n] = shift(seed, d).truncate(order)
    return CharacterTable(t, k, order, entries, Fraction(0), True, floor)


# -- verification -------------------------------------------------------------

def _orient(lhs_n: QSeries, rhs_src: QSeries, e: int) -> tuple[QSeries, QSeries, str]:
    # state the relation so that both sides are known at least to the table order
    if e >= 0:
        return lhs_n, shift(rhs_src, e), "A(n) = q^e A(src)"
    return rhs_src, shift(lhs_n, -e), "A(src) = q^-e A(n)"


def verify_recurrence(table: CharacterTable, order: int | None = None) -> IdentityReport:
    """Check ``A(n) = q^e A(n - s_i e_i)`` for every direction and every testable stored pair."""
    order = table.order if order is None else order
    if order > table.order:
        raise InsufficientOrder(f"table is known to order {table.order}, asked to check {order}")
    if isinstance(table.entries, ThetaEntries) and table.level == 1:
        return _verify_theta(table, table.entries, order)
    return _verify_generic(table, order)


def _verify_generic(table: CharacterTable, order: int) -> IdentityReport:
    data, k = table.data, table.level
    stored = list(table.points())
    steps = [c * k for c in data.coweight_factor]
    if table.complete:
        cand = set(stored)
        for n in stored:
            for j, s in enumerate(steps):
                cand.add(n[:j] + (n[j] + s,) + n[j + 1:])
        candidates = sorted(cand)
    else:
        candidates = stored
    pairs = 0
    for n in candidates:
        for i in range(1, data.rank + 1):
            src, e = recurrence_factor(data, k, n, i)
            have_n, have_src = n in table.entries, src in table.entries
            if table.complete:
                if not (have_n or have_src):
                    continue
            elif not (have_n and have_src):
                continue
            pairs += 1
            lhs, rhs, relation = _orient(table[n], table[src], e)
            diff = first_difference(lhs, rhs, order)
            if diff is not None:
                return _failure(order, n, i, src, e, relation, diff)
    if pairs == 0:
        raise InsufficientSupport("no lattice pair inside the table support to test")
    return IdentityReport(order, True, timing_note=f"{pairs} pairs checked")


def _failure(order: int, n: Point, i: int, src: Point, e: int, relation: str,
             diff: tuple[int, int, int]) -> IdentityReport:
    exp, a, b = diff
    return IdentityReport(order, False, exp, a, b, detail={
        "point": list(n), "direction": i, "source": list(src), "exponent": e, "relation": relation,
    })


def _verify_theta(table: CharacterTable, entries: ThetaEntries, order: int) -> IdentityReport:
    """Vectorized check for lazy level-1 closed-form tables.

    Entries are ``q^(Q(n)) * base`` (zero when ``Q(n)`` exceeds the bound), so
    two sides of a relation agree to ``order`` iff their valuations agree or
    both exceed ``order``; a disagreement shows first at the smaller valuation.
    ``Q`` at the neighbours ``p +- e_j`` is obtained from ``Q(p)`` and ``(Cp)_j``
    by polarization.  Small tables are cross-checked against the explicit path
    in the test suite.
    """
    data = entries.data
    rank = data.rank
    cart = np.asarray(data.cartan, dtype=np.float64)
    assert (cart == cart.T).all()
    bound, v0, lead = entries.bound, entries.base.low, entries.base.coeffs[0]
    best: tuple | None = None
    pairs = 0
    for pts, twice in entries.chunks():
        q_p = twice // 2
        # row-wise (C p): the coroot pairings sum_m a_m(H_j) p_m for every j
        cp = np.rint(pts.astype(np.float64) @ cart.T).astype(np.int64)
        for j in range(rank):
            g = cp[:, j]
            half_diag = data.cartan[j][j] // 2
            # pair (p, p - e_j) for every stored p; pair (p + e_j, p) when p + e_j is not stored
            q_up = q_p + g + half_diag
            fresh = q_up > bound
            for shift_n, q_n, q_src, e, mask in (
                (0, q_p, q_p - g + half_diag, g - 1, None),
                (1, q_up, q_p, g + data.cartan[j][j] - 1, fresh),
            ):
                val_n = np.where(q_n <= bound, q_n + v0, _ABSENT)
                val_src = np.where(q_src <= bound, q_src + v0, _ABSENT)
                fwd = e >= 0
                x = np.where(fwd, val_n, val_src)
                y = np.where(fwd, val_src + e, val_n - e)
                bad = (x != y) & (np.minimum(x, y) <= order)
                if mask is None:
                    pairs += len(pts)
                else:
                    bad &= mask
                    pairs += int(mask.sum())
                if not bad.any():
                    continue
                rows = np.nonzero(bad)[0]
                cand = pts[rows].copy()
                cand[:, j] += shift_n
                pick = np.lexsort(cand.T[::-1])[0]
                r = rows[pick]
                n = tuple(int(v) for v in cand[pick])
                key = (n, j + 1)
                if best is None or key < best[0]:
                    xs, ys = int(x[r]), int(y[r])
                    exp = min(xs, ys)
                    src = n[:j] + (n[j] - 1,) + n[j + 1:]
                    relation = "A(n) = q^e A(src)" if fwd[r] else "A(src) = q^-e A(n)"
                    diff = (exp, lead if xs == exp else 0, lead if ys == exp else 0)
                    best = (key, src, int(e[r]), relation, diff)
    if pairs == 0:
        raise InsufficientSupport("no lattice pair inside the table support to test")
    if best is None:
        return IdentityReport(order, True, timing_note=f"{pairs} pairs checked")
    (n, i), src, e, relation, diff = best
    return _failure(order, n, i, src, e, relation, diff)


# -- specializations ----------------------------------------------------------

def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise NonIntegralExponent(f"{what} = {x} is not an integer")
    return int(x)


def homogeneous_character(table: CharacterTable) -> QSeries:
    """``q^(-mu) * sum_n A(n; q)``."""
    if not table.complete:
        raise InsufficientSupport("homogeneous character needs a complete table")
    acc = QSeries.zero(table.order)
    for n in table.points():
        acc = acc + table.entries[n]
    return shift(acc, -_integral(table.mu, "mu"))


def principal_certified_order(table: CharacterTable) -> int:
    """Largest ``M`` such that ``sum_n A(n; q^h) q^(-sum n)`` is determined to ``q^M``."""
    if not table.complete or table.floor is None:
        raise InsufficientSupport("principal specialization needs a complete table with an exponent floor")
    data, k, h = table.data, table.level, table.data.coxeter_h
    cap = None
    for n in table.points():
        c = h * table.entries[n].order - sum(n)
        cap = c if cap is None else min(cap, c)
    if cap is None:
        cap = h * table.order
    lo = table.floor.min_offset()
    if lo is None:
        return cap
    # absent points contribute from q^(h*ceil(v(n)) - sum n) on; v(n) = nGn/(2k) + offset
    # k * ((h/(2k)) nGn - sum n) <= k * (cap + 1 - h * lo) covers every point that could lower cap
    bound = math.floor(k * (cap + 1 - h * lo))
    prob = lattice_problem(data, bound, [-k] * data.rank, h)
    for pts, _ in iter_points(prob):
        for n in map(tuple, pts.tolist()):
            if n in table.entries:
                continue
            v = table.floor.value(data, n)
            if v is None:
                continue
            if v <= table.order:
                raise InsufficientSupport(f"A{n} should be stored (valuation bound {v} <= {table.order})")
            cap = min(cap, h * math.ceil(v) - sum(n) - 1)
    return cap


def principal_character(table: CharacterTable) -> QSeries:
    """``q^(-h mu) * sum_n A(n; q^h) q^(-sum n)`` with ``h = ht(theta) + 1``, to its certified order."""
    h = table.data.coxeter_h
    certified = principal_certified_order(table)
    acc: dict[int, int] = {}
    for n in table.points():
        term = shift(scale_exponents(table.entries[n], h), -sum(n))
        for e, c in term.terms():
            if e <= certified:
                acc[e] = acc.get(e, 0) + c
    mu_shift = -_integral(h * table.mu, "h * mu")
    if not acc:
        return QSeries.zero(certified + mu_shift)
    low = min(acc)
    coeffs = [acc.get(e, 0) for e in range(low, max(acc) + 1)]
    return QSeries(low + mu_shift, tuple(coeffs), certified + mu_shift)
