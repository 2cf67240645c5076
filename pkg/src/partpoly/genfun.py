"""Expansion of the two-variable partition generating functions.

Every expander returns a list ``rows`` with ``rows[n]`` the coefficient of
``q**n`` as a :class:`~partpoly.laurent.LaurentPoly` in ``w``.  Results are
cached per family; asking for a shorter truncation reuses a longer one.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from threading import Lock

import numpy as np

from . import _packed
from ._packed import PackedSeries
from .laurent import LaurentPoly, lp_add

__all__ = [
    "Statistic",
    "StatTable",
    "UnsupportedModulus",
    "OutOfScope",
    "expand_rank",
    "expand_crank",
    "expand_spt_crank",
    "expand_orank",
    "expand_unimodal",
    "expand_strongly_unimodal",
    "expand_thook",
    "expand_wagner_crank",
    "expand_parts",
    "tcore_crank_rows",
    "tcore_crank_table",
    "tcore_crank_poly",
    "stanton_beta",
    "stanton_modified",
    "partition_parts_poly",
    "stat_table",
    "TCORE_CRANK_WEIGHTS",
]


class UnsupportedModulus(ValueError):
    pass


class OutOfScope(ValueError):
    pass


class Statistic(str, enum.Enum):
    RANK = "rank"
    CRANK = "crank"
    SPT_CRANK = "spt-crank"
    ORANK = "orank"
    UNIMODAL = "unimodal"
    STRONGLY_UNIMODAL = "strongly-unimodal"
    TCORE_CRANK = "tcore-crank"
    THOOK = "thook"
    WAGNER = "wagner"
    PARTS = "parts"

    @property
    def symmetric(self) -> bool:
        return self in _SYMMETRIC

    @property
    def needs_t(self) -> bool:
        return self in (Statistic.TCORE_CRANK, Statistic.THOOK)


_SYMMETRIC = frozenset({
    Statistic.RANK, Statistic.CRANK, Statistic.SPT_CRANK, Statistic.ORANK,
    Statistic.UNIMODAL, Statistic.STRONGLY_UNIMODAL,
})


@dataclass(frozen=True)
class StatTable:
    """Distribution ``m -> count`` of one statistic over the objects of size ``n``."""

    statistic: Statistic
    n: int
    counts: dict[int, int] = field(hash=False)
    t: int | None = None

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def as_poly(self) -> LaurentPoly:
        return LaurentPoly(self.counts)

    @classmethod
    def from_poly(cls, statistic, n, poly: LaurentPoly, t=None) -> "StatTable":
        return cls(Statistic(statistic), n, dict(poly.items()), t)


_cache: dict[tuple, list[LaurentPoly]] = {}
_cache_lock = Lock()


def _cached(key: tuple, T: int, compute) -> list[LaurentPoly]:
    if T < 0:
        raise ValueError("truncation must be non-negative")
    with _cache_lock:
        hit = _cache.get(key)
    if hit is not None and len(hit) > T:
        return hit[: T + 1]
    rows = compute(T)
    with _cache_lock:
        prev = _cache.get(key)
        if prev is None or len(prev) < len(rows):
            _cache[key] = rows
    return list(rows)


def _zero(T, bits):
    return PackedSeries(T, bits)


def expand_rank(T: int) -> list[LaurentPoly]:
    """Rows of ``sum_k q**(k*k) / ((wq;q)_k (q/w;q)_k)``."""

    def recipe(T, bits):
        total = PackedSeries.one(T, bits)
        term = PackedSeries.one(T, bits)
        k = 1
        while k * k <= T:
            term.shift_q(2 * k - 1)
            term.div_geometric(1, k).div_geometric(-1, k)
            total.add(term)
            k += 1
        return total

    return _cached(("rank",), T, lambda T: _packed.build(T, recipe))


def expand_crank(T: int) -> list[LaurentPoly]:
    """Rows of ``prod_n (1 - q**n) / ((1 - w q**n)(1 - q**n / w))``."""

    # (1 - w) / (q;q)_inf * sum_{n in Z} (-1)^n q^(n(n+1)/2) / (1 - w q^n),
    # with the n < 0 terms rewritten as series in q / w
    def recipe(T, bits):
        total = PackedSeries.one(T, bits)
        m = 1
        while m * (m + 1) // 2 <= T:
            sign = -1 if m % 2 else 1
            tri = m * (m + 1) // 2
            pos = PackedSeries.one(T, bits).shift_q(tri).div_geometric(1, m).mul_binomial(-1, 1, 0)
            neg = PackedSeries.one(T, bits).shift_q(tri).div_geometric(-1, m).mul_binomial(-1, 1, 0)
            neg.rows = [neg._wpow(r, -1) for r in neg.rows]  # (1 - w) / w
            total.add(pos.scale(sign)).add(neg.scale(-sign))
            m += 1
        return total.div_euler()

    return _cached(("crank",), T, lambda T: _packed.build(T, recipe))


def expand_spt_crank(T: int) -> list[LaurentPoly]:
    """Rows of ``sum_{k>=1} q**k (q**(k+1);q)_inf / ((w q**k;q)_inf (q**k/w;q)_inf)``.

    Row 0 is the zero polynomial.
    """

    def recipe(T, bits):
        # tail products built from k = T downwards; factors past q^T are 1
        tail = PackedSeries.one(T, bits)
        total = _zero(T, bits)
        for k in range(T, 0, -1):
            tail.mul_binomial(-1, 0, k + 1)
            tail.div_geometric(1, k).div_geometric(-1, k)
            total.add(tail.copy().shift_q(k))
        return total

    return _cached(("spt-crank",), T, lambda T: _packed.build(T, recipe))


def expand_orank(T: int) -> list[LaurentPoly]:
    """Rows of ``sum_k (-1;q)_k**2 q**k / ((wq;q)_k (q/w;q)_k)``."""

    def recipe(T, bits):
        total = PackedSeries.one(T, bits)
        term = PackedSeries.one(T, bits)
        for k in range(1, T + 1):
            term.shift_q(1)
            term.mul_binomial(1, 0, k - 1).mul_binomial(1, 0, k - 1)
            term.div_geometric(1, k).div_geometric(-1, k)
            total.add(term)
        return total

    return _cached(("orank",), T, lambda T: _packed.build(T, recipe))


def expand_unimodal(T: int) -> list[LaurentPoly]:
    """Rows of ``sum_k q**k / ((wq;q)_k (q/w;q)_k)``."""

    def recipe(T, bits):
        total = PackedSeries.one(T, bits)
        term = PackedSeries.one(T, bits)
        for k in range(1, T + 1):
            term.shift_q(1)
            term.div_geometric(1, k).div_geometric(-1, k)
            total.add(term)
        return total

    return _cached(("unimodal",), T, lambda T: _packed.build(T, recipe))


def expand_strongly_unimodal(T: int) -> list[LaurentPoly]:
    """Rank rows for strongly unimodal sequences.

    Peak ``c``; the parts on each side are distinct and below ``c``, right
    parts weighted ``w`` and left parts ``1/w``::

        1 + sum_{c>=1} q**c (-q/w;q)_{c-1} (-wq;q)_{c-1}
    """

    def recipe(T, bits):
        total = PackedSeries.one(T, bits)
        term = PackedSeries.one(T, bits)
        for c in range(1, T + 1):
            term.shift_q(1)
            if c > 1:
                term.mul_binomial(1, 1, c - 1).mul_binomial(1, -1, c - 1)
            total.add(term)
        return total

    return _cached(("strongly-unimodal",), T, lambda T: _packed.build(T, recipe))


def expand_thook(t: int, T: int) -> list[LaurentPoly]:
    """Rows of Han's product counting ``t``-hooks.

    ``prod_n (1 - q**(t n))**t / ((1 - w**n q**(t n))**t (1 - q**n))``.
    """
    if t < 2:
        raise ValueError("t must be at least 2")

    def recipe(T, bits):
        s = PackedSeries.one(T, bits)
        n = 1
        while t * n <= T:
            for _ in range(t):
                s.div_geometric(n, t * n)
                s.mul_binomial(-1, 0, t * n)
            n += 1
        for n in range(1, T + 1):
            s.div_geometric(0, n)
        return s

    return _cached(("thook", t), T, lambda T: _packed.build(T, recipe))


def expand_wagner_crank(T: int, printed: bool = False) -> list[LaurentPoly]:
    """Rows of the overpartition-pair crank product.

    By default the denominator is ``(1 - w q**n)(1 - q**n / w)``, which at
    ``w = 1`` counts overpartition pairs.  ``printed=True`` uses
    ``(1 - w q**n)(1 + q**n / w)`` instead, where the second factor cancels
    against the numerator and the row sums are overpartition counts.
    """

    def recipe(T, bits):
        s = PackedSeries.one(T, bits)
        for n in range(1, T + 1):
            s.mul_binomial(1, 1, n).mul_binomial(1, -1, n)
            s.div_geometric(1, n)
            if printed:
                s.div_binomial(1, -1, n)
            else:
                s.div_geometric(-1, n)
        return s

    key = ("wagner", "printed" if printed else "sign")
    return _cached(key, T, lambda T: _packed.build(T, recipe))


def expand_parts(T: int) -> list[LaurentPoly]:
    """Rows of ``prod_n 1 / (1 - w q**n)``: ``w`` marks the number of parts."""

    def recipe(T, bits):
        s = PackedSeries.one(T, bits)
        for n in range(1, T + 1):
            s.div_geometric(1, n)
        return s

    return _cached(("parts",), T, lambda T: _packed.build(T, recipe))


def partition_parts_poly(n: int) -> LaurentPoly:
    """``sum_k p_k(n) w**k`` where ``p_k(n)`` counts partitions of ``n`` into ``k`` parts."""
    if n < 1:
        raise ValueError("n must be positive")
    return expand_parts(n)[n]


# ---------------------------------------------------------------------------
# t-core crank


TCORE_CRANK_WEIGHTS = {
    5: (4, 1, 0, 1, 4),
    7: (4, 2, 1, 0, 1, 2, 4),
    11: (4, 9, 5, 3, 1, 0, 1, 3, 5, 9, 4),
}


def _check_tcore_modulus(t: int) -> None:
    if t not in TCORE_CRANK_WEIGHTS:
        raise UnsupportedModulus(f"the t-core crank is defined only for t in 5, 7, 11 (got {t})")


def _coordinate_range(t: int, i: int, budget: int) -> range:
    # integers x with t*x^2 + 2*i*x <= budget
    disc = i * i + t * budget
    if disc < 0:
        return range(0)
    r = math.isqrt(disc)
    lo = -((i + r) // t) - 1
    hi = (r - i) // t + 1
    xs = [x for x in range(lo, hi + 1) if t * x * x + 2 * i * x <= budget]
    return range(xs[0], xs[-1] + 1) if xs else range(0)


def _tcore_counts(t: int, N: int) -> list[list[int]]:
    """``counts[n][r]``: zero-sum vectors of size ``n`` with crank residue ``r``.

    Size is ``t*|v|^2/2 + sum(i*v_i)``; the doubled size is tracked so every
    partial sum is an integer.  Coordinates are added one at a time as a
    dynamic program over (doubled partial size, partial sum, residue).
    """
    weights = TCORE_CRANK_WEIGHTS[t]
    budget2 = 2 * N
    mins = [min(t * x * x + 2 * i * x for x in (-1, 0, 1)) for i in range(t)]
    floor_total = sum(mins)
    ranges = []
    for i in range(t):
        rest = floor_total - mins[i]
        ranges.append(_coordinate_range(t, i, budget2 - rest))
    zmax = sum(max(abs(r.start), abs(r.stop - 1)) for r in ranges)
    d_lo = floor_total
    d_hi = budget2 - floor_total
    nd, nz = d_hi - d_lo + 1, 2 * zmax + 1
    capacity = 1
    for r in ranges:
        capacity *= len(r)
    dtype = np.int64 if capacity < 2**62 else object

    state = np.zeros((nd, nz, t), dtype=dtype)
    state[0 - d_lo, zmax, 0] = 1
    suffix_min = [sum(mins[i:]) for i in range(t + 1)]
    for i in range(t):
        new = np.zeros_like(state)
        for x in ranges[i]:
            dd = t * x * x + 2 * i * x
            dz = x
            src_d0 = max(0, -dd)
            src_d1 = min(nd, nd - dd)
            src_z0 = max(0, -dz)
            src_z1 = min(nz, nz - dz)
            if src_d0 >= src_d1 or src_z0 >= src_z1:
                continue
            block = state[src_d0:src_d1, src_z0:src_z1, :]
            r = (weights[i] * x) % t
            if r:
                block = np.roll(block, r, axis=2)
            new[src_d0 + dd:src_d1 + dd, src_z0 + dz:src_z1 + dz, :] += block
        # drop partial sizes that the remaining coordinates cannot bring back under budget
        cut = budget2 - suffix_min[i + 1] - d_lo + 1
        if cut < nd:
            new[max(cut, 0):, :, :] = 0
        state = new
    out = []
    for n in range(N + 1):
        row = state[2 * n - d_lo, zmax, :]
        out.append([int(c) for c in row])
    return out


_tcore_cache: dict[int, list[list[int]]] = {}


def tcore_crank_rows(t: int, N: int) -> list[list[int]]:
    """Residue counts of the t-core crank for every ``n <= N``."""
    _check_tcore_modulus(t)
    hit = _tcore_cache.get(t)
    if hit is None or len(hit) <= N:
        hit = _tcore_counts(t, N)
        _tcore_cache[t] = hit
    return hit[: N + 1]


def tcore_crank_table(t: int, n: int) -> StatTable:
    """Counts of ``t``-cores of ``n`` per crank residue ``m`` in ``0..t-1``."""
    _check_tcore_modulus(t)
    if n < 0:
        raise ValueError("n must be non-negative")
    row = tcore_crank_rows(t, n)[n]
    return StatTable(Statistic.TCORE_CRANK, n, {m: c for m, c in enumerate(row) if c}, t)


def tcore_crank_poly(t: int, n: int) -> LaurentPoly:
    return tcore_crank_table(t, n).as_poly()


# ---------------------------------------------------------------------------
# Stanton's modified polynomials

_STANTON_SCOPE = {"rank": (5, 7), "crank": (5, 7, 11)}


def stanton_beta(ell: int) -> int:
    num = ell * ell - 1
    if num % 24:
        raise OutOfScope(f"(l^2-1)/24 is not an integer for l={ell}")
    return ell - num // 24


def stanton_modified(kind: str, ell: int, n: int) -> LaurentPoly:
    kind = kind.lower()
    if kind not in _STANTON_SCOPE or ell not in _STANTON_SCOPE[kind]:
        raise OutOfScope(f"no modified {kind} polynomial for l={ell}")
    if n < 0:
        raise ValueError("n must be non-negative")
    N = ell * n + stanton_beta(ell)
    if kind == "rank":
        base = expand_rank(N)[N]
        corr = {N - 2: 1, N - 1: -1, 2 - N: 1, 1 - N: -1}
    else:
        base = expand_crank(N)[N]
        corr = {N - ell: 1, N: -1, ell - N: 1, -N: -1}
    out = base
    for e, c in corr.items():
        out = lp_add(out, LaurentPoly.monomial(e, c))
    return out


# ---------------------------------------------------------------------------

_EXPANDERS = {
    Statistic.RANK: expand_rank,
    Statistic.CRANK: expand_crank,
    Statistic.SPT_CRANK: expand_spt_crank,
    Statistic.ORANK: expand_orank,
    Statistic.UNIMODAL: expand_unimodal,
    Statistic.STRONGLY_UNIMODAL: expand_strongly_unimodal,
    Statistic.WAGNER: expand_wagner_crank,
    Statistic.PARTS: expand_parts,
}


def expand(statistic, T: int, t: int | None = None, printed: bool = False) -> list[LaurentPoly]:
    """Rows ``0..T`` of any family, dispatching on ``statistic``."""
    stat = Statistic(statistic)
    if stat is Statistic.THOOK:
        return expand_thook(_need_t(stat, t), T)
    if stat is Statistic.TCORE_CRANK:
        t = _need_t(stat, t)
        return [LaurentPoly(dict(enumerate(r))) for r in tcore_crank_rows(t, T)]
    if stat is Statistic.WAGNER:
        return expand_wagner_crank(T, printed=printed)
    return _EXPANDERS[stat](T)


def _need_t(stat, t):
    if t is None:
        raise ValueError(f"{stat.value} needs the parameter t")
    return t


def stat_table(statistic, n: int, t: int | None = None) -> StatTable:
    stat = Statistic(statistic)
    if stat is Statistic.TCORE_CRANK:
        return tcore_crank_table(_need_t(stat, t), n)
    return StatTable.from_poly(stat, n, expand(stat, n, t)[n], t)
