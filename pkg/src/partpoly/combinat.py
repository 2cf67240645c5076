"""Brute-force enumeration of partition objects and their statistics.

These routines are deliberately independent of the generating functions in
:mod:`partpoly.genfun`; they exist to check them.  Feasible sizes are small:
partitions up to about 40, vector partitions and unimodal sequences up to
about 25, overpartition pairs up to about 20.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .genfun import StatTable, Statistic, TCORE_CRANK_WEIGHTS, UnsupportedModulus

__all__ = [
    "Partition",
    "Overpartition",
    "NotATCore",
    "enum_partitions",
    "enum_distinct_partitions",
    "enum_overpartitions",
    "rank_of",
    "crank_of",
    "conjugate",
    "hook_lengths",
    "is_tcore",
    "phi2",
    "phi2_inverse",
    "oracle_rank",
    "oracle_crank",
    "oracle_spt_crank",
    "oracle_orank",
    "oracle_unimodal",
    "oracle_thook",
    "oracle_tcore_count",
    "oracle_tcore_crank",
    "spt_of",
    "p_of",
    "pp_of",
    "partition_numbers",
]

Partition = tuple  # non-increasing tuple of positive ints


class NotATCore(ValueError):
    pass


@dataclass(frozen=True)
class Overpartition:
    parts: tuple[int, ...]
    overlined: frozenset[int]  # part values whose first occurrence is overlined

    @property
    def size(self) -> int:
        return sum(self.parts)


def enum_partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield each partition of ``n`` once, parts non-increasing."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    # iterative to avoid deep recursion on 1+1+...+1
    stack = [((), n, min(n, largest))]
    while stack:
        prefix, rest, cap = stack.pop()
        if rest == 0:
            yield prefix
            continue
        for k in range(1, min(rest, cap) + 1):
            stack.append((prefix + (k,), rest - k, k))


def enum_distinct_partitions(
    n: int, smallest: int = 1, largest: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` into distinct parts in ``[smallest, largest]``."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), smallest - 1, -1):
        # the remaining parts are distinct and below k
        if k * (k + 1) // 2 - smallest * (smallest - 1) // 2 < n:
            break
        for rest in enum_distinct_partitions(n - k, smallest, k - 1):
            yield (k,) + rest


def enum_overpartitions(n: int) -> Iterator[Overpartition]:
    for p in enum_partitions(n):
        values = sorted(set(p), reverse=True)
        for marks in product((False, True), repeat=len(values)):
            yield Overpartition(p, frozenset(v for v, m in zip(values, marks) if m))


def rank_of(parts: Sequence[int]) -> int:
    if not parts:
        return 0
    return parts[0] - len(parts)


def crank_of(parts: Sequence[int]) -> int:
    if not parts:
        raise ValueError("the crank of the empty partition is undefined")
    ones = parts.count(1) if isinstance(parts, (list, tuple)) else list(parts).count(1)
    if ones == 0:
        return parts[0]
    mu = sum(1 for x in parts if x > ones)
    return mu - ones


def conjugate(parts: Sequence[int]) -> tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for x in parts if x > j) for j in range(parts[0]))


def hook_lengths(parts: Sequence[int]) -> list[int]:
    conj = conjugate(parts)
    return [
        (parts[k] - j) + (conj[j] - k) - 1
        for k in range(len(parts))
        for j in range(parts[k])
    ]


def is_tcore(parts: Sequence[int], t: int) -> bool:
    return all(h % t for h in hook_lengths(parts))


def _bead_positions(parts: Sequence[int], pad: int) -> set[int]:
    # positions lambda_j - j for j = 1..len+pad (the rest of the vacuum is implied)
    return {(parts[j] if j < len(parts) else 0) - (j + 1) for j in range(len(parts) + pad)}


def phi2(parts: Sequence[int], t: int) -> tuple[int, ...]:
    """Map a ``t``-core to its zero-sum vector via the balanced abacus.

    Runner ``i`` carries the positions ``lambda_j - j`` congruent to ``i``
    mod ``t``; ``n_i`` is the signed displacement of its bead column from
    the empty partition's.
    """
    if not is_tcore(parts, t):
        raise NotATCore(f"{tuple(parts)} is not a {t}-core")
    pad = t + 1
    beads = _bead_positions(parts, pad)
    lowest = -(len(parts) + pad)
    top = parts[0] if parts else 0
    vec = [0] * t
    for p in range(lowest + 1, top):
        if p >= 0 and p in beads:
            vec[p % t] += 1
        elif p < 0 and p not in beads:
            vec[p % t] -= 1
    return tuple(vec)


def phi2_inverse(vec: Sequence[int], t: int) -> tuple[int, ...]:
    if len(vec) != t or sum(vec) != 0:
        raise ValueError("expected a zero-sum vector of length t")
    depth = max(map(abs, vec)) + 1
    # runner i holds i + t*k for k < n_i; below -t*depth every position is a bead
    beads = sorted(
        (i + t * k for i, ni in enumerate(vec) for k in range(-depth, ni)),
        reverse=True,
    )
    parts = []
    for j, p in enumerate(beads, start=1):
        if p + j <= 0:
            break
        parts.append(p + j)
    return tuple(parts)


# ---------------------------------------------------------------------------
# oracles


def _table(stat, n, counter, t=None) -> StatTable:
    return StatTable(Statistic(stat), n, {m: c for m, c in counter.items() if c}, t)


def oracle_rank(n: int) -> StatTable:
    return _table(Statistic.RANK, n, Counter(rank_of(p) for p in enum_partitions(n)))


def oracle_crank(n: int) -> StatTable:
    if n < 1:
        raise ValueError("the crank is defined combinatorially only for n >= 1")
    return _table(Statistic.CRANK, n, Counter(crank_of(p) for p in enum_partitions(n)))


@lru_cache(maxsize=None)
def _shapes(N: int, distinct: bool) -> tuple[tuple[int, int, int, int], ...]:
    """``(size, length, smallest, largest)`` for every partition of size ``<= N``."""
    gen = enum_distinct_partitions if distinct else enum_partitions
    return tuple(
        (size, len(p), p[-1] if p else 0, p[0] if p else 0)
        for size in range(N + 1)
        for p in gen(size)
    )


@lru_cache(maxsize=None)
def _by_size_and_length(N: int, low: int, high: int, distinct: bool = False):
    """``table[size][length]`` for partitions with all parts in ``[low, high]``."""
    table = [[0] * (N + 1) for _ in range(N + 1)]
    for size, length, smallest, largest in _shapes(N, distinct):
        if length == 0 or (smallest >= low and largest <= high):
            table[size][length] += 1
    return table


def oracle_spt_crank(n: int) -> StatTable:
    """Signed crank counts over vector partitions of ``n`` in the set S.

    ``pi1`` ranges over distinct-part partitions with smallest part ``s``;
    ``pi2`` and ``pi3`` range over partitions with parts ``>= s``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    out = Counter()
    for size1 in range(1, n + 1):
        for pi1 in enum_distinct_partitions(size1):
            s = pi1[-1]
            sign = -1 if (len(pi1) - 1) % 2 else 1
            rest = n - size1
            tab = _by_size_and_length(n, s, n)
            for size2 in range(rest + 1):
                row2, row3 = tab[size2], tab[rest - size2]
                for l2, c2 in enumerate(row2):
                    if not c2:
                        continue
                    for l3, c3 in enumerate(row3):
                        if c3:
                            out[l2 - l3] += sign * c2 * c3
    return _table(Statistic.SPT_CRANK, n, out)


def _orank(lam: Overpartition, mu: Overpartition) -> int:
    largest = max(lam.parts[:1] + mu.parts[:1], default=0)
    # chi: the largest part is not in lambda and is non-overlined in mu
    chi = int(
        largest > 0
        and largest not in lam.parts
        and largest in mu.parts
        and largest not in mu.overlined
    )
    return largest - len(lam.parts) - len(mu.overlined) - chi


def oracle_orank(n: int) -> StatTable:
    if n < 0:
        raise ValueError("n must be non-negative")
    out = Counter()
    over = [list(enum_overpartitions(k)) for k in range(n + 1)]
    for k in range(n + 1):
        for lam in over[k]:
            for mu in over[n - k]:
                out[_orank(lam, mu)] += 1
    return _table(Statistic.ORANK, n, out)


def oracle_unimodal(n: int, strict: bool = False) -> StatTable:
    """Rank counts of (strongly) unimodal sequences of size ``n``.

    A weakly unimodal sequence is a peak ``c`` with a multiset of parts
    ``<= c`` on each side; the peak position is part of the data, so
    repeated maxima give distinct sequences.  In the strict case the side
    parts are distinct and ``< c``.  Rank is right count minus left count.
    """
    stat = Statistic.STRONGLY_UNIMODAL if strict else Statistic.UNIMODAL
    if n == 0:
        return _table(stat, 0, Counter({0: 1}))
    out = Counter()
    for c in range(1, n + 1):
        rest = n - c
        if strict:
            tab = _by_size_and_length(n, 1, c - 1, distinct=True)
        else:
            tab = _by_size_and_length(n, 1, c)
        for left in range(rest + 1):
            rl, rr = tab[left], tab[rest - left]
            for ll, cl in enumerate(rl):
                if not cl:
                    continue
                for lr, cr in enumerate(rr):
                    if cr:
                        out[lr - ll] += cl * cr
    return _table(stat, n, out)


def oracle_thook(t: int, n: int) -> StatTable:
    out = Counter(sum(1 for h in hook_lengths(p) if h % t == 0) for p in enum_partitions(n))
    return _table(Statistic.THOOK, n, out, t)


def oracle_tcore_count(t: int, n: int) -> int:
    return sum(1 for p in enum_partitions(n) if is_tcore(p, t))


def oracle_tcore_crank(t: int, n: int) -> StatTable:
    if t not in TCORE_CRANK_WEIGHTS:
        raise UnsupportedModulus(f"the t-core crank is defined only for t in 5, 7, 11 (got {t})")
    weights = TCORE_CRANK_WEIGHTS[t]
    out = Counter()
    for p in enum_partitions(n):
        if is_tcore(p, t):
            vec = phi2(p, t)
            out[sum(a * b for a, b in zip(weights, vec)) % t] += 1
    return _table(Statistic.TCORE_CRANK, n, out, t)


def spt_of(n: int) -> int:
    """Total number of smallest parts over the partitions of ``n``."""
    return sum(p.count(p[-1]) for p in enum_partitions(n) if p)


def p_of(n: int) -> int:
    return sum(1 for _ in enum_partitions(n))


def pp_of(n: int) -> int:
    """Number of overpartition pairs of ``n``."""
    counts = [sum(1 for _ in enum_overpartitions(k)) for k in range(n + 1)]
    return sum(counts[k] * counts[n - k] for k in range(n + 1))


def partition_numbers(N: int) -> list[int]:
    """``p(0..N)`` from Euler's pentagonal number recurrence."""
    p = [1] + [0] * N
    for n in range(1, N + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p
