"""Cyclotomic divisibility and equidistribution of coefficient buckets.

For a prime ``l``, ``Phi_l`` divides a Laurent polynomial exactly when its
coefficients, summed over each residue class of exponents mod ``l``, are all
equal.  :func:`check_divisibility` computes both sides independently and
refuses to answer if they disagree.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from . import genfun
from .genfun import OutOfScope, Statistic
from .laurent import (
    LaurentPoly,
    NotDivisible,
    lp_divide_exact,
    lp_eval_at_one,
    lp_reverse,
)

__all__ = [
    "InternalInconsistency",
    "CertificateFailure",
    "DivisibilityReport",
    "SweepEntry",
    "ProgressionReport",
    "cyclotomic",
    "phi2_of_w_squared",
    "bucket_sums",
    "check_divisibility",
    "check_symmetric",
    "check_unimodal",
    "is_prime",
    "congruence_sweep",
    "search_progressions",
    "check_stanton",
    "family_values",
    "family_row",
]


class InternalInconsistency(AssertionError):
    """Bucket equality and exact division gave different answers."""


class CertificateFailure(AssertionError):
    """A divisibility or positivity claim failed; ``witness`` says where."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@lru_cache(maxsize=None)
def cyclotomic(ell: int) -> LaurentPoly:
    """The cyclotomic polynomial ``Phi_ell(w)``."""
    if ell < 1:
        raise ValueError("ell must be positive")
    if ell == 1:
        return LaurentPoly({0: -1, 1: 1})
    num = LaurentPoly({0: -1, ell: 1})
    for d in range(1, ell):
        if ell % d == 0:
            num = lp_divide_exact(num, cyclotomic(d))
    return num


def phi2_of_w_squared() -> LaurentPoly:
    return LaurentPoly({0: 1, 2: 1})


def bucket_sums(f: LaurentPoly, ell: int) -> list[int]:
    """Coefficient sums of ``f`` over exponents in each residue class mod ``ell``."""
    if ell < 1:
        raise ValueError("ell must be positive")
    out = [0] * ell
    for e, c in f.items():
        out[e % ell] += c
    return out


def check_symmetric(f: LaurentPoly) -> bool:
    return lp_reverse(f) == f


def check_unimodal(f: LaurentPoly) -> bool:
    """Weakly up then weakly down across the whole window, zeros included."""
    c = f.dense
    i = 0
    while i + 1 < len(c) and c[i] <= c[i + 1]:
        i += 1
    while i + 1 < len(c) and c[i] >= c[i + 1]:
        i += 1
    return i + 1 >= len(c)


def _strictly_unimodal(f: LaurentPoly) -> bool:
    c = f.dense
    i = 0
    while i + 1 < len(c) and c[i] < c[i + 1]:
        i += 1
    while i + 1 < len(c) and c[i] > c[i + 1]:
        i += 1
    return i + 1 >= len(c)


@dataclass
class DivisibilityReport:
    family: str
    ell: int
    n: int | None
    buckets: list[int]
    divisible: bool
    quotient: LaurentPoly | None = None
    quotient_nonnegative: bool | None = None
    symmetric: bool = False
    unimodal: bool = False

    def to_dict(self) -> dict:
        d = asdict(self)
        d["buckets"] = [str(b) for b in self.buckets]
        if self.quotient is not None:
            q = self.quotient
            d["quotient"] = {
                "min_exp": q.min_exp,
                "coeffs": [str(c) for c in q.dense],
            }
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def check_divisibility(
    f: LaurentPoly, ell: int, family: str = "", n: int | None = None
) -> DivisibilityReport:
    """Decide ``Phi_ell | f`` two ways and cross-check them."""
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    buckets = bucket_sums(f, ell)
    by_buckets = len(set(buckets)) == 1
    try:
        quotient = lp_divide_exact(f, cyclotomic(ell))
    except NotDivisible:
        quotient = None
    if by_buckets != (quotient is not None):
        raise InternalInconsistency(
            f"bucket sums {buckets} disagree with exact division for {family} n={n}"
        )
    if quotient is not None and quotient * cyclotomic(ell) != f:
        raise InternalInconsistency("quotient times Phi does not reproduce f")
    sym = check_symmetric(f)
    uni = check_unimodal(f)
    nonneg = None
    if quotient is not None:
        nonneg = all(c >= 0 for c in quotient.dense)
        if sym and uni and ell > 2 and not f.is_zero() and min(f.dense) >= 0:
            if not nonneg:
                raise InternalInconsistency(
                    f"symmetric unimodal {family} n={n} has a negative quotient coefficient"
                )
            if _strictly_unimodal(f) and not all(c > 0 for c in quotient.dense):
                raise InternalInconsistency(
                    f"strictly unimodal {family} n={n} has a non-positive quotient coefficient"
                )
    return DivisibilityReport(
        family=family,
        ell=ell,
        n=n,
        buckets=buckets,
        divisible=quotient is not None,
        quotient=quotient,
        quotient_nonnegative=nonneg,
        symmetric=sym,
        unimodal=uni,
    )


# ---------------------------------------------------------------------------
# families as sequences of rows / values at w = 1

_COUNT_ALIASES = {
    "p": Statistic.CRANK,
    "spt": Statistic.SPT_CRANK,
    "pp": Statistic.ORANK,
    "tcore": Statistic.TCORE_CRANK,
}

# first n whose row is meaningful for each family
_FIRST_ROW = {Statistic.SPT_CRANK: 1}


def _resolve(family: str) -> Statistic:
    key = family.lower()
    if key in _COUNT_ALIASES:
        return _COUNT_ALIASES[key]
    return Statistic(key)


def family_row(family: str, n_max: int, t: int | None = None) -> list[LaurentPoly]:
    """Rows ``0..n_max`` of a family; ``p``/``spt``/``pp``/``tcore`` name the underlying statistic."""
    return genfun.expand(_resolve(family), n_max, t)


def family_values(family: str, n_max: int, t: int | None = None) -> list[int]:
    """Row sums at ``w = 1`` for ``n = 0..n_max``."""
    stat = _resolve(family)
    if stat is Statistic.TCORE_CRANK:
        if t is None:
            raise ValueError("tcore needs the parameter t")
        return [sum(r) for r in genfun.tcore_crank_rows(t, n_max)]
    return [lp_eval_at_one(r) for r in genfun.expand(stat, n_max, t)]


@dataclass
class SweepEntry:
    n: int
    value: int
    residue: int


def congruence_sweep(
    family: str, ell: int, residue: int, n_max: int, t: int | None = None
) -> list[SweepEntry]:
    """Values mod ``ell`` of the family at every ``n <= n_max`` with ``n = residue (mod ell)``."""
    stat = _resolve(family)
    if stat is Statistic.TCORE_CRANK and t is None:
        t = ell
    values = family_values(family, n_max, t)
    start = _FIRST_ROW.get(stat, 0)
    return [
        SweepEntry(n, values[n], values[n] % ell)
        for n in range(residue % ell, n_max + 1, ell)
        if n >= start
    ]


@dataclass
class ProgressionReport:
    family: str
    modulus: int
    divisor: str
    n_max: int
    residues: list[int]
    first_failure: dict[int, int] = field(default_factory=dict)
    empirical: bool = True

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "modulus": self.modulus,
            "divisor": self.divisor,
            "n_max": self.n_max,
            "residues": self.residues,
            "first_failure": {str(k): v for k, v in sorted(self.first_failure.items())},
            "empirical": self.empirical,
        }


def search_progressions(
    family: str,
    ell: int,
    divisor: str = "cyclotomic",
    n_max: int = 100,
    t: int | None = None,
) -> ProgressionReport:
    """Residues ``b`` for which the divisor divides every tested row ``n = b (mod ell)``.

    ``divisor`` is ``"cyclotomic"`` for ``Phi_ell(w)`` or ``"phi2-w2"`` for
    ``Phi_2(w**2) = 1 + w**2``.  The result only covers ``n <= n_max``.
    """
    if n_max < ell:
        raise ValueError("n_max must reach at least one representative per residue")
    stat = _resolve(family)
    if stat is Statistic.TCORE_CRANK and t is None:
        t = ell
    rows = genfun.expand(stat, n_max, t)
    start = _FIRST_ROW.get(stat, 0)
    if divisor == "cyclotomic":
        g = cyclotomic(ell)
    elif divisor == "phi2-w2":
        g = phi2_of_w_squared()
    else:
        raise ValueError(f"unknown divisor {divisor!r}")

    def divides(f: LaurentPoly) -> bool:
        try:
            lp_divide_exact(f, g)
            return True
        except NotDivisible:
            return False

    good, failures = [], {}
    for b in range(ell):
        for n in range(b, n_max + 1, ell):
            if n >= start and not divides(rows[n]):
                failures[b] = n
                break
        else:
            good.append(b)
    return ProgressionReport(stat.value, ell, divisor, n_max, good, failures)


def check_stanton(kind: str, ell: int, n: int) -> DivisibilityReport:
    """Divisibility of Stanton's modified polynomial by ``Phi_ell``, with a non-negative quotient.

    Raises :class:`CertificateFailure` if either property fails and
    :class:`~partpoly.genfun.OutOfScope` outside the conjectured cases.
    """
    f = genfun.stanton_modified(kind, ell, n)
    report = check_divisibility(f, ell, family=f"{kind}*", n=n)
    if not report.divisible or not report.quotient_nonnegative:
        raise CertificateFailure(
            f"modified {kind} polynomial fails for l={ell}, n={n}",
            {
                "family": f"{kind}*",
                "n": n,
                "expected": "divisible with non-negative quotient",
                "actual": report.to_dict(),
            },
        )
    return report


def check_stanton_range(kind: str, ell: int, ns: Iterable[int]) -> list[DivisibilityReport]:
    """:func:`check_stanton` over several ``n``, expanding the base family once."""
    ns = list(ns)
    if ns:
        genfun.stanton_modified(kind, ell, max(ns))
    return [check_stanton(kind, ell, n) for n in ns]


def reports_for(
    rows: Iterable[tuple[int, LaurentPoly]], ell: int, family: str
) -> list[DivisibilityReport]:
    return [check_divisibility(f, ell, family, n) for n, f in rows]


__all__ += ["reports_for", "check_stanton_range", "OutOfScope"]
