"""Exact Laurent polynomials in ``w`` and truncated power series in ``q``.

A :class:`LaurentPoly` is stored densely: the exponent of the first stored
coefficient plus a tuple of Python integers.  A :class:`QSeriesTable` is a
tuple of ``LaurentPoly`` values indexed by the power of ``q``, together with
the truncation order it is valid to.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "LaurentPoly",
    "QSeriesTable",
    "NotDivisible",
    "NotAUnit",
    "DivergentProduct",
    "INFINITY",
    "lp_add",
    "lp_sub",
    "lp_mul",
    "lp_scale",
    "lp_shift",
    "lp_eval_at_one",
    "lp_reverse",
    "lp_divide_exact",
    "qs_add",
    "qs_mul",
    "qs_invert",
    "qs_pochhammer",
]

INFINITY = float("inf")

# below this many coefficient products, schoolbook beats packing into big ints
_KRONECKER_THRESHOLD = 4096


class NotDivisible(ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder."""

    def __init__(self, remainder: "LaurentPoly", message: str | None = None):
        self.remainder = remainder
        super().__init__(message or f"not divisible, remainder {remainder}")


class NotAUnit(ArithmeticError):
    pass


class DivergentProduct(ValueError):
    pass


class LaurentPoly:
    """Immutable Laurent polynomial with integer coefficients.

    The zero polynomial has no coefficients and ``min_exp == max_exp == 0``.
    Otherwise the coefficients at both ends of the window are nonzero.
    """

    __slots__ = ("_low", "_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        if not coeffs:
            self._low, self._coeffs = 0, ()
        else:
            items = {e: c for e, c in coeffs.items() if c}
            if not items:
                self._low, self._coeffs = 0, ()
            else:
                lo, hi = min(items), max(items)
                self._low = lo
                self._coeffs = tuple(int(items.get(e, 0)) for e in range(lo, hi + 1))
        self._hash = None

    @classmethod
    def from_dense(cls, low: int, coeffs: Iterable[int]) -> "LaurentPoly":
        """Build from consecutive coefficients starting at exponent ``low``."""
        c = list(coeffs)
        i, j = 0, len(c)
        while i < j and not c[i]:
            i += 1
        while j > i and not c[j - 1]:
            j -= 1
        obj = cls.__new__(cls)
        obj._hash = None
        if i == j:
            obj._low, obj._coeffs = 0, ()
        else:
            obj._low, obj._coeffs = low + i, tuple(c[i:j])
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls.from_dense(exp, (coeff,))

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls.from_dense(0, (c,))

    @property
    def min_exp(self) -> int:
        return self._low

    @property
    def max_exp(self) -> int:
        return self._low + len(self._coeffs) - 1 if self._coeffs else 0

    @property
    def dense(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def coeffs(self) -> dict[int, int]:
        return {self._low + i: c for i, c in enumerate(self._coeffs) if c}

    def is_zero(self) -> bool:
        return not self._coeffs

    def __getitem__(self, exp: int) -> int:
        i = exp - self._low
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return 0

    def items(self):
        return ((self._low + i, c) for i, c in enumerate(self._coeffs) if c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._low == other._low and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._low, self._coeffs))
        return self._hash

    def __add__(self, other):
        return lp_add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return lp_sub(self, _coerce(other))

    def __rsub__(self, other):
        return lp_sub(_coerce(other), self)

    def __neg__(self):
        return lp_scale(self, -1)

    def __mul__(self, other):
        return lp_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __call__(self, w):
        return sum(c * w**e for e, c in self.items())

    def __repr__(self):
        return f"LaurentPoly({self.coeffs!r})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        out = []
        for e, c in sorted(self.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = "w" if e == 1 else f"w^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            out.append(f"{sign} {body}")
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as a LaurentPoly")


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    lo = min(a.min_exp, b.min_exp)
    hi = max(a.max_exp, b.max_exp)
    out = [0] * (hi - lo + 1)
    for i, c in enumerate(a.dense, a.min_exp - lo):
        out[i] = c
    for i, c in enumerate(b.dense, b.min_exp - lo):
        out[i] += c
    return LaurentPoly.from_dense(lo, out)


def lp_scale(a: LaurentPoly, c: int) -> LaurentPoly:
    return LaurentPoly.from_dense(a.min_exp, [c * x for x in a.dense])


def lp_sub(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return lp_add(a, lp_scale(b, -1))


def lp_shift(a: LaurentPoly, k: int) -> LaurentPoly:
    """Multiply by ``w**k``."""
    return LaurentPoly.from_dense(a.min_exp + k, a.dense)


def _schoolbook(x: Sequence[int], y: Sequence[int]) -> list[int]:
    out = [0] * (len(x) + len(y) - 1)
    for i, xi in enumerate(x):
        if xi:
            for j, yj in enumerate(y):
                out[i + j] += xi * yj
    return out


def _kronecker(x: Sequence[int], y: Sequence[int]) -> list[int]:
    # evaluate both at 2**bits, multiply big ints, read balanced digits back
    bound = max(map(abs, x)) * max(map(abs, y)) * min(len(x), len(y))
    bits = bound.bit_length() + 2
    bits += -bits % 8
    base = 1 << bits
    X = sum(c << (bits * i) for i, c in enumerate(x))
    Y = sum(c << (bits * i) for i, c in enumerate(y))
    return unpack_balanced(X * Y, len(x) + len(y) - 1, bits)


def unpack_balanced(value: int, ndigits: int, bits: int) -> list[int]:
    """Recover ``c_0..c_{ndigits-1}`` from ``sum(c_i * 2**(bits*i))``.

    Requires ``|c_i| < 2**(bits-1)`` and ``bits % 8 == 0``.
    """
    half = 1 << (bits - 1)
    bias = int.from_bytes(bytes([0x80] + [0] * (bits // 8 - 1)) * ndigits, "big")
    shifted = value + bias
    if shifted < 0 or shifted.bit_length() > bits * ndigits:
        raise OverflowError("packed value does not fit the digit window")
    nbytes = bits // 8
    raw = shifted.to_bytes(nbytes * ndigits, "little")
    return [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        for i in range(ndigits)
    ]


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.is_zero() or b.is_zero():
        return ZERO
    x, y = a.dense, b.dense
    if len(x) * len(y) < _KRONECKER_THRESHOLD:
        out = _schoolbook(x, y)
    else:
        out = _kronecker(x, y)
    return LaurentPoly.from_dense(a.min_exp + b.min_exp, out)


def lp_eval_at_one(f: LaurentPoly) -> int:
    return sum(f.dense)


def lp_reverse(f: LaurentPoly) -> LaurentPoly:
    """Substitute ``w -> 1/w``."""
    if f.is_zero():
        return f
    return LaurentPoly.from_dense(-f.max_exp, reversed(f.dense))


def lp_divide_exact(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``f == q * g``, or raise :class:`NotDivisible`.

    Both operands are shifted to ordinary polynomials and divided over the
    rationals; the quotient must come out integral.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return ZERO
    num = list(f.dense)
    den = g.dense
    lead = den[-1]
    dg = len(den) - 1
    if len(num) - 1 < dg:
        raise NotDivisible(f)
    quot = [0] * (len(num) - dg)
    exact = True
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + dg]
        if not c:
            continue
        if exact and c % lead == 0:
            qk = c // lead
        else:
            exact = False
            qk = Fraction(c, lead)
        quot[k] = qk
        for j, dj in enumerate(den):
            num[k + j] -= qk * dj
    if any(num):
        rem = [Fraction(x) for x in num]
        scale = 1
        for r in rem:
            scale = scale * r.denominator // _gcd(scale, r.denominator)
        raise NotDivisible(LaurentPoly.from_dense(f.min_exp, [int(r * scale) for r in rem]))
    if not all(Fraction(x).denominator == 1 for x in quot):
        raise NotDivisible(ZERO, "quotient is rational but not integral")
    return LaurentPoly.from_dense(f.min_exp - g.min_exp, [int(x) for x in quot])


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class QSeriesTable:
    """Power series in ``q`` with Laurent-polynomial coefficients, known mod ``q**(truncation+1)``."""

    truncation: int
    terms: tuple[LaurentPoly, ...]

    def __post_init__(self):
        if self.truncation < 0:
            raise ValueError("truncation must be non-negative")
        if len(self.terms) != self.truncation + 1:
            raise ValueError(
                f"expected {self.truncation + 1} terms, got {len(self.terms)}"
            )

    @classmethod
    def from_terms(cls, terms: Iterable, truncation: int) -> "QSeriesTable":
        t = [_coerce(x) for x in terms][: truncation + 1]
        t += [ZERO] * (truncation + 1 - len(t))
        return cls(truncation, tuple(t))

    @classmethod
    def one(cls, truncation: int) -> "QSeriesTable":
        return cls.from_terms([ONE], truncation)

    def __getitem__(self, n: int) -> LaurentPoly:
        return self.terms[n]

    def __len__(self):
        return len(self.terms)

    def truncate(self, truncation: int) -> "QSeriesTable":
        if truncation > self.truncation:
            raise ValueError("cannot extend a truncated series")
        return QSeriesTable(truncation, self.terms[: truncation + 1])

    def at_one(self) -> list[int]:
        return [lp_eval_at_one(t) for t in self.terms]


def qs_add(a: QSeriesTable, b: QSeriesTable) -> QSeriesTable:
    T = min(a.truncation, b.truncation)
    return QSeriesTable(T, tuple(lp_add(a[i], b[i]) for i in range(T + 1)))


def qs_mul(a: QSeriesTable, b: QSeriesTable) -> QSeriesTable:
    T = min(a.truncation, b.truncation)
    out = []
    for n in range(T + 1):
        acc = ZERO
        for i in range(n + 1):
            if not a[i].is_zero() and not b[n - i].is_zero():
                acc = lp_add(acc, lp_mul(a[i], b[n - i]))
        out.append(acc)
    return QSeriesTable(T, tuple(out))


def qs_invert(a: QSeriesTable) -> QSeriesTable:
    """Multiplicative inverse of a series whose constant term is a unit ``±w**k``."""
    c0 = a[0]
    if len(c0.dense) != 1 or abs(c0.dense[0]) != 1:
        raise NotAUnit(f"constant term {c0} is not a unit")
    # inverse of ±w^k is ±w^-k
    inv0 = LaurentPoly.monomial(-c0.min_exp, c0.dense[0])
    out = [inv0]
    for n in range(1, a.truncation + 1):
        acc = ZERO
        for i in range(1, n + 1):
            if not a[i].is_zero() and not out[n - i].is_zero():
                acc = lp_add(acc, lp_mul(a[i], out[n - i]))
        out.append(lp_scale(lp_mul(acc, inv0), -1))
    return QSeriesTable(a.truncation, tuple(out))


def qs_pochhammer(a: LaurentPoly, start_power: int, n_factors, T: int) -> QSeriesTable:
    """Truncated ``prod_{k < n_factors} (1 - a * q**(start_power + k))``.

    ``a`` must be a monomial ``c * w**e``.  ``n_factors`` may be
    :data:`INFINITY`, in which case the product stops once factors are
    ``1 + O(q**(T+1))``.
    """
    if len(a.dense) > 1:
        raise ValueError("pochhammer base must be a monomial")
    if n_factors == INFINITY:
        if start_power < 1 and not a.is_zero():
            raise DivergentProduct("infinite product has a factor with q-valuation 0")
        last = T
    else:
        last = start_power + int(n_factors) - 1
    result = QSeriesTable.one(T)
    for p in range(start_power, last + 1):
        if p > T:
            break
        factor = [ZERO] * (T + 1)
        factor[0] = ONE
        if p == 0:
            factor[0] = lp_sub(ONE, a)
        else:
            factor[p] = lp_scale(a, -1)
        result = qs_mul(result, QSeriesTable(T, tuple(factor)))
    return result
