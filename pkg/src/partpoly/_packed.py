"""Fast bivariate series kernel used by the expanders.

Each q-row is a Laurent polynomial in ``w`` stored as the single integer
obtained by evaluating it at ``w = 2**bits`` (after shifting exponents by
``T`` so they are non-negative).  Substituting an integer for ``w`` is a
ring homomorphism, so every product, sum and geometric-series division is
exact on the packed values; only the final unpacking needs the coefficients
to fit in a digit.  A majorant series (all signs made positive, ``w = 1``)
is carried alongside and bounds the absolute value of every coefficient.
"""

from __future__ import annotations

from functools import lru_cache

from .laurent import LaurentPoly, unpack_balanced


class DigitOverflow(OverflowError):
    pass


@lru_cache(maxsize=None)
def _default_bits(T: int) -> int:
    # coefficient of q^T in prod (1-q^n)^-8, which dominates every family here
    series = [1] + [0] * T
    for _ in range(8):
        for n in range(1, T + 1):
            for j in range(n, T + 1):
                series[j] += series[j - n]
    bits = max(series).bit_length() + 8
    return bits + (-bits % 8)


class PackedSeries:
    """Mutable working buffer for a series in ``q`` with coefficients in Z[w, 1/w].

    Every w-exponent must stay inside ``[-T, T]``; all the generating
    functions handled here satisfy ``|m| <= n`` at order ``q**n``.
    """

    def __init__(self, T: int, bits: int | None = None):
        self.T = T
        self.bits = bits if bits is not None else _default_bits(T)
        self.rows = [0] * (T + 1)
        self.major = [0] * (T + 1)
        self._unit = 1 << (self.bits * T)  # packed w^0

    @classmethod
    def one(cls, T: int, bits: int | None = None) -> "PackedSeries":
        s = cls(T, bits)
        s.rows[0] = s._unit
        s.major[0] = 1
        return s

    def copy(self) -> "PackedSeries":
        s = PackedSeries.__new__(PackedSeries)
        s.T, s.bits, s._unit = self.T, self.bits, self._unit
        s.rows = list(self.rows)
        s.major = list(self.major)
        return s

    def _wpow(self, v: int, a: int) -> int:
        if a >= 0:
            return v << (self.bits * a)
        return v >> (self.bits * -a)

    def scale(self, c: int) -> "PackedSeries":
        self.rows = [c * v for v in self.rows]
        self.major = [abs(c) * v for v in self.major]
        return self

    def shift_q(self, k: int) -> "PackedSeries":
        """Multiply by ``q**k``."""
        if k:
            T = self.T
            self.rows = [0] * min(k, T + 1) + self.rows[: max(T + 1 - k, 0)]
            self.major = [0] * min(k, T + 1) + self.major[: max(T + 1 - k, 0)]
        return self

    def mul_binomial(self, sign: int, a: int, b: int) -> "PackedSeries":
        """Multiply by ``1 + sign * w**a * q**b`` with ``b >= 0``."""
        rows, major = self.rows, self.major
        if b == 0:
            for j in range(self.T + 1):
                rows[j] += sign * self._wpow(rows[j], a)
                major[j] *= 2
            return self
        for j in range(self.T, b - 1, -1):
            v = rows[j - b]
            if v:
                rows[j] += sign * self._wpow(v, a)
                major[j] += major[j - b]
        return self

    def div_geometric(self, a: int, b: int) -> "PackedSeries":
        """Multiply by ``1 / (1 - w**a * q**b)`` with ``b >= 1``."""
        rows, major = self.rows, self.major
        for j in range(b, self.T + 1):
            v = rows[j - b]
            if v:
                rows[j] += self._wpow(v, a)
                major[j] += major[j - b]
        return self

    def div_binomial(self, sign: int, a: int, b: int) -> "PackedSeries":
        """Multiply by ``1 / (1 + sign * w**a * q**b)`` with ``b >= 1``."""
        rows, major = self.rows, self.major
        for j in range(b, self.T + 1):
            v = rows[j - b]
            if v:
                rows[j] -= sign * self._wpow(v, a)
                major[j] += major[j - b]
        return self

    def div_euler(self) -> "PackedSeries":
        """Multiply by ``1 / (q;q)_inf`` using the pentagonal number recurrence."""
        T = self.T
        pent = []  # (offset, sign) of the nonzero terms of (q;q)_inf past q^0
        k = 1
        while k * (3 * k - 1) // 2 <= T:
            sign = -1 if k % 2 else 1
            pent.append((k * (3 * k - 1) // 2, sign))
            if k * (3 * k + 1) // 2 <= T:
                pent.append((k * (3 * k + 1) // 2, sign))
            k += 1
        rows = self.rows
        for j in range(1, T + 1):
            acc = rows[j]
            for g, sign in pent:
                if g > j:
                    break
                acc -= sign * rows[j - g]
            rows[j] = acc
        # majorant: convolve with the partition numbers
        p = [1] + [0] * T
        for j in range(1, T + 1):
            p[j] = -sum(sign * p[j - g] for g, sign in pent if g <= j)
        old = self.major
        self.major = [sum(p[i] * old[j - i] for i in range(j + 1) if old[j - i]) for j in range(T + 1)]
        return self

    def add(self, other: "PackedSeries") -> "PackedSeries":
        self.rows = [x + y for x, y in zip(self.rows, other.rows)]
        self.major = [x + y for x, y in zip(self.major, other.major)]
        return self

    def unpack(self) -> list[LaurentPoly]:
        limit = 1 << (self.bits - 1)
        if any(m >= limit for m in self.major):
            raise DigitOverflow(f"{self.bits}-bit digits too narrow for this series")
        width = 2 * self.T + 1
        return [
            LaurentPoly.from_dense(-self.T, unpack_balanced(v, width, self.bits))
            for v in self.rows
        ]


def build(T: int, recipe) -> list[LaurentPoly]:
    """Run ``recipe(T, bits) -> PackedSeries`` and unpack, widening digits on overflow."""
    bits = _default_bits(T)
    while True:
        try:
            return recipe(T, bits).unpack()
        except DigitOverflow:
            bits *= 2
