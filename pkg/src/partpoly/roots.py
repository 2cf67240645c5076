"""Principal polynomials, their roots, and how evenly the roots sit on the circle."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from . import genfun
from .genfun import Statistic

__all__ = [
    "ZeroConstantTerm",
    "NoConvergence",
    "PrincipalPoly",
    "RootSet",
    "RadialProfile",
    "principal_poly",
    "erdos_turan_L",
    "solve_roots",
    "star_discrepancy",
    "radial_profile",
    "vieta_errors",
    "strongly_unimodal_degree",
    "figure_export",
    "DEFAULT_TOL",
    "SPORADIC_DELTA",
]

DEFAULT_TOL = 1e-10
SPORADIC_DELTA = 0.05
_SEED = 20240601
_EXTENDED_DEGREE = 500
_VIETA_MARGIN = 1e-8


class ZeroConstantTerm(ValueError):
    """The polynomial vanishes at ``w = 0``; ``coeffs`` holds what was built."""

    def __init__(self, message: str, coeffs: tuple[int, ...] = ()):
        super().__init__(message)
        self.coeffs = coeffs


class NoConvergence(ArithmeticError):
    def __init__(self, iterations: int, worst_residual: float):
        self.iterations = iterations
        self.worst_residual = worst_residual
        super().__init__(
            f"no convergence after {iterations} iterations (worst residual {worst_residual:.3g})"
        )


@dataclass(frozen=True)
class PrincipalPoly:
    """Polynomial ``sum coeffs[j] w**j`` with non-negative integer coefficients.

    ``doubled`` marks the symmetric-statistic construction stored as twice
    the principal polynomial, so the constant term is ``s(0, n)`` rather
    than ``s(0, n) / 2``.
    """

    family: str
    n: int
    coeffs: tuple[int, ...]
    doubled: bool
    t: int | None = None

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def scaled(self, c: int) -> "PrincipalPoly":
        return PrincipalPoly(self.family, self.n, tuple(c * a for a in self.coeffs), self.doubled, self.t)


_ONE_SIDED = {Statistic.THOOK, Statistic.PARTS}


def principal_poly(family, n: int, t: int | None = None) -> PrincipalPoly:
    """Build the principal polynomial of ``family`` at size ``n``.

    Symmetric statistics give ``s(0,n) + 2 * sum_{m>=1} s(m,n) w**m``; the
    t-hook family gives ``sum_m c_t(m,n) w**m``.  For the parts-count family
    the factor ``w`` common to every term is removed so the constant term is
    nonzero.
    """
    stat = Statistic(family)
    if stat is Statistic.TCORE_CRANK:
        raise ValueError("the t-core crank is a residue class, not a polynomial statistic")
    if stat is Statistic.PARTS:
        if n < 1:
            raise ValueError("n must be positive")
        row = genfun.partition_parts_poly(n)
        coeffs = [row[k] for k in range(1, row.max_exp + 1)]
        return PrincipalPoly(stat.value, n, tuple(coeffs), False)
    row = genfun.expand(stat, n, t)[n]
    if stat in _ONE_SIDED:
        coeffs = [row[m] for m in range(0, max(row.max_exp, 0) + 1)]
        doubled = False
    else:
        top = max(row.max_exp, 0)
        coeffs = [row[0]] + [2 * row[m] for m in range(1, top + 1)]
        doubled = True
    if not coeffs or coeffs[0] == 0:
        raise ZeroConstantTerm(f"{stat.value} at n={n} has zero constant term", tuple(coeffs))
    if any(c < 0 for c in coeffs):
        raise ValueError(f"{stat.value} at n={n} has a negative coefficient")
    return PrincipalPoly(stat.value, n, tuple(coeffs), doubled, t)


def _coeff_list(f) -> list[int]:
    return list(f.coeffs) if isinstance(f, PrincipalPoly) else [int(c) for c in f]


def erdos_turan_L(f) -> tuple[Fraction, float]:
    """Return ``(L**2, log(L) / d)`` for ``L = sum|a_j| / sqrt(|a_0 a_d|)``."""
    a = _coeff_list(f)
    d = len(a) - 1
    if a[0] == 0 or a[-1] == 0:
        raise ZeroConstantTerm("need a_0 * a_d != 0")
    s = sum(abs(c) for c in a)
    L2 = Fraction(s * s, abs(a[0] * a[-1]))
    if d == 0:
        return L2, 0.0
    # from the reduced fraction, so a common factor of the coefficients cancels exactly
    log_L = 0.5 * (math.log(L2.numerator) - math.log(L2.denominator))
    return L2, log_L / d


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    residual_scale: float
    degree: int
    precision: str = "double"
    iterations: int = 0

    def __len__(self):
        return len(self.roots)

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.roots)

    @property
    def angles(self) -> np.ndarray:
        """Arguments in ``[0, 2*pi)``."""
        return np.mod(np.angle(self.roots), 2 * np.pi)


def _newton_ratios(a: np.ndarray, z: np.ndarray) -> np.ndarray:
    """``f(z)/f'(z)`` for ascending coefficients ``a``; reversed Horner outside the unit disc."""
    d = len(a) - 1
    inside = np.abs(z) <= 1
    out = np.empty_like(z)
    with np.errstate(all="ignore"):
        if inside.any():
            zi = z[inside]
            p = np.full_like(zi, a[-1])
            dp = np.zeros_like(zi)
            for c in a[-2::-1]:
                dp = dp * zi + p
                p = p * zi + c
            out[inside] = p / dp
        if (~inside).any():
            zo = z[~inside]
            y = 1 / zo
            g = np.full_like(y, a[0])
            dg = np.zeros_like(y)
            for c in a[1:]:
                dg = dg * y + g
                g = g * y + c
            out[~inside] = zo / (d - y * dg / g)
    return out


def _initial_guesses(coeffs: Sequence[int], d: int) -> np.ndarray:
    radius = math.exp((math.log(abs(coeffs[0])) - math.log(abs(coeffs[-1]))) / d)
    rng = np.random.default_rng(_SEED)
    angles = 2 * np.pi * (np.arange(d) + 0.25) / d + rng.uniform(-0.1, 0.1, d) / d
    return radius * np.exp(1j * angles)


def _backward_errors_double(a: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Double-precision estimate of ``|f(z)| / sum |a_k| |z|**k``."""
    inside = np.abs(z) <= 1
    out = np.empty(len(z))
    absa = np.abs(a)
    with np.errstate(all="ignore"):
        for mask, coeffs, absc, pts in (
            (inside, a[::-1], absa[::-1], z[inside]),
            (~inside, a, absa, 1 / z[~inside]),
        ):
            if not mask.any():
                continue
            p = np.zeros_like(pts)
            m = np.zeros(len(pts))
            r = np.abs(pts)
            for c, ac in zip(coeffs, absc):
                p = p * pts + c
                m = m * r + ac
            out[mask] = np.abs(p) / m
    return out


def _aberth_double(
    a: np.ndarray, z: np.ndarray, maxiter: int = 1000, target: float = 1e-13
) -> tuple[np.ndarray, int, bool]:
    d = len(a) - 1
    eye = np.eye(d, dtype=bool)
    polish = 0
    for it in range(1, maxiter + 1):
        ratio = _newton_ratios(a, z)
        diff = z[:, None] - z[None, :]
        diff[eye] = 1
        inv = 1 / diff
        inv[eye] = 0
        with np.errstate(all="ignore"):
            step = ratio / (1 - ratio * inv.sum(axis=1))
        step[~np.isfinite(step)] = 0
        z = z - step
        if np.all(np.abs(step) <= 1e-15 * np.abs(z)):
            return z, it, True
        # two extra sweeps once every root is backward stable
        if polish or np.max(_backward_errors_double(a, z)) <= target:
            polish += 1
            if polish > 2:
                return z, it, True
    return z, maxiter, False


def _aberth_mp(coeffs: list[int], z0: np.ndarray, prec: int, maxiter: int = 200):
    d = len(coeffs) - 1
    with mpmath.workprec(prec):
        a = [mpmath.mpf(c) for c in coeffs]
        absa = [abs(c) for c in a]
        z = [mpmath.mpc(complex(x)) for x in z0]
        eps = mpmath.mpf(2) ** (-(prec - 8))
        active = list(range(d))
        it = 0
        for it in range(1, maxiter + 1):
            steps = {}
            still = []
            for i in active:
                zi = z[i]
                p, dp = a[-1], mpmath.mpf(0)
                m, r = absa[-1], abs(zi)
                for c, ac in zip(a[-2::-1], absa[-2::-1]):
                    dp = dp * zi + p
                    p = p * zi + c
                    m = m * r + ac
                if abs(p) <= eps * m:
                    continue  # backward error at working precision: frozen
                ratio = p / dp
                s = mpmath.fsum(1 / (zi - z[j]) for j in range(d) if j != i)
                steps[i] = ratio / (1 - ratio * s)
                still.append(i)
            for i, st in steps.items():
                z[i] -= st
            active = still
            if not active:
                break
        return np.array([complex(x) for x in z]), it


def _residuals(coeffs: list[int], z: np.ndarray, prec: int = 128) -> np.ndarray:
    """``|f(z)| / sum |a_k| |z|**k`` per root, evaluated with a ``prec``-bit significand."""
    out = np.empty(len(z))
    with mpmath.workprec(prec):
        a = [mpmath.mpf(c) for c in coeffs]
        absa = [abs(c) for c in a]
        for i, x in enumerate(z):
            zi = mpmath.mpc(complex(x))
            r = abs(zi)
            p, s = a[-1], absa[-1]
            for c, ac in zip(a[-2::-1], absa[-2::-1]):
                p = p * zi + c
                s = s * r + ac
            out[i] = float(abs(p) / s)
    return out


def solve_roots(f, tol: float = DEFAULT_TOL) -> RootSet:
    """All roots of ``f`` by Aberth iteration, escalating precision if needed.

    The residual of a root is ``|f(z)| / sum_k |a_k| |z|**k``, i.e. the
    relative backward error; it is always measured in 128-bit arithmetic.
    Raises :class:`NoConvergence` when even the extended-precision pass
    leaves a residual above ``tol``.
    """
    coeffs = _coeff_list(f)
    d = len(coeffs) - 1
    if d < 1:
        raise ValueError("degree must be at least 1")
    if coeffs[0] == 0:
        raise ZeroConstantTerm("constant term must be nonzero")
    # scale by a power of two so the largest coefficient is O(1) in double
    shift = max(abs(c) for c in coeffs).bit_length() - 1
    a = np.array([float(Fraction(c, 1 << shift)) for c in coeffs])
    representable = all((x != 0) == (c != 0) for x, c in zip(a, coeffs))

    z = _initial_guesses(coeffs, d)
    iters, converged = 0, False
    if representable:
        z, iters, converged = _aberth_double(a, z)
    res = _residuals(coeffs, z)
    precision = "double"
    # ill-conditioned clusters can be backward stable yet inaccurate; the
    # Vieta identities expose that and also send the solve up the ladder
    if (
        d > _EXTENDED_DEGREE
        or not converged
        or not np.all(np.isfinite(res))
        or res.max() > tol
        or max(_vieta(coeffs, z)) > _VIETA_MARGIN
    ):
        z, more = _aberth_mp(coeffs, z, prec=128)
        iters += more
        res = _residuals(coeffs, z, prec=256)
        precision = "mp128"
    worst = float(res.max())
    if not math.isfinite(worst) or worst > tol:
        raise NoConvergence(iters, worst)
    order = np.lexsort((np.abs(z), np.mod(np.angle(z), 2 * np.pi)))
    return RootSet(z[order], worst, d, precision, iters)


def vieta_errors(f, r: RootSet) -> tuple[float, float]:
    """Relative errors of ``prod|z| = |a_0/a_d|`` and ``sum z = -a_{d-1}/a_d``."""
    return _vieta(_coeff_list(f), r.roots)


def _vieta(a: list[int], z: np.ndarray) -> tuple[float, float]:
    log_prod = float(np.sum(np.log(np.abs(z))))
    target = math.log(abs(a[0])) - math.log(abs(a[-1]))
    prod_err = abs(math.expm1(log_prod - target))
    expected = float(-Fraction(a[-2], a[-1]))
    # relative to the larger of |sum|, mean |z| and 1, so cancellation is not punished
    scale = max(abs(expected), float(np.mean(np.abs(z))), 1.0)
    sum_err = abs(complex(np.sum(z)) - expected) / scale
    return prod_err, sum_err


def star_discrepancy(r: RootSet) -> float:
    """Star discrepancy of the root angles ``theta / 2pi`` against the uniform law."""
    d = len(r.roots)
    if d == 0:
        raise ValueError("no roots")
    u = np.sort(r.angles / (2 * np.pi))
    j = np.arange(1, d + 1)
    return float(max(np.max(j / d - u), np.max(u - (j - 1) / d)))


@dataclass
class RadialProfile:
    counts: list[int]
    edges: list[float]
    mean: float
    minimum: float
    maximum: float
    sporadic: int
    delta: float
    modes: int = field(default=0)

    @property
    def bimodal(self) -> bool:
        return self.modes >= 2


def _count_modes(counts: Sequence[int], min_peak: int = 2) -> int:
    """Peaks of at least ``min_peak`` separated by a dip to half the lower peak.

    Neighbouring peaks without such a dip between them are merged.
    """
    c = list(counts)
    peaks = []
    i = 0
    while i < len(c):
        j = i
        while j + 1 < len(c) and c[j + 1] == c[i]:
            j += 1  # plateau i..j
        left = c[i - 1] if i > 0 else -1
        right = c[j + 1] if j + 1 < len(c) else -1
        if c[i] >= min_peak and c[i] > left and c[i] > right:
            peaks.append((i, j))
        i = j + 1
    modes = []  # (height, last index)
    for i, j in peaks:
        h = c[i]
        if modes:
            prev_h, prev_end = modes[-1]
            valley = min(c[prev_end:i + 1])
            if valley > 0.5 * min(prev_h, h):
                modes[-1] = (max(prev_h, h), j)
                continue
        modes.append((h, j))
    return len(modes)


def radial_profile(
    r: RootSet, bins: int = 21, delta: float = SPORADIC_DELTA,
    span: tuple[float, float] | None = None,
) -> RadialProfile:
    """Histogram of root moduli.

    Roots with modulus outside ``[1 - delta, 1 + delta]`` count as sporadic.
    The binned range is ``span`` if given, else the smallest interval holding
    every modulus and the annulus itself; with an odd bin count ``|z| = 1``
    then sits mid-bin.
    """
    mod = r.moduli
    if len(mod) == 0:
        return RadialProfile([], [], float("nan"), float("nan"), float("nan"), 0, delta, 0)
    if span is None:
        span = (min(float(mod.min()), 1 - delta), max(float(mod.max()), 1 + delta))
    counts, edges = np.histogram(mod, bins=bins, range=span)
    sporadic = int(np.sum((mod < 1 - delta) | (mod > 1 + delta)))
    return RadialProfile(
        counts=[int(c) for c in counts],
        edges=[float(e) for e in edges],
        mean=float(mod.mean()),
        minimum=float(mod.min()),
        maximum=float(mod.max()),
        sporadic=sporadic,
        delta=delta,
        modes=_count_modes(counts),
    )


def strongly_unimodal_degree(n: int) -> int:
    """Largest rank of a strongly unimodal sequence of size ``n``.

    With ``r`` parts after the peak the ``r + 1`` distinct values sum to at
    least ``T_{r+1} = (r+1)(r+2)/2``, and any larger size is reachable by
    raising the peak.  So the answer is ``k - 1`` for the largest ``k`` with
    ``T_k <= n``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    k = (math.isqrt(8 * n + 1) - 1) // 2
    return k - 1


def figure_export(r: RootSet, fmt: str, path, title: str | None = None) -> None:
    """Write roots as CSV (``re, im, modulus, angle``) or as an SVG scatter."""
    fmt = fmt.lower()
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            fh.write("re,im,modulus,angle\n")
            for z, m, a in zip(r.roots, r.moduli, r.angles):
                fh.write(f"{z.real:.17g},{z.imag:.17g},{m:.17g},{a:.17g}\n")
    elif fmt == "svg":
        from .plotting import save_root_scatter

        save_root_scatter(r, path, title=title)
    else:
        raise ValueError(f"unknown figure format {fmt!r}")
