import csv
import math
from fractions import Fraction

import numpy as np
import pytest

from partpoly import genfun
from partpoly.combinat import partition_numbers
from partpoly.laurent import LaurentPoly, lp_add, lp_reverse
from partpoly.roots import (
    NoConvergence,
    RootSet,
    ZeroConstantTerm,
    _count_modes,
    erdos_turan_L,
    figure_export,
    principal_poly,
    radial_profile,
    solve_roots,
    star_discrepancy,
    strongly_unimodal_degree,
    vieta_errors,
)

PHI5 = [1, 1, 1, 1, 1]


class TestPrincipalPoly:
    def test_rank5(self):
        p = principal_poly("rank", 5)
        assert p.coeffs == (1, 2, 2, 0, 2) and p.doubled and p.degree == 4

    def test_spt1_is_constant(self):
        p = principal_poly("spt-crank", 1)
        assert p.degree == 0
        with pytest.raises(ValueError):
            solve_roots(p)

    def test_thook_zero_constant(self):
        with pytest.raises(ZeroConstantTerm) as info:
            principal_poly("thook", 4, t=2)
        assert sum(info.value.coeffs) == 5

    def test_thook_plain(self):
        p = principal_poly("thook", 10, t=3)
        assert not p.doubled and sum(p.coeffs) == 42

    def test_parts_removes_common_factor(self):
        p = principal_poly("parts", 5)
        assert p.coeffs == (1, 2, 2, 1, 1) and not p.doubled

    def test_tcore_rejected(self):
        with pytest.raises(ValueError):
            principal_poly("tcore-crank", 5, t=5)

    @pytest.mark.parametrize("family", ["rank", "crank", "spt-crank", "unimodal", "orank"])
    def test_doubled_identity(self, family):
        # P(w) + P(1/w) = 2 * row, with P the doubled principal polynomial
        for n in (6, 11, 20):
            p = principal_poly(family, n)
            poly = LaurentPoly({j: c for j, c in enumerate(p.coeffs)})
            row = genfun.expand(family, n)[n]
            assert lp_add(poly, lp_reverse(poly)) == row * 2

    def test_scaled(self):
        p = principal_poly("rank", 5).scaled(3)
        assert p.coeffs == (3, 6, 6, 0, 6)


class TestErdosTuran:
    def test_binomial(self):
        L2, per_degree = erdos_turan_L([1, 1])
        assert L2 == 4 and per_degree == pytest.approx(math.log(2))

    def test_scale_invariant(self):
        f = [3, 1, 4, 1, 5]
        for c in (2, 3, 10):
            assert erdos_turan_L([c * a for a in f]) == erdos_turan_L(f)

    def test_exact_fraction(self):
        assert erdos_turan_L([1, 2, 2, 0, 2])[0] == Fraction(49, 2)

    def test_crank100_compared_with_p(self):
        p = principal_poly("crank", 100)
        _, per_degree = erdos_turan_L(p)
        # sum of coefficients is 2 p(100) - s(0); the bound should be of the same order
        assert per_degree < math.log(2 * partition_numbers(100)[100]) / p.degree + 1e-12
        assert per_degree > 0

    def test_zero_end(self):
        with pytest.raises(ZeroConstantTerm):
            erdos_turan_L([0, 1])


class TestSolve:
    def test_phi5(self):
        r = solve_roots(PHI5)
        expected = np.exp(2j * np.pi * np.arange(1, 5) / 5)
        assert max(np.min(np.abs(r.roots - e)) for e in expected) < 1e-12
        assert r.residual_scale <= 1e-10

    def test_triple_root(self):
        r = solve_roots([1, 3, 3, 1])
        assert np.allclose(r.roots, -1, atol=1e-4)

    def test_scale_invariant(self):
        f = list(principal_poly("crank", 30).coeffs)
        a, b = solve_roots(f), solve_roots([7 * c for c in f])
        assert np.allclose(a.roots, b.roots, atol=1e-10)

    def test_zero_constant(self):
        with pytest.raises(ZeroConstantTerm):
            solve_roots([0, 1, 1])

    def test_vieta(self):
        f = principal_poly("spt-crank", 60)
        r = solve_roots(f)
        assert max(vieta_errors(f, r)) < 1e-6
        assert len(r) == f.degree

    def test_huge_coefficients_use_extended_precision(self):
        f = principal_poly("crank", 300)
        r = solve_roots(f)
        assert r.residual_scale <= 1e-10
        assert max(vieta_errors(f, r)) < 1e-6

    def test_no_convergence_type(self):
        e = NoConvergence(5, 1.0)
        assert e.iterations == 5 and "5" in str(e)


class TestDiscrepancy:
    @pytest.mark.parametrize("d", [3, 8, 20])
    def test_roots_of_unity(self, d):
        r = solve_roots([-1] + [0] * (d - 1) + [1])
        assert star_discrepancy(r) == pytest.approx(1 / d, abs=1e-9)

    def test_all_at_angle_zero(self):
        r = RootSet(np.array([1.0 + 0j] * 10), 0.0, 10)
        assert star_discrepancy(r) == pytest.approx(1.0)

    def test_crank_decreases(self):
        d20 = star_discrepancy(solve_roots(principal_poly("crank", 20)))
        d50 = star_discrepancy(solve_roots(principal_poly("crank", 50)))
        assert d50 < d20


class TestRadial:
    def test_phi5_single_bin(self):
        prof = radial_profile(solve_roots(PHI5))
        assert sum(1 for c in prof.counts if c) == 1
        assert prof.sporadic == 0 and prof.modes == 1 and not prof.bimodal

    def test_uniform_modulus(self):
        r = RootSet(np.exp(1j * np.linspace(0, 6, 30)) * 1.02, 0.0, 30)
        prof = radial_profile(r)
        assert sum(1 for c in prof.counts if c) == 1 and prof.sporadic == 0

    def test_sporadic(self):
        r = RootSet(np.array([0.5, 1.0, 1.0j, 3.0]), 0.0, 4)
        assert radial_profile(r).sporadic == 2

    def test_modes(self):
        assert _count_modes([0, 5, 1, 0, 4, 0]) == 2
        assert _count_modes([0, 5, 4, 5, 0]) == 1
        assert _count_modes([1, 0, 1]) == 0

    def test_empty(self):
        prof = radial_profile(RootSet(np.array([], dtype=complex), 0.0, 0))
        assert prof.counts == [] and prof.modes == 0


def test_strongly_unimodal_degree():
    assert strongly_unimodal_degree(200) == 18
    assert strongly_unimodal_degree(3) == 1
    assert strongly_unimodal_degree(1) == 0
    with pytest.raises(ValueError):
        strongly_unimodal_degree(0)


class TestFigures:
    def test_csv(self, tmp_path):
        path = tmp_path / "phi5.csv"
        figure_export(solve_roots(PHI5), "csv", path)
        rows = list(csv.reader(path.open()))
        assert rows[0] == ["re", "im", "modulus", "angle"] and len(rows) == 5
        assert all(abs(float(row[2]) - 1) < 1e-12 for row in rows[1:])

    def test_svg_deterministic(self, tmp_path):
        r = solve_roots(principal_poly("rank", 40))
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        figure_export(r, "svg", a, title="rank 40")
        figure_export(r, "svg", b, title="rank 40")
        assert a.read_bytes() == b.read_bytes()
        assert b"<svg" in a.read_bytes()

    def test_svg_empty(self, tmp_path):
        path = tmp_path / "empty.svg"
        figure_export(RootSet(np.array([], dtype=complex), 0.0, 0), "svg", path)
        assert path.stat().st_size > 0

    def test_bad_format(self, tmp_path):
        with pytest.raises(ValueError):
            figure_export(solve_roots(PHI5), "png", tmp_path / "x")


def test_random_polys_roots_reproduce(rng):
    for _ in range(20):
        f = [rng.randint(1, 50) for _ in range(rng.randint(2, 40))]
        r = solve_roots(f)
        assert r.residual_scale <= 1e-10
        assert max(vieta_errors(f, r)) < 1e-6
