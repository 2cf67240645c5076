import pytest

from partpoly import genfun
from partpoly.combinat import partition_numbers, pp_of, spt_of
from partpoly.cyclo import bucket_sums, check_unimodal
from partpoly.genfun import OutOfScope, Statistic, UnsupportedModulus
from partpoly.laurent import LaurentPoly, lp_eval_at_one, lp_reverse

P = LaurentPoly
N = 60
p_n = partition_numbers(N)


class TestRank:
    def test_rank5(self):
        assert genfun.expand_rank(5)[5] == P({4: 1, 2: 1, 1: 1, 0: 1, -1: 1, -2: 1, -4: 1})

    def test_small_rows(self):
        rows = genfun.expand_rank(4)
        assert rows[0] == 1
        assert lp_eval_at_one(rows[4]) == 5

    def test_window(self):
        rows = genfun.expand_rank(N)
        for n in range(2, N + 1):
            assert -(n - 1) <= rows[n].min_exp and rows[n].max_exp <= n - 1


class TestCrank:
    def test_n1_generating_function_value(self):
        assert genfun.expand_crank(1)[1] == P({1: 1, 0: -1, -1: 1})

    def test_small(self):
        rows = genfun.expand_crank(5)
        assert rows[0] == 1 and lp_eval_at_one(rows[5]) == 7

    def test_matches_direct_product(self):
        # independent expansion of prod (1-q^n)/((1-wq^n)(1-q^n/w)) with LaurentPoly rows
        T = 25
        rows = [P({0: 1})] + [P({})] * T
        for n in range(1, T + 1):
            for j in range(T, n - 1, -1):  # times (1 - q^n)
                rows[j] = rows[j] - rows[j - n]
            for a in (1, -1):  # divide by (1 - w^a q^n)
                for j in range(n, T + 1):
                    rows[j] = rows[j] + rows[j - n] * P({a: 1})
        assert genfun.expand_crank(T) == rows


class TestSpt:
    def test_values(self):
        rows = genfun.expand_spt_crank(6)
        assert rows[0].is_zero()
        assert rows[1] == 1
        assert lp_eval_at_one(rows[3]) == 5

    def test_sums_to_spt(self):
        rows = genfun.expand_spt_crank(20)
        assert [lp_eval_at_one(rows[n]) for n in range(1, 21)] == [spt_of(n) for n in range(1, 21)]

    def test_known_large_value(self):
        assert lp_eval_at_one(genfun.expand_spt_crank(200)[200]) == 45045904937811

    def test_unimodal_nonnegative_and_positive_centre(self):
        rows = genfun.expand_spt_crank(120)
        for n in range(1, 121):
            assert min(rows[n].dense) >= 0
            assert check_unimodal(rows[n]), n
            assert rows[n][0] > 0


class TestOrankWagner:
    def test_orank_small(self):
        rows = genfun.expand_orank(3)
        assert rows[0] == 1 and lp_eval_at_one(rows[1]) == 4 and lp_eval_at_one(rows[2]) == 12

    def test_orank_sums(self):
        rows = genfun.expand_orank(12)
        assert [lp_eval_at_one(r) for r in rows] == [pp_of(n) for n in range(13)]

    def test_wagner_sign_variant_counts_pairs(self):
        rows = genfun.expand_wagner_crank(12)
        assert rows[0] == 1
        assert [lp_eval_at_one(r) for r in rows] == [pp_of(n) for n in range(13)]
        assert bucket_sums(rows[2], 3) == [4, 4, 4]

    def test_printed_variant_differs(self):
        printed = genfun.expand_wagner_crank(6, printed=True)
        assert printed[0] == 1
        assert [lp_eval_at_one(r) for r in printed] != [pp_of(n) for n in range(7)]


class TestUnimodal:
    def test_weak(self):
        rows = genfun.expand_unimodal(3)
        assert rows[0] == 1
        assert lp_eval_at_one(rows[2]) == 3
        assert rows[3] == P({2: 1, 1: 1, 0: 2, -1: 1, -2: 1})

    def test_strict(self):
        rows = genfun.expand_strongly_unimodal(3)
        assert rows[1] == 1 and lp_eval_at_one(rows[3]) == 3

    def test_strict_degree_rule(self):
        from partpoly.roots import strongly_unimodal_degree

        rows = genfun.expand_strongly_unimodal(500)
        for n in range(1, 501):
            assert rows[n].max_exp == strongly_unimodal_degree(n)
        assert rows[200].max_exp == 18


class TestThook:
    @pytest.mark.parametrize("t", range(2, 12))
    def test_collapse_to_p(self, t):
        rows = genfun.expand_thook(t, N)
        assert [lp_eval_at_one(r) for r in rows] == p_n
        assert all(min(r.dense) >= 0 and r.min_exp >= 0 for r in rows)

    def test_t2_n4(self):
        # every partition of 4 has empty 2-core, hence exactly (4 - 0) / 2 even hooks
        assert genfun.expand_thook(2, 4)[4] == P({2: 5})

    def test_bad_t(self):
        with pytest.raises(ValueError):
            genfun.expand_thook(1, 3)


class TestParts:
    def test_f5(self):
        assert genfun.partition_parts_poly(5) == P({5: 1, 4: 1, 3: 2, 2: 2, 1: 1})
        assert genfun.partition_parts_poly(1) == P({1: 1})

    def test_sums(self):
        assert [lp_eval_at_one(genfun.partition_parts_poly(n)) for n in range(1, 51)] == p_n[1:51]


class TestTcoreCrank:
    def test_t5_n4_equidistributed(self):
        table = genfun.tcore_crank_table(5, 4)
        assert table.counts == {m: 1 for m in range(5)}

    def test_n0(self):
        assert genfun.tcore_crank_table(5, 0).counts == {0: 1}

    def test_t7_n5(self):
        counts = genfun.tcore_crank_table(7, 5).counts
        assert len(set(counts.values())) == 1 and sum(counts.values()) % 7 == 0

    def test_unsupported(self):
        with pytest.raises(UnsupportedModulus):
            genfun.tcore_crank_table(4, 3)


class TestStanton:
    def test_beta(self):
        assert [genfun.stanton_beta(l) for l in (5, 7, 11)] == [4, 5, 6]

    def test_crank_l5_n0(self):
        crank4 = genfun.expand_crank(4)[4]
        expected = crank4 + P({-1: 1, 4: -1, 1: 1, -4: -1})
        assert genfun.stanton_modified("crank", 5, 0) == expected

    def test_rank_l7_n0(self):
        rank5 = genfun.expand_rank(5)[5]
        expected = rank5 + P({3: 1, -4: -1, -3: 1, 4: -1})
        assert genfun.stanton_modified("rank", 7, 0) == expected

    def test_scope(self):
        with pytest.raises(OutOfScope):
            genfun.stanton_modified("rank", 11, 0)
        with pytest.raises(OutOfScope):
            genfun.stanton_modified("crank", 13, 0)


def test_symmetry_of_symmetric_families():
    for stat in Statistic:
        if stat.symmetric:
            for r in genfun.expand(stat, 40):
                assert lp_reverse(r) == r


def test_w_equals_one_collapse():
    assert [lp_eval_at_one(r) for r in genfun.expand("rank", N)] == p_n
    crank = [lp_eval_at_one(r) for r in genfun.expand("crank", N)]
    assert crank == p_n


def test_prefix_cache_consistent():
    long = genfun.expand("unimodal", 40)
    short = genfun.expand("unimodal", 10)
    assert short == long[:11]


def test_stat_table_round_trip():
    table = genfun.stat_table("rank", 5)
    assert table.total == 7
    assert genfun.StatTable.from_poly("rank", 5, table.as_poly()) == table
