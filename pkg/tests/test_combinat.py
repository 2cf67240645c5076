from collections import Counter

import pytest

from partpoly import combinat as C
from partpoly import genfun
from partpoly.cyclo import bucket_sums
from partpoly.genfun import UnsupportedModulus


class TestEnumeration:
    def test_counts(self):
        assert sum(1 for _ in C.enum_partitions(5)) == 7
        assert sum(1 for _ in C.enum_partitions(10)) == 42
        assert list(C.enum_partitions(0)) == [()]

    def test_each_once_and_sorted(self):
        parts = list(C.enum_partitions(12))
        assert len(parts) == len(set(parts)) == 77
        assert all(list(p) == sorted(p, reverse=True) and sum(p) == 12 for p in parts)

    def test_distinct(self):
        got = sorted(C.enum_distinct_partitions(10))
        assert len(got) == 10
        assert all(len(set(p)) == len(p) for p in got)
        assert sorted(C.enum_distinct_partitions(7, smallest=2)) == [(4, 3), (5, 2), (7,)]

    def test_partition_numbers(self):
        assert C.partition_numbers(10) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
        assert C.partition_numbers(200)[200] == 3972999029388

    def test_overpartitions(self):
        assert sum(1 for _ in C.enum_overpartitions(1)) == 2
        assert sum(1 for _ in C.enum_overpartitions(3)) == 8


class TestStatistics:
    def test_rank(self):
        assert C.rank_of((3, 1, 1)) == 0
        assert C.rank_of((5,)) == 4

    def test_crank(self):
        assert C.crank_of((2, 1, 1, 1)) == -3
        assert C.crank_of((4,)) == 4
        assert C.crank_of((3, 1)) == 1 - 1
        with pytest.raises(ValueError):
            C.crank_of(())

    def test_hooks(self):
        assert sorted(C.hook_lengths((2, 2))) == [1, 2, 2, 3]
        assert C.conjugate((3, 1)) == (2, 1, 1)

    def test_tcore(self):
        assert C.oracle_tcore_count(5, 4) == 5
        assert C.is_tcore((2, 1), 2) and not C.is_tcore((2,), 2)

    def test_counts(self):
        assert C.spt_of(3) == 5
        assert C.p_of(5) == 7
        assert C.pp_of(2) == 12


class TestPhi2:
    def test_empty(self):
        assert C.phi2((), 5) == (0,) * 5

    def test_not_a_core(self):
        with pytest.raises(C.NotATCore):
            C.phi2((5,), 5)

    def test_five_cores_of_four(self):
        vecs = {C.phi2(p, 5) for p in C.enum_partitions(4)}
        assert len(vecs) == 5
        for v in vecs:
            assert sum(v) == 0
            assert 5 * sum(x * x for x in v) // 2 + sum(i * x for i, x in enumerate(v)) == 4

    @pytest.mark.parametrize("t", [5, 7, 11])
    def test_round_trip_and_size_identity(self, t):
        for n in range(21):
            for lam in C.enum_partitions(n):
                if not C.is_tcore(lam, t):
                    continue
                v = C.phi2(lam, t)
                assert sum(v) == 0
                assert t * sum(x * x for x in v) + 2 * sum(i * x for i, x in enumerate(v)) == 2 * n
                assert C.phi2_inverse(v, t) == lam

    def test_inverse_validates(self):
        with pytest.raises(ValueError):
            C.phi2_inverse((1, 0, 0, 0, 0), 5)


class TestOracles:
    def test_rank5(self):
        assert C.oracle_rank(5).counts == {m: 1 for m in (-4, -2, -1, 0, 1, 2, 4)}
        assert C.oracle_rank(0).counts == {0: 1}

    def test_crank5_buckets(self):
        poly = C.oracle_crank(5).as_poly()
        assert len(set(bucket_sums(poly, 5))) > 1  # 5 is not 4 mod 5
        assert len(set(bucket_sums(C.oracle_crank(4).as_poly(), 5))) == 1

    def test_rank_symmetry(self):
        for n in range(1, 25):
            c = C.oracle_rank(n).counts
            assert all(c[m] == c.get(-m, 0) for m in c)

    def test_spt(self):
        assert C.oracle_spt_crank(3).total == 5
        assert C.oracle_spt_crank(1).counts == {0: 1}
        assert len(set(bucket_sums(C.oracle_spt_crank(6).as_poly(), 13))) > 1

    def test_orank(self):
        t = C.oracle_orank(2)
        assert t.total == 12
        assert bucket_sums(t.as_poly(), 3) == [4, 4, 4]
        assert C.oracle_orank(0).total == 1

    def test_unimodal(self):
        assert C.oracle_unimodal(3).counts == {-2: 1, -1: 1, 0: 2, 1: 1, 2: 1}
        assert C.oracle_unimodal(3, strict=True).total == 3
        assert C.oracle_unimodal(1, strict=True).counts == {0: 1}

    def test_thook_totals(self):
        for t in (2, 3, 4):
            assert C.oracle_thook(t, 9).total == 30

    def test_tcore_crank(self):
        assert C.oracle_tcore_crank(5, 4).counts == {m: 1 for m in range(5)}
        assert C.oracle_tcore_crank(5, 0).counts == {0: 1}
        counts = C.oracle_tcore_crank(11, 6).counts
        assert len(counts) == 11 and len(set(counts.values())) == 1
        with pytest.raises(UnsupportedModulus):
            C.oracle_tcore_crank(6, 3)


class TestOracleEquivalence:
    """Expanders against enumeration over the feasible ranges."""

    def test_rank_crank(self):
        rank = genfun.expand("rank", 40)
        crank = genfun.expand("crank", 40)
        for n in range(2, 41):
            assert rank[n].coeffs == C.oracle_rank(n).counts
            assert crank[n].coeffs == C.oracle_crank(n).counts

    def test_spt(self):
        rows = genfun.expand("spt-crank", 25)
        for n in range(1, 26):
            assert rows[n].coeffs == C.oracle_spt_crank(n).counts

    def test_orank(self):
        rows = genfun.expand("orank", 20)
        for n in range(21):
            assert rows[n].coeffs == C.oracle_orank(n).counts

    @pytest.mark.parametrize("strict", [False, True])
    def test_unimodal(self, strict):
        rows = genfun.expand("strongly-unimodal" if strict else "unimodal", 25)
        for n in range(26):
            assert rows[n].coeffs == C.oracle_unimodal(n, strict=strict).counts

    @pytest.mark.parametrize("t", [2, 3, 4, 5, 7])
    def test_thook(self, t):
        rows = genfun.expand_thook(t, 30)
        for n in range(31):
            assert rows[n].coeffs == C.oracle_thook(t, n).counts

    @pytest.mark.parametrize("t", [5, 7, 11])
    def test_tcore_crank(self, t):
        for n in range(21):
            assert genfun.tcore_crank_table(t, n).counts == C.oracle_tcore_crank(t, n).counts
            assert sum(genfun.tcore_crank_table(t, n).counts.values()) == C.oracle_tcore_count(t, n)


def test_crank_n1_gap():
    # the combinatorial crank of (1) is -1; the generating function row is w - 1 + 1/w
    assert C.oracle_crank(1).counts == {-1: 1}
    assert genfun.expand("crank", 1)[1].coeffs == {-1: 1, 0: -1, 1: 1}


def test_parts_poly_matches_enumeration():
    for n in range(1, 16):
        counts = Counter(len(p) for p in C.enum_partitions(n))
        assert genfun.partition_parts_poly(n).coeffs == dict(counts)
