import json
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chiptopple.families import CapExceeded
from chiptopple.harness import (
    DOCUMENTED,
    MATCH,
    MISMATCH,
    brute_T,
    brute_all_r_toppleable,
    brute_count_toppleable,
    configuration_count,
    enumerate_configurations,
    iter_permutations,
    marked_class_table,
    rank_permutation,
    resultant_counts_marked,
    resultant_table,
    schedule_independence,
    unrank_permutation,
    verify_identities,
)
from conftest import oracle_configurations


class TestRanking:
    def test_unrank_first_and_last(self):
        assert unrank_permutation((1, 2, 3), 0) == (1, 2, 3)
        assert unrank_permutation((1, 2, 3), 5) == (3, 2, 1)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            unrank_permutation((1, 2), 2)

    @given(st.integers(1, 6), st.data())
    @settings(max_examples=60)
    def test_roundtrip(self, n, data):
        rank = data.draw(st.integers(0, factorial(n) - 1))
        perm = unrank_permutation(tuple(range(1, n + 1)), rank)
        assert rank_permutation(perm) == rank

    def test_iteration_matches_itertools(self):
        assert list(iter_permutations(4)) == [
            tuple(p) for p in permutations(range(1, 5))
        ]

    def test_chunks_cover_everything(self):
        full = list(iter_permutations(5))
        chunked = [
            perm
            for lo in range(0, 120, 17)
            for perm in iter_permutations(5, lo, min(lo + 17, 120))
        ]
        assert chunked == full


class TestEnumerateConfigurations:
    @pytest.mark.parametrize("n,p,total", [(3, 2, 12), (1, 1, 1), (4, 2, 60)])
    def test_counts(self, n, p, total):
        configs = list(enumerate_configurations(n, p))
        assert len(configs) == total == configuration_count(n)
        assert len(set(configs)) == total

    @pytest.mark.parametrize("n,p", [(n, p) for n in range(1, 5) for p in range(1, n + 1)])
    def test_matches_oracle(self, n, p):
        assert set(enumerate_configurations(n, p)) == set(oracle_configurations(n, p))

    def test_range_slicing(self):
        full = list(enumerate_configurations(4, 3))
        pieces = [
            config
            for lo in range(0, 60, 13)
            for config in enumerate_configurations(4, 3, lo, min(lo + 13, 60))
        ]
        assert pieces == full

    def test_cap(self):
        with pytest.raises(CapExceeded):
            next(enumerate_configurations(8, 1))


class TestBruteCounts:
    def test_toppleable_examples(self):
        assert brute_count_toppleable(3, 2) == 7
        assert brute_count_toppleable(2, 1) == 2
        assert brute_count_toppleable(5, 3) == 115

    def test_both_oracles_agree(self):
        for n in range(1, 6):
            for p in range(1, n + 1):
                assert brute_count_toppleable(n, p, "simulate") == brute_count_toppleable(
                    n, p, "characterize"
                )

    def test_unknown_oracle(self):
        with pytest.raises(ValueError):
            brute_count_toppleable(2, 1, "tea-leaves")

    def test_parallel_matches_serial(self):
        assert brute_count_toppleable(5, 2, jobs=2) == brute_count_toppleable(5, 2)
        assert brute_T(5, 2, 3, jobs=2) == 22

    def test_T_examples(self):
        assert brute_T(5, 2, 3) == 22
        # row p=3 of the n=4 table reads (8, 7, 7, 10, 14); r=5 is its last entry
        assert brute_T(4, 3, 5) == 14
        assert brute_T(5, 1, 1) == 16

    def test_all_r(self):
        assert brute_all_r_toppleable(4, 2) == 7

    def test_perm_cap(self):
        with pytest.raises(CapExceeded):
            brute_T(9, 1, 1)


class TestResultantTable:
    def test_s6_p2(self):
        table = resultant_table(6, 2)
        assert table.counts == ((1, 2), (2, 7), (4, 23), (8, 73))

    def test_s4_p2_with_fibers(self):
        table = resultant_table(4, 2, include_fibers=True)
        assert table.counts == ((1, 2), (2, 7))
        assert table.fibers[(1, 2, 3, 4)] == 7
        assert table.fibers[(2, 1, 4, 3)] == 1
        assert sum(table.fibers.values()) == configuration_count(3)

    def test_trivial(self):
        assert resultant_table(2, 1).counts == ((1,),)

    def test_p_range(self):
        with pytest.raises(ValueError):
            resultant_table(4, 4)


class TestMarkedCounts:
    def test_identity_fiber_is_toppleable_count(self):
        fibers = resultant_counts_marked(6, 2, 2)
        assert fibers[(1, 2, 3, 4, 5, 6)] == 32
        assert sum(fibers.values()) == factorial(5)

    def test_p3_both_r(self):
        for r in (3, 4):
            fibers = resultant_counts_marked(6, 3, r)
            assert fibers[(1, 2, 3, 4, 5, 6)] == 31
            assert sum(fibers.values()) == factorial(5)
        assert resultant_counts_marked(6, 3, 3) == resultant_counts_marked(6, 3, 4)

    def test_class_table(self):
        grouped, fibers = marked_class_table(6, 2, 2)
        assert grouped == {
            (0, 1, 1): 2, (0, 1, 2): 4, (0, 2, 1): 4, (0, 2, 2): 14,
            (1, 1, 1): 2, (1, 1, 2): 10, (1, 2, 1): 4, (1, 2, 2): 32,
        }
        assert sum(fibers.values()) == factorial(5)

    def test_class_table_mirrored_r(self):
        # r above the prefix is classified through the mirrored instance
        assert marked_class_table(6, 3, 4)[0] == marked_class_table(6, 3, 3)[0]

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            resultant_counts_marked(6, 6, 1)


def test_schedule_independence_counts_runs():
    assert schedule_independence(3, 2, 4) == 12 * 4


class TestVerifyReport:
    def test_small_run_is_clean(self):
        report = verify_identities(n_max=3, seeds=2)
        assert report.ok
        summary = report.summary()
        assert summary[MISMATCH] == 0
        assert summary[MATCH] > 50
        assert summary[DOCUMENTED] >= 4

    def test_json_round_trips(self):
        report = verify_identities(n_max=2, seeds=1)
        payload = json.loads(report.to_json())
        assert payload["ok"] is True
        assert payload["summary"]["mismatch"] == 0
        assert {item["status"] for item in payload["items"]} <= {
            "match", "mismatch", "documented-discrepancy"
        }

    def test_text_format_mentions_counts(self):
        report = verify_identities(n_max=2, seeds=1)
        text = report.format_text()
        assert "matched" in text and "documented" in text
