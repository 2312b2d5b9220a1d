"""Acceptance suite: one test per verification target, each printing a
PASS/FAIL line (run pytest with -s to see them on success). All comparisons
are exact; the stated time budgets are asserted where the target names one.
"""
from __future__ import annotations

import time
from itertools import permutations
from math import factorial

from chiptopple import bijections, families, polybernoulli
from chiptopple.core import (
    format_configuration,
    left_record_values,
    reverse_complement,
    reverse_complement_perm,
    right_record_values,
)
from chiptopple.engine import resultant
from chiptopple.families import CallanWord
from chiptopple.harness import (
    brute_T,
    brute_all_r_toppleable,
    brute_count_toppleable,
    enumerate_configurations,
    marked_class_table,
    resultant_counts_marked,
    resultant_table,
    schedule_independence,
)

B_TABLE = [
    [1, 1, 1, 1, 1, 1],
    [1, 2, 4, 8, 16, 32],
    [1, 4, 14, 46, 146, 454],
    [1, 8, 46, 230, 1066, 4718],
    [1, 16, 146, 1066, 6902, 41506],
    [1, 32, 454, 4718, 41506, 329462],
]
C_TABLE = [
    [1, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 1, 1],
    [1, 3, 7, 15, 31, 63],
    [1, 7, 31, 115, 391, 1267],
    [1, 15, 115, 675, 3451, 16275],
    [1, 31, 391, 3451, 25231, 164731],
]


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")


def _secs(elapsed: float) -> str:
    return f"{elapsed:.2f}s"


def test_criterion_01_poly_bernoulli_tables():
    start = time.perf_counter()
    tables_ok = all(
        polybernoulli.b_number(n, k) == B_TABLE[n][k]
        and polybernoulli.c_number(n, k) == C_TABLE[n][k]
        for n in range(6)
        for k in range(6)
    )
    methods_ok = all(
        len({polybernoulli.poly_bernoulli_B(n, k, m) for m in polybernoulli.METHODS}) == 1
        and len({polybernoulli.poly_bernoulli_C(n, k, m) for m in polybernoulli.METHODS}) == 1
        for n in range(13)
        for k in range(13)
    )
    elapsed = time.perf_counter() - start
    # the printed B(4,4) reads 6906; every method gives 6902, asserted here
    b44_documented = polybernoulli.b_number(4, 4) == 6902
    ok = tables_ok and methods_ok and b44_documented and elapsed < 1.0
    _report(
        "criterion 1 (poly-Bernoulli tables, three methods)",
        ok,
        f"tables exact, methods agree 0..12, B(4,4)=6902 vs printed 6906, {_secs(elapsed)}",
    )
    assert tables_ok and methods_ok and b44_documented
    assert elapsed < 1.0


def test_criterion_02_toppleable_configuration_counts():
    rows: dict[int, tuple[int, ...]] = {}
    ok = True
    elapsed_n7 = 0.0
    for n in range(1, 8):
        start = time.perf_counter()
        row = []
        for p in range(1, n + 1):
            formula = polybernoulli.count_toppleable_configs(n, p)
            simulated = brute_count_toppleable(n, p, "simulate")
            window = brute_count_toppleable(n, p, "characterize")
            if not (formula == simulated == window):
                ok = False
            row.append(formula)
        rows[n] = tuple(row)
        if n == 7:
            elapsed_n7 = time.perf_counter() - start
    verbatim = rows[1] == (1,) and rows[2] == (2, 2) and rows[3] == (4, 7, 4)
    printed_row_4 = (16, 73, 115, 73, 16)
    printed_row_5 = (32, 227, 533, 533, 227, 32)
    shifted = rows[5] == printed_row_4 and rows[6] == printed_row_5
    budget = elapsed_n7 < 30.0
    _report(
        "criterion 2 (toppleable counts, n<=7, two oracles)",
        ok and verbatim and shifted and budget,
        f"rows n<=3 verbatim; printed rows labelled 4,5 match computed n=5,6 "
        f"(documented off-by-one); n=7 in {_secs(elapsed_n7)}",
    )
    assert ok and verbatim and shifted
    assert budget


def test_criterion_03_rp_toppleable_tables():
    start = time.perf_counter()
    expected = {
        4: ((8, 4, 2, 1, 1), (14, 10, 7, 7, 8), (8, 7, 7, 10, 14), (1, 1, 2, 4, 8)),
        5: (
            (16, 8, 4, 2, 1, 1),
            (46, 32, 22, 15, 15, 16),
            (46, 38, 31, 31, 38, 46),
            (16, 15, 15, 22, 32, 46),
            (1, 1, 2, 4, 8, 16),
        ),
    }
    ok = True
    for n, table in expected.items():
        for p in range(1, n + 1):
            for r in range(1, n + 2):
                want = table[p - 1][r - 1]
                if brute_T(n, p, r) != want:
                    ok = False
                if polybernoulli.count_rp_toppleable(n, p, r, "delta") != want:
                    ok = False
                if polybernoulli.count_rp_toppleable(n, p, r, "c_sum") != want:
                    ok = False
    elapsed = time.perf_counter() - start
    _report(
        "criterion 3 ((r,p)-toppleable tables, three ways)",
        ok and elapsed < 5.0,
        f"n=4 and n=5 tables exact by brute force, difference formula and C sums, {_secs(elapsed)}",
    )
    assert ok
    assert elapsed < 5.0


def test_criterion_04_all_r_toppleable():
    ok = all(
        brute_all_r_toppleable(n, p) == polybernoulli.count_all_r_toppleable(n, p)
        for n in range(1, 8)
        for p in range(1, n + 1)
    )
    spot = brute_all_r_toppleable(4, 2) == 7
    _report(
        "criterion 4 (all-r toppleable counts)",
        ok and spot,
        "brute count equals C(p,n-p) for n<=7, including n=4,p=2 -> 7",
    )
    assert ok and spot


S32_FIBERS = {
    (1, 2, 3, 4): {"1,(2,3),4", "1,(2,4),3", "1,(3,4),2", "2,(1,3),4", "2,(1,4),3", "3,(1,2),4", "3,(1,4),2"},
    (1, 2, 4, 3): {"4,(1,2),3", "4,(1,3),2"},
    (2, 1, 3, 4): {"2,(3,4),1", "3,(2,4),1"},
    (2, 1, 4, 3): {"4,(2,3),1"},
}


def test_criterion_05_resultant_structure():
    start = time.perf_counter()
    ok = True
    for n in range(1, 8):
        for p in range(1, n + 1):
            fibers: dict[tuple[int, ...], int] = {}
            for config in enumerate_configurations(n, p):
                perm, _ = resultant(config)
                fibers[perm] = fibers.get(perm, 0) + 1
            expected_support = {
                perm
                for perm in permutations(range(1, n + 2))
                if set(perm[: n + 1 - p]) == set(range(1, n + 2 - p))
            }
            if set(fibers) != expected_support:
                ok = False
            by_class: dict[tuple[int, int], set[int]] = {}
            for perm, size in fibers.items():
                cut = n + 1 - p
                key = (
                    len(left_record_values(perm[:cut])),
                    len(right_record_values(perm[cut:])),
                )
                by_class.setdefault(key, set()).add(size)
            for (i, j), sizes in by_class.items():
                if sizes != {polybernoulli.count_resultant_class(i, j)}:
                    ok = False
    observed = {
        perm: {
            format_configuration(config)
            for config in enumerate_configurations(3, 2)
            if resultant(config)[0] == perm
        }
        for perm in S32_FIBERS
    }
    fibers_ok = observed == S32_FIBERS
    array_ok = resultant_table(6, 2).counts == ((1, 2), (2, 7), (4, 23), (8, 73))
    elapsed = time.perf_counter() - start
    good = ok and fibers_ok and array_ok and elapsed < 60.0
    _report(
        "criterion 5 (resultant structure)",
        good,
        f"support, class constancy and B(i,j)/2 fibers for n<=7; exact S(3,2) fibers; "
        f"S_6/p=2 class array; {_secs(elapsed)}",
    )
    assert ok and fibers_ok and array_ok
    assert elapsed < 60.0


def test_criterion_06_marked_resultants():
    grouped, fibers22 = marked_class_table(6, 2, 2)
    table22 = tuple(
        tuple(grouped[(a, b, k)] for k in (1, 2)) for (a, b) in ((0, 1), (0, 2), (1, 1), (1, 2))
    )
    t22_ok = table22 == ((2, 4), (4, 14), (2, 10), (4, 32))
    t3_ok = True
    for r in (3, 4):
        fibers = resultant_counts_marked(6, 3, r)
        matrix: dict[tuple[int, int], set[int]] = {}
        for perm, size in fibers.items():
            key = (
                len(left_record_values(perm[:3])),
                len(right_record_values(perm[3:])),
            )
            matrix.setdefault(key, set()).add(size)
        built = tuple(tuple(matrix[(i, j)].copy().pop() for j in (1, 2, 3)) for i in (1, 2, 3))
        if built != ((1, 1, 1), (1, 3, 7), (1, 7, 31)):
            t3_ok = False
        if sum(fibers.values()) != factorial(5):
            t3_ok = False
    formula_ok = all(
        size == polybernoulli.count_N_pi(perm, 2, 2) for perm, size in fibers22.items()
    )
    conservation_ok = all(
        sum(resultant_counts_marked(7, p, r).values()) == factorial(6)
        for (p, r) in ((2, 2), (3, 3))
    )
    ok = t22_ok and t3_ok and formula_ok and conservation_ok
    _report(
        "criterion 6 (marked resultant tables)",
        ok,
        "p=r=2 table (2,4;4,14;2,10;4,32), p=3 r=3,4 table (1,1,1;1,3,7;1,7,31), "
        "difference formula per fiber, sum over resultants of S_7 fibers = 6!",
    )
    assert ok


def test_criterion_07_determinism_and_symmetry():
    runs = 0
    for n in range(1, 7):
        for p in range(1, n + 1):
            runs += schedule_independence(n, p, seeds=100)
    symmetric = True
    for n in range(1, 7):
        for p in range(1, n + 1):
            for config in enumerate_configurations(n, p):
                perm, _ = resultant(config)
                mirrored, _ = resultant(reverse_complement(config))
                if mirrored != reverse_complement_perm(perm):
                    symmetric = False
    ok = symmetric  # schedule_independence raises on any disagreement
    _report(
        "criterion 7 (determinism and symmetry)",
        ok,
        f"{runs} random runs (100 seeds per configuration, n<=6) matched the pass "
        "schedule; reverse-complement conjugation commutes with the resultant",
    )
    assert ok


def test_criterion_08_bijections():
    word = CallanWord(
        values=(5, 7, 12, 11, 1, 4, 8, 14, 3, 6, 9, 15, 13, 10, 2), underlined=9, overlined=6
    )
    worked = bijections.callan_to_vesztergombi(word) == (
        1, 6, 4, 8, 7, 10, 12, 11, 13, 3, 2, 9, 5, 14, 15,
    )
    roundtrip_ok = True
    for total in range(2, 8):
        for u in range(1, total):
            o = total - u
            words = [
                CallanWord(values=w, underlined=u, overlined=o)
                for w in families.enumerate_family("callan", underlined=u, overlined=o)
            ]
            if len(words) != polybernoulli.b_number(u, o):
                roundtrip_ok = False
            images = [bijections.callan_to_vesztergombi(w) for w in words]
            if sorted(images) != sorted(families.enumerate_family("vesztergombi", k=u, n=o)):
                roundtrip_ok = False
            for w, sigma in zip(words, images):
                if bijections.vesztergombi_to_callan(sigma, u, o).values != w.values:
                    roundtrip_ok = False
    phi_ok = True
    for n in range(1, 6):
        for p in range(1, n + 1):
            fibers: dict[tuple[int, ...], list] = {}
            for config in enumerate_configurations(n, p):
                perm, _ = resultant(config)
                fibers.setdefault(perm, []).append(config)
            for perm, members in fibers.items():
                cut = n + 1 - p
                i = len(left_record_values(perm[:cut]))
                j = len(right_record_values(perm[cut:]))
                if len(members) != polybernoulli.b_number(i, j) // 2:
                    phi_ok = False
                for config in members:
                    reduced = bijections.phi(config, perm)
                    if bijections.phi_inverse(reduced, perm, p) != config:
                        phi_ok = False
    ok = worked and roundtrip_ok and phi_ok
    _report(
        "criterion 8 (bijections)",
        ok,
        "Callan/Vesztergombi roundtrip for sizes <= 7 with counts B(U,O); worked "
        "15-element example bit-exact; record-skeleton reduction round-trips all of "
        "S(n,p) for n <= 5 with fibers B(i,j)/2",
    )
    assert ok


def test_criterion_09_family_counts():
    families_ok = True
    for total in range(2, 9):
        for k in range(1, total):
            n = total - k
            if families.count_family("vesztergombi", k=k, n=n) != polybernoulli.b_number(n, k):
                families_ok = False
            if families.count_family("window_c", n=n, k=k) != polybernoulli.c_number(n, k):
                families_ok = False
            if families.count_family("excedance_set", n=n, k=k) != polybernoulli.c_number(n, k):
                families_ok = False
            first_underlined = sum(
                families.count_family("callan_first", underlined=k, overlined=n, first=r)
                for r in range(1, k + 1)
            )
            if first_underlined != polybernoulli.c_number(k, n):
                families_ok = False
    ao_ok = True
    for n in range(1, 17):
        for k in range(n, 17):
            if n * k > 16:
                continue
            if families.count_acyclic_orientations(n, k) != polybernoulli.b_number(n, k):
                ao_ok = False
    anywhere = families.count_acyclic_orientations(2, 2, "unique_sink_anywhere")
    fixed = families.count_acyclic_orientations(2, 2, "unique_sink_fixed_vertex")
    ok = families_ok and ao_ok
    _report(
        "criterion 9 (family counts)",
        ok,
        f"Vesztergombi=B, Callan-first-underlined=C, excedance-set=C, window=C for "
        f"sizes <= 8; AO(all)=B for nk <= 16; documented finding: unique-sink AOs of "
        f"K_2,2 give {anywhere} (anywhere) and {fixed} (fixed vertex), neither equals "
        f"C(2,2)={polybernoulli.c_number(2, 2)}",
    )
    assert ok
