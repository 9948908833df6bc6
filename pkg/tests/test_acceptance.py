"""Acceptance gate: one test per numbered criterion, run with `pytest -v`.

Each criterion appears as exactly one pass/fail line in verbose output.
Criterion 10 runs the full k=9 threshold-3 sweep (target: under an hour
serially); criterion 15 re-runs it partitioned to prove determinism and
parallel-serial equivalence, reusing the serial output via a module fixture.
The k=10 sweep (1031 expected records) is a documented optional long job,
deliberately excluded from this gate and marked as skipped.
"""

import itertools
import json
import random
import time

import pytest

from stampgaps.analysis import check_conjecture, classify_A, compute_h0
from stampgaps.core import StampSet
from stampgaps.derivation import build_graph
from stampgaps.enumeration import enumerate_sets
from stampgaps.propagation import classify_B
from stampgaps.render import gap_table_rows
from stampgaps.scanner import ScanJob, run_partitioned, scan
from stampgaps.verification import theorem_suite, verify_analysis

from conftest import (
    ALL_PROFILED,
    BIG_RISE_K10,
    COUNTER_K10,
    EQUALITY_K4,
    EXCEPTIONS_K9,
    EXTREME_H2,
    EXTREME_SPREAD,
    SPLIT_K10,
    STRUCTURE_K6,
    TALLEST_K10,
    WORKED_K4,
    WORKED_K4_TABLE,
    WORKED_K6,
    WORKED_K6_TABLE,
)
from helpers import random_base, to_plain
from oracles import brute_sets_with_h0, oracle_classify, oracle_h0


def profile(case):
    r = classify_A(StampSet(case.a))
    delta = tuple(r.delta[h] for h in range(r.h0, r.h2 + 1))
    rises = tuple(check_conjecture(r.delta, r.h0, r.h2))
    return r, delta, rises


def assert_case(case):
    r, delta, rises = profile(case)
    assert (r.h0, r.h1, r.h2, r.n0) == (case.h0, case.h1, case.h2, case.n0), case.a
    assert delta == case.delta, case.a
    assert rises == case.rises, case.a
    if case.end is not None:
        assert r.window_end == case.end, case.a
    return r


def assert_table(case, frozen_rows):
    r = classify_A(StampSet(case.a))
    rows = gap_table_rows(r)
    assert len(rows) == len(frozen_rows)
    for mine, want in zip(rows, frozen_rows):
        assert mine[:3] == want[:3], (mine, want)
        assert sorted(mine[3]) == sorted(want[3]), (mine, want)
    return rows


def test_criterion_01_worked_example_k4():
    start = time.perf_counter()
    assert_case(WORKED_K4)
    rows = assert_table(WORKED_K4, WORKED_K4_TABLE)
    elapsed = time.perf_counter() - start
    dual = [row for row in rows if row[2] == 58]
    assert len(dual) == 1 and len(dual[0][3]) == 2
    assert elapsed < 1.0, f"took {elapsed:.3f}s"
    print(f"criterion 1: PASS ({elapsed * 1000:.0f} ms)")


def test_criterion_02_worked_example_k6():
    assert_case(WORKED_K6)
    rows = assert_table(WORKED_K6, WORKED_K6_TABLE)
    triple = [row for row in rows if row[2] == 75]
    assert len(triple) == 1 and len(triple[0][3]) == 3
    print("criterion 2: PASS (19 rows)")


def test_criterion_03_equality_example():
    assert_case(EQUALITY_K4)
    print("criterion 3: PASS")


def test_criterion_04_structure_example():
    assert_case(STRUCTURE_K6)
    print("criterion 4: PASS")


def test_criterion_05_counter_example():
    r = assert_case(COUNTER_K10)
    assert check_conjecture(r.delta, r.h0, r.h2) == [5]
    print("criterion 5: PASS (rise at 5)")


def test_criterion_06_seven_exception_bases():
    assert len(EXCEPTIONS_K9) == 7
    for case in EXCEPTIONS_K9:
        r = assert_case(case)
        assert r.delta[3] == 9 and r.delta[4] == 10
    print("criterion 6: PASS (7 bases, d(4)=10 > d(3)=9)")


def test_criterion_07_k10_families():
    assert len(SPLIT_K10) == 4 and len(BIG_RISE_K10) == 4
    for case in SPLIT_K10:
        r = assert_case(case)
        assert r.h1 != r.h2
    lead = SPLIT_K10[0]
    assert lead.a == (1, 3, 5, 12, 13, 15, 34, 53, 70, 75)
    assert (lead.h1, lead.h2) == (8, 11)
    assert lead.delta == (26, 9, 10, 6, 4, 3, 1, 1, 1)
    for case in BIG_RISE_K10:
        r = assert_case(case)
        h = case.rises[0]
        assert r.delta[h] - r.delta[h - 1] > 1
    r = assert_case(TALLEST_K10)
    assert r.h2 == 18
    print("criterion 7: PASS (4 split + 4 big-rise + tallest)")


def test_criterion_08_extreme_spot_checks():
    spots = [
        ((1, 6, 41, 42), 35, 35),
        ((1, 7, 39, 44), 11, 15),
        ((1, 8, 11, 69, 70), 58, 58),
        ((1, 7, 12, 64, 69), 15, 24),
        ((1, 3, 10, 18, 22, 70, 73), 6, 16),
    ]
    for a, h1, h2 in spots:
        r = classify_A(StampSet(a))
        assert (r.h1, r.h2) == (h1, h2), a
    print("criterion 8: PASS (5 spot checks)")


def test_criterion_09_desk_scale_scans_clean():
    timings = []
    for k in range(4, 9):
        start = time.perf_counter()
        res = scan(ScanJob(k=k, h0=3))
        elapsed = time.perf_counter() - start
        assert res.summary.violations == 0, (k, 3)
        assert elapsed < 600, f"scan({k},3) took {elapsed:.0f}s"
        timings.append(f"({k},3) {elapsed:.1f}s")
        if k == 7:
            # extremes recomputed from the sweep: the documented spread
            # witness list is garbled in the source at this size
            assert res.summary.max_h2 == 23
            assert set(res.summary.max_h2_sets) == {
                (1, 3, 8, 10, 11, 34, 35), (1, 4, 7, 10, 11, 34, 35)}
            assert res.summary.max_spread == 5
            assert set(res.summary.max_spread_sets) == {
                (1, 3, 5, 12, 13, 32, 39), (1, 3, 7, 12, 22, 32, 43)}
    for h0 in range(3, 13):
        start = time.perf_counter()
        res = scan(ScanJob(k=4, h0=h0))
        elapsed = time.perf_counter() - start
        assert res.summary.violations == 0, (4, h0)
        assert elapsed < 600, f"scan(4,{h0}) took {elapsed:.0f}s"
        timings.append(f"(4,{h0}) {elapsed:.1f}s")
    print(f"criterion 9: PASS ({'; '.join(timings)})")


@pytest.fixture(scope="module")
def sweep93(tmp_path_factory):
    """Serial k=9, h0=3 sweep with records and checkpoint, shared by 10/15."""
    root = tmp_path_factory.mktemp("sweep93")
    out = root / "violations.jsonl"
    ckpt = root / "scan.ckpt"
    start = time.perf_counter()
    result = scan(ScanJob(k=9, h0=3, out=str(out), checkpoint=str(ckpt)))
    elapsed = time.perf_counter() - start
    return result, out, ckpt, elapsed


def test_criterion_10_rediscovery_k9(sweep93):
    result, out, ckpt, elapsed = sweep93
    assert elapsed < 3600, f"took {elapsed:.0f}s"
    assert result.summary.violations == 7
    found = {v.stamps for v in result.violations}
    assert found == {case.a for case in EXCEPTIONS_K9}
    lines = out.read_text().splitlines()
    assert len(lines) == 7
    assert [tuple(json.loads(l)["set"]) for l in lines] == sorted(found)
    print(f"criterion 10: PASS (7 violations, {elapsed:.0f}s serial)")


@pytest.mark.skip(
    reason="documented optional long job: the k=10 threshold-3 sweep "
    "(expected 1031 records) is outside the desk-scale gate; run via "
    "`stampgaps scan 10 3 --out ...` when wanted"
)
def test_criterion_10b_k10_sweep_optional():
    pass


def test_criterion_11_algorithm_equivalence():
    checked = 0
    for case in ALL_PROFILED:
        s = StampSet(case.a)
        assert classify_A(s) == classify_B(s), case.a
        checked += 1
    for a, *_ in EXTREME_H2 + EXTREME_SPREAD:
        s = StampSet(a)
        assert classify_A(s) == classify_B(s), a
        checked += 1
    rng = random.Random(20260814)
    for _ in range(1000):
        a = random_base(rng)
        s = StampSet(tuple(a))
        assert classify_A(s) == classify_B(s), a
        checked += 1
    print(f"criterion 11: PASS ({checked} bases)")


def test_criterion_12_oracle_equivalence():
    compared = 0
    for combo in itertools.combinations(range(2, 26), 3):
        a = (1,) + combo
        if oracle_h0(a) > 6:
            continue
        want = oracle_classify(a)
        for classify in (classify_A, classify_B):
            r = classify(StampSet(a))
            assert (r.h0, r.n0, r.h1, r.h2) == (
                want["h0"], want["n0"], want["h1"], want["h2"]), a
            assert r.window_end == want["end"], a
            assert to_plain(r) == want["classes"], a
            assert r.delta == want["delta"], a
        compared += 1
    assert compared > 500
    print(f"criterion 12: PASS ({compared} bases vs table oracle)")


def test_criterion_13_theorem_suite():
    rng = random.Random(13)
    bases = [case.a for case in ALL_PROFILED]
    bases += [a for a, *_ in EXTREME_H2 + EXTREME_SPREAD]
    bases += [tuple(random_base(rng)) for _ in range(150)]
    for a in bases:
        r = classify_A(StampSet(a))
        for check in verify_analysis(r) + theorem_suite(r):
            assert check.passed, (a, check.name, check.detail)
    # every derivation edge lands exactly one level down, on a real gap
    for case in ALL_PROFILED:
        r = classify_A(StampSet(case.a))
        graph = build_graph(r)
        for e in graph.edges:
            child = r.classes[e.child]
            assert child.kind == "m-gap" and child.m == e.m - 1, (case.a, e)
    print(f"criterion 13: PASS ({len(bases)} bases)")


def test_criterion_14_enumeration_regression():
    # the historical failure class: bases with a2 equal to the threshold
    for k, h0 in [(3, 3), (3, 4), (4, 3), (4, 4)]:
        visited = []
        enumerate_sets(k, h0, lambda a, n0: visited.append(a))
        assert any(a[1] == h0 for a in visited), (k, h0)
        for a in visited[:: max(1, len(visited) // 40)]:
            assert compute_h0(StampSet(a))[0] == h0, a
    # full agreement with definition-level brute force
    for k in (2, 3, 4):
        for h0 in (2, 3, 4, 5):
            mine = []
            enumerate_sets(k, h0, lambda a, n0: mine.append(a))
            assert mine == brute_sets_with_h0(k, h0), (k, h0)
    print("criterion 14: PASS")


def test_criterion_15_determinism_partition_resume(sweep93, tmp_path):
    result, out, ckpt, _ = sweep93
    serial_bytes = out.read_bytes()

    # resuming a completed job must reproduce the output byte for byte
    resumed = scan(
        ScanJob(k=9, h0=3, out=str(out), checkpoint=str(ckpt), resume=True)
    )
    assert out.read_bytes() == serial_bytes
    assert resumed.summary.violations == 7
    assert resumed.summary.cells_skipped == resumed.summary.cells_total
    assert resumed.summary.sets == 0

    # an independent partitioned pass must merge to the identical stream
    merged_out = tmp_path / "merged.jsonl"
    merged = run_partitioned(ScanJob(k=9, h0=3, out=str(merged_out)), workers=3)
    assert merged_out.read_bytes() == serial_bytes
    assert merged.summary.violations == 7
    assert merged.summary.sets == result.summary.sets
    assert merged.summary.max_h2 == result.summary.max_h2
    print("criterion 15: PASS (resume identical; 3-way partition identical)")
