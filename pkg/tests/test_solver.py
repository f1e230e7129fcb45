from fractions import Fraction

import pytest

from ldt.geometry import Sign, Vector, ground_truth_pattern
from ldt.oracle import HiddenPointOracle
from ldt.problems import encode_ksum
from ldt.solver import SolveConfig, SolverStalledError, ceil_mul_log2, decide, solve


def test_ceil_mul_log2_frozen_parameters():
    # k-SUM indicator families have w = 1, so q = n + 2
    assert ceil_mul_log2(Fraction(2 * 16), Fraction(18)) == 134
    assert ceil_mul_log2(Fraction(2 * 32), Fraction(34)) == 326
    assert ceil_mul_log2(Fraction(2 * 24), Fraction(26)) == 226
    assert ceil_mul_log2(Fraction(2 * 8), Fraction(10)) == 54


def test_ceil_mul_log2_exact_power_boundary():
    # 28 * log2(16) = 112 exactly; ceiling must not round up
    assert ceil_mul_log2(Fraction(28), Fraction(16)) == 112
    assert ceil_mul_log2(Fraction(1), Fraction(2)) == 1
    assert ceil_mul_log2(Fraction(3), Fraction(4)) == 6


def test_ceil_mul_log2_rational_arguments():
    # 3/2 * log2(8) = 4.5 -> 5
    assert ceil_mul_log2(Fraction(3, 2), Fraction(8)) == 5


def test_solve_frozen_instance():
    values = [5, -1, -4, 7, 2, 9]
    enc = encode_ksum([Fraction(v) for v in values], 3)
    oracle = HiddenPointOracle(enc.hidden)
    report = solve(enc.family, oracle, SolveConfig(seed=0))
    assert decide(report) is True
    truth = ground_truth_pattern(enc.family, enc.hidden)
    for i in range(len(enc.family)):
        assert report.pattern[i] is truth[i]
    assert report.total_queries == oracle.ledger.total


def test_solve_unique_zero_triple():
    # only 1 + 2 - 3 vanishes
    enc = encode_ksum([Fraction(v) for v in (1, 2, -3, 7, 11, 13)], 3)
    oracle = HiddenPointOracle(enc.hidden)
    report = solve(enc.family, oracle, SolveConfig(seed=5))
    zeros = [i for i in range(len(enc.family)) if report.pattern[i] is Sign.ZERO]
    assert len(zeros) == 1
    assert enc.meta["subsets"][zeros[0]] == (0, 1, 2)


def test_solve_rejects_empty_and_mixed_dims():
    oracle = HiddenPointOracle(Vector([1]))
    with pytest.raises(ValueError):
        solve([], oracle)
    with pytest.raises(ValueError):
        solve([Vector([1]), Vector([1, 2])], HiddenPointOracle(Vector([1])))


def test_solve_handles_duplicates_and_zero_vector():
    secret = Vector([2, -1])
    family = [
        Vector([1, 0]),
        Vector([1, 0]),  # duplicate: one query must serve both
        Vector([0, 0]),  # zero vector: no query at all
        Vector([0, 1]),
    ]
    oracle = HiddenPointOracle(secret)
    report = solve(family, oracle, SolveConfig(seed=0))
    assert report.pattern[0] is Sign.PLUS
    assert report.pattern[1] is Sign.PLUS
    assert report.pattern[2] is Sign.ZERO
    assert report.pattern[3] is Sign.MINUS
    assert oracle.ledger.label_count == 2


def test_solve_deterministic_per_seed():
    enc = encode_ksum([Fraction(v) for v in range(1, 17)], 3)
    reports = []
    for _ in range(2):
        oracle = HiddenPointOracle(enc.hidden)
        reports.append(solve(enc.family, oracle, SolveConfig(seed=9)))
    a, b = reports
    assert a.label_queries == b.label_queries
    assert a.comparison_queries == b.comparison_queries
    assert [r.inferred for r in a.rounds] == [r.inferred for r in b.rounds]
    assert all(a.pattern[i] is b.pattern[i] for i in range(len(enc.family)))


def test_seeds_change_queries_not_answers():
    enc = encode_ksum([Fraction(v) for v in range(1, 17)], 3)
    totals = set()
    patterns = set()
    for seed in range(4):
        oracle = HiddenPointOracle(enc.hidden)
        report = solve(enc.family, oracle, SolveConfig(seed=seed))
        totals.add(report.total_queries)
        patterns.add(
            "".join(report.pattern[i].char for i in range(len(enc.family)))
        )
    assert len(patterns) == 1
    assert len(totals) > 1  # randomness shows up in cost only


def test_sample_constant_shrinks_sample():
    enc = encode_ksum([Fraction(v) for v in range(1, 17)], 3)
    oracle = HiddenPointOracle(enc.hidden)
    small = solve(enc.family, oracle, SolveConfig(seed=0, sample_constant=Fraction(1, 2)))
    assert small.d_estimate == 34  # 16/2 * log2(18) rounded up
    truth = ground_truth_pattern(enc.family, enc.hidden)
    assert all(small.pattern[i] is truth[i] for i in range(len(enc.family)))


def test_strict_mode_round_trip():
    enc = encode_ksum([Fraction(v) for v in range(1, 17)], 3)
    oracle = HiddenPointOracle(enc.hidden, strict_family=enc.family)
    report = solve(enc.family, oracle, SolveConfig(seed=2, strict_comparison_mode=True))
    truth = ground_truth_pattern(enc.family, enc.hidden)
    assert all(report.pattern[i] is truth[i] for i in range(len(enc.family)))
