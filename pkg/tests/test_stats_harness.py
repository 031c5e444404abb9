"""Exact invertibility counts, Monte Carlo determinism, trial plumbing."""

import itertools
from fractions import Fraction

import pytest

from padic_rigid.errors import ParameterError, UnknownExperimentError
from padic_rigid.stats_harness import (
    TrialSummary,
    gl_exact_count,
    gl_invertibility_mc,
    gl_invertibility_target,
    register_experiment,
    run_trials,
)


def _det_mod(matrix, q):
    # expansion for up to 3x3, independent of the elimination path
    n = len(matrix)
    if n == 1:
        return matrix[0][0] % q
    if n == 2:
        return (matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]) % q
    total = 0
    for sign, perm in zip(
        (1, -1, 1, -1, 1, -1), itertools.permutations(range(3))
    ):
        prod = 1
        for i, j in enumerate(perm):
            prod *= matrix[i][j]
        total += sign * prod
    return total % q


def _exhaustive_count(n, q):
    count = 0
    for entries in itertools.product(range(q), repeat=n * n):
        matrix = [list(entries[i * n : (i + 1) * n]) for i in range(n)]
        if _det_mod(matrix, q) != 0:
            count += 1
    return count


def test_exact_counts_against_enumeration():
    for n, q in ((1, 2), (2, 2), (2, 3), (3, 2)):
        assert gl_exact_count(n, q) == _exhaustive_count(n, q)
    assert gl_exact_count(1, 2) == 1
    assert gl_exact_count(2, 2) == 6
    assert gl_exact_count(2, 3) == 48


def test_target_matches_count_ratio():
    for n, q in ((1, 2), (2, 2), (3, 3), (2, 5)):
        assert gl_invertibility_target(n, q) == Fraction(gl_exact_count(n, q), q ** (n * n))
    assert gl_invertibility_target(1, 2) == Fraction(1, 2)
    assert gl_invertibility_target(2, 2) == Fraction(6, 16)


def test_mc_requires_prime_field():
    with pytest.raises(ParameterError):
        gl_invertibility_mc(2, 4, 10, 0)


def test_mc_determinism_and_tolerance():
    a = gl_invertibility_mc(2, 3, 4000, seed=7)
    b = gl_invertibility_mc(2, 3, 4000, seed=7)
    assert a == b
    assert a.within_sigma(3.0)


def test_trial_summary_edges():
    empty = TrialSummary(0, 0)
    assert empty.frequency is None
    assert empty.z_score is None
    merged = TrialSummary(10, 4, Fraction(1, 2)).merge(TrialSummary(30, 16, Fraction(1, 2)))
    assert merged == TrialSummary(40, 20, Fraction(1, 2))
    with pytest.raises(ParameterError):
        TrialSummary(1, 1).within_sigma()


def test_run_trials_determinism_and_merge():
    def coin(params, trial_seed):
        return trial_seed.rng().random() < params["bias"]

    register_experiment("biased_coin", coin)
    one = run_trials("biased_coin", 500, 3, {"bias": 0.25}, target=Fraction(1, 4))
    two = run_trials("biased_coin", 500, 3, {"bias": 0.25}, target=Fraction(1, 4))
    assert one == two
    assert one.within_sigma(4.0)
    with pytest.raises(UnknownExperimentError):
        run_trials("no_such_thing", 5, 0)


def test_run_trials_zero_trials():
    summary = run_trials("gl_invertibility", 0, 0, {"n": 2, "q": 2})
    assert summary.trials == 0
    assert summary.frequency is None
    assert summary.to_json()["frequency"] is None
