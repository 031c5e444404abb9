"""Sampler contracts: refinement, ranges, determinism, distribution checks."""

import math
from collections import Counter

import pytest

from padic_rigid.errors import ParameterError
from padic_rigid.padic import reduce_precision
from padic_rigid.sampling import (
    Seed,
    SupportedElement,
    TreeCoefficients,
    all_sequences,
    branch_precision,
    digit_bound,
    nearly_uniform_window,
    partial_sum_b,
    sample_nearly_uniform,
    sample_support,
    sample_tree,
    sample_uniform,
    xi_of_branch,
)

# chi-square critical value, df = 8, upper tail 0.001
CHI2_8_999 = 26.124


def test_uniform_frequency_binary():
    counts = Counter(sample_uniform(2, 1, s).residue for s in range(10_000))
    for r in (0, 1):
        assert abs(counts[r] / 10_000 - 0.5) < 0.05


def test_uniform_refinement_contract():
    for s in range(100):
        wide = sample_uniform(3, 8, s)
        narrow = sample_uniform(3, 4, s)
        assert reduce_precision(wide, 4) == narrow


def test_uniform_chi_square_mod_9():
    counts = Counter(sample_uniform(3, 2, Seed(5).child(s)).residue for s in range(10_000))
    expected = 10_000 / 9
    chi2 = sum((counts[r] - expected) ** 2 / expected for r in range(9))
    assert chi2 < CHI2_8_999


def test_tree_shape():
    t0 = sample_tree(5, 0, 1)
    assert set(t0.digits) == {()}
    assert 0 <= t0.digit(()) < 5
    t2 = sample_tree(2, 2, 1)
    assert len(t2.digits) == 7


def test_tree_digit_ranges():
    for s in range(1000):
        t = sample_tree(3, 3, s)
        for seq, a in t.digits.items():
            assert 0 <= a < digit_bound(3, len(seq))


def test_partial_sum_examples():
    t = TreeCoefficients(2, 1, {(): 1, (0,): 3, (1,): 2})
    b_root = partial_sum_b(t, ())
    assert (b_root.residue, b_root.N) == (1, 1)
    b0 = partial_sum_b(t, (0,))
    assert (b0.residue, b0.N) == (7, 3)
    zero_tree = TreeCoefficients(2, 1, {(): 0, (0,): 0, (1,): 0})
    assert partial_sum_b(zero_tree, (1,)).residue == 0
    with pytest.raises(ParameterError):
        partial_sum_b(t, (0, 0))


def test_xi_of_branch_examples():
    t = TreeCoefficients(2, 1, {(): 1, (0,): 3, (1,): 2})
    xi = xi_of_branch(t, (0,))
    assert (xi.residue, xi.N) == (7, 3)
    zero_tree = TreeCoefficients(3, 1, {(): 0, (0,): 0, (1,): 0})
    assert xi_of_branch(zero_tree, (1,)).residue == 0
    with pytest.raises(ParameterError):
        xi_of_branch(t, ())


def test_prefix_congruence_exhaustive_depth_3():
    # every sampled tree, every branch, every level
    for s in range(20):
        t = sample_tree(2, 3, s)
        for f in all_sequences(3):
            xi = xi_of_branch(t, f)
            for n in range(4):
                expected = partial_sum_b(t, f[:n])
                assert reduce_precision(xi, branch_precision(n)) == expected


def test_branches_share_prefix_digits():
    for s in range(50):
        t = sample_tree(3, 3, s)
        branches = all_sequences(3)
        for f in branches:
            for g in branches:
                if f == g:
                    continue
                j = next(i for i in range(3) if f[i] != g[i])
                xf, xg = xi_of_branch(t, f), xi_of_branch(t, g)
                # terms agree through level j, so the sharp modulus is 2**(j+1)-1
                assert reduce_precision(xf, branch_precision(j)) == reduce_precision(
                    xg, branch_precision(j)
                )
                assert reduce_precision(xf, 2 ** (j + 1) - 1) == reduce_precision(
                    xg, 2 ** (j + 1) - 1
                )


def test_support_never_empty():
    for s in range(10_000):
        assert sample_support(None, s)


def test_support_singleton_zero_occurs():
    hits = sum(sample_support(None, s) == frozenset({0}) for s in range(10_000))
    assert hits > 0


def test_support_coverage_of_pairs():
    # {0, 1} should show up inside some draw quickly, in almost every run
    covered = 0
    runs = 200
    for run in range(runs):
        base = Seed(run).child("coverage")
        if any({0, 1} <= sample_support(None, base.child(n)) for n in range(200)):
            covered += 1
    assert covered / runs >= 0.99


def test_support_hint_bounds_indices():
    for s in range(500):
        assert max(sample_support(4, s)) < 4


def test_nearly_uniform_window_and_range():
    assert nearly_uniform_window(4, 1.5) == 2
    v = sample_nearly_uniform(2, 4, 1.5, 9)
    assert set(v.entries) <= {0, 1, 2}
    for res in v.entries.values():
        assert 0 <= res < 16
    # coset probability from the declared window: 2**-12 <= 2**-8
    assert 2.0 ** (-4 * 3) <= 2.0 ** (-(4**1.5))


def test_nearly_uniform_refinement():
    for s in range(50):
        big = sample_nearly_uniform(2, 4, 1.5, s)
        small = sample_nearly_uniform(2, 3, 1.5, s)
        w_small = nearly_uniform_window(3, 1.5)
        for j in range(w_small + 1):
            assert big.entries.get(j, 0) % 2**3 == small.entries.get(j, 0)


def test_nearly_uniform_alpha_validation():
    with pytest.raises(ParameterError):
        sample_nearly_uniform(2, 4, 1.0, 0)


def test_seed_path_determinism():
    a = sample_tree(2, 3, Seed(7, ("x", 1)))
    b = sample_tree(2, 3, Seed(7, ("x", 1)))
    c = sample_tree(2, 3, Seed(7, ("x", 2)))
    assert a == b
    assert a != c
    # draw order independence: children derived by path, not call sequence
    base = Seed(11)
    first = sample_uniform(5, 6, base.child("a"))
    _ = sample_uniform(5, 6, base.child("b"))
    again = sample_uniform(5, 6, base.child("a"))
    assert first == again


def test_supported_element_invariants():
    from padic_rigid.padic import PadicApprox

    xi = PadicApprox(7, 2, 3)
    se = SupportedElement(0, frozenset({1, 4}), "a", {1: xi, 4: xi})
    assert se.support == {1, 4}
    with pytest.raises(ParameterError):
        SupportedElement(0, frozenset(), "a", {})
    with pytest.raises(ParameterError):
        SupportedElement(0, frozenset({1}), "a", {2: xi})
