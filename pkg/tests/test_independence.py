"""Relation search, root counting, and the factored root bound."""

import random

import numpy as np
import pytest

from padic_rigid.errors import ParameterError, ResourceLimitError
from padic_rigid.independence import (
    count_roots_mod_pN,
    find_relation,
    monomials_up_to,
    root_bound_check,
)
from padic_rigid.padic import PadicApprox
from padic_rigid.polynomials import IntPolynomial, evaluate, univariate
from padic_rigid.sampling import Seed, sample_tree, xi_of_branch


def test_evaluate_examples():
    f = IntPolynomial(1, {(1,): 1})
    assert evaluate(f, [PadicApprox(7, 2, 5)]).residue == 5
    # cancelling terms normalize away
    g = IntPolynomial(2, {(1, 1): 1}) - IntPolynomial(2, {(1, 1): 1})
    assert g.is_zero()
    assert evaluate(g, [PadicApprox(7, 2, 1), PadicApprox(7, 2, 2)]).residue == 0
    h = IntPolynomial(1, {(2,): 1, (0,): 1})
    assert evaluate(h, [PadicApprox(5, 2, 7)]).residue == 0


def test_evaluate_arity_mismatch():
    f = IntPolynomial(2, {(1, 0): 1})
    with pytest.raises(ParameterError):
        evaluate(f, [PadicApprox(5, 2, 1)])


def test_find_relation_constructed_dependence():
    lam = 7
    xs = [PadicApprox(5, 6, lam), PadicApprox(5, 6, lam * lam)]
    report = find_relation(xs, degree=2, height=1)
    assert report.found
    assert report.witness.terms == {(0, 1): 1, (2, 0): -1}  # x2 - x1**2


def test_find_relation_zero_value():
    report = find_relation([PadicApprox(5, 6, 0)], degree=1, height=1)
    assert report.found
    assert report.witness.terms == {(1,): 1}


def test_find_relation_witness_self_check():
    rng = random.Random(2)
    for _ in range(20):
        lam = rng.randrange(1, 3**6)
        xs = [PadicApprox(3, 8, lam), PadicApprox(3, 8, lam**3)]
        report = find_relation(xs, degree=3, height=2)
        if report.found:
            assert evaluate(report.witness, xs).residue == 0
            assert report.witness.height() <= 2
            assert report.witness.degree() <= 3


def test_find_relation_resource_error():
    xs = [PadicApprox(7, 31, r) for r in (1, 2, 3, 4)]
    with pytest.raises(ResourceLimitError):
        find_relation(xs, degree=2, height=10)


def test_find_relation_not_found_generic_pairs():
    # two branch values from separate depth-4 trees; full box scanned
    found_any = False
    for seed in range(3):
        trees = [sample_tree(7, 4, Seed(seed).child(i)) for i in range(2)]
        xs = [xi_of_branch(t, (0, 1, 1, 0)) for t in trees]
        report = find_relation(xs, degree=2, height=10)
        found_any = found_any or report.found
    assert not found_any


def test_monomial_enumeration():
    monos = monomials_up_to(2, 2)
    assert monos[0] == (0, 0)
    assert set(monos) == {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)}


def test_count_roots_examples():
    assert count_roots_mod_pN(univariate([-1, 0, 1]), 2, 3) == 4
    assert count_roots_mod_pN(univariate([0, 1]), 5, 4) == 1
    assert count_roots_mod_pN(univariate([1, 0, 1]), 5, 2) == 2


def test_count_roots_zero_poly_rejected():
    with pytest.raises(ParameterError):
        count_roots_mod_pN(univariate([0]), 3, 2)


def _brute_count(coeffs, modulus):
    xs = np.arange(modulus, dtype=np.int64)
    acc = np.zeros(modulus, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + c) % modulus
    return int((acc == 0).sum())


def test_count_roots_vs_brute_force():
    rng = random.Random(9)
    for _ in range(60):
        p = rng.choice([2, 3, 5])
        N = {2: rng.randint(2, 10), 3: rng.randint(2, 7), 5: rng.randint(2, 5)}[p]
        coeffs = [rng.randint(-6, 6) for _ in range(rng.randint(2, 5))]
        if all(c == 0 for c in coeffs):
            coeffs[-1] = 1
        g = univariate(coeffs)
        if g.is_zero():
            continue
        assert count_roots_mod_pN(g, p, N) == _brute_count(coeffs, p**N)


def test_root_bound_examples():
    one = univariate([1])
    # g = (x-1)(x-1+p**2), p=3, N=6, l=2, M=0
    g = IntPolynomial(1, {(1,): 1, (0,): -1}) * IntPolynomial(1, {(1,): 1, (0,): 8})
    assert root_bound_check(g, [1, -8], one, 0, 3, 6)
    # single linear factor
    g2 = IntPolynomial(1, {(1,): 1, (0,): -4})
    assert root_bound_check(g2, [4], one, 0, 5, 3)
    # no linear factors and no roots: vacuous truth with count 0
    g3 = univariate([1, 0, 1])
    assert root_bound_check(g3, [], g3, 0, 3, 4)


def test_root_bound_rejects_bad_factorization():
    one = univariate([1])
    g = univariate([1, 1])
    with pytest.raises(ParameterError):
        root_bound_check(g, [5], one, 0, 3, 5)


def test_root_bound_random_constructions():
    rng = random.Random(22)
    cofactors = {2: univariate([1, 1, 1]), 3: univariate([1, 0, 1]), 5: univariate([2, 0, 1])}
    for _ in range(50):
        p = rng.choice([2, 3, 5])
        N = rng.randint(3, {2: 12, 3: 8, 5: 6}[p])
        h = cofactors[p] if rng.random() < 0.5 else univariate([1])
        l = rng.randint(1, 3)
        lambdas = rng.sample(range(-20, 21), l)
        g = h
        for lam in lambdas:
            g = g * IntPolynomial(1, {(1,): 1, (0,): -lam})
        assert root_bound_check(g, lambdas, h, 0, p, N)
