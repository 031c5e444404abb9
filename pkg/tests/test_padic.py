"""Arithmetic core: ring axioms, inverses, valuations, precision handling."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_rigid.errors import (
    IncompatibleOperandsError,
    NonUnitError,
    ParameterError,
    PrecisionError,
)
from padic_rigid.padic import (
    PadicApprox,
    PadicVector,
    basis_vector,
    padd,
    pmul,
    reduce_precision,
    unit_inverse,
    valuation,
)


def test_padd_examples():
    assert padd(PadicApprox(3, 2, 7), PadicApprox(3, 2, 5)).residue == 3
    assert padd(PadicApprox(5, 3, 0), PadicApprox(5, 3, 124)).residue == 124
    assert padd(PadicApprox(2, 4, 15), PadicApprox(2, 4, 1)).residue == 0


def test_pmul_examples():
    assert pmul(PadicApprox(3, 2, 4), PadicApprox(3, 2, 4)).residue == 7
    x = PadicApprox(5, 3, 87)
    assert pmul(PadicApprox(5, 3, 1), x).residue == x.residue
    assert pmul(PadicApprox(2, 3, 2), PadicApprox(2, 3, 4)).residue == 0


def test_unit_inverse_examples():
    # extended-Euclid oracle for the stated case
    g, s = 125, pow(2, -1, 125)
    assert 2 * s % g == 1
    assert unit_inverse(PadicApprox(5, 3, 2)).residue == s == 63
    assert unit_inverse(PadicApprox(7, 4, 1)).residue == 1
    with pytest.raises(NonUnitError):
        unit_inverse(PadicApprox(3, 2, 3))


def test_valuation_examples():
    assert valuation(PadicApprox(2, 4, 12)) == 2
    assert valuation(PadicApprox(7, 3, 0)) == 3
    assert valuation(PadicApprox(5, 3, 13)) == 0


def test_reduce_precision_examples():
    assert reduce_precision(PadicApprox(2, 4, 13), 2).residue == 1
    x = PadicApprox(3, 3, 22)
    assert reduce_precision(x, 3) == x
    with pytest.raises(PrecisionError):
        reduce_precision(PadicApprox(5, 2, 7), 3)


def test_mismatched_operands_rejected():
    with pytest.raises(IncompatibleOperandsError):
        padd(PadicApprox(3, 2, 1), PadicApprox(5, 2, 1))
    with pytest.raises(IncompatibleOperandsError):
        pmul(PadicApprox(3, 2, 1), PadicApprox(3, 3, 1))


def test_composite_p_rejected():
    with pytest.raises(ParameterError):
        PadicApprox(6, 2, 1)
    with pytest.raises(ParameterError):
        PadicApprox(1, 2, 0)


def test_ring_axioms_exhaustive_mod_81():
    p, N = 3, 4
    mod = p**N
    values = [PadicApprox(p, N, r) for r in range(mod)]
    for x in values[::5]:
        for y in values[::7]:
            assert padd(x, y).residue == padd(y, x).residue
            assert pmul(x, y).residue == pmul(y, x).residue
            for z in values[::17]:
                assert padd(padd(x, y), z).residue == padd(x, padd(y, z)).residue
                assert pmul(pmul(x, y), z).residue == pmul(x, pmul(y, z)).residue
                lhs = pmul(x, padd(y, z)).residue
                rhs = padd(pmul(x, y), pmul(x, z)).residue
                assert lhs == rhs


@settings(max_examples=60)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 6), st.data())
def test_ring_axioms_randomized(p, N, data):
    mod = p**N
    x, y, z = (PadicApprox(p, N, data.draw(st.integers(0, mod - 1))) for _ in range(3))
    assert padd(x, y) == padd(y, x)
    assert pmul(pmul(x, y), z) == pmul(x, pmul(y, z))
    assert pmul(x, padd(y, z)) == padd(pmul(x, y), pmul(x, z))


@settings(max_examples=60)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 8), st.data())
def test_unit_inverse_involution(p, N, data):
    r = data.draw(st.integers(0, p**N - 1).filter(lambda v: v % p != 0))
    x = PadicApprox(p, N, r)
    assert unit_inverse(unit_inverse(x)) == x
    assert pmul(x, unit_inverse(x)).residue == 1


def test_reduce_commutes_with_arithmetic():
    p, N, M = 3, 4, 2
    for a in range(0, 81, 7):
        for b in range(0, 81, 11):
            x, y = PadicApprox(p, N, a), PadicApprox(p, N, b)
            assert reduce_precision(padd(x, y), M) == padd(
                reduce_precision(x, M), reduce_precision(y, M)
            )
            assert reduce_precision(pmul(x, y), M) == pmul(
                reduce_precision(x, M), reduce_precision(y, M)
            )


def test_valuation_of_product():
    p, N = 2, 6
    for a in range(64):
        for b in range(0, 64, 3):
            x, y = PadicApprox(p, N, a), PadicApprox(p, N, b)
            expected = min(valuation(x) + valuation(y), N)
            assert valuation(pmul(x, y)) == expected


def test_vector_basics():
    v = PadicVector(5, 2, {0: 3, 2: 0, 5: 26})
    assert v.support() == {0, 5}
    assert v.entries == {0: 3, 5: 1}
    w = v + basis_vector(5, 2, 0, 22)
    assert w.entries == {5: 1}
    assert (v - v).is_zero()
    assert v.scale(5).entries == {0: 15, 5: 5}


def test_vector_serialization():
    v = PadicVector(3, 4, {1: 80})
    assert v.to_json() == {"p": 3, "N": 4, "entries": {"1": "80"}}
    x = PadicApprox(3, 4, 80)
    assert x.to_json() == {"p": 3, "N": 4, "residue": "80"}
