"""Corner models: generator assembly, membership semantics, rigidity probes."""

import random

import pytest

from padic_rigid.corner import (
    AdditiveMap,
    CornerProber,
    build_corner_model,
    build_generator,
    membership,
    model_from_json,
    mult_by_r_probe,
    required_tree_depth,
    rigidity_trial,
)
from padic_rigid.errors import ParameterError, PrecisionError
from padic_rigid.padic import PadicApprox, PadicVector
from padic_rigid.ring_algebra import bundled_ring
from padic_rigid.sampling import Seed, SupportedElement


Zi = bundled_ring("gaussian_integers")


def _model(seed=0, **kwargs):
    defaults = dict(p=3, N=16, K=8, labels=3, seed=Seed(seed))
    defaults.update(kwargs)
    return build_corner_model(Zi, **defaults)


def test_build_generator_examples():
    one = PadicApprox(7, 2, 1)
    se = SupportedElement(0, frozenset({0}), "a", {0: one})
    vec = build_generator(se, basis_window=4, N=2)
    assert vec.entries == {0: 1}

    xi0, xi1 = PadicApprox(7, 2, 3), PadicApprox(7, 2, 5)
    se2 = SupportedElement(1, frozenset({0, 1}), "a", {0: xi0, 1: xi1})
    vec2 = build_generator(se2, basis_window=4, N=2)
    assert vec2.entries == {0: 3, 1: 5}

    with pytest.raises(ParameterError):
        SupportedElement(0, frozenset(), "a", {})
    with pytest.raises(ParameterError):
        build_generator(se2, basis_window=1, N=2)


def test_required_tree_depth():
    assert required_tree_depth(1) == 0
    assert required_tree_depth(3) == 1
    assert required_tree_depth(16) == 4
    assert required_tree_depth(31) == 4
    assert required_tree_depth(32) == 5


def test_tracked_basis_is_member():
    model = _model()
    prober = CornerProber(model)
    for slot in range(model.tracked_window):
        e = model.ring_element_at_slot(Zi.identity, slot)
        assert prober.membership(e, set(model.labels)).in_at_precision


def test_generators_member_of_own_label_only():
    model = _model(seed=5)
    prober = CornerProber(model)
    for (n, label) in model.generator_keys():
        gen = model.generator_ambient(n, label)
        assert prober.membership(gen, {label}).in_at_precision
        for other in model.labels:
            if other != label:
                verdict = prober.membership(gen, {other})
                assert not verdict.in_at_precision
                assert verdict.label == "NotIn"


def test_membership_precision_mismatch():
    model = _model()
    with pytest.raises(PrecisionError):
        membership(PadicVector(3, 8, {0: 1}), model, {0})


def test_membership_closure_under_addition_and_ring_action():
    model = _model(seed=2)
    prober = CornerProber(model)
    rng = random.Random(0)
    A = set(model.labels)
    members = [
        model.ring_element_at_slot([rng.randint(-4, 4), rng.randint(-4, 4)], 0),
        model.generator_ambient(0, model.labels[0]),
        model.ring_times_generator([2, -1], 1, model.labels[1]),
    ]
    for x in members:
        assert prober.membership(x, A).in_at_precision
    for x in members:
        for y in members:
            assert prober.membership(x + y, A).in_at_precision
        r = [rng.randint(-3, 3), rng.randint(-3, 3)]
        assert prober.membership(model.ring_action(r, x), A).in_at_precision


def test_membership_monotone_in_cap():
    model_lo = _model(seed=3, K=4)
    model_hi = _model(seed=3, K=5)
    prober_lo, prober_hi = CornerProber(model_lo), CornerProber(model_hi)
    rng = random.Random(1)
    for _ in range(10):
        x = PadicVector(3, 16, {i: rng.randrange(3**16) for i in range(model_lo.dim)})
        for labelset in ({0}, {0, 1}):
            if prober_lo.membership(x, labelset).in_at_precision:
                assert prober_hi.membership(x, labelset).in_at_precision


def test_membership_antitone_in_precision():
    # same seed, refined model; NotIn at low precision must persist for the
    # reduction of any refined element
    lo = _model(seed=4, N=16)
    hi = _model(seed=4, N=20)
    prober_lo, prober_hi = CornerProber(lo), CornerProber(hi)
    for (n, label) in hi.generator_keys():
        gen_hi = hi.generator_ambient(n, label)
        gen_lo = lo.generator_ambient(n, label)
        assert {i: r % 3**16 for i, r in gen_hi.entries.items() if r % 3**16} == gen_lo.entries
        for other in lo.labels:
            if other == label:
                continue
            if not prober_lo.membership(gen_lo, {other}).in_at_precision:
                assert not prober_hi.membership(gen_hi, {other}).in_at_precision


def test_mult_probe_identity_zero_and_random():
    model = _model(seed=6)
    prober = CornerProber(model)
    A = set(model.labels)
    assert prober.mult_by_r_probe([1, 0], A)
    assert prober.mult_by_r_probe([0, 0], A)
    rng = random.Random(2)
    for _ in range(20):
        r = [rng.randint(-5, 5), rng.randint(-5, 5)]
        assert prober.mult_by_r_probe(r, A)
    assert mult_by_r_probe([1, 1], model, A)


def test_mult_probe_closed_under_addition():
    model = _model(seed=7)
    prober = CornerProber(model)
    A = {model.labels[0], model.labels[1]}
    rng = random.Random(3)
    for _ in range(10):
        r = [rng.randint(-3, 3), rng.randint(-3, 3)]
        s = [rng.randint(-3, 3), rng.randint(-3, 3)]
        if prober.mult_by_r_probe(r, A) and prober.mult_by_r_probe(s, A):
            assert prober.mult_by_r_probe([a + b for a, b in zip(r, s)], A)


def test_rigidity_multiplication_consistent():
    model = _model(seed=8)
    prober = CornerProber(model)
    phi = AdditiveMap.multiplication_by(model, [2, 3])
    res = rigidity_trial(model, {0}, {0, 1}, phi=phi, prober=prober)
    assert res.verdict == "Consistent"


def test_rigidity_identity_violates_across_labels():
    model = _model(seed=9)
    prober = CornerProber(model)
    phi = AdditiveMap.identity(model)
    res = rigidity_trial(model, {0, 1}, {2}, phi=phi, prober=prober)
    assert res.verdict == "Violation"
    assert res.failures


def test_rigidity_random_map_violates():
    violations = 0
    for s in range(25):
        model = _model(seed=100 + s)
        res = rigidity_trial(model, set(model.labels), set(model.labels), seed=Seed(s))
        violations += res.verdict == "Violation"
    assert violations >= 24


def test_model_serialization_round_trip():
    model = _model(seed=10)
    data = model.to_json()
    rebuilt = model_from_json(data)
    assert rebuilt.generators == model.generators
    assert rebuilt.supports == model.supports
    assert rebuilt.labels == model.labels
    gen = model.generator_ambient(0, model.labels[0])
    assert membership(gen, rebuilt, {model.labels[0]}).in_at_precision
