"""The acceptance suite: ten fixed-seed criteria with pinned tolerances.

Every criterion is deterministic: seeds are fixed here, tolerances are
three-sigma binomial bounds or exact counts, and each run produces the
same verdicts.  Criterion 4 is implemented exactly as stated and fails
by construction: its exhaustive search space (21**14 coefficient boxes)
exceeds any feasible budget, and the runner reports that honestly
instead of substituting a weaker search.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import corner as corner_mod
from . import free_detector, independence, prime_density, ring_algebra, stats_harness
from .errors import PresentationError, ResourceLimitError
from .padic import PadicApprox, basis_vector, reduce_precision
from .polynomials import IntPolynomial, parse_univariate, univariate
from .sampling import (
    Seed,
    all_sequences,
    branch_precision,
    digit_bound,
    sample_nearly_uniform,
    sample_tree,
    xi_of_branch,
)
from .zassenhaus import complete_datum, deterministic_scan, realize, verify_pair


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    runtime_seconds: float
    details: dict = field(default_factory=dict)
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        suffix = f" ({self.note})" if self.note else ""
        return f"{status}  [{self.number:2d}] {self.name}  {self.runtime_seconds:.1f}s{suffix}"

    def to_json(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "runtime_seconds": self.runtime_seconds,
            "details": self.details,
            "note": self.note,
        }


def criterion_01_gl_formula() -> CriterionResult:
    """Product formula vs exhaustive count, plus seeded Monte Carlo at 3 sigma."""
    t0 = time.time()
    exact = stats_harness.gl_exact_count(2, 2)
    brute = 0
    for entries in itertools.product((0, 1), repeat=4):
        a, b, c, d = entries
        if (a * d - b * c) % 2:
            brute += 1
    summary = stats_harness.gl_invertibility_mc(3, 3, 100_000, seed=7)
    passed = exact == 6 == brute and summary.within_sigma(3.0)
    return CriterionResult(
        1,
        "invertible-matrix count and Monte Carlo",
        passed,
        time.time() - t0,
        details={
            "exact_2_2": exact,
            "exhaustive_2_2": brute,
            "mc": summary.to_json(),
        },
    )


def criterion_02_tree_congruence() -> CriterionResult:
    """Exhaustive prefix congruence, exact uniformity, conditional law at p=2, depth=2."""
    t0 = time.time()
    p, depth = 2, 2
    bounds = [digit_bound(p, n) for n in range(depth + 1)]  # 2, 4, 16
    congruence_checked = 0
    congruence_ok = 0
    uniform_ok = True
    conditional_ok = True

    for f in all_sequences(depth):
        levels = [dict() for _ in range(depth + 1)]
        joint: dict[tuple, int] = {}
        for a0 in range(bounds[0]):
            for a1 in range(bounds[1]):
                for a2 in range(bounds[2]):
                    digits = {(): a0, f[:1]: a1, f[:2]: a2}
                    bs = []
                    for n in range(depth + 1):
                        total = sum(p ** (2**j - 1) * digits[f[:j]] for j in range(n + 1))
                        modulus = p ** branch_precision(n)
                        bs.append(total % modulus)
                    xi = bs[depth]
                    congruence_checked += depth + 1
                    congruence_ok += sum(
                        xi % p ** branch_precision(n) == bs[n] for n in range(depth + 1)
                    )
                    for n, b in enumerate(bs):
                        levels[n][b] = levels[n].get(b, 0) + 1
                    joint[tuple(bs)] = joint.get(tuple(bs), 0) + 1
        total_assignments = bounds[0] * bounds[1] * bounds[2]
        for n, counts in enumerate(levels):
            modulus = p ** branch_precision(n)
            if len(counts) != modulus or len(set(counts.values())) != 1:
                uniform_ok = False
            if counts and next(iter(counts.values())) * modulus != total_assignments:
                uniform_ok = False
        # Conditional law: given the level-j value, each compatible level-n
        # value has probability p**-(2**(n+1) - 2**(j+1)); incompatible ones zero.
        for n in range(depth + 1):
            for j in range(n):
                pairs: dict[tuple, int] = {}
                for bs, cnt in joint.items():
                    pairs[(bs[j], bs[n])] = pairs.get((bs[j], bs[n]), 0) + cnt
                mod_j = p ** branch_precision(j)
                count_j = total_assignments // mod_j
                expected = Fraction(1, p ** (2 ** (n + 1) - 2 ** (j + 1)))
                for (d, c), cnt in pairs.items():
                    compatible = c % mod_j == d
                    prob = Fraction(cnt, count_j)
                    if compatible and prob != expected:
                        conditional_ok = False
                    if not compatible:
                        conditional_ok = False
    passed = (
        congruence_ok == congruence_checked and uniform_ok and conditional_ok
    )
    return CriterionResult(
        2,
        "tree prefix congruence and exact uniformity",
        passed,
        time.time() - t0,
        details={
            "congruences_checked": congruence_checked,
            "congruences_holding": congruence_ok,
            "uniform": uniform_ok,
            "conditional_law": conditional_ok,
        },
    )


def _brute_root_count(coeffs: list[int], modulus: int) -> int:
    xs = np.arange(modulus, dtype=np.int64)
    acc = np.zeros(modulus, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + c) % modulus
    return int((acc == 0).sum())


def criterion_03_root_bound() -> CriterionResult:
    """Fifty constructed factored polynomials against the lifting bound."""
    t0 = time.time()
    rng = Seed(303).rng()
    cofactors = {
        2: (univariate([1, 1, 1]), 0),  # no root mod 2
        3: (univariate([1, 0, 1]), 0),  # no root mod 3
        5: (univariate([2, 0, 1]), 0),  # no root mod 5
    }
    deep_cofactors = {
        2: (univariate([2, 0, 1]), 1),  # root mod 2, none mod 4
        3: (univariate([3, 0, 1]), 1),
        5: (univariate([5, 0, 1]), 1),
    }
    max_n = {2: 12, 3: 10, 5: 7}  # keeps p**N <= 1e5 for the brute cross-check
    checked = 0
    bound_ok = 0
    brute_ok = 0
    for case in range(50):
        p = (2, 3, 5)[case % 3]
        N = max_n[p] - (case % 3 == 0 and case % 2)  # small variation
        use_deep = case % 5 == 0
        h, M = (deep_cofactors if use_deep else cofactors)[p]
        if case % 7 == 0:
            h, M = univariate([1]), 0
        l = 1 + case % 3
        lambdas = []
        while len(lambdas) < l:
            lam = rng.randint(-p**2, p**2)
            if lam not in lambdas:
                lambdas.append(lam)
        g = h
        for lam in lambdas:
            g = g * IntPolynomial(1, {(1,): 1, (0,): -lam})
        ok = independence.root_bound_check(g, lambdas, h, M, p, N)
        count = independence.count_roots_mod_pN(g, p, N)
        brute = _brute_root_count(g.univariate_coeffs(), p**N)
        checked += 1
        bound_ok += ok
        brute_ok += count == brute
    passed = checked == 50 and bound_ok == 50 and brute_ok == 50
    return CriterionResult(
        3,
        "root-count bound for factored polynomials",
        passed,
        time.time() - t0,
        details={"cases": checked, "bound_held": bound_ok, "brute_force_agreed": brute_ok},
    )


def criterion_04_independence_surrogate() -> CriterionResult:
    """Relation search on four depth-4 branch values, degree <= 2, height <= 10.

    Stated parameters demand an exhaustive scan of 21**14 coefficient
    boxes per seed (the single mod-p**N congruence leaves 14 free
    coefficients); that exceeds any desk-scale budget by nine orders of
    magnitude, so the faithful run reports a resource failure rather
    than a weakened search.  See the decisions ledger for the analysis.
    """
    t0 = time.time()
    p, depth = 7, 4
    failures = []
    relations = 0
    completed = 0
    for seed in range(100):
        base = Seed(seed)
        trees = [sample_tree(p, depth, base.child("tree", i)) for i in range(4)]
        xs = [xi_of_branch(t, (0, 1, 0, 1)) for t in trees]
        try:
            report = independence.find_relation(xs, degree=2, height=10)
            completed += 1
            relations += report.found
        except ResourceLimitError as exc:
            failures.append(str(exc))
            break
    passed = completed == 100 and relations == 0
    note = "unattainable as stated: exhaustive box has 21**14 candidates" if failures else ""
    return CriterionResult(
        4,
        "no low-complexity relation among branch values",
        passed,
        time.time() - t0,
        details={
            "seeds_completed": completed,
            "relations_found": relations,
            "resource_failure": failures[0] if failures else None,
            "search_space": f"21**14 = {21**14}",
        },
        note=note,
    )


def criterion_05_containment_bound() -> CriterionResult:
    """Containment frequency under the coset bound for n in {3, 4, 5}."""
    t0 = time.time()
    reports = []
    passed = True
    for n in (3, 4, 5):
        rep = free_detector.containment_probability_trial(
            p=2, k=1, n=n, alpha=1.5, trials=10_000, seed=Seed(500).child("n", n)
        )
        reports.append(rep.to_json())
        passed = passed and rep.passed
    return CriterionResult(
        5,
        "containment probability bound",
        passed,
        time.time() - t0,
        details={"reports": reports},
    )


def criterion_06_freeness_pipeline() -> CriterionResult:
    """Independence and full-rank purified bases for 1000 seeded draws.

    Window 8 holds the four tracked basis vectors and three nearly
    uniform samples (their coordinates stop at ceil(32**0.5) = 6), so a
    full-rank instance has rank 7 = k + m + 1 with k = 3, m = 3.  The
    purification cap is the working precision.
    """
    t0 = time.time()
    N = 32
    independent = 0
    full_rank = 0
    for s in range(1000):
        base = Seed(s)
        samples = [sample_nearly_uniform(2, N, 1.5, base.child("a", i)) for i in range(3)]
        basis = [basis_vector(2, N, i) for i in range(4)]
        verdict = free_detector.jp_linear_independence(basis + samples, window=8)
        if verdict.independent:
            independent += 1
            result = free_detector.finite_rank_free_basis(basis + samples, K=N)
            full_rank += result.rank == 7
    passed = independent >= 990 and full_rank == independent
    return CriterionResult(
        6,
        "freeness pipeline",
        passed,
        time.time() - t0,
        details={"trials": 1000, "independent": independent, "rank_7_bases": full_rank},
    )


def criterion_07_corner_rigidity() -> CriterionResult:
    """Multiplication probes and violation rates on the labeled models."""
    t0 = time.time()
    ring = ring_algebra.bundled_ring("gaussian_integers")
    labels = (0, 1, 2)

    model0 = corner_mod.build_corner_model(ring, p=3, N=16, K=8, labels=labels, seed=Seed(700))
    prober0 = corner_mod.CornerProber(model0)
    rng = Seed(700).child("r").rng()
    mult_ok = 0
    for _ in range(20):
        r = [rng.randint(-5, 5), rng.randint(-5, 5)]
        mult_ok += prober0.mult_by_r_probe(r, set(labels))

    identity_pass = 0
    random_violation = 0
    seeds = 500
    for s in range(seeds):
        base = Seed(701).child("trial", s)
        model = corner_mod.build_corner_model(ring, p=3, N=16, K=8, labels=labels, seed=base)
        prober = corner_mod.CornerProber(model)
        ident = corner_mod.AdditiveMap.identity(model)
        all_pairs_violated = True
        for size_a in (1, 2, 3):
            for A in itertools.combinations(labels, size_a):
                for size_d in (1, 2):
                    for D in itertools.combinations(labels, size_d):
                        if set(A) <= set(D):
                            continue
                        res = corner_mod.rigidity_trial(
                            model, set(A), set(D), phi=ident, prober=prober
                        )
                        if res.verdict != "Violation":
                            all_pairs_violated = False
        identity_pass += all_pairs_violated
        res = corner_mod.rigidity_trial(
            model, set(labels), set(labels), seed=base.child("phi"), prober=prober
        )
        random_violation += res.verdict == "Violation"
    passed = mult_ok == 20 and identity_pass >= 495 and random_violation >= 495
    return CriterionResult(
        7,
        "corner rigidity surrogate",
        passed,
        time.time() - t0,
        details={
            "mult_probes_true": mult_ok,
            "identity_all_pairs_violated": identity_pass,
            "random_map_violations": random_violation,
            "seeds": seeds,
        },
    )


def criterion_08_zassenhaus_realizer() -> CriterionResult:
    """Deterministic scan hits for (Z, 1, 1) and a budgeted find for (Z[i], i, 1)."""
    t0 = time.time()
    Z = ring_algebra.bundled_ring("integers")
    Zi = ring_algebra.bundled_ring("gaussian_integers")
    exact = verify_pair(Z, [1], [1], complete_datum(Z, 3, [1], 4))
    hits, _ = deterministic_scan(Z, [1], [1], 100)
    has_3_4 = any(h["p"] == 3 and h["c"] == 4 for h in hits)
    report = realize(Zi, [([0, 1], [1, 0])], prime_budget=10_000, H=3, seed=808)
    pair = report.pairs[0]
    zi_ok = pair["status"] == "verified" and bool(pair["deterministic_hits"])
    passed = exact and has_3_4 and zi_ok
    return CriterionResult(
        8,
        "endomorphism-ring realizer",
        passed,
        time.time() - t0,
        details={
            "z_pair_exact_at_p3_c4": exact,
            "z_scan_hits": [(h["p"], h["c"]) for h in hits],
            "zi_pair_status": pair["status"],
            "zi_deterministic_hits": [(h["p"], h["c"]) for h in pair["deterministic_hits"]],
        },
    )


def criterion_09_density() -> CriterionResult:
    """Quadratic density near one half, divergent partial sums, sieve count."""
    t0 = time.time()
    f = parse_univariate("x^2+1")
    rep = prime_density.density_report(f, 10**5)
    sums = {d["bound"]: d["reciprocal_sum_decimal"] for d in rep.decades}
    increasing = sums[1000] < sums[10000] < sums[100000]
    rep_x = prime_density.density_report(parse_univariate("x"), 10**4)
    pi4 = len(prime_density.primes_up_to(10**4))
    passed = (
        0.45 <= rep.density <= 0.55
        and increasing
        and rep_x.density == 1.0
        and pi4 == 1229
    )
    return CriterionResult(
        9,
        "prime density and reciprocal sums",
        passed,
        time.time() - t0,
        details={
            "density_x2_plus_1": rep.density,
            "decade_sums": sums,
            "density_x": rep_x.density,
            "pi_104": pi4,
        },
    )


def criterion_10_algebra_kernel() -> CriterionResult:
    """Presentation validation, inversion round-trips, order brute force."""
    t0 = time.time()
    ok_bundled = all(
        not ring_algebra.validate(ring_algebra.bundled_ring(name))
        for name in ring_algebra.BUNDLED_RINGS
    )
    try:
        ring_algebra.bundled_ring("broken_tensor")
        broken_rejected = False
    except PresentationError:
        broken_rejected = True
    Zi = ring_algebra.bundled_ring("gaussian_integers")
    rng = Seed(1000).rng()
    round_trips = 0
    attempts = 0
    while round_trips < 100 and attempts < 1000:
        attempts += 1
        x = [rng.randint(-9, 9), rng.randint(-9, 9)]
        if x == [0, 0]:
            continue
        inv = ring_algebra.invert_in_QA(Zi, x)
        forward = Zi.mul(list(x), list(inv.coords))
        backward = Zi.mul(list(inv.coords), list(x))
        ident = [Fraction(c) for c in Zi.identity]
        round_trips += forward == ident and backward == ident
    orders_ok = True
    for _ in range(50):
        v = ring_algebra.RationalVector(
            tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 24)) for _ in range(2))
        )
        m = ring_algebra.order_in_QA_mod_A(v)
        brute = next(
            k for k in range(1, 10_000) if all((k * c).denominator == 1 for c in v.coords)
        )
        orders_ok = orders_ok and m == brute
    passed = ok_bundled and broken_rejected and round_trips == 100 and orders_ok
    return CriterionResult(
        10,
        "structure-constant algebra kernel",
        passed,
        time.time() - t0,
        details={
            "bundled_valid": ok_bundled,
            "broken_rejected": broken_rejected,
            "inversion_round_trips": round_trips,
            "orders_match_brute_force": orders_ok,
        },
    )


CRITERIA = {
    1: criterion_01_gl_formula,
    2: criterion_02_tree_congruence,
    3: criterion_03_root_bound,
    4: criterion_04_independence_surrogate,
    5: criterion_05_containment_bound,
    6: criterion_06_freeness_pipeline,
    7: criterion_07_corner_rigidity,
    8: criterion_08_zassenhaus_realizer,
    9: criterion_09_density,
    10: criterion_10_algebra_kernel,
}


def run_suite(numbers=None) -> list[CriterionResult]:
    selected = sorted(CRITERIA) if numbers is None else sorted(numbers)
    return [CRITERIA[n]() for n in selected]
