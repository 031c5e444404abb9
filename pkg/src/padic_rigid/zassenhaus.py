"""Construction data for endomorphism-ring realization over a finite-rank ring.

For a ring A with free additive group, each prime p may contribute a datum
(p, a_p, c_p, r_p, d_p): a non-zero a_p in A, an integer c_p in [p, 2p-1]
with c_p - a_p invertible in the rationalized ring, and positive integers
r_p, d_p with p**r_p * d_p * (c_p - a_p)**-1 integral and gcd(d_p, p) = 1.
A pair (a, e) of non-zero ring elements is "verified" by a datum when
a_p = a and p divides the order of (c_p - a_p)**-1 * e modulo A, which is
the condition that kills any endomorphism sending 1 to 0 and a to -e.

realize runs both routes: the randomized sweep over primes up to a budget,
and the deterministic scan that locates primes through roots of the reduced
denominator polynomial of (c - a)**-1 * e.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CertificateError, ParameterError
from .padic import valuation_of
from .prime_density import primes_up_to
from .ring_algebra import (
    RationalVector,
    RingPresentation,
    denominator_polynomial,
    invert_in_QA,
    order_in_QA_mod_A,
    rational_action,
    regular_rep,
    ring_element_from_int,
)
from .sampling import _as_seed


@dataclass(frozen=True)
class ZassenhausDatum:
    """One prime's construction data."""

    p: int
    a_p: tuple
    c_p: int
    r_p: int
    d_p: int
    inert: bool = False

    def __post_init__(self):
        if not self.p <= self.c_p <= 2 * self.p - 1:
            raise ParameterError(f"c_p={self.c_p} outside [p, 2p-1] for p={self.p}")
        if self.r_p < 1 or self.d_p < 1:
            raise ParameterError("r_p and d_p must be positive")
        if self.d_p % self.p == 0:
            raise ParameterError("d_p must be coprime to p")
        object.__setattr__(self, "a_p", tuple(int(x) for x in self.a_p))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "a_p": list(self.a_p),
            "c_p": self.c_p,
            "r_p": self.r_p,
            "d_p": self.d_p,
            "inert": self.inert,
        }


def shifted_difference(pres: RingPresentation, c: int, a) -> list[int]:
    """Coordinates of c*1 - a."""
    unit = ring_element_from_int(pres, c)
    return [u - x for u, x in zip(unit, a)]


def complete_datum(pres: RingPresentation, p: int, a, c: int) -> ZassenhausDatum:
    """Minimal (r_p, d_p) for given (p, a, c).

    With m the order of (c - a)**-1 modulo A, the minimal admissible choice
    is r_p = v_p(m) and d_p = m / p**v_p(m); when m is coprime to p the
    positivity constraint forces r_p = 1, and the datum is flagged inert
    since it contributes nothing to rigidity.
    """
    diff = shifted_difference(pres, c, a)
    inv = invert_in_QA(pres, diff)
    m = order_in_QA_mod_A(inv)
    v = valuation_of(m, p, cap=m.bit_length() + 1) if m % p == 0 else 0
    d = m // p**v
    r = max(v, 1)
    return ZassenhausDatum(p, tuple(a), c, r, d, inert=(v == 0))


def sample_datum(pres: RingPresentation, p: int, H: int, seed) -> ZassenhausDatum | None:
    """Uniform a_p over non-zero coordinate boxes and c_p over [p, 2p-1].

    Returns None (skip) when c_p - a_p is not invertible in the
    rationalized ring.
    """
    if H < 1:
        raise ParameterError("coordinate bound must be positive")
    rng = _as_seed(seed).child("zassenhaus", p).rng()
    n = pres.rank
    while True:
        a = [rng.randint(-H, H) for _ in range(n)]
        if any(a):
            break
    c = rng.randint(p, 2 * p - 1)
    diff = shifted_difference(pres, c, a)
    det = _int_det(regular_rep(pres, diff))
    if det == 0:
        return None
    return complete_datum(pres, p, a, c)


def _int_det(matrix: list[list[int]]) -> int:
    n = len(matrix)
    m = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[pivot], m[col] = m[col], m[pivot]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return int(det)


def verify_pair(pres: RingPresentation, a, e, datum: ZassenhausDatum) -> bool:
    """Whether the datum certifies the pair: a_p = a and p | order((c_p-a)**-1 e)."""
    if all(x == 0 for x in e):
        raise ParameterError("e must be non-zero")
    if tuple(a) != datum.a_p:
        return False
    diff = shifted_difference(pres, datum.c_p, a)
    inv = invert_in_QA(pres, diff)
    target = rational_action(pres, inv, e)
    return order_in_QA_mod_A(target) % datum.p == 0


@dataclass
class ConstructionReport:
    """Sampled data plus per-pair verification ledger."""

    ring: dict
    prime_budget: int
    coordinate_bound: int
    data: list[ZassenhausDatum] = field(default_factory=list)
    pairs: list[dict] = field(default_factory=list)

    def __post_init__(self):
        primes = [d.p for d in self.data]
        if len(primes) != len(set(primes)):
            raise ParameterError("primes must be pairwise distinct across data")

    def to_json(self) -> dict:
        return {
            "ring": self.ring,
            "prime_budget": self.prime_budget,
            "coordinate_bound": self.coordinate_bound,
            "data": [d.to_json() for d in self.data],
            "pairs": self.pairs,
        }


def deterministic_scan(
    pres: RingPresentation, a, e, budget: int, max_hits: int = 8
) -> tuple[list[dict], list[int]]:
    """Primes found through roots of the reduced denominator polynomial.

    Scans primes up to the budget outside the exceptional set, lifts each
    root c0 of f mod p to c = c0 + p inside [p, 2p-1], and keeps the datum
    only when verify_pair confirms it.
    """
    f, exceptional, _coords = denominator_polynomial(pres, a, e)
    coeffs = f.univariate_coeffs()
    hits = []
    for p in primes_up_to(budget):
        if p in exceptional:
            continue
        if len(hits) >= max_hits:
            break
        for c0 in range(p):
            acc = 0
            for coef in reversed(coeffs):
                acc = (acc * c0 + coef) % p
            if acc:
                continue
            c = c0 + p
            diff = shifted_difference(pres, c, a)
            if _int_det(regular_rep(pres, diff)) == 0:
                continue
            datum = complete_datum(pres, p, a, c)
            if verify_pair(pres, a, e, datum):
                hits.append({"p": p, "c": c, "datum": datum.to_json()})
                break
    return hits, sorted(exceptional)


def realize(
    pres: RingPresentation,
    pair_list,
    prime_budget: int,
    H: int = 3,
    seed=0,
    deterministic_only: bool = False,
) -> ConstructionReport:
    """Sweep primes up to the budget and verify every requested pair.

    pair_list holds (a, e) coordinate tuples with entries bounded by H.
    Each pair's entry reports which sampled datum (if any) verifies it and
    the deterministic fallback hits; a pair with no prime inside the
    budget is reported budget-exhausted rather than raised.
    """
    if prime_budget < 2:
        raise ParameterError("prime budget must be at least 2")
    base = _as_seed(seed)
    data: list[ZassenhausDatum] = []
    if not deterministic_only:
        for p in primes_up_to(prime_budget):
            datum = sample_datum(pres, p, H, base)
            if datum is not None:
                data.append(datum)
    pair_reports = []
    for a, e in pair_list:
        a = tuple(int(x) for x in a)
        e = tuple(int(x) for x in e)
        if any(abs(x) > H for x in a):
            raise ParameterError(f"pair element {a} outside coordinate bound {H}")
        sampled_hit = None
        for datum in data:
            if verify_pair(pres, a, e, datum):
                sampled_hit = datum.to_json()
                break
        det_hits, exceptional = deterministic_scan(pres, a, e, prime_budget)
        status = "verified" if (sampled_hit or det_hits) else "budget-exhausted"
        pair_reports.append(
            {
                "a": list(a),
                "e": list(e),
                "status": status,
                "sampled_hit": sampled_hit,
                "deterministic_hits": det_hits,
                "exceptional_primes": exceptional,
            }
        )
    return ConstructionReport(
        ring=pres.to_json(),
        prime_budget=prime_budget,
        coordinate_bound=H,
        data=data,
        pairs=pair_reports,
    )


@dataclass(frozen=True)
class MembershipCertificate:
    """Explicit decomposition p_i**-r_i (c_i - a_i) m = a + sum_j p_j**-r_j (c_j - a_j) b_j."""

    a: tuple
    b: dict  # datum index -> integer coordinate tuple

    def to_json(self) -> dict:
        return {"a": list(self.a), "b": {str(k): list(v) for k, v in self.b.items()}}


def _left_scaled_action(pres, element, denominator: int, v: RationalVector) -> RationalVector:
    """(element / denominator) * v in the rationalized ring."""
    prod = pres.mul(list(element), list(v.coords))
    return RationalVector(tuple(Fraction(x) / denominator for x in prod))


def order_condition_check(
    pres: RingPresentation,
    data: list[ZassenhausDatum],
    m: RationalVector,
    i: int,
    certificate: MembershipCertificate,
) -> bool:
    """Confirm that p_i does not divide the order of m modulo A.

    Re-verifies the certificate equation exactly, multiplies it on the
    left by a-tilde = p_i**r_i * d_i * (c_i - a_i)**-1, and checks that
    the order of the resulting right-hand side (which equals d_i * m) is
    coprime to p_i; gcd(d_i, p_i) = 1 then bounds the order of m itself.
    """
    datum = data[i]
    bmap = {int(k): tuple(v) for k, v in certificate.b.items()}
    diff_i = shifted_difference(pres, datum.c_p, list(datum.a_p))
    lhs = _left_scaled_action(pres, diff_i, datum.p**datum.r_p, m)
    rhs = RationalVector(tuple(Fraction(x) for x in certificate.a))
    for j, b in bmap.items():
        dj = data[j]
        diff_j = shifted_difference(pres, dj.c_p, list(dj.a_p))
        rhs = rhs + _left_scaled_action(
            pres, diff_j, dj.p**dj.r_p, RationalVector(tuple(Fraction(x) for x in b))
        )
    if lhs.coords != rhs.coords:
        raise CertificateError("certificate sides differ under exact re-evaluation")

    inv_i = invert_in_QA(pres, diff_i)
    atilde = [Fraction(datum.p**datum.r_p * datum.d_p) * x for x in inv_i.coords]
    multiplied = RationalVector(tuple(pres.mul(atilde, [Fraction(x) for x in certificate.a])))
    b_i = bmap.get(i, (0,) * pres.rank)
    multiplied = multiplied + RationalVector(tuple(Fraction(datum.d_p * x) for x in b_i))
    for j, b in bmap.items():
        if j == i:
            continue
        dj = data[j]
        diff_j = shifted_difference(pres, dj.c_p, list(dj.a_p))
        inner = pres.mul(pres.mul(atilde, diff_j), list(b))
        multiplied = multiplied + RationalVector(
            tuple(Fraction(x) / dj.p**dj.r_p for x in inner)
        )
    d_m = RationalVector(tuple(Fraction(datum.d_p) * x for x in m.coords))
    if d_m.coords != multiplied.coords:
        raise CertificateError("multiplied certificate does not reproduce d_i * m")
    return order_in_QA_mod_A(multiplied) % datum.p != 0
