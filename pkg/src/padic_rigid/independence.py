"""Relation search and root counting for truncated p-adic values.

find_relation decides, exhaustively within the stated degree/height box,
whether any non-zero integer polynomial vanishes modulo p**N on the given
values.  The constant monomial always evaluates to a unit, so the search
parametrizes the solution coset of the single congruence by the remaining
coefficients and enumerates exactly the box; a machine-word prefilter
modulo a smaller power of p keeps the scan vectorized, and every survivor
is confirmed at full precision.  A "found" verdict is a relation at
precision N, never a claim of genuine algebraic dependence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, ResourceLimitError
from .padic import PadicApprox, valuation_of
from .polynomials import IntPolynomial, evaluate

_CHUNK = 1 << 18
_MAX_ROOT_CLASSES = 1_000_000


def monomials_up_to(variables: int, degree: int) -> list[tuple]:
    """Exponent vectors of total degree <= degree, in (degree, exps) order."""
    out = []
    for exps in itertools.product(range(degree + 1), repeat=variables):
        if sum(exps) <= degree:
            out.append(exps)
    out.sort(key=lambda e: (sum(e), e))
    return out


@dataclass(frozen=True)
class RelationReport:
    """Outcome of a bounded relation search at one precision."""

    found: bool
    witness: IntPolynomial | None
    degree_bound: int
    height_bound: int
    precision: int
    candidates_scanned: int

    def __post_init__(self):
        if self.found != (self.witness is not None):
            raise ParameterError("witness present iff found")

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "meaning": f"relation at precision {self.precision}" if self.found
            else f"no relation within bounds at precision {self.precision}",
            "witness": self.witness.to_json() if self.witness else None,
            "degree_bound": self.degree_bound,
            "height_bound": self.height_bound,
            "precision": self.precision,
            "candidates_scanned": self.candidates_scanned,
        }


def _normalize_sign(mono_order: list[tuple], coeffs: dict[tuple, int]) -> dict[tuple, int]:
    for e in mono_order:
        c = coeffs.get(e, 0)
        if c:
            if c < 0:
                return {k: -v for k, v in coeffs.items()}
            return coeffs
    return coeffs


def find_relation(
    xs: list[PadicApprox],
    degree: int,
    height: int,
    max_candidates: int = 50_000_000,
) -> RelationReport:
    """Exhaustive box search for a vanishing polynomial mod p**N.

    Raises ResourceLimitError when (2*height+1)**(#monomials - 1) exceeds
    max_candidates; the spaces the default bounds allow are scanned in
    full, so "not found" is definitive for the box.
    """
    if not xs:
        raise ParameterError("need at least one value")
    if degree < 1 or height < 1:
        raise ParameterError("degree and height bounds must be positive")
    p, n_prec = xs[0].p, xs[0].N
    for x in xs:
        xs[0]._check_compatible(x)
    mod = p**n_prec
    k = len(xs)
    monos = monomials_up_to(k, degree)
    residues = [x.residue for x in xs]
    values = []
    for e in monos:
        v = 1
        for r, exp in zip(residues, e):
            v = v * pow(r, exp, mod) % mod
        values.append(v)

    # The constant monomial sits first and evaluates to 1, a unit pivot.
    pivot = 0
    assert monos[pivot] == (0,) * k and values[pivot] == 1
    free = [i for i in range(len(monos)) if i != pivot]

    base = 2 * height + 1
    total = base ** len(free)
    if total > max_candidates:
        raise ResourceLimitError(
            f"relation search space {base}**{len(free)} = {total} exceeds "
            f"budget {max_candidates}"
        )

    # Prefilter modulus: largest power of p that keeps the vectorized
    # partial sums inside int64.
    filter_N = 1
    while filter_N < n_prec and p ** (filter_N + 1) <= (1 << 62) // (height + 1):
        filter_N += 1
    fmod = p**filter_N
    exact_filter = filter_N == n_prec
    free_vals_small = np.array([values[i] % fmod for i in free], dtype=np.int64)

    scanned = 0
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        idx = np.arange(start, stop, dtype=np.int64)
        scanned += stop - start
        acc = np.zeros(stop - start, dtype=np.int64)
        rem = idx
        for vi in free_vals_small:
            digit = rem % base
            rem = rem // base
            acc = (acc + (digit - height) * vi) % fmod
        needed = (-acc) % fmod
        ok = (needed <= height) | (needed >= fmod - height)
        for local in np.nonzero(ok)[0]:
            combo = int(idx[local])
            coeffs: dict[tuple, int] = {}
            s_full = 0
            rem_i = combo
            for i in free:
                digit = rem_i % base
                rem_i //= base
                c = digit - height
                if c:
                    coeffs[monos[i]] = c
                    s_full += c * values[i]
            r_full = (-s_full) % mod
            if r_full <= height:
                c_piv = r_full
            elif r_full >= mod - height:
                c_piv = r_full - mod
            elif exact_filter:
                raise AssertionError("exact filter produced a false positive")
            else:
                continue
            if c_piv:
                coeffs[monos[pivot]] = c_piv
            if not coeffs:
                continue
            witness = IntPolynomial(k, _normalize_sign(monos, coeffs))
            check = evaluate(witness, xs)
            if check.residue != 0:
                raise AssertionError("witness failed self-check")
            return RelationReport(True, witness, degree, height, n_prec, scanned)
    return RelationReport(False, None, degree, height, n_prec, total)


def count_roots_mod_pN(g: IntPolynomial, p: int, N: int) -> int:
    """Exact number of x in [0, p**N) with g(x) = 0 mod p**N.

    Root classes are lifted level by level from mod p upward; each
    surviving class mod p**j branches into at most p refinements.
    """
    if g.is_zero():
        raise ParameterError("zero polynomial has every residue as a root")
    if g.variables != 1:
        raise ParameterError("root counting is univariate")
    coeffs = g.univariate_coeffs()

    def eval_mod(x: int, m: int) -> int:
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % m
        return acc

    classes = [x for x in range(p) if eval_mod(x, p) == 0]
    modulus = p
    for level in range(2, N + 1):
        modulus *= p
        step = modulus // p
        refined = []
        for x in classes:
            for t in range(p):
                cand = x + t * step
                if eval_mod(cand, modulus) == 0:
                    refined.append(cand)
        if len(refined) > _MAX_ROOT_CLASSES:
            raise ResourceLimitError(
                f"{len(refined)} root classes at level {level} exceed the cap"
            )
        classes = refined
    return len(classes)


def root_bound_check(
    g: IntPolynomial,
    lambdas: list[int],
    h: IntPolynomial,
    M: int,
    p: int,
    N: int,
) -> bool:
    """Check the root count against l * p**(N - floor((N-M)/l)).

    Requires g = h * prod(x - lambda_i) exactly over the integers and h
    root-free mod p**(M+1); both are re-verified here.  With no linear
    factors the count must be zero and the check is vacuous.
    """
    if N <= M:
        raise ParameterError(f"need N > M, got N={N}, M={M}")
    product = h
    for lam in lambdas:
        product = product * IntPolynomial(1, {(1,): 1, (0,): -lam})
    if product.terms != g.terms:
        raise ParameterError("factorization identity fails: g != h * prod(x - lambda_i)")
    if h.degree() >= 1:
        m_mod = p ** (M + 1)
        h_coeffs = h.univariate_coeffs()
        for x in range(m_mod):
            acc = 0
            for c in reversed(h_coeffs):
                acc = (acc * x + c) % m_mod
            if acc == 0:
                raise ParameterError(f"cofactor has root {x} mod {p}**{M + 1}")
    count = count_roots_mod_pN(g, p, N)
    l = len(lambdas)
    if l == 0:
        return count == 0
    bound = l * p ** (N - (N - M) // l)
    return count <= bound
