"""Linear independence over truncated p-adics and finite-rank purification.

The independence verdict uses column reduction with minimal-valuation
pivoting; a full-rank reduction whose pivots survive half the precision
is reported independent.  That margin is a declared heuristic, never a
proof: dependence witnesses are exact mod p**N, independence is evidence.

finite_rank_free_basis computes a basis for the p-purification of an
integer span inside the basis window, dividing by p (and only p) until no
kernel remains mod p, with the division depth capped by K.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError, PurificationCapError
from .modlinalg import diagonalize
from .padic import PadicVector
from .sampling import _as_seed, nearly_uniform_window, sample_nearly_uniform


@dataclass(frozen=True)
class IndependenceVerdict:
    """Outcome of the mod-p**N column reduction."""

    independent: bool
    witness: list | None
    pivot_valuations: list

    def __post_init__(self):
        if self.independent == (self.witness is not None):
            raise ParameterError("witness present iff not independent")

    def to_json(self) -> dict:
        return {
            "independent": self.independent,
            "witness": None if self.witness is None else [str(c) for c in self.witness],
            "pivot_valuations": list(self.pivot_valuations),
        }


def _common_pn(vectors: list[PadicVector]) -> tuple[int, int, int]:
    if not vectors:
        raise ParameterError("need at least one vector")
    p, N = vectors[0].p, vectors[0].N
    for v in vectors:
        vectors[0]._check_compatible(v)
    window = 1 + max((max(v.entries, default=0) for v in vectors), default=0)
    return p, N, window


def jp_linear_independence(
    vectors: list[PadicVector], window: int | None = None
) -> IndependenceVerdict:
    """Independence of the vectors over the truncated scalars.

    Independent means full column rank with every pivot valuation below
    N/2, so the verdict is stable under refinement.  Otherwise an exact
    mod-p**N dependence witness is returned.  More vectors than window
    coordinates is allowed and simply forces a dependence.
    """
    p, N, support_window = _common_pn(vectors)
    window = support_window if window is None else max(window, support_window)
    matrix = [[v.entries.get(row, 0) for v in vectors] for row in range(window)]
    diag = diagonalize(matrix, p, N)
    vals = diag.pivot_valuations
    if diag.rank == len(vectors) and all(2 * v < N for v in vals):
        return IndependenceVerdict(True, None, vals)
    weak = next((j for j, v in enumerate(vals) if 2 * v >= N), diag.rank)
    witness = diag.kernel_vector(weak)
    check = [0] * window
    for c, v in zip(witness, vectors):
        for row, res in v.entries.items():
            check[row] = (check[row] + c * res) % p**N
    if any(check):
        raise AssertionError("dependence witness failed exact re-check")
    return IndependenceVerdict(False, witness, vals)


@dataclass(frozen=True)
class ContainmentReport:
    """Empirical frequency of landing in a span-plus-p**n-coset."""

    p: int
    k: int
    n: int
    alpha: float
    trials: int
    hits: int
    bound: float
    exact_probability: float | None
    basis: list

    @property
    def frequency(self) -> float:
        return self.hits / self.trials

    @property
    def standard_error(self) -> float:
        q = min(self.bound, 1.0)
        return math.sqrt(q * (1 - q) / self.trials)

    @property
    def passed(self) -> bool:
        if self.bound >= 1.0:
            return True
        return self.frequency <= self.bound + 3 * self.standard_error

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "n": self.n,
            "alpha": self.alpha,
            "trials": self.trials,
            "hits": self.hits,
            "frequency": self.frequency,
            "bound": self.bound,
            "standard_error": self.standard_error,
            "passed": self.passed,
            "exact_probability": self.exact_probability,
            "basis": [b.to_json() for b in self.basis],
        }


def containment_probability_trial(
    p: int, k: int, n: int, alpha: float, trials: int, seed
) -> ContainmentReport:
    """Frequency of a fresh draw lying in <b_1..b_k> + p**n B.

    The b_i are drawn once from the nearly uniform law and recorded in the
    report; containment is an exact linear solve mod p**n.  The bound is
    p**(n*k - n**alpha); with k = 0 the exact coset probability
    p**(-n*(w+1)) is also reported.
    """
    base = _as_seed(seed)
    basis = [sample_nearly_uniform(p, n, alpha, base.child("b", i)) for i in range(k)]
    window = 1 + nearly_uniform_window(n, alpha)
    matrix = [[b.entries.get(row, 0) for b in basis] for row in range(window)]
    diag = diagonalize(matrix, p, n) if k else None
    hits = 0
    for t in range(trials):
        a = sample_nearly_uniform(p, n, alpha, base.child("a", t))
        target = [a.entries.get(row, 0) for row in range(window)]
        if k == 0:
            contained = all(x == 0 for x in target)
        else:
            contained = diag.solve(target) is not None
        hits += contained
    bound = float(p) ** (n * k - n**alpha)
    exact = float(p) ** (-n * window) if k == 0 else None
    return ContainmentReport(p, k, n, alpha, trials, hits, bound, exact, basis)


@dataclass(frozen=True)
class FreeBasisResult:
    """Basis of the capped p-purification of an integer span."""

    basis: list
    rank: int

    def to_json(self) -> dict:
        return {"rank": self.rank, "basis": [[str(x) for x in b] for b in self.basis]}


def _column_echelon(cols: list[list[int]]) -> list[list[int]]:
    """Integer column echelon form, keeping one pivot column per pivot row."""
    work = [c[:] for c in cols if any(c)]
    done: list[list[int]] = []
    if not work:
        return done
    width = len(work[0])
    for row in range(width):
        cands = [j for j, c in enumerate(work) if c[row] != 0]
        while len(cands) > 1:
            cands.sort(key=lambda j: abs(work[j][row]))
            j0 = cands[0]
            for j in cands[1:]:
                q = work[j][row] // work[j0][row]
                work[j] = [a - q * b for a, b in zip(work[j], work[j0])]
            cands = [j for j in cands if work[j][row] != 0]
        if cands:
            j = cands[0]
            done.append(work[j])
            work = [c for i, c in enumerate(work) if i != j and any(c)]
        else:
            work = [c for c in work if any(c)]
    return done


def finite_rank_free_basis(elements: list[PadicVector], K: int) -> FreeBasisResult:
    """Purify the integer span at p with denominators capped at p**K.

    Lifts the residues to integers, reduces to an independent column set,
    and repeatedly divides kernel combinations mod p by p.  More than K
    division rounds means the purification is still growing at the cap,
    which is reported as inconclusive rather than answered.
    """
    if K < 0:
        raise ParameterError("denominator cap must be non-negative")
    p, _, window = _common_pn(elements)
    cols = [[v.entries.get(row, 0) for row in range(window)] for v in elements]
    basis = _column_echelon(cols)
    rank = len(basis)
    rounds = 0
    while True:
        if not basis:
            break
        matrix = [[c[row] for c in basis] for row in range(window)]
        diag = diagonalize(matrix, p, 1)
        if diag.rank == len(basis):
            break
        if rounds >= K:
            raise PurificationCapError(
                f"purification still growing after {K} division rounds"
            )
        rounds += 1
        fresh = []
        for j in range(diag.rank, len(basis)):
            y = diag.kernel_vector(j)
            combo = [
                sum(y[i] * basis[i][row] for i in range(len(basis))) for row in range(window)
            ]
            if any(x % p for x in combo):
                raise AssertionError("kernel combination not divisible by p")
            fresh.append([x // p for x in combo])
        basis = _column_echelon(basis + fresh)
        if len(basis) != rank:
            raise AssertionError("purification changed the rank")
    return FreeBasisResult([tuple(b) for b in basis], rank)
