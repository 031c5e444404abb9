"""Shared Monte Carlo machinery and the invertible-matrix worked example.

Experiments draw per-trial seeds along a labeled derivation path, so a
summary is a pure function of (experiment, parameters, trials, seed) and
independent of scheduling.  All acceptance-style checks use a three-sigma
binomial tolerance around an exact rational target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError, UnknownExperimentError
from .padic import is_prime
from .sampling import Seed, _as_seed


@dataclass(frozen=True)
class TrialSummary:
    """Trial counts with an optional exact target and binomial z-score."""

    trials: int
    successes: int
    target: Fraction | None = None

    @property
    def frequency(self) -> float | None:
        if self.trials == 0:
            return None
        return self.successes / self.trials

    @property
    def z_score(self) -> float | None:
        if self.trials == 0 or self.target is None:
            return None
        t = float(self.target)
        spread = math.sqrt(t * (1 - t) / self.trials)
        if spread == 0:
            return 0.0 if self.frequency == t else math.inf
        return (self.frequency - t) / spread

    def within_sigma(self, sigmas: float = 3.0) -> bool:
        z = self.z_score
        if z is None:
            raise ParameterError("no target to compare against")
        return abs(z) <= sigmas

    def merge(self, other: "TrialSummary") -> "TrialSummary":
        if self.target != other.target:
            raise ParameterError("cannot merge summaries with different targets")
        return TrialSummary(self.trials + other.trials, self.successes + other.successes, self.target)

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "frequency": self.frequency,
            "target": None
            if self.target is None
            else {
                "rational": f"{self.target.numerator}/{self.target.denominator}",
                "decimal": float(self.target),
            },
            "z_score": None if self.z_score is None else float(self.z_score),
        }


def gl_exact_count(n: int, q: int) -> int:
    """Number of invertible n x n matrices over the q-element field."""
    if n < 1 or q < 2:
        raise ParameterError("need n >= 1 and a prime power q >= 2")
    return math.prod(q**n - q ** (k - 1) for k in range(1, n + 1))


def gl_invertibility_target(n: int, q: int) -> Fraction:
    """Exact probability that a uniform matrix is invertible."""
    return Fraction(gl_exact_count(n, q), q ** (n * n))


def _rank_mod_q(matrix: list[list[int]], q: int) -> int:
    m = [row[:] for row in matrix]
    n = len(m)
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, n) if m[r][col] % q), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], -1, q)
        m[rank] = [(x * inv) % q for x in m[rank]]
        for r in range(n):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(a - f * b) % q for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def gl_invertibility_mc(n: int, q: int, trials: int, seed) -> TrialSummary:
    """Frequency of invertible uniform matrices, ranked by elimination mod q."""
    if not is_prime(q):
        raise ParameterError(f"field arithmetic is implemented for prime q only, got {q}")
    base = _as_seed(seed)
    successes = 0
    for t in range(trials):
        rng = base.child("gl", n, q, t).rng()
        matrix = [[rng.randrange(q) for _ in range(n)] for _ in range(n)]
        if _rank_mod_q(matrix, q) == n:
            successes += 1
    return TrialSummary(trials, successes, gl_invertibility_target(n, q))


_EXPERIMENTS: dict = {}


def register_experiment(name: str, fn) -> None:
    """Register fn(params: dict, trial_seed: Seed) -> bool under a name."""
    _EXPERIMENTS[name] = fn


def registered_experiments() -> list[str]:
    return sorted(_EXPERIMENTS)


def run_trials(
    name: str,
    trials: int,
    seed,
    params: dict | None = None,
    target: Fraction | None = None,
) -> TrialSummary:
    """Run a registered experiment with per-trial derived seeds."""
    if name not in _EXPERIMENTS:
        raise UnknownExperimentError(
            f"unknown experiment {name!r}; registered: {registered_experiments()}"
        )
    fn = _EXPERIMENTS[name]
    base = _as_seed(seed)
    params = params or {}
    successes = 0
    for t in range(trials):
        if fn(params, base.child(name, t)):
            successes += 1
    return TrialSummary(trials, successes, target)


def _gl_experiment(params: dict, trial_seed: Seed) -> bool:
    n, q = params["n"], params["q"]
    rng = trial_seed.rng()
    matrix = [[rng.randrange(q) for _ in range(n)] for _ in range(n)]
    return _rank_mod_q(matrix, q) == n


register_experiment("gl_invertibility", _gl_experiment)
