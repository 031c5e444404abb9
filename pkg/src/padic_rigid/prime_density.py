"""Prime scans: which primes give a polynomial a root, and how often.

Root detection is a direct vectorized scan of all residues, exact for the
desk-scale bounds this package targets (X up to about 10**6).  Reciprocal
sums are kept as exact fractions; floating point only appears in the
convenience decimal fields of reports.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ParameterError
from .polynomials import IntPolynomial


def max_threads() -> int:
    """Parallelism cap from PADIC_RIGID_THREADS (default 1)."""
    raw = os.environ.get("PADIC_RIGID_THREADS", "1")
    try:
        value = int(raw)
    except ValueError as exc:
        raise ParameterError(f"PADIC_RIGID_THREADS must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ParameterError("PADIC_RIGID_THREADS must be positive")
    return value


def primes_up_to(X: int) -> list[int]:
    """Ascending primes <= X by a boolean sieve."""
    if X < 2:
        raise ParameterError(f"sieve bound must be at least 2, got {X}")
    flags = np.ones(X + 1, dtype=bool)
    flags[:2] = False
    for d in range(2, int(X**0.5) + 1):
        if flags[d]:
            flags[d * d :: d] = False
    return [int(p) for p in np.nonzero(flags)[0]]


def has_root_mod_p(f: IntPolynomial, p: int) -> bool:
    """Whether f has a root modulo p, by scanning all residues."""
    coeffs = _nonconstant_coeffs(f)
    return _scan_root(coeffs, p)


def _nonconstant_coeffs(f: IntPolynomial) -> list[int]:
    if f.variables != 1:
        raise ParameterError("root scans are univariate")
    coeffs = f.univariate_coeffs()
    if len(coeffs) < 2:
        raise ParameterError("constant polynomials are not scanned")
    return coeffs


_SCAN_CHUNK_MIN = 1 << 11
_SCAN_CHUNK_MAX = 1 << 16
_SCAN_SAFE = 1 << 62


def _scan_root(coeffs: list[int], p: int) -> bool:
    rev = [c % p for c in reversed(coeffs)]
    acc = np.empty(min(p, _SCAN_CHUNK_MAX), dtype=np.int64)
    start = 0
    chunk = _SCAN_CHUNK_MIN
    while start < p:
        stop = min(start + chunk, p)
        xs = np.arange(start, stop, dtype=np.int64)
        view = acc[: stop - start]
        view.fill(rev[0])
        bound = p - 1
        for c in rev[1:]:
            # reduce mod p only when the next Horner step could overflow
            if bound * (p - 1) + (p - 1) >= _SCAN_SAFE:
                np.mod(view, p, out=view)
                bound = p - 1
            np.multiply(view, xs, out=view)
            if c:
                view += c
            bound = bound * (p - 1) + c
        np.mod(view, p, out=view)
        if not view.all():
            return True
        start = stop
        chunk = min(chunk * 4, _SCAN_CHUNK_MAX)
    return False


@dataclass
class DensityReport:
    """Counts, exact reciprocal sum, and per-decade checkpoints for one scan."""

    polynomial: str
    X: int
    primes_scanned: int
    primes_with_root: int
    reciprocal_sum: Fraction
    decades: list[dict] = field(default_factory=list)

    @property
    def density(self) -> float:
        return self.primes_with_root / self.primes_scanned

    def to_json(self) -> dict:
        return {
            "polynomial": self.polynomial,
            "X": self.X,
            "primes_scanned": self.primes_scanned,
            "primes_with_root": self.primes_with_root,
            "reciprocal_sum": {
                "rational": f"{self.reciprocal_sum.numerator}/{self.reciprocal_sum.denominator}",
                "decimal": float(self.reciprocal_sum),
            },
            "density": self.density,
            "decades": self.decades,
        }

    def to_csv_rows(self) -> list[list]:
        rows = [["decade", "primes_scanned", "primes_with_root", "reciprocal_sum_decimal"]]
        for d in self.decades:
            rows.append(
                [d["bound"], d["primes_scanned"], d["primes_with_root"], d["reciprocal_sum_decimal"]]
            )
        return rows


def density_report(f: IntPolynomial, X: int) -> DensityReport:
    """Full scan of primes <= X with exact reciprocal bookkeeping."""
    coeffs = _nonconstant_coeffs(f)
    primes = primes_up_to(X)
    threads = max_threads()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            root_flags = list(pool.map(lambda p: _scan_root(coeffs, p), primes, chunksize=256))
    else:
        root_flags = [_scan_root(coeffs, p) for p in primes]

    reciprocal = Fraction(0)
    with_root = 0
    decades = []
    next_decade = 10
    for idx, (p, has) in enumerate(zip(primes, root_flags)):
        while p > next_decade and next_decade <= X:
            decades.append(
                {
                    "bound": next_decade,
                    "primes_scanned": idx,
                    "primes_with_root": with_root,
                    "reciprocal_sum_decimal": float(reciprocal),
                }
            )
            next_decade *= 10
        if has:
            with_root += 1
            reciprocal += Fraction(1, p)
    while next_decade <= X:
        decades.append(
            {
                "bound": next_decade,
                "primes_scanned": len(primes),
                "primes_with_root": with_root,
                "reciprocal_sum_decimal": float(reciprocal),
            }
        )
        next_decade *= 10
    return DensityReport(
        polynomial=str(f),
        X=X,
        primes_scanned=len(primes),
        primes_with_root=with_root,
        reciprocal_sum=reciprocal,
        decades=decades,
    )
