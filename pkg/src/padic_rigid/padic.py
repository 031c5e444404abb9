"""Exact arithmetic on truncated p-adic integers.

A value is a residue modulo p**N together with the pair (p, N).  All
operations require both operands to carry the same prime and the same
precision; there is no silent coercion, which keeps precision drift
impossible by construction.  Values are immutable and safe to share.

PadicVector holds finitely supported vectors over a countable basis with
one truncated p-adic entry per stored index.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import IncompatibleOperandsError, NonUnitError, ParameterError, PrecisionError


def is_prime(p: int) -> bool:
    """Trial-division primality check, adequate for desk-scale primes."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PadicApprox:
    """A p-adic integer known to precision N, stored as residue mod p**N."""

    p: int
    N: int
    residue: int

    def __post_init__(self):
        if self.N < 1:
            raise PrecisionError(f"precision must be positive, got {self.N}")
        if not is_prime(self.p):
            raise ParameterError(f"{self.p} is not prime")
        object.__setattr__(self, "residue", self.residue % self.p**self.N)

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def _check_compatible(self, other: "PadicApprox") -> None:
        if self.p != other.p or self.N != other.N:
            raise IncompatibleOperandsError(
                f"mismatched (p, N): ({self.p}, {self.N}) vs ({other.p}, {other.N})"
            )

    def __add__(self, other: "PadicApprox") -> "PadicApprox":
        return padd(self, other)

    def __mul__(self, other: "PadicApprox") -> "PadicApprox":
        return pmul(self, other)

    def __neg__(self) -> "PadicApprox":
        return PadicApprox(self.p, self.N, -self.residue)

    def __sub__(self, other: "PadicApprox") -> "PadicApprox":
        self._check_compatible(other)
        return PadicApprox(self.p, self.N, self.residue - other.residue)

    def to_json(self) -> dict:
        return {"p": self.p, "N": self.N, "residue": str(self.residue)}


def padd(x: PadicApprox, y: PadicApprox) -> PadicApprox:
    """Sum mod p**N."""
    x._check_compatible(y)
    return PadicApprox(x.p, x.N, x.residue + y.residue)


def pmul(x: PadicApprox, y: PadicApprox) -> PadicApprox:
    """Product mod p**N."""
    x._check_compatible(y)
    return PadicApprox(x.p, x.N, x.residue * y.residue)


def unit_inverse(x: PadicApprox) -> PadicApprox:
    """Multiplicative inverse of a unit (residue not divisible by p)."""
    if x.residue % x.p == 0:
        raise NonUnitError(f"residue {x.residue} is divisible by p={x.p}")
    return PadicApprox(x.p, x.N, pow(x.residue, -1, x.modulus))


def valuation(x: PadicApprox) -> int:
    """Largest v <= N with p**v dividing the residue; N for residue 0.

    The value N means "at least N at this precision", not exactly N.
    """
    return valuation_of(x.residue, x.p, x.N)


def valuation_of(residue: int, p: int, cap: int) -> int:
    """p-adic valuation of an integer, capped at `cap` (0 maps to cap)."""
    if residue % p**cap == 0:
        return cap
    v = 0
    while residue % p == 0:
        residue //= p
        v += 1
    return v


def reduce_precision(x: PadicApprox, M: int) -> PadicApprox:
    """Project to precision M <= N."""
    if not 1 <= M <= x.N:
        raise PrecisionError(f"target precision {M} not in [1, {x.N}]")
    return PadicApprox(x.p, M, x.residue % x.p**M)


@dataclass(frozen=True)
class PadicVector:
    """Finitely supported vector with truncated p-adic entries.

    Entries map a basis index (non-negative integer) to a residue in
    [0, p**N); zero residues are never stored.
    """

    p: int
    N: int
    entries: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.N < 1:
            raise PrecisionError(f"precision must be positive, got {self.N}")
        if not is_prime(self.p):
            raise ParameterError(f"{self.p} is not prime")
        mod = self.p**self.N
        cleaned = {}
        for idx, res in self.entries.items():
            if idx < 0:
                raise ParameterError(f"negative basis index {idx}")
            res %= mod
            if res:
                cleaned[idx] = res
        object.__setattr__(self, "entries", cleaned)

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def support(self) -> frozenset[int]:
        return frozenset(self.entries)

    def entry(self, idx: int) -> PadicApprox:
        return PadicApprox(self.p, self.N, self.entries.get(idx, 0))

    def _check_compatible(self, other: "PadicVector") -> None:
        if self.p != other.p or self.N != other.N:
            raise IncompatibleOperandsError(
                f"mismatched (p, N): ({self.p}, {self.N}) vs ({other.p}, {other.N})"
            )

    def __add__(self, other: "PadicVector") -> "PadicVector":
        self._check_compatible(other)
        merged = dict(self.entries)
        for idx, res in other.entries.items():
            merged[idx] = merged.get(idx, 0) + res
        return PadicVector(self.p, self.N, merged)

    def __neg__(self) -> "PadicVector":
        return PadicVector(self.p, self.N, {i: -r for i, r in self.entries.items()})

    def __sub__(self, other: "PadicVector") -> "PadicVector":
        return self + (-other)

    def scale(self, c: int) -> "PadicVector":
        """Multiply every entry by the integer (or residue) c."""
        return PadicVector(self.p, self.N, {i: r * c for i, r in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def reduce_precision(self, M: int) -> "PadicVector":
        if not 1 <= M <= self.N:
            raise PrecisionError(f"target precision {M} not in [1, {self.N}]")
        return PadicVector(self.p, M, dict(self.entries))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "N": self.N,
            "entries": {str(i): str(r) for i, r in sorted(self.entries.items())},
        }


def basis_vector(p: int, N: int, idx: int, value: int = 1) -> PadicVector:
    """The vector value * e_idx."""
    return PadicVector(p, N, {idx: value})
