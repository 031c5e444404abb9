"""Seeded samplers for every random object the constructions consume.

All draws are pure functions of (parameters, seed).  A Seed carries a
64-bit value plus a derivation path of labels; deriving a child seed for
each sampled object makes results independent of draw order, so parallel
trials with disjoint paths are bit-reproducible.

The tree sampler realizes the doubling-digit construction: one digit a_s
per 0-1 sequence s, with a_s uniform on [0, p**(2**(n+1) - 2**n)) for
n = len(s).  Branch values pack the digits of a root-to-leaf path into a
single residue; prefixes of a branch agree with the branch value modulo
the appropriate power of p, which is the congruence the tests enforce.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field

from .errors import ParameterError, PrecisionError
from .padic import PadicApprox, PadicVector

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Seed:
    """A 64-bit seed plus a derivation path of hashable labels."""

    value: int
    path: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "value", self.value & _MASK64)

    def child(self, *labels) -> "Seed":
        return Seed(self.value, self.path + tuple(labels))

    def to_int(self) -> int:
        text = str(self.value) + "|" + "/".join(repr(x) for x in self.path)
        digest = hashlib.blake2b(text.encode(), digest_size=8).digest()
        return int.from_bytes(digest, "big")

    def rng(self) -> random.Random:
        return random.Random(self.to_int())


def _as_seed(seed) -> Seed:
    if isinstance(seed, Seed):
        return seed
    return Seed(int(seed))


def sample_uniform(p: int, N: int, seed) -> PadicApprox:
    """Uniform residue mod p**N, refinement-consistent in N.

    The digit stream depends only on (p, seed), so the precision-M
    reduction of a precision-N draw equals the precision-M draw.
    """
    if N < 1:
        raise PrecisionError(f"precision must be positive, got {N}")
    rng = _as_seed(seed).child("uniform", p).rng()
    residue = 0
    power = 1
    for _ in range(N):
        residue += rng.randrange(p) * power
        power *= p
    return PadicApprox(p, N, residue)


@dataclass(frozen=True)
class TreeCoefficients:
    """Random digits a_s, one per 0-1 sequence s of length <= depth."""

    p: int
    depth: int
    digits: dict[tuple, int] = field(default_factory=dict)

    def __post_init__(self):
        expected = sum(2**n for n in range(self.depth + 1))
        if len(self.digits) != expected:
            raise ParameterError(
                f"expected {expected} digits for depth {self.depth}, got {len(self.digits)}"
            )
        for s, a in self.digits.items():
            bound = digit_bound(self.p, len(s))
            if not 0 <= a < bound:
                raise ParameterError(f"digit {a} at {s} outside [0, {bound})")

    def digit(self, s: tuple) -> int:
        return self.digits[tuple(s)]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "depth": self.depth,
            "digits": {"".join(map(str, s)): str(a) for s, a in sorted(self.digits.items())},
        }


def digit_bound(p: int, n: int) -> int:
    """Upper bound p**(2**(n+1) - 2**n) for the digit at tree level n."""
    return p ** (2 ** (n + 1) - 2**n)


def branch_precision(depth: int) -> int:
    """Precision carried by a branch value of the given depth."""
    return 2 ** (depth + 1) - 1


def all_sequences(depth: int):
    """All 0-1 sequences of length exactly `depth`."""
    if depth == 0:
        return [()]
    shorter = all_sequences(depth - 1)
    return [s + (b,) for s in shorter for b in (0, 1)]


def sample_tree(p: int, depth: int, seed) -> TreeCoefficients:
    """Independent uniform digits for every sequence of length <= depth."""
    if depth < 0:
        raise ParameterError("depth must be non-negative")
    base = _as_seed(seed)
    digits = {}
    for n in range(depth + 1):
        bound = digit_bound(p, n)
        for s in all_sequences(n):
            rng = base.child("tree", p, s).rng()
            digits[s] = rng.randrange(bound)
    return TreeCoefficients(p, depth, digits)


def partial_sum_b(tree: TreeCoefficients, s) -> PadicApprox:
    """Packed digit sum along the path to s, at precision 2**(n+1) - 1.

    The level-j digit occupies p-adic digit positions [2**j - 1, 2**(j+1) - 1),
    so the terms tile disjoint digit blocks and the sum is uniform when the
    digits are.
    """
    s = tuple(s)
    n = len(s)
    if n > tree.depth:
        raise ParameterError(f"sequence of length {n} exceeds tree depth {tree.depth}")
    total = 0
    for j in range(n + 1):
        total += tree.p ** (2**j - 1) * tree.digit(s[:j])
    return PadicApprox(tree.p, branch_precision(n), total)


def xi_of_branch(tree: TreeCoefficients, f) -> PadicApprox:
    """Branch value for a full-depth sequence f, truncated at the tree depth."""
    f = tuple(f)
    if len(f) != tree.depth:
        raise ParameterError(f"branch length {len(f)} != depth {tree.depth}")
    return partial_sum_b(tree, f)


def sample_support(universe_size_hint, seed) -> frozenset[int]:
    """Non-empty finite set of basis indices.

    Size k has law P(k) = 2**-k (k >= 1); indices are drawn i.i.d. with
    P(index = j) proportional to 2**-j, retrying duplicates.  Every
    non-empty finite subset of the index range receives positive
    probability.  When a hint is given, indices are rejected into
    [0, hint) and the size is capped at the hint.
    """
    rng = _as_seed(seed).child("support").rng()
    k = 1
    while rng.randrange(2):
        k += 1
    if universe_size_hint is not None:
        if universe_size_hint < 1:
            raise ParameterError("universe size hint must be positive")
        k = min(k, universe_size_hint)
    chosen: set[int] = set()
    while len(chosen) < k:
        j = 0
        while rng.randrange(2):
            j += 1
        if universe_size_hint is not None and j >= universe_size_hint:
            continue
        chosen.add(j)
    return frozenset(chosen)


def nearly_uniform_window(n: int, alpha: float) -> int:
    """Largest basis index w(n) = ceil(n**(alpha - 1)) of the sampling window."""
    return math.ceil(n ** (alpha - 1))


def sample_nearly_uniform(p: int, n: int, alpha: float, seed) -> PadicVector:
    """Random vector whose coset probabilities decay like p**(-n**alpha).

    Coordinates e_0 .. e_w(n) with w(n) = ceil(n**(alpha-1)) are each
    uniform mod p**n, so a fixed coset of p**n B has probability
    p**(-n * (w(n)+1)) <= p**(-n**alpha).  Per-coordinate digit streams
    make the draw refinement-consistent in n for a fixed seed.
    """
    if alpha <= 1:
        raise ParameterError(f"alpha must exceed 1, got {alpha}")
    if n < 1:
        raise PrecisionError(f"precision must be positive, got {n}")
    base = _as_seed(seed)
    w = nearly_uniform_window(n, alpha)
    entries = {}
    for j in range(w + 1):
        entries[j] = sample_uniform(p, n, base.child("nearly_uniform", j)).residue
    return PadicVector(p, n, entries)


@dataclass(frozen=True)
class SupportedElement:
    """Support set plus one coefficient per support index, under one label."""

    index: int
    support: frozenset[int]
    label: object
    coefficients: dict[int, PadicApprox] = field(default_factory=dict)

    def __post_init__(self):
        if not self.support:
            raise ParameterError("support must be non-empty")
        if set(self.coefficients) != set(self.support):
            raise ParameterError("coefficient keys must equal the support")

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "label": str(self.label),
            "support": sorted(self.support),
            "coefficients": {str(b): xi.to_json() for b, xi in sorted(self.coefficients.items())},
        }
