"""Finite-precision models of purified groups with ring-labeled generators.

The model lives in the ambient module (Z/p**N)**(slots * rank): `slots`
basis positions of a free module over a structure-constant ring, each
position carrying `rank` ring coordinates.  A model tracks two slot
regions:

  * tracked window [0, W): the solver may use arbitrary ring coefficients
    on these basis positions (the finite part of the base module it can
    account for exactly);
  * support universe [W, W + U): positions that only the random
    generators touch.  Coefficients here are NOT granted to the solver.

Membership of x asks whether p**K * x is a combination of tracked basis
positions (ring coefficients) and generators with labels in the allowed
set (ring coefficients), solved exactly over Z/p**N.  Because the base
module is dense in its completion, no finite-precision test can refute
membership when every position is granted to the solver; withholding the
support universe is the declared finite surrogate that makes refutations
visible.  NotIn is definitive for this window/precision/cap; InAtPrecision
is a consistency certificate, not a proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParameterError, PrecisionError
from .modlinalg import Diagonalization, diagonalize
from .padic import PadicVector, reduce_precision
from .ring_algebra import RingPresentation, integers, regular_rep
from .sampling import (
    SupportedElement,
    _as_seed,
    branch_precision,
    sample_support,
    sample_tree,
    xi_of_branch,
)


def build_generator(se: SupportedElement, basis_window: int, N: int) -> PadicVector:
    """Slot-indexed generator vector: entry xi_{n,b} at index b for b in the support."""
    if any(b >= basis_window or b < 0 for b in se.support):
        raise ParameterError(
            f"support {sorted(se.support)} outside window of size {basis_window}"
        )
    entries = {}
    p = None
    for b in se.support:
        xi = se.coefficients[b]
        if xi.N != N:
            raise PrecisionError(f"coefficient at {b} has precision {xi.N}, expected {N}")
        p = xi.p
        entries[b] = xi.residue
    return PadicVector(p, N, entries)


@dataclass(frozen=True)
class CornerModel:
    """Ambient data for membership and rigidity probes."""

    ring: RingPresentation
    p: int
    N: int
    K: int
    tracked_window: int
    universe: int
    labels: tuple
    supports: dict = field(default_factory=dict)  # generator index -> frozenset of slots
    generators: dict = field(default_factory=dict)  # (index, label) -> PadicVector (slots)

    @property
    def slots(self) -> int:
        return self.tracked_window + self.universe

    @property
    def dim(self) -> int:
        return self.slots * self.ring.rank

    def coord(self, slot: int, c: int) -> int:
        return slot * self.ring.rank + c

    def slot_scalar_vector(self, slot_values: PadicVector) -> PadicVector:
        """Lift a slot-indexed scalar vector into ambient coordinates.

        A scalar xi at slot b becomes xi times the ring identity there.
        """
        entries = {}
        u = self.ring.identity
        for b, res in slot_values.entries.items():
            for c, uc in enumerate(u):
                if uc:
                    entries[self.coord(b, c)] = res * uc
        return PadicVector(self.p, self.N, entries)

    def ring_element_at_slot(self, r, slot: int) -> PadicVector:
        """Ambient vector r * e_slot (the ring element r at one position)."""
        entries = {}
        for c, rc in enumerate(r):
            if rc:
                entries[self.coord(slot, c)] = rc
        return PadicVector(self.p, self.N, entries)

    def ring_times_generator(self, r, index: int, label) -> PadicVector:
        """Ambient vector r * a for the generator at (index, label)."""
        gen = self.generators[(index, label)]
        entries = {}
        for b, xi in gen.entries.items():
            for c, rc in enumerate(r):
                if rc:
                    entries[self.coord(b, c)] = xi * rc
        return PadicVector(self.p, self.N, entries)

    def generator_ambient(self, index: int, label) -> PadicVector:
        return self.ring_times_generator(self.ring.identity, index, label)

    def ring_action(self, r, x: PadicVector) -> PadicVector:
        """Apply the ring element r to an ambient vector slot by slot."""
        rank = self.ring.rank
        entries: dict[int, int] = {}
        for slot in range(self.slots):
            content = [x.entries.get(self.coord(slot, c), 0) for c in range(rank)]
            if not any(content):
                continue
            image = self.ring.mul(list(r), content)
            for c, val in enumerate(image):
                if val:
                    entries[self.coord(slot, c)] = val
        return PadicVector(self.p, self.N, entries)

    def generator_keys(self, labelset=None):
        keys = sorted(self.generators, key=lambda k: (k[0], str(k[1])))
        if labelset is None:
            return keys
        return [k for k in keys if k[1] in labelset]

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "p": self.p,
            "N": self.N,
            "K": self.K,
            "tracked_window": self.tracked_window,
            "universe": self.universe,
            "labels": list(self.labels),
            "supports": {str(n): sorted(s) for n, s in self.supports.items()},
            "generators": {
                f"{n}:{label}": vec.to_json() for (n, label), vec in self.generators.items()
            },
        }


def model_from_json(data: dict) -> CornerModel:
    """Rebuild a model from its to_json form."""
    ring = RingPresentation(
        data["ring"]["rank"], data["ring"]["structure"], data["ring"]["identity"]
    )
    p, N = int(data["p"]), int(data["N"])
    labels = tuple(data["labels"])
    supports = {int(n): frozenset(s) for n, s in data["supports"].items()}
    by_name = {str(label): label for label in labels}
    generators = {}
    for key, vec in data["generators"].items():
        n_str, label_name = key.split(":", 1)
        entries = {int(i): int(r) for i, r in vec["entries"].items()}
        generators[(int(n_str), by_name[label_name])] = PadicVector(p, N, entries)
    return CornerModel(
        ring=ring,
        p=p,
        N=N,
        K=int(data["K"]),
        tracked_window=int(data["tracked_window"]),
        universe=int(data["universe"]),
        labels=labels,
        supports=supports,
        generators=generators,
    )


def required_tree_depth(N: int) -> int:
    """Smallest depth whose branch precision covers N digits."""
    depth = 0
    while branch_precision(depth) < N:
        depth += 1
    return depth


def build_corner_model(
    ring: RingPresentation | str | None = None,
    p: int = 3,
    N: int = 16,
    K: int = 8,
    labels: int | tuple = 3,
    gens_per_label: int = 2,
    tracked_window: int = 2,
    universe: int = 8,
    support_spread: int = 3,
    seed=0,
) -> CornerModel:
    """Sample a model: shared supports, fresh coefficients per label.

    Support sets are shared across labels (one I_n per generator index)
    and are placed in the support universe.  Each I_n receives a forced
    spread core of `support_spread` distinct slots plus sampled extras;
    without the core, smallish sampled supports would leave the exact
    membership refutations underdetermined at desk scale.  Coefficients
    are branch values of freshly seeded digit trees, reduced to N.
    """
    if isinstance(ring, str):
        if ring != "integers":
            raise ParameterError(f"unknown ring marker {ring!r}")
        ring = integers()
    if ring is None:
        ring = integers()
    if isinstance(labels, int):
        labels = tuple(range(labels))
    if not labels:
        raise ParameterError("label set must be non-empty")
    if gens_per_label * support_spread > universe:
        raise ParameterError("support universe too small for the forced spread cores")
    base = _as_seed(seed)
    depth = required_tree_depth(N)
    supports = {}
    generators = {}
    for n in range(gens_per_label):
        core = {tracked_window + support_spread * n + i for i in range(support_spread)}
        extras = {
            tracked_window + j
            for j in sample_support(universe, base.child("support", n))
        }
        supports[n] = frozenset(core | extras)
    for n in range(gens_per_label):
        for label in labels:
            coeffs = {}
            for b in sorted(supports[n]):
                tree = sample_tree(p, depth, base.child("xi", n, b, str(label)))
                xi = xi_of_branch(tree, (0,) * depth)
                coeffs[b] = reduce_precision(xi, N)
            se = SupportedElement(n, supports[n], label, coeffs)
            generators[(n, label)] = build_generator(se, tracked_window + universe, N)
    return CornerModel(
        ring=ring,
        p=p,
        N=N,
        K=K,
        tracked_window=tracked_window,
        universe=universe,
        labels=tuple(labels),
        supports=supports,
        generators=generators,
    )


@dataclass(frozen=True)
class MembershipVerdict:
    in_at_precision: bool
    precision: int
    cap: int

    @property
    def label(self) -> str:
        return "InAtPrecision" if self.in_at_precision else "NotIn"

    def to_json(self) -> dict:
        return {
            "verdict": self.label,
            "meaning": (
                f"consistent at precision {self.precision} with denominator cap {self.cap}"
                if self.in_at_precision
                else f"definitive for this window, precision {self.precision}, cap {self.cap}"
            ),
            "precision": self.precision,
            "cap": self.cap,
        }


class CornerProber:
    """Membership and rigidity queries against one model, with solver reuse."""

    def __init__(self, model: CornerModel):
        self.model = model
        self._solvers: dict[frozenset, Diagonalization] = {}

    def solver(self, labelset) -> Diagonalization:
        key = frozenset(labelset)
        if not key <= set(self.model.labels):
            raise ParameterError(f"labels {sorted(map(str, key))} not all in the model")
        if key not in self._solvers:
            self._solvers[key] = diagonalize(
                self._columns(key), self.model.p, self.model.N
            )
        return self._solvers[key]

    def _columns(self, labelset) -> list[list[int]]:
        model = self.model
        rank = model.ring.rank
        cols = []
        for slot in range(model.tracked_window):
            for c in range(rank):
                cols.append(model.ring_element_at_slot(model.ring.basis_vector(c), slot))
        for key in model.generator_keys(labelset):
            for c in range(rank):
                cols.append(model.ring_times_generator(model.ring.basis_vector(c), *key))
        matrix = [[0] * len(cols) for _ in range(model.dim)]
        for j, col in enumerate(cols):
            for idx, res in col.entries.items():
                matrix[idx][j] = res
        return matrix

    def membership(self, x: PadicVector, labelset) -> MembershipVerdict:
        model = self.model
        if x.p != model.p or x.N != model.N:
            raise PrecisionError(
                f"query at (p={x.p}, N={x.N}) does not match model (p={model.p}, N={model.N})"
            )
        scale = model.p**model.K
        target = [(scale * x.entries.get(idx, 0)) % model.p**model.N for idx in range(model.dim)]
        solution = self.solver(labelset).solve(target)
        return MembershipVerdict(solution is not None, model.N, model.K)

    def mult_by_r_probe(self, r, labelset) -> bool:
        """Whether multiplication by r maps tracked basis and generators inside."""
        model = self.model
        for slot in range(model.tracked_window):
            if not self.membership(model.ring_element_at_slot(r, slot), labelset).in_at_precision:
                return False
        for key in model.generator_keys(labelset):
            if not self.membership(model.ring_times_generator(r, *key), labelset).in_at_precision:
                return False
        return True


def membership(x: PadicVector, model: CornerModel, labelset) -> MembershipVerdict:
    return CornerProber(model).membership(x, labelset)


def mult_by_r_probe(r, model: CornerModel, labelset) -> bool:
    return CornerProber(model).mult_by_r_probe(r, labelset)


class AdditiveMap:
    """A Z/p**N-linear map on the ambient module, given by coordinate images."""

    def __init__(self, model: CornerModel, images: list[PadicVector]):
        if len(images) != model.dim:
            raise ParameterError("one image per ambient coordinate required")
        self.model = model
        self.images = images

    @classmethod
    def identity(cls, model: CornerModel) -> "AdditiveMap":
        return cls(
            model,
            [PadicVector(model.p, model.N, {i: 1}) for i in range(model.dim)],
        )

    @classmethod
    def multiplication_by(cls, model: CornerModel, r) -> "AdditiveMap":
        rep = regular_rep(model.ring, r)
        rank = model.ring.rank
        images = []
        for slot in range(model.slots):
            for c in range(rank):
                entries = {
                    model.coord(slot, k): rep[k][c] for k in range(rank) if rep[k][c]
                }
                images.append(PadicVector(model.p, model.N, entries))
        return cls(model, images)

    @classmethod
    def random(cls, model: CornerModel, seed, avoid_multiplications: int = 20) -> "AdditiveMap":
        """Random coordinate images, conditioned away from sampled multiplications."""
        rng = _as_seed(seed).child("additive_map").rng()
        mod = model.p**model.N
        while True:
            images = [
                PadicVector(
                    model.p,
                    model.N,
                    {i: rng.randrange(mod) for i in range(model.dim)},
                )
                for _ in range(model.dim)
            ]
            candidate = cls(model, images)
            if not any(
                candidate.equals(cls.multiplication_by(model, _random_ring_element(model, rng)))
                for _ in range(avoid_multiplications)
            ):
                return candidate

    def equals(self, other: "AdditiveMap") -> bool:
        return all(
            a.entries == b.entries for a, b in zip(self.images, other.images)
        )

    def apply(self, x: PadicVector) -> PadicVector:
        out: dict[int, int] = {}
        for idx, res in x.entries.items():
            for j, img in self.images[idx].entries.items():
                out[j] = out.get(j, 0) + res * img
        return PadicVector(self.model.p, self.model.N, out)


def _random_ring_element(model: CornerModel, rng) -> list[int]:
    return [rng.randint(-3, 3) for _ in range(model.ring.rank)]


@dataclass(frozen=True)
class RigidityResult:
    verdict: str  # "Consistent" or "Violation"
    failures: tuple

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "failures": [f"{n}:{label}" for n, label in self.failures]}


def rigidity_trial(
    model: CornerModel,
    A,
    D,
    seed=0,
    phi: AdditiveMap | None = None,
    prober: CornerProber | None = None,
) -> RigidityResult:
    """Push every A-generator through phi and test membership against D.

    With phi omitted, a random additive map conditioned away from ring
    multiplications is sampled; a Violation on some generator is the
    finite-precision shadow of the rigidity dichotomy (homomorphisms are
    ring multiplications within a label set, zero across unrelated sets).
    """
    prober = prober or CornerProber(model)
    if phi is None:
        phi = AdditiveMap.random(model, seed)
    failures = []
    for key in model.generator_keys(A):
        image = phi.apply(model.generator_ambient(*key))
        if not prober.membership(image, D).in_at_precision:
            failures.append(key)
    return RigidityResult("Violation" if failures else "Consistent", tuple(failures))
