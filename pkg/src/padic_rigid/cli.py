"""Command-line entry point: one subcommand per module, JSON/CSV reports.

Exit codes: 0 on success, 1 on a domain error (non-invertible element,
resource limit, failing acceptance criterion), 2 on usage errors such as
unknown flags or a missing input file.  Reports are written atomically:
to a temporary file first, then renamed over the target.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass

from . import acceptance as acceptance_mod
from . import corner as corner_mod
from . import free_detector, independence, prime_density, ring_algebra, stats_harness
from .errors import PadicRigidError, ParameterError
from .padic import PadicApprox, PadicVector
from .polynomials import parse_univariate
from .sampling import (
    Seed,
    sample_nearly_uniform,
    sample_support,
    sample_tree,
    sample_uniform,
    all_sequences,
    xi_of_branch,
)
from .zassenhaus import realize


@dataclass
class RunConfig:
    subcommand: str
    seed: int = 0
    precision: int = 16
    out: str | None = None
    fmt: str = "json"

    def __post_init__(self):
        if self.precision < 1:
            raise ParameterError("precision must be at least 1")


def _emit(config: RunConfig, payload: dict, csv_rows=None) -> None:
    if config.fmt == "csv":
        if csv_rows is None:
            raise ParameterError("this subcommand has no CSV form")
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerows(csv_rows)
        text = buffer.getvalue()
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if config.out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(config.out))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, config.out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_ring(spec: str) -> ring_algebra.RingPresentation:
    if spec in ring_algebra.BUNDLED_RINGS:
        return ring_algebra.bundled_ring(spec)
    if not os.path.exists(spec):
        raise FileNotFoundError(spec)
    return ring_algebra.load_ring(spec)


def _parse_labelset(text: str):
    return {int(x) for x in text.split(",") if x != ""}


def cmd_sample(args, config: RunConfig) -> int:
    base = Seed(config.seed)
    if args.what == "tree":
        tree = sample_tree(args.p, args.depth, base)
        branches = {
            "".join(map(str, f)): xi_of_branch(tree, f).to_json()
            for f in all_sequences(args.depth)
        }
        _emit(config, {"kind": "sample-tree", "tree": tree.to_json(), "branches": branches})
    elif args.what == "uniform":
        draws = [
            sample_uniform(args.p, config.precision, base.child("u", i)).to_json()
            for i in range(args.count)
        ]
        _emit(config, {"kind": "sample-uniform", "draws": draws})
    elif args.what == "support":
        sets = [
            sorted(sample_support(args.hint, base.child("s", i))) for i in range(args.count)
        ]
        _emit(config, {"kind": "sample-support", "supports": sets})
    else:
        vec = sample_nearly_uniform(args.p, config.precision, args.alpha, base)
        _emit(config, {"kind": "sample-nearly-uniform", "vector": vec.to_json()})
    return 0


def cmd_independence(args, config: RunConfig) -> int:
    residues = [int(x) for x in args.values.split(",")]
    xs = [PadicApprox(args.p, config.precision, r) for r in residues]
    report = independence.find_relation(
        xs, args.degree, args.height, max_candidates=args.max_candidates
    )
    _emit(config, {"kind": "independence", **report.to_json()})
    return 0


def cmd_corner(args, config: RunConfig) -> int:
    if args.action == "member":
        model = corner_mod.model_from_json(_read_json(args.model))
        raw = _read_json(args.element)
        x = PadicVector(
            int(raw["p"]), int(raw["N"]), {int(i): int(r) for i, r in raw["entries"].items()}
        )
        verdict = corner_mod.membership(x, model, _parse_labelset(str(args.labels)))
        _emit(config, {"kind": "corner-membership", **verdict.to_json()})
        return 0
    labels = int(args.labels) if isinstance(args.labels, str) else args.labels
    if args.action == "build":
        ring = _load_ring(args.ring)
        model = corner_mod.build_corner_model(
            ring,
            p=args.p,
            N=config.precision,
            K=args.cap,
            labels=labels,
            gens_per_label=args.gens_per_label,
            seed=Seed(config.seed),
        )
        _emit(config, {"kind": "corner-model", "model": model.to_json()})
        return 0
    ring = _load_ring(args.ring)
    summary = {"identity": 0, "random": 0, "seeds": args.seeds}
    for s in range(args.seeds):
        base = Seed(config.seed).child("trial", s)
        model = corner_mod.build_corner_model(
            ring, p=args.p, N=config.precision, K=args.cap, labels=labels, seed=base
        )
        prober = corner_mod.CornerProber(model)
        labels = model.labels
        ident = corner_mod.AdditiveMap.identity(model)
        violated = all(
            corner_mod.rigidity_trial(
                model, {a}, set(labels) - {a}, phi=ident, prober=prober
            ).verdict
            == "Violation"
            for a in labels
        )
        summary["identity"] += violated
        random_res = corner_mod.rigidity_trial(
            model, set(labels), set(labels), seed=base.child("phi"), prober=prober
        )
        summary["random"] += random_res.verdict == "Violation"
    _emit(config, {"kind": "corner-rigidity", **summary})
    return 0


def _read_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def cmd_free_check(args, config: RunConfig) -> int:
    from .padic import basis_vector

    base = Seed(config.seed)
    independent = 0
    full_rank = 0
    rank_target = args.basis_vectors + args.num_random
    for s in range(args.trials):
        trial = base.child("free", s)
        samples = [
            sample_nearly_uniform(args.p, config.precision, args.alpha, trial.child("a", i))
            for i in range(args.num_random)
        ]
        basis = [basis_vector(args.p, config.precision, i) for i in range(args.basis_vectors)]
        verdict = free_detector.jp_linear_independence(basis + samples, window=args.rank_window)
        if verdict.independent:
            independent += 1
            result = free_detector.finite_rank_free_basis(basis + samples, K=config.precision)
            full_rank += result.rank == rank_target
    _emit(
        config,
        {
            "kind": "free-check",
            "trials": args.trials,
            "independent": independent,
            "full_rank": full_rank,
            "rank_target": rank_target,
        },
    )
    return 0


def cmd_zassenhaus(args, config: RunConfig) -> int:
    ring = _load_ring(args.ring)
    if args.pairs == "auto":
        unit = list(ring.identity)
        pairs = [(unit, unit)]
    else:
        raw = _read_json(args.pairs)
        pairs = [(entry["a"], entry["e"]) for entry in raw["pairs"]]
    report = realize(
        ring,
        pairs,
        prime_budget=args.budget,
        H=args.box,
        seed=Seed(config.seed),
        deterministic_only=args.deterministic_only,
    )
    _emit(config, {"kind": "zassenhaus", **report.to_json()})
    return 0


def cmd_density(args, config: RunConfig) -> int:
    f = parse_univariate(args.poly)
    report = prime_density.density_report(f, args.bound)
    _emit(config, {"kind": "density", **report.to_json()}, csv_rows=report.to_csv_rows())
    return 0


def cmd_mc(args, config: RunConfig) -> int:
    if args.experiment != "gl":
        raise ParameterError(f"unknown experiment {args.experiment!r}")
    summary = stats_harness.gl_invertibility_mc(args.n, args.q, args.trials, Seed(config.seed))
    _emit(config, {"kind": "mc-gl", **summary.to_json()})
    return 0


def cmd_acceptance(args, config: RunConfig) -> int:
    if args.suite == "all":
        numbers = None
    else:
        try:
            numbers = [int(args.suite)]
        except ValueError:
            print(f"unknown suite {args.suite!r}", file=sys.stderr)
            return 2
        if numbers[0] not in acceptance_mod.CRITERIA:
            print(f"unknown suite {args.suite!r}", file=sys.stderr)
            return 2
    results = acceptance_mod.run_suite(numbers)
    for res in results:
        print(res.line())
    payload = {"kind": "acceptance", "criteria": [r.to_json() for r in results]}
    if config.out is not None:
        _emit(config, payload)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padic-rigid",
        description="Finite-precision probes for randomized p-adic group constructions.",
    )
    parser.add_argument("--seed", type=int, default=0, help="base seed (default 0)")
    parser.add_argument("--precision", type=int, default=16, help="working precision N")
    parser.add_argument("--out", default=None, help="write the report to this path atomically")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_sample = sub.add_parser("sample", help="draw seeded random objects")
    p_sample.add_argument("what", choices=("tree", "uniform", "support", "nearly-uniform"))
    p_sample.add_argument("--p", type=int, default=2)
    p_sample.add_argument("--depth", type=int, default=4)
    p_sample.add_argument("--count", type=int, default=1)
    p_sample.add_argument("--hint", type=int, default=8)
    p_sample.add_argument("--alpha", type=float, default=1.5)
    p_sample.set_defaults(fn=cmd_sample)

    p_ind = sub.add_parser("independence", help="bounded relation search")
    p_ind.add_argument("--p", type=int, required=True)
    p_ind.add_argument("--values", required=True, help="comma-separated residues")
    p_ind.add_argument("--degree", type=int, default=2)
    p_ind.add_argument("--height", type=int, default=10)
    p_ind.add_argument("--max-candidates", type=int, default=50_000_000)
    p_ind.set_defaults(fn=cmd_independence)

    p_corner = sub.add_parser("corner", help="labeled models, membership, rigidity")
    p_corner.add_argument("action", choices=("build", "member", "rigidity"))
    p_corner.add_argument("--ring", default="gaussian_integers")
    p_corner.add_argument("--p", type=int, default=3)
    p_corner.add_argument("--cap", type=int, default=8, help="denominator cap K")
    p_corner.add_argument("--labels", default=3)
    p_corner.add_argument("--gens-per-label", type=int, default=2)
    p_corner.add_argument("--model", help="model JSON (for member)")
    p_corner.add_argument("--element", help="element JSON (for member)")
    p_corner.add_argument("--seeds", type=int, default=20, help="trial count (for rigidity)")
    p_corner.set_defaults(fn=cmd_corner)

    p_free = sub.add_parser("free-check", help="independence and purification pipeline")
    p_free.add_argument("--p", type=int, default=2)
    p_free.add_argument("--rank-window", type=int, default=8)
    p_free.add_argument("--basis-vectors", type=int, default=4)
    p_free.add_argument("--num-random", type=int, default=3)
    p_free.add_argument("--alpha", type=float, default=1.5)
    p_free.add_argument("--trials", type=int, default=100)
    p_free.set_defaults(fn=cmd_free_check)

    p_zass = sub.add_parser("zassenhaus", help="realize construction data")
    p_zass.add_argument("action", choices=("realize",))
    p_zass.add_argument("--ring", required=True)
    p_zass.add_argument("--pairs", default="auto", help="JSON file with pairs, or 'auto'")
    p_zass.add_argument("--budget", type=int, default=1000)
    p_zass.add_argument("--box", type=int, default=3)
    p_zass.add_argument("--deterministic-only", action="store_true")
    p_zass.set_defaults(fn=cmd_zassenhaus)

    p_density = sub.add_parser("density", help="prime root-density scan")
    p_density.add_argument("--poly", required=True)
    p_density.add_argument("--bound", type=int, required=True)
    p_density.set_defaults(fn=cmd_density)

    p_mc = sub.add_parser("mc", help="Monte Carlo experiments")
    p_mc.add_argument("experiment", choices=("gl",))
    p_mc.add_argument("--n", type=int, required=True)
    p_mc.add_argument("--q", type=int, required=True)
    p_mc.add_argument("--trials", type=int, default=10_000)
    p_mc.set_defaults(fn=cmd_mc)

    p_acc = sub.add_parser("acceptance", help="run the acceptance criteria")
    p_acc.add_argument("suite", nargs="?", default="all")
    p_acc.set_defaults(fn=cmd_acceptance)

    return parser


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = RunConfig(
            subcommand=args.subcommand,
            seed=args.seed,
            precision=args.precision,
            out=args.out,
            fmt=args.format,
        )
        return args.fn(args, config)
    except FileNotFoundError as exc:
        print(f"error: no such file: {exc}", file=sys.stderr)
        return 2
    except PadicRigidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
