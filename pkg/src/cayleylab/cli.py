"""Command-line entry point.

Batch-oriented: stdout carries only data (CSV, JSON, square text, edge
lists); the resolved configuration and diagnostics go to stderr.  Exit codes:
0 success, 1 verified-property violation, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bounds, experiments, graphs, groups, verify
from ._kernels import BACKEND


def _echo(args: dict) -> None:
    print("# config " + json.dumps(args, default=str), file=sys.stderr)


def _parse_float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def cmd_group_info(args) -> int:
    g = groups.build_group(args.spec)
    conj = g.conjugacy()
    info = {
        "spec": g.spec,
        "order": g.order,
        "backing": g.backing,
        "abelian": g.is_abelian,
        "num_classes": conj.num_classes,
        "involutions": groups.involution_count(g),
        "involutions_with_identity": groups.involution_count(g, include_identity=True),
    }
    if args.eps is not None:
        rep = groups.check_small_class_hypotheses(g, args.eps)
        info["small_class_report"] = {
            "eps": rep.eps,
            "involutions": rep.involutions,
            "small_class_elements": rep.small_class_elements,
            "small_class_involutions": rep.small_class_involutions,
            "references": [rep.ref_involutions, rep.ref_small_class,
                           rep.ref_small_class_inv],
            "within_reference": list(rep.flags),
        }
    print(json.dumps(info, indent=2))
    return 0


def cmd_verify(args) -> int:
    checks = None if args.checks in (None, "all") else [c.strip() for c in args.checks.split(",")]
    report = verify.run_verification(checks=checks, battery=args.battery)
    print(json.dumps(report.as_dict(), indent=2))
    print(f"# {len(report.findings)} violation(s) in {report.elapsed_s:.1f}s",
          file=sys.stderr)
    return 0 if report.ok else 1


def _sweep_config(args) -> experiments.SweepConfig:
    if args.config:
        with open(args.config) as fh:
            cfg = experiments.SweepConfig.from_json(fh.read())
        updates = {}
        if args.family:
            updates["family"] = tuple(args.family.split(","))
        if args.p:
            updates["grid"] = {"p": _parse_float_list(args.p)}
        if args.c:
            updates["grid"] = {"c": _parse_float_list(args.c)}
        if args.trials is not None:
            updates["trials"] = args.trials
        if args.seed is not None:
            updates["master_seed"] = args.seed
        if args.model:
            updates["model"] = args.model
        if updates:
            data = json.loads(cfg.to_json())
            data.update({k: (list(v) if isinstance(v, tuple) else v)
                         for k, v in updates.items()})
            cfg = experiments.SweepConfig.from_json(json.dumps(data))
        return cfg
    if not args.family:
        raise experiments.ConfigError("--family is required without --config")
    if bool(args.p) == bool(args.c):
        raise experiments.ConfigError("exactly one of --p or --c is required")
    grid = {"p": _parse_float_list(args.p)} if args.p else {"c": _parse_float_list(args.c)}
    seed = args.seed if args.seed is not None else int(np.random.SeedSequence().entropy % (1 << 63))
    return experiments.SweepConfig(
        family=tuple(args.family.split(",")), grid=grid,
        trials=args.trials if args.trials is not None else 1000,
        master_seed=seed, model=args.model or "cayley")


def cmd_sweep(args) -> int:
    cfg = _sweep_config(args)
    _echo({"command": "sweep", "config": json.loads(cfg.to_json()),
           "workers": args.workers, "backend": BACKEND})
    result = experiments.run_sweep(cfg, workers=args.workers,
                                   include_timing=not args.no_timing)
    sys.stdout.write(result.to_csv())
    return 0


def cmd_threshold(args) -> int:
    seed = args.seed if args.seed is not None else int(np.random.SeedSequence().entropy % (1 << 63))
    bracket = tuple(_parse_float_list(args.bracket)) if args.bracket else experiments.DEFAULT_BRACKET
    _echo({"command": "threshold", "family": args.family, "trials": args.trials,
           "seed": seed, "bracket": bracket, "iterations": args.iterations,
           "workers": args.workers, "backend": BACKEND})
    estimates = []
    for spec in args.family.split(","):
        est = experiments.estimate_threshold(
            spec, trials_per_probe=args.trials, master_seed=seed,
            bracket=bracket, iterations=args.iterations, workers=args.workers)
        estimates.append(est)
    if len(estimates) == 1:
        print(json.dumps(estimates[0].as_dict(), indent=2))
    else:
        print(json.dumps(experiments.compare_families(estimates), indent=2))
    return 0


def cmd_formula(args) -> int:
    if args.id not in bounds.FORMULAS:
        print(f"unknown formula {args.id!r}; known: {sorted(bounds.FORMULAS)}",
              file=sys.stderr)
        return 2
    _, params, _ = bounds.FORMULAS[args.id]
    inputs = {}
    for name in params:
        val = getattr(args, name.replace("-", "_"), None)
        if val is None:
            continue
        inputs[name] = val
    report = bounds.evaluate(args.id, **inputs)
    print(json.dumps({"formula_id": report.formula_id, "inputs": inputs,
                      "value": report.value, "log_value": report.log_value}))
    return 0


def cmd_latin(args) -> int:
    if args.action == "random":
        seed = args.seed if args.seed is not None else int(np.random.SeedSequence().entropy % (1 << 63))
        _echo({"command": "latin random", "n": args.n, "seed": seed})
        square = graphs.random_latin_square(args.n, graphs.stream(seed, 0))
    elif args.action == "from-group":
        _echo({"command": "latin from-group", "spec": args.spec})
        square = graphs.latin_from_group(groups.build_group(args.spec))
    else:  # check
        with open(args.path) as fh:
            square = graphs.load_latin_text(fh.read())
        _echo({"command": "latin check", "path": args.path, "order": square.order})
    sys.stdout.write(square.to_text())
    return 0


def cmd_sample(args) -> int:
    seed = args.seed if args.seed is not None else int(np.random.SeedSequence().entropy % (1 << 63))
    _echo({"command": "sample", "family": args.family, "p": args.p,
           "seed": seed, "model": args.model})
    g = groups.build_group(args.family)
    s = graphs.sample_generators(g, args.p, graphs.stream(seed, 0))
    if args.model == "latin":
        graph = graphs.build_latin_graph(graphs.latin_from_group(g), s)
    else:
        graph = graphs.build_cayley(g, s)
    sys.stdout.write(graph.to_edge_text())
    print(f"# diameter<=2: {graphs.has_diameter_at_most_2(graph)}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cayleylab",
                                 description="Random Cayley graph laboratory")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group-info", help="order, classes, involutions of a family spec")
    p.add_argument("spec")
    p.add_argument("--eps", type=float, default=None)
    p.set_defaults(fn=cmd_group_info)

    p = sub.add_parser("verify", help="run structural checks over the battery")
    p.add_argument("--checks", default="all",
                   help=f"comma list from: {','.join(verify.ALL_CHECKS)}")
    p.add_argument("--battery", default="default", choices=("default", "small"))
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("sweep", help="Monte Carlo Pr(diam<=2) over a grid, CSV out")
    p.add_argument("--family", help="comma list of family specs")
    p.add_argument("--p", help="comma list of probabilities")
    p.add_argument("--c", help="comma list of c values (p = sqrt(c log n / n))")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--model", choices=("cayley", "latin"), default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--config", help="JSON config file (flags override)")
    p.add_argument("--no-timing", action="store_true",
                   help="zero the wall_ms column for byte-stable output")
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("threshold", help="bisection estimate of the crossing constant")
    p.add_argument("--family", required=True, help="comma list of family specs")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--iterations", type=int, default=experiments.BISECTION_ITERATIONS)
    p.add_argument("--bracket", default=None, help="lo,hi (default 0.05,8)")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(fn=cmd_threshold)

    p = sub.add_parser("formula", help="evaluate a closed-form bound, JSON out")
    p.add_argument("id")
    p.add_argument("--c", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--ex", type=float)
    p.add_argument("--exx1", type=float)
    p.add_argument("--edge-count", type=int, dest="edge_count")
    p.add_argument("--i-size", type=int, dest="i_size")
    p.add_argument("--neighbor-count", type=int, dest="neighbor_count")
    p.add_argument("--divisor", type=int)
    p.add_argument("--pairs-mode", action="store_true", dest="pairs_mode", default=None)
    p.set_defaults(fn=cmd_formula)

    p = sub.add_parser("latin", help="emit or check Latin squares as text")
    p.add_argument("action", choices=("random", "from-group", "check"))
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--spec", default="cyclic:8")
    p.add_argument("--path")
    p.set_defaults(fn=cmd_latin)

    p = sub.add_parser("sample", help="sample one graph, edge list out")
    p.add_argument("--family", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--model", choices=("cayley", "latin"), default="cayley")
    p.set_defaults(fn=cmd_sample)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (experiments.ConfigError, groups.GroupValidationError, ValueError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
