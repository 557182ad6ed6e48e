"""Unified command-line entry point.

Verbs: gen, analyze, density, blueprint, match, mu, verify, experiment.
Exit codes: 0 success or witness found, 2 input error, 3 verified absence
(no partition), 4 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .density import DensityParams, cascade_clean, is_dense
from .errors import ParameterError, ParseError, VerificationFailure
from .experiment import ExperimentConfig, run_experiment
from .extremal import (
    extremal_colouring,
    naive_two_cycle_partition,
    parity_colouring,
    verify_two_cycle_partition,
)
from .fracmatch import max_constrained_fractional_matching
from .generate import RandomModel, random_colouring
from .blueprint import build_blueprint
from .hypercore import Colour, tight_components
from .matching import PipelineParams, four_matchings_k5, two_matchings_k4, verify_bundle
from . import serialize

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ABSENT = 3
EXIT_INTERNAL = 4


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParameterError(f"not a fraction: {text!r}") from None


def _load(path: str):
    return serialize.load(Path(path))


def _emit(obj, as_json: bool) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for key, value in obj.items():
            print(f"{key}: {value}")


def _cmd_gen(args) -> int:
    if args.family == "extremal":
        H = extremal_colouring(args.k, args.m)
    elif args.family == "parity":
        H = parity_colouring(args.k, args.a, args.b)
    else:
        H = random_colouring(
            RandomModel(n=args.n, k=args.k, absent_prob=args.absent, red_prob=args.red_p, seed=args.seed)
        )
    serialize.save(H, args.output)
    print(f"wrote {args.output} (k={H.k} n={H.n} edges={H.edge_count})")
    return EXIT_OK


def _cmd_analyze(args) -> int:
    H = _load(args.file)
    comps = tight_components(H)
    info = {
        "k": H.k,
        "n": H.n,
        "edges": H.edge_count,
        "red_edges": H.colour_counts()[Colour.RED],
        "blue_edges": H.colour_counts()[Colour.BLUE],
        "tight_components": len(comps),
        "components": [
            {"id": c.id, "colour": c.colour.name, "edges": c.edge_count, "support": len(c.support())}
            for c in comps
        ],
    }
    if args.mu is not None and args.alpha is not None:
        report = is_dense(H, DensityParams(_fraction(args.mu), _fraction(args.alpha)))
        info["dense"] = report.dense
        info["vacuous"] = report.vacuous
    _emit(info, args.json)
    return EXIT_OK


def _cmd_density(args) -> int:
    H = _load(args.file)
    if args.action == "check":
        report = is_dense(H, DensityParams(_fraction(args.mu), _fraction(args.alpha)))
        info = {
            "dense": report.dense,
            "vacuous": report.vacuous,
            "levels": [
                {
                    "i": lv.i,
                    "below_count": lv.below_count,
                    "exceptional": [list(s) for s in lv.exceptional],
                    "count_ok": lv.count_ok,
                    "zero_ok": lv.zero_ok,
                }
                for lv in report.levels
            ],
        }
        _emit(info, args.json)
        return EXIT_OK
    report = cascade_clean(H, _fraction(args.alpha))
    serialize.save(report.result, args.output)
    info = {
        "removed_edges": report.removed_total,
        "surviving_edges": report.result.edge_count,
        "precondition_ok": report.precondition_ok,
        "warning": report.warning or "",
        "paper_mu": report.paper_mu,
        "paper_alpha": report.paper_alpha,
        "output": str(args.output),
    }
    _emit(info, args.json)
    return EXIT_OK


def _cmd_blueprint(args) -> int:
    H = _load(args.file)
    bp = build_blueprint(H, float(_fraction(args.epsilon)))
    payload = {
        "epsilon": args.epsilon,
        "host": {"k": H.k, "n": H.n, "edges": H.edge_count},
        "edges": [
            {
                "v": list(e),
                "c": bp.graph.edges[e].letter,
                "component": bp.induced[e],
                "witness_order": bp.witness_order(e),
            }
            for e in bp.graph.edges
        ],
        "components": [
            {"id": c.id, "colour": c.colour.name, "edges": c.edge_count}
            for c in bp.components
        ],
    }
    Path(args.output).write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    print(f"wrote {args.output} ({len(payload['edges'])} blueprint edges)")
    return EXIT_OK


def _cmd_match(args) -> int:
    H = _load(args.file)
    params = PipelineParams(
        epsilon=float(_fraction(args.epsilon)),
        alpha=float(_fraction(args.alpha)),
        eta=float(_fraction(args.eta)),
    )
    runner = two_matchings_k4 if args.variant == "k4" else four_matchings_k5
    bundle, trace = runner(H, params)
    bad = verify_bundle(H, bundle)
    if bad is not None:
        print(f"internal verification failure: {bad}", file=sys.stderr)
        return EXIT_INTERNAL
    payload = {
        "matchings": [
            {"colour": m.colour.name, "component": m.component, "edges": [list(e) for e in sorted(m.edges)]}
            for m in bundle.matchings
        ],
        "covered": bundle.coverage,
        "n": H.n,
    }
    print(json.dumps(payload, indent=1, sort_keys=True))
    if args.trace:
        Path(args.trace).write_text(json.dumps(trace.to_json_obj(), indent=1, sort_keys=True) + "\n")
    print(f"covered={bundle.coverage}/{H.n}")
    return EXIT_OK


def _cmd_mu(args) -> int:
    H = _load(args.file)
    mode = "redblue" if args.redblue else ("any", args.s)
    res = max_constrained_fractional_matching(H, mode, _fraction(args.beta))
    payload = {
        "weight": str(res.weight),
        "optimality": res.optimality,
        "components_used": list(res.components_used),
        "support": {
            " ".join(str(v) for v in e): str(w) for e, w in sorted(res.assignment.weights.items())
        },
        "nodes": res.nodes,
    }
    print(json.dumps(payload, indent=1, sort_keys=True))
    return EXIT_OK


def _cmd_verify(args) -> int:
    H = _load(args.file)
    cert = (naive_two_cycle_partition if args.oracle else verify_two_cycle_partition)(H)
    if cert.found:
        payload = {
            "verdict": "partition",
            "red": {"order": list(cert.red.order), "kind": cert.red.kind},
            "blue": {"order": list(cert.blue.order), "kind": cert.blue.kind},
            "stats": cert.stats,
        }
        print(json.dumps(payload, indent=1, sort_keys=True))
        return EXIT_OK
    print(json.dumps({"verdict": "none", "stats": cert.stats}, indent=1, sort_keys=True))
    return EXIT_ABSENT


def _cmd_experiment(args) -> int:
    model = RandomModel(n=args.n, k=args.k, absent_prob=args.absent, red_prob=args.red_p, seed=args.seed)
    config = ExperimentConfig(
        model=model,
        repetitions=args.reps,
        pipeline=args.pipeline,
        params=PipelineParams(
            epsilon=float(_fraction(args.epsilon)),
            alpha=float(_fraction(args.alpha)),
            eta=float(_fraction(args.eta)),
        ),
        mu_mode="redblue" if args.redblue else ("any", args.s),
        mu_beta=_fraction(args.beta),
        jobs=args.jobs,
        no_meta=args.no_meta,
    )
    report = run_experiment(config)
    if args.output:
        Path(args.output).write_text(report)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(report)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tightmatch", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate instances")
    gsub = gen.add_subparsers(dest="family", required=True)
    g_ext = gsub.add_parser("extremal")
    g_ext.add_argument("--k", type=int, required=True)
    g_ext.add_argument("--m", type=int, required=True)
    g_ext.add_argument("-o", "--output", required=True)
    g_par = gsub.add_parser("parity")
    g_par.add_argument("--k", type=int, required=True)
    g_par.add_argument("--a", type=int, required=True)
    g_par.add_argument("--b", type=int, required=True)
    g_par.add_argument("-o", "--output", required=True)
    g_rnd = gsub.add_parser("random")
    g_rnd.add_argument("--n", type=int, required=True)
    g_rnd.add_argument("--k", type=int, required=True)
    g_rnd.add_argument("--absent", type=float, default=0.0)
    g_rnd.add_argument("--red-p", type=float, default=0.5)
    g_rnd.add_argument("--seed", type=int, default=0)
    g_rnd.add_argument("-o", "--output", required=True)
    for g in (g_ext, g_par, g_rnd):
        g.set_defaults(func=_cmd_gen)

    an = sub.add_parser("analyze", help="components and density report")
    an.add_argument("file")
    an.add_argument("--mu")
    an.add_argument("--alpha")
    an.add_argument("--json", action="store_true")
    an.set_defaults(func=_cmd_analyze)

    dens = sub.add_parser("density", help="density predicate and cleaning")
    dsub = dens.add_subparsers(dest="action", required=True)
    d_chk = dsub.add_parser("check")
    d_chk.add_argument("--mu", required=True)
    d_chk.add_argument("--alpha", required=True)
    d_chk.add_argument("file")
    d_chk.add_argument("--json", action="store_true")
    d_cln = dsub.add_parser("clean")
    d_cln.add_argument("--alpha", required=True)
    d_cln.add_argument("file")
    d_cln.add_argument("-o", "--output", required=True)
    d_cln.add_argument("--json", action="store_true")
    for d in (d_chk, d_cln):
        d.set_defaults(func=_cmd_density)

    bpp = sub.add_parser("blueprint", help="blueprint construction")
    bsub = bpp.add_subparsers(dest="action", required=True)
    b_build = bsub.add_parser("build")
    b_build.add_argument("--epsilon", default="1/10000")
    b_build.add_argument("file")
    b_build.add_argument("-o", "--output", required=True)
    b_build.set_defaults(func=_cmd_blueprint)

    mt = sub.add_parser("match", help="connected-matching pipelines")
    mt.add_argument("variant", choices=["k4", "k5"])
    mt.add_argument("file")
    mt.add_argument("--epsilon", default="1/10000")
    mt.add_argument("--alpha", default="1/100")
    mt.add_argument("--eta", default="1/10")
    mt.add_argument("--seed", type=int, default=0)
    mt.add_argument("--trace")
    mt.add_argument("--json", action="store_true")
    mt.set_defaults(func=_cmd_match)

    mu = sub.add_parser("mu", help="constrained fractional matching optimum")
    group = mu.add_mutually_exclusive_group(required=True)
    group.add_argument("--s", type=int)
    group.add_argument("--redblue", action="store_true")
    mu.add_argument("--beta", required=True)
    mu.add_argument("file")
    mu.add_argument("--json", action="store_true")
    mu.set_defaults(func=_cmd_mu)

    ver = sub.add_parser("verify", help="two-tight-cycle partition decision")
    vsub = ver.add_subparsers(dest="what", required=True)
    v_part = vsub.add_parser("partition")
    v_part.add_argument("file")
    v_part.add_argument("--oracle", action="store_true")
    v_part.set_defaults(func=_cmd_verify)

    exp = sub.add_parser("experiment", help="seeded batch runs, CSV output")
    exp.add_argument("--pipeline", choices=["k4", "k5", "mu"], required=True)
    exp.add_argument("--n", type=int, required=True)
    exp.add_argument("--k", type=int, required=True)
    exp.add_argument("--reps", type=int, default=1)
    exp.add_argument("--seed", type=int, default=0)
    exp.add_argument("--absent", type=float, default=0.0)
    exp.add_argument("--red-p", type=float, default=0.5)
    exp.add_argument("--epsilon", default="1/10000")
    exp.add_argument("--alpha", default="1/100")
    exp.add_argument("--eta", default="1/10")
    exp.add_argument("--s", type=int, default=1)
    exp.add_argument("--redblue", action="store_true")
    exp.add_argument("--beta", default="1")
    exp.add_argument("--jobs", type=int, default=1)
    exp.add_argument("--no-meta", action="store_true")
    exp.add_argument("-o", "--output")
    exp.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ParameterError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
