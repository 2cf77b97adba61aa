"""Command-line interface: ``hardimec <command> ...``.

Exit status is 0 on success, 1 when ``equiv`` finds the graphs not
equivalent, and 2 on any error.
"""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .augment import i_augmented_tuple, twin_augmented_mag
from .equivalence import i_markov_equivalent
from .errors import GraphError
from .experiments import (
    MODES,
    count_admgs,
    enumerate_admgs,
    hoeffding_samples,
    mec_probability_sampled,
    mec_size_exhaustive,
    rows_to_csv,
    run_table,
)
from .graph import format_admg, parse_admg, parse_targets
from .learner import learn_with_sepsets
from .mixed import format_mixed
from .oracle import SeparationOracle
from .projection import latent_project


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _graph(path: str):
    return parse_admg(_read(path))


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _section(title: str, body: str) -> str:
    return f"# {title}\n{body}" + ("" if body.endswith("\n") else "\n")


def cmd_count(args) -> int:
    print(count_admgs(args.n))
    return 0


def cmd_enumerate(args) -> int:
    chunks = [_section(f"graph {k}", format_admg(g)) for k, g in enumerate(enumerate_admgs(args.n), 1)]
    _write(args.out, "\n".join(chunks))
    return 0


def cmd_equiv(args) -> int:
    report = i_markov_equivalent(_graph(args.g1), _graph(args.g2), parse_targets(args.targets), args.regime)
    print(f"regime: {args.regime}")
    print(report)
    return 0 if report else 1


def cmd_project(args) -> int:
    sys.stdout.write(format_mixed(latent_project(_graph(args.graph))))
    return 0


def cmd_twin(args) -> int:
    d = _graph(args.graph)
    pair = parse_targets(args.pair)
    if len(pair) != 2:
        raise GraphError("--pair needs exactly two targets, e.g. '{};{Z}'")
    sys.stdout.write(format_mixed(twin_augmented_mag(d, pair.pair(1, 2)).graph))
    return 0


def cmd_iaug(args) -> int:
    d = _graph(args.graph)
    iset = parse_targets(args.targets)
    out = [_section(f"domain {k}", format_mixed(a.graph)) for k, a in enumerate(i_augmented_tuple(d, iset), 1)]
    sys.stdout.write("\n".join(out))
    return 0


def cmd_learn(args) -> int:
    d = _graph(args.graph)
    oracle = SeparationOracle(d, parse_targets(args.targets))
    graphs, sepsets = learn_with_sepsets(oracle, zhang_tail_rules=args.zhang_tail_rules)
    out = [_section(f"domain {k}", format_mixed(g)) for k, g in enumerate(graphs, 1)]
    order = [v for g in graphs for v in g.nodes]
    out.append(_section("separating sets", sepsets.format(list(dict.fromkeys(order)))))
    sys.stdout.write("\n".join(out))
    return 0


def cmd_mec(args) -> int:
    d = _graph(args.graph)
    iset = parse_targets(args.targets)
    if args.sample:
        res = mec_probability_sampled(
            d, iset, args.regime, args.eps, args.delta, rng=args.seed, mode=args.mode,
            density=args.density, samples=args.samples, literal=args.literal_m,
        )
        print(f"regime: {args.regime}")
        print(f"estimate: {res.estimate:.6f}")
        print(f"samples: {res.samples}")
        print(f"hits: {res.hits}")
        print(f"epsilon: {res.epsilon}")
        print(f"delta: {res.delta}")
        print(f"seed: {args.seed}")
    else:
        print(f"regime: {args.regime}")
        print(f"size: {mec_size_exhaustive(d, iset, args.regime)}")
    return 0


def cmd_table(args) -> int:
    rows = run_table(args.id, args.trials, args.seed, ns=args.n, modes=args.mode, densities=args.density,
                     samples=args.samples, workers=args.workers)
    _write(args.out, rows_to_csv(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hardimec", description="Equivalence and learning under hard interventions.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("count", help="count ADMGs on n nodes by enumeration")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("enumerate", help="write every ADMG on n nodes")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("equiv", help="decide I-Markov equivalence of two ADMGs")
    s.add_argument("--g1", required=True)
    s.add_argument("--g2", required=True)
    s.add_argument("--targets", required=True, help="e.g. '{};{Z};{X,Y}'")
    s.add_argument("--regime", choices=("hard", "soft"), default="hard")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("project", help="latent projection to a MAG")
    s.add_argument("--graph", required=True)
    s.set_defaults(func=cmd_project)

    s = sub.add_parser("twin", help="twin augmented MAG for a pair of targets")
    s.add_argument("--graph", required=True)
    s.add_argument("--pair", required=True, help="two targets, e.g. '{};{Z}'")
    s.set_defaults(func=cmd_twin)

    s = sub.add_parser("iaug", help="I-augmented MAG of every domain")
    s.add_argument("--graph", required=True)
    s.add_argument("--targets", required=True)
    s.set_defaults(func=cmd_iaug)

    s = sub.add_parser("learn", help="run the learner against the graph's separation oracle")
    s.add_argument("--graph", required=True)
    s.add_argument("--targets", required=True)
    s.add_argument("--zhang-tail-rules", action="store_true", help="also apply Zhang's tail rules R8-R10")
    s.set_defaults(func=cmd_learn)

    s = sub.add_parser("mec", help="I-MEC size (exhaustive) or equivalence probability (sampled)")
    s.add_argument("--graph", required=True)
    s.add_argument("--targets", required=True)
    s.add_argument("--regime", choices=("hard", "soft"), default="hard")
    how = s.add_mutually_exclusive_group()
    how.add_argument("--exhaustive", action="store_true", help="enumerate every ADMG (default)")
    how.add_argument("--sample", action="store_true", help="Hoeffding-bounded sampling")
    s.add_argument("--eps", type=float, default=0.01)
    s.add_argument("--delta", type=float, default=0.01)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--mode", choices=MODES, default="complete")
    s.add_argument("--density", type=float, default=0.5)
    s.add_argument("--samples", type=int, help="override the Hoeffding sample size")
    s.add_argument("--literal-m", action="store_true",
                   help=f"truncate M instead of rounding up ({hoeffding_samples(0.01, 0.01, True)} at 0.01/0.01)")
    s.set_defaults(func=cmd_mec)

    s = sub.add_parser("table", help="replay an experiment table as CSV")
    s.add_argument("--id", type=int, choices=(1, 2, 3, 4), required=True)
    s.add_argument("--trials", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", default="-")
    s.add_argument("--n", type=int, nargs="+", help="restrict node counts")
    s.add_argument("--mode", choices=MODES, nargs="+")
    s.add_argument("--density", type=float, nargs="+")
    s.add_argument("--samples", type=int, help="draws per truth for tables 2-4")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
