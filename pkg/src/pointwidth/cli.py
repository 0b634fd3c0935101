"""Command-line interface over the JSON formats.

Exit codes: 0 success, 1 validation failure or rejected decomposition,
2 unparsable input, 3 a search exceeded its size limit.
"""

import argparse
import json
import random
import sys

from . import formats
from .beta import build_beta_pd
from .decomposition import validate_pd, validate_spd, width_of_pd
from .errors import InvalidDecompositionError, InvalidInputError, NotChordalError, SizeLimitError
from .generators import (
    random_beta_acyclic,
    random_branch_decomposition,
    random_hypergraph,
    random_instance,
)
from .maxcsp import brute_force_opt, hypergraph_of
from .mim import (
    build_simplified_from_branch,
    build_spd_from_order,
    coverwidth_exhaustive,
    coverwidth_of_order,
    flatten,
    gen_hn,
    mim_width_of_branch,
    width_of_spd,
)
from .solver import solve

EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_LIMIT = 3


class _ParseFailure(Exception):
    pass


def _emit(obj, out=None):
    text = formats.dumps(obj)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path):
    try:
        return formats.read(path)
    except OSError as exc:
        raise _ParseFailure(f"cannot read {path}: {exc.strerror}") from exc


def _hypergraph(args):
    return formats.hypergraph_from_json(_load(args.hypergraph))


def _order(text, h):
    order = [v for v in text.split(",") if v]
    if sorted(order) != sorted(h.vertices) or len(set(order)) != len(order):
        raise InvalidInputError("--order must list every vertex exactly once")
    return order


def _is_pd(obj) -> bool:
    return isinstance(obj, dict) and "arcs" in obj


# ------------------------------------------------------------------ commands


def cmd_solve(args):
    inst = formats.instance_from_json(_load(args.instance))
    if args.method == "brute":
        opt, psi = brute_force_opt(inst)
        _emit(formats.opt_to_json(opt, psi if args.witness else None))
        return 0
    if args.decomp is None:
        raise _ParseFailure("solve needs --decomp unless --method brute")
    h = hypergraph_of(inst)
    pd = formats.pd_from_json(_load(args.decomp), h)
    k = args.width if args.width is not None else width_of_pd(h, pd)
    opt, psi = solve(inst, pd, k=k, witness=args.witness)
    _emit(formats.opt_to_json(opt, psi))
    return 0


def cmd_decomp(args):
    h = _hypergraph(args)
    if args.kind == "beta":
        order = _order(args.order, h) if args.order else None
        _emit(formats.pd_to_json(build_beta_pd(h, order)), args.output)
        return 0
    if args.kind == "mim":
        if not args.branch:
            raise _ParseFailure("decomp mim needs --branch")
        bd = formats.branch_from_json(_load(args.branch))
        spd = build_simplified_from_branch(h, bd)
    else:
        if args.order:
            order = _order(args.order, h)
        else:
            order = coverwidth_exhaustive(h)[1]
        spd = build_spd_from_order(h, order)
    if args.simplified:
        _emit(formats.spd_to_json(spd), args.output)
    else:
        _emit(formats.pd_to_json(flatten(spd, h)), args.output)
    return 0


def cmd_validate(args):
    h = _hypergraph(args)
    obj = _load(args.decomp)
    if args.kind == "pd":
        pd = formats.pd_from_json(obj)
        rep = validate_pd(h, pd, mode="exhaustive" if args.exhaustive else "fast", seed=args.seed)
    else:
        rep = validate_spd(h, formats.spd_from_json(obj))
    _emit(rep.to_json())
    return 0 if rep.ok else EXIT_INVALID


def cmd_width(args):
    h = _hypergraph(args)
    obj = _load(args.decomp)
    if _is_pd(obj):
        w = width_of_pd(h, formats.pd_from_json(obj, h))
    else:
        w = width_of_spd(h, formats.spd_from_json(obj, h))
    _emit({"width": w})
    return 0


def cmd_mimw(args):
    h = _hypergraph(args)
    bd = formats.branch_from_json(_load(args.branch))
    _emit({"mimw": mim_width_of_branch(h, bd)})
    return 0


def cmd_coverwidth(args):
    h = _hypergraph(args)
    if args.order:
        order = _order(args.order, h)
        _emit({"coverwidth": coverwidth_of_order(h, order), "order": order})
    else:
        w, order = coverwidth_exhaustive(h)
        _emit({"coverwidth": w, "order": order})
    return 0


def cmd_gen(args):
    rng = random.Random(args.seed)
    if args.kind == "hn":
        if args.n is None:
            raise _ParseFailure("gen hn needs --n")
        fam = gen_hn(args.n)
        hj = formats.hypergraph_to_json(fam.hypergraph)
        bj = formats.branch_to_json(fam.branch)
        if args.hypergraph_out:
            _emit(hj, args.hypergraph_out)
        if args.branch_out:
            _emit(bj, args.branch_out)
        _emit({"hypergraph": hj, "branch": bj, "collapsed": fam.collapsed})
        return 0
    if args.kind == "hypergraph":
        h = random_hypergraph(rng, args.vertices, args.edges)
        _emit(formats.hypergraph_to_json(h), args.output)
        return 0
    if args.kind == "beta":
        h = random_beta_acyclic(rng, args.vertices, args.edges)
        _emit(formats.hypergraph_to_json(h), args.output)
        return 0
    h = _hypergraph(args)
    if args.kind == "instance":
        inst = random_instance(rng, h, args.domain, args.max_table)
        _emit(formats.instance_to_json(inst), args.output)
    else:
        _emit(formats.branch_to_json(random_branch_decomposition(rng, h)), args.output)
    return 0


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pointwidth",
        description="Max-CSP solving and point decompositions of hypergraphs.",
    )
    p.add_argument("--seed", type=int, default=0, help="seed for every randomized step")
    # lets --seed also follow the subcommand without clobbering the global value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser(
        "solve",
        parents=[common],
        help="optimum of a Max-CSP instance",
        description=(
            "Dynamic programming over a point decomposition. Only fast structural "
            "checks run here; use 'validate pd --exhaustive' first for a full "
            "validity guarantee."
        ),
    )
    s.add_argument("--instance", required=True)
    s.add_argument("--decomp")
    s.add_argument("--width", type=int, help="guard size bound (default: width of the decomposition)")
    s.add_argument("--witness", action="store_true", help="also print an optimal assignment")
    s.add_argument("--method", choices=("dp", "brute"), default="dp")
    s.set_defaults(func=cmd_solve)

    d = sub.add_parser("decomp", parents=[common], help="build a decomposition")
    d.add_argument("kind", choices=("beta", "mim", "cover"))
    d.add_argument("--hypergraph", required=True)
    d.add_argument("--branch", help="branch decomposition (mim)")
    d.add_argument("--order", help="comma-separated vertex order (beta, cover)")
    d.add_argument("--simplified", action="store_true", help="print the simplified decomposition (mim, cover)")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_decomp)

    v = sub.add_parser("validate", parents=[common], help="check a decomposition")
    v.add_argument("kind", choices=("pd", "spd"))
    v.add_argument("--hypergraph", required=True)
    v.add_argument("--decomp", required=True)
    v.add_argument("--exhaustive", action="store_true")
    v.set_defaults(func=cmd_validate)

    w = sub.add_parser("width", parents=[common], help="width of a decomposition")
    w.add_argument("--hypergraph", required=True)
    w.add_argument("--decomp", required=True)
    w.set_defaults(func=cmd_width)

    m = sub.add_parser("mimw", parents=[common], help="MIM-width of a branch decomposition")
    m.add_argument("--hypergraph", required=True)
    m.add_argument("--branch", required=True)
    m.set_defaults(func=cmd_mimw)

    c = sub.add_parser("coverwidth", parents=[common], help="coverwidth of an order, or the minimum over all orders")
    c.add_argument("--hypergraph", required=True)
    group = c.add_mutually_exclusive_group()
    group.add_argument("--order")
    group.add_argument("--exhaustive", action="store_true")
    c.set_defaults(func=cmd_coverwidth)

    g = sub.add_parser("gen", parents=[common], help="generate inputs")
    g.add_argument("kind", choices=("hn", "hypergraph", "beta", "instance", "branch"))
    g.add_argument("--n", type=int)
    g.add_argument("--vertices", type=int, default=5)
    g.add_argument("--edges", type=int, default=4)
    g.add_argument("--hypergraph", help="input hypergraph (instance, branch)")
    g.add_argument("--domain", type=int, default=2)
    g.add_argument("--max-table", type=int, default=8)
    g.add_argument("--hypergraph-out")
    g.add_argument("--branch-out")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "gen" and args.kind in ("instance", "branch") and not args.hypergraph:
        print(json.dumps({"error": f"gen {args.kind} needs --hypergraph"}), file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except (_ParseFailure, InvalidInputError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_PARSE
    except (InvalidDecompositionError, NotChordalError) as exc:
        _emit({"ok": False, "status": "invalid", "violations": [str(exc)]})
        return EXIT_INVALID
    except SizeLimitError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
