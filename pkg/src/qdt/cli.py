"""Command-line front end.

Relations travel between subcommands as JSON on stdin/stdout, so commands
compose with pipes.  Exit status is 0 on success, 1 when a check finds a
counterexample, and 2 on bad input or a failed precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import balls, gallery, hausdorff, metric, oracle, order, wbd
from .grel import GRel, compose, kan_left, kan_right
from .report import COUNTEREXAMPLE, jsonable
from .xreal import fmt, parse

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_INPUT = 2

TOPOLOGY_KINDS = metric.BALL_KINDS


class InputError(Exception):
    """Bad input or a failed precondition; reported with exit status 2."""


# ---------------------------------------------------------------------------
# I/O


def _read_text(source: str | None) -> str:
    if source in (None, "-"):
        return sys.stdin.read()
    try:
        return Path(source).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None


def _load_json(source: str | None) -> Any:
    text = _read_text(source)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from None


def _relation(data: Any, args: argparse.Namespace, square: bool = True) -> GRel:
    if isinstance(data, dict) and "relation" in data:
        data = data["relation"]
    try:
        d = GRel.from_json(data)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    except (ValueError, TypeError) as exc:
        raise InputError(f"invalid relation: {exc}") from None
    if square and not d.is_square:
        raise InputError("non-square table: this command needs a relation on one carrier")
    if d.n > args.size_cap:
        raise InputError(f"carrier has {d.n} points, above --size-cap {args.size_cap}")
    return d


def _read_relation(args: argparse.Namespace, source: str | None = None, square: bool = True) -> GRel:
    return _relation(_load_json(source), args, square)


def _label(d: GRel, name: str) -> int:
    try:
        return d.source.index(name)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None


def _labels(d: GRel, text: str | None) -> frozenset[int]:
    if text is None:
        raise InputError("--subset is required")
    names = [x.strip() for x in text.split(",") if x.strip()]
    return frozenset(_label(d, x) for x in names)


def _value(text: str) -> Any:
    try:
        return parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _grid(args: argparse.Namespace, d: GRel) -> balls.BallGrid | None:
    if args.grid is None:
        return None
    text = args.grid
    if not text.lstrip().startswith("{"):
        text = _read_text(text)
    try:
        return balls.BallGrid.from_json(d.source, json.loads(text))
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed grid JSON: {exc.msg}") from None
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"invalid grid: {exc}") from None


def _emit(args: argparse.Namespace, payload: Any, text: str) -> None:
    if args.format == "json":
        print(json.dumps(jsonable(payload), ensure_ascii=False))
    else:
        print(text)


def _emit_relation(args: argparse.Namespace, d: GRel) -> None:
    if args.format == "text":
        print(d.pretty())
    else:
        print(json.dumps(d.to_json(), ensure_ascii=False))


def _set_text(d: GRel, S) -> str:
    return "{" + ", ".join(d.source.names(S)) + "}"


# ---------------------------------------------------------------------------
# Subcommands


def cmd_gallery(args: argparse.Namespace) -> int:
    try:
        d = gallery.get(args.name)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    _emit_relation(args, d)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    d = _read_relation(args, args.input)
    c = metric.classify(d)
    flags = ", ".join(k for k, v in c.to_json().items() if v is True)
    _emit(args, c.to_json(), f"{c.label()}" + (f" ({flags})" if flags else ""))
    return EXIT_OK


def cmd_reflexivize(args: argparse.Namespace) -> int:
    d = _read_relation(args, args.input)
    _emit_relation(args, metric.reflexivize_lower(d) if args.lower else metric.reflexivize_upper(d))
    return EXIT_OK


def _pair(args: argparse.Namespace) -> tuple[GRel, GRel]:
    if len(args.inputs) > 2:
        raise InputError("at most two relations")
    if len(args.inputs) == 2:
        return _read_relation(args, args.inputs[0], False), _read_relation(args, args.inputs[1], False)
    d = _read_relation(args, args.inputs[0] if args.inputs else None, False)
    return d, d


def cmd_compose(args: argparse.Namespace) -> int:
    d, e = _pair(args)
    try:
        _emit_relation(args, compose(d, e))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return EXIT_OK


def cmd_kan(args: argparse.Namespace) -> int:
    d, e = _pair(args)
    try:
        _emit_relation(args, kan_left(d, e) if args.left else kan_right(d, e))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return EXIT_OK


def cmd_balls(args: argparse.Namespace) -> int:
    d = _read_relation(args, args.input)
    c, r = _label(d, args.center), _value(args.radius)
    kind = "lower" if args.lower else "upper"
    S = metric.hole(d, c, r, kind) if args.hole else metric.ball(d, c, r, kind)
    what = f"{kind} {'hole' if args.hole else 'ball'}"
    _emit(args, {"kind": what, "center": args.center, "radius": fmt(r), "members": d.source.names(S)}, _set_text(d, S))
    return EXIT_OK


def cmd_topology(args: argparse.Namespace) -> int:
    d = _read_relation(args, args.input)
    kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
    bad = [k for k in kinds if k not in TOPOLOGY_KINDS]
    if bad or not kinds:
        raise InputError(f"unknown topology kinds {bad}; choose from {', '.join(TOPOLOGY_KINDS)}")
    opens = sorted(metric.generated_topology(d, kinds), key=lambda S: (len(S), sorted(S)))
    _emit(args, {"kinds": kinds, "open": [d.source.names(S) for S in opens]}, "\n".join(_set_text(d, S) for S in opens))
    return EXIT_OK


def _family_cmd(args: argparse.Namespace, family) -> int:
    d = _read_relation(args, args.input)
    try:
        sets = family(d)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(args, [d.source.names(S) for S in sets], "\n".join(_set_text(d, S) for S in sets))
    return EXIT_OK


def cmd_directed(args: argparse.Namespace) -> int:
    return _family_cmd(args, order.directed_subsets)


def cmd_ideal(args: argparse.Namespace) -> int:
    return _family_cmd(args, order.ideals)


def _bound_cmd(args: argparse.Namespace, pick) -> int:
    d = _read_relation(args, args.input)
    Y = _labels(d, args.subset)
    S = pick(Y, d)
    _emit(args, {"subset": d.source.names(Y), "result": d.source.names(S)}, _set_text(d, S))
    return EXIT_OK


def cmd_sup(args: argparse.Namespace) -> int:
    return _bound_cmd(args, order.d_sup_set)


def cmd_max(args: argparse.Namespace) -> int:
    return _bound_cmd(args, order.d_max_set)


def cmd_complete(args: argparse.Namespace) -> int:
    d = _read_relation(args, args.input)
    try:
        comp = hausdorff.complete_predomain(d, quotient=args.quotient)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(args, comp.to_json(), comp.report.summary() + "\n" + comp.table.pretty())
    return EXIT_COUNTEREXAMPLE if comp.report.status == COUNTEREXAMPLE else EXIT_OK


def cmd_wbd(args: argparse.Namespace) -> int:
    d = _read_relation(args, args.input)
    try:
        if args.mode == "topological":
            R = wbd.way_below_topological(d, kind=args.kind)
        else:
            R = wbd.way_below_relational(d, args.mode)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.domain:
        v = wbd.check_domain(d)
        _emit(args, {"way-below": R.to_json(), "domain": v.to_json()}, R.pretty() + f"\npredomain: {v.predomain}\ndomain: {v.domain}")
    else:
        _emit_relation(args, R)
    return EXIT_OK


def cmd_hausdorff(args: argparse.Namespace) -> int:
    d = _read_relation(args, args.input)
    if args.family == "sampled":
        fam = hausdorff.sampled_family(d.source, args.seed)
    else:
        if d.n > hausdorff.EXHAUSTIVE_LIMIT:
            raise InputError(f"full powerset needs at most {hausdorff.EXHAUSTIVE_LIMIT} points; use --family sampled")
        fam = order.SubsetFamily.powerset(d.source)
    H = hausdorff.hausdorff_lower(d, fam) if args.lower else hausdorff.hausdorff_upper(d, fam)
    _emit(args, H.to_json(), H.values.pretty())
    return EXIT_OK


def _ball_arg(d: GRel, text: str) -> tuple[int, Any]:
    if ":" not in text:
        raise InputError(f"formal ball {text!r} must look like label:radius")
    label, radius = text.rsplit(":", 1)
    r = _value(radius)
    try:
        return balls.FormalBall(label, r).resolve(d.source)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_fb(args: argparse.Namespace) -> int:
    d = _read_relation(args, args.input)
    a, b = _ball_arg(d, args.source), _ball_arg(d, args.target)
    out = {
        "distance": fmt(balls.fb_distance(d, a, b)),
        "leq": balls.fb_leq(d, a, b),
        "lt": balls.fb_lt(d, a, b),
    }
    _emit(args, out, f"d+ = {out['distance']}  <= {out['leq']}  < {out['lt']}")
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    if args.list:
        ids = oracle.check_ids()
        _emit(args, {i: oracle.REGISTRY[i].statement for i in ids}, "\n".join(f"{i}: {oracle.REGISTRY[i].statement}" for i in ids))
        return EXIT_OK
    if args.id is None:
        raise InputError("name a check (see `qdt check --list`)")
    try:
        spec = oracle.lookup(args.id)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    data = _load_json(args.input)
    d = _relation(data, args)
    try:
        inst = oracle.Instance.from_json(data)
        if args.grid is not None:
            inst = oracle.Instance(inst.d, inst.e, inst.profiles, inst.subset, _grid(args, d))
        v = oracle.run_check(spec, inst)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(args, v.to_json(), v.text())
    return EXIT_COUNTEREXAMPLE if v.status == COUNTEREXAMPLE else EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        spec = oracle.lookup(args.id)
        sizes = [int(s) for s in args.sizes.split(",")]
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    except ValueError:
        raise InputError(f"bad --sizes {args.sizes!r}") from None
    kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
    if any(s < 1 or s > args.size_cap for s in sizes):
        raise InputError(f"sizes must lie in 1..{args.size_cap}")
    try:
        v = oracle.search_counterexample(spec, kinds, sizes, args.budget, args.seed, args.workers)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(args, v.to_json(), v.text())
    return EXIT_COUNTEREXAMPLE if v.status == COUNTEREXAMPLE else EXIT_OK


# ---------------------------------------------------------------------------
# Parser


GLOBAL_DEFAULTS = {"seed": 0, "size_cap": order.MAX_SIZE, "family": "powerset", "grid": None, "format": None}


def build_parser() -> argparse.ArgumentParser:
    # Global flags may come before or after the subcommand.  Both copies
    # suppress their defaults so neither overwrites the other; main fills them.
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, help="seed for sampling and sweeps (default 0)")
    common.add_argument("--size-cap", type=int, help=f"largest accepted carrier (default {order.MAX_SIZE})")
    common.add_argument("--family", choices=("powerset", "sampled"), help="subset family for Hausdorff tables")
    common.add_argument("--grid", help='radius grid as JSON {"radii": [...]} or a path to it')
    common.add_argument("--format", choices=("text", "json"), help="output format")

    p = argparse.ArgumentParser(prog="qdt", description="Finite quasi-metric domain theory toolkit.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help: str, fmt_default: str = "text", input_arg: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help, parents=[common])
        sp.set_defaults(func=fn, fmt_default=fmt_default)
        if input_arg:
            sp.add_argument("input", nargs="?", help="relation JSON file (default: stdin)")
        return sp

    sp = add("gallery", cmd_gallery, "emit a named example relation", "json", input_arg=False)
    sp.add_argument("name", help="Gn, Qn, CHAINn, STRICTn, METRICn, X3NR or SPLIT")
    add("classify", cmd_classify, "classify a relation")
    sp = add("reflexivize", cmd_reflexivize, "upper or lower reflexivization", "json")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--upper", action="store_true", help="upper reflexivization (default)")
    g.add_argument("--lower", action="store_true", help="lower reflexivization")
    sp = add("compose", cmd_compose, "min-plus composition of one relation with itself or of two", "json", input_arg=False)
    sp.add_argument("inputs", nargs="*", help="one or two relation files (default: stdin)")
    sp = add("kan", cmd_kan, "right Kan extension d/e or left lift e\\d", "json", input_arg=False)
    sp.add_argument("inputs", nargs="*", help="d and e relation files")
    sp.add_argument("--left", action="store_true", help="left lift instead of right extension")
    sp = add("balls", cmd_balls, "a ball or hole around a point")
    sp.add_argument("--center", required=True)
    sp.add_argument("--radius", required=True)
    sp.add_argument("--lower", action="store_true", help="lower instead of upper")
    sp.add_argument("--hole", action="store_true", help="hole instead of ball")
    sp = add("topology", cmd_topology, "open sets generated by balls and holes")
    sp.add_argument("--kinds", default="upper-ball", help=f"comma list of {', '.join(TOPOLOGY_KINDS)}")
    add("directed", cmd_directed, "directed subsets")
    add("ideal", cmd_ideal, "ideals")
    sp = add("sup", cmd_sup, "suprema of a subset")
    sp.add_argument("--subset", help="comma-separated labels")
    sp = add("max", cmd_max, "maxima of a subset")
    sp.add_argument("--subset", help="comma-separated labels")
    sp = add("complete", cmd_complete, "completion of a max-continuous distance by directed subsets")
    sp.add_argument("--quotient", action="store_true", help="identify equivalent directed subsets")
    sp = add("wbd", cmd_wbd, "way-below distance", "json")
    sp.add_argument("--mode", choices=("sup", "max", "topological"), default="sup")
    sp.add_argument("--kind", default="◦◦", help="limit kind for --mode topological")
    sp.add_argument("--domain", action="store_true", help="also decide predomain and domain")
    sp = add("hausdorff", cmd_hausdorff, "Hausdorff distance table on subsets")
    sp.add_argument("--lower", action="store_true", help="lower Hausdorff distance instead of upper")
    sp = add("fb", cmd_fb, "formal ball distance and orders", input_arg=False)
    sp.add_argument("source", help="label:radius")
    sp.add_argument("target", help="label:radius")
    sp.add_argument("input", nargs="?", help="relation JSON file (default: stdin)")
    sp = add("check", cmd_check, "run a registered check on an instance", input_arg=False)
    sp.add_argument("id", nargs="?", help="check id")
    sp.add_argument("input", nargs="?", help="instance JSON file (default: stdin)")
    sp.add_argument("--list", action="store_true", help="list registered checks")
    sp = add("sweep", cmd_sweep, "search random instances for a counterexample", input_arg=False)
    sp.add_argument("id", help="check id")
    sp.add_argument("--kinds", default="distance", help="comma list of generator kinds")
    sp.add_argument("--sizes", default="1,2,3", help="comma list of carrier sizes")
    sp.add_argument("--budget", type=int, default=100)
    sp.add_argument("--workers", type=int, default=1)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    if args.format is None:
        args.format = args.fmt_default
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        # library preconditions raise ValueError; both are input errors here
        print(f"qdt: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
