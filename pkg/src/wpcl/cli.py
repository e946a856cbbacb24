"""Command-line interface.

Exit codes: 0 success (or equivalent), 1 not equivalent, 2 bad input,
3 missing monoid hypothesis or a resource limit hit.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import archlib
from .config import Limits, RunConfig
from .errors import (
    ConfigurationError,
    DomainError,
    HypothesisError,
    ParseError,
    ResourceLimitError,
    UsageError,
)
from .logic import make_ports
from .normal_form import find_witness, normalize
from .pvm import BUILTIN_NAMES, builtin_monoid, format_value, verify_flags
from .semantics import check_formula_ports, semantic_table, wpcl_eval
from .textio import (
    parse_configuration,
    parse_file,
    parse_wpcl,
    print_configuration,
    print_fnf,
    print_wpcl,
)

EXIT_OK, EXIT_DIFFERENT, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class _Out:
    def __init__(self, fmt, stream):
        self.fmt = fmt
        self.stream = stream

    def emit(self, text, **record):
        if self.fmt == "json-lines":
            print(json.dumps(record, sort_keys=True), file=self.stream)
        else:
            print(text, file=self.stream)


def _common(p, monoid_default="max-avg-plus"):
    p.add_argument("-m", "--monoid", default=monoid_default, help=f"one of {', '.join(BUILTIN_NAMES)}")
    p.add_argument("--port-limit", type=int, default=Limits.port_limit)
    p.add_argument("--star-limit", type=int, default=Limits.star_limit)
    p.add_argument("--split-limit", type=int, default=Limits.split_limit)
    p.add_argument("--format", choices=("text", "json-lines"), default="text")


def _formula_args(p, multiple=False):
    p.add_argument("--ports", help="comma-separated port set, e.g. p,q")
    if multiple:
        p.add_argument("-f", "--formula", action="append", default=[], help="give twice")
    else:
        p.add_argument("-f", "--formula")
        p.add_argument("--file", help="file starting with 'ports p, q;' followed by 'formula;' items")


def build_parser():
    ap = argparse.ArgumentParser(prog="wpcl", description="Evaluate, normalize and compare weighted configuration formulas.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="value of a formula on one configuration")
    _common(p)
    _formula_args(p)
    p.add_argument("-c", "--config", required=True, help="e.g. '{ {p},{q} }'")

    p = sub.add_parser("normalize", help="full normal form")
    _common(p)
    _formula_args(p)

    p = sub.add_parser("equiv", help="decide equivalence of two formulas")
    _common(p)
    _formula_args(p, multiple=True)

    p = sub.add_parser("table", help="value on every configuration over the ports")
    _common(p)
    _formula_args(p)

    p = sub.add_parser("demo", help="evaluate an architecture-style fixture")
    _common(p, monoid_default=None)
    p.add_argument("style", choices=archlib.STYLES)
    p.add_argument("variant", nargs="?", default="")
    p.add_argument("--weights", required=True, help='JSON object such as {"s1,m1": "4"}')
    p.add_argument("--n", type=int, help="star: number of components")
    p.add_argument("--masters", type=int)
    p.add_argument("--slaves", type=int)
    p.add_argument("--publishers", type=int)
    p.add_argument("--topics", type=int)
    p.add_argument("--subscribers", type=int)
    p.add_argument("--normalize", action="store_true", help="also print the full normal form")

    p = sub.add_parser("verify-flags", help="sample a monoid's declared flags and axioms")
    _common(p)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    return ap


def _run_config(args):
    limits = Limits(
        port_limit=args.port_limit, star_limit=args.star_limit, split_limit=args.split_limit
    )
    return RunConfig(args.monoid or "max-avg-plus", limits, args.format)


def _formulas(args, need):
    """``(ports, formulas)`` from ``--file`` or ``--ports``/``-f``."""
    if getattr(args, "file", None):
        with open(args.file) as fh:
            ports, formulas = parse_file(fh.read())
        if args.ports:
            ports = make_ports(args.ports)
    else:
        if not args.ports:
            raise UsageError("--ports is required (or use --file)")
        ports = make_ports(args.ports)
        texts = args.formula if isinstance(args.formula, list) else [args.formula] if args.formula else []
        formulas = [parse_wpcl(t, ports) for t in texts]
    if need is not None and len(formulas) != need:
        raise UsageError(f"expected {need} formula(s), got {len(formulas)}")
    if not formulas:
        raise UsageError("no formula given (use -f or --file)")
    for f in formulas:
        check_formula_ports(f, ports)
    return ports, formulas


def cmd_eval(args, out):
    rc = _run_config(args)
    m = builtin_monoid(rc.monoid)
    ports, formulas = _formulas(args, None)
    gamma = parse_configuration(args.config, ports)
    for f in formulas:
        v = wpcl_eval(gamma, f, m, ports, rc.limits)
        out.emit(format_value(v), formula=print_wpcl(f), config=print_configuration(gamma), value=format_value(v))
    return EXIT_OK


def cmd_normalize(args, out):
    rc = _run_config(args)
    m = builtin_monoid(rc.monoid)
    ports, formulas = _formulas(args, None)
    for f in formulas:
        fnf = normalize(f, ports, m, rc.limits)
        out.emit(print_fnf(fnf), formula=print_wpcl(f), normal_form=_fnf_record(fnf))
    return EXIT_OK


def _fnf_record(fnf):
    from .normal_form import Constant

    if isinstance(fnf, Constant):
        return {"constant": format_value(fnf.value)}
    return {"terms": [[format_value(t.value), print_configuration(t.config)] for t in fnf.terms]}


def cmd_equiv(args, out):
    rc = _run_config(args)
    m = builtin_monoid(rc.monoid)
    ports, (left, right) = _formulas(args, 2)
    witness = find_witness(left, right, ports, m, rc.limits)
    if witness is None:
        out.emit("EQUIVALENT", equivalent=True)
        return EXIT_OK
    g, a, b = witness
    out.emit(
        f"NOT EQUIVALENT\nwitness: {print_configuration(g)}\nleft: {format_value(a)}\nright: {format_value(b)}",
        equivalent=False,
        witness=print_configuration(g),
        left=format_value(a),
        right=format_value(b),
    )
    return EXIT_DIFFERENT


def cmd_table(args, out):
    rc = _run_config(args)
    m = builtin_monoid(rc.monoid)
    ports, formulas = _formulas(args, None)
    for f in formulas:
        table = semantic_table(f, ports, m, rc.limits)
        for g, v in table.entries.items():
            out.emit(f"{format_value(v)} @ {print_configuration(g)}", config=print_configuration(g), value=format_value(v))
    return EXIT_OK


_DEFAULT_DEMO_MONOID = {"master-slave": "max-avg-plus", "star": "min-avg-plus"}


def _infer_counts(weights):
    """Highest component index per kind seen in the weight keys."""
    seen = {}
    for pair in weights:
        for name in pair:
            m = re.fullmatch(r"t(\d+)[12]", name) or re.fullmatch(r"([a-z])(\d+)", name)
            if m is None:
                continue
            kind, index = ("t", m.group(1)) if m.re.pattern.startswith("t") else m.groups()
            seen[kind] = max(seen.get(kind, 0), int(index))
    return seen


def cmd_demo(args, out):
    weights = archlib.load_weights(args.weights)
    seen = _infer_counts(weights)
    style = args.style
    if style == "master-slave":
        counts = {"masters": args.masters or seen.get("m", 2), "slaves": args.slaves or seen.get("s", 2)}
    elif style == "pubsub":
        counts = {
            "publishers": args.publishers or seen.get("p", 2),
            "topics": args.topics or seen.get("t", 3),
            "subscribers": args.subscribers or seen.get("s", 4),
        }
    else:
        counts = {"n": args.n or seen.get("s", 5)}
    fx = archlib.ArchSpec(style, weights, args.variant, counts).build()
    if args.monoid is None:
        if style == "pubsub":
            v = args.variant or "total"
            args.monoid = "min-maj-max" if v.startswith("topic") or v == "prune" else "max-avg-plus"
        else:
            args.monoid = _DEFAULT_DEMO_MONOID[style]
    rc = _run_config(args)
    m = builtin_monoid(rc.monoid)
    v = wpcl_eval(fx.config, fx.formula, m, fx.ports, rc.limits)
    record = dict(
        style=style,
        variant=args.variant,
        monoid=m.name,
        formula=print_wpcl(fx.formula),
        config=print_configuration(fx.config),
        value=format_value(v),
    )
    lines = [
        f"monoid: {m.name}",
        f"formula: {record['formula']}",
        f"config: {record['config']}",
        f"value: {record['value']}",
    ]
    if args.normalize:
        fnf = normalize(fx.formula, fx.ports, m, rc.limits)
        lines.append("normal form:")
        lines.append(print_fnf(fnf))
        record["normal_form"] = _fnf_record(fnf)
    out.emit("\n".join(lines), **record)
    return EXIT_OK


def cmd_verify_flags(args, out):
    m = builtin_monoid(args.monoid)
    failures = verify_flags(m, samples=args.samples, seed=args.seed)
    if not failures:
        out.emit(f"{m.name}: no counterexample in {args.samples} samples", monoid=m.name, failures={})
        return EXIT_OK
    text = "\n".join(
        f"{m.name}: {name} fails at {', '.join(format_value(x) for x in ce)}" for name, ce in failures.items()
    )
    out.emit(text, monoid=m.name, failures={k: [format_value(x) for x in v] for k, v in failures.items()})
    return EXIT_DIFFERENT


COMMANDS = {
    "eval": cmd_eval,
    "normalize": cmd_normalize,
    "equiv": cmd_equiv,
    "table": cmd_table,
    "demo": cmd_demo,
    "verify-flags": cmd_verify_flags,
}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    out = _Out(args.format, stdout)
    try:
        return COMMANDS[args.command](args, out)
    except (HypothesisError, ResourceLimitError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_LIMIT
    except (ParseError, UsageError, DomainError, ConfigurationError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
