"""Command-line front end.

Every subcommand reads JSON (a path, or ``-`` for stdin) and writes JSON to
stdout.  Exit codes: 0 success or certified, 1 refuted or inconclusive,
2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .exceptions import InputError
from .graphs import (
    GlueSpec,
    PartitionedGraph,
    as_coloured,
    as_graph,
    glue,
    glue_partitioned,
    graph_from_json,
    leafy_star,
    replace_w4,
)
from .independence import coloured_indep_poly, indep_poly, indep_polynomial
from .lorentz import DEFAULT_MAX_HESSIANS, derivative_count, is_lorentzian, is_pre_lorentzian
from .polynomials import MultiPoly
from .sequences import has_internal_zeros, is_log_concave, is_ultra_log_concave, is_unimodal
from .experiments import theorem14_sweep


def _load(source: str):
    try:
        if source == "-":
            text = sys.stdin.read()
        else:
            text = Path(source).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {source}: {exc}") from exc


def _emit(args, data, text: str | None = None) -> None:
    if args.format == "text" and text is not None:
        print(text)
    else:
        print(json.dumps(data, indent=2))


def cmd_indep(args) -> int:
    g = as_graph(graph_from_json(_load(args.graph)))
    seq = indep_poly(g)
    poly = indep_polynomial(g)
    _emit(args, {"sequence": list(seq), "polynomial": poly.to_json()}, f"{list(seq)}\n{poly}")
    return 0


def cmd_cindep(args) -> int:
    g = as_coloured(graph_from_json(_load(args.graph)))
    p = coloured_indep_poly(g)
    _emit(args, p.to_json(), str(p))
    return 0


def cmd_glue(args) -> int:
    try:
        c1, c2 = args.at.split(",")
    except ValueError:
        raise InputError("--at expects two colours separated by a comma") from None
    g1 = graph_from_json(_load(args.g1))
    g2 = graph_from_json(_load(args.g2))
    spec = GlueSpec(c1, c2)
    if args.partitioned:
        if not (isinstance(g1, PartitionedGraph) and isinstance(g2, PartitionedGraph)):
            raise InputError("--partitioned needs 'colours' and 'bound_colour' in both inputs")
        out = glue_partitioned(g1, g2, spec)
    else:
        out = glue(as_coloured(g1), as_coloured(g2), spec)
    _emit(args, out.to_json())
    return 0


def cmd_replace_w4(args) -> int:
    g = as_graph(graph_from_json(_load(args.graph)))
    _emit(args, replace_w4(g).to_json())
    return 0


def cmd_leafy_star(args) -> int:
    _emit(args, leafy_star(args.n).to_json())
    return 0


def _cert_exit(cert) -> int:
    return 0 if cert.certified else 1


def cmd_certify_lorentzian(args) -> int:
    p = MultiPoly.from_json(_load(args.poly))
    total = derivative_count(p.degree(), p.nvars)
    print(f"derivative Hessians to consider: {total}", file=sys.stderr)
    cert = is_lorentzian(p, exhaustive=args.exhaustive, max_hessians=args.max_hessians, workers=args.workers)
    _emit(args, cert.to_json(), _cert_text(cert))
    return _cert_exit(cert)


def cmd_certify_pre(args) -> int:
    g = graph_from_json(_load(args.graph))
    if not isinstance(g, PartitionedGraph):
        raise InputError("pre-Lorentzian check needs 'colours' and 'bound_colour'")
    cert = is_pre_lorentzian(g, args.kmax, max_hessians=args.max_hessians, workers=args.workers)
    _emit(args, cert.to_json(), _cert_text(cert))
    return _cert_exit(cert)


def _cert_text(cert) -> str:
    lines = [f"verdict: {cert.verdict}"]
    if cert.k is not None:
        lines.append(f"k: {cert.k}")
    lines.append(f"hessians checked: {cert.hessians_checked}")
    for key, val in cert.witness.items():
        lines.append(f"{key}: {val}")
    return "\n".join(lines)


def _parse_sequence(arg: str) -> list[int]:
    text = arg.strip()
    if text.startswith("["):
        try:
            seq = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed sequence {arg!r}") from exc
    elif text and all(ch.isdigit() or ch in ", " for ch in text):
        seq = [int(x) for x in text.replace(" ", "").split(",") if x]
    else:
        data = _load(arg)
        if isinstance(data, list):
            seq = data
        else:
            return list(indep_poly(as_graph(graph_from_json(data))))
    if not isinstance(seq, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in seq):
        raise InputError("sequence must be a list of integers")
    return seq


def cmd_seqcheck(args) -> int:
    seq = _parse_sequence(args.source)
    lc = is_log_concave(seq)
    out = {
        "sequence": seq,
        "log_concave": lc.holds,
        "unimodal": is_unimodal(seq),
        "internal_zeros": has_internal_zeros(seq),
    }
    if not lc:
        out["log_concave_witness"] = lc.index
    if args.ultra is not None:
        ulc = is_ultra_log_concave(seq, args.ultra)
        out["ultra_log_concave"] = ulc.holds
        if not ulc:
            out["ultra_log_concave_witness"] = ulc.index
    _emit(args, out, "\n".join(f"{k}: {v}" for k, v in out.items()))
    return 0


def cmd_theorem14(args) -> int:
    rows = theorem14_sweep(args.max_vertices)
    ok = all(r.all_log_concave for r in rows)
    table = [f"{'n':>3} {'graphs':>8} {'log-concave':>12} {'max |V|':>8}"]
    table += [f"{r.n:>3} {r.graphs:>8} {r.log_concave:>12} {r.largest:>8}" for r in rows]
    table.append(rows[-1].summary())
    _emit(args, {"rows": [r.to_json() for r in rows], "all_log_concave": ok, "summary": rows[-1].summary()}, "\n".join(table))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prelorentz", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("indep", help="independence sequence and polynomial")
    p.add_argument("graph", nargs="?", default="-")
    p.set_defaults(func=cmd_indep)

    p = sub.add_parser("cindep", help="coloured independence polynomial")
    p.add_argument("graph", nargs="?", default="-")
    p.set_defaults(func=cmd_cindep)

    p = sub.add_parser("glue", help="glue two coloured graphs")
    p.add_argument("g1")
    p.add_argument("g2")
    p.add_argument("--at", required=True, metavar="C1,C2")
    p.add_argument("--partitioned", action="store_true")
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("replace-w4", help="replace every edge by a size-4 caterpillar")
    p.add_argument("graph", nargs="?", default="-")
    p.set_defaults(func=cmd_replace_w4)

    p = sub.add_parser("leafy-star", help="the leafy star partitioned graph")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_leafy_star)

    p = sub.add_parser("certify", help="Lorentzian / pre-Lorentzian certification")
    csub = p.add_subparsers(dest="what", required=True)
    for name, func, arg in (
        ("lorentzian", cmd_certify_lorentzian, "poly"),
        ("pre-lorentzian", cmd_certify_pre, "graph"),
    ):
        c = csub.add_parser(name)
        c.add_argument(arg, nargs="?", default="-")
        c.add_argument("--max-hessians", type=int, default=DEFAULT_MAX_HESSIANS)
        c.add_argument("--workers", type=int, default=None, help="defaults to $PRELORENTZ_WORKERS or 1")
        if name == "lorentzian":
            c.add_argument("--exhaustive", action="store_true", help="collect every failing Hessian")
        else:
            c.add_argument("--kmax", type=int, required=True)
        c.set_defaults(func=func)

    p = sub.add_parser("seqcheck", help="log-concavity checks on a sequence or a graph's sequence")
    p.add_argument("source", help="'1,4,3', a JSON list, or a graph/sequence JSON file")
    p.add_argument("--ultra", type=int, default=None, metavar="N")
    p.set_defaults(func=cmd_seqcheck)

    p = sub.add_parser("theorem14", help="replace-w4 log-concavity over all small labelled graphs")
    p.add_argument("--max-vertices", type=int, default=4)
    p.set_defaults(func=cmd_theorem14)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
