"""Command-line front end: ``galkinlab <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import abelian as ab
from . import knots
from . import partitions as pt
from . import quandle as qd

F_NOTE = (
    "note: f_s = x_s - 1 is used; reading f_s = x_s literally gives (f) = {literal}, "
    "which leaves the range 0 <= f_s <= e_(i_s) - 1 whenever y_s = 0 and never yields f_s = 0"
)


def _emit(args, text: str, payload) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    elif text:
        print(text)


def _tuple(values) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


def cmd_count(args) -> int:
    if args.n < 0:
        raise ValueError(f"--n must be nonnegative, got {args.n}")
    values = {}
    if args.method in ("eq31", "both"):
        values["eq31"] = ab.count_pointed_groups(args.n)
    if args.method in ("convolution", "both"):
        values["convolution"] = pt.a000712(args.n)
    _emit(args, " ".join(str(v) for v in values.values()), {"n": args.n, **values})
    return 0 if len(set(values.values())) == 1 else 1


def cmd_enumerate(args) -> int:
    entries = ab.enumerate_pointed_groups(args.q, args.n)
    lines = [f"{ab.format_shape(shape)} {ab.format_index_sequence(s)}" for shape, s in entries]
    payload = [
        {"shape": ab.format_shape(shape), "sequence": ab.format_index_sequence(s)} for shape, s in entries
    ]
    _emit(args, "\n".join(lines), payload)
    return 0


def cmd_galkin(args) -> int:
    shape = ab.parse_shape(args.shape)
    point = ab.parse_element(args.point, shape)
    Q = qd.galkin(ab.PointedGroup(shape, point))
    if args.out:
        qd.write_quandle(Q, args.out)
        _emit(args, f"size {Q.size}", {"size": Q.size, "out": str(args.out)})
    elif args.json:
        print(json.dumps(qd.to_json(Q)))
    else:
        sys.stdout.write(qd.format_table(Q))
    return 0


def _load_raw_table(path: str):
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return json.loads(text)["table"]
    return qd.parse_table(text)


def cmd_check(args) -> int:
    verdict = qd.is_quandle(_load_raw_table(args.table))
    payload = {"ok": verdict.ok, "axiom": verdict.axiom, "witness": verdict.witness}
    _emit(args, str(verdict), payload)
    return 0 if verdict.ok else 1


def cmd_iso(args) -> int:
    h = qd.quandle_iso(qd.read_quandle(args.table1), qd.read_quandle(args.table2))
    text = "none" if h is None else " ".join(str(v) for v in h)
    _emit(args, text, {"isomorphism": None if h is None else list(h)})
    return 0


def cmd_color(args) -> int:
    if bool(args.knot) == bool(args.diagram):
        raise ValueError("give exactly one of --knot and --diagram")
    if args.knot:
        d = knots.builtin_knot(args.knot)
    else:
        d = knots.parse_diagram(Path(args.diagram).read_text(encoding="utf-8"), Path(args.diagram).stem)
    result = knots.count_colorings(d, qd.read_quandle(args.table))
    _emit(args, str(result.count), result._asdict())
    return 0


def cmd_canon(args) -> int:
    shape = ab.parse_shape(args.shape)
    g = ab.PointedGroup(shape, ab.parse_element(args.point, shape))
    s = ab.canonicalize(g)
    status = 0
    payload = {"sequence": ab.format_index_sequence(s)}
    if args.verify:
        rep = ab.orbit_representative(s, shape)
        orbit = next(o for o in ab.brute_force_orbits(shape) if g.point in o)
        payload["verified"] = rep in orbit
        status = 0 if payload["verified"] else 1
    text = payload["sequence"]
    if args.verify:
        text += "\nverified" if status == 0 else "\nMISMATCH"
    _emit(args, text, payload)
    return status


def _bijection_trace(args) -> int:
    x = pt.parse_strict(args.x, 1)
    y = pt.parse_strict(args.y, 0)
    lam = tuple(sorted(int(v) for v in args.lam.split(",") if v.strip()))
    n = sum(x) + sum(y) + sum(lam)
    if args.n is not None and args.n != n:
        raise ValueError(f"data have weight {n}, not --n {args.n}")
    blocks, s = ab.data_to_pointed_group(x, y, lam)
    back = ab.pointed_group_to_data(blocks, s)
    ok = back == (x, y, tuple(sorted(lam, reverse=True)))
    e = [b[0] for b in blocks]
    fields = {
        "n": n,
        "m": sum(x) + sum(y),
        "x": _tuple(x),
        "y": _tuple(y),
        "lambda": _tuple(lam),
        "mu": _tuple(ab.mu_of(blocks)),
        "(e)": _tuple(e),
        "(n)": _tuple(b[1] for b in blocks),
        "(i)": _tuple(i for i, _ in s),
        "(f)": _tuple(f for _, f in s),
        "sequence": ab.format_index_sequence(s),
    }
    note = F_NOTE.format(literal=_tuple(x))
    lines = [f"n = {fields['n']}, m = {fields['m']}"]
    lines += [f"{k} = {fields[k]}" for k in ("x", "y", "lambda", "mu", "(e)", "(n)", "(i)", "(f)", "sequence")]
    lines += [note, "round trip OK" if ok else "round trip FAILED"]
    _emit(args, "\n".join(lines), {**fields, "note": note, "ok": ok})
    return 0 if ok else 1


def cmd_bijection(args) -> int:
    if any(v is not None for v in (args.x, args.y, args.lam)):
        if None in (args.x, args.y, args.lam):
            raise ValueError("--x, --y and --lam must be given together")
        return _bijection_trace(args)
    if args.n is None or args.n < 0:
        raise ValueError("--n must be a nonnegative integer")
    report = ab.verify_bijection(args.n)
    text = f"OK {report.count}" if report.ok else f"FAIL {report.failure}"
    _emit(args, text, report._asdict())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of plain text")

    parser = argparse.ArgumentParser(prog="galkinlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="number of pointed groups of order q^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("eq31", "convolution", "both"), default="eq31")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", parents=[common], help="list orbit representatives")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("galkin", parents=[common], help="Cayley table of G(A, c)")
    p.add_argument("--shape", required=True, help="e.g. 'q=2;1,2'")
    p.add_argument("--point", required=True, help="e.g. '1;1'")
    p.add_argument("--out", help="output file; .json selects the JSON form")
    p.set_defaults(func=cmd_galkin)

    p = sub.add_parser("check", parents=[common], help="verify the quandle axioms")
    p.add_argument("--table", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("iso", parents=[common], help="search for a quandle isomorphism")
    p.add_argument("--table1", required=True)
    p.add_argument("--table2", required=True)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("color", parents=[common], help="count quandle colorings of a knot diagram")
    p.add_argument("--knot", choices=knots.BUILTIN_KNOTS)
    p.add_argument("--diagram")
    p.add_argument("--table", required=True)
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("canon", parents=[common], help="canonical orbit name of a pointed group")
    p.add_argument("--shape", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--verify", action="store_true", help="cross-check against the brute-force orbits")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("bijection", parents=[common], help="check the (x, y, lambda) <-> class bijection")
    p.add_argument("--n", type=int)
    p.add_argument("--x", help="strictly increasing, >= 1, e.g. 1,3,5")
    p.add_argument("--y", help="strictly increasing, >= 0, e.g. 1,2,4")
    p.add_argument("--lam", help="parts of lambda, e.g. 1,1,2")
    p.set_defaults(func=cmd_bijection)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
