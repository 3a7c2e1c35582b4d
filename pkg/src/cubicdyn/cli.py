"""Command-line entry point: ``cubicdyn <subcommand> ...``.

Exit codes: 0 pass, 1 verified failure or domain error, 2 usage/parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from contextlib import contextmanager

from . import cremona, foliation, suites
from .dynamics.harness import GeneratorWord, orbit
from .errors import CubicError, ParseError, UnknownSuite
from .numeric import SeededSampler, as_q, parse_qlist, qstr
from .surfaces import V, VI, ParamsV, ParamsVI, SurfacePoint, lines_cv, lines_cvi, sample_surface

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_V_KEYS = {"e0", "a3", "a4", "e3", "e4"}
_VI_KEYS = {"e1", "e2", "e3", "e4", "a1", "a2", "a3", "a4"}


class UsageError(Exception):
    pass


def parse_assignments(text: str | None) -> dict:
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise ParseError(f"expected k=v, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = as_q(v)
    return out


def params_from(family: str, kv: dict):
    """Build ParamsV from e0 with (a3, a4) or (e3, e4); ParamsVI from e1..e4 or a1..a4."""
    if family == V:
        unknown = set(kv) - _V_KEYS
        if unknown:
            raise ParseError(f"unknown C_V parameter(s): {', '.join(sorted(unknown))}")
        if "e0" not in kv:
            raise ParseError("C_V needs e0")
        if "e3" in kv and "e4" in kv:
            return ParamsV.from_eigen(kv["e0"], kv["e3"], kv["e4"])
        if "a3" in kv and "a4" in kv:
            return ParamsV(kv["e0"], kv["a3"], kv["a4"])
        raise ParseError("C_V needs a3,a4 or e3,e4")
    unknown = set(kv) - _VI_KEYS
    if unknown:
        raise ParseError(f"unknown C_VI parameter(s): {', '.join(sorted(unknown))}")
    if all(f"e{i}" in kv for i in range(1, 5)):
        return ParamsVI(*(kv[f"e{i}"] for i in range(1, 5)))
    if all(f"a{i}" in kv for i in range(1, 5)):
        return ParamsVI.from_traces(*(kv[f"a{i}"] for i in range(1, 5)))
    raise ParseError("C_VI needs e1..e4 or a1..a4")


def _family(text: str) -> str:
    t = text.upper().replace("C_", "")
    if t not in (V, VI):
        raise ParseError(f"family must be V or VI, not {text!r}")
    return t


# -- output --

def _flat(v):
    if isinstance(v, (dict, list, tuple)):
        return json.dumps(v, separators=(",", ":"), sort_keys=True, ensure_ascii=False)
    return "" if v is None else str(v)


def render(records: list, fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r, sort_keys=True, ensure_ascii=False) + "\n" for r in records)
    cols: list = []
    for r in records:
        for k in r:
            if k not in cols:
                cols.append(k)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow({k: _flat(r.get(k)) for k in cols})
    return buf.getvalue()


@contextmanager
def _sink(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


# -- subcommands --

def cmd_verify(args) -> tuple[list, int]:
    names = list(suites.SUITES) if args.suite == "all" else [suites.get_suite(args.suite).name]
    records, status = [], EXIT_OK
    for name in names:
        for v in suites.run_suite(name, args.seed, args.trials):
            rec = {"suite": name, **v.to_json()}
            records.append(rec)
            if not v.ok:
                status = EXIT_FAIL
    n_fail = sum(r["verdict"] != "Equal" for r in records)
    records.append({"summary": {"suites": len(names), "checks": len(records), "failed": n_fail}})
    return records, status


def cmd_orbit(args) -> tuple[list, int]:
    word = GeneratorWord.parse(args.word)
    fmap = word.to_map()
    P = params_from(fmap.source, parse_assignments(args.params))
    x = parse_qlist(args.start)
    if len(x) != 3:
        raise ParseError("--start needs three coordinates")
    orb = orbit(fmap, SurfacePoint(fmap.source, x, P), args.steps)
    records = [{"step": n, "x": [qstr(t) for t in p.x], "params": p.params.to_json()}
               for n, p in enumerate(orb.points)]
    records.append({"summary": {"word": str(word), **orb.summary()}})
    return records, EXIT_OK


def cmd_lines(args) -> tuple[list, int]:
    fam = _family(args.family)
    P = params_from(fam, parse_assignments(args.params))
    lines = lines_cv(P) if fam == V else lines_cvi(P)
    return [ln.to_json() for ln in lines], EXIT_OK


def cmd_sample(args) -> tuple[list, int]:
    fam = _family(args.family)
    P = params_from(fam, parse_assignments(args.params))
    s = SeededSampler(args.seed)
    return [sample_surface(fam, P, s.split(i)).to_json() for i in range(args.count)], EXIT_OK


def cmd_census(args) -> tuple[list, int]:
    a = parse_qlist(args.alpha)
    if len(a) != 3:
        raise ParseError("--alpha needs three rationals")
    return [pt.to_json() for pt in foliation.singular_census(foliation.AlphaParams(*a))], EXIT_OK


def cmd_cremona(args) -> tuple[list, int]:
    if args.element == "verify":
        records, status = [], EXIT_OK
        for v in cremona.group_relations_suite(SeededSampler(args.seed), args.trials or 50):
            records.append(v.to_json())
            status = status if v.ok else EXIT_FAIL
        return records, status
    elem = cremona.parse_elem(args.element)
    u, v = parse_qlist(args.point)
    records = []
    pt = (u, v)
    for n in range(args.steps + 1):
        rec = {"step": n, "uv": [qstr(t) for t in pt]}
        try:
            rec["log_symplectic_ratio"] = qstr(cremona.log_symplectic_ratio(elem, pt))
        except ZeroDivisionError:
            rec["log_symplectic_ratio"] = None
        records.append(rec)
        if n == args.steps:
            break
        try:
            pt = cremona.apply(elem, pt)
        except ZeroDivisionError as exc:
            records.append({"summary": {"element": elem.label(), "truncated_at": n + 1, "reason": str(exc)}})
            return records, EXIT_OK
        if pt == (u, v):
            records.append({"step": n + 1, "uv": [qstr(t) for t in pt]})
            records.append({"summary": {"element": elem.label(), "period": n + 1}})
            return records, EXIT_OK
    records.append({"summary": {"element": elem.label(), "period": None}})
    return records, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--params", default=None, help="k=v[,k=v...] with rational values")

    p = argparse.ArgumentParser(prog="cubicdyn", description="Exact dynamics on the Painlevé V/VI cubics.")
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("verify", parents=[common], help="run a verification suite")
    sp.add_argument("suite", help="suite name or 'all'; known: " + ", ".join(suites.SUITES))
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("orbit", parents=[common], help="iterate a generator word")
    sp.add_argument("word", help='e.g. "g", "s1 . mhat", "h12^2"')
    sp.add_argument("--start", required=True, help="x1,x2,x3")
    sp.add_argument("--steps", type=int, default=10)
    sp.set_defaults(fn=cmd_orbit)

    sp = sub.add_parser("lines", parents=[common], help="emit the line configuration")
    sp.add_argument("family", help="V or VI")
    sp.set_defaults(fn=cmd_lines)

    sp = sub.add_parser("sample", parents=[common], help="random exact points")
    sp.add_argument("family", help="V or VI")
    sp.add_argument("--count", type=int, default=10)
    sp.set_defaults(fn=cmd_sample)

    sp = sub.add_parser("census", parents=[common], help="singular points of the foliation")
    sp.add_argument("--alpha", required=True, help="a1,a2,a3")
    sp.set_defaults(fn=cmd_census)

    sp = sub.add_parser("cremona", parents=[common], help="iterate a Cremona element, or 'verify'")
    sp.add_argument("element", help='e.g. "p", "t(2,3)", "w[[0,1],[-1,1]]", "dj1(2; u^1 * (1+3u))"')
    sp.add_argument("--point", default="1,1", help="u,v")
    sp.add_argument("--steps", type=int, default=10)
    sp.set_defaults(fn=cmd_cremona)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.trials is not None and args.trials < 1:
        print("error: --trials must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        records, status = args.fn(args)
    except (ParseError, UnknownSuite) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CubicError, ZeroDivisionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        with _sink(args.out) as fh:
            fh.write(render(records, args.format))
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return status


if __name__ == "__main__":
    sys.exit(main())
