"""Command-line front end: ``tatecoh <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import bianchi, coxeter
from .complex import classify_components
from .numtheory import ExcludedField, NotSquarefree
from .series import expand_series


class UsageError(Exception):
    pass


def _emit(out, fmt: str, payload, text: str, rows=None, fields=None) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True, default=str) + "\n")
    elif fmt == "csv":
        if rows is None:
            raise UsageError("csv output is not available for this subcommand")
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write(text.rstrip("\n") + "\n")


def _odd_prime(p: int) -> int:
    if p < 3 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
        raise UsageError(f"--prime must be an odd prime, got {p}")
    return p


def _counts(m: int, ell: int) -> bianchi.ClassCounts:
    try:
        return bianchi.kraemer_counts(m, ell)
    except (NotSquarefree, ExcludedField) as exc:
        raise UsageError(str(exc)) from None


def _need_unambiguous(c: bianchi.ClassCounts) -> None:
    if c.ambiguous:
        alts = "; ".join(json.dumps(a.to_dict(), sort_keys=True) for a in c.ambiguity)
        raise UsageError(f"m = {c.m} is ambiguous: {alts}")


# -- subcommands ---------------------------------------------------------------

def cmd_coxeter_ct(a, out):
    ell = _odd_prime(a.prime)
    ids = a.id or sorted(coxeter.load_ct_diagrams())
    results = []
    for i in sorted(ids):
        if not 1 <= i <= 32:
            raise UsageError(f"--id must lie in 1..32, got {i}")
        r = coxeter.tetrahedral_homology(i, ell)
        results.append({
            "id": i, "ell": ell, "m": r.m, "homology": r.summary(),
            "reduced_graph": r.reduced.to_dict(),
        })
    text = "\n".join(
        f"CT({r['id']}) ell={ell}: m={r['m']}, "
        + (f"H_q \u2245 {r['homology']}" if r["m"] else r["homology"])
        for r in results)
    rows = [{k: r[k] for k in ("id", "ell", "m", "homology")} for r in results]
    _emit(out, a.format, results, text, rows, ["id", "ell", "m", "homology"])


def cmd_coxeter_triangle(a, out):
    ell = _odd_prime(a.prime)
    try:
        summands = coxeter.triangle_group_homology(a.p, a.q, a.r, ell)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    dims = [sum(coxeter.dihedral_mod_l_homology(int(s[1:]), ell, q) for s in summands)
            for q in range(1, a.qmax + 1)]
    payload = {"p": a.p, "q": a.q, "r": a.r, "ell": ell, "summands": summands, "dims": dims}
    text = (f"triangle ({a.p},{a.q},{a.r}) ell={ell}: "
            f"{' + '.join(f'H_q({s}; F{ell})' for s in summands) or '0'}\n"
            f"dim H_q for q=1..{a.qmax}: {' '.join(map(str, dims))}")
    rows = [{"q": q, "dim": d} for q, d in enumerate(dims, start=1)]
    _emit(out, a.format, payload, text, rows, ["q", "dim"])


def cmd_counts(a, out):
    c = _counts(a.m, a.prime)
    payload = {"m": a.m, "ell": a.prime, "counts": c.to_dict()}
    if c.ambiguous:
        text = f"m={a.m} ell={a.prime}: ambiguous\n" + "\n".join(
            "  " + " ".join(f"{k}={v}" for k, v in alt.to_dict().items()) for alt in c.ambiguity)
        rows = [dict(alt.to_dict(), alternative=i) for i, alt in enumerate(c.ambiguity)]
    else:
        text = f"m={a.m} ell={a.prime}: " + " ".join(f"{k}={v}" for k, v in c.to_dict().items())
        rows = [c.to_dict()]
    fields = list(rows[0])
    _emit(out, a.format, payload, text, rows, fields)


def cmd_graph(a, out):
    if a.prime != 3:
        raise UsageError("bianchi-graph is defined for --prime 3 only")
    c = _counts(a.m, 3)
    _need_unambiguous(c)
    g = bianchi.conjugacy_classes_graph3(c)
    kinds = classify_components(g)
    comps = {str(k): v for k, v in sorted(kinds.items(), key=lambda kv: str(kv[0]))}
    payload = {"m": a.m, "ell": 3, "graph": g.to_dict(), "components": comps}
    text = f"m={a.m} ell=3: " + (", ".join(f"{v} x {k}" for k, v in comps.items()) or "empty graph")
    _emit(out, a.format, payload, text)


def cmd_poincare(a, out):
    c = _counts(a.m, a.prime)
    _need_unambiguous(c)
    f = bianchi.poincare_series(c, a.prime)
    coeffs = [int(x) for x in expand_series(f, a.qmax)]
    expr = bianchi.decompose_expression(f, a.prime)
    payload = {"m": a.m, "ell": a.prime, "counts": c.to_dict(), "series": f.to_dict(),
               "coeffs": coeffs, "expression": {k: str(v) for k, v in expr.items()}}
    text = (f"m={a.m} ell={a.prime}: P(t) = {bianchi.format_expression(expr)}\n"
            f"dims for q=3..{a.qmax}: {' '.join(map(str, coeffs))}")
    rows = [{"q": q, "dim": d} for q, d in enumerate(coeffs, start=3)]
    _emit(out, a.format, payload, text, rows, ["q", "dim"])


def cmd_ring(a, out):
    c = _counts(a.m, a.prime)
    comps = None
    if a.components is not None:
        try:
            comps = bianchi.parse_components(a.components)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if a.prime == 3:
        _need_unambiguous(c)
    try:
        summands = bianchi.cohomology_ring(c, a.prime, comps)
    except bianchi.MissingComponents as exc:
        raise UsageError(f"{exc}; pass --components, e.g. Circle*2,Edge") from None
    payload = {"m": a.m, "ell": a.prime,
               "summands": [{"ring": s.descriptor, "multiplicity": s.multiplicity} for s in summands]}
    text = f"m={a.m} ell={a.prime}:\n" + "\n".join(
        f"  ({s.descriptor})^{s.multiplicity}" for s in summands)
    _emit(out, a.format, payload, text)


def cmd_table(a, out):
    try:
        rep = bianchi.verify_against_paper_tables(a.prime, a.dataset)
    except (bianchi.DatasetMissing, bianchi.InvalidDataset) as exc:
        raise UsageError(str(exc)) from None
    rows = [{"m": r.m, "expected": r.expected, "got": r.got, "verdict": r.verdict} for r in rep.rows]
    lines = []
    if a.check:
        lines += [f"MISMATCH m={r.m}: expected {r.expected}, got {r.got}"
                  for r in rep.rows if r.verdict == "mismatch"]
    else:
        lines += [f"{r.m:>5}  {r.verdict:<8} {r.expected}" + (f"  (got {r.got})" if r.verdict == "mismatch" else "")
                  for r in rep.rows]
    lines.append(rep.summary())
    payload = {"ell": a.prime, "rows": rows, "summary": {
        "matched": rep.count("match"), "skipped": rep.count("skip"), "mismatched": rep.count("mismatch")}}
    _emit(out, a.format, payload, "\n".join(lines), rows, ["m", "expected", "got", "verdict"])
    return 0 if rep.ok else 1


def cmd_asymptotics(a, out):
    if a.m_max > 2003:
        raise UsageError("--m-max is limited to 2003")
    rows = bianchi.asymptotics_dicts(bianchi.asymptotics_rows(a.m_max))
    fields = bianchi.ASYMPTOTICS_FIELDS
    text = "\n".join(" ".join(f"{r[k]:.6g}" if isinstance(r[k], float) else str(r[k]) for k in fields)
                     for r in rows)
    _emit(out, a.format, rows, " ".join(fields) + "\n" + text, rows, fields)


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tatecoh", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=["text", "json", "csv"], default="text")
        sp.set_defaults(func=func)
        return sp

    sp = add("coxeter-ct", cmd_coxeter_ct, "homology of a Coxeter tetrahedral group")
    sp.add_argument("--id", type=int, action="append", help="CT id (repeatable; default all 32)")
    sp.add_argument("--prime", type=int, default=3)

    sp = add("coxeter-triangle", cmd_coxeter_triangle, "homology of a Coxeter triangle group")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("r", type=int)
    sp.add_argument("--prime", type=int, default=3)
    sp.add_argument("--qmax", type=int, default=12)

    def bianchi_args(sp, need_m=True):
        if need_m:
            sp.add_argument("-m", type=int, required=True)
        sp.add_argument("--prime", type=int, choices=[2, 3], default=3)

    bianchi_args(add("bianchi-counts", cmd_counts, "Kraemer conjugacy-class counts"))
    bianchi_args(add("bianchi-graph", cmd_graph, "3-conjugacy classes graph"))
    sp = add("bianchi-poincare", cmd_poincare, "Poincare series above the vcd")
    bianchi_args(sp)
    sp.add_argument("--qmax", type=int, default=20)
    sp = add("bianchi-ring", cmd_ring, "cohomology ring summands above the vcd")
    bianchi_args(sp)
    sp.add_argument("--components", help="component multiset for ell=2, e.g. Circle*2,Edge")
    sp = add("bianchi-table", cmd_table, "compare against the bundled tables")
    bianchi_args(sp, need_m=False)
    sp.add_argument("--check", action="store_true", help="print only mismatches and the summary")
    sp.add_argument("--dataset", help="alternative table file")
    sp = add("bianchi-asymptotics", cmd_asymptotics, "ratio 3^lambda6'/covolume, as CSV")
    sp.add_argument("--m-max", type=int, default=2003)
    sp.set_defaults(format="csv")
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    buf = io.StringIO()  # nothing is printed unless the command completes
    try:
        status = args.func(args, buf) or 0
    except UsageError as exc:
        err.write(f"tatecoh {args.command}: error: {exc}\n")
        return 2
    out.write(buf.getvalue())
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
