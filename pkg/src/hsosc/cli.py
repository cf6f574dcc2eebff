"""Command-line front end: curve sweeps, Z selection tables, oracle energies,
spreads and the acceptance report, as CSV or JSON.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 acceptance failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import acceptance, selection, terms
from .model import DomainError, OscillatorModel
from .oracle import OracleConfig, OracleNotConverged, exact_energies

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_ACCEPTANCE = 0, 1, 2, 3

TAGS = ("k0", "k1", "k2", "k3", "h0", "h1")
CURVE_FIELDS = ("n", "g", "z", "tag", "value", "exact")
SELECT_FIELDS = ("method", "n", "order", "z_chosen", "energy", "exact", "ratio", "rule",
                 "closed_form_z", "spread", "candidates", "status")
EXACT_FIELDS = ("n", "energy", "error_estimate", "basis_used", "basis_omega", "converged")
SPREAD_FIELDS = ("n", "g", "spread_k3", "spread_h1", "ratio")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(v):
    """12 significant digits, lowercase scientific; integers and strings pass through."""
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.11e}"
    return str(v)


def parse_levels(text: str) -> list[int]:
    """'3', '0,2,5', '0..5' or mixtures like '0..2,7'."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = (int(s) for s in part.split(".."))
                if hi < lo:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad level list {text!r}") from None
    if not out or min(out) < 0:
        raise UsageError(f"levels must be non-negative integers, got {text!r}")
    return out


def parse_range(text: str):
    """'min:max:steps' -> (min, max, steps)."""
    try:
        lo, hi, steps = text.split(":")
        lo, hi, steps = float(lo), float(hi), int(steps)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected min:max:steps") from None
    if not (0 < lo < hi) or steps < 2:
        raise UsageError(f"need 0 < min < max and steps >= 2, got {text!r}")
    return lo, hi, steps


def parse_tags(text: str) -> list[str]:
    tags = [t.strip() for t in text.split(",") if t.strip()]
    bad = [t for t in tags if t not in TAGS]
    if bad or not tags:
        raise UsageError(f"unknown tags {bad}; choose from {','.join(TAGS)}")
    return tags


def _model(g: float) -> OscillatorModel:
    try:
        return OscillatorModel(g)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def write_records(records, fields, fmt_name, stream):
    rows = [{k: fmt(r.get(k)) for k in fields} for r in records]
    if fmt_name == "json":
        for row in rows:
            for k, v in row.items():
                if isinstance(v, str) and v and k not in ("tag", "method", "rule", "candidates", "status", "converged"):
                    try:
                        row[k] = float(v)
                    except ValueError:
                        pass
                elif v == "":
                    row[k] = None
        json.dump(rows, stream, indent=1)
        stream.write("\n")
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\r\n")
        writer.writeheader()
        writer.writerows(rows)
        stream.write(buf.getvalue())


def _curve(tag, n, zs, model):
    if tag == "h1":
        return terms.h_expect_1(n, zs, model)
    if tag == "h0":
        return terms.h_expect_0(n, zs, model)
    return terms.partial_sum(n, zs, model, int(tag[1]))


def cmd_zsweep(args, out):
    levels = parse_levels(args.n)
    tags = parse_tags(args.tags)
    model = _model(args.g)
    fixed = parse_range(args.z) if args.z else None
    exact = None
    if args.exact:
        exact = exact_energies(model, max(levels), OracleConfig(rel_tol=args.tol)).energies
    records = []
    for n in levels:
        lo, hi, steps = fixed or (0.02, 10.0 * (n + 1), 400)
        zs = np.linspace(lo, hi, steps)
        for tag in tags:
            for z, v in zip(zs, _curve(tag, n, zs, model)):
                records.append({"n": n, "g": args.g, "z": z, "tag": tag, "value": v,
                                "exact": exact[n] if exact else None})
    write_records(records, CURVE_FIELDS, args.format, out)
    return EXIT_OK


def _candidates_text(cands):
    parts = []
    for c in cands:
        kind = getattr(c, "kind", "root")
        parts.append(f"{kind}@{c.z:.11e}={c.value:.11e}")
    return ";".join(parts)


def cmd_select(args, out):
    levels = parse_levels(args.n)
    model = _model(args.g)
    method = args.method
    if method in ("fac", "pms"):
        orders = parse_levels(args.orders)
        if any(k not in (1, 2, 3) for k in orders):
            raise UsageError("orders must be within 1..3 for fac/pms")
    else:
        orders = [0 if method == "var0" else 1]
    exact = exact_energies(model, max(levels), OracleConfig(rel_tol=args.tol)).energies
    records, failed = [], False
    for n in levels:
        for k in orders:
            try:
                if method == "fac":
                    res = selection.fac_select(n, model, k)
                elif method == "pms":
                    res = selection.pms_select(n, model, k)
                else:
                    res = selection.variational_select(n, model, k)
            except selection.SelectionError as exc:
                failed = True
                records.append({"method": method.upper(), "n": n, "order": k, "exact": exact[n],
                                "status": f"error: {exc}"})
                continue
            records.append({
                "method": res.method.value, "n": n, "order": k, "z_chosen": res.z_chosen,
                "energy": res.energy, "exact": exact[n], "ratio": res.energy / exact[n],
                "rule": res.rule_applied.value, "closed_form_z": res.closed_form_z,
                "spread": res.spread, "candidates": _candidates_text(res.candidates),
                "status": "ok",
            })
    write_records(records, SELECT_FIELDS, args.format, out)
    return EXIT_NUMERIC if failed and args.strict else EXIT_OK


def cmd_exact(args, out):
    if args.levels < 1:
        raise UsageError("--levels must be >= 1")
    model = _model(args.g)
    cfg = OracleConfig(basis_omega=args.omega, rel_tol=args.tol)
    res = exact_energies(model, args.levels - 1, cfg)
    records = [{"n": n, "energy": e, "error_estimate": d, "basis_used": res.basis_used,
                "basis_omega": res.basis_omega, "converged": res.converged}
               for n, (e, d) in enumerate(zip(res.energies, res.per_level_error_estimate))]
    write_records(records, EXACT_FIELDS, args.format, out)
    return EXIT_OK


def cmd_spread(args, out):
    levels = parse_levels(args.n)
    model = _model(args.g)
    records = []
    for n in levels:
        k3 = selection.spread(n, model, "k3-partial-sum")
        h1 = selection.spread(n, model, "h-expect-1")
        records.append({"n": n, "g": args.g, "spread_k3": k3, "spread_h1": h1, "ratio": h1 / k3})
    write_records(records, SPREAD_FIELDS, args.format, out)
    return EXIT_OK


def cmd_report(args, out):
    results = acceptance.run_all()
    for r in results:
        out.write(r.line() + "\n")
    passed = sum(r.passed for r in results)
    out.write(f"{passed}/{len(results)} criteria passed\n")
    return EXIT_OK if passed == len(results) else EXIT_ACCEPTANCE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hsosc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, levels=True):
        sp.add_argument("--g", type=float, default=0.0, help="(m/M)^2; 0 is the pure quartic (default 0)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv", help="output format (default csv)")
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")
        sp.add_argument("--tol", type=float, default=1e-10, help="oracle relative tolerance (default 1e-10)")
        if levels:
            sp.add_argument("--n", default="0..5", help="levels: '0', '0,2', '0..5' (default 0..5)")

    sp = sub.add_parser("zsweep", help="partial sums and <H> over a Z grid")
    common(sp)
    sp.add_argument("--z", help="min:max:steps uniform grid (default 0.02:10(n+1):400 per level)")
    sp.add_argument("--tags", default="k0,k1,k2,k3", help=f"curves from {','.join(TAGS)} (default k0,k1,k2,k3)")
    sp.add_argument("--exact", action="store_true", help="add the oracle energy as a column")
    sp.set_defaults(func=cmd_zsweep)

    sp = sub.add_parser("select", help="choose Z by FAC, PMS or the variational rule")
    common(sp)
    sp.add_argument("--method", choices=("fac", "pms", "var0", "var1"), required=True)
    sp.add_argument("--orders", default="1..3", help="orders for fac/pms (default 1..3)")
    sp.add_argument("--strict", action="store_true", help="exit 2 if any selection fails")
    sp.set_defaults(func=cmd_select)

    sp = sub.add_parser("exact", help="oracle energies by diagonalization")
    common(sp, levels=False)
    sp.add_argument("--levels", type=int, default=6, help="number of levels (default 6)")
    sp.add_argument("--omega", type=float, default=None, help="basis frequency in units of M (default heuristic)")
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("spread", help="min-to-min spreads of the k=3 sum and <H>^(1)")
    common(sp)
    sp.set_defaults(func=cmd_spread)

    sp = sub.add_parser("report", help="run the acceptance criteria")
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out_path = getattr(args, "output", None)
    out = open(out_path, "w", newline="") if out_path else sys.stdout
    try:
        return args.func(args, out)
    except (UsageError, DomainError) as exc:
        print(f"hsosc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OracleNotConverged, selection.SelectionError) as exc:
        print(f"hsosc: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    finally:
        if out_path:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
