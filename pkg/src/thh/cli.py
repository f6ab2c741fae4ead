"""Command-line front end: group queries, verification suites, chart emission.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import charts, closed_forms as cf, thc, verify
from .padic import PrimeContext, nu

SUITES = ("section4", "matching", "cofiber", "dueling", "duality",
          "ko", "units", "all")

_ELL_COEFFS = ("ell", "HZ", "k1", "HFp")
_KO_COEFFS = ("ko", "ku")


class UsageError(Exception):
    pass


def default_window(p: int) -> int:
    return 64 if p == 2 else 2 * p**4 + 2 * p**2


# -- group queries ---------------------------------------------------------------


def _module_for(p: int, target: str, coefficients: str, window: int,
                reduced: bool):
    ctx = PrimeContext(p)
    if target == "ko":
        if p != 2:
            raise UsageError("target ko requires --prime 2")
        if coefficients == "ko":
            return cf.thh_ko(window, reduced=reduced)
        if coefficients == "ku":
            return cf.thh_ko_ku(window, reduced=reduced)
        raise UsageError(f"target ko takes coefficients in {_KO_COEFFS}")
    if coefficients == "ell":
        return cf.thh_ell(ctx, window, reduced=reduced)
    if coefficients == "HZ":
        return cf.thh_ell_HZ(ctx, window, reduced=reduced)
    if coefficients == "k1":
        return cf.thh_ell_k1(ctx, window, reduced=reduced)
    if coefficients == "HFp":
        return None  # handled as plain dimensions
    raise UsageError(f"target ell takes coefficients in {_ELL_COEFFS}")


def group_records(p: int, target: str, coefficients: str, degrees,
                  reduced: bool) -> list[dict]:
    window = max(degrees)
    mod = _module_for(p, target, coefficients, window, reduced)
    records = []
    for d in degrees:
        if mod is None:
            dim = sum(1 for (dd, *_rest) in cf.hfp_monomials(p, window)
                      if dd == d)
            if reduced and d == 0:
                dim -= 1
            rank, torsion = 0, [p] * dim
            gens = [{"label": f"x{i}", "order": p} for i in range(dim)]
        else:
            rank, torsion = mod.group_at(d)
            torsion = sorted(torsion)
            sq = mod.subquot_at(d)
            labels = mod.summand_labels(d)
            gens = [{"label": lbl, "order": o}
                    for lbl, (o, _) in zip(labels, sq.summands)]
        records.append({
            "prime": p,
            "target": target,
            "coefficients": coefficients,
            "degree": d,
            "free_rank": rank,
            "torsion": torsion,
            "generators": gens,
        })
    return records


def _format_group(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        payload = records[0] if len(records) == 1 else records
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["prime", "target", "coefficients", "degree",
                    "free_rank", "torsion", "generators"])
        for r in records:
            w.writerow([r["prime"], r["target"], r["coefficients"],
                        r["degree"], r["free_rank"],
                        " ".join(map(str, r["torsion"])),
                        " ".join(g["label"] for g in r["generators"])])
        return buf.getvalue()
    lines = [f"{'deg':>5}  {'free':>4}  {'torsion':<16} generators"]
    for r in records:
        tors = ",".join(map(str, r["torsion"])) or "-"
        gens = ", ".join(f"{g['label']}" + ("" if g["order"] == 0
                                            else f" (order {g['order']})")
                         for g in r["generators"]) or "-"
        lines.append(f"{r['degree']:>5}  {r['free_rank']:>4}  {tors:<16} {gens}")
    return "\n".join(lines) + "\n"


# -- verification suites ---------------------------------------------------------


def run_suite(suite: str, p: int, window: int, level: int) -> list[tuple]:
    """Returns (check name, degree-or-index, ok, detail) rows."""
    ctx = PrimeContext(p)
    rows = []

    def take(checks, tag):
        for c in checks:
            rows.append((f"{tag}:{c.name}", c.degree, c.ok, (c.lhs, c.rhs)))

    if suite in ("section4", "all"):
        for c in verify.lemma_suite_section4(ctx, level):
            rows.append((f"section4:{c.name}", c.degree, c.ok,
                         (c.expected, c.found)))
    if suite in ("matching", "all"):
        rep = verify.matching_B1(ctx, window)
        rows.append(("matching:pairing", window, rep.ok,
                     (len(rep.pairs), len(rep.leftovers))))
    if suite in ("cofiber", "all"):
        take(verify.cofiber_checks(ctx, window), "cofiber")
        if p == 2:
            take(verify.cofiber_checks_ko(window), "cofiber")
    if suite in ("dueling", "all"):
        take(verify.dueling_comparison(ctx, window), "dueling")
    if suite in ("duality", "all"):
        take(verify.duality_check(ctx, level, window), "duality")
    if suite in ("ko", "all"):
        if p != 2:
            if suite == "ko":
                raise UsageError("the ko suite requires --prime 2")
        else:
            take(verify.cofiber_checks_ko(window), "ko")
            take(verify.ko_ku_comparison(min(window, 64)), "ko")
            take(verify.eta_square_annihilates(window), "ko")
            from . import ss
            base = ss.ko_base_setup(min(window, 40)).run()
            for n in range(min(window, 40) + 1):
                rows.append(("ko:base-homotopy", n,
                             base.group_at(n) == cf.ko_homotopy(n), ()))
    if suite in ("units", "all"):
        for c in thc.unit_check_suite(ctx, window):
            rows.append((f"units:{c.name}", c.params, c.ok,
                         (c.expected, c.actual)))
        extra = thc.naturality_closure(ctx, window)
        rows.append(("units:naturality-closure", window, not extra,
                     (len(extra),)))
    return rows


def _format_verify(rows: list[tuple], fmt: str) -> str:
    if fmt == "json":
        payload = [{"check": n, "index": d, "ok": ok, "detail": list(map(str, det))}
                   for n, d, ok, det in rows]
        return json.dumps(payload, indent=2) + "\n"
    failures = [r for r in rows if not r[2]]
    lines = [f"{len(rows)} checks, {len(failures)} failures"]
    for n, d, ok, det in failures:
        lines.append(f"FAIL {n} @ {d}: {det}")
    return "\n".join(lines) + "\n"


# -- argument parsing ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="thh")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--prime", type=int, default=2)
        sp.add_argument("--target", choices=("ell", "ko"), default="ell")
        sp.add_argument("--coefficients", default=None)
        sp.add_argument("--degree", type=int, default=None)
        sp.add_argument("--max-degree", type=int, default=None)
        sp.add_argument("--reduced", action="store_true")
        sp.add_argument("--format", default=None)
        sp.add_argument("--out", default=None)
        sp.add_argument("--paper-style", action="store_true")

    g = sub.add_parser("group")
    common(g)

    v = sub.add_parser("verify")
    common(v)
    v.add_argument("--suite", choices=SUITES, required=True)
    v.add_argument("--level", type=int, default=3)

    c = sub.add_parser("chart")
    c.add_argument("kind", choices=charts.CHART_KINDS)
    common(c)
    return ap


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    p = args.prime
    try:
        if p < 2 or any(p % q == 0 for q in range(2, p) if q * q <= p):
            raise UsageError(f"--prime must be a prime, got {p}")
        if args.command == "group":
            coeffs = args.coefficients or args.target
            if args.degree is not None:
                degrees = [args.degree]
            else:
                degrees = list(range((args.max_degree
                                      if args.max_degree is not None
                                      else default_window(p)) + 1))
            recs = group_records(p, args.target, coeffs, degrees, args.reduced)
            _emit(_format_group(recs, args.format or "table"), args.out)
            return 0
        if args.command == "verify":
            window = (args.max_degree if args.max_degree is not None
                      else default_window(p))
            rows = run_suite(args.suite, p, window, args.level)
            _emit(_format_verify(rows, args.format or "table"), args.out)
            return 0 if all(r[2] for r in rows) else 1
        # chart
        lo = args.degree if args.degree is not None else 0
        hi = (args.max_degree if args.max_degree is not None
              else default_window(p))
        spec = charts.ChartSpec(args.kind, p, lo, hi, args.paper_style)
        if (args.format or "svg") == "json":
            dots, lines = charts.chart_data(spec)
            _emit(json.dumps({"dots": sorted(dots),
                              "lines": sorted(lines)}) + "\n", args.out)
        else:
            _emit(charts.render_svg(spec), args.out)
        return 0
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
