"""Command-line front end: deterministic text and JSON reports.

Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.
Reports contain no timestamps; repeated runs with the same configuration
are byte-identical.  Header lines start with ``#`` and carry run metadata;
golden comparisons should ignore them.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import classifying, fincat, finset, finvect, groups
from .fincat import CategoryError, FiniteCategory
from .limits import DEFAULT_LIMITS, Limits

USAGE_ERROR = 2
MISMATCH = 1

BUILTINS_HELP = ("ordinal:<m>, group:S<k>, group:C<k>, iso-interval, "
                 "walking-arrow, delta:<M>, finset:<N>, vect:<dim>:<q>")

#: Desk-scale builtin instances exercised by the structural checks
#: (Segal bijections, completeness, property suites).
ACCEPTANCE_SUITE = (
    "ordinal:0", "ordinal:1", "ordinal:2", "ordinal:3",
    "walking-arrow", "iso-interval",
    "group:S2", "group:S3", "group:C4",
    "delta:2", "finset:3", "vect:2:2", "vect:1:3",
)


def builtin_category(spec: str) -> FiniteCategory:
    """Construct one of the named builtin categories."""
    parts = spec.split(":")
    kind = parts[0]
    try:
        if kind == "ordinal" and len(parts) == 2:
            return fincat.ordinal(int(parts[1]))
        if kind == "walking-arrow" and len(parts) == 1:
            return fincat.walking_arrow()
        if kind == "iso-interval" and len(parts) == 1:
            return fincat.iso_interval()
        if kind == "group" and len(parts) == 2:
            g = parts[1]
            if g.startswith("S"):
                table = groups.materialize(groups.Symmetric(int(g[1:])))
            elif g.startswith("C"):
                table = groups.cyclic_table(int(g[1:]))
            else:
                raise ValueError(g)
            return fincat.one_object_group(table, name=f"group:{g}")
        if kind == "delta" and len(parts) == 2:
            return fincat.truncated_delta(int(parts[1]))
        if kind == "finset" and len(parts) == 2:
            return finset.finset_skeleton(int(parts[1]))
        if kind == "vect" and len(parts) == 3:
            return finvect.vect_skeleton(int(parts[1]), int(parts[2]))
    except (ValueError, AssertionError) as exc:
        raise CategoryError(f"bad builtin {spec!r}: {exc}") from exc
    raise CategoryError(f"unknown builtin {spec!r} (expected one of: {BUILTINS_HELP})")


def _load_category(args) -> FiniteCategory:
    if getattr(args, "builtin", None) and getattr(args, "file", None):
        raise CategoryError("give exactly one of --builtin or --file")
    if getattr(args, "builtin", None):
        return builtin_category(args.builtin)
    if getattr(args, "file", None):
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
        return fincat.from_catdef(text, name=os.path.basename(args.file))
    raise CategoryError("give exactly one of --builtin or --file")


def _resolve_limits(args) -> Limits:
    limits = DEFAULT_LIMITS
    env = os.environ.get("CDIAG_LIMITS", "")
    if env:
        overrides = {}
        for pair in env.split(","):
            pair = pair.strip()
            if not pair:
                continue
            if "=" not in pair:
                raise CategoryError(f"bad CDIAG_LIMITS entry {pair!r}")
            k, v = pair.split("=", 1)
            if k not in ("chain_limit", "scan_limit", "table_limit", "iso_limit"):
                raise CategoryError(f"unknown limit {k!r} in CDIAG_LIMITS")
            overrides[k] = int(v)
        limits = limits.with_overrides(**overrides)
    return limits.with_overrides(
        chain_limit=getattr(args, "chain_limit", None),
        scan_limit=getattr(args, "scan_limit", None),
        table_limit=getattr(args, "table_limit", None),
        iso_limit=getattr(args, "iso_limit", None),
    )


# ---------------------------------------------------------------------------
# Report assembly


def _component_row(c: classifying.Component) -> dict:
    return {
        "level": c.level,
        "cell": list(c.cell),
        "representative": list(c.representative),
        "orbit_size": c.orbit_size,
        "group_expr": c.group_expr,
        "group_order": c.group_order,
        "policy": c.policy,
    }


def _render_text(report: dict) -> str:
    lines = [f"# cdiag {report['command']}"]
    cfg = " ".join(f"{k}={v}" for k, v in sorted(report["config"].items())
                   if k != "limits")
    lim = report["config"].get("limits", {})
    lims = ",".join(f"{k}={v}" for k, v in sorted(lim.items()))
    lines.append(f"# config: {cfg} limits[{lims}]")
    for row in report.get("components", []):
        cell = ",".join(row["cell"])
        rep = ",".join(row["representative"])
        expr = row["group_expr"] if row["group_expr"] is not None else "?"
        lines.append(
            f"component level={row['level']} cell=({cell}) rep=({rep}) "
            f"size={row['orbit_size']} order={row['group_order']} "
            f"group={expr} policy={row['policy']}")
    for chk in report.get("checks", []):
        lines.append(f"check {chk['name']}: {chk['status']} ({chk['details']})")
    return "\n".join(lines) + "\n"


def _emit(report: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = _render_text(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check(name, ok, details):
    return {"name": name, "status": "pass" if ok else "fail", "details": details}


# ---------------------------------------------------------------------------
# Command handlers; each returns (exit code, report dict)


def _cmd_decompose(args, limits):
    cat = _load_category(args)
    dec = classifying.level_decomposition(cat, args.level, limits)
    ok = all(c.orbit is None or c.orbit.check_orbit_stabilizer()
             for c in dec.components)
    report = {
        "components": [_component_row(c) for c in dec.components],
        "checks": [
            _check("orbit-stabilizer", ok, "identity verified on every component"),
            _check("size-sum", True,
                   f"{sum(c.orbit_size for c in dec.components)} chains at level {args.level}"),
        ],
    }
    return (0 if ok else MISMATCH), report


def _cmd_segal(args, limits):
    cat = _load_category(args)
    rep = classifying.segal_check(cat, args.level, limits)
    details = (f"{rep.chain_count} = {rep.fiber_product_count}, bijection "
               + ("verified" if rep.bijection_ok else "FAILED"))
    report = {"components": [],
              "checks": [_check(f"segal-{args.level}", rep.ok, details)]}
    return (0 if rep.ok else MISMATCH), report


def _cmd_complete(args, limits):
    cat = _load_category(args)
    rep = classifying.completeness_check(cat, limits)
    details = (f"classes {rep.class_counts[0]} vs {rep.class_counts[1]}; "
               f"aut orders {list(rep.aut_order_multisets[0])} vs "
               f"{list(rep.aut_order_multisets[1])}; policy: {rep.policy}")
    report = {"components": [],
              "checks": [_check("completeness", rep.verdict, details)]}
    return (0 if rep.verdict else MISMATCH), report


def _cmd_discrete(args, limits):
    cat = _load_category(args)
    rep = classifying.is_discrete_classifying(cat, args.truncation, limits)
    rows = "; ".join(f"level {n}: {k} components, flat={flat}"
                     for n, k, flat in rep.levels)
    report = {"components": [],
              "checks": [
                  _check("discrete", rep.consistent,
                         f"verdict={rep.discrete}; {rows}")]}
    return (0 if rep.consistent else MISMATCH), report


def _cmd_nerve(args, limits):
    cat = _load_category(args)
    t = classifying.nerve_truncation(cat, args.truncation, limits)
    ok = t.check_simplicial_identities()
    report = {"components": [],
              "checks": [
                  _check("simplicial-identities", ok,
                         f"level sizes {t.level_sizes}")]}
    return (0 if ok else MISMATCH), report


def _cmd_finset(args, limits):
    rows = []
    for c in finset.closed_form_level0(args.max):
        rows.append(_component_row(c))
    for n in range(args.max + 1):
        for m in range(args.max + 1):
            for c in finset.level1_closed_form(n, m, args.variant):
                row = _component_row(c)
                row["representative"] = [c.extra["tree"] + " " + c.representative[0]]
                rows.append(row)
    checks = []
    code = 0
    if args.oracle:
        diff = finset.oracle_diff_finset(args.max, args.variant, limits)
        checks.append(_check("oracle-diff", diff.ok, diff.summary()))
        code = 0 if diff.ok else MISMATCH
    report = {"components": rows, "checks": checks}
    return code, report


def _cmd_finvect(args, limits):
    rows = [_component_row(c) for c in finvect.vect_level0(args.max_dim, args.q)]
    for n in range(args.max_dim + 1):
        for m in range(args.max_dim + 1):
            cell = finvect.orbits_by_rank(n, m, args.q, limits)
            for cls in cell.classes:
                rows.append({
                    "level": 1,
                    "cell": [str(n), str(m)],
                    "representative": [f"rank={cls.rank}"],
                    "orbit_size": cls.class_size,
                    "group_expr": cls.expr_text,
                    "group_order": cls.stabilizer_order,
                    "policy": cls.policy,
                })
    for case in finvect.paper_stabilizers_dim_le2(args.q):
        rows.append({
            "level": 1,
            "cell": [str(case.n), str(case.m)],
            "representative": [case.case],
            "orbit_size": 0,
            "group_expr": case.expr_text,
            "group_order": case.order,
            "policy": "closed-form",
        })
    checks = []
    code = 0
    if args.oracle:
        diff = finvect.oracle_diff_vect(args.max_dim, args.q, limits)
        checks.append(_check("oracle-diff", diff.ok, diff.summary()))
        code = 0 if diff.ok else MISMATCH
    report = {"components": rows, "checks": checks}
    return code, report


def _cmd_oracle_diff(args, limits):
    checks = []
    if args.finset_max is None and args.vect_dim is None:
        raise CategoryError("give --finset-max and/or --vect-dim")
    if args.finset_max is not None:
        diff = finset.oracle_diff_finset(args.finset_max, args.variant, limits)
        checks.append(_check("finset-oracle-diff", diff.ok, diff.summary()))
    if args.vect_dim is not None:
        diff = finvect.oracle_diff_vect(args.vect_dim, args.q, limits)
        checks.append(_check("vect-oracle-diff", diff.ok, diff.summary()))
    ok = all(c["status"] == "pass" for c in checks)
    return (0 if ok else MISMATCH), {"components": [], "checks": checks}


# ---------------------------------------------------------------------------
# Argument parsing


def _add_common(p, category=True):
    if category:
        p.add_argument("--builtin", help=f"builtin category: {BUILTINS_HELP}")
        p.add_argument("--file", help="CATDEF input file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", help="write the report to a file instead of stdout")
    p.add_argument("--chain-limit", type=int, dest="chain_limit")
    p.add_argument("--scan-limit", type=int, dest="scan_limit")
    p.add_argument("--table-limit", type=int, dest="table_limit")
    p.add_argument("--iso-limit", type=int, dest="iso_limit")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cdiag",
        description="Decompose levels of the classifying diagram of a finite "
                    "category into components with explicit stabilizer groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="one level as components with stabilizers")
    _add_common(p)
    p.add_argument("--level", type=int, default=1)
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser("segal", help="chain count vs fiber-product count with bijection")
    _add_common(p)
    p.add_argument("--level", type=int, default=2)
    p.set_defaults(handler=_cmd_segal)

    p = sub.add_parser("complete", help="invariants of iso(C) vs the invertible-square groupoid")
    _add_common(p)
    p.set_defaults(handler=_cmd_complete)

    p = sub.add_parser("discrete", help="is every isomorphism an identity, level by level")
    _add_common(p)
    p.add_argument("--truncation", type=int, default=2)
    p.set_defaults(handler=_cmd_discrete)

    p = sub.add_parser("nerve", help="truncated nerve of a groupoid with simplicial identities")
    _add_common(p)
    p.add_argument("--truncation", type=int, default=3)
    p.set_defaults(handler=_cmd_nerve)

    p = sub.add_parser("finset", help="wreath-product closed form for finite sets")
    _add_common(p, category=False)
    p.add_argument("--max", type=int, default=4)
    p.add_argument("--variant", choices=("all", "inj", "surj"), default="all")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against the brute-force engine")
    p.set_defaults(handler=_cmd_finset)

    p = sub.add_parser("finvect", help="rank-orbit decomposition over a prime field")
    _add_common(p, category=False)
    p.add_argument("--max-dim", type=int, default=2, dest="max_dim")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(handler=_cmd_finvect)

    p = sub.add_parser("oracle-diff", help="closed forms vs the brute-force engine")
    _add_common(p, category=False)
    p.add_argument("--finset-max", type=int, dest="finset_max")
    p.add_argument("--variant", choices=("all", "inj", "surj"), default="all")
    p.add_argument("--vect-dim", type=int, dest="vect_dim")
    p.add_argument("--q", type=int, default=2)
    p.set_defaults(handler=_cmd_oracle_diff)

    return ap


def _config_dict(args, limits: Limits) -> dict:
    skip = {"handler", "command", "format", "output",
            "chain_limit", "scan_limit", "table_limit", "iso_limit"}
    cfg = {k: v for k, v in vars(args).items() if k not in skip and v is not None}
    cfg["limits"] = {
        "chain_limit": limits.chain_limit,
        "scan_limit": limits.scan_limit,
        "table_limit": limits.table_limit,
        "iso_limit": limits.iso_limit,
    }
    return cfg


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        limits = _resolve_limits(args)
        code, body = args.handler(args, limits)
    except (CategoryError, groups.GroupError, OSError, ValueError) as exc:
        sys.stderr.write(f"cdiag: error: {exc}\n")
        return USAGE_ERROR
    report = {"command": args.command, "config": _config_dict(args, limits)}
    report.update(body)
    _emit(report, args)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))
