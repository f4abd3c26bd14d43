"""Command-line front end: ``fusion-obstruct <command> ...``.

Exit status is 0 when every check holds, 1 on a mathematical mismatch and 2 on
bad usage or unreadable input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .abelian import ModuleError
from .groups import CapExceeded, GroupError

OK, MISMATCH, USAGE = 0, 1, 2
VOLATILE_KEYS = {"seconds"}
FLAG_KEYS = {"ok", "passed", "holds"}


class UsageError(Exception):
    pass


def _plain(obj, keep_times: bool = False):
    if isinstance(obj, dict):
        return {str(k): _plain(v, keep_times) for k, v in obj.items() if keep_times or k not in VOLATILE_KEYS}
    if isinstance(obj, (list, tuple)):
        return [_plain(v, keep_times) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    return str(obj)


def mismatches(obj, path: str = "") -> list[str]:
    """Paths of check flags that came out false."""
    out = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            p = f"{path}.{k}" if path else str(k)
            if v is False and (k in FLAG_KEYS or k.endswith("_ok") or k.startswith("matches")):
                out.append(p)
            else:
                out.extend(mismatches(v, p))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            out.extend(mismatches(v, f"{path}[{i}]"))
    return out


# -- markdown rendering ----------------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
        return ", ".join(map(str, v))
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=False)
    return "" if v is None else str(v)


def md_table(rows: list[dict], columns: list[str] | None = None) -> str:
    cols = columns or list(dict.fromkeys(k for r in rows for k in r))
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    lines += ["| " + " | ".join(_cell(r.get(c)) for c in cols) + " |" for r in rows]
    return "\n".join(lines)


def to_markdown(obj, title: str, level: int = 1) -> str:
    parts = [f"{'#' * min(level, 6)} {title}", ""]
    bullets = []
    sections = []
    for k, v in obj.items():
        if isinstance(v, dict) and v:
            sections.append(to_markdown(v, k, level + 1))
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            flat = all(not isinstance(y, dict) and not (isinstance(y, list) and any(isinstance(z, (dict, list)) for z in y))
                       for x in v for y in x.values())
            body = md_table(v) if flat else "\n".join(f"- {_cell(x)}" for x in v)
            sections.append(f"{'#' * min(level + 1, 6)} {k}\n\n{body}\n")
        else:
            bullets.append(f"- {k}: {_cell(v)}")
    if bullets:
        parts += bullets + [""]
    parts += sections
    return "\n".join(parts)


# -- commands ------------------------------------------------------------------------------


def cmd_golay(args) -> tuple[str, dict, bool]:
    from . import golay
    from .obstruction import check_verdict, rplus_set

    if args.action == "build":
        r = golay.build_golay()
        r["sylow_structure"] = {n: golay.sylow_structure(n) for n in (22, 23)}
        return "Golay code", r, r["matches_expected"] and all(h["passed"] for h in r["sylow_structure"].values())
    if args.action == "tables":
        r = golay.commutator_tables()
        return "Hexad commutator tables", r, r["passed"]
    if args.n is None:
        raise UsageError("golay obstruct needs --n (one of 22, 23, dual)")
    sec = golay.GolaySection(22, dual=True) if args.n == "dual" else golay.GolaySection(int(args.n))
    ctx = sec.context
    v = rplus_set(ctx)
    verified = check_verdict(ctx, v)
    r = {"R+ empty": v.empty, "certificate_verified": verified, "certificate": v.certificate(ctx),
         "survivors": _survivor_rows(ctx, v, args.limit)}
    expect_empty = args.n != "dual"
    label = "dual of the n = 22 section" if args.n == "dual" else f"n = {args.n} section"
    return f"R+ for the {label}", r, verified and v.empty == expect_empty


def _survivor_rows(ctx, verdict, limit) -> list[dict]:
    rows = []
    for c in verdict.survivors[:limit]:
        rows.append({"tau": ctx.word(c.tau), "B_order": len(c.subgroup),
                     "B_generators": ", ".join(ctx.word(g) for g in ctx.generators_of(c.subgroup)),
                     "witness_rank": c.witness.log_order if c.witness is not None else None})
    return rows


def cmd_threem22(args) -> tuple[str, dict, bool]:
    from .obstruction import check_verdict, rplus_set
    from .threem22 import ThreeM22Module, build_report, orthogonality_duality

    if args.action == "build":
        mod = ThreeM22Module()
        r = {"b_and_u": orthogonality_duality(), "subspaces": mod.subspace_checks(), "sylow_structure": mod.sylow_structure()}
        ok = r["b_and_u"]["passed"] and r["sylow_structure"]["sylow_order"] == 128
        ok &= all(v for k, v in r["sylow_structure"].items() if k != "sylow_order")
        return "3M22 module", r, ok
    if args.action == "check":
        r = build_report()
        return "3M22 checks", r, r["passed"]
    ctx = ThreeM22Module().context
    v = rplus_set(ctx)
    verified = check_verdict(ctx, v)
    r = {"R+ empty": v.empty, "certificate_verified": verified, "certificate": v.certificate(ctx)}
    return "R+ for the 3M22 module", r, verified and v.empty


def _alperin_table(alp) -> tuple[dict, bool]:
    rows = []
    ok = True
    for name, row in alp.centralizer_table().items():
        rows.append({"H": name, **row})
        ok &= row["centralizer_ok"] and row["commutator_ok"] is not False
    return {"rows": rows}, ok


def cmd_alperin(args) -> tuple[str, dict, bool]:
    from .alperin import AlperinModule, onan_check

    if args.n < 2:
        raise UsageError("--n must be at least 2")
    alp = AlperinModule(args.n)
    if args.theorem:
        if args.n < 3:
            raise UsageError("--theorem needs --n at least 3")
        r = alp.fusion_step()
        return f"Fusion step, n = {args.n}", r, r["passed"]
    if args.onan:
        r = {"sigma": onan_check(args.n), "quotient": alp.onan_quotient()}
        return f"Wreath quotient, n = {args.n}", r, r["sigma"]["passed"] and r["quotient"]["matches_sigma"]
    if args.obstruct:
        r = alp.obstruction()
        ok = r["rplus"] == "nonempty" and r["s2_with_cyclic_s_survives"]
        return f"R+ and R, n = {args.n}", r, ok
    r, ok = _alperin_table(alp)
    wc = alp.weak_closure()
    r["weak_closure"] = wc
    r["relations"] = alp.relations()
    ok &= wc["holds"] and all(r["relations"].values())
    return f"Centralizers and commutators, n = {args.n}", r, ok


def cmd_charbound(args) -> tuple[str, dict, bool]:
    from . import charbound

    try:
        rows = charbound.load_table(args.char_data)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"bad character data file: {exc}") from None
    rep = charbound.table_report(rows)
    ok = rep["passed"]
    r = {"passed": ok,
         "rows": [{k: v for k, v in row.items() if k != "entries"} for row in rep["rows"]],
         "entries": [{"group": row["group"], "p": row["p"], **e} for row in rep["rows"] for e in row["entries"]]}
    if args.oracle:
        mods = [charbound.d10_module(), charbound.s3_module(), charbound.a4_module(), charbound.sl23_module()]
        r["oracle"] = [charbound.oracle_check(m) for m in mods]
        ok &= all(o["sound"] for o in r["oracle"])
    return "Character bounds", r, ok


def cmd_m12(args) -> tuple[str, dict, bool]:
    from .groups import load_permutation_generators, verify_m12

    data = _read_json(args.gens)
    try:
        gens = load_permutation_generators(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad generator file {args.gens}: {exc}") from None
    rep = verify_m12(gens)
    return "M12 embeddings", rep.summary(), rep.passed


def cmd_pgext(args) -> tuple[str, dict, bool]:
    from .permutation_extension import load_group, pgext_report

    try:
        data = load_group(args.group)
    except (KeyError, TypeError, IndexError) as exc:
        raise UsageError(f"bad group file {args.group}: {exc}") from None
    r = pgext_report(data)
    return f"Extension for {r['group'] or 'group'}", r, r["passed"]


def cmd_suite(args) -> tuple[str, dict, bool]:
    from .suite import run_suite

    results = run_suite(seed=args.seed)
    rows = [{"check": c.name, "passed": c.passed, "within_time": c.within_time,
             "limit": c.limit, "seconds": round(c.seconds, 3)} for c in results]
    rows.sort(key=lambda r: r["check"])
    r = {"seed": args.seed, "checks": rows}
    return "Acceptance suite", r, all(c.ok for c in results)


def _read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "markdown"], default="markdown")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings in the output")

    ap = argparse.ArgumentParser(prog="fusion-obstruct", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("golay", parents=[common], help="Golay code sections")
    g.add_argument("action", choices=["build", "tables", "obstruct"])
    g.add_argument("--n", choices=["22", "23", "dual"])
    g.add_argument("--limit", type=int, default=20, help="survivors listed in the report")
    g.set_defaults(func=cmd_golay)

    t = sub.add_parser("threem22", parents=[common], help="six-dimensional module over F_4")
    t.add_argument("action", choices=["build", "check", "obstruct"])
    t.set_defaults(func=cmd_threem22)

    a = sub.add_parser("alperin", parents=[common], help="(Z/2^n)^3 with a dihedral Sylow action")
    a.add_argument("--n", type=int, required=True)
    mode = a.add_mutually_exclusive_group()
    mode.add_argument("--table", action="store_true")
    mode.add_argument("--theorem", action="store_true")
    mode.add_argument("--onan", action="store_true")
    mode.add_argument("--obstruct", action="store_true")
    a.set_defaults(func=cmd_alperin)

    c = sub.add_parser("charbound", parents=[common], help="Brauer character bounds")
    c.add_argument("--char-data", metavar="FILE")
    c.add_argument("--oracle", action="store_true", help="also run the explicit-matrix oracle")
    c.set_defaults(func=cmd_charbound)

    m = sub.add_parser("m12", parents=[common], help="M12 embedding checks")
    m.add_argument("action", choices=["verify"])
    m.add_argument("--gens", metavar="FILE", required=True)
    m.set_defaults(func=cmd_m12)

    p = sub.add_parser("pgext", parents=[common], help="permutation-module extension checks")
    p.add_argument("--group", metavar="FILE")
    p.set_defaults(func=cmd_pgext)

    s = sub.add_parser("suite", parents=[common], help="every acceptance check")
    s.add_argument("which", choices=["all"])
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_suite)
    return ap


def render(title: str, result: dict, ok: bool, fmt: str, keep_times: bool) -> str:
    body = _plain(result, keep_times)
    bad = [] if ok else mismatches(body)
    if fmt == "json":
        return json.dumps({"title": title, "passed": ok, "mismatches": bad, "result": body}, indent=2)
    text = ""
    if "R+ empty" in body:
        text = f"R+ empty: {'true' if body['R+ empty'] else 'false'}\n\n"
    text += to_markdown(body, title)
    text += f"\n**{'PASS' if ok else 'FAIL'}**\n"
    if bad:
        text += "\nMismatches:\n" + "\n".join(f"- {b}" for b in bad) + "\n"
    return text


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else USAGE
    try:
        title, result, ok = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (ModuleError, GroupError, CapExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    print(render(title, result, ok, args.format, args.timings))
    return OK if ok else MISMATCH


if __name__ == "__main__":
    sys.exit(main())
