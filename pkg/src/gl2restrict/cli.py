"""Command-line entry point: suite execution, orbit dumps, tower caching.

Exit codes: 0 all checks passed (skips allowed), 1 at least one FAIL,
2 usage or configuration error, 3 internal error.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys
import time
from pathlib import Path

from . import projline, verify
from . import grp
from .ffield import build_tower

SCHEMA_VERSION = 1
DEFAULT_CACHE_DIR = Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "gl2restrict"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gl2restrict",
        description="Exact verification of mod-p restriction decompositions "
                    "from GL2(F_q) to GL2(F_p).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="odd prime")
    common.add_argument("--f", type=int, required=True, help="extension degree")
    common.add_argument("--f-max", type=int, default=4, help="largest admissible f")
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("--out", type=Path, help="write the report to this path")

    run = sub.add_parser("verify", parents=[common],
                         help="run verification checks and emit a report")
    run.add_argument("--checks", default="all",
                     help="comma-separated check ids, or 'all' "
                          f"(known: {','.join(verify.ALL_CHECKS)})")
    run.add_argument("--r-policy", choices=["auto", "all", "sample"], default="auto",
                     help="character-exponent sweep: auto = exhaustive for q <= 9, "
                          "sampled otherwise")
    run.add_argument("--r", help="explicit comma-separated exponent list")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--budget-enum", type=int, default=verify.DEFAULT_ENUM_BUDGET,
                     help="largest group enumerated exhaustively")
    run.add_argument("--budget-hom", type=int, default=verify.DEFAULT_HOM_BUDGET,
                     help="largest Hom solve, in unknowns")
    run.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                     help="number of worker processes")
    run.add_argument("--deterministic-order", action="store_true",
                     help="sort report entries by check id for diffing")
    run.add_argument("--cache-dir", type=Path, default=DEFAULT_CACHE_DIR,
                     help="tower description cache directory")

    orbits = sub.add_parser("orbits", parents=[common],
                            help="emit an orbit decomposition as JSON")
    orbits.add_argument("--space", choices=["P1(q)", "P1(q2)", "eps"], default="P1(q)",
                        help="P^1(F_q) or P^1(F_{q^2}) under G_p, or the "
                             "non-rational G_q-orbit under G_p")
    return parser


# ---------------------------------------------------------------------------
# tower cache


def cache_tower(p: int, f: int, cache_dir: Path, f_max: int = 4) -> tuple[dict, str]:
    """Idempotent tower cache keyed by (p, f); self-checks on every load.

    Returns the tower description plus one of "hit", "miss", "rebuilt".
    A cache entry that fails the bit-identity check against a fresh
    construction is rewritten (corrupt caches heal with a warning).
    """
    fresh = build_tower(p, f, f_max).to_json()
    path = Path(cache_dir) / f"tower_p{p}_f{f}.json"
    status = "miss"
    if path.exists():
        try:
            cached = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            cached = None
        if cached == fresh:
            return fresh, "hit"
        print(f"warning: cached tower at {path} does not match a fresh "
              "construction; rebuilding", file=sys.stderr)
        status = "rebuilt"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(fresh, indent=2, sort_keys=True) + "\n")
    return fresh, status


# ---------------------------------------------------------------------------
# report rendering


def render_text(report: dict) -> str:
    lines = [
        f"gl2restrict verification report (schema {report['schema']})",
        f"p = {report['p']}, f = {report['f']}, seed = {report.get('seed', 0)}",
        f"tower: {json.dumps(report['tower'], sort_keys=True)}",
        "",
    ]
    for chk in report["checks"]:
        params = {k: v for k, v in chk["params"].items()
                  if k not in ("enum_budget", "hom_budget", "seed")}
        head = f"[{chk['status']:>7}] {chk['id']:<9} {params} ({chk['elapsed_s']}s)"
        lines.append(head)
        if chk["status"] == verify.FAIL:
            lines.append(f"           witness: {json.dumps(chk.get('witness'))}")
        elif chk["status"] == verify.SKIPPED:
            lines.append(f"           reason: {chk.get('reason')}")
        elif chk.get("details"):
            lines.append(f"           {json.dumps(chk['details'], default=repr)}")
    s = report["summary"]
    lines.append("")
    lines.append(f"summary: {s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped")
    return "\n".join(lines) + "\n"


def _emit(payload: str, out: Path | None):
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(payload)
    else:
        sys.stdout.write(payload)


# ---------------------------------------------------------------------------
# subcommands


def run_verify(args) -> int:
    tower_json, cache_status = cache_tower(args.p, args.f, args.cache_dir, args.f_max)
    explicit_r = [int(x) for x in args.r.split(",")] if args.r else None
    checks = [c.strip() for c in args.checks.split(",")] if args.checks != "all" else ["all"]
    tasks = verify.plan_suite(
        args.p, args.f, checks, r_policy=args.r_policy, explicit_r=explicit_r,
        seed=args.seed, enum_budget=args.budget_enum, hom_budget=args.budget_hom,
    )
    jobs = max(1, min(args.jobs, len(tasks) or 1))
    started = time.perf_counter()
    if jobs == 1:
        results = [verify.run_check(name, kwargs) for name, kwargs in tasks]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(verify.run_check, name, kwargs) for name, kwargs in tasks]
            results = [fut.result() for fut in futures]
    if args.deterministic_order:
        results.sort(key=lambda r: (r.check_id, sorted(r.params.items())))
    checks_json = [r.to_json() for r in results]
    summary = {
        "pass": sum(r.status == verify.PASS for r in results),
        "fail": sum(r.status == verify.FAIL for r in results),
        "skipped": sum(r.status == verify.SKIPPED for r in results),
    }
    report = {
        "schema": SCHEMA_VERSION,
        "p": args.p,
        "f": args.f,
        "seed": args.seed,
        "tower": tower_json,
        "tower_cache": cache_status,
        "elapsed_s": round(time.perf_counter() - started, 3),
        "checks": checks_json,
        "summary": summary,
    }
    if args.format == "json":
        _emit(json.dumps(report, indent=2, default=repr) + "\n", args.out)
    else:
        _emit(render_text(report), args.out)
    return 1 if summary["fail"] else 0


def run_orbits(args) -> int:
    t = build_tower(args.p, args.f, args.f_max)
    if args.space == "P1(q)":
        dec = projline.orbit_decomposition(t, grp.full(1), t.f)
    elif args.space == "P1(q2)":
        dec = projline.orbit_decomposition(t, grp.full(1), 2 * t.f)
    else:
        dec = projline.split_epsilon_orbit(t)
    payload = {
        "schema": SCHEMA_VERSION,
        "p": args.p,
        "f": args.f,
        "tower": t.to_json(),
        "decomposition": dec.to_json(t),
        "orbit_count": len(dec.orbits),
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return run_verify(args)
        return run_orbits(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception:  # internal assertion failures exit distinctly
        import traceback

        traceback.print_exc()
        return 3


if __name__ == "__main__":
    sys.exit(main())
