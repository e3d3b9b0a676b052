"""Command-line front end.

    antinorm list
    antinorm run <check ...|all> [--n N ...] [--m M] [--trials T] [--seed S] [--tol TOL]
                 [--spectrum LAW] [--spec SPEC ...] [--fn NAME=VALUE ...]
                 [--format json|csv] [--out PATH] [--threads K]
    antinorm search <target ...|all> [--budget B] [--seed S] [--tol TOL] [--fn NAME=VALUE ...] [--out DIR]
    antinorm report <file.json ...> [--format json|csv]

Exit codes: 0 when every selected check passes (or every search completes),
1 when some check fails or a saved result does not re-verify, 2 on usage or
configuration errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import matfile
from .checks import REGISTRY, CheckConfig, env_seed, list_checks, reverify, run_check
from .errors import AntinormError
from .report import FAIL, CheckReport, to_csv
from .search import TARGETS, list_targets, save_result, search_counterexample, verify_instance


class UsageError(Exception):
    pass


def _bindings(items) -> dict:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name.strip() or not value.strip():
            raise UsageError(f"--fn expects NAME=VALUE, got {item!r}")
        out[name.strip()] = value.strip()
    return out


def _select(names, registry, kind):
    if not names or names == ["all"]:
        return list(registry)
    unknown = [n for n in names if n not in registry]
    if unknown:
        raise UsageError(f"unknown {kind}(s): {', '.join(unknown)}")
    return names


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="antinorm", description="Randomized checks of norm and anti-norm inequalities.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list checks and search targets")

    run = sub.add_parser("run", help="run checks")
    run.add_argument("checks", nargs="*", default=["all"])
    run.add_argument("--n", nargs="+", type=int, dest="dims", help="matrix sizes (upper block size for block checks)")
    run.add_argument("--m", type=int, help="lower block size for block checks (default: n)")
    run.add_argument("--trials", type=int, default=1000)
    run.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    run.add_argument("--tol", type=float, default=1e-9)
    run.add_argument("--spectrum", default="uniform01")
    run.add_argument("--spec", action="append", default=[], help="norm or anti-norm to sweep (repeatable)")
    run.add_argument("--fn", action="append", default=[], help="binding NAME=VALUE, e.g. g='poly(0,1,0,1)'")
    run.add_argument("--format", choices=("json", "csv"), default="csv")
    run.add_argument("--out", help="output file, or directory for one JSON document per check")
    run.add_argument("--threads", type=int, default=1)

    se = sub.add_parser("search", help="run counterexample searches")
    se.add_argument("targets", nargs="*", default=["all"])
    se.add_argument("--budget", type=int, default=10_000)
    se.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    se.add_argument("--tol", type=float, default=1e-9)
    se.add_argument("--fn", action="append", default=[])
    se.add_argument("--out", default=".", help="directory for instance files")
    se.add_argument("--format", choices=("json", "csv"), default="csv")

    rep = sub.add_parser("report", help="re-verify saved reports and instances")
    rep.add_argument("files", nargs="+")
    rep.add_argument("--format", choices=("json", "csv"), default="csv")
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_list(args) -> int:
    rows = [(cid, "check", anchor) for cid, anchor in list_checks()]
    rows += [(tid, "search", anchor) for tid, anchor in list_targets()]
    width = max(len(r[0]) for r in rows)
    for cid, kind, anchor in rows:
        print(f"{cid:<{width}}  {kind:<6}  {anchor}")
    return 0


def _cmd_run(args) -> int:
    ids = _select(args.checks, REGISTRY, "check")
    bindings = _bindings(args.fn)
    known = set().union(*(REGISTRY[c].defaults for c in ids))
    stray = set(bindings) - known
    if stray:
        raise UsageError(f"no selected check takes binding(s) {sorted(stray)}")
    seed = env_seed() if args.seed is None else args.seed
    reports = []
    for cid in ids:
        cfg = CheckConfig(
            dims=tuple(args.dims) if args.dims else CheckConfig().dims,
            trials=args.trials, seed=seed, tol=args.tol, spectrum=args.spectrum,
            specs=tuple(args.spec), m=args.m, threads=max(1, args.threads),
            bindings={k: v for k, v in bindings.items() if k in REGISTRY[cid].defaults},
        )
        rep = run_check(cid, cfg)
        reports.append(rep)
        print(rep.summary_line(), file=sys.stderr)
    if args.out and args.format == "json" and (args.out.endswith("/") or Path(args.out).is_dir()):
        outdir = Path(args.out)
        for rep in reports:
            matfile.save(outdir / f"{rep.check_id}.json", rep.to_dict())
        (outdir / "summary.csv").write_text(to_csv(reports))
    elif args.format == "json":
        _emit(json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True) + "\n", args.out)
    else:
        _emit(to_csv(reports), args.out)
    return 1 if any(r.status == FAIL for r in reports) else 0


def _cmd_search(args) -> int:
    ids = _select(args.targets, TARGETS, "search target")
    bindings = _bindings(args.fn)
    seed = env_seed() if args.seed is None else args.seed
    results = []
    for tid in ids:
        b = {k: v for k, v in bindings.items() if k in TARGETS[tid].defaults}
        res = search_counterexample(tid, args.budget, seed, b, args.tol)
        results.append(res)
        line = res.summary_line()
        if res.found:
            path = save_result(Path(args.out) / f"{tid}.json", res)
            line += f" -> {path}"
        print(line)
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in results], indent=2, sort_keys=True))
    return 0


def _cmd_report(args) -> int:
    ok = True
    reports = []
    for name in args.files:
        doc = json.loads(Path(name).read_text())
        docs = doc if isinstance(doc, list) else [doc]
        for d in docs:
            if "target" in d:
                v, lhs, rhs, label = verify_instance(d)
                stored = d["violation"]
                same = abs(v - stored) <= 1e-12 * (1.0 + abs(stored))
                ok &= same
                print(f"{d['target']:<32} violation={v:.6g} stored={stored:.6g} "
                      f"{'reproduced' if same else 'MISMATCH'} [{label}]")
            elif "check_id" in d:
                data = matfile.decode(d)
                data.pop("passed", None)
                rep = CheckReport(**data)
                reports.append(rep)
                if rep.worst_key:
                    again = reverify(rep)
                    same = again.worst_margin == rep.worst_margin
                    ok &= same
                    print(f"{rep.check_id:<32} {rep.status:<19} worst_margin={rep.worst_margin:.6g} "
                          f"{'reproduced' if same else 'MISMATCH'}")
                else:
                    print(f"{rep.check_id:<32} {rep.status:<19} (no trial to re-run)")
            else:
                raise UsageError(f"{name}: not a check report or search result")
    if reports and args.format == "csv":
        sys.stdout.write(to_csv(reports))
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {"list": _cmd_list, "run": _cmd_run, "search": _cmd_search, "report": _cmd_report}
    try:
        return handlers[args.command](args)
    except (UsageError, AntinormError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"antinorm: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
