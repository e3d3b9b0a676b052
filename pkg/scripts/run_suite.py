"""Run every registered check with the default configuration.

Writes one JSON report per check plus summary.csv into the output directory
and prints a summary line per check.

    python scripts/run_suite.py [--out results/suite] [--trials 1000] [--seed 0xA17190] [--threads 4]
"""
import argparse
import sys
import time
from pathlib import Path

from antinorm import matfile
from antinorm.checks import REGISTRY, CheckConfig, env_seed, run_check
from antinorm.report import FAIL, to_csv


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results/suite")
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    out = Path(args.out)
    cfg = CheckConfig(trials=args.trials, seed=env_seed() if args.seed is None else args.seed, threads=args.threads)
    reports = []
    start = time.perf_counter()
    for cid in REGISTRY:
        rep = run_check(cid, cfg)
        matfile.save(out / f"{cid}.json", rep.to_dict())
        reports.append(rep)
        print(rep.summary_line(), f"{rep.wall_time:.1f}s", flush=True)
    (out / "summary.csv").write_text(to_csv(reports))
    print(f"{len(reports)} checks in {time.perf_counter() - start:.0f}s -> {out}/summary.csv")
    return 1 if any(r.status == FAIL for r in reports) else 0


if __name__ == "__main__":
    sys.exit(main())
