"""Run the counterexample searches at their reference budgets.

Found instances are written as JSON next to a summary.json holding every
result (instances included only when found).

    python scripts/run_searches.py [--out results/searches] [--seed 0xA17190] [--scale 1.0]
"""
import argparse
import json
import sys
from pathlib import Path

from antinorm.checks import env_seed
from antinorm.search import save_result, search_counterexample

BUDGETS = {
    "cex_nonconvex_g": 10_000,
    "cex_expansive_antinorm": 100_000,
    "open_expansive_schatten": 100_000,
    "open_contraction_symmetric_norm": 20_000,
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results/searches")
    ap.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    ap.add_argument("--scale", type=float, default=1.0, help="multiply every budget")
    args = ap.parse_args(argv)

    out = Path(args.out)
    seed = env_seed() if args.seed is None else args.seed
    summary = []
    for target, budget in BUDGETS.items():
        res = search_counterexample(target, max(1, int(budget * args.scale)), seed)
        line = f"{res.summary_line()} {res.wall_time:.1f}s"
        if res.found:
            line += f" -> {save_result(out / f'{target}.json', res)}"
        print(line, flush=True)
        d = res.to_dict()
        d.pop("instance")
        summary.append(d)
    out.mkdir(parents=True, exist_ok=True)
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
