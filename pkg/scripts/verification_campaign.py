"""Run the whole theorem registry at a chosen scale and write the reports.

Example::

    python3 scripts/verification_campaign.py --trials 200 --seed 3 --jobs 4 --out reports.json
"""

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass

from cauchy_dual.linalg import ToleranceConfig
from cauchy_dual.registry import DEFAULT_SIZE, run_all


@dataclass
class Campaign:
    trials: int = 100
    seed: int = 0
    jobs: int = 1
    max_dim: int = DEFAULT_SIZE["max_dim"]
    identity_tol: float = 1e-10
    out: str | None = None


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for f, v in asdict(Campaign()).items():
        p.add_argument("--" + f.replace("_", "-"), dest=f, type=type(v) if v is not None else str, default=v)
    c = Campaign(**vars(p.parse_args(argv)))

    start = time.perf_counter()
    reports = run_all(c.trials, c.seed, ToleranceConfig(identity_tol=c.identity_tol), {"max_dim": c.max_dim}, c.jobs)
    total = time.perf_counter() - start

    width = max(len(r.theorem_id) for r in reports)
    for r in reports:
        print(f"{r.theorem_id:<{width}}  {r.verdict:<18} max residual {r.max_residual:.2e}  {r.wall_time:6.2f}s", file=sys.stderr)
    failed = [r.theorem_id for r in reports if not r.passed]
    print(f"{len(reports)} theorems, {c.trials} trials each, {total:.1f}s, failed: {failed or 'none'}", file=sys.stderr)
    if c.out:
        with open(c.out, "w") as fh:
            json.dump({"campaign": asdict(c), "wall_time": total, "reports": [r.as_dict() for r in reports]}, fh)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
