"""Eigenvalue error of the Nystrom discretization of min(x, y) on [0, 1].

Prints, for each grid size and rule, the relative error of the first few
eigenvalues against 1 / ((k - 1/2)^2 pi^2), the observed convergence order,
and the smallest grid size on the sweep that brings every listed mode under
the target.
"""

import argparse
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from cauchy_dual.models import RULES, KernelSpec, min_kernel_eigenvalues, nystrom


@dataclass
class Config:
    sizes: list = field(default_factory=lambda: [50, 100, 200, 400, 800])
    modes: int = 5
    target: float = 1e-4
    rules: tuple = RULES


def run(cfg: Config) -> dict:
    k = np.arange(1, cfg.modes + 1)
    exact = min_kernel_eigenvalues(k)
    out = {"config": asdict(cfg), "rules": {}}
    for rule in cfg.rules:
        rows = []
        for m in cfg.sizes:
            _, dec = nystrom(KernelSpec("min", 0.0, 1.0, m, rule))
            rows.append((np.abs(dec.eigenvalues[: cfg.modes] - exact) / exact).tolist())
        err = np.array(rows)
        order = np.log2(err[:-1] / err[1:]) / np.log2(np.array(cfg.sizes[1:]) / np.array(cfg.sizes[:-1]))[:, None]
        ok = [m for m, e in zip(cfg.sizes, err) if np.all(e <= cfg.target)]
        out["rules"][rule] = {
            "relative_errors": dict(zip(map(str, cfg.sizes), rows)),
            "observed_order_last": order[-1].tolist(),
            "first_size_meeting_target": ok[0] if ok else None,
        }
    return out


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--sizes", type=int, nargs="+", default=Config().sizes)
    p.add_argument("--modes", type=int, default=5)
    p.add_argument("--target", type=float, default=1e-4)
    a = p.parse_args()
    res = run(Config(sizes=a.sizes, modes=a.modes, target=a.target))
    for rule, r in res["rules"].items():
        print(f"{rule}: first m meeting {a.target:g} for k<={a.modes}: {r['first_size_meeting_target']}")
        for m, e in r["relative_errors"].items():
            print(f"  m={m:>5}  " + "  ".join(f"{v:.2e}" for v in e))
        print("  order  " + "  ".join(f"{v:.2f}" for v in r["observed_order_last"]))
    print(json.dumps(res))


if __name__ == "__main__":
    main()
