"""Drop the hypotheses of the power and product laws and measure how badly they fail.

For each property the search runs once unrestricted and once restricted to
the hypothesis class, over a range of matrix sizes, and prints the largest
gap and the fraction of trials above the violation threshold.
"""

import argparse
from dataclasses import dataclass

from cauchy_dual.registry import search_counterexample


@dataclass
class Sweep:
    trials: int = 500
    seed: int = 0
    dims: tuple = (2, 3, 4, 6, 8)
    threshold: float = 0.1


CASES = (("dual-power", None), ("dual-power", "normal_ep"), ("dual-product", None), ("dual-product", "range_matched"))


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=Sweep.trials)
    p.add_argument("--seed", type=int, default=Sweep.seed)
    a = p.parse_args()
    sw = Sweep(trials=a.trials, seed=a.seed)
    print(f"{'property':<14}{'restrict':<15}{'dim':>4}{'max gap':>12}{'violating':>11}")
    for prop, restrict in CASES:
        for n in sw.dims:
            r = search_counterexample(prop, sw.trials, sw.seed, restrict=restrict, dim=n, threshold=sw.threshold)
            frac = r["violators"] / sw.trials
            print(f"{prop:<14}{str(restrict):<15}{n:>4}{r['max_gap']:>12.3e}{frac:>10.0%}")


if __name__ == "__main__":
    main()
