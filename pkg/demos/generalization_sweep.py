"""How fast does a sampled jury's verdict converge to the population's?

Builds a random 8-issue binary candidate space, draws juries of increasing
size, and tracks the sup gap between sample and population objectives plus
the regret of the empirical winner.  Run:

    python demos/generalization_sweep.py
"""

import numpy as np

from repsoc import (
    MarginalPopulation,
    SaliencyDistribution,
    generalization_experiment,
)
from repsoc.spaces import CandidateSpace, IssueSpace, all_linear_orders
from repsoc.rng import derive_rng

SEED = 7


def random_setup(n_issues=8, n_profiles=32):
    rng = derive_rng(SEED, 0)
    issues = tuple(f"i{k}" for k in range(n_issues))
    issue_space = IssueSpace(issues, 2)
    orders = list(all_linear_orders(2))
    profiles = list(CandidateSpace.full(issue_space).enumerate_profiles())
    picks = rng.choice(2 ** n_issues, size=n_profiles, replace=False)
    space = CandidateSpace.explicit([profiles[int(p)] for p in sorted(picks)], issue_space)
    saliency = SaliencyDistribution({issue: 1 / n_issues for issue in issues})
    marginals = {}
    for issue in issues:
        p = float(rng.uniform(0.15, 0.85))
        marginals[issue] = {orders[0]: p, orders[1]: 1 - p}
    return space, saliency, MarginalPopulation(marginals)


def main():
    space, saliency, population = random_setup()
    sizes = [64, 256, 1024, 4096]
    result = generalization_experiment(
        space, saliency, population, sizes=sizes, trials=100, seed=SEED
    )
    print(f"candidate space: {space.size()} profiles over 8 binary issues")
    print(f"{'jury size':>10} {'median sup gap':>16} {'max regret slack':>18}")
    for n in sizes:
        slack = result.regret_slack[n]
        print(f"{n:>10} {result.median_gap(n):>16.4f} {np.max(slack):>18.4f}")
    ratio = result.median_gap(sizes[-1]) / result.median_gap(sizes[0])
    print(f"\ngap ratio {sizes[-1]}/{sizes[0]}: {ratio:.3f} "
          f"(1/sqrt(n) predicts {np.sqrt(sizes[0] / sizes[-1]):.3f})")


if __name__ == "__main__":
    main()
