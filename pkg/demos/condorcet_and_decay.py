"""Cyclic preferences in action: guaranteed pairwise violations, and how
axiom failure rates decay with jury size when preferences are coherent.

Part 1 mixes three coalitions (2/9, 4/9, 1/3) into a population whose
pairwise majorities form a cycle, so every committee verdict contradicts
some 2/3-majority.  Part 2 runs the weak pairwise-consistency check on a
binary issue with a 75% majority and fits the exponential decay of the
failure rate.  Run:

    python demos/condorcet_and_decay.py
"""

from repsoc import (
    LinearOrder,
    MarginalPopulation,
    SaliencyDistribution,
    Scenario,
    condorcet_scenario,
    cycle_violation_demo,
    decay_verdict,
    estimate_axiom,
    make_mechanism,
    pair_marginal,
)
from repsoc.spaces import CandidateSpace, IssueSpace

lo = LinearOrder.from_string


def condorcet_part():
    space = CandidateSpace.full(IssueSpace(("i",), 3))
    scn = condorcet_scenario(space, make_mechanism("majority", space))
    print("== a population whose pairwise majorities cycle")
    for u, v in ((0, 1), (1, 2), (2, 0)):
        print(f"   P[{u} over {v}] = {pair_marginal(scn.population, 'i', (u, v)):.6f}")
    report = cycle_violation_demo(scn, sizes=[25], trials_per_size=400, seed=11)
    print(f"   strict pairwise majorities: {report.majorities}")
    for size, trials, min_v, hist in report.per_size:
        print(f"   over {trials} juries of {size}: min violated majorities = "
              f"{min_v}, zero-violation juries: {hist.get(0, 0)}")


def decay_part():
    space = CandidateSpace.full(IssueSpace(("i",), 2))
    population = MarginalPopulation({"i": {lo("0>1"): 0.75, lo("1>0"): 0.25}})
    scn = Scenario(
        saliency=SaliencyDistribution({"i": 1.0}),
        population=population,
        space=space,
        mechanism=make_mechanism("majority", space),
        axiom="w-pc",
        issue="i",
        pair=(0, 1),
    )
    curve = estimate_axiom(scn, sizes=[11, 21, 41], trials_per_size=20000, seed=11)
    print("\n== weak pairwise consistency under a 75% majority")
    for pt in curve.points:
        print(f"   n={pt.size:>3}  failure rate {pt.rate:.5f}")
    if curve.fit.alpha is not None:
        print(f"   fitted decay exponent: {curve.fit.alpha:.4f} per voter "
              f"(r^2 = {curve.fit.r2:.3f})", end=", ")
    print(f"verdict: {decay_verdict(curve)}")


if __name__ == "__main__":
    condorcet_part()
    decay_part()
