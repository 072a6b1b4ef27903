"""Sample/population utilities and the argmax aggregation mechanisms.

All mechanisms here are anonymous: they consume the sample as a multiset, so
every public entry point has a ``*_from_counts`` core operating on
``{issue: {ordering: count}}`` tallies.  Tie-breaking is deterministic, by
lexicographic order of the serialized profile.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable

from .errors import InvalidArgumentError
from .orders import (
    LinearOrder,
    Profile,
    exact_match_score,
    kendall_score,
)
from .population import MarginalPopulation, SaliencyDistribution, SampleSet
from .spaces import DEFAULT_ENUMERATION_CAP, CandidateSpace, all_linear_orders

if TYPE_CHECKING:
    from .privilege import AcyclicPlan

__all__ = [
    "ScoringRule",
    "MechanismResult",
    "KENDALL",
    "EXACT_MATCH",
    "SCORING_RULES",
    "sample_utility",
    "population_utility",
    "sample_score",
    "population_score",
    "majority_vote",
    "majority_vote_from_counts",
    "scoring_mechanism",
    "scoring_mechanism_from_counts",
    "acyclic_mechanism",
    "acyclic_mechanism_from_counts",
]


@dataclass(frozen=True)
class ScoringRule:
    """A bounded comparison of two linear orders; higher means closer."""

    name: str
    evaluate: Callable[[LinearOrder, LinearOrder], float]
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi or self.lo != self.lo or self.hi != self.hi:
            raise InvalidArgumentError("scoring rule needs finite bounds lo < hi")

    def spot_check(self, n: int, rng, probes: int = 32) -> None:
        """Random probe of the declared bounds; raises on a violation."""
        orders = all_linear_orders(n)
        for _ in range(probes):
            a = orders[rng.integers(len(orders))]
            b = orders[rng.integers(len(orders))]
            value = self.evaluate(a, b)
            if not (self.lo - 1e-12 <= value <= self.hi + 1e-12):
                raise InvalidArgumentError(
                    f"rule {self.name!r} returned {value} outside [{self.lo}, {self.hi}]"
                )


KENDALL = ScoringRule("kendall", kendall_score, 0.0, 1.0)
EXACT_MATCH = ScoringRule("exact", exact_match_score, 0.0, 1.0)

SCORING_RULES = {rule.name: rule for rule in (KENDALL, EXACT_MATCH)}


@dataclass(frozen=True)
class MechanismResult:
    chosen: Profile
    sample_objective: float
    tie_set_size: int
    tie_broken: bool


def _counts_of(sample: SampleSet) -> tuple[dict, int]:
    return sample.counts(), len(sample)


def sample_utility(profile: Profile, sample: SampleSet) -> float:
    """Mean exact-match indicator of ``profile`` over the sample; 0 when empty."""
    if len(sample) == 0:
        warnings.warn("sample utility of an empty sample is defined as 0", stacklevel=2)
        return 0.0
    hits = 0
    for order, issue in sample:
        if profile(issue) == order:
            hits += 1
    return hits / len(sample)


def population_utility(
    profile: Profile,
    saliency: SaliencyDistribution,
    population: MarginalPopulation,
) -> float:
    """Expected exact-match mass: sum of saliency(i) * marginal mass on profile(i)."""
    total = 0.0
    for issue in saliency.issues:
        w = saliency(issue)
        if w == 0:
            continue
        total += w * population.mass(issue, profile(issue))
    return total


def sample_score(profile: Profile, sample: SampleSet, rule: ScoringRule) -> float:
    """Average rule score of the sampled orderings against ``profile``."""
    if len(sample) == 0:
        warnings.warn("sample score of an empty sample is defined as 0", stacklevel=2)
        return 0.0
    counts, total = _counts_of(sample)
    return _objective_from_counts(profile, counts, rule) / total


def population_score(
    profile: Profile,
    saliency: SaliencyDistribution,
    population: MarginalPopulation,
    rule: ScoringRule,
) -> float:
    """Exact expected rule score under the saliency and marginals."""
    total = 0.0
    for issue in saliency.issues:
        w = saliency(issue)
        if w == 0:
            continue
        dist = population.distribution(issue)
        target = profile(issue)
        # sorted terms so symmetric profiles produce bitwise-identical sums
        terms = sorted(p * rule.evaluate(order, target) for order, p in dist.items())
        total += w * sum(terms)
    return total


def _objective_from_counts(profile: Profile, counts: dict, rule: ScoringRule) -> float:
    terms = []
    for issue, dist in counts.items():
        target = profile(issue)
        for order, count in dist.items():
            terms.append(count * rule.evaluate(order, target))
    terms.sort()
    return sum(terms)


# -- majority vote ---------------------------------------------------------


def majority_vote(sample: SampleSet, space: CandidateSpace) -> MechanismResult:
    """Argmax of sample utility over the space (the sample-level majority vote)."""
    counts, total = _counts_of(sample)
    return majority_vote_from_counts(counts, total, space)


def majority_vote_from_counts(counts: dict, total: int, space: CandidateSpace) -> MechanismResult:
    for issue in counts:
        if issue not in space.issue_space:
            raise InvalidArgumentError(f"sample references unknown issue {issue!r}")
    if total == 0:
        warnings.warn("majority vote over an empty sample: canonical output", stacklevel=2)
    if space.variant == "full":
        return _majority_full(counts, total, space)
    if space.variant == "product":
        return _majority_product(counts, total, space)
    return _argmax_enumerated(counts, total, space, EXACT_MATCH)


def _majority_full(counts: dict, total: int, space: CandidateSpace) -> MechanismResult:
    orders = all_linear_orders(space.issue_space.n)
    assignment = {}
    tie_set_size = 1
    objective = 0
    for issue in space.issue_space.sorted_ids():
        dist = counts.get(issue, {})
        per_order = [dist.get(order, 0) for order in orders]
        best = max(per_order)
        ties = [order for order, c in zip(orders, per_order) if c == best]
        assignment[issue] = ties[0]
        tie_set_size *= len(ties)
        objective += best
    return MechanismResult(
        chosen=Profile(assignment),
        sample_objective=objective / total if total else 0.0,
        tie_set_size=tie_set_size,
        tie_broken=tie_set_size > 1,
    )


def _majority_product(counts: dict, total: int, space: CandidateSpace) -> MechanismResult:
    assignment = {}
    tie_set_size = 1
    objective = 0
    for issues, factor in space.blocks:
        scores = [
            sum(counts.get(issue, {}).get(partial(issue), 0) for issue in issues)
            for partial in factor
        ]
        best = max(scores)
        ties = [partial for partial, s in zip(factor, scores) if s == best]
        for issue, order in ties[0].items():
            assignment[issue] = order
        tie_set_size *= len(ties)
        objective += best
    return MechanismResult(
        chosen=Profile(assignment),
        sample_objective=objective / total if total else 0.0,
        tie_set_size=tie_set_size,
        tie_broken=tie_set_size > 1,
    )


# -- scoring mechanism -----------------------------------------------------


def scoring_mechanism(
    sample: SampleSet,
    space: CandidateSpace,
    rule: ScoringRule,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> MechanismResult:
    """Argmax of the average rule score over the (enumerable) space."""
    counts, total = _counts_of(sample)
    return scoring_mechanism_from_counts(counts, total, space, rule, cap=cap)


def scoring_mechanism_from_counts(
    counts: dict,
    total: int,
    space: CandidateSpace,
    rule: ScoringRule,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> MechanismResult:
    for issue in counts:
        if issue not in space.issue_space:
            raise InvalidArgumentError(f"sample references unknown issue {issue!r}")
    if total == 0:
        warnings.warn("scoring mechanism over an empty sample: canonical output", stacklevel=2)
    return _argmax_enumerated(counts, total, space, rule, cap=cap)


def _argmax_enumerated(
    counts: dict,
    total: int,
    space: CandidateSpace,
    rule: ScoringRule,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> MechanismResult:
    best_profile = None
    best_objective = None
    tie_set_size = 0
    for profile in space.enumerate_profiles(cap=cap):
        objective = _objective_from_counts(profile, counts, rule)
        if best_objective is None or objective > best_objective:
            best_profile = profile
            best_objective = objective
            tie_set_size = 1
        elif objective == best_objective:
            tie_set_size += 1
    return MechanismResult(
        chosen=best_profile,
        sample_objective=best_objective / total if total else 0.0,
        tie_set_size=tie_set_size,
        tie_broken=tie_set_size > 1,
    )


# -- acyclic-plan mechanism ------------------------------------------------


def acyclic_mechanism(plan: "AcyclicPlan", sample: SampleSet) -> Profile:
    """Resolve each size-2 SCC by pairwise sample majority; the rest is fixed."""
    counts, _ = _counts_of(sample)
    return acyclic_mechanism_from_counts(plan, counts)


def acyclic_mechanism_from_counts(plan: "AcyclicPlan", counts: dict) -> Profile:
    plan_issues = set(plan.issue_plans)
    for issue in counts:
        if issue not in plan_issues:
            raise InvalidArgumentError(f"sample references issue {issue!r} outside the plan")
    assignment = {}
    for issue, issue_plan in plan.issue_plans.items():
        dist = counts.get(issue, {})
        ranking: list[int] = []
        for scc in issue_plan.topo_sccs:
            if len(scc) == 1:
                ranking.append(scc[0])
                continue
            u, v = issue_plan.orientations[frozenset(scc)]
            above = sum(c for order, c in dist.items() if order.prefers(u, v))
            below = sum(c for order, c in dist.items() if order.prefers(v, u))
            # ties fall back to the plan's canonical orientation (u, v)
            ranking.extend((v, u) if below > above else (u, v))
        assignment[issue] = LinearOrder(tuple(ranking))
    return Profile(assignment)
