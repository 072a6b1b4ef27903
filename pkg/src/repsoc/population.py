"""Issue spaces, saliency distributions, per-issue preference marginals and sampling.

Populations are modeled through their per-issue marginals only: for each
issue, a sparse distribution over linear orders.  Sampling draws an issue
from the saliency distribution, then an ordering from that issue's marginal,
i.i.d. per pair.
"""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import InvalidArgumentError
from .orders import LinearOrder, Profile
from .rng import derive_rng

__all__ = [
    "PROB_TOL",
    "IssueSpace",
    "SaliencyDistribution",
    "MarginalPopulation",
    "SubpopulationMixture",
    "SampleSet",
    "mix",
    "pair_marginal",
    "sample_pairs",
    "uniform_saliency",
    "load_population",
    "save_population",
]

PROB_TOL = 1e-9


def _canonical_issue_key(issue) -> str:
    return str(issue)


@dataclass(frozen=True)
class IssueSpace:
    """A finite set of issues sharing a common outcome count ``n``."""

    issue_ids: tuple
    n: int

    def __post_init__(self):
        ids = tuple(self.issue_ids)
        object.__setattr__(self, "issue_ids", ids)
        if len(ids) < 1:
            raise InvalidArgumentError("issue space needs at least one issue")
        if len(set(ids)) != len(ids):
            raise InvalidArgumentError("issue ids must be unique")
        if self.n < 2:
            raise InvalidArgumentError("issues need at least 2 outcomes")

    def __contains__(self, issue) -> bool:
        return issue in set(self.issue_ids)

    def sorted_ids(self) -> list:
        return sorted(self.issue_ids, key=_canonical_issue_key)


@dataclass(frozen=True)
class SaliencyDistribution:
    """Probability of each issue being drawn into the sample."""

    weights: Mapping[object, float]

    def __post_init__(self):
        weights = dict(self.weights)
        object.__setattr__(self, "weights", weights)
        if any(w < 0 for w in weights.values()):
            raise InvalidArgumentError("saliency weights must be non-negative")
        total = sum(weights.values())
        if abs(total - 1.0) > PROB_TOL:
            raise InvalidArgumentError(f"saliency weights sum to {total}, not 1")
        zero = [issue for issue, w in weights.items() if w == 0]
        if zero:
            warnings.warn(
                f"saliency gives zero weight to issues {zero}; they will never be sampled",
                stacklevel=3,
            )

    def __call__(self, issue) -> float:
        try:
            return self.weights[issue]
        except KeyError:
            raise InvalidArgumentError(f"unknown issue {issue!r}") from None

    @property
    def issues(self):
        return self.weights.keys()


@dataclass(frozen=True)
class MarginalPopulation:
    """Per-issue sparse distributions over linear orders."""

    per_issue: Mapping[object, Mapping[LinearOrder, float]]

    def __post_init__(self):
        per_issue = {issue: dict(dist) for issue, dist in self.per_issue.items()}
        object.__setattr__(self, "per_issue", per_issue)
        for issue, dist in per_issue.items():
            if any(p < 0 for p in dist.values()):
                raise InvalidArgumentError(f"negative probability on issue {issue!r}")
            total = sum(dist.values())
            if abs(total - 1.0) > PROB_TOL:
                raise InvalidArgumentError(
                    f"marginal on issue {issue!r} sums to {total}, not 1"
                )

    def distribution(self, issue) -> Mapping[LinearOrder, float]:
        try:
            return self.per_issue[issue]
        except KeyError:
            raise InvalidArgumentError(f"unknown issue {issue!r}") from None

    def mass(self, issue, order: LinearOrder) -> float:
        return self.distribution(issue).get(order, 0.0)

    @property
    def issues(self):
        return self.per_issue.keys()

    @classmethod
    def unanimous(cls, profile: Profile) -> "MarginalPopulation":
        """Population in which everyone holds exactly ``profile``."""
        return cls({issue: {order: 1.0} for issue, order in profile.items()})


@dataclass(frozen=True)
class SubpopulationMixture:
    """Mass-weighted coalitions, each with its own marginal population."""

    components: tuple

    def __post_init__(self):
        components = tuple(
            (float(mass), pop) for mass, pop in self.components
        )
        object.__setattr__(self, "components", components)
        if not components:
            raise InvalidArgumentError("mixture needs at least one component")
        if any(mass <= 0 for mass, _ in components):
            raise InvalidArgumentError("component masses must be positive")
        total = sum(mass for mass, _ in components)
        if abs(total - 1.0) > PROB_TOL:
            raise InvalidArgumentError(f"component masses sum to {total}, not 1")


@dataclass(frozen=True)
class SampleSet:
    """An i.i.d. collection of (ordering, issue) pairs plus its producing seed."""

    pairs: tuple
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def counts(self) -> dict:
        """Multiset view: issue -> {ordering -> count}."""
        out: dict = {}
        for order, issue in self.pairs:
            out.setdefault(issue, {})
            out[issue][order] = out[issue].get(order, 0) + 1
        return out

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["k", "issue_id", "ordering"])
            for k, (order, issue) in enumerate(self.pairs):
                writer.writerow([k, issue, str(order)])


def mix(mixture: SubpopulationMixture) -> MarginalPopulation:
    """Convex combination of coalition marginals, issue by issue."""
    issues = set()
    for _, pop in mixture.components:
        issues.update(pop.issues)
    per_issue = {}
    for issue in issues:
        combined: dict = {}
        for mass, pop in mixture.components:
            for order, p in pop.distribution(issue).items():
                combined[order] = combined.get(order, 0.0) + mass * p
        per_issue[issue] = combined
    return MarginalPopulation(per_issue)


def pair_marginal(population: MarginalPopulation, issue, pair) -> float:
    """Probability that a random individual ranks ``pair[0]`` above ``pair[1]``."""
    c, cp = tuple(pair)
    if c == cp:
        raise InvalidArgumentError("pair must contain two distinct outcomes")
    dist = population.distribution(issue)
    for order in dist:
        if not (0 <= c < order.n and 0 <= cp < order.n):
            raise InvalidArgumentError(f"pair ({c},{cp}) out of range for n={order.n}")
    return sum(p for order, p in dist.items() if order.prefers(c, cp))


def sample_pairs(
    saliency: SaliencyDistribution,
    population: MarginalPopulation,
    n: int,
    seed: int,
) -> SampleSet:
    """Draw ``n`` i.i.d. (ordering, issue) pairs; bit-reproducible per seed."""
    if n < 0:
        raise InvalidArgumentError("sample size must be non-negative")
    # one categorical draw over the joint (issue, ordering) cells, in canonical order
    cells = []
    probs = []
    for issue in sorted(saliency.issues, key=_canonical_issue_key):
        w = saliency(issue)
        if w == 0:
            continue
        dist = population.distribution(issue)
        for order in sorted(dist, key=lambda o: o.ranking):
            p = dist[order]
            if p > 0:
                cells.append((order, issue))
                probs.append(w * p)
    rng = derive_rng(seed)
    probs_arr = np.asarray(probs, dtype=float)
    probs_arr = probs_arr / probs_arr.sum()
    if n > 0:
        draws = rng.choice(len(cells), size=n, p=probs_arr)
        pairs = tuple(cells[j] for j in draws)
    else:
        pairs = ()
    return SampleSet(pairs=pairs, seed=seed)


def uniform_saliency(space: IssueSpace) -> SaliencyDistribution:
    w = 1.0 / len(space.issue_ids)
    return SaliencyDistribution({issue: w for issue in space.issue_ids})


def _parse_issue_id(raw):
    return raw


def save_population(
    path,
    space: IssueSpace,
    saliency: SaliencyDistribution,
    population: MarginalPopulation,
) -> None:
    doc = {
        "issues": list(space.issue_ids),
        "N": space.n,
        "saliency": {str(issue): saliency(issue) for issue in space.issue_ids},
        "marginals": {
            str(issue): {
                str(order): p
                for order, p in sorted(
                    population.distribution(issue).items(), key=lambda kv: kv[0].ranking
                )
            }
            for issue in space.issue_ids
        },
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)


def load_population(path):
    """Read a population file; returns (IssueSpace, SaliencyDistribution, MarginalPopulation)."""
    with open(path) as fh:
        doc = json.load(fh)
    try:
        issues = list(doc["issues"])
        n = int(doc["N"])
        saliency_raw = doc["saliency"]
        marginals_raw = doc["marginals"]
    except KeyError as exc:
        raise InvalidArgumentError(f"population file missing key {exc}") from exc
    space = IssueSpace(tuple(issues), n)
    by_str = {str(issue): issue for issue in issues}
    saliency = SaliencyDistribution(
        {by_str[key]: float(w) for key, w in saliency_raw.items()}
    )
    per_issue = {}
    for key, dist in marginals_raw.items():
        issue = by_str.get(key)
        if issue is None:
            raise InvalidArgumentError(f"marginals reference unknown issue {key!r}")
        per_issue[issue] = {
            LinearOrder.from_string(text): float(p) for text, p in dist.items()
        }
    for order_dist in per_issue.values():
        for order in order_dist:
            if order.n != n:
                raise InvalidArgumentError(
                    f"ordering {order} has {order.n} outcomes, expected {n}"
                )
    population = MarginalPopulation(per_issue)
    return space, saliency, population
