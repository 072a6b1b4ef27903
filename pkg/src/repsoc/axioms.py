"""Monte Carlo estimation of the probabilistic axioms and decay-rate fitting.

Axiom events are estimated by repeated seeded trials of
(sample -> mechanism -> check).  Mechanisms are anonymous, so each trial
draws a multinomial tally over the population's (issue, ordering) cells
rather than an ordered pair list; the two are identical in distribution.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from math import log, sqrt
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidArgumentError, PreconditionError, VacuityError
from .orders import LinearOrder, PartialOrder, Permutation, Profile, apply_local_permutation, restrict
from .population import (
    MarginalPopulation,
    SaliencyDistribution,
    SubpopulationMixture,
    mix,
    pair_marginal,
)
from .privilege import is_privileged
from .rng import derive_rng
from .spaces import CandidateSpace

__all__ = [
    "Scenario",
    "DecayPoint",
    "DecayCurve",
    "FitResult",
    "estimate_axiom",
    "condorcet_scenario",
    "cycle_violation_demo",
    "CycleViolationReport",
    "decisiveness_probe",
    "fit_decay",
    "decay_verdict",
]

# chosen(counts, total) -> Profile
MechanismFn = Callable[[dict, int], Profile]

_CI_Z = 1.96
_MARGINAL_TOL = 1e-9


@dataclass(frozen=True)
class Scenario:
    """One axiom-estimation setup: population(s), space, mechanism and target."""

    saliency: SaliencyDistribution
    population: MarginalPopulation
    space: CandidateSpace
    mechanism: MechanismFn
    axiom: str | None = None  # ppe | w-piia | s-piia | w-pc | s-pc
    issue: object = None
    pair: tuple | None = None
    profile: Profile | None = None  # the C of PPE
    profile_against: Profile | None = None  # the C' of PPE
    population_b: MarginalPopulation | None = None  # second population for PIIA


@dataclass(frozen=True)
class DecayPoint:
    size: int
    trials: int
    failures: int

    @property
    def rate(self) -> float:
        return self.failures / self.trials

    @property
    def ci_half_width(self) -> float:
        p = self.rate
        return _CI_Z * sqrt(p * (1.0 - p) / self.trials)


@dataclass(frozen=True)
class FitResult:
    verdict: str  # "fit" or "saturated"
    alpha: float | None = None
    r2: float | None = None
    n_used: int = 0
    n_zero: int = 0
    n_one: int = 0


@dataclass(frozen=True)
class DecayCurve:
    points: tuple
    fit: FitResult
    issue_weight: float = 1.0  # saliency of the target issue (per-issue effective size)
    notes: tuple = ()

    @property
    def fitted_rate(self):
        return self.fit.alpha

    @property
    def fit_r2(self):
        return self.fit.r2

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["size", "trials", "failures", "rate", "ci_low", "ci_high"])
            for p in self.points:
                writer.writerow([
                    p.size,
                    p.trials,
                    p.failures,
                    f"{p.rate:.9g}",
                    f"{max(0.0, p.rate - p.ci_half_width):.9g}",
                    f"{min(1.0, p.rate + p.ci_half_width):.9g}",
                ])

    def summary(self) -> dict:
        return {
            "alpha": self.fit.alpha,
            "r2": self.fit.r2,
            "verdict": self.fit.verdict,
            "n_used": self.fit.n_used,
            "n_zero": self.fit.n_zero,
            "issue_weight": self.issue_weight,
            "notes": list(self.notes),
        }

    def to_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.summary(), fh, indent=2)


# -- sampling helpers ------------------------------------------------------


def _cells(saliency: SaliencyDistribution, population: MarginalPopulation):
    cells = []
    probs = []
    for issue in sorted(saliency.issues, key=str):
        w = saliency(issue)
        if w == 0:
            continue
        dist = population.distribution(issue)
        for order in sorted(dist, key=lambda o: o.ranking):
            p = dist[order]
            if p > 0:
                cells.append((issue, order))
                probs.append(w * p)
    arr = np.asarray(probs, dtype=float)
    return cells, arr / arr.sum()


def _counts_from_row(cells, row) -> dict:
    counts: dict = {}
    for j in np.nonzero(row)[0]:
        issue, order = cells[j]
        counts.setdefault(issue, {})[order] = int(row[j])
    return counts


# -- premise validation ----------------------------------------------------


def _validate_scenario(scn: Scenario) -> None:
    axiom = scn.axiom
    if axiom not in {"ppe", "w-piia", "s-piia", "w-pc", "s-pc"}:
        raise InvalidArgumentError(f"unknown axiom {axiom!r}")
    if scn.issue is None:
        raise InvalidArgumentError("scenario needs a target issue")
    if axiom != "ppe" and scn.pair is None:
        raise InvalidArgumentError("scenario needs a target pair")

    if axiom in {"w-piia", "w-pc"} and scn.space.variant != "full":
        raise PreconditionError("weak axioms are stated for the full candidate space only")

    if axiom in {"s-piia", "s-pc"}:
        c, cp = scn.pair
        n = scn.space.issue_space.n
        forward = is_privileged(scn.space, scn.issue, PartialOrder((c, cp), n))
        backward = is_privileged(scn.space, scn.issue, PartialOrder((cp, c), n))
        if not (forward and backward):
            raise PreconditionError(
                f"pair ({c},{cp}) is not bidirectionally privileged on issue {scn.issue!r}"
            )

    if axiom == "ppe":
        if scn.profile is None or scn.profile_against is None or scn.pair is None:
            raise InvalidArgumentError("PPE needs the neighbor profiles C, C' and the pair")
        c, cp = scn.pair
        n = scn.space.issue_space.n
        if not scn.profile(scn.issue).prefers(c, cp):
            raise InvalidArgumentError("PPE expects C to rank c above c'")
        swapped = apply_local_permutation(
            scn.profile, scn.issue, Permutation.transposition(n, c, cp)
        )
        if swapped != scn.profile_against:
            raise InvalidArgumentError("C' must equal C with the pair transposed on the issue")
        if not (scn.space.contains(scn.profile) and scn.space.contains(scn.profile_against)):
            raise PreconditionError("both PPE profiles must lie in the candidate space")
        if pair_marginal(scn.population, scn.issue, (c, cp)) < 1.0 - _MARGINAL_TOL:
            raise PreconditionError("PPE requires a population unanimous on c over c'")

    if axiom in {"w-pc", "s-pc"}:
        pm = pair_marginal(scn.population, scn.issue, scn.pair)
        if abs(pm - 0.5) <= _MARGINAL_TOL:
            raise VacuityError(
                "population is exactly uniform on the pair; the convergence premise is unmet"
            )

    if axiom in {"w-piia", "s-piia"}:
        if scn.population_b is None:
            raise InvalidArgumentError("PIIA needs a second population")
        pm_a = pair_marginal(scn.population, scn.issue, scn.pair)
        pm_b = pair_marginal(scn.population_b, scn.issue, scn.pair)
        if abs(pm_a - pm_b) > _MARGINAL_TOL:
            raise PreconditionError(
                f"pair marginals differ between populations ({pm_a} vs {pm_b})"
            )
        if abs(pm_a - 0.5) <= _MARGINAL_TOL:
            raise VacuityError(
                "shared pair marginal is exactly 0.5; tie behavior is undefined"
            )


def _failure_checker(scn: Scenario) -> Callable:
    axiom = scn.axiom
    issue = scn.issue
    if axiom == "ppe":
        against = scn.profile_against

        def check(chosen: Profile, chosen_b=None) -> bool:
            return chosen == against

        return check
    pair = tuple(scn.pair)
    if axiom in {"w-pc", "s-pc"}:
        pm = pair_marginal(scn.population, issue, pair)
        target = pair if pm > 0.5 else (pair[1], pair[0])

        def check(chosen: Profile, chosen_b=None) -> bool:
            return tuple(restrict(chosen(issue), pair).subset) != target

        return check

    def check(chosen: Profile, chosen_b=None) -> bool:
        return restrict(chosen(issue), pair) != restrict(chosen_b(issue), pair)

    return check


# -- the estimator ---------------------------------------------------------


def estimate_axiom(
    scn: Scenario,
    sizes: Sequence[int],
    trials_per_size: int,
    seed: int,
) -> DecayCurve:
    """Failure-rate curve of the scenario's axiom event over sample sizes."""
    if not sizes or list(sizes) != sorted(set(sizes)):
        raise InvalidArgumentError("sizes must be nonempty and strictly increasing")
    if trials_per_size < 1:
        raise InvalidArgumentError("need at least one trial per size")
    _validate_scenario(scn)
    check = _failure_checker(scn)
    paired = scn.axiom in {"w-piia", "s-piia"}

    cells_a, probs_a = _cells(scn.saliency, scn.population)
    if paired:
        cells_b, probs_b = _cells(scn.saliency, scn.population_b)

    points = []
    for size_index, size in enumerate(sizes):
        rng_a = derive_rng(seed, size_index, 0)
        rows_a = rng_a.multinomial(size, probs_a, size=trials_per_size)
        if paired:
            # PIIA quantifies over distributions, not couplings: independent streams
            rng_b = derive_rng(seed, size_index, 1)
            rows_b = rng_b.multinomial(size, probs_b, size=trials_per_size)
        failures = 0
        for t in range(trials_per_size):
            chosen = scn.mechanism(_counts_from_row(cells_a, rows_a[t]), size)
            if paired:
                chosen_b = scn.mechanism(_counts_from_row(cells_b, rows_b[t]), size)
                failures += check(chosen, chosen_b)
            else:
                failures += check(chosen)
        points.append(DecayPoint(size=int(size), trials=trials_per_size, failures=failures))

    fit = fit_decay([(p.size, p.rate) for p in points])
    return DecayCurve(
        points=tuple(points),
        fit=fit,
        issue_weight=scn.saliency(scn.issue),
    )


# -- scenario constructors -------------------------------------------------


def condorcet_scenario(
    space: CandidateSpace,
    mechanism: MechanismFn,
    outcomes: tuple = (0, 1, 2),
) -> Scenario:
    """The 2/9 - 4/9 - 1/3 three-coalition mixture on a single 3-outcome issue."""
    if space.issue_space.n != 3:
        raise InvalidArgumentError("the Condorcet mixture needs N = 3")
    if len(space.issue_space.issue_ids) != 1:
        raise InvalidArgumentError("the Condorcet mixture is a single-issue scenario")
    issue = space.issue_space.issue_ids[0]
    u, v, w = outcomes
    # masses 2/9, 4/9, 1/3, written so the pairwise sums land exactly on the
    # float values of 2/3 (u over v) and 7/9 (w over u) despite rounding
    m1 = 2.0 / 9.0
    m2 = 2.0 / 3.0 - m1
    m3 = 7.0 / 9.0 - m2
    coalitions = [
        (m1, LinearOrder((u, v, w))),
        (m2, LinearOrder((w, u, v))),
        (m3, LinearOrder((v, w, u))),
    ]
    population = mix(
        SubpopulationMixture(
            tuple(
                (mass, MarginalPopulation({issue: {order: 1.0}}))
                for mass, order in coalitions
            )
        )
    )
    saliency = SaliencyDistribution({issue: 1.0})
    return Scenario(
        saliency=saliency,
        population=population,
        space=space,
        mechanism=mechanism,
        issue=issue,
    )


@dataclass(frozen=True)
class CycleViolationReport:
    majorities: tuple  # strict pairwise majorities (a, b) meaning a beats b
    per_size: tuple  # (size, trials, min_violations, violation_histogram dict)

    def always_violates(self) -> bool:
        return all(min_v >= 1 for _, _, min_v, _ in self.per_size)


def cycle_violation_demo(
    scn: Scenario,
    sizes: Sequence[int],
    trials_per_size: int,
    seed: int,
) -> CycleViolationReport:
    """Show that every output order contradicts some strict pairwise majority.

    Requires cyclic pairwise marginals (a directed majority 3-cycle); a
    linear order cannot contain a 3-cycle, so at least one majority loses in
    every trial.
    """
    issue = scn.issue
    n = scn.space.issue_space.n
    majorities = tuple(
        (a, b)
        for a in range(n)
        for b in range(n)
        if a != b and pair_marginal(scn.population, issue, (a, b)) > 0.5
    )
    beats = {a: {b for (x, b) in majorities if x == a} for a in range(n)}
    has_cycle = any(
        b in beats.get(a, ()) and c in beats.get(b, ()) and a in beats.get(c, ())
        for a in range(n)
        for b in range(n)
        for c in range(n)
        if len({a, b, c}) == 3
    )
    if not has_cycle:
        raise PreconditionError("pairwise marginals are not cyclic; nothing to demonstrate")

    cells, probs = _cells(scn.saliency, scn.population)
    per_size = []
    for size_index, size in enumerate(sizes):
        rng = derive_rng(seed, size_index, 0)
        rows = rng.multinomial(size, probs, size=trials_per_size)
        histogram: dict = {}
        min_violations = None
        for t in range(trials_per_size):
            chosen = scn.mechanism(_counts_from_row(cells, rows[t]), size)
            order = chosen(issue)
            violated = sum(1 for a, b in majorities if order.prefers(b, a))
            histogram[violated] = histogram.get(violated, 0) + 1
            min_violations = violated if min_violations is None else min(min_violations, violated)
        per_size.append((int(size), trials_per_size, min_violations, histogram))
    return CycleViolationReport(majorities=majorities, per_size=tuple(per_size))


def decisiveness_probe(
    coalition_mass: float,
    pair: tuple,
    space: CandidateSpace,
    mechanism: MechanismFn,
    sizes: Sequence[int],
    trials_per_size: int,
    seed: int,
    setup: str = "weak",
    third: int | None = None,
) -> DecayCurve:
    """Failure curve of the coalition's pair prevailing against its complement.

    ``setup="weak"`` pits the coalition (unanimous on c over c') against a
    complement unanimous on the swapped order.  ``setup="field-expansion"``
    uses the three-outcome configuration: coalition unanimous on c > third > c',
    complement on third > c' > c.
    """
    if not (0 < coalition_mass <= 1):
        raise InvalidArgumentError("coalition mass must lie in (0, 1]")
    if len(space.issue_space.issue_ids) != 1:
        raise InvalidArgumentError("decisiveness probes are single-issue scenarios")
    issue = space.issue_space.issue_ids[0]
    n = space.issue_space.n
    c, cp = pair
    rest = [x for x in range(n) if x not in (c, cp)]
    if setup == "weak":
        coalition_order = LinearOrder(tuple([c, cp] + rest))
        complement_order = LinearOrder(tuple([cp, c] + rest))
    elif setup == "field-expansion":
        if third is None or third in (c, cp):
            raise InvalidArgumentError("field-expansion setup needs a distinct third outcome")
        others = [x for x in range(n) if x not in (c, cp, third)]
        coalition_order = LinearOrder(tuple([c, third, cp] + others))
        complement_order = LinearOrder(tuple([third, cp, c] + others))
    else:
        raise InvalidArgumentError(f"unknown setup {setup!r}")

    if coalition_mass == 1.0:
        population = MarginalPopulation({issue: {coalition_order: 1.0}})
    else:
        population = mix(
            SubpopulationMixture(
                (
                    (coalition_mass, MarginalPopulation({issue: {coalition_order: 1.0}})),
                    (1.0 - coalition_mass, MarginalPopulation({issue: {complement_order: 1.0}})),
                )
            )
        )
    saliency = SaliencyDistribution({issue: 1.0})
    cells, probs = _cells(saliency, population)
    points = []
    for size_index, size in enumerate(sizes):
        rng = derive_rng(seed, size_index, 0)
        rows = rng.multinomial(size, probs, size=trials_per_size)
        failures = 0
        for t in range(trials_per_size):
            chosen = mechanism(_counts_from_row(cells, rows[t]), size)
            failures += not chosen(issue).prefers(c, cp)
        points.append(DecayPoint(size=int(size), trials=trials_per_size, failures=failures))
    fit = fit_decay([(p.size, p.rate) for p in points])
    return DecayCurve(points=tuple(points), fit=fit, issue_weight=1.0)


# -- decay fitting ---------------------------------------------------------


def fit_decay(points: Sequence[tuple]) -> FitResult:
    """Least-squares fit of log(failure rate) against sample size.

    Points with rate 0 or 1 carry no log information and are excluded but
    counted in the diagnostics; fewer than 3 usable points yields the
    "saturated" verdict instead of a fit.
    """
    usable = [(size, rate) for size, rate in points if 0.0 < rate < 1.0]
    n_zero = sum(1 for _, rate in points if rate == 0.0)
    n_one = sum(1 for _, rate in points if rate == 1.0)
    if len(usable) < 3:
        return FitResult(verdict="saturated", n_used=len(usable), n_zero=n_zero, n_one=n_one)
    xs = np.array([size for size, _ in usable], dtype=float)
    ys = np.array([log(rate) for _, rate in usable])
    slope, intercept = np.polyfit(xs, ys, 1)
    predicted = slope * xs + intercept
    ss_res = float(((ys - predicted) ** 2).sum())
    ss_tot = float(((ys - ys.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return FitResult(
        verdict="fit",
        alpha=float(-slope),
        r2=r2,
        n_used=len(usable),
        n_zero=n_zero,
        n_one=n_one,
    )


def decay_verdict(curve: DecayCurve) -> str:
    """Operational reading of the exponential-decay claim.

    "pass-saturated" when failures are (almost) all zero, "pass-decay" when
    nonzero rates decrease within confidence noise and the log-linear fit has
    r^2 >= 0.9, otherwise "fail".
    """
    if all(p.failures == 0 for p in curve.points):
        return "pass-saturated"
    if curve.fit.verdict == "saturated":
        # too few nonzero points to fit; accept if the tail has died out
        if curve.points[-1].failures == 0:
            return "pass-saturated"
        nonzero = [p for p in curve.points if p.failures > 0]
        if len(nonzero) >= 2 and nonzero[-1].rate >= nonzero[0].rate:
            return "fail"
        return "pass-saturated"
    decreasing = True
    previous = None
    for p in curve.points:
        if p.rate == 0.0:
            continue
        if previous is not None:
            if p.rate >= previous.rate + previous.ci_half_width + p.ci_half_width:
                decreasing = False
        previous = p
    if decreasing and curve.fit.r2 is not None and curve.fit.r2 >= 0.9:
        return "pass-decay"
    return "fail"
