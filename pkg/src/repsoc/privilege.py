"""Privileged orderings, privilege graphs, condensation, and acyclic synthesis.

An ordering over a subset of an issue's outcomes is privileged when every
candidate profile that can be re-sorted into agreement with it (by permuting
only that subset, only on that issue) stays inside the candidate space.  The
privilege graph collects the binary privileged orderings of one issue; its
strongly connected components drive both the cyclicity test and the
constructive synthesis of candidate spaces from acyclic graphs.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Mapping

from .errors import CapacityError, CyclicityError, InvalidArgumentError
from .orders import (
    LinearOrder,
    PartialOrder,
    Permutation,
    Profile,
    apply_local_permutation,
)
from .population import IssueSpace
from .spaces import CandidateSpace, all_linear_orders

__all__ = [
    "DEFAULT_PRIVILEGE_CAP",
    "PrivilegeGraph",
    "Condensation",
    "IssuePlan",
    "AcyclicPlan",
    "is_privileged",
    "build_privilege_graph",
    "scc_condensation",
    "is_cyclically_privileged",
    "check_path_privilege",
    "synthesize_acyclic",
    "to_dot",
]

DEFAULT_PRIVILEGE_CAP = 10**6
_MAX_N = 5


@dataclass(frozen=True)
class PrivilegeGraph:
    """Digraph over one issue's outcomes; edge (u, v) means u>v is privileged."""

    issue: object
    n: int
    edges: frozenset

    def __post_init__(self):
        edges = frozenset((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        for u, v in edges:
            if u == v:
                raise InvalidArgumentError("privilege graph has no self-loops")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidArgumentError(f"edge ({u},{v}) out of range for n={self.n}")

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def successors(self, u: int) -> set:
        return {v for (a, v) in self.edges if a == u}

    def is_transitive(self) -> bool:
        return all(
            (u, w) in self.edges
            for (u, v) in self.edges
            for (vv, w) in self.edges
            if v == vv and u != w
        )

    def edge_list(self) -> str:
        return "\n".join(f"{u} {v}" for u, v in sorted(self.edges))


@dataclass(frozen=True)
class Condensation:
    """SCC partition of a privilege graph plus its DAG and a topological order."""

    scc_members: tuple  # tuple of sorted member tuples, ordered by smallest member
    dag_edges: frozenset  # edges between SCC indices
    topo_order: tuple  # SCC indices, deterministic


def is_privileged(
    space: CandidateSpace,
    issue,
    o: PartialOrder,
    cap: int = DEFAULT_PRIVILEGE_CAP,
) -> bool:
    """Exact brute-force privileged-ordering verdict.

    Extensions of ``o`` range over all completions on ``issue``; on the
    remaining issues only projections of the space's members need checking,
    since any other assignment makes both memberships in the defining
    implication false.
    """
    n = space.issue_space.n
    if issue not in space.issue_space:
        raise InvalidArgumentError(f"unknown issue {issue!r}")
    if len(o) < 2:
        raise InvalidArgumentError("a privileged-ordering candidate needs >= 2 outcomes")
    if o.n != n:
        raise InvalidArgumentError(f"partial order over n={o.n}, space has n={n}")
    if n > _MAX_N:
        raise CapacityError(f"privilege oracle limited to n <= {_MAX_N}, got {n}", cap=_MAX_N)
    if space.variant == "full":
        return True
    if space.variant == "product":
        block_issues, factor = space.block_of(issue)
        sub_space = CandidateSpace.explicit(factor, IssueSpace(block_issues, n))
        return is_privileged(sub_space, issue, o, cap=cap)

    members = set(space.profiles)
    other_issues = [j for j in space.issue_space.issue_ids if j != issue]
    if other_issues:
        projections = {
            Profile({j: profile(j) for j in other_issues}) for profile in members
        }
    else:
        projections = {None}
    completions = [order for order in all_linear_orders(n) if o.extends(order)]
    subset = sorted(o.subset)
    perms = [
        Permutation.from_subset_order(n, subset, images)
        for images in itertools.permutations(subset)
        if tuple(images) != tuple(subset)
    ]
    work = len(projections) * len(completions) * (len(perms) + 1)
    if work > cap:
        raise CapacityError(f"privilege check needs {work} evaluations, cap is {cap}", cap=cap)

    for projection in projections:
        for completion in completions:
            if projection is None:
                extension = Profile({issue: completion})
            else:
                assignment = dict(projection.items())
                assignment[issue] = completion
                extension = Profile(assignment)
            if extension in members:
                continue
            for sigma in perms:
                if apply_local_permutation(extension, issue, sigma) in members:
                    return False
    return True


def build_privilege_graph(
    space: CandidateSpace,
    issue,
    cap: int = DEFAULT_PRIVILEGE_CAP,
) -> PrivilegeGraph:
    """Edge (u, v) present iff the binary ordering u>v is privileged."""
    n = space.issue_space.n
    edges = {
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and is_privileged(space, issue, PartialOrder((u, v), n), cap=cap)
    }
    return PrivilegeGraph(issue=issue, n=n, edges=frozenset(edges))


def _reachable(graph: PrivilegeGraph) -> list:
    """reach[u] = set of vertices reachable from u via >= 1 edge."""
    succ = {u: graph.successors(u) for u in range(graph.n)}
    reach = []
    for start in range(graph.n):
        seen: set = set()
        stack = list(succ[start])
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(succ[v] - seen)
        reach.append(seen)
    return reach


def scc_condensation(graph: PrivilegeGraph) -> Condensation:
    """SCC partition with a deterministic (smallest-member ascending) topo order."""
    reach = _reachable(graph)
    assigned = {}
    members = []
    for u in range(graph.n):
        if u in assigned:
            continue
        scc = [u] + [v for v in range(u + 1, graph.n) if u in reach[v] and v in reach[u]]
        idx = len(members)
        members.append(tuple(scc))
        for v in scc:
            assigned[v] = idx
    dag_edges = frozenset(
        (assigned[u], assigned[v]) for u, v in graph.edges if assigned[u] != assigned[v]
    )
    # Kahn's algorithm with a min-heap keyed by smallest member
    indegree = {i: 0 for i in range(len(members))}
    for _, b in dag_edges:
        indegree[b] += 1
    heap = [(members[i][0], i) for i in range(len(members)) if indegree[i] == 0]
    heapq.heapify(heap)
    topo = []
    while heap:
        _, i = heapq.heappop(heap)
        topo.append(i)
        for a, b in dag_edges:
            if a == i:
                indegree[b] -= 1
                if indegree[b] == 0:
                    heapq.heappush(heap, (members[b][0], b))
    return Condensation(
        scc_members=tuple(members), dag_edges=dag_edges, topo_order=tuple(topo)
    )


def is_cyclically_privileged(graph: PrivilegeGraph) -> bool:
    """True iff some SCC has 3 or more outcomes (2-cycles alone don't count)."""
    cond = scc_condensation(graph)
    return any(len(scc) >= 3 for scc in cond.scc_members)


def check_path_privilege(graph: PrivilegeGraph, o: PartialOrder) -> bool:
    """Sufficient path condition: consecutive outcomes of ``o`` connected in order."""
    reach = _reachable(graph)
    return all(
        o.subset[k + 1] in reach[o.subset[k]] for k in range(len(o.subset) - 1)
    )


# -- acyclic synthesis -----------------------------------------------------


@dataclass(frozen=True)
class IssuePlan:
    """Per-issue synthesis data: SCC blocks in topo order plus orientations."""

    topo_sccs: tuple  # SCC member tuples, in topological order
    orientations: Mapping  # frozenset({u,v}) -> canonical (u, v)
    factor: tuple  # the 2^l synthesized LinearOrders


@dataclass(frozen=True)
class AcyclicPlan:
    issue_plans: Mapping  # issue -> IssuePlan
    space: CandidateSpace

    def factor_size(self, issue) -> int:
        return len(self.issue_plans[issue].factor)


def synthesize_acyclic(
    phi: Mapping[object, PrivilegeGraph],
    orientations: Mapping | None = None,
) -> AcyclicPlan:
    """Candidate space and mechanism plan realizing acyclic privilege graphs.

    Each issue's factor holds the 2^l orderings obtained by laying out SCC
    blocks in topological order and flipping each size-2 block both ways.
    """
    if not phi:
        raise InvalidArgumentError("need at least one issue graph")
    sizes = {graph.n for graph in phi.values()}
    if len(sizes) != 1:
        raise InvalidArgumentError("all issue graphs must share one outcome count")
    n = sizes.pop()
    issue_space = IssueSpace(tuple(phi.keys()), n)

    issue_plans = {}
    blocks = []
    for issue, graph in phi.items():
        if not graph.is_transitive():
            raise InvalidArgumentError(f"privilege graph for issue {issue!r} is not transitive")
        cond = scc_condensation(graph)
        if any(len(scc) >= 3 for scc in cond.scc_members):
            raise CyclicityError(
                f"issue {issue!r} is cyclically privileged; no acyclic construction exists"
            )
        topo_sccs = tuple(cond.scc_members[idx] for idx in cond.topo_order)
        pair_sccs = [scc for scc in topo_sccs if len(scc) == 2]
        scc_orientations = {}
        for scc in pair_sccs:
            key = frozenset(scc)
            if orientations and issue in orientations and key in orientations[issue]:
                scc_orientations[key] = tuple(orientations[issue][key])
            else:
                scc_orientations[key] = (min(scc), max(scc))
        factor = []
        for flips in itertools.product((False, True), repeat=len(pair_sccs)):
            flip_of = dict(zip(pair_sccs, flips))
            ranking: list[int] = []
            for scc in topo_sccs:
                if len(scc) == 1:
                    ranking.append(scc[0])
                else:
                    u, v = scc_orientations[frozenset(scc)]
                    ranking.extend((v, u) if flip_of[scc] else (u, v))
            factor.append(LinearOrder(tuple(ranking)))
        issue_plans[issue] = IssuePlan(
            topo_sccs=topo_sccs,
            orientations=scc_orientations,
            factor=tuple(factor),
        )
        blocks.append(((issue,), [Profile({issue: order}) for order in factor]))

    space = CandidateSpace.product(blocks, issue_space)
    return AcyclicPlan(issue_plans=issue_plans, space=space)


def to_dot(graph: PrivilegeGraph) -> str:
    lines = [f'digraph "issue_{graph.issue}" {{']
    for u in range(graph.n):
        lines.append(f"  {u};")
    for u, v in sorted(graph.edges):
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines)
