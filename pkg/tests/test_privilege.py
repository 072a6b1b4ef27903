import itertools

import pytest

from repsoc import (
    CandidateSpace,
    CapacityError,
    CyclicityError,
    InvalidArgumentError,
    IssueSpace,
    LinearOrder,
    PartialOrder,
    Profile,
    all_linear_orders,
    build_privilege_graph,
    check_path_privilege,
    is_cyclically_privileged,
    is_privileged,
    scc_condensation,
    synthesize_acyclic,
)
from repsoc.privilege import PrivilegeGraph, to_dot
from tests.conftest import all_partial_sequences


def lo(text):
    return LinearOrder.from_string(text)


def graph(edges, n=3, issue="i"):
    return PrivilegeGraph(issue=issue, n=n, edges=frozenset(edges))


class TestIsPrivileged:
    def test_full_space_everything_privileged(self):
        space = CandidateSpace.full(IssueSpace(("i", "j"), 3))
        for seq in all_partial_sequences(3):
            assert is_privileged(space, "i", PartialOrder(seq, 3))

    def test_singleton_space(self):
        space = CandidateSpace.explicit(
            [Profile({"i": lo("0>1>2")})], IssueSpace(("i",), 3)
        )
        assert is_privileged(space, "i", PartialOrder((0, 1), 3))
        assert is_privileged(space, "i", PartialOrder((1, 2), 3))
        assert is_privileged(space, "i", PartialOrder((0, 2), 3))
        assert not is_privileged(space, "i", PartialOrder((1, 0), 3))

    def test_errors(self):
        space = CandidateSpace.full(IssueSpace(("i",), 3))
        with pytest.raises(InvalidArgumentError):
            is_privileged(space, "missing", PartialOrder((0, 1), 3))
        with pytest.raises(InvalidArgumentError):
            is_privileged(space, "i", PartialOrder((0,), 3))
        with pytest.raises(InvalidArgumentError):
            is_privileged(space, "i", PartialOrder((0, 1), 4))

    def test_outcome_count_cap(self):
        space = CandidateSpace.explicit(
            [Profile({"i": LinearOrder(tuple(range(6)))})], IssueSpace(("i",), 6)
        )
        with pytest.raises(CapacityError):
            is_privileged(space, "i", PartialOrder((0, 1), 6))


class TestBuildGraph:
    def test_full_space_complete_digraph(self):
        space = CandidateSpace.full(IssueSpace(("i",), 3))
        g = build_privilege_graph(space, "i")
        assert len(g.edges) == 6
        assert g.is_transitive()

    def test_singleton_space_agreeing_pairs(self):
        space = CandidateSpace.explicit(
            [Profile({"i": lo("0>1>2")})], IssueSpace(("i",), 3)
        )
        g = build_privilege_graph(space, "i")
        assert g.edges == frozenset({(0, 1), (1, 2), (0, 2)})

    def test_product_independent_block_is_complete(self):
        """A fully free factor's issue keeps a complete privilege graph even
        when the other block is heavily constrained."""
        factor_ab = [
            Profile({"A": lo("0>1>2"), "B": lo("0>1>2")}),
            Profile({"A": lo("1>0>2"), "B": lo("2>1>0")}),
        ]
        factor_c = [Profile({"C": o}) for o in all_linear_orders(3)]
        space = CandidateSpace.product(
            ((("A", "B"), factor_ab), (("C",), factor_c)),
            IssueSpace(("A", "B", "C"), 3),
        )
        g = build_privilege_graph(space, "C")
        assert len(g.edges) == 6
        assert is_cyclically_privileged(g)
        # ...and every longer ordering on the free issue is privileged too
        for seq in all_partial_sequences(3):
            assert is_privileged(space, "C", PartialOrder(seq, 3))

    def test_validation(self):
        with pytest.raises(InvalidArgumentError):
            graph({(0, 0)})
        with pytest.raises(InvalidArgumentError):
            graph({(0, 5)})


class TestCondensation:
    def test_complete_digraph_single_scc(self):
        cond = scc_condensation(graph({(a, b) for a in range(3) for b in range(3) if a != b}))
        assert cond.scc_members == ((0, 1, 2),)

    def test_total_order(self):
        cond = scc_condensation(graph({(0, 1), (1, 2), (0, 2)}))
        assert cond.scc_members == ((0,), (1,), (2,))
        assert [cond.scc_members[i] for i in cond.topo_order] == [(0,), (1,), (2,)]

    def test_pair_scc_then_singleton(self):
        cond = scc_condensation(graph({(0, 1), (1, 0), (0, 2), (1, 2)}))
        assert cond.scc_members == ((0, 1), (2,))
        assert [cond.scc_members[i] for i in cond.topo_order] == [(0, 1), (2,)]

    def test_empty_graph_all_singletons(self):
        cond = scc_condensation(graph(set()))
        assert cond.scc_members == ((0,), (1,), (2,))


class TestCyclicity:
    def test_complete_digraph_true(self):
        assert is_cyclically_privileged(
            graph({(a, b) for a in range(3) for b in range(3) if a != b})
        )

    def test_two_cycle_only_false(self):
        assert not is_cyclically_privileged(graph({(0, 1), (1, 0)}))

    def test_dag_false(self):
        assert not is_cyclically_privileged(graph({(0, 1), (1, 2), (0, 2)}))


class TestPathCondition:
    def test_direct_edge(self):
        assert check_path_privilege(graph({(0, 1)}), PartialOrder((0, 1), 3))

    def test_complete_digraph_any_order(self):
        g = graph({(a, b) for a in range(3) for b in range(3) if a != b})
        for seq in all_partial_sequences(3):
            assert check_path_privilege(g, PartialOrder(seq, 3))

    def test_no_reverse_path_in_chain(self):
        assert not check_path_privilege(
            graph({(0, 1), (1, 2), (0, 2)}), PartialOrder((2, 0), 3)
        )


class TestSynthesize:
    def test_total_order_gives_singleton_factor(self):
        plan = synthesize_acyclic({"i": graph({(0, 1), (1, 2), (0, 2)})})
        assert plan.factor_size("i") == 1
        assert plan.issue_plans["i"].factor == (lo("0>1>2"),)

    def test_pair_scc_gives_two_orderings(self):
        plan = synthesize_acyclic({"i": graph({(0, 1), (1, 0), (0, 2), (1, 2)})})
        assert set(plan.issue_plans["i"].factor) == {lo("0>1>2"), lo("1>0>2")}

    def test_two_issue_product(self):
        edges = {(0, 1), (1, 0), (0, 2), (1, 2)}
        plan = synthesize_acyclic({"i": graph(edges), "j": graph(edges, issue="j")})
        assert plan.space.size() == 4

    def test_cyclic_graph_rejected(self):
        cyclic = graph({(a, b) for a in range(3) for b in range(3) if a != b})
        with pytest.raises(CyclicityError):
            synthesize_acyclic({"i": cyclic})

    def test_non_transitive_rejected(self):
        with pytest.raises(InvalidArgumentError):
            synthesize_acyclic({"i": graph({(0, 1), (1, 2)})})

    def test_synthesized_graph_is_supergraph(self):
        for edges in [
            {(0, 1), (1, 2), (0, 2)},
            {(0, 1), (1, 0), (0, 2), (1, 2)},
            {(1, 2), (2, 1)},
            set(),
        ]:
            g = graph(edges)
            plan = synthesize_acyclic({"i": g})
            produced = build_privilege_graph(plan.space, "i")
            assert g.edges <= produced.edges

    def test_custom_orientation(self):
        plan = synthesize_acyclic(
            {"i": graph({(1, 2), (2, 1)})},
            orientations={"i": {frozenset({1, 2}): (2, 1)}},
        )
        # the canonical (no-flip) first factor ordering uses the override
        assert plan.issue_plans["i"].factor[0] == lo("0>2>1")


def every_small_space():
    issue_space = IssueSpace(("i",), 3)
    orders = list(all_linear_orders(3))
    for size in range(1, 7):
        for subset in itertools.combinations(orders, size):
            yield CandidateSpace.explicit(
                [Profile({"i": o}) for o in subset], issue_space
            )


class TestStructuralLaws:
    def test_concatenation_closure_exhaustive(self):
        """Privileged o: a≻…≻b and o': b≻…≻c concatenate to a privileged
        a≻…≻c, on every nonempty single-issue space with three outcomes."""
        for space in every_small_space():
            privileged = {
                seq: is_privileged(space, "i", PartialOrder(seq, 3))
                for seq in all_partial_sequences(3)
            }
            for o, op in itertools.product(all_partial_sequences(3), repeat=2):
                if o[-1] != op[0] or set(o) & set(op) != {o[-1]}:
                    continue
                joined = o + op[1:]
                if len(joined) > 3:
                    continue
                if privileged[o] and privileged[op]:
                    assert privileged[joined], (space.profiles, o, op)

    def test_pair_privilege_is_not_transitive(self):
        """Privileged (2,1) and (1,0) do not force (2,0): re-sorting one pair
        at a time can move the middle outcome, so the endpoint pair has no
        sorting certificate of its own.  This pins the known counterexample."""
        space = CandidateSpace.explicit(
            [Profile({"i": lo(t)}) for t in ("1>0>2", "2>0>1", "2>1>0")],
            IssueSpace(("i",), 3),
        )
        assert is_privileged(space, "i", PartialOrder((2, 1), 3))
        assert is_privileged(space, "i", PartialOrder((1, 0), 3))
        assert not is_privileged(space, "i", PartialOrder((2, 0), 3))
        g = build_privilege_graph(space, "i")
        assert g.edges == frozenset({(2, 1), (1, 0)})
        assert not g.is_transitive()
        # ...and so path-reachability over-approximates pairwise privilege here
        assert check_path_privilege(g, PartialOrder((2, 0), 3))

    def test_path_condition_certifies_along_edges(self):
        """Where the path retraces actual edges, concatenation makes the
        full visited sequence privileged; spot-check the edge sequences
        themselves on every small space."""
        for space in every_small_space():
            g = build_privilege_graph(space, "i")
            for u, v in g.edges:
                assert is_privileged(space, "i", PartialOrder((u, v), 3))
            for u, v in g.edges:
                for vv, w in g.edges:
                    if vv == v and w not in (u, v):
                        assert is_privileged(space, "i", PartialOrder((u, v, w), 3))


def test_to_dot():
    text = to_dot(graph({(0, 1)}))
    assert "digraph" in text and "0 -> 1;" in text
