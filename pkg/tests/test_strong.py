import random

import pytest

from ampcg import (
    accelerator_labels,
    enumerate_class,
    essential_graph,
    label_strong,
    node_names,
    random_chain_graph,
    strong_labeling,
    strong_oracle,
    unmarked_skeleton,
)
from ampcg.errors import InvalidStateError

from .support import cg


def _pipeline(g):
    result = essential_graph(g)
    return result, label_strong(result.marks, result.separators, check_invariants=True)


class TestLabelStrong:
    def test_collider_with_tail_has_no_strong_edges(self):
        g = cg("ABCD", [("A", "B"), ("C", "B")], [("C", "D")])
        _, lab = _pipeline(g)
        assert not lab.strong_directed and not lab.strong_undirected

    def test_collider_with_child(self):
        g = cg("ABCD", [("A", "C"), ("B", "C"), ("C", "D")])
        _, lab = _pipeline(g)
        assert lab.strong_directed == {("C", "D")}
        assert not lab.strong_undirected

    def test_two_step_disjunction(self):
        g = cg("ABCDE", [("A", "C"), ("B", "C"), ("C", "D"), ("D", "E")])
        _, lab = _pipeline(g)
        assert lab.strong_directed == {("C", "D"), ("D", "E")}

    def test_four_cycle_all_strong_undirected(self):
        g = cg("ABCD", [], [("A", "B"), ("B", "C"), ("C", "D"), ("A", "D")])
        _, lab = _pipeline(g)
        assert lab.strong_undirected == g.undirected
        assert not lab.strong_directed

    def test_requires_settled_marks(self):
        g = cg("ABCD", [("A", "C"), ("B", "C"), ("C", "D")])
        result = essential_graph(g)
        # one propagation consequent is missing, so the marks are not settled
        unsettled = unmarked_skeleton(g).with_blocks([("A", "C"), ("B", "C")])
        with pytest.raises(InvalidStateError):
            label_strong(unsettled, result.separators)

    def test_accelerated_mode_matches_plain_mode(self):
        rnd = random.Random(23)
        for _ in range(120):
            g = random_chain_graph(rnd, node_names(rnd.randint(2, 6)))
            result = essential_graph(g)
            plain = label_strong(result.marks, result.separators)
            fast = label_strong(result.marks, result.separators, use_accelerator=True)
            assert plain == fast

    def test_matches_oracle_on_random_graphs(self):
        rnd = random.Random(29)
        for _ in range(120):
            g = random_chain_graph(rnd, node_names(rnd.randint(2, 5)),
                                   p_undirected=0.3, p_directed=0.3)
            _, lab = _pipeline(g)
            summary = strong_oracle(enumerate_class(g))
            assert lab.strong_directed == summary.directed
            assert lab.strong_undirected == summary.undirected


class TestAccelerator:
    def test_s1_instance(self):
        g = cg("ABCD", [("A", "C"), ("B", "C"), ("C", "D")])
        result = essential_graph(g)
        assert accelerator_labels(result.marks) == {("C", "D")}

    def test_rules_alone_miss_the_disjunctive_step(self):
        g = cg("ABCDE", [("A", "C"), ("B", "C"), ("C", "D"), ("D", "E")])
        result = essential_graph(g)
        rules_only = accelerator_labels(result.marks)
        full = label_strong(result.marks, result.separators).strong_directed
        assert rules_only == {("C", "D")}
        assert rules_only < full  # strict: D->E needs the re-blocking check

    def test_s4_propagates_known_labels(self):
        g = cg("ABCDE", [("A", "C"), ("B", "C"), ("C", "D"), ("D", "E")])
        result = essential_graph(g)
        propagated = accelerator_labels(result.marks, known_strong={("C", "D")})
        assert ("D", "E") in propagated

    def test_s2_uses_double_blocks(self):
        # strong undirected square with a fifth node pointing in:
        # X -> A on the 4-cycle A--B--C--D--A forces X -> A in every member
        g = cg(
            "ABCDX",
            [("X", "A")],
            [("A", "B"), ("B", "C"), ("C", "D"), ("A", "D")],
        )
        result = essential_graph(g)
        assert ("X", "A") in accelerator_labels(result.marks)
        summary = strong_oracle(enumerate_class(g))
        assert ("X", "A") in summary.directed

    def test_empty_marks_yield_nothing(self):
        g = cg("ABC", [], [("A", "B"), ("B", "C")])
        result = essential_graph(g)
        assert accelerator_labels(result.marks) == frozenset()

    def test_soundness_on_random_graphs(self):
        rnd = random.Random(31)
        for _ in range(150):
            g = random_chain_graph(rnd, node_names(rnd.randint(2, 6)))
            result = essential_graph(g)
            lab = label_strong(result.marks, result.separators)
            assert accelerator_labels(result.marks) <= lab.strong_directed
            assert (
                accelerator_labels(result.marks, known_strong=lab.strong_directed)
                <= lab.strong_directed
            )


def test_strong_labeling_convenience_matches_pipeline():
    g = cg("ABCD", [("A", "C"), ("B", "C"), ("C", "D")])
    result, lab = _pipeline(g)
    assert strong_labeling(g) == lab
    assert strong_labeling(g, use_accelerator=True) == lab
