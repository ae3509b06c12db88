"""Node-selection metrics against an independent multiset oracle."""

import random

import pytest

from flowcopilot.ir import NodeInstance, WorkflowGraph, node_metrics

from helpers import oracle_multiset_metrics


def graph_of(classes):
    return WorkflowGraph(
        nodes={str(i): NodeInstance(class_type=c, inputs={}) for i, c in enumerate(classes, 1)}
    )


def test_identical_graphs_score_one():
    g = graph_of(["A", "B", "C"])
    m = node_metrics(g, graph_of(["A", "B", "C"]))
    assert (m.precision, m.recall, m.f1) == (1.0, 1.0, 1.0)


def test_hand_case_two_thirds():
    # gen {A,A,B} vs ref {A,B,C}: intersection {A,B} -> matched=2,
    # P = 2/3, R = 2/3, F1 = 2PR/(P+R) = 2/3
    m = node_metrics(graph_of(["A", "A", "B"]), graph_of(["A", "B", "C"]))
    assert m.precision == pytest.approx(2 / 3)
    assert m.recall == pytest.approx(2 / 3)
    assert m.f1 == pytest.approx(2 / 3)
    assert m.gen_count == 3 and m.ref_count == 3


def test_empty_generated_graph():
    m = node_metrics(graph_of([]), graph_of(["A"]))
    assert (m.precision, m.recall, m.f1) == (0.0, 0.0, 0.0)


def test_empty_reference_graph():
    m = node_metrics(graph_of(["A"]), graph_of([]))
    assert (m.precision, m.recall, m.f1) == (0.0, 0.0, 0.0)


def test_duplicates_matter():
    # multiset: two As in gen only match one A in ref once
    m = node_metrics(graph_of(["A", "A"]), graph_of(["A"]))
    assert m.precision == pytest.approx(0.5)
    assert m.recall == 1.0


def test_symmetry_swaps_p_and_r():
    rng = random.Random(9)
    pool = list("ABCDE")
    for _ in range(50):
        a = graph_of([rng.choice(pool) for _ in range(rng.randint(0, 8))])
        b = graph_of([rng.choice(pool) for _ in range(rng.randint(1, 8))])
        m1 = node_metrics(a, b)
        m2 = node_metrics(b, a)
        assert m1.precision == m2.recall
        assert m1.recall == m2.precision
        assert m1.f1 == pytest.approx(m2.f1)


def test_random_pairs_match_independent_recomputation():
    rng = random.Random(4)
    pool = list("ABCDEFG")
    for _ in range(100):
        gen = [rng.choice(pool) for _ in range(rng.randint(0, 12))]
        ref = [rng.choice(pool) for _ in range(rng.randint(0, 12))]
        m = node_metrics(graph_of(gen), graph_of(ref))
        p, r, f1 = oracle_multiset_metrics(gen, ref)
        assert m.precision == pytest.approx(p, abs=1e-15)
        assert m.recall == pytest.approx(r, abs=1e-15)
        assert m.f1 == pytest.approx(f1, abs=1e-15)
        # multiset-match counts are integral
        assert round(m.precision * m.gen_count, 9) == int(round(m.precision * m.gen_count))
        assert round(m.recall * m.ref_count, 9) == int(round(m.recall * m.ref_count))
