"""Workflow worker: retrieval candidates, synthesis, generation eval."""

import pytest

from flowcopilot.ir import parse_code, to_code
from flowcopilot.providers import SequenceChat
from flowcopilot.retrieval import Intent
from flowcopilot.wfgen import (
    GenCase,
    SynthesisError,
    evaluate_generation,
    propose,
    synthesize,
)

from helpers import graphs_isomorphic


def test_propose_gold_description_first(deps):
    gold = deps.kb.lookup_workflow("wf-upscale")
    candidates = propose(Intent(raw=gold.description), deps)
    assert candidates
    assert candidates[0].entry_ref == "wf-upscale"
    assert candidates[0].report.passed
    assert candidates[0].missing_nodes == []
    assert candidates[0].source == "retrieved"


def test_propose_limits_to_three(deps):
    candidates = propose(Intent(raw="image"), deps)
    assert len(candidates) <= 3


def test_propose_all_candidates_exist_in_kb(deps):
    for cand in propose(Intent(raw="portrait style"), deps):
        assert cand.entry_ref in deps.kb.workflows


def test_propose_missing_node_carries_repo_url(deps):
    gold = deps.kb.lookup_workflow("wf-upscale")
    repo = deps.kb.nodes["ImageUpscaleWithModel"].repo_url
    del deps.kb.nodes["ImageUpscaleWithModel"]
    candidates = propose(Intent(raw=gold.description), deps)
    first = candidates[0]
    assert first.entry_ref == "wf-upscale"
    assert not first.report.passed
    assert len(first.missing_nodes) == 1
    assert first.missing_nodes[0]["class_type"] == "ImageUpscaleWithModel"
    assert first.missing_nodes[0]["repo_url"] == repo


def test_candidate_code_round_trips(deps):
    for cand in propose(Intent(raw="two stage high resolution"), deps):
        assert graphs_isomorphic(parse_code(cand.code, deps.kb), cand.graph)


def test_synthesize_from_scripted_provider(deps):
    code = (
        'a = CheckpointLoaderSimple(ckpt_name="sd15.safetensors")\n'
        'b = CLIPTextEncode(text="x", clip=a[1])\n'
        'c = CLIPTextEncode(text="y", clip=a[1])\n'
    )
    deps.providers.chat = SequenceChat([code], offline=True)
    cand = synthesize(Intent(raw="anything"), deps)
    assert cand.source == "synthesized"
    assert len(cand.graph.nodes) == 3


def test_synthesize_repair_retry(deps):
    good = 'a = CheckpointLoaderSimple(ckpt_name="sd15.safetensors")\n'
    deps.providers.chat = SequenceChat(["this is not code ???", good], offline=True)
    cand = synthesize(Intent(raw="x"), deps)
    assert len(cand.graph.nodes) == 1


def test_synthesize_unparseable_after_retry(deps):
    deps.providers.chat = SequenceChat(["garbage ???", "more garbage ???"], offline=True)
    with pytest.raises(SynthesisError):
        synthesize(Intent(raw="x"), deps)


def test_synthesize_unregistered_class_fails_validation(deps):
    code = "a = TotallyUnknownNode(x=1)\n"
    deps.providers.chat = SequenceChat([code], offline=True)
    cand = synthesize(Intent(raw="x"), deps)
    assert not cand.report.passed
    assert [i["class_type"] for i in cand.missing_nodes] == ["TotallyUnknownNode"]


def test_propose_with_synthesis_appends_last(deps):
    code = 'a = CheckpointLoaderSimple(ckpt_name="sd15.safetensors")\n'
    deps.providers.chat = SequenceChat([code], offline=True)
    candidates = propose(Intent(raw="image"), deps, synthesize_extra=True)
    assert candidates[-1].source == "synthesized"
    assert all(c.source == "retrieved" for c in candidates[:-1])


def _echo_cases(deps, n=5):
    ids = sorted(deps.kb.workflows)[:n]
    cases = [
        GenCase(intent=f"case {i}", reference=deps.kb.workflows[wid].graph)
        for i, wid in enumerate(ids)
    ]
    replies = [to_code(c.reference, deps.kb) for c in cases]
    return cases, replies


def test_evaluate_generation_echo_oracle(deps):
    cases, replies = _echo_cases(deps)
    deps.providers.chat = SequenceChat(replies, offline=True)
    report = evaluate_generation(cases, deps)
    assert report.pass_rate == 1.0
    assert report.precision == 1.0 and report.recall == 1.0 and report.f1 == 1.0
    assert report.failures == 0


def test_evaluate_generation_empty_output(deps):
    cases, _ = _echo_cases(deps, n=3)
    deps.providers.chat = SequenceChat([""], offline=True)
    report = evaluate_generation(cases, deps)
    assert report.pass_rate == 0.0
    assert report.avg_nodes == 0.0
    assert report.failures == 3


def test_evaluate_generation_means_match_hand_recomputation(deps):
    # 2 perfect echoes + 1 failure: hand-computed means over 3 cases
    cases, replies = _echo_cases(deps, n=3)
    deps.providers.chat = SequenceChat(
        [replies[0], "???", "???", replies[2]], offline=True
    )
    report = evaluate_generation(cases, deps)
    assert report.total == 3
    assert report.failures == 1
    assert report.pass_rate == pytest.approx(2 / 3)
    assert report.f1 == pytest.approx(2 / 3)
    expected_nodes = (
        len(cases[0].reference.nodes) + 0 + len(cases[2].reference.nodes)
    ) / 3
    assert report.avg_nodes == pytest.approx(expected_nodes)


def test_evaluate_generation_requires_cases(deps):
    with pytest.raises(ValueError):
        evaluate_generation([], deps)
