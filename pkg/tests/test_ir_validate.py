"""Validator: the clean fixture passes; each seeded defect is caught."""

import copy

import pytest

from flowcopilot.ir import Edge, parse_json, validate


@pytest.fixture()
def t2i(t2i_path):
    return parse_json(t2i_path.read_bytes())


def _error_kinds(report):
    return [i.kind for i in report.issues if i.severity == "error"]


def test_clean_fixture_passes(t2i, kb):
    report = validate(t2i, kb)
    assert report.passed
    assert _error_kinds(report) == []


def test_missing_node_with_install_hint(t2i, kb):
    # KSampler deleted from the registry; KSamplerAdvanced remains as the
    # near-match and carries the repo URL.
    ksampler_repo = kb.nodes["KSampler"].repo_url
    del kb.nodes["KSampler"]
    report = validate(t2i, kb)
    assert not report.passed
    assert _error_kinds(report) == ["missing-node"]
    issue = report.errors[0]
    assert issue.install_hint == ksampler_repo


def test_missing_required_input(t2i, kb):
    broken = copy.deepcopy(t2i)
    del broken.nodes["5"].inputs["positive"]
    report = validate(broken, kb)
    assert not report.passed
    assert _error_kinds(report) == ["missing-required-input"]
    assert "positive" in report.errors[0].detail


def test_type_mismatch_latent_into_image(t2i, kb):
    broken = copy.deepcopy(t2i)
    # SaveImage.images expects IMAGE; node 5 outputs LATENT
    broken.nodes["7"].inputs["images"] = Edge("5", 0)
    report = validate(broken, kb)
    assert not report.passed
    assert _error_kinds(report) == ["type-mismatch"]


def test_cycle_detected(t2i, kb):
    broken = copy.deepcopy(t2i)
    # feed the sampler's own output back into its latent input
    broken.nodes["4"].inputs["feedback"] = Edge("5", 0)
    report = validate(broken, kb)
    assert not report.passed
    assert "cycle" in _error_kinds(report)


def test_dangling_edge(t2i, kb):
    broken = copy.deepcopy(t2i)
    broken.nodes["6"].inputs["samples"] = Edge("99", 0)
    report = validate(broken, kb)
    assert not report.passed
    assert _error_kinds(report) == ["dangling-edge"]


def test_slot_out_of_range_is_dangling(t2i, kb):
    broken = copy.deepcopy(t2i)
    broken.nodes["6"].inputs["samples"] = Edge("5", 3)  # KSampler has 1 output
    report = validate(broken, kb)
    assert _error_kinds(report) == ["dangling-edge"]


def test_combo_out_of_range_is_warning_only(t2i, kb):
    loose = copy.deepcopy(t2i)
    loose.nodes["1"].inputs["ckpt_name"] = "not-installed.safetensors"
    report = validate(loose, kb)
    assert report.passed
    kinds = [i.kind for i in report.issues]
    assert kinds == ["combo-out-of-range"]
    assert report.issues[0].severity == "warning"


def test_unknown_extra_input_is_warning(t2i, kb):
    loose = copy.deepcopy(t2i)
    loose.nodes["5"].inputs["mystery"] = 1
    report = validate(loose, kb)
    assert report.passed
    assert [i.kind for i in report.issues] == ["unknown-input"]


def test_wildcard_type_matches_anything(kb):
    from flowcopilot.kb import NodeSpec, ParamSpec

    kb.nodes["AnySink"] = NodeSpec(
        class_type="AnySink",
        inputs=[ParamSpec(name="x", type="*")],
        outputs=[],
    )
    g = parse_json(
        '{"1":{"class_type":"EmptyLatentImage",'
        '"inputs":{"width":512,"height":512,"batch_size":1}},'
        '"2":{"class_type":"AnySink","inputs":{"x":["1",0]}}}'
    )
    assert validate(g, kb).passed


def test_unknown_class_skips_cascading_input_checks(kb):
    g = parse_json('{"1":{"class_type":"NoSuchThing","inputs":{"a":1}}}')
    report = validate(g, kb)
    assert _error_kinds(report) == ["missing-node"]


def test_pass_iff_no_errors_property(t2i, kb):
    report = validate(t2i, kb)
    assert report.passed == (len(report.errors) == 0)
    del kb.nodes["VAEDecode"]
    report2 = validate(t2i, kb)
    assert report2.passed == (len(report2.errors) == 0)
    assert not report2.passed
