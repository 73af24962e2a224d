from __future__ import annotations

import json

import pytest

import logfw.pipeline as pipeline
from logfw.cli import corpus_files, main
from logfw.errors import InstanceError, NotAHomomorphism
from logfw.instance import load, load_dict

A1 = {
    "name": "a1",
    "tags": ["toric"],
    "base": {"base": "Fq", "p": 3},
    "ring": {"variables": ["u", "v", "w"], "ideal": ["u*w - v^2"]},
    "monoid": {"ambient_rank": 2, "generators": [[1, 0], [1, 1], [1, 2]]},
    "alpha": {"e1": "u", "e2": "v", "e3": "w"},
    "expected": {"log_regular": True, "target": 2, "provenance": "hand computation"},
}

A1_TOML = """
name = "a1"
base = { base = "Fq", p = 3 }
alpha = { e1 = "u", e2 = "v", e3 = "w" }

[ring]
variables = ["u", "v", "w"]
ideal = ["u*w - v^2"]

[monoid]
ambient_rank = 2
generators = [[1, 0], [1, 1], [1, 2]]
"""


def write(tmp_path, data, name="inst.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data) if isinstance(data, dict) else data)
    return str(path)


def test_run_is_byte_stable(tmp_path, capsys):
    path = write(tmp_path, A1)
    assert main(["run", path]) == 0
    first = capsys.readouterr().out
    assert main(["run", path]) == 0
    assert capsys.readouterr().out == first
    report = json.loads(first)
    assert report["verdict"] == {"is_log_regular": True, "routes_agree": True}
    assert report["expected"]["mismatches"] == []
    assert "timings" not in report


def test_run_writes_json_and_timings(tmp_path):
    path = write(tmp_path, A1)
    out = tmp_path / "out.json"
    assert main(["run", path, "--json", str(out), "--timings"]) == 0
    report = json.loads(out.read_text())
    assert set(report["timings"]) >= {"validate", "definition", "fw"}


def test_toml_matches_json(tmp_path, capsys):
    assert main(["run", write(tmp_path, A1_TOML, "a1.toml")]) == 0
    toml_report = json.loads(capsys.readouterr().out)
    data = {k: v for k, v in A1.items() if k not in ("tags", "expected")}
    assert main(["run", write(tmp_path, data, "a1.json")]) == 0
    json_report = json.loads(capsys.readouterr().out)
    assert toml_report == json_report


@pytest.mark.parametrize(
    "patch,pointer",
    [
        ({"alpha": {"e1": "u", "e2": "v"}}, "/alpha/e3"),
        ({"alpha": {"e1": "u", "e2": "v", "e3": "w", "e4": "u"}}, "/alpha/e4"),
        ({"alpha": {"e1": "u", "e2": "v", "e3": "w^"}}, "/alpha/e3"),
        ({"base": {"base": "Fq", "p": 4}}, "/base"),
        ({"base": {"base": "Fq"}}, "/base"),
        ({"monoid": {"ambient_rank": 2, "generators": [[1, 0, 0]]}}, "/monoid/generators"),
        ({"ring": {"variables": ["u", "u"]}}, "/ring/variables"),
        ({"extra": 1}, "/"),
    ],
)
def test_input_errors_exit_1_with_pointer(tmp_path, capsys, patch, pointer):
    assert main(["run", write(tmp_path, {**A1, **patch})]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error:")
    assert pointer in err


def test_malformed_files(tmp_path, capsys):
    assert main(["run", write(tmp_path, "{not json", "bad.json")]) == 1
    assert main(["run", write(tmp_path, "x = [", "bad.toml")]) == 1
    assert main(["run", str(tmp_path / "missing.json")]) == 1
    assert main(["run", write(tmp_path, A1), "--budget", "nonsense=3"]) == 1


def test_non_homomorphism_is_an_input_error(tmp_path, capsys):
    bad = {**A1, "alpha": {"e1": "u", "e2": "v", "e3": "u + v"}}
    assert main(["run", write(tmp_path, bad)]) == 1
    assert "does not hold" in capsys.readouterr().err


def test_budget_exhaustion_exits_2(tmp_path, capsys):
    assert main(["run", write(tmp_path, A1), "--budget", "groebner_pairs=1"]) == 2


def test_route_disagreement_exits_3(tmp_path, capsys, monkeypatch):
    real = pipeline.fw_criterion_verdict

    def wrong(P):
        v = real(P)
        v.is_log_regular = not v.is_log_regular
        return v

    monkeypatch.setattr(pipeline, "fw_criterion_verdict", wrong)
    assert main(["run", write(tmp_path, A1)]) == 3
    out = json.loads(capsys.readouterr().out)
    assert out["verdict"]["is_log_regular"] is None


def test_expected_mismatch_is_listed(tmp_path, capsys):
    data = {**A1, "expected": {"log_regular": False, "dim_R": 2, "provenance": "deliberately wrong"}}
    assert main(["run", write(tmp_path, data)]) == 0
    mism = json.loads(capsys.readouterr().out)["expected"]["mismatches"]
    assert mism == [{"key": "log_regular", "expected": False, "got": True, "provenance": "deliberately wrong"}]


def test_corpus_filter_and_emit(tmp_path, capsys):
    emit = tmp_path / "pres"
    assert main(["corpus", "--filter", "toric", "--emit-presentations", str(emit)]) == 0
    out = json.loads(capsys.readouterr().out)
    names = [r["name"] for r in out["reports"]]
    assert names and all("toric" in r["tags"] for r in out["reports"])
    assert out["summary"]["agree"] == len(names)
    assert sorted(p.stem for p in emit.iterdir()) == sorted(names)
    pres = json.loads((emit / f"{names[0]}.json").read_text())
    assert {"ring", "generators", "relations"} <= set(pres)


def test_corpus_parallel_matches_serial(capsys):
    assert main(["corpus", "--filter", "zp"]) == 0
    serial = capsys.readouterr().out
    assert main(["corpus", "--filter", "zp", "--jobs", "2"]) == 0
    assert capsys.readouterr().out == serial


def test_full_corpus_summary(capsys):
    assert main(["corpus"]) == 0
    summary = json.loads(capsys.readouterr().out)["summary"]
    assert summary["fixtures"] == len(corpus_files())
    assert summary["disagree"] == [] and summary["errors"] == [] and summary["expected_mismatches"] == []


def test_monoid_info(tmp_path, capsys):
    assert main(["monoid", write(tmp_path, A1), "--info"]) == 0
    info = json.loads(capsys.readouterr().out)
    assert info["dim_chain"] == 2 and info["saturated"] and len(info["spec"]) == 4


# ------------------------------------------------------------------ instance loading


def test_alpha_keys_follow_listing_order():
    data = {**A1, "monoid": {"ambient_rank": 2, "generators": [[1, 2], [1, 1], [1, 0]]}, "alpha": {"e1": "w", "e2": "v", "e3": "u"}}
    inst = load_dict(data)
    assert inst.alpha_text == {(1, 2): "w", (1, 1): "v", (1, 0): "u"}
    assert [str(a) for a in inst.prelog().alpha] == ["u", "v", "w"]


def test_zero_and_duplicate_generators():
    data = {**A1, "monoid": {"ambient_rank": 2, "generators": [[0, 0], [1, 0], [1, 1], [1, 2], [1, 0]]},
            "alpha": {"e1": "1", "e2": "u", "e3": "v", "e4": "w", "e5": "u"}}
    assert len(load_dict(data).monoid.generators) == 3
    with pytest.raises(NotAHomomorphism):
        load_dict({**data, "alpha": {**data["alpha"], "e1": "u"}})
    with pytest.raises(NotAHomomorphism):
        load_dict({**data, "alpha": {**data["alpha"], "e5": "v"}})


def test_instance_error_carries_field():
    with pytest.raises(InstanceError) as info:
        load_dict({**A1, "alpha": {"e1": "u"}})
    assert info.value.field == "/alpha/e2"
    assert str(info.value).startswith("/alpha/e2: ")


def test_load_by_suffix(tmp_path):
    inst = load(write(tmp_path, A1_TOML, "toric_a1.toml"))
    assert inst.name == "a1"
    data = {k: v for k, v in A1.items() if k != "name"}
    assert load(write(tmp_path, data, "plain.json")).name == "plain"
