import json

import pytest

from hamlag.cli import EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, main, run_pipeline, PipelineOptions
from hamlag.errors import ParseError, SchemaError
from hamlag.instances import (
    parse_instance,
    parse_instance_text,
    quadrics_document,
    emit_instance,
)

PENTAGON = {
    "format": "polytope",
    "name": "pentagon",
    "a": [["1", "0"], ["0", "1"], ["-1", "0"], ["0", "-1"], ["-1", "-1"]],
    "b": ["0", "0", "2", "2", "3"],
}


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# instance parsing


def test_parse_pentagon_instance(tmp_path):
    instance = parse_instance(write(tmp_path, "pentagon.json", PENTAGON))
    assert instance.format == "polytope"
    assert instance.polytope.m == 5 and instance.polytope.n == 2


def test_parse_quadrics_instance():
    instance = parse_instance_text(
        '{"format":"quadrics","gamma":[["1","1","1"]],"c":["1"]}'
    )
    assert instance.quadrics.m == 3 and instance.quadrics.quadric_count == 1


def test_parse_recipe_instance():
    instance = parse_instance_text(
        '{"format":"recipe","recipe":"product(simplex(1),simplex(1))"}'
    )
    assert instance.recipe is not None


def test_zero_denominator_is_schema_error():
    with pytest.raises(SchemaError) as info:
        parse_instance_text('{"format":"quadrics","gamma":[["1","1/0"]],"c":["1"]}')
    assert "gamma[0][1]" in str(info.value)


def test_floats_are_rejected():
    with pytest.raises(SchemaError):
        parse_instance_text('{"format":"quadrics","gamma":[[0.5,1]],"c":["1"]}')


def test_dimension_mismatch_is_schema_error():
    with pytest.raises(SchemaError):
        parse_instance_text('{"format":"quadrics","gamma":[["1","1"]],"c":["1","2"]}')


def test_not_json_is_parse_error():
    with pytest.raises(ParseError):
        parse_instance_text("{this is not json")


# ---------------------------------------------------------------------------
# pipeline documents


def test_pentagon_pipeline_document():
    instance = parse_instance_text(json.dumps(PENTAGON))
    stages = ["validate", "generic", "delzant", "embed", "classify"]
    document, code = run_pipeline(instance, stages, PipelineOptions())
    assert code == EXIT_OK
    assert [s["name"] for s in document["stages"]] == [
        "validate", "generic", "delzant", "embed", "classify",
        "isotropy", "sample", "lagrangian",
    ]
    by_name = {s["name"]: s for s in document["stages"]}
    assert by_name["classify"]["result"]["genus"] == 5
    assert by_name["classify"]["result"]["n_topology"]["label"] == "S_5-bundle over T^3"
    assert by_name["delzant"]["status"] == "ok"
    assert by_name["sample"]["status"] == "skipped"
    assert document["verdict"] == "all verdicts positive"


def test_report_document_roundtrips():
    instance = parse_instance_text(json.dumps(PENTAGON))
    document, _ = run_pipeline(instance, ["validate", "classify"], PipelineOptions())
    text = json.dumps(document, indent=2, sort_keys=True)
    assert json.loads(text) == document


def test_negative_embed_gives_exit_one():
    instance = parse_instance_text('{"format":"quadrics","gamma":[["1","1","2"]],"c":["1"]}')
    document, code = run_pipeline(instance, ["validate", "embed"], PipelineOptions())
    assert code == EXIT_NEGATIVE
    by_name = {s["name"]: s for s in document["stages"]}
    assert by_name["embed"]["status"] == "negative"
    assert by_name["embed"]["result"]["witness"]["index_set"] == [0, 1]


def test_degenerate_validate_negative():
    instance = parse_instance_text('{"format":"quadrics","gamma":[["1","1"]],"c":["-1"]}')
    document, code = run_pipeline(instance, ["validate"], PipelineOptions())
    assert code == EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# command-line entry


def test_main_pipeline_exit_codes(tmp_path, capsys):
    path = write(tmp_path, "pentagon.json", PENTAGON)
    assert main(["pipeline", str(path), "--stages", "validate,generic,classify"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "S_5-bundle over T^3" in out

    bad = write(
        tmp_path, "bad.json",
        {"format": "quadrics", "gamma": [["1", "1", "2"]], "c": ["1"]},
    )
    assert main(["pipeline", str(bad), "--stages", "validate,embed"]) == EXIT_NEGATIVE


def test_main_input_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"format":"quadrics","gamma":[["1/0"]],"c":["1"]}', encoding="utf-8")
    assert main(["check", str(path)]) == EXIT_INPUT


def test_main_missing_file():
    assert main(["check", "/nonexistent/nowhere.json"]) == EXIT_INPUT


def test_convert_roundtrip(tmp_path, capsys):
    path = write(tmp_path, "pentagon.json", PENTAGON)
    out = tmp_path / "converted.json"
    assert main(["convert", str(path), "--out", str(out)]) == EXIT_OK
    converted = parse_instance(out)
    assert converted.format == "quadrics"
    assert converted.quadrics.quadric_count == 3

    out2 = tmp_path / "back.json"
    assert main(["convert", str(out), "--out", str(out2)]) == EXIT_OK
    assert parse_instance(out2).format == "polytope"


def test_generate_recipe(tmp_path):
    out = tmp_path / "square.json"
    assert main(["generate", "--recipe", "product(simplex(1),simplex(1))", "--out", str(out)]) == EXIT_OK
    instance = parse_instance(out)
    assert instance.format == "polytope" and instance.polytope.m == 4


def test_generate_random(tmp_path):
    out = tmp_path / "random.json"
    assert main(["generate", "--random", "5,2,3", "--seed", "4", "--out", str(out)]) == EXIT_OK
    instance = parse_instance(out)
    assert instance.quadrics.m == 5 and instance.quadrics.n == 2


def test_isotropy_command(tmp_path, capsys):
    path = write(
        tmp_path, "sys.json",
        {"format": "quadrics", "gamma": [["1", "1", "2"]], "c": ["1"]},
    )
    assert main(["isotropy", str(path), "--index-set", "1,2"]) == EXIT_OK
    assert "Z/2" in capsys.readouterr().out


def test_sample_and_lagrangian_commands(tmp_path, capsys):
    path = write(
        tmp_path, "sphere.json",
        {"format": "quadrics", "gamma": [["1", "1", "1"]], "c": ["1"]},
    )
    assert main(["sample", str(path), "--count", "20", "--seed", "1"]) == EXIT_OK
    assert main(["verify-lagrangian", str(path), "--count", "20", "--seed", "1"]) == EXIT_OK


def test_batch_mode(tmp_path, capsys):
    write(tmp_path, "a_pentagon.json", PENTAGON)
    write(
        tmp_path, "b_bad.json",
        {"format": "quadrics", "gamma": [["1", "1", "2"]], "c": ["1"]},
    )
    code = main(["pipeline", "--batch", str(tmp_path), "--stages", "validate,embed"])
    assert code == EXIT_NEGATIVE
    out = capsys.readouterr().out
    assert "a_pentagon.json" in out and "b_bad.json" in out


def test_tolerance_override(tmp_path):
    path = write(
        tmp_path, "sphere.json",
        {"format": "quadrics", "gamma": [["1", "1", "1"]], "c": ["1"]},
    )
    assert main(["sample", str(path), "--count", "5", "--tolerance", "accept=1e-10"]) == EXIT_OK
    assert main(["sample", str(path), "--tolerance", "bogus=1"]) == EXIT_INPUT


def test_emitted_instances_reparse():
    from hamlag import QuadricSystem

    system = QuadricSystem.from_rows([[1, 1, 0], [0, 1, 1]], [1, 1])
    document = quadrics_document(system, name="demo")
    reparsed = parse_instance_text(emit_instance(document))
    assert reparsed.quadrics == system


def test_shipped_instances_all_positive():
    from pathlib import Path

    instance_dir = Path(__file__).resolve().parent.parent / "instances"
    files = sorted(instance_dir.glob("*.json"))
    assert len(files) >= 4
    for path in files:
        assert main(["pipeline", str(path), "--stages", "validate,generic,embed,classify"]) == EXIT_OK, path
