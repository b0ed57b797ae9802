import json

import jsonschema
import pytest


def validate(schemas, name, text):
    doc = json.loads(text)
    jsonschema.Draft202012Validator(schemas[name]).validate(doc)
    return doc


def test_schemas_are_valid(schemas):
    assert set(schemas) >= {"sequence", "constants", "pmf", "verify", "diagnostics", "sample"}
    for schema in schemas.values():
        jsonschema.Draft202012Validator.check_schema(schema)


def test_seq_json(otter_bin, schemas):
    doc = validate(schemas, "sequence", otter_bin("seq", "--kind", "forest", "--n", "10", "--format", "json").stdout)
    assert doc["rows"][10] == {"n": 10, "value": "329"}


def test_constants_json(otter_bin, schemas):
    doc = validate(schemas, "constants", otter_bin("constants", "-P", "15", "-K", "2000").stdout)
    assert abs(float(doc["alpha"]["value"]) - 0.338) < 5e-4


def test_dist_json(otter_bin, schemas):
    doc = validate(schemas, "pmf", otter_bin("dist", "--n", "4", "--format", "json").stdout)
    assert [r["exact"] for r in doc["rows"]] == ["1/3", "1/3", "1/6", "1/6"]
    doc = validate(schemas, "pmf", otter_bin("dist", "--limit", "--m", "5", "-K", "2000", "--format", "json").stdout)
    assert doc["rows"][0]["k"] == 1


def test_verify_json(otter_bin, schemas):
    doc = validate(schemas, "verify", otter_bin("verify", "--suite", "sequences", "--format", "json").stdout)
    assert doc["pass"] and [r["id"] for r in doc["results"]] == [1, 2]


def test_asymptotics_json(otter_bin, schemas, tmp_path):
    weights = tmp_path / "nu.json"
    weights.write_text(json.dumps([k ** -2.5 for k in range(1, 1001)]))
    doc = validate(schemas, "diagnostics", otter_bin("asymptotics", "--weights", weights, "--format", "json").stdout)
    ratio = next(s for s in doc["series"] if s["label"] == "ratio")
    assert abs(ratio["extrapolated"] - 1) < 1e-3
    bad = tmp_path / "bad.csv"
    bad.write_text("1,1\n2,oops\n")
    proc = otter_bin("asymptotics", "--weights", bad, check=False)
    assert proc.returncode == 2 and "line 2" in proc.stderr


def test_sample_json(otter_bin, schemas):
    doc = validate(schemas, "sample",
                   otter_bin("sample", "--n", "3", "--count", "100000", "--seed", "7", "--format", "json").stdout)
    for cell in doc["profiles"]:
        assert abs(cell["observed"] / 100000 - 1 / 3) < 5 * (2 / 9 / 100000) ** 0.5


def test_csv_headers(otter_bin):
    assert otter_bin("sample", "--n", "5", "--count", "3", "--raw").stdout.splitlines()[0] == "n,trees,largest"
    assert otter_bin("dist", "--n", "3").stdout.splitlines()[0] == "k,probability"
    proc = otter_bin("sample", "--n", "5", "--count", "10", check=False)
    assert proc.returncode == 2
