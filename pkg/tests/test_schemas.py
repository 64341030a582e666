import json
from pathlib import Path

import pytest

from seqcm.cli import main

jsonschema = pytest.importorskip("jsonschema")
referencing = pytest.importorskip("referencing")

SCHEMAS = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def _registry():
    resources = []
    for p in SCHEMAS.glob("*.json"):
        doc = json.loads(p.read_text(encoding="utf-8"))
        resources.append((doc["$id"], referencing.Resource.from_contents(doc)))
    return referencing.Registry().with_resources(resources)


def _validate(name, doc):
    schema = json.loads((SCHEMAS / name).read_text(encoding="utf-8"))
    jsonschema.Draft202012Validator(schema, registry=_registry()).validate(doc)


def _json(capsys, *argv):
    assert main(list(argv) + ["--format", "json"]) == 0
    return json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("module", ["ex1", "square", "embedded", "free_torsion", "square_line_torsion"])
def test_filtration_report_schema(capsys, module):
    _validate("filtration_report.json", _json(capsys, "classify", "--module", module))


@pytest.mark.parametrize("module, sop", [("ex1", "q2"), ("ex1", "good"), ("embedded", "q"), ("square", "q")])
def test_hilbert_report_schema(capsys, module, sop):
    _validate("hilbert_report.json", _json(capsys, "hilbert", "--module", module, "--sop", sop))


def test_lambda_sample_schema(capsys):
    doc = _json(capsys, "lambda", "--module", "ex1", "--i", "2", "--sop", "q1", "--sop", "q2",
                "--allow-non-distinguished")
    _validate("lambda_sample.json", doc)
    _validate("lambda_sample.json", _json(capsys, "lambda", "--module", "embedded", "--i", "1", "--count", "2"))


def test_repro_schema(capsys):
    _validate("repro.json", _json(capsys, "repro", "ex1"))


def test_schema_rejects_a_bad_verdict(capsys):
    doc = _json(capsys, "classify", "--module", "ex1")
    doc["verdict"] = "maybe"
    with pytest.raises(jsonschema.ValidationError):
        _validate("filtration_report.json", doc)
