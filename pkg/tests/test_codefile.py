"""Tests for the on-disk code definition format."""

import json

import pytest

from storagecodes import codefile
from storagecodes.constructions import example1, rbt_mbr


def test_dumps_is_byte_stable():
    cf = codefile.from_named_code(example1())
    assert codefile.dumps(cf) == codefile.dumps(cf)
    assert codefile.dumps(cf).endswith("\n")


def test_exact_round_trip(tmp_path):
    named = example1()
    path = tmp_path / "example1.json"
    codefile.save(codefile.from_named_code(named), str(path))
    loaded = codefile.load(str(path))
    assert loaded.mode == "exact"
    assert loaded.code.basis_strings() == named.code.basis_strings()
    assert loaded.declared == named.declared
    assert loaded.plans.keys() == named.repair_plans.keys()
    for failed, plan in loaded.plans.items():
        original = named.repair_plans[failed]
        assert plan.helpers == original.helpers
        assert plan.beta == original.beta
        assert plan.repair_spaces == original.repair_spaces


def test_functional_round_trip(tmp_path):
    cf = codefile.functional_file("example3")
    path = tmp_path / "fn.json"
    codefile.save(cf, str(path))
    loaded = codefile.load(str(path))
    assert loaded.mode == "functional"
    assert loaded.spec_name == "example3"
    assert [m.to_strings() for m in loaded.functional_bases] == [
        m.to_strings() for m in cf.functional_bases
    ]


def test_unknown_functional_spec():
    with pytest.raises(codefile.CodeFileError):
        codefile.functional_file("bogus")


def test_loads_reports_json_error_line():
    with pytest.raises(codefile.CodeFileError) as err:
        codefile.loads('{\n  "format_version": 1,\n}')
    assert "line" in str(err.value)


def test_loads_rejects_wrong_version():
    with pytest.raises(codefile.CodeFileError) as err:
        codefile.loads(json.dumps({"format_version": 99, "mode": "exact", "nodes": [["1"]]}))
    assert "format_version" in str(err.value)


def test_loads_rejects_mismatched_header():
    named = example1()
    doc = json.loads(codefile.dumps(codefile.from_named_code(named)))
    doc["alpha"] = 7
    with pytest.raises(codefile.CodeFileError) as err:
        codefile.loads(json.dumps(doc))
    assert "alpha" in str(err.value)


def test_loads_rejects_invalid_code():
    doc = {
        "format_version": 1,
        "mode": "exact",
        # dependent rows: the code does not validate
        "nodes": [["100", "100"], ["010", "001"]],
    }
    with pytest.raises(codefile.CodeFileError) as err:
        codefile.loads(json.dumps(doc))
    assert "validate" in str(err.value)


def test_loads_rejects_bad_functional_initial_state():
    doc = json.loads(codefile.dumps(codefile.functional_file("example3")))
    doc["nodes"][1] = doc["nodes"][0]  # duplicate space: pairwise rule broken
    with pytest.raises(codefile.CodeFileError) as err:
        codefile.loads(json.dumps(doc))
    assert "spec" in str(err.value)


def test_load_missing_file():
    with pytest.raises(codefile.CodeFileError):
        codefile.load("/nonexistent/path.json")


def test_larger_construction_round_trips(tmp_path):
    named = rbt_mbr(5)
    path = tmp_path / "mbr5.json"
    codefile.save(codefile.from_named_code(named), str(path))
    loaded = codefile.load(str(path))
    assert loaded.code.basis_strings() == named.code.basis_strings()
