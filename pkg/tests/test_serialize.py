import json
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from twistact.action import same_data, verify_axioms
from twistact.fixtures import fix_c, fixture
from twistact.globalization import globalize
from twistact.serialize import (SchemaError, action_to_doc, dumps, globalization_from_doc,
                                globalization_to_doc, load, parse)

SCHEMA = json.loads((Path(__file__).parents[1] / "schema" / "action.schema.json").read_text())
DATA = resources.files("twistact") / "data"
FILES = {"FIX-A": "fixa.json", "FIX-B": "fixb.json", "FIX-C": "fixc.json", "FIX-D": "fixd.json",
         "FIX-E": "fixe.json"}


def test_roundtrip(fixture_name):
    t = fixture(fixture_name)
    assert same_data(parse(dumps(t)), t)


def test_bundled_files_match_fixtures(fixture_name):
    path = DATA / FILES[fixture_name]
    t = load(path)
    assert same_data(t, fixture(fixture_name))
    jsonschema.validate(json.loads(path.read_text()), SCHEMA)


def test_non_prime_modulus():
    doc = action_to_doc(fixture("FIX-B"))
    doc["ring"]["blocks"][0]["p"] = 6
    with pytest.raises(SchemaError) as exc:
        parse(json.dumps(doc))
    assert (exc.value.path, exc.value.reason) == ("ring.blocks[0].p", "not prime")


def test_structural_parse_leaves_semantics_to_verifier():
    doc = action_to_doc(fixture("FIX-B"))
    doc["twist"]["1,0"] = {"entries": {"0": [[2]]}}
    t = parse(json.dumps(doc))
    assert not verify_axioms(t)["normalized"].passed


@pytest.mark.parametrize("mutate,path", [
    (lambda d: d.pop("group"), "group"),
    (lambda d: d["group"]["table"][1].__setitem__(0, 0), "group.table"),
    (lambda d: d["domains"].pop("1"), "domains.1"),
    (lambda d: d["alpha"]["1"]["block_map"].append([0, 9]), "alpha.1.block_map[1]"),
    (lambda d: d["twist"].__setitem__("1,1", {"entries": {"0": [[1, 2]]}}), "twist.1,1.entries.0[0]"),
])
def test_schema_errors_carry_paths(mutate, path):
    doc = action_to_doc(fixture("FIX-B"))
    mutate(doc)
    with pytest.raises(SchemaError) as exc:
        parse(json.dumps(doc))
    assert exc.value.path == path


def test_invalid_json():
    with pytest.raises(SchemaError):
        parse("{not json")


def test_globalization_roundtrip():
    g = globalize(fix_c())
    doc = json.loads(json.dumps(globalization_to_doc(g)))
    back = globalization_from_doc(doc)
    assert back.B == g.B and back.one_B == g.one_B
    assert same_data(back.beta, g.beta)
