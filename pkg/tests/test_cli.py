import io
import json

import pytest

from twistact.cli import BAD_INPUT, CHECK_FAILED, OK, run
from twistact.fixtures import fix_c, fix_c_alt_twist, negatives
from twistact.globalization import globalize
from twistact.serialize import action_to_doc, dumps, globalization_to_doc

COMMANDS = ["validate", "crossed", "orbits", "corestrict", "globalize", "morita"]


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    lines = [json.loads(x) for x in out.getvalue().splitlines() if x.strip()]
    return code, lines


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


@pytest.mark.parametrize("cmd", COMMANDS)
def test_commands_pass_on_fix_c(tmp_path, cmd):
    path = write(tmp_path, "fixc.json", dumps(fix_c()))
    code, lines = invoke(cmd, "--input", path)
    assert code == OK
    assert lines[0]["verdict"] == "pass"
    assert all(c["status"] == "pass" and "anchor" in c for c in lines[1:-1])


def test_validate_counts_axiom_checks(tmp_path):
    path = write(tmp_path, "fixc.json", dumps(fix_c()))
    _, lines = invoke("validate", "--input", path)
    names = {c["name"] for c in lines if "name" in c}
    assert {"identity-domain", "identity-map", "domain-transport", "composition", "normalized",
            "twisted-cocycle"} <= names


def test_globalize_writes_document(tmp_path):
    from twistact.fixtures import fix_a

    path = write(tmp_path, "fixa.json", dumps(fix_a()))
    out = tmp_path / "g.json"
    code, lines = invoke("globalize", "--input", path, "--output", str(out))
    assert code == OK and lines[-1]["data"]["|B|"] == 8
    assert json.loads(out.read_text())["kind"] == "globalization"


def test_invalid_action_exits_1(tmp_path):
    name, tpa, _ = negatives()[0]
    path = write(tmp_path, "bad.json", dumps(tpa))
    for cmd in ("validate", "globalize"):
        code, lines = invoke(cmd, "--input", path)
        assert code == CHECK_FAILED
        assert any(c.get("status") == "fail" and "witness" in c for c in lines)


def test_schema_error_exits_2(tmp_path):
    doc = action_to_doc(fix_c())
    doc["ring"]["blocks"][0]["p"] = 6
    code, lines = invoke("validate", "--input", write(tmp_path, "bad.json", doc))
    assert code == BAD_INPUT
    assert lines[1]["witness"] == {"path": "ring.blocks[0].p", "reason": "not prime"}
    code, _ = invoke("validate", "--input", str(tmp_path / "missing.json"))
    assert code == BAD_INPUT


def test_exhaustive_too_large_exits_2(tmp_path):
    code, _ = invoke("crossed", "--input", write(tmp_path, "c.json", dumps(fix_c())), "--mode", "exhaustive")
    assert code == BAD_INPUT


def test_compare_equivalent(tmp_path):
    c = fix_c()
    g1 = write(tmp_path, "g1.json", globalization_to_doc(globalize(c)))
    g2 = write(tmp_path, "g2.json", globalization_to_doc(globalize(c, wt=fix_c_alt_twist())))
    code, lines = invoke("compare", "--input", g1, "--input2", g2)
    assert code == OK and lines[-1]["data"]["relation"] == "equivalent"
    code, lines = invoke("compare", "--input", g1, "--input2", g1)
    assert code == OK and lines[-1]["data"]["relation"] == "isomorphic"


def test_compare_needs_second_input(tmp_path):
    g1 = write(tmp_path, "g1.json", globalization_to_doc(globalize(fix_c())))
    code, _ = invoke("compare", "--input", g1)
    assert code == BAD_INPUT


def test_text_mode(tmp_path):
    out = io.StringIO()
    code = run(["validate", "--input", write(tmp_path, "c.json", dumps(fix_c())), "--text"], out)
    assert code == OK and out.getvalue().startswith("validate: PASS")
