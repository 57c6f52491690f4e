import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from semirigid.fincat import GF, FormatError, Q, validate_presentation
from semirigid.rigidity import all_ok, verify_adjunction
from semirigid.semicat import validate_semigroup
from semirigid.shell import docio
from semirigid.shell.cli import main
from semirigid.shell.generators import generate, linear_semigroup, zero_action_module

from conftest import FIXTURES, cert, doc


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_generators_pass_validators(name):
    d = doc(name)
    assert validate_presentation(d.category).ok
    assert validate_semigroup(d.semigroup).ok


def test_zero_generator_shape():
    d = generate("zero")
    assert len(d.meta["formal_objects"]) == 3 and d.meta["formal_objects"][0] == "0"
    assert d.semigroup.obj_tensor == {}


def test_linear_semigroup_shape():
    cat = generate("linear_semigroup", preset="y0").category
    assert cat.objects == ["y", "0"]
    assert {k: v for k, v in cat.homdim.items() if v} == {("y", "y"): 1, ("0", "0"): 1}


def test_bimodule_dual_numbers_shape():
    d = generate("bimodule_proj", algebra="dual")
    assert d.category.objects == ["P11"]
    assert d.category.hd("P11", "P11") == 4
    assert d.semigroup.obj_tensor[("P11", "P11")] == ("P11", "P11")


def test_group_projectives_shape():
    d = generate("group_proj", group="z2", char=2)
    assert d.field == GF(2)
    assert d.category.hd("P", "P") == 2
    assert len(d.semigroup.obj_tensor[("P", "P")]) == 2


def test_non_prime_characteristic_rejected():
    with pytest.raises(ValueError):
        generate("group_proj", group="z2", char=4)


def test_non_associative_table_rejected():
    table = {("a", "a"): "b", ("a", "b"): "b", ("b", "a"): "a", ("b", "b"): "a"}
    with pytest.raises(FormatError):        # (aa)a = a but a(aa) = b
        linear_semigroup(["a", "b"], table)


# ---------------------------------------------------------------------------
# documents

@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_round_trip_is_byte_stable(name):
    d = doc(name)
    text = docio.dumps(d)
    again = docio.loads(text)
    assert docio.dumps(again) == text


@pytest.mark.parametrize("name", ["z2", "dual", "kxk"])
def test_round_trip_with_certificate_and_modules(name):
    kind, params = FIXTURES[name]
    d = generate(kind, **params)
    d.certificate = cert(name)
    d.modules = {"regular": d.semigroup, "zero": zero_action_module(d.semigroup)}
    text = docio.dumps(d)
    again = docio.loads(text)
    assert docio.dumps(again) == text
    assert again.modules["regular"] is again.semigroup
    for adj in again.certificate.right.values():
        assert all_ok(verify_adjunction(again.semigroup, adj))


@settings(max_examples=80, deadline=None)
@given(st.fractions(max_denominator=50))
def test_rational_scalars_round_trip(x):
    assert Q.parse(Q.fmt(Q(x))) == x


@settings(max_examples=40, deadline=None)
@given(st.integers(-100, 100))
def test_residues_round_trip(n):
    F = GF(7)
    assert F.parse(F.fmt(F(n))) == F(n)


def _doc_json(name):
    return json.loads(docio.dumps(doc(name)))


def test_division_by_zero_is_a_positioned_error():
    data = _doc_json("dual")
    data["category"]["identity"]["P11"][0] = "1/0"
    with pytest.raises(docio.DocumentError) as exc:
        docio.from_json(data)
    assert exc.value.where == "$.category.identity.P11[0]"


def test_wrong_length_vector_names_the_cell():
    data = _doc_json("dual")
    entry = data["category"]["comp"][0][3][0]
    entry[2] = entry[2][:-1]
    with pytest.raises(docio.DocumentError) as exc:
        docio.from_json(data)
    assert "(P11, P11, P11)" in str(exc.value)


def test_dangling_label_and_field_mismatch():
    data = _doc_json("y0")
    data["semigroup"]["tensor"][0][2] = ["w"]
    with pytest.raises(docio.DocumentError, match="dangling"):
        docio.from_json(data)
    with pytest.raises(docio.DocumentError, match="GF2"):
        docio.from_json(_doc_json("y0"), GF(2))


def test_bad_json_reports_line_and_column():
    with pytest.raises(docio.DocumentError, match="line 1 column"):
        docio.loads("{nope")


# ---------------------------------------------------------------------------
# command line

@pytest.fixture(scope="module")
def files(tmp_path_factory):
    root = tmp_path_factory.mktemp("fixtures")
    out = {}
    specs = {"gp_z2_char2": ["group_proj", "--param", "group=z2", "--param", "char=2"],
             "bimod_dualnumbers": ["bimodule_proj", "--param", "algebra=dual"],
             "bimod_kxk": ["bimodule_proj", "--param", "algebra=kxk"],
             "zero_cat": ["zero"],
             "add_dual": ["algebra_add", "--param", "algebra=dual"]}
    for name, argv in specs.items():
        path = root / (name + ".json")
        assert main(["generate"] + argv + ["-o", str(path)]) == 0
        out[name] = str(path)
    return out


def run(argv):
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


def test_decide_tensor_yes(files):
    code, text = run(["decide-tensor", files["gp_z2_char2"], "--json"])
    rep = json.loads(text)
    assert code == 0 and rep["report"]["verdict"] == "yes"


def test_decide_tensor_no_with_certificate(files):
    code, text = run(["decide-tensor", files["bimod_dualnumbers"], "--json"])
    rep = json.loads(text)["report"]
    assert code == 0 and rep["verdict"] == "no"
    assert rep["left"]["certificate"] == "nonzero stable ideal in radical"


def test_rigid_zero_category_fails_with_axiom_three_witness(files):
    code, text = run(["rigid", files["zero_cat"], "--json"])
    rep = json.loads(text)["report"]
    assert code == 1 and rep["rigid"] is False
    ax = rep["objects"]["A"]["right"]["naive_self_duality"]["III"]
    assert not ax["ok"] and ax["witness"]


@pytest.mark.parametrize("command", ["validate", "rigid", "unit", "ansatz", "decat", "disimple", "lift"])
def test_commands_pass_on_group_projectives(files, command):
    assert run([command, files["gp_z2_char2"]])[0] == 0


def test_trace_command_on_symmetric_fixture(files):
    code, text = run(["trace", files["add_dual"], "--json"])
    rep = json.loads(text)["report"]
    assert code == 0 and rep["enriched"]["total_dim"] == 2


def test_disimple_and_lift_on_modules(files):
    code, text = run(["disimple", files["bimod_kxk"], "--json"])
    assert code == 0 and json.loads(text)["report"]["disimple"] is False
    code, text = run(["lift", files["bimod_dualnumbers"], "--module", "zero", "--json"])
    assert code == 1 and json.loads(text)["report"]["stage"] == "precondition"


def test_json_output_is_deterministic(files):
    a = run(["unit", files["bimod_dualnumbers"], "--json", "--seed", "3"])
    b = run(["unit", files["bimod_dualnumbers"], "--json", "--seed", "3"])
    assert a == b


def test_usage_and_format_errors_exit_two(files, tmp_path):
    assert run(["frobnicate"])[0] == 2
    assert run(["validate", str(tmp_path / "missing.json")])[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{]")
    assert run(["validate", str(bad)])[0] == 2
    assert run(["validate", files["gp_z2_char2"], "--field", "Q"])[0] == 2
    assert run(["lift", files["gp_z2_char2"], "--module", "nosuch"])[0] == 2


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "semirigid", "decide-tensor", files["gp_z2_char2"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "verdict" in proc.stdout
