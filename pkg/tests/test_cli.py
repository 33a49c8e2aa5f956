import json
from importlib import resources

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistlab.cli import main
from twistlab.errors import ParseError
from twistlab.expressions import (
    BoundaryTwist,
    Conj,
    Power,
    Product,
    Transposition,
    Twist,
    parse,
    to_source,
)
from twistlab.surface import build_model

M3 = build_model(3)


def schema(name):
    return json.loads(resources.files("twistlab").joinpath(f"schemas/{name}.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- parser -------------------------------------------------------------------


def test_parse_examples():
    assert parse("T(1,2)*T(2,3)^-1", M3) == Product((Twist(1, 2), Power(Twist(2, 3), -1)))
    assert parse("(T(1,2)*U)^2", M3) == Power(Product((Twist(1, 2), Transposition())), 2)
    assert parse("  ", M3) == Product(())
    assert parse("T(1,2)*U^2*D", M3) == Product((Twist(1, 2), Power(Transposition(), 2), BoundaryTwist()))


def test_star_is_left_associative_and_power_binds_tighter():
    assert parse("T(1,2)*U*T(2,3)", M3) == Product((Twist(1, 2), Transposition(), Twist(2, 3)))
    assert parse("U*T(1,2)^3", M3) == Product((Transposition(), Power(Twist(1, 2), 3)))


@pytest.mark.parametrize(
    "src, offset, fragment",
    [
        ("T(1,3)", 0, "one-sided"),
        ("U*T(1,3)", 2, "one-sided"),
        ("T(1,2)*Q", 7, "unknown atom"),
        ("T(1,2)^", 7, "integer"),
        ("T(1,4)", 0, "outside"),
        ("(T(1,2)", 7, "expected ')'"),
        ("T(1,2) $", 7, "unexpected character"),
    ],
)
def test_parse_errors_carry_byte_offsets(src, offset, fragment):
    with pytest.raises(ParseError) as info:
        parse(src, M3)
    assert info.value.offset == offset
    assert fragment in info.value.message


def test_byte_offsets_count_utf8_bytes():
    with pytest.raises(ParseError) as info:
        parse("T(1,2)*é", M3)
    assert info.value.offset == 7
    with pytest.raises(ParseError) as info:
        parse("é", M3)
    assert info.value.offset == 0


def expressions(k):
    twists = [Twist(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1, 2)]
    atoms = st.sampled_from(twists + [Transposition(), BoundaryTwist()])

    def extend(children):
        return st.one_of(
            st.builds(Power, children, st.integers(-4, 4)),
            st.builds(Conj, children, children),
            st.lists(children, min_size=2, max_size=4).map(lambda xs: Product(tuple(xs))),
        )

    return st.recursive(atoms, extend, max_leaves=8)


@settings(max_examples=200)
@given(expressions(4))
def test_print_parse_round_trip(e):
    m = build_model(4)
    assert parse(to_source(e), m) == e


# -- commands -------------------------------------------------------------------


def test_equal_braid_exit_zero(capsys):
    code, out, _ = run(capsys, "equal", "--surface", "N3,1", "T(1,2)*T(2,3)*T(1,2)", "T(2,3)*T(1,2)*T(2,3)")
    assert code == 0 and out.strip() == "equal"


def test_equal_reports_first_difference(capsys):
    code, out, _ = run(capsys, "equal", "--surface", "N3,1", "T(1,2)", "T(2,3)")
    assert code == 1
    assert "first difference at x1" in out


def test_eval_identity(capsys):
    code, out, _ = run(capsys, "eval", "--surface", "N3,1", "")
    assert code == 0
    assert out.splitlines() == ["x1 -> x1", "x2 -> x2", "x3 -> x3"]


def test_homology_mod_three(capsys):
    code, out, _ = run(capsys, "homology", "--surface", "N3,1", "--mod", "3", "T(1,2)^3", "--json")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, schema("matrix"))
    assert payload["matrix"] == [[int(i == j) for j in range(5)] for i in range(5)]


def test_surface_level_homology(capsys):
    code, out, _ = run(capsys, "homology", "--surface", "N3,1", "--surface-level", "--json", "T(1,2)")
    assert code == 0
    assert json.loads(out)["matrix"] == [[0, 1, 0], [-1, 2, 0], [0, 0, 1]]


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "T(1,2)"],
        ["eval", "--surface", "N3", "T(1,2)"],
        ["eval", "--surface", "N3,1", "T(1,3)"],
        ["homology", "--surface", "N3,1", "--mod", "1", "U"],
        ["frobnicate"],
        ["eval", "--surface", "N3,1", "--max-word-length", "0", "U"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_overflow_exit_three(capsys):
    code, _, err = run(capsys, "eval", "--surface", "N6,1", "--max-word-length", "50", "(T(1,6)*U)^5")
    assert code == 3 and "overflow" in err
    code, out, _ = run(capsys, "suite", "--filter", "R-D6", "--max-word-length", "30", "--json")
    assert code == 3
    assert json.loads(out)["counts"]["overflow"] == 1


def test_suite_json_and_text_agree(capsys):
    code, out, _ = run(capsys, "suite", "--filter", "R-PSz", "--json")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, schema("report"))
    assert len(payload["results"]) == 6
    assert "ms" not in out  # no timing in JSON mode
    code_text, text, _ = run(capsys, "suite", "--filter", "R-PSz")
    assert code_text == code
    for r in payload["results"]:
        assert f"{r['status'].upper():8} {r['id']}" in text


def test_suite_surface_restriction_and_catalog_flag(capsys, tmp_path):
    code, out, _ = run(capsys, "suite", "--surface", "N4,1", "--json")
    assert code == 0
    assert {r["k"] for r in json.loads(out)["results"]} == {4}
    catalog = tmp_path / "c.json"
    catalog.write_text(json.dumps({"version": 1, "fixtures": [
        {"id": "x", "kind": "equal", "k": 3, "lhs": "T(1,2)", "rhs": "T(2,3)", "provenance": "deliberately false"}
    ]}))
    code, out, _ = run(capsys, "suite", "--catalog", str(catalog), "--json")
    assert code == 1
    assert json.loads(out)["results"][0]["status"] == "fail"


@pytest.mark.parametrize(
    "argv, name",
    [
        (["eval", "--surface", "N4,1", "--json", "T(1,4)*U"], "eval"),
        (["equal", "--surface", "N4,1", "--json", "U", "U^-1"], "equal"),
        (["equal", "--surface", "N4,1", "--json", "U", "U"], "equal"),
        (["homology", "--surface", "N4,1", "--json", "U"], "matrix"),
    ],
)
def test_json_outputs_validate(capsys, argv, name):
    code, out, _ = run(capsys, *argv)
    jsonschema.validate(json.loads(out), schema(name))


def test_validate_command(capsys):
    code, out, _ = run(capsys, "validate", "--surface", "N6,1", "--json")
    assert code == 0
    payload = json.loads(out)
    registry_schema = schema("validate")
    registry_schema["properties"]["model"] = schema("model")
    jsonschema.validate(payload, registry_schema)
    assert payload["ok"]


def test_text_and_json_verdicts_agree_for_equal(capsys):
    for lhs, rhs in [("U*T(2,3)*U^-1", "T(2,3)^-1"), ("U", "T(2,3)")]:
        code_json, out, _ = run(capsys, "equal", "--surface", "N3,1", "--json", lhs, rhs)
        code_text, text, _ = run(capsys, "equal", "--surface", "N3,1", lhs, rhs)
        assert code_json == code_text
        assert json.loads(out)["equal"] == (text.strip() == "equal")
