"""Text format round-trips, diagnostics, CLI behaviour and exit codes."""

import json
import subprocess
import sys

from dgalgebra import corpus, validate_presentation
from dgalgebra.cli import main as cli_main
from dgalgebra.parser import (
    element_to_json,
    parse_morphism,
    parse_presentation,
    print_morphism,
    print_presentation,
)


def test_corpus_files_parse_clean():
    for name in corpus.names():
        text = corpus.read(name)
        if name.endswith(".dga"):
            result = parse_presentation(text)
            assert result.presentation is not None, (name, result.diagnostics)


def test_round_trip_is_identity(ex51, ex52, ex53):
    for algebra in (ex51, ex52, ex53):
        text = print_presentation(algebra)
        again = parse_presentation(text).presentation
        assert again == algebra
        assert print_presentation(again) == text


def test_product_expression_expands(ex51):
    # the product form in the file equals the expanded second form
    g = ex51.namespace()
    expanded = (
        g.y1 * g.y2 * g.x2**2
        - g.y1 * g.y3 * g.x1 * g.x2
        + g.y2 * g.y3 * g.x1**2
        + g.x1**11
        + g.x2**9
    )
    assert ex51.differential_image("z") == expanded


def test_rational_coefficients_and_parens():
    text = """
algebra demo
generator u : 2
generator v : 3
d v = 3/2 * (u + u)^2 - 2*u^2
"""
    result = parse_presentation(text)
    assert result.presentation is not None
    A = result.presentation
    assert A.differential_image("v") == 4 * A.gen("u") ** 2


def test_degree_semantic_diagnostic_lives_in_validation():
    result = parse_presentation("algebra t\ngenerator x : 1\n")
    assert result.presentation is not None  # parse succeeds
    report = validate_presentation(result.presentation)
    assert not report.ok


def test_zero_degree_rejected_at_parse():
    result = parse_presentation("generator x : 0\n")
    assert result.presentation is None
    assert any("positive" in d.message for d in result.diagnostics)


def test_syntax_diagnostics_have_positions():
    result = parse_presentation("algebra a\ngenerator u : 2\nd u = u +\n")
    assert result.presentation is None
    assert result.diagnostics
    d = result.diagnostics[0]
    assert d.line == 3 and d.column >= 9


def test_unknown_identifier_diagnostic():
    result = parse_presentation("algebra a\ngenerator u : 2\nd u = w * w\n")
    assert result.presentation is None
    assert any("unknown identifier" in d.message for d in result.diagnostics)


def test_morphism_parse_and_print(ex53):
    parsed = parse_morphism(corpus.read("ex53_inv.map"), ex53, ex53)
    assert parsed.ok
    f = parsed.morphism
    text = print_morphism(f, "involution")
    again = parse_morphism(text, ex53, ex53)
    assert again.morphism == f


def test_morphism_with_unknowns(ex53):
    text = """
morphism guess : ex53 -> ex53
unknown a
x1 = a * x1
"""
    parsed = parse_morphism(text, ex53, ex53)
    assert parsed.ok
    assert parsed.has_unknowns
    assert parsed.morphism is None
    assert sorted(parsed.symbolic_images["x1"].variables()) == ["a"]


def test_morphism_header_mismatch(ex51, ex53):
    parsed = parse_morphism(corpus.read("ex53_inv.map"), ex51, ex53)
    assert not parsed.ok


def test_json_element_encoding(ex52):
    g = ex52.namespace()
    x = g.x2 ** 2 * g.x1 - 2 * g.y1
    encoded = element_to_json(x)
    assert encoded == [
        ["1", [["x1", 1], ["x2", 2]]],
        ["-2", [["y1", 1]]],
    ]


# -- CLI ----------------------------------------------------------------------------


def run_cli(*args):
    import io
    from contextlib import redirect_stderr, redirect_stdout

    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli_main(list(args))
    return code, out.getvalue(), err.getvalue()


def test_cli_check_ok():
    code, out, _ = run_cli("check", corpus.path("ex53.dga"))
    assert code == 0
    assert "valid" in out


def test_cli_check_bundled_name_fallback():
    code, _, _ = run_cli("check", "ex51.dga")
    assert code == 0


def test_cli_check_invalid(tmp_path):
    bad = tmp_path / "bad.dga"
    bad.write_text("algebra b\ngenerator u : 2\ngenerator v : 3\nd v = u\n")
    code, out, _ = run_cli("check", str(bad), "--json")
    assert code == 3
    data = json.loads(out)
    assert data["ok"] is False and data["issues"]


def test_cli_parse_error(tmp_path):
    bad = tmp_path / "broken.dga"
    bad.write_text("generator ! : 2\n")
    code, _, err = run_cli("check", str(bad))
    assert code == 2
    assert "1:" in err


def test_cli_selfmaps_json():
    code, out, _ = run_cli("selfmaps", "ex51.dga", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["classes"] == 2
    assert data["group"] == "trivial"


def test_cli_selfmaps_ex53():
    code, out, _ = run_cli("selfmaps", "ex53.dga", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["classes"] == 3
    assert data["group"] == "Z2"


def test_cli_cohomology():
    code, out, _ = run_cli("cohomology", "ex53.dga", "--max-degree", "24", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["degrees"]["12"]["dimension"] == 1
    assert data["degrees"]["12"]["representatives"] == [[["1", [["x2", 1]]]]]


def test_cli_cohomology_weights():
    code, out, _ = run_cli(
        "cohomology", "two_stage.dga", "--max-degree", "6", "--weights", "--json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["degrees"]["2"]["weight_split"] == {"0": [[["1", [["u", 1]]]]]}


def test_cli_homotopic_no_certificate():
    code, out, _ = run_cli(
        "homotopic", "ex53.dga", "ex53.dga", "ex53_id.map", "ex53_inv.map", "--json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "no"
    assert data["certificate"]["degree"] == 12
    assert data["certificate"]["f_matrix"] == [["1"]]
    assert data["certificate"]["g_matrix"] == [["-1"]]


def test_cli_homotopic_yes():
    code, out, _ = run_cli(
        "homotopic", "ex53.dga", "ex53.dga", "ex53_id.map", "ex53_id.map", "--json"
    )
    assert code == 0
    assert json.loads(out)["verdict"] == "yes"


def test_cli_nullhomotopic_verdicts(tmp_path):
    zero_map = tmp_path / "zero.map"
    zero_map.write_text("morphism z : ex53 -> ex53\nx1 = 0\n")
    code, out, _ = run_cli(
        "nullhomotopic", "ex53.dga", "ex53.dga", str(zero_map), "--json"
    )
    assert code == 0
    assert json.loads(out)["verdict"] == "yes"

    code, out, _ = run_cli(
        "nullhomotopic", "ex53.dga", "ex53.dga", "ex53_id.map", "--json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "no"
    assert data["stage"] == 10
    assert data["obstruction"] == {"x1": [["1", [["x1", 1]]]]}


def test_cli_nullhomotopic_stage_filtration():
    code, out, _ = run_cli(
        "nullhomotopic",
        "two_stage.dga",
        "two_stage.dga",
        corpus.path("two_stage.dga") + ".nomap",
        "--json",
    )
    # nonexistent map file: parse failure
    assert code == 2


def test_cli_obstruction_table(tmp_path):
    code, out, _ = run_cli(
        "obstruction",
        "ex53.dga",
        "ex53.dga",
        "ex53_id.map",
        "ex53_id.map",
        "--v0",
        "x1,x2,y1,y2,y3",
        "--json",
    )
    assert code == 0
    data = json.loads(out)
    assert data["zero"] is True
    assert data["classes"]["z"]["degree"] == 119


def test_cli_family():
    code, out, _ = run_cli(
        "family",
        "free_even.dga",
        "free_even_weighted.dga",
        "w_to_x.map",
        "--lambda",
        "2",
        "--count",
        "5",
        "--json",
    )
    assert code == 0
    data = json.loads(out)
    assert data["all_distinct"] is True
    assert len(data["pairs"]) == 15
    factors = {(p["i"], p["j"]): p["scale_factor"] for p in data["pairs"]}
    assert factors[(0, 1)] == "-3"
    assert factors[(4, 5)] == "-768"


def test_cli_classify_infinite():
    code, out, _ = run_cli("classify", "free_even.dga", "free_even_weighted.dga", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "infinite"


def test_cli_classify_finite():
    code, out, _ = run_cli("classify", "ex51.dga", "ex51.dga", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "finite" and data["classes"] == 2


def test_cli_json_deterministic():
    _, out1, _ = run_cli("selfmaps", "ex53.dga", "--json")
    _, out2, _ = run_cli("selfmaps", "ex53.dga", "--json")
    assert out1 == out2


def test_cli_entrypoint_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "dgalgebra.cli", "check", "ex52.dga"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0


# machine-output schemas, one per command (shared element encoding)
ELEMENT_SCHEMA = {
    "type": "array",
    "items": {
        "type": "array",
        "prefixItems": [
            {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"},
            {
                "type": "array",
                "items": {
                    "type": "array",
                    "prefixItems": [{"type": "string"}, {"type": "integer", "minimum": 1}],
                    "minItems": 2,
                    "maxItems": 2,
                },
            },
        ],
        "minItems": 2,
        "maxItems": 2,
    },
}

MORPHISM_SCHEMA = {
    "type": "object",
    "additionalProperties": ELEMENT_SCHEMA,
}

COMMAND_SCHEMAS = {
    "check": {
        "type": "object",
        "required": ["command", "ok", "issues"],
        "properties": {
            "command": {"const": "check"},
            "ok": {"type": "boolean"},
            "issues": {"type": "array", "items": {"type": "string"}},
        },
    },
    "selfmaps": {
        "type": "object",
        "required": ["command", "classes", "group", "families", "representatives"],
        "properties": {
            "classes": {"type": "integer", "minimum": 0},
            "group": {"type": "string"},
            "representatives": {"type": "array", "items": MORPHISM_SCHEMA},
        },
    },
    "cohomology": {
        "type": "object",
        "required": ["command", "degrees"],
        "properties": {
            "degrees": {
                "type": "object",
                "additionalProperties": {
                    "type": "object",
                    "required": ["dimension", "representatives"],
                    "properties": {
                        "dimension": {"type": "integer", "minimum": 0},
                        "representatives": {"type": "array", "items": ELEMENT_SCHEMA},
                    },
                },
            }
        },
    },
    "homotopic": {
        "type": "object",
        "required": ["command", "verdict"],
        "properties": {
            "verdict": {"enum": ["yes", "no", "undetermined"]},
        },
    },
    "nullhomotopic": {
        "type": "object",
        "required": ["command", "verdict"],
        "properties": {"verdict": {"enum": ["yes", "no"]}},
    },
    "family": {
        "type": "object",
        "required": ["command", "all_distinct", "pairs"],
    },
    "obstruction": {
        "type": "object",
        "required": ["command", "classes", "zero"],
    },
    "classify": {
        "type": "object",
        "required": ["command", "kind"],
        "properties": {"kind": {"enum": ["finite", "infinite", "incomplete"]}},
    },
}


def test_json_outputs_schema_validate():
    import jsonschema

    runs = [
        ("check", ["check", "ex51.dga"]),
        ("selfmaps", ["selfmaps", "ex53.dga"]),
        ("cohomology", ["cohomology", "ex53.dga", "--max-degree", "24"]),
        ("homotopic", ["homotopic", "ex53.dga", "ex53.dga", "ex53_id.map", "ex53_inv.map"]),
        ("nullhomotopic", ["nullhomotopic", "ex53.dga", "ex53.dga", "ex53_id.map"]),
        (
            "obstruction",
            [
                "obstruction", "ex53.dga", "ex53.dga", "ex53_id.map", "ex53_id.map",
                "--v0", "x1,x2,y1,y2,y3",
            ],
        ),
        (
            "family",
            [
                "family", "free_even.dga", "free_even_weighted.dga", "w_to_x.map",
                "--lambda", "2", "--count", "3",
            ],
        ),
        ("classify", ["classify", "ex51.dga", "ex51.dga"]),
    ]
    for command, argv in runs:
        code, out, err = run_cli(*argv, "--json")
        assert code == 0, (command, err)
        data = json.loads(out)
        jsonschema.validate(data, COMMAND_SCHEMAS[command])


def test_cli_homotopic_undetermined_exit_code(tmp_path):
    src = tmp_path / "src.dga"
    src.write_text(
        "algebra src\ngenerator a : 4\ngenerator w : 7\nd w = a^2\n"
    )
    tgt = tmp_path / "tgt.dga"
    tgt.write_text(
        "algebra tgt\ngenerator s : 3\ngenerator b : 4\ngenerator t : 7\nd t = b^2\n"
    )
    fmap = tmp_path / "f.map"
    fmap.write_text("morphism f : src -> tgt\na = b\nw = t\n")
    gmap = tmp_path / "g.map"
    gmap.write_text("morphism g : src -> tgt\na = b\nw = t + s*b\n")
    code, out, _ = run_cli(
        "homotopic", str(src), str(tgt), str(fmap), str(gmap), "--json"
    )
    assert code == 5
    assert json.loads(out)["verdict"] == "undetermined"


def test_cli_precondition_exit_code_for_unknown_morphism(tmp_path):
    fmap = tmp_path / "open.map"
    fmap.write_text("morphism f : ex53 -> ex53\nunknown a\nx1 = a*x1\n")
    code, _, err = run_cli(
        "homotopic", "ex53.dga", "ex53.dga", str(fmap), "ex53_id.map"
    )
    assert code == 4
    assert "fully specified" in err


def test_cli_precondition_exit_code_for_missing_weights():
    code, _, err = run_cli("cohomology", "ex51.dga", "--max-degree", "5", "--weights")
    assert code == 4


def test_cli_stage_filtration(tmp_path):
    fmap = tmp_path / "null.map"
    fmap.write_text("morphism z : two_stage -> two_stage\nu = 0\nv = 0\n")
    code, out, _ = run_cli(
        "nullhomotopic",
        "two_stage.dga",
        "two_stage.dga",
        str(fmap),
        "--filtration",
        "stages",
        "--json",
    )
    assert code == 0
    assert json.loads(out)["verdict"] == "yes"


def test_cli_cohomology_reports_zero_degrees():
    code, out, _ = run_cli("cohomology", "ex53.dga", "--max-degree", "5", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["degrees"]["3"]["dimension"] == 0
    assert data["degrees"]["0"]["dimension"] == 1
