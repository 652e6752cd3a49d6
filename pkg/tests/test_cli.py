import json

import pytest

from ejump.cli import (
    RunOptions,
    emit_report,
    emit_session,
    main,
    parse_report,
    parse_session,
    run_command,
)
from ejump.errors import ParseError, ValidationError

CUSP_SESSION = """\
# characteristic-2 cusp
base p=2 vars t
tower K : base adjoin u alg u^2 + t
ideal I vars y,x : x^2 + y^3 + t
point P : y, x^2 + t
cmd schroer K
cmd ejump I P roots t:1
cmd height-one I P var t max 3
"""


def run_session_text(text, options=None):
    session = parse_session(text)
    options = options or RunOptions()
    return [run_command(session, cmd, options) for cmd in session.commands]


class TestParsing:
    def test_base_declaration(self):
        session = parse_session("base p=2 vars t\n")
        assert session.base.p == 2
        assert session.base.varnames == ("t",)

    def test_tower_declaration(self):
        session = parse_session("base p=2 vars t\ntower K : base adjoin u alg u^2 + t\n")
        K = session.towers["K"]
        assert K.height == 1
        u = K.gen("u")
        assert u * u == K.base_var("t")

    def test_full_cusp_session(self):
        session = parse_session(CUSP_SESSION)
        assert set(session.towers) == {"K"}
        assert set(session.ideals) == {"I"}
        assert set(session.points) == {"P"}
        assert [c.name for c in session.commands] == ["schroer", "ejump", "height-one"]

    def test_unknown_symbol_position(self):
        with pytest.raises(ParseError) as err:
            parse_session("base p=2 vars t\nideal I vars x : x + w\n")
        assert err.value.line == 2

    def test_forward_reference_rejected(self):
        with pytest.raises(ValidationError):
            parse_session("base p=2 vars t\ncmd schroer K\n")

    def test_duplicate_identifier_rejected(self):
        text = "base p=2 vars t\ntower K : base adjoin y trans\ntower K : base adjoin z trans\n"
        with pytest.raises(ValidationError):
            parse_session(text)

    def test_p_power_radicand_is_validation_error(self):
        text = "base p=2 vars t\ntower K : base adjoin u root t^2 exp 1\n"
        with pytest.raises(ValidationError):
            parse_session(text)

    def test_nonprime_characteristic(self):
        with pytest.raises(ValidationError):
            parse_session("base p=6 vars t\n")


class TestCommands:
    def test_schroer_result(self):
        reports = run_session_text(CUSP_SESSION)
        assert reports[0].status == "ok"
        assert reports[0].result == {"pdeg": 1, "trdeg": 0, "predicted_edim": 1}

    def test_ejump_result_keys(self):
        reports = run_session_text(CUSP_SESSION)
        result = reports[1].result
        for key in (
            "edim_before",
            "edim_after",
            "ejump",
            "bound_lemma",
            "bound_theorem",
            "ecodim_after",
            "satisfied",
        ):
            assert key in result
        assert result["ejump"] == 1
        assert all(result["satisfied"].values())

    def test_height_one_result(self):
        reports = run_session_text(CUSP_SESSION)
        assert reports[2].result == {"variable": "t", "jumps": [1, 1, 1], "stable": True}

    def test_field_route_height_one(self):
        text = (
            "base p=2 vars t\n"
            "tower K : base adjoin u alg u^2 + t\n"
            "cmd height-one K var t max 3\n"
        )
        reports = run_session_text(text)
        assert reports[0].result == {"variable": "t", "jumps": [1, 1, 1], "stable": True}

    def test_verify_structure(self):
        text = (
            "base p=2 vars t\n"
            "tower K : base adjoin u alg u^2 + t\n"
            "cmd verify-structure K roots t:2\n"
        )
        reports = run_session_text(text)
        assert reports[0].result["passed"] is True
        assert reports[0].result["dimension_expected"] == 4

    def test_domain_error_report(self):
        text = "base p=2 vars t\nideal I vars x : x + 1\npoint P : x\ncmd edim I P\n"
        reports = run_session_text(text)
        assert reports[0].status == "error"
        assert reports[0].error["type"] == "NotContained"


class TestEmission:
    def test_json_roundtrip(self):
        reports = run_session_text(CUSP_SESSION)
        for report in reports:
            data = json.loads(emit_report(report, "json"))
            assert parse_report(data) == report

    def test_session_json_schema_version(self):
        reports = run_session_text(CUSP_SESSION)
        doc = json.loads(emit_session(reports, "json"))
        assert doc["schema_version"] == 1
        assert len(doc["reports"]) == 3

    def test_json_deterministic(self):
        a = emit_session(run_session_text(CUSP_SESSION), "json")
        b = emit_session(run_session_text(CUSP_SESSION), "json")
        assert a == b

    def test_text_format(self):
        reports = run_session_text(CUSP_SESSION)
        text = emit_session(reports, "text").decode()
        assert text.startswith("ok cmd schroer K")
        assert "predicted_edim: 1" in text


class TestMain:
    def test_exit_zero(self, tmp_path, capsys):
        path = tmp_path / "session.txt"
        path.write_text(CUSP_SESSION)
        assert main(["--input", str(path)]) == 0
        out = capsys.readouterr().out
        assert "ejump: 1" in out

    def test_exit_one_on_parse_error(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("frobnicate\n")
        assert main(["--input", str(path)]) == 1
        assert "error" in capsys.readouterr().err

    def test_exit_two_on_domain_error(self, tmp_path, capsys):
        path = tmp_path / "dom.txt"
        path.write_text("base p=2 vars t\nideal I vars x : x + 1\npoint P : x\ncmd edim I P\n")
        assert main(["--input", str(path)]) == 2

    def test_strict_flag_passes_on_sound_input(self, tmp_path, capsys):
        path = tmp_path / "ok.txt"
        path.write_text(CUSP_SESSION)
        assert main(["--input", str(path), "--strict", "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["schema_version"] == 1

    def test_missing_file(self, capsys):
        assert main(["--input", "/nonexistent/session.txt"]) == 1
