import csv
import io
import json
import math

import pytest

from main import EXIT_BAD_INPUT, EXIT_FAILURE, EXIT_OK, build_parser, main

HELIX = {"real": {"kind": "helix", "radius": 3.0, "pitch": 4.0}, "domain": [0.0, 2.0 * math.pi]}
LINE = {"real": {"kind": "line", "point": [0.0, 0.0, 0.0], "direction": [1.0, 2.0, 2.0]}, "domain": [0.0, 1.0]}


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def _run(*argv):
    return main(["--no-banner", *argv])


def test_parser_knows_every_command():
    parser = build_parser()
    for command in ["frenet", "classify", "mannheim-generate", "mannheim-verify", "study", "ruled-export", "selftest"]:
        assert parser.parse_args([command]).command == command


class TestStudy:
    def test_line_to_dual(self, tmp_path, capsys):
        path = _write(tmp_path, "line.json", {"point": [1, 0, 0], "direction": [0, 0, 1]})
        assert _run("study", "--input", path) == EXIT_OK
        assert json.loads(capsys.readouterr().out) == {"re": [0.0, 0.0, 1.0], "du": [0.0, -1.0, 0.0]}

    def test_steps_go_to_stderr(self, tmp_path, capsys):
        path = _write(tmp_path, "line.json", {"point": [1, 0, 0], "direction": [0, 0, 1]})
        assert _run("study", "--input", path) == EXIT_OK
        assert "line → dual unit vector" in capsys.readouterr().err

    def test_json_mode_is_quiet(self, tmp_path, capsys):
        path = _write(tmp_path, "line.json", {"point": [1, 0, 0], "direction": [0, 0, 1]})
        assert main(["--json", "study", "--input", path]) == EXIT_OK
        captured = capsys.readouterr()
        assert "line → dual unit vector" not in captured.err
        assert "E. STUDY MAP" not in captured.err
        assert json.loads(captured.out)["re"] == [0.0, 0.0, 1.0]

    def test_non_unit_direction_is_rejected(self, tmp_path, capsys):
        path = _write(tmp_path, "line.json", {"point": [1, 0, 0], "direction": [0, 0, 2]})
        assert _run("study", "--input", path) == EXIT_FAILURE
        assert "InvalidLine" in capsys.readouterr().err

    def test_dual_to_line(self, tmp_path, capsys):
        path = _write(tmp_path, "dual.json", {"re": [0, 0, 1], "du": [0, -1, 0]})
        assert _run("study", "--input", path) == EXIT_OK
        line = json.loads(capsys.readouterr().out)
        assert line["point"] == pytest.approx([1.0, 0.0, 0.0])
        assert line["direction"] == pytest.approx([0.0, 0.0, 1.0])

    def test_line_pair(self, tmp_path, capsys):
        lines = [{"point": [0, 0, 0], "direction": [1, 0, 0]}, {"point": [0, 0, 2], "direction": [0, 1, 0]}]
        path = _write(tmp_path, "pair.json", {"lines": lines})
        assert _run("study", "--input", path) == EXIT_OK
        result = json.loads(capsys.readouterr().out)
        assert result["angle"] == pytest.approx(math.pi / 2)
        assert result["distance"] == pytest.approx(2.0)
        assert result["dual_angle"]["re"] == pytest.approx(math.pi / 2)
        assert result["dual_angle"]["du"] == pytest.approx(2.0)

    def test_parallel_pair_has_no_dual_angle(self, tmp_path, capsys):
        lines = [{"point": [0, 0, 0], "direction": [1, 0, 0]}, {"point": [0, 1, 0], "direction": [1, 0, 0]}]
        path = _write(tmp_path, "pair.json", {"lines": lines})
        assert _run("study", "--input", path) == EXIT_OK
        result = json.loads(capsys.readouterr().out)
        assert result["dual_angle"] is None
        assert result["distance"] == pytest.approx(1.0)

    def test_off_sphere_is_a_module_error(self, tmp_path, capsys):
        path = _write(tmp_path, "dual.json", {"re": [0, 0, 2], "du": [0, 0, 0]})
        assert _run("study", "--input", path) == EXIT_FAILURE
        assert "NotOnDualSphere" in capsys.readouterr().err

    def test_unrecognized_object(self, tmp_path, capsys):
        path = _write(tmp_path, "odd.json", {"foo": 1})
        assert _run("study", "--input", path) == EXIT_BAD_INPUT
        assert "InputError" in capsys.readouterr().err


class TestFrenet:
    def test_helix_csv(self, tmp_path, capsys):
        path = _write(tmp_path, "helix.json", HELIX)
        assert _run("frenet", "--input", path, "--samples", "11") == EXIT_OK
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert len(rows) == 11
        assert float(rows[0]["kappa_re"]) == pytest.approx(0.12, abs=1e-10)
        assert float(rows[0]["tau_re"]) == pytest.approx(0.16, abs=1e-10)
        assert float(rows[0]["s"]) == 0.0
        assert float(rows[-1]["s"]) == pytest.approx(10.0 * math.pi, rel=1e-9)

    def test_output_file(self, tmp_path):
        out = tmp_path / "frenet.csv"
        assert _run("frenet", "--input", _write(tmp_path, "helix.json", HELIX), "--output", str(out)) == EXIT_OK
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0].startswith("t,s,s_du,t_re_x")
        assert len(lines) == 102

    def test_profile_input(self, tmp_path, capsys):
        profile = {"kappa": {"kind": "const", "re": 1.0}, "tau": {"kind": "const", "re": 0.0}, "s_range": [0.0, 1.0]}
        assert _run("frenet", "--input", _write(tmp_path, "p.json", profile), "--samples", "5") == EXIT_OK
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert float(rows[2]["kappa_re"]) == pytest.approx(1.0, abs=1e-6)

    def test_straight_line_exits_with_module_error(self, tmp_path, capsys):
        assert _run("frenet", "--input", _write(tmp_path, "line.json", LINE)) == EXIT_FAILURE
        assert "VanishingCurvature" in capsys.readouterr().err


class TestClassify:
    def test_line(self, tmp_path, capsys):
        assert _run("classify", "--input", _write(tmp_path, "line.json", LINE)) == EXIT_OK
        result = json.loads(capsys.readouterr().out)
        assert result["straight_line"] is True
        assert result["planar"] is None

    def test_helix(self, tmp_path, capsys):
        assert _run("classify", "--input", _write(tmp_path, "helix.json", HELIX)) == EXIT_OK
        result = json.loads(capsys.readouterr().out)
        assert result["straight_line"] is False
        assert result["planar"] is False


class TestMannheim:
    def test_generate_then_verify(self, tmp_path, capsys):
        gen = _write(tmp_path, "gen.json", {"lambda": 1.0, "tau1": {"kind": "tan"}})
        bundle = tmp_path / "bundle"
        assert _run("mannheim-generate", "--input", gen, "--output", str(bundle)) == EXIT_OK
        assert {p.name for p in bundle.iterdir()} == {"pair.json", "curve_c.json", "curve_c1.json"}
        metadata = json.loads((bundle / "pair.json").read_text(encoding="utf-8"))
        assert metadata["generator"]["s_range"] == [-1.0, 1.0]
        capsys.readouterr()

        report_path = tmp_path / "report.json"
        assert _run("mannheim-verify", "--input", str(bundle), "--output", str(report_path)) == EXIT_OK
        report = json.loads(report_path.read_text(encoding="utf-8"))
        names = [c["name"] for c in report["checks"]]
        assert names[0] == "bundle_consistency"
        assert "thm2_distance" in names
        assert "osculating" in report

    def test_verify_without_generator_uses_stored_curves(self, tmp_path, capsys):
        # τ̃₁ = 1 + s/2 keeps sin θ̃ away from zero, so C̃ has no inflection
        gen = _write(tmp_path, "gen.json", {"lambda": 1.0, "tau1": {"kind": "poly", "re_coeffs": [1.0, 0.5]}})
        bundle = tmp_path / "bundle"
        assert _run("mannheim-generate", "--input", gen, "--output", str(bundle)) == EXIT_OK
        pair_path = bundle / "pair.json"
        metadata = json.loads(pair_path.read_text(encoding="utf-8"))
        del metadata["generator"]
        pair_path.write_text(json.dumps(metadata), encoding="utf-8")
        capsys.readouterr()

        report_path = tmp_path / "report.json"
        argv = ["mannheim-verify", "--input", str(bundle), "--output", str(report_path),
                "--tol-pair", "1e-4", "--tol-thm", "1e-2"]
        assert _run(*argv) == EXIT_OK
        report = json.loads(report_path.read_text(encoding="utf-8"))
        names = [c["name"] for c in report["checks"]]
        assert report["pass"] is True
        assert "bundle_consistency" not in names
        assert {"normal_binormal", "lambda_constant", "thm2_distance", "thm7_linear"} <= set(names)
        assert report["pair"]["lambda"]["re"] == pytest.approx(1.0, abs=1e-4)

    def test_verify_without_generator_rejects_unrelated_curves(self, tmp_path, capsys):
        bundle = tmp_path / "bundle"
        bundle.mkdir()
        concentric = {"real": {"kind": "helix", "radius": 1.5, "pitch": 4.0}, "domain": [0.0, 2.0 * math.pi]}
        for name, doc in (("pair.json", {"app": "test"}), ("curve_c.json", HELIX), ("curve_c1.json", concentric)):
            _write(bundle, name, doc)
        argv = ["mannheim-verify", "--input", str(bundle), "--output", str(tmp_path / "report.json")]
        assert _run(*argv) == EXIT_FAILURE

    def test_generate_needs_output(self, tmp_path, capsys):
        gen = _write(tmp_path, "gen.json", {"lambda": 1.0, "tau1": {"kind": "tan"}})
        assert _run("mannheim-generate", "--input", gen) == EXIT_BAD_INPUT
        assert "InputError" in capsys.readouterr().err

    def test_pure_dual_lambda(self, tmp_path, capsys):
        gen = _write(tmp_path, "gen.json", {"lambda": [0.0, 1.0], "tau1": {"kind": "tan"}})
        assert _run("mannheim-generate", "--input", gen, "--output", str(tmp_path / "b")) == EXIT_FAILURE
        assert "PureDualLambda" in capsys.readouterr().err

    def test_bad_lambda(self, tmp_path, capsys):
        gen = _write(tmp_path, "gen.json", {"lambda": "one", "tau1": {"kind": "tan"}})
        assert _run("mannheim-generate", "--input", gen, "--output", str(tmp_path / "b")) == EXIT_BAD_INPUT
        assert "InvalidCurveDefinition" in capsys.readouterr().err


class TestRuledExport:
    def test_helicoid_mesh(self, tmp_path):
        from core.ruled_surface import helicoid_definition

        out = tmp_path / "helicoid.obj"
        path = _write(tmp_path, "helicoid.json", helicoid_definition(0.5))
        argv = ["ruled-export", "--input", path, "--output", str(out), "--samples", "100", "--u-samples", "20"]
        assert _run(*argv) == EXIT_OK
        lines = out.read_text(encoding="ascii").splitlines()
        assert sum(line.startswith("v ") for line in lines) == 2000
        assert sum(line.startswith("f ") for line in lines) == 2 * 99 * 19

    def test_json_summary(self, tmp_path, capsys):
        from core.ruled_surface import helicoid_definition

        out = tmp_path / "mesh.obj"
        path = _write(tmp_path, "helicoid.json", helicoid_definition(0.5))
        assert main(["--json", "ruled-export", "--input", path, "--output", str(out), "--samples", "10"]) == EXIT_OK
        summary = json.loads(capsys.readouterr().out)
        assert summary == {"command": "ruled-export", "output": str(out), "rulings": 10, "degenerate": False}


class TestBadInput:
    def test_missing_file(self, tmp_path, capsys):
        assert _run("frenet", "--input", str(tmp_path / "nope.json")) == EXIT_BAD_INPUT
        assert "InputError" in capsys.readouterr().err

    def test_invalid_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{oops", encoding="utf-8")
        assert _run("classify", "--input", str(path)) == EXIT_BAD_INPUT
        assert "InputError" in capsys.readouterr().err

    def test_bad_u_range(self, tmp_path, capsys):
        path = _write(tmp_path, "helix.json", HELIX)
        assert _run("ruled-export", "--input", path, "--u-range", "1", "-1") == EXIT_BAD_INPUT
        assert "InputError" in capsys.readouterr().err

    def test_error_json_in_json_mode(self, tmp_path, capsys):
        assert main(["--json", "study", "--input", str(tmp_path / "nope.json")]) == EXIT_BAD_INPUT
        captured = capsys.readouterr()
        assert json.loads(captured.out)["error"] == "InputError"

    def test_unknown_curve_kind(self, tmp_path, capsys):
        path = _write(tmp_path, "c.json", {"real": {"kind": "spiral"}})
        assert _run("frenet", "--input", path) == EXIT_BAD_INPUT
        assert "InvalidCurveDefinition" in capsys.readouterr().err


def test_selftest_subset_via_suite(tmp_path):
    from core.selftest import AcceptanceSuite

    (result,) = AcceptanceSuite(seed=1).run(only=[2])
    assert result.passed
