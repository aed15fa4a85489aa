import io
import json

import numpy as np
import pytest

from rootcert import HorizonError, LinearOperator, ParseError, Poly
from rootcert.cli import (RunConfig, main, parse_domain, parse_operator,
                          run, serialize_operator)

MUL_Z_DOC = {
    "form": "monomial", "N": 3,
    "images": {str(k): [[0.0, 0.0]] * (k + 1) + [[1.0, 0.0]] for k in range(4)},
}
DERIV_MINUS_Z_DOC = {
    "form": "diff", "N": 8,
    "coeffs": {"0": [[0, 0], [-1, 0]], "1": [[1, 0]]},
}


@pytest.fixture
def mulz_file(tmp_path):
    path = tmp_path / "mulz.json"
    doc = dict(MUL_Z_DOC)
    doc["N"] = 8
    doc["images"] = {str(k): [[0.0, 0.0]] * (k + 1) + [[1.0, 0.0]]
                     for k in range(9)}
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def dmz_file(tmp_path):
    path = tmp_path / "dmz.json"
    path.write_text(json.dumps(DERIV_MINUS_Z_DOC))
    return str(path)


class TestParseOperator:
    def test_monomial_form(self):
        doc = {"form": "monomial", "N": 2, "images": {"0": [[0, 0], [1, 0]]}}
        T = parse_operator(json.dumps(doc))
        assert T.horizon == 2
        np.testing.assert_allclose(T.images[0].coeffs, [0, 1])
        assert T.images[1].is_zero() and T.images[2].is_zero()

    def test_diff_form_matches_expansion(self):
        T = parse_operator(json.dumps(DERIV_MINUS_Z_DOC))
        ref = LinearOperator.from_diff_expansion([Poly([0, -1]), Poly([1])], 8)
        for a, b in zip(T.images, ref.images):
            assert a.allclose(b, rtol=1e-12) or (a.is_zero() and b.is_zero())

    def test_malformed_pair_names_entry(self):
        doc = {"form": "monomial", "N": 1, "images": {"0": [[1]]}}
        with pytest.raises(ParseError, match=r"entry 0\[0\]"):
            parse_operator(json.dumps(doc))

    def test_horizon_violation(self):
        doc = {"form": "monomial", "N": 1, "images": {"5": [[1, 0]]}}
        with pytest.raises(HorizonError):
            parse_operator(json.dumps(doc))

    def test_bad_form(self):
        with pytest.raises(ParseError):
            parse_operator(json.dumps({"form": "what", "N": 1, "images": {}}))

    def test_not_json(self):
        with pytest.raises(ParseError):
            parse_operator("{form: monomial")

    def test_bounded_degree_must_match(self):
        doc = {"form": "monomial", "N": 3, "bounded_degree": 2, "images": {}}
        with pytest.raises(ParseError):
            parse_operator(json.dumps(doc))

    def test_round_trip_battery(self, battery):
        for name, op in battery.items():
            back = parse_operator(json.dumps(serialize_operator(op)))
            assert back.horizon == op.horizon, name
            assert back.bounded_degree == op.bounded_degree
            for a, b in zip(back.images, op.images):
                assert a.allclose(b, rtol=1e-12) or (a.is_zero() and b.is_zero())


class TestParseDomain:
    def test_preset(self):
        dom = parse_domain(["unit-disk"], 1e-9)
        assert dom.classify(0).value == "interior"

    def test_eight_reals(self):
        dom = parse_domain(["1", "0", "0", "0", "0", "0", "1", "0"], 1e-9)
        assert dom.side(1j) > 0

    def test_moebius_prefix(self):
        dom = parse_domain(["moebius", "0", "-1", "0", "1", "1", "0", "1", "0"],
                           1e-9)
        assert dom.classify(0).value == "interior"     # the unit disk again

    def test_wrong_count(self):
        with pytest.raises(ParseError):
            parse_domain(["1", "2", "3"], 1e-9)

    def test_non_numeric(self):
        with pytest.raises(ParseError):
            parse_domain(["moebius"] + ["x"] * 8, 1e-9)


class TestExitCodes:
    def test_falsified_open_coordinate_multiplication(self, mulz_file):
        code = main(["certify", mulz_file, "--class", "open",
                     "--domain", "upper-half-plane", "--json"])
        assert code == 1

    def test_consistent_closed(self, mulz_file):
        code = main(["certify", mulz_file, "--class", "closed",
                     "--domain", "upper-half-plane"])
        assert code == 0

    def test_counterexample_scenario(self, dmz_file, capsys):
        code = main(["certify", dmz_file, "--class", "open",
                     "--domain", "lower-half-plane", "--json"])
        assert code == 1
        doc = json.loads(capsys.readouterr().out)
        assert doc["verdict"] == "falsified"
        assert doc["diagnostics"]["minimal_k"] == 0
        assert doc["diagnostics"]["closed_verdict"] == "evidence-consistent"
        statuses = {e["n"]: e["status"]
                    for e in doc["diagnostics"]["symbols_closed"]}
        assert all(s == "no-zero-found" for s in statuses.values())
        assert abs(doc["witness"]["bad_root"][0]) < 1e-9
        assert abs(doc["witness"]["bad_root"][1]) < 1e-9

    def test_usage_error_bad_preset(self, mulz_file):
        code = main(["certify", mulz_file, "--class", "open",
                     "--domain", "no-such-place"])
        assert code == 2

    def test_usage_error_missing_file(self):
        code = main(["certify", "/nonexistent.json", "--class", "open",
                     "--domain", "unit-disk"])
        assert code == 2

    def test_usage_error_malformed_operator(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{}")
        code = main(["symbol", str(path), "--domain", "unit-disk", "--n", "1"])
        assert code == 2

    def test_argparse_error(self):
        assert main(["certify"]) == 2

    def test_numerical_failure_maps_to_exit_3(self, mulz_file, monkeypatch):
        from rootcert.errors import NonConvergence
        import rootcert.cli as cli_mod

        def blow_up(*args, **kwargs):
            raise NonConvergence("forced")

        monkeypatch.setattr(cli_mod, "certify_closed", blow_up)
        code = main(["certify", mulz_file, "--class", "closed",
                     "--domain", "upper-half-plane"])
        assert code == 3


class TestSubcommands:
    def test_symbol_unit_disk_cube(self, tmp_path, capsys):
        path = tmp_path / "id.json"
        path.write_text(json.dumps({"form": "diff", "N": 8,
                                    "coeffs": {"0": [[1, 0]]}}))
        code = main(["symbol", str(path), "--domain", "unit-disk",
                     "--n", "3", "--json"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        got = np.array([[complex(re, im) for re, im in row]
                        for row in doc["coeffs"]])
        # (2i)^3 (1 - zw)^3 has diagonal entries -8i, 24i, -24i, 8i
        expect = np.zeros((4, 4), complex)
        for k, v in enumerate([-8j, 24j, -24j, 8j]):
            expect[k, k] = v
        np.testing.assert_allclose(got, expect, atol=1e-12)

    def test_falsify_subcommand(self, mulz_file, capsys):
        code = main(["falsify", mulz_file, "--domain", "upper-half-plane",
                     "--source", "interior", "--trials", "200",
                     "--degrees", "0..4", "--json"])
        assert code == 1
        doc = json.loads(capsys.readouterr().out)
        assert doc["witness"]["type"] == "polynomial"
        assert abs(doc["witness"]["bad_root"][0]) < 1e-9

    def test_falsify_no_witness(self, tmp_path, capsys):
        path = tmp_path / "id.json"
        path.write_text(json.dumps({"form": "diff", "N": 6,
                                    "coeffs": {"0": [[1, 0]]}}))
        code = main(["falsify", str(path), "--domain", "upper-half-plane",
                     "--trials", "300", "--degrees", "0..5"])
        assert code == 0

    def test_gcd_image_subcommand(self, tmp_path, capsys):
        doc = {"form": "monomial", "N": 4,
               "images": {"0": [[0, 0], [-1, 0]], "3": [[1, 0]]}}
        path = tmp_path / "swap.json"
        path.write_text(json.dumps(doc))
        code = main(["gcd-image", str(path), "--domain", "upper-half-plane",
                     "--n", "2", "--samples", "50", "--json"])
        assert code == 0
        out = json.loads(capsys.readouterr().out)
        np.testing.assert_allclose(
            [complex(re, im) for re, im in out["gcd"]], [0, 1], atol=1e-6)
        assert out["stable_under_doubling"] is True

    def test_classify_point(self, capsys):
        code = main(["classify-point", "--domain", "unit-disk",
                     "--point", "0.2", "0.1", "--json"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["tag"] == "interior"

    def test_custom_moebius_domain(self, mulz_file):
        code = main(["certify", mulz_file, "--class", "closed",
                     "--domain", "moebius", "1", "0", "0", "0", "0", "0",
                     "1", "0", "--samples", "128"])
        assert code == 0


class TestTextOutput:
    def test_certify_text_mentions_witness(self, mulz_file, capsys):
        code = main(["certify", mulz_file, "--class", "open",
                     "--domain", "upper-half-plane"])
        out = capsys.readouterr().out
        assert code == 1
        assert "verdict: falsified" in out
        assert "bad root = 0" in out

    def test_symbol_text_rows(self, tmp_path, capsys):
        path = tmp_path / "id.json"
        path.write_text(json.dumps({"form": "diff", "N": 4,
                                    "coeffs": {"0": [[1, 0]]}}))
        code = main(["symbol", str(path), "--domain", "upper-half-plane",
                     "--n", "2"])
        out = capsys.readouterr().out
        assert code == 0
        assert "z^0" in out and "z^2" in out

    def test_rank_one_report_carries_form(self, tmp_path, capsys):
        doc = {"form": "monomial", "N": 2,
               "images": {str(k): [[0, 1], [1, 0]] for k in range(3)}}
        path = tmp_path / "r1.json"
        path.write_text(json.dumps(doc))
        code = main(["certify", str(path), "--class", "closed",
                     "--domain", "upper-half-plane", "--json"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["verdict"] == "certified-rank-one"
        form = report["diagnostics"]["rank_one"]
        assert form["direction_root_tags"] == ["exterior"]
        assert len(form["alphas"]) == 3


class TestDeterminism:
    def test_json_reports_identical(self, mulz_file, capsys):
        args = ["certify", mulz_file, "--class", "open",
                "--domain", "upper-half-plane", "--seed", "5", "--json"]
        main(args)
        first = capsys.readouterr().out
        main(args)
        second = capsys.readouterr().out
        assert first == second

    def test_run_config_interface(self, capsys):
        cfg = RunConfig(command="classify-point", operator_path=None,
                        domain_spec=["upper-half-plane"], json_output=True,
                        point=(0.0, 2.0))
        buf = io.StringIO()
        code = run(cfg, None, buf)
        assert code == 0
        assert json.loads(buf.getvalue())["tag"] == "interior"
