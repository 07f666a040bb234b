import json

from bs_ktheory.cli import main
from bs_ktheory.pv import bs_input, kinput_to_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBs:
    def test_verdict_ok(self, capsys):
        code, out, _ = run(capsys, "bs", "5")
        assert code == 0
        assert "K1 = Z + Z/4" in out
        assert "verdict: ISOMORPHIC" in out

    def test_json_mode(self, capsys):
        code, out, _ = run(capsys, "--json", "bs", "5")
        assert code == 0
        data = json.loads(out)
        assert data["verdict"] is True
        assert data["rhs"]["k1"]["torsion"] == [4]

    def test_excluded_parameter(self, capsys):
        code, _, err = run(capsys, "bs", "1")
        assert code == 2
        assert "n not in {0, 1}" in err

    def test_klein_bottle(self, capsys):
        code, out, _ = run(capsys, "bs", "-1")
        assert code == 0
        assert "K1 = Z + Z/2" in out


class TestPv:
    def test_bs_input_file(self, capsys, tmp_path):
        path = tmp_path / "input.json"
        path.write_text(json.dumps(kinput_to_json(bs_input(3))), encoding="utf-8")
        code, out, _ = run(capsys, "pv", str(path))
        assert code == 0
        data = json.loads(out)
        assert data["k1_crossed"]["torsion"] == [2]
        assert data["ledger"]["[a]"]["order"] == "inf"

    def test_trivial_action_file(self, capsys, tmp_path):
        payload = {
            "k0": {"kind": "fg", "group": {"free_rank": 1, "torsion": [], "gens": ["1"]}},
            "k1": {"kind": "fg", "group": {"free_rank": 0, "torsion": [], "gens": []}},
            "alpha0": {"matrix": [[1]]},
            "alpha1": {"matrix": []},
            "ledger": {"[1]": {"group": "k0", "coeffs": [1], "order": "inf"}},
        }
        path = tmp_path / "trivial.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        code, out, _ = run(capsys, "pv", str(path))
        assert code == 0
        data = json.loads(out)
        assert data["k0_crossed"]["free_rank"] == 1
        assert data["k1_crossed"]["free_rank"] == 1

    def test_malformed_json(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        code, _, err = run(capsys, "pv", str(path))
        assert code == 2

    def test_missing_file(self, capsys):
        code, _, _ = run(capsys, "pv", "/no/such/file.json")
        assert code == 2

    def test_unresolved_extension_exit_code(self, capsys, tmp_path):
        payload = {
            "k0": {"kind": "fg", "group": {"free_rank": 1, "torsion": [4], "gens": ["1", "t"]}},
            "k1": {"kind": "fg", "group": {"free_rank": 1, "torsion": [], "gens": ["w"]}},
            "alpha0": {"matrix": [[1, 0], [0, 1]]},
            "alpha1": {"matrix": [[3]]},
            "ledger": {"[1]": {"group": "k0", "coeffs": [1, 0], "order": "inf"}},
        }
        path = tmp_path / "unresolved.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        code, out, _ = run(capsys, "pv", str(path))
        assert code == 4
        data = json.loads(out)
        assert data["error"] == "unresolved extension"
        assert data["partial"]


class TestHomology:
    def test_table(self, capsys):
        code, out, _ = run(capsys, "homology", "<a,b|a b a^-1 = b^3>")
        assert code == 0
        assert "H1 = Z + Z/2" in out and "H2 = 0" in out

    def test_torus(self, capsys):
        code, out, _ = run(capsys, "homology", "<a,b|a b a^-1 b^-1>")
        assert code == 0
        assert "H1 = Z^2" in out and "H2 = Z" in out

    def test_proper_power(self, capsys):
        code, _, err = run(capsys, "homology", "<a|a^2>")
        assert code == 2

    def test_parse_error(self, capsys):
        code, _, _ = run(capsys, "homology", "<a| >")
        assert code == 2


class TestKhom:
    def test_json(self, capsys):
        code, out, _ = run(capsys, "--json", "khom", "<a,b|a b a^-1 = b^6>")
        assert code == 0
        data = json.loads(out)
        assert data["k1"]["torsion"] == [5]
        assert data["ledger"]["[pt]"]["order"] == "inf"


class TestPair:
    def test_all_pass(self, capsys):
        code, out, _ = run(capsys, "pair", "--n", "2", "--depth", "5", "--trials", "200")
        assert code == 0
        assert "passed: 200  failed: 0" in out

    def test_negative_base(self, capsys):
        code, out, _ = run(capsys, "--json", "pair", "--n", "-2", "--depth", "4", "--trials", "150")
        assert code == 0
        data = json.loads(out)
        assert data["failed"] == 0 and data["passed"] == 150

    def test_depth_zero_skips(self, capsys):
        code, out, _ = run(capsys, "--json", "pair", "--n", "2", "--depth", "0", "--trials", "60")
        assert code == 0
        data = json.loads(out)
        assert data["failed"] == 0
        assert data["skipped"] > 0
        assert data["passed"] + data["skipped"] == 60

    def test_zero_base_rejected(self, capsys):
        code, _, _ = run(capsys, "pair", "--n", "0", "--trials", "5")
        assert code == 2


class TestSnf:
    def test_literal(self, capsys):
        code, out, _ = run(capsys, "--json", "snf", "[[2,4],[6,8]]")
        assert code == 0
        data = json.loads(out)
        assert data["diag"] == [2, 4]

    def test_file(self, capsys, tmp_path):
        path = tmp_path / "m.json"
        path.write_text("[[1,0],[0,1]]", encoding="utf-8")
        code, out, _ = run(capsys, "snf", str(path))
        assert code == 0
        assert "diag: [1, 1]" in out

    def test_bad_input(self, capsys):
        code, _, _ = run(capsys, "snf", "not a matrix")
        assert code == 2
        code, _, _ = run(capsys, "snf", "[[1,2],[3]]")
        assert code == 2


class TestOutputContract:
    def test_determinism(self, capsys):
        first = run(capsys, "--json", "bs", "7")
        second = run(capsys, "--json", "bs", "7")
        assert first == second
        third = run(capsys, "pair", "--n", "3", "--depth", "4", "--seed", "9", "--trials", "50")
        fourth = run(capsys, "pair", "--n", "3", "--depth", "4", "--seed", "9", "--trials", "50")
        assert third == fourth

    def test_out_flag_writes_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(capsys, "--json", "--out", str(target), "bs", "5")
        assert code == 0
        assert out == ""
        data = json.loads(target.read_text(encoding="utf-8"))
        assert data["verdict"] is True
