import io
import json

import pytest

from r2forms.cli import run


def invoke(argv):
    buf = io.StringIO()
    code = run(argv, out=buf)
    return code, buf.getvalue()


def test_validate_golden(golden_path):
    code, out = invoke(["validate", str(golden_path)])
    assert code == 0
    payload = json.loads(out)
    assert payload == {
        "irreducible": True,
        "positive": True,
        "boundary_bound": True,
        "ok": True,
        "messages": [],
    }


def test_validate_reducible(tmp_path):
    path = tmp_path / "reducible.json"
    path.write_text(
        json.dumps(
            {
                "L": [1, 0],
                "C": [2, 3, -11, 6],
                "region": [[[1, 1], [1, 1]], [[2, 1], [1, 1]], [[2, 1], [2, 1]], [[1, 1], [2, 1]]],
                "c": 8,
            }
        )
    )
    code, out = invoke(["validate", str(path)])
    assert code == 1
    assert "rational root" in out


def test_validate_x2_factor(tmp_path):
    path = tmp_path / "x2.json"
    path.write_text(
        json.dumps(
            {
                "L": [1, 0],
                "C": [0, 1, 1, 1],
                "region": [[[1, 1], [1, 1]], [[2, 1], [1, 1]], [[2, 1], [2, 1]], [[1, 1], [2, 1]]],
                "c": 8,
            }
        )
    )
    code, out = invoke(["validate", str(path)])
    assert code == 1
    assert "x2" in out


def test_malformed_instance_exit_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"L": [1, 0], "C": [1, 0, 1, 1], "c": 8}')
    code, _ = invoke(["validate", str(path)])
    assert code == 2
    assert "region" in capsys.readouterr().err


def test_usage_error_exit_2():
    code, _ = invoke(["rho"])  # missing instance and moduli
    assert code == 2


def test_volume(golden_path):
    code, out = invoke(["volume", str(golden_path)])
    assert code == 0
    payload = json.loads(out)
    assert payload["volume"] == 1.0
    assert payload["volume_exact"] == [1, 1]


def test_rho_trivial(golden_path):
    code, out = invoke(["rho", str(golden_path), "--d1", "1", "--d2", "1"])
    assert code == 0
    assert json.loads(out) == {"d1": 1, "d2": 1, "count": 1}


def test_rho_routes_agree(golden_path):
    _, fast = invoke(["rho", str(golden_path), "--d1", "12", "--d2", "5"])
    _, brute = invoke(["rho", str(golden_path), "--d1", "12", "--d2", "5", "--bruteforce"])
    assert json.loads(fast) == json.loads(brute)


def test_eulerfactor(golden_path):
    code, out = invoke(["eulerfactor", str(golden_path), "--p", "5", "--V", "4"])
    assert code == 0
    payload = json.loads(out)
    assert payload["p"] == 5
    assert payload["exact"] is True
    assert payload["value"] == pytest.approx(0.965632)
    code, _ = invoke(["eulerfactor", str(golden_path), "--p", "2"])
    assert code == 2  # even prime routes to the k2 subcommand


def test_k2(golden_path):
    code, out = invoke(["k2", str(golden_path), "--nmax", "8", "--tol", "0.001"])
    assert code == 0
    payload = json.loads(out)
    assert payload["p"] == 2
    assert 0.0 <= payload["value"] <= 4.0


def test_constant(golden_path):
    code, out = invoke(["constant", str(golden_path), "--P", "150", "--V", "4"])
    assert code == 0
    payload = json.loads(out)
    assert payload["volume"] == 1.0
    assert payload["prime_cutoff"] == 150
    assert payload["factors"][0]["p"] == 2
    product = 1.0
    for factor in payload["factors"]:
        product *= factor["value"]
    assert payload["product"] == pytest.approx(product, rel=1e-9)
    assert payload["predicted_constant"] == pytest.approx(
        9.86960440109 * payload["volume"] * payload["product"], rel=1e-9
    )
    assert "partial_products" in payload["diagnostics"]


def test_sum(golden_path):
    code, out = invoke(["sum", str(golden_path), "--X", "10"])
    assert code == 0
    payload = json.loads(out)
    assert payload["lattice_points"] == 121
    assert payload["S"] == payload["S_over_X2"] * 100


def test_verify_csv_shape(golden_path):
    code, out = invoke(
        ["verify", str(golden_path), "--X-list", "10,20,40", "--P", "200", "--V", "4"]
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "X,S,predicted,ratio,eta_ref"
    assert len(lines) == 4
    for line in lines[1:]:
        assert len(line.split(",")) == 5


def test_verify_bad_x_list(golden_path, capsys):
    code, _ = invoke(["verify", str(golden_path), "--X-list", "10,abc"])
    assert code == 2


def test_idempotent_outputs(golden_path):
    for argv in (
        ["rho", str(golden_path), "--d1", "6", "--d2", "3"],
        ["eulerfactor", str(golden_path), "--p", "7", "--V", "4"],
        ["k2", str(golden_path), "--nmax", "6"],
        ["verify", str(golden_path), "--X-list", "5,10", "--P", "150", "--V", "4"],
    ):
        _, first = invoke(argv)
        _, second = invoke(argv)
        assert first == second
