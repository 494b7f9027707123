import json

import pytest

from defring.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_certify_twisted_p2n1(capsys):
    code, out, err = run_cli(capsys, "certify", "twisted", "--p", "2", "--n", "1")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "certified"
    assert "certified" in err


def test_certify_by_name(capsys):
    code, out, _ = run_cli(capsys, "certify", "twisted-p2n1")
    assert code == 0


def test_certify_refuted_control_exit_code(capsys):
    code, out, _ = run_cli(capsys, "certify", "twisted-p3n1-commutative")
    assert code == 1
    assert json.loads(out)["verdict"] == "refuted"


def test_admissibility_rejection(capsys):
    # d = 4, p = 5: 4 is not < 4 and not a power of 5
    code, out, err = run_cli(capsys, "example", "standard", "--d", "4", "--p", "5")
    assert code == 2
    assert "d < p-1 or d = p^f" in err


def test_admissible_edge_cases(capsys):
    # d = 3 = 3^1 is admissible for p = 3; d = 2 < 6 admissible for p = 7
    code, _, _ = run_cli(capsys, "example", "standard", "--d", "3", "--p", "3")
    assert code == 0
    code, _, _ = run_cli(capsys, "example", "standard", "--d", "2", "--p", "7")
    assert code == 0


def test_oracle_subcommand(capsys):
    code, out, err = run_cli(capsys, "oracle", "twisted-p2n1", "--ring", "Z4")
    assert code == 0
    data = json.loads(out)
    assert data["bijective"] is True
    assert data["class_count"] == 2


def test_oracle_unknown_ring(capsys):
    code, _, err = run_cli(capsys, "oracle", "twisted-p2n1", "--ring", "nope")
    assert code == 2
    assert "unknown ring" in err


def test_cohomology_subcommand(capsys):
    code, out, _ = run_cli(capsys, "cohomology", "twisted-p2n1", "--degree", "1")
    assert code == 0
    assert json.loads(out)["h1_dim"] == 1


def test_example_output(capsys):
    code, out, _ = run_cli(capsys, "example", "twisted-p2n1")
    assert code == 0
    data = json.loads(out)
    assert data["gamma"]["order"] == 24
    assert data["K_size"] == 4


def test_verify_roundtrip(tmp_path, capsys):
    cert_path = tmp_path / "cert.json"
    code, out, _ = run_cli(capsys, "certify", "twisted-p2n1", "--out", str(cert_path))
    assert code == 0
    code, out, _ = run_cli(capsys, "verify", str(cert_path))
    assert code == 0
    assert json.loads(out)["valid"] is True
    # tamper and re-verify
    data = json.loads(cert_path.read_text())
    data["tangent_dim"] = 7
    cert_path.write_text(json.dumps(data))
    code, out, _ = run_cli(capsys, "verify", str(cert_path))
    assert code == 1


def test_certify_deterministic_output(capsys):
    code1, out1, _ = run_cli(capsys, "certify", "twisted-p2n1")
    code2, out2, _ = run_cli(capsys, "certify", "twisted-p2n1")
    assert out1 == out2


def test_oracle_deterministic_modulo_runtime(capsys):
    _, out1, _ = run_cli(capsys, "oracle", "twisted-p2n1", "--ring", "dual")
    _, out2, _ = run_cli(capsys, "oracle", "twisted-p2n1", "--ring", "dual")
    d1, d2 = json.loads(out1), json.loads(out2)
    d1.pop("runtime_ms")
    d2.pop("runtime_ms")
    assert d1 == d2
