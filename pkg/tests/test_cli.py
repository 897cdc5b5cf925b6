import json
from fractions import Fraction

import pytest

from pviforge.cli import main, parse_word, read_config, run
from pviforge.errors import ParseError
from pviforge.series_curve import klein_parameterization


@pytest.fixture(autouse=True)
def _isolated(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)


def _err(capsys):
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


# ------------------------------------------------------------------ orbit


def test_orbit_klein_json(tmp_path):
    out = tmp_path / "o.json"
    code, rep = run(["orbit", "--group", "klein", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["size"] == 7
    assert doc["beta1_squared"]["images"] == [5, 4, 3, 6, 1, 0, 2]
    assert doc["beta2_squared"]["images"] == [3, 2, 1, 0, 6, 4, 5]
    assert doc["genus"] == 0 and doc["group_order"] == 2520
    assert doc["table"][1] == [0, 0, 1]


def test_orbit_output_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["orbit", "--out", str(a), "--seed", "3"])
    run(["orbit", "--out", str(b), "--seed", "3"])
    assert a.read_bytes() == b.read_bytes()


def test_orbit_text_format(capsys):
    code, _ = run(["orbit", "--format", "text"])
    assert code == 0
    out = capsys.readouterr().out
    assert "size" in out and not out.lstrip().startswith("{")


def test_orbit_overflow(capsys):
    code, _ = run(["orbit", "--max-orbit", "3"])
    assert code == 2
    assert _err(capsys)["error"] == "OrbitOverflow"


def test_orbit_missing_triple_file(capsys):
    code, _ = run(["orbit", "--triple", "nope.json"])
    assert code == 3


def test_orbit_full_braid_group():
    code, rep = run(["orbit", "--group", "klein", "--action", "b3", "--out", "o.json"])
    assert code == 0 and rep["size"] == 7


def test_orbit_of_commuting_triple(tmp_path):
    M = [[0, 1], [-1, 0]]
    (tmp_path / "t.json").write_text(json.dumps({"matrices": [M, M, M]}))
    code, rep = run(["orbit", "--triple", "t.json", "--out", "o.json"])
    assert code == 0 and rep["size"] == 1


def test_orbit_bad_triple_file(tmp_path):
    (tmp_path / "t.json").write_text(json.dumps({"matrices": [[[1]]]}))
    code, _ = run(["orbit", "--triple", "t.json"])
    assert code == 3


# -------------------------------------------------------------- config


def test_config_file_is_read(tmp_path):
    (tmp_path / "pviforge.toml").write_text("precision = 128\nmax-orbit = 3  # tiny\n")
    code, _ = run(["orbit"])
    assert code == 2
    code, rep = run(["orbit", "--max-orbit", "50", "--out", "o.json"])
    assert code == 0 and rep["config"]["precision"] == 128


def test_config_errors(tmp_path):
    (tmp_path / "bad.toml").write_text("colour = blue\n")
    with pytest.raises(ParseError):
        read_config(str(tmp_path / "bad.toml"))
    assert run(["orbit", "--config", "bad.toml"])[0] == 3
    assert read_config(str(tmp_path / "absent.toml")) == {}


def test_validation_exit_codes():
    assert run(["solve", "--order", "3"])[0] == 3
    assert run(["orbit", "--precision", "16"])[0] == 3


def test_usage_error_exits_3():
    with pytest.raises(SystemExit) as e:
        run(["orbit", "--no-such-flag"])
    assert e.value.code == 3


# --------------------------------------------------------- reconstruct


def test_reconstruct_anchor(tmp_path):
    code, rep = run(["reconstruct", "--s", "5/4", "--skip-monodromy", "--out", "r.json"])
    assert code == 0
    assert (rep["t"], rep["y"]) == (Fraction(121, 125), Fraction(11, 9))
    assert rep["jm_constraints"] == [0, 0, 0, 0]
    assert rep["y_from_system"] == Fraction(11, 9)
    assert rep["b_traces_roundtrip"]
    doc = json.loads((tmp_path / "r.json").read_text())
    assert doc["b_traces"] == {"12": "3/224", "23": "5/176", "13": "249/2464", "321": "21/1408"}


@pytest.mark.parametrize("s", ["0", "2"])
def test_reconstruct_singular_parameter(s, capsys):
    assert run(["reconstruct", "--s", s, "--skip-monodromy"])[0] == 4
    assert _err(capsys)["error"] == "SingularPointError"


def test_reconstruct_bad_inputs():
    assert run(["reconstruct", "--s", "five"])[0] == 3
    assert run(["reconstruct", "--s", "5/4", "--loop-word", "1,3"])[0] == 3


def test_parse_word():
    assert parse_word("1, -2") == (1, -2)
    assert parse_word("") == ()
    with pytest.raises(ParseError):
        parse_word("x")


# --------------------------------------------------------------- solve


def _param_doc():
    p = klein_parameterization()

    def enc(r):
        return {"num": [str(c) for c in r.num.c], "den": [str(c) for c in r.den.c]}

    return {"y": enc(p.y), "t": enc(p.t)}


def test_solve_with_verification(tmp_path):
    (tmp_path / "param.json").write_text(json.dumps(_param_doc()))
    code, rep = run(["solve", "--group", "klein", "--verify", "param.json", "--out", "s.json"])
    assert code == 0
    assert rep["verify"]["identically_zero"]
    assert rep["curve"].coeffs[7] in ((162, -243, -243, 162), (-162, 243, 243, -162))
    doc = json.loads((tmp_path / "s.json").read_text())
    assert len(doc["branches"]) == 7


def test_solve_perturbed_lead_fails_at_symmetric_functions(capsys):
    code, _ = run(["solve", "--order", "12", "--perturb-lead", "1/10"])
    assert code == 5
    err = _err(capsys)
    assert err["error"] == "FractionalResidueError"


def test_solve_bad_parameterization_file(tmp_path):
    (tmp_path / "param.json").write_text(json.dumps({"y": {"num": [1]}}))
    assert run(["solve", "--order", "4", "--verify", "param.json"])[0] == 3
    assert run(["solve", "--verify", "absent.json"])[0] == 3


# ----------------------------------------------------------- selfcheck


def test_selfcheck_deterministic(tmp_path):
    code, rep = run(["selfcheck", "--cases", "30", "--seed", "7", "--out", "a.json"])
    assert code == 0
    assert rep["killing_certified"] == 30
    assert rep["fricke_residual_max"] == 0
    run(["selfcheck", "--cases", "30", "--seed", "7", "--out", "b.json"])
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_main_returns_code():
    assert main(["selfcheck", "--cases", "2", "--out", "x.json"]) == 0
