import json
import shutil
import subprocess

import pytest

from zastava.cli import main, parse_vector, run


def test_parse_vector():
    assert parse_vector("0,1/2,-3") == (0, 0.5, -3)
    with pytest.raises(Exception):
        parse_vector("1,x")


def test_jacobi_passes():
    code, payload, fmt = run(["verify", "jacobi", "--d", "1,1", "--d", "0,1,1"])
    assert code == 0 and payload["ok"] and fmt == "json"
    assert len(payload["results"]) == 2


def test_bad_input_exits_2():
    code, payload, _ = run(["verify", "jacobi", "--n", "3", "--d", "1,1"])
    assert code == 2 and not payload["ok"] and "error" in payload
    code, _, _ = run(["verify", "poisson", "--d", "3,3"])
    assert code == 2
    code, _, _ = run(["walls", "--n", "2"])
    assert code == 2


def test_failing_check_exits_1():
    # an inconsistent power-sum / b input breaks the Newton recursion check
    code, payload, _ = run(["spectral-pair", "--a", "1", "--b", "1,5"])
    assert code == 1 and not payload["ok"]


def test_walls():
    code, payload, _ = run(["walls", "--n", "2", "--zeta", "1,-2", "--mode", "affine"])
    assert code == 0 and payload["results"][0]["status"] == "off walls"
    code, payload, _ = run(["walls", "--zeta", "1,-1", "--mode", "affine"])
    assert payload["results"][0]["status"] == "on walls"


def test_smoothness_example_through_cli():
    code, payload, _ = run(["moment", "--example", "smoothness"])
    assert code == 0
    r = payload["results"][0]
    assert r["in_zero_fiber"] and r["cokernel_dim"] == 1
    code, payload, _ = run(["stability", "--example", "smoothness"])
    assert payload["results"][0]["stable"] is False and payload["results"][0]["costable"] is False


def test_config_merge(tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"d": ["0,1"], "trunc": 3, "format": "text"}))
    code, payload, fmt = run(["character", "--config", str(cfg)])
    assert code == 0 and fmt == "text" and payload["config"]["trunc"] == 3
    code, payload, fmt = run(["character", "--config", str(cfg), "--trunc", "4", "--format", "json"])
    assert payload["config"]["trunc"] == 4 and fmt == "json"
    monkeypatch.setenv("ZASTAVA_JOBS", "2")
    code, payload2, _ = run(["character", "--config", str(cfg), "--trunc", "4"])
    assert payload2 == payload


def test_text_output(capsys):
    assert main(["verify", "jacobi", "--d", "0,1", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("verify jacobi: PASS")


def test_character_closed_form():
    code, payload, _ = run(["character", "--d", "0,1", "--trunc", "6"])
    assert code == 0 and payload["results"][0]["closed_form_match"]


@pytest.mark.skipif(shutil.which("zastava") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["zastava", "strata", "--d", "1,1"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["results"][0]["count"] == 5
