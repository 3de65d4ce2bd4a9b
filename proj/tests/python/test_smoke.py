import json
import math
import os
import subprocess

import pytest

import orlicz_distort as od


def test_kaufman_slope():
    b = od.DistortionBundle(od.YoungFunction.power(4.0), od.GaugeFunction.power(1.0, 2), 2)
    x1, x2 = math.log(1e-9), math.log(1e-3)
    slope = (b.log_psi(x2) - b.log_psi(x1)) / (x2 - x1)
    assert slope == pytest.approx(4.0 / 3.0, rel=1e-3)
    assert b.stability() == od.Stability.vanishing


def test_closed_form_and_crosscheck():
    form = od.distort_form(od.LogPowerForm.young(2.0, 2.0), od.LogPowerForm.gauge(1.0, 0.0), 2)
    assert (form.a, form.b) == (2.0, 1.0)
    b = od.DistortionBundle(od.YoungFunction.power_log(2.0, 2.0), od.GaugeFunction.power(1.0, 2), 2)
    assert od.crosscheck_spread(b, form) < 0.1


def test_conjugate_of_square():
    # (t^2)~ = t^2 / 4
    c = od.conjugate(od.YoungFunction.power(2.0))
    for t in (0.1, 1.0, 30.0):
        assert c(t) == pytest.approx(t * t / 4.0, rel=1e-6)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        od.YoungFunction.power(0.5)
    with pytest.raises(ValueError):
        od.GaugeFunction.power(3.0, 2)


def test_net_premeasure_prefers_the_parent():
    # two sibling cubes of side 1/2 in 1-d: the parent costs 1 against 2 * sqrt(1/2)
    v = od.net_premeasure(1, [(1, [0]), (1, [1])], lambda r: math.sqrt(r))
    assert v == pytest.approx(1.0)


def test_cli_in_process(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"n": 2, "young": {"family": "power", "p": 4},
                               "gauge": {"family": "power", "alpha": 1}, "samples": 20}))
    assert od.run_cli(["distort", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "distort.csv").read_text().splitlines()
    assert lines[0].startswith("# orlicz-distort distort config_hash=")
    assert lines[1].split(",")[:2] == ["r", "psi"]
    assert len(lines) == 22


@pytest.mark.skipif("ORLICZ_DISTORT_EXE" not in os.environ, reason="CLI path not provided")
def test_cli_binary_malformed(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text('{"n": 2,\n "young": [}\n')
    r = subprocess.run([os.environ["ORLICZ_DISTORT_EXE"], "distort", "--config", str(cfg),
                        "--out", str(tmp_path)], capture_output=True, text=True)
    assert r.returncode == 2
    assert "bad.json:2:" in r.stderr
