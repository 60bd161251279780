# -*- coding: utf-8 -*-
import os

import pytest

from cli import app, main
from config.run_config import RunConfig, load_config_file, parse_order
from core.errors import ConfigError, ZeroFilter
from core.thread_pool import ThreadPoolManager, VerificationTask


def test_parse_order():
    order = parse_order("2.5, 0, 0.5, 0")
    assert order.a == 2.5
    assert order.v_norm == pytest.approx(0.5)
    for text in ("2.5,0,0", "a,0,0,0", "1.0,0,0,0"):
        with pytest.raises(ConfigError):
            parse_order(text)


def test_config_precedence(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# cấu hình thử\npreset = q2\ngrid-n = 33  # ghi chú\nxmax = 3\nplots = yes\n", encoding="utf-8")
    file_values = load_config_file(str(path))
    assert file_values["grid_n"] == "33"

    config = RunConfig.resolve(file_values, {"grid_n": 17, "xmax": None, "q": None})
    assert config.preset == "q2" and config.tag == "q2"
    assert config.grid_n == 17
    assert config.xmax == 3.0
    assert config.plots is True
    assert config.to_dict()["fft_size"] == 2 ** 16

    custom = RunConfig.resolve({}, {"q": "3,0,0,0.25"})
    assert custom.tag == "custom"
    assert custom.order().a == 3.0


@pytest.mark.parametrize("file_values", [
    {"colour": "red"},
    {"grid_n": "abc"},
    {"fft_size": "1000"},
    {"preset": "q9"},
    {"workers": "0"},
])
def test_config_rejects(file_values):
    with pytest.raises(ConfigError):
        RunConfig.resolve(file_values, {})


def test_config_file_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config_file(str(tmp_path / "missing.cfg"))
    path = tmp_path / "bad.cfg"
    path.write_text("preset q2\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config_file(str(path))


@pytest.mark.parametrize("argv", [
    ["bspline", "--q", "0.5,0,0,0"],
    ["interpolate"],
    ["bspline", "--preset", "q7"],
    ["bspline", "--grid-n", "many"],
    ["bspline", "--config", "/nonexistent/run.cfg"],
])
def test_main_config_errors(argv, tmp_path):
    assert main(argv + ["--out", str(tmp_path)] if argv[0] == "bspline" else argv) == 1


def test_bspline_command(tmp_path, capsys):
    code = main(["bspline", "--preset", "q2", "--xmax", "4", "--grid-n", "65", "--out", str(tmp_path)])
    assert code == 0
    assert os.path.exists(tmp_path / "bspline_q2.csv")
    assert os.path.exists(tmp_path / "bspline_hat_q2.csv")
    assert "B_q(1)" in capsys.readouterr().out


def test_coeffs_command(tmp_path):
    assert main(["coeffs", "--dft-n", "256", "--out", str(tmp_path)]) == 0
    assert os.path.exists(tmp_path / "coeffs_q1.csv")
    assert os.path.exists(tmp_path / "coeffs_q1.xlsx")


def test_zero_filter_exit_code(tmp_path, monkeypatch):
    def refuse(*args, **kwargs):
        raise ZeroFilter("min|F| = 0")

    monkeypatch.setattr(app, "coeffs_dft", refuse)
    assert main(["coeffs", "--out", str(tmp_path)]) == 2


def test_verify_failure_writes_report(tmp_path, monkeypatch, capsys):
    tasks = [
        VerificationTask("ok", lambda: (True, "ổn", 0.0), 1.0),
        VerificationTask("broken", lambda: (False, "lệch", 2.0), 1.0),
    ]
    monkeypatch.setattr(app, "build_verification_tasks", lambda order, config: tasks)
    assert main(["verify", "--preset", "q2", "--workers", "2", "--out", str(tmp_path)]) == 2
    assert os.path.exists(tmp_path / "verify_q2.xlsx")
    assert "FAIL: 1/2" in capsys.readouterr().out


def test_verification_task_list(q2):
    config = RunConfig(preset="q2")
    names = [task.name for task in app.build_verification_tasks(q2, config)]
    assert "min|F_q^M| reference" in names
    assert "decay of L_q" in names
    assert "B_2(1) = 1" not in names
    for name in ("ζ(2, 1) = π²/6", "ζ(q, a) vs direct sum", "Γ(q) vs quadrature",
                 "B_q Fourier transform", "M-rate of c_k", "N-rate of c_k",
                 "sampling reconstruction", "algebraic properties", "Epstein bound"):
        assert name in names

    custom = RunConfig(q="2,0,0,0")
    names = [task.name for task in app.build_verification_tasks(custom.order(), custom)]
    assert "B_2(1) = 1" in names
    assert "min|F_q^M| reference" not in names
    assert "decay of L_q" not in names
    assert "N-rate of c_k" not in names
    assert "M-rate of c_k" in names

    odd = RunConfig(q="3,0,0,0")
    names = [task.name for task in app.build_verification_tasks(odd.order(), odd)]
    assert "M-rate of c_k" not in names
    assert "algebraic properties" in names


@pytest.mark.slow
@pytest.mark.parametrize("argv", [
    ["verify", "--q", "2,0,0,0", "--fft-size", "8192"],
    ["verify", "--preset", "q2"],
])
def test_verify_passes(argv, tmp_path):
    assert main(argv + ["--out", str(tmp_path)]) == 0


def test_interrupted_verify_reports_stop(tmp_path, monkeypatch, capsys):
    def interrupted():
        raise KeyboardInterrupt

    tasks = [
        VerificationTask("ok", lambda: (True, "ổn", 0.0), 1.0),
        VerificationTask("ctrl-c", interrupted),
        VerificationTask("pending", lambda: (True, "ổn", 0.0)),
    ]
    monkeypatch.setattr(app, "build_verification_tasks", lambda order, config: tasks)
    assert main(["verify", "--preset", "q2", "--workers", "1", "--out", str(tmp_path)]) == 2
    assert os.path.exists(tmp_path / "verify_q2.xlsx")
    assert "Đã dừng" in capsys.readouterr().out


def test_fundamental_computed_once_across_workers(q2, monkeypatch):
    calls = []
    original = app._fundamental

    def counted(order, config):
        calls.append(order)
        return original(order, config)

    monkeypatch.setattr(app, "_fundamental", counted)
    config = RunConfig(preset="q2", fft_size=8192)
    wanted = {"L_q(m) = δ_m", "L_q axial vs shadow", "decay of L_q"}
    tasks = [task for task in app.build_verification_tasks(q2, config) if task.name in wanted]
    assert len(tasks) == 3
    ThreadPoolManager(max_workers=3, log_message=lambda message: None).process_tasks(tasks)
    assert len(calls) == 1


def test_figures_compare_renders_both_presets(tmp_path):
    argv = ["figures", "--compare", "--fft-size", "8192", "--grid-n", "65", "--xmax", "4",
            "--out", str(tmp_path)]
    assert main(argv) == 0
    for name in ("filter_compare.png", "fundamental_q1_scalar.png", "fundamental_q2_scalar.png",
                 "filter_q1.png", "filter_derivative_q2.png"):
        assert os.path.exists(tmp_path / name)
