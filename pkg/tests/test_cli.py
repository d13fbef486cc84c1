import json

import numpy as np
import pytest

from josonlab.cli import main


def run(args):
    return main([str(a) for a in args])


def test_spectrum_command(tmp_path):
    out = tmp_path / "spec"
    code = run(["--out", out, "spectrum", "--N", "8", "--u", "0.5", "--w", "0.08",
                "--shell", "4"])
    assert code == 0
    assert (out / "eigenstates.csv").exists()
    assert (out / "unperturbed.csv").exists()
    manifest = json.loads((out / "manifest_spectrum.json").read_text())
    assert manifest["command"] == "spectrum"
    assert manifest["result"]["D"] == 165
    header = (out / "eigenstates.csv").read_text().splitlines()[0]
    assert header.startswith("# josonlab eigenstate-table v1")
    # marker-state probability maps over the configured shell
    grids = list(out.glob("pnj_shell*_*.csv"))
    assert len(grids) == 3


def test_spectrum_rerun_is_byte_identical(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        assert run(["--out", out, "--seed", "5", "spectrum", "--N", "7"]) == 0
    assert (out1 / "eigenstates.csv").read_bytes() == (out2 / "eigenstates.csv").read_bytes()
    assert (out1 / "unperturbed.csv").read_bytes() == (out2 / "unperturbed.csv").read_bytes()


def test_cache_reuse(tmp_path):
    out = tmp_path / "c"
    assert run(["--out", out, "spectrum", "--N", "8"]) == 0
    cache_files = list((out / "cache").glob("*.npz"))
    assert len(cache_files) == 1
    t0 = cache_files[0].stat().st_mtime_ns
    assert run(["--out", out, "spectrum", "--N", "8"]) == 0
    assert cache_files[0].stat().st_mtime_ns == t0  # untouched on reuse


def test_ensemble_command_deterministic(tmp_path):
    out1, out2 = tmp_path / "e1", tmp_path / "e2"
    for out in (out1, out2):
        assert run(["--out", out, "--seed", "9", "ensemble", "--N", "8",
                    "--samples", "40"]) == 0
    assert (out1 / "ensemble_stats.csv").read_bytes() == (out2 / "ensemble_stats.csv").read_bytes()
    meta = json.loads((out1 / "ensemble_meta.json").read_text())
    assert meta["samples"] == 40 and meta["seed"] == 9


def test_entanglement_command(tmp_path):
    out = tmp_path / "ent"
    code = run(["--out", out, "entanglement", "--N", "8", "--shell", "4",
                "--gge-param", "10"])
    assert code == 0
    refs = json.loads((out / "references.json").read_text())
    assert refs["S_erg"] > refs["S_goe"]
    assert set(refs["selected_states"]) == {"min_sigma_n", "max_sigma_n", "max_shannon"}
    assert (out / "chaos_vs_entanglement.csv").exists()
    assert (out / "entanglement_summary.csv").exists()
    assert (out / "gge_shell4.csv").exists()


def test_levelstats_command(tmp_path):
    out = tmp_path / "ls"
    code = run(["--out", out, "levelstats", "--N", "12", "--omegas", "0.05,0.1",
                "--bootstrap", "20"])
    assert code == 0
    text = (out / "levelstats_summary.csv").read_text().splitlines()
    assert text[0].startswith("# josonlab levelstats-summary v1")
    assert len(text) == 4  # schema + header + two omegas
    assert (out / "spacings_w0p05.csv").exists()


def test_classical_command(tmp_path):
    out = tmp_path / "cl"
    code = run(["--out", out, "classical", "--N", "21", "--u", "0.5", "--w", "0.082",
                "--J", "11", "--n", "0", "--j", "0", "--phi-intra", "0,0.4",
                "--t-max", "30", "--n-samples", "61"])
    assert code == 0
    meta = json.loads((out / "trajectory_meta.json").read_text())
    assert meta["norm_drift"] < 1e-8
    assert meta["launch"]["phi_intra"] == [0.0, 0.4]
    rows = (out / "trajectory.csv").read_text().splitlines()
    assert len(rows) == 63  # schema + header + 61 samples


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"N": 8, "samples": 30}))
    out = tmp_path / "cfg"
    assert run(["--config", cfg, "--out", out, "ensemble", "--samples", "20"]) == 0
    meta = json.loads((out / "ensemble_meta.json").read_text())
    assert meta["N"] == 8 and meta["samples"] == 20  # flag beats file


def test_toml_config(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text('N = 7\nsamples = 25\n')
    out = tmp_path / "toml"
    assert run(["--config", cfg, "--out", out, "ensemble"]) == 0
    meta = json.loads((out / "ensemble_meta.json").read_text())
    assert meta["N"] == 7 and meta["samples"] == 25


def test_config_errors_exit_2(tmp_path):
    missing = tmp_path / "nope.json"
    assert run(["--config", missing, "--out", tmp_path, "spectrum"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"unknown_key": 1}))
    assert run(["--config", bad, "--out", tmp_path, "spectrum"]) == 2
    neg = tmp_path / "neg.json"
    neg.write_text(json.dumps({"N": -3}))
    assert run(["--config", neg, "--out", tmp_path, "spectrum"]) == 2
    # infeasible classical launch is a config error
    assert run(["--out", tmp_path, "classical", "--N", "21", "--j", "30"]) == 2


def test_numeric_failure_exit_3(tmp_path):
    code = run(["--out", tmp_path / "n3", "classical", "--N", "21", "--u", "0.5",
                "--w", "0.082", "--J", "11", "--n", "0", "--j", "0",
                "--phi-intra", "0,0.4", "--t-max", "50", "--tolerance", "1e-17"])
    assert code == 3


def test_scan_alias(tmp_path):
    out = tmp_path / "scan"
    assert run(["--out", out, "scan", "--N", "12", "--omegas", "0.08",
                "--bootstrap", "10"]) == 0
    assert (out / "manifest_scan.json").exists()


def test_spectrum_zero_coupling_pn_one(tmp_path):
    """omega = 0: the exact basis is the product basis, PN column all 1."""
    out = tmp_path / "w0"
    assert run(["--out", out, "spectrum", "--N", "9", "--w", "0"]) == 0
    rows = (out / "eigenstates.csv").read_text().splitlines()[2:]
    pn = np.array([float(r.split(",")[3]) for r in rows])
    assert np.max(np.abs(pn - 1)) < 1e-8


def test_entanglement_state_indices(tmp_path):
    out = tmp_path / "sel"
    assert run(["--out", out, "entanglement", "--N", "7", "--shell", "3",
                "--gge-param", "5", "--states", "0,3,10"]) == 0
    refs = json.loads((out / "references.json").read_text())
    assert set(refs["selected_states"].values()) == {0, 3, 10}
    assert run(["--out", out, "entanglement", "--N", "7", "--states", "zzz"]) == 2


def test_rerun_from_emitted_config(tmp_path):
    """A run re-executed from its emitted config reproduces identical CSVs."""
    out1 = tmp_path / "orig"
    assert run(["--out", out1, "--seed", "4", "ensemble", "--N", "7",
                "--samples", "30"]) == 0
    manifest = json.loads((out1 / "manifest_ensemble.json").read_text())
    cfg = tmp_path / "replay.json"
    cfg.write_text(json.dumps(manifest["config"]))
    out2 = tmp_path / "replay"
    assert run(["--config", cfg, "--out", out2, "ensemble"]) == 0
    assert (out1 / "ensemble_stats.csv").read_bytes() == (out2 / "ensemble_stats.csv").read_bytes()
