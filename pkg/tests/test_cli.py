import json
import subprocess
import sys

import numpy as np
import pytest

from conftest import SURFACE_RANGE, test_surface
from roughsynth import cli, io
from roughsynth.colormap import render_function, save_image
from roughsynth.errors import InvariantViolation


@pytest.fixture(scope="module")
def image(tmp_path_factory):
    p = tmp_path_factory.mktemp("img") / "surface.png"
    save_image(render_function(test_surface, 96, 97, SURFACE_RANGE), p)
    return p


@pytest.fixture(scope="module")
def extracted(image, tmp_path_factory):
    out = tmp_path_factory.mktemp("ext")
    assert cli.main(["extract", "--input", str(image), "--range", "-2:2", "--out", str(out)]) == 0
    return out / "extracted.field.bin"


def snapshot(directory):
    return {p.name: p.read_bytes() for p in sorted(directory.iterdir()) if p.suffix in (".csv", ".bin")}


def test_extract_smoke(image, tmp_path):
    out = tmp_path / "new" / "dir"
    rc = cli.main(["extract", "--input", str(image), "--range", "-2:2", "--out", str(out),
                   "--reference", "sin(x)+cos(2*y)"])
    assert rc == 0
    summary = json.loads((out / "summary.json").read_text())
    assert (summary["width"], summary["height"]) == (96, 97)
    assert summary["min"] >= -2 and summary["max"] <= 2
    assert summary["epsilon_E"] <= 0.08
    assert {"extracted.csv", "extracted.field.bin", "manifest.json"} <= {p.name for p in out.iterdir()}


def test_missing_range_is_usage_error(image, tmp_path):
    with pytest.raises(SystemExit) as exc:
        cli.main(["extract", "--input", str(image), "--out", str(tmp_path)])
    assert exc.value.code == 2


def test_entry_point_exit_codes(image, tmp_path):
    run = [sys.executable, "-m", "roughsynth.cli"]
    r = subprocess.run(run + ["extract", "--input", str(image), "--out", str(tmp_path)], capture_output=True)
    assert r.returncode == 2
    r = subprocess.run(run + ["extract", "--input", str(tmp_path / "missing.png"), "--range", "0:1",
                              "--out", str(tmp_path)], capture_output=True, text=True)
    assert r.returncode == 3
    assert "missing.png" in r.stderr


def test_internal_error_exit_code(monkeypatch, tmp_path):
    def boom(cfg):
        raise InvariantViolation("broken")

    monkeypatch.setitem(cli._COMMANDS, "diagnose", boom)
    assert cli.main(["diagnose", "--out", str(tmp_path)]) == 4


def test_bad_reference_expression(image, tmp_path):
    rc = cli.main(["extract", "--input", str(image), "--range", "-2:2", "--out", str(tmp_path),
                   "--reference", "__import__('os')"])
    assert rc == 3


def test_synthesize_deterministic(extracted, tmp_path):
    args = ["synthesize", "--input", str(extracted), "--samples", "32x32", "--plot-res", "40x30",
            "--seed", "42", "--ensemble", "2", "--out"]
    assert cli.main(args + [str(tmp_path / "a")]) == 0
    assert cli.main(args + [str(tmp_path / "b")]) == 0
    a, b = snapshot(tmp_path / "a"), snapshot(tmp_path / "b")
    assert a == b
    assert "vorticity_s43.field.bin" in a


def test_vorticity_spectrum_cut(extracted, tmp_path):
    rc = cli.main(["synthesize", "--input", str(extracted), "--variants", "vorticity", "--cutoff", "32",
                   "--plot-res", "16x16", "--out", str(tmp_path)])
    assert rc == 0
    es = io.read_spectrum_csv(tmp_path / "vorticity_s0.spectrum.csv")
    assert np.all(es.bins[32:] == 0)
    assert np.all(es.bins[1:32] > 0)


def test_five_variants_with_scaled_domain(extracted, tmp_path):
    rc = cli.main(["synthesize", "--input", str(extracted), "--samples", "64x64", "--domain", "14x8.5",
                   "--plot-res", "140x85", "--range", "0:60", "--out", str(tmp_path)])
    assert rc == 0
    fields = sorted(p.name for p in tmp_path.glob("*_s0.field.bin"))
    assert len(fields) == 5
    for name in fields:
        f, lo, hi = io.read_field_binary(tmp_path / name)
        assert f.L_x / f.L_y == pytest.approx(14 / 8.5)
        assert (lo, hi) == (0.0, 60.0)
        assert f.values.min() == 0.0 and f.values.max() == 60.0


def test_synthesize_from_spectrum_csv(tmp_path):
    from roughsynth.spectral import EnergySpectrum

    es = EnergySpectrum.from_function(lambda k: k * np.exp(-k / 8), 23)
    io.write_spectrum_csv(es, tmp_path / "input.spectrum.csv")
    args = ["synthesize", "--input", str(tmp_path / "input.spectrum.csv"), "--samples", "32x32",
            "--plot-res", "20x20", "--out", str(tmp_path / "o")]
    assert cli.main(args) == 3  # range is required for a bare spectrum
    assert cli.main(args + ["--range", "0:1"]) == 0
    manifest = json.loads((tmp_path / "o" / "manifest.json").read_text())
    assert manifest["seeds"] == [0]
    assert manifest["spectrum_sha256"] == io.spectrum_hash(es)


def test_diagnose_single_field(extracted, tmp_path):
    out = tmp_path / "diag"
    assert cli.main(["diagnose", "--input", str(extracted), "--out", str(out)]) == 0
    names = {p.name for p in out.iterdir()}
    assert {"extracted.Rx.csv", "extracted.Ry.csv", "extracted.Rx.svg", "extracted.Ry.svg"} <= names
    rows = (out / "extracted.Rx.csv").read_text().splitlines()
    assert rows[0] == "r,R" and rows[1].endswith(",1.0")
    assert len(rows) == 1 + 128 // 2 + 1


def test_pipeline_six_series_and_manifest_rerun(image, tmp_path, monkeypatch):
    out = tmp_path / "run"
    monkeypatch.setenv("ROUGHSYNTH_OUT", str(out))
    rc = cli.main(["pipeline", "--input", str(image), "--range", "-2:2", "--samples", "32x32",
                   "--plot-res", "48x48", "--corr-samples", "32x32"])
    assert rc == 0
    svg = (out / "diagnose" / "spectra.svg").read_text()
    labels = {line.split('data-label="')[1].split('"')[0] for line in svg.splitlines() if 'class="series"' in line}
    assert len(labels) == 6 and "reference" in labels
    first = snapshot(out / "synthesize")
    rc = cli.main(["pipeline", "--config", str(out / "manifest.json")])
    assert rc == 0
    assert snapshot(out / "synthesize") == first


def test_config_file_flags_win(image, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"input = {image}\nrange = -2:2\nout = {tmp_path / 'from_file'}\n")
    assert cli.main(["extract", "--config", str(cfg), "--out", str(tmp_path / "from_flag")]) == 0
    assert (tmp_path / "from_flag" / "summary.json").exists()
    assert not (tmp_path / "from_file").exists()
