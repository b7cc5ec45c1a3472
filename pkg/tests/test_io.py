import numpy as np
import pytest

from roughsynth import io
from roughsynth.config import RunConfig, build_config, read_config, write_manifest
from roughsynth.errors import InputDataError
from roughsynth.grid import ScalarField
from roughsynth.rogallo import synthesize_vector, with_scaling
from roughsynth.spectral import EnergySpectrum


def es():
    return EnergySpectrum.from_function(lambda k: k * np.exp(-k / 8), 23)


def test_field_binary_round_trip(tmp_path):
    f = ScalarField(np.random.default_rng(0).standard_normal((5, 7)), 14.0, 8.5, "periodic")
    io.write_field_binary(f, tmp_path / "a.bin", -1.0, 2.0)
    g, lo, hi = io.read_field_binary(tmp_path / "a.bin")
    assert (lo, hi) == (-1.0, 2.0)
    assert g.values.tobytes() == f.values.tobytes()
    assert (g.L_x, g.L_y, g.sampling) == (14.0, 8.5, "periodic")
    raw = (tmp_path / "a.bin").read_bytes()
    assert raw[:4] == b"RSFF" and len(raw) == 64 + 5 * 7 * 8


def test_field_binary_errors(tmp_path):
    (tmp_path / "x.bin").write_bytes(b"RSFF" + b"\0" * 10)
    with pytest.raises(InputDataError, match="truncated"):
        io.read_field_binary(tmp_path / "x.bin")
    f = ScalarField(np.zeros((2, 2)), 1, 1)
    io.write_field_binary(f, tmp_path / "y.bin")
    data = bytearray((tmp_path / "y.bin").read_bytes())
    data[0] = ord("X")
    (tmp_path / "y.bin").write_bytes(bytes(data))
    with pytest.raises(InputDataError, match="magic"):
        io.read_field_binary(tmp_path / "y.bin")


def test_field_csv_round_trip(tmp_path):
    f = ScalarField(np.random.default_rng(1).standard_normal((3, 4)), 1, 1)
    io.write_field_csv(f, tmp_path / "f.csv")
    g = io.read_field_csv(tmp_path / "f.csv", 1, 1)
    assert g.values.tobytes() == f.values.tobytes()


def test_spectrum_csv_round_trip(tmp_path):
    io.write_spectrum_csv(es(), tmp_path / "s.csv")
    assert (tmp_path / "s.csv").read_text().startswith("k,E\n0,0.0\n")
    assert io.read_spectrum_csv(tmp_path / "s.csv").bins.tobytes() == es().bins.tobytes()


def test_rogallo_round_trip(tmp_path):
    rf = with_scaling(synthesize_vector(es(), 16, 16, 4), 14.0, 8.5)
    manifest = io.write_rogallo(rf, es(), tmp_path, "r")
    back = io.read_rogallo(manifest)
    assert back.seed == 4
    assert back.comp_n.coeffs.tobytes() == rf.comp_n.coeffs.tobytes()
    assert back.comp_m.scaled_lengths == (14.0, 8.5)
    assert back.comp_m.hermitian


def test_config_file_and_flags(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("# a run\nrange = -2:2\nsamples = 32x16\nvariants = vorticity, enstrophy\ndomain = 14x8.5\n")
    cfg = build_config(read_config(p), samples="64x64")
    assert cfg.range == (-2.0, 2.0)
    assert cfg.samples == (64, 64)
    assert cfg.variants == ("vorticity", "enstrophy")
    assert cfg.domain == (14.0, 8.5)


def test_config_errors(tmp_path):
    p = tmp_path / "bad.cfg"
    p.write_text("range = -2:2\nno equals here\n")
    with pytest.raises(InputDataError, match="bad.cfg:2"):
        read_config(p)
    with pytest.raises(InputDataError):
        build_config(None, variants="vorticity,pressure")
    with pytest.raises(InputDataError):
        build_config(None, samples="63x64")
    with pytest.raises(InputDataError):
        build_config(None, ensemble=0)


def test_manifest_round_trip(tmp_path):
    cfg = build_config(None, range="0:60", image_domain="2pix2pi", seed=7, out=str(tmp_path))
    write_manifest(cfg, tmp_path / "m.json", {"command": "x"})
    again = build_config(read_config(tmp_path / "m.json"))
    assert again == cfg
    assert isinstance(again, RunConfig)
