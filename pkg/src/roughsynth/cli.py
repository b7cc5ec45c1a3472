"""Command-line front end: ``extract``, ``synthesize``, ``diagnose``, ``pipeline``.

Exit codes: 0 success, 2 usage error, 3 input-data error, 4 internal
invariant violation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import traceback
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import io
from .colormap import extract_field, load_image
from .config import (
    OUT_ENV,
    RunConfig,
    build_config,
    read_config,
    write_manifest,
)
from .diagnostics import (
    compare_spectra,
    correlation_x,
    correlation_y,
    extraction_error,
    fs_error,
    reference_norm,
)
from .errors import InputDataError, InvariantViolation
from .grid import AmplitudeRange, SampleSpec, ScalarField, resample
from .rogallo import FilterSpec, build_variant, synthesize_vector, with_scaling
from .spectral import dft2, energy_spectrum, evaluate, idft2, scale_wavenumbers
from .svgplot import write_plot

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3, 4

FIELD_SUFFIX = ".field.bin"
SPECTRUM_SUFFIX = ".spectrum.csv"

_EXPR_NAMES = {
    name: getattr(np, name)
    for name in ("sin", "cos", "tan", "exp", "log", "sqrt", "abs", "tanh", "sinh", "cosh", "pi", "arctan2")
}


def reference_function(expr: str):
    """Analytic surface ``f(x, y)`` from an expression such as ``sin(x)+cos(2*y)``."""
    code = compile(expr, "<reference>", "eval")
    for name in code.co_names:
        if name not in _EXPR_NAMES and name not in ("x", "y"):
            raise InputDataError(f"reference expression uses unknown name {name!r}")

    def f(x, y):
        return np.broadcast_to(eval(code, {"__builtins__": {}}, {**_EXPR_NAMES, "x": x, "y": y}), np.shape(x))

    return f


def _out_dir(cfg: RunConfig, sub: str | None = None) -> Path:
    d = Path(cfg.out) / sub if sub else Path(cfg.out)
    d.mkdir(parents=True, exist_ok=True)
    return d


def _write_field(f: ScalarField, stem: Path, rng: AmplitudeRange | None = None) -> None:
    io.write_field_csv(f, stem.with_name(stem.name + ".csv"))
    io.write_field_binary(
        f,
        stem.with_name(stem.name + FIELD_SUFFIX),
        rng.f_min if rng else None,
        rng.f_max if rng else None,
    )


def cmd_extract(cfg: RunConfig, out: Path | None = None) -> dict:
    if cfg.input is None:
        raise InputDataError("extract needs --input IMAGE")
    if cfg.amplitude is None:
        raise InputDataError("extract needs --range MIN:MAX")
    out = out or _out_dir(cfg)
    img = load_image(cfg.input)
    extracted = extract_field(img, cfg.amplitude, *cfg.image_domain)
    field = extracted.values
    _write_field(field, out / "extracted", cfg.amplitude)
    summary = {
        "input": str(cfg.input),
        "width": img.width,
        "height": img.height,
        "min": float(field.values.min()),
        "max": float(field.values.max()),
        "L_x": field.L_x,
        "L_y": field.L_y,
    }
    if cfg.reference:
        ref = reference_function(cfg.reference)
        summary["epsilon_E"] = extraction_error(field, ref)
        fs = dft2(resample(field, SampleSpec(*cfg.samples, cfg.periodic)))
        fF = field.with_values(evaluate(fs, field.x, field.y))
        summary["epsilon_F"] = fs_error(fF, field, reference_norm(field, ref))
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    write_manifest(cfg, out / "manifest.json", {"command": "extract"})
    return summary


def _load_synthesis_input(cfg: RunConfig):
    """Returns (energy spectrum, reference spectral field or None, amplitude range)."""
    if cfg.input is None:
        raise InputDataError("synthesize needs --input (field .bin/.csv or spectrum .csv)")
    path = Path(cfg.input)
    if not path.is_file():
        raise InputDataError(f"input file {path} not found")
    rng = cfg.amplitude
    if path.name.endswith(SPECTRUM_SUFFIX) or path.name.endswith("spectrum.csv"):
        if rng is None:
            raise InputDataError("a spectrum input needs --range MIN:MAX")
        return io.read_spectrum_csv(path), None, rng
    if path.suffix == ".bin":
        field, f_min, f_max = io.read_field_binary(path)
        rng = rng or AmplitudeRange(f_min, f_max)
    elif path.suffix == ".csv":
        if rng is None:
            raise InputDataError("a CSV field input needs --range MIN:MAX")
        field = io.read_field_csv(path, *cfg.image_domain)
    else:
        raise InputDataError(f"unrecognised synthesis input {path}")
    spec = dft2(resample(field, SampleSpec(*cfg.samples, cfg.periodic)))
    return energy_spectrum(spec), spec, rng


def _synthesize_member(cfg: RunConfig, spectrum, rng, out: Path, member: int) -> list[str]:
    seed = cfg.seed + member
    N, M = cfg.samples
    rf = synthesize_vector(spectrum, N, M, seed)
    io.write_rogallo(rf, spectrum, out, f"rogallo_s{seed}")
    if cfg.domain:
        rf = with_scaling(rf, *cfg.domain)
    written = []
    for name in cfg.variants:
        v = build_variant(rf, name, *cfg.plot_res, filt=FilterSpec(cfg.cutoff), amplitude=rng)
        stem = out / f"{name}_s{seed}"
        _write_field(v.field, stem, rng)
        io.write_spectrum_csv(v.spectrum, out / f"{name}_s{seed}{SPECTRUM_SUFFIX}")
        written.append(stem.name)
    return written


def cmd_synthesize(cfg: RunConfig, out: Path | None = None) -> dict:
    out = out or _out_dir(cfg)
    spectrum, ref_spec, rng = _load_synthesis_input(cfg)
    io.write_spectrum_csv(spectrum, out / f"reference{SPECTRUM_SUFFIX}")
    if ref_spec is not None:
        shown = scale_wavenumbers(ref_spec, *cfg.domain) if cfg.domain else ref_spec
        _write_field(idft2(shown, *cfg.plot_res), out / "reference", rng)
    workers = cfg.workers or min(cfg.ensemble, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        jobs = [pool.submit(_synthesize_member, cfg, spectrum, rng, out, i) for i in range(cfg.ensemble)]
        written = [name for job in jobs for name in job.result()]
    write_manifest(
        cfg,
        out / "manifest.json",
        {
            "command": "synthesize",
            "seeds": [cfg.seed + i for i in range(cfg.ensemble)],
            "spectrum_sha256": io.spectrum_hash(spectrum),
            "fields": written,
        },
    )
    return {"fields": written, "spectrum_bins": int(spectrum.bins.size)}


def _field_inputs(cfg: RunConfig) -> list[Path]:
    src = Path(cfg.input) if cfg.input else Path(cfg.out)
    if src.is_file():
        return [src]
    if not src.is_dir():
        raise InputDataError(f"no fields found: {src} does not exist")
    found = sorted(src.glob(f"*{FIELD_SUFFIX}"))
    # reference first, so it leads the comparison
    found.sort(key=lambda p: (p.name != f"reference{FIELD_SUFFIX}", p.name))
    if not found:
        raise InputDataError(f"no *{FIELD_SUFFIX} files in {src}")
    return found


def cmd_diagnose(cfg: RunConfig, out: Path | None = None) -> dict:
    paths = _field_inputs(cfg)
    out = out or _out_dir(cfg)
    cn, cm = cfg.corr_samples
    curves_x, curves_y = [], []
    for path in paths:
        stem = path.name[: -len(FIELD_SUFFIX)]
        field, _, _ = io.read_field_binary(path)
        sampled = resample(field, SampleSpec(cn + cn % 2, cm + cm % 2, periodic=False))
        rx = correlation_x(sampled).half()
        ry = correlation_y(sampled).half()
        for curve, tag in ((rx, "Rx"), (ry, "Ry")):
            io.write_curve_csv(curve, out / f"{stem}.{tag}.csv")
            write_plot(
                out / f"{stem}.{tag}.svg",
                [(stem, curve.separations, curve.values)],
                title=f"{tag} two-point correlation: {stem}",
                xlabel="r_x" if tag == "Rx" else "r_y",
                ylabel=tag,
            )
        curves_x.append((stem, rx.separations, rx.values))
        curves_y.append((stem, ry.separations, ry.values))
    write_plot(out / "correlation_x.svg", curves_x, "x two-point correlation", "r_x", "R_x")
    write_plot(out / "correlation_y.svg", curves_y, "y two-point correlation", "r_y", "R_y")

    spectra = []
    spec_dir = paths[0].parent
    for sp in sorted(spec_dir.glob(f"*{SPECTRUM_SUFFIX}"),
                     key=lambda p: (p.name != f"reference{SPECTRUM_SUFFIX}", p.name)):
        spectra.append((sp.name[: -len(SPECTRUM_SUFFIX)], io.read_spectrum_csv(sp)))
    if spectra:
        table = compare_spectra(spectra)
        io.write_comparison_csv(table, out / "spectrum_comparison.csv")
        write_plot(
            out / "spectra.svg",
            [(label, es.k, es.bins) for label, es in spectra],
            title="Energy spectrum E(|k|)",
            xlabel="|k|",
            ylabel="E",
            log_y=True,
        )
    write_manifest(cfg, out / "manifest.json", {"command": "diagnose", "fields": [p.name for p in paths]})
    return {"fields": len(paths), "spectra": len(spectra)}


def cmd_pipeline(cfg: RunConfig) -> dict:
    root = _out_dir(cfg)
    ext_dir = _out_dir(cfg, "extract")
    summary = cmd_extract(cfg, ext_dir)
    syn_cfg = cfg.override(input=str(ext_dir / f"extracted{FIELD_SUFFIX}"))
    syn_dir = _out_dir(cfg, "synthesize")
    cmd_synthesize(syn_cfg, syn_dir)
    diag_cfg = cfg.override(input=str(syn_dir))
    diag = cmd_diagnose(diag_cfg, _out_dir(cfg, "diagnose"))
    write_manifest(cfg, root / "manifest.json", {"command": "pipeline"})
    return {"extract": summary, "diagnose": diag}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value file or JSON run manifest; flags override it")
    p.add_argument("--input", help="image, field, spectrum or directory depending on the command")
    p.add_argument("--range", help="amplitude range MIN:MAX")
    p.add_argument("--samples", help="Fourier sample counts NxM (even)")
    per = p.add_mutually_exclusive_group()
    per.add_argument("--periodic", dest="periodic", action="store_const", const=True, default=None)
    per.add_argument("--non-periodic", dest="periodic", action="store_const", const=False)
    p.add_argument("--domain", help="scaled domain lengths LXxLY, e.g. 14x8.5")
    p.add_argument("--image-domain", help="physical lengths of the scan, default 2pix2pi")
    p.add_argument("--variants", help="comma list or 'all'")
    p.add_argument("--cutoff", type=int, help="top-hat cutoff for the vorticity (default 32)")
    p.add_argument("--seed", type=int)
    p.add_argument("--ensemble", type=int, help="number of realizations (seeds seed..seed+E-1)")
    p.add_argument("--plot-res", help="output field resolution NxM")
    p.add_argument("--corr-samples", help="non-periodic samples for correlations, default 128x128")
    p.add_argument("--reference", help="analytic surface f(x, y) for error norms, e.g. 'sin(x)+cos(2*y)'")
    p.add_argument("--workers", type=int)
    p.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./roughsynth_out)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roughsynth",
        description="Synthetic roughness fields from a colormapped scan image.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("extract", "decode an HSV image into a height field"),
        ("synthesize", "Rogallo synthesis from an extracted field or spectrum"),
        ("diagnose", "correlations, spectrum comparison and plots"),
        ("pipeline", "extract, synthesize and diagnose in one go"),
    ):
        _add_common(sub.add_parser(name, help=help_))
    return parser


_COMMANDS = {
    "extract": cmd_extract,
    "synthesize": cmd_synthesize,
    "diagnose": cmd_diagnose,
    "pipeline": cmd_pipeline,
}

_FLAG_KEYS = (
    "input", "range", "samples", "periodic", "domain", "image_domain", "variants", "cutoff",
    "seed", "ensemble", "plot_res", "corr_samples", "reference", "workers", "out",
)


def _join_negative_range(argv: list[str]) -> list[str]:
    # "--range -2:2" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--range":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--range={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = make_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_range(argv))
    if args.command in ("extract", "pipeline") and args.range is None and args.config is None:
        parser.error("--range MIN:MAX is required")
    try:
        settings = read_config(args.config) if args.config else {}
        flags = {k: getattr(args, k) for k in _FLAG_KEYS}
        cfg = build_config(settings, **flags)
        if args.command in ("extract", "pipeline") and cfg.range is None:
            parser.error("--range MIN:MAX is required")
        result = _COMMANDS[args.command](cfg)
    except InputDataError as exc:
        print(f"roughsynth: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"roughsynth: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001
        frame = traceback.extract_tb(exc.__traceback__)[-1]
        print(
            f"roughsynth: internal error at {frame.filename}:{frame.lineno}: "
            f"{type(exc).__name__}: {exc}",
            file=sys.stderr,
        )
        return EXIT_INTERNAL
    print(json.dumps(result, indent=2, sort_keys=True, default=str))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
