"""Run configuration: key = value files, flag overrides, JSON manifests."""
from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from .errors import InputDataError
from .grid import AmplitudeRange
from .rogallo import DEFAULT_CUTOFF, VARIANTS

OUT_ENV = "ROUGHSYNTH_OUT"
DEFAULT_OUT = "roughsynth_out"


def default_out() -> str:
    return os.environ.get(OUT_ENV, DEFAULT_OUT)


def parse_pair(text: str, sep: str, cast=float, what="value"):
    parts = str(text).strip().lower().split(sep)
    if len(parts) != 2:
        raise InputDataError(f"expected {what} as A{sep}B, got {text!r}")
    try:
        return cast(parts[0]), cast(parts[1])
    except ValueError as exc:
        raise InputDataError(f"bad {what} {text!r}: {exc}") from exc


def _length(text: str) -> float:
    # allow '2pi', 'pi', '14'
    t = text.strip().lower().replace("π", "pi")
    if t.endswith("pi"):
        coef = t[:-2] or "1"
        return float(coef) * math.pi
    return float(t)


def parse_range(text) -> tuple[float, float]:
    lo, hi = parse_pair(text, ":", float, "range")
    AmplitudeRange(lo, hi)
    return lo, hi


def parse_samples(text) -> tuple[int, int]:
    return parse_pair(text, "x", int, "sample counts")


def parse_lengths(text) -> tuple[float, float]:
    return parse_pair(text, "x", _length, "domain lengths")


def parse_variants(text) -> tuple[str, ...]:
    if isinstance(text, (list, tuple)):
        names = list(text)
    else:
        names = [v.strip() for v in str(text).split(",") if v.strip()]
    if names == ["all"]:
        return VARIANTS
    bad = [v for v in names if v not in VARIANTS]
    if bad or not names:
        raise InputDataError(f"invalid variant(s) {bad or names}; choose from {', '.join(VARIANTS)}")
    return tuple(names)


def _parse_bool(text) -> bool:
    if isinstance(text, bool):
        return text
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise InputDataError(f"expected a boolean, got {text!r}")


@dataclass(frozen=True)
class RunConfig:
    input: str | None = None
    range: tuple[float, float] | None = None
    samples: tuple[int, int] = (64, 64)
    periodic: bool = True
    domain: tuple[float, float] | None = None
    image_domain: tuple[float, float] = (2 * math.pi, 2 * math.pi)
    variants: tuple[str, ...] = VARIANTS
    cutoff: int = DEFAULT_CUTOFF
    seed: int = 0
    ensemble: int = 1
    plot_res: tuple[int, int] = (500, 500)
    corr_samples: tuple[int, int] = (128, 128)
    reference: str | None = None
    workers: int = 0
    out: str = field(default_factory=default_out)

    def __post_init__(self):
        n, m = self.samples
        if n % 2 or m % 2 or n < 4 or m < 4:
            raise InputDataError(f"sample counts must be even and >= 4, got {n}x{m}")
        if self.ensemble < 1:
            raise InputDataError("ensemble size must be >= 1")
        if min(self.plot_res) < 1:
            raise InputDataError("plot resolution must be >= 1")
        if min(self.corr_samples) < 4:
            raise InputDataError("correlation samples must be >= 4")
        if self.cutoff < 1:
            raise InputDataError("filter cutoff must be >= 1")
        parse_variants(self.variants)

    @property
    def amplitude(self) -> AmplitudeRange | None:
        return None if self.range is None else AmplitudeRange(*self.range)

    def to_dict(self) -> dict:
        d = asdict(self)
        for k, v in d.items():
            if isinstance(v, tuple):
                d[k] = list(v)
        return d

    def override(self, **changes) -> "RunConfig":
        changes = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **changes)


_PARSERS = {
    "input": str,
    "range": parse_range,
    "samples": parse_samples,
    "periodic": _parse_bool,
    "domain": parse_lengths,
    "image_domain": parse_lengths,
    "variants": parse_variants,
    "cutoff": int,
    "seed": int,
    "ensemble": int,
    "plot_res": parse_samples,
    "corr_samples": parse_samples,
    "reference": str,
    "workers": int,
    "out": str,
}


def _coerce(key: str, value):
    key = key.strip().replace("-", "_")
    if key not in _PARSERS:
        raise InputDataError(f"unknown configuration key {key!r}")
    if isinstance(value, str):
        return key, _PARSERS[key](value)
    # already typed (JSON manifest or programmatic use)
    if isinstance(value, list):
        value = tuple(value)
    return key, value


def read_config(path) -> dict:
    """Settings from a ``key = value`` text file or a JSON run manifest."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputDataError(f"cannot read config {path}: {exc}") from exc
    out = {}
    if path.suffix.lower() == ".json":
        data = json.loads(text)
        data = data.get("config", data)
        items = data.items()
    else:
        items = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InputDataError(f"{path}:{lineno}: expected key = value")
            k, v = line.split("=", 1)
            items.append((k, v.strip()))
    for k, v in items:
        key, val = _coerce(k, v)
        out[key] = val
    return out


def build_config(file_settings: dict | None = None, **flags) -> RunConfig:
    """File settings first, then non-None flags on top."""
    merged = {}
    merged.update(file_settings or {})
    for k, v in flags.items():
        if v is not None:
            key, val = _coerce(k, v)
            merged[key] = val
    return RunConfig(**merged)


def write_manifest(cfg: RunConfig, path, extra: dict | None = None) -> None:
    data = {"config": cfg.to_dict()}
    if extra:
        data.update(extra)
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


__all__ = [
    "RunConfig",
    "read_config",
    "build_config",
    "write_manifest",
    "parse_range",
    "parse_samples",
    "parse_lengths",
    "parse_variants",
    "default_out",
    "OUT_ENV",
]
