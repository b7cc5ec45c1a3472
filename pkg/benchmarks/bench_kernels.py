"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from roughsynth import _kernels_py

try:
    from roughsynth import _kernels as compiled
except ImportError:
    compiled = None


def cases():
    rng = np.random.default_rng(0)
    image = rng.integers(0, 256, (1486, 1486, 3), dtype=np.uint8)
    field = rng.standard_normal((369, 368))
    # a 256 x 256 resample of a 368 x 369 field
    px = np.tile(np.linspace(0, 367, 256), 256)
    py = np.repeat(np.linspace(0, 368, 256), 256)
    return {
        "hue_decode 1486x1486": lambda k: k.hue_decode(image),
        "catmull_rom 65536 pts": lambda k: k.catmull_rom_points(field, px, py),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = {"python": _kernels_py}
    if compiled is not None:
        backends["compiled"] = compiled
    print(f"{'kernel':<24}" + "".join(f"{b:>12}" for b in backends) + "     speedup")
    for name, run in cases().items():
        best = {b: min(timeit.repeat(lambda: run(k), number=1, repeat=args.repeat)) for b, k in backends.items()}
        row = f"{name:<24}" + "".join(f"{best[b] * 1e3:>10.1f}ms" for b in backends)
        if "compiled" in best:
            row += f"  {best['python'] / best['compiled']:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
