"""Compare the compiled and pure-Python polynomial kernels.

    python benchmarks/bench_kernels.py [--repeat R]

Times each kernel on inputs shaped like the ones the zeta pipeline produces
(long sparse denominators, short numerators), then the end-to-end oracle
check on a fixed batch of random profiles with each backend forced.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from neronzeta.kernels import _pykernels

try:
    from neronzeta.kernels import _ckernels
except ImportError:
    _ckernels = None


def inputs(rng: random.Random):
    den = [1]
    for b in (6, 6, 12):
        nxt = [0] * (len(den) + b)
        for i, c in enumerate(den):
            nxt[i] += c
            nxt[i + b] -= c
        den = nxt
    a = [rng.randint(-50, 50) for _ in range(400)]
    b = [rng.randint(-50, 50) for _ in range(400)]
    monic = [1, -1, 1]
    return {
        "convolve": (a, b),
        "convolve_trunc": (a, b, 300),
        "inverse_series": (den, 1500),
        "divmod_monic": (a, monic),
    }


def time_kernels(repeat: int):
    rng = random.Random(7)
    cases = inputs(rng)
    rows = []
    for name, args in cases.items():
        py = min(timeit.repeat(lambda: getattr(_pykernels, name)(*args), number=5, repeat=repeat)) / 5
        if _ckernels is not None:
            assert getattr(_ckernels, name)(*args) == getattr(_pykernels, name)(*args)
            cy = min(timeit.repeat(lambda: getattr(_ckernels, name)(*args), number=5, repeat=repeat)) / 5
        else:
            cy = float("nan")
        rows.append((name, py, cy))
    return rows


PIPELINE = """
import random, time
from neronzeta.generators import random_profile
from neronzeta.kernels import BACKEND
from neronzeta.zeta import closed_form, expand, pole_analysis, series
rng = random.Random(1)
profiles = [random_profile(rng) for _ in range(60)]
t0 = time.perf_counter()
for pr in profiles:
    N = max(200, 6 * pr.e * max(pr.spectrum.p, 2))
    cf = closed_form(pr)
    assert not expand(cf, N).mismatches(series(pr, N))
    pole_analysis(cf, pr)
print(BACKEND, time.perf_counter() - t0)
"""


def time_pipeline(pure: bool):
    env = dict(os.environ)
    env.pop("NERONZETA_PURE_PYTHON", None)
    if pure:
        env["NERONZETA_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", PIPELINE], env=env, capture_output=True, text=True, check=True)
    backend, seconds = out.stdout.split()
    return backend, float(seconds)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; only the Python timings are meaningful")
    print(f"{'kernel':<16}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, py, cy in time_kernels(args.repeat):
        print(f"{name:<16}{py * 1e3:>14.3f}{cy * 1e3:>14.3f}{py / cy:>9.1f}x")
    print()
    print("end-to-end oracle + pole check on 60 random profiles:")
    for pure in (True, False):
        backend, seconds = time_pipeline(pure)
        print(f"  {backend:<8}{seconds:>8.2f} s")


if __name__ == "__main__":
    main()
