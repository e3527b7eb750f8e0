"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from diraclogic import _kernels_py

try:
    from diraclogic import _ckernels
except ImportError:
    _ckernels = None


def workloads():
    rng = np.random.default_rng(0)
    A = np.array([0.8 + 0.3j, -0.5 + 0.2j, 1.2 + 0.05j])
    B = np.array([0.4 - 0.1j, 1.0 + 0j, -0.7 + 0.0j])
    P = rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4))
    x = np.linspace(-30, 30, 200_000)
    nodes, weights = np.polynomial.legendre.leggauss(8)
    lo = np.linspace(-30, 30, 100_000)
    hi = lo + lo[1] - lo[0]
    return {
        "sample_sum (200k points)": lambda k: k.sample_sum(x, A, B, P, 1e-3),
        "panel_integrals (100k panels, GL8)": lambda k: k.panel_integrals(lo, hi, nodes, weights, A, B, P, 1e-3),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = {"python": _kernels_py}
    if _ckernels is not None:
        backends["cython"] = _ckernels
    else:
        print("compiled extension not built; timing the fallback only")
    print(f"{'kernel':40s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup")
    for name, work in workloads().items():
        times = {b: min(timeit.repeat(lambda: work(k), number=1, repeat=args.repeat)) for b, k in backends.items()}
        ref = work(_kernels_py)
        for b, k in backends.items():
            assert np.allclose(work(k), ref, rtol=1e-12, atol=1e-300), f"{b} disagrees with the fallback"
        speed = f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else ""
        print(f"{name:40s} " + " ".join(f"{t * 1e3:8.1f}ms" for t in times.values()) + f"  {speed}")


if __name__ == "__main__":
    main()
