"""Compare the numba and pure-numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--sizes 32 64 128] [--repeat 3]

Times row reduction, matrix products and elementwise subtraction on random
matrices over GF(2^16), GF(3^10) and GF(2^32), checks that both backends
return identical results, and also times one endomorphism-algebra
classification end to end.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from symend import kernels
from symend.gf import GF


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_field(F, n: int, repeat: int, rng) -> list[tuple[str, float, float]]:
    A = F.random(rng, (n, n))
    B = F.random(rng, (n, n))

    def rref():
        M = A.copy()
        piv = kernels.rref_inplace(F, M)
        return np.concatenate([piv, M.ravel()])

    rows = []
    ops = {
        "rref": rref,
        "matmul": lambda: kernels.matmul(F, A, B),
        "vsub": lambda: kernels.vsub(F, A, B),
    }
    for name, fn in ops.items():
        results, times = {}, {}
        for be in ("numba", "numpy"):
            kernels.set_backend(be)
            results[be] = fn()
            times[be] = _best(fn, repeat)
        assert np.array_equal(results["numba"], results["numpy"]), f"backends disagree on {name}"
        rows.append((name, times["numba"], times["numpy"]))
    return rows


def bench_classify(repeat: int) -> tuple[float, float]:
    from symend import classify, dihedral, modrep

    F = GF(2, 16)
    M = dihedral.string_module(dihedral.Word("abababab"), F)
    out = {}
    for be in ("numba", "numpy"):
        kernels.set_backend(be)

        def run():
            E = modrep.end_algebra(M)
            return classify.classify(E).flags()

        run()
        out[be] = _best(run, repeat)
    return out["numba"], out["numpy"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[32, 64, 128])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    rng = np.random.default_rng(args.seed)
    fields = [GF(2, 16), GF(3, 10), GF(2, 32)]
    print(f"{'field':<10}{'n':>5}  {'op':<8}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for F in fields:
        for n in args.sizes:
            for name, t_nb, t_np in bench_field(F, n, args.repeat, rng):
                label = f"{F.p}^{F.e}"
                print(f"{label:<10}{n:>5}  {name:<8}{t_nb:>12.5f}{t_np:>12.5f}{t_np / t_nb:>10.1f}")
    t_nb, t_np = bench_classify(args.repeat)
    print(f"\nclassify End(M(abababab)) over 2^16: numba {t_nb:.3f}s, numpy {t_np:.3f}s, "
          f"speedup {t_np / t_nb:.1f}x")
    kernels.set_backend("numba")


if __name__ == "__main__":
    main()
