"""Compare the numba and numpy signature-sampling kernels.

    python benchmarks/bench_signature_kernel.py [--points N] [--repeat R]

Both kernels run in the same process (the env flag only picks the
default).  The first numba call includes JIT compilation and is reported
separately.
"""
import argparse
import time

from concordkit import _kernels
from concordkit.sampling import sampled_rho
from concordkit.seifert import GRANNY, TREFOIL, build_paper_matrix
from concordkit.signature import rho_zero


def best_of(fn, repeat):
    times, value = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        times.append(time.perf_counter() - t0)
    return min(times), value


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if not _kernels.HAVE_NUMBA:
        print("numba is not importable; only the numpy kernel can run")
    else:
        t0 = time.perf_counter()
        sampled_rho(TREFOIL, 64, kernel=_kernels.signature_samples_numba)
        print(f"numba compile + first call: {time.perf_counter() - t0:.2f}s")

    cases = [
        ("trefoil", TREFOIL, args.points),
        ("granny", GRANNY, args.points),
        ("A (8x8)", build_paper_matrix("A"), args.points // 10),
        ("C (16x16)", build_paper_matrix("C"), args.points // 50),
    ]
    print(f"{'matrix':<10} {'points':>9} {'exact':>8} {'numpy s':>9} {'numba s':>9} {'speedup':>8}  estimates")
    for name, s, n in cases:
        exact = rho_zero(s)
        t_np, v_np = best_of(lambda: sampled_rho(s, n, kernel=_kernels.signature_samples_numpy), args.repeat)
        if _kernels.HAVE_NUMBA:
            t_nb, v_nb = best_of(lambda: sampled_rho(s, n, kernel=_kernels.signature_samples_numba), args.repeat)
            print(f"{name:<10} {n:>9} {str(exact):>8} {t_np:>9.3f} {t_nb:>9.3f} {t_np / t_nb:>7.1f}x"
                  f"  numpy {v_np:.6f}, numba {v_nb:.6f}")
        else:
            print(f"{name:<10} {n:>9} {str(exact):>8} {t_np:>9.3f} {'-':>9} {'-':>8}  numpy {v_np:.6f}")


if __name__ == "__main__":
    main()
