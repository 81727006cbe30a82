"""Time the compiled mod-p kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--sizes 16 32 64] [--repeat 5]

Both backends are run on identical random matrices and their outputs are
compared before any timing is reported.
"""
import argparse
import time

import numpy as np

from genbil import _kernels
from genbil._kernels import _fallback

try:
    from genbil._kernels import _modp
except ImportError:
    _modp = None


def _time(fn, mats, p, repeat):
    best = float("inf")
    for _ in range(repeat):
        work = [m.copy() for m in mats]
        t0 = time.perf_counter()
        for a in work:
            fn(a, p)
        best = min(best, time.perf_counter() - t0)
    return best


def bench(sizes, p, count, repeat, seed):
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        # half-rank matrices so both elimination branches run
        mats = []
        for _ in range(count):
            left = rng.integers(0, p, (n, n // 2 + 1), dtype=np.int64)
            right = rng.integers(0, p, (n // 2 + 1, n + 3), dtype=np.int64)
            mats.append(np.ascontiguousarray(left @ right % p))
        for a in mats:
            x, y = a.copy(), a.copy()
            px = _fallback.rref_modp(x, p)
            if _modp is not None:
                py = _modp.rref_modp(y, p)
                assert px == py and np.array_equal(x, y), "backends disagree"
        row = {"n": n, "python_rref": _time(_fallback.rref_modp, mats, p, repeat),
               "python_rank": _time(_fallback.rank_modp, mats, p, repeat)}
        if _modp is not None:
            row["cython_rref"] = _time(_modp.rref_modp, mats, p, repeat)
            row["cython_rank"] = _time(_modp.rank_modp, mats, p, repeat)
        rows.append(row)
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64, 128])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    print(f"active backend: {_kernels.BACKEND}; compiled extension available: {_modp is not None}")
    rows = bench(args.sizes, args.p, args.count, args.repeat, args.seed)
    print("best-of-repeat wall time in milliseconds per batch")
    print(f"{'n':>5} {'py rref':>10} {'cy rref':>10} {'speedup':>8} {'py rank':>10} {'cy rank':>10} {'speedup':>8}")
    for r in rows:
        cy_rref, cy_rank = r.get("cython_rref"), r.get("cython_rank")
        fmt = lambda t: f"{t * 1e3:10.2f}" if t is not None else f"{'-':>10}"
        sp = lambda a, b: f"{a / b:7.1f}x" if b else f"{'-':>8}"
        print(f"{r['n']:>5} {fmt(r['python_rref'])} {fmt(cy_rref)} {sp(r['python_rref'], cy_rref)} "
              f"{fmt(r['python_rank'])} {fmt(cy_rank)} {sp(r['python_rank'], cy_rank)}")


if __name__ == "__main__":
    main()
