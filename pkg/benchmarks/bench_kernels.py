"""Compare the compiled and pure-Python elimination kernels.

    python3 benchmarks/bench_kernels.py [--sizes 20 40 80] [--repeat 3]

Each row times one rref on a random sparse matrix with small entries (the
shape the resolution engine produces), over Q and over F_101, then one
end-to-end Ext computation with each backend.
"""

import argparse
import random
import sys
import timeit
from fractions import Fraction

from homalg import _kernels_py, kernels

P = 101


def random_rows(rng, n, density=0.3):
    return [[rng.randint(-3, 3) if rng.random() < density else 0 for _ in range(n)] for _ in range(n)]


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_rref(sizes, repeat, seed):
    if kernels.BACKEND != "cython":
        print("compiled kernels not built; only the fallback is available", file=sys.stderr)
        return []
    from homalg import _ckernels

    rng = random.Random(seed)
    rows = []
    for n in sizes:
        m = random_rows(rng, n)
        mq = [[Fraction(x) for x in r] for r in m]
        mp = [[x % P for x in r] for r in m]
        assert _ckernels.rref_q(mq, n) == _kernels_py.rref_q(mq, n)
        assert _ckernels.rref_p(mp, n, P) == _kernels_py.rref_p(mp, n, P)
        for field, c, py in (
            ("Q", lambda: _ckernels.rref_q(mq, n), lambda: _kernels_py.rref_q(mq, n)),
            (f"F{P}", lambda: _ckernels.rref_p(mp, n, P), lambda: _kernels_py.rref_p(mp, n, P)),
        ):
            tc, tp = best(c, repeat), best(py, repeat)
            rows.append((f"rref {n}x{n}", field, tc, tp))
    return rows


def bench_ext(repeat):
    from homalg.ext import ext_algebra
    from homalg.harness.families import nakayama
    from homalg.quiver import compile_presentation
    from homalg.resolution import ResolutionCache

    alg = compile_presentation(nakayama(4, 3))
    original = kernels.rref_q, kernels.rref_p

    def run():
        ext_algebra(alg, None, 24, ResolutionCache())

    tc = best(run, repeat)
    kernels.rref_q, kernels.rref_p = _kernels_py.rref_q, _kernels_py.rref_p
    try:
        tp = best(run, repeat)
    finally:
        kernels.rref_q, kernels.rref_p = original
    return [("Y(1) of nakayama(4,3), bound 24", "Q", tc, tp)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 40, 80, 120])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rows = bench_rref(args.sizes, args.repeat, args.seed)
    if kernels.BACKEND == "cython":
        rows += bench_ext(args.repeat)
    print(f"{'case':<34} {'field':<6} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for case, field, tc, tp in rows:
        print(f"{case:<34} {field:<6} {tc:>10.4f} {tp:>10.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
