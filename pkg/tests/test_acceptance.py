"""Acceptance criteria 1-9, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

import io
import os
import random
import tempfile
import time

import pytest

from homalg.algebra import corner
from homalg.cartan import (
    cartan_det,
    cartan_matrix,
    cartan_reduction,
    euler_matrix,
    identity,
    int_det,
    jacobi_identity,
    matmul_int,
)
from homalg.cli import main as cli_main
from homalg.ext import (
    NOT_FINITE_UP_TO_BOUND,
    ext_algebra,
    ext_dims_naive,
    ext_group,
)
from homalg.harness.checks import PASS, PASS_VACUOUS, check_two_of_three
from homalg.harness.families import linear, linear_masks, nakayama, random_presentation
from homalg.harness.instance import Instance, support_subsets
from homalg.harness.sweep import conjecture_sweep
from homalg.modules import semisimple_module, simple_module
from homalg.quiver import compile_presentation
from homalg.resolution import (
    ResolutionCache,
    global_dimension,
    minimal_resolution,
    verify_resolution,
)
from homalg.textformat import load_algebra, parse_presentation
from homalg.verdict import Finite, InfiniteCertified

RANDOM = [(4, 6, 3, 16), (4, 6, 3, 21), (3, 4, 3, 19), (3, 4, 3, 20), (3, 4, 3, 21), (4, 5, 3, 16), (4, 5, 3, 21), (3, 5, 4, 23)]
EXTRA = {
    "kx3": "vertex 1\narrow x 1 1\nrelation x*x*x\n",
    "a4cubic": "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\nrelation a*b*c\n",
    "kronecker2": "vertex 1\nvertex 2\narrow a 1 2\narrow b 1 2\narrow c 2 1\nrelation a*c - b*c\nrelation c*a\nrelation c*b\n",
}


def corpus():
    """``(presentation, algebra)`` pairs covering finite, infinite and unknown cases."""
    pres = [nakayama(3, 2), nakayama(2, 2), nakayama(4, 3)]
    pres += [linear(n, m) for n in range(1, 5) for m in linear_masks(n)]
    pres += [random_presentation(v, a, r, seed=s) for v, a, r, s in RANDOM]
    pres += [parse_presentation(text, name=name) for name, text in EXTRA.items()]
    return [(p, compile_presentation(p)) for p in pres]


CORPUS = corpus()


def report(n, ok, detail, elapsed, budget):
    status = "PASS" if ok and elapsed <= budget else "FAIL"
    line = f"criterion {n}: {status} ({elapsed:.2f}s, budget {budget}s) {detail}"
    print(line)
    return line


def _emit(capsys, line):
    if capsys is None:
        return
    with capsys.disabled():
        print("\n" + line)


# ----------------------------------------------------------------------
# criteria


def criterion_1():
    start = time.perf_counter()
    cache = ResolutionCache()
    pres = nakayama(3, 2)
    alg = compile_presentation(pres)
    inst = Instance(alg, ["1"], 30, pres, cache=cache)
    an = inst.analysis
    Y = an.Y
    ok = isinstance(an.gldim_A, InfiniteCertified)
    ok &= an.gldim_Gamma == Finite(1)
    ok &= Y.dims() == [1 if i % 3 == 0 else 0 for i in range(31)]
    ok &= Y.report.status == NOT_FINITE_UP_TO_BOUND
    x = Y.algebra.basis_element(1)
    ok &= Y.algebra.tags[1][2] == 3
    p = x
    for k in range(1, 11):
        ok &= not p.is_zero() and p.degrees() == [3 * k]
        p = p * x
    detail = f"gldim A {an.gldim_A.evidence}; gldim Gamma {an.gldim_Gamma}; Y(e) {Y.report.status}"
    return ok, detail, time.perf_counter() - start, 2


def criterion_2():
    start = time.perf_counter()
    alg = compile_presentation(nakayama(3, 2))
    Y = ext_algebra(alg, None, 30, ResolutionCache())
    ok = Y.dims() == [3] * 31
    return ok, f"dim Y(1)(i) = 3 for i <= 30: {ok}", time.perf_counter() - start, 5


def criterion_3():
    start = time.perf_counter()
    counts = {}
    total = 0
    for n in range(1, 5):
        for mask in linear_masks(n):
            pres = linear(n, mask)
            alg = compile_presentation(pres)
            cache = ResolutionCache()
            for sub in support_subsets(alg):
                rep = check_two_of_three(Instance(alg, sub, 20, pres, cache=cache))
                counts[rep.status] = counts.get(rep.status, 0) + 1
                total += 1
    ok = set(counts) <= {PASS, PASS_VACUOUS}
    return ok, f"{total} instances {dict(sorted(counts.items()))}", time.perf_counter() - start, 120


def criterion_4():
    start = time.perf_counter()
    finite = reductions = 0
    ok = True
    for pres, alg in CORPUS:
        cache = ResolutionCache()
        if not isinstance(global_dimension(alg, 20, cache), Finite):
            continue
        finite += 1
        ok &= abs(cartan_det(alg)) == 1
        for sub in support_subsets(alg):
            an = Instance(alg, sub, 20, pres, cache=cache).analysis
            if an.Y.report.status != "CertifiedFiniteDim" or not isinstance(an.gldim_Y, Finite):
                continue
            rep = cartan_reduction(alg, sub, 20, cache, ext=an.Y, ext_gldim=an.gldim_Y)
            reductions += 1
            ok &= rep.det_CA == rep.det_Gamma and rep.det_W == 1
            ok &= all(rep.identity_checks().values())
    detail = f"|cd(A)| = 1 on {finite} algebras; cd(A) = cd(Gamma), det W = 1 on {reductions} instances"
    return ok, detail, time.perf_counter() - start, 120


def random_invertible(rng, n):
    while True:
        M = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if int_det(M) != 0:
            return M


def criterion_5():
    start = time.perf_counter()
    complete = 0
    ok = True
    for _, alg in CORPUS:
        E = euler_matrix(alg, 20, ResolutionCache())
        if E.complete:
            complete += 1
            ok &= matmul_int(cartan_matrix(alg), E.matrix) == identity(alg.n)
    rng = random.Random(2024)
    for _ in range(100):
        n = rng.randint(1, 6)
        M = random_invertible(rng, n)
        J = sorted(rng.sample(range(n), rng.randint(0, n)))
        ok &= jacobi_identity(M, J)
    detail = f"C_A*E = I on {complete} complete Euler matrices; Jacobi identity on 100 random matrices"
    return ok, detail, time.perf_counter() - start, 30


def criterion_6():
    start = time.perf_counter()
    instances = relifts = 0
    ok = True
    for _, alg in CORPUS:
        cache = ResolutionCache()
        for sub in support_subsets(alg):
            Y = ext_algebra(alg, sub, 12, cache)
            Y.algebra.check(exhaustive=True)
            one = Y.algebra.one()
            for x in range(Y.algebra.dim):
                b = Y.algebra.basis_element(x)
                ok &= one * b == b == b * one
            instances += 1
        for seed in range(10):
            again = ext_algebra(alg, None, 12, cache, rng=random.Random(seed))
            ok &= again.algebra.table == ext_algebra(alg, None, 12, cache).algebra.table
            relifts += 1
    detail = f"associativity and units on {instances} Yoneda algebras; {relifts} re-lifts agree"
    return ok, detail, time.perf_counter() - start, 120


def criterion_7():
    start = time.perf_counter()
    resolutions = 0
    ok = True
    for _, alg in CORPUS:
        cache = ResolutionCache()
        modules = [simple_module(alg, lab) for lab in alg.labels] + [semisimple_module(alg)]
        for M in modules:
            res = minimal_resolution(M, 12, cache)
            ok &= all(verify_resolution(res).values())
            resolutions += 1
    oracle = 0
    named = {p.name: (p, a) for p, a in CORPUS}
    for key in ("nakayama(3,2)", "nakayama(4,3)", "linear(4,{2})", "kx3", "a4cubic"):
        _, alg = named[key]
        for lab in alg.labels:
            res = minimal_resolution(simple_module(alg, lab), 6, ResolutionCache())
            for j in range(alg.n):
                ok &= ext_dims_naive(simple_module(alg, lab), j, 5) == [ext_group(res, j, t)[0] for t in range(6)]
        oracle += 1
    detail = f"{resolutions} resolutions sound; naive oracle agrees on {oracle} instances"
    return ok, detail, time.perf_counter() - start, 60


def _verdicts(pres, alg, sub, bound):
    an = Instance(alg, sub, bound, pres, cache=ResolutionCache()).analysis
    return an.gldim_A, an.gldim_Gamma, an.gldim_Y


def _stable(a, b):
    if isinstance(a, Finite):
        return a == b
    if isinstance(a, InfiniteCertified):
        return isinstance(b, InfiniteCertified)
    return True


def criterion_8():
    start = time.perf_counter()
    compared = resolved = 0
    ok = True
    for pres, alg in CORPUS:
        for sub in support_subsets(alg):
            low = _verdicts(pres, alg, sub, 20)
            high = _verdicts(pres, alg, sub, 40)
            for a, b in zip(low, high):
                compared += 1
                ok &= _stable(a, b)
                resolved += type(a) is not type(b)
    detail = f"{compared} verdicts compared at bounds 20 and 40; {resolved} Unknown resolved"
    return ok, detail, time.perf_counter() - start, 300


def _machine(argv):
    out = io.StringIO()
    code = cli_main(argv + ["--no-cache"], out=out)
    return code, out.getvalue().split("\n---\n", 1)[1]


def criterion_9():
    start = time.perf_counter()
    alg_text = nakayama(3, 2).to_text()
    ok = True
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "nakayama3.alg")
        with open(path, "w") as fh:
            fh.write(alg_text)
        for argv in (["gldim", path], ["ext", path, "--e", "1,2", "--bound", "15"], ["check", "twoofthree", path, "--e", "1"]):
            first, second = _machine(argv), _machine(argv)
            ok &= first == second
    spec = "linear(4); nakayama(3,2); " + "; ".join(f"random({v},{a},{r},seed={s})" for v, a, r, s in RANDOM[:4])
    one = conjecture_sweep(spec, bound=12, jobs=1).text()
    many = conjecture_sweep(spec, bound=12, jobs=3).text()
    ok &= one == many
    return ok, "machine blocks byte-identical; sweep independent of --jobs", time.perf_counter() - start, 60


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("n", range(1, 10))
def test_acceptance(n, capsys):
    ok, detail, elapsed, budget = CRITERIA[n - 1]()
    _emit(capsys, report(n, ok, detail, elapsed, budget))
    assert ok, detail
    assert elapsed <= budget, f"{elapsed:.2f}s over budget {budget}s"


def test_corpus_is_varied():
    verdicts = {type(global_dimension(alg, 20, ResolutionCache())).__name__ for _, alg in CORPUS}
    assert verdicts == {"Finite", "InfiniteCertified", "Unknown"}
    assert all(corner(alg, []).dim == 0 for _, alg in CORPUS)
    assert load_algebra(CORPUS[0][0].to_text())[0].dim == CORPUS[0][1].dim


if __name__ == "__main__":
    for i, crit in enumerate(CRITERIA, 1):
        report(i, *crit())
