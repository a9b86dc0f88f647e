"""``homalg`` command line.

Every command prints a human block, a ``---`` line and a machine block of
``key = value`` lines.  Exit codes: 0 computed or PASS, 1 FAIL (witness
written), 2 INCONCLUSIVE at the bound, 3 input or validation error.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

from .algebra import corner
from .cache import make_cache
from .cartan import (
    cartan_det,
    cartan_matrix,
    cartan_reduction,
    euler_matrix,
    format_graded_cartan,
    graded_cartan,
)
from .ext import ext_algebra, ext_algebra_global_dimension, ext_quiver
from .fields import field_from_spec
from .harness.checks import CHECKS, FAIL, INCONCLUSIVE, run_with_escalation
from .harness.families import FamilyError
from .harness.instance import Instance
from .harness.sweep import (
    COUNTEREXAMPLE,
    NEAR_MISS,
    conjecture_sweep,
    write_counterexamples,
)
from .modules import semisimple_module, simple_module
from .quiver import PresentationError
from .resolution import DEFAULT_BOUND, BoundError, global_dimension, minimal_resolution
from .textformat import ParseError, load_algebra

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path, field=None):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    if field is not None:
        try:
            fld = field_from_spec(field)
        except ValueError as exc:
            raise InputError(f"--field: {exc}") from exc
        spec = "field Q" if fld.characteristic == 0 else f"field F {fld.characteristic}"
        text = re.sub(r"(?m)^\s*field\b.*$", "", text)
        text = spec + "\n" + text
    name = os.path.splitext(os.path.basename(path))[0]
    try:
        return load_algebra(text, name=name)
    except ParseError as exc:
        where = f"{path}:{exc.line}:{exc.column}" if exc.line else path
        raise InputError(f"{where}: {exc.message}") from exc
    except PresentationError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _support(alg, spec, default_all=True):
    if spec is None:
        return tuple(alg.labels) if default_all else ()
    labels = tuple(x.strip() for x in spec.split(",") if x.strip())
    for x in labels:
        if x not in alg.labels:
            raise InputError(f"--e: unknown vertex label {x!r}")
    return labels


def _emit(out, human, machine):
    text = "\n".join(human) + "\n---\n" + "\n".join(machine) + "\n"
    out.write(text)
    return text


def _write(path, text):
    d = os.path.dirname(path)
    if d:
        os.makedirs(d, exist_ok=True)
    with open(path, "w") as fh:
        fh.write(text)


# ----------------------------------------------------------------------
# commands


def cmd_info(args, cache, out):
    alg, pres = _load(args.input, args.field)
    dims = alg.graded_dims()
    C = cartan_matrix(alg)
    human = [
        f"algebra {alg.name} over {alg.field}",
        f"vertices: {' '.join(alg.labels)}",
        f"dimension {alg.dim}, graded pieces {dims}",
    ]
    if pres is not None:
        human.append(f"{len(pres.quiver.arrows)} arrows, {len(pres.relations)} relations")
    machine = [
        f"field = {alg.field}",
        f"labels = {','.join(alg.labels)}",
        f"dim = {alg.dim}",
        f"graded_dims = {','.join(map(str, dims))}",
        f"cartan = {C}",
        f"det_CA = {cartan_det(alg)}",
        f"fingerprint = {alg.fingerprint}",
    ]
    _emit(out, human, machine)
    return EXIT_OK


def cmd_gldim(args, cache, out):
    alg, _ = _load(args.input, args.field)
    verdict, per = global_dimension(alg, args.bound, cache, detail=True)
    human = [f"gl.dim {alg.name} at bound {args.bound}: {verdict}"]
    human += [f"  pd S_{lab}: {v}" for lab, v in per.items()]
    machine = [f"gldim = {verdict}"] + [f"pd[S_{lab}] = {v}" for lab, v in per.items()]
    _emit(out, human, machine)
    return EXIT_OK


def cmd_resolve(args, cache, out):
    alg, _ = _load(args.input, args.field)
    if args.e is None:
        mods = [simple_module(alg, lab) for lab in alg.labels]
    else:
        mods = [semisimple_module(alg, _support(alg, args.e))]
    human, machine = [], []
    for M in mods:
        res = minimal_resolution(M, args.bound, cache)
        state = "terminated" if res.terminated else ("size-limited" if res.size_limited else "truncated")
        human.append(f"resolution of {M.name} ({state} at stage {res.computed}):")
        for t, s in enumerate(res.describe()):
            human.append(f"  P_{t} = {s}")
            machine.append(f"{M.name}.P[{t}] = {s}")
        machine.append(f"{M.name}.state = {state}")
    _emit(out, human, machine)
    return EXIT_OK


def cmd_ext(args, cache, out):
    alg, _ = _load(args.input, args.field)
    E = _support(alg, args.e)
    Y = ext_algebra(alg, E, args.bound, cache)
    dims = Y.report.dims
    human = [f"Y(e) for e = {{{','.join(E)}}} up to Ext degree {Y.bound}"]
    human.append("dims: " + ",".join(map(str, dims)))
    status = Y.report.status
    if status == "CertifiedFiniteDim":
        human.append("finite-dimensional (certified: every simple of e has finite projective dimension)")
    elif status == "ApparentlyFiniteDim":
        human.append("apparently finite-dimensional (trailing zero window; not certified)")
    else:
        human.append("not finite-dimensional up to bound")
    if Y.report.certified_infinite:
        human.append(f"infinite-dimensional, certified: {Y.report.evidence}")
    machine = [
        f"e = {','.join(E)}",
        f"bound = {Y.bound}",
        f"dims = {','.join(map(str, dims))}",
        f"findim = {status}",
        f"certified_infinite = {str(Y.report.certified_infinite).lower()}",
    ]
    bideg = {}
    for _, c in Y.classes:
        bideg[(c.t, c.internal)] = bideg.get((c.t, c.internal), 0) + 1
    machine.append("bigraded = " + ";".join(f"{t}:{d}:{n}" for (t, d), n in sorted(bideg.items())))
    if status == "CertifiedFiniteDim":
        g, _ = ext_algebra_global_dimension(Y, args.bound, cache)
        machine.append(f"gldim_Y = {g}")
    q = ext_quiver(alg, E, cache)
    machine.append("ext_quiver = " + (";".join(f"{i}->{j}:{m}" for i, j, m in q.edges) or "none"))
    machine.append(f"acyclic = {str(q.acyclic).lower()}")
    if args.out:
        _write(args.out, Y.algebra.serialize())
        human.append(f"Y(e) structure constants written to {args.out}")
    _emit(out, human, machine)
    return EXIT_OK


def cmd_gamma(args, cache, out):
    alg, _ = _load(args.input, args.field)
    E = _support(alg, args.e)
    keep = [x for x in alg.labels if x not in E]
    G = corner(alg, keep)
    G.name = f"Gamma({alg.name};e={','.join(E)})"
    text = G.serialize()
    if args.out:
        _write(args.out, text)
    human = [f"Gamma = (1-e)A(1-e) for e = {{{','.join(E)}}}: dimension {G.dim}, vertices {' '.join(G.labels)}"]
    _emit(out, human, text.rstrip("\n").splitlines())
    return EXIT_OK


def cmd_cartan(args, cache, out):
    alg, _ = _load(args.input, args.field)
    E = _support(alg, args.e)
    human = [f"Cartan data of {alg.name}, e = {{{','.join(E)}}}"]
    machine = [f"det_CA = {cartan_det(alg)}"]
    machine += format_graded_cartan(graded_cartan(alg))
    em = euler_matrix(alg, args.bound, cache)
    if not em.complete:
        human.append(f"Euler matrix incomplete at bound {args.bound}; reduction not attempted")
        machine.append("euler_complete = false")
        _emit(out, human, machine)
        return EXIT_INCONCLUSIVE
    Y = ext_algebra(alg, E, args.bound, cache)
    g, _ = ext_algebra_global_dimension(Y, args.bound, cache)
    rep = cartan_reduction(alg, E, args.bound, cache, Y, g)
    machine = rep.lines() + machine[1:]
    if Y.is_complete():
        machine += [line.replace("gradedCartan", "gradedCartanY") for line in format_graded_cartan(graded_cartan(Y.algebra))]
    human.append("checks: " + ", ".join(f"{k}={'ok' if v else 'FAILED'}" for k, v in rep.identity_checks().items()))
    _emit(out, human, machine)
    return EXIT_OK if all(rep.identity_checks().values()) else EXIT_FAIL


def cmd_check(args, cache, out):
    if args.predicate not in CHECKS:
        raise InputError(f"unknown predicate {args.predicate!r}; choose from {', '.join(CHECKS)}")
    alg, pres = _load(args.input, args.field)
    E = _support(alg, args.e)
    inst = Instance(alg, E, args.bound, pres, cache=cache)
    rep = run_with_escalation(CHECKS[args.predicate], inst)
    human = rep.lines()
    machine = [f"predicate = {rep.predicate}", f"status = {rep.status}"]
    machine += [f"{k} = {v}" for k, v in rep.verdicts.items()]
    if rep.status == FAIL:
        path = args.out or "counterexample.alg"
        _write(path, rep.witness)
        human.append(f"witness written to {path}")
    _emit(out, human, machine)
    if rep.status == FAIL:
        return EXIT_FAIL
    if rep.status == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_sweep(args, cache, out):
    try:
        report = conjecture_sweep(args.family, args.bound, args.jobs)
    except FamilyError as exc:
        raise InputError(str(exc)) from exc
    human = [f"sweep {args.family} at bound {args.bound}"]
    if report.counterexamples:
        outdir = args.out or "counterexamples"
        paths = write_counterexamples(report, outdir)
        human += [f"COUNTEREXAMPLE written to {p}" for p in paths]
    machine = report.text().rstrip("\n").splitlines()
    _emit(out, human, machine)
    counts = report.counts()
    if counts.get(COUNTEREXAMPLE):
        return EXIT_FAIL
    if counts.get(NEAR_MISS):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


COMMANDS = {
    "info": cmd_info,
    "gldim": cmd_gldim,
    "resolve": cmd_resolve,
    "ext": cmd_ext,
    "gamma": cmd_gamma,
    "cartan": cmd_cartan,
    "check": cmd_check,
    "sweep": cmd_sweep,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="homological bound T_max")
    common.add_argument("--e", help="comma-separated vertex labels of e")
    common.add_argument("--field", help="override the field: Q or F<p>")
    common.add_argument("--out", help="output file (or directory for sweep)")
    common.add_argument("--cache", help="resolution cache directory")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the disk cache")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweep")
    p = argparse.ArgumentParser(prog="homalg", description="Exact homological algebra of graded quiver algebras.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("info", "gldim", "resolve", "ext", "gamma", "cartan"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("input")
    sp = sub.add_parser("check", parents=[common])
    sp.add_argument("predicate", help=", ".join(CHECKS))
    sp.add_argument("input")
    sp = sub.add_parser("sweep", parents=[common])
    sp.add_argument("family", help="e.g. 'linear(4);nakayama(3,2);random(4,6,3,seed=17,count=5)'")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if args.bound < 0:
        print("error: --bound must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    cache = make_cache(args.cache, enabled=not args.no_cache)
    try:
        return COMMANDS[args.command](args, cache, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BoundError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
