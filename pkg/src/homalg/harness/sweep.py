"""Counterexample search over instance families.

Each instance is classified by the hypotheses of the acyclic conjecture:
``e`` acyclic, gl.dim A and gl.dim Gamma finite.  Surviving instances are
``supporting`` (gl.dim Y(e) finite), ``COUNTEREXAMPLE`` (certified infinite)
or ``near-miss`` (unknown even after one retry at twice the bound).
"""

from __future__ import annotations

import os
import re
from collections import Counter
from dataclasses import dataclass
from multiprocessing import Pool

from ..verdict import Finite, InfiniteCertified, short
from .families import compile_family, parse_family
from .instance import Instance, support_subsets

SUPPORTING = "supporting"
SUPPORTING_KOSZUL = "supporting-koszul-nonacyclic"
COUNTEREXAMPLE = "COUNTEREXAMPLE"
NEAR_MISS = "near-miss"
FILTERED_CYCLIC = "filtered-nonacyclic"
FILTERED_HYP = "filtered-hypotheses"


@dataclass(frozen=True)
class SweepLine:
    order: tuple
    key: str
    gldim_A: str
    gldim_Gamma: str
    y_findim: str
    gldim_Y: str
    acyclic: bool
    verdict: str
    escalated: bool = False
    witness: str | None = None

    def text(self):
        ac = "acyclic" if self.acyclic else "cyclic"
        return f"{self.key} {self.gldim_A} {self.gldim_Gamma} {self.y_findim} {self.gldim_Y} {ac} {self.verdict}"


def _classify(inst: Instance):
    an = inst.analysis
    acyclic = an.quiver.acyclic
    gA, gG = an.gldim_A, an.gldim_Gamma
    hyp = isinstance(gA, Finite) and isinstance(gG, Finite)
    koszul = an.koszul.linear
    if not hyp or (not acyclic and not koszul):
        verdict = FILTERED_CYCLIC if not acyclic else FILTERED_HYP
        return acyclic, verdict, "-", "-"
    gY = an.gldim_Y
    yrep = an.Y.report.status
    if isinstance(gY, Finite):
        verdict = SUPPORTING if acyclic else SUPPORTING_KOSZUL
    elif isinstance(gY, InfiniteCertified):
        # a cyclic Koszul instance is outside the acyclic hypothesis, but an
        # infinite gl.dim Y(e) there is still impossible; flag it the same way
        verdict = COUNTEREXAMPLE
    else:
        verdict = NEAR_MISS
    return acyclic, verdict, yrep, short(gY)


def evaluate(args):
    """Worker entry point: ``(order, algebra, presentation, support, bound)``."""
    order, alg, pres, support, bound = args
    inst = Instance(alg, support, bound, pres)
    acyclic, verdict, yrep, gY = _classify(inst)
    escalated = False
    if verdict == NEAR_MISS:
        inst = inst.with_bound(2 * bound)
        acyclic, verdict, yrep, gY = _classify(inst)
        escalated = True
    an = inst.analysis
    witness = inst.serialize() if verdict == COUNTEREXAMPLE else None
    return SweepLine(
        order, inst.key, short(an.gldim_A), short(an.gldim_Gamma), yrep, gY, acyclic, verdict, escalated, witness
    )


@dataclass
class SweepReport:
    lines: list
    skipped: int
    bound: int

    def counts(self):
        return Counter(line.verdict for line in self.lines)

    @property
    def counterexamples(self):
        return [line for line in self.lines if line.verdict == COUNTEREXAMPLE]

    def summary(self):
        c = self.counts()
        out = [
            f"instances = {len(self.lines)}",
            f"skipped_uncertified = {self.skipped}",
            f"bound = {self.bound}",
        ]
        for name in (COUNTEREXAMPLE, SUPPORTING, SUPPORTING_KOSZUL, NEAR_MISS, FILTERED_CYCLIC, FILTERED_HYP):
            out.append(f"{name} = {c.get(name, 0)}")
        out.append(f"escalated = {sum(1 for line in self.lines if line.escalated)}")
        return out

    def text(self):
        return "\n".join([line.text() for line in self.lines] + ["summary:"] + ["  " + s for s in self.summary()]) + "\n"


def sweep_tasks(specs, bound):
    tasks, skipped, seen = [], 0, set()
    for fi, spec in enumerate(specs):
        pairs, sk = compile_family(spec)
        skipped += sk
        for ai, (pres, alg) in enumerate(pairs):
            if pres.name in seen:
                continue
            seen.add(pres.name)
            for si, sub in enumerate(support_subsets(alg)):
                tasks.append(((fi, ai, si), alg, pres, sub, bound))
    return tasks, skipped


def conjecture_sweep(family, bound: int = 20, jobs: int = 1) -> SweepReport:
    """Evaluate every (algebra, e) of the family; merge deterministically."""
    specs = parse_family(family) if isinstance(family, str) else list(family)
    tasks, skipped = sweep_tasks(specs, bound)
    if jobs > 1 and len(tasks) > 1:
        with Pool(jobs) as pool:
            lines = pool.map(evaluate, tasks, chunksize=1)
    else:
        lines = [evaluate(t) for t in tasks]
    lines.sort(key=lambda line: line.order)
    return SweepReport(lines, skipped, bound)


def write_counterexamples(report: SweepReport, outdir: str):
    """One file per counterexample in the presentation text format."""
    os.makedirs(outdir, exist_ok=True)
    paths = []
    for line in report.counterexamples:
        name = re.sub(r"[^A-Za-z0-9_.-]+", "_", line.key).strip("_") + ".alg"
        path = os.path.join(outdir, name)
        with open(path, "w") as fh:
            fh.write(line.witness)
        paths.append(path)
    return paths

