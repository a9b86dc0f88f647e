"""Three-valued checks of the reduction statements on single instances.

Truth values are ``True``, ``False`` or ``None`` (unknown at the bound) and
are combined with Kleene's strong logic; an unknown is never promoted to a
pass or a failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..cartan import cartan_det
from ..ext import APPARENTLY_FINITE, CERTIFIED_FINITE
from ..verdict import Finite, truth

PASS = "PASS"
PASS_VACUOUS = "PASS-vacuous"
PASS_ADVISORY = "PASS-advisory"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"
NOT_APPLICABLE = "NOT-APPLICABLE"

PASSING = (PASS, PASS_VACUOUS, PASS_ADVISORY, NOT_APPLICABLE)


def k_and(*xs):
    if any(x is False for x in xs):
        return False
    if all(x is True for x in xs):
        return True
    return None


def k_implies(a, b):
    if a is False or b is True:
        return True
    if a is True and b is False:
        return False
    return None


@dataclass
class CheckReport:
    predicate: str
    status: str
    verdicts: dict = field(default_factory=dict)
    witness: str | None = None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status in PASSING

    def lines(self):
        out = [f"{self.predicate}: {self.status}"]
        out += [f"  {k} = {v}" for k, v in self.verdicts.items()]
        out += [f"  note: {n}" for n in self.notes]
        return out


def _y_finite(an, allow_apparent=False):
    """Truth of "Y(e) is finite dimensional" and whether it is only advisory."""
    rep = an.Y.report
    if rep.status == CERTIFIED_FINITE:
        return True, False
    if rep.certified_infinite:
        return False, False
    if rep.status == APPARENTLY_FINITE and allow_apparent:
        return True, True
    return None, False


def _verdicts(an, **extra):
    out = {"gldim_A": str(an.gldim_A), "gldim_Gamma": str(an.gldim_Gamma)}
    out.update(extra)
    return out


def _report(name, inst, status, verdicts, notes=()):
    rep = CheckReport(name, status, verdicts, notes=list(notes))
    if status == FAIL:
        rep.witness = inst.serialize()
    return rep


def check_prop_A_and_Y_implies_Gamma(inst) -> CheckReport:
    """gl.dim A finite and Y(e) finite dimensional of finite gl.dim => gl.dim Gamma finite."""
    name = "prop_A_and_Y_implies_Gamma"
    an = inst.analysis
    a = truth(an.gldim_A)
    yfin, _ = _y_finite(an)
    ygl = truth(an.gldim_Y) if yfin else (False if yfin is False else None)
    hyp = k_and(a, yfin, ygl)
    concl = truth(an.gldim_Gamma)
    v = _verdicts(an, Y_findim=str(an.Y.report), gldim_Y=str(an.gldim_Y))
    if hyp is False:
        return _report(name, inst, PASS_VACUOUS, v)
    value = k_implies(hyp, concl)
    if value is True:
        return _report(name, inst, PASS, v)
    if value is False:
        return _report(name, inst, FAIL, v, ["hypotheses hold but Gamma has certified infinite global dimension"])
    return _report(name, inst, INCONCLUSIVE, v, ["a required verdict is Unknown at the bound"])


def check_prop_Gamma_and_Artinian_implies_A(inst) -> CheckReport:
    """gl.dim Gamma finite and Y(e) finite dimensional => gl.dim A finite."""
    name = "prop_Gamma_and_Artinian_implies_A"
    an = inst.analysis
    g = truth(an.gldim_Gamma)
    yfin, advisory = _y_finite(an, allow_apparent=True)
    hyp = k_and(g, yfin)
    concl = truth(an.gldim_A)
    v = _verdicts(an, Y_findim=str(an.Y.report))
    if hyp is False:
        return _report(name, inst, PASS_VACUOUS, v)
    value = k_implies(hyp, concl)
    if value is True:
        if hyp is True and advisory:
            return _report(name, inst, PASS_ADVISORY, v, ["Y(e) only apparently finite dimensional"])
        return _report(name, inst, PASS, v)
    if value is False:
        if advisory:
            return _report(name, inst, INCONCLUSIVE, v, ["advisory hypothesis contradicted; not a certified failure"])
        return _report(name, inst, FAIL, v, ["hypotheses hold but A has certified infinite global dimension"])
    return _report(name, inst, INCONCLUSIVE, v, ["a required verdict is Unknown at the bound"])


def _condition_three(an):
    yfin, _ = _y_finite(an)
    if yfin is not True:
        return yfin
    return truth(an.gldim_Y)


def check_two_of_three(inst) -> CheckReport:
    """Under linearity, any two of (gl.dim A, gl.dim Gamma, Y(e)) finite imply the third."""
    name = "two_of_three"
    an = inst.analysis
    kos = an.koszul
    lin = an.linear_Se
    pre = kos.linear or (lin is not None and lin.linear)
    c = (truth(an.gldim_A), truth(an.gldim_Gamma), _condition_three(an))
    v = _verdicts(
        an,
        Y_findim=str(an.Y.report),
        gldim_Y=str(an.gldim_Y),
        koszul=str(kos),
        linear_Se=str(lin),
        conditions=str(tuple({True: "T", False: "F", None: "?"}[x] for x in c)),
    )
    if not pre:
        return _report(name, inst, NOT_APPLICABLE, v, ["no linear resolution of A(0) or S_e"])
    value = k_and(k_implies(k_and(c[0], c[1]), c[2]), k_implies(k_and(c[0], c[2]), c[1]), k_implies(k_and(c[1], c[2]), c[0]))
    if value is True:
        return _report(name, inst, PASS if any(x is True for x in c) else PASS_VACUOUS, v)
    if value is False:
        return _report(name, inst, FAIL, v, ["two conditions hold and the third is certified false"])
    return _report(name, inst, INCONCLUSIVE, v, ["a condition is Unknown at the bound"])


def check_cartan_reduction(inst) -> CheckReport:
    """gl.dim A and gl.dim Y(e) finite => cd(A) = cd(Gamma), Gamma finite, det W = 1."""
    name = "cartan_reduction"
    an = inst.analysis
    a = truth(an.gldim_A)
    yfin, _ = _y_finite(an)
    ygl = truth(an.gldim_Y) if yfin else (False if yfin is False else None)
    pre = k_and(a, yfin, ygl)
    v = _verdicts(an, gldim_Y=str(an.gldim_Y))
    if pre is False:
        return _report(name, inst, PASS_VACUOUS, v)
    if pre is None:
        return _report(name, inst, INCONCLUSIVE, v, ["precondition Unknown at the bound"])
    rep = an.cartan
    v.update(det_CA=str(rep.det_CA), det_Gamma=str(rep.det_Gamma), det_W=str(rep.det_W))
    checks = rep.identity_checks()
    bad = [k for k, ok in checks.items() if not ok]
    if rep.det_CA != rep.det_Gamma:
        bad.append("cd(A) != cd(Gamma)")
    if rep.det_W != 1:
        bad.append("det W != 1")
    gam = truth(an.gldim_Gamma)
    if gam is False:
        bad.append("Gamma has certified infinite global dimension")
    if bad:
        return _report(name, inst, FAIL, v, bad)
    if gam is None:
        return _report(name, inst, INCONCLUSIVE, v, ["gl.dim Gamma Unknown at the bound"])
    return _report(name, inst, PASS, v)


CHECKS = {
    "prop-a-y-gamma": check_prop_A_and_Y_implies_Gamma,
    "prop-gamma-artinian-a": check_prop_Gamma_and_Artinian_implies_A,
    "twoofthree": check_two_of_three,
    "cartan": check_cartan_reduction,
}


def run_with_escalation(check, inst):
    """Run ``check``; an INCONCLUSIVE result is retried once at twice the bound."""
    rep = check(inst)
    if rep.status != INCONCLUSIVE:
        return rep
    again = check(inst.with_bound(2 * inst.bound))
    again.notes.append(f"escalated from bound {inst.bound} to {2 * inst.bound}")
    return again


def unit_cartan_det_ok(inst):
    """``|cd(A)| = 1`` whenever gl.dim A is finite; None when not applicable."""
    an = inst.analysis
    if not isinstance(an.gldim_A, Finite):
        return None
    return abs(cartan_det(inst.algebra)) == 1

