import pytest

from homalg.harness.checks import (
    CHECKS,
    FAIL,
    INCONCLUSIVE,
    NOT_APPLICABLE,
    PASS,
    PASS_ADVISORY,
    PASS_VACUOUS,
    check_cartan_reduction,
    check_prop_A_and_Y_implies_Gamma,
    check_prop_Gamma_and_Artinian_implies_A,
    check_two_of_three,
    k_and,
    k_implies,
    run_with_escalation,
    unit_cartan_det_ok,
)
from homalg.harness.families import (
    FamilyError,
    linear,
    nakayama,
    parse_family,
    random_presentation,
)
from homalg.harness.instance import Instance, instance_from_text, support_subsets
from homalg.harness.sweep import (
    COUNTEREXAMPLE,
    FILTERED_CYCLIC,
    SUPPORTING,
    SUPPORTING_KOSZUL,
    conjecture_sweep,
)
from homalg.quiver import compile_presentation
from homalg.verdict import Finite, InfiniteCertified, Unknown


def inst(pres, support, bound=20):
    return Instance(compile_presentation(pres), support, bound, pres)


def test_kleene_logic():
    assert k_and(True, None) is None
    assert k_and(False, None) is False
    assert k_implies(None, True) is True
    assert k_implies(True, None) is None
    assert k_implies(None, False) is None


def test_prop_a_y_gamma_examples(semisimple2):
    assert check_prop_A_and_Y_implies_Gamma(inst(linear(3, (1,)), ["2"])).status == PASS
    assert check_prop_A_and_Y_implies_Gamma(Instance(semisimple2, ["1"], 10)).status == PASS
    assert check_prop_A_and_Y_implies_Gamma(inst(nakayama(3, 2), ["1"])).status == PASS_VACUOUS


def test_prop_gamma_artinian_a_examples(semisimple2):
    cyc = inst(nakayama(3, 2), ["1"])
    assert isinstance(cyc.analysis.gldim_Gamma, Finite)
    assert cyc.analysis.Y.report.certified_infinite
    assert check_prop_Gamma_and_Artinian_implies_A(cyc).status == PASS_VACUOUS
    assert check_prop_Gamma_and_Artinian_implies_A(inst(linear(2), ["1"])).status == PASS
    assert check_prop_Gamma_and_Artinian_implies_A(Instance(semisimple2, ["2"], 10)).status == PASS


def test_two_of_three_examples(semisimple2):
    for n in range(1, 6):
        pres = linear(n, tuple(range(1, n - 1)))
        alg = compile_presentation(pres)
        for sub in support_subsets(alg):
            rep = check_two_of_three(Instance(alg, sub, 20, pres))
            assert rep.status in (PASS, PASS_VACUOUS), (pres.name, sub, rep.lines())
    cyc = check_two_of_three(inst(nakayama(3, 2), ["1"]))
    assert cyc.status == PASS
    assert cyc.verdicts["conditions"] == "('F', 'T', 'F')"
    assert check_two_of_three(Instance(semisimple2, ["1", "2"], 10)).status == PASS


def test_two_of_three_needs_linearity(kx3):
    rep = check_two_of_three(Instance(kx3, ["1"], 10))
    assert rep.status == NOT_APPLICABLE


def test_cartan_check_examples(semisimple2):
    full = inst(linear(3, (1,)), ["1", "2", "3"])
    rep = check_cartan_reduction(full)
    assert rep.status == PASS and rep.verdicts["det_CA"] == "1"
    rep = check_cartan_reduction(inst(linear(3, (1,)), ["2"]))
    assert rep.status == PASS
    assert rep.verdicts["det_CA"] == rep.verdicts["det_Gamma"] == "1"
    assert check_cartan_reduction(Instance(semisimple2, ["1"], 10)).status == PASS
    assert check_cartan_reduction(inst(nakayama(3, 2), ["1"])).status == PASS_VACUOUS


def test_unknown_is_never_promoted(cyc3):
    # at a tiny bound nothing is certified, so nothing may pass substantively
    small = Instance(cyc3, ["1"], 2)
    assert small.analysis.gldim_A == Unknown(2)
    # Gamma is certified finite, so this implication holds outright
    assert check_prop_A_and_Y_implies_Gamma(small).status == PASS
    assert check_cartan_reduction(small).status == INCONCLUSIVE
    assert run_with_escalation(check_cartan_reduction, small).status == PASS_VACUOUS


def test_escalation_notes_bound(cyc3):
    rep = run_with_escalation(check_cartan_reduction, Instance(cyc3, ["1"], 2))
    assert rep.status == PASS_VACUOUS
    assert rep.notes == ["escalated from bound 2 to 4"]


def test_advisory_label_is_distinct():
    assert PASS_ADVISORY not in (PASS, PASS_VACUOUS)
    assert set(CHECKS) == {"prop-a-y-gamma", "prop-gamma-artinian-a", "twoofthree", "cartan"}


def test_unit_cartan_det(cyc3, a3rad2):
    assert unit_cartan_det_ok(Instance(a3rad2, ["1"], 10)) is True
    assert unit_cartan_det_ok(Instance(cyc3, ["1"], 10)) is None


def test_families():
    assert compile_presentation(nakayama(3, 2)).graded_dims() == [3, 3]
    assert compile_presentation(linear(2)).dim == 3
    p1 = random_presentation(4, 6, 3, seed=17)
    p2 = random_presentation(4, 6, 3, seed=17)
    assert p1.to_text() == p2.to_text()
    assert p1.name == "random(4,6,3,seed=17)"
    assert random_presentation(4, 6, 3, seed=18).to_text() != p1.to_text()


def test_family_spec_parsing():
    specs = parse_family("nakayama(3,2); linear(4,{1,2}); random(4,6,3,seed=17,count=2)")
    assert [s.kind for s in specs] == ["nakayama", "linear", "random"]
    assert specs[1].params["mask"] == (1, 2)
    assert specs[2].params == {"v": 4, "a": 6, "r": 3, "seed": 17, "count": 2}
    with pytest.raises(FamilyError):
        parse_family("cube(3)")
    with pytest.raises(FamilyError):
        nakayama(3, 1)


def test_instance_serialization_round_trip(cyc3):
    a = inst(nakayama(3, 2), ["1"])
    b = instance_from_text(a.serialize())
    assert (b.key, b.support, b.bound) == (a.key, a.support, a.bound)
    assert b.algebra.serialize() == a.algebra.serialize()
    assert check_two_of_three(b).status == check_two_of_three(a).status
    c = Instance(cyc3.__class__(cyc3.field, cyc3.labels, cyc3.tags, cyc3.table, name="cyc"), ["2"], 7)
    d = instance_from_text(c.serialize())
    assert d.key == c.key and d.algebra.table == c.algebra.table


def test_sweep_koszul_family_supports():
    rep = conjecture_sweep("linear(4)", bound=20)
    counts = rep.counts()
    assert counts[COUNTEREXAMPLE] == 0
    assert set(counts) == {SUPPORTING}
    assert len(rep.lines) == 4 * 15


def test_sweep_separates_cyclic_koszul():
    rep = conjecture_sweep("nakayama(3,2)", bound=12)
    by_key = {line.key: line for line in rep.lines}
    full = by_key["nakayama(3,2)|e={1,2,3}"]
    assert not full.acyclic
    # gl.dim A is infinite here, so the hypotheses filter it
    assert full.verdict == FILTERED_CYCLIC
    assert "summary:" in rep.text()
    assert SUPPORTING_KOSZUL in rep.text()


def test_sweep_independent_of_jobs():
    spec = "linear(3); nakayama(2,2); random(3,4,2,seed=5,count=2)"
    a = conjecture_sweep(spec, bound=10, jobs=1)
    b = conjecture_sweep(spec, bound=10, jobs=2)
    assert a.text() == b.text()


def test_verdict_types_in_sweep_lines():
    rep = conjecture_sweep("linear(2)", bound=10)
    for line in rep.lines:
        assert line.text().split()[1] == "Finite(1)"
    assert isinstance(inst(nakayama(3, 2), ["1"]).analysis.gldim_A, InfiniteCertified)
    assert FAIL not in [line.verdict for line in rep.lines]
