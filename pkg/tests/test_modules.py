import pytest

from homalg.algebra import AlgebraError, corner
from homalg.modules import (
    corner_restriction,
    direct_sum,
    module_iso,
    projective_module,
    regular_module,
    semisimple_module,
    simple_module,
)
from homalg.resolution import projective_cover, syzygy


def test_simple_modules(cyc3):
    S1 = simple_module(cyc3, "1")
    assert S1.dim == 1
    S1.check()
    for b in cyc3.positive_by_u[0]:
        assert S1.act({0: 1}, b) == {}
    assert semisimple_module(cyc3, ["1", "2"]).dim == 2


def test_unknown_label(cyc3):
    with pytest.raises(AlgebraError):
        simple_module(cyc3, "7")


def test_projective_modules(cyc3, a2, semisimple2):
    P1 = projective_module(cyc3, "1")
    assert P1.dim == 2
    assert list(P1.tags) == [(0, 0), (1, 1)]
    P1.check()
    assert projective_module(a2, "2").dim == 1
    assert module_iso(projective_module(semisimple2, "1"), simple_module(semisimple2, "1")).status == "yes"


def test_shift_convention(cyc3):
    P = projective_module(cyc3, "1", shift=2)
    assert list(P.tags) == [(0, 2), (1, 3)]
    assert projective_module(cyc3, "1").shift(-2).tags == P.tags


def test_projective_cover_examples(cyc3):
    summands, _, _ = projective_cover(projective_module(cyc3, "1"))
    assert list(summands) == [(0, 0)]
    K, _ = syzygy(simple_module(cyc3, "1"))
    assert list(K.tags) == [(1, 1)]
    assert module_iso(K, simple_module(cyc3, "2").shift(-1)).status == "yes"
    S = simple_module(cyc3, "1")
    summands, _, _ = projective_cover(direct_sum(S, S))
    assert list(summands) == [(0, 0), (0, 0)]


def test_module_iso_examples(cyc3, a2):
    M = projective_module(cyc3, "2")
    assert module_iso(M, M).status == "yes"
    assert module_iso(simple_module(cyc3, "1"), simple_module(cyc3, "2")).status == "no"
    with pytest.raises(AlgebraError):
        module_iso(simple_module(cyc3, "1"), simple_module(a2, "1"))


def test_module_iso_may_be_unknown_but_never_wrong(a2):
    # same graded dimensions, not isomorphic
    M = direct_sum(simple_module(a2, "1"), simple_module(a2, "2").shift(-1))
    N = projective_module(a2, "1")
    assert module_iso(M, N).status in ("unknown", "no")


def test_corner_restriction_examples(cyc3):
    g = corner(cyc3, ["2", "3"])
    assert corner_restriction(simple_module(cyc3, "1"), ["2", "3"], g).dim == 0
    P2 = corner_restriction(projective_module(cyc3, "2"), ["2", "3"], g)
    assert module_iso(P2, projective_module(g, "2")).status == "yes"
    full = corner(cyc3, cyc3.labels)
    A = regular_module(cyc3)
    R = corner_restriction(A, cyc3.labels, full)
    assert R.tags == A.tags


def test_restriction_dimension(a3rad2):
    keep = ["1", "3"]
    g = corner(a3rad2, keep)
    A = regular_module(a3rad2)
    R = corner_restriction(A, keep, g)
    R.check()
    assert R.dim == sum(1 for s, _ in A.tags if a3rad2.labels[s] in keep)
