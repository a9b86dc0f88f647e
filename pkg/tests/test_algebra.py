import pytest

from homalg.algebra import AlgebraError, corner, opposite, zero_algebra
from homalg.harness.families import linear
from homalg.quiver import compile_presentation
from homalg.textformat import ParseError, load_algebra


def test_products_in_the_cycle(cyc3):
    e1 = cyc3.idempotent("1")
    assert e1 * e1 == e1
    a, b = cyc3.basis_element(3), cyc3.basis_element(4)
    assert cyc3.tags[3][:2] == (0, 1)
    assert (a * b).is_zero()
    assert e1 * a == a


def test_algebra_mismatch(cyc3, a2):
    with pytest.raises(AlgebraError):
        cyc3.one() * a2.one()


def test_unit_acts_as_identity(a3rad2):
    one = a3rad2.one()
    for x in range(a3rad2.dim):
        b = a3rad2.basis_element(x)
        assert one * b == b == b * one


def test_corner_examples(cyc3, a2):
    g = corner(cyc3, ["2", "3"])
    assert g.dim == 3 and g.labels == ("2", "3")
    assert [t for t in g.tags] == [(0, 0, 0), (1, 1, 0), (0, 1, 1)]
    assert g.table == a2.table
    assert corner(cyc3, cyc3.labels).serialize() == cyc3.serialize()
    assert corner(cyc3, []).dim == 0


def test_corner_agrees_with_parent_products():
    alg = compile_presentation(linear(4))
    keep = ["1", "3", "4"]
    g = corner(alg, keep)
    emb = g.embedding
    for (i, j), terms in g.table.items():
        parent = dict(alg.table.get((emb[i], emb[j]), ()))
        assert {emb[k]: c for k, c in terms} == parent
    idx = [alg.label_index(x) for x in keep]
    assert g.dim == sum(1 for u, v, _ in alg.tags if u in idx and v in idx)


def test_opposite_is_an_involution(cyc3):
    assert opposite(opposite(cyc3)).table == cyc3.table


def test_opposite_of_commutative_algebra():
    kx, _ = load_algebra("vertex 1\narrow x 1 1\nrelation x*x\n")
    assert opposite(kx).table == kx.table


def test_opposite_of_a2(a2):
    op = opposite(a2)
    a = op.basis_element(2)
    assert op.tags[2] == (1, 0, 1)
    assert a * op.idempotent("1") == a


def test_radical_is_an_ideal(a3rad2):
    for (i, j), terms in a3rad2.table.items():
        if a3rad2.tags[i][2] > 0 or a3rad2.tags[j][2] > 0:
            assert all(a3rad2.tags[k][2] > 0 for k, _ in terms)


def test_structure_format_round_trip(cyc3):
    text = cyc3.serialize()
    again, pres = load_algebra(text)
    assert pres is None
    assert again.serialize() == text


def test_zero_algebra_is_valid():
    z = zero_algebra()
    z.check()
    assert z.n == 0 and z.dim == 0


def test_bad_tags_rejected():
    with pytest.raises(ParseError, match="degree 0"):
        load_algebra("algebra\nfield Q\nlabels 1\nelem 0 1 1 0\nelem 1 1 1 0\n")
