"""Heisenberg groups, Stone-von-Neumann representations, deck transformations."""

import pytest

from gausslab.charsum import DiagMonomial, HalfSquare, QuadDatum, WittLinear
from gausslab.errors import NonInjectiveCharacter, NotAlternating, NotPerfect
from gausslab.exactalg import zeta
from gausslab.fields import make_field
from gausslab.heisenberg import (
    AlternatingPairing,
    build_group,
    check_faithful,
    darboux,
    heisenberg_from_datum,
    stone_von_neumann,
)
from gausslab.quadform import FiniteAbelianGroup

F2 = make_field(2, 1)
F3 = make_field(3, 1)


def standard_pairing(p):
    g = FiniteAbelianGroup([p, p])
    table = [[0] * (p * p) for _ in range(p * p)]
    for i in range(p * p):
        for j in range(p * p):
            a, b = g.decode(i)
            c, d = g.decode(j)
            table[i][j] = (a * d - b * c) % p
    return AlternatingPairing(g, p, table)


def test_darboux_standard_z2():
    e = standard_pairing(2)
    basis = darboux(e)
    assert len(basis.pairs) == 1
    x, y, eps = basis.pairs[0]
    assert e.value(x, y) == eps != 0


def test_darboux_z4_squared():
    g = FiniteAbelianGroup([4, 4])
    table = [[0] * 16 for _ in range(16)]
    for i in range(16):
        for j in range(16):
            a, b = g.decode(i)
            c, d = g.decode(j)
            table[i][j] = (a * d - b * c) % 4
    e = AlternatingPairing(g, 4, table)
    basis = darboux(e)
    assert basis.ranks(g) == [4]


def test_no_perfect_pairing_on_z2():
    g = FiniteAbelianGroup([2])
    with pytest.raises(NotPerfect):
        AlternatingPairing(g, 2, [[0, 0], [0, 0]])


def test_not_alternating_rejected():
    g = FiniteAbelianGroup([2, 2])
    table = [[1] * 4 for _ in range(4)]
    with pytest.raises(NotAlternating):
        AlternatingPairing(g, 2, table)


def test_build_group_order8_is_dihedral():
    h = build_group(standard_pairing(2))
    assert h.order == 8
    orders = {}
    for g in h.elements():
        orders[h.element_order(g)] = orders.get(h.element_order(g), 0) + 1
    # D_4 signature: exactly 2 elements of order 4 (Q_8 would have 6)
    assert orders == {1: 1, 2: 5, 4: 2}
    assert sorted(h.center()) == [(0, 0), (1, 0)]


def test_build_group_order27_exponent3():
    h = build_group(standard_pairing(3))
    assert h.order == 27
    assert all(h.element_order(g) in (1, 3) for g in h.elements())


def test_commutator_reproduces_pairing():
    e = standard_pairing(3)
    h = build_group(e)
    for x in e.group.elements():
        for y in e.group.elements():
            assert h.commutator((0, x), (0, y)) == (e.value(x, y), 0)


def test_svn_order8():
    h = build_group(standard_pairing(2))
    rep = stone_von_neumann(h, 1)
    assert rep.dim == 2
    assert check_faithful(rep)
    # character vanishes off the center and is +-2 on it
    for g in h.elements():
        ch = rep.character(g)
        if g[1] == 0:
            assert ch == 2 * zeta(2, g[0])
        else:
            assert ch.is_zero()


def test_svn_order27():
    h = build_group(standard_pairing(3))
    rep = stone_von_neumann(h, 1)
    assert rep.dim == 3
    assert check_faithful(rep)


def test_svn_both_primitive_characters_give_equal_characters_z2():
    # any injective central character yields the unique class of dim sqrt|K|
    h = build_group(standard_pairing(3))
    rep1 = stone_von_neumann(h, 1)
    rep2 = stone_von_neumann(h, 2)
    assert rep1.dim == rep2.dim == 3
    assert check_faithful(rep1) and check_faithful(rep2)
    # character values differ by the central character but norms agree
    from gausslab.exactalg import abs_square

    for g in h.elements():
        assert abs_square(rep1.character(g)) == abs_square(rep2.character(g))


def test_svn_class_independent_of_darboux_choice():
    # swapping the roles of a dual pair is another maximal-isotropic choice;
    # the induced representations must have identical characters (the class
    # is determined by the character)
    from gausslab.heisenberg import DarbouxBasis, HeisenbergGroup, SvNRepresentation

    for p in (2, 3):
        e = standard_pairing(p)
        basis1 = darboux(e)
        x, y, eps = basis1.pairs[0]
        basis2 = DarbouxBasis([(y, x, e.value(y, x))])
        h1 = HeisenbergGroup(e, basis1)
        h2 = HeisenbergGroup(e, basis2)
        h1.verify()
        h2.verify()
        rep1 = SvNRepresentation(h1, 1)
        rep2 = SvNRepresentation(h2, 1)
        rep1.verify()
        rep2.verify()
        # the two groups share the same element set (a, k); compare pointwise.
        # different cocycles give different but cohomologous groups, so match
        # through the character on commutator-center structure: characters of
        # the same abstract class agree on center and vanish off it here
        for g in h1.elements():
            c1 = rep1.character(g)
            c2 = rep2.character(g)
            if g[1] == 0:
                assert c1 == c2
            else:
                assert c1.is_zero() and c2.is_zero()


def test_svn_rejects_non_injective_character():
    g = FiniteAbelianGroup([4, 4])
    table = [[0] * 16 for _ in range(16)]
    for i in range(16):
        for j in range(16):
            a, b = g.decode(i)
            c, d = g.decode(j)
            table[i][j] = (a * d - b * c) % 4
    h = build_group(AlternatingPairing(g, 4, table))
    with pytest.raises(NonInjectiveCharacter):
        stone_von_neumann(h, 2)  # zeta_4^2 = -1 is not primitive


def test_trivial_k():
    g = FiniteAbelianGroup([])
    e = AlternatingPairing(g, 4, [[0]])
    h = build_group(e)
    assert h.order == 4
    rep = stone_von_neumann(h, 1)
    assert rep.dim == 1 and check_faithful(rep)


@pytest.mark.parametrize("field,p", [(F2, 2), (F3, 3)])
def test_heisenberg_from_datum_xp_plus_1(field, p):
    datum = QuadDatum(field, 1, [DiagMonomial(0, 1, field.one())])
    dh = heisenberg_from_datum(datum)
    assert dh.kernel.size == p * p
    assert dh.group.order == p**3
    rep = stone_von_neumann(dh.group, 1)
    assert rep.dim == p
    assert check_faithful(rep)


def test_heisenberg_from_nondegenerate_datum_is_central():
    datum = QuadDatum(F3, 1, [HalfSquare(0, F3.one())])
    dh = heisenberg_from_datum(datum)
    assert dh.group.order == 3  # K trivial, H = A


def test_heisenberg_from_datum_rejects_witt_terms():
    datum = QuadDatum(F2, 1, [WittLinear(0, F2.one())])
    with pytest.raises(NotImplementedError):
        heisenberg_from_datum(datum)


def test_vdgv_datum_deck_group():
    # psi(Tr(x^3)) over F_2: |K| = 4, H of order 8, validated against deck maps
    datum = QuadDatum(F2, 1, [DiagMonomial(0, 1, F2.one())])
    dh = heisenberg_from_datum(datum)
    assert dh.kernel.splitting_degree == 2
    assert dh.pairing.group.order == 4
    # the derived pairing is perfect and alternating by construction
    assert build_group(dh.pairing).order == 8
