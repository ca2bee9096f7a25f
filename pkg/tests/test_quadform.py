"""Quadratic forms on finite abelian groups and their Gauss sums."""

import pytest

from gausslab.errors import (
    CharacterNotInImage,
    NotElementaryTwoGroup,
    NotQuadratic,
)
from gausslab.exactalg import abs_square, is_root_of_unity, zeta
from gausslab.quadform import (
    FiniteAbelianGroup,
    QuadraticForm,
    char2_invariant,
    radical_descent,
    random_nondegenerate,
    recursive_gauss_eval,
)

Z2 = FiniteAbelianGroup([2])
Z3 = FiniteAbelianGroup([3])
Z4 = FiniteAbelianGroup([4])
Z22 = FiniteAbelianGroup([2, 2])

EXEASY = QuadraticForm(Z2, 4, [0, 1])          # Q(0)=1, Q(1)=i
Z3FORM = QuadraticForm(Z3, 3, [0, 1, 1])       # zeta_3^{x^2}
HYPERBOLIC = QuadraticForm(Z22, 2, [0, 0, 0, 1])  # (-1)^{xy}


def test_group_indexing():
    g = FiniteAbelianGroup([2, 4])
    assert g.order == 8 and g.exponent == 4
    for idx in g.elements():
        assert g.encode(g.decode(idx)) == idx
    assert g.add(g.encode((1, 3)), g.encode((1, 2))) == g.encode((0, 1))
    assert g.element_order(g.encode((0, 1))) == 4


def test_exeasy_is_nondegenerate_quadratic():
    assert EXEASY.is_quadratic()
    assert EXEASY.is_nondegenerate()
    assert EXEASY.pairing.value(1, 1) == -1  # B(1,1) = Q(0)Q(1)^{-2}


def test_exeasy_gauss_sum_is_one_plus_i():
    assert EXEASY.gauss_sum() == 1 + zeta(4, 1)


def test_character_is_quadratic_with_trivial_pairing():
    chi = QuadraticForm(Z4, 4, [0, 1, 2, 3])
    assert chi.is_quadratic()
    assert all(v == 0 for row in chi.pairing.table for v in row)
    assert not chi.is_nondegenerate()


def test_z4_zeta8_square_table():
    q8 = QuadraticForm(Z4, 8, [0, 1, 4, 1])  # zeta_8^{x^2}
    assert q8.is_quadratic()
    for x in range(4):
        for y in range(4):
            assert q8.pairing.table[x][y] == (2 * x * y) % 8


def test_not_quadratic_witness():
    bad = QuadraticForm(Z4, 8, [0, 1, 1, 1])
    assert not bad.is_quadratic()
    with pytest.raises(NotQuadratic) as err:
        bad.is_quadratic(raise_on_failure=True)
    assert len(err.value.witness) == 3


def test_z3_form():
    assert Z3FORM.is_quadratic() and Z3FORM.is_nondegenerate()
    tau = Z3FORM.gauss_sum()
    assert tau == 1 + 2 * zeta(3, 1)
    assert abs_square(tau) == 3
    assert Z3FORM.verify_gauss_sum_theorem() == 2  # tau^2/3 = -1


def test_trivial_group():
    t = QuadraticForm.trivial(FiniteAbelianGroup([]))
    assert t.gauss_sum() == 1


def test_trivial_form_is_degenerate():
    t = QuadraticForm(Z2, 1, [0, 0])
    assert t.is_quadratic()
    assert t.radical() == [0, 1]


def test_gauss_sum_direct_sum_multiplicativity():
    z6 = FiniteAbelianGroup([2, 3])
    vals = [0] * 6
    for idx in range(6):
        x2, x3 = z6.decode(idx)
        vals[idx] = (3 * [0, 1][x2] + 4 * [0, 1, 1][x3]) % 12
    q6 = QuadraticForm(z6, 12, vals)
    assert q6.is_quadratic() and q6.is_nondegenerate()
    tau = q6.gauss_sum()
    assert tau == EXEASY.gauss_sum().embed(12) * Z3FORM.gauss_sum().embed(12)
    assert abs_square(tau) == 6
    assert recursive_gauss_eval(q6) == tau


def test_verify_gauss_sum_theorem_exeasy():
    assert EXEASY.verify_gauss_sum_theorem() == 4  # (1+i)^2/2 = i


def test_recursive_oracle_matches_direct_sum():
    for form in (EXEASY, Z3FORM, HYPERBOLIC):
        assert recursive_gauss_eval(form) == form.gauss_sum()
    assert HYPERBOLIC.gauss_sum() == 2


def test_twist_identity_exeasy():
    # chi(1) = -1, i.e. exponent 2 in Q(zeta_4)
    a = EXEASY.twist_gauss_identity([0, 2])
    assert a == 1
    assert EXEASY.twist([0, 2]).gauss_sum() == 1 - zeta(4, 1)


def test_twist_trivial_character():
    a = EXEASY.twist_gauss_identity([0, 0])
    assert a == 0
    assert EXEASY.twist([0, 0]).gauss_sum() == EXEASY.gauss_sum()


def test_twist_identity_z3_both_sides():
    chi = [0, 1, 2]  # zeta_3^x
    a = Z3FORM.solve_character(chi)
    lhs = Z3FORM.twist(chi).gauss_sum()
    rhs = zeta(3, -Z3FORM.exponents[a] % 3) * Z3FORM.gauss_sum()
    assert lhs == rhs


def test_twist_identity_all_elements():
    for form in (EXEASY, Z3FORM, HYPERBOLIC):
        n = form.group.order
        for a in range(n):
            chi = form.character_of_element(a)
            twisted = form.twist(chi)
            assert twisted.gauss_sum() * form.value(a) == form.gauss_sum()


def test_character_not_in_image_when_degenerate():
    degenerate = QuadraticForm(Z2, 2, [0, 1])  # the character x -> (-1)^x
    with pytest.raises(CharacterNotInImage):
        degenerate.solve_character([0, 1])


def test_char2_invariant_examples():
    a, tau, qa = char2_invariant(EXEASY)
    assert a == (1,)
    assert tau * tau == qa * 2
    a, tau, qa = char2_invariant(HYPERBOLIC)
    assert a == (0, 0) and tau == 2 and qa == 1
    # exeasy + exeasy on (Z/2)^2: a = (1,1), tau^2 = -4
    z22 = FiniteAbelianGroup([2, 2])
    dsum = QuadraticForm(z22, 4, [0, 1, 1, 2])
    a, tau, qa = char2_invariant(dsum)
    assert a == (1, 1)
    assert tau * tau == -4
    assert qa == -1
    with pytest.raises(NotElementaryTwoGroup):
        char2_invariant(Z3FORM)


def test_killcl_proof_identity():
    # Q(mv) = Q(v)^m * prod_{i<m} B(iv, v), the induction behind the order
    # bound, on random forms
    for shape, seed in [((4, 2), 0), ((9,), 1), ((8,), 5)]:
        g = FiniteAbelianGroup(shape)
        form = random_nondegenerate(g, seed)
        n = form.value_order
        for v in g.elements():
            for m in range(1, g.element_order(v) + 1):
                expected = (m * form.exponents[v]
                            + sum(form.pairing.table[g.scalar(i, v)][v]
                                  for i in range(1, m))) % n
                assert form.exponents[g.scalar(m, v)] == expected


def test_diagonal_is_character_on_elementary_two_groups():
    # v -> B(v, v) is additive on (Z/2)^k (part 1 of the char-2 proposition)
    g = FiniteAbelianGroup([2, 2, 2])
    form = random_nondegenerate(g, 9)
    b = form.pairing.table
    n = form.value_order
    for u in g.elements():
        for v in g.elements():
            s = g.add(u, v)
            assert (b[s][s] - b[u][u] - b[v][v]) % n == 0


def test_killcl_value_orders():
    # every value's order divides exponent(M)^2
    for shape, seed in [((4, 4), 0), ((2, 8), 1), ((9,), 2)]:
        g = FiniteAbelianGroup(shape)
        form = random_nondegenerate(g, seed)
        assert form.exponents[0] == 0  # Q(0) = 1
        cap = g.exponent**2
        for e in form.exponents:
            val = zeta(form.value_order, e)
            order = is_root_of_unity(val)
            assert cap % order == 0


def test_random_nondegenerate_determinism_and_validity():
    g = FiniteAbelianGroup([2, 4, 4])
    f1 = random_nondegenerate(g, 17)
    f2 = random_nondegenerate(g, 17)
    assert f1.exponents == f2.exponents
    assert f1.is_quadratic() and f1.is_nondegenerate()


def test_random_on_z2_gives_plus_minus_i():
    seen = {random_nondegenerate(Z2, s).exponents[1] for s in range(10)}
    assert seen <= {1, 3} and seen


def test_random_trivial_group():
    f = random_nondegenerate(FiniteAbelianGroup([]), 5)
    assert f.gauss_sum() == 1


def test_radical_descent_trivial_on_radical():
    # Q(x) = i^{x^2 mod 4} on Z/4 degenerates with radical {0, 2}
    form = QuadraticForm(Z4, 4, [0, 1, 0, 1])
    assert form.is_quadratic()
    assert form.radical() == [0, 2]
    outcome = radical_descent(form)
    assert outcome[0] == "descends"
    assert outcome[1] == 2
    assert form.gauss_sum() == 2 * outcome[2]


def test_radical_descent_nontrivial_character_kills_sum():
    # character on Z/2: radical is everything, Q|radical nontrivial
    chi = QuadraticForm(Z2, 2, [0, 1])
    assert radical_descent(chi) == ("zero",)
    assert chi.gauss_sum().is_zero()


def test_serialization_round_trip():
    js = EXEASY.to_json()
    again = QuadraticForm.from_json(js)
    assert again.exponents == EXEASY.exponents
    assert again.group.moduli == (2,)
