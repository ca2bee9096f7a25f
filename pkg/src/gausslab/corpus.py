"""Bundled fixture descriptors: the standard battery of forms, character data,
curves, surfaces and pairings exercised by the `suite` subcommand and tests.

Every fixture is a plain JSON-serializable job descriptor; expectations are
exact (cyclotomic coefficients, integers).
"""

from .charsum import (
    ASLinear,
    CrossMonomial,
    DiagMonomial,
    HalfSquare,
    QuadDatum,
    WittLinear,
)
from .fields import AdditivePolynomial, make_field
from .quadform import FiniteAbelianGroup, QuadraticForm
from .varieties import CurveSpec, SurfaceSpec, random_curve_spec

F2 = make_field(2, 1)
F3 = make_field(3, 1)
F4 = make_field(2, 2)
F9 = make_field(3, 2)


def _exeasy_form():
    return QuadraticForm(FiniteAbelianGroup([2]), 4, [0, 1])


def _z3_form():
    return QuadraticForm(FiniteAbelianGroup([3]), 3, [0, 1, 1])


def _hyperbolic_form():
    # (-1)^{xy} on (Z/2)^2; index order (0,0),(1,0),(0,1),(1,1)
    return QuadraticForm(FiniteAbelianGroup([2, 2]), 2, [0, 0, 0, 1])


def _wittchar(field):
    return QuadDatum(field, 1, [WittLinear(0, field.one())])


def _halfsq(field, a=None):
    return QuadDatum(field, 1, [HalfSquare(0, a if a is not None else field.one())])


def _diag_datum(field, i=1, a=None):
    return QuadDatum(field, 1, [DiagMonomial(0, i, a if a is not None else field.one())])


def _frobenius_pairing(field, s):
    """<Fr_q(x) - x, y> with q = p^s, on d = 2 coordinates (n = 1)."""
    one = field.one()
    return QuadDatum(
        field,
        2,
        [CrossMonomial(0, 1, s, one), CrossMonomial(0, 1, 0, -one)],
    )


def _i_in_f9():
    """An element of F_9 with square -1 (for the rational-kernel x^4 datum)."""
    for x in F9.elements():
        if x * x == -F9.one() and x:
            return x
    raise AssertionError("F_9 contains a square root of -1")


def _vdgv_curve():
    # y^2 + y = x^3 over F_2 (f = Y^2 - Y, g1 = X, g2 = X^2, a = 0)
    return CurveSpec(
        F2,
        AdditivePolynomial(F2, {1: F2.one(), 0: F2.one()}),
        AdditivePolynomial(F2, {0: F2.one()}),
        AdditivePolynomial(F2, {1: F2.one()}),
        F2.zero(),
    )


def _f3_curve():
    # y^3 - y = x^2 over F_3
    return CurveSpec(
        F3,
        AdditivePolynomial(F3, {1: F3.one(), 0: -F3.one()}),
        AdditivePolynomial(F3, {0: F3.one()}),
        AdditivePolynomial(F3, {0: F3.one()}),
        F3.zero(),
    )


def _standard_pairing(p):
    g = FiniteAbelianGroup([p, p])
    table = [[0] * (p * p) for _ in range(p * p)]
    for i in range(p * p):
        for j in range(p * p):
            a, b = g.decode(i)
            c, d = g.decode(j)
            table[i][j] = (a * d - b * c) % p
    return {"moduli": [p, p], "a_modulus": p, "table": table}


def _gl1_matrices(field):
    return [[[list(u.coeffs), [0] * field.m], [[0] * field.m, list(u.inv().coeffs)]]
            for u in field.elements() if u]


def _unitary1_matrices(field):
    """Scalars u with u^{q0+1} = 1 where the base is F_{q0^2}."""
    q0sq = field.q
    q0 = 1
    while q0 * q0 != q0sq:
        q0 += 1
    return [[[list(u.coeffs)]] for u in field.elements() if u and u ** (q0 + 1) == field.one()]


def corpus():
    """All bundled fixtures, name -> job descriptor."""
    ih = _i_in_f9()
    jobs = {}

    jobs["exeasy-z2"] = {
        "command": "gauss-sum",
        "input": {"form": _exeasy_form().to_json()},
        "expect": {"tau_coeffs": [[1, 1], [1, 1]]},  # 1 + i in Q(zeta_4)
    }
    jobs["z3-form"] = {
        "command": "gauss-verify",
        "input": {"form": _z3_form().to_json()},
        "expect": {"abs_square": "3", "ratio_order": 2},
    }
    jobs["hyperbolic-z2z2"] = {
        "command": "gauss-verify",
        "input": {"form": _hyperbolic_form().to_json()},
        "expect": {"abs_square": "4", "ratio_order": 1},
    }
    jobs["exeasy-verify"] = {
        "command": "gauss-verify",
        "input": {"form": _exeasy_form().to_json()},
        "expect": {"abs_square": "2", "ratio_order": 4},
    }

    # quadratic character data: canonical diagonal-monomial fixtures
    jobs["diag-x3-f2-kernel"] = {
        "command": "kernel",
        "input": {"datum": _diag_datum(F2).to_json()},
        "expect": {"size": 4, "r": 1},
    }
    jobs["diag-x5-f2-kernel"] = {
        "command": "kernel",
        "input": {"datum": _diag_datum(F2, i=2).to_json()},
        "expect": {"size": 16, "r": 2},
    }
    jobs["diag-x4-f3-kernel"] = {
        "command": "kernel",
        "input": {"datum": _diag_datum(F3).to_json()},
        "expect": {"size": 9, "r": 1},
    }
    jobs["diag-x10-f3-kernel"] = {
        "command": "kernel",
        "input": {"datum": _diag_datum(F3, i=2).to_json()},
        "expect": {"size": 81, "r": 2},
    }
    jobs["diag-x3-f4-hd"] = {
        "command": "hasse-davenport",
        "input": {"datum": _diag_datum(F4).to_json(), "r": 1, "n_max": 3},
        "expect": {"ok": True, "tau": "-2"},
    }
    jobs["diag-x4-f9-hd"] = {
        "command": "hasse-davenport",
        "input": {"datum": _diag_datum(F9, a=ih).to_json(), "r": 1, "n_max": 3},
        "expect": {"ok": True},
    }
    jobs["wittchar-f2-hd"] = {
        "command": "hasse-davenport",
        "input": {"datum": _wittchar(F2).to_json(), "r": 0, "n_max": 3},
        "expect": {"ok": True},
    }
    jobs["wittchar-f4-hd"] = {
        "command": "hasse-davenport",
        "input": {"datum": _wittchar(F4).to_json(), "r": 0, "n_max": 3},
        "expect": {"ok": True},
    }
    jobs["halfsq-f3-hd"] = {
        "command": "hasse-davenport",
        "input": {"datum": _halfsq(F3).to_json(), "r": 0, "n_max": 3},
        "expect": {"ok": True},
    }
    jobs["frobpair-gl-q2-hd"] = {
        "command": "hasse-davenport",
        "input": {"datum": _frobenius_pairing(F2, 1).to_json(), "r": 1, "n_max": 3},
        "expect": {"ok": True, "tau": "2"},
    }
    jobs["frobpair-gl-q4-hd"] = {
        "command": "hasse-davenport",
        "input": {"datum": _frobenius_pairing(F4, 2).to_json(), "r": 2, "n_max": 3},
        "expect": {"ok": True, "tau": "4"},
    }
    jobs["clb-normalize-p2"] = {
        "command": "clb-normalize",
        "input": {"datum": _diag_datum(F2).to_json()},
        "expect": {"roundtrip": True},
    }
    jobs["clb-normalize-p3"] = {
        "command": "clb-normalize",
        "input": {"datum": QuadDatum(F3, 1, [HalfSquare(0, F3.one()),
                                             DiagMonomial(0, 1, F3.element([2]))]).to_json()},
        "expect": {"roundtrip": True},
    }
    jobs["clb-cocycle-i1-f4"] = {
        "command": "clb-cocycle",
        "input": {"field": F4.to_json(), "i": 1, "a": [1, 0], "n": 2},
        "expect": {"holds": True},
    }
    jobs["clb-cocycle-i2-f4"] = {
        "command": "clb-cocycle",
        "input": {"field": F4.to_json(), "i": 2, "a": [0, 1], "n": 2},
        "expect": {"holds": True},
    }
    jobs["unitary-inv-f4"] = {
        "command": "invariance",
        "input": {
            "datum": _diag_datum(F4).to_json(),
            "matrices": _unitary1_matrices(F4),
            "n": 2,
        },
        "expect": {"invariant": True},
    }
    jobs["gl1-inv-f2"] = {
        "command": "invariance",
        "input": {
            "datum": _frobenius_pairing(F2, 1).to_json(),
            "matrices": _gl1_matrices(F2),
            "n": 2,
        },
        "expect": {"invariant": True},
    }
    jobs["gl1-inv-f4"] = {
        "command": "invariance",
        "input": {
            "datum": _frobenius_pairing(F4, 2).to_json(),
            "matrices": _gl1_matrices(F4),
            "n": 1,
        },
        "expect": {"invariant": True},
    }

    # varieties
    jobs["vdgv-f2-zeta"] = {
        "command": "zeta",
        "input": {"curve": _vdgv_curve().to_json()},
        "expect": {"counts": ["2", "8"], "power_sums": ["0", "-4"],
                   "l_poly": [2, 0, 1], "m": 2},
    }
    jobs["curve-f3-zeta"] = {
        "command": "zeta",
        "input": {"curve": _f3_curve().to_json()},
        "expect": {"l_poly": [3, 0, 1], "m": 2},
    }
    jobs["curve-rand-f2"] = {
        "command": "zeta",
        "input": {"curve": random_curve_spec(F2, 2).to_json()},
        "expect": {"certified": True},
    }
    jobs["curve-rand-f4"] = {
        "command": "zeta",
        "input": {"curve": random_curve_spec(F4, 2).to_json()},
        "expect": {"certified": True},
    }
    jobs["surface-p2"] = {
        "command": "supersingular",
        "input": {"surface": SurfaceSpec(F2, {0: F2.one()}).to_json(), "n_max": 3},
        "expect": {"all_ok": True},
    }
    jobs["surface-p3"] = {
        "command": "supersingular",
        "input": {"surface": SurfaceSpec(F3, {0: F3.one()}).to_json(), "n_max": 3},
        "expect": {"all_ok": True},
    }
    jobs["endw2-f4"] = {
        "command": "endw2-verify",
        "input": {
            "field": F4.to_json(),
            "f": {"0": [0, 1], "1": [1, 0]},
            "r": {"0": [1, 0]},
            "n": 1,
        },
        "expect": {"additive": True, "mutated_additive": False},
    }

    # heisenberg
    jobs["heis-p2"] = {
        "command": "heisenberg",
        "input": {"pairing": _standard_pairing(2)},
        "expect": {"order": 8, "svn_dim": 2, "faithful": True},
    }
    jobs["heis-p3"] = {
        "command": "heisenberg",
        "input": {"pairing": _standard_pairing(3)},
        "expect": {"order": 27, "svn_dim": 3, "faithful": True},
    }
    jobs["heis-from-datum-p2"] = {
        "command": "heisenberg",
        "input": {"from_datum": _diag_datum(F2).to_json()},
        "expect": {"order": 8, "svn_dim": 2, "kernel_size": 4},
    }
    jobs["heis-from-datum-p3"] = {
        "command": "heisenberg",
        "input": {"from_datum": _diag_datum(F3).to_json()},
        "expect": {"order": 27, "svn_dim": 3, "kernel_size": 9},
    }
    return jobs


def catalog_data():
    """The named character-datum catalog used by property tests.

    Returns (name, datum, geometric r, galois_chain_expected) tuples.
    """
    ih = _i_in_f9()
    w = F4.gen()
    return [
        ("wittchar-f2", _wittchar(F2), 0, True),
        ("wittchar-f4", _wittchar(F4), 0, True),
        ("halfsq-f3", _halfsq(F3), 0, True),
        ("halfsq-f9", _halfsq(F9), 0, True),
        ("diag-x3-f4", _diag_datum(F4), 1, True),
        ("diag-x3-f4-omega", _diag_datum(F4, a=w), 1, False),
        ("diag-x4-f9", _diag_datum(F9, a=ih), 1, True),
        ("frobpair-gl-q2", _frobenius_pairing(F2, 1), 1, True),
        ("frobpair-gl-q4", _frobenius_pairing(F4, 2), 2, True),
        # multiplicative twist: |S_n| is preserved but the chain needs the
        # twisting character's preimage to be rational, which omega's is not
        ("aslin-twist-f4", QuadDatum(F4, 1, [DiagMonomial(0, 1, F4.one()),
                                             ASLinear(0, w)]), 1, False),
    ]
