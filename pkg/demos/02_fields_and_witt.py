"""Finite fields, trace towers, additive polynomials and W2 Witt vectors.

The exact-arithmetic substrate: dense coefficient tuples over F_p with
canonical lexicographic enumeration, deterministic moduli, and the length-2
Witt ring whose carry polynomial gamma drives everything in characteristic 2.
"""

from gausslab import (
    AdditivePolynomial,
    WittVector2,
    absolute_trace_int,
    additive_kernel,
    extension,
    gamma_carry,
    make_field,
    relative_trace,
    witt_to_zp2,
    witt_trace,
    witt_verschiebung,
)

F4 = make_field(2, 2)
F16 = make_field(2, 4)
w = F4.gen()
print("F_4 = F_2[w]/(w^2 + w + 1); modulus found deterministically:", F4.modulus)
print("Tr_{F4/F2}(w) =", absolute_trace_int(w), "  Tr(1) = 1 + 1 =",
      absolute_trace_int(F4.one()))

# Relative traces compose down towers: F16 -> F4 -> F2 equals F16 -> F2.
x = F16.gen()
t_two_steps = relative_trace(relative_trace(x, 2), 1, source=2)
assert t_two_steps == relative_trace(x, 1)
print("tower identity Tr_{16->2} = Tr_{4->2} o Tr_{16->4}: checked on a generator")

# Additive polynomials sum Frobenius powers; their kernels are F_p-spaces.
lang = AdditivePolynomial(F4, {1: F4.one(), 0: F4.one()})  # X^2 + X
print("kernel of X^2 + X in F_4:", sorted(k.as_int() for k in additive_kernel(lang, 1)))

# The Witt ring W2: addition carries via gamma(x,z) = (x^p + z^p - (x+z)^p)/p.
print("gamma carry, p = 2:", gamma_carry(2), "  p = 3:", gamma_carry(3))
one = WittVector2(make_field(2, 1), 1, 0)
print("W2(F_2): (1,0) + (1,0) =", one + one, " -> maps to", witt_to_zp2(one + one),
      "in Z/4    (1 + 1 = 2)")

# The Witt trace sums Frobenius iterates and lands in W2(F_p) = Z/p^2; the
# Verschiebung direction reduces to the usual trace, doubled.
for a in F4.elements():
    assert witt_trace(witt_verschiebung(a)) == (2 * absolute_trace_int(a)) % 4
print("witt_trace(V(a)) = 2 Tr(a) in Z/4 for every a in F_4")

# p * (x, y) = V(F(x, y)): multiplication by p is the shifted Frobenius.
sample = WittVector2(F4, w, F4.one())
print("2 * (w, 1) in W2(F_4) =", sample + sample, " = (0, w^2)")
