"""Ideal arithmetic over F_32003: bases, colons, saturation, dimension."""

from pdcore import Ideal, PolyRing, PrimeField
from pdcore.groebner import colon_ideal, height, intersect, krull_dim, saturate, syzygies

R = PolyRing(PrimeField(), ["x", "y", "z"])

# A twisted cubic written by its 2x2 minors.
I = Ideal(R, ["x*z - y^2", "x*y - z^2", "x^2 - y*z"])
print("reduced basis:", I.groebner())
print("dim R/I =", krull_dim(I), " height =", height(I))

# Colon and saturation peel off the irrelevant component of an ideal.
J = I * Ideal.maximal(R)
print("I * m == I ?", J == I)
print("saturating I * m by x recovers I ?", saturate(J, R.parse("x")) == I)
print("(I*m) : m == I ?", colon_ideal(J, Ideal.maximal(R)) == I)

# Relations among the three quadrics.
S = syzygies(I)
print("first syzygies:", S.groebner())

print("(x) meet (y) =", intersect(Ideal(R, ["x"]), Ideal(R, ["y"])))
