"""Rees algebra of the module m^2 over k[x, y] and its reductions."""

from pdcore import analytic_spread, build_rees, is_reduction, load_corpus, reduction_number
from pdcore.presented import submodule_from_combos

E = load_corpus("m2")
print(E, "rank", E.rank(), "proj dim", E.proj_dim())
print("Fitting ideals:", [E.fitting_ideal(i) for i in range(E.n + 1)])

RP = build_rees(E, seed=1)
print("embedding into R^e:", [[str(a) for a in row] for row in RP.embedding])
print("defining ideal of the Rees algebra:", RP.rees_ideal)
print("special fiber:", RP.fiber_ideal(), " analytic spread", analytic_spread(RP))

# (x^2, y^2) is a reduction of m^2 with reduction number 1; (x^2, xy) is not.
for rows in ([[1, 0, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 0]]):
    U = submodule_from_combos(E, rows)
    print(rows, "reduction:", is_reduction(RP, U), " r =", reduction_number(RP, U, 4))

# A non-integrally-closed ideal needs two steps.
E4 = load_corpus("x4_x3y_xy3_y4")
RP4 = build_rees(E4)
U = submodule_from_combos(E4, [[1, 0, 0, 0], [0, 0, 0, 1]])
print("(x^4, y^4) inside (x^4,x^3y,xy^3,y^4): r =", reduction_number(RP4, U, 4))
