import random

import pytest
from hypothesis import given, settings, strategies as st

from pdcore import groebner as gb
from pdcore.groebner import (FreeSubmodule, Ideal, colon_ideal, colon_into_ring, eliminate,
                             height, intersect, krull_dim, normal_form, saturate, syzygies,
                             INFINITE_HEIGHT)
from pdcore.kernel import MonomialOrder, PolyRing, PrimeField

from oracles import dim_by_hilbert_growth, eliminated_piece_dim

F = PrimeField()
R = PolyRing(F, ["x", "y"])


def I(*gens, ring=R):
    return Ideal(ring, gens)


@pytest.fixture(autouse=True)
def check_every_basis(monkeypatch):
    monkeypatch.setattr(gb, "CHECK_GROEBNER", True)


class TestBasis:
    def test_duplicate_generator(self):
        assert [str(g) for g in I("x", "x").groebner()] == ["x"]

    def test_hidden_cube(self):
        J = I("x^2+y^2", "x*y")
        assert "y^3" in J
        assert R.parse("y^3") in [g for g in J.groebner()]

    def test_module_basis_leading_terms(self):
        M = FreeSubmodule(R, 2, [("x", "0"), ("y", "0"), ("0", "1")])
        lead = sorted(M.leading_monomials())
        assert lead == sorted([(0, 1, 0), (0, 0, 1), (1, 0, 0)])

    def test_checks_ran(self):
        before = gb.checked_bases
        I("x^3-y", "x*y^2-1").groebner()
        assert gb.checked_bases > before


class TestNormalForm:
    def test_member(self):
        assert normal_form(R.parse("x^2"), I("x")).is_zero()

    def test_cube(self):
        assert normal_form(R.parse("y^3"), I("x^2+y^2", "x*y")).is_zero()

    def test_square_survives(self):
        nf = normal_form(R.parse("y^2"), I("x^2+y^2", "x*y"))
        assert not nf.is_zero() and nf.degree() == 2


class TestSyzygies:
    def test_koszul(self):
        S = syzygies(I("x", "y"))
        assert S == FreeSubmodule(R, 2, [("y", "-x")])

    def test_three_squares(self):
        S = syzygies(I("x^2", "x*y", "y^2"))
        assert S == FreeSubmodule(R, 3, [("y", "-x", "0"), ("0", "y", "-x")])

    def test_nonzerodivisor(self):
        assert syzygies(I("x^2+y")).is_zero()


class TestEliminate:
    T = PolyRing(F, ["t", "x", "y"], MonomialOrder("elimination", 1))
    T2 = PolyRing(F, ["t", "x"], MonomialOrder("elimination", 1))

    def test_substitution(self):
        J = eliminate(I("t-x^2", "t-y", ring=self.T), ["x", "y"])
        assert J == Ideal(J.ring, ["x^2-y"])

    def test_already_free(self):
        J = eliminate(I("x", ring=self.T2), ["x"])
        assert J == Ideal(J.ring, ["x"])

    def test_inverted_variable(self):
        assert eliminate(I("t*x-1", ring=self.T2), ["x"]).is_zero()

    def test_requires_elimination_order(self):
        G = PolyRing(F, ["t", "x"])
        with pytest.raises(ValueError):
            eliminate(I("t-x", ring=G), ["x"])


class TestSaturation:
    def test_principal(self):
        assert saturate(I("x*y"), R.parse("y")) == I("x")

    def test_embedded_component(self):
        # (x^2, xy) : x = (x, y) and (x, y) : x = R, so the saturation is R
        J = I("x^2", "x*y")
        assert gb.module_quotient(J, R.parse("x")) == I("x", "y")
        assert saturate(J, R.parse("x")).is_unit()

    def test_nonzerodivisor(self):
        assert saturate(I("x"), R.parse("y")) == I("x")

    def test_module_saturation(self):
        M = FreeSubmodule(R, 2, [("x*y", "0"), ("0", "x")])
        assert saturate(M, R.parse("y")) == FreeSubmodule(R, 2, [("x", "0"), ("0", "x")])


class TestColon:
    def test_squares(self):
        assert colon_ideal(I("x^2", "y^2"), I("x^2", "x*y", "y^2")) == I("x", "y")

    def test_by_ring(self):
        J = I("x^2", "y^3")
        assert colon_ideal(J, Ideal.unit(R)) == J

    def test_by_itself(self):
        J = I("x^2", "y^3")
        assert colon_ideal(J, J).is_unit()

    def test_into_ring(self):
        N = FreeSubmodule(R, 2, [("x", "0"), ("0", "x"), ("y", "0")])
        M = FreeSubmodule.free(R, 2)
        assert colon_into_ring(N, M) == I("x")


class TestIntersect:
    def test_coprime(self):
        assert intersect(I("x"), I("y")) == I("x*y")

    def test_mixed(self):
        assert intersect(I("x^2", "x*y"), I("y")) == I("x*y")

    def test_idempotent(self):
        J = I("x^2+y^2", "x*y")
        assert intersect(J, J) == J

    def test_modules(self):
        A = FreeSubmodule(R, 2, [("x", "0"), ("0", "1")])
        B = FreeSubmodule(R, 2, [("y", "0"), ("0", "x")])
        assert intersect(A, B) == FreeSubmodule(R, 2, [("x*y", "0"), ("0", "x")])


class TestDimension:
    def test_irrelevant(self):
        assert krull_dim(I("x", "y")) == 0 and height(I("x", "y")) == 2

    def test_artinian(self):
        assert krull_dim(I("x^2+y^2", "x*y")) == 0 and height(I("x^2+y^2", "x*y")) == 2

    def test_zero(self):
        assert krull_dim(Ideal.zero(R)) == 2 and height(Ideal.zero(R)) == 0

    def test_unit(self):
        assert krull_dim(Ideal.unit(R)) == -1 and height(Ideal.unit(R)) == INFINITE_HEIGHT

    def test_hypersurface(self):
        S = PolyRing(F, ["x", "y", "z"])
        assert krull_dim(Ideal(S, ["x*y-z^2"])) == 2


monomial_ideal = st.integers(1, 4).flatmap(
    lambda d: st.tuples(st.just(d), st.lists(
        st.tuples(*[st.integers(0, 3)] * d), min_size=1, max_size=4)))


def test_dimension_matches_hilbert_growth_on_100_monomial_ideals():
    rng = random.Random(2024)
    for _ in range(100):
        d = rng.randint(1, 4)
        gens = [tuple(rng.randint(0, 3) for _ in range(d)) for _ in range(rng.randint(1, 4))]
        S = PolyRing(F, [f"v{i}" for i in range(d)])
        J = Ideal(S, [S.monomial(g) for g in gens])
        assert krull_dim(J) == dim_by_hilbert_growth(d, gens), gens


@given(monomial_ideal)
def test_dimension_property(data):
    d, gens = data
    S = PolyRing(F, [f"v{i}" for i in range(d)])
    J = Ideal(S, [S.monomial(g) for g in gens])
    assert krull_dim(J) == dim_by_hilbert_growth(d, gens)
    assert height(J) == (INFINITE_HEIGHT if krull_dim(J) < 0 else d - krull_dim(J))


E3 = PolyRing(F, ["t", "x", "y"], MonomialOrder("elimination", 1))
forms = st.builds(
    lambda deg, cs: E3.from_terms(
        [(m, c) for m, c in zip([m for m in _monos(3, deg)], cs) if c]),
    st.integers(1, 2), st.lists(st.integers(-3, 3), min_size=10, max_size=10))


def _monos(n, deg):
    from oracles import monomials_of_degree
    return monomials_of_degree(n, deg)


@given(st.lists(forms, min_size=1, max_size=3))
def test_elimination_against_macaulay_matrix(gens):
    J = Ideal(E3, gens)
    K = eliminate(J, ["x", "y"])
    for g in K.groebner():
        assert g.map_variables(E3, [1, 2]) in J
    for deg in range(1, 5):
        mine = eliminated_piece_dim([g.map_variables(E3, [1, 2]) for g in K.groebner()], 3, 1, deg)
        oracle = eliminated_piece_dim(list(J.gens), 3, 1, deg)
        assert mine == oracle


vec = st.tuples(st.sampled_from(["0", "x", "y", "x+y", "x^2", "x*y-y^2", "3*y^2"]),
                st.sampled_from(["0", "1", "x", "y^2", "x*y", "2*x-y"]))


@given(st.lists(vec, min_size=1, max_size=4), st.lists(vec, min_size=1, max_size=4))
def test_module_lattice_laws(a, b):
    A, B = FreeSubmodule(R, 2, a), FreeSubmodule(R, 2, b)
    M = intersect(A, B)
    assert M.issubset(A) and M.issubset(B)
    assert A.issubset(A + B) and B.issubset(A + B)
    for v in A.gens:
        assert A.normal_form(v) == (R.zero, R.zero)


@given(st.lists(st.sampled_from(["x^2", "x*y", "y^3", "x^2-y^2", "x*y^2+y^3", "x+y"]),
                min_size=1, max_size=3))
def test_reduced_basis_is_canonical(gens):
    J = Ideal(R, gens)
    K = Ideal(R, list(reversed(gens)) + [g * R.parse("x") for g in J.gens])
    assert [str(g) for g in J.groebner()] == [str(g) for g in K.groebner()]
    for g in J.groebner():
        assert g.leading_coeff() == 1


sympy = pytest.importorskip("sympy")
R3 = PolyRing(F, ["x", "y", "z"])
small_polys = st.lists(
    st.tuples(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)),
              st.integers(-5, 5)), min_size=1, max_size=3).map(R3.from_terms)


@settings(max_examples=30)
@given(st.lists(small_polys, min_size=1, max_size=3))
def test_reduced_basis_matches_sympy(gens):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    x, y, z = sympy.symbols("x y z")
    ref = sympy.groebner([sympy.sympify(str(g).replace("^", "**")) for g in gens],
                         x, y, z, order="grevlex", modulus=32003)
    theirs = sorted(str(R3.parse(str(p.as_expr()).replace("**", "^")).monic()) for p in ref.exprs)
    ours = sorted(str(g) for g in Ideal(R3, gens).groebner())
    assert ours == theirs
