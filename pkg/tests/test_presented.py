import random

import pytest

from pdcore.groebner import FreeSubmodule, Ideal, height
from pdcore.inputs import CORPUS
from pdcore.kernel import PolyRing, PrimeField
from pdcore.presented import (NotGradedError, PresentedModule, colon_UE, fitt0_of_quotient,
                              minors, multiply_ideal, quotient_by_element, submodule_from_combos)

from conftest import corpus_module

F = PrimeField()
R = PolyRing(F, ["x", "y"])
m = Ideal.maximal(R)


def coker(rows):
    return PresentedModule(R, rows)


COKER_XY = coker([["x"], ["y"]])
M2 = coker([["y", "0"], ["-x", "y"], ["0", "-x"]])
MM = coker([["y", "0"], ["-x", "0"], ["0", "y"], ["0", "-x"]])
FREE2 = PresentedModule.free(R, 2)


class TestFitting:
    def test_column_vector(self):
        assert COKER_XY.fitting_ideal(0).is_zero()
        assert COKER_XY.fitting_ideal(1) == m
        assert COKER_XY.fitting_ideal(2).is_unit()

    @pytest.mark.parametrize("E", [COKER_XY, M2, MM, FREE2])
    def test_unit_beyond_n(self, E):
        for i in range(E.n, E.n + 3):
            assert E.fitting_ideal(i).is_unit()

    def test_squares_module(self):
        assert M2.fitting_ideal(2) == m
        assert M2.fitting_ideal(1) == m ** 2
        assert M2.fitting_ideal(0).is_zero()

    def test_minor_count(self):
        mat = M2.matrix
        assert len(minors(mat, 2)) == 3
        assert len(minors(mat, 1)) == 4


class TestRankAndPd:
    def test_ranks(self):
        assert COKER_XY.rank() == 1
        assert FREE2.rank() == 2
        assert MM.rank() == 2
        assert MM.fitting_ideal(1).is_zero() and MM.fitting_ideal(2) == m ** 2

    def test_rank_cross_check(self, corpus_name):
        E = corpus_module(corpus_name)
        assert E.rank() == E.rank_from_image()

    def test_proj_dim(self):
        assert FREE2.proj_dim() == 0
        assert COKER_XY.proj_dim() == 1
        assert M2.proj_dim() == 1

    def test_redundant_presentation_is_minimalized(self):
        # adding a unit relation that kills a spare generator leaves pd = 1
        E = coker([["y", "0", "0"], ["-x", "y", "0"], ["0", "-x", "0"], ["0", "0", "1"]])
        assert E.proj_dim() == 1 and E.rank() == 1

    def test_proj_dim_two(self):
        S = PolyRing(F, ["x", "y"])
        # coker of a 1x2 row: R/(x, y), projective dimension 2
        E = PresentedModule(S, [["x", "y"]])
        assert E.proj_dim() == 2


class TestGs:
    def test_column_vector(self):
        assert COKER_XY.check_Gs(2) == (True, None)

    def test_free(self):
        for s in range(1, 5):
            assert FREE2.check_Gs(s)[0]

    def test_m_plus_m(self):
        assert height(MM.fitting_ideal(2)) == 2 and height(MM.fitting_ideal(3)) == 2
        assert MM.check_Gs(2)[0]

    def test_failure_has_witness(self):
        S = PolyRing(F, ["x", "y", "z"])
        E = PresentedModule(S, [["x", "0"], ["y", "x"], ["0", "y"]])
        assert E.check_Gs(2) == (True, None)
        holds, witness = E.check_Gs(3)
        assert not holds and witness == {"index": 2, "height": 2, "required": 3}


class TestSubmodules:
    def test_identity_combos(self):
        assert submodule_from_combos(M2, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == M2.whole()

    def test_coordinate_selection(self):
        U = submodule_from_combos(M2, [[1, 0, 0], [0, 0, 1]])
        assert (R.zero, R.one, R.zero) not in U
        assert (R.one, R.zero, R.zero) in U

    def test_zero_combos(self):
        assert submodule_from_combos(M2, [[0, 0, 0]]) == M2.zero_submodule()

    def test_colon_whole(self):
        assert colon_UE(M2.whole()).is_unit()

    def test_colon_two_squares(self):
        U = submodule_from_combos(M2, [[1, 0, 0], [0, 0, 1]])
        assert colon_UE(U) == m
        assert fitt0_of_quotient(U) == m

    def test_colon_generic_in_m_plus_m(self):
        rng = random.Random(5)
        coeffs = [[F.random(rng) for _ in range(4)] for _ in range(3)]
        K = colon_UE(submodule_from_combos(MM, coeffs))
        assert height(K) == 2 and K.issubset(m)

    def test_multiply(self):
        assert multiply_ideal(M2, Ideal.unit(R)) == M2.whole()
        assert multiply_ideal(M2, Ideal.zero(R)) == M2.zero_submodule()
        # m * E has preimage m R^3 + im(phi): compare with m^3 through (x^2, xy, y^2)
        mE = multiply_ideal(M2, m)
        assert mE.preimage == FreeSubmodule(R, 3, [tuple(R.parse(a) if i == j else R.zero
                                                          for j in range(3))
                                                    for i in range(3) for a in ("x", "y")]
                                            + M2.columns())
        images = [R.parse(s) for s in ("x^2", "x*y", "y^2")]
        pushed = Ideal(R, [sum((a * b for a, b in zip(v, images)), R.zero)
                           for v in mE.preimage.gens])
        assert pushed == m ** 3


class TestQuotient:
    def test_free(self):
        Q = quotient_by_element(FREE2, [1, 0])
        assert Q.n == 1 and Q.rank() == 1 and Q.proj_dim() == 0

    def test_rank_drops(self):
        rng = random.Random(11)
        x = [F.random(rng, nonzero=True) for _ in range(4)]
        assert quotient_by_element(MM, x).rank() == 1


class TestGrading:
    def test_degrees(self):
        gen, rel = M2.grading()
        assert [r - gen[0] for r in rel] == [1, 1]

    def test_not_graded(self):
        E = coker([["x+y^2"], ["y"]])
        with pytest.raises(NotGradedError):
            E.grading()


def _random_change(E, rng):
    """A random presentation of the same module: row and column operations
    compatible with the grading, a redundant relation, or a split trivial
    summand."""
    ring = E.ring
    gen, rel = E.grading()
    mat = [list(r) for r in E.matrix]
    n, mcols = len(mat), len(mat[0]) if mat else 0
    kind = rng.randrange(5)
    forms = lambda deg: sum((ring.monomial(e).scale(F.random(rng))
                             for e in _monos(ring.nvars, deg)), ring.zero)
    if kind == 0 and n >= 2:
        i, j = rng.sample(range(n), 2)
        if gen[j] >= gen[i]:
            # basis change of R^n; keeps the cokernel up to isomorphism
            h = forms(gen[j] - gen[i])
            mat[i] = [a + h * b for a, b in zip(mat[i], mat[j])]
    elif kind == 1 and mcols >= 2:
        a, b = rng.sample(range(mcols), 2)
        if rel[a] >= rel[b]:
            h = forms(rel[a] - rel[b])
            for r in mat:
                r[a] = r[a] + h * r[b]
    elif kind == 2 and mcols >= 1:
        picks = rng.sample(range(mcols), min(2, mcols))
        top = max(rel[c] for c in picks)
        new = [ring.zero] * n
        for c in picks:
            h = forms(top - rel[c])
            new = [x + h * r[c] for x, r in zip(new, mat)]
        for x, r in zip(new, mat):
            r.append(x)
    elif kind == 3:
        for r in mat:
            r.append(ring.zero)
        mat.append([ring.zero] * (mcols) + [ring.one])
        # a row operation hides the split summand
        if n >= 1:
            k = rng.randrange(n)
            mat[k] = [a + b.scale(F.random(rng)) for a, b in zip(mat[k], mat[-1])]
    else:
        perm = list(range(n))
        rng.shuffle(perm)
        mat = [[x.scale(c) for x in mat[p]] for p, c in
               zip(perm, [F.random(rng, nonzero=True) for _ in range(n)])]
    return PresentedModule(ring, mat, n=len(mat))


def _monos(nvars, deg):
    from oracles import monomials_of_degree
    return monomials_of_degree(nvars, deg)


@pytest.mark.parametrize("name", CORPUS)
def test_fitting_invariance_under_50_presentation_changes(name):
    E = corpus_module(name)
    target = [E.fitting_ideal(i) for i in range(E.n + 1)]
    rng = random.Random(name)
    for trial in range(50):
        G = E
        for _ in range(rng.randint(1, 3)):
            G = _random_change(G, rng)
        for i in range(E.n + 1):
            assert G.fitting_ideal(i) == target[i], (name, trial, i)
