import functools

import pytest
from hypothesis import given, settings, strategies as st

from pdcore.core import (EQUIVALENCE_VIOLATION, OUT_OF_THEOREM_SCOPE, THEOREM_CONSISTENT,
                         SamplingError, core_formula, core_sampled, derived_seed,
                         fitting_of_submodule, general_element_lab, freeness_criterion_check,
                         membership_witness, sample_minimal_reduction, verify_corollary_linear,
                         verify_integrally_closed, verify_theorem)
from pdcore.groebner import Ideal
from pdcore.presented import multiply_ideal
from pdcore.rees import is_reduction

from conftest import corpus_module, corpus_rees


def m(name):
    return Ideal.maximal(corpus_module(name).ring)


@functools.lru_cache(maxsize=None)
def report(name, seed=1):
    return verify_theorem(corpus_module(name), corpus_rees(name), seed=seed)


class TestSampling:
    def test_free_has_only_itself(self):
        E = corpus_module("free2")
        s = sample_minimal_reduction(E, corpus_rees("free2"), 7)
        assert len(s.coeffs) == 2 and s.submodule.is_whole() and s.r_value == 0

    @pytest.mark.parametrize("seed", range(1, 6))
    def test_m2_reduction_number_one(self, seed):
        s = sample_minimal_reduction(corpus_module("m2"), corpus_rees("m2"), seed)
        assert s.r_value == 1 and len(s.coeffs) == 2

    @pytest.mark.parametrize("seed", range(1, 4))
    def test_x4_reduction_number_two(self, seed):
        s = sample_minimal_reduction(corpus_module("x4_x3y_xy3_y4"),
                                     corpus_rees("x4_x3y_xy3_y4"), seed)
        assert s.r_value == 2

    def test_same_seed_same_sample(self):
        E, RP = corpus_module("m_plus_m"), corpus_rees("m_plus_m")
        a = sample_minimal_reduction(E, RP, derived_seed(3, 2))
        b = sample_minimal_reduction(E, RP, derived_seed(3, 2))
        assert a.coeffs == b.coeffs and a.seed == b.seed

    def test_exhaustion(self):
        # asking for fewer generators than the analytic spread never gives a reduction
        E, RP = corpus_module("m2"), corpus_rees("m2")
        with pytest.raises(SamplingError):
            sample_minimal_reduction(E, RP, 1, ell=1, max_retries=3)

    def test_derived_seeds_distinct(self):
        seeds = {derived_seed(s, k) for s in range(1, 20) for k in range(30)}
        assert len(seeds) == 19 * 30


@settings(max_examples=10)
@given(st.integers(0, 10**6))
def test_sampled_reductions_of_m2(seed):
    E, RP = corpus_module("m2"), corpus_rees("m2")
    s = sample_minimal_reduction(E, RP, seed)
    assert is_reduction(RP, s.submodule)
    assert s.colon == E.fitting_ideal(2)


class TestCore:
    def test_free(self):
        E, RP = corpus_module("free2"), corpus_rees("free2")
        assert core_sampled(E, RP).is_whole()
        assert core_formula(E, 2).is_whole()

    def test_m2(self):
        E, RP = corpus_module("m2"), corpus_rees("m2")
        cube = multiply_ideal(E, m("m2"))
        assert core_sampled(E, RP) == cube
        assert core_formula(E, 2) == cube
        img = RP.image_of(cube)
        g = RP.embedding[0][0].degree()
        assert Ideal(E.ring, [v[0] for v in img.gens]) == m("m2") ** (g + 1)

    def test_m_plus_m(self):
        E, RP = corpus_module("m_plus_m"), corpus_rees("m_plus_m")
        mE = multiply_ideal(E, m("m_plus_m"))
        assert E.fitting_ideal(3) == m("m_plus_m")
        assert core_sampled(E, RP) == mE == core_formula(E, 3)

    def test_window_stops_early(self):
        E, RP = corpus_module("m2"), corpus_rees("m2")
        drawn = []
        core_sampled(E, RP, num_samples=25, window=2, samples=drawn)
        assert len(drawn) < 25


class TestTheorem:
    def test_m2_all_true(self):
        rep = report("m2")
        assert rep.verdict == THEOREM_CONSISTENT and all(rep.flags.values())
        assert all(rep.checks.values())

    def test_x4_all_false(self):
        rep = report("x4_x3y_xy3_y4")
        assert rep.verdict == THEOREM_CONSISTENT
        assert not any(rep.flags.values())
        assert all(s.r_value == 2 for s in rep.samples)
        E = corpus_module("x4_x3y_xy3_y4")
        # sampled core sits strictly inside Fitt_2 E with an explicit witness
        assert rep.core_sampled.issubset(rep.core_formula)
        v = membership_witness(rep.core_formula, rep.core_sampled)
        assert v is not None and v in rep.core_formula.preimage
        assert v not in rep.core_sampled.preimage
        assert rep.witness["vector"] == v
        assert rep.core_formula == multiply_ideal(E, E.fitting_ideal(2))

    def test_free_out_of_scope(self):
        rep = report("free2")
        assert rep.verdict == OUT_OF_THEOREM_SCOPE
        assert not rep.hypotheses["l_at_least_e_plus_1"]

    @pytest.mark.parametrize("name", ["m_plus_m", "m_plus_m2", "coker_xy", "linear_d3"])
    def test_flags_never_mixed(self, name):
        rep = report(name)
        assert rep.verdict != EQUIVALENCE_VIOLATION
        assert len(set(rep.flags.values())) == 1

    def test_colons_inside_fitting(self):
        for name in ("m2", "x4_x3y_xy3_y4", "m_plus_m2"):
            assert report(name).checks["colons_inside_fitt_l"]


class TestCorollaries:
    def test_linear_m2(self):
        rep = verify_corollary_linear(corpus_module("m2"), corpus_rees("m2"))
        assert rep.status == "PASS" and rep.exponent == 1

    def test_linear_m_plus_m(self):
        rep = verify_corollary_linear(corpus_module("m_plus_m"), corpus_rees("m_plus_m"))
        assert rep.status == "PASS" and rep.exponent == 1

    def test_linear_type(self):
        rep = verify_corollary_linear(corpus_module("coker_xy"), corpus_rees("coker_xy"))
        assert rep.status == "LINEAR_TYPE"
        rep = verify_corollary_linear(corpus_module("linear_d3"), corpus_rees("linear_d3"))
        assert rep.status == "LINEAR_TYPE"

    def test_nonlinear_rejected(self):
        with pytest.raises(ValueError):
            verify_corollary_linear(corpus_module("x4_x3y_xy3_y4"), corpus_rees("x4_x3y_xy3_y4"))

    @pytest.mark.parametrize("name", ["m_plus_m2", "m2", "m_plus_m"])
    def test_integrally_closed(self, name):
        rep = verify_integrally_closed(corpus_module(name), corpus_rees(name))
        assert rep.status == "PASS", rep.checks

    def test_two_formulas_agree_on_m_plus_m(self):
        E = corpus_module("m_plus_m")
        assert multiply_ideal(E, E.fitting_ideal(3)) == multiply_ideal(E, m("m_plus_m"))


class TestLab:
    @pytest.mark.parametrize("name", ["m_plus_m", "m_plus_m2"])
    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_general_element(self, name, seed):
        E, RP = corpus_module(name), corpus_rees(name)
        s = sample_minimal_reduction(E, RP, derived_seed(seed, 0))
        lab = general_element_lab(E, RP, s, seed)
        assert lab.passed, lab.checks
        assert lab.data["rank_bar"] == 1 and lab.data["ell_bar"] == 2
        assert lab.data["r_bar"] <= lab.data["r"]

    def test_freeness_criterion(self):
        E, RP = corpus_module("m_plus_m2"), corpus_rees("m_plus_m2")
        s = sample_minimal_reduction(E, RP, 4)
        assert len(s.coeffs) == 3
        assert fitting_of_submodule(s.submodule, 2).issubset(s.colon)
        assert freeness_criterion_check(s, 3)

    def test_rank_one_rejected(self):
        E, RP = corpus_module("m2"), corpus_rees("m2")
        s = sample_minimal_reduction(E, RP, 1)
        with pytest.raises(ValueError):
            general_element_lab(E, RP, s, 1)
