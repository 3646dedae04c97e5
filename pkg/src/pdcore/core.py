"""Minimal reductions, the core of E two ways, and the theorem checks.

``core_sampled`` intersects seeded random minimal reductions until the
intersection stops moving; ``core_formula`` is Fitt_l(E) * E.  On inputs
where the reduction number is at most l - e the two must coincide.
"""

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .groebner import Ideal, height, module_quotient, syzygies_of_vectors
from .presented import (PresentedModule, colon_UE, fitt0_of_quotient, multiply_ideal,
                        project_coeffs, quotient_by_element, submodule_from_combos)
from .rees import analytic_spread, build_rees, is_reduction, reduction_number

THEOREM_CONSISTENT = "THEOREM_CONSISTENT"
EQUIVALENCE_VIOLATION = "EQUIVALENCE_VIOLATION"
OUT_OF_THEOREM_SCOPE = "OUT_OF_THEOREM_SCOPE"
FLAG_NAMES = ("a", "b", "c", "d", "e", "f")


class SamplingError(RuntimeError):
    """Could not draw a minimal reduction within the retry budget."""


def derived_seed(master, k):
    """Seed of the k-th sample; retries chain upward from it."""
    return master * 1_000_003 + k * 1009


def default_r_max(ell, e):
    return ell - e + 4


@dataclass
class ReductionSample:
    coeffs: list
    submodule: object
    r_value: object        # int, or None when no r <= r_max works
    colon: Ideal
    seed: int


def sample_minimal_reduction(E, RP, seed, ell=None, r_max=None, max_retries=50):
    """Draw l x n uniform field coefficients until they span a minimal reduction."""
    if ell is None:
        ell = analytic_spread(RP)
    if r_max is None:
        r_max = default_r_max(ell, E.rank())
    field = E.ring.field
    for attempt in range(max_retries):
        s = seed + attempt
        rng = random.Random(s)
        coeffs = [[field.random(rng) for _ in range(E.n)] for _ in range(ell)]
        U = submodule_from_combos(E, coeffs)
        if not is_reduction(RP, U):
            continue
        if ell > 1 and any(is_reduction(RP, submodule_from_combos(E, list(rows)))
                           for rows in combinations(U.coeffs, ell - 1)):
            continue
        r = reduction_number(RP, U, r_max)
        return ReductionSample(U.coeffs, U, r, colon_UE(U), s)
    raise SamplingError(f"no minimal reduction after {max_retries} draws from seed {seed}")


def core_sampled(E, RP, num_samples=25, window=5, seed=1, ell=None, r_max=None, samples=None):
    """Intersection of sampled minimal reductions.

    Stops once the intersection is unchanged for ``window`` consecutive
    samples or after ``num_samples`` draws.  Drawn samples are appended
    to ``samples`` when a list is given.
    """
    if ell is None:
        ell = analytic_spread(RP)
    current = None
    steady = 0
    for k in range(num_samples):
        s = sample_minimal_reduction(E, RP, derived_seed(seed, k), ell=ell, r_max=r_max)
        if samples is not None:
            samples.append(s)
        if current is None:
            current = s.submodule
            continue
        nxt = current.intersect(s.submodule)
        if nxt == current:
            steady += 1
            if steady >= window:
                break
        else:
            steady = 0
        current = nxt
    return current


def core_formula(E, ell):
    """Fitt_l(E) * E."""
    return multiply_ideal(E, E.fitting_ideal(ell))


def membership_witness(A, B):
    """A generator of A's preimage that is not in B, or None if A <= B."""
    for v in A.preimage.gens:
        if v not in B.preimage:
            return v
    return None


def colon_times(sample, target):
    """(U : E) * target for a sample."""
    return target.scaled(sample.colon)


@dataclass
class CoreReport:
    invariants: dict
    hypotheses: dict
    samples: list
    core_sampled: object
    core_formula: object
    flags: dict
    verdict: str
    notes: list = dc_field(default_factory=list)
    witness: object = None
    checks: dict = dc_field(default_factory=dict)


def module_invariants(E, RP):
    ell = analytic_spread(RP)
    e = E.rank()
    gs, gs_witness = E.check_Gs(max(ell - e + 1, 1))
    return {
        "d": E.ring.nvars,
        "n": E.n,
        "e": e,
        "ell": ell,
        "proj_dim": E.proj_dim(),
        "G": {"s": max(ell - e + 1, 1), "holds": gs, "witness": gs_witness},
        "free_in_codim_1": E.free_in_codim_one(),
    }


def theorem_hypotheses(inv):
    hyp = {
        "proj_dim_1": inv["proj_dim"] == 1,
        "G_l_minus_e_plus_1": inv["G"]["holds"],
        "torsionfree_in_codim_1": inv["free_in_codim_1"],
        "l_at_least_e_plus_1": inv["ell"] >= inv["e"] + 1,
    }
    return hyp


def verify_theorem(E, RP, num_samples=25, window=5, seed=1, r_max=None):
    """Evaluate the six equivalent conditions on sampled minimal reductions U.

    a: (U:E) E lies in the core for some U;  b: (U:E) U = (U:E) E = core
    for every U;  c: core = Fitt_l(E) E;  d: U:E independent of U;
    e: U:E = Fitt_l(E);  f: some U has reduction number <= l - e.
    """
    inv = module_invariants(E, RP)
    ell, e = inv["ell"], inv["e"]
    if r_max is None:
        r_max = default_r_max(ell, e)
    hyp = theorem_hypotheses(inv)
    samples = []
    core_s = core_sampled(E, RP, num_samples, window, seed, ell=ell, r_max=r_max, samples=samples)
    core_f = core_formula(E, ell)
    fitt = E.fitting_ideal(ell)
    whole = E.whole()

    flags = {
        "a": any(colon_times(s, whole).issubset(core_s) for s in samples),
        "b": all(colon_times(s, s.submodule) == colon_times(s, whole) == core_s for s in samples),
        "c": core_s == core_f,
        "d": all(s.colon == samples[0].colon for s in samples),
        "e": all(s.colon == fitt for s in samples),
        "f": any(s.r_value is not None and s.r_value <= ell - e for s in samples),
    }
    checks = {
        "colon_equals_fitt0_of_quotient": all(s.colon == fitt0_of_quotient(s.submodule)
                                               for s in samples),
        "colons_inside_fitt_l": all(s.colon.issubset(fitt) for s in samples),
    }
    notes = []
    if not all(hyp.values()):
        verdict = OUT_OF_THEOREM_SCOPE
        notes.append("hypotheses fail: " + ", ".join(k for k, v in hyp.items() if not v))
    elif len(set(flags.values())) == 1:
        verdict = THEOREM_CONSISTENT
    else:
        verdict = EQUIVALENCE_VIOLATION
    if ell == E.n:
        notes.append("LINEAR_TYPE: no proper reductions")
    if not flags["f"]:
        rs = [s.r_value for s in samples]
        notes.append(f"LIKELY_VIOLATION of (f): sampled reduction numbers {rs} exceed l - e = {ell - e}")
    witness = None
    if not flags["c"]:
        v = membership_witness(core_f, core_s)
        side = "formula_not_in_sampled"
        if v is None:
            v = membership_witness(core_s, core_f)
            side = "sampled_not_in_formula"
        witness = {"side": side, "vector": v}
    return CoreReport(inv, hyp, samples, core_s, core_f, flags, verdict, notes, witness, checks)


@dataclass
class CorollaryReport:
    name: str
    status: str            # PASS, FAIL, LINEAR_TYPE or NOT_APPLICABLE
    checks: dict
    exponent: object = None
    notes: list = dc_field(default_factory=list)


def verify_corollary_linear(E, RP, num_samples=25, window=5, seed=1, r_max=None):
    """core(E) = m^(n-e-d+1) E for linear presentations satisfying G_d."""
    if not E.is_linear():
        raise ValueError("presentation has nonlinear entries")
    d, n, e = E.ring.nvars, E.n, E.rank()
    if d < 2:
        raise ValueError("needs at least two variables")
    gd, _ = E.check_Gs(d)
    ell = analytic_spread(RP)
    checks = {"G_d": gd}
    samples = []
    core_s = core_sampled(E, RP, num_samples, window, seed, ell=ell, r_max=r_max, samples=samples)
    if n <= d + e - 1:
        checks["core_sampled_is_E"] = core_s.is_whole()
        checks["ell_equals_n"] = ell == n
        status = "LINEAR_TYPE" if all(checks.values()) else "FAIL"
        return CorollaryReport("linear_presentation", status, checks, None,
                               ["n <= d + e - 1: linear type, no proper reductions"])
    k = n - e - d + 1
    mk = Ideal.maximal(E.ring) ** k
    target = multiply_ideal(E, mk)
    checks["ell_equals_d_plus_e_minus_1"] = ell == d + e - 1
    checks["core_formula_equals_m_power_E"] = core_formula(E, ell) == target
    checks["core_sampled_equals_m_power_E"] = core_s == target
    checks["fitt0_quotient_is_m_power"] = all(fitt0_of_quotient(s.submodule) == mk for s in samples)
    status = "PASS" if all(checks.values()) else "FAIL"
    return CorollaryReport("linear_presentation", status, checks, k)


def verify_integrally_closed(E, RP, num_samples=25, window=5, seed=1, r_max=None):
    """core(E) = Fitt_{e+1}(E) E for integrally closed E over two variables."""
    if E.ring.nvars != 2:
        raise ValueError("needs a ring in two variables")
    e = E.rank()
    if E.proj_dim() == 0:
        raise ValueError("module is free")
    ell = analytic_spread(RP)
    samples = []
    core_s = core_sampled(E, RP, num_samples, window, seed, ell=ell, r_max=r_max, samples=samples)
    rs = [s.r_value for s in samples]
    checks = {
        "ell_equals_e_plus_1": ell == e + 1,
        "sampled_r_at_most_1": min((r for r in rs if r is not None), default=None) is not None
        and min(r for r in rs if r is not None) <= 1,
        "core_sampled_equals_fitt_e_plus_1_E": core_s == multiply_ideal(E, E.fitting_ideal(e + 1)),
    }
    status = "PASS" if all(checks.values()) else "FAIL"
    return CorollaryReport("integrally_closed", status, checks)


def row_basis(rows, field):
    """A basis of the row space of a field matrix (Gaussian elimination)."""
    basis = []
    pivots = []
    for row in rows:
        v = [field(c) for c in row]
        for (pc, b) in zip(pivots, basis):
            if v[pc]:
                f = v[pc]
                v = [field(a - f * bb) for a, bb in zip(v, b)]
        nz = next((j for j, c in enumerate(v) if c), None)
        if nz is None:
            continue
        inv = field.inv(v[nz])
        v = [field(a * inv) for a in v]
        for t, b in enumerate(basis):
            if b[nz]:
                f = b[nz]
                basis[t] = [field(a - f * vv) for a, vv in zip(b, v)]
        basis.append(v)
        pivots.append(nz)
    return basis


def fitting_of_submodule(U, index):
    """Fitt_index of U presented on its field-combination generators."""
    E = U.parent
    ring = E.ring
    ell = len(U.coeffs)
    gens = [tuple(ring.const(c) for c in row) for row in U.coeffs] + E.columns()
    syz = syzygies_of_vectors(ring, E.n, gens)
    relations = [v[:ell] for v in syz.groebner()]
    relations = [v for v in relations if any(not a.is_zero() for a in v)]
    matrix = [[rel[i] for rel in relations] for i in range(ell)]
    UP = PresentedModule(ring, matrix, n=ell)
    return UP.fitting_ideal(index)


def freeness_criterion_check(sample, ell):
    """Fitt_{l-1}(U) inside U : E, the criterion for U/(U:E)U being free over R/(U:E)."""
    return fitting_of_submodule(sample.submodule, ell - 1).issubset(sample.colon)


@dataclass
class LabReport:
    checks: dict
    data: dict

    @property
    def passed(self):
        return all(self.checks.values())


def general_element_lab(E, RP, sample, seed, r_max=None):
    """Factor out a general element x of a minimal reduction U and check
    how rank, analytic spread, reductions and reduction numbers move."""
    e = E.rank()
    if e < 2:
        raise ValueError("general element lab needs rank >= 2")
    field = E.ring.field
    ell = analytic_spread(RP)
    if r_max is None:
        r_max = default_r_max(ell, e)
    rng = random.Random(seed)
    lam = [field.random(rng, nonzero=True) for _ in sample.coeffs]
    x = [field(sum(l * row[j] for l, row in zip(lam, sample.coeffs))) for j in range(E.n)]
    checks = {}
    data = {"x": x}

    # Rx is free and x is regular on R(E)
    xvec = tuple(E.ring.const(c) for c in x)
    checks["Rx_free"] = module_quotient(E.image(), xvec).is_zero()
    tr = RP.tring
    d = E.ring.nvars
    xT = tr.zero
    for j, c in enumerate(x):
        if c:
            xT = xT + tr.var(d + j).scale(c)
    checks["x_regular_on_rees"] = module_quotient(RP.rees_ideal, xT) == RP.rees_ideal

    Ebar = quotient_by_element(E, x)
    checks["rank_drops_by_one"] = Ebar.rank() == e - 1
    RPbar = build_rees(Ebar, seed)
    ell_bar = analytic_spread(RPbar)
    checks["spread_drops_by_one"] = ell_bar == ell - 1
    rows = row_basis([project_coeffs(Ebar, row) for row in sample.coeffs], field)
    Ubar = submodule_from_combos(Ebar, rows)
    minimal = len(rows) == ell_bar and is_reduction(RPbar, Ubar) and not any(
        is_reduction(RPbar, submodule_from_combos(Ebar, list(sub)))
        for sub in combinations(rows, len(rows) - 1)) if rows else False
    checks["Ubar_minimal_reduction"] = minimal
    r_bar = reduction_number(RPbar, Ubar, r_max)
    data.update(rank_bar=Ebar.rank(), ell_bar=ell_bar, r_bar=r_bar, r=sample.r_value)
    checks["r_bar_at_most_r"] = (r_bar is not None and sample.r_value is not None
                                 and r_bar <= sample.r_value)
    colon_bar = colon_UE(Ubar)
    checks["colon_preserved"] = colon_bar == sample.colon
    s = ell - e + 1
    gs, _ = E.check_Gs(s)
    if s >= 2 and gs and height(sample.colon) >= s:
        checks["G_s_preserved"] = Ebar.check_Gs(s)[0]
    checks["fitting_freeness_criterion"] = freeness_criterion_check(sample, ell)
    data["s"] = s
    return LabReport(checks, data)


def analyze(E, seed=1, **kwargs):
    """Build the Rees presentation and run verify_theorem in one go."""
    RP = build_rees(E, seed)
    return RP, verify_theorem(E, RP, seed=seed, **kwargs)
