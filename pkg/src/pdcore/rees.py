"""Rees algebras of torsionfree modules, analytic spread and reduction numbers.

R(E) is computed as the image of Sym(E) in Sym(R^e) = R[Y_1..Y_e] under a
seeded random embedding E -> R^e, i.e. as the kernel of
R[T_1..T_n] -> R[Y], T_j -> (image of generator j).  The kernel is also
obtained as Sym(E)'s ideal saturated by a nonzero element of Fitt_e(E),
and the two answers must agree.
"""

import random
from itertools import combinations_with_replacement

from .groebner import FreeSubmodule, Ideal, eliminate, krull_dim, saturate, syzygies_of_vectors
from .kernel import MonomialOrder, PolyRing


class EmbeddingError(RuntimeError):
    """No injective embedding E -> R^e was found (E torsion, or bad luck)."""


class ReesCrossCheckError(RuntimeError):
    """Elimination and saturation produced different Rees ideals."""


def _fresh_names(base, count, taken):
    prefix = base
    while any(f"{prefix}{i + 1}" in taken for i in range(count)):
        prefix = "_" + prefix
    return [f"{prefix}{i + 1}" for i in range(count)]


def _random_linear_form(ring, rng):
    field = ring.field
    f = ring.zero
    for x in ring.gens():
        f = f + x.scale(field.random(rng, nonzero=True))
    return f


def random_embedding(E, rng):
    """Rows of an e x n matrix over R killing im(phi), as random
    combinations of Hom(E, R) generators.

    On graded input each Hom generator is first lifted to a common degree
    by a random power of linear forms, so the embedding is homogeneous.
    """
    ring, field = E.ring, E.ring.field
    e = E.rank()
    hom = E.hom_generators()
    try:
        gen_deg, _ = E.grading()
    except ValueError:
        gen_deg = None
    shifts = None
    if gen_deg is not None:
        shifts = []
        for h in hom:
            j = next(j for j, x in enumerate(h) if not x.is_zero())
            shifts.append(h[j].degree() - gen_deg[j])
        top = max(shifts, default=0)
    rows = []
    for _ in range(e):
        row = [ring.zero] * E.n
        for t, h in enumerate(hom):
            c = ring.const(field.random(rng, nonzero=True))
            if shifts is not None and shifts[t] < top:
                c = c * _random_linear_form(ring, rng) ** (top - shifts[t])
            row = [a + c * b for a, b in zip(row, h)]
        rows.append(row)
    return rows


def embedding_is_injective(E, rows):
    """ker(R^n -> R^e) equals im(phi)."""
    e = len(rows)
    images = [tuple(rows[k][j] for k in range(e)) for j in range(E.n)]
    kernel = syzygies_of_vectors(E.ring, e, images)
    return kernel.issubset(E.image())


class ReesPresentation:
    """Defining ideal of R(E) in R[T_1..T_n] plus the embedding used to build it."""

    def __init__(self, module, embedding, rees_ideal, tring, seed):
        self.module = module
        self.embedding = embedding          # n rows: image of generator j in R^e
        self.rees_ideal = rees_ideal
        self.tring = tring                  # R[T]
        self.seed = seed
        self._pieces = {}
        self._products = {}
        self._fiber = None
        d = module.ring.nvars
        self.t_names = tring.var_names[d:]
        self.fiber_ring = PolyRing(tring.field, self.t_names)

    @property
    def rank(self):
        return len(self.embedding[0]) if self.embedding else 0

    def fiber_ideal(self):
        """Ideal of the special fiber R(E) (x) k inside k[T]."""
        if self._fiber is None:
            d = self.module.ring.nvars
            n = self.module.n
            imap = [None] * d + list(range(n))
            gens = []
            for g in self.rees_ideal.groebner():
                h = g.substitute_zero(range(d))
                if not h.is_zero():
                    gens.append(_drop_x(h, self.fiber_ring, d, imap))
            self._fiber = Ideal(self.fiber_ring, gens)
        return self._fiber

    def linear_form(self, coeffs):
        """sum_j c_j T_j in k[T]."""
        f = self.fiber_ring.zero
        for j, c in enumerate(coeffs):
            if c:
                f = f + self.fiber_ring.var(j).scale(c)
        return f

    # -- graded pieces -----------------------------------------------------
    def _sym_basis(self, r):
        e = self.rank
        return [a for a in _compositions(r, e)]

    def _product(self, ms):
        """Image of T^ms in Sym_|ms|(R^e) as {alpha: polynomial}."""
        hit = self._products.get(ms)
        if hit is not None:
            return hit
        ring = self.module.ring
        if not ms:
            out = {(0,) * self.rank: ring.one}
        else:
            out = _times_generator(self._product(ms[:-1]), self.embedding[ms[-1]])
        self._products[ms] = out
        return out

    def _to_vector(self, form, r):
        ring = self.module.ring
        basis = self._sym_basis(r)
        return tuple(form.get(a, ring.zero) for a in basis)

    def graded_piece(self, r):
        """R(E)_r as a submodule of Sym_r(R^e) = R^C(e+r-1, r)."""
        if r not in self._pieces:
            n = self.module.n
            vecs = [self._to_vector(self._product(ms), r)
                    for ms in combinations_with_replacement(range(n), r)]
            self._pieces[r] = FreeSubmodule(self.module.ring, len(self._sym_basis(r)), vecs)
        return self._pieces[r]

    def degree_one_image(self, vectors):
        """Images in R^e of vectors of R^n (elements of E by their coordinates)."""
        ring = self.module.ring
        e = self.rank
        out = []
        for v in vectors:
            img = [ring.zero] * e
            for j, a in enumerate(v):
                if a.is_zero():
                    continue
                img = [img[k] + a * self.embedding[j][k] for k in range(e)]
            out.append(tuple(img))
        return out

    def image_of(self, sub):
        """Image of a submodule of E inside R^e."""
        return FreeSubmodule(self.module.ring, self.rank,
                             self.degree_one_image(sub.preimage.gens))

    def times_piece(self, sub, r):
        """U * R(E)_r inside Sym_{r+1}(R^e) for a submodule U of E."""
        ring = self.module.ring
        n = self.module.n
        basis = self._sym_basis(r + 1)
        us = [u for u in self.degree_one_image(sub.preimage.gens)
              if any(not a.is_zero() for a in u)]
        vecs = []
        for ms in combinations_with_replacement(range(n), r):
            prod = self._product(ms)
            for u in us:
                form = _times_generator(prod, u)
                vecs.append(tuple(form.get(a, ring.zero) for a in basis))
        return FreeSubmodule(ring, len(basis), vecs)


def _compositions(r, e):
    """Exponent vectors of degree r in e variables, in a fixed order."""
    if e == 0:
        return [()] if r == 0 else []
    if e == 1:
        return [(r,)]
    out = []
    for a in range(r, -1, -1):
        for rest in _compositions(r - a, e - 1):
            out.append((a,) + rest)
    return out


def _times_generator(form, image):
    out = {}
    for alpha, f in form.items():
        for k, g in enumerate(image):
            if g.is_zero():
                continue
            beta = alpha[:k] + (alpha[k] + 1,) + alpha[k + 1:]
            h = f * g
            out[beta] = out[beta] + h if beta in out else h
    return {a: f for a, f in out.items() if not f.is_zero()}


def _drop_x(h, fiber_ring, d, imap):
    terms = {}
    for e, c in h.terms.items():
        terms[e[d:]] = c
    return fiber_ring.from_terms(terms.items())


def t_ring(E):
    names = _fresh_names("T", E.n, set(E.ring.var_names))
    return PolyRing(E.ring.field, list(E.ring.var_names) + names)


def symmetric_ideal(E, tring):
    """Ideal of Sym(E) in R[T]: the linear forms sum_j phi_jc T_j."""
    d = E.ring.nvars
    up = list(range(d))
    gens = []
    for c in range(E.m):
        f = tring.zero
        for j in range(E.n):
            x = E.matrix[j][c]
            if not x.is_zero():
                f = f + x.map_variables(tring, up) * tring.var(d + j)
        gens.append(f)
    return Ideal(tring, gens)


def rees_by_saturation(E, tring):
    """Sym(E) modulo R-torsion, as a saturation by an element of Fitt_e(E)."""
    fitt = E.fitting_ideal(E.rank())
    f = min(fitt.groebner(), key=lambda g: (len(g.terms), g.degree()))
    f = f.map_variables(tring, list(range(E.ring.nvars)))
    sym = symmetric_ideal(E, tring)
    if sym.is_zero():
        return sym
    return saturate(sym, f)


def rees_by_elimination(E, embedding, tring):
    """Kernel of R[T] -> R[Y], T_j -> sum_k embedding[j][k] Y_k."""
    ring = E.ring
    d, n = ring.nvars, E.n
    e = len(embedding[0]) if embedding else 0
    if e == 0:
        return Ideal(tring, tring.gens()[d:])
    ynames = _fresh_names("Y", e, set(tring.var_names))
    big = PolyRing(ring.field, ynames + list(tring.var_names), MonomialOrder("elimination", e))
    xmap = list(range(e, e + d))
    gens = []
    for j in range(n):
        f = big.var(e + d + j)
        for k in range(e):
            a = embedding[j][k]
            if not a.is_zero():
                f = f - a.map_variables(big, xmap) * big.var(k)
        gens.append(f)
    elim = eliminate(Ideal(big, gens), tring.var_names)
    return Ideal(tring, [g.map_variables(tring, list(range(d + n))) for g in elim.groebner()])


def build_rees(E, seed=1, max_retries=10, cross_check=True):
    """ReesPresentation of E with a seeded embedding; raises EmbeddingError
    if no injective embedding is found and ReesCrossCheckError if the
    elimination and saturation constructions disagree."""
    e = E.rank()
    if e < 1:
        raise EmbeddingError("module has rank 0")
    tring = t_ring(E)
    for attempt in range(max_retries):
        rng = random.Random(seed + attempt)
        rows = random_embedding(E, rng)
        if embedding_is_injective(E, rows):
            break
    else:
        raise EmbeddingError(f"no injective embedding into R^{e} after {max_retries} tries;"
                             " the module may have torsion")
    embedding = [[rows[k][j] for k in range(e)] for j in range(E.n)]
    J = rees_by_elimination(E, embedding, tring)
    if cross_check:
        J_sat = rees_by_saturation(E, tring)
        if J != J_sat:
            raise ReesCrossCheckError("Rees ideal by elimination differs from the saturation")
    return ReesPresentation(E, embedding, J, tring, seed + attempt)


def analytic_spread(RP):
    """dim of the special fiber ring k[T]/(J with x -> 0)."""
    return krull_dim(RP.fiber_ideal())


def is_reduction(RP, U):
    """Fiber criterion: U (field combinations) is a reduction iff
    k[T]/(fiber ideal + U's linear forms) is zero-dimensional."""
    if U.coeffs is None:
        raise ValueError("is_reduction needs a submodule given by field combinations")
    forms = [RP.linear_form(row) for row in U.coeffs]
    ideal = RP.fiber_ideal() + Ideal(RP.fiber_ring, forms)
    return krull_dim(ideal) <= 0


def reduction_number(RP, U, r_max):
    """Least r <= r_max with R(E)_{r+1} = U R(E)_r, or None."""
    for r in range(r_max + 1):
        lower = RP.times_piece(U, r)
        if RP.graded_piece(r + 1).issubset(lower):
            return r
    return None
