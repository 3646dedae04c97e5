"""Buchberger engine for ideals of R and submodules of free modules R^n.

Internally an element of R^n is a dict mapping module monomials
``(pos, e_1, ..., e_d)`` to coefficients.  Modules use position over
term, smaller positions being larger, over the ring's monomial order;
an ideal is the rank-one case.  Colon, intersection and syzygy
computations all go through :func:`_kernel_part`, which reads off the
part of a Groebner basis living in the trailing components.
"""

import heapq
from itertools import combinations
from operator import add, le, sub

from .kernel import MonomialOrder, PolyRing, Polynomial

# When True, every basis leaving the engine is checked against the
# Buchberger criterion; tests switch this on.
CHECK_GROEBNER = False
checked_bases = 0


class _Elt:
    """A monic basis element prepared for reduction."""

    __slots__ = ("terms", "lm", "lpos", "lexp", "tail", "sugar")

    def __init__(self, terms, lm, sugar):
        self.terms = terms
        self.lm = lm
        self.lpos = lm[0]
        self.lexp = lm[1:]
        self.tail = [(m[0], m[1:], c) for m, c in terms.items() if m != lm]
        self.sugar = sugar


def _deg(m):
    return sum(m) - m[0]


def _vec_degree(v):
    return max(_deg(m) for m in v)


def _find_divisor(cands, mexp):
    if cands:
        for g in cands:
            if all(map(le, g.lexp, mexp)):
                return g
    return None


def _reduce(f, index, key, field, full=True):
    """Remainder of ``f`` modulo the elements in ``index`` (pos -> list)."""
    p = field.p
    f = dict(f)
    heap = [(key(m), m) for m in f]
    heapq.heapify(heap)
    out = {}
    while heap:
        m = heapq.heappop(heap)[1]
        c = f.pop(m, None)
        if c is None:
            continue
        mexp = m[1:]
        g = _find_divisor(index.get(m[0]), mexp)
        if g is None:
            out[m] = c
            if not full:
                out.update(f)
                return out
            continue
        q = tuple(map(sub, mexp, g.lexp))
        for gp, ge, gc in g.tail:
            nm = (gp, *map(add, ge, q))
            old = f.get(nm)
            if old is None:
                v = (-c * gc) % p if p else -c * gc
                f[nm] = v
                heapq.heappush(heap, (key(nm), nm))
            else:
                v = (old - c * gc) % p if p else old - c * gc
                if v:
                    f[nm] = v
                else:
                    del f[nm]
    return out


def _monic(f, lm, field):
    c = f[lm]
    one = field(1)
    if c == one:
        return f
    inv = field.inv(c)
    return {m: field(a * inv) for m, a in f.items()}


def _lcm(a, b):
    return (a[0], *map(max, a[1:], b[1:]))


def _divides(a, b):
    return a[0] == b[0] and all(map(le, a[1:], b[1:]))


def _coprime(a, b):
    return not any(x and y for x, y in zip(a[1:], b[1:]))


def _spoly(f, g, lcm, field):
    p = field.p
    qf = tuple(map(sub, lcm[1:], f.lexp))
    qg = tuple(map(sub, lcm[1:], g.lexp))
    out = {}
    for fp, fe, fc in f.tail:
        out[(fp, *map(add, fe, qf))] = fc
    for gp, ge, gc in g.tail:
        nm = (gp, *map(add, ge, qg))
        old = out.get(nm)
        if old is None:
            out[nm] = (-gc) % p if p else -gc
        else:
            v = (old - gc) % p if p else old - gc
            if v:
                out[nm] = v
            else:
                del out[nm]
    return out


def _groebner(vecs, ring, rank):
    """Reduced Groebner basis (list of monic dicts, leading monomial first
    in the order) of the submodule of R^rank generated by ``vecs``."""
    key = ring.mono_key
    field = ring.field
    ideal_case = rank == 1
    elts = []
    active = []          # indices into elts forming the current basis
    index = {}           # pos -> list of active elts
    pairs = []           # heap of (sugar, lcm key, i, j, lcm)

    def insert(h, sugar):
        lm = min(h, key=key)
        h = _monic(h, lm, field)
        elt = _Elt(h, lm, max(sugar, _vec_degree(h)))
        k = len(elts)
        elts.append(elt)
        # Gebauer-Moeller update
        cand = []
        for j in active:
            g = elts[j]
            if g.lpos == elt.lpos:
                cand.append((_lcm(lm, g.lm), j))
        kept = []
        for t, (L, j) in enumerate(cand):
            if ideal_case and _coprime(lm, elts[j].lm):
                kept.append((L, j, True))
                continue
            dominated = any(_divides(L2, L) for L2, _j, _c in kept) or \
                any(_divides(L2, L) for L2, _j in cand[t + 1:])
            if not dominated:
                kept.append((L, j, False))
        old = pairs[:]
        pairs.clear()
        for item in old:
            _s, _lk, i, j, L = item
            if (_divides(lm, L) and _lcm(elts[i].lm, lm) != L
                    and _lcm(elts[j].lm, lm) != L):
                continue
            pairs.append(item)
        for L, j, coprime in kept:
            if coprime:
                continue
            g = elts[j]
            s = max(elt.sugar + _deg(L) - _deg(lm), g.sugar + _deg(L) - _deg(g.lm))
            pairs.append((s, key(L), j, k, L))
        heapq.heapify(pairs)
        survivors = []
        for j in active:
            g = elts[j]
            if _divides(lm, g.lm):
                index[g.lpos].remove(g)
            else:
                survivors.append(j)
        survivors.append(k)
        active[:] = survivors
        index.setdefault(elt.lpos, []).append(elt)

    start = [v for v in vecs if v]
    start.sort(key=lambda v: key(min(v, key=key)), reverse=True)
    for v in start:
        h = _reduce(v, index, key, field)
        if h:
            insert(h, _vec_degree(v))
    while pairs:
        sugar, _lk, i, j, L = heapq.heappop(pairs)
        s = _spoly(elts[i], elts[j], L, field)
        if not s:
            continue
        h = _reduce(s, index, key, field)
        if h:
            insert(h, sugar)

    basis = [elts[j] for j in active]
    result = []
    for g in basis:
        others = {}
        for h in basis:
            if h is not g:
                others.setdefault(h.lpos, []).append(h)
        tail = {g.lm: g.terms[g.lm]}
        rest = {m: c for m, c in g.terms.items() if m != g.lm}
        tail.update(_reduce(rest, others, key, field))
        result.append(tail)
    result.sort(key=lambda v: key(min(v, key=key)))
    if CHECK_GROEBNER:
        assert_groebner(result, ring)
    return result


def _index_of(vecs, ring):
    key = ring.mono_key
    index = {}
    for v in vecs:
        lm = min(v, key=key)
        index.setdefault(lm[0], []).append(_Elt(v, lm, 0))
    return index


def is_groebner(vecs, ring):
    """Buchberger criterion: every S-vector reduces to zero."""
    key = ring.mono_key
    field = ring.field
    index = _index_of(vecs, ring)
    elts = [e for es in index.values() for e in es]
    for f, g in combinations(elts, 2):
        if f.lpos != g.lpos:
            continue
        s = _spoly(f, g, _lcm(f.lm, g.lm), field)
        if s and _reduce(s, index, key, field, full=False):
            return False
    return True


def assert_groebner(vecs, ring):
    global checked_bases
    checked_bases += 1
    if not is_groebner(vecs, ring):
        raise AssertionError("Buchberger criterion fails on a returned basis")
    key = ring.mono_key
    lms = [min(v, key=key) for v in vecs]
    for a, b in combinations(lms, 2):
        if _divides(a, b) or _divides(b, a):
            raise AssertionError("returned basis is not minimal")


def _kernel_part(ring, vecs, split):
    """Reduced basis of (submodule generated by vecs) meet (0 + R^rest),
    shifted to start at position 0."""
    gb = _groebner(vecs, ring, split + 1)
    key = ring.mono_key
    out = []
    for v in gb:
        if min(v, key=key)[0] >= split:
            out.append({(m[0] - split,) + m[1:]: c for m, c in v.items()})
    return out


def _shift(v, k):
    return {(m[0] + k,) + m[1:]: c for m, c in v.items()}


def _unit_vec(ring, pos):
    return {(pos,) + ring.zero_exp: ring.field(1)}


def _poly_times_vec(f, v):
    """f * v for a Polynomial f and an engine vector v."""
    field = f.ring.field
    out = {}
    for m, c in v.items():
        for e, a in f.terms.items():
            nm = (m[0], *map(add, m[1:], e))
            out[nm] = out.get(nm, 0) + a * c
    return {m: c for m, c in ((m, field(c)) for m, c in out.items()) if c}


# -- carriers -----------------------------------------------------------------

class _Module:
    """Common machinery of Ideal and FreeSubmodule."""

    rank = 1

    def _basis(self):
        if self._gb is None:
            self._gb = _groebner(self._vecs, self.ring, self.rank)
        return self._gb

    def _nf(self, v):
        return _reduce(v, _index_of(self._basis(), self.ring), self.ring.mono_key,
                       self.ring.field)

    def _contains_vec(self, v):
        return not self._nf(v)

    def _check_peer(self, other):
        if not isinstance(other, _Module) or other.ring != self.ring or other.rank != self.rank:
            raise ValueError("ambient mismatch")

    def _frozen(self):
        return frozenset(frozenset(v.items()) for v in self._basis())

    def __eq__(self, other):
        if not isinstance(other, _Module):
            return NotImplemented
        self._check_peer(other)
        return self._frozen() == other._frozen()

    def __hash__(self):
        return hash(self._frozen())

    def issubset(self, other):
        self._check_peer(other)
        index = _index_of(other._basis(), self.ring)
        key, field = self.ring.mono_key, self.ring.field
        return all(not _reduce(v, index, key, field, full=False) for v in self._vecs)

    __le__ = issubset

    def is_zero(self):
        return not self._basis()

    def leading_monomials(self):
        key = self.ring.mono_key
        return [min(v, key=key) for v in self._basis()]


class Ideal(_Module):
    """An ideal of a polynomial ring given by generators."""

    def __init__(self, ring, gens, _gb=None):
        self.ring = ring
        gens = tuple(ring.parse(g) if isinstance(g, str) else g for g in gens)
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
        self.gens = tuple(g for g in gens if g)
        self._vecs = [{(0,) + e: c for e, c in g.terms.items()} for g in self.gens]
        self._gb = _gb

    @classmethod
    def unit(cls, ring):
        return cls(ring, [ring.one])

    @classmethod
    def zero(cls, ring):
        return cls(ring, [])

    @classmethod
    def maximal(cls, ring):
        """The irrelevant ideal (x_1..x_d)."""
        return cls(ring, ring.gens())

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.groebner()]})"

    def groebner(self):
        """Reduced Groebner basis as a list of polynomials."""
        return [Polynomial(self.ring, {m[1:]: c for m, c in v.items()}) for v in self._basis()]

    def normal_form(self, f):
        if isinstance(f, str):
            f = self.ring.parse(f)
        if f.ring != self.ring:
            raise ValueError("ambient mismatch")
        r = self._nf({(0,) + e: c for e, c in f.terms.items()})
        return Polynomial(self.ring, {m[1:]: c for m, c in r.items()})

    def contains(self, f):
        if isinstance(f, Ideal):
            return f.issubset(self)
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def is_unit(self):
        gb = self._basis()
        return len(gb) == 1 and (0,) + self.ring.zero_exp in gb[0]

    def __add__(self, other):
        self._check_peer(other)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        if isinstance(other, Ideal):
            self._check_peer(other)
            return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])
        return NotImplemented

    def __pow__(self, k):
        result = Ideal.unit(self.ring)
        for _ in range(k):
            result = result * self
            result = Ideal(self.ring, result.groebner())
        return result

    def dim(self):
        return krull_dim(self)

    def height(self):
        return height(self)


class FreeSubmodule(_Module):
    """A submodule of R^rank given by generating vectors."""

    def __init__(self, ring, rank, gens, _gb=None):
        self.ring = ring
        self.rank = rank
        vecs = []
        clean = []
        for g in gens:
            g = tuple(ring.parse(x) if isinstance(x, str) else x for x in g)
            if len(g) != rank:
                raise ValueError(f"vector of length {len(g)} in a rank {rank} module")
            v = {}
            for i, x in enumerate(g):
                if x.ring != ring:
                    raise ValueError("entry from a different ring")
                for e, c in x.terms.items():
                    v[(i,) + e] = c
            if v:
                vecs.append(v)
                clean.append(g)
        self.gens = tuple(clean)
        self._vecs = vecs
        self._gb = _gb

    @classmethod
    def _from_vecs(cls, ring, rank, vecs, is_gb=False):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.rank = rank
        obj._vecs = [v for v in vecs if v]
        obj._gb = list(obj._vecs) if is_gb else None
        obj.gens = tuple(_vec_to_tuple(ring, rank, v) for v in obj._vecs)
        return obj

    @classmethod
    def free(cls, ring, rank):
        return cls._from_vecs(ring, rank, [_unit_vec(ring, i) for i in range(rank)], is_gb=True)

    def __repr__(self):
        return f"FreeSubmodule(rank={self.rank}, gb={[[str(x) for x in v] for v in self.groebner()]})"

    def groebner(self):
        return [_vec_to_tuple(self.ring, self.rank, v) for v in self._basis()]

    def _as_vec(self, v):
        if len(v) != self.rank:
            raise ValueError("ambient mismatch")
        out = {}
        for i, x in enumerate(v):
            if isinstance(x, str):
                x = self.ring.parse(x)
            if x.ring != self.ring:
                raise ValueError("ambient mismatch")
            for e, c in x.terms.items():
                out[(i,) + e] = c
        return out

    def normal_form(self, v):
        return _vec_to_tuple(self.ring, self.rank, self._nf(self._as_vec(v)))

    def contains(self, v):
        if isinstance(v, FreeSubmodule):
            return v.issubset(self)
        return not self._nf(self._as_vec(v))

    __contains__ = contains

    def __add__(self, other):
        self._check_peer(other)
        return FreeSubmodule._from_vecs(self.ring, self.rank, self._vecs + other._vecs)

    def scaled(self, ideal):
        """The product ideal * self."""
        if ideal.ring != self.ring:
            raise ValueError("ambient mismatch")
        return FreeSubmodule._from_vecs(
            self.ring, self.rank, [_poly_times_vec(f, v) for f in ideal.gens for v in self._vecs])

    def leading_positions(self):
        return sorted({m[0] for m in self.leading_monomials()})


def _vec_to_tuple(ring, rank, v):
    parts = [{} for _ in range(rank)]
    for m, c in v.items():
        parts[m[0]][m[1:]] = c
    return tuple(Polynomial(ring, t) for t in parts)


# -- operations ---------------------------------------------------------------

def groebner_basis(target):
    """Populate the cached reduced basis of ``target`` and return ``target``."""
    target._basis()
    return target


def normal_form(f, target):
    return target.normal_form(f)


def syzygies(target):
    """Module of relations among the generators of ``target``, in R^k."""
    ring, n = target.ring, target.rank
    k = len(target._vecs)
    if k == 0:
        return FreeSubmodule._from_vecs(ring, 0, [])
    vecs = []
    for i, v in enumerate(target._vecs):
        w = dict(v)
        w.update(_unit_vec(ring, n + i))
        vecs.append(w)
    return FreeSubmodule._from_vecs(ring, k, _kernel_part(ring, vecs, n), is_gb=True)


def syzygies_of_vectors(ring, rank, vectors):
    """Syzygies of an ordered list of vectors (zero vectors allowed)."""
    k = len(vectors)
    vecs = []
    for i, g in enumerate(vectors):
        w = {}
        for j, x in enumerate(g):
            for e, c in x.terms.items():
                w[(j,) + e] = c
        w.update(_unit_vec(ring, rank + i))
        vecs.append(w)
    if k == 0:
        return FreeSubmodule._from_vecs(ring, 0, [])
    return FreeSubmodule._from_vecs(ring, k, _kernel_part(ring, vecs, rank), is_gb=True)


def eliminate(ideal, keep):
    """``ideal`` meet k[keep] as an ideal of the subring on ``keep``.

    The discarded variables must form the leading block of an
    elimination (or lex) order of the ambient ring.
    """
    ring = ideal.ring
    keep = list(keep)
    keep_idx = [ring.var_index(v) for v in keep]
    drop = [i for i in range(ring.nvars) if i not in keep_idx]
    b = len(drop)
    if drop != list(range(b)) or not ring.order.is_elimination_for(b):
        raise ValueError("ring order is not an elimination order for this split")
    keep_names = [ring.var_names[i] for i in range(b, ring.nvars)]
    order = ring.order if ring.order.kind == "lex" else MonomialOrder("grevlex")
    sub_ring = PolyRing(ring.field, keep_names, order)
    gb = []
    for v in ideal._basis():
        if all(not any(m[1:b + 1]) for m in v):
            gb.append({(0,) + m[b + 1:]: c for m, c in v.items()})
    out = Ideal(sub_ring, [Polynomial(sub_ring, {m[1:]: c for m, c in v.items()}) for v in gb],
                _gb=gb)
    order_map = {keep_names[i]: i for i in range(len(keep_names))}
    if [order_map[v] for v in keep] != list(range(len(keep))):
        out = Ideal(PolyRing(ring.field, keep, order),
                    [g.map_variables(PolyRing(ring.field, keep, order),
                                     [keep.index(n) for n in keep_names]) for g in out.gens])
    return out


def module_quotient(target, v):
    """{a in R : a v in target} for a vector (or polynomial) v."""
    ring, n = target.ring, target.rank
    if isinstance(v, Polynomial):
        vv = {(0,) + e: c for e, c in v.terms.items()}
    elif isinstance(v, dict):
        vv = v
    else:
        vv = FreeSubmodule(ring, n, [])._as_vec(v) if n else {}
    w = dict(vv)
    w.update(_unit_vec(ring, n))
    vecs = [w] + [dict(x) for x in target._basis()]
    gb = _kernel_part(ring, vecs, n)
    return Ideal(ring, [Polynomial(ring, {m[1:]: c for m, c in x.items()}) for x in gb], _gb=gb)


def colon_ideal(I, J):
    """I : J = {a : a J in I}."""
    I._check_peer(J)
    result = Ideal.unit(I.ring)
    for v in J._vecs:
        if I._contains_vec(v):
            continue
        result = intersect(result, module_quotient(I, v))
    return result


def colon_into_ring(N, M):
    """N :_R M = {a in R : a M in N} for submodules of the same R^n."""
    N._check_peer(M)
    result = Ideal.unit(N.ring)
    for v in M._vecs:
        if N._contains_vec(v):
            continue
        result = intersect(result, module_quotient(N, v))
    return result


def intersect(A, B):
    """A meet B for two ideals or two submodules of the same R^n."""
    A._check_peer(B)
    ring, n = A.ring, A.rank
    if A.is_zero() or B.is_zero():
        vecs = []
    elif isinstance(A, Ideal) and A.is_unit():
        return B
    elif isinstance(B, Ideal) and B.is_unit():
        return A
    else:
        gens = [dict(v) for v in A._basis()]
        for v in B._basis():
            w = dict(v)
            w.update(_shift(v, n))
            gens.append(w)
        vecs = _kernel_part(ring, gens, n)
    if isinstance(A, Ideal):
        return Ideal(ring, [Polynomial(ring, {m[1:]: c for m, c in v.items()}) for v in vecs],
                     _gb=vecs)
    return FreeSubmodule._from_vecs(ring, n, vecs, is_gb=True)


def _quotient_by_element(target, f):
    """{v : f v in target} for a polynomial f."""
    ring, n = target.ring, target.rank
    if isinstance(target, Ideal):
        return module_quotient(target, f)
    vecs = []
    for i in range(n):
        w = {(i,) + e: c for e, c in f.terms.items()}
        w.update(_unit_vec(ring, n + i))
        vecs.append(w)
    vecs += [dict(v) for v in target._basis()]
    return FreeSubmodule._from_vecs(ring, n, _kernel_part(ring, vecs, n), is_gb=True)


def saturate(target, f):
    """target : f^infinity, by iterated colon until the basis stabilizes."""
    if f.is_zero():
        raise ValueError("cannot saturate by zero")
    current = target
    while True:
        nxt = _quotient_by_element(current, f)
        if nxt._frozen() == current._frozen():
            return current
        current = nxt


def krull_dim(ideal):
    """dim R/I from maximal independent sets of the leading-term ideal.

    Returns -1 for the unit ideal.
    """
    if ideal.is_unit():
        return -1
    d = ideal.ring.nvars
    supports = []
    for m in ideal.leading_monomials():
        supports.append(frozenset(i for i, a in enumerate(m[1:]) if a))
    return max_independent_size(d, supports)


def max_independent_size(d, supports):
    """Largest S in {0..d-1} such that no support set lies inside S."""
    masks = [sum(1 << i for i in s) for s in supports]
    for size in range(d, -1, -1):
        for S in combinations(range(d), size):
            sm = sum(1 << i for i in S)
            if all(m & ~sm for m in masks):
                return size
    return -1


INFINITE_HEIGHT = float("inf")


def height(ideal):
    """ht I = d - dim R/I; the unit ideal has height +inf."""
    if ideal.is_unit():
        return INFINITE_HEIGHT
    return ideal.ring.nvars - krull_dim(ideal)
