"""Finitely presented modules E = coker(phi: R^m -> R^n) and submodules of E."""

from itertools import combinations

from .groebner import (FreeSubmodule, Ideal, colon_into_ring, height, intersect,
                       syzygies_of_vectors)
from .kernel import Polynomial


class NotGradedError(ValueError):
    """The presentation matrix admits no grading making it homogeneous."""


def _as_poly(ring, x):
    if isinstance(x, Polynomial):
        if x.ring != ring:
            raise ValueError("entry from a different ring")
        return x
    if isinstance(x, int):
        return ring.const(x)
    return ring.parse(x)


def minors(matrix, k):
    """All nonzero k x k minors of a matrix given as a list of rows."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if k == 0:
        return None
    memo = {}

    def det(rows, cols):
        if len(rows) == 1:
            return matrix[rows[0]][cols[0]]
        hit = memo.get((rows, cols))
        if hit is not None:
            return hit
        r0, rest = rows[0], rows[1:]
        total = None
        for t, c in enumerate(cols):
            a = matrix[r0][c]
            if a.is_zero():
                continue
            sub = det(rest, cols[:t] + cols[t + 1:])
            if sub.is_zero():
                continue
            term = a * sub
            if t % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            total = matrix[r0][cols[0]].ring.zero
        memo[(rows, cols)] = total
        return total

    out = []
    for rows in combinations(range(nrows), k):
        for cols in combinations(range(ncols), k):
            d = det(rows, cols)
            if not d.is_zero():
                out.append(d)
    return out


class PresentedModule:
    """E = coker(phi) with phi an n x m matrix (rows = generators).

    Fitting ideals, rank and projective dimension are cached on first use.
    """

    def __init__(self, ring, matrix, n=None, label=None):
        rows = [[_as_poly(ring, x) for x in row] for row in matrix]
        if n is None:
            n = len(rows)
        if len(rows) != n:
            raise ValueError("matrix row count does not match the number of generators")
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ValueError("ragged presentation matrix")
        self.ring = ring
        self.n = n
        self.m = widths.pop() if widths else 0
        self.matrix = rows
        self.label = label
        self._fitting = {}
        self._rank = None
        self._proj_dim = None
        self._image = None

    @classmethod
    def free(cls, ring, n, label=None):
        return cls(ring, [[] for _ in range(n)], n=n, label=label)

    def __repr__(self):
        return f"PresentedModule(n={self.n}, m={self.m}, label={self.label!r})"

    def column(self, c):
        return tuple(self.matrix[j][c] for j in range(self.n))

    def columns(self):
        return [self.column(c) for c in range(self.m)]

    def image(self):
        """im(phi) as a submodule of R^n."""
        if self._image is None:
            self._image = FreeSubmodule(self.ring, self.n, self.columns())
        return self._image

    def is_linear(self):
        return all(x.is_zero() or (x.is_homogeneous() and x.degree() == 1)
                   for row in self.matrix for x in row)

    # -- invariants --------------------------------------------------------
    def fitting_ideal(self, i):
        if i < 0:
            raise ValueError("Fitting index must be non-negative")
        if i not in self._fitting:
            k = self.n - i
            if k <= 0:
                ideal = Ideal.unit(self.ring)
            elif k > self.m:
                ideal = Ideal.zero(self.ring)
            else:
                ideal = Ideal(self.ring, minors(self.matrix, k))
            self._fitting[i] = ideal
        return self._fitting[i]

    def rank(self):
        """The e with Fitt_{e-1} = 0 != Fitt_e."""
        if self._rank is None:
            for e in range(self.n + 1):
                if not self.fitting_ideal(e).is_zero():
                    self._rank = e
                    break
        return self._rank

    def rank_from_image(self):
        """n minus the generic rank of phi, read off leading positions of im(phi)."""
        return self.n - len(self.image().leading_positions())

    def grading(self):
        """Generator and relation degrees making every entry homogeneous.

        Each connected block is normalized so that its smallest
        generator degree is 0.
        """
        gen = [None] * self.n
        rel = [None] * self.m
        for x in (x for row in self.matrix for x in row):
            if not x.is_homogeneous():
                raise NotGradedError(f"entry {x} is not homogeneous")
        for start in range(self.n):
            if gen[start] is not None:
                continue
            gen[start] = 0
            block = [start]
            stack = [("g", start)]
            while stack:
                kind, i = stack.pop()
                if kind == "g":
                    for c in range(self.m):
                        x = self.matrix[i][c]
                        if x.is_zero():
                            continue
                        want = gen[i] + x.degree()
                        if rel[c] is None:
                            rel[c] = want
                            stack.append(("r", c))
                        elif rel[c] != want:
                            raise NotGradedError(f"column {c} is not homogeneous")
                else:
                    for j in range(self.n):
                        x = self.matrix[j][i]
                        if x.is_zero():
                            continue
                        want = rel[i] - x.degree()
                        if gen[j] is None:
                            gen[j] = want
                            block.append(j)
                            stack.append(("g", j))
                        elif gen[j] != want:
                            raise NotGradedError(f"column {i} is not homogeneous")
            low = min(gen[j] for j in block)
            for j in block:
                gen[j] -= low
            for c in range(self.m):
                if rel[c] is not None and any(not self.matrix[j][c].is_zero() for j in block):
                    rel[c] -= low
        rel = [0 if r is None else r for r in rel]
        return gen, rel

    def minimal_presentation(self):
        """Columns of a minimal presentation (unit entries pivoted away,
        redundant columns dropped), as vectors in R^n'."""
        self.grading()
        mat = [list(row) for row in self.matrix]
        field = self.ring.field
        while True:
            pivot = None
            for j, row in enumerate(mat):
                for c, x in enumerate(row):
                    if not x.is_zero() and x.is_constant():
                        pivot = (j, c)
                        break
                if pivot:
                    break
            if pivot is None:
                break
            j, c = pivot
            inv = field.inv(mat[j][c].constant_coeff())
            new = []
            for i, row in enumerate(mat):
                if i == j:
                    continue
                f = row[c].scale(inv)
                new.append([row[k] - f * mat[j][k] for k in range(len(row)) if k != c])
            mat = new
        n = len(mat)
        cols = [tuple(mat[j][c] for j in range(n)) for c in range(len(mat[0]) if n else 0)]
        cols = [v for v in cols if any(not x.is_zero() for x in v)]
        return n, minimal_generators(self.ring, n, cols)

    def proj_dim(self):
        """Length of the minimal graded free resolution."""
        if self._proj_dim is None:
            n, current = self.minimal_presentation()
            if not current:
                self._proj_dim = 0
                return 0
            pd = 1
            rank = n
            while True:
                syz = syzygies_of_vectors(self.ring, rank, current)
                if syz.is_zero():
                    break
                rank = len(current)
                current = minimal_generators(self.ring, rank, syz.groebner())
                pd += 1
                if pd > self.ring.nvars + 1:
                    raise RuntimeError("resolution longer than Hilbert's bound")
            self._proj_dim = pd
        return self._proj_dim

    def check_Gs(self, s):
        """G_s via heights: ht Fitt_i >= min(i - e + 2, s) for e <= i < n.

        Returns ``(holds, witness)``; the witness is None or a dict with
        the first failing index, its height and the required bound.
        """
        if s < 1:
            raise ValueError("s must be >= 1")
        e = self.rank()
        for i in range(e, self.n):
            need = min(i - e + 2, s)
            ht = height(self.fitting_ideal(i))
            if ht < need:
                return False, {"index": i, "height": ht, "required": need}
        return True, None

    def free_in_codim_one(self):
        return height(self.fitting_ideal(self.rank())) >= 2

    def hom_generators(self):
        """Vectors v in R^n with v^t phi = 0; they generate Hom(E, R)."""
        rows = [tuple(self.matrix[j]) for j in range(self.n)]
        if self.m == 0:
            return [tuple(self.ring.one if k == j else self.ring.zero for k in range(self.n))
                    for j in range(self.n)]
        return syzygies_of_vectors(self.ring, self.m, rows).groebner()

    # -- submodules --------------------------------------------------------
    def whole(self):
        return SubmoduleOfE(self, FreeSubmodule.free(self.ring, self.n) + self.image())

    def zero_submodule(self):
        return SubmoduleOfE(self, self.image())


def minimal_generators(ring, rank, vectors):
    """An irredundant subset of homogeneous generators (hence minimal)."""
    kept = [tuple(v) for v in vectors if any(not x.is_zero() for x in v)]
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1:]
        if others and kept[i] in FreeSubmodule(ring, rank, others):
            kept = others
        else:
            i += 1
    return kept


class SubmoduleOfE:
    """A submodule of E, stored as its preimage in R^n (which contains im phi).

    ``coeffs`` records field-coefficient generators when the submodule was
    built from combinations of E's generators.
    """

    def __init__(self, parent, preimage, coeffs=None):
        if preimage.rank != parent.n:
            raise ValueError("preimage lives in the wrong free module")
        self.parent = parent
        self.preimage = preimage
        self.coeffs = coeffs

    def __repr__(self):
        return f"SubmoduleOfE(n={self.parent.n}, gens={len(self.preimage.gens)})"

    def _peer(self, other):
        if other.parent is not self.parent:
            raise ValueError("submodules of different modules")

    def __eq__(self, other):
        if not isinstance(other, SubmoduleOfE):
            return NotImplemented
        self._peer(other)
        return self.preimage == other.preimage

    def __hash__(self):
        return hash(self.preimage)

    def issubset(self, other):
        self._peer(other)
        return self.preimage.issubset(other.preimage)

    __le__ = issubset

    def contains(self, v):
        return v in self.preimage

    __contains__ = contains

    def intersect(self, other):
        self._peer(other)
        return SubmoduleOfE(self.parent, intersect(self.preimage, other.preimage))

    def scaled(self, ideal):
        """ideal * self."""
        pre = self.preimage.scaled(ideal) + self.parent.image()
        return SubmoduleOfE(self.parent, pre)

    def is_whole(self):
        return self == self.parent.whole()


def submodule_from_combos(E, coeffs):
    """Submodule of E generated by field combinations of its generators."""
    field = E.ring.field
    rows = []
    for row in coeffs:
        if len(row) != E.n:
            raise ValueError(f"coefficient row of length {len(row)}, expected {E.n}")
        rows.append(tuple(field(c) for c in row))
    vecs = [tuple(E.ring.const(c) for c in row) for row in rows]
    return SubmoduleOfE(E, FreeSubmodule(E.ring, E.n, vecs + E.columns()), coeffs=rows)


def colon_UE(U):
    """U :_R E = {a in R : a E in U}."""
    E = U.parent
    return colon_into_ring(U.preimage, FreeSubmodule.free(E.ring, E.n))


def multiply_ideal(E, ideal):
    """The submodule ideal * E."""
    return E.whole().scaled(ideal)


def fitt0_of_quotient(U):
    """Fitt_0(E/U), from the presentation of E/U by U's preimage generators."""
    E = U.parent
    gens = U.preimage.gens
    if E.n == 0:
        return Ideal.unit(E.ring)
    if len(gens) < E.n:
        return Ideal.zero(E.ring)
    mat = [[g[j] for g in gens] for j in range(E.n)]
    return Ideal(E.ring, minors(mat, E.n))


def quotient_by_element(E, x_coeffs):
    """E / Rx for x a field combination of E's generators.

    The generator with the last nonzero coefficient is traded for x and
    then dropped; the result remembers how to carry coefficient rows
    over (see :func:`project_coeffs`).
    """
    field = E.ring.field
    x = [field(c) for c in x_coeffs]
    if len(x) != E.n:
        raise ValueError("coefficient vector has the wrong length")
    nz = [j for j, c in enumerate(x) if c]
    if not nz:
        raise ValueError("x must be nonzero")
    t = nz[-1]
    inv = field.inv(x[t])
    rows = []
    for j in range(E.n):
        if j == t:
            continue
        f = field(x[j] * inv)
        rows.append([E.matrix[j][c] - E.matrix[t][c].scale(f) for c in range(E.m)])
    Ebar = PresentedModule(E.ring, rows, n=E.n - 1,
                           label=f"{E.label}/Rx" if E.label else None)
    Ebar.quotient_of = (E, t, tuple(x))
    return Ebar


def project_coeffs(Ebar, row):
    """Image in Ebar = E/Rx of the element with coefficient ``row`` in E."""
    E, t, x = Ebar.quotient_of
    field = E.ring.field
    inv = field.inv(x[t])
    ct = field(row[t])
    return tuple(field(row[j] - ct * x[j] * inv) for j in range(E.n) if j != t)
