"""Exact sparse multivariate polynomials over F_p or Q.

A polynomial is an immutable map from exponent tuples to nonzero
coefficients.  Coefficients over F_p are ints in ``[0, p)``; over Q
they are :class:`fractions.Fraction` in lowest terms.
"""

from fractions import Fraction

DEFAULT_PRIME = 32003
MAX_EXPONENT = 65535


def is_prime(n):
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The prime field F_p."""

    def __init__(self, p=DEFAULT_PRIME):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __call__(self, c):
        if isinstance(c, Fraction):
            return self.div(c.numerator, c.denominator)
        return c % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError(f"{b} is not invertible mod {self.p}")
        return a * pow(b, -1, self.p) % self.p

    def inv(self, c):
        return pow(c, -1, self.p)

    def random(self, rng, nonzero=False):
        return rng.randrange(1 if nonzero else 0, self.p)

    def to_str(self, c):
        # symmetric representative reads better and still parses back
        return str(c - self.p) if c > self.p // 2 else str(c)


class RationalField:
    """The rationals; random elements are drawn from a bounded box."""

    characteristic = 0
    p = None
    RANDOM_BOUND = 10**4

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "RationalField()"

    def __call__(self, c):
        return Fraction(c)

    def div(self, a, b):
        return Fraction(a) / b

    def inv(self, c):
        return 1 / Fraction(c)

    def random(self, rng, nonzero=False):
        while True:
            c = Fraction(rng.randint(-self.RANDOM_BOUND, self.RANDOM_BOUND))
            if c or not nonzero:
                return c

    def to_str(self, c):
        return str(c)


def field_for(characteristic):
    """Return F_p for a prime ``characteristic`` and Q for 0."""
    return RationalField() if characteristic == 0 else PrimeField(characteristic)


class MonomialOrder:
    """A global monomial order on exponent tuples.

    ``key(u)`` returns a tuple that sorts *ascending* when the monomials
    sort *descending*, so ``min`` picks the leading monomial and a heap
    pops terms in decreasing order.

    Kinds: ``grevlex``, ``lex``, ``elimination`` (grevlex on the first
    ``block_size`` variables, ties broken by grevlex on the rest) and
    ``position_over_term`` (first entry is a module position, smaller
    index is larger; the rest is compared by grevlex).
    """

    KINDS = ("grevlex", "lex", "elimination", "position_over_term")

    def __init__(self, kind="grevlex", block_size=0):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "elimination" and block_size < 1:
            raise ValueError("elimination order needs block_size >= 1")
        self.kind = kind
        self.block_size = block_size if kind == "elimination" else 0
        self.key = getattr(self, "_key_" + kind)

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and other.kind == self.kind
                and other.block_size == self.block_size)

    def __hash__(self):
        return hash((self.kind, self.block_size))

    def __repr__(self):
        if self.kind == "elimination":
            return f"MonomialOrder('elimination', {self.block_size})"
        return f"MonomialOrder({self.kind!r})"

    @staticmethod
    def _key_grevlex(u):
        return (-sum(u),) + u[::-1]

    @staticmethod
    def _key_lex(u):
        return tuple(-a for a in u)

    def _key_elimination(self, u):
        b = self.block_size
        head, tail = u[:b], u[b:]
        return (-sum(head),) + head[::-1] + (-sum(tail),) + tail[::-1]

    @staticmethod
    def _key_position_over_term(u):
        rest = u[1:]
        return (u[0], -sum(rest)) + rest[::-1]

    def is_elimination_for(self, nvars_dropped):
        """True if every monomial in the first ``nvars_dropped`` variables
        dominates every monomial free of them."""
        if nvars_dropped == 0:
            return True
        if self.kind == "lex":
            return True
        return self.kind == "elimination" and self.block_size == nvars_dropped


def compare_monomials(order, u, v):
    """Three-way comparison of exponent tuples: 1 if u > v, 0 if equal, -1."""
    if len(u) != len(v):
        raise ValueError("exponent vectors of different lengths")
    ku, kv = order.key(tuple(u)), order.key(tuple(v))
    return (ku < kv) - (ku > kv)


class PolyRing:
    """k[x_1..x_d] with a fixed monomial order."""

    def __init__(self, field, var_names, order=None):
        var_names = tuple(var_names)
        if not var_names:
            raise ValueError("a ring needs at least one variable")
        if len(set(var_names)) != len(var_names):
            raise ValueError("variable names must be distinct")
        for name in var_names:
            if not (name.isidentifier()):
                raise ValueError(f"bad variable name {name!r}")
        self.field = field
        self.var_names = var_names
        self.nvars = len(var_names)
        self.order = order or MonomialOrder("grevlex")
        self._index = {name: i for i, name in enumerate(var_names)}
        self._key_cache = {}
        self.zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.var_names == other.var_names and self.order == other.order)

    def __hash__(self):
        return hash((self.field, self.var_names, self.order))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {list(self.var_names)}, {self.order!r})"

    def mono_key(self, m):
        """Order key of a module monomial ``(pos, e_1, ..., e_d)``."""
        k = self._key_cache.get(m)
        if k is None:
            k = self._key_cache[m] = (m[0],) + self.order.key(m[1:])
        return k

    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field(c)
        return Polynomial(self, {self.zero_exp: c} if c else {})

    def var(self, name_or_index):
        i = name_or_index if isinstance(name_or_index, int) else self.var_index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field(1)})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def var_index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def monomial(self, exp, coeff=1):
        c = self.field(coeff)
        return Polynomial(self, {tuple(exp): c} if c else {})

    def from_terms(self, terms):
        """Build a polynomial from (exponent, coefficient) pairs, summing repeats."""
        out = {}
        f = self.field
        for e, c in terms:
            e = tuple(e)
            c = f(out.get(e, 0) + c)
            if c:
                out[e] = c
            else:
                out.pop(e, None)
        return Polynomial(self, out)

    def parse(self, text):
        return parse_poly(self, text)

    def with_order(self, order):
        return PolyRing(self.field, self.var_names, order)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` must not be mutated."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- structure ---------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_exp in self.terms)

    def constant_coeff(self):
        return self.terms.get(self.ring.zero_exp, 0)

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self):
        """Terms in decreasing monomial order."""
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return min(self.terms, key=self.ring.order.key)

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    def variables(self):
        """Indices of variables occurring in the polynomial."""
        used = set()
        for e in self.terms:
            used.update(i for i, a in enumerate(e) if a)
        return used

    def monic(self):
        if not self.terms:
            return self
        c = self.ring.field.inv(self.leading_coeff())
        return self.scale(c)

    def scale(self, c):
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero
        return Polynomial(self.ring, {e: f(a * c) for e, a in self.terms.items()})

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = f(out.get(e, 0) + c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {e: f(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.ring.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.ring, {e: c for e, c in ((e, f(c)) for e, c in out.items()) if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, exp, coeff=1):
        f = self.ring.field
        coeff = f(coeff)
        if not coeff:
            return self.ring.zero
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(e, exp)): f(c * coeff)
                                      for e, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- conversions -------------------------------------------------------
    def map_variables(self, ring, index_map):
        """Image in ``ring`` sending variable i to variable ``index_map[i]``."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, a in enumerate(e):
                if a:
                    ne[index_map[i]] += a
            out[tuple(ne)] = ring.field(c)
        return Polynomial(ring, {e: c for e, c in out.items() if c})

    def substitute_zero(self, indices):
        """Set the variables with the given indices to zero."""
        idx = tuple(indices)
        return Polynomial(self.ring, {e: c for e, c in self.terms.items()
                                      if not any(e[i] for i in idx)})

    def __str__(self):
        return unparse_poly(self)

    def __repr__(self):
        return f"Polynomial({unparse_poly(self)!r})"


# -- text form ----------------------------------------------------------------

class ParseError(ValueError):
    """Syntax error in a polynomial string; ``position`` is 0-based."""

    def __init__(self, message, position, text=""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and (text[j].isalpha() or text[j] == "_"):
                raise ParseError("implicit multiplication is not allowed", j, text)
            tokens.append(("nat", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("var", text[i:j], i))
            i = j
        elif ch in "+-*^()/":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i, text)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    # expr   := ['-'] term (('+'|'-') term)*
    # term   := factor ('*' factor)*
    # factor := base ('^' nat)?
    # base   := var | nat ['/' nat] | '(' expr ')'

    def __init__(self, ring, text):
        self.ring = ring
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self, kind):
        tok = self.tokens[self.k]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2], self.text)
        self.k += 1
        return tok

    def parse(self):
        tok = self.peek()
        if tok[0] == "end":
            raise ParseError("empty expression", tok[2], self.text)
        value = self.expr()
        self.take("end")
        return value

    def expr(self):
        negate = False
        if self.peek()[0] == "-":
            self.k += 1
            negate = True
        value = self.term()
        if negate:
            value = -value
        while self.peek()[0] in "+-":
            op = self.tokens[self.k][0]
            self.k += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] == "*":
            self.k += 1
            value = value * self.factor()
        return value

    def factor(self):
        value = self.base()
        if self.peek()[0] == "^":
            self.k += 1
            tok = self.take("nat")
            k = int(tok[1])
            if k > MAX_EXPONENT:
                raise ParseError(f"exponent {k} exceeds {MAX_EXPONENT}", tok[2], self.text)
            if value.degree() * k > MAX_EXPONENT:
                raise ParseError("exponent overflow", tok[2], self.text)
            value = value ** k
        return value

    def base(self):
        tok = self.peek()
        if tok[0] == "var":
            self.k += 1
            if tok[1] not in self.ring._index:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2], self.text)
            return self.ring.var(tok[1])
        if tok[0] == "nat":
            self.k += 1
            num = int(tok[1])
            if self.peek()[0] == "/":
                self.k += 1
                den_tok = self.take("nat")
                den = int(den_tok[1])
                try:
                    if den == 0:
                        raise ZeroDivisionError
                    return self.ring.const(Fraction(num, den))
                except ZeroDivisionError:
                    raise ParseError("division by zero", den_tok[2], self.text) from None
            return self.ring.const(num)
        if tok[0] == "(":
            self.k += 1
            value = self.expr()
            self.take(")")
            return value
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"unexpected {what}", tok[2], self.text)


def parse_poly(ring, text):
    """Parse ``text`` as a polynomial in ``ring``.

    >>> R = PolyRing(PrimeField(), ["x", "y"])
    >>> parse_poly(R, "x^2 + 2*x*y").terms == {(2, 0): 1, (1, 1): 2}
    True
    """
    return _Parser(ring, text).parse()


def unparse_poly(f):
    """Render ``f`` in the grammar accepted by :func:`parse_poly`."""
    if not f.terms:
        return "0"
    field = f.ring.field
    names = f.ring.var_names
    parts = []
    for e, c in f.sorted_terms():
        mono = "*".join(names[i] if a == 1 else f"{names[i]}^{a}"
                        for i, a in enumerate(e) if a)
        cs = field.to_str(c)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        if not parts:
            parts.append("-" + body if neg else body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)
