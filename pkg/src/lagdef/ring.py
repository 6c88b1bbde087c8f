"""Sparse multivariate polynomials with a weight on every variable.

A polynomial is a dict mapping exponent tuples to nonzero field elements.
All arithmetic is exact; the coefficient field is Q or Q(i) depending on
the ring's field kind.  Values are immutable after construction and safe
to share between workers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .fields import (
    GAUSSIAN,
    RATIONAL,
    FIELD_KINDS,
    GaussianRational,
    coerce_scalar,
    field_one,
    field_zero,
)


class RingError(ValueError):
    pass


class WeightedRing:
    """A polynomial ring K[x_1..x_m] with positive integer weights."""

    __slots__ = ("variables", "weights", "field", "_index", "_hash")

    def __init__(self, variables: Sequence[str], weights: Sequence[int], field: str = RATIONAL):
        variables = tuple(variables)
        weights = tuple(int(w) for w in weights)
        if len(set(variables)) != len(variables):
            raise RingError("duplicate variable names")
        if len(weights) != len(variables):
            raise RingError("weights and variables differ in length")
        if any(w < 1 for w in weights):
            raise RingError("weights must be positive integers")
        if field not in FIELD_KINDS:
            raise RingError(f"unknown field kind {field!r}")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(variables)})
        object.__setattr__(self, "_hash", hash((variables, weights, field)))

    def __setattr__(self, name, value):
        raise AttributeError("WeightedRing is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, WeightedRing)
            and self.variables == other.variables
            and self.weights == other.weights
            and self.field == other.field
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        ws = ",".join(f"{v}:{w}" for v, w in zip(self.variables, self.weights))
        return f"WeightedRing({ws}; {self.field})"

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def var_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RingError(f"unknown variable {name!r}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: field_one(self.field)})

    def constant(self, c) -> "Polynomial":
        c = coerce_scalar(c, self.field)
        if not c:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def variable(self, name: str) -> "Polynomial":
        i = self.var_index(name)
        exp = [0] * self.nvars
        exp[i] = 1
        return Polynomial(self, {tuple(exp): field_one(self.field)})

    def gens(self) -> list:
        return [self.variable(v) for v in self.variables]

    def monomial(self, exponents: Sequence[int], coeff=1) -> "Polynomial":
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != self.nvars or any(e < 0 for e in exponents):
            raise RingError("bad exponent tuple")
        c = coerce_scalar(coeff, self.field)
        if not c:
            return self.zero()
        return Polynomial(self, {exponents: c})

    def imaginary_unit(self) -> "Polynomial":
        if self.field != GAUSSIAN:
            raise RingError("imaginary unit requires a gaussian ring")
        return self.constant(GaussianRational(0, 1))

    def monomial_weight(self, exponents: Sequence[int]) -> int:
        return sum(e * w for e, w in zip(exponents, self.weights))

    def extend(self, names: Sequence[str], weights: Sequence[int], prepend: bool = False) -> "WeightedRing":
        """A new ring with extra variables (used for elimination tricks)."""
        if prepend:
            return WeightedRing(
                tuple(names) + self.variables, tuple(weights) + self.weights, self.field
            )
        return WeightedRing(
            self.variables + tuple(names), self.weights + tuple(weights), self.field
        )

    def monomials_of_weight(self, d: int) -> list:
        """All exponent tuples of weighted degree exactly d (d >= 0)."""
        out = []
        n = self.nvars
        ws = self.weights

        def rec(i, remaining, prefix):
            if i == n - 1:
                q, r = divmod(remaining, ws[i])
                if r == 0:
                    out.append(tuple(prefix + [q]))
                return
            w = ws[i]
            for e in range(remaining // w + 1):
                rec(i + 1, remaining - e * w, prefix + [e])

        if d >= 0:
            rec(0, d, [])
        return out

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)


def _mon_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: tuple, b: tuple) -> bool:
    """True when monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(b: tuple, a: tuple) -> tuple:
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


class Inhomogeneous:
    """Marker returned when a polynomial mixes weighted degrees."""

    __slots__ = ("degrees",)

    def __init__(self, degrees):
        self.degrees = tuple(sorted(degrees))

    def __repr__(self):
        return f"Inhomogeneous(degrees={self.degrees})"

    def __eq__(self, other):
        return isinstance(other, Inhomogeneous) and self.degrees == other.degrees


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: WeightedRing, terms: dict):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- basic queries ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self):
        if not self.terms:
            return field_zero(self.ring.field)
        zero = (0,) * self.ring.nvars
        if set(self.terms) != {zero}:
            raise RingError("not a constant polynomial")
        return self.terms[zero]

    def num_terms(self) -> int:
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.terms:
            return o
        if not o.terms:
            return self
        terms = dict(self.terms)
        for m, c in o.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        if not o.terms:
            return self
        terms = dict(self.terms)
        for m, c in o.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = -c
            else:
                s = s - c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Polynomial(self.ring, terms)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = coerce_scalar(other, self.ring.field)
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {m: a * c for m, a in self.terms.items()})
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.terms or not o.terms:
            return self.ring.zero()
        # multiply the smaller polynomial into the larger one
        a, b = (self.terms, o.terms) if len(self.terms) <= len(o.terms) else (o.terms, self.terms)
        terms: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                c = ca * cb
                s = terms.get(m)
                if s is None:
                    terms[m] = c
                else:
                    s = s + c
                    if s:
                        terms[m] = s
                    else:
                        del terms[m]
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = coerce_scalar(other, self.ring.field)
            if not c:
                raise ZeroDivisionError("division by zero scalar")
            inv = 1 / c if isinstance(c, GaussianRational) else Fraction(1) / c
            return self * inv
        if isinstance(other, Polynomial):
            if other.is_constant():
                return self / other.constant_value()
            raise RingError("polynomial division only by nonzero constants here")
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise RingError("only non-negative integer powers")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- grading -----------------------------------------------------------

    def weighted_degrees(self) -> set:
        mw = self.ring.monomial_weight
        return {mw(m) for m in self.terms}

    def weighted_degree(self):
        """The common weighted degree, an Inhomogeneous marker, or a
        ValueError for the zero polynomial (which has no degree)."""
        if not self.terms:
            raise ValueError("the zero polynomial has no weighted degree")
        degrees = self.weighted_degrees()
        if len(degrees) == 1:
            return next(iter(degrees))
        mw = self.ring.monomial_weight
        return Inhomogeneous(mw(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return not self.terms or len(self.weighted_degrees()) == 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        mw = self.ring.monomial_weight
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if mw(m) == d})

    def max_weighted_degree(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no weighted degree")
        mw = self.ring.monomial_weight
        return max(mw(m) for m in self.terms)

    # -- calculus ------------------------------------------------------------

    def derivative(self, var) -> "Polynomial":
        i = var if isinstance(var, int) else self.ring.var_index(var)
        terms: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            dm = list(m)
            dm[i] = e - 1
            dm = tuple(dm)
            nc = c * e
            s = terms.get(dm)
            if s is None:
                terms[dm] = nc
            else:
                s = s + nc
                if s:
                    terms[dm] = s
                else:
                    del terms[dm]
        return Polynomial(self.ring, terms)

    def substitute(self, assignment: dict) -> "Polynomial":
        """Substitute polynomials for variables (total or partial)."""
        ring = self.ring
        images = []
        for v in ring.variables:
            if v in assignment:
                img = assignment[v]
                if isinstance(img, (int, Fraction, GaussianRational)):
                    img = ring.constant(img)
                images.append(img)
            else:
                images.append(ring.variable(v))
        target = None
        for img in images:
            if isinstance(img, Polynomial):
                target = img.ring
                break
        if target is None:
            target = ring
        result = target.zero()
        for m, c in self.terms.items():
            term = target.constant(c)
            for e, img in zip(m, images):
                if e:
                    term = term * (img ** e)
            result = result + term
        return result

    def map_to(self, other: WeightedRing) -> "Polynomial":
        """Transport along a variable-name-preserving inclusion of rings."""
        idx = [other.var_index(v) for v in self.ring.variables]
        terms = {}
        for m, c in self.terms.items():
            exp = [0] * other.nvars
            for e, j in zip(m, idx):
                exp[j] = e
            terms[tuple(exp)] = coerce_scalar(c, other.field)
        return Polynomial(other, terms)

    # -- printing ------------------------------------------------------------

    def sorted_terms(self) -> list:
        """Terms sorted descending by weighted degree then reverse-lex."""
        mw = self.ring.monomial_weight

        def key(m):
            return (mw(m), tuple(-e for e in reversed(m)))

        return sorted(self.terms.items(), key=lambda kv: key(kv[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        names = self.ring.variables
        for m, c in self.sorted_terms():
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            cs = str(c)
            negate = False
            if isinstance(c, GaussianRational) and (c.im != 0 and c.re != 0):
                cs = f"({cs})"
            elif cs.startswith("-"):
                negate = True
                cs = cs.lstrip("-")
            if factors and cs == "1":
                body = "*".join(factors)
            elif factors:
                body = cs + "*" + "*".join(factors)
            else:
                body = cs
            if not parts:
                parts.append(("-" if negate else "") + body)
            else:
                parts.append(("-" if negate else "+") + body)
        return "".join(parts)

    def __repr__(self):
        return f"<poly {self} over {self.ring!r}>"


# -- parsing -------------------------------------------------------------


class ParseError(ValueError):
    pass


class _Parser:
    """Recursive-descent parser for the textual polynomial syntax.

    Accepts integers, variables, ``i`` (gaussian rings), ``+ - * / ^``
    and parentheses; whitespace is ignored.  Division is only allowed by
    nonzero constants.
    """

    def __init__(self, ring: WeightedRing, text: str):
        self.ring = ring
        self.text = text
        self.pos = 0
        self.tokens = self._tokenize(text)
        self.ti = 0

    def _tokenize(self, text):
        tokens = []
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                tokens.append(("int", text[i:j]))
                i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                tokens.append(("name", text[i:j]))
                i = j
                continue
            if ch in "+-*/^()":
                tokens.append((ch, ch))
                i += 1
                continue
            raise ParseError(f"unexpected character {ch!r} at position {i}")
        tokens.append(("end", ""))
        return tokens

    def peek(self):
        return self.tokens[self.ti][0]

    def take(self):
        tok = self.tokens[self.ti]
        self.ti += 1
        return tok

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.peek() != "end":
            raise ParseError(f"trailing input near token {self.tokens[self.ti][1]!r}")
        return p

    def expr(self) -> Polynomial:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        p = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            q = self.factor()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ParseError("division only by nonzero constants")
                p = p / q.constant_value()
        return p

    def factor(self) -> Polynomial:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        if self.peek() == "+":
            self.take()
            return self.factor()
        p = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            while self.peek() == "-":
                raise ParseError("negative exponents are not supported")
            kind, val = self.take()
            if kind != "int":
                raise ParseError("exponent must be an integer literal")
            p = p ** int(val)
        return p

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "int":
            return self.ring.constant(int(val))
        if kind == "name":
            if val == "i" and self.ring.field == GAUSSIAN and "i" not in self.ring._index:
                return self.ring.imaginary_unit()
            return self.ring.variable(val)
        if kind == "(":
            p = self.expr()
            if self.take()[0] != ")":
                raise ParseError("missing closing parenthesis")
            return p
        raise ParseError(f"unexpected token {val!r}")


def parse_polynomial(ring: WeightedRing, text: str) -> Polynomial:
    return _Parser(ring, text).parse()


# -- module-level operations required of the ring layer -------------------


def weighted_degree(p: Polynomial):
    return p.weighted_degree()


def partial_derivative(p: Polynomial, var) -> Polynomial:
    return p.derivative(var)


def is_quasi_homogeneous(gens: Iterable[Polynomial]):
    """True plus the degree list when every generator is weighted-homogeneous."""
    degrees = []
    for g in gens:
        if g.is_zero():
            degrees.append(None)
            continue
        d = g.weighted_degree()
        if isinstance(d, Inhomogeneous):
            return False, []
        degrees.append(d)
    return True, degrees


def z_substitution(ring: WeightedRing, z_pairs: Sequence, exponents: Sequence[int]) -> Polynomial:
    """Expand a monomial in z_k = p_k + i q_k and conj(z_k) coordinates.

    ``z_pairs`` lists (p_name, q_name) per complex coordinate; ``exponents``
    gives, per coordinate, the pair (power of z_k, power of conj(z_k))
    flattened as [a1, b1, a2, b2, ...].
    """
    if ring.field != GAUSSIAN:
        raise RingError("complex substitution requires a gaussian ring")
    if len(exponents) != 2 * len(z_pairs):
        raise RingError("need one (z, zbar) exponent pair per complex coordinate")
    iu = ring.imaginary_unit()
    result = ring.one()
    for k, (pn, qn) in enumerate(z_pairs):
        a, b = exponents[2 * k], exponents[2 * k + 1]
        z = ring.variable(pn) + iu * ring.variable(qn)
        zbar = ring.variable(pn) - iu * ring.variable(qn)
        if a:
            result = result * z ** a
        if b:
            result = result * zbar ** b
    return result
