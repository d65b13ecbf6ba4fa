"""Multivariate polynomials over an exact field.

Monomials are exponent tuples.  A polynomial is an immutable term map tied
to a ring descriptor that fixes the coefficient field, the variable names
and the monomial order (degrevlex by default, lex for elimination work).
Equality, hashing and printing all go through one canonical term ordering,
so two equal polynomials always print identically.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import FieldElement, format_scalar


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))

def mono_div(a, b):
    """a / b, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)

def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))

def mono_deg(a):
    return sum(a)


class PolyRing:
    """Ring descriptor: field, ordered variable names, monomial order."""

    def __init__(self, field, varnames, order="degrevlex"):
        if order not in ("degrevlex", "lex"):
            raise ValueError("unknown monomial order %r" % order)
        self.field = field
        self.vars = tuple(varnames)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("duplicate variable names")
        if field.is_extension and field.varname in self.vars:
            raise ValueError("variable %r shadows the field generator"
                             % field.varname)
        self.order = order
        self.nvars = len(self.vars)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.vars == other.vars and self.order == other.order)

    def __hash__(self):
        return hash((self.field, self.vars, self.order))

    def __repr__(self):
        return "PolyRing(%s; %s)" % (", ".join(self.vars), self.order)

    def order_key(self, mono):
        """Sort key: ascending in the ring's monomial order."""
        if self.order == "lex":
            return mono
        return (mono_deg(mono), tuple(-e for e in reversed(mono)))

    # -- constructors --

    @property
    def zero(self):
        return Poly(self, {})

    @property
    def one(self):
        return self.const(self.field.one)

    def const(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            scalar = self.field.from_fraction(scalar)
        if scalar.is_zero():
            return Poly(self, {})
        return Poly(self, {(0,) * self.nvars: scalar})

    def var(self, name_or_index):
        if isinstance(name_or_index, str):
            idx = self.vars.index(name_or_index)
        else:
            idx = name_or_index
        mono = [0] * self.nvars
        mono[idx] = 1
        return Poly(self, {tuple(mono): self.field.one})

    def monomial(self, mono, coeff=None):
        c = self.field.one if coeff is None else coeff
        if isinstance(c, (int, Fraction)):
            c = self.field.from_fraction(c)
        if c.is_zero():
            return self.zero
        return Poly(self, {tuple(mono): c})

    def from_terms(self, terms):
        """Build from an iterable of (mono, coeff), summing duplicates."""
        acc = {}
        for mono, c in terms:
            if isinstance(c, (int, Fraction)):
                c = self.field.from_fraction(c)
            cur = acc.get(mono)
            c = c if cur is None else cur + c
            if c.is_zero():
                acc.pop(mono, None)
            else:
                acc[mono] = c
        return Poly(self, acc)


class Poly:
    """Immutable polynomial.  Do not mutate ``terms`` after construction."""

    __slots__ = ("ring", "terms", "_key")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._key = None

    def sorted_terms(self):
        """Terms in descending monomial order; cached, canonical."""
        if self._key is None:
            order = sorted(self.terms, key=self.ring.order_key, reverse=True)
            self._key = tuple((m, self.terms[m]) for m in order)
        return self._key

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return (self - self.ring.one).is_zero()

    def is_constant(self):
        return all(mono_deg(m) == 0 for m in self.terms)

    def constant_value(self):
        """The scalar value of a constant polynomial."""
        if not self.terms:
            return self.ring.field.zero
        [(m, c)] = list(self.terms.items())
        if mono_deg(m) != 0:
            raise ValueError("not a constant: %s" % self)
        return c

    def leading(self):
        """(monomial, coeff) of the leading term; error on zero."""
        m = max(self.terms, key=self.ring.order_key)
        return m, self.terms[m]

    def total_degree(self):
        if not self.terms:
            return -1
        return max(mono_deg(m) for m in self.terms)

    def degree_in(self, idx):
        if not self.terms:
            return -1
        return max(m[idx] for m in self.terms)

    def monic(self):
        if self.is_zero():
            return self
        _, c = self.leading()
        if c.is_one():
            return self
        inv = c.inverse()
        return Poly(self.ring, {m: v * inv for m, v in self.terms.items()})

    # -- arithmetic --

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise TypeError("mixed rings: %r vs %r" % (self.ring, other.ring))
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            cur = out.get(m)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = mono_mul(m1, m2)
                p = c1 * c2
                cur = out.get(m)
                p = p if cur is None else cur + p
                if p.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = p
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative polynomial power")
        acc = self.ring.one
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def scale(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            scalar = self.ring.field.from_fraction(scalar)
        if scalar.is_zero():
            return self.ring.zero
        return Poly(self.ring, {m: c * scalar for m, c in self.terms.items()})

    def term_mul(self, mono, coeff):
        """Multiply by a single term; used heavily in division loops."""
        if coeff.is_zero():
            return self.ring.zero
        return Poly(self.ring,
                    {mono_mul(m, mono): c * coeff for m, c in self.terms.items()})

    # -- calculus and substitution --

    def derivative(self, idx):
        out = {}
        for m, c in self.terms.items():
            e = m[idx]
            if e == 0:
                continue
            dm = list(m)
            dm[idx] = e - 1
            nc = c * e
            if not nc.is_zero():
                out[tuple(dm)] = nc
        return Poly(self.ring, out)

    def subs(self, images, target_ring, coeff_map=None):
        """Evaluate at ``images`` (one target polynomial per variable).

        ``coeff_map`` converts scalars between fields; identity by default.
        """
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        cm = coeff_map or (lambda c: c)
        acc = target_ring.zero
        for m, c in self.terms.items():
            part = target_ring.const(cm(c))
            for idx, e in enumerate(m):
                if e:
                    part = part * images[idx] ** e
            acc = acc + part
        return acc

    def evaluate(self, values):
        """Value at a point; ``values`` are field elements."""
        f = self.ring.field
        acc = f.zero
        for m, c in self.terms.items():
            part = c
            for idx, e in enumerate(m):
                if e:
                    part = part * values[idx] ** e
            acc = acc + part
        return acc

    def cast(self, target_ring, coeff_map=None):
        """Move to another ring, matching variables by name.

        Variables missing from the target are allowed only when they do
        not occur in this polynomial.
        """
        positions = []
        for idx, v in enumerate(self.ring.vars):
            if v in target_ring.vars:
                positions.append(target_ring.vars.index(v))
            else:
                if self.degree_in(idx) > 0:
                    raise ValueError("variable %s missing from target ring" % v)
                positions.append(None)
        cm = coeff_map or (lambda c: c)
        out = {}
        for m, c in self.terms.items():
            nm = [0] * target_ring.nvars
            for idx, e in enumerate(m):
                if e:
                    nm[positions[idx]] = e
            out[tuple(nm)] = cm(c)
        return target_ring.from_terms(out.items())

    # -- identity and text --

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.ring, self.sorted_terms()))

    def sort_value(self):
        """Comparable canonical key, for deterministic row ordering."""
        return tuple((self.ring.order_key(m), _coeff_sort_value(c))
                     for m, c in self.sorted_terms())

    def __str__(self):
        return format_poly(self)

    __repr__ = __str__


def _coeff_sort_value(c):
    if not isinstance(c, FieldElement):
        return (str(c),)
    if c.field.is_extension:
        return tuple(c.data)
    return (c.data,)


def _coeff_repr(c):
    """(negative, body, atomic) for embedding a scalar in a product."""
    if not isinstance(c, FieldElement):
        return False, "(" + str(c) + ")", False
    if not c.field.is_extension:
        q = c.data
        return q < 0, str(abs(q)), True
    nonzero = [(k, v) for k, v in enumerate(c.data) if v != 0]
    if len(nonzero) == 1:
        k, v = nonzero[0]
        w = c.field.varname
        if k == 0:
            return v < 0, str(abs(v)), True
        head = "" if abs(v) == 1 else str(abs(v)) + "*"
        return v < 0, head + w + ("^%d" % k if k > 1 else ""), True
    return False, "(" + format_scalar(c) + ")", False


def format_poly(p):
    """Canonical text, terms in descending monomial order."""
    if p.is_zero():
        return "0"
    ring = p.ring
    pieces = []
    for mono, c in p.sorted_terms():
        neg, cbody, _ = _coeff_repr(c)
        factors = []
        for idx, e in enumerate(mono):
            if e == 1:
                factors.append(ring.vars[idx])
            elif e > 1:
                factors.append("%s^%d" % (ring.vars[idx], e))
        if not factors:
            body = cbody
        elif cbody == "1":
            body = "*".join(factors)
        else:
            body = cbody + "*" + "*".join(factors)
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


class Ideal:
    """A finitely generated ideal, by its generator list."""

    def __init__(self, ring, gens):
        self.ring = ring
        self.gens = tuple(g for g in gens if not g.is_zero())
        for g in self.gens:
            if g.ring != ring:
                raise TypeError("generator from a different ring")

    def __repr__(self):
        return "Ideal(%s)" % ", ".join(str(g) for g in self.gens) if self.gens \
            else "Ideal(0)"


class GroebnerBasis:
    """A reduced Groebner basis, tagged with its ring (hence its order)."""

    def __init__(self, ring, gens):
        self.ring = ring
        self.gens = tuple(gens)

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __getitem__(self, i):
        return self.gens[i]

    def __repr__(self):
        return "GroebnerBasis(%s)" % ", ".join(str(g) for g in self.gens)
