"""Quotient rings, their fraction fields, homomorphisms and ranks.

A quotient ring holds a reduced Groebner basis of its defining ideal, so
normal forms and ring equality are canonical.  Fraction fields are only
formed over rings asserted to be domains; over a plain polynomial ring the
fractions are normalized by exact multivariate gcd, elsewhere equality
falls back to cross multiplication modulo the ideal.

``FiniteAlgebra`` presents the target of a homomorphism A -> B as a
finite-dimensional algebra over Frac(A); it backs both the exact generic
rank and all generic-fiber linear algebra elsewhere in the package.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import (DegenerateSpecialization, HomNotOverBase, NotAHomomorphism,
                     NotModuleFinite, ZeroDenominator)
from .groebner import (groebner_ideal, ideal_contains_one, normal_form,
                       reduce_poly)
from .linalg import solve
from .polyring import Poly, PolyRing, format_poly, mono_div
from .scalars import FieldElement


class QuotientRing:
    """k[vars]/(gens), with gens = () meaning the polynomial ring itself."""

    def __init__(self, ring, gens=()):
        self.ring = ring
        self.gens = tuple(g for g in gens if not g.is_zero())
        for g in self.gens:
            if g.ring != ring:
                raise TypeError("ideal generator from a different ring")
        self.gb = groebner_ideal(list(self.gens), ring) if self.gens else ()

    @property
    def is_poly_ring(self):
        return not self.gens

    def nf(self, p):
        if p.ring != self.ring:
            raise TypeError("element from a different ring")
        if not self.gb:
            return p
        return normal_form(p, list(self.gb))

    def is_zero(self, p):
        return self.nf(p).is_zero()

    def is_trivial(self):
        return ideal_contains_one(self.gb)

    def serial(self):
        """Canonical identity of the ring: variables plus reduced basis."""
        return (self.ring.vars, self.ring.order,
                tuple(format_poly(g) for g in self.gb))

    def __eq__(self, other):
        return (isinstance(other, QuotientRing) and self.ring == other.ring
                and self.gb == other.gb)

    def __hash__(self):
        return hash((self.ring, self.gb))

    def __repr__(self):
        if not self.gens:
            return "QuotientRing(k[%s])" % ", ".join(self.ring.vars)
        return "QuotientRing(k[%s]/(%s))" % (
            ", ".join(self.ring.vars), ", ".join(str(g) for g in self.gb))


# --- exact multivariate gcd (for fraction normalization) -------------------

def exact_div(f, g):
    """f/g when g divides f exactly, else None."""
    if f.is_zero():
        return f.ring.zero
    if g.is_zero():
        return None
    r, quots = reduce_poly(f, [g])
    if not r.is_zero():
        return None
    return quots[0]


def _used_vars(f, g):
    out = []
    for i in range(f.ring.nvars):
        if f.degree_in(i) > 0 or g.degree_in(i) > 0:
            out.append(i)
    return out


def _coeffs_in(f, xi):
    """f as a coefficient list in powers of variable xi (low to high)."""
    ring = f.ring
    deg = f.degree_in(xi)
    out = [ring.zero] * (deg + 1)
    for m, c in f.terms.items():
        e = m[xi]
        rest = list(m)
        rest[xi] = 0
        out[e] = out[e] + ring.monomial(tuple(rest), c)
    while len(out) > 1 and out[-1].is_zero():
        out.pop()
    return out


def _from_coeffs(ring, xi, coeffs):
    acc = ring.zero
    x = ring.var(xi)
    for e, c in enumerate(coeffs):
        if not c.is_zero():
            acc = acc + c * x ** e
    return acc


def _prem(a, b):
    """Pseudo-remainder of coefficient lists (coefficients are Polys)."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        lr = r[-1]
        r = [lb * c for c in r]
        for i, bc in enumerate(b):
            r[i + k] = r[i + k] - lr * bc
        while r and r[-1].is_zero():
            r.pop()
    return r


def poly_gcd(f, g):
    """Normalized gcd over the coefficient field (primitive PRS)."""
    ring = f.ring
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    used = _used_vars(f, g)
    if not used:
        return ring.one
    xi = used[-1]
    fa, fcont = _primitive(f, xi)
    ga, gcont = _primitive(g, xi)
    cont = poly_gcd(fcont, gcont)
    a = _coeffs_in(fa, xi)
    b = _coeffs_in(ga, xi)
    if len(a) < len(b):
        a, b = b, a
    while True:
        if not b:
            h = _from_coeffs(ring, xi, a)
            break
        if len(b) == 1:
            h = ring.one
            break
        r = _prem(a, b)
        a, b = b, r
        if b:
            prim, _ = _primitive(_from_coeffs(ring, xi, b), xi)
            b = _coeffs_in(prim, xi)
    h, _ = _primitive(h, xi)
    return (cont * h).monic()


def _primitive(f, xi):
    """(primitive part, content) of f with respect to variable xi."""
    coeffs = [c for c in _coeffs_in(f, xi) if not c.is_zero()]
    cont = coeffs[0]
    for c in coeffs[1:]:
        cont = poly_gcd(cont, c)
        if cont.is_one():
            break
    if cont.is_one():
        return f, f.ring.one
    out = exact_div(f, cont)
    if out is None:
        raise AssertionError("content failed to divide")
    return out, cont


# --- fraction fields -------------------------------------------------------

class FractionField:
    """Frac(R) for a quotient ring R asserted to be a domain.

    Satisfies the same element protocol as the scalar fields, so it can be
    the coefficient field of a ``PolyRing``.
    """

    is_extension = False

    def __init__(self, base):
        self.base = base

    def __eq__(self, other):
        return isinstance(other, FractionField) and self.base == other.base

    def __hash__(self):
        return hash(("frac", self.base))

    def __repr__(self):
        return "Frac(%r)" % self.base

    @property
    def zero(self):
        return FracElement(self, self.base.ring.zero, self.base.ring.one)

    @property
    def one(self):
        return FracElement(self, self.base.ring.one, self.base.ring.one)

    def from_fraction(self, q):
        return FracElement(self, self.base.ring.const(Fraction(q)),
                           self.base.ring.one)

    def from_base_scalar(self, c):
        return FracElement(self, self.base.ring.const(c), self.base.ring.one)

    def from_poly(self, p):
        return FracElement(self, p, self.base.ring.one)

    def from_var(self, i):
        return self.from_poly(self.base.ring.var(i))


class FracElement:
    """num/den with both parts reduced modulo the base ideal."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den, normalize=True):
        base = field.base
        if normalize:
            num = base.nf(num)
            den = base.nf(den)
            if den.is_zero():
                raise ZeroDenominator("zero denominator: (%s)/(%s)" % (num, den))
            if num.is_zero():
                den = base.ring.one
            elif base.is_poly_ring:
                g = poly_gcd(num, den)
                if not g.is_one():
                    num2 = exact_div(num, g)
                    den2 = exact_div(den, g)
                    if num2 is None or den2 is None:
                        raise AssertionError("gcd failed to divide")
                    num, den = num2, den2
                lc = den.leading()[1]
                if not lc.is_one():
                    inv = lc.inverse()
                    num = num.scale(inv)
                    den = den.scale(inv)
            else:
                lc = den.leading()[1]
                if not lc.is_one():
                    inv = lc.inverse()
                    num = base.nf(num.scale(inv))
                    den = base.nf(den.scale(inv))
        self.field = field
        self.num = num
        self.den = den

    def _coerce(self, other):
        if isinstance(other, FracElement):
            if other.field != self.field:
                raise TypeError("mixed fraction fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_fraction(other)
        if isinstance(other, FieldElement):
            return self.field.from_base_scalar(other)
        if isinstance(other, Poly):
            if other.ring != self.field.base.ring:
                raise TypeError("polynomial from a different ring")
            return self.field.from_poly(other)
        return None

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return (self - self.field.one).is_zero()

    def as_poly(self):
        """The numerator when the denominator is 1, else None."""
        return self.num if self.den.is_one() else None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FracElement(self.field,
                           self.num * o.den + o.num * self.den,
                           self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FracElement(self.field, -self.num, self.den, normalize=False)

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
        return FracElement(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverting zero fraction")
        return FracElement(self.field, self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        acc = self.field.one
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.field.base.is_zero(self.num * o.den - o.num * self.den)

    def __hash__(self):
        # canonical only over a polynomial base; elsewhere collide safely
        if self.field.base.is_poly_ring:
            return hash((self.num, self.den))
        return 0

    def __str__(self):
        if self.den.is_one():
            return format_poly(self.num)
        return "(%s)/(%s)" % (format_poly(self.num), format_poly(self.den))

    __repr__ = __str__


# --- homomorphisms ---------------------------------------------------------

class RingHom:
    """Ring map between quotient rings, given by variable images.

    Construction verifies that every defining relation of the source maps
    into the target ideal.
    """

    def __init__(self, source, target, images, check=True):
        self.source = source
        self.target = target
        if len(images) != source.ring.nvars:
            raise ValueError("need one image per source variable")
        self.images = tuple(target.nf(p) for p in images)
        for p in self.images:
            if p.ring != target.ring:
                raise TypeError("image from a different ring")
        if check:
            for g in source.gens:
                val = self.apply(g)
                if not val.is_zero():
                    raise NotAHomomorphism(
                        "relation %s maps to %s != 0" % (g, val),
                        detail=(g, val))

    @classmethod
    def identity(cls, qring):
        return cls(qring, qring,
                   [qring.ring.var(i) for i in range(qring.ring.nvars)],
                   check=False)

    def apply(self, p):
        """Image of a source polynomial, reduced in the target."""
        val = p.subs(list(self.images), self.target.ring)
        return self.target.nf(val)

    def apply_frac(self, fe, target_field=None):
        """Image of a fraction; the denominator must stay nonzero."""
        tf = target_field or FractionField(self.target)
        num = self.apply(fe.num)
        den = self.apply(fe.den)
        if den.is_zero():
            raise ZeroDenominator(
                "denominator %s maps to zero" % fe.den)
        return FracElement(tf, num, den)

    def __eq__(self, other):
        return (isinstance(other, RingHom) and self.source == other.source
                and self.target == other.target
                and self.images == other.images)

    def __hash__(self):
        return hash((self.source, self.target, self.images))

    def __repr__(self):
        body = ", ".join("%s -> %s" % (v, p)
                         for v, p in zip(self.source.ring.vars, self.images))
        return "RingHom(%s)" % body


def compose(outer, inner):
    """outer after inner."""
    if inner.target != outer.source:
        raise TypeError("homomorphisms do not compose")
    return RingHom(inner.source, outer.target,
                   [outer.apply(p) for p in inner.images], check=False)


def check_over_base(total, base_map, candidate):
    """Check candidate : B -> B' commutes with the structure maps from A.

    ``total``: A -> B', ``base_map``: A -> B.  Raises HomNotOverBase.
    """
    got = compose(candidate, base_map)
    for v, a, b in zip(total.source.ring.vars, got.images, total.images):
        if not total.target.is_zero(a - b):
            raise HomNotOverBase(
                "base variable %s: %s != %s" % (v, a, b),
                detail=(v, a, b))


# --- finite algebras over the generic point --------------------------------

def _finite_dim_data(gb, ring):
    """(dim, standard monomials) of ring/gb, or None when infinite."""
    if ideal_contains_one(gb):
        return 0, []
    leads = [g.leading()[0] for g in gb]
    bounds = []
    for j in range(ring.nvars):
        b = None
        for m in leads:
            if m[j] > 0 and all(m[i] == 0 for i in range(ring.nvars) if i != j):
                b = m[j] if b is None else min(b, m[j])
        if b is None:
            return None
        bounds.append(b)
    std = []

    def walk(prefix):
        if len(prefix) == ring.nvars:
            mono = tuple(prefix)
            for m in leads:
                if mono_div(mono, m) is not None:
                    return
            std.append(mono)
            return
        for e in range(bounds[len(prefix)]):
            walk(prefix + [e])

    walk([])
    std.sort(key=ring.order_key)
    return len(std), std


class FiniteAlgebra:
    """Target of A -> B tensored up to Frac(A), as a finite L-algebra.

    Raises NotModuleFinite when the generic fiber is not finite.  The
    standard monomial basis and coordinate maps back every generic-point
    computation in the package.
    """

    def __init__(self, hom):
        self.hom = hom
        self.L = FractionField(hom.source)
        src_ring = hom.source.ring
        tgt = hom.target
        cm = self.L.from_base_scalar
        self.ring_L = PolyRing(self.L, tgt.ring.vars, "degrevlex")
        gens = [g.cast(self.ring_L, cm) for g in tgt.gens]
        for i in range(src_ring.nvars):
            gens.append(hom.images[i].cast(self.ring_L, cm)
                        - self.ring_L.const(self.L.from_var(i)))
        self.gb = groebner_ideal(gens, self.ring_L)
        data = _finite_dim_data(self.gb, self.ring_L)
        if data is None:
            raise NotModuleFinite(
                "generic fiber of %r is not finite" % hom)
        self.dim, self.std = data
        self._std_index = {m: i for i, m in enumerate(self.std)}

    def from_target(self, p):
        return p.cast(self.ring_L, self.L.from_base_scalar)

    def nf(self, p_L):
        return normal_form(p_L, list(self.gb)) if self.gb else p_L

    def coords(self, p_L):
        """Coordinates of nf(p) in the standard monomial basis."""
        r = self.nf(p_L)
        out = [self.L.zero] * self.dim
        for m, c in r.terms.items():
            out[self._std_index[m]] = c
        return out

    def mul_matrix(self, p_L):
        """Columns: coordinates of p * (each standard monomial)."""
        cols = []
        for m in self.std:
            cols.append(self.coords(p_L * self.ring_L.monomial(m)))
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def inverse(self, p_L):
        """Multiplicative inverse in the algebra, or None."""
        if self.dim == 0:
            return None
        mat = self.mul_matrix(p_L)
        rhs = self.coords(self.ring_L.one)
        sol = solve(mat, rhs, self.L.zero)
        if sol is None:
            return None
        acc = self.ring_L.zero
        for c, m in zip(sol, self.std):
            acc = acc + self.ring_L.monomial(m, c)
        return acc


def generic_rank(hom, strategy="exact", seed=0):
    """Degree of the generic fiber of Spec(target) -> Spec(source).

    ``exact`` computes over Frac(source).  ``specialize`` plugs random
    integer points into the source variables (which must be a free
    polynomial ring) and takes a majority vote over at least three
    nondegenerate fibers.
    """
    if strategy == "exact":
        return FiniteAlgebra(hom).dim
    if strategy != "specialize":
        raise ValueError("unknown strategy %r" % strategy)
    if not hom.source.is_poly_ring:
        raise DegenerateSpecialization(
            "specialization needs a free polynomial base")
    rng = random.Random(seed)
    tgt = hom.target
    field = tgt.ring.field
    dims = []
    infinite = 0
    for _ in range(12):
        point = [field.from_fraction(rng.randint(-10000, 10000))
                 for _ in range(hom.source.ring.nvars)]
        gens = list(tgt.gens)
        for img, c in zip(hom.images, point):
            gens.append(img - tgt.ring.const(c))
        gb = groebner_ideal(gens, tgt.ring)
        data = _finite_dim_data(gb, tgt.ring)
        if data is None:
            infinite += 1
            continue
        d, _ = data
        if d == 0:
            continue  # empty fiber, degenerate point
        dims.append(d)
        if len(dims) >= 3:
            counts = sorted(((dims.count(v), v) for v in set(dims)),
                            reverse=True)
            if counts[0][0] * 2 > len(dims):
                return counts[0][1]
    if infinite >= 12:
        raise NotModuleFinite("every sampled fiber was infinite")
    raise DegenerateSpecialization(
        "no stable majority after %d specializations" % (len(dims) + infinite))


def localize(qring, f):
    """Invert f: returns (localized ring, canonical map into it)."""
    f = qring.nf(f)
    if f.is_zero():
        raise ZeroDenominator("localizing at zero")
    name = "inv"
    n = 2
    while name in qring.ring.vars or (qring.ring.field.is_extension
                                      and name == qring.ring.field.varname):
        name = "inv%d" % n
        n += 1
    new_ring = PolyRing(qring.ring.field, qring.ring.vars + (name,),
                        qring.ring.order)
    gens = [g.cast(new_ring) for g in qring.gens]
    gens.append(f.cast(new_ring) * new_ring.var(name) - new_ring.one)
    loc = QuotientRing(new_ring, gens)
    hom = RingHom(qring, loc,
                  [new_ring.var(i) for i in range(qring.ring.nvars)],
                  check=False)
    return loc, hom
