"""Exact scalar fields: the rationals and simple extensions Q[w]/(m(w)).

Extension elements are coefficient vectors over Q reduced modulo a monic
minimal polynomial.  Irreducibility of the minimal polynomial is proved when
cheap (rational root test settles degree <= 3, one good prime settles any
degree) and otherwise probed modulo small primes; a polynomial that factors
modulo every test prime is accepted with a warning recorded on the field.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .errors import NotMonic, ReducibleMinpoly

_PROBE_PRIME_COUNT = 25


def _small_primes(count, skip):
    """First ``count`` primes not in ``skip``, by trial division."""
    primes = []
    n = 2
    while len(primes) < count:
        if all(n % p for p in range(2, int(n ** 0.5) + 1)):
            if n not in skip:
                primes.append(n)
        n += 1
    return primes


# --- dense univariate helpers over Q (lists, index = degree) ---------------

def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c

def _poly_mul_q(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)

def _poly_divmod_q(a, b):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(a) >= len(b) and _trim(a):
        if not a:
            break
        k = len(a) - len(b)
        c = a[-1] * inv
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        _trim(a)
    return _trim(q), a

def _poly_sub_q(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)

def _poly_xgcd_q(a, b):
    """Extended gcd; returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = _trim(list(a)), _trim(list(b))
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = _poly_divmod_q(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub_q(s0, _poly_mul_q(q, s1))
        t0, t1 = t1, _poly_sub_q(t0, _poly_mul_q(q, t1))
    if r0:
        lc = r0[-1]
        r0 = [c / lc for c in r0]
        s0 = [c / lc for c in s0]
        t0 = [c / lc for c in t0]
    return r0, s0, t0


# --- dense univariate helpers over F_p -------------------------------------

def _trim_p(c):
    while c and c[-1] == 0:
        c.pop()
    return c

def _mul_p(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim_p(out)

def _mod_p(a, m, p):
    a = list(a)
    inv = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv % p
        k = len(a) - len(m)
        for i, y in enumerate(m):
            a[i + k] = (a[i + k] - c * y) % p
        _trim_p(a)
    return a

def _gcd_p(a, b, p):
    while b:
        a, b = b, _mod_p(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a

def _powmod_x_p(e, m, p):
    """x^e mod m over F_p by square and multiply."""
    result = [1]
    base = _mod_p([0, 1], m, p)
    while e:
        if e & 1:
            result = _mod_p(_mul_p(result, base, p), m, p)
        base = _mod_p(_mul_p(base, base, p), m, p)
        e >>= 1
    return result

def _factor_shape_p(f, p):
    """Multiset of factor degrees of squarefree f over F_p, via
    distinct-degree splitting.  Returns None if f is not squarefree mod p."""
    fp = [c % p for c in f]
    _trim_p(fp)
    if len(fp) != len(f):
        return None
    deriv = _trim_p([c * i % p for i, c in enumerate(fp)][1:])
    if _gcd_p(list(fp), list(deriv), p) != [1]:
        return None
    shape = []
    rest = list(fp)
    d = 0
    while len(rest) - 1 > 0:
        d += 1
        if 2 * d > len(rest) - 1:
            shape.append(len(rest) - 1)
            break
        xq = _powmod_x_p(p ** d, rest, p)
        xq = list(xq)
        # x^(p^d) - x
        while len(xq) < 2:
            xq.append(0)
        xq[1] = (xq[1] - 1) % p
        g = _gcd_p(list(rest), _trim_p(xq), p)
        if len(g) > 1:
            shape.extend([d] * ((len(g) - 1) // d))
            rest, _ = _divmod_p(rest, g, p)
    return sorted(shape)

def _divmod_p(a, b, p):
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] = (a[i + k] - c * y) % p
        _trim_p(a)
    return _trim_p(q), a


def _has_rational_root(coeffs):
    """Exact rational root test on a monic polynomial over Q."""
    denom_lcm = 1
    for c in coeffs:
        denom_lcm = denom_lcm * c.denominator // int_gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in coeffs]
    if ints[0] == 0:
        return True
    def divisors(n):
        n = abs(n)
        out = []
        i = 1
        while i * i <= n:
            if n % i == 0:
                out.append(i)
                out.append(n // i)
            i += 1
        return out
    for p in divisors(ints[0]):
        for q in divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                acc = Fraction(0)
                for c in reversed(coeffs):
                    acc = acc * cand + c
                if acc == 0:
                    return True
    return False


class Field:
    """The rationals, or Q[w]/(m(w)) for a monic m.

    Do not construct extensions directly; go through ``make_extension`` so
    the minimal polynomial gets vetted.
    """

    def __init__(self, minpoly=None, varname="w", warning=None):
        self.minpoly = tuple(minpoly) if minpoly is not None else None
        self.varname = varname
        self.warning = warning
        self.degree = len(self.minpoly) - 1 if self.minpoly else 1

    @property
    def is_extension(self):
        return self.minpoly is not None

    def __eq__(self, other):
        return (isinstance(other, Field)
                and self.minpoly == other.minpoly
                and self.varname == other.varname)

    def __hash__(self):
        return hash((self.minpoly, self.varname))

    def __repr__(self):
        if not self.is_extension:
            return "Field(Q)"
        return "Field(Q[%s]/(%s))" % (self.varname, list(self.minpoly))

    # -- element constructors --

    def from_fraction(self, q):
        q = Fraction(q)
        if not self.is_extension:
            return FieldElement(self, q)
        vec = [Fraction(0)] * self.degree
        if self.degree > 0:
            vec[0] = q
        return FieldElement(self, tuple(vec))

    @property
    def zero(self):
        return self.from_fraction(0)

    @property
    def one(self):
        return self.from_fraction(1)

    def gen(self):
        """The class of w.  Only on extensions."""
        if not self.is_extension:
            raise ValueError("rational field has no generator")
        vec = [Fraction(0)] * self.degree
        if self.degree == 1:
            # degenerate extension: w is congruent to -m[0]
            return FieldElement(self, (-self.minpoly[0],))
        vec[1] = Fraction(1)
        return FieldElement(self, tuple(vec))

    def element(self, coeffs):
        """Element from a coefficient list in powers of w (low to high)."""
        if not self.is_extension:
            if len(coeffs) > 1 and any(coeffs[1:]):
                raise ValueError("rational field element with w coefficients")
            return FieldElement(self, Fraction(coeffs[0]) if coeffs else Fraction(0))
        acc = self.zero
        wpow = self.one
        g = self.gen()
        for c in coeffs:
            acc = acc + wpow * self.from_fraction(c)
            wpow = wpow * g
        return acc

    def _reduce(self, vec):
        """Reduce a raw coefficient list modulo the minimal polynomial."""
        m = list(self.minpoly)
        vec = list(vec)
        while len(vec) > self.degree:
            c = vec.pop()
            if c:
                k = len(vec) - self.degree
                for i in range(self.degree):
                    vec[i + k] -= c * m[i]
        while len(vec) < self.degree:
            vec.append(Fraction(0))
        return tuple(vec)


QQ = Field()


class FieldElement:
    """Immutable element of a ``Field``.  Supports +, -, *, /, **."""

    __slots__ = ("field", "data")

    def __init__(self, field, data):
        self.field = field
        self.data = data

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise TypeError("mixed scalar fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_fraction(other)
        return None

    def is_zero(self):
        if self.field.is_extension:
            return all(c == 0 for c in self.data)
        return self.data == 0

    def is_one(self):
        return (self - self.field.one).is_zero()

    def as_fraction(self):
        """The value as a rational; raises when the element is not one."""
        if not self.field.is_extension:
            return self.data
        if any(c != 0 for c in self.data[1:]):
            raise ValueError("scalar is not rational: %s" % self)
        return self.data[0] if self.data else Fraction(0)

    def is_rational(self):
        if not self.field.is_extension:
            return True
        return all(c == 0 for c in self.data[1:])

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.field.is_extension:
            return FieldElement(self.field,
                                tuple(a + b for a, b in zip(self.data, o.data)))
        return FieldElement(self.field, self.data + o.data)

    __radd__ = __add__

    def __neg__(self):
        if self.field.is_extension:
            return FieldElement(self.field, tuple(-a for a in self.data))
        return FieldElement(self.field, -self.data)

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
        if not self.field.is_extension:
            return FieldElement(self.field, self.data * o.data)
        n = self.field.degree
        raw = [Fraction(0)] * (2 * n - 1 if n else 0)
        for i, a in enumerate(self.data):
            if a:
                for j, b in enumerate(o.data):
                    raw[i + j] += a * b
        return FieldElement(self.field, self.field._reduce(raw))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        if not self.field.is_extension:
            return FieldElement(self.field, 1 / self.data)
        g, s, _ = _poly_xgcd_q(list(self.data), list(self.field.minpoly))
        if len(g) != 1:
            raise ZeroDivisionError(
                "zero divisor in degenerate extension: %s" % self)
        inv = self.field._reduce(s)
        return FieldElement(self.field, inv)

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
        return self.data == o.data

    def __hash__(self):
        return hash((self.field, self.data))

    def __str__(self):
        return format_scalar(self)

    __repr__ = __str__


def format_scalar(elt):
    """Canonical text for a scalar, re-parseable by the expression grammar."""
    if not elt.field.is_extension:
        return str(elt.data)
    w = elt.field.varname
    terms = []
    for k in range(elt.field.degree - 1, -1, -1):
        c = elt.data[k]
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            head = "" if abs(c) == 1 else str(abs(c)) + "*"
            body = head + w + ("^%d" % k if k > 1 else "")
        terms.append((c < 0, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] else "") + terms[0][1]
    for neg, body in terms[1:]:
        out += (" - " if neg else " + ") + body
    return out


def make_extension(minpoly_coeffs, varname="w"):
    """Build Q[w]/(m(w)) from monic coefficients (low to high).

    Rejects non-monic input and provably reducible input.  Degree <= 3 is
    decided exactly by the rational root test.  Higher degrees are probed
    modulo the first 25 usable primes: one prime with an irreducible
    reduction is a proof; reducible shapes at every prime produce a field
    that carries a warning string but is still usable.
    """
    coeffs = [Fraction(c) for c in minpoly_coeffs]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        raise NotMonic("minimal polynomial must have positive degree")
    if coeffs[-1] != 1:
        raise NotMonic("minimal polynomial must be monic, leading coefficient %s"
                       % coeffs[-1])
    degree = len(coeffs) - 1
    if degree == 1:
        return Field(coeffs, varname)

    if _has_rational_root(coeffs):
        raise ReducibleMinpoly("minimal polynomial has a rational root")
    if degree <= 3:
        # no rational root and degree <= 3 proves irreducibility
        return Field(coeffs, varname)

    denoms = set()
    for c in coeffs:
        denoms.add(c.denominator)
    skip = set()
    for d in denoms:
        p = 2
        while d > 1:
            if d % p == 0:
                skip.add(p)
                while d % p == 0:
                    d //= p
            p += 1
    shapes = []
    tested = 0
    for p in _small_primes(_PROBE_PRIME_COUNT + len(skip) + 8, skip):
        if tested >= _PROBE_PRIME_COUNT:
            break
        denom_lcm = 1
        for c in coeffs:
            denom_lcm = denom_lcm * c.denominator // int_gcd(denom_lcm, c.denominator)
        ints = [int(c * denom_lcm) for c in coeffs]
        shape = _factor_shape_p(ints, p)
        if shape is None:
            # p divides the discriminant; does not count as a test prime
            continue
        tested += 1
        if shape == [degree]:
            return Field(coeffs, varname)
        shapes.append((p, shape))
    warning = ("irreducibility unproven: factor shapes %s at the %d test primes"
               % (sorted(set(tuple(s) for _, s in shapes)), tested))
    return Field(coeffs, varname, warning=warning)
