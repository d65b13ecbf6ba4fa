"""Kahler differential forms on affine varieties.

Omega^1 on R = k[x_1..x_n]/I is presented on generators dx_i with one
relation row per ideal generator (its gradient); relative versions add
the differentials of the structure-map images.  Higher degrees come from
the exterior power presentation: generators dx_I over ascending index
subsets, relations r wedge dx_J for every degree-one relation r and every
(p-1)-subset J.

A form carries coefficients in Frac(R), one per index subset.  The
exterior derivative demands coefficients that are regular on the whole
variety (an integral representative must exist); pullback is Jacobian
minors with sign bookkeeping.
"""

from __future__ import annotations

from itertools import combinations

from .errors import NegativeDegree, NonRegularCoefficient, NotEtale
from .groebner import groebner_ideal, ideal_contains_one, normal_form
from .linalg import solve
from .modules import (PresentedModule, ScalarRestriction, Span,
                      denominator_ideal, integral_rep, kernel_vectors)
from .polyring import PolyRing
from .rings import FiniteAlgebra, FracElement, FractionField, QuotientRing, RingHom


class AffineVariety:
    """A named affine variety with asserted geometric flags.

    The flags are contracts supplied by the caller; nothing here proves
    irreducibility or normality.  ``base`` optionally fixes a structure
    map used as the default for relative differentials.
    """

    def __init__(self, name, qring, irreducible=True, normal=True,
                 smooth=None, base=None):
        self.name = name
        self.qring = qring
        self.irreducible = irreducible
        self.normal = normal
        self.smooth = smooth
        self.base = base

    def __repr__(self):
        return "AffineVariety(%s)" % self.name


def poly_det(rows):
    """Determinant of a square matrix of polynomials, by expansion."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    ring = rows[0][0].ring
    if n == 1:
        return rows[0][0]
    acc = ring.zero
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [[rows[i][k] for k in range(n) if k != j]
                 for i in range(1, n)]
        term = rows[0][j] * poly_det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def smoothness_probe(variety):
    """"smooth", or "inconclusive" when the Jacobian test cannot decide.

    Valid certification only for complete-intersection presentations:
    with r generators in n variables, smoothness holds when 1 lies in the
    ideal plus the r x r Jacobian minors.
    """
    qring = variety.qring
    gens = qring.gens
    if not gens:
        return "smooth"
    n = qring.ring.nvars
    r = len(gens)
    if r > n:
        return "inconclusive"
    jac = [[g.derivative(j) for j in range(n)] for g in gens]
    minors = []
    for cols in combinations(range(n), r):
        minors.append(poly_det([[jac[i][j] for j in cols]
                                for i in range(r)]))
    gb = groebner_ideal(list(gens) + minors, qring.ring)
    if ideal_contains_one(gb):
        return "smooth"
    return "inconclusive"


def wedge_indices(n, p):
    """Ascending p-subsets of range(n), in lexicographic order."""
    return list(combinations(range(n), p))


def _omega_rows_degree_one(qring, base):
    n = qring.ring.nvars
    rows = [tuple(g.derivative(j) for j in range(n)) for g in qring.gens]
    if base is not None:
        if base.target != qring:
            raise TypeError("structure map lands in a different ring")
        for img in base.images:
            rows.append(tuple(img.derivative(j) for j in range(n)))
    return rows


_omega_cache = {}


def omega_module(qring, p, base=None):
    """Presentation of Omega^p (relative to ``base`` when given)."""
    if p < 0:
        raise NegativeDegree("form degree %d" % p)
    key = (qring, p, base)
    hit = _omega_cache.get(key)
    if hit is not None:
        return hit
    n = qring.ring.nvars
    if p == 0:
        out = PresentedModule(qring, 1, ())
    elif p > n:
        out = PresentedModule(qring, 0, ())
    else:
        rows1 = _omega_rows_degree_one(qring, base)
        if p == 1:
            out = PresentedModule(qring, n, rows1)
        else:
            idx = wedge_indices(n, p)
            pos = {I: t for t, I in enumerate(idx)}
            rows = []
            for r in rows1:
                for J in combinations(range(n), p - 1):
                    row = [qring.ring.zero] * len(idx)
                    for i in range(n):
                        if i in J:
                            continue
                        I = tuple(sorted(J + (i,)))
                        sign = I.index(i)
                        c = r[i]
                        if sign % 2 == 1:
                            c = -c
                        row[pos[I]] = row[pos[I]] + c
                    rows.append(row)
            out = PresentedModule(qring, len(idx), rows)
    _omega_cache[key] = out
    return out


def omega(variety, p, base=None):
    return omega_module(variety.qring, p,
                        base if base is not None else variety.base)


class PForm:
    """Differential p-form with coefficients in Frac(R).

    ``coeffs`` maps ascending index tuples to nonzero fraction
    coefficients.  Arithmetic is coefficientwise; geometric equality
    (modulo the presentation's relations) lives in ``forms_equal``.
    """

    def __init__(self, qring, degree, coeffs, field=None):
        self.qring = qring
        self.degree = degree
        self.field = field or FractionField(qring)
        clean = {}
        for I, c in coeffs.items():
            if not isinstance(c, FracElement):
                c = self.field.from_poly(c)
            if not c.is_zero():
                clean[tuple(I)] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, qring, degree, field=None):
        return cls(qring, degree, {}, field=field)

    @classmethod
    def from_vector(cls, qring, degree, vec, field=None):
        idx = wedge_indices(qring.ring.nvars, degree)
        return cls(qring, degree, dict(zip(idx, vec)), field=field)

    def vector(self):
        """Dense coefficient list over the wedge basis."""
        idx = wedge_indices(self.qring.ring.nvars, self.degree)
        return [self.coeffs.get(I, self.field.zero) for I in idx]

    def is_coefficient_zero(self):
        return not self.coeffs

    def is_polynomial(self):
        return all(c.den.is_one() for c in self.coeffs.values())

    def polynomial_vector(self):
        """Integral representatives of all coefficients, or None."""
        out = []
        for c in self.vector():
            p = integral_rep(self.qring, c)
            if p is None:
                return None
            out.append(p)
        return out

    def __add__(self, other):
        if not isinstance(other, PForm):
            return NotImplemented
        if other.qring != self.qring or other.degree != self.degree:
            raise TypeError("mixed form spaces")
        out = dict(self.coeffs)
        for I, c in other.coeffs.items():
            cur = out.get(I)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(I, None)
            else:
                out[I] = s
        return PForm(self.qring, self.degree, out, field=self.field)

    def __neg__(self):
        return PForm(self.qring, self.degree,
                     {I: -c for I, c in self.coeffs.items()}, field=self.field)

    def __sub__(self, other):
        if not isinstance(other, PForm):
            return NotImplemented
        return self + (-other)

    def scale(self, factor):
        if not isinstance(factor, FracElement):
            factor = self.field.from_poly(factor) \
                if hasattr(factor, "ring") else self.field.from_fraction(factor)
        return PForm(self.qring, self.degree,
                     {I: c * factor for I, c in self.coeffs.items()},
                     field=self.field)

    def __repr__(self):
        from .textio import format_form
        return format_form(self)


def de_rham_d(form):
    """Exterior derivative; coefficients must be regular on the variety."""
    qring = form.qring
    n = qring.ring.nvars
    out = {}
    for I, c in form.coeffs.items():
        rep = integral_rep(qring, c)
        if rep is None:
            raise NonRegularCoefficient(
                "coefficient %s has no regular representative" % c)
        for j in range(n):
            if j in I:
                continue
            dc = rep.derivative(j)
            if dc.is_zero():
                continue
            J = tuple(sorted(I + (j,)))
            sign = J.index(j)
            val = dc if sign % 2 == 0 else -dc
            cur = out.get(J, qring.ring.zero)
            out[J] = cur + val
    return PForm(qring, form.degree + 1,
                 {J: form.field.from_poly(qring.nf(p))
                  for J, p in out.items() if not qring.nf(p).is_zero()},
                 field=form.field)


def pullback(h, form, target_field=None):
    """Pullback along the scheme map corresponding to h (ring direction).

    ``form`` lives on the source of h; the result lives on the target.
    """
    src = h.source
    tgt = h.target
    if form.qring != src:
        raise TypeError("form does not live on the source of the map")
    tfield = target_field or FractionField(tgt)
    p = form.degree
    m = tgt.ring.nvars
    if p == 0:
        out = {}
        acc = tfield.zero
        for I, c in form.coeffs.items():
            acc = acc + h.apply_frac(c, tfield)
        if not acc.is_zero():
            out[()] = acc
        return PForm(tgt, 0, out, field=tfield)
    jac = [[tgt.nf(img.derivative(j)) for j in range(m)]
           for img in h.images]
    out = {}
    for I, c in form.coeffs.items():
        c_t = h.apply_frac(c, tfield)
        for K in combinations(range(m), p):
            sub = [[jac[i][k] for k in K] for i in I]
            det = tgt.nf(poly_det(sub))
            if det.is_zero():
                continue
            val = c_t * det
            cur = out.get(K)
            val = val if cur is None else cur + val
            if val.is_zero():
                out.pop(K, None)
            else:
                out[K] = val
    return PForm(tgt, p, out, field=tfield)


def forms_equal(a, b, generic=False):
    """Equality in Omega^p, modulo the presentation's relations.

    Polynomial forms are compared at the module level (difference in the
    R-span of the relations); fractional coefficients fall back to the
    rational-section comparison over Frac(R).  ``generic`` compares as
    rational sections even when both sides are polynomial, which is
    coarser: torsion differences vanish at the generic point.
    """
    if a.qring != b.qring or a.degree != b.degree:
        return False
    diff = a - b
    if diff.is_coefficient_zero():
        return True
    mod = omega_module(a.qring, a.degree)
    vec = diff.polynomial_vector()
    if vec is not None:
        if mod.is_zero_element(vec):
            return True
        if not generic:
            return False
    K = a.field
    rel_rows = [[K.from_poly(p) for p in row] for row in mod.relations]
    if not rel_rows:
        return all(c.is_zero() for c in diff.vector())
    mat = [[rel_rows[t][i] for t in range(len(rel_rows))]
           for i in range(mod.gens)]
    rhs = diff.vector()
    return solve(mat, rhs, K.zero) is not None


class RegularityResult:
    """Outcome of the regularity test for a rational form."""

    def __init__(self, regular, denominator, certificate):
        self.regular = regular
        self.denominator = denominator  # reduced basis, ring ideal included
        self.certificate = certificate  # polynomial form when regular

    def __bool__(self):
        return self.regular


def regularity(form, base=None):
    """Tests whether a rational form extends to the whole variety.

    Returns the denominator ideal and, when regular, a certificate form
    with polynomial coefficients equal to the input as a rational section.
    """
    mod = omega_module(form.qring, form.degree, base)
    data = denominator_ideal(mod, form.vector())
    cert = None
    if data.contains_one:
        cert = PForm.from_vector(form.qring, form.degree,
                                 [form.field.from_poly(p)
                                  for p in data.certificate],
                                 field=form.field)
    return RegularityResult(data.contains_one, data.gb, cert)


# --- the equalizer property of a finite etale cover ------------------------

class EqualizerReport:
    def __init__(self, rank, holds, detail):
        self.rank = rank
        self.holds = holds
        self.detail = detail


def equalizer_check(inclusion, basis):
    """Check Omega^1(A) -> Omega^1(B) equalizes the two maps to B tensor B.

    ``inclusion`` is a module-finite A -> B with free A-basis ``basis``.
    Raises NotEtale when the relative differentials do not vanish.  The
    comparison happens inside the restricted A-module of Omega^1(B): the
    kernel of p1* - p2* must coincide with the image of Omega^1(A).
    """
    A = inclusion.source
    B = inclusion.target
    rel = omega_module(B, 1, base=inclusion)
    if not rel.is_zero_module():
        bad = None
        for i in range(rel.gens):
            if not rel.is_zero_element(rel.unit_vector(i)):
                bad = B.ring.vars[i]
                break
        raise NotEtale("relative differential d(%s) is nonzero" % bad)

    sr_b = ScalarRestriction(inclusion, basis)
    rank = sr_b.rank

    # build B tensor_A B on primed copies of the variables
    bvars = B.ring.vars
    pvars = tuple(v + "'" for v in bvars)
    t_ring = PolyRing(B.ring.field, bvars + pvars, B.ring.order)
    prime_images = [t_ring.var(v + "'") for v in bvars]
    gens = [g.cast(t_ring) for g in B.gens]
    for g in B.gens:
        gens.append(g.subs(prime_images, t_ring))
    for img in inclusion.images:
        left = img.cast(t_ring)
        right = img.subs(prime_images, t_ring)
        gens.append(left - right)
    T = QuotientRing(t_ring, gens)
    p1 = RingHom(B, T, [t_ring.var(v) for v in bvars], check=False)
    p2 = RingHom(B, T, list(prime_images), check=False)
    incl_t = RingHom(A, T, [p1.apply(img) for img in inclusion.images],
                     check=False)
    t_basis = []
    for b1 in sr_b.basis:
        for b2 in sr_b.basis:
            t_basis.append(T.nf(p1.apply(b1) * p2.apply(b2)))
    sr_t = ScalarRestriction(incl_t, t_basis)

    om_b = omega_module(B, 1)
    om_t = omega_module(T, 1)
    m_a = sr_b.restrict_module(om_b)
    n_a = sr_t.restrict_module(om_t)

    def restricted_columns(p_map):
        cols = []
        for j in range(om_b.gens):
            for b in sr_b.basis:
                frm = PForm(B, 1, {(j,): b})
                img = pullback(p_map, frm)
                vec = img.polynomial_vector()
                if vec is None:
                    raise AssertionError("polynomial pullback went rational")
                cols.append(sr_t.encode_vec(vec))
        return cols

    c1 = restricted_columns(p1)
    c2 = restricted_columns(p2)
    diff = [[a - b for a, b in zip(u, v)] for u, v in zip(c1, c2)]
    ker = kernel_vectors(A, diff, om_t.gens * sr_t.rank, n_a.relations)

    img_gens = []
    for i in range(A.ring.nvars):
        da = PForm(A, 1, {(i,): A.ring.one})
        on_b = pullback(inclusion, da)
        vec = on_b.polynomial_vector()
        if vec is None:
            raise AssertionError("structure differential went rational")
        img_gens.append(sr_b.encode_vec(vec))

    span_img = Span(A, m_a.gens, img_gens + list(m_a.relations))
    span_ker = Span(A, m_a.gens, list(ker) + list(m_a.relations))
    ker_in_img = all(span_img.contains(v) for v in ker)
    img_in_ker = all(span_ker.contains(v) for v in img_gens)
    holds = ker_in_img and img_in_ker
    detail = {"kernel_gens": len(ker), "image_gens": len(img_gens),
              "kernel_in_image": ker_in_img, "image_in_kernel": img_in_ker}
    return EqualizerReport(rank, holds, detail)
