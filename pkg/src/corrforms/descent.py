"""Galois covers, averaging, and descent of differential forms.

A cover datum bundles the base and total varieties, the structure
inclusion, the full automorphism list, and a free basis of the total
coordinate ring over the base (first element 1).  Verification recomputes
everything that can be checked: homomorphism property, stability over the
base, group closure, rank against the group order, basis freeness, and a
smoothness probe that only warns when inconclusive.

Descent expresses an invariant form on the total space in the pullback
basis of base forms over the generic point, demands that the resulting
coefficients are pure base functions (zero component along the rest of
the basis), and finally asks for regularity on the base.
"""

from __future__ import annotations

from .errors import (CheckFailed, GroupNotClosed, HomNotOverBase,
                     NotAHomomorphism, NotDescendable, NotModuleFinite,
                     NotRegular, RankMismatch)
from .kaehler import (PForm, forms_equal, omega_module, pullback, regularity,
                      smoothness_probe, wedge_indices)
from .linalg import solve
from .modules import (BidualData, ModuleMap, ScalarRestriction, dual_action,
                      integral_rep, invariants)
from .rings import FractionField, compose, generic_rank


class CheckReport:
    """Named pass/fail lines with optional detail strings."""

    def __init__(self):
        self.lines = []

    def add(self, name, ok, detail=""):
        self.lines.append((name, bool(ok), detail))

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.lines)

    def ensure(self, error_cls=CheckFailed):
        for name, ok, detail in self.lines:
            if not ok:
                raise error_cls("%s: %s" % (name, detail))
        return self

    def __iter__(self):
        return iter(self.lines)


class GaloisCoverDatum:
    """A finite Galois cover W -> X with explicit bookkeeping.

    ``group`` lists ring automorphisms of O(W); identity inferred if
    present.  ``basis`` is a free O(X)-basis of O(W), basis[0] == 1.
    Heavyweight verification lives in ``verify_cover``; construction only
    checks shapes.
    """

    def __init__(self, base, total, inclusion, group, basis,
                 primitive=None, invariant_form=None, name=""):
        self.base = base
        self.total = total
        self.inclusion = inclusion
        self.group = list(group)
        self.basis = [total.qring.nf(b) for b in basis]
        self.primitive = primitive
        self.invariant_form = invariant_form
        self.name = name
        if not self.basis or not self.basis[0].is_one():
            raise ValueError("basis must start with 1")
        self._sr = None
        self._kfield = None

    @property
    def A(self):
        return self.base.qring

    @property
    def B(self):
        return self.total.qring

    def restriction(self):
        if self._sr is None:
            self._sr = ScalarRestriction(self.inclusion, self.basis)
        return self._sr

    def function_field(self):
        """Frac(B), shared so forms on W compare cheaply."""
        if self._kfield is None:
            self._kfield = FractionField(self.B)
        return self._kfield

    def identity_index(self):
        for i, g in enumerate(self.group):
            if all(self.B.is_zero(img - self.B.ring.var(k))
                   for k, img in enumerate(g.images)):
                return i
        return None

    def inverse_index(self, i):
        gi = self.group[i]
        for j, gj in enumerate(self.group):
            comp = compose(gi, gj)
            if all(self.B.is_zero(img - self.B.ring.var(k))
                   for k, img in enumerate(comp.images)):
                return j
        return None

    def frac_to_algebra(self, fr):
        """A function-field element as a polynomial over Frac(A)."""
        alg = self.restriction().alg
        num = alg.from_target(fr.num)
        den = alg.from_target(fr.den)
        inv = alg.inverse(den)
        if inv is None:
            raise AssertionError(
                "denominator not invertible at the generic point")
        return alg.nf(num * inv)


def verify_cover(datum):
    """Full verification: returns a CheckReport (warnings pass with text)."""
    report = CheckReport()
    B = datum.B

    bad = []
    for i, g in enumerate(datum.group):
        for rel in B.gens:
            val = B.nf(rel.subs(list(g.images), B.ring))
            if not val.is_zero():
                bad.append("g%d breaks relation %s" % (i, rel))
                break
    report.add("group_maps", not bad, "; ".join(bad))

    bad = []
    for i, g in enumerate(datum.group):
        for img, v in zip(datum.inclusion.images, datum.base.qring.ring.vars):
            moved = B.nf(img.subs(list(g.images), B.ring))
            if not B.is_zero(moved - img):
                bad.append("g%d moves base image of %s" % (i, v))
                break
    report.add("group_over_base", not bad, "; ".join(bad))

    serials = []
    for g in datum.group:
        serials.append(tuple(B.nf(p).sorted_terms() for p in g.images))
    closed = len(set(serials)) == len(serials)
    detail = "" if closed else "duplicate group elements"
    if closed:
        if datum.identity_index() is None:
            closed = False
            detail = "identity element missing"
    if closed:
        for i, gi in enumerate(datum.group):
            for j, gj in enumerate(datum.group):
                comp = compose(gi, gj)
                ser = tuple(B.nf(p).sorted_terms() for p in comp.images)
                if ser not in serials:
                    closed = False
                    detail = "g%d o g%d escapes the list" % (i, j)
                    break
            if not closed:
                break
    report.add("group_closed", closed, detail)

    try:
        rank = generic_rank(datum.inclusion, strategy="exact")
        ok = rank == len(datum.group)
        report.add("cover_rank", ok,
                   "rank %d vs group order %d" % (rank, len(datum.group)))
    except NotModuleFinite as e:
        report.add("cover_rank", False, str(e))

    try:
        datum.restriction()
        report.add("basis_free", True, "%d elements" % len(datum.basis))
    except NotModuleFinite as e:
        report.add("basis_free", False, str(e))

    # characteristic zero: the group order is always invertible
    report.add("tame", True, "group order %d invertible" % len(datum.group))

    for which, var in (("base", datum.base), ("total", datum.total)):
        probe = smoothness_probe(var)
        report.add("smooth_%s" % which, True,
                   probe if probe == "smooth"
                   else "warning: probe inconclusive")

    if datum.primitive is not None and report.ok:
        # the group orbit of the primitive element must generate the
        # total ring as a module over the base, integrally
        orbit = [B.nf(datum.primitive.subs(list(g.images), B.ring))
                 for g in datum.group]
        try:
            osr = ScalarRestriction(datum.inclusion, orbit)
            for b in datum.basis:
                osr.a_coords(b)
            report.add("primitive_orbit", True, "orbit is a module basis")
        except NotModuleFinite as e:
            report.add("primitive_orbit", False, str(e))
    return report


def ensure_valid(datum):
    """Raise the specific failure instead of reporting; used by transfers."""
    report = verify_cover(datum)
    for name, ok, detail in report:
        if ok:
            continue
        if name in ("group_maps",):
            raise NotAHomomorphism(detail)
        if name in ("group_over_base",):
            raise HomNotOverBase(detail)
        if name == "group_closed":
            raise GroupNotClosed(detail)
        if name == "cover_rank":
            raise RankMismatch(detail)
        raise NotModuleFinite(detail)
    return report


def average(datum, form):
    """Group average (1/#G) sum of pullbacks; a projector onto invariants."""
    kf = datum.function_field()
    acc = PForm.zero(datum.B, form.degree, field=kf)
    for g in datum.group:
        acc = acc + pullback(g, form, target_field=kf)
    n = kf.from_fraction(len(datum.group)).inverse()
    return acc.scale(n)


def is_invariant(datum, form):
    """Invariance as a rational section (the generic-point notion)."""
    kf = datum.function_field()
    for g in datum.group:
        if not forms_equal(pullback(g, form, target_field=kf), form,
                           generic=True):
            return False, g
    return True, None


def _pullback_basis(datum, p):
    """Pullbacks of the base coordinate wedges, as polynomial vectors."""
    A = datum.A
    out = []
    for I in wedge_indices(A.ring.nvars, p):
        frm = PForm(A, p, {I: A.ring.one})
        pb = pullback(datum.inclusion, frm, target_field=datum.function_field())
        vec = pb.polynomial_vector()
        if vec is None:
            raise AssertionError("pullback of a coordinate form went rational")
        out.append(vec)
    return out


def descend_rational(datum, form):
    """Express an invariant form in base coordinates over the generic point.

    Returns a PForm on the base with Frac(A) coefficients.  Raises
    NotDescendable when the form is outside the pullback span or when a
    coefficient has components along basis elements other than 1.
    """
    if form.qring != datum.B:
        raise TypeError("form does not live on the total space")
    sr = datum.restriction()
    alg = sr.alg
    L = alg.L
    p = form.degree
    B = datum.B
    n_w = B.ring.nvars
    widx = wedge_indices(n_w, p)
    base_idx = wedge_indices(datum.A.ring.nvars, p)
    pb = _pullback_basis(datum, p)
    om_w = omega_module(B, p)
    rel_rows = [list(r) for r in om_w.relations]
    dim = alg.dim

    def coords_of_poly(q):
        return alg.coords(alg.from_target(q))

    # unknowns: for each base wedge I and basis slot l, then for each
    # relation t and slot l; equation rows: (W wedge kappa, algebra coord r)
    cols = []
    col_meta = []
    for bi, vec in enumerate(pb):
        for l in range(dim):
            m_l = alg.ring_L.monomial(alg.std[l])
            col = []
            for k in range(len(widx)):
                q = vec[k]
                prod = alg.nf(m_l * alg.from_target(q))
                col.extend(alg.coords(prod))
            cols.append(col)
            col_meta.append(("c", bi, l))
    for t, row in enumerate(rel_rows):
        for l in range(dim):
            m_l = alg.ring_L.monomial(alg.std[l])
            col = []
            for k in range(len(widx)):
                prod = alg.nf(m_l * alg.from_target(row[k]))
                col.extend(alg.coords(prod))
            cols.append(col)
            col_meta.append(("rel", t, l))
    rhs = []
    fvec = form.vector()
    for k in range(len(widx)):
        z = datum.frac_to_algebra(fvec[k])
        rhs.extend(alg.coords(z))
    nrows = len(widx) * dim
    mat = [[cols[j][r] for j in range(len(cols))] for r in range(nrows)]
    sol = solve(mat, rhs, L.zero)
    if sol is None:
        raise NotDescendable("form is outside the pullback span")

    # B tensor Frac(A) is a field (W integral, finite over X), so the
    # coefficient of each pullback wedge is uniquely determined and the
    # solver's free-variable choices only touch the relation unknowns
    coeffs = {}
    for bi, I in enumerate(base_idx):
        zc = [L.zero] * dim
        for j, meta in enumerate(col_meta):
            kind, idx, l = meta
            if kind == "c" and idx == bi:
                zc[l] = sol[j]
        # standard-monomial coordinates back to basis coordinates
        xi = []
        for i in range(sr.rank):
            acc = L.zero
            for t in range(sr.rank):
                acc = acc + sr._inv_cols[t][i] * zc[t]
            xi.append(acc)
        for i in range(1, sr.rank):
            if not xi[i].is_zero():
                raise NotDescendable(
                    "coefficient of base wedge %s has component %s along "
                    "basis element %s" % (I, xi[i], sr.basis[i]))
        if not xi[0].is_zero():
            coeffs[I] = xi[0]
    return PForm(datum.A, p, coeffs, field=L)


def descend(datum, form):
    """Group-average, generic-point descent, then regularity on the base.

    Averaging projects onto the invariants, so non-invariant parts are
    dropped (descending dy along the Kummer cover gives 0).  Returns the
    regular descended form with polynomial coefficients.
    """
    low = descend_rational(datum, average(datum, form))
    res = regularity(low)
    if not res.regular:
        raise NotRegular(
            "descended form has denominator ideal (%s)"
            % ", ".join(str(g) for g in res.denominator),
            detail=res.denominator)
    return res.certificate


def form_action_map(datum, p, g, relative=False):
    """The semilinear action of g on Omega^p(W) in matrix form."""
    B = datum.B
    base = datum.inclusion if relative else None
    mod = omega_module(B, p, base=base)
    widx = wedge_indices(B.ring.nvars, p)
    cols = []
    for J in widx:
        frm = PForm(B, p, {J: B.ring.one})
        img = pullback(g, frm, target_field=datum.function_field())
        vec = img.polynomial_vector()
        if vec is None:
            raise AssertionError("automorphism pullback went rational")
        cols.append(vec)
    return ModuleMap(mod, mod, cols, twist=g)


def invariant_forms(datum, p, relative=False):
    """G-invariants of Omega^p(W) (relative to the base when asked).

    Returns the InvariantsData; decode gives vectors over the form module
    generators, convertible to forms via PForm.from_vector.
    """
    base = datum.inclusion if relative else None
    mod = omega_module(datum.B, p, base=base)
    actions = [form_action_map(datum, p, g, relative=relative)
               for g in datum.group]
    return invariants(mod, actions, datum.restriction())


# --- the bidual comparison -------------------------------------------------

def _k_form_of_bidual_gen(bd, t, kfield):
    """Solve nat(omega) = generator t over the fraction field."""
    mod = bd.module
    big = bd.bidual.module
    nat = bd.nat
    K = kfield
    ncols = mod.gens + len(big.relations)
    mat = []
    for i in range(big.gens):
        row = []
        for j in range(mod.gens):
            row.append(K.from_poly(nat.cols[j][i]))
        for r in big.relations:
            row.append(K.from_poly(r[i]))
        mat.append(row)
    rhs = [K.one if i == t else K.zero for i in range(big.gens)]
    sol = solve(mat, rhs, K.zero)
    if sol is None:
        return None
    return sol[:mod.gens]


def _pairing_integral(bd, qring, kvec):
    """Do all dual pairings of a rational section land in the ring?"""
    for t in range(len(bd.dual.hom_gens)):
        v = [bd.dual.hom_gens[t][i] for i in range(bd.module.gens)]
        acc = None
        for vi, ci in zip(v, kvec):
            term = ci * vi
            acc = term if acc is None else acc + term
        if acc is None:
            continue
        if integral_rep(qring, acc) is None:
            return False, t
    return True, None


class BidualDescentReport(CheckReport):
    pass


def bidual_descent_check(datum, p):
    """Compare the bidual of Omega^p on the base with the invariant bidual
    on the cover, through pullback and descent of generic-fiber sections."""
    report = BidualDescentReport()
    A = datum.A
    B = datum.B
    KA = FractionField(A)
    KB = datum.function_field()

    bd_x = BidualData(omega_module(A, p))
    bd_w = BidualData(omega_module(B, p))

    # transported group action on the bidual over W
    om_w = omega_module(B, p)
    act_m = {}
    for i, g in enumerate(datum.group):
        act_m[i] = form_action_map(datum, p, g)
    act_d = {}
    for i, g in enumerate(datum.group):
        inv_i = datum.inverse_index(i)
        act_d[i] = dual_action(bd_w.dual, act_m[i], act_m[inv_i], g)
    act_b = {}
    for i, g in enumerate(datum.group):
        inv_i = datum.inverse_index(i)
        act_b[i] = dual_action(bd_w.bidual, act_d[i], act_d[inv_i], g)

    inv_data = invariants(bd_w.bidual.module,
                          [act_b[i] for i in range(len(datum.group))],
                          datum.restriction())
    report.add("invariant_rank", True,
               "%d invariant generators over the base"
               % inv_data.module.gens)

    # left generators as rational forms on X
    left_forms = []
    missing = None
    for t in range(bd_x.bidual.module.gens):
        kvec = _k_form_of_bidual_gen(bd_x, t, KA)
        if kvec is None:
            missing = t
            break
        left_forms.append(kvec)
    report.add("base_bidual_generic", missing is None,
               "" if missing is None
               else "bidual generator %d is not generically a form" % missing)
    if missing is not None:
        return report

    # (a) pullbacks of left generators are invariant bidual sections on W
    ok_all = True
    detail = ""
    for t, kvec in enumerate(left_forms):
        frm = PForm.from_vector(A, p, kvec, field=KA)
        pb = pullback(datum.inclusion, frm, target_field=KB)
        good, bad_t = _pairing_integral(bd_w, B, pb.vector())
        if not good:
            ok_all = False
            detail = "pullback of generator %d fails pairing %d" % (t, bad_t)
            break
        inv, wit = is_invariant(datum, pb)
        if not inv:
            ok_all = False
            detail = "pullback of generator %d not invariant" % t
            break
    report.add("pullback_lands_in_invariants", ok_all, detail)

    # (b, surjectivity) every invariant generator descends to a bidual
    # section on X and is recovered by pullback
    ok_all = True
    detail = ""
    seen = set()
    for t in range(inv_data.module.gens):
        vec_w = inv_data.decode(t)  # element of the bidual module over B
        key = tuple(p.sorted_terms() for p in vec_w)
        if key in seen or all(p.is_zero() for p in vec_w):
            continue
        seen.add(key)
        # express the bidual element as a rational form on W
        mat = []
        big = bd_w.bidual.module
        for i in range(big.gens):
            row = [KB.from_poly(bd_w.nat.cols[j][i])
                   for j in range(om_w.gens)]
            row.extend(KB.from_poly(r[i]) for r in big.relations)
            mat.append(row)
        rhs = [KB.from_poly(c) for c in vec_w]
        sol = solve(mat, rhs, KB.zero)
        if sol is None:
            ok_all = False
            detail = "invariant generator %d is not generically a form" % t
            break
        kvec = sol[:om_w.gens]
        frm = PForm.from_vector(B, p, kvec, field=KB)
        try:
            down = descend_rational(datum, frm)
        except NotDescendable as e:
            ok_all = False
            detail = "invariant generator %d: %s" % (t, e)
            break
        good, bad_t = _pairing_integral(bd_x, A, down.vector())
        if not good:
            ok_all = False
            detail = ("descent of invariant generator %d fails pairing %d"
                      % (t, bad_t))
            break
        back = pullback(datum.inclusion, down, target_field=KB)
        if not forms_equal(back, frm, generic=True):
            ok_all = False
            detail = "descent of generator %d does not pull back to itself" % t
            break
    report.add("invariants_descend_to_bidual", ok_all, detail)

    # (c, injectivity) descending the pullback recovers each left generator
    ok_all = True
    detail = ""
    for t, kvec in enumerate(left_forms):
        frm = PForm.from_vector(A, p, kvec, field=KA)
        pb = pullback(datum.inclusion, frm, target_field=KB)
        try:
            down = descend_rational(datum, pb)
        except NotDescendable as e:
            ok_all = False
            detail = "generator %d: %s" % (t, e)
            break
        if not forms_equal(down, frm, generic=True):
            ok_all = False
            detail = "generator %d not recovered after the round trip" % t
            break
    report.add("round_trip_identity", ok_all, detail)
    return report
