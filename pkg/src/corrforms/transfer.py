"""Finite correspondences and transfers of differential forms.

A prime correspondence carries the component variety with its two
projections and a witness: a Galois cover of the source together with the
full list of source-morphisms from the cover into the component.  The
transfer pulls a form back to the component, sums its pullbacks along the
listed morphisms, and descends the invariant result through the cover.

Cycles are formal sums with positive integer multiplicities.  Composition
is witness-based as well: the decomposition of the fiber product is
supplied, verified by ideal containment and the degree identity, and
pushed forward along the projection to the outer factors.
"""

from __future__ import annotations

from fractions import Fraction

from .descent import CheckReport, GaloisCoverDatum, descend, verify_cover
from .errors import (BijectionFailure, ComponentNotContained, NotModuleFinite,
                     NotRegular, RankMismatch, ValueMismatch, WitnessDegreeMismatch,
                     WitnessInvalid)
from .groebner import eliminate
from .kaehler import AffineVariety, PForm, forms_equal, pullback, regularity
from .polyring import PolyRing
from .rings import QuotientRing, RingHom, compose, generic_rank


class PrimeCorrespondence:
    """A component finite and surjective over the source, with witness.

    ``proj_source`` and ``proj_target`` are the coordinate-ring maps of
    the two projections (so proj_source: O(source) -> O(component)).
    ``homs`` lists every source-morphism from the witness cover into the
    component; its length must equal the generic degree over the source.
    Construction is shape-only; ``verify`` runs the mathematics.
    """

    def __init__(self, source, target, component, proj_source, proj_target,
                 witness, homs, name=""):
        self.source = source
        self.target = target
        self.component = component
        self.proj_source = proj_source
        self.proj_target = proj_target
        self.witness = witness
        self.homs = list(homs)
        self.name = name
        self._report = None
        if proj_source.source != source.qring \
                or proj_source.target != component.qring:
            raise TypeError("source projection maps the wrong rings")
        if proj_target.source != target.qring \
                or proj_target.target != component.qring:
            raise TypeError("target projection maps the wrong rings")
        if witness.base.qring != source.qring:
            raise TypeError("witness cover sits over a different base")
        if not self.homs:
            raise WitnessInvalid("empty morphism list")

    def serial(self):
        return self.component.qring.serial()

    def verify(self):
        """Recheck the witness: cover, degree count, morphism list."""
        if self._report is not None:
            return self._report
        report = CheckReport()
        for cname, ok, detail in verify_cover(self.witness):
            report.add("cover_" + cname, ok, detail)

        Z = self.component.qring
        W = self.witness.B
        try:
            deg = generic_rank(self.proj_source, strategy="exact")
            report.add("source_degree", deg >= 1, "degree %d" % deg)
        except NotModuleFinite as e:
            deg = None
            report.add("source_degree", False, str(e))

        bad = []
        for k, q in enumerate(self.homs):
            if q.source != Z or q.target != W:
                bad.append("hom %d maps the wrong rings" % k)
                continue
            for rel in Z.gens:
                if not W.is_zero(q.apply(rel)):
                    bad.append("hom %d breaks relation %s" % (k, rel))
                    break
        report.add("hom_maps", not bad, "; ".join(bad))

        bad = []
        for k, q in enumerate(self.homs):
            if q.source != Z or q.target != W:
                continue
            over = compose(q, self.proj_source)
            for a, b in zip(over.images, self.witness.inclusion.images):
                if not W.is_zero(a - b):
                    bad.append("hom %d is not a source-morphism" % k)
                    break
        report.add("homs_over_source", not bad, "; ".join(bad))

        if deg is not None:
            report.add("hom_count", len(self.homs) == deg,
                       "%d listed, degree %d" % (len(self.homs), deg))
        serials = [tuple(W.nf(p).sorted_terms() for p in q.images)
                   for q in self.homs]
        report.add("homs_distinct", len(set(serials)) == len(serials),
                   "" if len(set(serials)) == len(serials)
                   else "repeated morphism")
        self._report = report
        return report

    def ensure_valid(self):
        report = self.verify()
        for cname, ok, detail in report:
            if not ok:
                raise WitnessInvalid("%s: %s" % (cname, detail))

    def __repr__(self):
        return "PrimeCorrespondence(%s)" % (self.name or "unnamed")


def trivial_cover(variety):
    """The identity cover of a variety: W = X, group = {id}, basis = 1."""
    ident = RingHom.identity(variety.qring)
    return GaloisCoverDatum(variety, variety, ident, [ident],
                            [variety.qring.ring.one])


def graph_correspondence(source, target, f, name=""):
    """The graph of a morphism source -> target as a correspondence.

    ``f`` is the coordinate-ring map O(target) -> O(source); the component
    is the source itself, projecting by the identity and by f.
    """
    if f.source != target.qring or f.target != source.qring:
        raise TypeError("graph map must send O(target) into O(source)")
    ident = RingHom.identity(source.qring)
    return PrimeCorrespondence(source, target, source, ident, f,
                               trivial_cover(source), [ident],
                               name=name or ("graph_" + (source.name or "")))


def _regular_input(form):
    """Polynomial-coefficient representative of a regular form."""
    vec = form.polynomial_vector()
    if vec is not None:
        return form
    res = regularity(form)
    if not res.regular:
        raise NotRegular("transfer input is not regular",
                         detail=res.denominator)
    return res.certificate


def transfer_prime(corr, form):
    """Pull back to the component, sum over the witness morphisms, descend."""
    if form.qring != corr.target.qring:
        raise TypeError("form does not live on the correspondence target")
    corr.ensure_valid()
    form = _regular_input(form)
    on_z = pullback(corr.proj_target, form)
    kw = corr.witness.function_field()
    total = PForm.zero(corr.witness.B, form.degree, field=kw)
    for q in corr.homs:
        total = total + pullback(q, on_z, target_field=kw)
    return descend(corr.witness, total)


class CycleCorrespondence:
    """Formal sum of prime correspondences with positive multiplicities."""

    def __init__(self, entries):
        self.entries = []
        seen = set()
        src = tgt = None
        for mult, prime in entries:
            if not isinstance(mult, int) or mult < 1:
                raise ValueError("multiplicity must be a positive integer")
            if src is None:
                src, tgt = prime.source, prime.target
            elif prime.source.qring != src.qring \
                    or prime.target.qring != tgt.qring:
                raise TypeError("cycle components over different varieties")
            key = prime.serial()
            if key in seen:
                raise ValueError("repeated component in a cycle")
            seen.add(key)
            self.entries.append((mult, prime))
        if not self.entries:
            raise ValueError("empty cycle")
        self.source = src
        self.target = tgt

    def __repr__(self):
        return "CycleCorrespondence(%s)" % " + ".join(
            "%d*%s" % (n, c.name or "?") for n, c in self.entries)


def transfer_cycle(cycle, form):
    acc = None
    for mult, prime in cycle.entries:
        part = transfer_prime(prime, form)
        if mult != 1:
            part = part.scale(Fraction(mult))
        acc = part if acc is None else acc + part
    return acc


def pushforward(entries):
    """Multiplicity bookkeeping for a finite surjection of components.

    ``entries`` is a list of (multiplicity, hom) with hom the coordinate
    ring map O(image) -> O(component).  Each multiplicity is multiplied
    by the generic degree of its component over the image; entries with
    the same image are merged.  Returns (multiplicity, image ring) pairs
    sorted by the image's canonical serialization.
    """
    merged = {}
    for mult, hom in entries:
        if not isinstance(mult, int) or mult < 1:
            raise ValueError("multiplicity must be a positive integer")
        try:
            d = generic_rank(hom, strategy="exact")
        except NotModuleFinite as e:
            raise RankMismatch(str(e))
        if d < 1:
            raise RankMismatch(
                "component does not dominate its image (degree %d)" % d)
        key = hom.source.serial()
        cur = merged.get(key)
        if cur is None:
            merged[key] = [mult * d, hom.source]
        else:
            cur[0] += mult * d
    return [(merged[k][0], merged[k][1]) for k in sorted(merged)]


# --- composition of cycles --------------------------------------------------

class FiberComponent:
    """One witnessed irreducible component of a fiber product.

    ``left``/``right`` index into the two cycles; ``qring`` presents the
    component on the concatenation of the two component variable lists;
    ``mult`` is the witnessed multiplicity.
    """

    def __init__(self, left, right, qring, mult):
        self.left = left
        self.right = right
        self.qring = qring
        self.mult = mult
        if not isinstance(mult, int) or mult < 1:
            raise ValueError("multiplicity must be a positive integer")


class ResultComponent:
    """A component of the composed cycle with its own witness data."""

    def __init__(self, qring, witness, homs):
        self.qring = qring
        self.witness = witness
        self.homs = list(homs)


class FiberWitness:
    def __init__(self, components, results):
        self.components = list(components)
        self.results = list(results)


def _rename_into(p, big_ring, positions):
    """Transplant p into big_ring, variable i landing at positions[i]."""
    images = [big_ring.var(k) for k in positions]
    return p.subs(images, big_ring)


def compose_cycles(z, zp, fw):
    """Composite of two cycles through a witnessed fiber decomposition.

    For every pair of components the witness must list fiber components
    whose ideals contain both projected ideals and whose multiplicities
    satisfy the degree identity against the right factor's degree over
    the middle variety.  The composed components are the eliminations of
    the fiber components to the outer product ring, with multiplicities
    scaled by the generic degree of the elimination; witness covers for
    the results are taken from the matching entries of ``fw.results``.
    """
    if z.target.qring != zp.source.qring:
        raise TypeError("cycles do not share the middle variety")
    X1 = z.source
    X3 = zp.target
    shared = set(X1.qring.ring.vars) & set(X3.qring.ring.vars)
    if shared:
        raise WitnessInvalid(
            "source and final target share variable names: %s"
            % ", ".join(sorted(shared)))
    field = X1.qring.ring.field
    prod_ring = PolyRing(field, X1.qring.ring.vars + X3.qring.ring.vars,
                         "degrevlex")
    n1 = X1.qring.ring.nvars

    accum = {}
    for i, (n_i, c_i) in enumerate(z.entries):
        for j, (n_j, c_j) in enumerate(zp.entries):
            comps = [fc for fc in fw.components
                     if fc.left == i and fc.right == j]
            if not comps:
                raise WitnessInvalid(
                    "no fiber components witnessed for pair (%d, %d)"
                    % (i, j))
            ring_i = c_i.component.qring.ring
            ring_j = c_j.component.qring.ring
            want_vars = ring_i.vars + ring_j.vars
            try:
                deg_right = generic_rank(c_j.proj_source, strategy="exact")
            except NotModuleFinite as e:
                raise WitnessInvalid(str(e))
            total_left = 0
            for fc in comps:
                fring = fc.qring.ring
                if fring.vars != want_vars:
                    raise WitnessInvalid(
                        "fiber component variables %s do not match %s"
                        % (fring.vars, want_vars))
                pos_i = list(range(ring_i.nvars))
                pos_j = [ring_i.nvars + k for k in range(ring_j.nvars)]
                # (a) the component must lie inside the fiber product
                for g in c_i.component.qring.gens:
                    moved = _rename_into(g, fring, pos_i)
                    if not fc.qring.is_zero(moved):
                        raise ComponentNotContained(
                            "fiber component misses left relation %s" % g)
                for g in c_j.component.qring.gens:
                    moved = _rename_into(g, fring, pos_j)
                    if not fc.qring.is_zero(moved):
                        raise ComponentNotContained(
                            "fiber component misses right relation %s" % g)
                for a in range(z.target.qring.ring.nvars):
                    left = _rename_into(c_i.proj_target.images[a],
                                        fring, pos_i)
                    right = _rename_into(c_j.proj_source.images[a],
                                         fring, pos_j)
                    if not fc.qring.is_zero(left - right):
                        raise ComponentNotContained(
                            "fiber component does not glue over middle "
                            "variable %s" % z.target.qring.ring.vars[a])
                # (b) degree identity bookkeeping, left side
                left_hom = RingHom(c_i.component.qring, fc.qring,
                                   [fring.var(k) for k in pos_i])
                try:
                    d_over_left = generic_rank(left_hom, strategy="exact")
                except NotModuleFinite as e:
                    raise WitnessInvalid(str(e))
                total_left += fc.mult * d_over_left

                # image under the projection to source x final target
                primed = [v + "'" for v in fring.vars]
                big_ring = PolyRing(field, tuple(primed) + prod_ring.vars,
                                    "degrevlex")
                nf_ = fring.nvars
                gens = [_rename_into(g, big_ring, range(nf_))
                        for g in fc.qring.gens]
                for a in range(n1):
                    img = _rename_into(c_i.proj_source.images[a],
                                       big_ring, pos_i)
                    gens.append(big_ring.var(nf_ + a) - img)
                for b in range(X3.qring.ring.nvars):
                    img = _rename_into(c_j.proj_target.images[b],
                                       big_ring, pos_j)
                    gens.append(big_ring.var(nf_ + n1 + b) - img)
                keep_ring, contracted = eliminate(gens, big_ring, primed)
                image_q = QuotientRing(keep_ring, contracted)
                # degree of the fiber component over its image
                p13 = RingHom(image_q, fc.qring,
                              [_rename_into(c_i.proj_source.images[a],
                                            fring, pos_i)
                               for a in range(n1)]
                              + [_rename_into(c_j.proj_target.images[b],
                                              fring, pos_j)
                                 for b in range(X3.qring.ring.nvars)])
                try:
                    d_k = generic_rank(p13, strategy="exact")
                except NotModuleFinite as e:
                    raise WitnessInvalid(str(e))
                if d_k < 1:
                    raise RankMismatch(
                        "fiber component does not dominate its image")
                key = image_q.serial()
                cur = accum.get(key)
                add = n_i * n_j * fc.mult * d_k
                if cur is None:
                    accum[key] = [add, image_q]
                else:
                    cur[0] += add
            if total_left != deg_right:
                raise WitnessDegreeMismatch(
                    "pair (%d, %d): witnessed degrees sum to %d, "
                    "expected %d" % (i, j, total_left, deg_right))

    supplied = {}
    for r in fw.results:
        supplied[r.qring.serial()] = r
    missing = [k for k in accum if k not in supplied]
    extra = [k for k in supplied if k not in accum]
    if missing or extra:
        raise WitnessInvalid(
            "result components do not match the witnessed list "
            "(%d computed without witness, %d witnessed but absent)"
            % (len(missing), len(extra)))

    entries = []
    for key in sorted(accum):
        mult, image_q = accum[key]
        r = supplied[key]
        comp_var = AffineVariety("compose", r.qring)
        ps = RingHom(X1.qring, r.qring,
                     [r.qring.ring.var(a) for a in range(n1)])
        pt = RingHom(X3.qring, r.qring,
                     [r.qring.ring.var(n1 + b)
                      for b in range(X3.qring.ring.nvars)])
        entries.append((mult, PrimeCorrespondence(
            X1, X3, comp_var, ps, pt, r.witness, r.homs, name="composed")))
    return CycleCorrespondence(entries)


def verify_composition(z, zp, fw, samples):
    """Transfer along the composite vs the two-step transfer, per sample."""
    report = CheckReport()
    try:
        composed = compose_cycles(z, zp, fw)
        mults = [n for n, _ in composed.entries]
        report.add("compose", True,
                   "%d component(s), multiplicities %s" % (len(mults), mults))
    except (WitnessInvalid, WitnessDegreeMismatch, ComponentNotContained,
            RankMismatch) as e:
        report.add("compose", False, str(e))
        return report
    for s_idx, form in enumerate(samples):
        left = transfer_cycle(z, transfer_cycle(zp, form))
        right = transfer_cycle(composed, form)
        ok = forms_equal(left, right)
        report.add("sample_%d" % s_idx, ok,
                   "" if ok else "two-step and composed transfers differ")
    return report


def verify_well_definedness(corr, alt_witness, alt_homs, f, samples):
    """Independence of the transfer from the chosen witness cover.

    ``f`` is the coordinate-ring map O(corr cover total) -> O(alt total)
    of a dominating source-morphism from the alternative cover onto the
    correspondence's own.  Checks that composing with f is a bijection
    of morphism lists and that both witnesses transfer samples equally.
    """
    report = CheckReport()
    W2 = corr.witness.B
    W1 = alt_witness.B
    ok = f.source == W2 and f.target == W1
    report.add("map_shape", ok,
               "" if ok else "dominating map does not link the two covers")
    if not ok:
        return report

    bad = ""
    for rel in W2.gens:
        if not W1.is_zero(f.apply(rel)):
            bad = "relation %s not preserved" % rel
            break
    report.add("map_homomorphism", not bad, bad)

    bad = ""
    for a, b in zip(compose(f, corr.witness.inclusion).images,
                    alt_witness.inclusion.images):
        if not W1.is_zero(a - b):
            bad = "map does not commute with the base inclusions"
            break
    report.add("map_over_source", not bad, bad)
    if not report.ok:
        return report

    def serial(h):
        return tuple(W1.nf(p).sorted_terms() for p in h.images)

    composed = {}
    for k, q in enumerate(corr.homs):
        composed[serial(compose(f, q))] = k
    alt_serials = {serial(q) for q in alt_homs}
    inj = len(composed) == len(corr.homs)
    onto = set(composed) == alt_serials
    report.add("hom_bijection", inj and onto,
               "" if inj and onto else
               ("composition with the map is not injective" if not inj
                else "composed morphisms do not exhaust the alternative list"))
    if not (inj and onto):
        return report

    alt_corr = PrimeCorrespondence(corr.source, corr.target, corr.component,
                                   corr.proj_source, corr.proj_target,
                                   alt_witness, alt_homs,
                                   name=(corr.name or "corr") + "_alt")
    for s_idx, form in enumerate(samples):
        a = transfer_prime(corr, form)
        b = transfer_prime(alt_corr, form)
        ok = forms_equal(a, b)
        report.add("sample_%d" % s_idx, ok,
                   "" if ok else "transfer values differ")
    return report


def ensure_well_defined(corr, alt_witness, alt_homs, f, samples):
    report = verify_well_definedness(corr, alt_witness, alt_homs, f, samples)
    for cname, ok, detail in report:
        if ok:
            continue
        if cname == "hom_bijection":
            raise BijectionFailure(detail)
        if cname.startswith("sample_"):
            raise ValueMismatch("%s: %s" % (cname, detail))
        raise WitnessInvalid("%s: %s" % (cname, detail))
    return report
