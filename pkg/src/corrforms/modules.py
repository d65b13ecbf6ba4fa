"""Finitely presented modules over quotient rings.

A module is R^g modulo the row span of a relation matrix.  All submodule
questions (membership, lifts, syzygies) are answered by one device: work
in the ambient polynomial ring, append ideal multiples of the unit vectors
as extra generators, and run the module Groebner engine.  Kernels, Hom
modules, duals and biduals are all assembled from that single primitive.

Restriction of scalars along a module-finite inclusion A -> B needs a free
A-basis of B, supplied by the caller and verified here: the basis must
have the size of the generic rank, be independent over Frac(A), and all
needed coordinates must come out integral.
"""

from __future__ import annotations

from .errors import NotAHomomorphism, NotModuleFinite
from .groebner import ModuleBasis
from .linalg import solve
from .polyring import format_poly
from .rings import FiniteAlgebra, FracElement, compose


def _canon_rows(qring, rows):
    """Normal-form, deduplicate and sort relation rows deterministically."""
    seen = set()
    out = []
    for row in rows:
        r = tuple(qring.nf(p) for p in row)
        if all(p.is_zero() for p in r):
            continue
        key = tuple(p.sorted_terms() for p in r)
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    out.sort(key=lambda r: tuple(p.sort_value() for p in r))
    return tuple(out)


class Span:
    """Submodule of R^rank over a quotient ring R, given by generators.

    Membership and lifts are computed in the ambient polynomial ring with
    ideal paddings appended after the real generators.
    """

    def __init__(self, qring, rank, vectors):
        self.qring = qring
        self.rank = rank
        self.vectors = [tuple(qring.nf(p) for p in v) for v in vectors]
        padded = [list(v) for v in self.vectors]
        ring = qring.ring
        for f in qring.gb:
            for j in range(rank):
                row = [ring.zero] * rank
                row[j] = f
                padded.append(row)
        self._n_real = len(self.vectors)
        self.mb = ModuleBasis(padded, rank, ring)

    def reduce(self, v):
        """Canonical normal form of v modulo the span (and the ideal)."""
        return tuple(self.mb.reduce([self.qring.nf(p) for p in v]))

    def contains(self, v):
        return all(p.is_zero() for p in self.reduce(v))

    def lift(self, v):
        """Coefficients over the real generators, or None.

        v = sum coeff_i * vectors[i] holds in R^rank (modulo the ideal).
        """
        rep = self.mb.lift([self.qring.nf(p) for p in v])
        if rep is None:
            return None
        return [self.qring.nf(rep.get(i, self.qring.ring.zero))
                for i in range(self._n_real)]

    def syzygies(self):
        """Relations among the real generators, over R."""
        out = []
        for s in self.mb.syzygies():
            row = tuple(self.qring.nf(p) for p in s[:self._n_real])
            out.append(row)
        return _canon_rows(self.qring, out)


class PresentedModule:
    """R^gens modulo the row span of ``relations``."""

    def __init__(self, qring, gens, relations):
        self.qring = qring
        self.gens = gens
        self.relations = _canon_rows(qring, relations)
        for row in self.relations:
            if len(row) != gens:
                raise ValueError("relation row of wrong width")
        self._span = None

    def rel_span(self):
        if self._span is None:
            self._span = Span(self.qring, self.gens, self.relations)
        return self._span

    def reduce(self, v):
        """Canonical representative of an element given in coordinates."""
        return self.rel_span().reduce(v)

    def elements_equal(self, u, v):
        return self.rel_span().contains(
            [a - b for a, b in zip(u, v)])

    def is_zero_element(self, v):
        return self.rel_span().contains(v)

    def is_zero_module(self):
        ring = self.qring.ring
        for i in range(self.gens):
            e = [ring.zero] * self.gens
            e[i] = ring.one
            if not self.is_zero_element(e):
                return False
        return True

    def unit_vector(self, i):
        ring = self.qring.ring
        e = [ring.zero] * self.gens
        e[i] = ring.one
        return tuple(e)

    def __repr__(self):
        return "PresentedModule(gens=%d, relations=%d)" % (
            self.gens, len(self.relations))


def free_module(qring, rank):
    return PresentedModule(qring, rank, ())


class ModuleMap:
    """Map between presented modules over one ring, by generator images.

    ``cols[j]`` is the image of source generator j, in target coordinates.
    ``twist`` makes the map semilinear: m(a x) = twist(a) m(x).  The
    constructor verifies every source relation maps into the target span.
    """

    def __init__(self, source, target, cols, twist=None, check=True):
        if source.qring != target.qring:
            raise TypeError("module map across different rings")
        self.source = source
        self.target = target
        self.qring = source.qring
        self.cols = [tuple(self.qring.nf(p) for p in c) for c in cols]
        if len(self.cols) != source.gens:
            raise ValueError("need one column per source generator")
        self.twist = twist
        if check:
            for row in source.relations:
                img = self.apply(row)
                if not target.is_zero_element(img):
                    raise NotAHomomorphism(
                        "module map does not kill relation (%s)"
                        % ", ".join(str(p) for p in row),
                        detail=row)

    def apply(self, v):
        ring = self.qring.ring
        out = [ring.zero] * self.target.gens
        for j, c in enumerate(v):
            if c.is_zero():
                continue
            if self.twist is not None:
                c = self.twist.apply(c)
            for i, p in enumerate(self.cols[j]):
                out[i] = out[i] + c * p
        return tuple(self.qring.nf(p) for p in out)

    def is_linear(self):
        if self.twist is None:
            return True
        ring = self.qring.ring
        return all(self.twist.apply(ring.var(i)) == self.qring.nf(ring.var(i))
                   for i in range(ring.nvars))

    def __repr__(self):
        return "ModuleMap(%d -> %d gens%s)" % (
            self.source.gens, self.target.gens,
            ", twisted" if self.twist is not None else "")


def map_compose(outer, inner):
    cols = [outer.apply(c) for c in inner.cols]
    twist = None
    if inner.twist is not None and outer.twist is not None:
        twist = compose(outer.twist, inner.twist)
    else:
        twist = inner.twist or outer.twist
    return ModuleMap(inner.source, outer.target, cols, twist=twist, check=False)


def kernel_vectors(qring, cols, target_rank, target_relations):
    """Generators of {x : sum x_j cols[j] lies in span(target_relations)}.

    The result is a canonical tuple of vectors in R^len(cols); it always
    contains the coordinate relations coming from the ideal.
    """
    ring = qring.ring
    n = len(cols)
    inputs = [[qring.nf(p) for p in c] for c in cols]
    n_real = n
    for row in target_relations:
        inputs.append([qring.nf(p) for p in row])
    for f in qring.gb:
        for j in range(target_rank):
            row = [ring.zero] * target_rank
            row[j] = f
            inputs.append(row)
    if not inputs:
        return ()
    mb = ModuleBasis(inputs, target_rank, ring)
    out = []
    for s in mb.syzygies():
        head = tuple(qring.nf(p) for p in s[:n_real])
        out.append(head)
    return _canon_rows(qring, out)


def kernel(mmap):
    """Kernel of a linear module map: (module, inclusion into the source).

    The inclusion columns are coordinate vectors of the kernel generators
    inside the source's generator coordinates.
    """
    if not mmap.is_linear():
        raise ValueError("kernel needs a linear map")
    gens = kernel_vectors(mmap.qring, mmap.cols, mmap.target.gens,
                          mmap.target.relations)
    rels = kernel_vectors(mmap.qring, list(gens), mmap.source.gens,
                          mmap.source.relations)
    kmod = PresentedModule(mmap.qring, len(gens), rels)
    incl = ModuleMap(kmod, mmap.source, list(gens), check=False)
    return kmod, incl


class HomData:
    """Hom(M, N) as a presented module plus encode and decode.

    A hom generator is stored flat: index j*N.gens + i is the i-th target
    coordinate of the image of source generator j.
    """

    def __init__(self, source, target):
        self.source = source
        self.target = target
        qring = source.qring
        ring = qring.ring
        gm, gn = source.gens, target.gens
        width = gm * gn
        # unknown map phi lives flat in R^width; for each source relation
        # (index t) the constraint is sum_j r_j phi_j in span(target rel),
        # i.e. one map R^width -> (R^gn)^{#rel} whose kernel we take
        nrel = len(source.relations)
        columns = []
        for j in range(gm):
            for i in range(gn):
                col = [ring.zero] * (nrel * gn)
                for t, row in enumerate(source.relations):
                    col[t * gn + i] = row[j]
                columns.append(col)
        modulo = []
        for t in range(nrel):
            for row in target.relations:
                big = [ring.zero] * (nrel * gn)
                for i in range(gn):
                    big[t * gn + i] = row[i]
                modulo.append(big)
        if nrel == 0:
            # no constraints: Hom generators are all unit matrices
            hom_gens = []
            for j in range(gm):
                for i in range(gn):
                    v = [ring.zero] * width
                    v[j * gn + i] = ring.one
                    hom_gens.append(tuple(v))
            hom_gens = tuple(hom_gens)
        else:
            hom_gens = kernel_vectors(qring, columns, nrel * gn, modulo)
        self.hom_gens = hom_gens
        # relations among hom generators: combinations equal to a map that
        # is zero on every generator, i.e. each column in span(target rel)
        modulo2 = []
        for j in range(gm):
            for row in target.relations:
                big = [ring.zero] * width
                for i in range(gn):
                    big[j * gn + i] = row[i]
                modulo2.append(big)
        rels = kernel_vectors(qring, list(hom_gens), width, modulo2)
        self.module = PresentedModule(qring, len(hom_gens), rels)
        self._lift_span = None

    def decode(self, coeffs):
        """The module map given by coordinates over the hom generators."""
        qring = self.source.qring
        ring = qring.ring
        gm, gn = self.source.gens, self.target.gens
        flat = [ring.zero] * (gm * gn)
        for c, g in zip(coeffs, self.hom_gens):
            for k, p in enumerate(g):
                flat[k] = flat[k] + c * p
        cols = [tuple(qring.nf(flat[j * gn + i]) for i in range(gn))
                for j in range(gm)]
        return ModuleMap(self.source, self.target, cols, check=False)

    def decode_gen(self, t):
        one = self.source.qring.ring.one
        zero = self.source.qring.ring.zero
        return self.decode([one if i == t else zero
                            for i in range(len(self.hom_gens))])

    def encode(self, mmap):
        """Coordinates of a map over the hom generators, or None."""
        qring = self.source.qring
        ring = qring.ring
        gm, gn = self.source.gens, self.target.gens
        flat = []
        for j in range(gm):
            flat.extend(mmap.cols[j])
        if self._lift_span is None:
            modulo2 = []
            for j in range(gm):
                for row in self.target.relations:
                    big = [ring.zero] * (gm * gn)
                    for i in range(gn):
                        big[j * gn + i] = row[i]
                    modulo2.append(big)
            vectors = list(self.hom_gens) + modulo2
            self._lift_span = (Span(qring, gm * gn, vectors),
                               len(self.hom_gens))
        span, n_real = self._lift_span
        co = span.lift(flat)
        if co is None:
            return None
        return co[:n_real]


def dual(module):
    return HomData(module, free_module(module.qring, 1))


class BidualData:
    """M, its dual, its bidual, and the evaluation map M -> M**."""

    def __init__(self, module):
        self.module = module
        self.dual = dual(module)
        self.bidual = dual(self.dual.module)
        qring = module.qring
        nat_cols = []
        for i in range(module.gens):
            # evaluation at generator i: dual gen t has value v_t[i]
            vec = []
            for t in range(len(self.dual.hom_gens)):
                functional = self.dual.hom_gens[t]
                vec.append(functional[i])
            target_map = ModuleMap(self.dual.module,
                                   free_module(qring, 1),
                                   [(c,) for c in vec], check=False)
            co = self.bidual.encode(target_map)
            if co is None:
                raise AssertionError("evaluation functional escaped the bidual")
            nat_cols.append(tuple(co))
        self.nat = ModuleMap(module, self.bidual.module, nat_cols)

    def nat_injective(self):
        kmod, _ = kernel(self.nat)
        return kmod.is_zero_module()

    def nat_surjective(self):
        span = Span(self.module.qring, self.bidual.module.gens,
                    list(self.nat.cols) + list(self.bidual.module.relations))
        for i in range(self.bidual.module.gens):
            if not span.contains(self.bidual.module.unit_vector(i)):
                return False
        return True


# --- restriction of scalars ------------------------------------------------

class ScalarRestriction:
    """A-linear coordinates on B along a module-finite inclusion A -> B.

    ``basis`` must be a free A-basis of B.  Verification here: the basis
    has generic-rank many elements and is invertible over Frac(A).
    Integrality of individual coordinates is enforced at use sites, so a
    generating set that is not free fails loudly rather than silently.
    """

    def __init__(self, inclusion, basis):
        self.inclusion = inclusion
        self.A = inclusion.source
        self.B = inclusion.target
        self.basis = [self.B.nf(b) for b in basis]
        self.alg = FiniteAlgebra(inclusion)
        self.rank = self.alg.dim
        if self.rank != len(self.basis):
            raise NotModuleFinite(
                "basis has %d elements but the generic rank is %d"
                % (len(self.basis), self.rank))
        L = self.alg.L
        cols = [self.alg.coords(self.alg.from_target(b)) for b in self.basis]
        mat = [[cols[j][i] for j in range(self.rank)]
               for i in range(self.rank)]
        self._mat = mat
        self._inv_cols = []
        for i in range(self.rank):
            rhs = [L.one if t == i else L.zero for t in range(self.rank)]
            sol = solve(mat, rhs, L.zero)
            if sol is None:
                raise NotModuleFinite(
                    "supplied elements are not a basis over Frac(A)")
            self._inv_cols.append(sol)
        self._denom_spans = {}

    def l_coords(self, z):
        """Coordinates of z in the basis, over Frac(A)."""
        raw = self.alg.coords(self.alg.from_target(z))
        out = []
        for i in range(self.rank):
            acc = self.alg.L.zero
            for t in range(self.rank):
                acc = acc + self._inv_cols[t][i] * raw[t]
            out.append(acc)
        return out

    def _integral(self, fr):
        """A-representative of a fraction, or None if not integral."""
        p, q = fr.num, fr.den
        if q.is_one():
            return self.A.nf(p)
        key = q.sorted_terms()
        sp = self._denom_spans.get(key)
        if sp is None:
            sp = Span(self.A, 1, [(q,)])
            self._denom_spans[key] = sp
        co = sp.lift((p,))
        if co is None:
            return None
        return self.A.nf(co[0])

    def a_coords(self, z):
        """Coordinates in A; raises when z is outside the A-span."""
        out = []
        for fr in self.l_coords(z):
            val = self._integral(fr)
            if val is None:
                raise NotModuleFinite(
                    "element %s has non-integral coordinate %s" % (z, fr))
            out.append(val)
        return out

    def decode_scalar(self, coords):
        """Back from A-coordinates to an element of B."""
        acc = self.B.ring.zero
        for a, b in zip(coords, self.basis):
            acc = acc + self.inclusion.apply(a) * b
        return self.B.nf(acc)

    # -- modules --

    def encode_vec(self, v):
        """B-vector -> flat A-coordinates (gen index major, basis minor)."""
        out = []
        for p in v:
            out.extend(self.a_coords(p))
        return out

    def decode_vec(self, coords, gens):
        out = []
        for i in range(gens):
            chunk = coords[i * self.rank:(i + 1) * self.rank]
            out.append(self.decode_scalar(chunk))
        return tuple(out)

    def restrict_module(self, module):
        """The underlying A-module of a presented B-module."""
        rows = []
        for row in module.relations:
            for b in self.basis:
                rows.append(self.encode_vec([b * p for p in row]))
        return PresentedModule(self.A, module.gens * self.rank, rows)

    def restrict_map_columns(self, mmap):
        """Columns of the A-linear matrix of a (possibly twisted) map."""
        cols = []
        for i in range(mmap.source.gens):
            for b in self.basis:
                e = [mmap.qring.ring.zero] * mmap.source.gens
                e[i] = b
                cols.append(self.encode_vec(mmap.apply(e)))
        return cols


class InvariantsData:
    """Fixed elements of a module under a finite group of twisted maps.

    Presented over A; ``decode(t)`` returns the t-th generator as a vector
    over the original B-module generators.
    """

    def __init__(self, module, actions, restriction):
        self.module_B = module
        self.restriction = restriction
        ma = restriction.restrict_module(module)
        self.restricted = ma
        n = ma.gens
        ring = restriction.A.ring
        stacked_cols = [[] for _ in range(n)]
        stacked_rels = []
        blocks = 0
        for act in actions:
            cols = restriction.restrict_map_columns(act)
            for s in range(n):
                unit = [ring.zero] * n
                unit[s] = ring.one
                diff = [a - b for a, b in zip(cols[s], unit)]
                stacked_cols[s].extend(diff)
            blocks += 1
        for bidx in range(blocks):
            for row in ma.relations:
                big = [ring.zero] * (blocks * n)
                for i in range(n):
                    big[bidx * n + i] = row[i]
                stacked_rels.append(big)
        gens = kernel_vectors(restriction.A, stacked_cols, blocks * n,
                              stacked_rels)
        rels = kernel_vectors(restriction.A, list(gens), n, ma.relations)
        self.module = PresentedModule(restriction.A, len(gens), rels)
        self._gens = gens

    def decode(self, t):
        """Invariant generator t as an element of the original B-module."""
        coords = self._gens[t]
        return self.restriction.decode_vec(list(coords),
                                           self.module_B.gens)

    def all_decoded(self):
        return [self.decode(t) for t in range(self.module.gens)]


def invariants(module, actions, restriction):
    return InvariantsData(module, actions, restriction)


def dual_action(hom_data, action, action_inv, g):
    """Transport a twisted action through Hom(M, R).

    ``hom_data`` presents Hom(M, R) for the module ``action`` acts on;
    ``action_inv`` is the action of the inverse group element.  The result
    acts on hom_data.module, twisted by the same ring automorphism g, by
    (g . phi)(m) = g(phi(action_inv(m))).
    """
    M = hom_data.source
    qring = M.qring
    cols = []
    for t in range(hom_data.module.gens):
        v = [hom_data.decode_gen(t).cols[j][0] for j in range(M.gens)]
        w = []
        for i in range(M.gens):
            pre = action_inv.cols[i]  # action_inv applied to generator i
            acc = qring.ring.zero
            for j in range(M.gens):
                acc = acc + g.apply(pre[j]) * g.apply(v[j])
            w.append(qring.nf(acc))
        fn = ModuleMap(M, free_module(qring, 1), [(c,) for c in w],
                       check=False)
        co = hom_data.encode(fn)
        if co is None:
            raise AssertionError("transported functional left the hom module")
        cols.append(tuple(co))
    return ModuleMap(hom_data.module, hom_data.module, cols, twist=g)


# --- denominators of rational sections -------------------------------------

def integral_rep(qring, fr):
    """Polynomial representative of a fraction, or None.

    Solves num = rep * den modulo the ideal; existence says the fraction
    is regular on the whole of Spec(qring).
    """
    if fr.field.base != qring:
        raise TypeError("fraction over a different ring")
    num, den = fr.num, fr.den
    if den.is_one():
        return qring.nf(num)
    sp = Span(qring, 1, [(den,)])
    co = sp.lift((num,))
    if co is None:
        return None
    return qring.nf(co[0])


class DenominatorData:
    """Colon ideal of a rational section of a presented module.

    ``gens``: generators of {f in R : f * xi comes from the module}.
    ``gb``: reduced basis of that ideal together with the ring ideal, so
    ``contains_one`` is canonical.  When the section is regular,
    ``certificate`` holds polynomial coordinates v with xi = v as rational
    sections (xi - v lies in the Frac(R)-span of the relations).
    """

    def __init__(self, gens, gb, certificate):
        self.gens = gens
        self.gb = gb
        self.certificate = certificate

    @property
    def contains_one(self):
        return len(self.gb) == 1 and self.gb[0].is_one()


def denominator_ideal(module, xi):
    """DenominatorData for coordinates xi over Frac(module.qring)."""
    from .groebner import groebner_ideal
    from .linalg import row_echelon

    qring = module.qring
    ring = qring.ring
    g = module.gens
    if len(xi) != g:
        raise ValueError("coordinate vector of wrong length")
    K = xi[0].field if xi else None
    if K is None or all(x.is_zero() for x in xi):
        gb = groebner_ideal([ring.one], ring)
        return DenominatorData((ring.one,), gb,
                               tuple(ring.zero for _ in range(g)))
    # echelonize the relation span over the fraction field
    rel_rows = [[K.from_poly(p) for p in row] for row in module.relations]
    red, pivots = row_echelon(rel_rows, K.zero) if rel_rows else ([], [])
    red = red[:len(pivots)]
    nonpiv = [c for c in range(g) if c not in pivots]

    def project(vec):
        v = list(vec)
        for r, pc in enumerate(pivots):
            f = v[pc]
            if not f.is_zero():
                v = [a - f * b for a, b in zip(v, red[r])]
        return [v[c] for c in nonpiv]

    w = project(xi)
    ms = []
    for i in range(g):
        unit = [K.one if c == i else K.zero for c in range(g)]
        ms.append(project(unit))
    # clear denominators with one common multiplier
    denoms = []
    for vec in [w] + ms:
        for fr in vec:
            denoms.append(fr.den)
    common = ring.one
    seen = set()
    for d in denoms:
        key = d.sorted_terms()
        if key not in seen and not d.is_one():
            seen.add(key)
            common = common * d

    def clear(vec):
        out = []
        for fr in vec:
            scaled = fr * K.from_poly(common)
            p = scaled.as_poly()
            if p is None:
                p = integral_rep(qring, scaled)
            if p is None:
                raise AssertionError("common denominator failed to clear")
            out.append(qring.nf(p))
        return out

    width = len(nonpiv)
    if width == 0:
        # the relations span everything rationally: xi is torsion-like
        gb = groebner_ideal([ring.one], ring)
        cert = tuple(ring.zero for _ in range(g))
        return DenominatorData((ring.one,), gb, cert)
    w_c = clear(w)
    ms_c = [clear(m) for m in ms]
    sp = Span(qring, width, [w_c] + ms_c)
    syz = sp.syzygies()
    colon = []
    syz_kept = []
    for row in syz:
        f = qring.nf(row[0])
        if not f.is_zero():
            colon.append(f)
            syz_kept.append(row)
    gb = groebner_ideal(colon + list(qring.gens), ring)
    certificate = None
    if len(gb) == 1 and gb[0].is_one():
        lifter = Span(qring, 1, [(f,) for f in colon])
        co = lifter.lift((ring.one,))
        if co is None:
            raise AssertionError("unit colon ideal without a unit lift")
        cert = [ring.zero] * g
        for c, row in zip(co, syz_kept):
            for i in range(g):
                cert[i] = cert[i] - c * row[1 + i]
        certificate = tuple(qring.nf(p) for p in cert)
    return DenominatorData(tuple(colon), gb, certificate)
