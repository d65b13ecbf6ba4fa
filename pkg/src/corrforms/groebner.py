"""Buchberger's algorithm for ideals and for submodules of free modules.

Ideal bases use the normal selection strategy plus both classical pair
criteria (coprime leading monomials, and the chain criterion).  Module
bases over a free module use position-over-term compare with the ring's
monomial order first; the pair criteria are switched off there because
their proofs do not carry over to vectors.

Syzygies are computed in two stages so completeness is by the book: first
the basis is finished, then every S-pair of the finished basis is reduced
with quotient tracking (Schreyer generators), and every input is divided
by the finished basis to recover the re-expression rows.  Both families
are transported back to input coordinates.
"""

from __future__ import annotations

from .polyring import Poly, mono_div, mono_lcm, mono_mul


# --- ideal case ------------------------------------------------------------

def reduce_poly(p, gens):
    """Full normal form of ``p`` against a polynomial list, with quotients.

    Returns (remainder, quotients) where quotients[i] collects the factor
    applied to gens[i].  Divisor choice is first-match in list order, which
    keeps the result deterministic.
    """
    ring = p.ring
    quots = [ring.zero for _ in gens]
    tail = ring.zero
    work = p
    leads = [g.leading() for g in gens]
    while not work.is_zero():
        mono, coeff = work.leading()
        hit = None
        for i, (gm, gc) in enumerate(leads):
            q = mono_div(mono, gm)
            if q is not None:
                hit = (i, q, coeff / gc)
                break
        if hit is None:
            t = ring.monomial(mono, coeff)
            tail = tail + t
            work = work - t
        else:
            i, qm, qc = hit
            quots[i] = quots[i] + ring.monomial(qm, qc)
            work = work - gens[i].term_mul(qm, qc)
    return tail, quots


def normal_form(p, gens):
    return reduce_poly(p, gens)[0]


def groebner_ideal(gens, ring=None):
    """Reduced Groebner basis of an ideal, as a canonical sorted tuple."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return ()
    ring = gens[0].ring
    basis = []
    for g in gens:
        r = normal_form(g, basis) if basis else g
        if not r.is_zero():
            basis.append(r.monic())
    pairs = set()
    done = set()
    for i in range(len(basis)):
        for j in range(i):
            pairs.add((j, i))

    def pair_key(ij):
        i, j = ij
        lcm = mono_lcm(basis[i].leading()[0], basis[j].leading()[0])
        return (ring.order_key(lcm), i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        done.add((i, j))
        mi = basis[i].leading()[0]
        mj = basis[j].leading()[0]
        lcm = mono_lcm(mi, mj)
        if mono_mul(mi, mj) == lcm:
            continue  # coprime leads: S-polynomial reduces to zero
        chained = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if mono_div(lcm, basis[k].leading()[0]) is None:
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in done and b in done:
                chained = True
                break
        if chained:
            continue
        one = ring.field.one
        s = basis[i].term_mul(mono_div(lcm, mi), one) \
            - basis[j].term_mul(mono_div(lcm, mj), one)
        r = normal_form(s, basis)
        if not r.is_zero():
            basis.append(r.monic())
            k = len(basis) - 1
            for t in range(k):
                pairs.add((t, k))
    return _autoreduce(basis, ring)


def _autoreduce(basis, ring):
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            others = basis[:i] + basis[i + 1:]
            r = normal_form(basis[i], others) if others else basis[i]
            r = r.monic()
            if r != basis[i]:
                changed = True
                if r.is_zero():
                    basis = others
                else:
                    basis = others[:i] + [r] + others[i:]
                break
    basis.sort(key=lambda g: ring.order_key(g.leading()[0]), reverse=True)
    return tuple(basis)


def ideal_contains_one(gb):
    return len(gb) == 1 and gb[0].is_one()


def eliminate(gens, ring, kill):
    """Generators of the ideal's contraction to the subring without ``kill``.

    Uses a lex order with the killed variables in front; returns the
    contraction ring (degrevlex, remaining variables in original order)
    and the contracted generators.
    """
    from .polyring import PolyRing
    kill = set(kill)
    front = [v for v in ring.vars if v in kill]
    back = [v for v in ring.vars if v not in kill]
    lex_ring = PolyRing(ring.field, front + back, order="lex")
    gb = groebner_ideal([g.cast(lex_ring) for g in gens], lex_ring)
    keep_ring = PolyRing(ring.field, back, order="degrevlex")
    kept = []
    front_idx = list(range(len(front)))
    for g in gb:
        if all(all(m[i] == 0 for i in front_idx) for m in g.terms):
            kept.append(g.cast(keep_ring))
    return keep_ring, tuple(kept)


# --- module case -----------------------------------------------------------

def vec_zero(ring, rank):
    return [ring.zero] * rank

def vec_is_zero(v):
    return all(c.is_zero() for c in v)

def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]

def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]

def vec_term_mul(v, mono, coeff):
    return [c.term_mul(mono, coeff) for c in v]

def vec_leading(v, ring):
    """(pos, mono, coeff) of the top term; position breaks ties, lower wins."""
    best = None
    for pos, c in enumerate(v):
        if c.is_zero():
            continue
        mono, coeff = c.leading()
        key = (ring.order_key(mono), -pos)
        if best is None or key > best[0]:
            best = (key, pos, mono, coeff)
    if best is None:
        return None
    return best[1], best[2], best[3]


class ModuleBasis:
    """Groebner basis of a submodule of R^rank, with input bookkeeping.

    ``inputs`` are the generating vectors.  Every basis element carries its
    representation over the inputs, so membership tests double as lift
    certificates.  ``syzygies()`` returns generators of the relation module
    of the inputs, in input coordinates.
    """

    def __init__(self, inputs, rank, ring):
        self.ring = ring
        self.rank = rank
        self.inputs = [list(v) for v in inputs]
        self.elements = []
        self.reps = []  # rep[i]: dict input index -> Poly
        self._syz = None
        self._build()

    # -- construction --

    def _build(self):
        for idx, v in enumerate(self.inputs):
            if vec_is_zero(v):
                continue
            r, rq = self._reduce_tracked(v, {idx: self.ring.one})
            if not vec_is_zero(r):
                self._append(r, rq)
        pairs = set()
        for i in range(len(self.elements)):
            for j in range(i):
                if self._lead(i)[0] == self._lead(j)[0]:
                    pairs.add((j, i))

        def pair_key(ij):
            i, j = ij
            lcm = mono_lcm(self._lead(i)[1], self._lead(j)[1])
            return (self.ring.order_key(lcm), i, j)

        while pairs:
            i, j = min(pairs, key=pair_key)
            pairs.discard((i, j))
            pi, mi, _ = self._lead(i)
            pj, mj, _ = self._lead(j)
            lcm = mono_lcm(mi, mj)
            one = self.ring.field.one
            s = vec_sub(vec_term_mul(self.elements[i], mono_div(lcm, mi), one),
                        vec_term_mul(self.elements[j], mono_div(lcm, mj), one))
            srep = _rep_sub(
                _rep_term_mul(self.reps[i], mono_div(lcm, mi), one, self.ring),
                _rep_term_mul(self.reps[j], mono_div(lcm, mj), one, self.ring))
            r, rq = self._reduce_tracked(s, srep)
            if not vec_is_zero(r):
                self._append(r, rq)
                k = len(self.elements) - 1
                for t in range(k):
                    if self._lead(t)[0] == self._lead(k)[0]:
                        pairs.add((t, k))
        self._autoreduce()
        order = sorted(range(len(self.elements)),
                       key=lambda i: (self.ring.order_key(self._lead(i)[1]),
                                      -self._lead(i)[0]),
                       reverse=True)
        self.elements = [self.elements[i] for i in order]
        self.reps = [self.reps[i] for i in order]

    def _lead(self, i):
        return vec_leading(self.elements[i], self.ring)

    def _append(self, v, rep):
        _, _, c = vec_leading(v, self.ring)
        inv = c.inverse()
        self.elements.append([p.scale(inv) for p in v])
        self.reps.append({k: p.scale(inv) for k, p in rep.items()
                          if not p.is_zero()})

    def _reduce_tracked(self, v, rep):
        """Full reduction carrying the input-coordinate representation."""
        r, quots = self._divide(v)
        rep = dict(rep)
        for i, q in quots.items():
            for k, p in self.reps[i].items():
                cur = rep.get(k, self.ring.zero)
                nxt = cur - q * p
                if nxt.is_zero():
                    rep.pop(k, None)
                else:
                    rep[k] = nxt
        return r, rep

    def _divide(self, v):
        """Reduce against current elements; (remainder, quotient dict)."""
        work = list(v)
        tail = vec_zero(self.ring, self.rank)
        quots = {}
        leads = [self._lead(i) for i in range(len(self.elements))]
        while True:
            top = vec_leading(work, self.ring)
            if top is None:
                break
            pos, mono, coeff = top
            hit = None
            for i, (p, m, c) in enumerate(leads):
                if p != pos:
                    continue
                q = mono_div(mono, m)
                if q is not None:
                    hit = (i, q, coeff / c)
                    break
            if hit is None:
                t = self.ring.monomial(mono, coeff)
                tail[pos] = tail[pos] + t
                work[pos] = work[pos] - t
            else:
                i, qm, qc = hit
                quots[i] = quots.get(i, self.ring.zero) \
                    + self.ring.monomial(qm, qc)
                work = vec_sub(work, vec_term_mul(self.elements[i], qm, qc))
        return tail, quots

    def _autoreduce(self):
        changed = True
        while changed:
            changed = False
            for i in range(len(self.elements)):
                held_e = self.elements[i]
                held_r = self.reps[i]
                del self.elements[i]
                del self.reps[i]
                if self.elements:
                    r, rep = self._reduce_tracked(held_e, held_r)
                else:
                    r, rep = held_e, held_r
                if vec_is_zero(r):
                    changed = True
                    break
                _, _, c = vec_leading(r, self.ring)
                inv = c.inverse()
                r = [p.scale(inv) for p in r]
                rep = {k: p.scale(inv) for k, p in rep.items()
                       if not p.is_zero()}
                if r != held_e:
                    changed = True
                self.elements.insert(i, r)
                self.reps.insert(i, rep)
                if changed:
                    break

    # -- queries --

    def reduce(self, v):
        """Normal form of a vector against the finished basis."""
        return self._divide(list(v))[0]

    def contains(self, v):
        return vec_is_zero(self.reduce(v))

    def lift(self, v):
        """Input-coordinate representation of ``v``, or None if outside.

        The result maps input index -> coefficient, with
        v = sum coeff * input.
        """
        r, quots = self._divide(list(v))
        if not vec_is_zero(r):
            return None
        rep = {}
        for i, q in quots.items():
            for k, p in self.reps[i].items():
                cur = rep.get(k, self.ring.zero)
                nxt = cur + q * p
                if nxt.is_zero():
                    rep.pop(k, None)
                else:
                    rep[k] = nxt
        return rep

    def syzygies(self):
        """Generators of the syzygy module of the inputs (dense vectors)."""
        if self._syz is not None:
            return self._syz
        ring = self.ring
        n = len(self.inputs)
        out = []
        # Schreyer generators from S-pairs of the finished basis
        for i in range(len(self.elements)):
            for j in range(i):
                pi, mi, _ = self._lead(i)
                pj, mj, _ = self._lead(j)
                if pi != pj:
                    continue
                lcm = mono_lcm(mi, mj)
                one = ring.field.one
                s = vec_sub(
                    vec_term_mul(self.elements[i], mono_div(lcm, mi), one),
                    vec_term_mul(self.elements[j], mono_div(lcm, mj), one))
                r, quots = self._divide(s)
                if not vec_is_zero(r):
                    raise AssertionError("S-pair did not reduce over its own basis")
                tau = _rep_sub(
                    _rep_term_mul(self.reps[i], mono_div(lcm, mi), one, ring),
                    _rep_term_mul(self.reps[j], mono_div(lcm, mj), one, ring))
                for k, q in quots.items():
                    for t, p in self.reps[k].items():
                        cur = tau.get(t, ring.zero)
                        nxt = cur - q * p
                        if nxt.is_zero():
                            tau.pop(t, None)
                        else:
                            tau[t] = nxt
                if tau:
                    out.append(tau)
        # re-expression rows: input minus its division over the basis
        for idx, v in enumerate(self.inputs):
            r, quots = self._divide(list(v))
            if not vec_is_zero(r):
                raise AssertionError("input did not reduce over the basis")
            row = {idx: ring.one}
            for k, q in quots.items():
                for t, p in self.reps[k].items():
                    cur = row.get(t, ring.zero)
                    nxt = cur - q * p
                    if nxt.is_zero():
                        row.pop(t, None)
                    else:
                        row[t] = nxt
            if row:
                out.append(row)
        dense = []
        seen = set()
        for rep in out:
            vec = tuple(rep.get(k, ring.zero) for k in range(n))
            key = tuple(p.sorted_terms() for p in vec)
            if key not in seen:
                seen.add(key)
                dense.append(vec)
        self._syz = dense
        return dense


def _rep_term_mul(rep, mono, coeff, ring):
    return {k: p.term_mul(mono, coeff) for k, p in rep.items()}

def _rep_sub(a, b):
    out = dict(a)
    for k, p in b.items():
        cur = out.get(k)
        nxt = -p if cur is None else cur - p
        if nxt.is_zero():
            out.pop(k, None)
        else:
            out[k] = nxt
    return out
