"""Text front end: expression grammar, canonical printing, workspaces.

The expression grammar is deliberately small: identifiers, integer and
a/b rational literals, ``+ - * ^``, parentheses, and ``d(x)`` atoms in
form expressions.  There is no implicit multiplication and no general
division.  Everything the CLI prints re-parses to an equal object.

Workspaces are TOML files with sections for the field, varieties,
covers, forms, correspondences, and the two witness kinds used by
composition and well-definedness checks.
"""

from __future__ import annotations

from fractions import Fraction

try:
    import tomllib
except ImportError:  # python 3.10
    import tomli as tomllib

from .descent import GaloisCoverDatum
from .errors import ParseError, WorkspaceError
from .kaehler import AffineVariety, PForm, wedge_indices
from .polyring import PolyRing
from .rings import QuotientRing, RingHom
from .scalars import QQ, make_extension
from .transfer import (CycleCorrespondence, FiberComponent, FiberWitness,
                       PrimeCorrespondence, ResultComponent)


# --- tokens -----------------------------------------------------------------

_SYMBOLS = "+-*^/()"


def _tokenize(text):
    out = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(("int", int(text[i:j]), i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(("name", text[i:j], i))
            i = j
            continue
        if c in _SYMBOLS:
            out.append(("op", c, i))
            i += 1
            continue
        raise ParseError("unexpected character %r" % c, position=i)
    out.append(("end", None, n))
    return out


class _Parser:
    """Shared cursor over a token list."""

    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val, at = self.next()
        if kind != "op" or val != op:
            raise ParseError("expected %r" % op, position=at)

    def at_op(self, op):
        kind, val, _ = self.peek()
        return kind == "op" and val == op

    def done(self):
        return self.peek()[0] == "end"


def _resolve_name(name, ring, at):
    if name in ring.vars:
        return ring.var(ring.vars.index(name))
    field = ring.field
    if getattr(field, "is_extension", False) and name == field.varname:
        return ring.const(field.gen())
    raise ParseError("unknown variable %r" % name, position=at)


def _parse_rational(p):
    kind, val, at = p.next()
    if kind != "int":
        raise ParseError("expected a number", position=at)
    if p.at_op("/"):
        p.next()
        kind2, val2, at2 = p.next()
        if kind2 != "int":
            raise ParseError("expected an integer denominator", position=at2)
        if val2 == 0:
            raise ParseError("zero denominator in literal", position=at2)
        return Fraction(val, val2)
    return Fraction(val)


def _parse_atom(p, ring):
    kind, val, at = p.peek()
    if kind == "int":
        return ring.const(ring.field.from_fraction(_parse_rational(p)))
    if kind == "name":
        p.next()
        return _resolve_name(val, ring, at)
    if kind == "op" and val == "(":
        p.next()
        inner = _parse_expr(p, ring)
        p.expect_op(")")
        return inner
    raise ParseError("expected a value", position=at)


def _parse_power(p, ring):
    base = _parse_atom(p, ring)
    while p.at_op("^"):
        p.next()
        kind, val, at = p.next()
        if kind != "int" or val < 0:
            raise ParseError("exponent must be a nonnegative integer",
                             position=at)
        base = base ** val
    return base


def _parse_unary(p, ring):
    if p.at_op("-"):
        p.next()
        return -_parse_unary(p, ring)
    if p.at_op("+"):
        p.next()
        return _parse_unary(p, ring)
    return _parse_power(p, ring)


def _parse_term(p, ring):
    acc = _parse_unary(p, ring)
    while p.at_op("*"):
        p.next()
        acc = acc * _parse_unary(p, ring)
    return acc


def _parse_expr(p, ring):
    acc = _parse_term(p, ring)
    while True:
        if p.at_op("+"):
            p.next()
            acc = acc + _parse_term(p, ring)
        elif p.at_op("-"):
            p.next()
            acc = acc - _parse_term(p, ring)
        else:
            return acc


def parse_poly(text, ring):
    """Parse a polynomial over the given ring; the whole text must parse."""
    p = _Parser(text)
    value = _parse_expr(p, ring)
    if not p.done():
        raise ParseError("trailing input", position=p.peek()[2])
    return value


def parse_minpoly(text, varname):
    """Dense rational coefficient list (low degree first) of a univariate."""
    ring = PolyRing(QQ, (varname,))
    poly = parse_poly(text, ring)
    if poly.is_zero():
        raise ParseError("zero minimal polynomial")
    deg = poly.degree_in(0)
    out = [Fraction(0)] * (deg + 1)
    for mono, coeff in poly.terms.items():
        out[mono[0]] = coeff.as_fraction()
    return out


# --- forms ------------------------------------------------------------------

def _parse_d_atom(p, ring):
    """Consume d(NAME); the caller has seen the 'd'."""
    p.expect_op("(")
    kind, val, at = p.next()
    if kind != "name" or val not in ring.vars:
        raise ParseError("d() needs a ring variable", position=at)
    p.expect_op(")")
    return ring.vars.index(val)


def _at_d_atom(p, ring):
    kind, val, _ = p.peek()
    if kind != "name" or val != "d":
        return False
    nkind, nval, _ = p.toks[p.pos + 1]
    return nkind == "op" and nval == "("


def _parse_form_summand(p, ring):
    """One additive piece: coefficient polynomial and a wedge index list."""
    coeff = ring.one
    indices = []
    expect_wedge = False
    first = True
    while True:
        if _at_d_atom(p, ring):
            p.next()
            indices.append(_parse_d_atom(p, ring))
            expect_wedge = True
        else:
            if expect_wedge:
                raise ParseError("expected another d() factor",
                                 position=p.peek()[2])
            coeff = coeff * _parse_power(p, ring)
        first = False
        if p.at_op("*"):
            if expect_wedge:
                raise ParseError("cannot multiply after a d() factor",
                                 position=p.peek()[2])
            p.next()
            continue
        if p.at_op("^") and expect_wedge:
            p.next()
            if not _at_d_atom(p, ring):
                raise ParseError("wedge needs a d() factor",
                                 position=p.peek()[2])
            expect_wedge = False
            continue
        break
    if first:
        raise ParseError("empty form term", position=p.peek()[2])
    return coeff, indices


def _wedge_sign(indices):
    """Sort, counting transpositions; None for a repeated factor."""
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(idx)):
        if idx[i - 1] == idx[i]:
            return None, None
    return tuple(idx), sign


def parse_form(text, qring, degree):
    """Parse a differential form of the given degree over the ring.

    Nonzero summands must carry exactly ``degree`` wedge factors; a bare
    polynomial summand is allowed only in degree 0 (or when it is zero).
    """
    ring = qring.ring
    p = _Parser(text)
    coeffs = {}

    def push(sign, coeff, indices):
        if coeff.is_zero():
            return
        if len(indices) != degree:
            raise ParseError(
                "term has %d wedge factor(s), form has degree %d"
                % (len(indices), degree), position=p.peek()[2])
        key, wsign = _wedge_sign(indices)
        if key is None:
            return
        c = coeff if sign * wsign > 0 else -coeff
        cur = coeffs.get(key)
        coeffs[key] = c if cur is None else cur + c

    sign = 1
    if p.at_op("-"):
        p.next()
        sign = -1
    elif p.at_op("+"):
        p.next()
    coeff, indices = _parse_form_summand(p, ring)
    push(sign, coeff, indices)
    while not p.done():
        if p.at_op("+"):
            sign = 1
        elif p.at_op("-"):
            sign = -1
        else:
            raise ParseError("expected + or - between form terms",
                             position=p.peek()[2])
        p.next()
        coeff, indices = _parse_form_summand(p, ring)
        push(sign, coeff, indices)
    return PForm(qring, degree, {k: v for k, v in coeffs.items()
                                 if not v.is_zero()})


# --- canonical printing -----------------------------------------------------

def _is_atomic(text):
    return " + " not in text and " - " not in text


def _coeff_pieces(c, wrap=True):
    """(negative, core_text) for a fraction coefficient.

    The sign is split off only for single-term coefficients; a multi-term
    coefficient keeps its signs inside the wrapping parentheses.
    """
    from .polyring import format_poly
    if not c.den.is_one():
        return False, "(%s)/(%s)" % (format_poly(c.num), format_poly(c.den))
    txt = format_poly(c.num)
    if _is_atomic(txt.lstrip("-")):
        neg = txt.startswith("-")
        return neg, txt[1:] if neg else txt
    if wrap:
        return False, "(%s)" % txt
    return False, txt


def format_form(form):
    """Canonical text: ``c * d(x) ^ d(y)`` terms, wedges ascending."""
    if form.is_coefficient_zero():
        return "0"
    ring = form.qring.ring
    pieces = []
    for I in sorted(form.coeffs):
        c = form.coeffs[I]
        if I:
            neg, core = _coeff_pieces(c)
            wedge = " ^ ".join("d(%s)" % ring.vars[i] for i in I)
            body = "%s * %s" % (core, wedge)
        else:
            # nothing follows a degree-0 coefficient, so no parentheses
            neg, body = _coeff_pieces(c, wrap=False)
        pieces.append((neg, body))
    out = []
    for k, (neg, body) in enumerate(pieces):
        if k == 0:
            out.append("-" + body if neg else body)
        else:
            out.append(" - " + body if neg else " + " + body)
    return "".join(out)


def _entry_text(poly, gen_name):
    """One relation-row entry in the tight ``2*x*d(x)`` style."""
    from .polyring import format_poly
    txt = format_poly(poly)
    neg = txt.startswith("-")
    core = txt[1:] if neg else txt
    if not _is_atomic(core):
        return False, "(%s)*%s" % (txt, gen_name)
    if core == "1":
        return neg, gen_name
    return neg, "%s*%s" % (core, gen_name)


def format_relation_row(row, gen_names):
    pieces = []
    for p, gname in zip(row, gen_names):
        if p.is_zero():
            continue
        pieces.append(_entry_text(p, gname))
    if not pieces:
        return "0"
    out = []
    for k, (neg, body) in enumerate(pieces):
        if k == 0:
            out.append("-" + body if neg else body)
        else:
            out.append(" - " + body if neg else " + " + body)
    return "".join(out)


def trim_presentation(gens, rows):
    """Drop generators killed by unit relation rows.

    A row that is a unit multiple of a single generator kills it; the
    corresponding column is removed everywhere.  Returns (kept generator
    indices, reduced rows).
    """
    killed = set()
    for row in rows:
        support = [j for j, p in enumerate(row) if not p.is_zero()]
        if len(support) != 1:
            continue
        j = support[0]
        p = row[j]
        if len(p.terms) == 1:
            mono, _ = p.leading()
            if all(e == 0 for e in mono):
                killed.add(j)
    kept = [j for j in range(gens) if j not in killed]
    out = []
    seen = set()
    for row in rows:
        new = tuple(row[j] for j in kept)
        if all(p.is_zero() for p in new):
            continue
        key = tuple(p.sorted_terms() for p in new)
        if key in seen:
            continue
        seen.add(key)
        out.append(new)
    return kept, out


def format_presentation(qring, p, module, base=None):
    """One-line generators/relations view of a form module."""
    names = []
    for I in wedge_indices(qring.ring.nvars, p):
        if I:
            names.append(" ^ ".join("d(%s)" % qring.ring.vars[i] for i in I))
        else:
            names.append("1")
    kept, rows = trim_presentation(module.gens, list(module.relations))
    gen_txt = ", ".join(names[j] for j in kept)
    if not kept:
        gen_txt = "none"
    if rows:
        rel_txt = ", ".join(
            format_relation_row(row, [names[j] for j in kept])
            for row in rows)
    else:
        rel_txt = "none"
    return "generators: %s; relations: %s" % (gen_txt, rel_txt)


# --- workspaces -------------------------------------------------------------

class Workspace:
    """Parsed workspace: named varieties, covers, forms, correspondences."""

    def __init__(self, field):
        self.field = field
        self.varieties = {}
        self.covers = {}
        self.forms = {}
        self.correspondences = {}
        self.fiber_witnesses = {}
        self.well_witnesses = {}

    def variety(self, name):
        if name not in self.varieties:
            raise WorkspaceError("unknown variety %r" % name)
        return self.varieties[name]

    def cover(self, name):
        if name not in self.covers:
            raise WorkspaceError("unknown cover %r" % name)
        return self.covers[name]

    def form(self, name):
        if name not in self.forms:
            raise WorkspaceError("unknown form %r" % name)
        return self.forms[name]

    def correspondence(self, name):
        if name not in self.correspondences:
            raise WorkspaceError("unknown correspondence %r" % name)
        return self.correspondences[name]


def _need(table, key, where):
    if key not in table:
        raise WorkspaceError("section %s is missing %r" % (where, key))
    return table[key]


def _parse_in(text, ring, where):
    try:
        return parse_poly(text, ring)
    except ParseError as e:
        raise WorkspaceError("%s: bad expression %r (%s)" % (where, text, e),
                             detail=text)


def _images_from_table(table, source_ring, target_ring, where,
                       default_identity=False):
    """Variable images keyed by source variable name."""
    images = []
    for v in source_ring.vars:
        if v in table:
            images.append(_parse_in(table[v], target_ring,
                                    "%s.%s" % (where, v)))
        elif default_identity:
            if v not in target_ring.vars:
                raise WorkspaceError(
                    "%s: no image for %r and no matching variable"
                    % (where, v))
            images.append(target_ring.var(target_ring.vars.index(v)))
        else:
            raise WorkspaceError("%s: missing image for %r" % (where, v))
    unknown = [k for k in table if k not in source_ring.vars]
    if unknown:
        raise WorkspaceError("%s: images for unknown variables %s"
                             % (where, ", ".join(sorted(unknown))))
    return images


def field_from_text(text, generator=None):
    """Build an extension field from minimal-polynomial text.

    The generator name is taken from the expression when not supplied;
    the expression must then mention exactly one identifier.
    """
    if generator is None:
        names = sorted({v for kind, v, _ in _tokenize(text)
                        if kind == "name"})
        if len(names) != 1:
            raise WorkspaceError(
                "minimal polynomial must use exactly one variable, got %s"
                % (names or "none"))
        generator = names[0]
    return make_extension(parse_minpoly(text, generator), generator)


def _load_field(data):
    if "field" not in data:
        return QQ
    sec = data["field"]
    gen = sec.get("generator")
    minpoly = _need(sec, "minpoly", "[field]")
    try:
        return field_from_text(minpoly, generator=gen)
    except ParseError as e:
        raise WorkspaceError("[field]: bad minimal polynomial (%s)" % e,
                             detail=minpoly)


def _load_variety(ws, name, sec, order):
    where = "[variety.%s]" % name
    vars_ = _need(sec, "vars", where)
    if not isinstance(vars_, list) or not vars_:
        raise WorkspaceError("%s: vars must be a nonempty list" % where)
    try:
        ring = PolyRing(ws.field, tuple(vars_), order)
    except ValueError as e:
        raise WorkspaceError("%s: %s" % (where, e))
    rels = [_parse_in(t, ring, where) for t in sec.get("relations", [])]
    qring = QuotientRing(ring, rels)
    var = AffineVariety(name, qring,
                        irreducible=sec.get("irreducible", True),
                        normal=sec.get("normal", True),
                        smooth=sec.get("smooth"))
    base_name = sec.get("base")
    if base_name is not None:
        base = ws.variety(base_name)
        images = [_parse_in(t, ring, where + ".base_images")
                  for t in _need(sec, "base_images", where)]
        if len(images) != base.qring.ring.nvars:
            raise WorkspaceError(
                "%s: need one base image per base variable" % where)
        var.base = RingHom(base.qring, qring, images, check=False)
    ws.varieties[name] = var


def _load_cover(ws, name, sec, order):
    where = "[cover.%s]" % name
    base = ws.variety(_need(sec, "base", where))
    total = ws.variety(_need(sec, "total", where))
    bring = base.qring.ring
    tring = total.qring.ring
    incl_images = _images_from_table(_need(sec, "inclusion", where),
                                     bring, tring, where + ".inclusion")
    inclusion = RingHom(base.qring, total.qring, incl_images, check=False)
    group = []
    for k, g in enumerate(sec.get("group", [])):
        images = _images_from_table(g, tring, tring,
                                    "%s.group[%d]" % (where, k),
                                    default_identity=True)
        group.append(RingHom(total.qring, total.qring, images, check=False))
    if not group:
        raise WorkspaceError("%s: empty group" % where)
    basis = [_parse_in(t, tring, where + ".basis")
             for t in _need(sec, "basis", where)]
    primitive = sec.get("primitive")
    if primitive is not None:
        primitive = _parse_in(primitive, tring, where + ".primitive")
    inv_form = sec.get("invariant_form")
    if inv_form is not None:
        try:
            inv_form = parse_form(inv_form, total.qring,
                                  int(sec.get("invariant_degree", 1)))
        except ParseError as e:
            raise WorkspaceError("%s: bad invariant form (%s)" % (where, e),
                                 detail=sec.get("invariant_form"))
    try:
        datum = GaloisCoverDatum(base, total, inclusion, group, basis,
                                 primitive=primitive,
                                 invariant_form=inv_form, name=name)
    except ValueError as e:
        raise WorkspaceError("%s: %s" % (where, e))
    ws.covers[name] = datum


def _load_form(ws, name, sec):
    where = "[form.%s]" % name
    var = ws.variety(_need(sec, "variety", where))
    degree = _need(sec, "degree", where)
    if not isinstance(degree, int) or degree < 0:
        raise WorkspaceError("%s: degree must be a nonnegative integer"
                             % where)
    expr = _need(sec, "expr", where)
    try:
        form = parse_form(expr, var.qring, degree)
    except ParseError as e:
        raise WorkspaceError("%s: bad expression (%s)" % (where, e),
                             detail=expr)
    ws.forms[name] = form


def _load_correspondence(ws, name, sec):
    where = "[correspondence.%s]" % name
    source = ws.variety(_need(sec, "source", where))
    target = ws.variety(_need(sec, "target", where))
    comps = _need(sec, "component", where)
    entries = []
    for k, c in enumerate(comps):
        cw = "%s.component[%d]" % (where, k)
        zvar = ws.variety(_need(c, "variety", cw))
        zring = zvar.qring.ring
        mult = c.get("mult", 1)
        proj_s = RingHom(source.qring, zvar.qring,
                         _images_from_table(_need(c, "proj_source", cw),
                                            source.qring.ring, zring,
                                            cw + ".proj_source"),
                         check=False)
        proj_t = RingHom(target.qring, zvar.qring,
                         _images_from_table(_need(c, "proj_target", cw),
                                            target.qring.ring, zring,
                                            cw + ".proj_target"),
                         check=False)
        cover = ws.cover(_need(c, "cover", cw))
        homs = []
        for hk, h in enumerate(_need(c, "homs", cw)):
            images = _images_from_table(h, zring, cover.B.ring,
                                        "%s.homs[%d]" % (cw, hk),
                                        default_identity=True)
            homs.append(RingHom(zvar.qring, cover.B, images, check=False))
        try:
            prime = PrimeCorrespondence(source, target, zvar, proj_s, proj_t,
                                        cover, homs,
                                        name="%s[%d]" % (name, k))
        except (TypeError, ValueError) as e:
            raise WorkspaceError("%s: %s" % (cw, e))
        entries.append((mult, prime))
    try:
        ws.correspondences[name] = CycleCorrespondence(entries)
    except (TypeError, ValueError) as e:
        raise WorkspaceError("%s: %s" % (where, e))


def _load_fiber_witness(ws, name, sec, order):
    where = "[fiberwitness.%s]" % name
    left = ws.correspondence(_need(sec, "left", where))
    right = ws.correspondence(_need(sec, "right", where))
    comps = []
    for k, c in enumerate(_need(sec, "component", where)):
        cw = "%s.component[%d]" % (where, k)
        li = c.get("left", 0)
        ri = c.get("right", 0)
        if not (0 <= li < len(left.entries)) \
                or not (0 <= ri < len(right.entries)):
            raise WorkspaceError("%s: component index out of range" % cw)
        ring_i = left.entries[li][1].component.qring.ring
        ring_j = right.entries[ri][1].component.qring.ring
        both = ring_i.vars + ring_j.vars
        if len(set(both)) != len(both):
            raise WorkspaceError(
                "%s: component variable names overlap" % cw)
        fring = PolyRing(ws.field, both, order)
        rels = [_parse_in(t, fring, cw) for t in _need(c, "relations", cw)]
        comps.append(FiberComponent(li, ri, QuotientRing(fring, rels),
                                    c.get("mult", 1)))
    prod_vars = (left.source.qring.ring.vars
                 + right.target.qring.ring.vars)
    if len(set(prod_vars)) != len(prod_vars):
        raise WorkspaceError(
            "%s: source and target variable names overlap" % where)
    pring = PolyRing(ws.field, prod_vars, order)
    results = []
    for k, r in enumerate(_need(sec, "result", where)):
        rw = "%s.result[%d]" % (where, k)
        rels = [_parse_in(t, pring, rw) for t in _need(r, "relations", rw)]
        rq = QuotientRing(pring, rels)
        cover = ws.cover(_need(r, "cover", rw))
        homs = []
        for hk, h in enumerate(_need(r, "homs", rw)):
            images = _images_from_table(h, pring, cover.B.ring,
                                        "%s.homs[%d]" % (rw, hk),
                                        default_identity=True)
            homs.append(RingHom(rq, cover.B, images, check=False))
        results.append(ResultComponent(rq, cover, homs))
    samples = [ws.form(n) for n in sec.get("samples", [])]
    ws.fiber_witnesses[name] = (left, right,
                                FiberWitness(comps, results), samples)


def _load_well_witness(ws, name, sec):
    where = "[wellwitness.%s]" % name
    cycle = ws.correspondence(_need(sec, "correspondence", where))
    if len(cycle.entries) != 1:
        raise WorkspaceError(
            "%s: well-definedness applies to a single component" % where)
    corr = cycle.entries[0][1]
    alt_cover = ws.cover(_need(sec, "cover", where))
    homs = []
    zring = corr.component.qring.ring
    for hk, h in enumerate(_need(sec, "homs", where)):
        images = _images_from_table(h, zring, alt_cover.B.ring,
                                    "%s.homs[%d]" % (where, hk),
                                    default_identity=True)
        homs.append(RingHom(corr.component.qring, alt_cover.B, images,
                            check=False))
    map_images = _images_from_table(_need(sec, "map", where),
                                    corr.witness.B.ring, alt_cover.B.ring,
                                    where + ".map", default_identity=True)
    f = RingHom(corr.witness.B, alt_cover.B, map_images, check=False)
    samples = [ws.form(n) for n in sec.get("samples", [])]
    ws.well_witnesses[name] = (corr, alt_cover, homs, f, samples)


def _located(err, raw, path):
    """Append a line number when the offending text can be found."""
    needle = err.detail
    if not isinstance(needle, str) or not needle:
        return err
    for k, line in enumerate(raw.splitlines(), start=1):
        if needle in line:
            return WorkspaceError("%s (%s line %d)" % (err, path, k),
                                  detail=needle)
    return err


def load_workspace(path, order="degrevlex", field=None):
    """Read and resolve a TOML workspace file.

    ``field`` optionally overrides the ``[field]`` section with an
    already-built scalar field.
    """
    try:
        with open(path, "rb") as fh:
            raw = fh.read().decode("utf-8")
        data = tomllib.loads(raw)
    except OSError as e:
        raise WorkspaceError("cannot read %s: %s" % (path, e))
    except tomllib.TOMLDecodeError as e:
        raise WorkspaceError("bad TOML in %s: %s" % (path, e))
    try:
        ws = Workspace(field if field is not None else _load_field(data))
        pending = dict(data.get("variety", {}))
        # varieties may reference each other as bases; resolve in passes
        progress = True
        while pending and progress:
            progress = False
            for name in sorted(pending):
                sec = pending[name]
                base = sec.get("base")
                if base is not None and base in pending:
                    continue
                _load_variety(ws, name, sec, order)
                del pending[name]
                progress = True
        if pending:
            raise WorkspaceError("circular variety base references: %s"
                                 % ", ".join(sorted(pending)))
        for name in sorted(data.get("cover", {})):
            _load_cover(ws, name, data["cover"][name], order)
        for name in sorted(data.get("form", {})):
            _load_form(ws, name, data["form"][name])
        for name in sorted(data.get("correspondence", {})):
            _load_correspondence(ws, name, data["correspondence"][name])
        for name in sorted(data.get("fiberwitness", {})):
            _load_fiber_witness(ws, name, data["fiberwitness"][name], order)
        for name in sorted(data.get("wellwitness", {})):
            _load_well_witness(ws, name, data["wellwitness"][name])
    except WorkspaceError as e:
        raise _located(e, raw, path)
    return ws
