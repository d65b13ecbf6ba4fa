"""Expression grammar, canonical printing, and workspace loading."""

import pathlib
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from corrforms.errors import ParseError, WorkspaceError
from corrforms.kaehler import PForm
from corrforms.polyring import PolyRing, format_poly
from corrforms.rings import QuotientRing
from corrforms.scalars import QQ, make_extension
from corrforms.textio import (field_from_text, format_form,
                              format_presentation, load_workspace,
                              parse_form, parse_minpoly, parse_poly,
                              trim_presentation)

DATA = pathlib.Path(__file__).resolve().parent / "data"


def ring2():
    return PolyRing(QQ, ("x", "y"))


def qring2():
    return QuotientRing(ring2(), [])


_coeff = st.fractions(min_value=-5, max_value=5, max_denominator=7)
_mono = st.tuples(st.integers(0, 5), st.integers(0, 5))
_polydict = st.dictionaries(_mono, _coeff, min_size=0, max_size=5)


def _build(ring, d):
    p = ring.zero
    for mono, c in d.items():
        p = p + c * ring.monomial(mono)
    return p


@given(_polydict)
def test_polynomial_print_parse_roundtrip(d):
    R = ring2()
    p = _build(R, d)
    txt = format_poly(p)
    q = parse_poly(txt, R)
    assert q.terms == p.terms


@given(_polydict, _polydict)
def test_form_print_parse_roundtrip(da, db):
    R = ring2()
    Q = QuotientRing(R, [])
    form = PForm(Q, 1, {(0,): _build(R, da), (1,): _build(R, db)})
    txt = format_form(form)
    back = parse_form(txt, Q, 1)
    assert (back - form).is_coefficient_zero()


def test_parse_basics():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    assert parse_poly("x^2*y - 1/2", R).terms == (x * x * y - Fraction(1, 2)).terms
    assert parse_poly("-(x - y)^2", R).terms == (-(x - y) ** 2).terms
    assert parse_poly("- - x", R).terms == x.terms
    # unary minus binds looser than the power
    assert parse_poly("-x^2", R).terms == (-(x ** 2)).terms


def test_no_implicit_multiplication():
    R = ring2()
    with pytest.raises(ParseError):
        parse_poly("2x", R)
    with pytest.raises(ParseError):
        parse_poly("x y", R)
    with pytest.raises(ParseError):
        parse_poly("2(x + 1)", R)


def test_rational_literal_binding():
    R = ring2()
    assert parse_poly("1/2*x", R).terms == (Fraction(1, 2) * R.var("x")).terms
    # division is only a literal: a variable denominator does not parse
    with pytest.raises(ParseError):
        parse_poly("x/2", R)
    with pytest.raises(ParseError):
        parse_poly("1/x", R)
    with pytest.raises(ParseError):
        parse_poly("1/0", R)


def test_parse_error_positions():
    R = ring2()
    with pytest.raises(ParseError) as e1:
        parse_poly("x + ", R)
    assert e1.value.position == 4
    with pytest.raises(ParseError) as e2:
        parse_poly("x + z", R)
    assert e2.value.position == 4
    with pytest.raises(ParseError) as e3:
        parse_poly("x $ y", R)
    assert e3.value.position == 2


def test_form_grammar():
    Q = qring2()
    R = Q.ring
    x, y = R.var("x"), R.var("y")
    f = parse_form("x * d(x) ^ d(y)", Q, 2)
    assert list(f.coeffs) == [(0, 1)]
    # reversed wedge order flips the sign
    g = parse_form("x * d(y) ^ d(x)", Q, 2)
    assert (f + g).is_coefficient_zero()
    # a repeated factor collapses to zero
    assert parse_form("d(x) ^ d(x)", Q, 2).is_coefficient_zero()
    # degree-0 forms are bare polynomials
    h = parse_form("x^2 - y", Q, 0)
    assert h.degree == 0 and list(h.coeffs) == [()]
    # zero text works in any degree
    assert parse_form("0", Q, 2).is_coefficient_zero()
    with pytest.raises(ParseError):
        parse_form("x + d(x)", Q, 1)          # mixed degrees
    with pytest.raises(ParseError):
        parse_form("d(x) * x", Q, 1)          # multiplying after a wedge
    with pytest.raises(ParseError):
        parse_form("d(x) ^ x", Q, 1)          # wedge needs another d()


def test_variable_named_d():
    R = PolyRing(QQ, ("d",))
    Q = QuotientRing(R, [])
    p = parse_poly("d^2 + d", R)
    assert p.terms == (R.var(0) ** 2 + R.var(0)).terms
    f = parse_form("d * d(d)", Q, 1)
    assert [str(c.num) for c in f.coeffs.values()] == ["d"]


def test_canonical_form_text():
    Q = qring2()
    R = Q.ring
    x, y = R.var("x"), R.var("y")
    assert format_form(PForm(Q, 1, {(0,): R.one})) == "1 * d(x)"
    assert format_form(PForm(Q, 1, {(0,): 2 * x})) == "2*x * d(x)"
    assert format_form(PForm.zero(Q, 1)) == "0"
    assert format_form(PForm(Q, 1, {(0,): x + 1})) == "(x + 1) * d(x)"
    assert format_form(PForm(Q, 1, {(0,): -x, (1,): y - 1})) \
        == "-x * d(x) + (y - 1) * d(y)"
    assert format_form(PForm(Q, 2, {(0, 1): Fraction(1, 2) * x})) \
        == "1/2*x * d(x) ^ d(y)"


def test_parse_minpoly():
    assert parse_minpoly("w^2 + w + 1", "w") == [1, 1, 1]
    assert parse_minpoly("w^3 - 1/2", "w") == [Fraction(-1, 2), 0, 0, 1]
    with pytest.raises(ParseError):
        parse_minpoly("0", "w")


def test_field_from_text():
    F = field_from_text("a^2 - 2")
    assert F.is_extension and F.varname == "a"
    with pytest.raises(WorkspaceError):
        field_from_text("a^2 - b")


def test_trim_presentation_drops_unit_rows():
    R = ring2()
    x = R.var("x")
    rows = [(R.one, R.zero), (x, x ** 2)]
    kept, out = trim_presentation(2, rows)
    assert kept == [1]
    assert [[str(p) for p in row] for row in out] == [["x^2"]]


def test_extension_scalars_in_expressions():
    F = make_extension([Fraction(1), Fraction(1), Fraction(1)], "w")
    R = PolyRing(F, ("x",))
    p = parse_poly("w*x + w^2", R)
    txt = format_poly(p)
    assert parse_poly(txt, R).terms == p.terms


def test_load_workspace_kummer():
    ws = load_workspace(DATA / "kummer.toml")
    assert set(ws.covers) == {"kummer", "kummer_loc", "trivial"}
    datum = ws.cover("kummer")
    assert len(datum.group) == 2
    assert [str(b) for b in datum.basis] == ["1", "t"]
    form = ws.form("t_dt")
    assert form.degree == 1 and form.qring is ws.variety("W").qring
    with pytest.raises(WorkspaceError):
        ws.cover("nope")


def test_load_workspace_lines_builds_correspondences():
    ws = load_workspace(DATA / "lines.toml")
    corr = ws.correspondence("transpose_st")
    assert len(corr.entries) == 1
    assert corr.entries[0][1].verify().ok
    left, right, fw, samples = ws.fiber_witnesses["kummer_pair"]
    assert len(fw.components) == 2 and len(samples) == 5
    corr2, cover, homs, f, wsamples = ws.well_witnesses["enlarged"]
    assert len(homs) == 2 and len(cover.group) == 4


def test_load_workspace_field_section():
    ws = load_workspace(DATA / "mu3.toml")
    assert ws.field.is_extension
    assert ws.cover("mu3").invariant_form is not None


def test_load_workspace_lex_order():
    ws = load_workspace(DATA / "basic.toml", order="lex")
    assert ws.variety("circle").qring.ring.order == "lex"


def test_workspace_error_reports_line(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text('[variety.v]\nvars = ["x"]\nrelations = ["x^2 +"]\n')
    with pytest.raises(WorkspaceError) as err:
        load_workspace(bad)
    assert "line 3" in str(err.value)


def test_workspace_missing_reference(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text('[cover.c]\nbase = "nope"\ntotal = "nope"\n'
                   'inclusion = {}\ngroup = [{}]\nbasis = ["1"]\n')
    with pytest.raises(WorkspaceError):
        load_workspace(bad)


def test_presentation_line_for_free_module():
    Q = qring2()
    from corrforms.kaehler import omega_module
    line = format_presentation(Q, 2, omega_module(Q, 2))
    assert line == "generators: d(x) ^ d(y); relations: none"
