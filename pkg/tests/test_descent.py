"""Galois covers: verification, averaging, descent, invariants, biduals."""

from fractions import Fraction

import pytest

from corrforms.errors import (CheckFailed, NotDescendable, RankMismatch)
from corrforms.descent import (GaloisCoverDatum, average, bidual_descent_check,
                               descend, descend_rational, ensure_valid,
                               form_action_map, invariant_forms, is_invariant,
                               verify_cover)
from corrforms.kaehler import AffineVariety, PForm, forms_equal, pullback
from corrforms.polyring import PolyRing
from corrforms.rings import QuotientRing, RingHom
from corrforms.scalars import QQ, make_extension


def kummer():
    RA = PolyRing(QQ, ("s",))
    A = QuotientRing(RA, [])
    RB = PolyRing(QQ, ("t",))
    B = QuotientRing(RB, [])
    t = RB.var(0)
    incl = RingHom(A, B, [t * t])
    sigma = RingHom(B, B, [-t])
    return GaloisCoverDatum(AffineVariety("X", A), AffineVariety("W", B),
                            incl, [RingHom.identity(B), sigma],
                            [RB.one, t], primitive=RB.one + t)


def trivial():
    RA = PolyRing(QQ, ("s",))
    A = QuotientRing(RA, [])
    return GaloisCoverDatum(AffineVariety("X", A), AffineVariety("X", A),
                            RingHom.identity(A), [RingHom.identity(A)],
                            [RA.one])


def mu3():
    F = make_extension([Fraction(1), Fraction(1), Fraction(1)], "w")
    z = F.gen()
    RA = PolyRing(F, ("u", "v"))
    A = QuotientRing(RA, [])
    RB = PolyRing(F, ("u", "v", "x", "y"))
    u, v, x, y = (RB.var(i) for i in range(4))
    B = QuotientRing(RB, [x ** 3 - u * v ** 2, y ** 3 - u ** 2 * v,
                          x ** 2 - y * v, y ** 2 - x * u, x * y - u * v])
    incl = RingHom(A, B, [u, v])
    g1 = RingHom(B, B, [u, v, RB.const(z) * x, RB.const(z * z) * y])
    g2 = RingHom(B, B, [u, v, RB.const(z * z) * x, RB.const(z) * y])
    return GaloisCoverDatum(AffineVariety("X", A),
                            AffineVariety("W", B, smooth=False),
                            incl, [RingHom.identity(B), g1, g2],
                            [RB.one, x, y], primitive=RB.one + x + y)


def test_verify_kummer_cover():
    rep = verify_cover(kummer())
    assert rep.ok
    detail = {name: d for name, _, d in rep}
    assert detail["cover_rank"] == "rank 2 vs group order 2"
    assert detail["basis_free"] == "2 elements"
    assert detail["primitive_orbit"] == "orbit is a module basis"


def test_verify_mu3_cover():
    rep = verify_cover(mu3())
    assert rep.ok
    detail = {name: d for name, _, d in rep}
    assert detail["cover_rank"] == "rank 3 vs group order 3"
    assert detail["basis_free"] == "3 elements"


def test_identity_only_group_fails_rank():
    datum = kummer()
    small = GaloisCoverDatum(datum.base, datum.total, datum.inclusion,
                             [datum.group[0]], datum.basis)
    rep = verify_cover(small)
    assert not rep.ok
    bad = {name for name, ok, _ in rep if not ok}
    assert "cover_rank" in bad
    with pytest.raises((RankMismatch, CheckFailed)):
        ensure_valid(small)


def test_average_projects_onto_invariants():
    datum = kummer()
    B = datum.B
    t = B.ring.var(0)
    dt = PForm(B, 1, {(0,): B.ring.one})
    assert average(datum, dt).is_coefficient_zero()
    tdt = PForm(B, 1, {(0,): t})
    av = average(datum, tdt)
    assert forms_equal(av, tdt)
    mixed = PForm(B, 1, {(0,): t ** 2 + t})     # odd part survives
    av2 = average(datum, mixed)
    assert forms_equal(av2, tdt)
    # averaging twice changes nothing
    assert forms_equal(average(datum, av2), av2)


def test_is_invariant():
    datum = kummer()
    B = datum.B
    t = B.ring.var(0)
    assert is_invariant(datum, PForm(B, 1, {(0,): t}))[0]
    ok, witness = is_invariant(datum, PForm(B, 1, {(0,): B.ring.one}))
    assert not ok and witness is datum.group[1]


def test_descend_kummer_oracles():
    datum = kummer()
    B = datum.B
    A = datum.A
    t = B.ring.var(0)
    # the non-invariant part averages to zero
    dt = PForm(B, 1, {(0,): B.ring.one})
    assert descend(datum, dt).is_coefficient_zero()
    # t dt = (1/2) d(t^2) = (1/2) ds
    tdt = PForm(B, 1, {(0,): t})
    low = descend(datum, tdt)
    vec = low.polynomial_vector()
    assert [str(p) for p in vec] == ["1/2"]
    # descent is A-linear: s * (t dt) comes down to (1/2) s ds
    s_tdt = PForm(B, 1, {(0,): t ** 3})
    low2 = descend(datum, s_tdt)
    assert [str(p) for p in low2.polynomial_vector()] == ["1/2*s"]
    # round trip: pulling the descended form back up gives the average
    up = pullback(datum.inclusion, low)
    assert forms_equal(up, tdt)


def test_descend_rational_purity_rejects_skew_forms():
    datum = kummer()
    B = datum.B
    dt = PForm(B, 1, {(0,): B.ring.one})
    with pytest.raises(NotDescendable):
        descend_rational(datum, dt)


def test_form_action_on_kummer_differential():
    datum = kummer()
    B = datum.B
    sigma = datum.group[1]
    act = form_action_map(datum, 1, sigma)
    # sigma sends dt to -dt
    assert [str(p) for p in act.cols[0]] == ["-1"]


def test_invariant_functions_descend_to_base():
    datum = kummer()
    inv0 = invariant_forms(datum, 0)
    decoded = inv0.all_decoded()
    assert decoded
    for vec in decoded:
        frm = PForm(datum.B, 0, {(): vec[0]})
        assert is_invariant(datum, frm)[0]


def test_invariant_one_forms_kummer():
    datum = kummer()
    B = datum.B
    t = B.ring.var(0)
    inv1 = invariant_forms(datum, 1)
    assert inv1.module.gens >= 1
    for vec in inv1.all_decoded():
        assert is_invariant(datum, PForm.from_vector(B, 1, vec))[0]
    # relative invariants vanish: the torsion class dt is anti-invariant
    rel = invariant_forms(datum, 1, relative=True)
    relmod = rel.module_B
    for vec in rel.all_decoded():
        assert relmod.is_zero_element(list(vec))
    assert t is not None


def test_bidual_descent_trivial_cover():
    rep = bidual_descent_check(trivial(), 1)
    assert rep.ok
    names = [name for name, _, _ in rep]
    assert names == ["invariant_rank", "base_bidual_generic",
                     "pullback_lands_in_invariants",
                     "invariants_descend_to_bidual", "round_trip_identity"]


def test_bidual_descent_kummer():
    rep = bidual_descent_check(kummer(), 1)
    assert rep.ok


def test_mu3_invariant_form_survives_relative_quotient():
    datum = mu3()
    B = datum.B
    x, y = B.ring.var("x"), B.ring.var("y")
    xdy = PForm(B, 1, {(3,): x})
    assert is_invariant(datum, xdy)[0]
    from corrforms.kaehler import omega_module
    rel = omega_module(B, 1, base=datum.inclusion)
    assert rel.gens == 4
    assert len(rel.relations) == 7
    assert not rel.is_zero_element(xdy.polynomial_vector())
    assert y is not None
