"""Tests for the base-change lifts and the factor-transfer checks.

The lift anchors below were written out by hand from the diagonal recipe
(values, middle 1 for odd size, inverted values reversed). The transfer
checks compare library against library through two genuinely different
determinant routes, so the tests here pin the closed-form anchors, the
place-kind error surface, and the report contents.
"""

import pytest

from fractions import Fraction as Q

from lsfactors.basechange import (
    BCResult,
    WrongPlaceKind,
    bc_inert,
    bc_split,
    isobaric_l,
    isobaric_sum,
    rs_asai_factorization,
    verify_bc_preserves,
)
from lsfactors.exactalg import LaurentPoly, RationalFunction
from lsfactors.lgroup import (
    DimensionError,
    SatakeClass,
    invert_value,
    symbols,
)
from lsfactors.localfactors import (
    AdditiveCharData,
    Group,
    UnramifiedRep,
    l_factor,
)

LP = LaurentPoly


def one_minus(m):
    return LP.const(Q(1)) + m * Q(-1)


def unitary(size, vals, base="inert", q="q"):
    tag = "F" if base == "split" else "inert"
    return UnramifiedRep(Group("U", size, base), SatakeClass(tag, vals), q=q)


def linear(size, base="inert", prefix="b", q="q"):
    if base == "split":
        sc = SatakeClass(
            "split",
            symbols(prefix, size),
            symbols(prefix + prefix, size),
        )
    else:
        sc = SatakeClass(base, symbols(prefix, size))
    return UnramifiedRep(Group("resGL", size, base), sc, q=q)


# ---------------------------------------------------------------------------
# lifts
# ---------------------------------------------------------------------------


def test_inert_lift_anchors():
    a = LP.var("a")
    got = bc_inert(unitary(3, ("a",)))
    assert isinstance(got, BCResult)
    assert got.place_kind == "inert"
    assert got.lift.group == Group("resGL", 3, "inert")
    assert got.lift.satake.values == (a, LP.const(Q(1)), invert_value(a))

    a1, a2 = LP.var("a1"), LP.var("a2")
    got = bc_inert(unitary(4, ("a1", "a2")))
    assert got.lift.satake.values == (a1, a2, invert_value(a2), invert_value(a1))

    # size 2 with the trivial value: the lift is the pair of ones
    got = bc_inert(unitary(2, (1,)))
    assert got.lift.satake.values == (LP.const(Q(1)),) * 2

    # size 1 carries no values at all and lifts to the single 1
    got = bc_inert(unitary(1, ()))
    assert got.lift.satake.values == (LP.const(Q(1)),)


def test_split_lift_anchor():
    a, b = LP.var("a"), LP.var("b")
    got = bc_split(unitary(2, ("a", "b"), base="split"))
    assert got.place_kind == "split"
    assert got.lift.group == Group("resGL", 2, "split")
    assert got.lift.satake.values == (a, b)
    assert got.lift.satake.values2 == (invert_value(a), invert_value(b))


def test_lift_is_inversion_stable():
    for size in range(1, 7):
        rep = unitary(size, symbols("a", size // 2))
        lift = bc_inert(rep).lift.satake
        vals = sorted(repr(v) for v in lift.values)
        assert sorted(repr(invert_value(v)) for v in lift.values) == vals

        rep = unitary(size, symbols("a", size), base="split")
        lift = bc_split(rep).lift.satake
        both = lift.values + lift.values2
        assert sorted(repr(invert_value(v)) for v in both) == sorted(
            repr(v) for v in both
        )


def test_lift_place_kind_errors():
    with pytest.raises(WrongPlaceKind):
        bc_inert(unitary(2, ("a", "b"), base="split"))
    with pytest.raises(WrongPlaceKind):
        bc_split(unitary(2, ("a",)))
    with pytest.raises(DimensionError):
        bc_inert(linear(2))
    levi = UnramifiedRep(
        Group("U", 3, "inert", levi=(1, 1)),
        SatakeClass("inert", ("a",)),
        second=SatakeClass("inert", ()),
    )
    with pytest.raises(DimensionError):
        bc_inert(levi)


# ---------------------------------------------------------------------------
# factor transfer
# ---------------------------------------------------------------------------


def test_transfer_anchor_u3_times_gl1():
    pi = unitary(3, ("a",))
    tau = linear(1)
    ok, report = verify_bc_preserves(pi, tau)
    assert ok and report.mismatches == ()
    a, b, t = LP.var("a"), LP.var("b1"), LP.var("t")
    expected = RationalFunction(
        LP.const(Q(1)),
        one_minus(a * b * t * t)
        * one_minus(b * t * t)
        * one_minus(invert_value(a) * b * t * t),
    )
    assert report.unitary_side.l == expected
    assert report.linear_side.l == expected
    assert report.orbit_l == expected
    assert report.factor_triples == ()


def test_transfer_holds_inert():
    for size in range(1, 5):
        for m in (1, 2):
            pi = unitary(size, symbols("a", size // 2))
            ok, report = verify_bc_preserves(pi, linear(m))
            assert ok, (size, m, report.mismatches)


def test_transfer_holds_split():
    for size, m in ((1, 1), (2, 1), (3, 1), (1, 2)):
        pi = unitary(size, symbols("a", size), base="split")
        ok, report = verify_bc_preserves(pi, linear(m, base="split"))
        assert ok, (size, m, report.mismatches)
        assert len(report.factor_triples) == 2


def test_transfer_holds_split_rational_values():
    # wider shapes with exact rational values and a numeric q; the identity
    # is polynomial in the values and the blocks get too wide to expand
    # symbolically
    vals = (Q(2), Q(3, 2), Q(5, 3), Q(7, 4), Q(11, 5))
    for size, m in ((2, 2), (3, 2), (3, 3)):
        pi = unitary(size, vals[:size], base="split", q=7)
        tau = UnramifiedRep(
            Group("resGL", m, "split"),
            SatakeClass("split", vals[:m], tuple(v + 1 for v in vals[:m])),
            q=7,
        )
        ok, report = verify_bc_preserves(pi, tau)
        assert ok, (size, m, report.mismatches)


def test_transfer_with_conductor():
    # odd per-factor degree at a split place walks through sqrtq and back
    pi = unitary(1, ("a",), base="split", q=5)
    tau = linear(1, base="split", q=5)
    ok, report = verify_bc_preserves(pi, tau, AdditiveCharData(1))
    assert ok, report.mismatches

    pi = unitary(2, symbols("a", 2), base="split")
    ok, report = verify_bc_preserves(pi, linear(1, base="split"), AdditiveCharData(1))
    assert ok, report.mismatches

    pi = unitary(3, ("a",))
    ok, report = verify_bc_preserves(pi, linear(2), AdditiveCharData(2))
    assert ok, report.mismatches


def test_transfer_place_kind_errors():
    with pytest.raises(WrongPlaceKind):
        verify_bc_preserves(unitary(3, ("a",)), linear(1, base="split"))
    with pytest.raises(WrongPlaceKind):
        verify_bc_preserves(unitary(2, symbols("a", 2), base="split"), linear(1))
    with pytest.raises(WrongPlaceKind):
        verify_bc_preserves(unitary(3, ("a",)), linear(1, base="F"))
    with pytest.raises(DimensionError):
        verify_bc_preserves(unitary(3, ("a",)), linear(1, q=7))
    with pytest.raises(DimensionError):
        verify_bc_preserves(linear(1), linear(1))


# ---------------------------------------------------------------------------
# self-pairing factorization and isobaric sums
# ---------------------------------------------------------------------------


def test_self_pairing_factorization_rank_one():
    rep = UnramifiedRep(Group("resGL", 1, "inert"), SatakeClass("inert", ("a",)))
    ok, (pairing, plain, twisted) = rs_asai_factorization(rep)
    assert ok
    a, t = LP.var("a"), LP.var("t")
    one = LP.const(Q(1))
    assert pairing == RationalFunction(one, one_minus(a * a * t * t))
    assert plain == RationalFunction(one, one_minus(a * t))
    assert twisted == RationalFunction(one, one + a * t)


def test_self_pairing_factorization_symbolic():
    for n in range(1, 5):
        rep = UnramifiedRep(
            Group("resGL", n, "inert"), SatakeClass("inert", symbols("a", n))
        )
        ok, _ = rs_asai_factorization(rep)
        assert ok, n


def test_self_pairing_rejects_other_bases():
    with pytest.raises(WrongPlaceKind):
        rs_asai_factorization(linear(2, base="F"))
    with pytest.raises(WrongPlaceKind):
        rs_asai_factorization(linear(2, base="split"))
    with pytest.raises(DimensionError):
        rs_asai_factorization(unitary(2, ("a",)))


def test_isobaric_anchor_matches_lift():
    a = LP.var("a")
    components = [
        SatakeClass("inert", (a, invert_value(a))),
        SatakeClass("inert", (1,)),
    ]
    trivial_tau = UnramifiedRep(
        Group("resGL", 1, "inert"), SatakeClass("inert", (1,))
    )
    got = isobaric_l(components, trivial_tau)
    lift = bc_inert(unitary(3, ("a",))).lift
    assert got == l_factor(lift, "std")


def test_isobaric_concatenation():
    cases = [
        ("inert", [SatakeClass("inert", ("a1",)), SatakeClass("inert", ("a2", "a3"))]),
        ("F", [SatakeClass("F", ("a1", "a2")), SatakeClass("F", ("a3",))]),
        (
            "split",
            [
                SatakeClass("split", ("a1",), ("a2",)),
                SatakeClass("split", ("a3", "a4"), ("a5", "a6")),
            ],
        ),
    ]
    for base, components in cases:
        tau = linear(2, base=base)
        whole = isobaric_sum(components)
        assert isobaric_l(components, tau) == isobaric_l([whole], tau), base
    # bare value tuples coerce against the fixed datum's algebra
    tau = linear(1)
    assert isobaric_l([("a1",), ("a2",)], tau) == isobaric_l(
        [SatakeClass("inert", ("a1", "a2"))], tau
    )


def test_isobaric_mismatched_tags():
    tau = linear(1)
    with pytest.raises(WrongPlaceKind):
        isobaric_l([SatakeClass("F", ("a",))], tau)
    with pytest.raises(WrongPlaceKind):
        isobaric_sum([SatakeClass("F", ("a",)), SatakeClass("inert", ("b",))])
    with pytest.raises(DimensionError):
        isobaric_sum([])
