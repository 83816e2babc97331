"""Tests for L/gamma/epsilon triples, rank-one factors, and the checks.

Every frozen expected value below was expanded by hand from the defining
ratio gamma = eps * L(1-s, dual)/L(s) with t = q^(-s); the multi-route
checks (multiplicativity, functional equation) are the library comparing
itself against independently coded enumerations, so the tests here pin the
small closed forms and the error surface.
"""

import cmath

import pytest

from fractions import Fraction as Q

from lsfactors.exactalg import LaurentPoly, RationalFunction, rf_substitute
from lsfactors.lgroup import DimensionError, SatakeClass, UnsupportedConstituent
from lsfactors.localfactors import (
    PSI0,
    AdditiveCharData,
    Group,
    RequiresNumeric,
    UnramifiedCharacter,
    UnramifiedRep,
    UnsupportedRamified,
    check_functional_equation,
    check_multiplicativity,
    check_temperedness,
    gamma_factor,
    l_factor,
    local_coefficient,
    principal_series_datum,
    rank_one_gamma,
    rep_from_json,
    rep_to_json,
)
from lsfactors.weyl import NotMaximalLevi

LP = LaurentPoly


def mono(coeff, **pows):
    return LP.monomial(Q(coeff), pows)


def one_minus(m):
    return LP.const(Q(1)) + m * Q(-1)


def rf(num_factors, den_factors):
    num = LP.const(Q(1))
    for f in num_factors:
        num = num * f
    den = LP.const(Q(1))
    for f in den_factors:
        den = den * f
    return RationalFunction(num, den)


def gl1(alpha="a", base="F", q="q"):
    tag = "inert" if base == "E" else "F"
    return UnramifiedRep(
        Group("resGL", 1, base=tag), SatakeClass(tag, (alpha,)), q=q
    )


def unitary_ps(n, names, q="q"):
    return UnramifiedRep(
        Group("U", n, "inert"), SatakeClass("inert", tuple(names)), q=q
    )


def gl_ps(n, names, base="inert", q="q"):
    return UnramifiedRep(
        Group("resGL", n, base), SatakeClass(base if base != "F" else "F", tuple(names)), q=q
    )


# -- L-factors -----------------------------------------------------------------


def test_l_factor_closed_forms():
    assert l_factor(gl1(), "std") == rf([], [one_minus(mono(1, a=1, t=1))])
    # half-size general linear block inside the rank-two unitary group
    siegel = UnramifiedRep(
        Group("U", 4, "inert", levi=(2, 0)), SatakeClass("inert", ("a1", "a2"))
    )
    assert l_factor(siegel, 1) == rf(
        [],
        [
            one_minus(mono(1, a1=1, t=1)),
            one_minus(mono(1, a2=1, t=1)),
            one_minus(mono(1, a1=1, a2=1, t=2)),
        ],
    )
    # one general-linear value against the transferred rank-three datum
    mixed = UnramifiedRep(
        Group("U", 5, "inert", levi=(1, 3)),
        SatakeClass("inert", ("b",)),
        SatakeClass("inert", ("a",)),
    )
    assert l_factor(mixed, 1) == rf(
        [],
        [
            one_minus(mono(1, a=1, b=1, t=2)),
            one_minus(mono(1, b=1, t=2)),
            one_minus(mono(1, a=-1, b=1, t=2)),
        ],
    )
    assert l_factor(mixed, 2) == rf([], [LP.const(Q(1)) + mono(1, b=1, t=1)])


def test_l_factor_error_surface():
    u3 = unitary_ps(3, ("a",))
    with pytest.raises(UnsupportedConstituent):
        l_factor(u3, "std")
    with pytest.raises(UnsupportedConstituent):
        l_factor(gl1(), 1)
    siegel = UnramifiedRep(
        Group("U", 4, "inert", levi=(2, 0)), SatakeClass("inert", ("a1", "a2"))
    )
    with pytest.raises(UnsupportedConstituent):
        l_factor(siegel, 2)  # no second level without a lower unitary block


# -- gamma and epsilon ---------------------------------------------------------


def test_tate_gamma_conductor_zero():
    trip = gamma_factor(gl1(), "std")
    assert trip.epsilon.is_one()
    assert trip.gamma == rf(
        [one_minus(mono(1, a=1, t=1))], [one_minus(mono(1, a=-1, q=-1, t=-1))]
    )
    assert trip.dims == (1, 1)


def test_tate_gamma_conductor_scaling():
    g0 = gamma_factor(gl1(), "std", PSI0).gamma
    g1 = gamma_factor(gl1(), "std", AdditiveCharData(1)).gamma
    # both sides in the sqrtq variable: the conductor-1 triple needs the half power
    g0_half = rf_substitute(g0, {"q": LP.var("sqrtq", 2)})
    assert g1 / g0_half == RationalFunction(mono(1, a=1, sqrtq=1, t=1))
    # conductor 2 stays in q and scales by (a q t)^2
    g2 = gamma_factor(gl1(), "std", AdditiveCharData(2)).gamma
    assert g2 / g0 == RationalFunction(mono(1, a=2, q=1, t=2))


def test_epsilon_of_weight_two_block_needs_no_root():
    trip = gamma_factor(gl1(base="E"), "std", AdditiveCharData(1))
    assert trip.epsilon == RationalFunction(mono(1, a=1, q=1, t=2))
    assert trip.dims[0] == 2


def test_perfect_square_q_keeps_exact_root():
    trip = gamma_factor(gl1(q=9), "std", AdditiveCharData(1))
    assert trip.epsilon == RationalFunction(mono(3, a=1, t=1))


def test_triple_internal_identity():
    mixed = UnramifiedRep(
        Group("U", 5, "inert", levi=(1, 3)),
        SatakeClass("inert", ("b",)),
        SatakeClass("inert", ("a",)),
    )
    for level in (1, 2):
        trip = gamma_factor(mixed, level, AdditiveCharData(2))
        dual_l_shift = rf_substitute(
            l_factor(mixed.dual(), level), {"t": mono(1, q=-1, t=-1)}
        )
        assert trip.gamma == trip.epsilon * dual_l_shift * trip.l.inverse()


# -- rank-one factors ----------------------------------------------------------


def test_rank_one_trivial_character():
    (g,) = rank_one_gamma("SL2", [1])
    assert g == rf([one_minus(mono(1, t=1))], [one_minus(mono(1, q=-1, t=-1))])


def test_rank_one_quasi_split_pair():
    first, second = rank_one_gamma("SU3", ["a"])
    assert first == rf(
        [one_minus(mono(1, a=1, t=2))], [one_minus(mono(1, a=-1, q=-2, t=-2))]
    )
    assert second == rf(
        [LP.const(Q(1)) + mono(1, a=1, t=2)],
        [LP.const(Q(1)) + mono(1, a=-1, q=-1, t=-2)],
    )


def test_rank_one_rejects_ramified():
    with pytest.raises(UnsupportedRamified):
        rank_one_gamma("SL2", [UnramifiedCharacter("a", ramified=True)])
    with pytest.raises(UnsupportedConstituent):
        rank_one_gamma("SO17", ["a"])


# -- functional equation -------------------------------------------------------


def test_functional_equation_all_families():
    mixed = UnramifiedRep(
        Group("U", 5, "inert", levi=(1, 3)),
        SatakeClass("inert", ("b",)),
        SatakeClass("inert", ("a",)),
    )
    siegel = UnramifiedRep(
        Group("U", 4, "inert", levi=(2, 0)), SatakeClass("inert", ("a1", "a2"))
    )
    pair = UnramifiedRep(
        Group("resGL", 3, "inert", levi=(2, 1)),
        SatakeClass("inert", ("a1", "a2")),
        SatakeClass("inert", ("b1",)),
    )
    cases = [
        (gl1(), "std"),
        (gl1(base="E"), "std"),
        (siegel, 1),
        (mixed, 1),
        (mixed, 2),
        (pair, 1),
    ]
    for rep, level in cases:
        for c in (0, 1, 2, -1):
            ok, witness = check_functional_equation(rep, level, AdditiveCharData(c))
            assert ok, f"{rep.group} level {level} c={c}: {witness}"
            assert witness.is_one()


def test_functional_equation_negative_control():
    # perturbing the numerator must surface as a nonunit witness
    trip = gamma_factor(gl1(), "std")
    bad = trip.gamma + RationalFunction.const(1)
    dual = gamma_factor(gl1().dual(), "std").gamma
    prod = bad * rf_substitute(dual, {"t": mono(1, q=-1, t=-1)})
    assert not prod.is_one()


# -- local coefficient and multiplicativity -------------------------------------


def test_local_coefficient_borel_u3():
    rep = unitary_ps(3, ("a",))
    got = local_coefficient(rep, ())
    levi = principal_series_datum(rep, ())
    g1 = gamma_factor(levi, 1).gamma
    g2 = rf_substitute(gamma_factor(levi, 2).gamma, {"t": LP.var("t", 2)})
    assert got == g1 * g2


def test_local_coefficient_rank_one_pair():
    rep = gl_ps(2, ("a1", "a2"), base="F")
    got = local_coefficient(rep, ())
    direct = rank_one_gamma("SL2", [LP.var("a1") * LP.monomial(Q(1), {"a2": -1})])[0]
    assert got == direct


def test_multiplicativity_small_groups():
    for n, names in [(2, ("a1",)), (3, ("a1",)), (4, ("a1", "a2")), (5, ("a1", "a2"))]:
        rep = unitary_ps(n, names)
        rank = len(names)
        for removed in range(rank):
            theta = tuple(i for i in range(rank) if i != removed)
            ok, report = check_multiplicativity(rep, theta)
            assert ok, f"U{n} theta={theta}: {report.mismatched_levels}"


def test_multiplicativity_general_linear():
    for base in ("inert", "F"):
        rep = gl_ps(3, ("a1", "a2", "a3"), base=base)
        for theta in ((0,), (1,)):
            ok, report = check_multiplicativity(rep, theta)
            assert ok, f"resGL3/{base} theta={theta}: {report.mismatched_levels}"


def test_multiplicativity_with_conductor():
    ok, report = check_multiplicativity(
        unitary_ps(3, ("a1",)), (), AdditiveCharData(1)
    )
    assert ok, report.mismatched_levels


# -- temperedness --------------------------------------------------------------


def test_temperedness_unit_circle():
    z = cmath.exp(2j * cmath.pi / 7)
    rep = UnramifiedRep(
        Group("resGL", 1, "F"),
        SatakeClass("F", ("a1",)),
        q=7,
        numeric={"a1": z},
    )
    report = check_temperedness(rep, "std")
    assert report.tempered
    assert all(abs(m - 1.0) < 1e-9 for m in report.moduli)


def test_temperedness_flags_off_circle():
    rep = UnramifiedRep(
        Group("resGL", 1, "F"),
        SatakeClass("F", ("a1",)),
        q=7,
        numeric={"a1": 2 + 0j},
    )
    report = check_temperedness(rep, "std")
    assert not report.tempered
    assert min(report.moduli) == pytest.approx(0.5, abs=1e-9)


def test_temperedness_requires_numeric():
    with pytest.raises(RequiresNumeric):
        check_temperedness(gl1(), "std")


# -- shapes, JSON, and validation ------------------------------------------------


def test_principal_series_datum_shapes():
    rep = unitary_ps(5, ("a1", "a2"))
    levi = principal_series_datum(rep, (1,))
    assert levi.group.levi == (1, 3)
    assert levi.satake.values == (LP.var("a1"),)
    assert levi.second.values == (LP.var("a2"),)
    other = principal_series_datum(rep, (0,))
    assert other.group.levi == (2, 1)
    assert other.second.size == 0
    with pytest.raises(NotMaximalLevi):
        principal_series_datum(rep, ())


def test_rep_validation():
    with pytest.raises(DimensionError):
        UnramifiedRep(Group("U", 5, "inert"), SatakeClass("inert", ("a", "b", "c")))
    with pytest.raises(DimensionError):
        UnramifiedRep(Group("resGL", 2, "F"), SatakeClass("F", ("a", "b")), q=1)
    with pytest.raises(DimensionError):
        Group("U", 4, "F")
    with pytest.raises(DimensionError):
        Group("U", 4, "inert", levi=(3, 0))


def test_rep_json_round_trip():
    rep = UnramifiedRep(
        Group("U", 5, "inert", levi=(1, 3)),
        SatakeClass("inert", ("b",)),
        SatakeClass("inert", ("a",)),
        q=9,
    )
    back, psi = rep_from_json(rep_to_json(rep, AdditiveCharData(2)))
    assert back == rep
    assert psi.conductor_exponent == 2
    numeric = UnramifiedRep(
        Group("resGL", 1, "F"),
        SatakeClass("F", ("a1",)),
        q=7,
        numeric={"a1": 0.6 + 0.8j},
    )
    back2, _ = rep_from_json(rep_to_json(numeric))
    assert back2.numeric == {"a1": 0.6 + 0.8j}
    assert back2.q == 7
