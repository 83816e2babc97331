"""Tests for the exact arithmetic layer.

sympy is used as an independent oracle for polynomial gcd and expansion; the
library itself never imports it. Property tests exercise ring laws, canonical
idempotence, serialization, and the certified root boxes.
"""

from fractions import Fraction as Q

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from lsfactors.exactalg import (
    BigComplex,
    DivisionByZero,
    LaurentPoly,
    RationalFunction,
    UnresolvedSymbol,
    divexact,
    eval_numeric,
    poly_gcd,
    poly_roots_numeric,
    rf_from_json,
    rf_reduce,
    rf_substitute,
    rf_to_json,
)

LP = LaurentPoly
RF = RationalFunction


def lp(expr_terms, variables):
    return LP(variables, {tuple(e): Q(c) for e, c in expr_terms.items()})


def to_sympy(p: LaurentPoly):
    syms = {v: sympy.Symbol(v) for v in p.vars}
    acc = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, x in zip(p.vars, e):
            term *= syms[v] ** x
        acc += term
    return sympy.expand(acc)


def from_sympy_poly(expr, names):
    expr = sympy.expand(expr)
    syms = [sympy.Symbol(n) for n in names]
    poly = sympy.Poly(expr, *syms) if syms else None
    if poly is None:
        return LP.const(Q(str(expr)))
    terms = {}
    for mono, coeff in poly.terms():
        terms[tuple(int(m) for m in mono)] = Q(str(coeff))
    return LP(tuple(names), terms)


# --- strategies -------------------------------------------------------------

VARS = ("a1", "q", "t")


@st.composite
def laurent_polys(draw, max_terms=4, exp_range=(-2, 2), ordinary=False):
    n = draw(st.integers(min_value=1, max_value=max_terms))
    terms = {}
    lo = 0 if ordinary else exp_range[0]
    for _ in range(n):
        e = tuple(draw(st.integers(min_value=lo, max_value=exp_range[1])) for _ in VARS)
        c = draw(st.integers(min_value=-3, max_value=3))
        if c:
            terms[e] = terms.get(e, 0) + c
    return LP(VARS, {e: Q(c) for e, c in terms.items() if c})


nonzero_polys = laurent_polys().filter(lambda p: not p.is_zero())
ordinary_polys = laurent_polys(ordinary=True)
nonzero_ordinary = laurent_polys(ordinary=True).filter(lambda p: not p.is_zero())


# --- gcd against the sympy oracle --------------------------------------------


@settings(max_examples=25, deadline=None)
@given(nonzero_ordinary, nonzero_ordinary, nonzero_ordinary)
def test_gcd_matches_sympy_on_products(g, a, b):
    # plant a common factor; the computed gcd must contain it and match sympy
    # up to a rational unit
    pa, pb = g * a, g * b
    ours = poly_gcd(pa, pb)
    theirs = sympy.gcd(to_sympy(pa), to_sympy(pb))
    names = sorted(set(pa.vars) | set(pb.vars))
    if not names:
        assert ours.is_constant()
        return
    theirs_lp = from_sympy_poly(theirs, names)
    # compare up to unit: cross ratios must both divide exactly
    q1 = divexact(ours, theirs_lp) if _divides(theirs_lp, ours) else None
    q2 = divexact(theirs_lp, ours) if _divides(ours, theirs_lp) else None
    assert q1 is not None and q2 is not None
    assert q1.is_constant() and q2.is_constant()


def _divides(d: LaurentPoly, n: LaurentPoly) -> bool:
    try:
        divexact(n, d)
        return True
    except (ValueError, DivisionByZero):
        return False


def test_gcd_fixed_cases():
    a1, t = LP.var("a1"), LP.var("t")
    assert poly_gcd(a1 * a1 - t * t, a1 - t) == a1 - t
    assert poly_gcd(LP.const(6), LP.const(4)) == LP.const(2)
    # rational contents: gcd(3/4 p, 5/6 p) = gcd(3,5)/lcm(4,6) p
    p = a1 * t + 1
    g = poly_gcd(p * Q(3, 4), p * Q(5, 6))
    assert g == p * Q(1, 12)
    assert poly_gcd(LP.zero(), p) == p
    # coprime inputs
    assert poly_gcd(a1 + 1, t + 1).is_constant()


def test_divexact_errors():
    t = LP.var("t")
    with pytest.raises(ValueError):
        divexact(t * t + 1, t + 1)
    with pytest.raises(DivisionByZero):
        divexact(t, LP.zero())


# --- canonical form ------------------------------------------------------------


def test_canonical_examples():
    t, q, a = LP.var("t"), LP.var("q"), LP.var("a1")
    one = LP.const(1)
    # cancellation
    r = RF(one - t * t, one - t)
    assert r.num == one + t and r.den.is_one()
    # common factor cancels through the Laurent shift; monomials and rational
    # content end up in the numerator: (2/t - 2t)/(4 - 4t) = (1 + t)/(2t)
    r2 = RF(LP.var("t", -1) * 2 - t * 2, LP.const(4) - t * 4)
    assert r2.den.is_one()
    assert r2 == RF(one + t, t * 2)
    assert r2.num == LP("t", {}) + LP.const(Q(1, 2)) + LP.var("t", -1) * Q(1, 2)
    # full collapse of planted common factors
    num = (one - a * t) * (one - q * t) * (one + a * q * t * t)
    den = (one - a * t) * (one + a * q * t * t)
    assert RF(num, den).num == one - q * t

    with pytest.raises(DivisionByZero):
        RF(one, LP.zero())


def test_canonical_substitution_example():
    # 1/(1 - a t) under t -> 1/(q t) becomes q t/(q t - a)
    t, q, a = LP.var("t"), LP.var("q"), LP.var("a1")
    rf = RF(LP.const(1), LP.const(1) - a * t)
    out = rf_substitute(rf, {"t": RF(LP.const(1), q * t)})
    assert out.num == q * t
    assert out.den == q * t - a


@settings(max_examples=40, deadline=None)
@given(laurent_polys(), nonzero_polys, nonzero_polys)
def test_reduce_idempotent_and_scaling_invariant(n, d, k):
    r1 = rf_reduce(n, d)
    r2 = rf_reduce(n * k, d * k)
    assert r1.num == r2.num and r1.den == r2.den
    r3 = rf_reduce(r1.num, r1.den)
    assert r3.num == r1.num and r3.den == r1.den


@settings(max_examples=40, deadline=None)
@given(laurent_polys(), nonzero_polys)
def test_denominator_normal_form(n, d):
    r = rf_reduce(n, d)
    if r.is_zero():
        assert r.den.is_one()
        return
    for v in r.den.vars:
        assert r.den.exp_range(v)[0] == 0
    assert r.den.leading()[1] == 1
    assert poly_gcd(
        r.num.monomial_shift()[1], r.den
    ).is_constant(), "numerator and denominator share a factor"


# --- field laws ------------------------------------------------------------------


@settings(max_examples=30, deadline=None)
@given(laurent_polys(), laurent_polys(), laurent_polys(), nonzero_polys)
def test_ring_laws(a, b, c, d):
    x, y, z = RF(a, d), RF(b, d), RF(c, d)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x - x == RF.const(0)


@settings(max_examples=40, deadline=None)
@given(nonzero_polys, nonzero_polys)
def test_multiplicative_inverse(n, d):
    r = RF(n, d)
    assert r * r.inverse() == RF.one()
    assert r**3 * r**-3 == RF.one()
    assert (r**2) == r * r


# --- substitution ------------------------------------------------------------------


@settings(max_examples=30, deadline=None)
@given(laurent_polys(), nonzero_polys)
def test_substitution_involution(n, d):
    # t -> 1/(q t) applied twice is the identity
    r = RF(n, d)
    step = {"t": RF(LP.const(1), LP.var("q") * LP.var("t"))}
    twice = rf_substitute(rf_substitute(r, step), step)
    assert twice == r


def test_substitution_zero_denominator():
    t = LP.var("t")
    r = RF(LP.const(1), t - 1)
    with pytest.raises(DivisionByZero):
        rf_substitute(r, {"t": RF.const(1)})


# --- numeric evaluation ---------------------------------------------------------------


def test_eval_numeric_basic():
    t, a = LP.var("t"), LP.var("a1")
    r = RF(LP.const(1), LP.const(1) - a * t)
    v = eval_numeric(r, {"a1": Q(2), "t": BigComplex(mpmath.mpc(0.25), 96)}, prec=96)
    assert v.prec == 96
    assert abs(v.value - 2) < mpmath.mpf(2) ** -80
    with pytest.raises(UnresolvedSymbol):
        eval_numeric(r, {"a1": Q(2)})
    with pytest.raises(DivisionByZero):
        eval_numeric(r, {"a1": Q(2), "t": Q(1, 2)})


@settings(max_examples=20, deadline=None)
@given(laurent_polys(), nonzero_polys, laurent_polys(), nonzero_polys)
def test_eval_commutes_with_arithmetic(n1, d1, n2, d2):
    r1, r2 = RF(n1, d1), RF(n2, d2)
    point = {"a1": Q(3, 2), "q": Q(4), "t": Q(1, 5)}
    try:
        va = eval_numeric(r1 * r2 + r1, point, prec=128)
        v1 = eval_numeric(r1, point, prec=128)
        v2 = eval_numeric(r2, point, prec=128)
    except DivisionByZero:
        return
    with mpmath.workprec(160):
        assert abs(va.value - (v1.value * v2.value + v1.value)) < mpmath.mpf(2) ** -90


# --- roots with certified radii ---------------------------------------------------------


def test_roots_with_multiplicity():
    t = LP.var("t")
    one = LP.const(1)
    p = (one - t) * (one - t) * (one - 2 * t)
    boxes = poly_roots_numeric(p, prec=80)
    assert sorted(b.multiplicity for b in boxes) == [1, 2]
    want = {1: mpmath.mpf(1), 2: mpmath.mpf(1)}
    for b in boxes:
        target = mpmath.mpf(1) / 2 if b.multiplicity == 1 else mpmath.mpf(1)
        # the certified disk really contains the true root
        assert abs(b.value.value - target) <= b.radius + mpmath.mpf(2) ** -60
    _ = want


def test_roots_strip_laurent_unit():
    t = LP.var("t")
    p = LP.var("t", -3) * (LP.const(1) - 2 * t)  # t^-3 - 2 t^-2
    boxes = poly_roots_numeric(p)
    assert len(boxes) == 1
    assert abs(boxes[0].value.value - mpmath.mpf(1) / 2) < mpmath.mpf(2) ** -50


def test_roots_with_numeric_parameter():
    t, q = LP.var("t"), LP.var("q")
    p = LP.const(1) - q * t
    boxes = poly_roots_numeric(p, prec=64, assign={"q": BigComplex(mpmath.mpc(9), 64)})
    assert len(boxes) == 1
    assert abs(boxes[0].value.value - mpmath.mpf(1) / 9) < mpmath.mpf(2) ** -40
    with pytest.raises(UnresolvedSymbol):
        poly_roots_numeric(p)


def test_roots_exact_parameter_assignment():
    t, q = LP.var("t"), LP.var("q")
    p = (LP.const(1) - q * t) * (LP.const(1) - q * q * t)
    boxes = poly_roots_numeric(p, assign={"q": 3})
    vals = sorted(float(b.value.value.real) for b in boxes)
    assert abs(vals[0] - 1 / 9) < 1e-12 and abs(vals[1] - 1 / 3) < 1e-12


def test_big_complex_precision_floor():
    with pytest.raises(ValueError):
        BigComplex(mpmath.mpc(1), 32)


# --- serialization ------------------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(laurent_polys(), nonzero_polys)
def test_json_round_trip_structural(n, d):
    r = RF(n, d)
    back = rf_from_json(rf_to_json(r))
    assert back.num == r.num and back.den == r.den


def test_json_shape():
    import json

    t, q = LP.var("t"), LP.var("q")
    r = RF(q * t, q * t - LP.var("a1"))
    data = json.loads(rf_to_json(r))
    assert data["vars"] == ["a1", "q", "t"]
    assert all(isinstance(c, str) and isinstance(e, list) for c, e in data["num"])
    # graded-lex descending order of terms
    keys = [tuple(e) for _, e in data["den"]]
    assert keys == sorted(keys, key=lambda e: (sum(e), e), reverse=True)
