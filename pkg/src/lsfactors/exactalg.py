"""Exact multivariate Laurent-polynomial and rational-function arithmetic.

Everything downstream (local factors, base change, verification suites) is
computed in this ring: Laurent polynomials over Q in a sorted tuple of named
variables, and rational functions kept in a canonical reduced form so that
identity checks are plain structural equality.

Canonical form of a rational function num/den:

* rational coefficients are cleared and the multivariate integer content is
  removed from both parts,
* the common polynomial gcd (computed on the ordinary, non-negative-exponent
  parts under a fixed graded-lexicographic order on the sorted variables) is
  divided out,
* monomial units are pulled into the numerator so the denominator has minimal
  exponent 0 in every variable,
* the denominator's graded-lex leading coefficient is scaled to 1.

Numeric work (temperedness checks, truncated global products) goes through
`eval_numeric` and `poly_roots_numeric`, which use mpmath big-complex values
carrying an explicit working precision; every reported root comes with a
certified error radius (the classical n*|p(z)/p'(z)| root-containment disk).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd
from operator import add
from typing import Iterable, Mapping, Sequence, Union

import mpmath

Q = Fraction


class DivisionByZero(ZeroDivisionError):
    """Raised when a rational function is formed with a zero denominator."""


class UnresolvedSymbol(KeyError):
    """Raised when numeric evaluation meets a variable with no assignment."""


@dataclass(frozen=True)
class BigComplex:
    """A complex value together with the binary precision it was computed at."""

    value: mpmath.mpc
    prec: int = 64

    def __post_init__(self):
        if self.prec < 64:
            raise ValueError("big-complex precision must be at least 64 bits")

    def modulus(self) -> mpmath.mpf:
        with mpmath.workprec(self.prec):
            return abs(self.value)


Scalar = Union[Q, int, BigComplex]


def _as_mpc(x: Scalar, prec: int) -> mpmath.mpc:
    if isinstance(x, BigComplex):
        return mpmath.mpc(x.value)
    if isinstance(x, (Q, int)):
        with mpmath.workprec(prec):
            if isinstance(x, Q):
                return mpmath.mpc(mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator))
            return mpmath.mpc(x)
    if isinstance(x, (float, complex)):
        return mpmath.mpc(x)
    raise TypeError(f"cannot interpret {x!r} as a scalar")


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


def _gl_key(exps: tuple) -> tuple:
    # graded-lex: total degree first, then lexicographic on the exponent tuple
    return (sum(exps), exps)


class LaurentPoly:
    """Multivariate Laurent polynomial with Fraction coefficients.

    Variables are kept as a sorted tuple of names; variables that no longer
    occur are pruned, so equal values have identical representations.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, Q]):
        vs = tuple(variables)
        clean = {}
        for exps, c in terms.items():
            c = Q(c)
            if c == 0:
                continue
            e = tuple(int(x) for x in exps)
            if len(e) != len(vs):
                raise ValueError("exponent tuple length does not match variables")
            clean[e] = clean.get(e, Q(0)) + c
        clean = {e: c for e, c in clean.items() if c != 0}
        # prune unused variables and sort the rest
        used = [i for i in range(len(vs)) if any(e[i] != 0 for e in clean)]
        vs_used = tuple(vs[i] for i in used)
        if len(set(vs_used)) != len(vs_used):
            raise ValueError(f"duplicate variable names in {vs}")
        order = sorted(range(len(vs_used)), key=lambda i: vs_used[i])
        self.vars = tuple(vs_used[i] for i in order)
        self.terms = {}
        for e, c in clean.items():
            picked = tuple(e[used[i]] for i in order)
            self.terms[picked] = c

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly((), {})

    @staticmethod
    def const(c) -> "LaurentPoly":
        c = Q(c)
        if c == 0:
            return LaurentPoly.zero()
        return LaurentPoly((), {(): c})

    @staticmethod
    def var(name: str, exp: int = 1) -> "LaurentPoly":
        return LaurentPoly((name,), {(exp,): Q(1)})

    @staticmethod
    def monomial(coeff, powers: Mapping[str, int]) -> "LaurentPoly":
        powers = {v: e for v, e in powers.items() if e != 0}
        vs = tuple(powers)
        return LaurentPoly(vs, {tuple(powers[v] for v in vs): Q(coeff)})

    @staticmethod
    def _assemble(vs: tuple, terms: dict) -> "LaurentPoly":
        """Trusted build: vs sorted, exponent tuples match vs, coefficients
        nonzero Fractions. Only prunes variables that dropped out."""
        n = len(vs)
        used = [i for i in range(n) if any(e[i] for e in terms)]
        p = object.__new__(LaurentPoly)
        if len(used) == n:
            p.vars = vs
            p.terms = terms
        else:
            p.vars = tuple(vs[i] for i in used)
            p.terms = {tuple(e[i] for i in used): c for e, c in terms.items()}
        return p

    # -- basic structure -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(): Q(1)}

    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self) -> Q:
        if self.vars:
            raise ValueError("not a constant polynomial")
        return self.terms.get((), Q(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- variable alignment ---------------------------------------------------

    def lift(self, variables: Sequence[str]) -> dict:
        """Terms of self re-indexed over the (sorted) superset `variables`."""
        pos = {v: i for i, v in enumerate(variables)}
        n = len(variables)
        out = {}
        for e, c in self.terms.items():
            ee = [0] * n
            for v, x in zip(self.vars, e):
                ee[pos[v]] = x
            out[tuple(ee)] = c
        return out

    @staticmethod
    def _aligned(a: "LaurentPoly", b: "LaurentPoly"):
        if a.vars == b.vars:
            return a.vars, a.terms, b.terms
        vs = tuple(sorted(set(a.vars) | set(b.vars)))
        return vs, a.lift(vs), b.lift(vs)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Q)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        vs, ta, tb = LaurentPoly._aligned(self, other)
        out = dict(ta)
        for e, c in tb.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            elif v == -c:
                del out[e]
            else:
                out[e] = v + c
        return LaurentPoly._assemble(vs, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._assemble(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Q)):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Q)):
            c = Q(other)
            if c == 0:
                return LaurentPoly.zero()
            return LaurentPoly._assemble(self.vars, {e: c * v for e, v in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        vs, ta, tb = LaurentPoly._aligned(self, other)
        # accumulate on cleared-denominator integers; Fraction arithmetic
        # normalizes on every operation, which dominates large products
        da = 1
        for c in ta.values():
            d = c.denominator
            if d != 1:
                da = da // igcd(da, d) * d
        db = 1
        for c in tb.values():
            d = c.denominator
            if d != 1:
                db = db // igcd(db, d) * d
        ia = [(e, c.numerator * (da // c.denominator)) for e, c in ta.items()]
        ib = [(e, c.numerator * (db // c.denominator)) for e, c in tb.items()]
        out: dict = {}
        get = out.get
        for ea, ca in ia:
            for eb, cb in ib:
                e = tuple(map(add, ea, eb))
                v = get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        scale = da * db
        if scale == 1:
            terms = {e: Q(c) for e, c in out.items() if c}
        else:
            terms = {e: Q(c, scale) for e, c in out.items() if c}
        return LaurentPoly._assemble(vs, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial; use RationalFunction")
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- degree data -----------------------------------------------------------

    def exp_range(self, name: str):
        """(min, max) exponent of `name` across terms; (0, 0) if absent."""
        if name not in self.vars:
            return (0, 0)
        i = self.vars.index(name)
        es = [e[i] for e in self.terms]
        return (min(es), max(es))

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def leading(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_gl_key)
        return e, self.terms[e]

    def coefficients_in(self, name: str) -> dict:
        """View as univariate in `name`: exponent -> LaurentPoly in the rest."""
        if name not in self.vars:
            return {0: self}
        i = self.vars.index(name)
        rest = self.vars[:i] + self.vars[i + 1 :]
        buckets: dict = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1 :]] = c
        return {k: LaurentPoly._assemble(rest, t) for k, t in buckets.items()}

    @staticmethod
    def from_coefficients(name: str, coeffs: Mapping[int, "LaurentPoly"]) -> "LaurentPoly":
        out = LaurentPoly.zero()
        for k, p in coeffs.items():
            out = out + (p * LaurentPoly.var(name, k) if k else p)
        return out

    # -- normalization helpers --------------------------------------------------

    def monomial_shift(self):
        """Factor self = monomial * ordinary, ordinary having min exponent 0 per variable."""
        if not self.terms:
            return {}, self
        shift = {}
        for i, v in enumerate(self.vars):
            m = min(e[i] for e in self.terms)
            if m != 0:
                shift[v] = m
        if not shift:
            return {}, self
        offs = tuple(shift.get(v, 0) for v in self.vars)
        out = {
            tuple(x - o for x, o in zip(e, offs)): c for e, c in self.terms.items()
        }
        return shift, LaurentPoly._assemble(self.vars, out)

    def content_and_primitive(self):
        """Factor self = content * primitive with content in Q, primitive an
        integer-coefficient polynomial whose graded-lex leading coefficient is
        positive and whose coefficient gcd is 1."""
        if not self.terms:
            return Q(0), self
        from math import gcd as igcd, lcm as ilcm

        den = 1
        for c in self.terms.values():
            den = ilcm(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = igcd(num, abs(c.numerator * (den // c.denominator)))
        content = Q(num, den)
        lead = self.terms[max(self.terms, key=_gl_key)]
        if lead < 0:
            content = -content
        inv = 1 / content
        prim = LaurentPoly._assemble(
            self.vars, {e: c * inv for e, c in self.terms.items()}
        )
        return content, prim

    # -- display -----------------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=_gl_key, reverse=True):
            c = self.terms[e]
            factors = []
            for v, x in zip(self.vars, e):
                if x == 1:
                    factors.append(v)
                elif x != 0:
                    factors.append(f"{v}^{x}")
            body = "*".join(factors)
            if not body:
                bits.append(str(c))
            elif c == 1:
                bits.append(body)
            elif c == -1:
                bits.append(f"-{body}")
            else:
                bits.append(f"{c}*{body}")
        s = " + ".join(bits).replace("+ -", "- ")
        return s


# ---------------------------------------------------------------------------
# gcd machinery (on ordinary, integer-primitive polynomials)
# ---------------------------------------------------------------------------


def _deg_in(p: LaurentPoly, name: str) -> int:
    return p.exp_range(name)[1]


def _lead_coeff_in(p: LaurentPoly, name: str) -> LaurentPoly:
    if name not in p.vars:
        return p
    i = p.vars.index(name)
    m = max(e[i] for e in p.terms)
    rest = p.vars[:i] + p.vars[i + 1 :]
    picked = {e[:i] + e[i + 1 :]: c for e, c in p.terms.items() if e[i] == m}
    return LaurentPoly._assemble(rest, picked)


def divexact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact division a / b of ordinary polynomials; raises if not divisible."""
    if b.is_zero():
        raise DivisionByZero("polynomial division by zero")
    if a.is_zero():
        return a
    vs = tuple(sorted(set(a.vars) | set(b.vars)))
    r = a.lift(vs)
    tb = b.lift(vs)
    eb = max(tb, key=_gl_key)
    cb = tb[eb]
    q_terms: dict = {}
    while r:
        er = max(r, key=_gl_key)
        e = tuple(x - y for x, y in zip(er, eb))
        if any(x < 0 for x in e):
            raise ValueError("inexact polynomial division")
        c = r[er] / cb
        q_terms[e] = q_terms.get(e, Q(0)) + c
        for eo, co in tb.items():
            k = tuple(x + y for x, y in zip(e, eo))
            v = r.get(k, Q(0)) - c * co
            if v:
                r[k] = v
            else:
                r.pop(k, None)
    return LaurentPoly._assemble(vs, {e: c for e, c in q_terms.items() if c})


def _int_gcd_const(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    from math import gcd as igcd

    g = 0
    for p in (a, b):
        for c in p.terms.values():
            g = igcd(g, abs(c.numerator))
    return LaurentPoly.const(g)


_EVAL_SEEDS = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

# specializations for degree certificates run modulo a fixed large prime so
# the arithmetic stays on machine-sized ints instead of growing Fractions
_CERT_PRIME = (1 << 61) - 1


def _uni_gcd_degree_mod(a: dict, b: dict) -> int:
    """Degree of gcd of univariate residue polynomials (exp -> int mod the
    certificate prime); inputs must be nonzero."""
    P = _CERT_PRIME

    def rem(p, d):
        p = dict(p)
        dd = max(d)
        inv = pow(d[dd], -1, P)
        while p:
            dp = max(p)
            if dp < dd:
                break
            f = p[dp] * inv % P
            for e, v in d.items():
                k = e + dp - dd
                nv = (p.get(k, 0) - f * v) % P
                if nv:
                    p[k] = nv
                else:
                    p.pop(k, None)
        return p

    while b:
        a, b = b, rem(a, b)
    return max(a) if a else 0


def _uni_gcd(a: dict, b: dict) -> dict:
    """gcd of univariate polynomials given as exp->Q dicts (monic result)."""

    def degree(p):
        return max(p) if p else -1

    def scale(p, c):
        return {e: v * c for e, v in p.items()}

    def rem(p, d):
        p = dict(p)
        dd = degree(d)
        lc = d[dd]
        while p and degree(p) >= dd:
            dp = degree(p)
            c = p[dp] / lc
            for e, v in d.items():
                k = e + dp - dd
                p[k] = p.get(k, Q(0)) - c * v
                if p[k] == 0:
                    del p[k]
        return p

    while b:
        a, b = b, rem(a, b)
    if a:
        a = scale(a, 1 / a[max(a)])
    return a


def _batch_images_mod(p: LaurentPoly, names, point):
    """Univariate residue images of p in every variable of `names`, sharing a
    single pass over the terms: the full specialization of each term is
    computed once and each variable's own power is divided back out. Returns
    {v: {exp: residue}} or None when a coefficient denominator collapses at
    the prime."""
    P = _CERT_PRIME
    idx = {v: i for i, v in enumerate(p.vars)}
    pw: dict = {}
    ipw: dict = {}
    outs: dict = {v: {} for v in names}
    live = [(v, idx.get(v)) for v in names]
    for e, c in p.terms.items():
        if c.denominator == 1:
            val = c.numerator % P
        else:
            den = c.denominator % P
            if den == 0:
                return None
            val = c.numerator % P * pow(den, -1, P) % P
        for v, x in zip(p.vars, e):
            if x:
                r = pw.get((v, x))
                if r is None:
                    r = pw[(v, x)] = pow(point[v] % P, x, P)
                val = val * r % P
        for v, i in live:
            x = e[i] if i is not None else 0
            if x:
                r = ipw.get((v, x))
                if r is None:
                    r = ipw[(v, x)] = pow(point[v] % P, -x, P)
                w = val * r % P
            else:
                w = val
            o = outs[v]
            o[x] = (o.get(x, 0) + w) % P
    return {v: {k: r for k, r in o.items() if r} for v, o in outs.items()}


def _gcd_cert_degrees(a: LaurentPoly, b: LaurentPoly, names) -> dict:
    """Per-variable upper bounds for the degree of gcd(a, b), from shared
    specializations whose top coefficients provably survived. Variables whose
    every trial was unlucky are missing from the result; an entry of 0
    certifies the gcd free of that variable."""
    allvars = sorted(set(a.vars) | set(b.vars))
    out: dict = {}
    want = set(names)
    for trial in range(3):
        if not want:
            break
        point = {
            v: _EVAL_SEEDS[(i + trial * 5) % len(_EVAL_SEEDS)] + trial
            for i, v in enumerate(allvars)
        }
        im_a = _batch_images_mod(a, tuple(want), point)
        im_b = _batch_images_mod(b, tuple(want), point)
        if im_a is None or im_b is None:
            continue
        for v in list(want):
            ga, gb = im_a[v], im_b[v]
            if not ga or not gb:
                continue
            # top buckets intact: the image kept each leading coefficient, so
            # the gcd's own leading coefficient (a divisor of both) survived
            # and the image gcd degree bounds the true degree from above
            if max(ga) == _deg_in(a, v) and max(gb) == _deg_in(b, v):
                out[v] = _uni_gcd_degree_mod(ga, gb)
                want.discard(v)
    return out


def _prem(a: LaurentPoly, b: LaurentPoly, name: str) -> LaurentPoly:
    """Standardized pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b."""
    da, db = _deg_in(a, name), _deg_in(b, name)
    lcb = _lead_coeff_in(b, name)
    r = a
    steps = 0
    while not r.is_zero() and _deg_in(r, name) >= db:
        dr = _deg_in(r, name)
        lr = _lead_coeff_in(r, name)
        r = lcb * r - lr * LaurentPoly.var(name, dr - db) * b
        steps += 1
    # pad to the exact lc-power the subresultant divisions expect
    for _ in range(da - db + 1 - steps):
        r = lcb * r
    return r


def _content_in(p: LaurentPoly, name: str) -> LaurentPoly:
    # folding small coefficients first keeps the intermediate gcds small
    coeffs = sorted(p.coefficients_in(name).values(), key=LaurentPoly.total_degree)
    g = coeffs[0]
    for c in coeffs[1:]:
        g = poly_gcd(g, c)
        if g.is_constant() and not g.is_zero():
            break
    # fold in the integer content of the rest
    if g.is_constant():
        gg = g
        for c in coeffs:
            gg = _int_gcd_const(gg, c)
        return gg if not gg.is_zero() else LaurentPoly.const(1)
    return g


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """gcd of ordinary (non-negative exponent) polynomials over Q, returned
    as (gcd of the rational contents) * (primitive polynomial gcd), with a
    positive graded-lex leading coefficient."""
    from math import gcd as igcd

    if a.is_zero() and b.is_zero():
        return LaurentPoly.zero()
    if a.is_zero() or b.is_zero():
        c, p = (b if a.is_zero() else a).content_and_primitive()
        return p * abs(c)
    ca, pa = a.content_and_primitive()
    cb, pb = b.content_and_primitive()
    cg = Q(
        igcd(abs(ca.numerator) * cb.denominator, abs(cb.numerator) * ca.denominator),
        ca.denominator * cb.denominator,
    )
    return _gcd_primitive(pa, pb) * cg


def _divides(d: LaurentPoly, n: LaurentPoly) -> bool:
    try:
        divexact(n, d)
        return True
    except ValueError:
        return False


def _gcd_primitive(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """gcd of integer-primitive ordinary polynomials; primitive, positive lead."""
    if a == b:
        return a
    if a.is_constant() or b.is_constant():
        return LaurentPoly.const(1)
    if len(a.vars) == 1 and a.vars == b.vars:
        name = a.vars[0]
        g = _uni_gcd(
            {e[0]: c for e, c in a.terms.items()},
            {e[0]: c for e, c in b.terms.items()},
        )
        if not g or max(g) == 0:
            return LaurentPoly.const(1)
        return LaurentPoly((name,), {(e,): c for e, c in g.items()}).content_and_primitive()[1]
    shared = [v for v in a.vars if v in b.vars and _deg_in(a, v) > 0 and _deg_in(b, v) > 0]
    if not shared:
        return LaurentPoly.const(1)
    # main variable: smallest combined degree keeps the remainder sequence short
    main = min(shared, key=lambda v: _deg_in(a, v) + _deg_in(b, v))
    certs = _gcd_cert_degrees(a, b, shared)
    if all(certs.get(v) == 0 for v in shared):
        # certified free of every shared variable: the primitive gcd is
        # constant, so skip the content extraction entirely
        return LaurentPoly.const(1)
    dg = certs.get(main)
    conta = _content_in(a, main)
    contb = _content_in(b, main)
    cont_g = poly_gcd(conta, contb).content_and_primitive()[1]
    if dg == 0:
        return cont_g
    A = divexact(a, conta).content_and_primitive()[1]
    B = divexact(b, contb).content_and_primitive()[1]
    if _deg_in(A, main) < _deg_in(B, main):
        A, B = B, A
    A0, B0 = A, B
    # subresultant remainder sequence: one content extraction at the very end
    g = LaurentPoly.const(1)
    h = LaurentPoly.const(1)
    while True:
        dA, dB = _deg_in(A, main), _deg_in(B, main)
        if dB == 0:
            return cont_g
        if dg is not None and dB == dg:
            cand = divexact(B, _content_in(B, main)).content_and_primitive()[1]
            if _divides(cand, A0) and _divides(cand, B0):
                return (cand * cont_g).content_and_primitive()[1]
            dg = None  # the specialization overshot; no further early exits
        delta = dA - dB
        r = _prem(A, B, main)
        if r.is_zero():
            prim = divexact(B, _content_in(B, main)).content_and_primitive()[1]
            return (prim * cont_g).content_and_primitive()[1]
        A = B
        B = divexact(r, g * h**delta)
        g = _lead_coeff_in(A, main)
        if delta == 1:
            h = g
        elif delta > 1:
            h = divexact(g**delta, h ** (delta - 1))


# ---------------------------------------------------------------------------
# Rational functions in canonical form
# ---------------------------------------------------------------------------


class RationalFunction:
    """num/den in the canonical reduced form described in the module docstring."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None, _canonical: bool = False):
        if den is None:
            den = LaurentPoly.const(1)
        if _canonical:
            self.num = num
            self.den = den
            return
        n, d = _reduce_pair(num, den)
        self.num = n
        self.den = d

    # -- constructors ------------------------------------------------------------

    @staticmethod
    def const(c) -> "RationalFunction":
        return RationalFunction(LaurentPoly.const(c))

    @staticmethod
    def var(name: str, exp: int = 1) -> "RationalFunction":
        return RationalFunction(LaurentPoly.var(name, exp))

    @staticmethod
    def monomial(coeff, powers: Mapping[str, int]) -> "RationalFunction":
        return RationalFunction(LaurentPoly.monomial(coeff, powers))

    @staticmethod
    def one() -> "RationalFunction":
        return RationalFunction.const(1)

    # -- structure ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_monomial(self) -> bool:
        return self.den.is_one() and self.num.is_monomial()

    def variables(self) -> tuple:
        return tuple(sorted(set(self.num.vars) | set(self.den.vars)))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Q)):
            other = RationalFunction.const(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        return hash((self.num, self.den))

    # -- arithmetic ------------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, (int, Q)):
            return RationalFunction.const(other)
        if isinstance(other, LaurentPoly):
            return RationalFunction(other)
        if isinstance(other, RationalFunction):
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero():
            return o
        if o.num.is_zero():
            return self
        # shared denominator factor first: keeps the reduction small
        g = poly_gcd(self.den, o.den)
        if g.is_constant():
            return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)
        d1r = divexact(self.den, g)
        d2r = divexact(o.den, g)
        return RationalFunction(self.num * d2r + o.num * d1r, self.den * d2r)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return RationalFunction.const(0)
        # cross-cancel before multiplying so the final reduction is trivial
        sh1, n1 = self.num.monomial_shift()
        sh2, n2 = o.num.monomial_shift()
        g1 = poly_gcd(n1, o.den)
        g2 = poly_gcd(n2, self.den)
        if not g1.is_constant():
            n1 = divexact(n1, g1)
            d2 = divexact(o.den, g1)
        else:
            d2 = o.den
        if not g2.is_constant():
            n2 = divexact(n2, g2)
            d1 = divexact(self.den, g2)
        else:
            d1 = self.den
        shift = dict(sh1)
        for v, m in sh2.items():
            shift[v] = shift.get(v, 0) + m
        num = n1 * n2
        if shift:
            num = num * LaurentPoly.monomial(1, shift)
        return RationalFunction(num, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise DivisionByZero("division of rational functions by zero")
        return self * RationalFunction(o.den, o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n == 0:
            return RationalFunction.one()
        if n < 0:
            if self.num.is_zero():
                raise DivisionByZero("negative power of zero")
            return RationalFunction(self.den, self.num) ** (-n)
        result = RationalFunction.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "RationalFunction":
        return self ** (-1)

    def __repr__(self) -> str:
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"


def _reduce_pair(num: LaurentPoly, den: LaurentPoly):
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        return LaurentPoly.zero(), LaurentPoly.const(1)
    sh_n, on = num.monomial_shift()
    sh_d, od = den.monomial_shift()
    cn, pn = on.content_and_primitive()
    cd, pd = od.content_and_primitive()
    g = _gcd_primitive(pn, pd)
    if not g.is_one():
        pn = divexact(pn, g)
        pd = divexact(pd, g)
    # unit normalization: denominator ordinary with graded-lex leading coeff 1
    _, lead = pd.leading()
    scale = cn / (cd * lead)
    shift = dict(sh_n)
    for v, m in sh_d.items():
        shift[v] = shift.get(v, 0) - m
    mono = LaurentPoly.monomial(scale, shift) if (shift or scale != 1) else None
    n_final = pn * mono if mono is not None else pn
    d_final = pd * Q(1, 1) if lead == 1 else LaurentPoly(pd.vars, {e: c / lead for e, c in pd.terms.items()})
    return n_final, d_final


def rf_reduce(num: LaurentPoly, den: LaurentPoly) -> RationalFunction:
    """Canonical rational function num/den (the RationalFunction constructor)."""
    return RationalFunction(num, den)


# ---------------------------------------------------------------------------
# substitution and numeric evaluation
# ---------------------------------------------------------------------------


def _monomial_entry(r: RationalFunction):
    """(coeff, powers) when r is a single Laurent monomial, else None."""
    if not r.den.is_one() or not r.num.is_monomial():
        return None
    ((exps, c),) = r.num.terms.items()
    return c, dict(zip(r.num.vars, exps))


def _poly_substitute(p: LaurentPoly, repl: Mapping[str, RationalFunction]) -> RationalFunction:
    touched = [v for v in p.vars if v in repl]
    if not touched:
        return RationalFunction(p)
    singles = {}
    for v in touched:
        entry = _monomial_entry(repl[v])
        if entry is None:
            singles = None
            break
        singles[v] = entry
    if singles is not None:
        # a monomial replacement maps terms to terms: remap exponents by name
        by_name: dict = {}
        for e, c in p.terms.items():
            coeff = c
            acc: dict = {}
            for v, x in zip(p.vars, e):
                if x == 0:
                    continue
                if v in singles:
                    rc, rpow = singles[v]
                    coeff *= rc**x
                    for w, k in rpow.items():
                        acc[w] = acc.get(w, 0) + k * x
                else:
                    acc[v] = acc.get(v, 0) + x
            key = tuple(sorted((w, k) for w, k in acc.items() if k != 0))
            by_name[key] = by_name.get(key, Q(0)) + coeff
        names = tuple(sorted({w for key in by_name for w, _ in key}))
        index = {w: i for i, w in enumerate(names)}
        terms: dict = {}
        for key, coeff in by_name.items():
            if not coeff:
                continue
            exps = [0] * len(names)
            for w, k in key:
                exps[index[w]] = k
            terms[tuple(exps)] = coeff
        return RationalFunction(LaurentPoly._assemble(names, terms))
    out = RationalFunction.const(0)
    for e, c in p.terms.items():
        keep: dict = {}
        part = RationalFunction.const(c)
        for v, x in zip(p.vars, e):
            if x == 0:
                continue
            if v in repl:
                part = part * (repl[v] ** x)
            else:
                keep[v] = x
        if keep:
            part = part * RationalFunction.monomial(1, keep)
        out = out + part
    return out


def rf_substitute(rf: RationalFunction, repl: Mapping[str, object]) -> RationalFunction:
    """Substitute variables by rational functions (or scalars/polynomials)."""
    coerced: dict = {}
    for v, r in repl.items():
        if isinstance(r, RationalFunction):
            coerced[v] = r
        elif isinstance(r, LaurentPoly):
            coerced[v] = RationalFunction(r)
        else:
            coerced[v] = RationalFunction.const(r)
    n = _poly_substitute(rf.num, coerced)
    d = _poly_substitute(rf.den, coerced)
    if d.is_zero():
        raise DivisionByZero("substitution produced a zero denominator")
    return n / d


def eval_numeric(rf: RationalFunction, assign: Mapping[str, Scalar], prec: int = 64) -> BigComplex:
    """Evaluate at a point; all variables must be assigned."""
    prec = max(prec, 64)

    def eval_poly(p: LaurentPoly) -> mpmath.mpc:
        total = mpmath.mpc(0)
        for e, c in p.terms.items():
            v = mpmath.mpc(mpmath.mpf(c.numerator)) / mpmath.mpf(c.denominator)
            for name, x in zip(p.vars, e):
                if name not in assign:
                    raise UnresolvedSymbol(name)
                v *= _as_mpc(assign[name], prec) ** x
            total += v
        return total

    with mpmath.workprec(prec + 16):
        nv = eval_poly(rf.num)
        dv = eval_poly(rf.den)
        if dv == 0:
            raise DivisionByZero("denominator vanishes at the evaluation point")
        return BigComplex(nv / dv, prec)


# ---------------------------------------------------------------------------
# univariate roots with certified radii
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootBox:
    """An approximate root, a disk radius certified to contain a true root,
    and its multiplicity (exact when coefficients were exact)."""

    value: BigComplex
    radius: float
    multiplicity: int


def _uni_fraction_coeffs(p: LaurentPoly, name: str) -> dict:
    if any(v != name for v in p.vars):
        raise UnresolvedSymbol(f"polynomial still contains symbols besides {name!r}: {p.vars}")
    return {e[0] if e else 0: c for e, c in p.lift((name,)).items()}


def _sqfree_decompose(coeffs: dict) -> list:
    """Yun-style square-free decomposition of an exact univariate polynomial.

    Returns [(coeffs_i, multiplicity_i)] with each factor square-free.
    """

    def derive(p):
        return {e - 1: c * e for e, c in p.items() if e != 0}

    def quo(a, b):
        a = dict(a)
        out = {}
        db = max(b)
        while a and max(a) >= db:
            da = max(a)
            c = a[da] / b[db]
            out[da - db] = c
            for e, v in b.items():
                k = e + da - db
                a[k] = a.get(k, Q(0)) - c * v
                if a[k] == 0:
                    del a[k]
        return out

    p = dict(coeffs)
    g = _uni_gcd(p, derive(p))
    if not g or max(g) == 0:
        return [(p, 1)]
    out = []
    w = quo(p, g)
    y = quo(derive(p), g)
    k = 1
    while True:
        z = {e: c for e, c in y.items()}
        dw = derive(w)
        for e, c in dw.items():
            z[e] = z.get(e, Q(0)) - c
        z = {e: c for e, c in z.items() if c != 0}
        if not z:
            if w and max(w) > 0:
                out.append((w, k))
            break
        f = _uni_gcd(w, z)
        if f and max(f) > 0:
            out.append((f, k))
        w = quo(w, f) if f and max(f) > 0 else w
        y = quo(z, f) if f and max(f) > 0 else z
        k += 1
        if not w or max(w) == 0:
            break
    return out if out else [(p, 1)]


def poly_roots_numeric(
    p: LaurentPoly,
    prec: int = 64,
    assign: Mapping[str, Scalar] | None = None,
    var: str = "t",
) -> list:
    """Roots (in `var`) of a Laurent polynomial, with certified error radii.

    Other variables must be resolved through `assign`. The Laurent unit
    `var`^k is stripped first, so only genuine roots are reported; the
    multiplicities sum to the exponent span of `var`.
    """
    prec = max(prec, 64)
    # exact assignments stay on the Fraction path; BigComplex ones force mpc coeffs
    numeric_assign = {v: a for v, a in (assign or {}).items() if isinstance(a, BigComplex)}
    exact_assign = {v: Q(a) for v, a in (assign or {}).items() if isinstance(a, (int, Q))}
    work = p
    if exact_assign:
        rf = rf_substitute(RationalFunction(p), exact_assign)
        if not rf.den.is_one():
            raise ValueError("assignment produced a genuine denominator")
        work = rf.num
    if numeric_assign:
        return _roots_numeric_coeffs(work, numeric_assign, prec, var)
    coeffs = _uni_fraction_coeffs(work, var)
    if not coeffs:
        return []
    lo = min(coeffs)
    coeffs = {e - lo: c for e, c in coeffs.items()}
    if max(coeffs) == 0:
        return []
    out = []
    with mpmath.workprec(prec + 32):
        for fac, mult in _sqfree_decompose(coeffs):
            deg = max(fac)
            if deg == 0:
                continue
            clist = [fac.get(e, Q(0)) for e in range(deg, -1, -1)]
            mpc_list = [mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator) for c in clist]
            roots = mpmath.polyroots(mpc_list, maxsteps=200, extraprec=prec)
            for z in roots:
                out.append(RootBox(BigComplex(mpmath.mpc(z), prec), float(_root_radius(fac, z)), mult))
    out.sort(key=lambda r: (mpmath.fabs(r.value.value), mpmath.arg(r.value.value) if r.value.value != 0 else 0))
    return out


def _root_radius(coeffs: dict, z) -> mpmath.mpf:
    """Radius of a disk about z certified to contain a root: n*|p(z)/p'(z)|."""
    n = max(coeffs)
    pz = mpmath.mpc(0)
    dpz = mpmath.mpc(0)
    for e, c in coeffs.items():
        cc = mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator) if isinstance(c, Q) else mpmath.mpc(c)
        pz += cc * z**e
        if e:
            dpz += cc * e * z ** (e - 1)
    if pz == 0:
        return mpmath.mpf(0)
    if dpz == 0:
        return mpmath.mpf("inf")
    return n * abs(pz / dpz)


def _roots_numeric_coeffs(p: LaurentPoly, numeric_assign: Mapping[str, BigComplex], prec: int, var: str):
    others = [v for v in p.vars if v != var]
    missing = [v for v in others if v not in numeric_assign]
    if missing:
        raise UnresolvedSymbol(missing[0])
    buckets: dict = {}
    with mpmath.workprec(prec + 32):
        for e, c in p.terms.items():
            val = mpmath.mpc(mpmath.mpf(c.numerator)) / mpmath.mpf(c.denominator)
            k = 0
            for v, x in zip(p.vars, e):
                if v == var:
                    k = x
                else:
                    val *= _as_mpc(numeric_assign[v], prec) ** x
            buckets[k] = buckets.get(k, mpmath.mpc(0)) + val
        buckets = {k: v for k, v in buckets.items() if v != 0}
        if not buckets:
            return []
        lo = min(buckets)
        buckets = {e - lo: c for e, c in buckets.items()}
        deg = max(buckets)
        if deg == 0:
            return []
        clist = [buckets.get(e, mpmath.mpc(0)) for e in range(deg, -1, -1)]
        roots = mpmath.polyroots(clist, maxsteps=200, extraprec=prec)
        out = []
        for z in roots:
            out.append(RootBox(BigComplex(mpmath.mpc(z), prec), float(_root_radius(buckets, z)), 1))
    out.sort(key=lambda r: (mpmath.fabs(r.value.value), mpmath.arg(r.value.value) if r.value.value != 0 else 0))
    return out


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------


def _terms_to_obj(terms: Mapping[tuple, Q]) -> list:
    return [[str(terms[e]), list(e)] for e in sorted(terms, key=_gl_key, reverse=True)]


def poly_to_obj(p: LaurentPoly) -> list:
    return _terms_to_obj(p.terms)


def poly_from_obj(variables: Sequence[str], data: Iterable) -> LaurentPoly:
    return LaurentPoly(tuple(variables), {tuple(e): Q(c) for c, e in data})


def rf_to_json(rf: RationalFunction) -> str:
    vs = rf.variables()
    return json.dumps(
        {
            "vars": list(vs),
            "num": _terms_to_obj(rf.num.lift(vs)),
            "den": _terms_to_obj(rf.den.lift(vs)),
        }
    )


def rf_from_json(payload: str) -> RationalFunction:
    data = json.loads(payload)
    vs = tuple(data["vars"])
    num = poly_from_obj(vs, data["num"])
    den = poly_from_obj(vs, data["den"])
    return RationalFunction(num, den)
