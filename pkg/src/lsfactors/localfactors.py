"""Gamma, L and epsilon factors of unramified data, and the identity checks
that tie them together.

Everything is a rational function in t = q^(-s) with exact coefficients. The
L-factor of a block is the inverse of its twisted determinant; the gamma
factor is epsilon(s) * L(1-s, dual) / L(s), where the dual inverts every
Satake value and the (1-s) side substitutes t -> 1/(q t). The additive
character enters only through its conductor exponent c: a block whose
determinant has t-degree n gets epsilon = det^c * q^(c n / 2) * t^(c n),
and when c*n is odd the entire triple is written in the symbol sqrtq with
q = sqrtq^2 so the arithmetic stays exact. Characters of the compact
norm-one torus are trivial for unramified data and never appear.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Mapping, Optional, Tuple

from .exactalg import (
    BigComplex,
    LaurentPoly,
    RationalFunction,
    poly_roots_numeric,
    rf_substitute,
)
from .lgroup import (
    AdjointBlock,
    DimensionError,
    SatakeClass,
    UnsupportedConstituent,
    asai_model,
    bc_parameter_list,
    invert_value,
    rs_model,
    twisted_det,
    value,
)
from .rootdata import RootSystem
import mpmath

from .weyl import (
    WeylGroup,
    langlands_decompose,
    level_of,
    level_partition,
    removed_simple_index,
)


class UnsupportedRamified(ValueError):
    """Ramified character data reached a computation that only covers the
    unramified case."""


class RequiresNumeric(ValueError):
    """A numeric-only check was called on purely symbolic data."""


# ---------------------------------------------------------------------------
# groups and representations
# ---------------------------------------------------------------------------


_FAMILIES = ("U", "resGL")
_BASES = ("F", "inert", "split")


@dataclass(frozen=True)
class Group:
    """Which group a Satake datum lives on.

    family "U" is the quasi-split unitary group of the given size over the
    quadratic algebra named by `base` ("inert" field case, "split" algebra
    case, where the group is a plain general linear group); family "resGL"
    is a general linear group viewed over the base field, with `base`
    recording the coefficient algebra ("F" for none). `levi = (m, k)` marks
    the datum as living on the block-diagonal subgroup with a size-m general
    linear factor in front: inside a unitary group the second block is the
    smaller unitary group of size k = size - 2m, inside a general linear
    group it is the complementary factor of size k = size - m.
    """

    family: str
    size: int
    base: str = "inert"
    levi: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise DimensionError(f"unknown group family {self.family!r}")
        if self.size < 1:
            raise DimensionError("group size must be positive")
        if self.base not in _BASES:
            raise DimensionError(f"unknown base tag {self.base!r}")
        if self.family == "U" and self.base == "F":
            raise DimensionError("a unitary group needs a quadratic algebra tag")
        if self.levi is not None:
            m, k = self.levi
            if m < 1 or k < 0:
                raise DimensionError(f"bad block sizes {self.levi}")
            want = 2 * m + k if self.family == "U" else m + k
            if want != self.size or (self.family == "resGL" and k < 1):
                raise DimensionError(
                    f"blocks {self.levi} do not fit inside size {self.size}"
                )

    def root_system(self) -> RootSystem:
        if self.family == "U":
            return RootSystem.unitary(self.size)
        return RootSystem.general_linear(self.size)

    def levels(self) -> tuple:
        """The levels carrying a block model for this datum."""
        if self.levi is None:
            return ("std",) if self.family == "resGL" else ()
        if self.family == "resGL":
            return (1,)
        return (1,) if self.levi[1] == 0 else (1, 2)


@dataclass(frozen=True)
class AdditiveCharData:
    """An additive character, reduced to the only datum that matters
    unramified: its conductor exponent (0 = unramified)."""

    conductor_exponent: int = 0

    def __post_init__(self):
        if not isinstance(self.conductor_exponent, int):
            raise DimensionError("conductor exponent must be an integer")


PSI0 = AdditiveCharData(0)


def _count_for(group: Group) -> tuple:
    """(values on the first block, values on the second or None)."""
    if group.levi is None:
        if group.family == "U":
            n = group.size if group.base == "split" else group.size // 2
            return n, None
        return group.size, None
    m, k = group.levi
    if group.family == "resGL":
        return m, k
    return m, (k if group.base == "split" else k // 2) if k > 0 else None


@dataclass(frozen=True)
class UnramifiedRep:
    """An unramified datum: group, Satake values, and the size of the
    residue field.

    `satake` carries the values on the group itself, or on the leading
    general-linear block when the group descriptor names a block subgroup;
    `second` then carries the values on the other block. `q` is either the
    symbol name "q" or an exact integer >= 2. `numeric` optionally assigns a
    complex value to every Satake symbol, switching the datum into numeric
    mode for the root-location checks.
    """

    group: Group
    satake: SatakeClass
    second: Optional[SatakeClass] = None
    q: object = "q"
    numeric: Optional[Mapping[str, complex]] = None

    def __post_init__(self):
        want_first, want_second = _count_for(self.group)
        if self.satake.size != want_first:
            raise DimensionError(
                f"group {self.group} carries {want_first} values, "
                f"got {self.satake.size}"
            )
        if want_second is None:
            if self.second is not None:
                raise DimensionError("this group has no second block")
        else:
            if self.second is None or self.second.size != want_second:
                raise DimensionError(
                    f"second block carries {want_second} values"
                )
        if not (self.q == "q" or (isinstance(self.q, int) and self.q >= 2)):
            raise DimensionError("q must be the symbol 'q' or an integer >= 2")

    def dual(self) -> "UnramifiedRep":
        """Invert every Satake value."""
        return UnramifiedRep(
            group=self.group,
            satake=self.satake.dual(),
            second=None if self.second is None else self.second.dual(),
            q=self.q,
            numeric=self.numeric,
        )


def dual_rep(rep: UnramifiedRep) -> UnramifiedRep:
    return rep.dual()


# ---------------------------------------------------------------------------
# JSON form
# ---------------------------------------------------------------------------


def _satake_to_obj(sc: SatakeClass, numeric) -> list:
    out = []
    for v in sc.values + (sc.values2 or ()):
        terms = v.lift(v.vars)
        if len(terms) == 1:
            ((exps, coeff),) = terms.items()
            names = [n for n, e in zip(v.vars, exps) if e]
            if coeff == 1 and not names:
                out.append("1")
                continue
            if coeff == 1 and len(names) == 1 and exps[v.vars.index(names[0])] == 1:
                name = names[0]
                if numeric and name in numeric:
                    z = complex(numeric[name])
                    out.append({"re": repr(z.real), "im": repr(z.imag)})
                else:
                    out.append(name)
                continue
        raise DimensionError("only plain symbol or numeric values serialize")
    return out


def rep_to_json(rep: UnramifiedRep, psi: AdditiveCharData = PSI0) -> str:
    g = {
        "family": rep.group.family,
        "size": rep.group.size,
        "base": rep.group.base,
    }
    if rep.group.levi is not None:
        g["levi"] = list(rep.group.levi)
    obj = {
        "group": g,
        "satake": _satake_to_obj(rep.satake, rep.numeric),
        "q": rep.q if isinstance(rep.q, str) else str(rep.q),
        "psi_conductor": psi.conductor_exponent,
    }
    if rep.second is not None:
        obj["second"] = _satake_to_obj(rep.second, rep.numeric)
    return json.dumps(obj)


def _values_from_obj(entries, prefix, numeric_out) -> tuple:
    vals = []
    for i, e in enumerate(entries):
        if isinstance(e, str):
            vals.append(e if e != "1" else 1)
        elif isinstance(e, Mapping) and "re" in e and "im" in e:
            name = f"{prefix}{i + 1}"
            numeric_out[name] = complex(float(e["re"]), float(e["im"]))
            vals.append(name)
        else:
            raise DimensionError(f"satake entry {i} is neither a symbol nor re/im")
    return tuple(vals)


def rep_from_json(payload: str):
    """Parse a rep (and the additive character that rides along with it).

    Returns (UnramifiedRep, AdditiveCharData).
    """
    data = json.loads(payload)
    for key in ("group", "satake"):
        if key not in data:
            raise DimensionError(f"missing field {key!r}")
    g = data["group"]
    for key in ("family", "size"):
        if key not in g:
            raise DimensionError(f"missing field group.{key!r}")
    group = Group(
        family=g["family"],
        size=int(g["size"]),
        base=g.get("base", "inert"),
        levi=tuple(g["levi"]) if g.get("levi") is not None else None,
    )
    q = data.get("q", "q")
    if isinstance(q, str) and q != "q":
        try:
            q = int(q)
        except ValueError:
            raise DimensionError("q must be 'q' or an integer") from None
    numeric: dict = {}
    first = _values_from_obj(data["satake"], "a", numeric)
    second_vals = (
        _values_from_obj(data["second"], "b", numeric) if "second" in data else None
    )
    want_first, want_second = _count_for(group)

    def tag_for(n_vals, vals):
        if group.base == "split" and group.family == "resGL":
            half = len(vals) // 2
            return SatakeClass("split", vals[:half], vals[half:])
        if group.base == "inert" and group.family == "resGL":
            return SatakeClass("inert", vals)
        return SatakeClass("F", vals)

    # first block: on a unitary Levi it is a general-linear datum over the algebra
    if group.family == "U":
        if group.base == "split":
            first_sc = (
                SatakeClass("split", first[: len(first) // 2], first[len(first) // 2 :])
                if group.levi is not None
                else SatakeClass("F", first)
            )
        else:
            first_sc = SatakeClass("inert", first)
        second_sc = None
        if second_vals is not None:
            second_sc = SatakeClass(
                "F" if group.base == "split" else "inert", second_vals
            )
    else:
        first_sc = tag_for(want_first, first)
        second_sc = None if second_vals is None else tag_for(want_second, second_vals)
    psi = AdditiveCharData(int(data.get("psi_conductor", 0)))
    rep = UnramifiedRep(
        group=group,
        satake=first_sc,
        second=second_sc,
        q=q,
        numeric=numeric or None,
    )
    return rep, psi


# ---------------------------------------------------------------------------
# block dispatch and L-factors
# ---------------------------------------------------------------------------


def _bc_class(second: Optional[SatakeClass], k: int, base: str) -> SatakeClass:
    """The general-linear datum the small unitary block transfers to."""
    if base == "inert":
        vals = () if second is None else second.values
        return SatakeClass("inert", bc_parameter_list(vals, k))
    vals = second.values
    return SatakeClass("split", vals, tuple(invert_value(v) for v in vals))


def _unit_like(sc: SatakeClass) -> SatakeClass:
    """A one-entry trivial datum over the same algebra, for pairing."""
    if sc.splitting == "split":
        return SatakeClass("split", (1,), (1,))
    return SatakeClass(sc.splitting, (1,))


def block_model(rep: UnramifiedRep, level) -> AdjointBlock:
    """The monomial-matrix block computing the level's L-factor."""
    group = rep.group
    if level not in group.levels():
        raise UnsupportedConstituent(
            f"no block model for {group.family}{group.size} "
            f"(levi {group.levi}) at level {level!r}"
        )
    if level == "std":
        over = "E" if group.base == "inert" else "F"
        return rs_model(group.size, 1, rep.satake, _unit_like(rep.satake), over=over)
    m, k = group.levi
    if group.family == "resGL":
        over = "E" if group.base == "inert" else "F"
        return rs_model(m, k, rep.satake, rep.second.dual(), over=over)
    if level == 1 and k == 0:
        return asai_model(m, rep.satake, twist=False)
    if level == 1:
        return rs_model(m, k, rep.satake, _bc_class(rep.second, k, group.base), over="E")
    return asai_model(m, rep.satake, twist=(k % 2 == 1))


def l_factor(rep: UnramifiedRep, level) -> RationalFunction:
    """1 / det(I - M t^w) for the level's block; regular at t = 0."""
    det = twisted_det(block_model(rep, level))
    return RationalFunction(LaurentPoly.const(Q(1)), det)


# ---------------------------------------------------------------------------
# gamma and epsilon
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalFactorTriple:
    """gamma, L and epsilon of one level, with the degree data needed for
    conductor bookkeeping: dims = (n, h) where n is the t-degree of the
    L-denominator and h is the central-character exponent, only pinned for
    one-dimensional blocks."""

    gamma: RationalFunction
    l: RationalFunction
    epsilon: RationalFunction
    level: object
    dims: tuple


def _q_data(rep: UnramifiedRep, need_sqrt: bool):
    """(shift poly for t -> 1/(q t), q-power base, exponent scale).

    When `need_sqrt` the triple works in sqrtq with q = sqrtq^2; an integer
    q that is a perfect square keeps its exact root instead.
    """
    if need_sqrt:
        if isinstance(rep.q, int):
            r = math.isqrt(rep.q)
            if r * r == rep.q:
                half = LaurentPoly.const(Q(r))
                shift = LaurentPoly.monomial(Q(1, rep.q), {"t": -1})
                return shift, half
        half = LaurentPoly.var("sqrtq")
        shift = LaurentPoly.monomial(Q(1), {"sqrtq": -2, "t": -1})
        return shift, half
    if isinstance(rep.q, int):
        return LaurentPoly.monomial(Q(1, rep.q), {"t": -1}), None
    return LaurentPoly.monomial(Q(1), {"q": -1, "t": -1}), None


def _block_determinant(det: LaurentPoly, dim: int, degree: int) -> LaurentPoly:
    """det(M) recovered from det(I - M t^w): (-1)^dim times the top
    t-coefficient."""
    top = det.coefficients_in("t").get(degree)
    if top is None:
        raise UnsupportedConstituent("degenerate block: determinant drops degree")
    return top * (Q(-1) ** dim)


def gamma_factor(
    rep: UnramifiedRep, level, psi: AdditiveCharData = PSI0
) -> LocalFactorTriple:
    """The (gamma, L, epsilon) triple of one level.

    gamma = epsilon(s) * L(1-s, dual) / L(s); for conductor 0 the epsilon
    factor is 1.
    """
    block = block_model(rep, level)
    det = twisted_det(block)
    dual_det = twisted_det(block_model(rep.dual(), level))
    n_deg = block.dim * block.weight
    c = psi.conductor_exponent
    shift, half = _q_data(rep, need_sqrt=(c * n_deg) % 2 != 0)
    if c == 0:
        eps = RationalFunction.one()
    else:
        det_m = _block_determinant(det, block.dim, n_deg)
        eps = RationalFunction(det_m) ** c
        if half is not None:
            eps = eps * RationalFunction(half) ** (c * n_deg)
        else:
            qbase = (
                RationalFunction.const(Q(rep.q))
                if isinstance(rep.q, int)
                else RationalFunction.var("q")
            )
            eps = eps * qbase ** ((c * n_deg) // 2)
        eps = eps * RationalFunction.var("t", c * n_deg)
    # L(1-s, dual) / L(s) = det(s) / det_dual(1-s)
    dual_shifted = rf_substitute(RationalFunction(dual_det), {"t": shift})
    gamma = eps * RationalFunction(det) / dual_shifted
    return LocalFactorTriple(
        gamma=gamma,
        l=RationalFunction(LaurentPoly.const(Q(1)), det),
        epsilon=eps,
        level=level,
        dims=(n_deg, 1 if block.dim == 1 else None),
    )


# ---------------------------------------------------------------------------
# rank-one factors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnramifiedCharacter:
    """A character of the multiplicative group pinned by its value at the
    uniformizer; `ramified` data are only ever rejected."""

    value: LaurentPoly
    ramified: bool = False

    def __post_init__(self):
        object.__setattr__(self, "value", value(self.value))


def _char_value(chi) -> LaurentPoly:
    if isinstance(chi, UnramifiedCharacter):
        if chi.ramified:
            raise UnsupportedRamified("rank-one factors cover unramified characters only")
        return chi.value
    return value(chi)


def _tate_rep(chi_value, base: str, q) -> UnramifiedRep:
    tag = "inert" if base == "E" else "F"
    return UnramifiedRep(
        group=Group("resGL", 1, base=tag),
        satake=SatakeClass(tag, (chi_value,)),
        q=q,
    )


def rank_one_gamma(case: str, characters, psi: AdditiveCharData = PSI0, q="q") -> list:
    """Gamma factors of the two rank-one situations.

    "SL2" (over the base field, or over the quadratic extension when the
    single character is flagged base "E" by passing base through `case` as
    "SL2/E") yields one Tate factor. "SU3" yields the pair: the Tate factor
    of the character over the extension (a function of t^2), then the Tate
    factor at doubled argument of the sign-twisted restriction (also in
    t^2, with the inert quadratic character contributing the sign).
    """
    if case not in ("SL2", "SL2/E", "SU3"):
        raise UnsupportedConstituent(f"unknown rank-one case {case!r}")
    chis = [_char_value(c) for c in characters]
    if len(chis) != 1:
        raise DimensionError("rank-one cases carry exactly one character")
    chi = chis[0]
    if case in ("SL2", "SL2/E"):
        rep = _tate_rep(chi, "E" if case.endswith("/E") else "F", q)
        return [gamma_factor(rep, "std", psi).gamma]
    first = gamma_factor(_tate_rep(chi, "E", q), "std", psi).gamma
    second = gamma_factor(_tate_rep(chi * Q(-1), "F", q), "std", psi).gamma
    second = rf_substitute(second, {"t": LaurentPoly.var("t", 2)})
    return [first, second]


# ---------------------------------------------------------------------------
# principal series plumbing
# ---------------------------------------------------------------------------


def principal_series_datum(rep: UnramifiedRep, theta) -> UnramifiedRep:
    """Regroup a full torus datum into the block datum of the subgroup kept
    by a maximal `theta`.

    The torus values sit on the coordinates in order; removing simple root
    k puts the first k+1 of them on a general-linear block and leaves the
    rest on the smaller group.
    """
    group = rep.group
    if group.levi is not None:
        raise UnsupportedConstituent("expected a full torus datum, got a block datum")
    if group.family == "U" and group.base == "split":
        raise UnsupportedConstituent(
            "split-place data factor through plain general-linear checks"
        )
    rs = group.root_system()
    removed = removed_simple_index(rs, theta)
    m = removed + 1

    def piece(lo, hi):
        sc = rep.satake
        if sc.splitting == "split":
            return SatakeClass("split", sc.values[lo:hi], sc.values2[lo:hi])
        return SatakeClass(sc.splitting, sc.values[lo:hi])

    if group.family == "U":
        k = group.size - 2 * m
        second = None if k == 0 else piece(m, group.size // 2)
        sub = Group("U", group.size, group.base, levi=(m, k))
    else:
        k = group.size - m
        second = piece(m, group.size)
        sub = Group("resGL", group.size, group.base, levi=(m, k))
    return UnramifiedRep(sub, piece(0, m), second, q=rep.q, numeric=rep.numeric)


def local_coefficient(rep: UnramifiedRep, theta, psi: AdditiveCharData = PSI0) -> RationalFunction:
    """Product over levels of the level's gamma factor at argument i*s
    (t -> t^i); the normalizing constant of an unramified character is 1."""
    levi = principal_series_datum(rep, theta)
    out = RationalFunction.one()
    for i in levi.group.levels():
        g = gamma_factor(levi, i, psi).gamma
        out = out * rf_substitute(g, {"t": LaurentPoly.var("t", i)})
    return out


def ratio_form_coefficient(rep: UnramifiedRep, theta) -> RationalFunction:
    """The local coefficient in Casselman-Shalika ratio form.

    One closed ratio -Q u (1 - u) / (1 - Q u) per reduced positive root
    outside the kept span, where u is the root's character value times the
    matching power of t and Q is q over the base field or q^2 over the
    quadratic extension; a short root contributes its sign-twisted partner
    as well. Builds the product directly from the root enumeration, with no
    block determinants, no duals and no division, so it is an independent
    route against local_coefficient. Unramified additive character only.
    """
    if rep.group.base == "split":
        raise UnsupportedConstituent(
            "rank-one comparison is pinned for field-algebra data"
        )
    if rep.group.levi is not None:
        raise UnsupportedConstituent("expected a full torus datum, got a block datum")
    rs = rep.group.root_system()
    values = rep.satake.values
    one = LaurentPoly.const(Q(1))

    def qpow(e: int) -> LaurentPoly:
        if isinstance(rep.q, int):
            return LaurentPoly.const(Q(rep.q) ** e)
        return LaurentPoly.monomial(Q(1), {"q": e})

    num = one
    den = one
    kept = [rs.simple_roots()[i] for i in rs.check_subset(theta)]
    for beta in rs.positive_roots():
        if not _is_reduced(rs, beta):
            continue
        if rs.span_membership(kept, beta):
            continue
        ell = level_of(rs, theta, beta)
        coords = [i for i, c in enumerate(beta) if c != 0]
        factors = []
        if len(coords) == 2:
            i, j = coords
            param = values[i] * (invert_value(values[j]) if beta[j] < 0 else values[j])
            if rep.group.family == "U" or rep.group.base == "inert":
                factors.append((2, param * LaurentPoly.var("t", 2 * ell)))
            else:
                factors.append((1, param * LaurentPoly.var("t", ell)))
        elif beta[coords[0]] == 2:
            factors.append((1, values[coords[0]] * LaurentPoly.var("t", ell)))
        else:
            alpha = values[coords[0]]
            tpow = LaurentPoly.var("t", 2 * ell)
            factors.append((2, alpha * tpow))
            factors.append((1, alpha * tpow * Q(-1)))
        for e, u in factors:
            num = num * qpow(e) * u * (one - u) * Q(-1)
            den = den * (one - qpow(e) * u)
    return RationalFunction(num, den)


# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------


def check_functional_equation(rep: UnramifiedRep, level, psi: AdditiveCharData = PSI0):
    """gamma(s) * gamma(1-s, dual) = 1; returns (holds, the product)."""
    trip = gamma_factor(rep, level, psi)
    dual_trip = gamma_factor(rep.dual(), level, psi)
    shift, _ = _q_data(rep, need_sqrt=(psi.conductor_exponent * trip.dims[0]) % 2 != 0)
    prod = trip.gamma * rf_substitute(dual_trip.gamma, {"t": shift})
    return prod.is_one(), prod


def _package_for_root(rs: RootSystem, beta, ell: int, values, base: str, psi, q):
    """Rank-one gamma factors of one reduced root class, as (bucket level,
    factor) pairs; the factor is already in the variable t^bucket."""
    coords = [i for i, c in enumerate(beta) if c != 0]
    tpow = LaurentPoly.var("t", ell)
    if len(coords) == 2:
        i, j = coords
        param = values[i] * (invert_value(values[j]) if beta[j] < 0 else values[j])
        case = "SL2/E" if base in ("inert", "U") else "SL2"
        fac = rank_one_gamma(case, [param], psi, q=q)[0]
        return [(ell, rf_substitute(fac, {"t": tpow}))]
    (i,) = coords
    if beta[i] == 2:
        # reduced doubled root: a rank-one subgroup over the base field
        fac = rank_one_gamma("SL2", [values[i]], psi, q=q)[0]
        return [(ell, rf_substitute(fac, {"t": tpow}))]
    # short root with its double present: the quasi-split rank-one pair
    first, second = rank_one_gamma("SU3", [values[i]], psi, q=q)
    return [
        (ell, rf_substitute(first, {"t": tpow})),
        (2 * ell, rf_substitute(second, {"t": tpow})),
    ]


def _is_reduced(rs: RootSystem, beta) -> bool:
    half = tuple(c / 2 for c in beta)
    return not rs.is_root(half)


def _package_products(rs, roots, theta, values, base, psi, q):
    """Buckets (level -> product of rank-one factors) over reduced roots."""
    buckets: dict = {}
    for beta in roots:
        if not _is_reduced(rs, beta):
            continue  # covered by the short root's second factor
        ell = level_of(rs, theta, beta)
        for lvl, fac in _package_for_root(rs, beta, ell, values, base, psi, q):
            buckets[lvl] = buckets.get(lvl, RationalFunction.one()) * fac
    return buckets


@dataclass(frozen=True)
class MultiplicativityReport:
    matches: bool
    determinant_side: Mapping[int, RationalFunction]
    class_side: Mapping[int, RationalFunction]
    chain_product: RationalFunction
    direct_product: RationalFunction
    mismatched_levels: tuple


def check_multiplicativity(rep: UnramifiedRep, theta, psi: AdditiveCharData = PSI0):
    """Level by level, the block gamma factor at argument i*s must equal the
    product of rank-one factors over the level's root classes; the chain
    decomposition and the plain positive-root enumeration must give the
    same total. Returns (holds, MultiplicativityReport)."""
    if rep.group.base == "split":
        raise UnsupportedConstituent(
            "rank-one comparison is pinned for field-algebra data"
        )
    levi = principal_series_datum(rep, theta)
    rs = rep.group.root_system()
    values = rep.satake.values
    base = rep.group.base if rep.group.family == "resGL" else "U"

    det_side = {}
    for i in levi.group.levels():
        g = gamma_factor(levi, i, psi).gamma
        det_side[i] = rf_substitute(g, {"t": LaurentPoly.var("t", i)})

    lp = level_partition(rs, rs.check_subset(theta), theta0=())
    class_roots = [c.roots[0] for c in lp.classes]
    class_side = _package_products(rs, class_roots, theta, values, base, psi, rep.q)

    # independent enumeration: all positive roots not spanned by theta
    kept = [rs.simple_roots()[i] for i in rs.check_subset(theta)]
    outside = [
        b for b in rs.positive_roots() if not rs.span_membership(kept, b)
    ]
    direct = RationalFunction.one()
    for _, fac in _package_products(rs, outside, theta, values, base, psi, rep.q).items():
        direct = direct * fac

    # chain route: the blocks of the rank-one decomposition consume exactly
    # these classes; multiply their packages in chain order
    wg = WeylGroup(rs)
    w0 = wg.intertwining_element(rs.check_subset(theta))
    chain = RationalFunction.one()
    for block in langlands_decompose(rs, (), w0):
        for cls in block.consumed_classes:
            for _, fac in _package_products(
                rs, cls, theta, values, base, psi, rep.q
            ).items():
                chain = chain * fac

    mismatched = tuple(
        i
        for i in sorted(set(det_side) | set(class_side))
        if det_side.get(i, RationalFunction.one())
        != class_side.get(i, RationalFunction.one())
    )
    total = RationalFunction.one()
    for g in det_side.values():
        total = total * g
    ok = not mismatched and total == direct and total == chain
    return ok, MultiplicativityReport(
        matches=ok,
        determinant_side=det_side,
        class_side=class_side,
        chain_product=chain,
        direct_product=direct,
        mismatched_levels=mismatched,
    )


@dataclass(frozen=True)
class TemperednessReport:
    tempered: bool
    moduli: tuple
    radii: tuple
    worst_deviation: float
    level: object


def check_temperedness(rep: UnramifiedRep, level, tol: float = 1e-9) -> TemperednessReport:
    """All poles of the L-factor must sit on the unit circle in t.

    Needs numeric Satake data; the report lists every root modulus of the
    L-denominator together with its certified radius.
    """
    if rep.numeric is None:
        raise RequiresNumeric("temperedness needs numeric Satake values")
    den = twisted_det(block_model(rep, level))
    assign = {
        name: BigComplex(mpmath.mpc(z), 64) for name, z in rep.numeric.items()
    }
    missing = [v for v in den.vars if v != "t" and v not in assign]
    if missing:
        raise RequiresNumeric(f"no numeric value for {missing[0]!r}")
    roots = poly_roots_numeric(den, prec=128, assign=assign, var="t")
    moduli = tuple(float(r.value.modulus()) for r in roots)
    radii = tuple(r.radius for r in roots)
    worst = max((abs(m - 1.0) for m in moduli), default=0.0)
    return TemperednessReport(
        tempered=worst <= tol,
        moduli=moduli,
        radii=radii,
        worst_deviation=worst,
        level=level,
    )
