"""Toy global layer over the rational function field.

Places of F_q(T) are the monic irreducible polynomials plus the degree-1
place at infinity. The quadratic extension in play is the constant-field
extension F_{q^2}(T), where a place splits exactly when its degree is even.
Everything global here is a truncated Euler product: exact integer
coefficients for the zeta function (checked against the closed form
1/((1-t)(1-qt))), and exact or complex coefficients for products of local
factors attached to a synthetic family of unramified data. No automorphy is
claimed anywhere; the datum is a stand-in that lets the local machinery be
aggregated and sanity-checked at scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Mapping, Tuple

from .basechange import WrongPlaceKind
from .exactalg import LaurentPoly
from .lgroup import DimensionError, twisted_det
from .localfactors import UnramifiedRep, block_model, check_temperedness


class InvalidFieldSize(ValueError):
    """The requested constant field size is not a prime power."""


class TableTooShallow(ValueError):
    """The place table does not reach the requested degree."""


class IncompleteDatum(ValueError):
    """A place below the cutoff carries no local data."""


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = None
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            p = d
            break
    if p is None:
        return True
    while n % p == 0:
        n //= p
    return n == 1


def _moebius(n: int) -> int:
    out = 1
    for p in range(2, n + 1):
        if p * p > n:
            break
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
    if n > 1:
        out = -out
    return out


def monic_irreducible_count(q: int, d: int) -> int:
    """Number of monic irreducibles of degree d over F_q: the necklace count
    (1/d) * sum over e | d of mu(e) q^(d/e)."""
    total = sum(_moebius(e) * q ** (d // e) for e in range(1, d + 1) if d % e == 0)
    if total % d:
        raise InvalidFieldSize(f"necklace sum not divisible by {d}; q={q} is bad")
    return total // d


@dataclass(frozen=True)
class PlaceTable:
    """Counts of the places of the projective line over F_q, by degree.

    `counts[d-1]` is the number of degree-d places; the degree-1 entry
    includes the place at infinity. `splitting[d-1]` tags how a degree-d
    place behaves in the constant-field quadratic extension: the residue
    field absorbs F_{q^2} exactly when d is even, so even degrees split and
    odd degrees stay inert."""

    q: int
    max_degree: int
    counts: Tuple[int, ...]
    splitting: Tuple[str, ...]

    def __post_init__(self):
        if len(self.counts) != self.max_degree or len(self.splitting) != self.max_degree:
            raise DimensionError("per-degree data must reach max_degree exactly")
        if any(c < 0 for c in self.counts):
            raise DimensionError("place counts cannot be negative")

    def count(self, degree: int) -> int:
        if not 1 <= degree <= self.max_degree:
            raise TableTooShallow(
                f"table reaches degree {self.max_degree}, asked for {degree}"
            )
        return self.counts[degree - 1]

    def kind(self, degree: int) -> str:
        if not 1 <= degree <= self.max_degree:
            raise TableTooShallow(
                f"table reaches degree {self.max_degree}, asked for {degree}"
            )
        return self.splitting[degree - 1]

    def places(self, upto: int):
        """(degree, index, kind) for every place of degree <= upto."""
        if upto > self.max_degree:
            raise TableTooShallow(
                f"table reaches degree {self.max_degree}, asked for {upto}"
            )
        for d in range(1, upto + 1):
            for i in range(self.counts[d - 1]):
                yield d, i, self.splitting[d - 1]


def build_place_table(q: int, max_degree: int) -> PlaceTable:
    """Tabulate places of P^1 over F_q through the given degree."""
    if not _is_prime_power(q):
        raise InvalidFieldSize(f"{q} is not a prime power")
    if max_degree < 0:
        raise DimensionError("max_degree cannot be negative")
    counts = []
    for d in range(1, max_degree + 1):
        n = monic_irreducible_count(q, d)
        if d == 1:
            n += 1  # the place at infinity
        counts.append(n)
    # degree-weighted count stays near q^d: every monic irreducible of
    # degree d is pinned by its root set inside the union of F_{q^e}, e <= d
    total = sum(d * c for d, c in zip(range(1, max_degree + 1), counts))
    if max_degree >= 1 and total > 2 * q**max_degree + 1:
        raise InvalidFieldSize("place counts exceed the point-count bound")
    splitting = tuple("split" if d % 2 == 0 else "inert" for d in range(1, max_degree + 1))
    return PlaceTable(q=q, max_degree=max_degree, counts=tuple(counts), splitting=splitting)


def partial_zeta(table: PlaceTable, depth: int) -> Tuple[int, ...]:
    """Coefficients of prod over places of degree <= depth of
    (1 - t^deg)^(-1), truncated at t^depth.

    Through that degree the truncation agrees with the closed form
    1/((1-t)(1-qt)); places of higher degree only touch higher coefficients.
    """
    if depth < 0:
        raise DimensionError("depth cannot be negative")
    if depth > table.max_degree:
        raise TableTooShallow(
            f"table reaches degree {table.max_degree}, asked for {depth}"
        )
    coeffs = [0] * (depth + 1)
    coeffs[0] = 1
    for d in range(1, depth + 1):
        c = table.counts[d - 1]
        if c == 0:
            continue
        # (1 - t^d)^(-c) = sum_k binom(c+k-1, k) t^(dk)
        expanded = [
            math.comb(c + k - 1, k) for k in range(depth // d + 1)
        ]
        out = [0] * (depth + 1)
        for i, a in enumerate(coeffs):
            if a == 0:
                continue
            for k, b in enumerate(expanded):
                j = i + d * k
                if j > depth:
                    break
                out[j] += a * b
        coeffs = out
    return tuple(coeffs)


# ---------------------------------------------------------------------------
# synthetic global data and partial L-products
# ---------------------------------------------------------------------------


def _eval_poly(p: LaurentPoly, numeric: Mapping[str, complex], exact: bool):
    """Evaluate an exact Laurent polynomial, as a Fraction when it is
    constant arithmetic all the way down, as a complex number otherwise."""
    total = Q(0) if exact else complex(0)
    for exps, coeff in p.lift(p.vars).items():
        term = coeff if exact else complex(coeff)
        for name, e in zip(p.vars, exps):
            if e == 0:
                continue
            z = numeric.get(name)
            if z is None:
                raise DimensionError(f"no numeric value for symbol {name!r}")
            term = term * complex(z) ** e
        total = total + term
    return total


def _value_modulus(v: LaurentPoly, numeric: Mapping[str, complex]) -> float:
    if v.vars:
        return abs(_eval_poly(v, numeric, exact=False))
    return abs(float(v.constant_value()))


@dataclass(frozen=True)
class ToyGlobalDatum:
    """A synthetic family: one unramified datum per place through a degree
    cutoff, keyed by (degree, index).

    Parameters must be numeric (or exact constants) of modulus within
    `tolerance` of 1; the negative controls relax the tolerance at
    construction and let the product report do the flagging."""

    table: PlaceTable
    cutoff: int
    assignments: Mapping[Tuple[int, int], UnramifiedRep]
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.cutoff > self.table.max_degree:
            raise TableTooShallow(
                f"cutoff {self.cutoff} exceeds table depth {self.table.max_degree}"
            )
        for key, rep in self.assignments.items():
            numeric = rep.numeric or {}
            for sc in (rep.satake, rep.second):
                if sc is None:
                    continue
                for v in sc.values + (sc.values2 or ()):
                    dev = abs(_value_modulus(v, numeric) - 1.0)
                    if dev > self.tolerance:
                        raise DimensionError(
                            f"place {key}: parameter modulus off by {dev:g}, "
                            f"beyond the declared tolerance"
                        )


@dataclass(frozen=True)
class PartialProductReport:
    """Singularity summary of a truncated product of local factors."""

    depth: int
    tempered: bool
    flagged_places: Tuple[Tuple[int, int], ...]
    worst_deviation: float
    closest_pole_radius: float


def _orbit_root_moduli(block) -> list:
    """Moduli of the roots of det(I - M t^w) read off the Frobenius orbits;
    exact data only (each orbit scalar must be a constant)."""
    moduli = []
    seen = [False] * block.dim
    for start in range(block.dim):
        if seen[start]:
            continue
        scal = Q(1)
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            v = block.scalar_at(j)
            if v.vars:
                raise DimensionError("exact route needs constant parameters")
            scal = scal * v.constant_value()
            length += 1
            j = block.frobenius[j]
        span = length * block.weight
        moduli.extend([float(abs(scal)) ** (-1.0 / span)] * span)
    return moduli


def partial_l_product(
    datum: ToyGlobalDatum, selector="std", depth: int | None = None, tol: float = 1e-9
):
    """Truncated product over places of local L-factors, with a report on
    the closest singularities.

    `selector` names the constituent whose factor is taken at each place: a
    level (every toy datum is a plain general-linear one, so "std" fits), or
    a callable (place, rep) -> level. Each place substitutes t -> t^degree
    into its local factor. Returns (coefficients, PartialProductReport).
    """
    depth = datum.cutoff if depth is None else depth
    if depth > datum.table.max_degree:
        raise TableTooShallow(
            f"table reaches degree {datum.table.max_degree}, asked for {depth}"
        )
    if depth > datum.cutoff:
        raise IncompleteDatum(
            f"datum assigns places through degree {datum.cutoff}, asked for {depth}"
        )
    places = list(datum.table.places(depth))
    for place in places:
        if (place[0], place[1]) not in datum.assignments:
            raise IncompleteDatum(f"no local data at place {(place[0], place[1])}")

    exact = all(
        datum.assignments[(d, i)].numeric is None for d, i, _ in places
    )
    coeffs = [Q(1) if exact else complex(1)] + [Q(0) if exact else complex(0)] * depth
    worst = 0.0
    closest = float("inf")
    flagged = []
    for d, i, kind in places:
        rep = datum.assignments[(d, i)]
        if rep.group.base in ("inert", "split") and rep.group.base != kind:
            raise WrongPlaceKind(
                f"place {(d, i)} is {kind} but carries a {rep.group.base} datum"
            )
        level = selector((d, i, kind), rep) if callable(selector) else selector
        block = block_model(rep, level)
        det = twisted_det(block)

        # local root moduli, exact or certified numeric
        if rep.numeric is None:
            moduli = _orbit_root_moduli(block)
        else:
            moduli = list(check_temperedness(rep, level, tol).moduli)
        dev = max((abs(m - 1.0) for m in moduli), default=0.0)
        worst = max(worst, dev)
        if dev > tol:
            flagged.append((d, i))
        for m in moduli:
            closest = min(closest, m ** (1.0 / d))

        # multiply in 1/det(t^d), truncated
        local = {}
        for e, cpoly in det.coefficients_in("t").items():
            local[e] = _eval_poly(cpoly, rep.numeric or {}, exact)
        top = max(local)
        inv = [Q(1) if exact else complex(1)]
        for k in range(1, depth // d + 1):
            acc = Q(0) if exact else complex(0)
            for e in range(1, min(k, top) + 1):
                c = local.get(e)
                if c is not None:
                    acc = acc - c * inv[k - e]
            inv.append(acc)
        out = [Q(0) if exact else complex(0)] * (depth + 1)
        for pos, a in enumerate(coeffs):
            if a == 0:
                continue
            for k, b in enumerate(inv):
                j = pos + d * k
                if j > depth:
                    break
                out[j] += a * b
        coeffs = out

    report = PartialProductReport(
        depth=depth,
        tempered=not flagged,
        flagged_places=tuple(flagged),
        worst_deviation=worst,
        closest_pole_radius=closest if closest != float("inf") else 1.0,
    )
    return tuple(coeffs), report
