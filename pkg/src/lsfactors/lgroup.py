"""Matrix models for the dual-side constituents the local factors are built
from.

Every block is a monomial matrix over exact Laurent polynomials in the
Satake symbols: one application of the Frobenius step permutes the basis
and scales each vector. Two independent routes compute the reversed
characteristic polynomial det(I - M t^w):

* `twisted_det` runs a generic sparse determinant expansion and never looks
  at the permutation structure;
* `orbit_product` walks the Frobenius orbits and multiplies the collected
  scalars.

The pair is kept separate on purpose; their agreement is one of the checks
the test suite pins down.

Satake values are Laurent monomials (symbols, their inverses, exact
rationals), so inverses and products stay inside the polynomial ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .exactalg import LaurentPoly

Q = Fraction


class DimensionError(ValueError):
    """Parameter counts do not match the requested block shape."""


class UnsupportedConstituent(ValueError):
    """The requested block family is outside the implemented models."""


def value(x) -> LaurentPoly:
    """Coerce a Satake value: a symbol name, an exact rational, or a
    Laurent polynomial already."""
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, str):
        return LaurentPoly.var(x)
    if isinstance(x, (int, Fraction)):
        if x == 0:
            raise DimensionError("Satake values must be nonzero")
        return LaurentPoly.const(Q(x))
    raise DimensionError(f"cannot use {x!r} as a Satake value")


def invert_value(p: LaurentPoly) -> LaurentPoly:
    """Inverse of a Laurent monomial; duals and base-change lifts live on
    these."""
    p = value(p)
    terms = p.lift(p.vars)
    if len(terms) != 1:
        raise UnsupportedConstituent(
            f"value {p!r} is not a monomial, its inverse leaves the ring"
        )
    (exps, coeff), = terms.items()
    return LaurentPoly(p.vars, {tuple(-e for e in exps): Q(1) / coeff})


def symbols(prefix: str, n: int) -> tuple:
    """Fresh symbolic values prefix1 .. prefixn."""
    return tuple(LaurentPoly.var(f"{prefix}{i + 1}") for i in range(n))


@dataclass(frozen=True)
class SatakeClass:
    """Unramified parameter data: the diagonal of the Frobenius class.

    `splitting` records the degree-2 etale algebra the datum lives over:
    "inert" for a field extension, "split" for the product algebra (two
    diagonal lists, one per factor), "F" for no extension at all.
    `quadratic_twist` marks a datum twisted by the quadratic character of
    the extension."""

    splitting: str
    values: tuple
    values2: tuple | None = None
    quadratic_twist: bool = False

    def __post_init__(self):
        if self.splitting not in ("inert", "split", "F"):
            raise DimensionError(f"unknown splitting tag {self.splitting!r}")
        object.__setattr__(self, "values", tuple(value(v) for v in self.values))
        if self.splitting == "split":
            if self.values2 is None:
                raise DimensionError("split data carry two diagonal lists")
            object.__setattr__(
                self, "values2", tuple(value(v) for v in self.values2)
            )
            if len(self.values2) != len(self.values):
                raise DimensionError("split diagonal lists differ in length")
        elif self.values2 is not None:
            raise DimensionError("a second diagonal list needs the split tag")
        for v in self.values + (self.values2 or ()):
            if v.is_zero():
                raise DimensionError("Satake values must be nonzero")

    @property
    def size(self) -> int:
        return len(self.values)

    def dual(self) -> "SatakeClass":
        """Invert every diagonal value (the contragredient datum)."""
        return SatakeClass(
            splitting=self.splitting,
            values=tuple(invert_value(v) for v in self.values),
            values2=None
            if self.values2 is None
            else tuple(invert_value(v) for v in self.values2),
            quadratic_twist=self.quadratic_twist,
        )


@dataclass(frozen=True)
class AdjointBlock:
    """One constituent as an explicit monomial matrix.

    `matrix[i][j]` is the coefficient of basis vector i in the image of
    basis vector j; `frobenius[j]` is the index the step sends j to, so the
    only nonzero entry of column j sits in that row. `weight` is the power
    of t one step carries: 1 for blocks over the base field, 2 for blocks
    over the inert quadratic extension."""

    level: int
    basis_labels: Tuple[str, ...]
    matrix: tuple
    weight: int
    frobenius: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    def scalar_at(self, j: int) -> LaurentPoly:
        return self.matrix[self.frobenius[j]][j]


def _monomial_block(labels, perm, scalars, weight, level=1) -> AdjointBlock:
    d = len(labels)
    zero = LaurentPoly.zero()
    rows = [[zero] * d for _ in range(d)]
    for j in range(d):
        rows[perm[j]][j] = scalars[j]
    return AdjointBlock(
        level=level,
        basis_labels=tuple(labels),
        matrix=tuple(tuple(r) for r in rows),
        weight=weight,
        frobenius=tuple(perm),
    )


def asai_model(n: int, satake: SatakeClass, twist: bool) -> AdjointBlock:
    """The twisted-tensor block on the n^2 vectors e_i (x) e_j.

    One Frobenius step sends e_i (x) e_j to eps * a_j * (e_j (x) e_i), with
    eps = -1 exactly for the quadratic-twisted variant. Over the split
    algebra the quadratic character is trivial and the block degenerates to
    the plain pairwise product of the two diagonal lists.
    """
    if satake.size != n:
        raise DimensionError(f"expected {n} values, got {satake.size}")
    if satake.splitting == "split":
        return rs_model(n, n, _plain(satake.values), _plain(satake.values2))
    if satake.splitting != "inert":
        raise UnsupportedConstituent(
            "the twisted-tensor block needs a quadratic extension datum"
        )
    a = satake.values
    eps = Q(-1) if twist else Q(1)
    labels = [f"e{i + 1}*e{j + 1}" for i in range(n) for j in range(n)]
    idx = lambda i, j: i * n + j
    perm = [0] * (n * n)
    scalars = [None] * (n * n)
    for i in range(n):
        for j in range(n):
            perm[idx(i, j)] = idx(j, i)
            scalars[idx(i, j)] = a[j] * eps
    return _monomial_block(labels, perm, scalars, weight=1)


def _plain(values) -> SatakeClass:
    return SatakeClass(splitting="F", values=values)


def rs_model(
    m: int, n: int, satake_pi: SatakeClass, satake_tau: SatakeClass, over: str = "F"
) -> AdjointBlock:
    """The pairwise-product block on the m*n vectors e_i (x) f_j.

    Over the base field (or over the inert extension, where one step is
    worth t^2) the block is diagonal with eigenvalues a_i * b_j. A pair of
    split data yields the block-diagonal sum of the two factor blocks, each
    of weight 1, with no permutation anywhere.
    """
    if satake_pi.size != m or satake_tau.size != n:
        raise DimensionError(
            f"expected {m} and {n} values, got {satake_pi.size} and {satake_tau.size}"
        )
    if satake_pi.splitting == "split" or satake_tau.splitting == "split":
        if satake_pi.splitting != satake_tau.splitting:
            raise UnsupportedConstituent(
                "both data must live over the same split algebra"
            )
        labels, scalars = [], []
        for tag, pis, taus in (
            ("1", satake_pi.values, satake_tau.values),
            ("2", satake_pi.values2, satake_tau.values2),
        ):
            for i in range(m):
                for j in range(n):
                    labels.append(f"{tag}:e{i + 1}*f{j + 1}")
                    scalars.append(pis[i] * taus[j])
        return _monomial_block(labels, list(range(2 * m * n)), scalars, weight=1)
    if over not in ("F", "E"):
        raise UnsupportedConstituent(f"unknown base tag {over!r}")
    if over == "E" and not (
        satake_pi.splitting == "inert" and satake_tau.splitting == "inert"
    ):
        raise UnsupportedConstituent("weight-2 blocks need inert data on both sides")
    weight = 2 if over == "E" else 1
    labels, scalars = [], []
    for i in range(m):
        for j in range(n):
            labels.append(f"e{i + 1}*f{j + 1}")
            scalars.append(satake_pi.values[i] * satake_tau.values[j])
    return _monomial_block(labels, list(range(m * n)), scalars, weight=weight)


def twisted_det(block: AdjointBlock) -> LaurentPoly:
    """det(I - M t^weight) by sparse expansion along rows.

    Memoized on the set of surviving columns; entries read from the full
    matrix, not from the permutation, so this route works for any matrix
    put into the block."""
    d = block.dim
    t_step = LaurentPoly.monomial(Q(-1), {"t": block.weight})
    one = LaurentPoly.const(Q(1))
    # rows of I - M t^w, kept sparse as (column -> entry)
    rows = []
    for i in range(d):
        row = {}
        for j in range(d):
            entry = block.matrix[i][j] * t_step
            if i == j:
                entry = entry + one
            if not entry.is_zero():
                row[j] = entry
        rows.append(row)
    memo: dict = {}

    def expand(cols: frozenset) -> LaurentPoly:
        if not cols:
            return one
        got = memo.get(cols)
        if got is not None:
            return got
        r = d - len(cols)  # rows are consumed in order
        ordered = sorted(cols)
        acc = LaurentPoly.zero()
        for k, c in enumerate(ordered):
            entry = rows[r].get(c)
            if entry is None:
                continue
            sub = expand(cols - {c})
            term = entry * sub
            acc = acc + (term if k % 2 == 0 else term * Q(-1))
        memo[cols] = acc
        return acc

    return expand(frozenset(range(d)))


def orbit_product(block: AdjointBlock) -> LaurentPoly:
    """Product over Frobenius orbits of 1 - (scalars along the orbit) t^(len*w).

    Independent of the determinant expansion; equality of the two is a
    statement about the block, not a shared code path."""
    d = block.dim
    seen = [False] * d
    out = LaurentPoly.const(Q(1))
    for start in range(d):
        if seen[start]:
            continue
        scal = LaurentPoly.const(Q(1))
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            scal = scal * block.scalar_at(j)
            length += 1
            j = block.frobenius[j]
        if j != start:
            raise UnsupportedConstituent("frobenius data is not a permutation")
        factor = LaurentPoly.const(Q(1)) + scal * LaurentPoly.monomial(
            Q(-1), {"t": length * block.weight}
        )
        out = out * factor
    return out


def bc_parameter_list(values, parity: int) -> tuple:
    """Diagonal of the base-change lift of a unitary-group datum: the values,
    a middle 1 when the group has odd size, then the inverted values in
    reverse order. `parity` is the size N of the group; len(values) must be
    N // 2."""
    values = tuple(value(v) for v in values)
    if parity < 1 or len(values) != parity // 2:
        raise DimensionError(
            f"a size-{parity} unitary datum carries {parity // 2} values, "
            f"got {len(values)}"
        )
    middle = (LaurentPoly.const(Q(1)),) if parity % 2 == 1 else ()
    return values + middle + tuple(invert_value(v) for v in reversed(values))
