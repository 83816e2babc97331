"""Relative root data for the three families the package works with.

Coordinates are the usual self-dual e-basis, with every vector an exact tuple
of Fractions:

* family "A", rank n-1 in n coordinates: roots e_i - e_j. This is the
  relative system of GL(n) over the quadratic extension viewed as an F-group,
  each root restricted from a pair of absolute roots (multiplicity 2).
* family "C", rank n: roots e_i +- e_j and 2 e_i, the relative system of an
  even quasi-split unitary group U(2n).
* family "BC", rank n: roots e_i +- e_j, e_i and 2 e_i, the relative system
  of an odd quasi-split unitary group U(2n+1). The short roots e_i are
  multipliable; the simple system consists of indivisible roots only.

`multiplicity` reports the number of absolute roots restricting to a given
relative root; those counts feed the dimension bookkeeping of the dual-group
constituents downstream.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Tuple

Q = Fraction
Vector = Tuple[Q, ...]


class InvalidRank(ValueError):
    """Raised for a rank or group size outside the supported range."""


class InvalidSubset(ValueError):
    """Raised when a subset of simple-root indices is malformed."""


def vec(*xs) -> Vector:
    return tuple(Q(x) for x in xs)


def dot(x: Sequence[Q], y: Sequence[Q]) -> Q:
    return sum((a * b for a, b in zip(x, y)), Q(0))


def vadd(x: Sequence[Q], y: Sequence[Q]) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Sequence[Q], y: Sequence[Q]) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x: Sequence[Q]) -> Vector:
    c = Q(c)
    return tuple(c * a for a in x)


def is_zero_vec(x: Sequence[Q]) -> bool:
    return all(a == 0 for a in x)


def basis_vector(i: int, dim: int) -> Vector:
    return tuple(Q(1) if j == i else Q(0) for j in range(dim))


class RootSystem:
    """One of the families A / C / BC at a given rank, in e-coordinates."""

    def __init__(self, family: str, rank: int):
        if family not in ("A", "C", "BC"):
            raise InvalidRank(f"unknown family {family!r}")
        if rank < 0:
            raise InvalidRank(f"rank must be nonnegative, got {rank}")
        self.family = family
        self.rank = rank
        self.dim = rank + 1 if family == "A" else rank

    # -- constructors tied to the groups --------------------------------------

    @staticmethod
    def general_linear(n: int) -> "RootSystem":
        """Relative system of GL(n) over the quadratic extension (family A)."""
        if n < 1:
            raise InvalidRank(f"general linear size must be >= 1, got {n}")
        return RootSystem("A", n - 1)

    @staticmethod
    def unitary(n: int) -> "RootSystem":
        """Relative system of the quasi-split unitary group U(n)."""
        if n < 1:
            raise InvalidRank(f"unitary size must be >= 1, got {n}")
        if n % 2 == 0:
            return RootSystem("C", n // 2)
        return RootSystem("BC", (n - 1) // 2)

    # -- roots ------------------------------------------------------------------

    def positive_roots(self, reduced_only: bool = False) -> tuple:
        """All positive roots; for BC both e_i and 2 e_i appear unless
        reduced_only is set, which keeps only the indivisible ones."""
        n = self.dim
        out = []
        if self.family == "A":
            for i in range(n):
                for j in range(i + 1, n):
                    out.append(vsub(basis_vector(i, n), basis_vector(j, n)))
            return tuple(out)
        for i in range(n):
            for j in range(i + 1, n):
                ei, ej = basis_vector(i, n), basis_vector(j, n)
                out.append(vsub(ei, ej))
                out.append(vadd(ei, ej))
        if self.family == "BC":
            for i in range(n):
                out.append(basis_vector(i, n))
        for i in range(n):
            if self.family == "C" or not reduced_only:
                out.append(vscale(2, basis_vector(i, n)))
        return tuple(out)

    def all_roots(self, reduced_only: bool = False) -> tuple:
        pos = self.positive_roots(reduced_only)
        return pos + tuple(vscale(-1, b) for b in pos)

    def simple_roots(self) -> tuple:
        n = self.dim
        if self.rank == 0:
            return ()
        out = [vsub(basis_vector(i, n), basis_vector(i + 1, n)) for i in range(n - 1)]
        if self.family == "C":
            out.append(vscale(2, basis_vector(n - 1, n)))
        elif self.family == "BC":
            out.append(basis_vector(n - 1, n))
        return tuple(out)

    def is_root(self, v: Sequence[Q]) -> bool:
        v = tuple(Q(x) for x in v)
        return v in set(self.all_roots())

    def is_positive(self, v: Sequence[Q]) -> bool:
        """Positivity in the fixed order: first nonzero coordinate positive."""
        for x in v:
            if x != 0:
                return x > 0
        return False

    def multiplicity(self, beta: Sequence[Q]) -> int:
        """Number of absolute roots restricting to the relative root beta."""
        beta = tuple(Q(x) for x in beta)
        if not self.is_root(beta):
            raise InvalidSubset(f"{beta} is not a root of {self.family}{self.rank}")
        support = [abs(x) for x in beta if x != 0]
        if self.family == "A":
            return 2
        if len(support) == 2:
            return 2  # e_i +- e_j
        if support == [Q(1)]:
            return 2  # short multipliable e_i (BC only)
        return 1  # long 2 e_i

    # -- pairings and reflections --------------------------------------------------

    def coroot(self, beta: Sequence[Q]) -> Vector:
        beta = tuple(Q(x) for x in beta)
        norm = dot(beta, beta)
        if norm == 0:
            raise InvalidSubset("zero vector has no coroot")
        return vscale(Q(2) / norm, beta)

    def pair(self, x: Sequence[Q], beta: Sequence[Q]) -> Q:
        """<x, beta-coroot>."""
        return dot(x, self.coroot(beta))

    def reflection(self, beta: Sequence[Q]) -> tuple:
        """Matrix of the reflection through beta, rows of exact Fractions."""
        n = self.dim
        cor = self.coroot(beta)
        rows = []
        for i in range(n):
            e = basis_vector(i, n)
            img = vsub(e, vscale(dot(e, cor), tuple(Q(x) for x in beta)))
            rows.append(img)
        # rows are images of basis vectors: transpose to act by M @ v
        return tuple(tuple(rows[j][i] for j in range(n)) for i in range(n))

    # -- simple-basis bookkeeping ----------------------------------------------------

    def check_subset(self, theta: Iterable[int]) -> tuple:
        theta = tuple(sorted(set(int(i) for i in theta)))
        if any(i < 0 or i >= self.rank for i in theta):
            raise InvalidSubset(
                f"simple-root indices must lie in [0, {self.rank}), got {theta}"
            )
        return theta

    def simple_coefficients(self, beta: Sequence[Q]) -> tuple:
        """Coefficients of beta in the simple basis (exact; raises if beta is
        outside the span)."""
        simples = self.simple_roots()
        if not simples:
            raise InvalidSubset("rank zero system has no simple basis")
        return solve_in_span(simples, tuple(Q(x) for x in beta))

    def span_membership(self, vectors: Sequence[Vector], target: Sequence[Q]) -> bool:
        try:
            solve_in_span(tuple(vectors), tuple(Q(x) for x in target))
            return True
        except InvalidSubset:
            return False

    def half_sum_radical(self, theta: Iterable[int]) -> Vector:
        """Half the sum of the positive roots outside the rational span of the
        theta-simples, each relative root counted once."""
        theta = self.check_subset(theta)
        simples = self.simple_roots()
        span = tuple(simples[i] for i in theta)
        total = tuple(Q(0) for _ in range(self.dim))
        for beta in self.positive_roots():
            if span and self.span_membership(span, beta):
                continue
            total = vadd(total, beta)
        return vscale(Q(1, 2), total)


def solve_in_span(basis: Sequence[Vector], target: Vector) -> tuple:
    """Exact coefficients writing target in the given (independent) vectors;
    raises InvalidSubset when target is outside their span."""
    if not basis:
        if is_zero_vec(target):
            return ()
        raise InvalidSubset("target outside the span of an empty basis")
    dim = len(target)
    k = len(basis)
    # columns are the basis vectors; eliminate on the augmented matrix
    rows = [[basis[j][i] for j in range(k)] + [target[i]] for i in range(dim)]
    pivot_row = 0
    pivots = []
    for col in range(k):
        sel = None
        for r in range(pivot_row, dim):
            if rows[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        pv = rows[pivot_row][col]
        rows[pivot_row] = [x / pv for x in rows[pivot_row]]
        for r in range(dim):
            if r != pivot_row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    # consistency: remaining rows must have zero right-hand side
    for r in range(pivot_row, dim):
        if rows[r][k] != 0:
            raise InvalidSubset("target outside the span")
    coeffs = [Q(0)] * k
    for r, col in enumerate(pivots):
        coeffs[col] = rows[r][k]
    # independence check: no free columns may be needed, and the residual must vanish
    residual = list(target)
    for j in range(k):
        for i in range(dim):
            residual[i] -= coeffs[j] * basis[j][i]
    if any(x != 0 for x in residual):
        raise InvalidSubset("target outside the span")
    return tuple(coeffs)


def apply_matrix(m: Sequence[Sequence[Q]], v: Sequence[Q]) -> Vector:
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b) -> tuple:
    n = len(a)
    kdim = len(b)
    mdim = len(b[0]) if kdim else 0
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(kdim)), Q(0)) for j in range(mdim))
        for i in range(n)
    )


def identity_matrix(n: int) -> tuple:
    return tuple(tuple(Q(1) if i == j else Q(0) for j in range(n)) for i in range(n))
