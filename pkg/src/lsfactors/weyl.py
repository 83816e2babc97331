"""Weyl groups as exact signed-permutation matrices, plus the combinatorics
the local-factor identities run on:

* longest elements of parabolic subgroups, computed greedily,
* the block decomposition of the intertwining element into rank-one steps,
* the partition of the radical roots into level classes for a maximal
  parabolic, with the dual-side dimension bookkeeping,
* the subgroup generated by a parabolic subset together with all radical
  roots of level at least i (the stage the inductive arguments pass through).

Simple roots are indexed 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from .rootdata import (
    InvalidSubset,
    RootSystem,
    Vector,
    apply_matrix,
    dot,
    identity_matrix,
    is_zero_vec,
    mat_mul,
    solve_in_span,
    vadd,
    vscale,
    vsub,
)

Q = Fraction
Matrix = Tuple[Tuple[Q, ...], ...]


class NotAssociate(ValueError):
    """Raised when a Weyl element does not carry the parabolic subset to a
    subset of the simple roots, so the block decomposition cannot proceed."""


class NotMaximalLevi(ValueError):
    """Raised when an operation defined for maximal parabolic subsets is
    applied to a subset that is not maximal."""


class InvalidLevel(ValueError):
    """Raised when a requested level does not occur for the given datum."""


class WeylGroup:
    """The Weyl group of a root system, elements as exact matrices."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.dim = rs.dim
        self.simples = rs.simple_roots()

    def identity(self) -> Matrix:
        return identity_matrix(self.dim)

    def simple_reflection(self, i: int) -> Matrix:
        if i < 0 or i >= len(self.simples):
            raise InvalidSubset(f"no simple root with index {i}")
        return self.rs.reflection(self.simples[i])

    def act(self, w: Matrix, v: Sequence[Q]) -> Vector:
        return apply_matrix(w, v)

    def mul(self, *ws: Matrix) -> Matrix:
        out = self.identity()
        for w in ws:
            out = mat_mul(out, w)
        return out

    def inverse(self, w: Matrix) -> Matrix:
        # orthogonal integer matrices: inverse is the transpose
        return tuple(tuple(w[j][i] for j in range(self.dim)) for i in range(self.dim))

    def inversion_roots(self, w: Matrix, reduced_only: bool = True) -> tuple:
        """Positive roots sent negative by w."""
        return tuple(
            b
            for b in self.rs.positive_roots(reduced_only=reduced_only)
            if not self.rs.is_positive(self.act(w, b)) and not is_zero_vec(self.act(w, b))
        )

    def length(self, w: Matrix) -> int:
        return len(self.inversion_roots(w, reduced_only=True))

    def longest_element(self, theta: Iterable[int] | None = None) -> Matrix:
        """Longest element of the parabolic subgroup generated by theta
        (whole group when theta is None), by greedy length increase."""
        theta = (
            tuple(range(len(self.simples)))
            if theta is None
            else self.rs.check_subset(theta)
        )
        w = self.identity()
        while True:
            progressed = False
            for i in theta:
                if self.rs.is_positive(self.act(w, self.simples[i])):
                    w = mat_mul(w, self.simple_reflection(i))
                    progressed = True
                    break
            if not progressed:
                return w

    def coset_longest(self, omega: Iterable[int], theta: Iterable[int]) -> Matrix:
        """w_{l,omega} w_{l,theta}: the longest representative of the
        parabolic coset; it carries theta into the simple roots of omega."""
        return mat_mul(self.longest_element(omega), self.inverse(self.longest_element(theta)))

    def intertwining_element(self, theta: Iterable[int]) -> Matrix:
        """w_l w_{l,theta}: the element the standard intertwining operator is
        attached to for the parabolic given by theta."""
        return self.coset_longest(None, theta)

    def enumerate_elements(self, theta: Iterable[int] | None = None) -> list:
        """Full BFS enumeration (tests only; fine for the small ranks here)."""
        theta = (
            tuple(range(len(self.simples)))
            if theta is None
            else self.rs.check_subset(theta)
        )
        gens = [self.simple_reflection(i) for i in theta]
        seen = {self.identity()}
        frontier = [self.identity()]
        while frontier:
            nxt = []
            for w in frontier:
                for g in gens:
                    wg = mat_mul(w, g)
                    if wg not in seen:
                        seen.add(wg)
                        nxt.append(wg)
            frontier = nxt
        return list(seen)

    # -- residue classes modulo a parabolic span ---------------------------------

    def class_key(self, theta: Iterable[int], beta: Sequence[Q]) -> Vector:
        """Canonical residue of beta modulo the rational span of the
        theta-simples; equal keys mean equal classes."""
        theta = self.rs.check_subset(theta)
        span = [self.simples[i] for i in theta]
        if not span:
            return tuple(Q(x) for x in beta)
        # reduce beta against an echelonized basis of the span
        rows = [list(v) for v in span]
        # echelonize
        pivots = []
        rcount = len(rows)
        col = 0
        rix = 0
        while rix < rcount and col < self.dim:
            sel = None
            for r in range(rix, rcount):
                if rows[r][col] != 0:
                    sel = r
                    break
            if sel is None:
                col += 1
                continue
            rows[rix], rows[sel] = rows[sel], rows[rix]
            pv = rows[rix][col]
            rows[rix] = [x / pv for x in rows[rix]]
            for r in range(rcount):
                if r != rix and rows[r][col] != 0:
                    f = rows[r][col]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[rix])]
            pivots.append(col)
            rix += 1
        out = [Q(x) for x in beta]
        for r, col in enumerate(pivots):
            if out[col] != 0:
                f = out[col]
                out = [x - f * y for x, y in zip(out, rows[r])]
        return tuple(out)

    def sends_class_negative(self, w: Matrix, beta: Sequence[Q]) -> bool:
        return not self.rs.is_positive(self.act(w, beta))


# ---------------------------------------------------------------------------
# block decomposition of the intertwining element
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecompositionBlock:
    """One step of the decomposition.

    `factor` is the coset-longest element used at this step, mapping the
    current parabolic subset onto the next; `removed_index` is the simple
    root adjoined at this step. The factor inverts every positive root lying
    in the omega-span but outside the theta-span; those roots, pulled back
    through the earlier factors to the original coordinates and grouped by
    residue class, are `consumed_classes`."""

    removed_index: int
    omega: tuple
    theta_before: tuple
    theta_after: tuple
    factor: Matrix
    consumed_classes: tuple  # tuple of tuples of roots

    @property
    def class_roots(self) -> tuple:
        return tuple(r for cls in self.consumed_classes for r in cls)


def _subset_image(wg: WeylGroup, w: Matrix, theta: tuple) -> tuple:
    """Indices of the simples that w(theta-simples) lands on; NotAssociate if
    any image is not simple."""
    simple_index = {wg.simples[i]: i for i in range(len(wg.simples))}
    out = []
    for i in theta:
        img = wg.act(w, wg.simples[i])
        if img not in simple_index:
            raise NotAssociate(
                f"image of simple root {i} under the block factor is not simple"
            )
        out.append(simple_index[img])
    return tuple(sorted(out))


def langlands_decompose(rs: RootSystem, theta: Iterable[int], w: Matrix) -> list:
    """Decompose w into coset-longest factors w = w_r ... w_2 w_1 along a
    chain of parabolic subsets starting at theta.

    Requires w to send every theta-simple to a simple root (up to the chain);
    the usual input is the intertwining element w_l w_{l,theta}. Each step
    consumes one residue class of radical roots made negative by w; together
    the classes exhaust the radical inversion roots of w.
    """
    wg = WeylGroup(rs)
    theta_j = rs.check_subset(theta)
    n_simple = len(wg.simples)
    remaining = w
    prefix_inv = wg.identity()  # (w_1 ... w_{j-1})^{-1}
    blocks = []
    guard = 0
    while remaining != wg.identity():
        guard += 1
        if guard > 4 * n_simple * n_simple + 8:
            raise NotAssociate("block decomposition did not terminate")
        pick = None
        for j in range(n_simple):
            if j in theta_j:
                continue
            if not rs.is_positive(wg.act(remaining, wg.simples[j])):
                pick = j
                break
        if pick is None:
            raise NotAssociate(
                "no removable simple root is sent negative; the element does "
                "not decompose along this parabolic subset"
            )
        omega = tuple(sorted(theta_j + (pick,)))
        factor = wg.coset_longest(omega, theta_j)
        theta_next = _subset_image(wg, factor, theta_j)
        # the factor inverts exactly the omega-span positives outside the
        # theta-span; group them by residue class and pull back to the start
        omega_span = tuple(wg.simples[k] for k in omega)
        theta_span = tuple(wg.simples[k] for k in theta_j)
        by_class: dict = {}
        for beta in rs.positive_roots(reduced_only=False):
            if not rs.span_membership(omega_span, beta):
                continue
            if theta_span and rs.span_membership(theta_span, beta):
                continue
            key = wg.class_key(theta_j, beta)
            by_class.setdefault(key, []).append(apply_matrix(prefix_inv, beta))
        blocks.append(
            DecompositionBlock(
                removed_index=pick,
                omega=omega,
                theta_before=theta_j,
                theta_after=theta_next,
                factor=factor,
                consumed_classes=tuple(
                    tuple(v) for v in sorted(by_class.values(), key=lambda c: sorted(c))
                ),
            )
        )
        remaining = mat_mul(remaining, wg.inverse(factor))
        prefix_inv = mat_mul(prefix_inv, wg.inverse(factor))
        theta_j = theta_next
    return blocks


# ---------------------------------------------------------------------------
# level partition for a maximal parabolic subset
# ---------------------------------------------------------------------------


def removed_simple_index(rs: RootSystem, theta: Iterable[int]) -> int:
    theta = rs.check_subset(theta)
    complement = [i for i in range(rs.rank) if i not in theta]
    if len(complement) != 1:
        raise NotMaximalLevi(
            f"expected exactly one removed simple root, theta={theta} leaves {complement}"
        )
    return complement[0]


def level_of(rs: RootSystem, theta: Iterable[int], beta: Sequence[Q]) -> int:
    """Coefficient of the removed simple root in beta's simple-basis
    expansion: the level the root contributes to."""
    j = removed_simple_index(rs, theta)
    coeffs = rs.simple_coefficients(beta)
    lv = coeffs[j]
    if lv.denominator != 1:
        raise InvalidLevel(f"non-integral level {lv} for root {beta}")
    return int(lv)


@dataclass(frozen=True)
class LevelClass:
    level: int
    roots: tuple  # all radical positive roots in this residue class

    def dual_dimension(self, rs: RootSystem) -> int:
        return sum(rs.multiplicity(b) for b in self.roots)


@dataclass(frozen=True)
class LevelPartition:
    theta: tuple
    classes: tuple  # LevelClass entries, sorted by level then class size
    theta0: tuple = ()

    @property
    def max_level(self) -> int:
        return max(c.level for c in self.classes)

    def at_level(self, i: int) -> tuple:
        out = tuple(c for c in self.classes if c.level == i)
        if not out:
            raise InvalidLevel(f"no classes at level {i}")
        return out

    def dual_dimension_at(self, rs: RootSystem, i: int) -> int:
        return sum(c.dual_dimension(rs) for c in self.at_level(i))


def level_partition(
    rs: RootSystem, theta: Iterable[int], theta0: Iterable[int] | None = None
) -> LevelPartition:
    """Radical positive roots (non-reduced list) grouped into residue classes
    modulo the theta0-span, each class carrying its constant level.

    theta0 defaults to theta; a smaller theta0 refines the classes down to
    singletons at theta0 = (), which is the granularity the rank-one product
    comparisons run at. Levels are always taken relative to theta."""
    theta = rs.check_subset(theta)
    theta0 = theta if theta0 is None else rs.check_subset(theta0)
    if not set(theta0) <= set(theta):
        raise InvalidSubset(f"theta0 {theta0} is not contained in theta {theta}")
    wg = WeylGroup(rs)
    simples = wg.simples
    span = tuple(simples[i] for i in theta)
    buckets: dict = {}
    for beta in rs.positive_roots(reduced_only=False):
        if span and rs.span_membership(span, beta):
            continue
        if not span and is_zero_vec(beta):
            continue
        key = wg.class_key(theta0, beta)
        buckets.setdefault(key, []).append(beta)
    classes = []
    for key, roots in buckets.items():
        levels = {level_of(rs, theta, b) for b in roots}
        if len(levels) != 1:
            raise InvalidLevel(
                f"level is not constant on the residue class of {roots[0]}: {levels}"
            )
        classes.append(LevelClass(level=levels.pop(), roots=tuple(sorted(roots))))
    classes.sort(key=lambda c: (c.level, len(c.roots), c.roots))
    return LevelPartition(theta=theta, classes=tuple(classes), theta0=theta0)


# ---------------------------------------------------------------------------
# the subgroup a level bound generates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubsystemComponent:
    family: str  # "A" | "C" | "BC"
    rank: int
    simples: tuple
    positives: tuple

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class InductionSubgroup:
    """Root data of the subgroup generated by the theta-span together with
    all radical roots of level >= i. Can be reducible."""

    level_bound: int
    components: tuple

    @property
    def label(self) -> str:
        return "+".join(c.label for c in self.components) if self.components else "T"


def induction_subgroup(rs: RootSystem, theta: Iterable[int], i: int) -> InductionSubgroup:
    theta = rs.check_subset(theta)
    if i < 1:
        raise InvalidLevel(f"level bound must be >= 1, got {i}")
    wg = WeylGroup(rs)
    span = tuple(wg.simples[k] for k in theta)
    positives = []
    for beta in rs.positive_roots(reduced_only=False):
        if span and rs.span_membership(span, beta):
            positives.append(beta)
        elif level_of(rs, theta, beta) >= i:
            positives.append(beta)
    pos_set = set(positives)
    # levels are additive and nonnegative, so this set is closed under addition
    simples_sub = []
    for beta in positives:
        if vscale(Q(1, 2), beta) in pos_set:
            continue  # divisible roots are never simple
        decomposable = any(g != beta and vsub(beta, g) in pos_set for g in positives)
        if not decomposable:
            simples_sub.append(beta)
    # connected components through non-orthogonality
    comps = _connected_components(simples_sub)
    out = []
    for comp_simples in comps:
        comp_span = tuple(comp_simples)
        comp_pos = tuple(
            b for b in positives if rs.span_membership(comp_span, b)
        )
        norms = {dot(b, b) for b in comp_pos}
        rank = len(comp_simples)
        if Q(1) in norms:
            family = "BC"
        elif Q(4) in norms and Q(2) in norms:
            family = "C"
        elif norms == {Q(4)} or rank == 1:
            family = "A"
        else:
            family = "A"
        out.append(
            SubsystemComponent(
                family=family,
                rank=rank,
                simples=tuple(sorted(comp_simples)),
                positives=tuple(sorted(comp_pos)),
            )
        )
    out.sort(key=lambda c: (c.family, c.rank, c.simples))
    return InductionSubgroup(level_bound=i, components=tuple(out))


def _connected_components(vectors: list) -> list:
    n = len(vectors)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            cur = stack.pop()
            comp.append(vectors[cur])
            for o in range(n):
                if not seen[o] and dot(vectors[cur], vectors[o]) != 0:
                    seen[o] = True
                    stack.append(o)
        comps.append(comp)
    return comps
