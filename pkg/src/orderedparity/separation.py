"""Separation oracles and complete outer descriptions for ordered parity polytopes.

The polytope in question is the convex hull of ordered 0/1 points (grouped,
entries descending within each group) whose total number of ones has a fixed
parity.  Its outer description consists of the per-group ordering chains plus
one alternating-coefficient inequality per group subset F of the right
cardinality parity.  The oracle below finds the most violated of those
inequalities in a single pass over the point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    HALF,
    DimensionMismatchError,
    GroupShape,
    GroupedPoint,
    IndexOutOfRangeError,
    NotInOrderedBoxError,
    ParityClass,
    TooManyGroupsError,
    alternating_sum,
    is_ordered_unit_box,
)

GROUP_CAP = 24


@dataclass(frozen=True)
class SeparationCertificate:
    """Outcome of one separation query.

    lambdas[i] is the alternating sum of group i; f_set holds 0-based group
    indices (printed 1-based by the CLI); lhs_value is the left side of the
    selected inequality, which is violated iff lhs_value < 1.
    """

    lambdas: tuple[Fraction, ...]
    f_set: frozenset[int]
    lhs_value: Fraction
    violated: bool


@dataclass(frozen=True)
class LinearInequality:
    """coefficients . x >= rhs over the flat variable order."""

    coefficients: tuple[Fraction, ...]
    rhs: Fraction

    def evaluate(self, flat_x) -> Fraction:
        return sum((c * v for c, v in zip(self.coefficients, flat_x)), Fraction(0))

    def satisfied_by(self, flat_x) -> bool:
        return self.evaluate(flat_x) >= self.rhs

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.coefficients) + f" >= {self.rhs}"


def _required_odd(parity: ParityClass) -> bool:
    # even polytope: |F| odd; odd polytope: |F| even (including the empty set)
    return parity is ParityClass.EVEN


def separate(shape: GroupShape, parity: ParityClass, point: GroupedPoint) -> SeparationCertificate:
    """One-pass separation: accept, or name a violated inequality via its F.

    Greedy choice: put group i into F when its alternating sum exceeds 1/2
    (strictly); if that set has the wrong cardinality parity, toggle the
    group whose alternating sum is closest to 1/2 (smallest index on ties).
    The resulting F minimizes the inequality's left-hand side over all
    admissible F, so the verdict is complete, not just sound.
    """
    if point.shape != shape:
        raise DimensionMismatchError(
            f"point has shape {point.shape}, expected {shape}")
    for i, group in enumerate(point.entries):
        if not is_ordered_unit_box(group):
            raise NotInOrderedBoxError(f"group {i + 1} violates 1 >= x_1 >= ... >= 0")
    lambdas = tuple(alternating_sum(g) for g in point.entries)
    f_set = {i for i, lam in enumerate(lambdas) if lam > HALF}
    if (len(f_set) % 2 == 1) != _required_odd(parity):
        flip = min(range(shape.k), key=lambda i: (abs(lambdas[i] - HALF), i))
        f_set.symmetric_difference_update({flip})
    lhs = sum(
        ((1 - lam) if i in f_set else lam for i, lam in enumerate(lambdas)),
        Fraction(0))
    return SeparationCertificate(lambdas, frozenset(f_set), lhs, lhs < 1)


def inequality_for_f_set(shape: GroupShape, f_set) -> LinearInequality:
    """The flat-space inequality selected by F (0-based group indices).

    Groups outside F contribute alternating +1,-1,... coefficients, groups
    inside F the negated pattern; the constants from the flipped groups move
    to the right-hand side, giving rhs = 1 - |F|.
    """
    f_set = frozenset(f_set)
    for i in f_set:
        if not 0 <= i < shape.k:
            raise IndexOutOfRangeError(f"group index {i} outside 0..{shape.k - 1}")
    coeffs = []
    for i, r in enumerate(shape.groups):
        sign = -1 if i in f_set else 1
        for j in range(r):
            coeffs.append(Fraction(sign if j % 2 == 0 else -sign))
    return LinearInequality(tuple(coeffs), Fraction(1 - len(f_set)))


def admissible_f_sets(k: int, parity: ParityClass) -> tuple[frozenset[int], ...]:
    """All F over k groups with the cardinality parity the polytope requires."""
    want_odd = _required_odd(parity)
    out = []
    for size in range(k + 1):
        if (size % 2 == 1) != want_odd:
            continue
        for combo in itertools.combinations(range(k), size):
            out.append(frozenset(combo))
    return tuple(out)


def box_inequalities(shape: GroupShape) -> tuple[LinearInequality, ...]:
    """Per-group chain 1 >= x_1 >= ... >= x_r >= 0 as >=-rows."""
    rows = []
    zero = Fraction(0)
    for i, r in enumerate(shape.groups):
        base = shape.offsets()[i]
        top = [zero] * shape.n
        top[base] = Fraction(-1)
        rows.append(LinearInequality(tuple(top), Fraction(-1)))  # x_1 <= 1
        for j in range(r - 1):
            mid = [zero] * shape.n
            mid[base + j] = Fraction(1)
            mid[base + j + 1] = Fraction(-1)
            rows.append(LinearInequality(tuple(mid), zero))
        bot = [zero] * shape.n
        bot[base + r - 1] = Fraction(1)
        rows.append(LinearInequality(tuple(bot), zero))  # x_r >= 0
    return tuple(rows)


def outer_description(shape: GroupShape, parity: ParityClass) -> tuple[LinearInequality, ...]:
    """Every inequality of the complete description: box chains first, then
    the 2^(k-1) parity inequalities in subset order (size, then lex)."""
    if shape.k > GROUP_CAP:
        raise TooManyGroupsError(f"{shape.k} groups; subset enumeration cap is {GROUP_CAP}")
    rows = list(box_inequalities(shape))
    for f_set in admissible_f_sets(shape.k, parity):
        rows.append(inequality_for_f_set(shape, f_set))
    return tuple(rows)
