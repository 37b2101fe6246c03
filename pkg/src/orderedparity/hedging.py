"""Witness points that hedge between both parities at a prescribed sum.

For a single ordered group of length n and a target sum z, the best
possible value of min(f(x), 1-f(x)) over the ordered unit box (f being the
alternating sum) is exactly min(z, n-z, 1/2) — the hedging capacity.  The
construction below attains it case by case.  Summing capacities over the
groups that appear in a constraint family yields a sufficient condition
for one point to satisfy every parity inequality of every restriction,
for both parities at once; that is what makes parity cuts powerless on
fractional solutions away from their bounds.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import (
    HALF,
    GroupShape,
    GroupedPoint,
    IndexOutOfRangeError,
    OutOfRangeError,
    alternating_sum,
    as_rat,
    hedging_capacity,
    is_ordered_unit_box,
)


class WitnessCase(enum.Enum):
    LOW_SUM = "low-sum"            # z < 1/2: everything rides on x_1
    HIGH_SUM = "high-sum"          # n - z < 1/2: all ones except the last entry
    BALANCED = "balanced"          # interior pattern, pivot index <= n-2
    BALANCED_TAIL = "balanced-tail"  # interior pattern at pivot index n-1
    SMALL_N = "small-n"            # n <= 2 direct solution of sum/f equations


@dataclass(frozen=True)
class HedgingWitness:
    n: int
    z: Fraction
    case: WitnessCase
    x: tuple[Fraction, ...]
    achieved: Fraction  # min(f(x), 1 - f(x))


def hedging_witness(n: int, z) -> HedgingWitness:
    """An ordered unit-box point with entry sum exactly z maximizing
    min(f(x), 1-f(x)); the maximum equals hedging_capacity(z, n)."""
    z = as_rat(z)
    if n < 1:
        raise OutOfRangeError(f"need n >= 1, got {n}")
    if z < 0 or z > n:
        raise OutOfRangeError(f"need 0 <= z <= {n}, got {z}")
    zero, one = Fraction(0), Fraction(1)
    if z < HALF:
        x = (z,) + (zero,) * (n - 1)
        case = WitnessCase.LOW_SUM
    elif n - z < HALF:
        x = (one,) * (n - 1) + (z - n + 1,)
        case = WitnessCase.HIGH_SUM
    elif n == 1:
        # only z = 1/2 reaches here for n = 1
        x = (HALF,)
        case = WitnessCase.SMALL_N
    elif n == 2:
        # solve x1 + x2 = z, x1 - x2 = 1/2 directly
        x = ((2 * z + 1) / 4, (2 * z - 1) / 4)
        case = WitnessCase.SMALL_N
    else:
        # pivot index: nearest integer to z (ties down), clamped into [1, n-1]
        pivot = min(max(math.ceil(z - HALF), 1), n - 1)
        if pivot <= n - 2:
            low = (2 * (z - pivot) + 1) / 4  # lands in [0, 1/2]
            x = (one,) * (pivot - 1) + (HALF, low, low) + (zero,) * (n - pivot - 2)
            case = WitnessCase.BALANCED
        else:
            high = (2 * (z - pivot) + 3) / 4  # lands in [1/2, 1]
            x = (one,) * (n - 3) + (high, high, HALF)
            case = WitnessCase.BALANCED_TAIL
    f = alternating_sum(x)
    achieved = min(f, 1 - f)
    assert is_ordered_unit_box(x), (n, z, x)
    assert sum(x, zero) == z, (n, z, x)
    assert achieved == hedging_capacity(z, n), (n, z, x, achieved)
    return HedgingWitness(n, z, case, x, achieved)


def verify_hedging_optimality(n: int, z) -> bool:
    """Cross-check by exact LP: maximize g subject to g <= f(x), g <= 1-f(x),
    x ordered in the unit box, sum(x) = z.  True iff the LP optimum equals
    the closed form and the constructed witness attains it."""
    from .exactlp import GE, EQ, LE, LinearProgram, LPStatus, solve

    z = as_rat(z)
    if n < 1:
        raise OutOfRangeError(f"need n >= 1, got {n}")
    if z < 0 or z > n:
        raise OutOfRangeError(f"need 0 <= z <= {n}, got {z}")
    zero, one = Fraction(0), Fraction(1)
    nv = n + 1  # x_1..x_n, then g
    rows = []
    for j in range(n - 1):
        coeffs = [zero] * nv
        coeffs[j], coeffs[j + 1] = one, -one
        rows.append((tuple(coeffs), GE, zero))
    rows.append((tuple([one] * n + [zero]), EQ, z))
    alt = [one if j % 2 == 0 else -one for j in range(n)]
    rows.append((tuple(alt + [-one]), GE, zero))        # f(x) - g >= 0
    rows.append((tuple(alt + [one]), LE, one))          # f(x) + g <= 1
    lp = LinearProgram(
        objective=tuple([zero] * n + [one]),
        rows=tuple(rows),
        bounds=tuple([(zero, one)] * n + [(zero, None)]),
        maximize=True,
    )
    outcome = solve(lp)
    if outcome.status is not LPStatus.OPTIMAL:
        return False
    witness = hedging_witness(n, z)
    return outcome.value == hedging_capacity(z, n) == witness.achieved


@dataclass(frozen=True)
class CutFamilyCondition:
    """Per-set hedging-capacity sums for a family of group-index sets."""

    family: tuple[frozenset[int], ...]
    sums: tuple[Fraction, ...]
    all_satisfied: bool


def multi_hedging_witness(
    shape: GroupShape, z: Sequence, family: Sequence,
) -> tuple[CutFamilyCondition, Optional[GroupedPoint]]:
    """Evaluate sum of hedging capacities over each index set; if every sum
    reaches 1, assemble the per-group witnesses into one grouped point.

    That point then satisfies every parity inequality of the restriction to
    each set in the family, for both parities (the test suite checks this
    through the separation oracle).  Group indices are 0-based.
    """
    zs = tuple(as_rat(v) for v in z)
    if len(zs) != shape.k:
        raise OutOfRangeError(f"expected {shape.k} sums, got {len(zs)}")
    for zi, r in zip(zs, shape.groups):
        if zi < 0 or zi > r:
            raise OutOfRangeError(f"group sum {zi} outside [0, {r}]")
    fam = []
    for index_set in family:
        fs = frozenset(int(i) for i in index_set)
        for i in fs:
            if not 0 <= i < shape.k:
                raise IndexOutOfRangeError(f"group index {i} outside 0..{shape.k - 1}")
        fam.append(fs)
    sums = tuple(
        sum((hedging_capacity(zs[i], shape.groups[i]) for i in fs), Fraction(0))
        for fs in fam)
    all_ok = all(s >= 1 for s in sums)
    condition = CutFamilyCondition(tuple(fam), sums, all_ok)
    if not all_ok:
        return condition, None
    point = GroupedPoint(
        shape,
        tuple(hedging_witness(r, zi).x for r, zi in zip(shape.groups, zs)))
    return condition, point
