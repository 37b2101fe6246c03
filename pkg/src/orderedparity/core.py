"""Exact-rational primitives for grouped ordered 0/1 vectors.

Everything downstream (separation, flow networks, LP solving, the TSP
experiments) works over these types.  All arithmetic is exact: values are
`fractions.Fraction`, so polyhedral identities can be asserted with `==`
instead of tolerances.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction

HALF = Fraction(1, 2)


class DomainError(Exception):
    """Base class for precondition violations (CLI maps these to exit 1)."""


class NonBinaryEntryError(DomainError):
    """A 0/1-only operation received a fractional entry."""


class OutOfRangeError(DomainError):
    """A scalar argument fell outside its documented range."""


class NotInOrderedBoxError(DomainError):
    """A point violated the per-group ordering/bound chain."""


class IndexOutOfRangeError(DomainError):
    """A group index fell outside 1..k."""


class TooManyGroupsError(DomainError):
    """Subset enumeration guard: more groups than we will enumerate over."""


class TooLargeError(DomainError):
    """Enumeration guard: instance exceeds the brute-force size cap."""


class DimensionMismatchError(DomainError):
    """Vectors of unequal length where equal length is required."""


class EmptyComponentError(DomainError):
    """A construction received an empty point set."""


def as_rat(value) -> Fraction:
    """Coerce ints/strings/Fractions to Fraction ("3/4", "2", 2, ...)."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


class ParityClass(enum.Enum):
    EVEN = "even"
    ODD = "odd"

    @staticmethod
    def parse(text: str) -> "ParityClass":
        try:
            return ParityClass(text.strip().lower())
        except ValueError:
            raise ValueError(f"parity must be 'even' or 'odd', got {text!r}") from None


@dataclass(frozen=True)
class GroupShape:
    """Partition of n variables into k contiguous ordered groups.

    `groups[i]` is the length of group i; within each group the variables
    are constrained by 1 >= x_1 >= ... >= x_r >= 0.
    """

    groups: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(int(r) for r in self.groups))
        if len(self.groups) == 0:
            raise ValueError("shape needs at least one group")
        if any(r < 1 for r in self.groups):
            raise ValueError(f"group sizes must be >= 1, got {self.groups}")

    @property
    def k(self) -> int:
        return len(self.groups)

    @property
    def n(self) -> int:
        return sum(self.groups)

    def offsets(self) -> tuple[int, ...]:
        """Flat start index of each group."""
        out = []
        pos = 0
        for r in self.groups:
            out.append(pos)
            pos += r
        return tuple(out)

    @staticmethod
    def parse(text: str) -> "GroupShape":
        """Parse "2,2" into GroupShape((2, 2))."""
        try:
            parts = tuple(int(p) for p in text.split(","))
        except ValueError:
            raise ValueError(f"bad shape {text!r}: expected comma-separated positive integers") from None
        if not parts or any(r < 1 for r in parts):
            raise ValueError(f"bad shape {text!r}: group sizes must be positive")
        return GroupShape(parts)

    def __str__(self) -> str:
        return ",".join(str(r) for r in self.groups)


@dataclass(frozen=True)
class GroupedPoint:
    """A rational candidate point, one sub-vector per group of the shape."""

    shape: GroupShape
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(as_rat(v) for v in group) for group in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != self.shape.k:
            raise ValueError(f"expected {self.shape.k} groups, got {len(entries)}")
        for i, (group, r) in enumerate(zip(entries, self.shape.groups)):
            if len(group) != r:
                raise ValueError(f"group {i} has {len(group)} entries, shape wants {r}")

    def flat(self) -> tuple[Fraction, ...]:
        return tuple(v for group in self.entries for v in group)

    def total(self) -> Fraction:
        return sum(self.flat(), Fraction(0))

    def group_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(g, Fraction(0)) for g in self.entries)

    def in_ordered_box(self) -> bool:
        return all(is_ordered_unit_box(g) for g in self.entries)

    @staticmethod
    def from_flat(shape: GroupShape, values: Sequence) -> "GroupedPoint":
        values = [as_rat(v) for v in values]
        if len(values) != shape.n:
            raise ValueError(f"expected {shape.n} values, got {len(values)}")
        groups = []
        pos = 0
        for r in shape.groups:
            groups.append(tuple(values[pos:pos + r]))
            pos += r
        return GroupedPoint(shape, tuple(groups))

    @staticmethod
    def parse(text: str) -> "GroupedPoint":
        """Parse "1,1/2;1,0" (groups by ';', entries by ','); shape is inferred."""
        groups = []
        for part in text.split(";"):
            toks = [t.strip() for t in part.split(",")]
            if any(not t for t in toks):
                raise ValueError(f"bad point {text!r}: empty entry")
            try:
                groups.append(tuple(Fraction(t) for t in toks))
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"bad point {text!r}: entries must be rationals like 3/4") from None
        shape = GroupShape(tuple(len(g) for g in groups))
        return GroupedPoint(shape, tuple(groups))

    def __str__(self) -> str:
        return ";".join(",".join(str(v) for v in group) for group in self.entries)


def alternating_sum(xs: Iterable[Fraction]) -> Fraction:
    """x_1 - x_2 + x_3 - ... (0 for the empty sequence).

    On an ordered 0/1 vector this equals the parity of the number of ones;
    on any ordered unit-box vector it lies in [0, 1].
    """
    total = Fraction(0)
    sign = 1
    for x in xs:
        total += x if sign > 0 else -x
        sign = -sign
    return total


def is_ordered_unit_box(xs: Sequence[Fraction]) -> bool:
    """True iff 1 >= x_1 >= ... >= x_n >= 0 (vacuously true when empty)."""
    prev = Fraction(1)
    for x in xs:
        if x > prev:
            return False
        prev = x
    return prev >= 0


def integer_parity(point: GroupedPoint) -> ParityClass:
    """Parity of the total entry sum of a 0/1 point."""
    total = 0
    for group in point.entries:
        for v in group:
            if v != 0 and v != 1:
                raise NonBinaryEntryError(f"entry {v} is not 0/1")
            total += int(v)
    return ParityClass.EVEN if total % 2 == 0 else ParityClass.ODD


def hedging_capacity(z: Fraction, r: int) -> Fraction:
    """min(z, r - z, 1/2): how far a group with prescribed sum z can sit
    from *both* parities at once.

    A sum of these >= 1 across the groups of a constraint certifies that no
    parity inequality on those groups can be violated by a best-case
    reassignment of the group entries (see hedging.multi_hedging_witness).
    """
    z = as_rat(z)
    if z < 0 or z > r:
        raise OutOfRangeError(f"need 0 <= z <= {r}, got {z}")
    return min(z, r - z, HALF)
