"""Exact rational linear programming plus brute-force polyhedral oracles.

The solver is a two-phase primal simplex over bounded variables with
Bland's least-index rule, so termination is guaranteed and every outcome
is exact.  Tableau arithmetic runs on gmpy2.mpq when available (several
times faster than Fraction at these sizes) and transparently falls back
to Fraction; the public API speaks Fraction only.

The oracles (enumerate_points, hull_membership, glueing_check) are
deliberately naive: they exist to cross-check the structured algorithms,
so they must be simple enough to trust by inspection.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Optional, Sequence

from .core import (
    DimensionMismatchError,
    DomainError,
    EmptyComponentError,
    GroupedPoint,
    GroupShape,
    NonBinaryEntryError,
    ParityClass,
    TooLargeError,
    as_rat,
)

try:
    from gmpy2 import mpq as _q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _q = Fraction

LE = "<="
EQ = "="
GE = ">="
_SENSES = (LE, EQ, GE)

ENUMERATION_CAP = 10**6
_PIVOT_CAP = 10**6

# nonbasic-at-lower / nonbasic-at-upper / basic
_LOWER, _UPPER, _BASIC = 0, 1, 2


class MalformedProgramError(DomainError):
    """LP rows/bounds/objective disagree on the variable count."""


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """min (or max) c.x subject to rows (coeffs, sense, rhs) and variable bounds.

    bounds[j] = (lo, hi), either side None for unbounded.  Senses are the
    strings "<=", "=", ">=".
    """

    objective: tuple[Fraction, ...]
    rows: tuple[tuple[tuple[Fraction, ...], str, Fraction], ...]
    bounds: tuple[tuple[Optional[Fraction], Optional[Fraction]], ...]
    maximize: bool = False

    def __post_init__(self):
        obj = tuple(as_rat(c) for c in self.objective)
        object.__setattr__(self, "objective", obj)
        nvars = len(obj)
        rows = []
        for row in self.rows:
            try:
                coeffs, sense, rhs = row
            except ValueError:
                raise MalformedProgramError(f"row {row!r} is not (coeffs, sense, rhs)") from None
            coeffs = tuple(as_rat(c) for c in coeffs)
            if len(coeffs) != nvars:
                raise MalformedProgramError(
                    f"row width {len(coeffs)} != variable count {nvars}")
            if sense not in _SENSES:
                raise MalformedProgramError(f"unknown sense {sense!r}")
            rows.append((coeffs, sense, as_rat(rhs)))
        object.__setattr__(self, "rows", tuple(rows))
        bnds = []
        for b in self.bounds:
            lo, hi = b
            bnds.append((None if lo is None else as_rat(lo),
                         None if hi is None else as_rat(hi)))
        if len(bnds) != nvars:
            raise MalformedProgramError(
                f"bounds count {len(bnds)} != variable count {nvars}")
        object.__setattr__(self, "bounds", tuple(bnds))

    @property
    def nvars(self) -> int:
        return len(self.objective)

    def __str__(self) -> str:
        goal = "max" if self.maximize else "min"
        lines = [goal + " " + " ".join(str(c) for c in self.objective) + " st"]
        for coeffs, sense, rhs in self.rows:
            lines.append("  " + " ".join(str(c) for c in coeffs) + f" {sense} {rhs}")
        lines.append("  bounds " + " ".join(
            f"[{'-inf' if lo is None else lo},{'inf' if hi is None else hi}]"
            for lo, hi in self.bounds))
        return "\n".join(lines)


@dataclass(frozen=True)
class LPOutcome:
    status: LPStatus
    value: Optional[Fraction] = None
    solution: Optional[tuple[Fraction, ...]] = None


def solve(lp: LinearProgram) -> LPOutcome:
    """Exact optimum, or the correct Infeasible/Unbounded verdict."""
    return _Simplex(lp).run()


def _to_fraction(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


class _Simplex:
    """Bounded-variable two-phase primal simplex; all columns live in [0, u].

    Original variables are shifted/mirrored/split so every canonical column
    has lower bound 0 (upper bound rational or None).  Rows become
    equalities via slack columns; rows whose slack cannot seed the basis
    get a phase-1 artificial.
    """

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        self.infeasible_bounds = False
        recipes = []  # per original var: ("shift",col,lo) | ("mirror",col,hi) | ("split",cp,cn)
        uppers = []
        for lo, hi in lp.bounds:
            if lo is None and hi is None:
                recipes.append(("split", len(uppers), len(uppers) + 1))
                uppers.extend([None, None])
            elif lo is None:
                recipes.append(("mirror", len(uppers), _q(hi)))
                uppers.append(None)
            elif hi is None:
                recipes.append(("shift", len(uppers), _q(lo)))
                uppers.append(None)
            else:
                if hi < lo:
                    self.infeasible_bounds = True
                recipes.append(("shift", len(uppers), _q(lo)))
                uppers.append(_q(hi) - _q(lo))
        self.recipes = recipes
        self.uppers = uppers

    def run(self) -> LPOutcome:
        lp = self.lp
        if self.infeasible_bounds:
            return LPOutcome(LPStatus.INFEASIBLE)
        self._build_rows()
        self.pivots = 0
        if self.art_start < self.width:  # phase 1 needed
            zrow = [_q(0)] * self.width
            for i, bi in enumerate(self.basis):
                if bi >= self.art_start:
                    row = self.rows[i]
                    for j in range(self.width):
                        if row[j]:
                            zrow[j] -= row[j]
            for j in range(self.art_start, self.width):
                zrow[j] += 1
            outcome = self._optimize(zrow, phase_one=True)
            assert outcome == "optimal", "phase 1 objective is bounded below"
            if sum((self.beta[i] for i in range(len(self.basis))
                    if self.basis[i] >= self.art_start), _q(0)) != 0:
                return LPOutcome(LPStatus.INFEASIBLE)
            self._purge_artificials()
        zrow = list(self.cvec)
        for i, bi in enumerate(self.basis):
            cb = self.cvec[bi]
            if cb:
                row = self.rows[i]
                for j in range(self.width):
                    if row[j]:
                        zrow[j] -= cb * row[j]
        outcome = self._optimize(zrow, phase_one=False)
        if outcome == "unbounded":
            return LPOutcome(LPStatus.UNBOUNDED)
        x = self._decode()
        value = sum((c * v for c, v in zip(lp.objective, x)), Fraction(0))
        return LPOutcome(LPStatus.OPTIMAL, value, tuple(x))

    def _build_rows(self):
        lp = self.lp
        ncanon = len(self.uppers)
        sign = -1 if lp.maximize else 1
        cvec = [_q(0)] * ncanon
        for c, recipe in zip(lp.objective, self.recipes):
            cq = _q(c) * sign
            if recipe[0] == "split":
                cvec[recipe[1]] += cq
                cvec[recipe[2]] -= cq
            else:
                col = recipe[1]
                cvec[col] += -cq if recipe[0] == "mirror" else cq

        raw = []  # (coeff list over canonical cols, rhs) as equalities, slack col index or None
        slack_count = sum(1 for _, sense, _ in lp.rows if sense != EQ)
        width = ncanon + slack_count
        next_slack = ncanon
        for coeffs, sense, rhs in lp.rows:
            vec = [_q(0)] * width
            rq = _q(rhs)
            for a, recipe in zip(coeffs, self.recipes):
                if not a:
                    continue
                aq = _q(a)
                if recipe[0] == "split":
                    vec[recipe[1]] += aq
                    vec[recipe[2]] -= aq
                elif recipe[0] == "mirror":
                    vec[recipe[1]] -= aq
                    rq -= aq * recipe[2]
                else:
                    vec[recipe[1]] += aq
                    rq -= aq * recipe[2]
            slack = None
            if sense != EQ:
                if sense == GE:  # flip to <=
                    vec = [-v for v in vec]
                    rq = -rq
                slack = next_slack
                vec[slack] = _q(1)
                next_slack += 1
            raw.append((vec, rq, slack))
        self.uppers.extend([None] * slack_count)
        cvec.extend([_q(0)] * slack_count)

        rows, rhs_vals, basis = [], [], []
        art_rows = []
        for vec, rq, slack in raw:
            if rq < 0:
                vec = [-v for v in vec]
                rq = -rq
                slack_sign = -1 if slack is not None else 0
            else:
                slack_sign = 1 if slack is not None else 0
            rows.append(vec)
            rhs_vals.append(rq)
            if slack_sign == 1:
                basis.append(slack)
            else:
                basis.append(-1)  # placeholder, artificial assigned below
                art_rows.append(len(rows) - 1)
        self.art_start = width
        width += len(art_rows)
        for vec in rows:
            vec.extend([_q(0)] * len(art_rows))
        for t, i in enumerate(art_rows):
            col = self.art_start + t
            rows[i][col] = _q(1)
            basis[i] = col
        self.uppers.extend([None] * len(art_rows))
        cvec.extend([_q(0)] * len(art_rows))

        self.width = width
        self.rows = rows
        self.beta = rhs_vals
        self.basis = basis
        self.cvec = cvec
        self.stat = [_LOWER] * width
        for bi in basis:
            self.stat[bi] = _BASIC

    def _optimize(self, zrow, phase_one: bool) -> str:
        rows, beta, basis = self.rows, self.beta, self.basis
        uppers, stat = self.uppers, self.stat
        limit = self.width if phase_one else self.art_start
        m = len(rows)
        while True:
            self.pivots += 1
            if self.pivots > _PIVOT_CAP:
                raise RuntimeError("simplex pivot cap exceeded; anti-cycling rule broken")
            entering = -1
            for j in range(limit):
                sj = stat[j]
                if sj == _BASIC:
                    continue
                uj = uppers[j]
                if uj is not None and uj == 0:
                    continue  # fixed column
                rc = zrow[j]
                if (sj == _LOWER and rc < 0) or (sj == _UPPER and rc > 0):
                    entering = j
                    break
            if entering < 0:
                return "optimal"
            d = 1 if stat[entering] == _LOWER else -1
            ue = uppers[entering]
            best_t = ue  # own-bound flip; None means unbounded so far
            best_row = -1
            leave_upper = False
            for i in range(m):
                a = rows[i][entering]
                if not a:
                    continue
                toward_lower = (a > 0) == (d > 0)  # basic var heads to 0
                if toward_lower:
                    t = beta[i] / (a if a > 0 else -a)
                    hits_upper = False
                else:
                    ub = uppers[basis[i]]
                    if ub is None:
                        continue
                    t = (ub - beta[i]) / (a if a > 0 else -a)
                    hits_upper = True
                if best_t is None or t < best_t or (
                        t == best_t and best_row >= 0 and basis[i] < basis[best_row]):
                    best_t = t
                    best_row = i
                    leave_upper = hits_upper
            if best_t is None:
                assert not phase_one, "phase 1 objective cannot be unbounded"
                return "unbounded"
            if best_row < 0:
                # entering travels to its other bound, basis unchanged
                t = best_t
                if t:
                    col = entering
                    for i in range(m):
                        a = rows[i][col]
                        if a:
                            beta[i] -= a * t if d > 0 else -(a * t)
                stat[entering] = _UPPER if d > 0 else _LOWER
                continue
            self._pivot(entering, best_row, d, best_t, leave_upper, zrow)

    def _pivot(self, entering, r, d, t, leave_upper, zrow):
        rows, beta, basis, stat = self.rows, self.beta, self.basis, self.stat
        m = len(rows)
        if t:
            for i in range(m):
                if i == r:
                    continue
                a = rows[i][entering]
                if a:
                    beta[i] -= a * t if d > 0 else -(a * t)
        enter_val = (t if d > 0 else self.uppers[entering] - t)
        leaving = basis[r]
        stat[leaving] = _UPPER if leave_upper else _LOWER
        stat[entering] = _BASIC
        basis[r] = entering
        beta[r] = enter_val

        prow = rows[r]
        piv = prow[entering]
        if piv != 1:
            inv = 1 / piv
            rows[r] = prow = [v * inv if v else v for v in prow]
        nz = [j for j, v in enumerate(prow) if v]
        for i in range(m):
            if i == r:
                continue
            row = rows[i]
            f = row[entering]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        f = zrow[entering]
        if f:
            for j in nz:
                zrow[j] -= f * prow[j]

    def _purge_artificials(self):
        rows, beta, basis, stat = self.rows, self.beta, self.basis, self.stat
        drop = []
        for i in range(len(rows)):
            if basis[i] < self.art_start:
                continue
            row = rows[i]
            entering = -1
            for j in range(self.art_start):
                if row[j] and stat[j] != _BASIC:
                    entering = j
                    break
            if entering < 0:
                drop.append(i)  # redundant constraint
                continue
            # degenerate pivot: the artificial sits at 0, nothing moves
            d = 1 if stat[entering] == _LOWER else -1
            dummy = [_q(0)] * self.width
            self._pivot(entering, i, d, _q(0), False, dummy)
        for i in reversed(drop):
            art = basis[i]
            stat[art] = _LOWER
            del rows[i], beta[i], basis[i]
        for row in rows:
            del row[self.art_start:]
        del self.cvec[self.art_start:], self.uppers[self.art_start:]
        del self.stat[self.art_start:]
        self.width = self.art_start

    def _decode(self) -> list[Fraction]:
        yval = {}
        for i, bi in enumerate(self.basis):
            yval[bi] = self.beta[i]
        def col_value(j):
            if self.stat[j] == _BASIC:
                return yval[j]
            if self.stat[j] == _UPPER:
                return self.uppers[j]
            return _q(0)
        out = []
        for recipe in self.recipes:
            if recipe[0] == "split":
                v = col_value(recipe[1]) - col_value(recipe[2])
            elif recipe[0] == "mirror":
                v = recipe[2] - col_value(recipe[1])
            else:
                v = recipe[2] + col_value(recipe[1])
            out.append(_to_fraction(_q(v)))
        return out


def enumerate_points(shape: GroupShape, parity: ParityClass) -> tuple[GroupedPoint, ...]:
    """All ordered 0/1 points of the given total parity, sorted by the
    per-group ones-count vector (lexicographic)."""
    size = prod(r + 1 for r in shape.groups)
    if size > ENUMERATION_CAP:
        raise TooLargeError(
            f"shape admits {size} count vectors, cap is {ENUMERATION_CAP}")
    want_odd = parity is ParityClass.ODD
    one, zero = Fraction(1), Fraction(0)
    points = []
    for counts in itertools.product(*(range(r + 1) for r in shape.groups)):
        if (sum(counts) % 2 == 1) != want_odd:
            continue
        groups = tuple(
            tuple(one if j < c else zero for j in range(r))
            for c, r in zip(counts, shape.groups))
        points.append(GroupedPoint(shape, groups))
    return tuple(points)


def _flatten(p) -> tuple[Fraction, ...]:
    if isinstance(p, GroupedPoint):
        return p.flat()
    return tuple(as_rat(v) for v in p)


def hull_membership(points: Sequence, x: Sequence) -> bool:
    """Exact test: is x a convex combination of the given points?"""
    if len(points) == 0:
        raise EmptyComponentError("hull of zero points")
    flat_pts = [_flatten(p) for p in points]
    xv = _flatten(x)
    dim = len(xv)
    for fp in flat_pts:
        if len(fp) != dim:
            raise DimensionMismatchError(f"point of length {len(fp)}, expected {dim}")
    seen = set()
    verts = []
    for fp in flat_pts:
        if fp not in seen:
            seen.add(fp)
            verts.append(fp)
    # cheap bounding-box rejection before the LP
    for d in range(dim):
        lo = min(v[d] for v in verts)
        hi = max(v[d] for v in verts)
        if xv[d] < lo or xv[d] > hi:
            return False
    nv = len(verts)
    rows = []
    for d in range(dim):
        rows.append((tuple(v[d] for v in verts), EQ, xv[d]))
    rows.append(((Fraction(1),) * nv, EQ, Fraction(1)))
    lp = LinearProgram(
        objective=(Fraction(0),) * nv,
        rows=tuple(rows),
        bounds=((Fraction(0), None),) * nv,
    )
    return solve(lp).status is LPStatus.OPTIMAL


def _binary_vectors(vecs, label: str, max_dim: int) -> list[tuple[Fraction, ...]]:
    out = [_flatten(v) for v in vecs]
    if not out:
        raise EmptyComponentError(f"{label} is empty")
    dim = len(out[0])
    if dim > max_dim:
        raise TooLargeError(f"{label} has dimension {dim}, cap is {max_dim}")
    for v in out:
        if len(v) != dim:
            raise DimensionMismatchError(f"{label} mixes dimensions")
        if any(e != 0 and e != 1 for e in v):
            raise NonBinaryEntryError(f"{label} contains a non-binary entry")
    return out


def glueing_check(x0, x1, y0, y1, samples: int, seed: int = 0,
                  max_dim: int = 4) -> bool:
    """Randomized equality test for hulls glued at one shared coordinate.

    Draws `samples` rational points in the unit cube (denominator 16) and
    checks, for each, that membership in conv[(X0 x {0} x Y0) u (X1 x {1} x Y1)]
    coincides with joint membership in the two hulls that see only one side
    plus the shared coordinate.  Returns True iff no sample separates them.
    """
    X0 = _binary_vectors(x0, "X0", max_dim)
    X1 = _binary_vectors(x1, "X1", max_dim)
    Y0 = _binary_vectors(y0, "Y0", max_dim)
    Y1 = _binary_vectors(y1, "Y1", max_dim)
    m, n = len(X0[0]), len(Y0[0])
    if len(X1[0]) != m or len(Y1[0]) != n:
        raise DimensionMismatchError("X0/X1 (resp. Y0/Y1) must share a dimension")
    zero, one = Fraction(0), Fraction(1)
    joint = [xv + (t,) + yv
             for t, xs, ys in ((zero, X0, Y0), (one, X1, Y1))
             for xv in xs for yv in ys]
    left = [xv + (t,) for t, xs in ((zero, X0), (one, X1)) for xv in xs]
    right = [(t,) + yv for t, ys in ((zero, Y0), (one, Y1)) for yv in ys]
    rng = random.Random(seed)
    for _ in range(samples):
        pt = tuple(Fraction(rng.randint(0, 16), 16) for _ in range(m + 1 + n))
        in_left = hull_membership(left, pt[:m + 1])
        in_right = hull_membership(right, pt[m:])
        in_joint = hull_membership(joint, pt)
        if in_joint != (in_left and in_right):
            return False
    return True
