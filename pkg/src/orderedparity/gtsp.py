"""Graphic-TSP cutting planes: connectivity cuts, parity (blossom) cuts over
binarized edge variables, and the loop that shows the parity cuts never move
the bound while edge values stay away from their integer bounds.

Model: minimize sum(z_e) subject to z(delta(v)) >= 2, z(delta(S)) >= 2 for
all nontrivial S, with z_e = x1_e + x2_e and 1 >= x1_e >= x2_e >= 0 per edge.
Parity cuts come in two flavors per cut S and odd flip set F: the pair-level
form over (edge, level) variables and the strengthened per-edge form
sum_{delta\\F}(x1-x2) + sum_F(1-x1+x2) >= 1.  Both are separated exactly by
minimizing beta(S,F) = sum_{delta\\F} c + sum_F c' over all S (brute force)
and odd F (greedy, provably optimal per S).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .core import (
    DimensionMismatchError,
    DomainError,
    GroupShape,
    GroupedPoint,
    OutOfRangeError,
    as_rat,
    hedging_capacity,
)
from . import exactlp
from .exactlp import EQ, GE, LinearProgram, LPStatus

ODD_CUT_NODE_CAP = 18


class GraphParseError(DomainError):
    """Malformed graph file (message carries the line number)."""


class SelfLoopError(DomainError):
    """An edge joins a node to itself."""


class DuplicateEdgeError(DomainError):
    """The same unordered node pair appears twice."""


class DisconnectedError(DomainError):
    """The graph is not connected."""


class TooManyNodesError(DomainError):
    """Brute-force cut enumeration guard exceeded."""


class OrderingViolatedError(DomainError):
    """A binarized solution has x1_e < x2_e somewhere."""


@dataclass(frozen=True)
class Graph:
    """Simple connected undirected graph; edges keep their load order."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphParseError(f"edge ({u},{v}) outside 0..{self.n - 1}")
            if u == v:
                raise SelfLoopError(f"self-loop at node {u}")
            edges.append((min(u, v), max(u, v)))
        if len(set(edges)) != len(edges):
            seen = set()
            for e in edges:
                if e in seen:
                    raise DuplicateEdgeError(f"edge {e} repeated")
                seen.add(e)
        object.__setattr__(self, "edges", tuple(edges))
        if self.n < 1:
            raise GraphParseError(f"need at least one node, got {self.n}")
        adj = [[] for _ in range(self.n)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) != self.n:
            raise DisconnectedError(
                f"only {len(seen)} of {self.n} nodes reachable from node 0")

    @property
    def m(self) -> int:
        return len(self.edges)

    def incident(self, v: int) -> tuple[int, ...]:
        return tuple(i for i, (a, b) in enumerate(self.edges) if v in (a, b))

    def delta(self, s_nodes) -> tuple[int, ...]:
        s = set(s_nodes)
        return tuple(i for i, (a, b) in enumerate(self.edges) if (a in s) != (b in s))


def load_graph(text: str) -> Graph:
    """Parse "n m" then m lines "u v"; '#' starts a comment line."""
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if header is None:
            if len(tokens) != 2:
                raise GraphParseError(f"line {lineno}: expected header 'n m'")
            try:
                header = (int(tokens[0]), int(tokens[1]))
            except ValueError:
                raise GraphParseError(f"line {lineno}: non-integer header") from None
            continue
        if len(edges) >= header[1]:
            raise GraphParseError(f"line {lineno}: more than {header[1]} edges")
        if len(tokens) != 2:
            raise GraphParseError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphParseError(f"line {lineno}: non-integer endpoint") from None
        if not (0 <= u < header[0] and 0 <= v < header[0]):
            raise GraphParseError(
                f"line {lineno}: endpoint outside 0..{header[0] - 1}")
        if u == v:
            raise SelfLoopError(f"line {lineno}: self-loop at node {u}")
        edges.append((u, v))
    if header is None:
        raise GraphParseError("empty graph file")
    if len(edges) != header[1]:
        raise GraphParseError(f"expected {header[1]} edges, found {len(edges)}")
    return Graph(header[0], tuple(edges))


class CutKind(enum.Enum):
    CONNECTIVITY = "connectivity"
    BLOSSOM_ORIGINAL = "blossom-original"
    BLOSSOM_STRENGTHENED = "blossom-strengthened"


@dataclass(frozen=True)
class CutResult:
    """A cut S (never containing node 0), a flip set F within delta(S), and
    the separation objective value; F is empty for connectivity cuts."""

    s_nodes: frozenset[int]
    f_edges: frozenset[int]
    beta: Fraction
    kind: CutKind


@dataclass(frozen=True)
class BinarizedSolution:
    """Per-edge ordered split of z into x1 + x2 (1 >= x1 >= x2 >= 0)."""

    x1: tuple[Fraction, ...]
    x2: tuple[Fraction, ...]

    def __post_init__(self):
        x1 = tuple(as_rat(v) for v in self.x1)
        x2 = tuple(as_rat(v) for v in self.x2)
        object.__setattr__(self, "x1", x1)
        object.__setattr__(self, "x2", x2)
        if len(x1) != len(x2):
            raise DimensionMismatchError(f"|x1|={len(x1)} but |x2|={len(x2)}")
        for i, (a, b) in enumerate(zip(x1, x2)):
            if not (1 >= a >= b >= 0):
                raise OrderingViolatedError(
                    f"edge {i}: need 1 >= x1 >= x2 >= 0, got ({a},{b})")

    @property
    def z(self) -> tuple[Fraction, ...]:
        return tuple(a + b for a, b in zip(self.x1, self.x2))


def _canonical_side(g: Graph, s_nodes) -> frozenset[int]:
    s = frozenset(s_nodes)
    return frozenset(range(g.n)) - s if 0 in s else s


def stoer_wagner_min_cut(g: Graph, weights: Sequence) -> tuple[Fraction, frozenset[int]]:
    """Global minimum cut under nonnegative edge weights; deterministic
    (ties in the adjacency ordering go to the smallest node id)."""
    w = [[Fraction(0)] * g.n for _ in range(g.n)]
    for (u, v), wt in zip(g.edges, weights):
        wt = as_rat(wt)
        if wt < 0:
            raise OutOfRangeError(f"negative weight {wt} on edge ({u},{v})")
        w[u][v] += wt
        w[v][u] += wt
    active = list(range(g.n))
    merged = {v: [v] for v in range(g.n)}
    best_val: Optional[Fraction] = None
    best_side: frozenset[int] = frozenset()
    while len(active) > 1:
        start = active[0]
        order = [start]
        key = {v: w[start][v] for v in active if v != start}
        while key:
            u = max(key, key=lambda v: (key[v], -v))
            order.append(u)
            del key[u]
            for v in key:
                key[v] += w[u][v]
        t = order[-1]
        s = order[-2]
        cut_val = sum((w[t][v] for v in active if v != t), Fraction(0))
        if best_val is None or cut_val < best_val:
            best_val = cut_val
            best_side = frozenset(merged[t])
        merged[s].extend(merged[t])
        active.remove(t)
        for v in active:
            if v != s:
                w[s][v] += w[t][v]
                w[v][s] = w[s][v]
    return best_val, best_side


def separate_connectivity(g: Graph, z: Sequence) -> Optional[CutResult]:
    """Minimum-weight global cut if its z-weight is below 2, else None."""
    if len(z) != g.m:
        raise DimensionMismatchError(f"{len(z)} weights for {g.m} edges")
    val, side = stoer_wagner_min_cut(g, z)
    if val >= 2:
        return None
    return CutResult(_canonical_side(g, side), frozenset(), val, CutKind.CONNECTIVITY)


def blossom_weights_original(sol: BinarizedSolution):
    """Folded pair-level weights: c_e prices keeping/flipping both levels of
    edge e together, c'_e prices flipping exactly one level."""
    c, cp = [], []
    for a, b in zip(sol.x1, sol.x2):
        s = a + b
        c.append(min(s, 2 - s))
        cp.append(min(1 - a + b, 1 + a - b))
    return tuple(c), tuple(cp)


def blossom_weights_strengthened(sol: BinarizedSolution):
    """Weights of the per-edge strengthened parity inequality."""
    c, cp = [], []
    for i, (a, b) in enumerate(zip(sol.x1, sol.x2)):
        if a < b:
            raise OrderingViolatedError(f"edge {i}: x1 < x2")
        c.append(a - b)
        cp.append(1 - a + b)
    return tuple(c), tuple(cp)


def greedy_odd_flip_set(delta_edges: Sequence[int], c, cp) -> tuple[frozenset[int], Fraction]:
    """Minimum of beta over odd F within one cut: take every edge whose flip
    is strictly cheaper, then if the count is even, toggle the edge with the
    smallest flip-cost gap (smallest index on ties)."""
    f = set()
    beta = Fraction(0)
    for e in delta_edges:
        if cp[e] < c[e]:
            f.add(e)
            beta += cp[e]
        else:
            beta += c[e]
    if len(f) % 2 == 0:
        flip = min(delta_edges, key=lambda e: (abs(c[e] - cp[e]), e))
        beta += abs(c[flip] - cp[flip])
        f.symmetric_difference_update({flip})
    return frozenset(f), beta


def min_odd_cut(g: Graph, c: Sequence, cp: Sequence,
                kind: CutKind = CutKind.BLOSSOM_STRENGTHENED) -> CutResult:
    """Brute-force over all 2^(n-1)-1 cuts, greedy odd F within each; the
    first cut attaining the minimum beta wins (mask order, deterministic).

    A parity cut is violated iff the returned beta is < 1.
    """
    if g.n > ODD_CUT_NODE_CAP:
        raise TooManyNodesError(f"{g.n} nodes; enumeration cap is {ODD_CUT_NODE_CAP}")
    if g.n < 2:
        raise OutOfRangeError("a single node admits no nontrivial cut")
    if len(c) != g.m or len(cp) != g.m:
        raise DimensionMismatchError("weight vectors must have one entry per edge")
    c = tuple(as_rat(v) for v in c)
    cp = tuple(as_rat(v) for v in cp)
    if any(v < 0 for v in c) or any(v < 0 for v in cp):
        raise OutOfRangeError("parity-cut weights must be nonnegative")
    ebits = [(1 << u, 1 << v) for u, v in g.edges]
    best: Optional[tuple[Fraction, frozenset[int], frozenset[int]]] = None
    for mask in range(1, 1 << (g.n - 1)):
        smask = mask << 1  # node 0 always outside S
        delta_edges = [i for i, (bu, bv) in enumerate(ebits)
                       if bool(smask & bu) != bool(smask & bv)]
        if not delta_edges:
            continue
        f, beta = greedy_odd_flip_set(delta_edges, c, cp)
        if best is None or beta < best[0]:
            s = frozenset(v for v in range(1, g.n) if smask & (1 << v))
            best = (beta, s, f)
    assert best is not None, "connected graph with >= 2 nodes has a cut"
    return CutResult(best[1], best[2], best[0], kind)


def unfold_original_flip_set(sol: BinarizedSolution, delta_edges, f_folded):
    """Expand a folded flip set into (edge, level) pairs, level in {1, 2}.

    Edges outside the folded F flip both levels or neither, whichever is
    cheaper at the current point; edges inside flip exactly one level,
    again the cheaper one.  Ties keep the first option, so the result is
    deterministic and its beta matches the folded weights exactly.
    """
    pairs = set()
    for e in delta_edges:
        a, b = sol.x1[e], sol.x2[e]
        if e in f_folded:
            if 1 - a + b <= 1 + a - b:
                pairs.add((e, 1))
            else:
                pairs.add((e, 2))
        else:
            if a + b > 2 - a - b:
                pairs.add((e, 1))
                pairs.add((e, 2))
    return frozenset(pairs)


@dataclass(frozen=True)
class CutConfig:
    connectivity: bool = True
    blossom_original: bool = False
    blossom_strengthened: bool = False
    max_rounds: int = 50


@dataclass(frozen=True)
class ExaminedCut:
    """One parity separation result with its hedging diagnosis: gamma_sum is
    sum over delta(S) of min(z_e, 2-z_e, 1/2) at the round's LP point; a
    value >= 1 certifies that no parity cut on S can move the bound."""

    kind: CutKind
    s_nodes: frozenset[int]
    f_edges: frozenset[int]
    beta: Fraction
    gamma_sum: Fraction
    violated: bool


@dataclass(frozen=True)
class RoundRecord:
    number: int
    bound: Fraction
    connectivity_added: int
    blossom_added: int
    examined: tuple[ExaminedCut, ...]


@dataclass
class SolveReport:
    graph: Graph
    config: CutConfig
    rounds: list[RoundRecord] = field(default_factory=list)
    final_bound: Optional[Fraction] = None
    final_solution: Optional[BinarizedSolution] = None
    stalled_rounds: tuple[int, ...] = ()
    round_cap_hit: bool = False
    min_gamma_sum_all_cuts: Optional[Fraction] = None
    # every row added to the LP, in the [z | x1 | x2] column layout,
    # kept so validity can be audited against integral solutions
    cut_rows: list = field(default_factory=list)

    def cut_counts(self) -> dict[CutKind, int]:
        counts = {kind: 0 for kind in CutKind}
        for rec in self.rounds:
            counts[CutKind.CONNECTIVITY] += rec.connectivity_added
            for ex in rec.examined:
                if ex.violated:
                    counts[ex.kind] += 1
        return counts

    def render(self) -> str:
        enabled = [k.value for k, on in (
            (CutKind.CONNECTIVITY, self.config.connectivity),
            (CutKind.BLOSSOM_ORIGINAL, self.config.blossom_original),
            (CutKind.BLOSSOM_STRENGTHENED, self.config.blossom_strengthened)) if on]
        lines = [
            f"graph: {self.graph.n} nodes, {self.graph.m} edges (desk-scale instance)",
            "cuts enabled: " + (", ".join(enabled) if enabled else "none"),
        ]
        for rec in self.rounds:
            lines.append(
                f"round {rec.number}: bound {rec.bound}, "
                f"+{rec.connectivity_added} connectivity, +{rec.blossom_added} blossom")
        lines.append(f"bound {self.final_bound}")
        counts = self.cut_counts()
        lines.append("total cuts: " + ", ".join(
            f"{counts[k]} {k.value}" for k in CutKind))
        by_round = {rec.number: rec for rec in self.rounds}
        for r in self.stalled_rounds:
            prev = by_round[r - 1]
            lines.append(
                f"stall round {r}: bound {by_round[r].bound} unchanged after "
                f"{prev.connectivity_added + prev.blossom_added} cut(s) in round {r - 1}")
            # The explanatory gamma-sums sit with the round whose cuts failed to
            # move the bound; if that round never ran parity separation, fall
            # back to the evaluations at the stalled point itself.
            source = prev if prev.examined else by_round[r]
            for ex in source.examined:
                verdict = "violated" if ex.violated else "satisfied"
                cert = ("parity cuts cannot move the bound"
                        if ex.gamma_sum >= 1 else "no hedging certificate")
                lines.append(
                    f"  examined (round {source.number}) {ex.kind.value} cut "
                    f"S={{{_fmt_nodes(ex.s_nodes)}}} beta {ex.beta} ({verdict}), "
                    f"gamma-sum {ex.gamma_sum} -> {cert}")
        if self.min_gamma_sum_all_cuts is not None:
            floor = self.min_gamma_sum_all_cuts
            note = ("parity cuts are powerless at the final point"
                    if floor >= 1 else "some cut could support a parity cut")
            lines.append(
                f"hedging floor: min over all cuts of sum gamma(z_e) = {floor} -> {note}")
        if self.round_cap_hit:
            lines.append(
                f"round cap exceeded: stopped after {self.config.max_rounds} rounds "
                "with violated cuts possibly remaining")
        return "\n".join(lines) + "\n"


def _fmt_nodes(nodes) -> str:
    return ",".join(str(v) for v in sorted(nodes))


def min_gamma_sum_over_cuts(g: Graph, z: Sequence) -> Fraction:
    """min over all nontrivial cuts of sum_{e in delta(S)} min(z_e, 2-z_e, 1/2)."""
    if g.n > ODD_CUT_NODE_CAP:
        raise TooManyNodesError(f"{g.n} nodes; enumeration cap is {ODD_CUT_NODE_CAP}")
    gamma = [hedging_capacity(as_rat(v), 2) for v in z]
    ebits = [(1 << u, 1 << v) for u, v in g.edges]
    best: Optional[Fraction] = None
    for mask in range(1, 1 << (g.n - 1)):
        smask = mask << 1
        total = Fraction(0)
        for i, (bu, bv) in enumerate(ebits):
            if bool(smask & bu) != bool(smask & bv):
                total += gamma[i]
        if best is None or total < best:
            best = total
    assert best is not None
    return best


def _base_lp_rows(g: Graph):
    m = g.m
    nv = 3 * m  # z block, then x1 block, then x2 block
    zero, one = Fraction(0), Fraction(1)
    rows = []
    for v in range(g.n):
        coeffs = [zero] * nv
        for e in g.incident(v):
            coeffs[e] = one
        rows.append((tuple(coeffs), GE, Fraction(2)))
    for e in range(m):
        link = [zero] * nv
        link[e] = one
        link[m + e] = -one
        link[2 * m + e] = -one
        rows.append((tuple(link), EQ, zero))
        order = [zero] * nv
        order[m + e] = one
        order[2 * m + e] = -one
        rows.append((tuple(order), GE, zero))
    return rows


def _cut_row(g: Graph, cut: CutResult, sol: BinarizedSolution):
    """(dedup key, LP row) for one separated cut."""
    m = g.m
    zero, one = Fraction(0), Fraction(1)
    delta_edges = g.delta(cut.s_nodes)
    coeffs = [zero] * (3 * m)
    if cut.kind is CutKind.CONNECTIVITY:
        for e in delta_edges:
            coeffs[e] = one
        return ("conn", cut.s_nodes), (tuple(coeffs), GE, Fraction(2))
    if cut.kind is CutKind.BLOSSOM_STRENGTHENED:
        for e in delta_edges:
            sign = -one if e in cut.f_edges else one
            coeffs[m + e] = sign
            coeffs[2 * m + e] = -sign
        return (("bs", cut.s_nodes, cut.f_edges),
                (tuple(coeffs), GE, Fraction(1 - len(cut.f_edges))))
    pairs = unfold_original_flip_set(sol, delta_edges, cut.f_edges)
    for e in delta_edges:
        for level in (1, 2):
            col = (m if level == 1 else 2 * m) + e
            coeffs[col] = -one if (e, level) in pairs else one
    return (("bo", cut.s_nodes, pairs),
            (tuple(coeffs), GE, Fraction(1 - len(pairs))))


def cutting_plane_solve(g: Graph, config: CutConfig = CutConfig()) -> SolveReport:
    """Alternate exact LP solves with separation until nothing is violated.

    Connectivity is separated first each round; parity families run only on
    rounds where connectivity is clean.  Every parity separation result is
    recorded with its hedging diagnosis, so a stalled bound comes with its
    explanation in the report.
    """
    if g.n < 3:
        raise OutOfRangeError(f"cutting-plane runs need at least 3 nodes, got {g.n}")
    use_parity = config.blossom_original or config.blossom_strengthened
    if use_parity and g.n > ODD_CUT_NODE_CAP:
        raise TooManyNodesError(
            f"{g.n} nodes; parity separation enumerates cuts only up to {ODD_CUT_NODE_CAP}")
    m = g.m
    zero, one = Fraction(0), Fraction(1)
    objective = tuple([one] * m + [zero] * (2 * m))
    bounds = tuple([(zero, Fraction(2))] * m + [(zero, one)] * (2 * m))
    base_rows = _base_lp_rows(g)
    pool: dict = {}
    report = SolveReport(graph=g, config=config)
    stalled = []
    prev_bound = None
    prev_added = 0
    for rnd in range(1, config.max_rounds + 1):
        lp = LinearProgram(objective, tuple(base_rows) + tuple(pool.values()), bounds)
        outcome = exactlp.solve(lp)
        assert outcome.status is LPStatus.OPTIMAL, outcome.status
        bound = outcome.value
        sol = BinarizedSolution(outcome.solution[m:2 * m], outcome.solution[2 * m:])
        z_hat = sol.z
        conn_added = 0
        blossom_added = 0
        examined = []
        if config.connectivity:
            cut = separate_connectivity(g, z_hat)
            if cut is not None:
                key, row = _cut_row(g, cut, sol)
                assert key not in pool, "pooled connectivity cut reseparated"
                pool[key] = row
                report.cut_rows.append(row)
                conn_added = 1
        if conn_added == 0 and use_parity:
            families = []
            if config.blossom_original:
                families.append((CutKind.BLOSSOM_ORIGINAL, blossom_weights_original))
            if config.blossom_strengthened:
                families.append((CutKind.BLOSSOM_STRENGTHENED, blossom_weights_strengthened))
            for kind, weigh in families:
                c, cp = weigh(sol)
                cut = min_odd_cut(g, c, cp, kind)
                gamma_sum = sum(
                    (hedging_capacity(z_hat[e], 2) for e in g.delta(cut.s_nodes)),
                    Fraction(0))
                examined.append(ExaminedCut(
                    kind, cut.s_nodes, cut.f_edges, cut.beta, gamma_sum, cut.beta < 1))
                if cut.beta < 1:
                    key, row = _cut_row(g, cut, sol)
                    assert key not in pool, "pooled parity cut reseparated"
                    pool[key] = row
                    report.cut_rows.append(row)
                    blossom_added += 1
        report.rounds.append(RoundRecord(rnd, bound, conn_added, blossom_added, tuple(examined)))
        if prev_bound is not None and bound == prev_bound and prev_added > 0:
            stalled.append(rnd)
        report.final_bound = bound
        report.final_solution = sol
        prev_bound = bound
        prev_added = conn_added + blossom_added
        if prev_added == 0:
            break
    else:
        report.round_cap_hit = True
    report.stalled_rounds = tuple(stalled)
    if g.n <= ODD_CUT_NODE_CAP:
        report.min_gamma_sum_all_cuts = min_gamma_sum_over_cuts(g, report.final_solution.z)
    return report


def petersen_graph() -> Graph:
    """The 10-node, 15-edge instance used in the no-improvement experiments."""
    outer = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
    spokes = [(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)]
    inner = [(5, 7), (7, 9), (9, 6), (6, 8), (8, 5)]
    return Graph(10, tuple(outer + spokes + inner))


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))
