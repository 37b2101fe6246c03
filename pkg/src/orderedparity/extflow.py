"""Layered flow-network extended formulation for ordered parity polytopes.

One layer per group.  A node is (layer, running parity bit); the arc with
label l in layer i sets the first l entries of group i to 1 and flips the
parity bit iff l is odd.  Removing the wrong-parity start and end nodes
makes s-t paths correspond exactly to the parity-feasible ordered 0/1
points, and the incidence matrix is totally unimodular, so the unit-flow
polytope projects onto the parity polytope.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import DimensionMismatchError, GroupShape, GroupedPoint, ParityClass, as_rat
from . import exactlp
from .exactlp import EQ, LinearProgram, LPStatus

Node = tuple[int, int]  # (layer index 0..k, parity bit)


@dataclass(frozen=True)
class Arc:
    tail: Node
    head: Node
    layer: int  # 1-based group index
    label: int  # number of leading ones this arc assigns in its group
    projection: tuple[int, ...]  # flat x-indices set to 1


@dataclass(frozen=True)
class FlowNetwork:
    shape: GroupShape
    parity: ParityClass
    nodes: tuple[Node, ...]
    arcs: tuple[Arc, ...]
    source: Node
    sink: Node

    @property
    def layer_count(self) -> int:
        return self.shape.k

    def arcs_in_layer(self, i: int) -> tuple[Arc, ...]:
        return tuple(a for a in self.arcs if a.layer == i)


@dataclass(frozen=True)
class PathSolution:
    arcs: tuple[Arc, ...]
    value: Fraction
    point: GroupedPoint


def build_network(shape: GroupShape, parity: ParityClass = ParityClass.EVEN) -> FlowNetwork:
    """The layered DAG whose s-t paths enumerate the parity-feasible points.

    Even: start (0,0), end (k,0); nodes (0,1) and (k,1) removed.  Odd is the
    symmetric adjustment: the sink becomes (k,1) and (k,0) is removed.
    """
    k = shape.k
    end_bit = 0 if parity is ParityClass.EVEN else 1
    removed = {(0, 1), (k, 1 - end_bit)}
    nodes = tuple(
        (i, a) for i in range(k + 1) for a in (0, 1)
        if (i, a) not in removed)
    node_set = set(nodes)
    offsets = shape.offsets()
    arcs = []
    for i, r in enumerate(shape.groups, start=1):
        base = offsets[i - 1]
        for alpha in (0, 1):
            tail = (i - 1, alpha)
            if tail not in node_set:
                continue
            for label in range(r + 1):
                head = (i, alpha if label % 2 == 0 else 1 - alpha)
                if head not in node_set:
                    continue
                arcs.append(Arc(tail, head, i, label,
                                tuple(range(base, base + label))))
    return FlowNetwork(shape, parity, nodes, tuple(arcs),
                       source=(0, 0), sink=(k, end_bit))


def _point_from_arcs(shape: GroupShape, arcs: Sequence[Arc]) -> GroupedPoint:
    flat = [Fraction(0)] * shape.n
    for arc in arcs:
        for idx in arc.projection:
            flat[idx] = Fraction(1)
    return GroupedPoint.from_flat(shape, flat)


def optimize(shape: GroupShape, parity: ParityClass, objective) -> PathSolution:
    """Minimize a linear objective over the parity polytope by a forward
    shortest-path pass (cost ties broken by smaller label, then lower
    parity bit of the tail)."""
    objective = tuple(as_rat(c) for c in objective)
    if len(objective) != shape.n:
        raise DimensionMismatchError(
            f"objective length {len(objective)} != {shape.n}")
    net = build_network(shape, parity)
    best: dict[Node, tuple[Fraction, tuple[Arc, ...]]] = {net.source: (Fraction(0), ())}
    for i in range(1, shape.k + 1):
        layer_arcs = sorted(net.arcs_in_layer(i), key=lambda a: (a.label, a.tail[1]))
        nxt: dict[Node, tuple[Fraction, tuple[Arc, ...]]] = {}
        for arc in layer_arcs:
            if arc.tail not in best:
                continue
            base_cost, path = best[arc.tail]
            cost = base_cost + sum((objective[j] for j in arc.projection), Fraction(0))
            cur = nxt.get(arc.head)
            if cur is None or cost < cur[0]:
                nxt[arc.head] = (cost, path + (arc,))
        best = nxt
    value, path = best[net.sink]
    return PathSolution(path, value, _point_from_arcs(shape, path))


def enumerate_paths(net: FlowNetwork) -> tuple[tuple[Arc, ...], ...]:
    """All s-t paths, depth-first in arc order."""
    out: list[tuple[Arc, ...]] = []
    by_tail: dict[Node, list[Arc]] = {}
    for arc in net.arcs:
        by_tail.setdefault(arc.tail, []).append(arc)

    def walk(node: Node, path: tuple[Arc, ...]):
        if node == net.sink:
            out.append(path)
            return
        for arc in by_tail.get(node, ()):
            walk(arc.head, path + (arc,))

    walk(net.source, ())
    return tuple(out)


def enumerate_projected_points(shape: GroupShape, parity: ParityClass) -> tuple[GroupedPoint, ...]:
    net = build_network(shape, parity)
    return tuple(_point_from_arcs(shape, path) for path in enumerate_paths(net))


def _flow_rows(net: FlowNetwork, narcs: int):
    """Conservation at internal nodes plus unit outflow at the source."""
    rows = []
    for node in net.nodes:
        if node == net.source or node == net.sink:
            continue
        coeffs = [Fraction(0)] * narcs
        for j, arc in enumerate(net.arcs):
            if arc.head == node:
                coeffs[j] += 1
            if arc.tail == node:
                coeffs[j] -= 1
        rows.append((tuple(coeffs), EQ, Fraction(0)))
    out = [Fraction(0)] * narcs
    for j, arc in enumerate(net.arcs):
        if arc.tail == net.source:
            out[j] += 1
        if arc.head == net.source:
            out[j] -= 1
    rows.append((tuple(out), EQ, Fraction(1)))
    return rows


def membership_lp(shape: GroupShape, parity: ParityClass, point: GroupedPoint) -> bool:
    """Exact feasibility of {unit s-t flow projecting onto the given point}.

    This is the independent membership oracle: it sees only the network,
    never the outer description.
    """
    if point.shape != shape:
        raise DimensionMismatchError(
            f"point has shape {point.shape}, expected {shape}")
    net = build_network(shape, parity)
    narcs = len(net.arcs)
    rows = _flow_rows(net, narcs)
    flat = point.flat()
    for d in range(shape.n):
        coeffs = [Fraction(0)] * narcs
        for j, arc in enumerate(net.arcs):
            if d in arc.projection:
                coeffs[j] += 1
        rows.append((tuple(coeffs), EQ, flat[d]))
    lp = LinearProgram(
        objective=(Fraction(0),) * narcs,
        rows=tuple(rows),
        bounds=((Fraction(0), None),) * narcs,
    )
    return exactlp.solve(lp).status is LPStatus.OPTIMAL


def flow_lp_optimum(shape: GroupShape, parity: ParityClass, objective) -> Fraction:
    """LP optimum of the projected objective over the unit-flow polytope.

    Equals the optimize() path value because the constraint matrix is an
    incidence matrix (integral vertices); the test suite asserts that.
    """
    objective = tuple(as_rat(c) for c in objective)
    if len(objective) != shape.n:
        raise DimensionMismatchError(
            f"objective length {len(objective)} != {shape.n}")
    net = build_network(shape, parity)
    narcs = len(net.arcs)
    arc_costs = tuple(
        sum((objective[j] for j in arc.projection), Fraction(0))
        for arc in net.arcs)
    lp = LinearProgram(
        objective=arc_costs,
        rows=tuple(_flow_rows(net, narcs)),
        bounds=((Fraction(0), None),) * narcs,
    )
    outcome = exactlp.solve(lp)
    assert outcome.status is LPStatus.OPTIMAL
    return outcome.value


def to_dot(net: FlowNetwork) -> str:
    """GraphViz text for documentation figures."""
    def name(node: Node) -> str:
        return f"n{node[0]}_{node[1]}"

    lines = ["digraph flownet {", "  rankdir=LR;"]
    for node in net.nodes:
        shape_attr = ' shape=doublecircle' if node in (net.source, net.sink) else ""
        lines.append(f'  {name(node)} [label="({node[0]},{node[1]})"{shape_attr}];')
    for arc in net.arcs:
        lines.append(f'  {name(arc.tail)} -> {name(arc.head)} [label="{arc.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
