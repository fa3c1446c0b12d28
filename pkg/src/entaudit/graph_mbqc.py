"""Graph states and measurement-based preparation with degree-2 auxiliaries.

An auxiliary vertex adjacent to targets ``a`` and ``b`` implements
``exp(i alpha Z_a Z_b)``: rotate it by ``exp(i alpha X)``, measure Z, and on
outcome 1 apply Z to both neighbours.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import FormatError
from .exact_core import ScaledVector
from .statevector import (PureState, QubitLabel, apply_cz, apply_x, apply_x_rotation, apply_z,
                          init_plus, measure_z, same_state)
from .target_circuit import PARTIES, GateLayout

TARGET = "target"
AUX = "auxiliary"


@dataclass(frozen=True)
class StateGraph:
    vertices: tuple[tuple[QubitLabel, str], ...]
    edges: frozenset[frozenset[QubitLabel]]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))
        labels = self.labels
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate vertices")
        for _, color in self.vertices:
            if color not in (TARGET, AUX):
                raise ValueError(f"unknown vertex color {color!r}")
        for e in self.edges:
            if len(e) != 2:
                raise ValueError("self-loops are not allowed")
            if not e <= set(labels):
                raise ValueError(f"edge {sorted(map(str, e))} uses unknown vertices")

    @classmethod
    def build(cls, targets: Iterable[QubitLabel], aux: Iterable[QubitLabel],
              edges: Iterable[tuple[QubitLabel, QubitLabel]]) -> "StateGraph":
        verts = [(t, TARGET) for t in targets] + [(a, AUX) for a in aux]
        return cls(tuple(verts), frozenset(frozenset(e) for e in edges))

    @property
    def labels(self) -> tuple[QubitLabel, ...]:
        return tuple(v for v, _ in self.vertices)

    @property
    def targets(self) -> tuple[QubitLabel, ...]:
        return tuple(v for v, c in self.vertices if c == TARGET)

    @property
    def auxiliaries(self) -> tuple[QubitLabel, ...]:
        return tuple(v for v, c in self.vertices if c == AUX)

    def neighbours(self, v: QubitLabel) -> tuple[QubitLabel, ...]:
        return tuple(sorted(u for e in self.edges if v in e for u in e if u != v))

    def sorted_edges(self) -> list[tuple[QubitLabel, QubitLabel]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def is_tree(self) -> bool:
        n = len(self.vertices)
        if len(self.edges) != n - 1:
            return False
        parent = {v: v for v in self.labels}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for a, b in self.sorted_edges():
            parent[find(a)] = find(b)
        return len({find(v) for v in self.labels}) == 1

    def check_resource_shape(self) -> None:
        targets = set(self.targets)
        for a in self.auxiliaries:
            nb = self.neighbours(a)
            if len(nb) != 2 or not set(nb) <= targets:
                raise ValueError(f"auxiliary {a} must have exactly two target neighbours")


@dataclass(frozen=True)
class MeasurementPlan:
    steps: tuple[tuple[QubitLabel, float], ...]

    def __post_init__(self):
        steps = tuple((v, float(a)) for v, a in self.steps)
        object.__setattr__(self, "steps", steps)
        seen = [v for v, _ in steps]
        if len(set(seen)) != len(seen):
            raise ValueError("each auxiliary is measured once")
        for _, a in steps:
            if not 0 <= a < 2 * math.pi:
                raise ValueError(f"angle {a} outside [0, 2 pi)")


def build_graph_state(g: StateGraph, mode: str = "exact") -> PureState:
    state = init_plus(g.labels, exact=mode == "exact")
    for a, b in g.sorted_edges():
        state = apply_cz(state, a, b)
    return state


def check_stabilizer(g: StateGraph, v: QubitLabel, *, sign: int = 1,
                     state: PureState | None = None) -> bool:
    """``sign * X_v prod_{u in N(v)} Z_u |G> == |G>`` in exact arithmetic."""
    if v not in g.labels:
        raise KeyError(f"vertex {v} not in graph")
    if state is None:
        state = build_graph_state(g, "exact")
    out = apply_x(state, v)
    for u in g.neighbours(v):
        out = apply_z(out, u)
    e = out.exact
    return ScaledVector.from_parts(sign * e.re, sign * e.im, e.half_power) == state.exact


def layout_to_resource_graph(layout: GateLayout) -> StateGraph:
    """Fifteen-qubit resource graph: targets ``vk:0``, auxiliary ``vi:1`` on gate i."""
    targets = [QubitLabel(p, 0) for p in PARTIES]
    aux = [QubitLabel(PARTIES[i], 1) for i in range(len(layout.pairs))]
    edges = []
    for a_lab, (x, y) in zip(aux, layout.pairs):
        edges.append((a_lab, QubitLabel(x, 0)))
        edges.append((a_lab, QubitLabel(y, 0)))
    return StateGraph.build(targets, aux, edges)


def fig2_graph() -> StateGraph:
    """Auxiliary v1 joined to targets v2 and v3."""
    a, b, c = (QubitLabel(p) for p in ("v1", "v2", "v3"))
    return StateGraph.build([b, c], [a], [(a, b), (a, c)])


def plan_for_layout(alpha: Sequence[float]) -> MeasurementPlan:
    return MeasurementPlan(tuple((QubitLabel(PARTIES[i], 1), a) for i, a in enumerate(alpha)))


def mbqc_prepare(g: StateGraph, plan: MeasurementPlan, branch_choice="both", *,
                 mode: str = "floating", defer_corrections: bool = False,
                 state: PureState | None = None) -> PureState:
    """Run ``plan`` on the graph state of ``g``; result lives on the targets.

    ``branch_choice`` is a sequence of outcome bits (one per plan entry) or
    ``"both"``, which walks every branch and insists they all agree.
    """
    g.check_resource_shape()
    planned = [v for v, _ in plan.steps]
    if set(planned) != set(g.auxiliaries):
        raise ValueError("the plan must measure every auxiliary vertex exactly once")
    if state is None:
        state = build_graph_state(g, mode)
    if isinstance(branch_choice, str):
        if branch_choice != "both":
            raise ValueError("branch_choice must be a bit sequence or 'both'")
        results = [mbqc_prepare(g, plan, bits, mode=mode, defer_corrections=defer_corrections,
                                state=state)
                   for bits in itertools.product((0, 1), repeat=len(plan.steps))]
        first = results[0]
        for other in results[1:]:
            if not _agree(first, other):
                raise AssertionError("measurement branches disagree")
        return first
    bits = tuple(branch_choice)
    if len(bits) != len(plan.steps):
        raise ValueError("one outcome bit per plan entry is required")
    pending: list[QubitLabel] = []
    for (aux, alpha), bit in zip(plan.steps, bits):
        state = apply_x_rotation(state, aux, alpha)
        branch = measure_z(state, aux)[bit]
        if branch.state is None:
            raise ValueError(f"outcome {bit} on {aux} has probability zero")
        state = branch.state
        if bit:
            if defer_corrections:
                pending.extend(g.neighbours(aux))
            else:
                for u in g.neighbours(aux):
                    state = apply_z(state, u)
    for u in pending:
        state = apply_z(state, u)
    return state.reordered(g.targets)


def _agree(a: PureState, b: PureState) -> bool:
    if a.is_exact and b.is_exact:
        return a.exact == b.exact
    return same_state(a, b)


def branch_patterns(count: int, n_aux: int, rng: np.random.Generator) -> list[tuple[int, ...]]:
    """``count`` distinct outcome patterns drawn without replacement."""
    total = 1 << n_aux
    picks = rng.choice(total, size=min(count, total), replace=False)
    return [tuple((int(p) >> (n_aux - 1 - k)) & 1 for k in range(n_aux)) for p in sorted(picks)]


def read_graph(path: str | Path) -> StateGraph:
    """Graph file: ``targets: <labels>``, ``aux: <labels>``, then ``a b`` per edge."""
    path = Path(path)
    lines = [(i, raw.split("#", 1)[0].strip()) for i, raw in enumerate(path.read_text().splitlines(), 1)]
    lines = [(i, s) for i, s in lines if s]
    if len(lines) < 2:
        raise FormatError(path, 0, "need 'targets:' and 'aux:' header lines")
    parsed = {}
    for (lineno, text), key in zip(lines[:2], ("targets", "aux")):
        head, sep, rest = text.partition(":")
        if not sep or head.strip() != key:
            raise FormatError(path, lineno, f"expected '{key}: <labels>'")
        try:
            parsed[key] = [QubitLabel.parse(t) for t in rest.split()]
        except ValueError as exc:
            raise FormatError(path, lineno, str(exc)) from None
    edges = []
    for lineno, text in lines[2:]:
        parts = text.split()
        if len(parts) != 2:
            raise FormatError(path, lineno, f"expected an edge 'a b', got {text!r}")
        try:
            edges.append(tuple(QubitLabel.parse(p) for p in parts))
        except ValueError as exc:
            raise FormatError(path, lineno, str(exc)) from None
    try:
        return StateGraph.build(parsed["targets"], parsed["aux"], edges)
    except ValueError as exc:
        raise FormatError(path, 0, str(exc)) from None


def graph_to_text(g: StateGraph) -> str:
    out = [f"targets: {' '.join(map(str, g.targets))}", f"aux: {' '.join(map(str, g.auxiliaries))}"]
    out += [f"{a} {b}" for a, b in g.sorted_edges()]
    return "\n".join(out) + "\n"
