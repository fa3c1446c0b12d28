"""Bipartite-resource feasibility: tree Schmidt-rank condition, admissible
distributions under a local-dimension budget, and the line-tree verifier."""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import FormatError
from .exact_core import ScaledVector, schmidt_rank_exact
from .statevector import PureState, QubitLabel, schmidt_rank
from .target_circuit import (ALPHA_PI4, ALPHA_ZERO, PARTIES, GateLayout,
                             build_target_state)

MAX_ENUM_PARTIES = 10


@dataclass(frozen=True)
class Configuration:
    dims: Mapping[str, int]

    def __post_init__(self):
        dims = dict(self.dims)
        for party, d in dims.items():
            if int(d) != d or d < 1:
                raise ValueError(f"dimension of {party} must be a positive integer")
        object.__setattr__(self, "dims", dims)

    @property
    def parties(self) -> tuple[str, ...]:
        return tuple(self.dims)

    def __hash__(self):
        return hash(tuple(self.dims.items()))


D0 = Configuration({**{f"v{k}": 4 for k in range(1, 8)}, "v8": 2})
D1 = Configuration({"v1": 4, "v2": 2, "v3": 2, "v4": 2})
PRESETS = {"d0": D0, "d1": D1}


def read_config(source: str | Path) -> Configuration:
    """Preset name (``d0``, ``d1``) or a file of ``party dim`` lines."""
    if str(source) in PRESETS:
        return PRESETS[str(source)]
    path = Path(source)
    if not path.exists():
        raise FormatError(path, 0, "no such preset or file")
    dims = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
            raise FormatError(path, lineno, f"expected 'party dim', got {raw!r}")
        if parts[0] in dims:
            raise FormatError(path, lineno, f"party {parts[0]} listed twice")
        dims[parts[0]] = int(parts[1])
    if not dims:
        raise FormatError(path, 0, "empty configuration")
    return Configuration(dims)


def _edge(a: str, b: str) -> tuple[str, str]:
    return (a, b) if (a, b) <= (b, a) else (b, a)


@dataclass(frozen=True)
class ResourceGraph:
    """Parties joined by maximally entangled pairs of Schmidt rank ``M_e``."""

    vertices: tuple[str, ...]
    capacities: tuple[tuple[tuple[str, str], int], ...]

    def __post_init__(self):
        caps = tuple(sorted((_edge(*e), int(m)) for e, m in self.capacities))
        object.__setattr__(self, "capacities", caps)
        object.__setattr__(self, "vertices", tuple(self.vertices))
        seen = set()
        for (a, b), m in caps:
            if a == b or a not in self.vertices or b not in self.vertices:
                raise ValueError(f"bad edge ({a}, {b})")
            if (a, b) in seen:
                raise ValueError(f"duplicate edge ({a}, {b})")
            if m < 2:
                raise ValueError("edge capacities must be at least 2")
            seen.add((a, b))

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Mapping[tuple[str, str], int]) -> "ResourceGraph":
        return cls(tuple(vertices), tuple(edges.items()))

    @property
    def edges(self) -> tuple[tuple[str, str], ...]:
        return tuple(e for e, _ in self.capacities)

    def capacity(self, a: str, b: str) -> int:
        return dict(self.capacities)[_edge(a, b)]

    def degree(self, v: str) -> int:
        return sum(v in e for e in self.edges)

    def load(self, v: str) -> int:
        return math.prod(m for e, m in self.capacities if v in e)

    def fits(self, config: Configuration) -> bool:
        return all(self.load(v) <= config.dims[v] for v in self.vertices)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == len(self.vertices)

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges) == len(self.vertices) - 1

    def is_path_with_endpoint(self, v: str) -> bool:
        return self.is_tree() and all(self.degree(u) <= 2 for u in self.vertices) \
            and self.degree(v) <= 1

    def side_of(self, edge: tuple[str, str]) -> frozenset[str]:
        """Vertices on ``edge[0]``'s side once ``edge`` is deleted (trees only)."""
        a, b = edge
        adj = {v: set() for v in self.vertices}
        for x, y in self.edges:
            if {x, y} != {a, b}:
                adj[x].add(y)
                adj[y].add(x)
        seen = {a}
        stack = [a]
        while stack:
            for w in adj[stack.pop()] - seen:
                seen.add(w)
                stack.append(w)
        return frozenset(seen)


@dataclass(frozen=True)
class LineTree:
    """Path ``u1 - u2 - ... - u7 - v8`` of Bell pairs."""

    order: tuple[str, ...]
    terminal: str = "v8"

    @property
    def path(self) -> tuple[str, ...]:
        return self.order + (self.terminal,)

    @property
    def edges(self) -> tuple[tuple[str, str], ...]:
        p = self.path
        return tuple(zip(p, p[1:]))

    def prefix(self, j: int) -> frozenset[str]:
        return frozenset(self.order[:j])

    def resource_graph(self, capacity: int = 2) -> ResourceGraph:
        return ResourceGraph.build(self.path, {e: capacity for e in self.edges})


def line_trees(parties: Sequence[str] = PARTIES[:7], terminal: str = "v8") -> list[LineTree]:
    return [LineTree(tuple(p), terminal) for p in itertools.permutations(parties)]


@dataclass(frozen=True)
class EdgeCheck:
    edge: tuple[str, str]
    capacity: int
    rank: int

    @property
    def ok(self) -> bool:
        return self.capacity >= self.rank


@dataclass(frozen=True)
class TreeFeasibility:
    feasible: bool
    edges: tuple[EdgeCheck, ...]


def _party_labels(target: PureState, parties: Iterable[str]) -> list[QubitLabel]:
    parties = set(parties)
    return [lab for lab in target.labels if lab.party in parties]


def tree_feasible(tree: ResourceGraph, target: PureState, table: "CutRankTable | None" = None) -> TreeFeasibility:
    """``M_e >= R_e`` for every edge of an acyclic resource graph.

    ``table`` optionally memoises exact ranks of ``target`` across calls.
    """
    if not tree.is_connected():
        raise ValueError("resource tree must be connected")
    if len(tree.edges) != len(tree.vertices) - 1:
        raise ValueError("the rank condition applies to trees only")
    if {lab.party for lab in target.labels} != set(tree.vertices):
        raise ValueError("target parties do not match tree vertices")
    checks = []
    for edge, m in tree.capacities:
        side = tree.side_of(edge)
        r = table.rank(side) if table is not None else schmidt_rank(target, _party_labels(target, side))
        checks.append(EdgeCheck(edge, m, r))
    return TreeFeasibility(all(c.ok for c in checks), tuple(checks))


def enumerate_admissible_distributions(config: Configuration) -> list[ResourceGraph]:
    """Every connected capacity assignment (``M_e >= 2``) within the per-party budgets."""
    parties = config.parties
    n = len(parties)
    if n > MAX_ENUM_PARTIES:
        raise ValueError(f"{n} parties exceeds the enumeration guard of {MAX_ENUM_PARTIES}")
    if n == 1:
        return [ResourceGraph(parties, ())]
    pairs = list(itertools.combinations(parties, 2))
    budget = dict(config.dims)
    load = {p: 1 for p in parties}
    chosen: list[tuple[tuple[str, str], int]] = []
    found = []
    # last pair index touching each party; a party still unconnected after it is dead
    last_use = {}
    for i, (a, b) in enumerate(pairs):
        last_use[a] = i
        last_use[b] = i

    def rec(i):
        if i == len(pairs):
            if len(chosen) >= n - 1:
                g = ResourceGraph(parties, tuple(chosen))
                if g.is_connected():
                    found.append(g)
            return
        a, b = pairs[i]
        # option: no edge
        if not ((last_use[a] == i and load[a] == 1) or (last_use[b] == i and load[b] == 1)):
            rec(i + 1)
        top = min(budget[a] // load[a], budget[b] // load[b])
        for m in range(2, top + 1):
            load[a] *= m
            load[b] *= m
            chosen.append(((a, b), m))
            rec(i + 1)
            chosen.pop()
            load[a] //= m
            load[b] //= m

    rec(0)
    return sorted(found, key=lambda g: g.capacities)


# --- line-tree verification -------------------------------------------------

def _threads(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    env = os.environ.get("ENTAUDIT_THREADS")
    return max(1, int(env)) if env and env.isdigit() else 1


def _rank_job(args):
    vec, positions = args
    return schmidt_rank_exact(vec, positions)


class CutRankTable:
    """Exact Schmidt ranks of an exact state, memoised per party subset."""

    def __init__(self, state: PureState):
        if not state.is_exact:
            raise ValueError("cut-rank table needs an exact state")
        self.state = state
        self._cache: dict[frozenset[str], int] = {}

    def _positions(self, parties: frozenset[str]) -> list[int]:
        return [i for i, lab in enumerate(self.state.labels) if lab.party in parties]

    def rank(self, parties: Iterable[str]) -> int:
        key = frozenset(parties)
        if key not in self._cache:
            pos = self._positions(key)
            if not pos or len(pos) == self.state.num_qubits:
                self._cache[key] = 1
            else:
                self._cache[key] = schmidt_rank_exact(self.state.exact, pos)
        return self._cache[key]

    def fill(self, subsets: Sequence[frozenset[str]], threads: int = 1) -> None:
        todo = [s for s in dict.fromkeys(subsets) if s not in self._cache]
        if threads > 1 and len(todo) > 1:
            jobs = [(self.state.exact, self._positions(s)) for s in todo]
            with ProcessPoolExecutor(max_workers=threads) as pool:
                for s, r in zip(todo, pool.map(_rank_job, jobs, chunksize=8)):
                    self._cache[s] = r
        else:
            for s in todo:
                self.rank(s)

    def items(self):
        return sorted(self._cache.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))


@dataclass(frozen=True)
class TreeRecord:
    index: int
    order: tuple[str, ...]
    ranks: tuple[int, ...]
    witness: tuple[str, str] | None
    witness_prefix: int | None

    @property
    def violated(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "permutation": list(self.order),
            "ranks": list(self.ranks),
            "witness_edge": list(self.witness) if self.witness else None,
            "witness_prefix": self.witness_prefix,
            "verdict": "PASS" if self.violated else "FAIL",
        }


@dataclass
class Prop2Report:
    layout: GateLayout
    alpha: str
    half_power: int
    integer_entries: bool
    records: list[TreeRecord]
    cut_ranks: dict[frozenset[str], int] = field(repr=False)

    @property
    def violated_count(self) -> int:
        return sum(r.violated for r in self.records)

    @property
    def passed(self) -> bool:
        return bool(self.records) and self.violated_count == len(self.records)

    def summary(self) -> str:
        hist = {}
        for r in self.records:
            hist[max(r.ranks)] = hist.get(max(r.ranks), 0) + 1
        lines = [
            f"layout: {self.layout}",
            f"alpha: {self.alpha}  half_power: {self.half_power}  integer entries: {self.integer_entries}",
            f"line trees violated: {self.violated_count}/{len(self.records)}",
            "max rank per tree: " + ", ".join(f"{k}: {v}" for k, v in sorted(hist.items())),
            f"verdict: {'PASS' if self.passed else 'FAIL'}",
        ]
        return "\n".join(lines)


def _integral(vec: ScaledVector) -> bool:
    return all(isinstance(x, int) for x in vec.re) and all(isinstance(x, int) for x in vec.im)


def verify_prop2(layout: GateLayout, alpha: str = "pi4", threads: int | None = None) -> Prop2Report:
    """Exact prefix-cut Schmidt ranks of psi(alpha) for all 5040 line trees.

    A tree is violated when some prefix cut has rank above 2; the report
    passes when every tree is violated.
    """
    angles = {"pi4": ALPHA_PI4, "zero": ALPHA_ZERO}[alpha]
    state = build_target_state(layout, angles, "exact")
    table = CutRankTable(state)
    trees = line_trees()
    prefixes = [t.prefix(j) for t in trees for j in range(1, 8)]
    table.fill(sorted(set(prefixes), key=lambda s: (len(s), sorted(s))), _threads(threads))
    records = []
    for idx, tree in enumerate(trees):
        ranks = tuple(table.rank(tree.prefix(j)) for j in range(1, 8))
        hit = next((j for j, r in enumerate(ranks, 1) if r > 2), None)
        witness = tree.edges[hit - 1] if hit else None
        records.append(TreeRecord(idx, tree.order, ranks, witness, hit))
    return Prop2Report(layout, alpha, state.exact.half_power, _integral(state.exact), records,
                       dict(table.items()))


def escapes_all_line_trees(layout: GateLayout, alpha: str = "pi4") -> bool:
    """True iff no ordering of v1..v7 keeps every prefix cut at rank <= 2.

    Searches for a chain of low-rank prefix sets, evaluating ranks lazily.
    """
    angles = {"pi4": ALPHA_PI4, "zero": ALPHA_ZERO}[alpha]
    table = CutRankTable(build_target_state(layout, angles, "exact"))
    movable = PARTIES[:7]
    full = frozenset(movable)
    dead: set[frozenset[str]] = set()

    def chain(prefix: frozenset[str]) -> bool:
        if prefix == full:
            return True
        for p in movable:
            if p in prefix:
                continue
            nxt = prefix | {p}
            if nxt in dead:
                continue
            if table.rank(nxt) <= 2 and chain(nxt):
                return True
            dead.add(nxt)
        return False

    return not chain(frozenset())


@dataclass
class WarmupReport:
    ghz: TreeFeasibility
    w: TreeFeasibility
    distributions_222: list[ResourceGraph]

    @property
    def passed(self) -> bool:
        return self.ghz.feasible and self.w.feasible and not self.distributions_222


def ghz_w_warmup() -> WarmupReport:
    labels = [QubitLabel(p) for p in ("A", "B", "C")]
    ghz = PureState(labels, exact=ScaledVector([1, 0, 0, 0, 0, 0, 0, 1], 1))
    # W left unnormalised: ranks are scale invariant
    w = PureState(labels, exact=ScaledVector([0, 1, 1, 0, 1, 0, 0, 0], 0))
    line = ResourceGraph.build(("A", "B", "C"), {("A", "B"): 2, ("B", "C"): 2})
    return WarmupReport(
        tree_feasible(line, ghz),
        tree_feasible(line, w),
        enumerate_admissible_distributions(Configuration({"A": 2, "B": 2, "C": 2})),
    )
