"""Protocols with bounded local registers and sequential qubit sends.

Qubits are labelled by where they currently sit, ``QubitLabel(party, slot)``.
A party of dimension ``2**k`` owns slots ``0..k-1``.  A send moves one qubit
into a free slot of another party and frees the source slot.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from .errors import CapacityError, FormatError, ProtocolError
from .feasibility import Configuration
from .graph_mbqc import StateGraph, build_graph_state
from .statevector import (PureState, QubitLabel, apply_cz, apply_local_unitary, apply_x,
                          apply_x_rotation, apply_z, apply_zz_phase, empty_state, init_plus,
                          measure_z, schmidt_rank, tensor)
from .target_circuit import GateLayout

ONE_QUBIT_GATES = ("h", "x", "z", "xrot", "zrot")
TWO_QUBIT_GATES = ("cz", "zz", "swap")
PARAM_GATES = ("xrot", "zrot", "zz")
GLOBAL_SEARCH_QUBITS = 6
SCHEDULE_BUDGET = 100_000
_H = np.array([[1, 1], [1, -1]]) / math.sqrt(2)


@dataclass(frozen=True)
class AllocPlus:
    party: str
    slot: int

    def to_text(self) -> str:
        return f"alloc {self.party} {self.slot}"


@dataclass(frozen=True)
class LocalGate:
    party: str
    gate: str
    slots: tuple[int, ...]
    param: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(self.slots))
        arity = 1 if self.gate in ONE_QUBIT_GATES else 2 if self.gate in TWO_QUBIT_GATES else None
        if arity is None:
            raise ValueError(f"unknown gate {self.gate!r}")
        if len(self.slots) != arity:
            raise ValueError(f"{self.gate} acts on {arity} slot(s)")
        if arity == 2 and self.slots[0] == self.slots[1]:
            raise ValueError(f"{self.gate} needs two distinct slots")
        if (self.gate in PARAM_GATES) != (self.param is not None):
            raise ValueError(f"{self.gate} parameter mismatch")

    def to_text(self) -> str:
        parts = [self.gate, self.party, *map(str, self.slots)]
        if self.param is not None:
            parts.append(format_angle(self.param))
        return " ".join(parts)


@dataclass(frozen=True)
class MeasureCorrect:
    """Z measurement; outcome 1 applies Z to every qubit in ``corrections``."""

    party: str
    slot: int
    corrections: tuple[QubitLabel, ...] = ()

    def to_text(self) -> str:
        text = f"measure {self.party} {self.slot}"
        if self.corrections:
            text += " zcorrect " + " ".join(map(str, self.corrections))
        return text


@dataclass(frozen=True)
class Send:
    src_party: str
    src_slot: int
    dst_party: str
    dst_slot: int

    def to_text(self) -> str:
        return f"send {self.src_party} {self.src_slot} {self.dst_party} {self.dst_slot}"


ProtocolStep = Union[AllocPlus, LocalGate, MeasureCorrect, Send]


def format_angle(a: float) -> str:
    if a == math.pi / 4:
        return "pi/4"
    return repr(float(a))


def _parse_angle(tok: str) -> float:
    if tok == "pi/4":
        return math.pi / 4
    if tok == "0":
        return 0.0
    return float(tok)


def parse_step(text: str) -> ProtocolStep:
    parts = text.split()
    if not parts:
        raise ValueError("empty step")
    op, args = parts[0], parts[1:]
    if op == "alloc":
        if len(args) != 2:
            raise ValueError("usage: alloc PARTY SLOT")
        return AllocPlus(args[0], int(args[1]))
    if op == "send":
        if len(args) != 4:
            raise ValueError("usage: send PARTY SLOT PARTY SLOT")
        return Send(args[0], int(args[1]), args[2], int(args[3]))
    if op == "measure":
        if len(args) < 2:
            raise ValueError("usage: measure PARTY SLOT [zcorrect LABEL...]")
        corr = ()
        if len(args) > 2:
            if args[2] != "zcorrect":
                raise ValueError(f"unknown measurement option {args[2]!r}")
            corr = tuple(QubitLabel.parse(t) for t in args[3:])
        return MeasureCorrect(args[0], int(args[1]), corr)
    if op in ONE_QUBIT_GATES or op in TWO_QUBIT_GATES:
        arity = 1 if op in ONE_QUBIT_GATES else 2
        want = 1 + arity + (op in PARAM_GATES)
        if len(args) != want:
            raise ValueError(f"{op} expects {want} arguments (a gate acts inside one party)")
        slots = tuple(int(t) for t in args[1:1 + arity])
        param = _parse_angle(args[-1]) if op in PARAM_GATES else None
        return LocalGate(args[0], op, slots, param)
    raise ValueError(f"unknown step {op!r}")


def parse_script(text: str, path: str | Path = "<script>") -> list[ProtocolStep]:
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            steps.append(parse_step(line))
        except ValueError as exc:
            raise FormatError(path, lineno, str(exc)) from None
    return steps


def read_script(path: str | Path) -> list[ProtocolStep]:
    return parse_script(Path(path).read_text(), path)


def script_to_text(script: Iterable[ProtocolStep]) -> str:
    return "".join(s.to_text() + "\n" for s in script)


# --- simulation ---------------------------------------------------------------

def slot_capacity(config: Configuration) -> dict[str, int]:
    caps = {}
    for party, d in config.dims.items():
        if d & (d - 1):
            raise ValueError(f"dimension {d} of {party} is not a power of two")
        caps[party] = d.bit_length() - 1
    return caps


@dataclass
class TraceEntry:
    index: int
    step: str
    occupancy: dict[str, tuple[int, ...]]
    live: int
    cut_ranks: dict[str, int] | None = None


@dataclass
class ProtocolRun:
    state: PureState
    trace: list[TraceEntry]
    outcomes: list[int] = field(default_factory=list)

    @property
    def sends(self) -> int:
        return sum(e.step.startswith("send") for e in self.trace)


BranchPolicy = Union[str, Sequence[int], np.random.Generator, Callable[[int, object], int]]


def _pick_branch(policy, k: int, branches) -> int:
    possible = [b for b in (0, 1) if branches[b].state is not None]
    if isinstance(policy, np.random.Generator):
        p0 = float(branches[0].probability)
        bit = 0 if policy.random() < p0 else 1
    elif policy == "first":
        bit = possible[0]
    elif callable(policy):
        bit = policy(k, branches)
    else:
        bit = int(policy[k])
    if bit not in possible:
        raise ProtocolError(k, f"measurement outcome {bit} has probability zero")
    return bit


def _exact_or_float(fn, state: PureState, *args):
    if state.is_exact:
        try:
            return fn(state, *args)
        except ValueError as exc:
            if "exact" not in str(exc):
                raise
        state = state.to_floating()
    return fn(state, *args)


def _apply_gate(state: PureState, step: LocalGate) -> PureState:
    labs = [QubitLabel(step.party, s) for s in step.slots]
    g = step.gate
    if g == "cz":
        return apply_cz(state, *labs)
    if g == "swap":
        a, b = labs
        tmp = QubitLabel(step.party, -1)
        for old, new in ((a, tmp), (b, a), (tmp, b)):
            if old in state.labels:
                state = state.relabelled(old, new)
        return state
    if g == "x":
        return apply_x(state, labs[0])
    if g == "z":
        return apply_z(state, labs[0])
    if g == "xrot":
        return _exact_or_float(apply_x_rotation, state, labs[0], step.param)
    if g == "zz":
        return _exact_or_float(apply_zz_phase, state, labs[0], labs[1], step.param)
    if g == "zrot":
        u = np.diag([np.exp(1j * step.param), np.exp(-1j * step.param)])
        if state.is_exact and step.param == 0:
            return state
        return apply_local_unitary(state.to_floating(), labs[0], u)
    if g == "h":
        return apply_local_unitary(state.to_floating(), labs[0], _H)
    raise AssertionError(g)


def party_cut_ranks(state: PureState, parties: Iterable[str], exact: bool | None = None) -> dict[str, int]:
    ranks = {}
    for p in parties:
        labs = [lab for lab in state.labels if lab.party == p]
        ranks[p] = 1 if not labs or len(labs) == state.num_qubits else schmidt_rank(state, labs, exact=exact)
    return ranks


def run_protocol(script: Sequence[ProtocolStep], config: Configuration, *,
                 branches: BranchPolicy = "first", exact: bool = True,
                 trace_ranks: bool = True) -> ProtocolRun:
    """Execute ``script`` step by step, validating registers after every step."""
    caps = slot_capacity(config)
    state = empty_state()
    if not exact:
        state = state.to_floating()
    trace: list[TraceEntry] = []
    outcomes: list[int] = []
    n_measure = 0

    def occupied(party):
        return tuple(sorted(lab.slot for lab in state.labels if lab.party == party))

    def require_party(k, party):
        if party not in caps:
            raise ProtocolError(k, f"unknown party {party}")

    def require_free(k, party, slot):
        require_party(k, party)
        if not 0 <= slot < caps[party]:
            raise CapacityError(k, party, f"slot {slot} exceeds {caps[party]} qubit slot(s) "
                                f"(dimension {config.dims[party]})")
        if QubitLabel(party, slot) in state.labels:
            raise ProtocolError(k, f"slot {party}:{slot} is occupied")

    def require_live(k, party, slot):
        require_party(k, party)
        if QubitLabel(party, slot) not in state.labels:
            raise ProtocolError(k, f"no qubit in {party}:{slot}")

    for k, step in enumerate(script):
        live_before = state.num_qubits
        if isinstance(step, AllocPlus):
            require_free(k, step.party, step.slot)
            keep_exact = state.is_exact or (state.num_qubits == 0 and exact)
            state = tensor(state, init_plus([QubitLabel(step.party, step.slot)], exact=keep_exact))
        elif isinstance(step, LocalGate):
            require_party(k, step.party)
            if step.gate == "swap":
                for s in step.slots:
                    if not 0 <= s < caps[step.party]:
                        raise CapacityError(k, step.party, f"slot {s} out of range")
                if not any(QubitLabel(step.party, s) in state.labels for s in step.slots):
                    raise ProtocolError(k, f"swap on two empty slots of {step.party}")
            else:
                for s in step.slots:
                    require_live(k, step.party, s)
            state = _apply_gate(state, step)
        elif isinstance(step, MeasureCorrect):
            require_live(k, step.party, step.slot)
            target = QubitLabel(step.party, step.slot)
            for c in step.corrections:
                if c == target or c not in state.labels:
                    raise ProtocolError(k, f"correction target {c} is not a live qubit")
            br = measure_z(state, target)
            bit = _pick_branch(branches, n_measure, br)
            n_measure += 1
            outcomes.append(bit)
            state = br[bit].state
            if bit:
                for c in step.corrections:
                    state = apply_z(state, c)
        elif isinstance(step, Send):
            require_live(k, step.src_party, step.src_slot)
            if step.dst_party == step.src_party:
                raise ProtocolError(k, "send must go to another party")
            require_free(k, step.dst_party, step.dst_slot)
            state = state.relabelled(QubitLabel(step.src_party, step.src_slot),
                                     QubitLabel(step.dst_party, step.dst_slot))
        else:
            raise ProtocolError(k, f"unknown step {step!r}")

        occ = {p: occupied(p) for p in caps}
        for p, slots in occ.items():
            if (1 << len(slots)) > config.dims[p]:
                raise CapacityError(k, p, f"{len(slots)} live qubits exceed dimension {config.dims[p]}")
        delta = state.num_qubits - live_before
        expected = {AllocPlus: 1, MeasureCorrect: -1}.get(type(step), 0)
        if delta != expected:
            raise AssertionError(f"step {k}: live-qubit count changed by {delta}")
        entry = TraceEntry(k, step.to_text(), occ, state.num_qubits)
        if trace_ranks and isinstance(step, Send):
            entry.cut_ranks = party_cut_ranks(state, caps)
        trace.append(entry)
    return ProtocolRun(state, trace, outcomes)


# --- scheduling the resource graph state -----------------------------------------

def _schedule(graph: StateGraph, caps: dict[str, int]) -> list[tuple]:
    """Party-level schedule building ``graph``, as ``(kind, qubit, party)`` moves.

    Vertices are handled one at a time.  For the current vertex a small A*
    search moves it and its pending neighbours until all its edges are applied
    and every allocated qubit is back at its home party.  Depth-first search
    over the vertex order backtracks when a subproblem has no solution.  Every
    CZ whose ends share a party is applied as soon as possible (CZs commute).
    """
    labels = list(graph.labels)
    parties = sorted(caps)
    pidx = {p: i for i, p in enumerate(parties)}
    home = [pidx[lab.party] for lab in labels]
    cap = [caps[p] for p in parties]
    index = {lab: i for i, lab in enumerate(labels)}
    edges = [(index[a], index[b]) for a, b in graph.sorted_edges()]
    nbrs = [[] for _ in labels]
    for ei, (a, b) in enumerate(edges):
        nbrs[a].append((b, ei))
        nbrs[b].append((a, ei))
    full = (1 << len(edges)) - 1
    n = len(labels)
    for p, c in zip(parties, cap):
        if sum(h == pidx[p] for h in home) > c:
            raise ValueError(f"party {p} cannot hold its {sum(h == pidx[p] for h in home)} qubits")

    def close(loc, done):
        for ei, (a, b) in enumerate(edges):
            if not done >> ei & 1 and loc[a] >= 0 and loc[a] == loc[b]:
                done |= 1 << ei
        return done

    def pending(v, done):
        return [(u, ei) for u, ei in nbrs[v] if not done >> ei & 1]

    def solve_vertex(v, loc, done):
        want = 0
        for _, ei in pending(v, done):
            want |= 1 << ei
        return solve_vertex_set({v, *(u for u, _ in pending(v, done))}, loc, done, want)

    def solve_vertex_set(movers, loc, done, want):
        movers = sorted(movers)

        def goal(node):
            lc, dn = node
            return dn & want == want and all(lc[q] < 0 or lc[q] == home[q] for q in movers)

        def h(lc):
            return sum(1 for q in movers if lc[q] >= 0 and lc[q] != home[q])

        start = (loc, done)
        dist, prev = {start: 0}, {start: None}
        counter = itertools.count()
        heap = [(h(loc), 0, next(counter), start)]
        while heap:
            _, g, _, node = heapq.heappop(heap)
            if g > dist[node]:
                continue
            budget[0] -= 1
            if budget[0] < 0:
                raise RuntimeError("schedule search budget exhausted")
            if goal(node):
                path = []
                end = node
                while prev[node] is not None:
                    node, move = prev[node]
                    path.append(move)
                return path[::-1], end
            lc, dn = node
            load = [0] * len(parties)
            for l in lc:
                if l >= 0:
                    load[l] += 1
            for q in movers:
                targets = {home[q]}
                for u, ei in nbrs[q]:
                    if not dn >> ei & 1:
                        targets.add(lc[u] if lc[u] >= 0 else home[u])
                for w in sorted(targets):
                    if w == lc[q] or load[w] >= cap[w]:
                        continue
                    new_loc = lc[:q] + (w,) + lc[q + 1:]
                    nxt = (new_loc, close(new_loc, dn))
                    ng = g + (lc[q] >= 0)
                    if ng < dist.get(nxt, math.inf):
                        dist[nxt] = ng
                        prev[nxt] = (node, ("alloc" if lc[q] < 0 else "send", q, w))
                        heapq.heappush(heap, (ng + h(new_loc), ng, next(counter), nxt))
        return None

    def dfs(loc, done):
        if done == full:
            moves = [("alloc", q, home[q]) for q in range(n) if loc[q] < 0]
            return moves
        if (loc, done) in dead:
            return None
        order = sorted(range(n), key=lambda v: -len(pending(v, done)))
        for v in order:
            if not pending(v, done):
                continue
            found = solve_vertex(v, loc, done)
            if found is None:
                continue
            moves, (nloc, ndone) = found
            rest = dfs(nloc, ndone)
            if rest is not None:
                return moves + rest
        dead.add((loc, done))
        return None

    dead: set = set()
    budget = [SCHEDULE_BUDGET]

    if n <= GLOBAL_SEARCH_QUBITS:
        found = solve_vertex_set(range(n), tuple([-1] * n), 0, full)
        if found is None:
            raise RuntimeError("no schedule fits the configuration")
        moves, (loc, _) = found
        return moves + [("alloc", q, home[q]) for q in range(n) if loc[q] < 0]
    result = dfs(tuple([-1] * n), 0)
    if result is None:
        raise RuntimeError("no schedule fits the configuration")
    return result


def derive_graph_script(graph: StateGraph, config: Configuration) -> list[ProtocolStep]:
    """Protocol preparing the graph state of ``graph`` with qubits at their labels."""
    caps = slot_capacity(config)
    for lab in graph.labels:
        if lab.party not in caps or not 0 <= lab.slot < caps[lab.party]:
            raise ValueError(f"vertex {lab} does not fit the configuration")
    moves = _schedule(graph, caps)
    labels = list(graph.labels)
    parties = sorted(caps)
    index = {lab: i for i, lab in enumerate(labels)}
    edges = [(index[a], index[b]) for a, b in graph.sorted_edges()]
    where: dict[int, QubitLabel] = {}
    done: set[int] = set()
    script: list[ProtocolStep] = []

    def free_slot(party, q):
        taken = {lab.slot for lab in where.values() if lab.party == party}
        home = labels[q]
        if home.party == party and home.slot not in taken:
            return home.slot
        return min(s for s in range(caps[party]) if s not in taken)

    for kind, q, w in moves:
        party = parties[w]
        slot = free_slot(party, q)
        dst = QubitLabel(party, slot)
        if kind == "alloc":
            script.append(AllocPlus(party, slot))
        else:
            src = where[q]
            script.append(Send(src.party, src.slot, party, slot))
        where[q] = dst
        for ei, (a, b) in enumerate(edges):
            if ei not in done and a in where and b in where and where[a].party == where[b].party:
                done.add(ei)
                script.append(LocalGate(where[a].party, "cz", (where[a].slot, where[b].slot)))
    # every qubit is at its home party; fix slots with local swaps
    for q, lab in enumerate(labels):
        cur = where[q]
        if cur != lab:
            other = next((r for r, l in where.items() if l == lab), None)
            script.append(LocalGate(lab.party, "swap", (cur.slot, lab.slot)))
            where[q] = lab
            if other is not None:
                where[other] = cur
    return script


def derive_phires_script(layout: GateLayout, config: Configuration | None = None) -> list[ProtocolStep]:
    from .feasibility import D0
    from .graph_mbqc import layout_to_resource_graph

    if not layout.is_tree():
        raise ValueError("layout gate graph must be a tree")
    return derive_graph_script(layout_to_resource_graph(layout), config or D0)


@dataclass
class Prop3Report:
    script: list[ProtocolStep]
    run: ProtocolRun
    matches_graph_state: bool

    @property
    def cz_count(self) -> int:
        return sum(isinstance(s, LocalGate) and s.gate == "cz" for s in self.script)

    @property
    def send_count(self) -> int:
        return sum(isinstance(s, Send) for s in self.script)

    @property
    def passed(self) -> bool:
        return self.matches_graph_state


def certify_graph_script(graph: StateGraph, script: Sequence[ProtocolStep],
                         config: Configuration) -> Prop3Report:
    run = run_protocol(script, config, exact=True)
    target = build_graph_state(graph, "exact")
    final = run.state
    ok = sorted(final.labels) == sorted(target.labels) and final.is_exact \
        and final.reordered(target.labels).exact == target.exact
    return Prop3Report(list(script), run, ok)


# --- last-round Schmidt-rank bound ------------------------------------------------

@dataclass
class LastRoundReport:
    cut_party: str
    rank: int
    bound: int

    @property
    def passed(self) -> bool:
        return self.rank <= self.bound


def check_last_round_bound(script: Sequence[ProtocolStep], config: Configuration, cut_party: str,
                           *, branches: BranchPolicy = "first", exact: bool = False) -> LastRoundReport:
    if not script or not isinstance(script[-1], Send) or script[-1].src_party != cut_party:
        raise ValueError("bound applies to last-round senders")
    run = run_protocol(script, config, branches=branches, exact=exact, trace_ranks=False)
    labs = [lab for lab in run.state.labels if lab.party == cut_party]
    if not labs or len(labs) == run.state.num_qubits:
        rank = 1
    else:
        rank = schmidt_rank(run.state, labs)
    return LastRoundReport(cut_party, rank, config.dims[cut_party] // 2)


def random_script(config: Configuration, rng: np.random.Generator, *, last_sender: str,
                  max_len: int = 40) -> list[ProtocolStep]:
    """Random valid script (occupancy-checked) ending with a send from ``last_sender``."""
    caps = slot_capacity(config)
    parties = sorted(caps)
    while True:
        occ = {p: set() for p in parties}
        steps: list[ProtocolStep] = []
        body = int(rng.integers(1, max_len))
        for _ in range(body):
            kinds = []
            if any(len(occ[p]) < caps[p] for p in parties):
                kinds.append("alloc")
            live = [(p, s) for p in parties for s in sorted(occ[p])]
            if live:
                kinds += ["gate1", "measure"]
                if any(len(occ[p]) < caps[p] for p in parties if p != live[0][0]) or len(parties) > 1:
                    kinds.append("send")
            if any(len(occ[p]) >= 2 for p in parties):
                kinds.append("gate2")
            kind = kinds[int(rng.integers(len(kinds)))]
            if kind == "alloc":
                opts = [(p, s) for p in parties for s in range(caps[p]) if s not in occ[p]]
                p, s = opts[int(rng.integers(len(opts)))]
                occ[p].add(s)
                steps.append(AllocPlus(p, s))
            elif kind == "gate1":
                p, s = live[int(rng.integers(len(live)))]
                g = ("h", "x", "z", "xrot", "zrot")[int(rng.integers(5))]
                param = float(rng.uniform(0, 2 * math.pi)) if g in PARAM_GATES else None
                steps.append(LocalGate(p, g, (s,), param))
            elif kind == "gate2":
                cands = [p for p in parties if len(occ[p]) >= 2]
                p = cands[int(rng.integers(len(cands)))]
                a, b = (int(x) for x in rng.choice(sorted(occ[p]), size=2, replace=False))
                g = ("cz", "zz", "swap")[int(rng.integers(3))]
                param = float(rng.uniform(0, 2 * math.pi)) if g == "zz" else None
                steps.append(LocalGate(p, g, (a, b), param))
            elif kind == "measure":
                p, s = live[int(rng.integers(len(live)))]
                others = [QubitLabel(q, t) for q, t in live if (q, t) != (p, s)]
                corr = tuple(o for o in others if rng.random() < 0.3)
                occ[p].discard(s)
                steps.append(MeasureCorrect(p, s, corr))
            else:
                sends = [(p, s, q, t) for p, s in live for q in parties if q != p
                         for t in range(caps[q]) if t not in occ[q]]
                if not sends:
                    continue
                p, s, q, t = sends[int(rng.integers(len(sends)))]
                occ[p].discard(s)
                occ[q].add(t)
                steps.append(Send(p, s, q, t))
        finals = [(last_sender, s, q, t) for s in sorted(occ[last_sender]) for q in parties
                  if q != last_sender for t in range(caps[q]) if t not in occ[q]]
        if not finals:
            continue
        p, s, q, t = finals[int(rng.integers(len(finals)))]
        steps.append(Send(p, s, q, t))
        return steps


@dataclass
class FuzzReport:
    config: Configuration
    cut_party: str
    seed: int
    runs: int
    ranks: list[int]
    bound: int

    @property
    def max_rank(self) -> int:
        return max(self.ranks, default=0)

    @property
    def violations(self) -> int:
        return sum(r > self.bound for r in self.ranks)

    @property
    def passed(self) -> bool:
        return self.runs > 0 and self.violations == 0


def fuzz_last_round(config: Configuration, runs: int, seed: int, cut_party: str = "v1") -> FuzzReport:
    rng = np.random.default_rng(seed)
    ranks = []
    for _ in range(runs):
        script = random_script(config, rng, last_sender=cut_party)
        rep = check_last_round_bound(script, config, cut_party, branches=rng)
        ranks.append(rep.rank)
    return FuzzReport(config, cut_party, seed, runs, ranks, config.dims[cut_party] // 2)


def two_party_script() -> list[ProtocolStep]:
    """Two parties with two slots each; v1 keeps one qubit entangled with both of v2's."""
    return parse_script("""
        alloc v1 0
        alloc v1 1
        cz v1 0 1
        send v1 1 v2 0
        alloc v1 1
        cz v1 0 1
        send v1 1 v2 1
    """)
