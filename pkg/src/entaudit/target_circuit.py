"""The eight-qubit ZZ-phase circuit family and its gate connectivity."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

from .errors import FormatError
from .statevector import PureState, QubitLabel, apply_zz_phase, init_plus

NUM_PARTIES = 8
NUM_GATES = 7
PARTIES = tuple(f"v{k}" for k in range(1, NUM_PARTIES + 1))
PI4 = math.pi / 4


def _components(vertices, pairs) -> int:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        parent[find(a)] = find(b)
    return len({find(v) for v in vertices})


@dataclass(frozen=True)
class GateLayout:
    """Seven ZZ-phase gates given as party pairs, applied in list order."""

    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        pairs = tuple(tuple(p) for p in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if len(pairs) != NUM_GATES:
            raise ValueError(f"a layout has exactly {NUM_GATES} gates, got {len(pairs)}")
        for a, b in pairs:
            if a == b:
                raise ValueError(f"gate on ({a}, {b}) needs distinct endpoints")
            if a not in PARTIES or b not in PARTIES:
                raise ValueError(f"unknown party in ({a}, {b})")
        if _components(PARTIES, pairs) != 1:
            raise ValueError("gate graph is disconnected; psi(pi/4) could not be fully entangled")

    @classmethod
    def from_indices(cls, pairs: Sequence[tuple[int, int]]) -> "GateLayout":
        return cls(tuple((f"v{a}", f"v{b}") for a, b in pairs))

    def is_tree(self) -> bool:
        # 7 edges on 8 vertices, connected
        return len({frozenset(p) for p in self.pairs}) == NUM_GATES

    def to_text(self) -> str:
        return "".join(f"{a} {b}\n" for a, b in self.pairs)

    def __str__(self):
        return " ".join(f"{a}-{b}" for a, b in self.pairs)


# Frozen output of search_default_layout(); test_target_circuit re-derives it.
DEFAULT_LAYOUT = GateLayout.from_indices([(1, 2), (1, 3), (1, 4), (1, 5), (1, 8), (2, 6), (3, 7)])

ALPHA_ZERO = (0.0,) * NUM_GATES
ALPHA_PI4 = (PI4,) * NUM_GATES


def check_alphas(alpha: Sequence[float]) -> tuple[float, ...]:
    alpha = tuple(float(a) for a in alpha)
    if len(alpha) != NUM_GATES:
        raise ValueError(f"need {NUM_GATES} angles, got {len(alpha)}")
    for a in alpha:
        if not 0 <= a < 2 * math.pi:
            raise ValueError(f"angle {a} outside [0, 2 pi)")
    return alpha


def target_labels() -> tuple[QubitLabel, ...]:
    return tuple(QubitLabel(p, 0) for p in PARTIES)


def build_target_state(layout: GateLayout, alpha: Sequence[float], mode: str = "floating",
                       *, check_range: bool = True) -> PureState:
    """``prod_i exp(i alpha_i Z Z on pairs[i]) |+>^8``, one qubit per party.

    ``mode="exact"`` accepts only angles 0 and pi/4.
    """
    if mode not in ("exact", "floating"):
        raise ValueError(f"unknown mode {mode!r}")
    alpha = check_alphas(alpha) if check_range else tuple(float(a) for a in alpha)
    if len(alpha) != NUM_GATES:
        raise ValueError(f"need {NUM_GATES} angles")
    state = init_plus(target_labels(), exact=mode == "exact")
    for (a, b), angle in zip(layout.pairs, alpha):
        state = apply_zz_phase(state, QubitLabel(a, 0), QubitLabel(b, 0), angle)
    return state


def read_layout(path: str | Path) -> GateLayout:
    """Parse a layout file: seven lines ``vi vj`` (blank lines and ``#`` comments skipped)."""
    path = Path(path)
    pairs = []
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(path, lineno, f"expected 'vi vj', got {raw!r}")
        if any(p not in PARTIES for p in parts):
            raise FormatError(path, lineno, f"parties must be among v1..v8, got {raw!r}")
        pairs.append((parts[0], parts[1]))
    try:
        return GateLayout(tuple(pairs))
    except ValueError as exc:
        raise FormatError(path, 0, str(exc)) from None


def candidate_tree_layouts() -> Iterator[GateLayout]:
    """Spanning trees of K8 in lexicographic order of their sorted edge lists."""
    edges = list(itertools.combinations(range(1, NUM_PARTIES + 1), 2))
    for combo in itertools.combinations(edges, NUM_GATES):
        if _components(range(1, NUM_PARTIES + 1), combo) == 1:
            yield GateLayout.from_indices(combo)


def candidate_connected_layouts() -> Iterator[GateLayout]:
    """Connected 7-gate multigraph layouts that are not trees (fallback search)."""
    edges = list(itertools.combinations(range(1, NUM_PARTIES + 1), 2))
    for combo in itertools.combinations_with_replacement(edges, NUM_GATES):
        if len(set(combo)) < NUM_GATES and _components(range(1, NUM_PARTIES + 1), combo) == 1:
            yield GateLayout.from_indices(combo)


def search_default_layout(*, max_candidates: int | None = None) -> tuple[GateLayout, int]:
    """First canonical layout whose psi(pi/4) defeats every line tree.

    Returns the layout and its 1-based position in the candidate order.
    """
    from .feasibility import escapes_all_line_trees, verify_prop2

    def scan(candidates):
        for pos, layout in enumerate(candidates, 1):
            if max_candidates is not None and pos > max_candidates:
                return None
            if escapes_all_line_trees(layout):
                report = verify_prop2(layout)
                if not report.passed:
                    raise AssertionError(f"chain search and full check disagree on {layout}")
                return layout, pos
        return None

    found = scan(candidate_tree_layouts())
    if found is None:
        found = scan(candidate_connected_layouts())
    if found is None:
        raise RuntimeError("no 7-gate layout separates multipartite from bipartite resources")
    return found
