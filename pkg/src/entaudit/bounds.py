"""Local-dimension lower bound for distributing bipartite resources on K_{2m}.

Each edge ``e`` of the complete graph on ``2m`` parties carries a maximally
entangled state of Schmidt rank ``M_e``.  To reach a state that is maximally
entangled across every balanced cut with local size ``d``, each balanced cut
needs ``prod_{e in C} M_e >= d**m``.  A party's load is the product of the
capacities on its incident edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

SEARCH_GUARD = 10 ** 8

Edge = tuple[int, int]


def complete_edges(m: int) -> list[Edge]:
    return list(itertools.combinations(range(2 * m), 2))


@dataclass(frozen=True)
class CutAssignment:
    m: int
    d: int
    capacities: tuple[tuple[Edge, int], ...]

    def __post_init__(self):
        if self.m < 1 or self.d < 2:
            raise ValueError("need m >= 1 and d >= 2")
        caps = dict(self.capacities)
        if sorted(caps) != complete_edges(self.m):
            raise ValueError("every edge of the complete graph needs a capacity")
        if any(int(v) < 1 for v in caps.values()):
            raise ValueError("capacities must be at least 1")
        object.__setattr__(self, "capacities", tuple(sorted((e, int(v)) for e, v in caps.items())))

    @classmethod
    def build(cls, m: int, d: int, capacities: Mapping[Edge, int] | list[int]) -> "CutAssignment":
        if not isinstance(capacities, Mapping):
            capacities = dict(zip(complete_edges(m), capacities))
        return cls(m, d, tuple(capacities.items()))

    @classmethod
    def uniform(cls, m: int, d: int, value: int) -> "CutAssignment":
        return cls.build(m, d, {e: value for e in complete_edges(m)})

    def capacity(self, a: int, b: int) -> int:
        return dict(self.capacities)[(min(a, b), max(a, b))]

    def loads(self) -> list[int]:
        out = [1] * (2 * self.m)
        for (a, b), v in self.capacities:
            out[a] *= v
            out[b] *= v
        return out

    def max_load(self) -> int:
        return max(self.loads())


def balanced_cuts(m: int) -> list[frozenset[int]]:
    """One side of each balanced bipartition; the side holding vertex 0."""
    n = 2 * m
    return [frozenset((0, *rest)) for rest in itertools.combinations(range(1, n), m - 1)]


def cut_condition_holds(a: CutAssignment) -> tuple[bool, frozenset[int] | None]:
    need = a.d ** a.m
    caps = dict(a.capacities)
    for side in balanced_cuts(a.m):
        prod = 1
        for (x, y), v in caps.items():
            if (x in side) != (y in side):
                prod *= v
        if prod < need:
            return False, side
    return True, None


def local_dim_lower_bound(m: int, d: int) -> float:
    if m < 1 or d < 2:
        raise ValueError("need m >= 1 and d >= 2")
    return d ** (2 - 1 / m)


def meets_lower_bound(load: int, m: int, d: int) -> bool:
    """``load >= d**(2 - 1/m)`` decided in integers: ``load**m >= d**(2m-1)``."""
    return load ** m >= d ** (2 * m - 1)


def int_root_ceil(d: int, m: int) -> int:
    """Smallest ``k`` with ``k**m >= d``."""
    k = 1
    while k ** m < d:
        k += 1
    return k


@dataclass
class BruteForceReport:
    m: int
    d: int
    cap: int
    minimum: int
    witness: CutAssignment
    passing: int
    violations: int

    @property
    def bound(self) -> float:
        return local_dim_lower_bound(self.m, self.d)

    @property
    def passed(self) -> bool:
        return self.violations == 0


def brute_force_min_max_load(m: int, d: int, cap: int) -> BruteForceReport:
    """Exhaustive search over capacities in ``1..cap``; ties broken lexicographically."""
    edges = complete_edges(m)
    if cap ** len(edges) > SEARCH_GUARD:
        raise ValueError(f"search space {cap}^{len(edges)} exceeds {SEARCH_GUARD}; "
                         "use the symmetric assignment check instead")
    best = None
    passing = violations = 0
    for values in itertools.product(range(1, cap + 1), repeat=len(edges)):
        a = CutAssignment.build(m, d, list(values))
        if not cut_condition_holds(a)[0]:
            continue
        passing += 1
        load = a.max_load()
        if not meets_lower_bound(load, m, d):
            violations += 1
        if best is None or load < best[0]:
            best = (load, a)
    if best is None:
        raise ValueError(f"no assignment with capacities <= {cap} satisfies the cut condition")
    return BruteForceReport(m, d, cap, best[0], best[1], passing, violations)


@dataclass
class SymmetricReport:
    m: int
    d: int
    edge_capacity: int
    load: int
    condition_holds: bool
    cut_product: int
    required: int

    @property
    def bound(self) -> float:
        return local_dim_lower_bound(self.m, self.d)

    @property
    def ratio(self) -> float:
        return self.load / self.bound


def symmetric_assignment_check(m: int, d: int) -> SymmetricReport:
    if not (1 <= m <= 8 and 2 <= d <= 64):
        raise ValueError("symmetric check supports 1 <= m <= 8 and 2 <= d <= 64")
    k = int_root_ceil(d, m)
    a = CutAssignment.uniform(m, d, k)
    ok, _ = cut_condition_holds(a)
    return SymmetricReport(m, d, k, k ** (2 * m - 1), ok, k ** (m * m), d ** m)


def min_integer_load(m: int, d: int) -> int:
    """Smallest integer load meeting the bound."""
    k = 1
    while not meets_lower_bound(k, m, d):
        k += 1
    return k
