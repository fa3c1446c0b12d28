"""Dense pure-state simulation over labelled qubits.

A :class:`PureState` carries either an exact :class:`ScaledVector` (for the
Gaussian-integer gate set: CZ, Paulis and the pi/4 ZZ and X rotations after
rescaling by sqrt(2)) or a normalised complex numpy vector.  Qubit 0 of the
label list is the most significant bit of the amplitude index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .exact_core import ScaledVector, schmidt_rank_exact, matrix_layout

NORM_TOL = 1e-12
STATE_TOL = 1e-9
RANK_RTOL = 1e-9
_PI4 = math.pi / 4


@dataclass(frozen=True, order=True)
class QubitLabel:
    party: str
    slot: int = 0

    def __str__(self):
        return f"{self.party}:{self.slot}"

    @classmethod
    def parse(cls, text: str) -> "QubitLabel":
        party, _, slot = text.strip().partition(":")
        if not party:
            raise ValueError(f"bad qubit label {text!r}")
        return cls(party, int(slot) if slot else 0)


class PureState:
    __slots__ = ("labels", "exact", "vector")

    def __init__(self, labels: Sequence[QubitLabel], *, exact: ScaledVector | None = None,
                 vector: np.ndarray | None = None):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate qubit labels")
        if (exact is None) == (vector is None):
            raise ValueError("exactly one backend must be given")
        n = 1 << len(labels)
        if exact is not None:
            if len(exact) != n:
                raise ValueError("exact vector length does not match labels")
            if exact.is_zero():
                raise ValueError("exact state must be nonzero")
        else:
            vector = np.asarray(vector, dtype=complex)
            if vector.shape != (n,):
                raise ValueError("vector length does not match labels")
            if abs(np.linalg.norm(vector) - 1) > NORM_TOL * max(1, len(labels)):
                raise ValueError("floating state is not normalised")
            vector = vector.copy()
            vector.flags.writeable = False
        self.labels = labels
        self.exact = exact
        self.vector = vector

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def num_qubits(self) -> int:
        return len(self.labels)

    def position(self, label: QubitLabel) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"qubit {label} not present") from None

    def amplitudes(self) -> np.ndarray:
        """Normalised complex amplitudes (exact backend converted)."""
        if self.vector is not None:
            return self.vector
        v = self.exact.to_complex()
        return v / np.linalg.norm(v)

    def to_floating(self) -> "PureState":
        return self if self.vector is not None else PureState(self.labels, vector=self.amplitudes())

    def reordered(self, labels: Sequence[QubitLabel]) -> "PureState":
        """Same state with qubits listed in the order ``labels``."""
        labels = tuple(labels)
        if sorted(labels) != sorted(self.labels):
            raise ValueError("label sets differ")
        n = self.num_qubits
        if n == 0:
            return self
        perm = [self.position(lab) for lab in labels]
        idx = np.arange(1 << n)
        src = np.zeros(1 << n, dtype=np.int64)
        for new_pos, old_pos in enumerate(perm):
            bit = (idx >> (n - 1 - new_pos)) & 1
            src |= bit << (n - 1 - old_pos)
        if self.exact is not None:
            return PureState(labels, exact=ScaledVector.from_parts(
                self.exact.re[src], self.exact.im[src], self.exact.half_power))
        return PureState(labels, vector=self.vector[src])

    def relabelled(self, old: QubitLabel, new: QubitLabel) -> "PureState":
        labels = list(self.labels)
        labels[self.position(old)] = new
        return PureState(labels, exact=self.exact, vector=self.vector)

    def __repr__(self):
        kind = "exact" if self.is_exact else "floating"
        return f"PureState({kind}, labels=[{', '.join(map(str, self.labels))}])"


def empty_state() -> PureState:
    return PureState((), vector=np.ones(1, dtype=complex))


def _bits(state: PureState, label: QubitLabel) -> np.ndarray:
    n = state.num_qubits
    pos = state.position(label)
    return (np.arange(1 << n) >> (n - 1 - pos)) & 1


def _with_exact(state: PureState, re, im, half_power) -> PureState:
    return PureState(state.labels, exact=ScaledVector.from_parts(re, im, half_power))


def _with_vector(state: PureState, vec) -> PureState:
    return PureState(state.labels, vector=vec)


def _negate_where(state: PureState, mask: np.ndarray) -> PureState:
    sign = np.where(mask, -1, 1)
    if state.is_exact:
        e = state.exact
        return _with_exact(state, e.re * sign, e.im * sign, e.half_power)
    return _with_vector(state, state.vector * sign)


def init_plus(labels: Iterable[QubitLabel], *, exact: bool = True) -> PureState:
    labels = tuple(labels)
    if not labels:
        raise ValueError("init_plus needs at least one qubit")
    n = len(labels)
    if exact:
        ones = np.ones(1 << n, dtype=object)
        zeros = np.zeros(1 << n, dtype=object)
        return PureState(labels, exact=ScaledVector.from_parts(ones, zeros, n))
    return PureState(labels, vector=np.full(1 << n, 2.0 ** (-n / 2), dtype=complex))


def tensor(a: PureState, b: PureState) -> PureState:
    """Product state with ``a``'s qubits first."""
    if a.num_qubits == 0:
        return b
    if b.num_qubits == 0:
        return a
    if a.is_exact and b.is_exact:
        ea, eb = a.exact, b.exact
        re = np.outer(ea.re, eb.re) - np.outer(ea.im, eb.im)
        im = np.outer(ea.re, eb.im) + np.outer(ea.im, eb.re)
        return PureState(a.labels + b.labels, exact=ScaledVector.from_parts(
            re.ravel(), im.ravel(), ea.half_power + eb.half_power))
    return PureState(a.labels + b.labels, vector=np.kron(a.amplitudes(), b.amplitudes()))


def apply_cz(s: PureState, a: QubitLabel, b: QubitLabel) -> PureState:
    if a == b:
        raise ValueError("CZ needs two distinct qubits")
    return _negate_where(s, (_bits(s, a) & _bits(s, b)).astype(bool))


def apply_z(s: PureState, label: QubitLabel) -> PureState:
    return _negate_where(s, _bits(s, label).astype(bool))


def apply_x(s: PureState, label: QubitLabel) -> PureState:
    n = s.num_qubits
    flip = np.arange(1 << n) ^ (1 << (n - 1 - s.position(label)))
    if s.is_exact:
        return _with_exact(s, s.exact.re[flip], s.exact.im[flip], s.exact.half_power)
    return _with_vector(s, s.vector[flip])


def _exact_angle(alpha: float) -> bool:
    """True for pi/4, False for 0 (mod 2 pi); raises otherwise."""
    a = math.fmod(alpha, 2 * math.pi)
    if a < 0:
        a += 2 * math.pi
    if abs(a) < 1e-12 or abs(a - 2 * math.pi) < 1e-12:
        return False
    if abs(a - _PI4) < 1e-12:
        return True
    raise ValueError("exact mode supports alpha in {0, pi/4} only")


def apply_zz_phase(s: PureState, a: QubitLabel, b: QubitLabel, alpha: float) -> PureState:
    """``exp(i alpha Z_a Z_b)``; exact backend uses the rescaled pi/4 gate diag(1+i, 1-i, 1-i, 1+i)."""
    if a == b:
        raise ValueError("ZZ phase needs two distinct qubits")
    parity = (_bits(s, a) ^ _bits(s, b)).astype(bool)
    if s.is_exact:
        if not _exact_angle(alpha):
            return s
        e = s.exact
        sign = np.where(parity, -1, 1)
        # (re + i im)(1 + i sign)
        return _with_exact(s, e.re - sign * e.im, e.im + sign * e.re, e.half_power + 1)
    phase = np.where(parity, np.exp(-1j * alpha), np.exp(1j * alpha))
    return _with_vector(s, s.vector * phase)


def apply_x_rotation(s: PureState, label: QubitLabel, alpha: float) -> PureState:
    """``exp(i alpha X)``; exact backend uses the rescaled pi/4 gate [[1, i], [i, 1]]."""
    n = s.num_qubits
    flip = np.arange(1 << n) ^ (1 << (n - 1 - s.position(label)))
    if s.is_exact:
        if not _exact_angle(alpha):
            return s
        e = s.exact
        return _with_exact(s, e.re - e.im[flip], e.im + e.re[flip], e.half_power + 1)
    return _with_vector(s, math.cos(alpha) * s.vector + 1j * math.sin(alpha) * s.vector[flip])


def apply_local_unitary(s: PureState, label: QubitLabel, u) -> PureState:
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or not np.allclose(u.conj().T @ u, np.eye(2), atol=1e-10):
        raise ValueError("u is not a 2x2 unitary")
    if s.is_exact:
        if np.allclose(u, np.eye(2), atol=0):
            return s
        if np.array_equal(u, np.array([[0, 1], [1, 0]])):
            return apply_x(s, label)
        if np.array_equal(u, np.diag([1, -1])):
            return apply_z(s, label)
        raise ValueError("exact backend supports only I, X and Z as one-qubit gates")
    n = s.num_qubits
    bit = _bits(s, label)
    flip = np.arange(1 << n) ^ (1 << (n - 1 - s.position(label)))
    v = s.vector
    # new[b] = u[b, b] v[b] + u[b, 1-b] v[flip]
    out = u[bit, bit] * v + u[bit, 1 - bit] * v[flip]
    return _with_vector(s, out)


def apply_two_qubit_unitary(s: PureState, a: QubitLabel, b: QubitLabel, u) -> PureState:
    """Arbitrary 4x4 unitary on (a, b), basis order |ab>; floating backend only."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (4, 4) or not np.allclose(u.conj().T @ u, np.eye(4), atol=1e-10):
        raise ValueError("u is not a 4x4 unitary")
    if a == b:
        raise ValueError("two-qubit gate needs distinct qubits")
    s = s.to_floating()
    rest = [lab for lab in s.labels if lab not in (a, b)]
    t = s.reordered([a, b, *rest])
    mat = t.vector.reshape(4, -1)
    out = PureState(t.labels, vector=(u @ mat).ravel())
    return out.reordered(s.labels)


class Branch(NamedTuple):
    probability: float | Fraction
    state: PureState | None  # None marks a zero-probability branch


def measure_z(s: PureState, label: QubitLabel) -> tuple[Branch, Branch]:
    """Both outcomes of a Z measurement, post-states with the qubit removed."""
    keep = [lab for lab in s.labels if lab != label]
    bit = _bits(s, label)
    branches = []
    if s.is_exact:
        e = s.exact
        total = e.norm_squared()
        for b in (0, 1):
            sel = bit == b
            re, im = e.re[sel], e.im[sel]
            weight = int(sum(re * re) + sum(im * im))
            p = Fraction(weight, total)
            if weight == 0:
                branches.append(Branch(p, None))
                continue
            if not keep:
                branches.append(Branch(p, empty_state()))
                continue
            hp = e.half_power
            # renormalise exactly when p is a power of 1/2
            if p.numerator == 1 and p.denominator & (p.denominator - 1) == 0:
                hp -= p.denominator.bit_length() - 1
            branches.append(Branch(p, PureState(keep, exact=ScaledVector.from_parts(re, im, hp))))
        return branches[0], branches[1]
    v = s.vector
    for b in (0, 1):
        sub = v[bit == b]
        p = float(np.vdot(sub, sub).real)
        if p < 1e-24:
            branches.append(Branch(p, None))
        elif not keep:
            branches.append(Branch(p, empty_state()))
        else:
            branches.append(Branch(p, PureState(keep, vector=sub / math.sqrt(p))))
    return branches[0], branches[1]


def overlap(a: PureState, b: PureState) -> float:
    """``|<a|b>|`` after aligning b's qubit order to a's."""
    b = b.reordered(a.labels)
    return float(abs(np.vdot(a.amplitudes(), b.amplitudes())))


def same_state(a: PureState, b: PureState, tol: float = STATE_TOL) -> bool:
    if sorted(a.labels) != sorted(b.labels):
        return False
    return overlap(a, b) >= 1 - tol


def coefficient_matrix(s: PureState, left: Iterable[QubitLabel]) -> np.ndarray:
    pos = [s.position(lab) for lab in left]
    rows, cols, nr, nc = matrix_layout(s.num_qubits, pos)
    mat = np.zeros((nr, nc), dtype=complex)
    mat[rows, cols] = s.amplitudes()
    return mat


def float_rank(mat: np.ndarray, rtol: float = RANK_RTOL) -> int:
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.count_nonzero(sv > rtol * sv[0]))


def schmidt_rank(s: PureState, left: Iterable[QubitLabel], *, exact: bool | None = None) -> int:
    """Schmidt rank across ``left`` versus the rest.

    Exact backends use fraction-free elimination unless ``exact=False``.
    """
    left = list(left)
    if not left or len(set(left)) == s.num_qubits:
        return 1
    if exact is None:
        exact = s.is_exact
    if exact:
        if not s.is_exact:
            raise ValueError("exact rank requested for a floating state")
        return schmidt_rank_exact(s.exact, [s.position(lab) for lab in left])
    return float_rank(coefficient_matrix(s, left))
