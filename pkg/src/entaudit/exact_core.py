"""Exact Gaussian-integer arithmetic and fraction-free matrix rank.

Vectors whose amplitudes are Gaussian integers times a global power of
``1/sqrt(2)`` are stored as :class:`ScaledVector`.  Schmidt ranks of such
vectors are computed without any floating point step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True, slots=True)
class GaussInt:
    re: int = 0
    im: int = 0

    @classmethod
    def coerce(cls, value) -> "GaussInt":
        if isinstance(value, GaussInt):
            return value
        if isinstance(value, complex):
            if value.real != int(value.real) or value.imag != int(value.imag):
                raise ValueError(f"{value!r} is not a Gaussian integer")
            return cls(int(value.real), int(value.imag))
        if isinstance(value, (int, np.integer)):
            return cls(int(value), 0)
        if isinstance(value, tuple) and len(value) == 2:
            return cls(int(value[0]), int(value[1]))
        raise TypeError(f"cannot interpret {value!r} as a Gaussian integer")

    def __add__(self, other):
        o = GaussInt.coerce(other)
        return GaussInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussInt.coerce(other)
        return GaussInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussInt.coerce(other) - self

    def __mul__(self, other):
        o = GaussInt.coerce(other)
        return GaussInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def __bool__(self):
        return bool(self.re or self.im)

    def conj(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def exact_div(self, other) -> "GaussInt":
        """Quotient ``self / other``; raises if it is not a Gaussian integer."""
        o = GaussInt.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian integer")
        num = self * o.conj()
        qr, rr = divmod(num.re, n)
        qi, ri = divmod(num.im, n)
        if rr or ri:
            raise ArithmeticError(f"{self} is not divisible by {o}")
        return GaussInt(qr, qi)

    def __complex__(self):
        return complex(self.re, self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


class ScaledVector:
    """Gaussian-integer vector times ``2**(-half_power/2)``.

    Real and imaginary parts are kept as numpy object arrays of Python ints,
    so arithmetic is arbitrary precision while indexing stays vectorised.
    """

    __slots__ = ("_re", "_im", "half_power")

    def __init__(self, entries, half_power: int = 0, *, im=None):
        if im is None:
            items = [GaussInt.coerce(e) for e in entries]
            re = np.array([e.re for e in items], dtype=object)
            im = np.array([e.im for e in items], dtype=object)
        else:
            re = np.array([int(x) for x in entries], dtype=object)
            im = np.array([int(x) for x in im], dtype=object)
        if re.shape != im.shape or re.ndim != 1:
            raise ValueError("real and imaginary parts must be 1-d and equal length")
        if not _is_power_of_two(len(re)):
            raise ValueError(f"length {len(re)} is not a power of two")
        re.flags.writeable = False
        im.flags.writeable = False
        self._re = re
        self._im = im
        self.half_power = int(half_power)

    @classmethod
    def from_parts(cls, re: np.ndarray, im: np.ndarray, half_power: int) -> "ScaledVector":
        # trusted fast path for internal callers that already hold object arrays
        obj = cls.__new__(cls)
        re = np.asarray(re, dtype=object)
        im = np.asarray(im, dtype=object)
        if not _is_power_of_two(len(re)) or re.shape != im.shape:
            raise ValueError("malformed parts")
        re.flags.writeable = False
        im.flags.writeable = False
        obj._re, obj._im, obj.half_power = re, im, int(half_power)
        return obj

    @property
    def re(self) -> np.ndarray:
        return self._re

    @property
    def im(self) -> np.ndarray:
        return self._im

    @property
    def entries(self) -> tuple[GaussInt, ...]:
        return tuple(GaussInt(int(a), int(b)) for a, b in zip(self._re, self._im))

    @property
    def num_qubits(self) -> int:
        return len(self._re).bit_length() - 1

    def __len__(self):
        return len(self._re)

    def is_zero(self) -> bool:
        return not (any(self._re) or any(self._im))

    def norm_squared(self) -> int:
        """Sum of squared moduli of the integer entries (scale not applied)."""
        return int(sum(self._re * self._re) + sum(self._im * self._im))

    def scaled_by(self, factor) -> "ScaledVector":
        f = GaussInt.coerce(factor)
        return ScaledVector.from_parts(
            self._re * f.re - self._im * f.im, self._re * f.im + self._im * f.re, self.half_power
        )

    def to_complex(self) -> np.ndarray:
        scale = 2.0 ** (-self.half_power / 2)
        out = np.empty(len(self._re), dtype=complex)
        out.real = self._re.astype(float)
        out.imag = self._im.astype(float)
        return out * scale

    def __eq__(self, other):
        if not isinstance(other, ScaledVector):
            return NotImplemented
        if len(self) != len(other):
            return False
        lo, hi = (self, other) if self.half_power <= other.half_power else (other, self)
        delta = hi.half_power - lo.half_power
        if delta % 2:
            # sqrt(2) times a nonzero Gaussian integer is never a Gaussian integer
            return lo.is_zero() and hi.is_zero()
        f = 1 << (delta // 2)
        return bool(np.array_equal(lo._re * f, hi._re) and np.array_equal(lo._im * f, hi._im))

    def __hash__(self):
        return hash((len(self), self.half_power))

    def __repr__(self):
        return f"ScaledVector(n={len(self)}, half_power={self.half_power})"


def proportional(a: ScaledVector, b: ScaledVector) -> bool:
    """True when ``a`` and ``b`` span the same ray (global phase and scale ignored)."""
    if len(a) != len(b) or a.is_zero() or b.is_zero():
        return False
    k = next(i for i in range(len(a)) if a.re[i] or a.im[i])
    ak = GaussInt(int(a.re[k]), int(a.im[k]))
    bk = GaussInt(int(b.re[k]), int(b.im[k]))
    # a * b_k == b * a_k entrywise
    lhs = a.scaled_by(bk)
    rhs = b.scaled_by(ak)
    return bool(np.array_equal(lhs.re, rhs.re) and np.array_equal(lhs.im, rhs.im))


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    data: tuple[GaussInt, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.data) != self.rows * self.cols:
            raise ValueError(f"data length {len(self.data)} != {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        data = tuple(GaussInt.coerce(x) for r in rows for x in r)
        return cls(len(rows), ncols, data)

    def row(self, i: int) -> tuple[GaussInt, ...]:
        return self.data[i * self.cols:(i + 1) * self.cols]

    def to_lists(self) -> list[list[GaussInt]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_complex(self) -> np.ndarray:
        return np.array([complex(x) for x in self.data], dtype=complex).reshape(self.rows, self.cols)


def _gram_pairs(rows: list[list[tuple[int, int]]]) -> list[list[tuple[int, int]]]:
    # G = A A^H; rank(G) == rank(A) over the complex numbers
    n = len(rows)
    out = [[(0, 0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            sr = si = 0
            for (ar, ai), (br, bi) in zip(rows[i], rows[j]):
                # a * conj(b)
                sr += ar * br + ai * bi
                si += ai * br - ar * bi
            out[i][j] = (sr, si)
            out[j][i] = (sr, -si)
    return out


def _bareiss_rank(m: list[list[tuple[int, int]]]) -> int:
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    prev_r, prev_i = 1, 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != (0, 0)), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        pr, pi = m[r][c]
        pnorm = prev_r * prev_r + prev_i * prev_i
        prow = m[r]
        for i in range(r + 1, nrows):
            row = m[i]
            fr, fi = row[c]
            new = list(row)
            for j in range(c, ncols):
                xr, xi = row[j]
                yr, yi = prow[j]
                # (pivot * x - f * y) / prev, exact by Sylvester's identity
                nr = pr * xr - pi * xi - (fr * yr - fi * yi)
                ni = pr * xi + pi * xr - (fr * yi + fi * yr)
                qr, rr = divmod(nr * prev_r + ni * prev_i, pnorm)
                qi, ri = divmod(ni * prev_r - nr * prev_i, pnorm)
                if rr or ri:
                    raise ArithmeticError("inexact Bareiss division")
                new[j] = (qr, qi)
            for j in range(c):
                new[j] = (0, 0)
            m[i] = new
        prev_r, prev_i = pr, pi
        r += 1
    return r


def rank_exact(m: ExactMatrix) -> int:
    """Rank over the Gaussian rationals via fraction-free elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    rows = [[(x.re, x.im) for x in m.row(i)] for i in range(m.rows)]
    if m.cols < m.rows:
        rows = [list(col) for col in zip(*rows)]
    if len(rows[0]) > 4 * len(rows):
        rows = _gram_pairs(rows)
    return _bareiss_rank(rows)


def _bit_columns(n: int, positions: Sequence[int]) -> np.ndarray:
    idx = np.arange(1 << n)
    out = np.zeros(1 << n, dtype=np.int64)
    for p in positions:
        out = (out << 1) | ((idx >> (n - 1 - p)) & 1)
    return out


def _split_indices(n: int, left: Iterable[int]) -> tuple[list[int], list[int]]:
    left = sorted(set(int(p) for p in left))
    if any(p < 0 or p >= n for p in left):
        raise ValueError(f"positions {left} out of range for {n} qubits")
    if not left or len(left) == n:
        raise ValueError("degenerate bipartition")
    right = [p for p in range(n) if p not in left]
    return left, right


def matrix_layout(n: int, left: Iterable[int]) -> tuple[np.ndarray, np.ndarray, int, int]:
    """Row and column index of every amplitude under the bipartition ``left``."""
    left, right = _split_indices(n, left)
    return _bit_columns(n, left), _bit_columns(n, right), 1 << len(left), 1 << len(right)


def reshape_to_matrix(v: ScaledVector, left_qubit_positions: Iterable[int]) -> ExactMatrix:
    """Coefficient matrix of ``v`` with ``left`` qubits indexing rows (MSB = qubit 0)."""
    n = v.num_qubits
    rows, cols, nr, nc = matrix_layout(n, left_qubit_positions)
    order = np.empty(1 << n, dtype=np.int64)
    order[rows * nc + cols] = np.arange(1 << n)
    data = tuple(GaussInt(int(v.re[k]), int(v.im[k])) for k in order)
    return ExactMatrix(nr, nc, data)


def schmidt_rank_exact(v: ScaledVector, left: Iterable[int]) -> int:
    """``rank_exact(reshape_to_matrix(v, left))`` without building GaussInt objects."""
    if v.is_zero():
        raise ValueError("Schmidt rank of the zero vector is undefined")
    rows, cols, nr, nc = matrix_layout(v.num_qubits, left)
    re = np.zeros((nr, nc), dtype=object)
    im = np.zeros((nr, nc), dtype=object)
    re[rows, cols] = v.re
    im[rows, cols] = v.im
    if nc < nr:
        re, im = re.T, im.T
    if re.shape[1] > 4 * re.shape[0]:
        # Gram matrix A A^H: (R + iI)(R^T - iI^T)
        g_re = re.dot(re.T) + im.dot(im.T)
        g_im = im.dot(re.T) - re.dot(im.T)
        re, im = g_re, g_im
    pairs = [[(int(a), int(b)) for a, b in zip(ra, ia)] for ra, ia in zip(re, im)]
    return _bareiss_rank(pairs)
