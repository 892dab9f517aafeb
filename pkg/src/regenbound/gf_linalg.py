"""
Dense linear algebra over prime fields GF(q).

Matrices are small (a few hundred cells), so everything is done with
numpy int64 arrays and reduced mod q after every operation.  Subspaces of
GF(q)^m are kept in a canonical form (reduced column echelon basis) so
that two spanning sets of the same space give identical objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    q: int = 2

    def __post_init__(self):
        if not isinstance(self.q, (int, np.integer)) or not is_prime(int(self.q)):
            raise ValueError(f"field modulus must be prime, got {self.q!r}")
        if self.q >= 2**31:
            raise ValueError("field modulus must stay below 2**31 (int64 products)")

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(%d)" % self.q)
        return pow(int(a), -1, self.q)

    def neg(self, a: int) -> int:
        return (-a) % self.q


class FieldMatrix:
    """Immutable dense matrix over GF(q)."""

    __slots__ = ("field", "_a")

    def __init__(self, field: FieldSpec | int, entries, shape: tuple[int, int] | None = None):
        if isinstance(field, int):
            field = FieldSpec(field)
        a = np.array(entries, dtype=np.int64)
        if shape is not None:
            a = a.reshape(shape)
        elif a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2:
            raise ValueError(f"matrix entries must be 2-dimensional, got shape {a.shape}")
        a %= field.q
        a.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_a", a)

    def __setattr__(self, name, value):
        raise AttributeError("FieldMatrix is immutable")

    # constructors

    @classmethod
    def zeros(cls, field: FieldSpec | int, rows: int, cols: int) -> "FieldMatrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec | int, size: int) -> "FieldMatrix":
        return cls(field, np.eye(size, dtype=np.int64))

    @classmethod
    def hstack(cls, field: FieldSpec, blocks: Sequence["FieldMatrix"], rows: int) -> "FieldMatrix":
        if not blocks:
            return cls.zeros(field, rows, 0)
        return cls(field, np.hstack([b.array for b in blocks]))

    @classmethod
    def vstack(cls, field: FieldSpec, blocks: Sequence["FieldMatrix"], cols: int) -> "FieldMatrix":
        if not blocks:
            return cls.zeros(field, 0, cols)
        return cls(field, np.vstack([b.array for b in blocks]))

    @classmethod
    def block_diag(cls, field: FieldSpec, a: "FieldMatrix", b: "FieldMatrix") -> "FieldMatrix":
        out = np.zeros((a.rows + b.rows, a.cols + b.cols), dtype=np.int64)
        out[: a.rows, : a.cols] = a.array
        out[a.rows :, a.cols :] = b.array
        return cls(field, out)

    # accessors

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def T(self) -> "FieldMatrix":
        return FieldMatrix(self.field, self._a.T)

    def tolist(self) -> list[list[int]]:
        return self._a.tolist()

    def is_zero(self) -> bool:
        return not self._a.any()

    def __getitem__(self, key) -> "FieldMatrix":
        sub = self._a[key]
        if sub.ndim != 2:
            raise IndexError("FieldMatrix indexing must keep both axes; use slices")
        return FieldMatrix(self.field, sub)

    def take_cols(self, idx: Iterable[int]) -> "FieldMatrix":
        return FieldMatrix(self.field, self._a[:, list(idx)].reshape(self.rows, -1))

    def thick_col(self, j: int, width: int) -> "FieldMatrix":
        """Columns of the 1-based thick column ``j`` of block width ``width``."""
        return self[:, (j - 1) * width : j * width]

    def thick_cols(self, nodes: Iterable[int], width: int) -> "FieldMatrix":
        idx = [c for j in nodes for c in range((j - 1) * width, j * width)]
        return self.take_cols(idx)

    def block(self, i: int, j: int, width: int) -> "FieldMatrix":
        return self[(i - 1) * width : i * width, (j - 1) * width : j * width]

    # arithmetic

    def _check(self, other: "FieldMatrix"):
        if self.field != other.field:
            raise ValueError(f"field mismatch: GF({self.q}) vs GF({other.q})")

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return FieldMatrix(self.field, _matmul_mod(self._a, other._a, self.q))

    def __add__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        return FieldMatrix(self.field, self._a + other._a)

    def __sub__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"cannot subtract {self.shape} and {other.shape}")
        return FieldMatrix(self.field, self._a - other._a)

    def __neg__(self) -> "FieldMatrix":
        return FieldMatrix(self.field, -self._a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and np.array_equal(self._a, other._a)

    def __hash__(self):
        return hash((self.q, self.shape, self._a.tobytes()))

    def __repr__(self):
        return f"FieldMatrix(GF({self.q}), {self.tolist()})"


def _matmul_mod(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    # int64 overflow is impossible while inner_dim * (q-1)^2 < 2**63
    if a.shape[1] * (q - 1) ** 2 < 2**62:
        return (a @ b) % q
    return (np.array(a, dtype=object) @ np.array(b, dtype=object) % q).astype(np.int64)


def rref(a: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod q and the pivot columns.

    Pivot choice is the first nonzero entry at or below the current row.
    """
    r = np.array(a, dtype=np.int64) % q
    m, n = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.flatnonzero(r[row:, col])
        if nz.size == 0:
            continue
        p = row + int(nz[0])
        if p != row:
            r[[row, p]] = r[[p, row]]
        r[row] = (r[row] * pow(int(r[row, col]), -1, q)) % q
        factors = r[:, col].copy()
        factors[row] = 0
        if factors.any():
            r = (r - np.outer(factors, r[row])) % q
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m: FieldMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter axis
    a = m.array if m.rows <= m.cols else m.array.T
    return len(rref(a, m.q)[1])


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of GF(q)^ambient_dim, stored as a canonical column basis."""

    ambient_dim: int
    basis: FieldMatrix

    def __post_init__(self):
        if self.basis.rows != self.ambient_dim:
            raise ValueError(f"basis has {self.basis.rows} rows, ambient dimension is {self.ambient_dim}")

    @property
    def dim(self) -> int:
        return self.basis.cols

    @property
    def field(self) -> FieldSpec:
        return self.basis.field

    def contains(self, vectors: FieldMatrix) -> bool:
        """True iff every column of ``vectors`` lies in this subspace."""
        if vectors.cols == 0:
            return True
        stacked = FieldMatrix.hstack(self.field, [self.basis, vectors], self.ambient_dim)
        return rank(stacked) == self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim} in GF({self.field.q})^{self.ambient_dim})"


def _from_rows(field: FieldSpec, rows: np.ndarray, ambient: int) -> Subspace:
    """Canonical subspace spanned by the rows of ``rows``."""
    if rows.shape[0] == 0 or ambient == 0:
        return Subspace(ambient, FieldMatrix.zeros(field, ambient, 0))
    r, piv = rref(rows.reshape(-1, ambient), field.q)
    return Subspace(ambient, FieldMatrix(field, r[: len(piv)].T.reshape(ambient, len(piv))))


def span(vectors: FieldMatrix) -> Subspace:
    """Canonical subspace spanned by the columns of ``vectors``."""
    return _from_rows(vectors.field, vectors.array.T, vectors.rows)


column_space = span


def zero_subspace(field: FieldSpec, ambient: int) -> Subspace:
    return Subspace(ambient, FieldMatrix.zeros(field, ambient, 0))


def kernel(m: FieldMatrix) -> Subspace:
    """Right null space {x : m x = 0}."""
    n = m.cols
    if m.rows == 0:
        return span(FieldMatrix.identity(m.field, n))
    r, piv = rref(m.array, m.q)
    free = [c for c in range(n) if c not in set(piv)]
    vecs = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        vecs[k, f] = 1
        for i, p in enumerate(piv):
            vecs[k, p] = -r[i, f]
    return _from_rows(m.field, vecs % m.q, n)


def _check_ambient(u: Subspace, v: Subspace):
    if u.ambient_dim != v.ambient_dim:
        raise ValueError(f"ambient dimension mismatch: {u.ambient_dim} vs {v.ambient_dim}")
    if u.field != v.field:
        raise ValueError(f"field mismatch: GF({u.field.q}) vs GF({v.field.q})")


def _zassenhaus(u: Subspace, v: Subspace) -> tuple[Subspace, Subspace]:
    """Sum and intersection of two subspaces in one elimination.

    Row-reduce [[u, u], [v, 0]]; rows with a nonzero left half span u + v,
    rows whose left half vanished carry a basis of u ∩ v on the right.
    """
    _check_ambient(u, v)
    f, m = u.field, u.ambient_dim
    top = np.hstack([u.basis.array.T, u.basis.array.T])
    bottom = np.hstack([v.basis.array.T, np.zeros((v.dim, m), dtype=np.int64)])
    stacked = np.vstack([top, bottom]).reshape(-1, 2 * m)
    r, piv = rref(stacked, f.q)
    r = r[: len(piv)]
    left = [i for i, p in enumerate(piv) if p < m]
    right = [i for i, p in enumerate(piv) if p >= m]
    total = _from_rows(f, r[left, :m], m)
    meet = _from_rows(f, r[right, m:], m)
    return total, meet


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    return _zassenhaus(u, v)[0]


def subspace_intersection(u: Subspace, v: Subspace) -> Subspace:
    return _zassenhaus(u, v)[1]


# independent oracle ---------------------------------------------------------

ORACLE_LIMIT = 8


def _int_det(rows: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def brute_rank_oracle(m: FieldMatrix) -> int:
    """Rank as the size of the largest minor that is nonzero mod q.

    Enumerates every square submatrix, largest first; shares no code with
    :func:`rank`.
    """
    if m.rows > ORACLE_LIMIT or m.cols > ORACLE_LIMIT:
        raise ValueError(f"oracle limited to {ORACLE_LIMIT}x{ORACLE_LIMIT}, got {m.shape}")
    a = m.tolist()
    for size in range(min(m.rows, m.cols), 0, -1):
        for rs in combinations(range(m.rows), size):
            for cs in combinations(range(m.cols), size):
                if _int_det([[a[i][j] for j in cs] for i in rs]) % m.q:
                    return size
    return 0
