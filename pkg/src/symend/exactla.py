"""Dense exact linear algebra over a finite field.

Matrices are int64 numpy arrays in the element encoding of
:mod:`symend.gf`; every function takes the :class:`~symend.gf.Field`
explicitly.  Vectors are rows.  Subspaces are stored by their reduced row
echelon basis, so equal subspaces have identical serializations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .gf import Field, FieldSpec, field_from_spec

__all__ = [
    "Mat",
    "Subspace",
    "as_array",
    "identity",
    "zeros",
    "matmul",
    "add",
    "sub",
    "scale",
    "lincomb",
    "rref",
    "rank",
    "nullspace",
    "left_nullspace",
    "span",
    "solve_linear",
    "inverse",
    "kron",
    "jordan_block",
    "elementary",
    "invertible_in_span",
    "mat_to_json",
    "mat_from_json",
]


def as_array(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros(rows: int, cols: int | None = None) -> np.ndarray:
    return np.zeros((rows, rows if cols is None else cols), dtype=np.int64)


def elementary(n: int, i: int, j: int, m: int | None = None) -> np.ndarray:
    """E_ij with 1-based indices."""
    E = zeros(n, m)
    E[i - 1, j - 1] = 1
    return E


def matmul(F: Field, A, B) -> np.ndarray:
    return kernels.matmul(F, A, B)


def add(F: Field, A, B) -> np.ndarray:
    return F.vadd(A, B)


def sub(F: Field, A, B) -> np.ndarray:
    return F.vsub(A, B)


def scale(F: Field, c: int, A) -> np.ndarray:
    return F.vmul(np.full(np.shape(A), c, dtype=np.int64), A)


def lincomb(F: Field, coeffs, mats) -> np.ndarray:
    """Σ coeffs[i] * mats[i] for a sequence (or stacked array) of equal-shape arrays."""
    mats = as_array(mats)
    shape = mats.shape[1:]
    flat = mats.reshape(mats.shape[0], -1)
    out = kernels.matmul(F, as_array(coeffs).reshape(1, -1), flat)
    return out.reshape(shape)


def rref(F: Field, M) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    R = np.array(M, dtype=np.int64, copy=True, order="C")
    if R.ndim != 2:
        raise ValueError("rref expects a matrix")
    piv = kernels.rref_inplace(F, R)
    return R[: len(piv)].copy(), piv


def rank(F: Field, M) -> int:
    M = as_array(M)
    if M.size == 0:
        return 0
    # eliminate along the shorter side
    if M.shape[0] > M.shape[1]:
        M = M.T
    return len(rref(F, M)[1])


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F^n given by its reduced row echelon basis."""

    field: Field
    ambient_dim: int
    basis: np.ndarray
    pivots: np.ndarray

    @classmethod
    def from_rref(cls, F: Field, n: int, R: np.ndarray, piv: np.ndarray) -> "Subspace":
        R = as_array(R).reshape(len(piv), n)
        R.setflags(write=False)
        piv = as_array(piv)
        piv.setflags(write=False)
        return cls(F, n, R, piv)

    @classmethod
    def zero(cls, F: Field, n: int) -> "Subspace":
        return cls.from_rref(F, n, zeros(0, n), np.zeros(0, dtype=np.int64))

    @classmethod
    def full(cls, F: Field, n: int) -> "Subspace":
        return cls.from_rref(F, n, identity(n), np.arange(n, dtype=np.int64))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self):
        return self.dim

    def coords(self, v) -> np.ndarray:
        """Coordinates of v in the echelon basis, assuming v lies in the space."""
        return as_array(v)[..., self.pivots]

    def reduce(self, v) -> np.ndarray:
        """v minus its projection along the echelon basis (zero iff v is inside)."""
        v = as_array(v)
        if self.dim == 0:
            return v.copy()
        v2 = np.atleast_2d(v)
        proj = kernels.matmul(self.field, v2[:, self.pivots], self.basis)
        out = self.field.vsub(v2, proj)
        return out.reshape(v.shape)

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def contains_all(self, vs) -> bool:
        vs = as_array(vs)
        if vs.size == 0:
            return True
        return not self.reduce(vs.reshape(-1, self.ambient_dim)).any()

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and other.ambient_dim == self.ambient_dim
            and np.array_equal(other.pivots, self.pivots)
            and np.array_equal(other.basis, self.basis)
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis.tobytes()))

    def is_subspace_of(self, other: "Subspace") -> bool:
        return other.contains_all(self.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        return span(self.field, np.vstack([self.basis, other.basis]), self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        F, n = self.field, self.ambient_dim
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(F, n)
        stacked = np.vstack([self.basis, other.basis])
        rel = left_nullspace(F, stacked)
        if rel.dim == 0:
            return Subspace.zero(F, n)
        vecs = kernels.matmul(F, rel.basis[:, : self.dim], self.basis)
        return span(F, vecs, n)

    def complement_coords(self) -> np.ndarray:
        """Coordinates not used as pivots; unit vectors there span a complement."""
        mask = np.ones(self.ambient_dim, dtype=bool)
        mask[self.pivots] = False
        return np.flatnonzero(mask)

    def to_json(self) -> dict:
        return {
            "field": self.field.spec.serialize(),
            "ambient_dim": self.ambient_dim,
            "basis": [[self.field.to_hex(x) for x in row] for row in self.basis],
        }

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def span(F: Field, vectors, n: int | None = None) -> Subspace:
    vectors = as_array(vectors)
    if n is None:
        n = vectors.shape[-1]
    vectors = vectors.reshape(-1, n)
    if vectors.shape[0] == 0:
        return Subspace.zero(F, n)
    R, piv = rref(F, vectors)
    return Subspace.from_rref(F, n, R, piv)


def nullspace(F: Field, M) -> Subspace:
    """{v : M v = 0} as a canonical Subspace; every basis vector is checked."""
    M = as_array(M)
    rows, cols = M.shape
    if rows == 0:
        return Subspace.full(F, cols)
    R, piv = rref(F, M)
    free = np.setdiff1d(np.arange(cols), piv)
    if free.size == 0:
        return Subspace.zero(F, cols)
    N = zeros(free.size, cols)
    N[np.arange(free.size), free] = 1
    if len(piv):
        N[:, piv] = F.vneg(R[:, free].T)
    check = kernels.matmul(F, M, N.T)
    if check.any():  # pragma: no cover - guards the elimination kernel
        raise ArithmeticError("nullspace vector failed substitution check")
    return span(F, N, cols)


def left_nullspace(F: Field, M) -> Subspace:
    """{c : c M = 0}."""
    return nullspace(F, as_array(M).T)


def solve_linear(F: Field, A, b) -> np.ndarray | None:
    """A particular solution of A x = b, or None when inconsistent."""
    A = as_array(A)
    b = as_array(b).reshape(-1)
    rows, cols = A.shape
    if b.shape[0] != rows:
        raise ValueError("dimension mismatch in solve_linear")
    aug = np.hstack([A, b[:, None]])
    R, piv = rref(F, aug)
    if len(piv) and piv[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    x[piv] = R[:, cols]
    if not np.array_equal(kernels.matmul(F, A, x[:, None]).reshape(-1), b):  # pragma: no cover
        raise ArithmeticError("solve_linear substitution check failed")
    return x


def inverse(F: Field, A) -> np.ndarray | None:
    """Exact inverse of a square matrix, or None if singular."""
    A = as_array(A)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.hstack([A, identity(n)])
    R, piv = rref(F, aug)
    if len(piv) < n or piv[n - 1] != n - 1:
        return None
    inv = R[:, n:].copy()
    if not np.array_equal(kernels.matmul(F, A, inv), identity(n)):  # pragma: no cover
        raise ArithmeticError("inverse verification failed")
    return inv


def kron(F: Field, A, B) -> np.ndarray:
    """Kronecker product: (A ⊗ B)[i*m + k, j*m + l] = A[i, j] B[k, l]."""
    A = as_array(A)
    B = as_array(B)
    prod = F.vmul(A[:, None, :, None], B[None, :, None, :])
    return prod.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])


def jordan_block(F: Field, m: int, lam: int) -> np.ndarray:
    """Upper triangular m×m block with lam on the diagonal and 1 above it."""
    if m < 1:
        raise ValueError("Jordan block size must be at least 1")
    J = np.diag(np.full(m, int(lam), dtype=np.int64))
    J[np.arange(m - 1), np.arange(1, m)] = 1
    return J


def invertible_in_span(
    F: Field,
    basis: Sequence[np.ndarray] | np.ndarray,
    trials: int = 4,
    rng_seed: int | np.random.Generator = 0,
) -> np.ndarray | None:
    """Coefficients of an invertible combination of ``basis``, or None.

    Each trial draws uniform coefficients; if the span contains an
    invertible matrix, a trial misses with probability at most n/q, so
    None is wrong with probability at most (n/q)^trials.
    """
    mats = as_array(basis)
    if mats.ndim != 3 or mats.shape[0] == 0:
        raise ValueError("invertible_in_span needs a nonempty basis of square matrices")
    k, n, n2 = mats.shape
    if n != n2:
        raise ValueError("basis matrices must be square")
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    for _ in range(trials):
        c = F.random(rng, k)
        if not c.any():
            continue
        S = lincomb(F, c, mats)
        if rank(F, S) == n and inverse(F, S) is not None:
            return c
    return None


@dataclass(frozen=True)
class Mat:
    """A matrix tagged with its field, for serialization at API boundaries."""

    field: FieldSpec
    entries: np.ndarray

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def to_json(self) -> dict:
        F = field_from_spec(self.field)
        return {
            "field": self.field.serialize(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": [F.to_hex(x) for x in self.entries.reshape(-1)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Mat":
        spec = FieldSpec.parse(data["field"])
        F = field_from_spec(spec)
        rows, cols = int(data["rows"]), int(data["cols"])
        vals = [F.from_hex(s) for s in data["entries"]]
        if len(vals) != rows * cols:
            raise ValueError("entry count does not match dimensions")
        return cls(spec, np.array(vals, dtype=np.int64).reshape(rows, cols))

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and other.field == self.field
            and np.array_equal(other.entries, self.entries)
        )


def mat_to_json(F: Field, M) -> str:
    return json.dumps(Mat(F.spec, as_array(M)).to_json())


def mat_from_json(text: str) -> tuple[Field, np.ndarray]:
    m = Mat.from_json(json.loads(text))
    return field_from_spec(m.field), m.entries


def stack_rows(arrs: Iterable[np.ndarray], n: int) -> np.ndarray:
    arrs = [as_array(a).reshape(-1, n) for a in arrs]
    if not arrs:
        return zeros(0, n)
    return np.vstack(arrs)
