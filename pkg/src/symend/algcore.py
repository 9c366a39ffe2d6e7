"""Structure of finite-dimensional associative algebras over finite fields.

An :class:`Algebra` is stored by structure constants ``C[i, j, k]`` with
``b_i b_j = sum_k C[i, j, k] b_k``; algebras of matrices additionally keep
the matrices so that products can be formed as matrix products.  Elements
are coordinate row vectors.

The radical is computed from the Frobenius map on A/[A,A]: in
characteristic p the set T(A) of elements with some p-power inside [A,A]
is a subspace, and J(A) is the largest two-sided ideal inside T(A).  The
result is always validated (ideal, nilpotent, semisimple quotient).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Literal

import numpy as np

from . import exactla as la
from . import kernels
from .gf import Field, FieldSpec, field_from_spec

Side = Literal["left", "right", "two-sided"]

# associativity of structure-constant input is checked exhaustively up to this dim
ASSOC_EXHAUSTIVE_DIM = 40


class AlgebraError(ValueError):
    pass


class InternalCheckError(AssertionError):
    """A computed object failed one of its own exact validation checks."""


@dataclass(frozen=True, eq=False)
class IdealData:
    subspace: la.Subspace
    side: Side

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def to_json(self) -> dict:
        return {"side": self.side, **self.subspace.to_json()}


class Algebra:
    """AlgebraPresentation: structure constants, unit, optional matrix basis."""

    def __init__(self, F: Field, C: np.ndarray, unit: np.ndarray,
                 mats: np.ndarray | None = None, mat_pivots: np.ndarray | None = None,
                 check: bool = True):
        C = la.as_array(C)
        d = C.shape[0]
        if C.shape != (d, d, d):
            raise AlgebraError("structure constants must have shape (d, d, d)")
        self.F = F
        self.dim = d
        self.C = C
        self.unit = la.as_array(unit).reshape(d)
        self.mats = mats
        self.mat_pivots = mat_pivots
        if check:
            self._check_unit()
            if mats is None:
                self._check_associative()

    # -- constructors
    @classmethod
    def from_matrices(cls, F: Field, mats, check: bool = True) -> "Algebra":
        """Algebra spanned by square matrices (must contain the identity).

        The basis is replaced by the reduced echelon basis of the span, so an
        element's coordinates are its flattened entries at the pivot positions.
        """
        mats = la.as_array(mats)
        if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
            raise AlgebraError("matrix basis must be a stack of square matrices")
        n = mats.shape[1]
        space = la.span(F, mats.reshape(mats.shape[0], n * n), n * n)
        d = space.dim
        B = space.basis.reshape(d, n, n)
        piv = space.pivots
        P = _pairwise_matrix_products(F, B, B)  # (d, d, n*n)
        flat = P.reshape(d * d, n * n)
        if check and not space.contains_all(flat):
            raise AlgebraError("matrix span is not closed under multiplication")
        C = flat[:, piv].reshape(d, d, d)
        I = la.identity(n).reshape(-1)
        if check and not space.contains(I):
            raise AlgebraError("matrix span does not contain the identity")
        unit = I[piv]
        return cls(F, C, unit, mats=B, mat_pivots=piv, check=check)

    @classmethod
    def from_structure_constants(cls, F: Field, C, unit) -> "Algebra":
        return cls(F, C, unit)

    def structure_only(self) -> "Algebra":
        """Same algebra and basis with the matrix realization dropped."""
        return Algebra(self.F, self.C, self.unit, check=False)

    def regular_matrix_algebra(self) -> "Algebra":
        """Matrix-basis presentation through the left regular representation."""
        return Algebra.from_matrices(self.F, self.L)

    def permuted(self, perm) -> "Algebra":
        """Same algebra with basis vectors reordered: new b_a = old b_perm[a]."""
        perm = np.asarray(perm)
        inv = np.argsort(perm)
        C = self.C[np.ix_(perm, perm)][:, :, perm]
        return Algebra(self.F, C, self.unit[perm], check=False)

    # -- checks
    def _check_unit(self):
        d = self.dim
        Lu = self.left_op(self.unit)
        Ru = self.right_op(self.unit)
        I = la.identity(d)
        if not (np.array_equal(Lu, I) and np.array_equal(Ru, I)):
            raise AlgebraError("unit is not a two-sided identity")

    def _check_associative(self, rng_seed: int = 0):
        d = self.dim
        F = self.F
        if d <= ASSOC_EXHAUSTIVE_DIM:
            # (b_i b_j) b_k  versus  b_i (b_j b_k)
            lhs = la.matmul(F, self.C.reshape(d * d, d), self.C.reshape(d, d * d))
            lhs = lhs.reshape(d, d, d, d)
            tmp = la.matmul(F, self.C.reshape(d * d, d), self.C.transpose(1, 0, 2).reshape(d, d * d))
            rhs = tmp.reshape(d, d, d, d).transpose(2, 0, 1, 3)
            if not np.array_equal(lhs, rhs):
                raise AlgebraError("structure constants are not associative")
        else:
            rng = np.random.default_rng(rng_seed)
            for _ in range(8):
                x, y, z = (F.random(rng, d) for _ in range(3))
                if not np.array_equal(self.mul(self.mul(x, y), z), self.mul(x, self.mul(y, z))):
                    raise AlgebraError("structure constants are not associative")

    # -- regular representations
    @cached_property
    def Lflat(self) -> np.ndarray:
        """Row i holds L_{b_i} flattened: L_{b_i}[k, j] = C[i, j, k]."""
        d = self.dim
        return np.ascontiguousarray(self.C.transpose(0, 2, 1).reshape(d, d * d))

    @cached_property
    def Rflat(self) -> np.ndarray:
        """Row i holds R_{b_i} flattened: R_{b_i}[k, j] = C[j, i, k]."""
        d = self.dim
        return np.ascontiguousarray(self.C.transpose(1, 2, 0).reshape(d, d * d))

    @property
    def L(self) -> np.ndarray:
        return self.Lflat.reshape(self.dim, self.dim, self.dim)

    @property
    def R(self) -> np.ndarray:
        return self.Rflat.reshape(self.dim, self.dim, self.dim)

    def left_op(self, x) -> np.ndarray:
        """Matrix of y -> x y (acting on column coordinate vectors)."""
        d = self.dim
        return la.matmul(self.F, la.as_array(x).reshape(1, d), self.Lflat).reshape(d, d)

    def right_op(self, x) -> np.ndarray:
        d = self.dim
        return la.matmul(self.F, la.as_array(x).reshape(1, d), self.Rflat).reshape(d, d)

    def left_ops(self, X) -> np.ndarray:
        d = self.dim
        X = la.as_array(X).reshape(-1, d)
        return la.matmul(self.F, X, self.Lflat).reshape(-1, d, d)

    def right_ops(self, X) -> np.ndarray:
        d = self.dim
        X = la.as_array(X).reshape(-1, d)
        return la.matmul(self.F, X, self.Rflat).reshape(-1, d, d)

    # -- element arithmetic
    def to_matrix(self, x) -> np.ndarray:
        n = self.mats.shape[1]
        return la.lincomb(self.F, x, self.mats).reshape(n, n)

    def from_matrix(self, X) -> np.ndarray:
        return la.as_array(X).reshape(-1)[self.mat_pivots]

    def mul(self, x, y) -> np.ndarray:
        x = la.as_array(x)
        y = la.as_array(y)
        if self.mats is not None:
            return self.from_matrix(la.matmul(self.F, self.to_matrix(x), self.to_matrix(y)))
        return la.matmul(self.F, self.left_op(x), y.reshape(-1, 1)).reshape(-1)

    def products(self, X, Y) -> np.ndarray:
        """All products x_a y_b, shape (len(X), len(Y), dim)."""
        d = self.dim
        X = la.as_array(X).reshape(-1, d)
        Y = la.as_array(Y).reshape(-1, d)
        if X.shape[0] == 0 or Y.shape[0] == 0:
            return np.zeros((X.shape[0], Y.shape[0], d), dtype=np.int64)
        if self.mats is not None:
            n = self.mats.shape[1]
            flat = self.mats.reshape(d, n * n)
            XM = la.matmul(self.F, X, flat).reshape(-1, n, n)
            YM = la.matmul(self.F, Y, flat).reshape(-1, n, n)
            P = _pairwise_matrix_products(self.F, XM, YM)
            return np.ascontiguousarray(P[:, :, self.mat_pivots])
        LX = self.left_ops(X)  # (rx, d, d)
        out = la.matmul(self.F, LX.reshape(-1, d), Y.T)  # (rx*d, ry)
        return np.ascontiguousarray(out.reshape(X.shape[0], d, Y.shape[0]).transpose(0, 2, 1))

    def power(self, x, k: int) -> np.ndarray:
        result = self.unit.copy()
        base = la.as_array(x)
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def is_commutative(self) -> bool:
        return np.array_equal(self.C, self.C.transpose(1, 0, 2))

    def gram(self, lam) -> np.ndarray:
        """G[i, j] = lam(b_i b_j)."""
        d = self.dim
        return la.matmul(self.F, self.C.reshape(d * d, d), la.as_array(lam).reshape(d, 1)).reshape(d, d)

    # -- derived algebras
    def subalgebra(self, S: la.Subspace, unit=None, check: bool = True) -> "Algebra":
        """The subalgebra with basis S.basis (unit defaults to that of A)."""
        r = S.dim
        P = self.products(S.basis, S.basis).reshape(r * r, self.dim)
        if check and not S.contains_all(P):
            raise AlgebraError("subspace is not closed under multiplication")
        C = S.coords(P).reshape(r, r, r)
        u = self.unit if unit is None else la.as_array(unit)
        if check and not S.contains(u):
            raise AlgebraError("unit not in subalgebra")
        return Algebra(self.F, C, S.coords(u), check=check)

    def quotient(self, I: la.Subspace, check: bool = True) -> "Quotient":
        return Quotient(self, I, check=check)

    # -- serialization
    def to_json(self) -> dict:
        F = self.F
        idx = np.argwhere(self.C != 0)
        return {
            "field": F.spec.serialize(),
            "dim": self.dim,
            "structure_constants": [[int(i), int(j), int(k), F.to_hex(self.C[i, j, k])] for i, j, k in idx],
            "unit": [F.to_hex(x) for x in self.unit],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "Algebra":
        if isinstance(data, str):
            data = json.loads(data)
        F = field_from_spec(FieldSpec.parse(data["field"]))
        d = int(data["dim"])
        C = np.zeros((d, d, d), dtype=np.int64)
        for i, j, k, h in data["structure_constants"]:
            C[i, j, k] = F.from_hex(h)
        unit = np.array([F.from_hex(h) for h in data["unit"]], dtype=np.int64)
        return cls(F, C, unit)

    def __repr__(self):
        kind = "matrix" if self.mats is not None else "structure-constant"
        return f"Algebra(dim={self.dim}, {kind}, {self.F.spec})"


def _pairwise_matrix_products(F: Field, XM: np.ndarray, YM: np.ndarray) -> np.ndarray:
    """P[a, b] = flatten(XM[a] @ YM[b]) through one large multiplication."""
    rx, n, _ = XM.shape
    ry = YM.shape[0]
    left = XM.reshape(rx * n, n)
    right = np.ascontiguousarray(YM.transpose(1, 0, 2).reshape(n, ry * n))
    big = la.matmul(F, left, right)  # (rx*n, ry*n), block (a, b) = X_a Y_b
    return np.ascontiguousarray(big.reshape(rx, n, ry, n).transpose(0, 2, 1, 3).reshape(rx, ry, n * n))


class Quotient(Algebra):
    """A/I for a two-sided ideal I, on the basis of non-pivot coordinates of I."""

    def __init__(self, A: Algebra, I: la.Subspace, check: bool = True):
        self.parent = A
        self.ideal = I
        cc = I.complement_coords()
        self.cc = cc
        d = A.dim
        r = len(cc)
        prods = A.C[np.ix_(cc, cc)].reshape(r * r, d)
        C = I.reduce(prods)[:, cc].reshape(r, r, r)
        unit = I.reduce(A.unit)[cc]
        super().__init__(A.F, C, unit, check=check)

    def project(self, x) -> np.ndarray:
        x = la.as_array(x)
        return self.ideal.reduce(x)[..., self.cc]

    def lift(self, u) -> np.ndarray:
        u = la.as_array(u)
        out = np.zeros(u.shape[:-1] + (self.parent.dim,), dtype=np.int64)
        out[..., self.cc] = u
        return out


# ---------------------------------------------------------------------------
# regular representations, commutators, ideals
# ---------------------------------------------------------------------------

def regular_representations(A: Algebra) -> tuple[np.ndarray, np.ndarray]:
    """(L, R) with L[i] @ coords(y) = coords(b_i y) and R[i] @ coords(y) = coords(y b_i)."""
    return A.L.copy(), A.R.copy()


def commutator_subspace(A: Algebra) -> la.Subspace:
    """span{b_i b_j - b_j b_i}."""
    d = A.dim
    iu, ju = np.triu_indices(d, k=1)
    diffs = A.F.vsub(A.C[iu, ju], A.C[ju, iu])
    return la.span(A.F, diffs.reshape(-1, d), d)


def _closure_defect(A: Algebra, V: la.Subspace, side: Side) -> np.ndarray:
    """Rows (b_i v) and/or (v b_i) for v in V's basis, reduced modulo V.

    Returned shape (dim V, k*d) for use as a left-nullspace system.
    """
    d = A.dim
    r = V.dim
    blocks = []
    if side in ("left", "two-sided"):
        # (b_i v)_k = sum_j v_j C[i, j, k]
        T = la.matmul(A.F, V.basis, np.ascontiguousarray(A.C.transpose(1, 0, 2).reshape(d, d * d)))
        blocks.append(V.reduce(T.reshape(r * d, d)).reshape(r, d * d))
    if side in ("right", "two-sided"):
        T = la.matmul(A.F, V.basis, A.C.reshape(d, d * d))
        blocks.append(V.reduce(T.reshape(r * d, d)).reshape(r, d * d))
    return np.hstack(blocks)


def is_ideal(A: Algebra, V: la.Subspace, side: Side) -> bool:
    if V.dim == 0:
        return True
    return not _closure_defect(A, V, side).any()


def largest_ideal_in_subspace(A: Algebra, V: la.Subspace, side: Side = "left") -> la.Subspace:
    """Largest left/right/two-sided ideal contained in V (fixed-point iteration)."""
    cur = V
    while cur.dim:
        D = _closure_defect(A, cur, side)
        if not D.any():
            break
        keep = la.left_nullspace(A.F, D)
        nxt = la.span(A.F, la.matmul(A.F, keep.basis, cur.basis), A.dim) if keep.dim else la.Subspace.zero(A.F, A.dim)
        cur = nxt
    if not is_ideal(A, cur, side):  # pragma: no cover
        raise InternalCheckError("largest ideal iteration produced a non-ideal")
    return cur


def ideal_product(A: Algebra, U: la.Subspace, V: la.Subspace) -> la.Subspace:
    if U.dim == 0 or V.dim == 0:
        return la.Subspace.zero(A.F, A.dim)
    P = A.products(U.basis, V.basis).reshape(-1, A.dim)
    return la.span(A.F, P, A.dim)


# ---------------------------------------------------------------------------
# radical
# ---------------------------------------------------------------------------

def _frobenius_kernel_space(A: Algebra, K: la.Subspace) -> la.Subspace:
    """T(A) = {x : x^(p^m) in K for some m}, K = [A, A]."""
    F = A.F
    d = A.dim
    cc = K.complement_coords()
    dd = len(cc)
    if dd == 0:
        return la.Subspace.full(F, d)
    # matrix of the p-semilinear map x -> x^p on A/K, in the complement basis
    M = np.zeros((dd, dd), dtype=np.int64)
    for row, c in enumerate(cc):
        y = A.power(A.basis_vector(c), F.p)
        M[row] = K.reduce(y)[cc]
    # F^e is linear: x -> x * M^(p^(e-1)) ... M^(p) M  (row vectors)
    Phi = M.copy()
    for i in range(1, F.e):
        Phi = la.matmul(F, F.vpow(M, F.p ** i), Phi)
    # kernel of Phi^dd
    P = la.identity(dd)
    for _ in range(dd):
        P = la.matmul(F, P, Phi)
        if not P.any():
            break
    ker = la.left_nullspace(F, P)
    lifted = np.zeros((ker.dim, d), dtype=np.int64)
    lifted[:, cc] = ker.basis
    return K.sum(la.span(F, lifted, d)) if ker.dim else K


def _radical_raw(A: Algebra) -> la.Subspace:
    K = commutator_subspace(A)
    T = _frobenius_kernel_space(A, K)
    return largest_ideal_in_subspace(A, T, "two-sided")


def power_series(A: Algebra, J: la.Subspace, max_steps: int | None = None) -> list[la.Subspace]:
    """[J, J^2, ..., J^k] ending at the first zero power (or when it stabilizes)."""
    out = [J]
    cur = J
    limit = A.dim + 1 if max_steps is None else max_steps
    for _ in range(limit):
        if cur.dim == 0:
            break
        nxt = ideal_product(A, cur, J)
        out.append(nxt)
        if nxt.dim == cur.dim:
            break
        cur = nxt
    return out


@dataclass
class RadicalData:
    ideal: IdealData
    powers_dims: list[int]
    nilpotency_index: int

    @property
    def subspace(self) -> la.Subspace:
        return self.ideal.subspace

    @property
    def dim(self) -> int:
        return self.ideal.dim


def radical(A: Algebra, validate: bool = True) -> IdealData:
    return radical_data(A, validate).ideal


def radical_data(A: Algebra, validate: bool = True) -> RadicalData:
    cached = getattr(A, "_radical_cache", None)
    if cached is not None:
        return cached
    J = _radical_raw(A)
    chain = power_series(A, J)
    dims = [s.dim for s in chain]
    if validate:
        if not is_ideal(A, J, "two-sided"):
            raise InternalCheckError("radical is not a two-sided ideal")
        if dims[-1] != 0:
            raise InternalCheckError("radical is not nilpotent")
        if J.dim:
            Q = A.quotient(J, check=False)
            if _radical_raw(Q).dim != 0:
                raise InternalCheckError("quotient by the radical is not semisimple")
    nil = len([x for x in dims if x]) + 1
    data = RadicalData(IdealData(J, "two-sided"), dims, nil)
    A._radical_cache = data
    return data


def loewy_dims(A: Algebra) -> list[int]:
    """dim A, dim J, dim J^2, ..., 0."""
    return [A.dim] + radical_data(A).powers_dims


# ---------------------------------------------------------------------------
# socles and locality
# ---------------------------------------------------------------------------

def socle(A: Algebra, side: Side = "left") -> IdealData:
    """Left socle {x : J x = 0} or right socle {x : x J = 0}."""
    J = radical(A).subspace
    d = A.dim
    if J.dim == 0:
        return IdealData(la.Subspace.full(A.F, d), side)
    ops = A.left_ops(J.basis) if side == "left" else A.right_ops(J.basis)
    S = la.nullspace(A.F, ops.reshape(-1, d))
    if not is_ideal(A, S, "two-sided"):
        raise InternalCheckError("socle is not a two-sided ideal")
    return IdealData(S, side)


@dataclass
class LocalityCertificate:
    is_local: bool
    quotient_dim: int
    factor_count: int | None
    commutative_quotient: bool | None
    non_split: bool = False

    def to_json(self) -> dict:
        return {
            "is_local": self.is_local,
            "quotient_dim": self.quotient_dim,
            "factor_count": self.factor_count,
            "commutative_quotient": self.commutative_quotient,
            "non_split": self.non_split,
        }


def frobenius_fixed_dim(Q: Algebra) -> int:
    """dim{x : x^q = x} for a commutative semisimple algebra (its number of field factors)."""
    F = Q.F
    d = Q.dim
    imgs = np.array([Q.power(Q.basis_vector(i), F.q) for i in range(d)], dtype=np.int64)
    return la.left_nullspace(F, F.vsub(imgs, la.identity(d))).dim


def is_local(A: Algebra) -> LocalityCertificate:
    cached = getattr(A, "_local_cache", None)
    if cached is not None:
        return cached
    J = radical(A).subspace
    qd = A.dim - J.dim
    if qd == 1:
        cert = LocalityCertificate(True, 1, 1, True)
    else:
        Q = A.quotient(J, check=False) if J.dim else A
        comm = Q.is_commutative()
        if not comm:
            cert = LocalityCertificate(False, qd, None, False)
        else:
            fc = frobenius_fixed_dim(Q)
            cert = LocalityCertificate(fc == 1, qd, fc, True, non_split=(fc == 1))
    A._local_cache = cert
    return cert


# ---------------------------------------------------------------------------
# idempotents
# ---------------------------------------------------------------------------

def corner_space(A: Algebra, e, S: la.Subspace | None = None) -> la.Subspace:
    """e S e (S defaults to A) as a subspace of A."""
    d = A.dim
    Le = A.left_op(e)
    Re = A.right_op(e)
    P = la.matmul(A.F, Le, Re)  # x -> e x e
    if S is None:
        return la.span(A.F, P.T, d)
    return la.span(A.F, la.matmul(A.F, S.basis, P.T), d)


def _krylov(A: Algebra, e, x) -> la.Subspace:
    vecs = [la.as_array(e)]
    cur = la.as_array(e)
    space = la.span(A.F, np.array(vecs), A.dim)
    while True:
        cur = A.mul(cur, x)
        if space.contains(cur):
            return space
        vecs.append(cur)
        space = la.span(A.F, np.array(vecs), A.dim)


def _trace_map(A: Algebra, z) -> np.ndarray:
    """z + z^p + ... + z^(p^(e-1))."""
    F = A.F
    acc = la.as_array(z).copy()
    cur = la.as_array(z)
    for _ in range(F.e - 1):
        cur = A.power(cur, F.p)
        acc = F.vadd(acc, cur)
    return acc


def _split_commutative(A: Algebra, e, S: la.Subspace, rng: np.random.Generator) -> list[np.ndarray]:
    """Primitive idempotents of the commutative subalgebra S (unit e) of A."""
    F = A.F
    imgs = np.array([A.power(v, F.q) for v in S.basis], dtype=np.int64)
    Phi = S.coords(imgs)  # row i: coords of (s_i)^q
    fix = la.left_nullspace(F, F.vsub(Phi, la.identity(S.dim)))
    k = fix.dim
    if k <= 1:
        return [la.as_array(e)]
    fixed = la.matmul(F, fix.basis, S.basis)  # elements y with y^q = y
    atoms = [la.as_array(e)]
    for _ in range(64 * k):
        if len(atoms) == k:
            break
        z = la.lincomb(F, F.random(rng, k), fixed)
        eps = A.power(_trace_map(A, z), F.p - 1)
        new = []
        for f in atoms:
            g = A.mul(f, eps)
            h = F.vsub(f, g)
            if g.any() and h.any():
                new.extend([g, h])
            else:
                new.append(f)
        atoms = new
    if len(atoms) != k:  # pragma: no cover
        raise InternalCheckError("idempotent refinement did not terminate")
    return atoms


def primitive_idempotents(A: Algebra, rng_seed: int | np.random.Generator = 0,
                          max_attempts: int = 64) -> list[np.ndarray]:
    """Pairwise orthogonal primitive idempotents summing to 1.

    An idempotent e is split by picking a random x in eAe, forming the
    commutative algebra k[x], and taking the atoms of its subalgebra
    {y : y^q = y}, which is spanned by the idempotents of k[x].  Pieces are
    split again until every corner fAf is local.
    """
    cached = getattr(A, "_idem_cache", None)
    if cached is not None:
        return [c.copy() for c in cached]
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    F = A.F
    J = radical(A).subspace
    todo = [A.unit.copy()]
    done: list[np.ndarray] = []
    while todo:
        e = todo.pop()
        E = corner_space(A, e)
        EJ = corner_space(A, e, J)
        if E.dim - EJ.dim == 1:
            done.append(e)
            continue
        corner = A.subalgebra(E, unit=e, check=False)
        if is_local(corner).is_local:
            done.append(e)
            continue
        for _ in range(max_attempts):
            x = la.lincomb(F, F.random(rng, E.dim), E.basis)
            pieces = _split_commutative(A, e, _krylov(A, e, x), rng)
            if len(pieces) > 1:
                todo.extend(pieces)
                break
        else:  # pragma: no cover
            raise InternalCheckError("failed to split a non-local corner")
    _check_idempotents(A, done)
    done.sort(key=lambda v: tuple(-v))  # deterministic order
    A._idem_cache = [c.copy() for c in done]
    return done


def _check_idempotents(A: Algebra, idems: list[np.ndarray]):
    F = A.F
    total = np.zeros(A.dim, dtype=np.int64)
    for i, a in enumerate(idems):
        total = F.vadd(total, a)
        for j, b in enumerate(idems):
            ab = A.mul(a, b)
            want = a if i == j else np.zeros_like(a)
            if not np.array_equal(ab, want):
                raise InternalCheckError("idempotents are not orthogonal")
    if not np.array_equal(total, A.unit):
        raise InternalCheckError("idempotents do not sum to the unit")


def structure_report(A: Algebra) -> dict:
    rd = radical_data(A)
    loc = is_local(A)
    return {
        "dim": A.dim,
        "radical_dim": rd.dim,
        "radical_power_dims": rd.powers_dims,
        "left_socle_dim": socle(A, "left").dim,
        "right_socle_dim": socle(A, "right").dim,
        "commutator_dim": commutator_subspace(A).dim,
        "locality": loc.to_json(),
    }


# ---------------------------------------------------------------------------
# small standard algebras (used by tests and examples)
# ---------------------------------------------------------------------------

def truncated_polynomial_algebra(F: Field, m: int) -> Algebra:
    """k[T]/(T^m) on the basis 1, T, ..., T^(m-1)."""
    C = np.zeros((m, m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m - i):
            C[i, j, i + j] = 1
    unit = np.zeros(m, dtype=np.int64)
    unit[0] = 1
    return Algebra(F, C, unit)


def full_matrix_algebra(F: Field, n: int) -> Algebra:
    mats = np.zeros((n * n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            mats[i * n + j, i, j] = 1
    return Algebra.from_matrices(F, mats)


def upper_triangular_algebra(F: Field, n: int) -> Algebra:
    mats = [la.elementary(n, i + 1, j + 1) for i in range(n) for j in range(i, n)]
    return Algebra.from_matrices(F, np.array(mats))


def product_algebra(F: Field, k: int) -> Algebra:
    """k copies of the field, componentwise multiplication."""
    C = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        C[i, i, i] = 1
    return Algebra(F, C, np.ones(k, dtype=np.int64))


def matrix_algebra_over(A: Algebra, n: int) -> Algebra:
    """M_n(A) with basis E_ij ⊗ b_k, as structure constants."""
    F = A.F
    d = A.dim
    D = n * n * d
    C = np.zeros((D, D, D), dtype=np.int64)
    idx = lambda i, j, k: (i * n + j) * d + k
    for i in range(n):
        for j in range(n):
            for l in range(n):
                for a in range(d):
                    for b in range(d):
                        C[idx(i, j, a), idx(j, l, b), idx(i, l, 0):idx(i, l, 0) + d] = A.C[a, b]
    unit = np.zeros(D, dtype=np.int64)
    for i in range(n):
        unit[idx(i, i, 0):idx(i, i, 0) + d] = A.unit
    return Algebra(F, C, unit)


def generated_subalgebra(F: Field, gens, extra_unit: bool = True) -> Algebra:
    """Subalgebra of matrices generated by the given matrices (and 1)."""
    gens = [la.as_array(g) for g in gens]
    n = gens[0].shape[0]
    vecs = [la.identity(n).reshape(-1)] if extra_unit else []
    space = la.span(F, np.array(vecs + [g.reshape(-1) for g in gens]), n * n)
    while True:
        B = space.basis.reshape(-1, n, n)
        G = np.array(gens)
        P = _pairwise_matrix_products(F, B, G).reshape(-1, n * n)
        new = space.sum(la.span(F, P, n * n))
        if new.dim == space.dim:
            break
        space = new
    return Algebra.from_matrices(F, space.basis.reshape(-1, n, n))
