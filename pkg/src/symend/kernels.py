"""Hot loops over finite-field matrices.

Each kernel exists twice: a numba ``@njit`` version operating element by
element, and a pure-numpy version built from vectorized table lookups.
The numba path is used when numba imports and ``SYMEND_PURE_NUMPY`` is unset
(or "0"); ``set_backend`` switches at runtime (used by the benchmark and the
backend-agreement tests).

Arrays hold field elements in the integer encoding of :mod:`symend.gf`
with dtype int64.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly depending on environment
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def _env_pure() -> bool:
    return os.environ.get("SYMEND_PURE_NUMPY", "0").strip().lower() not in ("", "0", "false", "no")


_USE_NUMBA = HAVE_NUMBA and not _env_pure()


def backend() -> str:
    return "numba" if _USE_NUMBA else "numpy"


def set_backend(name: str) -> None:
    global _USE_NUMBA
    if name == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba is not installed")
        _USE_NUMBA = True
    elif name == "numpy":
        _USE_NUMBA = False
    else:
        raise ValueError(f"unknown backend {name!r}")


def _params(F):
    return F.p, F.e, F.q, F.poly, F.exp, F.log


# ---------------------------------------------------------------------------
# numba scalar primitives
# ---------------------------------------------------------------------------

@njit(cache=True, inline="always")
def _add(a, b, p, e, exp, log, zech):
    if p == 2:
        return a ^ b
    if e == 1:
        return (a + b) % p
    if zech.shape[0] > 0:
        # a + b = a (1 + b/a) via the Zech logarithm
        if a == 0:
            return b
        if b == 0:
            return a
        k = log[b] - log[a]
        if k < 0:
            k += zech.shape[0]
        z = zech[k]
        if z < 0:
            return 0
        return exp[log[a] + z]
    r = 0
    m = 1
    for _ in range(e):
        r += ((a % p + b % p) % p) * m
        a //= p
        b //= p
        m *= p
    return r


@njit(cache=True, inline="always")
def _neg(a, p, e):
    if p == 2:
        return a
    r = 0
    m = 1
    for _ in range(e):
        r += ((p - a % p) % p) * m
        a //= p
        m *= p
    return r


@njit(cache=True, inline="always")
def _sub(a, b, p, e, exp, log, zech):
    if p == 2:
        return a ^ b
    if e == 1:
        return (a - b) % p
    if zech.shape[0] > 0:
        if b == 0:
            return a
        # -b = b * g^((q-1)/2)
        return _add(a, exp[log[b] + zech.shape[0] // 2], p, e, exp, log, zech)
    r = 0
    m = 1
    for _ in range(e):
        r += ((a % p - b % p + p) % p) * m
        a //= p
        b //= p
        m *= p
    return r


@njit(cache=True)
def _clmul(a, b, e, poly):
    r = 0
    top = 1 << e
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return r


@njit(cache=True, inline="always")
def _mul(a, b, e, poly, exp, log):
    if a == 0 or b == 0:
        return 0
    if exp.shape[0] > 0:
        return exp[log[a] + log[b]]
    return _clmul(a, b, e, poly)


@njit(cache=True)
def _inv(a, e, q, poly, exp, log):
    if exp.shape[0] > 0:
        return exp[(q - 1 - log[a]) % (q - 1)]
    r = 1
    k = q - 2
    while k:
        if k & 1:
            r = _mul(r, a, e, poly, exp, log)
        a = _mul(a, a, e, poly, exp, log)
        k >>= 1
    return r


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------

@njit(cache=True)
def _nb_vadd(a, b, p, e, exp, log, zech):
    out = np.empty_like(a)
    fa, fb, fo = a.ravel(), b.ravel(), out.ravel()
    for i in range(fa.shape[0]):
        fo[i] = _add(fa[i], fb[i], p, e, exp, log, zech)
    return out


@njit(cache=True)
def _nb_vsub(a, b, p, e, exp, log, zech):
    out = np.empty_like(a)
    fa, fb, fo = a.ravel(), b.ravel(), out.ravel()
    for i in range(fa.shape[0]):
        fo[i] = _sub(fa[i], fb[i], p, e, exp, log, zech)
    return out


@njit(cache=True)
def _nb_vmul(a, b, e, poly, exp, log):
    out = np.empty_like(a)
    fa, fb, fo = a.ravel(), b.ravel(), out.ravel()
    for i in range(fa.shape[0]):
        fo[i] = _mul(fa[i], fb[i], e, poly, exp, log)
    return out


@njit(cache=True)
def _nb_rref(M, p, e, q, poly, exp, log, zech):
    rows, cols = M.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    nz = np.empty(cols, dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                t = M[r, j]
                M[r, j] = M[piv, j]
                M[piv, j] = t
        s = _inv(M[r, c], e, q, poly, exp, log)
        cnt = 0
        for j in range(c, cols):
            if M[r, j] != 0:
                M[r, j] = _mul(M[r, j], s, e, poly, exp, log)
                nz[cnt] = j
                cnt += 1
        for i in range(rows):
            if i != r:
                f = M[i, c]
                if f != 0:
                    for t in range(cnt):
                        j = nz[t]
                        M[i, j] = _sub(M[i, j], _mul(f, M[r, j], e, poly, exp, log), p, e, exp, log, zech)
        pivots[r] = c
        r += 1
    return pivots[:r].copy()


@njit(cache=True)
def _nb_matmul(A, B, p, e, poly, exp, log, zech):
    n, k = A.shape
    m = B.shape[1]
    C = np.zeros((n, m), dtype=np.int64)
    for i in range(n):
        for t in range(k):
            a = A[i, t]
            if a != 0:
                for j in range(m):
                    b = B[t, j]
                    if b != 0:
                        C[i, j] = _add(C[i, j], _mul(a, b, e, poly, exp, log), p, e, exp, log, zech)
    return C


# ---------------------------------------------------------------------------
# numpy fallbacks
# ---------------------------------------------------------------------------

def _np_add(F, a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if F.p == 2:
        return a ^ b
    if F.e == 1:
        return (a + b) % F.p
    if F.zech.shape[0] > 0:
        return _np_add_zech(F, a, b)
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    m = 1
    for _ in range(F.e):
        out += ((a // m) % F.p + (b // m) % F.p) % F.p * m
        m *= F.p
    return out


def _np_add_zech(F, a, b):
    a, b = np.broadcast_arrays(a, b)
    n = F.zech.shape[0]
    la, lb = F.log[a], F.log[b]
    z = F.zech[(lb - la) % n]
    out = F.exp[la + np.maximum(z, 0)]
    out[z < 0] = 0
    out = np.where(a == 0, b, np.where(b == 0, a, out))
    return out.astype(np.int64)


def _np_neg(F, a):
    a = np.asarray(a, dtype=np.int64)
    if F.p == 2:
        return a.copy()
    if F.e == 1:
        return (-a) % F.p
    out = np.zeros_like(a)
    m = 1
    for _ in range(F.e):
        out += (-((a // m) % F.p)) % F.p * m
        m *= F.p
    return out


def _np_sub(F, a, b):
    if F.p == 2:
        return np.asarray(a, dtype=np.int64) ^ np.asarray(b, dtype=np.int64)
    return _np_add(F, a, _np_neg(F, b))


def _np_mul(F, a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    a, b = np.broadcast_arrays(a, b)
    if F.exp.shape[0] > 0:
        out = F.exp[F.log[a] + F.log[b]]
        out[(a == 0) | (b == 0)] = 0
        return out
    r = np.zeros(a.shape, dtype=np.int64)
    a = a.copy()
    top = 1 << F.e
    for bit in range(F.e):
        r ^= np.where((b >> bit) & 1, a, 0)
        a <<= 1
        a = np.where(a & top, a ^ F.poly, a)
    return r


def _np_inv(F, a):
    a = np.asarray(a, dtype=np.int64)
    if F.exp.shape[0] > 0:
        return F.exp[(F.q - 1 - F.log[a]) % (F.q - 1)]
    r = np.ones_like(a)
    k = F.q - 2
    while k:
        if k & 1:
            r = _np_mul(F, r, a)
        a = _np_mul(F, a, a)
        k >>= 1
    return r


def _np_rref(F, M):
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nzr = np.flatnonzero(M[r:, c])
        if nzr.size == 0:
            continue
        piv = r + int(nzr[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = _np_mul(F, M[r], _np_inv(F, M[r, c]))
        others = np.flatnonzero(M[:, c])
        others = others[others != r]
        if others.size:
            f = M[others, c][:, None]
            M[others] = _np_sub(F, M[others], _np_mul(F, f, M[r][None, :]))
        pivots.append(c)
        r += 1
    return np.asarray(pivots, dtype=np.int64)


def _np_matmul(F, A, B):
    n, k = A.shape
    C = np.zeros((n, B.shape[1]), dtype=np.int64)
    for t in range(k):
        col = A[:, t]
        if not col.any():
            continue
        row = B[t]
        if not row.any():
            continue
        C = _np_add(F, C, _np_mul(F, col[:, None], row[None, :]))
    return C


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def vadd(F, a, b):
    if _USE_NUMBA:
        a, b = np.broadcast_arrays(_i64(a), _i64(b))
        return _nb_vadd(_i64(a), _i64(b), F.p, F.e, F.exp, F.log, F.zech)
    return _np_add(F, a, b)


def vsub(F, a, b):
    if _USE_NUMBA:
        a, b = np.broadcast_arrays(_i64(a), _i64(b))
        return _nb_vsub(_i64(a), _i64(b), F.p, F.e, F.exp, F.log, F.zech)
    return _np_sub(F, a, b)


def vneg(F, a):
    return _np_neg(F, a)


def vmul(F, a, b):
    if _USE_NUMBA:
        a, b = np.broadcast_arrays(_i64(a), _i64(b))
        return _nb_vmul(_i64(a), _i64(b), F.e, F.poly, F.exp, F.log)
    return _np_mul(F, a, b)


def vinv(F, a):
    a = np.asarray(a, dtype=np.int64)
    if np.any(a == 0):
        raise ZeroDivisionError("inverse of zero in a finite field")
    return _np_inv(F, a)


def rref_inplace(F, M: np.ndarray) -> np.ndarray:
    """Reduce M (int64, C-contiguous) to reduced row echelon form in place.

    Returns the pivot columns; the first len(pivots) rows are the nonzero rows.
    """
    if M.size == 0:
        return np.zeros(0, dtype=np.int64)
    if _USE_NUMBA:
        return _nb_rref(M, F.p, F.e, F.q, F.poly, F.exp, F.log, F.zech)
    return _np_rref(F, M)


def matmul(F, A, B) -> np.ndarray:
    A = _i64(A)
    B = _i64(B)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    if A.size == 0 or B.size == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if _USE_NUMBA:
        return _nb_matmul(A, B, F.p, F.e, F.poly, F.exp, F.log, F.zech)
    return _np_matmul(F, A, B)
