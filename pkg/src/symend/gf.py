"""Finite fields GF(p^e).

Elements are plain Python ints (or int64 numpy arrays) whose base-p digits,
least significant first, are the coordinates in the power basis
1, x, x^2, ... of GF(p)[x]/(f).  For p = 2 this is the usual bitmask
encoding.  Fields with q <= 2^20 elements get log/exp tables; larger
binary fields multiply by carry-less shifting.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

TABLE_LIMIT = 1 << 20


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over GF(p), coefficient lists low-to-high -----------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _ppowmod(a: list[int], k: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, f, p)
    while k:
        if k & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        k >>= 1
    return result


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over GF(p)."""
    f = _trim([c % p for c in f])
    e = len(f) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(e):
        h = _ppowmod(h, p, f, p)
    if _psub(h, x, p):
        return False
    for r in prime_factors(e):
        h = x
        for _ in range(e // r):
            h = _ppowmod(h, p, f, p)
        g = _pgcd(_psub(h, x, p), f, p)
        if len(g) > 1:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^e) with a monic irreducible modulus (coefficients low-to-high)."""

    p: int
    e: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.e < 1:
            raise FieldError(f"extension degree must be >= 1, got {self.e}")
        if len(self.modulus) != self.e + 1 or self.modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree e")
        if not is_irreducible(self.modulus, self.p):
            raise FieldError(f"modulus {self.modulus} is reducible over GF({self.p})")

    @property
    def q(self) -> int:
        return self.p ** self.e

    def serialize(self) -> str:
        return f"{self.p}^{self.e}:" + ",".join(str(c) for c in self.modulus)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        head, _, coeffs = text.partition(":")
        p, e = (int(t) for t in head.split("^"))
        if not coeffs:
            return field_make(p, e)
        return cls(p, e, tuple(int(c) for c in coeffs.split(",")))

    def __str__(self):
        return f"GF({self.p}^{self.e})"


def field_make(p: int, e: int) -> FieldSpec:
    """Field spec with the lexicographically first monic irreducible modulus.

    Candidates are compared on (c_{e-1}, ..., c_1, c_0), leading term first,
    which is the same as taking the smallest integer encoding.  GF(16) gets
    x^4 + x + 1 and GF(2^16) gets x^16 + x^5 + x^3 + x + 1.
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e}")
    return _first_irreducible(p, e)


@functools.lru_cache(maxsize=None)
def _first_irreducible(p: int, e: int) -> FieldSpec:
    for n in range(p ** e):
        digits = []
        for _ in range(e):
            digits.append(n % p)
            n //= p
        coeffs = tuple(digits) + (1,)
        if e > 1 and (coeffs[0] == 0 or _has_root(coeffs, p)):
            continue
        if is_irreducible(coeffs, p):
            return FieldSpec(p, e, coeffs)
    raise FieldError(f"no irreducible polynomial of degree {e} over GF({p})")  # pragma: no cover


def _has_root(f: Sequence[int], p: int) -> bool:
    for x in range(p):
        acc = 0
        for c in reversed(f):
            acc = (acc * x + c) % p
        if acc == 0:
            return True
    return False


def _clmul_mod(a: int, b: int, e: int, poly: int) -> int:
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


class Field:
    """Arithmetic context for a FieldSpec.

    Scalar methods take and return Python ints; the ``v``-prefixed methods
    work elementwise on int64 arrays through the kernel layer.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p, self.e, self.q = spec.p, spec.e, spec.q
        # integer encoding of the modulus; for p = 2 the bitmask incl. x^e
        self.poly = sum(c * self.p ** i for i, c in enumerate(spec.modulus))
        if self.q <= TABLE_LIMIT:
            self._build_tables()
        else:
            if self.p != 2:
                raise FieldError("fields with more than 2^20 elements need p = 2")
            self.exp = np.zeros(0, dtype=np.int64)
            self.log = np.zeros(0, dtype=np.int64)
            self._exp_l = self._log_l = None
        self.zech = self._build_zech()
        self.generator = self._find_generator() if self._exp_l is None else self._gen

    # -- construction helpers
    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds: Sequence[int]) -> int:
        a = 0
        for d in reversed(list(ds)):
            a = a * self.p + (d % self.p)
        return a

    def _slow_mul(self, a: int, b: int) -> int:
        if self.p == 2:
            return _clmul_mod(a, b, self.e, self.poly)
        if self.e == 1:
            return a * b % self.p
        prod = _pmul(_trim(self._digits(a)), _trim(self._digits(b)), self.p)
        return self._undigits(_pmod(prod, list(self.spec.modulus), self.p))

    def _slow_pow(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            k >>= 1
        return r

    def _find_generator(self) -> int:
        n = self.q - 1
        fs = prime_factors(n)
        for g in range(2 if self.q > 2 else 1, self.q):
            if all(self._slow_pow(g, n // r) != 1 for r in fs):
                return g
        return 1

    def _build_tables(self):
        q = self.q
        g = self._find_generator()
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        v = 1
        if self.p == 2 and g == 2:
            top, poly = 1 << self.e, self.poly
            for i in range(q - 1):
                exp[i] = v
                log[v] = i
                v <<= 1
                if v & top:
                    v ^= poly
        elif g == self.p and self.e > 1:
            # multiplication by x on digit vectors
            p, e = self.p, self.e
            mod = self.spec.modulus
            weights = [p ** i for i in range(e)]
            ds = [1] + [0] * (e - 1)
            for i in range(q - 1):
                exp[i] = v
                log[v] = i
                top = ds[-1]
                ds = [0] + ds[:-1]
                if top:
                    ds = [(d - top * c) % p for d, c in zip(ds, mod)]
                v = sum(d * w for d, w in zip(ds, weights))
        else:
            for i in range(q - 1):
                exp[i] = v
                log[v] = i
                v = self._slow_mul(v, g)
        exp[q - 1:] = exp[: q - 1]
        self._gen = g
        self._exp_l, self._log_l = exp, log
        self.exp = np.asarray(exp, dtype=np.int64)
        self.log = np.asarray(log, dtype=np.int64)

    def _build_zech(self) -> np.ndarray:
        """zech[k] = log(1 + g^k), or -1 when 1 + g^k = 0.

        Only built for odd characteristic with e > 1 and log tables, where it
        replaces digit-by-digit addition by table lookups.
        """
        if self.p == 2 or self.e == 1 or self._exp_l is None:
            return np.zeros(0, dtype=np.int64)
        v = self.exp[: self.q - 1]
        low = v % self.p
        one_plus = v - low + (low + 1) % self.p
        z = self.log[one_plus].copy()
        z[one_plus == 0] = -1
        return z

    # -- scalar arithmetic
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        return self._undigits([x + y for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.e == 1:
            return -a % self.p
        return self._undigits([-x for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp_l is not None:
            return self._exp_l[self._log_l[a] + self._log_l[b]]
        return _clmul_mod(a, b, self.e, self.poly)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self._exp_l is not None:
            return self._exp_l[(self.q - 1 - self._log_l[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        if a == 0:
            return 1 if k == 0 else 0
        if self._exp_l is not None:
            return self._exp_l[(self._log_l[a] * k) % (self.q - 1)]
        r = 1
        while k:
            if k & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            k >>= 1
        return r

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.q - 1
        for r in prime_factors(self.q - 1):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(p)."""
        return n % self.p

    # -- coordinates and serialization
    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(self._digits(a))

    def from_coeffs(self, cs: Sequence[int]) -> int:
        if len(cs) != self.e:
            raise FieldError(f"expected {self.e} coordinates, got {len(cs)}")
        return self._undigits(cs)

    def to_hex(self, a: int) -> str:
        return format(int(a), "x")

    def from_hex(self, s: str) -> int:
        a = int(s, 16)
        if not 0 <= a < self.q:
            raise FieldError(f"{s} is not an element of {self.spec}")
        return a

    def elements(self) -> range:
        return range(self.q)

    # -- array helpers
    def random(self, rng: np.random.Generator, shape=()) -> np.ndarray:
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    def random_nonzero(self, rng: np.random.Generator, shape=()) -> np.ndarray:
        return rng.integers(1, self.q, size=shape, dtype=np.int64)

    def vadd(self, a, b):
        return kernels.vadd(self, a, b)

    def vsub(self, a, b):
        return kernels.vsub(self, a, b)

    def vneg(self, a):
        return kernels.vneg(self, a)

    def vmul(self, a, b):
        return kernels.vmul(self, a, b)

    def vpow(self, a, k: int):
        a = np.asarray(a, dtype=np.int64)
        r = np.ones_like(a)
        while k:
            if k & 1:
                r = self.vmul(r, a)
            a = self.vmul(a, a)
            k >>= 1
        return r

    def vfrob(self, a, times: int = 1):
        """Entrywise a -> a^(p^times)."""
        return self.vpow(a, self.p ** (times % self.e) if times % self.e else 1)

    def __repr__(self):
        return f"Field({self.spec})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)


@functools.lru_cache(maxsize=None)
def field_from_spec(spec: FieldSpec) -> Field:
    return Field(spec)


def GF(p: int, e: int = 1) -> Field:
    """Cached arithmetic context for GF(p^e)."""
    return field_from_spec(field_make(p, e))


def default_working_field(p: int = 2) -> Field:
    """GF(2^16) in characteristic 2; otherwise the smallest p^e >= 50000."""
    if p == 2:
        return GF(2, 16)
    e = 1
    while p ** e < 50000:
        e += 1
    return GF(p, e)


def parse_field(text: str) -> Field:
    """Accepts "2^16", "GF(2^16)", "GF(4)", "3" or a serialized FieldSpec."""
    t = text.strip()
    if t.upper().startswith("GF(") and t.endswith(")"):
        t = t[3:-1]
    if ":" in t:
        return field_from_spec(FieldSpec.parse(t))
    if "^" in t:
        p, e = (int(s) for s in t.split("^"))
        return GF(p, e)
    n = int(t)
    for p in prime_factors(n):
        e = 0
        m = n
        while m % p == 0:
            m //= p
            e += 1
        if m == 1:
            return GF(p, e)
    raise FieldError(f"{text!r} is not a prime power")


class Embedding:
    """The field embedding GF(p^s) -> GF(p^t), s | t, sending x to the
    smallest-exponent root of the source modulus among powers of
    g^((Q-1)/(q-1)), g the target's generator."""

    def __init__(self, src: Field, dst: Field):
        if src.p != dst.p or dst.e % src.e:
            raise FieldError(f"cannot embed {src.spec} into {dst.spec}")
        self.src, self.dst = src, dst
        if src.e == 1:
            root = 0
        else:
            h = dst.pow(dst.generator, (dst.q - 1) // (src.q - 1))
            f = src.spec.modulus
            root = None
            c = 1
            for _ in range(src.q - 1):
                c = dst.mul(c, h)
                acc = 0
                for coef in reversed(f):
                    acc = dst.add(dst.mul(acc, c), dst.from_int(coef))
                if acc == 0:
                    root = c
                    break
            if root is None:  # pragma: no cover
                raise FieldError("no root of the source modulus in the target")
        self.root = root
        self.powers = [dst.pow(root, i) if root else (1 if i == 0 else 0) for i in range(src.e)]
        self._cache: dict[int, int] = {}

    def __call__(self, a: int) -> int:
        a = int(a)
        got = self._cache.get(a)
        if got is None:
            dst = self.dst
            got = 0
            for c, pw in zip(self.src.coeffs(a), self.powers):
                if c:
                    got = dst.add(got, dst.mul(dst.from_int(c), pw))
            self._cache[a] = got
        return got

    def array(self, arr) -> np.ndarray:
        arr = np.asarray(arr, dtype=np.int64)
        if self.src == self.dst:
            return arr.copy()
        vals, inv = np.unique(arr, return_inverse=True)
        mapped = np.array([self(v) for v in vals], dtype=np.int64)
        return mapped[inv].reshape(arr.shape)


@functools.lru_cache(maxsize=None)
def embedding(src: Field, dst: Field) -> Embedding:
    return Embedding(src, dst)


def embed(src: Field, dst: Field, a: int) -> int:
    return embedding(src, dst)(a)


from . import kernels  # noqa: E402  (kernels need Field attributes only at call time)
