"""Words over kD_∞ and the string and band modules built from them.

Letters are written ``a``, ``b`` and their inverses ``A``, ``B``.  A word
alternates between the a-family and the b-family; the empty words are
``1_a`` and ``1_b`` with ``1_a^{-1} = 1_b``.

String module conventions (basis z_1, ..., z_{n+1}, 1-based): letter l_i = a
gives X z_i = z_{i+1} (entry E_{i+1,i} of X); l_i = a^{-1} gives
X z_{i+1} = z_i (entry E_{i,i+1}); b and Y likewise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import exactla as la
from .gf import Field
from .modrep import ModulePresentation

LETTERS = "aAbB"
_RANK = {c: i for i, c in enumerate(LETTERS)}
_SWAP = str.maketrans("aAbB", "bBaA")
_DIRSWAP = str.maketrans("aAbB", "AaBb")


class WordError(ValueError):
    pass


def _family(c: str) -> str:
    return c.lower()


@dataclass(frozen=True)
class Word:
    letters: str
    empty_tag: str | None = None  # "a" or "b" for the empty words

    def __post_init__(self):
        if self.letters:
            if self.empty_tag is not None:
                raise WordError("nonempty word cannot carry an empty tag")
            bad = set(self.letters) - set(LETTERS)
            if bad:
                raise WordError(f"invalid letters {sorted(bad)}; use a, b, A, B")
            for x, y in zip(self.letters, self.letters[1:]):
                if _family(x) == _family(y):
                    raise WordError(f"letters {x}{y} are not alternating in {self.letters!r}")
        elif self.empty_tag not in ("a", "b"):
            raise WordError("empty word needs tag 'a' or 'b'")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return self.letters if self.letters else f"1_{self.empty_tag}"

    @property
    def key(self) -> tuple:
        if not self.letters:
            return (0, (-2 if self.empty_tag == "a" else -1,))
        return (len(self.letters), tuple(_RANK[c] for c in self.letters))


def word_parse(text: str) -> Word:
    t = text.strip()
    if t in ("1_a", "1a", "1"):
        return Word("", "a")
    if t in ("1_b", "1b"):
        return Word("", "b")
    if not t:
        raise WordError("empty word must be written 1_a or 1_b")
    return Word(t)


def word_inverse(w: Word) -> Word:
    if not w.letters:
        return Word("", "b" if w.empty_tag == "a" else "a")
    return Word(w.letters[::-1].swapcase())


def letter_swap(w: Word) -> Word:
    if not w.letters:
        return Word("", "b" if w.empty_tag == "a" else "a")
    return Word(w.letters.translate(_SWAP))


def direction_swap(w: Word) -> Word:
    if not w.letters:
        return w
    return Word(w.letters.translate(_DIRSWAP))


def word_rotate(w: Word, k: int = 1) -> Word:
    """Cyclic rotation (for band words): letters k, k+1, ..., then 0..k-1."""
    n = len(w.letters)
    if n == 0:
        return w
    k %= n
    return Word(w.letters[k:] + w.letters[:k])


def is_positive(c: str) -> bool:
    return c.islower()


# ---------------------------------------------------------------------------
# bands
# ---------------------------------------------------------------------------

def is_cyclic_word(letters: str) -> bool:
    n = len(letters)
    return n > 0 and n % 2 == 0 and _family(letters[0]) != _family(letters[-1])


def is_primitive(letters: str) -> bool:
    n = len(letters)
    for d in range(1, n):
        if n % d == 0 and letters[:d] * (n // d) == letters:
            return False
    return True


@dataclass(frozen=True)
class BandSpec:
    word: Word
    m: int
    lam: int          # field element in the encoding of `field`
    field: Field

    def __post_init__(self):
        w = self.word.letters
        if not is_cyclic_word(w):
            raise WordError(f"{w!r} is not a band: needs even positive length and cyclic alternation")
        if not is_primitive(w):
            raise WordError(f"{w!r} is a proper power")
        if self.m < 1:
            raise WordError("band multiplicity must be at least 1")
        if int(self.lam) == 0:
            raise WordError("band parameter must be nonzero")

    def label(self) -> str:
        return f"band:{self.word}:m={self.m}:lambda={self.field.to_hex(self.lam)}"


def band_rotate(spec: BandSpec, k: int = 1) -> BandSpec:
    """Rotated band describing an isomorphic module.

    The parameter sits on the last letter's edge; moving it onto an edge of
    opposite orientation replaces it by its inverse.
    """
    w2 = word_rotate(spec.word, k)
    lam = spec.lam
    if is_positive(w2.letters[-1]) != is_positive(spec.word.letters[-1]):
        lam = spec.field.inv(lam)
    return BandSpec(w2, spec.m, lam, spec.field)


def band_inverse(spec: BandSpec) -> BandSpec:
    """M(w, m, λ) ≅ M(w^{-1}, m, λ^{-1})."""
    return BandSpec(word_inverse(spec.word), spec.m, spec.field.inv(spec.lam), spec.field)


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------

KD_TAG = "kD_inf"


def string_module(w: Word, F: Field) -> ModulePresentation:
    n = len(w)
    d = n + 1
    X = np.zeros((d, d), dtype=np.int64)
    Y = np.zeros((d, d), dtype=np.int64)
    for i, c in enumerate(w.letters):  # letter l_{i+1} between z_{i+1}, z_{i+2}
        G = X if _family(c) == "a" else Y
        if is_positive(c):
            G[i + 1, i] = 1
        else:
            G[i, i + 1] = 1
    M = ModulePresentation(F, d, {"X": X, "Y": Y}, KD_TAG, f"string:{w}")
    return M


def band_module(spec: BandSpec) -> ModulePresentation:
    F = spec.field
    w = spec.word.letters
    n, m = len(w), spec.m
    d = n * m
    X = np.zeros((d, d), dtype=np.int64)
    Y = np.zeros((d, d), dtype=np.int64)
    I = la.identity(m)
    J = la.jordan_block(F, m, spec.lam)

    def put(G, r, c, block):
        G[r * m:(r + 1) * m, c * m:(c + 1) * m] = block

    for i, c in enumerate(w):
        G = X if _family(c) == "a" else Y
        src, dst = i, (i + 1) % n
        block = J if i == n - 1 else I
        if is_positive(c):
            put(G, dst, src, block)
        else:
            put(G, src, dst, block)
    return ModulePresentation(F, d, {"X": X, "Y": Y}, KD_TAG, spec.label())


def dihedral_regular_module(F: Field, q: int) -> ModulePresentation:
    """kD_{4q} acting on itself, X = x - 1 and Y = y - 1.

    Basis: 1, the alternating words in X, Y of length 1 .. 2q-1 (starting
    with X or Y), and (XY)^q = (YX)^q.
    """
    words = [""]
    for length in range(1, 2 * q):
        for first in "XY":
            other = "Y" if first == "X" else "X"
            words.append("".join(first if i % 2 == 0 else other for i in range(length)))
    top = "XY" * q
    words.append(top)
    index = {u: i for i, u in enumerate(words)}
    d = len(words)
    gens = {}
    for g in "XY":
        G = np.zeros((d, d), dtype=np.int64)
        for u, i in index.items():
            if u.startswith(g) or u == top:
                continue
            v = g + u
            if len(v) == 2 * q:
                v = top
            G[index[v], i] = 1
        gens[g] = G
    return ModulePresentation(F, d, gens, f"kD4q:{q}", f"regular:q={q}")


def annihilates_Iq(M: ModulePresentation, q: int) -> bool:
    from .modrep import annihilates_Iq as _ann

    return _ann(M, q)


def x_never_merges(M: ModulePresentation) -> bool:
    """Each generator sends distinct basis vectors to distinct basis vectors (or 0)."""
    for G in M.generators.values():
        nz = G != 0
        if (nz.sum(axis=0) > 1).any() or (nz.sum(axis=1) > 1).any():
            return False
    return True


# ---------------------------------------------------------------------------
# expected verdicts
# ---------------------------------------------------------------------------

def _alternating(start: str, n: int, upper_from: int | None = None) -> str:
    fam = [start, "b" if start == "a" else "a"]
    out = []
    for i in range(n):
        c = fam[i % 2]
        if upper_from is not None and i >= upper_from:
            c = c.upper()
        out.append(c)
    return "".join(out)


def _in_string_list(letters: str) -> bool:
    n = len(letters)
    if n == 0:
        return True
    if n == 1:
        return letters in ("a", "b")
    if n % 2:
        return False
    return letters in (_alternating("a", n), _alternating("b", n))


def string_qf_expected(w: Word) -> bool:
    """True iff w or w^{-1} is one of 1_a, 1_b, a, b, (ab)^l, (ba)^l."""
    return _in_string_list(w.letters) or _in_string_list(word_inverse(w).letters)


def expected_string_verdict(w: Word) -> tuple[bool, bool, bool, bool]:
    v = string_qf_expected(w)
    return (v, v, v, v)


def band_family_word(k: int) -> str:
    """a b a ... (k letters) followed by k inverse letters continuing the alternation."""
    return _alternating("a", 2 * k, upper_from=k)


def band_orbit(letters: str) -> set[str]:
    """Orbit under rotation, inversion and the a/b letter swap."""
    out = set()
    for base in (letters, letters[::-1].swapcase()):
        for s in (base, base.translate(_SWAP)):
            for k in range(len(s)):
                out.add(s[k:] + s[:k])
    return out


def band_case(spec: BandSpec) -> int:
    """1 if w is equivalent to ab, 2 if m = 1 and w is in the alternating family, else 0."""
    w = spec.word.letters
    orb = band_orbit(w)
    if "ab" in orb:
        return 1
    if spec.m == 1 and len(w) % 2 == 0 and band_family_word(len(w) // 2) in orb:
        return 2
    return 0


def expected_band_verdict(spec: BandSpec) -> tuple[bool, bool, bool, bool]:
    case = band_case(spec)
    if case == 0:
        return (False, False, False, False)
    n = len(spec.word)
    if case == 1:
        sym = True
    else:
        sym = n == 2 or (n % 4 == 0 and int(spec.lam) == 1)
    return (True, True, True, sym)


# ---------------------------------------------------------------------------
# explicit endomorphism bases
# ---------------------------------------------------------------------------

def _positive_shape(w: Word) -> tuple[int, bool] | None:
    """(l, has_tail) when w is (ab)^l, (ba)^l, (ab)^l a or (ba)^l b."""
    s = w.letters
    if not s or not s.islower():
        return None
    n = len(s)
    return n // 2, n % 2 == 1


def string_endo_basis(w: Word, F: Field) -> list[np.ndarray]:
    """T_0, ..., T_l (plus E_{n+1,1} when |w| = n is odd) for positive alternating w.

    T_i = sum_{j=1}^{n-2i+1} E_{j+2i, j}.  Each matrix is checked to commute
    with the string module's action and T_1^i = T_i is checked.
    """
    shape = _positive_shape(w)
    if shape is None:
        raise WordError(f"{w} is not of the form (ab)^l, (ba)^l, (ab)^l a or (ba)^l b")
    l, tail = shape
    n = len(w)
    d = n + 1
    Ts = []
    for i in range(l + 1):
        T = np.zeros((d, d), dtype=np.int64)
        for j in range(1, n - 2 * i + 2):
            T[j + 2 * i - 1, j - 1] = 1
        Ts.append(T)
    if tail:
        Ts.append(la.elementary(d, n + 1, 1))
    M = string_module(w, F)
    for T in Ts:
        for g in M.gen_list():
            if not np.array_equal(la.matmul(F, T, g), la.matmul(F, g, T)):
                raise WordError(f"basis element fails to commute for {w}")
    P = la.identity(d)
    for i in range(l + 1):
        if not np.array_equal(P, Ts[i]):
            raise WordError(f"T_1^{i} != T_{i} for {w}")
        P = la.matmul(F, P, Ts[1]) if l >= 1 else P
    return Ts


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _all_words(n: int) -> Iterator[str]:
    if n == 0:
        return
    for first in LETTERS:
        fams = ["a", "b"] if first.lower() == "a" else ["b", "a"]
        for signs in itertools.product((False, True), repeat=n - 1):
            s = [first]
            for i, up in enumerate(signs, start=1):
                c = fams[i % 2]
                s.append(c.upper() if up else c)
            yield "".join(s)


def _lex_key(s: str) -> tuple:
    return tuple(_RANK[c] for c in s)


def canonical_string(w: Word, symmetries=("inverse", "letter_swap")) -> Word:
    orbit = {w}
    changed = True
    while changed:
        changed = False
        for u in list(orbit):
            for sym in symmetries:
                v = {"inverse": word_inverse, "letter_swap": letter_swap,
                     "direction_swap": direction_swap}[sym](u)
                if v not in orbit:
                    orbit.add(v)
                    changed = True
    return min(orbit, key=lambda u: u.key)


def enumerate_words(max_len: int, symmetries=("inverse", "letter_swap")) -> list[Word]:
    """One canonical representative per class of strings with |w| <= max_len."""
    out = []
    seen = set()
    for tag in ("a", "b"):
        c = canonical_string(Word("", tag), symmetries)
        if c not in seen:
            seen.add(c)
            out.append(c)
    for n in range(1, max_len + 1):
        for s in _all_words(n):
            c = canonical_string(Word(s), symmetries)
            if c not in seen:
                seen.add(c)
                out.append(c)
    out.sort(key=lambda u: u.key)
    return out


def canonical_band(letters: str, symmetries=("inverse", "rotation", "letter_swap")) -> str:
    orbit = {letters}
    changed = True
    while changed:
        changed = False
        for u in list(orbit):
            cands = []
            if "inverse" in symmetries:
                cands.append(u[::-1].swapcase())
            if "letter_swap" in symmetries:
                cands.append(u.translate(_SWAP))
            if "rotation" in symmetries:
                cands.extend(u[k:] + u[:k] for k in range(1, len(u)))
            for v in cands:
                if v not in orbit:
                    orbit.add(v)
                    changed = True
    return min(orbit, key=_lex_key)


def enumerate_bands(max_len: int, symmetries=("inverse", "rotation", "letter_swap"),
                    min_len: int = 2) -> list[Word]:
    """Canonical primitive band words with min_len <= |w| <= max_len."""
    out = set()
    for n in range(max(2, min_len), max_len + 1, 2):
        for s in _all_words(n):
            if is_cyclic_word(s) and is_primitive(s):
                out.add(canonical_band(s, symmetries))
    return [Word(s) for s in sorted(out, key=lambda s: (len(s), _lex_key(s)))]
