import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from symend import classify as cl
from symend import dihedral as dh
from symend import exactla as la
from symend import modrep as mr
from symend.gf import GF
from symend.suites import omega


def E(d, *pairs):
    """Sum of 1-based matrix units E_ij."""
    M = np.zeros((d, d), dtype=np.int64)
    for i, j in pairs:
        M[i - 1, j - 1] = 1
    return M


def _blocks(m, layout, J):
    """Block matrix from a 4x4 layout of None / 'I' / 'J'."""
    n = len(layout)
    M = np.zeros((n * m, n * m), dtype=np.int64)
    for r, row in enumerate(layout):
        for c, x in enumerate(row):
            if x is not None:
                M[r * m:(r + 1) * m, c * m:(c + 1) * m] = la.identity(m) if x == "I" else J
    return M


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------

def test_word_parse_and_alternation():
    assert dh.word_parse("aBAbA").letters == "aBAbA"
    for bad in ("aa", "abb", "aBb", "xy"):
        with pytest.raises(dh.WordError):
            dh.word_parse(bad)
    with pytest.raises(dh.WordError):
        dh.word_parse("")


def test_word_inverse():
    assert dh.word_inverse(dh.Word("ab")).letters == "BA"
    assert str(dh.word_inverse(dh.word_parse("1_a"))) == "1_b"
    assert dh.word_inverse(dh.word_inverse(dh.Word("aBAb"))) == dh.Word("aBAb")


def test_swaps_and_rotation():
    assert dh.letter_swap(dh.Word("aB")).letters == "bA"
    assert dh.direction_swap(dh.Word("aB")).letters == "Ab"
    assert dh.word_rotate(dh.Word("abAB"), 1).letters == "bABa"


def test_band_spec_validation(Fbig):
    with pytest.raises(dh.WordError):
        dh.BandSpec(dh.Word("aba"), 1, 1, Fbig)     # odd length
    with pytest.raises(dh.WordError):
        dh.BandSpec(dh.Word("abab"), 1, 1, Fbig)    # proper power
    with pytest.raises(dh.WordError):
        dh.BandSpec(dh.Word("ab"), 1, 0, Fbig)      # zero parameter


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------

def test_string_module_matrices(Fbig):
    M = dh.string_module(dh.word_parse("AbaBA"), Fbig)
    assert np.array_equal(M.generators["X"], E(6, (1, 2), (4, 3), (5, 6)))
    assert np.array_equal(M.generators["Y"], E(6, (3, 2), (4, 5)))
    M = dh.string_module(dh.Word("ab"), Fbig)
    assert np.array_equal(M.generators["X"], E(3, (2, 1)))
    assert np.array_equal(M.generators["Y"], E(3, (3, 2)))


def test_empty_string_is_simple(Fbig):
    M = dh.string_module(dh.word_parse("1_a"), Fbig)
    assert M.dim == 1 and not M.generators["X"].any() and not M.generators["Y"].any()


@pytest.mark.parametrize("m", [1, 2, 3])
def test_band_module_matches_display(m, Fbig):
    lam = omega(Fbig)
    M = dh.band_module(dh.BandSpec(dh.Word("abAB"), m, lam, Fbig))
    J = la.jordan_block(Fbig, m, lam)
    X = _blocks(m, [[None] * 4, ["I", None, None, None], [None, None, None, "I"], [None] * 4], J)
    Y = _blocks(m, [[None] * 4, [None] * 4, [None, "I", None, None], ["J", None, None, None]], J)
    assert np.array_equal(M.generators["X"], X)
    assert np.array_equal(M.generators["Y"], Y)


def test_band_ab_inverse_is_klein_four_module(Fbig):
    M = dh.band_module(dh.BandSpec(dh.Word("aB"), 1, omega(Fbig), Fbig))
    assert M.dim == 2 and dh.annihilates_Iq(M, 1)


def test_annihilates_Iq(Fbig):
    M = dh.string_module(dh.Word("ab"), Fbig)
    XY = la.matmul(Fbig, M.generators["X"], M.generators["Y"])
    YX = la.matmul(Fbig, M.generators["Y"], M.generators["X"])
    assert dh.annihilates_Iq(M, 1) == np.array_equal(XY, YX)
    assert not dh.annihilates_Iq(M, 1)
    assert dh.annihilates_Iq(dh.dihedral_regular_module(Fbig, 2), 2)
    assert dh.annihilates_Iq(dh.dihedral_regular_module(Fbig, 1), 1)


def test_regular_module_dims(Fbig):
    for q in (1, 2, 3):
        assert dh.dihedral_regular_module(Fbig, q).dim == 4 * q


@pytest.mark.parametrize("w", [str(u) for u in dh.enumerate_words(6)])
def test_string_relations_and_faithfulness(w, Fbig):
    M = dh.string_module(dh.word_parse(w), Fbig)
    assert M.dim == len(dh.word_parse(w)) + 1
    for g in M.gen_list():
        assert not la.matmul(Fbig, g, g).any()
    assert dh.x_never_merges(M)


# ---------------------------------------------------------------------------
# isomorphism laws
# ---------------------------------------------------------------------------

def test_string_inverse_isomorphic(Fbig):
    w = dh.word_parse("AbaBA")
    r = mr.is_isomorphic(dh.string_module(w, Fbig), dh.string_module(dh.word_inverse(w), Fbig))
    assert r.value and r.kind == "witness"


@pytest.mark.parametrize("w", ["abAB", "aB", "abaBAB", "abAbaB"])
@pytest.mark.parametrize("m", [1, 2])
def test_band_rotation_and_inverse_isomorphic(w, m, Fbig):
    lam = omega(Fbig)
    spec = dh.BandSpec(dh.Word(w), m, lam, Fbig)
    M = dh.band_module(spec)
    for k in range(1, len(w)):
        assert mr.is_isomorphic(M, dh.band_module(dh.band_rotate(spec, k))).value
    assert mr.is_isomorphic(M, dh.band_module(dh.band_inverse(spec))).value


def test_band_rotation_without_inversion_can_fail(Fbig):
    # rotating abAB by one moves the parameter onto an edge of opposite
    # orientation; keeping λ unchanged gives a different module when λ ≠ λ^{-1}
    lam = omega(Fbig)
    spec = dh.BandSpec(dh.Word("abAB"), 1, lam, Fbig)
    naive = dh.BandSpec(dh.word_rotate(spec.word, 1), 1, lam, Fbig)
    assert not mr.is_isomorphic(dh.band_module(spec), dh.band_module(naive)).value


# ---------------------------------------------------------------------------
# expected verdicts and explicit bases
# ---------------------------------------------------------------------------

def test_expected_string_verdicts():
    assert dh.expected_string_verdict(dh.Word("ababab")) == (True,) * 4
    assert dh.expected_string_verdict(dh.Word("aba")) == (False,) * 4
    assert dh.expected_string_verdict(dh.Word("b")) == (True,) * 4
    assert dh.expected_string_verdict(dh.word_parse("1_b")) == (True,) * 4
    assert dh.expected_string_verdict(dh.Word("BABA")) == (True,) * 4


def test_expected_band_verdicts(Fbig):
    w = omega(Fbig)
    assert dh.expected_band_verdict(dh.BandSpec(dh.Word("ab"), 5, w, Fbig)) == (True,) * 4
    assert dh.expected_band_verdict(dh.BandSpec(dh.Word("abaBAB"), 1, 1, Fbig)) == (True, True, True, False)
    assert dh.expected_band_verdict(dh.BandSpec(dh.Word("abAB"), 1, 1, Fbig)) == (True,) * 4
    assert dh.expected_band_verdict(dh.BandSpec(dh.Word("abAB"), 1, w, Fbig)) == (True, True, True, False)
    assert dh.expected_band_verdict(dh.BandSpec(dh.Word("abAB"), 2, 1, Fbig)) == (False,) * 4


def test_band_ab_end_is_truncated_polynomial(Fbig):
    M = dh.band_module(dh.BandSpec(dh.Word("ab"), 5, omega(Fbig), Fbig))
    Ealg = mr.end_algebra(M)
    assert Ealg.dim == 5 and Ealg.is_commutative()
    assert cl.classify(Ealg).symmetric.value


def test_string_endo_basis_examples(Fbig):
    T = dh.string_endo_basis(dh.Word("abab"), Fbig)
    assert len(T) == 3
    assert np.array_equal(T[1], E(5, (3, 1), (4, 2), (5, 3)))
    assert np.array_equal(T[2], E(5, (5, 1)))
    T = dh.string_endo_basis(dh.Word("ab"), Fbig)
    assert np.array_equal(T[1], E(3, (3, 1)))
    T = dh.string_endo_basis(dh.Word("aba"), Fbig)
    assert len(T) == 3 and np.array_equal(T[-1], E(4, (4, 1)))


@pytest.mark.parametrize("w", ["a", "ab", "ba", "aba", "abab", "babab", "ababab"])
def test_string_endo_basis_spans_end(w, Fbig):
    T = dh.string_endo_basis(dh.Word(w), Fbig)
    H = mr.hom(*(2 * [dh.string_module(dh.Word(w), Fbig)]))
    assert H.dim == len(T)
    span = la.span(Fbig, H.basis.reshape(H.dim, -1))
    assert span == la.span(Fbig, np.array(T).reshape(len(T), -1))


def test_string_endo_basis_rejects_other_shapes(Fbig):
    with pytest.raises(dh.WordError):
        dh.string_endo_basis(dh.Word("aB"), Fbig)


# ---------------------------------------------------------------------------
# enumeration, checked against orbit counting by brute force
# ---------------------------------------------------------------------------

def _brute_strings(n):
    letters = "aAbB"
    out = []
    for t in itertools.product(letters, repeat=n):
        s = "".join(t)
        if all(x.lower() != y.lower() for x, y in zip(s, s[1:])):
            out.append(s)
    return out


def _orbit_count(words, moves):
    seen, count = set(), 0
    for w in words:
        if w in seen:
            continue
        count += 1
        stack = [w]
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            stack.extend(f(u) for f in moves)
    return count


INV = lambda s: s[::-1].swapcase()  # noqa: E731
SWAP = lambda s: s.translate(str.maketrans("abAB", "baBA"))  # noqa: E731


def test_enumerate_words_small():
    words = [str(w) for w in dh.enumerate_words(2)]
    assert words[0] == "1_a"
    assert {"a", "ab", "aB", "Ab"} <= set(words)
    assert not any("aa" in w for w in words)
    # only one empty word once inverses are identified
    assert sum(1 for w in words if w.startswith("1_")) == 1
    assert len(dh.enumerate_words(0, symmetries=())) == 2


@pytest.mark.parametrize("n", range(1, 8))
def test_enumerate_words_counts(n):
    got = sum(1 for w in dh.enumerate_words(n) if len(w) == n)
    assert got == _orbit_count(_brute_strings(n), [INV, SWAP])


def test_enumerate_bands_small():
    b2 = [w.letters for w in dh.enumerate_bands(2)]
    assert sorted(b2) == sorted({dh.canonical_band("ab"), dh.canonical_band("aB")})
    b4 = {w.letters for w in dh.enumerate_bands(4)}
    assert dh.canonical_band("abAB") in b4
    assert "abab" not in b4


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_enumerate_bands_counts(n):
    words = [s for s in _brute_strings(n)
             if s[0].lower() != s[-1].lower() and all(s != s[:d] * (n // d) for d in range(1, n) if n % d == 0)]
    rot = lambda s: s[1:] + s[:1]  # noqa: E731
    got = sum(1 for w in dh.enumerate_bands(n) if len(w) == n)
    assert got == _orbit_count(words, [INV, SWAP, rot])


@given(st.text(alphabet="aAbB", min_size=1, max_size=9))
def test_canonical_string_is_orbit_invariant(s):
    try:
        w = dh.Word(s)
    except dh.WordError:
        return
    c = dh.canonical_string(w)
    assert dh.canonical_string(dh.word_inverse(w)) == c
    assert dh.canonical_string(dh.letter_swap(w)) == c


# ---------------------------------------------------------------------------
# classification agreement on a sample (full runs live in the suites)
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("w", ["1_a", "a", "ab", "aB", "aba", "abab", "abAB", "aBaB", "ababa"])
def test_string_classification_sample(w, Fbig):
    word = dh.word_parse(w)
    V = cl.classify(mr.end_algebra(dh.string_module(word, Fbig)))
    assert V.flags() == dh.expected_string_verdict(word)


def test_band_classification_over_small_field():
    F = GF(2, 4)
    lam = omega(F)
    for w, m in [("ab", 2), ("aB", 1), ("abAB", 1), ("abaBAB", 1)]:
        spec = dh.BandSpec(dh.Word(w), m, lam, F)
        V = cl.classify(mr.end_algebra(dh.band_module(spec)))
        assert V.flags() == dh.expected_band_verdict(spec)
