import itertools

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from symend import algcore as ac
from symend import classify as cl
from symend import dihedral as dh
from symend import exactla as la
from symend import modrep as mr
from symend.gf import GF


def _over(F, A):
    """The same structure constants read over another field of the same characteristic."""
    return ac.Algebra(F, A.C, A.unit)


def brute_form_flags(A):
    """(Frobenius, symmetric) by trying every linear form over a tiny field.

    A form with invertible Gram matrix exists over k iff one exists over any
    extension (isomorphism of modules descends along field extensions), so
    this is a valid oracle for the big-field classification of the same algebra.
    """
    F = A.F
    comm = ac.commutator_subspace(A)
    frob = sym = False
    for lam in itertools.product(range(F.q), repeat=A.dim):
        lam = np.array(lam, dtype=np.int64)
        if la.inverse(F, A.gram(lam)) is None:
            continue
        frob = True
        if not la.matmul(F, comm.basis, lam[:, None]).any():
            sym = True
            break
    return frob, sym


def _random_algebra(seed, n, ngens):
    F = GF(2)
    rng = np.random.default_rng(seed)
    gens = []
    for _ in range(ngens):
        g = F.random(rng, (n, n)) * (rng.random((n, n)) < 0.4)
        if rng.random() < 0.5:
            g = np.triu(g)
        gens.append(g)
    return ac.generated_subalgebra(F, gens)


# ---------------------------------------------------------------------------
# named examples
# ---------------------------------------------------------------------------

def test_truncated_polynomial_all_true(Fbig):
    V = cl.classify(ac.truncated_polynomial_algebra(Fbig, 3))
    assert V.flags() == (True, True, True, True)
    assert V.deterministic


def test_monogenic_delta_form_is_a_witness(Fbig):
    e = 4
    A = ac.truncated_polynomial_algebra(Fbig, e)
    lam = np.zeros(e, dtype=np.int64)
    lam[e - 1] = 1
    assert cl.verify_frobenius_form(A, lam)
    assert cl.verify_symmetrizing_form(A, lam)


def test_upper_triangular_not_frobenius(F2, F4, Fbig):
    for F in (F2, F4):
        assert brute_form_flags(ac.upper_triangular_algebra(F, 2)) == (False, False)
    V = cl.classify(ac.upper_triangular_algebra(Fbig, 2))
    assert V.flags() == (False, False, False, False)
    assert V.quasi_frobenius.kind == "criterion"


def test_k_times_k(Fbig):
    A = ac.product_algebra(Fbig, 2)
    assert cl.verify_symmetrizing_form(A, np.array([1, 1]))
    assert cl.classify(A).flags() == (True, True, True, True)


def test_cyclic_non_isotypic_not_qf(F2, Fbig):
    M = mr.cyclic_group_module(2, [2, 3], Fbig)
    V = cl.classify(mr.end_algebra(M))
    assert not V.quasi_frobenius.value and V.quasi_frobenius.deterministic


def test_string_aba_all_false(Fbig):
    E = mr.end_algebra(dh.string_module(dh.Word("aba"), Fbig))
    assert ac.socle(E, "left").dim == 2
    V = cl.classify(E)
    assert V.flags() == (False, False, False, False) and V.deterministic


def test_band_n4_lambda1_all_true(Fbig):
    M = dh.band_module(dh.BandSpec(dh.Word("abAB"), 1, 1, Fbig))
    assert cl.classify(mr.end_algebra(M)).flags() == (True, True, True, True)


def test_band_n4_lambda_omega_frobenius_not_symmetric(Fbig):
    from symend.suites import omega

    M = dh.band_module(dh.BandSpec(dh.Word("abAB"), 1, omega(Fbig), Fbig))
    V = cl.classify(mr.end_algebra(M))
    assert V.frobenius.value and not V.symmetric.value
    assert V.symmetric.kind == "certificate"


def test_band_n6_certificate(Fbig):
    M = dh.band_module(dh.BandSpec(dh.Word("abaBAB"), 1, 1, Fbig))
    V = cl.classify(mr.end_algebra(M))
    assert V.weakly_symmetric.value and not V.symmetric.value
    assert V.symmetric.kind == "certificate" and V.symmetric.data["ideal_dim"] >= 1


def test_matrix_algebra_symmetric(Fbig):
    V = cl.classify(ac.full_matrix_algebra(Fbig, 3))
    assert V.flags() == (True, True, True, True)


def test_frobenius_not_weakly_symmetric(Fbig):
    # Nakayama algebra with two simples and projectives of length 2: Frobenius,
    # but the Nakayama permutation swaps the simples
    from symend import nakayama as nk

    A = nk.NakayamaAlgebraSpec(2, "cyclic", (2, 2))
    P = mr.direct_sum(*[nk.realize_module(nk.UniserialSpec(A, i, 2), Fbig) for i in (1, 2)])
    V = cl.classify(mr.end_algebra(P))
    assert V.flags() == (True, True, False, False)


def test_chain_violation_rejected():
    t = cl.Flag(True, "criterion")
    f = cl.Flag(False, "criterion")
    with pytest.raises(ac.InternalCheckError):
        cl.Verdict(f, f, f, t)


def test_verdict_json(Fbig):
    V = cl.classify(ac.upper_triangular_algebra(Fbig, 2))
    data = V.to_json()
    assert set(cl.FLAG_NAMES) <= set(data)
    assert data["field"] == Fbig.spec.serialize()


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

@given(seed=st.integers(0, 10 ** 6), n=st.integers(2, 4), ngens=st.integers(1, 2))
def test_form_flags_match_exhaustive_search(seed, n, ngens):
    A2 = _random_algebra(seed, n, ngens)
    assume(A2.dim <= 5)
    frob, sym = brute_form_flags(A2)
    V = cl.classify(_over(GF(2, 16), A2))
    assert (V.frobenius.value, V.symmetric.value) == (frob, sym)
    # quasi-Frobenius whenever Frobenius; chain enforced
    assert V.quasi_frobenius.value or not frob


@pytest.mark.parametrize("seed", range(50))
def test_monogenic_algebras_are_symmetric(seed):
    F = GF(2, 16)
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 13))
    # random Jordan form with few eigenvalues, conjugated by a random matrix
    blocks, size = [], 0
    while size < n:
        m = int(rng.integers(1, n - size + 1))
        blocks.append(la.jordan_block(F, m, int(rng.integers(0, 3))))
        size += m
    J = np.zeros((n, n), dtype=np.int64)
    k = 0
    for B in blocks:
        J[k:k + len(B), k:k + len(B)] = B
        k += len(B)
    while True:
        P = F.random(rng, (n, n))
        Pinv = la.inverse(F, P)
        if Pinv is not None:
            break
    X = la.matmul(F, la.matmul(F, P, J), Pinv)
    A = ac.generated_subalgebra(F, [X])
    assert A.dim <= 12
    V = cl.classify(A, rng_seed=seed)
    assert V.symmetric.value and V.deterministic


SAMPLES = {
    "k[T]/T^2": lambda F: ac.truncated_polynomial_algebra(F, 2),
    "UT2": lambda F: ac.upper_triangular_algebra(F, 2),
    "kxk": lambda F: ac.product_algebra(F, 2),
    "E(aba)": lambda F: mr.end_algebra(dh.string_module(dh.Word("aba"), F)),
    "E(abAB)": lambda F: mr.end_algebra(dh.band_module(dh.BandSpec(dh.Word("abAB"), 1, 1, F))),
}


@pytest.mark.parametrize("name", sorted(SAMPLES))
def test_morita_stability(name, Fbig):
    A = SAMPLES[name](Fbig)
    assert cl.classify(A).flags() == cl.classify(ac.matrix_algebra_over(A, 2)).flags()


@pytest.mark.parametrize("name", sorted(SAMPLES))
def test_invariance_permutation_field_seed(name, Fbig):
    A = SAMPLES[name](GF(2))
    ref = cl.classify(_over(Fbig, A)).flags()
    perm = np.random.default_rng(1).permutation(A.dim)
    assert cl.classify(_over(Fbig, A).permuted(perm)).flags() == ref
    assert cl.classify(_over(GF(2, 32), A)).flags() == ref
    for seed in (1, 2, 3):
        assert cl.classify(_over(Fbig, A), rng_seed=seed).flags() == ref


@given(seed=st.integers(0, 10 ** 6), n=st.integers(2, 5), ngens=st.integers(1, 3))
def test_witnesses_verify_exactly(seed, n, ngens):
    A = _over(GF(2, 16), _random_algebra(seed, n, ngens))
    V = cl.classify(A, rng_seed=seed)
    F = A.F
    for name in ("frobenius", "symmetric"):
        flag = getattr(V, name)
        if flag.kind == "witness":
            lam = np.array([F.from_hex(h) for h in flag.data["form"]], dtype=np.int64)
            G = A.gram(lam)
            assert la.inverse(F, G) is not None
            if name == "symmetric":
                assert np.array_equal(G, G.T)


def test_exhaustive_oracle_frobenius_not_symmetric(F2, F4, Fbig):
    from symend import nakayama as nk
    from symend.suites import omega

    A = nk.NakayamaAlgebraSpec(2, "cyclic", (2, 2))
    P2 = mr.direct_sum(*[nk.realize_module(nk.UniserialSpec(A, i, 2), F2) for i in (1, 2)])
    assert brute_form_flags(mr.end_algebra(P2)) == (True, False)

    w = omega(F4)
    E4 = mr.end_algebra(dh.band_module(dh.BandSpec(dh.Word("abAB"), 1, w, F4)))
    assert brute_form_flags(E4) == (True, False)
    big = cl.classify(mr.end_algebra(dh.band_module(dh.BandSpec(dh.Word("abAB"), 1, omega(Fbig), Fbig))))
    assert (big.frobenius.value, big.symmetric.value) == (True, False)
