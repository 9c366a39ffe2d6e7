"""Quasi-Frobenius / Frobenius / weakly symmetric / symmetric decisions.

Every flag carries how it was decided:

``witness``       an exactly verified linear form with invertible Gram matrix
``criterion``     a deterministic structural test (socle dimensions, the
                  Nakayama permutation, multiplicities of projectives)
``certificate``   a deterministic obstruction (a nonzero one-sided ideal
                  inside [A, A] rules out any symmetrizing form)
``implied``       forced by another flag through the implication chain
``probabilistic`` a random search found nothing; ``bound`` is the chance
                  that a witness exists anyway
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Literal

import numpy as np

from . import algcore as ac
from . import exactla as la
from .algcore import Algebra, InternalCheckError

Kind = Literal["witness", "criterion", "certificate", "implied", "probabilistic"]

DEFAULT_TRIALS = 4


@dataclass
class Flag:
    value: bool
    kind: Kind
    bound: float | None = None
    data: dict[str, Any] = dc_field(default_factory=dict)

    @property
    def deterministic(self) -> bool:
        return self.kind != "probabilistic"

    def to_json(self) -> dict:
        out = {"value": self.value, "kind": self.kind}
        if self.bound is not None:
            out["bound"] = self.bound
        if self.data:
            out["data"] = self.data
        return out


FLAG_NAMES = ("quasi_frobenius", "frobenius", "weakly_symmetric", "symmetric")


@dataclass
class Verdict:
    quasi_frobenius: Flag
    frobenius: Flag
    weakly_symmetric: Flag
    symmetric: Flag
    field: str = ""
    notes: dict[str, Any] = dc_field(default_factory=dict)

    def __post_init__(self):
        self.check_chain()

    def flags(self) -> tuple[bool, bool, bool, bool]:
        return tuple(getattr(self, n).value for n in FLAG_NAMES)

    def check_chain(self):
        q, f, w, s = self.flags()
        if (s and not w) or (w and not f) or (f and not q):
            raise InternalCheckError(f"implication chain violated: {self.flags()}")

    @property
    def deterministic(self) -> bool:
        return all(getattr(self, n).deterministic for n in FLAG_NAMES)

    def probabilistic_flags(self) -> list[str]:
        return [n for n in FLAG_NAMES if not getattr(self, n).deterministic]

    def to_json(self) -> dict:
        out = {n: getattr(self, n).to_json() for n in FLAG_NAMES}
        out["field"] = self.field
        if self.notes:
            out["notes"] = self.notes
        return out


# ---------------------------------------------------------------------------
# quasi-Frobenius and the Nakayama permutation
# ---------------------------------------------------------------------------

@dataclass
class QFData:
    flag: Flag
    idempotents: list[np.ndarray]
    classes: list[int]                 # class index of each idempotent
    class_sizes: list[int]             # n_c
    permutation: dict[int, int] | None  # class c -> class of Soc(A e_c)

    @property
    def local(self) -> bool:
        return len(self.idempotents) == 1


def _span_dim(A: Algebra, vecs) -> int:
    vecs = la.as_array(vecs).reshape(-1, A.dim)
    return la.rank(A.F, vecs) if vecs.shape[0] else 0


def _peirce_dims(A: Algebra, idems: list[np.ndarray], S: la.Subspace) -> np.ndarray:
    """D[j, i] = dim e_j S e_i for a two-sided ideal (or all of A) S."""
    k = len(idems)
    E = np.array(idems)
    D = np.zeros((k, k), dtype=np.int64)
    if S.dim == 0:
        return D
    for i in range(k):
        Se = la.span(A.F, A.products(S.basis, E[i]).reshape(-1, A.dim), A.dim)
        if Se.dim == 0:
            continue
        for j in range(k):
            D[j, i] = _span_dim(A, A.products(E[j], Se.basis))
    return D


def quasi_frobenius_data(A: Algebra, rng_seed=0) -> QFData:
    cached = getattr(A, "_qf_cache", None)
    if cached is not None:
        return cached
    loc = ac.is_local(A)
    if loc.is_local and loc.quotient_dim == 1:
        ls = ac.socle(A, "left").dim
        rs = ac.socle(A, "right").dim
        flag = Flag(ls == 1 and rs == 1, "criterion",
                    data={"path": "local", "left_socle_dim": ls, "right_socle_dim": rs})
        data = QFData(flag, [A.unit.copy()], [0], [1], {0: 0} if flag.value else None)
        A._qf_cache = data
        return data

    idems = ac.primitive_idempotents(A, rng_seed)
    k = len(idems)
    J = ac.radical(A).subspace
    full = la.Subspace.full(A.F, A.dim)
    DA = _peirce_dims(A, idems, full)
    DJ = _peirce_dims(A, idems, J)
    # e_i ~ e_j iff A e_i and A e_j have isomorphic tops
    classes = [-1] * k
    reps: list[int] = []
    for i in range(k):
        for c, r in enumerate(reps):
            if DA[r, i] > DJ[r, i]:
                classes[i] = c
                break
        else:
            classes[i] = len(reps)
            reps.append(i)
    sizes = [classes.count(c) for c in range(len(reps))]
    div_dims = [int(DA[r, r] - DJ[r, r]) for r in reps]

    SL = ac.socle(A, "left").subspace
    SR = ac.socle(A, "right").subspace
    DSL = _peirce_dims(A, idems, SL)  # [j, i] = dim e_j Soc e_i
    DSR = DSL if SR == SL else _peirce_dims(A, idems, SR)

    def socle_classes(getdim):
        perm = {}
        for c, r in enumerate(reps):
            mult = {}
            for c2, r2 in enumerate(reps):
                dd = getdim(r2, r)
                if dd % div_dims[c2]:  # pragma: no cover
                    raise InternalCheckError("socle dimension not a multiple of a simple's")
                if dd:
                    mult[c2] = dd // div_dims[c2]
            if sum(mult.values()) != 1:
                return None, {reps.index(r): mult}
            perm[c] = next(iter(mult))
        return perm, None

    left_perm, left_bad = socle_classes(lambda j, i: int(DSL[j, i]))   # Soc(A e_i), left
    right_perm, right_bad = socle_classes(lambda j, i: int(DSR[i, j]))  # Soc(e_i A), right
    ok = (
        left_perm is not None
        and right_perm is not None
        and len(set(left_perm.values())) == len(reps)
        and len(set(right_perm.values())) == len(reps)
    )
    flag = Flag(ok, "criterion", data={
        "path": "general",
        "primitive_idempotents": k,
        "classes": len(reps),
        "class_sizes": sizes,
        "left_socle_dim": SL.dim,
        "right_socle_dim": SR.dim,
        "nakayama_permutation": None if not ok else [left_perm[c] for c in range(len(reps))],
        "non_simple_socle": None if not (left_bad or right_bad) else str(left_bad or right_bad),
    })
    data = QFData(flag, idems, classes, sizes, left_perm if ok else None)
    A._qf_cache = data
    return data


def is_quasi_frobenius(A: Algebra, rng_seed=0) -> Flag:
    return quasi_frobenius_data(A, rng_seed).flag


# ---------------------------------------------------------------------------
# linear-form witnesses
# ---------------------------------------------------------------------------

def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def verify_frobenius_form(A: Algebra, lam) -> bool:
    G = A.gram(lam)
    return la.inverse(A.F, G) is not None


def verify_symmetrizing_form(A: Algebra, lam) -> bool:
    G = A.gram(lam)
    return np.array_equal(G, G.T) and la.inverse(A.F, G) is not None


def _search_form(A: Algebra, space: np.ndarray, rng, trials: int, symmetric: bool):
    F = A.F
    if space.shape[0] == 0:
        return None
    for _ in range(trials):
        c = F.random(rng, space.shape[0])
        if not c.any():
            continue
        lam = la.lincomb(F, c, space)
        ok = verify_symmetrizing_form(A, lam) if symmetric else verify_frobenius_form(A, lam)
        if ok:
            return lam
    return None


def frobenius_witness(A: Algebra, rng_seed=0, trials: int = DEFAULT_TRIALS) -> Flag:
    F = A.F
    rng = _rng(rng_seed)
    lam = _search_form(A, la.identity(A.dim), rng, trials, symmetric=False)
    if lam is not None:
        return Flag(True, "witness", data={"form": [F.to_hex(x) for x in lam]})
    qf = quasi_frobenius_data(A, rng_seed if not isinstance(rng_seed, np.random.Generator) else 0)
    if not qf.flag.value:
        return Flag(False, "implied", data={"reason": "not quasi-Frobenius"})
    if qf.local:
        # local with one-dimensional socle is Frobenius; reaching here means the
        # random search was unlucky, so report the deterministic answer
        return Flag(True, "criterion", data={"path": "local socle"})
    # a QF algebra is Frobenius iff the Nakayama permutation preserves the
    # multiplicities of the indecomposable projectives
    perm = qf.permutation
    sizes = qf.class_sizes
    ok = all(sizes[perm[c]] == sizes[c] for c in perm)
    return Flag(ok, "criterion", data={"path": "projective multiplicities", "class_sizes": sizes})


def weakly_symmetric_flag(A: Algebra, frob: Flag, qf: QFData) -> Flag:
    if not frob.value:
        return Flag(False, "implied", data={"reason": "not Frobenius"})
    if qf.local:
        return Flag(True, "implied", data={"reason": "local Frobenius algebra"})
    perm = qf.permutation
    ident = all(perm[c] == c for c in perm)
    return Flag(ident, "criterion", data={"nakayama_permutation": [perm[c] for c in sorted(perm)]})


def is_weakly_symmetric(A: Algebra, rng_seed=0, trials: int = DEFAULT_TRIALS) -> Flag:
    return weakly_symmetric_flag(A, frobenius_witness(A, rng_seed, trials), quasi_frobenius_data(A, rng_seed))


def symmetric_obstruction(A: Algebra) -> tuple[str, la.Subspace] | None:
    """A nonzero left or right ideal inside [A, A], if one exists."""
    K = ac.commutator_subspace(A)
    if K.dim == 0:
        return None
    for side in ("left", "right"):
        I = ac.largest_ideal_in_subspace(A, K, side)
        if I.dim:
            return side, I
    return None


def symmetric_witness(A: Algebra, rng_seed=0, trials: int = DEFAULT_TRIALS,
                      frob: Flag | None = None) -> Flag:
    F = A.F
    obst = symmetric_obstruction(A)
    if obst is not None:
        side, I = obst
        return Flag(False, "certificate", data={
            "reason": f"nonzero {side} ideal inside [A,A]",
            "ideal_dim": I.dim,
            "ideal_basis": [[F.to_hex(x) for x in row] for row in I.basis],
        })
    K = ac.commutator_subspace(A)
    forms = la.nullspace(F, K.basis) if K.dim else la.Subspace.full(F, A.dim)
    lam = _search_form(A, forms.basis, _rng(rng_seed), trials, symmetric=True)
    if lam is not None:
        return Flag(True, "witness", data={"form": [F.to_hex(x) for x in lam]})
    if frob is not None and not frob.value and frob.deterministic:
        return Flag(False, "implied", data={"reason": "not Frobenius"})
    bound = (A.dim / F.q) ** trials
    return Flag(False, "probabilistic", bound=bound, data={"trials": trials, "forms_dim": forms.dim})


# ---------------------------------------------------------------------------
# combined verdict
# ---------------------------------------------------------------------------

def classify(A: Algebra, rng_seed: int = 0, trials: int = DEFAULT_TRIALS) -> Verdict:
    rng = np.random.default_rng(rng_seed)
    qf = quasi_frobenius_data(A, rng_seed)
    frob = frobenius_witness(A, rng, trials)
    if frob.value and not qf.flag.value:  # pragma: no cover
        raise InternalCheckError("Frobenius witness on a non-QF algebra")
    ws = weakly_symmetric_flag(A, frob, qf)
    if frob.value:
        sym = symmetric_witness(A, rng, trials, frob)
        if sym.value and not ws.value:  # pragma: no cover
            raise InternalCheckError("symmetrizing form on a non weakly symmetric algebra")
        if not sym.value and not ws.value and sym.kind == "probabilistic":
            sym = Flag(False, "implied", data={"reason": "not weakly symmetric"})
    else:
        obst = symmetric_obstruction(A)
        data = {"reason": "not Frobenius"}
        if obst is not None:
            data["commutator_ideal"] = obst[0]
        sym = Flag(False, "implied", data=data)
    loc = ac.is_local(A)
    notes = {
        "dim": A.dim,
        "radical_dim": ac.radical(A).dim,
        "left_socle_dim": ac.socle(A, "left").dim,
        "right_socle_dim": ac.socle(A, "right").dim,
        "local": loc.is_local,
        "quotient_dim": loc.quotient_dim,
        "trials": trials,
        "seed": rng_seed,
    }
    if loc.non_split and loc.quotient_dim > 1:
        notes["non_split_residue_field"] = True
    return Verdict(qf.flag, frob, ws, sym, field=A.F.spec.serialize(), notes=notes)
