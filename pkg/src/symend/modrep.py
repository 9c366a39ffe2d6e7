"""Modules given by generator action matrices, and their Hom spaces.

Matrices act on column vectors.  A homomorphism M -> N is a
``dim N x dim M`` matrix T with ``T g_M = g_N T`` for every generator g.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import algcore as ac
from . import exactla as la
from .algcore import Algebra, InternalCheckError
from .gf import Field, FieldSpec, field_from_spec


class ModuleError(ValueError):
    pass


def _check_nilpotent_power(F: Field, g: np.ndarray, k: int) -> bool:
    P = la.identity(g.shape[0])
    for _ in range(k):
        P = la.matmul(F, P, g)
        if not P.any():
            return True
    return not P.any()


def _relation_checks(M: "ModulePresentation") -> None:
    """Checks demanded by the relations tag; raises ModuleError on failure."""
    tag = M.relations_tag
    F = M.field
    if tag.startswith("kD"):
        for name in ("X", "Y"):
            g = M.generators[name]
            if la.matmul(F, g, g).any():
                raise ModuleError(f"{name}^2 != 0 for a {tag} module")
        if tag.startswith("kD4q:"):
            q = int(tag.split(":")[1])
            if not annihilates_Iq(M, q):
                raise ModuleError(f"module is not annihilated by (XY)^{q} - (YX)^{q}")
    elif tag.startswith("cyclic:"):
        order = int(tag.split(":")[1])
        g = M.generators["x-1"]
        if not _check_nilpotent_power(F, g, order):
            raise ModuleError(f"(x-1)^{order} != 0")


def annihilates_Iq(M: "ModulePresentation", q: int) -> bool:
    """True iff (XY)^q = (YX)^q on M, i.e. M is a kD_{4q}-module."""
    F = M.field
    X, Y = M.generators["X"], M.generators["Y"]
    XY = la.matmul(F, X, Y)
    YX = la.matmul(F, Y, X)
    A = la.identity(M.dim)
    B = la.identity(M.dim)
    for _ in range(q):
        A = la.matmul(F, A, XY)
        B = la.matmul(F, B, YX)
    return np.array_equal(A, B)


@dataclass(eq=False)
class ModulePresentation:
    field: Field
    dim: int
    generators: dict[str, np.ndarray]
    relations_tag: str = ""
    label: str = ""

    def __post_init__(self):
        gens = {}
        for name, g in self.generators.items():
            g = la.as_array(g)
            if g.shape != (self.dim, self.dim):
                raise ModuleError(f"generator {name} has shape {g.shape}, expected {(self.dim, self.dim)}")
            g.setflags(write=False)
            gens[name] = g
        self.generators = gens
        _relation_checks(self)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(sorted(self.generators))

    def gen_list(self) -> list[np.ndarray]:
        return [self.generators[n] for n in self.names]

    def to_json(self) -> dict:
        F = self.field
        return {
            "field": F.spec.serialize(),
            "dim": self.dim,
            "relations_tag": self.relations_tag,
            "label": self.label,
            "generators": {
                n: [F.to_hex(x) for x in g.reshape(-1)] for n, g in sorted(self.generators.items())
            },
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "ModulePresentation":
        if isinstance(data, str):
            data = json.loads(data)
        F = field_from_spec(FieldSpec.parse(data["field"]))
        d = int(data["dim"])
        gens = {
            n: np.array([F.from_hex(h) for h in v], dtype=np.int64).reshape(d, d)
            for n, v in data["generators"].items()
        }
        return cls(F, d, gens, data.get("relations_tag", ""), data.get("label", ""))

    def same_as(self, other: "ModulePresentation") -> bool:
        return (
            self.field == other.field
            and self.dim == other.dim
            and self.names == other.names
            and all(np.array_equal(self.generators[n], other.generators[n]) for n in self.names)
        )

    def __repr__(self):
        lab = f" {self.label}" if self.label else ""
        return f"Module({self.dim}-dim{lab}, gens={list(self.names)})"


@dataclass(eq=False)
class HomSpace:
    source: ModulePresentation
    target: ModulePresentation
    basis: np.ndarray  # (k, dim target, dim source)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


def _compatible(M: ModulePresentation, N: ModulePresentation):
    if M.field != N.field:
        raise ModuleError("modules over different fields")
    if M.names != N.names:
        raise ModuleError(f"generator mismatch: {M.names} vs {N.names}")


def hom(M: ModulePresentation, N: ModulePresentation) -> HomSpace:
    """Basis of Hom(M, N) = {T : T g_M = g_N T}, one nullspace computation.

    With T flattened row-major (index a*m + b), (T g)[a, c] = sum_b T[a, b] g[b, c]
    gives the block I_n ⊗ g^T and (h T)[a, c] = sum_b h[a, b] T[b, c] the
    block h ⊗ I_m.
    """
    _compatible(M, N)
    F = M.field
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return HomSpace(M, N, np.zeros((0, n, m), dtype=np.int64))
    blocks = []
    for name in M.names:
        g, h = M.generators[name], N.generators[name]
        blocks.append(F.vsub(la.kron(F, la.identity(n), g.T), la.kron(F, h, la.identity(m))))
    if blocks:
        S = la.nullspace(F, np.vstack(blocks))
    else:
        S = la.Subspace.full(F, n * m)
    basis = S.basis.reshape(-1, n, m).copy()
    for T in basis:
        for name in M.names:
            if not np.array_equal(la.matmul(F, T, M.generators[name]), la.matmul(F, N.generators[name], T)):
                raise InternalCheckError("hom basis element does not intertwine")  # pragma: no cover
    return HomSpace(M, N, basis)


def end_algebra(M: ModulePresentation) -> Algebra:
    H = hom(M, M)
    return Algebra.from_matrices(M.field, H.basis)


def direct_sum(*mods: ModulePresentation) -> ModulePresentation:
    if not mods:
        raise ModuleError("empty direct sum")
    first = mods[0]
    for M in mods[1:]:
        _compatible(first, M)
    d = sum(M.dim for M in mods)
    gens = {}
    for name in first.names:
        G = np.zeros((d, d), dtype=np.int64)
        off = 0
        for M in mods:
            G[off:off + M.dim, off:off + M.dim] = M.generators[name]
            off += M.dim
        gens[name] = G
    tags = {M.relations_tag for M in mods}
    label = " + ".join(M.label or "?" for M in mods)
    return ModulePresentation(first.field, d, gens, tags.pop() if len(tags) == 1 else "", label)


def change_field(M: ModulePresentation, dst: Field) -> ModulePresentation:
    from .gf import embedding

    emb = embedding(M.field, dst)
    gens = {n: emb.array(g) for n, g in M.generators.items()}
    return ModulePresentation(dst, M.dim, gens, M.relations_tag, M.label)


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------

@dataclass
class IsoResult:
    value: bool
    kind: str                 # "witness", "refutation", "probabilistic"
    witness: np.ndarray | None = None
    bound: float | None = None
    reason: str = ""

    def __bool__(self):
        return self.value


def is_isomorphic(M: ModulePresentation, N: ModulePresentation, rng_seed=0,
                  trials: int = 4, probes: tuple[ModulePresentation, ...] = ()) -> IsoResult:
    _compatible(M, N)
    F = M.field
    if M.dim != N.dim:
        return IsoResult(False, "refutation", reason="dimensions differ")
    if M.dim == 0:
        return IsoResult(True, "witness", np.zeros((0, 0), dtype=np.int64))
    H = hom(M, N)
    if H.dim == 0:
        return IsoResult(False, "refutation", reason="Hom(M,N) = 0")
    coeffs = la.invertible_in_span(F, H.basis, trials, rng_seed)
    if coeffs is not None:
        T = la.lincomb(F, coeffs, H.basis)
        return IsoResult(True, "witness", T)
    # deterministic refutations by Hom dimensions against probe modules,
    # always including M and N themselves
    for P in (M, N) + tuple(probes):
        if hom(P, M).dim != hom(P, N).dim or hom(M, P).dim != hom(N, P).dim:
            return IsoResult(False, "refutation", reason=f"Hom dimensions against {P.label or 'a probe'} differ")
    return IsoResult(False, "probabilistic", bound=(M.dim / F.q) ** trials,
                     reason="no invertible element found in Hom(M,N)")


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------

def restrict(M: ModulePresentation, U: la.Subspace, label: str = "") -> ModulePresentation:
    """The submodule spanned by the rows of U.basis (column vectors of M)."""
    F = M.field
    B = U.basis  # rows are vectors u; g u must lie in U
    gens = {}
    for name, g in M.generators.items():
        img = la.matmul(F, B, g.T)  # rows (g u)^T
        if not U.contains_all(img):
            raise ModuleError("subspace is not a submodule")
        # coordinates of g u_b in the echelon basis; new matrix columns
        gens[name] = U.coords(img).T.copy()
    return ModulePresentation(F, U.dim, gens, M.relations_tag, label)


def summand_images(M: ModulePresentation, rng_seed=0) -> list[tuple[np.ndarray, ModulePresentation]]:
    """Split M by the primitive idempotents of End(M): pairs (idempotent, image)."""
    E = end_algebra(M)
    idems = ac.primitive_idempotents(E, rng_seed)
    out = []
    for e in idems:
        P = E.to_matrix(e)
        U = la.span(M.field, P.T, M.dim)  # column space of P
        out.append((P, restrict(M, U)))
    if sum(S.dim for _, S in out) != M.dim:  # pragma: no cover
        raise InternalCheckError("summand dimensions do not add up")
    return out


def indecompose(M: ModulePresentation, rng_seed=0) -> list[tuple[ModulePresentation, int]]:
    """Indecomposable summands of M grouped by isomorphism, with multiplicities."""
    pieces = [S for _, S in summand_images(M, rng_seed)]
    groups: list[list[ModulePresentation]] = []
    for S in pieces:
        for g in groups:
            if is_isomorphic(g[0], S, rng_seed).value:
                g.append(S)
                break
        else:
            groups.append([S])
    for i, g in enumerate(groups):
        if not g[0].label:
            g[0].label = f"{M.label or 'M'}[{i}]"
    return [(g[0], len(g)) for g in groups]


def is_indecomposable(M: ModulePresentation) -> bool:
    E = end_algebra(M)
    return ac.is_local(E).is_local


def is_isotypic(M: ModulePresentation, rng_seed=0) -> bool:
    return len(indecompose(M, rng_seed)) == 1


# ---------------------------------------------------------------------------
# the non-symmetry witness
# ---------------------------------------------------------------------------

def notsym_witness(M1: ModulePresentation, M2: ModulePresentation) -> np.ndarray | None:
    """Nonzero β in Hom(M2, M1) with f β = 0 for every f in Hom(M1, M2), if any.

    Such a β shows End(M1 ⊕ M2) is not symmetric.
    """
    F = M1.field
    H21 = hom(M2, M1).basis  # (k, d1, d2)
    H12 = hom(M1, M2).basis  # (l, d2, d1)
    k = H21.shape[0]
    if k == 0:
        return None
    d1, d2 = M1.dim, M2.dim
    if H12.shape[0] == 0:
        return H21[0].copy()
    # f β = sum_i c_i f H21[i]; columns index i, rows index (f, entries)
    cols = []
    for i in range(k):
        prods = [la.matmul(F, f, H21[i]).reshape(-1) for f in H12]
        cols.append(np.concatenate(prods))
    system = np.array(cols, dtype=np.int64).T
    sol = la.nullspace(F, system)
    if sol.dim == 0:
        return None
    beta = la.lincomb(F, sol.basis[0], H21)
    for f in H12:
        if la.matmul(F, f, beta).any():  # pragma: no cover
            raise InternalCheckError("notsym witness check failed")
    return beta


# ---------------------------------------------------------------------------
# cyclic groups and module invariants
# ---------------------------------------------------------------------------

def jordan_module(F: Field, sizes, order: int | None = None, label: str = "") -> ModulePresentation:
    """x - 1 acting by nilpotent Jordan blocks of the given sizes."""
    sizes = [int(s) for s in sizes]
    d = sum(sizes)
    N = np.zeros((d, d), dtype=np.int64)
    off = 0
    for s in sizes:
        if s < 1:
            raise ModuleError("Jordan block sizes must be positive")
        N[off:off + s, off:off + s] = la.jordan_block(F, s, 0)
        off += s
    tag = f"cyclic:{order}" if order else ""
    return ModulePresentation(F, d, {"x-1": N}, tag, label or "J" + ",".join(map(str, sizes)))


def cyclic_group_module(r: int, parts, F: Field | None = None, p: int = 2) -> ModulePresentation:
    """k[Z_{p^r}]-module with x - 1 acting by Jordan blocks J_s(0), s in parts."""
    from .gf import GF

    if F is None:
        F = GF(p, 1)
    p = F.p
    order = p ** r
    for s in parts:
        if s > order:
            raise ModuleError(f"part {s} exceeds the group order {order}")
    return jordan_module(F, parts, order, label=f"Z{order}:" + ",".join(map(str, parts)))


def module_radical_dim(M: ModulePresentation) -> int:
    """dim of sum_g g M (the radical when the generators generate J(Λ))."""
    if M.dim == 0:
        return 0
    imgs = np.hstack(M.gen_list()) if M.generators else np.zeros((M.dim, 0), dtype=np.int64)
    return la.rank(M.field, imgs)


def module_top_dim(M: ModulePresentation) -> int:
    return M.dim - module_radical_dim(M)


def module_socle_dim(M: ModulePresentation) -> int:
    """dim of the joint kernel of the generators."""
    if not M.generators:
        return M.dim
    return la.nullspace(M.field, np.vstack(M.gen_list())).dim


def regular_module_from_algebra(A: Algebra, names_to_elements: dict[str, np.ndarray],
                                tag: str = "", label: str = "") -> ModulePresentation:
    """A acting on itself by left multiplication by the given elements."""
    gens = {n: A.left_op(x) for n, x in names_to_elements.items()}
    return ModulePresentation(A.F, A.dim, gens, tag, label)
