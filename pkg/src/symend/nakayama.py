"""Basic connected Nakayama algebras and their uniserial modules.

Simples are numbered 1..n.  The uniserial module with top S_i and Loewy
length j has composition factors S_i, S_{i+1}, ..., S_{i+j-1} from the top
down (indices mod n for the cyclic quiver, no wraparound for the linear
one).  Everything here is combinatorial; :func:`realize_module` builds
matrices for cross-checking against :mod:`symend.modrep`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .gf import Field
from .modrep import ModulePresentation

Shape = Literal["linear", "cyclic"]


class NakayamaError(ValueError):
    pass


@dataclass(frozen=True)
class NakayamaAlgebraSpec:
    n: int
    shape: Shape
    proj_lengths: tuple[int, ...]

    def __post_init__(self):
        n, pl = self.n, self.proj_lengths
        if n < 1 or len(pl) != n:
            raise NakayamaError("need one projective Loewy length per simple")
        if self.shape == "cyclic":
            for i in range(n):
                nxt = pl[(i + 1) % n]
                if not (nxt >= pl[i] - 1 >= 1):
                    raise NakayamaError(f"Kupisch condition fails at P_{i + 1}: {pl}")
        elif self.shape == "linear":
            for i in range(n):
                if not 1 <= pl[i] <= n - i:
                    raise NakayamaError(f"P_{i + 1} of length {pl[i]} does not fit the linear quiver")
                if i + 1 < n and pl[i + 1] < pl[i] - 1:
                    raise NakayamaError(f"Kupisch condition fails at P_{i + 2}: {pl}")
        else:
            raise NakayamaError(f"unknown shape {self.shape!r}")

    def simple_index(self, i: int) -> int:
        """Normalize a simple index to 1..n (mod n for cyclic)."""
        if self.shape == "cyclic":
            return (i - 1) % self.n + 1
        return i

    def modules(self) -> list["UniserialSpec"]:
        return [UniserialSpec(self, i, j) for i in range(1, self.n + 1)
                for j in range(1, self.proj_lengths[i - 1] + 1)]

    def label(self) -> str:
        return f"nakayama:{self.shape}:n={self.n}:pl=" + ",".join(map(str, self.proj_lengths))


@dataclass(frozen=True)
class UniserialSpec:
    algebra: NakayamaAlgebraSpec
    top: int
    length: int

    def __post_init__(self):
        A = self.algebra
        if not 1 <= self.top <= A.n:
            raise NakayamaError(f"top {self.top} out of range 1..{A.n}")
        if not 1 <= self.length <= A.proj_lengths[self.top - 1]:
            raise NakayamaError(
                f"length {self.length} exceeds the projective P_{self.top} of length {A.proj_lengths[self.top - 1]}")

    def label(self) -> str:
        return f"U(top={self.top},len={self.length})"

    def __str__(self):
        return self.label()


def comp_factors(M: UniserialSpec) -> tuple[int, ...]:
    A = M.algebra
    return tuple(A.simple_index(M.top + t) for t in range(M.length))


def multiplicity(M: UniserialSpec, s: int) -> int:
    return comp_factors(M).count(s)


def socle_layer_factors(M: UniserialSpec, l: int) -> tuple[int, ...]:
    """Composition factors of Soc^l(M), the unique submodule of length l."""
    cf = comp_factors(M)
    l = min(l, len(cf))
    return cf[len(cf) - l:]


def S_set(M1: UniserialSpec, M2: UniserialSpec) -> list[int]:
    """{1 <= l <= min lengths : Top(M1) = Top(Soc^l(M2))}; its size is dim Hom(M1, M2)."""
    if M1.algebra != M2.algebra:
        raise NakayamaError("modules over different algebras")
    A = M1.algebra
    out = []
    for l in range(1, min(M1.length, M2.length) + 1):
        top_soc = A.simple_index(M2.top + M2.length - l)
        if top_soc == M1.top:
            out.append(l)
    return sorted(out)


def uniend_expected(S_self: Iterable[int], L: int) -> bool:
    """Whether End(M) is quasi-Frobenius (equivalently symmetric) for a uniserial M.

    True iff S(M, M) = {L} or S(M, M) = {L - i d : 0 <= i <= ceil(L/d - 1)}
    for some d >= 1 (necessarily d = L - max(S minus {L})).
    """
    S = set(S_self)
    if L not in S:
        raise NakayamaError("S(M, M) must contain the Loewy length")
    if S == {L}:
        return True
    d = L - max(S - {L})
    imax = -(-L // d) - 1  # ceil(L/d - 1)
    return S == {L - i * d for i in range(imax + 1)}


def condition_a(M1: UniserialSpec, M2: UniserialSpec) -> bool:
    l = min(M1.length, M2.length)
    return (M2.top not in socle_layer_factors(M1, l)) and (M1.top not in socle_layer_factors(M2, l))


def condition_b(M1: UniserialSpec, M2: UniserialSpec) -> int | None:
    """The m >= 1 of condition b, or None."""
    t1, t2 = M1.top, M2.top
    m = multiplicity(M1, t1) - 1
    if m < 1:
        return None
    if (multiplicity(M2, t1) == m and multiplicity(M2, t2) == m + 1
            and multiplicity(M1, t2) == m):
        return m
    return None


def nakayama_pair_condition(M1: UniserialSpec, M2: UniserialSpec) -> tuple[str, int | None]:
    """("a", None), ("b", m) or ("neither", None)."""
    if M1.algebra != M2.algebra:
        raise NakayamaError("modules over different algebras")
    if condition_a(M1, M2):
        return "a", None
    m = condition_b(M1, M2)
    if m is not None:
        return "b", m
    return "neither", None


def nakayama_expected_symmetric(summands) -> bool:
    """Expected symmetry of End(⊕ M_i^{m_i}) for pairwise non-isomorphic M_i.

    ``summands`` holds UniserialSpec or (UniserialSpec, multiplicity) items.
    """
    mods = [s[0] if isinstance(s, tuple) else s for s in summands]
    if len(set(mods)) != len(mods):
        raise NakayamaError("summands must be pairwise non-isomorphic")
    for i in range(len(mods)):
        for j in range(i + 1, len(mods)):
            if nakayama_pair_condition(mods[i], mods[j])[0] == "neither":
                return False
    return True


# ---------------------------------------------------------------------------
# matrix realization
# ---------------------------------------------------------------------------

def generator_names(A: NakayamaAlgebraSpec) -> list[str]:
    arrows = A.n if A.shape == "cyclic" else A.n - 1
    return [f"e{s}" for s in range(1, A.n + 1)] + [f"a{s}" for s in range(1, arrows + 1)]


def realize_module(M: UniserialSpec, F: Field) -> ModulePresentation:
    """Matrices for M: vertex idempotents e_s and arrows a_s (S_s to S_{s+1}).

    Basis v_0, ..., v_{j-1} with v_t in the composition layer t; a_s sends
    v_t to v_{t+1} when v_t lies at vertex s, and v_{j-1} to 0.
    """
    A = M.algebra
    cf = comp_factors(M)
    j = M.length
    gens = {name: np.zeros((j, j), dtype=np.int64) for name in generator_names(A)}
    for t, s in enumerate(cf):
        gens[f"e{s}"][t, t] = 1
        if t + 1 < j:
            gens[f"a{s}"][t + 1, t] = 1
    return ModulePresentation(F, j, gens, "nakayama", M.label())


def realize(A: NakayamaAlgebraSpec, F: Field) -> dict[UniserialSpec, ModulePresentation]:
    """All indecomposable modules of A, realized as matrices."""
    return {M: realize_module(M, F) for M in A.modules()}


def radical_generators(A: NakayamaAlgebraSpec) -> list[str]:
    return [g for g in generator_names(A) if g.startswith("a")]


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_ALG_RE = re.compile(r"^nakayama:(linear|cyclic):n=(\d+):pl=([\d,]+)$")
_MOD_RE = re.compile(r"^module\s+top=(\d+)\s+len=(\d+)(?:\s+mult=(\d+))?$")


def parse_nakayama(text: str) -> tuple[NakayamaAlgebraSpec, list[tuple[UniserialSpec, int]]]:
    """Parse "nakayama:cyclic:n=3:pl=9,9,9; module top=2 len=7; module top=1 len=4 mult=2"."""
    parts = [p.strip() for p in text.split(";") if p.strip()]
    if not parts:
        raise NakayamaError("empty Nakayama object spec")
    m = _ALG_RE.match(parts[0])
    if not m:
        raise NakayamaError(f"cannot parse algebra {parts[0]!r}")
    shape, n, pl = m.group(1), int(m.group(2)), tuple(int(x) for x in m.group(3).split(","))
    A = NakayamaAlgebraSpec(n, shape, pl)  # type: ignore[arg-type]
    mods = []
    for p in parts[1:]:
        mm = _MOD_RE.match(p)
        if not mm:
            raise NakayamaError(f"cannot parse module {p!r}")
        mods.append((UniserialSpec(A, int(mm.group(1)), int(mm.group(2))), int(mm.group(3) or 1)))
    return A, mods


# the worked example with three uniserials over four simples
FIGURE_ALGEBRA = NakayamaAlgebraSpec(4, "cyclic", (6, 6, 6, 6))
FIGURE_MODULES = (
    UniserialSpec(FIGURE_ALGEBRA, 1, 6),
    UniserialSpec(FIGURE_ALGEBRA, 3, 5),
    UniserialSpec(FIGURE_ALGEBRA, 4, 5),
)
