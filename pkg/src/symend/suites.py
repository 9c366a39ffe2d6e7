"""Batch verification of the classification results over generated corpora.

Each ``suite_*`` function returns a :class:`RunReport` whose records pair a
computed verdict (or quantity) with the expected one.  The CLI ``verify``
command and the acceptance tests both run these.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, Iterable

import numpy as np

from . import algcore as ac
from . import classify as cl
from . import dihedral as dh
from . import exactla as la
from . import modrep as mr
from . import nakayama as nk
from .gf import GF, Field, default_working_field, embed

SCHEMA = "report-v1"


@dataclass
class Record:
    key: str
    descriptor: dict[str, Any]
    computed: Any
    expected: Any
    match: bool
    probabilistic: bool = False
    extra: dict[str, Any] = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "key": self.key,
            "object": self.descriptor,
            "computed": self.computed,
            "expected": self.expected,
            "match": self.match,
        }
        if self.probabilistic:
            out["probabilistic"] = True
        if self.extra:
            out["extra"] = self.extra
        return out


@dataclass
class RunReport:
    command: str
    parameters: dict[str, Any]
    field: str
    seed: int | None
    records: list[Record] = dc_field(default_factory=list)
    wall_time: float = 0.0
    strict_deterministic: bool = False

    def add(self, rec: Record):
        self.records.append(rec)

    @property
    def mismatches(self) -> list[Record]:
        out = [r for r in self.records if not r.match]
        if self.strict_deterministic:
            out += [r for r in self.records if r.match and r.probabilistic]
        return out

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def counts(self) -> dict[str, int]:
        n = len(self.records)
        mism = len(self.mismatches)
        return {
            "total": n,
            "matches": n - mism,
            "mismatches": mism,
            "probabilistic": sum(r.probabilistic for r in self.records),
        }

    def to_json(self) -> dict:
        recs = sorted(self.records, key=lambda r: r.key)
        return {
            "schema": SCHEMA,
            "command": self.command,
            "parameters": self.parameters,
            "field": self.field,
            "seed": self.seed,
            "wall_time": round(self.wall_time, 3),
            "counts": self.counts(),
            "mismatches": [r.key for r in sorted(self.mismatches, key=lambda r: r.key)],
            "records": [r.to_json() for r in recs],
        }

    def summary(self) -> str:
        c = self.counts()
        return (f"{self.command}: {c['total']} objects, {c['matches']} match, "
                f"{c['mismatches']} mismatch, {c['probabilistic']} probabilistic "
                f"[{self.field}, seed={self.seed}, {self.wall_time:.1f}s]")


def _shard(items, shard: tuple[int, int]):
    """The items whose index is congruent to shard[0] modulo shard[1]."""
    i, n = shard
    return [x for k, x in enumerate(items) if k % n == i]


def merge_reports(reports: list[RunReport]) -> RunReport:
    """Combine shard reports of one suite; wall time is the maximum over shards."""
    first = reports[0]
    out = RunReport(first.command, first.parameters, first.field, first.seed,
                    strict_deterministic=first.strict_deterministic)
    for r in reports:
        out.records.extend(r.records)
    out.wall_time = max(r.wall_time for r in reports)
    return out


def _timed(report: RunReport, t0: float) -> RunReport:
    report.wall_time = time.perf_counter() - t0
    return report


def omega(F: Field) -> int:
    """A primitive cube root of unity in F (image of the generator class of GF(4))."""
    return embed(GF(2, 2), F, 2)


def band_lambdas(F: Field) -> list[int]:
    w = omega(F)
    return [1, w, F.mul(w, w)]


def gf16_units(F: Field) -> list[int]:
    """GF(16)^x embedded in F, ordered by the source element."""
    src = GF(2, 4)
    return [embed(src, F, a) for a in range(1, 16)]


def lambda_name(F: Field, lam: int) -> str:
    """A field-independent name: 1, w, w^2, or the GF(16) preimage as "0x..@GF(16)"."""
    w = omega(F)
    names = {1: "1", w: "w", F.mul(w, w): "w^2"}
    if lam in names:
        return names[lam]
    if F.p == 2 and F.e % 4 == 0:
        units = gf16_units(F)
        if lam in units:
            return f"0x{units.index(lam) + 1:x}@GF(16)"
    return F.to_hex(lam)


def band_key(spec: dh.BandSpec) -> str:
    return f"band:{spec.word}:m={spec.m}:lambda={lambda_name(spec.field, spec.lam)}"


# ---------------------------------------------------------------------------
# analysis of a single module
# ---------------------------------------------------------------------------

@dataclass
class Analysis:
    module: mr.ModulePresentation
    algebra: ac.Algebra
    verdict: cl.Verdict
    # flags recomputed over the doubled extension when A/J is a proper field extension
    extension_flags: tuple | None = None

    def dims(self) -> dict[str, int]:
        return {
            "module_dim": self.module.dim,
            "end_dim": self.algebra.dim,
            "end_socle_dim": ac.socle(self.algebra, "left").dim,
            "end_radical_dim": ac.radical(self.algebra).dim,
        }


def doubled_field(F: Field) -> Field | None:
    try:
        return GF(F.p, 2 * F.e)
    except Exception:
        return None


def analyze_module(M: mr.ModulePresentation, seed: int = 0, trials: int = cl.DEFAULT_TRIALS) -> Analysis:
    """End(M) and its verdict; non-split residue fields are re-checked over a doubled extension."""
    E = mr.end_algebra(M)
    an = Analysis(M, E, cl.classify(E, seed, trials))
    if an.verdict.notes.get("non_split_residue_field"):
        K = doubled_field(M.field)
        if K is not None:
            E2 = mr.end_algebra(mr.change_field(M, K))
            an.extension_flags = tuple(cl.classify(E2, seed, trials).flags())
    return an


def _verdict_record(key: str, desc: dict, an: Analysis, expected: tuple, extra=None) -> Record:
    V = an.verdict
    rec = Record(
        key=key,
        descriptor=desc,
        computed=list(V.flags()),
        expected=list(expected),
        match=tuple(V.flags()) == tuple(expected),
        probabilistic=not V.deterministic,
        extra=extra or {},
    )
    if not reverify_witnesses(an.algebra, V):
        rec.match = False
        rec.extra["error"] = "witness form failed exact re-verification"
    if V.notes.get("non_split_residue_field"):
        rec.extra["non_split_residue_field"] = True
        rec.extra["extension_flags"] = list(an.extension_flags) if an.extension_flags else None
        if an.extension_flags is not None and an.extension_flags != tuple(V.flags()):
            rec.match = False
    return rec


def _kinds(V: cl.Verdict) -> list[str]:
    return [getattr(V, n).kind for n in cl.FLAG_NAMES]


def reverify_witnesses(A: ac.Algebra, V: cl.Verdict) -> bool:
    """Re-parse every linear-form witness from its hex coordinates and check it again."""
    F = A.F
    for name in ("frobenius", "symmetric"):
        flag = getattr(V, name)
        if flag.kind == "witness":
            lam = np.array([F.from_hex(h) for h in flag.data["form"]], dtype=np.int64)
            ok = cl.verify_symmetrizing_form(A, lam) if name == "symmetric" else cl.verify_frobenius_form(A, lam)
            if not ok:
                return False
    return True


# ---------------------------------------------------------------------------
# 1. strings
# ---------------------------------------------------------------------------

def truncated_poly_check(E: ac.Algebra, generator_matrix: np.ndarray, m: int) -> bool:
    """E ≅ k[T]/(T^m): commutative, dim m, and the given T has T^(m-1) != 0 = T^m."""
    F = E.F
    if E.dim != m or not E.is_commutative():
        return False
    P = la.identity(generator_matrix.shape[0])
    for _ in range(m - 1):
        P = la.matmul(F, P, generator_matrix)
    if not P.any():
        return False
    return not la.matmul(F, P, generator_matrix).any()


def suite_strings(F: Field | None = None, seed: int = 0, max_len: int = 10,
                  trials: int = cl.DEFAULT_TRIALS, strict: bool = False,
                  shard: tuple[int, int] = (0, 1)) -> RunReport:
    F = F or default_working_field(2)
    t0 = time.perf_counter()
    rep = RunReport("verify strings", {"max_len": max_len}, F.spec.serialize(), seed, strict_deterministic=strict)
    for w in _shard(dh.enumerate_words(max_len), shard):
        M = dh.string_module(w, F)
        an = analyze_module(M, seed, trials)
        exp = dh.expected_string_verdict(w)
        extra = {"end_dim": an.algebra.dim, "kinds": _kinds(an.verdict)}
        rec = _verdict_record(f"string:{w}", {"word": str(w), "dim": M.dim}, an, exp, extra)
        if not dh.x_never_merges(M):
            rec.match = False
            rec.extra["error"] = "a generator merges basis vectors"
        if not ac.is_local(an.algebra).is_local:
            rec.match = False
            rec.extra["error"] = "endomorphism algebra of a string module is not local"
        rep.add(rec)
    # (ab)^l: dim l+1 and E ≅ k[T]/(T^(l+1))
    for l in _shard(range(1, max_len // 2 + 1), shard):
        w = dh.Word("ab" * l)
        M = dh.string_module(w, F)
        E = mr.end_algebra(M)
        Ts = dh.string_endo_basis(w, F)
        ok = E.dim == l + 1 and truncated_poly_check(E, Ts[1], l + 1)
        rep.add(Record(f"string-endo:(ab)^{l}", {"word": str(w)}, {"end_dim": E.dim},
                       {"end_dim": l + 1}, ok))
    return _timed(rep, t0)


# ---------------------------------------------------------------------------
# 2. bands
# ---------------------------------------------------------------------------

def suite_bands(F: Field | None = None, seed: int = 0, max_len: int = 8, ms=(1, 2, 3),
                lambdas: Iterable[int] | None = None, trials: int = cl.DEFAULT_TRIALS,
                strict: bool = False, shard: tuple[int, int] = (0, 1)) -> RunReport:
    F = F or default_working_field(2)
    t0 = time.perf_counter()
    lams = list(lambdas) if lambdas is not None else band_lambdas(F)
    rep = RunReport("verify bands", {"max_len": max_len, "m": list(ms)}, F.spec.serialize(), seed,
                    strict_deterministic=strict)
    cases = [(w, m, lam) for w in dh.enumerate_bands(max_len) for m in ms for lam in lams]
    for w, m, lam in _shard(cases, shard):
        spec = dh.BandSpec(w, m, lam, F)
        M = dh.band_module(spec)
        an = analyze_module(M, seed, trials)
        V = an.verdict
        exp = dh.expected_band_verdict(spec)
        extra = {"end_dim": an.algebra.dim, "kinds": _kinds(V), "case": dh.band_case(spec)}
        rec = _verdict_record(band_key(spec),
                              {"word": str(w), "m": m, "lambda": F.to_hex(lam)}, an, exp, extra)
        # every negative must be deterministic
        if any(not getattr(V, n).value and not getattr(V, n).deterministic for n in cl.FLAG_NAMES):
            rec.match = False
            rec.extra["error"] = "probabilistic negative"
        case = dh.band_case(spec)
        want_dim = {1: m, 2: len(w)}.get(case)
        if want_dim is not None and an.algebra.dim != want_dim:
            rec.match = False
            rec.extra["error"] = f"end dim {an.algebra.dim} != {want_dim}"
        rep.add(rec)
    return _timed(rep, t0)


# ---------------------------------------------------------------------------
# 3. cyclic groups
# ---------------------------------------------------------------------------

def partitions_bounded(total_max: int, part_max: int) -> list[tuple[int, ...]]:
    """All multisets of parts in 1..part_max with sum <= total_max (nonempty), parts descending."""
    out = []

    def rec(remaining, maxp, prefix):
        if prefix:
            out.append(tuple(prefix))
        for p in range(min(maxp, remaining), 0, -1):
            rec(remaining - p, p, prefix + [p])

    rec(total_max, part_max, [])
    return sorted(out, key=lambda t: (sum(t), t))


CYCLIC_GROUPS = ((2, 2), (2, 3), (3, 2))  # (p, r): Z_4, Z_8, Z_9


def suite_cyclic(F: Field | None = None, seed: int = 0, total_max: int = 12,
                 groups=CYCLIC_GROUPS, hom_max: int = 6, trials: int = cl.DEFAULT_TRIALS,
                 odd_field: Field | None = None, strict: bool = False,
                 shard: tuple[int, int] = (0, 1)) -> RunReport:
    """Jordan-type modules defined over GF(p), analyzed over a large extension."""
    F = F or default_working_field(2)
    t0 = time.perf_counter()
    rep = RunReport("verify cyclic", {"total_max": total_max, "groups": [p ** r for p, r in groups]},
                    F.spec.serialize(), seed, strict_deterministic=strict)
    for p, r in groups:
        K = F if p == F.p else (odd_field or default_working_field(p))
        order = p ** r
        for parts in _shard(partitions_bounded(total_max, order), shard):
            M = mr.cyclic_group_module(r, parts, K)
            an = analyze_module(M, seed, trials)
            iso = len(set(parts)) == 1
            exp = (iso, iso, iso, iso)
            rep.add(_verdict_record(f"Z{order}:{','.join(map(str, parts))}",
                                    {"group": f"Z{order}", "parts": list(parts), "field": K.spec.serialize()},
                                    an, exp, {"kinds": _kinds(an.verdict)}))
        top = min(hom_max, order)
        for s, t in _shard(list(itertools.product(range(1, top + 1), repeat=2)), shard):
            Ms = mr.cyclic_group_module(r, [s], K)
            Mt = mr.cyclic_group_module(r, [t], K)
            h = mr.hom(Ms, Mt).dim
            rep.add(Record(f"Z{order}:hom:{s},{t}", {"s": s, "t": t}, h, min(s, t), h == min(s, t)))
    return _timed(rep, t0)


# ---------------------------------------------------------------------------
# 4./5. Nakayama
# ---------------------------------------------------------------------------

def suite_nakayama_hom(F: Field | None = None, seed: int = 0, max_n: int = 4, max_L: int = 12,
                       strict: bool = False, shard: tuple[int, int] = (0, 1)) -> RunReport:
    F = F or default_working_field(2)
    t0 = time.perf_counter()
    rep = RunReport("verify nakayama-hom", {"max_n": max_n, "max_L": max_L}, F.spec.serialize(), seed,
                    strict_deterministic=strict)
    for n, L in _shard([(n, L) for n in range(1, max_n + 1) for L in range(2, max_L + 1)], shard):
        A = nk.NakayamaAlgebraSpec(n, "cyclic", (L,) * n)
        mods = A.modules()
        real = {M: nk.realize_module(M, F) for M in mods}
        bad = []
        count = 0
        for M1 in mods:
            for M2 in mods:
                h = mr.hom(real[M1], real[M2]).dim
                count += 1
                if h != len(nk.S_set(M1, M2)):
                    bad.append(f"{M1}->{M2}: {h} vs {len(nk.S_set(M1, M2))}")
        rep.add(Record(f"nakayama-hom:n={n}:L={L:02d}", {"algebra": A.label(), "pairs": count},
                       len(bad), 0, not bad, extra={"failures": bad[:5]} if bad else {}))
    if shard[0] != 0:
        return _timed(rep, t0)
    A = nk.NakayamaAlgebraSpec(3, "cyclic", (9, 9, 9))
    U = nk.UniserialSpec(A, 2, 7)
    S = nk.S_set(U, U)
    E = mr.end_algebra(nk.realize_module(U, F))
    ok = S == [1, 4, 7] and E.dim == 3 and nk.comp_factors(U) == (2, 3, 1, 2, 3, 1, 2)
    rep.add(Record("nakayama-hom:example-n3-top2-len7", {"algebra": A.label()},
                   {"S": S, "end_dim": E.dim}, {"S": [1, 4, 7], "end_dim": 3}, ok))
    return _timed(rep, t0)


def random_kupisch(rng: np.random.Generator, n: int, max_len: int) -> tuple[int, ...]:
    """A random admissible cyclic Kupisch series with lengths in 2..max_len."""
    while True:
        pl = [int(rng.integers(2, max_len + 1))]
        for _ in range(n - 1):
            lo = max(2, pl[-1] - 1)
            pl.append(int(rng.integers(lo, max_len + 1)))
        try:
            return nk.NakayamaAlgebraSpec(n, "cyclic", tuple(pl)).proj_lengths
        except nk.NakayamaError:
            continue


def nakayama_random_cases(seed: int, count: int = 200, max_n: int = 4, max_len: int = 8):
    """Seeded random multisets of <= 3 distinct uniserials, half expected symmetric."""
    rng = np.random.default_rng(seed)
    want = {True: count // 2, False: count - count // 2}
    cases = []
    attempts = 0
    while (want[True] > 0 or want[False] > 0) and attempts < 200 * count:
        attempts += 1
        n = int(rng.integers(1, max_n + 1))
        A = nk.NakayamaAlgebraSpec(n, "cyclic", random_kupisch(rng, n, max_len))
        mods = A.modules()
        r = int(rng.integers(1, 4))
        if r > len(mods):
            continue
        idx = rng.choice(len(mods), size=r, replace=False)
        chosen = [mods[i] for i in sorted(idx)]
        mults = [int(rng.integers(1, 3)) if sum(M.length for M in chosen) <= 12 else 1 for M in chosen]
        exp = nk.nakayama_expected_symmetric(chosen)
        if want[exp] <= 0:
            continue
        want[exp] -= 1
        cases.append((A, list(zip(chosen, mults)), exp))
    return cases


def suite_nakayama_sym(F: Field | None = None, seed: int = 0, count: int = 200,
                       trials: int = cl.DEFAULT_TRIALS, strict: bool = False,
                       shard: tuple[int, int] = (0, 1), corpus_seed: int = 0) -> RunReport:
    """Random uniserial multisets drawn with ``corpus_seed``; ``seed`` drives the classifier.

    Keeping the draw separate means runs with different seeds classify the
    same objects, so their verdict tables are comparable key by key.
    """
    F = F or default_working_field(2)
    t0 = time.perf_counter()
    rep = RunReport("verify nakayama-sym", {"count": count, "corpus_seed": corpus_seed},
                    F.spec.serialize(), seed, strict_deterministic=strict)
    cases = list(enumerate(nakayama_random_cases(corpus_seed, count)))
    for i, (A, summands, exp) in _shard(cases, shard):
        pieces = []
        for M, mult in summands:
            pieces += [nk.realize_module(M, F)] * mult
        D = mr.direct_sum(*pieces)
        an = analyze_module(D, seed, trials)
        got = an.verdict.symmetric.value
        desc = {"algebra": A.label(), "summands": [[str(M), mult] for M, mult in summands]}
        rep.add(Record(f"nakayama-sym:{i:04d}", desc, got, exp,
                       got == exp and reverify_witnesses(an.algebra, an.verdict),
                       probabilistic=not an.verdict.symmetric.deterministic,
                       extra={"end_dim": an.algebra.dim, "kind": an.verdict.symmetric.kind}))
    if shard[0] != 0:
        return _timed(rep, t0)
    # the worked figure
    D = mr.direct_sum(*[nk.realize_module(M, F) for M in nk.FIGURE_MODULES])
    an = analyze_module(D, seed, trials)
    ok = an.verdict.symmetric.value and an.algebra.dim == 12
    rep.add(Record("nakayama-sym:figure", {"algebra": nk.FIGURE_ALGEBRA.label()},
                   {"symmetric": an.verdict.symmetric.value, "end_dim": an.algebra.dim},
                   {"symmetric": True, "end_dim": 12}, ok))
    return _timed(rep, t0)


# ---------------------------------------------------------------------------
# 6. Klein four census
# ---------------------------------------------------------------------------

def klein_corpus_keyed(F: Field, max_string: int = 5, ms=(1, 2, 3),
                       lambdas=None) -> list[tuple[str, mr.ModulePresentation]]:
    """Indecomposable kD_inf modules annihilated by I_1, plus the regular module, with stable keys."""
    lambdas = gf16_units(F) if lambdas is None else list(lambdas)
    out = []
    for w in dh.enumerate_words(max_string, symmetries=("inverse",)):
        M = dh.string_module(w, F)
        if mr.annihilates_Iq(M, 1):
            out.append((f"string:{w}", M))
    for w in dh.enumerate_bands(2, symmetries=("inverse", "rotation")):
        for m in ms:
            for lam in lambdas:
                spec = dh.BandSpec(w, m, lam, F)
                M = dh.band_module(spec)
                if mr.annihilates_Iq(M, 1):
                    out.append((band_key(spec), M))
    out.append(("regular:q=1", dh.dihedral_regular_module(F, 1)))
    return out


def klein_corpus(F: Field, max_string: int = 5, ms=(1, 2, 3), lambdas=None) -> list[mr.ModulePresentation]:
    return [M for _, M in klein_corpus_keyed(F, max_string, ms, lambdas)]


def klein_expected(F: Field, lambdas=None) -> list[mr.ModulePresentation]:
    lambdas = gf16_units(F) if lambdas is None else list(lambdas)
    out = [dh.string_module(dh.Word("", "a"), F), dh.string_module(dh.Word("a"), F),
           dh.string_module(dh.Word("b"), F)]
    out += [dh.band_module(dh.BandSpec(dh.Word("aB"), 1, lam, F)) for lam in lambdas]
    out.append(dh.dihedral_regular_module(F, 1))
    return out


def suite_klein4(F: Field | None = None, seed: int = 0, max_dim: int = 6,
                 trials: int = cl.DEFAULT_TRIALS, strict: bool = False) -> RunReport:
    F = F or default_working_field(2)
    t0 = time.perf_counter()
    rep = RunReport("verify klein4", {"max_dim": max_dim}, F.spec.serialize(), seed,
                    strict_deterministic=strict)
    found = []
    for key, M in klein_corpus_keyed(F):
        if M.dim > max_dim:
            continue
        an = analyze_module(M, seed, trials)
        if an.verdict.symmetric.value:
            found.append(M)
        rep.add(Record(f"klein4:{key}", {"module": key, "dim": M.dim},
                       an.verdict.symmetric.value, None, True,
                       probabilistic=not an.verdict.symmetric.deterministic))
    expected = klein_expected(F)
    # exact set equality up to isomorphism: a bijection found <-> expected
    unmatched = list(range(len(expected)))
    extra_found = []
    for M in found:
        hit = None
        for j in unmatched:
            if expected[j].dim == M.dim and mr.is_isomorphic(M, expected[j], seed).value:
                hit = j
                break
        if hit is None:
            extra_found.append(M.label)
        else:
            unmatched.remove(hit)
    missing = [expected[j].label for j in unmatched]
    ok = not missing and not extra_found
    rep.add(Record("klein4:census", {"found": len(found), "expected": len(expected)},
                   {"unexpected": extra_found, "missing": missing}, {"unexpected": [], "missing": []}, ok))
    return _timed(rep, t0)


# ---------------------------------------------------------------------------
# 7. local-algebra properties
# ---------------------------------------------------------------------------

def _over_local_group_algebra(M: mr.ModulePresentation) -> bool:
    """Module over a finite local group algebra in scope (Jordan type, or kD_{4q} for some q)."""
    if "x-1" in M.generators:
        return True
    return mr.annihilates_Iq(M, max(1, M.dim))


def suite_local(F: Field | None = None, seed: int = 0, max_string: int = 10, max_band: int = 8,
                trials: int = cl.DEFAULT_TRIALS, strict: bool = False) -> RunReport:
    F = F or default_working_field(2)
    t0 = time.perf_counter()
    rep = RunReport("verify local", {"max_string": max_string, "max_band": max_band},
                    F.spec.serialize(), seed, strict_deterministic=strict)
    # non-isotypic pairs are never QF: Z_4, Z_8 and the Klein-four corpus
    pair_corpora = {
        "Z4": [mr.cyclic_group_module(2, [s], F) for s in range(1, 5)],
        "Z8": [mr.cyclic_group_module(3, [s], F) for s in range(1, 9)],
        "Klein4": klein_corpus(F, lambdas=band_lambdas(F)),
    }
    for name, corpus in pair_corpora.items():
        bad = []
        npairs = 0
        for i in range(len(corpus)):
            for j in range(i + 1, len(corpus)):
                N1, N2 = corpus[i], corpus[j]
                if mr.is_isomorphic(N1, N2, seed).value:
                    continue
                npairs += 1
                E = mr.end_algebra(mr.direct_sum(N1, N2))
                if cl.is_quasi_frobenius(E, seed).value:
                    bad.append(f"{N1.label} + {N2.label}")
        rep.add(Record(f"local:non-isotypic:{name}", {"pairs": npairs}, len(bad), 0, not bad,
                       extra={"violations": bad[:5]} if bad else {}))
    # QF endomorphism algebra => one-dimensional top and socle
    corpus: list[mr.ModulePresentation] = []
    corpus += [dh.string_module(w, F) for w in dh.enumerate_words(max_string)]
    for w in dh.enumerate_bands(max_band):
        for m in (1, 2, 3):
            for lam in band_lambdas(F):
                corpus.append(dh.band_module(dh.BandSpec(w, m, lam, F)))
    for p, r in CYCLIC_GROUPS:
        K = F if p == F.p else default_working_field(p)
        corpus += [mr.cyclic_group_module(r, [s], K) for s in range(1, p ** r + 1)]
    corpus += klein_corpus(F)
    bad = []
    checked = 0
    for M in corpus:
        if not _over_local_group_algebra(M):
            continue
        E = mr.end_algebra(M)
        if not cl.is_quasi_frobenius(E, seed).value:
            continue
        checked += 1
        top, soc = mr.module_top_dim(M), mr.module_socle_dim(M)
        if (top, soc) != (1, 1):
            bad.append(f"{M.label}: top {top}, socle {soc}")
    rep.add(Record("local:top-socle", {"checked": checked}, len(bad), 0, not bad,
                   extra={"violations": bad[:5]} if bad else {}))
    return _timed(rep, t0)


# ---------------------------------------------------------------------------
# 8. dimension bound and infinitude
# ---------------------------------------------------------------------------

def d8_corpus(F: Field, max_string: int = 10, max_band: int = 8) -> list[tuple[str, mr.ModulePresentation]]:
    """Strings and bands annihilated by I_2 (modules for D_8), plus the regular module, with keys."""
    out = []
    for w in dh.enumerate_words(max_string):
        M = dh.string_module(w, F)
        if mr.annihilates_Iq(M, 2):
            out.append((f"string:{w}", M))
    for w in dh.enumerate_bands(max_band):
        for m in (1, 2, 3):
            for lam in band_lambdas(F):
                spec = dh.BandSpec(w, m, lam, F)
                M = dh.band_module(spec)
                if mr.annihilates_Iq(M, 2):
                    out.append((band_key(spec), M))
    out.append(("regular:q=2", dh.dihedral_regular_module(F, 2)))
    return out


def suite_dimbound(F: Field | None = None, seed: int = 0, q: int = 2,
                   trials: int = cl.DEFAULT_TRIALS, strict: bool = False) -> RunReport:
    F = F or default_working_field(2)
    t0 = time.perf_counter()
    rep = RunReport("verify dimbound", {"q": q}, F.spec.serialize(), seed, strict_deterministic=strict)
    if q != 2:
        raise ValueError("the dimension-bound corpus is built for q = 2 (D_8)")
    sym_dims = []
    for key, M in d8_corpus(F):
        an = analyze_module(M, seed, trials)
        if an.verdict.symmetric.value:
            sym_dims.append((key, M.dim))
            rep.add(Record(f"dimbound:{key}", {"module": key}, M.dim, "<= 8", M.dim <= 4 * q))
    rep.add(Record("dimbound:count", {}, len(sym_dims), ">= 1", len(sym_dims) >= 1))
    # infinitely many symmetric Klein-four indecomposables: the λ family
    fam = [dh.band_module(dh.BandSpec(dh.Word("aB"), 1, lam, F)) for lam in gf16_units(F)]
    all_sym = all(analyze_module(M, seed, trials).verdict.symmetric.value for M in fam)
    noniso = all(
        not mr.is_isomorphic(fam[i], fam[j], seed).value and
        mr.is_isomorphic(fam[i], fam[j], seed).kind == "refutation"
        for i in range(len(fam)) for j in range(i + 1, len(fam))
    )
    rep.add(Record("dimbound:lambda-family", {"size": len(fam)},
                   {"symmetric": all_sym, "pairwise_non_isomorphic": noniso, "size": len(fam)},
                   {"symmetric": True, "pairwise_non_isomorphic": True, "size": ">= 8"},
                   all_sym and noniso and len(fam) >= 8))
    return _timed(rep, t0)


# ---------------------------------------------------------------------------
# 9. semisimple converse
# ---------------------------------------------------------------------------

def suite_semisimple_converse(F: Field | None = None, seed: int = 0,
                              trials: int = cl.DEFAULT_TRIALS, strict: bool = False) -> RunReport:
    F = F or default_working_field(2)
    t0 = time.perf_counter()
    rep = RunReport("verify semisimple-converse", {}, F.spec.serialize(), seed, strict_deterministic=strict)
    Lam = mr.cyclic_group_module(1, [2], F)   # k[T]/(T^2) = kZ_2, regular module
    S = mr.cyclic_group_module(1, [1], F)     # trivial simple module
    beta = mr.notsym_witness(Lam, S)
    rep.add(Record("semisimple:notsym-witness", {"M1": Lam.label, "M2": S.label},
                   beta is not None, True, beta is not None,
                   extra={"beta": [[F.to_hex(x) for x in row] for row in beta]} if beta is not None else {}))
    an = analyze_module(mr.direct_sum(S, Lam), seed, trials)
    got = an.verdict.symmetric.value
    rep.add(Record("semisimple:E(k+Lambda)", {"module": "k + Lambda"}, got, False,
                   not got and an.verdict.symmetric.deterministic,
                   extra={"kind": an.verdict.symmetric.kind}))
    return _timed(rep, t0)


SUITES: dict[str, Callable[..., RunReport]] = {
    "strings": suite_strings,
    "bands": suite_bands,
    "cyclic": suite_cyclic,
    "nakayama-hom": suite_nakayama_hom,
    "nakayama-sym": suite_nakayama_sym,
    "local": suite_local,
    "klein4": suite_klein4,
    "dimbound": suite_dimbound,
    "semisimple-converse": suite_semisimple_converse,
}


# ---------------------------------------------------------------------------
# 10. robustness
# ---------------------------------------------------------------------------

ROBUST_SUITES = ("strings", "bands", "cyclic", "nakayama-hom", "nakayama-sym", "klein4")


def verdict_table(report: RunReport) -> dict[str, Any]:
    return {r.key: r.computed for r in report.records}


def suite_robustness(seeds=(0, 1, 2), fields: Iterable[Field] | None = None,
                     suites=ROBUST_SUITES, kwargs: dict | None = None,
                     precomputed: dict[str, RunReport] | None = None) -> RunReport:
    """Re-run suites under other seeds and a larger field; computed values must agree.

    ``precomputed`` maps suite names to reports already run over the default
    field with ``seeds[0]``; those runs are reused instead of repeated.
    """
    t0 = time.perf_counter()
    base_field = default_working_field(2)
    fields = list(fields) if fields is not None else [GF(2, 32)]
    kwargs = kwargs or {}
    rep = RunReport("verify robustness", {"seeds": list(seeds), "fields": [f.spec.serialize() for f in fields],
                                          "suites": list(suites)}, base_field.spec.serialize(), None)
    for name in suites:
        fn = SUITES[name]
        kw = kwargs.get(name, {})
        runs = {}
        for s in seeds:
            pre = (precomputed or {}).get(name)
            if s == seeds[0] and pre is not None and pre.field == base_field.spec.serialize() and pre.seed == s:
                runs[(base_field.spec.serialize(), s)] = pre
            else:
                runs[(base_field.spec.serialize(), s)] = fn(F=base_field, seed=s, **kw)
        for K in fields:
            runs[(K.spec.serialize(), seeds[0])] = fn(F=K, seed=seeds[0], **kw)
        ref_key = (base_field.spec.serialize(), seeds[0])
        ref = verdict_table(runs[ref_key])
        for key, r in runs.items():
            tab = verdict_table(r)
            diff = sorted(k for k in set(ref) | set(tab) if ref.get(k) != tab.get(k))
            rep.add(Record(f"robustness:{name}:{key[0]}:seed={key[1]}",
                           {"suite": name, "field": key[0], "seed": key[1]},
                           {"differences": len(diff), "suite_ok": r.ok}, {"differences": 0, "suite_ok": True},
                           not diff and r.ok, extra={"first_differences": diff[:5]} if diff else {}))
    return _timed(rep, t0)
