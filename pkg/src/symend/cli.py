"""Command-line front end: ``symend analyze | verify | enumerate``.

Exit codes: 0 when nothing mismatches, 1 when a mismatch is found, 2 on
usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import re
import secrets
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any

from . import classify as cl
from . import dihedral as dh
from . import modrep as mr
from . import nakayama as nk
from . import suites
from .algcore import radical, socle
from .gf import GF, Field, FieldError, embed, parse_field

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class SpecError(ValueError):
    pass


# ---------------------------------------------------------------------------
# object specs
# ---------------------------------------------------------------------------

@dataclass
class ParsedObject:
    spec: str
    module: mr.ModulePresentation
    expected: tuple | None = None
    expected_symmetric: bool | None = None


_LAMBDA_RE = re.compile(r"^w(?:\^(\d+))?(?:@(.+))?$")


def parse_lambda(text: str, F: Field) -> int:
    """Band parameter: "1", "w", "w^k", "w^k@GF(16)", hex "0x..", or a decimal field encoding.

    "w" alone is a primitive cube root of unity (the generator class of GF(4));
    "w^k@GF(Q)" is the k-th power of the generator of GF(Q), embedded in F.
    """
    text = text.strip()
    m = _LAMBDA_RE.match(text)
    if m:
        k = int(m.group(1) or 1)
        src = parse_field(m.group(2)) if m.group(2) else GF(F.p, 2)
        return embed(src, F, src.pow(src.generator, k))
    try:
        val = F.from_hex(text) if text.lower().startswith("0x") else int(text)
    except ValueError:
        raise SpecError(f"cannot parse lambda {text!r}") from None
    if not 0 < val < F.q:
        raise SpecError(f"lambda must be a nonzero element of {F.spec.serialize()}")
    return val


def _kv(parts: list[str]) -> dict[str, str]:
    out = {}
    for p in parts:
        if "=" not in p:
            raise SpecError(f"expected key=value, got {p!r}")
        k, v = p.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def parse_object(spec: str, F: Field) -> ParsedObject:
    """Parse string:, band:, cyclic:, nakayama: and regular: object specs."""
    spec = spec.strip()
    kind, _, rest = spec.partition(":")
    try:
        if kind == "string":
            w = dh.word_parse(rest)
            return ParsedObject(spec, dh.string_module(w, F), dh.expected_string_verdict(w))
        if kind == "band":
            word, *params = rest.split(":")
            kv = _kv(params)
            bspec = dh.BandSpec(dh.Word(word), int(kv.get("m", 1)), parse_lambda(kv.get("lambda", "1"), F), F)
            return ParsedObject(spec, dh.band_module(bspec), dh.expected_band_verdict(bspec))
        if kind == "cyclic":
            kv = _kv(rest.split(":"))
            p = int(kv.get("p", F.p))
            K = F if p == F.p else suites.default_working_field(p)
            parts = [int(x) for x in kv["parts"].split(",")]
            M = mr.cyclic_group_module(int(kv["r"]), parts, K)
            iso = len(set(parts)) == 1
            return ParsedObject(spec, M, (iso, iso, iso, iso))
        if kind == "nakayama":
            A, mods = nk.parse_nakayama(spec)
            if not mods:
                raise SpecError("a nakayama spec needs at least one '; module top=.. len=..'")
            pieces = []
            for U, mult in mods:
                pieces += [nk.realize_module(U, F)] * mult
            exp = nk.nakayama_expected_symmetric([U for U, _ in mods])
            return ParsedObject(spec, mr.direct_sum(*pieces), None, exp)
        if kind == "regular":
            kv = _kv(rest.split(":"))
            return ParsedObject(spec, dh.dihedral_regular_module(F, int(kv["q"])))
    except (KeyError, ValueError, FieldError) as exc:
        raise SpecError(f"cannot parse {spec!r}: {exc}") from exc
    raise SpecError(f"unknown object kind {kind!r} (expected string, band, cyclic, nakayama or regular)")


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def analyze(spec: str, F: Field, seed: int, trials: int = cl.DEFAULT_TRIALS, strict: bool = False) -> dict:
    obj = parse_object(spec, F)
    an = suites.analyze_module(obj.module, seed, trials)
    V = an.verdict
    out: dict[str, Any] = {
        "schema": suites.SCHEMA,
        "command": "analyze",
        "object": obj.spec,
        "field": obj.module.field.spec.serialize(),
        "seed": seed,
        "dims": {
            "module_dim": obj.module.dim,
            "end_dim": an.algebra.dim,
            "end_radical_dim": radical(an.algebra).dim,
            "end_socle_dim_left": socle(an.algebra, "left").dim,
            "end_socle_dim_right": socle(an.algebra, "right").dim,
        },
        "verdict": V.to_json(),
    }
    match = True
    if obj.expected is not None:
        out["expected"] = dict(zip(cl.FLAG_NAMES, obj.expected))
        match = tuple(V.flags()) == tuple(obj.expected)
    if obj.expected_symmetric is not None:
        out["expected"] = {"symmetric": obj.expected_symmetric}
        match = V.symmetric.value == obj.expected_symmetric
    if an.extension_flags is not None:
        out["extension_flags"] = dict(zip(cl.FLAG_NAMES, an.extension_flags))
        match = match and an.extension_flags == tuple(V.flags())
    if strict and not V.deterministic:
        match = False
    out["match"] = match
    return out


def _format_analysis(res: dict) -> str:
    lines = [f"object  {res['object']}", f"field   {res['field']}   seed {res['seed']}"]
    d = res["dims"]
    lines.append(
        f"dims    module {d['module_dim']}  End {d['end_dim']}  J(End) {d['end_radical_dim']}  "
        f"soc(End) left {d['end_socle_dim_left']} right {d['end_socle_dim_right']}")
    exp = res.get("expected", {})
    lines.append(f"{'property':<18}{'value':<8}{'expected':<10}{'kind':<14}detail")
    for n in cl.FLAG_NAMES:
        f = res["verdict"][n]
        e = exp.get(n, "")
        detail = ""
        if "bound" in f:
            detail = f"failure bound {f['bound']:.3g}"
        elif f.get("data"):
            detail = ", ".join(f"{k}={_short(v)}" for k, v in f["data"].items())
        lines.append(f"{n:<18}{str(f['value']):<8}{str(e):<10}{f['kind']:<14}{detail}")
    lines.append("match   " + ("yes" if res["match"] else "NO"))
    return "\n".join(lines)


def _short(v, limit: int = 60) -> str:
    s = json.dumps(v) if not isinstance(v, str) else v
    return s if len(s) <= limit else s[: limit - 3] + "..."


def cmd_analyze(args) -> int:
    F = parse_field(args.field)
    try:
        res = analyze(args.object, F, args.seed, args.trials, args.strict_deterministic)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(res, indent=2) if args.json else _format_analysis(res))
    return EXIT_OK if res["match"] else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

SHARDABLE = {"strings", "bands", "cyclic", "nakayama-hom", "nakayama-sym"}


def _suite_kwargs(args) -> dict:
    name = args.suite
    kw: dict[str, Any] = {}
    if args.max_len is not None and name in ("strings", "bands"):
        kw["max_len"] = args.max_len
    if args.max_dim is not None and name == "klein4":
        kw["max_dim"] = args.max_dim
    if args.q is not None and name == "dimbound":
        kw["q"] = args.q
    if args.count is not None and name == "nakayama-sym":
        kw["count"] = args.count
    if args.corpus_seed is not None and name == "nakayama-sym":
        kw["corpus_seed"] = args.corpus_seed
    if args.max_n is not None and name == "nakayama-hom":
        kw["max_n"] = args.max_n
    if args.max_L is not None and name == "nakayama-hom":
        kw["max_L"] = args.max_L
    if args.total_max is not None and name == "cyclic":
        kw["total_max"] = args.total_max
    if name != "robustness":
        kw["strict"] = args.strict_deterministic
        if name != "nakayama-hom":  # hom dimensions only, no form search
            kw["trials"] = args.trials
    return kw


def _run_shard(name: str, field: str, seed: int, kw: dict, shard: tuple[int, int]) -> suites.RunReport:
    return suites.SUITES[name](F=parse_field(field), seed=seed, shard=shard, **kw)


def run_suite(name: str, field: str, seed: int, kw: dict, jobs: int = 1) -> suites.RunReport:
    if name == "robustness":
        return suites.suite_robustness(seeds=(seed, seed + 1, seed + 2))
    if jobs <= 1 or name not in SHARDABLE:
        return suites.SUITES[name](F=parse_field(field), seed=seed, **kw)
    t0 = time.perf_counter()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futs = [pool.submit(_run_shard, name, field, seed, kw, (i, jobs)) for i in range(jobs)]
        rep = suites.merge_reports([f.result() for f in futs])
    rep.wall_time = time.perf_counter() - t0
    return rep


def _format_report(rep: suites.RunReport, verbose: bool) -> str:
    lines = [rep.summary()]
    shown = rep.records if verbose else rep.mismatches
    if shown:
        lines.append(f"{'key':<48}{'match':<7}computed / expected")
        for r in sorted(shown, key=lambda r: r.key):
            lines.append(f"{r.key:<48}{('yes' if r.match else 'NO'):<7}{_short(r.computed, 40)} / {_short(r.expected, 40)}")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    if args.suite not in suites.SUITES and args.suite != "robustness":
        print(f"error: unknown suite {args.suite!r}; choose from {', '.join(sorted(suites.SUITES))}, robustness",
              file=sys.stderr)
        return EXIT_USAGE
    try:
        field = parse_field(args.field).spec.serialize()
        rep = run_suite(args.suite, field, args.seed, _suite_kwargs(args), args.jobs)
    except (ValueError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = json.dumps(rep.to_json(), indent=2) if args.json else _format_report(rep, args.verbose)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(json.dumps(rep.to_json(), indent=2) + "\n")
    print(text)
    return EXIT_OK if rep.ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------

def _string_certificate(w: dh.Word, symmetries) -> dict:
    return {
        "word": str(w),
        "length": len(w),
        "alternating": True,
        "canonical": dh.canonical_string(w, symmetries) == w,
        "symmetries": list(symmetries),
    }


def _band_certificate(w: dh.Word, symmetries) -> dict:
    s = w.letters
    return {
        "word": s,
        "length": len(s),
        "cyclically_alternating": dh.is_cyclic_word(s),
        "primitive": dh.is_primitive(s),
        "canonical": dh.canonical_band(s, symmetries) == s,
        "symmetries": list(symmetries),
    }


def cmd_enumerate(args) -> int:
    if args.family == "strings":
        sym = ("inverse", "letter_swap") if args.canonical else ()
        words = dh.enumerate_words(args.max_len, symmetries=sym)
        certs = [_string_certificate(w, sym) for w in words]
    elif args.family == "bands":
        sym = ("inverse", "rotation", "letter_swap") if args.canonical else ()
        words = dh.enumerate_bands(args.max_len, symmetries=sym)
        certs = [_band_certificate(w, sym) for w in words]
    else:
        print(f"error: unknown family {args.family!r}", file=sys.stderr)
        return EXIT_USAGE
    for c in certs:
        print(json.dumps(c) if args.json else c["word"])
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _seed(text: str) -> int:
    if text == "random":
        return secrets.randbits(32)
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("seed must be an integer or 'random'")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="2^16", help="working field, e.g. 2^16, GF(2^32), 3^10")
    common.add_argument("--seed", type=_seed, default=0, help="integer seed or 'random'")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--trials", type=int, default=cl.DEFAULT_TRIALS, help="random form trials")
    common.add_argument("--strict-deterministic", action="store_true",
                        help="treat probabilistic negatives as mismatches")

    ap = argparse.ArgumentParser(prog="symend", description="Symmetry of endomorphism algebras of modules.")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="classify End(M) for one module")
    a.add_argument("object", help="string:abAB | band:abAB:m=1:lambda=w | cyclic:r=2:parts=2,3 | "
                                  "'nakayama:cyclic:n=3:pl=9,9,9; module top=2 len=7' | regular:q=1")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", help="strings, bands, cyclic, nakayama-hom, nakayama-sym, local, klein4, "
                                 "dimbound, semisimple-converse or robustness")
    v.add_argument("--max-len", type=int)
    v.add_argument("--max-dim", type=int)
    v.add_argument("--q", type=int)
    v.add_argument("--count", type=int)
    v.add_argument("--corpus-seed", type=int, help="seed for the random Nakayama multisets (default 0)")
    v.add_argument("--max-n", type=int)
    v.add_argument("--max-L", dest="max_L", type=int)
    v.add_argument("--total-max", type=int)
    v.add_argument("--jobs", type=int, default=1, help="worker processes (sharded by object)")
    v.add_argument("--output", help="also write the JSON report to this file")
    v.add_argument("--verbose", action="store_true", help="list every record, not only mismatches")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("enumerate", parents=[common], help="list string or band words")
    e.add_argument("family", help="strings or bands")
    e.add_argument("--max-len", type=int, default=4)
    e.add_argument("--canonical", action=argparse.BooleanOptionalAction, default=True,
                   help="one representative per symmetry class (default)")
    e.set_defaults(func=cmd_enumerate)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
