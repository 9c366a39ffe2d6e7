import json

import pytest

from symend import nakayama as nk
from symend import suites as S
from symend.gf import GF

SMALL = {
    "strings": dict(max_len=5),
    "bands": dict(max_len=4, ms=(1, 2)),
    "cyclic": dict(total_max=5),
    "nakayama-hom": dict(max_n=2, max_L=5),
    "nakayama-sym": dict(count=10),
    "klein4": dict(max_dim=4),
    "semisimple-converse": {},
}


@pytest.fixture(scope="module")
def small_reports():
    F = GF(2, 16)
    return {name: S.SUITES[name](F=F, seed=0, **kw) for name, kw in SMALL.items()}


@pytest.mark.parametrize("name", sorted(SMALL))
def test_small_runs_have_no_mismatches(name, small_reports):
    rep = small_reports[name]
    assert rep.records and rep.ok, [r.key for r in rep.mismatches]


@pytest.mark.parametrize("name", sorted(SMALL))
def test_report_schema(name, small_reports):
    data = json.loads(json.dumps(small_reports[name].to_json()))
    assert data["schema"] == S.SCHEMA
    assert {"command", "parameters", "field", "seed", "wall_time", "counts", "mismatches", "records"} <= set(data)
    keys = [r["key"] for r in data["records"]]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    for r in data["records"]:
        assert {"key", "object", "computed", "expected", "match"} <= set(r)
    c = data["counts"]
    assert c["total"] == len(keys) and c["matches"] + c["mismatches"] == c["total"]


@pytest.mark.parametrize("name", ["strings", "bands", "cyclic", "nakayama-hom", "nakayama-sym"])
def test_shards_merge_to_full_run(name, small_reports):
    F = GF(2, 16)
    parts = [S.SUITES[name](F=F, seed=0, shard=(i, 3), **SMALL[name]) for i in range(3)]
    merged = S.merge_reports(parts).to_json()["records"]
    assert merged == small_reports[name].to_json()["records"]


def test_strict_counts_probabilistic_as_mismatch():
    rep = S.RunReport("verify test", {}, "2", 0)
    rep.add(S.Record("x", {}, True, True, True, probabilistic=True))
    assert rep.ok
    rep.strict_deterministic = True
    assert not rep.ok and rep.counts()["mismatches"] == 1


def test_lambda_names():
    F = GF(2, 16)
    w = S.omega(F)
    assert S.lambda_name(F, 1) == "1"
    assert S.lambda_name(F, w) == "w"
    assert S.lambda_name(F, F.mul(w, w)) == "w^2"
    # keys do not depend on the working field
    K = GF(2, 32)
    assert [S.lambda_name(F, x) for x in S.gf16_units(F)] == [S.lambda_name(K, x) for x in S.gf16_units(K)]


def test_klein4_keys_are_field_independent(small_reports):
    other = S.suite_klein4(F=GF(2, 32), seed=0, **SMALL["klein4"])
    assert S.verdict_table(other) == S.verdict_table(small_reports["klein4"])


def test_robustness_small():
    rep = S.suite_robustness(seeds=(0, 1), suites=("strings", "nakayama-hom"),
                             kwargs={"strings": SMALL["strings"], "nakayama-hom": SMALL["nakayama-hom"]})
    assert rep.ok
    assert len(rep.records) == 2 * 3  # two seeds plus one extra field, per suite


def test_nakayama_random_cases_balanced():
    cases = S.nakayama_random_cases(0, count=40)
    assert len(cases) == 40
    assert sum(exp for _, _, exp in cases) == 20
    for _, mods, exp in cases:
        assert nk.nakayama_expected_symmetric(mods) == exp


def test_nakayama_sym_objects_do_not_depend_on_seed():
    F = GF(2, 16)
    a = S.suite_nakayama_sym(F=F, seed=0, count=10)
    b = S.suite_nakayama_sym(F=F, seed=5, count=10)
    assert [r.descriptor for r in a.records] == [r.descriptor for r in b.records]
    assert S.verdict_table(a) == S.verdict_table(b)
    c = S.suite_nakayama_sym(F=F, seed=0, count=10, corpus_seed=1)
    assert [r.descriptor for r in c.records] != [r.descriptor for r in a.records]
