"""Acceptance suite: one test per criterion, each reported PASS/FAIL.

The heavy shared work (cross-validating every problem fixture) runs once in
the session-scoped matrix_reports fixture; the criteria then assert on the
collected reports or run their own targeted computations.
"""

import filecmp
import os

import pytest

from btcycles import building as bd
from btcycles.algorithm import run_multi, seed_vertex
from btcycles.building import FiniteHermSpace, isotropic_subspaces
from btcycles.cli import main
from btcycles.cycles import in_cycle, irreducibility_criterion, splits_off
from btcycles.oracle import cross_validate, naive_isotropic_count
from btcycles.scalars import PadicContext

from conftest import problem_names, problem_path

FAST_FIXTURES = ["p3_n2_mn_r01", "p3_n2_r4", "p3_n3_r0", "p3_n3_r1",
                 "p5_n2_r2"]


@pytest.fixture(scope="session")
def matrix_reports(problems):
    """Cross-validation report for every problem fixture, with its caps."""
    out = {}
    for name, prob in sorted(problems.items()):
        out[name] = cross_validate(
            prob["st"], window_radius=prob["radius"],
            top_radius=prob["top_radius"], cap=prob["cap"],
            force_top=prob["force_top"])
    return out


def fq_eye(ctx, d):
    return [[ctx.fq_one if i == j else ctx.fq_zero for j in range(d)]
            for i in range(d)]


def test_criterion_01_isotropic_line_counts():
    for p in (3, 5):
        ctx = PadicContext(p)
        for d, want in ((2, p + 1), (3, p ** 3 + 1)):
            V = FiniteHermSpace(ctx, fq_eye(ctx, d))
            assert len(isotropic_subspaces(V, 1)) == want
            assert naive_isotropic_count(V, 1) == want


def test_criterion_02_valuation_zero_base_case(problems):
    prob = problems["p3_n3_r0"]
    window = bd.ball(prob["seed"], prob["radius"], cap=prob["cap"])
    support, info = run_multi(prob["st"], window_radius=prob["radius"],
                              cap=prob["cap"], window=window)
    verts = support.vertices()
    assert len(verts) == 1
    assert verts[0].type == 1
    assert verts[0].key == seed_vertex(prob["st"]).key


def test_criterion_03_valuation_one_census(problems):
    prob = problems["p3_n3_r1"]
    st = prob["st"]
    window = bd.ball(prob["seed"], 2, cap=prob["cap"])
    tmax = st.space.max_type
    checked = 0
    for v in window.vertices():
        if v.type != tmax or not in_cycle(v, st):
            continue
        checked += 1
        subs = bd.neighbors_below(v, 1)
        assert len(subs) == 28
        n_all = n_one = 0
        for g in subs:
            above = bd.neighbors_above(g, tmax)
            inside = sum(1 for w in above if in_cycle(w, st))
            if inside == len(above):
                n_all += 1
            elif inside == 1:
                n_one += 1
        assert n_all == 4
        assert n_one == 24
    assert checked > 0


def test_criterion_04_dimension_four_variant(problems):
    prob = problems["p3_n4_r1"]
    st = prob["st"]
    x = st.xd[0]
    window = bd.ball(prob["seed"], 1, cap=prob["cap"])
    tmax = st.space.max_type
    assert tmax == 3
    checked = split_seen = other_seen = 0
    for v in window.vertices():
        if v.type != tmax or not in_cycle(v, st):
            continue
        checked += 1
        subs = bd.neighbors_below(v, 1)
        assert len(subs) == 28
        for g in subs:
            above = bd.neighbors_above(g, tmax)
            inside = sum(1 for w in above if in_cycle(w, st))
            if splits_off(g, x):
                split_seen += 1
                assert inside == len(above) == 28
            else:
                other_seen += 1
                assert inside == 1
    assert checked > 0 and split_seen > 0 and other_seen > 0


def test_criterion_05_kr_invariants(matrix_reports):
    for name, rep in matrix_reports.items():
        assert rep.data["kr_violations"] == [], name


def test_criterion_06_lemma_conformance(matrix_reports):
    # the n x r grid must be covered by fixtures, and all sweeps clean
    for n in (3, 4, 5):
        for r in (1, 2, 3):
            assert "p3_n%d_r%d" % (n, r) in matrix_reports
    for name, rep in matrix_reports.items():
        assert rep.data["lemma_violations"] == [], name


def test_criterion_07_oracle_equivalence(matrix_reports):
    for name, rep in matrix_reports.items():
        assert rep.data["match"], name
        assert rep.data["missing_count"] == 0, name
        assert rep.data["extra_count"] == 0, name
    assert sum(rep.data["elapsed"] for rep in matrix_reports.values()) < 3600


def test_criterion_08_interior_connectedness(matrix_reports):
    for name, rep in matrix_reports.items():
        assert rep.data["interior_connected"], name


def test_criterion_09_irreducibility(problems):
    cases = {"p3_n2_mn_r01": True, "p3_n2_mn_r23": True,
             "p3_n3_mn_r012": True, "p3_n3_mn_r122": False,
             "p3_n3_mn_r133": False}
    for name, want in sorted(cases.items()):
        st = problems[name]["st"]
        support, info = run_multi(st, cap=problems[name]["cap"])
        assert info["windowless"], name
        verts = support.vertices()
        assert verts, name
        maximal = [v for v in verts
                   if not any(w.key != v.key and w.lattice.contains(v.lattice)
                              for w in verts)]
        assert (len(maximal) == 1) == want, name
        assert irreducibility_criterion(st) == want, name


def test_criterion_10_determinism(tmp_path_factory):
    base = tmp_path_factory.mktemp("determinism")
    files = ("support.json", "support.dot", "summary.json", "trace.jsonl")
    for name in problem_names():
        d1 = str(base / (name + "_t1"))
        d2 = str(base / (name + "_t4"))
        assert main(["compute", "--problem", problem_path(name),
                     "--out", d1, "--threads", "1"]) == 0
        assert main(["compute", "--problem", problem_path(name),
                     "--out", d2, "--threads", "4"]) == 0
        for f in files:
            assert filecmp.cmp(os.path.join(d1, f), os.path.join(d2, f),
                               shallow=False), (name, f)
    for name in FAST_FIXTURES:
        d1 = str(base / (name + "_oc1"))
        d2 = str(base / (name + "_oc4"))
        assert main(["oracle-check", "--problem", problem_path(name),
                     "--out", d1, "--threads", "1"]) == 0
        assert main(["oracle-check", "--problem", problem_path(name),
                     "--out", d2, "--threads", "4"]) == 0
        assert filecmp.cmp(os.path.join(d1, "report.json"),
                           os.path.join(d2, "report.json"), shallow=False)
