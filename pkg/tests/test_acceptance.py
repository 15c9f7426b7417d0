"""Acceptance criteria 1-10.

Each test prints one ``criterion N: PASS|FAIL`` line with its counts and
wall time.  Run ``pytest tests/test_acceptance.py -v -s`` to see them.
"""

import itertools
import subprocess
import sys
import time

import pytest

from softtop import oracle
from softtop.embedding import verify_embedding_lemma
from softtop.errors import LemmaViolation
from softtop.fuzz import (
    Outcome,
    algebra_laws,
    closure_differential,
    closure_laws,
    continuity_agreement,
    lemma_checks,
    mapping_laws,
    point_criterion,
    product_laws,
    random_factor_spaces,
    random_lemma_instance,
    random_triple,
    subspace_laws,
)
from softtop.mappings import SoftMapping
from softtop.oracle import OracleConfig, rng_for
from softtop.sets import (
    Context,
    SoftSet,
    big_intersection,
    big_union,
    complement,
    intersection,
)
from softtop.topology import SoftSpace, SoftTopology, closure

GRID = Context(("a", "b"), ("e1", "e2"))
CFG = OracleConfig()
SEED = 2024


@pytest.fixture
def report(capsys):
    def emit(n: int, title: str, out: Outcome, elapsed: float, limit: float | None, extra: str = "") -> None:
        timely = limit is None or elapsed < limit
        status = "PASS" if not out.failures and timely else "FAIL"
        budget = f" (limit {limit:g} s)" if limit is not None else ""
        line = f"criterion {n}: {status}  {title}: {out.checks} checks, {len(out.failures)} failures, {elapsed:.2f} s{budget}"
        if extra:
            line += f"; {extra}"
        with capsys.disabled():
            print("\n" + line)
            for detail in out.failures[:5]:
                print(f"    {detail}")
        assert not out.failures
        assert timely, f"took {elapsed:.2f} s"

    return emit


def test_criterion_1_algebra_laws(report):
    t0 = time.perf_counter()
    out = Outcome()
    sets = list(oracle.enumerate_all_soft_sets(GRID))
    null, absolute = SoftSet.null(GRID), SoftSet.absolute(GRID)
    for F, G in itertools.product(sets, repeat=2):
        algebra_laws(out, F, G, null, absolute)
        out.expect(oracle.pairs(F) | oracle.pairs(G) == oracle.pairs(F | G), "union vs pair oracle")
    for fam in itertools.combinations(sets, 3):
        out.expect(complement(big_union(fam)) == big_intersection([complement(x) for x in fam]), "De Morgan family")
        out.expect(complement(big_intersection(fam)) == big_union([complement(x) for x in fam]), "De Morgan family")
    report(1, "algebra laws over |U|=2, |E|=2", out, time.perf_counter() - t0, 1.0, "256 pairs")


def test_criterion_2_point_criterion(report):
    t0 = time.perf_counter()
    out = Outcome()
    sets = list(oracle.enumerate_all_soft_sets(GRID))
    for F, G in itertools.product(sets, repeat=2):
        point_criterion(out, F, G)
    report(2, "subset iff every soft point is a member", out, time.perf_counter() - t0, 1.0, "256 pairs")


def _closure_corpus(n: int = 200):
    return [oracle.random_space(CFG, rng_for(SEED, 3, i)) for i in range(n)]


def test_criterion_3_closure_differential(report):
    t0 = time.perf_counter()
    out = Outcome()
    spaces = _closure_corpus()
    for S in spaces:
        assert 2**S.ctx.n_cells <= 256
        closure_differential(out, S, list(oracle.enumerate_all_soft_sets(S.ctx)))
    report(3, "closure equals adherent points", out, time.perf_counter() - t0, 60.0, f"{len(spaces)} spaces, exhaustive")


def test_criterion_4_closure_laws(report):
    t0 = time.perf_counter()
    out = Outcome()
    spaces = _closure_corpus()
    for S in spaces:
        closure_laws(out, S, list(oracle.enumerate_all_soft_sets(S.ctx)))
    # pinned witness that closure only sub-distributes over intersections
    ctx = Context(("a", "b"), ("e",))
    S = SoftSpace(ctx, SoftTopology.indiscrete(ctx))
    F, G = SoftSet.from_rows(ctx, {"e": ["a"]}), SoftSet.from_rows(ctx, {"e": ["b"]})
    lhs, rhs = closure(S, intersection(F, G)), intersection(closure(S, F), closure(S, G))
    out.expect(lhs.mask & ~rhs.mask == 0 and lhs != rhs, "strictness witness is no longer strict")
    report(4, "closure operator laws", out, time.perf_counter() - t0, None, f"{len(spaces)} spaces + strict witness")


def test_criterion_5_continuity_equivalence(report):
    t0 = time.perf_counter()
    out = Outcome()
    verdicts = []
    for i in range(500):
        rng = rng_for(SEED, 5, i)
        m, X, Y = random_triple(rng, CFG)
        verdicts.append(continuity_agreement(out, m, X, Y))
    mix = f"500 triples, {sum(verdicts)} continuous, {500 - sum(verdicts)} not"
    assert 0 < sum(verdicts) < 500
    report(5, "pointwise, open-preimage and closed-preimage continuity agree", out, time.perf_counter() - t0, 60.0, mix)


def test_criterion_6_subspace_laws(report):
    t0 = time.perf_counter()
    out = Outcome()
    for i in range(200):
        rng = rng_for(SEED, 6, i)
        S = oracle.random_space(CFG, rng)
        subspace_laws(out, S, oracle.random_subset(rng, S.ctx.universe), rng)
    report(6, "subspace closed sets and subspace closure", out, time.perf_counter() - t0, None, "200 pairs")


def test_criterion_7_product_laws(report):
    t0 = time.perf_counter()
    out = Outcome()
    C = Context(("a", "b"), ("e",))
    D = Context(("x", "y"), ("d",))
    pairs = list(itertools.product(oracle.enumerate_all_soft_sets(C), oracle.enumerate_all_soft_sets(D)))
    tops = list(itertools.product(oracle.enumerate_all_topologies(C), oracle.enumerate_all_topologies(D)))
    for tc, td in tops:
        product_laws(out, [SoftSpace(C, tc), SoftSpace(D, td)], pairs, rng_for(SEED, 7))
    for i in range(100):
        rng = rng_for(SEED, 7, i)
        spaces = random_factor_spaces(rng, CFG)
        sets = list(itertools.product(*(list(oracle.enumerate_all_soft_sets(S.ctx)) for S in spaces)))
        product_laws(out, spaces, sets, rng)
    extra = f"{len(tops)} topology pairs x {len(pairs)} set pairs + 100 random"
    report(7, "slabs, n-slab base, projections and closure of products", out, time.perf_counter() - t0, 120.0, extra)


def test_criterion_8_mapping_properties(report):
    t0 = time.perf_counter()
    out = Outcome()
    inj = sur = 0
    for i in range(500):
        rng = rng_for(SEED, 8, i)
        src = oracle.random_context(rng, 3, 2)
        dst = oracle.random_context(rng, 3, 2, prefix="y")
        m = oracle.random_mapping(rng, src, dst)
        mapping_laws(out, m, rng)
    # constructed fixtures for the equality cases
    src = Context(("a", "b"), ("e1", "e2"))
    big = Context(("x", "y", "z"), ("d1", "d2", "d3"))
    small = Context(("x",), ("d",))
    for i in range(100):
        rng = rng_for(SEED, 8, 1000 + i)
        m = oracle.random_injective_mapping(rng, src, big)
        out.expect(m.injective, "fixture not injective")
        mapping_laws(out, m, rng)
        inj += 1
        m = oracle.random_surjective_mapping(rng, big, small if i % 2 else src)
        out.expect(m.surjective, "fixture not surjective")
        mapping_laws(out, m, rng)
        sur += 1
    extra = f"500 random + {inj} injective + {sur} surjective"
    report(8, "twelve image and inverse-image properties", out, time.perf_counter() - t0, None, extra)


def test_criterion_9_embedding_lemma(report):
    t0 = time.perf_counter()
    out = Outcome()
    # (a) discrete space with the identity
    ctx = Context(("a", "b"), ("e",))
    X = SoftSpace(ctx, SoftTopology.discrete(ctx))
    rep = verify_embedding_lemma(X, [(X, SoftMapping.identity(ctx))])
    out.expect(rep.hypotheses and rep.diagonal.overall, "discrete identity fixture")
    # (b) random instances whose hypotheses pass
    # half the draws include a homeomorphic copy of X, half rely on random continuous maps alone
    passing = attempts = copy_free = 0
    while passing < 100 and attempts < 2000:
        rng = rng_for(SEED, 9, attempts)
        with_copy = attempts % 2 == 0
        attempts += 1
        Xr, targets = random_lemma_instance(rng, CFG, separating=with_copy)
        try:
            rep = verify_embedding_lemma(Xr, targets)
        except LemmaViolation as exc:
            out.expect(False, f"LemmaViolation on instance {attempts - 1}: {exc.report}")
            continue
        if rep.hypotheses:
            passing += 1
            copy_free += not with_copy
            out.expect(rep.diagonal.overall, f"instance {attempts - 1}: hypotheses pass, no embedding")
            lemma_checks(out, Xr, targets)
    out.expect(passing >= 100, f"only {passing} hypothesis-passing instances")
    # (c) constant map
    point = Context(("x",), ("p",))
    rep = verify_embedding_lemma(X, [(SoftSpace(point, SoftTopology.discrete(point)), SoftMapping(ctx, point, (0, 0), (0,)))])
    out.expect(not rep.separation.separates_points and not rep.diagonal.injective, "constant-map fixture")
    report(9, "embedding lemma end to end", out, time.perf_counter() - t0, 120.0, f"{passing} passing of {attempts} drawn, {copy_free} without a copy")


def test_criterion_10_determinism(report):
    t0 = time.perf_counter()
    out = Outcome()
    cmd = [sys.executable, "-m", "softtop.cli", "fuzz", "--seed", "42", "--iters", "100", "--json"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    out.expect(first.returncode == 0, f"fuzz exit {first.returncode}: {first.stderr.decode()[-300:]}")
    out.expect(first.stdout == second.stdout and first.stdout, "fuzz --json output differs between runs")
    report(10, "fuzz --seed 42 --iters 100 --json is byte-identical", out, time.perf_counter() - t0, None, f"{len(first.stdout)} bytes")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
