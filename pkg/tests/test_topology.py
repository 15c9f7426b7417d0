import itertools

import pytest
from hypothesis import given, settings, strategies as st

from softtop import oracle
from softtop.errors import ContextMismatch, NotOpenMember, SizeCapExceeded
from softtop.fuzz import Outcome, closure_differential, closure_laws, subspace_laws
from softtop.sets import Context, SoftPoint, SoftSet, all_points, intersection, union
from softtop.topology import (
    SoftSpace,
    SoftTopology,
    closed_sets,
    closure,
    derive,
    generate_from_base,
    generate_from_subbase,
    is_adherent,
    is_base,
    subspace,
    verify_axioms,
)


def test_verify_axioms_simple(ctx):
    null, absolute = SoftSet.null(ctx), SoftSet.absolute(ctx)
    assert verify_axioms(ctx, [null, absolute]).ok
    assert verify_axioms(ctx, oracle.enumerate_all_soft_sets(ctx)).ok
    assert verify_axioms(ctx, [absolute]).kind == "missing_null"
    assert verify_axioms(ctx, [null]).kind == "missing_absolute"


def test_verify_axioms_union_witness(ctx):
    F = SoftSet.from_rows(ctx, {"e1": ["a"]})
    H = SoftSet.from_rows(ctx, {"e2": ["b"]})
    v = verify_axioms(ctx, [SoftSet.null(ctx), SoftSet.absolute(ctx), F, H])
    assert v.kind == "not_closed_under_union"
    assert v.witness == (F, H)


def test_verify_axioms_nested_pair_is_fine(ctx, F, G):
    # F is inside G, so their union G is already present
    assert verify_axioms(ctx, [SoftSet.null(ctx), SoftSet.absolute(ctx), F, G]).ok


def test_verify_axioms_intersection_witness(ctx):
    A = SoftSet.from_rows(ctx, {"e1": ["a", "b"]})
    B = SoftSet.from_rows(ctx, {"e1": ["a"], "e2": ["a"]})
    fam = [SoftSet.null(ctx), SoftSet.absolute(ctx), A, B, union(A, B)]
    v = verify_axioms(ctx, fam)
    assert v.kind == "not_closed_under_intersection"
    assert set(v.witness) == {A, B}


def test_closed_sets(ctx, one_open, F1):
    assert set(closed_sets(SoftSpace(ctx, SoftTopology.indiscrete(ctx)))) == {SoftSet.null(ctx), SoftSet.absolute(ctx)}
    assert len(closed_sets(SoftSpace(ctx, SoftTopology.discrete(ctx)))) == 16
    assert set(closed_sets(one_open)) == {
        SoftSet.null(ctx),
        SoftSet.absolute(ctx),
        SoftSet.from_rows(ctx, {"e1": ["b"], "e2": ["b"]}),
    }


def test_closure_fixtures(ctx, one_open):
    H = SoftSet.from_rows(ctx, {"e1": ["b"]})
    assert closure(one_open, H) == SoftSet.from_rows(ctx, {"e1": ["b"], "e2": ["b"]})
    assert closure(one_open, SoftSet.null(ctx)).is_null()
    assert closure(one_open, SoftSet.absolute(ctx)).is_absolute()
    for K in closed_sets(one_open):
        assert closure(one_open, K) == K
    assert oracle.closure_via_adherence(one_open, H) == closure(one_open, H)


def test_adherence_fixtures(ctx, one_open):
    H = SoftSet.from_rows(ctx, {"e1": ["b"]})
    assert is_adherent(one_open, SoftPoint.of(ctx, "b", "e2"), H)
    disc = SoftSpace(ctx, SoftTopology.discrete(ctx))
    assert not is_adherent(disc, SoftPoint.of(ctx, "a", "e1"), H)
    assert all(is_adherent(disc, p, H) for p in H)


def test_intersection_closure_strict_witness():
    # closure of an intersection can be strictly smaller than the intersection of closures
    ctx = Context(("a", "b"), ("e",))
    S = SoftSpace(ctx, SoftTopology.indiscrete(ctx))
    F = SoftSet.from_rows(ctx, {"e": ["a"]})
    G = SoftSet.from_rows(ctx, {"e": ["b"]})
    assert closure(S, intersection(F, G)).is_null()
    assert intersection(closure(S, F), closure(S, G)).is_absolute()


def test_is_base(ctx):
    disc = SoftSpace(ctx, SoftTopology.discrete(ctx))
    points = [p.as_set() for p in all_points(ctx)] + [SoftSet.null(ctx)]
    assert is_base(disc, points)
    assert is_base(disc, disc.opens)
    ind = SoftSpace(ctx, SoftTopology.indiscrete(ctx))
    assert not is_base(ind, [SoftSet.null(ctx)])
    with pytest.raises(NotOpenMember):
        is_base(ind, [points[0]])


def test_generation(ctx, F, G):
    assert generate_from_subbase(ctx, []) == SoftTopology.indiscrete(ctx)
    assert generate_from_subbase(ctx, [p.as_set() for p in all_points(ctx)]) == SoftTopology.discrete(ctx)
    T = generate_from_subbase(ctx, [F, G])
    assert intersection(F, G) in T and union(F, G) in T
    assert {oracle.pairs(X) for X in T.opens} == oracle.naive_generate(ctx, [F, G])
    assert generate_from_base(ctx, [SoftSet.null(ctx), SoftSet.absolute(ctx), F]) == generate_from_subbase(ctx, [F])


def test_generation_size_cap(ctx):
    with pytest.raises(SizeCapExceeded):
        generate_from_subbase(ctx, [p.as_set() for p in all_points(ctx)], size_cap=5)


def test_size_cap_env(ctx, monkeypatch):
    monkeypatch.setenv("SOFTTOP_SIZE_CAP", "3")
    with pytest.raises(SizeCapExceeded):
        SoftTopology.discrete(ctx)


def test_derivation(ctx, F):
    H = SoftSet.from_rows(ctx, {"e2": ["b"]})
    d = derive(union(F, H), [F, H])
    assert d is not None
    assert d.target == union(F, H)
    assert derive(SoftSet.from_rows(ctx, {"e1": ["b"]}), [F, H]) is None


def test_topology_rejects_non_topology(ctx, F):
    with pytest.raises(Exception):
        SoftTopology(ctx, [SoftSet.null(ctx), F])


def test_subspace_fixtures(ctx, one_open):
    assert subspace(one_open, ["a", "b"]).topology.keys() == one_open.topology.keys()
    disc = SoftSpace(ctx, SoftTopology.discrete(ctx))
    assert len(subspace(disc, ["a"]).opens) == 4
    Ya = subspace(one_open, ["a"])
    assert [X.mask for X in Ya.opens] == [0, Ya.ctx.full_mask]
    with pytest.raises(Exception):
        subspace(one_open, [])


def test_subspace_context_mismatch(ctx, one_open):
    other = Context(("a",), ("e1",))
    with pytest.raises(ContextMismatch):
        closure(one_open, SoftSet.null(other))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_closure_against_oracles(seed):
    rng = oracle.rng_for(seed)
    S = oracle.random_space(oracle.OracleConfig(), rng)
    sets = list(oracle.enumerate_all_soft_sets(S.ctx))
    out = Outcome()
    closure_differential(out, S, sets)
    closure_laws(out, S, sets)
    for F in sets[:8]:
        out.expect(closure(S, F) == oracle.naive_closure(S, F), "naive closure")
    assert out.failures == []


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_subspace_laws_random(seed):
    rng = oracle.rng_for(seed)
    S = oracle.random_space(oracle.OracleConfig(), rng)
    out = Outcome()
    subspace_laws(out, S, oracle.random_subset(rng, S.ctx.universe), rng)
    assert out.failures == []


def test_enumerated_topologies_are_topologies():
    ctx = Context(("a", "b"), ("e",))
    tops = oracle.enumerate_all_topologies(ctx)
    # finite topologies on a 2-point set: indiscrete, two Sierpinski, discrete
    assert len(tops) == 4
    for T in tops:
        assert oracle.naive_is_topology(ctx, T.opens)
    for combo in itertools.combinations(list(oracle.enumerate_all_soft_sets(ctx)), 3):
        assert verify_axioms(ctx, combo).ok == oracle.naive_is_topology(ctx, combo)
