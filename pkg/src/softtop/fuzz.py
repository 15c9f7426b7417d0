"""Seeded property checks over random instances.

Every property draws its instance from its own stream ``rng_for(seed,
instance, property)``, so a failure report (seed, instance, property) is
enough to replay it.  Reports contain no timings and are byte-stable for a
given seed and set of flags.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from softtop import oracle
from softtop.continuity import (
    METHODS,
    corestrict,
    derivations,
    initial_subbase,
    initial_topology,
    is_continuous,
    is_continuous_at,
    restrict,
)
from softtop.embedding import diagonal_mapping, image_subspace, verify_embedding_lemma
from softtop.mappings import SoftMapping, compose, image, image_of_point, inverse_image
from softtop.oracle import OracleConfig, rng_for
from softtop.product_topology import (
    SlabSpec,
    closure_of_product_check,
    continuity_into_product,
    product_topology,
    projection_mapping,
    slab,
    slab_as_product,
)
from softtop.products import point_in_product, product_context, product_soft_set
from softtop.sets import (
    Context,
    SoftSet,
    all_points,
    big_intersection,
    big_union,
    complement,
    difference,
    enumerate_points,
    extend_to,
    intersection,
    is_subset,
    meets,
    point_in,
    restrict_to,
    union,
)
from softtop.topology import (
    SoftSpace,
    SoftTopology,
    closure,
    generate_from_subbase,
    is_adherent,
    subspace,
    verify_axioms,
)


@dataclass
class Outcome:
    """Checks performed and failures found on one instance of one property."""

    checks: int = 0
    failures: list[str] = field(default_factory=list)

    def expect(self, cond: bool, detail: str | Callable[[], str]) -> None:
        self.checks += 1
        if not cond:
            self.failures.append(detail() if callable(detail) else detail)


def _soft_sets(ctx: Context, rng: np.random.Generator, limit: int = 256) -> list[SoftSet]:
    """Every soft set when there are at most ``limit``, else a seeded sample."""
    if 2**ctx.n_cells <= limit:
        return list(oracle.enumerate_all_soft_sets(ctx))
    return [oracle.random_soft_set(rng, ctx) for _ in range(limit)]


# --- algebra ----------------------------------------------------------------


def check_algebra(rng: np.random.Generator, cfg: OracleConfig) -> Outcome:
    out = Outcome()
    ctx = oracle.random_context(rng, cfg.max_universe, cfg.max_params)
    F, G, H = (oracle.random_soft_set(rng, ctx) for _ in range(3))
    null, absolute = SoftSet.null(ctx), SoftSet.absolute(ctx)
    algebra_laws(out, F, G, null, absolute)
    fam = [F, G, H]
    out.expect(complement(big_union(fam)) == big_intersection([complement(x) for x in fam]), "De Morgan (union)")
    out.expect(complement(big_intersection(fam)) == big_union([complement(x) for x in fam]), "De Morgan (intersection)")
    out.expect(oracle.pairs(union(F, G)) == oracle.pairs(F) | oracle.pairs(G), "union vs pair oracle")
    out.expect(oracle.pairs(intersection(F, G)) == oracle.pairs(F) & oracle.pairs(G), "intersection vs pair oracle")
    out.expect(oracle.pairs(difference(F, G)) == oracle.pairs(F) - oracle.pairs(G), "difference vs pair oracle")
    out.expect(oracle.pairs(complement(F)) == oracle.grid(ctx) - oracle.pairs(F), "complement vs pair oracle")
    return out


def algebra_laws(out: Outcome, F: SoftSet, G: SoftSet, null: SoftSet, absolute: SoftSet) -> None:
    out.expect(union(F, F) == F, lambda: f"F u F != F for {F}")
    out.expect(union(F, null) == F, lambda: f"F u null != F for {F}")
    out.expect(union(F, absolute) == absolute, lambda: f"F u abs != abs for {F}")
    out.expect(intersection(F, F) == F, lambda: f"F n F != F for {F}")
    out.expect(intersection(F, null) == null, lambda: f"F n null != null for {F}")
    out.expect(intersection(F, absolute) == F, lambda: f"F n abs != F for {F}")
    out.expect(difference(F, G) == intersection(F, complement(G)), lambda: f"F - G != F n G^c for {F}, {G}")
    out.expect(complement(union(F, G)) == intersection(complement(F), complement(G)), "De Morgan pair (union)")
    out.expect(complement(intersection(F, G)) == union(complement(F), complement(G)), "De Morgan pair (intersection)")
    out.expect((F == G) == (is_subset(F, G) and is_subset(G, F)), lambda: f"equality vs mutual inclusion {F}, {G}")
    out.expect(meets(F, G) == (not intersection(F, G).is_null()), "meets vs nonnull intersection")


def check_points(rng: np.random.Generator, cfg: OracleConfig) -> Outcome:
    out = Outcome()
    ctx = oracle.random_context(rng, cfg.max_universe, cfg.max_params)
    F, G = oracle.random_soft_set(rng, ctx), oracle.random_soft_set(rng, ctx)
    if rng.random() < 0.5:
        G = union(F, G)
    point_criterion(out, F, G)
    return out


def point_criterion(out: Outcome, F: SoftSet, G: SoftSet) -> None:
    by_points = all(point_in(p, G) for p in enumerate_points(F))
    out.expect(is_subset(F, G) == by_points, lambda: f"subset vs soft points for {F}, {G}")


# --- topology ---------------------------------------------------------------


def check_closure(rng: np.random.Generator, cfg: OracleConfig) -> Outcome:
    out = Outcome()
    S = oracle.random_space(cfg, rng)
    out.expect(verify_axioms(S.ctx, S.opens).ok, "generated space fails the axioms")
    closure_differential(out, S, _soft_sets(S.ctx, rng))
    closure_laws(out, S, _soft_sets(S.ctx, rng))
    return out


def closure_differential(out: Outcome, S: SoftSpace, sets: list[SoftSet]) -> None:
    pts = all_points(S.ctx)
    for F in sets:
        cl = closure(S, F)
        out.expect(cl == oracle.closure_via_adherence(S, F), lambda: f"closure {cl} != adherent points of {F}")
        adherent = [p for p in pts if is_adherent(S, p, F)]
        out.expect(enumerate_points(cl) == adherent, lambda: f"is_adherent disagrees with closure of {F}")


def closure_laws(out: Outcome, S: SoftSpace, sets: list[SoftSet]) -> None:
    ctx = S.ctx
    null, absolute = SoftSet.null(ctx), SoftSet.absolute(ctx)
    out.expect(closure(S, null) == null, "cl(null) != null")
    out.expect(closure(S, absolute) == absolute, "cl(abs) != abs")
    cl = {F.mask: closure(S, F) for F in sets}
    for F in sets:
        c = cl[F.mask]
        out.expect(is_subset(F, c), lambda: f"F not inside cl F for {F}")
        out.expect(S.topology.is_closed(F) == (c == F), lambda: f"closed iff cl F = F fails for {F}")
        out.expect(closure(S, c) == c, lambda: f"cl not idempotent at {F}")
        out.expect(S.topology.is_closed(c), lambda: f"cl F not closed for {F}")
    for F, G in itertools.product(sets, repeat=2):
        cF, cG = cl[F.mask], cl[G.mask]
        if F.mask & ~G.mask == 0:
            out.expect(cF.mask & ~cG.mask == 0, lambda: f"closure not monotone on {F} <= {G}")
        cu = cl.get(F.mask | G.mask) or closure(S, union(F, G))
        out.expect(cu.mask == cF.mask | cG.mask, lambda: f"cl(F u G) != cl F u cl G for {F}, {G}")
        ci = cl.get(F.mask & G.mask) or closure(S, intersection(F, G))
        out.expect(ci.mask & ~(cF.mask & cG.mask) == 0, lambda: f"cl(F n G) not inside cl F n cl G for {F}, {G}")


def check_subspace(rng: np.random.Generator, cfg: OracleConfig) -> Outcome:
    out = Outcome()
    S = oracle.random_space(cfg, rng)
    Y = oracle.random_subset(rng, S.ctx.universe)
    subspace_laws(out, S, Y, rng)
    return out


def subspace_laws(out: Outcome, S: SoftSpace, Y: list[str], rng: np.random.Generator) -> None:
    T = subspace(S, Y)
    out.expect(verify_axioms(T.ctx, T.opens).ok, f"subspace on {Y} fails the axioms")
    restricted = {restrict_to(C, T.ctx).mask for C in S.topology.closed}
    out.expect(
        {C.mask for C in T.topology.closed} == restricted,
        lambda: f"closed sets of subspace on {Y} are not the restricted closed sets",
    )
    abs_y = extend_to(SoftSet.absolute(T.ctx), S.ctx)
    for G in _soft_sets(T.ctx, rng):
        lhs = extend_to(closure(T, G), S.ctx)
        rhs = intersection(closure(S, extend_to(G, S.ctx)), abs_y)
        out.expect(lhs == rhs, lambda: f"subspace closure of {G} on {Y}: {lhs} != {rhs}")


def check_generation(rng: np.random.Generator, cfg: OracleConfig) -> Outcome:
    out = Outcome()
    ctx = oracle.random_context(rng, cfg.max_universe, cfg.max_params)
    n = int(rng.integers(0, cfg.max_subbase + 1))
    sub = [oracle.random_soft_set(rng, ctx) for _ in range(n)]
    T = generate_from_subbase(ctx, sub)
    out.expect(verify_axioms(ctx, T.opens).ok, "generated family fails the axioms")
    out.expect(all(F in T for F in sub), "generated topology misses a subbase member")
    out.expect({oracle.pairs(F) for F in T.opens} == oracle.naive_generate(ctx, sub), "generation vs naive fixpoint")
    out.expect(generate_from_subbase(ctx, T.opens) == T, "generation not idempotent")
    certs = derivations(T, sub)
    out.expect(all(c is not None for c in certs.values()), "open set without derivation from the subbase")
    # finite subfamily unions (pairwise closure suffices)
    for _ in range(8):
        k = int(rng.integers(1, len(T.opens) + 1))
        picks = [T.opens[int(i)] for i in rng.integers(0, len(T.opens), size=k)]
        out.expect(big_union(picks) in T, "union of a subfamily of open sets is not open")
    return out


# --- mappings ---------------------------------------------------------------


def check_mappings(rng: np.random.Generator, cfg: OracleConfig) -> Outcome:
    out = Outcome()
    src = oracle.random_context(rng, cfg.max_universe, cfg.max_params)
    dst = oracle.random_context(rng, cfg.max_universe, cfg.max_params, prefix="y")
    kind = int(rng.integers(0, 3))
    if kind == 1 and dst.n_elems >= src.n_elems and dst.n_params >= src.n_params:
        m = oracle.random_injective_mapping(rng, src, dst)
    elif kind == 2 and dst.n_elems <= src.n_elems and dst.n_params <= src.n_params:
        m = oracle.random_surjective_mapping(rng, src, dst)
    else:
        m = oracle.random_mapping(rng, src, dst)
    mapping_laws(out, m, rng)
    return out


def mapping_laws(out: Outcome, m: SoftMapping, rng: np.random.Generator) -> None:
    src, dst = m.src, m.dst
    nx, ax = SoftSet.null(src), SoftSet.absolute(src)
    ny, ay = SoftSet.null(dst), SoftSet.absolute(dst)
    F = oracle.random_soft_set(rng, src)
    G = oracle.random_soft_set(rng, dst)
    Fs = [oracle.random_soft_set(rng, src) for _ in range(int(rng.integers(1, 4)))]
    Gs = [oracle.random_soft_set(rng, dst) for _ in range(int(rng.integers(1, 4)))]
    F2 = union(F, oracle.random_soft_set(rng, src))
    G2 = union(G, oracle.random_soft_set(rng, dst))
    f, finv = (lambda A: image(m, A)), (lambda B: inverse_image(m, B))

    out.expect(f(nx) == ny, "image of null is null")
    out.expect(finv(ny) == nx, "inverse image of null is null")
    out.expect(finv(ay) == ax, "inverse image of absolute is absolute")
    back = finv(f(F))
    out.expect(is_subset(F, back), lambda: f"F not inside the inverse image of its image: {F}")
    if m.injective:
        out.expect(back == F, lambda: f"inverse image of image differs from F under injectivity: {F}")
    forth = f(finv(G))
    out.expect(is_subset(forth, G), lambda: f"image of inverse image not inside G: {G}")
    if m.surjective:
        out.expect(forth == G, lambda: f"image of inverse image differs from G under surjectivity: {G}")
    out.expect(finv(complement(G)) == complement(finv(G)), "inverse image does not commute with complement")
    out.expect(is_subset(f(F), f(F2)), "image not monotone")
    out.expect(is_subset(finv(G), finv(G2)), "inverse image not monotone")
    out.expect(f(big_union(Fs)) == big_union([f(A) for A in Fs]), "image does not distribute over unions")
    out.expect(is_subset(f(big_intersection(Fs)), big_intersection([f(A) for A in Fs])), "image of intersection not inside intersection of images")
    out.expect(finv(big_union(Gs)) == big_union([finv(B) for B in Gs]), "inverse image does not distribute over unions")
    out.expect(finv(big_intersection(Gs)) == big_intersection([finv(B) for B in Gs]), "inverse image does not distribute over intersections")

    out.expect(f(F) == oracle.naive_image(m, F), lambda: f"image vs pair oracle for {F}")
    out.expect(finv(G) == oracle.naive_preimage(m, G), lambda: f"inverse image vs pair oracle for {G}")
    pts = all_points(src)
    imgs = [image_of_point(m, p) for p in pts]
    out.expect(all(q.as_set() == f(p.as_set()) for p, q in zip(pts, imgs)), "image of a soft point")
    out.expect(m.injective == (len(set(imgs)) == len(imgs)), "injectivity vs images of soft points")
    for p, q in zip(pts, imgs):
        if point_in(p, F):
            out.expect(point_in(q, f(F)), "image of a member point is not a member")


# --- continuity -------------------------------------------------------------


def random_triple(rng: np.random.Generator, cfg: OracleConfig) -> tuple[SoftMapping, SoftSpace, SoftSpace]:
    X = oracle.random_space(cfg, rng)
    dst = oracle.random_context(rng, cfg.max_universe, cfg.max_params, prefix="y")
    if rng.random() < 0.5:
        Y, m = oracle.random_continuous_target(rng, X, dst)
    else:
        Y = SoftSpace(dst, oracle.random_topology(rng, dst, cfg.max_subbase))
        m = oracle.random_mapping(rng, X.ctx, dst)
    return m, X, Y


def check_continuity(rng: np.random.Generator, cfg: OracleConfig) -> Outcome:
    out = Outcome()
    m, X, Y = random_triple(rng, cfg)
    continuity_agreement(out, m, X, Y)
    if is_continuous(m, X, Y):
        Ysub = oracle.random_subset(rng, X.ctx.universe)
        r = restrict(m, X, Ysub)
        out.expect(bool(is_continuous(r, subspace(X, Ysub), Y)), f"restriction to {Ysub} is not continuous")
        image_sp = image_subspace(m, Y, restrict_params=False)
        core = corestrict(m, image_sp.ctx)
        out.expect(bool(is_continuous(core, X, image_sp)), "corestriction to the image is not continuous")
    return out


def continuity_agreement(out: Outcome, m: SoftMapping, X: SoftSpace, Y: SoftSpace, naive: bool = True) -> bool:
    reports = [is_continuous(m, X, Y, method) for method in METHODS]
    verdicts = {r.verdict for r in reports}
    out.expect(len(verdicts) == 1, lambda: "continuity criteria disagree: " + ", ".join(f"{r.method}={r.verdict}" for r in reports))
    for r in reports:
        out.expect((r.witness is None) == r.verdict, f"{r.method} witness presence")
    pointwise = all(is_continuous_at(m, X, Y, p) for p in all_points(X.ctx))
    out.expect(pointwise == reports[0].verdict, "is_continuous_at disagrees with pointwise report")
    if naive and X.ctx.n_cells <= 6 and Y.ctx.n_cells <= 6:
        out.expect(oracle.naive_is_continuous(m, X, Y) == reports[1].verdict, "neighbourhood oracle disagrees")
    return reports[1].verdict


def check_initial(rng: np.random.Generator, cfg: OracleConfig) -> Outcome:
    out = Outcome()
    ctx = oracle.random_context(rng, cfg.max_universe, cfg.max_params)
    targets = []
    for k in range(int(rng.integers(0, 3))):
        dst = oracle.random_context(rng, cfg.max_universe, cfg.max_params, prefix=f"y{k}")
        targets.append((SoftSpace(dst, oracle.random_topology(rng, dst, cfg.max_subbase)), oracle.random_mapping(rng, ctx, dst)))
    T = initial_topology(ctx, targets)
    X = SoftSpace(ctx, T)
    for Y, m in targets:
        out.expect(bool(is_continuous(m, X, Y)), "a mapping is not continuous for the initial topology")
    sub = initial_subbase(ctx, targets)
    out.expect(all(d is not None for d in derivations(T, sub).values()), "initial open set without derivation")
    out.expect({oracle.pairs(F) for F in T.opens} == oracle.naive_generate(ctx, sub), "initial topology vs naive")
    return out


# --- products ---------------------------------------------------------------


def random_factor_spaces(rng: np.random.Generator, cfg: OracleConfig, arity: int = 2, max_cells: int = 3) -> list[SoftSpace]:
    spaces = []
    for k in range(arity):
        while True:
            ctx = oracle.random_context(rng, min(cfg.max_universe, max_cells), min(cfg.max_params, max_cells), prefix=f"f{k}")
            if ctx.n_cells <= max_cells:
                break
        spaces.append(SoftSpace(ctx, oracle.random_topology(rng, ctx, cfg.max_subbase)))
    return spaces


def check_products(rng: np.random.Generator, cfg: OracleConfig) -> Outcome:
    out = Outcome()
    spaces = random_factor_spaces(rng, cfg)
    sets = [_soft_sets(S.ctx, rng, 16) for S in spaces]
    product_laws(out, spaces, list(itertools.product(*sets)), rng)
    return out


def product_laws(
    out: Outcome, spaces: list[SoftSpace], set_tuples: list[tuple[SoftSet, ...]], rng: np.random.Generator
) -> SoftSpace:
    P = product_context([S.ctx for S in spaces])
    prod = product_topology(spaces)
    # slab duality over every open payload and every n-slab
    for i, S in enumerate(spaces):
        for F in S.opens:
            spec = SlabSpec.single(i, F)
            out.expect(slab(P, spaces, spec) == slab_as_product(P, spec), lambda: f"slab forms differ at {i}: {F}")
    for combo in itertools.product(*(S.opens for S in spaces)):
        spec = SlabSpec(tuple(enumerate(combo)))
        out.expect(slab(P, spaces, spec) == slab_as_product(P, spec), "n-slab forms differ")
    by_base = product_topology(spaces, via="base")
    by_sub = product_topology(spaces, via="subbase")
    out.expect(by_base.topology == prod.topology, "n-slab base generates a different topology")
    out.expect(by_sub.topology == prod.topology, "slab subbase generates a different topology")
    if len(prod.opens) <= 128:
        naive = oracle.naive_generate(P, [slab(P, spaces, SlabSpec.single(i, F)) for i, S in enumerate(spaces) for F in S.opens])
        out.expect({oracle.pairs(F) for F in prod.opens} == naive, "product topology vs naive generation")
    for i, S in enumerate(spaces):
        out.expect(bool(is_continuous(projection_mapping(P, i), prod, S)), f"projection {i} not continuous")
    for sets in set_tuples:
        out.expect(closure_of_product_check(spaces, sets, prod), lambda: "closure of product != product of closures: " + ", ".join(map(str, sets)))
        pr = product_soft_set(sets, P)
        out.expect(pr == oracle.naive_product(sets, P), "product vs tuple oracle")
        out.expect(pr.is_null() == any(F.is_null() for F in sets), "nullity of product")
        for p in all_points(P):
            if point_in(p, pr) != point_in_product(p, sets):
                out.expect(False, f"point_in_product disagrees at {p}")
                break
    a = [oracle.random_soft_set(rng, S.ctx) for S in spaces]
    b = [union(x, oracle.random_soft_set(rng, x.ctx)) for x in a]
    out.expect(is_subset(product_soft_set(a, P), product_soft_set(b, P)), "product not monotone")
    c = [oracle.random_soft_set(rng, S.ctx) for S in spaces]
    out.expect(
        product_soft_set([intersection(x, y) for x, y in zip(a, c)], P)
        == intersection(product_soft_set(a, P), product_soft_set(c, P)),
        "product does not distribute over intersection",
    )
    # continuity into the product from a random space
    dom_ctx = oracle.random_context(rng, 2, 2, prefix="d")
    dom = SoftSpace(dom_ctx, oracle.random_topology(rng, dom_ctx, 3))
    m = oracle.random_mapping(rng, dom_ctx, P)
    res = continuity_into_product(m, dom, prod, spaces)
    out.expect(res.agree, lambda: f"continuity into product: direct={res.direct}, via projections={res.via_projections}")
    return prod


# --- embedding lemma --------------------------------------------------------


def relabeled_copy(rng: np.random.Generator, X: SoftSpace, prefix: str) -> tuple[SoftSpace, SoftMapping]:
    """A homeomorphic copy of ``X`` under random bijections, with the bijection."""
    ctx = X.ctx
    copy = Context(tuple(f"{prefix}{u}" for u in ctx.universe), tuple(f"{prefix}{e}" for e in ctx.params))
    m = SoftMapping(ctx, copy, tuple(int(x) for x in rng.permutation(ctx.n_elems)), tuple(int(x) for x in rng.permutation(ctx.n_params)))
    return SoftSpace(copy, SoftTopology(copy, [image(m, G) for G in X.opens], check=False)), m


def random_lemma_instance(rng: np.random.Generator, cfg: OracleConfig, separating: bool = True):
    X = oracle.random_space(cfg, rng)
    targets = []
    if separating:
        targets.append(relabeled_copy(rng, X, "c"))
    for k in range(int(rng.integers(0 if separating else 1, 3))):
        dst = oracle.random_context(rng, cfg.max_universe, cfg.max_params, prefix=f"t{k}")
        targets.append(oracle.random_continuous_target(rng, X, dst))
    order = rng.permutation(len(targets))
    return X, [targets[int(i)] for i in order]


def check_embedding(rng: np.random.Generator, cfg: OracleConfig) -> Outcome:
    out = Outcome()
    X, targets = random_lemma_instance(rng, cfg, separating=rng.random() < 0.75)
    lemma_checks(out, X, targets)
    return out


def lemma_checks(out: Outcome, X: SoftSpace, targets) -> None:
    report = verify_embedding_lemma(X, targets, raise_on_violation=False)
    out.expect(not report.hypotheses or report.diagonal.overall, lambda: f"embedding lemma violated: {report}")
    out.expect(report.diagonal_image_inclusion, lambda: f"diagonal image not inside product of images: {report.inclusion_witness}")
    cert = report.diagonal
    out.expect(cert.overall == (cert.continuous and cert.injective and cert.closed_into_image), "certificate invariant")
    out.expect(cert.injective == report.separation.separates_points, "diagonal injectivity vs point separation")
    maps = [m for _, m in targets]
    if report.product_route == "materialized":
        other = verify_embedding_lemma(X, targets, materialize=False, raise_on_violation=False)
        out.expect(other.diagonal == report.diagonal, "slab route and materialised route disagree")
    # diagonal composed with projections gives back each map
    delta = diagonal_mapping(X.ctx, maps)
    for i, m in enumerate(maps):
        out.expect(compose(projection_mapping(delta.dst, i), delta) == m, f"projection {i} after diagonal")
    if cert.injective:
        # an injective diagonal embeds exactly when X carries the initial topology of the family
        initial = initial_topology(X.ctx, targets)
        out.expect(cert.overall == (initial == X.topology), "embedding vs initial topology")


PROPERTIES: dict[str, Callable[[np.random.Generator, OracleConfig], Outcome]] = {
    "algebra laws": check_algebra,
    "subset by soft points": check_points,
    "closure equals adherent points and closure laws": check_closure,
    "subspace closed sets and closure": check_subspace,
    "generated topology is the subbase fixpoint": check_generation,
    "soft mapping image and inverse image laws": check_mappings,
    "continuity criteria agree": check_continuity,
    "initial topology": check_initial,
    "product slabs, base and closure of product": check_products,
    "embedding lemma": check_embedding,
}


@dataclass
class Tally:
    instances: int = 0
    checks: int = 0
    failed_instances: int = 0


def run_fuzz(cfg: OracleConfig, properties: list[str] | None = None, max_failures: int = 20) -> dict:
    """Run every property ``cfg.iterations`` times; returns a JSON-ready report."""
    names = list(PROPERTIES) if properties is None else properties
    tallies = {name: Tally() for name in names}
    failures = []
    for i in range(cfg.iterations):
        for k, name in enumerate(names):
            outcome = PROPERTIES[name](rng_for(cfg.seed, i, list(PROPERTIES).index(name)), cfg)
            t = tallies[name]
            t.instances += 1
            t.checks += outcome.checks
            if outcome.failures:
                t.failed_instances += 1
                for detail in outcome.failures:
                    if len(failures) < max_failures:
                        failures.append({"instance": i, "property": name, "detail": detail})
    return {
        "seed": cfg.seed,
        "iterations": cfg.iterations,
        "max_universe": cfg.max_universe,
        "max_params": cfg.max_params,
        "max_subbase": cfg.max_subbase,
        "properties": {
            name: {"instances": t.instances, "checks": t.checks, "failed_instances": t.failed_instances}
            for name, t in tallies.items()
        },
        "failures": failures,
        "ok": all(t.failed_instances == 0 for t in tallies.values()),
    }
