"""Brute-force oracles and seeded instance generators for differential testing.

The oracles work on plain Python sets of ``(parameter label, element label)``
pairs and never call the bitmask algebra, closure, continuity or generation
code they are meant to check.  They are slow on purpose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from softtop.errors import SizeCapExceeded, TooLarge
from softtop.mappings import SoftMapping
from softtop.sets import Context, SoftSet
from softtop.topology import SoftSpace, SoftTopology, generate_from_subbase

Pairs = frozenset  # frozenset[tuple[str, str]]

EXHAUSTIVE_LIMIT = 256
MAX_ENUMERATION_CELLS = 16


@dataclass(frozen=True)
class OracleConfig:
    max_universe: int = 3
    max_params: int = 2
    max_subbase: int = 4
    seed: int = 0
    iterations: int = 100

    def __post_init__(self) -> None:
        if min(self.max_universe, self.max_params, self.iterations) <= 0 or self.max_subbase < 0:
            raise ValueError("oracle limits must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def max_cells(self) -> int:
        return self.max_universe * self.max_params

    @property
    def exhaustive(self) -> bool:
        return 2**self.max_cells <= EXHAUSTIVE_LIMIT


def rng_for(seed: int, *key: int) -> np.random.Generator:
    """Independent stream for instance ``key`` under ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))


# --- pair-set views --------------------------------------------------------


def pairs(F: SoftSet) -> Pairs:
    return frozenset((e, u) for e, us in F.rows().items() for u in us)


def from_pairs(ctx: Context, ps: Iterable[tuple[str, str]]) -> SoftSet:
    rows: dict[str, list[str]] = {}
    for e, u in ps:
        rows.setdefault(e, []).append(u)
    return SoftSet.from_rows(ctx, rows)


def grid(ctx: Context) -> Pairs:
    return frozenset((e, u) for e in ctx.params for u in ctx.universe)


def open_pairs(S: SoftSpace) -> list[Pairs]:
    return [pairs(G) for G in S.opens]


# --- oracles ---------------------------------------------------------------


def closure_via_adherence(S: SoftSpace, F: SoftSet) -> SoftSet:
    """Soft set of the adherent points of ``F``: every open set holding the point meets ``F``."""
    target = pairs(F)
    opens = open_pairs(S)
    adherent = [pt for pt in sorted(grid(S.ctx)) if all(G & target for G in opens if pt in G)]
    return from_pairs(S.ctx, adherent)


def naive_closure(S: SoftSpace, F: SoftSet) -> SoftSet:
    """Intersection of the closed supersets, computed on pair sets."""
    full = grid(S.ctx)
    target = pairs(F)
    out = full
    for G in open_pairs(S):
        C = full - G
        if target <= C:
            out = out & C
    return from_pairs(S.ctx, out)


def naive_image(m: SoftMapping, F: SoftSet) -> SoftSet:
    phi, psi = m.phi_labels(), m.psi_labels()
    return from_pairs(m.dst, {(psi[e], phi[u]) for e, u in pairs(F)})


def naive_preimage(m: SoftMapping, G: SoftSet) -> SoftSet:
    phi, psi = m.phi_labels(), m.psi_labels()
    target = pairs(G)
    return from_pairs(m.src, {(e, u) for e in m.src.params for u in m.src.universe if (psi[e], phi[u]) in target})


def naive_product(sets: Sequence[SoftSet], ctx: Context) -> SoftSet:
    """Soft product by tuple enumeration over label strings."""
    comps = [pairs(F) for F in sets]
    cells = set()
    for combo in itertools.product(*comps):
        e = "(" + ",".join(c[0] for c in combo) + ")"
        u = "(" + ",".join(c[1] for c in combo) + ")"
        cells.add((e, u))
    return from_pairs(ctx, cells)


def naive_generate(ctx: Context, subbase: Iterable[SoftSet]) -> frozenset[Pairs]:
    """Pairwise intersection and union closure to a fixpoint."""
    family = {frozenset(), grid(ctx)} | {pairs(F) for F in subbase}
    changed = True
    while changed:
        changed = False
        for A, B in itertools.combinations(list(family), 2):
            for C in (A & B, A | B):
                if C not in family:
                    family.add(C)
                    changed = True
    return frozenset(family)


def naive_is_topology(ctx: Context, family: Iterable[SoftSet]) -> bool:
    """Axioms checked over every subfamily, not just pairs (tiny families only)."""
    fam = {pairs(F) for F in family}
    if frozenset() not in fam or grid(ctx) not in fam:
        return False
    members = list(fam)
    if len(members) > 16:
        raise TooLarge("subfamily scan limited to 16 members")
    for r in range(1, len(members) + 1):
        for sub in itertools.combinations(members, r):
            if frozenset().union(*sub) not in fam:
                return False
            if frozenset.intersection(*sub) not in fam:
                return False
    return True


def naive_is_continuous(m: SoftMapping, X: SoftSpace, Y: SoftSpace) -> bool:
    """Neighbourhood definition with the neighbourhood systems written out in full."""
    phi, psi = m.phi_labels(), m.psi_labels()
    ox, oy = open_pairs(X), open_pairs(Y)
    everything_x = list(_all_pair_sets(X.ctx))
    everything_y = list(_all_pair_sets(Y.ctx))

    def nbhds(opens, universe, pt):
        return [N for N in universe if any(pt in A and A <= N for A in opens)]

    for pt in grid(X.ctx):
        q = (psi[pt[0]], phi[pt[1]])
        for G in nbhds(oy, everything_y, q):
            if not any({(psi[e], phi[u]) for e, u in F} <= G for F in nbhds(ox, everything_x, pt)):
                return False
    return True


def _all_pair_sets(ctx: Context) -> Iterator[Pairs]:
    cells = sorted(grid(ctx))
    if len(cells) > MAX_ENUMERATION_CELLS:
        raise TooLarge(f"{len(cells)} cells")
    for r in range(len(cells) + 1):
        for combo in itertools.combinations(cells, r):
            yield frozenset(combo)


def enumerate_all_soft_sets(ctx: Context) -> Iterator[SoftSet]:
    """All ``2^(|U||E|)`` soft sets in canonical key order."""
    if ctx.n_cells > MAX_ENUMERATION_CELLS:
        raise TooLarge(f"{ctx.n_cells} cells exceeds the enumeration limit of {MAX_ENUMERATION_CELLS}")
    for k in range(ctx.full_mask + 1):
        yield SoftSet(ctx, k)


def enumerate_all_topologies(ctx: Context) -> list[SoftTopology]:
    """Every soft topology on a context with at most 4 cells, by filtering all families."""
    if ctx.n_cells > 4:
        raise TooLarge("topology enumeration limited to 4 cells")
    middle = list(range(1, ctx.full_mask))
    out = []
    for r in range(len(middle) + 1):
        for combo in itertools.combinations(middle, r):
            keys = {0, ctx.full_mask, *combo}
            if all(a & b in keys and a | b in keys for a in keys for b in keys):
                out.append(SoftTopology(ctx, [SoftSet(ctx, k) for k in sorted(keys)], check=False))
    return out


# --- seeded generators -----------------------------------------------------


def random_context(rng: np.random.Generator, max_universe: int, max_params: int, prefix: str = "") -> Context:
    n_u = int(rng.integers(1, max_universe + 1))
    n_e = int(rng.integers(1, max_params + 1))
    return Context(tuple(f"{prefix}u{i}" for i in range(n_u)), tuple(f"{prefix}e{i}" for i in range(n_e)))


def random_soft_set(rng: np.random.Generator, ctx: Context, density: float = 0.5) -> SoftSet:
    bits = rng.random(ctx.n_cells) < density
    return SoftSet(ctx, sum(1 << i for i, b in enumerate(bits) if b))


def random_topology(
    rng: np.random.Generator, ctx: Context, max_subbase: int, size_cap: int | None = None
) -> SoftTopology:
    n = int(rng.integers(0, max_subbase + 1)) if max_subbase else 0
    return generate_from_subbase(ctx, [random_soft_set(rng, ctx) for _ in range(n)], size_cap)


def random_space(cfg: OracleConfig, rng: np.random.Generator | None = None, retries: int = 8) -> SoftSpace:
    """Seeded random space within the configured caps."""
    rng = rng_for(cfg.seed) if rng is None else rng
    last: SizeCapExceeded | None = None
    for _ in range(retries):
        ctx = random_context(rng, cfg.max_universe, cfg.max_params)
        try:
            return SoftSpace(ctx, random_topology(rng, ctx, cfg.max_subbase))
        except SizeCapExceeded as exc:
            last = exc
    assert last is not None
    raise last


def random_mapping(rng: np.random.Generator, src: Context, dst: Context) -> SoftMapping:
    phi = tuple(int(x) for x in rng.integers(0, dst.n_elems, size=src.n_elems))
    psi = tuple(int(x) for x in rng.integers(0, dst.n_params, size=src.n_params))
    return SoftMapping(src, dst, phi, psi)


def random_injective_mapping(rng: np.random.Generator, src: Context, dst: Context) -> SoftMapping:
    phi = tuple(int(x) for x in rng.permutation(dst.n_elems)[: src.n_elems])
    psi = tuple(int(x) for x in rng.permutation(dst.n_params)[: src.n_params])
    return SoftMapping(src, dst, phi, psi)


def random_surjective_mapping(rng: np.random.Generator, src: Context, dst: Context) -> SoftMapping:
    def onto(n_src: int, n_dst: int) -> tuple[int, ...]:
        values = list(range(n_dst)) + [int(x) for x in rng.integers(0, n_dst, size=n_src - n_dst)]
        return tuple(int(x) for x in rng.permutation(values))

    return SoftMapping(src, dst, onto(src.n_elems, dst.n_elems), onto(src.n_params, dst.n_params))


def random_subset(rng: np.random.Generator, labels: Sequence[str]) -> list[str]:
    """Nonempty random subset, in the given order."""
    while True:
        keep = [x for x in labels if rng.random() < 0.5]
        if keep:
            return keep


def random_continuous_target(
    rng: np.random.Generator, X: SoftSpace, dst: Context, m: SoftMapping | None = None, tries: int = 6
) -> tuple[SoftSpace, SoftMapping]:
    """A target space on ``dst`` and a mapping from ``X`` that is continuous by construction.

    Candidate open sets are kept only when their inverse image is open in
    ``X``; unions and intersections of such sets keep that property.
    """
    m = random_mapping(rng, X.ctx, dst) if m is None else m
    phi, psi = m.phi_labels(), m.psi_labels()

    def pre(gp: Pairs) -> Pairs:
        return frozenset((e, u) for e in X.ctx.params for u in X.ctx.universe if (psi[e], phi[u]) in gp)

    x_opens = open_pairs(X)
    x_open_set = set(x_opens)
    hit = frozenset((psi[e], phi[u]) for e, u in grid(X.ctx))
    keep = []
    for _ in range(tries):
        gp = pairs(random_soft_set(rng, dst))
        if rng.random() < 0.5:
            # image of a saturated open set, padded with cells the mapping never reaches
            F = x_opens[int(rng.integers(0, len(x_opens)))]
            gp = frozenset((psi[e], phi[u]) for e, u in F) | (gp - hit)
        if pre(gp) in x_open_set:
            keep.append(from_pairs(dst, gp))
    return SoftSpace(dst, generate_from_subbase(dst, keep)), m
