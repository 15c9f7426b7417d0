"""Soft topologies over a finite context.

In the finite case closure under pairwise unions already gives closure under
arbitrary unions, so every axiom check here is pairwise.  Neighbourhood
systems are never materialised: a soft point's neighbourhoods all contain an
open set holding the point, so quantifying over open sets is enough.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from softtop.errors import AxiomViolation, ContextMismatch, NotOpenMember, SizeCapExceeded
from softtop.sets import (
    Context,
    SoftPoint,
    SoftSet,
    all_points,
    extend_to,
    restrict_to,
    sub_context,
)

log = logging.getLogger(__name__)

DEFAULT_SIZE_CAP = 100_000


def default_size_cap() -> int:
    """Topology size cap, overridable through ``SOFTTOP_SIZE_CAP``."""
    raw = os.environ.get("SOFTTOP_SIZE_CAP")
    return int(raw) if raw else DEFAULT_SIZE_CAP


@dataclass(frozen=True)
class AxiomVerdict:
    kind: str  # ok | missing_null | missing_absolute | not_closed_under_intersection | not_closed_under_union
    witness: tuple[SoftSet, SoftSet] | None = None

    @property
    def ok(self) -> bool:
        return self.kind == "ok"

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.witness is None:
            return self.kind
        a, b = self.witness
        return f"{self.kind}: {a} and {b}"


def verify_axioms(ctx: Context, candidate: Iterable[SoftSet]) -> AxiomVerdict:
    """Check the four soft topology axioms; witnesses come in canonical key order."""
    members = _canonical(ctx, candidate)
    keys = {F.mask for F in members}
    if 0 not in keys:
        return AxiomVerdict("missing_null")
    if ctx.full_mask not in keys:
        return AxiomVerdict("missing_absolute")
    for i, F in enumerate(members):
        for G in members[i + 1 :]:
            if F.mask & G.mask not in keys:
                return AxiomVerdict("not_closed_under_intersection", (F, G))
    for i, F in enumerate(members):
        for G in members[i + 1 :]:
            if F.mask | G.mask not in keys:
                return AxiomVerdict("not_closed_under_union", (F, G))
    return AxiomVerdict("ok")


def _canonical(ctx: Context, sets: Iterable[SoftSet]) -> list[SoftSet]:
    seen: dict[int, SoftSet] = {}
    for F in sets:
        if F.ctx is not ctx and F.ctx != ctx:
            raise ContextMismatch(f"soft set over {F.ctx!r} in a family over {ctx!r}")
        seen.setdefault(F.mask, F)
    return [seen[k] for k in sorted(seen)]


class SoftTopology:
    """An immutable, key-ordered, deduplicated family of open soft sets."""

    def __init__(self, ctx: Context, opens: Iterable[SoftSet], *, check: bool = True) -> None:
        self.ctx = ctx
        self.opens: tuple[SoftSet, ...] = tuple(_canonical(ctx, opens))
        self._keys = frozenset(F.mask for F in self.opens)
        if check:
            verdict = verify_axioms(ctx, self.opens)
            if not verdict.ok:
                raise AxiomViolation(verdict)

    @classmethod
    def _from_masks(cls, ctx: Context, masks: Iterable[int]) -> SoftTopology:
        return cls(ctx, (SoftSet(ctx, k) for k in masks), check=False)

    @classmethod
    def indiscrete(cls, ctx: Context) -> SoftTopology:
        return cls._from_masks(ctx, (0, ctx.full_mask))

    @classmethod
    def discrete(cls, ctx: Context, size_cap: int | None = None) -> SoftTopology:
        cap = default_size_cap() if size_cap is None else size_cap
        if 2**ctx.n_cells > cap:
            raise SizeCapExceeded(cap, 2**ctx.n_cells)
        return cls._from_masks(ctx, range(ctx.full_mask + 1))

    def __contains__(self, F: object) -> bool:
        return isinstance(F, SoftSet) and F.ctx == self.ctx and F.mask in self._keys

    def __iter__(self):
        return iter(self.opens)

    def __len__(self) -> int:
        return len(self.opens)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SoftTopology):
            return NotImplemented
        return self.ctx == other.ctx and self._keys == other._keys

    def __hash__(self) -> int:
        return hash((self.ctx, self._keys))

    def __repr__(self) -> str:
        return f"SoftTopology({len(self.opens)} open sets over {self.ctx!r})"

    def keys(self) -> frozenset[int]:
        return self._keys

    def is_open(self, F: SoftSet) -> bool:
        return F in self

    def is_closed(self, F: SoftSet) -> bool:
        return (self.ctx.full_mask & ~F.mask) in self._keys and F.ctx == self.ctx

    @cached_property
    def closed(self) -> tuple[SoftSet, ...]:
        full = self.ctx.full_mask
        return tuple(SoftSet(self.ctx, k) for k in sorted(full & ~k for k in self._keys))

    def is_coarser_than(self, other: SoftTopology) -> bool:
        return self.ctx == other.ctx and self._keys <= other._keys


@dataclass(frozen=True)
class SoftSpace:
    """A context together with a soft topology on it."""

    ctx: Context = field(repr=False)
    topology: SoftTopology

    def __post_init__(self) -> None:
        if self.topology.ctx != self.ctx:
            raise ContextMismatch("topology is over a different context")

    @classmethod
    def of(cls, topology: SoftTopology) -> SoftSpace:
        return cls(topology.ctx, topology)

    @property
    def opens(self) -> tuple[SoftSet, ...]:
        return self.topology.opens


def _check(S: SoftSpace, ctx: Context) -> None:
    if ctx is not S.ctx and ctx != S.ctx:
        raise ContextMismatch(f"expected {S.ctx!r}, got {ctx!r}")


def closed_sets(S: SoftSpace) -> tuple[SoftSet, ...]:
    return S.topology.closed


def closure(S: SoftSpace, F: SoftSet) -> SoftSet:
    """Soft intersection of every closed set containing ``F``."""
    _check(S, F.ctx)
    mask = S.ctx.full_mask
    for C in S.topology.closed:
        if F.mask & ~C.mask == 0:
            mask &= C.mask
    return SoftSet(S.ctx, mask)


def open_nbhds(S: SoftSpace, p: SoftPoint) -> list[SoftSet]:
    """Open sets containing ``p``; these generate its neighbourhood system."""
    _check(S, p.ctx)
    bit = 1 << p.cell
    return [G for G in S.opens if G.mask & bit]


def is_adherent(S: SoftSpace, p: SoftPoint, F: SoftSet) -> bool:
    _check(S, F.ctx)
    return all(G.mask & F.mask for G in open_nbhds(S, p))


def is_base(S: SoftSpace, B: Iterable[SoftSet]) -> bool:
    """Point criterion, cross-checked against union reconstruction."""
    B = list(B)
    for b in B:
        if b not in S.topology:
            raise NotOpenMember(f"{b} is not open")
    by_points = all(
        any(b.mask >> c & 1 and b.mask & ~F.mask == 0 for b in B)
        for F in S.opens
        for c in range(S.ctx.n_cells)
        if F.mask >> c & 1
    )
    by_unions = all(_union_below(B, F.mask) == F.mask for F in S.opens)
    if by_points != by_unions:  # pragma: no cover - the two criteria are equivalent
        raise AssertionError("base criteria disagree")
    return by_points


def _union_below(family: Iterable[SoftSet], mask: int) -> int:
    out = 0
    for b in family:
        if b.mask & ~mask == 0:
            out |= b.mask
    return out


def _intersection_closure(ctx: Context, masks: Sequence[int], cap: int) -> set[int]:
    closed = {ctx.full_mask}
    for s in masks:
        closed |= {k & s for k in closed}
        if len(closed) > cap:
            raise SizeCapExceeded(cap, len(closed))
    return closed


def _union_closure(masks: Iterable[int], cap: int) -> set[int]:
    closed = {0}
    for b in sorted(masks):
        closed |= {k | b for k in closed}
        if len(closed) > cap:
            raise SizeCapExceeded(cap, len(closed))
    return closed


def generate_from_subbase(
    ctx: Context, subbase: Iterable[SoftSet], size_cap: int | None = None
) -> SoftTopology:
    """Unions of finite intersections of ``subbase`` plus null and absolute."""
    cap = default_size_cap() if size_cap is None else size_cap
    masks = sorted({F.mask for F in _canonical(ctx, subbase)})
    if 0 not in masks or ctx.full_mask not in masks:
        log.info("subbase lacks null or absolute soft set; adjoining them")
    base = _intersection_closure(ctx, masks, cap)
    base.add(0)
    return SoftTopology._from_masks(ctx, _union_closure(base, cap))


def generate_from_base(ctx: Context, base: Iterable[SoftSet], size_cap: int | None = None) -> SoftTopology:
    """Union closure of a family already closed under finite intersection."""
    cap = default_size_cap() if size_cap is None else size_cap
    masks = {F.mask for F in _canonical(ctx, base)} | {0, ctx.full_mask}
    return SoftTopology._from_masks(ctx, _union_closure(masks, cap))


@dataclass(frozen=True)
class Derivation:
    """Witness that ``target`` is a union of finite intersections of subbase members.

    ``terms`` lists, per union term, the subbase indices being intersected
    (an empty tuple stands for the absolute soft set).
    """

    target: SoftSet
    terms: tuple[tuple[int, ...], ...]


def derive(target: SoftSet, subbase: Sequence[SoftSet]) -> Derivation | None:
    """Find a derivation of ``target`` from ``subbase``, or None if none exists."""
    ctx = target.ctx
    full = ctx.full_mask
    # finite intersections, each tagged with the first index set that produced it
    inter: dict[int, tuple[int, ...]] = {full: ()}
    for i, S in enumerate(subbase):
        if S.ctx != ctx:
            raise ContextMismatch("subbase member over another context")
        for k, idx in list(inter.items()):
            inter.setdefault(k & S.mask, idx + (i,))
    terms = [idx for k, idx in sorted(inter.items()) if k and k & ~target.mask == 0]
    got = 0
    for idx in terms:
        k = full
        for i in idx:
            k &= subbase[i].mask
        got |= k
    if got != target.mask:
        return None
    return Derivation(target, tuple(terms))


def subspace(S: SoftSpace, Y: Iterable[str], params: Iterable[str] | None = None) -> SoftSpace:
    """Relative topology on the elements ``Y``.

    ``params`` additionally restricts the parameter set; the relative topology
    proper keeps all parameters (``params=None``).
    """
    sub = sub_context(S.ctx, Y, params)
    opens = {restrict_to(F, sub).mask for F in S.opens}
    return SoftSpace(sub, SoftTopology._from_masks(sub, opens))


def in_parent(G: SoftSet, parent: Context) -> SoftSet:
    """A soft set over a subspace, read as a soft set over the parent space."""
    return extend_to(G, parent)


def points(S: SoftSpace) -> list[SoftPoint]:
    return all_points(S.ctx)
