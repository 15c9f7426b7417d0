"""Finite contexts, soft sets, soft points and the soft-set algebra.

A soft set over a context is stored as a single integer bitmask: the
approximation of parameter ``p`` occupies bits ``p*|U| .. p*|U|+|U|-1``,
element ``u`` at bit ``p*|U| + u``.  The mask is the canonical key; two soft
sets over the same context are equal iff their masks are equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from softtop.errors import ContextMismatch, EmptyFamily, EmptySubset, UnknownLabel


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Context:
    """A finite universe paired with a finite parameter set.

    Label order is the canonical order; nothing is ever sorted.
    """

    universe: tuple[str, ...]
    params: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(self, "params", tuple(self.params))
        if not self.universe:
            raise EmptySubset("universe must be nonempty")
        if not self.params:
            raise EmptySubset("parameter set must be nonempty")
        for what, labels in (("universe", self.universe), ("params", self.params)):
            if len(set(labels)) != len(labels):
                raise ValueError(f"duplicate labels in {what}: {labels}")

    @cached_property
    def n_elems(self) -> int:
        return len(self.universe)

    @cached_property
    def n_params(self) -> int:
        return len(self.params)

    @cached_property
    def n_cells(self) -> int:
        return self.n_elems * self.n_params

    @cached_property
    def row_mask(self) -> int:
        return (1 << self.n_elems) - 1

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n_cells) - 1

    @cached_property
    def _elem_index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.universe)}

    @cached_property
    def _param_index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.params)}

    def elem_index(self, label: str) -> int:
        try:
            return self._elem_index[label]
        except KeyError:
            raise UnknownLabel(f"unknown universe element {label!r}") from None

    def param_index(self, label: str) -> int:
        try:
            return self._param_index[label]
        except KeyError:
            raise UnknownLabel(f"unknown parameter {label!r}") from None

    def elem_mask(self, labels: Iterable[str]) -> int:
        """Bit row (width ``|U|``) of a set of element labels."""
        row = 0
        for label in labels:
            row |= 1 << self.elem_index(label)
        return row

    def cell(self, param: int, elem: int) -> int:
        return param * self.n_elems + elem

    def __repr__(self) -> str:
        return f"Context(universe={list(self.universe)}, params={list(self.params)})"


def _same_ctx(a: Context, b: Context) -> None:
    if a is not b and a != b:
        raise ContextMismatch(f"{a!r} != {b!r}")


@dataclass(frozen=True)
class SoftSet:
    """A parameter-indexed family of subsets of the universe."""

    ctx: Context = field(repr=False)
    mask: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask > self.ctx.full_mask:
            raise ValueError(f"mask {self.mask:#x} out of range for {self.ctx!r}")

    @classmethod
    def null(cls, ctx: Context) -> SoftSet:
        return cls(ctx, 0)

    @classmethod
    def absolute(cls, ctx: Context) -> SoftSet:
        return cls(ctx, ctx.full_mask)

    @classmethod
    def from_rows(cls, ctx: Context, rows: Mapping[str, Iterable[str]]) -> SoftSet:
        """Build a soft set from ``{param label: element labels}``.

        Parameters missing from ``rows`` get the empty approximation.
        """
        mask = 0
        for param, elems in rows.items():
            p = ctx.param_index(param)
            mask |= ctx.elem_mask(elems) << (p * ctx.n_elems)
        return cls(ctx, mask)

    @classmethod
    def from_row_masks(cls, ctx: Context, rows: Sequence[int]) -> SoftSet:
        if len(rows) != ctx.n_params:
            raise ValueError(f"expected {ctx.n_params} rows, got {len(rows)}")
        mask = 0
        for p, row in enumerate(rows):
            if row & ~ctx.row_mask:
                raise ValueError(f"row {p} has bits outside the universe")
            mask |= row << (p * ctx.n_elems)
        return cls(ctx, mask)

    @property
    def key(self) -> int:
        return self.mask

    def row(self, param: int) -> int:
        return (self.mask >> (param * self.ctx.n_elems)) & self.ctx.row_mask

    def row_masks(self) -> tuple[int, ...]:
        return tuple(self.row(p) for p in range(self.ctx.n_params))

    def rows(self) -> dict[str, list[str]]:
        """Label view: every parameter mapped to its approximation, in canonical order."""
        ctx = self.ctx
        return {
            ctx.params[p]: [ctx.universe[u] for u in iter_bits(self.row(p))]
            for p in range(ctx.n_params)
        }

    def is_null(self) -> bool:
        return self.mask == 0

    def is_absolute(self) -> bool:
        return self.mask == self.ctx.full_mask

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[SoftPoint]:
        return iter(enumerate_points(self))

    def __contains__(self, p: object) -> bool:
        return isinstance(p, SoftPoint) and point_in(p, self)

    def __or__(self, other: SoftSet) -> SoftSet:
        return union(self, other)

    def __and__(self, other: SoftSet) -> SoftSet:
        return intersection(self, other)

    def __sub__(self, other: SoftSet) -> SoftSet:
        return difference(self, other)

    def __invert__(self) -> SoftSet:
        return complement(self)

    def __le__(self, other: SoftSet) -> bool:
        return is_subset(self, other)

    def __ge__(self, other: SoftSet) -> bool:
        return is_subset(other, self)

    def __str__(self) -> str:
        body = ", ".join(f"{p}:{{{','.join(es)}}}" for p, es in self.rows().items())
        return "{" + body + "}"


@dataclass(frozen=True, order=True)
class SoftPoint:
    """One expressive parameter plus one support element.

    Ordering is canonical: parameter-major, element-minor.
    """

    param: int
    elem: int
    ctx: Context = field(compare=False, repr=False)

    def __post_init__(self) -> None:
        if not (0 <= self.param < self.ctx.n_params and 0 <= self.elem < self.ctx.n_elems):
            raise IndexError(f"soft point ({self.param}, {self.elem}) outside {self.ctx!r}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SoftPoint):
            return NotImplemented
        return (self.param, self.elem) == (other.param, other.elem) and self.ctx == other.ctx

    def __hash__(self) -> int:
        return hash((self.param, self.elem))

    @classmethod
    def of(cls, ctx: Context, elem: str, param: str) -> SoftPoint:
        return cls(ctx.param_index(param), ctx.elem_index(elem), ctx)

    @property
    def cell(self) -> int:
        return self.param * self.ctx.n_elems + self.elem

    def as_set(self) -> SoftSet:
        return SoftSet(self.ctx, 1 << self.cell)

    @property
    def labels(self) -> tuple[str, str]:
        """``(element label, parameter label)``."""
        return self.ctx.universe[self.elem], self.ctx.params[self.param]

    def __str__(self) -> str:
        elem, param = self.labels
        return f"{elem}_{param}"


def point_at(ctx: Context, cell: int) -> SoftPoint:
    return SoftPoint(cell // ctx.n_elems, cell % ctx.n_elems, ctx)


# --- relations -------------------------------------------------------------


def is_subset(F: SoftSet, G: SoftSet) -> bool:
    _same_ctx(F.ctx, G.ctx)
    return F.mask & ~G.mask == 0


def soft_equal(F: SoftSet, G: SoftSet) -> bool:
    _same_ctx(F.ctx, G.ctx)
    return F.mask == G.mask


def meets(F: SoftSet, G: SoftSet) -> bool:
    """True iff the soft intersection is not null."""
    _same_ctx(F.ctx, G.ctx)
    return F.mask & G.mask != 0


def point_in(p: SoftPoint, F: SoftSet) -> bool:
    _same_ctx(p.ctx, F.ctx)
    return (F.mask >> p.cell) & 1 == 1


# --- operations ------------------------------------------------------------


def complement(F: SoftSet) -> SoftSet:
    return SoftSet(F.ctx, F.ctx.full_mask & ~F.mask)


def union(F: SoftSet, G: SoftSet) -> SoftSet:
    _same_ctx(F.ctx, G.ctx)
    return SoftSet(F.ctx, F.mask | G.mask)


def intersection(F: SoftSet, G: SoftSet) -> SoftSet:
    _same_ctx(F.ctx, G.ctx)
    return SoftSet(F.ctx, F.mask & G.mask)


def difference(F: SoftSet, G: SoftSet) -> SoftSet:
    _same_ctx(F.ctx, G.ctx)
    return SoftSet(F.ctx, F.mask & ~G.mask)


def big_union(family: Iterable[SoftSet]) -> SoftSet:
    family = list(family)
    if not family:
        raise EmptyFamily("soft union of an empty family")
    ctx = family[0].ctx
    mask = 0
    for F in family:
        _same_ctx(ctx, F.ctx)
        mask |= F.mask
    return SoftSet(ctx, mask)


def big_intersection(family: Iterable[SoftSet]) -> SoftSet:
    family = list(family)
    if not family:
        raise EmptyFamily("soft intersection of an empty family")
    ctx = family[0].ctx
    mask = ctx.full_mask
    for F in family:
        _same_ctx(ctx, F.ctx)
        mask &= F.mask
    return SoftSet(ctx, mask)


def constant_soft_set(ctx: Context, V: Iterable[str]) -> SoftSet:
    """Every approximation equals ``V``; ``V`` must be nonempty."""
    row = ctx.elem_mask(V)
    if not row:
        raise EmptySubset("constant soft set needs a nonempty subset")
    return SoftSet(ctx, _tile(ctx, row))


def sub_soft_set(F: SoftSet, V: Iterable[str]) -> SoftSet:
    """Intersect every approximation of ``F`` with ``V`` (still over ``F.ctx``)."""
    row = F.ctx.elem_mask(V)
    if not row:
        raise EmptySubset("sub soft set needs a nonempty subset")
    return SoftSet(F.ctx, F.mask & _tile(F.ctx, row))


def _tile(ctx: Context, row: int) -> int:
    mask = 0
    for p in range(ctx.n_params):
        mask |= row << (p * ctx.n_elems)
    return mask


def enumerate_points(F: SoftSet) -> list[SoftPoint]:
    """All soft points of ``F`` in canonical order."""
    return [point_at(F.ctx, c) for c in iter_bits(F.mask)]


def all_points(ctx: Context) -> list[SoftPoint]:
    return enumerate_points(SoftSet.absolute(ctx))


# --- moving soft sets between a context and a sub-context ------------------


def sub_context(ctx: Context, elems: Iterable[str], params: Iterable[str] | None = None) -> Context:
    """Context on a subset of the universe (and optionally of the parameters).

    Labels keep the parent's canonical order regardless of the order given.
    """
    keep = set(elems)
    for label in keep:
        ctx.elem_index(label)
    universe = tuple(u for u in ctx.universe if u in keep)
    if not universe:
        raise EmptySubset("subspace needs a nonempty subset of the universe")
    if params is None:
        return Context(universe, ctx.params)
    keep_p = set(params)
    for label in keep_p:
        ctx.param_index(label)
    kept_params = tuple(e for e in ctx.params if e in keep_p)
    if not kept_params:
        raise EmptySubset("subspace needs a nonempty set of parameters")
    return Context(universe, kept_params)


def restrict_to(F: SoftSet, sub: Context) -> SoftSet:
    """Drop the cells of ``F`` outside ``sub`` and reindex into ``sub``."""
    ctx = F.ctx
    mask = 0
    for sp, param in enumerate(sub.params):
        row = F.row(ctx.param_index(param))
        for su, elem in enumerate(sub.universe):
            if (row >> ctx.elem_index(elem)) & 1:
                mask |= 1 << (sp * sub.n_elems + su)
    return SoftSet(sub, mask)


def extend_to(G: SoftSet, ctx: Context) -> SoftSet:
    """View a soft set over a sub-context as a soft set over ``ctx``."""
    sub = G.ctx
    mask = 0
    for c in iter_bits(G.mask):
        sp, su = divmod(c, sub.n_elems)
        mask |= 1 << ctx.cell(ctx.param_index(sub.params[sp]), ctx.elem_index(sub.universe[su]))
    return SoftSet(ctx, mask)
