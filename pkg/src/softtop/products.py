"""Finite soft cartesian products."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Sequence

from softtop.errors import BudgetExceeded, ContextMismatch, FactorArityMismatch
from softtop.sets import Context, SoftPoint, SoftSet, iter_bits

DEFAULT_CELL_BUDGET = 4096


def tuple_label(parts: Sequence[str]) -> str:
    return "(" + ",".join(parts) + ")"


@dataclass(frozen=True, repr=False)
class ProductContext(Context):
    """Context whose universe and parameters are cartesian products of the factors'.

    Tuples are enumerated in ``itertools.product`` order, so the first factor
    is the most significant digit of a tuple's index.
    """

    factors: tuple[Context, ...] = ()

    @cached_property
    def arity(self) -> int:
        return len(self.factors)

    @cached_property
    def elem_tuples(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.product(*(range(f.n_elems) for f in self.factors)))

    @cached_property
    def param_tuples(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.product(*(range(f.n_params) for f in self.factors)))

    def elem_of(self, parts: Sequence[int]) -> int:
        return _mixed_radix(parts, [f.n_elems for f in self.factors])

    def param_of(self, parts: Sequence[int]) -> int:
        return _mixed_radix(parts, [f.n_params for f in self.factors])

    def __repr__(self) -> str:
        return "ProductContext(" + " x ".join(repr(f) for f in self.factors) + ")"


def _mixed_radix(parts: Sequence[int], sizes: Sequence[int]) -> int:
    index = 0
    for part, size in zip(parts, sizes):
        index = index * size + part
    return index


def product_context(factors: Sequence[Context], cell_budget: int = DEFAULT_CELL_BUDGET) -> ProductContext:
    factors = tuple(factors)
    if not factors:
        raise FactorArityMismatch("a product needs at least one factor")
    n_elems = prod(f.n_elems for f in factors)
    n_params = prod(f.n_params for f in factors)
    if n_elems * n_params > cell_budget:
        sizes = " x ".join(f"{f.n_elems}*{f.n_params}" for f in factors)
        raise BudgetExceeded(
            f"product of sizes {sizes} has {n_elems}*{n_params} = {n_elems * n_params} cells, "
            f"budget is {cell_budget}"
        )
    universe = tuple(tuple_label(t) for t in itertools.product(*(f.universe for f in factors)))
    params = tuple(tuple_label(t) for t in itertools.product(*(f.params for f in factors)))
    return ProductContext(universe, params, factors)


def product_soft_set(factors: Sequence[SoftSet], ctx: ProductContext | None = None) -> SoftSet:
    """Soft cartesian product; ``ctx`` defaults to the product of the factor contexts."""
    factors = tuple(factors)
    if ctx is None:
        ctx = product_context([F.ctx for F in factors])
    if len(factors) != ctx.arity:
        raise FactorArityMismatch(f"expected {ctx.arity} factors, got {len(factors)}")
    for i, (F, fc) in enumerate(zip(factors, ctx.factors)):
        if F.ctx != fc:
            raise FactorArityMismatch(f"factor {i} is over {F.ctx!r}, expected {fc!r}")
    mask = 0
    for pt_index, ptuple in enumerate(ctx.param_tuples):
        rows = [list(iter_bits(F.row(p))) for F, p in zip(factors, ptuple)]
        base = pt_index * ctx.n_elems
        for etuple in itertools.product(*rows):
            mask |= 1 << (base + ctx.elem_of(etuple))
    return SoftSet(ctx, mask)


def component_points(p: SoftPoint) -> list[SoftPoint]:
    """Project a soft point of a product onto each factor."""
    ctx = p.ctx
    if not isinstance(ctx, ProductContext):
        raise ContextMismatch("soft point is not over a product context")
    etuple = ctx.elem_tuples[p.elem]
    ptuple = ctx.param_tuples[p.param]
    return [SoftPoint(a, x, f) for a, x, f in zip(ptuple, etuple, ctx.factors)]


def point_in_product(p: SoftPoint, factors: Sequence[SoftSet]) -> bool:
    """Membership in a product decided component-wise, without building the product."""
    comps = component_points(p)
    if len(comps) != len(factors):
        raise FactorArityMismatch(f"expected {len(comps)} factors, got {len(factors)}")
    for q, F in zip(comps, factors):
        if q.ctx != F.ctx:
            raise ContextMismatch(f"factor over {F.ctx!r}, point component over {q.ctx!r}")
    return all((F.mask >> q.cell) & 1 for q, F in zip(comps, factors))
