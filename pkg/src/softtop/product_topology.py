"""Projections, slabs, n-slabs and the soft product topology."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from softtop.continuity import is_continuous, initial_topology
from softtop.errors import ContextMismatch, FactorArityMismatch, IndexOutOfRange, NotOpenMember
from softtop.mappings import SoftMapping, compose, inverse_image
from softtop.products import DEFAULT_CELL_BUDGET, ProductContext, product_context, product_soft_set
from softtop.sets import SoftSet
from softtop.topology import SoftSpace, closure, generate_from_base, generate_from_subbase


def projection_mapping(P: ProductContext, i: int) -> SoftMapping:
    if not 0 <= i < P.arity:
        raise IndexOutOfRange(f"factor index {i} outside arity {P.arity}")
    return SoftMapping(
        P,
        P.factors[i],
        tuple(t[i] for t in P.elem_tuples),
        tuple(t[i] for t in P.param_tuples),
    )


@dataclass(frozen=True)
class SlabSpec:
    """Open payloads pinned at distinct factor indices; one part is a plain slab."""

    parts: tuple[tuple[int, SoftSet], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple((int(i), F) for i, F in self.parts))
        indices = [i for i, _ in self.parts]
        if len(set(indices)) != len(indices):
            raise ValueError(f"n-slab factor indices must be distinct, got {indices}")

    @classmethod
    def single(cls, index: int, payload: SoftSet) -> SlabSpec:
        return cls(((index, payload),))


def _check_spec(P: ProductContext, spaces: Sequence[SoftSpace] | None, spec: SlabSpec) -> None:
    for i, F in spec.parts:
        if not 0 <= i < P.arity:
            raise IndexOutOfRange(f"factor index {i} outside arity {P.arity}")
        if F.ctx != P.factors[i]:
            raise ContextMismatch(f"payload at {i} is not over factor {i}")
        if spaces is not None and F not in spaces[i].topology:
            raise NotOpenMember(f"payload {F} is not open in factor {i}")


def slab(P: ProductContext, spaces: Sequence[SoftSpace] | None, spec: SlabSpec) -> SoftSet:
    """Intersection of the inverse images of the payloads under their projections.

    Pass ``spaces`` to insist that every payload is open in its factor.
    """
    _check_spec(P, spaces, spec)
    mask = P.full_mask
    for i, F in spec.parts:
        mask &= inverse_image(projection_mapping(P, i), F).mask
    return SoftSet(P, mask)


def slab_as_product(P: ProductContext, spec: SlabSpec) -> SoftSet:
    """The same slab written as a product with absolutes in the free factors."""
    _check_spec(P, None, spec)
    comps = [SoftSet.absolute(f) for f in P.factors]
    for i, F in spec.parts:
        comps[i] = F
    return product_soft_set(comps, P)


def _context_of(spaces: Sequence[SoftSpace], cell_budget: int) -> ProductContext:
    if not spaces:
        raise FactorArityMismatch("a product needs at least one factor space")
    return product_context([S.ctx for S in spaces], cell_budget)


def slab_subbase(P: ProductContext, spaces: Sequence[SoftSpace]) -> list[SoftSet]:
    out: dict[int, SoftSet] = {}
    for i, S in enumerate(spaces):
        for F in S.opens:
            G = slab(P, None, SlabSpec.single(i, F))
            out.setdefault(G.mask, G)
    return [out[k] for k in sorted(out)]


def nslab_base(P: ProductContext, spaces: Sequence[SoftSpace]) -> list[SoftSet]:
    """Every n-slab, in product form (absolute payloads cover the free factors)."""
    out: dict[int, SoftSet] = {}
    for comps in itertools.product(*(S.opens for S in spaces)):
        G = product_soft_set(comps, P)
        out.setdefault(G.mask, G)
    return [out[k] for k in sorted(out)]


def product_topology(
    spaces: Sequence[SoftSpace],
    cell_budget: int = DEFAULT_CELL_BUDGET,
    size_cap: int | None = None,
    via: str = "initial",
) -> SoftSpace:
    """Soft product space.

    ``via`` selects the construction: ``initial`` (initial topology of the
    projections), ``subbase`` (generated by all slabs) or ``base`` (union
    closure of the n-slabs).  All three give the same open sets.
    """
    P = _context_of(spaces, cell_budget)
    if via == "initial":
        targets = [(S, projection_mapping(P, i)) for i, S in enumerate(spaces)]
        topology = initial_topology(P, targets, size_cap)
    elif via == "subbase":
        topology = generate_from_subbase(P, slab_subbase(P, spaces), size_cap)
    elif via == "base":
        topology = generate_from_base(P, nslab_base(P, spaces), size_cap)
    else:
        raise ValueError(f"unknown construction {via!r}")
    return SoftSpace(P, topology)


def closure_of_product_check(
    spaces: Sequence[SoftSpace], sets: Sequence[SoftSet], product_space: SoftSpace | None = None
) -> bool:
    """Closure of a product versus the product of the factor closures."""
    if product_space is None:
        product_space = product_topology(spaces)
    P = product_space.ctx
    lhs = closure(product_space, product_soft_set(sets, P))
    rhs = product_soft_set([closure(S, F) for S, F in zip(spaces, sets)], P)
    return lhs == rhs


@dataclass(frozen=True)
class ProductContinuity:
    direct: bool
    via_projections: tuple[bool, ...]

    @property
    def agree(self) -> bool:
        return self.direct == all(self.via_projections)

    def __bool__(self) -> bool:
        return self.agree and self.direct


def continuity_into_product(
    m: SoftMapping, Y: SoftSpace, product_space: SoftSpace, spaces: Sequence[SoftSpace]
) -> ProductContinuity:
    """Continuity of ``m: Y -> product`` checked directly and through every projection."""
    P = product_space.ctx
    if not isinstance(P, ProductContext):
        raise ContextMismatch("target is not a product space")
    direct = is_continuous(m, Y, product_space).verdict
    comps = tuple(
        is_continuous(compose(projection_mapping(P, i), m), Y, S).verdict for i, S in enumerate(spaces)
    )
    return ProductContinuity(direct, comps)
