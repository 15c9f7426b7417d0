"""Soft continuity, restriction/corestriction and initial soft topologies."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from softtop.errors import ContextMismatch, EmptySubset
from softtop.mappings import SoftMapping, image, image_of_point, inverse_image
from softtop.sets import Context, SoftPoint, SoftSet, all_points, sub_context
from softtop.topology import (
    Derivation,
    SoftSpace,
    SoftTopology,
    derive,
    generate_from_subbase,
    open_nbhds,
)

METHODS = ("pointwise", "open_preimage", "closed_preimage")


@dataclass(frozen=True)
class ContinuityReport:
    """Verdict of one continuity criterion.

    ``witness`` is a soft point (pointwise) or an open/closed soft set of the
    codomain whose inverse image fails, and is present iff ``verdict`` is false.
    """

    verdict: bool
    method: str
    witness: SoftPoint | SoftSet | None = None

    def __bool__(self) -> bool:
        return self.verdict


def _aligned(m: SoftMapping, X: SoftSpace, Y: SoftSpace) -> None:
    if m.src != X.ctx:
        raise ContextMismatch(f"mapping source {m.src!r} is not the domain {X.ctx!r}")
    if m.dst != Y.ctx:
        raise ContextMismatch(f"mapping target {m.dst!r} is not the codomain {Y.ctx!r}")


def is_continuous_at(m: SoftMapping, X: SoftSpace, Y: SoftSpace, p: SoftPoint) -> bool:
    _aligned(m, X, Y)
    return _bad_nbhd(m, X, Y, p) is None


def _bad_nbhd(m: SoftMapping, X: SoftSpace, Y: SoftSpace, p: SoftPoint) -> SoftSet | None:
    """First open neighbourhood of ``m(p)`` that no open neighbourhood of ``p`` maps into."""
    q = image_of_point(m, p)
    candidates = [image(m, F) for F in open_nbhds(X, p)]
    for G in open_nbhds(Y, q):
        if not any(FI.mask & ~G.mask == 0 for FI in candidates):
            return G
    return None


def is_continuous(m: SoftMapping, X: SoftSpace, Y: SoftSpace, method: str = "open_preimage") -> ContinuityReport:
    _aligned(m, X, Y)
    if method == "pointwise":
        for p in all_points(X.ctx):
            if _bad_nbhd(m, X, Y, p) is not None:
                return ContinuityReport(False, method, p)
        return ContinuityReport(True, method)
    if method == "open_preimage":
        for G in Y.opens:
            if inverse_image(m, G) not in X.topology:
                return ContinuityReport(False, method, G)
        return ContinuityReport(True, method)
    if method == "closed_preimage":
        for C in Y.topology.closed:
            if not X.topology.is_closed(inverse_image(m, C)):
                return ContinuityReport(False, method, C)
        return ContinuityReport(True, method)
    raise ValueError(f"unknown continuity method {method!r}; expected one of {METHODS}")


def continuity_reports(m: SoftMapping, X: SoftSpace, Y: SoftSpace) -> dict[str, ContinuityReport]:
    return {method: is_continuous(m, X, Y, method) for method in METHODS}


def restrict(m: SoftMapping, X: SoftSpace, Y_sub: Iterable[str]) -> SoftMapping:
    """Restriction of ``m`` to the elements ``Y_sub`` of its source space; ``psi`` is kept.

    The result's source is the context of ``subspace(X, Y_sub)``.
    """
    if m.src != X.ctx:
        raise ContextMismatch(f"mapping source {m.src!r} is not {X.ctx!r}")
    Y_sub = list(Y_sub)
    if not Y_sub:
        raise EmptySubset("restriction needs a nonempty subset")
    sub = sub_context(m.src, Y_sub)
    return SoftMapping(sub, m.dst, tuple(m.phi[m.src.elem_index(u)] for u in sub.universe), m.psi)


def corestrict(m: SoftMapping, target: Context) -> SoftMapping:
    """Same mapping, with codomain replaced by a sub-context containing its image."""
    try:
        phi = tuple(target.elem_index(m.dst.universe[x]) for x in m.phi)
        psi = tuple(target.param_index(m.dst.params[x]) for x in m.psi)
    except Exception as exc:
        raise ContextMismatch(f"{target!r} does not contain the image of the mapping") from exc
    return SoftMapping(m.src, target, phi, psi)


def initial_subbase(ctx: Context, targets: Sequence[tuple[SoftSpace, SoftMapping]]) -> list[SoftSet]:
    sub: dict[int, SoftSet] = {}
    for Y, m in targets:
        if m.src != ctx:
            raise ContextMismatch(f"mapping source {m.src!r} is not {ctx!r}")
        if m.dst != Y.ctx:
            raise ContextMismatch(f"mapping target {m.dst!r} is not {Y.ctx!r}")
        for G in Y.opens:
            F = inverse_image(m, G)
            sub.setdefault(F.mask, F)
    return [sub[k] for k in sorted(sub)]


def initial_topology(
    ctx: Context, targets: Sequence[tuple[SoftSpace, SoftMapping]], size_cap: int | None = None
) -> SoftTopology:
    """Coarsest soft topology on ``ctx`` making every target mapping continuous."""
    return generate_from_subbase(ctx, initial_subbase(ctx, targets), size_cap)


def derivations(topology: SoftTopology, subbase: Sequence[SoftSet]) -> dict[int, Derivation | None]:
    """Derivation certificate (or None) for every open set, keyed by canonical key."""
    return {F.mask: derive(F, subbase) for F in topology.opens}
