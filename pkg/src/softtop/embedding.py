"""Homeomorphisms, embeddings, diagonal mappings and the embedding lemma verifier.

The codomain of an embedding's corestriction is the image subspace on
``phi(X)`` and, by default, on the parameter image ``psi(E)`` as well.  A soft
mapping acts on soft points as the product map ``psi x phi``, so the image of
the whole space is the rectangle ``psi(E) x phi(X)``; keeping the parameters
outside ``psi(E)`` leaves cells in the codomain that no soft image can reach,
and the corestriction is then never surjective.  ``restrict_params=False``
selects the universe-only reading for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from softtop.continuity import corestrict, is_continuous
from softtop.errors import ContextMismatch, FactorArityMismatch, LemmaViolation, SizeCapExceeded
from softtop.mappings import (
    SoftMapping,
    image,
    image_elems,
    image_of_point,
    image_params,
    inverse,
    inverse_image,
)
from softtop.product_topology import SlabSpec, product_topology, slab
from softtop.products import DEFAULT_CELL_BUDGET, ProductContext, product_context, product_soft_set
from softtop.sets import Context, SoftPoint, SoftSet, all_points, restrict_to, sub_context
from softtop.topology import SoftSpace, closure, generate_from_subbase, subspace

Target = tuple[SoftSpace, SoftMapping]


def _aligned(m: SoftMapping, X: SoftSpace, Y: SoftSpace) -> None:
    if m.src != X.ctx or m.dst != Y.ctx:
        raise ContextMismatch("mapping does not run between the given spaces")


def closed_mapping_witness(m: SoftMapping, X: SoftSpace, Y: SoftSpace) -> SoftSet | None:
    """First closed set of ``X`` (canonical order) whose image is not closed in ``Y``."""
    _aligned(m, X, Y)
    for C in X.topology.closed:
        if not Y.topology.is_closed(image(m, C)):
            return C
    return None


def is_closed_mapping(m: SoftMapping, X: SoftSpace, Y: SoftSpace) -> bool:
    return closed_mapping_witness(m, X, Y) is None


def is_homeomorphism(m: SoftMapping, X: SoftSpace, Y: SoftSpace) -> bool:
    _aligned(m, X, Y)
    if not m.bijective:
        return False
    return bool(is_continuous(m, X, Y)) and bool(is_continuous(inverse(m), Y, X))


@dataclass(frozen=True)
class EmbeddingCertificate:
    continuous: bool
    injective: bool
    closed_into_image: bool
    route: str  # definitional | via_closed_mapping
    overall: bool
    witness: SoftSet | None = None  # closed set whose image is not closed in the image subspace

    def __bool__(self) -> bool:
        return self.overall


def image_context(m: SoftMapping, restrict_params: bool = True) -> Context:
    return sub_context(m.dst, image_elems(m), image_params(m) if restrict_params else None)


def image_subspace(m: SoftMapping, Y: SoftSpace, restrict_params: bool = True) -> SoftSpace:
    if m.dst != Y.ctx:
        raise ContextMismatch("mapping target is not the given space")
    return subspace(Y, image_elems(m), image_params(m) if restrict_params else None)


def _certify(m: SoftMapping, X: SoftSpace, image_space: SoftSpace, continuous: bool) -> EmbeddingCertificate:
    core = corestrict(m, image_space.ctx)
    witness = closed_mapping_witness(core, X, image_space)
    closed = witness is None
    if core.bijective:
        overall = is_homeomorphism(core, X, image_space)
        route = "definitional"
    else:
        overall = continuous and m.injective and closed
        route = "via_closed_mapping"
    return EmbeddingCertificate(continuous, m.injective, closed, route, overall, witness)


def is_embedding(m: SoftMapping, X: SoftSpace, Y: SoftSpace, restrict_params: bool = True) -> EmbeddingCertificate:
    """Certificate that the corestriction of ``m`` onto its image subspace is a homeomorphism.

    When the corestriction is bijective the homeomorphism is checked directly;
    otherwise the certificate falls back to continuous, injective and closed
    onto the image, which is sufficient but reported separately.
    """
    _aligned(m, X, Y)
    continuous = bool(is_continuous(m, X, Y))
    return _certify(m, X, image_subspace(m, Y, restrict_params), continuous)


def diagonal_mapping(
    X_ctx: Context, maps: Sequence[SoftMapping], cell_budget: int = DEFAULT_CELL_BUDGET
) -> SoftMapping:
    """``x -> (phi_i(x))_i`` on the universe, ``e -> (psi_i(e))_i`` on parameters."""
    if not maps:
        raise FactorArityMismatch("a diagonal mapping needs at least one mapping")
    for m in maps:
        if m.src != X_ctx:
            raise ContextMismatch(f"mapping source {m.src!r} is not {X_ctx!r}")
    P = product_context([m.dst for m in maps], cell_budget)
    phi = tuple(P.elem_of([m.phi[u] for m in maps]) for u in range(X_ctx.n_elems))
    psi = tuple(P.param_of([m.psi[e] for m in maps]) for e in range(X_ctx.n_params))
    return SoftMapping(X_ctx, P, phi, psi)


@dataclass(frozen=True)
class SeparationReport:
    separates_points: bool
    points_witness: tuple[SoftPoint, SoftPoint] | None
    separates_points_from_closed: bool
    closed_witness: tuple[SoftSet, SoftPoint] | None

    def __bool__(self) -> bool:
        return self.separates_points and self.separates_points_from_closed


def separation_report(X: SoftSpace, targets: Sequence[Target]) -> SeparationReport:
    for Y, m in targets:
        _aligned(m, X, Y)
    pts = all_points(X.ctx)
    images = [[image_of_point(m, p) for _, m in targets] for p in pts]
    points_witness = None
    for i, p in enumerate(pts):
        for j in range(i + 1, len(pts)):
            if images[i] == images[j]:
                points_witness = (p, pts[j])
                break
        if points_witness:
            break

    closed_witness = None
    for C in X.topology.closed:
        cls = [closure(Y, image(m, C)) for Y, m in targets]
        for i, p in enumerate(pts):
            if C.mask >> p.cell & 1:
                continue
            if not any(not (K.mask >> q.cell & 1) for K, q in zip(cls, images[i])):
                closed_witness = (C, p)
                break
        if closed_witness:
            break
    return SeparationReport(points_witness is None, points_witness, closed_witness is None, closed_witness)


@dataclass(frozen=True)
class LemmaReport:
    maps_continuous: tuple[bool, ...]
    separation: SeparationReport
    diagonal: EmbeddingCertificate
    diagonal_image_inclusion: bool
    inclusion_checked: int
    product_route: str  # base | materialized
    inclusion_witness: SoftSet | None = field(default=None)

    @property
    def hypotheses(self) -> bool:
        return all(self.maps_continuous) and bool(self.separation)

    @property
    def holds(self) -> bool:
        """The lemma as an implication, plus the diagonal image inclusion."""
        return (not self.hypotheses or self.diagonal.overall) and self.diagonal_image_inclusion


def _inclusion_sample(X: SoftSpace) -> list[SoftSet]:
    ctx = X.ctx
    if ctx.n_cells <= 8:
        return [SoftSet(ctx, k) for k in range(ctx.full_mask + 1)]
    seen = {F.mask: F for F in (*X.opens, *X.topology.closed, *(p.as_set() for p in all_points(ctx)))}
    return [seen[k] for k in sorted(seen)]


def _image_space_from_slabs(delta: SoftMapping, spaces: Sequence[SoftSpace], restrict_params: bool) -> SoftSpace:
    """Image subspace of the product, generated from the restricted slab subbase.

    Restriction commutes with finite unions and intersections, so this equals
    the subspace of the full product topology without materialising it.
    """
    P = delta.dst
    sub = image_context(delta, restrict_params)
    restricted = []
    for i, S in enumerate(spaces):
        for G in S.opens:
            restricted.append(restrict_to(slab(P, None, SlabSpec.single(i, G)), sub))
    return SoftSpace(sub, generate_from_subbase(sub, restricted))


def verify_embedding_lemma(
    X: SoftSpace,
    targets: Sequence[Target],
    *,
    cell_budget: int = DEFAULT_CELL_BUDGET,
    materialize: bool | None = None,
    restrict_params: bool = True,
    raise_on_violation: bool = True,
) -> LemmaReport:
    """Check the hypotheses, certify the diagonal mapping and report the implication.

    ``materialize=None`` builds the full product topology only when it is
    small; otherwise the image subspace is generated from slabs.  A diagonal
    that fails to embed while every hypothesis holds raises LemmaViolation.
    """
    spaces = [Y for Y, _ in targets]
    maps = [m for _, m in targets]
    maps_continuous = tuple(bool(is_continuous(m, X, Y)) for Y, m in targets)
    separation = separation_report(X, targets)
    delta = diagonal_mapping(X.ctx, maps, cell_budget)
    P: ProductContext = delta.dst  # type: ignore[assignment]

    if materialize is None:
        n_base = 1
        for S in spaces:
            n_base *= len(S.opens)
        materialize = P.n_cells <= 16 and n_base <= 256

    certificate = None
    route = "base"
    if materialize:
        try:
            full = product_topology(spaces, cell_budget)
        except SizeCapExceeded:
            full = None
        if full is not None:
            certificate = is_embedding(delta, X, full, restrict_params)
            route = "materialized"
    if certificate is None:
        # slab preimages under the diagonal are the preimages under each map
        continuous = all(
            inverse_image(delta, slab(P, None, SlabSpec.single(i, G))) in X.topology
            for i, S in enumerate(spaces)
            for G in S.opens
        )
        certificate = _certify(delta, X, _image_space_from_slabs(delta, spaces, restrict_params), continuous)

    sample = _inclusion_sample(X)
    inclusion_witness = None
    for F in sample:
        rhs = product_soft_set([image(m, F) for m in maps], P)
        if image(delta, F).mask & ~rhs.mask:
            inclusion_witness = F
            break

    report = LemmaReport(
        maps_continuous,
        separation,
        certificate,
        inclusion_witness is None,
        len(sample),
        route,
        inclusion_witness,
    )
    if raise_on_violation and report.hypotheses and not certificate.overall:
        raise LemmaViolation(report)
    return report
