"""Soft mappings induced by a universe map and a parameter map."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from softtop.errors import ChainMismatch, ContextMismatch, NotBijective
from softtop.sets import Context, SoftPoint, SoftSet, iter_bits


@dataclass(frozen=True)
class SoftMapping:
    """``phi`` sends universe indices of ``src`` to those of ``dst``; ``psi`` does the same for parameters."""

    src: Context = field(repr=False)
    dst: Context = field(repr=False)
    phi: tuple[int, ...]
    psi: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "phi", tuple(int(x) for x in self.phi))
        object.__setattr__(self, "psi", tuple(int(x) for x in self.psi))
        if len(self.phi) != self.src.n_elems:
            raise ValueError(f"phi must be total: {len(self.phi)} images for {self.src.n_elems} elements")
        if len(self.psi) != self.src.n_params:
            raise ValueError(f"psi must be total: {len(self.psi)} images for {self.src.n_params} parameters")
        if any(not 0 <= x < self.dst.n_elems for x in self.phi):
            raise ValueError("phi lands outside the target universe")
        if any(not 0 <= x < self.dst.n_params for x in self.psi):
            raise ValueError("psi lands outside the target parameters")

    @classmethod
    def from_labels(
        cls, src: Context, dst: Context, phi: Mapping[str, str], psi: Mapping[str, str]
    ) -> SoftMapping:
        missing = [u for u in src.universe if u not in phi] + [e for e in src.params if e not in psi]
        if missing:
            raise ValueError(f"mapping is not total, missing {missing}")
        return cls(
            src,
            dst,
            tuple(dst.elem_index(phi[u]) for u in src.universe),
            tuple(dst.param_index(psi[e]) for e in src.params),
        )

    @classmethod
    def identity(cls, ctx: Context) -> SoftMapping:
        return cls(ctx, ctx, tuple(range(ctx.n_elems)), tuple(range(ctx.n_params)))

    @property
    def injective(self) -> bool:
        return len(set(self.phi)) == len(self.phi) and len(set(self.psi)) == len(self.psi)

    @property
    def surjective(self) -> bool:
        return len(set(self.phi)) == self.dst.n_elems and len(set(self.psi)) == self.dst.n_params

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    @cached_property
    def cell_map(self) -> tuple[int, ...]:
        """Destination cell of every source cell (the induced map on soft points)."""
        n, m = self.src.n_elems, self.dst.n_elems
        return tuple(self.psi[c // n] * m + self.phi[c % n] for c in range(self.src.n_cells))

    def phi_labels(self) -> dict[str, str]:
        return {u: self.dst.universe[x] for u, x in zip(self.src.universe, self.phi)}

    def psi_labels(self) -> dict[str, str]:
        return {e: self.dst.params[x] for e, x in zip(self.src.params, self.psi)}

    def __call__(self, F: SoftSet) -> SoftSet:
        return image(self, F)


def _check_src(m: SoftMapping, ctx: Context) -> None:
    if ctx is not m.src and ctx != m.src:
        raise ContextMismatch(f"expected a soft set over {m.src!r}, got {ctx!r}")


def _check_dst(m: SoftMapping, ctx: Context) -> None:
    if ctx is not m.dst and ctx != m.dst:
        raise ContextMismatch(f"expected a soft set over {m.dst!r}, got {ctx!r}")


def image(m: SoftMapping, F: SoftSet) -> SoftSet:
    """Row ``e'`` is the union of ``phi(F(e))`` over the fibre ``psi^-1(e')``."""
    _check_src(m, F.ctx)
    cmap = m.cell_map
    mask = 0
    for c in iter_bits(F.mask):
        mask |= 1 << cmap[c]
    return SoftSet(m.dst, mask)


def image_of_point(m: SoftMapping, p: SoftPoint) -> SoftPoint:
    _check_src(m, p.ctx)
    return SoftPoint(m.psi[p.param], m.phi[p.elem], m.dst)


def inverse_image(m: SoftMapping, G: SoftSet) -> SoftSet:
    """Row ``e`` is ``phi^-1(G(psi(e)))``."""
    _check_dst(m, G.ctx)
    g = G.mask
    mask = 0
    for c, d in enumerate(m.cell_map):
        if (g >> d) & 1:
            mask |= 1 << c
    return SoftSet(m.src, mask)


def compose(g: SoftMapping, f: SoftMapping) -> SoftMapping:
    """``g`` after ``f``."""
    if f.dst is not g.src and f.dst != g.src:
        raise ChainMismatch(f"cannot compose: {f.dst!r} is not {g.src!r}")
    return SoftMapping(
        f.src,
        g.dst,
        tuple(g.phi[x] for x in f.phi),
        tuple(g.psi[x] for x in f.psi),
    )


def inverse(m: SoftMapping) -> SoftMapping:
    if not m.bijective:
        raise NotBijective("only bijective soft mappings have a soft inverse")
    phi = [0] * m.dst.n_elems
    psi = [0] * m.dst.n_params
    for u, x in enumerate(m.phi):
        phi[x] = u
    for e, x in enumerate(m.psi):
        psi[x] = e
    return SoftMapping(m.dst, m.src, tuple(phi), tuple(psi))


def image_elems(m: SoftMapping) -> list[str]:
    """Labels of ``phi(U)`` in target order."""
    hit = set(m.phi)
    return [u for i, u in enumerate(m.dst.universe) if i in hit]


def image_params(m: SoftMapping) -> list[str]:
    hit = set(m.psi)
    return [e for i, e in enumerate(m.dst.params) if i in hit]
