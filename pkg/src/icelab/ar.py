"""Covers, the Auslander-Reiten translate, Ext^1 and almost split sequences.

τ is computed from a minimal projective presentation and the Nakayama
functor (ν P(i) = I(i)); τ⁻¹ dually from a minimal injective copresentation.
Ext^1(Z, X) is Hom(ΩZ, X) modulo maps that extend to the projective cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import field
from .errors import CapExceeded, ModuleError, PreconditionError, VerificationError
from .module import (
    DEFAULT_CAP,
    HomBasis,
    Module,
    Morphism,
    cokernel,
    direct_sum,
    direct_sum_with_maps,
    hom_basis,
    image_spaces,
    injective,
    is_indecomposable,
    kernel,
    projective,
    quotient,
)


@dataclass(frozen=True)
class Cover:
    """A minimal projective cover ``P → M`` or injective envelope ``M → I``.

    ``vertices`` lists the indecomposable summands P(i) (resp. I(i)) of the
    middle object in block order.
    """

    map: Morphism
    vertices: tuple[int, ...]


def _top_generators(m: Module) -> list[tuple[int, np.ndarray]]:
    p = m.alg.p
    gens = []
    for v in range(m.alg.n):
        incoming = [m.mats[k] for k, (_, t) in enumerate(m.alg.arrow_ends) if t == v and m.mats[k].size]
        rad = field.column_basis(np.hstack(incoming), p) if incoming else field.zeros(m.dims[v], 0)
        if rad.shape[1] == 0:
            comp = field.identity(m.dims[v])
        else:
            comp = field.complement_basis(rad, m.dims[v], p)
        gens += [(v, comp[:, k]) for k in range(comp.shape[1])]
    return gens


def _socle_functionals(m: Module) -> list[tuple[int, np.ndarray]]:
    p = m.alg.p
    funcs = []
    for v in range(m.alg.n):
        d = m.dims[v]
        if d == 0:
            continue
        outgoing = [m.mats[k] for k, (s, _) in enumerate(m.alg.arrow_ends) if s == v and m.mats[k].size]
        soc = field.nullspace(np.vstack(outgoing), p).T if outgoing else field.identity(d)
        if soc.shape[1] == 0:
            continue
        full = np.hstack([soc, field.complement_basis(soc, d, p)])
        inv = field.inverse(full, p)
        funcs += [(v, inv[k]) for k in range(soc.shape[1])]
    return funcs


def projective_cover(m: Module) -> Cover:
    alg, p = m.alg, m.alg.p
    gens = _top_generators(m)
    pa = alg.paths
    blocks = []
    for v, vec in gens:
        maps = []
        for w in range(alg.n):
            cols = [(m.path_matrix(path[1], v) @ vec) % p for path in pa.basis(v, w)]
            maps.append(np.array(cols, dtype=np.int64).T.reshape(m.dims[w], len(cols)))
        blocks.append(maps)
    p0 = direct_sum([projective(alg, v) for v, _ in gens], alg)
    maps = [
        np.hstack([b[w] for b in blocks]) if blocks else field.zeros(m.dims[w], 0) for w in range(alg.n)
    ]
    return Cover(Morphism(p0, m, maps, check=True), tuple(v for v, _ in gens))


def injective_envelope(m: Module) -> Cover:
    alg, p = m.alg, m.alg.p
    funcs = _socle_functionals(m)
    pa = alg.paths
    blocks = []
    for v, lam in funcs:
        maps = []
        for w in range(alg.n):
            rows = [(lam @ m.path_matrix(path[1], w)) % p for path in pa.basis(w, v)]
            maps.append(np.array(rows, dtype=np.int64).reshape(len(rows), m.dims[w]))
        blocks.append(maps)
    i0 = direct_sum([injective(alg, v) for v, _ in funcs], alg)
    maps = [
        np.vstack([b[w] for b in blocks]) if blocks else field.zeros(0, m.dims[w]) for w in range(alg.n)
    ]
    return Cover(Morphism(m, i0, maps, check=True), tuple(v for v, _ in funcs))


def minimal_cover(m: Module, side: str = "projective") -> Morphism:
    """Minimal projective cover (epi) or injective envelope (mono) of ``m``."""
    if m.is_zero():
        raise PreconditionError("minimal_cover of the zero module")
    if side == "projective":
        cover = projective_cover(m).map
        if not cover.is_surjective():
            raise VerificationError("projective cover is not an epimorphism")
    elif side == "injective":
        cover = injective_envelope(m).map
        if not cover.is_injective():
            raise VerificationError("injective envelope is not a monomorphism")
    else:
        raise ValueError(f"unknown side {side!r}")
    return cover


# ---------------------------------------------------------------- Nakayama functor


def _nu_block(alg, i: int, j: int, w: np.ndarray) -> list[np.ndarray]:
    """ν of the map P(i) → P(j) given by ``w ∈ e_jΛe_i``, as a map I(i) → I(j)."""
    pa = alg.paths
    out = []
    for k in range(alg.n):
        by, bx = pa.basis(k, j), pa.basis(k, i)
        mat = field.zeros(len(by), len(bx))
        for r, y in enumerate(by):
            ey = field.zeros(1, len(by))[0]
            ey[r] = 1
            mat[r] = pa.compose(k, j, i, ey, w)
        out.append(mat)
    return out


def _proj_block(alg, i: int, j: int, w: np.ndarray) -> list[np.ndarray]:
    """The map P(i) → P(j), x ↦ w*x, for ``w ∈ e_jΛe_i``."""
    pa = alg.paths
    out = []
    for k in range(alg.n):
        bx, bt = pa.basis(i, k), pa.basis(j, k)
        mat = field.zeros(len(bt), len(bx))
        for c, _ in enumerate(bx):
            ex = field.zeros(1, len(bx))[0]
            ex[c] = 1
            mat[:, c] = pa.compose(j, i, k, w, ex)
        out.append(mat)
    return out


def _block(f: Morphism, rows: Sequence[Module], cols: Sequence[Module], b: int, a: int) -> list[np.ndarray]:
    """Component ``cols[a] → rows[b]`` of a map between block-diagonal sums."""
    out = []
    for v in range(f.source.alg.n):
        r0 = sum(m.dims[v] for m in rows[:b])
        c0 = sum(m.dims[v] for m in cols[:a])
        out.append(f.maps[v][r0 : r0 + rows[b].dims[v], c0 : c0 + cols[a].dims[v]])
    return out


def _assemble(alg, blocks: dict[tuple[int, int], list[np.ndarray]], rows: Sequence[Module], cols: Sequence[Module]):
    maps = []
    for v in range(alg.n):
        mat = field.zeros(sum(m.dims[v] for m in rows), sum(m.dims[v] for m in cols))
        for (b, a), blk in blocks.items():
            r0 = sum(m.dims[v] for m in rows[:b])
            c0 = sum(m.dims[v] for m in cols[:a])
            mat[r0 : r0 + rows[b].dims[v], c0 : c0 + cols[a].dims[v]] = blk[v]
        maps.append(mat)
    return maps


def minimal_presentation(m: Module) -> tuple[Cover, Cover, Morphism]:
    """``P1 → P0 → M → 0``: covers of M and of ΩM and the composite P1 → P0."""
    c0 = projective_cover(m)
    omega, inc = kernel(c0.map)
    if omega.is_zero():
        p1 = Module.zero(m.alg)
        return c0, Cover(Morphism.zero(p1, omega), ()), Morphism.zero(p1, c0.map.source)
    c1 = projective_cover(omega)
    return c0, c1, c1.map.then(inc)


def tau(m: Module, direction: str = "forward", check_indecomposable: bool = True) -> Module:
    """Auslander-Reiten translate (``forward``) or its inverse (``inverse``)."""
    if m.is_zero():
        return m
    if check_indecomposable and not is_indecomposable(m):
        raise PreconditionError("tau expects an indecomposable module")
    if direction == "forward":
        return _tau_forward(m)
    if direction == "inverse":
        return _tau_inverse(m)
    raise ValueError(f"unknown direction {direction!r}")


def _tau_forward(m: Module) -> Module:
    alg = m.alg
    c0, c1, p1 = minimal_presentation(m)
    if not c1.vertices:
        return Module.zero(alg)
    src = [projective(alg, v) for v in c1.vertices]
    tgt = [projective(alg, v) for v in c0.vertices]
    blocks = {}
    for a, i in enumerate(c1.vertices):
        for b, j in enumerate(c0.vertices):
            blk = _block(p1, tgt, src, b, a)
            w = blk[i][:, 0]  # image of the trivial path e_i
            if w.any():
                blocks[(b, a)] = _nu_block(alg, i, j, w)
    isrc = [injective(alg, v) for v in c1.vertices]
    itgt = [injective(alg, v) for v in c0.vertices]
    nu_p1 = Morphism(direct_sum(isrc, alg), direct_sum(itgt, alg), _assemble(alg, blocks, itgt, isrc))
    return kernel(nu_p1)[0]


def _solve_nu_inverse(alg, i: int, j: int, blk: list[np.ndarray]) -> np.ndarray:
    """The unique ``w ∈ e_jΛe_i`` with ν(w·) equal to the given map I(i) → I(j)."""
    pa = alg.paths
    d = pa.dim(j, i)
    target = np.concatenate([b.reshape(-1) for b in blk])
    cols = []
    for r in range(d):
        e = field.zeros(1, d)[0]
        e[r] = 1
        cols.append(np.concatenate([b.reshape(-1) for b in _nu_block(alg, i, j, e)]))
    if not cols:
        if target.any():
            raise VerificationError("map between injectives not in the image of ν")
        return field.zeros(1, 0)[0]
    w = field.solve(np.array(cols, dtype=np.int64).T, target, alg.p)
    if w is None:
        raise VerificationError("map between injectives not in the image of ν")
    return w


def _tau_inverse(m: Module) -> Module:
    alg = m.alg
    e0 = injective_envelope(m)
    co, proj = cokernel(e0.map)
    if co.is_zero():
        return Module.zero(alg)
    e1 = injective_envelope(co)
    g1 = proj.then(e1.map)
    src = [injective(alg, v) for v in e0.vertices]
    tgt = [injective(alg, v) for v in e1.vertices]
    blocks = {}
    for a, i in enumerate(e0.vertices):
        for b, j in enumerate(e1.vertices):
            w = _solve_nu_inverse(alg, i, j, _block(g1, tgt, src, b, a))
            if w.any():
                blocks[(b, a)] = _proj_block(alg, i, j, w)
    psrc = [projective(alg, v) for v in e0.vertices]
    ptgt = [projective(alg, v) for v in e1.vertices]
    f = Morphism(direct_sum(psrc, alg), direct_sum(ptgt, alg), _assemble(alg, blocks, ptgt, psrc))
    return cokernel(f)[0]


# ---------------------------------------------------------------- Ext^1


@dataclass(frozen=True)
class Ext1Space:
    """Ext^1(Z, X) for extensions ``0 → X → Y → Z → 0``.

    Classes are stored as cocycles ``ΩZ → X``; ``syzygy`` is the inclusion
    ΩZ → P0 and ``cover`` the projective cover P0 → Z.
    """

    source: Module
    target: Module
    cover: Morphism
    syzygy: Morphism
    cocycles: HomBasis
    relations: np.ndarray  # RREF rows (in cocycle coordinates) of cocycles that extend to P0
    pivots: tuple[int, ...]
    representatives: tuple[Morphism, ...]

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def class_of(self, e: Morphism) -> np.ndarray:
        """Coordinates of a cocycle's class in the representative basis."""
        p = self.source.alg.p
        c = self.cocycles.coordinates(e)
        if c is None:
            raise ModuleError("not a morphism ΩZ → X")
        c = c % p
        for row, pc in zip(self.relations, self.pivots):
            if c[pc]:
                c = (c - c[pc] * row) % p
        free = [k for k in range(self.cocycles.dim) if k not in self.pivots]
        return np.array([c[k] for k in free], dtype=np.int64)

    def element(self, coeffs) -> Morphism:
        p = self.source.alg.p
        out = Morphism.zero(self.syzygy.source, self.target)
        for c, r in zip(coeffs, self.representatives):
            if c % p:
                out = out + r.scale(c)
        return Morphism(out.source, out.target, [a % p for a in out.maps], check=False)


def ext1(z: Module, x: Module) -> Ext1Space:
    alg, p = z.alg, z.alg.p
    if z.is_zero():
        zero = Module.zero(alg)
        cover = Morphism.zero(zero, z)
        syz = Morphism.zero(zero, zero)
    else:
        cover = projective_cover(z).map
        omega, syz_inc = kernel(cover)
        syz = syz_inc
    omega = syz.source
    cocycles = hom_basis(omega, x)
    restricted = []
    for g in hom_basis(cover.source, x).maps:
        c = cocycles.coordinates(syz.then(g))
        if c is None:
            raise VerificationError("restriction of a map P0 → X is not a cocycle")
        restricted.append(c % p)
    if restricted:
        r, pivots = field.rref(np.array(restricted, dtype=np.int64), p)
        r = r[: len(pivots)]
    else:
        r, pivots = field.zeros(0, cocycles.dim), []
    free = [k for k in range(cocycles.dim) if k not in pivots]
    reps = tuple(cocycles.maps[k] for k in free)
    return Ext1Space(z, x, cover, syz, cocycles, r, tuple(pivots), reps)


@dataclass(frozen=True)
class Extension:
    middle: Module
    inclusion: Morphism  # X → E
    projection: Morphism  # E → Z


def extension(space: Ext1Space, coeffs) -> Extension:
    """The short exact sequence ``0 → X → E → Z → 0`` of a class (pushout of ΩZ → P0)."""
    alg, p = space.source.alg, space.source.alg.p
    x, z = space.target, space.source
    e = space.element(coeffs)
    p0 = space.cover.source
    total, incs, projs = direct_sum_with_maps([x, p0], alg)
    omega = space.syzygy.source
    maps = [
        np.vstack([e.maps[v], (-space.syzygy.maps[v]) % p]) for v in range(alg.n)
    ]
    h = Morphism(omega, total, maps)
    spaces = image_spaces(h)
    mid, pi = quotient(total, spaces)
    inc = incs[0].then(pi)
    down = projs[1].then(space.cover)  # (0, p0): X ⊕ P0 → Z
    sections = [field.complement_basis(u, total.dims[v], p) for v, u in enumerate(spaces)]
    proj = Morphism(mid, z, [(down.maps[v] @ sections[v]) % p for v in range(alg.n)])
    if not inc.is_injective() or not proj.is_surjective() or mid.dim != x.dim + z.dim:
        raise VerificationError("pushout does not give a short exact sequence")
    if not inc.then(proj).is_zero():
        raise VerificationError("composite X → E → Z is nonzero")
    return Extension(mid, inc, proj)


def middle_term(space: Ext1Space, coeffs) -> Module:
    return extension(space, coeffs).middle


# ---------------------------------------------------------------- AR sequences


def _lift(target_map: Morphism, through: Morphism) -> Morphism:
    """``g`` with ``through ∘ g = target_map`` where g: dom(target_map) → dom(through)."""
    p = target_map.p
    hb = hom_basis(target_map.source, through.source)
    if hb.dim == 0:
        if target_map.is_zero():
            return Morphism.zero(target_map.source, through.source)
        raise VerificationError("no lift exists")
    cols = np.array([g.then(through).vector() for g in hb.maps], dtype=np.int64).T
    c = field.solve(cols, target_map.vector(), p)
    if c is None:
        raise VerificationError("no lift exists")
    return hb.combination(c)


def radical_endomorphisms(m: Module, cap: int = DEFAULT_CAP) -> list[Morphism]:
    """Basis of rad End(m) for indecomposable ``m`` (the non-invertible endomorphisms)."""
    hb = hom_basis(m, m)
    p = m.alg.p
    if hb.dim == 1:
        return []
    vecs = [f.vector() for f in hb.elements(cap) if not f.is_iso()]
    if not vecs:
        return []
    basis = field.row_basis(np.array(vecs, dtype=np.int64), p)
    return [Morphism.from_vector(m, m, row) for row in basis]


def pullback_action(space: Ext1Space, h: Morphism) -> np.ndarray:
    """Matrix of ξ ↦ ξ·h on Ext^1(Z, X) for an endomorphism ``h`` of Z."""
    p = space.source.alg.p
    cover, syz = space.cover, space.syzygy
    lifted = _lift(cover.then(h), cover)  # P0 → P0 over h
    omega = syz.source
    maps = []
    for v in range(omega.alg.n):
        rhs = (lifted.maps[v] @ syz.maps[v]) % p
        sol = field.solve(syz.maps[v], rhs, p)
        if sol is None:
            raise VerificationError("lift does not preserve the syzygy")
        maps.append(sol)
    omega_h = Morphism(omega, omega, maps)
    cols = [space.class_of(omega_h.then(r)) for r in space.representatives]
    if not cols:
        return field.zeros(0, 0)
    return np.array(cols, dtype=np.int64).T


def ar_sequence(m: Module, cap: int = DEFAULT_CAP) -> tuple[Module, Module, Module]:
    """``(M, E, τ⁻¹M)`` for the almost split sequence starting at ``M``."""
    if not is_indecomposable(m, cap):
        raise PreconditionError("ar_sequence expects an indecomposable module")
    z = tau(m, "inverse", check_indecomposable=False)
    if z.is_zero():
        raise PreconditionError("ar_sequence of an injective module")
    ext = almost_split_extension(m, z, cap)
    return m, ext.middle, z


def almost_split_extension(m: Module, z: Module, cap: int = DEFAULT_CAP) -> Extension:
    p = m.alg.p
    space = ext1(z, m)
    if space.dim == 0:
        raise VerificationError("Ext^1(τ⁻¹M, M) vanishes")
    rad = radical_endomorphisms(z, cap)
    if rad:
        stacked = np.vstack([pullback_action(space, h) for h in rad])
        socle = field.nullspace(stacked, p)
    else:
        socle = field.identity(space.dim)
    if socle.shape[0] == 0:
        raise VerificationError("no almost split class found")
    return extension(space, socle[0])


# ---------------------------------------------------------------- stable Hom


def dim_hom_mod_projectives(a: Module, b: Module) -> int:
    """dim of Hom(a, b) modulo maps factoring through a projective."""
    p = a.alg.p
    hb = hom_basis(a, b)
    if hb.dim == 0 or b.is_zero():
        return hb.dim
    cover = projective_cover(b).map
    vecs = [g.then(cover).vector() for g in hom_basis(a, cover.source).maps]
    return hb.dim - (field.rank(np.array(vecs), p) if vecs else 0)


def dim_hom_mod_injectives(a: Module, b: Module) -> int:
    """dim of Hom(a, b) modulo maps factoring through an injective."""
    p = a.alg.p
    hb = hom_basis(a, b)
    if hb.dim == 0 or a.is_zero():
        return hb.dim
    env = injective_envelope(a).map
    vecs = [env.then(g).vector() for g in hom_basis(env.target, b).maps]
    return hb.dim - (field.rank(np.array(vecs), p) if vecs else 0)


def is_projective_module(m: Module) -> bool:
    return m.is_zero() or kernel(projective_cover(m).map)[0].is_zero()


def is_injective_module(m: Module) -> bool:
    return m.is_zero() or cokernel(injective_envelope(m).map)[0].is_zero()


__all__ = [
    "CapExceeded",
    "Cover",
    "Ext1Space",
    "Extension",
    "ar_sequence",
    "dim_hom_mod_injectives",
    "dim_hom_mod_projectives",
    "ext1",
    "extension",
    "injective_envelope",
    "middle_term",
    "minimal_cover",
    "projective_cover",
    "tau",
]
