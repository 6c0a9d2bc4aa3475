"""Additive subcategories as sets of catalog indices.

A :data:`SubcatSet` is a frozenset of catalog indices standing for the
additive, summand-closed subcategory they generate.  Every predicate here is
decided from catalog data and exact linear algebra; the only approximations are
the multiplicity bounds on targets of maps, which callers pass explicitly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import field
from .catalog import Catalog, filt_member
from .errors import CapExceeded, PreconditionError
from .module import (
    DEFAULT_CAP,
    Module,
    Morphism,
    direct_sum,
    hom_basis,
    image_spaces,
    kernel,
    quotient,
    submodule,
    sum_spaces,
)

SubcatSet = frozenset


def subcat(indices: Iterable[int]) -> SubcatSet:
    return frozenset(indices)


@dataclass(frozen=True)
class Interval:
    lo: SubcatSet
    hi: SubcatSet

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise PreconditionError("interval minimum is not contained in its maximum")

    def contains(self, other: "Interval") -> bool:
        """``other ⊆ self`` as intervals: self.lo ⊆ other.lo ⊆ other.hi ⊆ self.hi."""
        return self.lo <= other.lo and other.hi <= self.hi


def _memo(cat: Catalog, key, compute):
    hit = cat.cache.get(key)
    if hit is None:
        hit = compute()
        cat.cache[key] = hit
    return hit


# ---------------------------------------------------------------- trace and reject


def _stack_to(cat: Catalog, x: int, s: int) -> list[np.ndarray]:
    """Hom basis maps x → s stacked vertically, per vertex."""

    def compute():
        src, tgt = cat.modules[x], cat.modules[s]
        hb = hom_basis(src, tgt)
        return [
            np.vstack([f.maps[v] for f in hb.maps]) if hb.maps else field.zeros(0, src.dims[v])
            for v in range(cat.alg.n)
        ]

    return _memo(cat, ("stack_to", x, s), compute)


def _stack_from(cat: Catalog, s: int, x: int) -> list[np.ndarray]:
    """Hom basis maps s → x placed side by side, per vertex."""

    def compute():
        src, tgt = cat.modules[s], cat.modules[x]
        hb = hom_basis(src, tgt)
        return [
            np.hstack([f.maps[v] for f in hb.maps]) if hb.maps else field.zeros(tgt.dims[v], 0)
            for v in range(cat.alg.n)
        ]

    return _memo(cat, ("stack_from", s, x), compute)


def _rejects_to_zero(cat: Catalog, members: SubcatSet, x: int) -> bool:
    p, mod = cat.p, cat.modules[x]
    for v in range(cat.alg.n):
        d = mod.dims[v]
        if d == 0:
            continue
        blocks = [b for s in members if (b := _stack_to(cat, x, s)[v]).shape[0]]
        if not blocks or field.rank(np.vstack(blocks), p) < d:
            return False
    return True


def _traces_everything(cat: Catalog, members: SubcatSet, x: int) -> bool:
    p, mod = cat.p, cat.modules[x]
    for v in range(cat.alg.n):
        d = mod.dims[v]
        if d == 0:
            continue
        blocks = [b for s in members if (b := _stack_from(cat, s, x)[v]).shape[1]]
        if not blocks or field.rank(np.hstack(blocks), p) < d:
            return False
    return True


def trace(cat: Catalog, members: Iterable[int], m: Module) -> tuple[Module, Morphism]:
    """Sum of the images of all maps from members into ``m``."""
    p = cat.p
    images = [image_spaces(f) for s in sorted(members) for f in hom_basis(cat.modules[s], m).maps]
    return submodule(m, sum_spaces(images, m.dims, p))


def reject(cat: Catalog, members: Iterable[int], m: Module) -> tuple[Module, Morphism]:
    """Intersection of the kernels of all maps from ``m`` into members."""
    p = cat.p
    maps = [f for s in sorted(members) for f in hom_basis(m, cat.modules[s]).maps]
    spaces = []
    for v in range(cat.alg.n):
        d = m.dims[v]
        rows = [f.maps[v] for f in maps if f.maps[v].shape[0]]
        if d == 0:
            spaces.append(field.zeros(0, 0))
        elif not rows:
            spaces.append(field.identity(d))
        else:
            spaces.append(field.nullspace(np.vstack(rows), p).T.copy())
    return submodule(m, spaces)


def trace_or_reject(cat: Catalog, members: Iterable[int], m: Module, side: str) -> tuple[Module, Morphism]:
    if side == "trace":
        return trace(cat, members, m)
    if side == "reject":
        return reject(cat, members, m)
    raise ValueError(f"unknown side {side!r}")


def in_subcat(cat: Catalog, m: Module, members: SubcatSet) -> bool:
    """Whether every indecomposable summand of ``m`` is a member."""
    return all(i in members for i in cat.decompose(m))


# ---------------------------------------------------------------- closures


def cogen(cat: Catalog, members: Iterable[int]) -> SubcatSet:
    s = frozenset(members)
    if not s:
        return s
    return _memo(cat, ("cogen", s), lambda: frozenset(x for x in range(len(cat)) if x in s or _rejects_to_zero(cat, s, x)))


def gen(cat: Catalog, members: Iterable[int]) -> SubcatSet:
    s = frozenset(members)
    if not s:
        return s
    return _memo(cat, ("gen", s), lambda: frozenset(x for x in range(len(cat)) if x in s or _traces_everything(cat, s, x)))


def _filt_step(cat: Catalog, s: SubcatSet, cap: int) -> SubcatSet:
    memo: dict = {}
    out = set(s)
    for x in range(len(cat)):
        if x in s:
            continue
        # a filtration needs a member as top and as bottom factor
        if not any(cat.dim_hom[x, t] for t in s) or not any(cat.dim_hom[t, x] for t in s):
            continue
        if filt_member(cat, cat.modules[x], s, cap, memo):
            out.add(x)
    return frozenset(out)


def ext_closure(cat: Catalog, members: Iterable[int], cap: int = DEFAULT_CAP) -> SubcatSet:
    s = frozenset(members)

    def compute():
        cur = s
        while True:
            nxt = _filt_step(cat, cur, cap)
            if nxt == cur:
                return cur
            cur = nxt

    return _memo(cat, ("ext", s), compute)


def closure(cat: Catalog, members: Iterable[int], kind: str, cap: int = DEFAULT_CAP) -> SubcatSet:
    """Least subcategory of the given kind containing ``members``."""
    s = frozenset(members)
    if kind == "cogen":
        return cogen(cat, s)
    if kind == "gen":
        return gen(cat, s)
    if kind == "ext":
        return ext_closure(cat, s, cap)
    if kind not in ("torf", "tors"):
        raise ValueError(f"unknown closure kind {kind!r}")
    step = cogen if kind == "torf" else gen

    def compute():
        cur = s
        while True:
            nxt = ext_closure(cat, step(cat, cur), cap)
            if nxt == cur:
                return cur
            cur = nxt

    return _memo(cat, (kind, s), compute)


def is_class(cat: Catalog, members: Iterable[int], kind: str, cap: int = DEFAULT_CAP) -> bool:
    s = frozenset(members)
    if kind == "torf":
        return cogen(cat, s) == s and ext_closure(cat, s, cap) == s
    if kind == "tors":
        return gen(cat, s) == s and ext_closure(cat, s, cap) == s
    if kind in ("ext", "ext_closed"):
        return ext_closure(cat, s, cap) == s
    raise ValueError(f"unknown class kind {kind!r}")


def perp(cat: Catalog, members: Iterable[int], side: str) -> SubcatSet:
    """right: {N : Hom(S, N) = 0}; left: {N : Hom(N, S) = 0}."""
    s = sorted(set(members))
    h = cat.dim_hom
    if side == "right":
        return frozenset(n for n in range(len(cat)) if not any(h[x, n] for x in s))
    if side == "left":
        return frozenset(n for n in range(len(cat)) if not any(h[n, x] for x in s))
    raise ValueError(f"unknown side {side!r}")


def torsion_decompose(cat: Catalog, torsion: Iterable[int], m: Module) -> tuple[Module, Module]:
    """The canonical sequence 0 → tM → M → fM → 0 for a torsion class."""
    t = frozenset(torsion)
    if not is_class(cat, t, "tors"):
        raise PreconditionError("not a torsion class")
    tm, inc = trace(cat, t, m)
    fm, _ = quotient(m, image_spaces(inc))
    return tm, fm


def heart(cat: Catalog, interval: Interval) -> SubcatSet:
    return interval.hi & perp(cat, interval.lo, "left")


# ---------------------------------------------------------------- star


def star_member(cat: Catalog, g: SubcatSet, f: SubcatSet, m: Module) -> bool:
    """Whether m sits in an exact sequence 0 → G' → m → F' → 0 with G' ∈ g, F' ∈ f.

    Requires ``f`` torsion-free and ``g ⊆ ⊥f``.  Then G' is forced to be the
    torsion part of m for the pair (⊥f, f), i.e. the reject of f in m.
    """
    if not g <= perp(cat, f, "left"):
        raise PreconditionError("star product needs the first factor inside the left perp of the second")
    r, _ = reject(cat, f, m)
    return r.is_zero() or in_subcat(cat, r, g)


def star(cat: Catalog, g: Iterable[int], f: Iterable[int]) -> SubcatSet:
    g, f = frozenset(g), frozenset(f)
    return _memo(cat, ("star", g, f), lambda: frozenset(x for x in range(len(cat)) if star_member(cat, g, f, cat.modules[x])))


def ap_restrict(cat: Catalog, interval: Interval, f: Iterable[int]) -> SubcatSet:
    f = frozenset(f)
    if not interval.lo <= f <= interval.hi:
        raise PreconditionError("restrict input must lie in the interval")
    return f & heart(cat, interval)


def ap_extend(cat: Catalog, interval: Interval, g: Iterable[int], cap: int = DEFAULT_CAP) -> SubcatSet:
    g = frozenset(g)
    if not g <= heart(cat, interval):
        raise PreconditionError("extend input must lie in the heart")
    return closure(cat, g | interval.lo, "torf", cap) & interval.hi


def ap_maps(cat: Catalog, interval: Interval, sub: Iterable[int], direction: str, cap: int = DEFAULT_CAP) -> SubcatSet:
    if direction == "restrict":
        return ap_restrict(cat, interval, sub)
    if direction == "extend":
        return ap_extend(cat, interval, sub, cap)
    raise ValueError(f"unknown direction {direction!r}")


# ---------------------------------------------------------------- bounded map quantifiers


def _canon(spaces: list[np.ndarray], p: int) -> tuple:
    return tuple(field.row_basis(s.T, p).tobytes() + bytes([s.shape[0]]) for s in spaces)


def image_family(cat: Catalog, sources: Iterable[int], z: Module, cap: int = DEFAULT_CAP) -> list[list[np.ndarray]]:
    """Every submodule of ``z`` that is the image of a map from add(sources).

    Images of maps out of a direct sum are sums of images of single maps, so
    the family is the closure under sums of single-map images.  Exact in the
    source multiplicities.
    """
    p = cat.p
    gens: dict = {}
    for s in sorted(sources):
        for f in hom_basis(cat.modules[s], z).elements(cap):
            if f.is_zero():
                continue
            sp = image_spaces(f)
            gens.setdefault(_canon(sp, p), sp)
    zero = [field.zeros(d, 0) for d in z.dims]
    family = {_canon(zero, p): zero}
    frontier = [zero]
    while frontier:
        u = frontier.pop()
        for g in gens.values():
            w = sum_spaces([u, g], z.dims, p)
            key = _canon(w, p)
            if key not in family:
                family[key] = w
                frontier.append(w)
                if len(family) > cap:
                    raise CapExceeded(f"more than {cap} image submodules")
    return [family[k] for k in sorted(family)]


def _subspace_choices(h: int, limit: int, p: int) -> list[np.ndarray]:
    return [b for b in field.iter_subspaces(h, min(limit, h), p)]


def kernels_into(
    cat: Catalog, sources: Iterable[int], x: Module, bound: int | None = None, cap: int = DEFAULT_CAP
) -> Iterator[Module]:
    """Kernels of maps f: Y → x with Y ∈ add(sources).

    Up to automorphisms of Y, the components of f from the copies of a
    source C form a subspace of Hom(C, x) plus zero maps, and zero components
    only add copies of C to the kernel.  So it suffices to run over tuples of
    subspaces; ``bound`` caps their dimension (None means no cap, which is
    exact).
    """
    p = cat.p
    srcs = sorted(sources)
    bases = [hom_basis(cat.modules[s], x) for s in srcs]
    choices = [
        _subspace_choices(hb.dim, hb.dim if bound is None else bound, p) for hb in bases
    ]
    total = 1
    for c in choices:
        total *= len(c)
    if total > cap:
        raise CapExceeded(f"{total} kernel configurations exceed cap {cap}")
    for combo in itertools.product(*choices):
        parts, maps = [], []
        for s, hb, sub in zip(srcs, bases, combo):
            for row in sub:
                parts.append(cat.modules[s])
                maps.append(hb.combination(row))
        if not parts:
            continue
        y = direct_sum(parts, cat.alg)
        f = Morphism(
            y,
            x,
            [np.hstack([g.maps[v] for g in maps]) for v in range(cat.alg.n)],
            check=False,
        )
        yield kernel(f)[0]


def _targets(cat: Catalog, members: SubcatSet, mult_bound: int) -> Iterator[Module]:
    for t in sorted(members):
        for k in range(1, mult_bound + 1):
            yield direct_sum([cat.modules[t]] * k, cat.alg)


def closed_under_images_cokernels(cat: Catalog, members: SubcatSet, mult_bound: int = 1, cap: int = DEFAULT_CAP) -> bool:
    """Images and cokernels of maps add(S) → T^k (T ∈ S, k ≤ mult_bound) stay in S."""
    for z in _targets(cat, members, mult_bound):
        for u in image_family(cat, members, z, cap):
            if not in_subcat(cat, submodule(z, u)[0], members):
                return False
            if not in_subcat(cat, quotient(z, u)[0], members):
                return False
    return True


def closed_under_kernels(cat: Catalog, members: SubcatSet, mult_bound: int = 1, cap: int = DEFAULT_CAP) -> bool:
    for z in _targets(cat, members, mult_bound):
        for k in kernels_into(cat, members, z, None, cap):
            if not k.is_zero() and not in_subcat(cat, k, members):
                return False
    return True


def is_ice_bounded(cat: Catalog, members: Iterable[int], mult_bound: int = 1, cap: int = DEFAULT_CAP) -> bool:
    """Extension closure (exact) plus image/cokernel closure with targets of multiplicity ≤ mult_bound."""
    s = frozenset(members)
    if not s or s == cat.full:
        return True

    def compute():
        return is_class(cat, s, "ext", cap) and closed_under_images_cokernels(cat, s, mult_bound, cap)

    return _memo(cat, ("ice", s, mult_bound), compute)


def is_wide_bounded(cat: Catalog, members: Iterable[int], mult_bound: int = 1, cap: int = DEFAULT_CAP) -> bool:
    """Extensions (exact), kernels and cokernels with targets of multiplicity ≤ mult_bound."""
    s = frozenset(members)
    if not s or s == cat.full:
        return True

    def compute():
        return (
            is_class(cat, s, "ext", cap)
            and closed_under_images_cokernels(cat, s, mult_bound, cap)
            and closed_under_kernels(cat, s, mult_bound, cap)
        )

    return _memo(cat, ("wide", s, mult_bound), compute)


def wl_operator(cat: Catalog, members: Iterable[int], bound: int | None = None, cap: int = DEFAULT_CAP) -> SubcatSet:
    """{X ∈ C : every map Y → X with Y ∈ add C has kernel in C}.

    ``bound`` caps the number of linearly independent components taken from
    each source; None uses dim X.
    """
    c = frozenset(members)
    if c == cat.full:
        return c

    def keep(x: int) -> bool:
        mod = cat.modules[x]
        b = mod.dim if bound is None else bound
        return all(k.is_zero() or in_subcat(cat, k, c) for k in kernels_into(cat, c, mod, b, cap))

    return _memo(cat, ("wl", c, bound), lambda: frozenset(x for x in sorted(c) if keep(x)))


def is_tors_in(cat: Catalog, t: Iterable[int], w: Iterable[int], cap: int = DEFAULT_CAP) -> bool:
    """Whether t is a torsion class of the wide subcategory w."""
    t, w = frozenset(t), frozenset(w)
    if not t <= w:
        return False
    if gen(cat, t) & w != t:
        return False
    return is_class(cat, t, "ext", cap)
