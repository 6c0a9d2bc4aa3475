"""τ⁻¹-rigid modules, split/Ext-injectives of torsion-free classes, and reduction.

A rigid module is a set of catalog indices (its indecomposable summands).
Rigidity is additive, so every test reduces to lookups in the Hom table.
Relative notions inside a τ⁻¹-perpendicular category W use the
Auslander–Smalø description (τ_W⁻¹Z)^⊥ ∩ W = {N ∈ W : Ext¹(Cogen N ∩ W, Z) = 0},
which only needs Hom and Ext¹ in the ambient category.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import field
from .catalog import Catalog
from .errors import CapExceeded, PreconditionError, VerificationError
from .module import DEFAULT_CAP, Module, direct_sum, hom_basis
from .subcat import SubcatSet, cogen, is_class, perp, reject


@dataclass(frozen=True)
class RigidModule:
    members: frozenset[int]
    cogen: SubcatSet
    tau_perp: SubcatSet  # (τ⁻¹X)^⊥

    def __len__(self) -> int:
        return len(self.members)


def tau_inverse_of(cat: Catalog, members: Iterable[int]) -> frozenset[int]:
    return frozenset(t for i in members if (t := cat.tau_inverse[i]) is not None)


def is_tau_inv_rigid(cat: Catalog, members: Iterable[int]) -> bool:
    x = list(members)
    return all(cat.dim_hom[t, j] == 0 for t in tau_inverse_of(cat, x) for j in x)


def tau_perp(cat: Catalog, members: Iterable[int]) -> SubcatSet:
    """(τ⁻¹X)^⊥."""
    return perp(cat, tau_inverse_of(cat, members), "right")


def rigid_module(cat: Catalog, members: Iterable[int]) -> RigidModule:
    x = frozenset(members)
    if not is_tau_inv_rigid(cat, x):
        raise PreconditionError(f"{cat.label_of(x)} is not τ⁻¹-rigid")
    return RigidModule(x, cogen(cat, x), tau_perp(cat, x))


def _compatible(cat: Catalog) -> list[list[bool]]:
    def compute():
        n = len(cat)
        return [[is_tau_inv_rigid(cat, {i, j}) for j in range(n)] for i in range(n)]

    key = ("rigid_pairs",)
    if key not in cat.cache:
        cat.cache[key] = compute()
    return cat.cache[key]


def enumerate_tau_inv_rigid(cat: Catalog) -> list[RigidModule]:
    """All basic τ⁻¹-rigid modules, by backtracking on pairwise compatibility."""
    ok = _compatible(cat)
    n = len(cat)
    out: list[frozenset[int]] = []

    def grow(chosen: list[int], start: int):
        out.append(frozenset(chosen))
        for k in range(start, n):
            if ok[k][k] and all(ok[k][c] for c in chosen):
                chosen.append(k)
                grow(chosen, k + 1)
                chosen.pop()

    grow([], 0)
    out.sort(key=lambda s: (len(s), sorted(s)))
    return [rigid_module(cat, s) for s in out]


def is_cogen_minimal(cat: Catalog, members: Iterable[int]) -> bool:
    x = frozenset(members)
    return all(i not in cogen(cat, x - {i}) for i in x)


def injectives_of_torf(cat: Catalog, f: Iterable[int], kind: str, cap: int = DEFAULT_CAP) -> frozenset[int]:
    """Split injectives (kind="split") or Ext-injectives (kind="ext") of a torsion-free class."""
    f = frozenset(f)
    if not is_class(cat, f, "torf", cap):
        raise PreconditionError(f"{cat.label_of(f)} is not torsion-free")
    if kind == "ext":
        return frozenset(x for x in f if all(cat.dim_ext1[y, x] == 0 for y in f))
    if kind == "split":
        return frozenset(x for x in f if x not in cogen(cat, f - {x}))
    raise ValueError(f"unknown kind {kind!r}")


def split_by_monomorphisms(cat: Catalog, f: Iterable[int], x: int, mult: int | None = None, cap: int = DEFAULT_CAP) -> bool:
    """Definitional test: every mono x ↪ Y with Y ∈ add F (multiplicities ≤ mult) splits.

    One target suffices: Y = ⊕ f^k over F with k = min(mult, dim Hom(x, f)).
    A non-split mono into a summand of Y stays non-split into Y, and after a
    change of basis on f^k at most dim Hom(x, f) components are nonzero.
    ``mult`` defaults to dim x.
    """
    p = cat.p
    bound = cat.modules[x].dim if mult is None else mult
    parts = [cat.modules[i] for i in sorted(frozenset(f)) for _ in range(min(bound, int(cat.dim_hom[x, i])))]
    y = direct_sum(parts, cat.alg)
    src = cat.modules[x]
    back = hom_basis(y, src)
    ident = np.concatenate([field.identity(d).reshape(-1) for d in src.dims])
    for g in hom_basis(src, y).elements(cap):
        if not g.is_injective():
            continue
        if back.dim == 0:
            return False
        cols = np.array([g.then(r).vector() for r in back.maps], dtype=np.int64).T
        if field.solve(cols, ident, p) is None:
            return False
    return True


def jperp(cat: Catalog, members: Iterable[int]) -> SubcatSet:
    """The τ⁻¹-perpendicular category (τ⁻¹X)^⊥ ∩ ⊥X."""
    x = frozenset(members)
    if not is_tau_inv_rigid(cat, x):
        raise PreconditionError(f"{cat.label_of(x)} is not τ⁻¹-rigid")
    return tau_perp(cat, x) & perp(cat, x, "left")


def complete_to_torf(cat: Catalog, members: Iterable[int], f: Iterable[int], cap: int = DEFAULT_CAP) -> RigidModule:
    """X ⊕ (I_s(F)/add X) for Cogen X ⊆ F ⊆ (τ⁻¹X)^⊥."""
    x = rigid_module(cat, members)
    f = frozenset(f)
    if not (x.cogen <= f <= x.tau_perp):
        raise PreconditionError("need Cogen X ⊆ F ⊆ (τ⁻¹X)^⊥")
    out = rigid_module(cat, x.members | injectives_of_torf(cat, f, "split", cap))
    if out.cogen != f:
        raise VerificationError("completion does not cogenerate F")
    return out


# ---------------------------------------------------------------- relative notions inside a wide subcategory


def relative_tau_perp(cat: Catalog, z: Iterable[int], w: Iterable[int]) -> SubcatSet:
    """(τ_W⁻¹Z)^⊥ ∩ W = {N ∈ W : Ext¹(c, Z) = 0 for all c ∈ Cogen(N) ∩ W}."""
    z, w = frozenset(z), frozenset(w)
    e = cat.dim_ext1
    return frozenset(n for n in w if not any(e[c, t] for c in cogen(cat, {n}) & w for t in z))


def is_relative_tau_inv_rigid(cat: Catalog, z: Iterable[int], w: Iterable[int]) -> bool:
    z, w = frozenset(z), frozenset(w)
    return z <= w and z <= relative_tau_perp(cat, z, w)


def enumerate_relative_rigid(cat: Catalog, w: Iterable[int]) -> list[frozenset[int]]:
    """All basic τ_W⁻¹-rigid modules of W (rigidity is pairwise)."""
    w = sorted(frozenset(w))
    ok = {(a, b): b in relative_tau_perp(cat, {a}, w) for a in w for b in w}
    out: list[frozenset[int]] = []

    def grow(chosen: list[int], start: int):
        out.append(frozenset(chosen))
        for k in range(start, len(w)):
            c = w[k]
            if ok[c, c] and all(ok[c, d] and ok[d, c] for d in chosen):
                chosen.append(c)
                grow(chosen, k + 1)
                chosen.pop()

    grow([], 0)
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


# ---------------------------------------------------------------- reduction t_X


def is_weakly_cogen_pair(cat: Catalog, y: Iterable[int], x: Iterable[int]) -> bool:
    """Whether the two-block sequence (Y, X) is weakly cogen-preordered."""
    y, x = frozenset(y), frozenset(x)
    return not (y & x) and is_tau_inv_rigid(cat, y | x) and not (y & cogen(cat, x))


def reduce_module(cat: Catalog, m: Module, x: Iterable[int]) -> Module:
    """t_X m: the torsion part of m for the torsion pair (⊥X, Cogen X)."""
    return reject(cat, x, m)[0]


def reduce_pair(cat: Catalog, y: Iterable[int], x: Iterable[int]) -> frozenset[int]:
    y, x = frozenset(y), frozenset(x)
    if not is_weakly_cogen_pair(cat, y, x):
        raise PreconditionError(f"({cat.label_of(y)}, {cat.label_of(x)}) is not weakly cogen-preordered")
    out: dict[int, int] = {}
    for i in sorted(y):
        for j, k in cat.decompose(reduce_module(cat, cat.modules[i], x)).items():
            out[j] = out.get(j, 0) + k
    if any(k > 1 for k in out.values()):
        raise VerificationError("reduction is not basic")
    return frozenset(out)


def reduction_domain(cat: Catalog, x: Iterable[int]) -> list[frozenset[int]]:
    """All Y with (Y, X) weakly cogen-preordered."""
    x = frozenset(x)
    return [r.members - x for r in enumerate_tau_inv_rigid(cat) if x <= r.members and is_weakly_cogen_pair(cat, r.members - x, x)]


def lift_through_reduction(cat: Catalog, z: Iterable[int], x: Iterable[int]) -> frozenset[int]:
    """The unique Y with (Y, X) weakly cogen-preordered and t_X Y = Z."""
    z, x = frozenset(z), frozenset(x)
    hits = [y for y in reduction_domain(cat, x) if reduce_pair(cat, y, x) == z]
    if len(hits) != 1:
        raise VerificationError(f"{len(hits)} preimages of {cat.label_of(z)} under reduction by {cat.label_of(x)}")
    return hits[0]


__all__ = [
    "CapExceeded",
    "RigidModule",
    "complete_to_torf",
    "enumerate_relative_rigid",
    "enumerate_tau_inv_rigid",
    "injectives_of_torf",
    "is_cogen_minimal",
    "is_relative_tau_inv_rigid",
    "is_tau_inv_rigid",
    "is_weakly_cogen_pair",
    "jperp",
    "lift_through_reduction",
    "reduce_pair",
    "relative_tau_perp",
    "rigid_module",
    "split_by_monomorphisms",
]
