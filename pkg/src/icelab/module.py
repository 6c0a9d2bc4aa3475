"""Finite-dimensional representations, morphisms and Hom spaces."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from . import field
from .algebra import Algebra
from .errors import CapExceeded, ModuleError

DEFAULT_CAP = 2**20


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.int64)
    arr.setflags(write=False)
    return arr


class Module:
    """A representation: a vector space per vertex and a matrix per arrow.

    The matrix of an arrow ``a: i → j`` has shape ``(dims[j], dims[i])``.
    Instances are immutable and hash by content.
    """

    __slots__ = ("alg", "dims", "mats", "_key")

    def __init__(self, alg: Algebra, dims: Sequence[int], mats: Sequence, check: bool = True):
        self.alg = alg
        self.dims = tuple(int(d) for d in dims)
        p = alg.p
        self.mats = tuple(
            _frozen(np.asarray(m, dtype=np.int64).reshape(self.dims[t], self.dims[s]) % p)
            for m, (s, t) in zip(mats, alg.arrow_ends)
        )
        self._key = None
        if check:
            self._validate()

    def _validate(self) -> None:
        if len(self.dims) != self.alg.n or any(d < 0 for d in self.dims):
            raise ModuleError("dimension vector does not match the vertices")
        if len(self.mats) != len(self.alg.arrows):
            raise ModuleError("one matrix per arrow is required")
        index = {a.label: k for k, a in enumerate(self.alg.arrows)}
        for rel in self.alg.relations:
            total = None
            for c, path in rel.terms:
                m = self.path_matrix(tuple(index[x] for x in path))
                total = c * m if total is None else total + c * m
            if total is not None and (total % self.alg.p).any():
                raise ModuleError(f"relation {rel} does not vanish")

    @classmethod
    def zero(cls, alg: Algebra) -> "Module":
        return cls(alg, [0] * alg.n, [field.zeros(0, 0) for _ in alg.arrows], check=False)

    def path_matrix(self, arrows: tuple[int, ...], start: int | None = None) -> np.ndarray:
        """Matrix of a path (first arrow applied first)."""
        if not arrows:
            return field.identity(self.dims[start])
        out = self.mats[arrows[0]]
        for k in arrows[1:]:
            out = (self.mats[k] @ out) % self.alg.p
        return out

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def key(self) -> bytes:
        if self._key is None:
            parts = [repr(self.dims).encode()] + [m.tobytes() for m in self.mats]
            self._key = b"|".join(parts)
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Module) and self.alg == other.alg and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Module(dims={self.dims})"


class Morphism:
    """A family of matrices ``maps[v]`` (shape ``target.dims[v] × source.dims[v]``)."""

    __slots__ = ("source", "target", "maps")

    def __init__(self, source: Module, target: Module, maps: Sequence, check: bool = True):
        self.source = source
        self.target = target
        p = source.alg.p
        self.maps = tuple(
            _frozen(np.asarray(m, dtype=np.int64).reshape(target.dims[v], source.dims[v]) % p)
            for v, m in enumerate(maps)
        )
        if check:
            for k, (s, t) in enumerate(source.alg.arrow_ends):
                lhs = self.maps[t] @ source.mats[k]
                rhs = target.mats[k] @ self.maps[s]
                if ((lhs - rhs) % p).any():
                    raise ModuleError("maps do not commute with the arrows")

    @property
    def p(self) -> int:
        return self.source.alg.p

    @classmethod
    def zero(cls, source: Module, target: Module) -> "Morphism":
        return cls(source, target, [field.zeros(t, s) for s, t in zip(source.dims, target.dims)], check=False)

    @classmethod
    def identity(cls, m: Module) -> "Morphism":
        return cls(m, m, [field.identity(d) for d in m.dims], check=False)

    def then(self, g: "Morphism") -> "Morphism":
        """Composite ``g ∘ self``."""
        p = self.p
        return Morphism(self.source, g.target, [(b @ a) % p for a, b in zip(self.maps, g.maps)], check=False)

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, [(a + b) for a, b in zip(self.maps, other.maps)], check=False)

    def scale(self, c: int) -> "Morphism":
        return Morphism(self.source, self.target, [c * a for a in self.maps], check=False)

    def is_zero(self) -> bool:
        return not any(m.any() for m in self.maps)

    def ranks(self) -> list[int]:
        return [field.rank(m, self.p) for m in self.maps]

    def is_injective(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.source.dims))

    def is_surjective(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.target.dims))

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def vector(self) -> np.ndarray:
        if not self.maps:
            return field.zeros(1, 0)[0]
        return np.concatenate([m.reshape(-1) for m in self.maps])

    @classmethod
    def from_vector(cls, source: Module, target: Module, vec: np.ndarray, check: bool = False) -> "Morphism":
        maps, pos = [], 0
        for s, t in zip(source.dims, target.dims):
            maps.append(np.asarray(vec[pos : pos + s * t]).reshape(t, s))
            pos += s * t
        return cls(source, target, maps, check=check)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Morphism)
            and self.source == other.source
            and self.target == other.target
            and all(np.array_equal(a, b) for a, b in zip(self.maps, other.maps))
        )

    __hash__ = None


@dataclass(frozen=True)
class HomBasis:
    source: Module
    target: Module
    maps: tuple[Morphism, ...]

    @property
    def dim(self) -> int:
        return len(self.maps)

    def combination(self, coeffs) -> Morphism:
        vec = field.zeros(1, sum(s * t for s, t in zip(self.source.dims, self.target.dims)))[0]
        for c, f in zip(coeffs, self.maps):
            if c:
                vec = vec + c * f.vector()
        return Morphism.from_vector(self.source, self.target, vec % self.source.alg.p)

    def matrix(self) -> np.ndarray:
        """Basis vectors as the rows of a matrix."""
        n = sum(s * t for s, t in zip(self.source.dims, self.target.dims))
        if not self.maps:
            return field.zeros(0, n)
        return np.array([f.vector() for f in self.maps], dtype=np.int64)

    def coordinates(self, f: Morphism) -> np.ndarray | None:
        return field.solve(self.matrix().T, f.vector(), self.source.alg.p)

    def elements(self, cap: int = DEFAULT_CAP) -> Iterator[Morphism]:
        """Every element of the Hom space (exhaustive over F_p)."""
        p = self.source.alg.p
        if p**self.dim > cap:
            raise CapExceeded(f"Hom space has {p}^{self.dim} elements, above cap {cap}")
        basis = self.matrix()
        for coeffs in field.iter_vectors(self.dim, p):
            vec = (np.array(coeffs, dtype=np.int64) @ basis) % p if self.dim else basis.sum(axis=0)
            yield Morphism.from_vector(self.source, self.target, vec)


def _check_same(m: Module, n: Module) -> None:
    if m.alg != n.alg:
        raise ModuleError("modules over different algebras")


def hom_system(m: Module, n: Module) -> np.ndarray:
    """Linear system whose kernel is Hom(m, n), in the layout of ``Morphism.vector``."""
    alg = m.alg
    offsets, pos = [], 0
    for s, t in zip(m.dims, n.dims):
        offsets.append(pos)
        pos += s * t
    rows = []
    for k, (s, t) in enumerate(alg.arrow_ends):
        ms, mt, ns, nt = m.dims[s], m.dims[t], n.dims[s], n.dims[t]
        if nt * ms == 0:
            continue
        block = field.zeros(nt * ms, pos)
        # f_t @ M_a  -  N_a @ f_s, vectorised row-major
        block[:, offsets[t] : offsets[t] + nt * mt] += np.kron(field.identity(nt), m.mats[k].T)
        block[:, offsets[s] : offsets[s] + ns * ms] -= np.kron(n.mats[k], field.identity(ms))
        rows.append(block)
    if not rows:
        return field.zeros(0, pos)
    return np.vstack(rows) % alg.p


@lru_cache(maxsize=200_000)
def hom_basis(m: Module, n: Module) -> HomBasis:
    """Basis of Hom(m, n), in the canonical RREF order of the intertwining system."""
    _check_same(m, n)
    system = hom_system(m, n)
    kernel = field.nullspace(system, m.alg.p)
    maps = tuple(Morphism.from_vector(m, n, row) for row in kernel)
    return HomBasis(m, n, maps)


@lru_cache(maxsize=400_000)
def hom_dim(m: Module, n: Module) -> int:
    _check_same(m, n)
    system = hom_system(m, n)
    return system.shape[1] - field.rank(system, m.alg.p)


# ---------------------------------------------------------------- subobjects


def _cols(u, d: int) -> np.ndarray:
    u = np.asarray(u, dtype=np.int64)
    if u.ndim == 2 and u.shape[0] == d:
        return u
    if u.size == 0:
        return field.zeros(d, 0)
    return u.reshape(d, -1)


def submodule(m: Module, spaces: Sequence[np.ndarray]) -> tuple[Module, Morphism]:
    """Submodule spanned by column bases ``spaces[v]``; returns it with its inclusion."""
    p = m.alg.p
    spaces = [_cols(u, m.dims[v]) for v, u in enumerate(spaces)]
    mats = []
    for k, (s, t) in enumerate(m.alg.arrow_ends):
        image = (m.mats[k] @ spaces[s]) % p
        coords = field.solve(spaces[t], image, p)
        if coords is None:
            raise ModuleError("subspace family is not a submodule")
        mats.append(coords)
    sub = Module(m.alg, [u.shape[1] for u in spaces], mats, check=False)
    return sub, Morphism(sub, m, spaces, check=False)


def quotient(m: Module, spaces: Sequence[np.ndarray]) -> tuple[Module, Morphism]:
    """Quotient by the submodule with column bases ``spaces[v]``; returns it with the projection."""
    p = m.alg.p
    comps, projs = [], []
    for v, u in enumerate(spaces):
        u = _cols(u, m.dims[v])
        c = field.complement_basis(u, m.dims[v], p)
        full = np.hstack([u, c])
        inv = field.inverse(full, p) if m.dims[v] else field.zeros(0, 0)
        comps.append(c)
        projs.append(inv[u.shape[1] :])
    mats = [
        (projs[t] @ m.mats[k] @ comps[s]) % p for k, (s, t) in enumerate(m.alg.arrow_ends)
    ]
    q = Module(m.alg, [c.shape[1] for c in comps], mats, check=False)
    return q, Morphism(m, q, projs, check=False)


@dataclass(frozen=True)
class Subquotients:
    kernel: tuple[Module, Morphism]
    image: tuple[Module, Morphism]
    cokernel: tuple[Module, Morphism]


def kernel_spaces(f: Morphism) -> list[np.ndarray]:
    p = f.p
    return [field.nullspace(a, p).T.copy() if a.shape[1] else field.zeros(0, 0) for a in f.maps]


def image_spaces(f: Morphism) -> list[np.ndarray]:
    p = f.p
    return [
        field.column_basis(a, p) if a.shape[1] else field.zeros(a.shape[0], 0) for a in f.maps
    ]


def kernel(f: Morphism) -> tuple[Module, Morphism]:
    return submodule(f.source, kernel_spaces(f))


def image(f: Morphism) -> tuple[Module, Morphism]:
    return submodule(f.target, image_spaces(f))


def cokernel(f: Morphism) -> tuple[Module, Morphism]:
    return quotient(f.target, image_spaces(f))


def subquotients(f: Morphism) -> Subquotients:
    return Subquotients(kernel(f), image(f), cokernel(f))


def sum_spaces(spaces_list: Sequence[Sequence[np.ndarray]], dims: Sequence[int], p: int) -> list[np.ndarray]:
    out = []
    for v, d in enumerate(dims):
        cols = [s[v] for s in spaces_list if s[v].shape[1]]
        out.append(field.column_basis(np.hstack(cols), p) if cols else field.zeros(d, 0))
    return out


def intersect_spaces(a: Sequence[np.ndarray], b: Sequence[np.ndarray], p: int) -> list[np.ndarray]:
    return [field.intersect_columns(x, y, p) for x, y in zip(a, b)]


# ---------------------------------------------------------------- sums and isomorphism


def direct_sum(parts: Sequence[Module], alg: Algebra | None = None) -> Module:
    return direct_sum_with_maps(parts, alg)[0]


def direct_sum_with_maps(
    parts: Sequence[Module], alg: Algebra | None = None
) -> tuple[Module, list[Morphism], list[Morphism]]:
    """Block-diagonal sum together with the canonical inclusions and projections."""
    if not parts:
        if alg is None:
            raise ModuleError("empty direct sum needs an algebra")
        return Module.zero(alg), [], []
    alg = parts[0].alg
    for m in parts[1:]:
        _check_same(parts[0], m)
    dims = [sum(m.dims[v] for m in parts) for v in range(alg.n)]
    mats = [field.block_diag([m.mats[k] for m in parts]) for k in range(len(alg.arrows))]
    total = Module(alg, dims, mats, check=False)
    incs, projs = [], []
    offs = [0] * alg.n
    for m in parts:
        inc, proj = [], []
        for v in range(alg.n):
            e = field.zeros(dims[v], m.dims[v])
            e[offs[v] : offs[v] + m.dims[v], :] = field.identity(m.dims[v])
            inc.append(e)
            proj.append(e.T.copy())
            offs[v] += m.dims[v]
        incs.append(Morphism(m, total, inc, check=False))
        projs.append(Morphism(total, m, proj, check=False))
    return total, incs, projs


def _rank_signature(m: Module) -> tuple:
    p = m.alg.p
    return tuple(field.rank(a, p) for a in m.mats)


def find_isomorphism(m: Module, n: Module, cap: int = DEFAULT_CAP, trials: int = 256) -> Morphism | None:
    """An isomorphism ``m → n`` or None.

    Exhaustive over F_p-combinations of the Hom basis when ``p^dim ≤ cap``;
    otherwise seeded random trials, and :class:`CapExceeded` if none succeed.
    """
    _check_same(m, n)
    if m.dims != n.dims:
        return None
    if m.dim == 0:
        return Morphism.identity(m)
    if _rank_signature(m) != _rank_signature(n):
        return None
    hb = hom_basis(m, n)
    if hb.dim != hom_dim(m, m):
        return None
    p = m.alg.p
    if hb.dim == 0:
        return None
    if p**hb.dim <= cap:
        for f in hb.elements(cap):
            if f.is_iso():
                return f
        return None
    rng = random.Random(0)
    for _ in range(trials):
        f = hb.combination([rng.randrange(p) for _ in range(hb.dim)])
        if f.is_iso():
            return f
    raise CapExceeded(f"isomorphism search over {p}^{hb.dim} elements undecided; raise the cap")


def is_isomorphic(m: Module, n: Module, cap: int = DEFAULT_CAP) -> bool:
    return find_isomorphism(m, n, cap) is not None


def is_indecomposable(m: Module, cap: int = DEFAULT_CAP) -> bool:
    """True iff End(m) is local: every endomorphism is nilpotent or invertible."""
    if m.is_zero():
        raise ModuleError("the zero module is neither decomposable nor indecomposable")
    hb = hom_basis(m, m)
    if hb.dim == 1:
        return True
    p = m.alg.p
    for f in hb.elements(cap):
        if f.is_iso():
            continue
        if not all(field.is_nilpotent(a, p) for a in f.maps):
            return False
    return True


# ---------------------------------------------------------------- standard modules


def simple(alg: Algebra, v: int) -> Module:
    dims = [1 if w == v else 0 for w in range(alg.n)]
    mats = [field.zeros(dims[t], dims[s]) for s, t in alg.arrow_ends]
    return Module(alg, dims, mats, check=False)


def projective(alg: Algebra, v: int) -> Module:
    """P(v): paths starting at v, arrows acting by appending."""
    pa = alg.paths
    dims = [pa.dim(v, w) for w in range(alg.n)]
    mats = []
    for k, (s, t) in enumerate(alg.arrow_ends):
        cols = [pa.reduce((v, path[1] + (k,))) for path in pa.basis(v, s)]
        mats.append(np.array(cols, dtype=np.int64).T.reshape(dims[t], dims[s]))
    return Module(alg, dims, mats)


def injective(alg: Algebra, v: int) -> Module:
    """I(v) = D(paths ending at v), arrows acting by precomposition."""
    pa = alg.paths
    dims = [pa.dim(w, v) for w in range(alg.n)]
    mats = []
    for k, (s, t) in enumerate(alg.arrow_ends):
        # q ∈ B(t, v) ↦ a*q ∈ B(s, v); the module map is its transpose
        rows = [pa.reduce((s, (k,) + q[1])) for q in pa.basis(t, v)]
        mats.append(np.array(rows, dtype=np.int64).reshape(dims[t], dims[s]))
    return Module(alg, dims, mats)


def iter_representations(alg: Algebra, dims: Sequence[int], cap: int = DEFAULT_CAP) -> Iterator[Module]:
    """All representations with dimension vector ``dims`` satisfying the relations."""
    p = alg.p
    shapes = [(dims[t], dims[s]) for s, t in alg.arrow_ends]
    entries = sum(r * c for r, c in shapes)
    if p**entries > cap:
        raise CapExceeded(f"{p}^{entries} representations of {tuple(dims)} exceed cap {cap}")
    for values in itertools.product(range(p), repeat=entries):
        mats, pos = [], 0
        for r, c in shapes:
            mats.append(np.array(values[pos : pos + r * c], dtype=np.int64).reshape(r, c))
            pos += r * c
        try:
            yield Module(alg, dims, mats)
        except ModuleError:
            continue
