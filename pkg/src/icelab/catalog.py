"""The catalog of indecomposable modules and its completeness certificate.

Indecomposables are found by brute force over dimension vectors.  The list is
then certified complete by closure checks: every indecomposable projective and
injective occurs, τ and τ⁻¹ of every entry occur (or vanish), and every almost
split sequence has its middle term decomposing inside the list.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import ar
from .algebra import Algebra, parse_algebra
from .errors import CertificateError, IcelabError, ModuleError, VerificationError
from .module import (
    DEFAULT_CAP,
    Module,
    direct_sum,
    hom_basis,
    hom_dim,
    injective,
    is_indecomposable,
    is_isomorphic,
    iter_representations,
    kernel,
    projective,
)

FORMAT_VERSION = 1

Decomposition = Counter  # catalog index -> multiplicity


@dataclass
class Catalog:
    """Indecomposables up to isomorphism with Hom/Ext/τ tables.

    Treated as immutable once built; the only mutable state is the
    decomposition memo, which is a pure cache.
    """

    alg: Algebra
    dim_bound: int
    modules: tuple[Module, ...]
    labels: tuple[str, ...]
    dim_hom: np.ndarray
    dim_ext1: np.ndarray
    tau: tuple[int | None, ...]
    tau_inverse: tuple[int | None, ...]
    is_projective: tuple[bool, ...]
    is_injective: tuple[bool, ...]
    ar_middle: tuple[tuple[tuple[int, int], ...] | None, ...]
    transcript: tuple[str, ...]
    _hom_inverse: list[list[Fraction]] | None = dc_field(default=None, repr=False, compare=False)
    _decomp: dict = dc_field(default_factory=dict, repr=False, compare=False)
    cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.modules)

    @property
    def full(self) -> frozenset[int]:
        return frozenset(range(len(self.modules)))

    @property
    def p(self) -> int:
        return self.alg.p

    def label_of(self, indices: Iterable[int]) -> str:
        return "{" + ",".join(self.labels[i] for i in sorted(indices)) + "}"

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no catalog entry labelled {label!r}") from None

    def dims(self, i: int) -> tuple[int, ...]:
        return self.modules[i].dims

    # ------------------------------------------------------------ decomposition

    def _inverse(self) -> list[list[Fraction]]:
        if self._hom_inverse is None:
            self._hom_inverse = _rational_inverse(self.dim_hom.tolist())
        return self._hom_inverse

    def decompose(self, m: Module, verify: bool = False, cap: int = DEFAULT_CAP) -> Decomposition:
        """Multiplicities of catalog indecomposables in ``m``.

        Solves Σ_I m_I dim Hom(X, I) = dim Hom(X, M) over all catalog X (the
        matrix is invertible by Auslander's theorem), then checks the
        dimension vector.  With ``verify`` the isomorphism is also exhibited
        when the Hom space is small enough to search.
        """
        if m.alg != self.alg:
            raise ModuleError("module over a different algebra")
        key = m.key()
        hit = self._decomp.get(key)
        if hit is not None and not verify:
            return Counter(dict(hit))
        if m.is_zero():
            return Counter()
        b = [hom_dim(x, m) for x in self.modules]
        inv = self._inverse()
        mult = Counter()
        for i, row in enumerate(inv):
            v = sum(c * bj for c, bj in zip(row, b))
            if v.denominator != 1 or v < 0:
                raise VerificationError(f"module {m!r} has no decomposition over the catalog")
            if v:
                mult[i] = int(v)
        dims = [sum(k * self.modules[i].dims[v] for i, k in mult.items()) for v in range(self.alg.n)]
        if tuple(dims) != m.dims:
            raise VerificationError(f"decomposition of {m!r} has the wrong dimension vector")
        if verify and self.p ** hom_dim(m, m) <= cap:
            parts = [self.modules[i] for i in sorted(mult) for _ in range(mult[i])]
            if not is_isomorphic(m, direct_sum(parts, self.alg), cap):
                raise VerificationError(f"decomposition of {m!r} is not an isomorphism")
        self._decomp[key] = tuple(sorted(mult.items()))
        return mult

    def index_of(self, m: Module) -> int | None:
        """Catalog index of an indecomposable ``m``; None for zero."""
        if m.is_zero():
            return None
        dec = self.decompose(m)
        if sum(dec.values()) != 1:
            raise ModuleError("module is not indecomposable")
        return next(iter(dec))

    def module_of(self, indices: Iterable[int]) -> Module:
        """Basic module ⊕ of the given catalog entries."""
        return direct_sum([self.modules[i] for i in sorted(indices)], self.alg)


def _rational_inverse(rows: list[list[int]]) -> list[list[Fraction]]:
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise VerificationError("Hom-dimension matrix is singular; catalog incomplete")
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [r[n:] for r in a]


# ---------------------------------------------------------------- enumeration


def _connected(alg: Algebra, dims: tuple[int, ...]) -> bool:
    support = [v for v in range(alg.n) if dims[v]]
    if not support:
        return False
    adj = {v: set() for v in support}
    for s, t in alg.arrow_ends:
        if dims[s] and dims[t]:
            adj[s].add(t)
            adj[t].add(s)
    seen, stack = {support[0]}, [support[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(support)


def dimension_vectors(alg: Algebra, dim_bound: int) -> list[tuple[int, ...]]:
    """Connected-support dimension vectors of total ≤ dim_bound, by total then lexicographically."""
    out = [
        d
        for d in itertools.product(range(dim_bound + 1), repeat=alg.n)
        if 0 < sum(d) <= dim_bound and _connected(alg, d)
    ]
    return sorted(out, key=lambda d: (sum(d), d))


def _indecomposables_of(alg: Algebra, dims: tuple[int, ...], cap: int) -> list[Module]:
    found: list[Module] = []
    for m in iter_representations(alg, dims, cap):
        if any(is_isomorphic(m, f, cap) for f in found):
            continue
        if is_indecomposable(m, cap):
            found.append(m)
    return found


def _label(dims: tuple[int, ...]) -> str:
    sep = "," if max(dims) >= 10 else ""
    return sep.join(str(d) for d in dims)


def _find(modules: list[Module], m: Module, cap: int) -> int | None:
    for i, x in enumerate(modules):
        if x.dims == m.dims and is_isomorphic(x, m, cap):
            return i
    return None


def build_catalog(alg: Algebra, dim_bound: int, cap: int = DEFAULT_CAP, threads: int = 1) -> Catalog:
    """Enumerate and certify the indecomposables of total dimension ≤ ``dim_bound``."""
    if dim_bound < 1:
        raise ValueError("dim_bound must be positive")
    vectors = dimension_vectors(alg, dim_bound)
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(threads) as pool:
            found = list(pool.map(lambda d: _indecomposables_of(alg, d, cap), vectors))
    else:
        found = [_indecomposables_of(alg, d, cap) for d in vectors]
    modules = [m for group in found for m in group]
    transcript = [
        f"algebra {alg.digest()}",
        f"searched {len(vectors)} dimension vectors of total <= {dim_bound}",
        f"found {len(modules)} indecomposables",
    ]
    labels = []
    counts: Counter = Counter()
    for m in modules:
        base = _label(m.dims)
        counts[base] += 1
        labels.append(base if counts[base] == 1 else f"{base}.{counts[base] - 1}")

    def fail(msg: str):
        transcript.append(f"FAIL {msg}")
        raise CertificateError(
            f"{msg}; raise dim_bound or the algebra is not representation-finite at this bound",
            transcript,
        )

    n = alg.n
    proj_idx, inj_idx = set(), set()
    for v in range(n):
        for kind, mod, bucket in (("projective", projective(alg, v), proj_idx), ("injective", injective(alg, v), inj_idx)):
            i = _find(modules, mod, cap)
            if i is None:
                fail(f"{kind} at vertex {alg.vertices[v]} (dims {mod.dims}) missing")
            bucket.add(i)
            transcript.append(f"{kind} {alg.vertices[v]} = {labels[i]}")

    tau_l: list[int | None] = []
    tau_inv_l: list[int | None] = []
    for i, m in enumerate(modules):
        for direction, out in (("forward", tau_l), ("inverse", tau_inv_l)):
            t = ar.tau(m, direction, check_indecomposable=False)
            if t.is_zero():
                out.append(None)
                continue
            j = _find(modules, t, cap)
            if j is None:
                fail(f"tau {direction} of {labels[i]} (dims {t.dims}) missing")
            out.append(j)
    for i in range(len(modules)):
        if (tau_l[i] is None) != (i in proj_idx):
            fail(f"tau of {labels[i]} vanishes iff projective check failed")
        if (tau_inv_l[i] is None) != (i in inj_idx):
            fail(f"tau inverse of {labels[i]} vanishes iff injective check failed")
        if tau_inv_l[i] is not None and tau_l[tau_inv_l[i]] != i:
            fail(f"tau(tau inverse({labels[i]})) is not {labels[i]}")
    transcript.append("closed under tau and tau inverse")

    dim_hom = np.array([[hom_dim(a, b) for b in modules] for a in modules], dtype=np.int64)
    cat = Catalog(
        alg=alg,
        dim_bound=dim_bound,
        modules=tuple(modules),
        labels=tuple(labels),
        dim_hom=dim_hom,
        dim_ext1=np.zeros((len(modules), len(modules)), dtype=np.int64),
        tau=tuple(tau_l),
        tau_inverse=tuple(tau_inv_l),
        is_projective=tuple(i in proj_idx for i in range(len(modules))),
        is_injective=tuple(i in inj_idx for i in range(len(modules))),
        ar_middle=(),
        transcript=(),
    )
    middles = []
    for i, m in enumerate(modules):
        j = tau_inv_l[i]
        if j is None:
            middles.append(None)
            continue
        ext = ar.almost_split_extension(m, modules[j], cap)
        try:
            dec = cat.decompose(ext.middle, verify=True, cap=cap)
        except IcelabError:
            fail(f"middle term of the almost split sequence at {labels[i]} does not decompose")
        middles.append(tuple(sorted(dec.items())))
        parts = " + ".join(f"{k}*{labels[x]}" if k > 1 else labels[x] for x, k in sorted(dec.items()))
        transcript.append(f"ar {labels[i]} -> {parts} -> {labels[j]}")
    transcript.append("certificate ok: projectives, injectives, tau orbits, almost split middle terms")
    cat.ar_middle = tuple(middles)
    cat.transcript = tuple(transcript)
    cat.dim_ext1 = np.array([[ar.ext1(a, b).dim for b in modules] for a in modules], dtype=np.int64)
    return cat


# ---------------------------------------------------------------- Filt membership


def filt_member(cat: Catalog, m: Module, members: frozenset[int], cap: int = DEFAULT_CAP, memo: dict | None = None) -> bool:
    """Whether ``m`` has a finite filtration with subquotients in add(members).

    Peels off indecomposable tops: some epimorphism m → T (T a member) must
    have kernel in the filtration class.  Memoised by decomposition.
    """
    memo = {} if memo is None else memo
    return _filt(cat, m, frozenset(members), cap, memo)


def _filt(cat: Catalog, m: Module, members: frozenset[int], cap: int, memo: dict) -> bool:
    if m.is_zero():
        return True
    dec = cat.decompose(m)
    if all(i in members for i in dec):
        return True
    key = tuple(sorted(dec.items()))
    if key in memo:
        return memo[key]
    memo[key] = False  # kernels are strictly smaller, so no cycles; guard anyway
    result = False
    for t in sorted(members):
        target = cat.modules[t]
        hb = hom_basis(m, target)
        if hb.dim == 0:
            continue
        seen = set()
        for f in hb.elements(cap):
            if not f.is_surjective():
                continue
            k = kernel(f)[0]
            kk = tuple(sorted(cat.decompose(k).items())) if not k.is_zero() else ()
            if kk in seen:
                continue
            seen.add(kk)
            if _filt(cat, k, members, cap, memo):
                result = True
                break
        if result:
            break
    memo[key] = result
    return result


# ---------------------------------------------------------------- cache


def _digits(a: np.ndarray, p: int) -> str:
    flat = a.reshape(-1).tolist()
    if not flat:
        return "-"
    return "".join(map(str, flat)) if p <= 10 else ",".join(map(str, flat))


def _undigits(s: str, r: int, c: int, p: int) -> np.ndarray:
    if s == "-":
        vals: list[int] = []
    elif p <= 10:
        vals = [int(ch) for ch in s]
    else:
        vals = [int(x) for x in s.split(",")]
    if len(vals) != r * c:
        raise ValueError("matrix size mismatch in cache")
    return np.array(vals, dtype=np.int64).reshape(r, c)


def _opt(x: int | None) -> str:
    return "-" if x is None else str(x)


def dump_catalog(cat: Catalog) -> str:
    """Deterministic line-oriented serialization."""
    p = cat.p
    out = [f"icelab-catalog {FORMAT_VERSION}", f"algebra {cat.alg.digest()}", f"dim_bound {cat.dim_bound}"]
    out += [f"alg {line}" for line in cat.alg.to_text().splitlines()]
    out.append(f"entries {len(cat)}")
    for i, m in enumerate(cat.modules):
        out.append(f"entry {i} {cat.labels[i]} {','.join(map(str, m.dims))}")
        for k, a in enumerate(m.mats):
            out.append(f"mat {k} {a.shape[0]}x{a.shape[1]} {_digits(a, p)}")
    for name, table in (("hom", cat.dim_hom), ("ext1", cat.dim_ext1)):
        out.append(f"table {name}")
        out += [" ".join(map(str, row)) for row in table.tolist()]
    out.append("tau " + " ".join(_opt(x) for x in cat.tau))
    out.append("tau_inverse " + " ".join(_opt(x) for x in cat.tau_inverse))
    out.append("projective " + " ".join(str(int(x)) for x in cat.is_projective))
    out.append("injective " + " ".join(str(int(x)) for x in cat.is_injective))
    for i, mid in enumerate(cat.ar_middle):
        if mid is not None:
            out.append(f"ar {i} " + " ".join(f"{x}:{k}" for x, k in mid))
    out += [f"transcript {line}" for line in cat.transcript]
    out.append("end")
    return "\n".join(out) + "\n"


def load_catalog(text: str, alg: Algebra | None = None) -> Catalog:
    """Inverse of :func:`dump_catalog`; checks the algebra hash."""
    lines = text.splitlines()
    if not lines or lines[0] != f"icelab-catalog {FORMAT_VERSION}":
        raise ValueError("not an icelab catalog cache (or wrong version)")
    pos = 1

    def take(prefix: str) -> str:
        nonlocal pos
        line = lines[pos]
        if not line.startswith(prefix):
            raise ValueError(f"cache line {pos + 1}: expected {prefix!r}")
        pos += 1
        return line[len(prefix) :].lstrip(" ")

    digest = take("algebra")
    dim_bound = int(take("dim_bound"))
    alg_lines = []
    while lines[pos].startswith("alg "):
        alg_lines.append(lines[pos][4:])
        pos += 1
    stored = parse_algebra("\n".join(alg_lines) + "\n")
    if stored.digest() != digest:
        raise ValueError("cache algebra text does not match its hash")
    if alg is not None and alg.digest() != digest:
        raise ValueError("cache belongs to a different algebra")
    alg = stored if alg is None else alg
    p = alg.p
    count = int(take("entries"))
    modules, labels = [], []
    for _ in range(count):
        _, label, dims = take("entry").split(" ")
        dims_t = tuple(int(x) for x in dims.split(","))
        mats = []
        for _k in alg.arrows:
            _, shape, digits = take("mat").split(" ")
            r, c = (int(x) for x in shape.split("x"))
            mats.append(_undigits(digits, r, c, p))
        modules.append(Module(alg, dims_t, mats))
        labels.append(label)

    def table() -> np.ndarray:
        nonlocal pos
        rows = [[int(x) for x in lines[pos + r].split()] for r in range(count)]
        pos += count
        return np.array(rows, dtype=np.int64).reshape(count, count)

    take("table hom")
    dim_hom = table()
    take("table ext1")
    dim_ext1 = table()

    def opts(s: str) -> tuple[int | None, ...]:
        return tuple(None if x == "-" else int(x) for x in s.split())

    tau_l = opts(take("tau "))
    tau_inv = opts(take("tau_inverse"))
    proj = tuple(x == "1" for x in take("projective").split())
    inj = tuple(x == "1" for x in take("injective").split())
    middles: list = [None] * count
    while lines[pos].startswith("ar "):
        parts = lines[pos].split()
        middles[int(parts[1])] = tuple(tuple(int(y) for y in x.split(":")) for x in parts[2:])
        pos += 1
    transcript = []
    while lines[pos].startswith("transcript "):
        transcript.append(lines[pos][len("transcript ") :])
        pos += 1
    if lines[pos] != "end":
        raise ValueError(f"cache line {pos + 1}: expected 'end'")
    return Catalog(
        alg=alg,
        dim_bound=dim_bound,
        modules=tuple(modules),
        labels=tuple(labels),
        dim_hom=dim_hom,
        dim_ext1=dim_ext1,
        tau=tau_l,
        tau_inverse=tau_inv,
        is_projective=proj,
        is_injective=inj,
        ar_middle=tuple(middles),
        transcript=tuple(transcript),
    )


def check_tables(cat: Catalog) -> list[str]:
    """Recompute every stored table entry; returns a list of discrepancies."""
    bad = []
    for i, a in enumerate(cat.modules):
        for j, b in enumerate(cat.modules):
            if hom_dim(a, b) != cat.dim_hom[i, j]:
                bad.append(f"hom {cat.labels[i]} {cat.labels[j]}")
            if ar.ext1(a, b).dim != cat.dim_ext1[i, j]:
                bad.append(f"ext1 {cat.labels[i]} {cat.labels[j]}")
    return bad
