"""Cogen-preordered sequences, decreasing maximal-join interval sequences, ICE-sequences.

Indexing follows the usual convention: blocks and intervals are numbered
1..m, with I_{m+1} = [0, full].  An ICE-sequence of window length m stores
C(0), C(-1), ..., C(1-m); C(k) = 0 for k > 0 and C(k) = full for k <= -m.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Sequence

from .catalog import Catalog
from .errors import PreconditionError, VerificationError
from .lattice import TorfLattice
from .module import DEFAULT_CAP
from .subcat import Interval, SubcatSet, cogen, heart, is_ice_bounded, is_tors_in, perp, star, wl_operator
from .tilting import injectives_of_torf, is_tau_inv_rigid, tau_perp


class Label(IntEnum):
    NOT_RIGID = 0
    PREORDERED = 1
    WEAKLY_COGEN = 2
    COGEN_PREORDERED = 3
    COGEN_ORDERED = 4

    def __str__(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class PreorderedSeq:
    blocks: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, *blocks: Iterable[int]) -> "PreorderedSeq":
        return cls(tuple(frozenset(b) for b in blocks))

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def union(self) -> frozenset[int]:
        return frozenset().union(*self.blocks)

    def geq(self, k: int) -> frozenset[int]:
        """Δ_{≥k} (1-indexed)."""
        return frozenset().union(*self.blocks[k - 1 :])

    def gt(self, k: int) -> frozenset[int]:
        return frozenset().union(*self.blocks[k:])

    def block_of(self, y: int) -> int:
        for k, b in enumerate(self.blocks, 1):
            if y in b:
                return k
        raise KeyError(y)

    def suffix(self, k: int) -> "PreorderedSeq":
        return PreorderedSeq(self.blocks[k - 1 :])

    def render(self, cat: Catalog) -> str:
        return "(" + ", ".join(cat.label_of(b) for b in self.blocks) + ")"


@dataclass(frozen=True)
class IntervalSeq:
    intervals: tuple[Interval, ...]

    @property
    def m(self) -> int:
        return len(self.intervals)

    def at(self, k: int, full: SubcatSet) -> Interval:
        """I_k, with I_{m+1} = [0, full]."""
        if k == self.m + 1:
            return Interval(frozenset(), full)
        return self.intervals[k - 1]

    @property
    def minima(self) -> tuple[SubcatSet, ...]:
        return tuple(i.lo for i in self.intervals)

    def render(self, cat: Catalog) -> str:
        return "(" + ", ".join(f"[{cat.label_of(i.lo)}, {cat.label_of(i.hi)}]" for i in self.intervals) + ")"


@dataclass(frozen=True)
class IceSeq:
    window: tuple[SubcatSet, ...]  # C(0), C(-1), ..., C(1-ℓ)

    @property
    def length(self) -> int:
        return len(self.window)

    def at(self, k: int, full: SubcatSet) -> SubcatSet:
        if k > 0:
            return frozenset()
        if -k >= len(self.window):
            return full
        return self.window[-k]

    def normalized(self, full: SubcatSet) -> tuple[SubcatSet, ...]:
        """Window with trailing full entries removed (they repeat the convention)."""
        w = list(self.window)
        while w and w[-1] == full:
            w.pop()
        return tuple(w)

    def render(self, cat: Catalog) -> str:
        return "[" + ", ".join(f"C({-k})={cat.label_of(c)}" for k, c in enumerate(self.window)) + "]"


# ---------------------------------------------------------------- cogen-preordered sequences


def validate_sequence(cat: Catalog, seq: PreorderedSeq) -> Label:
    seen: set[int] = set()
    for b in seq.blocks:
        if seen & b:
            raise PreconditionError("blocks overlap")
        seen |= b
    if not is_tau_inv_rigid(cat, seen):
        return Label.NOT_RIGID
    for k, b in enumerate(seq.blocks, 1):
        if b & cogen(cat, seq.gt(k)):
            return Label.PREORDERED
    for k, b in enumerate(seq.blocks, 1):
        ge = seq.geq(k)
        if any(y in cogen(cat, ge - {y}) for y in b):
            return Label.WEAKLY_COGEN
    if all(len(b) <= 1 for b in seq.blocks):
        return Label.COGEN_ORDERED
    return Label.COGEN_PREORDERED


def orderings(seq: PreorderedSeq) -> list[PreorderedSeq]:
    """Refinements into singleton blocks that keep the block order."""
    perms = [list(itertools.permutations(sorted(b))) for b in seq.blocks]
    out = []
    for choice in itertools.product(*perms):
        out.append(PreorderedSeq(tuple(frozenset({y}) for part in choice for y in part)))
    return out


def characterization_check(cat: Catalog, seq: PreorderedSeq) -> bool:
    """Whether each block is the new split injectives of Cogen Δ_{≥k} over Cogen Δ_{>k}."""
    for k, b in enumerate(seq.blocks, 1):
        inj = injectives_of_torf(cat, cogen(cat, seq.geq(k)), "split")
        if b != inj - cogen(cat, seq.gt(k)):
            return False
    return True


def _require(cat: Catalog, seq: PreorderedSeq) -> None:
    lab = validate_sequence(cat, seq)
    if lab < Label.COGEN_PREORDERED:
        raise PreconditionError(f"{seq.render(cat)} is {lab}, not cogen-preordered")


def phi(cat: Catalog, lat: TorfLattice, seq: PreorderedSeq) -> IntervalSeq:
    _require(cat, seq)
    out = IntervalSeq(tuple(Interval(cogen(cat, seq.geq(j)), tau_perp(cat, seq.geq(j))) for j in range(1, seq.m + 1)))
    if not is_decreasing_maxjoin(lat, out):
        raise VerificationError(f"φ{seq.render(cat)} is not decreasing maximal-join")
    return out


# ---------------------------------------------------------------- interval sequences


def is_decreasing_maxjoin(lat: TorfLattice, seq: IntervalSeq) -> bool:
    full = lat.top
    for k in range(1, seq.m + 1):
        j, i = seq.at(k, full), seq.at(k + 1, full)
        if j.lo not in lat or j.hi not in lat or not i.contains(j):
            return False
        if not lat.is_maximal_join_in(j, i):
            return False
    return True


def psi(cat: Catalog, lat: TorfLattice, seq: IntervalSeq) -> PreorderedSeq:
    if not is_decreasing_maxjoin(lat, seq):
        raise PreconditionError(f"{seq.render(cat)} is not decreasing maximal-join")
    full = lat.top
    blocks = tuple(injectives_of_torf(cat, seq.at(k, full).lo, "split") - seq.at(k + 1, full).lo for k in range(1, seq.m + 1))
    out = PreorderedSeq(blocks)
    if validate_sequence(cat, out) < Label.COGEN_PREORDERED:
        raise VerificationError(f"ψ{seq.render(cat)} is not cogen-preordered")
    for k in range(1, seq.m + 1):
        if seq.at(k, full) != Interval(cogen(cat, out.geq(k)), tau_perp(cat, out.geq(k))):
            raise VerificationError(f"ψ{seq.render(cat)} does not recover I_{k}")
    return out


# ---------------------------------------------------------------- ICE-sequences


def nu(cat: Catalog, lat: TorfLattice, seq: IntervalSeq) -> IceSeq:
    if not is_decreasing_maxjoin(lat, seq):
        raise PreconditionError(f"{seq.render(cat)} is not decreasing maximal-join")
    full = lat.top
    return IceSeq(tuple(heart(cat, Interval(seq.at(j, full).lo, seq.at(j + 1, full).hi)) for j in range(1, seq.m + 1)))


def _reconstruct(cat: Catalog, lat: TorfLattice, s: IceSeq, wl: str = "heart", cap: int = DEFAULT_CAP) -> IntervalSeq:
    """Reverse induction from I_{m+1} = [0, full].

    F_k = (C(1-k)^⊥ ∩ W) * F_{k+1} with W = W_L(C(-k)), then
    I_k^+ = pop-up of [F_k, I_{k+1}^+].  W is the heart of I_{k+1} (exact)
    or, with wl="bounded", the bounded W_L operator.
    """
    full = lat.top
    m = s.length
    below = Interval(frozenset(), full)
    out: list[Interval] = []
    for k in range(m, 0, -1):
        w = heart(cat, below) if wl == "heart" else wl_operator(cat, s.at(-k, full), cap=cap)
        g = perp(cat, s.at(1 - k, full), "right") & w
        f = star(cat, g, below.lo)
        if f not in lat or not below.lo <= f <= below.hi:
            raise VerificationError(f"minimum F_{k} = {cat.label_of(f)} is not a torsion-free class in I_{k + 1}")
        below = Interval(f, lat.pop(Interval(f, below.hi), "up"))
        out.append(below)
    return IntervalSeq(tuple(reversed(out)))


def ice_minima(cat: Catalog, lat: TorfLattice, s: IceSeq, wl: str = "heart", cap: int = DEFAULT_CAP) -> list[SubcatSet]:
    """[F_1, ..., F_{m+1}] with F_{m+1} = 0."""
    return [*_reconstruct(cat, lat, s, wl, cap).minima, frozenset()]


def nu_inverse(cat: Catalog, lat: TorfLattice, s: IceSeq) -> IntervalSeq:
    out = _reconstruct(cat, lat, s)
    if nu(cat, lat, out) != s:
        raise VerificationError(f"{s.render(cat)} is not in the image of ν")
    return out


def tf_to_ice(cat: Catalog, seq: PreorderedSeq) -> IceSeq:
    """C(k) = (τ⁻¹Δ_{>1-k})^⊥ ∩ ⊥Δ_{≥1-k} on the window."""
    _require(cat, seq)
    return IceSeq(tuple(tau_perp(cat, seq.gt(j)) & perp(cat, seq.geq(j), "left") for j in range(1, seq.m + 1)))


def ice_to_tf(cat: Catalog, lat: TorfLattice, s: IceSeq) -> PreorderedSeq:
    f = ice_minima(cat, lat, s)
    out = PreorderedSeq(tuple(injectives_of_torf(cat, f[k], "split") - f[k + 1] for k in range(s.length)))
    if tf_to_ice(cat, out) != s:
        raise VerificationError(f"{s.render(cat)} is not in the image of the composite")
    return out


# ---------------------------------------------------------------- enumeration


def enumerate_cogen_preordered(cat: Catalog, m: int, rigid: Sequence[frozenset[int]] | None = None) -> list[PreorderedSeq]:
    from .tilting import enumerate_tau_inv_rigid

    sets = [r.members for r in enumerate_tau_inv_rigid(cat)] if rigid is None else rigid
    out = []
    for x in sets:
        items = sorted(x)
        if m == 0 and items:
            continue
        for assign in itertools.product(range(m), repeat=len(items)):
            seq = PreorderedSeq(tuple(frozenset(y for y, a in zip(items, assign) if a == k) for k in range(m)))
            if validate_sequence(cat, seq) >= Label.COGEN_PREORDERED:
                out.append(seq)
    return out


def enumerate_maxjoin(lat: TorfLattice, m: int) -> list[IntervalSeq]:
    """Depth first from I_{m+1} = [0, full]; each minimum determines its maximum."""
    out: list[IntervalSeq] = []

    def grow(suffix: list[Interval], outer: Interval):
        if len(suffix) == m:
            out.append(IntervalSeq(tuple(suffix)))
            return
        for f in lat.members:
            if outer.lo <= f <= outer.hi:
                inner = Interval(f, lat.pop(Interval(f, outer.hi), "up"))
                grow([inner, *suffix], inner)

    grow([], Interval(lat.bottom, lat.top))
    return out


def _subsets(w: Sequence[int]) -> Iterable[frozenset[int]]:
    for r in range(len(w) + 1):
        for c in itertools.combinations(w, r):
            yield frozenset(c)


def enumerate_ice_seqs(cat: Catalog, m: int, mult_bound: int = 1, cap: int = DEFAULT_CAP) -> list[IceSeq]:
    """Windows C(0..1-m) with C(-m) = full and C(k+1) a torsion class of W_L(C(k)).

    W_L and ICE-ness use the bounded operators.
    """
    full = cat.full
    out: list[IceSeq] = []

    def tors_in(w: SubcatSet) -> list[SubcatSet]:
        key = ("tors_in", w)
        if key not in cat.cache:
            cat.cache[key] = [t for t in _subsets(sorted(w)) if is_tors_in(cat, t, w, cap)]
        return cat.cache[key]

    def grow(deep: list[SubcatSet], c: SubcatSet):
        if len(deep) == m:
            out.append(IceSeq(tuple(reversed(deep))))
            return
        for t in tors_in(wl_operator(cat, c, cap=cap)):
            if is_ice_bounded(cat, t, mult_bound, cap):
                grow([*deep, t], t)

    grow([], full)
    out.sort(key=lambda s: [sorted(c) for c in s.window])
    return out


KINDS = ("cogen_preordered", "maxjoin_seqs", "ice_seqs")


def enumerate_kind(cat: Catalog, lat: TorfLattice, kind: str, m: int, mult_bound: int = 1, cap: int = DEFAULT_CAP) -> list:
    if m < 0:
        raise PreconditionError("m must be non-negative")
    if kind == "cogen_preordered":
        return enumerate_cogen_preordered(cat, m)
    if kind == "maxjoin_seqs":
        return enumerate_maxjoin(lat, m)
    if kind == "ice_seqs":
        return enumerate_ice_seqs(cat, m, mult_bound, cap)
    raise PreconditionError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


# ---------------------------------------------------------------- verification


@dataclass
class Check:
    name: str
    ok: bool
    witness: str = ""

    def line(self) -> str:
        s = f"CHECK {self.name} {'PASS' if self.ok else 'FAIL'}"
        return f"{s} {self.witness}" if self.witness else s


@dataclass
class Report:
    header: list[str]
    checks: list[Check]

    @property
    def passed(self) -> int:
        return sum(c.ok for c in self.checks)

    @property
    def ok(self) -> bool:
        return self.passed == len(self.checks)

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    def render(self) -> str:
        lines = [f"# {h}" for h in self.header]
        lines += [c.line() for c in self.checks]
        lines.append(f"SUMMARY {self.passed}/{len(self.checks)}")
        return "\n".join(lines) + "\n"


def _first_failure(items, test, show) -> str | None:
    for x in items:
        try:
            ok = test(x)
        except (VerificationError, PreconditionError) as e:
            return f"{show(x)}: {e}"
        if not ok:
            return show(x)
    return None


def _check(name: str, items, test, show=str) -> Check:
    w = _first_failure(items, test, show)
    return Check(name, w is None, w or "")


def verify_bijections(cat: Catalog, lat: TorfLattice, m: int, mult_bound: int = 1, cap: int = DEFAULT_CAP, ice_census: bool = True) -> Report:
    rs = lambda x: x.render(cat)  # noqa: E731
    cps = enumerate_cogen_preordered(cat, m)
    mjs = enumerate_maxjoin(lat, m)
    checks: list[Check] = []
    phis: dict[PreorderedSeq, IntervalSeq] = {}

    def phi_ok(d):
        phis[d] = phi(cat, lat, d)
        return True

    checks.append(_check(f"m={m}:phi_lands_in_maxjoin", cps, phi_ok, rs))
    checks.append(_check(f"m={m}:psi_after_phi", cps, lambda d: d in phis and psi(cat, lat, phis[d]) == d, rs))
    checks.append(_check(f"m={m}:phi_after_psi", mjs, lambda j: phi(cat, lat, psi(cat, lat, j)) == j, rs))
    checks.append(Check(f"m={m}:counts", len(cps) == len(mjs) and set(phis.values()) == set(mjs), f"cogen_preordered={len(cps)} maxjoin={len(mjs)}"))
    checks.append(_check(f"m={m}:tf_to_ice_is_nu_phi", cps, lambda d: tf_to_ice(cat, d) == nu(cat, lat, phis[d]), rs))
    checks.append(_check(f"m={m}:ice_to_tf_after_tf_to_ice", cps, lambda d: ice_to_tf(cat, lat, tf_to_ice(cat, d)) == d, rs))
    images: dict[IceSeq, IntervalSeq] = {}
    clash = None
    for j in mjs:
        s = nu(cat, lat, j)
        if s in images and clash is None:
            clash = f"{rs(j)} and {rs(images[s])}"
        images.setdefault(s, j)
    checks.append(Check(f"m={m}:nu_injective", clash is None, clash or ""))
    checks.append(_check(f"m={m}:nu_inverse_after_nu", mjs, lambda j: nu_inverse(cat, lat, nu(cat, lat, j)) == j, rs))
    checks.append(_check(f"m={m}:minima_recursion", mjs, lambda j: ice_minima(cat, lat, nu(cat, lat, j))[:-1] == list(j.minima), rs))

    def wl_is_heart(j: IntervalSeq) -> bool:
        s = nu(cat, lat, j)
        return all(wl_operator(cat, s.at(-k, lat.top), cap=cap) == heart(cat, j.at(k + 1, lat.top)) for k in range(j.m))

    checks.append(_check(f"m={m}:wl_equals_heart", mjs, wl_is_heart, rs))
    checks.append(_check(f"m={m}:nu_image_ice", images, lambda s: all(is_ice_bounded(cat, c, mult_bound, cap) for c in s.window), rs))
    if ice_census:
        seqs = enumerate_ice_seqs(cat, m, mult_bound, cap)
        checks.append(Check(f"m={m}:ice_seqs_census", set(seqs) == set(images), f"count={len(seqs)} nu_images={len(images)}"))
    return Report([], checks)


def report_header(cat: Catalog, mult_bound: int) -> list[str]:
    return [
        f"algebra {cat.alg.digest()[:16]} p={cat.p} vertices={cat.alg.n} catalog={len(cat)} dim_bound={cat.dim_bound}",
        "assumption: every subcategory is functorially finite (finite certified catalog)",
        f"bounded: ICE and W_L tests quantify over targets with multiplicity <= {mult_bound}",
    ]


__all__ = [
    "Check",
    "IceSeq",
    "IntervalSeq",
    "KINDS",
    "Label",
    "PreorderedSeq",
    "Report",
    "characterization_check",
    "enumerate_cogen_preordered",
    "enumerate_ice_seqs",
    "enumerate_kind",
    "enumerate_maxjoin",
    "ice_minima",
    "ice_to_tf",
    "is_decreasing_maxjoin",
    "nu",
    "nu_inverse",
    "orderings",
    "phi",
    "psi",
    "report_header",
    "tf_to_ice",
    "validate_sequence",
    "verify_bijections",
]
