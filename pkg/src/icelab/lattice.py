"""The lattice of torsion-free classes, its covers, and pop operators on intervals."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import reduce

from .catalog import Catalog
from .errors import CapExceeded, PreconditionError, VerificationError
from .module import DEFAULT_CAP
from .subcat import Interval, SubcatSet, closure, heart
from .tilting import enumerate_tau_inv_rigid, is_cogen_minimal


def _order(s: SubcatSet) -> tuple:
    return len(s), sorted(s)


@dataclass
class TorfLattice:
    cat: Catalog
    members: tuple[SubcatSet, ...]
    up: dict[SubcatSet, tuple[SubcatSet, ...]]
    down: dict[SubcatSet, tuple[SubcatSet, ...]]
    _set: frozenset = field(default=frozenset(), repr=False)

    def __post_init__(self):
        self._set = frozenset(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, f) -> bool:
        return frozenset(f) in self._set

    def __iter__(self):
        return iter(self.members)

    @property
    def bottom(self) -> SubcatSet:
        return self.members[0]

    @property
    def top(self) -> SubcatSet:
        return self.members[-1]

    def _check(self, *fs) -> None:
        for f in fs:
            if frozenset(f) not in self._set:
                raise PreconditionError(f"{self.cat.label_of(f)} is not torsion-free")

    def meet(self, f, g) -> SubcatSet:
        self._check(f, g)
        return frozenset(f) & frozenset(g)

    def join(self, f, g) -> SubcatSet:
        self._check(f, g)
        return closure(self.cat, frozenset(f) | frozenset(g), "torf")

    def join_all(self, fs) -> SubcatSet:
        return reduce(self.join, fs, self.bottom)

    def meet_all(self, fs) -> SubcatSet:
        return reduce(self.meet, fs, self.top)

    def covers_up(self, f) -> tuple[SubcatSet, ...]:
        self._check(f)
        return self.up[frozenset(f)]

    def covers_down(self, f) -> tuple[SubcatSet, ...]:
        self._check(f)
        return self.down[frozenset(f)]

    def interval(self, lo, hi) -> Interval:
        self._check(lo, hi)
        return Interval(frozenset(lo), frozenset(hi))

    def intervals(self) -> list[Interval]:
        return [Interval(a, b) for a in self.members for b in self.members if a <= b]

    def pop(self, i: Interval, side: str) -> SubcatSet:
        self._check(i.lo, i.hi)
        if side == "up":
            return self.join_all([i.lo, *(c for c in self.up[i.lo] if c <= i.hi)])
        if side == "down":
            return self.meet_all([i.hi, *(c for c in self.down[i.hi] if c >= i.lo)])
        raise ValueError(f"unknown side {side!r}")

    def is_wide_interval(self, i: Interval) -> bool:
        return self.pop(i, "up") == i.hi

    def is_maximal_join_in(self, j: Interval, i: Interval) -> bool:
        if not i.contains(j):
            raise PreconditionError("inner interval is not contained in the outer one")
        return self.pop(Interval(j.lo, i.hi), "up") == j.hi

    def heart(self, i: Interval) -> SubcatSet:
        return heart(self.cat, i)

    def export_dot(self) -> str:
        cat = self.cat
        name = {f: f"n{k}" for k, f in enumerate(self.members)}
        lines = ["digraph torf {", "  rankdir=BT;"]
        for f in self.members:
            label = ",".join(cat.labels[i] for i in sorted(f)) or "0"
            lines.append(f'  {name[f]} [label="{{{label}}}"];')
        for f in self.members:
            for g in self.up[f]:
                lines.append(f"  {name[f]} -> {name[g]};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    @property
    def edge_count(self) -> int:
        return sum(len(v) for v in self.up.values())


def _hasse(members: list[SubcatSet]) -> tuple[dict, dict]:
    up: dict = {f: [] for f in members}
    down: dict = {f: [] for f in members}
    for f in members:
        above = [g for g in members if f < g]
        for g in above:
            if not any(f < h < g for h in above):
                up[f].append(g)
                down[g].append(f)
    return ({k: tuple(sorted(v, key=_order)) for k, v in up.items()}, {k: tuple(sorted(v, key=_order)) for k, v in down.items()})


def _make(cat: Catalog, classes) -> TorfLattice:
    members = sorted(set(classes), key=_order)
    up, down = _hasse(members)
    return TorfLattice(cat, tuple(members), up, down)


def torf_by_rigid(cat: Catalog, threads: int = 1) -> list[SubcatSet]:
    """Cogen of every cogen-minimal τ⁻¹-rigid module."""
    rigid = [r for r in enumerate_tau_inv_rigid(cat) if is_cogen_minimal(cat, r.members)]
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(lambda r: r.cogen, rigid))
    return [r.cogen for r in rigid]


def torf_by_subsets(cat: Catalog, cap: int = DEFAULT_CAP) -> list[SubcatSet]:
    """Oracle: fixpoints of the torsion-free closure over all subsets."""
    n = len(cat)
    if 2**n > cap:
        raise CapExceeded(f"2^{n} subsets exceed cap {cap}")
    out = set()
    for mask in range(2**n):
        s = frozenset(i for i in range(n) if mask >> i & 1)
        if closure(cat, s, "torf") == s:
            out.add(s)
    return sorted(out, key=_order)


def enumerate_torf(cat: Catalog, oracle: bool = False, cap: int = DEFAULT_CAP, threads: int = 1) -> TorfLattice:
    classes = torf_by_rigid(cat, threads)
    if len(set(classes)) != len(classes):
        raise VerificationError("distinct cogen-minimal modules share a torsion-free class")
    if oracle:
        other = torf_by_subsets(cat, cap)
        if set(other) != set(classes):
            raise VerificationError("torsion-free classes disagree with the subset oracle")
    return _make(cat, classes)


def lattice_of(cat: Catalog) -> TorfLattice:
    """Memoised lattice for a catalog."""
    key = ("torf_lattice",)
    if key not in cat.cache:
        cat.cache[key] = enumerate_torf(cat)
    return cat.cache[key]
