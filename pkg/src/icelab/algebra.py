"""Bound quiver algebras over F_p and the text format that describes them.

Conventions: representations are covariant, and a path ``a*b`` means
"first a, then b".  The quotient ``kQ/I`` is computed by linear algebra on
spans of paths, one (source, target) pair at a time.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import field
from .errors import AlgebraError, AlgebraSyntaxError

MAX_TRUNCATION = 48

Path = tuple[int, tuple[int, ...]]  # (start vertex index, arrow indices)


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class Relation:
    terms: tuple[tuple[int, tuple[str, ...]], ...]

    def __str__(self) -> str:
        return " + ".join(f"{c}*{'*'.join(path)}" for c, path in self.terms)


@dataclass(frozen=True)
class Algebra:
    p: int
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        if not field.is_prime(self.p):
            raise AlgebraError(f"characteristic {self.p} is not prime")
        if not self.vertices:
            raise AlgebraError("algebra has no vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex label")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise AlgebraError("duplicate arrow label")
        for a in self.arrows:
            for end in (a.source, a.target):
                if end not in self.vertices:
                    raise AlgebraError(f"undeclared vertex {end!r} in arrow {a.label!r}")
        for rel in self.relations:
            ends = {self._path_ends(path) for _, path in rel.terms}
            if len(ends) != 1:
                raise AlgebraError(f"relation {rel} mixes paths with different endpoints")

    def _path_ends(self, path: tuple[str, ...]) -> tuple[str, str]:
        arrows = {a.label: a for a in self.arrows}
        if len(path) < 2:
            raise AlgebraError(f"relation path {'*'.join(path)!r} has length < 2")
        for lab in path:
            if lab not in arrows:
                raise AlgebraError(f"unknown arrow {lab!r} in relation")
        for x, y in zip(path, path[1:]):
            if arrows[x].target != arrows[y].source:
                raise AlgebraError(f"non-composable relation path {'*'.join(path)!r}")
        return arrows[path[0]].source, arrows[path[-1]].target

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_index(self, label: str) -> int:
        return self.vertices.index(label)

    @cached_property
    def arrow_ends(self) -> tuple[tuple[int, int], ...]:
        return tuple((self.vertex_index(a.source), self.vertex_index(a.target)) for a in self.arrows)

    @cached_property
    def paths(self) -> "PathAlgebra":
        return PathAlgebra(self)

    def to_text(self) -> str:
        lines = [f"field {self.p}"]
        lines += [f"vertex {v}" for v in self.vertices]
        lines += [f"arrow {a.label} {a.source} {a.target}" for a in self.arrows]
        lines += [f"relation {rel}" for rel in self.relations]
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()

    def with_field(self, p: int) -> "Algebra":
        rels = tuple(Relation(tuple((c % p, path) for c, path in r.terms)) for r in self.relations)
        return Algebra(p, self.vertices, self.arrows, rels)


class PathAlgebra:
    """Normal-form basis of ``e_i Λ e_j`` (paths i → j modulo relations)."""

    def __init__(self, alg: Algebra):
        self.alg = alg
        self.p = alg.p
        self.truncation = self._find_truncation()
        self._spaces = self._build(self.truncation)

    # paths of length < n starting anywhere, grouped by (source, target)
    def _paths_below(self, n: int) -> dict[tuple[int, int], list[Path]]:
        ends = self.alg.arrow_ends
        out: dict[tuple[int, int], list[Path]] = {}
        frontier = [(v, ()) for v in range(self.alg.n)]
        length = 0
        while frontier and length < n:
            nxt = []
            for start, arrows in frontier:
                tgt = ends[arrows[-1]][1] if arrows else start
                out.setdefault((start, tgt), []).append((start, arrows))
                for k, (s, _) in enumerate(ends):
                    if s == tgt:
                        nxt.append((start, arrows + (k,)))
            frontier = nxt
            length += 1
        return out

    def _is_acyclic(self) -> bool:
        succ = {v: set() for v in range(self.alg.n)}
        for s, t in self.alg.arrow_ends:
            succ[s].add(t)
        state: dict[int, int] = {}

        def visit(v: int) -> bool:
            state[v] = 1
            for w in succ[v]:
                if state.get(w) == 1 or (w not in state and not visit(w)):
                    return False
            state[v] = 2
            return True

        return all(visit(v) for v in range(self.alg.n) if v not in state)

    def _find_truncation(self) -> int:
        if self._is_acyclic():
            return self.alg.n + 1  # longer than any path
        for n in range(2, MAX_TRUNCATION):
            spaces = self._build(n + 1)
            if all(len(path[1]) < n for sp in spaces.values() for path in sp["basis"]):
                return n + 1
        raise AlgebraError("infinite-dimensional algebra detected (oriented cycle survives the relations)")

    def _relation_vectors(self) -> list[tuple[int, int, dict[tuple[int, ...], int]]]:
        index = {a.label: k for k, a in enumerate(self.alg.arrows)}
        out = []
        for rel in self.alg.relations:
            combo: dict[tuple[int, ...], int] = {}
            for c, path in rel.terms:
                key = tuple(index[x] for x in path)
                combo[key] = (combo.get(key, 0) + c) % self.p
            first = next(iter(combo))
            s = self.alg.arrow_ends[first[0]][0]
            t = self.alg.arrow_ends[first[-1]][1]
            out.append((s, t, combo))
        return out

    def _build(self, n: int) -> dict:
        p = self.p
        groups = self._paths_below(n)
        rels = self._relation_vectors()
        spaces = {}
        for (i, j), plist in groups.items():
            # descending (length, lex) so that pivots land on long paths
            cols = sorted(plist, key=lambda q: (-len(q[1]), q[1]))
            pos = {q: k for k, q in enumerate(cols)}
            gens = []
            for s, t, combo in rels:
                left = groups.get((i, s), [])
                right = groups.get((t, j), [])
                for lp in left:
                    for rp in right:
                        vec = field.zeros(1, len(cols))[0]
                        hit = False
                        for body, c in combo.items():
                            full = lp[1] + body + rp[1]
                            if len(full) < n:
                                vec[pos[(i, full)]] = (vec[pos[(i, full)]] + c) % p
                                hit = True
                        if hit and vec.any():
                            gens.append(vec)
            if gens:
                r, pivots = field.rref(np.array(gens), p)
                r = r[: len(pivots)]
            else:
                r, pivots = field.zeros(0, len(cols)), []
            basis = sorted((cols[k] for k in range(len(cols)) if k not in pivots), key=lambda q: (len(q[1]), q[1]))
            spaces[(i, j)] = {"cols": cols, "pos": pos, "rref": r, "pivots": pivots, "basis": basis}
        return spaces

    def basis(self, i: int, j: int) -> list[Path]:
        sp = self._spaces.get((i, j))
        return list(sp["basis"]) if sp else []

    def dim(self, i: int, j: int) -> int:
        return len(self.basis(i, j))

    def reduce(self, path: Path) -> np.ndarray:
        """Coordinates of a path in the normal-form basis of its (source, target) space."""
        start, arrows = path
        end = self.alg.arrow_ends[arrows[-1]][1] if arrows else start
        sp = self._spaces.get((start, end))
        basis = sp["basis"] if sp else []
        out = field.zeros(1, len(basis))[0]
        if sp is None or path not in sp["pos"]:
            return out  # longer than the truncation: zero in Λ
        col = sp["pos"][path]
        vec = field.zeros(1, len(sp["cols"]))[0]
        vec[col] = 1
        for row, pc in zip(sp["rref"], sp["pivots"]):
            if vec[pc]:
                vec = (vec - vec[pc] * row) % self.p
        for k, q in enumerate(basis):
            out[k] = vec[sp["pos"][q]]
        return out

    def compose(self, i: int, j: int, k: int, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product ``x*y`` of ``x ∈ e_iΛe_j`` and ``y ∈ e_jΛe_k`` (x first)."""
        bx, by = self.basis(i, j), self.basis(j, k)
        out = field.zeros(1, self.dim(i, k))[0]
        for a, pa in zip(x, bx):
            if not a:
                continue
            for b, pb in zip(y, by):
                if b:
                    out = (out + a * b * self.reduce((i, pa[1] + pb[1]))) % self.p
        return out

    def label(self, path: Path) -> str:
        start, arrows = path
        if not arrows:
            return f"e{self.alg.vertices[start]}"
        return "*".join(self.alg.arrows[k].label for k in arrows)

    def total_dim(self) -> int:
        return sum(len(sp["basis"]) for sp in self._spaces.values())


_TOKEN = re.compile(r"\S+")
_LABEL = re.compile(r"^[A-Za-z0-9_.']+$")
_INT = re.compile(r"^-?\d+$")


def parse_algebra(text: str, p: int | None = None) -> Algebra:
    """Parse the line-oriented algebra format.

    ``p`` overrides any ``field`` line.  Raises :class:`AlgebraSyntaxError`
    (with line and column) on malformed text and :class:`AlgebraError` on
    semantic problems such as undeclared vertices.
    """
    char = 2
    vertices: list[str] = []
    arrows: list[Arrow] = []
    rel_specs: list[tuple[int, int, str]] = []
    seen_field = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not toks:
            continue
        kw, kcol = toks[0]
        args = toks[1:]
        if kw == "field":
            if len(args) != 1 or not args[0][0].isdigit():
                raise AlgebraSyntaxError("expected 'field <prime>'", lineno, kcol)
            if seen_field:
                raise AlgebraSyntaxError("duplicate field line", lineno, kcol)
            char, seen_field = int(args[0][0]), True
        elif kw == "vertex":
            if len(args) != 1 or not _LABEL.match(args[0][0]):
                raise AlgebraSyntaxError("expected 'vertex <label>'", lineno, kcol)
            vertices.append(args[0][0])
        elif kw == "arrow":
            if len(args) != 3:
                raise AlgebraSyntaxError("expected 'arrow <label> <source> <target>'", lineno, kcol)
            (lab, lcol), (src, _), (tgt, _) = args
            if not _LABEL.match(lab) or _INT.match(lab):
                raise AlgebraSyntaxError(f"bad arrow label {lab!r}", lineno, lcol)
            arrows.append(Arrow(lab, src, tgt))
        elif kw == "relation":
            if not args:
                raise AlgebraSyntaxError("empty relation", lineno, kcol)
            rel_specs.append((lineno, args[0][1], line[args[0][1] - 1 :]))
        else:
            raise AlgebraSyntaxError(f"unknown keyword {kw!r}", lineno, kcol)
    if p is not None:
        char = p
    if not field.is_prime(char):
        raise AlgebraError(f"characteristic {char} is not prime")
    for a in arrows:
        for end in (a.source, a.target):
            if end not in vertices:
                raise AlgebraError(f"undeclared vertex {end!r} in arrow {a.label!r}")
    relations = tuple(_parse_relation(body, lineno, col, char) for lineno, col, body in rel_specs)
    return Algebra(char, tuple(vertices), tuple(arrows), relations)


def _parse_relation(body: str, lineno: int, col0: int, p: int) -> Relation:
    terms = []
    offset = 0
    for chunk in body.split("+"):
        stripped = chunk.strip()
        col = col0 + offset + (len(chunk) - len(chunk.lstrip()))
        offset += len(chunk) + 1
        if not stripped:
            raise AlgebraSyntaxError("empty term in relation", lineno, col)
        factors = [f.strip() for f in stripped.split("*")]
        if any(not f for f in factors):
            raise AlgebraSyntaxError("dangling '*' in relation term", lineno, col)
        coeff = 1
        if _INT.match(factors[0]):
            coeff = int(factors[0])
            factors = factors[1:]
        if not factors:
            raise AlgebraSyntaxError("relation term has no path", lineno, col)
        for f in factors:
            if not _LABEL.match(f) or _INT.match(f):
                raise AlgebraSyntaxError(f"bad arrow label {f!r} in relation", lineno, col)
        terms.append((coeff % p, tuple(factors)))
    return Relation(tuple(terms))


def load_algebra(path, p: int | None = None) -> Algebra:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read(), p)
