"""Exhaustive property suites over a catalog, reported as CHECK lines.

Each suite returns a list of Check records; the first counterexample found
becomes the witness.  All suites are deterministic.
"""

from __future__ import annotations

import itertools

from . import ar
from .catalog import Catalog
from .lattice import TorfLattice, torf_by_subsets
from .module import DEFAULT_CAP, is_isomorphic
from .sequences import Check, Label, PreorderedSeq, _check, characterization_check, orderings, phi, psi, validate_sequence
from .subcat import Interval, SubcatSet, ap_extend, ap_restrict, closure, cogen, ext_closure, heart, is_wide_bounded, perp, star
from .tilting import (
    enumerate_relative_rigid,
    enumerate_tau_inv_rigid,
    injectives_of_torf,
    is_cogen_minimal,
    is_relative_tau_inv_rigid,
    is_tau_inv_rigid,
    jperp,
    lift_through_reduction,
    reduce_pair,
    reduction_domain,
    relative_tau_perp,
    split_by_monomorphisms,
    tau_perp,
)


def is_torf_in(cat: Catalog, g: SubcatSet, w: SubcatSet) -> bool:
    """Torsion-free class of a wide subcategory w (subobjects in w are monos in mod)."""
    return g <= w and cogen(cat, g) & w == g and ext_closure(cat, g) == g


def _subsets(w) -> list[SubcatSet]:
    w = sorted(w)
    return [frozenset(c) for r in range(len(w) + 1) for c in itertools.combinations(w, r)]


# ---------------------------------------------------------------- AR layer


def ar_checks(cat: Catalog) -> list[Check]:
    lab = cat.labels
    mods = cat.modules
    n = len(cat)
    pairs = [(z, x) for z in range(n) for x in range(n)]

    def syzygy(pair):
        z, x = pair
        return ar.ext1(mods[z], mods[x]).dim == cat.dim_ext1[z, x]

    def formula_proj(pair):
        z, x = pair
        t = cat.tau_inverse[x]
        want = 0 if t is None else ar.dim_hom_mod_projectives(mods[t], mods[z])
        return cat.dim_ext1[z, x] == want

    def formula_inj(pair):
        z, x = pair
        t = cat.tau[z]
        want = 0 if t is None else ar.dim_hom_mod_injectives(mods[x], mods[t])
        return cat.dim_ext1[z, x] == want

    def round_trip(x):
        t = ar.tau(mods[x], "inverse")
        return is_isomorphic(ar.tau(t, "forward"), mods[x])

    show = lambda pr: f"({lab[pr[0]]},{lab[pr[1]]})"  # noqa: E731
    non_inj = [x for x in range(n) if not cat.is_injective[x]]
    return [
        _check("ext1_syzygy_matches_table", pairs, syzygy, show),
        _check("ar_formula_mod_projectives", pairs, formula_proj, show),
        _check("ar_formula_mod_injectives", pairs, formula_inj, show),
        _check("tau_after_tau_inverse", non_inj, round_trip, lambda x: lab[x]),
    ]


# ---------------------------------------------------------------- lattice and intervals


def lattice_checks(cat: Catalog, lat: TorfLattice, cap: int = DEFAULT_CAP, oracle: bool = True) -> list[Check]:
    rs = lambda i: f"[{cat.label_of(i.lo)}, {cat.label_of(i.hi)}]"  # noqa: E731
    out = []
    if oracle and 2 ** len(cat) <= cap:
        other = torf_by_subsets(cat, cap)
        out.append(Check("torf_matches_subset_oracle", set(other) == set(lat.members), f"rigid={len(lat)} subsets={len(other)}"))
    ivs = lat.intervals()
    out.append(_check("pop_up_iff_pop_down", ivs, lambda i: (lat.pop(i, "up") == i.hi) == (lat.pop(i, "down") == i.lo), rs))
    out.append(_check("pop_matches_bounded_wideness", ivs, lambda i: lat.is_wide_interval(i) == is_wide_bounded(cat, heart(cat, i), cap=cap), rs))
    wide = [i for i in ivs if lat.is_wide_interval(i)]

    def round_trips(i: Interval) -> bool:
        h = heart(cat, i)
        inside = [f for f in lat if i.lo <= f <= i.hi]
        if any(ap_extend(cat, i, ap_restrict(cat, i, f), cap) != f for f in inside):
            return False
        heart_torf = [g for g in _subsets(h) if is_torf_in(cat, g, h)]
        if sorted(map(sorted, heart_torf)) != sorted(sorted(ap_restrict(cat, i, f)) for f in inside):
            return False
        return all(ap_restrict(cat, i, ap_extend(cat, i, g, cap)) == g for g in heart_torf)

    def lemma_identity(i: Interval) -> bool:
        h = heart(cat, i)
        for f in (f for f in lat if i.lo <= f <= i.hi):
            g = perp(cat, heart(cat, Interval(f, i.hi)), "right") & h
            if star(cat, g, i.lo) != f or closure(cat, g | i.lo, "torf", cap) & i.hi != f:
                return False
        return True

    out.append(_check("restrict_extend_round_trips", wide, round_trips, rs))
    out.append(_check("minimum_from_heart_identity", wide, lemma_identity, rs))

    def torsion_pair(f: SubcatSet) -> bool:
        t = perp(cat, f, "left")
        return closure(cat, t, "tors", cap) == t and perp(cat, t, "right") == f

    out.append(_check("torsion_pair_round_trip", lat.members, torsion_pair, cat.label_of))
    pairs = [(f, g) for f in lat for g in lat]
    out.append(
        _check(
            "perp_reverses_order",
            pairs,
            lambda fg: (fg[0] <= fg[1]) == (perp(cat, fg[1], "left") <= perp(cat, fg[0], "left")),
            lambda fg: f"{cat.label_of(fg[0])} {cat.label_of(fg[1])}",
        )
    )
    return out


# ---------------------------------------------------------------- rigid modules


def tilting_checks(cat: Catalog, lat: TorfLattice, definitional: bool = True, cap: int = DEFAULT_CAP) -> list[Check]:
    rigid = enumerate_tau_inv_rigid(cat)
    minimal = [r for r in rigid if is_cogen_minimal(cat, r.members)]
    cl = cat.label_of
    out = [
        Check(
            "cogen_bijection_minimal_to_torf",
            len({r.cogen for r in minimal}) == len(minimal) and {r.cogen for r in minimal} == set(lat.members),
            f"minimal={len(minimal)} torf={len(lat)}",
        ),
        _check("split_injectives_invert_cogen", minimal, lambda r: injectives_of_torf(cat, r.cogen, "split") == r.members, lambda r: cl(r.members)),
    ]

    def ext_inj(f):
        e = injectives_of_torf(cat, f, "ext")
        return is_tau_inv_rigid(cat, e) and cogen(cat, e) == f and injectives_of_torf(cat, f, "split") <= e

    out.append(_check("ext_injectives_rigid_and_cogenerate", lat.members, ext_inj, cl))
    if definitional:
        cases = [(f, x) for f in lat for x in sorted(f)]
        out.append(
            _check(
                "split_injective_by_monomorphisms",
                cases,
                lambda fx: (fx[1] in injectives_of_torf(cat, fx[0], "split")) == split_by_monomorphisms(cat, fx[0], fx[1], cap=cap),
                lambda fx: f"{cl(fx[0])} {cat.labels[fx[1]]}",
            )
        )

    def heart_is_jperp(r):
        i = Interval(r.cogen, r.tau_perp)
        return lat.is_wide_interval(i) and heart(cat, i) == jperp(cat, r.members)

    out.append(_check("perpendicular_category_is_wide_heart", rigid, heart_is_jperp, lambda r: cl(r.members)))
    out.append(_check("relative_perp_in_full_category", rigid, lambda r: relative_tau_perp(cat, r.members, cat.full) == r.tau_perp, lambda r: cl(r.members)))
    return out


def reduction_checks(cat: Catalog, max_m: int = 3) -> list[Check]:
    cl = cat.label_of
    rigid = [r.members for r in enumerate_tau_inv_rigid(cat)]
    pairs = [(y, x) for x in rigid for y in reduction_domain(cat, x)]
    show = lambda yx: f"({cl(yx[0])}, {cl(yx[1])})"  # noqa: E731

    def cogen_eq(yx):
        y, x = yx
        w = jperp(cat, x)
        return cogen(cat, x | y) & w == cogen(cat, reduce_pair(cat, y, x)) & w

    def perp_eq(yx):
        y, x = yx
        w = jperp(cat, x)
        return tau_perp(cat, x | y) & w == relative_tau_perp(cat, reduce_pair(cat, y, x), w)

    def bijective(x):
        w = jperp(cat, x)
        dom = reduction_domain(cat, x)
        img = [reduce_pair(cat, y, x) for y in dom]
        if len(set(img)) != len(img) or set(img) != set(enumerate_relative_rigid(cat, w)):
            return False
        return all(is_relative_tau_inv_rigid(cat, z, w) and lift_through_reduction(cat, z, x) == y for y, z in zip(dom, img))

    out = [
        _check("reduction_cogen_equality", pairs, cogen_eq, show),
        _check("reduction_perp_equality", pairs, perp_eq, show),
        _check("reduction_bijective", rigid, bijective, cl),
    ]

    def minimal_after_reduction(d: PreorderedSeq) -> bool:
        x, y = d.gt(1), d.blocks[0]
        z = reduce_pair(cat, y, x)
        w = jperp(cat, x)
        return is_relative_tau_inv_rigid(cat, z, w) and is_cogen_minimal(cat, z)

    seqs = [d for m in range(1, max_m + 1) for d in candidate_sequences(cat, m) if validate_sequence(cat, d) >= Label.COGEN_PREORDERED]
    out.append(_check("reduction_of_first_block_cogen_minimal", seqs, minimal_after_reduction, lambda d: d.render(cat)))
    return out


# ---------------------------------------------------------------- sequences


def candidate_sequences(cat: Catalog, m: int) -> list[PreorderedSeq]:
    """Every split of every τ⁻¹-rigid set into m ordered, possibly empty blocks."""
    out = []
    for r in enumerate_tau_inv_rigid(cat):
        items = sorted(r.members)
        for assign in itertools.product(range(m), repeat=len(items)):
            out.append(PreorderedSeq(tuple(frozenset(y for y, a in zip(items, assign) if a == k) for k in range(m))))
    return out


def sequence_checks(cat: Catalog, lat: TorfLattice, max_m: int = 3) -> list[Check]:
    cands = [d for m in range(max_m + 1) for d in candidate_sequences(cat, m)]
    rs = lambda d: d.render(cat)  # noqa: E731
    cp = lambda d: validate_sequence(cat, d) >= Label.COGEN_PREORDERED  # noqa: E731
    good = [d for d in cands if cp(d)]

    def suffix_stable(d):
        j = phi(cat, lat, d)
        return all(phi(cat, lat, d.suffix(k)).intervals == j.intervals[k - 1 :] for k in range(1, d.m + 1))

    def psi_rigid(d):
        x = psi(cat, lat, phi(cat, lat, d))
        return is_tau_inv_rigid(cat, x.union) and sum(map(len, x.blocks)) == len(x.union)

    return [
        _check("characterization_iff_cogen_preordered", cands, lambda d: characterization_check(cat, d) == cp(d), rs),
        _check("orderings_iff_cogen_preordered", cands, lambda d: all(validate_sequence(cat, o) == Label.COGEN_ORDERED for o in orderings(d)) == cp(d), rs),
        _check("phi_suffix_stable", good, suffix_stable, rs),
        _check("psi_rigid_and_disjoint", good, psi_rigid, rs),
    ]


def property_suite(cat: Catalog, lat: TorfLattice, max_m: int = 3, cap: int = DEFAULT_CAP, definitional: bool = True) -> list[Check]:
    return [
        *ar_checks(cat),
        *lattice_checks(cat, lat, cap),
        *tilting_checks(cat, lat, definitional, cap),
        *reduction_checks(cat, max_m),
        *sequence_checks(cat, lat, max_m),
    ]
