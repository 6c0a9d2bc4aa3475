"""Acceptance criteria 1-8.

Each test prints one ``CRITERION n PASS|FAIL detail`` line (shown even
without ``-s``).  Run directly with ``python3 tests/test_acceptance.py`` to
get only the eight lines.  Catalogs are rebuilt from scratch here so the
runtime limits cover the whole pipeline.
"""

from __future__ import annotations

import itertools
import sys
import time

import pytest

from icelab import build_catalog, enumerate_torf, fixture_path, load_algebra
from icelab.checks import ar_checks, lattice_checks, reduction_checks, tilting_checks
from icelab.cli import run
from icelab.lattice import torf_by_subsets
from icelab.sequences import enumerate_cogen_preordered, enumerate_maxjoin, verify_bijections
from icelab.subcat import is_ice_bounded
from icelab.tilting import enumerate_tau_inv_rigid, injectives_of_torf, is_cogen_minimal


def fresh(name: str, bound: int):
    cat = build_catalog(load_algebra(fixture_path(name)), bound)
    return cat, enumerate_torf(cat)


def failures(checks, names=None) -> list[str]:
    return [c.line() for c in checks if not c.ok and (names is None or c.name.split(":")[-1] in names)]


def criterion_1():
    t = time.perf_counter()
    cat, lat = fresh("a2", 2)
    dims = sorted(cat.dims(i) for i in range(len(cat)))
    rigid = enumerate_tau_inv_rigid(cat)
    minimal = sum(is_cogen_minimal(cat, r.members) for r in rigid)
    ice = sum(is_ice_bounded(cat, frozenset(c)) for r in range(len(cat) + 1) for c in itertools.combinations(range(len(cat)), r))
    elapsed = time.perf_counter() - t
    got = (len(cat), dims, len(lat), len(rigid), minimal, ice)
    want = (3, [(0, 1), (1, 0), (1, 1)], 5, 6, 5, 6)
    return got == want and elapsed < 10, f"catalog={len(cat)} torf={len(lat)} rigid={len(rigid)} minimal={minimal} ice={ice} time={elapsed:.2f}s"


def criterion_2():
    cat, lat = fresh("a2", 2)
    bad, counts = [], []
    for m in range(4):
        rep = verify_bijections(cat, lat, m)
        bad += failures(rep.checks)
        counts.append((len(enumerate_cogen_preordered(cat, m)), len(enumerate_maxjoin(lat, m))))
    ok = not bad and counts[2] == (12, 12) and all(a == b for a, b in counts)
    return ok, f"counts m=0..3 {counts}" + (f" first failure: {bad[0]}" if bad else "")


def criterion_3():
    t = time.perf_counter()
    cat, lat = fresh("a3", 3)
    oracle = torf_by_subsets(cat)
    minimal = [r for r in enumerate_tau_inv_rigid(cat) if is_cogen_minimal(cat, r.members)]
    bij = {r.cogen for r in minimal} == set(lat.members) and all(injectives_of_torf(cat, r.cogen, "split") == r.members for r in minimal)
    bad = [line for m in (1, 2) for line in failures(verify_bijections(cat, lat, m).checks)]
    elapsed = time.perf_counter() - t
    ok = len(cat) == 6 and len(lat) == 14 and set(oracle) == set(lat.members) and len(minimal) == 14 and bij and not bad and elapsed < 120
    return ok, f"catalog={len(cat)} torf={len(lat)} oracle={len(oracle)} minimal={len(minimal)} time={elapsed:.2f}s" + (f" {bad[0]}" if bad else "")


def criterion_4():
    t = time.perf_counter()
    cat, lat = fresh("a4", 4)
    oracle = torf_by_subsets(cat)
    code = run(["verify", str(fixture_path("a4")), "--m", "1", "--dim-bound", "4", "--output", "/dev/null"])
    elapsed = time.perf_counter() - t
    ok = len(lat) == 42 and set(oracle) == set(lat.members) and code == 0 and elapsed < 600
    return ok, f"torf={len(lat)} oracle={len(oracle)} verify_exit={code} time={elapsed:.2f}s"


LATTICE = {"pop_up_iff_pop_down", "restrict_extend_round_trips", "minimum_from_heart_identity", "perpendicular_category_is_wide_heart"}


def criterion_5():
    bad, n = [], 0
    for name, bound in (("a2", 2), ("a3", 3)):
        cat, lat = fresh(name, bound)
        checks = [c for c in lattice_checks(cat, lat) + tilting_checks(cat, lat, definitional=False) if c.name in LATTICE]
        n += len(checks)
        bad += failures(checks)
    return not bad and n == 8, f"{n} checks" + (f" {bad[0]}" if bad else "")


def criterion_6():
    bad, n = [], 0
    for name, bound in (("a2", 2), ("a3", 3)):
        cat, _ = fresh(name, bound)
        checks = reduction_checks(cat, 3)
        n += len(checks)
        bad += failures(checks)
    return not bad and n == 8, f"{n} checks" + (f" {bad[0]}" if bad else "")


PIPELINE = {"tf_to_ice_is_nu_phi", "nu_injective", "nu_inverse_after_nu", "ice_to_tf_after_tf_to_ice", "minima_recursion"}


def criterion_7():
    bad, n = [], 0
    for name, bound in (("a2", 2), ("a3", 3)):
        cat, lat = fresh(name, bound)
        for m in range(3):
            checks = [c for c in verify_bijections(cat, lat, m, ice_census=False).checks if c.name.split(":")[-1] in PIPELINE]
            n += len(checks)
            bad += failures(checks)
    return not bad and n == 30, f"{n} checks" + (f" {bad[0]}" if bad else "")


def criterion_8():
    bad, n = [], 0
    for name, bound in (("a2", 2), ("a3", 3)):
        cat, _ = fresh(name, bound)
        checks = ar_checks(cat)
        n += len(checks)
        bad += failures(checks)
    return not bad and n == 8, f"{n} checks" + (f" {bad[0]}" if bad else "")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


def line(k: int, ok: bool, detail: str) -> str:
    return f"CRITERION {k} {'PASS' if ok else 'FAIL'} {detail}"


@pytest.mark.parametrize("k", range(1, 9))
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k - 1]()
    with capsys.disabled():
        print("\n" + line(k, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(k, *f()) for k, f in enumerate(CRITERIA, 1)]
    for r in results:
        print(line(*r))
    sys.exit(0 if all(ok for _, ok, _ in results) else 1)
