import pytest

from icelab import PreconditionError, VerificationError
from icelab.subcat import Interval, cogen
from icelab.tilting import (
    complete_to_torf,
    enumerate_relative_rigid,
    enumerate_tau_inv_rigid,
    injectives_of_torf,
    is_cogen_minimal,
    is_relative_tau_inv_rigid,
    is_tau_inv_rigid,
    jperp,
    lift_through_reduction,
    reduce_pair,
    relative_tau_perp,
    rigid_module,
    split_by_monomorphisms,
)
from support import catalog, lattice

F = frozenset


def test_rigidity(a2, names):
    s1, s2, p = names
    assert is_tau_inv_rigid(a2, {s2, p})
    assert not is_tau_inv_rigid(a2, {s1, s2})
    assert is_tau_inv_rigid(a2, set())
    with pytest.raises(PreconditionError):
        rigid_module(a2, {s1, s2})


def test_enumerate_rigid(a2, names):
    s1, s2, p = names
    got = {r.members for r in enumerate_tau_inv_rigid(a2)}
    assert got == {F(), F({s1}), F({s2}), F({p}), F({s1, p}), F({s2, p})}
    assert len(enumerate_tau_inv_rigid(catalog("semisimple2"))) == 4


def test_rigid_caches(a3):
    for r in enumerate_tau_inv_rigid(a3):
        assert r.cogen == cogen(a3, r.members)


def test_cogen_minimal(a2, names):
    s1, s2, p = names
    assert not is_cogen_minimal(a2, {s2, p})
    assert is_cogen_minimal(a2, {s1, p})
    assert is_cogen_minimal(a2, set())
    assert sum(is_cogen_minimal(a2, r.members) for r in enumerate_tau_inv_rigid(a2)) == 5


def test_injectives_of_torf(a2, names):
    s1, s2, p = names
    assert injectives_of_torf(a2, {s2, p}, "split") == F({p})
    assert injectives_of_torf(a2, a2.full, "split") == F({s1, p})
    assert injectives_of_torf(a2, set(), "split") == F()
    assert injectives_of_torf(a2, set(), "ext") == F()
    with pytest.raises(PreconditionError):
        injectives_of_torf(a2, {s1, s2}, "split")


@pytest.mark.parametrize("name", ["a2", "a3", "a3_rad2"])
def test_split_injectives_by_definition(name):
    cat, lat = catalog(name), lattice(name)
    for f in lat:
        split = injectives_of_torf(cat, f, "split")
        assert split <= injectives_of_torf(cat, f, "ext")
        for x in f:
            assert (x in split) == split_by_monomorphisms(cat, f, x)


def test_jperp(a2, names):
    s1, s2, p = names
    assert jperp(a2, {p}) == F({s1})
    assert jperp(a2, set()) == a2.full
    assert jperp(a2, {s1, p}) == F()
    with pytest.raises(PreconditionError):
        jperp(a2, {s1, s2})


def test_reduction(a2, names):
    s1, s2, p = names
    assert reduce_pair(a2, {s1}, {p}) == F({s1})
    assert reduce_pair(a2, {s1, p}, set()) == F({s1, p})
    assert lift_through_reduction(a2, {s1}, {p}) == F({s1})
    assert lift_through_reduction(a2, set(), {p}) == F()
    assert lift_through_reduction(a2, {s2}, set()) == F({s2})
    w = jperp(a2, {p})
    assert cogen(a2, {p, s1}) & w == cogen(a2, {s1}) & w == F({s1})
    with pytest.raises(PreconditionError):
        reduce_pair(a2, {s2}, {p})


def test_lift_failure_is_verification_error(a2, names):
    s1, s2, p = names
    with pytest.raises(VerificationError):
        lift_through_reduction(a2, {s2}, {p})


def test_complete_to_torf(a2, names):
    s1, s2, p = names
    assert complete_to_torf(a2, {s1}, a2.full).members == F({s1, p})
    assert complete_to_torf(a2, set(), {s2, p}).members == F({p})
    for r in enumerate_tau_inv_rigid(a2):
        assert complete_to_torf(a2, r.members, r.cogen).members == r.members
    with pytest.raises(PreconditionError):
        complete_to_torf(a2, {p}, {s1})


@pytest.mark.parametrize("name", ["a3", "square"])
def test_relative_notions_in_full_category(name):
    cat = catalog(name)
    rigid = [r.members for r in enumerate_tau_inv_rigid(cat)]
    assert sorted(map(sorted, enumerate_relative_rigid(cat, cat.full))) == sorted(map(sorted, rigid))
    for r in enumerate_tau_inv_rigid(cat):
        assert relative_tau_perp(cat, r.members, cat.full) == r.tau_perp
        assert is_relative_tau_inv_rigid(cat, r.members, cat.full)


def test_perpendicular_is_wide_heart(a3, a3_lat):
    for r in enumerate_tau_inv_rigid(a3):
        i = Interval(r.cogen, r.tau_perp)
        assert a3_lat.is_wide_interval(i)
        assert a3_lat.heart(i) == jperp(a3, r.members)
