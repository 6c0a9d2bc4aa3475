import re

import pytest

from icelab import CapExceeded, PreconditionError
from icelab.lattice import enumerate_torf, torf_by_subsets
from icelab.subcat import Interval
from support import catalog, lattice

F = frozenset


@pytest.mark.parametrize("name,count", [("a2", 5), ("a3", 14), ("semisimple2", 4), ("a3_rad2", 12), ("loop_x2", 2), ("square", 46)])
def test_torf_counts_agree_with_oracle(name, count):
    cat = catalog(name)
    lat = enumerate_torf(cat, oracle=True)
    assert len(lat) == count
    assert set(torf_by_subsets(cat)) == set(lat.members)


def test_oracle_cap(a3):
    with pytest.raises(CapExceeded):
        torf_by_subsets(a3, cap=10)


def test_join_meet_covers(a2, a2_lat, names):
    s1, s2, p = names
    lat = a2_lat
    assert lat.join({s1}, {s2}) == a2.full
    assert set(lat.covers_up(F())) == {F({s1}), F({s2})}
    assert lat.meet({s2, p}, a2.full) == F({s2, p})
    assert lat.bottom == F() and lat.top == a2.full
    with pytest.raises(PreconditionError):
        lat.join({s1, s2}, {s1})


def test_pop(a2, a2_lat, names):
    s1, s2, p = names
    lat = a2_lat
    assert lat.pop(Interval(F(), a2.full), "up") == a2.full
    assert lat.pop(Interval(F({s2}), a2.full), "up") == F({s2, p})
    for f in lat:
        assert lat.pop(Interval(f, f), "up") == f
        assert lat.pop(Interval(f, f), "down") == f


def test_wide_intervals(a2_lat, names):
    s1, s2, p = names
    lat = a2_lat
    assert lat.is_wide_interval(Interval(F({s2}), F({s2, p})))
    assert not lat.is_wide_interval(Interval(F(), F({s2, p})))
    assert all(lat.is_wide_interval(Interval(f, f)) for f in lat)


def test_maximal_join(a2, a2_lat, names):
    s1, s2, p = names
    lat = a2_lat
    outer = Interval(F(), a2.full)
    assert lat.is_maximal_join_in(Interval(F({s2}), F({s2, p})), outer)
    assert not lat.is_maximal_join_in(Interval(F({s2}), F({s2})), outer)
    for f in lat:
        assert lat.is_maximal_join_in(Interval(f, lat.pop(Interval(f, a2.full), "up")), outer)
    with pytest.raises(PreconditionError):
        lat.is_maximal_join_in(outer, Interval(F({s2}), F({s2})))


@pytest.mark.parametrize("name", ["a2", "a3", "square"])
def test_pop_coherence(name):
    lat = lattice(name)
    for i in lat.intervals():
        assert (lat.pop(i, "up") == i.hi) == (lat.pop(i, "down") == i.lo)


@pytest.mark.parametrize("name,nodes,edges", [("a2", 5, 5), ("semisimple2", 4, 4)])
def test_dot(name, nodes, edges):
    lat = lattice(name)
    dot = lat.export_dot()
    assert len(re.findall(r"\[label=", dot)) == nodes
    assert len(re.findall(r"->", dot)) == edges
    assert enumerate_torf(catalog(name)).export_dot() == dot


def test_hasse_is_transitive_reduction(a3_lat):
    lat = a3_lat
    for f in lat:
        for g in lat.covers_up(f):
            assert f < g and not any(f < h < g for h in lat)
            assert f in lat.covers_down(g)
