import pytest

from icelab.checks import ar_checks, is_torf_in, lattice_checks, reduction_checks, sequence_checks, tilting_checks
from icelab.subcat import Interval
from support import catalog, lattice


def _failures(checks):
    return [c.line() for c in checks if not c.ok]


@pytest.mark.parametrize("name", ["a2", "a3", "a3_rad2", "semisimple2", "loop_x2", "square"])
def test_ar_suite(name):
    assert _failures(ar_checks(catalog(name))) == []


@pytest.mark.parametrize("name", ["a2", "a3", "a3_rad2", "square"])
def test_lattice_suite(name):
    assert _failures(lattice_checks(catalog(name), lattice(name))) == []


@pytest.mark.parametrize("name", ["a2", "a3", "a3_rad2", "square"])
def test_tilting_suite(name):
    assert _failures(tilting_checks(catalog(name), lattice(name))) == []


@pytest.mark.parametrize("name,m", [("a2", 3), ("a3", 3), ("a3_rad2", 2), ("square", 2)])
def test_reduction_suite(name, m):
    assert _failures(reduction_checks(catalog(name), m)) == []


@pytest.mark.parametrize("name,m", [("a2", 3), ("a3", 3), ("square", 2)])
def test_sequence_suite(name, m):
    assert _failures(sequence_checks(catalog(name), lattice(name), m)) == []


def test_heart_torf_classes_two_vertex(a2, names):
    s1, s2, p = names
    h = frozenset({p})
    assert is_torf_in(a2, frozenset(), h) and is_torf_in(a2, h, h)
    assert not is_torf_in(a2, frozenset({s2}), h)


def test_witness_reported():
    from icelab.sequences import _check

    c = _check("demo", [1, 2, 3], lambda x: x < 2, lambda x: f"x={x}")
    assert not c.ok and c.line() == "CHECK demo FAIL x=2"
