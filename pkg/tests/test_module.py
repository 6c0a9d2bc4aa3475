import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icelab import ModuleError, Morphism, fixture_path, load_algebra
from icelab.module import (
    Module,
    cokernel,
    direct_sum,
    hom_basis,
    hom_dim,
    image,
    is_indecomposable,
    is_isomorphic,
    kernel,
    projective,
    simple,
)

from support import catalog


@pytest.fixture(scope="module")
def alg():
    return load_algebra(fixture_path("a2"))


@pytest.fixture(scope="module")
def mods(alg):
    return simple(alg, 0), simple(alg, 1), projective(alg, 0)


def test_hom_s2_to_p(mods):
    s1, s2, p = mods
    hb = hom_basis(s2, p)
    assert hb.dim == 1
    assert hb.maps[0].is_injective()
    assert hom_basis(s1, p).dim == 0


def test_identity_in_endomorphisms(mods):
    for m in mods:
        assert hom_basis(m, m).coordinates(Morphism.identity(m)) is not None


def test_subquotients_of_inclusion(mods):
    s1, s2, p = mods
    f = hom_basis(s2, p).maps[0]
    assert kernel(f)[0].is_zero()
    assert is_isomorphic(image(f)[0], s2)
    assert is_isomorphic(cokernel(f)[0], s1)


def test_identity_and_zero_subquotients(mods):
    _, s2, p = mods
    ident = Morphism.identity(p)
    assert kernel(ident)[0].is_zero() and cokernel(ident)[0].is_zero()
    zero = Morphism.zero(s2, p)
    assert is_isomorphic(kernel(zero)[0], s2)
    assert image(zero)[0].is_zero()
    assert is_isomorphic(cokernel(zero)[0], p)


def test_direct_sum(alg, mods):
    s1, s2, p = mods
    assert direct_sum([], alg).is_zero()
    s = direct_sum([s1, s2])
    assert s.dims == (1, 1)
    assert not is_isomorphic(s, p)
    assert is_isomorphic(direct_sum([p]), p)


def test_indecomposable(mods):
    s1, s2, p = mods
    assert is_indecomposable(p)
    assert is_indecomposable(s1)
    assert not is_indecomposable(direct_sum([s1, s2]))


def test_bad_representation_rejected():
    alg = load_algebra(fixture_path("a3_rad2"))
    # a*b = 0 forces the composite to vanish
    with pytest.raises(ModuleError):
        Module(alg, [1, 1, 1], [[[1]], [[1]]])


def test_mismatched_algebras(mods):
    other = load_algebra(fixture_path("a3"))
    with pytest.raises(ModuleError):
        hom_basis(mods[0], simple(other, 0))


def test_hom_additive_on_fixture_triples():
    cat = catalog("a3")
    ms = cat.modules
    for a, b, c in itertools.product(range(len(ms)), repeat=3):
        assert hom_dim(direct_sum([ms[a], ms[b]]), ms[c]) == cat.dim_hom[a, c] + cat.dim_hom[b, c]


def test_isomorphism_is_equivalence_on_sample():
    cat = catalog("a3")
    ms = [cat.modules[i] for i in range(len(cat))]
    sample = ms + [direct_sum([ms[0], ms[1]]), direct_sum([ms[1], ms[0]])]
    rel = [[is_isomorphic(x, y) for y in sample] for x in sample]
    n = len(sample)
    for i in range(n):
        assert rel[i][i]
        for j in range(n):
            assert rel[i][j] == rel[j][i]
            for k in range(n):
                assert not (rel[i][j] and rel[j][k]) or rel[i][k]


@given(st.lists(st.integers(0, 5), max_size=5))
@settings(max_examples=40, deadline=None)
def test_decompose_inverts_direct_sum(idx):
    cat = catalog("a3")
    from collections import Counter

    want = Counter(idx)
    if any(v > 3 for v in want.values()):
        return
    m = direct_sum([cat.modules[i] for i in idx], cat.alg)
    assert cat.decompose(m) == want


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_rank_nullity_per_vertex(data):
    cat = catalog("a3")
    a = data.draw(st.integers(0, len(cat) - 1))
    b = data.draw(st.integers(0, len(cat) - 1))
    hb = hom_basis(cat.modules[a], cat.modules[b])
    coeffs = data.draw(st.lists(st.integers(0, 1), min_size=hb.dim, max_size=hb.dim))
    f = hb.combination(coeffs)
    k, im = kernel(f)[0], image(f)[0]
    assert all(x + y == d for x, y, d in zip(k.dims, im.dims, cat.modules[a].dims))


def test_morphism_composition_is_associative(mods):
    s1, s2, p = mods
    f = hom_basis(s2, p).maps[0]
    g = hom_basis(p, s1).maps[0]
    assert f.then(g).is_zero()
    assert np.array_equal(Morphism.identity(s2).then(f).vector(), f.vector())
