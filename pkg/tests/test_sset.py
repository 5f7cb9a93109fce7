import pytest
from hypothesis import given
from hypothesis import strategies as st

from segal_lab.fincat import (discrete_category, enumerate_functors, functor_category,
                              interval_category, iso_interval_category, iso_subgroupoid,
                              product, terminal_category)
from segal_lab.simplicial import find_isomorphism
from segal_lab.sset import (boundary, chain_count, horn, horn_fillers_exist, nerve,
                            nerve_category, nerve_groupoid_equiv, nerve_product_comparison,
                            pi0, spine_bijection, sset_maps, sset_product, standard_simplex)

from conftest import small_categories


def brute_chains(c, n):
    """Count n-chains by trying every tuple of morphisms."""
    import itertools
    if n == 0:
        return len(c.objects)
    return sum(all(c.tgt(fs[i]) == c.src(fs[i + 1]) for i in range(n - 1))
               for fs in itertools.product(c.morphisms, repeat=n))


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_nerve_of_interval_is_simplex(n):
    x, s = nerve(interval_category(n)), standard_simplex(n)
    assert x.counts() == s.counts()
    assert find_isomorphism(x, s) is not None


def test_nerve_terminal():
    assert all(v == 1 for v in nerve(terminal_category()).counts().values())


def test_nerve_iso_interval_counts():
    x = nerve(iso_interval_category(1)[0])
    assert [x.n((k,)) for k in range(5)] == [2 ** (k + 1) for k in range(5)]


def test_nerve_metadata():
    x = nerve(interval_category(2))
    assert x.cosk == (2,) and x.gen == (2,)
    assert not x.identity_violations()


def test_product_with_point():
    x = nerve(interval_category(2))
    assert find_isomorphism(sset_product(x, standard_simplex(0)), x) is not None


def test_product_square():
    p = sset_product(standard_simplex(1), standard_simplex(1))
    assert p.n((0,)) == 4 and p.n((1,)) == 9
    assert len(p.nondegenerate((2,))) == 2


def test_product_truncation_mismatch():
    with pytest.raises(ValueError):
        sset_product(standard_simplex(1, trunc=2), standard_simplex(1, trunc=3))


def test_nerve_product_example():
    assert nerve_product_comparison(interval_category(1), iso_interval_category(1)[0]).is_yes


def test_maps_from_point_and_edge():
    c = iso_interval_category(1)[0]
    y = nerve(c)
    maps0, exact0 = sset_maps(standard_simplex(0), y)
    maps1, exact1 = sset_maps(standard_simplex(1), y)
    assert exact0 and exact1
    assert len(maps0) == len(c.objects)
    assert len(maps1) == len(c.arrows)


def test_maps_iso_interval_to_interval():
    # the iso must be collapsed, so only the two constant functors survive
    src, tgt = iso_interval_category(1)[0], interval_category(1)
    maps, exact = sset_maps(nerve(src), nerve(tgt))
    assert exact
    assert len(maps) == len(list(enumerate_functors(src, tgt))) == 2


def test_pi0_examples():
    assert len(pi0(standard_simplex(3))) == 1
    assert len(pi0(boundary(1).to_simp())) == 2
    assert len(pi0(nerve(iso_interval_category(1)[0]))) == 1
    with pytest.raises(ValueError):
        pi0(standard_simplex(1, trunc=0))


def test_boundary_and_horn_sizes():
    b = boundary(2)
    assert {d: len(v) for d, v in b.nondegenerate().items() if v} == {(0,): 3, (1,): 3}
    h = horn(2, 1)
    assert {d: len(v) for d, v in h.nondegenerate().items() if v} == {(0,): 3, (1,): 2}


def test_groupoid_nerve_equivalence():
    i1 = iso_interval_category(1)[0]
    pt = nerve(terminal_category())
    assert nerve_groupoid_equiv(nerve(iso_subgroupoid(i1)), pt).is_yes
    assert nerve_groupoid_equiv(nerve(discrete_category(range(2))), pt).is_no
    assert nerve_groupoid_equiv(nerve(i1), nerve(i1)).is_yes
    assert nerve_groupoid_equiv(standard_simplex(1), pt).is_unknown


def test_groupoid_nerves_fill_horns():
    x = nerve(iso_interval_category(1)[0], trunc=3)
    for k in range(3):
        assert horn_fillers_exist(x, 2, k)


def test_interval_nerve_misses_outer_horn():
    x = nerve(interval_category(1), trunc=3)
    assert horn_fillers_exist(x, 2, 1)
    assert not horn_fillers_exist(x, 2, 0)


# ---------------------------------------------------------------- properties

@given(small_categories())
def test_nerve_satisfies_simplicial_identities(c):
    assert not nerve(c, trunc=3).identity_violations()


@given(small_categories(), st.integers(0, 3))
def test_nerve_counts_are_chain_counts(c, n):
    x = nerve(c, trunc=3)
    assert x.n((n,)) == chain_count(c, n) == brute_chains(c, n)


@given(small_categories(2), small_categories(2))
def test_nerve_preserves_products(c, d):
    assert nerve_product_comparison(c, d, trunc=3).is_yes


@given(small_categories())
def test_pi0_is_connected_components(c):
    assert len(pi0(nerve(c, trunc=2))) == len(c.connected_components)


@given(small_categories(), st.integers(2, 3))
def test_nerves_are_segal(c, k):
    ok, _ = spine_bijection(nerve(c, trunc=3), k)
    assert ok


@given(small_categories())
def test_nerve_category_roundtrip(c):
    from segal_lab.fincat import find_isomorphism as cat_iso
    assert cat_iso(nerve_category(nerve(c, trunc=2)), c) is not None


@given(st.integers(0, 1), small_categories(2))
def test_nerve_of_functor_category_is_mapping_object(a, d):
    # vertices and edges of nerve(D^C) against maps nerve C x Δ[n] -> nerve D
    c = interval_category(a)
    x = nerve(functor_category(c, d), trunc=2)
    for n in (0, 1):
        src = sset_product(nerve(c, trunc=2), standard_simplex(n, trunc=2))
        maps, exact = sset_maps(src, nerve(d, trunc=2))
        assert exact
        assert len(maps) == x.n((n,))


@given(small_categories())
def test_groupoid_nerves_are_kan_low(c):
    from segal_lab.fincat import iso_subgroupoid as iso
    x = nerve(iso(c), trunc=2)
    assert all(horn_fillers_exist(x, 2, k) for k in range(3))
