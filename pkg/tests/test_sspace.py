import pytest
from hypothesis import given
from hypothesis import strategies as st

from segal_lab.fincat import (WidePair, enumerate_functors, functor_category, interval_category,
                              iso_interval_category, iso_subgroupoid, product, terminal_category)
from segal_lab.simplicial import find_isomorphism, generated_by
from segal_lab.sset import nerve, standard_simplex
from segal_lab.sspace import (alpha_cell, boundary_F, classification_diagram,
                              classifying_diagram, diag_space, discrete_nerve, exponential_comparison,
                              internal_hom, iota, mapping_space, product_comparison, rep,
                              spine_restriction_count, sspace_product, standard_E, standard_F,
                              standard_G)

from conftest import small_categories

SMALL = (2, 2)


def grid_oracle(pair, m, n):
    """Functors [m] x [n] -> C whose vertical arrows land in the weak equivalences."""
    p, _ = product(interval_category(m), interval_category(n))
    return sum(all(F.on_mor(a) in pair.weq for a in p.morphisms if a[0][0] == a[0][1])
               for F in enumerate_functors(p, pair.cat))


def test_F0_is_a_point():
    assert set(standard_F(0).counts().values()) == {1}


def test_F1_level_counts():
    f = standard_F(1)
    assert [f.n((m, 0)) for m in range(5)] == [m + 2 for m in range(5)]


def test_boundary_F():
    b1 = boundary_F(1)
    assert {d: len(v) for d, v in b1.nondegenerate().items() if v} == {(0, 0): 2}
    b2 = boundary_F(2)
    assert len(b2.nondegenerate()[(1, 0)]) == 3
    assert ((2, 0), iota(b2.parent)) not in b2
    with pytest.raises(ValueError):
        boundary_F(0)


def test_standard_G():
    g1 = standard_G(1)
    assert g1.counts() == g1.parent.counts()
    nd = standard_G(2).nondegenerate()
    assert (len(nd[(0, 0)]), len(nd[(1, 0)]), len(nd.get((2, 0), ()))) == (3, 2, 0)


def test_subobject_ops():
    f = standard_F(2)
    g = standard_G(2, parent=f)
    assert g.union(g) == g
    a0 = generated_by(f, [alpha_cell(f, 0, 1)])
    a1 = generated_by(f, [alpha_cell(f, 1, 1)])
    meet = a0.intersection(a1)
    assert {d: len(v) for d, v in meet.nondegenerate().items() if v} == {(0, 0): 1}
    assert f.labels[0, 0][next(iter(meet.nondegenerate()[(0, 0)]))] == (1,)
    assert generated_by(f, [((2, 0), iota(f))]).counts() == f.counts()


def test_classifying_point():
    assert set(classifying_diagram(terminal_category(), SMALL).counts().values()) == {1}


def test_classifying_interval_one():
    assert classifying_diagram(interval_category(1), SMALL).n((1, 0)) == 3


def test_classification_iso_interval_words():
    c = iso_interval_category(1)[0]
    w = classification_diagram(WidePair.everything(c), (1, 3))
    assert [w.n((0, n)) for n in range(4)] == [2 ** (n + 1) for n in range(4)]


def test_classifying_iso_interval_bidegree_one_zero():
    # a cell is a functor [1] -> I[1]; there are 4, not the 16 transformations between them
    w = classifying_diagram(iso_interval_category(1)[0], SMALL)
    assert w.n((1, 0)) == 4 == len(functor_category(interval_category(1),
                                                    iso_interval_category(1)[0]).objects)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_discrete_nerve_of_interval_is_F(n):
    dn, f = discrete_nerve(interval_category(n), SMALL), standard_F(n, SMALL)
    assert find_isomorphism(dn, f) is not None


def test_E_counts():
    e = standard_E()
    assert [e.n((k, 0)) for k in range(5)] == [2 ** (k + 1) for k in range(5)]
    assert e.is_discrete_in(1)


def test_discrete_nerve_of_identities_pair():
    c = interval_category(2)
    w = classification_diagram(WidePair.identities(c), (3, 2))
    assert w.counts() == discrete_nerve(c, (3, 2)).counts()


def test_product_with_point():
    x = classifying_diagram(interval_category(1), SMALL)
    assert find_isomorphism(sspace_product(x, standard_F(0, SMALL)), x) is not None


def test_product_F1_squared():
    assert sspace_product(standard_F(1), standard_F(1)).n((1, 0)) == 9


def test_product_mismatch():
    with pytest.raises(ValueError):
        sspace_product(standard_F(1, (2, 2)), standard_F(1, (3, 2)))


def test_product_comparison_example():
    assert product_comparison(interval_category(1), iso_interval_category(1)[0], SMALL).is_yes


def test_mapping_space_of_F():
    w = classifying_diagram(iso_interval_category(1)[0], (3, 3))
    for k in range(3):
        m = mapping_space(standard_F(k, (3, 3)), w, trunc=2)
        assert [m.n((n,)) for n in range(3)] == [w.n((k, n)) for n in range(3)]


def test_map_F0_is_nerve_iso():
    c = interval_category(1)
    m = mapping_space(standard_F(0, (3, 3)), classifying_diagram(c, (3, 3)), trunc=2)
    assert m.counts() == nerve(iso_subgroupoid(c), trunc=2).counts()


def test_map_E_is_nerve_iso_of_exponential():
    c = interval_category(1)
    i1 = iso_interval_category(1)[0]
    m = mapping_space(standard_E(1, (3, 3)), classifying_diagram(c, (3, 3)), trunc=2)
    target = nerve(iso_subgroupoid(functor_category(i1, c)), trunc=2)
    assert m.meta["exact"]
    assert m.counts() == target.counts()


def test_hom_from_F0_is_identity():
    w = classifying_diagram(interval_category(1), SMALL)
    h = internal_hom(w, standard_F(0, SMALL), SMALL)
    assert find_isomorphism(h, w) is not None


def test_exponential_comparison_example():
    assert exponential_comparison(terminal_category(), interval_category(1), SMALL).is_yes


def test_hom_against_constant_simplex():
    # N(C^{I[1]}) against (N C)^E at level 0 in the space direction
    c = interval_category(1)
    i1 = iso_interval_category(1)[0]
    lhs = classifying_diagram(functor_category(i1, c), SMALL)
    rhs = internal_hom(classifying_diagram(c, SMALL), standard_E(1, SMALL), SMALL)
    assert lhs.counts() == rhs.counts()


def test_diag_examples():
    assert diag_space(standard_F(0, SMALL)).counts() == standard_simplex(0, 2).counts()
    c = iso_interval_category(1)[0]
    d = diag_space(discrete_nerve(c, (3, 3)))
    assert find_isomorphism(d, nerve(c, trunc=3)) is not None


# ---------------------------------------------------------------- properties

@given(small_categories(2), st.integers(0, 1), st.integers(0, 1))
def test_grid_cells_match_functor_count(c, m, n):
    for pair in (WidePair.isos(c), WidePair.everything(c), WidePair.identities(c)):
        w = classification_diagram(pair, SMALL)
        assert w.n((m, n)) == grid_oracle(pair, m, n)


@given(small_categories(2))
def test_classifying_diagram_satisfies_identities(c):
    assert not classifying_diagram(c, SMALL).identity_violations()


@given(small_categories(), st.integers(2, 3), st.integers(0, 1))
def test_levels_are_fiber_products(c, k, n):
    w = classifying_diagram(c, (3, 1))
    assert w.n((k, n)) == spine_restriction_count(w, k, n)


@given(small_categories())
def test_covering_fibers_are_hom_sets(c):
    w = classifying_diagram(c, (1, 1))
    fibers = {}
    for x in range(w.n((1, 0))):
        key = (w.faces[(1, 0), 0, 1][x], w.faces[(1, 0), 0, 0][x])
        fibers[key] = fibers.get(key, 0) + 1
    for a in c.objects:
        for b in c.objects:
            ia = w.index[0, 0][((a,),), ((),), ()]
            ib = w.index[0, 0][((b,),), ((),), ()]
            assert fibers.get((ia, ib), 0) == len(c.hom(a, b))


@given(small_categories(2))
def test_diag_of_discrete_nerve_is_nerve(c):
    assert find_isomorphism(diag_space(discrete_nerve(c, SMALL)), nerve(c, trunc=2)) is not None


@given(small_categories(2), small_categories(2))
def test_classifying_diagram_preserves_products(c, d):
    assert product_comparison(c, d, (2, 1)).is_yes


@given(st.integers(0, 2), small_categories(2))
def test_interval_times_category(m, c):
    lhs = classifying_diagram(product(interval_category(m), c)[0], (2, 1))
    rhs = sspace_product(standard_F(m, (2, 1)), classifying_diagram(c, (2, 1)))
    assert find_isomorphism(lhs, rhs) is not None


@given(small_categories(2), st.integers(0, 1))
def test_mapping_space_represents_levels(c, k):
    w = classifying_diagram(c, SMALL)
    m = mapping_space(standard_F(k, SMALL), w, trunc=1)
    assert [m.n((n,)) for n in range(2)] == [w.n((k, n)) for n in range(2)]


@given(small_categories(2))
def test_functors_biject_with_maps(d):
    from segal_lab.simplicial import find_maps, choose_window
    c = interval_category(1)
    nc, nd = classifying_diagram(c, SMALL), classifying_diagram(d, SMALL)
    window, exact = choose_window(nc, nd)
    assert exact
    assert len(list(find_maps(nc, nd, window))) == len(list(enumerate_functors(c, d)))


@pytest.mark.parametrize("a,b", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_exponential_law_for_maps(a, b):
    # maps F(a) x F(b) -> N C against maps F(a) -> (N C)^{F(b)}
    from segal_lab.simplicial import find_maps, choose_window
    c = iso_interval_category(1)[0]
    w = classifying_diagram(c, SMALL)
    x = sspace_product(standard_F(a, SMALL), standard_F(b, SMALL))
    window, _ = choose_window(x, w)
    lhs = len(list(find_maps(x, w, window)))
    h = internal_hom(w, standard_F(b, SMALL), SMALL)
    assert lhs == h.n((a, 0))
