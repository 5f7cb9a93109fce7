import pytest
from hypothesis import given
from hypothesis import strategies as st

from segal_lab.fincat import (constant_functor, cyclic_group_category, discrete_category,
                              enumerate_functors, find_isomorphism, interval_category,
                              is_equivalence, iso_interval_category, iso_subgroupoid,
                              terminal_category)
from segal_lab.segal import (SegalStatus, associativity_check, categorical_equivalence_search,
                             categorical_homotopy_search, category_from_discrete_segal, compose,
                             completeness_check, dk_check, fiber_vertices, ho_category,
                             ho_post_pre_compose, hoequiv_subspace, identity_of, is_hoequiv,
                             map_space, objects_of, segal_check, thm62_pi0_check)
from segal_lab.simplicial import explicit_map, identity_map
from segal_lab.sspace import (classifying_diagram, classifying_map, discnerve_inclusion,
                              discrete_nerve, sspace_product, standard_E, standard_F, standard_G)

from conftest import small_categories

T3 = (3, 2)


def vertex(w, x):
    return w.index[0, 0][((x,),), ((),), ()]


def edge(w, f):
    c = w.meta["category"]
    a, b = c.arrows[f]
    return w.index[1, 0][((a, b),), ((f,),), ()]


def to_point(u):
    pt = standard_F(0, u.trunc)
    return explicit_map(u, pt, lambda d, lab: (0,) * (d[0] + 1))


def point_at_E(obj, trunc=T3):
    pt, e = standard_F(0, trunc), standard_E(1, trunc)
    return explicit_map(pt, e, lambda d, lab: ((obj,) * (d[0] + 1), ((obj, obj),) * d[0]))


def point_at_F1(i, trunc=T3):
    pt, f = standard_F(0, trunc), standard_F(1, trunc)
    return explicit_map(pt, f, lambda d, lab: (i,) * (d[0] + 1))


# ---------------------------------------------------------------- Segal condition

@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_representables_are_segal(n):
    rep = segal_check(standard_F(n, T3))
    assert rep.exact


def test_classifying_diagram_is_segal():
    assert segal_check(classifying_diagram(iso_interval_category(1)[0], T3)).exact


def test_glued_edges_fail():
    g = standard_G(2, trunc=T3).to_simp()
    status, witness, _ = segal_check(g).per_k[2]
    assert status is SegalStatus.FAILED and witness is not None


def test_segal_check_needs_level_two():
    with pytest.raises(ValueError):
        segal_check(standard_F(1, (1, 1)))


def test_category_from_discrete_segal():
    assert find_isomorphism(category_from_discrete_segal(standard_F(2, T3)),
                            interval_category(2)) is not None
    i1 = iso_interval_category(1)[0]
    assert find_isomorphism(category_from_discrete_segal(standard_E(1, T3)), i1) is not None
    two_points = discrete_nerve(discrete_category(range(2)), T3)
    assert find_isomorphism(category_from_discrete_segal(two_points),
                            discrete_category(range(2))) is not None
    with pytest.raises(ValueError):
        category_from_discrete_segal(classifying_diagram(i1, T3))


# ---------------------------------------------------------------- objects, maps, composition

def test_mapping_space_is_hom_set():
    c, _ = iso_interval_category(1)
    w = classifying_diagram(c, T3)
    assert len(fiber_vertices(w, vertex(w, 0), vertex(w, 1))) == 1
    m = map_space(w, vertex(w, 0), vertex(w, 1))
    assert m.n((0,)) == 1


def test_identity_lies_over_the_pair():
    w = classifying_diagram(interval_category(1), T3)
    for x in objects_of(w):
        assert identity_of(w, x) in fiber_vertices(w, x, x)
    with pytest.raises(KeyError):
        identity_of(w, 99)


def test_map_space_in_F1():
    f = standard_F(1, T3)
    assert len(fiber_vertices(f, 0, 1)) == 1


def test_composition_in_classifying_diagram():
    c = interval_category(2)
    w = classifying_diagram(c, T3)
    f, g = edge(w, (0, 1)), edge(w, (1, 2))
    assert compose(w, f, g) == {edge(w, (0, 2))}
    assert f in compose(w, f, identity_of(w, vertex(w, 1)))


def test_composition_in_F2():
    f = standard_F(2, T3)
    e = lambda a, b: f.index[1, 0][(a, b)]
    assert compose(f, e(0, 1), e(1, 2)) == {e(0, 2)}


def test_ho_examples():
    for c in (interval_category(2), iso_interval_category(1)[0], cyclic_group_category(2)):
        assert find_isomorphism(ho_category(classifying_diagram(c, T3)).cat, c) is not None
    assert find_isomorphism(ho_category(standard_F(2, T3)).cat, interval_category(2)) is not None
    assert find_isomorphism(ho_category(standard_E(1, T3)).cat,
                            iso_interval_category(1)[0]) is not None


def test_post_pre_compose():
    h = ho_category(classifying_diagram(interval_category(2), T3))
    c = h.cat
    for x in c.objects:
        post, pre = ho_post_pre_compose(h, c.identity[x])
        assert all(post[g] == g for g in post) and all(pre[g] == g for g in pre)
    for g, f in c.composable_pairs():
        gf = c.comp(g, f)
        post_gf = ho_post_pre_compose(h, gf)[0]
        post_g, post_f = ho_post_pre_compose(h, g)[0], ho_post_pre_compose(h, f)[0]
        assert all(post_gf[k] == post_g[post_f[k]] for k in post_gf)


# ---------------------------------------------------------------- homotopy equivalences

def test_is_hoequiv_examples():
    w = classifying_diagram(iso_interval_category(1)[0], T3)
    assert is_hoequiv(w, edge(w, (0, 1))).is_yes
    w1 = classifying_diagram(interval_category(1), T3)
    assert is_hoequiv(w1, edge(w1, (0, 1))).is_no
    for x in objects_of(w1):
        assert is_hoequiv(w1, identity_of(w1, x)).is_yes


def test_is_hoequiv_needs_level_three():
    with pytest.raises(ValueError):
        is_hoequiv(standard_F(1, (2, 1)), 0)


def test_hoequiv_subspace_examples():
    e = standard_E(1, T3)
    assert hoequiv_subspace(e).cells[(0,)] == frozenset(range(e.n((1, 0))))
    f = standard_F(1, T3)
    assert hoequiv_subspace(f).cells[(0,)] == frozenset(f.degens[(0, 0), 0, 0])


def test_completeness_examples():
    for c in (interval_category(1), iso_interval_category(1)[0], cyclic_group_category(2)):
        assert completeness_check(classifying_diagram(c, T3)).is_yes
    v = completeness_check(standard_E(1, T3))
    assert v.is_no
    assert (v.witness["pi0_W0"], v.witness["pi0_hoequiv"]) == (2, 4)
    assert completeness_check(standard_F(0, T3)).is_yes


# ---------------------------------------------------------------- Dwyer-Kan

def test_dk_discnerve_inclusion():
    for c in (interval_category(1), iso_interval_category(1)[0]):
        dn, nc = discrete_nerve(c, T3), classifying_diagram(c, T3)
        assert dk_check(discnerve_inclusion(dn, nc)).is_yes


def test_dk_equivalence_functor():
    i1, pt = iso_interval_category(1)[0], terminal_category()
    f = constant_functor(pt, i1, 0)
    v = dk_check(classifying_map(f, classifying_diagram(pt, T3), classifying_diagram(i1, T3)))
    assert v.is_yes


def test_dk_collapse_fails():
    assert dk_check(to_point(standard_F(1, T3))).is_no


# ---------------------------------------------------------------- categorical homotopy

def test_homotopy_search_examples():
    f = point_at_E(0)
    assert categorical_homotopy_search(f, f).is_yes
    assert categorical_homotopy_search(point_at_E(0), point_at_E(1)).is_yes
    assert categorical_homotopy_search(point_at_F1(0), point_at_F1(1)).is_no


def test_equivalence_search_examples():
    assert categorical_equivalence_search(identity_map(standard_F(1, T3))).is_yes
    assert categorical_equivalence_search(to_point(standard_E(1, T3))).is_yes
    assert categorical_equivalence_search(to_point(standard_F(1, T3))).is_no


# ---------------------------------------------------------------- properties

@given(small_categories())
def test_nerves_segal_and_complete(c):
    w = classifying_diagram(c, T3)
    assert segal_check(w).exact
    assert completeness_check(w).is_yes


@given(small_categories())
def test_ho_recovers_category(c):
    w = classifying_diagram(c, T3)
    assert find_isomorphism(ho_category(w).cat, c) is not None
    assert associativity_check(w).is_yes


@given(small_categories())
def test_hoequiv_matches_isomorphisms(c):
    w = classifying_diagram(c, T3)
    for f in c.morphisms:
        assert is_hoequiv(w, edge(w, f)).is_yes == c.is_iso(f)


@given(small_categories())
def test_pi0_of_objects_is_iso_classes(c):
    from segal_lab.simplicial import components
    w = classifying_diagram(c, T3)
    assert len(components(w.level(0))) == len(c.iso_classes)


@given(small_categories())
def test_groupoid_s0_is_equivalence(c):
    # for a groupoid every edge is a homotopy equivalence, so W_hoequiv is all of W_1
    g = iso_subgroupoid(c)
    w = classifying_diagram(g, T3)
    assert hoequiv_subspace(w).cells[(0,)] == frozenset(range(w.n((1, 0))))


@given(small_categories(2), small_categories(2))
def test_dk_iff_equivalence(c, d):
    nc, nd = classifying_diagram(c, T3), classifying_diagram(d, T3)
    for f in list(enumerate_functors(c, d))[:6]:
        assert dk_check(classifying_map(f, nc, nd)).outcome == is_equivalence(f).outcome


@given(small_categories())
def test_discnerve_completeness_matches_isos(c):
    # discnerve C is complete exactly when C has no non-identity isomorphisms
    w = discrete_nerve(c, T3)
    nontrivial = any(c.is_iso(f) and not c.is_identity[f] for f in c.morphisms)
    assert completeness_check(w).is_no == nontrivial


@given(small_categories(2))
def test_map_E_components_match_hoequiv(c):
    assert thm62_pi0_check(classifying_diagram(c, T3)).is_yes
