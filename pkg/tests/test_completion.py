import pytest
from hypothesis import given
from hypothesis import strategies as st

from segal_lab.completion import (completion_unit, contractible_levels, discnerve_comparison,
                                  discnerve_tilde_check, tilde, tilde_dk_check, tilde_map)
from segal_lab.fincat import (enumerate_functors, interval_category, iso_interval_category,
                              terminal_category)
from segal_lab.simplicial import explicit_map, find_isomorphism
from segal_lab.sspace import classifying_diagram, discrete_nerve, standard_E, standard_F

from conftest import small_categories

T = (2, 2)


def chain_map(f, x, y):
    """discnerve f on chains."""
    return explicit_map(x, y, lambda d, lab: (tuple(f(o) for o in lab[0]),
                                              tuple(f.on_mor(a) for a in lab[1])))


@pytest.mark.parametrize("m", [0, 1, 2])
def test_E_counts(m):
    e = standard_E(m, trunc=(3, 1))
    assert [e.n((k, 0)) for k in range(4)] == [(m + 1) ** (k + 1) for k in range(4)]


def test_E0_is_F0():
    assert find_isomorphism(standard_E(0, T), standard_F(0, T)) is not None


def test_tilde_of_point():
    res = tilde(standard_F(0, (2, 1)), T)
    assert set(res.tilde.counts().values()) == {1}
    assert res.exact


@pytest.mark.parametrize("c", [terminal_category(), interval_category(1), interval_category(2),
                               iso_interval_category(1)[0]], ids=lambda c: c.name)
def test_tilde_of_discrete_nerve(c):
    v = discnerve_tilde_check(c, T)
    assert v.is_yes, v.reason


def test_tilde_comparison_needs_discrete_input():
    from segal_lab.verdict import ConstructionError
    res = tilde(standard_F(0, (2, 1)), (1, 1))
    res.input.meta.pop("category", None)
    with pytest.raises(ConstructionError):
        discnerve_comparison(res)


def test_tilde_of_E_is_contractible():
    res = tilde(standard_E(1, (2, 1)), T)
    assert res.tilde.meta.get("levels") == "groupoid nerves"
    assert contractible_levels(res.tilde).is_yes


def test_classifying_diagram_levels_not_contractible():
    assert contractible_levels(classifying_diagram(interval_category(1), T)).is_no


@pytest.mark.parametrize("w", [standard_F(0, T), standard_E(1, T),
                               discrete_nerve(interval_category(1), T)],
                         ids=["F0", "E", "discnerve[1]"])
def test_unit_is_dk(w):
    assert tilde_dk_check(w, T).is_yes


def test_unit_agrees_with_inclusion():
    c = iso_interval_category(1)[0]
    w = discrete_nerve(c, (2, 1))
    res = tilde(w, T)
    phi = discnerve_comparison(res)
    # composing the unit with the comparison is the chain-to-grid inclusion
    from segal_lab.sspace import discnerve_inclusion
    inc = discnerve_inclusion(w, phi.target)
    for d in res.unit.images:
        assert [phi.images[d][y] for y in res.unit.images[d]] == inc.images[d]


# ---------------------------------------------------------------- properties

@given(small_categories(2))
def test_tilde_matches_classifying_diagram(c):
    assert discnerve_tilde_check(c, (2, 1)).is_yes


@given(small_categories(2))
def test_unit_injective_on_discrete_nerves(c):
    res = tilde(discrete_nerve(c, (2, 1)), (2, 1))
    assert res.unit.is_map()
    assert res.unit.is_injective()


@given(small_categories(2), small_categories(2), small_categories(2))
def test_tilde_is_functorial(a, b, c):
    fs = list(enumerate_functors(a, b))[:2]
    gs = list(enumerate_functors(b, c))[:2]
    xa, xb, xc = (discrete_nerve(k, (2, 1)) for k in (a, b, c))
    ra, rb, rc = (tilde(x, (1, 1)) for x in (xa, xb, xc))
    for f in fs:
        for g in gs:
            mf, mg = chain_map(f, xa, xb), chain_map(g, xb, xc)
            lhs = tilde_map(mf.then(mg), ra, rc)
            rhs = tilde_map(mf, ra, rb).then(tilde_map(mg, rb, rc))
            assert lhs.images == rhs.images


@given(small_categories(2))
def test_unit_is_natural(c):
    # the unit commutes with identities and with tilde of the identity
    from segal_lab.simplicial import identity_map
    x = discrete_nerve(c, (2, 1))
    res = tilde(x, (1, 1))
    idt = tilde_map(identity_map(x), res, res)
    assert all(idt.images[d] == list(range(res.tilde.n(d))) for d in idt.images)
    assert completion_unit(x, res.tilde).images == res.unit.images
