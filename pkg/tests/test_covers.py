import functools
import itertools
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from segal_lab.covers import (alpha_image, alternating_word, c_sub, e_filtration,
                              enumerate_covers, filtration_piece_by_words,
                              filtration_pushout_check, h_sub, hc_gluing_check, is_cover,
                              nondegenerate_counts, prism_decomposition_check, sigma)
from segal_lab.simplicial import generated_by, image, whole
from segal_lab.sspace import boundary_F, standard_E, standard_F, standard_G


def F(n):
    return standard_F(n, trunc=(max(n, 1), 1))


def interval_oracle(n):
    """Covers as sets of maximal intervals [i, i+k], from unions of interval down-closures."""
    ivs = [(i, i + k) for k in range(1, n + 1) for i in range(n - k + 1)]
    out = set()
    for r in range(1, len(ivs) + 1):
        for fam in itertools.combinations(ivs, r):
            if not all(any(a <= i and i + 1 <= b for a, b in fam) for i in range(n)):
                continue
            out.add(frozenset(iv for iv in fam
                              if not any(o != iv and o[0] <= iv[0] and iv[1] <= o[1] for o in fam)))
    return out


def as_intervals(cover):
    return frozenset((i, i + k) for i, k in cover.constituents)


def catalan(n):
    return comb(2 * n, n) // (n + 1)


# ---------------------------------------------------------------- α-images and the predicate

def test_alpha_image_whole():
    for n in range(1, 4):
        f = F(n)
        assert alpha_image(0, n, n, f) == whole(f)


def test_alpha_edges_make_spine():
    f = F(2)
    u = alpha_image(0, 1, 2, f).union(alpha_image(1, 1, 2, f))
    assert u == standard_G(2, parent=f)


def test_alpha_overlap():
    f = F(3)
    meet = alpha_image(0, 2, 3, f).intersection(alpha_image(1, 2, 3, f))
    assert meet == alpha_image(1, 1, 3, f)


def test_alpha_out_of_range():
    with pytest.raises(ValueError):
        alpha_image(2, 2, 3)


def test_is_cover_examples():
    for n in range(1, 4):
        f = F(n)
        assert is_cover(standard_G(n, parent=f)).is_yes
        assert is_cover(whole(f)).is_yes
    b = boundary_F(2, trunc=(2, 1))
    assert is_cover(b).is_no


def test_is_cover_needs_spine():
    f = F(3)
    u = alpha_image(0, 1, 3, f).union(alpha_image(2, 1, 3, f))
    assert is_cover(u).is_no


def test_boundary_minus_face_is_not_cover():
    # ∂F(3) with the interior of its last face removed
    f = F(3)
    faces = [generated_by(f, [((2, 0), f.index[2, 0][tuple(v)])])
             for v in itertools.combinations(range(4), 3) if v != (1, 2, 3)]
    u = faces[0]
    for x in faces[1:]:
        u = u.union(x)
    assert is_cover(u).is_no


@pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 14)])
def test_cover_counts(n, count):
    assert len(enumerate_covers(n)) == count


def test_covers_of_F3_listed():
    want = {frozenset({(0, 1), (1, 2), (2, 3)}), frozenset({(0, 2), (2, 3)}),
            frozenset({(0, 1), (1, 3)}), frozenset({(0, 2), (1, 3)}), frozenset({(0, 3)})}
    assert {as_intervals(c) for c in enumerate_covers(3)} == want


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_covers_match_oracle(n):
    got = {as_intervals(c) for c in enumerate_covers(n)}
    assert got == interval_oracle(n)
    assert len(got) == catalan(n)


def test_enumerate_bound():
    with pytest.raises(ValueError):
        enumerate_covers(6)


# ---------------------------------------------------------------- properties of covers

@given(st.integers(1, 5), st.data())
def test_alpha_intersections_are_alpha_or_empty(n, data):
    f = F(n)
    ivs = [(i, k) for k in range(0, n + 1) for i in range(n - k + 1)]
    (i1, k1), (i2, k2) = data.draw(st.sampled_from(ivs)), data.draw(st.sampled_from(ivs))
    meet = alpha_image(i1, k1, n, f).intersection(alpha_image(i2, k2, n, f))
    lo, hi = max(i1, i2), min(i1 + k1, i2 + k2)
    if lo > hi:
        assert meet.is_empty()
    else:
        assert meet == alpha_image(lo, hi - lo, n, f)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_every_enumerated_cover_passes(n):
    for c in enumerate_covers(n):
        v = is_cover(c.realized)
        assert v.is_yes
        assert tuple(sorted(v.witness)) == tuple(sorted(c.constituents))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_spine_is_smallest_cover(n):
    covers = enumerate_covers(n)
    spine = standard_G(n, parent=covers[0].realized.parent)
    assert all(spine.issubset(c.realized) for c in covers)
    assert covers[0].realized == spine


@functools.lru_cache(maxsize=None)
def listed_covers(n):
    return {as_intervals(c) for c in enumerate_covers(n)}


@given(st.integers(1, 4), st.data())
def test_is_cover_implies_enumerated(n, data):
    f = F(n)
    ivs = [(i, k) for k in range(1, n + 1) for i in range(n - k + 1)]
    chosen = data.draw(st.lists(st.sampled_from(ivs), min_size=1, unique=True))
    u = alpha_image(*chosen[0], n, f)
    for ik in chosen[1:]:
        u = u.union(alpha_image(*ik, n, f))
    v = is_cover(u)
    spans_spine = all(any(i <= j and j + 1 <= i + k for i, k in chosen) for j in range(n))
    assert v.is_yes == spans_spine
    if v.is_yes:
        assert frozenset((i, i + k) for i, k in v.witness) in listed_covers(n)


# ---------------------------------------------------------------- prism

@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_prism_decomposition(n):
    v = prism_decomposition_check(n)
    assert v.is_yes, v.reason
    assert v.witness["pieces"] == n + 1 and v.witness["gluings"] == n


# ---------------------------------------------------------------- filtration of E

def test_E_cells_and_nondegenerates():
    E = standard_E(1, trunc=(4, 1))
    for k in range(5):
        assert E.n((k, 0)) == 2 ** (k + 1)
        if k >= 1:
            labels = {E.labels[k, 0][c][0] for c in E.nondegenerate((k, 0))}
            assert labels == {alternating_word(k + 1, 0), alternating_word(k + 1, 1)}


def test_first_filtration_piece_is_F1():
    from segal_lab.simplicial import find_isomorphism
    E = standard_E(1, trunc=(3, 1))
    e1 = e_filtration(1, E)[0].to_simp()
    assert find_isomorphism(e1, standard_F(1, trunc=(3, 1))) is not None


def test_filtration_matches_word_description():
    E = standard_E(1, trunc=(4, 1))
    for k, piece in enumerate(e_filtration(4, E), start=1):
        assert piece == filtration_piece_by_words(E, k)


def test_filtration_is_increasing_and_exhausts():
    k = 4
    E = standard_E(1, trunc=(k, 1))
    chain = e_filtration(k, E)
    assert all(a.issubset(b) for a, b in zip(chain, chain[1:]))
    # within truncation k the last piece holds every cell up to outer degree k - 1
    # plus one of the two top alternating words
    last = nondegenerate_counts(chain[-1])
    assert last == {0: 2, **{m: 2 for m in range(1, k)}, k: 1}
    assert all(nondegenerate_counts(whole(E))[m] == 2 for m in range(1, k + 1))


def test_sigma_picks_alternating_word():
    E = standard_E(1, trunc=(3, 1))
    for k in (1, 2, 3):
        fk = standard_F(k, trunc=(3, 1))
        s = sigma(k, E, fk)
        assert s.is_map()
        top = s.images[k, 0][fk.index[k, 0][tuple(range(k + 1))]]
        assert E.labels[k, 0][top][0] == alternating_word(k + 1)
        assert image(s) == e_filtration(k, E)[-1]


@pytest.mark.parametrize("k", [2, 3, 4])
def test_filtration_pushout(k):
    assert filtration_pushout_check(k).is_yes


@pytest.mark.parametrize("k", [2, 3, 4])
def test_hc_gluing(k):
    assert hc_gluing_check(k).is_yes


def test_low_k_rejected():
    with pytest.raises(ValueError):
        filtration_pushout_check(1)
    with pytest.raises(ValueError):
        hc_gluing_check(1)


def test_h_and_c_sizes():
    fk = standard_F(2, trunc=(2, 1))
    h, c = h_sub(fk), c_sub(fk)

    def nd(sub, m):
        return {fk.labels[m, 0][x] for x in sub.nondegenerate().get((m, 0), ())}

    # H(2) avoids the edge 12; C(2) avoids the vertex 2
    assert nd(h, 1) == {(0, 1), (0, 2)} and nd(h, 2) == set()
    assert nd(c, 0) == {(0,), (1,)} and nd(c, 1) == {(0, 1)}
    assert c.issubset(h)
