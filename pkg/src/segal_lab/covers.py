"""Covers of F(n), the prism decomposition of F(1) x F(n), and the filtration of E.

F(n) is discrete in the space direction, so every subobject is determined by
its cells at space degree 0.  Constructions here use a space truncation of 1,
which keeps the space-direction structure visible without wasting cells.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .simplicial import (SimpMap, SubObject, explicit_map, generated_by, image,
                         largest_avoiding, preimage, product, whole)
from .sspace import alpha_cell, iota, standard_E, standard_F, standard_G
from .verdict import Verdict


def _F(n: int):
    return standard_F(n, trunc=(max(n, 1), 1))


@dataclass(frozen=True)
class Cover:
    parent_n: int
    constituents: tuple  # maximal (i, k) pairs, each meaning α^i F(k)
    realized: SubObject

    def to_json(self) -> dict:
        return {"n": self.parent_n, "constituents": [list(c) for c in self.constituents],
                "cells": {str(d): len(v) for d, v in sorted(self.realized.cells.items())}}


def alpha_image(i: int, k: int, n: int, parent=None) -> SubObject:
    """Image of α^i: F(k) -> F(n), j -> j + i."""
    if k < 0 or i < 0 or i + k > n:
        raise ValueError(f"α^{i}: [{k}] -> [{n}] is not defined")
    f = parent if parent is not None else _F(n)
    return generated_by(f, [alpha_cell(f, i, k)])


def _intervals(n: int):
    return [(i, k) for k in range(1, n + 1) for i in range(n - k + 1)]


def _vertex_sets(sub: SubObject) -> set:
    """Non-degenerate cells at space degree 0, as vertex sets of [n]."""
    out = set()
    for (m, s), cells in sub.cells.items():
        if s == 0:
            for c in cells:
                lab = sub.parent.labels[m, 0][c]
                if len(set(lab)) == len(lab):
                    out.add(frozenset(lab))
    return out


def is_cover(g: SubObject) -> Verdict:
    """A union of α-images with k >= 1 that contains every vertex and the spine G(n)."""
    f = g.parent
    n = f.meta["k"]
    if n == 0:
        ok = len(g.cells.get((0, 0), ())) == 1
        return (Verdict.yes([], "F(0) covers itself") if ok
                else Verdict.no(None, "missing the vertex"))
    inside = [(i, k) for i, k in _intervals(n) if alpha_cell(f, i, k)[1] in g.cells.get((k, 0), ())]
    union = None
    for i, k in inside:
        a = alpha_image(i, k, n, f)
        union = a if union is None else union.union(a)
    if union is None or union != g:
        return Verdict.no({"alpha_images_inside": inside}, "not a union of α-images")
    spine = standard_G(n, parent=f)
    if not spine.issubset(g):
        return Verdict.no(None, "does not contain G(n)")
    if len(g.cells.get((0, 0), ())) != n + 1:
        return Verdict.no(None, "missing vertices")
    maximal = tuple((i, k) for i, k in inside
                    if not any((i2, k2) != (i, k) and i2 <= i and i + k <= i2 + k2
                               for i2, k2 in inside))
    return Verdict.yes(maximal, "union of α-images containing G(n)")


def enumerate_covers(n: int) -> list[Cover]:
    """All covers of F(n), found as unions of sets of α-images."""
    if n > 5:
        raise ValueError("enumerate_covers supports n <= 5")
    f = _F(n)
    if n == 0:
        return [Cover(0, (), whole(f))]
    imgs = {ik: alpha_image(*ik, n, f) for ik in _intervals(n)}
    spine = standard_G(n, parent=f)
    seen, out = set(), []
    items = list(imgs)
    for r in range(1, len(items) + 1):
        for combo in itertools.combinations(items, r):
            u = imgs[combo[0]]
            for ik in combo[1:]:
                u = u.union(imgs[ik])
            if not spine.issubset(u):
                continue
            key = frozenset(_vertex_sets(u))
            if key in seen:
                continue
            seen.add(key)
            v = is_cover(u)
            out.append(Cover(n, v.witness, u))
    out.sort(key=lambda c: (c.realized.size(), c.constituents))
    return out


# ---------------------------------------------------------------- prism

def gamma(i: int, n: int) -> list:
    """γ^i: [n+1] -> [1] x [n] as a list of vertex pairs."""
    return [(0, j) if j <= i else (1, j - 1) for j in range(n + 2)]


def delta(i: int, n: int) -> list:
    return [(0, j) if j <= i else (1, j) for j in range(n + 1)]


def _prism_map(src, prism, verts) -> SimpMap:
    def fn(d, lab):
        pts = [verts[t] for t in lab]
        return tuple(p[0] for p in pts), tuple(p[1] for p in pts)

    return explicit_map(src, prism, fn)


def prism_decomposition_check(n: int) -> Verdict:
    """F(1) x F(n) as the union of the γ^i F(n+1) glued along the δ^i F(n)."""
    trunc = (n + 1, 1)
    prism = product(standard_F(1, trunc), standard_F(n, trunc))
    fn1, fn = standard_F(n + 1, trunc), standard_F(n, trunc)
    gmaps = [_prism_map(fn1, prism, gamma(i, n)) for i in range(n + 1)]
    dmaps = [_prism_map(fn, prism, delta(i, n)) for i in range(n)]
    problems = []
    for name, fs in (("gamma", gmaps), ("delta", dmaps)):
        for i, f in enumerate(fs):
            if not f.is_map():
                problems.append(f"{name}^{i} is not a map")
            if not f.is_injective():
                problems.append(f"{name}^{i} is not a monomorphism")
    gims = [image(f) for f in gmaps]
    dims = [image(f) for f in dmaps]
    for i in range(n):
        if gims[i].intersection(gims[i + 1]) != dims[i]:
            problems.append(f"gamma^{i} and gamma^{i + 1} do not meet in delta^{i}")
        if not (dims[i].issubset(gims[i]) and dims[i].issubset(gims[i + 1])):
            problems.append(f"delta^{i} is not inside its neighbours")
    for i in range(n + 1):
        for j in range(i + 2, n + 1):
            meet = gims[i].intersection(gims[j])
            if not all(meet.issubset(gims[l]) for l in range(i + 1, j)):
                problems.append(f"gamma^{i} and gamma^{j} meet outside the chain")
    union = gims[0]
    for g in gims[1:]:
        union = union.union(g)
    if union != whole(prism):
        problems.append("the gamma images do not exhaust F(1) x F(n)")
    # the pieces restricted to F(1) x G(n) are covers
    spine = standard_G(n, parent=fn) if n >= 1 else whole(fn)
    fg = SubObject(prism, {d: frozenset(a * fn.n(d) + b for a in range(standard_F(1, trunc).n(d))
                                        for b in spine.cells.get(d, ()))
                           for d in prism.shape})
    covers = []
    for i, f in enumerate(gmaps):
        v = is_cover(preimage(f, fg)) if n >= 1 else Verdict.yes()
        covers.append(v.outcome.value)
        if not v.is_yes:
            problems.append(f"gamma^{i} piece of F(1) x G(n) is not a cover")
    for i, f in enumerate(dmaps):
        v = is_cover(preimage(f, fg))
        covers.append(v.outcome.value)
        if not v.is_yes:
            problems.append(f"delta^{i} piece of F(1) x G(n) is not a cover")
    cert = {"n": n, "pieces": n + 1, "gluings": n, "cover_checks": covers}
    if problems:
        return Verdict.no({"problems": problems, **cert}, problems[0])
    return Verdict.yes(cert, "prism decomposition verified")


# ---------------------------------------------------------------- the filtration of E

def alternating_word(length: int, start: int = 0) -> tuple:
    return tuple((start + j) % 2 for j in range(length))


def word_cell(E, word) -> tuple:
    m = len(word) - 1
    return (m, 0), E.index[(m, 0)][(tuple(word), tuple((a, b) for a, b in zip(word, word[1:])))]


def _reduced(word) -> tuple:
    out = [word[0]]
    for w in word[1:]:
        if w != out[-1]:
            out.append(w)
    return tuple(out)


def filtration_piece_by_words(E, k: int) -> SubObject:
    """E^(k) described directly: cells whose reduced word is a subword of the generator."""
    gen = alternating_word(k + 1)
    subwords = {gen[a:b] for a in range(len(gen)) for b in range(a + 1, len(gen) + 1)}
    cells = {}
    for d in E.shape:
        cells[d] = frozenset(c for c, (objs, _) in enumerate(E.labels[d])
                             if _reduced(objs) in subwords)
    return SubObject(E, cells)


def e_filtration(k: int, E=None) -> list[SubObject]:
    """E^(1) ⊆ ... ⊆ E^(k), E^(j) generated by the alternating word of length j + 1."""
    E = E if E is not None else standard_E(1, trunc=(k, 1))
    return [generated_by(E, [word_cell(E, alternating_word(j + 1))]) for j in range(1, k + 1)]


def nondegenerate_counts(sub: SubObject) -> dict:
    return {d[0]: len(v) for d, v in sub.nondegenerate().items() if d[1] == 0}


def sigma(k: int, E, fk) -> SimpMap:
    """σ_k: F(k) -> E, the map picking out the alternating word of length k + 1."""
    word = alternating_word(k + 1)

    def fn(d, lab):
        objs = tuple(word[t] for t in lab)
        return objs, tuple(zip(objs, objs[1:]))

    return explicit_map(fk, E, fn)


def h_sub(fk) -> SubObject:
    """H(k): the largest subobject of F(k) avoiding d_0 ι."""
    k = fk.meta["k"]
    return largest_avoiding(fk, (k - 1, 0), fk.faces[(k, 0), 0, 0][iota(fk)])


def c_sub(fk) -> SubObject:
    """C(k): the largest subobject of F(k) avoiding d_0 d_0 ι."""
    k = fk.meta["k"]
    top = fk.faces[(k - 1, 0), 0, 0][fk.faces[(k, 0), 0, 0][iota(fk)]]
    return largest_avoiding(fk, (k - 2, 0), top)


def _pushout_sizes(left: SubObject, h: SubObject, f: SimpMap, d) -> int:
    """Size of the pushout of left <- h -> F at degree d, h mapping by f into left."""
    lcells = sorted(left.cells.get(d, ()))
    pos = {c: i for i, c in enumerate(lcells)}
    nf = f.source.n(d)
    parent = list(range(len(lcells) + nf))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in h.cells.get(d, ()):
        a, b = find(pos[f.images[d][x]]), find(len(lcells) + x)
        if a != b:
            parent[max(a, b)] = min(a, b)
    return len({find(i) for i in range(len(parent))})


def filtration_pushout_check(k: int) -> Verdict:
    """E^(k) = E^(k-1) ⊔_{H(k)} F(k) along σ_k."""
    if k < 2:
        raise ValueError("the pushout starts at k = 2")
    trunc = (k, 1)
    E = standard_E(1, trunc=trunc)
    fk = standard_F(k, trunc)
    chain = e_filtration(k, E)
    prev, cur = chain[-2], chain[-1]
    s = sigma(k, E, fk)
    h = h_sub(fk)
    problems = []
    if not s.is_map():
        problems.append("σ_k is not a map")
    sh = image(s, h)
    if not sh.issubset(prev):
        problems.append("σ_k(H(k)) is not inside E^(k-1)")
    sf = image(s)
    if prev.union(sf) != cur:
        problems.append("E^(k) is not E^(k-1) ∪ σ_k F(k)")
    if prev.intersection(sf) != sh:
        problems.append("E^(k-1) ∩ σ_k F(k) differs from σ_k H(k)")
    sizes = {}
    for d in sorted(E.shape):
        po = _pushout_sizes(prev, h, s, d)
        sizes[str(d)] = [po, len(cur.cells.get(d, ()))]
        if po != len(cur.cells.get(d, ())):
            problems.append(f"pushout has {po} cells at {d}, E^(k) has {len(cur.cells.get(d, ()))}")
    cert = {"k": k, "word": "".join("xy"[c] for c in alternating_word(k + 1)), "sizes": sizes}
    if problems:
        return Verdict.no({"problems": problems, **cert}, problems[0])
    return Verdict.yes(cert, "pushout square verified")


def hc_gluing_check(k: int) -> Verdict:
    """H(k) = C(k) ∪ d^1 F(k-1), glued along d^1 H(k-1)."""
    if k < 2:
        raise ValueError("the gluing starts at k = 2")
    trunc = (k, 1)
    fk, fk1 = standard_F(k, trunc), standard_F(k - 1, trunc)
    d1 = explicit_map(fk1, fk, lambda d, lab: tuple(t if t < 1 else t + 1 for t in lab))
    problems = []
    if not d1.is_injective():
        problems.append("d^1 is not a monomorphism")
    h, c = h_sub(fk), c_sub(fk)
    dF = image(d1)
    dH = image(d1, h_sub(fk1))
    if c.intersection(dF) != dH:
        problems.append("d^1 F(k-1) ∩ C(k) differs from d^1 H(k-1)")
    if c.union(dF) != h:
        problems.append("C(k) ∪ d^1 F(k-1) differs from H(k)")
    cert = {"k": k, "H": h.size(), "C": c.size(), "d1F": dF.size(), "d1H": dH.size()}
    if problems:
        return Verdict.no({"problems": problems, **cert}, problems[0])
    return Verdict.yes(cert, "gluing verified")


__all__ = ["Cover", "alpha_image", "is_cover", "enumerate_covers", "gamma", "delta",
           "prism_decomposition_check", "e_filtration", "filtration_piece_by_words",
           "filtration_pushout_check", "hc_gluing_check", "sigma", "h_sub", "c_sub",
           "alternating_word", "nondegenerate_counts"]
