"""Truncated simplicial spaces (bisimplicial sets).

Degrees are ``(m, n)``: ``m`` is the outer direction and ``n`` the space
direction.  Cells of classification diagrams are grids, i.e. functors
[m] x [n] -> C whose vertical arrows are weak equivalences, stored as

    (objs, h, v)

with ``objs[j][i]`` the object at column ``i`` of row ``j``, ``h[j][i]`` the
horizontal arrow ``objs[j][i] -> objs[j][i+1]`` and ``v[j][i]`` the vertical
arrow ``objs[j][i] -> objs[j+1][i]``.
"""

from __future__ import annotations

import itertools
from .fincat import FinCat, WidePair, discrete_category, iso_interval_category
from .simplicial import (Simp, SimpMap, SubObject, compose_theta, explicit_map, find_maps,
                         generated_by, largest_avoiding, monotone_maps, product, rect,
                         sorted_degrees)
from .sset import _chains, chain_act, longest_chain, nerve_category
from .verdict import ConstructionError, Verdict

DEFAULT_TRUNC = (4, 4)
DEFAULT_BUDGET = 60_000


# ---------------------------------------------------------------- representables

def standard_F(k: int, trunc=DEFAULT_TRUNC) -> Simp:
    """F(k): level m is the discrete set of monotone maps [m] -> [k]."""
    return Simp.from_action(trunc, lambda d: monotone_maps(d[0], k),
                            lambda lab, d, a, th: compose_theta(lab, th) if a == 0 else lab,
                            gen=(k, 0), cosk=(1, 1), meta={"kind": "F", "k": k, "discrete": True},
                            name=f"F({k})")


def constant_simplex(n: int, trunc=DEFAULT_TRUNC) -> Simp:
    """Δ[n] viewed as a simplicial space constant in the outer direction."""
    return Simp.from_action(trunc, lambda d: monotone_maps(d[1], n),
                            lambda lab, d, a, th: compose_theta(lab, th) if a == 1 else lab,
                            gen=(0, n), cosk=(1, 1), name=f"Δ[{n}]")


def rep(k: int, n: int, trunc=DEFAULT_TRUNC) -> Simp:
    """F(k) x Δ[n], with cells labelled (alpha, beta)."""
    def cells(d):
        return itertools.product(monotone_maps(d[0], k), monotone_maps(d[1], n))

    def act(lab, d, a, th):
        al, be = lab
        return (compose_theta(al, th), be) if a == 0 else (al, compose_theta(be, th))

    return Simp.from_action(trunc, cells, act, gen=(k, n), cosk=(1, 1), name=f"F({k})xΔ[{n}]")


def constant_space(x: Simp, trunc=DEFAULT_TRUNC, axis: int = 1) -> Simp:
    """A simplicial set as a simplicial space constant along the other axis."""
    other = 1 - axis

    def cells(d):
        return x.labels[(d[axis],)]

    def act(lab, d, a, th):
        if a == other:
            return lab
        dd, y = x.act_cell((d[axis],), 0, th, x.index[(d[axis],)][lab])
        return x.labels[dd][y]

    box = tuple(min(trunc[a], x.trunc[0]) if a == axis else trunc[a] for a in range(2))
    gen = [0, 0]
    gen[axis] = x.gen[0]
    cosk = [1, 1]
    cosk[axis] = x.cosk[0]
    meta = dict(x.meta)
    return Simp.from_action(box, cells, act, gen=tuple(gen) if x.gen[0] is not None else None,
                            cosk=tuple(cosk) if x.cosk[0] is not None else None,
                            meta=meta, name=f"const({x.name})")


def iota(f: Simp) -> int:
    """The top cell of F(k) at bidegree (k, 0)."""
    k = f.meta["k"]
    return f.index[(k, 0)][tuple(range(k + 1))]


def boundary_F(k: int, trunc=DEFAULT_TRUNC) -> SubObject:
    if k < 1:
        raise ValueError("boundary_F needs k >= 1")
    f = standard_F(k, trunc)
    return largest_avoiding(f, (k, 0), iota(f))


def alpha_cell(f: Simp, i: int, length: int) -> tuple:
    """The cell of F(n) for α^i: [length] -> [n], j -> j + i."""
    return (length, 0), f.index[(length, 0)][tuple(range(i, i + length + 1))]


def standard_G(k: int, trunc=DEFAULT_TRUNC, parent: Simp | None = None) -> SubObject:
    """The spine of F(k): the union of the edges α^i F(1)."""
    if k < 1:
        raise ValueError("standard_G needs k >= 1")
    f = parent if parent is not None else standard_F(k, trunc)
    return generated_by(f, [alpha_cell(f, i, 1) for i in range(k)])


# ---------------------------------------------------------------- grids

def _grids(c: FinCat, weq, m: int, n: int):
    """Functors [m] x [n] -> C with vertical arrows in weq."""
    wout = {x: [f for f in c.out_arrows(x) if f in weq] for x in c.objects}

    def next_rows(objs, h):
        new_o, new_h, new_v = [None] * (m + 1), [None] * m, [None] * (m + 1)

        def rec(i):
            if i == m:
                yield tuple(new_o), tuple(new_h), tuple(new_v)
                return
            for g in c.out_arrows(new_o[i]):
                y = c.tgt(g)
                lhs = c.comp(g, new_v[i])
                for v in c.hom(objs[i + 1], y):
                    if v in weq and c.comp(v, h[i]) == lhs:
                        new_h[i], new_v[i + 1], new_o[i + 1] = g, v, y
                        yield from rec(i + 1)

        for v0 in wout[objs[0]]:
            new_v[0], new_o[0] = v0, c.tgt(v0)
            yield from rec(0)

    def stack(rows_o, rows_h, rows_v):
        if len(rows_o) == n + 1:
            yield tuple(rows_o), tuple(rows_h), tuple(rows_v)
            return
        for o, h, v in next_rows(rows_o[-1], rows_h[-1]):
            yield from stack(rows_o + [o], rows_h + [h], rows_v + [v])

    for objs, h in _chains(c, m):
        yield from stack([objs], [h], [])


def _elementary(theta, n):
    """('d', i) if theta is the coface skipping i, ('s', i) if the codegeneracy at i, else None."""
    if len(theta) == n:
        for i, t in enumerate(theta):
            if t != i:
                return "d", i
        return "d", n
    if len(theta) == n + 2:
        for i in range(n + 1):
            if theta[i] == theta[i + 1]:
                return "s", i
    return None


def _drop(seq, i):
    return seq[:i] + seq[i + 1:]


def _dup(seq, i):
    return seq[:i + 1] + seq[i:]


def grid_act(c: FinCat, cell, axis: int, theta):
    objs, h, v = cell
    comp = c.compose
    if axis == 0:
        m = len(objs[0]) - 1
        op = _elementary(theta, m)
        if op is not None:
            kind, i = op
            if kind == "d":
                if i == 0:
                    nh = tuple(row[1:] for row in h)
                elif i == m:
                    nh = tuple(row[:-1] for row in h)
                else:
                    nh = tuple(row[:i - 1] + (comp[row[i], row[i - 1]],) + row[i + 1:] for row in h)
                return (tuple(_drop(row, i) for row in objs), nh, tuple(_drop(row, i) for row in v))
            ident = c.identity
            return (tuple(_dup(row, i) for row in objs),
                    tuple(hr[:i] + (ident[orow[i]],) + hr[i:] for orow, hr in zip(objs, h)),
                    tuple(_dup(row, i) for row in v))
        rows = [chain_act(c, (objs[j], h[j]), theta) for j in range(len(objs))]
        nv = tuple(tuple(row[t] for t in theta) for row in v)
        return tuple(r[0] for r in rows), tuple(r[1] for r in rows), nv
    n = len(objs) - 1
    op = _elementary(theta, n)
    if op is not None:
        kind, i = op
        if kind == "d":
            if i == 0:
                nv = v[1:]
            elif i == n:
                nv = v[:-1]
            else:
                nv = v[:i - 1] + (tuple(comp[b, a] for a, b in zip(v[i - 1], v[i])),) + v[i + 1:]
            return _drop(objs, i), _drop(h, i), nv
        ident = c.identity
        return _dup(objs, i), _dup(h, i), v[:i] + (tuple(ident[x] for x in objs[i]),) + v[i:]
    m = len(objs[0]) - 1
    no = tuple(objs[t] for t in theta)
    nh = tuple(h[t] for t in theta)
    nv = tuple(tuple(c.comp_path([v[j][i] for j in range(theta[s], theta[s + 1])], objs[theta[s]][i])
                     for i in range(m + 1))
               for s in range(len(theta) - 1))
    return no, nh, nv


def grid_of_chain(c: FinCat, chain, n: int):
    """The cell of N(C, W) at (m, n) that repeats one row with identity verticals."""
    objs, arrs = chain
    return ((objs,) * (n + 1), (arrs,) * (n + 1),
            tuple(tuple(c.identity[x] for x in objs) for _ in range(n)))


_CACHE: dict = {}


def _cached(key, build):
    # constructions are immutable once built, so repeated requests share one object
    hit = _CACHE.get(key)
    if hit is None:
        hit = _CACHE[key] = build()
    return hit[0] if isinstance(hit, tuple) else hit


def classification_diagram(pair: WidePair, trunc=DEFAULT_TRUNC, budget: int | None = DEFAULT_BUDGET,
                           kind: str = "classification") -> Simp:
    """N(C, W): cells at (m, n) are functors [m] x [n] -> C with vertical arrows in W."""
    key = ("classification", id(pair.cat), pair.weq, tuple(trunc), budget, kind)
    return _cached(key, lambda: (_classification(pair, trunc, budget, kind), pair.cat))


def _classification(pair, trunc, budget, kind):
    c, weq = pair.cat, pair.weq
    discrete = weq == frozenset(c.identity.values())
    gen = (longest_chain(c), 0) if discrete and longest_chain(c) is not None else None
    meta = {"kind": kind, "category": c, "pair": pair, "levels": "category nerves"}
    if weq <= frozenset(c.inverses):
        meta["levels"] = "groupoid nerves"
    return Simp.from_action(trunc, lambda d: _grids(c, weq, d[0], d[1]),
                            lambda lab, d, a, th: grid_act(c, lab, a, th),
                            budget=budget, gen=gen, cosk=(2, 2), meta=meta,
                            name=f"N({c.name},W)" if kind == "classification" else f"N({c.name})")


def classifying_diagram(c: FinCat, trunc=DEFAULT_TRUNC, budget: int | None = DEFAULT_BUDGET) -> Simp:
    """N C = N(C, iso C)."""
    return classification_diagram(WidePair.isos(c), trunc, budget, kind="classifying")


def discrete_nerve(c: FinCat, trunc=DEFAULT_TRUNC, budget: int | None = DEFAULT_BUDGET) -> Simp:
    """discnerve C: level m is the set of m-chains, constant in the space direction."""
    L = longest_chain(c)
    meta = {"kind": "discrete", "category": c, "discrete": True, "levels": "groupoid nerves"}
    return Simp.from_action(trunc, lambda d: _chains(c, d[0]),
                            lambda lab, d, a, th: chain_act(c, lab, th) if a == 0 else lab,
                            budget=budget, gen=(L, 0) if L is not None else None, cosk=(2, 1),
                            meta=meta, name=f"discnerve({c.name})")


def discnerve_inclusion(dn: Simp, nc: Simp) -> SimpMap:
    """discnerve C -> N C: a chain goes to the grid with identity verticals."""
    c = dn.meta["category"]
    window = dn.shape & nc.shape
    return explicit_map(dn, nc, lambda d, lab: grid_of_chain(c, lab, d[1]), window)


def standard_E(m: int = 1, trunc=DEFAULT_TRUNC, budget: int | None = DEFAULT_BUDGET) -> Simp:
    """E(m) = discnerve I[m]; E = E(1)."""
    s = discrete_nerve(iso_interval_category(m)[0], trunc, budget)
    s.name = "E" if m == 1 else f"E({m})"
    return s


def zigzag_category() -> FinCat:
    """0 -> 2 <- 1 -> 3."""
    from .fincat import make_category
    arrows = {("id", x): (x, x) for x in range(4)}
    arrows.update({"a": (0, 2), "b": (1, 2), "c": (1, 3)})
    ident = {x: ("id", x) for x in range(4)}

    def comp(g, f):
        if g == ident[arrows[g][0]]:
            return f
        return g

    return make_category((0, 1, 2, 3), arrows, ident, comp, name="Z")


def standard_Z3(trunc=DEFAULT_TRUNC) -> Simp:
    z = discrete_nerve(zigzag_category(), trunc)
    z.name = "Z(3)"
    return z


# ---------------------------------------------------------------- operations

def sspace_product(x: Simp, y: Simp, budget: int | None = None) -> Simp:
    if x.dim != 2 or y.dim != 2:
        raise ValueError("sspace_product takes simplicial spaces")
    if x.trunc != y.trunc:
        raise ValueError(f"truncation mismatch: {x.trunc} vs {y.trunc}")
    return product(x, y, budget)


def diag_space(w: Simp) -> Simp:
    """diag W: level n is W_{n,n}, with d_i = d_i^h d_i^v."""
    shape = {(n,) for (m, n) in w.shape if m == n}
    labels = {(n,): w.labels[n, n] for (n,) in shape}
    faces, degens = {}, {}
    for (n,) in shape:
        if n >= 1:
            for i in range(n + 1):
                inner = w.faces[(n, n), 1, i]
                outer = w.faces[(n, n - 1), 0, i]
                faces[(n,), 0, i] = [outer[y] for y in inner]
        if (n + 1,) in shape:
            for i in range(n + 1):
                inner = w.degens[(n, n), 1, i]
                outer = w.degens[(n, n + 1), 0, i]
                degens[(n,), 0, i] = [outer[y] for y in inner]
    return Simp(shape, labels, faces, degens, cosk=None, name=f"diag({w.name})")


def level_space(w: Simp, m: int) -> Simp:
    """W_m as a simplicial set, tagged with its groupoid when the level is a groupoid nerve."""
    lv = w.level(m)
    kind = w.meta.get("levels")
    if kind == "groupoid nerves" and lv.trunc[0] >= 2:
        lv.meta["groupoid"] = nerve_category(lv, name=f"{w.name}_{m}")
    elif kind == "groupoid nerves" and w.meta.get("discrete"):
        lv.meta["groupoid"] = discrete_category(range(lv.n((0,))))
    return lv


# ---------------------------------------------------------------- hom objects

class _HomBuilder:
    """Cells of W^X at degree e are maps X x F(e0) x Δ[e1] -> W on a fixed window."""

    def __init__(self, w: Simp, x: Simp, window_box):
        self.w, self.x, self.box = w, x, tuple(window_box)
        self.xs = x.restrict_shape(rect(self.box))
        self._reps, self._prods, self._rmaps = {}, {}, {}

    def rep(self, e):
        if e not in self._reps:
            self._reps[e] = rep(e[0], e[1], self.box)
        return self._reps[e]

    def prod(self, e):
        if e not in self._prods:
            self._prods[e] = product(self.xs, self.rep(e))
        return self._prods[e]

    @property
    def window(self):
        return sorted_degrees(self.xs.shape)

    def cells(self, e):
        p = self.prod(e)
        for f in find_maps(p, self.w, p.shape):
            yield f.key

    def _rmap(self, e, axis, theta):
        key = (e, axis, theta)
        if key not in self._rmaps:
            e2 = list(e)
            e2[axis] = len(theta) - 1
            e2 = tuple(e2)
            src, tgt = self.rep(e2), self.rep(e)
            out = {}
            for d in self.window:
                idx = tgt.index[d]
                if axis == 0:
                    out[d] = [idx[compose_theta(theta, al), be] for al, be in src.labels[d]]
                else:
                    out[d] = [idx[al, compose_theta(theta, be)] for al, be in src.labels[d]]
            self._rmaps[key] = (e2, out)
        return self._rmaps[key]

    def act(self, key, e, axis, theta):
        e2, rm = self._rmap(e, axis, theta)
        nR, nR2 = self.rep(e), self.rep(e2)
        out = []
        for d, img in zip(self.window, key):
            r = rm[d]
            a_n, b_n = nR.n(d), nR2.n(d)
            out.append(tuple(img[a * a_n + r[b]] for a in range(self.xs.n(d)) for b in range(b_n)))
        return tuple(out)


def hom_window(w: Simp, x: Simp, degrees) -> tuple[tuple, bool]:
    """Common window box for all maps x x R(e) -> w, and whether it is exact."""
    box, exact = [], True
    for a in range(2):
        c = w.cosk[a]
        if c is not None and c <= x.trunc[a]:
            box.append(c)
            continue
        box.append(x.trunc[a])
        top = max(e[a] for e in degrees)
        if x.gen[a] is None or x.gen[a] + top > x.trunc[a]:
            exact = False
    if not rect(tuple(box)) <= x.shape:
        exact = False
    return tuple(box), exact


def internal_hom(w: Simp, x: Simp, trunc=DEFAULT_TRUNC, budget: int | None = DEFAULT_BUDGET,
                 degrees=None) -> Simp:
    """W^X: cells at (k, n) are maps X x F(k) x Δ[n] -> W, faces by precomposition."""
    degrees = frozenset(degrees) if degrees is not None else rect(trunc)
    box, exact = hom_window(w, x, degrees)
    hb = _HomBuilder(w, x, box)
    out = Simp.from_action(degrees, hb.cells, hb.act, budget=budget, cosk=w.cosk,
                           meta={"kind": "hom", "exact": exact, "window": hb.window,
                                 "builder": hb}, name=f"{w.name}^{x.name}")
    return out


def mapping_space(x: Simp, w: Simp, trunc: int = 4, budget: int | None = DEFAULT_BUDGET) -> Simp:
    """Map(X, W): level n is the set of maps X x Δ[n] -> W."""
    h = internal_hom(w, x, budget=budget, degrees={(0, n) for n in range(trunc + 1)})
    lv = h.level(0)
    lv.meta.update(exact=h.meta["exact"], hom=h)
    lv.name = f"Map({x.name},{w.name})"
    return lv


def hom_map(h: Simp, e, idx: int) -> SimpMap:
    """The map X x F(e0) x Δ[e1] -> W represented by a cell of an internal hom."""
    hb = h.meta["builder"]
    key = h.labels[e][idx]
    return SimpMap(hb.prod(e), hb.w, dict(zip(hb.window, (list(v) for v in key))))


def spine_restriction_count(w: Simp, k: int, n: int) -> int:
    """Cells of W_1 x_{W_0} ... x_{W_0} W_1 (k factors) in space degree n."""
    e, v = (1, n), (0, n)
    d1, d0 = w.faces[e, 0, 1], w.faces[e, 0, 0]
    ways = [0] * w.n(v)
    for x in range(w.n(e)):
        ways[d0[x]] += 1
    for _ in range(k - 1):
        nxt = [0] * w.n(v)
        for x in range(w.n(e)):
            nxt[d0[x]] += ways[d1[x]]
        ways = nxt
    return sum(ways)


# ---------------------------------------------------------------- functoriality and comparisons

def map_grid(f, cell):
    objs, h, v = cell
    return (tuple(tuple(f(x) for x in row) for row in objs),
            tuple(tuple(f.on_mor(a) for a in row) for row in h),
            tuple(tuple(f.on_mor(a) for a in row) for row in v))


def classifying_map(f, nc: Simp, nd: Simp) -> SimpMap:
    """N f: N C -> N D, applying f to every object and arrow of a grid."""
    return explicit_map(nc, nd, lambda d, lab: map_grid(f, lab), nc.shape & nd.shape)


def product_comparison(c: FinCat, d: FinCat, trunc=DEFAULT_TRUNC,
                       budget: int | None = DEFAULT_BUDGET) -> Verdict:
    """N(C x D) -> N C x N D induced by the projections is an isomorphism."""
    from .fincat import product as cat_product
    p, (p1, p2) = cat_product(c, d)
    npd = classifying_diagram(p, trunc, budget)
    nc, nd = classifying_diagram(c, trunc, budget), classifying_diagram(d, trunc, budget)
    target = sspace_product(nc, nd, budget)
    window = npd.shape & target.shape
    if npd.shape != target.shape:
        return Verdict.unknown({"source": sorted(npd.shape), "target": sorted(target.shape)},
                               "shapes differ under the cell budget")
    f = explicit_map(npd, target, lambda deg, lab: (map_grid(p1, lab), map_grid(p2, lab)), window)
    counts = {"degrees": len(window), "cells": npd.total_cells()}
    if f.is_isomorphism():
        return Verdict.yes(counts, "projections give an isomorphism")
    return Verdict.no(counts, "projection map is not an isomorphism")


def _path(dc: FinCat, arrows, start):
    return dc.comp_path(list(arrows), start) if arrows else dc.identity[start]


def exponential_map(c: FinCat, d: FinCat, ndc: Simp, hom: Simp) -> SimpMap:
    """N(D^C) -> (N D)^{N C}: a grid G of functors sends (g, α, β) to the grid of G(α, β)(g).

    Cells of N D are determined by their vertices and edges, so a cell of the
    hom object is identified by its values at degrees (0,0), (1,0) and (0,1)
    and the map is only evaluated there.
    """
    dc = ndc.meta["category"]
    hb = hom.meta["builder"]
    nd = hb.w
    low = [wd for wd in hb.window if sum(wd) <= 1]
    pos = [hb.window.index(wd) for wd in low]
    images = {}
    for e in sorted(ndc.shape & hom.shape):
        short = {}
        for i, key in enumerate(hom.labels[e]):
            short.setdefault(tuple(key[p] for p in pos), i)
        if len(short) != hom.n(e):
            raise ConstructionError(f"hom cells at {e} are not determined by edges")
        prod = hb.prod(e)
        row = []
        for Go, Gh, Gv in ndc.labels[e]:
            key = []
            for wd in low:
                nd_idx = nd.index[wd]
                out = []
                for g, (al, be) in prod.labels[wd]:
                    go, gh, gv = g
                    F = Go[be[0]][al[0]]
                    if wd == (0, 0):
                        out.append(nd_idx[((F(go[0][0]),),), ((),), ()])
                    elif wd == (1, 0):
                        tau = _path(dc, Gh[be[0]][al[0]:al[1]], F)
                        u = gh[0][0]
                        arr = d.comp(tau.components[c.tgt(u)], F.on_mor(u))
                        x, y = d.arrows[arr]
                        out.append(nd_idx[((x, y),), ((arr,),), ()])
                    else:
                        sig = _path(dc, [Gv[t][al[0]] for t in range(be[0], be[1])], F)
                        u = gv[0][0]
                        arr = d.comp(sig.components[c.tgt(u)], F.on_mor(u))
                        x, y = d.arrows[arr]
                        out.append(nd_idx[((x,), (y,)), ((), ()), ((arr,),)])
                key.append(tuple(out))
            row.append(short[tuple(key)])
        images[e] = row
    return SimpMap(ndc, hom, images)


def exponential_comparison(c: FinCat, d: FinCat, trunc=DEFAULT_TRUNC, budget: int | None = 5_000,
                           functor_bound: int = 10_000) -> Verdict:
    """N(D^C) and (N D)^{N C} agree through the explicit comparison map."""
    from .fincat import functor_category
    dc = functor_category(c, d, bound=functor_bound)
    ndc = classifying_diagram(dc, trunc, budget)
    nd = classifying_diagram(d, trunc, budget)
    nc = classifying_diagram(c, trunc, budget)
    hom = internal_hom(nd, nc, trunc, budget)
    if ndc.shape != hom.shape:
        return Verdict.unknown({"source": sorted(ndc.shape), "target": sorted(hom.shape)},
                               "shapes differ under the cell budget")
    f = exponential_map(c, d, ndc, hom)
    cert = {"degrees": len(ndc.shape), "cells": ndc.total_cells(), "window_exact": hom.meta["exact"]}
    if f.is_isomorphism():
        return Verdict.yes(cert, "explicit isomorphism", exact=hom.meta["exact"])
    return Verdict.no(cert, "comparison map is not an isomorphism")


__all__ = ["standard_F", "constant_simplex", "rep", "constant_space", "boundary_F", "standard_G",
           "classification_diagram", "classifying_diagram", "discrete_nerve",
           "discnerve_inclusion", "standard_E", "standard_Z3", "zigzag_category",
           "sspace_product", "diag_space", "level_space", "internal_hom", "mapping_space",
           "hom_map", "grid_act", "grid_of_chain", "iota", "alpha_cell", "map_grid",
           "classifying_map", "product_comparison", "exponential_map", "exponential_comparison"]
