"""Segal maps, homotopy categories, homotopy equivalences, completeness and Dwyer-Kan checks.

Weak-equivalence questions are only decided in two fragments: discrete spaces
(bijection) and nerves of groupoids (groupoid equivalence).  Anything else comes
back as Unknown.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .fincat import (CategoryError, FinCat, Functor, check_category, full_subcategory,
                     is_equivalence)
from .simplicial import (Simp, SimpMap, SubObject, choose_window, components, find_maps,
                         identity_map, product, rect)
from .sset import nerve_category
from .sspace import level_space, mapping_space, standard_E
from .verdict import FragmentViolation, SizeBoundExceeded, Verdict


class SegalStatus(str, Enum):
    EXACT = "exact-iso"
    BIJECTIVE = "bijective-on-cells"
    FAILED = "failed"
    UNKNOWN = "unknown"


@dataclass
class SegalReport:
    per_k: dict = field(default_factory=dict)  # k -> (status, witness, per-n details)
    reedy_fragment_checks: list = field(default_factory=list)

    def status(self, k) -> SegalStatus:
        return self.per_k[k][0]

    @property
    def ok(self) -> bool:
        return all(s in (SegalStatus.EXACT, SegalStatus.BIJECTIVE) for s, _, _ in self.per_k.values())

    @property
    def exact(self) -> bool:
        return all(s is SegalStatus.EXACT for s, _, _ in self.per_k.values())

    def to_json(self) -> dict:
        return {"maps": {str(k): {"status": s.value, "witness": w, "degrees": det}
                         for k, (s, w, det) in sorted(self.per_k.items())},
                "reedy_fragment_checks": list(self.reedy_fragment_checks)}


# ---------------------------------------------------------------- small helpers

def degenerate_to(w: Simp, d0, x: int, d) -> int:
    """The totally degenerate cell at degree d on the cell x of degree d0 (d0 made of zeros)."""
    cur = tuple(d0)
    for a in range(w.dim):
        if d[a] > cur[a]:
            cur, x = w.act_cell(cur, a, (0,) * (d[a] + 1), x)
    return x


def vertex_of(w: Simp, d, x: int, which) -> int:
    """The vertex of a cell picked out by `which` (one index per axis)."""
    for a in range(w.dim):
        if d[a] > 0:
            d, x = w.act_cell(d, a, (which[a],), x)
    return x


def spine(w: Simp, k: int, n: int, x: int) -> tuple:
    return tuple(w.act_cell((k, n), 0, (i, i + 1), x)[1] for i in range(k))


def _fiber_products(w: Simp, k: int, n: int, limit=None):
    e = (1, n)
    d1, d0 = w.faces[e, 0, 1], w.faces[e, 0, 0]
    by_src: dict = {}
    for x in range(w.n(e)):
        by_src.setdefault(d1[x], []).append(x)

    def rec(chain):
        if len(chain) == k:
            yield tuple(chain)
            return
        for y in by_src.get(d0[chain[-1]], ()):
            chain.append(y)
            yield from rec(chain)
            chain.pop()

    for x in range(w.n(e)):
        yield from rec([x])


def fiber_product_count(w: Simp, k: int, n: int) -> int:
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


def segal_map_check(w: Simp, k: int, n: int):
    """(bijective, witness) for φ_k: W_{k,n} -> W_{1,n} x_{W_{0,n}} ... x W_{1,n}."""
    seen = {}
    for x in range(w.n((k, n))):
        s = spine(w, k, n, x)
        if s in seen:
            return False, {"kind": "not injective", "cells": [seen[s], x], "degree": [k, n],
                           "spine": list(s)}
        seen[s] = x
    total = fiber_product_count(w, k, n)
    if total == len(seen):
        return True, None
    for tup in _fiber_products(w, k, n):
        if tup not in seen:
            return False, {"kind": "not surjective", "degree": [k, n], "spine": list(tup),
                           "edges": [repr(w.labels[1, n][e]) for e in tup]}
    raise AssertionError("count mismatch without a missing tuple")


# ---------------------------------------------------------------- Segal condition

def segal_check(w: Simp) -> SegalReport:
    if w.dim != 2 or w.trunc[0] < 2:
        raise ValueError("segal_check needs a simplicial space truncated at outer level >= 2")
    rep = SegalReport()
    for k in range(2, w.trunc[0] + 1):
        degrees = sorted(n for (m, n) in w.shape if m == k and (1, n) in w.shape)
        if not degrees:
            rep.per_k[k] = (SegalStatus.UNKNOWN, None, {})
            continue
        details, witness = {}, None
        for n in degrees:
            ok, wit = segal_map_check(w, k, n)
            details[n] = ok
            if not ok and witness is None:
                witness = wit
        if witness is not None:
            rep.per_k[k] = (SegalStatus.FAILED, witness, details)
        elif max(degrees) >= min(w.trunc[1], _space_detection_level(w)):
            rep.per_k[k] = (SegalStatus.EXACT, None, details)
        else:
            rep.per_k[k] = (SegalStatus.BIJECTIVE, None, details)
    if w.is_discrete_in(1):
        rep.reedy_fragment_checks.append("discrete")
    if covering_check(w):
        rep.reedy_fragment_checks.append("d1d0-covering")
    return rep


def _space_detection_level(w: Simp) -> int:
    """Space degree up to which bijectivity of a levelwise map forces an isomorphism.

    When every level is the nerve of a category, so is the fiber product, and a
    map of nerves bijective on vertices and edges is an isomorphism.  Otherwise
    fall back on the coskeletality level.
    """
    if w.meta.get("levels") in ("category nerves", "groupoid nerves"):
        return 1
    return w.cosk[1] if w.cosk[1] is not None else w.trunc[1]


def covering_check(w: Simp) -> bool:
    """(d_1, d_0): W_1 -> W_0 x W_0 has unique lifts of space-direction simplices."""
    for n in range(1, w.trunc[1] + 1):
        if (1, n) not in w.shape:
            break
        d1, d0 = w.faces[(1, n), 0, 1], w.faces[(1, n), 0, 0]
        count0 = {}
        for a in range(w.n((0, n))):
            v = vertex_of(w, (0, n), a, (0, 0))
            count0[v] = count0.get(v, 0) + 1
        keys = set()
        for x in range(w.n((1, n))):
            keys.add((d1[x], d0[x], w.act_cell((1, n), 1, (0,), x)[1]))
        if len(keys) != w.n((1, n)):
            return False
        e1d1, e1d0 = w.faces[(1, 0), 0, 1], w.faces[(1, 0), 0, 0]
        expected = sum(count0.get(e1d1[e], 0) * count0.get(e1d0[e], 0) for e in range(w.n((1, 0))))
        if expected != w.n((1, n)):
            return False
    return True


def category_from_discrete_segal(w: Simp, name="") -> FinCat:
    if not w.is_discrete_in(1):
        raise ValueError("input is not discrete in the space direction")
    for k in (2, 3):
        if (k, 0) in w.shape:
            ok, wit = segal_map_check(w, k, 0)
            if not ok:
                raise ValueError(f"Segal map at k={k} is not bijective: {wit}")
    return nerve_category(w.column(0), name=name or f"cat({w.name})")


# ---------------------------------------------------------------- objects and mapping spaces

def objects_of(w: Simp) -> list[int]:
    return list(range(w.n((0, 0))))


def identity_of(w: Simp, x: int) -> int:
    _check_vertex(w, x)
    return w.degens[(0, 0), 0, 0][x]


def _check_vertex(w, x):
    if not 0 <= x < w.n((0, 0)):
        raise KeyError(f"unknown object {x}")


def multi_map_space(w: Simp, xs) -> SubObject:
    """map(x_0, ..., x_k): cells of W_k whose vertices are the degenerate cells on the x_i."""
    k = len(xs) - 1
    for x in xs:
        _check_vertex(w, x)
    lv = w.level(k)
    cells = {}
    for (n,) in lv.shape:
        targets = [degenerate_to(w, (0, 0), x, (0, n)) for x in xs]
        keep = set()
        for c in range(w.n((k, n))):
            if all(w.act_cell((k, n), 0, (i,), c)[1] == targets[i] for i in range(k + 1)):
                keep.add(c)
        cells[(n,)] = frozenset(keep)
    return SubObject(lv, cells)


def map_space(w: Simp, x: int, y: int) -> Simp:
    sub = multi_map_space(w, (x, y))
    if not sub.cells.get((0,)):
        raise ValueError(f"map({x},{y}) is empty")
    out = sub.to_simp(name=f"map({x},{y})")
    return out


def fiber_vertices(w: Simp, x: int, y: int) -> list[int]:
    d1, d0 = w.faces[(1, 0), 0, 1], w.faces[(1, 0), 0, 0]
    return [f for f in range(w.n((1, 0))) if d1[f] == x and d0[f] == y]


def fiber_components(w: Simp, x: int, y: int) -> list[list[int]]:
    """π0 of map(x, y), as lists of vertices of W_1."""
    verts = fiber_vertices(w, x, y)
    pos = {v: i for i, v in enumerate(verts)}
    parent = list(range(len(verts)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    if (1, 1) in w.shape:
        vd1, vd0 = w.faces[(1, 1), 1, 1], w.faces[(1, 1), 1, 0]
        od1, od0 = w.faces[(1, 1), 0, 1], w.faces[(1, 1), 0, 0]
        dx, dy = degenerate_to(w, (0, 0), x, (0, 1)), degenerate_to(w, (0, 0), y, (0, 1))
        for e in range(w.n((1, 1))):
            if od1[e] != dx or od0[e] != dy:
                continue
            a, b = vd1[e], vd0[e]
            if a in pos and b in pos:
                ra, rb = find(pos[a]), find(pos[b])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups: dict = {}
    for v in verts:
        groups.setdefault(find(pos[v]), []).append(v)
    return sorted(groups.values())


def compose(w: Simp, f: int, g: int) -> set[int]:
    """All d_1 k over 2-cells k at (2, 0) with d_2 k = f and d_0 k = g."""
    d2, d1, d0 = (w.faces[(2, 0), 0, i] for i in (2, 1, 0))
    out = {d1[k] for k in range(w.n((2, 0))) if d2[k] == f and d0[k] == g}
    if not out:
        raise ValueError(f"no lift of ({g}, {f}) along the Segal map")
    return out


# ---------------------------------------------------------------- homotopy category

@dataclass
class HoCat:
    cat: FinCat
    object_origin: dict  # object -> vertex of W_0
    hom_origin: dict  # morphism -> sorted vertices of W_1 in its class
    class_of: dict  # vertex of W_1 -> morphism

    def to_json(self) -> dict:
        return {"objects": list(self.cat.objects),
                "morphisms": {str(m): {"source": s, "target": t, "vertices": self.hom_origin[m]}
                              for m, (s, t) in self.cat.arrows.items()},
                "composition": {f"{g}*{f}": h for (g, f), h in sorted(self.cat.compose.items())}}


def ho_category(w: Simp, name="") -> HoCat:
    objs = objects_of(w)
    class_of, hom_origin, arrows = {}, {}, {}
    for x in objs:
        for y in objs:
            for j, comp in enumerate(fiber_components(w, x, y)):
                m = (x, y, j)
                arrows[m] = (x, y)
                hom_origin[m] = comp
                for v in comp:
                    class_of[v] = m
    identity = {x: class_of[identity_of(w, x)] for x in objs}
    table = {}
    d2, d1, d0 = (w.faces[(2, 0), 0, i] for i in (2, 1, 0))
    for k in range(w.n((2, 0))):
        f, g, h = class_of[d2[k]], class_of[d0[k]], class_of[d1[k]]
        prev = table.get((g, f))
        if prev is not None and prev != h:
            raise FragmentViolation(f"composition not well defined on components: {g}∘{f} "
                                    f"gives both {prev} and {h}")
        table[g, f] = h
    cat = FinCat(tuple(objs), arrows, identity, table, name or f"ho({w.name})")
    missing = [(g, f) for g, f in cat.composable_pairs() if (g, f) not in table]
    if missing:
        raise FragmentViolation(f"no lift for composable classes {missing[0]}")
    check_category(cat)
    return HoCat(cat, {x: x for x in objs}, hom_origin, class_of)


def ho_post_pre_compose(h: HoCat, f) -> tuple[dict, dict]:
    """(f_*, f^*): post-composition hom(x, a) -> hom(x, b) and pre-composition hom(b, z) -> hom(a, z)."""
    c = h.cat
    a, b = c.arrows[f]
    post = {g: c.comp(f, g) for x in c.objects for g in c.hom(x, a)}
    pre = {g: c.comp(g, f) for z in c.objects for g in c.hom(b, z)}
    return post, pre


def associativity_check(w: Simp, ho: HoCat | None = None) -> Verdict:
    """Composites of every composable triple agree on components, and units act trivially.

    For each triple some choice of lifts must give the same vertex for both
    bracketings, and every choice must land in the same component.
    """
    ho = ho or ho_category(w)
    cls = ho.class_of
    d1, d0 = w.faces[(1, 0), 0, 1], w.faces[(1, 0), 0, 0]
    by_src: dict = {}
    for e in range(w.n((1, 0))):
        by_src.setdefault(d1[e], []).append(e)
    memo: dict = {}

    def comp(f, g):
        if (f, g) not in memo:
            memo[f, g] = compose(w, f, g)
        return memo[f, g]

    triples = 0
    for f in range(w.n((1, 0))):
        for g in by_src.get(d0[f], ()):
            for h in by_src.get(d0[g], ()):
                triples += 1
                left = set().union(*(comp(gf, h) for gf in comp(f, g)))
                right = set().union(*(comp(f, hg) for hg in comp(g, h)))
                if not left & right:
                    return Verdict.no({"triple": [f, g, h]}, "no common composite for the two bracketings")
                if len({cls[v] for v in left | right}) != 1:
                    return Verdict.no({"triple": [f, g, h]}, "bracketings land in different components")
    for f in range(w.n((1, 0))):
        ix, iy = identity_of(w, d1[f]), identity_of(w, d0[f])
        if f not in comp(ix, f) or f not in comp(f, iy):
            return Verdict.no({"edge": f}, "identity does not act as a unit")
        if {cls[v] for v in comp(ix, f) | comp(f, iy)} != {cls[f]}:
            return Verdict.no({"edge": f}, "unit composites leave the component")
    return Verdict.yes({"triples": triples, "edges": w.n((1, 0))}, "associative and unital")


# ---------------------------------------------------------------- homotopy equivalences

def _edge_table(w: Simp, k: int, pairs):
    return [[w.act_cell((k, 0), 0, p, x)[1] for p in pairs] for x in range(w.n((k, 0)))]


def is_hoequiv(w: Simp, g: int, ho: HoCat | None = None) -> Verdict:
    """Lift (s_0 y, g, s_0 x) along Z(3) -> F(3); cross-checked against invertibility in ho."""
    if w.trunc[0] < 3 or (3, 0) not in w.shape:
        raise ValueError("is_hoequiv needs outer level 3")
    x, y = w.faces[(1, 0), 0, 1][g], w.faces[(1, 0), 0, 0][g]
    want = (identity_of(w, y), g, identity_of(w, x))
    cache = w.meta.setdefault("_z3_edges", {})
    if "table" not in cache:
        cache["table"] = _edge_table(w, 3, [(0, 2), (1, 2), (1, 3)])
    lift = next((h for h, e in enumerate(cache["table"]) if tuple(e) == want), None)
    ho = ho or ho_category(w)
    m = ho.class_of[g]
    invertible = ho.cat.is_iso(m)
    if (lift is not None) != invertible:
        raise FragmentViolation(f"lift search and ho-invertibility disagree for cell {g}")
    if lift is not None:
        return Verdict.yes({"H": lift}, "lift along Z(3) found", class_=m)
    return Verdict.no({"class": m}, "no lift along Z(3); class not invertible in ho")


def hoequiv_subspace(w: Simp) -> SubObject:
    """Components of W_1 whose vertices are homotopy equivalences."""
    ho = ho_category(w)
    lv = w.level(1)
    good = {g for g in range(w.n((1, 0))) if is_hoequiv(w, g, ho).is_yes}
    comps = components(lv)
    keep = set()
    for comp in comps:
        flags = {v in good for v in comp}
        if len(flags) > 1:
            raise FragmentViolation("a component mixes equivalences and non-equivalences")
        if flags == {True}:
            keep.update(comp)
    cells = {}
    for (n,) in lv.shape:
        cells[(n,)] = frozenset(c for c in range(lv.n((n,)))
                                if vertex_of(lv, (n,), c, (0,)) in keep)
    return SubObject(lv, cells)


# ---------------------------------------------------------------- completeness

def _s0_functor(w: Simp, hoequiv: SubObject) -> Functor:
    g0 = level_space(w, 0).meta["groupoid"]
    g1 = level_space(w, 1).meta["groupoid"]
    target = full_subcategory(g1, sorted(hoequiv.cells[(0,)]))
    obj_map = {x: w.degens[(0, 0), 0, 0][x] for x in g0.objects}
    mor_map = {f: w.degens[(0, 1), 0, 0][f] for f in g0.morphisms}
    return Functor(g0, target, obj_map, mor_map)


def e_restriction_pi0(w: Simp) -> dict:
    """π0 data for Map(E, W) and its restriction to W_1 along the edge F(1) -> E."""
    E = standard_E(1, trunc=w.trunc)
    ms = mapping_space(E, w, trunc=1)
    comps = components(ms)
    hb = ms.meta["hom"].meta["builder"]
    # the non-degenerate edge x -> y of E, paired with the unique point of F(0) x Δ[0]
    e_idx = E.index[(1, 0)][((0, 1), ((0, 1),))]
    cell = e_idx * hb.rep((0, 0)).n((1, 0))
    pos = hb.window.index((1, 0))
    restrict = [ms.labels[(0,)][i][pos][cell] for i in range(ms.n((0,)))]
    return {"components": comps, "edge": restrict, "exact": ms.meta["exact"]}


def completeness_check(w: Simp) -> Verdict:
    seg = segal_check(w)
    if not seg.ok:
        return Verdict.unknown(seg.to_json(), "Segal condition fails; completeness undefined")
    he = hoequiv_subspace(w)
    pi0_w0 = components(w.level(0)) if w.trunc[1] >= 1 else [[x] for x in objects_of(w)]
    he_simp = he.to_simp()
    pi0_he = len(components(he_simp)) if he_simp.trunc[0] >= 1 else len(he.cells[(0,)])
    counts = {"pi0_W0": len(pi0_w0), "pi0_hoequiv": pi0_he}
    if w.is_discrete_in(1):
        s0 = w.degens[(0, 0), 0, 0]
        image = {s0[x] for x in objects_of(w)}
        verdict = image == set(he.cells[(0,)]) and len(image) == w.n((0, 0))
        extra = dict(counts, fragment="discrete")
        if verdict:
            return Verdict.yes(counts, "s_0 is a bijection onto W_hoequiv", **extra)
        return Verdict.no(counts, "s_0 is not a bijection onto W_hoequiv", **extra)
    if w.meta.get("levels") == "groupoid nerves":
        F = _s0_functor(w, he)
        v = is_equivalence(F)
        cross = _map_e_cross_check(w, len(pi0_w0))
        extra = dict(counts, fragment="groupoid nerves", map_e=cross)
        if v.is_yes:
            return Verdict.yes(counts, "s_0 induces an equivalence of groupoids", **extra)
        return Verdict.no(dict(counts, failure=v.witness), v.reason, **extra)
    return Verdict.unknown(counts, "outside the decidable fragment")


def _map_e_cross_check(w: Simp, pi0_w0: int) -> dict:
    try:
        data = e_restriction_pi0(w)
    except SizeBoundExceeded as e:
        return {"status": "skipped", "reason": str(e)}
    return {"pi0_map_E": len(data["components"]), "pi0_W0": pi0_w0,
            "agrees": len(data["components"]) == pi0_w0}


def thm62_pi0_check(w: Simp) -> Verdict:
    """π0 Map(E, W) -> π0 W_hoequiv (restriction along the edge of E) is a bijection."""
    data = e_restriction_pi0(w)
    he = hoequiv_subspace(w)
    lv = he.parent
    comps_he = [c for c in components(lv) if c[0] in he.cells[(0,)]]
    comp_index = {v: i for i, c in enumerate(comps_he) for v in c}
    images = {}
    for i, comp in enumerate(data["components"]):
        targets = {comp_index.get(data["edge"][v]) for v in comp}
        if None in targets or len(targets) != 1:
            return Verdict.no({"component": i, "targets": sorted(map(str, targets))},
                              "restriction does not respect components")
        images[i] = targets.pop()
    counts = {"pi0_map_E": len(data["components"]), "pi0_hoequiv": len(comps_he)}
    if sorted(images.values()) == list(range(len(comps_he))):
        return Verdict.yes(counts, "bijection on components", exact=data["exact"])
    return Verdict.no(counts, "not a bijection on components", exact=data["exact"])


# ---------------------------------------------------------------- Dwyer-Kan

def ho_functor(f: SimpMap, hu: HoCat, hv: HoCat) -> Functor:
    obj = {x: f.images[(0, 0)][x] for x in hu.cat.objects}
    mor = {m: hv.class_of[f.images[(1, 0)][verts[0]]] for m, verts in hu.hom_origin.items()}
    return Functor(hu.cat, hv.cat, obj, mor)


def _fiber_category(w: Simp, x: int, y: int):
    sub = multi_map_space(w, (x, y))
    s = sub.to_simp(name=f"map({x},{y})")
    return s, nerve_category(s)


def dk_check(f: SimpMap) -> Verdict:
    U, V = f.source, f.target
    for name, s in (("source", U), ("target", V)):
        rep = segal_check(s)
        if not rep.ok:
            return Verdict.unknown({"side": name}, "not a Segal space in the checked range")
    hu, hv = ho_category(U), ho_category(V)
    hf = ho_functor(f, hu, hv)
    if hf.violations():
        raise FragmentViolation("induced map on homotopy categories is not a functor")
    v = is_equivalence(hf)
    if v.is_no:
        return Verdict.no({"ho": v.witness}, "ho f is not an equivalence: " + v.reason)
    if U.is_discrete_in(1) and V.is_discrete_in(1):
        fragment = "discrete"
    elif all(s.meta.get("levels") == "groupoid nerves" for s in (U, V)):
        fragment = "groupoid nerves"
        if min(U.trunc[1], V.trunc[1]) < 2:
            return Verdict.unknown(None, "groupoid fragment needs space degree 2")
    else:
        return Verdict.unknown(None, "mapping spaces outside the decidable fragment")
    fv = f.images[(1, 0)]
    for x in objects_of(U):
        for x2 in objects_of(U):
            fx, fx2 = f.images[(0, 0)][x], f.images[(0, 0)][x2]
            src = fiber_vertices(U, x, x2)
            tgt = fiber_vertices(V, fx, fx2)
            if fragment == "discrete":
                if sorted(fv[a] for a in src) != sorted(tgt):
                    return Verdict.no({"pair": (x, x2)}, "map on mapping spaces is not a bijection")
                continue
            (su, cu), (sv, cv) = _fiber_category(U, x, x2), _fiber_category(V, fx, fx2)
            back_u = su.meta["parent_index"]
            pos_v = {d: {c: i for i, c in enumerate(v)} for d, v in sv.meta["parent_index"].items()}
            obj = {i: pos_v[(0,)][fv[back_u[(0,)][i]]] for i in cu.objects}
            f11 = f.images[(1, 1)]
            mor = {i: pos_v[(1,)][f11[back_u[(1,)][i]]] for i in cu.morphisms}
            F = Functor(cu, cv, obj, mor)
            if F.violations():
                raise FragmentViolation("map on mapping spaces is not a functor")
            ev = is_equivalence(F)
            if not ev.is_yes:
                return Verdict.no({"pair": (x, x2), "failure": ev.witness},
                                  "map on mapping spaces is not an equivalence")
    return Verdict.yes({"ho_functor": hf}, "ho f is an equivalence and mapping spaces match",
                       fragment=fragment)


# ---------------------------------------------------------------- categorical homotopies

def common_window(*objs: Simp, box=(2, 2)) -> frozenset:
    shape = rect(box)
    for s in objs:
        shape &= s.shape
    return frozenset(shape)


def extend_map(f: SimpMap, window) -> SimpMap | None:
    """Extend f to the given window (unique when the target is coskeletal enough)."""
    if set(window) <= set(f.images):
        return f.restrict(window)
    fixed = {(d, x): y for d, v in f.images.items() if d in window for x, y in enumerate(v)}
    return next(find_maps(f.source, f.target, window, fixed=fixed), None)


def _slice_fixed(U: Simp, E: Simp, window, vertex: int, f: SimpMap) -> dict:
    fixed = {}
    for d in window:
        e = degenerate_to(E, (0, 0), vertex, d)
        nE = E.n(d)
        for u in range(U.n(d)):
            fixed[(d, u * nE + e)] = f.images[d][u]
    return fixed


def categorical_homotopy_search(f: SimpMap, g: SimpMap, bound: int | None = 100_000) -> Verdict:
    """Search H: U x E -> V restricting to f on U x {x} and to g on U x {y}."""
    U, V = f.source, f.target
    E = standard_E(1, trunc=U.trunc)
    P = product(U, E)
    window, exact = choose_window(P, V)
    f2, g2 = extend_map(f, window), extend_map(g, window)
    if f2 is None or g2 is None:
        return Verdict.unknown(None, "could not extend the maps to the search window")
    fixed = _slice_fixed(U, E, window, 0, f2)
    for key, val in _slice_fixed(U, E, window, 1, g2).items():
        if fixed.get(key, val) != val:
            return Verdict.no(None, "f and g disagree where they must coincide")
        fixed[key] = val
    try:
        H = next(find_maps(P, V, window, fixed=fixed, bound=bound), None)
    except SizeBoundExceeded as e:
        return Verdict.unknown({"reached": e.reached}, "search bound exceeded")
    if H is None:
        return Verdict.no(None, "search exhausted", exact=exact)
    return Verdict.yes(H, "homotopy found", exact=exact)


def categorical_equivalence_search(g: SimpMap, bound: int = 10_000) -> Verdict:
    """Search h: V -> U with g h ~ 1 and h g ~ 1 (categorical homotopies)."""
    U, V = g.source, g.target
    win = common_window(U, V)
    g2 = extend_map(g, win)
    if g2 is None:
        return Verdict.unknown(None, "could not extend g to the common window")
    idU, idV = identity_map(U).restrict(win), identity_map(V).restrict(win)
    try:
        for count, h in enumerate(find_maps(V, U, win, bound=bound)):
            gh, hg = h.then(g2), g2.then(h)
            v1 = categorical_homotopy_search(gh, idV)
            if not v1.is_yes:
                continue
            v2 = categorical_homotopy_search(hg, idU)
            if v2.is_yes:
                return Verdict.yes({"inverse": h.images, "homotopies": 2},
                                   "inverse up to categorical homotopy found")
    except SizeBoundExceeded as e:
        return Verdict.unknown({"reached": e.reached}, "candidate bound exceeded")
    return Verdict.no(None, "no inverse up to categorical homotopy")


__all__ = ["SegalStatus", "SegalReport", "HoCat", "segal_check", "associativity_check", "segal_map_check",
           "category_from_discrete_segal", "objects_of", "identity_of", "map_space",
           "multi_map_space", "compose", "ho_category", "ho_post_pre_compose", "is_hoequiv",
           "hoequiv_subspace", "completeness_check", "thm62_pi0_check", "dk_check",
           "categorical_homotopy_search", "categorical_equivalence_search", "extend_map",
           "fiber_components", "fiber_vertices", "fiber_product_count", "degenerate_to",
           "vertex_of", "spine", "CategoryError"]
