"""Truncated simplicial sets: nerves, standard simplices, products, maps and π0."""

from __future__ import annotations

from .fincat import FinCat, groupoid_equivalent, make_category, check_category, CategoryError
from .simplicial import (Simp, SimpMap, SubObject, components, find_maps, generated_by,
                         monotone_maps, product, compose_theta, choose_window)
from .verdict import Verdict

DEFAULT_TRUNC = 4


def _chains(c: FinCat, n: int):
    """Composable n-chains (objects, arrows), identities included."""
    def rec(objs, arrs):
        if len(arrs) == n:
            yield (tuple(objs), tuple(arrs))
            return
        for f in c.out_arrows(objs[-1]):
            objs.append(c.tgt(f))
            arrs.append(f)
            yield from rec(objs, arrs)
            objs.pop()
            arrs.pop()

    for x in c.objects:
        yield from rec([x], [])


def chain_act(c: FinCat, chain, theta):
    """theta^* of a chain: restrict along theta: [k] -> [n], composing skipped arrows."""
    objs, arrs = chain
    n = len(arrs)
    k = len(theta) - 1
    if k == n - 1 and all(theta[j] < theta[j + 1] for j in range(k)):
        i = next((j for j, t in enumerate(theta) if t != j), n)
        if i == 0:
            return objs[1:], arrs[1:]
        if i == n:
            return objs[:-1], arrs[:-1]
        return (objs[:i] + objs[i + 1:],
                arrs[:i - 1] + (c.compose[arrs[i], arrs[i - 1]],) + arrs[i + 1:])
    new_objs = tuple(objs[t] for t in theta)
    new_arrs = tuple(c.comp_path(arrs[theta[j]:theta[j + 1]], objs[theta[j]])
                     for j in range(len(theta) - 1))
    return new_objs, new_arrs


def longest_chain(c: FinCat):
    """Length of the longest chain of non-identity arrows, or None if unbounded."""
    ids = set(c.identity.values())
    succ = {x: set() for x in c.objects}
    for f, (a, b) in c.arrows.items():
        if f in ids:
            continue
        if a == b:
            return None
        succ[a].add(b)
    memo: dict = {}
    state: dict = {}

    def depth(x):
        if state.get(x) == 1:
            raise _Cycle
        if x in memo:
            return memo[x]
        state[x] = 1
        best = 0
        for y in succ[x]:
            best = max(best, 1 + depth(y))
        state[x] = 2
        memo[x] = best
        return best

    try:
        return max(depth(x) for x in c.objects)
    except _Cycle:
        return None


class _Cycle(Exception):
    pass


def nerve(c: FinCat, trunc: int = DEFAULT_TRUNC, budget: int | None = None) -> Simp:
    """Level n is the set of composable n-chains (functors [n] -> C)."""
    def cells(d):
        return _chains(c, d[0])

    def act(label, d, axis, theta):
        return chain_act(c, label, theta)

    meta = {"category": c}
    if c.is_groupoid:
        meta["groupoid"] = c
    return Simp.from_action((trunc,), cells, act, budget=budget, gen=(longest_chain(c),),
                            cosk=(2,), meta=meta, name=f"nerve({c.name})")


def standard_simplex(n: int, trunc: int = DEFAULT_TRUNC) -> Simp:
    """Δ[n]: level k is the monotone maps [k] -> [n]."""
    return Simp.from_action((trunc,), lambda d: monotone_maps(d[0], n),
                            lambda lab, d, a, th: compose_theta(lab, th),
                            gen=(n,), cosk=(1,), name=f"Δ[{n}]")


def simplex_subobject(simplex: Simp, keep) -> SubObject:
    """Subobject of Δ[n] consisting of the cells whose vertex set satisfies keep(set)."""
    return SubObject(simplex, {d: frozenset(i for i, th in enumerate(simplex.labels[d])
                                            if keep(set(th)))
                               for d in simplex.shape})


def boundary(n: int, trunc: int = DEFAULT_TRUNC) -> SubObject:
    """∂Δ[n] inside Δ[n]."""
    full = set(range(n + 1))
    return simplex_subobject(standard_simplex(n, trunc), lambda s: s != full)


def horn(n: int, k: int, trunc: int = DEFAULT_TRUNC) -> SubObject:
    """Λ^k[n]: cells missing some face other than the k-th."""
    full = set(range(n + 1))
    return simplex_subobject(standard_simplex(n, trunc), lambda s: (s | {k}) != full)


def sset_product(x: Simp, y: Simp) -> Simp:
    if x.dim != 1 or y.dim != 1:
        raise ValueError("sset_product takes simplicial sets")
    if x.trunc != y.trunc:
        raise ValueError(f"truncation mismatch: {x.trunc} vs {y.trunc}")
    return product(x, y)


def sset_maps(x: Simp, y: Simp, bound: int | None = None) -> tuple[list[SimpMap], bool]:
    """All maps x -> y on the soundness window, with the exactness flag."""
    window, exact = choose_window(x, y)
    return list(find_maps(x, y, window, bound=bound)), exact


def pi0(x: Simp) -> list[list[int]]:
    if x.trunc[0] < 1:
        raise ValueError("pi0 needs level 1")
    return components(x)


def horn_fillers_exist(x: Simp, n: int, k: int) -> bool:
    """Every map Λ^k[n] -> x extends to Δ[n] (checked on levels <= n)."""
    h = horn(n, k, trunc=n)
    simplex = h.parent
    sub = h.to_simp()
    back = sub.meta["parent_index"]
    window = {d for d in sub.shape if d[0] <= n}
    for f in find_maps(sub, x, window):
        fixed = {(d, back[d][i]): y for d, v in f.images.items() for i, y in enumerate(v)}
        if next(find_maps(simplex, x, {d for d in simplex.shape if d[0] <= n}, fixed=fixed),
                None) is None:
            return False
    return True


def nerve_groupoid_equiv(x: Simp, y: Simp) -> Verdict:
    """Weak equivalence of nerves of groupoids, decided by groupoid equivalence."""
    g, h = x.meta.get("groupoid"), y.meta.get("groupoid")
    if g is None or h is None:
        return Verdict.unknown(None, "input is not tagged as the nerve of a groupoid")
    return groupoid_equivalent(g, h)


def nerve_category(x: Simp, name="") -> FinCat:
    """Rebuild a category from a simplicial set whose Segal maps are bijective."""
    v, e, t = (0,), (1,), (2,)
    objs = tuple(range(x.n(v)))
    arrows = {f: (x.faces[e, 0, 1][f], x.faces[e, 0, 0][f]) for f in range(x.n(e))}
    identity = {o: x.degens[v, 0, 0][o] for o in objs}
    table = {}
    for s in range(x.n(t)):
        f, g = x.faces[t, 0, 2][s], x.faces[t, 0, 0][s]
        if (g, f) in table:
            raise CategoryError(f"two 2-cells over the pair {(g, f)}")
        table[g, f] = x.faces[t, 0, 1][s]
    c = FinCat(objs, arrows, identity, table, name or f"cat({x.name})")
    return check_category(c)


def chain_count(c: FinCat, n: int) -> int:
    """Number of composable n-chains, by dynamic programming over hom-set sizes."""
    ways = {x: 1 for x in c.objects}
    for _ in range(n):
        nxt = {y: 0 for y in c.objects}
        for f, (a, b) in c.arrows.items():
            nxt[b] += ways[a]
        ways = nxt
    return sum(ways.values())


def spine_bijection(x: Simp, k: int):
    """(ok, witness): x_k -> x_1 x_{x_0} ... x_{x_0} x_1 (k factors) is a bijection."""
    e, v = (1,), (0,)
    d1, d0 = x.faces[e, 0, 1], x.faces[e, 0, 0]
    seen = {}
    for c in range(x.n((k,))):
        sp = tuple(x.act_cell((k,), 0, (i, i + 1), c)[1] for i in range(k))
        if sp in seen:
            return False, {"kind": "not injective", "cells": [seen[sp], c]}
        seen[sp] = c
    ways = [0] * x.n(v)
    for f in range(x.n(e)):
        ways[d0[f]] += 1
    for _ in range(k - 1):
        nxt = [0] * x.n(v)
        for f in range(x.n(e)):
            nxt[d0[f]] += ways[d1[f]]
        ways = nxt
    total = sum(ways)
    if total != len(seen):
        return False, {"kind": "not surjective", "fiber_product": total, "cells": len(seen)}
    return True, {"cells": total}


def nerve_map(f, x: Simp, y: Simp) -> SimpMap:
    """N f on nerves of categories."""
    from .simplicial import explicit_map
    return explicit_map(x, y, lambda d, lab: (tuple(f(o) for o in lab[0]),
                                              tuple(f.on_mor(a) for a in lab[1])))


def nerve_product_comparison(c: FinCat, d: FinCat, trunc: int = DEFAULT_TRUNC) -> Verdict:
    """nerve(C x D) -> nerve C x nerve D from the projections is an isomorphism."""
    from .fincat import product as cat_product
    p, (p1, p2) = cat_product(c, d)
    src = nerve(p, trunc)
    tgt = sset_product(nerve(c, trunc), nerve(d, trunc))
    if src.shape != tgt.shape:
        return Verdict.unknown(None, "shapes differ")
    f = nerve_map(p1, src, nerve(c, trunc)), nerve_map(p2, src, nerve(d, trunc))
    nd = f[1].target
    images = {k: [a * nd.n(k) + b for a, b in zip(f[0].images[k], f[1].images[k])] for k in src.shape}
    m = SimpMap(src, tgt, images)
    if m.is_isomorphism():
        return Verdict.yes({"cells": src.total_cells()}, "projections give an isomorphism")
    return Verdict.no({"cells": src.total_cells()}, "projection map is not an isomorphism")


__all__ = ["nerve", "standard_simplex", "boundary", "horn", "sset_product", "sset_maps",
           "pi0", "nerve_groupoid_equiv", "nerve_category", "horn_fillers_exist",
           "chain_act", "chain_count", "longest_chain", "make_category", "nerve_map", "spine_bijection",
           "nerve_product_comparison"]
