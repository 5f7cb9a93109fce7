"""The completion construction W̃ = diag'([m] -> W^{E(m)}), without fibrant replacement.

A cell of W̃ at (n, q) is a map E(q) x F(n) x Δ[q] -> W.  Outer operators act
on F(n); a space operator θ: [q'] -> [q] acts on Δ[q] and on E through
E(θ): E(q') -> E(q).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fincat import groupoid_equivalent, terminal_category
from .segal import dk_check
from .simplicial import Simp, SimpMap, rect
from .sset import nerve_category
from .sspace import (DEFAULT_BUDGET, _HomBuilder, classifying_diagram, hom_window,
                     standard_E)
from .verdict import ConstructionError, Verdict

DEFAULT_TILDE_TRUNC = (2, 2)


@dataclass
class CompletionResult:
    input: Simp
    tilde: Simp
    exact: bool
    exponents: dict = field(default_factory=dict)  # q -> builder for maps out of E(q)
    unit: SimpMap | None = None

    def to_json(self) -> dict:
        return {"input": self.input.name, "tilde": self.tilde.name,
                "soundness": "exact" if self.exact else "window-limited",
                "counts": {str(d): self.tilde.n(d) for d in sorted(self.tilde.shape)}}


class _TildeBuilder:
    def __init__(self, w: Simp, trunc, box=None):
        self.w = w
        if box is None:
            box = tuple(c if c is not None else t for c, t in zip(w.cosk or (None, None), trunc))
        self.box = tuple(box)
        self.exact = True
        self.hb = {}
        self._emaps = {}
        for q in range(trunc[1] + 1):
            e = standard_E(q, trunc=self.box)
            degrees = {(n, q) for n in range(trunc[0] + 1)}
            b, exact = hom_window(w, e, degrees)
            if b != self.box:
                raise ConstructionError(f"window mismatch for E({q}): {b} vs {self.box}")
            self.exact &= exact
            self.hb[q] = _HomBuilder(w, e, self.box)

    @property
    def window(self):
        return self.hb[0].window

    def cells(self, d):
        return self.hb[d[1]].cells(d)

    def act(self, key, d, axis, theta):
        n, q = d
        hb = self.hb[q]
        key = hb.act(key, d, axis, theta)
        if axis == 0:
            return key
        q2 = len(theta) - 1
        em = self._emaps_for(q, theta)
        r = hb.rep((n, q2))
        out = []
        for wd, img in zip(self.window, key):
            nr = r.n(wd)
            m = em[wd]
            out.append(tuple(img[m[a] * nr + b] for a in range(len(m)) for b in range(nr)))
        return tuple(out)

    def _emaps_for(self, q, theta):
        k = (q, theta)
        if k not in self._emaps:
            src, tgt = self.hb[len(theta) - 1].xs, self.hb[q].xs
            out = {}
            for d in self.window:
                idx = tgt.index[d]
                out[d] = [idx[tuple(theta[o] for o in objs),
                              tuple((theta[a], theta[b]) for a, b in arrs)]
                          for objs, arrs in src.labels[d]]
            self._emaps[k] = out
        return self._emaps[k]


def tilde(w: Simp, trunc=DEFAULT_TILDE_TRUNC, budget: int | None = DEFAULT_BUDGET,
          box=None) -> CompletionResult:
    """W̃ together with the natural map W -> W̃ (on the common shape)."""
    tb = _TildeBuilder(w, trunc, box)
    t = Simp.from_action(tuple(trunc), tb.cells, tb.act, budget=budget, cosk=w.cosk,
                         meta={"kind": "tilde", "exact": tb.exact, "builder": tb},
                         name=f"tilde({w.name})")
    _tag_levels(t)
    res = CompletionResult(w, t, tb.exact, dict(tb.hb))
    res.unit = completion_unit(w, t)
    return res


def _tag_levels(t: Simp):
    """Record whether every level is the nerve of a groupoid (needs space degree 2)."""
    if t.trunc[1] < 2:
        return
    try:
        for m in range(t.trunc[0] + 1):
            if not nerve_category(t.level(m)).is_groupoid:
                return
    except Exception:
        return
    t.meta["levels"] = "groupoid nerves"


def completion_unit(w: Simp, t: Simp) -> SimpMap:
    """x in W_{n,q} goes to E(q) x F(n) x Δ[q] -> F(n) x Δ[q] -> W."""
    tb = t.meta["builder"]
    images = {}
    for d in sorted(t.shape & w.shape):
        n, q = d
        hb = tb.hb[q]
        r = hb.rep(d)
        idx = t.index[d]
        row = []
        for x in range(w.n(d)):
            key = []
            for wd in tb.window:
                per_r = []
                for al, be in r.labels[wd]:
                    d1, y = w.act_cell(d, 0, al, x)
                    per_r.append(w.act_cell(d1, 1, be, y)[1])
                # product index is e * |R| + r, so the E factor is ignored
                key.append(tuple(per_r) * hb.xs.n(wd))
            row.append(idx[tuple(key)])
        images[d] = row
    return SimpMap(w, t, images)


def tilde_map(f: SimpMap, src: CompletionResult, tgt: CompletionResult) -> SimpMap:
    """W̃ -> W̃' induced by postcomposition with f."""
    s, t = src.tilde, tgt.tilde
    images = {}
    for d in sorted(s.shape & t.shape):
        idx = t.index[d]
        images[d] = [idx[tuple(tuple(f.images[wd][y] for y in img)
                               for wd, img in zip(s.meta["builder"].window, key))]
                     for key in s.labels[d]]
    return SimpMap(s, t, images)


def _grid_from_cell(t: Simp, d, key):
    """Read the functor I[q] x [n] -> C off a cell of W̃ for W = discnerve C."""
    tb = t.meta["builder"]
    n, q = d
    hb = tb.hb[q]
    win = {wd: img for wd, img in zip(tb.window, key)}
    r = hb.rep(d)
    E = hb.xs

    def at(wd, e_label, al, be):
        a = E.index[wd][e_label]
        b = r.index[wd][al, be]
        return tb.w.labels[wd][win[wd][a * r.n(wd) + b]]

    v0, e0 = (0, 0), (1, 0)
    objs = tuple(tuple(at(v0, ((j,), ()), (i,), (0,))[0][0] for i in range(n + 1))
                 for j in range(q + 1))
    h = tuple(tuple(at(e0, ((j, j), ((j, j),)), (i, i + 1), (0,))[1][0] for i in range(n))
              for j in range(q + 1))
    v = tuple(tuple(at(e0, ((j, j + 1), ((j, j + 1),)), (i, i), (0,))[1][0]
                    for i in range(n + 1))
              for j in range(q))
    return objs, h, v


def discnerve_comparison(res: CompletionResult, nc: Simp | None = None) -> SimpMap:
    """The explicit map W̃ -> N C for W = discnerve C."""
    w, t = res.input, res.tilde
    c = w.meta.get("category")
    if c is None or w.meta.get("kind") != "discrete":
        raise ConstructionError("input is not a discrete nerve")
    nc = nc if nc is not None else classifying_diagram(c, trunc=t.trunc)
    images = {}
    for d in sorted(t.shape):
        idx = nc.index[d]
        images[d] = [idx[_grid_from_cell(t, d, key)] for key in t.labels[d]]
    return SimpMap(t, nc, images)


def discnerve_tilde_check(c, trunc=DEFAULT_TILDE_TRUNC) -> Verdict:
    """W̃ of discnerve C is isomorphic to N C by the explicit comparison map."""
    from .sspace import discrete_nerve
    w = discrete_nerve(c, trunc=(max(trunc[0], 2), max(trunc[1], 1)))
    res = tilde(w, trunc)
    nc = classifying_diagram(c, trunc=trunc)
    if res.tilde.shape != nc.shape:
        return Verdict.unknown({"tilde": sorted(res.tilde.shape), "nc": sorted(nc.shape)},
                               "shapes differ under the cell budget")
    phi = discnerve_comparison(res, nc)
    counts = {str(d): [res.tilde.n(d), nc.n(d)] for d in sorted(nc.shape)}
    if not phi.is_isomorphism():
        return Verdict.no({"counts": counts}, "comparison map is not an isomorphism")
    return Verdict.yes({"counts": counts}, "explicit isomorphism", exact=res.exact)


def contractible_levels(t: Simp) -> Verdict:
    """Every level of t is the nerve of a groupoid equivalent to the point."""
    pt = terminal_category()
    for m in range(t.trunc[0] + 1):
        g = nerve_category(t.level(m))
        if not g.is_groupoid:
            return Verdict.unknown({"level": m}, "level is not a groupoid nerve")
        v = groupoid_equivalent(g, pt)
        if not v.is_yes:
            return Verdict.no({"level": m, "objects": len(g.objects)}, "level is not contractible")
    return Verdict.yes({"levels": t.trunc[0] + 1}, "all levels contractible")


def tilde_dk_check(w: Simp, trunc=DEFAULT_TILDE_TRUNC) -> Verdict:
    res = tilde(w, trunc)
    return dk_check(res.unit)


__all__ = ["CompletionResult", "tilde", "tilde_map", "completion_unit", "discnerve_comparison",
           "discnerve_tilde_check", "contractible_levels", "tilde_dk_check", "standard_E",
           "DEFAULT_TILDE_TRUNC"]
