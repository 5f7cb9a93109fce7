"""Truncated simplicial and bisimplicial sets with integer-indexed cells.

One class, :class:`Simp`, covers both: a simplicial set has degrees ``(n,)``
and a bisimplicial set degrees ``(m, n)``, with ``m`` the outer (simplicial
space) direction and ``n`` the space direction.  The set of degrees that are
materialized (the *shape*) is any down-closed set of degrees, so a large
object can be kept at high outer degree and low space degree at once.

Cells are integers per degree; the original labels are kept alongside so
constructions stay readable.  Face maps ``d_i`` and degeneracies ``s_i`` are
stored as lists of target indices.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator

from .verdict import ConstructionError, SizeBoundExceeded

Deg = tuple


# ---------------------------------------------------------------- Δ combinatorics

def monotone_maps(k: int, n: int) -> list[tuple]:
    """Order-preserving maps [k] -> [n], as value tuples."""
    return list(itertools.combinations_with_replacement(range(n + 1), k + 1))


def coface(n: int, i: int) -> tuple:
    """d^i: [n-1] -> [n], skipping i."""
    return tuple(j if j < i else j + 1 for j in range(n))


def codegeneracy(n: int, i: int) -> tuple:
    """s^i: [n+1] -> [n], hitting i twice."""
    return tuple(j if j <= i else j - 1 for j in range(n + 2))


def compose_theta(a: tuple, b: tuple) -> tuple:
    """a∘b for value tuples."""
    return tuple(a[j] for j in b)


def rect(trunc) -> frozenset:
    return frozenset(itertools.product(*(range(t + 1) for t in trunc)))


def sorted_degrees(shape) -> list:
    return sorted(shape, key=lambda d: (sum(d), d))


def unit(dim: int, axis: int) -> tuple:
    return tuple(1 if a == axis else 0 for a in range(dim))


def add(d, e):
    return tuple(x + y for x, y in zip(d, e))


def sub(d, e):
    return tuple(x - y for x, y in zip(d, e))


# ---------------------------------------------------------------- the object

class Simp:
    """A truncated multi-simplicial set.

    ``faces[(deg, axis, i)]`` is defined whenever ``deg[axis] >= 1``;
    ``degens[(deg, axis, i)]`` whenever ``deg + e_axis`` lies in the shape.
    ``gen[axis]`` (when known) bounds the degree of non-degenerate cells and
    ``cosk[axis]`` (when known) is a level above which the object is coskeletal.
    """

    def __init__(self, shape, labels: dict, faces: dict, degens: dict, *,
                 gen=None, cosk=None, meta=None, name=""):
        self.shape = frozenset(shape)
        self.dim = len(next(iter(self.shape)))
        self.trunc = tuple(max(d[a] for d in self.shape) for a in range(self.dim))
        self.labels = labels
        self.faces = faces
        self.degens = degens
        self.gen = tuple(gen) if gen is not None else (None,) * self.dim
        self.cosk = tuple(cosk) if cosk is not None else (None,) * self.dim
        self.meta = dict(meta or {})
        self.name = name

    def __repr__(self):
        return f"<Simp {self.name or ''} dim={self.dim} trunc={self.trunc} cells={self.total_cells()}>"

    # -- construction
    @classmethod
    def from_action(cls, shape, cells_fn: Callable[[Deg], Iterable],
                    act: Callable[[object, Deg, int, tuple], object], *,
                    budget: int | None = None, gen=None, cosk=None, meta=None, name=""):
        """Materialize from a cell enumerator and the action of monotone maps.

        ``act(label, deg, axis, theta)`` returns theta^* of the cell along
        ``axis``, where theta: [k] -> [deg[axis]].  With ``budget`` any degree
        holding more cells is dropped from the shape (down-closure kept); the
        dropped degrees are recorded in ``meta['clipped']``.
        """
        if isinstance(shape, tuple):
            shape = rect(shape)
        dim = len(next(iter(shape)))
        kept, labels, clipped = set(), {}, []
        for d in sorted_degrees(shape):
            if any(d[a] > 0 and sub(d, unit(dim, a)) not in kept for a in range(dim)):
                clipped.append(d)
                continue
            cells = []
            for c in cells_fn(d):
                cells.append(c)
                if budget is not None and len(cells) > budget:
                    break
            if budget is not None and len(cells) > budget:
                clipped.append(d)
                continue
            kept.add(d)
            labels[d] = cells
        index = {d: {c: i for i, c in enumerate(cs)} for d, cs in labels.items()}
        if len(index) != len(labels) or any(len(index[d]) != len(labels[d]) for d in labels):
            raise ConstructionError("duplicate cell labels")
        faces, degens = {}, {}
        for d in kept:
            for a in range(dim):
                if d[a] >= 1:
                    dd = sub(d, unit(dim, a))
                    for i in range(d[a] + 1):
                        th = coface(d[a], i)
                        faces[d, a, i] = [_lookup(index[dd], act(c, d, a, th), dd) for c in labels[d]]
                du = add(d, unit(dim, a))
                if du in kept:
                    for i in range(d[a] + 1):
                        th = codegeneracy(d[a], i)
                        degens[d, a, i] = [_lookup(index[du], act(c, d, a, th), du) for c in labels[d]]
        m = dict(meta or {})
        if clipped:
            m["clipped"] = clipped
        obj = cls(kept, labels, faces, degens, gen=gen, cosk=cosk, meta=m, name=name)
        obj.__dict__["index"] = index
        return obj

    # -- basic access
    def degrees(self) -> list:
        return sorted_degrees(self.shape)

    def n(self, d) -> int:
        return len(self.labels[d])

    def total_cells(self) -> int:
        return sum(len(v) for v in self.labels.values())

    def counts(self) -> dict:
        return {d: len(v) for d, v in self.labels.items()}

    @cached_property
    def index(self) -> dict:
        return {d: {c: i for i, c in enumerate(cs)} for d, cs in self.labels.items()}

    def label(self, d, x):
        return self.labels[d][x]

    def face(self, d, a, i, x) -> int:
        return self.faces[d, a, i][x]

    def degen(self, d, a, i, x) -> int:
        return self.degens[d, a, i][x]

    def face_ops(self, d) -> list:
        return [(a, i) for a in range(self.dim) if d[a] >= 1 for i in range(d[a] + 1)]

    def act_cell(self, d, axis: int, theta: tuple, x: int) -> tuple[Deg, int]:
        """theta^* x along one axis, via faces followed by degeneracies."""
        n = d[axis]
        image = sorted(set(theta))
        e = unit(self.dim, axis)
        for i in sorted(set(range(n + 1)) - set(image), reverse=True):
            x = self.faces[d, axis, i][x]
            d = sub(d, e)
        rank = {v: r for r, v in enumerate(image)}
        epi = [rank[v] for v in theta]
        for j in range(len(epi) - 1):
            if epi[j] == epi[j + 1]:
                x = self.degens[d, axis, j][x]
                d = add(d, e)
        return d, x

    def degenerate_reps(self, d) -> list:
        """Per cell: None if non-degenerate, else one (axis, i, source cell)."""
        out = [None] * self.n(d)
        for a in range(self.dim):
            if d[a] == 0:
                continue
            dd = sub(d, unit(self.dim, a))
            for i in range(dd[a] + 1):
                for y, x in enumerate(self.degens[dd, a, i]):
                    if out[x] is None:
                        out[x] = (a, i, y)
        return out

    def nondegenerate(self, d) -> list:
        return [x for x, r in enumerate(self.degenerate_reps(d)) if r is None]

    # -- identities
    def identity_violations(self, limit: int = 10) -> list:
        """Check all simplicial identities (and cross-axis commutation) within the shape."""
        bad = []
        F, S = self.faces, self.degens
        for d in self.degrees():
            for x in range(self.n(d)):
                for a in range(self.dim):
                    n = d[a]
                    ea = unit(self.dim, a)
                    if n >= 2:
                        d1 = sub(d, ea)
                        for i in range(n + 1):
                            for j in range(i + 1, n + 1):
                                lhs = F[d1, a, i][F[d, a, j][x]]
                                rhs = F[d1, a, j - 1][F[d, a, i][x]]
                                if lhs != rhs:
                                    bad.append(("d_i d_j", d, a, i, j, x))
                    du = add(d, ea)
                    if du in self.shape:
                        for j in range(n + 1):
                            y = S[d, a, j][x]
                            for i in range(n + 2):
                                lhs = F[du, a, i][y]
                                if i in (j, j + 1):
                                    rhs = x
                                elif i < j:
                                    rhs = S[sub(d, ea), a, j - 1][F[d, a, i][x]]
                                else:
                                    rhs = S[sub(d, ea), a, j][F[d, a, i - 1][x]]
                                if lhs != rhs:
                                    bad.append(("d_i s_j", d, a, i, j, x))
                        duu = add(du, ea)
                        if duu in self.shape:
                            for i in range(n + 1):
                                for j in range(i, n + 1):
                                    lhs = S[du, a, i][S[d, a, j][x]]
                                    rhs = S[du, a, j + 1][S[d, a, i][x]]
                                    if lhs != rhs:
                                        bad.append(("s_i s_j", d, a, i, j, x))
                    for b in range(a + 1, self.dim):
                        bad.extend(self._cross_check(d, x, a, b))
                if len(bad) >= limit:
                    return bad[:limit]
        return bad

    def _cross_check(self, d, x, a, b):
        bad = []
        ea, eb = unit(self.dim, a), unit(self.dim, b)
        ops_a = [("d", i) for i in range(d[a] + 1) if d[a] >= 1]
        ops_b = [("d", i) for i in range(d[b] + 1) if d[b] >= 1]
        if add(d, ea) in self.shape:
            ops_a += [("s", i) for i in range(d[a] + 1)]
        if add(d, eb) in self.shape:
            ops_b += [("s", i) for i in range(d[b] + 1)]

        def apply(dd, axis, op, y):
            kind, i = op
            e = unit(self.dim, axis)
            if kind == "d":
                return sub(dd, e), self.faces[dd, axis, i][y]
            return add(dd, e), self.degens[dd, axis, i][y]

        for oa in ops_a:
            for ob in ops_b:
                d1, y1 = apply(d, a, oa, x)
                d2, y2 = apply(d, b, ob, x)
                if d1 in self.shape and d2 in self.shape:
                    da, z1 = apply(d1, b, ob, y1) if _ok(self, d1, b, ob) else (None, None)
                    db, z2 = apply(d2, a, oa, y2) if _ok(self, d2, a, oa) else (None, None)
                    if da is not None and db is not None and z1 != z2:
                        bad.append(("cross", d, a, b, oa, ob, x))
        return bad

    # -- slicing
    def level(self, m: int, name="") -> "Simp":
        """The space X_m (fix the outer degree of a bisimplicial set)."""
        if self.dim != 2:
            raise ValueError("level() needs a bisimplicial set")
        shape = {(d[1],) for d in self.shape if d[0] == m}
        labels = {(n,): self.labels[m, n] for (n,) in shape}
        faces = {((n,), 0, i): v for (mm, n), a, i in self.faces
                 if mm == m and a == 1 for v in [self.faces[(mm, n), a, i]]}
        degens = {((n,), 0, i): v for (mm, n), a, i in self.degens
                  if mm == m and a == 1 for v in [self.degens[(mm, n), a, i]]}
        meta = {"outer_level": m, "parent": self}
        return Simp(shape, labels, faces, degens, gen=(self.gen[1],), cosk=(self.cosk[1],),
                    meta=meta, name=name or f"{self.name}_{m}")

    def column(self, n: int) -> "Simp":
        """Fix the space degree: the simplicial set m -> X_{m,n}."""
        shape = {(d[0],) for d in self.shape if d[1] == n}
        labels = {(m,): self.labels[m, n] for (m,) in shape}
        faces = {((m,), 0, i): self.faces[(m, nn), a, i] for (m, nn), a, i in self.faces
                 if nn == n and a == 0}
        degens = {((m,), 0, i): self.degens[(m, nn), a, i] for (m, nn), a, i in self.degens
                  if nn == n and a == 0}
        return Simp(shape, labels, faces, degens, gen=(self.gen[0],), cosk=(self.cosk[0],))

    def restrict_shape(self, shape) -> "Simp":
        shape = frozenset(shape) & self.shape
        labels = {d: self.labels[d] for d in shape}
        faces = {k: v for k, v in self.faces.items() if k[0] in shape}
        degens = {k: v for k, v in self.degens.items()
                  if k[0] in shape and add(k[0], unit(self.dim, k[1])) in shape}
        return Simp(shape, labels, faces, degens, gen=self.gen, cosk=self.cosk,
                    meta=self.meta, name=self.name)

    def is_discrete_in(self, axis: int) -> bool:
        """Every cell of positive degree along `axis` is degenerate along it."""
        for d in self.shape:
            if d[axis] >= 1:
                dd = sub(d, unit(self.dim, axis))
                if self.n(d) != self.n(dd):
                    return False
                if sorted(self.degens[dd, axis, 0]) != list(range(self.n(d))):
                    return False
        return True


def _ok(s: Simp, d, axis, op):
    kind, i = op
    if kind == "d":
        return d[axis] >= 1
    return add(d, unit(s.dim, axis)) in s.shape


def _lookup(index: dict, label, d):
    try:
        return index[label]
    except KeyError:
        raise ConstructionError(f"operator result {label!r} missing at degree {d}") from None


# ---------------------------------------------------------------- products

def product(x: Simp, y: Simp, budget: int | None = None, name="") -> Simp:
    """Degreewise cartesian product; cell (a, b) has index a * |Y_d| + b."""
    if x.dim != y.dim:
        raise ValueError("dimension mismatch")
    shape = set()
    for d in sorted_degrees(x.shape & y.shape):
        if budget is not None and x.n(d) * y.n(d) > budget:
            continue
        if all(d[a] == 0 or sub(d, unit(x.dim, a)) in shape for a in range(x.dim)):
            shape.add(d)
    labels = {d: [(p, q) for p in x.labels[d] for q in y.labels[d]] for d in shape}

    def combine(tx, ty, d, dd):
        ny = y.n(dd)
        return [a * ny + b for a in tx for b in ty]

    faces, degens = {}, {}
    for (d, a, i), tx in x.faces.items():
        if d in shape:
            faces[d, a, i] = combine(tx, y.faces[d, a, i], d, sub(d, unit(x.dim, a)))
    for (d, a, i), tx in x.degens.items():
        du = add(d, unit(x.dim, a))
        if d in shape and du in shape:
            degens[d, a, i] = combine(tx, y.degens[d, a, i], d, du)
    gen = tuple(g + h if g is not None and h is not None else None for g, h in zip(x.gen, y.gen))
    cosk = tuple(max(g, h) if g is not None and h is not None else None
                 for g, h in zip(x.cosk, y.cosk))
    meta = {"factors": (x, y)}
    return Simp(shape, labels, faces, degens, gen=gen, cosk=cosk, meta=meta,
                name=name or f"{x.name}x{y.name}")


def pair_index(y: Simp, d, a: int, b: int) -> int:
    return a * y.n(d) + b


# ---------------------------------------------------------------- maps

@dataclass(eq=False)
class SimpMap:
    """A map of truncated objects, given on every cell of the degrees in `window`."""
    source: Simp
    target: Simp
    images: dict  # deg -> list[int]

    @cached_property
    def window(self) -> tuple:
        return tuple(sorted_degrees(self.images))

    @cached_property
    def key(self) -> tuple:
        return tuple(tuple(self.images[d]) for d in self.window)

    def __eq__(self, other):
        return isinstance(other, SimpMap) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __call__(self, d, x) -> int:
        return self.images[d][x]

    def violations(self, limit=10) -> list:
        bad = []
        X, Y = self.source, self.target
        win = set(self.images)
        for (d, a, i), t in X.faces.items():
            if d in win:
                dd = sub(d, unit(X.dim, a))
                img, imgd = self.images[d], self.images[dd]
                yf = Y.faces[d, a, i]
                for x in range(len(t)):
                    if yf[img[x]] != imgd[t[x]]:
                        bad.append(("face", d, a, i, x))
                        break
        for (d, a, i), t in X.degens.items():
            du = add(d, unit(X.dim, a))
            if d in win and du in win:
                img, imgu = self.images[d], self.images[du]
                ys = Y.degens[d, a, i]
                for x in range(len(t)):
                    if ys[img[x]] != imgu[t[x]]:
                        bad.append(("degen", d, a, i, x))
                        break
            if len(bad) >= limit:
                break
        return bad

    def is_map(self) -> bool:
        return not self.violations(1)

    def is_injective(self) -> bool:
        return all(len(set(v)) == len(v) for v in self.images.values())

    def is_bijective(self) -> bool:
        return all(len(set(v)) == len(v) == self.target.n(d) for d, v in self.images.items())

    def is_isomorphism(self) -> bool:
        """Bijective on every degree of the source shape, and a map."""
        if set(self.images) != set(self.source.shape) or self.source.shape != self.target.shape:
            return False
        return self.is_bijective() and self.is_map()

    def restrict(self, window) -> "SimpMap":
        return SimpMap(self.source, self.target, {d: self.images[d] for d in window})

    def then(self, g: "SimpMap") -> "SimpMap":
        """g ∘ self."""
        return SimpMap(self.source, g.target,
                       {d: [g.images[d][y] for y in v] for d, v in self.images.items()
                        if d in g.images})


def explicit_map(source: Simp, target: Simp, fn: Callable, window=None) -> SimpMap:
    """Build a map from a label-level function fn(deg, label) -> label."""
    window = source.shape if window is None else window
    idx = target.index
    images = {}
    for d in sorted_degrees(window):
        images[d] = [_lookup(idx[d], fn(d, lab), d) for lab in source.labels[d]]
    return SimpMap(source, target, images)


def identity_map(x: Simp) -> SimpMap:
    return SimpMap(x, x, {d: list(range(x.n(d))) for d in x.shape})


def choose_window(source: Simp, target: Simp, box=None) -> tuple[frozenset, bool]:
    """Degrees on which to search for maps, and whether the answer is exact.

    Per axis the window stops at the source's generation level or the target's
    coskeletality level, whichever is lower; a map on that window extends
    uniquely.  Otherwise the whole truncation is used and the result is only
    window-limited.
    """
    dims = source.dim
    top = []
    exact = True
    for a in range(dims):
        opts = [v for v in (source.gen[a], target.cosk[a]) if v is not None]
        bound = source.trunc[a] if box is None else min(source.trunc[a], box[a])
        if opts and min(opts) <= bound:
            top.append(min(opts))
        else:
            top.append(bound)
            exact = False
    win = rect(tuple(top))
    if not win <= source.shape:
        exact = False
    win = win & source.shape & target.shape
    return frozenset(win), exact


def find_maps(X: Simp, Y: Simp, window=None, *, fixed: dict | None = None,
              injective: bool = False, bound: int | None = None) -> Iterator[SimpMap]:
    """Enumerate maps X -> Y on the degrees in `window` (default: choose_window).

    Non-degenerate cells are assigned in an order where each cell follows its
    faces, with candidates looked up by the tuple of face images; degenerate
    cells follow from their representatives.  ``fixed`` maps (deg, cell) to a
    required image.
    """
    if window is None:
        window, _ = choose_window(X, Y)
    window = frozenset(window)
    if not window <= Y.shape:
        raise ValueError("window exceeds the target's shape")
    degs = sorted_degrees(window)
    dim = X.dim
    fixed = fixed or {}
    zero = (0,) * dim

    reps = {d: X.degenerate_reps(d) for d in degs}
    # Y cells indexed by the tuple of their faces
    yindex = {}
    for d in degs:
        ops = Y.face_ops(d)
        table = {}
        cols = [Y.faces[d, a, i] for a, i in ops]
        for y in range(Y.n(d)):
            table.setdefault(tuple(c[y] for c in cols), []).append(y)
        yindex[d] = table

    # dependency-driven placement order
    waiting = {}
    dependents: dict = {}
    for d in degs:
        for x, r in enumerate(reps[d]):
            if r is not None:
                a, i, y = r
                dependents.setdefault((sub(d, unit(dim, a)), y), []).append((d, x))
                waiting[d, x] = 1
            elif d != zero:
                fs = {(sub(d, unit(dim, a)), X.faces[d, a, i][x]) for a, i in X.face_ops(d)}
                for f in fs:
                    dependents.setdefault(f, []).append((d, x))
                waiting[d, x] = len(fs)

    order: list = []
    derived: list = []

    def become_known(cell):
        queue = deque([cell])
        while queue:
            c = queue.popleft()
            for dep in dependents.get(c, ()):
                waiting[dep] -= 1
                if waiting[dep] == 0:
                    dd, xx = dep
                    if reps[dd][xx] is None:
                        order.append(dep)
                        derived.append([])
                        queue.append(dep)
                    else:
                        derived[-1].append(dep)
                        queue.append(dep)

    vertices = list(range(X.n(zero)))
    adj = {v: set() for v in vertices}
    for d in degs:
        if sum(d) == 1:
            a = d.index(1)
            for x in X.nondegenerate(d):
                u, v = X.faces[d, a, 1][x], X.faces[d, a, 0][x]
                adj[u].add(v)
                adj[v].add(u)
    seen = set()
    for s in vertices:
        if s in seen:
            continue
        seen.add(s)
        bfs = deque([s])
        while bfs:
            v = bfs.popleft()
            order.append((zero, v))
            derived.append([])
            become_known((zero, v))
            for w in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    bfs.append(w)
    L = len(order)
    placed = sum(1 for d in degs for r in reps[d] if r is None) + 0
    if L != placed:
        raise ConstructionError("placement order does not cover all non-degenerate cells")

    assign = {d: [-1] * X.n(d) for d in degs}
    # precompute per position: degree, cell, face lookups and derived updates
    plan = []
    for (d, x), der in zip(order, derived):
        faces = [(sub(d, unit(dim, a)), X.faces[d, a, i][x]) for a, i in X.face_ops(d)]
        dupd = []
        for dd, xx in der:
            a, i, y = reps[dd][xx]
            dupd.append((dd, xx, Y.degens[sub(dd, unit(dim, a)), a, i], sub(dd, unit(dim, a)), y))
        plan.append((d, x, faces, dupd, fixed.get((d, x))))

    cands = [None] * L
    ptr = [0] * L
    count = 0
    pos = 0
    while pos >= 0:
        if pos == L:
            if injective and not all(len(set(v)) == len(v) for v in assign.values()):
                pos -= 1
                continue
            count += 1
            if bound is not None and count > bound:
                raise SizeBoundExceeded("maps", count, bound)
            yield SimpMap(X, Y, {d: list(v) for d, v in assign.items()})
            pos -= 1
            continue
        d, x, faces, dupd, fx = plan[pos]
        if cands[pos] is None:
            if d == zero:
                cs = range(Y.n(zero))
            else:
                sig = tuple(assign[fd][fc] for fd, fc in faces)
                cs = yindex[d].get(sig, ())
            if fx is not None:
                cs = [fx] if fx in cs else []
            cands[pos] = cs
            ptr[pos] = 0
        cs = cands[pos]
        advanced = False
        while ptr[pos] < len(cs):
            y = cs[ptr[pos]]
            ptr[pos] += 1
            assign[d][x] = y
            ok = True
            for dd, xx, table, sd, sy in dupd:
                v = table[assign[sd][sy]]
                assign[dd][xx] = v
                f = fixed.get((dd, xx))
                if f is not None and f != v:
                    ok = False
                    break
            if ok:
                advanced = True
                break
        if advanced:
            pos += 1
        else:
            cands[pos] = None
            assign[d][x] = -1
            pos -= 1


def find_isomorphism(X: Simp, Y: Simp) -> SimpMap | None:
    """An isomorphism X -> Y over the whole shape, found by injective search."""
    if X.shape != Y.shape or X.counts() != Y.counts():
        return None
    for f in find_maps(X, Y, X.shape, injective=True):
        if f.is_bijective():
            return f
    return None


# ---------------------------------------------------------------- subobjects

@dataclass(frozen=True, eq=False)
class SubObject:
    parent: Simp
    cells: dict  # deg -> frozenset of cell indices

    def __eq__(self, other):
        return (isinstance(other, SubObject) and self.parent is other.parent
                and self.normalized() == other.normalized())

    def __hash__(self):
        return hash(tuple(sorted((d, tuple(sorted(v))) for d, v in self.normalized().items())))

    def normalized(self) -> dict:
        return {d: frozenset(v) for d, v in self.cells.items() if v}

    def __contains__(self, item) -> bool:
        d, x = item
        return x in self.cells.get(d, ())

    def size(self) -> int:
        return sum(len(v) for v in self.cells.values())

    def counts(self) -> dict:
        return {d: len(self.cells.get(d, ())) for d in self.parent.degrees()}

    def _check(self, other):
        if other.parent is not self.parent:
            raise ValueError("subobjects of different parents")

    def union(self, other: "SubObject") -> "SubObject":
        self._check(other)
        return SubObject(self.parent, {d: frozenset(self.cells.get(d, ())) | frozenset(other.cells.get(d, ()))
                                       for d in self.parent.shape})

    def intersection(self, other: "SubObject") -> "SubObject":
        self._check(other)
        return SubObject(self.parent, {d: frozenset(self.cells.get(d, ())) & frozenset(other.cells.get(d, ()))
                                       for d in self.parent.shape})

    def issubset(self, other: "SubObject") -> bool:
        self._check(other)
        return all(frozenset(v) <= frozenset(other.cells.get(d, ())) for d, v in self.cells.items())

    def is_empty(self) -> bool:
        return all(not v for v in self.cells.values())

    def is_closed(self) -> bool:
        P = self.parent
        for (d, a, i), t in P.faces.items():
            dd = sub(d, unit(P.dim, a))
            if any(t[x] not in self.cells.get(dd, ()) for x in self.cells.get(d, ())):
                return False
        for (d, a, i), t in P.degens.items():
            du = add(d, unit(P.dim, a))
            if any(t[x] not in self.cells.get(du, ()) for x in self.cells.get(d, ())):
                return False
        return True

    def nondegenerate(self) -> dict:
        P = self.parent
        out = {}
        for d in P.degrees():
            reps = P.degenerate_reps(d)
            out[d] = sorted(x for x in self.cells.get(d, ()) if reps[x] is None)
        return out

    def to_simp(self, name="") -> Simp:
        """Materialize as an object in its own right (cells keep parent labels)."""
        P = self.parent
        keep = {d: sorted(self.cells.get(d, ())) for d in P.shape}
        shape = {d for d in P.shape if keep[d]}
        if not shape:
            raise ValueError("empty subobject")
        pos = {d: {x: i for i, x in enumerate(keep[d])} for d in shape}
        labels = {d: [P.labels[d][x] for x in keep[d]] for d in shape}
        faces = {(d, a, i): [pos[sub(d, unit(P.dim, a))][t[x]] for x in keep[d]]
                 for (d, a, i), t in P.faces.items() if d in shape}
        degens = {(d, a, i): [pos[add(d, unit(P.dim, a))][t[x]] for x in keep[d]]
                  for (d, a, i), t in P.degens.items()
                  if d in shape and add(d, unit(P.dim, a)) in shape}
        meta = {"parent_index": keep}
        return Simp(shape, labels, faces, degens, gen=P.gen, cosk=None, meta=meta,
                    name=name or f"sub({P.name})")


def empty_subobject(parent: Simp) -> SubObject:
    return SubObject(parent, {d: frozenset() for d in parent.shape})


def whole(parent: Simp) -> SubObject:
    return SubObject(parent, {d: frozenset(range(parent.n(d))) for d in parent.shape})


def generated_by(parent: Simp, seeds: Iterable[tuple]) -> SubObject:
    """Smallest subobject containing the seed cells (deg, index)."""
    cells = {d: set() for d in parent.shape}
    stack = list(seeds)
    dim = parent.dim
    while stack:
        d, x = stack.pop()
        if x in cells[d]:
            continue
        cells[d].add(x)
        for a in range(dim):
            if d[a] >= 1:
                dd = sub(d, unit(dim, a))
                for i in range(d[a] + 1):
                    stack.append((dd, parent.faces[d, a, i][x]))
            du = add(d, unit(dim, a))
            if du in parent.shape:
                for i in range(d[a] + 1):
                    stack.append((du, parent.degens[d, a, i][x]))
    return SubObject(parent, {d: frozenset(v) for d, v in cells.items()})


def largest_avoiding(parent: Simp, d, x) -> SubObject:
    """Largest subobject not containing the cell (d, x): drop everything that generates it."""
    dim = parent.dim
    rev: dict = {}
    for (dd, a, i), t in parent.faces.items():
        lo = sub(dd, unit(dim, a))
        for c, f in enumerate(t):
            rev.setdefault((lo, f), []).append((dd, c))
    for (dd, a, i), t in parent.degens.items():
        hi = add(dd, unit(dim, a))
        if hi in parent.shape:
            for c, f in enumerate(t):
                rev.setdefault((hi, f), []).append((dd, c))
    bad = {(d, x)}
    stack = [(d, x)]
    while stack:
        c = stack.pop()
        for p in rev.get(c, ()):
            if p not in bad:
                bad.add(p)
                stack.append(p)
    return SubObject(parent, {dd: frozenset(c for c in range(parent.n(dd)) if (dd, c) not in bad)
                              for dd in parent.shape})


def image(f: SimpMap, sub_obj: SubObject | None = None) -> SubObject:
    cells = {}
    for d, v in f.images.items():
        src = range(len(v)) if sub_obj is None else sub_obj.cells.get(d, ())
        cells[d] = frozenset(v[x] for x in src)
    for d in f.target.shape:
        cells.setdefault(d, frozenset())
    return SubObject(f.target, cells)


def preimage(f: SimpMap, sub_obj: SubObject) -> SubObject:
    return SubObject(f.source, {d: frozenset(x for x, y in enumerate(v) if y in sub_obj.cells.get(d, ()))
                                for d, v in f.images.items()})


# ---------------------------------------------------------------- components

def components(s: Simp, axis: int = 0, at=None) -> list[list[int]]:
    """Path components along `axis` of the vertices at degree `at` (default 0)."""
    dim = s.dim
    base = tuple(at) if at is not None else (0,) * dim
    up = add(base, unit(dim, axis))
    parent = list(range(s.n(base)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    if up in s.shape:
        d1, d0 = s.faces[up, axis, 1], s.faces[up, axis, 0]
        for e in range(s.n(up)):
            ra, rb = find(d1[e]), find(d0[e])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict = {}
    for v in range(s.n(base)):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())
