"""Finite categories, functors, natural transformations and equivalence tests.

A category is stored extensionally: objects, morphisms with source and
target, chosen identities and the full composition table.  Morphism ids are
arbitrary hashables, so derived categories (products, functor categories)
simply use tuples or Functor/NatTrans values as ids.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterator

from .verdict import SizeBoundExceeded, Verdict

DEFAULT_FUNCTOR_BOUND = 10_000
DEFAULT_NATTRANS_BOUND = 100_000


class CategoryError(ValueError):
    pass


class ParseError(CategoryError):
    pass


class AssociativityError(CategoryError):
    def __init__(self, f, g, h):
        super().__init__(f"associativity fails for (f, g, h) = ({f!r}, {g!r}, {h!r})")
        self.triple = (f, g, h)


class IdentityLawError(CategoryError):
    pass


class CompositionGap(CategoryError):
    pass


@dataclass(frozen=True, eq=False)
class FinCat:
    objects: tuple
    arrows: dict  # morphism id -> (source, target)
    identity: dict  # object -> morphism id
    compose: dict  # (g, f) -> g∘f, for composable pairs
    name: str = ""

    def __repr__(self):
        label = self.name or "FinCat"
        return f"<{label}: {len(self.objects)} objects, {len(self.arrows)} morphisms>"

    @cached_property
    def morphisms(self) -> tuple:
        return tuple(self.arrows)

    def src(self, f):
        return self.arrows[f][0]

    def tgt(self, f):
        return self.arrows[f][1]

    @cached_property
    def _homs(self) -> dict:
        homs = {(x, y): [] for x in self.objects for y in self.objects}
        for f, (x, y) in self.arrows.items():
            homs[x, y].append(f)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, x, y) -> tuple:
        return self._homs[x, y]

    @cached_property
    def _out(self) -> dict:
        out = {x: [] for x in self.objects}
        for f, (x, _) in self.arrows.items():
            out[x].append(f)
        return {k: tuple(v) for k, v in out.items()}

    def out_arrows(self, x) -> tuple:
        return self._out[x]

    def comp(self, g, f):
        """g∘f."""
        return self.compose[g, f]

    def comp_path(self, fs, start):
        """Compose a path given in diagrammatic order, starting at object `start`."""
        acc = self.identity[start]
        for f in fs:
            acc = self.compose[f, acc]
        return acc

    @cached_property
    def is_identity(self) -> dict:
        ids = set(self.identity.values())
        return {f: f in ids for f in self.arrows}

    @cached_property
    def inverses(self) -> dict:
        inv = {}
        for f, (x, y) in self.arrows.items():
            for g in self.hom(y, x):
                if self.compose[g, f] == self.identity[x] and self.compose[f, g] == self.identity[y]:
                    inv[f] = g
                    break
        return inv

    def is_iso(self, f) -> bool:
        return f in self.inverses

    @property
    def is_groupoid(self) -> bool:
        return len(self.inverses) == len(self.arrows)

    @cached_property
    def iso_classes(self) -> tuple:
        """Isomorphism classes of objects, each a tuple in object order."""
        seen, classes = set(), []
        for x in self.objects:
            if x in seen:
                continue
            cls = tuple(y for y in self.objects if y not in seen and any(
                self.is_iso(f) for f in self.hom(x, y)))
            seen.update(cls)
            classes.append(cls)
        return tuple(classes)

    def isomorphic_objects(self, x, y) -> bool:
        return any(self.is_iso(f) for f in self.hom(x, y))

    @cached_property
    def connected_components(self) -> tuple:
        parent = {x: x for x in self.objects}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for x, y in self.arrows.values():
            parent[find(x)] = find(y)
        groups = {}
        for x in self.objects:
            groups.setdefault(find(x), []).append(x)
        return tuple(tuple(g) for g in groups.values())

    def composable_pairs(self) -> Iterator[tuple]:
        for f, (_, y) in self.arrows.items():
            for g in self.out_arrows(y):
                yield g, f


def check_category(c: FinCat) -> FinCat:
    """Exhaustively verify the category axioms; raise on the first violation."""
    for x in c.objects:
        i = c.identity.get(x)
        if i is None or c.arrows.get(i) != (x, x):
            raise IdentityLawError(f"object {x!r} lacks an identity endomorphism")
    for f, (x, y) in c.arrows.items():
        if x not in c.identity or y not in c.identity:
            raise CategoryError(f"morphism {f!r} has an unknown endpoint")
    for g, f in c.composable_pairs():
        if (g, f) not in c.compose:
            raise CompositionGap(f"no composite recorded for {g!r}∘{f!r}")
        h = c.compose[g, f]
        if c.arrows.get(h) != (c.src(f), c.tgt(g)):
            raise CategoryError(f"{g!r}∘{f!r} = {h!r} has the wrong endpoints")
    for (g, f) in c.compose:
        if c.tgt(f) != c.src(g):
            raise CategoryError(f"composite recorded for non-composable pair ({g!r}, {f!r})")
    for f, (x, y) in c.arrows.items():
        if c.compose[f, c.identity[x]] != f or c.compose[c.identity[y], f] != f:
            raise IdentityLawError(f"identity law fails for {f!r}")
    for f in c.arrows:
        for g in c.out_arrows(c.tgt(f)):
            gf = c.compose[g, f]
            for h in c.out_arrows(c.tgt(g)):
                if c.compose[h, gf] != c.compose[c.compose[h, g], f]:
                    raise AssociativityError(f, g, h)
    return c


def make_category(objects, arrows: dict, identity: dict, compose_fn, name="") -> FinCat:
    """Build the full composition table from a composition function and validate."""
    c = FinCat(tuple(objects), dict(arrows), dict(identity), {}, name)
    table = {}
    for g, f in c.composable_pairs():
        table[g, f] = compose_fn(g, f)
    c = FinCat(c.objects, c.arrows, c.identity, table, name)
    return check_category(c)


# ---------------------------------------------------------------- text format

def parse_category(text: str, name: str = "") -> tuple[FinCat, frozenset | None]:
    """Parse the line-based category format.

    Returns the category and the weak-equivalence set (None when no `weq:` line
    is present).  Identities are implicit and named ``id:<object>``.
    """
    objects: list = []
    arrows: dict = {}
    table: dict = {}
    weq = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(":")
        toks = rest.split()
        key = key.strip()
        if key == "objects":
            objects.extend(toks)
        elif key == "arrow":
            if len(toks) != 3:
                raise ParseError(f"line {lineno}: arrow needs 3 tokens")
            f, a, b = toks
            if f in arrows:
                raise ParseError(f"line {lineno}: duplicate arrow {f}")
            arrows[f] = (a, b)
        elif key == "compose":
            if len(toks) != 3:
                raise ParseError(f"line {lineno}: compose needs 3 tokens")
            g, f, h = toks
            table[g, f] = h
        elif key == "weq":
            weq = set(toks) if weq is None else weq | set(toks)
        else:
            raise ParseError(f"line {lineno}: unknown directive {key!r}")
    if len(set(objects)) != len(objects):
        raise ParseError("duplicate objects")
    for f, (a, b) in arrows.items():
        if a not in objects or b not in objects:
            raise ParseError(f"arrow {f} has unknown endpoint")
    identity = {x: f"id:{x}" for x in objects}
    for i in identity.values():
        if i in arrows:
            raise ParseError(f"arrow name {i} clashes with an implicit identity")
    all_arrows = {identity[x]: (x, x) for x in objects}
    all_arrows.update(arrows)
    ids = set(identity.values())
    for (g, f), h in table.items():
        for m in (g, f, h):
            if m not in all_arrows:
                raise ParseError(f"compose line mentions unknown arrow {m}")
    full = dict(table)
    for f, (a, b) in all_arrows.items():
        full[f, identity[a]] = f
        full[identity[b], f] = f
    c = FinCat(tuple(objects), all_arrows, identity, {}, name)
    for g, f in c.composable_pairs():
        if (g, f) not in full:
            raise CompositionGap(f"no compose line for {g}∘{f}")
    c = FinCat(c.objects, all_arrows, identity, full, name)
    check_category(c)
    if weq is not None:
        unknown = weq - set(all_arrows)
        if unknown:
            raise ParseError(f"weq mentions unknown arrows {sorted(unknown)}")
        weq = frozenset(weq | ids)
    return c, weq


def _tokens(items, prefix) -> dict:
    """A whitespace-free, unique token per id (falls back to prefix + position)."""
    out, used = {}, set()
    for pos, x in enumerate(items):
        tok = "".join(str(x).split())
        if not tok or tok in used or tok.startswith("#") or tok.startswith("id:"):
            tok = f"{prefix}{pos}"
        used.add(tok)
        out[x] = tok
    return out


def dump_category(c: FinCat, weq=None) -> str:
    """Serialize back to the text format; ids become whitespace-free tokens."""
    ids = set(c.identity.values())
    ob = _tokens(c.objects, "o")
    ar = _tokens([f for f in c.arrows if f not in ids], "f")
    ar.update({c.identity[x]: f"id:{ob[x]}" for x in c.objects})
    lines = ["objects: " + " ".join(ob[x] for x in c.objects)]
    for f, (a, b) in c.arrows.items():
        if f not in ids:
            lines.append(f"arrow: {ar[f]} {ob[a]} {ob[b]}")
    for (g, f), h in c.compose.items():
        if g not in ids and f not in ids:
            lines.append(f"compose: {ar[g]} {ar[f]} {ar[h]}")
    if weq is not None:
        extra = [ar[f] for f in c.arrows if f in weq and f not in ids]
        lines.append("weq: " + " ".join(extra))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- standard categories

def interval_category(n: int) -> FinCat:
    """[n]: objects 0..n and one arrow (i, j) for each i <= j."""
    objs = tuple(range(n + 1))
    arrows = {(i, j): (i, j) for i in objs for j in objs if i <= j}
    return make_category(objs, arrows, {i: (i, i) for i in objs},
                         lambda g, f: (f[0], g[1]), name=f"[{n}]")


def iso_interval_category(n: int) -> tuple[FinCat, "Functor"]:
    """I[n] (a unique isomorphism between any two objects) and the inclusion [n] -> I[n]."""
    objs = tuple(range(n + 1))
    arrows = {(i, j): (i, j) for i in objs for j in objs}
    c = make_category(objs, arrows, {i: (i, i) for i in objs},
                      lambda g, f: (f[0], g[1]), name=f"I[{n}]")
    interval = interval_category(n)
    inc = Functor(interval, c, {i: i for i in objs}, {f: f for f in interval.morphisms})
    return c, inc


def terminal_category() -> FinCat:
    return interval_category(0)


def discrete_category(objects) -> FinCat:
    objs = tuple(objects)
    return make_category(objs, {("id", x): (x, x) for x in objs},
                         {x: ("id", x) for x in objs}, lambda g, f: g, name="discrete")


def monoid_category(elements, unit, mult, name="monoid") -> FinCat:
    """One-object category from a finite monoid; mult(g, f) is the product g·f."""
    arrows = {e: ("*", "*") for e in elements}
    return make_category(("*",), arrows, {"*": unit}, mult, name=name)


def cyclic_group_category(n: int) -> FinCat:
    return monoid_category(tuple(range(n)), 0, lambda g, f: (g + f) % n, name=f"Z/{n}")


def product(c: FinCat, d: FinCat) -> tuple[FinCat, tuple["Functor", "Functor"]]:
    objs = tuple(itertools.product(c.objects, d.objects))
    arrows = {(f, g): ((c.src(f), d.src(g)), (c.tgt(f), d.tgt(g)))
              for f in c.morphisms for g in d.morphisms}
    ident = {(x, y): (c.identity[x], d.identity[y]) for x, y in objs}
    p = make_category(objs, arrows, ident,
                      lambda g, f: (c.comp(g[0], f[0]), d.comp(g[1], f[1])),
                      name=f"{c.name or 'C'}x{d.name or 'D'}")
    p1 = Functor(p, c, {o: o[0] for o in objs}, {m: m[0] for m in arrows})
    p2 = Functor(p, d, {o: o[1] for o in objs}, {m: m[1] for m in arrows})
    return p, (p1, p2)


def subcategory(c: FinCat, keep, name="") -> FinCat:
    """Wide subcategory on the given morphisms (identities always kept)."""
    keep = set(keep) | set(c.identity.values())
    arrows = {f: st for f, st in c.arrows.items() if f in keep}
    table = {k: v for k, v in c.compose.items() if k[0] in keep and k[1] in keep}
    for k, v in table.items():
        if v not in keep:
            raise CategoryError(f"{k[0]!r}∘{k[1]!r} leaves the subcategory")
    return FinCat(c.objects, arrows, dict(c.identity), table, name or c.name)


def full_subcategory(c: FinCat, objects, name="") -> FinCat:
    objs = tuple(x for x in c.objects if x in set(objects))
    oset = set(objs)
    arrows = {f: st for f, st in c.arrows.items() if st[0] in oset and st[1] in oset}
    table = {k: v for k, v in c.compose.items() if k[0] in arrows and k[1] in arrows}
    return FinCat(objs, arrows, {x: c.identity[x] for x in objs}, table, name or c.name)


def iso_subgroupoid(c: FinCat) -> FinCat:
    """The maximal subgroupoid: same objects, invertible morphisms only."""
    return subcategory(c, c.inverses.keys(), name=f"iso({c.name})" if c.name else "")


def opposite(c: FinCat) -> FinCat:
    arrows = {f: (b, a) for f, (a, b) in c.arrows.items()}
    table = {(f, g): h for (g, f), h in c.compose.items()}
    return FinCat(c.objects, arrows, dict(c.identity), table, c.name + "^op")


# ---------------------------------------------------------------- functors

@dataclass(frozen=True, eq=False)
class Functor:
    source: FinCat
    target: FinCat
    obj_map: dict
    mor_map: dict

    @cached_property
    def key(self) -> tuple:
        return (tuple(self.obj_map[x] for x in self.source.objects),
                tuple(self.mor_map[f] for f in self.source.morphisms))

    def __eq__(self, other):
        return isinstance(other, Functor) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Functor({dict(self.obj_map)})"

    def __call__(self, x):
        return self.obj_map[x]

    def on_mor(self, f):
        return self.mor_map[f]

    def to_json(self):
        return {"obj_map": {str(k): str(v) for k, v in self.obj_map.items()},
                "mor_map": {str(k): str(v) for k, v in self.mor_map.items()}}

    def violations(self) -> list:
        s, t = self.source, self.target
        bad = []
        for f in s.morphisms:
            a, b = s.arrows[f]
            if t.arrows.get(self.mor_map.get(f)) != (self.obj_map[a], self.obj_map[b]):
                bad.append(("endpoints", f))
        for x in s.objects:
            if self.mor_map[s.identity[x]] != t.identity[self.obj_map[x]]:
                bad.append(("identity", x))
        for (g, f), h in s.compose.items():
            if t.comp(self.mor_map[g], self.mor_map[f]) != self.mor_map[h]:
                bad.append(("composition", (g, f)))
        return bad

    def is_valid(self) -> bool:
        return not self.violations()


def identity_functor(c: FinCat) -> Functor:
    return Functor(c, c, {x: x for x in c.objects}, {f: f for f in c.morphisms})


def compose_functors(g: Functor, f: Functor) -> Functor:
    return Functor(f.source, g.target, {x: g.obj_map[f.obj_map[x]] for x in f.source.objects},
                   {m: g.mor_map[f.mor_map[m]] for m in f.source.morphisms})


def constant_functor(c: FinCat, d: FinCat, y) -> Functor:
    return Functor(c, d, {x: y for x in c.objects}, {f: d.identity[y] for f in c.morphisms})


def enumerate_functors(c: FinCat, d: FinCat, bound: int | None = None,
                       injective: bool = False, obj_candidates=None) -> Iterator[Functor]:
    """All functors c -> d by backtracking over objects, then non-identity morphisms.

    With ``injective`` only functors injective on objects and morphisms are
    produced (used for isomorphism search).  ``obj_candidates`` optionally maps
    each object to an allowed list of images.
    """
    objs = c.objects
    ids = set(c.identity.values())
    mors = [f for f in c.morphisms if f not in ids]
    pos = {f: i for i, f in enumerate(mors)}
    # composition constraints become checkable once all three morphisms are placed
    checks = [[] for _ in mors]
    for (g, f), h in c.compose.items():
        if g in ids or f in ids:
            continue
        last = max(pos[g], pos[f], pos[h]) if h in pos else max(pos[g], pos[f])
        checks[last].append((g, f, h))
    count = 0
    omap: dict = {}
    mmap: dict = {}

    def image(m):
        if m in ids:
            return d.identity[omap[c.src(m)]]
        return mmap[m]

    def objs_rec(i, used):
        if i == len(objs):
            for ident in c.identity.values():
                mmap.pop(ident, None)
            yield from mors_rec(0, set())
            return
        x = objs[i]
        cands = obj_candidates[x] if obj_candidates else d.objects
        for y in cands:
            if injective and y in used:
                continue
            omap[x] = y
            yield from objs_rec(i + 1, used | {y} if injective else used)
        omap.pop(x, None)

    def mors_rec(i, used):
        nonlocal count
        if i == len(mors):
            count += 1
            if bound is not None and count > bound:
                raise SizeBoundExceeded("functors", count, bound)
            full = {m: image(m) for m in c.morphisms}
            if injective and len(set(full.values())) != len(full):
                return
            yield Functor(c, d, dict(omap), full)
            return
        f = mors[i]
        a, b = c.arrows[f]
        for g in d.hom(omap[a], omap[b]):
            if injective and (g in used or d.is_identity[g]):
                continue
            mmap[f] = g
            if all(d.comp(image(gg), image(ff)) == image(hh) for gg, ff, hh in checks[i]):
                yield from mors_rec(i + 1, used | {g} if injective else used)
        mmap.pop(f, None)

    yield from objs_rec(0, set())


@dataclass(frozen=True, eq=False)
class NatTrans:
    source: Functor
    target: Functor
    components: dict  # object of the domain category -> morphism of the codomain

    @cached_property
    def key(self) -> tuple:
        return (self.source.key, self.target.key,
                tuple(self.components[x] for x in self.source.source.objects))

    def __eq__(self, other):
        return isinstance(other, NatTrans) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"NatTrans({dict(self.components)})"

    def to_json(self):
        return {str(k): str(v) for k, v in self.components.items()}

    def is_natural(self) -> bool:
        c, d = self.source.source, self.source.target
        F, G, a = self.source, self.target, self.components
        return all(d.comp(G.on_mor(f), a[c.src(f)]) == d.comp(a[c.tgt(f)], F.on_mor(f))
                   for f in c.morphisms)


def enumerate_nattrans(F: Functor, G: Functor, allowed=None) -> Iterator[NatTrans]:
    """All natural transformations F => G, optionally with components in `allowed`."""
    c, d = F.source, F.target
    objs = c.objects
    idx = {x: i for i, x in enumerate(objs)}
    checks = [[] for _ in objs]
    for f in c.morphisms:
        a, b = c.arrows[f]
        checks[max(idx[a], idx[b])].append(f)
    comp: dict = {}

    def rec(i):
        if i == len(objs):
            yield NatTrans(F, G, dict(comp))
            return
        x = objs[i]
        for m in d.hom(F(x), G(x)):
            if allowed is not None and m not in allowed:
                continue
            comp[x] = m
            if all(d.comp(G.on_mor(f), comp[c.src(f)]) == d.comp(comp[c.tgt(f)], F.on_mor(f))
                   for f in checks[i]):
                yield from rec(i + 1)
        comp.pop(x, None)

    yield from rec(0)


def functor_category(c: FinCat, d: FinCat, bound: int = DEFAULT_FUNCTOR_BOUND,
                     nat_bound: int = DEFAULT_NATTRANS_BOUND, allowed=None) -> FinCat:
    """d^c: functors c -> d and natural transformations, composed componentwise.

    ``allowed`` restricts components (used for we(d^c)).
    """
    functors = list(enumerate_functors(c, d, bound=bound))
    arrows, identity = {}, {}
    for F in functors:
        for G in functors:
            for a in enumerate_nattrans(F, G, allowed):
                arrows[a] = (F, G)
                if len(arrows) > nat_bound:
                    raise SizeBoundExceeded("natural transformations", len(arrows), nat_bound)
    for F in functors:
        identity[F] = NatTrans(F, F, {x: d.identity[F(x)] for x in c.objects})

    def vcomp(b, a):
        return NatTrans(a.source, b.target, {x: d.comp(b.components[x], a.components[x])
                                             for x in c.objects})

    name = f"{d.name or 'D'}^{c.name or 'C'}"
    cat = FinCat(tuple(functors), arrows, identity, {}, name)
    table = {(g, f): vcomp(g, f) for g, f in cat.composable_pairs()}
    return FinCat(cat.objects, arrows, identity, table, name)


@dataclass(frozen=True, eq=False)
class WidePair:
    cat: FinCat
    weq: frozenset

    def __post_init__(self):
        c = self.cat
        missing = set(c.identity.values()) - self.weq
        if missing:
            raise CategoryError("weak equivalences must contain every identity")
        for g, f in c.composable_pairs():
            if g in self.weq and f in self.weq and c.comp(g, f) not in self.weq:
                raise CategoryError(f"weak equivalences not closed under {g!r}∘{f!r}")

    @cached_property
    def weq_category(self) -> FinCat:
        return subcategory(self.cat, self.weq)

    @classmethod
    def isos(cls, c: FinCat) -> "WidePair":
        return cls(c, frozenset(c.inverses))

    @classmethod
    def identities(cls, c: FinCat) -> "WidePair":
        return cls(c, frozenset(c.identity.values()))

    @classmethod
    def everything(cls, c: FinCat) -> "WidePair":
        return cls(c, frozenset(c.arrows))


def we_functor_category(pair: WidePair, c: FinCat, bound: int = DEFAULT_FUNCTOR_BOUND,
                        nat_bound: int = DEFAULT_NATTRANS_BOUND) -> WidePair:
    """(D^c, weq) where a transformation is a weak equivalence iff all components are."""
    full = functor_category(c, pair.cat, bound, nat_bound)
    weq = frozenset(a for a in full.morphisms
                    if all(m in pair.weq for m in a.components.values()))
    return WidePair(full, weq)


# ---------------------------------------------------------------- equivalences

def is_equivalence(f: Functor) -> Verdict:
    """Fully faithful and essentially surjective."""
    s, t = f.source, f.target
    for x in s.objects:
        for y in s.objects:
            image = [f.on_mor(m) for m in s.hom(x, y)]
            target = t.hom(f(x), f(y))
            if len(set(image)) != len(image):
                return Verdict.no({"hom": (x, y), "failure": "not injective"}, "not faithful")
            if set(image) != set(target):
                return Verdict.no({"hom": (x, y), "failure": "not surjective"}, "not full")
    images = {f(x) for x in s.objects}
    for y in t.objects:
        if not any(t.isomorphic_objects(z, y) for z in images):
            return Verdict.no({"object": y}, "not essentially surjective")
    return Verdict.yes(reason="fully faithful and essentially surjective")


def _iso_class_profile(c: FinCat) -> list:
    prof = []
    for cls in c.iso_classes:
        x = cls[0]
        prof.append((len(cls), len(c.hom(x, x))))
    return sorted(prof)


def equivalent(c: FinCat, d: FinCat, bound: int = DEFAULT_FUNCTOR_BOUND) -> Verdict:
    """Search for a functor c -> d that is an equivalence.

    Object images are restricted so that every iso class of c lands in a class
    of d with the same endomorphism count, which is necessary for fullness.
    """
    if len(c.iso_classes) != len(d.iso_classes):
        return Verdict.no({"iso_classes": (len(c.iso_classes), len(d.iso_classes))},
                          "different numbers of isomorphism classes")
    sig_c = sorted(len(c.hom(cls[0], cls[0])) for cls in c.iso_classes)
    sig_d = sorted(len(d.hom(cls[0], cls[0])) for cls in d.iso_classes)
    if sig_c != sig_d:
        return Verdict.no({"endomorphism_counts": (sig_c, sig_d)}, "iso-class profiles differ")
    cands = {x: [y for y in d.objects if len(d.hom(y, y)) == len(c.hom(x, x))]
             for x in c.objects}
    try:
        for F in enumerate_functors(c, d, bound=bound, obj_candidates=cands):
            if is_equivalence(F).is_yes:
                return Verdict.yes(F, "equivalence found")
    except SizeBoundExceeded as e:
        return Verdict.unknown({"reached": e.reached}, "functor bound exceeded")
    return Verdict.no(None, "no functor is an equivalence")


def find_isomorphism(c: FinCat, d: FinCat, bound: int | None = None) -> Functor | None:
    """An isomorphism of categories c -> d, found by injective backtracking."""
    if len(c.objects) != len(d.objects) or len(c.arrows) != len(d.arrows):
        return None

    def profile(cat, x):
        return (len(cat.hom(x, x)),
                sorted(len(cat.hom(x, y)) for y in cat.objects),
                sorted(len(cat.hom(y, x)) for y in cat.objects))

    prof_d = {y: profile(d, y) for y in d.objects}
    cands = {x: [y for y in d.objects if prof_d[y] == profile(c, x)] for x in c.objects}
    for F in enumerate_functors(c, d, bound=bound, injective=True, obj_candidates=cands):
        return F
    return None


def automorphism_group(c: FinCat, x) -> tuple[tuple, dict]:
    """Elements and multiplication table of Aut(x) in a groupoid."""
    elems = tuple(c.hom(x, x))
    return elems, {(g, f): c.comp(g, f) for g in elems for f in elems}


def groups_isomorphic(g1, g2) -> bool:
    """Brute-force group isomorphism with identity and element-order pruning."""
    e1, m1 = g1
    e2, m2 = g2
    if len(e1) != len(e2):
        return False

    def unit(elems, mult):
        for u in elems:
            if all(mult[u, a] == a for a in elems):
                return u

    def order(elems, mult, a):
        u, k, p = unit(elems, mult), 1, a
        while p != u:
            p = mult[a, p]
            k += 1
        return k

    o1 = {a: order(e1, m1, a) for a in e1}
    o2 = {a: order(e2, m2, a) for a in e2}
    if sorted(o1.values()) != sorted(o2.values()):
        return False
    phi: dict = {}

    def rec(i, used):
        if i == len(e1):
            return all(phi[m1[a, b]] == m2[phi[a], phi[b]] for a in e1 for b in e1)
        a = e1[i]
        for b in e2:
            if b in used or o2[b] != o1[a]:
                continue
            phi[a] = b
            if all(phi[m1[p, q]] == m2[phi[p], phi[q]] for p in phi for q in phi
                   if m1[p, q] in phi):
                if rec(i + 1, used | {b}):
                    return True
        phi.pop(a, None)
        return False

    return rec(0, frozenset())


def groupoid_equivalent(g: FinCat, h: FinCat) -> Verdict:
    """Groupoids are equivalent iff their iso classes match with isomorphic automorphism groups."""
    for name, cat in (("first", g), ("second", h)):
        if not cat.is_groupoid:
            raise CategoryError(f"{name} argument is not a groupoid")
    auts_g = [automorphism_group(g, cls[0]) for cls in g.iso_classes]
    auts_h = [automorphism_group(h, cls[0]) for cls in h.iso_classes]
    if len(auts_g) != len(auts_h):
        return Verdict.no({"pi0": (len(auts_g), len(auts_h))}, "component counts differ")
    remaining = list(range(len(auts_h)))
    matching = []
    for i, a in enumerate(auts_g):
        for j in remaining:
            if groups_isomorphic(a, auts_h[j]):
                remaining.remove(j)
                matching.append((g.iso_classes[i][0], h.iso_classes[j][0]))
                break
        else:
            return Verdict.no({"unmatched_class": g.iso_classes[i][0],
                               "group_order": len(a[0])}, "automorphism groups differ")
    return Verdict.yes(matching, "iso classes and automorphism groups match")
