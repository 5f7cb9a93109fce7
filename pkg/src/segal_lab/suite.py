"""The acceptance checks, shared by the CLI and the test suite.

Each criterion returns a CriterionResult holding one record per individual
check.  A record names the claim it exercises with a short descriptive anchor.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .completion import contractible_levels, discnerve_tilde_check, tilde
from .corpus import corpus_categories, corpus_functors
from .covers import (e_filtration, enumerate_covers, filtration_pushout_check, hc_gluing_check,
                     nondegenerate_counts, prism_decomposition_check)
from .fincat import find_isomorphism, is_equivalence
from .segal import (associativity_check, completeness_check, dk_check, ho_category,
                    segal_check, thm62_pi0_check)
from .simplicial import components
from .sset import nerve, nerve_product_comparison, spine_bijection
from .sspace import (classifying_diagram, classifying_map, discrete_nerve, exponential_comparison,
                     product_comparison, standard_E, standard_F, standard_G)
from .verdict import Verdict, jsonable

SUITE_TRUNC = (4, 4)
SUITE_BUDGET = 200_000


@dataclass
class CheckRecord:
    name: str
    anchor: str
    passed: bool
    outcome: str
    details: object = None
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "anchor": self.anchor, "passed": self.passed,
                "outcome": self.outcome, "details": jsonable(self.details),
                "seconds": round(self.seconds, 3)}


@dataclass
class CriterionResult:
    number: int
    title: str
    records: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.records) and all(r.passed for r in self.records)

    def line(self) -> str:
        bad = [r.name for r in self.records if not r.passed]
        tail = f" (failed: {', '.join(bad[:4])})" if bad else ""
        return (f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d}. {self.title} "
                f"- {len(self.records)} checks, {self.seconds:.1f}s{tail}")

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "checks": [r.to_json() for r in self.records]}


class _Recorder:
    def __init__(self, result: CriterionResult):
        self.result = result

    def check(self, name, anchor, fn, expect="yes"):
        """Run fn() -> Verdict | (bool, details) and record whether it matched expect."""
        t = time.perf_counter()
        try:
            out = fn()
        except Exception as e:  # a crash is a failed check, reported with its message
            rec = CheckRecord(name, anchor, False, "error", f"{type(e).__name__}: {e}")
        else:
            if isinstance(out, Verdict):
                rec = CheckRecord(name, anchor, out.outcome.value == expect, out.outcome.value,
                                  {"witness": out.witness, "reason": out.reason, **out.extra})
            else:
                ok, details = out
                rec = CheckRecord(name, anchor, bool(ok), "pass" if ok else "fail", details)
        rec.seconds = time.perf_counter() - t
        self.result.records.append(rec)
        return rec


def _criterion(number, title):
    def wrap(fn):
        def run(ctx):
            res = CriterionResult(number, title)
            t = time.perf_counter()
            fn(ctx, _Recorder(res))
            res.seconds = time.perf_counter() - t
            return res
        run.number, run.title = number, title
        return run
    return wrap


@dataclass
class SuiteContext:
    cats: dict
    functors: list
    trunc: tuple = SUITE_TRUNC
    budget: int = SUITE_BUDGET
    _nc: dict = field(default_factory=dict)

    def nc(self, key):
        """N C at the suite truncation, with the outer truncation lowered to the largest
        k whose space degree 1 survives the cell budget."""
        if key not in self._nc:
            c = self.cats[key]
            w = classifying_diagram(c, self.trunc, self.budget)
            top = max(k for k in range(self.trunc[0] + 1) if (k, 1) in w.shape)
            if top < self.trunc[0]:
                w = classifying_diagram(c, (top, self.trunc[1]), self.budget)
            self._nc[key] = w
        return self._nc[key]


def make_context(corpus=None, trunc=SUITE_TRUNC) -> SuiteContext:
    cats = corpus_categories(corpus)
    return SuiteContext(cats, corpus_functors(corpus, cats), tuple(trunc))


# ---------------------------------------------------------------- 1

PRODUCT_PAIRS = [("one", "one"), ("two", "one"), ("one", "I1"), ("I1", "z2"), ("point", "idempotent")]
EXPONENT_PAIRS = [("point", "one"), ("one", "one"), ("point", "I1"), ("pair", "one")]


@_criterion(1, "product and exponential isomorphisms")
def crit_isomorphisms(ctx, r):
    for a, b in PRODUCT_PAIRS:
        if a in ctx.cats and b in ctx.cats:
            c, d = ctx.cats[a], ctx.cats[b]
            r.check(f"nerve({a}x{b})", "nerve-preserves-products",
                    lambda: nerve_product_comparison(c, d, ctx.trunc[0]))
            r.check(f"N({a}x{b})", "classifying-diagram-preserves-products",
                    lambda: product_comparison(c, d, ctx.trunc))
    for a, b in EXPONENT_PAIRS:
        if a in ctx.cats and b in ctx.cats:
            c, d = ctx.cats[a], ctx.cats[b]
            r.check(f"N({b}^{a})", "classifying-diagram-preserves-exponentials",
                    lambda: exponential_comparison(c, d, ctx.trunc))


# ---------------------------------------------------------------- 2

@_criterion(2, "nerve levels are iterated fiber products")
def crit_fiber_products(ctx, r):
    for key, c in ctx.cats.items():
        x = nerve(c, 4)
        for m in range(2, 5):
            r.check(f"{key} m={m}", "nerve-level-is-fiber-product", lambda: spine_bijection(x, m))


# ---------------------------------------------------------------- 3

def _covering_fibers(c):
    x = nerve(c, 1)
    d1, d0 = x.faces[(1,), 0, 1], x.faces[(1,), 0, 0]
    verts = [lab[0][0] for lab in x.labels[(0,)]]
    for a, va in enumerate(verts):
        for b, vb in enumerate(verts):
            fiber = {x.labels[(1,)][e][1][0] for e in range(x.n((1,))) if d1[e] == a and d0[e] == b}
            if fiber != set(c.hom(va, vb)):
                return False, {"pair": [va, vb], "fiber": sorted(map(str, fiber))}
    return True, {"pairs": len(verts) ** 2}


@_criterion(3, "edges over a pair of objects are the hom set")
def crit_covering(ctx, r):
    for key, c in ctx.cats.items():
        r.check(key, "edge-fibers-are-hom-sets", lambda: _covering_fibers(c))


# ---------------------------------------------------------------- 4

def _segal_verdict(w):
    rep = segal_check(w)
    if rep.exact:
        return Verdict.yes(rep.to_json(), "exact isomorphism at every k")
    return Verdict.no(rep.to_json(), "Segal maps not exact isomorphisms")


def _glued_edges():
    g = standard_G(2, trunc=SUITE_TRUNC).to_simp(name="F(1)+F(1)")
    rep = segal_check(g)
    status, witness, _ = rep.per_k[2]
    return status.value == "failed" and witness is not None, {"k=2": status.value, "witness": witness}


@_criterion(4, "Segal condition")
def crit_segal(ctx, r):
    for n in range(4):
        r.check(f"F({n})", "representables-are-segal", lambda: _segal_verdict(standard_F(n, ctx.trunc)))
    for key, c in ctx.cats.items():
        r.check(f"discnerve {key}", "discrete-nerve-is-segal",
                lambda: _segal_verdict(discrete_nerve(c, ctx.trunc)))
        r.check(f"N {key}", "classifying-diagram-is-segal", lambda: _segal_verdict(ctx.nc(key)))
    r.check("two edges glued at a vertex", "glued-edges-not-segal", _glued_edges)


# ---------------------------------------------------------------- 5

def _ho_iso(ctx, key):
    h = ho_category(ctx.nc(key))
    iso = find_isomorphism(h.cat, ctx.cats[key])
    return iso is not None, {"objects": len(h.cat.objects), "morphisms": len(h.cat.arrows)}


@_criterion(5, "homotopy category recovers the category")
def crit_ho(ctx, r):
    for key in ctx.cats:
        r.check(f"ho N {key}", "ho-of-classifying-diagram", lambda: _ho_iso(ctx, key))
        r.check(f"assoc/unit {key}", "ho-composition-associative-unital",
                lambda: associativity_check(ctx.nc(key)))


# ---------------------------------------------------------------- 6

def _dk_matches(ctx, f, expected):
    src = [k for k, c in ctx.cats.items() if c is f.source][0]
    tgt = [k for k, c in ctx.cats.items() if c is f.target][0]
    dk = dk_check(classifying_map(f, ctx.nc(src), ctx.nc(tgt)))
    eq = is_equivalence(f)
    agree = dk.outcome == eq.outcome and not dk.is_unknown
    if expected is not None:
        agree = agree and eq.is_yes == expected
    return agree, {"dk": dk.outcome.value, "equivalence": eq.outcome.value, "expected": expected}


@_criterion(6, "Dwyer-Kan detection matches equivalence of categories")
def crit_dk(ctx, r):
    for name, f, expected in ctx.functors:
        r.check(name, "dk-iff-equivalence", lambda: _dk_matches(ctx, f, expected))


# ---------------------------------------------------------------- 7

def _discnerve_I1_incomplete(ctx):
    c = ctx.cats["I1"]
    v = completeness_check(discrete_nerve(c, ctx.trunc))
    w = v.witness or {}
    ok = v.is_no and w.get("pi0_W0") == 2 and w.get("pi0_hoequiv") == 4
    return ok, {"outcome": v.outcome.value, "pi0_W0": w.get("pi0_W0"),
                "pi0_hoequiv": w.get("pi0_hoequiv")}


@_criterion(7, "completeness")
def crit_complete(ctx, r):
    for key in ctx.cats:
        r.check(f"N {key}", "classifying-diagram-is-complete", lambda: completeness_check(ctx.nc(key)))
    if "I1" in ctx.cats:
        r.check("discnerve I1", "discrete-nerve-not-complete", lambda: _discnerve_I1_incomplete(ctx))


# ---------------------------------------------------------------- 8

def _pi0_iso_classes(ctx, key):
    w, c = ctx.nc(key), ctx.cats[key]
    comps = components(w.level(0))
    verts = [lab[0][0][0] for lab in w.labels[(0, 0)]]
    got = sorted(sorted(map(str, (verts[v] for v in comp))) for comp in comps)
    want = sorted(sorted(map(str, cls)) for cls in c.iso_classes)
    return got == want, {"components": len(comps), "iso_classes": len(want)}


@_criterion(8, "components of the object space are isomorphism classes")
def crit_pi0(ctx, r):
    for key in ctx.cats:
        r.check(key, "pi0-objects-are-iso-classes", lambda: _pi0_iso_classes(ctx, key))


# ---------------------------------------------------------------- 9

def brute_force_covers(n: int) -> set:
    """Covers of [n] as sets of maximal faces, by exhausting all subcomplexes of Δ[n]."""
    faces = [frozenset(s) for k in range(1, n + 2) for s in itertools.combinations(range(n + 1), k)]
    required = [frozenset({i}) for i in range(n + 1)] + [frozenset({i, i + 1}) for i in range(n)]
    out = set()
    for mask in range(1 << len(faces)):
        fam = {f for i, f in enumerate(faces) if mask >> i & 1}
        if not all(q in fam for q in required):
            continue
        if any(frozenset(s) not in fam for f in fam for k in range(1, len(f))
               for s in itertools.combinations(sorted(f), k)):
            continue
        maximal = [f for f in fam if not any(f < g for g in fam)]
        if n > 0 and any(len(f) < 2 or max(f) - min(f) != len(f) - 1 for f in maximal):
            continue
        out.add(frozenset(maximal))
    return out


def _covers_match(n):
    got = set()
    for cov in enumerate_covers(n):
        got.add(frozenset(frozenset(range(i, i + k + 1)) for i, k in cov.constituents)
                if n > 0 else frozenset({frozenset({0})}))
    want = brute_force_covers(n)
    return got == want, {"enumerated": len(got), "oracle": len(want)}


def _e_counts(k_max=4):
    E = standard_E(1, trunc=(k_max, 1))
    counts = {k: E.n((k, 0)) for k in range(k_max + 1)}
    nondeg = {k: len(E.nondegenerate((k, 0))) for k in range(k_max + 1)}
    ok = all(counts[k] == 2 ** (k + 1) for k in counts) and all(nondeg[k] == 2 for k in range(1, k_max + 1))
    return ok, {"cells": counts, "nondegenerate": nondeg}


def _filtration_levels(k=4):
    E = standard_E(1, trunc=(k, 1))
    got = [nondegenerate_counts(s) for s in e_filtration(k, E)]
    want = [{m: (2 if 1 <= m < j or m == 0 else 1 if m == j else 0) for m in range(k + 1)}
            for j in range(1, k + 1)]
    return got == want, {"nondegenerate": got}


@_criterion(9, "covers, prism decomposition and the filtration of E")
def crit_covers(ctx, r):
    for n in range(4):
        r.check(f"covers n={n}", "covers-match-oracle", lambda: _covers_match(n))
    r.check("covers n=2 count", "two-covers-of-F2", lambda: (len(enumerate_covers(2)) == 2, None))
    for n in range(4):
        r.check(f"prism n={n}", "prism-decomposition", lambda: prism_decomposition_check(n))
    for k in (2, 3):
        r.check(f"pushout k={k}", "filtration-pushout", lambda: filtration_pushout_check(k))
        r.check(f"gluing k={k}", "h-c-gluing", lambda: hc_gluing_check(k))
    r.check("E counts", "E-levels", _e_counts)
    r.check("E filtration", "E-filtration-levels", _filtration_levels)


# ---------------------------------------------------------------- 10

TILDE_FULL_LIMIT = 1000


@_criterion(10, "completion of discrete nerves")
def crit_completion(ctx, r):
    for key, c in ctx.cats.items():
        r.check(f"{key} (2,1)", "completion-of-discrete-nerve", lambda: discnerve_tilde_check(c, (2, 1)))
        nc = classifying_diagram(c, (2, 2))
        if not nc.meta.get("clipped") and nc.n((2, 2)) <= TILDE_FULL_LIMIT:
            r.check(f"{key} (2,2)", "completion-of-discrete-nerve",
                    lambda: discnerve_tilde_check(c, (2, 2)))

    def e_contractible():
        res = tilde(standard_E(1, trunc=(2, 2)))
        return contractible_levels(res.tilde)

    r.check("tilde(E)", "completion-of-E-contractible", e_contractible)


# ---------------------------------------------------------------- 11

@_criterion(11, "Map(E, N C) against homotopy equivalences")
def crit_thm62(ctx, r):
    for key in ctx.cats:
        r.check(key, "map-from-E-is-hoequiv", lambda: thm62_pi0_check(ctx.nc(key)))


CRITERIA = [crit_isomorphisms, crit_fiber_products, crit_covering, crit_segal, crit_ho, crit_dk,
            crit_complete, crit_pi0, crit_covers, crit_completion, crit_thm62]


def run_suite(ctx: SuiteContext | None = None, only=None) -> list[CriterionResult]:
    ctx = ctx or make_context()
    return [crit(ctx) for crit in CRITERIA if only is None or crit.number in only]


def report(results: list[CriterionResult]) -> dict:
    return {"schema": 1, "command": "verify-suite", "passed": all(r.passed for r in results),
            "criteria": [r.to_json() for r in results]}
