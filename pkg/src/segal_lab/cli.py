"""segal-lab: build nerves and classification diagrams, run the checks, print reports.

Exit status: 0 when every check passed, 1 when one failed, 2 on usage errors,
missing files, parse errors and exceeded size bounds.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import corpus as corpus_mod
from .completion import discnerve_tilde_check
from .covers import (enumerate_covers, filtration_pushout_check, hc_gluing_check,
                     prism_decomposition_check)
from .fincat import (DEFAULT_FUNCTOR_BOUND, CategoryError, WidePair, find_isomorphism,
                     is_equivalence)
from .segal import (completeness_check, dk_check, ho_category, is_hoequiv, segal_check)
from .serialize import simp_to_json
from .sset import nerve
from .sspace import (classification_diagram, classifying_diagram, classifying_map,
                     discnerve_inclusion, discrete_nerve)
from .suite import CRITERIA, SuiteContext
from .verdict import SizeBoundExceeded, Verdict, jsonable

SCHEMA = 1
COMMANDS = ["nerve", "discnerve", "classify", "classification", "segal-check", "complete-check",
            "ho", "dk-check", "hoequiv", "covers", "prism", "filtration", "completion",
            "verify-suite"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    m_trunc: int = 4
    n_trunc: int = 4
    bound_functors: int = DEFAULT_FUNCTOR_BOUND
    fmt: str = "text"
    corpus: str | None = None
    space: str = "classify"
    expect: str | None = None
    labels: bool = False
    only: list | None = None

    def validate(self):
        if self.m_trunc < 2 or self.n_trunc < 2:
            raise UsageError("truncations must be at least 2")
        if self.bound_functors <= 0:
            raise UsageError("--bound-functors must be positive")

    @property
    def trunc(self):
        return (self.m_trunc, self.n_trunc)


@dataclass
class Report:
    command: list
    checks: list = field(default_factory=list)
    result: object = None

    def add(self, name, anchor, verdict=None, ok=None, expected="yes", witness=None, seconds=0.0):
        if verdict is not None:
            ok = verdict.outcome.value == expected
            rec = {"name": name, "anchor": anchor, "outcome": verdict.outcome.value,
                   "expected": expected, "passed": ok, "witness": verdict.witness,
                   "reason": verdict.reason}
        else:
            rec = {"name": name, "anchor": anchor, "outcome": "pass" if ok else "fail",
                   "passed": bool(ok), "witness": witness}
        rec["seconds"] = round(seconds, 3)
        self.checks.append(rec)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "command": self.command, "passed": self.passed,
                "checks": jsonable(self.checks), "result": jsonable(self.result)}


# ---------------------------------------------------------------- helpers

def _category(cfg: RunConfig, i=0):
    if len(cfg.inputs) <= i:
        raise UsageError(f"{cfg.command} needs a category file")
    path = cfg.inputs[i]
    p = Path(path)
    if p.exists():
        return corpus_mod.load_category_file(p)
    c = corpus_mod.load_category(path, cfg.corpus)
    return c, None


def _space(cfg: RunConfig):
    c, weq = _category(cfg)
    if cfg.space == "discnerve":
        return c, discrete_nerve(c, cfg.trunc)
    if cfg.space == "classification":
        if weq is None:
            raise UsageError("the category file has no weq: line")
        return c, classification_diagram(WidePair(c, weq), cfg.trunc)
    return c, classifying_diagram(c, cfg.trunc)


def _counts(x):
    return {",".join(map(str, d)): x.n(d) for d in sorted(x.shape)}


def _verdict_check(report, cfg, name, anchor, v: Verdict, default="yes"):
    report.add(name, anchor, v, expected=cfg.expect or default)


# ---------------------------------------------------------------- commands

def cmd_nerve(cfg, report):
    c, _ = _category(cfg)
    x = nerve(c, cfg.m_trunc)
    report.result = {"counts": _counts(x), "object": simp_to_json(x, cfg.labels)}


def cmd_discnerve(cfg, report):
    c, _ = _category(cfg)
    x = discrete_nerve(c, cfg.trunc)
    report.result = {"counts": _counts(x), "object": simp_to_json(x, cfg.labels)}


def cmd_classify(cfg, report):
    c, _ = _category(cfg)
    x = classifying_diagram(c, cfg.trunc)
    report.result = {"counts": _counts(x), "object": simp_to_json(x, cfg.labels)}


def cmd_classification(cfg, report):
    cfg.space = "classification"
    _, x = _space(cfg)
    report.result = {"counts": _counts(x), "object": simp_to_json(x, cfg.labels)}


def cmd_segal_check(cfg, report):
    _, w = _space(cfg)
    rep = segal_check(w)
    v = Verdict.yes(rep.to_json()) if rep.exact else (
        Verdict.unknown(rep.to_json(), "bijective on cells only") if rep.ok
        else Verdict.no(rep.to_json(), "a Segal map is not bijective"))
    _verdict_check(report, cfg, f"segal {w.name}", "segal-condition", v)
    report.result = rep.to_json()


def cmd_complete_check(cfg, report):
    _, w = _space(cfg)
    v = completeness_check(w)
    _verdict_check(report, cfg, f"complete {w.name}", "completeness", v)
    report.result = {"outcome": v.outcome.value, "witness": v.witness, "extra": v.extra}


def cmd_ho(cfg, report):
    c, w = _space(cfg)
    h = ho_category(w)
    iso = find_isomorphism(h.cat, c, bound=cfg.bound_functors)
    report.add(f"ho {w.name} vs input", "ho-of-classifying-diagram", ok=iso is not None,
               witness=None if iso is None else iso.to_json())
    report.result = h.to_json()


def cmd_hoequiv(cfg, report):
    _, w = _space(cfg)
    ho = ho_category(w)
    rows = []
    for e in range(w.n((1, 0))):
        v = is_hoequiv(w, e, ho)
        rows.append({"edge": e, "label": repr(w.labels[1, 0][e]), "hoequiv": v.outcome.value})
    report.result = {"edges": rows}


def cmd_dk_check(cfg, report):
    cats = corpus_mod.corpus_categories(cfg.corpus)
    if cfg.inputs and cfg.inputs[0] == "inclusion":
        c, _ = _category(cfg, 1)
        dn, nc = discrete_nerve(c, cfg.trunc), classifying_diagram(c, cfg.trunc)
        v = dk_check(discnerve_inclusion(dn, nc))
        _verdict_check(report, cfg, f"discnerve {c.name} -> N {c.name}", "discnerve-inclusion-dk", v)
        report.result = {"outcome": v.outcome.value}
        return
    functors = corpus_mod.corpus_functors(cfg.corpus, cats)
    names = cfg.inputs or [n for n, _, _ in functors]
    table = {n: (f, e) for n, f, e in functors}
    rows = []
    for name in names:
        if name not in table:
            raise UsageError(f"unknown functor {name!r}; known: {', '.join(sorted(table))}")
        f, _ = table[name]
        nc = classifying_diagram(f.source, cfg.trunc)
        nd = classifying_diagram(f.target, cfg.trunc)
        dk = dk_check(classifying_map(f, nc, nd))
        eq = is_equivalence(f)
        report.add(name, "dk-iff-equivalence", ok=dk.outcome == eq.outcome,
                   witness={"dk": dk.outcome.value, "equivalence": eq.outcome.value})
        rows.append({"functor": name, "dk": dk.outcome.value, "equivalence": eq.outcome.value})
    report.result = rows


def _int_arg(cfg, default):
    if not cfg.inputs:
        return default
    try:
        return int(cfg.inputs[0])
    except ValueError:
        raise UsageError(f"expected an integer, got {cfg.inputs[0]!r}") from None


def cmd_covers(cfg, report):
    n = _int_arg(cfg, 2)
    covers = enumerate_covers(n)
    report.result = {"n": n, "count": len(covers), "covers": [c.to_json() for c in covers]}


def cmd_prism(cfg, report):
    n = _int_arg(cfg, 2)
    v = prism_decomposition_check(n)
    report.add(f"prism n={n}", "prism-decomposition", v)
    report.result = v.witness


def cmd_filtration(cfg, report):
    k = _int_arg(cfg, 2)
    v1, v2 = filtration_pushout_check(k), hc_gluing_check(k)
    report.add(f"pushout k={k}", "filtration-pushout", v1)
    report.add(f"gluing k={k}", "h-c-gluing", v2)
    report.result = {"pushout": v1.witness, "gluing": v2.witness}


def cmd_completion(cfg, report):
    c, _ = _category(cfg)
    trunc = (min(cfg.m_trunc, 2), min(cfg.n_trunc, 2))
    v = discnerve_tilde_check(c, trunc)
    report.add(f"tilde(discnerve {c.name}) vs N {c.name}", "completion-of-discrete-nerve", v)
    report.result = {"truncation": list(trunc), "certificate": v.witness}


def cmd_verify_suite(cfg, report, out):
    ctx = SuiteContext(corpus_mod.corpus_categories(cfg.corpus), [], cfg.trunc)
    ctx.functors = corpus_mod.corpus_functors(cfg.corpus, ctx.cats)
    results = []
    for crit in CRITERIA:
        if cfg.only and crit.number not in cfg.only:
            continue
        res = crit(ctx)
        results.append(res)
        if cfg.fmt == "text":
            print(res.line(), file=out, flush=True)
        for rec in res.records:
            report.checks.append({"criterion": res.number, **rec.to_json()})
    report.result = [r.to_json() for r in results]


HANDLERS = {"nerve": cmd_nerve, "discnerve": cmd_discnerve, "classify": cmd_classify,
            "classification": cmd_classification, "segal-check": cmd_segal_check,
            "complete-check": cmd_complete_check, "ho": cmd_ho, "dk-check": cmd_dk_check,
            "hoequiv": cmd_hoequiv, "covers": cmd_covers, "prism": cmd_prism,
            "filtration": cmd_filtration, "completion": cmd_completion}


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="segal-lab", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("inputs", nargs="*", help="category file or corpus name, or an integer")
    p.add_argument("--mtrunc", type=int, default=4, help="outer truncation")
    p.add_argument("--ntrunc", type=int, default=4, help="space truncation")
    p.add_argument("--bound-functors", type=int, default=DEFAULT_FUNCTOR_BOUND)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--corpus", default=None, help="corpus directory (else $SEGAL_LAB_CORPUS)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--classify", dest="space", action="store_const", const="classify")
    g.add_argument("--discnerve", dest="space", action="store_const", const="discnerve")
    g.add_argument("--classification", dest="space", action="store_const", const="classification")
    p.add_argument("--expect", choices=["yes", "no", "unknown"], default=None,
                   help="expected verdict for single-verdict commands (default yes)")
    p.add_argument("--labels", action="store_true", help="include cell labels in objects")
    p.add_argument("--only", type=int, nargs="*", default=None, help="criteria for verify-suite")
    return p


def config_from_args(args) -> RunConfig:
    return RunConfig(command=args.command, inputs=list(args.inputs), m_trunc=args.mtrunc,
                     n_trunc=args.ntrunc, bound_functors=args.bound_functors, fmt=args.format,
                     corpus=args.corpus, space=args.space or "classify", expect=args.expect,
                     labels=args.labels, only=args.only)


def _print_text(report: Report, out):
    res = report.result
    if report.command[0] in ("nerve", "discnerve", "classify", "classification"):
        for d, n in res["counts"].items():
            print(f"({d}): {n}", file=out)
    elif report.command[0] != "verify-suite" and res is not None:
        print(json.dumps(jsonable(res), indent=2, sort_keys=True), file=out)
    for c in report.checks:
        if report.command[0] == "verify-suite":
            continue
        print(f"[{'PASS' if c['passed'] else 'FAIL'}] {c['name']} ({c['anchor']}): {c['outcome']}",
              file=out)
    if report.command[0] == "verify-suite":
        print(f"overall: {'PASS' if report.passed else 'FAIL'}", file=out)


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    cfg.validate()
    report = Report([cfg.command] + cfg.inputs)
    t = time.perf_counter()
    if cfg.command == "verify-suite":
        cmd_verify_suite(cfg, report, out)
    else:
        HANDLERS[cfg.command](cfg, report)
    if cfg.fmt == "json":
        doc = report.to_json()
        doc["seconds"] = round(time.perf_counter() - t, 3)
        print(json.dumps(doc, indent=2, sort_keys=True), file=out)
    else:
        _print_text(report, out)
    return 0 if report.passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_intermixed_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return run(config_from_args(args))
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
    except FileNotFoundError as e:
        print(f"file not found: {e}", file=sys.stderr)
    except CategoryError as e:
        print(f"parse error: {e}", file=sys.stderr)
    except SizeBoundExceeded as e:
        print(f"bound exceeded: {e}", file=sys.stderr)
    except (ValueError, KeyError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
