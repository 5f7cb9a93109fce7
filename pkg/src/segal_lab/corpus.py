"""The shipped corpus of small categories and functors."""

from __future__ import annotations

import json
import os
from pathlib import Path

from .fincat import FinCat, Functor, parse_category

ENV_VAR = "SEGAL_LAB_CORPUS"
_PACKAGE_DIR = Path(__file__).with_name("corpus")

# display names used in reports
NAMES = {"point": "[0]", "one": "[1]", "two": "[2]", "three": "[3]", "I1": "I[1]", "I2": "I[2]",
         "z2groupoid": "Z/2 groupoid", "z2": "Z/2", "idempotent": "idempotent monoid",
         "pair": "two points"}


def corpus_dir(override: str | os.PathLike | None = None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else _PACKAGE_DIR


def load_category_file(path: str | os.PathLike, name: str = "") -> tuple[FinCat, frozenset | None]:
    path = Path(path)
    return parse_category(path.read_text(), name=name or NAMES.get(path.stem, path.stem))


def load_category(name_or_path: str, directory=None) -> FinCat:
    p = Path(name_or_path)
    if not p.exists():
        p = corpus_dir(directory) / f"{name_or_path}.cat"
    if not p.exists():
        raise FileNotFoundError(f"no category file {name_or_path!r}")
    return load_category_file(p)[0]


def corpus_categories(directory=None) -> dict[str, FinCat]:
    """All *.cat files in the corpus, keyed by file stem, in sorted order."""
    d = corpus_dir(directory)
    files = sorted(d.glob("*.cat"))
    if not files:
        raise FileNotFoundError(f"no category files in {d}")
    return {f.stem: load_category_file(f)[0] for f in files}


def parse_functor(entry: dict, cats: dict[str, FinCat]) -> Functor:
    c, d = cats[entry["source"]], cats[entry["target"]]
    obj = {x: entry["objects"][str(x)] for x in c.objects}
    mor = {c.identity[x]: d.identity[obj[x]] for x in c.objects}
    for f in c.morphisms:
        if f not in mor:
            mor[f] = entry["arrows"][str(f)]
    f = Functor(c, d, obj, mor)
    bad = f.violations()
    if bad:
        raise ValueError(f"functor {entry.get('name', '?')} is not a functor: {bad[:3]}")
    return f


def corpus_functors(directory=None, cats=None) -> list[tuple[str, Functor, bool | None]]:
    cats = cats if cats is not None else corpus_categories(directory)
    path = corpus_dir(directory) / "functors.json"
    if not path.exists():
        return []
    data = json.loads(path.read_text())
    out = []
    for e in data["functors"]:
        f = parse_functor(e, cats)
        out.append((e["name"], f, e.get("equivalence")))
    return out
