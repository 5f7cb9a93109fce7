#!/usr/bin/env python3
"""Per-category summary of the shipped corpus: sizes, nerve counts, Segal/completeness verdicts."""

import sys

from segal_lab.corpus import corpus_categories
from segal_lab.fincat import find_isomorphism
from segal_lab.segal import completeness_check, ho_category, segal_check
from segal_lab.sset import nerve
from segal_lab.sspace import classifying_diagram, discrete_nerve

TRUNC = (3, 2)


def main():
    for key, c in corpus_categories().items():
        x = nerve(c, 3)
        w = classifying_diagram(c, TRUNC, budget=200_000)
        ho_ok = find_isomorphism(ho_category(w).cat, c) is not None
        dn = completeness_check(discrete_nerve(c, TRUNC)).outcome.value
        print(f"{key:11s} {len(c.objects)} objects {len(c.arrows):3d} morphisms  "
              f"nerve {[x.n((k,)) for k in range(4)]}  "
              f"segal={'exact' if segal_check(w).exact else 'no'}  ho~C={ho_ok}  "
              f"complete(N)={completeness_check(w).outcome.value}  complete(discnerve)={dn}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
