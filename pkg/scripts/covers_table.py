#!/usr/bin/env python3
"""Covers of F(n) for n <= 5, listed by their maximal intervals."""

import sys
from math import comb

from segal_lab.covers import enumerate_covers


def main():
    for n in range(6):
        covers = enumerate_covers(n)
        print(f"n={n}: {len(covers)} covers (Catalan {comb(2 * n, n) // (n + 1)})")
        if n <= 3:
            for c in covers:
                print("   ", " ".join(f"[{i}..{i + k}]" for i, k in sorted(c.constituents)) or "[0]")
    return 0


if __name__ == "__main__":
    sys.exit(main())
