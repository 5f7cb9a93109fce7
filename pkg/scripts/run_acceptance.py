#!/usr/bin/env python3
"""Run the acceptance criteria and print one line per criterion.

    python3 scripts/run_acceptance.py                 # all criteria
    python3 scripts/run_acceptance.py --only 2 3 9    # a subset
    python3 scripts/run_acceptance.py --json report.json
"""

import argparse
import json
import sys

from segal_lab.suite import CRITERIA, make_context, report


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    p.add_argument("--json", help="write the full report here")
    p.add_argument("--corpus", help="corpus directory")
    args = p.parse_args(argv)

    ctx = make_context(args.corpus)
    results = []
    for crit in CRITERIA:
        if args.only and crit.number not in args.only:
            continue
        res = crit(ctx)
        print(res.line(), flush=True)
        results.append(res)
    doc = report(results)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True, default=str)
    print(f"overall: {'PASS' if doc['passed'] else 'FAIL'}")
    return 0 if doc["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
