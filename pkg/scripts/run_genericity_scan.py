#!/usr/bin/env python3
"""Run the Monte-Carlo genericity scan over a grid of types (p, q).

For each type it reports how many random bracket tensors are surjective,
lie in the Zariski-open set O, and satisfy the sufficient condition, and
checks that membership in O implied the sufficient condition on every
sample.  Deterministic for a fixed seed.
"""

import argparse
import json

from twostep.pac import scan


def parse_types(texts):
    out = []
    for t in texts:
        p, q = t.split(",")
        out.append((int(p), int(q)))
    return out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--types", nargs="+", default=["2,3", "3,3", "3,4"],
                    metavar="P,Q", help="types to scan (default: 2,3 3,3 3,4)")
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--bound", type=int, default=10)
    ap.add_argument("--json", action="store_true", help="emit one JSON document")
    args = ap.parse_args()

    reports = []
    for p, q in parse_types(args.types):
        rep = scan(p, q, args.trials, seed=args.seed, bound=args.bound)
        reports.append(rep.to_json_dict())

    if args.json:
        print(json.dumps({"seed": args.seed, "reports": reports}, indent=1, sort_keys=True))
        return 0

    header = f"{'type':>8} {'samples':>8} {'surjective':>11} {'in O':>8} " \
             f"{'sufficient':>11} {'violations':>11}"
    print(header)
    for d in reports:
        print(f"({d['p']},{d['q']})".rjust(8),
              str(d["samples"]).rjust(8),
              str(d["surjective"]).rjust(11),
              str(d["in_O"]).rjust(8),
              str(d["sufficient_holds"]).rjust(11),
              str(d["implication_violations"]).rjust(11))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
