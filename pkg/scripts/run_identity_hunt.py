#!/usr/bin/env python3
"""Run the counterexample search against every catalogued identity.

Universal relations are expected to survive the whole budget; the
count-level CLAIMED forms and the known-false NEGATIVE form should fall.
"""

import argparse
import sys
import time

from netmat import (
    build_structure,
    build_utilization,
    evaluate_identity,
    list_identities,
    search_counterexample,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("ids", nargs="*", help="identity ids (default: whole catalogue)")
    parser.add_argument("--budget", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--no-duplicates", action="store_true", help="forbid duplicate trajectories")
    args = parser.parse_args()

    specs = list_identities()
    if args.ids:
        wanted = set(args.ids)
        specs = [s for s in specs if s.id in wanted]
        missing = wanted - {s.id for s in specs}
        if missing:
            print(f"unknown ids: {', '.join(sorted(missing))}", file=sys.stderr)
            return 2

    print(f"{'identity':<18}{'class':<21}{'outcome'}")
    for spec in specs:
        start = time.perf_counter()
        found = search_counterexample(
            spec.id, args.budget, args.seed, allow_duplicates=not args.no_duplicates
        )
        elapsed = time.perf_counter() - start
        if found is None:
            outcome = f"survived {args.budget} instances ({elapsed:.2f}s)"
        else:
            s = build_structure(found.graph)
            u = build_utilization(found, s)
            w = evaluate_identity(spec, s, u).witness
            labels = found.graph.labels
            outcome = (
                f"FALSIFIED at ({labels[w.row]}, {labels[w.col]}) lhs={w.lhs!r} rhs={w.rhs!r} "
                f"with {len(found.trajectories)} trajectories ({elapsed:.2f}s)"
            )
        print(f"{spec.id:<18}{spec.kind.value:<21}{outcome}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
