"""Search for sharp positive polynomials in three variables with maximal diagram support.

    python3 scripts/run_filledsharp.py --dmax 5
    python3 scripts/run_filledsharp.py --dmax 7 --long-running
"""

import argparse
import json
import time

from newtondiag.constructions import filledsharp_search
from newtondiag.grammar import format_polynomial


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dmax", type=int, default=5)
    ap.add_argument("--long-running", action="store_true", help="allow d = 6 and 7")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    rows = []
    for d in range(1, args.dmax + 1):
        t0 = time.perf_counter()
        rep = filledsharp_search(d, long_running=args.long_running)
        dt = time.perf_counter() - t0
        polys = [format_polynomial(p) for p in rep.results]
        print(f"d={d}: {len(polys)} result(s), {rep.combinations_checked} combinations, "
              f"{rep.degenerate_systems} degenerate systems, {dt:.2f}s")
        for text in polys:
            print(f"    {text}")
        rows.append({
            "d": d,
            "results": polys,
            "pair_solutions": {f"{a}{b}": v for (a, b), v in rep.pair_solutions.items()},
            "combinations_checked": rep.combinations_checked,
            "degenerate_systems": rep.degenerate_systems,
            "seconds": round(dt, 3),
        })
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
