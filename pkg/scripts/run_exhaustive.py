"""Run the exhaustive node-count sweeps and write the certificates as JSON.

    python3 scripts/run_exhaustive.py --theorem T3.4 --dmax 5 --out results/t34.json
    python3 scripts/run_exhaustive.py --theorem T5.2 --dmax 4 --long-running
"""

import argparse
import logging
import os
import time

from newtondiag.enumeration import certificates_json, exhaustive_bound_verify


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--theorem", choices=["T3.4", "T5.2"], default="T3.4")
    ap.add_argument("--dmax", type=int, default=None)
    ap.add_argument("--long-running", action="store_true")
    ap.add_argument("--out", default=None, help="write certificates here")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(asctime)s %(message)s")

    t0 = time.perf_counter()
    certs = exhaustive_bound_verify(args.theorem, args.dmax, long_running=args.long_running)
    for c in certs:
        status = "ok" if c.ok else f"{len(c.violations)} violations"
        print(f"{c.theorem} d={c.d}: {c.support_count} supports, min {c.min_nodes}, bound {c.bound}, "
              f"attained={c.attained}, {status}")
    print(f"elapsed {time.perf_counter() - t0:.1f}s")
    if args.out:
        os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(certificates_json(certs))
    return 0 if all(c.ok for c in certs) else 1


if __name__ == "__main__":
    raise SystemExit(main())
