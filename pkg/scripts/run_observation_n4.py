"""Filled-diagram node counts in four variables against the Whitney count 3d + 2.

    python3 scripts/run_observation_n4.py --d 2 3
"""

import argparse
import json

from newtondiag.bounds import filled_observation_check


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    verdicts = [filled_observation_check(4, d) for d in args.d]
    if args.json:
        print(json.dumps([v.to_json_obj() for v in verdicts], indent=2))
    else:
        for v in verdicts:
            print(f"d={v.d}: face minimum {v.face_min}, lower bound {v.lower_bound}, "
                  f"direct minimum {v.direct_min}, Whitney {v.whitney_nodes}, target {v.target}, "
                  f"certified={v.certified}")
    return 0 if all(v.certified for v in verdicts) else 1


if __name__ == "__main__":
    raise SystemExit(main())
