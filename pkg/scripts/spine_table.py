"""Tabulate Out/Aut dimension bounds and tree counts for a range of factor counts.

    python scripts/spine_table.py --max-r 8
"""

import argparse
import time

from coxdim.spine import aut_dimension_bounds, out_dimension_bounds, verify_stab_bound


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-r", type=int, default=7)
    ap.add_argument("--verify-up-to", type=int, default=5, help="also check the stabilizer bound tree by tree")
    args = ap.parse_args()

    print(f"{'r':>2} {'trees':>9} {'vcd<=':>6} {'cd>=':>5} {'gap':>4} {'aut vcd<=':>10} {'aut cd>=':>9} {'secs':>6}")
    for r in range(2, args.max_r + 1):
        start = time.perf_counter()
        o = out_dimension_bounds(r)
        a = aut_dimension_bounds(r)
        print(f"{r:>2} {o.trees:>9} {o.vcd_upper:>6} {o.bredon_cd_lower:>5} {o.gap:>4} "
              f"{a.vcd_upper:>10} {a.cd_lower:>9} {time.perf_counter() - start:>6.1f}")

    for r in range(2, args.verify_up_to + 1):
        rep = verify_stab_bound(r)
        print(f"stabilizer bound r={r}: {len(rep.violations)} violations, {len(rep.equality_cases)} equality cases")


if __name__ == "__main__":
    main()
