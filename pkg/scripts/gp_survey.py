"""Survey triangulations of the order-p nerve: which checks pass for which parameters.

    python scripts/gp_survey.py --primes 3 5 7 --max-k 3
"""

import argparse
import time

from coxdim.gp import InsufficientSubdivisionError, verify_Gp


def run(p, **kw):
    start = time.perf_counter()
    try:
        rep = verify_Gp(p, **kw)
    except InsufficientSubdivisionError as e:
        return f"stopped at {e.check}", None, time.perf_counter() - start
    failed = [k for k, ok in rep.checks.items() if not ok]
    return ("ok" if rep.verdict else "failed: " + ", ".join(failed)), rep.f_vector, time.perf_counter() - start


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5])
    ap.add_argument("--max-k", type=int, default=2, help="largest barycentric subdivision count to try")
    ap.add_argument("--frequencies", type=int, nargs="+", default=[2, 3, 4])
    args = ap.parse_args()

    print(f"{'p':>3}  {'route':<22} {'f-vector':<18} {'secs':>6}  outcome")
    for p in args.primes:
        rows = [(f"barycentric k={k}", dict(triangulation="barycentric", subdivisions=k)) for k in range(1, args.max_k + 1)]
        rows += [(f"nosquare freq={f}", dict(triangulation="nosquare", frequency=f)) for f in args.frequencies]
        for label, kw in rows:
            outcome, fv, secs = run(p, **kw)
            print(f"{p:>3}  {label:<22} {str(fv or '-'):<18} {secs:>6.1f}  {outcome}")


if __name__ == "__main__":
    main()
