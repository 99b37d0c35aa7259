"""Print closed forms next to their brute-force values for the summand count and Q-dimension formulas.

    python scripts/verify_closed_forms.py --primes 5,7,11
"""

import argparse
from fractions import Fraction

from symblock.jordan_calculus import lem1_count, lem1_count_oracle, lem2_dim, lem2_dim_oracle, run_sweeps


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", default="5,7,11")
    ap.add_argument("--table", action="store_true", help="print every (a, b) row")
    args = ap.parse_args()

    for p in map(int, args.primes.split(",")):
        print(f"p = {p}")
        for r in run_sweeps(p):
            print(f"  {r.check:<18} {r.cases:>4} cases  {'ok' if r.passed else 'FAIL ' + ', '.join(r.failures)}")
        if not args.table:
            continue
        print("     a  b    N  N*   dim  dim*   N - dim/p")
        for a in range(2, p - 1):
            for b in range(2, a + 1):
                if a + b > p:
                    continue
                n, d = lem1_count(a, b, p), lem2_dim(a, b, p)
                margin = Fraction(n) - Fraction(d, p)
                print(f"    {a:2} {b:2} {n:4} {lem1_count_oracle(a, b, p):3} {d:5} {lem2_dim_oracle(a, b, p):5}   {margin}")


if __name__ == "__main__":
    main()
