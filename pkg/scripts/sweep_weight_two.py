"""Sweep every weight-2 block up to a size bound and tabulate labels, routes and chains.

    python scripts/sweep_weight_two.py --primes 3,5,7 --max-n-factor 4 [--json out.json]
"""

import argparse
import json
import time
from collections import Counter

from symblock.branching import blocks_up_to
from symblock.partition_core import block_partitions, format_partition, is_p_regular
from symblock.weight_two import label_of, label_table, route_chain, route_of


def sweep(p: int, max_n: int) -> dict:
    routes = Counter()
    lengths = Counter()
    inverted = []
    missing = []
    blocks = list(blocks_up_to(p, max_n, weight=2))
    for B in blocks:
        for (a, b), lam in label_table(B).items():
            if a < b:
                inverted.append(f"{format_partition(lam)}=[{a},{b}]")
        for lam in block_partitions(B):
            if not is_p_regular(lam, p):
                continue
            routes[route_of(lam, p).value] += 1
            chain = route_chain(lam, p)
            if chain is None:
                missing.append(format_partition(lam))
            else:
                lengths[len(chain)] += 1
    return {
        "p": p,
        "max_n": max_n,
        "blocks": len(blocks),
        "routes": dict(routes),
        "chain_lengths": dict(sorted(lengths.items())),
        "labels_with_a_lt_b": len(inverted),
        "examples_a_lt_b": inverted[:5],
        "missing_chains": missing,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", default="3,5,7")
    ap.add_argument("--max-n-factor", type=int, default=4, help="sweep n <= factor * p")
    ap.add_argument("--json", help="write the raw table here")
    args = ap.parse_args()

    rows = []
    for p in (int(x) for x in args.primes.split(",")):
        t0 = time.perf_counter()
        row = sweep(p, args.max_n_factor * p)
        row["seconds"] = round(time.perf_counter() - t0, 2)
        rows.append(row)
        print(
            f"p={p:<2} blocks={row['blocks']:<4} routes={row['routes']} "
            f"a<b={row['labels_with_a_lt_b']} missing={len(row['missing_chains'])} ({row['seconds']}s)"
        )
        print(f"     chain lengths {row['chain_lengths']}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
