"""How often does a p-regular partition induce semisimply to a Rouquier block?

At weight 2 the answer is governed by eps; at higher weight some partitions
have no such chain.  This script counts successes per (p, w) over principal
blocks and records the complexity verdict each partition receives.

    python scripts/chain_lengths.py --primes 5,7 --weights 2,3
"""

import argparse
from collections import Counter

from symblock.branching import induce_chain_to_rouquier
from symblock.complexity import complexity_of
from symblock.partition_core import block_partitions, is_p_regular, principal_block


def main():
    ap = argparse.ArgumentParser(description="induce-chain coverage per prime and weight")
    ap.add_argument("--primes", default="5,7")
    ap.add_argument("--weights", default="2,3")
    ap.add_argument("--depth-cap", type=int, default=500)
    args = ap.parse_args()

    for p in map(int, args.primes.split(",")):
        for w in map(int, args.weights.split(",")):
            if w >= p:
                continue
            lengths, tags = Counter(), Counter()
            found = total = 0
            for lam in block_partitions(principal_block(w * p, p)):
                if not is_p_regular(lam, p):
                    continue
                total += 1
                chain = induce_chain_to_rouquier(lam, p, args.depth_cap)
                if chain is not None:
                    found += 1
                    lengths[len(chain)] += 1
                tags[complexity_of(lam, p, args.depth_cap).tag] += 1
            print(f"p={p} w={w}: {found}/{total} induce to a Rouquier block; lengths {dict(sorted(lengths.items()))}")
            print(f"    verdicts {dict(tags)}")


if __name__ == "__main__":
    main()
