"""Count lam-permissible alcoves two ways: pruned enumeration and a brute-force box scan.

Usage: python scripts/count_permissible.py [--max-n 3] [--max-entry 2]
"""

import argparse
from itertools import permutations, product

from schubert_lab import coweights as cw
from schubert_lab.alcoves import alcove_from_spine, enumerate_permissible, is_permissible


def brute_count(lam):
    n = len(lam)
    return sum(
        is_permissible(alcove_from_spine(first, spine), lam)
        for first in product(range(lam[-1] - 1, lam[0] + 2), repeat=n)
        for spine in permutations(range(1, n + 1))
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=3)
    parser.add_argument("--max-entry", type=int, default=2)
    args = parser.parse_args()
    print("lambda,enumerated,brute_force")
    for n in range(2, args.max_n + 1):
        for lam in cw.dominant_in_box(n, 0, args.max_entry):
            got, expect = len(enumerate_permissible(lam)), brute_count(lam)
            flag = "" if got == expect else "  MISMATCH"
            print(f"\"{','.join(map(str, lam))}\",{got},{expect}{flag}")


if __name__ == "__main__":
    main()
