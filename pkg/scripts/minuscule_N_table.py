"""Tabulate the least admissible N of the degeneration family for every minuscule alcove.

Usage: python scripts/minuscule_N_table.py [--max-n 4]
"""

import argparse
from collections import Counter

from schubert_lab import coweights as cw
from schubert_lab.alcoves import enumerate_permissible
from schubert_lab.minuscule import choose_N, index_data


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=4)
    parser.add_argument("--detail", action="store_true", help="print one row per alcove")
    args = parser.parse_args()
    for n in range(2, args.max_n + 1):
        for t in range(1, n):
            values = Counter()
            for x in enumerate_permissible(cw.fundamental(t, n)):
                d = index_data(x, t)
                N = choose_N(d)
                values[N] += 1
                if args.detail:
                    print(f"n={n} t={t} x={x} f={d.f} C={d.C} N={N}")
            spread = ", ".join(f"{N}: {k}" for N, k in sorted(values.items()))
            print(f"n={n} t={t} alcoves={sum(values.values())} max N={max(values)}  N counts {{{spread}}}")


if __name__ == "__main__":
    main()
