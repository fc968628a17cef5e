"""Spanning forests of the complete (d-1)-complex and their torsion coefficients.

    python scripts/forest_census.py 6 3
"""

import argparse
from collections import Counter
from math import comb

from recipchow.simplicial import spanning_forests


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("n", type=int)
    ap.add_argument("d", type=int)
    args = ap.parse_args()
    forests = spanning_forests(args.n, args.d)
    counts = Counter(F.coefficient for F in forests)
    print(f"K_{args.n}^{args.d - 1}: {len(forests)} spanning forests")
    for c in sorted(counts):
        print(f"  c_F = {c:>3}: {counts[c]}")
    total = sum(c * k for c, k in counts.items())
    print(f"sum c_F = {total}  (n^C(n-2,d-1) = {args.n ** comb(args.n - 2, args.d - 1)})")
    for F in forests:
        if F.coefficient > 1:
            print("  torsion example:", " ".join("".join(map(str, I)) for I in F.faces))
            break


if __name__ == "__main__":
    main()
