"""Per-q evidence on chi(S_D^q, q^k) / (q-1)^l against chi(G, k).

For a complex D on l vertices with 1-skeleton G, the quotient is an integer
congruent to chi(G, k) modulo q-1.  This script tabulates the quotient for
several prime powers q so that its behaviour as q varies can be inspected.

    python scripts/congruence_evidence.py --complex delta5,3 --k 1 2 3
    python scripts/congruence_evidence.py --complex data/tri_boundary.json
"""

import argparse

from qdeform.arrangement import build_qdef_complex
from qdeform.charpoly import charpoly_mobius
from qdeform.cli import load_complex
from qdeform.combinat import chromatic_poly, underlying_graph
from qdeform.gf import field_of_order


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--complex", default="delta5,3")
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3, 4, 5, 7, 8, 9])
    ap.add_argument("--k", type=int, nargs="+", default=[0, 1, 2])
    args = ap.parse_args()

    name, cx = load_complex(args.complex)
    chrom = chromatic_poly(underlying_graph(cx))
    l = cx.n
    print(f"{name}: {len(cx.faces)} faces on {l} vertices; chromatic values", {k: chrom(k) for k in args.k})
    print(f"{'q':>3} {'|A|':>5}  " + "  ".join(f"{'k=' + str(k):>22}" for k in args.k))
    for q in args.q:
        arr = build_qdef_complex(cx, field_of_order(q))
        chi = charpoly_mobius(arr)
        cells = []
        for k in args.k:
            value = chi(q**k)
            quot, rem = divmod(value, (q - 1) ** l)
            ok = rem == 0 and (quot - chrom(k)) % (q - 1) == 0
            cells.append(f"{quot:>18} {'ok' if ok else 'BAD':>3}")
        print(f"{q:>3} {len(arr):>5}  " + "  ".join(cells))


if __name__ == "__main__":
    main()
