"""Characteristic polynomial of the q-deformed 2-skeleton of the 4-simplex.

Prints, per q, the number of hyperplanes and flats, the factored polynomial,
whether it agrees with the parametric quintic, and the integer-root split.

    python scripts/delta53_table.py --q 2 3 4 5
"""

import argparse
import time

from qdeform.arrangement import build_qdef_complex
from qdeform.charpoly import build_lattice, delta53_formula
from qdeform.combinat import skeleton_complex
from qdeform.gf import field_of_order
from qdeform.polyalg import format_factored, int_root_split


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3, 4, 5])
    args = ap.parse_args()

    cx = skeleton_complex(5, 3)
    print(f"{'q':>3} {'|A|':>5} {'flats':>7} {'secs':>6}  {'formula':7}  chi")
    for q in args.q:
        start = time.perf_counter()
        arr = build_qdef_complex(cx, field_of_order(q))
        lat = build_lattice(arr, keep_covers=False)
        chi = lat.charpoly()
        secs = time.perf_counter() - start
        roots, rest = int_root_split(chi)
        ok = "match" if chi == delta53_formula(q) else "DIFFERS"
        note = "" if rest.degree < 1 else f"  [residual of degree {rest.degree} has no integer root]"
        print(f"{q:>3} {len(arr):>5} {len(lat.flats):>7} {secs:>6.2f}  {ok:7}  {format_factored(chi)}{note}")


if __name__ == "__main__":
    main()
