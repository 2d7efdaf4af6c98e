"""Sweep the chromatic identity chi(S_G^q, t) = (q-1)^l chi(G, (t-1)/(q-1)).

Runs over every labelled graph on n vertices and reports counts per q.  With
--monomial the analogue for M(G, r) is checked instead, with r taken from --q
as the root order.

    python scripts/identity_sweep.py --n 5 --q 2 3 4
"""

import argparse
import time

from qdeform.charpoly import verify_identity_prop43
from qdeform.combinat import all_graphs
from qdeform.gf import field_of_order, smallest_field_with_root


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--monomial", action="store_true", help="treat the --q values as r for M(G, r)")
    args = ap.parse_args()

    graphs = list(all_graphs(args.n))
    for value in args.q:
        start = time.perf_counter()
        if args.monomial:
            spec = smallest_field_with_root(value)
            reports = [verify_identity_prop43(g, spec, "monomial", value) for g in graphs]
            label = f"r={value} over {spec}"
        else:
            spec = field_of_order(value)
            reports = [verify_identity_prop43(g, spec) for g in graphs]
            label = f"q={value}"
        bad = [i for i, r in enumerate(reports) if not r.holds]
        secs = time.perf_counter() - start
        print(f"{label}: {len(graphs) - len(bad)}/{len(graphs)} graphs agree ({secs:.1f}s)")
        for i in bad[:5]:
            print(f"  graph {i}: {graphs[i]}")


if __name__ == "__main__":
    main()
