"""Exponents of the explicit free bases for every chordal graph up to n vertices.

For each isomorphism class of chordal graph the script builds the graphic,
q-deformation and monomial bases, certifies them with Saito's criterion, and
prints the exponent multisets; non-chordal classes are counted separately.

    python scripts/freeness_survey.py --n 5 --q 2 3 --r 2 3
"""

import argparse

from qdeform.arrangement import build_graphic, build_monomial, build_qdef_graph
from qdeform.combinat import graphs_up_to_iso, mcs_peo
from qdeform.freeness import basis_graphic, basis_monomial, basis_qdef, saito_certify
from qdeform.gf import field_make, field_of_order, smallest_field_with_root


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--r", type=int, nargs="+", default=[2])
    args = ap.parse_args()

    graphic_field = field_make(7)
    for n in range(1, args.n + 1):
        classes = graphs_up_to_iso(n)
        chordal = [g for g in classes if mcs_peo(g) is not None]
        print(f"n={n}: {len(chordal)} chordal of {len(classes)} classes")
        for g in chordal:
            peo = mcs_peo(g)
            row = [f"  edges={sorted(g.edges)}"]
            res = saito_certify(basis_graphic(g, peo, graphic_field), build_graphic(g, graphic_field))
            row.append(f"graphic {res.exponents}")
            for q in args.q:
                spec = field_of_order(q)
                res = saito_certify(basis_qdef(g, peo, spec), build_qdef_graph(g, spec))
                row.append(f"q={q} {res.exponents}")
            for r in args.r:
                spec = smallest_field_with_root(r)
                res = saito_certify(basis_monomial(g, peo, r, spec), build_monomial(g, r, spec))
                row.append(f"r={r} {res.exponents}")
            print("  ".join(row))


if __name__ == "__main__":
    main()
