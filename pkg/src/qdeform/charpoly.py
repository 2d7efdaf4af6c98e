"""Characteristic polynomials of central arrangements.

Three independent routes:

* :func:`charpoly_mobius` -- intersection lattice and its Moebius function
  (the main engine);
* :func:`charpoly_subsets` -- the signed sum over all subsets of hyperplanes;
* :func:`complement_count` -- points of GF(q^k)^l on no hyperplane, which
  equals chi(q^k).

The verifiers at the bottom compare chi against the closed forms relating
these arrangements to chromatic polynomials.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .arrangement import (
    Arrangement,
    build_monomial,
    build_qdef_complex,
    build_sgq,
    delete,
    reduce_vector,
    rref_insert,
    restrict,
    span_points,
)
from .combinat import (
    Graph,
    SimplicialComplex,
    chromatic_poly,
    complex_contract,
    complex_delete,
    graph_contract,
    graph_delete,
    underlying_graph,
)
from .gf import FieldSpec, embedding
from .polyalg import IntPoly


class SizeBoundError(ValueError):
    pass


LATTICE_MAX_HYPERPLANES = 250
LATTICE_MAX_DIM = 6


@dataclass
class Flat:
    key: tuple  # RREF rows of the span of the normals, as (pivot, row) pairs
    rank: int
    atoms: int  # bitmask over arrangement indices of hyperplanes containing the flat
    mobius: int = 0
    lower: list[int] = field(default_factory=list)

    def atom_indices(self) -> list[int]:
        out, m, i = [], self.atoms, 0
        while m:
            if m & 1:
                out.append(i)
            m >>= 1
            i += 1
        return out


@dataclass
class IntersectionLattice:
    arrangement: Arrangement
    flats: list[Flat]
    by_key: dict

    @property
    def dim(self) -> int:
        return self.arrangement.dim

    def levels(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, f in enumerate(self.flats):
            out.setdefault(f.rank, []).append(i)
        return out

    def charpoly(self) -> IntPoly:
        coeffs = [0] * (self.dim + 1)
        for f in self.flats:
            coeffs[self.dim - f.rank] += f.mobius
        return IntPoly(coeffs)

    def flat_of(self, indices) -> Flat:
        """The flat spanned by the given hyperplane indices."""
        rows: tuple = ()
        for i in indices:
            new = rref_insert(self.arrangement.spec, rows, self.arrangement.normals[i])
            if new is not None:
                rows = new
        return self.flats[self.by_key[rows]]


def _atoms_of(spec, rows, normals, index_of) -> int:
    """Bitmask of hyperplanes whose normal lies in the span of ``rows``."""
    q, r = spec.q, len(rows)
    atoms = 0
    if (q**r - 1) // (q - 1) <= len(normals):
        for v in span_points(spec, rows):
            j = index_of.get(v)
            if j is not None:
                atoms |= 1 << j
    else:
        for j, v in enumerate(normals):
            if not any(reduce_vector(spec, rows, v)):
                atoms |= 1 << j
    return atoms


def build_lattice(arr: Arrangement, keep_covers: bool = True) -> IntersectionLattice:
    """Rank-by-rank enumeration of flats with Moebius values.

    A flat X of rank r+1 is reached from every lower cover Y as span(Y, H).
    Moebius values use Weisner's identity for geometric lattices: fixing an
    atom a <= X, mu(X) = -sum of mu(Y) over lower covers Y of X with a not <= Y.
    """
    if len(arr) > LATTICE_MAX_HYPERPLANES or arr.dim > LATTICE_MAX_DIM:
        raise SizeBoundError(
            f"lattice bound exceeded: {len(arr)} hyperplanes in dim {arr.dim} "
            f"(limits {LATTICE_MAX_HYPERPLANES}, {LATTICE_MAX_DIM})"
        )
    spec = arr.spec
    index_of = arr.index_of
    normals = arr.normals
    n = len(normals)

    bottom = Flat(key=(), rank=0, atoms=0, mobius=1)
    flats = [bottom]
    by_key: dict = {(): 0}
    level = [0]
    while level:
        acc: dict[int, int] = {}
        next_level: list[int] = []
        for yid in level:
            y = flats[yid]
            covered = y.atoms
            my = y.mobius
            for h in range(n):
                if covered >> h & 1:
                    continue
                rows = rref_insert(spec, y.key, normals[h])
                xid = by_key.get(rows)
                if xid is None:
                    atoms = _atoms_of(spec, rows, normals, index_of)
                    xid = len(flats)
                    flats.append(Flat(key=rows, rank=y.rank + 1, atoms=atoms))
                    by_key[rows] = xid
                    next_level.append(xid)
                    acc[xid] = 0
                x = flats[xid]
                covered |= x.atoms
                if keep_covers:
                    x.lower.append(yid)
                lowest = x.atoms & -x.atoms
                if not (y.atoms & lowest):
                    acc[xid] += my
        for xid in next_level:
            flats[xid].mobius = -acc[xid]
        level = next_level
    return IntersectionLattice(arr, flats, by_key)


def mobius_by_interval(lat: IntersectionLattice) -> list[int]:
    """mu(0, X) = -sum_{Y < X} mu(0, Y) with Y < X tested by atom containment.

    Quadratic in the number of flats; a reference for small lattices.
    """
    order = sorted(range(len(lat.flats)), key=lambda i: lat.flats[i].rank)
    mu = [0] * len(lat.flats)
    for pos, i in enumerate(order):
        x = lat.flats[i]
        if x.rank == 0:
            mu[i] = 1
            continue
        total = 0
        for j in order[:pos]:
            y = lat.flats[j]
            if y.rank < x.rank and y.atoms & x.atoms == y.atoms:
                total += mu[j]
        mu[i] = -total
    return mu


def charpoly_mobius(arr: Arrangement) -> IntPoly:
    return build_lattice(arr, keep_covers=False).charpoly()


class CharpolyCache:
    """charpoly_mobius memoised on the arrangement key; safe to share across threads."""

    def __init__(self):
        self._lock = threading.Lock()
        self._memo: dict = {}
        self.hits = 0

    def __call__(self, arr: Arrangement) -> IntPoly:
        key = arr.key()
        with self._lock:
            hit = self._memo.get(key)
            if hit is not None:
                self.hits += 1
                return hit
        chi = charpoly_mobius(arr)
        with self._lock:
            self._memo[key] = chi
        return chi

    def __len__(self):
        return len(self._memo)


SUBSET_LIMIT = 20


def charpoly_subsets(arr: Arrangement) -> IntPoly:
    """sum over I of (-1)^|I| t^(l - rank I), by depth-first subset enumeration."""
    n = len(arr)
    if n > SUBSET_LIMIT:
        raise SizeBoundError(f"{n} hyperplanes exceeds the subset-enumeration limit {SUBSET_LIMIT}")
    spec, normals, dim = arr.spec, arr.normals, arr.dim
    coeffs = [0] * (dim + 1)

    def walk(start, rows, sign):
        coeffs[dim - len(rows)] += sign
        for h in range(start, n):
            new = rref_insert(spec, rows, normals[h])
            walk(h + 1, rows if new is None else new, -sign)

    walk(0, (), 1)
    return IntPoly(coeffs)


COUNT_LIMIT = 10**8


def complement_count(arr: Arrangement, k: int = 1) -> int:
    """Number of points of GF(q^k)^dim lying on no hyperplane."""
    spec = arr.spec
    target, image = embedding(spec, k)
    Q = target.q
    if Q**arr.dim > COUNT_LIMIT:
        raise SizeBoundError(f"{Q}^{arr.dim} points exceeds {COUNT_LIMIT}")
    if arr.dim == 0:
        return 1
    add = np.asarray(target.add_table, dtype=np.int32)
    mul = np.asarray(target.mul_table, dtype=np.int32)
    forms = [[image[c] for c in v] for v in arr.normals]
    if not forms:
        return Q**arr.dim
    # first coordinate handled in a Python loop, the rest vectorised
    rest = arr.dim - 1
    grids = np.indices((Q,) * rest).reshape(rest, -1) if rest else np.zeros((0, 1), dtype=np.int64)
    partial = []
    for f in forms:
        acc = np.zeros(grids.shape[1], dtype=np.int32)
        for j in range(rest):
            acc = add[acc, mul[f[j + 1], grids[j]]]
        partial.append(acc)
    total = 0
    for x0 in range(Q):
        alive = np.ones(grids.shape[1], dtype=bool)
        for f, acc in zip(forms, partial):
            alive &= add[acc, mul[f[0], x0]] != 0
        total += int(alive.sum())
    return total


# ---------------------------------------------------------------------------
# verifiers


@dataclass
class Report:
    name: str
    holds: bool
    values: dict

    def line(self) -> str:
        return f"{'PASS' if self.holds else 'FAIL'} {self.name}"


def deletion_restriction_holds(arr: Arrangement, h) -> bool:
    return charpoly_mobius(arr) == charpoly_mobius(delete(arr, h)) - charpoly_mobius(restrict(arr, h))


def verify_q_delcon(cx: SimplicialComplex, e, spec: FieldSpec, chi=charpoly_mobius) -> Report:
    """chi(S_D) = chi(S_{D without e}) - (q-1) chi(S_{D/e}) for a maximal edge e.

    ``chi`` computes characteristic polynomials; corpus sweeps pass a cached one.
    """
    if not cx.is_maximal(e):
        raise ValueError(f"edge {tuple(e)} is not a maximal face")
    whole = chi(build_qdef_complex(cx, spec))
    deleted = chi(build_qdef_complex(complex_delete(cx, e), spec))
    contracted = chi(build_qdef_complex(complex_contract(cx, e), spec))
    rhs = deleted - contracted * (spec.q - 1)
    return Report(
        f"q-deletion-contraction e={tuple(e)} q={spec.q}",
        whole == rhs,
        {"chi": whole, "chi_deleted": deleted, "chi_contracted": contracted},
    )


def verify_q_delcon_monomial(g: Graph, e, r: int, spec: FieldSpec, chi=charpoly_mobius) -> Report:
    """chi(M(G,r)) = chi(M(G-e,r)) - r chi(M(G/e,r))."""
    whole = chi(build_monomial(g, r, spec))
    deleted = chi(build_monomial(graph_delete(g, e), r, spec))
    contracted = chi(build_monomial(graph_contract(g, e), r, spec))
    rhs = deleted - contracted * r
    return Report(
        f"monomial deletion-contraction e={tuple(e)} r={r}",
        whole == rhs,
        {"chi": whole, "chi_deleted": deleted, "chi_contracted": contracted},
    )


def verify_identity_prop43(g: Graph, spec: FieldSpec, mode: str = "sgq", r: int | None = None) -> Report:
    """chi(S_G^q) = (q-1)^l chi(G, (t-1)/(q-1)), or the M(G, r) analogue with r."""
    if mode == "sgq":
        arr = build_sgq(g, spec)
        d = spec.q - 1
    elif mode == "monomial":
        if r is None:
            raise ValueError("monomial mode needs r")
        arr = build_monomial(g, r, spec)
        d = r
    else:
        raise ValueError(f"unknown mode {mode!r}")
    lhs = charpoly_mobius(arr)
    rhs = chromatic_poly(g).compose_affine(1, d)
    return Report(f"{mode} identity l={g.n} d={d}", lhs == rhs, {"chi": lhs, "formula": rhs})


def verify_congruence(cx: SimplicialComplex, spec: FieldSpec, k: int) -> Report:
    """chi(S_D^q, q^k)/(q-1)^l = chi(G, k) mod (q-1)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    q, l = spec.q, cx.n
    chi = charpoly_mobius(build_qdef_complex(cx, spec))
    value = chi(q**k)
    denom = (q - 1) ** l
    divisible = value % denom == 0
    quotient = value // denom if divisible else None
    chrom = chromatic_poly(underlying_graph(cx))(k)
    m = q - 1
    congruent = divisible and (quotient - chrom) % m == 0
    return Report(
        f"congruence q={q} k={k}",
        bool(congruent),
        {
            "chi": chi,
            "value": value,
            "divisible": divisible,
            "quotient": quotient,
            "chromatic": chrom,
            "modulus": m,
        },
    )


def skeleton_charpoly_formula(l: int, q: int) -> IntPoly:
    """(t-1)(t-q)...(t-q^(l-2)) (t - q^(l-1) + (q-1)^(l-1))."""
    if l < 2:
        raise ValueError("need l >= 2")
    t = IntPoly.t()
    out = IntPoly.const(1)
    for i in range(l - 1):
        out = out * (t - q**i)
    return out * (t - q ** (l - 1) + (q - 1) ** (l - 1))


def delta53_formula(q: int) -> IntPoly:
    """Parametric quintic for the 2-skeleton of the 4-simplex."""
    t = IntPoly.t()
    quad = t * t - (9 * q * q - 11 * q + 4) * t + (21 * q**4 - 54 * q**3 + 57 * q**2 - 29 * q + 6)
    return (t - 1) * (t - q) * (t - q * q) * quad
