"""Central hyperplane arrangements over GF(q).

A hyperplane is identified with its normal vector, normalised so that the
first nonzero coordinate is 1.  Normals are tuples of field-element indices
(see :mod:`qdeform.gf`); arrangements keep them sorted and deduplicated.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property

from .combinat import Graph, SimplicialComplex, clique_complex, mask_vertices
from .gf import FieldElement, FieldError, FieldSpec, field_make, primitive_root, units
from .polyalg import MPoly

Vector = tuple[int, ...]


# ---------------------------------------------------------------------------
# linear algebra on index vectors


def normalize(spec: FieldSpec, v) -> Vector:
    """Scale v so its first nonzero coordinate is 1."""
    v = tuple(v)
    lead = next((c for c in v if c), 0)
    if not lead:
        raise ValueError("zero normal vector")
    if lead == 1:
        return v
    row = spec.mul_table[spec.inv_table[lead]]
    return tuple(row[c] for c in v)


def reduce_vector(spec: FieldSpec, rows, v) -> list[int]:
    """Reduce v against RREF rows given as (pivot, row) pairs."""
    v = list(v)
    sub, mul = spec.sub_table, spec.mul_table
    for pc, row in rows:
        c = v[pc]
        if c:
            mc = mul[c]
            v = [sub[a][mc[b]] for a, b in zip(v, row)]
    return v


def rref_insert(spec: FieldSpec, rows, v):
    """RREF rows of span(rows + v), or None if v already lies in the span."""
    w = reduce_vector(spec, rows, v)
    pv = next((i for i, c in enumerate(w) if c), None)
    if pv is None:
        return None
    mul, sub = spec.mul_table, spec.sub_table
    inv = mul[spec.inv_table[w[pv]]]
    w = tuple(inv[c] for c in w)
    out = []
    for pc, row in rows:
        c = row[pv]
        if c:
            mc = mul[c]
            row = tuple(sub[a][mc[b]] for a, b in zip(row, w))
        out.append((pc, row))
    out.append((pv, w))
    out.sort()
    return tuple(out)


def rank_of(spec: FieldSpec, vectors) -> int:
    rows: tuple = ()
    for v in vectors:
        new = rref_insert(spec, rows, v)
        if new is not None:
            rows = new
    return len(rows)


def span_points(spec: FieldSpec, rows) -> list[Vector]:
    """All normalised nonzero vectors of the span of RREF rows."""
    add, mul = spec.add_table, spec.mul_table
    vecs = [r for _, r in rows]
    out = []
    q = spec.q
    for s, lead in enumerate(vecs):
        tail = vecs[s + 1 :]
        for cs in itertools.product(range(q), repeat=len(tail)):
            v = lead
            for c, r in zip(cs, tail):
                if c:
                    mc = mul[c]
                    v = tuple(add[a][mc[b]] for a, b in zip(v, r))
            out.append(v)
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hyperplane:
    spec: FieldSpec
    normal: Vector

    @classmethod
    def from_elements(cls, elems) -> "Hyperplane":
        elems = list(elems)
        spec = elems[0].spec
        return cls(spec, normalize(spec, [spec(x).index for x in elems]))

    @property
    def dim(self) -> int:
        return len(self.normal)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self.spec, self.spec.coeffs(c)) for c in self.normal]

    def form(self) -> MPoly:
        return MPoly.linear(self.spec, self.normal)

    def support(self) -> list[int]:
        """1-based coordinates with a nonzero coefficient."""
        return [i + 1 for i, c in enumerate(self.normal) if c]


@dataclass(frozen=True)
class Arrangement:
    spec: FieldSpec
    dim: int
    normals: tuple[Vector, ...]

    @classmethod
    def from_normals(cls, spec: FieldSpec, dim: int, normals) -> "Arrangement":
        out = set()
        for v in normals:
            v = tuple(v)
            if len(v) != dim:
                raise ValueError(f"normal {v} does not have length {dim}")
            out.add(normalize(spec, v))
        return cls(spec, dim, tuple(sorted(out)))

    def __len__(self):
        return len(self.normals)

    @property
    def hyperplanes(self) -> list[Hyperplane]:
        return [Hyperplane(self.spec, v) for v in self.normals]

    @cached_property
    def index_of(self) -> dict[Vector, int]:
        return {v: i for i, v in enumerate(self.normals)}

    def __contains__(self, h) -> bool:
        v = h.normal if isinstance(h, Hyperplane) else normalize(self.spec, h)
        return v in self.index_of

    def rank(self) -> int:
        return rank_of(self.spec, self.normals)

    def same_set(self, other: "Arrangement") -> bool:
        return self.spec == other.spec and self.dim == other.dim and self.normals == other.normals

    def sub(self, indices) -> "Arrangement":
        return Arrangement(self.spec, self.dim, tuple(sorted(self.normals[i] for i in indices)))

    def key(self) -> tuple:
        return (self.spec, self.dim, self.normals)

    def __repr__(self):
        return f"Arrangement({self.spec}, dim={self.dim}, n={len(self.normals)})"

    # -- serialisation

    def to_json(self) -> dict:
        return {
            "p": self.spec.p,
            "e": self.spec.e,
            "dim": self.dim,
            "normals": [[list(self.spec.coeffs(c)) for c in v] for v in self.normals],
        }

    @classmethod
    def from_json(cls, data) -> "Arrangement":
        if isinstance(data, str):
            data = json.loads(data)
        spec = field_make(int(data["p"]), int(data["e"]))
        dim = int(data["dim"])
        normals = []
        for v in data["normals"]:
            normals.append([spec.index(c) if isinstance(c, list) else spec(int(c)).index for c in v])
        return cls.from_normals(spec, dim, normals)


def _unit_vector(dim: int, i: int) -> list[int]:
    v = [0] * dim
    v[i - 1] = 1
    return v


def boolean_arrangement(dim: int, spec: FieldSpec) -> Arrangement:
    return Arrangement.from_normals(spec, dim, [_unit_vector(dim, i) for i in range(1, dim + 1)])


def empty_arrangement(dim: int, spec: FieldSpec) -> Arrangement:
    return Arrangement(spec, dim, ())


def build_graphic(g: Graph, spec: FieldSpec) -> Arrangement:
    """ker(x_i - x_j) for every edge."""
    minus_one = spec.neg_table[1]
    normals = []
    for i, j in g.edges:
        v = [0] * g.n
        v[i - 1] = 1
        v[j - 1] = minus_one
        normals.append(v)
    return Arrangement.from_normals(spec, g.n, normals)


def build_qdef_complex(c: SimplicialComplex, spec: FieldSpec) -> Arrangement:
    """Every unit-coefficient form supported on a face of c."""
    unit_idx = [u.index for u in units(spec)]
    normals = []
    for f in c.faces:
        verts = mask_vertices(f)
        # leading coefficient fixed to 1 gives one representative per projective class
        for tail in itertools.product(unit_idx, repeat=len(verts) - 1):
            v = [0] * c.n
            v[verts[0] - 1] = 1
            for w, a in zip(verts[1:], tail):
                v[w - 1] = a
            normals.append(v)
    return Arrangement.from_normals(spec, c.n, normals)


def build_qdef_graph(g: Graph, spec: FieldSpec) -> Arrangement:
    return build_qdef_complex(clique_complex(g), spec)


def build_sgq(g: Graph, spec: FieldSpec) -> Arrangement:
    """Coordinate hyperplanes plus ker(x_i - a x_j), a a unit, for every edge."""
    normals = [_unit_vector(g.n, i) for i in range(1, g.n + 1)]
    for i, j in g.edges:
        for a in units(spec):
            v = [0] * g.n
            v[i - 1] = 1
            v[j - 1] = (-a).index
            normals.append(v)
    return Arrangement.from_normals(spec, g.n, normals)


def build_monomial(g: Graph, r: int, spec: FieldSpec, simplified: bool = False) -> Arrangement:
    """ker(x_i - z^k x_j), z a primitive r-th root of unity, plus coordinates unless simplified."""
    z = primitive_root(spec, r)
    normals = [] if simplified else [_unit_vector(g.n, i) for i in range(1, g.n + 1)]
    for i, j in g.edges:
        for k in range(1, r + 1):
            v = [0] * g.n
            v[i - 1] = 1
            v[j - 1] = (-(z**k)).index
            normals.append(v)
    return Arrangement.from_normals(spec, g.n, normals)


FULL_LIMIT = (5, 5)


def full_arrangement(dim: int, spec: FieldSpec) -> Arrangement:
    """All (q^dim - 1)/(q - 1) hyperplanes of GF(q)^dim."""
    if dim > FULL_LIMIT[0] or spec.q > FULL_LIMIT[1]:
        raise ValueError(f"full arrangement limited to dim <= {FULL_LIMIT[0]}, q <= {FULL_LIMIT[1]}")
    normals = [v for v in itertools.product(range(spec.q), repeat=dim) if any(v)]
    return Arrangement.from_normals(spec, dim, normals)


def _locate(arr: Arrangement, h) -> Vector:
    v = h.normal if isinstance(h, Hyperplane) else (arr.normals[h] if isinstance(h, int) else normalize(arr.spec, h))
    if v not in arr.index_of:
        raise ValueError(f"hyperplane {v} is not in the arrangement")
    return v


def delete(arr: Arrangement, h) -> Arrangement:
    """Remove h (a Hyperplane, a normal, or an index into arr.normals)."""
    v = _locate(arr, h)
    return Arrangement(arr.spec, arr.dim, tuple(w for w in arr.normals if w != v))


def restrict(arr: Arrangement, h) -> Arrangement:
    """The arrangement induced on h, in the free coordinates of h's normal.

    With h = ker(x_p + sum n_j x_j) (p the pivot), points of h are
    parametrised by x_j, j != p; a form m restricts to m_j - m_p n_j.
    """
    v = _locate(arr, h)
    spec = arr.spec
    sub, mul = spec.sub_table, spec.mul_table
    p = next(i for i, c in enumerate(v) if c)
    free = [j for j in range(arr.dim) if j != p]
    normals = []
    for w in arr.normals:
        if w == v:
            continue
        row = mul[w[p]]
        u = [sub[w[j]][row[v[j]]] for j in free]
        if any(u):
            normals.append(u)
    return Arrangement.from_normals(spec, arr.dim - 1, normals)


def defining_poly(arr: Arrangement) -> MPoly:
    out = MPoly.const(arr.spec, arr.dim, 1)
    for v in arr.normals:
        out = out * MPoly.linear(arr.spec, v)
    return out


def check_same_field(*arrs: Arrangement):
    specs = {a.spec for a in arrs}
    if len(specs) > 1:
        raise FieldError(f"arrangements over different fields: {specs}")
