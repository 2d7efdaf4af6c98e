"""Graphs, simplicial complexes, perfect elimination orderings, chromatic polynomials.

Vertices are labelled 1..n throughout.  Faces of a complex are bitmasks
(bit i-1 set for vertex i).
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from functools import cached_property

from .polyalg import IntPoly


class NotChordal(Exception):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise ValueError(f"bad edge {(u, v)} for a graph on {self.n} vertices")

    @classmethod
    def make(cls, n: int, edges) -> "Graph":
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            es.add((min(u, v), max(u, v)))
        return cls(n, frozenset(es))

    @cached_property
    def adj(self) -> dict[int, frozenset[int]]:
        nb: dict[int, set[int]] = {v: set() for v in range(1, self.n + 1)}
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return {v: frozenset(s) for v, s in nb.items()}

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced(self, verts) -> "Graph":
        """Induced subgraph on ``verts``, keeping the ambient labels 1..n."""
        vs = set(verts)
        return Graph(self.n, frozenset(e for e in self.edges if e[0] in vs and e[1] in vs))

    def is_triangle_free(self) -> bool:
        adj = self.adj
        return not any(adj[u] & adj[v] for u, v in self.edges)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


def complete_graph(n: int) -> Graph:
    return Graph.make(n, itertools.combinations(range(1, n + 1), 2))


def path_graph(n: int) -> Graph:
    return Graph.make(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.make(n, [(i, i + 1) for i in range(1, n)] + [(n, 1)])


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def petersen_graph() -> Graph:
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    inner = [(i + 5, (i + 1) % 5 + 6) for i in range(5)]
    return Graph.make(10, outer + spokes + inner)


def all_graphs(n: int):
    """Every labelled simple graph on [n], in edge-subset order."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, frozenset(p for k, p in enumerate(pairs) if mask >> k & 1))


def canonical_form(g: Graph) -> tuple:
    """Lexicographically least relabelled edge list (brute force, n <= 7)."""
    best = None
    for perm in itertools.permutations(range(1, g.n + 1)):
        relabel = dict(zip(range(1, g.n + 1), perm))
        es = tuple(sorted((min(relabel[u], relabel[v]), max(relabel[u], relabel[v])) for u, v in g.edges))
        if best is None or es < best:
            best = es
    return (g.n, best)


def graphs_up_to_iso(n: int) -> list[Graph]:
    seen = {}
    for g in all_graphs(n):
        key = canonical_form(g)
        if key not in seen:
            seen[key] = Graph.make(n, key[1])
    return list(seen.values())


def graph_delete(g: Graph, e) -> Graph:
    e = (min(e), max(e))
    if e not in g.edges:
        raise ValueError(f"{e} is not an edge")
    return Graph(g.n, g.edges - {e})


def _merge_label(v: int, keep: int, drop: int) -> int:
    if v == drop:
        v = keep
    return v - 1 if v > drop else v


def graph_contract(g: Graph, e) -> Graph:
    """Identify the endpoints of e (keeping the smaller label), relabel to [n-1]."""
    a, b = min(e), max(e)
    if (a, b) not in g.edges:
        raise ValueError(f"{(a, b)} is not an edge")
    es = set()
    for u, v in g.edges:
        u2, v2 = _merge_label(u, a, b), _merge_label(v, a, b)
        if u2 != v2:
            es.add((min(u2, v2), max(u2, v2)))
    return Graph(g.n - 1, frozenset(es))


# ---------------------------------------------------------------------------
# simplicial complexes


def _mask(face) -> int:
    m = 0
    for v in face:
        m |= 1 << (v - 1)
    return m


def mask_vertices(m: int) -> list[int]:
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def _subsets(m: int):
    sub = m
    while sub:
        yield sub
        sub = (sub - 1) & m


@dataclass(frozen=True)
class SimplicialComplex:
    n: int
    faces: frozenset[int]

    def sorted_faces(self) -> list[tuple[int, ...]]:
        return sorted((tuple(mask_vertices(f)) for f in self.faces), key=lambda f: (len(f), f))

    def has_face(self, face) -> bool:
        return _mask(face) in self.faces

    def is_maximal(self, face) -> bool:
        m = _mask(face)
        return m in self.faces and not any(f != m and f & m == m for f in self.faces)

    def facets(self) -> list[tuple[int, ...]]:
        return [f for f in self.sorted_faces() if self.is_maximal(f)]

    def dimension(self) -> int:
        return max((bin(f).count("1") for f in self.faces), default=0) - 1

    def __repr__(self):
        return f"SimplicialComplex(n={self.n}, facets={self.facets()})"


def complex_from_facets(n: int, facets) -> SimplicialComplex:
    """Downward closure of ``facets`` together with every singleton."""
    faces = {1 << i for i in range(n)}
    for f in facets:
        f = list(f)
        if any(not (1 <= v <= n) for v in f):
            raise ValueError(f"facet {f} mentions a vertex outside [1, {n}]")
        if f:
            faces.update(_subsets(_mask(f)))
    return SimplicialComplex(n, frozenset(faces))


def skeleton_complex(l: int, k: int) -> SimplicialComplex:
    """(k-1)-skeleton of the (l-1)-simplex: all nonempty subsets of size <= k."""
    if not (1 <= k <= l):
        raise ValueError(f"need 1 <= k <= l, got k={k}, l={l}")
    return complex_from_facets(l, itertools.combinations(range(1, l + 1), k))


def clique_complex(g: Graph) -> SimplicialComplex:
    faces = set()
    adj = g.adj

    def grow(clique_mask, candidates):
        faces.add(clique_mask)
        for v in sorted(candidates):
            grow(clique_mask | 1 << (v - 1), {u for u in candidates if u > v and u in adj[v]})

    for v in range(1, g.n + 1):
        grow(1 << (v - 1), {u for u in adj[v] if u > v})
    return SimplicialComplex(g.n, frozenset(faces))


def graph_complex(g: Graph) -> SimplicialComplex:
    """The graph viewed as a 1-dimensional complex."""
    return complex_from_facets(g.n, g.edges)


def underlying_graph(c: SimplicialComplex) -> Graph:
    return Graph(c.n, frozenset(tuple(mask_vertices(f)) for f in c.faces if bin(f).count("1") == 2))


def complex_delete(c: SimplicialComplex, e) -> SimplicialComplex:
    m = _mask(e)
    if not c.is_maximal(e):
        raise ValueError(f"{tuple(e)} is not a maximal face")
    return SimplicialComplex(c.n, c.faces - {m})


def complex_contract(c: SimplicialComplex, e) -> SimplicialComplex:
    """Identify the two vertices of a maximal edge e in every face."""
    a, b = min(e), max(e)
    m = _mask((a, b))
    if m not in c.faces:
        raise ValueError(f"{(a, b)} is not a face")
    if not c.is_maximal((a, b)):
        raise ValueError(f"edge {(a, b)} lies in a larger face")
    images = []
    for f in c.faces:
        images.append({_merge_label(v, a, b) for v in mask_vertices(f)})
    return complex_from_facets(c.n - 1, images)


def random_complex(rng, n_max: int = 5, max_face: int = 3) -> SimplicialComplex:
    """Random downward-closed complex on <= n_max vertices with faces of size <= max_face."""
    n = rng.randint(1, n_max)
    candidates = [
        f for k in range(2, max_face + 1) for f in itertools.combinations(range(1, n + 1), k)
    ]
    picked = [f for f in candidates if rng.random() < 0.4]
    return complex_from_facets(n, picked)


# ---------------------------------------------------------------------------
# chordality


@dataclass(frozen=True)
class Peo:
    order: tuple[int, ...]

    def position(self) -> dict[int, int]:
        """Vertex label -> 1-based position in the ordering."""
        return {v: i for i, v in enumerate(self.order, 1)}


def is_peo(g: Graph, order) -> bool:
    order = tuple(order)
    if sorted(order) != list(range(1, g.n + 1)):
        return False
    seen: set[int] = set()
    for v in order:
        earlier = [u for u in g.adj[v] if u in seen]
        for a, b in itertools.combinations(earlier, 2):
            if not g.has_edge(a, b):
                return False
        seen.add(v)
    return True


def mcs_order(g: Graph) -> tuple[int, ...]:
    """Maximum cardinality search, ties to the smallest label.

    The visiting order is itself a candidate elimination ordering read from
    first to last (earlier neighbours of each vertex must form a clique).
    """
    weight = {v: 0 for v in range(1, g.n + 1)}
    order = []
    while weight:
        v = min(weight, key=lambda u: (-weight[u], u))
        order.append(v)
        del weight[v]
        for u in g.adj[v]:
            if u in weight:
                weight[u] += 1
    return tuple(order)


def mcs_peo(g: Graph) -> Peo | None:
    """A verified perfect elimination ordering, or None when g is not chordal."""
    order = mcs_order(g)
    return Peo(order) if is_peo(g, order) else None


def is_chordal(g: Graph) -> bool:
    return mcs_peo(g) is not None


def is_chordal_brute(g: Graph) -> bool:
    return any(is_peo(g, p) for p in itertools.permutations(range(1, g.n + 1)))


def _require_peo(g: Graph, peo: Peo):
    if not is_peo(g, peo.order):
        raise NotChordal(f"{peo.order} is not a perfect elimination ordering of {g}")


def lower_neighbors(g: Graph, peo: Peo, k: int) -> list[int]:
    """E_{<k}: positions j < k whose vertex is adjacent to v_k."""
    _require_peo(g, peo)
    order = peo.order
    vk = order[k - 1]
    return [j for j in range(1, k) if g.has_edge(order[j - 1], vk)]


def ascending_set(g: Graph, peo: Peo, k: int) -> list[int]:
    """C_{>=k}: k and every position reachable from v_k by an index-increasing path."""
    _require_peo(g, peo)
    order = peo.order
    pos = peo.position()
    reach = {k}
    # positions processed in increasing order: an ascending path to i passes only through smaller ones
    for i in range(k + 1, g.n + 1):
        if any(pos[u] in reach and pos[u] < i for u in g.adj[order[i - 1]]):
            reach.add(i)
    return sorted(reach)


def chordal_charpoly_graphic(g: Graph, peo: Peo) -> IntPoly:
    _require_peo(g, peo)
    t = IntPoly.t()
    out = IntPoly.const(1)
    for k in range(1, g.n + 1):
        out = out * (t - len(lower_neighbors(g, peo, k)))
    return out


def chordal_charpoly_qdef(g: Graph, peo: Peo, q: int) -> IntPoly:
    _require_peo(g, peo)
    t = IntPoly.t()
    out = IntPoly.const(1)
    for k in range(1, g.n + 1):
        out = out * (t - q ** len(lower_neighbors(g, peo, k)))
    return out


# ---------------------------------------------------------------------------
# chromatic polynomials

_chrom_lock = threading.Lock()
_chrom_memo: dict[tuple[int, frozenset], IntPoly] = {}


def chromatic_poly(g: Graph) -> IntPoly:
    """Deletion-contraction, memoised on the labelled edge set."""
    key = (g.n, g.edges)
    with _chrom_lock:
        hit = _chrom_memo.get(key)
    if hit is not None:
        return hit
    if not g.edges:
        out = IntPoly((0,) * g.n + (1,))
    else:
        e = max(g.edges)
        out = chromatic_poly(graph_delete(g, e)) - chromatic_poly(graph_contract(g, e))
    with _chrom_lock:
        _chrom_memo[key] = out
    return out


BRUTE_LIMIT = 10**7


def chromatic_brute(g: Graph, k: int) -> int:
    """Count proper k-colourings by backtracking over vertices 1..n."""
    if k < 0:
        raise ValueError("negative number of colours")
    if k ** g.n > BRUTE_LIMIT:
        raise ValueError(f"{k}^{g.n} colourings exceeds the enumeration limit")
    if g.n == 0:
        return 1
    earlier = [[u for u in g.adj[v] if u < v] for v in range(1, g.n + 1)]
    colour = [0] * (g.n + 1)

    def count(v):
        if v > g.n:
            return 1
        total = 0
        for c in range(k):
            if all(colour[u] != c for u in earlier[v - 1]):
                colour[v] = c
                total += count(v + 1)
        return total

    return count(1)
