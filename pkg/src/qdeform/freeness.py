"""Free bases of derivations, Saito's criterion, inductive freeness, supersolvability.

Variables are 0-based coordinates: vertex v of a graph is the variable
x_{v} stored at index v-1.  Bases for chordal graphs are built along a
perfect elimination ordering (v_1, ..., v_l); the sets C_{>=k} and E_{<k}
are positions in that ordering.
"""

from __future__ import annotations

import itertools
import threading
from collections import Counter
from dataclasses import dataclass, field

from .arrangement import Arrangement, defining_poly, delete, rank_of, restrict, rref_insert
from .charpoly import SizeBoundError, charpoly_mobius
from .combinat import Graph, NotChordal, Peo, ascending_set, is_peo, lower_neighbors
from .gf import FieldError, FieldSpec, primitive_root
from .polyalg import (
    IntPoly,
    MPoly,
    divisible_by_linear,
    equal_up_to_scalar,
    mpoly_det,
)

Exponents = tuple[int, ...]


class IdentityError(AssertionError):
    """A determinant or quotient identity failed in the chosen field."""


# ---------------------------------------------------------------------------
# factored polynomials


@dataclass
class Factored:
    """Product of polynomial factors, kept unexpanded."""

    factors: list[MPoly]

    def expand(self) -> MPoly:
        f0 = self.factors[0]
        out = MPoly.const(f0.spec, f0.nvars, 1)
        for f in self.factors:
            out = out * f
        return out

    def degree(self) -> int:
        return sum(f.degree() for f in self.factors)

    def is_zero(self) -> bool:
        return any(f.is_zero() for f in self.factors)

    def divisible_by_linear(self, alpha: MPoly) -> bool:
        # alpha is prime, so it divides the product iff it divides a factor
        return any(divisible_by_linear(f, alpha) for f in self.factors)


# ---------------------------------------------------------------------------
# determinant identities


def _var(spec, nvars, i, power=1):
    return MPoly.var(spec, nvars, i, power)


def _det_of(rows) -> MPoly:
    return mpoly_det(rows)


def vandermonde(vars_, spec: FieldSpec, nvars: int) -> MPoly:
    """det[x_i^j] and prod_{i<j} (x_j - x_i), checked equal."""
    vars_ = list(vars_)
    if not vars_:
        return MPoly.const(spec, nvars, 1)
    det = _det_of([[_var(spec, nvars, v, j) for j in range(len(vars_))] for v in vars_])
    prod = vandermonde_product(vars_, spec, nvars)
    if det != prod:
        raise IdentityError(f"Vandermonde identity failed for {vars_} over {spec}")
    return det


def vandermonde_product(vars_, spec, nvars) -> MPoly:
    out = MPoly.const(spec, nvars, 1)
    for a, b in itertools.combinations(vars_, 2):
        out = out * (_var(spec, nvars, b) - _var(spec, nvars, a))
    return out


def moore_product_factors(vars_, spec: FieldSpec, nvars: int) -> list[MPoly]:
    """Linear factors c_1 x_1 + ... + c_{i-1} x_{i-1} + x_i of the Moore determinant."""
    out = []
    for i, v in enumerate(vars_):
        for cs in itertools.product(range(spec.q), repeat=i):
            coeffs = [0] * nvars
            for c, w in zip(cs, vars_[:i]):
                coeffs[w] = c
            coeffs[v] = 1
            out.append(MPoly.linear(spec, coeffs))
    return out


def moore(vars_, spec: FieldSpec, nvars: int, check_product: bool = True) -> MPoly:
    """det[x_i^(q^j)] over GF(q), optionally checked against the product of linear forms."""
    vars_ = list(vars_)
    q = spec.q
    if not vars_:
        return MPoly.const(spec, nvars, 1)
    det = _det_of([[_var(spec, nvars, v, q**j) for j in range(len(vars_))] for v in vars_])
    if check_product:
        prod = Factored(moore_product_factors(vars_, spec, nvars)).expand()
        if det != prod:
            raise IdentityError(f"Moore identity failed for {vars_} over {spec}")
    return det


def delta_r1(vars_, r: int, spec: FieldSpec, nvars: int) -> MPoly:
    """det[x_i^(j r + 1)] and prod x_i prod_{i<j} (x_j^r - x_i^r), checked equal."""
    vars_ = list(vars_)
    if not vars_:
        return MPoly.const(spec, nvars, 1)
    det = _det_of([[_var(spec, nvars, v, j * r + 1) for j in range(len(vars_))] for v in vars_])
    prod = MPoly.const(spec, nvars, 1)
    for v in vars_:
        prod = prod * _var(spec, nvars, v)
    for a, b in itertools.combinations(vars_, 2):
        prod = prod * (_var(spec, nvars, b, r) - _var(spec, nvars, a, r))
    if det != prod:
        raise IdentityError(f"Delta_1^({r}) identity failed for {vars_} over {spec}")
    return det


# ---------------------------------------------------------------------------
# derivations


@dataclass
class Derivation:
    """theta = sum_i comps[i] d/dx_i, with optional unexpanded forms of the components."""

    comps: list[MPoly]
    factored: list[Factored | None] = field(default_factory=list)

    def __post_init__(self):
        if not self.comps:
            raise ValueError("derivation needs at least one component")
        s = {(c.spec, c.nvars) for c in self.comps}
        if len(s) != 1 or self.comps[0].nvars != len(self.comps):
            raise ValueError("components must share one ring with l variables")
        if not self.factored:
            self.factored = [None] * len(self.comps)

    @property
    def spec(self) -> FieldSpec:
        return self.comps[0].spec

    @property
    def nvars(self) -> int:
        return len(self.comps)

    def degree(self) -> int:
        """Common degree of the nonzero components (raises if inhomogeneous)."""
        degs = set()
        for c in self.comps:
            if c.is_zero():
                continue
            if not c.is_homogeneous():
                raise ValueError("inhomogeneous component")
            degs.add(c.degree())
        if len(degs) != 1:
            raise ValueError(f"derivation is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        try:
            self.degree()
        except ValueError:
            return False
        return True

    def apply_linear(self, coeffs) -> MPoly:
        """theta(alpha) for alpha = sum coeffs[i] x_i, coeffs as field indices."""
        spec = self.spec
        out = MPoly.zero(spec, self.nvars)
        for c, comp in zip(coeffs, self.comps):
            if c and not comp.is_zero():
                out = out + comp.scale(c)
        return out

    def kills_mod(self, alpha: MPoly) -> bool:
        """alpha | theta(alpha)."""
        coeffs = alpha.linear_coeffs()
        live = [i for i, c in enumerate(coeffs) if c and not self.comps[i].is_zero()]
        if not live:
            return True
        if len(live) == 1 and self.factored[live[0]] is not None:
            return self.factored[live[0]].divisible_by_linear(alpha)
        return divisible_by_linear(self.apply_linear(coeffs), alpha)


def euler_derivation(spec: FieldSpec, nvars: int) -> Derivation:
    comps = [_var(spec, nvars, i) for i in range(nvars)]
    return Derivation(comps, [Factored([c]) for c in comps])


def _basis_skeleton(g: Graph, peo: Peo, quotient):
    """theta_k = sum_{i in C>=k} quotient(E<k, x_{v_i}) d/dx_{v_i}, for any quotient rule."""
    if not is_peo(g, peo.order):
        raise NotChordal(f"{peo.order} is not a perfect elimination ordering")
    order = peo.order
    out = []
    for k in range(1, g.n + 1):
        lower = [order[j - 1] - 1 for j in lower_neighbors(g, peo, k)]
        comps: list[MPoly | None] = [None] * g.n
        facs: list[Factored | None] = [None] * g.n
        for i in ascending_set(g, peo, k):
            var = order[i - 1] - 1
            expanded, factored = quotient(lower, var)
            comps[var] = expanded
            facs[var] = factored
        out.append((comps, facs))
    return out


def _finish(spec, nvars, raw) -> list[Derivation]:
    result = []
    for comps, facs in raw:
        full = [c if c is not None else MPoly.zero(spec, nvars) for c in comps]
        result.append(Derivation(full, facs))
    return result


def basis_graphic(g: Graph, peo: Peo, spec: FieldSpec) -> list[Derivation]:
    """Vandermonde-quotient basis of D(A_G) for chordal G."""
    if spec.p <= g.n:
        raise FieldError(f"graphic bases are built over characteristic > l; got {spec} for l={g.n}")
    n = g.n

    def quotient(lower, var):
        factors = [_var(spec, n, var) - _var(spec, n, m) for m in lower]
        prod = Factored(factors).expand() if factors else MPoly.const(spec, n, 1)
        if prod * vandermonde(lower, spec, n) != vandermonde(lower + [var], spec, n):
            raise IdentityError("Vandermonde quotient mismatch")
        return prod, (Factored(factors) if factors else None)

    return _finish(spec, n, _basis_skeleton(g, peo, quotient))


QUOTIENT_CHECK_DEGREE = 30


def subspace_polynomial(lower, var, spec: FieldSpec, nvars: int) -> MPoly:
    """prod over w in span_Fq{x_m : m in lower} of (x_var + w).

    Built additively: with P the polynomial for span W, adding u gives
    P(y)^q - P(u)^(q-1) P(y), since P is F_q-linear in y.
    """
    q = spec.q
    P = _var(spec, nvars, var)
    for u in lower:
        Pu = _rename(P, var, u)
        P = P.frobenius(q) - (Pu ** (q - 1)) * P
    return P


def _rename(f: MPoly, src: int, dst: int) -> MPoly:
    terms = {}
    for m, c in f.terms.items():
        if m[dst]:
            raise ValueError("rename target already present")
        m2 = list(m)
        m2[dst], m2[src] = m[src], 0
        terms[tuple(m2)] = c
    return MPoly._raw(f.spec, f.nvars, terms)


def basis_qdef(g: Graph, peo: Peo, spec: FieldSpec) -> list[Derivation]:
    """Moore-quotient basis of D(A_G^q) over GF(q) itself."""
    n, q = g.n, spec.q

    def quotient(lower, var):
        prod = subspace_polynomial(lower, var, spec, n)
        factors = []
        for cs in itertools.product(range(q), repeat=len(lower)):
            coeffs = [0] * n
            for c, m in zip(cs, lower):
                coeffs[m] = c
            coeffs[var] = 1
            factors.append(MPoly.linear(spec, coeffs))
        # quotient times Moore(E<k) must reproduce Moore(E<k, x_i)
        if prod * moore(lower, spec, n, check_product=False) != moore(lower + [var], spec, n, check_product=False):
            raise IdentityError("Moore quotient mismatch")
        if len(factors) <= QUOTIENT_CHECK_DEGREE and Factored(factors).expand() != prod:
            raise IdentityError("subspace polynomial differs from its linear factorisation")
        return prod, Factored(factors)

    return _finish(spec, n, _basis_skeleton(g, peo, quotient))


def basis_monomial(g: Graph, peo: Peo, r: int, spec: FieldSpec) -> list[Derivation]:
    """Delta_1^(r)-quotient basis of D(M(G, r)); needs r | q - 1."""
    z = primitive_root(spec, r)
    n = g.n
    roots = [(z**k).index for k in range(r)]
    neg = spec.neg_table

    def quotient(lower, var):
        xi = _var(spec, n, var)
        prod = xi
        factors = [xi]
        for m in lower:
            prod = prod * (_var(spec, n, var, r) - _var(spec, n, m, r))
            for c in roots:
                coeffs = [0] * n
                coeffs[var] = 1
                coeffs[m] = neg[c]
                factors.append(MPoly.linear(spec, coeffs))
        if prod * delta_r1(lower, r, spec, n) != delta_r1(lower + [var], r, spec, n):
            raise IdentityError("Delta_1^(r) quotient mismatch")
        if Factored(factors).expand() != prod:
            raise IdentityError(f"x^{r} - y^{r} does not split over {spec}")
        return prod, Factored(factors)

    return _finish(spec, n, _basis_skeleton(g, peo, quotient))


def is_derivation(theta: Derivation, arr: Arrangement) -> bool:
    """theta(alpha_H) is divisible by alpha_H for every hyperplane."""
    if theta.spec != arr.spec or theta.nvars != arr.dim:
        raise FieldError("derivation and arrangement live in different rings")
    return all(theta.kills_mod(MPoly.linear(arr.spec, v)) for v in arr.normals)


# ---------------------------------------------------------------------------
# Saito's criterion


def saito_matrix(thetas) -> list[list[MPoly]]:
    """Row k holds theta_k(x_j) = comps_j of theta_k."""
    return [list(t.comps) for t in thetas]


def is_upper_triangular(thetas, peo: Peo) -> bool:
    """theta_k(x_{v_j}) = 0 whenever j < k (positions in the ordering)."""
    for k, t in enumerate(thetas, 1):
        for j in range(1, k):
            if not t.comps[peo.order[j - 1] - 1].is_zero():
                return False
    return True


def _triangular_pivots(M):
    """Pair rows and columns through rows with a single live entry, or None."""
    n = len(M)
    rows, cols = set(range(n)), set(range(n))
    pairs = []
    while rows:
        for r in sorted(rows):
            live = [c for c in cols if not M[r][c].is_zero()]
            if len(live) == 1:
                pairs.append((r, live[0]))
                rows.remove(r)
                cols.remove(live[0])
                break
            if not live:
                return pairs, True  # a zero row: determinant vanishes
        else:
            return None, False
    return pairs, False


EXPAND_LIMIT = 24


@dataclass
class SaitoResult:
    exponents: Exponents | None
    reason: str
    scalar: object = None
    expanded_check: bool = False


def saito_certify(thetas, arr: Arrangement, expand: bool | None = None) -> SaitoResult:
    """Decide whether ``thetas`` is a basis of D(arr) by Saito's criterion.

    For structurally triangular matrices the determinant is the product of
    the pivots.  It equals c*Q(arr) with c != 0 iff it is nonzero, has degree
    |arr|, and each (pairwise non-associate, prime) alpha_H divides one pivot.
    Small cases are also expanded and compared with Q literally.
    """
    l = arr.dim
    if len(thetas) != l:
        return SaitoResult(None, f"need {l} derivations, got {len(thetas)}")
    for t in thetas:
        if not t.is_homogeneous():
            raise ValueError("Saito's criterion needs homogeneous derivations")
    for i, t in enumerate(thetas):
        if not is_derivation(t, arr):
            return SaitoResult(None, f"theta_{i + 1} is not in D(A)")
    M = saito_matrix(thetas)
    pairs, zero_row = _triangular_pivots(M)
    degrees = tuple(sorted(t.degree() for t in thetas))
    if zero_row:
        return SaitoResult(None, "determinant is zero")
    if expand is None:
        expand = len(arr) <= EXPAND_LIMIT
    if pairs is None:
        det = mpoly_det(M)
        if det.is_zero():
            return SaitoResult(None, "determinant is zero")
        c = equal_up_to_scalar(det, defining_poly(arr))
        if c is None:
            return SaitoResult(None, "determinant is not a multiple of Q(A)")
        return SaitoResult(degrees, "determinant = c Q(A)", c, True)
    pivots = []
    for r, col in pairs:
        fac = thetas[r].factored[col]
        pivots.append(fac if fac is not None else Factored([M[r][col]]))
    if sum(p.degree() for p in pivots) != len(arr):
        return SaitoResult(None, "determinant degree differs from |A|")
    for v in arr.normals:
        alpha = MPoly.linear(arr.spec, v)
        if not any(p.divisible_by_linear(alpha) for p in pivots):
            return SaitoResult(None, f"alpha={v} does not divide the determinant")
    scalar = None
    if expand:
        det = mpoly_det(M)
        scalar = equal_up_to_scalar(det, defining_poly(arr))
        if scalar is None:
            raise IdentityError("factored Saito certificate disagrees with expansion")
    return SaitoResult(degrees, "determinant = c Q(A)", scalar, expand)


def saito_check(thetas, arr: Arrangement) -> Exponents | None:
    return saito_certify(thetas, arr).exponents


def terao_factor_check(arr: Arrangement, exps) -> bool:
    return charpoly_mobius(arr) == IntPoly.from_roots(exps)


# ---------------------------------------------------------------------------
# inductive freeness

INDUCTIVE_LIMIT = 16

_ind_lock = threading.Lock()
_ind_memo: dict[tuple, Exponents | None] = {}


def _splits_nonneg(chi: IntPoly) -> Exponents | None:
    from .polyalg import int_root_split

    roots, rest = int_root_split(chi)
    if rest.degree != 0 or any(r < 0 for r in roots):
        return None
    return tuple(roots)


def inductive_free(arr: Arrangement) -> Exponents | None:
    """Exponents if arr is built from the empty arrangement by the addition theorem.

    None means no addition sequence exists; the search is exhaustive, pruned
    by the factorisation of chi that freeness forces.
    """
    if len(arr) > INDUCTIVE_LIMIT:
        raise SizeBoundError(f"inductive freeness search limited to {INDUCTIVE_LIMIT} hyperplanes")
    return _ind_free(arr)


def _ind_free(arr: Arrangement) -> Exponents | None:
    key = arr.key()
    with _ind_lock:
        if key in _ind_memo:
            return _ind_memo[key]
    if not arr.normals:
        result: Exponents | None = (0,) * arr.dim
    else:
        result = None
        target = _splits_nonneg(charpoly_mobius(arr))
        if target is not None:
            for h in range(len(arr)):
                e1 = _ind_free(delete(arr, h))
                if e1 is None:
                    continue
                e2 = _ind_free(restrict(arr, h))
                if e2 is None:
                    continue
                left = Counter(e1) - Counter(e2)
                if sum(left.values()) != 1 or Counter(e2) - Counter(e1):
                    continue
                d = next(iter(left)) + 1
                result = tuple(sorted(e2 + (d,)))
                break
    with _ind_lock:
        _ind_memo[key] = result
    return result


# ---------------------------------------------------------------------------
# supersolvability


@dataclass
class Filtration:
    """Nested hyperplane index sets into a parent arrangement, smallest first."""

    levels: list[frozenset[int]]

    def sizes(self) -> list[int]:
        prev: frozenset[int] = frozenset()
        out = []
        for lv in self.levels:
            out.append(len(lv - prev))
            prev = lv
        return out


@dataclass
class SupersolvableResult:
    ok: bool
    product: IntPoly | None
    charpoly: IntPoly | None
    reason: str = ""

    def __bool__(self):
        return self.ok


def supersolvable_verify(arr: Arrangement, filt: Filtration) -> SupersolvableResult:
    """Check the filtration conditions and the product formula for chi.

    Levels that add no hyperplane are skipped, so the chain runs up to
    rank(arr); chi picks up a factor t for each missing rank.
    """
    n = len(arr)
    prev: frozenset[int] = frozenset()
    for lv in filt.levels:
        if not lv >= prev or any(not (0 <= i < n) for i in lv):
            raise ValueError("filtration levels must be nested subsets of the arrangement")
        prev = lv
    if prev != frozenset(range(n)):
        raise ValueError("top level of the filtration must be the whole arrangement")
    chain = []
    prev = frozenset()
    for lv in filt.levels:
        if lv != prev:
            chain.append(lv)
        prev = lv
    spec, normals = arr.spec, arr.normals
    chi = charpoly_mobius(arr)
    prev = frozenset()
    t = IntPoly.t()
    product = IntPoly.const(1)
    for i, lv in enumerate(chain, 1):
        if rank_of(spec, [normals[j] for j in lv]) != i:
            return SupersolvableResult(False, None, chi, f"level {i} does not have rank {i}")
        new = sorted(lv - prev)
        for a, b in itertools.combinations(new, 2):
            if not any(rank_of(spec, [normals[a], normals[b], normals[c]]) == 2 for c in prev):
                return SupersolvableResult(False, None, chi, f"no older hyperplane contains H{a} & H{b}")
        product = product * (t - len(new))
        prev = lv
    product = product * t ** (arr.dim - len(chain))
    if product != chi:
        return SupersolvableResult(False, product, chi, "product formula disagrees with chi")
    return SupersolvableResult(True, product, chi)


def chordal_filtration(g: Graph, peo: Peo, arr: Arrangement) -> Filtration:
    """Levels A_i = hyperplanes supported on {v_1, ..., v_i}.

    For the graphic, q-deformation and monomial builders this is exactly the
    arrangement of the induced subgraph G_i, placed inside the parent.
    """
    if not is_peo(g, peo.order):
        raise NotChordal(f"{peo.order} is not a perfect elimination ordering")
    if arr.dim != g.n:
        raise ValueError("arrangement dimension differs from the number of vertices")
    levels = []
    seen: set[int] = set()
    for v in peo.order:
        seen.add(v - 1)
        levels.append(frozenset(i for i, w in enumerate(arr.normals) if all(c == 0 or j in seen for j, c in enumerate(w))))
    return Filtration(levels)


SEARCH_MAX_HYPERPLANES = 12
SEARCH_MAX_RANK = 4


def supersolvable_search(arr: Arrangement) -> Filtration | None:
    """Exhaustive backtracking over all chains of sub-arrangements.

    Works top-down: from a set S of rank r choose any T subset of S of rank
    r - 1 such that every two hyperplanes of S - T meet inside one of T.
    """
    n = len(arr)
    spec, normals = arr.spec, arr.normals
    top_rank = arr.rank()
    if n > SEARCH_MAX_HYPERPLANES or top_rank > SEARCH_MAX_RANK:
        raise SizeBoundError(
            f"supersolvable search limited to {SEARCH_MAX_HYPERPLANES} hyperplanes and rank {SEARCH_MAX_RANK}"
        )
    pair_mask = [[0] * n for _ in range(n)]
    for a, b in itertools.combinations(range(n), 2):
        m = 0
        for c in range(n):
            if c != a and c != b and rank_of(spec, [normals[a], normals[b], normals[c]]) == 2:
                m |= 1 << c
        pair_mask[a][b] = pair_mask[b][a] = m
    rank_cache: dict[int, int] = {}

    def rank(mask):
        if mask not in rank_cache:
            rows: tuple = ()
            for i in range(n):
                if mask >> i & 1:
                    new = rref_insert(spec, rows, normals[i])
                    if new is not None:
                        rows = new
            rank_cache[mask] = len(rows)
        return rank_cache[mask]

    def bits(m):
        return [i for i in range(n) if m >> i & 1]

    memo: dict[int, list[int] | None] = {}

    def descend(S, r):
        """Chain [.., S] from the empty set, or None."""
        if r == 0:
            return [S] if S == 0 else None
        if S in memo:
            return memo[S]
        found = None
        T = (S - 1) & S
        while True:
            if T != S and rank(T) == r - 1:
                new = bits(S & ~T)
                if all(pair_mask[a][b] & T for a, b in itertools.combinations(new, 2)):
                    below = descend(T, r - 1)
                    if below is not None:
                        found = below + [S]
                        break
            if T == 0:
                break
            T = (T - 1) & S
        memo[S] = found
        return found

    chain = descend((1 << n) - 1, top_rank)
    if chain is None:
        return None
    return Filtration([frozenset(bits(m)) for m in chain[1:]])
