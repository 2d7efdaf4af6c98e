"""Exact polynomial algebra.

``IntPoly`` is a univariate polynomial in t with arbitrary-precision integer
coefficients.  ``MPoly`` is a sparse multivariate polynomial over a finite
field, stored as ``{exponent tuple: coefficient index}`` where the
coefficient index addresses the field's arithmetic tables.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from .gf import FieldElement, FieldError, FieldSpec


class IntPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def t(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots) -> "IntPoly":
        out = cls((1,))
        for r in roots:
            out = out * cls((-r, 1))
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_intpoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-x for x in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_intpoly(other))

    def __rsub__(self, other):
        return _as_intpoly(other) - self

    def __mul__(self, other):
        other = _as_intpoly(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        """Horner evaluation; exact for int and Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod_linear(self, root: int) -> tuple["IntPoly", int]:
        """Synthetic division by (t - root)."""
        if not self.coeffs:
            return IntPoly(), 0
        out = []
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        rem = out.pop()
        return IntPoly(reversed(out)), rem

    def compose_affine(self, c: int, d: int) -> "IntPoly":
        """``d**deg * p((t - c)/d)`` as an integer polynomial."""
        if d == 0:
            raise ZeroDivisionError("compose_affine needs d != 0")
        if not self.coeffs:
            return IntPoly()
        n = self.degree
        out = IntPoly()
        base = IntPoly((-c, 1))
        power = IntPoly((1,))
        for k, a in enumerate(self.coeffs):
            # a_k (t-c)^k d^(n-k)
            if a:
                out = out + power * (a * d ** (n - k))
            power = power * base
        return out

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        return format_expanded(self)


def _as_intpoly(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly((x,))
    raise TypeError(f"cannot combine IntPoly with {type(x).__name__}")


def intpoly_arith(a: IntPoly, b, op: str, *args):
    """Dispatch form: add, sub, mul, eval (b is the point), compose-affine (b=c, args=(d,))."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "eval":
        return a(Fraction(b) if not isinstance(b, int) else b)
    if op in ("compose-affine", "compose_affine"):
        return a.compose_affine(b, *args)
    raise ValueError(f"unknown op {op!r}")


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def int_root_split(p: IntPoly) -> tuple[list[int], IntPoly]:
    """Integer roots (ascending, with multiplicity) and the rootless residual."""
    if p.is_zero():
        raise ValueError("zero polynomial has every integer as a root")
    roots: list[int] = []
    while len(p.coeffs) > 1 and p.coeffs[0] == 0:
        roots.append(0)
        p = IntPoly(p.coeffs[1:])
    changed = True
    while changed and p.degree >= 1:
        changed = False
        for d in _divisors(p.coeffs[0]):
            for r in (-d, d):
                q, rem = p.divmod_linear(r)
                if rem == 0:
                    roots.append(r)
                    p = q
                    changed = True
                    break
            if changed:
                break
    return sorted(roots), p


def _fmt_terms(p: IntPoly) -> str:
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        mag = abs(c)
        body = str(mag) if (mag != 1 or not mono) else ""
        body += mono
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("-" if c < 0 else "+") + body)
    return "".join(parts) if parts else "0"


def format_expanded(p: IntPoly) -> str:
    return _fmt_terms(p)


def format_factored(p: IntPoly) -> str:
    """Render as ``(t-1)^2(t-3)(t^2-104t+2722)`` using integer roots."""
    if p.is_zero():
        return "0"
    roots, rest = int_root_split(p)
    out = []
    counts: dict[int, int] = {}
    for r in roots:
        counts[r] = counts.get(r, 0) + 1
    for r in sorted(counts):
        if r == 0:
            base = "t"
        else:
            base = f"(t{'-' if r > 0 else '+'}{abs(r)})"
        out.append(base + (f"^{counts[r]}" if counts[r] > 1 else ""))
    if rest.degree >= 1:
        if rest.leading() == 1:
            out.append(f"({_fmt_terms(rest)})")
        elif rest.leading() == -1:
            out.insert(0, "-")
            out.append(f"({_fmt_terms(-rest)})")
        else:
            out.append(f"({_fmt_terms(rest)})")
    elif rest.coeffs != (1,):
        c = rest.coeffs[0]
        out.insert(0, "-" if c == -1 else str(c))
    return "".join(out) if out else "1"


# ---------------------------------------------------------------------------
# sparse multivariate polynomials over GF(q)


class MPoly:
    """Sparse polynomial in ``nvars`` variables over ``spec``.

    ``terms`` maps exponent tuples to nonzero coefficient indices.  Instances
    are treated as immutable once built.
    """

    __slots__ = ("spec", "nvars", "terms")

    def __init__(self, spec: FieldSpec, nvars: int, terms=None):
        self.spec = spec
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], int] = {}
        if terms:
            for m, c in terms.items():
                if len(m) != nvars:
                    raise ValueError("exponent vector length mismatch")
                if isinstance(c, FieldElement):
                    c = c.index
                if c:
                    self.terms[tuple(m)] = c

    @classmethod
    def _raw(cls, spec, nvars, terms):
        out = cls.__new__(cls)
        out.spec = spec
        out.nvars = nvars
        out.terms = terms
        return out

    # -- constructors

    @classmethod
    def zero(cls, spec, nvars) -> "MPoly":
        return cls._raw(spec, nvars, {})

    @classmethod
    def const(cls, spec, nvars, c) -> "MPoly":
        idx = spec(c).index if not isinstance(c, FieldElement) else c.index
        return cls._raw(spec, nvars, {(0,) * nvars: idx} if idx else {})

    @classmethod
    def var(cls, spec, nvars, i: int, power: int = 1) -> "MPoly":
        m = [0] * nvars
        m[i] = power
        return cls._raw(spec, nvars, {tuple(m): 1})

    @classmethod
    def linear(cls, spec, coeff_indices) -> "MPoly":
        """Linear form from a vector of coefficient indices."""
        n = len(coeff_indices)
        terms = {}
        for i, c in enumerate(coeff_indices):
            if c:
                m = [0] * n
                m[i] = 1
                terms[tuple(m)] = c
        return cls._raw(spec, n, terms)

    # -- queries

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def variables(self) -> set[int]:
        out = set()
        for m in self.terms:
            out.update(i for i, a in enumerate(m) if a)
        return out

    def linear_coeffs(self) -> list[int]:
        """Coefficient indices of a homogeneous linear form."""
        if any(sum(m) != 1 for m in self.terms):
            raise ValueError("not a homogeneous linear form")
        out = [0] * self.nvars
        for m, c in self.terms.items():
            out[m.index(1)] = c
        return out

    def _check(self, other: "MPoly"):
        if not isinstance(other, MPoly):
            raise TypeError(f"expected MPoly, got {type(other).__name__}")
        if other.spec != self.spec or other.nvars != self.nvars:
            raise FieldError("polynomials over different rings")

    def __eq__(self, other):
        return (
            isinstance(other, MPoly)
            and self.spec == other.spec
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.spec, self.nvars, frozenset(self.terms.items())))

    # -- arithmetic

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        add = self.spec.add_table
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = add[out.get(m, 0)][c]
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MPoly._raw(self.spec, self.nvars, out)

    def __neg__(self) -> "MPoly":
        neg = self.spec.neg_table
        return MPoly._raw(self.spec, self.nvars, {m: neg[c] for m, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def scale(self, c) -> "MPoly":
        idx = c if isinstance(c, int) else c.index
        if idx == 0:
            return MPoly.zero(self.spec, self.nvars)
        row = self.spec.mul_table[idx]
        return MPoly._raw(self.spec, self.nvars, {m: row[v] for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return self.scale(other)
        self._check(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        add, mul = self.spec.add_table, self.spec.mul_table
        out: dict[tuple[int, ...], int] = {}
        get = out.get
        for mb, cb in b.items():
            row = mul[cb]
            for ma, ca in a.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = add[get(m, 0)][row[ca]]
        return MPoly._raw(self.spec, self.nvars, {m: c for m, c in out.items() if c})

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.const(self.spec, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def frobenius(self, power: int) -> "MPoly":
        """f**power for power a power of the characteristic (additive map)."""
        pw = self.spec.pow_index
        return MPoly._raw(
            self.spec,
            self.nvars,
            {tuple(a * power for a in m): pw(c, power) for m, c in self.terms.items()},
        )

    def __repr__(self):
        return f"MPoly({format_mpoly(self)})"

    def __str__(self):
        return format_mpoly(self)


def mpoly_arith(a: MPoly, b, op: str) -> MPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


def format_mpoly(f: MPoly, names=None) -> str:
    """Canonical text: terms by descending degree, then lexicographic exponents."""
    if not f.terms:
        return "0"
    names = names or [f"x{i + 1}" for i in range(f.nvars)]
    spec = f.spec
    parts = []
    for m in sorted(f.terms, key=lambda m: (-sum(m), tuple(-a for a in m))):
        c = f.terms[m]
        mono = "*".join(n if a == 1 else f"{n}^{a}" for n, a in zip(names, m) if a)
        cs = repr(FieldElement(spec, spec.coeffs(c)))
        if spec.e > 1 and c > 1 and (c >= spec.p):
            cs = f"({cs})"
        if not mono:
            parts.append(cs)
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{cs}*{mono}")
    return " + ".join(parts)


def mpoly_subst_linear(f: MPoly, i: int, g: MPoly) -> MPoly:
    """Replace x_i by the homogeneous linear form g (which must avoid x_i)."""
    if g.nvars != f.nvars or g.spec != f.spec:
        raise FieldError("substitution across different rings")
    gl = g.linear_coeffs()
    if gl[i]:
        raise ValueError(f"substituted form involves x{i + 1}")
    spec, n = f.spec, f.nvars
    add, mul = spec.add_table, spec.mul_table
    # group f by the power of x_i: f = sum_a f_a * x_i^a
    by_power: dict[int, dict[tuple[int, ...], int]] = {}
    for m, c in f.terms.items():
        a = m[i]
        rest = m[:i] + (0,) + m[i + 1 :]
        by_power.setdefault(a, {})[rest] = c
    if not by_power:
        return MPoly.zero(spec, n)
    # Horner in x_i := g
    top = max(by_power)
    acc: dict[tuple[int, ...], int] = {}
    g_terms = list(g.terms.items())
    for a in range(top, -1, -1):
        if acc:
            new: dict[tuple[int, ...], int] = {}
            get = new.get
            for mg, cg in g_terms:
                row = mul[cg]
                for m, c in acc.items():
                    mm = tuple(x + y for x, y in zip(m, mg))
                    new[mm] = add[get(mm, 0)][row[c]]
            acc = {m: c for m, c in new.items() if c}
        for m, c in by_power.get(a, {}).items():
            v = add[acc.get(m, 0)][c]
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
    return MPoly._raw(spec, n, acc)


def _solve_for_leading(alpha: MPoly) -> tuple[int, MPoly]:
    """For alpha = c*x_v + rest: return (v, -rest/c), so alpha = 0 <=> x_v = form."""
    coeffs = alpha.linear_coeffs()
    v = next((j for j, c in enumerate(coeffs) if c), None)
    if v is None:
        raise ValueError("zero linear form")
    spec = alpha.spec
    inv = spec.inv_table[coeffs[v]]
    factor = spec.neg_table[inv]
    mul = spec.mul_table[factor]
    rest = [0 if j == v else mul[c] for j, c in enumerate(coeffs)]
    return v, MPoly.linear(spec, rest)


def divisible_by_linear(f: MPoly, alpha: MPoly) -> bool:
    """alpha | f, tested by substituting the kernel of alpha into f."""
    if alpha.is_zero():
        raise ValueError("divisibility by the zero form")
    f._check(alpha)
    if f.is_zero():
        return True
    v, form = _solve_for_leading(alpha)
    return mpoly_subst_linear(f, v, form).is_zero()


def associated_linear(a: MPoly, b: MPoly) -> bool:
    """Linear forms equal up to a nonzero scalar."""
    return equal_up_to_scalar(a, b) is not None


def equal_up_to_scalar(f: MPoly, g: MPoly):
    """Nonzero c with f = c*g, as a FieldElement, else None."""
    f._check(g)
    if f.is_zero() or g.is_zero() or f.terms.keys() != g.terms.keys():
        return None
    spec = f.spec
    mul, inv = spec.mul_table, spec.inv_table
    c = None
    for m, gc in g.terms.items():
        ratio = mul[f.terms[m]][inv[gc]]
        if c is None:
            c = ratio
        elif ratio != c:
            return None
    return FieldElement(spec, spec.coeffs(c))


# ---------------------------------------------------------------------------
# determinants


MAX_DET_DIM = 8


def mpoly_det(matrix) -> MPoly:
    """Cofactor expansion along the sparsest row (recursively)."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    if n > MAX_DET_DIM:
        raise ValueError(f"determinant dimension {n} exceeds {MAX_DET_DIM}")
    first = matrix[0][0]
    return _det(list(range(n)), list(range(n)), matrix, first.spec, first.nvars)


def _det(rows, cols, M, spec, nvars):
    if len(rows) == 1:
        return M[rows[0]][cols[0]]
    best = min(rows, key=lambda r: sum(1 for c in cols if not M[r][c].is_zero()))
    total = MPoly.zero(spec, nvars)
    rest_rows = [r for r in rows if r != best]
    pos = rows.index(best)
    for j, c in enumerate(cols):
        entry = M[best][c]
        if entry.is_zero():
            continue
        minor = _det(rest_rows, cols[:j] + cols[j + 1 :], M, spec, nvars)
        term = entry * minor
        total = total - term if (pos + j) % 2 else total + term
    return total


def det_by_permutations(matrix) -> MPoly:
    """Leibniz formula; slow reference for tests and small Moore matrices."""
    n = len(matrix)
    first = matrix[0][0]
    total = MPoly.zero(first.spec, first.nvars)
    for perm in itertools.permutations(range(n)):
        term = MPoly.const(first.spec, first.nvars, 1)
        for i, j in enumerate(perm):
            term = term * matrix[i][j]
            if term.is_zero():
                break
        if term.is_zero():
            continue
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        total = total - term if inversions % 2 else total + term
    return total


def monomial_count_bound(nvars: int, degree: int) -> int:
    """Number of monomials of a given degree; used to refuse hopeless expansions."""
    return comb(degree + nvars - 1, nvars - 1)
