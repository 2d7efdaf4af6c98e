"""Finite fields GF(p^e).

Elements are coefficient vectors (low degree first) of a representative
polynomial modulo a fixed monic irreducible ``modulus``.  Every element also
has an integer *index* ``sum(c_i * p**i)``; the hot loops elsewhere in the
package work on indices through the add/mul tables cached on the spec.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from functools import cached_property, lru_cache


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split a prime power ``q`` into ``(p, e)``."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1 or not is_prime(p):
                raise FieldError(f"{q} is not a prime power")
            return p, e
    raise FieldError(f"{q} is not a prime power")  # pragma: no cover


# -- polynomials over GF(p) as low-first tuples, only what modulus search needs

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, m, p):
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def _monic_polys(p, d):
    """Monic degree-d polynomials over GF(p), lexicographic on low-first coeffs."""
    for low in itertools.product(range(p), repeat=d):
        yield tuple(low) + (1,)


def is_irreducible(f, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    f = _trim(f)
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not _polymod(f, g, p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^e) presented as GF(p)[x]/(modulus)."""

    p: int
    e: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.e

    def __repr__(self):
        return f"GF({self.q})"

    # -- index <-> coefficient vector

    def coeffs(self, idx: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            idx, c = divmod(idx, self.p)
            out.append(c)
        return tuple(out)

    def index(self, coeffs) -> int:
        idx = 0
        for c in reversed(tuple(coeffs)):
            idx = idx * self.p + c % self.p
        return idx

    def __call__(self, value) -> "FieldElement":
        """Element from an int (reduced mod p, prime subfield) or coeff vector."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.e - 1))
        c = tuple(int(x) % self.p for x in value)
        if len(c) != self.e:
            raise FieldError(f"expected {self.e} coefficients, got {len(c)}")
        return FieldElement(self, c)

    @property
    def zero(self) -> "FieldElement":
        return self(0)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    def gen(self) -> "FieldElement":
        """Class of x (equals 1 in a prime field, whose modulus is x)."""
        if self.e == 1:
            return self.one
        return self((0, 1) + (0,) * (self.e - 2))

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in itertools.product(range(self.p), repeat=self.e)]

    # -- index tables; q <= 625 in practice

    @cached_property
    def _mul_x(self):
        # multiplication by x acting on indices
        p, e, m = self.p, self.e, self.modulus
        out = []
        for i in range(self.q):
            c = self.coeffs(i)
            top = c[-1]
            shifted = (0,) + c[:-1]
            out.append(self.index(tuple((shifted[j] - top * m[j]) % p for j in range(e))))
        return out

    @cached_property
    def add_table(self) -> list[list[int]]:
        q, p = self.q, self.p
        cs = [self.coeffs(i) for i in range(q)]
        return [[self.index(tuple((x + y) % p for x, y in zip(cs[a], cs[b]))) for b in range(q)] for a in range(q)]

    @cached_property
    def neg_table(self) -> list[int]:
        return [self.index(tuple(-c % self.p for c in self.coeffs(a))) for a in range(self.q)]

    @cached_property
    def sub_table(self) -> list[list[int]]:
        add, neg = self.add_table, self.neg_table
        return [[add[a][neg[b]] for b in range(self.q)] for a in range(self.q)]

    @cached_property
    def mul_table(self) -> list[list[int]]:
        q, p = self.q, self.p
        if self.e == 1:
            return [[a * b % p for b in range(q)] for a in range(q)]
        add, mx = self.add_table, self._mul_x
        table = []
        for a in range(q):
            # index b = b0 + p*b'  <=>  b = b0 + x*b', so a*b = a*b0 + x*(a*b')
            row = [0] * q
            for b in range(1, p):
                row[b] = add[row[b - 1]][a]
            for b in range(p, q):
                row[b] = add[row[b % p]][mx[row[b // p]]]
            table.append(row)
        return table

    @cached_property
    def inv_table(self) -> list[int | None]:
        mul = self.mul_table
        inv: list[int | None] = [None] * self.q
        for a in range(1, self.q):
            for b in range(1, self.q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        return inv

    def pow_index(self, a: int, power: int) -> int:
        """Index of a**power, computed by square-and-multiply on indices."""
        mul = self.mul_table
        result, base = 1, a
        while power:
            if power & 1:
                result = mul[result][base]
            base = mul[base][base]
            power >>= 1
        return result


@lru_cache(maxsize=None)
def field_make(p: int, e: int = 1) -> FieldSpec:
    """GF(p^e) with the lexicographically smallest monic irreducible modulus."""
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e}")
    if e == 1:
        return FieldSpec(p, 1, (0, 1))
    for f in _monic_polys(p, e):
        if is_irreducible(f, p):
            return FieldSpec(p, e, f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def field_of_order(q: int) -> FieldSpec:
    return field_make(*prime_power(q))


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    coeffs: tuple[int, ...]

    @property
    def index(self) -> int:
        return self.spec.index(self.coeffs)

    def _wrap(self, idx: int) -> "FieldElement":
        return FieldElement(self.spec, self.spec.coeffs(idx))

    def _other(self, b) -> int:
        if isinstance(b, int):
            return self.spec(b).index
        if not isinstance(b, FieldElement):
            return NotImplemented
        if b.spec != self.spec:
            raise FieldError(f"mismatched fields {self.spec} and {b.spec}")
        return b.index

    def __add__(self, b):
        j = self._other(b)
        if j is NotImplemented:
            return j
        return self._wrap(self.spec.add_table[self.index][j])

    __radd__ = __add__

    def __sub__(self, b):
        j = self._other(b)
        if j is NotImplemented:
            return j
        return self._wrap(self.spec.sub_table[self.index][j])

    def __rsub__(self, b):
        return self.spec(b) - self

    def __neg__(self):
        return self._wrap(self.spec.neg_table[self.index])

    def __mul__(self, b):
        j = self._other(b)
        if j is NotImplemented:
            return j
        return self._wrap(self.spec.mul_table[self.index][j])

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError(f"division by zero in {self.spec}")
        return self._wrap(self.spec.inv_table[self.index])

    def __truediv__(self, b):
        j = self._other(b)
        if j is NotImplemented:
            return j
        return self * self._wrap(j).inverse()

    def __rtruediv__(self, b):
        return self.spec(b) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return self.spec.one
        return self._wrap(self.spec.pow_index(self.index, k))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def order(self) -> int:
        """Multiplicative order."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no multiplicative order")
        mul = self.spec.mul_table
        a = self.index
        acc, k = a, 1
        while acc != 1:
            acc = mul[acc][a]
            k += 1
        return k

    def __repr__(self):
        if self.spec.e == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and i else f"{c}{'' if i == 0 else '*' + mono}")
        return "+".join(terms) if terms else "0"


def field_arith(a: FieldElement, b, op: str, k: int | None = None) -> FieldElement:
    """Dispatch form of the element operators (``op`` in add/sub/mul/div/pow)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** (b if k is None else k)
    raise ValueError(f"unknown op {op!r}")


def units(spec: FieldSpec) -> list[FieldElement]:
    """Nonzero elements, lexicographic on coefficient vectors."""
    return [FieldElement(spec, c) for c in itertools.product(range(spec.p), repeat=spec.e) if any(c)]


def primitive_root(spec: FieldSpec, r: int) -> FieldElement:
    """Smallest unit (in :func:`units` order) of exact multiplicative order r."""
    if r < 1 or (spec.q - 1) % r:
        raise FieldError(f"no primitive {r}-th root in {spec}")
    for u in units(spec):
        if u.order() == r:
            return u
    raise AssertionError("cyclic group lacks an element of order r")  # pragma: no cover


def smallest_field_with_root(r: int) -> FieldSpec:
    """Smallest prime p with p = 1 (mod r): GF(p) contains a primitive r-th root."""
    p = r + 1
    while not is_prime(p):
        p += r
    return field_make(p, 1)


_embed_lock = threading.Lock()
_embed_cache: dict[tuple[FieldSpec, int], tuple[FieldSpec, list[int]]] = {}


def embedding(spec: FieldSpec, k: int) -> tuple[FieldSpec, list[int]]:
    """Target field GF(p^(e*k)) and the index map of a homomorphism into it.

    The base generator is sent to the first root of the base modulus found by
    exhaustive search in the target field.
    """
    if k < 1:
        raise FieldError(f"extension degree must be >= 1, got {k}")
    key = (spec, k)
    with _embed_lock:
        hit = _embed_cache.get(key)
    if hit is not None:
        return hit
    target = field_make(spec.p, spec.e * k)
    if spec.e == 1:
        image = [target.index((c,) + (0,) * (target.e - 1)) for c in range(spec.p)]
    else:
        add, mul = target.add_table, target.mul_table
        root = None
        for z in range(target.q):
            acc = 0
            for c in reversed(spec.modulus):
                acc = add[mul[acc][z]][c]
            if acc == 0:
                root = z
                break
        if root is None:
            raise AssertionError(f"base modulus has no root in {target}")
        powers = [1]
        for _ in range(spec.e - 1):
            powers.append(mul[powers[-1]][root])
        image = []
        for idx in range(spec.q):
            acc = 0
            for c, zp in zip(spec.coeffs(idx), powers):
                for _ in range(c):
                    acc = add[acc][zp]
            image.append(acc)
    result = (target, image)
    with _embed_lock:
        _embed_cache[key] = result
    return result


def embed(a: FieldElement, k: int) -> FieldElement:
    target, image = embedding(a.spec, k)
    return FieldElement(target, target.coeffs(image[a.index]))
