"""Exact arithmetic in GF(p) and in small extensions GF(p^m).

Field elements are integer codes 0..q-1; the base-p digits of a code are
the coefficients of the polynomial representative, least significant
first.  Zero and one are always coded 0 and 1, and the natural embedding
of an integer k is the code k mod p.  A :class:`FieldCtx` interprets
codes and supplies arithmetic; for tiny fields every operation is a flat
table lookup, which is what the series and matrix layers build on.
:class:`FieldElement` is a thin value wrapper for callers that prefer
operator syntax.
"""

from __future__ import annotations

from math import gcd, isqrt
from typing import Iterator, Sequence

# Fields with q above this bound skip table construction (quadratic in q)
# and fall back to modular / polynomial arithmetic per call.
_TABLE_LIMIT = 256


class NoRootError(ArithmeticError):
    """No n-th root exists in this field; the caller may extend the field."""


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (intended for n < 2**31)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class FieldCtx:
    """Arithmetic context for GF(p) (modulus=None) or GF(p^m).

    ``modulus`` is the coefficient list (constant first, leading 1 last) of
    a monic irreducible polynomial of degree m >= 2 over GF(p).
    Irreducibility is checked at construction by exhaustive search; the
    contexts this library needs are tiny.
    """

    def __init__(self, p: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        self.p = p
        if modulus is None:
            self.m = 1
            self.modulus: tuple[int, ...] | None = None
        else:
            mod = tuple(c % p for c in modulus)
            if len(mod) < 3:
                raise ValueError("extension modulus must have degree >= 2")
            if mod[-1] != 1:
                raise ValueError("extension modulus must be monic")
            self.m = len(mod) - 1
            self.modulus = mod
        self.q = self.p ** self.m
        if self.modulus is not None:
            self._check_irreducible()
        self._add_table: tuple[int, ...] | None = None
        self._mul_table: tuple[int, ...] | None = None
        self._neg_table: tuple[int, ...] | None = None
        self._inv_table: tuple[int, ...] | None = None
        if self.q <= _TABLE_LIMIT:
            self._build_tables()

    # -- construction helpers -------------------------------------------

    def _check_irreducible(self) -> None:
        # Degree 2 and 3: irreducible iff no roots.  Degree >= 4: trial
        # division by every monic polynomial of degree <= m//2.
        assert self.modulus is not None
        m = self.m
        if m <= 3:
            for c in range(self.p):
                if self._poly_eval(self.modulus, c) == 0:
                    raise ValueError("modulus is reducible (has a root)")
            return
        for d in range(1, m // 2 + 1):
            for tail in range(self.p ** d):
                div = self._digits(tail, d) + (1,)
                if self._poly_rem(self.modulus, div) == ():
                    raise ValueError("modulus is reducible")

    def _digits(self, code: int, length: int) -> tuple[int, ...]:
        out = []
        for _ in range(length):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    def _poly_eval(self, poly: Sequence[int], x: int) -> int:
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % self.p
        return acc

    def _poly_rem(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        # remainder of a by monic b, coefficients ascending, stripped
        p = self.p
        r = list(a)
        db = len(b) - 1
        while len(r) - 1 >= db and any(r):
            while r and r[-1] % p == 0:
                r.pop()
            if len(r) - 1 < db:
                break
            lead = r[-1] % p
            shift = len(r) - 1 - db
            for i, c in enumerate(b):
                r[shift + i] = (r[shift + i] - lead * c) % p
            while r and r[-1] % p == 0:
                r.pop()
        return tuple(c % p for c in r)

    def _raw_mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        da = self._digits(a, self.m)
        db = self._digits(b, self.m)
        prod = [0] * (2 * self.m - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    prod[i + j] = (prod[i + j] + ca * cb) % self.p
        assert self.modulus is not None
        rem = self._poly_rem(prod, self.modulus)
        code = 0
        for c in reversed(rem):
            code = code * self.p + c
        return code

    def _raw_add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        da = self._digits(a, self.m)
        db = self._digits(b, self.m)
        code = 0
        for ca, cb in zip(reversed(da), reversed(db)):
            code = code * self.p + (ca + cb) % self.p
        return code

    def _build_tables(self) -> None:
        q = self.q
        add = [0] * (q * q)
        mul = [0] * (q * q)
        for a in range(q):
            base = a * q
            for b in range(a, q):
                s = self._raw_add(a, b)
                m_ = self._raw_mul(a, b)
                add[base + b] = s
                add[b * q + a] = s
                mul[base + b] = m_
                mul[b * q + a] = m_
        self._add_table = tuple(add)
        self._mul_table = tuple(mul)
        neg = [0] * q
        for a in range(q):
            for b in range(q):
                if add[a * q + b] == 0:
                    neg[a] = b
                    break
        self._neg_table = tuple(neg)
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a * q + b] == 1:
                    inv[a] = b
                    break
        self._inv_table = tuple(inv)

    # -- code-level arithmetic -------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add_table is not None:
            return self._add_table[a * self.q + b]
        return self._raw_add(a, b)

    def neg(self, a: int) -> int:
        if self._neg_table is not None:
            return self._neg_table[a]
        if self.m == 1:
            return (-a) % self.p
        return self._raw_mul(a, self.embed(-1))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a * self.q + b]
        return self._raw_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero in finite field")
        if self._inv_table is not None:
            return self._inv_table[a]
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def embed(self, k: int) -> int:
        """Code of the image of the integer k under the prime-subfield embedding."""
        return k % self.p

    def nth_root(self, a: int, n: int) -> int:
        """First code c (in enumeration order 0,1,2,...) with c**n == a.

        Requires gcd(n, p) == 1; raises NoRootError when no root exists.
        """
        if n < 1:
            raise ValueError("root index must be positive")
        if gcd(n, self.p) != 1:
            raise ValueError(f"root index {n} not coprime to characteristic {self.p}")
        for c in range(self.q):
            if self.pow(c, n) == a:
                return c
        raise NoRootError(f"no {n}-th root of code {a} in {self!r}")

    # -- element layer ----------------------------------------------------

    def coeffs(self, code: int) -> tuple[int, ...]:
        return self._digits(code, self.m)

    def code(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.m:
            raise ValueError("too many coefficients for this field")
        padded = list(coeffs) + [0] * (self.m - len(coeffs))
        out = 0
        for c in reversed(padded):
            out = out * self.p + c % self.p
        return out

    def element(self, value: int | Sequence[int] | "FieldElement") -> "FieldElement":
        """Element from a code/integer (prime field), coefficient list, or element."""
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise ValueError("field context mismatch")
            return value
        if isinstance(value, int):
            if self.m == 1:
                return FieldElement(self, value % self.p)
            if 0 <= value < self.q:
                return FieldElement(self, value)
            return FieldElement(self, self.embed(value))
        return FieldElement(self, self.code(value))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """Image of x in GF(p)[x]/modulus (the prime field returns 1)."""
        return FieldElement(self, self.p if self.m > 1 else 1)

    def elements(self) -> Iterator["FieldElement"]:
        for c in range(self.q):
            yield FieldElement(self, c)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldCtx)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"


class FieldElement:
    """Immutable element of a FieldCtx; combines only with the same context."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs(self.code)

    def _coerce(self, other: "FieldElement | int") -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("field context mismatch")
            return other.code
        if isinstance(other, int):
            return self.ctx.embed(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.add(self.code, code))

    __radd__ = __add__

    def __sub__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.sub(self.code, code))

    def __rsub__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.sub(code, self.code))

    def __mul__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.mul(self.code, code))

    __rmul__ = __mul__

    def __truediv__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.mul(self.code, self.ctx.inv(code)))

    def __rtruediv__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.mul(code, self.ctx.inv(self.code)))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.code, e))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.code))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.code == other.code
        if isinstance(other, int):
            return self.code == self.ctx.embed(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.p, self.ctx.modulus, self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.code))

    def nth_root(self, n: int) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.nth_root(self.code, n))

    def __repr__(self) -> str:
        if self.ctx.m == 1:
            return f"{self.code}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            else:
                head = "" if c == 1 else f"{c}*"
                terms.append(f"{head}w" + (f"^{i}" if i > 1 else ""))
        return " + ".join(terms) if terms else "0"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    """Field addition (same context required)."""
    return a + b


def mul_inv(a: FieldElement) -> FieldElement:
    """Multiplicative inverse of a nonzero element."""
    return a.inverse()


def nth_root(a: FieldElement, n: int) -> FieldElement:
    """Deterministic n-th root: first match in the fixed enumeration order."""
    return a.nth_root(n)
