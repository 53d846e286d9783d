"""Truncated Laurent series over a finite field, with explicit precision.

A series is stored as (val, coeffs, prec): the coefficients from exponent
``val`` upward, known modulo t**prec.  All operations propagate the
minimum justified precision of their inputs and never fabricate digits;
the leading stored coefficient is nonzero unless the series is 0 mod
t**prec.  Coefficients are field codes (see wildcoh.gf); dense storage is
deliberate, every window this library needs stays within a few hundred
terms.
"""

from __future__ import annotations

from math import gcd
from typing import Mapping, Sequence

import numpy as np

from wildcoh.gf import FieldCtx

_NUMPY_P_LIMIT = 1 << 15


class InsufficientPrecisionError(ValueError):
    """An operation needs more stored digits than the series carries."""


def _convolve(ctx: FieldCtx, a: Sequence[int], b: Sequence[int], out_len: int) -> list[int]:
    if out_len <= 0 or not a or not b:
        return []
    if ctx.m == 1 and ctx.p <= _NUMPY_P_LIMIT:
        full = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64))
        return (full[:out_len] % ctx.p).tolist()
    mul, add = ctx.mul, ctx.add
    out = [0] * min(out_len, len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x or i >= out_len:
            continue
        top = min(len(b), out_len - i)
        for j in range(top):
            y = b[j]
            if y:
                out[i + j] = add(out[i + j], mul(x, y))
    return out


class LaurentSeries:
    """Truncated Laurent series; immutable, combines only within one context."""

    __slots__ = ("ctx", "val", "coeffs", "prec")

    def __init__(self, ctx: FieldCtx, val: int, coeffs: Sequence[int], prec: int):
        lead = 0
        cs = list(coeffs)
        while lead < len(cs) and cs[lead] == 0:
            lead += 1
        cs = cs[lead:]
        val += lead
        if val + len(cs) > prec:
            cs = cs[: prec - val]
            while cs and cs[-1] == 0:
                cs.pop()
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs:
            val = prec
        self.ctx = ctx
        self.val = val
        self.coeffs = tuple(cs)
        self.prec = prec

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldCtx, prec: int) -> "LaurentSeries":
        return cls(ctx, prec, (), prec)

    @classmethod
    def one(cls, ctx: FieldCtx, prec: int) -> "LaurentSeries":
        return cls(ctx, 0, (1,), prec)

    @classmethod
    def monomial(cls, ctx: FieldCtx, exp: int, prec: int, coeff: int = 1) -> "LaurentSeries":
        return cls(ctx, exp, (coeff,), prec)

    @classmethod
    def from_terms(cls, ctx: FieldCtx, terms: Mapping[int, int], prec: int) -> "LaurentSeries":
        if not terms:
            return cls.zero(ctx, prec)
        lo = min(terms)
        hi = max(terms)
        coeffs = [0] * (hi - lo + 1)
        for e, c in terms.items():
            coeffs[e - lo] = c
        return cls(ctx, lo, coeffs, prec)

    # -- inspection ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> int:
        if self.is_zero:
            raise ValueError("valuation of a series that is 0 mod t^prec")
        return self.val

    def coefficient(self, exp: int) -> int:
        """Code of the coefficient of t**exp (exp must be below the precision)."""
        if exp >= self.prec:
            raise InsufficientPrecisionError(
                f"coefficient of t^{exp} requested beyond precision O(t^{self.prec})"
            )
        if exp < self.val or exp >= self.val + len(self.coeffs):
            return 0
        return self.coeffs[exp - self.val]

    def terms(self) -> dict[int, int]:
        return {self.val + i: c for i, c in enumerate(self.coeffs) if c}

    def truncate(self, prec: int) -> "LaurentSeries":
        if prec > self.prec:
            raise InsufficientPrecisionError("cannot raise precision by truncation")
        return LaurentSeries(self.ctx, self.val, self.coeffs, prec)

    def agrees(self, other: "LaurentSeries") -> bool:
        """Equality of the two series modulo the smaller precision."""
        if self.ctx != other.ctx:
            return False
        m = min(self.prec, other.prec)
        a = self.truncate(m)
        b = other.truncate(m)
        return a.val == b.val and a.coeffs == b.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.agrees(other)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if self.is_zero:
            return f"O(t^{self.prec})"
        parts = []
        for e in sorted(self.terms()):
            c = self.coefficient(e)
            cs = "" if (c == 1 and e != 0) else f"{c}"
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{cs}t" if cs else "t")
            else:
                parts.append(f"{cs}t^{e}" if cs else f"t^{e}")
        return " + ".join(parts) + f" + O(t^{self.prec})"

    # -- ring operations ------------------------------------------------------

    def _check_ctx(self, other: "LaurentSeries") -> None:
        if self.ctx != other.ctx:
            raise ValueError("series context mismatch")

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._check_ctx(other)
        prec = min(self.prec, other.prec)
        if self.is_zero and other.is_zero:
            return LaurentSeries.zero(self.ctx, prec)
        terms: dict[int, int] = {}
        add = self.ctx.add
        for e, c in self.terms().items():
            if e < prec:
                terms[e] = c
        for e, c in other.terms().items():
            if e < prec:
                terms[e] = add(terms.get(e, 0), c)
        return LaurentSeries.from_terms(self.ctx, terms, prec)

    def __neg__(self) -> "LaurentSeries":
        neg = self.ctx.neg
        return LaurentSeries(self.ctx, self.val, [neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def scale(self, c: int) -> "LaurentSeries":
        """Multiply by a field element given as a code."""
        if c == 0:
            return LaurentSeries.zero(self.ctx, self.prec)
        mul = self.ctx.mul
        return LaurentSeries(self.ctx, self.val, [mul(c, x) for x in self.coeffs], self.prec)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by t**k (exact reindexing)."""
        return LaurentSeries(self.ctx, self.val + k, self.coeffs, self.prec + k)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._check_ctx(other)
        if self.is_zero or other.is_zero:
            v1 = self.prec if self.is_zero else self.val
            v2 = other.prec if other.is_zero else other.val
            return LaurentSeries.zero(self.ctx, min(self.prec + v2, other.prec + v1))
        val = self.val + other.val
        prec = min(self.prec + other.val, other.prec + self.val)
        out = _convolve(self.ctx, self.coeffs, other.coeffs, prec - val)
        return LaurentSeries(self.ctx, val, out, prec)

    def invert(self) -> "LaurentSeries":
        """Multiplicative inverse; requires the series to be nonzero mod t^prec."""
        if self.is_zero:
            raise ZeroDivisionError(
                "cannot invert a series indistinguishable from 0 at current precision"
            )
        ctx = self.ctx
        length = self.prec - self.val
        u = self.coeffs
        inv0 = ctx.inv(u[0])
        mul, add = ctx.mul, ctx.add
        out = [inv0] + [0] * (length - 1)
        for k in range(1, length):
            acc = 0
            for j in range(1, min(k, len(u) - 1) + 1):
                if u[j] and out[k - j]:
                    acc = add(acc, mul(u[j], out[k - j]))
            out[k] = ctx.neg(mul(inv0, acc))
        # f = t^val * u  =>  1/f = t^(-val) * u^(-1), known mod t^(prec - 2 val)
        return LaurentSeries(ctx, -self.val, out, self.prec - 2 * self.val)

    def __pow__(self, e: int) -> "LaurentSeries":
        ctx = self.ctx
        if self.is_zero:
            if e > 0:
                return LaurentSeries.zero(ctx, e * self.prec)
            raise ZeroDivisionError("nonpositive power of a series that is 0 mod t^prec")
        rel = self.prec - self.val
        unit = LaurentSeries(ctx, 0, self.coeffs, rel)
        if e == 0:
            return LaurentSeries.one(ctx, rel)
        exp = e
        if exp < 0:
            unit = unit.invert()
            exp = -exp
        acc = LaurentSeries.one(ctx, rel)
        base = unit
        while exp:
            if exp & 1:
                acc = acc * base
            exp >>= 1
            if exp:
                base = base * base
        return acc.shift(e * self.val)

    def derivative(self) -> "LaurentSeries":
        """Term-wise d/dt; absolute precision drops by one."""
        ctx = self.ctx
        terms = {}
        for e, c in self.terms().items():
            f = ctx.mul(ctx.embed(e), c)
            if f:
                terms[e - 1] = f
        return LaurentSeries.from_terms(ctx, terms, self.prec - 1)

    def substitute(self, g: "LaurentSeries") -> "LaurentSeries":
        """Composition self(g) for g of valuation exactly 1."""
        self._check_ctx(g)
        if g.is_zero or g.valuation() != 1:
            raise ValueError("substitution requires a series of valuation exactly 1")
        ctx = self.ctx
        if self.is_zero:
            return LaurentSeries.zero(ctx, self.prec)
        wp = g.prec + abs(self.val) + 4
        acc = LaurentSeries.zero(ctx, wp)
        hi = self.val + len(self.coeffs)
        for e in range(hi - 1, self.val - 1, -1):
            acc = acc * g
            c = self.coefficient(e)
            if c:
                acc = acc + LaurentSeries.monomial(ctx, 0, wp, c)
        result = acc * (g ** self.val)
        # digits of self beyond prec contribute from exponent prec on
        if result.prec > self.prec:
            result = result.truncate(self.prec)
        return result

    def nth_root(self, n: int) -> "LaurentSeries":
        """Deterministic n-th root via Newton lifting (gcd(n, p) = 1).

        The branch is fixed by gf's enumeration-order root of the leading
        coefficient together with the unit-part root normalized to constant
        term 1.
        """
        ctx = self.ctx
        if n < 1:
            raise ValueError("root index must be positive")
        if n == 1:
            return self
        if gcd(n, ctx.p) != 1:
            raise ValueError(f"root index {n} not coprime to characteristic {ctx.p}")
        if self.is_zero:
            raise ValueError("n-th root of a series that is 0 mod t^prec")
        if self.val % n != 0:
            raise ValueError(f"valuation {self.val} not divisible by root index {n}")
        lead_root = ctx.nth_root(self.coeffs[0], n)  # may raise NoRootError
        rel = self.prec - self.val
        inv_lead = ctx.inv(self.coeffs[0])
        w = LaurentSeries(ctx, 0, [ctx.mul(inv_lead, c) for c in self.coeffs], rel)
        n_inv = ctx.inv(ctx.embed(n))
        h = LaurentSeries.one(ctx, 1)
        k = 1
        while k < rel:
            k = min(2 * k, rel)
            # lift the current approximation to working precision k; Newton
            # guarantees the refreshed digits, not the carried-over claim
            h_k = LaurentSeries(ctx, 0, h.coeffs, k)
            delta = (h_k ** n) - w.truncate(k)
            if not delta.is_zero:
                corr = delta * (h_k ** (n - 1)).invert()
                h = h_k - corr.scale(n_inv)
            else:
                h = h_k
        root = h.scale(lead_root).shift(self.val // n)
        if not (root ** n).agrees(self):
            raise ArithmeticError("Newton n-th root failed to verify")  # pragma: no cover
        return root
