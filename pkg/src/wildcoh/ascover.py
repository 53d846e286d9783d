"""Local normal form of a totally ramified Z/p-point with ramification jump n.

The cover is presented by an order-p automorphism of k[[t]],

    sigma(t) = t / (1 + t^n)^(1/n),

together with the invariant parameter x = t^p / (1 - t^(n(p-1)))^(1/n),
which satisfies t^(-np) - t^(-n) = x^(-n) exactly.  Both series use the
principal root branch (constant term 1), so a cover is canonical for
(p, n, prec).  Windows of monomials t^i carry the matrix of sigma modulo
t^a, the finite model every cohomology computation runs on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from wildcoh import linalg
from wildcoh.gf import FieldCtx, is_prime
from wildcoh.laurent import InsufficientPrecisionError, LaurentSeries

_GUARD = 8


class NormalFormError(RuntimeError):
    """A defining identity of the local normal form failed to verify."""


def recommended_precision(p: int, n: int, w: int | None = None) -> int:
    """Precision making every window/cohomology run for (p, n) safe.

    Covers windows of size up to w + p (the stabilization re-run), the
    shifted-window construction used for the differential map, and the
    x-expansion identity, with guard digits on top.
    """
    if w is None:
        w = n + p + 1
    return max(n * p + p + 1, w + 2 * p + n + 2, p + n * (p - 1) + 2) + _GUARD


def build(p: int, n: int, prec: int) -> "LocalCover":
    """Construct the canonical local cover for jump n in characteristic p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1 or gcd(n, p) != 1:
        raise ValueError(f"jump {n} must be positive and coprime to {p}")
    if prec <= n * p + p:
        raise ValueError(f"precision {prec} too small; need > {n * p + p}")
    ctx = FieldCtx(p)
    one = LaurentSeries.one(ctx, prec)
    t_n = LaurentSeries.monomial(ctx, n, prec)
    sigma_t = (one + t_n).nth_root(n).invert().shift(1)
    t_big = LaurentSeries.monomial(ctx, n * (p - 1), prec)
    x_t = (one - t_big).nth_root(n).invert().shift(p)
    return LocalCover(p=p, n=n, prec=prec, ctx=ctx, sigma_t=sigma_t, x_t=x_t)


@dataclass
class LocalCover:
    """Normal-form data of one wild point; immutable after build."""

    p: int
    n: int
    prec: int
    ctx: FieldCtx
    sigma_t: LaurentSeries
    x_t: LaurentSeries
    _u_pows: dict[int, LaurentSeries] = field(default_factory=dict, repr=False)
    _xu_pows: dict[int, LaurentSeries] = field(default_factory=dict, repr=False)

    def _unit_power(self, cache: dict[int, LaurentSeries], unit: LaurentSeries, e: int) -> LaurentSeries:
        if e in cache:
            return cache[e]
        if not cache:
            cache[0] = LaurentSeries.one(self.ctx, unit.prec)
        if 1 not in cache:
            cache[1] = unit
        if e < 0 and -1 not in cache:
            cache[-1] = unit.invert()
        k = max(cache) if e > 0 else min(cache)
        step = cache[1] if e > 0 else cache[-1]
        cur = cache[k]
        while k != e:
            k += 1 if e > 0 else -1
            cur = cur * step
            cache[k] = cur
        return cache[e]

    def sigma_power(self, i: int) -> LaurentSeries:
        """sigma(t)**i, exact to precision prec + i."""
        unit = self.sigma_t.shift(-1)
        return self._unit_power(self._u_pows, unit, i).shift(i)

    def x_power(self, j: int) -> LaurentSeries:
        """x**j expressed in t, exact to precision prec + p*j."""
        unit = self.x_t.shift(-self.p)
        return self._unit_power(self._xu_pows, unit, j).shift(self.p * j)

    def window(self, a: int, lo: int) -> "LatticeWindow":
        """Matrix of h -> sigma(h) mod t^a on the basis t^lo .. t^(a-1)."""
        if lo >= a:
            raise ValueError("window requires lo < a")
        if self.prec < a - lo:
            raise InsufficientPrecisionError(
                f"cover precision {self.prec} < window span {a - lo}"
            )
        size = a - lo
        rows = [[0] * size for _ in range(size)]
        for col, i in enumerate(range(lo, a)):
            s = self.sigma_power(i)
            if s.valuation() != i:
                raise NormalFormError(f"sigma(t^{i}) does not have valuation {i}")
            for e in range(i, a):
                rows[e - lo][col] = s.coefficient(e)
        for col in range(size):
            if rows[col][col] != 1:
                raise NormalFormError("window matrix is not unipotent on the diagonal")
            for row in range(col):
                if rows[row][col]:
                    raise NormalFormError("window matrix is not lower triangular")
        return LatticeWindow(cover=self, a=a, lo=lo, sigma_matrix=rows)


@dataclass
class LatticeWindow:
    """Finite slice span{t^i : lo <= i < a} with the matrix of sigma mod t^a."""

    cover: LocalCover
    a: int
    lo: int
    sigma_matrix: list[list[int]]

    @property
    def p(self) -> int:
        return self.cover.p

    @property
    def n(self) -> int:
        return self.cover.n

    @property
    def ctx(self) -> FieldCtx:
        return self.cover.ctx

    @property
    def size(self) -> int:
        return self.a - self.lo

    def exponents(self) -> range:
        return range(self.lo, self.a)

    def unit_vector(self, exp: int) -> list[int]:
        if not self.lo <= exp < self.a:
            raise ValueError(f"exponent {exp} outside window [{self.lo}, {self.a})")
        vec = [0] * self.size
        vec[exp - self.lo] = 1
        return vec

    def x_truncation(self, j: int) -> list[int]:
        """Coordinates of x**j truncated to the window (requires p*j >= lo)."""
        pj = self.p * j
        if pj < self.lo:
            raise ValueError(f"x^{j} has valuation {pj} below the window")
        s = self.cover.x_power(j)
        if s.prec < self.a:
            raise InsufficientPrecisionError("cover precision too small for x-power")
        return [s.coefficient(e) if e >= pj else 0 for e in self.exponents()]

    def apply(self, vec: list[int]) -> list[int]:
        return linalg.mat_vec(self.ctx, self.sigma_matrix, vec)

    def is_fixed(self, vec: list[int]) -> bool:
        return self.apply(vec) == list(vec)

    def verify_order(self) -> None:
        """Check sigma_matrix**p = identity (raises NormalFormError)."""
        if not linalg.is_identity(linalg.mat_pow(self.ctx, self.sigma_matrix, self.p)):
            raise NormalFormError("window matrix does not have order p")


@dataclass
class NormalFormReport:
    p: int
    n: int
    prec: int
    checked: list[str]

    @property
    def ok(self) -> bool:
        return True


def verify_normal_form(cov: LocalCover) -> NormalFormReport:
    """Check the defining identities of the cover, to precision.

    Raises NormalFormError naming the first identity that fails; returns a
    report listing the identities checked otherwise.
    """
    ctx, p, n = cov.ctx, cov.p, cov.n
    checked = []

    s = cov.sigma_t
    for _ in range(p - 1):
        s = s.substitute(cov.sigma_t)
    t = LaurentSeries.monomial(ctx, 1, s.prec)
    if not s.agrees(t):
        raise NormalFormError("sigma iterated p times is not the identity")
    checked.append("sigma^p = id")

    z_image = cov.sigma_t ** (-n)
    z_target = LaurentSeries.monomial(ctx, -n, z_image.prec) + LaurentSeries.one(
        ctx, z_image.prec
    )
    if not z_image.agrees(z_target):
        raise NormalFormError("sigma(t^-n) != t^-n + 1")
    checked.append("sigma(t^-n) = t^-n + 1")

    if not cov.x_t.substitute(cov.sigma_t).agrees(cov.x_t):
        raise NormalFormError("x is not sigma-invariant")
    checked.append("sigma(x) = x")

    jump_exp = p + n * (p - 1)
    if cov.x_t.valuation() != p or cov.x_t.coefficient(p) != 1:
        raise NormalFormError("x does not start with t^p")
    for e in range(p + 1, jump_exp):
        if cov.x_t.coefficient(e):
            raise NormalFormError("x has spurious terms below the first correction")
    if cov.x_t.coefficient(jump_exp) != ctx.inv(ctx.embed(n)):
        raise NormalFormError("first correction of x is not (1/n) t^(p + n(p-1))")
    checked.append("x = t^p + (1/n) t^(p+n(p-1)) + ...")

    return NormalFormReport(p=p, n=n, prec=cov.prec, checked=checked)


@dataclass
class DifferentialCheck:
    ok: bool
    failures: list[str]

    def __bool__(self) -> bool:
        return self.ok


def invariant_differential_check(cov: LocalCover) -> DifferentialCheck:
    """Verify dt/t^(n+1) is invariant and equals -dx/x^(n+1), to precision."""
    ctx, n = cov.ctx, cov.n
    failures = []

    lhs = cov.sigma_t.derivative() * (cov.sigma_t ** (-(n + 1)))
    target = LaurentSeries.monomial(ctx, -(n + 1), lhs.prec)
    if not lhs.agrees(target):
        failures.append("sigma'(t) / sigma(t)^(n+1) != 1/t^(n+1)")

    rhs = cov.x_t.derivative() * (cov.x_t ** (-(n + 1)))
    neg_target = LaurentSeries.monomial(ctx, -(n + 1), rhs.prec, ctx.embed(-1))
    if not rhs.agrees(neg_target):
        failures.append("x'(t) / x^(n+1) != -1/t^(n+1)")

    return DifferentialCheck(ok=not failures, failures=failures)
