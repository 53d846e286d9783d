"""Group cohomology of Z/p-modules, two ways.

For an explicit matrix module the periodic description of cyclic-group
cohomology (H^1 = ker N / im(sigma - 1), H^2 = ker(sigma - 1) / im N)
reduces everything to exact rank computations.  For the local modules of
a wild cover, H^1 is realized as the cokernel of the invariants of the
full Laurent field mapping into the invariants of a quotient lattice:
inside a window [lo, a) this is ker(sigma - 1) modulo the span of the
truncated powers of the invariant parameter x.  Every lattice dimension
is recomputed with the window widened by p and must agree, so precision
failures surface as errors instead of wrong numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from wildcoh import ascover, linalg
from wildcoh.ascover import LatticeWindow, LocalCover
from wildcoh.gf import FieldCtx


class StabilizationError(RuntimeError):
    """A lattice dimension changed when the window was widened."""


class CertificateError(RuntimeError):
    """A basis or vanishing certificate failed to verify."""


@dataclass
class CyclicModule:
    """Finite-dimensional module over a cyclic group of order q = p^e."""

    ctx: FieldCtx
    sigma: list[list[int]]
    q: int

    @property
    def dim(self) -> int:
        return len(self.sigma)

    def validate(self) -> None:
        p = self.ctx.p
        q = self.q
        if q < 2 or p < 2:
            raise ValueError("group order must be a positive power of p")
        e = 0
        while q % p == 0:
            q //= p
            e += 1
        if q != 1 or e < 1:
            raise ValueError(f"order {self.q} is not a power of {p}")
        if self.dim and not linalg.is_identity(
            linalg.mat_pow(self.ctx, self.sigma, self.q)
        ):
            raise ValueError("generator matrix does not have the declared order")


def window_module(win: LatticeWindow) -> CyclicModule:
    return CyclicModule(ctx=win.ctx, sigma=win.sigma_matrix, q=win.p)


def periodic_cohomology(mod: CyclicModule, i: int) -> int:
    """dim H^i for i in {0, 1, 2} via the periodic complex of a cyclic group."""
    if i not in (0, 1, 2):
        raise ValueError("periodicity makes only i in {0, 1, 2} meaningful")
    mod.validate()
    ctx = mod.ctx
    dim = mod.dim
    if dim == 0:
        return 0
    ident = linalg.identity(dim)
    aug = linalg.mat_sub(ctx, mod.sigma, ident)
    if i == 0:
        return dim - linalg.rank(ctx, aug)
    norm = linalg.zeros(dim, dim)
    power = ident
    for _ in range(mod.q):
        norm = linalg.mat_add(ctx, norm, power)
        power = linalg.mat_mul(ctx, power, mod.sigma)
    if i == 1:
        return (dim - linalg.rank(ctx, norm)) - linalg.rank(ctx, aug)
    return (dim - linalg.rank(ctx, aug)) - linalg.rank(ctx, norm)


def h1_closed_form(p: int, n: int, a: int) -> int:
    """n - floor((a-1)/p) + floor((a-1-n)/p); floors toward minus infinity."""
    if gcd(n, p) != 1:
        raise ValueError(f"jump {n} must be coprime to {p}")
    return n - (a - 1) // p + (a - 1 - n) // p


def d_image_closed_form(p: int, n: int) -> int:
    """floor((n+1)(p-1)/p) - 1 - floor((n-1)/p)."""
    if gcd(n, p) != 1:
        raise ValueError(f"jump {n} must be coprime to {p}")
    return ((n + 1) * (p - 1)) // p - 1 - (n - 1) // p


@dataclass
class CohomologyClassSet:
    """Basis of coset representatives for H^1 inside one window."""

    window: LatticeWindow
    basis: list[list[int]]
    k_image: list[list[int]]

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass
class _LatticeModel:
    window: LatticeWindow
    fixed_basis: list[list[int]]
    k_image: list[list[int]]
    reps: list[list[int]]

    @property
    def dim(self) -> int:
        return len(self.reps)


def _lattice_model(cov: LocalCover, a: int, w: int) -> _LatticeModel:
    win = cov.window(a, a - w)
    ctx = win.ctx
    aug = linalg.mat_sub(ctx, win.sigma_matrix, linalg.identity(win.size))
    fixed = linalg.nullspace(ctx, aug)
    j_lo = -(-win.lo // cov.p)  # ceil(lo / p)
    j_hi = (a - 1) // cov.p
    k_image = []
    for j in range(j_lo, j_hi + 1):
        vec = win.x_truncation(j)
        if not win.is_fixed(vec):
            raise ascover.NormalFormError(f"x^{j} truncation is not sigma-fixed")
        k_image.append(vec)
    ech = linalg.RowEchelon(ctx, k_image)
    if ech.rank != len(k_image):
        raise CertificateError("x-power truncations are not independent")
    reps = []
    for vec in fixed:
        residual = ech.add(vec)
        if any(residual):
            reps.append(residual)
    return _LatticeModel(window=win, fixed_basis=fixed, k_image=k_image, reps=reps)


def _check_window_size(cov: LocalCover, w: int) -> None:
    least = cov.n + cov.p + 1
    if w < least:
        raise ValueError(f"window {w} too small; need at least n + p + 1 = {least}")


def h1_lattice(cov: LocalCover, a: int, w: int | None = None) -> CohomologyClassSet:
    """H^1 of the lattice t^a B as ker(sigma-1)/im(invariant field), in a window.

    The dimension is recomputed with the window widened by p; disagreement
    raises StabilizationError rather than returning an unreliable value.
    """
    if w is None:
        w = cov.n + cov.p + 1
    _check_window_size(cov, w)
    model = _lattice_model(cov, a, w)
    wide = _lattice_model(cov, a, w + cov.p)
    if model.dim != wide.dim:
        raise StabilizationError(
            f"h1 window did not stabilize: dim {model.dim} at W={w}, "
            f"{wide.dim} at W={w + cov.p}"
        )
    return CohomologyClassSet(window=model.window, basis=model.reps, k_image=model.k_image)


@dataclass
class BasisCertificate:
    """Certified monomial basis and vanishing classes for one lattice H^1."""

    a: int
    monomial_exponents: list[int]
    vanishing: list[tuple[int, int]]  # (exponent, x-power exhibiting the relation)
    dim: int


def h1_basis_certificate(cov: LocalCover, a: int, w: int | None = None) -> BasisCertificate:
    """Certify that {[t^i] : a-n <= i <= a-1, p does not divide i} is a basis.

    Also certifies [t^i] = 0 for p | i in the same range by exhibiting the
    truncation of x^(i/p) that agrees with t^i through degree a-1.
    """
    classes = h1_lattice(cov, a, w)
    win = classes.window
    p, n = cov.p, cov.n
    exponents = [i for i in range(a - n, a) if i % p != 0]
    ech = linalg.RowEchelon(win.ctx, classes.k_image)
    base_rank = ech.rank
    for i in exponents:
        vec = win.unit_vector(i)
        if not win.is_fixed(vec):
            raise CertificateError(f"[t^{i}] is not sigma-fixed in the window")
        ech.add(vec)
    if ech.rank - base_rank != len(exponents):
        raise CertificateError("candidate monomial classes are not independent")
    if len(exponents) != classes.dim:
        raise CertificateError(
            f"monomial classes span a space of dimension {len(exponents)}, "
            f"but H^1 has dimension {classes.dim}"
        )
    vanishing = []
    for i in range(a - n, a):
        if i % p == 0:
            j = i // p
            if win.x_truncation(j) != win.unit_vector(i):
                raise CertificateError(
                    f"x^{j} does not reduce [t^{i}]: truncations differ below t^{a}"
                )
            vanishing.append((i, j))
    return BasisCertificate(
        a=a, monomial_exponents=exponents, vanishing=vanishing, dim=classes.dim
    )


def _d_apply(model1: _LatticeModel, model2: _LatticeModel, vec: list[int]) -> list[int]:
    # h -> t^(n+1) h'; on monomials t^e -> e t^(e+n), exact.
    win1, win2 = model1.window, model2.window
    ctx = win1.ctx
    n = win1.n
    out = [0] * win2.size
    for idx, c in enumerate(vec):
        if not c:
            continue
        e = win1.lo + idx
        target = e + n
        coeff = ctx.mul(ctx.embed(e), c)
        if coeff and win2.lo <= target < win2.a:
            out[target - win2.lo] = ctx.add(out[target - win2.lo], coeff)
    return out


def _d_rank_once(cov: LocalCover, w: int) -> int:
    n = cov.n
    model1 = _lattice_model(cov, 0, w)
    model2 = _lattice_model(cov, n + 1, w + n + 2)
    ech = linalg.RowEchelon(model2.window.ctx, model2.k_image)
    base_rank = ech.rank
    for rep in model1.reps:
        image = _d_apply(model1, model2, rep)
        if not model2.window.is_fixed(image):
            raise ascover.NormalFormError(
                "differential image is not sigma-fixed (precision bug)"
            )
        ech.add(image)
    return ech.rank - base_rank


def d_image_rank(cov: LocalCover, w: int | None = None) -> int:
    """Rank of the differential H^1(G, B) -> H^1(G, B dt) by linear algebra.

    B dt is modeled as the a = n+1 lattice via h dt -> t^(n+1) h; the map
    sends a representative h to t^(n+1) h'.  Stabilization against the
    widened window is enforced as in h1_lattice.
    """
    if w is None:
        w = cov.n + cov.p + 1
    _check_window_size(cov, w)
    first = _d_rank_once(cov, w)
    second = _d_rank_once(cov, w + cov.p)
    if first != second:
        raise StabilizationError(
            f"d-image window did not stabilize: rank {first} at W={w}, "
            f"{second} at W={w + cov.p}"
        )
    return first


@lru_cache(maxsize=None)
def cached_cover(p: int, n: int, w: int | None = None) -> LocalCover:
    """Shared cover at the recommended precision for grid sweeps."""
    return ascover.build(p, n, ascover.recommended_precision(p, n, w))
