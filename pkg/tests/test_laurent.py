"""Truncated Laurent series: ring laws, precision honesty, Hensel roots.

Derived expectations are checked against independent oracles computed in
the test itself: re-multiplication for inverses and roots, the Leibniz
identity for derivatives, and homomorphy for substitution.
"""

import random
from math import gcd

import pytest

from wildcoh.gf import FieldCtx
from wildcoh.laurent import InsufficientPrecisionError, LaurentSeries

F2 = FieldCtx(2)
F3 = FieldCtx(3)
F5 = FieldCtx(5)
F7 = FieldCtx(7)
F4 = FieldCtx(2, (1, 1, 1))


def series(ctx, terms, prec):
    return LaurentSeries.from_terms(ctx, terms, prec)


def random_series(ctx, rng, prec=16, unit=False):
    val = 0 if unit else rng.randint(-3, 3)
    coeffs = [rng.randrange(ctx.q) for _ in range(prec - val)]
    if unit or rng.random() < 0.9:
        coeffs[0] = rng.randrange(1, ctx.q)
    return LaurentSeries(ctx, val, coeffs, prec)


def test_invert_monomial_shifts_precision():
    t = LaurentSeries.monomial(F3, 1, 10)
    inv = t.invert()
    assert inv.valuation() == -1
    assert inv.coefficient(-1) == 1
    assert inv.prec == 8  # prec - 2 * val


def test_difference_of_squares():
    one = LaurentSeries.one(F5, 8)
    t = LaurentSeries.monomial(F5, 1, 8)
    assert (one + t) * (one - t) == series(F5, {0: 1, 2: 4}, 8)


def test_geometric_series_by_remultiplication():
    one = LaurentSeries.one(F3, 12)
    t = LaurentSeries.monomial(F3, 1, 12)
    g = (one + t) ** -1
    # frozen head of the alternating geometric series mod 3
    assert [g.coefficient(i) for i in range(4)] == [1, 2, 1, 2]
    assert (g * (one + t)).agrees(LaurentSeries.one(F3, 11))


def test_derivative_term_rule():
    d = LaurentSeries.monomial(F3, -2, 6).derivative()
    assert d == series(F3, {-3: 1}, 5)  # -2 = 1 mod 3
    for ctx in (F2, F3, F5, F7):
        tp = LaurentSeries.monomial(ctx, ctx.p, 10)
        assert tp.derivative().is_zero
    f = series(F5, {0: 1, 1: 1, 2: 1}, 9)
    assert f.derivative() == series(F5, {0: 1, 1: 2}, 8)


def test_substitute_worked_values():
    g = series(F5, {1: 1, 2: 1}, 10)  # t + t^2
    f = LaurentSeries.monomial(F5, 2, 10)
    assert f.substitute(g) == series(F5, {2: 1, 3: 2, 4: 1}, 10)

    h = series(F3, {1: 1, 2: 1}, 10)  # t(1 + t)
    composed = LaurentSeries.monomial(F3, -1, 10).substitute(h)
    # oracle: the composite is 1/h, so h * composite must be 1
    assert (h * composed).agrees(LaurentSeries.one(F3, 8))
    assert composed.valuation() == -1
    assert [composed.coefficient(i) for i in (-1, 0, 1)] == [1, 2, 1]


def test_substitute_identity_and_homomorphism():
    rng = random.Random(31)
    for ctx in (F3, F5, F4):
        ident = LaurentSeries.monomial(ctx, 1, 14)
        for _ in range(40):
            f = random_series(ctx, rng, 14)
            assert f.substitute(ident) == f
            g = random_series(ctx, rng, 14)
            h = random_series(ctx, rng, 14, unit=True).shift(1)
            lhs = (f * g).substitute(h)
            rhs = f.substitute(h) * g.substitute(h)
            assert lhs.agrees(rhs)
            assert (f + g).substitute(h).agrees(f.substitute(h) + g.substitute(h))


def test_substitute_requires_valuation_one():
    f = LaurentSeries.one(F3, 8)
    with pytest.raises(ValueError):
        f.substitute(LaurentSeries.monomial(F3, 2, 8))
    with pytest.raises(ValueError):
        f.substitute(LaurentSeries.zero(F3, 8))


def test_nth_root_of_one_plus_tn():
    for ctx in (F3, F5, F7):
        for n in range(1, 7):
            if n % ctx.p == 0:
                continue
            f = series(ctx, {0: 1, n: 1}, 4 * n + 2)
            root = f.nth_root(n)
            assert root.coefficient(0) == 1
            for e in range(1, n):
                assert root.coefficient(e) == 0
            assert root.coefficient(n) == ctx.inv(ctx.embed(n))
            assert (root ** n).agrees(f)


def test_nth_root_worked_values():
    t2 = LaurentSeries.monomial(F3, 2, 10)
    assert t2.nth_root(2) == LaurentSeries.monomial(F3, 1, 9)
    one = LaurentSeries.one(F7, 10)
    assert one.nth_root(5) == one


def test_nth_root_random_roundtrip():
    rng = random.Random(55)
    for ctx in (F2, F3, F5, F7):
        for n in range(1, 7):
            if n % ctx.p == 0:
                continue
            for _ in range(100):
                base = random_series(ctx, rng, 18, unit=True)
                f = (base ** n).shift(n * rng.randint(-1, 1))
                root = f.nth_root(n)
                assert (root ** n).agrees(f)


def test_nth_root_preconditions():
    with pytest.raises(ValueError):
        LaurentSeries.monomial(F3, 1, 8).nth_root(2)  # valuation not divisible
    with pytest.raises(ValueError):
        LaurentSeries.one(F3, 8).nth_root(3)  # index divisible by p
    with pytest.raises(ValueError):
        LaurentSeries.zero(F3, 8).nth_root(2)


def test_double_inversion_roundtrip():
    rng = random.Random(77)
    for ctx in (F3, F5, F4):
        for _ in range(50):
            f = random_series(ctx, rng, 15)
            if f.is_zero:
                continue
            assert f.invert().invert().agrees(f)


def test_product_rule():
    rng = random.Random(99)
    for ctx in (F2, F3, F5):
        for _ in range(50):
            f = random_series(ctx, rng, 14)
            g = random_series(ctx, rng, 14)
            lhs = (f * g).derivative()
            rhs = f.derivative() * g + f * g.derivative()
            assert lhs.agrees(rhs)


def test_precision_is_never_fabricated():
    f = series(F3, {0: 1, 1: 1}, 5)
    with pytest.raises(InsufficientPrecisionError):
        f.coefficient(5)
    with pytest.raises(InsufficientPrecisionError):
        f.truncate(6)
    g = f * LaurentSeries.monomial(F3, 2, 4)  # prec min(5 + 2, 4 + 0) = 4
    assert g.prec == 4
    assert (f - f).is_zero


def test_invert_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        LaurentSeries.zero(F3, 6).invert()
    with pytest.raises(ZeroDivisionError):
        LaurentSeries.zero(F3, 6) ** -1


def test_context_mismatch_rejected():
    with pytest.raises(ValueError):
        LaurentSeries.one(F3, 5) + LaurentSeries.one(F5, 5)


def test_scale_and_shift():
    f = series(F4, {0: 1, 1: 2}, 6)
    assert f.scale(2) == series(F4, {0: 2, 1: F4.mul(2, 2)}, 6)
    assert f.shift(3) == series(F4, {3: 1, 4: 2}, 9)
