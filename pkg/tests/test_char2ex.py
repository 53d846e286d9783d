"""The order-24 automorphism group of y^2 + y = x^3 and its invariants.

Ramification orders come from honest series arithmetic; the involution's
order 4 is cross-checked against the symbolic closed form x^-2 and, as an
independent global oracle, against Riemann-Hurwitz for the quotient map,
which only balances with the computed filtration.
"""

import math
import random

import pytest

from wildcoh import char2ex, linalg
from wildcoh.char2ex import F4, IDENTITY, OMEGA, AutTriple

OMEGA2 = 3


def test_enumeration():
    group = char2ex.enumerate_group()
    assert len(group) == 24
    assert len(set(group)) == 24
    assert all(g.is_valid() for g in group)
    assert sorted(g.t for g in group if g.r == 0 and g.u == 1) == [0, 1]
    assert sum(1 for g in group if g.u == 1) == 8


def test_compose_worked_values():
    inv = AutTriple(1, 0, 1)
    assert char2ex.compose(inv, inv) == IDENTITY
    w = AutTriple(OMEGA, 0, 0)
    assert char2ex.compose(char2ex.compose(w, w), w) == IDENTITY


def test_closure_and_group_axioms():
    group = char2ex.enumerate_group()
    members = set(group)
    for g in group:
        for h in group:
            assert char2ex.compose(g, h) in members
    rng = random.Random(11)
    for _ in range(10000):
        g, h, k = (group[rng.randrange(24)] for _ in range(3))
        assert char2ex.compose(char2ex.compose(g, h), k) == char2ex.compose(
            g, char2ex.compose(h, k)
        )
    for g in group:
        assert char2ex.compose(g, char2ex.inverse(g)) == IDENTITY
        assert char2ex.compose(char2ex.inverse(g), g) == IDENTITY


def test_rep_matrices():
    assert char2ex.rep(AutTriple(1, 0, 1)) == [[1, 1], [0, 1]]
    squared = linalg.mat_mul(F4, char2ex.rep(AutTriple(1, 0, 1)), char2ex.rep(AutTriple(1, 0, 1)))
    assert squared == linalg.identity(2)
    w_mat = char2ex.rep(AutTriple(OMEGA, 0, 0))
    assert w_mat == [[OMEGA2, 0], [0, OMEGA]]
    assert linalg.mat_pow(F4, w_mat, 3) == linalg.identity(2)


def test_rep_is_not_a_homomorphism():
    # independent minimal counterexample, convention-free because it is a
    # self-composition: g o g is the central involution for g = (1, 1, w),
    # but rep(g)^2 is the identity while rep(g o g) is a Jordan block
    g = AutTriple(1, 1, OMEGA)
    assert char2ex.compose(g, g) == AutTriple(1, 0, 1)
    assert linalg.mat_mul(F4, char2ex.rep(g), char2ex.rep(g)) == linalg.identity(2)
    assert char2ex.rep(AutTriple(1, 0, 1)) != linalg.identity(2)

    check = char2ex.rep_homomorphism_check()
    assert not check.holds
    assert check.pairs_checked == 576
    assert (g, g) in check.failures
    assert not char2ex.rep_is_homomorphism()


def test_rep_kernel_is_trivial():
    assert char2ex.rep_kernel() == [IDENTITY]


def test_indecomposability_certificate():
    cert = char2ex.indecomposability_certificate()
    assert cert.first_line_stable
    assert cert.indecomposable
    assert AutTriple(1, 0, 1) in cert.witnesses
    for zeta in (OMEGA, OMEGA2):
        assert AutTriple(1, 1, zeta) in cert.witnesses
    # the u = 1 (quaternion) restriction is already inconsistent
    assert cert.q8_witnesses


def test_expansion_at_infinity():
    x, y = char2ex.expand_at_infinity(32)
    assert x.valuation() == -2
    assert y.valuation() == -3
    # w = t^3 + t^6 + t^12 + ... gives y = t^-3 + 1 + t^3 + t^9 + ...
    for e, c in ((-3, 1), (0, 1), (3, 1), (9, 1)):
        assert y.coefficient(e) == c
    assert y.coefficient(6) == 0
    residue = y * y + y - x * x * x
    assert residue.is_zero
    with pytest.raises(ValueError):
        char2ex.expand_at_infinity(8)


def test_ramification_orders():
    assert char2ex.ramification_order(AutTriple(OMEGA, 0, 0)) == 1
    for zeta in (OMEGA, OMEGA2):
        assert char2ex.ramification_order(AutTriple(1, 1, zeta)) == 2
    assert char2ex.ramification_order(AutTriple(1, 0, 1)) == 4
    with pytest.raises(ValueError):
        char2ex.ramification_order(IDENTITY)


def test_involution_order_matches_symbolic_form_at_two_precisions():
    # symbolic evaluation of g(t) - t at (1, 0, 1): numerator x, denominator
    # y^2 + y = x^3, so the difference is x^-2 of order 4
    x, _ = char2ex.expand_at_infinity(32)
    assert (x ** -2).valuation() == 4
    assert char2ex.ramification_order(AutTriple(1, 0, 1), prec=16) == 4
    assert char2ex.ramification_order(AutTriple(1, 0, 1), prec=32) == 4


def test_order_counts_per_case():
    group = char2ex.enumerate_group()
    orders = {g: char2ex.ramification_order(g) for g in group if g != IDENTITY}
    assert sum(1 for g, o in orders.items() if g.u != 1) == 16
    assert all(o == 1 for g, o in orders.items() if g.u != 1)
    six = [g for g in orders if g.u == 1 and g.r != 0]
    assert len(six) == 6 and all(orders[g] == 2 for g in six)
    assert all(o is not math.inf for o in orders.values())


def test_ramification_constant_on_conjugacy_classes():
    for cls in char2ex.conjugacy_classes():
        if cls == [IDENTITY]:
            continue
        orders = {char2ex.ramification_order(g) for g in cls}
        assert len(orders) == 1


def test_filtration_report():
    report = char2ex.filtration_report()
    assert report.group_order == 24
    assert report.filtration_sizes() == [24, 8, 2, 2, 1]
    assert report.sylow2_structure == "Q8"
    assert report.indecomposable
    assert any("G_2" in flag for flag in report.paper_discrepancies)
    assert any("ord(g(t) - t) = 2" in flag for flag in report.paper_discrepancies)
    assert any("not multiplicative" in flag for flag in report.paper_discrepancies)
    payload = report.to_dict()
    assert payload["filtration"][0] == {"i": 0, "size": 24}


def test_sylow_has_single_involution():
    table = char2ex.group_table()
    sylow = [g for g in table.elements if g.u == 1]
    counts = {}
    for g in sylow:
        counts[table.element_order(g)] = counts.get(table.element_order(g), 0) + 1
    assert counts == {1: 1, 2: 1, 4: 6}


def test_riemann_hurwitz_balances_only_with_computed_filtration():
    # quotient of the elliptic curve by all 24 automorphisms is rational;
    # besides infinity, the eight affine GF(4)-points form one orbit with
    # tame stabilizers of order 3 (conductor 2 each)
    sizes = char2ex.filtration_report().filtration_sizes()
    d_infinity = sum(s - 1 for s in sizes)
    assert d_infinity == 32
    total = 24 * (2 * 0 - 2) + d_infinity + 8 * 2
    assert total == 2 * 1 - 2
    # the claimed filtration [24, 8, 1] would give conductor 30 and not balance
    assert 24 * (2 * 0 - 2) + 30 + 8 * 2 != 0
