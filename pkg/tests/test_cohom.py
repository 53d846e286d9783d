"""Group cohomology: closed forms, the lattice model, the differential map."""

import pytest

from wildcoh import cohom, linalg
from wildcoh.cohom import CyclicModule
from wildcoh.gf import FieldCtx

F3 = FieldCtx(3)


def test_h1_closed_form_values():
    assert cohom.h1_closed_form(3, 2, 0) == 2
    assert cohom.h1_closed_form(3, 1, 0) == 1
    assert cohom.h1_closed_form(5, 3, 1) == 2
    for p in (2, 3, 5, 7):
        assert cohom.h1_closed_form(p, 1, 1) == 0  # weakly ramified vanishing
    with pytest.raises(ValueError):
        cohom.h1_closed_form(3, 6, 0)


def test_d_image_closed_form_values():
    assert cohom.d_image_closed_form(3, 2) == 1
    assert cohom.d_image_closed_form(2, 3) == 0
    for p in (2, 3, 5, 7):
        assert cohom.d_image_closed_form(p, 1) == 0


def test_h1_lattice_matches_closed_form_small_grid():
    for p, n in ((2, 3), (3, 2), (5, 3), (7, 2)):
        cov = cohom.cached_cover(p, n)
        for a in range(-2, n + 3):
            assert cohom.h1_lattice(cov, a).dim == cohom.h1_closed_form(p, n, a)


def test_h1_representatives_span_the_monomial_classes():
    cov = cohom.cached_cover(3, 2)
    classes = cohom.h1_lattice(cov, 0)
    assert classes.dim == 2
    win = classes.window
    with_reps = linalg.RowEchelon(win.ctx, classes.k_image + classes.basis)
    with_monomials = linalg.RowEchelon(
        win.ctx, classes.k_image + [win.unit_vector(-2), win.unit_vector(-1)]
    )
    assert with_reps.rows() == with_monomials.rows()
    for rep in classes.basis:
        assert win.is_fixed(rep)
        assert not linalg.RowEchelon(win.ctx, classes.k_image).contains(rep)


def test_basis_certificate_worked_cases():
    cert = cohom.h1_basis_certificate(cohom.cached_cover(3, 2), 3)
    assert cert.monomial_exponents == [1, 2]
    assert cert.vanishing == []
    # [t^0] dies against x^0 = 1 even though 0 is below the basis range
    classes = cohom.h1_lattice(cohom.cached_cover(3, 2), 3)
    win = classes.window
    assert linalg.RowEchelon(win.ctx, classes.k_image).contains(win.unit_vector(0))

    cert2 = cohom.h1_basis_certificate(cohom.cached_cover(2, 3), 0)
    assert cert2.monomial_exponents == [-3, -1]
    assert cert2.vanishing == [(-2, -1)]

    cert3 = cohom.h1_basis_certificate(cohom.cached_cover(5, 3), 0)
    assert cert3.monomial_exponents == [-3, -2, -1]
    assert cert3.vanishing == []


def test_d_image_rank_worked_cases():
    assert cohom.d_image_rank(cohom.cached_cover(3, 2)) == 1
    assert cohom.d_image_rank(cohom.cached_cover(3, 1)) == 0
    # p = 5, n = 7: exponents -7..-1 minus p | i (-5) minus i = -n mod p (-7, -2)
    assert cohom.d_image_rank(cohom.cached_cover(5, 7)) == 4


def test_d_image_monomial_level_mapping():
    # h -> t^(n+1) h' sends t^-2 to -2 t^0 = 1 (dies against x^0) and
    # t^-1 to -t (survives) for p = 3, n = 2
    cov = cohom.cached_cover(3, 2)
    model2 = cohom._lattice_model(cov, 3, 6 + 2 + 2)
    ech = linalg.RowEchelon(model2.window.ctx, model2.k_image)
    assert ech.contains(model2.window.unit_vector(0))
    assert not ech.contains(model2.window.unit_vector(1))


def test_window_size_precondition():
    cov = cohom.cached_cover(3, 2)
    with pytest.raises(ValueError):
        cohom.h1_lattice(cov, 0, w=3)
    with pytest.raises(ValueError):
        cohom.d_image_rank(cov, w=2)


def test_periodic_cohomology_trivial_module():
    for p in (2, 3, 5, 7):
        mod = CyclicModule(ctx=FieldCtx(p), sigma=[[1]], q=p)
        assert [cohom.periodic_cohomology(mod, i) for i in (0, 1, 2)] == [1, 1, 1]


def test_periodic_cohomology_free_module():
    for p in (2, 3, 5, 7):
        ctx = FieldCtx(p)
        cycle = [[1 if i == (j + 1) % p else 0 for j in range(p)] for i in range(p)]
        mod = CyclicModule(ctx=ctx, sigma=cycle, q=p)
        assert cohom.periodic_cohomology(mod, 0) == 1
        assert cohom.periodic_cohomology(mod, 1) == 0
        assert cohom.periodic_cohomology(mod, 2) == 0


def test_periodic_cohomology_jordan_block():
    mod = CyclicModule(ctx=F3, sigma=[[1, 1], [0, 1]], q=3)
    assert cohom.periodic_cohomology(mod, 0) == 1
    assert cohom.periodic_cohomology(mod, 1) == 1
    # norm = (sigma - 1)^2 vanishes on a size-2 block, so H^2 = ker(sigma-1)
    assert cohom.periodic_cohomology(mod, 2) == 1
    with pytest.raises(ValueError):
        cohom.periodic_cohomology(mod, 3)


def test_cyclic_module_validation():
    with pytest.raises(ValueError):
        CyclicModule(ctx=F3, sigma=[[2]], q=3).validate()  # order 2, not 3
    with pytest.raises(ValueError):
        CyclicModule(ctx=F3, sigma=[[1]], q=6).validate()  # 6 is not a power of 3
    cohom.window_module(cohom.cached_cover(3, 2).window(0, -6)).validate()


def test_closed_form_monotone_sanity():
    for p in (2, 3, 5, 7):
        for n in range(1, 10):
            if n % p == 0:
                continue
            for a in range(-3, n + 4):
                value = cohom.h1_closed_form(p, n, a)
                assert 0 <= value <= n
