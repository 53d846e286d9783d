"""Acceptance gate: every stated criterion, one pass/fail line each.

Two tests are EXPECTED TO FAIL and are deliberately not marked xfail,
because the criteria they implement assert mathematically false claims
and the suite must say so out loud rather than smooth them over:

* test_criterion_7b_rep_homomorphism - the stated 2x2 action matrices are
  not multiplicative (the u = 1 subgroup is quaternion; every order-4
  element squares to the involution whose stated matrix is not a square
  of the element's matrix);
* test_criterion_8b_additive_implies_splits - right-exactness of
  invariants does not force splitting: 0 -> J2 -> J3 + J1 -> J2 -> 0
  over k[Z/3] is a counterexample (see tests/test_modrep.py, where the
  absence of a stable complement is verified by brute force).

The decisions ledger carries the full analyses.  Everything else must
pass; run `wildcoh verify-all` for the same checks from the CLI.
"""

import pytest

from wildcoh import acceptance


@pytest.fixture(scope="module")
def results():
    collected = acceptance.run()
    return _index(collected)


def _index(collected):
    by_id = {}
    for result in collected:
        by_id.setdefault(result.criterion, []).append(result)
    return by_id


def _assert_all(results, cid):
    for result in results[cid]:
        print(result.line())
        assert result.passed, result.line()


def test_criterion_1_h1_oracle_equivalence(results):
    _assert_all(results, "1")


def test_criterion_2_d_image_oracle_equivalence(results):
    _assert_all(results, "2")


def test_criterion_3_main_theorem_desk_scale(results):
    _assert_all(results, "3")


def test_criterion_4_defect_identity(results):
    _assert_all(results, "4")


def test_criterion_5_dimension_concordance(results):
    _assert_all(results, "5")


def test_criterion_6_normal_form_identities(results):
    _assert_all(results, "6")


def test_criterion_7a_group_closure(results):
    _assert_all(results, "7a")


def test_criterion_7b_rep_homomorphism(results):
    # implemented faithfully as stated; fails, see module docstring
    _assert_all(results, "7b")


def test_criterion_7c_indecomposability(results):
    _assert_all(results, "7c")


def test_criterion_7d_ramification_orders(results):
    _assert_all(results, "7d")


def test_criterion_7e_filtration_sizes(results):
    _assert_all(results, "7e")


def test_criterion_8a_splits_implies_additive(results):
    _assert_all(results, "8a")


def test_criterion_8b_additive_implies_splits(results):
    # implemented faithfully as stated; fails, see module docstring
    _assert_all(results, "8b")


def test_criterion_8c_averaging(results):
    _assert_all(results, "8c")


def test_criterion_9_free_module_acyclicity(results):
    _assert_all(results, "9")
