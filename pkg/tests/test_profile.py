"""Global profiles: defect, R', genus, dimension routes, serialization."""

import pytest

from wildcoh import cohom, profile
from wildcoh.profile import RamificationProfile


def rh_genus_oracle(p, g_y, jumps):
    # independent Riemann-Hurwitz arithmetic: conductor (n+1)(p-1) per point
    total = p * (2 * g_y - 2) + sum((n + 1) * (p - 1) for n in jumps)
    assert total % 2 == 0
    return total // 2 + 1


def tame_rh_oracle(m, d):
    # genus of y^m = f(x), f separable of degree d: degree-m cover of the line,
    # totally ramified over the d roots, gcd(m, d) points over infinity
    delta = __import__("math").gcd(m, d)
    total = -2 * m + d * (m - 1) + (m - delta)
    assert total % 2 == 0
    return total // 2 + 1


def test_defect_values():
    assert profile.defect(RamificationProfile(3, 0, (2,))) == 1
    assert profile.defect(RamificationProfile(3, 0, (1, 1, 1))) == 0
    assert profile.defect(RamificationProfile(2, 0, (3, 5, 7))) == 0


def test_r_prime_degree_values():
    assert profile.r_prime_degree(RamificationProfile(3, 0, (2,))) == 2
    assert profile.r_prime_degree(RamificationProfile(3, 0, ())) == 0
    assert profile.r_prime_degree(RamificationProfile(5, 0, (7,))) == 6


def test_genus_upstairs():
    assert profile.genus_upstairs(RamificationProfile(3, 1, (2,))) == 4
    prof = RamificationProfile(5, 0, (1, 1))
    assert profile.genus_upstairs(prof) == rh_genus_oracle(5, 0, (1, 1)) == 4
    assert profile.genus_upstairs(RamificationProfile(2, 0, (1,))) == 0
    with pytest.raises(ValueError):
        # free action of Z/3 on a genus-0 quotient is impossible
        profile.genus_upstairs(RamificationProfile(3, 0, ()))


def test_dims_worked_cases():
    report = profile.dims(RamificationProfile(3, 1, (2,)))
    assert (report.h0_omega_inv, report.h1_o_inv, report.h1_dr_inv) == (2, 2, 3)
    assert report.defect == 1
    assert not report.weakly_ramified

    free = profile.dims(RamificationProfile(3, 2, ()))
    assert (free.h0_omega_inv, free.h1_o_inv, free.h1_dr_inv) == (2, 2, 4)
    assert free.defect == 0 and free.deg_r_prime == 0

    small = profile.dims(RamificationProfile(3, 0, (1,)))
    assert (small.h0_omega_inv, small.h1_o_inv, small.h1_dr_inv) == (0, 0, 0)
    assert small.defect == 0 and small.weakly_ramified


def test_dims_defect_identity():
    for prof in (
        RamificationProfile(3, 1, (2,)),
        RamificationProfile(5, 2, (3, 4)),
        RamificationProfile(2, 1, (3, 5)),
        RamificationProfile(7, 0, (9, 9)),
    ):
        report = profile.dims(prof)
        assert report.h1_dr_inv == report.h0_omega_inv + report.h1_o_inv - report.defect


def test_superelliptic_profiles():
    prof = profile.superelliptic(2, 3, 3)
    assert prof.jumps == (2,) and prof.g_y == 1 == tame_rh_oracle(2, 3)

    prof = profile.superelliptic(2, 4, 3)
    assert prof.jumps == (1, 1) and prof.g_y == 1 == tame_rh_oracle(2, 4)

    prof = profile.superelliptic(3, 4, 2)
    assert prof.jumps == (3,) and prof.g_y == 3 == tame_rh_oracle(3, 4)

    with pytest.raises(ValueError):
        profile.superelliptic(3, 4, 3)  # p divides m
    with pytest.raises(ValueError):
        profile.superelliptic(2, 0, 3)


def test_main_theorem_check():
    strong = profile.main_theorem_check(RamificationProfile(3, 0, (2,)))
    assert strong.defect == 1 and not strong.weakly_ramified and strong.consistent

    weak = profile.main_theorem_check(RamificationProfile(5, 0, (1, 1)))
    assert weak.defect == 0 and weak.weakly_ramified and weak.consistent

    char2 = profile.main_theorem_check(RamificationProfile(2, 0, (3,)))
    assert char2.defect == 0 and not char2.weakly_ramified
    assert char2.consistent and char2.p2_exception


def test_defect_matches_linear_algebra():
    for prof in (
        RamificationProfile(3, 0, (2,)),
        RamificationProfile(2, 1, (3, 5)),
        RamificationProfile(5, 0, (2, 3)),
        RamificationProfile(7, 1, ()),
    ):
        assert profile.defect(prof) == profile.defect_by_linear_algebra(prof)


def test_cross_module_identity_uses_ranks_not_formulas():
    prof = RamificationProfile(5, 0, (7,))
    rank_route = cohom.d_image_rank(cohom.cached_cover(5, 7))
    assert profile.defect(prof) == rank_route == 4


def test_profile_validation():
    with pytest.raises(ValueError):
        RamificationProfile(4, 0, (1,))
    with pytest.raises(ValueError):
        RamificationProfile(3, -1, (1,))
    with pytest.raises(ValueError):
        RamificationProfile(3, 0, (3,))
    with pytest.raises(ValueError):
        RamificationProfile(3, 0, (0,))


def test_json_round_trip():
    prof = RamificationProfile(5, 2, (3, 4, 9))
    again = RamificationProfile.from_json(prof.to_json())
    assert again == prof
    assert prof.to_dict() == {"p": 5, "gY": 2, "jumps": [3, 4, 9]}
    report = profile.dims(prof).to_dict()
    assert report["h1_dR_inv"] == report["h0_omega_inv"] + report["h1_O_inv"] - report["defect"]
