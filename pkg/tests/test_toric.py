# tests/test_toric.py
from fractions import Fraction

import pytest

from src.models.base import DomainError
from src.models.lattice import LatticeVector
from src.models.toric import (
    ToricDivisor,
    ToricSurface,
    ToricValuation,
    anticanonical_divisor,
    anticanonical_volume,
    binomial_chi,
    gorenstein_index,
    hilbert,
    hilbert_series,
    is_ample,
    is_isomorphic,
    locate,
    log_discrepancy,
    self_intersection,
    star_subdivide,
    toric_divisor_class_sq,
    wps,
    wps_weights,
)


def _fan(*rays: tuple[int, int]) -> ToricSurface:
    return ToricSurface(rays=tuple(LatticeVector(x, y) for x, y in rays))


class TestToricSurface:
    """Validation of complete fans."""

    def test_plane(self, plane):
        assert len(plane) == 3  # noqa: PLR2004
        assert plane.is_smooth
        assert plane.cones() == [(0, 1), (1, 2), (2, 0)]

    @pytest.mark.parametrize(
        ("rays", "code"),
        [
            (((1, 0), (0, 1)), "incomplete_fan"),
            (((2, 0), (0, 1), (-1, -1)), "not_primitive"),
            (((1, 0), (-1, -1), (0, 1)), "incomplete_fan"),
            (((1, 0), (0, 1), (-1, 0)), "incomplete_fan"),
        ],
    )
    def test_invalid_fans(self, rays, code):
        with pytest.raises(DomainError) as excinfo:
            _fan(*rays)
        assert excinfo.value.code == code

    def test_dict_round_trip(self, p114):
        assert ToricSurface.from_dict(p114.to_dict()) == p114

    def test_from_malformed_dict(self):
        with pytest.raises(DomainError) as excinfo:
            ToricSurface.from_dict({"rays": [[1, 0, 2]]})
        assert excinfo.value.code == "bad_fan"


class TestWeightedProjectivePlanes:
    def test_plane_rays(self, plane):
        assert [v.to_list() for v in plane.rays] == [[1, 0], [0, 1], [-1, -1]]

    def test_p114_rays(self, p114):
        assert [v.to_list() for v in p114.rays] == [[4, -1], [0, 1], [-1, 0]]
        assert p114.name == "P(1,1,4)"

    @pytest.mark.parametrize("weights", [(1, 1, 1), (1, 1, 4), (1, 4, 25), (2, 3, 5)])
    def test_weights_recovered(self, weights):
        assert wps_weights(wps(*weights)) == weights

    def test_not_well_formed(self):
        with pytest.raises(DomainError) as excinfo:
            wps(2, 2, 1)
        assert excinfo.value.code == "not_well_formed"
        assert excinfo.value.context["pair"] == [0, 1]

    def test_nonpositive_weight(self):
        with pytest.raises(DomainError):
            wps(0, 1, 1)

    @pytest.mark.parametrize(
        "weights", [(1, 1, 1), (1, 1, 4), (1, 4, 25), (1, 2, 3), (2, 3, 5)]
    )
    def test_volume_formula(self, weights):
        # (a0 + a1 + a2)^2 / (a0 a1 a2)
        surface = wps(*weights)
        a0, a1, a2 = weights
        expected = Fraction((a0 + a1 + a2) ** 2, a0 * a1 * a2)
        assert anticanonical_volume(surface, ToricDivisor.zero(surface)) == expected


class TestIntersections:
    def test_plane_self_intersections(self, plane):
        assert [self_intersection(plane, i) for i in range(3)] == [1, 1, 1]

    def test_p114_self_intersections(self, p114):
        assert sorted(self_intersection(p114, i) for i in range(3)) == [
            Fraction(1, 4),
            Fraction(1, 4),
            Fraction(4),
        ]

    def test_hirzebruch_negative_curve(self, hirzebruch_f1):
        assert self_intersection(hirzebruch_f1, 1) == -1

    def test_hirzebruch_f4(self):
        f4 = _fan((1, 0), (0, 1), (-1, 4), (0, -1))
        assert self_intersection(f4, 1) == -4  # noqa: PLR2004

    @pytest.mark.parametrize("name", ["plane", "f1", "f4", "blown_up_f1"])
    def test_smooth_fans_satisfy_the_wall_relation(self, plane, hirzebruch_f1, name):
        surfaces = {
            "plane": plane,
            "f1": hirzebruch_f1,
            "f4": _fan((1, 0), (0, 1), (-1, 4), (0, -1)),
            "blown_up_f1": star_subdivide(hirzebruch_f1, LatticeVector(1, 2)),
        }
        surface = surfaces[name]
        assert surface.is_smooth

        for i in range(len(surface.rays)):
            square = self_intersection(surface, i)
            assert square.denominator == 1
            # v_prev + v_next = -D^2 v_rho
            rebuilt = surface.ray(i).scale(-int(square)) + -surface.ray(i - 1)
            assert rebuilt == surface.ray(i + 1)

    def test_weighted_blowup_of_a_smooth_point(self, plane, zero_boundary):
        ray = LatticeVector(2, 3)
        blowup = star_subdivide(plane, ray)
        index = blowup.ray_index(ray)

        assert index is not None
        assert self_intersection(blowup, index) == Fraction(-1, 6)
        weight = ToricValuation.of(2, 3)
        assert log_discrepancy(plane, zero_boundary, weight) == 5  # noqa: PLR2004

    def test_divisor_class_square(self, plane):
        anticanonical = anticanonical_divisor(plane)
        assert toric_divisor_class_sq(plane, anticanonical) == 9  # noqa: PLR2004
        line = ToricDivisor.of([0, 0, 1])
        assert toric_divisor_class_sq(plane, line) == 1

    def test_boundary_lowers_volume(self, plane):
        half_line = ToricDivisor.of([0, 0, "1/2"])
        assert anticanonical_volume(plane, half_line) == Fraction(25, 4)


class TestDiscrepancies:
    def test_locate(self, plane):
        i, j, alpha, beta = locate(plane, (1, 1))
        assert (i, j, alpha, beta) == (0, 1, 1, 1)

    def test_log_discrepancy_of_blowup(self, plane, zero_boundary):
        blowup = ToricValuation.of(1, 1)
        assert log_discrepancy(plane, zero_boundary, blowup) == 2  # noqa: PLR2004

    def test_log_discrepancy_with_boundary(self, plane):
        boundary = ToricDivisor.of(["1/2", 0, 0])
        line = ToricValuation.of(1, 0)
        assert log_discrepancy(plane, boundary, line) == Fraction(1, 2)

    def test_log_discrepancy_on_singular_cone(self, p114):
        valuation = ToricValuation.of(1, 0)
        boundary = ToricDivisor.zero(p114)
        assert log_discrepancy(p114, boundary, valuation) == Fraction(1, 2)

    @pytest.mark.parametrize("name", ["plane", "p114", "f1", "p1_4_25"])
    def test_rays_have_log_discrepancy_one(self, plane, p114, hirzebruch_f1, name):
        surfaces = {
            "plane": plane,
            "p114": p114,
            "f1": hirzebruch_f1,
            "p1_4_25": wps(1, 4, 25),
        }
        surface = surfaces[name]
        boundary = ToricDivisor.zero(surface)

        for v in surface.rays:
            assert log_discrepancy(surface, boundary, ToricValuation.of(v.x, v.y)) == 1

    def test_coefficient_above_one(self, plane):
        with pytest.raises(DomainError):
            log_discrepancy(plane, ToricDivisor.of([2, 0, 0]), ToricValuation.of(1, 0))

    def test_divisor_length_mismatch(self, plane):
        with pytest.raises(DomainError) as excinfo:
            log_discrepancy(plane, ToricDivisor.of([0, 0]), ToricValuation.of(1, 0))
        assert excinfo.value.code == "bad_divisor"


class TestGorensteinIndex:
    @pytest.mark.parametrize(
        ("weights", "index"),
        [((1, 1, 1), 1), ((1, 1, 4), 2), ((1, 4, 25), 10), ((1, 25, 169), 65)],
    )
    def test_markov_surfaces(self, weights, index):
        assert gorenstein_index(wps(*weights)) == index

    def test_smooth_surfaces(self, hirzebruch_f1):
        assert gorenstein_index(hirzebruch_f1) == 1


class TestHilbertFunctions:
    def test_plane_series(self, plane):
        series = hilbert_series(plane, anticanonical_divisor(plane), 3)
        # h^0(O(3m)) for m = 0..3
        assert series == [1, 10, 28, 55]

    def test_binomial_chi_differs(self, plane):
        assert binomial_chi(2) == 10  # noqa: PLR2004
        assert hilbert(plane, anticanonical_divisor(plane), 2) == 28  # noqa: PLR2004

    def test_series_starts_at_one(self, p114):
        series = hilbert_series(p114, anticanonical_divisor(p114), 4)
        assert series[0] == 1
        assert all(a < b for a, b in zip(series, series[1:], strict=False))

    def test_gorenstein_second_difference_is_the_volume(self, plane, hirzebruch_f1):
        for surface in (plane, hirzebruch_f1):
            volume = anticanonical_volume(surface, ToricDivisor.zero(surface))
            h = hilbert_series(surface, anticanonical_divisor(surface), 16)
            for m in range(1, 16):
                assert h[m + 1] - 2 * h[m] + h[m - 1] == volume

    def test_index_two_step_two_difference(self, p114):
        # period-2 quasi-polynomial: only the leading term survives
        volume = anticanonical_volume(p114, ToricDivisor.zero(p114))
        h = hilbert_series(p114, anticanonical_divisor(p114), 16)
        for m in range(13):
            assert h[m + 4] - 2 * h[m + 2] + h[m] == 4 * volume


class TestAmpleness:
    def test_anticanonical_is_ample(self, plane, p114, hirzebruch_f1):
        for surface in (plane, p114, hirzebruch_f1):
            assert is_ample(surface, anticanonical_divisor(surface))

    def test_pullback_is_not_ample(self, hirzebruch_f1):
        # the pullback of a line from P^2 is trivial on the exceptional curve
        assert not is_ample(hirzebruch_f1, ToricDivisor.of([0, 0, 0, 1]))


class TestFanOperations:
    def test_star_subdivision_gives_f1(self, plane, hirzebruch_f1):
        blowup = star_subdivide(plane, LatticeVector(1, 1))

        assert len(blowup) == 4  # noqa: PLR2004
        assert is_isomorphic(blowup, hirzebruch_f1)

    def test_subdivide_existing_ray(self, plane):
        with pytest.raises(DomainError) as excinfo:
            star_subdivide(plane, LatticeVector(1, 0))
        assert excinfo.value.code == "already_a_ray"

    def test_subdivide_non_primitive(self, plane):
        with pytest.raises(DomainError) as excinfo:
            star_subdivide(plane, LatticeVector(2, 2))
        assert excinfo.value.code == "not_primitive"

    def test_isomorphism_up_to_gl2z(self, plane):
        other = _fan((1, 1), (-1, 0), (0, -1))
        assert is_isomorphic(plane, other)

    def test_non_isomorphic(self, plane, p114):
        assert not is_isomorphic(plane, p114)
