import numpy as np
import pytest
from scipy.special import ellipe, ellipk

from riptsim._kernels import numpy_backend
from riptsim.geometry import CoilShape, WireSpec, build_coil, transform_coil
from riptsim.magnetics import (MU0, IntegrationSettings, LinkInductances,
                               MagneticsError, coupling_coefficient,
                               link_inductances, mutual_inductance,
                               self_inductance)

WIRE = WireSpec(cross_section_radius=0.75e-3)


def coaxial_loop_mutual(r1, r2, d):
    """Analytic mutual inductance of two coaxial circular loops.

    Maxwell's formula with complete elliptic integrals; independent of the
    segment-pair quadrature path.
    """
    k2 = 4.0 * r1 * r2 / ((r1 + r2) ** 2 + d ** 2)
    k = np.sqrt(k2)
    return MU0 * np.sqrt(r1 * r2) * ((2.0 / k - k) * ellipk(k2)
                                     - (2.0 / k) * ellipe(k2))


def loop(radius, z=0.0, y=0.0, turns=1, pitch=0.0, wire=WIRE, segments=None):
    coil = build_coil(CoilShape.circle(2 * radius, turns, pitch), wire, segments)
    if z or y:
        coil = transform_coil(coil, translation=(0.0, y, z))
    return coil


class TestMutualInductance:
    @pytest.mark.parametrize("d", [0.1, 0.25, 0.5, 1.0, 2.0])
    def test_coaxial_loops_match_elliptic_oracle(self, d):
        m = mutual_inductance(loop(0.5), loop(0.5, z=d))
        assert m == pytest.approx(coaxial_loop_mutual(0.5, 0.5, d), rel=5e-3)

    def test_far_field_decay(self):
        ms = [mutual_inductance(loop(0.5), loop(0.5, z=d))
              for d in (1.0, 2.0, 5.0, 10.0)]
        assert all(a > b > 0 for a, b in zip(ms, ms[1:]))
        assert ms[-1] < 1e-9  # collapsed from the ~1.5e-6 H design point

    def test_octagon_pair_reference_band(self):
        tx = build_coil(CoilShape.octagon(1.0, 5, 0.01), WIRE)
        rx = transform_coil(build_coil(CoilShape.octagon(1.0, 5, 0.01), WIRE),
                            translation=(0.0, 0.0, 1.0))
        m = mutual_inductance(tx, rx)
        assert m == pytest.approx(1.4525e-6, rel=0.15)

    def test_reciprocity(self):
        a = build_coil(CoilShape.octagon(1.0, 3, 0.01), WIRE)
        b = transform_coil(build_coil(CoilShape.circle(0.8, 2, 0.01), WIRE),
                           translation=(0.1, 0.2, 0.7))
        mab = mutual_inductance(a, b)
        mba = mutual_inductance(b, a)
        assert abs(mab - mba) / abs(mab) < 1e-10

    def test_translation_invariance_of_pair(self):
        a = loop(0.5)
        b = loop(0.5, z=1.0)
        m0 = mutual_inductance(a, b)
        shift = (0.3, -1.2, 2.5)
        m1 = mutual_inductance(transform_coil(a, shift),
                               transform_coil(b, shift))
        assert abs(m1 - m0) / abs(m0) < 1e-10

    def test_monotone_decay_with_separation(self):
        seps = np.linspace(0.1, 5.0, 25)
        ms = [mutual_inductance(loop(0.5), loop(0.5, z=d)) for d in seps]
        assert all(a > b for a, b in zip(ms, ms[1:]))

    def test_overlapping_coils_rejected(self):
        a = loop(0.5)
        b = loop(0.5, z=1e-4)  # closer than the wire clearance
        with pytest.raises(MagneticsError):
            mutual_inductance(a, b)

    def test_scale_law(self):
        # scaling all geometry by alpha scales M by alpha
        m1 = mutual_inductance(loop(0.5), loop(0.5, z=1.0))
        m2 = mutual_inductance(loop(1.0), loop(1.0, z=2.0))
        assert m2 / m1 == pytest.approx(2.0, rel=0.01)


class TestSelfInductance:
    def test_single_loop_matches_textbook_formula(self):
        # L = mu0 R (ln(8R/rho) - 2) for a thin circular loop
        rho = 0.75e-3
        expected = MU0 * 0.5 * (np.log(8 * 0.5 / rho) - 2.0)
        assert expected == pytest.approx(4.135e-6, rel=1e-3)
        l = self_inductance(loop(0.5))
        assert l == pytest.approx(expected, rel=0.02)

    def test_five_turn_reference_band(self):
        coil = build_coil(CoilShape.circle(1.0, 5, 0.01), WIRE)
        assert self_inductance(coil) == pytest.approx(63.15e-6, rel=0.10)

    def test_convergence_under_refinement(self):
        shape = CoilShape.circle(1.0, 5, 0.01)
        l64 = self_inductance(build_coil(shape, WIRE, 64))
        l128 = self_inductance(build_coil(shape, WIRE, 128))
        assert abs(l128 - l64) / l64 < 0.005

    def test_positivity(self):
        for shape in (CoilShape.circle(0.3, 1), CoilShape.octagon(1.0, 5, 0.01),
                      CoilShape.polygon(6, 0.5, 2, 0.005)):
            assert self_inductance(build_coil(shape, WIRE)) > 0

    def test_scale_law(self):
        # doubling every length, wire radius included, doubles L
        l1 = self_inductance(loop(0.5))
        l2 = self_inductance(loop(1.0, wire=WireSpec(1.5e-3)))
        assert l2 / l1 == pytest.approx(2.0, rel=0.01)

    def test_segment_shorter_than_wire_rejected(self):
        fat = WireSpec(cross_section_radius=0.2)  # 0.4 m diameter wire
        with pytest.raises(MagneticsError):
            self_inductance(build_coil(CoilShape.circle(1.0, 1), fat, 256))

    def test_internal_inductance_option_adds_quarter_term(self):
        coil = loop(0.5)
        base = self_inductance(coil)
        with_internal = self_inductance(
            coil, IntegrationSettings(include_internal_inductance=True))
        extra = MU0 / (8 * np.pi) * np.sum(coil.segment_lengths)
        assert with_internal - base == pytest.approx(extra, rel=1e-9)


class TestCoupling:
    def test_reference_value(self):
        k = coupling_coefficient(63.15e-6, 65.73e-6, 1.4525e-6)
        assert k == pytest.approx(0.022544, abs=1e-6)

    def test_zero_mutual(self):
        assert coupling_coefficient(1e-6, 1e-6, 0.0) == 0.0

    def test_perfect_coupling(self):
        assert coupling_coefficient(1e-6, 1e-6, 1e-6) == pytest.approx(1.0)

    def test_rejects_nonpositive_inductance(self):
        with pytest.raises(MagneticsError):
            coupling_coefficient(0.0, 1e-6, 1e-7)

    def test_link_invariants(self):
        with pytest.raises(MagneticsError):
            LinkInductances(1e-6, 1e-6, 2e-6, 2.0)
        with pytest.raises(MagneticsError):
            LinkInductances(1e-6, 1e-6, 1e-7, 0.5)  # k inconsistent with M

    def test_link_from_pair_is_physical(self):
        link = link_inductances(loop(0.5), loop(0.5, z=0.3))
        assert 0 < link.coupling < 1
        assert link.coupling == pytest.approx(
            link.mutual / np.sqrt(link.L_primary * link.L_secondary),
            rel=1e-12)


class TestSettings:
    def test_invalid_settings_rejected(self):
        with pytest.raises(MagneticsError):
            IntegrationSettings(quadrature_points_per_segment=0)
        with pytest.raises(MagneticsError):
            IntegrationSettings(min_center_distance_for_midpoint_rule=-1.0)

    def test_forced_midpoint_distance_changes_path_not_result(self):
        # pushing the quadrature threshold out refines far pairs too;
        # result must stay within quadrature tolerance
        a, b = loop(0.5), loop(0.5, z=0.5)
        m_auto = mutual_inductance(a, b)
        m_fine = mutual_inductance(
            a, b, IntegrationSettings(min_center_distance_for_midpoint_rule=10.0))
        assert m_fine == pytest.approx(m_auto, rel=1e-3)


class TestKernelBackends:
    def test_compiled_and_numpy_backends_agree(self):
        try:
            from riptsim._kernels import _neumann
        except ImportError:
            pytest.skip("compiled kernel not built")
        coil = build_coil(CoilShape.octagon(1.0, 3, 0.01), WIRE)
        other = transform_coil(coil, translation=(0.0, 0.3, 0.8))
        nodes = np.array([0.2113248654051871, 0.7886751345948129])
        weights = np.array([0.5, 0.5])
        args = (coil.segment_starts, coil.segment_vectors,
                other.segment_starts, other.segment_vectors)
        for exclude in (False, True):
            got = _neumann.pair_sum(*args, exclude, nodes, weights, 0.5)
            ref = numpy_backend.pair_sum(*args, exclude, nodes, weights, 0.5)
            assert got == pytest.approx(ref, rel=1e-12)
