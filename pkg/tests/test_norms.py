"""Norm functionals: closed forms, homogeneity, and engine identities."""

import math

import numpy as np
import pytest
from scipy.special import beta as beta_fn

import discnorm as d
from discnorm import DomainError, MoebiusPoint, StolzRegion
from discnorm.norms import NormValue, power_functional_disc


@pytest.fixture(scope="module")
def rule():
    return d.default_disc_rule()


def monomial(n):
    return d.taylor([0] * n + [1])


class TestClosedForms:
    def test_bloch_of_z_exact(self, rule):
        assert d.bloch_norm(d.taylor([0, 1]), rule).value == 1.0

    def test_bloch_monomials(self, rule):
        for n in (2, 3, 5):
            exact = (1 - 1 / n) ** (n - 1)
            got = d.bloch_norm(monomial(n), rule).value
            assert abs(got - exact) <= 1e-3 * exact
            assert got <= exact + 1e-15  # grid sup is a lower bound

    def test_bp_two_of_z_is_pi(self, rule):
        assert abs(d.bp_norm_p(d.taylor([0, 1]), 2.0, rule).value - math.pi) <= 1e-12

    def test_bergman_monomials(self, rule):
        for n in (1, 2, 4, 8):
            exact = math.pi / (n + 1)
            got = d.bergman_norm_p(monomial(n), 2.0, rule).value
            assert abs(got - exact) <= 1e-8 * exact

    def test_hardy_squared_of_odd_poly(self):
        f = d.taylor([0, 1, 0, 2])
        assert abs(d.hardy_norm_p(f, 2.0).value - 5.0) <= 1e-6 * 5.0

    def test_hardy_parseval_general(self):
        f = d.taylor([0.3, -0.7, 0, 0, 0, 0.2 + 0.1j])
        exact = sum(abs(c) ** 2 for c in f.coefficients)
        assert abs(d.hardy_norm_p(f, 2.0).value - exact) <= 1e-6 * exact

    def test_hardy_fixed_radius_exact(self):
        f = d.taylor([0.3, -0.7, 0, 0, 0, 0.2 + 0.1j])
        r = 0.5
        exact = sum(abs(c) ** 2 * r ** (2 * k) for k, c in enumerate(f.coefficients))
        got = d.hardy_norm_p(f, 2.0, radii=(r,)).value
        assert abs(got - exact) <= 1e-12 * exact

    def test_mixed_area_beta_oracle(self, rule):
        # closed form for monomials: 2 pi n^beta B(n p - beta + 2, beta + 1)
        for n, p, b in [(1, 2.5, 1.3), (2, 3.0, 1.5), (3, 2.0, 0.7), (1, 3.0, 3.0)]:
            got = d.mixed_area_functional(monomial(n), p, b, rule).value
            exact = 2 * math.pi * n**b * beta_fn(n * p - b + 2, b + 1)
            assert abs(got - exact) <= 1e-9 * exact

    def test_lusin_full_disc_limit(self, rule):
        # aperture so large every cone covers the grid; for f = z the
        # smoothed derivative doubles f', so the inner integral is
        # int |2z|^2 dm = 2 pi at every direction
        v = d.lusin_functional(d.taylor([0, 1]), 2.0, 1.0, 1e6, rule, 16).value
        assert abs(v - 2 * math.pi) <= 1e-3 * 2 * math.pi


class TestHomogeneity:
    LAM = 1.7 - 0.4j

    def test_bloch_is_one_homogeneous(self, rule):
        f = d.taylor([0, 1, 0.5j, -0.25])
        a = d.bloch_norm(d.scale(f, self.LAM), rule).value
        b = abs(self.LAM) * d.bloch_norm(f, rule).value
        assert abs(a - b) <= 1e-12 * b

    def test_power_functionals_are_p_homogeneous(self, rule):
        f = d.taylor([0, 1, 0.5j, -0.25])
        lam = self.LAM
        for p in (1.5, 2.0, 3.0):
            pairs = [
                (d.bp_norm_p(d.scale(f, lam), p, rule).value, d.bp_norm_p(f, p, rule).value),
                (
                    d.bergman_norm_p(d.scale(f, lam), p, rule).value,
                    d.bergman_norm_p(f, p, rule).value,
                ),
                (
                    d.hardy_norm_p(d.scale(f, lam), p).value,
                    d.hardy_norm_p(f, p).value,
                ),
                (
                    d.mixed_area_functional(d.scale(f, lam), p, 0.5 * p, rule).value,
                    d.mixed_area_functional(f, p, 0.5 * p, rule).value,
                ),
            ]
            for scaled, base in pairs:
                assert abs(scaled - abs(lam) ** p * base) <= 1e-12 * scaled

    def test_lusin_is_p_homogeneous(self, rule):
        f = d.taylor([0, 1, 0.5j])
        p = 3.0
        a = d.lusin_functional(d.scale(f, self.LAM), p, 1.0, 2.0, rule, 16).value
        b = d.lusin_functional(f, p, 1.0, 2.0, rule, 16).value
        assert abs(a - abs(self.LAM) ** p * b) <= 1e-12 * a

    def test_pair_functionals_are_p_homogeneous(self, small_bidisc):
        f = d.taylor([0, 1, 0.5j])
        lam, p, b = self.LAM, 2.5, 1.0
        grid = (MoebiusPoint(0j), MoebiusPoint(0.4 + 0.2j))
        a1 = d.pair_functional_mu(d.scale(f, lam), p, b, small_bidisc).value
        b1 = d.pair_functional_mu(f, p, b, small_bidisc).value
        assert abs(a1 - abs(lam) ** p * b1) <= 1e-12 * a1
        a2 = d.pair_functional_mu_a(d.scale(f, lam), p, b, grid, small_bidisc).value
        b2 = d.pair_functional_mu_a(f, p, b, grid, small_bidisc).value
        assert abs(a2 - abs(lam) ** p * b2) <= 1e-12 * a2

    def test_rotation_invariance_at_grid_step(self, rule):
        f = d.taylor([0, 0.8, 0.3j, 0, -0.2])
        theta = 2 * math.pi / rule.angular_count
        g = d.rotate(f, theta)
        for a, b in [
            (d.bloch_norm(g, rule).value, d.bloch_norm(f, rule).value),
            (d.bp_norm_p(g, 2.5, rule).value, d.bp_norm_p(f, 2.5, rule).value),
            (d.bergman_norm_p(g, 1.5, rule).value, d.bergman_norm_p(f, 1.5, rule).value),
        ]:
            assert abs(a - b) <= 1e-12 * b


class TestAlgebraicIdentities:
    def test_mixed_beta_zero_is_bergman_power(self, rule):
        f = d.taylor([0, 1, -0.5])
        p = 2.5
        assert (
            d.mixed_area_functional(f, p, 0.0, rule).value
            == d.bergman_norm_p(f, p, rule).value
        )

    def test_mixed_beta_p_is_derivative_integral(self, rule):
        f = d.taylor([0, 1, -0.5])
        p = 2.5
        a = d.mixed_area_functional(f, p, p, rule).value
        b = power_functional_disc(f, rule, p, p, 0.0)
        assert a == b

    def test_lusin_matches_direct_cone_integrals(self, rule):
        f = d.taylor([0, 1, 0.3j, -0.2])
        count, aperture = 16, 2.0
        for p, t in [(2.0, 1.0), (2.0, 0.5), (4.0, 1.0)]:
            got = d.lusin_functional(f, p, t, aperture, rule, count).value
            dtf = d.fractional_derivative(f, t)

            def g(z):
                out = np.abs(d.evaluate(dtf, z)) ** 2
                if t != 1.0:
                    out = out * (1 - np.abs(z)) ** (2 * t - 2)
                return out

            xi = d.circle_nodes(count)
            inner = [
                d.integrate_stolz(rule, StolzRegion(x, aperture), g) for x in xi
            ]
            direct = float(np.mean(np.array(inner) ** (0.5 * p)))
            assert abs(got - direct) <= 1e-12 * direct

    def test_pair_mu_matches_direct_double_integral(self, small_bidisc):
        f = d.taylor([0, 1, 0.5j])
        p, b = 2.5, 1.0
        got = d.pair_functional_mu(f, p, b, small_bidisc).value
        fp = d.derivative(f)

        def g(z, w):
            fz = d.evaluate(f, z)
            fw = d.evaluate(f, w)
            return (
                np.abs(fz - fw) ** (p - b)
                * (np.abs(d.evaluate(fp, z)) * (1 - np.abs(z))) ** b
            )

        direct = d.integrate_mu(small_bidisc, g)
        assert abs(got - direct) <= 1e-12 * direct

    def test_pair_mu_a_is_grid_max(self, small_bidisc):
        f = d.taylor([0, 1, 0.5j])
        p, b = 2.5, 1.0
        grid = (MoebiusPoint(0j), MoebiusPoint(0.4 + 0.2j), MoebiusPoint(-0.6j))
        got = d.pair_functional_mu_a(f, p, b, grid, small_bidisc).value
        fp = d.derivative(f)

        def g(z, w):
            fz = d.evaluate(f, z)
            fw = d.evaluate(f, w)
            return (
                np.abs(fz - fw) ** (p - b)
                * (np.abs(d.evaluate(fp, z)) * (1 - np.abs(z))) ** b
            )

        direct = max(d.integrate_mu_a(small_bidisc, a, g) for a in grid)
        assert abs(got - direct) <= 1e-12 * direct


class TestValidation:
    def test_norm_value_record(self, rule):
        v = d.bp_norm_p(d.taylor([0, 1]), 2.0, rule)
        assert v.norm_kind == "bp"
        assert v.params == {"p": 2.0}
        assert v.grid_provenance == rule.provenance

    def test_norm_value_rejects_bad_kind_or_value(self):
        with pytest.raises(DomainError):
            NormValue(1.0, "nonsense")
        with pytest.raises(DomainError):
            NormValue(-1.0, "bloch")
        with pytest.raises(DomainError):
            NormValue(float("nan"), "bloch")

    def test_parameter_domains(self, rule, small_bidisc):
        f = d.taylor([0, 1])
        with pytest.raises(DomainError):
            d.bp_norm_p(f, 1.0, rule)
        with pytest.raises(DomainError):
            d.bergman_norm_p(f, 0.0, rule)
        with pytest.raises(DomainError):
            d.hardy_norm_p(f, 0.0)
        with pytest.raises(DomainError):
            d.hardy_norm_p(f, 2.0, radii=(0.5, 1.0))
        with pytest.raises(DomainError):
            d.lusin_functional(f, 0.0, 1.0, 2.0, rule, 16)
        with pytest.raises(DomainError):
            d.lusin_functional(f, 2.0, 0.0, 2.0, rule, 16)
        with pytest.raises(DomainError):
            d.lusin_functional(f, 2.0, 1.0, 1.0, rule, 16)
        with pytest.raises(DomainError):
            d.mixed_area_functional(f, 0.0, 0.0, rule)
        with pytest.raises(DomainError):
            d.mixed_area_functional(f, 2.0, -0.1, rule)
        with pytest.raises(DomainError):
            d.mixed_area_functional(f, 2.0, 4.0, rule)
        with pytest.raises(DomainError):
            d.mixed_area_functional(d.taylor([1, 1]), 2.0, 1.0, rule)
        with pytest.raises(DomainError):
            d.pair_functional_mu(f, 1.0, 0.0, small_bidisc)
        with pytest.raises(DomainError):
            d.pair_functional_mu_a(f, 2.0, 0.0, (), small_bidisc)

    def test_default_hardy_radii_shape(self):
        radii = d.default_hardy_radii()
        assert len(radii) == 30
        assert radii[0] == 0.5
        assert all(0 < r < 1 for r in radii)
        assert all(a < b for a, b in zip(radii, radii[1:]))
