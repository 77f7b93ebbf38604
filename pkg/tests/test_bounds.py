import math
import warnings

import numpy as np
import pytest

from mstgauss.bounds import (
    BoundReport,
    NotPureError,
    SeparableStateWarning,
    boundary_objective,
    boundary_state,
    conjecture_ratio,
    e3u_bound,
    e3ur_bound,
    golden_section,
    pure_crossover,
    rel_entropy_closed,
    rel_entropy_dense,
    rel_entropy_gibbs,
    teleport_bound,
    to_base,
    upper_bound,
    widened_bound,
)
from mstgauss.gaussian import MstState, bosonic_g


def thermal_kl_fock(v_sigma, v_rho, cutoff=10_000):
    """sum_n p_n (log p_n - log q_n) for geometric photon distributions."""
    n = np.arange(cutoff)
    logp = math.log1p(-v_sigma) + n * math.log(v_sigma) if v_sigma > 0 else None
    logq = math.log1p(-v_rho) + n * math.log(v_rho)
    if logp is None:
        return -float(logq[0])
    p = np.exp(logp)
    return float((p * (logp - logq)).sum())


def grid_min(sigma, points=100_000):
    """Brute-force minimum of S(sigma || boundary state) over the search bracket."""
    rs = np.linspace(1e-6, sigma.r + 5, points)
    vals = [rel_entropy_closed(sigma, boundary_state(sigma.m, r)) for r in rs]
    k = int(np.argmin(vals))
    return vals[k], rs[k]


class TestRelativeEntropy:
    @pytest.mark.parametrize("m, r, N", [(3, 0.0, 0.2), (3, 0.8, 1.7), (2, 2.0, 0.05), (5, 1.3, 4.0)])
    def test_self_divergence_zero(self, m, r, N):
        s = MstState(m, r, N)
        assert rel_entropy_closed(s, s) == pytest.approx(0, abs=1e-12)
        assert rel_entropy_gibbs(s, s) == pytest.approx(0, abs=1e-12)

    def test_product_thermal_vs_boundary(self):
        for v in (0.1, 0.5, 0.8):
            sigma = MstState.from_lambda_v(0.0, v, 3)
            rho = MstState.from_lambda_v(v, v, 3)
            expected = 3 * v * v * (-math.log(v)) / (1 - v) ** 2
            assert rel_entropy_closed(sigma, rho) == pytest.approx(expected, rel=1e-12)
            assert rel_entropy_gibbs(sigma, rho) == pytest.approx(expected, rel=1e-12)

    def test_paths_agree(self):
        sigma, rho = MstState(3, 0.5, 0.5), MstState(3, 0.3, 0.8)
        a = rel_entropy_closed(sigma, rho)
        assert rel_entropy_gibbs(sigma, rho) == pytest.approx(a, abs=1e-10)
        assert rel_entropy_dense(sigma, rho) == pytest.approx(a, abs=1e-10)
        assert a > 0

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_paths_agree_coarse_grid(self, m):
        rs = np.linspace(0, 2, 7)
        ns = np.linspace(0.05, 5, 7)
        for rs_ in rs:
            for ns_ in np.concatenate([[0.0], ns]):
                for rr in rs:
                    for nr in ns:
                        sigma, rho = MstState(m, rs_, ns_), MstState(m, rr, nr)
                        a, b = rel_entropy_closed(sigma, rho), rel_entropy_gibbs(sigma, rho)
                        assert abs(a - b) <= 1e-10
                        assert a >= -1e-12

    @pytest.mark.parametrize("vs, vr", [(0.3, 0.6), (0.6, 0.3), (0.0, 0.5), (0.9, 0.85)])
    def test_thermal_fock_oracle(self, vs, vr):
        m = 3
        sigma = MstState.from_lambda_v(0.0, vs, m)
        rho = MstState.from_lambda_v(0.0, vr, m)
        expected = m * thermal_kl_fock(vs, vr)
        assert rel_entropy_gibbs(sigma, rho) == pytest.approx(expected, abs=1e-8)
        assert rel_entropy_closed(sigma, rho) == pytest.approx(expected, abs=1e-8)

    def test_equal_squeezing_trace_term(self):
        sigma, rho = MstState(4, 0.6, 0.3), MstState(4, 0.6, 1.1)
        log_v = math.log(rho.v)
        # remove the entropy and partition terms to isolate the trace term
        half_trace = rel_entropy_gibbs(sigma, rho) + 4 * bosonic_g(0.3) - 4 * math.log1p(1.1) - 2 * log_v
        assert half_trace == pytest.approx(-4 * (0.3 + 0.5) * log_v, rel=1e-12)

    def test_errors(self):
        with pytest.raises(ValueError):
            rel_entropy_closed(MstState(3, 0.2, 0.2), MstState(2, 0.2, 0.2))
        with pytest.raises(ValueError):
            rel_entropy_gibbs(MstState(3, 0.2, 0.2), MstState(3, 0.2, 0.0))


class TestGoldenSection:
    def test_quadratic(self):
        x, fx, _ = golden_section(lambda t: (t - 1.234) ** 2, 0, 5)
        assert x == pytest.approx(1.234, abs=1e-9)

    def test_endpoint_minimum(self):
        x, fx, _ = golden_section(lambda t: t, 0.5, 2)
        assert x == 0.5 and fx == 0.5

    def test_boundary_objective_matches_closed(self):
        sigma = MstState(3, 0.7, 0.4)
        rs = np.array([1e-6, 0.1, 0.9, 4.0])
        got = boundary_objective(sigma, rs)
        want = [rel_entropy_closed(sigma, boundary_state(3, r)) for r in rs]
        np.testing.assert_allclose(got, want, rtol=1e-12)


class TestUpperBound:
    def test_boundary_sigma(self):
        sigma = MstState.from_lambda_v(0.4, 0.4, 3)
        res = upper_bound(sigma)
        assert res.value == pytest.approx(0, abs=1e-12)
        assert res.argmin_r == pytest.approx(sigma.r, abs=1e-6)

    def test_product_thermal(self):
        v = 0.5
        sigma = MstState.from_lambda_v(0.0, v, 3)
        res = upper_bound(sigma)
        oracle, _ = grid_min(sigma)
        assert 0 < res.value <= 3 * v * v * (-math.log(v)) / (1 - v) ** 2
        assert res.value == pytest.approx(oracle, abs=1e-7)
        assert res.value <= oracle + 1e-12

    @pytest.mark.parametrize("lam, v", [(0.5, 0.0), (0.5, 0.1), (0.9, 0.5), (0.99, 0.2)])
    def test_grid_oracle(self, lam, v):
        sigma = MstState.from_lambda_v(lam, v, 3)
        res = upper_bound(sigma)
        oracle, r_oracle = grid_min(sigma)
        assert res.value <= oracle + 1e-12
        assert res.value == pytest.approx(oracle, abs=1e-6)
        assert res.argmin_r == pytest.approx(r_oracle, abs=2e-4)
        assert res.unimodal and not res.at_endpoint

    def test_pure_half_frozen(self):
        # frozen from grid_min at 1e5 points: 1.2323032627...
        res = upper_bound(MstState.from_lambda_v(0.5, 0.0, 3))
        assert res.value == pytest.approx(1.23230325, abs=1e-7)

    def test_e3ur_checks_modes(self):
        with pytest.raises(ValueError):
            e3ur_bound(MstState(4, 0.5, 0.1))

    def test_e3ur_warns_for_separable(self):
        with pytest.warns(SeparableStateWarning):
            e3ur_bound(MstState.from_lambda_v(0.2, 0.5, 3))
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            e3ur_bound(MstState.from_lambda_v(0.5, 0.2, 3))

    @pytest.mark.parametrize("lam, v", [(0.5, 0.2), (0.9, 0.3), (0.95, 0.9)])
    def test_boundary_family_is_optimal(self, lam, v):
        sigma = MstState.from_lambda_v(lam, v, 3)
        assert widened_bound(sigma).value >= upper_bound(sigma).value - 1e-9

    def test_log_base(self):
        assert to_base(math.log(2), "bits") == pytest.approx(1.0)
        assert to_base(0.3, "nats") == 0.3
        with pytest.raises(ValueError):
            to_base(1.0, "decibans")


class TestTeleport:
    def test_zero_squeezing(self):
        assert teleport_bound(MstState(3, 0.0, 0.0)) == 0.0

    def test_half(self):
        s = (1 + 0.5) / (1 - 0.5)
        nu = math.sqrt(2 * s * s + 5 + 2 / s ** 2) / 6
        assert teleport_bound(MstState.from_lambda_v(0.5, 0.0)) == pytest.approx(2 * bosonic_g(nu - 0.5), rel=1e-14)

    def test_monotone(self):
        vals = [teleport_bound(MstState.from_lambda_v(lam, 0.0)) for lam in np.linspace(0, 0.99, 200)]
        assert np.all(np.diff(vals) > 0)

    def test_mixed_rejected(self):
        with pytest.raises(NotPureError):
            teleport_bound(MstState(3, 0.5, 0.1))


class TestCombined:
    def test_near_product(self):
        rep = e3u_bound(MstState.from_lambda_v(0.001, 0.0))
        assert rep.e_combined == min(rep.e_rel, rep.e_teleport)
        assert rep.e_combined < 1e-4

    def test_high_squeezing_prefers_rel(self):
        rep = e3u_bound(MstState.from_lambda_v(0.95, 0.0))
        assert rep.e_combined == rep.e_rel < rep.e_teleport

    def test_mixed_has_no_teleport(self):
        rep = e3u_bound(MstState.from_lambda_v(0.6, 0.2))
        assert isinstance(rep, BoundReport)
        assert rep.e_teleport is None and rep.e_combined is None

    def test_crossover(self):
        lam_star = pure_crossover()
        assert 0.001 < lam_star < 0.999
        below = e3u_bound(MstState.from_lambda_v(lam_star - 1e-3, 0.0))
        above = e3u_bound(MstState.from_lambda_v(lam_star + 1e-3, 0.0))
        assert below.e_rel > below.e_teleport
        assert above.e_rel < above.e_teleport


class TestConjecture:
    def test_three_modes(self):
        assert conjecture_ratio(0.1, 0.5, 3) == pytest.approx(1.5, abs=1e-8)

    def test_two_modes(self):
        assert conjecture_ratio(0.3, 0.7, 2) == 1.0

    def test_five_modes(self):
        assert conjecture_ratio(0.2, 0.6, 5) == pytest.approx(2.5, abs=1e-8)

    def test_degenerate(self):
        with pytest.raises(ZeroDivisionError):
            conjecture_ratio(0.0, 0.0, 3)
