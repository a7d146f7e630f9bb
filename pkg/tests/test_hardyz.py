"""Hardy Z derivatives, the shifted-zeta ladder, and the windowed sums.

Oracle strategy:
  * mpmath's siegelz (Riemann-Siegel based, independent algorithm) pins
    Z^(j) for j <= 2 directly.
  * The defining recursion Z_k = Z_{k-1}' - (omega/2) Z_{k-1} is checked
    with Z_{k-1}' obtained by Cauchy-integral differentiation on a small
    circle, which never touches the binomial evaluation path.
  * Finite differences tie consecutive derivative orders together.
"""

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hzml.chiomega import omega_jets
from hzml.errors import BranchError, ConvergenceError, DomainError
from hzml.hardyz import (
    fe_residual,
    fk_jet,
    fk_polynomials,
    script_zk,
    script_zk_root,
    window_log,
    z_deriv,
    z_deriv_many,
    zk_many,
    zk_value,
)
from hzml.zetacore import zeta_deriv

GAMMA_1 = 14.134725141734693  # first zero of Z, classical reference


def frac(n, d):
    from fractions import Fraction

    return Fraction(n, d)


def test_fk_polynomials_low_orders_exact():
    f0, f1, f2, f3 = fk_polynomials(3)
    assert f0 == {(): 1}
    assert f1 == {(1,): frac(-1, 2)}
    assert f2 == {(0, 1): frac(-1, 2), (2,): frac(1, 4)}
    assert f3 == {(0, 0, 1): frac(-1, 2), (1, 1): frac(3, 4), (3,): frac(-1, 8)}


def test_fk_jet_matches_polynomials():
    s = 0.5 + 40.0j
    jet = fk_jet(s, 2)
    om = omega_jets(np.array([s]), 1)[0]
    assert jet.values[0] == 1.0
    assert abs(jet.values[1] - (-0.5 * om[0])) < 1e-14
    assert abs(jet.values[2] - (0.25 * om[0] ** 2 - 0.5 * om[1])) < 1e-13


def test_fk_dominant_term_at_large_t():
    # omega derivatives decay like 1/t, so f_k ~ (-omega/2)^k high on the line
    s = 0.5 + 5000.0j
    om0 = omega_jets(np.array([s]), 0)[0, 0]
    jet = fk_jet(s, 3)
    for k in (2, 3):
        lead = (-0.5 * om0) ** k
        assert abs(jet.values[k] - lead) <= 0.01 * abs(lead), k


def test_zk_zero_is_zeta():
    s = 0.3 + 25.0j
    assert zk_many(np.array([s]), 0)[0] == zeta_deriv(s, 0)
    assert zk_value(s, 0).value == zeta_deriv(s, 0)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_zk_recursion_via_contour_derivative(k):
    # Z_k(s) = Z_{k-1}'(s) - (omega(s)/2) Z_{k-1}(s), with the derivative from
    # a 64-point Cauchy integral on a radius-0.1 circle
    n, r = 64, 0.1
    phi = 2.0 * math.pi * np.arange(n) / n
    for t in (20.0, 33.7, 61.2):
        s = 0.5 + 1j * t
        ring = s + r * np.exp(1j * phi)
        fz = zk_many(ring, k - 1)
        dval = np.sum(fz * np.exp(-1j * phi)) / (n * r)
        om = omega_jets(np.array([s]), 0)[0, 0]
        f0 = zk_many(np.array([s]), k - 1)[0]
        rhs = dval - 0.5 * om * f0
        lhs = zk_many(np.array([s]), k)[0]
        assert abs(lhs - rhs) <= 1e-7 * (1.0 + abs(lhs)), (k, t)


@pytest.mark.parametrize("t", [14.5, 100.0, 2500.5, 49999.0])
@pytest.mark.parametrize("j", [0, 1, 2])
def test_z_deriv_matches_siegelz(t, j):
    mine = z_deriv(t, j)
    with mp.workdps(30):
        ref = float(mp.siegelz(t, derivative=j))
    assert abs(mine - ref) <= 1e-8 * (1.0 + abs(ref)), (t, j)


def test_z_vanishes_at_first_zero():
    assert abs(z_deriv(GAMMA_1, 0)) < 1e-8


def test_z_prime_zero_from_independent_scan():
    # locate the first stationary point of Z by bisecting a central-difference
    # slope built only from j = 0 values, then ask the j = 1 path about it
    h = 1e-5

    def slope(t):
        return (z_deriv(t + h, 0) - z_deriv(t - h, 0)) / (2.0 * h)

    grid = np.arange(14.5, 21.0, 0.1)
    vals = [slope(t) for t in grid]
    brackets = [
        (grid[i], grid[i + 1])
        for i in range(len(grid) - 1)
        if vals[i] == 0.0 or (vals[i] < 0.0) != (vals[i + 1] < 0.0)
    ]
    assert len(brackets) == 1
    lo, hi = brackets[0]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if (slope(lo) < 0.0) != (slope(mid) < 0.0):
            hi = mid
        else:
            lo = mid
    root = 0.5 * (lo + hi)
    assert abs(z_deriv(root, 1)) < 1e-6


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_z_deriv_consistent_with_finite_differences(j):
    h = 1e-3
    stencil = np.array([1.0, -8.0, 8.0, -1.0]) / (12.0 * h)
    offsets = np.array([-2.0 * h, -h, h, 2.0 * h])
    for t0 in (21.3, 55.0, 203.7):
        fd = float(np.dot(stencil, [z_deriv(t0 + d, j - 1) for d in offsets]))
        val = z_deriv(t0, j)
        if abs(val) > 0.1:
            assert abs(val - fd) <= 1e-5 * abs(val), (j, t0)


def test_branch_diagnostic_is_small():
    t = np.linspace(10.0, 4000.0, 700)
    for j in (0, 3, 8):
        vals, leak = z_deriv_many(t, j, return_diag=True)
        assert vals.shape == t.shape
        assert leak <= 1e-8


def test_branch_tripwire_fires(monkeypatch):
    import hzml.hardyz as hz

    real_theta = hz.phase_theta
    monkeypatch.setattr(hz, "phase_theta", lambda t: real_theta(t) + 0.3)
    with pytest.raises(BranchError):
        z_deriv_many(np.linspace(20.0, 21.0, 5), 0)


def test_z_deriv_domain():
    with pytest.raises(DomainError):
        z_deriv(1.5, 0)
    with pytest.raises(DomainError):
        z_deriv(60000.0, 0)
    with pytest.raises(DomainError):
        z_deriv(20.0, 9)


def test_z_deriv_many_empty():
    out = z_deriv_many(np.array([]), 0)
    assert out.size == 0


def test_z_deriv_many_worker_determinism():
    t = np.linspace(100.0, 300.0, 1200)
    base = z_deriv_many(t, 1)
    for workers in (3, 8):
        assert np.array_equal(z_deriv_many(t, 1, workers=workers), base)


@given(split=st.integers(min_value=1, max_value=59))
@settings(max_examples=10, deadline=None)
def test_z_deriv_many_batch_split_invariance(split):
    t = np.linspace(50.0, 60.0, 60)
    whole = z_deriv_many(t, 2)
    parts = np.concatenate([z_deriv_many(t[:split], 2), z_deriv_many(t[split:], 2)])
    assert np.array_equal(whole, parts)


@pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
def test_functional_equation_residual(k):
    for s in (0.3 + 20.0j, 0.5 + 100.0j, 0.7 + 500.0j):
        assert fe_residual(s, k) <= 1e-8, (k, s)


def test_window_log():
    assert window_log(2.0 * math.pi * math.e) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(DomainError):
        window_log(9.9)


def test_script_zk_zero_order_is_zeta():
    s = 0.4 + 30.0j
    assert script_zk(s, 0, 1.0e6) == zeta_deriv(s, 0)


def test_script_zk_laurent_limit():
    # (s-1)^(k+1) script_Z_k(s, T) -> (-1)^k k! as s -> 1
    T = 1.0e6
    for k in (0, 1, 2):
        s = 1.0 + 1e-3
        val = (s - 1.0) ** (k + 1) * script_zk(s, k, T)
        target = (-1.0) ** k * math.factorial(k)
        assert abs(val - target) <= 2e-2 * abs(target), k


def test_script_zk_root_refines_seed():
    from hzml.thetaroots import trunc_exp_roots, z_from_theta

    T = 1.0e6
    L = window_log(T)
    theta = trunc_exp_roots(1).roots[0]  # the single root of 1 + theta
    seed = z_from_theta(theta, T)
    root = script_zk_root(1, T, seed)
    assert abs(root - seed) <= 10.0 / L**2
    assert abs(script_zk(root, 1, T)) < 1e-10


def test_script_zk_root_stall_raises():
    with pytest.raises(ConvergenceError):
        script_zk_root(1, 1.0e6, 0.5 + 14.1j, max_iter=2, tol=1e-15)
