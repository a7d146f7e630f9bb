"""Zeta jets and Stieltjes constants against independent references.

Oracle notes: closed-form values (pi^2/6 etc.) are classical; grids are
cross-checked against mpmath at 30+ digits, which shares no code with the
Euler-Maclaurin pipeline here.
"""

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hzml.errors import AccuracyError, DomainError, PoleProximityError
from hzml.zetacore import (
    ComplexPoint,
    EvalConfig,
    stieltjes,
    stieltjes_table,
    zeta_deriv,
    zeta_jets,
)


def test_zeta_two_closed_form():
    # pi^2/6 probed just inside the open strip edge at sigma = 2
    assert abs(zeta_deriv(1.9999999 + 0.0j, 0) - math.pi**2 / 6) < 1e-6


def test_zeta_near_two_closed_form():
    # strip is open at sigma = 2, so pin the classical value just inside
    with mp.workdps(30):
        ref = complex(mp.zeta(mp.mpf("1.999")))
    assert abs(zeta_deriv(1.999 + 0.0j, 0) - ref) < 1e-12


def test_zeta_half_reference():
    # classical value of zeta(1/2)
    assert abs(zeta_deriv(0.5 + 0.0j, 0) - (-1.4603545088095868)) < 1e-12


@pytest.mark.parametrize(
    "s",
    [
        0.5 + 14.134725j,
        -0.9 + 3.0j,
        1.9 + 100.0j,
        0.1 + 5.7j,
        1.2 - 77.3j,
        0.4 + 250.3j,
    ],
)
@pytest.mark.parametrize("mu", [0, 3, 8])
def test_jets_match_mpmath(s, mu):
    mine = zeta_jets(np.array([s]), mu)[0]
    with mp.workdps(40):
        refs = [complex(mp.zeta(mp.mpc(s), derivative=d)) for d in range(mu + 1)]
    scale = max(max(abs(r) for r in refs), 1.0)
    for d in range(mu + 1):
        assert abs(mine[d] - refs[d]) <= 1e-11 * scale, (s, d)


def test_high_t_accuracy():
    # phase reduction stress: t near the height cap
    for s, mu in ((0.5 + 5000.0j, 3), (1.9 + 49999.0j, 2)):
        mine = zeta_jets(np.array([s]), mu)[0]
        with mp.workdps(30):
            refs = [complex(mp.zeta(mp.mpc(s), derivative=d)) for d in range(mu + 1)]
        scale = max(max(abs(r) for r in refs), 1.0)
        for d in range(mu + 1):
            assert abs(mine[d] - refs[d]) <= 1e-11 * scale, (s, d)


def test_batch_matches_scalar_bitwise():
    pts = np.array([0.3 + 21.0j, 1.5 + 300.0j, -0.5 + 9.0j])
    batch = zeta_jets(pts, 3)
    for i, s in enumerate(pts):
        single = zeta_jets(np.array([s]), 3)[0]
        assert np.array_equal(batch[i], single)


@given(
    sigma=st.floats(min_value=-0.95, max_value=1.95),
    t=st.floats(min_value=2.0, max_value=1000.0),
)
@settings(max_examples=25, deadline=None)
def test_conjugate_symmetry(sigma, t):
    s = complex(sigma, t)
    up = zeta_jets(np.array([s]), 2)[0]
    down = zeta_jets(np.array([s.conjugate()]), 2)[0]
    for d in range(3):
        assert abs(up[d] - down[d].conjugate()) <= 1e-12 * (1.0 + abs(up[d]))


def test_pole_guard():
    with pytest.raises(PoleProximityError):
        zeta_deriv(1.0 + 1e-9j, 0)


def test_strip_bounds():
    with pytest.raises(DomainError):
        zeta_deriv(2.5 + 3.0j, 0)
    with pytest.raises(DomainError):
        zeta_deriv(-1.5 + 3.0j, 0)
    with pytest.raises(DomainError):
        zeta_deriv(0.5 + 6.0e4j, 0)
    with pytest.raises(DomainError):
        zeta_deriv(0.5 + 5.0j, 13)


def test_complex_point_validation():
    with pytest.raises(DomainError):
        ComplexPoint(2.5, 1.0)
    p = ComplexPoint(0.5, 14.0)
    assert p.s == 0.5 + 14.0j


def test_eval_config_validation():
    with pytest.raises(ValueError):
        EvalConfig(bernoulli_order=7)
    with pytest.raises(ValueError):
        EvalConfig(target_abs_tol=0.0)
    cfg = EvalConfig(bernoulli_order=8)
    assert zeta_deriv(0.5 + 30.0j, 0, cfg) == pytest.approx(
        zeta_deriv(0.5 + 30.0j, 0), abs=1e-12
    )


def test_stieltjes_against_mpmath():
    # independent high-precision reference for the limit-formula values
    for n in (0, 1, 2, 5, 10, 16, 17):
        ref = float(mp.stieltjes(n))
        assert abs(stieltjes(n) - ref) <= 1e-12 * max(1.0, abs(ref)), n


def test_stieltjes_euler_mascheroni_window():
    c0 = stieltjes(0)
    assert 0.577215 < c0 < 0.577216


def test_stieltjes_table_contract():
    table = stieltjes_table()
    assert len(table.values) == 21
    assert table.cross_checked_through >= 10
    assert table[0] == stieltjes(0)


def test_stieltjes_domain():
    with pytest.raises(DomainError):
        stieltjes(18)
    with pytest.raises(DomainError):
        stieltjes(-1)


def test_accuracy_tripwire_fires(monkeypatch):
    import hzml.zetacore as zc

    # force the two independent methods apart to prove the cross-check bites
    real_fit = zc.stieltjes_laurent_fit

    def skewed(n_max=10, radius=0.9, samples=128, cfg=None):
        vals = list(real_fit(n_max, radius, samples, cfg))
        vals[3] += 1e-6
        return vals

    monkeypatch.setattr(zc, "stieltjes_laurent_fit", skewed)
    zc.stieltjes_table.cache_clear()
    try:
        with pytest.raises(AccuracyError):
            zc.stieltjes_table()
    finally:
        zc.stieltjes_table.cache_clear()
