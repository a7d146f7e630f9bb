"""Zero isolation, discrete and continuous moments, and the continuous-
moment prediction polynomial.

Zeros of Z^(k) sit in near-regular gaps 2 pi / log(t/2pi); the scanner
samples several points per expected gap, brackets sign changes, and
bisects every bracket in lockstep to width 1e-9. A census against

    N(T) ~ (T/2pi) log(T/2pi) - T/2pi

guards against missed zeros (bound 10 + 2 log T), auto-doubling the
density up to three times before raising an alarm.

The continuous moment integrates Z^(j)(t)^2 with composite Gauss-Legendre
panels no wider than half the local gap, a 16-vs-8-point error estimate
per panel driving bounded refinement, plus one fixed 64-point rule on the
awkward [0, 2] sliver. The prediction side is Hall's

    (1/(4^j(2j+1))) T P_{2j+1}(log(T/2pi)),
    P_{2j+1}(x) = W_{2j+1}(x) + (4j+2) sum_n C(2j,n)(-2)^n c_n W_{2j-n}(x),

with W_g(v) = sum_i (-1)^i (g!/(g-i)!) v^{g-i} and Stieltjes constants
c_n.

Everything here is bit-deterministic for any worker count: grids and
panels are built sequentially, each point's value depends only on the
point, and merges happen in fixed ascending order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .coeffs import breakdown
from .errors import CompletenessAlarm, DomainError, QuadratureError
from .hardyz import K_CAP, _z_core, window_log, z_deriv_many
from .zetacore import T_CAP, EvalConfig, stieltjes

_GL16 = np.polynomial.legendre.leggauss(16)
_GL8 = np.polynomial.legendre.leggauss(8)
_GL64 = np.polynomial.legendre.leggauss(64)
_BRACKET_WIDTH = 1e-9
_MAX_DOUBLINGS = 3
_MAX_REFINE_ROUNDS = 14
HALL_G_CAP = 20


@dataclass(frozen=True)
class ZeroList:
    k: int
    t_lo: float
    t_hi: float
    zeros: tuple[float, ...]
    bracket_widths: tuple[float, ...]
    scan_density: int


@dataclass(frozen=True)
class HallPolynomial:
    """P_{2j+1} in the monomial basis; coefficients[i] multiplies x^i."""

    j: int
    coefficients: tuple[float, ...]

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class MomentReport:
    j: int
    k: int
    T: float
    measured: float
    predicted: float
    ratio: float
    n_zeros_used: int
    count_expected: float
    count_deviation: float
    max_imag_leak: float


def _local_gap_log(t: float) -> float:
    # clamp keeps the step finite below t = 2 pi where log(t/2pi) <= 0
    return max(math.log(t / (2.0 * math.pi)), 0.7)


def _neumaier(values) -> float:
    acc = 0.0
    comp = 0.0
    for v in values:
        s = acc + v
        if abs(acc) >= abs(v):
            comp += (acc - s) + v
        else:
            comp += (v - s) + acc
        acc = s
    return float(acc + comp)


def count_expected(T: float) -> float:
    """Main term of the zero count: (T/2pi) log(T/2pi) - T/2pi."""
    r = T / (2.0 * math.pi)
    return r * math.log(r) - r


def find_zeros(
    k: int,
    t_lo: float,
    t_hi: float,
    density: int = 6,
    workers: int = 1,
    cfg: EvalConfig | None = None,
) -> ZeroList:
    """Sign-scan zeros of Z^(k) on [t_lo, t_hi], bisected to width 1e-9."""
    if not (0 <= k <= K_CAP):
        raise DomainError(f"k={k} outside 0..{K_CAP}")
    if not (2.0 <= t_lo < t_hi <= T_CAP):
        raise DomainError(f"need 2 <= t_lo < t_hi <= {T_CAP}")
    if density < 4:
        raise DomainError("density must be >= 4")

    grid = [t_lo]
    t = t_lo
    while t < t_hi:
        t += 2.0 * math.pi / (_local_gap_log(t) * density)
        grid.append(min(t, t_hi))
    pts = np.array(grid)
    vals = z_deriv_many(pts, k, cfg, workers=workers)

    exact_hits = [float(pts[i]) for i in np.nonzero(vals == 0.0)[0]]
    flip = np.nonzero((vals[:-1] * vals[1:]) < 0.0)[0]
    lo = pts[flip].copy()
    hi = pts[flip + 1].copy()
    slo = vals[flip].copy()

    while lo.size and np.max(hi - lo) > _BRACKET_WIDTH:
        mid = 0.5 * (lo + hi)
        vm = z_deriv_many(mid, k, cfg, workers=workers)
        go_right = (slo * vm) < 0.0
        hit = vm == 0.0
        hi = np.where(go_right, mid, hi)
        lo = np.where(go_right | hit, lo, mid)
        slo = np.where(go_right | hit, slo, vm)
        # a midpoint landing exactly on a zero collapses its bracket
        lo = np.where(hit, mid, lo)
        hi = np.where(hit, mid, hi)

    found = [(0.5 * (a + b), b - a) for a, b in zip(lo, hi)]
    found.extend((z, 0.0) for z in exact_hits)
    found.sort()
    return ZeroList(
        k=k,
        t_lo=float(t_lo),
        t_hi=float(t_hi),
        zeros=tuple(float(z) for z, _ in found),
        bracket_widths=tuple(float(w) for _, w in found),
        scan_density=density,
    )


def count_check(zl: ZeroList, T: float) -> float:
    """found_count - count_expected(T); the caller judges the bound."""
    return len(zl.zeros) - count_expected(T)


def count_bound(T: float) -> float:
    return 10.0 + 2.0 * math.log(T)


def find_zeros_certified(
    k: int,
    T: float,
    density: int = 6,
    workers: int = 1,
    cfg: EvalConfig | None = None,
) -> tuple[ZeroList, float]:
    """Zeros of Z^(k) on (2, T] with the census guard, doubling the scan
    density up to three times before declaring the list incomplete."""
    d = density
    for _ in range(_MAX_DOUBLINGS + 1):
        zl = find_zeros(k, 2.0, T, d, workers, cfg)
        dev = count_check(zl, T)
        if abs(dev) <= count_bound(T):
            return zl, dev
        d *= 2
    raise CompletenessAlarm(
        f"zero census off by {dev:+.1f} (bound {count_bound(T):.1f}) "
        f"for k={k}, T={T} even at density {d // 2}"
    )


def discrete_moment(
    j: int,
    zl: ZeroList,
    workers: int = 1,
    cfg: EvalConfig | None = None,
) -> float:
    """sum over gamma in zl of Z^(j)(gamma)^2, compensated, ascending."""
    if not (0 <= j <= K_CAP):
        raise DomainError(f"j={j} outside 0..{K_CAP}")
    if not zl.zeros:
        return 0.0
    vals = z_deriv_many(np.array(zl.zeros), j, cfg, workers=workers)
    return _neumaier(v * v for v in vals)


def _panel_integrals(
    edges_lo: np.ndarray,
    edges_hi: np.ndarray,
    j: int,
    rule,
    workers: int,
    cfg: EvalConfig | None,
) -> np.ndarray:
    nodes, weights = rule
    half = 0.5 * (edges_hi - edges_lo)
    mids = 0.5 * (edges_hi + edges_lo)
    pts = (mids[:, None] + half[:, None] * nodes[None, :]).ravel()
    vals, _ = _z_core_batch(pts, j, workers, cfg)
    sq = (vals * vals).reshape(len(edges_lo), len(nodes))
    # fixed-length axis reduction keeps panel values independent of the
    # panel count and worker split
    return half * np.sum(sq * weights[None, :], axis=1)


def _z_core_batch(pts, j, workers, cfg):
    if workers > 1 and pts.size > 512:
        chunks = np.array_split(pts, workers * 4)
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda c: _z_core(c, j, cfg), chunks))
        return (
            np.concatenate([p[0] for p in parts]),
            np.concatenate([p[1] for p in parts]),
        )
    return _z_core(pts, j, cfg)


def continuous_moment(
    j: int,
    T: float,
    workers: int = 1,
    tol: float = 1e-9,
    cfg: EvalConfig | None = None,
) -> float:
    """Integral of Z^(j)(t)^2 over [0, T].

    Composite Gauss-Legendre on [2, T] with per-panel 16-vs-8 error
    estimates and bounded halving; one 64-point rule covers [0, 2].
    """
    if not (0 <= j <= K_CAP):
        raise DomainError(f"j={j} outside 0..{K_CAP}")
    if not (0.0 < T <= T_CAP):
        raise DomainError(f"need 0 < T <= {T_CAP}")

    sliver_hi = min(T, 2.0)
    nodes, weights = _GL64
    half = 0.5 * sliver_hi
    pts = half + half * nodes
    vals, _ = _z_core(pts, j, cfg)
    total_parts = [float(half * np.dot(vals * vals, weights))]
    if T <= 2.0:
        return total_parts[0]

    edges = [2.0]
    t = 2.0
    while t < T:
        t += math.pi / _local_gap_log(t)
        edges.append(min(t, T))
    lo = np.array(edges[:-1])
    hi = np.array(edges[1:])

    kept: list[tuple[float, float]] = []  # (panel_lo, value) for final merge
    for _ in range(_MAX_REFINE_ROUNDS):
        coarse = _panel_integrals(lo, hi, j, _GL8, workers, cfg)
        fine = _panel_integrals(lo, hi, j, _GL16, workers, cfg)
        err = np.abs(fine - coarse)
        ok = err <= tol * (1.0 + np.abs(fine)) / max(len(lo), 1)
        kept.extend(zip(lo[ok], fine[ok]))
        if np.all(ok):
            break
        lo_bad = lo[~ok]
        hi_bad = hi[~ok]
        mid = 0.5 * (lo_bad + hi_bad)
        lo = np.concatenate([lo_bad, mid])
        hi = np.concatenate([mid, hi_bad])
    else:
        raise QuadratureError(
            f"panel refinement stalled with {len(lo)} panels outstanding"
        )
    kept.sort()
    total_parts.extend(v for _, v in kept)
    return _neumaier(total_parts)


def hall_W(g: int, v: float) -> float:
    """W_g(v) = e^{-v} integral_0^{e^v} (log u)^g du in closed form."""
    if not (0 <= g <= HALL_G_CAP):
        raise DomainError(f"g={g} outside 0..{HALL_G_CAP}")
    acc = 0.0
    for i in range(g + 1):
        acc = acc * v + (-1) ** i * math.factorial(g) // math.factorial(g - i)
    return acc


def _w_coefficients(g: int) -> list[int]:
    """Integer coefficients of W_g; index i multiplies v^i."""
    return [
        (-1) ** (g - i) * math.factorial(g) // math.factorial(i) for i in range(g + 1)
    ]


def hall_polynomial(j: int) -> HallPolynomial:
    if not (0 <= j <= K_CAP):
        raise DomainError(f"j={j} outside 0..{K_CAP}")
    deg = 2 * j + 1
    coeffs = [0.0] * (deg + 1)
    for i, c in enumerate(_w_coefficients(deg)):
        coeffs[i] += float(c)
    for n in range(2 * j + 1):
        scale = (4 * j + 2) * math.comb(2 * j, n) * (-2) ** n * stieltjes(n)
        for i, c in enumerate(_w_coefficients(2 * j - n)):
            coeffs[i] += scale * c
    return HallPolynomial(j=j, coefficients=tuple(coeffs))


def hall_prediction(j: int, T: float) -> float:
    """T P_{2j+1}(log(T/2pi)) / (4^j (2j+1))."""
    poly = hall_polynomial(j)
    return T * poly(window_log(T)) / (4.0**j * (2 * j + 1))


def interlacing_report(
    zl_lo: ZeroList, zl_hi: ZeroList
) -> tuple[int, list[tuple[float, float, int]]]:
    """Count zeros of the higher derivative between consecutive zeros of
    the lower one; returns (n_gaps_checked, violations) where each
    violation is (gap_lo, gap_hi, count_inside)."""
    if zl_hi.k != zl_lo.k + 1:
        raise DomainError("need derivative orders k and k+1")
    gaps = list(zip(zl_lo.zeros[:-1], zl_lo.zeros[1:]))
    marks = np.array(zl_hi.zeros)
    violations = []
    for a, b in gaps:
        n = int(np.searchsorted(marks, b) - np.searchsorted(marks, a))
        if n != 1:
            violations.append((a, b, n))
    return len(gaps), violations


def moment_report(
    j: int,
    k: int,
    T: float,
    density: int = 6,
    workers: int = 1,
    cfg: EvalConfig | None = None,
) -> MomentReport:
    """Measured discrete moment against the five-term finite-T prediction."""
    if not (0 <= j <= K_CAP):
        raise DomainError(f"j={j} outside 0..{K_CAP}")
    zl, dev = find_zeros_certified(k, T, density, workers, cfg)
    if zl.zeros:
        vals, leak = z_deriv_many(
            np.array(zl.zeros), j, cfg, workers=workers, return_diag=True
        )
        measured = _neumaier(v * v for v in vals)
    else:
        measured, leak = 0.0, 0.0
    predicted = breakdown(j, k, T, "finite").total
    return MomentReport(
        j=j,
        k=k,
        T=float(T),
        measured=measured,
        predicted=predicted,
        ratio=measured / predicted if predicted != 0.0 else math.inf,
        n_zeros_used=len(zl.zeros),
        count_expected=count_expected(T),
        count_deviation=dev,
        max_imag_leak=float(leak),
    )
