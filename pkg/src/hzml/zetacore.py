"""Derivatives of the Riemann zeta function in the critical strip.

The workhorse is Euler-Maclaurin summation carried in jet (truncated Taylor)
arithmetic, so one pass produces zeta(s), zeta'(s), ..., zeta^(mu)(s)
simultaneously:

    zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
              + sum_{r=1}^{q} B_{2r}/(2r)! * s(s+1)...(s+2r-2) * N^(-s-2r+1)
              + R_q(N, s)

Every piece is expanded in h around s: the Dirichlet terms contribute
n^-s (-log n)^a / a!, the tail is an exponential jet times a geometric jet in
1/(s-1), and the correction polynomials are built by multiplying linear jets.
The truncation point N grows linearly with |t| so the first omitted
correction term stays far below the 1e-12 absolute target everywhere in the
strip up to the height cap.

Stieltjes constants come from the classical limit formula
c_n = lim_m [ sum_{l<=m} log(l)^n/l - log(m)^(n+1)/(n+1) ], accelerated with
Euler-Maclaurin corrections and evaluated in extended precision; an
independent Laurent-coefficient fit on a ring around s = 1 cross-checks the
low orders against the double-precision engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .bernoulli import bernoulli_fraction, bernoulli_float
from .errors import AccuracyError, DomainError, PoleProximityError
from .jets import derivatives_from_jet, jet_exp_of_scalar, jet_mul, jet_mul_linear

SIGMA_MIN = -1.0
SIGMA_MAX = 2.0
T_CAP = 5.0e4
MU_CAP = 12
POLE_RADIUS = 1e-6

# Dirichlet rows are processed in chunks of at most this many complex entries.
_CHUNK_ENTRIES = 4_000_000


@dataclass(frozen=True)
class EvalConfig:
    """Knobs for the Euler-Maclaurin engine.

    bernoulli_order is the number q of correction terms (using B_2 .. B_2q);
    max_em_terms caps the Dirichlet truncation length N.
    """

    target_abs_tol: float = 1e-12
    max_em_terms: int = 200_000
    bernoulli_order: int = 12

    def __post_init__(self) -> None:
        if not (self.target_abs_tol > 0):
            raise ValueError("target_abs_tol must be positive")
        if self.max_em_terms < 30:
            raise ValueError("max_em_terms must allow at least 30 terms")
        if self.bernoulli_order < 4 or self.bernoulli_order % 2:
            raise ValueError("bernoulli_order must be even and >= 4")


_DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class ComplexPoint:
    """A point s = sigma + i t inside the working strip."""

    sigma: float
    t: float

    def __post_init__(self) -> None:
        if not (SIGMA_MIN < self.sigma < SIGMA_MAX):
            raise DomainError(f"sigma={self.sigma} outside ({SIGMA_MIN}, {SIGMA_MAX})")
        if not (abs(self.t) <= T_CAP and math.isfinite(self.t)):
            raise DomainError(f"|t|={abs(self.t)} exceeds cap {T_CAP}")

    @property
    def s(self) -> complex:
        return complex(self.sigma, self.t)

    @classmethod
    def from_complex(cls, s: complex) -> "ComplexPoint":
        return cls(float(s.real), float(s.imag))


def _validate_points(s: np.ndarray) -> None:
    sig = s.real
    t = s.imag
    if not np.all(np.isfinite(sig)) or not np.all(np.isfinite(t)):
        raise DomainError("non-finite evaluation point")
    if np.any(sig <= SIGMA_MIN) or np.any(sig >= SIGMA_MAX):
        raise DomainError("sigma outside the open strip (-1, 2)")
    if np.any(np.abs(t) > T_CAP):
        raise DomainError(f"|t| exceeds cap {T_CAP}")
    if np.any(np.abs(s - 1.0) < POLE_RADIUS):
        raise PoleProximityError("evaluation point within 1e-6 of s = 1")


def _n_terms(t_abs: float, mu_max: int, cfg: EvalConfig) -> int:
    # Linear-in-|t| truncation; the mu-dependent bump keeps the differentiated
    # remainder (which gains (log N)^mu) inside the error budget.
    n = max(30, math.ceil(t_abs * (0.5 + 0.05 * mu_max)))
    n = 16 * ((n + 15) // 16)
    if n > cfg.max_em_terms:
        raise DomainError(
            f"required {n} Euler-Maclaurin terms exceeds max_em_terms={cfg.max_em_terms}"
        )
    return n


# pi to longdouble precision (the decimal literal carries 30 digits).
_PI_LD = np.longdouble("3.14159265358979323846264338328")


def _phase_matrix(t: np.ndarray, logn_ld: np.ndarray) -> np.ndarray:
    """t_p * log(n) reduced mod 2 pi, carried in extended precision.

    A double-precision log n already costs ~|t log n| * 1e-16 radians of
    phase at t ~ 5e4, which is visible against a 1e-12 target; the x87
    longdouble path keeps the reduced phase good to ~1e-14 radians."""
    prod = np.multiply.outer(t.astype(np.longdouble), logn_ld)
    two_pi = np.longdouble(2) * _PI_LD
    prod -= two_pi * np.floor(prod / two_pi)
    return prod


def _em_group(sg: np.ndarray, n_terms: int, mu_max: int, q: int) -> np.ndarray:
    """Jet coefficients (P, mu_max+1) for a batch sharing one truncation N.

    Derivative orders >= 4 amplify coefficient roundoff by mu! against
    values that no longer dominate the term magnitudes, so those requests
    run the whole group in extended precision; the scan workhorses
    (mu <= 3) stay in fast double arithmetic.
    """
    m1 = mu_max + 1
    p = sg.shape[0]
    use_ld = mu_max >= 4
    cdtype = np.clongdouble if use_ld else np.complex128
    fdtype = np.longdouble if use_ld else np.float64
    half = fdtype(0.5)
    coeffs = np.zeros((p, m1), dtype=cdtype)
    sig = sg.real.astype(fdtype)
    sgl = sg.astype(cdtype)

    # Dirichlet block sum_{n<N} n^-s, differentiated termwise.
    n = np.arange(1, n_terms, dtype=float)
    logn_ld = np.log(n.astype(np.longdouble))
    logn = logn_ld.astype(fdtype)
    weights = np.empty((m1, n_terms - 1), dtype=fdtype)
    weights[0] = 1.0
    for a in range(1, m1):
        weights[a] = weights[a - 1] * (-logn) / fdtype(a)
    rows_per_chunk = max(1, _CHUNK_ENTRIES // n_terms)
    for lo in range(0, p, rows_per_chunk):
        hi = min(lo + rows_per_chunk, p)
        mag = np.exp(-np.multiply.outer(sig[lo:hi], logn))
        phase = _phase_matrix(sg[lo:hi].imag, logn_ld).astype(fdtype)
        bre = mag * np.cos(phase)
        bim = -mag * np.sin(phase)
        for a in range(m1):
            coeffs[lo:hi, a].real = np.sum(bre * weights[a][None, :], axis=1)
            coeffs[lo:hi, a].imag = np.sum(bim * weights[a][None, :], axis=1)

    logN_ld = np.log(np.longdouble(n_terms))
    logN = fdtype(logN_ld)
    phase_n = _phase_matrix(sg.imag, logN_ld[None])[:, 0].astype(fdtype)
    npow = np.exp(-sig * logN) * (np.cos(phase_n) - 1j * np.sin(phase_n)).astype(cdtype)
    a0 = jet_exp_of_scalar(npow, -logN, mu_max)

    # midpoint term N^-s / 2
    coeffs += half * a0

    # tail N^(1-s)/(s-1)
    sm1 = sgl - 1.0
    geo = np.empty((p, m1), dtype=cdtype)
    geo[:, 0] = 1.0 / sm1
    for a in range(1, m1):
        geo[:, a] = -geo[:, a - 1] / sm1
    coeffs += jet_mul(a0 * n_terms, geo)

    # Bernoulli corrections with rising-factorial jets s(s+1)...(s+2r-2)
    rising = np.zeros((p, m1), dtype=cdtype)
    rising[:, 0] = sgl
    if m1 > 1:
        rising[:, 1] = 1.0
    scale = fdtype(1.0) / n_terms
    for r in range(1, q + 1):
        if r > 1:
            rising = jet_mul_linear(rising, sgl + (2 * r - 3))
            rising = jet_mul_linear(rising, sgl + (2 * r - 2))
        b = fdtype(bernoulli_float(2 * r)) / math.factorial(2 * r)
        coeffs += (b * scale ** (2 * r - 1)) * jet_mul(rising, a0)

    return derivatives_from_jet(coeffs).astype(np.complex128)


def zeta_jets(
    s: np.ndarray, mu_max: int, cfg: EvalConfig | None = None
) -> np.ndarray:
    """zeta^(mu)(s_p) for mu = 0..mu_max, shape (len(s), mu_max+1).

    Each point's value depends only on the point itself (truncation lengths
    are a pure function of |t|), so any partition of the batch reproduces
    identical bits.
    """
    if cfg is None:
        cfg = _DEFAULT_CONFIG
    if not (0 <= mu_max <= MU_CAP):
        raise DomainError(f"mu_max={mu_max} outside 0..{MU_CAP}")
    s = np.ascontiguousarray(np.asarray(s, dtype=complex).ravel())
    _validate_points(s)

    out = np.empty((s.shape[0], mu_max + 1), dtype=complex)
    lengths = np.array([_n_terms(ta, mu_max, cfg) for ta in np.abs(s.imag)])
    for n_terms in np.unique(lengths):
        mask = lengths == n_terms
        out[mask] = _em_group(s[mask], int(n_terms), mu_max, cfg.bernoulli_order)
    return out


def zeta_deriv(s: complex, mu: int = 0, cfg: EvalConfig | None = None) -> complex:
    """mu-th derivative of zeta at a single strip point."""
    if not (0 <= mu <= MU_CAP):
        raise DomainError(f"mu={mu} outside 0..{MU_CAP}")
    return complex(zeta_jets(np.array([s]), mu, cfg)[0, mu])


# ---------------------------------------------------------------------------
# Stieltjes constants


@dataclass(frozen=True)
class StieltjesTable:
    """Immutable table of c_0..c_{n_max} around the Laurent expansion
    zeta(s) = 1/(s-1) + sum_n (-1)^n c_n (s-1)^n / n!."""

    values: tuple[float, ...]
    method: str
    cross_checked_through: int

    def __getitem__(self, n: int) -> float:
        return self.values[n]


def _log_power_derivative_coeffs(n: int, d_max: int) -> list[dict[int, int]]:
    """Integer coefficient dicts for f^(d)(x), f(x) = log(x)^n / x,
    written as x^-(d+1) * sum_a coeff[a] * log(x)^a, for d = 0..d_max."""
    seq = [{n: 1}]
    for d in range(d_max):
        cur = seq[-1]
        nxt: dict[int, int] = {}
        for a, c in cur.items():
            if a > 0:
                nxt[a - 1] = nxt.get(a - 1, 0) + a * c
            nxt[a] = nxt.get(a, 0) - (d + 1) * c
        seq.append(nxt)
    return seq


def stieltjes_limit_formula(n: int, m: int = 250, q: int = 18, dps: int = 50) -> float:
    """c_n via the accelerated limit formula, evaluated in extended precision.

    The bare limit loses ~(log m)^(n+1)/(n+1) digits to cancellation, which
    is fatal in double for n around 15; running the whole formula at dps~50
    and rounding once at the end sidesteps that entirely.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    with mpmath.workdps(dps):
        lnm = mpmath.ln(m)
        acc = mpmath.mpf(0)
        for l in range(1, m + 1):
            acc += mpmath.ln(l) ** n / l
        acc -= lnm ** (n + 1) / (n + 1)
        acc -= lnm ** n / (2 * m)
        derivs = _log_power_derivative_coeffs(n, 2 * q - 1)
        for r in range(1, q + 1):
            d = 2 * r - 1
            val = mpmath.mpf(0)
            for a, c in derivs[d].items():
                val += c * lnm ** a
            val /= mpmath.mpf(m) ** (d + 1)
            b = bernoulli_fraction(2 * r) / math.factorial(2 * r)
            acc -= val * mpmath.mpf(b.numerator) / b.denominator
        return float(acc)


def stieltjes_laurent_fit(
    n_max: int = 10,
    radius: float = 0.9,
    samples: int = 128,
    cfg: EvalConfig | None = None,
) -> list[float]:
    """c_0..c_{n_max} from a least-squares (DFT) fit of the regular part
    zeta(s) - 1/(s-1) on a ring around s = 1, sampled with the
    double-precision engine. Noise grows like n! eps / radius^n, so this is
    only meaningful through n ~ 10."""
    phi = 2.0 * math.pi * np.arange(samples) / samples
    ring = 1.0 + radius * np.exp(1j * phi)
    g = zeta_jets(ring, 0, cfg)[:, 0] - 1.0 / (ring - 1.0)
    out = []
    for n in range(n_max + 1):
        a_n = np.sum(g * np.exp(-1j * n * phi)) / (samples * radius ** n)
        out.append(float((-1) ** n * math.factorial(n) * a_n.real))
    return out


@lru_cache(maxsize=None)
def stieltjes_table(n_max: int = 20) -> StieltjesTable:
    """Build (once) the cached table, cross-checking the two methods."""
    values = tuple(stieltjes_limit_formula(n) for n in range(n_max + 1))
    if not (0.577215 < values[0] < 0.577216):
        raise AccuracyError(f"c_0 = {values[0]} outside its known window")
    check_through = min(10, n_max)
    fit = stieltjes_laurent_fit(n_max=check_through)
    for n in range(check_through + 1):
        if abs(values[n] - fit[n]) > 1e-9:
            raise AccuracyError(
                f"stieltjes c_{n}: limit formula {values[n]} vs ring fit {fit[n]}"
            )
    return StieltjesTable(
        values=values, method="limit-formula", cross_checked_through=check_through
    )


def stieltjes(n: int) -> float:
    """c_n for 0 <= n <= 17."""
    if not (0 <= n <= 17):
        raise DomainError("stieltjes supports n = 0..17")
    return stieltjes_table()[n]
