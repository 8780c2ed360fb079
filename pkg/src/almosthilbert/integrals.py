"""Singular convolution operators in one dimension.

Periodic model: signals sampled at M uniform points of [0, 1) carry a
Hilbert transform in two forms — the exact frequency multiplier -i sgn(k)
and the truncated principal-value quadrature against the periodized
kernel cot(pi u) (the period-1 sum of 1/(pi u)).  A generic odd-kernel
operator covers both: its kernel is Omega(sgn(x - y)) * pi * |cot(pi(x - y))|
with the band |x - y| < eps excluded, and the Hilbert choice
Omega(s) = s/pi delegates straight to it, so the two code paths are one.

Line model: the fractional integral of order alpha on a bounded grid,
with the |x - y|^{alpha-1} kernel integrated in closed form over every
cell (power-law antiderivative), which keeps full quadrature order at
the diagonal and makes the kernel matrix exactly symmetric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve
from scipy.special import gamma as _gamma_fn

from .report import VerificationReport, check_result, measured
from .spaces import GridFunction, lp_norm

_CANCELLATION_TOL = 1e-12


@dataclass(frozen=True)
class PeriodicSignal:
    """Complex samples at the M uniform points j/M of the period-1 circle."""

    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=np.complex128)
        if s.ndim != 1:
            raise ValueError("a signal is a 1-D sample vector")
        m = s.size
        if m < 4 or m & (m - 1) != 0:
            raise ValueError(f"sample count must be a power of two >= 4, got {m}")
        if not np.all(np.isfinite(s.view(np.float64))):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "samples", s)

    @property
    def M(self) -> int:
        return self.samples.size

    def _require_same_size(self, other: "PeriodicSignal"):
        if other.M != self.M:
            raise ValueError(f"signal sizes differ: {self.M} vs {other.M}")

    def __add__(self, other):
        self._require_same_size(other)
        return PeriodicSignal(self.samples + other.samples)

    def __sub__(self, other):
        self._require_same_size(other)
        return PeriodicSignal(self.samples - other.samples)

    def __mul__(self, scalar):
        return PeriodicSignal(complex(scalar) * self.samples)

    __rmul__ = __mul__


def signal_from_callable(fn, m: int) -> PeriodicSignal:
    t = np.arange(m) / m
    return PeriodicSignal(np.asarray(fn(t), dtype=np.complex128))


def signal_lp_norm(f: PeriodicSignal, p: float) -> float:
    a = np.abs(f.samples)
    if p == np.inf:
        return float(np.max(a))
    if p < 1:
        raise ValueError(f"p must lie in [1, inf], got {p}")
    return float(np.sum(a**p) / f.M) ** (1.0 / p)


def signal_inner(f: PeriodicSignal, g: PeriodicSignal) -> complex:
    f._require_same_size(g)
    return complex(np.sum(f.samples * np.conj(g.samples)) / f.M)


def random_bandlimited(rng, m: int, kmax: int | None = None) -> PeriodicSignal:
    """Random mean-zero signal with spectrum in modes 1..kmax (both signs);
    the zero and Nyquist modes stay empty."""
    if kmax is None:
        kmax = max(1, m // 8)
    if not 1 <= kmax < m // 2:
        raise ValueError(f"kmax must lie in [1, {m // 2 - 1}], got {kmax}")
    spec = np.zeros(m, dtype=np.complex128)
    ks = np.arange(1, kmax + 1)
    spec[ks] = rng.standard_normal(kmax) + 1j * rng.standard_normal(kmax)
    spec[m - ks] = rng.standard_normal(kmax) + 1j * rng.standard_normal(kmax)
    return PeriodicSignal(np.fft.ifft(spec))


def hilbert_multiplier(f: PeriodicSignal) -> PeriodicSignal:
    """Frequency-side transform: multiply mode k by -i sgn(k).

    The zero mode is annihilated and so is the Nyquist mode, where the
    sign has no meaning; on the remaining modes this is a unitary map,
    hence an exact isometry on mean-zero Nyquist-free signals.
    """
    m = f.M
    mult = np.concatenate([[0.0], np.full(m // 2 - 1, -1j), [0.0],
                           np.full(m // 2 - 1, 1j)])
    return PeriodicSignal(np.fft.ifft(mult * np.fft.fft(f.samples)))


def odd_kernel_operator(f: PeriodicSignal, omega, eps: float) -> PeriodicSignal:
    """Truncated singular convolution with an odd homogeneous kernel.

    Output at x is the sum over sample points y with |x - y| >= eps
    (periodic distance) of Omega(sgn(x - y)) * pi * |cot(pi(x - y))| * f(y) / M.
    The two-point cancellation Omega(1) + Omega(-1) = 0 is required; it is
    what makes the truncated integrals bounded uniformly in eps.
    """
    om_pos, om_neg = complex(omega(1)), complex(omega(-1))
    if abs(om_pos + om_neg) > _CANCELLATION_TOL * (abs(om_pos) + abs(om_neg) + 1.0):
        raise ValueError("kernel cancellation violated: omega(1) + omega(-1) must vanish")
    m = f.M
    if eps < 1.0 / m:
        raise ValueError(f"truncation eps={eps} lies below the grid spacing {1.0 / m}")
    u = np.arange(m) / m
    u = np.where(u > 0.5, u - 1.0, u)
    kern = np.zeros(m, dtype=np.complex128)
    mask = np.abs(u) >= eps
    um = u[mask]
    kern[mask] = np.where(um > 0, om_pos, om_neg) * np.pi * np.abs(1.0 / np.tan(np.pi * um))
    out = np.fft.ifft(np.fft.fft(kern) * np.fft.fft(f.samples)) / m
    return PeriodicSignal(out)


def _hilbert_omega(s):
    return s / np.pi


def hilbert_pv(f: PeriodicSignal, eps: float) -> PeriodicSignal:
    """Principal-value form of the transform: the odd-kernel operator with
    Omega(s) = s/pi, i.e. quadrature against cot(pi(x - y)) away from the
    excluded band.  Shares the odd-kernel code path verbatim."""
    return odd_kernel_operator(f, _hilbert_omega, eps)


def adjoint_relation_check(op, f: PeriodicSignal, g: PeriodicSignal, sign: int,
                           tol: float = 1e-10) -> VerificationReport:
    """Check <op f, g> = sign * <f, op g> at scale |f|_2 |g|_2."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    lhs = signal_inner(op(f), g)
    rhs = sign * signal_inner(f, op(g))
    scale = signal_lp_norm(f, 2) * signal_lp_norm(g, 2)
    rep = VerificationReport(suite="integral-adjoint")
    rep.add(check_result("adjoint-relation", abs(lhs - rhs), tol * scale,
                         samples=f.M, sign=sign))
    return rep


def lp_bound_report(op, p: float, trials: int = 100, seed: int = 0,
                    m: int = 512) -> VerificationReport:
    """Empirical operator bound on band-limited probes.

    Runs 2*trials probes from one stream and reports the max p-norm ratio;
    the run is declared stable when doubling the trial count grows the
    estimate by at most the factor 1.5.  The estimate is a lower bound on
    the true constant; no analytic value is compared against.
    """
    if not 1.0 < p < np.inf:
        raise ValueError(f"p must lie in (1, inf), got {p}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    ratios = []
    for _ in range(2 * trials):
        probe = random_bandlimited(rng, m)
        nf = signal_lp_norm(probe, p)
        if nf == 0.0:
            continue
        ratios.append(signal_lp_norm(op(probe), p) / nf)
    c_half = max(ratios[:trials])
    c_full = max(ratios)
    rep = VerificationReport(suite="integral-lp-bound")
    rep.add(
        check_result("lp-bound-finite", 0.0 if np.isfinite(c_full) else np.inf,
                      0.0, samples=2 * trials, p=p, m=m),
        check_result("lp-bound-stability", c_full / max(c_half, 1e-300), 1.5,
                      samples=2 * trials, p=p, m=m),
        measured("lp-bound-estimate", c_full, samples=2 * trials, p=p, m=m),
    )
    return rep


def riesz_gamma(alpha: float) -> float:
    """Normalizing constant 2^alpha sqrt(pi) Gamma(alpha/2) / Gamma((1-alpha)/2)."""
    return float(2.0**alpha * math.sqrt(math.pi) * _gamma_fn(alpha / 2.0)
                 / _gamma_fn((1.0 - alpha) / 2.0))


def _power_antiderivative(u: np.ndarray, alpha: float) -> np.ndarray:
    # antiderivative of |u|^(alpha-1): sgn(u) |u|^alpha / alpha
    return np.sign(u) * np.abs(u) ** alpha / alpha


def riesz_potential(f: GridFunction, alpha: float) -> GridFunction:
    """Fractional integral of order alpha on a bounded 1-D grid.

    Every cell's contribution integrates |x - y|^(alpha-1) in closed form
    (the singular cell included), so the kernel weights are a symmetric
    Toeplitz family and the whole map is one linear convolution.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"order must lie in (0, 1), got {alpha}")
    if f.dim != 1:
        raise ValueError("the fractional integral is shipped for 1-D grids only")
    res = f.resolution
    (lo, hi), = f.box
    h = (hi - lo) / res
    d = np.arange(-(res - 1), res)
    kern = (_power_antiderivative((d + 0.5) * h, alpha)
            - _power_antiderivative((d - 0.5) * h, alpha))
    out = fftconvolve(f.values, kern.astype(np.complex128))[res - 1: 2 * res - 1]
    return GridFunction(f.box, out / riesz_gamma(alpha))


def hls_probe(rng, resolution: int) -> GridFunction:
    """Random step function supported on the middle half of the unit box."""
    vals = np.zeros(resolution, dtype=np.complex128)
    blocks = 16
    width = resolution // (2 * blocks)
    levels = rng.standard_normal(blocks) + 1j * rng.standard_normal(blocks)
    start = resolution // 4
    for b in range(blocks):
        vals[start + b * width: start + (b + 1) * width] = levels[b]
    return GridFunction(((0.0, 1.0),), vals)


def hls_bound_report(alpha: float, p: float, trials: int = 100, seed: int = 0,
                     resolution: int = 512) -> VerificationReport:
    """Empirical constant in |I_alpha f|_q <= A |f|_p with 1/q = 1/p - alpha.

    The target exponent is computed from the scaling relation and must
    land in (p, inf); the estimate is reported with the same doubling
    stability criterion as the singular-integral bound.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"order must lie in (0, 1), got {alpha}")
    if not 1.0 < p < np.inf:
        raise ValueError(f"p must lie in (1, inf), got {p}")
    inv_q = 1.0 / p - alpha
    if inv_q <= 0.0:
        raise ValueError(f"exponent relation fails: 1/p - alpha = {inv_q} <= 0")
    q = 1.0 / inv_q
    if not p < q < np.inf:
        raise ValueError(f"exponent relation puts q = {q} outside (p, inf)")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    ratios = []
    for _ in range(2 * trials):
        probe = hls_probe(rng, resolution)
        nf = lp_norm(probe, p)
        if nf == 0.0:
            continue
        ratios.append(lp_norm(riesz_potential(probe, alpha), q) / nf)
    a_half = max(ratios[:trials])
    a_full = max(ratios)
    rep = VerificationReport(suite="integral-hls")
    rep.add(
        check_result("hls-bound-finite", 0.0 if np.isfinite(a_full) else np.inf,
                      0.0, samples=2 * trials, alpha=alpha, p=p, q=q),
        check_result("hls-bound-stability", a_full / max(a_half, 1e-300), 1.5,
                      samples=2 * trials, alpha=alpha, p=p, q=q),
        measured("hls-bound-estimate", a_full, samples=2 * trials,
                 alpha=alpha, p=p, q=q),
    )
    return rep
