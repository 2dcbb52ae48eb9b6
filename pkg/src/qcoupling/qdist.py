"""Coupled (deformed-Gaussian) distributions, escort transforms, and
generalized entropy.

The central family is the generalized Gaussian
    pdf(x) = sqrt(beta)/c_q(q) * exp_q(-beta (x - mu)^2),
with coupling q > -2, generalized scale sigma_sq, and
beta = 1/((2+q) sigma_sq).  For q > 0 the support is the compact
interval |x - mu| < 1/sqrt(q beta); for -2 < q < 0 the tails decay like
|x|^(2/q); q <= -2 cannot be normalized.

The escort (coupled) transform raises probabilities to the power 1 - q
and renormalizes; applied to a family member it lands back in the
family, and the escort variance reproduces sigma_sq exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln

from ._quadrature import line_quad, real_quad
from .errors import DomainError, InsufficientDataError
from .qcore import COUPLING_EPS, coupling_value, exp_q
from .qseq import conj_hat

PRESERVE_VARIANCE = "preserve-variance"
PRESERVE_BETA = "preserve-beta"
PRESERVE_NORMALIZATION = "preserve-normalization"

# Summed squared normals are used for integer-dof chi-square draws only
# up to this many degrees of freedom; beyond that the gamma sampler is
# both exact and cheaper.
_MAX_SUMMED_NORMALS = 32


def _gammaln_halfdiff(a):
    """gammaln(a) - gammaln(a + 0.5) without cancellation.

    The direct difference of two gammaln values loses ~eps*gammaln(a)
    absolute accuracy, which matters when a is large (small |q|); the
    Stirling-series difference keeps the absolute error near eps.
    """
    if a < 25.0:
        return gammaln(a) - gammaln(a + 0.5)
    b = a + 0.5
    out = 0.5 - a * math.log1p(0.5 / a) - 0.5 * math.log(a)
    out += (1.0 / a - 1.0 / b) / 12.0
    out -= (a ** -3 - b ** -3) / 360.0
    out += (a ** -5 - b ** -5) / 1260.0
    return out


def c_q(q) -> float:
    """Normalization constant of the standard member: the integral of
    exp_q(-x^2) over the line.

    Three branches (poles of the Gamma pairs cancel in each):
    q > 0 compact, q = 0 classical sqrt(pi), -2 < q < 0 heavy-tail.
    """
    q = coupling_value(q)
    if q <= -2.0:
        raise DomainError(f"not normalizable for coupling {q} <= -2")
    if abs(q) <= COUPLING_EPS:
        return math.sqrt(math.pi)
    if q > 0.0:
        return math.sqrt(math.pi / q) * math.exp(_gammaln_halfdiff(1.0 / q + 1.0))
    r = -1.0 / q
    return math.sqrt(math.pi * r) * math.exp(_gammaln_halfdiff(r - 0.5))


@dataclass(frozen=True)
class QGaussian:
    """Generalized Gaussian with coupling q, location mu, and
    generalized scale sigma_sq (the escort variance)."""

    q: float
    mu: float = 0.0
    sigma_sq: float = 1.0

    def __post_init__(self):
        q = coupling_value(self.q)
        if q <= -2.0:
            raise DomainError(f"coupling {q} <= -2 is not normalizable")
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma_sq)):
            raise DomainError("mu and sigma_sq must be finite")
        if self.sigma_sq <= 0.0:
            raise DomainError("sigma_sq must be positive")

    @property
    def beta(self) -> float:
        return 1.0 / ((2.0 + self.q) * self.sigma_sq)

    @property
    def amplitude(self) -> float:
        return math.sqrt(self.beta) / c_q(self.q)


def qgaussian_pdf(dist: QGaussian, x):
    """Density of a QGaussian at x (scalar or array)."""
    if np.ndim(x) > 0:
        u = np.asarray(x, dtype=float) - dist.mu
        with np.errstate(over="ignore"):
            arg = -dist.beta * u * u
        out = np.zeros_like(u)
        ok = np.isfinite(arg)  # beta*u^2 past float range: density is 0
        out[ok] = dist.amplitude * exp_q(dist.q, arg[ok])
        return out
    u = float(x) - dist.mu
    arg = -dist.beta * u * u
    if not math.isfinite(arg):
        return 0.0
    return dist.amplitude * exp_q(dist.q, arg)


def support_bounds(dist: QGaussian) -> tuple[float, float]:
    """Support interval; the whole line unless q > 0."""
    if dist.q > COUPLING_EPS:
        half = 1.0 / math.sqrt(dist.q * dist.beta)
        return dist.mu - half, dist.mu + half
    return -math.inf, math.inf


def qgaussian_mass(dist: QGaussian) -> float:
    """Numeric integral of the pdf (should be 1); used as a self-check."""
    f = lambda x: qgaussian_pdf(dist, x)
    q, beta = dist.q, dist.beta
    if q > COUPLING_EPS:
        lo, hi = support_bounds(dist)
        val, _ = real_quad(f, lo, hi, points=[dist.mu])
        return val
    shifted = lambda u: f(u + dist.mu)
    if abs(q) <= COUPLING_EPS:
        val, _ = line_quad(shifted, math.sqrt(45.0 / beta))
        return val
    core = max(10.0 / math.sqrt(abs(q) * beta), 10.0 / math.sqrt(beta))
    # breakpoints keep the adaptive rule from overlooking a central bump
    # that is narrow relative to the heavy-tail core
    edge = math.sqrt(45.0 / beta)
    val, _ = line_quad(shifted, core, tail_power=2.0 / q, points=[-edge, 0.0, edge])
    return val


@dataclass(frozen=True)
class QAlphaFamily:
    """Unnormalized generalized exponential family
    a * exp_q(-beta |x|^alpha) with 0 < alpha <= 2."""

    q: float
    alpha: float
    a: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        coupling_value(self.q)
        if not 0.0 < self.alpha <= 2.0:
            raise DomainError(f"alpha must be in (0, 2], got {self.alpha}")
        if not (self.a > 0.0 and math.isfinite(self.a)):
            raise DomainError("amplitude a must be positive and finite")
        if not (self.beta > 0.0 and math.isfinite(self.beta)):
            raise DomainError("beta must be positive and finite")


def q_alpha_pdf(fam: QAlphaFamily, x):
    """Unnormalized density a * exp_q(-beta |x|^alpha)."""
    if np.ndim(x) > 0:
        ax = np.abs(np.asarray(x, dtype=float))
        with np.errstate(over="ignore"):
            arg = -fam.beta * ax ** fam.alpha
        out = np.zeros_like(ax)
        ok = np.isfinite(arg)
        out[ok] = fam.a * exp_q(fam.q, arg[ok])
        return out
    try:
        arg = -fam.beta * abs(float(x)) ** fam.alpha
    except OverflowError:
        return 0.0
    if not math.isfinite(arg):
        return 0.0
    return fam.a * exp_q(fam.q, arg)


def q_alpha_mass(fam: QAlphaFamily) -> float:
    """Numeric mass of the family; DomainError when divergent."""
    if fam.q <= -fam.alpha:
        raise DomainError(
            f"mass diverges for coupling {fam.q} <= -alpha = {-fam.alpha}"
        )
    f = lambda x: q_alpha_pdf(fam, x)
    q, alpha, beta = fam.q, fam.alpha, fam.beta
    if q > COUPLING_EPS:
        half = (1.0 / (q * beta)) ** (1.0 / alpha)
        val, _ = real_quad(f, -half, half, points=[0.0])
        return val
    if abs(q) <= COUPLING_EPS:
        val, _ = line_quad(f, (45.0 / beta) ** (1.0 / alpha))
        return val
    core = max((100.0 / (abs(q) * beta)) ** (1.0 / alpha), 5.0)
    edge = (45.0 / beta) ** (1.0 / alpha)
    val, _ = line_quad(f, core, tail_power=alpha / q, points=[-edge, 0.0, edge])
    return val


def q_alpha_normalize(fam: QAlphaFamily) -> QAlphaFamily:
    """Rescale the amplitude so the family integrates to 1."""
    return replace(fam, a=fam.a / q_alpha_mass(fam))


@dataclass(frozen=True, eq=False)
class DensityGrid:
    """Uniformly spaced density samples: f[j] at x0 + j*dx."""

    x0: float
    dx: float
    f: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "f", np.asarray(self.f, dtype=float))
        if not (math.isfinite(self.x0) and self.dx > 0.0 and math.isfinite(self.dx)):
            raise DomainError("grid needs finite x0 and dx > 0")
        if self.f.ndim != 1 or self.f.size < 2:
            raise DomainError("grid needs a 1-d array of at least 2 samples")
        if not np.all(np.isfinite(self.f)) or np.any(self.f < 0.0):
            raise DomainError("grid values must be finite and nonnegative")

    @property
    def xs(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.f.size)

    def mass(self) -> float:
        return float(np.trapezoid(self.f, dx=self.dx))


def _validated_probs(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise DomainError("probabilities must be a nonempty 1-d array")
    if not np.all(np.isfinite(p)) or np.any(p < 0.0):
        raise DomainError("probabilities must be finite and nonnegative")
    if abs(p.sum() - 1.0) > 1e-12 * p.size:
        raise DomainError(f"probabilities sum to {p.sum()!r}, not 1")
    return p


def coupled_discrete(p, q) -> np.ndarray:
    """Escort transform p_i^(1-q) / sum_j p_j^(1-q).

    Zero states stay zero for q < 1; for q >= 1 they make the transform
    diverge and raise DomainError.
    """
    q = coupling_value(q)
    p = _validated_probs(p)
    zero = p == 0.0
    if np.any(zero) and 1.0 - q <= 0.0:
        raise DomainError("escort with q >= 1 diverges on zero states")
    w = np.zeros_like(p)
    w[~zero] = p[~zero] ** (1.0 - q)
    z = w.sum()
    if not (math.isfinite(z) and z > 0.0):
        raise DomainError("escort normalizer is not finite and positive")
    return w / z


def coupled_density(grid: DensityGrid, q) -> DensityGrid:
    """Escort transform of a gridded density, renormalized by trapezoid."""
    q = coupling_value(q)
    zero = grid.f == 0.0
    if np.any(zero) and 1.0 - q <= 0.0:
        raise DomainError("escort with q >= 1 diverges on zero density values")
    w = np.zeros_like(grid.f)
    w[~zero] = grid.f[~zero] ** (1.0 - q)
    z = float(np.trapezoid(w, dx=grid.dx))
    if not (math.isfinite(z) and z > 0.0):
        raise DomainError("escort normalizer is not finite and positive")
    return DensityGrid(grid.x0, grid.dx, w / z)


def entropy_discrete(p, q) -> float:
    """Generalized entropy (-1 + sum p^(1-q))/q; Shannon entropy at the
    q -> 0 limit.  Zero states contribute zero."""
    q = coupling_value(q)
    p = _validated_probs(p)
    total = float(p.sum())
    p = p[p > 0.0]
    if abs(q) <= COUPLING_EPS:
        return float(-(p * np.log(p)).sum())
    # sum p^(1-q) - 1 = sum p*expm1(-q ln p) + (sum p - 1), which avoids
    # the catastrophic cancellation of the direct form at small |q|
    return (float((p * np.expm1(-q * np.log(p))).sum()) + (total - 1.0)) / q


def entropy_density(grid: DensityGrid, q) -> float:
    """Generalized differential entropy of a gridded density."""
    q = coupling_value(q)
    f = grid.f
    pos = f > 0.0
    if abs(q) <= COUPLING_EPS:
        w = np.zeros_like(f)
        w[pos] = f[pos] * np.log(f[pos])
        return float(-np.trapezoid(w, dx=grid.dx))
    w = np.zeros_like(f)
    w[pos] = f[pos] ** (1.0 - q)
    val = float(np.trapezoid(w, dx=grid.dx))
    if not math.isfinite(val):
        raise DomainError("entropy integral diverges on this grid")
    return (-1.0 + val) / q


def q_moments(grid: DensityGrid, q) -> tuple[float, float]:
    """Generalized mean and variance: ordinary moments of the escort
    density coupled_density(grid, q)."""
    cd = coupled_density(grid, q)
    xs = cd.xs
    mean = float(np.trapezoid(xs * cd.f, dx=cd.dx))
    var = float(np.trapezoid((xs - mean) ** 2 * cd.f, dx=cd.dx))
    if not (math.isfinite(mean) and math.isfinite(var)):
        raise DomainError("generalized moments diverge on this grid")
    return mean, var


class StudentTMap(NamedTuple):
    """Student-t with nu dof as a family member, plus the dual coupling."""

    dist: QGaussian
    q_hat: float


def student_t_map(nu) -> StudentTMap:
    """Map nu > 0 degrees of freedom to the matching family member.

    The standard t density is exactly the member with q = -2/(nu+1) and
    sigma_sq = 1 (so beta = 1/(2+q)); nu = 1 is Cauchy.  The conjugate
    coupling comes out as q_hat = 2/nu.
    """
    nu = coupling_value(nu)
    if nu <= 0.0:
        raise DomainError(f"degrees of freedom must be positive, got {nu}")
    q = -2.0 / (nu + 1.0)
    return StudentTMap(QGaussian(q, 0.0, 1.0), 2.0 / nu)


def kappa_map(kappa) -> float:
    """Reciprocal parameterization q = 1/kappa for kappa > 0."""
    kappa = coupling_value(kappa)
    if kappa <= 0.0:
        raise DomainError(f"kappa must be positive, got {kappa}")
    return 1.0 / kappa


def kappa_shift(kappa, n: int) -> float:
    """Index shift kappa_n = kappa + n/2 (the sequence in reciprocal form)."""
    return coupling_value(kappa) + int(n) / 2.0


def conjugate_pair(dist: QGaussian, mode: str = PRESERVE_VARIANCE) -> QGaussian:
    """Map a family member to its hat-conjugate partner.

    The conjugate coupling is conj_hat(q); the scale of the partner is a
    convention choice:

    * preserve-variance keeps sigma_sq;
    * preserve-beta keeps beta (sigma_sq rescales by (2+q)/(2+q_hat));
    * preserve-normalization keeps the peak amplitude matched to the
      original normalization, sigma_sq_hat = 2 sigma_sq/(2+q).

    All three are involutions up to rounding.  The q = 0 member is the
    fixed point.
    """
    if abs(dist.q) <= COUPLING_EPS:
        return dist
    qh = conj_hat(dist.q)
    if mode == PRESERVE_VARIANCE:
        sigma_sq = dist.sigma_sq
    elif mode == PRESERVE_BETA:
        sigma_sq = 1.0 / ((2.0 + qh) * dist.beta)
    elif mode == PRESERVE_NORMALIZATION:
        sigma_sq = 2.0 * dist.sigma_sq / (2.0 + dist.q)
    else:
        raise DomainError(f"unknown conjugate mode {mode!r}")
    return QGaussian(qh, dist.mu, sigma_sq)


def coupling_phi(q, alpha) -> float:
    """Scale-free coupling of the (q, alpha) family: q/alpha for q >= 0
    and -q/(alpha + q) for -alpha < q < 0; diverges at q <= -alpha."""
    q = coupling_value(q)
    alpha = coupling_value(alpha)
    if not 0.0 < alpha <= 2.0:
        raise DomainError(f"alpha must be in (0, 2], got {alpha}")
    if q <= -alpha:
        raise DomainError(f"coupling {q} <= -alpha = {-alpha} is out of range")
    if q >= 0.0:
        return q / alpha
    return -q / (alpha + q)


def sample_qgaussian(dist: QGaussian, n: int, seed=None) -> np.ndarray:
    """Draw n samples; deterministic for a given seed.

    q < 0 uses the scaled Student-t construction (normal over the square
    root of an independent chi-square; summed squared normals for small
    integer dof, gamma draws otherwise).  q = 0 is the normal path.
    q > 0 rejects from the uniform envelope over the compact support,
    with acceptance rate c_q(q) sqrt(q)/2.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"sample count must be a positive integer, got {n!r}")
    n = int(n)
    rng = np.random.default_rng(seed)
    q, mu, scale = dist.q, dist.mu, math.sqrt(dist.sigma_sq)

    if abs(q) <= COUPLING_EPS:
        return mu + scale * rng.standard_normal(n)

    if q < 0.0:
        nu = -2.0 / q - 1.0
        z = rng.standard_normal(n)
        nearest = round(nu)
        if 1 <= nearest <= _MAX_SUMMED_NORMALS and abs(nu - nearest) < 1e-9:
            v = (rng.standard_normal((nearest, n)) ** 2).sum(axis=0)
            nu = float(nearest)
        else:
            v = 2.0 * rng.standard_gamma(nu / 2.0, n)
        return mu + scale * z * np.sqrt(nu / v)

    # compact support: rejection from the uniform envelope
    beta = dist.beta
    half = 1.0 / math.sqrt(q * beta)
    rate = c_q(q) * math.sqrt(q) / 2.0
    out = np.empty(n)
    got = 0
    while got < n:
        m = min(int((n - got) / rate * 1.25) + 16, 4_000_000)
        xs = rng.uniform(-half, half, m)
        keep = rng.uniform(0.0, 1.0, m) <= exp_q(q, -beta * xs * xs)
        acc = xs[keep]
        take = min(acc.size, n - got)
        out[got : got + take] = acc[:take]
        got += take
    return mu + out


def fit_requires(n_samples: int, minimum: int = 1000):
    """Shared guard for statistical fits."""
    if n_samples < minimum:
        raise InsufficientDataError(
            f"need at least {minimum} samples, got {n_samples}"
        )
