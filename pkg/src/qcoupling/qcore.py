"""Deformed exponential algebra for a translated coupling parameter q.

The deformed exponential is exp_q(x) = (1 + q*x)_+^(1/q), with the
classical exponential recovered as q -> 0.  The coupling q also indexes
the deformed arithmetic (q_add, q_prod, ...) under which exp_q turns
sums into products, and the generalized trigonometric functions built
from exp_q of imaginary arguments.

Branch conventions used throughout the package:

* |q| <= COUPLING_EPS evaluates the q -> 0 limit through a second-order
  continuation, exp(x*(1 - q*x/2)), so the limit is smooth rather than a
  hard switch to exp(x).
* A nonpositive base (1 + q*x <= 0) clamps to 0 when q > 0 (compact
  support) and maps to +inf when q < 0 (the divergent end of a heavy
  tail).  These are the only two ways the base can leave (0, inf).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchCutError, DomainError, NumericsError, PoleError, SingularDivisorError

# Couplings below this magnitude are treated as the q -> 0 limit.
COUPLING_EPS = 1e-10

# Tolerance for "exactly at a pole" checks on denominators like 1 - n*q.
_POLE_EPS = 1e-14

# Conjugate-symmetry residual allowed when extracting sin_q from complex
# exponentials (scaled by 1 + |result|).
_RESIDUAL_TOL = 1e-12

HEAVY_TAIL = "heavy-tail"
ZERO = "zero"
COMPACT = "compact"
SUBNORMALIZABLE = "subnormalizable"


def _finite(value, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def coupling_value(q) -> float:
    """Extract a validated float coupling from a float or Coupling."""
    return _finite(q, "coupling q")


def classify_coupling(q) -> str:
    """Regime of a coupling: heavy-tail, zero, compact, or subnormalizable.

    Heavy-tail couplings (-2 < q < 0) give power-law densities with
    finite generalized scale; q <= -2 decays too slowly to normalize;
    q > 0 gives compact support; |q| <= COUPLING_EPS is the classical
    limit.
    """
    q = coupling_value(q)
    if abs(q) <= COUPLING_EPS:
        return ZERO
    if q > 0.0:
        return COMPACT
    if q > -2.0:
        return HEAVY_TAIL
    return SUBNORMALIZABLE


@dataclass(frozen=True)
class Coupling:
    """A validated coupling parameter with its regime classification."""

    q: float

    def __post_init__(self):
        _finite(self.q, "coupling q")

    @property
    def regime(self) -> str:
        return classify_coupling(self.q)

    def __float__(self) -> float:
        return float(self.q)


def exp_q(q, x):
    """Deformed exponential (1 + q*x)_+^(1/q).

    Parameters
    ----------
    q : float or Coupling
        Coupling parameter.
    x : float or ndarray
        Argument; must be finite.

    Returns
    -------
    float or ndarray
        Nonnegative; +inf marks the divergent boundary 1 + q*x -> 0
        with q < 0, while q > 0 clamps to 0 outside the support.
    """
    q = coupling_value(q)
    if np.ndim(x) > 0:
        return _exp_q_array(q, x)
    x = _finite(x, "x")
    if abs(q) <= COUPLING_EPS:
        return math.exp(x * (1.0 - 0.5 * q * x))
    if 1.0 + q * x > 0.0:
        # log1p keeps the exponent accurate even when 1/q is enormous
        try:
            return math.exp(math.log1p(q * x) / q)
        except OverflowError:
            return math.inf
    if q > 0.0:
        return 0.0
    return math.inf


def _exp_q_array(q: float, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("x must be finite")
    if abs(q) <= COUPLING_EPS:
        return np.exp(x * (1.0 - 0.5 * q * x))
    qx = q * x
    out = np.empty_like(qx)
    pos = qx > -1.0
    with np.errstate(over="ignore"):
        out[pos] = np.exp(np.log1p(qx[pos]) / q)
    out[~pos] = 0.0 if q > 0.0 else np.inf
    return out


def ln_q(q, x):
    """Deformed logarithm (x^q - 1)/q, the inverse of exp_q on x > 0."""
    q = coupling_value(q)
    if np.ndim(x) > 0:
        x = np.asarray(x, dtype=float)
        if not (np.all(np.isfinite(x)) and np.all(x > 0.0)):
            raise DomainError("ln_q requires finite x > 0")
        if abs(q) <= COUPLING_EPS:
            lx = np.log(x)
            return lx * (1.0 + 0.5 * q * lx)
        return np.expm1(q * np.log(x)) / q
    x = _finite(x, "x")
    if x <= 0.0:
        raise DomainError(f"ln_q requires x > 0, got {x}")
    if abs(q) <= COUPLING_EPS:
        lx = math.log(x)
        return lx * (1.0 + 0.5 * q * lx)
    # expm1 avoids the x^q - 1 cancellation for small q
    return math.expm1(q * math.log(x)) / q


def q_add(q, x, y) -> float:
    """Deformed sum x + y + q*x*y (turns exp_q products into sums)."""
    q = coupling_value(q)
    return _finite(x, "x") + _finite(y, "y") + q * float(x) * float(y)


def q_sub(q, x, y) -> float:
    """Inverse of q_add in y: (x - y)/(1 + q*y)."""
    q = coupling_value(q)
    x = _finite(x, "x")
    y = _finite(y, "y")
    den = 1.0 + q * y
    if den == 0.0:
        raise SingularDivisorError("q_sub divisor 1 + q*y vanishes")
    return (x - y) / den


def q_add_n(q, xs) -> float:
    """Left fold of q_add over a sequence; empty input gives 0."""
    q = coupling_value(q)
    total = 0.0
    for x in xs:
        total = q_add(q, total, x)
    return total


def q_prod(q, x, y) -> float:
    """Deformed product [x^q + y^q - 1]_+^(1/q) for positive x, y.

    Turns ordinary sums in the exponent into products:
    exp_q(x + y) = q_prod(q, exp_q(x), exp_q(y)).
    """
    return q_prod_n(q, (x, y))


def q_div(q, x, y) -> float:
    """Deformed division [x^q - y^q + 1]_+^(1/q), inverse of q_prod."""
    q = coupling_value(q)
    x = _finite(x, "x")
    y = _finite(y, "y")
    if x <= 0.0 or y <= 0.0:
        raise DomainError("q_div requires positive operands")
    if abs(q) <= COUPLING_EPS:
        return x / y
    shift = math.expm1(q * math.log(x)) - math.expm1(q * math.log(y))
    return _bracket_root(q, shift)


def q_prod_n(q, xs) -> float:
    """Deformed product over a sequence; empty input gives 1."""
    q = coupling_value(q)
    xs = [_finite(x, "operand") for x in xs]
    if any(x <= 0.0 for x in xs):
        raise DomainError("q_prod requires positive operands")
    if not xs:
        return 1.0
    if abs(q) <= COUPLING_EPS:
        return float(np.prod(xs))
    return _bracket_root(q, sum(math.expm1(q * math.log(x)) for x in xs))


def _bracket_root(q: float, shift: float) -> float:
    """(1 + shift)_+^(1/q) with the same boundary semantics as exp_q,
    where shift is the bracket's displacement from 1 (kept separate for
    accuracy at small couplings)."""
    if shift > -1.0:
        try:
            return math.exp(math.log1p(shift) / q)
        except OverflowError:
            return math.inf
    return 0.0 if q > 0.0 else math.inf


def power_rescale(q, x, p) -> tuple[float, float]:
    """Rewrite exp_q(x)^p as a single deformed exponential.

    Returns (q/p, p*x) so that exp_q(x)**p == exp_q(q/p, p*x).
    """
    q = coupling_value(q)
    x = _finite(x, "x")
    p = _finite(p, "p")
    if p == 0.0:
        raise DomainError("power_rescale requires p != 0")
    return q / p, p * x


def exp_q_complex(q, z) -> complex:
    """Principal-branch deformed exponential of a complex argument.

    The branch cut sits where 1 + q*z is on the nonpositive real axis;
    evaluation exactly on the cut raises BranchCutError.
    """
    q = coupling_value(q)
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("z must be finite")
    if abs(q) <= COUPLING_EPS:
        return cmath.exp(z * (1.0 - 0.5 * q * z))
    w = 1.0 + q * z
    if w.imag == 0.0 and w.real <= 0.0:
        raise BranchCutError("1 + q*z on the nonpositive real axis")
    return w ** (1.0 / q)


def sin_q(q, x):
    """Deformed sine from the odd part of exp_q(i*x).

    The two complex exponentials are conjugate off the branch cut, so
    the combination (exp_q(ix) - exp_q(-ix))/2i is real up to rounding;
    the residual imaginary part is checked before being discarded.
    """
    q = coupling_value(q)
    if np.ndim(x) > 0:
        return _sin_q_array(q, x)
    x = _finite(x, "x")
    s = (exp_q_complex(q, 1j * x) - exp_q_complex(q, -1j * x)) / 2j
    if abs(s.imag) > _RESIDUAL_TOL * (1.0 + abs(s.real)):
        raise NumericsError(f"conjugate-symmetry residual {s.imag:.3e} in sin_q")
    return s.real


def _sin_q_array(q: float, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("x must be finite")
    z = 1j * x
    if abs(q) <= COUPLING_EPS:
        ep = np.exp(z * (1.0 - 0.5 * q * z))
        em = np.exp(-z * (1.0 + 0.5 * q * z))
    else:
        # 1 + q*i*x has real part 1, never on the branch cut
        ep = (1.0 + q * z) ** (1.0 / q)
        em = (1.0 - q * z) ** (1.0 / q)
    s = (ep - em) / 2j
    bad = np.abs(s.imag) > _RESIDUAL_TOL * (1.0 + np.abs(s.real))
    if np.any(bad):
        raise NumericsError("conjugate-symmetry residual in sin_q")
    return s.real


def sinc_q(q, x):
    """Deformed sinc: sin_q(x)/x with the removable singularity filled."""
    q = coupling_value(q)
    if np.ndim(x) > 0:
        x = np.asarray(x, dtype=float)
        s = _sin_q_array(q, x)
        out = np.ones_like(s)
        nz = x != 0.0
        out[nz] = s[nz] / x[nz]
        return out
    x = _finite(x, "x")
    if x == 0.0:
        return 1.0
    return sin_q(q, x) / x


def dn_exp_q(q, a, n, x) -> float:
    """n-th derivative of x |-> exp_q(a*x).

    Closed form: a^n * prod_{i=1..n} (1 - (i-1)*q) times the rescaled
    exponential exp_{q/(1-n*q)}((1 - n*q)*a*x).  Couplings q = 1/i for
    i <= n are poles of the rescaling.
    """
    q = coupling_value(q)
    a = _finite(a, "a")
    x = _finite(x, "x")
    n = _positive_int(n)
    coeff = a ** n
    for i in range(1, n + 1):
        if abs(1.0 - i * q) <= _POLE_EPS * i:
            raise PoleError(f"coupling at derivative pole q = 1/{i}")
        coeff *= 1.0 - (i - 1) * q
    scale = 1.0 - n * q
    return coeff * exp_q(q / scale, scale * a * x)


def intn_exp_q(q, a, n, x) -> float:
    """n-th antiderivative of x |-> exp_q(a*x) (integration constant 0).

    Closed form: a^-n * prod_{i=1..n} 1/(1 + i*q) times
    exp_{q/(1+n*q)}((1 + n*q)*a*x).  Couplings q = -1/i for i <= n are
    poles; a must be nonzero.
    """
    q = coupling_value(q)
    a = _finite(a, "a")
    x = _finite(x, "x")
    n = _positive_int(n)
    if a == 0.0:
        raise DomainError("intn_exp_q requires a != 0")
    coeff = a ** -n
    for i in range(1, n + 1):
        den = 1.0 + i * q
        if abs(den) <= _POLE_EPS * i:
            raise PoleError(f"coupling at antiderivative pole q = -1/{i}")
        coeff /= den
    scale = 1.0 + n * q
    return coeff * exp_q(q / scale, scale * a * x)


def _positive_int(n) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise DomainError(f"order n must be a positive integer, got {n!r}")
    return int(n)
