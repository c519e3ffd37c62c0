"""Exponential integral Ei(z) for complex z and li(n**rho) = Ei(rho * log n).

Branch convention
-----------------
Ei is real on the positive real axis (principal value) and

    Ei(z) = -E1(-z) + i*pi*sgn(Im z)        (Im z != 0)

elsewhere, with the cut along the negative real axis. This is the
``ExpIntegralEi`` convention of common computer algebra systems. Along rays
with bounded Re z the function spirals in to +i*pi (upper half plane) or
-i*pi (lower half plane).

Regimes
-------
``ei`` picks a method from |z|:

* ``|z| <= POWER_SERIES_MAX``: gamma + log z + sum z**k / (k k!)
* ``|z| <= CONTINUED_FRACTION_MAX``: E1 continued fraction, modified Lentz
* otherwise: asymptotic series e**z / z * sum k! / z**k, cut at the smallest
  term

If the preferred method fails or reports a poor error estimate the next one
is tried; ``EiEvaluation.method`` always names the method actually used.

Precision budget
----------------
All arithmetic is float64. For arguments z = rho * log(n) the dominant error
is the phase Im z fed to exp(). With gamma <= 1e5 and log n <= 14 we have
Im z <= 1.4e6 and a unit-roundoff phase error of about 3e-10 rad, which is
negligible next to the term magnitudes. Arguments with |Im z| > 1e12 are
refused with ``PhasePrecisionLoss``.
"""

import cmath
import math
import sys
from dataclasses import dataclass
from enum import Enum

from .errors import AccuracyLoss, DomainError, NoConvergence, PhasePrecisionLoss

EULER_GAMMA = 0.57721566490153286060651209008240243
POWER_SERIES_MAX = 8.0
CONTINUED_FRACTION_MAX = 40.0
DEFAULT_TOL = 1e-14
MAX_TERMS = 10_000
MAX_PHASE = 1e12

_EPS = sys.float_info.epsilon
_MAX_EXP_ARG = 709.0
_TINY = 1e-300
# an estimate above this (relative) sends ei() on to the next method
_ACCEPT = 1e-10


class Method(str, Enum):
    POWER_SERIES = "power_series"
    CONTINUED_FRACTION = "continued_fraction"
    ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class EiEvaluation:
    value: complex
    abs_error_estimate: float
    method: Method


def _checked(z):
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z!r}")
    if z == 0:
        raise DomainError("Ei has a logarithmic singularity at z = 0")
    if z.imag == 0 and z.real < 0:
        raise DomainError(f"{z!r} lies on the branch cut")
    if abs(z.imag) > MAX_PHASE:
        raise PhasePrecisionLoss(f"|Im z| = {abs(z.imag):.3g} exceeds {MAX_PHASE:.0e}")
    if z.real > _MAX_EXP_ARG:
        raise DomainError(f"Ei({z!r}) overflows float64")
    return z


def _finish(value, err, method, real_axis):
    if real_axis:
        value = complex(value.real, 0.0)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise NoConvergence(f"{method.value} produced a non-finite value")
    # factor 2: the roundoff models above are first-order
    err = max(2 * err, _EPS * max(abs(value), _TINY))
    return EiEvaluation(value, err, method)


def _ipi(z):
    if z.imag > 0:
        return 1j * math.pi
    if z.imag < 0:
        return -1j * math.pi
    return 0j


def ei_power_series(z, tol=DEFAULT_TOL):
    """Ei(z) from the convergent series around the origin.

    Accurate for small and moderate |z|; beyond |z| ~ 10 the alternating
    terms cancel and the error estimate grows like exp(|z|) * eps.
    """
    z = _checked(z)
    real_axis = z.imag == 0
    head = EULER_GAMMA + (complex(math.log(z.real)) if real_axis else cmath.log(z))
    s = 0j
    power = 1 + 0j
    # |t_k| weighted by the roundoff accumulated forming z**k / k!
    weighted = 0.0
    for k in range(1, MAX_TERMS + 1):
        power *= z / k
        t = power / k
        if abs(t) < tol * abs(head + s):
            q = abs(z) * k / (k + 1) ** 2
            tail = abs(t) / (1 - q) if q < 0.9 else 10 * abs(t)
            break
        s += t
        weighted += 2 * abs(t) * (k + 2)
    else:
        raise NoConvergence(f"power series did not reach tol={tol:g} in {MAX_TERMS} terms at z={z!r}")
    value = head + s
    err = tail + _EPS * (weighted + 2 * abs(head) + abs(value))
    return _finish(value, err, Method.POWER_SERIES, real_axis)


def _e1_lentz(w, tol, max_iter):
    # E1(w) = e**-w / (w+1 - 1/(w+3 - 4/(w+5 - 9/(w+7 - ...))))
    b = w + 1
    c = 1 / _TINY
    d = 1 / b
    h = d
    for i in range(1, max_iter + 1):
        a = -float(i * i)
        b += 2
        d = a * d + b
        if d == 0:
            d = _TINY
        c = b + a / c
        if c == 0:
            c = _TINY
        d = 1 / d
        delta = c * d
        h *= delta
        if abs(delta - 1) < tol:
            return h * cmath.exp(-w), abs(delta - 1), i
    raise NoConvergence(f"continued fraction did not converge in {max_iter} iterations at w={w!r}")


def ei_continued_fraction(z, tol=DEFAULT_TOL, max_iter=MAX_TERMS):
    """Ei(z) = -E1(-z) + i*pi*sgn(Im z) with E1 from its continued fraction."""
    z = _checked(z)
    real_axis = z.imag == 0
    e1, last, iters = _e1_lentz(-z, tol, max_iter)
    value = -e1 + _ipi(z)
    err = abs(e1) * (last + _EPS * (8 + 4 * iters)) + _EPS * abs(value)
    return _finish(value, err, Method.CONTINUED_FRACTION, real_axis)


def ei_asymptotic(z, tol=DEFAULT_TOL):
    """Ei(z) ~ i*pi*sgn(Im z) + e**z / z * sum_k k! / z**k.

    The divergent series is stopped once a term drops below ``tol`` relative
    to the running sum, or at its smallest term. The first omitted term,
    inflated by a geometric tail factor and scaled by |e**z / z|, is the
    truncation error estimate.
    Raises ``AccuracyLoss`` if the smallest term is still above ``tol``.
    """
    z = _checked(z)
    real_axis = z.imag == 0
    s = 1 + 0j
    t = 1 + 0j
    prev = 1.0
    weighted = 0.0
    for k in range(1, MAX_TERMS + 1):
        t *= k / z
        a = abs(t)
        if a < tol * abs(s):
            break
        if a >= prev:
            if prev > tol:
                raise AccuracyLoss(
                    f"smallest asymptotic term {prev:.2e} exceeds tol={tol:g} at |z|={abs(z):.4g}"
                )
            break
        s += t
        weighted += 3 * a * (k + 2)
        prev = a
    else:
        raise NoConvergence(f"asymptotic series did not terminate at z={z!r}")
    # geometric bound on the omitted tail while terms still decrease
    q = (k + 1) / abs(z)
    tail = a / (1 - q) if q < 0.9 else 10 * a
    scale = cmath.exp(z) / z
    value = scale * s + _ipi(z)
    err = abs(scale) * (tail + _EPS * (weighted + 4 * abs(s))) + _EPS * abs(value)
    return _finish(value, err, Method.ASYMPTOTIC, real_axis)


_ORDER = {
    Method.POWER_SERIES: (ei_power_series, ei_continued_fraction, ei_asymptotic),
    Method.CONTINUED_FRACTION: (ei_continued_fraction, ei_power_series, ei_asymptotic),
    Method.ASYMPTOTIC: (ei_asymptotic, ei_continued_fraction),
}


def regime(z):
    """Preferred method for ``z`` by modulus alone."""
    r = abs(complex(z))
    if r <= POWER_SERIES_MAX:
        return Method.POWER_SERIES
    if r <= CONTINUED_FRACTION_MAX:
        return Method.CONTINUED_FRACTION
    return Method.ASYMPTOTIC


def ei(z):
    """Exponential integral Ei(z), see module docs for branch and regimes.

    Raises
    ------
    DomainError
        z = 0, z on the negative real axis, or Re z large enough to overflow.
    PhasePrecisionLoss
        |Im z| > 1e12.
    """
    z = _checked(z)
    if z.imag == 0:
        # positive real axis: every term is real, keep Im exactly zero
        return ei_power_series(z) if z.real <= CONTINUED_FRACTION_MAX else ei_asymptotic(z)
    best = None
    failures = []
    for method in _ORDER[regime(z)]:
        try:
            ev = method(z)
        except (NoConvergence, AccuracyLoss) as exc:
            failures.append(exc)
            continue
        if ev.abs_error_estimate <= _ACCEPT * max(1.0, abs(ev.value)):
            return ev
        if best is None or ev.abs_error_estimate < best.abs_error_estimate:
            best = ev
    if best is not None:
        return best
    raise NoConvergence(f"no method converged for z={z!r}: {failures}")


def li_complex_power(n, rho):
    """li(n**rho) evaluated as Ei(rho * log n)."""
    return li_complex_power_eval(n, rho).value


def li_complex_power_eval(n, rho):
    """Like ``li_complex_power`` but returns the full ``EiEvaluation``."""
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    rho = complex(rho)
    if rho == 0:
        raise DomainError("rho must be nonzero")
    return ei(rho * math.log(n))
