"""Radial ordinary differential equation of hypergeometric type.

The flat-variable equation treated here is

    x (1 - x) y'' + [c - (a + b + 1) x] y' - a b y + (d / x) y = 0,

with c = rho0 = (l - 1)/2, a + b = c, and a singular coupling d <= 0.  The
eigenvalue parameter enters through a = (rho0 + i r)/2, b = (rho0 - i r)/2.

The same equation in the radial coordinate s (with x = -s^2) reads

    (alpha1^2 s^2 + 2) F'' + ((alpha1^2 + 2 alpha_rho) s + 2(l-2)/s) F'
        + (8 d / s^2 + mu) F = 0,

where alpha1^2 = 1/(2(l-1)), alpha_rho = 1/4, mu = a b / rho0, and the
derivative variable is the arclength sigma = 2 sqrt(l-1) s along the unit
nilpotent direction.

Provided here: indicial roots, Frobenius series with logarithmic-case
refusal, the distinguished smooth solution, closed-form kernels with
half-integer leading exponents, and finite-difference operator residuals
for both forms of the equation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .specfun import DomainError, hyp2f1, pochhammer

__all__ = [
    "OdeParams",
    "FrobeniusSeries",
    "SmoothnessError",
    "LogCaseError",
    "ode_params_from_eigen",
    "mu_of",
    "mu_from_r",
    "indicial_roots",
    "frobenius_series",
    "frobenius_from_params",
    "taylor_2f1_coeffs",
    "smooth_solution",
    "operator_residual",
    "radial_operator_residual",
    "weight_kernel",
    "weight_kernel_l2",
]


class SmoothnessError(ValueError):
    """No smooth solution exists for the requested exponent data."""


class LogCaseError(ValueError):
    """The Frobenius recursion hit a resonance: the solution is logarithmic."""


@dataclass(frozen=True)
class OdeParams:
    """Parameters (a, b, c, d) of the flat-variable equation.

    Invariants for spectral data: a + b = c and a b = mu * c with
    mu = (rho0 + r^2 / rho0)/4; the singular coupling satisfies d <= 0.
    """

    a: complex
    b: complex
    c: float
    d: float = 0.0

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError(f"parameter c must be positive, got {self.c}")
        if self.d > 1e-12:
            raise ValueError(f"singular coupling d must be <= 0, got {self.d}")
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "d", float(self.d))


@dataclass(frozen=True)
class FrobeniusSeries:
    """Truncated Frobenius solution x^p * sum_t coefficients[t] x^t."""

    exponent: float
    coefficients: tuple
    truncation: int

    def __post_init__(self):
        if len(self.coefficients) != self.truncation + 1:
            raise ValueError("coefficient count must equal truncation + 1")
        if self.coefficients[0] != 1:
            raise ValueError("leading coefficient must be normalized to 1")


def ode_params_from_eigen(l, r, d=0.0):
    """Parameters for spectral value r in dimension l: a, b = (rho0 ± i r)/2."""
    if l < 2:
        raise ValueError(f"dimension l must be >= 2, got {l}")
    rho0 = (l - 1) / 2.0
    r = complex(r)
    return OdeParams(a=(rho0 + 1j * r) / 2.0, b=(rho0 - 1j * r) / 2.0, c=rho0, d=d)


def mu_of(params):
    """mu = a b / c (the zeroth-order coefficient in the radial form)."""
    return params.a * params.b / params.c


def mu_from_r(l, r):
    """mu = (rho0 + r^2 / rho0) / 4."""
    rho0 = (l - 1) / 2.0
    r = complex(r)
    val = (rho0 + r * r / rho0) / 4.0
    return val.real if abs(val.imag) < 1e-14 else val


def indicial_roots(c, d):
    """Roots of p^2 + (c - 1) p + d = 0, returned as (larger, smaller).

    For d <= 0 the discriminant ((1-c)/2)^2 - d is nonnegative and the
    roots are real.  For d = 0 they are (max(0, 1-c), min(0, 1-c)).
    """
    h = (1.0 - c) / 2.0
    disc = h * h - d
    if disc < 0:
        raise DomainError(f"complex indicial roots for (c, d) = ({c}, {d})")
    s = math.sqrt(disc)
    return (h + s, h - s)


def frobenius_series(a_coeffs, b_coeffs, p, T):
    """Frobenius coefficients for x^2 y'' + x P(x) y' + Q(x) y = 0.

    a_coeffs and b_coeffs are the Taylor coefficients of P and Q (length at
    least T + 1).  With f(q) = q(q-1) + a0 q + b0 the recursion is

        c_t = - sum_{k=1}^{t} ((t - k + p) a_k + b_k) c_{t-k} / f(p + t).

    Raises LogCaseError when f(p + t) vanishes for some t in 1..T, which
    happens exactly when the other indicial root exceeds p by an integer.
    """
    if T < 0:
        raise ValueError("truncation must be >= 0")
    if len(a_coeffs) < T + 1 or len(b_coeffs) < T + 1:
        raise ValueError("need at least T + 1 coefficients of P and Q")
    a0 = complex(a_coeffs[0])
    b0 = complex(b_coeffs[0])

    def f(q):
        return q * (q - 1.0) + a0 * q + b0

    coeffs = [1.0 + 0.0j]
    for t in range(1, T + 1):
        den = f(p + t)
        if abs(den) < 1e-9 * max(1.0, abs(p + t) ** 2):
            raise LogCaseError(
                f"indicial resonance at offset {t}: the second solution is logarithmic"
            )
        s = 0.0 + 0.0j
        for k in range(1, t + 1):
            s += ((t - k + p) * complex(a_coeffs[k]) + complex(b_coeffs[k])) * coeffs[t - k]
        coeffs.append(-s / den)
    return FrobeniusSeries(exponent=float(p), coefficients=tuple(coeffs), truncation=T)


def frobenius_from_params(params, p, T):
    """Frobenius series of the flat-variable equation at exponent p.

    Multiplying the equation by x and dividing by (1 - x) puts it in the
    form x^2 y'' + x P y' + Q y = 0 with Taylor data
    P: a0 = c, a_k = c - a - b - 1 (k >= 1);
    Q: b0 = d, b_k = d - a b (k >= 1).
    """
    a, b, c, d = params.a, params.b, params.c, params.d
    a_coeffs = [c] + [c - a - b - 1.0] * T
    b_coeffs = [d] + [d - a * b] * T
    return frobenius_series(a_coeffs, b_coeffs, p, T)


def taylor_2f1_coeffs(a, b, c, T):
    """Taylor coefficients (a)_t (b)_t / ((c)_t t!) of 2F1, t = 0..T."""
    return tuple(
        pochhammer(a, t) * pochhammer(b, t) / (pochhammer(c, t) * math.factorial(t))
        for t in range(T + 1)
    )


def _require_half_integer(two_p, what):
    if abs(two_p - round(two_p)) > 1e-9 or round(two_p) < 0:
        raise SmoothnessError(
            f"{what}: 2p = {two_p} is not a nonnegative integer; "
            "no smooth solution with this exponent"
        )


def smooth_solution(params, x):
    """The distinguished smooth solution at the larger indicial root p1.

    Value x^{p1} 2F1(a + p1, b + p1, 1 + p1 - p2; x) for x <= 0, with the
    principal branch of x^{p1} (so x < 0 contributes e^{i pi p1} |x|^{p1}).
    Raises SmoothnessError unless 2 p1 is a nonnegative integer.
    """
    if isinstance(x, complex) and x.imag != 0:
        raise DomainError("argument must be real")
    x = float(x)
    if x > 0:
        raise DomainError(f"argument must satisfy x <= 0, got {x}")
    p1, p2 = indicial_roots(params.c, params.d)
    _require_half_integer(2.0 * p1, "smooth solution")
    third = 1.0 + p1 - p2
    if x == 0.0:
        return 1.0 + 0.0j if p1 == 0 else 0.0 + 0.0j
    pref = complex(x) ** p1  # principal branch
    return pref * hyp2f1(params.a + p1, params.b + p1, third, x)


_D1_STENCIL = ((-3, -1.0), (-2, 9.0), (-1, -45.0), (1, 45.0), (2, -9.0), (3, 1.0))
_D2_STENCIL = ((-3, 2.0), (-2, -27.0), (-1, 270.0), (0, -490.0), (1, 270.0), (2, -27.0), (3, 2.0))


def _fd_derivatives(f, x, h):
    """Sixth-order central first and second derivatives of a callable."""
    vals = {j: f(x + j * h) for j in range(-3, 4)}
    d1 = sum(w * vals[j] for j, w in _D1_STENCIL) / (60.0 * h)
    d2 = sum(w * vals[j] for j, w in _D2_STENCIL) / (180.0 * h * h)
    return vals[0], d1, d2


def operator_residual(params, f, x, h=None):
    """|L[f](x)| for the flat-variable operator, via sixth-order stencils.

    Default step h = 1e-3 * max(1, |x|): large enough that the rounding
    noise of the second-derivative stencil stays below 1e-8, small enough
    that the sixth-order truncation error is negligible on |x| <= 5.
    """
    x = float(x)
    if h is None:
        h = 1e-3 * max(1.0, abs(x))
    a, b, c, d = params.a, params.b, params.c, params.d
    if x == 0.0 and d != 0.0:
        raise DomainError("singular coupling term undefined at x = 0")
    f0, d1, d2 = _fd_derivatives(f, x, h)
    sing = (d / x) * f0 if d != 0.0 else 0.0
    val = x * (1.0 - x) * d2 + (c - (a + b + 1.0) * x) * d1 - a * b * f0 + sing
    return abs(val)


def radial_operator_residual(f, sigma, l, d, mu, h=None):
    """|L_s[f](sigma)| for the radial-coordinate operator.

    The variable sigma is arclength along the unit nilpotent direction;
    alpha1^2 = 1/(2(l-1)) and alpha_rho = 1/4.
    """
    sigma = float(sigma)
    if sigma <= 0:
        raise DomainError(f"radial coordinate must be positive, got {sigma}")
    if h is None:
        h = 1e-3 * max(1.0, abs(sigma))
    alpha1_sq = 1.0 / (2.0 * (l - 1.0))
    alpha_rho = 0.25
    f0, d1, d2 = _fd_derivatives(f, sigma, h)
    val = (
        (alpha1_sq * sigma * sigma + 2.0) * d2
        + ((alpha1_sq + 2.0 * alpha_rho) * sigma + 2.0 * (l - 2.0) / sigma) * d1
        + (8.0 * d / (sigma * sigma) + mu) * f0
    )
    return abs(val)


def weight_kernel(p, d, lead, params, s, l):
    """Closed-form kernel with leading exponent p in the raw radial variable.

    Value (-1)^p (4(l-1))^p lead s^{2p} 2F1(a + p, b + p, 2p + c; -s^2),
    where (-1)^p means the principal phase e^{i pi p} and the (4(l-1))^p
    factor converts the leading coefficient from arclength normalization.
    The third parameter 2p + c equals 1 + (p - other root); at the larger
    indicial root it is 1 + 2 sqrt(((1-c)/2)^2 - d).  Requires 2p to be a
    nonnegative integer and p an indicial root for (c, d); the smaller root
    is rejected exactly when the roots differ by a positive integer (the
    logarithmic case).
    """
    p = float(p)
    _require_half_integer(2.0 * p, "weight kernel")
    c = params.c
    if abs(p * p + (c - 1.0) * p + d) > 1e-9:
        raise SmoothnessError(
            f"exponent p = {p} is not an indicial root for (c, d) = ({c}, {d})"
        )
    third = 2.0 * p + c
    if abs(third - round(third)) < 1e-9 and round(third) <= 0:
        raise LogCaseError(
            f"third parameter 2p + c = {third} at a nonpositive integer; "
            "this branch is logarithmic"
        )
    s = float(s)
    phase = cmath.exp(1j * math.pi * p)
    scale = (4.0 * (l - 1.0)) ** p
    if s == 0.0:
        pref = 1.0 if p == 0.0 else 0.0
    else:
        pref = s ** (2.0 * p)
    return phase * scale * complex(lead) * pref * hyp2f1(
        params.a + p, params.b + p, third, -s * s
    )


def weight_kernel_l2(lead0, lead1, params, s):
    """Two-term kernel for l = 2 (even and odd closed-form solutions).

    lead0 * 2F1(a, b, 1/2; -s^2) + 2i * lead1 * s * 2F1(a + 1/2, b + 1/2, 3/2; -s^2).
    """
    if abs(params.c - 0.5) > 1e-12:
        raise DomainError("two-term kernel requires c = 1/2 (dimension 2)")
    s = float(s)
    even = hyp2f1(params.a, params.b, 0.5, -s * s)
    odd = hyp2f1(params.a + 0.5, params.b + 0.5, 1.5, -s * s)
    return complex(lead0) * even + 2j * complex(lead1) * s * odd
