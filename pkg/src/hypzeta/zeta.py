"""Dynamical zeta functions from length-spectrum and eigenvalue data.

A SpectralModel bundles user-supplied data for a compact quotient of real
hyperbolic l-space: eigenvalue records (frequency lambda, spectral value r,
pairing constants) and primitive geodesic class records (normalized length
L, primitive length L0, holonomy eigenvalue m11, eigenfunction integrals).

From a model the module evaluates

* geodesic-side sums: the cosh-weighted series r_geom and the exponentially
  weighted zeta-side z_geom, linked by a binomial superposition identity
  whose coefficients beta(k; m) expand (1 - sqrt(1 - 1/y))^k in powers of 1/y,
* the spectral-side series r_spec (gamma-factor form) and z_spec,
* closed-form poles and residues of the spectral side in a strip, checked
  against contour integration,
* a Selberg-type pairing with the classical normalization of the same data,
* normalized coefficients and an L2-style discrepancy that measures how
  fast the normalized geodesic coefficients approach 1.

All series here are finite sums over the records in the model; analytic
preconditions (half-planes of absolute convergence) are enforced.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

from .specfun import (
    ConvergenceError,
    DomainError,
    PoleError,
    beta_fn,
    binom_general,
    digamma_real,
    gamma,
    hyp2f1,
    log_gamma,
    pole_index,
    rgamma,
)
from .transforms import I_of_z, QuadratureResult, _quad_complex, omega_sphere

__all__ = [
    "ModelError",
    "NearPoleWarning",
    "GeodesicClassData",
    "EigenData",
    "SpectralModel",
    "PoleData",
    "NumericResidue",
    "make_eigen",
    "build_model",
    "model_from_dict",
    "model_to_dict",
    "coeff_c1",
    "normalized_coeff",
    "coeff_bound",
    "auxi_constant",
    "r_geom",
    "z_geom",
    "beta_coeffs",
    "z_superpose",
    "selberg_pair",
    "r_spec",
    "r_spec_tail_bound",
    "min_gamma_pole_distance",
    "poles_and_residues",
    "residue_numeric",
    "z_spec",
    "normalize",
    "discrepancy_bracket",
    "discrepancy_l2",
    "extend_sigma",
    "strip_default",
]


class ModelError(ValueError):
    """Raised when model data violate a structural invariant."""


class NearPoleWarning(UserWarning):
    """Emitted when an evaluation point is within 1e-6 of a pole."""


_NEAR_POLE_TOL = 1e-6
_GROUP_TOL = 1e-9


# ----------------------------------------------------------------------
# Data model.
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class GeodesicClassData:
    """One primitive geodesic class with its eigenfunction integrals.

    L is the normalized length of the class, L0 the normalized primitive
    length (L / L0 must be a positive integer), m11 in [-1, 1] the rotation
    eigenvalue of the holonomy in the distinguished plane, integrals maps
    eigen-record indices to the eigenfunction integrals over the class, and
    x_integrals (dimension 2 only) stores the odd-solution integrals.
    """

    L: float
    L0: float
    m11: float
    integrals: dict
    x_integrals: dict | None = None

    def __post_init__(self):
        if not (self.L > 0 and self.L0 > 0):
            raise ModelError(f"lengths must be positive: L = {self.L}, L0 = {self.L0}")
        ratio = self.L / self.L0
        if abs(ratio - round(ratio)) > 1e-9 or round(ratio) < 1:
            raise ModelError(
                f"L / L0 = {ratio} is not a positive integer (L = {self.L}, L0 = {self.L0})"
            )
        if not (-1.0 - 1e-9 <= self.m11 <= 1.0 + 1e-9):
            raise ModelError(f"holonomy eigenvalue m11 = {self.m11} outside [-1, 1]")


@dataclass(frozen=True)
class EigenData:
    """One eigenvalue record.

    lam is the spectral frequency (real > 0 for the principal series, i nu
    with 0 < nu <= rho0 for the complementary window, 0 on the boundary),
    r the associated radial spectral value, ps_pairings maps record indices
    to principal-series pairing values for this record, and c_const maps
    complementary indices to the pairing constants.
    """

    index: int
    lam: complex
    r: complex
    series: str
    ps_pairings: dict = field(default_factory=dict)
    c_const: dict | None = None

    def __post_init__(self):
        if self.series not in ("principal", "complementary"):
            raise ModelError(f"unknown series tag {self.series!r}")
        lam = complex(self.lam)
        if lam.real < -1e-12:
            raise ModelError(f"frequency must have Re >= 0, got {lam}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "r", complex(self.r))

    @property
    def lambda_sq(self):
        return (self.lam * self.lam).real


@dataclass(frozen=True)
class SpectralModel:
    """Validated bundle of eigen records and geodesic class records."""

    l: int
    eigen: tuple
    geodesics: tuple
    j0: int

    def __post_init__(self):
        if self.l < 2:
            raise ModelError(f"dimension must be >= 2, got {self.l}")
        rho0 = self.rho0
        eigen = tuple(self.eigen)
        object.__setattr__(self, "eigen", eigen)
        object.__setattr__(self, "geodesics", tuple(self.geodesics))
        prev = -math.inf
        for pos, e in enumerate(eigen):
            lsq = e.lambda_sq
            if lsq < prev - 1e-12:
                raise ModelError(f"eigen[{pos}]: lambda_sq not ascending")
            prev = lsq
            if lsq < -rho0 * rho0 - 1e-9:
                raise ModelError(
                    f"eigen[{pos}]: lambda_sq = {lsq} below the complementary window "
                    f"-rho0^2 = {-rho0 * rho0}"
                )
            expected_r_sq = 4.0 * rho0 * (e.lam * e.lam) + rho0 * rho0 * (4.0 * rho0 - 1.0)
            resid = abs(e.r * e.r - expected_r_sq)
            if resid > 1e-10 * max(1.0, abs(e.r) ** 2):
                raise ModelError(
                    f"eigen[{pos}]: r = {e.r} violates the spectral relation "
                    f"(residual {resid:.3e})"
                )
            if e.index != pos:
                raise ModelError(f"eigen[{pos}]: index field {e.index} != position")
        n_nonpos = sum(1 for e in eigen if e.lambda_sq <= 0.0)
        if self.j0 != n_nonpos - 1:
            raise ModelError(
                f"j0 = {self.j0} inconsistent with {n_nonpos} records with lambda_sq <= 0"
            )
        for pos, g in enumerate(self.geodesics):
            if self.l == 2 and abs(g.m11 - 1.0) > 1e-9:
                raise ModelError(
                    f"geodesics[{pos}]: dimension 2 forces m11 = 1, got {g.m11}"
                )
            if g.x_integrals is not None and self.l != 2:
                raise ModelError(
                    f"geodesics[{pos}]: x_integrals only meaningful in dimension 2"
                )
            for key in g.integrals:
                if not (0 <= int(key) < len(eigen)):
                    raise ModelError(
                        f"geodesics[{pos}].integrals: index {key} out of range"
                    )

    @property
    def rho0(self):
        return (self.l - 1) / 2.0

    @property
    def omega(self):
        return omega_sphere(self.l)

    @property
    def L_inf(self):
        if not self.geodesics:
            raise ModelError("model has no geodesic records")
        return min(g.L for g in self.geodesics)


def make_eigen(index, lambda_sq, ps, c, l):
    """Build an eigen record from lambda^2, deriving lam, r and the series tag."""
    rho0 = (l - 1) / 2.0
    lambda_sq = float(lambda_sq)
    if lambda_sq < -rho0 * rho0 - 1e-9:
        raise ModelError(
            f"lambda_sq = {lambda_sq} below the complementary window -rho0^2"
        )
    if lambda_sq > 0:
        lam = complex(math.sqrt(lambda_sq))
        series = "principal"
    else:
        lam = 1j * math.sqrt(-lambda_sq)
        series = "complementary"
    r_sq = 4.0 * rho0 * lambda_sq + rho0 * rho0 * (4.0 * rho0 - 1.0)
    r = cmath.sqrt(complex(r_sq))
    return EigenData(
        index=index,
        lam=lam,
        r=r,
        series=series,
        ps_pairings=dict(ps) if ps else {},
        c_const=dict(c) if c else None,
    )


def build_model(l, eigen_specs, geodesic_specs):
    """Convenience constructor from raw tuples.

    eigen_specs: iterable of (lambda_sq, ps_dict, c_dict) sorted ascending;
    geodesic_specs: iterable of (L, L0, m11, integrals[, x_integrals]).
    """
    eigen = tuple(
        make_eigen(i, lsq, ps, c, l) for i, (lsq, ps, c) in enumerate(eigen_specs)
    )
    geos = []
    for spec in geodesic_specs:
        if len(spec) == 4:
            L, L0, m11, integrals = spec
            x_int = None
        else:
            L, L0, m11, integrals, x_int = spec
        geos.append(
            GeodesicClassData(L=L, L0=L0, m11=m11, integrals=dict(integrals), x_integrals=x_int)
        )
    j0 = sum(1 for e in eigen if e.lambda_sq <= 0.0) - 1
    return SpectralModel(l=l, eigen=eigen, geodesics=tuple(geos), j0=j0)


# ----------------------------------------------------------------------
# JSON (de)serialization.
# ----------------------------------------------------------------------

def _parse_complex(value, path):
    if isinstance(value, (int, float)):
        return complex(value)
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(v, (int, float)) for v in value)
    ):
        return complex(value[0], value[1])
    raise ModelError(f"{path}: expected number or [re, im] pair, got {value!r}")


def _parse_complex_map(obj, path):
    if obj is None:
        return None
    if not isinstance(obj, dict):
        raise ModelError(f"{path}: expected an object mapping indices to values")
    out = {}
    for key, value in obj.items():
        try:
            idx = int(key)
        except (TypeError, ValueError):
            raise ModelError(f"{path}: key {key!r} is not an integer index") from None
        out[idx] = _parse_complex(value, f"{path}[{key}]")
    return out


def model_from_dict(data):
    """Build a SpectralModel from the documented JSON layout.

    Raises ModelError with a JSON-path message on any malformed field.
    """
    if not isinstance(data, dict):
        raise ModelError("top level: expected an object")
    try:
        l = int(data["dimension"])
    except KeyError:
        raise ModelError("top level: missing 'dimension'") from None
    except (TypeError, ValueError):
        raise ModelError("dimension: expected an integer") from None
    if l < 2:
        raise ModelError(f"dimension: must be >= 2, got {l}")
    eigen_raw = data.get("eigen")
    if not isinstance(eigen_raw, list) or not eigen_raw:
        raise ModelError("eigen: expected a non-empty array")
    prev = -math.inf
    eigen = []
    for i, rec in enumerate(eigen_raw):
        path = f"eigen[{i}]"
        if not isinstance(rec, dict):
            raise ModelError(f"{path}: expected an object")
        if "lambda_sq" not in rec:
            raise ModelError(f"{path}: missing 'lambda_sq'")
        lsq = rec["lambda_sq"]
        if not isinstance(lsq, (int, float)):
            raise ModelError(f"{path}.lambda_sq: expected a number")
        if lsq < prev - 1e-12:
            raise ModelError(f"{path}.lambda_sq: not ascending")
        prev = lsq
        ps = _parse_complex_map(rec.get("ps", {}), f"{path}.ps")
        c = _parse_complex_map(rec.get("c"), f"{path}.c")
        try:
            eigen.append(make_eigen(i, lsq, ps, c, l))
        except ModelError as exc:
            raise ModelError(f"{path}: {exc}") from None
    geos_raw = data.get("geodesics", [])
    if not isinstance(geos_raw, list):
        raise ModelError("geodesics: expected an array")
    geos = []
    for i, rec in enumerate(geos_raw):
        path = f"geodesics[{i}]"
        if not isinstance(rec, dict):
            raise ModelError(f"{path}: expected an object")
        for fieldname in ("L", "L0", "m11"):
            if fieldname not in rec or not isinstance(rec[fieldname], (int, float)):
                raise ModelError(f"{path}.{fieldname}: expected a number")
        integrals = _parse_complex_map(rec.get("integrals", {}), f"{path}.integrals")
        x_integrals = _parse_complex_map(rec.get("x_integrals"), f"{path}.x_integrals")
        try:
            geos.append(
                GeodesicClassData(
                    L=float(rec["L"]),
                    L0=float(rec["L0"]),
                    m11=float(rec["m11"]),
                    integrals=integrals,
                    x_integrals=x_integrals,
                )
            )
        except ModelError as exc:
            raise ModelError(f"{path}: {exc}") from None
    j0 = sum(1 for e in eigen if e.lambda_sq <= 0.0) - 1
    try:
        return SpectralModel(l=l, eigen=tuple(eigen), geodesics=tuple(geos), j0=j0)
    except ModelError as exc:
        raise ModelError(str(exc)) from None


def _complex_out(z):
    z = complex(z)
    return [z.real, z.imag]


def model_to_dict(model):
    """Serialize a model back to the documented JSON layout (enriched form)."""
    out = {"dimension": model.l, "j0": model.j0, "eigen": [], "geodesics": []}
    for e in model.eigen:
        rec = {
            "lambda_sq": e.lambda_sq,
            "lambda": _complex_out(e.lam),
            "r": _complex_out(e.r),
            "series": e.series,
            "ps": {str(k): _complex_out(v) for k, v in sorted(e.ps_pairings.items())},
        }
        if e.c_const is not None:
            rec["c"] = {str(k): _complex_out(v) for k, v in sorted(e.c_const.items())}
        out["eigen"].append(rec)
    for g in model.geodesics:
        rec = {
            "L": g.L,
            "L0": g.L0,
            "m11": g.m11,
            "integrals": {str(k): _complex_out(v) for k, v in sorted(g.integrals.items())},
        }
        if g.x_integrals is not None:
            rec["x_integrals"] = {
                str(k): _complex_out(v) for k, v in sorted(g.x_integrals.items())
            }
        out["geodesics"].append(rec)
    return out


# ----------------------------------------------------------------------
# Geodesic-side coefficients and sums.
# ----------------------------------------------------------------------

def _eigen_ab(e, l):
    rho0 = (l - 1) / 2.0
    return (rho0 + 1j * e.r) / 2.0, (rho0 - 1j * e.r) / 2.0


def coeff_c1(g, e, k, l, mode="closed"):
    """Geodesic coefficient for trivial twist.

    With z = cosh L / (cosh L - m11) and prefactor
    P = omega sqrt(2(l-1)) (integral) (cosh L - m11)^{-rho0}:

    closed:      P * z^{k - rho0} * (1/2) Gamma(rho0) Gamma(k - a)
                 Gamma(k - b) / Gamma(k)^2 * 2F1(k - a, k - b, k; 1 - z)
    quadrature:  P * int_0^inf s^{l-2} (s^2 + 1)^{-k} 2F1(a, b, rho0; -z s^2) ds

    Requires Re k > rho0.  The integral over the class of the eigenfunction
    of record e is read from g.integrals[e.index].
    """
    k = complex(k)
    rho0 = (l - 1) / 2.0
    if k.real <= rho0:
        raise DomainError(f"coefficient requires Re k > rho0 = {rho0}, got {k}")
    if e.index not in g.integrals:
        raise ModelError(f"geodesic record has no integral for eigen index {e.index}")
    intphi = complex(g.integrals[e.index])
    a, b = _eigen_ab(e, l)
    chl = math.cosh(g.L)
    den = chl - g.m11
    z = chl / den
    pref = (
        omega_sphere(l)
        * math.sqrt(2.0 * (l - 1.0))
        * intphi
        * math.exp(-rho0 * math.log(den))
    )
    if mode == "closed":
        hyp = hyp2f1(k - a, k - b, k, 1.0 - z)
        moment = 0.5 * gamma(rho0) * gamma(k - a) * gamma(k - b) * rgamma(k) ** 2
        return pref * cmath.exp((k - rho0) * math.log(z)) * moment * hyp
    if mode == "quadrature":

        def f(s):
            return (
                s ** (l - 2)
                * cmath.exp(-k * math.log1p(s * s))
                * hyp2f1(a, b, rho0, -z * s * s)
            )

        val, err, n = _quad_complex(f, 0.0, math.inf)
        return QuadratureResult(pref * val, abs(pref) * err, n)
    raise ValueError(f"unknown mode {mode!r}")


def normalized_coeff(g, e, k, l):
    """coeff_c1 divided by omega * I(r, l, k); tends to integral-weighted 1."""
    return normalize(coeff_c1(g, e, k, l, mode="closed"), k, e.r, l)


def coeff_bound(g, e, k, l):
    """Explicit majorant of |coeff_c1(g, e, k, l)|.

    omega sqrt(2(l-1)) |integral| (1/2) B(rho0, Re k - rho0)
      * (2 / (1 - e^{-L})^2)^{rho0} * e^{-rho0 L}.
    """
    k = complex(k)
    rho0 = (l - 1) / 2.0
    if k.real <= rho0:
        raise DomainError(f"bound requires Re k > rho0 = {rho0}")
    if e.index not in g.integrals:
        raise ModelError(f"geodesic record has no integral for eigen index {e.index}")
    intphi = abs(complex(g.integrals[e.index]))
    bval = beta_fn(rho0, k.real - rho0).real
    shape = (2.0 / (1.0 - math.exp(-g.L)) ** 2) ** rho0
    return (
        omega_sphere(l)
        * math.sqrt(2.0 * (l - 1.0))
        * intphi
        * 0.5
        * bval
        * shape
        * math.exp(-rho0 * g.L)
    )


def auxi_constant(model, n, k):
    """Constant C with |coeff| <= C * L * e^{-rho0 L} over the model's classes."""
    rho0 = model.rho0
    k = complex(k)
    if k.real <= rho0:
        raise DomainError(f"bound requires Re k > rho0 = {rho0}")
    e = model.eigen[n]
    max_int = max(abs(complex(g.integrals.get(e.index, 0.0))) for g in model.geodesics)
    bval = beta_fn(rho0, k.real - rho0).real
    l_inf = model.L_inf
    shape = (2.0 / (1.0 - math.exp(-l_inf)) ** 2) ** rho0
    return (
        model.omega
        * math.sqrt(2.0 * (model.l - 1.0))
        * max_int
        * 0.5
        * bval
        * shape
        / l_inf
    )


def r_geom(k, n, model, k_coeff=None):
    """Geodesic-side cosh-weighted sum sum_gamma c(gamma) cosh(L)^{rho0 - k}.

    The coefficients are evaluated at k_coeff (default k); passing
    k_coeff = k0 < k realizes the held-coefficient sums that appear in the
    binomial superposition identity.  Requires Re k_coeff > 2 rho0.
    """
    k = complex(k)
    kc = k if k_coeff is None else complex(k_coeff)
    rho0 = model.rho0
    if kc.real <= 2.0 * rho0:
        raise DomainError(
            f"absolute convergence requires Re k > 2 rho0 = {2 * rho0}, got {kc}"
        )
    e = model.eigen[n]
    total = 0.0 + 0.0j
    for g in model.geodesics:
        c = coeff_c1(g, e, kc, model.l, mode="closed")
        total += c * cmath.exp((rho0 - k) * math.log(math.cosh(g.L)))
    return total


def z_geom(k, n, model):
    """Geodesic-side zeta sum sum_gamma c(gamma) e^{-(k - rho0) L}."""
    k = complex(k)
    rho0 = model.rho0
    if k.real <= 2.0 * rho0:
        raise DomainError(
            f"absolute convergence requires Re k > 2 rho0 = {2 * rho0}, got {k}"
        )
    e = model.eigen[n]
    total = 0.0 + 0.0j
    for g in model.geodesics:
        c = coeff_c1(g, e, k, model.l, mode="closed")
        total += c * cmath.exp(-(k - rho0) * g.L)
    return total


# ----------------------------------------------------------------------
# Binomial superposition.
# ----------------------------------------------------------------------

def beta_coeffs(k, M, derivative=False):
    """Coefficients beta(k; m) of (1 - sqrt(1 - 1/y))^k = y^{-k} sum_m beta y^{-m}.

    Reference algorithm: with u_m = (-1)^m binom(1/2, m+1) (so u_0 = 1/2),
    h = u / u_0, the log-series of h, and exponentiation by k.  Returns the
    list [beta(k; 0), ..., beta(k; M)]; with derivative=True also the list
    of d/dk beta(k; m).
    """
    k = complex(k)
    if M < 0:
        raise ValueError("order M must be >= 0")
    u = [(-1.0) ** m * binom_general(0.5, m + 1) for m in range(M + 1)]
    u0 = u[0]
    h = [um / u0 for um in u]
    logh = [0.0] * (M + 1)
    for m in range(1, M + 1):
        acc = h[m]
        for j in range(1, m):
            acc -= (j / m) * logh[j] * h[m - j]
        logh[m] = acc
    beta = [cmath.exp(-k * math.log(2.0))]
    for m in range(1, M + 1):
        acc = 0.0 + 0.0j
        for j in range(1, m + 1):
            acc += j * logh[j] * beta[m - j]
        beta.append(k * acc / m)
    if not derivative:
        return beta
    dbeta = []
    ln2 = math.log(2.0)
    for m in range(M + 1):
        acc = -ln2 * beta[m]
        for j in range(1, m + 1):
            acc += logh[j] * beta[m - j]
        dbeta.append(acc)
    return beta, dbeta


def z_superpose(k, n, model, M):
    """Zeta-side sum via superposition: sum_m beta(k - rho0; m) r_geom(k + 2m).

    The coefficients inside r_geom are held at k, so the identity
    z_geom(k) = z_superpose(k) is exact term by term as M grows.
    """
    k = complex(k)
    rho0 = model.rho0
    coeffs = beta_coeffs(k - rho0, M)
    total = 0.0 + 0.0j
    for m, bm in enumerate(coeffs):
        total += bm * r_geom(k + 2.0 * m, n, model, k_coeff=k)
    return total


# ----------------------------------------------------------------------
# Selberg-type pairing.
# ----------------------------------------------------------------------

def selberg_pair(k, model):
    """Weighted length sum and its classical-normalization companion.

    value:           sum L0 e^{-k L} / (1 - m11 e^{-L})^{l-1}
    classical_value: 2 (-1)^{l-1} sum l0 e^{(rho0 - s) l} / (1 - m11 e^{L})^{l-1}
                     with l = sqrt(2(l-1)) L and s = rho0 + (k - 2 rho0)/sqrt(2(l-1)).

    Requires every holonomy eigenvalue to be ±1 (central holonomy), which is
    when the determinant factors reduce to the powers used here.  For
    m11 = +1 throughout, classical_value / value = 2 sqrt(2(l-1)).
    """
    k = complex(k)
    l = model.l
    rho0 = model.rho0
    scale = math.sqrt(2.0 * (l - 1.0))
    for pos, g in enumerate(model.geodesics):
        if abs(abs(g.m11) - 1.0) > 1e-9:
            raise ValueError(
                f"geodesics[{pos}]: holonomy must be central (m11 = ±1) for the "
                f"determinant reduction, got m11 = {g.m11}"
            )
    value = 0.0 + 0.0j
    classical = 0.0 + 0.0j
    for g in model.geodesics:
        det_inv = (1.0 - g.m11 * math.exp(-g.L)) ** (l - 1)
        value += g.L0 * cmath.exp(-k * g.L) / det_inv
        det_cl = (1.0 - g.m11 * math.exp(g.L)) ** (l - 1)
        classical += (scale * g.L0) * cmath.exp(-(k - 2.0 * rho0) * g.L) / det_cl
    classical *= 2.0 * (-1.0) ** (l - 1)
    s = rho0 + (k - 2.0 * rho0) / scale
    return {
        "value": value,
        "classical_value": classical,
        "classical_argument": s,
        "ratio": classical / value,
        "expected_ratio_trivial_holonomy": 2.0 * scale,
    }


# ----------------------------------------------------------------------
# Spectral side.
# ----------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _I_principal_cached(r_re, r_im, lam, l):
    rho0 = (l - 1) / 2.0
    return I_of_z(complex(r_re, r_im), l, rho0 + 1j * lam, mode="closed")


def _weights(model, n, Jmax=None):
    """Spectral weights w_j for test record n: pairing constants times moments."""
    e_n = model.eigen[n]
    if e_n.series != "principal":
        raise ValueError(
            f"test record {n} must be principal, got {e_n.series}"
        )
    count = len(model.eigen) if Jmax is None else min(int(Jmax), len(model.eigen))
    out = []
    for j in range(count):
        e_j = model.eigen[j]
        ps = e_n.ps_pairings.get(j)
        if ps is None:
            raise ModelError(f"eigen[{n}].ps: missing pairing for index {j}")
        if j <= model.j0:
            if e_n.c_const is None or j not in e_n.c_const:
                raise ModelError(f"eigen[{n}].c: missing constant for index {j}")
            out.append(complex(e_n.c_const[j]) * complex(ps))
        else:
            I = _I_principal_cached(e_n.r.real, e_n.r.imag, e_j.lam.real, model.l)
            out.append(model.omega * complex(ps) * I)
    return out


def _g_prefactor(k, model):
    """Common factor 2^{k-2} omega Gamma(rho0) / Gamma(k)."""
    rho0 = model.rho0
    return (
        cmath.exp((k - 2.0) * math.log(2.0))
        * model.omega
        * gamma(rho0)
        * rgamma(k)
    )


def min_gamma_pole_distance(k, model, Jmax=None):
    """Distance from the gamma-factor arguments to their nearest poles."""
    k = complex(k)
    rho0 = model.rho0
    count = len(model.eigen) if Jmax is None else min(int(Jmax), len(model.eigen))
    best = math.inf
    for j in range(count):
        lam = model.eigen[j].lam
        for sign in (1.0, -1.0):
            z = (k - rho0 + sign * 1j * lam) / 2.0
            nearest = min(round(z.real), 0)
            best = min(best, abs(z - nearest))
    return best


def _r_spec_weighted(k, weights, model, warn=True):
    k = complex(k)
    rho0 = model.rho0
    if warn:
        dist = min_gamma_pole_distance(k, model, Jmax=len(weights))
        if dist < _NEAR_POLE_TOL:
            warnings.warn(
                f"evaluation point {k} within {dist:.2e} of a spectral pole",
                NearPoleWarning,
                stacklevel=3,
            )
    # per-term log-space combination: for large Re k (deep superposition
    # shifts) the prefactor underflows while the gamma pair overflows, yet
    # each product stays bounded
    log_gf = (
        (k - 2.0) * math.log(2.0)
        + log_gamma(rho0)
        + math.log(model.omega)
        - log_gamma(k)
    )
    total = 0.0 + 0.0j
    for j, w in enumerate(weights):
        if w == 0:
            continue
        lam = model.eigen[j].lam
        zm = (k - rho0 - 1j * lam) / 2.0
        zp = (k - rho0 + 1j * lam) / 2.0
        total += w * cmath.exp(log_gf + log_gamma(zm) + log_gamma(zp))
    return total


def r_spec(k, n, model, Jmax=None, form="gamma"):
    """Spectral-side series sum_j g_j(k) Gamma((k-rho0-i lam_j)/2) Gamma((k-rho0+i lam_j)/2).

    g_j(k) = 2^{k-2} omega Gamma(rho0) / Gamma(k) * w_j, where w_j is the
    pairing constant (complementary indices) or omega * ps * I (principal).
    form="beta" evaluates the equivalent beta-factor rearrangement
    g_j(k) Gamma(k - rho0) B(...) — identical away from k - rho0 in -N0, kept
    as an independent cross-check route.
    """
    weights = _weights(model, n, Jmax)
    if form == "gamma":
        return _r_spec_weighted(k, weights, model)
    if form == "beta":
        k = complex(k)
        rho0 = model.rho0
        gf = _g_prefactor(k, model) * gamma(k - rho0)
        total = 0.0 + 0.0j
        for j, w in enumerate(weights):
            if w == 0:
                continue
            lam = model.eigen[j].lam
            total += w * beta_fn(
                (k - rho0 - 1j * lam) / 2.0, (k - rho0 + 1j * lam) / 2.0
            )
        return gf * total
    raise ValueError(f"unknown form {form!r}")


def r_spec_tail_bound(k, n, model, Jmax):
    """Bound on the dropped principal terms j >= Jmax.

    Each term is bounded by |g_j(k)| 2 pi e^{-pi lam_j / 2} lam_j^{Re k - rho0 - 1}
    (asymptotics of the gamma-factor product), doubled for safety.
    """
    k = complex(k)
    rho0 = model.rho0
    weights = _weights(model, n, None)
    gf = abs(_g_prefactor(k, model))
    total = 0.0
    for j in range(int(Jmax), len(model.eigen)):
        lam = model.eigen[j].lam
        if lam.real <= 0:
            continue
        lam_r = lam.real
        total += (
            2.0
            * gf
            * abs(weights[j])
            * 2.0
            * math.pi
            * math.exp(-math.pi * lam_r / 2.0)
            * lam_r ** (k.real - rho0 - 1.0)
        )
    return total


# ----------------------------------------------------------------------
# Poles and residues.
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PoleData:
    """Laurent data at a candidate point: order 0 (regular), 1, or 2."""

    location: complex
    order: int
    residue: complex
    quadratic: complex = 0.0 + 0.0j


@dataclass(frozen=True)
class NumericResidue:
    residue: complex
    order: int
    quadratic: complex
    error: float


def strip_default(l):
    """Default analysis strip (rho0 - 1/2, rho0 + 1/2)."""
    rho0 = (l - 1) / 2.0
    return (rho0 - 0.5, rho0 + 0.5)


def poles_and_residues(n, model, strip=None, Jmax=None):
    """Closed-form pole table of r_spec(., n, model) inside a vertical strip.

    Candidates sit at k0 = rho0 + s i lam_j - 2m (s = ±1, m >= 0); locations
    within 1e-9 are merged.  At each location the Laurent data are assembled
    from the polar gamma factors:

    * one polar factor with index p: residue contribution
      2 g_j(k0) Gamma(other) (-1)^p / p!,
    * both factors polar (indices p, q; only at real k0): quadratic
      coefficient 4 C g_j(k0) and residue
      C (2 (psi(p+1) + psi(q+1)) g_j(k0) + 4 g_j'(k0)) with
      C = (-1)^{p+q} / (p! q!) and g_j'(k) = g_j(k)(log 2 - psi(k)).

    The point rho0 is always reported (order 0 with zero residue when the
    series is regular there).  Returns PoleData sorted by real, then
    imaginary part.
    """
    rho0 = model.rho0
    lo, hi = strip if strip is not None else strip_default(model.l)
    weights = _weights(model, n, Jmax)
    lams = [model.eigen[j].lam for j in range(len(weights))]

    locations = []
    m_max = int(max(0.0, (rho0 - lo) / 2.0)) + 2
    for lam in lams:
        for sign in (1.0, -1.0):
            base = rho0 + sign * 1j * lam
            for m in range(m_max + 1):
                k0 = base - 2.0 * m
                if lo + 1e-12 < k0.real < hi - 1e-12:
                    locations.append(k0)
    merged = []
    for k0 in locations:
        for seen in merged:
            if abs(k0 - seen) <= _GROUP_TOL:
                break
        else:
            merged.append(k0)

    results = []
    for k0 in merged:
        a1 = 0.0 + 0.0j
        a2 = 0.0 + 0.0j
        ref = 0.0
        gf = _g_prefactor(k0, model)
        for j, w in enumerate(weights):
            if w == 0:
                continue
            lam = lams[j]
            zm = (k0 - rho0 - 1j * lam) / 2.0
            zp = (k0 - rho0 + 1j * lam) / 2.0
            pm = pole_index(zm, tol=1e-8)
            pp = pole_index(zp, tol=1e-8)
            if pm is None and pp is None:
                continue
            g0 = gf * w
            ref = max(ref, abs(g0))
            if abs(g0) == 0.0:
                continue
            if pm is not None and pp is not None:
                if abs(k0.imag) > 1e-9:
                    raise RuntimeError("double pole at a non-real point")
                C = (-1.0) ** (pm + pp) / (math.factorial(pm) * math.factorial(pp))
                gp = g0 * (math.log(2.0) - digamma_real(k0.real))
                a2 += 4.0 * C * g0
                a1 += C * (
                    2.0 * (digamma_real(pm + 1.0) + digamma_real(pp + 1.0)) * g0
                    + 4.0 * gp
                )
            elif pm is not None:
                a1 += 2.0 * g0 * gamma(zp) * (-1.0) ** pm / math.factorial(pm)
            else:
                a1 += 2.0 * g0 * gamma(zm) * (-1.0) ** pp / math.factorial(pp)
        scale = max(ref, 1e-300)
        if abs(a2) > 1e-12 * scale:
            order = 2
        elif abs(a1) > 1e-12 * scale:
            order = 1
        else:
            order = 0
        results.append(PoleData(location=k0, order=order, residue=a1, quadratic=a2))

    if not any(abs(p.location - rho0) <= _GROUP_TOL for p in results):
        results.append(PoleData(location=complex(rho0), order=0, residue=0.0 + 0.0j))
    results.sort(key=lambda p: (round(p.location.real, 12), round(p.location.imag, 12)))
    return results


def residue_numeric(f, k0, radius=0.05, npoints=64):
    """Laurent data of a callable at k0 via trapezoidal contour moments.

    Returns NumericResidue(residue, order, quadratic, error); the order is
    the largest p <= 4 with |a_{-p}| above 1e-8 relative to the function
    scale on the contour.  Doubles the node count once and raises
    ConvergenceError if the residue moment has not settled.
    """
    k0 = complex(k0)

    def moments(nn):
        vals = []
        thetas = []
        for idx in range(nn):
            th = 2.0 * math.pi * idx / nn
            thetas.append(th)
            vals.append(complex(f(k0 + radius * cmath.exp(1j * th))))
        fscale = max(abs(v) for v in vals)
        out = []
        for p in range(1, 5):
            acc = 0.0 + 0.0j
            for th, v in zip(thetas, vals):
                acc += v * cmath.exp(1j * p * th)
            out.append(acc * radius ** p / nn)
        return out, fscale

    m1, _ = moments(npoints)
    m2, fscale = moments(2 * npoints)
    err = abs(m1[0] - m2[0])
    if err > max(1e-12, 1e-8 * abs(m2[0]), 1e-11 * fscale * radius):
        raise ConvergenceError(
            f"contour residue did not settle: node-doubling change {err:.3e}"
        )
    order = 0
    for p in range(1, 5):
        if abs(m2[p - 1]) > 1e-8 * fscale * radius ** p:
            order = p
    return NumericResidue(residue=m2[0], order=order, quadratic=m2[1], error=err)


def z_spec(k, n, model, M, Jmax=None):
    """Zeta-side spectral sum sum_{m<=M} beta(k - rho0; m) r_spec(k + 2m)."""
    k = complex(k)
    rho0 = model.rho0
    coeffs = beta_coeffs(k - rho0, M)
    weights = _weights(model, n, Jmax)
    total = 0.0 + 0.0j
    for m, bm in enumerate(coeffs):
        total += bm * _r_spec_weighted(k + 2.0 * m, weights, model, warn=(m == 0))
    return total


def normalize(value, k, r_n, l):
    """Divide by omega * I(r_n, l, k): the unit for one principal pairing."""
    return value / (omega_sphere(l) * I_of_z(r_n, l, complex(k), mode="closed"))


def discrepancy_bracket(L, k, r_n, shift=0.5):
    """Dimension-2 bracket 1 - z^{k - shift} 2F1(k - a, k - b, k; 1 - z).

    z = cosh L / (cosh L - 1); the bracket measures the deviation of the
    normalized geodesic coefficient from its large-L limit and decays like
    e^{-L} as L grows.  shift = 1/2 matches the normalized coefficient;
    shift = 1 is the companion variant, also exposed for comparison.
    """
    k = complex(k)
    r_n = complex(r_n)
    a = (0.5 + 1j * r_n) / 2.0
    b = (0.5 - 1j * r_n) / 2.0
    chl = math.cosh(L)
    z = chl / (chl - 1.0)
    hyp = hyp2f1(k - a, k - b, k, 1.0 - z)
    return 1.0 - cmath.exp((k - shift) * math.log(z)) * hyp


def discrepancy_l2(k, n, model):
    """Dimension-2 discrepancy sum.

    D(k) = sum_gamma e^{-(k - 1/2) L} / (2 sinh(L/2)) * integral *
           (1 - z^{k - 1/2} 2F1(k - a, k - b, k; 1 - z)).
    """
    if model.l != 2:
        raise DomainError("discrepancy sum is defined for dimension 2")
    k = complex(k)
    e = model.eigen[n]
    total = 0.0 + 0.0j
    for g in model.geodesics:
        if e.index not in g.integrals:
            raise ModelError(f"geodesic record has no integral for eigen index {e.index}")
        intphi = complex(g.integrals[e.index])
        br = discrepancy_bracket(g.L, k, e.r, shift=0.5)
        total += (
            cmath.exp(-(k - 0.5) * g.L) / (2.0 * math.sinh(g.L / 2.0)) * intphi * br
        )
    return total


def extend_sigma(weights, k, model, M=None, Jmax=None):
    """Spectral sum with caller-supplied weights (linear in the weights).

    weights maps eigen indices to replacement values for w_j; indices not
    present contribute nothing.  With M given, the zeta-side binomial
    superposition of the same weighted sum is returned.
    """
    k = complex(k)
    count = len(model.eigen) if Jmax is None else min(int(Jmax), len(model.eigen))
    wlist = [complex(weights.get(j, 0.0)) for j in range(count)]
    if M is None:
        return _r_spec_weighted(k, wlist, model)
    rho0 = model.rho0
    coeffs = beta_coeffs(k - rho0, M)
    total = 0.0 + 0.0j
    for m, bm in enumerate(coeffs):
        total += bm * _r_spec_weighted(k + 2.0 * m, wlist, model, warn=(m == 0))
    return total
