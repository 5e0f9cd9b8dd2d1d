"""Zeta functions, spherical transforms, and residue formulas for real
hyperbolic spaces, driven by user-supplied length-spectrum and eigenvalue
data.

Modules
-------
specfun     gamma, digamma, beta, binomial, and Gauss/Clausen hypergeometric
            functions over the complex plane, with explicit pole handling
liealg      Lorentz Lie algebra: Killing form, structured bases, Casimir
            reorganizations, adjoint determinants on the nilpotent part
geom        Lorentz group elements, Iwasawa data, ball model action,
            spherical functions, Haar sampling on rotation groups
radial      the radial hypergeometric ODE: Frobenius series, smooth
            solutions, operator residuals, weight kernels
transforms  spherical/horocycle transforms of the basic kernels, radial
            moments, normalization constants, admissibility diagnostics
zeta        spectral models, geodesic coefficients, zeta-side sums, binomial
            superposition, Selberg-type pairing, poles and residues
verify      built-in self-check suites
cli         the ``hypzeta`` command-line interface
"""

__version__ = "0.1.0"

from .specfun import (  # noqa: F401
    ConvergenceError,
    DegenerateParameterWarning,
    DomainError,
    PoleError,
    beta_fn,
    binom_general,
    digamma_real,
    gamma,
    hyp2f1,
    hyp3f2,
    rgamma,
)
from .geom import GroupElement, spherical_phi  # noqa: F401
from .liealg import StructuredBasis, build_basis  # noqa: F401
from .radial import (  # noqa: F401
    FrobeniusSeries,
    LogCaseError,
    OdeParams,
    SmoothnessError,
    frobenius_from_params,
    ode_params_from_eigen,
    smooth_solution,
)
from .transforms import (  # noqa: F401
    I_of_z,
    QuadratureResult,
    abel_fk,
    c_of_lambda,
    omega_sphere,
    spherical_transform_fk,
)
from .zeta import (  # noqa: F401
    EigenData,
    GeodesicClassData,
    ModelError,
    NearPoleWarning,
    PoleData,
    SpectralModel,
    beta_coeffs,
    build_model,
    coeff_c1,
    model_from_dict,
    model_to_dict,
    poles_and_residues,
    r_geom,
    r_spec,
    residue_numeric,
    selberg_pair,
    z_geom,
    z_spec,
    z_superpose,
)
