"""Built-in self checks, grouped into named suites.

Each suite runs a handful of identity checks with explicit tolerances and
returns a plain dict: ``{"suite": name, "passed": bool, "checks": [...]}``
where every check is ``{"name", "residual", "tol", "passed"}``.  The suites
are deterministic for a fixed seed and are what ``hypzeta verify`` runs.
"""

from __future__ import annotations

import cmath
import math
import random

import numpy as np

from . import geom, liealg, radial, transforms, zeta
from .specfun import beta_fn, digamma_real, gamma, hyp2f1

__all__ = ["SUITES", "run_suite"]

_EULER_GAMMA = 0.5772156649015328606


def _check(name, residual, tol):
    residual = float(residual)
    return {
        "name": name,
        "residual": residual,
        "tol": float(tol),
        "passed": bool(residual <= tol),
    }


def _suite_specfun(seed):
    rng = random.Random(seed)
    checks = []
    worst_refl = 0.0
    worst_rec = 0.0
    for _ in range(20):
        z = complex(rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0))
        if abs(z - round(z.real)) < 1e-3 or abs(z.imag) < 1e-3:
            z += 0.3 + 0.2j
        refl = abs(gamma(z) * gamma(1.0 - z) - cmath.pi / cmath.sin(cmath.pi * z))
        refl /= max(1.0, abs(cmath.pi / cmath.sin(cmath.pi * z)))
        rec = abs(gamma(z + 1.0) / (z * gamma(z)) - 1.0)
        worst_refl = max(worst_refl, refl)
        worst_rec = max(worst_rec, rec)
    checks.append(_check("gamma reflection identity", worst_refl, 1e-10))
    checks.append(_check("gamma recurrence identity", worst_rec, 1e-12))
    checks.append(
        _check(
            "log series 2F1(1,1,2;z) = -log(1-z)/z",
            abs(hyp2f1(1.0, 1.0, 2.0, 0.43) - (-math.log(1.0 - 0.43) / 0.43)),
            1e-13,
        )
    )
    checks.append(
        _check(
            "binomial series 2F1(a,b,b;z) = (1-z)^{-a}",
            abs(hyp2f1(0.7 + 0.2j, 1.3, 1.3, -0.6) - (1.6) ** (-(0.7 + 0.2j))),
            1e-13,
        )
    )
    checks.append(
        _check(
            "beta pole cancellation B(-1/2, 3/2) = -pi",
            abs(beta_fn(-0.5, 1.5) + math.pi),
            1e-12,
        )
    )
    checks.append(
        _check(
            "digamma at 1 equals -EulerGamma",
            abs(digamma_real(1.0) + _EULER_GAMMA),
            1e-13,
        )
    )
    return checks


def _suite_liealg(seed):
    checks = []
    for l in (2, 3, 4):
        checks.append(
            _check(
                f"Casimir flat radial identity (l={l})",
                liealg.casimir_flat_residual(l),
                1e-9,
            )
        )
    checks.append(
        _check(
            "Casimir polar radial identity (l=3, r=0.7)",
            liealg.casimir_polar_residual(3, 0.7),
            1e-9,
        )
    )
    checks.append(
        _check("rank-one sl2 Casimir identity", liealg.sl2_identity_residual(), 0.0)
    )
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(5):
        l = rng.choice((2, 3, 4))
        t = rng.uniform(0.2, 1.5)
        # central holonomy -1 needs -I in SO(l-1), so l - 1 must be even
        m11 = rng.choice((1.0, -1.0)) if l == 3 else 1.0
        m = np.eye(l + 1)
        if m11 < 0:
            m[1, 1] = -1.0
            m[2, 2] = -1.0
        g = geom.cartan_flow(t, l).mat @ m
        det = liealg.det_one_minus_ad_inv_n(g, l)
        target = (1.0 - m11 * math.exp(-t)) ** (l - 1)
        worst = max(worst, abs(det - target) / max(1.0, abs(target)))
    checks.append(_check("nilpotent determinant identity", worst, 1e-10))
    return checks


def _suite_geom(seed):
    rng = random.Random(seed)
    checks = []
    worst_form = 0.0
    worst_coc = 0.0
    worst_fk = 0.0
    for _ in range(10):
        l = rng.choice((2, 3, 4))
        t = rng.uniform(-1.5, 1.5)
        u = [rng.uniform(-1.0, 1.0) for _ in range(l - 1)]
        a = geom.cartan_flow(t, l)
        nu = geom.nilpotent_translation(u, l)
        g = a @ nu
        J = liealg.J_form(l)
        worst_form = max(
            worst_form, float(np.max(np.abs(g.mat.T @ J @ g.mat - J)))
        )
        s = rng.uniform(-1.0, 1.0)
        coc = abs(
            geom.iwasawa_height(g @ geom.cartan_flow(s, l))
            - geom.iwasawa_height(g)
            - s
        )
        worst_coc = max(worst_coc, coc)
        k = rng.uniform(1.5, 4.0)
        unorm2 = sum(x * x for x in u)
        target = (math.cosh(t) + 0.5 * unorm2 * math.exp(t)) ** (-k)
        worst_fk = max(worst_fk, abs(geom.f_k_eval(g, k) - target) / abs(target))
    checks.append(_check("quadratic form preservation", worst_form, 1e-10))
    checks.append(_check("Iwasawa height cocycle", worst_coc, 1e-10))
    checks.append(_check("spherical vector matrix identity", worst_fk, 1e-10))
    checks.append(
        _check(
            "spherical function at t = 0",
            abs(geom.spherical_phi(1.3, 0.0, 3) - 1.0),
            1e-10,
        )
    )
    rho0 = 1.0
    checks.append(
        _check(
            "spherical function at lambda = -i rho0",
            abs(geom.spherical_phi(-1j * rho0, 0.9, 3) - 1.0),
            1e-9,
        )
    )
    checks.append(
        _check(
            "spherical function evenness",
            abs(geom.spherical_phi(0.8, 1.1, 4) - geom.spherical_phi(-0.8, 1.1, 4)),
            1e-10,
        )
    )
    return checks


def _suite_radial(seed):
    rng = random.Random(seed)
    checks = []
    params = radial.ode_params_from_eigen(3, 1.0, d=0.0)
    resid = radial.operator_residual(params, lambda x: radial.smooth_solution(params, x), -1.3)
    checks.append(_check("smooth solution ODE residual (l=3)", abs(resid), 1e-8))
    params2 = radial.ode_params_from_eigen(2, 1.5, d=0.0)
    resid2 = radial.operator_residual(
        params2, lambda x: radial.smooth_solution(params2, x), -0.7
    )
    checks.append(_check("smooth solution ODE residual (l=2)", abs(resid2), 1e-8))
    fro = radial.frobenius_from_params(params, 0.0, 10)
    tay = radial.taylor_2f1_coeffs(params.a, params.b, params.c, 10)
    worst = max(
        abs(ca - cb) / max(1.0, abs(cb)) for ca, cb in zip(fro.coefficients, tay)
    )
    checks.append(_check("Frobenius series matches Taylor series", worst, 1e-10))
    c = rng.uniform(0.5, 3.0)
    d = -rng.uniform(0.0, 0.5)
    p1, p2 = radial.indicial_roots(c, d)
    f1 = p1 * p1 + (c - 1.0) * p1 + d
    f2 = p2 * p2 + (c - 1.0) * p2 + d
    checks.append(_check("indicial roots solve the indicial equation", abs(f1) + abs(f2), 1e-10))
    return checks


def _suite_transforms(seed):
    del seed
    checks = []
    closed = transforms.abel_fk(3.0, 0.8, 3, mode="closed")
    quadr = transforms.abel_fk(3.0, 0.8, 3, mode="quadrature")
    checks.append(
        _check(
            "horocycle transform closed vs quadrature",
            abs(closed - quadr.value) / abs(closed),
            1e-9,
        )
    )
    cl = transforms.spherical_transform_fk(4.0, 1.3, 2, mode="closed")
    it = transforms.spherical_transform_fk(4.0, 1.3, 2, mode="iterated")
    checks.append(
        _check(
            "spherical transform closed vs iterated",
            abs(cl - it.value) / abs(cl),
            1e-8,
        )
    )
    icl = transforms.I_of_z(1.0, 2, 2.5, mode="closed")
    iqu = transforms.I_of_z(1.0, 2, 2.5, mode="quadrature")
    checks.append(
        _check(
            "radial moment closed vs quadrature",
            abs(icl - iqu.value) / abs(icl),
            1e-9,
        )
    )
    ccl = transforms.c_of_lambda(0.9, 3, mode="closed")
    cqu = transforms.c_of_lambda(0.9, 3, mode="quadrature")
    checks.append(
        _check(
            "normalization constant closed vs quadrature",
            abs(ccl - cqu.value) / abs(ccl),
            1e-8,
        )
    )
    return checks


def _demo_model(l=2):
    """Small synthetic model used by the zeta suite."""
    eigen_specs = [
        (-0.09, {0: 1.0, 1: 1.0, 2: 1.0}, {0: 1.0}),
        (1.0, {0: 1.0, 1: 1.0, 2: 1.0}, {0: 1.0}),
        (6.25, {0: 1.0, 1: 1.0, 2: 1.0}, {0: 1.0}),
    ]
    geo_specs = [
        (1.0, 1.0, 1.0, {0: 0.9, 1: 1.1, 2: 0.7}),
        (1.7, 1.7, 1.0, {0: 0.4, 1: 0.8, 2: 0.5}),
        (2.0, 1.0, 1.0, {0: 0.2, 1: 0.3, 2: 0.1}),
    ]
    return zeta.build_model(l, eigen_specs, geo_specs)


def _suite_zeta(seed):
    del seed
    checks = []
    model = _demo_model()
    k = 3.2 + 0.4j
    zg = zeta.z_geom(k, 1, model)
    zs = zeta.z_superpose(k, 1, model, M=40)
    checks.append(
        _check(
            "zeta-side superposition identity",
            abs(zg - zs) / max(1.0, abs(zg)),
            1e-8,
        )
    )
    beta0 = zeta.beta_coeffs(1.7 + 0.3j, 0)[0]
    checks.append(
        _check(
            "superposition coefficient beta(k; 0) = 2^{-k}",
            abs(beta0 - 2.0 ** (-(1.7 + 0.3j))),
            1e-14,
        )
    )
    y = 4.0
    kk = 2.3 + 0.5j
    coeffs = zeta.beta_coeffs(kk, 40)
    lhs = (1.0 - math.sqrt(1.0 - 1.0 / y)) ** kk
    rhs = sum(bm * y ** (-(kk + m)) for m, bm in enumerate(coeffs))
    checks.append(_check("binomial expansion identity (y=4)", abs(lhs - rhs), 1e-10))
    poles = zeta.poles_and_residues(1, model)
    target = next(p for p in poles if abs(p.location - (0.5 + 1.0j)) < 1e-9)
    num = zeta.residue_numeric(lambda w: zeta.r_spec(w, 1, model), 0.5 + 1.0j)
    checks.append(
        _check(
            "closed-form residue vs contour integration",
            abs(target.residue - num.residue) / max(1.0, abs(num.residue)),
            1e-6,
        )
    )
    pair = zeta.selberg_pair(2.4, model)
    checks.append(
        _check(
            "pairing ratio for trivial holonomy",
            abs(pair["ratio"] - pair["expected_ratio_trivial_holonomy"]),
            1e-10,
        )
    )
    return checks


SUITES = {
    "specfun": _suite_specfun,
    "liealg": _suite_liealg,
    "geom": _suite_geom,
    "radial": _suite_radial,
    "transforms": _suite_transforms,
    "zeta": _suite_zeta,
}


def run_suite(name, seed=0):
    """Run one named suite (or "all") and return its result dict."""
    if name == "all":
        checks = []
        for key in SUITES:
            checks.extend(run_suite(key, seed=seed)["checks"])
        return {"suite": "all", "passed": all(c["passed"] for c in checks), "checks": checks}
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    raw = SUITES[name](seed)
    checks = [dict(c, name=f"{name}: {c['name']}") for c in raw]
    return {"suite": name, "passed": all(c["passed"] for c in checks), "checks": checks}
