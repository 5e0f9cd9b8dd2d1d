"""The identity component of the isometry group of real hyperbolic l-space.

Group elements are (l+1) x (l+1) matrices preserving the Lorentz form
J = diag(1, -1, ..., -1) with determinant one and positive time-time entry.
The module provides:

* validated group elements with exact-inverse via g^{-1} = J g^T J,
* one-parameter generators: Cartan flow a_t, nilpotent translations n_u,
  embedded rotations, and the order-two Weyl representative,
* the conformal action on the open unit ball and the associated conformal
  factor f_k(g) = (1 - |g.0|^2)^{k/2},
* the Iwasawa height H(g) = log(g[0,0] + g[0,l]) with its cocycle property,
* elementary spherical functions as normalized angular averages,
* a Haar sampler for the rotation group via sign-fixed QR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .liealg import J_form, X_e_matrix
from .specfun import ConvergenceError

__all__ = [
    "GroupElement",
    "identity",
    "cartan_flow",
    "nilpotent_translation",
    "embed_rotation",
    "weyl_element",
    "ball_action",
    "f_k_eval",
    "iwasawa_height",
    "spherical_phi",
    "haar_sample_so",
]


@dataclass(frozen=True)
class GroupElement:
    """A validated element of the identity component SO0(1, l)."""

    mat: np.ndarray
    l: int

    def __post_init__(self):
        g = np.asarray(self.mat, dtype=float)
        if g.shape != (self.l + 1, self.l + 1):
            raise ValueError(
                f"matrix shape {g.shape} does not match dimension l = {self.l}"
            )
        J = J_form(self.l)
        # tolerance scales with ||g||^2: the form residual of an exactly
        # represented large boost is eps * cosh(t)^2 in floating point
        scale = max(1.0, float(np.max(np.abs(g))) ** 2)
        resid = float(np.max(np.abs(g.T @ J @ g - J)))
        if resid > 1e-10 * scale:
            raise ValueError(f"matrix does not preserve the form: residual {resid:.3e}")
        det = float(np.linalg.det(g))
        if abs(det - 1.0) > 1e-10 * scale:
            raise ValueError(f"determinant {det} != 1")
        if g[0, 0] < 1.0 - 1e-10:
            raise ValueError(f"time orientation reversed: g[0,0] = {g[0, 0]}")
        object.__setattr__(self, "mat", g)

    def inverse(self):
        J = J_form(self.l)
        return GroupElement(J @ self.mat.T @ J, self.l)

    def __matmul__(self, other):
        if not isinstance(other, GroupElement) or other.l != self.l:
            return NotImplemented
        return GroupElement(self.mat @ other.mat, self.l)


def identity(l):
    return GroupElement(np.eye(l + 1), l)


def cartan_flow(t, l):
    """One-parameter boost a_t in the (0, l) plane.

    cosh/sinh are built from e^t and e^{-t} so that the form is preserved
    to one ulp even for large |t|.
    """
    e = math.exp(t)
    q = 1.0 / e
    c = 0.5 * (e + q)
    s = 0.5 * (e - q)
    g = np.eye(l + 1)
    g[0, 0] = c
    g[l, l] = c
    g[0, l] = s
    g[l, 0] = s
    return GroupElement(g, l)


def nilpotent_translation(u, l):
    """Unipotent element n_u = exp(X_u) = I + X_u + X_u^2 / 2 (X_u^3 = 0)."""
    X = X_e_matrix(np.asarray(u, dtype=float), l)
    return GroupElement(np.eye(l + 1) + X + 0.5 * (X @ X), l)


def embed_rotation(f, l):
    """Embed f in SO(l-1) as diag(1, f, 1), acting on coordinates 1..l-1."""
    f = np.asarray(f, dtype=float)
    if f.shape != (l - 1, l - 1):
        raise ValueError(f"rotation block must be ({l - 1}, {l - 1}), got {f.shape}")
    if np.max(np.abs(f.T @ f - np.eye(l - 1))) > 1e-8:
        raise ValueError("rotation block is not orthogonal")
    if abs(np.linalg.det(f) - 1.0) > 1e-8:
        raise ValueError("rotation block must have determinant one")
    g = np.eye(l + 1)
    g[1:l, 1:l] = f
    return GroupElement(g, l)


def weyl_element(l):
    """Order-two Weyl representative diag(1, ..., 1, -1, -1)."""
    g = np.eye(l + 1)
    g[l - 1, l - 1] = -1.0
    g[l, l] = -1.0
    return GroupElement(g, l)


def ball_action(g, y):
    """Conformal action of g on the open unit ball in R^l.

    For the block decomposition g = [[a, b^T], [c, D]] the action is
    y -> (D y + c) / (<b, y> + a).
    """
    if isinstance(g, GroupElement):
        m = g.mat
        l = g.l
    else:
        m = np.asarray(g, dtype=float)
        l = m.shape[0] - 1
    y = np.asarray(y, dtype=float)
    if y.shape != (l,):
        raise ValueError(f"ball point must have shape ({l},), got {y.shape}")
    if float(y @ y) >= 1.0:
        raise ValueError("ball point must satisfy |y| < 1")
    a = m[0, 0]
    b = m[0, 1:]
    c = m[1:, 0]
    D = m[1:, 1:]
    denom = float(b @ y) + a
    if abs(denom) < 1e-14:
        raise ValueError("conformal denominator vanished")
    return (D @ y + c) / denom


def f_k_eval(g, k):
    """Conformal factor f_k(g) = (1 - |g.0|^2)^{k/2} with the principal branch."""
    if isinstance(g, GroupElement):
        m = g.mat
        l = g.l
    else:
        m = np.asarray(g, dtype=float)
        l = m.shape[0] - 1
    x = ball_action(m, np.zeros(l))
    u2 = float(x @ x)
    # principal branch of a positive base: exp((k/2) log(1 - |x|^2))
    return complex(np.exp(0.5 * complex(k) * math.log1p(-u2)))


def iwasawa_height(g):
    """Iwasawa height H(g) = log(g[0,0] + g[0,l]); positive argument for valid g."""
    m = g.mat if isinstance(g, GroupElement) else np.asarray(g, dtype=float)
    l = m.shape[0] - 1
    v = m[0, 0] + m[0, l]
    if v <= 0:
        raise ValueError(f"height argument not positive: {v}")
    return math.log(v)


def spherical_phi(lam, t, l, tol=1e-9):
    """Elementary spherical function as a normalized angular average.

    phi_lambda(t) = int_0^pi (cosh t + sinh t cos th)^{i lam - rho0}
                    sin^{l-2} th dth  /  int_0^pi sin^{l-2} th dth.

    Raises ConvergenceError when the quadrature error estimate is not
    comfortably below the requested tolerance.
    """
    from scipy.integrate import quad

    lam = complex(lam)
    rho0 = (l - 1) / 2.0
    expo = 1j * lam - rho0
    ct = math.cosh(t)
    st = math.sinh(t)

    def integrand_re(th):
        base = ct + st * math.cos(th)
        w = math.sin(th) ** (l - 2) if l > 2 else 1.0
        return (np.exp(expo * math.log(base)) * w).real

    def integrand_im(th):
        base = ct + st * math.cos(th)
        w = math.sin(th) ** (l - 2) if l > 2 else 1.0
        return (np.exp(expo * math.log(base)) * w).imag

    re, re_err = quad(integrand_re, 0.0, math.pi, epsabs=1e-12, epsrel=1e-12, limit=200)
    im, im_err = quad(integrand_im, 0.0, math.pi, epsabs=1e-12, epsrel=1e-12, limit=200)
    num = complex(re, im)
    achieved = re_err + im_err
    if achieved > 50.0 * tol * max(1.0, abs(num)):
        raise ConvergenceError(
            f"angular quadrature achieved error {achieved:.3e}, above tolerance"
        )
    den = math.sqrt(math.pi) * math.gamma((l - 1) / 2.0) / math.gamma(l / 2.0)
    return num / den


def haar_sample_so(n, seed=None, size=None):
    """Haar-distributed rotations from SO(n) via sign-fixed QR.

    Returns a single (n, n) matrix when size is None, else (size, n, n).
    The R-diagonal sign fix makes the QR map measure-correct on the
    orthogonal group; a final fixed-column flip lands in SO(n).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    m = 1 if size is None else int(size)
    g = rng.standard_normal((m, n, n))
    q, r = np.linalg.qr(g)
    d = np.sign(np.diagonal(r, axis1=-2, axis2=-1))
    d[d == 0] = 1.0
    q = q * d[:, None, :]
    det = np.linalg.det(q)
    q[det < 0, :, -1] *= -1.0
    return q[0] if size is None else q
