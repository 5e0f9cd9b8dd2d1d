"""Matrix realization of the Lie algebra so(1, l) and its structured basis.

Ambient coordinates: (l+1) x (l+1) real matrices, index 0 is the time
direction, indices 1..l are space.  The defining bilinear form is
J = diag(1, -1, ..., -1), the Cartan involution is conjugation by J, and
the Killing form is B(X, Y) = (l-1) Tr(XY).

The structured basis consists of a normalized Cartan generator H1, rotation
generators spanning the centralizer block (indices 1..l-1), nilpotent root
vectors X_i with their images Z_i = -theta(X_i) under the Cartan involution,
and the compact combinations W_i = X_i + theta(X_i).  The basis is
orthonormal for the theta-twisted form B_theta(X, Y) = -B(X, theta Y), and
the dual basis for B used in the Casimir element is H1 -> H1, M -> -M,
X -> Z, Z -> X.

The module provides two operator identities for the Casimir element (a flat
finite-dimensional one and a polar-coordinate one with 1/r coefficients),
an exact rank-one sl2 identity, and adjoint-action determinants on the
nilpotent subalgebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "J_form",
    "theta",
    "commutator",
    "killing",
    "b_theta",
    "H0_matrix",
    "X_e_matrix",
    "M_pq_matrix",
    "LieAlgebraElement",
    "StructuredBasis",
    "build_basis",
    "casimir_matrix",
    "casimir_flat_rhs",
    "casimir_flat_residual",
    "casimir_centrality_residual",
    "casimir_polar_rhs",
    "casimir_polar_residual",
    "sl2_identity_residual",
    "ad_matrix",
    "killing_via_ad",
    "ad_on_n",
    "det_one_minus_ad_n",
    "det_one_minus_ad_inv_n",
]


def J_form(l):
    """Signature matrix diag(1, -1, ..., -1) of size (l+1)."""
    J = -np.eye(l + 1)
    J[0, 0] = 1.0
    return J


def theta(X, l=None):
    """Cartan involution: conjugation by the signature matrix."""
    X = np.asarray(X, dtype=float)
    if l is None:
        l = X.shape[0] - 1
    J = J_form(l)
    return J @ X @ J


def commutator(X, Y):
    return X @ Y - Y @ X


def killing(X, Y, l=None):
    """Killing form B(X, Y) = (l-1) Tr(XY) on so(1, l)."""
    X = np.asarray(X, dtype=float)
    if l is None:
        l = X.shape[0] - 1
    return (l - 1) * float(np.trace(X @ np.asarray(Y, dtype=float)))


def b_theta(X, Y, l=None):
    """Positive-definite twisted form B_theta(X, Y) = -B(X, theta(Y))."""
    X = np.asarray(X, dtype=float)
    if l is None:
        l = X.shape[0] - 1
    return -killing(X, theta(Y, l), l)


def H0_matrix(l):
    """Unnormalized Cartan generator: E[0, l] + E[l, 0]."""
    H = np.zeros((l + 1, l + 1))
    H[0, l] = 1.0
    H[l, 0] = 1.0
    return H


def X_e_matrix(u, l):
    """Nilpotent root vector for direction u in R^{l-1} (raw normalization)."""
    u = np.asarray(u, dtype=float)
    if u.shape != (l - 1,):
        raise ValueError(f"direction must have shape ({l - 1},), got {u.shape}")
    X = np.zeros((l + 1, l + 1))
    X[0, 1:l] = u
    X[1:l, 0] = u
    X[1:l, l] = -u
    X[l, 1:l] = u
    return X


def M_pq_matrix(p, q, l):
    """Rotation generator E[p, q] - E[q, p] in ambient indices 1 <= p, q <= l-1."""
    if not (1 <= p <= l - 1 and 1 <= q <= l - 1 and p != q):
        raise ValueError(f"rotation indices must be distinct in 1..{l - 1}")
    M = np.zeros((l + 1, l + 1))
    M[p, q] = 1.0
    M[q, p] = -1.0
    return M


@dataclass(frozen=True)
class LieAlgebraElement:
    """A validated element X of so(1, l): X^T J + J X = 0."""

    mat: np.ndarray
    l: int

    def __post_init__(self):
        X = np.asarray(self.mat, dtype=float)
        if X.shape != (self.l + 1, self.l + 1):
            raise ValueError(
                f"matrix shape {X.shape} does not match dimension l = {self.l}"
            )
        J = J_form(self.l)
        resid = np.max(np.abs(X.T @ J + J @ X))
        if resid > 1e-12 * max(1.0, float(np.max(np.abs(X)))):
            raise ValueError(f"matrix is not in so(1, l): residual {resid:.3e}")
        object.__setattr__(self, "mat", X)


@dataclass(frozen=True)
class StructuredBasis:
    """Structured, B_theta-orthonormal basis of so(1, l).

    Fields:
      H1      normalized Cartan generator, B_theta(H1, H1) = 1
      H_rho   half-sum-of-roots coelement, H0 / 4
      H_alpha coroot-normalized element, H0 / (2(l-1))
      Ms      rotation generators scaled by 1/sqrt(2(l-1)) (empty for l = 2)
      Xs      unit nilpotent vectors X_e_i / (2 sqrt(l-1))
      Zs      their duals -theta(Xs[i]); B(Xs[i], Zs[j]) = delta_ij
      Ws      compact parts Xs[i] + theta(Xs[i])
      Xe      raw root vectors for the coordinate directions (unscaled)
      Zy      raw rotation generators pairing direction 1 with direction j+1
    """

    l: int
    rho0: float
    H0: np.ndarray
    H1: np.ndarray
    H_rho: np.ndarray
    H_alpha: np.ndarray
    Ms: tuple = field(default_factory=tuple)
    Xs: tuple = field(default_factory=tuple)
    Zs: tuple = field(default_factory=tuple)
    Ws: tuple = field(default_factory=tuple)
    Xe: tuple = field(default_factory=tuple)
    Zy: tuple = field(default_factory=tuple)

    def elements(self):
        """Primal basis as a flat list: [H1] + Ms + Xs + Zs."""
        return [self.H1, *self.Ms, *self.Xs, *self.Zs]

    def casimir_pairs(self):
        """(Q, Q_dual) pairs with B(Q_i, Q_dual_j) = delta_ij."""
        pairs = [(self.H1, self.H1)]
        pairs += [(M, -M) for M in self.Ms]
        pairs += [(X, Z) for X, Z in zip(self.Xs, self.Zs)]
        pairs += [(Z, X) for X, Z in zip(self.Xs, self.Zs)]
        return pairs


def build_basis(l):
    """Construct the structured basis for so(1, l), l >= 2."""
    if l < 2:
        raise ValueError(f"dimension l must be >= 2, got {l}")
    H0 = H0_matrix(l)
    norm = math.sqrt(2.0 * (l - 1))
    H1 = H0 / norm
    scale = 1.0 / (2.0 * math.sqrt(l - 1.0))
    eye = np.eye(l - 1)
    Xe = tuple(X_e_matrix(eye[i], l) for i in range(l - 1))
    Xs = tuple(scale * X for X in Xe)
    Zs = tuple(-theta(X, l) for X in Xs)
    Ws = tuple(X + theta(X, l) for X in Xs)
    Ms = tuple(
        M_pq_matrix(p, q, l) / norm
        for p in range(1, l)
        for q in range(p + 1, l)
    )
    Zy = tuple(M_pq_matrix(1 + j, 1, l) for j in range(1, l - 1))
    return StructuredBasis(
        l=l,
        rho0=(l - 1) / 2.0,
        H0=H0,
        H1=H1,
        H_rho=H0 / 4.0,
        H_alpha=H0 / (2.0 * (l - 1)),
        Ms=Ms,
        Xs=Xs,
        Zs=Zs,
        Ws=Ws,
        Xe=Xe,
        Zy=Zy,
    )


def casimir_matrix(basis):
    """Casimir element sum_i Q_i Q^i in the defining representation."""
    n = basis.l + 1
    out = np.zeros((n, n))
    for Q, Qd in basis.casimir_pairs():
        out += Q @ Qd
    return out


def casimir_flat_rhs(basis):
    """Flat reorganization: H1^2 - sum M^2 + 2 sum X^2 - 2 sum X W - 2 H_rho."""
    out = basis.H1 @ basis.H1 - 2.0 * basis.H_rho
    for M in basis.Ms:
        out -= M @ M
    for X, W in zip(basis.Xs, basis.Ws):
        out += 2.0 * (X @ X) - 2.0 * (X @ W)
    return out


def casimir_flat_residual(l):
    """Max-abs difference between the Casimir and its flat reorganization."""
    basis = build_basis(l)
    return float(np.max(np.abs(casimir_matrix(basis) - casimir_flat_rhs(basis))))


def casimir_centrality_residual(l):
    """The Casimir matrix must be scalar in the defining representation."""
    basis = build_basis(l)
    om = casimir_matrix(basis)
    c = np.trace(om) / (l + 1)
    scalar_resid = float(np.max(np.abs(om - c * np.eye(l + 1))))
    comm_resid = max(
        float(np.max(np.abs(commutator(om, Q)))) for Q in basis.elements()
    )
    return max(scalar_resid, comm_resid)


def _exp_nilpotent(X):
    """exp(X) for X with X^3 = 0 (exact closed form)."""
    n = X.shape[0]
    return np.eye(n) + X + 0.5 * (X @ X)


def casimir_polar_rhs(basis, r):
    """Polar reorganization of the Casimir at radius r > 0.

    Uses the unit nilpotent direction X1 = Xs[0]; the rotated rotation
    generators are conjugated by exp(-r X1), and the radial coefficient
    functions are powers of f = 1/r.
    """
    if r <= 0:
        raise ValueError(f"radius must be positive, got r = {r}")
    l = basis.l
    f = 1.0 / r
    X1 = basis.Xs[0]
    W1 = basis.Ws[0]
    E = _exp_nilpotent(-r * X1)
    Einv = _exp_nilpotent(r * X1)

    out = basis.H1 @ basis.H1 - 2.0 * basis.H_rho
    for M in basis.Ms:
        out -= M @ M
    out += 2.0 * (X1 @ X1) + 2.0 * (l - 2) * f * X1 - 2.0 * (X1 @ W1)
    for j in range(1, l - 1):
        Z = basis.Zy[j - 1]
        Zt = E @ Z @ Einv
        W = basis.Ws[j]
        out += 2.0 * f * f * (Zt @ Zt - 2.0 * (Zt @ Z) + Z @ Z)
        out -= 2.0 * f * (Zt - Z) @ W
    return out


def casimir_polar_residual(l, r):
    """Max-abs difference between the Casimir and its polar reorganization."""
    basis = build_basis(l)
    return float(np.max(np.abs(casimir_matrix(basis) - casimir_polar_rhs(basis, r))))


def sl2_identity_residual():
    """Exact integer identity for the rank-one part in the 2 x 2 picture.

    With H = diag(1, -1), X, Y the standard nilpotents and W = X - Y:
    8 * Casimir = H^2 + 2(XY + YX) = 3 I = H^2 + 4 X^2 - 4 X W - 2 H.
    Returns the max-abs integer deviation (0 when exact).
    """
    H = np.array([[1, 0], [0, -1]], dtype=np.int64)
    X = np.array([[0, 1], [0, 0]], dtype=np.int64)
    Y = np.array([[0, 0], [1, 0]], dtype=np.int64)
    W = X - Y
    eight_omega = H @ H + 2 * (X @ Y + Y @ X)
    rhs = H @ H + 4 * (X @ X) - 4 * (X @ W) - 2 * H
    three_i = 3 * np.eye(2, dtype=np.int64)
    return int(
        max(
            np.max(np.abs(eight_omega - three_i)),
            np.max(np.abs(rhs - three_i)),
        )
    )


def ad_matrix(X, basis):
    """Matrix of ad(X) in the B_theta-orthonormal primal basis."""
    elems = basis.elements()
    l = basis.l
    n = len(elems)
    A = np.zeros((n, n))
    for j, Q in enumerate(elems):
        C = commutator(np.asarray(X, dtype=float), Q)
        for i, P in enumerate(elems):
            A[i, j] = b_theta(C, P, l)
    return A


def killing_via_ad(X, Y, basis):
    """Killing form computed as Tr(ad X ad Y); must agree with killing()."""
    return float(np.trace(ad_matrix(X, basis) @ ad_matrix(Y, basis)))


def ad_on_n(g, l):
    """Matrix of Ad(g) restricted to the nilpotent subalgebra.

    Requires g to normalize the nilpotent subalgebra (true for products of
    rotations fixing the Iwasawa data and Cartan flows); raises ValueError
    otherwise.
    """
    g = np.asarray(g, dtype=float)
    ginv = J_form(l) @ g.T @ J_form(l)
    A = np.zeros((l - 1, l - 1))
    eye = np.eye(l - 1)
    scale = max(1.0, float(np.max(np.abs(g))) ** 2)
    for i in range(l - 1):
        C = g @ X_e_matrix(eye[i], l) @ ginv
        u = C[0, 1:l].copy()
        if np.max(np.abs(C - X_e_matrix(u, l))) > 1e-9 * scale:
            raise ValueError("group element does not normalize the nilpotent subalgebra")
        A[:, i] = u
    return A


def det_one_minus_ad_n(g, l):
    """det(1 - Ad(g)|_n)."""
    return float(np.linalg.det(np.eye(l - 1) - ad_on_n(g, l)))


def det_one_minus_ad_inv_n(g, l):
    """det(1 - Ad(g)^{-1}|_n)."""
    return float(np.linalg.det(np.eye(l - 1) - np.linalg.inv(ad_on_n(g, l))))
