"""Lorentz Lie algebra: forms, structured bases, Casimir reorganizations."""

import math
import random

import numpy as np
import pytest

from hypzeta import geom, liealg


# ----------------------------------------------------------------------
# Bilinear forms on generators.
# ----------------------------------------------------------------------

@pytest.mark.parametrize("l", [2, 3, 4, 5])
def test_killing_normalizations(l):
    H0 = liealg.H0_matrix(l)
    assert abs(liealg.killing(H0, H0) - 2.0 * (l - 1)) < 1e-12
    e1 = np.eye(l - 1)[0]
    X = liealg.X_e_matrix(e1, l)
    assert abs(liealg.b_theta(X, X) - 4.0 * (l - 1)) < 1e-12


@pytest.mark.parametrize("l", [2, 3, 4])
def test_basis_b_theta_orthonormal(l):
    basis = liealg.build_basis(l)
    els = basis.elements()
    for i, A in enumerate(els):
        for j, B in enumerate(els):
            expect = 1.0 if i == j else 0.0
            assert abs(liealg.b_theta(A, B) - expect) < 1e-12


@pytest.mark.parametrize("l", [2, 3, 4])
def test_killing_duality_pairs(l):
    # B(Q_i, P_j) = delta_ij where P is the Killing-dual partner of Q
    basis = liealg.build_basis(l)
    els = basis.elements()
    duals = [basis.H1] + [-M for M in basis.Ms] + list(basis.Zs) + list(basis.Xs)
    for i, Q in enumerate(els):
        for j, P in enumerate(duals):
            expect = 1.0 if i == j else 0.0
            assert abs(liealg.killing(Q, P) - expect) < 1e-11


def test_killing_via_ad_matches_closed_form():
    basis = liealg.build_basis(3)
    rng = random.Random(7)
    els = basis.elements()
    for _ in range(6):
        A = els[rng.randrange(len(els))]
        B = els[rng.randrange(len(els))]
        assert abs(liealg.killing_via_ad(A, B, basis) - liealg.killing(A, B)) < 1e-10


# ----------------------------------------------------------------------
# Commutator relations.
# ----------------------------------------------------------------------

@pytest.mark.parametrize("l", [2, 3, 4])
def test_restricted_root_commutator(l):
    basis = liealg.build_basis(l)
    X1 = basis.Xs[0]
    lhs = liealg.commutator(liealg.theta(X1, l), X1)
    assert np.max(np.abs(lhs - basis.H_alpha)) < 1e-12


@pytest.mark.parametrize("l", [3, 4, 5])
def test_rotation_root_relations(l):
    # with raw coordinate root vectors and raw rotation generators:
    # [Z_j, X_{e_1}] = X_{e_{j+1}}, [X_{e_1}, theta X_{e_{j+1}}] = 2 Z_j,
    # [X_{e_{j+1}}, Z_j] = X_{e_1}
    basis = liealg.build_basis(l)
    X1 = basis.Xe[0]
    for j in range(1, l - 1):
        Zj = basis.Zy[j - 1]
        Xj1 = basis.Xe[j]
        assert np.max(np.abs(liealg.commutator(Zj, X1) - Xj1)) < 1e-12
        assert np.max(np.abs(liealg.commutator(X1, liealg.theta(Xj1, l)) - 2.0 * Zj)) < 1e-12
        assert np.max(np.abs(liealg.commutator(Xj1, Zj) - X1)) < 1e-12


# ----------------------------------------------------------------------
# Casimir reorganizations.
# ----------------------------------------------------------------------

@pytest.mark.parametrize("l", [2, 3, 4, 5])
def test_casimir_flat_identity(l):
    assert liealg.casimir_flat_residual(l) < 1e-9


@pytest.mark.parametrize("l", [2, 3, 4])
def test_casimir_centrality(l):
    assert liealg.casimir_centrality_residual(l) < 1e-9


@pytest.mark.parametrize("l,r", [(2, 0.5), (3, 0.7), (4, 1.1), (5, 0.3)])
def test_casimir_polar_identity(l, r):
    assert liealg.casimir_polar_residual(l, r) < 1e-9


def test_sl2_identity_exact_integers():
    assert liealg.sl2_identity_residual() == 0


# ----------------------------------------------------------------------
# Adjoint action on the nilpotent subalgebra.
# ----------------------------------------------------------------------

@pytest.mark.parametrize("l", [2, 3, 4])
def test_det_ad_functional_equation(l):
    # det(1 - Ad(a_t)|n) = (-1)^{l-1} e^{2 rho0 t} det(1 - Ad(a_{-t})|n)
    rho0 = (l - 1) / 2.0
    for t in (0.4, 1.1):
        g_plus = geom.cartan_flow(t, l).mat
        g_minus = geom.cartan_flow(-t, l).mat
        lhs = liealg.det_one_minus_ad_n(g_plus, l)
        rhs = (-1.0) ** (l - 1) * math.exp(2.0 * rho0 * t) * liealg.det_one_minus_ad_n(
            g_minus, l
        )
        assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(lhs))


@pytest.mark.parametrize("l,m11", [(2, 1.0), (3, 1.0), (3, -1.0), (4, 1.0)])
def test_det_ad_inverse_closed_form(l, m11):
    t = 0.8
    m = np.eye(l + 1)
    if m11 < 0:
        m[1, 1] = -1.0
        m[2, 2] = -1.0
    g = geom.cartan_flow(t, l).mat @ m
    det = liealg.det_one_minus_ad_inv_n(g, l)
    target = (1.0 - m11 * math.exp(-t)) ** (l - 1)
    assert abs(det - target) < 1e-10 * max(1.0, abs(target))


def test_ad_on_n_rejects_non_normalizing():
    # a rotation mixing the Iwasawa axis into space does not normalize n
    l = 3
    c, s = math.cos(0.7), math.sin(0.7)
    g = np.eye(l + 1)
    g[1, 1] = c
    g[1, l] = -s
    g[l, 1] = s
    g[l, l] = c
    with pytest.raises(ValueError):
        liealg.ad_on_n(g, l)


# ----------------------------------------------------------------------
# Validated elements.
# ----------------------------------------------------------------------

def test_element_validation():
    l = 3
    X = liealg.X_e_matrix(np.array([1.0, -0.5]), l)
    el = liealg.LieAlgebraElement(X, l)
    assert el.l == l
    bad = np.eye(l + 1)
    with pytest.raises(ValueError):
        liealg.LieAlgebraElement(bad, l)
