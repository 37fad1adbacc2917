import numpy as np
import pytest

from geophase.cocycles import (
    automorphy_J,
    block_product,
    cocycle_triple_report,
    dupont_cocycle,
    dupont_cocycle_closed,
    dupont_cocycle_points,
    gauss_alpha,
    gauss_phase,
    gauss_u,
    gauss_u_squared,
    gw_cocycle,
    gw_cocycle_points,
    k_part,
    multiplicative_phase,
    phase_report,
    section_product,
)
from geophase.grassmann import (
    GrassmannPoint,
    GroupElement,
    ManifoldSpec,
    act,
    compose_points,
    random_group_element,
    section,
)
from geophase.matfun import dagger, herm_fn
from geophase.phases import kernel

from conftest import CONFIGS, random_pair


def mod1(x):
    return abs(x - np.round(x))


# -- block product and Gauss factors ---------------------------------------------


@pytest.mark.parametrize("n,m,eps", CONFIGS)
@pytest.mark.parametrize("seed", range(3))
def test_blocks_match_literal_product(n, m, eps, seed):
    Z1, Z2 = random_pair(n, m, eps, seed)
    bp = block_product(Z1, Z2)
    assert np.abs(bp.assemble() - section_product(Z1, Z2)).max() <= 1e-10


@pytest.mark.parametrize("n,m,eps", CONFIGS)
def test_gauss_factors_reassemble(n, m, eps):
    Z1, Z2 = random_pair(n, m, eps, seed=4)
    bp = block_product(Z1, Z2)
    upper, diag, lower = bp.gauss_factors()
    assert np.abs(upper @ diag @ lower - bp.assemble()).max() <= 1e-10


@pytest.mark.parametrize("n,m,eps", CONFIGS)
def test_zprime_is_composed_point(n, m, eps):
    Z1, Z2 = random_pair(n, m, eps, seed=5)
    assert np.abs(block_product(Z1, Z2).Zprime - compose_points(Z1, Z2).Z).max() <= 1e-10


def test_block_product_with_origin():
    Z1, _ = random_pair(2, 3, -1, seed=0)
    o = GrassmannPoint.origin(Z1.spec)
    bp = block_product(Z1, o)
    inv_sqrt = herm_fn(np.eye(2) - Z1.Z @ dagger(Z1.Z), "invsqrt")
    np.testing.assert_allclose(bp.N, inv_sqrt @ Z1.Z, atol=1e-12)
    np.testing.assert_allclose(bp.Zprime, Z1.Z, atol=1e-12)


@pytest.mark.parametrize("n,m,eps", CONFIGS)
@pytest.mark.parametrize("seed", range(3))
def test_alpha_closed_form_is_schur_complement(n, m, eps, seed):
    Z1, Z2 = random_pair(n, m, eps, seed)
    assert np.abs(gauss_alpha(Z1, Z2) - block_product(Z1, Z2).alpha).max() <= 1e-10


def test_alpha_at_origin_is_identity():
    o = GrassmannPoint.origin(ManifoldSpec(2, 2, 1))
    np.testing.assert_allclose(gauss_alpha(o, o), np.eye(2))


def test_alpha_scalar_value():
    # eps = -1, z1 = z2 = 0.5: 1 - z z* = 0.75 but 1 - eps z2 z1* = 1.25, so
    # alpha = 0.75^{-1/2} * (0.75 / 1.25 * 0.75) * 0.75^{-1/2} = 0.6.
    # Independently, the Schur complement of the literal 2 x 2 product.
    spec = ManifoldSpec(1, 1, -1)
    z = GrassmannPoint(spec, 0.5)
    prod = section_product(z, z)
    schur = prod[0, 0] - prod[0, 1] * prod[1, 0] / prod[1, 1]
    assert schur == pytest.approx(0.6, abs=1e-14)
    assert gauss_alpha(z, z)[0, 0] == pytest.approx(0.6, abs=1e-14)


@pytest.mark.parametrize("n,m,eps", CONFIGS)
def test_u_squared_matches_composed_point(n, m, eps):
    Z1, Z2 = random_pair(n, m, eps, seed=6)
    Z3 = compose_points(Z1, Z2).Z
    direct = np.eye(n) + eps * Z3 @ dagger(Z3)
    assert np.abs(gauss_u_squared(Z1, Z2) - direct).max() <= 1e-9
    assert np.linalg.eigvalsh(gauss_u_squared(Z1, Z2)).min() > 0


def test_u_with_origin():
    Z1, _ = random_pair(2, 2, 1, seed=2)
    o = GrassmannPoint.origin(Z1.spec)
    expected = herm_fn(np.eye(2) + Z1.Z @ dagger(Z1.Z), "sqrt")
    np.testing.assert_allclose(gauss_u(Z1, o), expected, atol=1e-12)


# -- multiplicative phase ----------------------------------------------------------


def test_phase_scalar_value():
    spec = ManifoldSpec(1, 1, 1)
    phi = multiplicative_phase(GrassmannPoint(spec, 0.5), GrassmannPoint(spec, 0.3j))
    assert phi == pytest.approx(-np.arctan(0.15), abs=1e-15)


def test_phase_with_origin_is_zero():
    Z1, _ = random_pair(2, 3, -1, seed=3)
    o = GrassmannPoint.origin(Z1.spec)
    assert multiplicative_phase(Z1, o) == 0
    assert multiplicative_phase(o, Z1) == 0


@pytest.mark.parametrize("n,m,eps", CONFIGS)
@pytest.mark.parametrize("seed", range(3))
def test_phase_matches_gauss_factors(n, m, eps, seed):
    Z1, Z2 = random_pair(n, m, eps, seed)
    diff = multiplicative_phase(Z1, Z2) - gauss_phase(Z1, Z2)
    assert abs(np.exp(1j * diff) - 1) <= 1e-10


@pytest.mark.parametrize("k", [1, 2, 5])
def test_phase_weight(k):
    Z1, Z2 = random_pair(2, 2, 1, seed=k)
    assert abs(np.exp(1j * multiplicative_phase(Z1, Z2, k)) - np.exp(1j * k * multiplicative_phase(Z1, Z2))) <= 1e-12
    assert -np.pi < multiplicative_phase(Z1, Z2, k) <= np.pi


@pytest.mark.parametrize("n,m,eps", CONFIGS)
def test_k_part_is_block_diagonal(n, m, eps):
    Z1, Z2 = random_pair(n, m, eps, seed=7)
    h = k_part(Z1, Z2)
    assert np.abs(h[:n, n:]).max() <= 1e-9
    assert np.abs(h[n:, :n]).max() <= 1e-9
    # and the upper block determinant carries the phase
    a = h[:n, :n]
    assert abs(np.linalg.det(a) / abs(np.linalg.det(a)) - np.exp(-1j * eps * multiplicative_phase(Z1, Z2))) <= 1e-9


# -- Guichardet-Wigner and Dupont cocycles ------------------------------------------


def test_gw_with_identity():
    spec = ManifoldSpec(2, 3, -1)
    g = random_group_element(spec, 1)
    e = GroupElement.identity(spec)
    assert gw_cocycle(g, e) == pytest.approx(0, abs=1e-15)
    assert gw_cocycle(e, g) == pytest.approx(0, abs=1e-15)


@pytest.mark.parametrize("n,m,eps", CONFIGS)
@pytest.mark.parametrize("seed", range(3))
def test_gw_on_sections_closed_form(n, m, eps, seed):
    Z1, Z2 = random_pair(n, m, eps, seed)
    f = gw_cocycle(section(Z1), section(Z2))
    assert mod1(f - gw_cocycle_points(Z1, Z2)) <= 1e-12


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2), (2, 2)])
@pytest.mark.parametrize("seed", range(10))
def test_gw_two_cocycle_noncompact(n, m, seed):
    spec = ManifoldSpec(n, m, -1)
    g1, g2, g3 = (random_group_element(spec, [seed, i]) for i in range(3))
    lhs = gw_cocycle(g1, g2) + gw_cocycle(g1 @ g2, g3)
    rhs = gw_cocycle(g2, g3) + gw_cocycle(g1, g2 @ g3)
    assert abs(lhs - rhs) <= 1e-9


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2), (2, 2)])
@pytest.mark.parametrize("seed", range(10))
def test_gw_two_cocycle_compact_mod_one(n, m, seed):
    # on the compact group each f is only defined up to an integer
    spec = ManifoldSpec(n, m, 1)
    g1, g2, g3 = (random_group_element(spec, [seed, i]) for i in range(3))
    lhs = gw_cocycle(g1, g2) + gw_cocycle(g1 @ g2, g3)
    rhs = gw_cocycle(g2, g3) + gw_cocycle(g1, g2 @ g3)
    assert mod1(lhs - rhs) <= 1e-9


def test_gw_integer_jump_on_compact_group():
    # a Haar triple where the literal additive identity is off by one
    spec = ManifoldSpec(1, 2, 1)
    jumps = []
    for seed in range(60):
        g1, g2, g3 = (random_group_element(spec, [seed, i]) for i in range(3))
        d = gw_cocycle(g1, g2) + gw_cocycle(g1 @ g2, g3) - gw_cocycle(g2, g3) - gw_cocycle(g1, g2 @ g3)
        jumps.append(round(d))
    assert set(jumps) <= {-1, 0, 1}
    assert any(jumps)


@pytest.mark.parametrize("n,m,eps", CONFIGS)
def test_dupont_closed_on_sections(n, m, eps):
    Z1, Z2 = random_pair(n, m, eps, seed=9)
    f = gw_cocycle(section(Z1), section(Z2))
    assert abs(f - eps / np.pi * dupont_cocycle_points(Z1, Z2)) <= 1e-12
    assert abs(dupont_cocycle_closed(section(Z1), section(Z2)) - dupont_cocycle_points(Z1, Z2)) <= 1e-12


@pytest.mark.parametrize("n,m,eps", [(1, 1, 1), (2, 2, -1), (2, 3, 1), (1, 2, -1)])
def test_dupont_quadrature_matches_closed(n, m, eps):
    Z1, Z2 = random_pair(n, m, eps, seed=10)
    g1, g2 = section(Z1), section(Z2)
    c = dupont_cocycle(g1, g2)
    assert abs(c - dupont_cocycle_closed(g1, g2)) <= 1e-5
    assert abs(gw_cocycle(g1, g2) - eps / np.pi * c) <= 1e-5


@pytest.mark.parametrize("n,m", [(1, 1), (2, 2), (1, 3)])
def test_dupont_relation_for_general_elements(n, m):
    spec = ManifoldSpec(n, m, -1)
    g1, g2 = random_group_element(spec, 3), random_group_element(spec, 4)
    assert abs(gw_cocycle(g1, g2) + dupont_cocycle_closed(g1, g2) / np.pi) <= 1e-12


def test_dupont_with_identity():
    spec = ManifoldSpec(1, 2, -1)
    g = random_group_element(spec, 5)
    assert abs(dupont_cocycle(g, GroupElement.identity(spec))) <= 1e-12


# -- automorphy factor -------------------------------------------------------------


def test_automorphy_identity():
    spec = ManifoldSpec(2, 2, 1)
    Z, _ = random_pair(2, 2, 1, seed=0)
    assert automorphy_J(GroupElement.identity(spec), Z) == pytest.approx(1)


def _near_identity(spec, seed, scale):
    # keeps compact group elements away from points where the chart breaks
    from scipy.linalg import expm

    rng = np.random.default_rng(seed)
    N = spec.size
    X = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    I = np.diag([spec.epsilon] * spec.n + [1] * spec.m).astype(complex)
    X = X - I @ dagger(X) @ I
    X -= np.trace(X) / N * np.eye(N)
    return GroupElement(spec, expm(scale * X / np.linalg.norm(X)))


@pytest.mark.parametrize("n,m,eps", CONFIGS)
def test_automorphy_cocycle(n, m, eps):
    spec = ManifoldSpec(n, m, eps)
    g1, g2 = _near_identity(spec, 1, 0.4), _near_identity(spec, 2, 0.4)
    Z, _ = random_pair(n, m, eps, seed=11, max_norm=0.4)
    lhs = automorphy_J(g1 @ g2, Z)
    rhs = automorphy_J(g1, act(g2, Z)) * automorphy_J(g2, Z)
    assert abs(lhs - rhs) <= 1e-10 * max(1, abs(lhs))


@pytest.mark.parametrize("n,m,eps", CONFIGS)
def test_kernel_covariance(n, m, eps):
    spec = ManifoldSpec(n, m, eps)
    g = _near_identity(spec, 3, 0.4)
    X, Y = random_pair(n, m, eps, seed=12, max_norm=0.4)
    lhs = kernel(act(g, X), act(g, Y), 1).value
    rhs = automorphy_J(g, X) * kernel(X, Y, 1).value * np.conj(automorphy_J(g, Y))
    assert abs(lhs - rhs) <= 1e-10 * max(1, abs(lhs))


# -- reports -----------------------------------------------------------------------


def test_triple_at_origin_is_zero():
    o = GrassmannPoint.origin(ManifoldSpec(2, 2, -1))
    t = cocycle_triple_report(o, o, order=8)
    assert (t.f, t.phi) == (0, 0)
    assert abs(t.c) <= 1e-14
    assert max(t.residuals.values()) <= 1e-14


@pytest.mark.parametrize("eps", [1, -1])
def test_triple_residuals(eps):
    Z1, Z2 = random_pair(2, 2, eps, seed=13, max_norm=0.5)
    r = cocycle_triple_report(Z1, Z2).residuals
    assert r["phase_cocycle"] <= 1e-9
    assert r["dupont"] <= 1e-5


def test_conjugate_sign_does_not_hold():
    # e^{i eps Phi} pairs with e^{+2 pi i f}; the conjugate variant fails
    spec = ManifoldSpec(1, 1, -1)
    t = cocycle_triple_report(GrassmannPoint(spec, 0.5), GrassmannPoint(spec, 0.3j), order=8)
    assert t.residuals["phase_cocycle"] <= 1e-15
    assert t.residuals["phase_cocycle_conjugate"] == pytest.approx(2 * np.sin(np.arctan(0.15)), abs=1e-14)


def test_phase_report_consistent():
    Z1, Z2 = random_pair(2, 3, -1, seed=14)
    rep = phase_report(Z1, Z2)
    assert rep.kernel_phase == pytest.approx(2 * rep.area_closed, abs=1e-12)
    assert rep.quadrature_error <= 1e-6
    for key in ("area_quadrature", "phase_area", "dupont_closed", "phase_cocycle", "dupont"):
        assert rep.residuals[key] <= 1e-5, key
