import numpy as np
import pytest

from gecsim.lattice import (
    MAX_GROUP_VELOCITY,
    NEAREST_NEIGHBOR,
    Boundary,
    ModelSpec,
    ValidationError,
    build_hamiltonian,
    dispersion,
    group_velocity,
)


def test_nearest_neighbor_open_matrix():
    h = build_hamiltonian(ModelSpec(L=4)).matrix
    expected = np.zeros((4, 4))
    for i in range(3):
        expected[i, i + 1] = expected[i + 1, i] = -1.0
    np.testing.assert_array_equal(h, expected)


def test_long_range_open_entry():
    # distance-2 hop at alpha=1 has amplitude -1/2
    h = build_hamiltonian(ModelSpec(L=3, alpha=1.0, allow_odd_L=True)).matrix
    assert h[0, 2] == -0.5
    assert h[0, 1] == -1.0
    assert np.all(np.diag(h) == 0.0)


def test_two_site_eigenvalues():
    E = build_hamiltonian(ModelSpec(L=2)).eigenvalues
    np.testing.assert_allclose(np.sort(E), [-1.0, 1.0], atol=1e-12)


def test_periodic_nearest_neighbor_has_corner_hops():
    h = build_hamiltonian(ModelSpec(L=6, boundary=Boundary.PERIODIC)).matrix
    assert h[0, 5] == -1.0
    assert h[5, 0] == -1.0


def test_periodic_long_range_minimal_image():
    h = build_hamiltonian(ModelSpec(L=6, alpha=1.0, boundary=Boundary.PERIODIC)).matrix
    # sites 0 and 4 are distance 2 around the ring, not 4
    assert h[0, 4] == -0.5
    assert h[0, 3] == pytest.approx(-1.0 / 3.0)


@pytest.mark.parametrize("L", [6, 10, 16])
def test_open_chain_spectrum_analytic(L):
    E = np.sort(build_hamiltonian(ModelSpec(L=L)).eigenvalues)
    expected = np.sort(-2.0 * np.cos(np.pi * np.arange(1, L + 1) / (L + 1)))
    np.testing.assert_allclose(E, expected, atol=1e-9)


@pytest.mark.parametrize("L", [6, 10, 16])
def test_periodic_spectrum_analytic(L):
    E = np.sort(build_hamiltonian(ModelSpec(L=L, boundary=Boundary.PERIODIC)).eigenvalues)
    expected = np.sort(-2.0 * np.cos(2.0 * np.pi * np.arange(L) / L))
    np.testing.assert_allclose(E, expected, atol=1e-9)


@pytest.mark.parametrize("alpha", [NEAREST_NEIGHBOR, 0.5, 3.0])
@pytest.mark.parametrize("boundary", list(Boundary))
def test_spectral_decomposition_invariants(alpha, boundary):
    ham = build_hamiltonian(ModelSpec(L=12, alpha=alpha, boundary=boundary))
    V, E, h = ham.eigenvectors, ham.eigenvalues, ham.matrix
    assert np.abs((V * E) @ V.T - h).max() <= 1e-10
    assert np.abs(V.T @ V - np.eye(12)).max() <= 1e-10


@pytest.mark.parametrize("alpha", [NEAREST_NEIGHBOR, 1.5])
@pytest.mark.parametrize("boundary", list(Boundary))
def test_reflection_symmetry(alpha, boundary):
    h = build_hamiltonian(ModelSpec(L=10, alpha=alpha, boundary=boundary)).matrix
    np.testing.assert_array_equal(h, h[::-1, ::-1])


def test_dispersion_values():
    assert dispersion(0.0) == pytest.approx(-2.0)
    assert dispersion(np.pi / 2) == pytest.approx(0.0, abs=1e-15)
    assert dispersion(np.pi) == pytest.approx(2.0)


def test_group_velocity_values():
    assert group_velocity(np.pi / 2) == pytest.approx(2.0)
    assert group_velocity(0.0) == pytest.approx(0.0)
    assert group_velocity(-np.pi / 2) == pytest.approx(-2.0)


def test_max_group_velocity_on_grid():
    k = np.linspace(-np.pi, np.pi, 4097)
    assert np.abs(group_velocity(k)).max() == pytest.approx(MAX_GROUP_VELOCITY, abs=1e-6)


@pytest.mark.parametrize(
    "kwargs,field",
    [
        (dict(L=1), "L"),
        (dict(L=7), "L"),
        (dict(L=4, alpha=0.0), "alpha"),
        (dict(L=4, alpha=-1.0), "alpha"),
        (dict(L=4, N=5), "N"),
        (dict(L=4, N=-1), "N"),
    ],
)
def test_validation_errors_name_field(kwargs, field):
    with pytest.raises(ValidationError) as err:
        ModelSpec(**kwargs)
    assert err.value.field == field


def test_odd_L_override():
    assert ModelSpec(L=5, allow_odd_L=True).N == 2


def test_propagator_unitary():
    ham = build_hamiltonian(ModelSpec(L=8))
    U = ham.propagator(1.7)
    np.testing.assert_allclose(U @ U.conj().T, np.eye(8), atol=1e-12)
