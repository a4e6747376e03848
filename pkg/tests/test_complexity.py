import numpy as np
import pytest

from gecsim.complexity import (
    LN2,
    entropy_density,
    gec,
    gec_upper_bound,
    max_gec,
    occupation_spectrum,
)
from gecsim.gaussian import EntropyProfile, ProductState


def test_gec_zero_profile():
    point = gec(EntropyProfile(time=0.0, S=np.zeros(9)))
    assert point.E_g == 0.0
    assert point.E_g_upper == 0.0


@pytest.mark.parametrize("L", [4, 10, 100])
def test_gec_maximal_profile_hits_ceiling(L):
    ells = np.arange(1, L)
    S_max = np.minimum(ells, L - ells) * LN2
    point = gec(EntropyProfile(time=1.0, S=S_max))
    assert point.E_g == pytest.approx(L * L / 4.0, rel=1e-12)
    # closed form: 2 * sum_{l<L/2} l + L/2
    assert 2 * sum(range(1, L // 2)) + L // 2 == L * L // 4


def test_upper_bound_values():
    assert gec_upper_bound(100, 1.0) == pytest.approx(198.0)
    assert gec_upper_bound(100, 0.0) == 0.0
    assert gec_upper_bound(10, 2.0, c=1.0) == pytest.approx(18.0)


def test_upper_bound_validation():
    with pytest.raises(ValueError):
        gec_upper_bound(1, 1.0)
    with pytest.raises(ValueError):
        gec_upper_bound(10, -1.0)
    with pytest.raises(ValueError):
        gec_upper_bound(10, 1.0, c=0.0)


def test_entropy_density_extremes():
    s = entropy_density(np.array([0.0, 0.5, 1.0]))
    assert s[0] == 0.0
    assert s[2] == 0.0
    assert s[1] == pytest.approx(LN2, abs=1e-12)


def test_entropy_density_concave_with_max_at_half():
    n = np.linspace(0.0, 1.0, 1001)
    s = entropy_density(n)
    assert s.max() == pytest.approx(LN2, abs=1e-12)
    assert n[s.argmax()] == pytest.approx(0.5)
    # midpoint concavity on interior points
    interior = s[1:-1]
    assert np.all(interior >= 0.5 * (s[:-2] + s[2:]) - 1e-12)


def test_neel_occupations_flat_half():
    k = np.linspace(-np.pi, np.pi, 64, endpoint=False)
    spec = occupation_spectrum(ProductState.neel(10), k)
    np.testing.assert_allclose(spec.n_k, 0.5, atol=1e-12)
    np.testing.assert_allclose(spec.s_k, LN2, atol=1e-12)


def test_filled_state_occupations():
    spec = occupation_spectrum(ProductState(np.ones(6, dtype=np.int8)), np.array([0.3]))
    assert spec.n_k[0] == pytest.approx(1.0)
    assert spec.s_k[0] == 0.0


@pytest.mark.parametrize("seed", [0, 3, 9])
def test_any_half_filled_product_state_is_flat(seed):
    rng = np.random.default_rng(seed)
    occ = np.zeros(12, dtype=np.int8)
    occ[rng.choice(12, size=6, replace=False)] = 1
    spec = occupation_spectrum(ProductState(occ), np.linspace(-np.pi, np.pi, 37))
    np.testing.assert_allclose(spec.n_k, 0.5, atol=1e-12)


def test_mean_occupation_matches_filling():
    occ = np.zeros(10, dtype=np.int8)
    occ[:3] = 1
    spec = occupation_spectrum(ProductState(occ), np.linspace(-np.pi, np.pi, 101))
    np.testing.assert_allclose(spec.n_k, 0.3, atol=1e-12)


def test_max_gec():
    assert max_gec(100) == 2500.0
