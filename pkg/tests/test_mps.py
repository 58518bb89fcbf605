# tests/test_mps.py

import numpy as np
import pytest

from app.engine.dense import DenseState, dense_schmidt
from app.engine.mps import (
    MpsState,
    bond_dimensions,
    chi,
    description_size_bound,
    e_chi,
    entanglement_entropy,
    from_dense,
    global_norm,
    init_zero,
    schmidt_at_cut,
    storage_count,
    to_dense,
    validate_canonical,
)
from app.errors import BondIndexError, CapacityError, DomainError, NormalizationError, ShapeError
from tests.helpers import random_evolved

SQ2 = 1 / np.sqrt(2)


def ghz_dense(n: int) -> DenseState:
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = amps[-1] = SQ2
    return DenseState(n, amps)


def test_init_zero_is_product_state():
    state = init_zero(5)
    assert state.n == 5
    assert state.bond_dimensions() == [1, 1, 1, 1]
    assert chi(state) == 1
    assert e_chi(state) == 0.0
    expected = np.zeros(32)
    expected[0] = 1
    np.testing.assert_array_equal(to_dense(state).amplitudes, expected)


def test_init_zero_rejects_empty_register():
    with pytest.raises(DomainError):
        init_zero(0)


def test_single_qubit_state_has_no_bonds(rng):
    psi = DenseState.random(1, rng)
    state = from_dense(psi)
    assert state.lambdas == []
    assert chi(state) == 1
    np.testing.assert_allclose(to_dense(state).amplitudes, psi.amplitudes, atol=1e-12)


def test_round_trip_random_states(rng):
    for trial in range(200):
        n = 1 + trial % 8
        psi = DenseState.random(n, rng)
        back = to_dense(from_dense(psi))
        assert np.max(np.abs(back.amplitudes - psi.amplitudes)) <= 1e-10


def test_from_dense_is_canonical_and_normalized(rng):
    for n in range(2, 8):
        state = from_dense(DenseState.random(n, rng))
        report = validate_canonical(state)
        assert report.passed, report.failed_sites
        assert report.max_deviation <= 1e-10
        assert global_norm(state) == pytest.approx(1.0, abs=1e-12)
        for lam in state.lambdas:
            assert np.sum(lam**2) == pytest.approx(1.0, abs=1e-12)
            assert np.all(np.diff(lam) <= 0)


def test_from_dense_prunes_zero_schmidt_values():
    plus = np.array([SQ2, SQ2])
    psi = DenseState.product([plus, np.array([1, 0]), plus, np.array([0, 1])])
    state = from_dense(psi)
    assert state.bond_dimensions() == [1, 1, 1]
    assert storage_count(state) == 2 * 4 + 3


def test_ghz_schmidt_values():
    state = from_dense(ghz_dense(6))
    assert bond_dimensions(state) == [2] * 5
    for l in range(1, 6):
        np.testing.assert_allclose(schmidt_at_cut(state, l), [SQ2, SQ2], atol=1e-12)
        assert entanglement_entropy(state, l) == pytest.approx(1.0)
    assert chi(state) == 2
    assert e_chi(state) == 1.0


def test_block_product_has_unit_junction_bond():
    bell = np.array([SQ2, 0, 0, SQ2])
    psi = DenseState(4, np.kron(bell, bell))
    state = from_dense(psi)
    assert state.bond_dimensions() == [2, 1, 2]
    assert entanglement_entropy(state, 2) == pytest.approx(0.0, abs=1e-12)


def test_block_product_bonds_factor(rng):
    for _ in range(50):
        n_a, n_b = (int(k) for k in rng.integers(1, 5, size=2))
        psi = DenseState.random(n_a, rng)
        phi = DenseState.random(n_b, rng)
        state = from_dense(DenseState(n_a + n_b, np.kron(psi.amplitudes, phi.amplitudes)))
        bonds = state.bond_dimensions()
        assert bonds[: n_a - 1] == from_dense(psi).bond_dimensions()
        assert bonds[n_a - 1] == 1
        assert bonds[n_a:] == from_dense(phi).bond_dimensions()
        assert entanglement_entropy(state, n_a) == pytest.approx(0.0, abs=1e-12)


def test_schmidt_matches_dense_oracle(rng):
    for trial in range(100):
        n = 2 + trial % 9
        state, psi = random_evolved(n, 20, rng)
        for l in range(1, n):
            ours = schmidt_at_cut(state, l)
            ref = dense_schmidt(psi, l)[: ours.size]
            np.testing.assert_allclose(ours, ref, atol=1e-10)


def test_schmidt_at_cut_returns_copy():
    state = from_dense(ghz_dense(3))
    values = schmidt_at_cut(state, 1)
    values[0] = 0.0
    assert state.lambdas[0][0] == pytest.approx(SQ2)


@pytest.mark.parametrize("cut", [0, 4, -1])
def test_cut_out_of_range(cut):
    state = init_zero(4)
    with pytest.raises(BondIndexError):
        schmidt_at_cut(state, cut)
    with pytest.raises(BondIndexError):
        entanglement_entropy(state, cut)


def test_from_dense_rejects_unnormalized():
    with pytest.raises(NormalizationError):
        from_dense(DenseState(2, np.array([1, 1, 0, 0], dtype=complex)))


def test_dense_conversion_respects_capacity(monkeypatch):
    from app import config

    monkeypatch.setattr(config, "DENSE_LIMIT", 4)
    with pytest.raises(CapacityError):
        to_dense(init_zero(5))
    amps = np.zeros(32, dtype=complex)
    amps[0] = 1
    with pytest.raises(CapacityError):
        from_dense(DenseState(5, amps))


def test_structure_checks():
    site = np.zeros((1, 2, 1), dtype=complex)
    site[0, 0, 0] = 1
    with pytest.raises(DomainError):
        MpsState([], [])
    with pytest.raises(ShapeError):
        MpsState([site, site], [])
    with pytest.raises(ShapeError):
        MpsState([site, site], [np.ones(2)])
    with pytest.raises(ShapeError):
        MpsState([site, site], [np.zeros(1)])
    with pytest.raises(ShapeError):
        MpsState([np.zeros((1, 3, 1)), site], [np.ones(1)])


def test_storage_and_bound():
    state = from_dense(ghz_dense(5))
    # sites: 1x2x2, 3 x (2x2x2), 2x2x1; bonds: 4 x 2
    assert storage_count(state) == 4 + 3 * 8 + 4 + 8
    assert storage_count(state) <= description_size_bound(state)
    assert description_size_bound(state) == (2 * 4 + 2) * 5


def test_copy_is_independent(rng):
    state = from_dense(DenseState.random(3, rng))
    clone = state.copy()
    clone.gammas[0][0, 0, 0] = 42
    clone.lambdas[0][0] = 42
    assert state.gammas[0][0, 0, 0] != 42
    assert state.lambdas[0][0] != 42


def test_validate_canonical_flags_broken_site(rng):
    state = from_dense(DenseState.random(4, rng))
    state.gammas[2] = state.gammas[2] * 1.5
    report = validate_canonical(state)
    assert not report.passed
    assert 2 in report.failed_sites
    assert report.tolerance == state.policy.canonical_tol


def test_global_norm_scales_quadratically():
    state = init_zero(6)
    assert global_norm(state) == 1.0
    assert validate_canonical(state).max_deviation == 0.0
    state.lambdas[0] = state.lambdas[0] * 2
    assert global_norm(state) == pytest.approx(4.0)
