import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entrobust.channels import (
    DepolarizationLevel,
    PauliString,
    depolarize,
    measured_ghz,
    pauli_compose,
    pauli_decompose,
    pauli_weight_scale,
    probabilistic_measure,
    random_measurement_average,
    sample_sphere,
)
from entrobust.errors import BadProbability, BadSubset, OutOfRange
from entrobust.linalg import eigvalsh
from entrobust.states import density_of, ghz, maximally_mixed, random_density, basis_state

from oracles import kraus_depolarize

SEEDS = list(range(10))
levels = st.floats(0.0, 1.0, allow_nan=False)


def dm(n, seed):
    return random_density(n, np.random.default_rng(seed))


def assert_valid(rho):
    m = rho.matrix
    assert np.max(np.abs(m - m.conj().T)) <= 1e-12
    assert abs(np.trace(m) - 1) <= 1e-12
    assert eigvalsh(m)[0] >= -1e-10


def test_level_validation():
    assert DepolarizationLevel(0.25).s == 0.75
    with pytest.raises(OutOfRange):
        DepolarizationLevel(1.5)


def test_full_depolarization_is_maximally_mixed():
    out = depolarize(dm(3, 0), None, 1.0)
    np.testing.assert_allclose(out.matrix, np.eye(8) / 8, atol=1e-15)


def test_zero_depolarization_is_identity():
    rho = dm(3, 1)
    np.testing.assert_array_equal(depolarize(rho, None, 0.0).matrix, rho.matrix)


def test_depolarized_ghz4_entries():
    out = depolarize(density_of(ghz(4)), None, 0.4).matrix
    assert out[0, 15] == pytest.approx(0.6**4 / 2, abs=1e-15)
    assert out[0b0011, 0b0011] == pytest.approx((0.8 * 0.2) ** 2, abs=1e-15)
    assert out[0, 15] == pytest.approx(0.0648, abs=1e-15)


@pytest.mark.parametrize("seed", SEEDS[:4])
@pytest.mark.parametrize("targets", [None, [1], [0, 2]])
def test_depolarize_matches_kraus_oracle(seed, targets):
    rho = dm(3, seed)
    got = depolarize(rho, targets, 0.37).matrix
    np.testing.assert_allclose(got, kraus_depolarize(rho.matrix, 3, 0.37, targets), atol=1e-14)


def test_bad_targets():
    with pytest.raises(BadSubset):
        depolarize(dm(2, 0), [2], 0.1)


def test_pauli_string():
    p = PauliString("XIZ")
    assert (p.n_qubits, p.weight) == (3, 2)
    with pytest.raises(ValueError):
        PauliString("XA")


def test_pauli_decomposition_against_traces():
    rho = dm(2, 3)
    coeffs = pauli_decompose(rho)
    for a, la in enumerate("IXYZ"):
        for b, lb in enumerate("IXYZ"):
            expected = np.trace(rho.matrix @ PauliString(la + lb).matrix()) / 4
            assert coeffs[a, b] == pytest.approx(expected, abs=1e-15)
    np.testing.assert_allclose(pauli_compose(coeffs), rho.matrix, atol=1e-15)


def test_pauli_scale_endpoints():
    rho = dm(3, 2)
    np.testing.assert_allclose(pauli_weight_scale(rho, 1.0).matrix, rho.matrix, atol=1e-12)
    np.testing.assert_allclose(pauli_weight_scale(rho, 0.0).matrix, np.eye(8) / 8, atol=1e-15)


@pytest.mark.parametrize("seed", SEEDS)
def test_pauli_scale_equals_partial_trace_route(seed):
    rho = dm(3, seed)
    s = 0.05 + 0.09 * seed
    a = pauli_weight_scale(rho, s).matrix
    b = depolarize(rho, None, 1 - s).matrix
    assert np.max(np.abs(a - b)) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(d=levels, seed=st.integers(0, 1000))
def test_outputs_are_valid_states(d, seed):
    rho = dm(3, seed)
    assert_valid(depolarize(rho, None, d))
    assert_valid(depolarize(rho, [seed % 3], d))
    assert_valid(pauli_weight_scale(rho, 1 - d))
    assert_valid(probabilistic_measure(rho, d))


@settings(max_examples=40, deadline=None)
@given(d1=levels, d2=levels, seed=st.integers(0, 1000))
def test_scaling_factors_multiply(d1, d2, seed):
    rho = dm(3, seed)
    q = [seed % 3]
    twice = depolarize(depolarize(rho, q, d1), q, d2).matrix
    once = depolarize(rho, q, 1 - (1 - d1) * (1 - d2)).matrix
    assert np.max(np.abs(twice - once)) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(d1=levels, d2=levels, seed=st.integers(0, 1000))
def test_distinct_qubits_commute(d1, d2, seed):
    rho = dm(3, seed)
    ab = depolarize(depolarize(rho, [0], d1), [2], d2).matrix
    ba = depolarize(depolarize(rho, [2], d2), [0], d1).matrix
    assert np.max(np.abs(ab - ba)) <= 1e-12


def test_sphere_samples_unit_and_deterministic():
    a = sample_sphere(1000, np.random.default_rng(5))
    b = sample_sphere(1000, np.random.default_rng(5))
    np.testing.assert_array_equal(a, b)
    np.testing.assert_allclose(np.linalg.norm(a, axis=1), 1.0)


def test_random_measurement_shrinks_bloch_vector_by_third():
    n_samples = 10**5
    out = random_measurement_average(density_of(basis_state("0")), 0, n_samples, seed=11).matrix
    bloch = [2 * out[0, 1].real, -2 * out[0, 1].imag, (out[0, 0] - out[1, 1]).real]
    np.testing.assert_allclose(bloch, [0, 0, 1 / 3], atol=3 / math.sqrt(n_samples))


def test_measurement_along_z_keeps_diagonal():
    rho = dm(2, 4)
    out = random_measurement_average(rho, 1, 1, directions=[[0.0, 0.0, 1.0]]).matrix
    np.testing.assert_allclose(np.diag(out), np.diag(rho.matrix), atol=1e-15)
    assert abs(out[0, 1]) < 1e-15  # qubit-1 coherence removed


def test_random_measurement_approaches_two_thirds_channel():
    n_samples = 10**5
    rho = dm(3, 8)
    out = random_measurement_average(rho, 1, n_samples, seed=3).matrix
    ref = depolarize(rho, [1], 2 / 3).matrix
    assert np.max(np.abs(out - ref)) < 5 / math.sqrt(n_samples)


def test_random_measurement_is_seed_deterministic():
    rho = dm(2, 1)
    a = random_measurement_average(rho, 0, 500, seed=9).matrix
    b = random_measurement_average(rho, 0, 500, seed=9).matrix
    np.testing.assert_array_equal(a, b)


def test_random_measurement_matches_explicit_projectors():
    rho = dm(2, 2)
    dirs = sample_sphere(25, np.random.default_rng(0))
    acc = np.zeros((4, 4), dtype=complex)
    for nx, ny, nz in dirs:
        ns = np.array([[nz, nx - 1j * ny], [nx + 1j * ny, -nz]])
        for sign in (1, -1):
            p = np.kron(np.eye(2), (np.eye(2) + sign * ns) / 2)
            acc += p @ rho.matrix @ p
    got = random_measurement_average(rho, 1, 25, directions=dirs).matrix
    np.testing.assert_allclose(got, acc / 25, atol=1e-14)


def test_random_measurement_bad_target():
    with pytest.raises(BadSubset):
        random_measurement_average(dm(2, 0), 2, 10)


def test_probabilistic_measure_endpoints():
    rho = density_of(ghz(3))
    np.testing.assert_array_equal(probabilistic_measure(rho, 0.0).matrix, rho.matrix)
    expected = np.zeros((8, 8))
    expected[0, 0] = expected[7, 7] = 0.5
    np.testing.assert_allclose(probabilistic_measure(rho, 1.0).matrix, expected, atol=1e-15)
    with pytest.raises(BadProbability):
        probabilistic_measure(rho, 1.2)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("p", [0.1, 0.5, 0.9])
def test_measured_ghz_closed_form(n, p):
    got = probabilistic_measure(density_of(ghz(n)), p).matrix
    np.testing.assert_allclose(got, measured_ghz(n, p).matrix, atol=1e-12)


def test_measured_ghz3_coherent_weight():
    # (1-p)^n |G><G| contributes (1-p)^n / 2 to the corner entry
    out = probabilistic_measure(density_of(ghz(3)), 0.5).matrix
    assert 2 * out[0, 7].real == pytest.approx(0.125, abs=1e-15)


def test_maximally_mixed_fixed_point():
    mm = maximally_mixed(2)
    np.testing.assert_allclose(depolarize(mm, None, 0.3).matrix, mm.matrix, atol=1e-16)
