import math
from math import comb

import numpy as np
import pytest

from entrobust.errors import BadSubset, NotNormalized, SizeOutOfRange, UnknownName
from entrobust.ketparse import parse_ket
from entrobust.states import (
    NAMED_STATES,
    QubitSubset,
    StateVector,
    basis_state,
    density_of,
    dicke,
    ghz,
    named_state,
)

P0 = np.diag([1.0, 0.0])
P1 = np.diag([0.0, 1.0])
SP = np.array([[0.0, 1.0], [0.0, 0.0]])


def kron_power(a, n):
    out = np.ones((1, 1))
    for _ in range(n):
        out = np.kron(out, a)
    return out


def test_ghz2_amplitudes():
    np.testing.assert_allclose(ghz(2).amplitudes, np.array([1, 0, 0, 1]) / math.sqrt(2))


def test_ghz3_matches_ket_expression():
    np.testing.assert_allclose(parse_ket("(|000>+|111>)/sqrt(2)").amplitudes, ghz(3).amplitudes, atol=1e-15)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_ghz_density_tensor_form(n):
    expected = 0.5 * (kron_power(P0, n) + kron_power(P1, n) + kron_power(SP, n) + kron_power(SP.T, n))
    np.testing.assert_allclose(density_of(ghz(n)).matrix, expected, atol=1e-15)


@pytest.mark.parametrize("n", [1, 13])
def test_ghz_size_limits(n):
    with pytest.raises(SizeOutOfRange):
        ghz(n)


def test_named_w3_and_x4_are_dicke():
    w3 = np.zeros(8)
    w3[[1, 2, 4]] = 1 / math.sqrt(3)
    np.testing.assert_allclose(dicke(3, 1).amplitudes, w3)
    x4 = np.zeros(16)
    x4[[3, 5, 6, 9, 10, 12]] = 1 / math.sqrt(6)
    np.testing.assert_allclose(dicke(4, 2).amplitudes, x4)
    np.testing.assert_allclose(named_state("X4").amplitudes, x4)
    np.testing.assert_allclose(named_state("W4").amplitudes, dicke(4, 1).amplitudes)


def test_dicke_zero_excitations():
    np.testing.assert_array_equal(dicke(5, 0).amplitudes, basis_state("00000").amplitudes)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 7) for k in range(n + 1)])
def test_dicke_support_and_norm(n, k):
    amps = dicke(n, k).amplitudes
    assert np.count_nonzero(amps) == comb(n, k)
    assert np.linalg.norm(amps) == pytest.approx(1, abs=1e-12)


def test_dicke_rejects_bad_k():
    with pytest.raises(SizeOutOfRange):
        dicke(3, 4)


def test_b4_sign():
    b4 = named_state("B4").amplitudes
    assert b4[15] == -0.5
    np.testing.assert_array_equal(np.flatnonzero(b4), [0, 3, 12, 15])


def test_s4_is_two_bell_pairs():
    bell = np.array([1, 0, 0, 1]) / math.sqrt(2)
    pairs = np.kron(bell, bell).reshape(2, 2, 2, 2)  # axes q0 q2 q1 q3
    np.testing.assert_allclose(named_state("S4").amplitudes, pairs.transpose(0, 2, 1, 3).reshape(-1))


def test_singlet():
    np.testing.assert_allclose(named_state("singlet").amplitudes, np.array([0, 1, -1, 0]) / math.sqrt(2))


def test_unknown_name():
    with pytest.raises(UnknownName):
        named_state("Z9")


@pytest.mark.parametrize("name", NAMED_STATES)
def test_named_states_are_pure_and_psd(name):
    psi = named_state(name)
    assert np.linalg.norm(psi.amplitudes) == pytest.approx(1, abs=1e-12)
    rho = density_of(psi)
    assert np.trace(rho.matrix @ rho.matrix).real == pytest.approx(1, abs=1e-12)
    assert rho.min_eigenvalue() >= -1e-10


def test_density_of_basis_and_ghz():
    np.testing.assert_array_equal(density_of(basis_state("0")).matrix, P0)
    m = density_of(ghz(2)).matrix
    assert np.count_nonzero(m) == 4
    np.testing.assert_allclose(m[np.nonzero(m)], 0.5)


def test_state_vector_requires_normalization():
    with pytest.raises(NotNormalized):
        StateVector(1, [1.0, 1.0])


def test_qubit_subset_validation():
    assert QubitSubset(4, (2, 0)).members == (0, 2)
    assert QubitSubset(4, (0, 2)).complement().members == (1, 3)
    assert QubitSubset(4, (1,)).label() == "1-3"
    with pytest.raises(BadSubset):
        QubitSubset(3, (3,))
    with pytest.raises(BadSubset):
        QubitSubset(3, (1, 1))
    with pytest.raises(BadSubset):
        QubitSubset.all(3).require_cut()
