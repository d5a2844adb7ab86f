from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.linalg import expm

from isoscreen import linalg
from isoscreen.errors import ArgumentError, ConvergenceError
from isoscreen.linalg import (
    canonical_multiset,
    max_deviation,
    multiset_equal,
    ordered_by,
    scale_of,
    sym_eig,
    sym_matrix_function,
    unitary_evolution,
)

from .graphs import cycle_plus_isolated, rng, star

METHODS = ("lapack", "jacobi")

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])


def random_symmetric(n: int, gen: np.random.Generator) -> np.ndarray:
    m = gen.normal(size=(n, n))
    return (m + m.T) / 2


@pytest.mark.parametrize("method", METHODS)
def test_two_by_two_eigensystem(method):
    es = sym_eig([[2.0, 1.0], [1.0, 2.0]], method)
    assert es.values == pytest.approx([1.0, 3.0], abs=1e-12)
    assert abs(es.vectors[0, 1]) == pytest.approx(1 / math.sqrt(2), abs=1e-12)


@pytest.mark.parametrize("method", METHODS)
def test_cospectral_pair_has_equal_spectra(method):
    """The star and the 4-cycle plus an isolated vertex share {-2, 0, 0, 0, 2}."""
    expected = [-2.0, 0.0, 0.0, 0.0, 2.0]
    assert sym_eig(star().adjacency, method).values == pytest.approx(expected, abs=1e-10)
    assert sym_eig(cycle_plus_isolated().adjacency, method).values == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("method", METHODS)
def test_eigenvectors_are_orthonormal_and_reconstruct(method):
    gen = rng(20)
    for n in (1, 2, 5, 12):
        m = random_symmetric(n, gen)
        es = sym_eig(m, method)
        assert np.allclose(es.vectors.T @ es.vectors, np.eye(n), atol=1e-10)
        assert np.allclose(es.reconstruct(), m, atol=1e-10)
        assert np.all(np.diff(es.values) >= 0)


def test_eigenvalues_sum_to_trace():
    gen = rng(21)
    for _ in range(500):
        n = int(gen.integers(1, 9))
        m = random_symmetric(n, gen) * float(gen.uniform(0.1, 100.0))
        values = sym_eig(m).values
        assert math.isclose(values.sum(), np.trace(m), abs_tol=1e-9 * n * scale_of(m))


def test_jacobi_agrees_with_lapack():
    gen = rng(22)
    for _ in range(50):
        m = random_symmetric(12, gen)
        lapack = sym_eig(m, "lapack").values
        jacobi = sym_eig(m, "jacobi").values
        assert np.allclose(lapack, jacobi, atol=1e-10 * scale_of(m))


@pytest.mark.parametrize("method", METHODS)
def test_eigensolver_is_deterministic(method):
    m = random_symmetric(10, rng(23))
    first, second = sym_eig(m, method), sym_eig(m.copy(), method)
    assert first.values.tobytes() == second.values.tobytes()
    assert first.vectors.tobytes() == second.vectors.tobytes()


@pytest.mark.parametrize(
    "matrix, message",
    [
        ([[1.0, math.nan], [math.nan, 1.0]], "non-finite"),
        ([[1.0, math.inf], [0.0, 1.0]], "non-finite"),
        ([[1.0, 2.0, 3.0]], "square"),
    ],
)
def test_invalid_matrices_are_rejected(matrix, message):
    with pytest.raises(ArgumentError, match=message):
        sym_eig(matrix)


def test_unknown_eigensolver():
    with pytest.raises(ArgumentError, match="unknown eigensolver"):
        sym_eig(np.eye(2), "qr")  # type: ignore[arg-type]


def test_jacobi_reports_non_convergence(monkeypatch):
    monkeypatch.setattr(linalg, "JACOBI_MAX_SWEEPS", 0)
    with pytest.raises(ConvergenceError, match="did not converge in 0 sweeps"):
        sym_eig(PAULI_X, "jacobi")


def test_jacobi_accepts_diagonal_input_without_sweeps(monkeypatch):
    monkeypatch.setattr(linalg, "JACOBI_MAX_SWEEPS", 0)
    assert sym_eig(np.diag([3.0, 1.0]), "jacobi").values == pytest.approx([1.0, 3.0])


@pytest.mark.parametrize("method", METHODS)
def test_exponential_of_pauli_x(method):
    """exp(2X) = cosh(2)·I + sinh(2)·X."""
    result = sym_matrix_function(PAULI_X, lambda x: math.exp(2 * x), method)
    expected = math.cosh(2) * np.eye(2) + math.sinh(2) * PAULI_X
    assert np.allclose(result, expected, rtol=1e-12)


@pytest.mark.parametrize("method", METHODS)
def test_matrix_exponential_matches_scipy(method):
    gen = rng(24)
    for _ in range(10):
        m = random_symmetric(20, gen)
        m *= 5.0 / np.max(np.abs(np.linalg.eigvalsh(m)))
        ours = sym_matrix_function(m, math.exp, method)
        assert np.allclose(ours, expm(m), rtol=1e-9, atol=1e-9 * np.max(np.abs(ours)))


def test_matrix_function_is_symmetric():
    m = random_symmetric(8, rng(25))
    result = sym_matrix_function(m, math.sin)
    assert np.array_equal(result, result.T)


@pytest.mark.parametrize("method", METHODS)
def test_unitary_evolution_trivial_cases(method):
    assert np.allclose(unitary_evolution(PAULI_X, 0.0, method), np.eye(2))
    assert np.allclose(unitary_evolution(np.zeros((3, 3)), 4.2, method), np.eye(3))


def test_edge_transfer_at_quarter_period():
    """e^{-iXπ/2} = -iX moves the amplitude entirely across the edge."""
    u = unitary_evolution(PAULI_X, math.pi / 2)
    assert np.allclose(u, -1j * PAULI_X, atol=1e-12)


def test_unitary_evolution_matches_taylor_series():
    m = random_symmetric(6, rng(26)) * 0.5
    t = 0.7
    term = np.eye(6, dtype=np.complex128)
    series = term.copy()
    for k in range(1, 40):
        term = term @ (-1j * m * t) / k
        series += term
    assert np.allclose(unitary_evolution(m, t), series, atol=1e-12)


@pytest.mark.parametrize("method", METHODS)
def test_unitary_evolution_is_unitary_and_composes(method):
    m = random_symmetric(7, rng(27))
    u1 = unitary_evolution(m, 0.4, method)
    u2 = unitary_evolution(m, 1.1, method)
    assert np.allclose(u1 @ u1.conj().T, np.eye(7), atol=1e-10)
    assert np.allclose(u1 @ u2, unitary_evolution(m, 1.5, method), atol=1e-10)


def test_unitary_evolution_rejects_infinite_time():
    with pytest.raises(ArgumentError, match="finite"):
        unitary_evolution(PAULI_X, math.inf)


def test_scale_of():
    assert scale_of([]) == 1.0
    assert scale_of([0.25, -0.5]) == 1.0
    assert scale_of([3.0, -40.0]) == 40.0


def test_ordered_by_breaks_near_ties_with_secondary_key():
    """1 and 1+1e-12 are one primary group, so the secondary key orders them."""
    order = ordered_by([1.0, 1.0 + 1e-12, 0.0], [5.0, 3.0, 9.0])
    assert list(order) == [2, 1, 0]


def test_ordered_by_distinct_primaries_ignore_secondary():
    order = ordered_by([3.0, 1.0, 2.0], [0.0, 9.0, 5.0])
    assert list(order) == [1, 2, 0]


def test_ordered_by_length_mismatch():
    with pytest.raises(ArgumentError, match="differ in length"):
        ordered_by([1.0, 2.0], [1.0])


def test_canonical_multiset_groups():
    ms = canonical_multiset([3.0, 1.0, 2.0, 1.0 + 1e-12])
    assert len(ms) == 4
    assert ms.multiplicities == [2, 1, 1]
    assert [value for value, _ in ms.groups] == pytest.approx([1.0, 2.0, 3.0])
    assert ms.summary()[0] == {"value": pytest.approx(1.0), "count": 2}


def test_canonical_multiset_is_order_independent():
    values = rng(28).normal(size=50)
    a = canonical_multiset(values)
    b = canonical_multiset(values[::-1])
    assert np.array_equal(a.values, b.values)
    assert multiset_equal(a, b, tol=0.0)


def test_canonical_multiset_validation():
    with pytest.raises(ArgumentError, match="quantum"):
        canonical_multiset([1.0], quantum=0.0)
    with pytest.raises(ArgumentError, match="finite"):
        canonical_multiset([1.0, math.nan])


def test_multiset_equality_is_relative():
    big = canonical_multiset([1e6, 2e6])
    assert multiset_equal(big, canonical_multiset([1e6 + 1e-3, 2e6]))
    small = canonical_multiset([0.0])
    assert not multiset_equal(small, canonical_multiset([1e-7]))


def test_multisets_of_different_lengths():
    a, b = canonical_multiset([1.0, 2.0]), canonical_multiset([1.0])
    assert max_deviation(a, b) == math.inf
    assert not multiset_equal(a, b)
    assert max_deviation(canonical_multiset([]), canonical_multiset([])) == 0.0


def test_multiset_equality_requires_matching_quanta():
    with pytest.raises(ArgumentError, match="different quanta"):
        multiset_equal(canonical_multiset([1.0]), canonical_multiset([1.0], quantum=1e-6))
