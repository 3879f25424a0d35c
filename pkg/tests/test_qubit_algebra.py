import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hazyqd.qubit_algebra import (
    DomainError,
    EigenvalueError,
    Spectrum,
    binary_entropy,
    eig_2x2_hermitian,
    hermitian_eigenvalues,
    invert_binary_entropy,
    log_binomial,
    log_binomial_row,
    spectrum_entropy,
)

SOLVERS = ("householder", "jacobi", "lapack")


def random_hermitian(rng, d):
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return x + x.conj().T


@pytest.mark.parametrize("x, expected", [(0.5, 1.0), (0.0, 0.0), (1.0, 0.0), (0.9, 0.468996)])
def test_binary_entropy_values(x, expected):
    assert binary_entropy(x) == pytest.approx(expected, abs=1e-6)


@pytest.mark.parametrize("x", [-1e-6, 1.0 + 1e-6, float("nan")])
def test_binary_entropy_domain(x):
    with pytest.raises(DomainError):
        binary_entropy(x)


def test_binary_entropy_tolerates_roundoff_outside_unit_interval():
    assert binary_entropy(-1e-13) == 0.0
    assert binary_entropy(1 + 1e-13) == 0.0


@pytest.mark.parametrize("h, expected", [(1.0, 0.5), (0.0, 1.0), (0.468996, 0.9)])
def test_invert_binary_entropy_values(h, expected):
    assert invert_binary_entropy(h) == pytest.approx(expected, abs=1e-6)


@pytest.mark.parametrize("h", [-0.01, 1.01])
def test_invert_binary_entropy_domain(h):
    with pytest.raises(DomainError):
        invert_binary_entropy(h)


@given(st.floats(0.5, 1.0))
def test_entropy_inverse_round_trip(p):
    assert invert_binary_entropy(binary_entropy(p)) == pytest.approx(p, abs=1e-7)


@given(st.floats(0.0, 1.0))
def test_inverse_entropy_round_trip(h):
    assert binary_entropy(invert_binary_entropy(h)) == pytest.approx(h, abs=1e-12)


def test_eig_2x2_examples():
    assert eig_2x2_hermitian([[0.5, 0.4], [0.4, 0.5]]) == pytest.approx((0.9, 0.1), abs=1e-15)
    assert eig_2x2_hermitian(np.eye(2) / 2) == pytest.approx((0.5, 0.5))
    psi = np.array([0.6, 0.8j])
    hi, lo = eig_2x2_hermitian(np.outer(psi, psi.conj()))
    assert hi == pytest.approx(1.0) and abs(lo) < 1e-16


def test_eig_2x2_rejects_non_hermitian():
    with pytest.raises(EigenvalueError):
        eig_2x2_hermitian([[0.5, 0.4], [0.1, 0.5]])


@given(st.floats(0, 1), st.floats(0, 1), st.floats(-1, 1), st.floats(-1, 1))
def test_eig_2x2_matches_lapack(a, d, re, im):
    m = np.array([[a, re + 1j * im], [re - 1j * im, d]])
    hi, lo = eig_2x2_hermitian(m)
    ref = np.linalg.eigvalsh(m)
    assert (lo, hi) == pytest.approx(tuple(ref), abs=1e-13)


@pytest.mark.parametrize("method", SOLVERS)
def test_hermitian_eigenvalues_small(method):
    assert list(hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0]), method)) == pytest.approx([1, 2, 3])
    assert list(hermitian_eigenvalues([[0, 1], [1, 0]], method)) == pytest.approx([-1, 1])


@pytest.mark.parametrize("method", SOLVERS)
@pytest.mark.parametrize("d", [1, 2, 5, 10, 50, 402])
def test_hermitian_eigenvalues_trace_and_frobenius(method, d):
    if method == "jacobi" and d > 50:
        pytest.skip("cyclic Jacobi is the cross-check solver, kept to moderate sizes")
    m = random_hermitian(np.random.default_rng(d), d)
    vals = hermitian_eigenvalues(m, method)
    assert np.all(np.diff(vals) >= 0)
    scale = np.linalg.norm(m)
    assert abs(vals.sum() - np.trace(m).real) <= 1e-10 * scale
    assert abs(np.sum(vals**2) - scale**2) <= 1e-10 * scale**2
    assert np.max(np.abs(vals - np.linalg.eigvalsh(m))) <= 1e-11 * scale


def test_hermitian_eigenvalues_graded_matrix():
    # entries spanning many orders of magnitude, as in high-n Schur blocks
    d = 120
    g = 0.3 ** np.arange(d)
    m = np.outer(g, g) * np.exp(1j * np.subtract.outer(np.arange(d), np.arange(d)))
    m += np.diag(g**2)
    vals = hermitian_eigenvalues(m)
    assert vals.sum() == pytest.approx(np.trace(m).real, abs=1e-14)
    assert vals.max() == pytest.approx(np.linalg.eigvalsh(m).max(), rel=1e-12)


def test_hermitian_eigenvalues_rejects_non_hermitian():
    with pytest.raises(EigenvalueError):
        hermitian_eigenvalues(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        hermitian_eigenvalues(np.ones((2, 3)))
    with pytest.raises(ValueError):
        hermitian_eigenvalues(np.eye(2), "qr")


def test_log_binomial_values():
    assert log_binomial(4, 2) == pytest.approx(math.log(6), abs=1e-12)
    assert log_binomial(17, 0) == 0.0
    assert log_binomial(200, 100) == pytest.approx(135.75, abs=0.01)
    assert log_binomial(200, 100) == pytest.approx(math.log(math.comb(200, 100)), rel=1e-15)
    with pytest.raises(DomainError):
        log_binomial(3, 4)


@given(st.integers(0, 5000), st.data())
@settings(max_examples=60)
def test_log_binomial_symmetry_and_exactness(n, data):
    k = data.draw(st.integers(0, n))
    assert log_binomial(n, k) == pytest.approx(log_binomial(n, n - k), rel=1e-13, abs=1e-13)
    exact = math.log(math.comb(n, k))
    assert log_binomial(n, k) == pytest.approx(exact, rel=1e-12, abs=1e-12)


def test_log_binomial_row_is_cached_and_read_only():
    row = log_binomial_row(30)
    assert row is log_binomial_row(30)
    assert not row.flags.writeable
    assert row[7] == pytest.approx(math.log(math.comb(30, 7)))


def test_spectrum_entropy_examples():
    assert spectrum_entropy(Spectrum.from_values([0.5], log_mult=math.log(2))) == pytest.approx(1.0)
    assert spectrum_entropy(Spectrum.from_values([0.25], log_mult=math.log(4))) == pytest.approx(2.0)
    eq7 = Spectrum.from_values([0.41, 0.09, 0.09, 0.41])
    expected = -2 * (0.41 * math.log2(0.41) + 0.09 * math.log2(0.09))
    assert spectrum_entropy(eq7) == pytest.approx(expected, abs=1e-14)
    assert spectrum_entropy(eq7) == pytest.approx(1.68008, abs=1e-5)


def test_spectrum_entropy_of_huge_uniform_spectrum():
    # 2**200 copies of 2**-200, far beyond direct representation
    s = Spectrum.from_values([1.0], log_scale=-200 * math.log(2), log_mult=200 * math.log(2))
    assert spectrum_entropy(s) == pytest.approx(200.0, rel=1e-14)
    assert s.log_dimension() == pytest.approx(200 * math.log(2))


def test_spectrum_zero_eigenvalues_contribute_nothing():
    s = Spectrum.from_values([0.5, 0.5, 0.0, -1e-14])
    assert spectrum_entropy(s) == pytest.approx(1.0)
    assert len(s) == 4


def test_spectrum_errors():
    with pytest.raises(EigenvalueError):
        Spectrum.from_values([1.1, -0.1])
    with pytest.raises(EigenvalueError):
        spectrum_entropy(Spectrum.from_values([0.5, 0.4]))
    assert spectrum_entropy(Spectrum.from_values([0.5, 0.4]), check_weight=False) > 0


def test_spectrum_concat_and_sorting():
    a = Spectrum.from_values([0.1, 0.3])
    b = Spectrum.from_values([0.2], log_mult=math.log(3))
    s = Spectrum.concat([a, b])
    assert s.total_weight() == pytest.approx(1.0)
    assert list(s.sorted_values()) == pytest.approx([0.1, 0.2, 0.2, 0.2, 0.3])


def test_entropy_round_trip_on_uniform_grid():
    hs = np.random.default_rng(0).uniform(0.0, 1.0, 1000)
    worst = max(abs(binary_entropy(invert_binary_entropy(h)) - h) for h in hs)
    assert worst <= 1e-11


@pytest.mark.parametrize("d", [2, 5, 50, 402])
def test_trace_and_frobenius_on_100_matrices(d):
    rng = np.random.default_rng(1000 + d)
    for _ in range(100):
        m = random_hermitian(rng, d)
        vals = hermitian_eigenvalues(m)
        tr, fro2 = np.trace(m).real, np.linalg.norm(m) ** 2
        assert abs(vals.sum() - tr) <= 1e-9 * max(abs(tr), math.sqrt(fro2))
        assert abs(np.sum(vals**2) - fro2) <= 1e-9 * fro2


@pytest.mark.parametrize("n", [5, 60, 300, 1999, 2500])
def test_log_binomial_pascal_recurrence(n):
    for k in range(1, n, max(1, n // 40)):
        a, b = log_binomial(n - 1, k - 1), log_binomial(n - 1, k)
        top = max(a, b)
        rhs = top + math.log(math.exp(a - top) + math.exp(b - top))
        assert abs(log_binomial(n, k) - rhs) <= 1e-9


@pytest.mark.parametrize("method", SOLVERS)
@pytest.mark.parametrize("tiny", [1e-150, 1e-190, 1e-300])
def test_hermitian_eigenvalues_with_underflowing_couplings(method, tiny):
    # two decoupled blocks joined by coherences far below eps, as in
    # joint sector matrices once the rest of the environment has decohered
    rng = np.random.default_rng(3)
    d = 9
    m = np.zeros((2 * d, 2 * d), dtype=complex)
    m[:d, :d] = random_hermitian(rng, d)
    m[d:, d:] = random_hermitian(rng, d)
    c = tiny * (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    m[:d, d:] = c
    m[d:, :d] = c.conj().T
    vals = hermitian_eigenvalues(m, method)
    ref = np.sort(np.concatenate([np.linalg.eigvalsh(m[:d, :d]), np.linalg.eigvalsh(m[d:, d:])]))
    assert np.all(np.isfinite(vals))
    assert np.max(np.abs(vals - ref)) <= 1e-12 * np.abs(ref).max()
