import numpy as np
import pytest

from opa_helper.core import roots
from opa_helper.core.errors import ConvergenceError, DomainError
from opa_helper.core.jacobi import jacobi_truncation
from opa_helper.core.series import from_coeffs
from opa_helper.core.weights import bergman, dirichlet


def _sorted(values):
    return sorted(values, key=lambda z: (round(z.real, 9), round(z.imag, 9)))


def test_quadratic_roots():
    found = roots.poly_roots(np.array([2.0, -3.0, 1.0]))
    assert _sorted(found.roots) == pytest.approx([1, 2], abs=1e-12)
    assert found.degree_deflated == 2
    assert found.max_residual <= roots.DEFAULT_ROOT_TOL


def test_linear_root_and_series_input():
    found = roots.poly_roots(from_coeffs([2 / 3, 1 / 3]))
    assert found.roots == pytest.approx([-2], abs=1e-14)


def test_roots_at_origin_and_trailing_zeros():
    found = roots.poly_roots(np.array([0.0, 0.0, -1.0, 1.0, 0.0]))
    assert len(found) == 3
    assert found.degree_deflated == 1
    assert _sorted(found.roots) == pytest.approx([0, 0, 1], abs=1e-14)


def test_constant_and_zero_polynomial():
    found = roots.poly_roots(np.array([3.0, 0.0]))
    assert len(found) == 0
    assert found.degree_deflated == 0
    with pytest.raises(DomainError):
        roots.poly_roots(np.zeros(4))


def test_roots_of_unity():
    n = 12
    p = np.zeros(n + 1)
    p[0], p[-1] = -1.0, 1.0
    found = roots.poly_roots(p)
    assert np.allclose(np.abs(found.roots), 1.0, atol=1e-12)
    assert np.allclose(found.roots ** n, 1.0, atol=1e-10)


def test_random_polynomial_residual(rng):
    p = rng.standard_normal(31) + 1j * rng.standard_normal(31)
    found = roots.poly_roots(p)
    assert len(found) == 30
    assert found.max_residual <= roots.DEFAULT_ROOT_TOL
    assert np.prod(found.roots) == pytest.approx(p[0] / p[-1], rel=1e-8)


def test_initial_guesses_radius():
    guesses = roots.initial_guesses(np.array([8.0, 0.0, 0.0, 1.0]))
    assert np.allclose(np.abs(guesses), 2.0)
    assert len(guesses) == 3


@pytest.mark.parametrize('omega', [bergman(0), dirichlet(-2)])
@pytest.mark.parametrize('n', [6, 7])
def test_recurrence_roots_are_truncation_eigenvalues(omega, n):
    found = roots.recurrence_roots(omega, n)
    assert np.max(np.abs(found.roots.imag)) < 1e-9
    real = np.sort(found.roots.real)
    assert real == pytest.approx(-real[::-1], abs=1e-9)
    expected = np.linalg.eigvalsh(jacobi_truncation(omega, n).to_dense())
    assert real == pytest.approx(expected, abs=1e-9)


def test_recurrence_roots_interlace(bergman0):
    inner = np.sort(roots.recurrence_roots(bergman0, 6).roots.real)
    outer = np.sort(roots.recurrence_roots(bergman0, 7).roots.real)
    assert np.all(outer[:-1] < inner) and np.all(inner < outer[1:])


def test_convergence_error_reports_best(monkeypatch):
    monkeypatch.setattr(roots, 'ABERTH_MAX_SWEEPS', 0)
    with pytest.raises(ConvergenceError) as info:
        roots.poly_roots(np.array([2.0, -3.0, 1.0]))
    assert len(info.value.best) == 2
    assert np.max(info.value.residuals) > roots.DEFAULT_ROOT_TOL
