import math

import numpy as np
import pytest

from opa_helper.core import series
from opa_helper.core.closedform import bergman_eigenfunction, bergman_extremal
from opa_helper.core.errors import DomainError, InputError
from opa_helper.core.series import CoeffSeries, from_coeffs
from opa_helper.core.weights import bergman, dirichlet, hardy


def test_coeffs_are_read_only():
    f = from_coeffs([1, 2, 3])
    assert not f.coeffs.flags.writeable
    with pytest.raises(ValueError):
        f.coeffs[0] = 5


def test_negative_tail_bound_rejected():
    with pytest.raises(DomainError):
        CoeffSeries(np.array([1.0]), -1.0)


def test_weighted_inner_examples():
    f = from_coeffs([1, -1])
    assert series.weighted_inner(from_coeffs([1]), from_coeffs([1]), bergman(0)) == 1
    assert series.weighted_inner(f, series.shift(f, 1), hardy()) == -1
    assert series.weighted_inner(f, f, hardy()) == 2
    assert series.weighted_norm_sq(f, bergman(0)) == pytest.approx(1.5)


def test_weighted_inner_is_hermitian(rng, any_space):
    f = from_coeffs(rng.standard_normal(12) + 1j * rng.standard_normal(12))
    g = from_coeffs(rng.standard_normal(9) + 1j * rng.standard_normal(9))
    assert series.weighted_inner(f, g, any_space) == pytest.approx(
        np.conj(series.weighted_inner(g, f, any_space)), abs=1e-12)


def test_shift():
    assert series.shift(from_coeffs([1]), 2).coeffs.tolist() == [0, 0, 1]
    assert series.shift(from_coeffs([1, -1]), 1).coeffs.tolist() == [0, 1, -1]
    f = from_coeffs([3, 4])
    assert series.shift(f, 0) is f
    with pytest.raises(DomainError):
        series.shift(f, -1)


def test_theta_examples(bergman0):
    assert series.theta([1, 0], bergman0) == 0.0
    assert series.theta([1, 2], bergman0) == pytest.approx(6 / 11, abs=1e-15)
    assert series.theta(series.cayley_function(0, 1).coeffs, bergman0) == pytest.approx(6 / 11, abs=1e-15)


def test_theta_zero_vector():
    with pytest.raises(DomainError):
        series.theta(np.zeros(4), hardy())


def test_theta_scale_invariance(rng, any_space):
    for _ in range(20):
        a = rng.standard_normal(8)
        t = rng.uniform(0.1, 10.0) * rng.choice([-1.0, 1.0])
        assert series.theta(t * a, any_space) == pytest.approx(series.theta(a, any_space), abs=1e-12)


def test_theta_prefers_nonnegative_coefficients(rng, any_space):
    for _ in range(20):
        a = rng.standard_normal(10)
        assert series.theta(np.abs(a), any_space) >= series.theta(a, any_space) - 1e-15


def test_theta_is_inner_product_quotient(rng, any_space):
    for _ in range(10):
        f = from_coeffs(rng.standard_normal(7))
        zf = series.shift(f, 1)
        quotient = series.weighted_inner(f, zf, any_space) / series.weighted_inner(zf, zf, any_space)
        assert series.theta(f.coeffs.real, any_space) == pytest.approx(quotient.real, abs=1e-12)


@pytest.mark.parametrize('k', range(5))
@pytest.mark.parametrize('n', range(1, 6))
def test_theta_witness_closed_form(any_space, k, n):
    w = any_space.values(np.arange(k + n + 3))
    expected = 1 + (w[k + 1] - 4 * w[n + k + 1]) / (w[k + 1] + 4 * np.sum(w[k + 2:n + k + 2]))
    assert series.theta(series.cayley_function(k, n).coeffs, any_space) == pytest.approx(expected, abs=1e-12)


def test_cayley_section():
    assert series.cayley_section(1).coeffs.tolist() == [1, 2]
    assert series.cayley_section(3).coeffs.tolist() == [1, 2, 2, 2]
    assert series.shift(series.cayley_section(2), 1).coeffs.tolist() == [0, 1, 2, 2]
    with pytest.raises(DomainError):
        series.cayley_section(0)


def test_t_omega_apply_examples():
    assert series.t_omega_apply(from_coeffs([1]), bergman(0)).coeffs == pytest.approx([0.5])
    assert series.t_omega_apply(from_coeffs([0, 1]), bergman(1)).coeffs == pytest.approx([0, 2 / 3])
    assert series.t_omega_apply(from_coeffs([1]), hardy()).coeffs.tolist() == [0]


def test_functional_residual_examples(bergman0):
    assert series.functional_residual(bergman_extremal(0, 60), 3 / math.sqrt(2), bergman0) < 1e-10
    assert series.functional_residual(from_coeffs([1, 0, 0, 0]), 3.0, hardy()) == pytest.approx(3.0)
    assert series.functional_residual(bergman_eigenfunction(0, 1, 60), 5 / math.sqrt(6), bergman0) < 1e-10


def test_functional_residual_needs_two_terms():
    with pytest.raises(DomainError):
        series.functional_residual(from_coeffs([1, 1]), 3.0, hardy())


def test_binomial_series_examples():
    f = series.binomial_series(1, 3)
    assert f.coeffs.tolist() == [1, -1, 0, 0]
    assert f.is_exact
    g = series.binomial_series(0.5, 2)
    assert g.coeffs.real == pytest.approx([1, -0.5, -0.125], abs=1e-15)
    assert 0 < g.tail_bound < math.inf
    assert series.binomial_series(2, 3).coeffs.tolist() == [1, -2, 1, 0]


def test_binomial_series_negative_power():
    f = series.binomial_series(2, 5, '−')
    assert f.coeffs.real == pytest.approx([1, 2, 3, 4, 5, 6])
    assert not f.is_exact
    assert series.binomial_series(2, 5, '-').coeffs.real == pytest.approx(f.coeffs.real)


def test_binomial_series_tail_shrinks():
    short = series.binomial_series(1.5, 100)
    long = series.binomial_series(1.5, 20_000)
    assert long.tail_bound < short.tail_bound
    assert long.tail_bound < 1e-9


def test_binomial_series_domain():
    with pytest.raises(DomainError):
        series.binomial_series(-1.0, 5)
    with pytest.raises(DomainError):
        series.binomial_series(1.0, 5, sign='*')


def test_multiply_and_evaluate():
    p = series.multiply(series.one_minus_z(), from_coeffs([1, 1]))
    assert p.coeffs.tolist() == [1, 0, -1]
    assert p.is_exact
    assert series.evaluate(p, 0.5) == pytest.approx(0.75)
    assert series.evaluate(series.one_minus_z(), 0.5) == pytest.approx(0.5)


def test_scale_and_truncate():
    f = CoeffSeries(np.array([1.0, 2.0, 3.0]), 0.5)
    g = series.scale(f, -2)
    assert g.coeffs.real.tolist() == [-2, -4, -6]
    assert g.tail_bound == 1.0
    h = series.truncate(f, 1)
    assert h.coeffs.real.tolist() == [1, 2]
    assert h.tail_bound == pytest.approx(math.hypot(3.0, 0.5))


def test_reciprocal_linear():
    f = series.reciprocal_linear(2.0, 3)
    assert f.coeffs.real == pytest.approx([-0.5, -0.25, -0.125, -0.0625])
    assert f.tail_bound == pytest.approx(2.0 ** -5 / math.sqrt(0.75))
    with pytest.raises(DomainError):
        series.reciprocal_linear(0.5j, 3)


def test_json_round_trip_marks_tail():
    exact = from_coeffs([1, -1j])
    assert '"exact"' in exact.to_json()
    back = CoeffSeries.from_json(exact.to_json())
    assert np.array_equal(back.coeffs, exact.coeffs) and back.is_exact
    untrusted = CoeffSeries(np.array([1.0]), math.inf)
    assert not CoeffSeries.from_json(untrusted.to_json()).is_trusted


def test_from_json_errors():
    with pytest.raises(InputError):
        CoeffSeries.from_json('{"re": []}')
    with pytest.raises(InputError):
        CoeffSeries.from_json('{"re": [1, 2], "im": [0]}')
    with pytest.raises(InputError):
        CoeffSeries.from_json('{"re": [1], "tail_bound": "maybe"}')
