import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy import special

from opa_helper.core.errors import DomainError, InputError
from opa_helper.core.weights import (
    CustomWeights,
    bergman,
    bergman_weight,
    custom,
    dirichlet,
    dirichlet_weight,
    hardy,
    load_custom_weights,
    parse_space,
    weight_ratio,
)


def test_dirichlet_weight_values():
    assert dirichlet_weight(0, 7) == 1.0
    assert dirichlet_weight(1, 1) == 2.0
    assert dirichlet_weight(-1, 3) == pytest.approx(0.25, abs=1e-15)


def test_bergman_weight_values():
    assert bergman_weight(0, 4) == pytest.approx(0.2, abs=1e-15)
    assert bergman_weight(1, 2) == pytest.approx(1 / 6, abs=1e-15)
    assert bergman_weight(2, 0) == 1.0


def test_bergman_weight_rejects_beta_le_minus_one():
    with pytest.raises(DomainError):
        bergman_weight(-1, 3)


def test_bergman_non_integer_beta_matches_binomial():
    n = np.arange(40)
    expected = 1.0 / special.binom(0.5 + n + 1, n)
    assert np.allclose(bergman(0.5).values(n), expected, rtol=1e-12, atol=0)


def test_dirichlet_minus_one_equals_bergman_zero():
    n = np.arange(10_001)
    assert np.array_equal(dirichlet(-1).values(n), bergman(0).values(n))
    for k in (0, 64, 9_999, 10_000):
        assert dirichlet_weight(-1, k) == bergman_weight(0, k)


def test_bergman_large_non_integer_beta_stays_finite():
    w = bergman(200.5).values(np.arange(5))
    assert np.all(np.isfinite(w))
    assert w[0] == pytest.approx(1.0, rel=1e-11)
    assert w[1] == pytest.approx(1 / 202.5, rel=1e-11)


def test_weight_ratio_examples():
    assert weight_ratio(hardy(), 5) == 1.0
    assert weight_ratio(dirichlet(-1), 1) == pytest.approx(1.5, abs=1e-15)
    assert weight_ratio(bergman(0), 1) == pytest.approx(1.5, abs=1e-15)


def test_closed_form_ratios_match_quotients(any_space):
    n = np.arange(200)
    direct = any_space.values(n) / any_space.values(n + 1)
    assert np.allclose(any_space.ratios(n), direct, rtol=1e-12, atol=0)


@pytest.mark.parametrize('omega, kappa', [
    (dirichlet(-12), 12.0),
    (dirichlet(-1), 1.0),
    (dirichlet(5), 5.0),
    (bergman(0), 1.0),
    (bergman(3.5), 4.5),
])
def test_ratio_tends_to_one(omega, kappa):
    n = np.unique(np.logspace(0, 5, 300).astype(np.int64))
    dev = np.abs(omega.ratios(n) - 1.0)
    assert np.all(dev <= np.expm1(kappa / (n + 1)) + 1e-12)


def test_tail_sup():
    assert hardy().tail_sup(10) == 1.0
    assert math.isinf(dirichlet(1).tail_sup(3))
    assert bergman(0).tail_sup(10) == pytest.approx(1 / 11, abs=1e-15)
    assert dirichlet(-2).tail_sup(4) == pytest.approx(1 / 25, abs=1e-15)


def test_monotonicity_flags():
    assert dirichlet(0).is_nondecreasing()
    assert dirichlet(1).is_nondecreasing()
    assert not bergman(0).is_nondecreasing()
    assert bergman(0).strictly_decreasing_upto(50)
    assert not hardy().strictly_decreasing_upto(5)


def test_parse_space():
    assert parse_space('hardy') == hardy()
    assert parse_space('bergman:0') == bergman(0)
    assert parse_space('dirichlet:-2.5') == dirichlet(-2.5)
    assert parse_space('bergman:1').label == 'bergman:1'


@pytest.mark.parametrize('text', ['foo', 'dirichlet', 'dirichlet:x', 'bergman:-1', 'hardy:2', 'custom:'])
def test_parse_space_rejects(text):
    with pytest.raises(InputError):
        parse_space(text)


def test_custom_formula_reproduces_bergman(write_json):
    path = write_json('w.json', {
        'name': 'bergman-like',
        'prefix': [1, 0.5],
        'tail': {'type': 'formula', 'expr': '1/(n+1)'},
        'ratio_check_from': 2,
    })
    omega = load_custom_weights(path)
    n = np.arange(100)
    assert np.allclose(omega.values(n), bergman(0).values(n), rtol=1e-14, atol=0)
    assert omega.label == f"custom:{path}"
    assert omega.tail_sup(10) == pytest.approx(1 / 11, rel=1e-12)


def test_custom_ratio_tail():
    omega = custom(CustomWeights(prefix=[1.0, 1.0], tail={'type': 'ratio', 'ratio': 1.0}))
    assert np.all(omega.values(np.arange(20)) == 1.0)
    assert omega.tail_sup(5) == 1.0


def test_custom_rejects_omega0():
    with pytest.raises(DomainError):
        custom(CustomWeights(prefix=[2.0, 1.0], tail={'type': 'ratio', 'ratio': 1.0}))


def test_custom_rejects_fast_decay():
    with pytest.raises(DomainError):
        custom(CustomWeights(tail={'type': 'formula', 'expr': '2**(-n)'}))


def test_custom_formula_only_uses_n():
    with pytest.raises(ValidationError):
        CustomWeights(tail={'type': 'formula', 'expr': '1/(m+1)'})


def test_load_custom_weights_errors(tmp_path, write_json):
    with pytest.raises(InputError):
        load_custom_weights(tmp_path / 'missing.json')
    bad = write_json('bad.json', {'prefix': [1.0], 'tail': {'type': 'geometric'}})
    with pytest.raises(InputError):
        load_custom_weights(bad)
