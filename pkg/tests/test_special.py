import cmath

import pytest
from scipy import special as sp

from opa_helper.core import special
from opa_helper.core.errors import DomainError


@pytest.mark.parametrize('z', [0.5, 3.0, 10.25, 2 + 3j, -1.5 + 0.5j, -2.5])
def test_loggamma_matches_scipy(z):
    assert cmath.exp(special.loggamma(z)) == pytest.approx(complex(sp.gamma(z)), rel=1e-11)


@pytest.mark.parametrize('z', [0, -1, -7])
def test_loggamma_rejects_poles(z):
    with pytest.raises(DomainError):
        special.loggamma(z)


def test_logbeta_matches_betaln():
    assert special.logbeta(2.5, 3.25).real == pytest.approx(sp.betaln(2.5, 3.25), abs=1e-12)
