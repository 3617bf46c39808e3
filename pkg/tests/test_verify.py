import math

import pytest

from opa_helper.core import verify
from opa_helper.core.errors import ConvergenceError


@pytest.mark.parametrize('name', list(verify.SUITES))
def test_suite_passes(name):
    verdict = verify.run_suite(name)
    failed = [c for c in verdict.checks if not c.passed]
    assert verdict.passed, failed
    assert verdict.checks
    assert verdict.elapsed >= 0


def test_unknown_suite():
    with pytest.raises(KeyError):
        verify.run_suite('nosuch')


def test_figure1_rows():
    row, hardy_row = verify.figure1_rows([-1, 0])
    assert row.half_norm == pytest.approx(3 / (2 * math.sqrt(2)), abs=1e-8)
    assert row.zero_free_radius == pytest.approx(math.sqrt(2 / 3))
    assert row.half_norm_bound == pytest.approx(math.sqrt(3 / 2))
    assert hardy_row.half_norm < 1
    assert hardy_row.half_norm_bound == 1.0


def test_numerical_failure_becomes_failed_check(monkeypatch):
    def broken():
        raise ConvergenceError("did not settle")

    monkeypatch.setitem(verify.SUITES, 'broken', broken)
    verdict = verify.run_suite('broken')
    assert not verdict.passed
    assert verdict.checks[0].detail.startswith('ConvergenceError')


def test_close_and_holds():
    assert verify.close('x', 1.0, 1.0 + 1e-10, 1e-9).passed
    assert not verify.close('x', 1.0, 1.1, 1e-9).passed
    assert not verify.holds('y', False).passed
