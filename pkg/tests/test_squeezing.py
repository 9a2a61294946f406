import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trisqueeze.errors import PrecisionError
from trisqueeze.fockspace import FockCutoff, FockState, vacuum
from trisqueeze.squeezing import (
    two_mode_baseline,
    two_mode_fock,
    uncertainty_product,
    variance_closed_form,
    variance_closed_form_swapped,
    variance_fock,
    variance_fock_numeric,
    variance_matrix_sum,
)

couplings = st.floats(-1.2, 1.2)


def test_vacuum_variances():
    for stats in (variance_closed_form(0, 0), variance_matrix_sum(0, 0), variance_fock(vacuum(2))):
        assert stats.var_x1 == pytest.approx(0.25, abs=1e-14)
        assert stats.var_x2 == pytest.approx(0.25, abs=1e-14)
        assert stats.product == pytest.approx(0.25, abs=1e-14)


@pytest.mark.parametrize("mu,nu", [(0.6, 0.45), (0.2, 0.0), (0.0, 0.5), (1.0, 0.25)])
def test_three_pathways_agree(mu, nu):
    cf = variance_closed_form(mu, nu)
    ms = variance_matrix_sum(mu, nu)
    fk = variance_fock_numeric(mu, nu)
    for a, b in ((cf, ms), (cf, fk)):
        assert abs(a.var_x1 - b.var_x1) < 1e-7
        assert abs(a.var_x2 - b.var_x2) < 1e-7
    assert abs(fk.mean_x1) < 1e-12 and abs(fk.mean_x2) < 1e-12


def test_positive_couplings_squeeze_x1():
    st_ = variance_closed_form(0.6, 0.45)
    assert st_.var_x1 < 0.25 < st_.var_x2
    assert st_.var_x1 == pytest.approx(0.0867625, abs=1e-6)


def test_swapped_assignment_disagrees_with_simulation():
    swapped = variance_closed_form_swapped(0.6, 0.45)
    fk = variance_fock_numeric(0.6, 0.45)
    assert abs(swapped.var_x1 - fk.var_x1) > 0.5
    assert swapped.var_x1 == pytest.approx(fk.var_x2, abs=1e-7)


@settings(max_examples=60, deadline=None)
@given(mu=couplings, nu=couplings)
def test_closed_form_matches_matrix_sum(mu, nu):
    cf = variance_closed_form(mu, nu)
    ms = variance_matrix_sum(mu, nu)
    scale = max(1.0, ms.var_x2)
    assert abs(cf.var_x1 - ms.var_x1) < 1e-12 * scale
    assert abs(cf.var_x2 - ms.var_x2) < 1e-12 * scale


@settings(max_examples=60, deadline=None)
@given(mu=couplings, nu=couplings)
def test_sign_flip_swaps_quadratures(mu, nu):
    a = variance_matrix_sum(mu, nu)
    b = variance_matrix_sum(-mu, -nu)
    assert b.var_x1 == pytest.approx(a.var_x2, rel=1e-12, abs=1e-15)
    assert b.var_x2 == pytest.approx(a.var_x1, rel=1e-12, abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(mu=couplings, nu=couplings)
def test_exchange_symmetry(mu, nu):
    a, b = variance_closed_form(mu, nu), variance_closed_form(nu, mu)
    assert b.var_x1 == pytest.approx(a.var_x1, rel=1e-12, abs=1e-15)
    assert b.var_x2 == pytest.approx(a.var_x2, rel=1e-12, abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(mu=couplings, nu=couplings)
def test_uncertainty_bound(mu, nu):
    cf = variance_closed_form(mu, nu)
    assert cf.product >= 0.25 - 1e-12
    assert cf.product == pytest.approx(uncertainty_product(mu, nu), rel=1e-11)


def test_product_at_quarter_angle():
    r = 1.0
    mu = nu = r / math.sqrt(2)
    expected = math.sqrt(4 * math.cosh(2 * r) + 4 + (1 - 2 * math.sinh(r) ** 2) ** 2) / 12
    assert uncertainty_product(mu, nu) == pytest.approx(expected, abs=1e-15)


def test_quarter_angle_minimum_only_for_small_r():
    thetas = [k * math.pi / 8 for k in range(5)]

    def products(r):
        return [uncertainty_product(r * math.cos(t), r * math.sin(t)) for t in thetas]

    for r in np.arange(0.0, 0.7, 0.01):
        p = products(r)
        assert p[2] <= min(p) + 1e-15
    p = products(1.0)
    assert p[2] > min(p)


def test_two_mode_reduction():
    for lam in (0.3, 0.6):
        vx, vp, m3 = two_mode_fock(lam)
        ex, ep = two_mode_baseline(lam)
        assert abs(vx - ex) < 1e-8 and abs(vp - ep) < 1e-8
        assert m3 < 1e-28


def test_fock_variance_refuses_truncated_state():
    c = FockCutoff(4)
    amps = np.zeros(c.dim, dtype=complex)
    amps[0] = amps[-1] = 1 / math.sqrt(2)
    with pytest.raises(PrecisionError):
        variance_fock(FockState(c, amps))


def test_fock_variance_warns_on_moderate_tail():
    c = FockCutoff(4)
    amps = np.zeros(c.dim, dtype=complex)
    amps[0] = 1.0
    amps[-1] = 3e-4
    with pytest.warns(UserWarning):
        variance_fock(FockState(c, amps))
