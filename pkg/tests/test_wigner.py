import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trisqueeze.errors import InvalidArgumentError, PrecisionError
from trisqueeze.fockspace import FockCutoff, auto_cutoff, squeezed_vacuum_analytic, vacuum
from trisqueeze.wigner import (
    PEAK,
    PhasePoint,
    parse_axis,
    wigner_closed_form,
    wigner_grid,
    wigner_marginal_norm,
    wigner_numeric,
)

coord = st.floats(-2, 2)


def test_origin_value_is_peak():
    for mu, nu in ((0, 0), (0.5, 0.3), (1.2, -0.4)):
        assert wigner_closed_form(mu, nu, PhasePoint.origin()) == pytest.approx(PEAK, rel=1e-15)


def test_vacuum_gaussian():
    pt = PhasePoint((0.3, -0.2, 0.1), (0.5, 0.0, -0.4))
    expected = PEAK * math.exp(-(0.09 + 0.04 + 0.01 + 0.25 + 0.16))
    assert wigner_closed_form(0, 0, pt) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("mu,nu", [(0.0, 0.0), (0.5, 0.3), (0.0, 0.8), (1.0, 1.0)])
def test_normalisation(mu, nu):
    assert abs(wigner_marginal_norm(mu, nu) - 1.0) < 1e-12


@settings(max_examples=50, deadline=None)
@given(q=st.tuples(coord, coord, coord), p=st.tuples(coord, coord, coord), mu=st.floats(-1, 1), nu=st.floats(-1, 1))
def test_inversion_symmetry_and_positivity(q, p, mu, nu):
    w = wigner_closed_form(mu, nu, PhasePoint(q, p))
    w_neg = wigner_closed_form(mu, nu, PhasePoint([-x for x in q], [-x for x in p]))
    assert 0 <= w <= PEAK * (1 + 1e-12)
    assert w == pytest.approx(w_neg, rel=1e-12, abs=1e-300)


def test_numeric_matches_closed_form():
    mu, nu = 0.5, 0.3
    c = FockCutoff(max(28, auto_cutoff(math.hypot(mu, nu), 1e-12)))
    state = squeezed_vacuum_analytic(c, mu, nu)
    rng = np.random.default_rng(7)
    for _ in range(4):
        pt = PhasePoint(rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3))
        assert abs(wigner_numeric(state, pt) - wigner_closed_form(mu, nu, pt)) < 2e-6


def test_numeric_vacuum_origin():
    assert wigner_numeric(vacuum(6), PhasePoint.origin()) == pytest.approx(PEAK, abs=1e-15)


def test_numeric_refuses_truncated_input():
    state = squeezed_vacuum_analytic(FockCutoff(14), 0.6, 0.45, max_tail=1e-3)
    with pytest.raises(PrecisionError):
        wigner_numeric(state, PhasePoint.origin())


def test_numeric_refuses_far_displacement():
    with pytest.raises(PrecisionError):
        wigner_numeric(vacuum(6), PhasePoint((4, 0, 0), (0, 0, 0)))


def test_phase_point_validation():
    with pytest.raises(InvalidArgumentError):
        PhasePoint((0, 0), (0, 0, 0))
    with pytest.raises(InvalidArgumentError):
        PhasePoint((math.nan, 0, 0), (0, 0, 0))


def test_grid_matches_pointwise():
    grid = wigner_grid(0.4, 0.2, ["q1=-1:1:5", "p2=-0.5:0.5:3"], {"q3": 0.25})
    assert grid.values.shape == (5, 3)
    rows = list(grid.rows())
    assert len(rows) == 15
    coords, w = rows[5]
    assert coords["q1"] == pytest.approx(-0.5) and coords["p2"] == pytest.approx(0.5)
    pt = PhasePoint(
        (coords["q1"], coords["q2"], coords["q3"]),
        (coords["p1"], coords["p2"], coords["p3"]),
    )
    assert w == pytest.approx(wigner_closed_form(0.4, 0.2, pt), rel=1e-13)


@pytest.mark.parametrize(
    "axes,fixed",
    [
        (["q1=-1:1:3", "q2=-1:1:3", "q3=-1:1:3"], {}),
        (["q1=-1:1:3", "q1=-1:1:3"], {}),
        (["x1=-1:1:3"], {}),
        (["q1=-1:1:3"], {"q1": 0.0}),
        (["q1=-1:1:3"], {"z": 0.0}),
        (["q1=-1:1:0"], {}),
    ],
)
def test_grid_rejects_bad_specs(axes, fixed):
    with pytest.raises(InvalidArgumentError):
        wigner_grid(0.1, 0.1, axes, fixed)


def test_parse_axis_errors():
    with pytest.raises(InvalidArgumentError):
        parse_axis("q1:-1:1")


@pytest.mark.parametrize("mu,nu", [(0.5, 0.3), (-0.8, 0.2), (1.2, 1.2)])
def test_grid_maximum_is_bounded_by_peak(mu, nu):
    grid = wigner_grid(mu, nu, ["q1=-2:2:41", "p3=-2:2:41"], {"q2": 0.1})
    assert grid.values.max() <= PEAK + 1e-15
    assert grid.values.min() >= 0
