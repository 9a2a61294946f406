"""Quadrature variances of the 3-mode squeezed vacuum.

The collective quadratures are ``X1 = (Q1 + Q2 + Q3)/sqrt(6)`` and
``X2 = (P1 + P2 + P3)/sqrt(6)`` with ``Q = (a + a+)/sqrt(2)`` and
``P = (a - a+)/(i sqrt(2))``, so ``[X1, X2] = i/2`` and the vacuum has
both variances equal to 1/4.

Under the squeezer ``Q -> expm(-L) Q`` and ``P -> expm(L) P``; hence
``var X1 = sum(expm(-2L))/12`` and ``var X2 = sum(expm(2L))/12``.  For
positive couplings X1 is the squeezed quadrature.

Three routes are provided: trigonometric closed form, the matrix sums, and
expectation values on a Fock-space state.
"""

from dataclasses import dataclass
import math
import warnings

import numpy as np

from .errors import PrecisionError
from .fockspace import (
    FockCutoff,
    apply_s3_numeric,
    auto_cutoff,
    expectation,
    mode_operators,
    vacuum,
)
from .genmat import build_generator, exp_closed_form

TAIL_WARN = 1e-8
TAIL_FAIL = 1e-6


@dataclass(frozen=True)
class QuadratureStats:
    var_x1: float
    var_x2: float
    pathway: str
    mean_x1: float = 0.0
    mean_x2: float = 0.0

    @property
    def std_x1(self):
        return math.sqrt(self.var_x1)

    @property
    def std_x2(self):
        return math.sqrt(self.var_x2)

    @property
    def product(self):
        """Product of standard deviations; at least 1/4."""
        return math.sqrt(self.var_x1 * self.var_x2)


def _trig_terms(mu, nu):
    g = build_generator(mu, nu)
    c, s = g.cos_theta, g.sin_theta
    ch2 = math.cosh(2 * g.r)
    sh2 = math.sinh(2 * g.r)
    even = (2 * ch2 + 1) + 2 * s * c * (ch2 - 1)
    odd = 2 * (c + s) * sh2
    return even, odd


def variance_closed_form(mu, nu):
    """Trigonometric closed form of both variances.

    ``var X1 = [(2 cosh 2r + 1) + sin 2t (cosh 2r - 1) - 2 (cos t + sin t) sinh 2r] / 12``
    and ``var X2`` the same with ``+`` before the last term.
    """
    even, odd = _trig_terms(mu, nu)
    return QuadratureStats(var_x1=(even - odd) / 12, var_x2=(even + odd) / 12, pathway="closed_form")


def variance_closed_form_swapped(mu, nu):
    """The closed form with X1 and X2 exchanged.

    This assignment gives the anti-squeezed value to X1.  It disagrees with
    :func:`variance_matrix_sum` and :func:`variance_fock` whenever ``r > 0``
    and is kept only so that the disagreement can be tested.
    """
    even, odd = _trig_terms(mu, nu)
    return QuadratureStats(var_x1=(even + odd) / 12, var_x2=(even - odd) / 12, pathway="closed_form_swapped")


def variance_matrix_sum(mu, nu):
    """Variances as entry sums of ``expm(-2L)`` and ``expm(2L)``.

    The doubled exponentials come from the closed form at ``2r`` (same
    angle), not from squaring ``expm(L)``.
    """
    g2 = build_generator(2 * mu, 2 * nu)
    return QuadratureStats(
        var_x1=float(exp_closed_form(g2, -1).sum()) / 12,
        var_x2=float(exp_closed_form(g2, +1).sum()) / 12,
        pathway="matrix_sum",
    )


def quadrature_operators(cutoff):
    """Sparse matrices for ``(X1, X2)`` on ``cutoff``."""
    a = [op.matrix for op in mode_operators(cutoff)]
    qs = sum((x + x.T) for x in a) / math.sqrt(2)
    ps = sum((x - x.T) for x in a) / (1j * math.sqrt(2))
    return qs / math.sqrt(6), ps / math.sqrt(6)


def _check_tail(state):
    tail = state.tail_mass
    if tail > TAIL_FAIL:
        raise PrecisionError(f"state tail mass {tail:.3g} exceeds {TAIL_FAIL:g}; increase the cutoff")
    if tail > TAIL_WARN:
        warnings.warn(f"state tail mass {tail:.3g} exceeds {TAIL_WARN:g}; variances may be inaccurate", stacklevel=3)


def variance_fock(state):
    """Variances of X1, X2 measured on a Fock-space state."""
    _check_tail(state)
    x1, x2 = quadrature_operators(state.cutoff)
    m1 = expectation(state, x1).real
    m2 = expectation(state, x2).real
    s1 = expectation(state, x1 @ x1).real
    s2 = expectation(state, x2 @ x2).real
    return QuadratureStats(
        var_x1=s1 - m1 * m1,
        var_x2=s2 - m2 * m2,
        pathway="fock_numeric",
        mean_x1=m1,
        mean_x2=m2,
    )


def variance_fock_numeric(mu, nu, cutoff=None, eps=1e-10):
    """:func:`variance_fock` on the numerically squeezed vacuum."""
    if cutoff is None:
        cutoff = auto_cutoff(math.hypot(mu, nu), eps)
    cutoff = cutoff if isinstance(cutoff, FockCutoff) else FockCutoff(int(cutoff))
    return variance_fock(apply_s3_numeric(vacuum(cutoff), mu, nu))


def uncertainty_product(mu, nu):
    """``sqrt(var X1 var X2) = sqrt(4 cosh 2r + 4 + (1 - 2 sinh^2 r sin 2t)^2) / 12``."""
    g = build_generator(mu, nu)
    sin2 = 2 * g.cos_theta * g.sin_theta
    sh = math.sinh(g.r)
    return math.sqrt(4 * math.cosh(2 * g.r) + 4 + (1 - 2 * sh * sh * sin2) ** 2) / 12


def two_mode_baseline(lam):
    """Variances ``(e^(-2 lam)/4, e^(2 lam)/4)`` of ``(Q1+Q2)/2`` and ``(P1+P2)/2``."""
    return math.exp(-2 * lam) / 4, math.exp(2 * lam) / 4


def two_mode_fock(lam, cutoff=None, eps=1e-12):
    """Measure the two-mode variances on the numerically squeezed vacuum at ``nu = 0``.

    Returns ``(var_X, var_P, mode3_excited_mass)``; the last entry is the
    probability of finding any photon in mode 3.
    """
    if cutoff is None:
        cutoff = auto_cutoff(abs(lam), eps)
    cutoff = cutoff if isinstance(cutoff, FockCutoff) else FockCutoff(int(cutoff))
    state = apply_s3_numeric(vacuum(cutoff), lam, 0.0)
    a1, a2, _ = (op.matrix for op in mode_operators(cutoff))
    xx = (a1 + a1.T + a2 + a2.T) / (2 * math.sqrt(2))
    pp = (a1 - a1.T + a2 - a2.T) / (2j * math.sqrt(2))
    vx = expectation(state, xx @ xx).real - expectation(state, xx).real ** 2
    vp = expectation(state, pp @ pp).real - expectation(state, pp).real ** 2
    mode3 = float(np.sum(np.abs(state.tensor[:, :, 1:]) ** 2))
    return vx, vp, mode3
