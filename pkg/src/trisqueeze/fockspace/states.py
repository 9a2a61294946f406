"""Closed-form squeezed states and the relations they satisfy."""

import math

import numpy as np

from ..errors import InvalidArgumentError, TruncationError
from ..genmat import build_generator
from .basis import FockState, as_cutoff, coherent_state, mode_operators

DEFAULT_EPS_TRUNC = 1e-10
DEFAULT_MAX_TAIL = 1e-8
MAX_TANH = 0.999
EIGEN_RESIDUAL_CONSTANT = 10.0


def _tanh_checked(r):
    t = math.tanh(r)
    if t >= MAX_TANH:
        raise InvalidArgumentError(f"r = {r:.6g} exceeds the supported range (tanh r < {MAX_TANH})")
    return t


def auto_cutoff(r, eps=DEFAULT_EPS_TRUNC):
    """Smallest ``n_max`` whose truncation of the squeezed vacuum is within ``eps``.

    The squeezed vacuum has mode-1 occupation distribution
    ``P(n) = (1 - t^2) t^(2n)`` with ``t = tanh r``, and every populated
    basis state has ``n2, n3 <= n1``.  So the discarded probability is
    exactly ``t^(2(n_max+1))`` and the boundary mass is ``(1 - t^2) t^(2 n_max)``;
    both are kept at or below ``eps``.
    """
    if not eps > 0:
        raise InvalidArgumentError("eps must be positive")
    t = _tanh_checked(abs(r))
    if t == 0.0:
        return 1
    log_t2 = 2.0 * math.log(t)
    lost = math.ceil(math.log(eps) / log_t2) - 1
    boundary = math.ceil(math.log(eps / (1.0 - t * t)) / log_t2)
    return max(1, lost, boundary)


def squeezed_vacuum_analytic(cutoff, mu, nu, max_tail=DEFAULT_MAX_TAIL):
    """Series expansion of ``sech r exp[-tanh r a1+ (cos t a2+ + sin t a3+)] |000>``.

    Amplitude of ``|n, n-k, k>`` is
    ``sech r (-tanh r)^n sqrt(C(n, k)) cos^(n-k) theta sin^k theta``; all
    other amplitudes vanish.  The truncated vector is not renormalised.

    Raises
    ------
    TruncationError
        If the boundary mass exceeds ``max_tail``.
    """
    cutoff = as_cutoff(cutoff)
    g = build_generator(mu, nu)
    t = _tanh_checked(g.r)
    c, s = g.cos_theta, g.sin_theta
    n_max = cutoff.n_max

    boundary = (1.0 - t * t) * t ** (2 * n_max)
    if boundary > max_tail:
        raise TruncationError(
            f"cutoff {n_max} leaves tail mass {boundary:.3g} > {max_tail:.3g} at r = {g.r:.6g}; "
            f"use cutoff >= {auto_cutoff(g.r, max_tail)}",
            suggested_cutoff=auto_cutoff(g.r, max_tail),
        )

    psi = np.zeros(cutoff.shape, dtype=np.complex128)
    sech = 1.0 / math.cosh(g.r)
    for n in range(n_max + 1):
        k = np.arange(n + 1)
        log_binom = 0.5 * (math.lgamma(n + 1) - np.array([math.lgamma(j + 1) + math.lgamma(n - j + 1) for j in k]))
        amp = sech * (-t) ** n * np.exp(log_binom) * np.power(c, n - k) * np.power(s, k)
        psi[n, n - k, k] = amp
    return FockState(cutoff, psi)


def check_eigen_relations(state, mu, nu):
    """Residual norms of the three pair-annihilation relations.

    Returns the 2-norms of::

        (a1 + tanh r (cos t a2+ + sin t a3+)) |psi>
        (a2 + tanh r cos t a1+) |psi>
        (a3 + tanh r sin t a1+) |psi>

    On a raw truncation of the squeezed vacuum each residual is bounded by
    ``EIGEN_RESIDUAL_CONSTANT * sqrt(state.tail_mass)``.
    """
    g = build_generator(mu, nu)
    t = math.tanh(g.r)
    c, s = g.cos_theta, g.sin_theta
    a1, a2, a3 = (op.matrix for op in mode_operators(state.cutoff))
    psi = state.amplitudes
    r1 = a1 @ psi + t * (c * (a2.T @ psi) + s * (a3.T @ psi))
    r2 = a2 @ psi + t * c * (a1.T @ psi)
    r3 = a3 @ psi + t * s * (a1.T @ psi)
    return tuple(float(np.linalg.norm(x)) for x in (r1, r2, r3))


def _creation_exp_matrix(d, gamma):
    """Truncated ``exp(gamma a^+)``: entry (m, n) = gamma^(m-n)/(m-n)! sqrt(m!/n!)."""
    e = np.zeros((d, d), dtype=np.complex128)
    lf = [math.lgamma(k + 1) for k in range(d)]
    for n in range(d):
        e[n, n] = 1.0
        if gamma == 0:
            continue
        for m in range(n + 1, d):
            j = m - n
            e[m, n] = gamma**j * math.exp(0.5 * (lf[m] - lf[n]) - lf[j])
    return e


def s3_on_coherent(z1, z2, z3, mu, nu, cutoff, max_tail=DEFAULT_MAX_TAIL):
    """Squeezer applied to the coherent state ``|z1 z2 z3>``, built in closed form.

    The result is ``exp(c0) exp(g . a+) sech r exp[-tanh r a1+ (cos a2+ + sin a3+)] |000>``
    with scalar ``c0 = -|z|^2/2 + tanh r z1 (cos z2 + sin z3)`` and linear
    creation coefficients::

        g1 = z1 / cosh r
        g2 = [(sin^2 cosh r + cos^2) z2 - sin cos (cosh r - 1) z3] / cosh r
        g3 = [(sin^2 + cos^2 cosh r) z3 - sin cos (cosh r - 1) z2] / cosh r
    """
    cutoff = as_cutoff(cutoff)
    z = [complex(z1), complex(z2), complex(z3)]
    probe = coherent_state(cutoff, *z)
    if probe.tail_mass > max_tail:
        raise TruncationError(
            f"coherent amplitudes {z} do not fit cutoff {cutoff.n_max} "
            f"(tail mass {probe.tail_mass:.3g} > {max_tail:.3g})"
        )
    g = build_generator(mu, nu)
    ch = math.cosh(g.r)
    t = math.tanh(g.r)
    c, s = g.cos_theta, g.sin_theta

    c0 = -0.5 * sum(abs(x) ** 2 for x in z) + z[0] * z[1] * c * t + z[0] * z[2] * s * t
    gam = (
        z[0] / ch,
        ((s * s * ch + c * c) * z[1] - s * c * (ch - 1.0) * z[2]) / ch,
        ((s * s + c * c * ch) * z[2] - s * c * (ch - 1.0) * z[1]) / ch,
    )
    kernel = squeezed_vacuum_analytic(cutoff, mu, nu, max_tail=max_tail).tensor
    d = cutoff.d
    e1, e2, e3 = (_creation_exp_matrix(d, gm) for gm in gam)
    psi = np.einsum("ai,bj,ck,ijk->abc", e1, e2, e3, kernel, optimize=True)
    return FockState(cutoff, np.exp(c0) * psi)
