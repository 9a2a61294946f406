"""Squeezer applied through its normally ordered factorisation.

    S = sech r * exp[-tanh r a1+ (cos a2+ + sin a3+)]
              * :exp[k (a1+ a1 + b+ b)]:
              * exp[tanh r a1 (cos a2 + sin a3)]

with ``k = (1 - cosh r)/cosh r`` and ``b = cos a2 + sin a3``.  Factors are
applied right to left, each as a power series on the truncated space.
"""

import math

import numpy as np

from ..errors import InvalidArgumentError, ResourceError
from ..genmat import build_generator
from .basis import FockState, mode_operators

DEFAULT_MAX_TERMS = 400


def _series(op, v, x, max_terms):
    """exp(x op) v for nilpotent ``op``, stopping when the power vanishes."""
    out = v.copy()
    term = v
    for k in range(1, max_terms + 1):
        term = (x / k) * (op @ term)
        if not np.any(term):
            return out
        out = out + term
    raise ResourceError(f"normal-ordered series did not terminate within {max_terms} terms")


def _normal_number_exp(lower, raise_, v, kappa, max_terms):
    """``:exp(kappa c+ c):`` v = sum_k kappa^k/k! (c+)^k c^k v."""
    out = v.copy()
    lowered = v
    for k in range(1, max_terms + 1):
        lowered = (kappa / k) * (lower @ lowered)
        if not np.any(lowered):
            return out
        raised = lowered
        for _ in range(k):
            raised = raise_ @ raised
        out = out + raised
    raise ResourceError(f"normal-ordered series did not terminate within {max_terms} terms")


def apply_s3_normal_ordered(state, mu, nu, sin_partner=3, max_terms=DEFAULT_MAX_TERMS):
    """Apply the squeezer to ``state`` factor by factor.

    Parameters
    ----------
    sin_partner : {3, 1}
        Mode multiplying ``sin theta`` inside the right-most (annihilation)
        factor.  3 gives the adjoint of the left-most factor and is the
        correct choice; 1 reproduces ``exp[tanh r a1 (cos a2 + sin a1)]``
        and exists only to show that variant is wrong.
    """
    if sin_partner not in (1, 3):
        raise InvalidArgumentError(f"sin_partner must be 1 or 3, got {sin_partner!r}")
    g = build_generator(mu, nu)
    ch = math.cosh(g.r)
    t = math.tanh(g.r)
    c, s = g.cos_theta, g.sin_theta
    a1, a2, a3 = (op.matrix for op in mode_operators(state.cutoff))

    partner = a3 if sin_partner == 3 else a1
    annihilate = (a1 @ (c * a2 + s * partner)).tocsr()
    create = (a1.T @ (c * a2.T + s * a3.T)).tocsr()
    b = (c * a2 + s * a3).tocsr()
    kappa = (1.0 - ch) / ch

    v = state.amplitudes.copy()
    if t != 0.0:
        v = _series(annihilate, v, t, max_terms)
        v = _normal_number_exp(a1, a1.T, v, kappa, max_terms)
        v = _normal_number_exp(b, b.T.tocsr(), v, kappa, max_terms)
        v = _series(create, v, -t, max_terms)
    return FockState(state.cutoff, v / ch)
