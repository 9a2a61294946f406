"""Sparse generator of the 3-mode squeezer."""

import math

from ..errors import InvalidArgumentError
from .basis import as_cutoff, mode_operators


def build_s3_generator(cutoff, mu, nu):
    """``K = mu (a1 a2 - a1+ a2+) + nu (a1 a3 - a1+ a3+)`` as a CSR matrix.

    Each pair-annihilation term is paired with its negative adjoint, so
    ``K^+ = -K`` holds exactly on the truncated space.
    """
    mu = float(mu)
    nu = float(nu)
    if not (math.isfinite(mu) and math.isfinite(nu)):
        raise InvalidArgumentError("mu and nu must be finite")
    cutoff = as_cutoff(cutoff)
    a1, a2, a3 = (op.matrix for op in mode_operators(cutoff))
    p12 = a1 @ a2
    p13 = a1 @ a3
    k = mu * (p12 - p12.conj().T) + nu * (p13 - p13.conj().T)
    k = k.tocsr()
    k.eliminate_zeros()
    return k
