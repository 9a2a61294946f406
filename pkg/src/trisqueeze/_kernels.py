"""Hot inner loops for the truncated 3-mode Fock space.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy
version built from array slicing.  ``TRISQUEEZE_DISABLE_NUMBA=1`` (or a
missing numba install) binds the public names to the numpy versions.
Both versions take a C-contiguous complex128 tensor of shape (d, d, d),
indexed ``psi[n1, n2, n3]``, and write into a preallocated ``out``.
"""

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("TRISQUEEZE_DISABLE_NUMBA", "") not in ("1", "true", "yes")


# ---------------------------------------------------------------------------
# numpy reference path
# ---------------------------------------------------------------------------


def squeeze_matvec_numpy(psi, mu, nu, out):
    """out = [mu (a1 a2 - a1+ a2+) + nu (a1 a3 - a1+ a3+)] psi."""
    d = psi.shape[0]
    sq = np.sqrt(np.arange(1, d, dtype=np.float64))
    w12 = sq[:, None, None] * sq[None, :, None]
    w13 = sq[:, None, None] * sq[None, None, :]
    out[...] = 0.0
    if mu != 0.0:
        out[:-1, :-1, :] += mu * w12 * psi[1:, 1:, :]
        out[1:, 1:, :] -= mu * w12 * psi[:-1, :-1, :]
    if nu != 0.0:
        out[:-1, :, :-1] += nu * w13 * psi[1:, :, 1:]
        out[1:, :, 1:] -= nu * w13 * psi[:-1, :, :-1]
    return out


def displace_matvec_numpy(psi, beta, out):
    """out = sum_i (beta_i a_i+ - conj(beta_i) a_i) psi."""
    d = psi.shape[0]
    sq = np.sqrt(np.arange(1, d, dtype=np.float64))
    out[...] = 0.0
    for axis in range(3):
        b = beta[axis]
        if b == 0:
            continue
        shape = [1, 1, 1]
        shape[axis] = d - 1
        w = sq.reshape(shape)
        hi = [slice(None)] * 3
        lo = [slice(None)] * 3
        hi[axis] = slice(1, None)
        lo[axis] = slice(None, -1)
        hi, lo = tuple(hi), tuple(lo)
        out[hi] += b * w * psi[lo]
        out[lo] -= np.conj(b) * w * psi[hi]
    return out


# ---------------------------------------------------------------------------
# numba path
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def squeeze_matvec_numba(psi, mu, nu, out):
        d = psi.shape[0]
        n_max = d - 1
        sq = np.sqrt(np.arange(0, d + 1).astype(np.float64))
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    acc = 0.0j
                    if i < n_max and j < n_max:
                        acc += mu * (sq[i + 1] * sq[j + 1]) * psi[i + 1, j + 1, k]
                    if i > 0 and j > 0:
                        acc -= mu * (sq[i] * sq[j]) * psi[i - 1, j - 1, k]
                    if i < n_max and k < n_max:
                        acc += nu * (sq[i + 1] * sq[k + 1]) * psi[i + 1, j, k + 1]
                    if i > 0 and k > 0:
                        acc -= nu * (sq[i] * sq[k]) * psi[i - 1, j, k - 1]
                    out[i, j, k] = acc
        return out

    @numba.njit(cache=True)
    def displace_matvec_numba(psi, beta, out):
        d = psi.shape[0]
        n_max = d - 1
        sq = np.sqrt(np.arange(0, d + 1).astype(np.float64))
        b1, b2, b3 = beta[0], beta[1], beta[2]
        c1, c2, c3 = np.conj(b1), np.conj(b2), np.conj(b3)
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    acc = 0.0j
                    if i > 0:
                        acc += b1 * sq[i] * psi[i - 1, j, k]
                    if i < n_max:
                        acc -= c1 * sq[i + 1] * psi[i + 1, j, k]
                    if j > 0:
                        acc += b2 * sq[j] * psi[i, j - 1, k]
                    if j < n_max:
                        acc -= c2 * sq[j + 1] * psi[i, j + 1, k]
                    if k > 0:
                        acc += b3 * sq[k] * psi[i, j, k - 1]
                    if k < n_max:
                        acc -= c3 * sq[k + 1] * psi[i, j, k + 1]
                    out[i, j, k] = acc
        return out

else:  # pragma: no cover
    squeeze_matvec_numba = None
    displace_matvec_numba = None


if USE_NUMBA:
    squeeze_matvec = squeeze_matvec_numba
    displace_matvec = displace_matvec_numba
    BACKEND = "numba"
else:
    squeeze_matvec = squeeze_matvec_numpy
    displace_matvec = displace_matvec_numpy
    BACKEND = "numpy"
