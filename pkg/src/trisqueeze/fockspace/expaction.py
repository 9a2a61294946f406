"""Action of ``exp(K)`` on a vector by a scaled truncated Taylor series.

``exp(K) v`` is advanced in ``s`` equal substeps ``exp(K/s)``, each summed
as a degree-``m`` Taylor polynomial using only products ``K @ x``.  Given a
bound ``b >= ||K||`` the pair ``(s, m)`` is picked a priori so that
``s * (b/s)**(m+1) / (m+1)! * exp(b/s) <= tol``, minimising ``s * m``.
The matrix ``exp(K)`` is never formed.
"""

import math

import numpy as np

from .. import _kernels
from ..errors import InvalidArgumentError, ResourceError
from .basis import FockState, as_cutoff

DEFAULT_TOL = 1e-12
DEFAULT_MAX_MATVECS = 2_000_000

# candidate substep norms; larger means fewer, longer Taylor sums
_THETAS = (0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0)
_MAX_DEGREE = 60


def _taylor_degree(x, step_tol):
    """Smallest m with x**(m+1)/(m+1)! * e**x <= step_tol, or None."""
    if x == 0.0:
        return 0
    log_target = math.log(step_tol) - x
    log_term = 0.0
    for m in range(_MAX_DEGREE + 1):
        log_term += math.log(x) - math.log(m + 1)
        if log_term <= log_target:
            return m
    return None


def plan_steps(norm_bound, tol):
    """Choose ``(substeps, degree)`` for a generator with ``||K|| <= norm_bound``."""
    if not (0.0 < tol <= 1e-6):
        raise InvalidArgumentError(f"tol must be in (0, 1e-6], got {tol!r}")
    if norm_bound == 0.0:
        return 0, 0
    best = None
    for theta in _THETAS:
        s = max(1, math.ceil(norm_bound / theta))
        m = _taylor_degree(norm_bound / s, tol / s)
        if m is None:
            continue
        cost = s * m
        if best is None or cost < best[0]:
            best = (cost, s, m)
    return best[1], best[2]


def expm_action(matvec, v, norm_bound, tol=DEFAULT_TOL, max_matvecs=DEFAULT_MAX_MATVECS):
    """Return ``exp(K) v`` where ``matvec(x, out)`` writes ``K x`` into ``out``.

    ``v`` may have any shape accepted by ``matvec``; a copy is returned.
    Raises :class:`ResourceError` when the plan needs more than
    ``max_matvecs`` products.
    """
    s, m = plan_steps(norm_bound, tol)
    if s * m > max_matvecs:
        raise ResourceError(
            f"exponential action needs {s} substeps x {m} terms = {s * m} products, "
            f"above the budget {max_matvecs} (norm bound {norm_bound:.3g})"
        )
    f = np.array(v, dtype=np.complex128, copy=True)
    if s == 0:
        return f
    term = np.empty_like(f)
    nxt = np.empty_like(f)
    for _ in range(s):
        term[...] = f
        for k in range(1, m + 1):
            matvec(term, nxt)
            nxt *= 1.0 / (s * k)
            term, nxt = nxt, term
            f += term
    return f


# ---------------------------------------------------------------------------
# squeezer and displacement on the tensor layout
# ---------------------------------------------------------------------------


def squeezer_norm_bound(n_max, mu, nu):
    """Upper bound on the 1-norm of the truncated squeezer generator.

    A column ``|n1 n2 n3>`` has at most two ``mu`` entries, each at most
    ``n_max`` in magnitude, and likewise for ``nu``.
    """
    return 2.0 * (abs(mu) + abs(nu)) * n_max


def apply_s3_numeric(state, mu, nu, tol=DEFAULT_TOL, max_matvecs=DEFAULT_MAX_MATVECS):
    """Apply ``exp[mu(a1 a2 - a1+ a2+) + nu(a1 a3 - a1+ a3+)]`` to ``state``.

    Computed on the truncated space where the generator is exactly
    anti-Hermitian, so the result is unitary up to ``tol``.
    """
    mu = float(mu)
    nu = float(nu)
    if not (math.isfinite(mu) and math.isfinite(nu)):
        raise InvalidArgumentError("mu and nu must be finite")
    cutoff = state.cutoff
    kernel = _kernels.squeeze_matvec

    def matvec(x, out):
        kernel(x, mu, nu, out)

    psi = expm_action(
        matvec,
        state.tensor,
        squeezer_norm_bound(cutoff.n_max, mu, nu),
        tol=tol,
        max_matvecs=max_matvecs,
    )
    return FockState(cutoff, psi)


def displace(state, alphas, tol=DEFAULT_TOL, max_matvecs=DEFAULT_MAX_MATVECS):
    """Apply ``prod_i D(alpha_i) = exp(sum_i alpha_i a_i+ - conj(alpha_i) a_i)``."""
    beta = np.asarray(alphas, dtype=np.complex128).reshape(3)
    if not np.all(np.isfinite(beta)):
        raise InvalidArgumentError("displacement amplitudes must be finite")
    cutoff = state.cutoff
    kernel = _kernels.displace_matvec

    def matvec(x, out):
        kernel(x, beta, out)

    bound = 2.0 * float(np.abs(beta).sum()) * math.sqrt(cutoff.n_max)
    psi = expm_action(matvec, state.tensor, bound, tol=tol, max_matvecs=max_matvecs)
    return FockState(cutoff, psi)


def squeezer_apply_sparse(cutoff, mu, nu):
    """Callable ``x -> K x`` on flat vectors using the sparse generator.

    Slower than the tensor kernel; used to cross-check it.
    """
    from .operators import build_s3_generator

    k = build_s3_generator(as_cutoff(cutoff), mu, nu)

    def matvec(x, out):
        out[...] = (k @ x.reshape(-1)).reshape(out.shape)

    return matvec
