"""Quadratic generator of the 3-mode squeezer and its exponentials.

The squeezer can be written ``exp(i Q^T L P)`` with ``L`` the real symmetric
matrix built here.  Conjugation by the squeezer maps the position
quadratures through ``expm(-L)`` and the momentum quadratures through
``expm(+L)``.

Index convention: physical modes 1, 2, 3 are array indices 0, 1, 2.  All
matrices are dense, row-major ``float64`` arrays.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import InvalidArgumentError

__all__ = [
    "GeneratorMatrix",
    "SymplecticPair",
    "BogoliubovTable",
    "build_generator",
    "exp_closed_form",
    "symplectic_pair",
    "expm_oracle",
    "bogoliubov_coefficients",
    "compose_bogoliubov",
]


def _check_finite(**values):
    for name, v in values.items():
        if not math.isfinite(v):
            raise InvalidArgumentError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class GeneratorMatrix:
    """Couplings, generator matrix and polar parameters.

    ``r = hypot(mu, nu)`` and ``(cos theta, sin theta) = (mu, nu) / r``;
    ``theta = 0`` when ``r = 0``.
    """

    mu: float
    nu: float
    matrix: np.ndarray
    r: float
    theta: float

    @property
    def cos_theta(self):
        return self.mu / self.r if self.r > 0 else 1.0

    @property
    def sin_theta(self):
        return self.nu / self.r if self.r > 0 else 0.0

    def scaled(self, factor):
        """Generator for ``factor * L`` (same theta for factor > 0)."""
        return build_generator(factor * self.mu, factor * self.nu)


@dataclass(frozen=True)
class SymplecticPair:
    """``(expm(-L), expm(+L))``: position and momentum transforms."""

    exp_neg: np.ndarray
    exp_pos: np.ndarray


@dataclass(frozen=True)
class BogoliubovTable:
    """Linear map ``a_k -> sum_i a_part[k, i] a_i + adag_part[k, i] a_i^+``.

    ``direction="inverse"`` describes ``S^-1 a_k S``; ``"forward"`` describes
    ``S a_k S^-1``.
    """

    a_part: np.ndarray
    adag_part: np.ndarray
    direction: str


def build_generator(mu, nu):
    """Build the generator matrix for couplings ``mu`` (1-2) and ``nu`` (1-3).

    Examples
    --------
    >>> g = build_generator(3.0, 4.0)
    >>> g.r, round(g.cos_theta, 12), round(g.sin_theta, 12)
    (5.0, 0.6, 0.8)
    """
    mu = float(mu)
    nu = float(nu)
    _check_finite(mu=mu, nu=nu)
    m = np.zeros((3, 3))
    m[0, 1] = m[1, 0] = mu
    m[0, 2] = m[2, 0] = nu
    m.setflags(write=False)
    r = math.hypot(mu, nu)
    theta = math.atan2(nu, mu) % (2 * math.pi) if r > 0 else 0.0
    return GeneratorMatrix(mu=mu, nu=nu, matrix=m, r=r, theta=theta)


def exp_closed_form(g, sign=1):
    """``expm(sign * L)`` from the cosh/sinh closed form.

    The odd part (first row and column off the diagonal) carries the sign;
    the even block is the same for both signs.  ``r = 0`` gives the identity.
    """
    if sign not in (1, -1):
        raise InvalidArgumentError(f"sign must be +1 or -1, got {sign!r}")
    ch = math.cosh(g.r)
    sh = math.sinh(g.r)
    c, s = g.cos_theta, g.sin_theta
    sin2 = 2.0 * s * c
    e = np.empty((3, 3))
    e[0, 0] = ch
    e[0, 1] = e[1, 0] = sign * c * sh
    e[0, 2] = e[2, 0] = sign * s * sh
    e[1, 1] = s * s + c * c * ch
    e[1, 2] = e[2, 1] = 0.5 * sin2 * (ch - 1.0)
    e[2, 2] = s * s * ch + c * c
    return e


def symplectic_pair(g):
    return SymplecticPair(exp_neg=exp_closed_form(g, -1), exp_pos=exp_closed_form(g, +1))


# Scaling-and-squaring oracle.  Kept free of anything generator-specific so it
# is an independent check on exp_closed_form.

_ORACLE_REMAINDER = 1e-16


def expm_oracle(m):
    """Matrix exponential by scaling and squaring of a Taylor polynomial.

    The matrix is scaled by ``2**-s`` until its 1-norm is at most 1/2, the
    Taylor degree ``k`` is the smallest with ``x**(k+1)/(k+1)! * e**x``
    below 1e-16 (``x`` the scaled norm), and the result is squared ``s``
    times.

    Parameters
    ----------
    m : array_like, shape (n, n)
        Finite real or complex square matrix, ``n <= 16``.
    """
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] > 16:
        raise InvalidArgumentError("expm_oracle supports n <= 16")
    if not np.all(np.isfinite(a)):
        raise InvalidArgumentError("matrix has non-finite entries")
    dtype = np.result_type(a.dtype, np.float64)
    a = a.astype(dtype)
    n = a.shape[0]
    norm = np.abs(a).sum(axis=0).max() if n else 0.0
    s = 0
    while norm / 2.0**s > 0.5:
        s += 1
    x = a / 2.0**s
    xn = norm / 2.0**s

    degree = 1
    bound = xn * math.exp(xn)
    while bound > _ORACLE_REMAINDER and degree < 40:
        degree += 1
        bound *= xn / degree
    # bound now ~ xn**degree/degree! * e**xn; one more term is below the target

    result = np.eye(n, dtype=dtype)
    term = np.eye(n, dtype=dtype)
    for k in range(1, degree + 1):
        term = term @ x / k
        result = result + term
    for _ in range(s):
        result = result @ result
    return result


def bogoliubov_coefficients(g, direction="inverse"):
    """Mode transform induced by conjugation with the squeezer.

    The ``inverse`` table is written out term by term from the trigonometric
    form; ``forward`` flips the sign of the creation-operator part (the
    adjoint squeezer is the squeezer at ``(-mu, -nu)``).
    """
    if direction not in ("inverse", "forward"):
        raise InvalidArgumentError(f"direction must be 'inverse' or 'forward', got {direction!r}")
    ch = math.cosh(g.r)
    sh = math.sinh(g.r)
    c, s = g.cos_theta, g.sin_theta
    half_sin2 = s * c

    a_part = np.array(
        [
            [ch, 0.0, 0.0],
            [0.0, s * s + c * c * ch, half_sin2 * (ch - 1.0)],
            [0.0, half_sin2 * (ch - 1.0), s * s * ch + c * c],
        ]
    )
    adag_part = -np.array(
        [
            [0.0, c * sh, s * sh],
            [c * sh, 0.0, 0.0],
            [s * sh, 0.0, 0.0],
        ]
    )
    if direction == "forward":
        adag_part = -adag_part
    return BogoliubovTable(a_part=a_part, adag_part=adag_part, direction=direction)


def compose_bogoliubov(outer, inner):
    """Table for applying ``inner`` to the operators produced by ``outer``.

    If ``outer`` gives ``a_k -> A a + B a^+`` and ``inner`` gives
    ``a_i -> C a + D a^+`` (coefficients real), the composite is
    ``a_k -> (AC + BD) a + (AD + BC) a^+``.
    """
    A, B = outer.a_part, outer.adag_part
    C, D = inner.a_part, inner.adag_part
    return BogoliubovTable(
        a_part=A @ C + B @ np.conj(D),
        adag_part=A @ D + B @ np.conj(C),
        direction="composite",
    )
