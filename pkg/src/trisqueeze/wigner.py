"""Wigner function of the 3-mode squeezed vacuum.

Normalisation follows the quadratures ``Q = (a + a+)/sqrt 2``: the 3-mode
vacuum is ``exp(-|q|^2 - |p|^2) / pi^3``.  The squeezed vacuum is the
Gaussian ``exp(-q^T expm(2L) q - p^T expm(-2L) p) / pi^3``.

The numerical route evaluates ``<psi| D(alpha) Pi D(alpha)+ |psi> / pi^3``
on a truncated Fock state, with ``alpha_i = (q_i + i p_i)/sqrt 2`` and
``Pi`` the total photon-number parity.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import InvalidArgumentError, PrecisionError
from .fockspace import displace
from .genmat import build_generator, exp_closed_form

AXES = ("q1", "q2", "q3", "p1", "p2", "p3")
PEAK = 1.0 / math.pi**3


@dataclass(frozen=True)
class PhasePoint:
    q: tuple
    p: tuple

    def __post_init__(self):
        q = tuple(float(x) for x in self.q)
        p = tuple(float(x) for x in self.p)
        if len(q) != 3 or len(p) != 3:
            raise InvalidArgumentError("q and p must have three components")
        if not all(math.isfinite(x) for x in q + p):
            raise InvalidArgumentError("phase-space coordinates must be finite")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)

    @classmethod
    def origin(cls):
        return cls((0.0, 0.0, 0.0), (0.0, 0.0, 0.0))


def _quadratic_forms(mu, nu):
    g2 = build_generator(2 * mu, 2 * nu)
    return exp_closed_form(g2, +1), exp_closed_form(g2, -1)


def wigner_closed_form(mu, nu, pt):
    fq, fp = _quadratic_forms(mu, nu)
    q = np.array(pt.q)
    p = np.array(pt.p)
    return PEAK * math.exp(-(q @ fq @ q) - (p @ fp @ p))


def wigner_numeric(state, pt, tol=1e-12, max_tail=1e-8, max_shifted_tail=1e-6):
    """Displaced-parity Wigner function of a truncated Fock state.

    Raises :class:`PrecisionError` when the input carries more than
    ``max_tail`` probability on the cutoff boundary, or the displaced state
    more than ``max_shifted_tail``.
    """
    if state.tail_mass > max_tail:
        raise PrecisionError(f"input tail mass {state.tail_mass:.3g} exceeds {max_tail:g}")
    alpha = (np.array(pt.q) + 1j * np.array(pt.p)) / math.sqrt(2)
    shifted = displace(state, -alpha, tol=tol)
    if shifted.tail_mass > max_shifted_tail:
        raise PrecisionError(
            f"displacement by |alpha| = {np.linalg.norm(alpha):.3g} pushes "
            f"{shifted.tail_mass:.3g} probability onto the cutoff boundary"
        )
    d = state.cutoff.d
    n = np.arange(d)
    parity = (-1.0) ** (n[:, None, None] + n[None, :, None] + n[None, None, :])
    value = np.sum(parity * np.abs(shifted.tensor) ** 2)
    return float(PEAK * value)


def wigner_marginal_norm(mu, nu):
    """Analytic phase-space integral of the closed-form Wigner function."""
    fq, fp = _quadratic_forms(mu, nu)
    return PEAK * math.pi**1.5 / math.sqrt(np.linalg.det(fq)) * math.pi**1.5 / math.sqrt(np.linalg.det(fp))


@dataclass(frozen=True)
class AxisSpec:
    name: str
    lo: float
    hi: float
    count: int

    def values(self):
        if self.count == 1:
            return np.array([self.lo])
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class WignerGrid:
    """Closed-form values on a rectilinear sweep.

    ``values`` has one axis per swept coordinate, in sweep order (row-major:
    the first swept axis varies slowest).  ``fixed`` holds the remaining
    coordinates.
    """

    axes: tuple
    fixed: dict
    values: np.ndarray

    def rows(self):
        """Yield ``(coords_by_name, w)`` in row-major order."""
        grids = [ax.values() for ax in self.axes]
        for idx in np.ndindex(*self.values.shape):
            coords = {ax.name: float(g[i]) for ax, g, i in zip(self.axes, grids, idx)}
            coords.update(self.fixed)
            yield coords, float(self.values[idx])


def parse_axis(text):
    """Parse ``AXIS=min:max:count``."""
    try:
        name, rng = text.split("=", 1)
        lo, hi, count = rng.split(":")
        spec = AxisSpec(name.strip(), float(lo), float(hi), int(count))
    except ValueError as exc:
        raise InvalidArgumentError(f"bad sweep spec {text!r}; expected AXIS=min:max:count") from exc
    return spec


def wigner_grid(mu, nu, axes, fixed=None):
    """Evaluate the closed form on a grid of at most two swept axes.

    Parameters
    ----------
    axes : sequence of AxisSpec or str
        Swept coordinates (``"q1=-2:2:41"`` strings are parsed).
    fixed : dict, optional
        Values of unswept coordinates; missing ones are 0.
    """
    axes = tuple(parse_axis(a) if isinstance(a, str) else a for a in axes)
    fixed = dict(fixed or {})
    if len(axes) > 2:
        raise InvalidArgumentError("at most two swept axes are supported")
    names = [a.name for a in axes]
    if len(set(names)) != len(names):
        raise InvalidArgumentError("duplicate swept axis")
    for a in axes:
        if a.name not in AXES:
            raise InvalidArgumentError(f"unknown axis {a.name!r}; choose from {AXES}")
        if a.count < 1 or (a.count == 1 and a.lo != a.hi):
            raise InvalidArgumentError(f"axis {a.name} needs count >= 2 (or a single point with min == max)")
        if not (math.isfinite(a.lo) and math.isfinite(a.hi)):
            raise InvalidArgumentError(f"axis {a.name} has non-finite bounds")
    for k, v in fixed.items():
        if k not in AXES:
            raise InvalidArgumentError(f"unknown fixed coordinate {k!r}")
        if k in names:
            raise InvalidArgumentError(f"coordinate {k} is both swept and fixed")
        if not math.isfinite(float(v)):
            raise InvalidArgumentError(f"fixed coordinate {k} is not finite")
    full_fixed = {k: float(fixed.get(k, 0.0)) for k in AXES if k not in names}

    fq, fp = _quadratic_forms(mu, nu)
    form = np.zeros((6, 6))
    form[:3, :3] = fq
    form[3:, 3:] = fp

    grids = np.meshgrid(*[a.values() for a in axes], indexing="ij")
    shape = grids[0].shape if grids else ()
    pts = np.empty(shape + (6,))
    for i, name in enumerate(AXES):
        if name in names:
            pts[..., i] = grids[names.index(name)]
        else:
            pts[..., i] = full_fixed[name]
    expo = np.einsum("...i,ij,...j->...", pts, form, pts)
    values = PEAK * np.exp(-expo)
    return WignerGrid(axes=axes, fixed=full_fixed, values=values)
