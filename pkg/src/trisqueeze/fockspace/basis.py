"""Truncated 3-mode number basis, states and mode operators.

Basis ordering is "n1-major": ``|n1, n2, n3>`` sits at flat index
``(n1 * d + n2) * d + n3`` with ``d = n_max + 1``, i.e. n1 varies slowest.
:func:`flat_index` and :func:`multi_index` are the only place that mapping
is spelled out.
"""

from dataclasses import dataclass, field
import json
import math

import numpy as np
import scipy.sparse as sp

from ..errors import InvalidArgumentError

DEFAULT_BUDGET = 64**3


@dataclass(frozen=True)
class FockCutoff:
    """Per-mode photon cap ``n_max``; local dimension ``d = n_max + 1``."""

    n_max: int
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if isinstance(self.n_max, bool) or not isinstance(self.n_max, (int, np.integer)):
            raise InvalidArgumentError(f"n_max must be an integer, got {self.n_max!r}")
        if self.n_max < 1:
            raise InvalidArgumentError(f"n_max must be >= 1, got {self.n_max}")
        if (self.n_max + 1) ** 3 > self.budget:
            raise InvalidArgumentError(
                f"cutoff {self.n_max} gives dimension {(self.n_max + 1) ** 3} "
                f"above the budget {self.budget}"
            )

    @property
    def d(self):
        return self.n_max + 1

    @property
    def dim(self):
        return self.d**3

    @property
    def shape(self):
        return (self.d, self.d, self.d)


def as_cutoff(cutoff):
    """Accept a :class:`FockCutoff` or a bare ``n_max`` integer."""
    if isinstance(cutoff, FockCutoff):
        return cutoff
    return FockCutoff(int(cutoff))


def flat_index(cutoff, n1, n2, n3):
    d = as_cutoff(cutoff).d
    for n in (n1, n2, n3):
        if not 0 <= n < d:
            raise InvalidArgumentError(f"occupation {n} outside 0..{d - 1}")
    return (n1 * d + n2) * d + n3


def multi_index(cutoff, index):
    d = as_cutoff(cutoff).d
    n1, rest = divmod(int(index), d * d)
    n2, n3 = divmod(rest, d)
    return n1, n2, n3


@dataclass(frozen=True, eq=False)
class FockState:
    """Complex amplitudes over the truncated basis (flat, n1-major)."""

    cutoff: FockCutoff
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != self.cutoff.dim:
            raise InvalidArgumentError(
                f"expected {self.cutoff.dim} amplitudes for cutoff {self.cutoff.n_max}, got {amps.size}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def tensor(self):
        """Read-only ``(d, d, d)`` view indexed ``[n1, n2, n3]``."""
        return self.amplitudes.reshape(self.cutoff.shape)

    @property
    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    @property
    def tail_mass(self):
        """Probability on basis states with any occupation equal to ``n_max``."""
        p = np.abs(self.tensor) ** 2
        inner = p[:-1, :-1, :-1].sum()
        return float(max(p.sum() - inner, 0.0))

    def amplitude(self, n1, n2, n3):
        return complex(self.tensor[n1, n2, n3])

    def to_json_dict(self):
        return {
            "cutoff": self.cutoff.n_max,
            "ordering": "n1-major",
            "amplitudes": [[float(z.real) + 0.0, float(z.imag) + 0.0] for z in self.amplitudes],
            "tail_mass": self.tail_mass,
        }

    def to_json(self, **extra):
        payload = self.to_json_dict()
        payload.update(extra)
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text):
        payload = json.loads(text) if isinstance(text, str) else text
        if payload.get("ordering") != "n1-major":
            raise InvalidArgumentError(f"unsupported ordering {payload.get('ordering')!r}")
        amps = np.array([complex(re, im) for re, im in payload["amplitudes"]])
        return cls(FockCutoff(int(payload["cutoff"])), amps)


def vacuum(cutoff):
    cutoff = as_cutoff(cutoff)
    amps = np.zeros(cutoff.dim, dtype=np.complex128)
    amps[0] = 1.0
    return FockState(cutoff, amps)


def basis_state(cutoff, n1, n2, n3):
    cutoff = as_cutoff(cutoff)
    amps = np.zeros(cutoff.dim, dtype=np.complex128)
    amps[flat_index(cutoff, n1, n2, n3)] = 1.0
    return FockState(cutoff, amps)


def coherent_state(cutoff, z1, z2, z3):
    """Product coherent state, raw truncation of each single-mode series."""
    cutoff = as_cutoff(cutoff)
    n = np.arange(cutoff.d)
    log_fact = np.array([0.5 * math.lgamma(k + 1) for k in n])
    factors = []
    for z in (z1, z2, z3):
        z = complex(z)
        if z == 0:
            f = np.zeros(cutoff.d, dtype=np.complex128)
            f[0] = 1.0
        else:
            f = np.exp(-0.5 * abs(z) ** 2 + n * np.log(abs(z)) - log_fact) * np.exp(1j * n * np.angle(z))
        factors.append(f)
    psi = np.einsum("i,j,k->ijk", *factors)
    return FockState(cutoff, psi)


def fidelity(a, b):
    """``|<a|b>|^2`` without renormalising either vector."""
    if a.cutoff.n_max != b.cutoff.n_max:
        raise InvalidArgumentError("states live on different cutoffs")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------


class OperatorExpr:
    """Sparse operator on the truncated space, closed under + - * and scalars."""

    def __init__(self, matrix, cutoff, label="expr"):
        self.matrix = sp.csr_matrix(matrix, dtype=np.complex128)
        self.cutoff = cutoff
        self.label = label

    def _coerce(self, other):
        if isinstance(other, OperatorExpr):
            if other.cutoff.n_max != self.cutoff.n_max:
                raise InvalidArgumentError("operators live on different cutoffs")
            return other.matrix
        return None

    def __add__(self, other):
        m = self._coerce(other)
        if m is None:
            return NotImplemented
        return OperatorExpr(self.matrix + m, self.cutoff, f"({self.label} + {other.label})")

    def __sub__(self, other):
        m = self._coerce(other)
        if m is None:
            return NotImplemented
        return OperatorExpr(self.matrix - m, self.cutoff, f"({self.label} - {other.label})")

    def __mul__(self, other):
        m = self._coerce(other)
        if m is not None:
            return OperatorExpr(self.matrix @ m, self.cutoff, f"{self.label} {other.label}")
        if np.isscalar(other):
            return OperatorExpr(self.matrix * other, self.cutoff, f"{other}*{self.label}")
        return NotImplemented

    __matmul__ = __mul__

    def __rmul__(self, other):
        if np.isscalar(other):
            return OperatorExpr(self.matrix * other, self.cutoff, f"{other}*{self.label}")
        return NotImplemented

    def __neg__(self):
        return OperatorExpr(-self.matrix, self.cutoff, f"-{self.label}")

    def dag(self):
        return OperatorExpr(self.matrix.conj().T, self.cutoff, f"({self.label})^+")

    def apply(self, state):
        if state.cutoff.n_max != self.cutoff.n_max:
            raise InvalidArgumentError(
                f"operator on cutoff {self.cutoff.n_max} applied to state on cutoff {state.cutoff.n_max}"
            )
        return FockState(state.cutoff, self.matrix @ state.amplitudes)

    def __repr__(self):
        return f"OperatorExpr({self.label}, cutoff={self.cutoff.n_max})"


class ModeOperator(OperatorExpr):
    """``a_i``, ``a_i^+`` or ``a_i^+ a_i`` embedded in the 3-mode space."""

    def __init__(self, matrix, cutoff, kind, mode):
        label = {"annihilation": f"a{mode}", "creation": f"a{mode}^+", "number": f"n{mode}"}[kind]
        super().__init__(matrix, cutoff, label)
        self.kind = kind
        self.mode = mode


def _local_lowering(d):
    return sp.diags(np.sqrt(np.arange(1, d, dtype=np.float64)), 1, shape=(d, d), format="csr")


def build_mode_operator(cutoff, kind, mode):
    """Kronecker embedding of the single-mode lowering/raising/number matrix."""
    cutoff = as_cutoff(cutoff)
    if mode not in (1, 2, 3):
        raise InvalidArgumentError(f"mode must be 1, 2 or 3, got {mode!r}")
    if kind not in ("annihilation", "creation", "number"):
        raise InvalidArgumentError(f"unknown operator kind {kind!r}")
    d = cutoff.d
    low = _local_lowering(d)
    if kind == "annihilation":
        local = low
    elif kind == "creation":
        local = low.T.conj().tocsr()
    else:
        local = sp.diags(np.arange(d, dtype=np.float64), 0, format="csr")
    eye = sp.identity(d, format="csr")
    factors = [eye, eye, eye]
    factors[mode - 1] = local
    matrix = sp.kron(sp.kron(factors[0], factors[1]), factors[2], format="csr")
    return ModeOperator(matrix, cutoff, kind, mode)


def mode_operators(cutoff):
    """``(a1, a2, a3)`` annihilation operators for ``cutoff``."""
    return tuple(build_mode_operator(cutoff, "annihilation", m) for m in (1, 2, 3))


def expectation(state, op):
    """``<state|op|state>`` as a complex number."""
    matrix = op.matrix if isinstance(op, OperatorExpr) else op
    if matrix.shape != (state.cutoff.dim, state.cutoff.dim):
        raise InvalidArgumentError(
            f"operator shape {matrix.shape} does not match state dimension {state.cutoff.dim}"
        )
    psi = state.amplitudes
    return complex(np.vdot(psi, matrix @ psi))
