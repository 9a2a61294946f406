"""Cross-backend acceptance checks, shared by ``selfcheck`` and the test suite.

Each check returns a :class:`CheckResult`; exceptions raised inside a check
(for example a :class:`TruncationError` from an injected small cutoff) are
caught and reported as failures with the message as diagnostic.
"""

from dataclasses import dataclass, field
import math
import time

import numpy as np

from . import figures
from .errors import TrisqueezeError
from .fockspace import (
    FockCutoff,
    apply_s3_normal_ordered,
    apply_s3_numeric,
    auto_cutoff,
    basis_state,
    check_eigen_relations,
    coherent_state,
    fidelity,
    s3_on_coherent,
    squeezed_vacuum_analytic,
    vacuum,
)
from .genmat import build_generator, exp_closed_form, expm_oracle
from .squeezing import (
    two_mode_baseline,
    two_mode_fock,
    uncertainty_product,
    variance_closed_form,
    variance_fock_numeric,
    variance_matrix_sum,
)
from .wigner import PhasePoint, wigner_closed_form, wigner_marginal_norm, wigner_numeric

GENMAT_GRID = (-1.5, -0.75, 0.0, 0.75, 1.5)
STATE_PARAMS = ((0.6, 0.0), (0.0, 0.6), (0.6, 0.45), (0.3, 0.8))
NORMAL_ORDER_PARAMS = ((0.4, 0.3), (0.56, 0.42), (0.7, 0.0), (0.0, 0.7))
LOW_FOCK = tuple((n1, n2, n3) for n1 in range(3) for n2 in range(3) for n3 in range(3) if n1 + n2 + n3 <= 2)
VARIANCE_MU = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)
VARIANCE_NU = (0.0, 0.25, 0.5)
WIGNER_PARAMS = ((0.5, 0.3), (0.0, 0.8), (0.7, 0.0))
TWO_MODE_LAMBDAS = (0.3, 0.6)

STATE_CUTOFF_LIMIT = 32
STATE_EPS = 1e-10
EIGEN_EPS = 1e-16
NORMAL_ORDER_EPS = 1e-22
WIGNER_MIN_CUTOFF = 28
WIGNER_EPS = 1e-12
WIGNER_POINTS = 20
WIGNER_SEED = 20240607


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    residual: float = float("nan")
    tolerance: float = float("nan")
    seconds: float = 0.0
    details: dict = field(default_factory=dict)
    message: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.number:2d} {self.name}: residual={self.residual:.3g} tol={self.tolerance:.3g} ({self.seconds:.2f}s)"
        if self.message:
            text += f" -- {self.message}"
        return text

    def to_dict(self):
        return {
            "number": self.number,
            "name": self.name,
            "passed": bool(self.passed),
            "residual": _finite_or_none(self.residual),
            "tolerance": _finite_or_none(self.tolerance),
            "seconds": self.seconds,
            "message": self.message,
            "details": self.details,
        }


def _finite_or_none(x):
    return float(x) if math.isfinite(x) else None


def _cutoff(r, eps, override):
    return FockCutoff(int(override)) if override is not None else FockCutoff(auto_cutoff(r, eps))


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def check_matrix_exponential(cutoff=None):
    worst = 0.0
    worst_inv = 0.0
    for mu in GENMAT_GRID:
        for nu in GENMAT_GRID:
            g = build_generator(mu, nu)
            ep = exp_closed_form(g, +1)
            en = exp_closed_form(g, -1)
            worst = max(worst, np.abs(ep - expm_oracle(g.matrix)).max(), np.abs(en - expm_oracle(-g.matrix)).max())
            worst_inv = max(worst_inv, np.abs(ep @ en - np.eye(3)).max())
    residual = max(worst, worst_inv)
    return dict(
        passed=residual < 1e-12,
        residual=residual,
        tolerance=1e-12,
        details={"closed_vs_oracle": worst, "inversion": worst_inv},
        max_seconds=1.0,
    )


def check_state_equivalence(cutoff=None, params=STATE_PARAMS):
    worst = 0.0
    details = {}
    ok = True
    for mu, nu in params:
        cut = _cutoff(math.hypot(mu, nu), STATE_EPS, cutoff)
        if cut.n_max > STATE_CUTOFF_LIMIT:
            ok = False
        analytic = squeezed_vacuum_analytic(cut, mu, nu)
        numeric = apply_s3_numeric(vacuum(cut), mu, nu)
        infid = 1.0 - fidelity(analytic, numeric)
        details[f"{mu},{nu}"] = {"cutoff": cut.n_max, "infidelity": infid}
        worst = max(worst, infid)
    return dict(passed=ok and worst < 1e-8, residual=worst, tolerance=1e-8, details=details, max_seconds=60.0)


def check_eigen(cutoff=None, params=STATE_PARAMS):
    worst = 0.0
    details = {}
    for mu, nu in params:
        cut = _cutoff(math.hypot(mu, nu), EIGEN_EPS, cutoff)
        state = squeezed_vacuum_analytic(cut, mu, nu)
        res = check_eigen_relations(state, mu, nu)
        details[f"{mu},{nu}"] = {"cutoff": cut.n_max, "residuals": list(res), "tail_mass": state.tail_mass}
        worst = max(worst, *res)
    return dict(passed=worst < 1e-6, residual=worst, tolerance=1e-6, details=details)


def check_normal_ordered(cutoff=None):
    worst = 0.0
    worst_printed = math.inf
    details = {}
    for mu, nu in NORMAL_ORDER_PARAMS:
        cut = _cutoff(math.hypot(mu, nu), NORMAL_ORDER_EPS, cutoff)
        local = 0.0
        local_printed = 0.0
        for n in LOW_FOCK:
            inp = basis_state(cut, *n)
            ref = apply_s3_numeric(inp, mu, nu).amplitudes
            local = max(local, np.linalg.norm(apply_s3_normal_ordered(inp, mu, nu).amplitudes - ref))
            local_printed = max(
                local_printed, np.linalg.norm(apply_s3_normal_ordered(inp, mu, nu, sin_partner=1).amplitudes - ref)
            )
        details[f"{mu},{nu}"] = {"cutoff": cut.n_max, "error": local, "error_sin_partner_1": local_printed}
        worst = max(worst, local)
        if nu != 0.0:
            worst_printed = min(worst_printed, local_printed)
    # the a1-partner variant must be clearly wrong wherever sin(theta) != 0
    return dict(
        passed=worst < 1e-8 and worst_printed > 1e-3,
        residual=worst,
        tolerance=1e-8,
        details=details,
        message=f"sin_partner=1 variant min error {worst_printed:.3g}",
    )


def check_coherent(cutoff=None):
    z = (0.3, 0.2, 0.1)
    mu, nu = 0.5, 0.4
    cut = FockCutoff(int(cutoff) if cutoff is not None else 24)
    built = s3_on_coherent(*z, mu, nu, cut)
    numeric = apply_s3_numeric(coherent_state(cut, *z), mu, nu)
    infid = 1.0 - fidelity(built, numeric)
    return dict(passed=infid < 1e-7, residual=infid, tolerance=1e-7, details={"cutoff": cut.n_max})


def check_variance_pathways(cutoff=None):
    worst = 0.0
    details = {}
    for mu in VARIANCE_MU:
        for nu in VARIANCE_NU:
            cf = variance_closed_form(mu, nu)
            ms = variance_matrix_sum(mu, nu)
            cut = _cutoff(math.hypot(mu, nu), STATE_EPS, cutoff)
            fk = variance_fock_numeric(mu, nu, cutoff=cut)
            vals1 = (cf.var_x1, ms.var_x1, fk.var_x1)
            vals2 = (cf.var_x2, ms.var_x2, fk.var_x2)
            spread = max(max(vals1) - min(vals1), max(vals2) - min(vals2))
            details[f"{mu},{nu}"] = {"spread": spread, "cutoff": cut.n_max}
            worst = max(worst, spread)
    zero = [variance_closed_form(0, 0), variance_matrix_sum(0, 0), variance_fock_numeric(0, 0, cutoff=cutoff or 1)]
    zero_err = max(max(abs(s.var_x1 - 0.25), abs(s.var_x2 - 0.25)) for s in zero)
    details["origin_error"] = zero_err
    return dict(passed=worst < 1e-7 and zero_err < 1e-12, residual=worst, tolerance=1e-7, details=details)


def check_uncertainty(cutoff=None):
    worst_deficit = -math.inf
    origin_err = 0.0
    identity_err = 0.0
    for mu in VARIANCE_MU:
        for nu in VARIANCE_NU:
            closed = uncertainty_product(mu, nu)
            for st in (variance_closed_form(mu, nu), variance_matrix_sum(mu, nu)):
                identity_err = max(identity_err, abs(st.product - closed))
                if mu == 0 and nu == 0:
                    origin_err = max(origin_err, abs(st.product - 0.25))
                else:
                    worst_deficit = max(worst_deficit, 0.25 - st.product)
    bound_ok = worst_deficit < 0 and origin_err < 1e-12 and identity_err < 1e-12

    rows = figures.fig2_rows()
    pi4 = figures.FIG2_COLUMNS.index("product_theta_pi4")
    violations = [row[0] for row in rows if row[pi4] > min(row[1:]) + 1e-15]
    min_ok = not violations
    msg = ""
    if violations:
        msg = (
            f"theta=pi/4 is not the minimum over the theta set for {len(violations)} of {len(rows)} r values "
            f"(first at r={violations[0]:.2f})"
        )
    return dict(
        passed=bound_ok and min_ok,
        residual=max(worst_deficit, 0.0),
        tolerance=1e-12,
        details={"bound_ok": bound_ok, "origin_error": origin_err, "product_identity_error": identity_err, "pi4_minimum_ok": min_ok, "violating_r": violations},
        message=msg,
    )


def check_two_mode(cutoff=None):
    worst = 0.0
    mode3 = 0.0
    for lam in TWO_MODE_LAMBDAS:
        vx, vp, m3 = two_mode_fock(lam, cutoff=cutoff)
        ex, ep = two_mode_baseline(lam)
        worst = max(worst, abs(vx - ex), abs(vp - ep))
        mode3 = max(mode3, m3)
        cut = _cutoff(lam, STATE_EPS, cutoff)
        analytic = squeezed_vacuum_analytic(cut, lam, 0.0).tensor
        mode3 = max(mode3, float(np.sum(np.abs(analytic[:, :, 1:]) ** 2)))
    return dict(
        passed=worst < 1e-8 and mode3 == 0.0,
        residual=worst,
        tolerance=1e-8,
        details={"mode3_mass": mode3},
    )


def check_wigner(cutoff=None):
    rng = np.random.default_rng(WIGNER_SEED)
    worst = 0.0
    norm_err = 0.0
    details = {}
    for mu, nu in WIGNER_PARAMS:
        if cutoff is not None:
            cut = FockCutoff(int(cutoff))
        else:
            cut = FockCutoff(max(WIGNER_MIN_CUTOFF, auto_cutoff(math.hypot(mu, nu), WIGNER_EPS)))
        state = squeezed_vacuum_analytic(cut, mu, nu)
        local = 0.0
        for _ in range(WIGNER_POINTS):
            pt = PhasePoint(rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3))
            local = max(local, abs(wigner_closed_form(mu, nu, pt) - wigner_numeric(state, pt)))
        n_err = abs(wigner_marginal_norm(mu, nu) - 1.0)
        details[f"{mu},{nu}"] = {"cutoff": cut.n_max, "max_abs_error": local, "norm_error": n_err}
        worst = max(worst, local)
        norm_err = max(norm_err, n_err)
    return dict(
        passed=worst < 2e-6 and norm_err < 1e-12,
        residual=worst,
        tolerance=2e-6,
        details=details,
        max_seconds=120.0,
    )


def check_figures(cutoff=None):
    rows1 = figures.fig1_rows()
    col = figures.FIG1_COLUMNS
    x1_nu0 = [r[col.index("var_x1_nu0")] for r in rows1]
    x1_nu05 = [r[col.index("var_x1_nu05")] for r in rows1]
    mus = [r[0] for r in rows1]
    increasing = all(b > a for a, b in zip(x1_nu0, x1_nu0[1:]))
    enhanced = all(b >= a for m, a, b in zip(mus, x1_nu0, x1_nu05) if m >= 0.2 - 1e-12)
    rows2 = figures.fig2_rows()
    bounded = all(v >= 0.25 - 1e-12 for row in rows2 for v in row[1:])
    problems = []
    if not increasing:
        problems.append("var_x1 at nu=0 is not increasing in mu")
    if not enhanced:
        problems.append("var_x1 at nu=0.5 is not above nu=0 for mu >= 0.2")
    if not bounded:
        problems.append("an uncertainty product is below 1/4")
    return dict(
        passed=increasing and enhanced and bounded,
        residual=0.0 if not problems else 1.0,
        tolerance=0.0,
        details={"x1_increasing": increasing, "x1_enhanced": enhanced, "products_bounded": bounded},
        message="; ".join(problems),
    )


CRITERIA = (
    (1, "matrix exponential closed form vs oracle", check_matrix_exponential),
    (2, "analytic squeezed vacuum vs numeric exp action", check_state_equivalence),
    (3, "pair-annihilation eigen-relations", check_eigen),
    (4, "normally ordered factorisation vs numeric", check_normal_ordered),
    (5, "squeezer on coherent state", check_coherent),
    (6, "variance pathways agree", check_variance_pathways),
    (7, "uncertainty bound and theta=pi/4 minimum", check_uncertainty),
    (8, "two-mode reduction at nu=0", check_two_mode),
    (9, "Wigner closed form vs displaced parity", check_wigner),
    (10, "figure data qualitative claims", check_figures),
)


def run_check(number, cutoff=None):
    for num, name, fn in CRITERIA:
        if num == number:
            break
    else:
        raise KeyError(number)
    start = time.perf_counter()
    try:
        out = fn(cutoff=cutoff)
    except TrisqueezeError as exc:
        return CheckResult(num, name, False, seconds=time.perf_counter() - start, message=f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - start
    max_seconds = out.pop("max_seconds", None)
    out["passed"] = bool(out["passed"])
    result = CheckResult(num, name, seconds=elapsed, **out)
    if max_seconds is not None and elapsed > max_seconds:
        result.passed = False
        result.message = (result.message + "; " if result.message else "") + f"runtime {elapsed:.1f}s > {max_seconds:.0f}s"
    result.details = _jsonable(result.details)
    return result


def run_all(cutoff=None):
    return [run_check(num, cutoff=cutoff) for num, _, _ in CRITERIA]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj
