"""Data behind the variance-vs-mu and uncertainty-vs-r curves."""

import math

from .squeezing import uncertainty_product, variance_closed_form

FIG1_NU = (0.0, 0.5)
FIG1_MU_STEPS = 100  # mu in [0, 1], step 0.01
FIG2_THETAS = (
    ("0", 0.0),
    ("pi8", math.pi / 8),
    ("pi4", math.pi / 4),
    ("3pi8", 3 * math.pi / 8),
    ("pi2", math.pi / 2),
)
FIG2_R_STEPS = 150  # r in [0, 1.5], step 0.01

FIG1_COLUMNS = ("mu", "var_x1_nu0", "var_x2_nu0", "var_x1_nu05", "var_x2_nu05")
FIG2_COLUMNS = ("r",) + tuple(f"product_theta_{label}" for label, _ in FIG2_THETAS)


def fig1_rows():
    rows = []
    for k in range(FIG1_MU_STEPS + 1):
        mu = k / 100
        row = [mu]
        for nu in FIG1_NU:
            st = variance_closed_form(mu, nu)
            row += [st.var_x1, st.var_x2]
        rows.append(tuple(row))
    return rows


def fig2_rows():
    rows = []
    for k in range(FIG2_R_STEPS + 1):
        r = k / 100
        row = [r]
        for _, theta in FIG2_THETAS:
            row.append(uncertainty_product(r * math.cos(theta), r * math.sin(theta)))
        rows.append(tuple(row))
    return rows
