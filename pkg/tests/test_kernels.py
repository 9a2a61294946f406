import numpy as np
import pytest

from trisqueeze import _kernels
from trisqueeze.fockspace import FockCutoff, build_mode_operator, build_s3_generator

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


def _random_tensor(rng, d):
    return np.ascontiguousarray(rng.normal(size=(d, d, d)) + 1j * rng.normal(size=(d, d, d)))


@pytest.mark.parametrize("n_max", [1, 2, 7])
@pytest.mark.parametrize("mu,nu", [(0.8, 0.5), (-0.3, 0.0), (0.0, 1.1)])
def test_squeeze_numpy_matches_sparse(rng, n_max, mu, nu):
    cut = FockCutoff(n_max)
    k = build_s3_generator(cut, mu, nu)
    psi = _random_tensor(rng, cut.d)
    out = np.empty_like(psi)
    _kernels.squeeze_matvec_numpy(psi, mu, nu, out)
    assert np.abs(out.ravel() - k @ psi.ravel()).max() < 1e-13


@needs_numba
@pytest.mark.parametrize("n_max", [1, 2, 7])
def test_squeeze_numba_matches_numpy(rng, n_max):
    d = n_max + 1
    psi = _random_tensor(rng, d)
    a = np.empty_like(psi)
    b = np.empty_like(psi)
    _kernels.squeeze_matvec_numpy(psi, 0.7, -0.2, a)
    _kernels.squeeze_matvec_numba(psi, 0.7, -0.2, b)
    assert np.abs(a - b).max() < 1e-13


def _displacement_generator(cut, beta):
    g = None
    for mode, b in enumerate(beta, start=1):
        a = build_mode_operator(cut, "annihilation", mode).matrix
        term = b * a.T - np.conj(b) * a
        g = term if g is None else g + term
    return g


@pytest.mark.parametrize("impl", ["numpy", pytest.param("numba", marks=needs_numba)])
def test_displace_kernel_matches_sparse(rng, impl):
    cut = FockCutoff(6)
    beta = np.array([0.3 + 0.1j, -0.2j, 0.5])
    psi = _random_tensor(rng, cut.d)
    out = np.empty_like(psi)
    fn = getattr(_kernels, f"displace_matvec_{impl}")
    fn(psi, beta, out)
    ref = _displacement_generator(cut, beta) @ psi.ravel()
    assert np.abs(out.ravel() - ref).max() < 1e-13


def test_backend_flag_is_consistent():
    if _kernels.USE_NUMBA:
        assert _kernels.squeeze_matvec is _kernels.squeeze_matvec_numba
        assert _kernels.BACKEND == "numba"
    else:
        assert _kernels.squeeze_matvec is _kernels.squeeze_matvec_numpy
        assert _kernels.BACKEND == "numpy"


def test_disable_flag_selects_numpy(tmp_path):
    import os
    import subprocess
    import sys

    env = dict(os.environ, TRISQUEEZE_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from trisqueeze import _kernels; print(_kernels.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "numpy"
