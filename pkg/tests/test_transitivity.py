import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import circle, ellipse
from pvloops import (
    Bump,
    NotAreaTangentError,
    eval_h,
    eval_X,
    flow,
    frame,
    lambda_from_tangent,
    reconstruct_hamiltonian,
)
from pvloops.samples import random_area_tangent, random_curve
from pvloops.spectral import grid, spectral_derivative
from pvloops.transitivity import flux_density


def test_lambda_of_hamiltonian_field_is_restriction():
    c = ellipse(256, 1.2, 0.9)
    h = Bump((0.8, 0.3), 2.0, 1.0, 1.0)
    lam = lambda_from_tangent(c, eval_X(h, c.points))
    hf = eval_h(h, c.points)
    assert np.max(np.abs(lam - (hf - hf.mean()))) < 1e-8


def test_tangential_field_has_no_flux():
    c = ellipse(64)
    u = 0.7 * frame(c).tangents
    assert np.max(np.abs(lambda_from_tangent(c, u))) < 1e-14


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_lambda_differentiates_back(seed):
    rng = np.random.default_rng(seed)
    c = random_curve(rng, 128)
    u = random_area_tangent(rng, c)
    lam = lambda_from_tangent(c, u)
    assert np.max(np.abs(spectral_derivative(lam) - flux_density(c, u))) < 1e-10


def test_reconstruct_dictionary_field():
    c = circle(256)
    g = Bump((0.9, 0.2), 0.7, 1.0, 8.0)
    res = reconstruct_hamiltonian(c, eval_X(g, c.points))
    assert res.residual < 1e-6 and res.ok


def test_reconstruct_normal_field_and_first_order_flow():
    c = circle(256)
    t = grid(256)
    rho = np.cos(2 * t)
    u = rho[:, None] * frame(c).normals
    res = reconstruct_hamiltonian(c, u)
    assert res.residual < 1e-6
    errs = []
    for eps in (1e-2, 5e-3):
        moved = flow(res.hamiltonian, c.points, eps, eps / 8)
        errs.append(np.max(np.abs(moved - (c.points + eps * u))))
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.1)


def test_reconstruct_rejects_area_change():
    c = circle(64)
    with pytest.raises(NotAreaTangentError):
        reconstruct_hamiltonian(c, frame(c).normals)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_reconstruct_random_fields(seed):
    rng = np.random.default_rng(seed)
    c = random_curve(rng, 256)
    assert reconstruct_hamiltonian(c, random_area_tangent(rng, c)).residual < 1e-6
