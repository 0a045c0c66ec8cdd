import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from pvloops.spectral import (
    TrigInterpolant,
    grid,
    periodic_antiderivative,
    periodic_quadrature,
    shift,
    spectral_derivative,
    upsample,
)


def test_quadrature_examples():
    for n in (4, 16, 64):
        assert abs(periodic_quadrature(np.ones(n)) - 2 * np.pi) < 1e-14
    t = grid(4)
    assert abs(periodic_quadrature(np.cos(t))) < 1e-14
    t = grid(8)
    assert abs(periodic_quadrature(np.cos(t) ** 2) - np.pi) < 1e-14


def test_derivative_of_trig_poly():
    t = grid(32)
    f = np.sin(3 * t) + 0.5 * np.cos(t)
    df = 3 * np.cos(3 * t) - 0.5 * np.sin(t)
    assert np.max(np.abs(spectral_derivative(f) - df)) < 1e-12
    assert np.max(np.abs(spectral_derivative(f, 2) + 9 * np.sin(3 * t) + 0.5 * np.cos(t))) < 1e-11


def test_interpolant_nyquist_term_is_cosine():
    n = 16
    t = grid(n)
    v = np.cos(n // 2 * t)
    f = TrigInterpolant(v)
    s = np.linspace(0, 2 * np.pi, 7)
    # the real interpolant of the alternating sequence is cos(N t / 2)
    assert np.allclose(f(s), np.cos(n // 2 * s), atol=1e-13)


def test_jet_matches_derivative():
    t = grid(32)
    f = TrigInterpolant(np.c_[np.cos(t), np.sin(2 * t)])
    s = np.array([0.1, 1.7, 4.0])
    v, d1, d2 = f.jet(s)
    assert np.allclose(d1, f.derivative(s, 1))
    assert np.allclose(d2, np.c_[-np.cos(s), -4 * np.sin(2 * s)], atol=1e-12)
    assert np.allclose(v, f(s))


def test_antiderivative_zero_mean_input():
    t = grid(64)
    F = periodic_antiderivative(np.cos(t))
    assert np.allclose(F - F.mean(), np.sin(t) - np.sin(t).mean(), atol=1e-13)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 5), st.floats(-3, 3))
def test_shift_is_exact_for_band_limited(j, tau):
    t = grid(32)
    assert np.allclose(shift(np.sin(j * t), tau), np.sin(j * (t + tau)), atol=1e-12)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_upsample_preserves_samples(seed):
    v = np.random.default_rng(seed).normal(size=16)
    up = upsample(v, 64)
    assert np.allclose(up[::4], v, atol=1e-13)
