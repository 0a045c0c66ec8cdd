import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import circle
from pvloops import (
    Bump,
    InvalidArgument,
    PairingSpec,
    PointVortexConfig,
    VortexLoop,
    curve_constant_hamiltonian,
    decompose_tangent,
    frame,
    momentum,
    momentum_equal,
    momentum_loop,
    momentum_point,
    momentum_pointed,
    omega_emb,
    omega_gamma,
    omega_pointed,
    omega_pointed_canonical,
    pairing,
    pairing_gram_spectrum,
    polarization_pairing,
    product_embed,
    random_dictionary,
    realize,
    reduced_form,
    transverse_hamiltonian,
)
from pvloops.geometry import DecomposedTangent, reach
from pvloops.samples import random_area_tangent
from pvloops.spectral import grid
from pvloops.symplectic import numerical_rank, polarization_scale
from pvloops.verify import random_pairing_spec

PI = np.pi


def test_omega_gamma():
    cfg = PointVortexConfig([[0, 0], [1, 0]], [2, 3])
    assert omega_gamma(cfg, [[1, 0], [0, 0]], [[0, 1], [0, 0]]) == 2
    u = np.random.default_rng(0).normal(size=(2, 2))
    assert omega_gamma(cfg, u, u) == 0
    assert omega_gamma(cfg, [[1, 0], [0, 1]], [[0, 1], [1, 0]]) == -1


def test_omega_emb():
    c = circle(64)
    fr = frame(c)
    u = np.random.default_rng(0).normal(size=(64, 2))
    assert omega_emb(c, 2 * PI, u, u) == 0
    assert abs(omega_emb(c, 2 * PI, fr.normals, fr.tangents) + 2 * PI) < 1e-13
    a, b = u.copy(), u.copy()
    a[32:] = 0
    b[:32] = 0
    assert omega_emb(c, 2 * PI, a, b) == 0


def test_omega_pointed_examples():
    c = circle(64)
    spec = PairingSpec(1.0, (0.5,), (2.0,))
    u = np.random.default_rng(1).normal(size=(64, 2))
    assert omega_pointed(c, spec, u, u) == 0
    # fields vanishing identically near the node
    t = grid(64)
    win = np.exp(-30 * (1 + np.cos(t - 0.5)))[:, None]
    bump_u, bump_v = win * [1.0, 0.3], win * [-0.2, 1.0]
    base = omega_emb(c, 2 * PI, bump_u, bump_v)
    assert abs(omega_pointed(c, spec, bump_u, bump_v) - base) < 1e-12


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_canonical_form_agrees(seed):
    rng = np.random.default_rng(seed)
    c = circle(64)
    spec = PairingSpec(rng.uniform(0.2, 2), (rng.uniform(0, 2 * PI),), (rng.uniform(0.5, 2),))
    u, v = random_area_tangent(rng, c), random_area_tangent(rng, c)
    lhs = omega_pointed(c, spec, u, v)
    rhs = omega_pointed_canonical(decompose_tangent(c, u), decompose_tangent(c, v), spec)
    assert abs(lhs - rhs) < 1e-10


def test_canonical_form_conjugate_direction():
    t = grid(64)
    spec = PairingSpec(1.0, (0.0,), (1.0,))
    lam = np.exp(-5 * (1 - np.cos(t)))
    d1 = DecomposedTangent(np.zeros(64), lam)
    d2 = DecomposedTangent(np.cos(t), np.zeros(64))
    assert omega_pointed_canonical(d1, d1, spec) == 0
    assert abs(omega_pointed_canonical(d1, d2, spec)) > 0.1


def test_pairing_examples():
    t = grid(64)
    assert abs(pairing(np.cos(t), np.cos(t), PairingSpec(1.0, (0.0,), (1.0,))) - (PI + 1)) < 1e-12
    assert abs(pairing(np.cos(t), np.ones(64), PairingSpec(2.7))) < 1e-14
    assert abs(pairing(np.sin(t), np.cos(t), PairingSpec(1.0, (0.0,), (5.0,)))) < 1e-13


def test_reduced_form():
    t = grid(64)
    rng = np.random.default_rng(2)
    r1, l1, l2 = rng.normal(size=(3, 64))
    r2 = np.cos(t) + np.sin(3 * t)
    r1 = r1 - r1.mean()
    base = reduced_form(r1, l1, r2, l2, 1.5)
    assert abs(reduced_form(r1, l1 + 3.0, r2, l2, 1.5) - base) < 1e-13
    assert reduced_form(r1, l1, r1, l1, 1.5) == 0
    assert abs(reduced_form(np.zeros(64), np.cos(t), np.cos(t), np.zeros(64), 0.7) - 0.7 * PI) < 1e-13


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_gram_spectrum_positive(seed):
    spec = random_pairing_spec(np.random.default_rng(seed))
    for side in ("left", "right"):
        assert pairing_gram_spectrum(spec, 16, side).min() > 1e-12


def test_gram_degenerate_control():
    spec = PairingSpec(0.0, (0.0,), (0.0,), validate=False)
    s = pairing_gram_spectrum(spec, 16)
    assert numerical_rank(s) < len(s)
    good = PairingSpec(1.0, (0.0,), (1.0,))
    assert numerical_rank(pairing_gram_spectrum(good, 16)) == 32


def test_gram_without_nodes_is_diagonal():
    s = pairing_gram_spectrum(PairingSpec(1.0), 8)
    assert np.allclose(s, PI, atol=1e-12)


def test_spec_validation():
    with pytest.raises(InvalidArgument):
        PairingSpec(1.0, (0.0,), (0.0,))
    with pytest.raises(InvalidArgument):
        PairingSpec(1.0, (0.0, 0.0), (1.0, 1.0))


def test_momentum_point():
    cfg = PointVortexConfig([[0, 0], [0.5, 0]], [2.0, -1.0])
    plateau = Bump((0, 0), 2.0, 1.0, plateau=0.8)
    assert abs(momentum_point(cfg, plateau) - 1.0) < 1e-15
    assert momentum_point(cfg, Bump((5, 5), 1.0)) == 0
    cfg = PointVortexConfig([[0, 0], [3, 0]], [1.0, -1.0])
    b = Bump((0.2, 0.0), 1.0, 1.0)
    hx = b.value(np.array([[0.0, 0.0]]))[0]
    b = Bump((0.2, 0.0), 1.0, 0.7 / hx)
    assert abs(momentum_point(cfg, b) - 0.7) < 1e-14


def test_momentum_loop():
    c = circle(64)
    loop = VortexLoop(c, np.full(64, 0.4))
    assert abs(momentum_loop(loop, Bump((0, 0), 3.0, plateau=0.5)) - 0.4 * 2 * PI) < 1e-13
    assert momentum_loop(loop, Bump((4, 0), 1.0)) == 0
    h = Bump((1.0, 0.0), 1.5, 1.0, 1.0)
    fine = circle(8192)
    ref = np.sum(h.value(fine.points)) * 0.4 * 2 * PI / 8192
    loop = VortexLoop(circle(256), np.full(256, 0.4))
    assert abs(momentum_loop(loop, h) - ref) < 1e-10


def test_momentum_pointed(canonical_circle_pvl):
    p = canonical_circle_pvl
    plateau = Bump((0, 0), 3.0, plateau=0.5)
    assert abs(momentum_pointed(p, plateau) - (2 + 2)) < 1e-13
    # h vanishes at both marks (1,0), (-1,0)
    h = Bump((0, 1), 0.5)
    assert momentum_pointed(p, h) == momentum_loop(p.loop, h)
    q = realize(circle(128), [2.0], [1.5])
    h = Bump((1.0, 0.1), 0.4)
    manual = np.sum(h.value(q.curve.points) * q.density) * 2 * PI / 128 + 1.5 * h.value(np.array([[1.0, 0.0]]))[0]
    assert abs(momentum_pointed(q, h) - manual) < 1e-13


def test_momentum_equal_and_dispatch(canonical_circle_pvl):
    d = random_dictionary(0, 16, (0, 0), 1.5)
    p = canonical_circle_pvl
    assert momentum_equal(p, p, d)
    with pytest.raises(TypeError):
        momentum(object(), d[0])


def test_product_embed(canonical_circle_pvl):
    loop, cfg = product_embed(canonical_circle_pvl)
    assert np.allclose(cfg.points, [[1, 0], [-1, 0]], atol=1e-14)
    assert loop is canonical_circle_pvl.loop
    h = Bump((0.5, 0.2), 1.0, 1.0)
    total = momentum_pointed(canonical_circle_pvl, h)
    assert abs(total - momentum_loop(loop, h) - momentum_point(cfg, h)) < 1e-12


def test_polarization_pairing_examples():
    p = realize(circle(256), [1, 1], [1, 1])
    w = 0.5 * reach(p.curve)
    t = grid(256)
    h1 = curve_constant_hamiltonian(p.curve, w, 1.0, np.sin(t))
    h2 = curve_constant_hamiltonian(p.curve, w, 0.5, np.cos(2 * t))
    assert abs(polarization_pairing(p, h1, h2)) < 1e-8 * polarization_scale(p, h1, h2)
    h0 = transverse_hamiltonian(p.curve, PI / 2, 0.5 * w)
    assert abs(polarization_pairing(p, h1, h0)) > 1e-3 * polarization_scale(p, h1, h0)
    far1, far2 = Bump((5, 5), 0.5), Bump((-5, 5), 0.5)
    assert polarization_pairing(p, far1, far2) == 0
