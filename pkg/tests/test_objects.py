import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import circle, ellipse
from pvloops import (
    ClosedCurve,
    InvalidArgument,
    PointedVortexLoop,
    PointVortexConfig,
    VortexLoop,
    canonical_marks,
    canonicalize,
    is_prequantizable,
    orbit_invariants,
    partial_vorticities,
    point_partition,
    realize,
    rotate_pvl,
    symmetry_period,
    total_vorticity,
    zm_canonical_rep,
)
from pvloops.hamiltonians import Bump, FlowMap
from pvloops.samples import random_canonical_pvl, random_reparam, reparametrize
from pvloops.spectral import grid

PI = np.pi


def test_config_validation():
    with pytest.raises(InvalidArgument):
        PointVortexConfig([[0, 0], [0, 0]], [1, 1])
    with pytest.raises(InvalidArgument):
        PointVortexConfig([[0, 0]], [0.0])
    with pytest.raises(InvalidArgument):
        VortexLoop(circle(16), -np.ones(16))


def test_pvl_validation():
    loop = VortexLoop(circle(16), np.ones(16))
    with pytest.raises(InvalidArgument):
        PointedVortexLoop(loop, [], [])
    with pytest.raises(InvalidArgument):
        PointedVortexLoop(loop, [1.0, 1.0], [1, 1])
    with pytest.raises(InvalidArgument):
        PointedVortexLoop(loop, [7.0], [1])
    # cyclic order starting past zero is fine
    p = PointedVortexLoop(loop, [5.0, 1.0], [1, 2])
    assert p.k == 2


def test_total_vorticity():
    t = grid(64)
    c = circle(64)
    assert abs(total_vorticity(VortexLoop(c, np.ones(64))) - 2 * PI) < 1e-14
    assert abs(total_vorticity(VortexLoop(c, np.full(64, 3 / (2 * PI)))) - 3) < 1e-14
    assert abs(total_vorticity(VortexLoop(c, 1 + 0.5 * np.cos(t))) - 2 * PI) < 1e-14


def test_partial_vorticities():
    loop = VortexLoop(circle(64), np.ones(64))
    assert np.allclose(partial_vorticities(PointedVortexLoop(loop, [0, PI], [1, 1])), [PI, PI], atol=1e-13)
    w = partial_vorticities(PointedVortexLoop(loop, [0, PI / 2, PI], [1, 1, 1]))
    assert np.allclose(w, [PI / 2, PI / 2, PI], atol=1e-12)
    p = realize(ellipse(64), [0.4, 1.1, 0.7], [1, 1, 1])
    assert np.allclose(partial_vorticities(p), [0.4, 1.1, 0.7], atol=1e-12)


def test_canonical_marks():
    assert np.allclose(canonical_marks([1, 1]), [0, PI])
    assert np.allclose(canonical_marks([1, 1, 2]), [0, PI / 2, PI])
    assert np.allclose(canonical_marks([3, 5, 3, 5]), [0, 3 * PI / 8, PI, 11 * PI / 8])


def test_realize_examples():
    p = realize(circle(64), [1, 1], [1, -1])
    assert np.allclose(p.marks, [0, PI]) and np.allclose(p.density, 1 / PI)
    p = realize(ellipse(64), [2.5], [3.0])
    assert np.allclose(p.marks, [0.0])
    p = realize(circle(64), [PI, PI], [1, 1])
    assert np.allclose(p.density, 1.0)


def test_canonicalize_identity_on_canonical_input():
    p = realize(ellipse(64), [1, 2], [1, 1])
    assert np.max(np.abs(canonicalize(p).points - p.curve.points)) < 1e-10


def test_canonicalize_nonuniform_density():
    c = circle(128)
    t = grid(128)
    b = (1 + 0.5 * np.cos(t)) / PI
    p = PointedVortexLoop(VortexLoop(c, b), [0.0], [1.0])
    g = canonicalize(p)
    q = realize(g, partial_vorticities(p), p.circulations)
    assert np.allclose(q.density, total_vorticity(p) / (2 * PI))
    assert abs(partial_vorticities(q)[0] - partial_vorticities(p)[0]) < 1e-8


def test_canonicalize_undoes_parameter_rotation():
    p = realize(ellipse(64), [1, 2], [1, 1])
    q = rotate_pvl(p, 1.0)
    assert np.max(np.abs(canonicalize(q).points - p.curve.points)) < 1e-10


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_canonicalize_reparametrization_invariant(seed):
    rng = np.random.default_rng(seed)
    p = random_canonical_pvl(rng, n=128)
    q = reparametrize(p, random_reparam(rng))
    assert np.max(np.abs(canonicalize(q).points - p.curve.points)) < 1e-8


def test_symmetry_period():
    assert symmetry_period([1, 1, 1, 1], [1, 1, 1, 1]) == (1, 4)
    assert symmetry_period([1, 2, 3], [1, 1, 1]) == (3, 1)
    assert symmetry_period([1, 2, 1, 2], [3, 5, 3, 5]) == (2, 2)


def test_zm_canonical_rep():
    c = ellipse(64)
    assert np.array_equal(zm_canonical_rep(c, 1).points, c.points)
    e = ellipse(64, 2.0, 1.3)
    r = zm_canonical_rep(e, 2)
    assert np.array_equal(zm_canonical_rep(e.rotate_parameter(PI), 2).points, r.points)
    assert np.array_equal(zm_canonical_rep(r, 2).points, r.points)
    rc = zm_canonical_rep(circle(64), 2)
    candidates = [circle(64).points, circle(64).rotate_parameter(PI).points]
    assert any(np.max(np.abs(rc.points - c)) < 1e-14 for c in candidates)


def test_point_partition():
    assert point_partition([1, 1, 2]) == [[0, 1], [2]]
    assert point_partition([1, 2, 3]) == [[0], [1], [2]]
    assert point_partition([5, 3, 5, 3, 5]) == [[0, 2, 4], [1, 3]]


def test_orbit_invariants(canonical_circle_pvl):
    inv = orbit_invariants(canonical_circle_pvl)
    assert abs(inv.area - PI) < 1e-12
    assert np.allclose(inv.partials, [1, 1])
    assert (inv.l, inv.m) == (1, 2)
    e = ellipse(64, np.sqrt(2), 1 / np.sqrt(2))
    assert abs(orbit_invariants(realize(e, [1], [1])).area - PI) < 1e-10


def test_invariants_survive_a_hamiltonian_flow():
    p = realize(circle(128), [1, 1], [1, 2])
    phi = FlowMap(Bump((0.6, 0.2), 1.0, 1.0, 8.0), 0.5, 0.005)
    pts = phi(p.curve.points)
    moved = PointedVortexLoop(VortexLoop(ClosedCurve(pts), p.density), p.marks, p.circulations)
    a, b = orbit_invariants(p), orbit_invariants(moved)
    assert abs(a.area - b.area) < 1e-6
    assert np.allclose(a.partials, b.partials, atol=1e-12)


def test_prequantizable():
    assert is_prequantizable(PI, 2)
    assert not is_prequantizable(PI, 1)
    assert is_prequantizable(4 * PI, 1.5)


def test_json_round_trip(canonical_circle_pvl):
    p = PointedVortexLoop.from_json(canonical_circle_pvl.to_json())
    assert np.array_equal(p.curve.points, canonical_circle_pvl.curve.points)
    assert np.array_equal(p.marks, canonical_circle_pvl.marks)
    c = PointVortexConfig([[0, 1], [2, 3]], [1, -2])
    assert np.array_equal(PointVortexConfig.from_json(c.to_json()).points, c.points)
