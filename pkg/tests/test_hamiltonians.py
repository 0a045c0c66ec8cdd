import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import circle, ellipse
from pvloops import (
    Bump,
    TubeOverlapError,
    curve_constant_hamiltonian,
    eval_h,
    eval_X,
    flow,
    frame,
    poisson_bracket,
    random_dictionary,
    transverse_hamiltonian,
)
from pvloops.hamiltonians import Composed, FlowMap, as_expr, dictionary_bounds, hamiltonians_from_json


def fd_grad(h, x, eps=1e-6):
    ex, ey = np.array([eps, 0]), np.array([0, eps])
    return np.array(
        [(eval_h(h, x + ex) - eval_h(h, x - ex)) / (2 * eps), (eval_h(h, x + ey) - eval_h(h, x - ey)) / (2 * eps)]
    )


def test_bump_values():
    b = Bump((1.0, 0.0), 0.5, 2.0)
    assert eval_h(b, [1.6, 0.0]) == 0.0
    assert eval_h(b, [1.5, 0.0]) == 0.0
    assert eval_h(b, [1.0, 0.0]) == pytest.approx(2.0)
    h = as_sum(b, Bump((-1.0, 0.0), 0.5, 3.0))
    assert eval_h(h, [1.1, 0.1]) == pytest.approx(eval_h(b, [1.1, 0.1]))


def as_sum(*terms):
    out = as_expr(terms[0])
    for t in terms[1:]:
        out = out + as_expr(t)
    return out


def test_field_outside_support_vanishes():
    b = Bump((0.0, 0.0), 1.0)
    assert np.array_equal(eval_X(b, [2.0, 0.0]), [0.0, 0.0])


def test_radial_bump_field_is_rotational():
    b = Bump((0.3, -0.2), 1.0, 1.5, 4.0)
    x = np.random.default_rng(0).uniform(-0.4, 0.9, size=(50, 2))
    X = eval_X(b, x)
    assert np.max(np.abs(np.sum(X * (x - [0.3, -0.2]), axis=1))) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.floats(-0.7, 0.7), st.floats(-0.7, 0.7))
def test_field_matches_finite_differences(px, py):
    h = as_sum(Bump((0.1, 0.0), 1.0, 1.0, 2.0), Bump((-0.2, 0.3), 0.8, -0.7))
    x = np.array([px, py])
    g = fd_grad(h, x)
    assert np.max(np.abs(eval_X(h, x) - [g[1], -g[0]])) < 1e-6


def test_bracket_examples():
    b1, b2 = Bump((0, 0), 0.5), Bump((2, 0), 0.5)
    x = np.random.default_rng(1).uniform(-1, 3, size=(40, 2))
    assert np.all(poisson_bracket(b1, b2, x) == 0)
    assert np.allclose(poisson_bracket(b1, b1, x), 0, atol=1e-15)
    c1, c2 = Bump((0, 0), 1.0), Bump((0.5, 0.3), 1.0, 2.0)
    p = np.array([0.2, 0.1])
    g1, g2 = fd_grad(c1, p), fd_grad(c2, p)
    assert abs(poisson_bracket(c1, c2, p) - (g1[0] * g2[1] - g1[1] * g2[0])) < 1e-6


def test_flow_examples():
    b = Bump((0.0, 0.0), 1.0, 1.0, 2.0)
    x0 = np.array([0.4, 0.1])
    assert np.array_equal(flow(b, x0, 0.0, 0.1), x0)
    assert np.array_equal(flow(b, [3.0, 0.0], 5.0, 0.1), [3.0, 0.0])
    x = flow(b, x0, 3.0, 0.01)
    assert abs(np.linalg.norm(x) - np.linalg.norm(x0)) < 1e-8
    xm = flow(b, x0, 3.0, 0.01, "midpoint")
    assert abs(np.linalg.norm(xm) - np.linalg.norm(x0)) < 1e-12


def test_curve_constant_hamiltonian():
    c = ellipse(128)
    h = curve_constant_hamiltonian(c, 0.2, 1.3)
    v = eval_h(h, c.points)
    assert np.var(v) < 1e-10 and np.allclose(v, 1.3)
    X = eval_X(h, c.points)
    fr = frame(c)
    assert np.max(np.abs(np.sum(X * fr.normals, axis=1))) < 1e-6 * np.max(np.linalg.norm(X, axis=1))
    assert eval_h(h, [0.0, 0.0]) == 0.0
    with pytest.raises(TubeOverlapError):
        curve_constant_hamiltonian(c, 0.8, 1.0)


def test_transverse_hamiltonian():
    c = circle(128)
    s, r = 0.5, 0.3
    h = transverse_hamiltonian(c, s, r)
    p = c(s)
    X = eval_X(h, p)
    n = np.array([-np.cos(s), -np.sin(s)])
    assert abs(X @ n) > 0.5 * np.linalg.norm(X)
    assert eval_h(h, c(s + np.pi)) == 0.0
    marks = c(np.array([s + 1.0, s - 1.0]))
    assert not h.support_contains(marks).any()


def test_dictionary_is_seeded():
    a = random_dictionary(3, 8)
    b = random_dictionary(3, 8)
    assert [h.to_json() for h in a] == [h.to_json() for h in b]
    assert [h.to_json() for h in a] != [h.to_json() for h in random_dictionary(4, 8)]
    back = hamiltonians_from_json([t for h in a for t in h.to_json()])
    x = np.random.default_rng(0).normal(size=(20, 2))
    assert all(np.allclose(eval_h(p, x), eval_h(q, x)) for p, q in zip(a, back))


def test_dictionary_bounds_cover_points():
    pts = np.array([[0, 0], [4, 1], [1, -2]])
    c, half = dictionary_bounds(pts)
    assert np.all(np.abs(pts - c) <= half)


def test_flowmap_composition():
    g = Bump((0, 0), 1.0, 1.0)
    phi = FlowMap(g, 0.3, 0.01)
    h = Bump((0.5, 0.0), 0.6)
    x = np.array([[0.3, 0.2], [0.5, -0.1]])
    assert np.allclose(Composed(h, phi).value(x), eval_h(h, flow(g, x, 0.3, 0.01)))
