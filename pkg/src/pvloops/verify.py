"""Property checks behind ``pvloops verify`` and the acceptance tests.

Every check is a pure function of a seed (plus size parameters) returning a
:class:`Check`.  Upper-bound checks pass when ``max_error <= tolerance``;
lower-bound checks (``bound="lower"``) pass when the measured value exceeds
the tolerance.  Suites bundle small-size instances of the checks.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special

from . import dynamics as dyn
from .geometry import (
    ClosedCurve,
    area_form,
    decompose_tangent,
    enclosed_area,
    frame,
    reach,
    recompose_tangent,
    resample,
)
from .hamiltonians import (
    Composed,
    FlowMap,
    curve_constant_hamiltonian,
    dictionary_bounds,
    eval_X,
    flow,
    random_dictionary,
    transverse_hamiltonian,
)
from .objects import (
    PointedVortexLoop,
    PointVortexConfig,
    VortexLoop,
    canonicalize,
    is_prequantizable,
    partial_vorticities,
    realize,
    symmetry_period,
    total_vorticity,
)
from .samples import (
    polar_curve,
    random_area_tangent,
    random_canonical_pvl,
    random_circulations,
    random_curve,
    random_reparam,
    reparametrize,
)
from .spectral import TWO_PI
from .symplectic import (
    PairingSpec,
    momentum,
    momentum_table,
    numerical_rank,
    omega_gamma,
    omega_pointed,
    omega_pointed_canonical,
    pairing_gram_spectrum,
    polarization_pairing,
    polarization_scale,
    product_embed,
    reduced_form,
    split_tangent,
)
from .transitivity import reconstruct_hamiltonian


@dataclass(frozen=True)
class Check:
    check: str
    max_error: float
    tolerance: float
    passed: bool
    seed: int
    bound: str = "upper"
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "max_error": _finite(self.max_error),
            "tolerance": self.tolerance,
            "pass": self.passed,
            "seed": self.seed,
            "bound": self.bound,
        }


def _finite(x: float):
    return float(x) if math.isfinite(x) else str(x)


def _upper(name, err, tol, seed, t0) -> Check:
    err = float(err)
    return Check(name, err, tol, bool(err <= tol), seed, "upper", time.perf_counter() - t0)


def _lower(name, value, bound, seed, t0) -> Check:
    value = float(value)
    return Check(name, value, bound, bool(value > bound), seed, "lower", time.perf_counter() - t0)


# -- geometry ----------------------------------------------------------------


def geometry_circle_area(seed: int = 0, tol: float = 1e-12) -> Check:
    t0 = time.perf_counter()
    c = ClosedCurve.circle(64)
    cw = ClosedCurve.circle(64, clockwise=True)
    err = max(abs(enclosed_area(c) - math.pi), abs(enclosed_area(cw) + math.pi))
    return _upper("geometry.circle_area", err, tol, seed, t0)


def _convergence_ratio(make, exact: float, floor: float) -> float:
    e32 = abs(enclosed_area(make(32)) - exact)
    e64 = abs(enclosed_area(make(64)) - exact)
    return 0.0 if e64 <= floor * abs(exact) else e64 / e32


def geometry_area_convergence(seed: int = 0, tol: float = 1e-3, floor: float = 1e-14) -> Check:
    """Error ratio of enclosed_area between N=32 and N=64.

    Two curves: the ellipse ``(2 cos t, sin t)`` (band-limited, so already at
    the floor) and ``r = exp(eps cos 3t)`` with area ``pi I0(2 eps)``, which
    is not band-limited.  A curve whose N=64 error sits at the relative floor
    counts as converged.
    """
    t0 = time.perf_counter()
    eps = 0.3
    coeffs = [[0, 0], [0, 0], [eps, 0]]
    worst = max(
        _convergence_ratio(lambda n: ClosedCurve.ellipse(n, 2.0, 1.0), TWO_PI, floor),
        _convergence_ratio(lambda n: polar_curve(n, coeffs), math.pi * special.i0(2 * eps), floor),
    )
    return _upper("geometry.area_convergence_ratio", worst, tol, seed, t0)


def geometry_frame(seed: int = 0, n_curves: int = 5, tol: float = 1e-12) -> Check:
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    err = 0.0
    for _ in range(n_curves):
        fr = frame(random_curve(rng, 128))
        t, n = fr.tangents, fr.normals
        err = max(
            err,
            np.abs(area_form(t, n) - 1).max(),
            np.abs(np.einsum("ij,ij->i", t, n)).max(),
            np.abs(np.linalg.norm(t, axis=1) - 1).max(),
            np.abs(np.linalg.norm(n, axis=1) - 1).max(),
        )
    return _upper("geometry.frame_identities", err, tol, seed, t0)


def geometry_decompose(seed: int = 0, tol: float = 1e-14) -> Check:
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    c = ClosedCurve.ellipse(128)
    u = rng.normal(size=(128, 2))
    err = np.abs(recompose_tangent(c, decompose_tangent(c, u)) - u).max()
    return _upper("geometry.decompose_round_trip", err, tol, seed, t0)


def geometry_resample(seed: int = 0, tol: float = 1e-12) -> Check:
    t0 = time.perf_counter()
    c = ClosedCurve.ellipse(32)
    fine = resample(c, 256)
    t = fine.params
    err = max(
        np.abs(fine.points - np.c_[2 * np.cos(t), np.sin(t)]).max(),
        np.abs(resample(fine, 32).points - c.points).max(),
    )
    return _upper("geometry.resample", err, tol, seed, t0)


# -- canonical parametrization -------------------------------------------------


def phi_round_trip(seed: int = 0, count: int = 10, n: int = 256, tol: float = 1e-8) -> Check:
    """realize -> reparametrize -> canonicalize -> realize reproduces the loop.

    Compares image points, density pullback, marks and marked points.
    """
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    err = 0.0
    for _ in range(count):
        p0 = random_canonical_pvl(rng, n)
        p1 = reparametrize(p0, random_reparam(rng))
        g = canonicalize(p1)
        p2 = realize(g, partial_vorticities(p1), p1.circulations)
        err = max(
            err,
            np.abs(g.points - p0.curve.points).max(),
            np.abs(p2.density - p0.density).max(),
            np.abs(p2.marks - p0.marks).max(),
            np.abs(p2.marked_points - p1.marked_points).max(),
        )
    return _upper("phi.round_trip", err, tol, seed, t0)


def phi_partials_sum(seed: int = 0, count: int = 20, tol: float = 1e-12) -> Check:
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    err = 0.0
    for _ in range(count):
        p = reparametrize(random_canonical_pvl(rng, 64), random_reparam(rng))
        w = total_vorticity(p)
        err = max(err, abs(partial_vorticities(p).sum() - w) / w)
    return _upper("phi.partials_sum", err, tol, seed, t0)


# -- pairing -----------------------------------------------------------------


def random_pairing_spec(rng: np.random.Generator, max_nodes: int = 8) -> PairingSpec:
    k = int(rng.integers(1, max_nodes + 1))
    while True:
        nodes = np.sort(rng.uniform(0, TWO_PI, k))
        if k == 1 or np.min(np.diff(nodes)) > 1e-3:
            break
    c = rng.uniform(0.1, 2.0) * rng.choice([-1.0, 1.0])
    w = rng.uniform(0.1, 2.0, k) * rng.choice([-1.0, 1.0], k)
    return PairingSpec(c, tuple(nodes), tuple(w))


def pairing_gram_positive(seed: int = 0, count: int = 100, M: int = 16, bound: float = 1e-12) -> Check:
    """Smallest singular value over both slots, minimized over seeded pairings."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    smallest = math.inf
    for _ in range(count):
        spec = random_pairing_spec(rng, max_nodes=min(8, M))
        for side in ("left", "right"):
            smallest = min(smallest, pairing_gram_spectrum(spec, M, side)[-1])
    return _lower("pairing.gram_min_singular_value", smallest, bound, seed, t0)


def pairing_gram_control(seed: int = 0, M: int = 16) -> Check:
    """Zeroing either weight of a one-node pairing drops the numerical rank.

    Reports the number of weights whose removal did *not* lower the rank.
    """
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    c, t1, c1 = rng.uniform(0.5, 1.5), rng.uniform(0, TWO_PI), rng.uniform(0.5, 1.5)

    def rank(cc, w):
        # total over both slots: c = 0 collapses the left slot, c_1 = 0 the right
        spec = PairingSpec(cc, (t1,), (w,), validate=False)
        return sum(numerical_rank(pairing_gram_spectrum(spec, M, s)) for s in ("left", "right"))

    full = rank(c, c1)
    failures = int(rank(0.0, c1) >= full) + int(rank(c, 0.0) >= full)
    return _upper("pairing.gram_control_misses", failures, 0, seed, t0)


def pairing_canonical_form(seed: int = 0, count: int = 200, n: int = 128, tol: float = 1e-10) -> Check:
    """omega_pointed against omega_pointed_canonical on random area-tangent pairs."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    err = 0.0
    pvl = random_canonical_pvl(rng, n)
    for i in range(count):
        if i % 20 == 0:
            pvl = random_canonical_pvl(rng, n)
            spec = PairingSpec.for_loop(pvl)
        f = pvl.curve
        u, v = random_area_tangent(rng, f), random_area_tangent(rng, f)
        a = omega_pointed(f, spec, u, v)
        b = omega_pointed_canonical(decompose_tangent(f, u), decompose_tangent(f, v), spec)
        err = max(err, abs(a - b) / max(1.0, abs(a)))
    return _upper("pairing.canonical_form", err, tol, seed, t0)


def pairing_pullback(seed: int = 0, count: int = 20, n: int = 128, tol: float = 1e-9) -> Check:
    """Pointed form equals reduced loop form plus point-vortex form through the split."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    err = 0.0
    for _ in range(count):
        pvl = random_canonical_pvl(rng, n)
        f = pvl.curve
        spec = PairingSpec.for_loop(pvl)
        _, config = product_embed(pvl)
        u, v = random_area_tangent(rng, f), random_area_tangent(rng, f)
        (r1, l1), pu = split_tangent(pvl, u)
        (r2, l2), pv = split_tangent(pvl, v)
        lhs = omega_pointed(f, spec, u, v)
        rhs = reduced_form(r1, l1, r2, l2, spec.c, frame(f).speed) + omega_gamma(config, pu, pv)
        err = max(err, abs(lhs - rhs) / max(1.0, abs(lhs)))
    return _upper("pairing.pullback_identity", err, tol, seed, t0)


# -- momentum maps -------------------------------------------------------------


def _transport(obj, g, T, dt):
    if isinstance(obj, PointVortexConfig):
        return PointVortexConfig(flow(g, obj.points, T, dt), obj.circulations)
    loop = obj.loop if isinstance(obj, PointedVortexLoop) else obj
    moved = VortexLoop(ClosedCurve(flow(g, loop.curve.points, T, dt), check=False), loop.density)
    if isinstance(obj, PointedVortexLoop):
        return PointedVortexLoop(moved, obj.marks, obj.circulations)
    return moved


def momentum_equivariance(
    seed: int = 0, n_flows: int = 4, n_tests: int = 4, n: int = 256, T: float = 0.25, tol: float = 5e-6
) -> list[Check]:
    """<J(phi . x), h> against <J(x), h o phi>, one check per object type.

    The left side transports the object with rk4 at ``T/100``; the right side
    composes ``h`` with an independently integrated flow (rk4 at ``T/400``).
    """
    rng = np.random.default_rng(seed)
    pvl = reparametrize(random_canonical_pvl(rng, n, k=3), random_reparam(rng))
    config = PointVortexConfig(rng.uniform(-1, 1, (4, 2)), random_circulations(rng, 4))
    c, half = dictionary_bounds(pvl.curve.points, config.points)
    flows = random_dictionary(seed + 1, n_flows, c, half)
    tests = random_dictionary(seed + 2, n_tests, c, half)
    out = []
    for name, obj in (("point", config), ("loop", pvl.loop), ("pointed", pvl)):
        t0 = time.perf_counter()
        err = 0.0
        for g in flows:
            moved = _transport(obj, g, T, T / 100)
            phi = FlowMap(g, T, T / 400)
            for h in tests:
                err = max(err, abs(momentum(moved, h) - momentum(obj, Composed(h, phi))))
        out.append(_upper(f"momentum.equivariance.{name}", err, tol, seed, t0))
    return out


def _symmetric_pvl(rng: np.random.Generator, n: int) -> PointedVortexLoop:
    return realize(random_curve(rng, n), [3.0, 5.0, 3.0, 5.0], [1.0, 2.0, 1.0, 2.0])


def momentum_zm_invariance(seed: int = 0, n: int = 256, dict_size: int = 64, tol: float = 1e-10) -> Check:
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    pvl = _symmetric_pvl(rng, n)
    l, m = symmetry_period(pvl.circulations, partial_vorticities(pvl))
    rotated = realize(pvl.curve.rotate_parameter(TWO_PI / m), partial_vorticities(pvl), pvl.circulations)
    c, half = dictionary_bounds(pvl.curve.points)
    d = random_dictionary(seed, dict_size, c, half)
    a, b = momentum_table(pvl, d), momentum_table(rotated, d)
    err = np.max(np.abs(a - b) / np.maximum(1.0, np.abs(a)))
    return _upper("momentum.zm_invariance", err, tol, seed, t0)


def momentum_separation(
    seed: int = 0, n: int = 256, count: int = 20, dict_size: int = 64, bound: float = 1e-3
) -> Check:
    """Rotations by ``tau`` off ``(2 pi / m) Z`` change the functional.

    Reports the worst (smallest) dictionary separation over ``count`` shifts.
    """
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    pvl = _symmetric_pvl(rng, n)
    w = partial_vorticities(pvl)
    _, m = symmetry_period(pvl.circulations, w)
    c, half = dictionary_bounds(pvl.curve.points)
    d = random_dictionary(seed, dict_size, c, half)
    base = momentum_table(pvl, d)
    worst = math.inf
    for _ in range(count):
        j = rng.integers(0, m)
        # stay at least 0.05 away from the symmetric shifts
        tau = TWO_PI * j / m + rng.uniform(0.05, TWO_PI / m - 0.05)
        other = realize(pvl.curve.rotate_parameter(tau), w, pvl.circulations)
        worst = min(worst, np.max(np.abs(momentum_table(other, d) - base)))
    return _lower("momentum.rotation_separation", worst, bound, seed, t0)


def momentum_additivity(seed: int = 0, n: int = 128, dict_size: int = 16, tol: float = 1e-12) -> Check:
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    pvl = random_canonical_pvl(rng, n)
    loop, config = product_embed(pvl)
    c, half = dictionary_bounds(pvl.curve.points)
    err = 0.0
    for h in random_dictionary(seed, dict_size, c, half):
        a = momentum(pvl, h)
        err = max(err, abs(a - momentum(loop, h) - momentum(config, h)) / max(1.0, abs(a)))
    return _upper("momentum.product_additivity", err, tol, seed, t0)


# -- polarization ----------------------------------------------------------------


def _localized(t, s0, width, rng):
    d = np.angle(np.exp(1j * (t - s0)))
    return rng.uniform(0.5, 2.0) * np.exp(-((d / width) ** 2))


def polarization(seed: int = 0, count: int = 10, n: int = 256) -> list[Check]:
    """Curve-constant pairs annihilate the bracket pairing; transverse partners do not.

    Ratios are taken against :func:`polarization_scale`.  The curve-constant
    partner of the transverse bump has its tangential profile concentrated
    where the bump's normal field keeps one sign.
    """
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    worst_cc, worst_tr = 0.0, math.inf
    for _ in range(count):
        pvl = reparametrize(random_canonical_pvl(rng, n), random_reparam(rng))
        c = pvl.curve
        w = 0.5 * reach(c)
        t = c.params
        s0, s1 = rng.uniform(0, TWO_PI, 2)
        speed = float(np.linalg.norm(c.interpolant.derivative(s0)))
        h1 = curve_constant_hamiltonian(c, w, rng.uniform(-1, 1), _localized(t, s0, 0.25 * w / speed, rng))
        h2 = curve_constant_hamiltonian(c, w, rng.uniform(-1, 1), _localized(t, s1, 0.6, rng))
        worst_cc = max(worst_cc, abs(polarization_pairing(pvl, h1, h2)) / polarization_scale(pvl, h1, h2))
        h0 = transverse_hamiltonian(c, s0, 0.5 * w)
        worst_tr = min(worst_tr, abs(polarization_pairing(pvl, h1, h0)) / polarization_scale(pvl, h1, h0))
    t1 = time.perf_counter()
    return [
        Check("polarization.curve_constant_pairs", worst_cc, 1e-8, bool(worst_cc < 1e-8), seed, "upper", t1 - t0),
        Check("polarization.transverse_pairs", worst_tr, 1e-3, bool(worst_tr > 1e-3), seed, "lower", t1 - t0),
    ]


# -- transitivity ------------------------------------------------------------------


def transitivity_random_fields(
    seed: int = 0, n_curves: int = 2, per_curve: int = 5, n: int = 256, tol: float = 1e-6
) -> Check:
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_curves):
        c = random_curve(rng, n)
        for _ in range(per_curve):
            worst = max(worst, reconstruct_hamiltonian(c, random_area_tangent(rng, c)).residual)
    return _upper("transitivity.random_fields", worst, tol, seed, t0)


def transitivity_dictionary(seed: int = 0, n: int = 256, dict_size: int = 16, tol: float = 1e-6) -> Check:
    """Round trip ``X_g o f`` for dictionary bumps whose field reaches the curve."""
    t0 = time.perf_counter()
    c = polar_curve(n, [[0, 0], [0, 0], [0.2, 0]])
    ctr, half = dictionary_bounds(c.points)
    worst = 0.0
    for g in random_dictionary(seed, dict_size, ctr, half):
        u = eval_X(g, c.points)
        # fields that only graze the curve with their far tail (|u| ~ 1e-60)
        # are below anything the grid can resolve
        if np.abs(u).max() < 1e-3:
            continue
        worst = max(worst, reconstruct_hamiltonian(c, u).residual)
    return _upper("transitivity.dictionary_round_trip", worst, tol, seed, t0)


def transitivity_flow_slope(seed: int = 0, n: int = 256, tol: float = 0.2) -> Check:
    """Flowing by the reconstructed h for time eps deviates from ``f + eps u`` by O(eps^2)."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    c = random_curve(rng, n)
    u = random_area_tangent(rng, c)
    h = reconstruct_hamiltonian(c, u).hamiltonian
    eps = np.array([1e-2, 5e-3, 2.5e-3])
    errs = [np.abs(flow(h, c.points, e, e / 8) - (c.points + e * u)).max() for e in eps]
    slope = np.polyfit(np.log(eps), np.log(errs), 1)[0]
    return _upper("transitivity.flow_slope_minus_2", abs(slope - 2.0), tol, seed, t0)


# -- prequantization ---------------------------------------------------------------


def prequantization_grid(seed: int = 0, count: int = 100, tol: float = 1e-12) -> Check:
    """Pairs with ``a * omega = 2 pi k + delta`` for known offsets ``delta``.

    Offsets straddle the tolerance (0.5x, 0.99x, 1.01x, 2x) and include far
    misses; the predicate must match ``|delta| <= tol`` on every pair.
    Reports the number of mismatches.
    """
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    offsets = [0.0, 0.5 * tol, -0.5 * tol, 0.99 * tol, -0.99 * tol, 1.01 * tol, -1.01 * tol, 2 * tol, 1e-6, math.pi]
    wrong = 0
    for i in range(count):
        delta = offsets[i % len(offsets)]
        k = int(rng.integers(-3, 4))
        omega = float(rng.choice([0.5, 1.0, 2.0, 4.0]))  # powers of two: a * omega is exact
        a = (TWO_PI * k + delta) / omega
        expected = abs(delta) <= tol
        wrong += int(is_prequantizable(a, omega, tol) != expected)
    return _upper("prequantization.grid_mismatches", wrong, 0, seed, t0)


# -- dynamics --------------------------------------------------------------------


def dynamics_pair(seed: int = 0, gamma: float = 1.0, d: float = 2.0) -> list[Check]:
    """Equal pair: radius drift and return error after one revolution (rk4, T/1000),
    and Hamiltonian drift with implicit midpoint."""
    t0 = time.perf_counter()
    config = PointVortexConfig([[-d / 2, 0.0], [d / 2, 0.0]], [gamma, gamma])
    T = dyn.corotation_period(gamma, d)
    state = dyn.make_state(config=config)
    _, fin = dyn.run(state, T, T / 1000, scheme="rk4", stride=1000)
    p = fin.config.points
    radius = abs(np.linalg.norm(p[0] - p[1]) - d) / d
    ret = np.abs(p - config.points).max() / d
    rows, _ = dyn.run(state, T, T / 1000, scheme="midpoint", stride=1000)
    h_drift = abs(rows[-1].hamiltonian - rows[0].hamiltonian) / abs(rows[0].hamiltonian)
    t1 = time.perf_counter()
    return [
        Check("dynamics.pair_radius_drift", radius, 1e-6, bool(radius < 1e-6), seed, "upper", t1 - t0),
        Check("dynamics.pair_closed_form_return", ret, 1e-6, bool(ret < 1e-6), seed, "upper", t1 - t0),
        Check("dynamics.pair_hamiltonian_midpoint", h_drift, 1e-8, bool(h_drift < 1e-8), seed, "upper", t1 - t0),
    ]


def pointed_loop_benchmark(n: int = 128) -> PointedVortexLoop:
    """Unit circle, two equal marks at 0 and pi with circulation 0.2, omega = 2 pi."""
    return realize(ClosedCurve.circle(n), [math.pi, math.pi], [0.2, 0.2])


def dynamics_pointed_loop(
    seed: int = 0, n: int = 128, delta: float = 0.2, T: float = 1.0, dts=(0.1, 0.05, 0.025)
) -> list[Check]:
    """Area drift over ``T``, the dt-halving ratio and bitwise-constant partials."""
    t0 = time.perf_counter()
    state = dyn.make_state(loop=pointed_loop_benchmark(n))
    blob = dyn.BlobParams(delta)
    areas, partials_moved = [], 0.0
    for dt in dts:
        rows, _ = dyn.run(state, T, dt, blob, "rk4", stride=5)
        areas.append(rows[-1].area)
        p0 = np.array(rows[0].partials)
        partials_moved = max(partials_moved, *(np.abs(np.array(r.partials) - p0).max() for r in rows))
    a0 = rows[0].area
    drift = abs(areas[-1] - a0) / a0
    ratio = dyn.area_convergence_ratio(areas)
    t1 = time.perf_counter()
    return [
        Check("dynamics.loop_area_drift", drift, 1e-5, bool(drift < 1e-5), seed, "upper", t1 - t0),
        Check("dynamics.area_ratio_minus_16", abs(ratio - 16), 4.0, bool(abs(ratio - 16) <= 4), seed, "upper", t1 - t0),
        Check("dynamics.partials_bitwise", partials_moved, 0.0, bool(partials_moved == 0.0), seed, "upper", t1 - t0),
    ]


def dynamics_far_field(seed: int = 0, tol: float = 0.05) -> Check:
    t0 = time.perf_counter()
    pvl = pointed_loop_benchmark(64)
    state = dyn.make_state(loop=pvl)
    total = total_vorticity(pvl) + float(np.sum(pvl.circulations))
    err = 0.0
    for R in (10.0, 20.0):
        for ang in np.linspace(0, TWO_PI, 8, endpoint=False):
            v = dyn.induced_velocity(state, [R * np.cos(ang), R * np.sin(ang)])
            err = max(err, abs(np.linalg.norm(v) * TWO_PI * R / total - 1))
    return _upper("dynamics.far_field_decay", err, tol, seed, t0)


# -- suites ------------------------------------------------------------------------


def _as_list(x):
    return x if isinstance(x, list) else [x]


SUITES: dict[str, list[Callable[[int], Check | list[Check]]]] = {
    "geometry": [
        geometry_circle_area,
        geometry_area_convergence,
        geometry_frame,
        geometry_decompose,
        geometry_resample,
    ],
    "phi": [phi_round_trip, phi_partials_sum],
    "pairing": [
        lambda s: pairing_gram_positive(s, count=20),
        pairing_gram_control,
        lambda s: pairing_canonical_form(s, count=40),
        pairing_pullback,
    ],
    "momentum": [
        momentum_equivariance,
        momentum_zm_invariance,
        lambda s: momentum_separation(s, count=5),
        momentum_additivity,
        prequantization_grid,
    ],
    "polarization": [lambda s: polarization(s, count=5)],
    "transitivity": [transitivity_random_fields, transitivity_dictionary, transitivity_flow_slope],
    "dynamics": [dynamics_pair, dynamics_pointed_loop, dynamics_far_field],
}
SUITE_NAMES = (*SUITES, "all")


def run_suite(name: str, seed: int = 0, tol_scale: float = 1.0) -> list[Check]:
    """Run a named suite.  ``tol_scale`` multiplies the tolerance of upper-bound checks."""
    if name not in SUITE_NAMES:
        raise KeyError(name)
    names = list(SUITES) if name == "all" else [name]
    out: list[Check] = []
    for suite in names:
        for fn in SUITES[suite]:
            for chk in _as_list(fn(seed)):
                if chk.bound == "upper" and tol_scale != 1.0:
                    tol = chk.tolerance * tol_scale
                    chk = Check(chk.check, chk.max_error, tol, chk.max_error <= tol, chk.seed, "upper", chk.seconds)
                out.append(chk)
    return out
