"""Compactly supported test Hamiltonians, their fields, brackets and flows.

The Hamiltonian field of ``h`` is ``X_h = (dh/dy, -dh/dx)``, so that
``i_{X_h} (dx ^ dy) = dh``.  Every term exposes ``value(x)`` and
``gradient(x)`` for point arrays of shape ``(M, 2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import numpy as np
from numpy.typing import ArrayLike

from .errors import ConvergenceError, InvalidArgument, TubeOverlapError
from .geometry import ClosedCurve, TubeCoordinates, area_form, frame, reach
from .spectral import FloatArray, TrigInterpolant

Scheme = Literal["rk4", "midpoint"]


def _points(x: ArrayLike) -> tuple[FloatArray, bool]:
    arr = np.asarray(x, dtype=np.float64)
    single = arr.ndim == 1
    return np.atleast_2d(arr), single


def _g(x):
    # exp(-1/x) for x > 0, else 0
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = np.exp(-1.0 / x[pos])
    return out


def _bump_profile(s: FloatArray, sharpness: float = 1.0):
    """``exp(k (1 - 1/(1 - s^2)))`` on ``|s| < 1`` and its derivative."""
    val = np.zeros_like(s)
    der = np.zeros_like(s)
    inside = np.abs(s) < 1.0
    si = s[inside]
    q = 1.0 - si * si
    v = np.exp(sharpness * (1.0 - 1.0 / q))
    val[inside] = v
    der[inside] = v * sharpness * (-2.0 * si / (q * q))
    return val, der


def _plateau_profile(s: FloatArray, plateau: float):
    """Smooth step equal to 1 on ``s <= plateau`` and 0 on ``s >= 1``."""
    u = (s - plateau) / (1.0 - plateau)
    u = np.clip(u, 0.0, 1.0)
    g1 = _g(1.0 - u)
    g2 = _g(u)
    tot = g1 + g2
    val = g1 / tot
    with np.errstate(divide="ignore", invalid="ignore"):
        dg1 = np.where(u < 1.0, g1 / (1.0 - u) ** 2, 0.0)
        dg2 = np.where(u > 0.0, g2 / u**2, 0.0)
    der = -(dg1 * g2 + g1 * dg2) / tot**2 / (1.0 - plateau)
    return val, der


@dataclass(frozen=True)
class Bump:
    """Radial bump ``A * phi(|x - c| / r)`` supported in the closed disc."""

    center: tuple[float, float]
    radius: float
    amplitude: float = 1.0
    sharpness: float = 1.0
    plateau: float = 0.0

    def __post_init__(self):
        if not self.radius > 0:
            raise InvalidArgument("bump radius must be positive")
        if not 0.0 <= self.plateau < 1.0:
            raise InvalidArgument("plateau fraction must lie in [0, 1)")
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))

    def _profile(self, x: FloatArray):
        r = x - np.asarray(self.center)
        dist = np.hypot(r[:, 0], r[:, 1])
        s = dist / self.radius
        if self.plateau > 0:
            val, der = _plateau_profile(s, self.plateau)
        else:
            val, der = _bump_profile(s, self.sharpness)
        return r, dist, val, der

    def value(self, x: FloatArray) -> FloatArray:
        return self.amplitude * self._profile(x)[2]

    def gradient(self, x: FloatArray) -> FloatArray:
        r, dist, _, der = self._profile(x)
        if self.plateau > 0:
            with np.errstate(divide="ignore", invalid="ignore"):
                unit = np.where(dist[:, None] > 0, r / dist[:, None], 0.0)
            return self.amplitude * der[:, None] * unit / self.radius
        # der/s stays finite at the centre: der = -2 k s v / (1 - s^2)^2
        s = dist / self.radius
        inside = s < 1.0
        fac = np.zeros_like(s)
        q = 1.0 - s[inside] ** 2
        v = np.exp(self.sharpness * (1.0 - 1.0 / q))
        fac[inside] = -2.0 * self.sharpness * v / (q * q)
        return self.amplitude * fac[:, None] * r / self.radius**2

    def support_contains(self, x: ArrayLike) -> FloatArray:
        p, _ = _points(x)
        return np.linalg.norm(p - np.asarray(self.center), axis=1) < self.radius

    def to_json(self) -> dict:
        d = {"type": "bump", "c": list(self.center), "r": self.radius, "A": self.amplitude}
        if self.sharpness != 1.0:
            d["k"] = self.sharpness
        if self.plateau:
            d["p"] = self.plateau
        return d


class TubeTerm:
    """Curve-adapted term ``chi(d/w) * (A(s) + d * B(s))`` in normal coordinates.

    ``A`` and ``B`` are periodic functions of the curve parameter given by
    samples on the curve's grid (or ``None`` for zero); ``chi`` is the standard
    even bump, so the term vanishes outside the tube ``|d| < w``.
    """

    def __init__(self, curve: ClosedCurve, width: float, along=None, slope=None, *, check=True):
        if check:
            r = reach(curve)
            if width >= r:
                raise TubeOverlapError(f"tube width {width:.3g} exceeds curve reach {r:.3g}")
        self.curve = curve
        self.width = float(width)
        self.tube = TubeCoordinates(curve, width)
        n = curve.n_samples
        self.along = None if along is None else np.broadcast_to(np.asarray(along, float), (n,)).copy()
        self.slope = None if slope is None else np.broadcast_to(np.asarray(slope, float), (n,)).copy()
        self._A = None if self.along is None else TrigInterpolant(self.along)
        self._B = None if self.slope is None else TrigInterpolant(self.slope)

    def _parts(self, s):
        zero = np.zeros_like(s)
        A, dA = (zero, zero) if self._A is None else self._A.jet(s, (0, 1))
        B, dB = (zero, zero) if self._B is None else self._B.jet(s, (0, 1))
        return np.atleast_1d(A), np.atleast_1d(dA), np.atleast_1d(B), np.atleast_1d(dB)

    def value(self, x: FloatArray) -> FloatArray:
        out = np.zeros(len(x))
        s, d, _, _, inside = self.tube.locate(x)
        if inside.any():
            s, d = s[inside], d[inside]
            chi, _ = _bump_profile(d / self.width)
            A, _, B, _ = self._parts(s)
            out[inside] = chi * (A + d * B)
        return out

    def gradient(self, x: FloatArray) -> FloatArray:
        out = np.zeros_like(x)
        s, d, gs, gd, inside = self.tube.locate(x)
        if inside.any():
            s, d, gs, gd = s[inside], d[inside], gs[inside], gd[inside]
            chi, dchi = _bump_profile(d / self.width)
            A, dA, B, dB = self._parts(s)
            h_d = dchi / self.width * (A + d * B) + chi * B
            h_s = chi * (dA + d * dB)
            out[inside] = h_d[:, None] * gd + h_s[:, None] * gs
        return out

    def to_json(self) -> dict:
        return {
            "type": "tube",
            "curve": self.curve.to_json(),
            "width": self.width,
            "along": None if self.along is None else self.along.tolist(),
            "slope": None if self.slope is None else self.slope.tolist(),
        }


@dataclass(frozen=True)
class HamiltonianExpr:
    """Finite weighted sum of terms; immutable."""

    terms: tuple = ()
    weights: tuple = field(default=())

    def __post_init__(self):
        if not self.weights:
            object.__setattr__(self, "weights", (1.0,) * len(self.terms))
        if len(self.weights) != len(self.terms):
            raise InvalidArgument("one weight per term")

    @classmethod
    def of(cls, *terms) -> "HamiltonianExpr":
        return cls(tuple(terms))

    def __add__(self, other: "HamiltonianExpr") -> "HamiltonianExpr":
        other = as_expr(other)
        return HamiltonianExpr(self.terms + other.terms, self.weights + other.weights)

    def __sub__(self, other: "HamiltonianExpr") -> "HamiltonianExpr":
        return self + (-1.0) * as_expr(other)

    def __rmul__(self, c: float) -> "HamiltonianExpr":
        return HamiltonianExpr(self.terms, tuple(c * w for w in self.weights))

    def __neg__(self):
        return -1.0 * self

    def value(self, x: FloatArray) -> FloatArray:
        out = np.zeros(len(x))
        for w, t in zip(self.weights, self.terms):
            out += w * t.value(x)
        return out

    def gradient(self, x: FloatArray) -> FloatArray:
        out = np.zeros_like(x)
        for w, t in zip(self.weights, self.terms):
            out += w * t.gradient(x)
        return out

    def to_json(self) -> list:
        out = []
        for w, t in zip(self.weights, self.terms):
            d = t.to_json()
            if w != 1.0:
                if d.get("type") == "bump":
                    d["A"] = d["A"] * w
                else:
                    d["weight"] = w
            out.append(d)
        return out


def as_expr(h) -> HamiltonianExpr:
    if isinstance(h, HamiltonianExpr):
        return h
    return HamiltonianExpr((h,))


def hamiltonians_from_json(items: Sequence[dict]) -> list[HamiltonianExpr]:
    out = []
    for it in items:
        kind = it.get("type")
        if kind == "bump":
            b = Bump(tuple(it["c"]), it["r"], it.get("A", 1.0), it.get("k", 1.0), it.get("p", 0.0))
            out.append(as_expr(b))
        elif kind == "tube":
            term = TubeTerm(
                ClosedCurve.from_json(it["curve"]), it["width"], it.get("along"), it.get("slope")
            )
            out.append(HamiltonianExpr((term,), (it.get("weight", 1.0),)))
        else:
            raise InvalidArgument(f"unknown Hamiltonian term type {kind!r}")
    return out


def _field_from_gradient(g: FloatArray) -> FloatArray:
    return np.stack([g[:, 1], -g[:, 0]], axis=1)


def eval_h(h, x: ArrayLike):
    p, single = _points(x)
    v = as_expr(h).value(p)
    return float(v[0]) if single else v


def eval_X(h, x: ArrayLike):
    p, single = _points(x)
    v = _field_from_gradient(as_expr(h).gradient(p))
    return v[0] if single else v


def poisson_bracket(h1, h2, x: ArrayLike):
    """``omega(X_h1, X_h2)`` pointwise; equals ``dh1/dx dh2/dy - dh1/dy dh2/dx``."""
    p, single = _points(x)
    v = area_form(eval_X(h1, p), eval_X(h2, p))
    return float(v[0]) if single else v


@dataclass(frozen=True)
class Bracket:
    """Pointwise Poisson bracket of two Hamiltonians, usable as a test function."""

    h1: object
    h2: object

    def value(self, x: FloatArray) -> FloatArray:
        return poisson_bracket(self.h1, self.h2, x)


class FlowMap:
    """The time-``T`` flow map of ``g``, remembering the point sets it has mapped.

    One map is typically composed with many test functions evaluated at the
    same points, so each point set is integrated once.
    """

    def __init__(self, g, T: float, dt: float, scheme: Scheme = "rk4"):
        self.g, self.T, self.dt, self.scheme = as_expr(g), T, dt, scheme
        self._cache: dict[tuple, FloatArray] = {}

    def __call__(self, x: ArrayLike) -> FloatArray:
        x = np.ascontiguousarray(x, dtype=np.float64)
        key = (x.shape, x.tobytes())
        if key not in self._cache:
            if len(self._cache) > 16:
                self._cache.clear()
            self._cache[key] = flow(self.g, x, self.T, self.dt, self.scheme)
        return self._cache[key]


class Composed:
    """``h o phi`` for a :class:`FlowMap` ``phi``."""

    def __init__(self, h, phi: FlowMap):
        self.h, self.phi = as_expr(h), phi

    def value(self, x: FloatArray) -> FloatArray:
        return self.h.value(self.phi(x))


def flow(h, x0: ArrayLike, T: float, dt: float, scheme: Scheme = "rk4") -> FloatArray:
    """Integrate ``dx/dt = X_h(x)`` from ``x0`` for time ``T`` (may be negative)."""
    h = as_expr(h)
    x, single = _points(x0)
    x = x.copy()
    if T == 0:
        return x[0] if single else x
    if not dt > 0:
        raise InvalidArgument("dt must be positive")
    steps = max(1, int(np.ceil(abs(T) / dt - 1e-12)))
    tau = T / steps

    def X(p):
        return _field_from_gradient(h.gradient(p))

    for _ in range(steps):
        if scheme == "rk4":
            k1 = X(x)
            k2 = X(x + 0.5 * tau * k1)
            k3 = X(x + 0.5 * tau * k2)
            k4 = X(x + tau * k3)
            x = x + tau / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        elif scheme == "midpoint":
            x = _midpoint_step(X, x, tau)
        else:
            raise InvalidArgument(f"unknown scheme {scheme!r}")
    return x[0] if single else x


def _midpoint_step(X, x, tau, tol=1e-14, max_iter=100):
    y = x + tau * X(x)
    for _ in range(max_iter):
        y_new = x + tau * X(0.5 * (x + y))
        err = np.max(np.abs(y_new - y))
        y = y_new
        if err <= tol * (1.0 + np.max(np.abs(y))):
            return y
    raise ConvergenceError("implicit midpoint iteration did not converge")


def curve_constant_hamiltonian(
    curve: ClosedCurve, width: float, strength: float, profile: ArrayLike | None = None
) -> HamiltonianExpr:
    """Tube Hamiltonian that is constant (``= strength``) along ``curve``.

    ``h = chi(d/w) * (strength + d * q(s))`` with ``q`` the tangential
    ``profile`` (samples on the curve grid; default ``strength / width``).
    Its field on the curve is ``q(s) t(s)``: tangent, and non-zero where ``q``
    is, which is what lets it generate motion *along* the curve.
    """
    if profile is None:
        profile = strength / width
    return as_expr(TubeTerm(curve, width, along=strength, slope=profile))


def transverse_hamiltonian(curve: ClosedCurve, s: float, radius: float) -> Bump:
    """Bump whose field at ``f(s)`` is normal to the curve.

    The centre sits half a radius from ``f(s)`` along the unit tangent, so the
    gradient at ``f(s)`` is tangential and the field normal.
    """
    fr = curve.interpolant
    p = fr(s)
    t = fr.derivative(s)
    t = t / np.linalg.norm(t)
    return Bump(tuple(p + 0.5 * radius * t), radius, 1.0)


def random_dictionary(
    seed: int,
    size: int = 64,
    center: ArrayLike = (0.0, 0.0),
    spread: float = 2.0,
    sharpness: float = 8.0,
) -> list[HamiltonianExpr]:
    """Seeded bumps with centres uniform in the square of half-side ``spread``.

    Radii are drawn from ``[0.5, 1.0] * spread``.  The steep cutoff exponent
    makes the profile nearly Gaussian with a negligible tail near the edge of
    the support, so restrictions to unit-scale curves stay resolved by
    periodic quadrature at a few hundred samples.
    """
    rng = np.random.default_rng(seed)
    c = np.asarray(center, dtype=np.float64)
    out = []
    for _ in range(size):
        ctr = c + rng.uniform(-spread, spread, size=2)
        r = rng.uniform(0.5, 1.0) * spread
        amp = rng.uniform(0.5, 1.5) * rng.choice([-1.0, 1.0])
        out.append(as_expr(Bump(tuple(ctr), r, amp, sharpness)))
    return out


def dictionary_bounds(*point_sets: Iterable[ArrayLike]) -> tuple[FloatArray, float]:
    """Centre and half-side of a square covering all points (padded)."""
    pts = np.vstack([np.atleast_2d(np.asarray(p, dtype=np.float64)) for p in point_sets])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    return 0.5 * (lo + hi), 0.5 * float(np.max(hi - lo)) + 0.25


def normal_component_on(curve: ClosedCurve, h) -> FloatArray:
    """Normal component of ``X_h`` at the curve samples (zero for ``G_C`` generators)."""
    return np.einsum("ij,ij->i", eval_X(h, curve.points), frame(curve).normals)


__all__ = [
    "Bump",
    "TubeTerm",
    "HamiltonianExpr",
    "Bracket",
    "Composed",
    "FlowMap",
    "as_expr",
    "eval_h",
    "eval_X",
    "poisson_bracket",
    "flow",
    "curve_constant_hamiltonian",
    "transverse_hamiltonian",
    "random_dictionary",
    "dictionary_bounds",
    "hamiltonians_from_json",
]
