"""Seeded random analytic test objects (curves, reparametrizations, fields).

Used by the ``verify`` suites and the test-suite; everything is a pure
function of a ``numpy.random.Generator``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import ClosedCurve, project_area_tangent
from .objects import PointedVortexLoop, VortexLoop, realize
from .spectral import TWO_PI, FloatArray, TrigInterpolant, grid


def polar_curve(n: int, coeffs, radius: float = 1.0, center=(0.0, 0.0)) -> ClosedCurve:
    """``r(t) = radius * exp(sum_j a_j cos jt + b_j sin jt)``; star-shaped, hence simple."""
    coeffs = np.asarray(coeffs, dtype=np.float64).reshape(-1, 2)

    def fn(t):
        j = np.arange(1, len(coeffs) + 1)[:, None]
        log_r = coeffs[:, 0] @ np.cos(j * t) + coeffs[:, 1] @ np.sin(j * t)
        r = radius * np.exp(log_r)
        return np.c_[center[0] + r * np.cos(t), center[1] + r * np.sin(t)]

    return ClosedCurve.from_function(fn, n)


def random_curve(rng: np.random.Generator, n: int = 256, modes: int = 4, amp: float = 0.15) -> ClosedCurve:
    j = np.arange(1, modes + 1)[:, None]
    coeffs = rng.uniform(-amp, amp, size=(modes, 2)) / j
    return polar_curve(n, coeffs, radius=rng.uniform(0.8, 1.2), center=rng.uniform(-0.3, 0.3, 2))


@dataclass(frozen=True)
class Reparam:
    """Orientation-preserving circle diffeomorphism ``psi(t) = t + tau + sum eps_j sin(j t + phi_j)``."""

    tau: float
    eps: tuple[float, ...]
    phi: tuple[float, ...]

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        out = t + self.tau
        for j, (e, p) in enumerate(zip(self.eps, self.phi), start=1):
            out = out + e * np.sin(j * t + p)
        return out

    def derivative(self, t):
        t = np.asarray(t, dtype=np.float64)
        out = np.ones_like(t)
        for j, (e, p) in enumerate(zip(self.eps, self.phi), start=1):
            out = out + j * e * np.cos(j * t + p)
        return out

    def inverse(self, y, tol: float = 1e-15):
        y = np.asarray(y, dtype=np.float64)
        t = y - self.tau
        for _ in range(60):
            dt = (self(t) - y) / self.derivative(t)
            t = t - dt
            if np.max(np.abs(dt)) < tol:
                break
        return t


def random_reparam(rng: np.random.Generator, modes: int = 3, strength: float = 0.5) -> Reparam:
    """``sum j |eps_j| <= strength < 1`` keeps ``psi' > 0``."""
    raw = rng.uniform(-1.0, 1.0, size=modes)
    j = np.arange(1, modes + 1)
    eps = strength * raw / (j * np.abs(raw).sum())
    return Reparam(float(rng.uniform(0, TWO_PI)), tuple(eps), tuple(rng.uniform(0, TWO_PI, modes)))


def reparametrize(pvl: PointedVortexLoop, psi: Reparam) -> PointedVortexLoop:
    """The same pointed loop seen through the parametrization ``f o psi``.

    Points are sampled from the trigonometric interpolant, densities become
    ``b(psi) psi'`` and marks ``psi^{-1}(s_i)``.
    """
    t = grid(pvl.curve.n_samples)
    pts = pvl.curve(np.mod(psi(t), TWO_PI))
    b = TrigInterpolant(pvl.density)(np.mod(psi(t), TWO_PI)) * psi.derivative(t)
    marks = np.mod(psi.inverse(pvl.unwrapped_marks), TWO_PI)
    # psi is increasing, so the lifted marks stay in cyclic order
    return PointedVortexLoop(VortexLoop(ClosedCurve(pts, check=False), b), marks, pvl.circulations)


def random_partials(rng: np.random.Generator, k: int, omega: float | None = None) -> FloatArray:
    w = rng.uniform(0.5, 1.5, size=k)
    if omega is not None:
        w *= omega / w.sum()
    return w


def random_circulations(rng: np.random.Generator, k: int) -> FloatArray:
    return rng.uniform(0.3, 1.5, size=k) * rng.choice([-1.0, 1.0], size=k)


def random_canonical_pvl(rng: np.random.Generator, n: int = 256, k: int | None = None) -> PointedVortexLoop:
    k = int(rng.integers(1, 5)) if k is None else k
    return realize(random_curve(rng, n), random_partials(rng, k), random_circulations(rng, k))


def random_field(rng: np.random.Generator, curve: ClosedCurve, modes: int = 4, amp: float = 1.0) -> FloatArray:
    """Random smooth field (trigonometric polynomial in the parameter) on the curve grid."""
    t = curve.params
    out = np.zeros((curve.n_samples, 2))
    for j in range(modes + 1):
        a, b = rng.normal(size=(2, 2)) * amp / (1 + j) ** 2
        out += np.cos(j * t)[:, None] * a + np.sin(j * t)[:, None] * b
    return out


def random_area_tangent(rng: np.random.Generator, curve: ClosedCurve, modes: int = 4) -> FloatArray:
    return project_area_tangent(curve, random_field(rng, curve, modes))


__all__ = [
    "polar_curve",
    "random_curve",
    "Reparam",
    "random_reparam",
    "reparametrize",
    "random_partials",
    "random_circulations",
    "random_canonical_pvl",
    "random_field",
    "random_area_tangent",
]
