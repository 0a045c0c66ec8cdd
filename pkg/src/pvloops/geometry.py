"""Closed planar curves sampled on a uniform parameter grid.

Conventions used throughout the package: the area form is ``dx ^ dy``, its
primitive is ``nu = (x dy - y dx) / 2``, and the frame ``(t, n)`` along a curve
has ``n`` equal to ``t`` rotated by +90 degrees, so ``omega(t, n) = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np
from numpy.typing import ArrayLike

from . import spectral
from .errors import (
    DegenerateCurveError,
    InvalidArgument,
    NotAreaTangentError,
    NotSimpleCurveError,
)
from .spectral import TWO_PI, FloatArray, TrigInterpolant, periodic_quadrature

MIN_SAMPLES = 16
DEGENERATE_SPEED = 1e-10


def area_form(u: ArrayLike, v: ArrayLike) -> FloatArray | float:
    """``omega(u, v) = u_x v_y - u_y v_x`` over the trailing axis."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def rotate90(v: ArrayLike) -> FloatArray:
    v = np.asarray(v, dtype=np.float64)
    return np.stack([-v[..., 1], v[..., 0]], axis=-1)


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _orient(a, b, c):
    return (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (b[..., 1] - a[..., 1]) * (
        c[..., 0] - a[..., 0]
    )


def polyline_self_intersects(points: FloatArray, chunk: int = 256) -> bool:
    """True if two non-adjacent edges of the closed polyline intersect."""
    n = len(points)
    a = points
    b = np.roll(points, -1, axis=0)
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    idx = np.arange(n)
    for start in range(0, n, chunk):
        i = idx[start : start + chunk]
        # bounding-box pruning first
        overlap = (
            (lo[i, None, 0] <= hi[None, :, 0])
            & (lo[None, :, 0] <= hi[i, None, 0])
            & (lo[i, None, 1] <= hi[None, :, 1])
            & (lo[None, :, 1] <= hi[i, None, 1])
        )
        gap = (idx[None, :] - i[:, None]) % n
        overlap &= (gap > 1) & (gap < n - 1)
        ii, jj = np.nonzero(overlap)
        if ii.size == 0:
            continue
        ii = i[ii]
        d1 = _orient(a[ii], b[ii], a[jj])
        d2 = _orient(a[ii], b[ii], b[jj])
        d3 = _orient(a[jj], b[jj], a[ii])
        d4 = _orient(a[jj], b[jj], b[ii])
        if np.any((d1 * d2 <= 0) & (d3 * d4 <= 0)):
            return True
    return False


class ClosedCurve:
    """Samples ``f(t_j)`` of a closed planar curve at ``t_j = 2*pi*j/N``.

    ``N`` must be a power of two, at least 16.  Construction validates that
    consecutive samples are distinct and that the sampled polyline is simple;
    pass ``check=False`` to skip the O(N^2) simplicity test.
    """

    def __init__(self, points: ArrayLike, *, check: bool = True) -> None:
        p = np.array(points, dtype=np.float64)
        if p.ndim != 2 or p.shape[1] != 2:
            raise InvalidArgument("points must have shape (N, 2)")
        n = p.shape[0]
        if n < MIN_SAMPLES or not _is_power_of_two(n):
            raise InvalidArgument(f"n_samples must be a power of two >= {MIN_SAMPLES}, got {n}")
        if not np.isfinite(p).all():
            raise InvalidArgument("points contain non-finite values")
        step = np.linalg.norm(np.roll(p, -1, axis=0) - p, axis=1)
        if np.any(step <= 0.0):
            raise DegenerateCurveError("consecutive samples coincide")
        if check and polyline_self_intersects(p):
            raise NotSimpleCurveError("sampled curve is not simple")
        p.setflags(write=False)
        self.points = p

    @classmethod
    def from_function(cls, fn: Callable[[FloatArray], ArrayLike], n: int, **kw) -> "ClosedCurve":
        """Sample ``fn(t) -> (len(t), 2)`` on the ``n``-point grid."""
        return cls(np.asarray(fn(spectral.grid(n)), dtype=np.float64), **kw)

    @classmethod
    def circle(cls, n: int = 64, radius: float = 1.0, center=(0.0, 0.0), clockwise=False):
        s = -1.0 if clockwise else 1.0
        return cls.from_function(
            lambda t: np.c_[center[0] + radius * np.cos(t), center[1] + s * radius * np.sin(t)], n
        )

    @classmethod
    def ellipse(cls, n: int = 64, a: float = 2.0, b: float = 1.0):
        return cls.from_function(lambda t: np.c_[a * np.cos(t), b * np.sin(t)], n)

    @property
    def n_samples(self) -> int:
        return self.points.shape[0]

    @property
    def params(self) -> FloatArray:
        return spectral.grid(self.n_samples)

    @cached_property
    def interpolant(self) -> TrigInterpolant:
        return TrigInterpolant(self.points)

    @cached_property
    def derivative(self) -> FloatArray:
        """Samples of ``f'(t_j)``."""
        return spectral.spectral_derivative(self.points, 1)

    def __call__(self, t: ArrayLike) -> FloatArray:
        return self.interpolant(t)

    def __len__(self) -> int:
        return self.n_samples

    def __repr__(self) -> str:
        return f"ClosedCurve(n_samples={self.n_samples})"

    def with_points(self, points: ArrayLike, check: bool = True) -> "ClosedCurve":
        return ClosedCurve(points, check=check)

    def rotate_parameter(self, tau: float) -> "ClosedCurve":
        """The reparametrized curve ``t -> f(t + tau)``."""
        return ClosedCurve(spectral.shift(self.points, tau), check=False)

    def to_json(self) -> dict:
        return {"schema": "curve/1", "n": self.n_samples, "points": self.points.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "ClosedCurve":
        if data.get("schema") != "curve/1":
            raise InvalidArgument(f"expected schema 'curve/1', got {data.get('schema')!r}")
        pts = data["points"]
        if "n" in data and data["n"] != len(pts):
            raise InvalidArgument(f"'n' = {data['n']} but {len(pts)} points given")
        return cls(pts)


@dataclass(frozen=True)
class FrameField:
    tangents: FloatArray
    normals: FloatArray
    speed: FloatArray


@dataclass(frozen=True)
class DecomposedTangent:
    """Normal (``rho``) and unit-tangent (``lam``) components of a variation."""

    rho: FloatArray
    lam: FloatArray

    def __post_init__(self):
        if np.shape(self.rho) != np.shape(self.lam):
            raise InvalidArgument("rho and lam must have equal length")


def resample(curve: ClosedCurve, m: int) -> ClosedCurve:
    if m < MIN_SAMPLES or not _is_power_of_two(m):
        raise InvalidArgument(f"m must be a power of two >= {MIN_SAMPLES}, got {m}")
    if m == curve.n_samples:
        return curve
    return ClosedCurve(spectral.upsample(curve.points, m), check=False)


def _speed(curve: ClosedCurve) -> FloatArray:
    speed = np.linalg.norm(curve.derivative, axis=1)
    if np.any(speed < DEGENERATE_SPEED * speed.mean()):
        raise DegenerateCurveError("curve speed vanishes at a sample")
    return speed


def frame(curve: ClosedCurve) -> FrameField:
    speed = _speed(curve)
    t = curve.derivative / speed[:, None]
    return FrameField(tangents=t, normals=rotate90(t), speed=speed)


def enclosed_area(curve: ClosedCurve) -> float:
    """Signed area: positive for counter-clockwise orientation."""
    return 0.5 * periodic_quadrature(area_form(curve.points, curve.derivative))


def arc_measure(curve: ClosedCurve) -> FloatArray:
    """Density of the arc-length measure against ``dt``, i.e. ``|f'(t_j)|``."""
    return _speed(curve)


def length(curve: ClosedCurve) -> float:
    return periodic_quadrature(arc_measure(curve))


def _check_field(curve: ClosedCurve, u: ArrayLike) -> FloatArray:
    u = np.asarray(u, dtype=np.float64)
    if u.shape != (curve.n_samples, 2):
        raise InvalidArgument(f"tangent field must have shape ({curve.n_samples}, 2), got {u.shape}")
    return u


def decompose_tangent(curve: ClosedCurve, u: ArrayLike) -> DecomposedTangent:
    u = _check_field(curve, u)
    fr = frame(curve)
    return DecomposedTangent(
        rho=np.einsum("ij,ij->i", u, fr.normals), lam=np.einsum("ij,ij->i", u, fr.tangents)
    )


def recompose_tangent(curve: ClosedCurve, d: DecomposedTangent) -> FloatArray:
    if len(d.rho) != curve.n_samples:
        raise InvalidArgument("decomposition length does not match curve")
    fr = frame(curve)
    return d.rho[:, None] * fr.normals + d.lam[:, None] * fr.tangents


def is_area_tangent(curve: ClosedCurve, d: DecomposedTangent, tol: float = 1e-10) -> bool:
    speed = arc_measure(curve)
    flux = periodic_quadrature(d.rho * speed)
    scale = periodic_quadrature(speed) * np.max(np.abs(d.rho))
    return bool(abs(flux) <= tol * scale)


def project_area_tangent(curve: ClosedCurve, u: ArrayLike) -> FloatArray:
    """Remove the arc-weighted mean of the normal component of ``u``."""
    u = _check_field(curve, u)
    fr = frame(curve)
    rho = np.einsum("ij,ij->i", u, fr.normals)
    mean = periodic_quadrature(rho * fr.speed) / periodic_quadrature(fr.speed)
    return u - mean * fr.normals


def require_area_tangent(curve: ClosedCurve, d: DecomposedTangent, tol: float) -> None:
    if not is_area_tangent(curve, d, tol):
        raise NotAreaTangentError("normal component has non-zero arc integral")


def reach(curve: ClosedCurve) -> float:
    """Estimate of the normal injectivity radius of the curve.

    Minimum of the local curvature radius and half the closest approach of
    samples that are far apart along the curve.
    """
    fr = frame(curve)
    acc = spectral.spectral_derivative(curve.points, 2)
    kappa = np.abs(area_form(curve.derivative, acc)) / fr.speed**3
    local = 1.0 / max(kappa.max(), 1e-300)
    arc = np.concatenate([[0.0], np.cumsum(fr.speed)[:-1]]) * (TWO_PI / curve.n_samples)
    total = arc[-1] + fr.speed[-1] * TWO_PI / curve.n_samples
    sep = np.abs(arc[:, None] - arc[None, :])
    sep = np.minimum(sep, total - sep)
    far = sep > np.pi * local
    if not far.any():
        return local
    dist = np.linalg.norm(curve.points[:, None, :] - curve.points[None, :, :], axis=2)
    return float(min(local, 0.5 * dist[far].min()))


class TubeCoordinates:
    """Normal coordinates ``(s, d)`` in a tubular neighbourhood of a curve.

    ``s`` is the parameter of the nearest point on the interpolated curve and
    ``d = (x - f(s)) . n(s)`` the signed distance.  Both are smooth inside the
    reach, with gradients

        grad d = n(s),    grad s = f'(s) / (|f'(s)|^2 - f''(s) . (x - f(s))).
    """

    def __init__(self, curve: ClosedCurve, width: float) -> None:
        self.curve = curve
        self.width = float(width)
        self._f = curve.interpolant

    def locate(self, x: ArrayLike, max_iter: int = 30):
        """Return ``(s, d, grad_s, grad_d, inside)`` for points ``x``.

        Points farther than ``width`` from the curve are flagged outside and
        their other outputs are meaningless (but finite).
        """
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        pts = self.curve.points
        n = len(pts)
        inside = np.zeros(len(x), dtype=bool)
        # nearest sample as the initial guess; coarse screen on distance
        d2 = ((x[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
        j = np.argmin(d2, axis=1)
        near = np.sqrt(d2[np.arange(len(x)), j]) < 1.5 * self.width + 2.0 * self._spacing()
        s_out = TWO_PI * j / n
        d = np.zeros(len(x))
        gs = np.zeros_like(x)
        gd = np.zeros_like(x)
        idx = np.nonzero(near)[0]
        if idx.size:
            xs = x[idx]
            ss = s_out[idx].copy()
            converged = np.zeros(len(idx), dtype=bool)
            active = np.arange(len(idx))
            for _ in range(max_iter):
                sa = ss[active]
                f, f1, f2 = self._f.jet(sa)
                r = xs[active] - f
                g = np.einsum("ij,ij->i", r, f1)
                dg = np.einsum("ij,ij->i", f1, f1) - np.einsum("ij,ij->i", r, f2)
                # dg <= 0 means we are past the focal distance: not in the tube
                step = np.where(dg > 0, g / np.where(dg > 0, dg, 1.0), 0.0)
                step = np.clip(step, -0.5, 0.5)
                ss[active] = sa + step
                done = np.abs(step) < 1e-14 * (1.0 + np.abs(sa + step))
                converged[active[done]] = True
                active = active[~done]
                if active.size == 0:
                    break
            f, f1, f2 = self._f.jet(ss)
            r = xs - f
            sp = np.linalg.norm(f1, axis=1)
            nrm = rotate90(f1 / sp[:, None])
            dd = np.einsum("ij,ij->i", r, nrm)
            denom = sp**2 - np.einsum("ij,ij->i", r, f2)
            s_out[idx] = np.mod(ss, TWO_PI)
            d[idx] = dd
            gd[idx] = nrm
            gs[idx] = f1 / denom[:, None]
            inside[idx] = converged & (denom > 0) & (np.abs(dd) < self.width)
        return s_out, d, gs, gd, inside

    def _spacing(self) -> float:
        return float(np.max(np.linalg.norm(np.diff(self.curve.points, axis=0), axis=1)))

    def signed_distance(self, x: ArrayLike) -> FloatArray:
        return self.locate(x)[1]
