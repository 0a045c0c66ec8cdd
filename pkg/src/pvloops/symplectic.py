"""Symplectic forms, the canonical pairing, and momentum maps.

Tangent vectors to the space of embeddings are sampled fields ``u`` of shape
``(N, 2)`` on the curve grid.  Point-vortex tangent vectors are ``(k, 2)``.
Momentum maps are evaluated against test functions: any object with a
``value(points) -> array`` method (Hamiltonian expressions, bumps, brackets).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import singledispatch
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike

from .errors import InvalidArgument
from .geometry import ClosedCurve, DecomposedTangent, area_form, decompose_tangent, frame
from .hamiltonians import Bracket, eval_X
from .objects import PointedVortexLoop, PointVortexConfig, VortexLoop, total_vorticity
from .spectral import TWO_PI, FloatArray, TrigInterpolant, grid, periodic_quadrature


@dataclass(frozen=True)
class PairingSpec:
    """Weights of ``<<rho, lam>> = c int rho lam dt + sum_i c_i rho(t_i) lam(t_i)``."""

    c: float
    nodes: tuple[float, ...] = ()
    weights: tuple[float, ...] = ()
    validate: bool = True

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(float(t) for t in self.nodes))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.nodes) != len(self.weights):
            raise InvalidArgument("one weight per node")
        if not self.validate:
            return
        if self.c == 0 or any(w == 0 for w in self.weights):
            raise InvalidArgument("pairing weights must be non-zero")
        t = np.asarray(self.nodes)
        if np.any(t < 0) or np.any(t >= TWO_PI) or len(np.unique(t)) != len(t):
            raise InvalidArgument("nodes must be distinct parameters in [0, 2*pi)")

    @property
    def k(self) -> int:
        return len(self.nodes)

    @classmethod
    def for_loop(cls, pvl: PointedVortexLoop) -> "PairingSpec":
        return cls(total_vorticity(pvl) / TWO_PI, tuple(pvl.marks), tuple(pvl.circulations))


def _field(u: ArrayLike, n: int) -> FloatArray:
    u = np.asarray(u, dtype=np.float64)
    if u.shape != (n, 2):
        raise InvalidArgument(f"field must have shape ({n}, 2), got {u.shape}")
    return u


def _node_values(samples: FloatArray, nodes: Sequence[float]) -> FloatArray:
    if len(nodes) == 0:
        return np.zeros((0,) + samples.shape[1:])
    return np.atleast_1d(TrigInterpolant(samples)(np.asarray(nodes)))


def omega_gamma(config: PointVortexConfig, u: ArrayLike, v: ArrayLike) -> float:
    u = np.asarray(u, dtype=np.float64).reshape(-1, 2)
    v = np.asarray(v, dtype=np.float64).reshape(-1, 2)
    if len(u) != config.k or len(v) != config.k:
        raise InvalidArgument("need one vector per point vortex")
    return float(np.dot(config.circulations, area_form(u, v)))


def omega_emb(f: ClosedCurve, omega_total: float, u: ArrayLike, v: ArrayLike) -> float:
    n = f.n_samples
    return omega_total / TWO_PI * periodic_quadrature(area_form(_field(u, n), _field(v, n)))


def omega_pointed(f: ClosedCurve, spec: PairingSpec, u: ArrayLike, v: ArrayLike) -> float:
    """Bulk ``c int omega(u, v) dt`` plus ``sum_i c_i omega(u(t_i), v(t_i))``."""
    n = f.n_samples
    u, v = _field(u, n), _field(v, n)
    bulk = spec.c * periodic_quadrature(area_form(u, v))
    if spec.k == 0:
        return bulk
    uu, vv = _node_values(u, spec.nodes), _node_values(v, spec.nodes)
    return bulk + float(np.dot(spec.weights, area_form(uu, vv)))


def pairing(rho: ArrayLike, lam: ArrayLike, spec: PairingSpec) -> float:
    rho = np.asarray(rho, dtype=np.float64)
    lam = np.asarray(lam, dtype=np.float64)
    if rho.shape != lam.shape:
        raise InvalidArgument("rho and lam must have equal length")
    bulk = spec.c * periodic_quadrature(rho * lam)
    if spec.k == 0:
        return bulk
    r, l = _node_values(rho, spec.nodes), _node_values(lam, spec.nodes)
    return bulk + float(np.dot(spec.weights, r * l))


def omega_pointed_canonical(d1: DecomposedTangent, d2: DecomposedTangent, spec: PairingSpec) -> float:
    return pairing(d2.rho, d1.lam, spec) - pairing(d1.rho, d2.lam, spec)


def reduced_form(rho1, lam1, rho2, lam2, c: float, speed: ArrayLike | None = None) -> float:
    """``<rho2, lam1> - <rho1, lam2>`` with ``<rho, lam> = c int rho lam dmu``.

    ``dmu`` is ``speed * dt`` (the arc measure, with ``lam`` the coefficient of
    ``f'``) when ``speed`` is given, else plain ``dt``.  The value does not
    change when a constant is added to either ``lam`` as long as the ``rho``'s
    integrate to zero against ``dmu``.
    """
    w = 1.0 if speed is None else np.asarray(speed, dtype=np.float64)
    rho1, lam1, rho2, lam2 = (np.asarray(a, dtype=np.float64) for a in (rho1, lam1, rho2, lam2))
    return c * (periodic_quadrature(rho2 * lam1 * w) - periodic_quadrature(rho1 * lam2 * w))


def _trig_basis(t: FloatArray, M: int, with_constant: bool) -> FloatArray:
    cols = [np.ones_like(t)] if with_constant else []
    for j in range(1, M + 1):
        cols.append(np.cos(j * t))
        cols.append(np.sin(j * t))
    return np.stack(cols, axis=-1)


def pairing_gram_matrix(spec: PairingSpec, M: int, side: str = "left") -> FloatArray:
    """Matrix of the pairing on truncated trigonometric bases.

    ``side="left"``: rows are the zero-mean modes ``cos jt, sin jt`` for
    ``j <= M`` and columns ``1, cos jt, sin jt`` for ``j <= M``; a positive
    smallest singular value means no zero-mean ``rho`` of degree ``<= M``
    pairs to zero with everything.  ``side="right"`` tests the ``lam`` slot:
    columns as before, rows the zero-mean modes up to degree ``M + 1``, and
    the transpose is returned so singular values count the ``2M + 1`` columns.
    """
    if M < 1:
        raise InvalidArgument("M must be positive")
    if side not in ("left", "right"):
        raise InvalidArgument("side must be 'left' or 'right'")
    m_rows = M if side == "left" else M + 1
    t = grid(4 * (m_rows + 2))
    left = _trig_basis(t, m_rows, with_constant=False)
    right = _trig_basis(t, M, with_constant=True)
    # trapezoid is exact for these trigonometric polynomials
    G = spec.c * TWO_PI / len(t) * left.T @ right
    if spec.k:
        nodes = np.asarray(spec.nodes)
        L = _trig_basis(nodes, m_rows, with_constant=False)
        R = _trig_basis(nodes, M, with_constant=True)
        G = G + (L * np.asarray(spec.weights)[:, None]).T @ R
    return G if side == "left" else G.T


def pairing_gram_spectrum(spec: PairingSpec, M: int, side: str = "left") -> FloatArray:
    if M < spec.k and side == "left":
        raise InvalidArgument("M must be at least the number of nodes")
    s = np.linalg.svd(pairing_gram_matrix(spec, M, side), compute_uv=False)
    return np.sort(s)[::-1]


def numerical_rank(singular_values: ArrayLike, rtol: float = 1e-10) -> int:
    s = np.asarray(singular_values)
    if s.size == 0 or s.max() == 0:
        return 0
    return int(np.sum(s > rtol * s.max()))


def _test_values(h, pts: FloatArray) -> FloatArray:
    if hasattr(h, "value"):
        return np.asarray(h.value(pts), dtype=np.float64)
    return np.asarray(h(pts), dtype=np.float64)


@singledispatch
def momentum(obj, h) -> float:
    """``<J(obj), h>`` for any of the three vorticity objects."""
    raise TypeError(f"no momentum map for {type(obj).__name__}")


@momentum.register
def momentum_point(config: PointVortexConfig, h) -> float:
    return float(np.dot(config.circulations, _test_values(h, config.points)))


@momentum.register
def momentum_loop(loop: VortexLoop, h) -> float:
    return periodic_quadrature(_test_values(h, loop.curve.points) * loop.density)


@momentum.register
def momentum_pointed(pvl: PointedVortexLoop, h) -> float:
    loop_part = momentum_loop(pvl.loop, h)
    return loop_part + float(np.dot(pvl.circulations, _test_values(h, pvl.marked_points)))


def momentum_table(obj, dictionary) -> FloatArray:
    return np.array([momentum(obj, h) for h in dictionary])


def momentum_equal(m1, m2, dictionary, tol: float = 1e-10) -> bool:
    if len(dictionary) == 0:
        raise InvalidArgument("dictionary must be non-empty")
    a = momentum_table(m1, dictionary)
    b = momentum_table(m2, dictionary)
    return bool(np.all(np.abs(a - b) <= tol * np.maximum(1.0, np.abs(a))))


def product_embed(pvl: PointedVortexLoop) -> tuple[VortexLoop, PointVortexConfig]:
    return pvl.loop, PointVortexConfig(pvl.marked_points, pvl.circulations)


def split_tangent(pvl: PointedVortexLoop, u: ArrayLike):
    """Tangent map of ``j``: loop part as ``(rho, lam / |f'|)`` and the vectors ``u(t_i)``.

    The loop part uses the coefficient of ``f'`` for the tangential slot, the
    normalization in which the reduced form pairs against the arc measure.
    """
    f = pvl.curve
    u = _field(u, f.n_samples)
    d = decompose_tangent(f, u)
    speed = frame(f).speed
    return (d.rho, d.lam / speed), _node_values(u, pvl.marks).reshape(-1, 2)


def polarization_pairing(pvl: PointedVortexLoop, h1, h2) -> float:
    """``<(C, beta, (x_i)), [X_h1, X_h2]>`` via the bracket as test function."""
    return momentum_pointed(pvl, Bracket(h1, h2))


def polarization_scale(pvl: PointedVortexLoop, h1, h2) -> float:
    """Same functional applied to ``|X_h1| |X_h2|``: the natural size of the pairing."""

    def mag(x):
        return np.linalg.norm(eval_X(h1, x), axis=1) * np.linalg.norm(eval_X(h2, x), axis=1)

    loop = periodic_quadrature(mag(pvl.curve.points) * pvl.density)
    return loop + float(np.dot(np.abs(pvl.circulations), mag(pvl.marked_points)))
