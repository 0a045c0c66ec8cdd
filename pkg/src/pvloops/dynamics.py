"""Regularized Biot-Savart evolution of point vortices and vortex loops.

Every vorticity element is a weighted point: a point vortex carries its
circulation, a loop node ``p_j`` carries ``(2*pi/N) * b_j`` and a marked
node additionally carries its circulation.  Velocities use the blob kernel

    K_delta(r) = (1/2pi) * (-r_y, r_x) / (|r|^2 + delta^2).

Nodes move, weights never change, so the partial vorticities of a pointed
loop are bitwise constant along a run.  Marks ride on nodes: they are
snapped to the nearest grid parameter when the state is built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Literal, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike

from .errors import ConvergenceError, InvalidArgument, SimulationHalted, SingularityError
from .geometry import ClosedCurve, enclosed_area, length, polyline_self_intersects
from .objects import (
    PointedVortexLoop,
    PointVortexConfig,
    VortexLoop,
    partial_vorticities,
    total_vorticity,
)
from .spectral import TWO_PI, FloatArray, upsample

Scheme = Literal["rk4", "midpoint"]
SINGULAR_RADIUS = 1e-6


@dataclass(frozen=True)
class BlobParams:
    """Blob size ``delta`` and source refinement factor for loop quadrature.

    ``delta=None`` means half the mean node spacing of the loop (zero when
    there is no loop).
    """

    delta: Optional[float] = None
    refine: int = 1

    def __post_init__(self):
        if self.delta is not None and not (self.delta >= 0 and math.isfinite(self.delta)):
            raise InvalidArgument("delta must be a finite non-negative number")
        if int(self.refine) != self.refine or self.refine < 1:
            raise InvalidArgument("refine must be a positive integer")

    def resolve(self, state: "SimState") -> float:
        if self.delta is not None:
            return float(self.delta)
        loop = state.loop_part
        if loop is None:
            return 0.0
        return 0.5 * length(loop.curve) / loop.curve.n_samples


def snap_marks(pvl: PointedVortexLoop) -> tuple[PointedVortexLoop, np.ndarray]:
    """Move every mark to its nearest grid parameter; returns the node indices."""
    n = pvl.curve.n_samples
    idx = np.mod(np.rint(pvl.marks * n / TWO_PI).astype(int), n)
    if len(np.unique(idx)) != len(idx):
        raise InvalidArgument("two marks snap to the same node; increase n_samples")
    snapped = PointedVortexLoop(pvl.loop, idx * TWO_PI / n, pvl.circulations)
    return snapped, idx


@dataclass(frozen=True)
class SimState:
    """Point vortices and/or one (pointed) vortex loop at time ``time``.

    Build with :func:`make_state`, which snaps marks to nodes and records
    the original mark parameters in ``input_marks``.
    """

    config: Optional[PointVortexConfig] = None
    loop: Optional[VortexLoop | PointedVortexLoop] = None
    time: float = 0.0
    input_marks: tuple[float, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.config is None and self.loop is None:
            raise InvalidArgument("state needs point vortices or a loop")

    @property
    def loop_part(self) -> Optional[VortexLoop]:
        if isinstance(self.loop, PointedVortexLoop):
            return self.loop.loop
        return self.loop

    @property
    def mark_nodes(self) -> np.ndarray:
        if not isinstance(self.loop, PointedVortexLoop):
            return np.zeros(0, dtype=int)
        n = self.loop.curve.n_samples
        return np.mod(np.rint(self.loop.marks * n / TWO_PI).astype(int), n)

    def to_json(self) -> dict:
        out: dict = {"schema": "simstate/1", "time": self.time}
        if self.config is not None:
            out["config"] = self.config.to_json()
        if self.loop is not None:
            if isinstance(self.loop, PointedVortexLoop):
                out["loop"] = self.loop.to_json()
                out["input_marks"] = list(self.input_marks)
            else:
                out["loop"] = {
                    "schema": "loop/1",
                    "curve": self.loop.curve.to_json(),
                    "density": self.loop.density.tolist(),
                }
        return out


def make_state(config=None, loop=None, time: float = 0.0) -> SimState:
    marks: tuple[float, ...] = ()
    if isinstance(loop, PointedVortexLoop):
        marks = tuple(loop.marks.tolist())
        loop, _ = snap_marks(loop)
    return SimState(config, loop, float(time), marks)


@dataclass(frozen=True)
class Diagnostics:
    time: float
    area: float
    omega_total: float
    partials: tuple[float, ...]
    hamiltonian: float
    impulse: tuple[float, float]
    angular_impulse: float

    def row(self) -> list[float]:
        return [
            self.time,
            self.area,
            self.omega_total,
            *self.partials,
            self.hamiltonian,
            self.impulse[0],
            self.impulse[1],
            self.angular_impulse,
        ]


def csv_header(k: int) -> list[str]:
    return ["t", "area", "omega_total", *[f"omega_{i + 1}" for i in range(k)], "H_pv", "Px", "Py", "L"]


# -- element representation ---------------------------------------------


def _elements(state: SimState) -> tuple[FloatArray, FloatArray]:
    """Positions and weights of all elements: loop nodes first, then points."""
    pos, w = [], []
    loop = state.loop_part
    if loop is not None:
        n = loop.curve.n_samples
        wl = TWO_PI / n * loop.density.copy()
        if isinstance(state.loop, PointedVortexLoop):
            np.add.at(wl, state.mark_nodes, state.loop.circulations)
        pos.append(loop.curve.points)
        w.append(wl)
    if state.config is not None:
        pos.append(state.config.points)
        w.append(state.config.circulations)
    return np.vstack(pos), np.concatenate(w)


def _kernel_sum(targets: FloatArray, sources: FloatArray, weights: FloatArray, delta: float, skip_self=False):
    r = targets[:, None, :] - sources[None, :, :]
    r2 = np.einsum("ijk,ijk->ij", r, r) + delta * delta
    if skip_self:
        np.fill_diagonal(r2, np.inf)
    if np.any(r2 == 0.0):
        raise SingularityError("evaluation point coincides with a vortex element and delta = 0")
    c = weights[None, :] / (TWO_PI * r2)
    return np.stack([-(c * r[..., 1]).sum(axis=1), (c * r[..., 0]).sum(axis=1)], axis=-1)


class _Velocity:
    """Velocity of all elements as a function of their positions."""

    def __init__(self, state: SimState, blob: BlobParams):
        self.delta = blob.resolve(state)
        self.refine = blob.refine
        _, self.weights = _elements(state)
        loop = state.loop_part
        self.n_loop = 0 if loop is None else loop.curve.n_samples
        if self.n_loop and self.delta == 0.0:
            raise SingularityError("loop self-velocity needs delta > 0")
        if self.n_loop and self.refine > 1:
            self.fine_density = upsample(loop.density, self.refine * self.n_loop)
            self.marks = state.mark_nodes
            self.mark_gamma = (
                state.loop.circulations if isinstance(state.loop, PointedVortexLoop) else np.zeros(0)
            )

    def __call__(self, x: FloatArray) -> FloatArray:
        if self.refine == 1 or self.n_loop == 0:
            return _kernel_sum(x, x, self.weights, self.delta, skip_self=True)
        n, m = self.n_loop, self.refine * self.n_loop
        fine = upsample(x[:n], m)
        src = np.vstack([fine, x[self.marks], x[n:]])
        w = np.concatenate([TWO_PI / m * self.fine_density, self.mark_gamma, self.weights[n:]])
        return _kernel_sum(x, src, w, self.delta)


def induced_velocity(state: SimState, x: ArrayLike, blob: BlobParams | None = None) -> FloatArray:
    """Velocity induced at ``x`` (one point or an ``(M, 2)`` array) by all elements."""
    blob = blob or BlobParams()
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    pts = np.atleast_2d(x)
    delta = blob.resolve(state)
    src, w = _elements(state)
    if delta == 0.0:
        d = np.linalg.norm(pts[:, None, :] - src[None, :, :], axis=2)
        if np.any(d < SINGULAR_RADIUS):
            raise SingularityError("evaluation point within 1e-6 of a vortex element and delta = 0")
    v = _kernel_sum(pts, src, w, delta)
    return v[0] if single else v


# -- time stepping --------------------------------------------------------


def _rk4(V, x, dt):
    k1 = V(x)
    k2 = V(x + 0.5 * dt * k1)
    k3 = V(x + 0.5 * dt * k2)
    k4 = V(x + dt * k3)
    return x + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)


def _midpoint(V, x, dt, tol=1e-14, max_iter=200):
    y = x + dt * V(x)
    for _ in range(max_iter):
        y_new = x + dt * V(0.5 * (x + y))
        err = np.max(np.abs(y_new - y))
        y = y_new
        if err <= tol * (1.0 + np.max(np.abs(y))):
            return y
    raise ConvergenceError("implicit midpoint iteration did not converge")


def _rebuild(state: SimState, x: FloatArray, time: float) -> SimState:
    loop, config = state.loop, state.config
    n = 0
    if loop is not None:
        n = loop.curve.n_samples
        pts = x[:n]
        if polyline_self_intersects(pts):
            raise SimulationHalted(f"loop self-intersects at t = {time:.6g}", state=state)
        try:
            curve = ClosedCurve(pts, check=False)
        except ValueError as exc:
            raise SimulationHalted(f"loop degenerates at t = {time:.6g}: {exc}", state=state) from exc
        base = VortexLoop(curve, state.loop_part.density)
        if isinstance(loop, PointedVortexLoop):
            loop = PointedVortexLoop(base, loop.marks, loop.circulations)
        else:
            loop = base
    if config is not None:
        try:
            config = PointVortexConfig(x[n:], config.circulations)
        except InvalidArgument as exc:
            raise SimulationHalted(f"point vortices collide at t = {time:.6g}", state=state) from exc
    return replace(state, config=config, loop=loop, time=time)


def step(state: SimState, dt: float, blob: BlobParams | None = None, scheme: Scheme = "rk4") -> SimState:
    """Advance every element by ``dt``; weights are untouched."""
    if not dt > 0:
        raise InvalidArgument("dt must be positive")
    blob = blob or BlobParams()
    V = _Velocity(state, blob)
    x, _ = _elements(state)
    if scheme == "rk4":
        x = _rk4(V, x, dt)
    elif scheme == "midpoint":
        x = _midpoint(V, x, dt)
    else:
        raise InvalidArgument(f"unknown scheme {scheme!r}")
    return _rebuild(state, x, state.time + dt)


def run(
    state: SimState,
    T: float,
    dt: float,
    blob: BlobParams | None = None,
    scheme: Scheme = "rk4",
    stride: int = 1,
    on_row: Callable[[Diagnostics], None] | None = None,
) -> tuple[list[Diagnostics], SimState]:
    """Step to ``time + T`` and sample diagnostics every ``stride`` steps.

    The step is shrunk so that a whole number of steps lands on ``T``.  The
    first and the last state are always sampled.  On a halt the exception
    carries the last valid state and the rows collected so far.
    """
    if T < 0 or not math.isfinite(T):
        raise InvalidArgument("T must be a finite non-negative time")
    if stride < 1:
        raise InvalidArgument("stride must be positive")
    blob = blob or BlobParams()
    # resolve once so that delta stays fixed while the loop stretches
    blob = replace(blob, delta=blob.resolve(state))
    rows: list[Diagnostics] = []

    def emit(s):
        d = diagnostics(s, blob)
        rows.append(d)
        if on_row is not None:
            on_row(d)

    emit(state)
    if T == 0:
        return rows, state
    if not dt > 0:
        raise InvalidArgument("dt must be positive")
    steps = max(1, int(math.ceil(T / dt - 1e-12)))
    tau = T / steps
    t0 = state.time
    for i in range(1, steps + 1):
        try:
            nxt = step(state, tau, blob, scheme)
        except (SimulationHalted, ConvergenceError) as exc:
            raise SimulationHalted(str(exc), state=state, rows=rows) from exc
        state = replace(nxt, time=t0 + i * tau)
        if i % stride == 0 or i == steps:
            emit(state)
    return rows, state


# -- diagnostics ------------------------------------------------------------


def point_hamiltonian(config: PointVortexConfig, delta: float = 0.0) -> float:
    """``-(1/4pi) sum_{i<j} G_i G_j log(|x_i - x_j|^2 + delta^2)``."""
    x, g = config.points, config.circulations
    i, j = np.triu_indices(len(g), 1)
    r2 = np.sum((x[i] - x[j]) ** 2, axis=1) + delta * delta
    return float(-np.sum(g[i] * g[j] * np.log(r2)) / (2 * TWO_PI))


def diagnostics(state: SimState, blob: BlobParams | None = None) -> Diagnostics:
    loop = state.loop_part
    area = omega = math.nan
    partials: tuple[float, ...] = ()
    if loop is not None:
        area = enclosed_area(loop.curve)
        omega = total_vorticity(loop)
        if isinstance(state.loop, PointedVortexLoop):
            partials = tuple(partial_vorticities(state.loop).tolist())
    H = math.nan
    if loop is None and state.config is not None and state.config.k >= 2:
        delta = (blob or BlobParams()).resolve(state)
        H = point_hamiltonian(state.config, delta)
    x, w = _elements(state)
    P = w @ x
    L = float(w @ np.sum(x * x, axis=1))
    return Diagnostics(state.time, area, omega, partials, H, (float(P[0]), float(P[1])), L)


def corotation_period(gamma: float, d: float, delta: float = 0.0) -> float:
    """Revolution period of two equal vortices ``gamma`` at distance ``d``.

    Each moves with speed ``gamma d / (2 pi (d^2 + delta^2))`` on a circle
    of radius ``d/2``, so ``Omega = gamma / (pi (d^2 + delta^2))``.
    """
    return TWO_PI * math.pi * (d * d + delta * delta) / gamma


def area_convergence_ratio(areas: Sequence[float]) -> float:
    """``(A(dt) - A(dt/2)) / (A(dt/2) - A(dt/4))``; about 16 for a fourth-order scheme."""
    a, b, c = areas
    return (a - b) / (b - c)


__all__ = [
    "BlobParams",
    "SimState",
    "Diagnostics",
    "make_state",
    "snap_marks",
    "csv_header",
    "induced_velocity",
    "step",
    "run",
    "diagnostics",
    "point_hamiltonian",
    "corotation_period",
    "area_convergence_ratio",
]
