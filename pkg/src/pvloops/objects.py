"""Point vortices, vortex loops and pointed vortex loops.

A vortex loop stores its vorticity density as the parameter pullback
``f*beta = b(t) dt``, so pushing forward along a reparametrization is exact
on samples.  A pointed vortex loop additionally carries ``k`` marks (parameter
values in ``[0, 2*pi)``) with circulations.  Marks are listed in cyclic order
along the orientation, going around exactly once; they need not start at the
smallest parameter, so labels survive a rotation of the parametrization.
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np
from numpy.typing import ArrayLike

from . import spectral
from .errors import ConvergenceError, InvalidArgument
from .geometry import ClosedCurve, enclosed_area
from .spectral import TWO_PI, FloatArray, TrigInterpolant, periodic_quadrature

SYMMETRY_TOL = 1e-9


def _mark_gaps(s: FloatArray) -> FloatArray:
    if len(s) == 1:
        return np.array([TWO_PI])
    gaps = np.mod(np.roll(s, -1) - s, TWO_PI)
    return gaps


def _vector(x: ArrayLike, name: str) -> FloatArray:
    arr = np.array(x, dtype=np.float64).reshape(-1)
    if not np.isfinite(arr).all():
        raise InvalidArgument(f"{name} contains non-finite values")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PointVortexConfig:
    points: FloatArray
    circulations: FloatArray

    def __init__(self, points: ArrayLike, circulations: ArrayLike) -> None:
        pts = np.array(points, dtype=np.float64).reshape(-1, 2)
        gam = _vector(circulations, "circulations")
        if len(pts) < 1:
            raise InvalidArgument("a configuration needs at least one point")
        if len(gam) != len(pts):
            raise InvalidArgument("points and circulations differ in length")
        if np.any(gam == 0.0):
            raise InvalidArgument("circulations must be non-zero")
        if len(pts) > 1:
            dist = np.linalg.norm(pts[:, None] - pts[None, :], axis=2)
            np.fill_diagonal(dist, np.inf)
            if dist.min() == 0.0:
                raise InvalidArgument("points must be pairwise distinct")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "circulations", gam)

    @property
    def k(self) -> int:
        return len(self.circulations)

    def to_json(self) -> dict:
        return {"schema": "pvc/1", "points": self.points.tolist(), "gamma": self.circulations.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "PointVortexConfig":
        if data.get("schema") != "pvc/1":
            raise InvalidArgument(f"expected schema 'pvc/1', got {data.get('schema')!r}")
        return cls(data["points"], data["gamma"])


@dataclass(frozen=True)
class VortexLoop:
    curve: ClosedCurve
    density: FloatArray

    def __init__(self, curve: ClosedCurve, density: ArrayLike) -> None:
        b = _vector(density, "density")
        if len(b) != curve.n_samples:
            raise InvalidArgument("density length must equal n_samples")
        if np.any(b <= 0.0):
            raise InvalidArgument("vorticity density must be positive")
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "density", b)

    @property
    def total_vorticity(self) -> float:
        return total_vorticity(self)


@dataclass(frozen=True)
class PointedVortexLoop:
    loop: VortexLoop
    marks: FloatArray
    circulations: FloatArray

    def __init__(self, loop: VortexLoop, marks: ArrayLike, circulations: ArrayLike) -> None:
        s = _vector(marks, "marks")
        gam = _vector(circulations, "circulations")
        if len(s) < 1:
            raise InvalidArgument("a pointed vortex loop needs at least one mark")
        if len(gam) != len(s):
            raise InvalidArgument("marks and circulations differ in length")
        if np.any(s < 0.0) or np.any(s >= TWO_PI):
            raise InvalidArgument("marks must lie in [0, 2*pi)")
        if np.any(_mark_gaps(s) <= 0.0) or abs(_mark_gaps(s).sum() - TWO_PI) > 1e-9:
            raise InvalidArgument("marks must be distinct and cyclically ordered")
        if np.any(gam == 0.0):
            raise InvalidArgument("circulations must be non-zero")
        object.__setattr__(self, "loop", loop)
        object.__setattr__(self, "marks", s)
        object.__setattr__(self, "circulations", gam)

    @property
    def curve(self) -> ClosedCurve:
        return self.loop.curve

    @property
    def density(self) -> FloatArray:
        return self.loop.density

    @property
    def k(self) -> int:
        return len(self.marks)

    @property
    def marked_points(self) -> FloatArray:
        return np.atleast_2d(self.curve(self.marks))

    @property
    def unwrapped_marks(self) -> FloatArray:
        """Marks lifted to ``[s_1, s_1 + 2*pi)`` so they increase."""
        return self.marks[0] + np.concatenate([[0.0], np.cumsum(_mark_gaps(self.marks))[:-1]])

    def to_json(self) -> dict:
        return {
            "schema": "pvl/1",
            "curve": self.curve.to_json(),
            "density": self.density.tolist(),
            "marks": self.marks.tolist(),
            "circulations": self.circulations.tolist(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "PointedVortexLoop":
        if data.get("schema") != "pvl/1":
            raise InvalidArgument(f"expected schema 'pvl/1', got {data.get('schema')!r}")
        for key in ("curve", "density", "marks", "circulations"):
            if key not in data:
                raise InvalidArgument(f"pvl/1 document lacks {key!r}")
        loop = VortexLoop(ClosedCurve.from_json(data["curve"]), data["density"])
        return cls(loop, data["marks"], data["circulations"])


@dataclass(frozen=True)
class OrbitInvariants:
    area: float
    partials: tuple[float, ...]
    circulations: tuple[float, ...]
    l: int
    m: int

    def to_json(self) -> dict:
        return {
            "a": self.area,
            "partials": list(self.partials),
            "circulations": list(self.circulations),
            "l": self.l,
            "m": self.m,
        }


def total_vorticity(loop: VortexLoop | PointedVortexLoop) -> float:
    if isinstance(loop, PointedVortexLoop):
        loop = loop.loop
    return periodic_quadrature(loop.density)


def partial_vorticities(pvl: PointedVortexLoop) -> FloatArray:
    """Density integrals over consecutive mark intervals, last one wrapping."""
    B = np.atleast_1d(TrigInterpolant(pvl.density).antiderivative(pvl.unwrapped_marks))
    total = total_vorticity(pvl)
    inner = np.diff(B)
    return np.append(inner, total - inner.sum())


def canonical_marks(partials: ArrayLike) -> FloatArray:
    w = np.asarray(partials, dtype=np.float64).reshape(-1)
    if len(w) < 1:
        raise InvalidArgument("need at least one partial vorticity")
    if np.any(w <= 0.0) or not np.isfinite(w).all():
        raise InvalidArgument("partial vorticities must be positive")
    return TWO_PI * np.concatenate([[0.0], np.cumsum(w)[:-1]]) / w.sum()


def realize(embedding: ClosedCurve, partials: ArrayLike, circulations: ArrayLike) -> PointedVortexLoop:
    """Pointed vortex loop carried by ``embedding`` with constant pullback density."""
    w = np.asarray(partials, dtype=np.float64).reshape(-1)
    gam = np.asarray(circulations, dtype=np.float64).reshape(-1)
    if len(w) != len(gam):
        raise InvalidArgument("partials and circulations differ in length")
    marks = canonical_marks(w)
    density = np.full(embedding.n_samples, w.sum() / TWO_PI)
    return PointedVortexLoop(VortexLoop(embedding, density), marks, gam)


def invert_cumulative(density: ArrayLike, targets: ArrayLike, start: float, tol: float = 1e-12):
    """Solve ``B(s) = B(start) + targets`` for ``s`` with ``B`` the density integral.

    ``targets`` must lie in ``[0, total)``.  Newton iterations from a monotone
    piecewise-linear guess, safeguarded by bisection brackets.
    """
    b = np.asarray(density, dtype=np.float64)
    interp = TrigInterpolant(b)
    n = len(b)
    y = np.asarray(targets, dtype=np.float64)
    B0 = interp.antiderivative(start)
    # cumulative integral on a grid starting at `start` (period 2*pi)
    knots = start + spectral.grid(n)
    knots = np.append(knots, start + TWO_PI)
    cum = interp.antiderivative(knots) - B0
    s = np.interp(y, cum, knots)
    lo = np.full_like(y, start)
    hi = np.full_like(y, start + TWO_PI)
    for _ in range(100):
        r = interp.antiderivative(s) - B0 - y
        lo = np.where(r < 0, s, lo)
        hi = np.where(r > 0, s, hi)
        step = r / interp(s)
        if np.all(np.abs(step) < tol):
            return s - step
        s_new = s - step
        # bisect only where Newton leaves the bracket
        bad = (s_new < lo) | (s_new > hi)
        s = np.where(bad, 0.5 * (lo + hi), s_new)
    raise ConvergenceError("cumulative density inversion did not converge")


def _is_canonical(pvl: PointedVortexLoop) -> bool:
    b = pvl.density
    return pvl.marks[0] == 0.0 and np.ptp(b) <= 1e-14 * abs(b.mean())


def canonicalize(pvl: PointedVortexLoop) -> ClosedCurve:
    """The embedding ``g`` with ``g*beta = (omega/2pi) dt`` and ``g(0) = x_1``.

    ``g = f o sigma`` where ``sigma`` inverts the cumulative density measured
    from the first mark.
    """
    if _is_canonical(pvl):
        return pvl.curve
    total = total_vorticity(pvl)
    n = pvl.curve.n_samples
    targets = total * spectral.grid(n) / TWO_PI
    sigma = invert_cumulative(pvl.density, targets, pvl.marks[0])
    return ClosedCurve(pvl.curve(np.mod(sigma, TWO_PI)), check=False)


def divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


def _shift_invariant(x: FloatArray, shift: int, tol: float) -> bool:
    y = np.roll(x, -shift)
    return bool(np.all(np.abs(x - y) <= tol * np.maximum(np.abs(x), np.abs(y))))


def symmetry_period(circulations: ArrayLike, partials: ArrayLike, tol: float = SYMMETRY_TOL):
    """Smallest cyclic shift ``l`` (a divisor of ``k``) fixing both sequences.

    Returns ``(l, m)`` with ``m = k // l``.
    """
    gam = np.asarray(circulations, dtype=np.float64).reshape(-1)
    w = np.asarray(partials, dtype=np.float64).reshape(-1)
    if len(gam) != len(w) or len(gam) < 1:
        raise InvalidArgument("circulations and partials must have equal length k >= 1")
    k = len(gam)
    for l in divisors(k):
        if _shift_invariant(gam, l, tol) and _shift_invariant(w, l, tol):
            return l, k // l
    raise AssertionError("unreachable: l = k always qualifies")


def _lex_less(a: FloatArray, b: FloatArray, tol: float) -> bool:
    diff = a.reshape(-1) - b.reshape(-1)
    scale = tol * max(1.0, float(np.abs(a).max()))
    for d in diff:
        if d < -scale:
            return True
        if d > scale:
            return False
    return False


def zm_canonical_rep(embedding: ClosedCurve, m: int, tol: float = 1e-9) -> ClosedCurve:
    """Lexicographically smallest of the ``m`` rotations ``f o R_{2 pi j/m}``."""
    if m < 1:
        raise InvalidArgument("m must be positive")
    best = embedding
    for j in range(1, m):
        cand = embedding.rotate_parameter(TWO_PI * j / m)
        if _lex_less(cand.points, best.points, tol):
            best = cand
    return best


def point_partition(circulations: ArrayLike, tol: float = SYMMETRY_TOL) -> list[list[int]]:
    """Blocks of (0-based) indices with equal circulation, in order of first use."""
    gam = np.asarray(circulations, dtype=np.float64).reshape(-1)
    blocks: list[list[int]] = []
    reps: list[float] = []
    for i, g in enumerate(gam):
        for blk, r in zip(blocks, reps):
            if abs(g - r) <= tol * max(abs(g), abs(r)):
                blk.append(i)
                break
        else:
            blocks.append([i])
            reps.append(g)
    return blocks


def orbit_invariants(pvl: PointedVortexLoop, tol: float = SYMMETRY_TOL) -> OrbitInvariants:
    w = partial_vorticities(pvl)
    l, m = symmetry_period(pvl.circulations, w, tol)
    return OrbitInvariants(
        area=enclosed_area(pvl.curve),
        partials=tuple(float(x) for x in w),
        circulations=tuple(float(x) for x in pvl.circulations),
        l=l,
        m=m,
    )


def is_prequantizable(a: float, omega: float, tol: float = 1e-12) -> bool:
    if omega <= 0:
        raise InvalidArgument("total vorticity must be positive")
    x = a * omega
    return bool(abs(x - TWO_PI * round(x / TWO_PI)) <= tol)


def rotate_pvl(pvl: PointedVortexLoop, tau: float) -> PointedVortexLoop:
    """Same geometric object, parametrized by ``t -> f(t + tau)``."""
    curve = pvl.curve.rotate_parameter(tau)
    density = spectral.shift(pvl.density, tau)
    marks = np.mod(pvl.marks - tau, TWO_PI)
    return PointedVortexLoop(VortexLoop(curve, density), marks, pvl.circulations)


__all__ = [
    "PointVortexConfig",
    "VortexLoop",
    "PointedVortexLoop",
    "OrbitInvariants",
    "total_vorticity",
    "partial_vorticities",
    "canonical_marks",
    "realize",
    "canonicalize",
    "symmetry_period",
    "zm_canonical_rep",
    "point_partition",
    "orbit_invariants",
    "is_prequantizable",
    "rotate_pvl",
]
