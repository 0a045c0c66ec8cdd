"""Hamiltonians realizing a prescribed area-preserving variation of a curve.

Given an embedding ``f`` and a field ``u`` along it with
``int f*(i_u omega) = 0``, build ``h = h1 - h2`` with ``X_h o f = u``:

* ``h1`` extends a primitive ``lam`` of ``f*(i_u omega)`` constantly along
  normals, cut off smoothly at the tube boundary;
* ``h2 = d * g(s) * chi(d/w)`` where ``g`` is the normal coefficient of the
  one-form ``dh1 o f - i_u omega`` (which kills tangent vectors), so that
  ``dh2 = gamma`` along the curve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .errors import InvalidArgument, NotAreaTangentError
from .geometry import ClosedCurve, area_form, frame, reach
from .hamiltonians import HamiltonianExpr, TubeTerm, eval_X
from .spectral import FloatArray, periodic_antiderivative, periodic_quadrature

AREA_TOL = 1e-6
RESIDUAL_TOL = 1e-6


@dataclass(frozen=True)
class ReconstructionResult:
    hamiltonian: HamiltonianExpr
    residual: float

    @property
    def ok(self) -> bool:
        return self.residual < RESIDUAL_TOL


def _field(curve: ClosedCurve, u: ArrayLike) -> FloatArray:
    u = np.asarray(u, dtype=np.float64)
    if u.shape != (curve.n_samples, 2):
        raise InvalidArgument(f"field must have shape ({curve.n_samples}, 2)")
    return u


def flux_density(curve: ClosedCurve, u: ArrayLike) -> FloatArray:
    """Coefficient ``a(t)`` of ``f*(i_u omega) = a(t) dt``, i.e. ``omega(u, f')``."""
    return area_form(_field(curve, u), curve.derivative)


def lambda_from_tangent(
    curve: ClosedCurve, u: ArrayLike, tol: float = AREA_TOL, atol: float = 1e-12
) -> FloatArray:
    """Zero-mean ``lam`` with ``d lam = f*(i_u omega)``.

    The flux ``int a dt`` must be within ``tol * int |a| dt + atol``.
    """
    a = flux_density(curve, u)
    scale = periodic_quadrature(np.abs(a))
    if abs(periodic_quadrature(a)) > tol * scale + atol:
        raise NotAreaTangentError("field changes the enclosed area (non-zero flux)")
    return periodic_antiderivative(a - a.mean())


def default_width(curve: ClosedCurve) -> float:
    return 0.5 * reach(curve)


def reconstruct_hamiltonian(
    curve: ClosedCurve, u: ArrayLike, width: float | None = None, tol: float = AREA_TOL
) -> ReconstructionResult:
    u = _field(curve, u)
    w = default_width(curve) if width is None else width
    lam = lambda_from_tangent(curve, u, tol)
    fr = frame(curve)
    # gamma(n) = dh1(n) - omega(u, n) and dh1(n) = 0 on the curve
    g_normal = -area_form(u, fr.normals)
    h1 = TubeTerm(curve, w, along=lam)
    h2 = TubeTerm(curve, w, slope=g_normal, check=False)
    h = HamiltonianExpr((h1, h2), (1.0, -1.0))
    return ReconstructionResult(h, reconstruction_residual(curve, h, u))


def reconstruction_residual(curve: ClosedCurve, h, u: ArrayLike) -> float:
    """``max |X_h o f - u| / max |u|`` with ``X_h`` evaluated from scratch."""
    u = _field(curve, u)
    err = np.linalg.norm(eval_X(h, curve.points) - u, axis=1).max()
    size = np.linalg.norm(u, axis=1).max()
    return float(err / size) if size > 0 else float(err)
