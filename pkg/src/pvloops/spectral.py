"""Trigonometric interpolation on uniform periodic grids.

Samples ``values[j]`` are taken at ``t_j = 2*pi*j/N``.  For even ``N`` the
Nyquist mode is represented by the real term ``c cos(N t / 2)`` so that the
interpolant of real data is real everywhere.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

FloatArray = NDArray[np.float64]

TWO_PI = 2.0 * np.pi


def grid(n: int) -> FloatArray:
    """Uniform parameter grid ``2*pi*j/n`` on ``[0, 2*pi)``."""
    return TWO_PI * np.arange(n) / n


def periodic_quadrature(values: ArrayLike) -> float:
    """Trapezoid rule on a uniform periodic grid: ``(2*pi/N) * sum(values)``."""
    v = np.asarray(values, dtype=np.float64)
    if v.size == 0:
        raise ValueError("periodic_quadrature needs at least one sample")
    return float(TWO_PI * np.sum(v, axis=0) / v.shape[0])


def _wavenumbers(n: int) -> NDArray[np.int64]:
    return np.fft.fftfreq(n, d=1.0 / n).round().astype(np.int64)


def spectral_derivative(values: ArrayLike, order: int = 1) -> FloatArray:
    """Derivative of the interpolant, sampled on the same grid.

    Works along axis 0, so ``(N, 2)`` point arrays are differentiated
    component-wise.
    """
    v = np.asarray(values, dtype=np.float64)
    n = v.shape[0]
    k = _wavenumbers(n).astype(np.float64)
    mult = (1j * k) ** order
    if n % 2 == 0 and order % 2 == 1:
        mult[n // 2] = 0.0
    shape = (n,) + (1,) * (v.ndim - 1)
    return np.real(np.fft.ifft(np.fft.fft(v, axis=0) * mult.reshape(shape), axis=0))


def upsample(values: ArrayLike, m: int) -> FloatArray:
    """Evaluate the interpolant of ``values`` on a finer ``m``-point grid."""
    v = np.asarray(values, dtype=np.float64)
    n = v.shape[0]
    if m == n:
        return v.copy()
    if m < n:
        if n % m:
            raise ValueError(f"cannot restrict {n} samples to {m} points")
        # the coarse grid is a subset of the fine one
        return v[:: n // m].copy()
    coef = np.fft.fft(v, axis=0)
    out = np.zeros((m,) + v.shape[1:], dtype=complex)
    half = n // 2
    if n % 2 == 0:
        out[:half] = coef[:half]
        out[m - half + 1 :] = coef[half + 1 :]
        out[half] = 0.5 * coef[half]
        out[m - half] = 0.5 * coef[half]
    else:
        out[: half + 1] = coef[: half + 1]
        out[m - half :] = coef[half + 1 :]
    return np.real(np.fft.ifft(out, axis=0)) * (m / n)


def shift(values: ArrayLike, tau: float) -> FloatArray:
    """Samples of ``t -> p(t + tau)`` where ``p`` interpolates ``values``."""
    v = np.asarray(values, dtype=np.float64)
    n = v.shape[0]
    steps = tau * n / TWO_PI
    if abs(steps - round(steps)) < 1e-12:
        return np.roll(v, -int(round(steps)), axis=0)
    k = _wavenumbers(n).astype(np.float64)
    phase = np.exp(1j * k * tau)
    if n % 2 == 0:
        phase[n // 2] = np.cos(0.5 * n * tau)
    shape = (n,) + (1,) * (v.ndim - 1)
    return np.real(np.fft.ifft(np.fft.fft(v, axis=0) * phase.reshape(shape), axis=0))


class TrigInterpolant:
    """Evaluate the trigonometric interpolant of uniform periodic samples.

    ``values`` may be ``(N,)`` or ``(N, d)``; evaluation at ``M`` parameters
    returns ``(M,)`` or ``(M, d)`` respectively.  For even ``N`` the Nyquist
    coefficient is carried by ``cos(N t / 2)``, which keeps the interpolant
    real.
    """

    def __init__(self, values: ArrayLike) -> None:
        v = np.asarray(values, dtype=np.float64)
        if v.ndim not in (1, 2):
            raise ValueError("samples must be 1-D or 2-D")
        self.n = n = v.shape[0]
        self._vector = v.ndim == 2
        coef = np.fft.rfft(v, axis=0) / n
        if not self._vector:
            coef = coef[:, None]
        self._mean = np.real(coef[0])
        top = (n + 1) // 2  # positive wavenumbers strictly below Nyquist
        self._k = np.arange(1, top, dtype=np.float64)
        self._c = 2.0 * coef[1:top]
        self._nyq = np.real(coef[n // 2]) if n % 2 == 0 else None

    def _out(self, arr: NDArray, scalar: bool) -> NDArray:
        if not self._vector:
            arr = arr[..., 0]
        return arr[0] if scalar else arr

    def __call__(self, t: ArrayLike) -> NDArray:
        return self.derivative(t, 0)

    def jet(self, t: ArrayLike, orders=(0, 1, 2)) -> list[NDArray]:
        """Several derivatives at once, sharing one table of exponentials."""
        tt = np.asarray(t, dtype=np.float64)
        scalar = tt.ndim == 0
        tt = np.atleast_1d(tt)
        e = np.exp(1j * np.outer(tt, self._k))
        out = []
        for p in orders:
            val = np.real(e @ (((1j * self._k) ** p)[:, None] * self._c))
            if p == 0:
                val = val + self._mean
            if self._nyq is not None:
                h = 0.5 * self.n
                # d^p/dt^p cos(h t) = h^p cos(h t + p pi/2)
                val = val + np.outer((h**p) * np.cos(h * tt + 0.5 * np.pi * p), self._nyq)
            out.append(self._out(val, scalar))
        return out

    def derivative(self, t: ArrayLike, order: int = 1) -> NDArray:
        return self.jet(t, (order,))[0]

    def antiderivative(self, t: ArrayLike) -> NDArray:
        """Integral of the interpolant from 0 to ``t`` (not reduced mod 2*pi)."""
        tt = np.asarray(t, dtype=np.float64)
        scalar = tt.ndim == 0
        tt = np.atleast_1d(tt)
        e = (np.exp(1j * np.outer(tt, self._k)) - 1.0) / (1j * self._k)
        out = np.real(e @ self._c) + np.outer(tt, self._mean)
        if self._nyq is not None:
            h = 0.5 * self.n
            out += np.outer(np.sin(h * tt) / h, self._nyq)
        return self._out(out, scalar)


def periodic_antiderivative(values: ArrayLike) -> FloatArray:
    """Zero-mean periodic antiderivative of zero-mean samples, on the grid."""
    v = np.asarray(values, dtype=np.float64)
    n = v.shape[0]
    k = _wavenumbers(n).astype(np.float64)
    inv = np.zeros(n, dtype=complex)
    nz = k != 0
    inv[nz] = 1.0 / (1j * k[nz])
    if n % 2 == 0:
        inv[n // 2] = 0.0
    shape = (n,) + (1,) * (v.ndim - 1)
    return np.real(np.fft.ifft(np.fft.fft(v, axis=0) * inv.reshape(shape), axis=0))
