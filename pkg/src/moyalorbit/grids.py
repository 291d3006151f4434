"""Periodic grids and centered FFT conventions.

Functions live on the lattice x_k = -L/2 + k L/N per axis; the dual lattice
is p_m = (m - N/2)/L.  With the e(t) = exp(2 pi i t) kernel the forward
transform is ghat(p) = sum_x g(x) e(-x.p) (L/N)^d and inversion carries the
weight (1/L)^d, so Fourier inversion holds with no extra constants and
exp(-pi |x|^2) is self-dual.  Real-valued shifts are done by phase ramps,
exact in the band-limited periodic model.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np


@dataclass(frozen=True)
class GridSpec:
    """Geometry of a periodic box: dim, points per axis, box length, theta."""

    dim: int
    n: int = 64
    length: float = 8.0
    theta: float = 1.0

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.n < 8 or (self.n & (self.n - 1)) != 0:
            raise ValueError("n must be a power of 2 and >= 8")
        if self.length <= 0:
            raise ValueError("length must be positive")
        if self.theta <= 0:
            raise ValueError("theta must be positive")

    @property
    def dx(self) -> float:
        return self.length / self.n

    @property
    def dp(self) -> float:
        return 1.0 / self.length

    @property
    def size(self) -> int:
        return self.n**self.dim

    def axis(self) -> np.ndarray:
        """Spatial nodes per axis: -L/2 + k L/N."""
        return -self.length / 2 + np.arange(self.n) * self.dx

    def dual_axis(self) -> np.ndarray:
        """Dual nodes per axis: (m - N/2)/L, centered."""
        return (np.arange(self.n) - self.n // 2) * self.dp

    def mesh(self) -> np.ndarray:
        """Array of shape (dim, N, ..., N) of spatial coordinates."""
        return np.stack(np.meshgrid(*([self.axis()] * self.dim), indexing="ij"))

    def dual_mesh(self) -> np.ndarray:
        return np.stack(np.meshgrid(*([self.dual_axis()] * self.dim), indexing="ij"))

    def dual_nodes(self) -> np.ndarray:
        """All dual lattice points, shape (N^d, dim), fixed row-major order."""
        return self.dual_mesh().reshape(self.dim, -1).T

    def with_theta(self, theta: float) -> "GridSpec":
        return replace(self, theta=theta)


class GridFunction:
    """Complex values on the periodic lattice of a GridSpec."""

    __slots__ = ("spec", "values")

    def __init__(self, spec: GridSpec, values: np.ndarray):
        values = np.asarray(values, dtype=complex)
        shape = (spec.n,) * spec.dim
        if values.shape != shape:
            raise ValueError(f"values must have shape {shape}, got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        self.spec = spec
        self.values = values
        self.values.setflags(write=False)

    @classmethod
    def from_callable(cls, spec: GridSpec, fn) -> "GridFunction":
        mesh = spec.mesh()
        return cls(spec, np.asarray(fn(*mesh), dtype=complex))

    def norm2(self) -> float:
        """Grid L2 norm with weight dx^d."""
        return float(
            np.sqrt(np.sum(np.abs(self.values) ** 2) * self.spec.dx**self.spec.dim)
        )

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def _check_spec(self, other: "GridFunction") -> None:
        if self.spec != other.spec:
            raise ValueError("grid specs do not match")

    def __add__(self, other):
        self._check_spec(other)
        return GridFunction(self.spec, self.values + other.values)

    def __sub__(self, other):
        self._check_spec(other)
        return GridFunction(self.spec, self.values - other.values)

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            self._check_spec(other)
            return GridFunction(self.spec, self.values * other.values)
        return GridFunction(self.spec, self.values * other)

    __rmul__ = __mul__

    def conj(self) -> "GridFunction":
        return GridFunction(self.spec, np.conj(self.values))

    def __repr__(self) -> str:
        return f"GridFunction(dim={self.spec.dim}, n={self.spec.n})"


def _centered_fftn(values: np.ndarray, axes) -> np.ndarray:
    return np.fft.fftshift(
        np.fft.fftn(np.fft.ifftshift(values, axes=axes), axes=axes), axes=axes
    )


def _centered_ifftn(values: np.ndarray, axes) -> np.ndarray:
    return np.fft.fftshift(
        np.fft.ifftn(np.fft.ifftshift(values, axes=axes), axes=axes), axes=axes
    )


def fft_forward(f: GridFunction) -> GridFunction:
    """ghat(p) = sum_x g(x) e(-2 pi i x.p) dx^d on the centered dual lattice."""
    spec = f.spec
    axes = tuple(range(spec.dim))
    return GridFunction(spec, _centered_fftn(f.values, axes) * spec.dx**spec.dim)


def fft_inverse(fhat: GridFunction) -> GridFunction:
    """g(x) = sum_p ghat(p) e(2 pi i x.p) dp^d."""
    spec = fhat.spec
    axes = tuple(range(spec.dim))
    scale = spec.size * spec.dp**spec.dim
    return GridFunction(spec, _centered_ifftn(fhat.values, axes) * scale)


def forward_array(values: np.ndarray, spec: GridSpec) -> np.ndarray:
    """Centered forward transform of the trailing dim axes (no dx weight)."""
    axes = tuple(range(values.ndim - spec.dim, values.ndim))
    return _centered_fftn(values, axes)


def inverse_array(values: np.ndarray, spec: GridSpec) -> np.ndarray:
    axes = tuple(range(values.ndim - spec.dim, values.ndim))
    return _centered_ifftn(values, axes)


def shift(f: GridFunction, s) -> GridFunction:
    """x -> f(x + s) for an arbitrary real shift s, via a Fourier phase ramp."""
    s = np.asarray(s, dtype=float)
    spec = f.spec
    fhat = forward_array(f.values, spec)
    k = spec.dual_mesh()
    ramp = np.exp(2j * np.pi * np.tensordot(s, k, axes=(0, 0)))
    return GridFunction(spec, inverse_array(fhat * ramp, spec))


def shift_batch(values_hat: np.ndarray, spec: GridSpec, shifts: np.ndarray) -> np.ndarray:
    """Shifted copies f(x + s_i) for a batch of shifts.

    values_hat: centered unweighted transform of f, shape (N,)*dim.
    shifts: (m, dim).  Returns (m,) + (N,)*dim.
    """
    k = spec.dual_mesh()
    ramp = np.exp(2j * np.pi * np.tensordot(shifts, k, axes=(1, 0)))
    return inverse_array(values_hat[None, ...] * ramp, spec)


def modulation(spec: GridSpec, alpha) -> np.ndarray:
    """Plane-wave values e(2 pi i x.alpha) on the grid."""
    alpha = np.asarray(alpha, dtype=float)
    x = spec.mesh()
    return np.exp(2j * np.pi * np.tensordot(alpha, x, axes=(0, 0)))


def spectral_gradient(f: GridFunction) -> list:
    """Per-axis spectral derivatives [df/dx_1, ...] as GridFunctions."""
    spec = f.spec
    fhat = forward_array(f.values, spec)
    k = spec.dual_mesh()
    out = []
    for a in range(spec.dim):
        out.append(
            GridFunction(spec, inverse_array(fhat * (2j * np.pi * k[a]), spec))
        )
    return out
