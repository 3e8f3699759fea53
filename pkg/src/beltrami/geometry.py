"""Vectors, frames, ray/plane coordinates, and quadrature rules on S^1 and S^2.

All vectors are plain numpy arrays of shape (3,) (or batches (..., 3));
complex field values use the same shapes with complex dtype.  Everything in
this module is pure and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

UNIT_TOL = 1e-12
FOOT_TOL = 1e-10


def normalize(v: np.ndarray) -> np.ndarray:
    """Unit vector along v.  Rejects near-zero input rather than guessing."""
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v, axis=-1, keepdims=True)
    if np.any(n < UNIT_TOL):
        raise ValueError("cannot normalize a near-zero vector")
    return v / n


def direction(v) -> np.ndarray:
    """Validated unit direction (shape (3,))."""
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"direction expects shape (3,), got {v.shape}")
    return normalize(v)


@dataclass(frozen=True)
class Frame:
    """Right-handed orthonormal frame (e1, e2, e3)."""

    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray


def frame_for(d) -> Frame:
    """Deterministic right-handed frame (e1, e2, d) adapted to direction d.

    e1 = normalize(z x d) when |z x d| > 1e-8, else e1 = x; e2 = d x e1.
    Continuous away from the polar cutoff.
    """
    d = direction(d)
    zxd = np.array([-d[1], d[0], 0.0])
    if np.linalg.norm(zxd) > 1e-8:
        e1 = zxd / np.linalg.norm(zxd)
    else:
        e1 = np.array([1.0, 0.0, 0.0])
    e2 = np.cross(d, e1)
    return Frame(e1, e2, d)


def frames_for_many(dirs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized frame_for: (e1, e2) arrays for unit directions (..., 3)."""
    dirs = np.asarray(dirs, dtype=float)
    zxd = np.stack([-dirs[..., 1], dirs[..., 0], np.zeros_like(dirs[..., 0])], axis=-1)
    n = np.linalg.norm(zxd, axis=-1, keepdims=True)
    polar = n[..., 0] <= 1e-8
    safe_n = np.where(n > 1e-8, n, 1.0)
    e1 = zxd / safe_n
    e1[polar] = np.array([1.0, 0.0, 0.0])
    e2 = np.cross(dirs, e1)
    return e1, e2


@dataclass(frozen=True)
class Ray:
    """Oriented line: unit direction theta and foot point with foot.theta = 0."""

    theta: np.ndarray
    foot: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "theta", direction(self.theta))
        foot = np.asarray(self.foot, dtype=float)
        if abs(float(foot @ self.theta)) > FOOT_TOL:
            raise ValueError("ray foot point is not orthogonal to its direction")
        object.__setattr__(self, "foot", foot)

    @staticmethod
    def through(theta, x) -> "Ray":
        return project_to_perp(x, theta)


def project_to_perp(x, theta) -> Ray:
    """Ray through x along theta, with foot = x - (x.theta) theta."""
    theta = direction(theta)
    x = np.asarray(x, dtype=float)
    foot = x - (x @ theta) * theta
    return Ray(theta=theta, foot=foot)


@dataclass(frozen=True)
class Plane:
    """Hyperplane {y : kappa.y = p} with unit normal kappa and signed offset p."""

    p: float
    kappa: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "kappa", direction(self.kappa))
        object.__setattr__(self, "p", float(self.p))


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [a, b]."""
    x, w = leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


@dataclass(frozen=True)
class SphereQuadrature:
    """Quadrature nodes/weights for integrals over the unit sphere."""

    nodes: np.ndarray          # (N, 3) unit vectors
    weights: np.ndarray        # (N,), sum to 4 pi

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if np.any(w <= 0.0):
            raise ValueError("sphere quadrature weights must be positive")
        if abs(float(w.sum()) - 4.0 * np.pi) > 1e-10:
            raise ValueError("sphere quadrature weights must sum to 4 pi")

    def integrate(self, fn) -> np.ndarray:
        """Integral of fn(nodes) over the sphere; fn maps (N,3) -> (N, ...)."""
        vals = np.asarray(fn(self.nodes))
        return np.tensordot(self.weights, vals, axes=(0, 0))


def make_sphere_quadrature(L: int) -> SphereQuadrature:
    """Product rule: Gauss-Legendre with L nodes in cos(polar) x 2L azimuths.

    Integrates every spherical harmonic of degree < L exactly (to rounding).
    """
    if L < 2:
        raise ValueError("sphere quadrature needs L >= 2")
    u, wu = leggauss(L)
    n_psi = 2 * L
    psi = 2.0 * np.pi * np.arange(n_psi) / n_psi
    s = np.sqrt(1.0 - u**2)
    nodes = np.stack(
        [
            np.outer(s, np.cos(psi)).ravel(),
            np.outer(s, np.sin(psi)).ravel(),
            np.outer(u, np.ones(n_psi)).ravel(),
        ],
        axis=-1,
    )
    weights = np.outer(wu, np.full(n_psi, 2.0 * np.pi / n_psi)).ravel()
    return SphereQuadrature(nodes=nodes, weights=weights)


@dataclass(frozen=True)
class PolarSphereGrid:
    """Product grid in (polar angle alpha, azimuth psi) for sphere integrals.

    Gauss-Legendre in alpha on [0, pi] and a uniform trapezoid in psi. Carries
    the polar angles explicitly so integrands with an analytic 1/sin(alpha)
    divergence can be integrated after the Jacobian cancellation
    sin(alpha) * (1/sin(alpha)) = 1 is done in closed form, never numerically.
    """

    n_alpha: int
    n_psi: int
    alphas: np.ndarray = field(init=False)
    alpha_weights: np.ndarray = field(init=False)
    psis: np.ndarray = field(init=False)

    def __post_init__(self):
        a, wa = gauss_legendre(self.n_alpha, 0.0, np.pi)
        object.__setattr__(self, "alphas", a)
        object.__setattr__(self, "alpha_weights", wa)
        object.__setattr__(self, "psis", 2.0 * np.pi * np.arange(self.n_psi) / self.n_psi)

    def nodes(self) -> np.ndarray:
        """Unit vectors theta(alpha, psi), shape (n_alpha, n_psi, 3)."""
        sa = np.sin(self.alphas)[:, None]
        ca = np.cos(self.alphas)[:, None]
        cp = np.cos(self.psis)[None, :]
        sp = np.sin(self.psis)[None, :]
        return np.stack([sa * cp, sa * sp, ca * np.ones_like(cp)], axis=-1)

    def integrate_smooth(self, vals: np.ndarray) -> np.ndarray:
        """Sphere integral of a bounded integrand sampled on the grid.

        vals has shape (n_alpha, n_psi, ...); the sin(alpha) measure is applied
        here.
        """
        w = self.alpha_weights * np.sin(self.alphas)
        return self._reduce(vals, w)

    def integrate_reduced(self, vals: np.ndarray) -> np.ndarray:
        """Sphere integral when vals = sin(alpha) * integrand analytically.

        Used for integrands with a 1/v_r divergence at the poles: the caller
        supplies the product with the Jacobian already cancelled.
        """
        return self._reduce(vals, self.alpha_weights)

    def _reduce(self, vals: np.ndarray, alpha_w: np.ndarray) -> np.ndarray:
        vals = np.asarray(vals)
        dpsi = 2.0 * np.pi / self.n_psi
        return dpsi * np.tensordot(alpha_w, vals.sum(axis=1), axes=(0, 0))


def make_polar_sphere_quadrature(n_alpha: int, n_psi: int | None = None) -> SphereQuadrature:
    """Gauss-Legendre in the polar angle itself x uniform azimuths.

    Unlike make_sphere_quadrature (Gauss-Legendre in cos(polar), exact on
    polynomials), this rule is spectrally accurate for integrands that are
    smooth in (alpha, psi) but only continuous on the sphere, such as products
    with the helical basis vectors, whose components carry sin(alpha) factors.
    """
    if n_psi is None:
        n_psi = 2 * n_alpha
    grid = PolarSphereGrid(n_alpha, n_psi)
    w = (grid.alpha_weights * np.sin(grid.alphas))[:, None] * (2.0 * np.pi / n_psi)
    weights = np.broadcast_to(w, (n_alpha, n_psi)).ravel().copy()
    weights *= 4.0 * np.pi / weights.sum()
    return SphereQuadrature(nodes=grid.nodes().reshape(-1, 3), weights=weights)


@dataclass(frozen=True)
class CircleQuadrature:
    """Uniform trapezoid rule on a (great) circle: N nodes, weight 2 pi / N."""

    N: int

    def __post_init__(self):
        if self.N < 4:
            raise ValueError("circle quadrature needs N >= 4")

    @property
    def phis(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.N) / self.N

    @property
    def weight(self) -> float:
        return 2.0 * np.pi / self.N


def great_circle_nodes(theta, N: int) -> np.ndarray:
    """N equispaced unit vectors on the great circle perpendicular to theta."""
    fr = frame_for(theta)
    phis = 2.0 * np.pi * np.arange(N) / N
    return np.outer(np.cos(phis), fr.e1) + np.outer(np.sin(phis), fr.e2)
