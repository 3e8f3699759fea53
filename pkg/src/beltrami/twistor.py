"""Contour-integral generator for curl eigenfields on mini-twistor data.

A point x and a spectral parameter omega meet through the incidence value

    eta(x, omega) = (x + i y) + 2 z omega - (x - i y) omega^2.

Closed contour integrals of  [(1 - w^2), i (1 + w^2), 2 w] e^{-i k f} u(eta, w)
produce fields with curl F = k F for any u holomorphic near the contour; the
null prefactor makes the curl condition automatic.  Two phase factors are
supported:

    F1: f = omega (x - i y) - z
    F2: f = (1/2) [omega (x - i y) + (x + i y)/omega]

which generate the same field classes (they differ by a factor holomorphic in
omega that can be absorbed into u).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import j0, spherical_jn

from .geometry import gauss_legendre
from .fields import CKCylindrical, eval_field


class PoleOnContour(ValueError):
    """A pole of the integrand lies too close to the contour."""


class BranchViolation(ValueError):
    """Point outside the branch of validity (z <= 0 for the point-source case)."""


def incidence_eta(x, omega):
    """Incidence value eta(x, omega); omega may be scalar or an array."""
    x = np.asarray(x, dtype=float)
    omega = np.asarray(omega)
    zeta = x[0] + 1j * x[1]
    zeta_bar = x[0] - 1j * x[1]
    return zeta + 2.0 * x[2] * omega - zeta_bar * omega**2


@dataclass(frozen=True)
class ContourSpec:
    """Circular contour center + radius * e^{2 pi i j / N}, trapezoid nodes."""

    center: complex = 0.0
    radius: float = 1.0
    N: int = 64

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("contour radius must be positive")
        if self.N < 8:
            raise ValueError("contour needs at least 8 nodes")

    def nodes(self, n: int | None = None) -> np.ndarray:
        n = n or self.N
        return self.center + self.radius * np.exp(2j * np.pi * np.arange(n) / n)

    def check_poles(self, poles, tol: float = 1e-6):
        for p in poles:
            if abs(abs(complex(p) - self.center) - self.radius) < tol:
                raise PoleOnContour(f"pole {p} within {tol} of the contour")


def contour_integrate(g, c: ContourSpec, n: int | None = None) -> complex:
    """Trapezoid contour integral of g along the circle.

    Spectrally convergent in N for integrands analytic in an annulus around
    the contour; the caller controls N.
    """
    n = n or c.N
    w = c.nodes(n)
    return complex((2j * np.pi / n) * np.sum(g(w) * (w - c.center)))


def contour_integrate_adaptive(g, c: ContourSpec, tol: float = 1e-12,
                               n_max: int = 4096):
    """Double the node count until two successive values differ by < tol."""
    n = max(c.N, 16)
    prev = contour_integrate(g, c, n)
    while n < n_max:
        n *= 2
        cur = contour_integrate(g, c, n)
        if abs(cur - prev) < tol:
            return cur
        prev = cur
    return prev


def _contour_integrate_vec(gvec, c: ContourSpec, tol: float = 1e-12,
                           n_max: int = 4096) -> np.ndarray:
    """Adaptive trapezoid integral of a vector-valued integrand gvec(w) -> (N, 3)."""
    n = max(c.N, 16)

    def value(nn):
        w = c.nodes(nn)
        vals = np.asarray(gvec(w))
        return (2j * np.pi / nn) * np.tensordot(w - c.center, vals, axes=(0, 0))

    prev = value(n)
    while n < n_max:
        n *= 2
        cur = value(n)
        if np.max(np.abs(cur - prev)) < tol:
            return cur
        prev = cur
    return prev


# --------------------------------------------------------------------------
# Integrand catalog
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class EtaPowerOverOmega:
    """u = eta^n / (omega - omega0)^m."""

    n: int = 0
    m: int = 1
    omega0: complex = 0.0

    def __post_init__(self):
        if self.n < 0 or self.m < 1:
            raise ValueError("need n >= 0 and m >= 1")

    def poles(self, x):
        return [self.omega0]

    def __call__(self, x, w):
        return incidence_eta(x, w) ** self.n / (w - self.omega0) ** self.m


@dataclass(frozen=True)
class HolomorphicOfEta:
    """u = g(eta)/omega^m for a polynomial g given by its coefficients."""

    coefficients: tuple[complex, ...]
    denominator_power: int = 1

    def poles(self, x):
        return [0.0] if self.denominator_power > 0 else []

    def g(self, eta):
        out = np.zeros_like(np.asarray(eta, dtype=complex))
        for a in reversed(self.coefficients):
            out = out * eta + a
        return out

    def g_prime(self, eta):
        out = np.zeros_like(np.asarray(eta, dtype=complex))
        for k in range(len(self.coefficients) - 1, 0, -1):
            out = out * eta + k * self.coefficients[k]
        return out

    def __call__(self, x, w):
        return self.g(incidence_eta(x, w)) / w ** self.denominator_power


@dataclass(frozen=True)
class LaurentInOmegaPrime:
    """u = 1/omega'^(n+1) under omega = i omega' (cylindrical eigenfield family)."""

    n: int

    def poles(self, x):
        return [0.0]

    def __call__(self, x, w):
        return (w / 1j) ** (-(self.n + 1))


@dataclass(frozen=True)
class LundquistKernel:
    """u = (1/omega^2) exp(-i (nu/2) eta / omega), the F1-phase Lundquist datum."""

    nu: float = 1.0

    def poles(self, x):
        return [0.0]

    def __call__(self, x, w):
        return np.exp(-0.5j * self.nu * incidence_eta(x, w) / w) / w**2


@dataclass(frozen=True)
class RawLaurent:
    """u = sum_k a_k omega^k from a table {k: a_k} (k may be negative)."""

    table: tuple[tuple[int, complex], ...]

    def poles(self, x):
        return [0.0] if any(k < 0 for k, _ in self.table) else []

    def __call__(self, x, w):
        w = np.asarray(w, dtype=complex)
        out = np.zeros_like(w)
        for k, a in self.table:
            out = out + a * w ** k
        return out


@dataclass(frozen=True)
class AxisymmetricPower:
    """Scalar datum H = (eta/omega)^n / omega for the axisymmetric potentials."""

    n: int

    def poles(self, x):
        if self.n >= 0:
            return [0.0]
        x = np.asarray(x, dtype=float)
        zeta_bar = x[0] - 1j * x[1]
        if abs(zeta_bar) < 1e-14:
            return [0.0]
        R = float(np.linalg.norm(x))
        return [0.0, (x[2] - R) / zeta_bar, (x[2] + R) / zeta_bar]

    def __call__(self, x, w):
        return (incidence_eta(x, w) / w) ** self.n / w


@dataclass(frozen=True)
class SpheromakDebye:
    """Named spheromak potential phi = -(F0/k) j1(k R) cos(polar).

    Realized through the polar-angle quadrature representation (see
    spheromak_debye_integral) rather than an omega-contour; usable as the
    potential argument of ck_from_debye with the radial axis choice.
    """

    F0: complex = 1.0
    k: float = 1.0

    def potential(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        R = np.linalg.norm(pts, axis=-1)
        kR = self.k * R
        safe = np.where(kR > 0, kR, 1.0)
        j1r = np.where(kR > 0, spherical_jn(1, safe), 0.0)
        cos_t = np.where(R > 0, pts[..., 2] / np.where(R > 0, R, 1.0), 1.0)
        small = kR < 1e-3
        lim = kR / 3.0 - kR**3 / 30.0
        j1r = np.where(small, lim, j1r)
        return -(self.F0 / self.k) * j1r * cos_t


VectorIntegrand = EtaPowerOverOmega | HolomorphicOfEta | LaurentInOmegaPrime | LundquistKernel | RawLaurent


@dataclass(frozen=True)
class IntegrandSpec:
    """Holomorphic datum u, phase kind ('F1' or 'F2'), and wavenumber k."""

    u: VectorIntegrand
    phase: str = "F1"
    k: float = 1.0

    def __post_init__(self):
        if self.phase not in ("F1", "F2"):
            raise ValueError("phase must be 'F1' or 'F2'")


def integrand_to_json(spec: IntegrandSpec) -> dict:
    """JSON form {"u": {...}, "phase": "F1"|"F2", "k": real} of the datum."""
    u = spec.u
    if isinstance(u, EtaPowerOverOmega):
        u_obj = {"type": "eta_power_over_omega", "n": u.n, "m": u.m,
                 "omega0": [complex(u.omega0).real, complex(u.omega0).imag]}
    elif isinstance(u, HolomorphicOfEta):
        u_obj = {"type": "holomorphic_of_eta",
                 "coefficients": [[complex(c).real, complex(c).imag]
                                  for c in u.coefficients],
                 "denominator_power": u.denominator_power}
    elif isinstance(u, LaurentInOmegaPrime):
        u_obj = {"type": "laurent_in_omega_prime", "n": u.n}
    elif isinstance(u, LundquistKernel):
        u_obj = {"type": "lundquist_kernel", "nu": u.nu}
    elif isinstance(u, RawLaurent):
        u_obj = {"type": "raw_laurent",
                 "table": [[k_, [complex(a).real, complex(a).imag]]
                           for k_, a in u.table]}
    else:
        raise TypeError(f"not a serializable integrand: {u!r}")
    return {"u": u_obj, "phase": spec.phase, "k": spec.k}


def _phase_values(phase: str, k: float, x, w: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    zeta_bar = x[0] - 1j * x[1]
    zeta = x[0] + 1j * x[1]
    if phase == "F1":
        f = w * zeta_bar - x[2]
    else:
        f = 0.5 * (w * zeta_bar + zeta / w)
    return np.exp(-1j * k * f)


def null_vector(w: np.ndarray) -> np.ndarray:
    """[(1 - w^2), i (1 + w^2), 2 w]: a null vector of C^3 for every w."""
    w = np.asarray(w, dtype=complex)
    return np.stack([1.0 - w**2, 1j * (1.0 + w**2), 2.0 * w], axis=-1)


def trkalian_from_twistor(spec: IntegrandSpec, x, c: ContourSpec | None = None,
                          adaptive_tol: float = 1e-12) -> np.ndarray:
    """Field value of the contour integral; satisfies curl F = k F.

    The contour is validated against the integrand's reported pole locations;
    node counts double adaptively until the trapezoid value settles.
    """
    c = c or ContourSpec()
    if spec.phase == "F2":
        c.check_poles([0.0])
    c.check_poles(spec.u.poles(x))

    def gvec(w):
        return (null_vector(w) * ( _phase_values(spec.phase, spec.k, x, w)
                                   * spec.u(x, w))[..., None])

    return _contour_integrate_vec(gvec, c, adaptive_tol)


def trkalian_laurent_ck(n: int, nu: float, x, c: ContourSpec | None = None) -> np.ndarray:
    """Cylindrical eigenfield from the Laurent datum 1/omega'^(n+1), omega = i omega'.

    Equals the closed form of CKCylindrical(m = n - 1, nu) with its 4 pi i
    normalization.
    """
    spec = IntegrandSpec(u=LaurentInOmegaPrime(n), phase="F2", k=nu)
    return trkalian_from_twistor(spec, x, c)


def ck_cylindrical_closed(m: int, nu: float, x) -> np.ndarray:
    """Direct closed form of the cylindrical eigenfield (catalog entry)."""
    return eval_field(CKCylindrical(m=m, nu=nu), x)


def scalar_helmholtz_from_twistor(H, x, k: float, phase: str = "F2",
                                  c: ContourSpec | None = None,
                                  adaptive_tol: float = 1e-12) -> complex:
    """Contour integral of e^{-i k f} H(eta, omega): a Helmholtz solution.

    H is a callable (x, omega_array) -> values, e.g. AxisymmetricPower or a
    lambda for omega^{m-1}.
    """
    c = c or ContourSpec()
    if phase == "F2":
        c.check_poles([0.0])
    if hasattr(H, "poles"):
        c.check_poles(H.poles(x))

    def g(w):
        return _phase_values(phase, k, x, w) * H(x, w)

    return contour_integrate_adaptive(g, c, adaptive_tol)


def helmholtz_point_source_closed(x, sigma: float) -> complex:
    """(1/2) e^{i sigma |x|}/|x|, the free-space point-source solution."""
    x = np.asarray(x, dtype=float)
    R = float(np.linalg.norm(x))
    return 0.5 * np.exp(1j * sigma * R) / R


def fundamental_solution_check(x, sigma: float, c: ContourSpec | None = None,
                               min_pole_distance: float = 1e-3) -> complex:
    """Residue-normalized n = -1 axisymmetric integral for z > 0.

    Returns (1/(2 pi i)) Int e^{-i sigma (omega zeta_bar - z)} / eta domega,
    which equals the single enclosed residue (1/2) e^{i sigma |x|}/|x|.  The
    second root of eta lies outside the unit contour only on the z > 0 branch.
    """
    x = np.asarray(x, dtype=float)
    if x[2] <= 0:
        raise BranchViolation("point-source reduction requires z > 0")
    c = c or ContourSpec()
    zeta_bar = x[0] - 1j * x[1]
    R = float(np.linalg.norm(x))
    if abs(zeta_bar) > 1e-14:
        poles = [(x[2] - R) / zeta_bar, (x[2] + R) / zeta_bar]
    else:
        poles = [0.0]
    for p in poles:
        if abs(abs(complex(p) - c.center) - c.radius) < min_pole_distance:
            raise PoleOnContour(f"eta root {p} within {min_pole_distance} of the contour")

    def g(w):
        return (_phase_values("F1", sigma, x, w) / incidence_eta(x, w))

    val = contour_integrate_adaptive(g, c)
    return complex(val / (2j * np.pi))


def ck_from_debye(phi, w_mode: str, sigma: float, x, h: float = 1e-2) -> np.ndarray:
    """Curl eigenfield from a Helmholtz potential phi and an axis choice:

    F = -[ sigma curl(phi w) + curl curl(phi w) ],  w = z-hat or the position
    vector; nested Richardson finite-difference curls.
    """
    if w_mode not in ("fixed_z", "radial"):
        raise ValueError("w_mode must be 'fixed_z' or 'radial'")
    x = np.asarray(x, dtype=float)

    def vec_potential(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        ph = np.asarray(phi(pts), dtype=complex).reshape(len(pts))
        if w_mode == "fixed_z":
            w = np.broadcast_to(np.array([0.0, 0.0, 1.0]), pts.shape)
        else:
            w = pts
        return ph[:, None] * w

    from .fields import curl_fd

    def curl_A(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        return np.stack([curl_fd(vec_potential, p, h) for p in pts])

    first = curl_fd(vec_potential, x, h)
    second = curl_fd(curl_A, x, h)
    return -(sigma * first + second)


def spheromak_debye_integral(F0: complex, k: float, R: float, theta: float,
                             n_quad: int = 96) -> complex:
    """Polar-angle quadrature of the spheromak potential representation:

    -(i/2)(F0/k) Int_0^pi e^{-i k R cos(t) cos(a)} J0(k R sin(t) sin(a))
                          cos(a) sin(a) da,
    equal to -(F0/k) j1(kR) cos(t).
    """
    if n_quad < 64:
        raise ValueError("need at least 64 nodes")
    a, w = gauss_legendre(n_quad, 0.0, np.pi)
    integrand = (np.exp(-1j * k * R * np.cos(theta) * np.cos(a)) *
                 j0(k * R * np.sin(theta) * np.sin(a)) * np.cos(a) * np.sin(a))
    return complex(-0.5j * (F0 / k) * (w @ integrand))


def spheromak_debye_closed(F0: complex, k: float, R: float, theta: float) -> complex:
    """-(F0/k) j1(kR) cos(theta), the closed form of the integral above."""
    if R == 0:
        return 0.0
    return complex(-(F0 / k) * spherical_jn(1, k * R) * np.cos(theta))
