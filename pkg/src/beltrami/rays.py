"""Line transforms: whole-line (X), half-line (D), and signed (Y) integrals.

Three evaluation routes are provided:

* regularized numerics: Gaussian damping exp(-eps s^2) on a ladder of widths
  with polynomial extrapolation eps -> 0 (the fields here oscillate without
  decay, so plain quadrature diverges conditionally);
* closed forms for the Lundquist field and the plane-wave Y transform;
* great-circle / singular-kernel representations driven by band-limited
  spherical data (the transform-space route).

Half-line and signed transforms depend on the source point itself, so the
internal evaluators accept an arbitrary source x; the public ray-coordinate
API uses the foot point as the source.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import jv

from .geometry import Ray, frames_for_many, gauss_legendre
from .harmonics import SphericalFunction
from .fields import moses_q, moses_q_many
from .sphere import PVRule


class NonConvergence(RuntimeError):
    """Damping-ladder differences failed to decrease."""


class DegenerateRay(ValueError):
    """Closed form undefined: the ray runs along the field's symmetry axis."""


class SingularDirection(ValueError):
    """Closed form evaluated on (or too close to) its singular direction set."""


@dataclass(frozen=True)
class LineValue:
    """A line-integral value with an accuracy estimate."""

    value: np.ndarray
    error: float


@dataclass(frozen=True)
class OscillatoryLineQuadrature:
    """Plan for damped line integrals of non-decaying oscillatory fields.

    nu_scale sets the oscillation wavenumber; panels of width
    (2 pi / nu_scale)/panels_per_period carry a fixed-order Gauss rule; the
    epsilon ladder (units nu_scale^2) is extrapolated to zero.
    """

    nu_scale: float
    panels_per_period: int = 8
    epsilon_ladder: tuple[float, ...] = (0.032, 0.016, 0.008, 0.004)
    extrapolation_order: int = 4
    gauss_order: int = 6
    tail: float = 1e-16

    def __post_init__(self):
        if self.nu_scale <= 0:
            raise ValueError("nu_scale must be positive")
        if self.panels_per_period < 8:
            raise ValueError("panels_per_period must be at least 8")
        lad = tuple(float(e) for e in self.epsilon_ladder)
        if len(lad) < 2 or any(e <= 0 for e in lad):
            raise ValueError("epsilon ladder needs at least two positive entries")
        if any(b >= a for a, b in zip(lad, lad[1:])):
            raise ValueError("epsilon ladder must be strictly decreasing")
        if self.extrapolation_order < 2:
            raise ValueError("extrapolation order must be at least 2")

    @property
    def epsilons(self) -> np.ndarray:
        return np.asarray(self.epsilon_ladder) * self.nu_scale**2

    def s_max(self) -> float:
        return float(np.sqrt(np.log(1.0 / self.tail) / self.epsilons.min()))

    def panel_nodes(self, s_lo: float, s_hi: float) -> tuple[np.ndarray, np.ndarray]:
        """All Gauss nodes and weights covering [s_lo, s_hi]."""
        width = (2.0 * np.pi / self.nu_scale) / self.panels_per_period
        n_panels = max(1, int(np.ceil((s_hi - s_lo) / width)))
        edges = np.linspace(s_lo, s_hi, n_panels + 1)
        x, w = gauss_legendre(self.gauss_order, 0.0, 1.0)
        widths = np.diff(edges)
        nodes = edges[:-1, None] + widths[:, None] * x[None, :]
        weights = widths[:, None] * w[None, :]
        return nodes.ravel(), weights.ravel()


def _neville_to_zero(eps: np.ndarray, vals: np.ndarray, order: int) -> tuple[np.ndarray, float]:
    """Polynomial extrapolation of vals(eps) to eps = 0 (Neville tableau)."""
    k = min(len(eps), order + 1)
    eps = np.asarray(eps[-k:], dtype=float)
    table = [np.asarray(v, dtype=complex) for v in vals[-k:]]
    prev_best = table[-1]
    for level in range(1, k):
        new = []
        for i in range(k - level):
            e_hi, e_lo = eps[i], eps[i + level]
            new.append((e_hi * table[i + 1] - e_lo * table[i]) / (e_hi - e_lo))
        prev_best = table[-1]
        table = new
    best = table[0]
    err = float(np.max(np.abs(best - prev_best)))
    return best, err


def _damped_line_integral(field, ray: Ray, cfg: OscillatoryLineQuadrature,
                          mode: str, source: np.ndarray | None = None) -> LineValue:
    """Shared engine for X (whole line), D (half line), Y (signed)."""
    x0 = ray.foot if source is None else np.asarray(source, dtype=float)
    smax = cfg.s_max()
    if mode == "D":
        s, w = cfg.panel_nodes(0.0, smax)
        sign = np.ones_like(s)
    else:
        s, w = cfg.panel_nodes(-smax, smax)
        sign = np.sign(s) if mode == "Y" else np.ones_like(s)
    pts = x0[None, :] + s[:, None] * ray.theta[None, :]
    vals = np.asarray(field(pts), dtype=complex)  # (N, 3)
    ladder = []
    for eps in cfg.epsilons:
        damp = w * sign * np.exp(-eps * s**2)
        ladder.append(np.tensordot(damp, vals, axes=(0, 0)))
    ladder = np.asarray(ladder)
    diffs = np.linalg.norm(np.diff(ladder, axis=0), axis=1)
    if len(diffs) >= 2 and np.all(np.diff(diffs) > 0) and diffs[-1] > 1e-14:
        raise NonConvergence("damping-ladder differences increase monotonically")
    value, err = _neville_to_zero(cfg.epsilons, ladder, cfg.extrapolation_order)
    return LineValue(value=value, error=err)


def xray_numeric(field, ray: Ray, cfg: OscillatoryLineQuadrature) -> LineValue:
    """Whole-line integral of the field along the ray, damped + extrapolated."""
    return _damped_line_integral(field, ray, cfg, "X")


def dbeam_numeric(field, ray: Ray, cfg: OscillatoryLineQuadrature,
                  source: np.ndarray | None = None) -> LineValue:
    """Half-line integral from the source point (the foot by default)."""
    return _damped_line_integral(field, ray, cfg, "D", source)


def ytransform_numeric(field, ray: Ray, cfg: OscillatoryLineQuadrature,
                       source: np.ndarray | None = None) -> LineValue:
    """Signed line integral: difference of the two opposite half-line beams."""
    return _damped_line_integral(field, ray, cfg, "Y", source)


# --------------------------------------------------------------------------
# Lundquist closed forms
# --------------------------------------------------------------------------

def _cyl_angles(thetas: np.ndarray):
    v_r = np.hypot(thetas[..., 0], thetas[..., 1])
    th_az = np.arctan2(thetas[..., 1], thetas[..., 0])
    return v_r, th_az


def _check_vr(v_r, tol: float = 1e-10):
    if np.any(np.asarray(v_r) <= tol):
        raise DegenerateRay("ray direction parallel to the cylinder axis")


def xray_lundquist_batch(thetas: np.ndarray, x, F0: complex, nu: float,
                         lam: int = 1, reduced: bool = False) -> np.ndarray:
    """Whole-line transform of the Lundquist field for directions (..., 3).

    value = (2 F0/(nu v_r)) [lam sin(nu u) e_r(az) + cos(nu u) e_z],
    u = r sin(az - phi) in cylindrical coordinates of x.  With reduced=True the
    1/v_r factor is dropped (the polar Jacobian cancellation, done in closed
    form).
    """
    thetas = np.asarray(thetas, dtype=float)
    x = np.asarray(x, dtype=float)
    v_r, th_az = _cyl_angles(thetas)
    if not reduced:
        _check_vr(v_r)
    r = float(np.hypot(x[0], x[1]))
    phi = float(np.arctan2(x[1], x[0]))
    u = r * np.sin(th_az - phi)
    e_r = np.stack([np.cos(th_az), np.sin(th_az), np.zeros_like(th_az)], axis=-1)
    e_z = np.array([0.0, 0.0, 1.0])
    coef = 2.0 * F0 / nu if reduced else 2.0 * F0 / (nu * v_r)
    coef = np.asarray(coef)[..., None]
    return coef * (lam * np.sin(nu * u)[..., None] * e_r +
                   np.cos(nu * u)[..., None] * e_z)


def xray_lundquist_closed(ray: Ray, F0: complex, nu: float, lam: int = 1) -> np.ndarray:
    """Closed-form whole-line transform of the Lundquist field."""
    return xray_lundquist_batch(ray.theta[None, :], ray.foot, F0, nu, lam)[0]


@dataclass(frozen=True)
class LundquistSeriesCfg:
    """Truncation plan for the Lundquist half-line/signed Bessel series."""

    nmax: int | None = None
    tol: float = 1e-16

    def order(self, arg: float) -> int:
        if self.nmax is not None:
            if self.nmax < 1:
                raise ValueError("nmax must be at least 1")
            return self.nmax
        n = int(np.ceil(abs(arg))) + 12
        while abs(jv(n, arg)) >= self.tol and n < 400:
            n += 4
        return n

    def bound(self, arg: float, n: int) -> float:
        return 2.0 * abs(jv(n + 1, arg))

    def truncation_bound(self, arg: float) -> float:
        """Tail bound 2 |J_{n+1}(arg)| at the order this plan selects."""
        return self.bound(arg, self.order(arg))


def _lundquist_series_sums(nu_r: float, psi: np.ndarray, cfg: LundquistSeriesCfg):
    """S = sum (-1)^n sin(n psi) J_n, C = J0 + 2 sum (-1)^n cos(n psi) J_n."""
    nmax = cfg.order(nu_r)
    n = np.arange(1, nmax + 1)
    jn = jv(n, nu_r) * (-1.0) ** n  # (nmax,)
    ang = np.multiply.outer(psi, n)  # (..., nmax)
    S = np.sin(ang) @ jn
    C = jv(0, nu_r) + 2.0 * (np.cos(ang) @ jn)
    return S, C, cfg.bound(nu_r, nmax)


def dbeam_lundquist_batch(thetas: np.ndarray, x, F0: complex, nu: float,
                          cfg: LundquistSeriesCfg | None = None,
                          reduced: bool = False) -> np.ndarray:
    """Half-line transform of the Lundquist field (helicity +1) from source x.

    (F0/(nu v_r)) { -2 S e_r(az) + J0 e_az + C e_z } with the alternating
    Bessel sums S, C of argument nu r at angle az - phi.
    """
    thetas = np.asarray(thetas, dtype=float)
    x = np.asarray(x, dtype=float)
    cfg = cfg or LundquistSeriesCfg()
    v_r, th_az = _cyl_angles(thetas)
    if not reduced:
        _check_vr(v_r)
    r = float(np.hypot(x[0], x[1]))
    phi = float(np.arctan2(x[1], x[0]))
    S, C, _ = _lundquist_series_sums(nu * r, th_az - phi, cfg)
    e_r = np.stack([np.cos(th_az), np.sin(th_az), np.zeros_like(th_az)], axis=-1)
    e_az = np.stack([-np.sin(th_az), np.cos(th_az), np.zeros_like(th_az)], axis=-1)
    e_z = np.array([0.0, 0.0, 1.0])
    coef = F0 / nu if reduced else F0 / (nu * v_r)
    coef = np.asarray(coef)[..., None]
    return coef * (-2.0 * S[..., None] * e_r + jv(0, nu * r) * e_az +
                   C[..., None] * e_z)


def dbeam_lundquist_closed(ray: Ray, F0: complex, nu: float,
                           cfg: LundquistSeriesCfg | None = None) -> np.ndarray:
    """Half-line transform of the Lundquist field from the foot point."""
    return dbeam_lundquist_batch(ray.theta[None, :], ray.foot, F0, nu, cfg)[0]


def ytransform_lundquist_batch(thetas: np.ndarray, x, F0: complex, nu: float,
                               cfg: LundquistSeriesCfg | None = None,
                               reduced: bool = False) -> np.ndarray:
    """Signed transform of the Lundquist field (helicity +1) from source x.

    -(2 F0/(nu v_r)) { 2 sum sin(2k psi) J_2k e_r(az) - J0 e_az
                       + 2 sum cos((2k+1) psi) J_{2k+1} e_z },  psi = az - phi.
    """
    thetas = np.asarray(thetas, dtype=float)
    x = np.asarray(x, dtype=float)
    cfg = cfg or LundquistSeriesCfg()
    v_r, th_az = _cyl_angles(thetas)
    if not reduced:
        _check_vr(v_r)
    r = float(np.hypot(x[0], x[1]))
    phi = float(np.arctan2(x[1], x[0]))
    nu_r = nu * r
    nmax = cfg.order(nu_r)
    psi = th_az - phi
    k_even = np.arange(2, nmax + 1, 2)
    k_odd = np.arange(1, nmax + 1, 2)
    S_even = np.sin(np.multiply.outer(psi, k_even)) @ jv(k_even, nu_r) if len(k_even) else 0.0 * psi
    C_odd = np.cos(np.multiply.outer(psi, k_odd)) @ jv(k_odd, nu_r) if len(k_odd) else 0.0 * psi
    e_r = np.stack([np.cos(th_az), np.sin(th_az), np.zeros_like(th_az)], axis=-1)
    e_az = np.stack([-np.sin(th_az), np.cos(th_az), np.zeros_like(th_az)], axis=-1)
    e_z = np.array([0.0, 0.0, 1.0])
    coef = -2.0 * F0 / nu if reduced else -2.0 * F0 / (nu * v_r)
    coef = np.asarray(coef)[..., None]
    return coef * (2.0 * S_even[..., None] * e_r - jv(0, nu_r) * e_az +
                   2.0 * C_odd[..., None] * e_z)


def ytransform_lundquist_closed(ray: Ray, F0: complex, nu: float,
                                cfg: LundquistSeriesCfg | None = None) -> np.ndarray:
    """Signed transform of the Lundquist field from the foot point."""
    return ytransform_lundquist_batch(ray.theta[None, :], ray.foot, F0, nu, cfg)[0]


def ytransform_planewave_closed(ray: Ray, k0: float, kappa0, lam: int = 1,
                                source: np.ndarray | None = None) -> np.ndarray:
    """Signed transform of the helical plane wave:

    2 i (1/k0) e^{i k0 kappa0.x} (1/(kappa0.theta)) Q_lam(kappa0).
    """
    kappa0 = np.asarray(kappa0, dtype=float)
    x = ray.foot if source is None else np.asarray(source, dtype=float)
    dot = float(kappa0 @ ray.theta)
    if abs(dot) <= 1e-8:
        raise SingularDirection("ray direction nearly orthogonal to the wave vector")
    return (2j / k0) * np.exp(1j * k0 * (kappa0 @ x)) / dot * moses_q(kappa0, lam)


# --------------------------------------------------------------------------
# Transform-space (great circle) representations for band-limited data
# --------------------------------------------------------------------------

def moses_sphere_data(nu: float, lam: int, s: SphericalFunction, x):
    """The helical sphere integrand G(k) = e^{i nu k.x} Q_lam(k) s(k).

    Returns a vectorized callable over unit vectors (..., 3).
    """
    x = np.asarray(x, dtype=float)

    def G(kappas: np.ndarray) -> np.ndarray:
        kappas = np.asarray(kappas, dtype=float)
        phase = np.exp(1j * nu * (kappas @ x))
        return phase[..., None] * moses_q_many(kappas, lam) * s(kappas)[..., None]

    return G


def xray_via_funk_batch(nu: float, lam: int, s: SphericalFunction,
                        thetas: np.ndarray, x, circle_n: int = 256) -> np.ndarray:
    """Great-circle route for the whole-line transform, batched over directions.

    X F(theta, x) = (2 pi)^{-1/2} (1/nu) Int_C G(k) dphi over the great circle
    C in the plane normal to theta.
    """
    thetas = np.asarray(thetas, dtype=float)
    single = thetas.ndim == 1
    thetas = np.atleast_2d(thetas)
    G = moses_sphere_data(nu, lam, s, x)
    e1, e2 = frames_for_many(thetas)
    phis = 2.0 * np.pi * np.arange(circle_n) / circle_n
    out = np.empty((thetas.shape[0], 3), dtype=complex)
    chunk = max(1, int(2e6 // circle_n))
    for lo in range(0, thetas.shape[0], chunk):
        hi = min(lo + chunk, thetas.shape[0])
        nodes = (np.cos(phis)[None, :, None] * e1[lo:hi, None, :] +
                 np.sin(phis)[None, :, None] * e2[lo:hi, None, :])
        vals = G(nodes.reshape(-1, 3)).reshape(hi - lo, circle_n, 3)
        out[lo:hi] = vals.sum(axis=1) * (2.0 * np.pi / circle_n)
    return ((2.0 * np.pi) ** (-0.5) / nu) * (out[0] if single else out)


def xray_via_funk(nu: float, lam: int, s: SphericalFunction, ray: Ray,
                  circle_n: int = 256) -> np.ndarray:
    """Whole-line transform of the band-limited field through its sphere data."""
    return xray_via_funk_batch(nu, lam, s, ray.theta, ray.foot, circle_n)


def dbeam_via_extfunk(nu: float, lam: int, s: SphericalFunction, ray_or_theta,
                      x=None, circle_n: int = 256,
                      pv: PVRule | None = None) -> np.ndarray:
    """Half-line transform through sphere data: half the great-circle part plus
    the principal-value part of the half-line kernel,

    D = 1/2 X + (2 pi)^{-1/2} (1/nu) (i/(2 pi)) PV Int G(k)/(k.theta) dOmega.
    """
    if isinstance(ray_or_theta, Ray):
        theta, x = ray_or_theta.theta, ray_or_theta.foot
    else:
        theta = np.asarray(ray_or_theta, dtype=float)
        x = np.asarray(x, dtype=float)
    pv = pv or PVRule()
    G = moses_sphere_data(nu, lam, s, x)
    xpart = 0.5 * xray_via_funk_batch(nu, lam, s, theta, x, circle_n)
    pvpart = ((2.0 * np.pi) ** (-0.5) / nu) * (1j / (2.0 * np.pi)) * pv.pv_sphere(G, theta)
    return xpart + pvpart


def dbeam_via_extfunk_batch(nu: float, lam: int, s: SphericalFunction,
                            thetas: np.ndarray, x, circle_n: int = 256,
                            pv: PVRule | None = None) -> np.ndarray:
    """dbeam_via_extfunk over a batch of directions (N, 3) at one source."""
    thetas = np.atleast_2d(np.asarray(thetas, dtype=float))
    pv = pv or PVRule()
    G = moses_sphere_data(nu, lam, s, x)
    xpart = 0.5 * xray_via_funk_batch(nu, lam, s, thetas, x, circle_n)
    pvpart = ((2.0 * np.pi) ** (-0.5) / nu) * (1j / (2.0 * np.pi)) * pv.pv_sphere_batch(G, thetas)
    return xpart + pvpart


def ytransform_via_extfunk(nu: float, lam: int, s: SphericalFunction, theta, x,
                           pv: PVRule | None = None) -> np.ndarray:
    """Signed transform through sphere data: twice the PV part of the half-line."""
    pv = pv or PVRule()
    G = moses_sphere_data(nu, lam, s, x)
    return ((2.0 * np.pi) ** (-0.5) / nu) * (1j / np.pi) * pv.pv_sphere(G, theta)


# --------------------------------------------------------------------------
# Homogeneous extension and line-transform PDE residuals
# --------------------------------------------------------------------------

def xray_extension(xray_fn, alpha, x) -> np.ndarray:
    """Degree minus-one homogeneous extension g(alpha, x) = X F(alpha/|alpha|, x)/|alpha|.

    xray_fn(theta, x) must accept an arbitrary x (whole-line transforms are
    translation invariant along theta).
    """
    alpha = np.asarray(alpha, dtype=float)
    a = float(np.linalg.norm(alpha))
    return np.asarray(xray_fn(alpha / a, x), dtype=complex) / a


def john_residual(xray_fn, theta, x, h: float = 1e-3) -> float:
    """Symmetry defect of the mixed second derivatives of the extension.

    max_ij |d2 g / dx_i dalpha_j - d2 g / dx_j dalpha_i| over the largest
    mixed-derivative magnitude; zero exactly when the data is a line transform.
    """
    theta = np.asarray(theta, dtype=float)
    x = np.asarray(x, dtype=float)
    eye = np.eye(3)
    mixed = np.empty((3, 3, 3), dtype=complex)
    for i in range(3):
        for j in range(3):
            vpp = xray_extension(xray_fn, theta + h * eye[j], x + h * eye[i])
            vpm = xray_extension(xray_fn, theta - h * eye[j], x + h * eye[i])
            vmp = xray_extension(xray_fn, theta + h * eye[j], x - h * eye[i])
            vmm = xray_extension(xray_fn, theta - h * eye[j], x - h * eye[i])
            mixed[i, j] = (vpp - vpm - vmp + vmm) / (4.0 * h * h)
    asym = np.max(np.abs(mixed - np.swapaxes(mixed, 0, 1)))
    scale = np.max(np.abs(mixed))
    return float(asym / scale)


def _grad_alpha(xray_fn, theta, x, h: float) -> np.ndarray:
    eye = np.eye(3)
    cols = [(xray_extension(xray_fn, theta + h * eye[j], x) -
             xray_extension(xray_fn, theta - h * eye[j], x)) / (2.0 * h)
            for j in range(3)]
    return np.stack(cols, axis=-1)  # (3 comp, 3 alpha)


def _curl_alpha(xray_fn, theta, x, h: float) -> np.ndarray:
    J = _grad_alpha(xray_fn, theta, x, h)
    return np.array([J[2, 1] - J[1, 2], J[0, 2] - J[2, 0], J[1, 0] - J[0, 1]])


def curl_form_residual(xray_fn, nu_signed: float, theta, x, h: float = 1e-3) -> float:
    """Residual of d/dx_m (curl_alpha g) = nu d/dalpha_m g, maximized over m."""
    theta = np.asarray(theta, dtype=float)
    x = np.asarray(x, dtype=float)
    eye = np.eye(3)
    worst, scale = 0.0, 0.0
    for m in range(3):
        lhs = (_curl_alpha(xray_fn, theta, x + h * eye[m], h) -
               _curl_alpha(xray_fn, theta, x - h * eye[m], h)) / (2.0 * h)
        rhs = nu_signed * (xray_extension(xray_fn, theta + h * eye[m], x) -
                           xray_extension(xray_fn, theta - h * eye[m], x)) / (2.0 * h)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        scale = max(scale, float(np.max(np.abs(rhs))))
    return worst / scale


def theta_divergence_residual(xray_fn, theta, x, h: float = 1e-3) -> float:
    """|div_alpha g| relative to |grad_alpha g| for the homogeneous extension."""
    J = _grad_alpha(xray_fn, theta, x, h)
    return float(abs(J[0, 0] + J[1, 1] + J[2, 2]) / np.max(np.abs(J)))
