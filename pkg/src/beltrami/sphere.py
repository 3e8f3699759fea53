"""Great-circle and singular-kernel transforms on the sphere.

Implements the even/odd pair of integral operators

    U0[f](theta) = (1/(2 sqrt(pi)))  Int_{k.theta=0} f(k) dk        (great circle)
    V0[f](theta) = (1/(2 pi^{3/2})) PV Int_{S^2} f(k)/(k.theta) dOmega

their combination A0 = U0 + i V0, the spectral inverse of the great-circle
transform on even band-limited data, Hadamard finite-part moments, and the
analytic Hilbert-transform identities for the two-frequency plane transform of
a Trkalian field.

The classical great-circle (Minkowski) transform is M = 2 sqrt(pi) U0; its
per-degree multipliers are 2 pi P_l(0).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import frame_for, gauss_legendre, great_circle_nodes
from .harmonics import SphericalFunction, degree_of_index, legendre_p_zero
from .fields import radon_moses_parts, radon_moses_parts_many


class OddInput(ValueError):
    """Raised when the spectral great-circle inverse receives odd-degree data."""


def canonical_axis(theta) -> tuple[np.ndarray, float]:
    """Deterministic representative of the unoriented axis {theta, -theta}.

    Returns (axis, sign) with axis = sign * theta.  Quadrature rules built on
    the axis are then shared between theta and -theta, so odd-kernel
    contributions cancel node-wise in identities that pair both orientations.
    """
    theta = np.asarray(theta, dtype=float)
    for c in (theta[2], theta[1], theta[0]):
        if abs(c) > 1e-12:
            sign = 1.0 if c > 0 else -1.0
            return sign * theta, sign
    raise ValueError("zero direction")


def canonical_axes_many(thetas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized canonical_axis for directions (..., 3)."""
    thetas = np.asarray(thetas, dtype=float)
    tol = 1e-12
    sz, sy, sx = (np.sign(thetas[..., i]) for i in (2, 1, 0))
    sign = np.where(np.abs(thetas[..., 2]) > tol, sz,
                    np.where(np.abs(thetas[..., 1]) > tol, sy, sx))
    return sign[..., None] * thetas, sign


def funk_transform(f, theta, circle_n: int = 64):
    """Great-circle transform U0[f](theta) by the uniform trapezoid rule.

    f is a SphericalFunction or any callable mapping unit vectors (N, 3) to
    values (N,) or (N, c).  Annihilates odd functions.
    """
    nodes = great_circle_nodes(theta, circle_n)
    vals = np.asarray(f(nodes))
    return (2.0 * np.pi / circle_n) / (2.0 * np.sqrt(np.pi)) * vals.sum(axis=0)


def funk_minkowski(f, theta, circle_n: int = 64):
    """Classical great-circle transform M[f] = 2 sqrt(pi) U0[f]."""
    return 2.0 * np.sqrt(np.pi) * funk_transform(f, theta, circle_n)


@dataclass(frozen=True)
class FunkSpectrum:
    """Per-degree multipliers of the great-circle transform (M convention)."""

    multipliers: np.ndarray

    def __post_init__(self):
        mu = np.asarray(self.multipliers, dtype=float)
        if any(abs(mu[l]) > 1e-15 for l in range(1, len(mu), 2)):
            raise ValueError("great-circle multipliers must vanish on odd degrees")
        object.__setattr__(self, "multipliers", mu)


def funk_multipliers(lmax: int) -> FunkSpectrum:
    """mu_l = 2 pi P_l(0); zero for odd l."""
    return FunkSpectrum(np.array([2.0 * np.pi * legendre_p_zero(l) for l in range(lmax + 1)]))


def funk_apply_spectral(f: SphericalFunction) -> SphericalFunction:
    """M[f] computed degree-wise (exact on band-limited data)."""
    return f.scale_degrees(funk_multipliers(f.lmax).multipliers)


def semyanistyi_inverse(g: SphericalFunction, odd_tol: float = 1e-10) -> SphericalFunction:
    """Inverse of the great-circle transform on even band-limited data.

    Spectral route: divide each even-degree coefficient by 2 pi P_l(0), the
    regularized/analytically-continued inverse.  Rejects input carrying
    odd-degree energy above odd_tol.
    """
    degs = degree_of_index(g.lmax)
    odd = degs % 2 == 1
    if np.any(np.abs(g.coeffs[:, odd]) > odd_tol):
        raise OddInput("input has odd-degree coefficients; not in the transform range")
    mu = funk_multipliers(g.lmax).multipliers
    inv = np.zeros_like(mu)
    inv[::2] = 1.0 / mu[::2]
    coeffs = g.coeffs * inv[degs]
    coeffs[:, odd] = 0.0
    return SphericalFunction(g.lmax, coeffs)


@dataclass(frozen=True)
class PVRule:
    """Symmetric-pair principal-value rule in u = k.theta with azimuth trapezoid.

    Gauss-Legendre nodes on (0, 1] are paired with their mirror images so the
    1/u singularity cancels analytically:  PV int g/u du = int_0^1 [g(u) -
    g(-u)]/u du.
    """

    n_u: int = 48
    n_psi: int = 96

    def pv_sphere(self, f, theta) -> np.ndarray:
        """PV Int_{S^2} f(k)/(k.theta) dOmega."""
        axis, sign = canonical_axis(theta)
        fr = frame_for(axis)
        u, wu = gauss_legendre(self.n_u, 0.0, 1.0)
        psi = 2.0 * np.pi * np.arange(self.n_psi) / self.n_psi
        er = np.outer(np.cos(psi), fr.e1) + np.outer(np.sin(psi), fr.e2)  # (n_psi, 3)
        rho = np.sqrt(1.0 - u**2)
        k_plus = u[:, None, None] * axis + rho[:, None, None] * er[None, :, :]
        k_minus = -u[:, None, None] * axis + rho[:, None, None] * er[None, :, :]
        vp = np.asarray(f(k_plus.reshape(-1, 3)), dtype=complex)
        vm = np.asarray(f(k_minus.reshape(-1, 3)), dtype=complex)
        tail = vp.shape[1:]
        vp = vp.reshape((self.n_u, self.n_psi) + tail)
        vm = vm.reshape((self.n_u, self.n_psi) + tail)
        pairs = (vp - vm) / u.reshape((self.n_u,) + (1,) * (vp.ndim - 1))
        integ = np.tensordot(wu, pairs.sum(axis=1), axes=(0, 0)) * (2.0 * np.pi / self.n_psi)
        return sign * integ

    def pv_sphere_batch(self, f, thetas: np.ndarray, chunk: int = 96) -> np.ndarray:
        """pv_sphere for a batch of directions (N, 3) in memory-bounded chunks."""
        from .geometry import frames_for_many

        thetas = np.asarray(thetas, dtype=float)
        axes, signs = canonical_axes_many(thetas)
        u, wu = gauss_legendre(self.n_u, 0.0, 1.0)
        psi = 2.0 * np.pi * np.arange(self.n_psi) / self.n_psi
        cs = np.stack([np.cos(psi), np.sin(psi)], axis=-1)  # (n_psi, 2)
        rho = np.sqrt(1.0 - u**2)
        out = None
        for lo in range(0, thetas.shape[0], chunk):
            hi = min(lo + chunk, thetas.shape[0])
            e1, e2 = frames_for_many(axes[lo:hi])
            er = (cs[None, :, 0, None] * e1[:, None, :] +
                  cs[None, :, 1, None] * e2[:, None, :])  # (B, n_psi, 3)
            base = rho[None, :, None, None] * er[:, None, :, :]  # (B, n_u, n_psi, 3)
            off = u[None, :, None, None] * axes[lo:hi, None, None, :]
            vp = np.asarray(f((base + off).reshape(-1, 3)), dtype=complex)
            vm = np.asarray(f((base - off).reshape(-1, 3)), dtype=complex)
            tail = vp.shape[1:]
            shape = (hi - lo, self.n_u, self.n_psi) + tail
            pairs = (vp.reshape(shape) - vm.reshape(shape))
            pairs /= u.reshape((1, self.n_u) + (1,) * (pairs.ndim - 2))
            integ = np.tensordot(pairs.sum(axis=2), wu, axes=(1, 0)) * (2.0 * np.pi / self.n_psi)
            if out is None:
                out = np.empty((thetas.shape[0],) + tail, dtype=complex)
            out[lo:hi] = integ
        return signs.reshape(signs.shape + (1,) * (out.ndim - 1)) * out

    def fp_sphere(self, f, b) -> np.ndarray:
        """Finite part of Int_{S^2} f(k)/(k.b)^2 dOmega.

        Per azimuth: FP int_{-1}^{1} g(u)/u^2 du
                   = int_0^1 [g(u) + g(-u) - 2 g(0)]/u^2 du - 2 g(0).
        """
        axis, _ = canonical_axis(b)
        fr = frame_for(axis)
        u, wu = gauss_legendre(self.n_u, 0.0, 1.0)
        psi = 2.0 * np.pi * np.arange(self.n_psi) / self.n_psi
        er = np.outer(np.cos(psi), fr.e1) + np.outer(np.sin(psi), fr.e2)
        rho = np.sqrt(1.0 - u**2)
        k_plus = u[:, None, None] * axis + rho[:, None, None] * er[None, :, :]
        k_minus = -u[:, None, None] * axis + rho[:, None, None] * er[None, :, :]
        vp = np.asarray(f(k_plus.reshape(-1, 3)), dtype=complex)
        vm = np.asarray(f(k_minus.reshape(-1, 3)), dtype=complex)
        v0 = np.asarray(f(er), dtype=complex)
        tail = vp.shape[1:]
        vp = vp.reshape((self.n_u, self.n_psi) + tail)
        vm = vm.reshape((self.n_u, self.n_psi) + tail)
        shape_u = (self.n_u,) + (1,) * (vp.ndim - 1)
        pairs = (vp + vm - 2.0 * v0[None]) / (u.reshape(shape_u) ** 2)
        smooth = np.tensordot(wu, pairs.sum(axis=1), axes=(0, 0))
        endpoint = -2.0 * v0.sum(axis=0)
        return (smooth + endpoint) * (2.0 * np.pi / self.n_psi)


def v0_transform(f, theta, rule: PVRule | None = None):
    """V0[f](theta) = (1/(2 pi^{3/2})) PV Int f(k)/(k.theta) dOmega."""
    rule = rule or PVRule()
    return rule.pv_sphere(f, theta) / (2.0 * np.pi ** 1.5)


def a0_transform(f, theta, circle_n: int = 64, rule: PVRule | None = None):
    """A0 = U0 + i V0 applied to sphere data."""
    return funk_transform(f, theta, circle_n) + 1j * v0_transform(f, theta, rule)


def finite_part_moment(g, n: int = 64) -> complex:
    """Hadamard finite part of Int_{-1}^{1} g(u)/u^2 du for smooth g.

    Subtraction form: the odd linear term integrates to zero by symmetric
    pairing, the constant term contributes the exact moment f.p. of u^{-2},
    which is -2, and the remainder is a regular integral.
    """
    u, w = gauss_legendre(n, 0.0, 1.0)
    g0 = g(0.0)
    vals = (np.asarray([g(ui) for ui in u]) + np.asarray([g(-ui) for ui in u])
            - 2.0 * g0) / u**2
    return complex(w @ vals - 2.0 * g0)


def pv_moment(g, n: int = 64) -> complex:
    """Cauchy principal value of Int_{-1}^{1} g(u)/u du for smooth g."""
    u, w = gauss_legendre(n, 0.0, 1.0)
    vals = (np.asarray([g(ui) for ui in u]) - np.asarray([g(-ui) for ui in u])) / u
    return complex(w @ vals)


# --------------------------------------------------------------------------
# Analytic Hilbert transform on two-frequency plane data
# --------------------------------------------------------------------------

def hilbert_exponential(omega: float, p0: float) -> complex:
    """H[e^{i omega p}](p0) = -i sign(omega) e^{i omega p0}."""
    return -1j * np.sign(omega) * np.exp(1j * omega * p0)


def radon_hilbert(nu: float, lam: int, s: SphericalFunction, kappa, p0: float) -> np.ndarray:
    """[H F_R(., kappa)](p0) for the two-frequency Moses plane transform."""
    plus, minus = radon_moses_parts(nu, lam, s, kappa)
    pref = np.sqrt(2.0 * np.pi) / nu**2
    return pref * (hilbert_exponential(nu, p0) * plus + hilbert_exponential(-nu, p0) * minus)


def hilbert_radon_moses(nu: float, lam: int, s: SphericalFunction, kappa, p0: float) -> np.ndarray:
    """[H d/dp F_R(., kappa)](p0), computed frequency by frequency.

    Equals nu * F_R(p0, kappa): the intricate quantity collapses to the plane
    transform itself on helical data.
    """
    plus, minus = radon_moses_parts(nu, lam, s, kappa)
    pref = np.sqrt(2.0 * np.pi) / nu**2
    return pref * 1j * nu * (hilbert_exponential(nu, p0) * plus -
                             hilbert_exponential(-nu, p0) * minus)


def tuy_bracket(nu: float, lam: int, s: SphericalFunction, kappa, p0: float) -> np.ndarray:
    """[(H - i) d/dp F_R(., kappa)](p0) assembled from the analytic pieces."""
    plus, minus = radon_moses_parts(nu, lam, s, kappa)
    pref = np.sqrt(2.0 * np.pi) / nu**2
    dp_plus = 1j * nu * np.exp(1j * nu * p0) * plus
    dp_minus = -1j * nu * np.exp(-1j * nu * p0) * minus
    hil = pref * 1j * nu * (hilbert_exponential(nu, p0) * plus -
                            hilbert_exponential(-nu, p0) * minus)
    return hil - 1j * pref * (dp_plus + dp_minus)


def hilbert_radon_moses_many(nu: float, lam: int, s: SphericalFunction,
                             kappas: np.ndarray, x) -> np.ndarray:
    """[H d/dp F_R](kappa.x, kappa) for a batch of normals (..., 3)."""
    kappas = np.asarray(kappas, dtype=float)
    x = np.asarray(x, dtype=float)
    p0 = kappas @ x
    plus, minus = radon_moses_parts_many(nu, lam, s, kappas)
    pref = np.sqrt(2.0 * np.pi) / nu**2
    hp = -1j * np.exp(1j * nu * p0)
    hm = 1j * np.exp(-1j * nu * p0)
    return pref * 1j * nu * (hp[..., None] * plus - hm[..., None] * minus)


def tuy_bracket_many(nu: float, lam: int, s: SphericalFunction,
                     kappas: np.ndarray, x) -> np.ndarray:
    """tuy_bracket for a batch of normals (..., 3) at planes p = kappa.x."""
    kappas = np.asarray(kappas, dtype=float)
    x = np.asarray(x, dtype=float)
    p0 = kappas @ x
    plus, minus = radon_moses_parts_many(nu, lam, s, kappas)
    pref = np.sqrt(2.0 * np.pi) / nu**2
    hil = pref * 1j * nu * ((-1j * np.exp(1j * nu * p0))[..., None] * plus -
                            (1j * np.exp(-1j * nu * p0))[..., None] * minus)
    dp = pref * 1j * nu * (np.exp(1j * nu * p0)[..., None] * plus -
                           np.exp(-1j * nu * p0)[..., None] * minus)
    return hil - 1j * dp
