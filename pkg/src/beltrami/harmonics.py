"""Band-limited functions on the sphere stored as spherical-harmonic coefficients.

Complex orthonormal harmonics Y_lm with the Condon-Shortley phase, flat-indexed
by idx(l, m) = l^2 + l + m.  Evaluation uses the polynomial form

    Y_{l,m} = (-1)^m N_lm (d^m P_l)(z) (x + i y)^m          (m >= 0)
    Y_{l,-m} =        N_lm (d^m P_l)(z) (x - i y)^m

on unit vectors, which vectorizes with no per-(l, m) special-function calls;
synthesis collapses the degree sums into one Legendre series per order m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import legendre as npleg

from .geometry import SphereQuadrature, make_sphere_quadrature


def lm_index(l: int, m: int) -> int:
    return l * l + l + m


def num_coeffs(lmax: int) -> int:
    return (lmax + 1) ** 2


def lm_pairs(lmax: int) -> list[tuple[int, int]]:
    return [(l, m) for l in range(lmax + 1) for m in range(-l, l + 1)]


def _norm_lm(l: int, m: int) -> float:
    return math.sqrt((2 * l + 1) / (4.0 * np.pi) *
                     math.factorial(l - m) / math.factorial(l + m))


def _legendre_derivative_coeffs(l: int, m: int) -> np.ndarray:
    """Legendre-series coefficients of d^m P_l / du^m."""
    e_l = np.zeros(l + 1)
    e_l[l] = 1.0
    return npleg.legder(e_l, m) if m > 0 else e_l


def ylm_matrix(lmax: int, dirs: np.ndarray) -> np.ndarray:
    """Matrix of Y_lm values: shape (num_coeffs, N) for unit vectors (N, 3)."""
    dirs = np.asarray(dirs, dtype=float).reshape(-1, 3)
    z = dirs[:, 2]
    w = dirs[:, 0] + 1j * dirs[:, 1]
    wpow = np.empty((lmax + 1, dirs.shape[0]), dtype=complex)
    wpow[0] = 1.0
    for m in range(1, lmax + 1):
        wpow[m] = wpow[m - 1] * w
    out = np.empty((num_coeffs(lmax), dirs.shape[0]), dtype=complex)
    for l in range(lmax + 1):
        for m in range(l + 1):
            A = npleg.legval(z, _legendre_derivative_coeffs(l, m))
            val = ((-1.0) ** m * _norm_lm(l, m)) * A * wpow[m]
            out[lm_index(l, m)] = val
            if m > 0:
                out[lm_index(l, -m)] = (-1.0) ** m * np.conj(val)
    return out


def parity_flip_signs(lmax: int) -> np.ndarray:
    """Signs (-1)^l per flat coefficient: Y_lm(-k) = (-1)^l Y_lm(k)."""
    signs = np.empty(num_coeffs(lmax))
    for l, m in lm_pairs(lmax):
        signs[lm_index(l, m)] = (-1.0) ** l
    return signs


def degree_of_index(lmax: int) -> np.ndarray:
    """Degree l per flat coefficient index."""
    degs = np.empty(num_coeffs(lmax), dtype=int)
    for l, m in lm_pairs(lmax):
        degs[lm_index(l, m)] = l
    return degs


@dataclass(frozen=True)
class SphericalFunction:
    """Band-limited function on S^2: coefficients c[comp, lm_index].

    Scalar data uses ncomp = 1; vector data uses ncomp = 3.  Immutable after
    construction; evaluation is harmonic synthesis through cached per-order
    Legendre series.
    """

    lmax: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim == 1:
            c = c[None, :]
        if c.shape[-1] != num_coeffs(self.lmax):
            raise ValueError("coefficient count does not match lmax")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "_synth", None)

    @property
    def ncomp(self) -> int:
        return self.coeffs.shape[0]

    def _synthesis_tables(self) -> np.ndarray:
        """Stacked power-basis series: s = sum_m w^m C[:, m] (z) + wbar^m C[:, L+1+m] (z).

        Returns coefficients of shape (lmax+1, 2 lmax+2, ncomp): axis 0 is the
        power of z, columns 0..L serve w^m, columns L+1..2L+1 serve wbar^(m+1).
        """
        if self._synth is not None:
            return self._synth
        L, nc = self.lmax, self.ncomp
        table = np.zeros((L + 1, 2 * L + 2, nc), dtype=complex)
        for l in range(L + 1):
            for m in range(l + 1):
                base = npleg.leg2poly(_legendre_derivative_coeffs(l, m))
                n = _norm_lm(l, m)
                cp = self.coeffs[:, lm_index(l, m)] * ((-1.0) ** m * n)
                table[: base.size, m] += np.multiply.outer(base, cp)
                if m > 0:
                    cm = self.coeffs[:, lm_index(l, -m)] * n
                    table[: base.size, L + m] += np.multiply.outer(base, cm)
        object.__setattr__(self, "_synth", table)
        return table

    def __call__(self, dirs: np.ndarray) -> np.ndarray:
        """Evaluate at unit vectors (..., 3).

        Returns shape (...) for scalar data and (..., 3) for 3-component data.
        """
        dirs = np.asarray(dirs, dtype=float)
        lead = dirs.shape[:-1]
        flat = dirs.reshape(-1, 3)
        z = flat[:, 2]
        w = flat[:, 0] + 1j * flat[:, 1]
        L, nc = self.lmax, self.ncomp
        table = self._synthesis_tables()  # (L+1, 2L+2, nc)
        V = np.broadcast_to(table[-1], (flat.shape[0],) + table.shape[1:]).copy()
        for k in range(L - 1, -1, -1):
            V *= z[:, None, None]
            V += table[k]
        wpow = np.empty((flat.shape[0], L + 1), dtype=complex)
        wpow[:, 0] = 1.0
        for m in range(1, L + 1):
            wpow[:, m] = wpow[:, m - 1] * w
        acc = np.einsum("nm,nmc->nc", wpow, V[:, : L + 1])
        if L >= 1:
            acc += np.einsum("nm,nmc->nc", np.conj(wpow[:, 1:]), V[:, L + 1: 2 * L + 1])
        if nc == 1:
            return acc[:, 0].reshape(lead)
        return acc.reshape(lead + (nc,))

    def antipodal(self) -> "SphericalFunction":
        """Coefficients of k -> f(-k)."""
        return SphericalFunction(self.lmax, self.coeffs * parity_flip_signs(self.lmax))

    def scale_degrees(self, multipliers: np.ndarray) -> "SphericalFunction":
        """Apply per-degree multipliers mu_l coefficient-wise."""
        degs = degree_of_index(self.lmax)
        return SphericalFunction(self.lmax, self.coeffs * np.asarray(multipliers)[degs])

    @staticmethod
    def zero(lmax: int, ncomp: int = 1) -> "SphericalFunction":
        return SphericalFunction(lmax, np.zeros((ncomp, num_coeffs(lmax)), dtype=complex))

    @staticmethod
    def constant(value: complex, lmax: int = 0) -> "SphericalFunction":
        c = np.zeros((1, num_coeffs(lmax)), dtype=complex)
        c[0, 0] = value * np.sqrt(4.0 * np.pi)
        return SphericalFunction(lmax, c)

    @staticmethod
    def single_mode(lmax: int, l: int, m: int, value: complex = 1.0) -> "SphericalFunction":
        c = np.zeros((1, num_coeffs(lmax)), dtype=complex)
        c[0, lm_index(l, m)] = value
        return SphericalFunction(lmax, c)

    @staticmethod
    def random(lmax: int, rng: np.random.Generator, ncomp: int = 1,
               even_only: bool = False, min_abs_m: int = 0) -> "SphericalFunction":
        """Random band-limited data with unit-scale coefficients.

        min_abs_m > 0 restricts to modes vanishing at the coordinate poles
        (|m| >= min_abs_m), which keeps pole-adapted quadratures spectrally
        accurate when the data multiplies the helical basis vectors.
        """
        c = np.zeros((ncomp, num_coeffs(lmax)), dtype=complex)
        for l, m in lm_pairs(lmax):
            if even_only and l % 2 == 1:
                continue
            if abs(m) < min_abs_m:
                continue
            c[:, lm_index(l, m)] = rng.standard_normal(ncomp) + 1j * rng.standard_normal(ncomp)
        return SphericalFunction(lmax, c)


def analyze(fn, lmax: int, quad: SphereQuadrature | None = None) -> SphericalFunction:
    """Project fn onto harmonics of degree <= lmax by sphere quadrature.

    fn maps unit vectors (N, 3) to values (N,) or (N, ncomp).  The quadrature
    must resolve products of fn with degree-lmax harmonics; the default rule
    uses 2*lmax + 8 polar nodes.
    """
    if quad is None:
        quad = make_sphere_quadrature(2 * lmax + 8)
    vals = np.asarray(fn(quad.nodes), dtype=complex)
    if vals.ndim == 1:
        vals = vals[:, None]
    Y = ylm_matrix(lmax, quad.nodes)  # (nlm, N)
    coeffs = (Y.conj() * quad.weights) @ vals  # (nlm, ncomp)
    return SphericalFunction(lmax, coeffs.T)


def legendre_p_zero(l: int) -> float:
    """P_l(0): zero for odd l, (-1)^(l/2) (l-1)!! / l!! for even l."""
    if l % 2 == 1:
        return 0.0
    val = 1.0
    for k in range(2, l + 1, 2):
        val *= (k - 1) / k
    return val * (-1.0) ** (l // 2)
