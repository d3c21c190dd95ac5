"""Kerr-medium spectrum and its approximation by deformed-oscillator Hamiltonians.

Units: ``hbar = 1`` and ``omega0`` carries the energy unit.  The Kerr
Hamiltonian ``H = (omega0/2)(2N + 1) + (kappa/2) N (N - 1)`` is compared
with two exactly solvable deformed Hamiltonians whose parameters are
matched to first order in ``kappa``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .catalog import UnifiedParams, structure_unified
from .errors import DomainError, RepresentationError

#: deviations below this are treated as numerically zero
DEV_FLOOR = 1e-13
RATIO_BAND = (3.5, 4.5)


@dataclass(frozen=True)
class KerrParams:
    omega0: float
    kappa: float

    def __post_init__(self):
        if not self.omega0 > 0:
            raise DomainError(f"omega0 must be positive, got {self.omega0!r}")
        if not math.isfinite(self.kappa):
            raise DomainError("kappa must be finite")
        if abs(self.kappa) / self.omega0 > 0.1:
            warnings.warn("|kappa|/omega0 > 0.1 is outside the perturbative regime", stacklevel=2)


@dataclass(frozen=True)
class KerrReparam:
    """Deformation ``q = e``, ``alpha = rho + mu``, ``gamma = rho - mu``, ``beta = 0``."""

    rho: float
    mu: float

    def __post_init__(self):
        if self.rho > 0:
            raise DomainError(f"rho must be nonpositive so that mu^2 = -9 rho / 2 is real, got {self.rho!r}")
        if self.mu < 0:
            raise DomainError(f"mu must be nonnegative, got {self.mu!r}")

    @classmethod
    def from_kerr(cls, params: KerrParams) -> "KerrReparam":
        """``rho = -2 kappa / omega0`` and ``mu = sqrt(-9 rho / 2)``; needs ``kappa >= 0``."""
        if params.kappa < 0:
            raise DomainError("matching needs kappa >= 0")
        rho = -2.0 * params.kappa / params.omega0
        return cls(rho, math.sqrt(-4.5 * rho))


def kerr_spectrum(params: KerrParams, n_max: int) -> np.ndarray:
    n = np.arange(n_max + 1, dtype=float)
    return params.omega0 / 2 * (2 * n + 1) + params.kappa / 2 * n * (n - 1)


def deformed_spectrum_equal_case(
    omega0: float, gamma: float, beta: float, nu: float, q: float = math.e, n_max: int = 10
) -> np.ndarray:
    """Exact levels ``(omega0/2)(f(n) + f(n+1))`` of ``(omega0/2)(a+ a + a a+)`` with ``alpha = gamma``."""
    u = UnifiedParams(q, alpha=gamma, beta=beta, gamma=gamma, nu=nu)
    f = np.array([structure_unified(u, n) for n in range(n_max + 2)])
    if np.any(f < 0):
        bad = int(np.argmax(f < 0))
        raise RepresentationError(f"structure function is negative at n={bad}: {f[bad]!r}")
    return omega0 / 2 * (f[:-1] + f[1:])


def deformed_spectrum_nu0(omega0: float, reparam: KerrReparam, n_max: int) -> np.ndarray:
    """Exact levels ``(omega0/2)(e^(alpha(n+1)) - e^(gamma(n+1))) / (e^alpha - e^gamma)``.

    Evaluated as ``(omega0/2) e^(rho n) sinh(mu (n+1)) / sinh(mu)``.
    """
    if reparam.mu == 0:
        raise DomainError("mu = 0 makes alpha = gamma and the ratio degenerate")
    n = np.arange(n_max + 1, dtype=float)
    mu = reparam.mu
    return omega0 / 2 * np.exp(reparam.rho * n) * np.sinh(mu * (n + 1)) / np.sinh(mu)


def matched_spectrum(params: KerrParams, matcher: str, n_max: int) -> np.ndarray:
    """Deformed spectrum with parameters matched to ``params``.

    ``equal_case`` uses ``gamma = kappa / (2 omega0)``, ``nu = 0`` and
    ``beta = -gamma``; ``nu0`` uses :meth:`KerrReparam.from_kerr`.
    """
    if matcher == "equal_case":
        g = params.kappa / (2 * params.omega0)
        return deformed_spectrum_equal_case(params.omega0, g, -g, 0.0, math.e, n_max)
    if matcher == "nu0":
        return deformed_spectrum_nu0(params.omega0, KerrReparam.from_kerr(params), n_max)
    raise ValueError(f"unknown matcher {matcher!r}")


@dataclass(frozen=True)
class ScalingReport:
    """Ratio ``dev(kappa) / dev(kappa/2)`` of the largest level deviations.

    A quadratic remainder gives a ratio near 4 and a linear one near 2.
    ``transition_ratio`` repeats the test on ``E_n - E_0``, which is blind to
    a common shift of all levels; it is a diagnostic only.
    """

    matcher: str
    dev: float
    dev_half: float
    ratio: float
    transition_ratio: float
    inconclusive: bool

    @property
    def in_band(self) -> bool:
        return not self.inconclusive and RATIO_BAND[0] <= self.ratio <= RATIO_BAND[1]


def _devs(params: KerrParams, matcher: str, n_max: int) -> tuple[float, float]:
    d = matched_spectrum(params, matcher, n_max) - kerr_spectrum(params, n_max)
    return float(np.abs(d).max()), float(np.abs(d - d[0]).max())


def deviation_scaling(params: KerrParams, matcher: str, n_max: int) -> ScalingReport:
    """Halve ``kappa`` and compare the largest deviation from the Kerr levels."""
    half = KerrParams(params.omega0, params.kappa / 2)
    dev, tdev = _devs(params, matcher, n_max)
    dev_half, tdev_half = _devs(half, matcher, n_max)
    inconclusive = dev < DEV_FLOOR or dev_half < DEV_FLOOR
    ratio = dev / dev_half if dev_half > 0 else math.nan
    tratio = tdev / tdev_half if tdev_half > 0 else math.nan
    return ScalingReport(matcher, dev, dev_half, ratio, tratio, inconclusive)
