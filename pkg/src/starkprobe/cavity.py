"""Bare two-gap resonator: complex mode spectrum and S-parameters.

The resonator is a transmission-line section of length L terminated by
identical gap capacitances C into semi-infinite lines (line capacitance
C' per length, wave speed c).  Scattering off the lossless structure is
unitary; the resonance poles follow from the Lambert W function, one
branch pair per mode index.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .specfun import lambert_w, lambert_w_log


@dataclass(frozen=True)
class ResonatorGeometry:
    length: float             # m
    gap_capacitance: float    # F, each end
    line_capacitance: float   # F/m
    velocity: float           # m/s

    def __post_init__(self):
        if min(self.length, self.gap_capacitance,
               self.line_capacitance, self.velocity) <= 0:
            raise ValueError("resonator geometry must be positive")

    @property
    def capacitance_ratio(self) -> float:
        """C/(C'L), the small parameter of the high-Q expansion."""
        return self.gap_capacitance/(self.line_capacitance*self.length)


@dataclass(frozen=True)
class CavityMode:
    n: int
    omega_n: float       # rad/s
    gamma_n: float       # rad/s, full width (half-width is gamma_n/2)
    q_factor: float

    def __post_init__(self):
        if self.gamma_n <= 0:
            raise ValueError(f"mode n={self.n} has non-positive width")


def _pole(n: int, x: float) -> complex:
    """Complex w solving the mode condition; x = C'L/(2C).

    The pole condition (1 - 2 i omega C/cC')^2 = exp(2 i L omega/c)
    reduces to u e^u = (-1)^n x e^x with u on Lambert branch n//2 for even
    n and (n-1)//2 for odd n (cut adhered from above); then
    omega_n = (c/L) Im u and gamma_n = (2c/L)(x - Re u).
    """
    branch = n//2 if n % 2 == 0 else (n - 1)//2
    if x < 600.0:
        u = lambert_w(branch, (-1.0)**n*x*math.exp(x))
    else:
        log_z = x + math.log(x) + (1j*math.pi if n % 2 else 0.0)
        u = lambert_w_log(branch, log_z)
    return u


def resonances(geom: ResonatorGeometry, n_max: int) -> list[CavityMode]:
    """Modes n = 1..n_max with exact Lambert-W frequencies and widths."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    ratio = geom.capacitance_ratio
    x = 1.0/(2.0*ratio)
    scale = geom.velocity/geom.length
    modes = []
    for n in range(1, n_max + 1):
        u = _pole(n, x)
        omega_n = scale*u.imag
        gamma_n = 2.0*scale*(x - u.real)
        if x > 2e4:
            # float noise in x - Re u grows like eps x^3 while the error of
            # the leading expansion falls like 1/x; past the crossover the
            # expansion is the more accurate width
            gamma_n = 4.0*scale*(n*math.pi*ratio)**2
        modes.append(CavityMode(n=n, omega_n=omega_n, gamma_n=gamma_n,
                                q_factor=omega_n/gamma_n))
    return modes


def small_gap_mode(geom: ResonatorGeometry, n: int) -> CavityMode:
    """Leading small-C expansion: shift -2C/(C'L) omega_n0 and width
    (4c/L)(n pi C/(L C'))^2; valid for C <~ 0.04 C'L."""
    ratio = geom.capacitance_ratio
    omega_0 = n*math.pi*geom.velocity/geom.length
    omega_n = omega_0*(1.0 - 2.0*ratio)
    gamma_n = 4.0*(geom.velocity/geom.length)*(n*math.pi*ratio)**2
    return CavityMode(n=n, omega_n=omega_n, gamma_n=gamma_n,
                      q_factor=omega_n/gamma_n)


def quality_factor_estimate(geom: ResonatorGeometry, n: int) -> float:
    """Closed form C'^2 L^2/(2 n pi C^2) = C'L/(2 omega_n0 Z C^2).

    This quotes the resonance over the half-width gamma_n/2, i.e. twice
    CavityMode.q_factor (which divides by the full width).
    """
    return 1.0/(2.0*n*math.pi*geom.capacitance_ratio**2)


def bare_s_params(geom: ResonatorGeometry, omega: float) -> tuple[complex, complex]:
    """(S21, S11) of the empty resonator at angular frequency omega.

    S21 = (2 i omega C/cC')^2 / [(1 - 2 i omega C/cC')^2 - e^(2 i L omega/c)]
    and the matching S11; |S21|^2 + |S11|^2 = 1 exactly (lossless).
    """
    if omega == 0:
        raise ValueError("omega must be non-zero")
    phase = geom.length*omega/geom.velocity
    t = 2.0*omega*geom.gap_capacitance/(geom.velocity*geom.line_capacitance)
    den = (1.0 - 1j*t)**2 - cmath.exp(2j*phase)
    s21 = -t*t/den
    s11 = 2j*(t*math.cos(phase) + math.sin(phase))/den
    return s21, s11
