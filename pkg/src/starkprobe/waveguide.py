"""Transmission-line parameters from conformal mapping.

Two geometries: a parallel-plate line filled with two stacked dielectrics,
and a coplanar waveguide (CPW) on a layered substrate (oxide of thickness
h2 directly under the metal, substrate of thickness h1 below it, vacuum
underneath; upper half-plane vacuum, ground shield at infinity).

The static capacitance of the CPW composes the per-region conformal-map
capacitances C_i = eps0 * 2K(k_i)/K(k_i') through the interface-charge
relations; the effective (measured) quantities v, Z and C_eff differ from
the static ones because the interface polarisation currents enter the
inductance.  All outputs are plain SI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .specfun import elliptic_k

MU0 = 4e-7*math.pi        # H/m
C_LIGHT = 2.99792458e8    # m/s
EPS0 = 1.0/(MU0*C_LIGHT**2)   # F/m, consistent with MU0 and C_LIGHT


@dataclass(frozen=True)
class ParallelPlateGeometry:
    """Signal and ground plates of width w_plate, two dielectric fills."""
    w_plate: float      # m
    d1: float           # m, thickness of layer with eps1
    d2: float           # m, thickness of layer with eps2
    eps1_rel: float
    eps2_rel: float

    def __post_init__(self):
        if min(self.w_plate, self.d1, self.d2) <= 0:
            raise ValueError("plate geometry lengths must be positive")
        if min(self.eps1_rel, self.eps2_rel) < 1.0:
            raise ValueError("relative permittivities must be >= 1")


@dataclass(frozen=True)
class CpwGeometry:
    """CPW: centre strip width w, gap s, oxide h2 on substrate h1."""
    w: float            # m
    s: float            # m
    h1: float           # m, substrate (eps1) thickness; may be math.inf
    h2: float           # m, oxide (eps2) thickness
    eps1_rel: float
    eps2_rel: float

    def __post_init__(self):
        if min(self.w, self.s, self.h1, self.h2) <= 0:
            raise ValueError("CPW lengths must be positive")
        if min(self.eps1_rel, self.eps2_rel) < 1.0:
            raise ValueError("relative permittivities must be >= 1")


@dataclass(frozen=True)
class WaveguideParams:
    c_line: float       # F/m, static C'
    l_line: float       # H/m, L'
    v: float            # m/s
    eps_eff: float
    c_eff: float        # F/m, 1/(L' v^2)
    z: float            # Ohm, v L'
    z_static: float     # Ohm, sqrt(L'/C')

    def __post_init__(self):
        vals = (self.c_line, self.l_line, self.v, self.eps_eff, self.c_eff,
                self.z, self.z_static)
        if any(not (x > 0) for x in vals):
            raise ValueError(f"non-positive waveguide parameter in {self}")
        if self.v > C_LIGHT*(1 + 1e-12):
            raise ValueError("phase velocity exceeds c")

    def as_dict(self) -> dict:
        return {"c_line_f_per_m": self.c_line, "l_line_h_per_m": self.l_line,
                "v_m_per_s": self.v, "v_over_c": self.v/C_LIGHT,
                "eps_eff": self.eps_eff, "c_eff_f_per_m": self.c_eff,
                "z_ohm": self.z, "z_static_ohm": self.z_static}


def _derived(c_line: float, l_line: float, eps_eff: float) -> WaveguideParams:
    v = C_LIGHT/math.sqrt(eps_eff)
    return WaveguideParams(
        c_line=c_line, l_line=l_line, v=v, eps_eff=eps_eff,
        c_eff=1.0/(l_line*v*v), z=v*l_line, z_static=math.sqrt(l_line/c_line))


def parallel_plate_params(geom: ParallelPlateGeometry) -> WaveguideParams:
    """Two-dielectric parallel-plate line (edge effects neglected)."""
    e1 = geom.eps1_rel*EPS0
    e2 = geom.eps2_rel*EPS0
    stack = geom.d1/e1 + geom.d2/e2
    v = math.sqrt((geom.d1/e1**2 + geom.d2/e2**2)/(MU0*stack))
    c_line = geom.w_plate/stack
    l_line = MU0*e2*stack/geom.w_plate
    return _derived(c_line, l_line, (C_LIGHT/v)**2)


def _shape_factor(k: float) -> float:
    """Dimensionless half-plane capacitance 2K(k)/K(k')."""
    if not 0.0 < k < 1.0:
        raise ValueError(f"degenerate conformal modulus k={k}")
    kp2 = (1.0 - k)*(1.0 + k)
    if kp2 < 1e-12:
        # K(k) ~ ln(4/k') footnote asymptotic; K(k') -> pi/2
        return 2.0*math.log(4.0/math.sqrt(kp2))/(math.pi/2.0)
    return 2.0*elliptic_k(k)/elliptic_k(math.sqrt(kp2))


def _modulus(w: float, s: float, depth: float) -> float:
    """tanh(pi w/2h)/tanh(pi (w+2s)/2h); w/(w+2s) for a half-plane."""
    if math.isinf(depth):
        return w/(w + 2.0*s)
    a = math.pi*w/(2.0*depth)
    b = math.pi*(w + 2.0*s)/(2.0*depth)
    if a > 20.0:
        return 1.0 - 2.0*math.exp(-2.0*a)  # tanh saturated; k' = 2 e^-a
    return math.tanh(a)/math.tanh(b)


def _shape_factor_thin(w: float, s: float, depth: float) -> float:
    """Shape factor for a layer so thin that k -> 1 (oxide case)."""
    a = math.pi*w/(2.0*depth)
    if a > 20.0:
        return 2.0*(math.log(2.0) + a)/(math.pi/2.0)
    return _shape_factor(_modulus(w, s, depth))


def cpw_params(geom: CpwGeometry) -> WaveguideParams:
    """Layered CPW line parameters.

    The lower half-plane capacitance follows from eliminating the
    per-region potentials against the interface boundary conditions,

        1/C_d = 1/C_0 + (1/e1 - 1)/C_1 + (1/e2 - 1/e1)/C_2,

    with every C_i a vacuum shape factor (region 0 the vacuum half-plane,
    region 1 the slab down to h1+h2, region 2 the oxide slab h2) and e_i
    the relative permittivities.  The effective permittivity and the
    parallel inductance composition L' = mu0/(C_u/eps0 + C_d/eps2) carry
    the interface-current corrections.
    """
    w, s = geom.w, geom.s
    e1, e2 = geom.eps1_rel, geom.eps2_rel
    c0 = _shape_factor(_modulus(w, s, math.inf))
    c1 = _shape_factor(_modulus(w, s, geom.h1 + geom.h2))
    c2 = _shape_factor_thin(w, s, geom.h2)

    r1, r2 = 1.0/e1, 1.0/e2
    inv_cd = 1.0/c0 + (r1 - 1.0)/c1 + (r2 - r1)/c2
    if inv_cd <= 0:
        raise ValueError("degenerate CPW composition (check layer ordering)")
    cd = 1.0/inv_cd

    c_line = EPS0*(c0 + cd)
    bracket = ((1.0 - c0/c1)*(r1 - 1.0)*((r1 - 1.0)/c1 + 2.0*(r2 - r1)/c2)
               + (1.0 - c0/c2)*(r1 - r2)**2/c2)
    inv_eps = 2.0*c0/(c0 + cd) + bracket*cd*cd/(c0 + cd)
    l_line = MU0/(c0 + cd/e2)
    return _derived(c_line, l_line, 1.0/inv_eps)


def half_plane_params(w: float, s: float, eps_rel: float) -> WaveguideParams:
    """CPW over a uniform dielectric half-plane (vacuum above).

    h1 -> infinity limit of the layered model: C_d = eps_rel * C_0 and
    eps_eff = (1 + eps_rel)/2 exactly.  The inductance applies the
    composition L' = mu0/(C_u/eps0 + C_d/eps) with the dielectric half
    entering through its vacuum shape factor, L' = mu0/(C_0 (1 + 1/eps)),
    which reproduces the published two-half-plane line constants; feeding
    the filled capacitance instead would give mu0/(2 C_0).
    """
    c0 = _shape_factor(w/(w + 2.0*s))
    c_line = EPS0*c0*(1.0 + eps_rel)
    l_line = MU0/(c0*(1.0 + 1.0/eps_rel))
    return _derived(c_line, l_line, (1.0 + eps_rel)/2.0)
