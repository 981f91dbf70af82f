"""Probe transmission of a dispersively coupled transmon array.

A weak probe at omega_p scans across the qubit frequencies while a signal
field (vacuum, coherent, incoherent or thermal) populates the cavity.
Every qubit adds a probe-normalised linear response R_j(omega_p); the
transmission assembles the two rotating branches

    S21 = sum(+-) -i gc/2 / (omega_p -+ omega_c* + i gc/2)
        + i gc/2 R_j(omega_p) / (omega_p - omega_c + i gc/2)
        + i gc/2 conj(R_j(-omega_p)) / (omega_p + omega_c + i gc/2)

with omega_c* = omega_c - sum_j chi_j the ground-state-dressed cavity
frequency.  R depends on the signal state through the in-cavity photon
statistics; the photon-number sidebands sit at omega_j + 2 chi_j n.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .cavity import ResonatorGeometry, resonances
from .specfun import ConvergenceError, expint_scaled, hyp1f1
from .waveguide import WaveguideParams

TWO_PI = 2.0*math.pi
E_CHARGE = 1.602176634e-19
HBAR = 1.054571817e-34

# series truncation: stop once the last 3 terms each fall below
# _TERM_RTOL of the accumulated magnitude; hard cap _TERM_CAP
_TERM_RTOL = 1e-12
_TERM_CAP = 5000


# ---------------------------------------------------------------------------
# Parameter containers

@dataclass(frozen=True)
class QubitParams:
    omega_q: float        # rad/s
    chi: float            # rad/s, per-photon Stark shift
    gamma: float          # rad/s, decay into non-line channels
    gamma_phi: float      # rad/s, pure dephasing
    # optional physical provenance, filled in by derive_qubit
    josephson_energy: Optional[float] = None   # J
    capacitance: Optional[float] = None        # F
    flux_fraction: Optional[float] = None
    position: Optional[float] = None           # m

    def __post_init__(self):
        if self.chi == 0:
            raise ValueError("chi must be non-zero")
        if self.gamma < 0 or self.gamma_phi < 0:
            raise ValueError("decay rates must be non-negative")

    @property
    def gamma_coh(self) -> float:
        """Coherence decay gamma/2 + gamma_phi entering every line width."""
        return 0.5*self.gamma + self.gamma_phi


@dataclass(frozen=True)
class CavityParams:
    omega_c: float        # rad/s
    gamma_c: float        # rad/s

    def __post_init__(self):
        if self.gamma_c <= 0:
            raise ValueError("gamma_c must be positive")


@dataclass(frozen=True)
class SystemParams:
    cavity: CavityParams
    qubits: tuple[QubitParams, ...]

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))

    @property
    def omega_c_star(self) -> float:
        """Dressed cavity frequency omega_c - sum_j chi_j."""
        return self.cavity.omega_c - sum(q.chi for q in self.qubits)


@dataclass(frozen=True)
class Vacuum:
    signal_omega: Optional[float] = None


@dataclass(frozen=True)
class Coherent:
    flux: Optional[float] = None     # photons/s
    nbar: Optional[float] = None     # in-cavity mean photon number
    signal_omega: Optional[float] = None

    def __post_init__(self):
        _check_flux_nbar(self.flux, self.nbar)


@dataclass(frozen=True)
class Incoherent:
    flux: Optional[float] = None
    nbar: Optional[float] = None
    signal_omega: Optional[float] = None

    def __post_init__(self):
        _check_flux_nbar(self.flux, self.nbar)


@dataclass(frozen=True)
class Thermal:
    tau_c: float                     # s, signal coherence time
    flux: Optional[float] = None
    nbar: Optional[float] = None
    signal_omega: Optional[float] = None

    def __post_init__(self):
        if self.tau_c <= 0:
            raise ValueError("tau_c must be positive")
        _check_flux_nbar(self.flux, self.nbar)


SignalState = Union[Vacuum, Coherent, Incoherent, Thermal]


def _check_flux_nbar(flux, nbar):
    if (flux is None) == (nbar is None):
        raise ValueError("give exactly one of flux or nbar")
    if flux is not None and flux < 0:
        raise ValueError("flux must be non-negative")
    if nbar is not None and nbar < 0:
        raise ValueError("nbar must be non-negative")


@dataclass(frozen=True)
class Spectrum:
    omega_p: np.ndarray
    s21: np.ndarray
    components: Optional[dict] = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        omega = np.asarray(self.omega_p, dtype=float)
        s21 = np.asarray(self.s21, dtype=complex)
        if omega.shape != s21.shape:
            raise ValueError("grid and S21 arrays differ in length")
        if omega.size > 1 and not np.all(np.diff(omega) > 0):
            raise ValueError("probe grid must be strictly increasing")
        object.__setattr__(self, "omega_p", omega)
        object.__setattr__(self, "s21", s21)


# ---------------------------------------------------------------------------
# Parameter derivation

def derive_qubit(josephson_energy: float, capacitance: float,
                 flux_fraction: float, position: float,
                 line: WaveguideParams, cav: ResonatorGeometry,
                 gamma_phi: float = 0.0) -> QubitParams:
    """Transmon parameters from the physical block.

    omega_q = sqrt(4 e^2 E_J/C)/hbar - e^2/(2 hbar C), the line coupling
    kappa = (2e/hbar) f sqrt(E_J omega_q/(2 c C')) with c, C' the effective
    line speed and capacitance, g = kappa cos(pi l/L)/sqrt(pi), and
    chi = g^2/(omega_q - omega_c) against the first cavity mode.
    The non-line decay defaults to gamma = kappa^2/omega_q.
    """
    e_c = E_CHARGE**2/(2.0*capacitance)
    if e_c/josephson_energy > 0.1:
        warnings.warn(f"E_C/E_J = {e_c/josephson_energy:.3f} > 0.1: "
                      "outside the transmon regime", stacklevel=2)
    omega_q = (math.sqrt(4.0*E_CHARGE**2*josephson_energy/capacitance)
               - e_c)/HBAR
    kappa = (2.0*E_CHARGE/HBAR)*flux_fraction*math.sqrt(
        josephson_energy*omega_q/(2.0*line.v*line.c_eff))
    g = position_coupling(kappa, position, cav.length)
    omega_c = resonances(cav, 1)[0].omega_n
    if omega_q == omega_c:
        raise ZeroDivisionError("omega_q equals omega_c: dispersive "
                                "approximation breaks down")
    if g != 0 and abs(omega_q - omega_c) < 10.0*abs(g):
        warnings.warn("detuning below 10 g: dispersive validity is marginal",
                      stacklevel=2)
    chi = g*g/(omega_q - omega_c)
    return QubitParams(omega_q=omega_q, chi=chi,
                       gamma=kappa**2/omega_q, gamma_phi=gamma_phi,
                       josephson_energy=josephson_energy,
                       capacitance=capacitance,
                       flux_fraction=flux_fraction, position=position)


def coupling_estimate(gamma: float, omega_q: float) -> float:
    """Order-of-magnitude g ~ kappa/2 = sqrt(gamma omega_q)/2 (position
    factor not included)."""
    return 0.5*math.sqrt(gamma*omega_q)


def position_coupling(kappa: float, position: float, length: float) -> float:
    """Cavity coupling g = kappa cos(pi l/L)/sqrt(pi) at position l."""
    return kappa*math.cos(math.pi*position/length)/math.sqrt(math.pi)


# ---------------------------------------------------------------------------
# Photon statistics inside the cavity

def signal_frequency(sig: SignalState, params: SystemParams) -> float:
    """Signal carrier frequency; defaults to the dressed cavity frequency."""
    return params.omega_c_star if sig.signal_omega is None else sig.signal_omega


def cavity_photon_number(sig: SignalState, params: SystemParams
                         ) -> tuple[float, Optional[complex]]:
    """(nbar, beta) in the cavity for the given signal state.

    Coherent/incoherent fluxes fill the cavity Lorentzian
    nbar = (gc J/2)/((omega - omega_c*)^2 + gc^2/4) (so nbar = 2J/gc on
    resonance); the thermal line gives nbar = (J/tau)/((omega-omega_c*)^2
    + 1/tau^2) = tau J on resonance.  Only the coherent state carries an
    amplitude beta, with |beta|^2 = nbar and beta real positive at zero
    detuning.
    """
    omega = signal_frequency(sig, params)
    delta = omega - params.omega_c_star
    gc = params.cavity.gamma_c
    if isinstance(sig, Vacuum):
        return 0.0, None
    if isinstance(sig, (Coherent, Incoherent)):
        lor = delta*delta + 0.25*gc*gc
        flux = sig.flux if sig.flux is not None else sig.nbar*lor/(0.5*gc)
        nbar = 0.5*gc*flux/lor
        if isinstance(sig, Coherent):
            beta = 1j*math.sqrt(0.5*gc*flux)/(delta + 0.5j*gc)
            return nbar, beta
        return nbar, None
    if isinstance(sig, Thermal):
        if sig.tau_c*gc > 0.1:
            warnings.warn(f"gamma_c tau_c = {sig.tau_c*gc:.3f} > 0.1: thermal "
                          "model assumes a short coherence time", stacklevel=2)
        lor = delta*delta + 1.0/sig.tau_c**2
        flux = sig.flux if sig.flux is not None else sig.nbar*lor*sig.tau_c
        return flux/(sig.tau_c*lor), None
    raise TypeError(f"unknown signal state {sig!r}")


def thermal_flux(sig: Thermal, params: SystemParams) -> float:
    omega = signal_frequency(sig, params)
    delta = omega - params.omega_c_star
    lor = delta*delta + 1.0/sig.tau_c**2
    return sig.flux if sig.flux is not None else sig.nbar*lor*sig.tau_c


# ---------------------------------------------------------------------------
# Per-qubit probe responses (all normalised by the probe amplitude)

def qubit_response_coherent(omega_p: float, qubit: QubitParams,
                            params: SystemParams, beta: complex,
                            signal_omega: Optional[float] = None,
                            method: str = "series") -> complex:
    """Probe-normalised dipole response with a coherent field beta.

    Series form: chi e^-W sum_n W^n/n! / D_n with
    W = 4 chi^2 |beta|^2 / w^2,  w = omega_c* + 2 chi - omega - i gc/2,
    D_n = omega_p - omega_j - 2 chi(|beta|^2 + n)
          - n (omega_c* - omega - i gc/2) + i gamma_coh
          + 4 chi^2 |beta|^2 / w.
    method="closed" evaluates the equivalent confluent-hypergeometric
    closed form instead; both paths agree to ~1e-12.
    """
    chi, gc = qubit.chi, params.cavity.gamma_c
    omega = params.omega_c_star if signal_omega is None else signal_omega
    w = params.omega_c_star + 2.0*chi - omega - 0.5j*gc
    beta2 = abs(beta)**2
    big_w = 4.0*chi*chi*beta2/(w*w)
    base = (omega_p - qubit.omega_q - 2.0*chi*beta2 + 1j*qubit.gamma_coh
            + 4.0*chi*chi*beta2/w)
    if method == "closed":
        w0 = base - 4.0*chi*chi*beta2/w
        a = -w0/w - big_w
        return chi*cmath.exp(-big_w)/base*hyp1f1(a, 1.0 + a, big_w)
    if method != "series":
        raise ValueError(f"unknown method {method!r}")
    step = 2.0*chi + (params.omega_c_star - omega - 0.5j*gc)
    # scaled Poisson accumulation: amp*exp(logscale) = e^-W W^n/n!
    logscale = -big_w
    amp = 1.0 + 0j
    total = 0j
    quiet = 0
    for n in range(_TERM_CAP):
        term = amp*cmath.exp(logscale)/(base - n*step)
        total += term
        amp *= big_w/(n + 1)
        if abs(amp) > 1e250:
            logscale += math.log(abs(amp))
            amp /= abs(amp)
        if abs(term) < _TERM_RTOL*max(abs(total), 1e-300) and n >= abs(big_w):
            quiet += 1
            if quiet >= 3:
                return total*chi
        else:
            quiet = 0
    raise ConvergenceError(
        f"coherent response series cap: nbar={beta2:.3g}, |W|={abs(big_w):.3g}")


def qubit_response_incoherent(omega_p: float, qubit: QubitParams,
                              params: SystemParams, nbar: float,
                              signal_omega: Optional[float] = None) -> complex:
    """Probe-normalised response for an incoherent (phase-less) field.

    Gaussian-weighted integral of the coherent response over |beta|^2,
    carried out exactly term by term:

        chi sum_n (1/nbar) (k/c)^n e^(x_n) E_(n+1)(x_n) / B,
        k = 4 chi^2/w^2,  c = 1/nbar + k,  B = -(2 chi - 4 chi^2/w),
        x_n = c (omega_p - omega_j + i gamma_coh - n step)/B,

    with w, step as in the coherent series.  The product e^x E_(n+1)(x)
    equals x^n U(n+1, n+1, x) and is evaluated in scaled form.
    """
    if nbar <= 0:
        raise ValueError("incoherent response needs nbar > 0")
    chi, gc = qubit.chi, params.cavity.gamma_c
    omega = params.omega_c_star if signal_omega is None else signal_omega
    w = params.omega_c_star + 2.0*chi - omega - 0.5j*gc
    k = 4.0*chi*chi/(w*w)
    c = 1.0/nbar + k
    b_coef = -(2.0*chi - 4.0*chi*chi/w)
    step = 2.0*chi + (params.omega_c_star - omega - 0.5j*gc)
    total = 0j
    ratio = 1.0 + 0j      # (k/c)^n
    quiet = 0
    for n in range(_TERM_CAP):
        a_n = omega_p - qubit.omega_q + 1j*qubit.gamma_coh - n*step
        term = ratio*expint_scaled(n + 1, a_n*c/b_coef)/(nbar*b_coef)
        total += term
        ratio *= k/c
        if abs(term) < _TERM_RTOL*max(abs(total), 1e-300):
            quiet += 1
            if quiet >= 3:
                return total*chi
        else:
            quiet = 0
    raise ConvergenceError(f"incoherent response series cap at nbar={nbar:.3g}")


def qubit_response_thermal(omega_p: float, qubit: QubitParams,
                           params: SystemParams, flux: float, tau_c: float,
                           signal_omega: Optional[float] = None) -> complex:
    """Probe-normalised response for a short-coherence (thermal) field.

    Bose factor nbar = (J/tau)/((omega-omega_c*)^2 + 1/tau^2); the probe
    sideband sees the softened nbar_p = nbar evaluated at the complex
    tau_p = tau/(1 + i tau (omega_p - omega)).  With
    S = sqrt(gc^2/4 + gc (2 nbar_p + 1) i chi - chi^2) (Re S >= 0) the
    response is a geometric double series over the poles
    omega_p^(n) = omega_j - i gamma_coh - i(2n+1) S - chi + i gc/2.
    """
    if flux < 0:
        raise ValueError("flux must be non-negative")
    chi, gc = qubit.chi, params.cavity.gamma_c
    omega = params.omega_c_star if signal_omega is None else signal_omega
    if gc*tau_c > 0.1:
        warnings.warn(f"gamma_c tau_c = {gc*tau_c:.3f} > 0.1: outside the "
                      "validity of the short-coherence expansion", stacklevel=2)
    delta = omega - params.omega_c_star
    nbar = (flux/tau_c)/(delta*delta + 1.0/tau_c**2)
    tau_p = tau_c/(1.0 + 1j*tau_c*(omega_p - omega))
    nbar_p = (flux/tau_p)/(delta*delta + 1.0/(tau_p*tau_p))
    s_root = cmath.sqrt(0.25*gc*gc + gc*(2.0*nbar_p + 1.0)*1j*chi - chi*chi)
    if s_root.real < 0:
        s_root = -s_root   # decaying poles
    v = 1.0 + (1j*chi - 0.5*gc - s_root)/(gc*(1.0 + nbar_p))
    r1 = 0.5*gc - s_root - 1j*chi
    q1 = 0.5*gc + s_root - 1j*chi
    r2 = gc*(v - nbar/(1.0 + nbar))*(1.0 + nbar_p)
    q2 = r2 + 2.0*s_root
    total = 0j
    f1 = f2 = 1.0 + 0j
    quiet = 0
    for n in range(_TERM_CAP):
        pole = (qubit.omega_q - 1j*qubit.gamma_coh - 1j*(2*n + 1)*s_root
                - chi + 0.5j*gc)
        term = 2.0*s_root*gc/(omega_p - pole)*f1/q1*f2/q2
        total += term
        f1 *= r1/q1
        f2 *= r2/q2
        if abs(term) < _TERM_RTOL*max(abs(total), 1e-300):
            quiet += 1
            if quiet >= 3:
                return total*chi
        else:
            quiet = 0
    raise ConvergenceError(f"thermal response series cap at nbar={nbar:.3g}")


def response_function(params: SystemParams, sig: SignalState,
                      method: str = "series"
                      ) -> Callable[[float, QubitParams], complex]:
    """Bind a signal state into the per-qubit response R(omega_p, qubit)."""
    omega = signal_frequency(sig, params)
    if isinstance(sig, Vacuum):
        return lambda wp, q: qubit_response_coherent(
            wp, q, params, 0.0, omega, method=method)
    if isinstance(sig, Coherent):
        _, beta = cavity_photon_number(sig, params)
        return lambda wp, q: qubit_response_coherent(
            wp, q, params, beta, omega, method=method)
    if isinstance(sig, Incoherent):
        nbar, _ = cavity_photon_number(sig, params)
        if nbar == 0:
            return lambda wp, q: qubit_response_coherent(
                wp, q, params, 0.0, omega, method=method)
        return lambda wp, q: qubit_response_incoherent(wp, q, params, nbar, omega)
    if isinstance(sig, Thermal):
        flux = thermal_flux(sig, params)
        return lambda wp, q: qubit_response_thermal(
            wp, q, params, flux, sig.tau_c, omega)
    raise TypeError(f"unknown signal state {sig!r}")


# ---------------------------------------------------------------------------
# Transmission assembly

def s21_signal(omega: float, params: SystemParams) -> complex:
    """Transmission seen by the signal beam itself (near cavity resonance)."""
    gc = params.cavity.gamma_c
    wcs = params.omega_c_star
    return (-0.5j*gc/(omega - wcs + 0.5j*gc)
            - 0.5j*gc/(omega + wcs + 0.5j*gc))


def s21_probe(omega_p: float, params: SystemParams, sig: SignalState,
              probe_amplitude: float = 1.0, method: str = "series",
              parts: Optional[dict] = None) -> complex:
    """Probe transmission at omega_p for the given signal state.

    Linear response: the probe amplitude cancels identically (it is kept
    as an explicit placeholder so the cancellation is testable).  When
    `parts` is a dict it receives the cavity term and one entry per qubit.
    """
    gc = params.cavity.gamma_c
    omega_c = params.cavity.omega_c
    wcs = params.omega_c_star
    respond = response_function(params, sig, method=method)
    cavity_term = (-0.5j*gc/(omega_p - wcs + 0.5j*gc)
                   - 0.5j*gc/(omega_p + wcs + 0.5j*gc))
    total = cavity_term
    if parts is not None:
        parts["cavity"] = cavity_term
    for idx, q in enumerate(params.qubits):
        sigma_co = probe_amplitude*respond(omega_p, q)      # co-rotating
        sigma_counter = probe_amplitude*np.conj(respond(-omega_p, q))
        term = (0.5j*gc*(sigma_co/probe_amplitude)/(omega_p - omega_c + 0.5j*gc)
                + 0.5j*gc*(sigma_counter/probe_amplitude)/(omega_p + omega_c + 0.5j*gc))
        total += term
        if parts is not None:
            parts[f"qubit_{idx}"] = term
    return total


# Table of sideband weights and cavity-induced widths per signal state.

def sideband_weight(sig: SignalState, n: int, nbar: float) -> float:
    if isinstance(sig, Vacuum) or nbar == 0:
        return 1.0 if n == 0 else 0.0
    if isinstance(sig, Coherent):
        return math.exp(-nbar + n*math.log(nbar) - math.lgamma(n + 1))
    return math.exp(n*math.log(nbar) - (n + 1)*math.log(nbar + 1.0))


def sideband_cavity_width(sig: SignalState, n: int, nbar: float,
                          gamma_c: float) -> float:
    if isinstance(sig, Vacuum) or nbar == 0:
        return 0.0
    if isinstance(sig, Coherent):
        return 0.5*(n + nbar)*gamma_c
    if isinstance(sig, Incoherent):
        return 0.5*n*gamma_c
    return ((2.0*nbar + 1.0)*n + nbar)*gamma_c


def comb_spectrum(omega_p: float, params: SystemParams,
                  sig: SignalState) -> complex:
    """Well-resolved-limit comb approximation of the probe transmission.

    -i gc/(2(omega_p - omega_c)) plus, per qubit and photon number n, a
    pole at omega_j + 2 chi n of weight P(n) gc chi/(2(omega_j - omega_c))
    and width Gamma_cav(n) + gamma_coh; valid for gc << chi.
    """
    gc = params.cavity.gamma_c
    omega_c = params.cavity.omega_c
    nbar, _ = cavity_photon_number(sig, params)
    min_chi = min((abs(q.chi) for q in params.qubits), default=math.inf)
    if gc > 0.2*min_chi:
        warnings.warn(f"comb approximation needs gamma_c << chi "
                      f"(ratio {gc/min_chi:.2f})", stacklevel=2)
    total = -0.5j*gc/(omega_p - omega_c)
    for q in params.qubits:
        amp = 0.5j*gc*q.chi/(q.omega_q - omega_c)
        cumulative = 0.0
        n = 0
        while cumulative < 1.0 - 1e-10 and n < 100000:
            p_n = sideband_weight(sig, n, nbar)
            cumulative += p_n
            width = sideband_cavity_width(sig, n, nbar, gc) + q.gamma_coh
            total += amp*p_n/(omega_p - (q.omega_q + 2.0*q.chi*n - 1j*width))
            n += 1
    return total


# ---------------------------------------------------------------------------
# Sweeps and figures of merit

def sweep(params: SystemParams, sig: SignalState, omega_p_grid: Sequence[float],
          model: str = "full", with_components: bool = False,
          method: str = "series", workers: int = 1) -> Spectrum:
    """Evaluate S21 over a probe grid; model is "full" or "comb".

    Grid points are independent; with workers > 1 they are evaluated on a
    thread pool and collected back in grid order, so the output is
    identical to the sequential one.
    """
    if model not in ("full", "comb"):
        raise ValueError(f"unknown model {model!r}")
    grid = np.asarray(omega_p_grid, dtype=float)
    values = np.empty(grid.shape, dtype=complex)
    components: Optional[dict] = None
    if with_components and model == "full":
        components = {}

    def evaluate(wp: float):
        if model == "comb":
            return comb_spectrum(wp, params, sig), None
        parts: Optional[dict] = {} if components is not None else None
        return s21_probe(wp, params, sig, method=method, parts=parts), parts

    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(evaluate, grid))
    else:
        results = [evaluate(wp) for wp in grid]
    for i, (val, parts) in enumerate(results):
        values[i] = val
        if components is not None and parts is not None:
            for key, part in parts.items():
                components.setdefault(key, np.empty(grid.shape, complex))[i] = part
    nbar, _ = cavity_photon_number(sig, params)
    meta = {
        "model": model,
        "state": type(sig).__name__.lower(),
        "nbar": nbar,
        "signal_omega_rad_s": signal_frequency(sig, params),
        "omega_c_rad_s": params.cavity.omega_c,
        "omega_c_star_rad_s": params.omega_c_star,
        "gamma_c_rad_s": params.cavity.gamma_c,
        "qubits": [{"omega_q_rad_s": q.omega_q, "chi_rad_s": q.chi,
                    "gamma_rad_s": q.gamma, "gamma_phi_rad_s": q.gamma_phi}
                   for q in params.qubits],
    }
    if isinstance(sig, Thermal):
        meta["tau_c_s"] = sig.tau_c
    return Spectrum(omega_p=grid, s21=values, components=components, meta=meta)


def figure_of_merit(spec_signal: Spectrum, spec_vacuum: Spectrum) -> np.ndarray:
    """Pointwise |S21_signal| / |S21_vacuum| on identical grids."""
    if not np.array_equal(spec_signal.omega_p, spec_vacuum.omega_p):
        raise ValueError("figure_of_merit requires identical probe grids")
    return np.abs(spec_signal.s21)/np.abs(spec_vacuum.s21)


def _with_signal_omega(sig: SignalState, omega: float) -> SignalState:
    kwargs = {"signal_omega": omega}
    if isinstance(sig, Vacuum):
        return Vacuum(**kwargs)
    if isinstance(sig, Coherent):
        return Coherent(flux=sig.flux, nbar=sig.nbar, **kwargs)
    if isinstance(sig, Incoherent):
        return Incoherent(flux=sig.flux, nbar=sig.nbar, **kwargs)
    return Thermal(tau_c=sig.tau_c, flux=sig.flux, nbar=sig.nbar, **kwargs)


def detuning_error(params: SystemParams, sig: SignalState,
                   detunings: Sequence[float],
                   omega_p_grid: Sequence[float]) -> dict[float, np.ndarray]:
    """Relative |S21| error against the zero-detuning spectrum.

    For each detuning d the signal is moved to omega_c* + d (same flux)
    and e(omega_p) = ||S21(d)| - |S21(0)|| / |S21(0)| is returned.
    """
    gc = params.cavity.gamma_c
    for d in detunings:
        if abs(d) > gc:
            warnings.warn(f"detuning {d:.3g} exceeds gamma_c", stacklevel=2)
    base = sweep(params, _with_signal_omega(sig, params.omega_c_star),
                 omega_p_grid).s21
    base_mag = np.abs(base)
    out: dict[float, np.ndarray] = {}
    for d in detunings:
        shifted = sweep(params, _with_signal_omega(sig, params.omega_c_star + d),
                        omega_p_grid).s21
        out[d] = np.abs(np.abs(shifted) - base_mag)/base_mag
    return out
