"""Command line interface.

Subcommands: waveguide, cavity, atom, detect, comb, oracle, figure.
Exit codes: 0 success, 2 configuration error, 3 numerical error,
4 output/IO error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import atom as atom_mod
from . import cavity as cavity_mod
from . import detector, oracle, output, presets, waveguide
from .config import ConfigError, load_config
from .specfun import ConvergenceError

TWO_PI = 2.0*math.pi


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starkprobe",
        description="Probe-transmission spectra of transmon arrays in a "
                    "waveguide cavity")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", type=Path, help="key/value or JSON config")
        p.add_argument("--out", type=Path, default=Path("."),
                       help="output directory")
        p.add_argument("--format", default="csv,json",
                       help="comma list of csv,json,svg or 'all'")

    p = sub.add_parser("waveguide", help="transmission line parameters")
    add_common(p)
    p.add_argument("--model", default="full",
                   choices=["full", "eps2-eq-eps1", "two-half-planes",
                            "parallel-plate"])

    p = sub.add_parser("cavity", help="bare resonator spectrum and S-params")
    add_common(p)
    p.add_argument("--ratio", type=float, default=0.005,
                   help="gap capacitance ratio C/(C'L)")
    p.add_argument("--modes", type=int, default=3)
    p.add_argument("--points", type=int, default=1001)

    p = sub.add_parser("atom", help="artificial atom S11/S21 detuning sweep")
    add_common(p)
    p.add_argument("--points", type=int, default=801)

    for name in ("detect", "comb"):
        p = sub.add_parser(name, help="probe transmission spectrum "
                           + ("(comb approximation)" if name == "comb" else ""))
        add_common(p)
        p.add_argument("--preset", choices=sorted(presets.FIGURES))
        p.add_argument("--state", default="coherent",
                       choices=["vacuum", "coherent", "incoherent", "thermal"])
        p.add_argument("--nbar", type=float)
        p.add_argument("--flux", type=float, help="photon flux [1/s]")
        p.add_argument("--tau-c", type=float, help="coherence time [s]")
        p.add_argument("--detuning", type=float, default=0.0,
                       help="signal detuning from omega_c* [Hz]")
        p.add_argument("--points", type=int, default=2001)
        p.add_argument("--components", action="store_true",
                       help="emit per-term columns")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--oracle-check", action="store_true",
                       help="print analytic-vs-oracle deviations")

    p = sub.add_parser("oracle", help="analytic vs truncated-Fock deviations")
    add_common(p)
    p.add_argument("--preset", default="fig1", choices=sorted(presets.FIGURES))
    p.add_argument("--nbar", type=float, default=1.0)
    p.add_argument("--n-fock", type=int, default=40)
    p.add_argument("--points", type=int, default=9)

    p = sub.add_parser("figure", help="published-figure parameter presets")
    add_common(p)
    p.add_argument("--preset", required=True, choices=sorted(presets.FIGURES))
    p.add_argument("--state", default="coherent",
                   choices=["vacuum", "coherent", "incoherent", "thermal"])
    p.add_argument("--nbar", type=float)
    p.add_argument("--flux", type=float, help="photon flux [1/s]")
    p.add_argument("--tau-c", type=float)
    p.add_argument("--detuning", type=float, default=0.0,
                   help="signal detuning from omega_c* [Hz]")
    p.add_argument("--points", type=int, default=2001)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--fom", action="store_true",
                   help="also emit |S21|/|S21_vacuum| (panel-4 ratio)")
    p.add_argument("--oracle-check", action="store_true")
    return parser


def _formats(arg: str) -> tuple[str, ...]:
    if arg == "all":
        return ("csv", "json", "svg")
    fmts = tuple(s.strip() for s in arg.split(",") if s.strip())
    for f in fmts:
        if f not in ("csv", "json", "svg"):
            raise ConfigError(f"unknown format {f!r}")
    return fmts


def _write_report(data: dict, out_dir: Path, stem: str) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    text = "\n".join(f"{k} = {format(v, '.17g') if isinstance(v, float) else v}"
                     for k, v in data.items())
    (out_dir/f"{stem}.txt").write_text(text + "\n")
    (out_dir/f"{stem}.json").write_text(
        json.dumps(data, indent=2, sort_keys=True, default=float) + "\n")
    print(text)


def _cmd_waveguide(args) -> int:
    cfg = load_config(args.config) if args.config else {}
    if args.model == "parallel-plate":
        geom = waveguide.ParallelPlateGeometry(
            w_plate=cfg.get("w_plate", 10e-6),
            d1=cfg.get("d1", 500e-6), d2=cfg.get("d2", 550e-9),
            eps1_rel=cfg.get("eps1_rel", 11.6),
            eps2_rel=cfg.get("eps2_rel", 3.78))
        params = waveguide.parallel_plate_params(geom)
    else:
        base = presets.TABLE_GEOMETRY
        w = cfg.get("w", base.w)
        s = cfg.get("s", base.s)
        eps1 = cfg.get("eps1_rel", base.eps1_rel)
        eps2 = cfg.get("eps2_rel", base.eps2_rel)
        if args.model == "two-half-planes":
            params = waveguide.half_plane_params(w, s, eps1)
        else:
            if args.model == "eps2-eq-eps1":
                eps2 = eps1
            geom = waveguide.CpwGeometry(
                w=w, s=s, h1=cfg.get("h1", base.h1), h2=cfg.get("h2", base.h2),
                eps1_rel=eps1, eps2_rel=eps2)
            params = waveguide.cpw_params(geom)
    report = {"model": args.model, **params.as_dict()}
    _write_report(report, args.out, f"waveguide_{args.model}")
    return 0


def _cmd_cavity(args) -> int:
    cfg = load_config(args.config) if args.config else {}
    if {"length", "gap_capacitance", "line_capacitance", "velocity"} <= set(cfg):
        geom = cavity_mod.ResonatorGeometry(
            length=cfg["length"], gap_capacitance=cfg["gap_capacitance"],
            line_capacitance=cfg["line_capacitance"], velocity=cfg["velocity"])
    else:
        geom = presets.resonator_preset(args.ratio)
    modes = cavity_mod.resonances(geom, args.modes)
    rows = ["n,f_n_hz,gamma_n_hz,q_factor"]
    for m in modes:
        rows.append(f"{m.n},{m.omega_n/TWO_PI:.17g},{m.gamma_n/TWO_PI:.17g},"
                    f"{m.q_factor:.17g}")
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out/"cavity_modes.csv").write_text("\n".join(rows) + "\n")
    print("\n".join(rows))
    lo = 0.5*modes[0].omega_n
    hi = 1.15*modes[-1].omega_n
    rows = ["omega_hz,re_s21,im_s21,abs_s21,re_s11,im_s11,abs_s11"]
    for w in np.linspace(lo, hi, args.points):
        s21, s11 = cavity_mod.bare_s_params(geom, w)
        rows.append(",".join(format(v, ".17g") for v in
                             (w/TWO_PI, s21.real, s21.imag, abs(s21),
                              s11.real, s11.imag, abs(s11))))
    (args.out/"cavity_sweep.csv").write_text("\n".join(rows) + "\n")
    return 0


def _cmd_atom(args) -> int:
    cfg = load_config(args.config) if args.config else {}
    gamma1 = cfg.get("gamma1", TWO_PI*1e6)
    gamma_phi = cfg.get("gamma_phi", 0.0)
    rabi = cfg.get("rabi", 0.0)
    span = cfg.get("span", 10.0*(0.5*gamma1 + gamma_phi))
    rows = ["delta_hz,re_s11,im_s11,re_s21,im_s21"]
    for d in np.linspace(-span, span, args.points):
        p = atom_mod.AtomParams(delta_omega=d, gamma1=gamma1,
                                gamma_phi=gamma_phi, rabi=rabi)
        s11, s21 = atom_mod.atom_s_params(p)
        rows.append(",".join(format(v, ".17g") for v in
                             (d/TWO_PI, s11.real, s11.imag, s21.real, s21.imag)))
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out/"atom_sweep.csv").write_text("\n".join(rows) + "\n")
    print(f"wrote {args.points} points to {args.out/'atom_sweep.csv'}")
    return 0


def _system_from(args) -> tuple[detector.SystemParams, dict]:
    if getattr(args, "preset", None):
        fp = presets.FIGURES[args.preset]
        return fp.system(), {"preset": fp, "config": {}}
    cfg = load_config(args.config) if args.config else {}
    if not {"omega_c", "gamma_c"} <= set(cfg):
        raise ConfigError("need --preset or a config defining at least "
                          "omega_c and gamma_c")
    n_qubits = int(cfg.get("n_qubits", 1))
    if n_qubits > 0:
        if not {"omega_q", "chi"} <= set(cfg):
            raise ConfigError("config must define omega_q and chi "
                              "(or set n_qubits = 0)")
        qubit = detector.QubitParams(
            omega_q=cfg["omega_q"], chi=cfg["chi"],
            gamma=cfg.get("gamma", TWO_PI*250e3),
            gamma_phi=cfg.get("gamma_phi", 0.0))
        qubits = (qubit,)*n_qubits
    else:
        qubits = ()
    system = detector.SystemParams(
        cavity=detector.CavityParams(cfg["omega_c"], cfg["gamma_c"]),
        qubits=qubits)
    return system, {"preset": None, "config": cfg}


def _signal_from(args, system, preset) -> detector.SignalState:
    omega = system.omega_c_star + TWO_PI*getattr(args, "detuning", 0.0)
    nbar = args.nbar
    flux = getattr(args, "flux", None)
    if nbar is None and flux is None:
        nbar = preset.nbar if preset is not None else 1.0
    state = args.state
    if state == "vacuum":
        return detector.Vacuum(signal_omega=omega)
    if state == "coherent":
        return detector.Coherent(flux=flux, nbar=nbar, signal_omega=omega)
    if state == "incoherent":
        return detector.Incoherent(flux=flux, nbar=nbar, signal_omega=omega)
    tau = getattr(args, "tau_c", None)
    if tau is None and preset is not None:
        tau = preset.tau_c
    if tau is None:
        raise ConfigError("thermal state needs --tau-c")
    return detector.Thermal(tau_c=tau, flux=flux, nbar=nbar, signal_omega=omega)


def _probe_grid(args, system, preset, cfg) -> np.ndarray:
    if "probe_center" in cfg and "probe_span" in cfg:
        center, span = cfg["probe_center"], cfg["probe_span"]
    elif preset is not None:
        return preset.probe_grid_default(args.points)
    elif system.qubits:
        q = system.qubits[0]
        center = q.omega_q
        span = 50.0*max(abs(q.chi), q.gamma_coh)
    else:
        raise ConfigError("no qubits: config must set probe_center and "
                          "probe_span")
    return np.linspace(center - span, center + span, args.points)


def _oracle_table(system, sig, grid) -> str:
    pts = np.linspace(grid[0], grid[-1], 7)
    lines = ["omega_p_hz  analytic_re  analytic_im  oracle_re  oracle_im  rel_dev"]
    for wp in pts:
        analytic = detector.s21_probe(wp, system, sig)
        orc = oracle.lindblad_steady_response(system, sig, wp, n_fock=40)
        resp = detector.response_function(system, sig)(wp, system.qubits[0])
        dev = abs(orc.sigma_minus - resp)/max(abs(resp), 1e-300)
        lines.append(f"{wp/TWO_PI:.6e}  {analytic.real:+.6e}  "
                     f"{analytic.imag:+.6e}  {orc.sigma_minus.real:+.6e}  "
                     f"{orc.sigma_minus.imag:+.6e}  {dev:.3e}")
    return "\n".join(lines)


def _cmd_spectrum(args, model: str) -> int:
    system, info = _system_from(args)
    preset = info.get("preset")
    sig = _signal_from(args, system, preset)
    grid = _probe_grid(args, system, preset, info.get("config", {}))
    workers = getattr(args, "workers", 1)
    fmts = _formats(args.format)
    stem = (f"{model}_{args.preset}_{args.state}" if preset is not None
            else f"{model}_{args.state}")

    runs = [(stem, sig)]
    if (preset is not None and isinstance(sig, detector.Thermal)
            and getattr(args, "tau_c", None) is None
            and preset.tau_c_choices):
        # figure presets that sweep the coherence time emit one spectrum
        # per listed tau_c
        runs = [(f"{stem}_tau{i + 1}",
                 detector.Thermal(tau_c=tau, flux=sig.flux, nbar=sig.nbar,
                                  signal_omega=sig.signal_omega))
                for i, tau in enumerate(preset.tau_c_choices)]

    written = []
    spec = None
    for run_stem, run_sig in runs:
        spec = detector.sweep(system, run_sig, grid, model=model,
                              with_components=getattr(args, "components",
                                                      False),
                              workers=workers)
        written += output.emit_spectrum(spec, args.out, run_stem, fmts)

    if getattr(args, "fom", False) and not isinstance(sig, detector.Vacuum):
        vac = detector.sweep(system, detector.Vacuum(), grid, model=model,
                             workers=workers)
        ratio = detector.figure_of_merit(spec, vac)
        lines = ["omega_p_hz,ratio"]
        lines += [f"{w/TWO_PI:.17g},{r:.17g}" for w, r in zip(grid, ratio)]
        target = args.out/f"{stem}_fom.csv"
        args.out.mkdir(parents=True, exist_ok=True)
        target.write_text("\n".join(lines) + "\n")
        written.append(target)

    if (preset is not None and preset.detunings_frac
            and not isinstance(sig, detector.Vacuum)):
        gc = system.cavity.gamma_c
        detunings = [f*gc for f in preset.detunings_frac]
        errs = detector.detuning_error(system, sig, detunings, grid)
        header = "omega_p_hz," + ",".join(
            f"err_detuning_{f:+.4g}_gc" for f in preset.detunings_frac)
        lines = [header]
        for i, w in enumerate(grid):
            cells = [f"{w/TWO_PI:.17g}"] + [f"{errs[d][i]:.17g}"
                                            for d in detunings]
            lines.append(",".join(cells))
        target = args.out/f"{stem}_detuning_error.csv"
        args.out.mkdir(parents=True, exist_ok=True)
        target.write_text("\n".join(lines) + "\n")
        written.append(target)

    print(f"wrote {', '.join(str(p) for p in written)}")
    if getattr(args, "oracle_check", False):
        if not isinstance(sig, (detector.Vacuum, detector.Coherent)):
            raise ConfigError("--oracle-check supports vacuum/coherent only")
        print(_oracle_table(system, sig, grid))
    return 0


def _cmd_oracle(args) -> int:
    fp = presets.FIGURES[args.preset]
    system = fp.system()
    sig = detector.Coherent(nbar=args.nbar) if args.nbar > 0 else detector.Vacuum()
    grid = fp.probe_grid_default(args.points)
    respond = detector.response_function(system, sig)
    lines = ["omega_p_hz  analytic_re  analytic_im  oracle_re  oracle_im  rel_dev"]
    for wp in grid:
        analytic = respond(wp, system.qubits[0])
        orc = oracle.lindblad_steady_response(system, sig, wp,
                                              n_fock=args.n_fock)
        dev = abs(orc.sigma_minus - analytic)/max(abs(analytic), 1e-300)
        lines.append(f"{wp/TWO_PI:.6e}  {analytic.real:+.6e}  "
                     f"{analytic.imag:+.6e}  {orc.sigma_minus.real:+.6e}  "
                     f"{orc.sigma_minus.imag:+.6e}  {dev:.3e}")
    text = "\n".join(lines)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out/"oracle_check.txt").write_text(text + "\n")
    print(text)
    return 0


def run_cli(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "waveguide":
            return _cmd_waveguide(args)
        if args.command == "cavity":
            return _cmd_cavity(args)
        if args.command == "atom":
            return _cmd_atom(args)
        if args.command == "detect":
            return _cmd_spectrum(args, "full")
        if args.command == "comb":
            return _cmd_spectrum(args, "comb")
        if args.command == "figure":
            return _cmd_spectrum(args, "full")
        if args.command == "oracle":
            return _cmd_oracle(args)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, ArithmeticError, np.linalg.LinAlgError,
            ValueError, TypeError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 4


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
