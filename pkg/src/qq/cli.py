"""Command-line front end: one subcommand per computation, CSV out.

Every table starts with a '#' line recording the subcommand, its parameters
and the seed, followed by a header row. Exit codes: 0 success, 1 numeric
failure (or a failed acceptance check), 2 bad arguments or unwritable output.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import __version__, angular, approx, bell, composite, dirac, dynamics, hydrogen, lattice, oscillator
from . import perturbation, qubit, rg, verify
from .constants import DEFAULT_SEED

SEED_ENV = "QQ_SEED"


class UsageError(Exception):
    """Bad arguments detected after parsing."""


@dataclass
class Table:
    columns: list[str]
    rows: list[tuple] = field(default_factory=list)

    def add(self, *values) -> None:
        if len(values) != len(self.columns):
            raise RuntimeError(f"row has {len(values)} fields, header has {len(self.columns)}")
        self.rows.append(values)


def _cell(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, Fraction):
        v = float(v)
    x = float(v)
    if not math.isfinite(x):
        raise FloatingPointError("non-finite value in output")
    return repr(x)


def render(table: Table, meta: str, delimiter: str = ",") -> str:
    buf = io.StringIO()
    buf.write(meta + "\n")
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env is None or env.strip() == "":
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError as exc:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from exc


# ---------------------------------------------------------------- argument helpers


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number or fraction: {text!r}") from exc


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _grid(lo: float, hi: float, n: int) -> np.ndarray:
    return np.linspace(lo, hi, n)


Command = Callable[[argparse.Namespace], Table]
COMMANDS: dict[str, tuple[Callable[[argparse.ArgumentParser], None], Command, str]] = {}


def command(name: str, help_text: str, configure: Callable[[argparse.ArgumentParser], None] | None = None):
    def wrap(fn: Command) -> Command:
        COMMANDS[name] = (configure or (lambda p: None), fn, help_text)
        return fn

    return wrap


# ---------------------------------------------------------------- single qubits


def _cfg_bloch(p):
    p.add_argument("--theta", type=float, help="polar angle; omit for the six cube states")
    p.add_argument("--phi", type=float, default=0.0)


@command("bloch", "Bloch vectors of the cube states or of one (theta, phi) state", _cfg_bloch)
def _bloch(a) -> Table:
    t = Table(["label", "re_alpha", "im_alpha", "re_beta", "im_beta", "x", "y", "z"])
    if a.theta is None:
        states = [(lab, qubit.cube(lab)) for lab in qubit.CUBE_LABELS]
    else:
        states = [("custom", qubit.QubitState.from_angles(a.theta, a.phi))]
    for lab, s in states:
        x, y, z = qubit.state_bloch(s)
        t.add(lab, s.alpha.real, s.alpha.imag, s.beta.real, s.beta.imag, x, y, z)
    return t


@command("basis-tables", "Basis-change matrices between the x, y and z bases")
def _basis_tables(a) -> Table:
    t = Table(["table", "row", "col", "re", "im"])
    for key in ("xz", "yz", "yx"):
        u = qubit.basis_change(key)
        for i in range(2):
            for j in range(2):
                t.add(key, i, j, u[i, j].real, u[i, j].imag)
    return t


# ---------------------------------------------------------------- composite systems


@command("bell-states", "Amplitudes, concurrence and entanglement entropy of the Bell states")
def _bell_states(a) -> Table:
    t = Table(["name", "ket", "re", "im", "concurrence", "entropy_bits"])
    for name in composite.BELL_NAMES:
        psi = composite.bell_state(name)
        c = composite.pure_concurrence(psi)
        s = composite.entanglement_entropy(psi)
        for idx, amp in enumerate(psi):
            t.add(name, composite.bits_of(idx, 2), amp.real, amp.imag, c, s)
    return t


def _cfg_ptrace(p):
    p.add_argument("--state", default="worked", help="worked (printed 4x4 example) or a Bell/GHZ/W name")
    p.add_argument("--keep", type=int, nargs="+", default=[1])
    p.add_argument("--method", choices=("index", "projection", "block"), default="index")


@command("partial-trace", "Reduced density matrix of a named state", _cfg_ptrace)
def _partial_trace(a) -> Table:
    if a.state == "worked":
        rho = verify.WORKED_RHO_AB
    else:
        try:
            rho = composite.density(composite.named_state(a.state))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    red = composite.partial_trace(rho, tuple(a.keep), a.method)
    t = Table(["row", "col", "re", "im"])
    for i in range(red.shape[0]):
        for j in range(red.shape[1]):
            t.add(i, j, red[i, j].real, red[i, j].imag)
    return t


# ---------------------------------------------------------------- lattice and dynamics


def _cfg_dispersion(p):
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--spacing", type=float, default=1.0)
    p.add_argument("--points", type=_positive_int, default=101)


@command("dispersion", "Tight-binding band and its quadratic continuum limit", _cfg_dispersion)
def _dispersion(a) -> Table:
    t = Table(["k", "E_lattice", "E_continuum"])
    m = lattice.effective_mass(a.delta, a.spacing)
    for k in _grid(-math.pi / a.spacing, math.pi / a.spacing, a.points):
        t.add(k, lattice.dispersion_1d(k * a.spacing, a.delta), -2 * a.delta + k * k / (2 * m))
    return t


def _cfg_ring(p):
    p.add_argument("--n-sites", type=int, default=3)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--points", type=_positive_int, default=101)
    p.add_argument("--j", type=int, default=1, help="final site (1-based)")
    p.add_argument("--k", type=int, default=1, help="initial site (1-based)")


@command("ring-propagator", "Single-particle amplitude <j|U(t)|k> on a ring", _cfg_ring)
def _ring(a) -> Table:
    n = a.n_sites
    if n < 3 or not (1 <= a.j <= n and 1 <= a.k <= n):
        raise UsageError("need n-sites >= 3 and 1 <= j, k <= n-sites")
    h = lattice.single_particle_hamiltonian(n, a.delta, "periodic")
    cols = ["t", "re_U", "im_U", "probability"]
    if n == 3:
        cols += ["re_closed", "im_closed"]
    t = Table(cols)
    for time in _grid(0, a.t_max, a.points):
        u = dynamics.propagator(h, time)[a.j - 1, a.k - 1]
        row = [time, u.real, u.imag, abs(u) ** 2]
        if n == 3:
            c = (np.exp(2j * a.delta * time) + 2 * np.exp(-1j * a.delta * time) * math.cos(2 * math.pi * (a.j - a.k) / 3)) / 3
            row += [c.real, c.imag]
        t.add(*row)
    return t


def _cfg_rabi(p):
    p.add_argument("--omega", type=float, default=1.0, help="Rabi frequency")
    p.add_argument("--detuning", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=20.0)
    p.add_argument("--points", type=_positive_int, default=201)


@command("rabi", "Excited-state probability: closed form vs rotating-frame evolution", _cfg_rabi)
def _rabi(a) -> Table:
    ts = _grid(0, a.t_max, a.points)
    exact = np.atleast_1d(dynamics.rabi_excited_prob(a.omega, a.detuning, ts))
    evolved = dynamics.rabi_evolve_prob(a.omega, a.detuning, ts)
    t = Table(["t", "P_closed", "P_evolved"])
    for row in zip(ts, exact, evolved):
        t.add(*row)
    return t


def _cfg_berry(p):
    p.add_argument("--alpha", type=float, nargs="*", help="cone half-angles; default 12 values in (0, pi)")
    p.add_argument("--path-points", type=_positive_int, default=10_000)


@command("berry", "Berry phase of latitude loops vs -Omega/2", _cfg_berry)
def _berry(a) -> Table:
    alphas = a.alpha if a.alpha else list(_grid(0, math.pi, 14)[1:-1])
    t = Table(["alpha", "berry_phase", "minus_half_solid_angle"])
    for al in alphas:
        got = dynamics.berry_phase(dynamics.latitude_loop(al, a.path_points))
        t.add(al, got, dynamics.wrap_phase(-math.pi * (1 - math.cos(al))))
    return t


# ---------------------------------------------------------------- oscillator


def _cfg_coherent(p):
    p.add_argument("--alpha", type=_complex, default=complex(2.0))
    p.add_argument("--n-max", type=int, default=64)


@command("coherent", "Photon-number distribution of a coherent state", _cfg_coherent)
def _coherent(a) -> Table:
    space = oscillator.FockSpace(a.n_max)
    state = oscillator.coherent(space, a.alpha)
    mean = abs(a.alpha) ** 2
    t = Table(["n", "probability", "poisson"])
    for n, amp in enumerate(state.amplitudes):
        poisson = math.exp(-mean + n * math.log(mean) - math.lgamma(n + 1)) if mean > 0 else float(n == 0)
        t.add(n, abs(amp) ** 2, poisson)
    return t


def _cfg_squeeze(p):
    p.add_argument("--r-max", type=float, default=0.8)
    p.add_argument("--points", type=_positive_int, default=9)
    p.add_argument("--n-max", type=int, default=64)


@command("squeeze", "Quadrature variances of squeezed vacua", _cfg_squeeze)
def _squeeze(a) -> Table:
    space = oscillator.FockSpace(a.n_max)
    t = Table(["r", "var_x", "var_p", "product", "var_x_exact", "var_p_exact"])
    for r in _grid(0, a.r_max, a.points):
        vx, vp = oscillator.quadrature_variances(space, oscillator.squeezed_vacuum(space, r))
        ex, ep = oscillator.squeezed_variances(space, r)
        t.add(r, vx, vp, vx * vp, ex, ep)
    return t


# ---------------------------------------------------------------- angular momentum


def _cfg_cg(p):
    p.add_argument("--j1", type=_fraction, default=Fraction(1))
    p.add_argument("--j2", type=_fraction, default=Fraction(1, 2))


@command("cg-table", "Clebsch-Gordan coefficients <j1 m1; j2 m2 | j m>", _cfg_cg)
def _cg(a) -> Table:
    t = Table(["j", "m", "m1", "m2", "coefficient"])
    for j, m, m1, m2, val in angular.clebsch_gordan(a.j1, a.j2).entries():
        t.add(j, m, m1, m2, val)
    return t


def _cfg_wigner(p):
    p.add_argument("--j", type=_fraction, default=Fraction(1))
    p.add_argument("--beta", type=float, default=math.pi / 2)


@command("wigner-d", "Wigner small-d matrix d^j_{m'm}(beta)", _cfg_wigner)
def _wigner(a) -> Table:
    d = angular.wigner_d(a.j, a.beta)
    ms = angular.m_values(a.j)
    t = Table(["m_prime", "m", "d"])
    for i, mp in enumerate(ms):
        for k, m in enumerate(ms):
            t.add(mp, m, d[i, k])
    return t


# ---------------------------------------------------------------- hydrogen and approximations


def _cfg_hydrogen(p):
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--z", type=int, default=1)


@command("hydrogen", "Hydrogen-like levels, <r>, most probable radius and virial check", _cfg_hydrogen)
def _hydrogen(a) -> Table:
    if a.n_max < 1 or a.z < 1:
        raise UsageError("need n-max >= 1 and z >= 1")
    t = Table(["n", "l", "energy", "energy_ev", "r_mean", "r_mean_closed", "r_most_probable", "V_over_E"])
    for n in range(1, a.n_max + 1):
        for l in range(n):
            e = hydrogen.energy(n, a.z)
            t.add(
                n, l, e, hydrogen.energy_ev(n, a.z),
                hydrogen.hydrogen_expectation(n, l, a.z, 1), hydrogen.expectation_closed_form(n, l, a.z, 1),
                hydrogen.most_probable_radius(n, l, a.z), hydrogen.potential_expectation(n, l, a.z) / e,
            )
    return t


def _cfg_stark(p):
    p.add_argument("--field", type=float, default=1e-3)


@command("stark", "Linear Stark splitting of the hydrogen n = 2 level", _cfg_stark)
def _stark(a) -> Table:
    res = perturbation.pt_degenerate(perturbation.stark_n2(a.field), range(4))
    exact = np.linalg.eigvalsh(hydrogen.energy(2) * np.eye(4) + a.field * hydrogen.n2_dipole_matrix()) - hydrogen.energy(2)
    t = Table(["level", "correction", "exact_shift", "correction_over_field"])
    for i, (c, e) in enumerate(zip(res.corrections, exact)):
        t.add(i, c, e, c / a.field if a.field else 0.0)
    return t


def _cfg_variational(p):
    p.add_argument("--model", choices=("helium", "gaussian"), default="helium")


@command("variational", "Variational optimum for helium or the Gaussian oscillator trial", _cfg_variational)
def _variational(a) -> Table:
    t = Table(["model", "parameter", "energy_hartree", "energy_ev"])
    if a.model == "helium":
        r, ev = approx.helium_variational()
        t.add("helium", r.x, r.energy, ev)
    else:
        r = approx.variational_minimize(approx.gaussian_trial_energy, (1e-3, 10.0), grad=approx.gaussian_trial_grad)
        t.add("gaussian", r.x, r.energy, r.energy * 27.211386)
    return t


def _cfg_sudden(p):
    p.add_argument("--kind", choices=("ho_freq_change", "hydrogenic_Z_change"), default="ho_freq_change")
    p.add_argument("--a", type=float, default=1.0, help="initial frequency or charge")
    p.add_argument("--b", type=float, default=2.0, help="final frequency or charge")
    p.add_argument("--dim", type=int, default=1)


@command("sudden", "Probability of remaining in the ground state after a sudden change", _cfg_sudden)
def _sudden(a) -> Table:
    if a.a <= 0 or a.b <= 0 or a.dim < 1:
        raise UsageError("parameters must be positive")
    t = Table(["kind", "a", "b", "dim", "probability"])
    t.add(a.kind, a.a, a.b, a.dim, approx.sudden_overlap(a.kind, a.a, a.b, a.dim))
    return t


def _cfg_wkb(p):
    p.add_argument("--potential", choices=("harmonic", "abs"), default="abs")
    p.add_argument("--count", type=_positive_int, default=6)
    p.add_argument("--mass", type=float, default=1.0)


@command("wkb", "WKB levels against exact or finite-difference references", _cfg_wkb)
def _wkb(a) -> Table:
    if a.potential == "harmonic":
        pot = lambda x: 0.5 * x * x  # noqa: E731
        ref = (np.arange(a.count) + 0.5) / a.mass**0.5
    else:
        pot = abs
        ref = approx.fd_levels(pot, a.mass, a.count)
    wkb = approx.wkb_levels(pot, a.mass, a.count)
    t = Table(["n", "E_wkb", "E_reference", "rel_error"])
    for n, (w, r) in enumerate(zip(wkb, ref)):
        t.add(n, w, r, abs(w - r) / abs(r))
    return t


# ---------------------------------------------------------------- Bell


def _cfg_mc(p):
    p.add_argument("--theta-grid", type=_positive_int, default=16)
    p.add_argument("--samples", type=_positive_int, default=1_000_000)
    p.add_argument("--workers", type=_positive_int, default=1)


@command("chsh", "Singlet correlation vs the sphere-sign hidden-variable model", _cfg_mc)
def _chsh(a) -> Table:
    model = bell.LHVModel("sphere_sign", seed=a.seed)
    singlet = composite.bell_state("psi-")
    t = Table(["theta", "E_quantum", "E_lhv", "stderr"])
    for th in _grid(0, math.pi, a.theta_grid):
        b = bell.axis_in_xz(th)
        est = bell.lhv_correlation(model, bell.Z_HAT, b, a.samples, a.workers)
        t.add(th, bell.quantum_correlation(singlet, bell.Z_HAT, b), est.mean, est.stderr)
    return t


@command("lhv-curve", "Monte Carlo hidden-variable correlation against the straight line", _cfg_mc)
def _lhv_curve(a) -> Table:
    model = bell.LHVModel("sphere_sign", seed=a.seed)
    t = Table(["theta", "E_mc", "stderr", "E_line", "E_quantum"])
    for th in _grid(0, math.pi, a.theta_grid):
        est = bell.lhv_correlation(model, bell.Z_HAT, bell.axis_in_xz(th), a.samples, a.workers)
        t.add(th, est.mean, est.stderr, float(bell.lhv_line(th)), float(bell.singlet_correlation(th)))
    return t


@command("ghz", "GHZ parities and Mermin sums")
def _ghz(a) -> Table:
    t = Table(["quantity", "value"])
    for w in ("XYY", "YXY", "YYX", "XXX"):
        t.add(f"parity {w}", bell.ghz_parity(w))
    t.add("Mermin XY on GHZ+", bell.mermin(composite.ghz(3), bell.MERMIN_XY))
    t.add("Mermin ZX on GHZ+", bell.mermin(composite.ghz(3), bell.MERMIN_ZX))
    t.add("Mermin local bound", bell.mermin_lhv_max())
    return t


# ---------------------------------------------------------------- Dirac


def _cfg_dirac(p):
    p.add_argument("--m", type=float, default=0.5)
    p.add_argument("--points", type=_positive_int, default=101)


@command("dirac-dispersion", "Lattice Dirac bands +-sqrt(sin^2 k + m^2)", _cfg_dirac)
def _dirac(a) -> Table:
    t = Table(["k", "E_plus", "E_minus"])
    for k in _grid(-math.pi, math.pi, a.points):
        w = np.linalg.eigvalsh(dirac.bloch_hamiltonian(k, a.m))
        t.add(k, w[1], w[0])
    return t


@command("clifford", "Clifford-algebra and spin-conservation residuals")
def _clifford(a) -> Table:
    t = Table(["check", "residual"])
    t.add("clifford 1+1", dirac.clifford_verify(dirac.gamma_set("1+1")))
    t.add("clifford 3+1", dirac.clifford_verify(dirac.gamma_set("3+1")))
    g5 = dirac.gamma5()
    t.add("gamma5^2 - I", float(np.max(np.abs(g5 @ g5 - np.eye(4)))))
    t.add("{gamma5, gamma^mu}", max(float(np.max(np.abs(g5 @ g + g @ g5))) for g in dirac.gamma_set().gammas))
    sc = dirac.spin_conservation_check(0.7, -0.4)
    t.add("[H, S_z] + [H, L_z]", sc.total)
    t.add("2 pi rotation + I", float(np.max(np.abs(dirac.spinor_rotation(2 * math.pi) + np.eye(4)))))
    return t


# ---------------------------------------------------------------- renormalization group


def _cfg_rg_flow(p):
    p.add_argument("--k0", type=float, default=2.0)
    p.add_argument("--steps", type=_positive_int, default=12)


@command("rg-flow", "1D Ising decimation flow K -> (1/2) ln cosh 2K", _cfg_rg_flow)
def _rg_flow(a) -> Table:
    if a.k0 < 0:
        raise UsageError("k0 must be >= 0")
    flow = rg.decimation_flow(a.k0, a.steps)
    t = Table(["step", "K"])
    for s, k in zip(flow.steps, flow.values):
        t.add(int(s), k)
    return t


@command("duality-tc", "Kramers-Wannier self-dual coupling and critical temperature")
def _duality(a) -> Table:
    kc, tc = rg.kramers_wannier_tc()
    t = Table(["K_c", "T_c_over_J", "sinh_2K_c"])
    t.add(kc, tc, math.sinh(2 * kc))
    return t


def _cfg_scaling(p):
    p.add_argument("--d", type=_fraction, default=Fraction(2))
    p.add_argument("--yt", type=_fraction, default=Fraction(1))
    p.add_argument("--yh", type=_fraction, default=Fraction(15, 8))


@command("scaling-exponents", "Critical exponents from (d, y_t, y_h)", _cfg_scaling)
def _scaling(a) -> Table:
    try:
        ex = rg.scaling_exponents(a.d, a.yt, a.yh)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if ex.d == ex.y_h:
        raise UsageError("d = y_h makes delta infinite")
    t = Table(["exponent", "value", "exact"])
    for k, v in ex.as_dict().items():
        t.add(k, v, str(v))
    return t


def _cfg_tfim(p):
    p.add_argument("--j", type=float, default=1.0)
    p.add_argument("--h-min", type=float, default=0.0)
    p.add_argument("--h-max", type=float, default=2.0)
    p.add_argument("--points", type=_positive_int, default=201)
    p.add_argument("--numeric-n", type=int, default=0, help="also diagonalize an open chain of this many sites")


@command("tfim-gap", "Transverse-field Ising gap 2|J - h|", _cfg_tfim)
def _tfim(a) -> Table:
    if a.numeric_n and not 2 <= a.numeric_n <= 10:
        raise UsageError("numeric-n must be between 2 and 10")
    cols = ["h", "gap"] + (["gap_numeric"] if a.numeric_n else [])
    t = Table(cols)
    for h in _grid(a.h_min, a.h_max, a.points):
        row = [h, rg.tfim_gap(a.j, h)]
        if a.numeric_n:
            row.append(rg.tfim_numeric_gap(a.numeric_n, a.j, h))
        t.add(*row)
    return t


def _cfg_imag(p):
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--h", type=float, default=1.0)
    p.add_argument("--slices", type=_positive_int, nargs="+", default=[1, 4, 16, 64, 256])
    p.add_argument("--slicing", choices=("linear", "exact"), default="linear")


@command("qubit-imaginary-time", "Single-qubit partition function from a classical chain", _cfg_imag)
def _imag(a) -> Table:
    t = Table(["slices", "Z_chain", "Z_exact", "rel_error", "K"])
    for n in a.slices:
        r = rg.qubit_imaginary_time(a.beta, a.h, n, a.slicing)
        t.add(n, r.z_chain, r.z_exact, r.rel_error, r.K if math.isfinite(r.K) else 0.0)
    return t


def _cfg_wf(p):
    p.add_argument("--g0", type=float, default=0.05)
    p.add_argument("--eps", type=float, default=1.0)
    p.add_argument("--l-max", type=float, default=20.0)
    p.add_argument("--n-components", type=_positive_int, default=1)
    p.add_argument("--every", type=_positive_int, default=100, help="keep every k-th RK4 step")


@command("wf-flow", "One-loop Wilson-Fisher flow dg/dl = eps g - (N+8)/3 g^2", _cfg_wf)
def _wf(a) -> Table:
    if a.g0 < 0 or a.l_max <= 0:
        raise UsageError("need g0 >= 0 and l-max > 0")
    flow = rg.wf_flow(a.g0, a.eps, a.l_max, a.n_components)
    t = Table(["l", "g"])
    for l, g in zip(flow.ell[:: a.every], flow.g[:: a.every]):
        t.add(l, g)
    return t


# ---------------------------------------------------------------- parser and driver


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qq", description="Numerical companion for introductory quantum mechanics.")
    parser.add_argument("--version", action="version", version=f"qq {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for name, (configure, _, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        configure(p)
        _add_common(p)
    v = sub.add_parser("verify-all", help="Run the acceptance suite", description="Run the acceptance suite")
    v.add_argument("--only", help="restrict to one chapter tag, e.g. ch12")
    v.add_argument("--workers", type=_positive_int, default=1)
    _add_common(v)
    return parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", help="output path (default: stdout)")
    p.add_argument("--seed", type=int, default=None, help=f"random seed (default ${SEED_ENV} or {DEFAULT_SEED})")
    p.add_argument("--format", choices=("csv", "tsv"), default="csv")


def _meta(args: argparse.Namespace) -> str:
    skip = {"command", "output", "format"}
    params = " ".join(f"{k}={_meta_value(v)}" for k, v in sorted(vars(args).items()) if k not in skip)
    return f"# qq {args.command} {params}".rstrip()


def _meta_value(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(_meta_value(x) for x in v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _open_output(path: str | None):
    if path is None:
        return None
    try:
        return open(path, "w", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror or exc}") from exc


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    try:
        args.seed = resolve_seed(args.seed)
        handle = _open_output(args.output)
    except UsageError as exc:
        print(f"qq: error: {exc}", file=sys.stderr)
        return 2
    try:
        try:
            if args.command == "verify-all":
                report = verify.verify_all(args.only, seed=args.seed, workers=args.workers)
                text = _meta(args) + "\n" + report.table()
                status = 0 if report.all_passed else 1
            else:
                table = COMMANDS[args.command][1](args)
                text = render(table, _meta(args), "\t" if args.format == "tsv" else ",")
                status = 0
        except UsageError as exc:
            print(f"qq: error: {exc}", file=sys.stderr)
            return 2
        except ValueError as exc:
            # parameter validation inside the library
            print(f"qq: invalid parameters: {exc}", file=sys.stderr)
            return 2
        except (ArithmeticError, RuntimeError, np.linalg.LinAlgError) as exc:
            print(f"qq: numeric failure: {exc}", file=sys.stderr)
            return 1
        if handle is None:
            sys.stdout.write(text)
        else:
            handle.write(text)
        return status
    finally:
        if handle is not None:
            handle.close()


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
