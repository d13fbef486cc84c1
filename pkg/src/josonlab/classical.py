"""Mean-field limit: amplitude dynamics and semiclassical joson numbers.

Replacing the four mode operators by c-numbers a_{sigma,alpha} gives
Hamiltonian flow with three degrees of freedom at conserved norm
sum |a|^2 = N.  In rescaled time (units 1/Omega) the equations read

    i da_{s,a}/dt = -(1/2) a_{-s,a} + (u/N) |a_{s,a}|^2 a_{s,a} - (w/2) a_{s,abar}

One dimer with n_alpha particles reduces to a pendulum on the Bloch
sphere, H/Omega = -(n/2) sqrt(1-z^2) cos(phi) + (u_alpha n/4) z^2 with
z the intra-dimer population imbalance and phi the relative phase.  The
number of Josephson excitations (josons) j_alpha of the dimer is the
phase-space area enclosed by its energy contour in units of the
effective Planck constant h = 4 pi / n_alpha.  For u_alpha <= 1 the
contours are elliptic and the area has a closed form in terms of the
three complete elliptic integrals with complex arguments; the brute
force area integral serves as an independent cross-check and as the
only path for u_alpha > 1.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.optimize import brentq

from .elliptic import ellip_e, ellip_k, ellip_pi
from .errors import NumericsError

# mode order (L+, L-, R+, R-); index maps for the two swap couplings
_SWAP_PM = np.array([1, 0, 3, 2])
_SWAP_LR = np.array([2, 3, 0, 1])


def mean_field_rhs(t, amps, params):
    """Time derivative of the four complex mode amplitudes (rescaled units)."""
    rhs = (
        -0.5 * amps[_SWAP_PM]
        + (params.u / params.N) * np.abs(amps) ** 2 * amps
        - 0.5 * params.w * amps[_SWAP_LR]
    )
    return -1j * rhs


def classical_energy(amps, params):
    """Mean-field energy in units of Omega."""
    intra = -np.real(amps[0].conjugate() * amps[1] + amps[2].conjugate() * amps[3])
    quart = 0.5 * params.u / params.N * np.sum(np.abs(amps) ** 4)
    inter = -params.w * np.real(
        amps[0].conjugate() * amps[2] + amps[1].conjugate() * amps[3]
    )
    return float(intra + quart + inter)


def dimer_contour_energy(a_plus, a_minus, u_over_N):
    """Single-dimer energy entering the action map (units of Omega).

    Measured from the n_alpha^2-dependent interaction offset so that for
    u_alpha <= 1 the range is exactly [-n_alpha/2, +n_alpha/2]:
    E = -Re(a+* a-) + (u/N)(|a+|^2 - |a-|^2)^2 / 4.
    """
    z_num = abs(a_plus) ** 2 - abs(a_minus) ** 2
    return float(-np.real(a_plus.conjugate() * a_minus) + 0.25 * u_over_N * z_num ** 2)


@dataclass
class Trajectory:
    """Sampled mean-field trajectory with conservation diagnostics."""

    t: np.ndarray
    amps: np.ndarray  # (n_samples, 4) complex
    params: object
    norm_drift: float
    energy_drift: float
    rtol: float
    atol: float

    @property
    def norms(self):
        return np.sum(np.abs(self.amps) ** 2, axis=1)

    @property
    def energies(self):
        return np.array([classical_energy(a, self.params) for a in self.amps])


def integrate(initial, params, t_max, tolerance=1e-8, n_samples=2001,
              rtol=None, atol=None):
    """Integrate the amplitude equations on a uniform output grid.

    Adaptive 8th-order stepping; norm and energy drift are monitored (never
    silently corrected) and the run fails if the relative drift exceeds
    ``tolerance``.
    """
    y0 = np.asarray(initial, dtype=complex)
    if y0.shape != (4,):
        raise ValueError(f"initial state must be 4 complex amplitudes, got shape {y0.shape}")
    if rtol is None:
        rtol = max(min(1e-12, tolerance * 1e-3), 3e-14)
    if atol is None:
        atol = rtol
    t_eval = np.linspace(0.0, t_max, n_samples)
    sol = solve_ivp(
        mean_field_rhs, (0.0, t_max), y0, method="DOP853",
        t_eval=t_eval, rtol=rtol, atol=atol, args=(params,),
    )
    if not sol.success:
        raise NumericsError(f"integrator failed: {sol.message}")
    amps = sol.y.T
    norms = np.sum(np.abs(amps) ** 2, axis=1)
    N0 = norms[0]
    norm_drift = float(np.max(np.abs(norms - N0)) / N0)
    E = np.array([classical_energy(a, params) for a in amps])
    scale = max(abs(E[0]), 1.0)
    energy_drift = float(np.max(np.abs(E - E[0])) / scale)
    traj = Trajectory(
        t=t_eval, amps=amps, params=params,
        norm_drift=norm_drift, energy_drift=energy_drift,
        rtol=rtol, atol=atol,
    )
    if norm_drift > tolerance or energy_drift > tolerance:
        raise NumericsError(
            f"conservation target {tolerance:g} unreachable: "
            f"norm drift {norm_drift:.3g}, energy drift {energy_drift:.3g}"
        )
    return traj


# ---------------------------------------------------------------------------
# semiclassical action

def classical_energy_range(n_alpha, u_alpha):
    """(E_min, E_max) of the dimer pendulum in units of Omega."""
    E_min = -0.5 * n_alpha
    if u_alpha <= 1.0:
        E_max = 0.5 * n_alpha
    else:
        E_max = 0.25 * n_alpha * (u_alpha + 1.0 / u_alpha)
    return E_min, E_max


def _action_fraction_closed(eta, u):
    """Filled-contour fraction j/n from the closed elliptic-integral form."""
    e_p = np.exp(1j * eta)
    e_m = np.exp(-1j * eta)
    A = 1 + 1j * e_p * u
    B = 1 - 1j * e_m * u
    sqrtA = np.sqrt(A)
    m1 = B / A
    m2 = 2j * u * np.cos(eta) / A  # = 1 - m1
    nc = 1j * e_m * u
    term_k = 2 * np.cos(eta) * ellip_k(m1) / sqrtA
    term_e = (2j / u) * sqrtA * ellip_e(m1)
    term_pi = 1j * e_p * B * ellip_pi(nc, m2) / sqrtA
    return 0.5 - np.real(term_k + term_e + term_pi) / np.pi


def semiclassical_action(E, n_alpha, u_alpha, Omega=1.0):
    """Joson number j(E) of one dimer from the closed-form contour area.

    Valid for u_alpha <= 1 (elliptic contours).  The u_alpha -> 0 limit
    j = n (1 + sin eta)/2 is used below u_alpha = 1e-12; u_alpha > 1
    raises and points to the quadrature oracle.
    """
    if n_alpha <= 0:
        raise ValueError(f"n_alpha must be positive, got {n_alpha}")
    if u_alpha < 0:
        raise ValueError(f"u_alpha must be non-negative, got {u_alpha}")
    if u_alpha > 1.0:
        raise ValueError(
            f"closed form requires u_alpha <= 1 (got {u_alpha}); "
            "use action_oracle for self-trapped contours"
        )
    x = 2.0 * E / (Omega * n_alpha)
    if abs(x) > 1 + 1e-12:
        raise ValueError(f"energy outside the classical range: 2E/(Omega n) = {x:g}")
    eta = np.arcsin(np.clip(x, -1.0, 1.0))
    if u_alpha < 1e-12:
        return n_alpha * 0.5 * (1.0 + np.sin(eta))
    half_pi = 0.5 * np.pi
    if half_pi - abs(eta) < 1e-12:
        return 0.0 if eta < 0 else float(n_alpha)
    frac = _action_fraction_closed(eta, u_alpha)
    return float(n_alpha * min(max(frac, 0.0), 1.0))


def _phase_measure_factory(u, eps):
    """phi-measure of {H < E} at fixed z for the scaled pendulum."""
    def g(z):
        return ((0.5 * u) * z * z - 2.0 * eps) / np.sqrt(1.0 - z * z)

    def measure(z):
        if abs(z) >= 1.0:
            return 0.0
        gz = g(z)
        if gz <= -1.0:
            return 2.0 * np.pi
        if gz >= 1.0:
            return 0.0
        return 2.0 * np.arccos(gz)

    return g, measure


def action_oracle(E, n_alpha, u_alpha, Omega=1.0):
    """Brute-force joson number: quadrature of the enclosed phase-space area.

    Integrates the angular measure of {(z, phi): H(z, phi) < E} over z and
    divides by the effective Planck constant 4 pi / n_alpha.  Independent of
    the closed form; works for any u_alpha >= 0.
    """
    if n_alpha <= 0:
        raise ValueError(f"n_alpha must be positive, got {n_alpha}")
    E_min, E_max = classical_energy_range(n_alpha, u_alpha)
    E_min, E_max = E_min * Omega, E_max * Omega
    pad = 1e-12 * n_alpha * Omega
    if E < E_min - pad or E > E_max + pad:
        raise ValueError(f"E={E:g} outside classical range [{E_min:g}, {E_max:g}]")
    E = min(max(E, E_min), E_max)
    eps = E / (Omega * n_alpha)

    g, measure = _phase_measure_factory(u_alpha, eps)
    zs = np.linspace(-1 + 1e-12, 1 - 1e-12, 4001)
    gv = np.array([g(z) for z in zs])
    breaks = []
    for target in (1.0, -1.0):
        sign = np.sign(gv - target)
        for i in np.flatnonzero(sign[:-1] * sign[1:] < 0):
            breaks.append(brentq(lambda z: g(z) - target, zs[i], zs[i + 1], xtol=1e-14))
    breaks = sorted(b for b in breaks if -1 < b < 1)
    area, _ = quad(measure, -1.0, 1.0, points=breaks or None,
                   limit=400, epsabs=1e-11, epsrel=1e-11)
    return float(n_alpha * area / (4.0 * np.pi))


def invert_action(j_target, n_alpha, u_alpha, Omega=1.0, tol=1e-8):
    """Energy at which the dimer holds j_target josons (monotone inversion)."""
    if not 0.0 <= j_target <= n_alpha + 1e-12:
        raise ValueError(f"j_target={j_target:g} outside [0, {n_alpha:g}]")
    action = semiclassical_action if u_alpha <= 1.0 else action_oracle
    E_min, E_max = classical_energy_range(n_alpha, u_alpha)
    E_min, E_max = E_min * Omega, E_max * Omega
    if j_target <= tol:
        return E_min
    if j_target >= n_alpha - tol:
        return E_max
    span = E_max - E_min
    f = lambda E: action(E, n_alpha, u_alpha, Omega) - j_target
    E_star = brentq(f, E_min + 1e-13 * span, E_max - 1e-13 * span,
                    xtol=1e-13 * span, rtol=8.9e-16)
    if abs(f(E_star)) > tol:
        raise NumericsError(
            f"action inversion missed target by {abs(f(E_star)):g} (tol {tol:g})"
        )
    return float(E_star)


# ---------------------------------------------------------------------------
# launching trajectories from action-angle labels

def _contour_feasible_angles(n_alpha, u_alpha, E):
    """Range of intra-dimer angles phi crossed by the energy contour."""
    eps = E / n_alpha
    g, _ = _phase_measure_factory(u_alpha, eps)
    z = np.linspace(-1 + 1e-9, 1 - 1e-9, 20001)
    gv = g(z)
    lo = max(float(np.min(gv)), -1.0)
    hi = min(float(np.max(gv)), 1.0)
    if lo > 1.0 or hi < -1.0:
        return None
    return np.arccos(hi), np.arccos(lo)  # phi in [arccos(hi), arccos(lo)]


def _solve_contour_z(n_alpha, u_alpha, E, phi):
    """Non-negative z on the contour H(z, phi) = E, or None."""
    def f(z):
        return (-0.5 * n_alpha * np.sqrt(max(1.0 - z * z, 0.0)) * np.cos(phi)
                + 0.25 * u_alpha * n_alpha * z * z - E)

    f0, f1 = f(0.0), f(1.0)
    if f0 == 0.0:
        return 0.0
    if f0 * f1 <= 0:
        return brentq(f, 0.0, 1.0, xtol=1e-14)
    return None


def init_from_actions(params, J, n, j, phi_LR=0.0, phi_intra=(0.0, 0.0)):
    """Mean-field state with prescribed particle/joson splitting.

    Builds each dimer on its energy contour at joson number
    j_alpha = (J +/- j)/2 and particle number n_alpha = (N +/- n)/2,
    placing the phase-space point at intra-dimer angle phi_intra (one value
    per dimer, non-negative z branch) and setting the global dimer phases
    so the L-R relative phase equals phi_LR.
    """
    N = params.N
    if np.isscalar(phi_intra):
        phi_intra = (float(phi_intra), float(phi_intra))
    n_split = ((N + n) / 2.0, (N - n) / 2.0)
    j_split = ((J + j) / 2.0, (J - j) / 2.0)
    amps = np.zeros(4, dtype=complex)
    for k, (n_a, j_a, phi) in enumerate(zip(n_split, j_split, phi_intra)):
        if n_a <= 0:
            raise ValueError(f"dimer {'LR'[k]} needs positive particle number, got {n_a:g}")
        if not 0.0 <= j_a <= n_a:
            raise ValueError(
                f"dimer {'LR'[k]} joson number {j_a:g} outside [0, {n_a:g}]"
            )
        u_a = params.u * n_a / N
        E_a = invert_action(j_a, n_a, u_a, Omega=1.0)
        z = _solve_contour_z(n_a, u_a, E_a, phi)
        if z is None:
            feas = _contour_feasible_angles(n_a, u_a, E_a)
            msg = (
                f"energy contour of dimer {'LR'[k]} (E={E_a:g}) does not cross "
                f"intra-dimer angle phi={phi:g}"
            )
            if feas is not None:
                msg += f"; feasible |phi| range: [{feas[0]:g}, {feas[1]:g}] rad"
            raise ValueError(msg)
        gamma = 0.0 if k == 0 else -phi_LR
        amps[2 * k] = np.sqrt(n_a * (1 + z) / 2.0) * np.exp(1j * (gamma + phi / 2))
        amps[2 * k + 1] = np.sqrt(n_a * (1 - z) / 2.0) * np.exp(1j * (gamma - phi / 2))

    check = state_actions(amps, params)
    worst = max(abs(check[0] - j_split[0]), abs(check[1] - j_split[1]))
    if worst > 1e-6:
        raise NumericsError(f"launch misses requested joson numbers by {worst:g}")
    return amps


def state_actions(amps, params, clamp=False):
    """(j_L, j_R) of a mean-field state; optionally clamp drifted energies."""
    out = []
    clamped = False
    for k in (0, 1):
        a_p, a_m = amps[2 * k], amps[2 * k + 1]
        n_a = abs(a_p) ** 2 + abs(a_m) ** 2
        u_a = params.u * n_a / params.N
        E_a = dimer_contour_energy(a_p, a_m, params.u / params.N)
        E_min, E_max = classical_energy_range(n_a, u_a)
        if E_a < E_min or E_a > E_max:
            if not clamp:
                raise NumericsError(
                    f"dimer energy {E_a:g} left the classical range [{E_min:g}, {E_max:g}]"
                )
            E_a = min(max(E_a, E_min), E_max)
            clamped = True
        if u_a <= 1.0:
            out.append(semiclassical_action(E_a, n_a, u_a))
        else:
            out.append(action_oracle(E_a, n_a, u_a))
    return out[0], out[1], clamped


@dataclass
class TrajectoryObservables:
    """Imbalance and joson time series derived from a trajectory."""

    t: np.ndarray
    n: np.ndarray
    j: np.ndarray
    J: np.ndarray
    E: np.ndarray
    n_L: np.ndarray
    clamped: np.ndarray = field(repr=False, default=None)


def trajectory_observables(traj):
    """Map a sampled trajectory to (n(t), j(t), J(t), E(t)).

    The instantaneous dimer energies are converted to joson numbers through
    the semiclassical action (oracle fallback for u_alpha > 1).  Samples
    whose dimer energy drifted outside the classical range are clamped to
    the boundary and flagged.
    """
    params = traj.params
    n_samples = traj.t.size
    n_t = np.empty(n_samples)
    j_t = np.empty(n_samples)
    J_t = np.empty(n_samples)
    nL_t = np.empty(n_samples)
    flags = np.zeros(n_samples, dtype=bool)
    for i, a in enumerate(traj.amps):
        n_L = abs(a[0]) ** 2 + abs(a[1]) ** 2
        n_R = abs(a[2]) ** 2 + abs(a[3]) ** 2
        j_L, j_R, clamped = state_actions(a, params, clamp=True)
        n_t[i] = n_L - n_R
        nL_t[i] = n_L
        j_t[i] = j_L - j_R
        J_t[i] = j_L + j_R
        flags[i] = clamped
    return TrajectoryObservables(
        t=traj.t, n=n_t, j=j_t, J=J_t, E=traj.energies, n_L=nL_t, clamped=flags,
    )
