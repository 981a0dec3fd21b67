"""Physical model construction.

Builds the lab-frame, modulation-rotating-frame and polaron-frame
Hamiltonians for one or two qubits longitudinally coupled to one or two
oscillator modes with a cosine-modulated coupling, computes the secular
zz interaction rates, the conditional displacement trajectory, and plans
commensurate gate schedules with their single-qubit Z corrections.

Frame conventions:

* "lab": nothing rotated; the coupling is modulated at ``omega_m``.
* "rotating": oscillator frame rotating at ``omega_m`` (transformation
  ``exp(+i omega_m t a^dag a)``), where the detuned mode sits at
  ``delta = omega_r - omega_m`` and the counter-rotating part of the
  drive oscillates at ``2 omega_m``. Exact, no approximation, unless
  ``rwa=True`` drops the ``2 omega_m`` terms.
* "polaron": conditionally displaced frame where the coupling reduces
  to a static zz rate.

Gate simulations are run with the qubit frequency terms removed. They
commute exactly with every coupling term and with the photon-loss and
dephasing channels, so dropping them is the usual co-rotating qubit
frame, not an approximation; the spec'd Hamiltonian evaluators keep the
terms and the frame-equivalence tests unwind them explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .algebra import (
    SIGMA_Z,
    AlgebraError,
    HilbertSpace,
    Operator,
    annihilation,
    embed,
    qubits_and_oscillators,
)

TWO_PI = 2.0 * math.pi


class ModelError(ValueError):
    """Invalid physical parameters or an unplannable schedule."""


class HybridizedModeResonanceError(ModelError):
    """Modulation resonant with a normal mode of the coupled oscillator pair."""


def db_to_r(power_db: float) -> float:
    """Squeezing power in dB -> squeezing parameter r, via 10*log10(e^{2r})."""
    return power_db * math.log(10.0) / 20.0


def r_to_db(r: float) -> float:
    return 10.0 * math.log10(math.exp(2.0 * r))


@dataclass(frozen=True)
class SqueezeParams:
    """Squeezed-reservoir settings.

    ``variant`` selects how the squeezing angle moves in the modulation
    rotating frame: "rotating_angle" (two-mode pump halfway between the
    oscillator and the modulation, ellipse tracks the conditional
    displacement) or "fixed_angle_filtered" (pump at the oscillator
    frequency plus an output filter suppressing loss at the modulation
    frequency; modeled at the effective level).
    """

    r: float
    variant: str = "rotating_angle"
    phi0: float = 0.0

    VARIANTS = ("rotating_angle", "fixed_angle_filtered")

    def __post_init__(self):
        if self.r < 0.0:
            raise ModelError("squeezing parameter r must be >= 0")
        if self.variant not in self.VARIANTS:
            raise ModelError(f"unknown squeezing variant {self.variant!r}")

    @property
    def power_db(self) -> float:
        return r_to_db(self.r)


@dataclass(frozen=True)
class QubitNoise:
    t1: float
    t2: float

    def __post_init__(self):
        if self.t1 <= 0.0 or self.t2 <= 0.0:
            raise ModelError("T1 and T2 must be positive")
        if self.t2 > 2.0 * self.t1 + 1e-15 * self.t1:
            raise ModelError("T2 <= 2*T1 is required for a physical qubit channel")


@dataclass(frozen=True)
class TwoOscillatorParams:
    """Two coupled readout oscillators, one per qubit."""

    omega_a: float
    omega_b: float
    g_ab: float

    def __post_init__(self):
        if self.omega_a <= 0.0 or self.omega_b <= 0.0:
            raise ModelError("oscillator frequencies must be positive")


@dataclass(frozen=True)
class SystemParams:
    """All angular frequencies and rates of the coupled system, in rad/s."""

    omega_r: float | None
    g1: float
    g2: float
    omega_m: float
    kappa: float = 0.0
    omega_a1: float = 0.0
    omega_a2: float = 0.0
    two_oscillator: TwoOscillatorParams | None = None
    qubit_noise: tuple[QubitNoise, QubitNoise] | None = None
    squeezing: SqueezeParams | None = None

    def __post_init__(self):
        if self.omega_r is None and self.two_oscillator is None:
            raise ModelError("need omega_r or two_oscillator parameters")
        if self.omega_r is not None and self.omega_r <= 0.0:
            raise ModelError("omega_r must be positive")
        if self.omega_m <= 0.0:
            raise ModelError("omega_m must be positive")
        if self.kappa < 0.0:
            raise ModelError("kappa must be >= 0")
        if self.omega_a1 < 0.0 or self.omega_a2 < 0.0:
            raise ModelError("qubit frequencies must be >= 0")
        for v in (self.g1, self.g2):
            if not math.isfinite(v):
                raise ModelError("coupling amplitudes must be finite")

    @property
    def delta(self) -> float:
        """Modulation detuning omega_r - omega_m (single-oscillator system)."""
        if self.omega_r is None:
            raise ModelError("delta is undefined without omega_r")
        return self.omega_r - self.omega_m

    @property
    def delta_a(self) -> float:
        return self._two_osc().omega_a - self.omega_m

    @property
    def delta_b(self) -> float:
        return self._two_osc().omega_b - self.omega_m

    @property
    def delta_bar(self) -> float:
        return 0.5 * (self.delta_a + self.delta_b)

    def _two_osc(self) -> TwoOscillatorParams:
        if self.two_oscillator is None:
            raise ModelError("two-oscillator parameters are not set")
        return self.two_oscillator

    @property
    def is_remote(self) -> bool:
        return self.two_oscillator is not None


def single_oscillator_params(
    omega_r: float,
    g: float | tuple[float, float],
    *,
    delta: float | None = None,
    omega_m: float | None = None,
    kappa: float = 0.0,
    **kwargs,
) -> SystemParams:
    """Convenience constructor; the modulation is given by delta or omega_m."""
    if (delta is None) == (omega_m is None):
        raise ModelError("give exactly one of delta or omega_m")
    if omega_m is None:
        omega_m = omega_r - delta
    g1, g2 = (g, g) if np.isscalar(g) else g
    return SystemParams(omega_r=omega_r, g1=g1, g2=g2, omega_m=omega_m, kappa=kappa, **kwargs)


# ---------------------------------------------------------------------------
# Secular zz coupling rates
# ---------------------------------------------------------------------------


def effective_coupling(p: SystemParams) -> float:
    """Secular zz rate of the modulated single-oscillator coupling.

    Includes both the co-rotating (1/delta) and counter-rotating
    (1/(omega_r + omega_m)) contributions.
    """
    delta = p.delta
    if delta == 0.0:
        raise ModelError("delta = 0 is the resonant readout regime, not a gate")
    return -(p.g1 * p.g2 / 2.0) * (1.0 / delta + 1.0 / (p.omega_r + p.omega_m))


def planning_coupling(p: SystemParams) -> float:
    """Dominant 1/delta part of the zz rate, used to size the gate time."""
    delta = p.delta
    if delta == 0.0:
        raise ModelError("delta = 0 is the resonant readout regime, not a gate")
    return -p.g1 * p.g2 / (2.0 * delta)


def effective_coupling_remote(p: SystemParams) -> float:
    """Secular zz rate for qubits on two coupled oscillators.

    Exact for the rotating-frame model after dropping the 2*omega_m
    terms; the pole where the modulation hits a hybridized normal mode
    is rejected.
    """
    two = p._two_osc()
    if two.g_ab == 0.0:
        return 0.0
    zeta = (two.omega_b - two.omega_a) / (2.0 * two.g_ab)
    dbar = p.delta_bar
    denom = dbar**2 - two.g_ab**2 * (1.0 + zeta**2)
    if abs(denom) <= 1e-6 * dbar**2:
        raise HybridizedModeResonanceError(
            "hybridized-mode resonance: modulation is resonant with a normal mode"
        )
    return 0.5 * p.g1 * p.g2 * two.g_ab / denom


@dataclass(frozen=True)
class RemoteModes:
    """Normal modes of the rotating-frame coupled-oscillator pair."""

    frequencies: tuple[float, float]  # detuned normal-mode frequencies
    weights_a: tuple[float, float]  # orthogonal transform row for mode a
    weights_b: tuple[float, float]


def remote_modes(p: SystemParams) -> RemoteModes:
    two = p._two_osc()
    m = np.array([[p.delta_a, two.g_ab], [two.g_ab, p.delta_b]])
    vals, vecs = np.linalg.eigh(m)
    return RemoteModes(
        frequencies=(float(vals[0]), float(vals[1])),
        weights_a=(float(vecs[0, 0]), float(vecs[0, 1])),
        weights_b=(float(vecs[1, 0]), float(vecs[1, 1])),
    )


# ---------------------------------------------------------------------------
# Conditional displacement
# ---------------------------------------------------------------------------


def polaron_alpha(p: SystemParams, i: int, t) -> complex | np.ndarray:
    """Displacement amplitude alpha_i(t) of the conditional oscillator path.

    Closed-form solution of ``alpha' = -i omega_r alpha - i g_i cos(omega_m t)``
    with alpha(0) = 0 (validated against direct integration in the tests).
    """
    delta = p.delta
    if delta == 0.0:
        raise ModelError("delta = 0: displacement grows secularly (readout regime)")
    g = (p.g1, p.g2)[i]
    t = np.asarray(t, dtype=float)
    wr, wm = p.omega_r, p.omega_m
    out = -(g / 2.0) * (
        (np.exp(-1j * wm * t) - np.exp(-1j * wr * t)) / delta
        + (np.exp(1j * wm * t) - np.exp(-1j * wr * t)) / (wr + wm)
    )
    return complex(out) if out.ndim == 0 else out


def polaron_alpha_ode(p: SystemParams, i: int, t_grid: np.ndarray) -> np.ndarray:
    """Reference integration of the displacement equation (oracle)."""
    g = (p.g1, p.g2)[i]

    def rhs(t, y):
        return [-1j * p.omega_r * y[0] - 1j * g * math.cos(p.omega_m * t)]

    sol = solve_ivp(
        rhs,
        (0.0, float(t_grid[-1])),
        [0.0 + 0.0j],
        t_eval=t_grid,
        rtol=1e-12,
        atol=1e-14,
        method="DOP853",
    )
    return sol.y[0]


# ---------------------------------------------------------------------------
# Classical phase oracle
# ---------------------------------------------------------------------------


def conditional_phase(
    p: SystemParams, s1: int, s2: int, t_final: float, rwa: bool = False
) -> float:
    """Phase accumulated by the qubit configuration (s1, s2) = (+-1, +-1).

    Integrates the classical displacement of the driven detuned mode and
    the associated action phase; exact for the coherent dynamics at
    kappa = 0 and used as the independent cross-check of the secular zz
    rates.
    """
    w = 0.5 * (p.g1 * s1 + p.g2 * s2)
    delta = p.delta

    def drive(t):
        if rwa:
            return w + 0.0j
        return w * (1.0 + np.exp(2j * p.omega_m * t))

    def rhs(t, y):
        beta = y[0]
        eta = drive(t)
        return [-1j * delta * beta - 1j * eta, -np.real(np.conj(eta) * beta)]

    sol = solve_ivp(
        rhs,
        (0.0, t_final),
        [0.0 + 0.0j, 0.0 + 0.0j],
        rtol=1e-12,
        atol=1e-14,
        method="DOP853",
        max_step=math.pi / (4.0 * p.omega_m),
    )
    return float(np.real(sol.y[1, -1]))


def conditional_phase_zz(p: SystemParams, t_final: float, rwa: bool = False) -> float:
    """zz phase integral in the polaron sign convention.

    Returns phi such that the coherent evolution acts as
    ``exp(-i phi sigma_z1 sigma_z2)`` on the qubits; the secular
    expectation is ``phi ~ effective_coupling(p) * t_final``.
    """
    phases = {
        (s1, s2): conditional_phase(p, s1, s2, t_final, rwa=rwa)
        for s1 in (1, -1)
        for s2 in (1, -1)
    }
    return -0.25 * (phases[1, 1] - phases[1, -1] - phases[-1, 1] + phases[-1, -1])


def remote_conditional_phase(p: SystemParams, s1: int, s2: int, t_final: float) -> float:
    """Same oracle for the rotating-frame two-oscillator model (RWA level)."""
    two = p._two_osc()
    eta_a = 0.5 * p.g1 * s1
    eta_b = 0.5 * p.g2 * s2

    def rhs(t, y):
        ba, bb = y[0], y[1]
        dba = -1j * p.delta_a * ba - 1j * two.g_ab * bb - 1j * eta_a
        dbb = -1j * p.delta_b * bb - 1j * two.g_ab * ba - 1j * eta_b
        dphi = -np.real(np.conj(eta_a) * ba + np.conj(eta_b) * bb)
        return [dba, dbb, dphi]

    sol = solve_ivp(
        rhs,
        (0.0, t_final),
        [0.0 + 0.0j, 0.0 + 0.0j, 0.0 + 0.0j],
        rtol=1e-12,
        atol=1e-14,
        method="DOP853",
    )
    return float(np.real(sol.y[2, -1]))


def remote_conditional_phase_zz(p: SystemParams, t_final: float) -> float:
    """Two-oscillator zz phase integral, polaron sign convention."""
    phases = {
        (s1, s2): remote_conditional_phase(p, s1, s2, t_final)
        for s1 in (1, -1)
        for s2 in (1, -1)
    }
    return -0.25 * (phases[1, 1] - phases[1, -1] - phases[-1, 1] + phases[-1, -1])


# ---------------------------------------------------------------------------
# Gate schedules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GateSchedule:
    """A commensurate gate: duration, couplings, achieved phase, corrections.

    ``j_bar`` is the planning rate that sized ``t_g``; ``j_eff`` is the
    full secular rate that determines the phase the evolution actually
    accumulates. ``theta_achieved`` and the Z corrections are derived
    from ``j_eff`` so that corrected ideal evolution equals
    diag(1, 1, 1, e^{i theta_achieved}) exactly.
    """

    params: SystemParams
    theta: float
    t_g: float
    n: int
    j_bar: float
    j_eff: float
    theta_achieved: float
    z_corrections: tuple[float, float, float]  # (lambda1, lambda2, global phase)
    omega_m_commensurate: bool
    omega_m_residual: float
    remote: bool = False

    @property
    def plan_mismatch(self) -> float:
        """Relative gap between 4*|j_bar|*t_g and the requested theta."""
        return abs(4.0 * abs(self.j_bar) * self.t_g - self.theta) / self.theta


def _corrections_from_phase(phi_zz: float) -> tuple[float, float, float, float]:
    """Z-rotation angles, global phase and achieved CP phase for exp(-i phi_zz zz)."""
    theta_achieved = (-4.0 * phi_zz) % TWO_PI
    lam = -2.0 * phi_zz
    return lam, lam, -phi_zz, theta_achieved


def _soft_constraint(omega_m: float, t_g: float) -> tuple[bool, float]:
    x = omega_m * t_g / math.pi
    residual = abs(x - round(x)) * math.pi
    return residual <= 1e-6 * math.pi, residual


def plan_schedule(p: SystemParams, theta: float, rescale_g2: bool = False) -> GateSchedule:
    """Pick the commensurate gate time closest to theta / (4 |j_bar|).

    The duration satisfies ``|delta| t_g = 2 pi n`` exactly so the
    conditional displacement closes; the weaker condition on
    ``omega_m t_g`` is only reported. With ``rescale_g2`` the second
    coupling amplitude is scaled so the achieved phase hits ``theta``
    exactly instead of being merely reported.
    """
    if not 0.0 < theta <= TWO_PI:
        raise ModelError("theta must lie in (0, 2*pi]")
    if p.is_remote:
        raise ModelError("use plan_remote_schedule for two-oscillator systems")
    j_plan = planning_coupling(p)
    if j_plan == 0.0:
        raise ModelError("zero coupling: no gate")
    abs_delta = abs(p.delta)
    n = round(abs_delta * theta / (8.0 * math.pi * abs(j_plan)))
    if n < 1:
        raise ModelError(
            "coupling too strong for a commensurate schedule at this detuning (n = 0)"
        )
    t_g = TWO_PI * n / abs_delta
    j_eff = effective_coupling(p)
    if rescale_g2:
        theta_raw = (-4.0 * j_eff * t_g) % TWO_PI
        scale = theta / theta_raw
        p = replace(p, g2=p.g2 * scale)
        j_eff = effective_coupling(p)
        j_plan = planning_coupling(p)
    lam1, lam2, gphase, theta_achieved = _corrections_from_phase(j_eff * t_g)
    ok, residual = _soft_constraint(p.omega_m, t_g)
    return GateSchedule(
        params=p,
        theta=theta,
        t_g=t_g,
        n=n,
        j_bar=j_plan,
        j_eff=j_eff,
        theta_achieved=theta_achieved,
        z_corrections=(lam1, lam2, gphase),
        omega_m_commensurate=ok,
        omega_m_residual=residual,
        remote=False,
    )


def _remote_phase_correction(p: SystemParams, t_g: float) -> float:
    """Oscillatory part of the zz phase at time t_g (vanishes when both
    normal modes complete whole cycles)."""
    modes = remote_modes(p)
    corr = 0.0
    for k in range(2):
        wk = modes.frequencies[k]
        if wk == 0.0:
            continue
        a_k = 0.5 * p.g1 * p.g2 * modes.weights_a[k] * modes.weights_b[k]
        corr -= a_k * math.sin(wk * t_g) / wk**2
    return corr


def _remote_residual_metric(p: SystemParams, t: float) -> float:
    """Worst-case residual displacement left in the normal modes at time t."""
    modes = remote_modes(p)
    total = 0.0
    for k in range(2):
        wk = modes.frequencies[k]
        if wk == 0.0:
            continue
        lam_max = 0.5 * (abs(p.g1 * modes.weights_a[k]) + abs(p.g2 * modes.weights_b[k]))
        total += (lam_max / wk) ** 2 * abs(1.0 - np.exp(-1j * wk * t)) ** 2
    return total


def plan_remote_schedule(p: SystemParams, theta: float) -> GateSchedule:
    """Commensurate schedule for the two-oscillator gate.

    Both hybridized normal modes must return (close to) their initial
    state at t_g, so candidate durations commensurate with either mode
    (and with rational combinations of the two) are scored by the
    residual displacement they leave, and the best one near
    theta / (4 |j|) wins.
    """
    if not 0.0 < theta <= TWO_PI:
        raise ModelError("theta must lie in (0, 2*pi]")
    j = effective_coupling_remote(p)
    modes = remote_modes(p)
    freqs = [abs(w) for w in modes.frequencies if abs(w) > 0.0]
    if not freqs:
        raise ModelError("both normal modes are resonant with the modulation")
    base_period = TWO_PI / min(freqs)
    if j != 0.0:
        t_target = theta / (4.0 * abs(j))
    else:
        t_target = base_period

    candidates: set[float] = set()
    for w in freqs:
        j0 = max(1, round(w * t_target / TWO_PI))
        for dj in range(-3, 4):
            if j0 + dj >= 1:
                candidates.add(TWO_PI * (j0 + dj) / w)
    if len(freqs) == 2:
        ratio = Fraction(freqs[1] / freqs[0]).limit_denominator(64)
        if ratio.numerator > 0:
            t_base = TWO_PI * ratio.denominator / freqs[0]
            q0 = max(1, round(t_target / t_base))
            for dq in range(-2, 3):
                if q0 + dq >= 1:
                    candidates.add(t_base * (q0 + dq))

    window = [t for t in candidates if 0.7 * t_target <= t <= 1.35 * t_target]
    if not window:
        window = sorted(candidates, key=lambda t: abs(t - t_target))[:1]
    # Floor the residual so exactly-commensurate candidates tie and the one
    # closest to the target duration wins.
    t_g = min(window, key=lambda t: (max(_remote_residual_metric(p, t), 1e-10), abs(t - t_target)))

    phi_zz = j * t_g + _remote_phase_correction(p, t_g)
    lam1, lam2, gphase, theta_achieved = _corrections_from_phase(phi_zz)
    n = max(1, round(abs(p.delta_bar) * t_g / TWO_PI))
    ok, residual = _soft_constraint(p.omega_m, t_g)
    return GateSchedule(
        params=p,
        theta=theta,
        t_g=t_g,
        n=n,
        j_bar=j,
        j_eff=j,
        theta_achieved=theta_achieved,
        z_corrections=(lam1, lam2, gphase),
        omega_m_commensurate=ok,
        omega_m_residual=residual,
        remote=True,
    )


# ---------------------------------------------------------------------------
# Hamiltonian term lists and the spec'd point evaluators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HamiltonianTerm:
    """One (coefficient schedule) x (static operator) contribution.

    ``coeff`` of None means a static term; otherwise the term is
    ``coeff(t) * op`` and ``frequency`` declares the fastest angular
    frequency in ``coeff`` so the integrator can bound its steps.
    """

    op: np.ndarray
    coeff: Callable[[float], float] | None = None
    frequency: float = 0.0


def single_oscillator_space(cutoff: int) -> HilbertSpace:
    return qubits_and_oscillators(2, [cutoff])


def two_oscillator_space(cutoff: int) -> HilbertSpace:
    return qubits_and_oscillators(2, [cutoff, cutoff])


def _single_osc_ops(space: HilbertSpace):
    osc = space.oscillator_indices[0]
    a = embed(annihilation(space.factors[osc].dim), osc, space).data
    sz1 = embed(SIGMA_Z, 0, space).data
    sz2 = embed(SIGMA_Z, 1, space).data
    return a, sz1, sz2


def lab_terms(
    p: SystemParams, space: HilbertSpace, include_qubit_frequencies: bool = True
) -> list[HamiltonianTerm]:
    a, sz1, sz2 = _single_osc_ops(space)
    x = a + a.conj().T
    static = p.omega_r * (a.conj().T @ a)
    if include_qubit_frequencies:
        static = static + 0.5 * p.omega_a1 * sz1 + 0.5 * p.omega_a2 * sz2
    coupling = p.g1 * (sz1 @ x) + p.g2 * (sz2 @ x)
    wm = p.omega_m
    return [
        HamiltonianTerm(static),
        HamiltonianTerm(coupling, coeff=lambda t: math.cos(wm * t), frequency=wm),
    ]


def rotating_terms(
    p: SystemParams,
    space: HilbertSpace,
    rwa: bool = False,
    include_qubit_frequencies: bool = True,
) -> list[HamiltonianTerm]:
    a, sz1, sz2 = _single_osc_ops(space)
    x = a + a.conj().T
    y = 1j * (a.conj().T - a)
    half_coupling = 0.5 * p.g1 * (sz1 @ x) + 0.5 * p.g2 * (sz2 @ x)
    static = p.delta * (a.conj().T @ a) + half_coupling
    if include_qubit_frequencies:
        static = static + 0.5 * p.omega_a1 * sz1 + 0.5 * p.omega_a2 * sz2
    terms = [HamiltonianTerm(static)]
    if not rwa:
        half_coupling_y = 0.5 * p.g1 * (sz1 @ y) + 0.5 * p.g2 * (sz2 @ y)
        w2 = 2.0 * p.omega_m
        terms.append(
            HamiltonianTerm(half_coupling, coeff=lambda t: math.cos(w2 * t), frequency=w2)
        )
        terms.append(
            HamiltonianTerm(half_coupling_y, coeff=lambda t: math.sin(w2 * t), frequency=w2)
        )
    return terms


def polaron_terms(schedule: GateSchedule, space: HilbertSpace) -> list[HamiltonianTerm]:
    p = schedule.params
    osc = space.oscillator_indices[0]
    a = embed(annihilation(space.factors[osc].dim), osc, space).data
    sz1 = embed(SIGMA_Z, 0, space).data
    sz2 = embed(SIGMA_Z, 1, space).data
    static = p.omega_r * (a.conj().T @ a) + schedule.j_eff * (sz1 @ sz2)
    return [HamiltonianTerm(static)]


def remote_lab_terms(
    p: SystemParams, space: HilbertSpace, include_qubit_frequencies: bool = True
) -> list[HamiltonianTerm]:
    two = p._two_osc()
    ia, ib = space.oscillator_indices
    a = embed(annihilation(space.factors[ia].dim), ia, space).data
    b = embed(annihilation(space.factors[ib].dim), ib, space).data
    sz1 = embed(SIGMA_Z, 0, space).data
    sz2 = embed(SIGMA_Z, 1, space).data
    xa, xb = a + a.conj().T, b + b.conj().T
    pa, pb = a.conj().T - a, b.conj().T - b
    static = (
        two.omega_a * (a.conj().T @ a)
        + two.omega_b * (b.conj().T @ b)
        - two.g_ab * (pa @ pb)
    )
    if include_qubit_frequencies:
        static = static + 0.5 * p.omega_a1 * sz1 + 0.5 * p.omega_a2 * sz2
    coupling = p.g1 * (sz1 @ xa) + p.g2 * (sz2 @ xb)
    wm = p.omega_m
    return [
        HamiltonianTerm(static),
        HamiltonianTerm(coupling, coeff=lambda t: math.cos(wm * t), frequency=wm),
    ]


def remote_rotating_terms(
    p: SystemParams, space: HilbertSpace, include_qubit_frequencies: bool = True
) -> list[HamiltonianTerm]:
    """Rotating-frame two-oscillator model after dropping 2*omega_m terms."""
    two = p._two_osc()
    ia, ib = space.oscillator_indices
    a = embed(annihilation(space.factors[ia].dim), ia, space).data
    b = embed(annihilation(space.factors[ib].dim), ib, space).data
    sz1 = embed(SIGMA_Z, 0, space).data
    sz2 = embed(SIGMA_Z, 1, space).data
    static = (
        p.delta_a * (a.conj().T @ a)
        + p.delta_b * (b.conj().T @ b)
        + two.g_ab * (a.conj().T @ b + b.conj().T @ a)
        + 0.5 * p.g1 * (sz1 @ (a + a.conj().T))
        + 0.5 * p.g2 * (sz2 @ (b + b.conj().T))
    )
    if include_qubit_frequencies:
        static = static + 0.5 * p.omega_a1 * sz1 + 0.5 * p.omega_a2 * sz2
    return [HamiltonianTerm(static)]


def _evaluate_terms(terms: Sequence[HamiltonianTerm], t: float, space: HilbertSpace) -> Operator:
    if not math.isfinite(t):
        raise ModelError("non-finite time")
    total = np.zeros((space.total_dim, space.total_dim), dtype=complex)
    for term in terms:
        total = total + (term.op if term.coeff is None else term.coeff(t) * term.op)
    return Operator(space, total).assert_hermitian()


def _require_cutoff(cutoff) -> int:
    if cutoff is None:
        raise ModelError("Fock cutoff is required")
    cutoff = int(cutoff)
    if cutoff < 2:
        raise ModelError("Fock cutoff must be >= 2")
    return cutoff


def lab_hamiltonian(p: SystemParams, t: float, cutoff: int) -> Operator:
    """Full modulated Hamiltonian at time t on qubit x qubit x Fock(cutoff)."""
    space = single_oscillator_space(_require_cutoff(cutoff))
    return _evaluate_terms(lab_terms(p, space), t, space)


def rotating_hamiltonian(p: SystemParams, t: float, cutoff: int, rwa: bool = False) -> Operator:
    space = single_oscillator_space(_require_cutoff(cutoff))
    return _evaluate_terms(rotating_terms(p, space, rwa=rwa), t, space)


def polaron_hamiltonian(schedule: GateSchedule, cutoff: int) -> Operator:
    """Static polaron-frame Hamiltonian with the secular zz rate."""
    space = single_oscillator_space(_require_cutoff(cutoff))
    return _evaluate_terms(polaron_terms(schedule, space), 0.0, space)


def remote_lab_hamiltonian(p: SystemParams, t: float, cutoff: int) -> Operator:
    space = two_oscillator_space(_require_cutoff(cutoff))
    return _evaluate_terms(remote_lab_terms(p, space), t, space)
