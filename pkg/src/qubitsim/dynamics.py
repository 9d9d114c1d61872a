"""Closed- and open-system time evolution for a single qubit.

Works in natural units: hbar = 1, energies are angular frequencies, rates
are inverse time. The closed-system generator is d(rho)/dt = -i[H(t), rho];
collapse channels add the dissipator sum_k (L_k rho L_k^dag
- (1/2){L_k^dag L_k, rho}).

With H = (epsilon/2) sigma_z and the basis convention |g> = (1, 0)^T, the
upper coherence accrues the phase e^{-i epsilon t}; under the pure-dephasing
channel sqrt(delta) sigma_z it also decays as e^{-2 delta t} while the
populations stay fixed.

Trajectories are integrated with the classical fixed-step 4th-order scheme.
For a time-independent generator one such step equals the degree-4 Taylor
polynomial of the step propagator, so that propagator is precomputed once
and applied per step; the time-dependent cosine drive falls back to the
explicit four-stage form.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, NumericalInstabilityError, StepSizeError
from .qstate import DensityMatrix, _as_density, _readonly

# Natural units: every energy entering a generator is an angular frequency.
HBAR = 1.0

SIGMA_X = _readonly(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
SIGMA_Z = _readonly(np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex))

# Tolerances monitored on every trajectory sample. Positivity is monitored,
# not enforced: a breach aborts instead of silently projecting back.
TRACE_TOL = 1e-9
HERMITICITY_TOL = 1e-9
POSITIVITY_FLOOR = -1e-8

_STEP_RESOLUTION = 0.1  # dt * (fastest angular frequency or rate) must stay below this


class DriveMode(enum.Enum):
    NONE = "none"
    FULL_COSINE = "full_cosine"
    ROTATING_WAVE = "rotating_wave"


@dataclass(frozen=True)
class QubitHamiltonian:
    """Static splitting (epsilon/2) sigma_z plus an optional sigma_x drive.

    omega_rabi is the drive amplitude, omega0 its carrier frequency. In
    ROTATING_WAVE mode the evolution runs in the frame rotating at omega0,
    where the counter-rotating drive term is dropped and the generator is
    time independent.
    """

    epsilon: float
    omega_rabi: float = 0.0
    omega0: float = 0.0
    drive_mode: DriveMode = DriveMode.NONE

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be non-negative, got {self.epsilon}")
        if self.omega_rabi < 0:
            raise ValueError(f"omega_rabi must be non-negative, got {self.omega_rabi}")
        if self.omega0 < 0:
            raise ValueError(f"omega0 must be non-negative, got {self.omega0}")
        if self.drive_mode is DriveMode.NONE and self.omega_rabi != 0.0:
            raise ValueError("drive_mode NONE requires omega_rabi = 0")

    @property
    def detuning(self) -> float:
        """Rotating-frame detuning omega0 - epsilon."""
        return self.omega0 - self.epsilon

    @property
    def frequency_scale(self) -> float:
        return max(self.epsilon, self.omega_rabi, self.omega0)


@dataclass(frozen=True, eq=False)
class LindbladChannel:
    """One collapse operator with its rate already folded in (sqrt(rate) * base operator)."""

    operator: np.ndarray

    def __post_init__(self):
        op = np.array(self.operator, dtype=complex)
        if op.shape != (2, 2):
            raise ValueError(f"channel operator must be 2x2, got shape {op.shape}")
        if not np.all(np.isfinite(op)):
            raise ValueError("channel operator entries must be finite")
        object.__setattr__(self, "operator", _readonly(op))

    @classmethod
    def pure_dephasing(cls, delta: float) -> "LindbladChannel":
        """Channel sqrt(delta) sigma_z: random splitting fluctuations at rate delta."""
        if not (np.isfinite(delta) and delta >= 0):
            raise DomainError(f"dephasing rate must be non-negative, got {delta}")
        return cls(np.sqrt(delta) * SIGMA_Z)

    @property
    def rate(self) -> float:
        """Largest eigenvalue of L^dag L; sets the fastest decay this channel drives."""
        return float(np.linalg.eigvalsh(self.operator.conj().T @ self.operator)[-1])


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Uniformly sampled qubit trajectory: populations and the 0-1 coherence."""

    times: np.ndarray
    p_g: np.ndarray
    p_e: np.ndarray
    rho01: np.ndarray

    def __post_init__(self):
        times = _readonly(np.asarray(self.times, dtype=float))
        p_g = _readonly(np.asarray(self.p_g, dtype=float))
        p_e = _readonly(np.asarray(self.p_e, dtype=float))
        rho01 = _readonly(np.asarray(self.rho01, dtype=complex))
        n = times.size
        if not (p_g.size == p_e.size == rho01.size == n):
            raise ValueError("all trajectory columns must have the same length")
        if n >= 2:
            steps = np.diff(times)
            dt = steps[0]
            if dt <= 0:
                raise ValueError("sample times must be strictly increasing")
            if np.max(np.abs(steps - dt)) > 1e-9 * max(1.0, abs(dt)):
                raise ValueError("sample times must be uniformly spaced")
        for name, value in (("times", times), ("p_g", p_g), ("p_e", p_e), ("rho01", rho01)):
            object.__setattr__(self, name, value)

    @property
    def t0(self) -> float:
        return float(self.times[0]) if self.times.size else 0.0

    @property
    def dt(self):
        if self.times.size < 2:
            return None
        return float(self.times[1] - self.times[0])

    def __len__(self):
        return self.times.size


def hamiltonian_at(h: QubitHamiltonian, t: float) -> np.ndarray:
    """Hamiltonian matrix at time t for the configured drive mode."""
    static = 0.5 * h.epsilon * SIGMA_Z
    if h.drive_mode is DriveMode.NONE:
        return static
    if h.drive_mode is DriveMode.FULL_COSINE:
        return static + h.omega_rabi * np.cos(h.omega0 * t) * SIGMA_X
    half_detuning = 0.5 * h.detuning
    half_rabi = 0.5 * h.omega_rabi
    return np.array(
        [[-half_detuning, half_rabi], [half_rabi, half_detuning]], dtype=complex
    )


def _check_step(h: QubitHamiltonian, channels, t_max: float, dt: float):
    if not (np.isfinite(t_max) and t_max > 0):
        raise StepSizeError(f"t_max must be positive, got {t_max}")
    if not (np.isfinite(dt) and dt > 0):
        raise StepSizeError(f"dt must be positive, got {dt}")
    if dt > t_max / 10:
        raise StepSizeError(f"dt = {dt} exceeds t_max/10 = {t_max / 10}")
    if dt * h.frequency_scale >= _STEP_RESOLUTION:
        raise StepSizeError(
            f"dt * max(epsilon, omega_rabi, omega0) = {dt * h.frequency_scale} "
            f"must stay below {_STEP_RESOLUTION}"
        )
    for ch in channels:
        if dt * ch.rate >= _STEP_RESOLUTION:
            raise StepSizeError(
                f"dt * channel rate = {dt * ch.rate} must stay below {_STEP_RESOLUTION}"
            )


def _superoperator(h_matrix: np.ndarray, channels) -> np.ndarray:
    """Generator acting on row-major vec(rho): vec(A rho B) = (A kron B^T) vec(rho)."""
    eye = np.eye(2, dtype=complex)
    gen = (-1j / HBAR) * (np.kron(h_matrix, eye) - np.kron(eye, h_matrix.T))
    for ch in channels:
        op = ch.operator
        op_sq = op.conj().T @ op
        gen += np.kron(op, op.conj()) - 0.5 * (np.kron(op_sq, eye) + np.kron(eye, op_sq.T))
    return gen


def _step_propagator(gen: np.ndarray, dt: float) -> np.ndarray:
    # Degree-4 Taylor polynomial of expm(gen*dt): identical to one classical
    # 4th-order step for this linear, time-independent system.
    scaled = gen * dt
    prop = np.eye(4, dtype=complex)
    term = np.eye(4, dtype=complex)
    for k in (1, 2, 3, 4):
        term = term @ scaled / k
        prop = prop + term
    return prop


def _integrate_static(rho0: np.ndarray, h: QubitHamiltonian, channels, dt: float, n_steps: int):
    prop = _step_propagator(_superoperator(hamiltonian_at(h, 0.0), channels), dt)
    vec = rho0.reshape(4).astype(complex)
    out = np.empty((n_steps + 1, 4), dtype=complex)
    out[0] = vec
    for k in range(1, n_steps + 1):
        vec = prop @ vec
        out[k] = vec
    return out


def _integrate_stepwise(rho0: np.ndarray, h: QubitHamiltonian, channels, dt: float, n_steps: int):
    channel_terms = []
    for ch in channels:
        op = ch.operator
        channel_terms.append((op, op.conj().T, op.conj().T @ op))

    def rhs(t, rho):
        h_t = hamiltonian_at(h, t)
        out = (-1j / HBAR) * (h_t @ rho - rho @ h_t)
        for op, op_dag, op_sq in channel_terms:
            out += op @ rho @ op_dag - 0.5 * (op_sq @ rho + rho @ op_sq)
        return out

    rho = rho0.astype(complex)
    out = np.empty((n_steps + 1, 4), dtype=complex)
    out[0] = rho.reshape(4)
    half = 0.5 * dt
    for k in range(n_steps):
        t = k * dt
        k1 = rhs(t, rho)
        k2 = rhs(t + half, rho + half * k1)
        k3 = rhs(t + half, rho + half * k2)
        k4 = rhs(t + dt, rho + dt * k3)
        rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[k + 1] = rho.reshape(4)
    return out


def _series_from_trajectory(traj: np.ndarray, dt: float) -> TimeSeries:
    """Validate every sample against the trajectory tolerances, then record it."""
    trace_err = np.abs(traj[:, 0] + traj[:, 3] - 1.0)
    if np.max(trace_err) > TRACE_TOL:
        idx = int(np.argmax(trace_err > TRACE_TOL))
        raise NumericalInstabilityError(
            f"trace deviated by {trace_err[idx]:.3e} at step {idx}"
        )
    herm_err = np.maximum(
        np.abs(traj[:, 1] - np.conj(traj[:, 2])),
        2.0 * np.maximum(np.abs(traj[:, 0].imag), np.abs(traj[:, 3].imag)),
    )
    if np.max(herm_err) > HERMITICITY_TOL:
        idx = int(np.argmax(herm_err > HERMITICITY_TOL))
        raise NumericalInstabilityError(
            f"hermiticity deviated by {herm_err[idx]:.3e} at step {idx}"
        )
    # Closed-form smallest eigenvalue of the hermitized 2x2 sample.
    diag_g = traj[:, 0].real
    diag_e = traj[:, 3].real
    offdiag = 0.5 * (traj[:, 1] + np.conj(traj[:, 2]))
    lam_min = 0.5 * (diag_g + diag_e) - np.sqrt(
        0.25 * (diag_g - diag_e) ** 2 + np.abs(offdiag) ** 2
    )
    if np.min(lam_min) < POSITIVITY_FLOOR:
        idx = int(np.argmax(lam_min < POSITIVITY_FLOOR))
        raise NumericalInstabilityError(
            f"positivity breached (min eigenvalue {lam_min[idx]:.3e}) at step {idx}"
        )
    times = dt * np.arange(traj.shape[0])
    return TimeSeries(times=times, p_g=diag_g, p_e=diag_e, rho01=traj[:, 1].copy())


def evolve_lindblad(rho0, h: QubitHamiltonian, channels, t_max: float, dt: float) -> TimeSeries:
    """Integrate the master-equation trajectory of rho0 on a fixed grid.

    Parameters
    ----------
    rho0 : DensityMatrix or array_like
        Initial 2x2 state.
    h : QubitHamiltonian
        Coherent part of the generator.
    channels : sequence of LindbladChannel
        Collapse operators; empty means closed evolution.
    t_max, dt : float
        Final time and fixed step. dt must not exceed t_max/10 and must
        resolve the fastest frequency and channel rate (product below 0.1).

    Returns
    -------
    TimeSeries
        Samples at 0, dt, 2*dt, ..., with t_max rounded to a whole number
        of steps. Every sample is checked for trace, hermiticity, and
        positivity; a breach raises NumericalInstabilityError.
    """
    rho0 = _as_density(rho0)
    if rho0.dim != 2:
        raise DimensionError("time evolution supports single-qubit states only")
    channels = tuple(channels)
    _check_step(h, channels, t_max, dt)
    n_steps = int(round(t_max / dt))
    time_dependent = h.drive_mode is DriveMode.FULL_COSINE and h.omega_rabi != 0.0
    if time_dependent:
        traj = _integrate_stepwise(rho0.matrix, h, channels, dt, n_steps)
    else:
        traj = _integrate_static(rho0.matrix, h, channels, dt, n_steps)
    return _series_from_trajectory(traj, dt)


def evolve_closed(rho0, h: QubitHamiltonian, t_max: float, dt: float) -> TimeSeries:
    """Closed-system trajectory: the commutator generator with no channels."""
    return evolve_lindblad(rho0, h, (), t_max, dt)


def pure_dephasing_analytic(rho0, epsilon: float, delta: float, t: float) -> DensityMatrix:
    """Exact state after pure dephasing: populations fixed, coherences damped.

    rho01(t) = e^{-2 delta t} e^{-i epsilon t} rho01(0); the opposite corner
    follows by conjugation. Serves as the closed-form oracle for
    evolve_lindblad with the sqrt(delta) sigma_z channel.
    """
    if not (np.isfinite(delta) and delta >= 0):
        raise DomainError(f"dephasing rate must be non-negative, got {delta}")
    mat = _as_density(rho0).matrix
    factor = np.exp(-2.0 * delta * t) * np.exp(-1j * epsilon * t)
    upper = mat[0, 1] * factor
    return DensityMatrix(
        [[mat[0, 0], upper], [np.conj(upper), mat[1, 1]]]
    )


def dephasing_time(delta: float) -> float:
    """Coherence 1/e-decay time T2 = 1/(2*delta) of the pure-dephasing channel."""
    if not (np.isfinite(delta) and delta > 0):
        raise DomainError(f"dephasing rate must be positive, got {delta}")
    return 1.0 / (2.0 * delta)
