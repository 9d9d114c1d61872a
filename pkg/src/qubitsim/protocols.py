"""Experiment-level compositions: Ramsey fringes, damped Rabi drive, superdense coding.

Ramsey pulses are ideal instantaneous pi/2 rotations about the Bloch y axis,
with the convention |g> -> (|g> + |e>)/sqrt(2). Between pulses the state
precesses freely at the level splitting; an optional pure-dephasing rate
damps the acquired coherence as e^{-2 delta tau}, which multiplies the
fringe contrast by the same factor:

    P_e(tau) = (1 + e^{-2 delta tau} cos(Delta tau)) / 2

Superdense coding shares the (|00> + |11>)/sqrt(2) pair, encodes two bits by
a local operation on the first (sender's) qubit, and decodes by projecting
onto the four entangled basis states. Transmission noise is modeled as pure
dephasing of the sender's qubit alone.
"""

from dataclasses import dataclass

import numpy as np

from .dynamics import (
    SIGMA_X,
    SIGMA_Z,
    DriveMode,
    LindbladChannel,
    QubitHamiltonian,
    TimeSeries,
    evolve_lindblad,
)
from .errors import DomainError, SamplingError
from .qstate import DensityMatrix, Ket, _as_density, density_from_ket

MESSAGES = ("00", "01", "10", "11")

# Entangled two-qubit basis, ordered to match MESSAGES.
BELL_BASIS = (
    Ket(np.array([1, 0, 0, 1]) / np.sqrt(2)),   # (|00> + |11>)/sqrt(2)
    Ket(np.array([1, 0, 0, -1]) / np.sqrt(2)),  # (|00> - |11>)/sqrt(2)
    Ket(np.array([0, 1, 1, 0]) / np.sqrt(2)),   # (|01> + |10>)/sqrt(2)
    Ket(np.array([0, 1, -1, 0]) / np.sqrt(2)),  # (|01> - |10>)/sqrt(2)
)

_IDENTITY = np.eye(2, dtype=complex)
_ENCODING_OPS = {
    "00": _IDENTITY,
    "01": SIGMA_Z,
    "10": SIGMA_X,
    "11": SIGMA_Z @ SIGMA_X,
}


@dataclass(frozen=True)
class RamseyConfig:
    """Two-pulse interferometry scan settings.

    delta_split is the level splitting (angular frequency), tau_max the
    longest free-evolution delay, n_points the scan length. dephasing_rate
    adds pure dephasing during the delay. Only instantaneous pulses are
    modeled.
    """

    delta_split: float
    tau_max: float
    n_points: int
    pulse_model: str = "instantaneous"
    dephasing_rate: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.tau_max) and self.tau_max > 0):
            raise ValueError(f"tau_max must be positive, got {self.tau_max}")
        if self.n_points < 2:
            raise ValueError(f"n_points must be at least 2, got {self.n_points}")
        if self.pulse_model != "instantaneous":
            raise ValueError(f"unsupported pulse model {self.pulse_model!r}")
        if not np.isfinite(self.delta_split):
            raise ValueError("delta_split must be finite")
        if not (np.isfinite(self.dephasing_rate) and self.dephasing_rate >= 0):
            raise ValueError(f"dephasing_rate must be non-negative, got {self.dephasing_rate}")

    @property
    def tau_step(self) -> float:
        return self.tau_max / (self.n_points - 1)


def ramsey_population(cfg: RamseyConfig, tau: float) -> float:
    """Excited-state probability after the pi/2 -- delay -- pi/2 sequence.

    Closed form (1 + e^{-2 delta tau} cos(Delta tau))/2: back-to-back pulses
    (tau = 0) compose to a pi pulse ending in |e>; a full equatorial
    revolution (Delta tau = 2 pi) also returns P_e = 1, a half revolution
    (Delta tau = pi) returns P_e = 0.
    """
    if not (0.0 <= tau <= cfg.tau_max):
        raise DomainError(f"tau = {tau} outside [0, {cfg.tau_max}]")
    contrast = np.exp(-2.0 * cfg.dephasing_rate * tau)
    return float(0.5 * (1.0 + contrast * np.cos(cfg.delta_split * tau)))


def ramsey_scan(cfg: RamseyConfig) -> TimeSeries:
    """Fringe scan P_e(tau) on the uniform delay grid of cfg.

    The grid must resolve the splitting: delta_split below the Nyquist
    angular frequency pi / tau_step.
    """
    nyquist = np.pi / cfg.tau_step
    if abs(cfg.delta_split) >= nyquist:
        raise SamplingError(
            f"splitting {cfg.delta_split} at or above the Nyquist angular frequency "
            f"{nyquist} of the scan grid; add points or shorten tau_max"
        )
    taus = np.linspace(0.0, cfg.tau_max, cfg.n_points)
    contrast = np.exp(-2.0 * cfg.dephasing_rate * taus)
    p_e = 0.5 * (1.0 + contrast * np.cos(cfg.delta_split * taus))
    # Coherence of the post-sequence state, from the same composed rotation.
    rho01 = -0.5j * contrast * np.sin(cfg.delta_split * taus)
    return TimeSeries(times=taus, p_g=1.0 - p_e, p_e=p_e, rho01=rho01)


def fringe_frequency(series: TimeSeries) -> float:
    """Dominant angular frequency of the P_e record, by zero-padded FFT peak.

    Returns 0.0 for a flat record. The peak bin is refined by parabolic
    interpolation of the neighboring magnitudes.
    """
    n = len(series)
    if n < 4 or series.dt is None:
        raise SamplingError("need at least 4 uniform samples to estimate a frequency")
    values = series.p_e - np.mean(series.p_e)
    n_fft = 8 * n
    spectrum = np.abs(np.fft.rfft(values, n=n_fft))
    peak = int(np.argmax(spectrum[1:])) + 1
    if spectrum[peak] < 1e-12 * n:
        return 0.0
    offset = 0.0
    if 1 <= peak < spectrum.size - 1:
        left, mid, right = spectrum[peak - 1 : peak + 2]
        denom = left - 2.0 * mid + right
        if denom != 0.0:
            offset = 0.5 * (left - right) / denom
    return float(2.0 * np.pi * (peak + offset) / (n_fft * series.dt))


def rabi_with_dephasing(omega: float, delta: float, epsilon: float,
                        t_max: float, dt: float) -> TimeSeries:
    """Resonantly driven qubit under pure dephasing, from the ground state.

    Runs the rotating-frame master equation with drive amplitude omega and
    channel sqrt(delta) sigma_z. For delta = 0 the populations follow
    sin^2(omega t / 2); increasing delta damps the oscillation envelope and
    pushes the populations toward 1/2.
    """
    h = QubitHamiltonian(
        epsilon=epsilon,
        omega_rabi=omega,
        omega0=epsilon,
        drive_mode=DriveMode.ROTATING_WAVE,
    )
    channel = LindbladChannel.pure_dephasing(delta)
    ground = DensityMatrix([[1.0, 0.0], [0.0, 0.0]])
    return evolve_lindblad(ground, h, (channel,), t_max, dt)


def figure_of_merit(delta: float, omega: float) -> float:
    """Gate-to-decoherence timescale ratio delta/omega; smaller is better."""
    if not (np.isfinite(omega) and omega > 0):
        raise DomainError(f"drive amplitude must be positive, got {omega}")
    if not (np.isfinite(delta) and delta >= 0):
        raise DomainError(f"dephasing rate must be non-negative, got {delta}")
    return delta / omega


def _validate_message(message: str) -> str:
    if message not in MESSAGES:
        raise DomainError(f"message must be one of {MESSAGES}, got {message!r}")
    return message


def superdense_encode(message: str) -> Ket:
    """Two-qubit state carrying the message, made by a local operation.

    Starting from the shared pair (|00> + |11>)/sqrt(2), the sender applies
    to her qubit: identity for 00, sigma_z for 01, sigma_x for 10, and
    sigma_z sigma_x for 11. The four outputs are pairwise orthogonal.
    """
    op = _ENCODING_OPS[_validate_message(message)]
    shared = BELL_BASIS[0].amplitudes
    return Ket(np.kron(op, _IDENTITY) @ shared)


def superdense_decode(rho):
    """Joint projective measurement in the entangled basis.

    Returns (message, probabilities) where probabilities[i] = <b_i|rho|b_i>
    over the basis in MESSAGES order and message is the most likely outcome
    (ties broken by basis order).
    """
    mat = _as_density(rho).matrix
    if mat.shape[0] != 4:
        raise DomainError("superdense decoding requires a two-qubit state")
    probs = np.array(
        [float(np.real(np.vdot(b.amplitudes, mat @ b.amplitudes))) for b in BELL_BASIS]
    )
    return MESSAGES[int(np.argmax(probs))], probs


def damp_first_qubit_coherence(rho, factor: float) -> DensityMatrix:
    """Scale every coherence between differing first-qubit indices by factor.

    This is the pure-dephasing channel acting on the first qubit only,
    with e^{-2 delta t} already evaluated to the given factor in [0, 1].
    """
    if not (np.isfinite(factor) and 0.0 <= factor <= 1.0):
        raise DomainError(f"damping factor must lie in [0, 1], got {factor}")
    mat = _as_density(rho).matrix
    if mat.shape[0] != 4:
        raise DomainError("first-qubit damping requires a two-qubit state")
    first_bit = np.arange(4) >> 1
    mask = np.where(first_bit[:, None] == first_bit[None, :], 1.0, factor)
    return DensityMatrix(mat * mask)


@dataclass(frozen=True, eq=False)
class SuperdenseSweep:
    """Decode success probability per message over a grid of channel durations."""

    times: np.ndarray
    success: dict

    def __post_init__(self):
        object.__setattr__(self, "times", np.asarray(self.times, dtype=float))


def superdense_success_probability(message: str, delta: float, t: float) -> float:
    """Probability that the message survives dephasing of the sender's qubit for time t."""
    message = _validate_message(message)
    if not (np.isfinite(delta) and delta >= 0):
        raise DomainError(f"dephasing rate must be non-negative, got {delta}")
    if t < 0:
        raise DomainError(f"channel duration must be non-negative, got {t}")
    encoded = density_from_ket(superdense_encode(message))
    damped = damp_first_qubit_coherence(encoded, float(np.exp(-2.0 * delta * t)))
    _, probs = superdense_decode(damped)
    return float(probs[MESSAGES.index(message)])


def superdense_channel_sweep(delta: float, t_max: float, n_points: int) -> SuperdenseSweep:
    """Sweep of decode success against channel duration for all four messages.

    Success starts at 1 and falls toward 1/2 as the dephasing factor decays:
    each encoded state becomes indistinguishable from its partner of equal
    populations once the sender-side coherence is gone.
    """
    if not (np.isfinite(t_max) and t_max > 0):
        raise DomainError(f"t_max must be positive, got {t_max}")
    if n_points < 2:
        raise DomainError(f"n_points must be at least 2, got {n_points}")
    times = np.linspace(0.0, t_max, n_points)
    success = {
        msg: np.array([superdense_success_probability(msg, delta, t) for t in times])
        for msg in MESSAGES
    }
    return SuperdenseSweep(times=times, success=success)
