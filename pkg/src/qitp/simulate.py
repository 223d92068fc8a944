"""State preparation, dilation steps, post-selection, shots, and noise.

Pure-state path: extend with the reservoir qubit, apply the dilation,
condition on the reservoir reading 0, repeat. Post-selection is exact
probability bookkeeping, not rejection sampling; shot histograms are drawn
from the final extended distribution so both the extended and the
normalized occupancies stay recoverable.

Noisy path: same loop on a density matrix, with single-qubit amplitude
damping and dephasing applied once after each (noiseless) unitary step and
an optional classical readout-flip confusion applied to the reported
distribution. This is a qualitative stand-in for hardware relaxation, not a
device model.

Shot sampling uses an inverse-CDF multinomial draw over a splitmix64
counter stream, so counts are bit-reproducible across platforms for a given
seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dilation import DilationUnitary, ItpParams, build_dilation
from .errors import (
    DimensionMismatch,
    InvalidDistribution,
    InvalidFactorization,
    NonRealExpectation,
    PostselectionImpossible,
)
from .linalg import HermitianOperator, PAULI_Z

POSTSELECT_FLOOR = 1e-14

_MASK64 = np.uint64(0xFFFFFFFFFFFFFFFF)
_SM64_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_SM64_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_SM64_MIX2 = np.uint64(0x94D049BB133111EB)


def normalized_state(psi) -> np.ndarray:
    """Validate and return a unit-norm copy of a state vector."""
    v = np.asarray(psi, dtype=complex).ravel()
    if v.size == 0 or not np.all(np.isfinite(v)):
        raise InvalidDistribution("state vector must be finite and non-empty")
    norm = np.linalg.norm(v)
    if norm < 1e-12:
        raise InvalidDistribution("state vector has zero norm")
    return v / norm


def extend_with_ancilla(psi) -> np.ndarray:
    """|0>_reservoir (x) |psi>: system amplitudes first, zero block second."""
    v = np.asarray(psi, dtype=complex).ravel()
    return np.concatenate([v, np.zeros_like(v)])


def apply_step(state, u: DilationUnitary) -> np.ndarray:
    """Apply the dilation unitary to an extended state vector."""
    v = np.asarray(state, dtype=complex).ravel()
    if v.size != u.dim:
        raise DimensionMismatch(f"state dim {v.size} != dilation dim {u.dim}")
    return u.matrix @ v


def postselect_ancilla0(state) -> tuple[np.ndarray, float]:
    """Condition on the reservoir qubit measuring 0.

    Returns the renormalized system block and the success probability p0.
    Raises PostselectionImpossible when p0 < 1e-14 (the failure mode of a
    trial energy below the true ground energy: the kept branch dies out).
    """
    v = np.asarray(state, dtype=complex).ravel()
    if v.size % 2:
        raise DimensionMismatch("extended state must have even dimension")
    n = v.size // 2
    kept = v[:n]
    p0 = float(np.real(kept.conj() @ kept))
    if p0 < POSTSELECT_FLOOR:
        raise PostselectionImpossible(
            f"reservoir-0 probability {p0:.3e} below {POSTSELECT_FLOOR:g}",
            probability=p0,
        )
    return kept / np.sqrt(p0), p0


def energy_expectation(psi, op: HermitianOperator) -> float:
    """Real expectation <psi|H|psi>; rejects states with large imaginary part."""
    v = np.asarray(psi, dtype=complex).ravel()
    if v.size != op.dim:
        raise DimensionMismatch(f"state dim {v.size} != operator dim {op.dim}")
    val = complex(v.conj() @ (op.matrix @ v))
    if abs(val.imag) >= 1e-8:
        raise NonRealExpectation(f"imaginary part {val.imag:.3e} too large")
    return val.real


def splitmix64_uniforms(count: int, seed: int) -> np.ndarray:
    """``count`` doubles in [0, 1) from the splitmix64 counter stream."""
    if count == 0:
        return np.zeros(0)
    idx = np.arange(1, count + 1, dtype=np.uint64)
    z = (np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + idx * _SM64_GOLDEN) & _MASK64
    z = ((z ^ (z >> np.uint64(30))) * _SM64_MIX1) & _MASK64
    z = ((z ^ (z >> np.uint64(27))) * _SM64_MIX2) & _MASK64
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


def sample_shots(probs, shots: int, seed: int) -> np.ndarray:
    """Multinomial histogram over ``probs`` via inverse-CDF sampling.

    Deterministic for a given seed; counts sum to ``shots``.
    """
    p = np.asarray(probs, dtype=float).ravel()
    if shots < 0:
        raise InvalidDistribution("shots must be >= 0")
    if p.size == 0 or not np.all(np.isfinite(p)) or np.any(p < -1e-12):
        raise InvalidDistribution("probabilities must be finite and non-negative")
    total = p.sum()
    if abs(total - 1.0) > 1e-9:
        raise InvalidDistribution(f"probabilities sum to {total!r}, expected 1")
    cdf = np.cumsum(np.clip(p, 0.0, None))
    cdf[-1] = 1.0
    draws = np.searchsorted(cdf, splitmix64_uniforms(shots, seed), side="right")
    return np.bincount(draws, minlength=p.size).astype(np.int64)


@dataclass(frozen=True)
class NoiseParams:
    """Per-step channel strengths: damping, dephasing, readout flip."""

    amplitude_damping: float = 0.0
    dephasing: float = 0.0
    readout_flip: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.amplitude_damping <= 1.0:
            raise ValueError("amplitude_damping must be in [0, 1]")
        if not 0.0 <= self.dephasing <= 1.0:
            raise ValueError("dephasing must be in [0, 1]")
        if not 0.0 <= self.readout_flip <= 0.5:
            raise ValueError("readout_flip must be in [0, 0.5]")


def _qubit_count_for(dim: int, qubit_count: int | None) -> int:
    if qubit_count is None:
        qubit_count = max(1, int(np.ceil(np.log2(dim))))
    if 2**qubit_count < dim:
        raise InvalidFactorization(
            f"{qubit_count} qubits cannot carry dimension {dim}"
        )
    return qubit_count


def _single_qubit_kraus(noise: NoiseParams) -> list[np.ndarray]:
    """Amplitude damping followed by dephasing, composed per qubit."""
    g, lam = noise.amplitude_damping, noise.dephasing
    damp = [
        np.array([[1, 0], [0, np.sqrt(1 - g)]], dtype=complex),
        np.array([[0, np.sqrt(g)], [0, 0]], dtype=complex),
    ]
    deph = [np.sqrt(1 - lam) * np.eye(2, dtype=complex), np.sqrt(lam) * PAULI_Z]
    return [d @ k for d in deph for k in damp]


def apply_channel(rho, noise: NoiseParams, qubit_count: int | None = None) -> np.ndarray:
    """Apply per-qubit damping + dephasing Kraus maps to a density matrix.

    Dimensions that are not a power of two are padded into the smallest
    qubit register; both channels only move weight toward lower indices, so
    the embedded block is closed and the trace is preserved exactly.
    """
    r = np.asarray(rho, dtype=complex)
    if r.ndim != 2 or r.shape[0] != r.shape[1] or r.shape[0] < 1:
        raise InvalidFactorization(f"density matrix must be square, got {r.shape}")
    dim = r.shape[0]
    k = _qubit_count_for(dim, qubit_count)
    full = 2**k
    if full != dim:
        padded = np.zeros((full, full), dtype=complex)
        padded[:dim, :dim] = r
        r = padded
    kraus = _single_qubit_kraus(noise)
    for q in range(k):
        left = np.eye(2**q, dtype=complex)
        right = np.eye(2 ** (k - q - 1), dtype=complex)
        ops = [np.kron(np.kron(left, kq), right) for kq in kraus]
        r = sum(op @ r @ op.conj().T for op in ops)
    return r[:dim, :dim]


def readout_confusion(probs, flip: float, qubit_count: int | None = None) -> np.ndarray:
    """Independent per-bit readout flips applied to a probability vector.

    For non-power-of-two lengths the vector is padded into the qubit
    register, flipped, cropped, and renormalized (flips can leak into the
    padding levels).
    """
    p = np.asarray(probs, dtype=float).ravel()
    if flip == 0.0:
        return p.copy()
    dim = p.size
    k = _qubit_count_for(dim, qubit_count)
    full = 2**k
    work = np.zeros(full)
    work[:dim] = p
    m = np.array([[1 - flip, flip], [flip, 1 - flip]])
    conf = np.ones((1, 1))
    for _ in range(k):
        conf = np.kron(conf, m)
    out = conf @ work
    out = out[:dim]
    return out / out.sum()


@dataclass(frozen=True)
class ExperimentRecord:
    """Everything measured in one imaginary-time run.

    ``extended_probs`` is indexed ancilla-major (index = a*N + beta, the
    reservoir bit first); ``normalized_probs`` are the reservoir-0
    occupancies renormalized to the system; ``energy`` is <H> of the
    post-selected state after the final repetition.
    """

    system_dim: int
    extended_probs: np.ndarray
    postselect_prob: float
    normalized_probs: np.ndarray
    energy: float
    shot_counts: np.ndarray
    shots: int
    seed: int
    repetitions_completed: int

    def basis_labels(self) -> list[str]:
        return basis_labels(self.system_dim)


def basis_labels(system_dim: int) -> list[str]:
    """Labels for the extended basis: bitstrings "ab" for a single system
    qubit (reservoir digit first), Fock indices "0".."2N-1" otherwise."""
    if system_dim == 2:
        return [f"{a}{b}" for a in (0, 1) for b in (0, 1)]
    return [str(i) for i in range(2 * system_dim)]


def _run_pure(op, u, psi0, repetitions):
    state = normalized_state(psi0)
    extended_probs = None
    p0 = None
    for rep in range(1, repetitions + 1):
        ext = apply_step(extend_with_ancilla(state), u)
        if rep == repetitions:
            extended_probs = np.abs(ext) ** 2
        try:
            state, p0 = postselect_ancilla0(ext)
        except PostselectionImpossible as exc:
            raise PostselectionImpossible(
                f"repetition {rep}: {exc}", probability=exc.probability, repetition=rep
            ) from None
    energy = energy_expectation(state, op)
    return extended_probs, p0, energy


def _run_density(op, u, psi0, repetitions, noise):
    n = op.dim
    state = normalized_state(psi0)
    rho = np.outer(state, state.conj())
    extended_probs = None
    p0 = None
    for rep in range(1, repetitions + 1):
        ext = np.zeros((2 * n, 2 * n), dtype=complex)
        ext[:n, :n] = rho
        ext = u.matrix @ ext @ u.matrix.conj().T
        ext = apply_channel(ext, noise)
        if rep == repetitions:
            extended_probs = np.real(np.diag(ext)).clip(min=0.0)
        block = ext[:n, :n]
        p0 = float(np.real(np.trace(block)))
        if p0 < POSTSELECT_FLOOR:
            raise PostselectionImpossible(
                f"repetition {rep}: reservoir-0 probability {p0:.3e}",
                probability=p0,
                repetition=rep,
            )
        rho = block / p0
    energy = float(np.real(np.trace(rho @ op.matrix)))
    return extended_probs, p0, energy, rho


def run_itp(
    op: HermitianOperator,
    params: ItpParams,
    psi0,
    repetitions: int = 1,
    shots: int = 0,
    seed: int = 42,
    noise: NoiseParams | None = None,
) -> ExperimentRecord:
    """Run the full imaginary-time loop and collect an ExperimentRecord.

    Each repetition extends the system with a fresh reservoir |0>, applies
    the dilation, and conditions on reservoir 0 before the next round. The
    recorded probabilities come from the final repetition; shot counts
    (shots = 0 skips sampling) are drawn from that distribution. Passing a
    NoiseParams (even all-zero) switches to the density-matrix path.

    Pure given (inputs, seed): repeated calls reproduce identical records.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    u = build_dilation(op, params)
    if noise is None:
        extended, p0, energy = _run_pure(op, u, psi0, repetitions)
    else:
        extended, p0, energy, _ = _run_density(op, u, psi0, repetitions, noise)
        if noise.readout_flip > 0.0:
            extended = readout_confusion(extended, noise.readout_flip)
            p0 = float(extended[: op.dim].sum())
    total = extended.sum()
    if abs(total - 1.0) > 1e-9:
        raise InvalidDistribution(f"extended probabilities sum to {total!r}")
    extended = extended / total
    kept = extended[: op.dim]
    normalized = kept / kept.sum()
    counts = sample_shots(extended, shots, seed)
    extended.setflags(write=False)
    normalized.setflags(write=False)
    counts.setflags(write=False)
    return ExperimentRecord(
        system_dim=op.dim,
        extended_probs=extended,
        postselect_prob=float(kept.sum()),
        normalized_probs=normalized,
        energy=energy,
        shot_counts=counts,
        shots=shots,
        seed=seed,
        repetitions_completed=repetitions,
    )


def state_fidelity(a, b) -> float:
    """|<a|b>|^2 for normalized state vectors."""
    va = normalized_state(a)
    vb = normalized_state(b)
    return float(abs(va.conj() @ vb) ** 2)
