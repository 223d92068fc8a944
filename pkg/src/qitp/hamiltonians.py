"""Benchmark Hamiltonians: hydrogen in a two-Gaussian basis, two-neutron spins.

Hydrogen: the radial 1s problem expanded over the two *primitive* scaled
Gaussians of the STO-2G fit. All integrals are closed forms for normalized
nucleus-centered 1s Gaussians:

    S(a, b) = (2 sqrt(ab) / (a + b))^(3/2)
    T(a, b) = 3ab / (a + b) * S(a, b)
    V(a, b) = -Z * 2 sqrt((a + b) / pi) * S(a, b)

The non-orthogonal pair is orthonormalized before use. The default is the
canonical transform X = V_S s^(-1/2) (overlap eigenbasis, ascending), which
is the convention that reproduces the reference occupation tables; the
symmetric variant X = S^(-1/2) is available as well. Either way
X^dag S X = I and the spectrum equals the generalized spectrum of (H, S).

Two neutrons at fixed separation: the spin-dependent interaction
``a1 * sum_k s1_k s2_k + sum_jk s1_j a2[j,k] s2_k`` over Pauli operators,
with a free vector coupling a1 and symmetric tensor coupling a2 (the radial
profiles behind them are inputs, not computed here).

Hamiltonians round-trip through a small JSON schema; see
:func:`save_hamiltonian` / :func:`load_hamiltonian`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import (
    DimensionError,
    NonHermitianInput,
    ParseError,
    SingularOverlap,
)
from .linalg import (
    MAX_DIM,
    HermitianOperator,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    eigh,
    kron,
    max_abs,
)

PAULI_VECTOR = (PAULI_X, PAULI_Y, PAULI_Z)


def gaussian_overlap(alpha: float, beta: float) -> float:
    """Overlap of two normalized 1s Gaussians; symmetric, in (0, 1]."""
    if alpha <= 0 or beta <= 0:
        raise ValueError("Gaussian exponents must be positive")
    return float((2.0 * np.sqrt(alpha * beta) / (alpha + beta)) ** 1.5)


def gaussian_kinetic(alpha: float, beta: float) -> float:
    """Kinetic integral <g_a| -grad^2/2 |g_b> in Hartree; positive."""
    return 3.0 * alpha * beta / (alpha + beta) * gaussian_overlap(alpha, beta)


def gaussian_nuclear(alpha: float, beta: float, charge: float = 1.0) -> float:
    """Nuclear attraction <g_a| -Z/r |g_b> in Hartree; negative, linear in Z."""
    if charge <= 0:
        raise ValueError("nuclear charge must be positive")
    return -charge * 2.0 * np.sqrt((alpha + beta) / np.pi) * gaussian_overlap(alpha, beta)


@dataclass(frozen=True)
class GaussianBasis:
    """Two-Gaussian expansion of a 1s Slater orbital.

    ``exponents`` are for zeta = 1 and are scaled by zeta^2 when the
    Hamiltonian is built; ``coefficients`` enter only the contracted-energy
    diagnostic, not the two-dimensional model space itself.
    """

    exponents: tuple[float, float]
    coefficients: tuple[float, float]
    slater_zeta: float = 1.0

    def __post_init__(self):
        if len(self.exponents) != 2 or len(self.coefficients) != 2:
            raise ValueError("basis needs exactly two primitives")
        if any(a <= 0 for a in self.exponents):
            raise ValueError("exponents must be positive")
        if all(abs(c) == 0 for c in self.coefficients):
            raise ValueError("at least one contraction coefficient must be nonzero")
        if self.slater_zeta <= 0:
            raise ValueError("slater_zeta must be positive")

    def scaled_exponents(self) -> tuple[float, float]:
        z2 = self.slater_zeta**2
        return (z2 * self.exponents[0], z2 * self.exponents[1])

    @classmethod
    def from_dict(cls, doc: dict) -> "GaussianBasis":
        try:
            return cls(
                exponents=tuple(float(a) for a in doc["exponents"]),
                coefficients=tuple(float(c) for c in doc["coefficients"]),
                slater_zeta=float(doc.get("slater_zeta", 1.0)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad Gaussian basis config: {exc}") from exc


def default_hydrogen_basis() -> GaussianBasis:
    """The shipped STO-2G hydrogen parameters (config file, not hard-coded)."""
    raw = json.loads(
        resources.files("qitp.data").joinpath("sto2g_hydrogen.json").read_text()
    )
    return GaussianBasis(
        exponents=tuple(raw["exponents"]),
        coefficients=tuple(raw["coefficients"]),
        slater_zeta=float(raw["slater_zeta"]),
    )


def _raw_hydrogen_matrices(basis: GaussianBasis, charge: float):
    a = basis.scaled_exponents()
    s = np.array([[gaussian_overlap(x, y) for y in a] for x in a])
    h = np.array(
        [
            [gaussian_kinetic(x, y) + gaussian_nuclear(x, y, charge) for y in a]
            for x in a
        ]
    )
    return h, s


def orthonormalize(h_raw, s, method: str = "canonical") -> tuple[np.ndarray, np.ndarray]:
    """Transform a Hamiltonian out of a non-orthogonal basis.

    Returns ``(h_orth, x)`` with ``x^dag s x = I`` and
    ``h_orth = x^dag h_raw x``; the spectrum of ``h_orth`` equals the
    generalized spectrum of ``(h_raw, s)``. ``method`` picks the transform:

    - "canonical": x = V diag(w^-1/2) over the overlap eigenbasis
      (ascending), each eigenvector phased so its last component is
      non-negative. This pins the computational-basis convention under
      which the reference occupation tables are stated.
    - "lowdin": the symmetric square root x = s^(-1/2).

    Raises SingularOverlap when the overlap matrix is numerically singular.
    """
    if method not in ("canonical", "lowdin"):
        raise ValueError("method must be 'canonical' or 'lowdin'")
    h_raw = np.asarray(h_raw, dtype=complex)
    w, v = eigh(s)
    if w[0] < 1e-10:
        raise SingularOverlap(f"overlap matrix has eigenvalue {w[0]:.3e}")
    v = v.copy()
    for k in range(v.shape[1]):
        if v[-1, k].real < 0:
            v[:, k] = -v[:, k]
    x = v * (w**-0.5)
    if method == "lowdin":
        x = x @ v.conj().T
    h_orth = x.conj().T @ h_raw @ x
    h_orth = (h_orth + h_orth.conj().T) / 2.0
    return h_orth, x


def hydrogen_sto2g(
    basis: GaussianBasis | None = None,
    *,
    charge: float = 1.0,
    orthogonalization: str = "canonical",
) -> tuple[HermitianOperator, np.ndarray, np.ndarray]:
    """Hydrogen Hamiltonian on the orthonormalized primitive pair.

    Returns ``(h_orth, overlap, transform)`` with ``h_orth`` in Hartree and
    ``transform^dag overlap transform = I``. The default "canonical"
    orthogonalization is the convention of the reference tables; "lowdin"
    gives the symmetric transform (same spectrum, rotated basis).
    """
    if basis is None:
        basis = default_hydrogen_basis()
    h_raw, s = _raw_hydrogen_matrices(basis, charge)
    h_orth, x = orthonormalize(h_raw, s, orthogonalization)
    op = HermitianOperator.from_matrix(h_orth, units="hartree")
    return op, s, x


def contracted_energy(basis: GaussianBasis | None = None, charge: float = 1.0) -> float:
    """Rayleigh quotient of the fixed contracted function (diagnostic only)."""
    if basis is None:
        basis = default_hydrogen_basis()
    h_raw, s = _raw_hydrogen_matrices(basis, charge)
    d = np.asarray(basis.coefficients, dtype=float)
    return float(d @ h_raw @ d) / float(d @ s @ d)


@dataclass(frozen=True)
class SpinCouplings:
    """Vector and tensor couplings of the two-neutron spin interaction (MeV).

    ``a2`` must be real symmetric; it is accepted as a full matrix because
    the radial functional forms behind it are external inputs.
    """

    a1: float
    a2: np.ndarray

    def __post_init__(self):
        a2 = np.asarray(self.a2, dtype=float)
        if a2.shape != (3, 3):
            raise ValueError(f"a2 must be 3x3, got {a2.shape}")
        if max_abs(a2 - a2.T) > 1e-12:
            raise ValueError("a2 must be symmetric within 1e-12")
        if not np.isfinite(self.a1) or not np.all(np.isfinite(a2)):
            raise ValueError("couplings must be finite")
        object.__setattr__(self, "a2", a2)

    @classmethod
    def from_dict(cls, doc: dict) -> "SpinCouplings":
        try:
            a2 = doc.get("a2", [[0.0] * 3] * 3)
            return cls(a1=float(doc["a1"]), a2=np.asarray(a2, dtype=float))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad spin-coupling config: {exc}") from exc


def two_neutron_sd(couplings: SpinCouplings) -> HermitianOperator:
    """Spin-dependent two-neutron interaction on the 4-dim spin space.

    Basis order |dd>, |du>, |ud>, |uu> (first spin major). Traceless and
    Hermitian for any valid couplings; ``a1`` alone gives the
    singlet/triplet split {-3 a1, a1, a1, a1}.
    """
    v = np.zeros((4, 4), dtype=complex)
    for k in range(3):
        v += couplings.a1 * kron(PAULI_VECTOR[k], PAULI_VECTOR[k])
    for j in range(3):
        for k in range(3):
            if couplings.a2[j, k] != 0.0:
                v += couplings.a2[j, k] * kron(PAULI_VECTOR[j], PAULI_VECTOR[k])
    return HermitianOperator.from_matrix(v, units="mev")


def hamiltonian_to_dict(op: HermitianOperator, provenance: dict | None = None) -> dict:
    """The Hamiltonian JSON schema: dim, units, matrix as [re, im] pairs."""
    doc = {
        "dim": op.dim,
        "units": op.units,
        "matrix": [
            [[float(z.real), float(z.imag)] for z in row] for row in op.matrix
        ],
    }
    if provenance is not None:
        doc["provenance"] = provenance
    return doc


def save_hamiltonian(
    op: HermitianOperator, path, provenance: dict | None = None
) -> None:
    doc = hamiltonian_to_dict(op, provenance)
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def load_hamiltonian(source) -> HermitianOperator:
    """Load a Hamiltonian from a JSON file path, JSON text, or a dict.

    Validates the schema, the dimension range (1..64), and Hermiticity.
    """
    if isinstance(source, dict):
        doc = source
    else:
        text = None
        if isinstance(source, Path) or (
            isinstance(source, str) and not source.lstrip().startswith("{")
        ):
            try:
                text = Path(source).read_text()
            except OSError as exc:
                raise ParseError(f"cannot read {source}: {exc}") from exc
        else:
            text = str(source)
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("Hamiltonian document must be a JSON object")
    for key in ("dim", "units", "matrix"):
        if key not in doc:
            raise ParseError(f"missing required key {key!r}")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1 or dim > MAX_DIM:
        raise DimensionError(f"dim must be an integer in 1..{MAX_DIM}, got {dim!r}")
    units = doc["units"]
    if units not in HermitianOperator.VALID_UNITS:
        raise ParseError(f"units must be one of {HermitianOperator.VALID_UNITS}")
    rows = doc["matrix"]
    try:
        m = np.array(
            [[complex(entry[0], entry[1]) for entry in row] for row in rows],
            dtype=complex,
        )
    except (TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"matrix entries must be [re, im] pairs: {exc}") from exc
    if m.shape != (dim, dim):
        raise DimensionError(f"matrix shape {m.shape} does not match dim {dim}")
    if max_abs(m - m.conj().T) > 1e-10:
        raise NonHermitianInput("matrix is not Hermitian within 1e-10")
    return HermitianOperator.from_matrix(m, units=units)
