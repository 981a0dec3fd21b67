"""Dense operator algebra on labeled tensor-product Hilbert spaces.

Everything downstream (Hamiltonian builders, Lindblad integration, channel
reconstruction) works with plain complex ndarrays wrapped in thin labeled
containers. Spaces are small by construction (two qubits plus one or two
truncated oscillator modes, total dimension <= a few hundred), so all
kernels are dense.

Conventions fixed project-wide:

* qubit basis: |0> is the +1 eigenstate of sigma_z,
* subsystem ordering: qubits first (qubit 1 slowest index), then
  oscillator mode(s), matching ``kron(q1, q2, osc, ...)``,
* all operators are immutable after construction and safe to share
  across processes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

import numpy as np
from scipy.linalg import expm as _scipy_expm

HERMITICITY_TOL = 1e-12

# Pauli matrices in the sigma_z eigenbasis, |0> = +1 eigenstate.
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


class AlgebraError(ValueError):
    """Raised for malformed spaces, operators or states."""


@dataclass(frozen=True)
class Factor:
    """One tensor factor: a qubit (dim 2) or a truncated oscillator mode."""

    kind: str  # "qubit" | "oscillator"
    dim: int

    def __post_init__(self):
        if self.kind not in ("qubit", "oscillator"):
            raise AlgebraError(f"unknown factor kind {self.kind!r}")
        if self.kind == "qubit" and self.dim != 2:
            raise AlgebraError("qubit factors must have dim = 2")
        if self.kind == "oscillator" and self.dim < 2:
            raise AlgebraError("oscillator factors must have dim >= 2")


@dataclass(frozen=True)
class HilbertSpace:
    """Ordered tensor product of qubit and oscillator factors."""

    factors: tuple[Factor, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise AlgebraError("a HilbertSpace needs at least one factor")

    @property
    def total_dim(self) -> int:
        return prod(f.dim for f in self.factors)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.dim for f in self.factors)

    @property
    def qubit_indices(self) -> tuple[int, ...]:
        return tuple(i for i, f in enumerate(self.factors) if f.kind == "qubit")

    @property
    def oscillator_indices(self) -> tuple[int, ...]:
        return tuple(i for i, f in enumerate(self.factors) if f.kind == "oscillator")

    def identity(self) -> np.ndarray:
        return np.eye(self.total_dim, dtype=complex)


def qubits_and_oscillators(n_qubits: int, cutoffs: Sequence[int]) -> HilbertSpace:
    """Standard layout: ``n_qubits`` qubits followed by one oscillator per cutoff."""
    factors = [Factor("qubit", 2) for _ in range(n_qubits)]
    factors += [Factor("oscillator", int(c)) for c in cutoffs]
    return HilbertSpace(tuple(factors))


@dataclass(frozen=True)
class Operator:
    """A dense complex matrix tied to its HilbertSpace."""

    space: HilbertSpace
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        if data.shape != (self.space.total_dim, self.space.total_dim):
            raise AlgebraError(
                f"operator shape {data.shape} does not match space dim "
                f"{self.space.total_dim}"
            )
        if not np.all(np.isfinite(data)):
            raise AlgebraError("operator has non-finite entries")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    def dag(self) -> "Operator":
        return Operator(self.space, self.data.conj().T)

    def __matmul__(self, other: "Operator") -> "Operator":
        self._check_same_space(other)
        return Operator(self.space, self.data @ other.data)

    def __add__(self, other: "Operator") -> "Operator":
        self._check_same_space(other)
        return Operator(self.space, self.data + other.data)

    def __sub__(self, other: "Operator") -> "Operator":
        self._check_same_space(other)
        return Operator(self.space, self.data - other.data)

    def __mul__(self, scalar: complex) -> "Operator":
        return Operator(self.space, self.data * scalar)

    __rmul__ = __mul__

    def _check_same_space(self, other: "Operator") -> None:
        if self.space != other.space:
            raise AlgebraError("operators live on different spaces")

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.data - self.data.conj().T)))

    def assert_hermitian(self, tol: float = HERMITICITY_TOL) -> "Operator":
        scale = max(float(np.max(np.abs(self.data))), 1.0)
        if self.hermiticity_defect() > tol * scale:
            raise AlgebraError("operator is not Hermitian within tolerance")
        return self


@dataclass(frozen=True)
class DensityState:
    """Hermitian, unit-trace, positive-semidefinite operator on a space."""

    space: HilbertSpace
    data: np.ndarray = field(repr=False)

    TRACE_TOL = 1e-8
    HERM_TOL = 1e-8
    EIG_TOL = -1e-7

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        if data.shape != (self.space.total_dim, self.space.total_dim):
            raise AlgebraError("density matrix shape does not match space")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    def validate(self) -> "DensityState":
        if not np.all(np.isfinite(self.data)):
            raise AlgebraError("density matrix has non-finite entries")
        if abs(np.trace(self.data) - 1.0) > self.TRACE_TOL:
            raise AlgebraError(f"trace deviates from 1 by {abs(np.trace(self.data) - 1.0):.2e}")
        if np.max(np.abs(self.data - self.data.conj().T)) > self.HERM_TOL:
            raise AlgebraError("density matrix is not Hermitian within tolerance")
        if float(np.linalg.eigvalsh(self.data)[0]) < self.EIG_TOL:
            raise AlgebraError("density matrix has a significantly negative eigenvalue")
        return self

    def purity(self) -> float:
        return float(np.real(np.trace(self.data @ self.data)))


def annihilation(dim: int) -> np.ndarray:
    """Truncated annihilation operator, <n-1|a|n> = sqrt(n)."""
    if dim < 2:
        raise AlgebraError("annihilation needs dim >= 2")
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)


def embed(local_op: np.ndarray, target_factor: int, space: HilbertSpace) -> Operator:
    """Lift a single-factor operator to the full space: id (x) ... op ... (x) id."""
    local_op = np.asarray(local_op, dtype=complex)
    if not 0 <= target_factor < len(space.factors):
        raise AlgebraError(f"factor index {target_factor} out of range")
    d = space.factors[target_factor].dim
    if local_op.shape != (d, d):
        raise AlgebraError(
            f"local operator shape {local_op.shape} does not match factor dim {d}"
        )
    out = np.eye(1, dtype=complex)
    for i, f in enumerate(space.factors):
        out = np.kron(out, local_op if i == target_factor else np.eye(f.dim, dtype=complex))
    return Operator(space, out)


def embed_many(ops: Iterable[tuple[np.ndarray, int]], space: HilbertSpace) -> Operator:
    """Product of embedded single-factor operators (factors must be distinct)."""
    result = Operator(space, space.identity())
    seen = set()
    for op, idx in ops:
        if idx in seen:
            raise AlgebraError("duplicate factor index in embed_many")
        seen.add(idx)
        result = result @ embed(op, idx, space)
    return result


def partial_trace(matrix: np.ndarray, space: HilbertSpace, keep: Sequence[int]) -> np.ndarray:
    """Trace out every factor not listed in ``keep`` (order preserved)."""
    keep = sorted(set(keep))
    dims = space.dims
    n = len(dims)
    if any(k < 0 or k >= n for k in keep):
        raise AlgebraError("keep index out of range")
    tensor = np.asarray(matrix, dtype=complex).reshape(dims + dims)
    # Trace out the dropped factors from the back so axis numbers stay valid.
    current = list(range(n))
    for factor in reversed(range(n)):
        if factor in keep:
            continue
        pos = current.index(factor)
        tensor = np.trace(tensor, axis1=pos, axis2=pos + len(current))
        current.pop(pos)
    d_keep = prod(dims[k] for k in keep)
    return tensor.reshape(d_keep, d_keep)


def expm_apply(a: Operator, b: Operator | None = None) -> Operator:
    """exp(A) if ``b`` is None, else exp(A) B exp(-A).

    Uses scaling-and-squaring; accuracy is validated against a series
    expansion in the test-suite.
    """
    if not np.all(np.isfinite(a.data)):
        raise AlgebraError("matrix exponential of non-finite operator")
    ea = _scipy_expm(a.data)
    if b is None:
        return Operator(a.space, ea)
    a._check_same_space(b)
    ea_inv = _scipy_expm(-a.data)
    return Operator(a.space, ea @ b.data @ ea_inv)


def hermitian_propagator(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i H t) for Hermitian H via eigendecomposition."""
    vals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(-1j * vals * t)) @ vecs.conj().T


def fock_state(space: HilbertSpace, occupations: Sequence[int]) -> np.ndarray:
    """Basis ket |n_0, n_1, ...> over all factors, as a flat vector."""
    if len(occupations) != len(space.factors):
        raise AlgebraError("need one occupation per factor")
    ket = np.array([1.0 + 0.0j])
    for f, n in zip(space.factors, occupations):
        if not 0 <= n < f.dim:
            raise AlgebraError(f"occupation {n} outside factor dim {f.dim}")
        local = np.zeros(f.dim, dtype=complex)
        local[n] = 1.0
        ket = np.kron(ket, local)
    return ket


def coherent_vector(dim: int, alpha: complex) -> np.ndarray:
    """Truncated coherent state |alpha| via the normalized Fock expansion."""
    n = np.arange(dim)
    log_fact = np.cumsum(np.log(np.maximum(n, 1)))
    amps = np.exp(-0.5 * abs(alpha) ** 2) * np.power(complex(alpha), n) / np.exp(0.5 * log_fact)
    vec = amps.astype(complex)
    # Renormalize the truncation remainder so downstream states have unit trace.
    norm = np.linalg.norm(vec)
    if norm == 0.0:
        raise AlgebraError("coherent state amplitude too large for cutoff")
    return vec / norm


def ket_to_density(space: HilbertSpace, ket: np.ndarray) -> DensityState:
    ket = np.asarray(ket, dtype=complex)
    ket = ket / np.linalg.norm(ket)
    return DensityState(space, np.outer(ket, ket.conj()))


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """0.5 * trace-norm of (rho - sigma) for Hermitian arguments."""
    diff = np.asarray(rho) - np.asarray(sigma)
    diff = 0.5 * (diff + diff.conj().T)
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff))))
