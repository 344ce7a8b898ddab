"""Dense state engine for small labelled multi-qubit systems.

Everything downstream (perspectives, protocols, the black-hole model) runs on
the types defined here: labelled subsystems, density operators with explicit
subsystem ordering, projective bases, operator-sum channels, and Haar-random
unitaries. Dimensions are small by design; the dense cap is 12 qubits for
density operators and 14 for pure state vectors.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MAX_QUBITS = 12
MAX_DENSE_DIM = 2**MAX_QUBITS
MAX_PURE_QUBITS = 14

ATOL_HERMITIAN = 1e-10
ATOL_TRACE = 1e-10
ATOL_EIG = 1e-9
ATOL_ORTHONORMAL = 1e-12
ATOL_UNITARY = 1e-10
ATOL_COMPLETENESS = 1e-10


class QuantumError(Exception):
    """Base class for engine errors."""


class InvariantViolation(QuantumError):
    """A state, basis, or channel failed one of its defining invariants."""


@dataclass(frozen=True, order=True)
class SystemLabel:
    """A named finite-dimensional subsystem."""

    name: str
    dim: int = 2

    def __post_init__(self) -> None:
        if not self.name:
            raise InvariantViolation("system name must be non-empty")
        if self.dim < 2:
            raise InvariantViolation(f"system {self.name!r} must have dimension >= 2")


def qubit(name: str) -> SystemLabel:
    return SystemLabel(name, 2)


def qubits(*names: str) -> tuple[SystemLabel, ...]:
    return tuple(SystemLabel(n, 2) for n in names)


class SystemRegistry:
    """Ordered registry of subsystem labels; insertion order is canonical."""

    def __init__(self) -> None:
        self._labels: dict[str, SystemLabel] = {}

    def add(self, label: SystemLabel) -> SystemLabel:
        existing = self._labels.get(label.name)
        if existing is not None:
            if existing != label:
                raise InvariantViolation(
                    f"system {label.name!r} already registered with dim {existing.dim}"
                )
            return existing
        self._labels[label.name] = label
        return label

    def get(self, name: str) -> SystemLabel:
        try:
            return self._labels[name]
        except KeyError:
            raise KeyError(f"unknown system {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._labels

    def labels(self) -> tuple[SystemLabel, ...]:
        return tuple(self._labels.values())

    def index(self, name: str) -> int:
        return list(self._labels).index(name)


def _as_label_tuple(systems: Iterable[SystemLabel]) -> tuple[SystemLabel, ...]:
    out = tuple(systems)
    names = [s.name for s in out]
    if len(set(names)) != len(names):
        raise InvariantViolation(f"duplicate system names in {names}")
    return out


def _dims(systems: Sequence[SystemLabel]) -> tuple[int, ...]:
    return tuple(s.dim for s in systems)


def _total_dim(systems: Sequence[SystemLabel]) -> int:
    d = 1
    for s in systems:
        d *= s.dim
    return d


class DensityState:
    """Density operator over an ordered tuple of labelled subsystems.

    The matrix is validated on construction: Hermitian within 1e-10, unit
    trace within 1e-10, smallest eigenvalue >= -1e-9. A state with an empty
    system tuple is the scalar state [[1.0]] (the trace of everything).
    """

    __slots__ = ("_systems", "_matrix")

    def __init__(
        self,
        systems: Iterable[SystemLabel],
        matrix: np.ndarray,
        *,
        validate: bool = True,
    ) -> None:
        self._systems = _as_label_tuple(systems)
        dim = _total_dim(self._systems)
        if dim > MAX_DENSE_DIM:
            raise InvariantViolation(
                f"dense dimension {dim} exceeds the {MAX_DENSE_DIM} cap"
            )
        mat = np.asarray(matrix, dtype=complex)
        if mat.shape != (dim, dim):
            raise InvariantViolation(
                f"matrix shape {mat.shape} does not match total dimension {dim}"
            )
        self._matrix = mat
        if validate:
            self._check_invariants()

    def _check_invariants(self) -> None:
        mat = self._matrix
        if np.max(np.abs(mat - mat.conj().T)) > ATOL_HERMITIAN:
            raise InvariantViolation("density matrix is not Hermitian within 1e-10")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > ATOL_TRACE:
            raise InvariantViolation(f"trace {tr} deviates from 1 beyond 1e-10")
        if np.min(np.linalg.eigvalsh(mat)) < -ATOL_EIG:
            raise InvariantViolation("density matrix has an eigenvalue below -1e-9")

    @property
    def systems(self) -> tuple[SystemLabel, ...]:
        return self._systems

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    def labels(self) -> tuple[str, ...]:
        return tuple(s.name for s in self._systems)

    def index_of(self, system: SystemLabel | str) -> int:
        name = system if isinstance(system, str) else system.name
        for i, s in enumerate(self._systems):
            if s.name == name:
                return i
        raise KeyError(f"system {name!r} not part of this state")

    def resolve(self, systems: Iterable[SystemLabel | str]) -> tuple[SystemLabel, ...]:
        return tuple(self._systems[self.index_of(s)] for s in systems)

    def purity(self) -> float:
        return float(np.real(np.trace(self._matrix @ self._matrix)))

    def is_pure(self, atol: float = 1e-9) -> bool:
        return self.purity() >= 1.0 - atol

    def marginal(self, keep: Iterable[SystemLabel | str]) -> "DensityState":
        return partial_trace(self, keep)

    def permuted(self, order: Iterable[SystemLabel | str]) -> "DensityState":
        """Reorder subsystems explicitly; the matrix is transposed to match."""
        new = self.resolve(order)
        if set(new) != set(self._systems):
            raise InvariantViolation("permutation must mention every subsystem once")
        perm = [self.index_of(s) for s in new]
        n = len(self._systems)
        dims = _dims(self._systems)
        tens = self._matrix.reshape(dims + dims)
        tens = tens.transpose(perm + [n + p for p in perm])
        d = self.dim
        return DensityState(new, tens.reshape(d, d), validate=False)

    @classmethod
    def from_ket(
        cls, systems: Iterable[SystemLabel], vector: np.ndarray
    ) -> "DensityState":
        v = np.asarray(vector, dtype=complex).reshape(-1)
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > 1e-9:
            raise InvariantViolation(f"ket norm {norm} deviates from 1")
        return cls(systems, np.outer(v, v.conj()))

    @classmethod
    def scalar(cls) -> "DensityState":
        return cls((), np.array([[1.0 + 0j]]))

    def __repr__(self) -> str:
        names = ",".join(self.labels()) or "scalar"
        return f"DensityState({names}; dim={self.dim})"


@dataclass(frozen=True)
class ProjectiveBasis:
    """Orthonormal measurement basis on a single subsystem."""

    target: SystemLabel
    vectors: tuple[tuple[complex, ...], ...]
    name: str = "custom"

    def __post_init__(self) -> None:
        mat = self.matrix()
        if mat.shape != (self.target.dim, self.target.dim):
            raise InvariantViolation(
                f"basis for {self.target.name!r} needs {self.target.dim} vectors "
                f"of dimension {self.target.dim}"
            )
        gram = mat.conj().T @ mat
        if np.max(np.abs(gram - np.eye(self.target.dim))) > ATOL_ORTHONORMAL:
            raise InvariantViolation("basis vectors are not orthonormal within 1e-12")

    def matrix(self) -> np.ndarray:
        """Column j is the j-th basis vector."""
        return np.array(self.vectors, dtype=complex).T

    def vector(self, outcome: int) -> np.ndarray:
        return np.asarray(self.vectors[outcome], dtype=complex)

    @property
    def size(self) -> int:
        return len(self.vectors)


def computational_basis(target: SystemLabel) -> ProjectiveBasis:
    vecs = tuple(
        tuple(1.0 + 0j if i == j else 0.0 + 0j for i in range(target.dim))
        for j in range(target.dim)
    )
    return ProjectiveBasis(target, vecs, name="computational")


def diagonal_basis(target: SystemLabel) -> ProjectiveBasis:
    """The conjugate qubit basis |0bar> = (|0>+|1>)/sqrt2, |1bar> = (|0>-|1>)/sqrt2."""
    if target.dim != 2:
        raise InvariantViolation("diagonal basis is defined for qubits")
    s = 1.0 / np.sqrt(2.0)
    return ProjectiveBasis(target, ((s, s), (s, -s)), name="diagonal")


def rotated_qubit_basis(target: SystemLabel, angle: float, name: str = "rotated") -> ProjectiveBasis:
    c, s = np.cos(angle), np.sin(angle)
    return ProjectiveBasis(target, ((c, s), (-s, c)), name=name)


@dataclass(frozen=True)
class Outcome:
    """One measurement outcome with its Born probability."""

    register: str
    value: int
    probability: float

    def __post_init__(self) -> None:
        if not -1e-12 <= self.probability <= 1.0 + 1e-9:
            raise InvariantViolation(f"probability {self.probability} out of range")


@dataclass(frozen=True)
class Channel:
    """CPTP map in operator-sum form between labelled system tuples."""

    kraus: tuple[np.ndarray, ...]
    input_systems: tuple[SystemLabel, ...]
    output_systems: tuple[SystemLabel, ...]

    def __post_init__(self) -> None:
        din = _total_dim(self.input_systems)
        dout = _total_dim(self.output_systems)
        acc = np.zeros((din, din), dtype=complex)
        for k in self.kraus:
            if k.shape != (dout, din):
                raise InvariantViolation(
                    f"Kraus element shape {k.shape} does not map dim {din} to {dout}"
                )
            acc += k.conj().T @ k
        if np.max(np.abs(acc - np.eye(din))) > ATOL_COMPLETENESS:
            raise InvariantViolation("channel completeness fails within 1e-10")


# ---------------------------------------------------------------------------
# kets


def basis_ket(dim: int, index: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


KET_0 = basis_ket(2, 0)
KET_1 = basis_ket(2, 1)
KET_PLUS = (KET_0 + KET_1) / np.sqrt(2.0)
KET_MINUS = (KET_0 - KET_1) / np.sqrt(2.0)


def bell_phi_plus(a: SystemLabel, b: SystemLabel) -> DensityState:
    v = (np.kron(KET_0, KET_0) + np.kron(KET_1, KET_1)) / np.sqrt(2.0)
    return DensityState.from_ket((a, b), v)


# ---------------------------------------------------------------------------
# operations


def tensor(a: DensityState, b: DensityState) -> DensityState:
    """Kronecker composition; subsystem tuples concatenate and stay disjoint."""
    systems = _as_label_tuple(a.systems + b.systems)
    return DensityState(systems, np.kron(a.matrix, b.matrix), validate=False)


def partial_trace(
    state: DensityState, keep: Iterable[SystemLabel | str]
) -> DensityState:
    """Marginal on `keep`, in the order given; everything else is traced out."""
    kept = state.resolve(keep)
    keep_idx = [state.index_of(s) for s in kept]
    if len(set(keep_idx)) != len(keep_idx):
        raise InvariantViolation("duplicate systems in keep list")
    n = len(state.systems)
    dims = _dims(state.systems)
    letters = string.ascii_letters
    if 2 * n > len(letters):
        raise InvariantViolation("too many subsystems for einsum labels")
    row = list(letters[:n])
    col = list(letters[n : 2 * n])
    for i in range(n):
        if i not in keep_idx:
            col[i] = row[i]
    out = "".join(row[i] for i in keep_idx) + "".join(col[i] for i in keep_idx)
    tens = state.matrix.reshape(dims + dims)
    reduced = np.einsum("".join(row + col) + "->" + out, tens)
    d = _total_dim(kept)
    return DensityState(kept, reduced.reshape(d, d), validate=False)


def _targets_first_perm(state: DensityState, targets: Sequence[SystemLabel]) -> list[int]:
    t_idx = [state.index_of(s) for s in targets]
    rest = [i for i in range(len(state.systems)) if i not in t_idx]
    return t_idx + rest


def apply_unitary(
    state: DensityState,
    unitary: np.ndarray,
    targets: Iterable[SystemLabel | str],
) -> DensityState:
    """Conjugate by a unitary acting on `targets` (in the order given)."""
    tgt = state.resolve(targets)
    u = np.asarray(unitary, dtype=complex)
    dt = _total_dim(tgt)
    if u.shape != (dt, dt):
        raise InvariantViolation(f"unitary shape {u.shape} does not match dim {dt}")
    if np.max(np.abs(u.conj().T @ u - np.eye(dt))) > ATOL_UNITARY:
        raise InvariantViolation("operator is not unitary within 1e-10")
    n = len(state.systems)
    dims = _dims(state.systems)
    perm = _targets_first_perm(state, tgt)
    inv = np.argsort(perm)
    d = state.dim
    dr = d // dt
    tens = state.matrix.reshape(dims + dims)
    tens = tens.transpose(perm + [n + p for p in perm]).reshape(dt, dr, dt, dr)
    tens = np.einsum("ab,bicj,dc->aidj", u, tens, u.conj(), optimize=True)
    perm_dims = [dims[p] for p in perm]
    tens = tens.reshape(perm_dims + perm_dims)
    tens = tens.transpose(list(inv) + [n + i for i in inv])
    return DensityState(state.systems, tens.reshape(d, d), validate=False)


def measure_update(
    state: DensityState, basis: ProjectiveBasis
) -> list[tuple[Outcome, DensityState | None]]:
    """Projective measurement on one subsystem with the conditional update rule.

    For each basis vector |x> the remaining systems get the renormalized state
    proportional to <x| rho |x>; the measured subsystem itself is consumed.
    Outcomes of zero probability carry None instead of a state.
    """
    tgt = state.resolve([basis.target])[0]
    n = len(state.systems)
    dims = _dims(state.systems)
    perm = _targets_first_perm(state, (tgt,))
    rest = [state.systems[p] for p in perm[1:]]
    dr = state.dim // tgt.dim
    tens = state.matrix.reshape(dims + dims)
    tens = tens.transpose(perm + [n + p for p in perm]).reshape(
        tgt.dim, dr, tgt.dim, dr
    )
    results: list[tuple[Outcome, DensityState | None]] = []
    for x in range(basis.size):
        v = basis.vector(x)
        block = np.einsum("i,ikjl,j->kl", v.conj(), tens, v, optimize=True)
        p = float(np.real(np.trace(block)))
        if p <= 1e-12:
            results.append((Outcome(tgt.name, x, max(p, 0.0)), None))
            continue
        post = DensityState(rest, block / p, validate=False) if rest else DensityState.scalar()
        results.append((Outcome(tgt.name, x, p), post))
    return results


def measurement_channel(basis: ProjectiveBasis, record: SystemLabel) -> Channel:
    """CPTP measure-and-record map.

    The target collapses in `basis` and the outcome index is written to the
    fresh `record` system: rho -> sum_x |x><x|_record (x) P_x rho P_x.
    Output ordering is (record, target).
    """
    if record.name == basis.target.name:
        raise InvariantViolation("record register collides with the measured system")
    if record.dim != basis.size:
        raise InvariantViolation(
            f"record dimension {record.dim} must equal basis size {basis.size}"
        )
    kraus = []
    for x in range(basis.size):
        v = basis.vector(x)
        k = np.outer(np.kron(basis_ket(record.dim, x), v), v.conj())
        kraus.append(k)
    return Channel(tuple(kraus), (basis.target,), (record, basis.target))


def apply_channel(state: DensityState, channel: Channel) -> Channel | DensityState:
    """Apply an operator-sum channel on its input systems inside a larger state.

    New output systems are prepended in the channel's declared order; systems
    untouched by the channel keep their relative order afterwards.
    """
    ins = state.resolve(channel.input_systems)
    for out in channel.output_systems:
        if out not in ins and any(s.name == out.name for s in state.systems):
            raise InvariantViolation(
                f"channel output {out.name!r} collides with an existing system"
            )
    n = len(state.systems)
    dims = _dims(state.systems)
    perm = _targets_first_perm(state, ins)
    rest = [state.systems[p] for p in perm[len(ins):]]
    din = _total_dim(ins)
    dout = _total_dim(channel.output_systems)
    dr = state.dim // din
    tens = state.matrix.reshape(dims + dims)
    tens = tens.transpose(perm + [n + p for p in perm]).reshape(din, dr, din, dr)
    acc = np.zeros((dout, dr, dout, dr), dtype=complex)
    for k in channel.kraus:
        acc += np.einsum("ab,bicj,dc->aidj", k, tens, k.conj(), optimize=True)
    out_systems = tuple(channel.output_systems) + tuple(rest)
    d = dout * dr
    return DensityState(out_systems, acc.reshape(d, d), validate=False)


def embed_operator(
    op: np.ndarray,
    op_systems: Sequence[SystemLabel],
    all_systems: Sequence[SystemLabel],
) -> np.ndarray:
    """Pad an operator with identities and permute into `all_systems` order."""
    ops = list(op_systems)
    rest = [s for s in all_systems if s not in ops]
    if len(ops) + len(rest) != len(all_systems):
        raise InvariantViolation("op systems must be a subset of all systems")
    full = np.kron(op, np.eye(_total_dim(rest)))
    order = ops + rest
    n = len(all_systems)
    dims_order = [s.dim for s in order]
    perm = [order.index(s) for s in all_systems]
    tens = full.reshape(dims_order + dims_order)
    tens = tens.transpose(perm + [n + p for p in perm])
    d = _total_dim(all_systems)
    return tens.reshape(d, d)


def controlled_copy(basis: ProjectiveBasis, record: SystemLabel) -> np.ndarray:
    """Unitary dilation of a measurement: copy the basis index onto the record.

    Acts on (target, record); |b_x>|r> -> |b_x>|r + x mod d>. With the record
    blank this is the reversible form of recording the outcome.
    """
    if record.dim != basis.size:
        raise InvariantViolation("record dimension must equal basis size")
    d = record.dim
    shift = np.zeros((d, d, d))
    for x in range(d):
        for r in range(d):
            shift[x, (r + x) % d, r] = 1.0
    u = np.zeros((basis.target.dim * d, basis.target.dim * d), dtype=complex)
    for x in range(basis.size):
        v = basis.vector(x)
        u += np.kron(np.outer(v, v.conj()), shift[x])
    return u


def haar_unitary(dim: int, seed: int | np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix.

    The R-diagonal phases are divided out so the distribution is exactly
    Haar rather than QR-convention biased.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z / np.sqrt(2.0))
    lam = np.diagonal(r).copy()
    lam /= np.abs(lam)
    return q * lam


def trace_distance(a: DensityState | np.ndarray, b: DensityState | np.ndarray) -> float:
    """Standard trace distance 0.5 * ||a - b||_1."""
    ma = a.matrix if isinstance(a, DensityState) else np.asarray(a)
    mb = b.matrix if isinstance(b, DensityState) else np.asarray(b)
    eigs = np.linalg.eigvalsh(ma - mb)
    return float(0.5 * np.sum(np.abs(eigs)))


def state_fidelity_with_ket(state: DensityState, ket: np.ndarray) -> float:
    v = np.asarray(ket, dtype=complex).reshape(-1)
    return float(np.real(v.conj() @ state.matrix @ v))


# ---------------------------------------------------------------------------
# pure-state fast path


class PureState:
    """Global pure state kept as a vector; marginals come out dense.

    Used where a density matrix would be prohibitively large (the black-hole
    model needs 13 qubits). Operations mirror the DensityState ones.
    """

    __slots__ = ("_systems", "_vector")

    def __init__(
        self,
        systems: Iterable[SystemLabel],
        vector: np.ndarray,
        *,
        validate: bool = True,
    ) -> None:
        self._systems = _as_label_tuple(systems)
        dim = _total_dim(self._systems)
        if dim > 2**MAX_PURE_QUBITS:
            raise InvariantViolation(
                f"pure-state dimension {dim} exceeds the 2**{MAX_PURE_QUBITS} cap"
            )
        v = np.asarray(vector, dtype=complex).reshape(-1)
        if v.shape != (dim,):
            raise InvariantViolation(
                f"vector length {v.shape[0]} does not match total dimension {dim}"
            )
        if validate and abs(np.linalg.norm(v) - 1.0) > 1e-9:
            raise InvariantViolation("state vector norm deviates from 1 beyond 1e-9")
        self._vector = v

    @property
    def systems(self) -> tuple[SystemLabel, ...]:
        return self._systems

    @property
    def vector(self) -> np.ndarray:
        return self._vector

    def index_of(self, system: SystemLabel | str) -> int:
        name = system if isinstance(system, str) else system.name
        for i, s in enumerate(self._systems):
            if s.name == name:
                return i
        raise KeyError(f"system {name!r} not part of this state")

    def resolve(self, systems: Iterable[SystemLabel | str]) -> tuple[SystemLabel, ...]:
        return tuple(self._systems[self.index_of(s)] for s in systems)

    def apply_unitary(
        self, unitary: np.ndarray, targets: Iterable[SystemLabel | str]
    ) -> "PureState":
        tgt = self.resolve(targets)
        u = np.asarray(unitary, dtype=complex)
        dt = _total_dim(tgt)
        if u.shape != (dt, dt):
            raise InvariantViolation(f"unitary shape {u.shape} does not match dim {dt}")
        dims = _dims(self._systems)
        perm = [self.index_of(s) for s in tgt]
        perm += [i for i in range(len(dims)) if i not in perm]
        inv = np.argsort(perm)
        tens = self._vector.reshape(dims).transpose(perm)
        shaped = tens.reshape(dt, -1)
        shaped = u @ shaped
        perm_dims = [dims[p] for p in perm]
        tens = shaped.reshape(perm_dims).transpose(inv)
        return PureState(self._systems, tens.reshape(-1), validate=False)

    def _keep_first_matrix(self, keep: Sequence[SystemLabel]) -> np.ndarray:
        """Vector reshaped to (dim_keep, dim_rest) with `keep` leading."""
        dims = _dims(self._systems)
        k_idx = [self.index_of(s) for s in keep]
        rest = [i for i in range(len(dims)) if i not in k_idx]
        perm = k_idx + rest
        dk = _total_dim(keep)
        return self._vector.reshape(dims).transpose(perm).reshape(dk, -1)

    def marginal(self, keep: Iterable[SystemLabel | str]) -> DensityState:
        kept = self.resolve(keep)
        m = self._keep_first_matrix(kept)
        return DensityState(kept, m @ m.conj().T, validate=False)

    def marginal_matrix(self, keep: Iterable[SystemLabel | str]) -> np.ndarray:
        m = self._keep_first_matrix(self.resolve(keep))
        return m @ m.conj().T

    def project(
        self, target: SystemLabel | str, ket: np.ndarray
    ) -> tuple[float, "PureState | None"]:
        """Project one subsystem on a ket; returns (probability, renormalized state)."""
        tgt = self.resolve([target])[0]
        dims = _dims(self._systems)
        i = self.index_of(tgt)
        perm = [i] + [j for j in range(len(dims)) if j != i]
        inv = np.argsort(perm)
        v = np.asarray(ket, dtype=complex).reshape(-1)
        tens = self._vector.reshape(dims).transpose(perm).reshape(tgt.dim, -1)
        amp = v.conj() @ tens
        p = float(np.real(np.vdot(amp, amp)))
        if p <= 1e-12:
            return max(p, 0.0), None
        collapsed = np.outer(v, amp / np.sqrt(p))
        perm_dims = [dims[q] for q in perm]
        out = collapsed.reshape(perm_dims).transpose(inv).reshape(-1)
        return p, PureState(self._systems, out, validate=False)

    def relabeled(self, mapping: dict[str, SystemLabel]) -> "PureState":
        new = tuple(mapping.get(s.name, s) for s in self._systems)
        return PureState(new, self._vector, validate=False)

    def to_density(self) -> DensityState:
        return DensityState(
            self._systems, np.outer(self._vector, self._vector.conj()), validate=False
        )

    @classmethod
    def computational_zero(cls, systems: Iterable[SystemLabel]) -> "PureState":
        labels = _as_label_tuple(systems)
        v = np.zeros(_total_dim(labels), dtype=complex)
        v[0] = 1.0
        return cls(labels, v, validate=False)

    def __repr__(self) -> str:
        return f"PureState({','.join(s.name for s in self._systems)})"
