"""Per-physicist state assignment and the agreement machinery.

A Perspective is a physicist's view of the world: the set of systems she
models quantum mechanically (her cut), the state she assigns to them, and
the record of outcomes she has conditioned on. On top of that sit the
support-containment agreement test, a marginal-feasibility solver with
analytic infeasibility certificates, certainty extraction, and the
inference rule that collapses nested certainty statements.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .infotheory import (
    maassen_uffink_bound,
    measured_conditional_entropy,
    mutual_information,
)
from .qcore import (
    DensityState,
    InvariantViolation,
    Outcome,
    ProjectiveBasis,
    QuantumError,
    SystemLabel,
    computational_basis,
    diagonal_basis,
    embed_operator,
    trace_distance,
)

FEASIBLE = "FEASIBLE"
INFEASIBLE = "INFEASIBLE"
UNDECIDED = "UNDECIDED"

ZERO_PROBABILITY_CUTOFF = 1e-12
CERTAINTY_TOLERANCE = 1e-9
SUPPORT_EIG_CUTOFF = 1e-10
SUPPORT_LEAK_TOLERANCE = 1e-9
RESIDUAL_FEASIBLE = 1e-7
PLATEAU_RESIDUAL_FLOOR = 1e-4
PLATEAU_WINDOW = 200
PLATEAU_RELATIVE_CHANGE = 1e-12
DEFAULT_MAX_ITERATIONS = 4000


class ZeroProbabilityError(QuantumError):
    """Conditioning on an outcome whose probability is numerically zero."""


class ClassicalityError(QuantumError):
    """Nested-certainty collapse attempted on a non-classical inner record."""


@dataclass(frozen=True)
class Perspective:
    """A physicist's cut, her state over it, and her conditioning history."""

    owner: str
    cut: frozenset[SystemLabel]
    state: DensityState
    conditioning_log: tuple[tuple[SystemLabel, int], ...] = ()

    def __post_init__(self) -> None:
        if not self.owner:
            raise InvariantViolation("perspective owner must be named")
        object.__setattr__(self, "cut", frozenset(self.cut))
        if set(self.state.systems) != set(self.cut):
            raise InvariantViolation("perspective state must live exactly on the cut")
        for label in self.cut:
            if label.name == self.owner:
                raise InvariantViolation(
                    f"{self.owner} cannot appear inside their own cut"
                )

    def marginal(self, keep: Iterable[SystemLabel | str]) -> DensityState:
        return self.state.marginal(keep)

    def __repr__(self) -> str:
        names = ",".join(sorted(s.name for s in self.cut))
        return f"Perspective({self.owner}; cut={{{names}}}; log={len(self.conditioning_log)})"


def condition_on(
    p: Perspective,
    register: SystemLabel,
    outcome: int,
    basis: Optional[ProjectiveBasis] = None,
) -> Perspective:
    """Bayesian update on a projective outcome of one register in the cut.

    The register stays in the cut (its post-update state is the projected
    one), so conditioning twice on the same deterministic outcome is a
    no-op. A basis other than the computational one may be supplied.
    """
    if register not in p.cut:
        raise QuantumError(f"register {register.name} is not inside {p.owner}'s cut")
    if basis is None:
        basis = computational_basis(register)
    elif basis.target != register:
        raise QuantumError("basis target must be the conditioned register")
    if not 0 <= outcome < basis.size:
        raise QuantumError(f"outcome index {outcome} out of range for {register.name}")
    v = basis.vector(outcome)
    proj = embed_operator(np.outer(v, v.conj()), [register], p.state.systems)
    updated = proj @ p.state.matrix @ proj
    prob = float(np.real(np.trace(updated)))
    if prob <= ZERO_PROBABILITY_CUTOFF:
        raise ZeroProbabilityError(
            f"outcome {outcome} of {register.name} has probability {prob:.3e}"
        )
    new_state = DensityState(p.state.systems, updated / prob)
    return Perspective(
        owner=p.owner,
        cut=p.cut,
        state=new_state,
        conditioning_log=p.conditioning_log + ((register, outcome),),
    )


def _support_projector(matrix: np.ndarray, rel_cutoff: float = SUPPORT_EIG_CUTOFF) -> np.ndarray:
    """Spectral projector onto eigenvalues above a relative cutoff."""
    eigvals, eigvecs = np.linalg.eigh(matrix)
    top = float(eigvals[-1])
    if top <= 0.0:
        return np.zeros_like(matrix)
    keep = eigvals > rel_cutoff * top
    v = eigvecs[:, keep]
    return v @ v.conj().T


def can_agree(p: Perspective, psi: DensityState) -> bool:
    """Support containment of psi within p's assignment, on every overlap.

    True iff for every nonempty subsystem T of the cut on which psi is
    defined, supp(psi_T) is contained in supp(rho^P_T); tested by leaking
    psi_T through the complement of rho's spectral support projector.
    """
    overlap = [s for s in psi.systems if s in p.cut]
    if not overlap:
        raise QuantumError("perspective and candidate state share no subsystem")
    for r in range(1, len(overlap) + 1):
        for subset in itertools.combinations(overlap, r):
            rho_t = p.state.marginal(subset).matrix
            psi_t = psi.marginal(subset).matrix
            komp = np.eye(rho_t.shape[0]) - _support_projector(rho_t)
            leak = komp @ psi_t @ komp
            if float(np.max(np.abs(leak))) > SUPPORT_LEAK_TOLERANCE:
                return False
    return True


@dataclass(frozen=True)
class MarginalConstraintSet:
    """A family of marginal targets over subsets of a global system list."""

    constraints: tuple[tuple[tuple[SystemLabel, ...], DensityState], ...]
    global_systems: tuple[SystemLabel, ...]

    def __post_init__(self) -> None:
        glob = tuple(self.global_systems)
        if len(set(glob)) != len(glob):
            raise InvariantViolation("duplicate global systems")
        if not self.constraints:
            raise InvariantViolation("constraint set is empty")
        for subsystems, target in self.constraints:
            if not subsystems:
                raise InvariantViolation("empty subsystem set in constraint")
            if tuple(target.systems) != tuple(subsystems):
                raise InvariantViolation(
                    "target state systems must match the declared subsystem set"
                )
            for s in subsystems:
                if s not in glob:
                    raise QuantumError(
                        f"constrained system {s.name} missing from the global list"
                    )

    @classmethod
    def from_targets(
        cls,
        targets: Sequence[DensityState],
        global_systems: Optional[Sequence[SystemLabel]] = None,
    ) -> "MarginalConstraintSet":
        if global_systems is None:
            seen: list[SystemLabel] = []
            for t in targets:
                for s in t.systems:
                    if s not in seen:
                        seen.append(s)
            global_systems = seen
        cons = tuple((tuple(t.systems), t) for t in targets)
        return cls(constraints=cons, global_systems=tuple(global_systems))

    @property
    def joint_dim(self) -> int:
        d = 1
        for s in self.global_systems:
            d *= s.dim
        return d


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of the marginal agreement solver."""

    verdict: str
    residual: float
    iterations: int
    certificate: Optional[str] = None
    witness: Optional[DensityState] = None
    mode: str = "none"
    notes: str = ""

    def __post_init__(self) -> None:
        if self.verdict not in (FEASIBLE, INFEASIBLE, UNDECIDED):
            raise InvariantViolation(f"unknown verdict {self.verdict!r}")
        if self.verdict == FEASIBLE and self.witness is None:
            raise InvariantViolation("FEASIBLE report requires a witness state")
        if self.verdict == INFEASIBLE and self.certificate is None:
            if "plateau" not in self.notes:
                raise InvariantViolation(
                    "INFEASIBLE without certificate must document a residual plateau"
                )

    def to_dict(self, include_witness: bool = False) -> dict:
        out: dict = {
            "verdict": self.verdict,
            "residual": self.residual,
            "iterations": self.iterations,
            "certificate": self.certificate,
            "mode": self.mode,
            "notes": self.notes,
        }
        if include_witness and self.witness is not None:
            m = self.witness.matrix
            out["witness"] = {
                "systems": [s.name for s in self.witness.systems],
                "real": m.real.tolist(),
                "imag": m.imag.tolist(),
            }
        return out


def _matrix_marginal(
    matrix: np.ndarray, systems: Sequence[SystemLabel], keep: Sequence[SystemLabel]
) -> np.ndarray:
    """Partial trace of a raw (not necessarily valid-state) matrix."""
    n = len(systems)
    dims = [s.dim for s in systems]
    keep_idx = [systems.index(s) for s in keep]
    letters = string.ascii_letters
    row = list(letters[:n])
    col = list(letters[n : 2 * n])
    for i in range(n):
        if i not in keep_idx:
            col[i] = row[i]
    out = "".join(row[i] for i in keep_idx) + "".join(col[i] for i in keep_idx)
    tens = matrix.reshape(dims + dims)
    reduced = np.einsum("".join(row + col) + "->" + out, tens)
    d = int(np.prod([systems[i].dim for i in keep_idx])) if keep_idx else 1
    return reduced.reshape(d, d)


def _psd_project(matrix: np.ndarray) -> np.ndarray:
    herm = 0.5 * (matrix + matrix.conj().T)
    eigvals, eigvecs = np.linalg.eigh(herm)
    clipped = np.clip(eigvals, 0.0, None)
    return (eigvecs * clipped) @ eigvecs.conj().T


def _pure_marginal_certificate(cset: MarginalConstraintSet) -> Optional[str]:
    """A pure target extended by a pure, correlated target is unextendable."""
    cons = cset.constraints
    for i, (sub_i, tgt_i) in enumerate(cons):
        if not tgt_i.is_pure():
            continue
        for j, (sub_j, tgt_j) in enumerate(cons):
            if j == i or not tgt_j.is_pure():
                continue
            if not (set(sub_i) < set(sub_j)):
                continue
            marg = tgt_j.marginal(sub_i)
            if marg.purity() < 1.0 - 1e-9:
                names_i = ",".join(s.name for s in sub_i)
                names_j = ",".join(s.name for s in sub_j)
                return (
                    "pure marginal of entangled pure state: the pure target on "
                    f"{{{names_i}}} cannot coincide with the mixed marginal of the "
                    f"pure correlated target on {{{names_j}}}"
                )
    return None


def _monogamy_certificate(cset: MarginalConstraintSet) -> Optional[str]:
    """Two near-maximal mutual-information claims on one shared qubit clash.

    I(s:A) + I(s:C) <= 2 H(s) <= 2 for a qubit s and disjoint A, C, so a
    pair of targets each claiming at least 2 - 1e-6 bits with the same
    shared qubit cannot extend to any joint state.
    """
    cons = cset.constraints
    for i, j in itertools.combinations(range(len(cons)), 2):
        sub_i, tgt_i = cons[i]
        sub_j, tgt_j = cons[j]
        for shared in set(sub_i) & set(sub_j):
            if shared.dim != 2:
                continue
            rest_i = [s for s in sub_i if s != shared]
            rest_j = [s for s in sub_j if s != shared]
            if not rest_i or not rest_j:
                continue
            if set(rest_i) & set(rest_j):
                continue
            mi_i = mutual_information(tgt_i, [shared], rest_i)
            mi_j = mutual_information(tgt_j, [shared], rest_j)
            if mi_i >= 2.0 - 1e-6 and mi_j >= 2.0 - 1e-6:
                ni = ",".join(s.name for s in rest_i)
                nj = ",".join(s.name for s in rest_j)
                return (
                    f"monogamy of entanglement: qubit {shared.name} cannot be "
                    f"maximally entangled with both {{{ni}}} ({mi_i:.6f} bits) "
                    f"and {{{nj}}} ({mi_j:.6f} bits)"
                )
    return None


def _entropic_certificate(cset: MarginalConstraintSet) -> Optional[str]:
    """Perfect records of two mutually unbiased observables cannot coexist.

    If one target makes the computational outcome of a shared qubit
    perfectly predictable from its side systems and another target does the
    same for the diagonal outcome from disjoint side systems, any joint
    extension would drive both measured conditional entropies to zero and
    violate the uncertainty bound for that basis pair.
    """
    cons = cset.constraints
    for i, j in itertools.permutations(range(len(cons)), 2):
        sub_i, tgt_i = cons[i]
        sub_j, tgt_j = cons[j]
        for shared in set(sub_i) & set(sub_j):
            if shared.dim != 2:
                continue
            rest_i = [s for s in sub_i if s != shared]
            rest_j = [s for s in sub_j if s != shared]
            if not rest_i or not rest_j:
                continue
            if set(rest_i) & set(rest_j):
                continue
            b1 = computational_basis(shared)
            b2 = diagonal_basis(shared)
            bound = maassen_uffink_bound(b1, b2)
            if bound <= 1e-6:
                continue
            h1 = measured_conditional_entropy(tgt_i, b1, rest_i)
            h2 = measured_conditional_entropy(tgt_j, b2, rest_j)
            if h1 <= CERTAINTY_TOLERANCE and h2 <= CERTAINTY_TOLERANCE:
                ni = ",".join(s.name for s in rest_i)
                nj = ",".join(s.name for s in rest_j)
                return (
                    f"entropic uncertainty: {{{ni}}} predicts the computational "
                    f"outcome of {shared.name} perfectly and {{{nj}}} predicts the "
                    f"diagonal outcome perfectly, but the uncertainty bound for "
                    f"that basis pair is {bound:g} bits"
                )
    return None


def _find_certificate(cset: MarginalConstraintSet) -> Optional[str]:
    for finder in (
        _pure_marginal_certificate,
        _monogamy_certificate,
        _entropic_certificate,
    ):
        cert = finder(cset)
        if cert is not None:
            return cert
    return None


def _dykstra(
    dim: int,
    affine_steps: Sequence[Callable[[np.ndarray], np.ndarray]],
    residual_fn: Callable[[np.ndarray], float],
    max_iterations: int,
) -> tuple[str, float, int, np.ndarray]:
    """Cyclic projections (affine sets plainly, PSD cone with correction).

    Returns (status, residual, iterations, iterate) with status one of
    "converged", "plateau", "maxed". The iterate is PSD with unit trace.
    """
    x = np.eye(dim, dtype=complex) / dim
    correction = np.zeros((dim, dim), dtype=complex)
    history: list[float] = []
    residual = residual_fn(x)
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        for step in affine_steps:
            x = step(x)
        shifted = x + correction
        x = _psd_project(shifted)
        correction = shifted - x
        tr = float(np.real(np.trace(x)))
        z = x / tr if tr > 1e-12 else np.eye(dim, dtype=complex) / dim
        residual = residual_fn(z)
        history.append(residual)
        if residual < RESIDUAL_FEASIBLE:
            return "converged", residual, iterations, z
        if len(history) > PLATEAU_WINDOW:
            old = history[-1 - PLATEAU_WINDOW]
            change = abs(residual - old) / max(residual, 1e-300)
            if change < PLATEAU_RELATIVE_CHANGE and residual > PLATEAU_RESIDUAL_FLOOR:
                return "plateau", residual, iterations, z
    tr = float(np.real(np.trace(x)))
    z = x / tr if tr > 1e-12 else np.eye(dim, dtype=complex) / dim
    return "maxed", residual_fn(z), iterations, z


def _solve_exact(
    cset: MarginalConstraintSet, max_iterations: int
) -> tuple[str, float, int, np.ndarray]:
    """Alternating projections onto the exact-marginal affine sets and PSD."""
    glob = list(cset.global_systems)
    dim = cset.joint_dim

    def make_step(subsystems: tuple[SystemLabel, ...], target: DensityState):
        rest = [s for s in glob if s not in subsystems]
        d_rest = 1
        for s in rest:
            d_rest *= s.dim
        tmat = target.matrix

        def step(x: np.ndarray) -> np.ndarray:
            x = 0.5 * (x + x.conj().T)
            marg = _matrix_marginal(x, glob, list(subsystems))
            delta = (tmat - marg) / d_rest
            return x + embed_operator(delta, list(subsystems), glob)

        return step

    steps = [make_step(sub, tgt) for sub, tgt in cset.constraints]

    def residual(z: np.ndarray) -> float:
        return max(
            trace_distance(_matrix_marginal(z, glob, list(sub)), tgt.matrix)
            for sub, tgt in cset.constraints
        )

    return _dykstra(dim, steps, residual, max_iterations)


def _solve_support(
    cset: MarginalConstraintSet, max_iterations: int
) -> tuple[str, float, int, np.ndarray]:
    """Alternating projections for the support-containment relaxation.

    Each target contributes the affine constraint tr(X (K ⊗ 1)) = 0 with
    K the complement of the target's support projector; together with
    positivity this is exactly supp containment on every overlap.
    """
    glob = list(cset.global_systems)
    dim = cset.joint_dim
    operators: list[np.ndarray] = []
    for sub, tgt in cset.constraints:
        proj = _support_projector(tgt.matrix)
        komp = np.eye(tgt.dim) - proj
        if float(np.max(np.abs(komp))) < 1e-14:
            continue
        operators.append(embed_operator(komp, list(sub), glob))

    def trace_step(x: np.ndarray) -> np.ndarray:
        x = 0.5 * (x + x.conj().T)
        return x + (1.0 - np.trace(x)) * np.eye(dim) / dim

    steps: list[Callable[[np.ndarray], np.ndarray]] = [trace_step]
    for a in operators:
        norm_sq = float(np.real(np.sum(a * a)))

        def step(x: np.ndarray, a: np.ndarray = a, norm_sq: float = norm_sq) -> np.ndarray:
            x = 0.5 * (x + x.conj().T)
            inner = float(np.real(np.trace(a @ x)))
            return x - (inner / norm_sq) * a

        steps.append(step)

    if not operators:
        # Every target has full support; the maximally mixed state agrees.
        return "converged", 0.0, 0, np.eye(dim, dtype=complex) / dim

    def residual(z: np.ndarray) -> float:
        return max(abs(float(np.real(np.trace(a @ z)))) for a in operators)

    return _dykstra(dim, steps, residual, max_iterations)


def agreement_feasible(
    cset: MarginalConstraintSet,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> FeasibilityReport:
    """Decide whether one joint state can honour every marginal claim.

    Analytic certificates are checked first and carry the proof burden for
    an INFEASIBLE verdict. Otherwise an exact-marginal Dykstra pass runs;
    on convergence the witness reproduces every target to within 1e-7
    trace distance. If exact marginals are unattainable the solver falls
    back to the support-containment relaxation, which is the agreement
    criterion itself; INFEASIBLE without a certificate requires that
    relaxation to plateau above 1e-4.
    """
    certificate = _find_certificate(cset)
    status_a, res_a, iters_a, iterate_a = _solve_exact(cset, max_iterations)
    if certificate is not None:
        if status_a == "converged":
            raise InvariantViolation(
                "analytic certificate contradicted by a converged exact solve"
            )
        status_b, res_b, iters_b, _ = _solve_support(cset, max_iterations)
        if status_b == "converged":
            raise InvariantViolation(
                "analytic certificate contradicted by a converged support solve"
            )
        return FeasibilityReport(
            verdict=INFEASIBLE,
            residual=res_b,
            iterations=iters_a + iters_b,
            certificate=certificate,
            witness=None,
            mode="support",
            notes=(
                f"exact-marginal residual {res_a:.3e} after {iters_a} iterations; "
                f"support residual {res_b:.3e} after {iters_b} iterations"
            ),
        )

    if status_a == "converged":
        witness = DensityState(cset.global_systems, iterate_a)
        for sub, tgt in cset.constraints:
            d = trace_distance(witness.marginal(sub), tgt)
            if d >= RESIDUAL_FEASIBLE:
                raise InvariantViolation(
                    "converged witness fails its marginal check"
                )
        return FeasibilityReport(
            verdict=FEASIBLE,
            residual=res_a,
            iterations=iters_a,
            certificate=None,
            witness=witness,
            mode="exact",
            notes="witness reproduces every marginal target",
        )

    status_b, res_b, iters_b, iterate_b = _solve_support(cset, max_iterations)
    total_iters = iters_a + iters_b
    if status_b == "converged":
        witness = DensityState(cset.global_systems, iterate_b)
        return FeasibilityReport(
            verdict=FEASIBLE,
            residual=res_b,
            iterations=total_iters,
            certificate=None,
            witness=witness,
            mode="support",
            notes=(
                f"exact marginals unattainable (residual {res_a:.3e}); a state "
                "inside every target's support exists, which is agreement"
            ),
        )
    if status_b == "plateau":
        return FeasibilityReport(
            verdict=INFEASIBLE,
            residual=res_b,
            iterations=total_iters,
            certificate=None,
            witness=None,
            mode="support",
            notes=(
                f"residual plateau at {res_b:.3e} (relative change below "
                f"{PLATEAU_RELATIVE_CHANGE:g} over {PLATEAU_WINDOW} iterations)"
            ),
        )
    return FeasibilityReport(
        verdict=UNDECIDED,
        residual=res_b,
        iterations=total_iters,
        certificate=None,
        witness=None,
        mode="support",
        notes=f"no convergence or plateau within {max_iterations} iterations",
    )


def certainty(p: Perspective, basis: ProjectiveBasis) -> Optional[Outcome]:
    """The outcome predicted with probability one, if there is one."""
    if basis.target not in p.cut:
        raise QuantumError(f"basis target {basis.target.name} is outside the cut")
    marg = p.state.marginal([basis.target]).matrix
    probs = [
        float(np.real(basis.vector(i).conj() @ marg @ basis.vector(i)))
        for i in range(basis.size)
    ]
    best = int(np.argmax(probs))
    if probs[best] >= 1.0 - CERTAINTY_TOLERANCE:
        return Outcome(register=basis.target.name, value=best, probability=probs[best])
    return None


@dataclass(frozen=True)
class CertaintyStatement:
    """Nested certainty: chain[0] is certain that chain[1] is certain that ...

    ... the measurement of `target` in basis `basis_name` gave `outcome`.
    """

    chain: tuple[str, ...]
    basis_name: str
    target: SystemLabel
    outcome: int

    def __post_init__(self) -> None:
        if not self.chain:
            raise InvariantViolation("certainty chain must be non-empty")

    @property
    def depth(self) -> int:
        return len(self.chain)

    def describe(self) -> str:
        nested = " is certain that ".join(self.chain)
        return (
            f"{nested} is certain that measuring {self.target.name} in the "
            f"{self.basis_name} basis gives outcome {self.outcome}"
        )


def is_classical(
    state: DensityState,
    basis_matrix: Optional[np.ndarray] = None,
    atol: float = 1e-9,
) -> bool:
    """True when the state is diagonal in the given (default computational) basis."""
    m = state.matrix
    if basis_matrix is not None:
        m = basis_matrix.conj().T @ m @ basis_matrix
    off = m - np.diag(np.diag(m))
    return float(np.max(np.abs(off))) <= atol


def apply_assumption_c(
    s: CertaintyStatement, classicality_check: bool
) -> CertaintyStatement:
    """Drop the innermost link of a certainty chain.

    Valid only when the outer physicist describes the inner one classically;
    the caller passes the result of that classicality check. Theorem
    verifiers toggle this rule on to reproduce the paradoxes and off to
    show that no contradiction arises without it.
    """
    if s.depth < 2:
        raise QuantumError("certainty chain too short to collapse")
    if not classicality_check:
        raise ClassicalityError(
            "inner physicist is not described classically; the collapse rule "
            "does not apply"
        )
    return replace(s, chain=s.chain[:-1])
