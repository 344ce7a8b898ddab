"""Entropies, conditional entropies, and the preparation uncertainty bound.

All entropies are in bits (base-2 logarithms). Conditional entropies on
quantum side information may be negative, down to -log2 of the target
dimension for maximal entanglement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from wfsim.qcore import (
    DensityState,
    InvariantViolation,
    ProjectiveBasis,
    SystemLabel,
    apply_channel,
    measurement_channel,
    partial_trace,
)

EIG_CLAMP = -1e-9
EIG_FLOOR = 1e-12


def entropy_of_matrix(matrix: np.ndarray) -> float:
    """von Neumann entropy in bits of a raw density matrix."""
    eigs = np.linalg.eigvalsh(matrix)
    if np.min(eigs) < EIG_CLAMP:
        raise InvariantViolation(
            f"eigenvalue {np.min(eigs)} below the -1e-9 clamp window"
        )
    eigs = np.clip(eigs, 0.0, None)
    eigs = eigs[eigs > EIG_FLOOR]
    return float(-np.sum(eigs * np.log2(eigs)))


def von_neumann_entropy(state: DensityState) -> float:
    """H(rho) = -tr(rho log2 rho), with eigenvalues in [-1e-9, 0) clamped to 0."""
    return entropy_of_matrix(state.matrix)


def conditional_entropy(
    state: DensityState,
    target: Iterable[SystemLabel | str],
    given: Iterable[SystemLabel | str],
) -> float:
    """H(target | given) = H(target, given) - H(given)."""
    tgt = state.resolve(target)
    giv = state.resolve(given)
    if set(tgt) & set(giv):
        raise InvariantViolation("target and conditioning systems must be disjoint")
    joint = partial_trace(state, tgt + giv)
    h_joint = entropy_of_matrix(joint.matrix)
    if not giv:
        return h_joint
    h_given = entropy_of_matrix(partial_trace(state, giv).matrix)
    return h_joint - h_given


def mutual_information(
    state: DensityState,
    a: Iterable[SystemLabel | str],
    b: Iterable[SystemLabel | str],
) -> float:
    """I(A:B) = H(A) + H(B) - H(AB), non-negative up to numerical slack."""
    sa = state.resolve(a)
    sb = state.resolve(b)
    if set(sa) & set(sb):
        raise InvariantViolation("mutual information needs disjoint sides")
    h_a = entropy_of_matrix(partial_trace(state, sa).matrix)
    h_b = entropy_of_matrix(partial_trace(state, sb).matrix)
    h_ab = entropy_of_matrix(partial_trace(state, sa + sb).matrix)
    return h_a + h_b - h_ab


_MEASURE_RECORD_SEQ = 0


def _fresh_record(state: DensityState, dim: int) -> SystemLabel:
    global _MEASURE_RECORD_SEQ
    existing = set(state.labels())
    while True:
        _MEASURE_RECORD_SEQ += 1
        name = f"_rec{_MEASURE_RECORD_SEQ}"
        if name not in existing:
            return SystemLabel(name, dim)


def measured_conditional_entropy(
    state: DensityState,
    basis: ProjectiveBasis,
    given: Iterable[SystemLabel | str],
) -> float:
    """Entropy of the outcome of measuring `basis.target`, given `given`.

    The measurement is applied as a CPTP measure-and-record channel with a
    fresh classical record; the result is the conditional entropy of that
    record. The collapsed target itself is not part of the conditioning side.
    """
    giv = state.resolve(given)
    if basis.target in giv:
        raise InvariantViolation("cannot condition the outcome on the measured system")
    record = _fresh_record(state, basis.size)
    measured = apply_channel(state, measurement_channel(basis, record))
    return conditional_entropy(measured, [record], giv)


def maassen_uffink_bound(b1: ProjectiveBasis, b2: ProjectiveBasis) -> float:
    """Preparation uncertainty bound -log2 max_jk |<b1_j | b2_k>|^2.

    When the maximal overlap is a power of one half up to machine noise the
    whole-bit value is returned, so mutually unbiased qubit bases give
    exactly 1.0 rather than 1.0 - 3 ulp.
    """
    if b1.target.dim != b2.target.dim:
        raise InvariantViolation("bases must act on systems of equal dimension")
    overlaps = np.abs(b1.matrix().conj().T @ b2.matrix()) ** 2
    m2 = float(np.max(overlaps))
    bound = -np.log2(m2)
    nearest = round(bound)
    if nearest >= 0 and abs(m2 * 2.0**nearest - 1.0) <= 32 * np.finfo(float).eps:
        return float(nearest)
    return float(bound)


def ssa_check(
    state: DensityState,
    a: Iterable[SystemLabel | str],
    b: Iterable[SystemLabel | str],
    c: Iterable[SystemLabel | str],
) -> float:
    """Strong-subadditivity slack H(A|C) - H(A|BC), >= 0 up to -1e-9."""
    sa = state.resolve(a)
    sb = state.resolve(b)
    sc = state.resolve(c)
    if (set(sa) & set(sb)) or (set(sa) & set(sc)) or (set(sb) & set(sc)):
        raise InvariantViolation("strong subadditivity needs disjoint system sets")
    return conditional_entropy(state, sa, sc) - conditional_entropy(state, sa, sb + sc)


@dataclass(frozen=True)
class EntropyReport:
    """Pair of measured conditional entropies against an uncertainty bound."""

    h_z_given_ra: float
    h_x_given_rb: float
    bound: float
    total: float
    satisfied: bool


def make_entropy_report(
    h_z_given_ra: float, h_x_given_rb: float, bound: float, slack: float = 1e-9
) -> EntropyReport:
    total = h_z_given_ra + h_x_given_rb
    return EntropyReport(
        h_z_given_ra=h_z_given_ra,
        h_x_given_rb=h_x_given_rb,
        bound=bound,
        total=total,
        satisfied=total >= bound - slack,
    )
