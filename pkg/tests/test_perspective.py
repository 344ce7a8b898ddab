"""Tests for perspectives, agreement, and the feasibility solver."""

import numpy as np
import numpy.testing as npt
import pytest

from wfsim.perspective import (
    FEASIBLE,
    INFEASIBLE,
    CertaintyStatement,
    ClassicalityError,
    MarginalConstraintSet,
    Perspective,
    ZeroProbabilityError,
    agreement_feasible,
    apply_assumption_c,
    can_agree,
    certainty,
    condition_on,
    is_classical,
)
from wfsim.qcore import (
    DensityState,
    InvariantViolation,
    QuantumError,
    apply_unitary,
    bell_phi_plus,
    computational_basis,
    controlled_copy,
    diagonal_basis,
    haar_unitary,
    qubit,
    qubits,
    tensor,
    trace_distance,
)

KET0 = np.array([1.0, 0.0], dtype=complex)
KET1 = np.array([0.0, 1.0], dtype=complex)
PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)


def hardy_ket() -> np.ndarray:
    return np.array([1.0, 1.0, 1.0, 0.0], dtype=complex) / np.sqrt(3.0)


def random_density(dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = a @ a.conj().T
    return m / np.trace(m)


class TestPerspective:
    def test_valid_construction(self):
        q = qubit("Q")
        p = Perspective("Alice", frozenset([q]), DensityState.from_ket([q], KET0))
        assert p.owner == "Alice"
        assert p.conditioning_log == ()

    def test_owner_inside_cut_rejected(self):
        q = qubit("Alice")
        with pytest.raises(InvariantViolation):
            Perspective("Alice", frozenset([q]), DensityState.from_ket([q], KET0))

    def test_state_must_cover_cut(self):
        q, l = qubits("Q", "L")
        with pytest.raises(InvariantViolation):
            Perspective("Bob", frozenset([q, l]), DensityState.from_ket([q], KET0))


class TestConditionOn:
    def test_charly_conditioning_collapses_the_partner(self):
        qa, qc, rc = qubits("Q_A", "Q_C", "R_C")
        hardy = DensityState.from_ket([qa, qc], hardy_ket())
        state = tensor(hardy, DensityState.from_ket([rc], KET0))
        u = controlled_copy(computational_basis(qc), rc)
        state = apply_unitary(state, u, [qc, rc])
        p = Perspective("Charly", frozenset([qa, qc, rc]), state)
        conditioned = condition_on(p, rc, 1)
        marg = conditioned.marginal([qa]).matrix
        npt.assert_allclose(marg, np.outer(KET0, KET0), atol=1e-12)
        assert conditioned.conditioning_log == ((rc, 1),)

    def test_deterministic_register_is_idempotent(self):
        r, q = qubits("R", "Q")
        state = tensor(
            DensityState.from_ket([r], KET0), DensityState.from_ket([q], PLUS)
        )
        p = Perspective("P", frozenset([r, q]), state)
        once = condition_on(p, r, 0)
        twice = condition_on(once, r, 0)
        npt.assert_allclose(once.state.matrix, p.state.matrix, atol=1e-10)
        npt.assert_allclose(twice.state.matrix, once.state.matrix, atol=1e-10)

    def test_commutes_across_disjoint_registers(self):
        qa, qc, r1, r2 = qubits("Q_A", "Q_C", "R1", "R2")
        base = DensityState.from_ket([qa, qc], hardy_ket())
        state = tensor(
            tensor(base, DensityState.from_ket([r1], KET0)),
            DensityState.from_ket([r2], KET0),
        )
        u1 = controlled_copy(computational_basis(qa), r1)
        u2 = controlled_copy(computational_basis(qc), r2)
        state = apply_unitary(state, u1, [qa, r1])
        state = apply_unitary(state, u2, [qc, r2])
        p = Perspective("P", frozenset([qa, qc, r1, r2]), state)
        ab = condition_on(condition_on(p, r1, 0), r2, 1)
        ba = condition_on(condition_on(p, r2, 1), r1, 0)
        npt.assert_allclose(ab.state.matrix, ba.state.matrix, atol=1e-10)

    def test_zero_probability_is_its_own_error(self):
        q = qubit("Q")
        p = Perspective("P", frozenset([q]), DensityState.from_ket([q], KET0))
        with pytest.raises(ZeroProbabilityError):
            condition_on(p, q, 1)

    def test_basis_parameter(self):
        q = qubit("Q")
        p = Perspective("P", frozenset([q]), DensityState.from_ket([q], PLUS))
        kept = condition_on(p, q, 0, basis=diagonal_basis(q))
        npt.assert_allclose(kept.state.matrix, p.state.matrix, atol=1e-12)
        with pytest.raises(ZeroProbabilityError):
            condition_on(p, q, 1, basis=diagonal_basis(q))

    def test_register_outside_cut_rejected(self):
        q, r = qubits("Q", "R")
        p = Perspective("P", frozenset([q]), DensityState.from_ket([q], KET0))
        with pytest.raises(QuantumError):
            condition_on(p, r, 0)


class TestCanAgree:
    def test_full_support_contains_everything(self):
        q = qubit("Q")
        p = Perspective("P", frozenset([q]), DensityState([q], np.eye(2) / 2))
        psi = DensityState.from_ket([q], KET0)
        assert can_agree(p, psi) is True

    def test_orthogonal_supports_disagree(self):
        q = qubit("Q")
        p = Perspective("P", frozenset([q]), DensityState.from_ket([q], KET0))
        assert can_agree(p, DensityState.from_ket([q], KET1)) is False

    def test_pure_assignment_forces_equality(self):
        q = qubit("Q")
        p = Perspective("P", frozenset([q]), DensityState.from_ket([q], KET0))
        assert can_agree(p, DensityState.from_ket([q], PLUS)) is False
        assert can_agree(p, DensityState.from_ket([q], KET0)) is True

    def test_every_perspective_agrees_with_itself(self):
        rng = np.random.default_rng(7)
        q, l = qubits("Q", "L")
        for _ in range(20):
            state = DensityState([q, l], random_density(4, rng))
            p = Perspective("P", frozenset([q, l]), state)
            assert can_agree(p, state) is True

    def test_entangled_pure_rejects_product_candidate(self):
        q, l = qubits("Q", "L")
        bell = bell_phi_plus(q, l)
        p = Perspective("Bob", frozenset([q, l]), bell)
        product = DensityState.from_ket([q, l], np.kron(KET0, KET0))
        assert can_agree(p, product) is False
        assert can_agree(p, bell) is True

    def test_no_overlap_is_an_error(self):
        q, r = qubits("Q", "R")
        p = Perspective("P", frozenset([q]), DensityState.from_ket([q], KET0))
        with pytest.raises(QuantumError):
            can_agree(p, DensityState.from_ket([r], KET0))


class TestMarginalConstraintSet:
    def test_from_targets_builds_global_list(self):
        q, l, s = qubits("Q", "L", "S")
        t1 = bell_phi_plus(q, l)
        t2 = DensityState.from_ket([s], KET0)
        cset = MarginalConstraintSet.from_targets([t1, t2])
        assert cset.global_systems == (q, l, s)
        assert cset.joint_dim == 8

    def test_constrained_system_must_be_global(self):
        q, l = qubits("Q", "L")
        t1 = bell_phi_plus(q, l)
        with pytest.raises(QuantumError):
            MarginalConstraintSet.from_targets([t1], global_systems=[q])


class TestAgreementFeasible:
    def test_pure_marginal_certificate(self):
        q, l = qubits("Q", "L")
        alice = DensityState.from_ket([q], KET0)
        bob = bell_phi_plus(q, l)
        report = agreement_feasible(MarginalConstraintSet.from_targets([alice, bob]))
        assert report.verdict == INFEASIBLE
        assert "pure marginal" in report.certificate
        assert report.witness is None

    def test_support_containment_control_case(self):
        a, b = qubits("A", "B")
        joint = DensityState.from_ket([a, b], np.kron(KET0, PLUS))
        loose = DensityState([a], np.eye(2) / 2)
        report = agreement_feasible(MarginalConstraintSet.from_targets([joint, loose]))
        assert report.verdict == FEASIBLE
        assert report.mode == "support"
        assert report.residual < 1e-7
        assert trace_distance(report.witness, joint) < 1e-5

    def test_marginals_of_actual_state_are_feasible(self):
        rng = np.random.default_rng(11)
        a, b, c = qubits("A", "B", "C")
        for _ in range(5):
            state = DensityState([a, b, c], random_density(8, rng))
            t1 = state.marginal([a, b])
            t2 = state.marginal([b, c])
            cset = MarginalConstraintSet.from_targets(
                [t1, t2], global_systems=[a, b, c]
            )
            report = agreement_feasible(cset)
            assert report.verdict == FEASIBLE
            assert report.mode == "exact"
            assert report.residual < 1e-7
            assert trace_distance(report.witness.marginal([a, b]), t1) < 1e-7
            assert trace_distance(report.witness.marginal([b, c]), t2) < 1e-7

    def test_nearly_pure_global_state_still_converges(self):
        rng = np.random.default_rng(3)
        a, b, c = qubits("A", "B", "C")
        u = haar_unitary(8, rng)
        ket = u[:, 0]
        m = 0.9 * np.outer(ket, ket.conj()) + 0.1 * np.eye(8) / 8
        state = DensityState([a, b, c], m)
        cset = MarginalConstraintSet.from_targets(
            [state.marginal([a, b]), state.marginal([b, c])],
            global_systems=[a, b, c],
        )
        report = agreement_feasible(cset)
        assert report.verdict == FEASIBLE
        assert report.mode == "exact"
        assert report.iterations > 1

    def test_monogamy_certificate(self):
        q, s, qr = qubits("Q", "S", "Q_R")
        claim_a = bell_phi_plus(q, s)
        claim_b = bell_phi_plus(qr, s)
        report = agreement_feasible(
            MarginalConstraintSet.from_targets([claim_a, claim_b])
        )
        assert report.verdict == INFEASIBLE
        assert "monogamy" in report.certificate

    def test_entropic_certificate(self):
        ra, rb, s = qubits("R_A", "R_B", "S")
        zz = np.zeros((4, 4), dtype=complex)
        zz[0, 0] = zz[3, 3] = 0.5
        target_z = DensityState([ra, s], zz)
        plus = np.kron(KET0, PLUS)
        minus_vec = np.array([1.0, -1.0], dtype=complex) / np.sqrt(2.0)
        minus = np.kron(KET1, minus_vec)
        xx = 0.5 * (np.outer(plus, plus.conj()) + np.outer(minus, minus.conj()))
        target_x = DensityState([rb, s], xx)
        report = agreement_feasible(
            MarginalConstraintSet.from_targets([target_z, target_x])
        )
        assert report.verdict == INFEASIBLE
        assert "uncertainty" in report.certificate

    def test_full_support_targets_agree_immediately(self):
        q = qubit("Q")
        report = agreement_feasible(
            MarginalConstraintSet.from_targets([DensityState([q], np.eye(2) / 2)])
        )
        assert report.verdict == FEASIBLE
        assert report.residual < 1e-7

    def test_report_serializes(self):
        q = qubit("Q")
        report = agreement_feasible(
            MarginalConstraintSet.from_targets([DensityState([q], np.eye(2) / 2)])
        )
        d = report.to_dict()
        assert d["verdict"] == FEASIBLE
        assert "witness" not in d
        d = report.to_dict(include_witness=True)
        assert d["witness"]["systems"] == ["Q"]


class TestCertainty:
    def test_certain_outcome(self):
        q = qubit("Q_C")
        p = Perspective("Bob", frozenset([q]), DensityState.from_ket([q], KET1))
        out = certainty(p, computational_basis(q))
        assert out is not None
        assert out.value == 1
        assert out.probability == pytest.approx(1.0, abs=1e-12)

    def test_maximally_mixed_is_uncertain(self):
        q = qubit("Q")
        p = Perspective("P", frozenset([q]), DensityState([q], np.eye(2) / 2))
        assert certainty(p, computational_basis(q)) is None

    def test_diagonal_basis_certainty(self):
        q = qubit("Q_C")
        p = Perspective("Alice", frozenset([q]), DensityState.from_ket([q], PLUS))
        out = certainty(p, diagonal_basis(q))
        assert out is not None
        assert out.value == 0

    def test_target_outside_cut_rejected(self):
        q, r = qubits("Q", "R")
        p = Perspective("P", frozenset([q]), DensityState.from_ket([q], KET0))
        with pytest.raises(QuantumError):
            certainty(p, computational_basis(r))


class TestAssumptionC:
    def test_collapse_removes_innermost(self):
        q = qubit("Q_A")
        s = CertaintyStatement(("Bob", "Charly"), "computational", q, 0)
        collapsed = apply_assumption_c(s, True)
        assert collapsed.chain == ("Bob",)
        assert collapsed.outcome == 0

    def test_classicality_failure_refuses(self):
        q = qubit("Q_A")
        s = CertaintyStatement(("Darwin", "Bob"), "diagonal", q, 1)
        with pytest.raises(ClassicalityError):
            apply_assumption_c(s, False)

    def test_short_chain_rejected(self):
        q = qubit("Q")
        s = CertaintyStatement(("Bob",), "computational", q, 0)
        with pytest.raises(QuantumError):
            apply_assumption_c(s, True)

    def test_describe_mentions_every_link(self):
        q = qubit("Q_C")
        s = CertaintyStatement(("Bob", "Charly", "Alice"), "diagonal", q, 0)
        text = s.describe()
        assert "Bob" in text and "Charly" in text and "Alice" in text

    def test_is_classical(self):
        q = qubit("Q")
        assert is_classical(DensityState([q], np.diag([0.25, 0.75])))
        assert not is_classical(DensityState.from_ket([q], PLUS))
        rot = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
        assert is_classical(DensityState.from_ket([q], PLUS), basis_matrix=rot)
