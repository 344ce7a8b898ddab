"""Tests for the evaporating-hole model: construction, the record and the
scrambling epoch, decoupling diagnostics, Petz reconstruction, the sweep
table, and the three verdict builders built on top."""

import csv

import numpy as np
import pytest
from numpy.testing import assert_allclose

from wfsim.blackhole import (
    SWEEP_COLUMNS,
    alice_measures,
    build_old_blackhole,
    decoded_pair,
    decoupling_error,
    hp_evolve,
    reconstruct,
    reconstruction_fidelity,
    run_sweep,
    sweep_means,
    verify_firewall,
    verify_hp_extended,
    verify_no_cloning,
    write_sweep_csv,
)
from wfsim.infotheory import entropy_of_matrix
from wfsim.perspective import FEASIBLE, INFEASIBLE
from wfsim.protocols import (
    CONSISTENT,
    CONTRADICTION_REPRODUCED,
    THEOREM_ASSUMPTIONS,
)
from wfsim.qcore import DensityState, QuantumError


class TestBuildOldBlackhole:
    def test_system_layout(self):
        model = build_old_blackhole(3)
        names = [s.name for s in model.state.systems]
        assert names == ["B0", "B1", "B2", "Q", "R_A", "R0", "R1", "R2", "S"]
        assert model.blob == model.interior + (model.infalling, model.memory)
        assert model.late_radiation == ()
        assert model.interior_remnant == model.blob
        assert not model.measured
        assert not model.evolved

    def test_interior_maximally_entangled_with_radiation(self):
        model = build_old_blackhole(4)
        st = model.state
        h_b = entropy_of_matrix(st.marginal_matrix(model.interior))
        h_r = entropy_of_matrix(st.marginal_matrix(model.early_radiation))
        complement = [model.infalling, model.memory, model.reference]
        h_br = entropy_of_matrix(st.marginal_matrix(complement))
        assert h_b + h_r - h_br == pytest.approx(8.0, abs=1e-9)

    def test_fallen_qubit_paired_with_reference(self):
        model = build_old_blackhole(2)
        phi = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
        rho_qs = model.state.marginal_matrix([model.infalling, model.reference])
        assert_allclose(rho_qs, np.outer(phi, phi.conj()), atol=1e-12)
        rho_s = model.state.marginal_matrix([model.reference])
        assert_allclose(rho_s, np.eye(2) / 2.0, atol=1e-12)

    def test_memory_starts_blank(self):
        model = build_old_blackhole(2)
        rho_ra = model.state.marginal_matrix([model.memory])
        assert_allclose(rho_ra, np.diag([1.0, 0.0]), atol=1e-12)

    def test_state_is_normalized(self):
        model = build_old_blackhole(5)
        assert np.linalg.norm(model.state.vector) == pytest.approx(1.0, abs=1e-12)

    def test_size_cap(self):
        with pytest.raises(QuantumError, match="size cap"):
            build_old_blackhole(6)

    def test_interior_must_be_nonempty(self):
        with pytest.raises(QuantumError):
            build_old_blackhole(0)


class TestRecordAndEvolve:
    def test_record_correlates_memory_with_fallen_qubit(self):
        model = alice_measures(build_old_blackhole(2))
        rho = model.state.marginal_matrix([model.infalling, model.memory])
        assert_allclose(rho, np.diag([0.5, 0.0, 0.0, 0.5]), atol=1e-12)
        assert model.measured
        assert model.history == ("record",)

    def test_record_twice_rejected(self):
        model = alice_measures(build_old_blackhole(2))
        with pytest.raises(QuantumError):
            alice_measures(model)

    def test_no_epoch_leaves_state_alone(self):
        model = alice_measures(build_old_blackhole(3))
        evolved = hp_evolve(model, 7, late_count=0)
        assert evolved.evolved
        assert evolved.scrambler is None
        assert evolved.late_radiation == ()
        assert_allclose(evolved.state.vector, model.state.vector)

    def test_epoch_scrambles_and_redesignates(self):
        model = alice_measures(build_old_blackhole(3))
        evolved = hp_evolve(model, 0, late_count=2)
        assert not np.allclose(evolved.state.vector, model.state.vector)
        assert np.linalg.norm(evolved.state.vector) == pytest.approx(
            1.0, abs=1e-10
        )
        assert [s.name for s in evolved.late_radiation] == ["B0", "B1"]
        assert evolved.interior_remnant == evolved.blob[2:]
        assert evolved.history == ("record", "scramble")

    def test_epoch_is_deterministic_in_the_seed(self):
        a = hp_evolve(alice_measures(build_old_blackhole(3)), 5, late_count=1)
        b = hp_evolve(alice_measures(build_old_blackhole(3)), 5, late_count=1)
        assert_allclose(a.state.vector, b.state.vector)
        c = hp_evolve(alice_measures(build_old_blackhole(3)), 6, late_count=1)
        assert not np.allclose(a.state.vector, c.state.vector)

    def test_evolve_twice_rejected(self):
        evolved = hp_evolve(alice_measures(build_old_blackhole(2)), 0, late_count=1)
        with pytest.raises(QuantumError):
            hp_evolve(evolved, 1, late_count=1)

    def test_late_count_bounds(self):
        model = alice_measures(build_old_blackhole(2))
        with pytest.raises(QuantumError):
            hp_evolve(model, 0, late_count=-1)
        with pytest.raises(QuantumError):
            hp_evolve(model, 0, late_count=5)

    def test_late_radiation_entropy_at_most_qubit_count(self):
        for seed in range(3):
            for m in (1, 2, 3):
                ev = hp_evolve(
                    alice_measures(build_old_blackhole(3)), seed, late_count=m
                )
                h = entropy_of_matrix(ev.state.marginal_matrix(ev.late_radiation))
                assert h <= m + 1e-9

    def test_late_radiation_near_maximally_mixed_on_average(self):
        values = []
        for seed in range(20):
            ev = hp_evolve(
                alice_measures(build_old_blackhole(5, seed)), seed, late_count=2
            )
            values.append(
                entropy_of_matrix(ev.state.marginal_matrix(ev.late_radiation))
            )
        assert np.mean(values) == pytest.approx(2.0, abs=0.2)


class TestDecoupling:
    def test_nothing_emitted_keeps_full_correlation(self):
        ev = hp_evolve(alice_measures(build_old_blackhole(5, 0)), 0, late_count=0)
        rep = decoupling_error(ev)
        assert rep.trace_distance == pytest.approx(1.5, abs=1e-9)
        assert rep.mutual_information_bits == pytest.approx(2.0, abs=1e-9)
        assert rep.reconstruction_fidelity is None

    def test_everything_emitted_decouples_exactly(self):
        ev = hp_evolve(alice_measures(build_old_blackhole(3, 0)), 0, late_count=5)
        rep = decoupling_error(ev)
        assert rep.trace_distance <= 1e-9
        assert rep.mutual_information_bits <= 1e-9

    def test_mean_trace_distance_shrinks_with_emission(self):
        means = []
        for m in (0, 2, 4):
            values = []
            for seed in range(10):
                ev = hp_evolve(
                    alice_measures(build_old_blackhole(5, seed)), seed, late_count=m
                )
                values.append(decoupling_error(ev).trace_distance)
            means.append(float(np.mean(values)))
        assert means[0] > means[1] > means[2]

    def test_requires_an_evolved_model(self):
        with pytest.raises(QuantumError):
            decoupling_error(alice_measures(build_old_blackhole(3)))


class TestReconstruction:
    def test_nothing_emitted_gives_random_guess_fidelity(self):
        ev = hp_evolve(alice_measures(build_old_blackhole(5, 3)), 3, late_count=0)
        rep = reconstruct(ev)
        assert rep.reconstruction_fidelity == pytest.approx(0.25, abs=1e-9)

    def test_recovery_after_enough_late_radiation(self):
        for seed in (0, 1, 2):
            ev = hp_evolve(
                alice_measures(build_old_blackhole(5, seed)), seed, late_count=4
            )
            rep = reconstruct(ev)
            assert rep.reconstruction_fidelity >= 0.98

    def test_fidelity_beats_decoupling_bound(self):
        for seed in range(4):
            for m in (0, 1, 3):
                ev = hp_evolve(
                    alice_measures(build_old_blackhole(5, seed)), seed, late_count=m
                )
                rep = reconstruct(ev)
                assert (
                    rep.reconstruction_fidelity
                    >= 1.0 - rep.trace_distance - 1e-9
                )

    def test_decoded_pair_is_a_valid_two_qubit_state(self):
        ev = hp_evolve(alice_measures(build_old_blackhole(4, 2)), 2, late_count=3)
        pair = decoded_pair(ev)
        assert [s.name for s in pair.systems] == ["Q_R", "S"]
        DensityState(pair.systems, pair.matrix)
        fid = reconstruction_fidelity(pair)
        assert 0.0 <= fid <= 1.0

    def test_recovery_works_without_the_record(self):
        ev = hp_evolve(build_old_blackhole(5, 0), 0, late_count=4)
        rep = reconstruct(ev)
        assert rep.reconstruction_fidelity >= 0.98

    def test_record_after_scrambling_is_still_decodable(self):
        model = hp_evolve(build_old_blackhole(4, 0), 0, late_count=3)
        model = alice_measures(model)
        assert model.history == ("scramble", "record")
        rep = reconstruct(model)
        assert 0.0 <= rep.reconstruction_fidelity <= 1.0

    def test_requires_an_evolved_model(self):
        with pytest.raises(QuantumError):
            reconstruct(alice_measures(build_old_blackhole(3)))


class TestSweep:
    def test_row_grid_and_column_order(self):
        rows = run_sweep(n_interior=3, m_values=(0, 2), seeds=2)
        assert [(r.seed, r.m) for r in rows] == [(0, 0), (0, 2), (1, 0), (1, 2)]
        assert tuple(rows[0].to_dict()) == SWEEP_COLUMNS

    def test_explicit_seed_iterable(self):
        rows = run_sweep(n_interior=3, m_values=(1,), seeds=[5, 9])
        assert [r.seed for r in rows] == [5, 9]

    def test_rows_are_reproducible(self):
        a = run_sweep(n_interior=3, m_values=(2,), seeds=1)[0]
        b = run_sweep(n_interior=3, m_values=(2,), seeds=1)[0]
        assert a == b

    def test_means_group_by_emission_count(self):
        rows = run_sweep(n_interior=3, m_values=(0, 1), seeds=3)
        means = sweep_means(rows)
        assert sorted(means) == [0, 1]
        expected = np.mean([r.fidelity for r in rows if r.m == 1])
        assert means[1]["fidelity"] == pytest.approx(expected, abs=1e-15)

    def test_csv_layout_with_mean_row(self, tmp_path):
        rows = run_sweep(n_interior=3, m_values=(0, 1), seeds=2)
        path = tmp_path / "sweep.csv"
        write_sweep_csv(rows, str(path))
        with open(path, newline="") as fh:
            table = list(csv.reader(fh))
        assert table[0] == list(SWEEP_COLUMNS)
        assert len(table) == len(rows) + 2
        assert table[-1][0] == "mean"
        grand_mean = np.mean([r.trace_distance for r in rows])
        assert float(table[-1][2]) == pytest.approx(grand_mean, abs=1e-15)
        assert float(table[1][4]) == rows[0].fidelity

    def test_csv_bytes_are_reproducible(self, tmp_path):
        rows = run_sweep(n_interior=3, m_values=(1,), seeds=2)
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        write_sweep_csv(rows, str(first))
        write_sweep_csv(rows, str(second))
        assert first.read_bytes() == second.read_bytes()

    def test_entropy_sum_floor_holds_in_every_run(self):
        rows = run_sweep(n_interior=3, m_values=(0, 1, 3), seeds=4)
        for row in rows:
            assert row.h_z_given_ra + row.h_x_given_rb >= 1.0 - 1e-6


class TestVerifyHpExtended:
    def test_contradiction_on_the_standard_config(self):
        rep = verify_hp_extended(n_interior=5, m_values=(0, 4), seeds=5)
        assert rep.theorem == "thm4"
        assert rep.verdict == CONTRADICTION_REPRODUCED
        assert rep.assumptions == THEOREM_ASSUMPTIONS["thm4"]
        assert rep.evidence["entropy_sum_min"] >= 1.0 - 1e-6
        assert rep.evidence["uncertainty_floor_bits"] == 1.0
        assert rep.evidence["h_z_given_ra_without_reconstruction"] == pytest.approx(
            0.0, abs=1e-12
        )
        means = rep.evidence["means_by_m"]
        assert means["4"]["h_x_given_rb"] <= 0.25
        assert means["4"]["h_z_given_ra"] >= 0.75

    def test_precomputed_rows_without_late_radiation_stay_consistent(self):
        rows = run_sweep(n_interior=3, m_values=(0,), seeds=2)
        rep = verify_hp_extended(rows=rows)
        assert rep.verdict == CONSISTENT
        assert rep.evidence["entropy_sum_min"] >= 1.0 - 1e-6
        assert rep.evidence["means_by_m"]["0"]["h_x_given_rb"] > 0.25


class TestVerifyNoCloning:
    def test_agreement_is_infeasible_by_monogamy(self):
        rep = verify_no_cloning()
        assert rep.theorem == "thm1"
        assert rep.verdict == CONTRADICTION_REPRODUCED
        assert rep.assumptions == THEOREM_ASSUMPTIONS["thm1"]
        agreement = rep.evidence["agreement"]
        assert agreement["verdict"] == INFEASIBLE
        assert "monogamy" in agreement["certificate"]
        assert rep.evidence["i_q_s_bits"] == pytest.approx(2.0, abs=1e-9)
        assert rep.evidence["i_qr_s_bits"] == pytest.approx(2.0, abs=1e-9)

    def test_product_control_is_feasible(self):
        rep = verify_no_cloning()
        assert rep.evidence["product_control"]["verdict"] == FEASIBLE


class TestVerifyFirewall:
    def test_contradiction_with_win_three_quarters(self):
        rep = verify_firewall()
        assert rep.theorem == "thm5"
        assert rep.verdict == CONTRADICTION_REPRODUCED
        assert rep.assumptions == THEOREM_ASSUMPTIONS["thm5"]
        assert rep.evidence["distillation"]["i_q_bob_q_ref_bits"] == pytest.approx(
            2.0, abs=1e-9
        )
        assert rep.evidence["agreement"]["verdict"] == INFEASIBLE
        strategy = rep.evidence["strategy"]
        assert strategy["win_probability"] == pytest.approx(0.75, abs=1e-10)
        assert strategy["claimed_win_probability"] == 1.0
        assert strategy["quantum_bound"] == pytest.approx(
            0.5 + 8 ** (-0.5), abs=1e-15
        )

    def test_any_scrambling_seed_gives_the_same_verdict(self):
        rep = verify_firewall(seed=3)
        assert rep.verdict == CONTRADICTION_REPRODUCED
        assert rep.evidence["strategy"]["win_probability"] == pytest.approx(
            0.75, abs=1e-10
        )
