"""Simulator and verification suite for multi-perspective quantum thought experiments."""

from wfsim.qcore import (
    Channel,
    DensityState,
    InvariantViolation,
    Outcome,
    ProjectiveBasis,
    PureState,
    QuantumError,
    SystemLabel,
    SystemRegistry,
    apply_channel,
    apply_unitary,
    bell_phi_plus,
    computational_basis,
    controlled_copy,
    diagonal_basis,
    haar_unitary,
    measure_update,
    measurement_channel,
    partial_trace,
    qubit,
    qubits,
    tensor,
    trace_distance,
)
from wfsim.infotheory import (
    EntropyReport,
    conditional_entropy,
    entropy_of_matrix,
    maassen_uffink_bound,
    make_entropy_report,
    measured_conditional_entropy,
    mutual_information,
    ssa_check,
    von_neumann_entropy,
)
from wfsim.perspective import (
    FEASIBLE,
    INFEASIBLE,
    CertaintyStatement,
    FeasibilityReport,
    MarginalConstraintSet,
    Perspective,
    agreement_feasible,
    apply_assumption_c,
    can_agree,
    certainty,
    condition_on,
    is_classical,
)
from wfsim.game import (
    CLASSICAL_BOUND,
    QUANTUM_BOUND,
    GameReport,
    GameStrategy,
    RoundResult,
    classical_optimum,
    grid_search_optimum,
    optimal_strategy,
    referee_round,
    sample_rounds,
    strategy_from_ket,
    win_probability,
)
from wfsim.protocols import (
    CONSISTENT,
    CONTRADICTION_REPRODUCED,
    THEOREM_ASSUMPTIONS,
    ProtocolRun,
    ProtocolTrace,
    TheoremReport,
    TraceStep,
    meta_perspective,
    run_deutsch,
    run_fr,
    run_wigner,
    sample_restart_loop,
    verify_objective_outcomes,
)
from wfsim.pdl import (
    Diagnostic,
    KetExpr,
    ParseError,
    PhysicistDecl,
    ProtocolAst,
    ProtocolStep,
    SystemDecl,
    compile_and_run,
    corpus_path,
    load_corpus,
    parse,
    pretty_print,
    validate,
)
from wfsim.blackhole import (
    BlackHoleModel,
    DecouplingReport,
    SweepRow,
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

__version__ = "0.1.0"

__all__ = [
    "Channel",
    "DensityState",
    "InvariantViolation",
    "Outcome",
    "ProjectiveBasis",
    "PureState",
    "QuantumError",
    "SystemLabel",
    "SystemRegistry",
    "apply_channel",
    "apply_unitary",
    "bell_phi_plus",
    "computational_basis",
    "controlled_copy",
    "diagonal_basis",
    "haar_unitary",
    "measure_update",
    "measurement_channel",
    "partial_trace",
    "qubit",
    "qubits",
    "tensor",
    "trace_distance",
    "EntropyReport",
    "conditional_entropy",
    "entropy_of_matrix",
    "maassen_uffink_bound",
    "make_entropy_report",
    "measured_conditional_entropy",
    "mutual_information",
    "ssa_check",
    "von_neumann_entropy",
    "FEASIBLE",
    "INFEASIBLE",
    "CertaintyStatement",
    "FeasibilityReport",
    "MarginalConstraintSet",
    "Perspective",
    "agreement_feasible",
    "apply_assumption_c",
    "can_agree",
    "certainty",
    "condition_on",
    "is_classical",
    "CLASSICAL_BOUND",
    "QUANTUM_BOUND",
    "GameReport",
    "GameStrategy",
    "RoundResult",
    "classical_optimum",
    "grid_search_optimum",
    "optimal_strategy",
    "referee_round",
    "sample_rounds",
    "strategy_from_ket",
    "win_probability",
    "CONSISTENT",
    "CONTRADICTION_REPRODUCED",
    "THEOREM_ASSUMPTIONS",
    "ProtocolRun",
    "ProtocolTrace",
    "TheoremReport",
    "TraceStep",
    "meta_perspective",
    "run_deutsch",
    "run_fr",
    "run_wigner",
    "sample_restart_loop",
    "verify_objective_outcomes",
    "Diagnostic",
    "KetExpr",
    "ParseError",
    "PhysicistDecl",
    "ProtocolAst",
    "ProtocolStep",
    "SystemDecl",
    "compile_and_run",
    "corpus_path",
    "load_corpus",
    "parse",
    "pretty_print",
    "validate",
    "BlackHoleModel",
    "DecouplingReport",
    "SweepRow",
    "alice_measures",
    "build_old_blackhole",
    "decoded_pair",
    "decoupling_error",
    "hp_evolve",
    "reconstruct",
    "reconstruction_fidelity",
    "run_sweep",
    "sweep_means",
    "verify_firewall",
    "verify_hp_extended",
    "verify_no_cloning",
    "write_sweep_csv",
    "__version__",
]
