"""Tests for the protocol text format: tokenizer and parser behaviour,
pretty-print round trips, validator findings, bundled corpus files, and
trace equality between compiled files and the built-in runners."""

import pytest

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
from wfsim.protocols import run_deutsch, run_fr, run_wigner
from wfsim.qcore import QuantumError, trace_distance

CORPUS = ("wigner.wfp", "deutsch.wfp", "fr.wfp")


def parsed(source: str) -> ProtocolAst:
    ast = parse(source)
    assert not isinstance(ast, ParseError), ast.describe()
    return ast


class TestParse:
    def test_single_system_declaration(self):
        ast = parsed("system Q : qubit")
        assert ast.systems == (SystemDecl("Q", 2),)
        assert ast.physicists == ()
        assert ast.steps == ()

    def test_dimension_declaration(self):
        ast = parsed("system T : dim 3")
        assert ast.systems == (SystemDecl("T", 3),)

    def test_physicist_declaration(self):
        ast = parsed("physicist Bob cut { Q, L_A }")
        assert ast.physicists == (PhysicistDecl("Bob", ("Q", "L_A")),)

    def test_step_with_each_verb(self):
        source = """
        system Q : qubit
        system L_A : qubit
        physicist Alice cut { Q }
        physicist Bob cut { Q, L_A }
        step 1: Bob prepare Q in |+>
        step 2: Bob send Q to Alice
        step 3: Bob isolate Alice
        step 4: Alice measure Q in computational into L_A
        step 5: Bob reverse Q L_A to step 3
        step 6: Alice postselect L_A = 0
        step 7: Bob predict (1, 0bar)
        """
        ast = parsed(source)
        verbs = [s.verb for s in ast.steps]
        assert verbs == [
            "prepare",
            "send",
            "isolate",
            "measure",
            "reverse",
            "postselect",
            "predict",
        ]
        assert ast.steps[0].ket == KetExpr(kind="basis", text="|+>")
        assert ast.steps[1].recipient == "Alice"
        assert ast.steps[3].record == "L_A"
        assert ast.steps[4].targets == ("Q", "L_A")
        assert ast.steps[4].to_step == 3
        assert ast.steps[5].outcome == "0"
        assert ast.steps[6].pair == ("1", "0bar")
        assert ast.predictions == (ast.steps[6],)

    def test_hardy_preparation(self):
        ast = parsed(
            "system A : qubit\nsystem B : qubit\n"
            "physicist D cut { A }\n"
            "step 1: D prepare A in hardy(A, B)"
        )
        step = ast.steps[0]
        assert step.ket == KetExpr(kind="hardy", args=("A", "B"))
        assert step.targets == ("A", "B")

    def test_comments_and_blank_lines_are_skipped(self):
        ast = parsed("# heading\n\nsystem Q : qubit  # trailing\n\n")
        assert ast.systems == (SystemDecl("Q", 2),)

    def test_misspelled_verb_reports_expected_set(self):
        error = parse("step 1: Bob prpare Q")
        assert isinstance(error, ParseError)
        assert error.line == 1
        assert error.column == 13
        assert error.found == "prpare"
        assert '"prepare"' in error.expected
        assert '"measure"' in error.expected

    def test_error_positions_are_one_based(self):
        error = parse("system")
        assert isinstance(error, ParseError)
        assert error.line == 1
        assert error.found == "end of line"

    def test_unknown_character(self):
        error = parse("system Q : qubit;")
        assert isinstance(error, ParseError)
        assert error.found == "';'"

    def test_missing_comma_in_prediction(self):
        error = parse("step 1: Bob predict (1 0bar)")
        assert isinstance(error, ParseError)
        assert '","' in error.expected

    def test_trailing_tokens_rejected(self):
        error = parse("system Q : qubit extra")
        assert isinstance(error, ParseError)
        assert error.expected == ("end of line",)

    def test_determinism(self):
        source = load_corpus("fr.wfp")
        assert parse(source) == parse(source)
        bad = "step 1: Bob prpare Q"
        assert parse(bad) == parse(bad)

    def test_corpus_files_parse(self):
        for name in CORPUS:
            ast = parse(load_corpus(name))
            assert isinstance(ast, ProtocolAst), name

    def test_bundled_syntax_error_file(self):
        error = parse(load_corpus("negative/syntax_error.wfp"))
        assert isinstance(error, ParseError)
        assert (error.line, error.column) == (8, 13)
        assert error.found == "prpare"


class TestPrettyPrint:
    def test_round_trip_on_corpus(self):
        for name in CORPUS:
            ast = parsed(load_corpus(name))
            assert parse(pretty_print(ast)) == ast, name

    def test_round_trip_on_qudit_declaration(self):
        ast = parsed("system T : dim 3\nphysicist P cut { T }")
        assert parse(pretty_print(ast)) == ast

    def test_canonical_text_is_a_fixed_point(self):
        ast = parsed(load_corpus("fr.wfp"))
        once = pretty_print(ast)
        assert pretty_print(parse(once)) == once

    def test_outcome_tokens_survive(self):
        ast = parsed(
            "system R : qubit\nphysicist B cut { R }\n"
            "step 1: B postselect R = 1bar"
        )
        assert "postselect R = 1bar" in pretty_print(ast)


class TestValidate:
    def test_corpus_files_are_clean(self):
        for name in CORPUS:
            ast = parsed(load_corpus(name))
            assert validate(ast) == [], name

    def test_self_description_finding(self):
        ast = parsed(load_corpus("negative/self_description.wfp"))
        findings = validate(ast)
        assert [(d.step, d.code) for d in findings] == [(3, "self-description")]

    def test_reversal_outside_cut_finding(self):
        ast = parsed(load_corpus("negative/reversal_outside_cut.wfp"))
        findings = validate(ast)
        assert [(d.step, d.code) for d in findings] == [
            (4, "reversal-outside-cut")
        ]

    def test_undeclared_system(self):
        ast = parsed(
            "system Q : qubit\nphysicist B cut { Q }\n"
            "step 1: B prepare X in |0>"
        )
        assert any(d.code == "undeclared-system" for d in validate(ast))

    def test_unknown_actor(self):
        ast = parsed("system Q : qubit\nstep 1: Ghost prepare Q in |0>")
        assert any(d.code == "unknown-physicist" for d in validate(ast))

    def test_step_numbering_must_be_dense(self):
        ast = parsed(
            "system Q : qubit\nphysicist B cut { Q }\n"
            "step 1: B prepare Q in |0>\nstep 3: B isolate B"
        )
        assert any(d.code == "step-numbering" for d in validate(ast))

    def test_duplicate_declaration(self):
        ast = parsed("system Q : qubit\nsystem Q : qubit")
        assert any(d.code == "duplicate-declaration" for d in validate(ast))

    def test_postselect_outcome_must_fit(self):
        ast = parsed(
            "system R : qubit\nphysicist B cut { R }\n"
            "step 1: B postselect R = 2"
        )
        assert any(d.code == "bad-outcome" for d in validate(ast))

    def test_measure_record_dimension(self):
        ast = parsed(
            "system Q : qubit\nsystem T : dim 3\nphysicist B cut { Q }\n"
            "step 1: B measure Q in computational into T"
        )
        assert any(d.code == "dimension-mismatch" for d in validate(ast))

    def test_hardy_needs_two_distinct_qubits(self):
        ast = parsed(
            "system A : qubit\nphysicist D cut { A }\n"
            "step 1: D prepare A in hardy(A, A)"
        )
        assert any(d.code == "bad-preparation" for d in validate(ast))

    def test_reversal_must_point_backwards(self):
        ast = parsed(
            "system Q : qubit\nphysicist B cut { Q }\n"
            "step 1: B reverse Q to step 4"
        )
        assert any(d.code == "reversal-forward" for d in validate(ast))

    def test_reversal_across_selection(self):
        ast = parsed(
            "system Q : qubit\nsystem L : qubit\n"
            "physicist A cut { Q }\nphysicist B cut { Q, L }\n"
            "step 1: B prepare Q in |+>\n"
            "step 2: A measure Q in computational into L\n"
            "step 3: A postselect L = 0\n"
            "step 4: B reverse Q L to step 2"
        )
        assert any(d.code == "reversal-selection" for d in validate(ast))

    def test_reversal_straddling_targets(self):
        ast = parsed(
            "system Q : qubit\nsystem L : qubit\nsystem M : qubit\n"
            "physicist A cut { Q }\nphysicist B cut { Q, L, M }\n"
            "step 1: B prepare Q in |+>\n"
            "step 2: A measure Q in computational into L\n"
            "step 3: B reverse Q M to step 2"
        )
        assert any(d.code == "reversal-entangled" for d in validate(ast))

    def test_diagnostics_describe_themselves(self):
        finding = Diagnostic(3, "self-description", "a cut holds its own record")
        assert finding.describe().startswith("step 3: self-description")


class TestCompileAndRun:
    def test_wigner_matches_builtin(self):
        compiled = compile_and_run(parsed(load_corpus("wigner.wfp")))
        builtin, _ = run_wigner()
        assert len(compiled.steps) == len(builtin.steps)
        for mine, theirs in zip(compiled.steps, builtin.steps):
            assert mine.operation == theirs.operation
            assert trace_distance(mine.state, theirs.state) <= 1e-10
        assert compiled.acceptance_probability == pytest.approx(
            builtin.acceptance_probability, abs=1e-12
        )

    def test_deutsch_matches_builtin_and_restores_snapshot(self):
        compiled = compile_and_run(parsed(load_corpus("deutsch.wfp")))
        builtin = run_deutsch()
        for mine, theirs in zip(compiled.steps, builtin.steps):
            assert trace_distance(mine.state, theirs.state) <= 1e-10
        restored = trace_distance(
            compiled.steps[4].state, compiled.steps[2].state
        )
        assert restored <= 1e-10

    def test_fr_matches_builtin(self):
        compiled = compile_and_run(parsed(load_corpus("fr.wfp")))
        builtin, _ = run_fr(apply_c=True)
        assert len(compiled.steps) == 10
        for mine, theirs in zip(compiled.steps, builtin.steps):
            assert trace_distance(mine.state, theirs.state) <= 1e-10
            for (name_a, state_a), (name_b, state_b) in zip(
                mine.perspectives, theirs.perspectives
            ):
                assert name_a == name_b
                assert trace_distance(state_a, state_b) <= 1e-10
        assert compiled.acceptance_probability == pytest.approx(
            1.0 / 6.0, abs=1e-12
        )
        assert compiled.prediction_pair == (1, 0)

    def test_invalid_tree_is_refused(self):
        ast = parsed(load_corpus("negative/self_description.wfp"))
        with pytest.raises(QuantumError, match="not executable"):
            compile_and_run(ast)

    def test_runtime_failures_carry_the_step_number(self):
        ast = parsed(
            "system Q : qubit\nsystem L : qubit\n"
            "physicist A cut { Q }\nphysicist B cut { Q, L }\n"
            "step 1: B prepare Q in |0>\n"
            "step 2: A measure Q in computational into L\n"
            "step 3: A postselect L = 1"
        )
        assert validate(ast) == []
        with pytest.raises(QuantumError, match="step 3"):
            compile_and_run(ast)

    def test_protocol_name_is_attached(self):
        compiled = compile_and_run(
            parsed(load_corpus("wigner.wfp")), protocol="wigner"
        )
        assert compiled.protocol == "wigner"


class TestCorpusAccess:
    def test_paths_exist(self):
        for name in CORPUS:
            assert corpus_path(name).endswith(name)

    def test_negative_paths_exist(self):
        for name in (
            "negative/self_description.wfp",
            "negative/reversal_outside_cut.wfp",
            "negative/syntax_error.wfp",
        ):
            assert load_corpus(name)

    def test_unknown_name_lists_bundled_files(self):
        with pytest.raises(QuantumError, match="wigner.wfp"):
            corpus_path("missing.wfp")
