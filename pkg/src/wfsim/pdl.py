"""A small text format for multi-physicist quantum protocols.

A protocol file declares labelled systems and physicists with their
Heisenberg cuts, then lists numbered steps: preparations, sends, isolation
markers, dilated measurements, exact reversals, outcome selections, and a
final prediction pair. Three bundled files transcribe the built-in
protocols; ``compile_and_run`` executes any valid file through the same
step engine the built-ins use, so compiled traces and built-in traces agree
state by state.

The pipeline is parse -> validate -> compile_and_run. ``parse`` returns
either the syntax tree or a :class:`ParseError` with 1-based position data;
``validate`` returns executable-blocking diagnostics (empty means runnable);
``pretty_print`` renders a canonical text that reparses to an equal tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Optional, Sequence, Union

from .protocols import (
    KET_EXPRESSIONS,
    ProtocolRun,
    ProtocolTrace,
    hardy_ket,
)
from .qcore import (
    QuantumError,
    SystemLabel,
    computational_basis,
    diagonal_basis,
)

VERBS = (
    "isolate",
    "measure",
    "postselect",
    "predict",
    "prepare",
    "reverse",
    "send",
)

_BASIS_NAMES = ("computational", "diagonal")


# ---------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class SystemDecl:
    name: str
    dim: int


@dataclass(frozen=True)
class PhysicistDecl:
    name: str
    cut: tuple[str, ...]


@dataclass(frozen=True)
class KetExpr:
    """Either a fixed qubit ket (kind "basis", text like "|+>") or the
    built-in two-qubit preparation (kind "hardy" with two system names)."""

    kind: str
    text: str = ""
    args: tuple[str, ...] = ()

    def render(self) -> str:
        if self.kind == "basis":
            return self.text
        return f"hardy({self.args[0]}, {self.args[1]})"


@dataclass(frozen=True)
class ProtocolStep:
    """One numbered step; the verb decides which optional fields are set."""

    number: int
    actor: str
    verb: str
    targets: tuple[str, ...] = ()
    ket: Optional[KetExpr] = None
    recipient: Optional[str] = None
    isolated: Optional[str] = None
    basis: Optional[str] = None
    record: Optional[str] = None
    to_step: Optional[int] = None
    outcome: Optional[str] = None
    pair: Optional[tuple[str, str]] = None


@dataclass(frozen=True)
class ProtocolAst:
    systems: tuple[SystemDecl, ...]
    physicists: tuple[PhysicistDecl, ...]
    steps: tuple[ProtocolStep, ...]

    @property
    def predictions(self) -> tuple[ProtocolStep, ...]:
        return tuple(s for s in self.steps if s.verb == "predict")


@dataclass(frozen=True)
class ParseError:
    """First grammar violation, with 1-based position and the token sets."""

    line: int
    column: int
    expected: tuple[str, ...]
    found: str

    def describe(self) -> str:
        options = ", ".join(self.expected)
        return (
            f"line {self.line}, column {self.column}: "
            f"expected {options}; found {self.found}"
        )


@dataclass(frozen=True)
class Diagnostic:
    """One validator finding; `step` is None for declaration-level issues."""

    step: Optional[int]
    code: str
    message: str

    def describe(self) -> str:
        where = "declarations" if self.step is None else f"step {self.step}"
        return f"{where}: {self.code}: {self.message}"


# ---------------------------------------------------------------------------
# tokenizer


@dataclass(frozen=True)
class _Token:
    kind: str  # "name" | "int" | "outcome" | "ket" | "punct" | "eol"
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""[ \t]+
      | (?P<comment>\#.*)
      | (?P<ket>\|[01+]>)
      | (?P<outcome>\d+bar\b)
      | (?P<int>\d+\b)
      | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<punct>[:{},()=])
    """,
    re.VERBOSE,
)


class _Failure(Exception):
    def __init__(self, error: ParseError) -> None:
        super().__init__(error.describe())
        self.error = error


def _fail(line: int, column: int, expected: Sequence[str], found: str) -> None:
    raise _Failure(
        ParseError(
            line=line,
            column=column,
            expected=tuple(sorted(set(expected))),
            found=found,
        )
    )


def _tokenize_line(text: str, line_no: int) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            _fail(
                line_no,
                pos + 1,
                ("a name", "an integer", "a ket", "punctuation"),
                repr(text[pos]),
            )
        kind = match.lastgroup
        if kind == "comment":
            break
        if kind is not None:
            tokens.append(_Token(kind, match.group(), line_no, match.start() + 1))
        pos = match.end()
    tokens.append(_Token("eol", "end of line", line_no, len(text) + 1))
    return tokens


# ---------------------------------------------------------------------------
# parser


class _LineParser:
    def __init__(self, tokens: list[_Token]) -> None:
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect_literal(self, *options: str) -> str:
        token = self.peek()
        if token.kind in ("name", "punct") and token.text in options:
            return self.advance().text
        _fail(token.line, token.column, [f'"{o}"' for o in options], token.text)
        raise AssertionError  # unreachable

    def expect_name(self, what: str = "a name") -> str:
        token = self.peek()
        if token.kind == "name":
            return self.advance().text
        _fail(token.line, token.column, (what,), token.text)
        raise AssertionError

    def expect_int(self) -> int:
        token = self.peek()
        if token.kind == "int":
            return int(self.advance().text)
        _fail(token.line, token.column, ("an integer",), token.text)
        raise AssertionError

    def expect_outcome(self) -> str:
        token = self.peek()
        if token.kind in ("int", "outcome"):
            return self.advance().text
        _fail(
            token.line,
            token.column,
            ('an outcome such as "0" or "1bar"',),
            token.text,
        )
        raise AssertionError

    def expect_end(self) -> None:
        token = self.peek()
        if token.kind != "eol":
            _fail(token.line, token.column, ("end of line",), token.text)


def _parse_ketexpr(p: _LineParser) -> KetExpr:
    token = p.peek()
    if token.kind == "ket":
        return KetExpr(kind="basis", text=p.advance().text)
    if token.kind == "name" and token.text == "hardy":
        p.advance()
        p.expect_literal("(")
        first = p.expect_name("a system name")
        p.expect_literal(",")
        second = p.expect_name("a system name")
        p.expect_literal(")")
        return KetExpr(kind="hardy", args=(first, second))
    _fail(
        token.line,
        token.column,
        ('"|0>"', '"|1>"', '"|+>"', '"hardy"'),
        token.text,
    )
    raise AssertionError


def _parse_step_body(p: _LineParser, number: int, actor: str) -> ProtocolStep:
    token = p.peek()
    if token.kind != "name" or token.text not in VERBS:
        _fail(token.line, token.column, [f'"{v}"' for v in VERBS], token.text)
    verb = p.advance().text
    if verb == "prepare":
        target = p.expect_name("a system name")
        p.expect_literal("in")
        ket = _parse_ketexpr(p)
        targets = ket.args if ket.kind == "hardy" else (target,)
        return ProtocolStep(
            number, actor, verb, targets=targets, ket=ket
        )
    if verb == "send":
        system = p.expect_name("a system name")
        p.expect_literal("to")
        recipient = p.expect_name("a physicist name")
        return ProtocolStep(
            number, actor, verb, targets=(system,), recipient=recipient
        )
    if verb == "isolate":
        isolated = p.expect_name("a physicist name")
        return ProtocolStep(number, actor, verb, isolated=isolated)
    if verb == "measure":
        system = p.expect_name("a system name")
        p.expect_literal("in")
        basis = p.expect_literal(*_BASIS_NAMES)
        p.expect_literal("into")
        record = p.expect_name("a register name")
        return ProtocolStep(
            number, actor, verb, targets=(system,), basis=basis, record=record
        )
    if verb == "reverse":
        names = [p.expect_name("a system name")]
        while p.peek().kind == "name" and p.peek().text != "to":
            names.append(p.advance().text)
        p.expect_literal("to")
        p.expect_literal("step")
        to_step = p.expect_int()
        return ProtocolStep(
            number, actor, verb, targets=tuple(names), to_step=to_step
        )
    if verb == "postselect":
        register = p.expect_name("a register name")
        p.expect_literal("=")
        outcome = p.expect_outcome()
        return ProtocolStep(
            number, actor, verb, targets=(register,), outcome=outcome
        )
    # predict
    p.expect_literal("(")
    first = p.expect_outcome()
    p.expect_literal(",")
    second = p.expect_outcome()
    p.expect_literal(")")
    return ProtocolStep(number, actor, verb, pair=(first, second))


def _parse_line(p: _LineParser) -> Union[SystemDecl, PhysicistDecl, ProtocolStep]:
    head = p.expect_literal("system", "physicist", "step")
    if head == "system":
        name = p.expect_name("a system name")
        p.expect_literal(":")
        kind = p.expect_literal("qubit", "dim")
        dim = 2 if kind == "qubit" else p.expect_int()
        decl = SystemDecl(name, dim)
    elif head == "physicist":
        name = p.expect_name("a physicist name")
        p.expect_literal("cut")
        p.expect_literal("{")
        members = [p.expect_name("a system name")]
        while p.peek().text == ",":
            p.advance()
            members.append(p.expect_name("a system name"))
        p.expect_literal("}")
        decl = PhysicistDecl(name, tuple(members))
    else:
        number = p.expect_int()
        p.expect_literal(":")
        actor = p.expect_name("a physicist name")
        decl = _parse_step_body(p, number, actor)
    p.expect_end()
    return decl


def parse(source: str) -> Union[ProtocolAst, ParseError]:
    """Parse protocol text into its syntax tree, or report the first error.

    Single pass, line oriented, deterministic: identical bytes give an equal
    tree or an equal :class:`ParseError`. Comments run from ``#`` to end of
    line.
    """
    systems: list[SystemDecl] = []
    physicists: list[PhysicistDecl] = []
    steps: list[ProtocolStep] = []
    try:
        for line_no, raw in enumerate(source.splitlines(), start=1):
            tokens = _tokenize_line(raw, line_no)
            if tokens[0].kind == "eol":
                continue
            item = _parse_line(_LineParser(tokens))
            if isinstance(item, SystemDecl):
                systems.append(item)
            elif isinstance(item, PhysicistDecl):
                physicists.append(item)
            else:
                steps.append(item)
    except _Failure as failure:
        return failure.error
    return ProtocolAst(tuple(systems), tuple(physicists), tuple(steps))


def pretty_print(ast: ProtocolAst) -> str:
    """Canonical text for a tree; reparsing it gives back an equal tree."""
    lines: list[str] = []
    for s in ast.systems:
        kind = "qubit" if s.dim == 2 else f"dim {s.dim}"
        lines.append(f"system {s.name} : {kind}")
    for p in ast.physicists:
        lines.append(f"physicist {p.name} cut {{ {', '.join(p.cut)} }}")
    if ast.steps:
        lines.append("")
    for step in ast.steps:
        lines.append(f"step {step.number}: {step.actor} {_verb_text(step)}")
    return "\n".join(lines) + "\n"


def _verb_text(step: ProtocolStep) -> str:
    if step.verb == "prepare":
        named = step.targets[0] if step.ket.kind == "basis" else step.ket.args[0]
        return f"prepare {named} in {step.ket.render()}"
    if step.verb == "send":
        return f"send {step.targets[0]} to {step.recipient}"
    if step.verb == "isolate":
        return f"isolate {step.isolated}"
    if step.verb == "measure":
        return f"measure {step.targets[0]} in {step.basis} into {step.record}"
    if step.verb == "reverse":
        return f"reverse {' '.join(step.targets)} to step {step.to_step}"
    if step.verb == "postselect":
        return f"postselect {step.targets[0]} = {step.outcome}"
    return f"predict ({step.pair[0]}, {step.pair[1]})"


# ---------------------------------------------------------------------------
# validation


def _outcome_value(token: str) -> int:
    return int(token[:-3]) if token.endswith("bar") else int(token)


def _touched(step: ProtocolStep) -> frozenset[str]:
    """Systems a step acts on (unitarily or by selection)."""
    if step.verb == "measure":
        return frozenset((step.targets[0], step.record))
    if step.verb in ("prepare", "reverse", "postselect"):
        return frozenset(step.targets)
    return frozenset()


def validate(ast: ProtocolAst) -> list[Diagnostic]:
    """Executable-blocking findings; an empty list means the tree runs.

    Covers declaration hygiene, dense step numbering, dimension fits, the
    ban on a physicist's cut containing their own record register, and the
    reversal preconditions: reversed history must stay inside the target
    set, inside the reverser's cut, and free of selections.
    """
    out: list[Diagnostic] = []
    dims: dict[str, int] = {}
    for s in ast.systems:
        if s.name in dims:
            out.append(
                Diagnostic(None, "duplicate-declaration", f"system {s.name} declared twice")
            )
        if s.dim < 2:
            out.append(
                Diagnostic(None, "bad-dimension", f"system {s.name} has dimension {s.dim}")
            )
        dims[s.name] = s.dim
    cuts: dict[str, tuple[str, ...]] = {}
    for p in ast.physicists:
        if p.name in cuts:
            out.append(
                Diagnostic(
                    None, "duplicate-declaration", f"physicist {p.name} declared twice"
                )
            )
        cuts[p.name] = p.cut
        for member in p.cut:
            if member not in dims:
                out.append(
                    Diagnostic(
                        None,
                        "undeclared-system",
                        f"cut of {p.name} names undeclared system {member}",
                    )
                )

    for position, step in enumerate(ast.steps, start=1):
        if step.number != position:
            out.append(
                Diagnostic(
                    step.number,
                    "step-numbering",
                    f"expected step {position} here, found step {step.number}",
                )
            )
        if step.actor not in cuts:
            out.append(
                Diagnostic(
                    step.number, "unknown-physicist", f"actor {step.actor} is not declared"
                )
            )
        for name in step.targets + ((step.record,) if step.record else ()):
            if name not in dims:
                out.append(
                    Diagnostic(
                        step.number,
                        "undeclared-system",
                        f"step references undeclared system {name}",
                    )
                )

        if step.verb == "prepare":
            out.extend(_check_prepare(step, dims))
        elif step.verb == "send":
            if step.recipient not in cuts:
                out.append(
                    Diagnostic(
                        step.number,
                        "unknown-physicist",
                        f"recipient {step.recipient} is not declared",
                    )
                )
        elif step.verb == "isolate":
            if step.isolated not in cuts:
                out.append(
                    Diagnostic(
                        step.number,
                        "unknown-physicist",
                        f"isolated physicist {step.isolated} is not declared",
                    )
                )
        elif step.verb == "measure":
            out.extend(_check_measure(step, dims, cuts))
        elif step.verb == "reverse":
            out.extend(_check_reverse(step, ast.steps, cuts))
        elif step.verb == "postselect":
            register = step.targets[0]
            if register in dims and _outcome_value(step.outcome) >= dims[register]:
                out.append(
                    Diagnostic(
                        step.number,
                        "bad-outcome",
                        f"outcome {step.outcome} does not fit register {register}",
                    )
                )
        else:  # predict
            for token in step.pair:
                if _outcome_value(token) > 1:
                    out.append(
                        Diagnostic(
                            step.number,
                            "bad-outcome",
                            f"prediction {token} is not a binary outcome",
                        )
                    )
    return out


def _check_prepare(step: ProtocolStep, dims: dict[str, int]) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    if step.ket.kind == "basis":
        target = step.targets[0]
        if dims.get(target, 2) != 2:
            out.append(
                Diagnostic(
                    step.number,
                    "dimension-mismatch",
                    f"ket {step.ket.text} prepares a qubit, {target} is not one",
                )
            )
        return out
    first, second = step.ket.args
    if first == second:
        out.append(
            Diagnostic(
                step.number,
                "bad-preparation",
                "the two-qubit preparation needs two distinct systems",
            )
        )
    for name in step.ket.args:
        if name not in dims:
            out.append(
                Diagnostic(
                    step.number,
                    "undeclared-system",
                    f"step references undeclared system {name}",
                )
            )
        elif dims[name] != 2:
            out.append(
                Diagnostic(
                    step.number,
                    "dimension-mismatch",
                    f"the two-qubit preparation needs qubits, {name} is not one",
                )
            )
    return out


def _check_measure(
    step: ProtocolStep, dims: dict[str, int], cuts: dict[str, tuple[str, ...]]
) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    system = step.targets[0]
    if step.record == system:
        out.append(
            Diagnostic(
                step.number,
                "bad-record",
                f"{system} cannot record its own outcome",
            )
        )
    if (
        system in dims
        and step.record in dims
        and dims[system] != dims[step.record]
    ):
        out.append(
            Diagnostic(
                step.number,
                "dimension-mismatch",
                f"record {step.record} does not fit the outcomes of {system}",
            )
        )
    if step.basis == "diagonal" and dims.get(system, 2) != 2:
        out.append(
            Diagnostic(
                step.number,
                "dimension-mismatch",
                f"the diagonal basis is defined for qubits, {system} is not one",
            )
        )
    if step.record in cuts.get(step.actor, ()):
        out.append(
            Diagnostic(
                step.number,
                "self-description",
                f"the cut of {step.actor} contains their own record {step.record}",
            )
        )
    return out


def _check_reverse(
    step: ProtocolStep,
    steps: tuple[ProtocolStep, ...],
    cuts: dict[str, tuple[str, ...]],
) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    targets = frozenset(step.targets)
    if step.to_step is None or not 1 <= step.to_step < step.number:
        out.append(
            Diagnostic(
                step.number,
                "reversal-forward",
                f"cannot reverse to step {step.to_step} from step {step.number}",
            )
        )
        return out
    cut = frozenset(cuts.get(step.actor, ()))
    for other in steps:
        if not step.to_step <= other.number < step.number:
            continue
        touched = _touched(other)
        if not touched & targets:
            continue
        if other.verb == "postselect":
            out.append(
                Diagnostic(
                    step.number,
                    "reversal-selection",
                    f"step {other.number} selected an outcome on "
                    f"{other.targets[0]}, which cannot be undone",
                )
            )
        elif not touched <= targets:
            outside = ", ".join(sorted(touched - targets))
            out.append(
                Diagnostic(
                    step.number,
                    "reversal-entangled",
                    f"step {other.number} couples the targets to {outside}",
                )
            )
        elif not touched <= cut:
            outside = ", ".join(sorted(touched - cut))
            out.append(
                Diagnostic(
                    step.number,
                    "reversal-outside-cut",
                    f"step {other.number} acts on {outside}, outside the cut "
                    f"of {step.actor}",
                )
            )
    return out


# ---------------------------------------------------------------------------
# compilation


def compile_and_run(ast: ProtocolAst, protocol: str = "pdl") -> ProtocolTrace:
    """Execute a validated tree through the shared step engine.

    Raises if validation finds anything; runtime failures are re-raised
    with the offending step number attached.
    """
    findings = validate(ast)
    if findings:
        details = "; ".join(d.describe() for d in findings[:3])
        raise QuantumError(
            f"protocol is not executable ({len(findings)} findings): {details}"
        )
    labels = {s.name: SystemLabel(s.name, s.dim) for s in ast.systems}
    cuts = {
        p.name: tuple(labels[m] for m in p.cut) for p in ast.physicists
    }
    run = ProtocolRun(
        protocol, tuple(labels[s.name] for s in ast.systems), cuts
    )
    for step in ast.steps:
        try:
            _execute(run, step, labels)
        except QuantumError as exc:
            raise QuantumError(f"step {step.number}: {exc}") from exc
    return run.finish()


def _execute(
    run: ProtocolRun, step: ProtocolStep, labels: dict[str, SystemLabel]
) -> None:
    if step.verb == "prepare":
        if step.ket.kind == "basis":
            ket = KET_EXPRESSIONS[step.ket.text]
        else:
            ket = hardy_ket()
        targets = tuple(labels[name] for name in step.targets)
        run.prepare(step.actor, targets, ket, step.ket.render())
    elif step.verb == "send":
        run.send(step.actor, labels[step.targets[0]], step.recipient)
    elif step.verb == "isolate":
        run.isolate(step.actor, step.isolated)
    elif step.verb == "measure":
        target = labels[step.targets[0]]
        basis = (
            computational_basis(target)
            if step.basis == "computational"
            else diagonal_basis(target)
        )
        run.measure(step.actor, basis, labels[step.record])
    elif step.verb == "reverse":
        run.reverse(
            step.actor,
            tuple(labels[name] for name in step.targets),
            step.to_step,
        )
    elif step.verb == "postselect":
        run.postselect(
            step.actor,
            labels[step.targets[0]],
            _outcome_value(step.outcome),
            step.outcome,
        )
    else:
        first, second = step.pair
        run.predict(
            step.actor,
            (_outcome_value(first), _outcome_value(second)),
            f"({first}, {second})",
        )


# ---------------------------------------------------------------------------
# bundled corpus


def corpus_path(name: str) -> str:
    """Filesystem path of a bundled ``.wfp`` file, e.g. "wigner.wfp" or
    "negative/syntax_error.wfp"."""
    base = resources.files(__package__) / "corpus"
    candidate = base.joinpath(*name.split("/"))
    if not candidate.is_file():
        bundled = sorted(
            entry.name for entry in base.iterdir() if entry.name.endswith(".wfp")
        )
        raise QuantumError(
            f"no bundled protocol {name!r}; bundled: {', '.join(bundled)}"
        )
    return str(candidate)


def load_corpus(name: str) -> str:
    with open(corpus_path(name), encoding="utf-8") as handle:
        return handle.read()
