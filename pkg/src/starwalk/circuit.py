"""Gate-level circuit IR, cost model and the line-oriented text format.

Text format::

    qubits <n>
    X <q> | H <q> | SWAP <q1> <q2> | RX <theta> <q> | RZ <theta> <q>
    CTRL [<+q|-q> ...] <base gate line>

``+q`` is a closed control (fires on 1), ``-q`` an open control (fires on 0).
Qubit 0 is the least significant bit of a vertex label and the ancilla is the
highest-indexed qubit.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

BASE_KINDS = ("X", "H", "SWAP", "RX", "RZ")
ROTATIONS = ("RX", "RZ")
SELF_INVERSE = ("X", "H", "SWAP")


class CircuitFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Gate:
    kind: str
    targets: tuple[int, ...]
    angle: float | None = None
    controls: tuple[tuple[int, bool], ...] = ()

    def __post_init__(self):
        if self.kind not in BASE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = 2 if self.kind == "SWAP" else 1
        if len(self.targets) != arity:
            raise ValueError(f"{self.kind} takes {arity} target(s), got {self.targets}")
        if (self.angle is None) == (self.kind in ROTATIONS):
            raise ValueError(f"{self.kind}: angle must be given exactly for rotations")
        qubits = self.qubits
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"repeated qubit in {self}")
        if min(qubits) < 0:
            raise ValueError(f"negative qubit index in {self}")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.targets + tuple(q for q, _ in self.controls)

    @property
    def label(self) -> str:
        """Tally key: X, CX, MCX, RZ, CRZ, MCRZ, ..."""
        w = len(self.controls)
        return self.kind if w == 0 else ("C" if w == 1 else "MC") + self.kind

    def inverse(self) -> Gate:
        if self.kind in SELF_INVERSE:
            return self
        return Gate(self.kind, self.targets, -self.angle, self.controls)

    def with_control(self, qubit: int, closed: bool = True) -> Gate:
        return Gate(self.kind, self.targets, self.angle, self.controls + ((qubit, closed),))


# constructors used across the package
def X(q: int) -> Gate:
    return Gate("X", (q,))


def H(q: int) -> Gate:
    return Gate("H", (q,))


def SWAP(a: int, b: int) -> Gate:
    return Gate("SWAP", (a, b))


def RX(theta: float, q: int) -> Gate:
    return Gate("RX", (q,), float(theta))


def RZ(theta: float, q: int) -> Gate:
    return Gate("RZ", (q,), float(theta))


def CX(control: int, target: int, closed: bool = True) -> Gate:
    return Gate("X", (target,), None, ((control, closed),))


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("circuit width must be positive")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.qubits) >= self.num_qubits:
                raise ValueError(f"{g} exceeds circuit width {self.num_qubits}")

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if other.num_qubits != self.num_qubits:
            raise ValueError("cannot concatenate circuits of different width")
        return Circuit(self.num_qubits, self.gates + other.gates)

    def controlled(self, qubit: int, closed: bool = True) -> Circuit:
        """Every gate gains one extra control on ``qubit``."""
        return Circuit(self.num_qubits, tuple(g.with_control(qubit, closed) for g in self.gates))

    def widened(self, num_qubits: int) -> Circuit:
        return Circuit(num_qubits, self.gates)


def concat(width: int, parts: Iterable[Circuit]) -> Circuit:
    gates: list[Gate] = []
    for p in parts:
        if p.num_qubits != width:
            raise ValueError(f"part of width {p.num_qubits} in a width-{width} concatenation")
        gates.extend(p.gates)
    return Circuit(width, tuple(gates))


def invert_circuit(c: Circuit) -> Circuit:
    return Circuit(c.num_qubits, tuple(g.inverse() for g in reversed(c.gates)))


@dataclass(frozen=True)
class CostModel:
    """Elementary-gate weights.

    One-qubit gates and CX cost 1, SWAP 3, a singly controlled rotation or H
    costs 2, a singly controlled SWAP is CX-Toffoli-CX, and anything with
    w >= 2 controls costs ``multi_control_factor * w`` regardless of its base.
    Control polarity is free.
    """

    multi_control_factor: int = 16

    def cost(self, g: Gate) -> int:
        w = len(g.controls)
        if w == 0:
            return 3 if g.kind == "SWAP" else 1
        if w >= 2:
            return self.multi_control_factor * w
        if g.kind == "X":
            return 1
        if g.kind == "SWAP":
            return 2 + 2 * self.multi_control_factor
        return 2


@dataclass
class GateCount:
    counts: Counter = field(default_factory=Counter)
    total: int = 0
    weighted: int = 0

    def __add__(self, other: GateCount) -> GateCount:
        return GateCount(self.counts + other.counts, self.total + other.total, self.weighted + other.weighted)

    def scaled(self, times: int) -> GateCount:
        return GateCount(
            Counter({k: v * times for k, v in self.counts.items()}),
            self.total * times,
            self.weighted * times,
        )


def gate_count(c: Circuit, model: CostModel | None = None) -> GateCount:
    model = model or CostModel()
    counts = Counter(g.label for g in c.gates)
    return GateCount(counts, len(c.gates), sum(model.cost(g) for g in c.gates))


def format_angle(theta: float) -> str:
    return "%.17g" % theta


def _format_base(g: Gate) -> str:
    qs = " ".join(str(q) for q in g.targets)
    if g.kind in ROTATIONS:
        return f"{g.kind} {format_angle(g.angle)} {qs}"
    return f"{g.kind} {qs}"


def format_gate(g: Gate) -> str:
    if not g.controls:
        return _format_base(g)
    ctl = " ".join(("+" if closed else "-") + str(q) for q, closed in g.controls)
    return f"CTRL [{ctl}] {_format_base(g)}"


def export_circuit(c: Circuit) -> str:
    return "".join([f"qubits {c.num_qubits}\n"] + [format_gate(g) + "\n" for g in c.gates])


def _parse_int(tok: str, lineno: int) -> int:
    try:
        q = int(tok)
    except ValueError:
        raise CircuitFormatError(f"expected a qubit index, got {tok!r}", lineno) from None
    if q < 0:
        raise CircuitFormatError(f"negative qubit index {q}", lineno)
    return q


def _parse_base(tokens: list[str], controls, lineno: int) -> Gate:
    if not tokens:
        raise CircuitFormatError("missing gate", lineno)
    kind, args = tokens[0].upper(), tokens[1:]
    if kind not in BASE_KINDS:
        raise CircuitFormatError(f"unknown gate {tokens[0]!r}", lineno)
    angle = None
    if kind in ROTATIONS:
        if not args:
            raise CircuitFormatError(f"{kind} needs an angle", lineno)
        try:
            angle = float(args[0])
        except ValueError:
            raise CircuitFormatError(f"bad angle {args[0]!r}", lineno) from None
        args = args[1:]
    arity = 2 if kind == "SWAP" else 1
    if len(args) != arity:
        raise CircuitFormatError(f"{kind} takes {arity} qubit(s), got {len(args)}", lineno)
    try:
        return Gate(kind, tuple(_parse_int(a, lineno) for a in args), angle, controls)
    except CircuitFormatError:
        raise
    except ValueError as exc:
        raise CircuitFormatError(str(exc), lineno) from None


def parse_gate(line: str, lineno: int | None = None) -> Gate:
    tokens = line.split()
    if tokens and tokens[0].upper() == "CTRL":
        rest = line.split(None, 1)[1] if len(tokens) > 1 else ""
        if not rest.startswith("[") or "]" not in rest:
            raise CircuitFormatError("CTRL needs a bracketed control list", lineno)
        inner, base = rest[1:].split("]", 1)
        controls = []
        for tok in inner.split():
            sign, q = tok[0], tok[1:]
            if sign not in "+-−" or not q:
                raise CircuitFormatError(f"bad control {tok!r}", lineno)
            controls.append((_parse_int(q, lineno), sign == "+"))
        if not controls:
            raise CircuitFormatError("empty control list", lineno)
        return _parse_base(base.split(), tuple(controls), lineno)
    return _parse_base(tokens, (), lineno)


def parse_circuit(text: str) -> Circuit:
    width = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if width is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "qubits":
                raise CircuitFormatError("first line must be 'qubits <n>'", lineno)
            width = _parse_int(parts[1], lineno)
            if width < 1:
                raise CircuitFormatError("circuit width must be positive", lineno)
            continue
        g = parse_gate(line, lineno)
        if max(g.qubits) >= width:
            raise CircuitFormatError(f"qubit {max(g.qubits)} out of range for width {width}", lineno)
        gates.append(g)
    if width is None:
        raise CircuitFormatError("missing 'qubits <n>' header")
    return Circuit(width, tuple(gates))
