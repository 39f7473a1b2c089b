"""Command line: decompose, synthesize, verify, benchmark, pauli-terms.

Exit codes: 0 ok, 1 usage, 2 input parse, 3 verification failure,
4 precondition violation, 5 size cap.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
import time
from pathlib import Path

from .circuit import CircuitFormatError, Circuit, CostModel, export_circuit, parse_circuit
from .decompose import decompose_to_stars
from .graph import Graph, GraphFormatError, SizeCapError, adjacency_matrix, degree_profile, parse_edge_list
from .pauli import dump_terms, pauli_decompose
from .report import FAMILIES, METHODS, RunReport, benchmark_rows, graph_digest, rows_to_csv, synthesize
from .simulate import UNITARY_WIDTH_CAP, sector_distance
from .trotter import MODES, PreconditionError, SegmentCapError, padded_target

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VERIFY, EXIT_PRECONDITION, EXIT_CAP = range(6)
DEFAULT_MAX_GATES = 5_000_000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _write_atomic(path: str, text: str) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out:
        _write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _read_graph(path: str) -> Graph:
    try:
        return parse_edge_list(Path(path).read_text())
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc.strerror}") from None


def cmd_decompose(args) -> int:
    g = _read_graph(args.graph)
    forests = decompose_to_stars(g)
    d = degree_profile(g).max_degree
    lines = [
        f"forest={sf.forest_index} color={sf.color_class} center={s.center} leaves={','.join(map(str, s.leaves))}"
        for sf in forests
        for s in sf.stars
    ]
    stars = sum(len(sf.stars) for sf in forests)
    lines.append(f"d={d} forests={d} star_forests={len(forests)} stars={stars}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_synthesize(args) -> int:
    g = _read_graph(args.graph)
    if g.num_qubits + 1 > UNITARY_WIDTH_CAP and (args.mode == "adaptive" or args.verify):
        print(f"width {g.num_qubits + 1} exceeds the simulator cap {UNITARY_WIDTH_CAP}", file=sys.stderr)
        return EXIT_CAP
    res, report = synthesize(
        g, args.method, args.gamma, args.time, args.epsilon, args.order_k, args.mode,
        norm=args.norm, verify=args.verify, model=CostModel(args.mc_cost),
    )
    if report.gate_total > args.max_gates:
        print(f"circuit has {report.gate_total} gates, above --max-gates {args.max_gates}; no file written", file=sys.stderr)
        sys.stdout.write(report.text())
        return EXIT_CAP
    if args.out:
        _write_atomic(args.out, export_circuit(res.circuit()))
    sys.stdout.write(report.text())
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _read_graph(args.graph)
    try:
        circuit = parse_circuit(Path(args.circuit).read_text())
    except OSError as exc:
        raise CircuitFormatError(f"cannot read {args.circuit}: {exc.strerror}") from None
    if circuit.num_qubits > UNITARY_WIDTH_CAP:
        print(f"width {circuit.num_qubits} exceeds the simulator cap {UNITARY_WIDTH_CAP}", file=sys.stderr)
        return EXIT_CAP
    n = g.num_qubits
    if circuit.num_qubits not in (n, n + 1):
        raise CircuitFormatError(f"circuit width {circuit.num_qubits} does not fit a {n}-qubit graph register")
    start = time.perf_counter()
    distance = sector_distance(circuit, padded_target(g, args.gamma, args.time), n)
    report = RunReport(
        digest=graph_digest(g),
        params={"gamma": args.gamma, "time": args.time, "epsilon": args.epsilon, "circuit": args.circuit},
        gate_total=len(circuit.gates),
        distance=distance,
        seconds=time.perf_counter() - start,
    )
    sys.stdout.write(report.text())
    return EXIT_OK if distance <= args.epsilon else EXIT_VERIFY


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_benchmark(args) -> int:
    methods = tuple(args.methods.split(","))
    if any(m not in METHODS for m in methods):
        raise UsageError(f"--methods must be drawn from {METHODS}")
    try:
        rows = benchmark_rows(
            args.family, args.sizes, args.d, args.gamma, args.time, args.epsilon, args.order_k,
            args.mode, methods, args.seed, CostModel(args.mc_cost),
        )
    except ValueError as exc:
        if isinstance(exc, (PreconditionError, SizeCapError)):
            raise
        raise UsageError(str(exc)) from None
    _emit(rows_to_csv(rows), args.out)
    return EXIT_OK


def cmd_pauli_terms(args) -> int:
    g = _read_graph(args.graph)
    terms = pauli_decompose(adjacency_matrix(g, dim=2**g.num_qubits), args.gamma)
    _emit(dump_terms(terms), args.out)
    return EXIT_OK


def _walk_flags(p: argparse.ArgumentParser, with_eps_default: bool = True) -> None:
    p.add_argument("--gamma", type=float, default=1.0, help="hopping rate in H = gamma A")
    p.add_argument("--time", type=float, default=1.0, help="evolution time t")
    p.add_argument("--epsilon", type=float, default=1e-3, help="spectral-norm error target")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="starwalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decompose", help="dump the star-forest decomposition of a graph")
    p.add_argument("graph")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    def synth_flags(p):
        _walk_flags(p)
        p.add_argument("--order-k", type=int, default=1, help="Suzuki order 2k")
        p.add_argument("--mode", choices=MODES, default="adaptive")
        p.add_argument("--norm", choices=("bound", "exact"), default="bound", help="|H| estimate: gamma*d or exact")
        p.add_argument("--mc-cost", type=int, default=16, help="cost per control of a multi-controlled gate")

    p = sub.add_parser("synthesize", help="compile e^{-i gamma A t} to a circuit file")
    p.add_argument("graph")
    synth_flags(p)
    p.add_argument("--method", choices=METHODS, default="star")
    p.add_argument("--out", help="circuit file to write")
    p.add_argument("--verify", action="store_true", help="also measure the spectral distance")
    p.add_argument("--max-gates", type=int, default=DEFAULT_MAX_GATES)
    p.add_argument("--seed", type=int, default=0, help="unused; accepted for a uniform flag set")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("verify", help="measure a circuit file against the exact walk")
    p.add_argument("graph")
    p.add_argument("circuit")
    _walk_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("benchmark", help="CSV of gate counts over a graph family")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--sizes", type=_int_list, required=True, help="comma-separated vertex counts")
    p.add_argument("--d", type=int, default=2, help="degree for random-regular graphs")
    synth_flags(p)
    p.add_argument("--methods", default="star,pauli")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("pauli-terms", help="dump the Pauli decomposition of gamma A")
    p.add_argument("graph")
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pauli_terms)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, CircuitFormatError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (SizeCapError, SegmentCapError) as exc:
        print(f"size cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
