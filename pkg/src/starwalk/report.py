"""Run reports and the benchmark driver shared by the CLI and the test suite."""

from __future__ import annotations

import csv
import hashlib
import io
import time
from dataclasses import dataclass, field

from . import __version__
from .circuit import CostModel
from .graph import Graph, cycle_graph, export_edge_list, path_graph, random_regular_graph
from .pauli import synthesize_ctqw_pauli
from .simulate import UNITARY_WIDTH_CAP
from .trotter import SynthesisResult, synthesize_ctqw

FAMILIES = ("cycle", "random-regular", "path")
METHODS = ("star", "pauli")
CSV_COLUMNS = ("N", "d", "method", "m", "r", "gate_total", "weighted_total", "distance", "seconds")


def graph_digest(g: Graph) -> str:
    return hashlib.sha256(export_edge_list(g).encode()).hexdigest()[:16]


@dataclass
class RunReport:
    digest: str
    params: dict
    m: int | None = None
    r: int | None = None
    n_exp: int | None = None
    exponentials: int | None = None
    counts: dict = field(default_factory=dict)
    gate_total: int | None = None
    weighted_total: int | None = None
    segment_weighted: int | None = None
    distance: float | None = None
    seconds: float = 0.0

    def lines(self) -> list[str]:
        def fmt(v):
            if v is None:
                return "n/a"
            if isinstance(v, float):
                return repr(v)
            return str(v)

        out = [f"version={__version__}", f"input_digest={self.digest}"]
        out += [f"{k}={fmt(v)}" for k, v in self.params.items()]
        out += [
            f"m={fmt(self.m)}",
            f"r={fmt(self.r)}",
            f"N_exp={fmt(self.n_exp)}",
            f"exponentials={fmt(self.exponentials)}",
            "merged_adjacent=yes",
        ]
        out += [f"count_{k}={v}" for k, v in sorted(self.counts.items())]
        out += [
            f"gate_total={fmt(self.gate_total)}",
            f"weighted_total={fmt(self.weighted_total)}",
            f"segment_weighted_total={fmt(self.segment_weighted)}",
            f"distance={fmt(self.distance)}",
            f"seconds={self.seconds:.3f}",
        ]
        return out

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def synthesize(
    g: Graph,
    method: str,
    gamma: float,
    t: float,
    eps: float,
    k: int = 1,
    mode: str = "adaptive",
    norm: str = "bound",
    verify: bool = False,
    model: CostModel | None = None,
) -> tuple[SynthesisResult, RunReport]:
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    start = time.perf_counter()
    fn = synthesize_ctqw if method == "star" else synthesize_ctqw_pauli
    res = fn(g, gamma, t, eps, k, mode, norm=norm, verify=verify)
    seg = res.segment_count(model)
    total = seg.scaled(res.r)
    report = RunReport(
        digest=graph_digest(g),
        params={"gamma": gamma, "time": t, "epsilon": eps, "k": k, "mode": mode, "method": method, "norm": norm},
        m=res.m,
        r=res.r,
        n_exp=res.n_exp_bound,
        exponentials=res.exponentials,
        counts=dict(total.counts),
        gate_total=total.total,
        weighted_total=total.weighted,
        segment_weighted=seg.weighted,
        distance=res.distance,
        seconds=time.perf_counter() - start,
    )
    return res, report


def family_graph(family: str, n: int, d: int, seed: int) -> Graph:
    if family == "cycle":
        return cycle_graph(n)
    if family == "path":
        return path_graph(n)
    if family == "random-regular":
        return random_regular_graph(d, n, seed)
    raise ValueError(f"family must be one of {FAMILIES}")


def benchmark_rows(
    family: str,
    sizes: list[int],
    d: int,
    gamma: float,
    t: float,
    eps: float,
    k: int,
    mode: str = "adaptive",
    methods: tuple[str, ...] = METHODS,
    seed: int = 0,
    model: CostModel | None = None,
) -> list[dict]:
    """One row per (size, method); distance is filled whenever the width fits the simulator."""
    rows = []
    for n in sizes:
        g = family_graph(family, n, d, seed)
        verifiable = g.num_qubits + 1 <= UNITARY_WIDTH_CAP
        if mode == "adaptive" and not verifiable:
            raise ValueError(f"adaptive mode cannot verify N={n}; use --mode bound")
        for method in methods:
            res, rep = synthesize(g, method, gamma, t, eps, k, mode, verify=verifiable, model=model)
            rows.append({
                "N": n,
                "d": max(len(nb) for nb in g.neighbors()),
                "method": method,
                "m": rep.m,
                "r": rep.r,
                "gate_total": rep.gate_total,
                "weighted_total": rep.weighted_total,
                "distance": "" if rep.distance is None else f"{rep.distance:.6e}",
                "seconds": f"{rep.seconds:.3f}",
            })
    rows.sort(key=lambda row: (row["N"], METHODS.index(row["method"])))
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
