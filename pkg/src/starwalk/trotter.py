"""Suzuki product formulas over star-forest terms, segment-count selection."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .circuit import Circuit, CostModel, GateCount, concat, gate_count
from .decompose import StarForest, decompose_to_stars
from .graph import Graph, adjacency_matrix, degree_profile
from .simulate import circuit_unitary, exact_evolution, spectral_distance, spectral_norm
from .stars import star_forest_evolution

DEFAULT_MAX_SEGMENTS = 2**20
MODES = ("bound", "adaptive")

TermFactory = Callable[[float], Circuit]


class PreconditionError(ValueError):
    """A parameter inequality required by the error bound does not hold."""


class SegmentCapError(RuntimeError):
    pass


def suzuki_p(k: int) -> float:
    return 1.0 / (4.0 - 4.0 ** (1.0 / (2 * k - 1)))


def _suzuki(m: int, k: int, lam: float) -> list[tuple[int, float]]:
    if k == 1:
        half = lam / 2
        return [(j, half) for j in range(m)] + [(j, half) for j in reversed(range(m))]
    p = suzuki_p(k)
    outer = _suzuki(m, k - 1, p * lam)
    return outer + outer + _suzuki(m, k - 1, (1 - 4 * p) * lam) + outer + outer


def suzuki_schedule(m: int, k: int, lam: float) -> list[tuple[int, float]]:
    """Time-ordered (term, duration) pairs of the order-2k Suzuki formula.

    Terms are 0-based. Adjacent factors of the same term are merged, so the
    second-order formula on m terms has 2m - 1 entries.
    """
    if m < 1 or k < 1:
        raise ValueError("need m >= 1 and k >= 1")
    if m == 1:
        return [(0, lam)]
    merged: list[list] = []
    for j, tau in _suzuki(m, k, lam):
        if merged and merged[-1][0] == j:
            merged[-1][1] += tau
        else:
            merged.append([j, tau])
    return [(j, tau) for j, tau in merged]


def exponential_budget(m: int, norm_ht: float, eps: float, k: int) -> int:
    """ceil(2 m^2 5^{2k} |H|t (m |H|t / eps)^{1/2k}), the exponential budget."""
    if not 0 < eps <= 1:
        raise PreconditionError(f"need 0 < eps <= 1, got eps={eps}")
    lhs = 2 * m * 5 ** (k - 1) * norm_ht
    if lhs < 1:
        raise PreconditionError(f"need 1 <= 2 m 5^(k-1) |H|t, got 2*{m}*5^{k - 1}*{norm_ht} = {lhs}")
    return math.ceil(2 * m**2 * 5 ** (2 * k) * norm_ht * (m * norm_ht / eps) ** (1 / (2 * k)))


def exponentials_per_segment(m: int, k: int) -> int:
    return len(suzuki_schedule(m, k, 1.0))


def choose_segments(
    mode: str,
    m: int,
    norm_ht: float,
    eps: float,
    k: int,
    verifier: Callable[[int], float] | None = None,
    max_r: int = DEFAULT_MAX_SEGMENTS,
) -> int:
    """Segment count r.

    ``bound``: enough segments that r times the exponentials per segment
    reaches the exponential budget. ``adaptive``: double r from 1 until
    ``verifier(r)`` reports a spectral error <= eps.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if m <= 1:
        return 1
    if mode == "bound":
        budget = exponential_budget(m, norm_ht, eps, k)
        return math.ceil(budget / exponentials_per_segment(m, k))
    if verifier is None:
        raise ValueError("adaptive mode needs a verifier")
    r = 1
    while r <= max_r:
        if verifier(r) <= eps:
            return r
        r *= 2
    raise SegmentCapError(f"no r <= {max_r} met eps={eps}")


def compose_segment(terms: Sequence[TermFactory], width: int, schedule) -> Circuit:
    return concat(width, [terms[j](tau) for j, tau in schedule])


@dataclass
class SynthesisResult:
    """One Trotter segment plus its repetition count.

    The full circuit is ``segment`` applied ``r`` times; materializing it is
    optional because bound-mode r runs into the hundreds of thousands.
    """

    method: str
    num_vertices: int
    working: int
    segment: Circuit
    r: int
    m: int
    k: int
    mode: str
    norm_ht: float
    n_exp_bound: int | None
    schedule: list = field(repr=False, default_factory=list)
    distance: float | None = None

    @property
    def width(self) -> int:
        return self.segment.num_qubits

    @property
    def exponentials(self) -> int:
        return self.r * len(self.schedule)

    def circuit(self) -> Circuit:
        return Circuit(self.width, self.segment.gates * self.r)

    def segment_count(self, model: CostModel | None = None) -> GateCount:
        return gate_count(self.segment, model)

    def total_count(self, model: CostModel | None = None) -> GateCount:
        return self.segment_count(model).scaled(self.r)

    def sector_unitary(self) -> np.ndarray:
        """Working-register block of segment^r (ancilla in and out at |0>)."""
        u = np.linalg.matrix_power(circuit_unitary(self.segment), self.r)
        return u[: 2**self.working, : 2**self.working]


def _leakage_aware_distance(segment: Circuit, r: int, working: int, target: np.ndarray) -> float:
    u = np.linalg.matrix_power(circuit_unitary(segment), r)
    cols = u[:, : 2**working]
    full = np.zeros_like(cols)
    full[: 2**working] = target
    return spectral_distance(cols, full)


def run_product_formula(
    method: str,
    num_vertices: int,
    terms: Sequence[TermFactory],
    working: int,
    t: float,
    eps: float,
    k: int,
    mode: str,
    norm_ht: float,
    target: Callable[[], np.ndarray] | None,
    max_r: int = DEFAULT_MAX_SEGMENTS,
    verify: bool = False,
) -> SynthesisResult:
    """Drive any list of term factories through the Suzuki formula."""
    width = working + 1
    m = len(terms)
    n_exp = None
    if m >= 2:
        try:
            n_exp = exponential_budget(m, norm_ht, eps, k)
        except PreconditionError:
            if mode == "bound":
                raise
    cache: dict[int, Circuit] = {}

    def segment_for(r: int) -> Circuit:
        if r not in cache:
            cache[r] = compose_segment(terms, width, suzuki_schedule(m, k, t / r)) if m else Circuit(width)
        return cache[r]

    exact = None

    def verifier(r: int) -> float:
        nonlocal exact
        if exact is None:
            exact = target()
        return _leakage_aware_distance(segment_for(r), r, working, exact)

    r = choose_segments(mode, m, norm_ht, eps, k, verifier if mode == "adaptive" else None, max_r)
    result = SynthesisResult(
        method=method,
        num_vertices=num_vertices,
        working=working,
        segment=segment_for(r),
        r=r,
        m=m,
        k=k,
        mode=mode,
        norm_ht=norm_ht,
        n_exp_bound=n_exp,
        schedule=suzuki_schedule(m, k, t / r) if m else [],
    )
    if verify:
        result.distance = verifier(r)
    return result


def hamiltonian_norm(g: Graph, gamma: float, norm: str = "bound") -> float:
    """|H| for H = gamma A: gamma * max_degree, or the exact spectral norm."""
    if norm == "bound":
        return abs(gamma) * degree_profile(g).max_degree
    if norm == "exact":
        return spectral_norm(gamma * adjacency_matrix(g))
    raise ValueError(f"norm must be 'bound' or 'exact', got {norm!r}")


def padded_target(g: Graph, gamma: float, t: float) -> np.ndarray:
    """Exact e^{-i gamma A t} on the 2**n-dimensional padded register."""
    return exact_evolution(gamma * adjacency_matrix(g, dim=2**g.num_qubits), t)


def check_synthesis_precondition(d: int, norm_ht: float, eps: float, k: int) -> None:
    if not 0 < eps <= 1:
        raise PreconditionError(f"need 0 < eps <= 1, got eps={eps}")
    rhs = 12 * d * 5 ** (k - 1) * norm_ht
    if rhs < 1:
        raise PreconditionError(f"need 1 <= 12 d 5^(k-1) |H|t, got 12*{d}*5^{k - 1}*{norm_ht} = {rhs}")


def synthesize_ctqw(
    g: Graph,
    gamma: float,
    t: float,
    eps: float,
    k: int = 1,
    mode: str = "adaptive",
    norm: str = "bound",
    max_r: int = DEFAULT_MAX_SEGMENTS,
    verify: bool = False,
    star_forests: list[StarForest] | None = None,
) -> SynthesisResult:
    """Star-forest product-formula circuit for e^{-i gamma A t}."""
    if not 0 < eps <= 1:
        raise PreconditionError(f"need 0 < eps <= 1, got eps={eps}")
    if k < 1:
        raise PreconditionError(f"need k >= 1, got k={k}")
    n = g.num_qubits
    norm_ht = hamiltonian_norm(g, gamma, norm) * abs(t)
    d = degree_profile(g).max_degree
    if mode == "bound" and d > 0:
        check_synthesis_precondition(d, norm_ht, eps, k)
    forests = decompose_to_stars(g) if star_forests is None else star_forests
    terms = [(lambda tau, sf=sf: star_forest_evolution(sf, gamma, tau, n)) for sf in forests]
    return run_product_formula(
        "star", g.num_vertices, terms, n, t, eps, k, mode, norm_ht,
        lambda: padded_target(g, gamma, t), max_r, verify,
    )
