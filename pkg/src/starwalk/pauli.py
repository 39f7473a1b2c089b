"""Pauli-string baseline: decompose H and exponentiate term by term.

Strings are written most-significant qubit first, so the last letter acts on
qubit 0. A string with X-mask ``a`` and Z-mask ``b`` is the Hermitian operator
i^{|a&b|} X^a Z^b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .circuit import CX, RX, RZ, Circuit, Gate, H
from .graph import Graph, SizeCapError, adjacency_matrix, degree_profile
from .trotter import (
    DEFAULT_MAX_SEGMENTS,
    PreconditionError,
    SynthesisResult,
    check_synthesis_precondition,
    hamiltonian_norm,
    padded_target,
    run_product_formula,
)

PAULI_QUBIT_CAP = 8

_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliTerm:
    string: str
    coefficient: float

    @property
    def num_qubits(self) -> int:
        return len(self.string)

    def letter(self, q: int) -> str:
        return self.string[-1 - q]

    def support(self) -> list[int]:
        return [q for q in range(self.num_qubits) if self.letter(q) != "I"]


def pauli_string(a: int, b: int, n: int) -> str:
    letters = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
    return "".join(letters[(a >> q & 1, b >> q & 1)] for q in reversed(range(n)))


def pauli_matrix(string: str) -> np.ndarray:
    return reduce(np.kron, (_MATS[ch] for ch in string))


def _pad(h: np.ndarray, cap: int) -> tuple[np.ndarray, int]:
    h = np.asarray(h, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got {h.shape}")
    n = max(1, math.ceil(math.log2(h.shape[0])))
    if n > cap:
        raise SizeCapError(f"{n} qubits exceeds the Pauli decomposition cap {cap}")
    out = np.zeros((2**n, 2**n))
    out[: h.shape[0], : h.shape[0]] = h
    return out, n


def _walsh_hadamard(v: np.ndarray) -> np.ndarray:
    """Unnormalized transform: out[b] = sum_y (-1)^{popcount(b & y)} v[y]."""
    v = v.copy()
    h = 1
    while h < len(v):
        v = v.reshape(-1, 2, h)
        v = np.stack([v[:, 0] + v[:, 1], v[:, 0] - v[:, 1]], axis=1).reshape(-1)
        h *= 2
    return v


def pauli_decompose(h: np.ndarray, gamma: float = 1.0, cap: int = PAULI_QUBIT_CAP, atol: float = 1e-13) -> list[PauliTerm]:
    """Pauli expansion of gamma * H, zero-padded to 2**n.

    For X-mask a, tr(P H) = i^{|a&b|} sum_y (-1)^{b.y} H[y, y^a], a Walsh-
    Hadamard transform of the a-th "diagonal" of H. Terms with |h| <= atol
    times the largest entry are dropped.
    """
    mat, n = _pad(h, cap)
    mat = gamma * mat
    dim = 2**n
    scale = max(1.0, float(np.abs(mat).max()))
    ys = np.arange(dim)
    terms = []
    for a in range(dim):
        diag = mat[ys, ys ^ a]
        if not np.any(diag):
            continue
        walsh = _walsh_hadamard(diag)
        for b in np.flatnonzero(np.abs(walsh) > atol * scale * dim):
            b = int(b)
            y_count = bin(a & b).count("1")
            # odd Y count gives an imaginary trace; zero for real symmetric H
            if y_count % 2:
                continue
            sign = -1 if y_count % 4 == 2 else 1
            coeff = sign * walsh[b] / dim
            if abs(coeff) > atol * scale:
                terms.append(PauliTerm(pauli_string(a, b, n), float(coeff)))
    return sorted(terms, key=lambda term: term.string)


def pauli_decompose_bruteforce(h: np.ndarray, gamma: float = 1.0, cap: int = PAULI_QUBIT_CAP, atol: float = 1e-13) -> list[PauliTerm]:
    """Reference: h_P = tr(P H) / 2**n over all 4**n strings."""
    mat, n = _pad(h, cap)
    mat = gamma * mat
    scale = max(1.0, float(np.abs(mat).max()))
    terms = []
    for a in range(2**n):
        for b in range(2**n):
            s = pauli_string(a, b, n)
            coeff = np.trace(pauli_matrix(s) @ mat) / 2**n
            if abs(coeff) > atol * scale:
                terms.append(PauliTerm(s, float(coeff.real)))
    return sorted(terms, key=lambda term: term.string)


def reconstruct(terms: list[PauliTerm], n: int) -> np.ndarray:
    out = np.zeros((2**n, 2**n), dtype=complex)
    for term in terms:
        out += term.coefficient * pauli_matrix(term.string)
    return out


def pauli_exponential(term: PauliTerm, tau: float, width: int | None = None) -> Circuit:
    """e^{-i h tau P}: basis change, CX ladder onto the top support qubit, RZ(2 h tau), undo.

    X letters rotate with H, Y letters with RX(pi/2) and back with RX(-pi/2).
    """
    support = term.support()
    if not support:
        raise ValueError("the identity string is a global phase, not a gate sequence")
    width = term.num_qubits if width is None else width
    pre: list[Gate] = []
    post: list[Gate] = []
    for q in support:
        ch = term.letter(q)
        if ch == "X":
            pre.append(H(q))
            post.append(H(q))
        elif ch == "Y":
            pre.append(RX(math.pi / 2, q))
            post.append(RX(-math.pi / 2, q))
    ladder = [CX(support[i], support[i + 1]) for i in range(len(support) - 1)]
    core = [RZ(2 * term.coefficient * tau, support[-1])]
    gates = pre + ladder + core + ladder[::-1] + post
    return Circuit(width, tuple(gates))


def dump_terms(terms: list[PauliTerm]) -> str:
    return "".join(f"{t.string} {t.coefficient!r}\n" for t in terms)


def synthesize_ctqw_pauli(
    g: Graph,
    gamma: float,
    t: float,
    eps: float,
    k: int = 1,
    mode: str = "adaptive",
    norm: str = "bound",
    max_r: int = DEFAULT_MAX_SEGMENTS,
    verify: bool = False,
    cap: int = PAULI_QUBIT_CAP,
) -> SynthesisResult:
    """Product formula over Pauli exponentials; width n + 1 with an idle ancilla.

    The idle ancilla keeps both methods' circuits the same width so they can
    be verified and compared by the same code.
    """
    if not 0 < eps <= 1:
        raise PreconditionError(f"need 0 < eps <= 1, got eps={eps}")
    if k < 1:
        raise PreconditionError(f"need k >= 1, got k={k}")
    n = g.num_qubits
    if n > cap:
        raise SizeCapError(f"{n} qubits exceeds the Pauli decomposition cap {cap}")
    terms = pauli_decompose(adjacency_matrix(g, dim=2**n), gamma, cap)
    norm_ht = hamiltonian_norm(g, gamma, norm) * abs(t)
    d = degree_profile(g).max_degree
    if mode == "bound" and d > 0:
        check_synthesis_precondition(d, norm_ht, eps, k)
    factories = [(lambda tau, term=term: pauli_exponential(term, tau, n + 1)) for term in terms]
    return run_product_formula(
        "pauli", g.num_vertices, factories, n, t, eps, k, mode, norm_ht,
        lambda: padded_target(g, gamma, t), max_r, verify,
    )
