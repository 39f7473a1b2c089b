"""Dense state-vector simulation and the exact-evolution oracles."""

from __future__ import annotations

import math

import numpy as np

from .circuit import Circuit, Gate
from .decompose import Star
from .graph import SizeCapError

UNITARY_WIDTH_CAP = 12
DENSE_DIM_CAP = 4096
_SQUARING_DIM = 512

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)


class ConvergenceError(RuntimeError):
    pass


def gate_matrix(g: Gate) -> np.ndarray:
    """2x2 matrix of a one-qubit base gate (RZ(t) = diag(e^{-it/2}, e^{it/2}))."""
    if g.kind == "X":
        return _X
    if g.kind == "H":
        return _H
    c, s = math.cos(g.angle / 2), math.sin(g.angle / 2)
    if g.kind == "RX":
        return np.array([[c, -1j * s], [-1j * s, c]])
    if g.kind == "RZ":
        return np.array([[c - 1j * s, 0], [0, c + 1j * s]])
    raise ValueError(f"{g.kind} has no 2x2 matrix")


def _apply_gate(psi: np.ndarray, g: Gate, width: int) -> None:
    """In place on ``psi`` of shape (2,)*width + (batch,); axis i is qubit width-1-i."""

    def axis(q):
        return width - 1 - q

    index: list = [slice(None)] * (width + 1)
    for q, closed in g.controls:
        index[axis(q)] = 1 if closed else 0
    index = tuple(index)
    sub = psi[index]
    removed = sorted(axis(q) for q, _ in g.controls)

    def sub_axis(q):
        a = axis(q)
        return a - sum(1 for r in removed if r < a)

    if g.kind == "SWAP":
        a, b = (sub_axis(q) for q in g.targets)
        psi[index] = np.swapaxes(sub, a, b).copy()
        return
    a = sub_axis(g.targets[0])
    out = np.tensordot(gate_matrix(g), sub, axes=([1], [a]))
    psi[index] = np.moveaxis(out, 0, a)


def _run(c: Circuit, block: np.ndarray) -> np.ndarray:
    w = c.num_qubits
    batch = block.shape[1]
    # reversing the index order makes axis 0 the most significant qubit
    psi = np.ascontiguousarray(block, dtype=complex).reshape((2,) * w + (batch,))
    for g in c.gates:
        _apply_gate(psi, g, w)
    return psi.reshape(2**w, batch)


def apply_circuit(c: Circuit, psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (2**c.num_qubits,):
        raise ValueError(f"state of length {psi.shape} does not match width {c.num_qubits}")
    return _run(c, psi.reshape(-1, 1).copy())[:, 0]


def circuit_unitary(c: Circuit, cap: int = UNITARY_WIDTH_CAP) -> np.ndarray:
    if c.num_qubits > cap:
        raise SizeCapError(f"width {c.num_qubits} exceeds the simulator cap {cap}")
    return _run(c, np.eye(2**c.num_qubits, dtype=complex))


def sector_unitary(c: Circuit, working: int, cap: int = UNITARY_WIDTH_CAP) -> np.ndarray:
    """Full circuit action on inputs whose qubits >= ``working`` are |0>.

    Returns the 2**width x 2**working block of columns; rows with any high
    qubit set measure leakage out of the sector.
    """
    if c.num_qubits > cap:
        raise SizeCapError(f"width {c.num_qubits} exceeds the simulator cap {cap}")
    cols = np.zeros((2**c.num_qubits, 2**working), dtype=complex)
    cols[: 2**working] = np.eye(2**working)
    return _run(c, cols)


def _check_symmetric(h: np.ndarray, cap: int) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    if h.shape[0] > cap:
        raise SizeCapError(f"dimension {h.shape[0]} exceeds cap {cap}")
    if not np.allclose(h, h.T, rtol=0, atol=1e-12):
        raise ValueError("matrix is not symmetric")
    return h


def exact_evolution(h: np.ndarray, t: float, cap: int = DENSE_DIM_CAP) -> np.ndarray:
    """e^{-iHt} through the symmetric eigendecomposition H = Q diag(w) Q^T."""
    h = _check_symmetric(h, cap)
    w, q = np.linalg.eigh(h)
    return (q * np.exp(-1j * w * t)) @ q.T


def star_eigenvectors(star: Star, dim: int) -> tuple[float, np.ndarray, np.ndarray]:
    """sqrt(|V'|) and the two eigenvectors (|c> +- |phi>)/sqrt(2)."""
    if max(star.vertices()) >= dim:
        raise ValueError(f"star {star} does not fit in dimension {dim}")
    lam = math.sqrt(star.size)
    phi = np.zeros(dim)
    phi[list(star.leaves)] = 1 / lam
    c = np.zeros(dim)
    c[star.center] = 1.0
    return lam, (c + phi) / math.sqrt(2), (c - phi) / math.sqrt(2)


def exact_star_evolution(star: Star, gamma: float, t: float, n: int) -> np.ndarray:
    """Rank-2 closed form I + (e^{-i g l t}-1)|v+><v+| + (e^{i g l t}-1)|v-><v-|."""
    dim = 2**n
    lam, vp, vm = star_eigenvectors(star, dim)
    u = np.eye(dim, dtype=complex)
    u += (np.exp(-1j * gamma * lam * t) - 1) * np.outer(vp, vp)
    u += (np.exp(1j * gamma * lam * t) - 1) * np.outer(vm, vm)
    return u


def _top_singular_value(d: np.ndarray, tol: float, max_iter: int, seed: int) -> float:
    """Largest singular value of ``d`` by power iteration on M = D^H D.

    Small matrices square M repeatedly, so step s applies M^(2^s) to the start
    vector and near-degenerate top eigenvalues separate within a few dozen
    steps. Large ones fall back to plain matrix-vector power steps.
    """
    dim = d.shape[1]
    rng = np.random.default_rng(seed)
    x0 = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    if not np.any(d):
        return 0.0
    if dim > _SQUARING_DIM:
        v = x0 / np.linalg.norm(x0)
        prev = -1.0
        for _ in range(max_iter):
            w = d.conj().T @ (d @ v)
            nw = np.linalg.norm(w)
            if nw == 0.0:
                return 0.0
            v = w / nw
            sigma = float(np.linalg.norm(d @ v))
            if abs(sigma - prev) <= tol * max(1.0, sigma):
                return sigma
            prev = sigma
        raise ConvergenceError(f"power iteration did not converge in {max_iter} steps")
    m = d.conj().T @ d
    b = m / np.abs(m).max()
    prev = -1.0
    for _ in range(min(max_iter, 64)):
        v = b @ x0
        nv = np.linalg.norm(v)
        if nv == 0.0:
            x0 = rng.standard_normal(dim) + 0j
            continue
        v /= nv
        for _ in range(2):
            v = m @ v
            v /= np.linalg.norm(v)
        sigma = float(np.linalg.norm(d @ v))
        if abs(sigma - prev) <= tol * max(1.0, sigma):
            return sigma
        prev = sigma
        b = b @ b
        nb = np.abs(b).max()
        if nb == 0.0:
            return sigma
        b /= nb
    raise ConvergenceError("power iteration did not converge")


def spectral_distance(u: np.ndarray, v: np.ndarray, tol: float = 1e-12, max_iter: int = 20000) -> float:
    u, v = np.asarray(u), np.asarray(v)
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch {u.shape} vs {v.shape}")
    return _top_singular_value(u - v, tol, max_iter, seed=0)


def spectral_norm(h: np.ndarray, tol: float = 1e-12, max_iter: int = 20000) -> float:
    return _top_singular_value(np.asarray(h, dtype=complex), tol, max_iter, seed=0)


def is_unitary(u: np.ndarray, tol: float = 1e-9) -> bool:
    return spectral_distance(u.conj().T @ u, np.eye(u.shape[0])) <= tol


def sector_distance(c: Circuit, target: np.ndarray, working: int) -> float:
    """Distance between the circuit restricted to the ancilla-|0> sector and ``target``.

    The restriction keeps all output rows, so leakage into the ancilla-|1>
    half counts against the circuit.
    """
    cols = sector_unitary(c, working)
    full_target = np.zeros_like(cols)
    full_target[: 2**working] = target
    return spectral_distance(cols, full_target)
