"""Exact circuits for e^{-i gamma S t} on a star and on a star forest.

A star S = sum_x (|c><x| + |x><c|) has two nonzero eigenvalues +-sqrt(|V'|)
with eigenvectors (|c> +- |phi>)/sqrt(2), |phi> the uniform superposition of
the leaves. The circuit rotates that pair onto |0...0>|0>_a and |0...01>|0>_a
with a transform W, applies the two phases with one controlled rotation and
undoes W. Working qubits are 0..n-1 (qubit 0 least significant), the ancilla
is qubit n.
"""

from __future__ import annotations

import math

from .circuit import RX, RZ, SWAP, Circuit, Gate, H, X, concat, invert_circuit
from .decompose import Star, StarForest


def _check_star(star: Star, n: int) -> None:
    if star.center in star.leaves:
        raise ValueError(f"center {star.center} is one of the leaves")
    top = max(star.vertices())
    if top >= 2**n:
        raise ValueError(f"vertex {top} does not fit in {n} qubits")


def basis_flip_circuit(c: int, n: int) -> Circuit:
    """X on every qubit where ``c`` has a 1 bit: |0^n> -> |c>."""
    if not 0 <= c < 2**n:
        raise ValueError(f"basis state {c} out of range for {n} qubits")
    return Circuit(n, tuple(X(q) for q in range(n) if c >> q & 1))


def _ry(theta: float, q: int, controls: tuple[tuple[int, bool], ...]) -> list[Gate]:
    # RY(theta) = RZ(pi/2) RX(theta) RZ(-pi/2); the outer pair cancels where the
    # controlled middle gate does not fire, so only RX carries the controls
    return [RZ(-math.pi / 2, q), Gate("RX", (q,), theta, controls), RZ(math.pi / 2, q)]


def uniform_sparse_prep(support, n: int) -> Circuit:
    """Circuit taking |0^n> to the uniform superposition over ``support``.

    Top-down binary splitting: at each node the strings still in play share a
    set of control conditions (the split qubits above it). Bits common to all
    of them are set with controlled X, then a qubit that separates them is
    rotated so its two outcomes carry amplitude proportional to the sizes of
    the two halves, and each half recurses under one more control. When the
    two halves are translates of each other along the split qubit, a plain H
    is enough and a single recursion serves both. Each support string sets at
    most n bits and every split is one rotation, so the gate count is O(|V'| n).
    """
    states = sorted(set(int(x) for x in support))
    if not states:
        raise ValueError("cannot prepare a state with empty support")
    if states[0] < 0 or states[-1] >= 2**n:
        raise ValueError(f"support must lie in [0, {2**n})")
    gates: list[Gate] = []

    def build(group: list[int], controls: tuple, decided: frozenset[int]) -> None:
        free = [q for q in range(n) if q not in decided]
        for q in free:
            bits = {x >> q & 1 for x in group}
            if len(bits) == 1:
                if bits == {1}:
                    gates.append(Gate("X", (q,), None, controls))
                decided = decided | {q}
        if len(group) == 1:
            return
        free = [q for q in range(n) if q not in decided]
        q = max(free, key=lambda b: (min(sum(x >> b & 1 for x in group), sum(1 - (x >> b & 1) for x in group)), -b))
        lo = [x for x in group if not x >> q & 1]
        hi = [x for x in group if x >> q & 1]
        decided = decided | {q}
        if len(lo) == len(hi):
            gates.append(Gate("H", (q,), None, controls))
            if [x | 1 << q for x in lo] == hi:
                build(lo, controls, decided)
                return
        else:
            theta = 2 * math.acos(math.sqrt(len(lo) / len(group)))
            gates.extend(_ry(theta, q, controls))
        build(lo, controls + ((q, False),), decided)
        build(hi, controls + ((q, True),), decided)

    build(states, (), frozenset())
    return Circuit(n, tuple(gates))


def _mcx_on_pattern(c: int, n: int, target: int) -> Gate:
    return Gate("X", (target,), None, tuple((q, bool(c >> q & 1)) for q in range(n)))


def _transform_core(star: Star, n: int) -> Circuit:
    """W without its leading Hadamard on qubit 0."""
    a = n
    width = n + 1
    c1 = basis_flip_circuit(star.center, n).widened(width).controlled(a, closed=False)
    c2 = uniform_sparse_prep(star.leaves, n).widened(width).controlled(a, closed=True)
    return concat(width, [
        Circuit(width, (SWAP(0, a),)),
        c1,
        c2,
        Circuit(width, (_mcx_on_pattern(star.center, n, a), X(a))),
    ])


def eigenbasis_transform(star: Star, n: int) -> Circuit:
    """W with W|0>|0>_a = |v+>|0>_a and W|1>|0>_a = |v->|0>_a.

    H on qubit 0, swap it into the ancilla, prepare |c> when the ancilla is 0
    and |phi> when it is 1, flip the ancilla on the center pattern, then flip
    it back unconditionally.
    """
    _check_star(star, n)
    return Circuit(n + 1, (H(0),)) + _transform_core(star, n)


def star_evolution(star: Star, gamma: float, t: float, n: int, guard_ancilla: bool = True) -> Circuit:
    """e^{-i gamma S t} on the working register, ancilla in and out at |0>.

    The phase step H.RZ(alpha).H is folded into one RX(alpha) on qubit 0,
    alpha = 2 gamma sqrt(|V'|) t, open-controlled by qubits 1..n-1. With
    ``guard_ancilla`` the rotation is also open-controlled by the ancilla;
    without that control, working states outside the star's support that
    the inverse transform leaves in the ancilla-1 half also pick up the
    phase, and the circuit is not exact.
    """
    _check_star(star, n)
    a = n
    core = _transform_core(star, n)
    alpha = 2 * gamma * math.sqrt(star.size) * t
    controls = tuple((q, False) for q in range(1, n))
    if guard_ancilla:
        controls += ((a, False),)
    rotation = Gate("RX", (0,), alpha, controls)
    return invert_circuit(core) + Circuit(n + 1, (rotation,)) + core


def star_forest_evolution(sf: StarForest, gamma: float, t: float, n: int) -> Circuit:
    """Product of the (commuting) star circuits, stars ordered by center."""
    seen: set[int] = set()
    for s in sf.stars:
        if seen & s.vertices():
            raise ValueError(f"stars overlap on {sorted(seen & s.vertices())}")
        seen |= s.vertices()
    stars = sorted(sf.stars, key=lambda s: s.center)
    return concat(n + 1, [star_evolution(s, gamma, t, n) for s in stars])
