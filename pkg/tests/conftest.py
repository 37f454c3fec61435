"""Shared fixtures and test-local reference implementations."""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from gadgetminer.circuit import Circuit
from gadgetminer.tableau import Pauli, StabilizerCode

# three qubits, six CNOTs: every consecutive pair forms a back-to-back block
REF_3Q6_PAIRS = ((0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2))

STEANE_PAIRS = ((0, 1), (0, 2), (6, 0), (6, 1), (6, 3),
                (5, 0), (5, 2), (5, 3), (4, 1), (4, 2), (4, 3))
STEANE_X_ANCILLAS = (4, 5, 6)

FIVE_QUBIT_GENERATORS = ("+XZZXI", "+IXZZX", "+XIXZZ", "+ZXIXZ")


@pytest.fixture
def ref_circuit() -> Circuit:
    return Circuit.from_pairs(3, REF_3Q6_PAIRS, name="ref3q6")


@pytest.fixture
def steane_circuit() -> Circuit:
    return Circuit.from_pairs(7, STEANE_PAIRS, name="steane")


@pytest.fixture
def five_qubit_code() -> StabilizerCode:
    gens = tuple(Pauli.from_str(s) for s in FIVE_QUBIT_GENERATORS)
    return StabilizerCode(5, 1, gens)


def random_circuit(rng: random.Random, n_qubits: int, n_gates: int,
                   name: str = "") -> Circuit:
    pairs = []
    for _ in range(n_gates):
        c = rng.randrange(n_qubits)
        t = rng.randrange(n_qubits - 1)
        if t >= c:
            t += 1
        pairs.append((c, t))
    return Circuit.from_pairs(n_qubits, pairs, name=name)


# ---------------------------------------------------------------------------
# Brute-force oracles (intentionally independent of the library internals)
# ---------------------------------------------------------------------------


def graph_isomorphic_oracle(a, b) -> bool:
    """Label-preserving isomorphism by backtracking over all consistent
    node bijections, checking all four relations in both directions."""
    if len(a) != len(b):
        return False
    an = a.nodes
    bn = b.nodes
    if sorted(nd.label for nd in an) != sorted(nd.label for nd in bn):
        return False

    def edge_set(g, kind):
        idx = {nd.id: i for i, nd in enumerate(g.nodes)}
        return {(idx[e.src], idx[e.dst])
                for e in (g.cnot_edges if kind == "cnot" else g.time_edges)}

    ac, at = edge_set(a, "cnot"), edge_set(a, "time")
    bc, bt = edge_set(b, "cnot"), edge_set(b, "time")
    if len(ac) != len(bc) or len(at) != len(bt):
        return False
    n = len(an)
    mapping = [-1] * n
    used = [False] * n

    def consistent(i, j):
        if an[i].label != bn[j].label:
            return False
        for p in range(i):
            q = mapping[p]
            for rel_a, rel_b in ((ac, bc), (at, bt)):
                if (((i, p) in rel_a) != ((j, q) in rel_b)
                        or ((p, i) in rel_a) != ((q, j) in rel_b)):
                    return False
        return True

    def rec(i):
        if i == n:
            return True
        for j in range(n):
            if not used[j] and consistent(i, j):
                used[j] = True
                mapping[i] = j
                if rec(i + 1):
                    return True
                used[j] = False
        return False

    return rec(0)


def pauli_group_distance_oracle(code: StabilizerCode) -> int:
    """Exhaustive scan of the full Pauli group in weight order."""
    n = code.n
    span = set()
    vecs = [(g.x << n) | g.z for g in code.generators]
    for mask in range(1 << len(vecs)):
        v = 0
        for i, g in enumerate(vecs):
            if (mask >> i) & 1:
                v ^= g
        span.add(v)
    best = None
    for w in range(1, n + 1):
        for support in combinations(range(n), w):
            for letters in range(3 ** w):
                px = pz = 0
                rem = letters
                for q in support:
                    letter = rem % 3
                    rem //= 3
                    if letter == 0:
                        px |= 1 << q
                    elif letter == 1:
                        px |= 1 << q
                        pz |= 1 << q
                    else:
                        pz |= 1 << q
                if ((px << n) | pz) in span:
                    continue
                ok = True
                for g in code.generators:
                    if ((px & g.z).bit_count()
                            + (pz & g.x).bit_count()) % 2 == 1:
                        ok = False
                        break
                if ok:
                    return w
        if best is not None:
            break
    raise AssertionError("no logical operator found")
