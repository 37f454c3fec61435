"""Tableau simulation, canonical forms, stabilizer codes, distance search."""

from __future__ import annotations

import random

import pytest

from gadgetminer.circuit import Circuit, cnots_commute
from gadgetminer.tableau import (
    CanonicalForm,
    CliffordTableau,
    DistanceSearchError,
    Pauli,
    StabilizerCode,
    TableauError,
    canonical_rows,
    canonical_tableau,
    circuit_to_tableau,
    code_distance,
    encoder_code,
    encoder_tableau,
    generator_weights,
    gf2_rank,
)

from conftest import (
    STEANE_X_ANCILLAS,
    pauli_group_distance_oracle,
    random_circuit,
)


# ---------------------------------------------------------------------------
# Pauli algebra
# ---------------------------------------------------------------------------


def test_pauli_str_round_trip():
    for s in ("+XZZXI", "-IYXZI", "+IIIII", "-Z"):
        assert str(Pauli.from_str(s)) == s
    assert str(Pauli.from_str("XZ")) == "+XZ"  # sign optional on input


def test_pauli_weight():
    assert Pauli.from_str("+IXYZ").weight == 3
    assert Pauli.from_str("+IIII").weight == 0


def test_pauli_commutes():
    X, Z = Pauli.from_str("X"), Pauli.from_str("Z")
    assert not X.commutes(Z)
    assert Pauli.from_str("XX").commutes(Pauli.from_str("ZZ"))
    assert not Pauli.from_str("XI").commutes(Pauli.from_str("ZI"))
    assert Pauli.from_str("XY").commutes(Pauli.from_str("XY"))


def test_pauli_mul_signs():
    XX, ZZ = Pauli.from_str("+XX"), Pauli.from_str("+ZZ")
    # qubit-wise XZ = -iY, so XX * ZZ = (-i)^2 YY = -YY
    assert str(XX.mul(ZZ)) == "-YY"
    assert str(ZZ.mul(XX)) == "-YY"
    assert str(XX.mul(XX)) == "+II"
    minus = Pauli.from_str("-XX")
    assert str(minus.mul(ZZ)) == "+YY"
    with pytest.raises(TableauError):
        Pauli.from_str("X").mul(Pauli.from_str("Z"))  # anticommuting pair


def test_pauli_mul_matches_matrix_model():
    # brute force 2x2 complex matrices on up to 3 qubits
    import numpy as np

    mats = {
        "I": np.eye(2),
        "X": np.array([[0, 1], [1, 0]], dtype=complex),
        "Y": np.array([[0, -1j], [1j, 0]]),
        "Z": np.diag([1.0, -1.0]).astype(complex),
    }

    def as_matrix(p: Pauli):
        m = np.eye(1, dtype=complex)
        for ch in str(p)[1:]:
            m = np.kron(m, mats[ch])
        return -m if str(p)[0] == "-" else m

    rng = random.Random(11)
    letters = "IXYZ"
    for _ in range(60):
        n = rng.randrange(1, 4)
        a = Pauli.from_str(rng.choice("+-") + "".join(rng.choice(letters) for _ in range(n)))
        b = Pauli.from_str(rng.choice("+-") + "".join(rng.choice(letters) for _ in range(n)))
        ma, mb = as_matrix(a), as_matrix(b)
        commute = np.allclose(ma @ mb, mb @ ma)
        assert a.commutes(b) == commute
        if commute:
            assert np.allclose(as_matrix(a.mul(b)), ma @ mb)


# ---------------------------------------------------------------------------
# Tableau gate action
# ---------------------------------------------------------------------------


def test_cnot_conjugation_images():
    t = CliffordTableau(2).cnot(0, 1)
    assert str(t.row_pauli(0)) == "+XX"  # X_c -> X_c X_t
    assert str(t.row_pauli(1)) == "+IX"  # X_t fixed
    assert str(t.row_pauli(2)) == "+ZI"  # Z_c fixed
    assert str(t.row_pauli(3)) == "+ZZ"  # Z_t -> Z_c Z_t


def test_h_and_s_conjugation():
    t = CliffordTableau(1).h(0)
    assert str(t.row_pauli(0)) == "+Z"
    assert str(t.row_pauli(1)) == "+X"
    t = CliffordTableau(1).s(0)
    assert str(t.row_pauli(0)) == "+Y"  # S X S† = Y
    assert str(t.row_pauli(1)) == "+Z"
    t = CliffordTableau(1).s(0).s(0)
    assert str(t.row_pauli(0)) == "-X"  # Z X Z = -X


def test_gate_index_checks():
    t = CliffordTableau(2)
    with pytest.raises(TableauError):
        t.cnot(0, 0)
    with pytest.raises(TableauError):
        t.cnot(0, 2)
    with pytest.raises(TableauError):
        t.h(-1)
    with pytest.raises(TableauError):
        CliffordTableau(0)


def test_cnot_involution_and_digest():
    t = CliffordTableau(3).cnot(0, 1).cnot(0, 1)
    assert t == CliffordTableau(3)
    a = CliffordTableau(3).cnot(0, 1)
    b = CliffordTableau(3).cnot(0, 1)
    assert a.digest() == b.digest()
    assert a.digest() != CliffordTableau(3).digest()


def test_copy_is_independent():
    t = CliffordTableau(2)
    c = t.copy()
    c.cnot(0, 1)
    assert t == CliffordTableau(2)
    assert c != t


def test_commutation_rule_matches_tableau():
    """cnots_commute must agree with unitary equality under adjacent swap."""
    rng = random.Random(20240401)
    for _ in range(200):
        n = rng.randrange(2, 6)
        c1 = rng.randrange(n)
        t1 = (c1 + rng.randrange(1, n)) % n
        c2 = rng.randrange(n)
        t2 = (c2 + rng.randrange(1, n)) % n
        fwd = CliffordTableau(n).cnot(c1, t1).cnot(c2, t2)
        rev = CliffordTableau(n).cnot(c2, t2).cnot(c1, t1)
        from gadgetminer.circuit import CnotGate

        g1, g2 = CnotGate(c1, t1, 0), CnotGate(c2, t2, 1)
        assert cnots_commute(g1, g2) == (fwd == rev)


def test_symplectic_invariant_random_walk():
    rng = random.Random(99)
    t = CliffordTableau(6)
    for _ in range(500):
        kind = rng.randrange(3)
        if kind == 0:
            a = rng.randrange(6)
            b = (a + rng.randrange(1, 6)) % 6
            t.cnot(a, b)
        elif kind == 1:
            t.h(rng.randrange(6))
        else:
            t.s(rng.randrange(6))
        assert t.symplectic_ok()


def test_nontrivial_qubits():
    c = Circuit.from_pairs(5, [(1, 3)])
    assert circuit_to_tableau(c).nontrivial_qubits() == {1, 3}
    assert CliffordTableau(4).nontrivial_qubits() == set()


def test_encoder_tableau_prefix():
    c = Circuit.from_pairs(3, [(0, 1)])
    manual = CliffordTableau(3).h(2).cnot(0, 1)
    assert encoder_tableau(c, x_ancillas=(2,)) == manual
    assert encoder_tableau(c) == circuit_to_tableau(c)
    # duplicate listings fold to one H
    assert encoder_tableau(c, x_ancillas=(2, 2)) == manual


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------


def test_canonical_rows_group_invariance():
    a = [Pauli.from_str("+ZI"), Pauli.from_str("+IZ")]
    b = [Pauli.from_str("+ZZ"), Pauli.from_str("+IZ")]  # same group
    assert canonical_rows(a) == canonical_rows(b)
    assert canonical_rows(a).digest() == canonical_rows(b).digest()


def test_canonical_rows_signs_matter():
    a = [Pauli.from_str("+ZI")]
    b = [Pauli.from_str("-ZI")]
    assert canonical_rows(a) != canonical_rows(b)


def test_canonical_rows_random_generating_sets():
    """Shuffling and multiplying generators must not move the canonical form."""
    rng = random.Random(7)
    for trial in range(30):
        n = rng.randrange(2, 6)
        c = random_circuit(rng, n, rng.randrange(1, 12))
        rows = circuit_to_tableau(c).stabilizer_rows()
        ref = canonical_rows(rows)
        mixed = list(rows)
        for _ in range(10):
            i = rng.randrange(len(mixed))
            j = rng.randrange(len(mixed))
            if i != j and mixed[i].commutes(mixed[j]):
                mixed[i] = mixed[i].mul(mixed[j])
        rng.shuffle(mixed)
        assert canonical_rows(mixed) == ref


def test_canonical_rows_inconsistent():
    with pytest.raises(TableauError):
        canonical_rows([Pauli.from_str("+Z"), Pauli.from_str("-Z")])
    with pytest.raises(TableauError):
        canonical_rows([])


def test_canonical_tableau_is_stabilizer_rows():
    t = CliffordTableau(2).cnot(0, 1)
    assert canonical_tableau(t) == canonical_rows(t.stabilizer_rows())


# ---------------------------------------------------------------------------
# Stabilizer codes and distance
# ---------------------------------------------------------------------------


def test_code_validation():
    good = StabilizerCode(2, 1, (Pauli.from_str("+ZZ"),))
    assert good.k == 1
    with pytest.raises(TableauError):
        StabilizerCode(2, 1, (Pauli.from_str("+ZI"), Pauli.from_str("+IZ")))
    with pytest.raises(TableauError):
        StabilizerCode(2, 0, (Pauli.from_str("+XI"), Pauli.from_str("+ZI")))
    with pytest.raises(TableauError):
        StabilizerCode(3, 1, (Pauli.from_str("+ZZI"), Pauli.from_str("+ZZI")))


def test_code_json_round_trip(five_qubit_code):
    obj = five_qubit_code.to_json_dict()
    assert StabilizerCode.from_json_dict(obj) == five_qubit_code


def test_gf2_rank():
    assert gf2_rank([0b101, 0b011, 0b110]) == 2
    assert gf2_rank([]) == 0
    assert gf2_rank([0, 0]) == 0
    assert gf2_rank([1, 2, 4]) == 3


def test_five_qubit_code_distance(five_qubit_code):
    assert code_distance(five_qubit_code) == 3
    assert pauli_group_distance_oracle(five_qubit_code) == 3
    weights, mean = generator_weights(five_qubit_code)
    assert weights == [4, 4, 4, 4]
    assert mean == 4.0


def test_steane_encoder_distance(steane_circuit):
    code = encoder_code(steane_circuit, k=1, x_ancillas=STEANE_X_ANCILLAS)
    assert code.n == 7 and code.k == 1
    assert code_distance(code) == 3


def test_distance_matches_oracle_on_random_encoders():
    rng = random.Random(31)
    checked = 0
    for _ in range(12):
        n = rng.randrange(3, 6)
        c = random_circuit(rng, n, rng.randrange(2, 10))
        xa = tuple(q for q in range(1, n) if rng.random() < 0.5)
        code = encoder_code(c, k=1, x_ancillas=xa)
        assert code_distance(code) == pauli_group_distance_oracle(code)
        checked += 1
    assert checked == 12


def test_zero_ancilla_encoders_have_distance_one():
    """CNOT circuits map Z_j to Z-only rows, so some single-qubit Z is
    always a logical operator when every ancilla starts in |0>."""
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randrange(3, 7)
        c = random_circuit(rng, n, rng.randrange(1, 15))
        code = encoder_code(c, k=1)
        assert code_distance(code) == 1


def test_encoder_code_argument_checks(steane_circuit):
    with pytest.raises(TableauError):
        encoder_code(steane_circuit, k=7)
    with pytest.raises(TableauError):
        encoder_code(steane_circuit, k=1, x_ancillas=(0,))


def test_distance_search_limits(five_qubit_code):
    with pytest.raises(DistanceSearchError):
        code_distance(five_qubit_code, n_limit=3)
    with pytest.raises(DistanceSearchError):
        code_distance(five_qubit_code, max_weight=2)
