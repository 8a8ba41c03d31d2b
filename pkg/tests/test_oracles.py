import numpy as np
import pytest

from switchlab import (OracleSet, PermutationSet, SIGMA_STAR, chart_fixture,
                       check_promise, enumerate_promise_sets,
                       equivalence_classes, find_conjugator,
                       find_rotation_conjugator, gate_set_G, pauli,
                       verify_classification)
from switchlab.linalg import InvariantViolation, random_unitary
from switchlab.oracles import bloch_rotation
from switchlab.switch import NamedGate


def oracle_of(*names):
    return OracleSet(tuple(pauli(n) for n in names))


# independent oracle: plain-loop product and sign comparison
def brute_force_verdict(matrices, perms, sign_rows, tol=1e-9):
    products = []
    for sig in perms.sigma:
        p = np.eye(2, dtype=complex)
        for j in sig:
            p = matrices[j] @ p
        products.append(p)
    for y in range(len(sign_rows[0])):
        if all(np.max(np.abs(products[x] - sign_rows[x][y] * products[0])) <= tol
               for x in range(len(products))):
            return y
    return None


# ---------------------------------------------------------------------------
# promise checking
# ---------------------------------------------------------------------------

def test_promise_fixture_column(m4):
    fix = chart_fixture("table1")[3]
    assert fix.names() == ("Z", "X", "I", "X")
    verdict = check_promise(fix, SIGMA_STAR, m4)
    assert verdict.satisfied and verdict.y == 3
    assert verdict.residual <= 1e-9


def test_promise_all_identity(m4):
    verdict = check_promise(oracle_of("1", "1", "1", "1"), SIGMA_STAR, m4)
    assert verdict.satisfied and verdict.y == 0


def test_promise_matches_brute_force(m4):
    cases = [
        ("Z", "X", "Y", "1"),
        ("Z", "X", "Z", "X"),
        ("1", "X", "Z", "X"),
        ("Y", "Y", "Y", "Y"),
        ("Z", "Y", "X", "1"),
    ]
    for names in cases:
        orc = oracle_of(*names)
        expected = brute_force_verdict([g.matrix for g in orc.gates],
                                       SIGMA_STAR, m4.entries)
        verdict = check_promise(orc, SIGMA_STAR, m4)
        assert verdict.satisfied == (expected is not None)
        assert verdict.y == expected


def test_promise_invariant_under_per_gate_phases(m4):
    # every ordering uses each gate exactly once, so per-gate phases put a
    # common factor on all products and cancel out of the sign pattern
    rng = np.random.default_rng(7)
    for names in (("Z", "X", "Z", "X"), ("Z", "X", "Y", "1")):
        orc = oracle_of(*names)
        base = check_promise(orc, SIGMA_STAR, m4)
        phases = np.exp(2j * np.pi * rng.random(4))
        rephased = OracleSet(tuple(
            NamedGate(g.name, ph * g.matrix) for g, ph in zip(orc.gates, phases)
        ))
        verdict = check_promise(rephased, SIGMA_STAR, m4)
        assert (verdict.satisfied, verdict.y) == (base.satisfied, base.y)


def test_promise_conjugation_invariance(m4):
    rng = np.random.default_rng(0)
    for names in (("Z", "X", "Z", "X"), ("Z", "X", "Y", "1"), ("1", "X", "Z", "X")):
        orc = oracle_of(*names)
        base = check_promise(orc, SIGMA_STAR, m4)
        for _ in range(5):
            v = random_unitary(2, rng)
            rotated = orc.conjugated(v)
            verdict = check_promise(rotated, SIGMA_STAR, m4)
            assert verdict.satisfied == base.satisfied
            assert verdict.y == base.y


def test_promise_relabeling_consistency(m4):
    # renaming the gate labels together with the orderings leaves every
    # ordering product, and hence the verdict, unchanged
    tau = [2, 0, 3, 1]
    inverse = [tau.index(i) for i in range(4)]
    relabeled_sigma = [tuple(inverse[j] for j in row) for row in SIGMA_STAR.sigma]
    relabeled_perms = PermutationSet(relabeled_sigma, require_identity_reference=False)
    for names in (("Z", "X", "Z", "X"), ("Z", "X", "Y", "1"), ("1", "X", "Z", "X")):
        orc = oracle_of(*names)
        relabeled_oracle = OracleSet(tuple(orc.gates[tau[i]] for i in range(4)),
                                     claimed_y=orc.claimed_y)
        a = check_promise(orc, SIGMA_STAR, m4)
        b = check_promise(relabeled_oracle, relabeled_perms, m4)
        assert (a.satisfied, a.y) == (b.satisfied, b.y)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def test_enumerate_identity_only(m4):
    census, sets = enumerate_promise_sets([pauli("1")], SIGMA_STAR, m4)
    assert census.total == 1 and census.per_column == (1, 0, 0, 0)
    assert sets[0].claimed_y == 0


def test_enumerate_pauli_census_frozen(m4):
    # [frozen from an independent brute-force run: 136 = (52, 36, 24, 24)]
    gates = [pauli(n) for n in "IZXY"]
    census, sets = enumerate_promise_sets(gates, SIGMA_STAR, m4)
    assert census.total == 136
    assert census.per_column == (52, 36, 24, 24)
    # spot-verify each hit against the plain-loop oracle
    for orc in sets[::7]:
        expected = brute_force_verdict([g.matrix for g in orc.gates],
                                       SIGMA_STAR, m4.entries)
        assert orc.claimed_y == expected


def test_enumerate_full_library(promise_sets):
    census, sets = promise_sets
    assert census.total == 460
    assert census.per_column == (316, 60, 42, 42)
    assert len(sets) == 460


def test_enumerate_gate_order_invariance(m4):
    gates = [pauli(n) for n in "IZXY"]
    census_a, _ = enumerate_promise_sets(gates, SIGMA_STAR, m4)
    census_b, _ = enumerate_promise_sets(gates[::-1], SIGMA_STAR, m4)
    assert census_a.total == census_b.total
    assert census_a.per_column == census_b.per_column


def test_enumerate_thread_independence(m4):
    gates = [pauli(n) for n in "IZXY"]
    _, sets_a = enumerate_promise_sets(gates, SIGMA_STAR, m4, threads=1)
    _, sets_b = enumerate_promise_sets(gates, SIGMA_STAR, m4, threads=4)
    assert [s.names() for s in sets_a] == [s.names() for s in sets_b]
    assert [s.claimed_y for s in sets_a] == [s.claimed_y for s in sets_b]


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------

def test_table1_contents(m4):
    fixtures = chart_fixture("table1")
    assert [f.claimed_y for f in fixtures] == [0, 1, 2, 3]
    for fix in fixtures:
        assert set(fix.names()) <= {"I", "Z", "X"}
        verdict = check_promise(fix, SIGMA_STAR, m4)
        assert verdict.satisfied and verdict.y == fix.claimed_y


def test_table2_contents(m4):
    fixtures = chart_fixture("table2")
    assert fixtures[0].names() == ("(Z+X)/sqrt2", "(Z+X)/sqrt2", "I", "I")
    for fix in fixtures:
        verdict = check_promise(fix, SIGMA_STAR, m4)
        assert verdict.satisfied and verdict.y == fix.claimed_y


def test_thirty_contents(m4):
    fixtures = chart_fixture("thirty")
    assert len(fixtures) == 30
    counts = [sum(1 for f in fixtures if f.claimed_y == y) for y in range(4)]
    assert counts == [16, 6, 4, 4]
    for fix in fixtures:
        verdict = check_promise(fix, SIGMA_STAR, m4)
        assert verdict.satisfied and verdict.y == fix.claimed_y


def test_unknown_fixture():
    with pytest.raises(ValueError):
        chart_fixture("table9")


# ---------------------------------------------------------------------------
# equivalence classification
# ---------------------------------------------------------------------------

def test_conjugated_pair_lands_in_one_class():
    g = {x.name: x for x in gate_set_G()}
    v = g["(I+iX)/sqrt2"].matrix
    orc = oracle_of("Z", "X", "Z", "X")
    pair = [orc, orc.conjugated(v)]
    cls = equivalence_classes(pair)
    assert cls.n_classes == 1
    verify_classification(cls, pair)


def test_identity_vs_z_quadruple_differ():
    pair = [oracle_of("1", "1", "1", "1"), oracle_of("Z", "Z", "Z", "Z")]
    cls = equivalence_classes(pair)
    assert cls.n_classes == 2


def test_find_conjugator_explicit():
    rng = np.random.default_rng(1)
    orc = oracle_of("Z", "X", "Y", "1")
    v = random_unitary(2, rng)
    w = find_conjugator(orc, orc.conjugated(v))
    assert w is not None
    for a, b in zip(orc.matrices(), orc.conjugated(v).matrices()):
        assert np.max(np.abs(w @ a @ w.conj().T - b)) < 1e-8


def test_find_conjugator_rejects_inequivalent():
    assert find_conjugator(oracle_of("1", "1", "1", "1"),
                           oracle_of("Z", "Z", "Z", "Z")) is None


def test_rotation_conjugator_ignores_phases():
    # (Z, Z, X, Y) and (Z, Z, Y, X) differ by a quarter turn about z plus
    # per-gate phases, so only the phase-insensitive method merges them
    a = oracle_of("Z", "Z", "X", "Y")
    b = oracle_of("Z", "Z", "Y", "X")
    assert find_conjugator(a, b) is None
    r = find_rotation_conjugator(a, b)
    assert r is not None
    for u, w in zip(a.matrices(), b.matrices()):
        assert np.max(np.abs(r @ bloch_rotation(u) @ r.T - bloch_rotation(w))) < 1e-8


def test_classification_counts(promise_sets):
    _, sets = promise_sets
    strict = equivalence_classes(sets, phase_sensitive=True)
    verify_classification(strict, sets)
    assert strict.n_classes == 102
    loose = equivalence_classes(sets, phase_sensitive=False)
    verify_classification(loose, sets)
    assert loose.n_classes == 98
    # the phase-insensitive relation only merges, never splits
    assert loose.n_classes <= strict.n_classes
    assert sum(len(c) for c in strict.classes) == len(sets)


def test_classification_invariant_under_input_order(promise_sets):
    _, sets = promise_sets
    subset = sets[:120]
    rng = np.random.default_rng(2)
    shuffled = [subset[i] for i in rng.permutation(len(subset))]
    a = equivalence_classes(subset)
    b = equivalence_classes(shuffled)
    assert a.n_classes == b.n_classes
    assert sorted(len(c) for c in a.classes) == sorted(len(c) for c in b.classes)


def test_classification_invariant_under_common_rotation(promise_sets):
    _, sets = promise_sets
    subset = sets[:80]
    v = random_unitary(2, np.random.default_rng(3))
    rotated = [s.conjugated(v) for s in subset]
    a = equivalence_classes(subset)
    b = equivalence_classes(rotated)
    assert a.n_classes == b.n_classes
    assert sorted(len(c) for c in a.classes) == sorted(len(c) for c in b.classes)


def test_fingerprint_method_only_groups(promise_sets):
    _, sets = promise_sets
    cls = equivalence_classes(sets[:60], method="fingerprint")
    assert cls.method == "fingerprint"
    with pytest.raises(ValueError, match="certificates"):
        verify_classification(cls, sets[:60])


def test_verify_classification_detects_tampering(promise_sets):
    _, sets = promise_sets
    subset = sets[:40]
    cls = equivalence_classes(subset)
    tampered = {k: np.eye(2) * 1j for k in cls.conjugators}
    if not tampered:
        pytest.skip("subset produced singleton classes only")
    bad = type(cls)(cls.classes, cls.method, cls.phase_sensitive, tampered)
    with pytest.raises(InvariantViolation):
        verify_classification(bad, subset)
