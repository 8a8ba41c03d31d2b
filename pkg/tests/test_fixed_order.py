import numpy as np
import pytest
from numpy.testing import assert_allclose

from switchlab import (OracleSet, PermutationSet, SIGMA_STAR, ancilla_factor,
                       apply_n_switch, attack_combined, attack_table1,
                       attack_table2, basis_state, build_fixed_circuit,
                       chart_fixture, embed_sequence, kron_all, pauli,
                       product_pi, random_state, scs,
                       simulate_fixed_circuit, switch_equivalence_fidelity)
from switchlab.gates import NamedGate
from switchlab.linalg import random_unitary


@pytest.fixture(scope="module")
def star_circuit():
    return build_fixed_circuit(scs(SIGMA_STAR), SIGMA_STAR)


@pytest.fixture(scope="module")
def nine_letter_circuit():
    return build_fixed_circuit(embed_sequence("ACBADACDB", SIGMA_STAR), SIGMA_STAR)


def random_oracle(rng, n=4):
    return OracleSet(tuple(NamedGate(f"U{i}", random_unitary(2, rng)) for i in range(n)))


# ---------------------------------------------------------------------------
# circuit construction
# ---------------------------------------------------------------------------

def test_nine_query_circuit(star_circuit, nine_letter_circuit):
    assert star_circuit.query_count == 9
    assert nine_letter_circuit.query_count == 9
    assert nine_letter_circuit.supersequence == "ACBADACDB"


def test_single_ordering_all_target():
    perms = PermutationSet.from_strings(["ABCD"])
    circuit = build_fixed_circuit(scs(perms), perms)
    assert circuit.query_count == 4
    assert all(circuit.usage[s][0] for s in range(4))


def test_pair_has_one_idle_step_per_branch():
    perms = PermutationSet.from_strings(["ABCD", "ABDC"])
    circuit = build_fixed_circuit(scs(perms), perms)
    assert circuit.query_count == 5
    for x in range(2):
        idle = sum(1 for s in range(5) if not circuit.usage[s][x])
        assert idle == 1


def test_target_steps_spell_each_ordering(star_circuit):
    for x, word in enumerate(SIGMA_STAR.to_strings()):
        spelled = "".join(
            star_circuit.supersequence[s]
            for s in range(star_circuit.query_count)
            if star_circuit.usage[s][x]
        )
        assert spelled == word


def test_build_rejects_foreign_permutations():
    other = PermutationSet.from_strings(["ABCD", "BACD"])
    with pytest.raises(ValueError, match="different permutation set"):
        build_fixed_circuit(scs(SIGMA_STAR), other)


# ---------------------------------------------------------------------------
# circuit simulation
# ---------------------------------------------------------------------------

def test_ancilla_factor_for_nine_letter_sequence(nine_letter_circuit):
    # ACBADACDB uses A three times, B, C, D twice each
    orc = chart_fixture("table2")[1]
    mats = orc.matrices()
    zero = basis_state(2, 0)
    expected = kron_all([mats[0] @ mats[0] @ zero, mats[1] @ zero,
                         mats[2] @ zero, mats[3] @ zero])
    assert_allclose(ancilla_factor(nine_letter_circuit, orc), expected, atol=1e-12)


def test_ancillas_identical_across_branches(nine_letter_circuit):
    rng = np.random.default_rng(0)
    orc = random_oracle(rng)
    joint = simulate_fixed_circuit(nine_letter_circuit, orc,
                                   np.full(4, 0.5, dtype=complex),
                                   random_state(2, rng)).reshape(4, 2, 16)
    anc = ancilla_factor(nine_letter_circuit, orc)
    for x in range(4):
        branch = joint[x]  # (target, ancillas), weight 1/2
        # branch must be (target vector) (x) anc exactly
        target_vec = branch @ anc.conj()
        assert np.max(np.abs(branch - np.outer(target_vec, anc))) < 1e-10


def test_basis_control_gives_ordering_product(star_circuit):
    rng = np.random.default_rng(1)
    orc = random_oracle(rng)
    psi = random_state(2, rng)
    for x in range(4):
        joint = simulate_fixed_circuit(star_circuit, orc, basis_state(4, x), psi)
        joint = joint.reshape(4, 2, 16)
        anc = ancilla_factor(star_circuit, orc)
        target_vec = joint[x] @ anc.conj() / np.vdot(anc, anc)
        assert_allclose(target_vec, product_pi(orc, SIGMA_STAR, x) @ psi, atol=1e-10)


def test_circuit_matches_switch_on_fixtures(star_circuit, m4):
    control = m4.as_gate()[:, 0]
    for fix in chart_fixture("table1") + chart_fixture("table2"):
        f = switch_equivalence_fidelity(star_circuit, fix, control, basis_state(2, 0))
        assert f >= 1 - 1e-10


def test_circuit_matches_switch_on_random_inputs(star_circuit, nine_letter_circuit):
    rng = np.random.default_rng(2)
    for circuit in (star_circuit, nine_letter_circuit):
        for _ in range(5):
            orc = random_oracle(rng)
            f = switch_equivalence_fidelity(circuit, orc,
                                            random_state(4, rng), random_state(2, rng))
            assert f >= 1 - 1e-10


def test_output_is_product_across_system_ancilla_cut(star_circuit):
    rng = np.random.default_rng(3)
    orc = random_oracle(rng)
    joint = simulate_fixed_circuit(star_circuit, orc,
                                   random_state(4, rng), random_state(2, rng))
    svals = np.linalg.svd(joint.reshape(8, 16), compute_uv=False)
    assert svals[1] <= 1e-8  # Schmidt rank 1 across the cut


def test_simulation_agrees_with_direct_switch_state(star_circuit):
    rng = np.random.default_rng(4)
    orc = random_oracle(rng)
    control, psi = random_state(4, rng), random_state(2, rng)
    joint = simulate_fixed_circuit(star_circuit, orc, control, psi).reshape(8, 16)
    anc = ancilla_factor(star_circuit, orc)
    reduced = joint @ anc.conj() / np.vdot(anc, anc)
    assert_allclose(reduced, apply_n_switch(control, psi, orc, SIGMA_STAR), atol=1e-10)


# ---------------------------------------------------------------------------
# side-information strategies
# ---------------------------------------------------------------------------

def test_attack_table1_exhaustive():
    for fix in chart_fixture("table1"):
        t = attack_table1(fix)
        assert t.guessed_y == fix.claimed_y
        assert t.query_count == 2
        assert [q.gate_label for q in t.queries] == ["A", "C"]
        assert all(q.basis == "X" for q in t.queries)


def test_attack_table1_specific_outcomes():
    t1 = attack_table1(chart_fixture("table1")[1])
    assert [q.outcome for q in t1.queries] == [-1, -1]
    t0 = attack_table1(chart_fixture("table1")[0])
    assert [q.outcome for q in t0.queries] == [1, 1]
    t2 = attack_table1(chart_fixture("table1")[2])
    assert [q.outcome for q in t2.queries] == [1, -1]


def test_attack_table2_exhaustive():
    expected_queries = {0: 4, 1: 1, 2: 4, 3: 2}
    for fix in chart_fixture("table2"):
        t = attack_table2(fix)
        assert t.guessed_y == fix.claimed_y
        assert t.query_count == expected_queries[fix.claimed_y]
        assert t.query_count <= 4


def test_attack_table2_separates_columns_zero_and_two():
    t0 = attack_table2(chart_fixture("table2")[0])
    t2 = attack_table2(chart_fixture("table2")[2])
    assert t0.queries[-1].outcome == 1 and t0.guessed_y == 0
    assert t2.queries[-1].outcome == -1 and t2.guessed_y == 2


def test_attack_combined_exhaustive():
    for table in ("table1", "table2"):
        for fix in chart_fixture(table):
            t = attack_combined(fix)
            assert t.guessed_y == fix.claimed_y
            assert t.query_count <= 5
            assert t.queries[0].gate_label == "D" and t.queries[0].basis == "Z"


def test_attack_combined_shared_column():
    a = attack_combined(chart_fixture("table1")[3])
    b = attack_combined(chart_fixture("table2")[3])
    assert a.guessed_y == b.guessed_y == 3


def test_attack_rejects_foreign_oracle():
    stranger = OracleSet(tuple(pauli(n) for n in ("Y", "Y", "Y", "Y")))
    with pytest.raises(ValueError, match="not column"):
        attack_table1(stranger)
