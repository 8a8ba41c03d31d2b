#!/usr/bin/env python3
"""Simulating the controlled orderings with one fixed gate order.

The nine-step circuit walks a supersequence of the four orderings; at every
step each control branch either spends the gate on the target or parks it on
the gate's private ancilla.  The ancillas pick up the same state in every
branch, so tracing them out reproduces the controlled-ordering evolution
exactly.  With side information about the oracle table, even two queries
suffice, which is why small tables cannot certify anything by themselves.
"""
import numpy as np

from switchlab import (SIGMA_STAR, ancilla_factor, attack_combined,
                       attack_table1, attack_table2, basis_state,
                       build_fixed_circuit, chart_fixture, embed_sequence,
                       simulate_fixed_circuit, switch_equivalence_fidelity)

circuit = build_fixed_circuit(embed_sequence("ACBADACDB", SIGMA_STAR), SIGMA_STAR)
print("supersequence:", circuit.supersequence, f"-> {circuit.query_count} queries")
print("usage plan (T = acts on target, a = parked on ancilla):")
for x, word in enumerate(SIGMA_STAR.to_strings()):
    row = "".join("T" if circuit.usage[s][x] else "a" for s in range(circuit.query_count))
    print(f"  branch {x} ({word}): {row}")

oracle = chart_fixture("table2")[1]
control = np.full(4, 0.5, dtype=complex)
fid = switch_equivalence_fidelity(circuit, oracle, control, basis_state(2, 0))
print(f"\nfidelity with the direct controlled-ordering state: {fid:.12f}")

joint = simulate_fixed_circuit(circuit, oracle, control, basis_state(2, 0))
svals = np.linalg.svd(joint.reshape(8, 16), compute_uv=False)
print(f"second Schmidt coefficient across the system/ancilla cut: {svals[1]:.2e}")
anc = ancilla_factor(circuit, oracle)
print(f"ancilla factor (same in every branch), norm {np.linalg.norm(anc):.3f}")

print("\n-- side-information strategies: no superposition needed --")
for fix in chart_fixture("table1"):
    t = attack_table1(fix)
    outcomes = ", ".join(f"{q.gate_label}:{q.basis}={q.outcome:+d}" for q in t.queries)
    print(f"  table1 column {fix.claimed_y}: [{outcomes}] -> guess {t.guessed_y}")
for fix in chart_fixture("table2"):
    t = attack_table2(fix)
    print(f"  table2 column {fix.claimed_y}: {t.query_count} queries -> guess {t.guessed_y}")
for fix in chart_fixture("table2"):
    t = attack_combined(fix)
    print(f"  unknown table, column {fix.claimed_y}: identified {t.table_guess}, "
          f"guess {t.guessed_y} ({t.query_count} queries)")
