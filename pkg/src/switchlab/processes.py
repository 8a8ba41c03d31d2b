"""Process-matrix view of the controlled-ordering experiment.

A process matrix is a positive operator over the input/output spaces of the
four gate slots (plus control registers) that encodes how the slots are
wired.  This module builds the ideal controlled-ordering wiring, the
effective process left after fixing the control preparation/readout and the
target input, witness operators whose expectation is the algorithm's success
probability, the per-outcome superinstrument reduction, and the verifier for
decompositions certifying classically controlled gate orders.

Frozen conventions (asserted by tests):

* party spaces are ordered (A_I, A_O, B_I, B_O, C_I, C_O, D_I, D_O), each of
  dimension 2, with the readout space ``c`` last;
* wiring links are unnormalized maximally-entangled pairs |00> + |11> with
  squared norm 2;
* the transpose in witness operators is taken entrywise in the computational
  product basis.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .gates import SignMatrix
from .linalg import (LabeledSpace, as_state, choi_vector, kron_all,
                     partial_trace, reorder_matrix, reorder_vector,
                     space_dims, space_index, trace_out_pure)
from .switch import OracleSet, PermutationSet, SIGMA_STAR

PARTY_NAMES = "ABCD"
PARTY_LABELS = tuple(f"{p}_{io}" for p in PARTY_NAMES for io in ("I", "O"))

_LINK = np.array([1, 0, 0, 1], dtype=complex)  # |00> + |11>, squared norm 2


def _psd_violation(mat: np.ndarray, tol: float) -> float:
    """0.0 when the Hermitian part is PSD within tol (cheap Cholesky
    certificate of the shifted matrix), else the eigenvalue defect."""
    h = (mat + mat.conj().T) / 2
    try:
        np.linalg.cholesky(h + tol * np.eye(h.shape[0]))
        return 0.0
    except np.linalg.LinAlgError:
        return max(0.0, -float(np.linalg.eigvalsh(h).min()))


def party_spaces() -> list[LabeledSpace]:
    return [LabeledSpace(lab, 2) for lab in PARTY_LABELS]


def effective_spaces(p: int = 4) -> list[LabeledSpace]:
    return party_spaces() + [LabeledSpace("c", p)]


def switch_process_spaces(p: int = 4) -> list[LabeledSpace]:
    return ([LabeledSpace("c_p", p), LabeledSpace("t_p", 2)] + party_spaces()
            + [LabeledSpace("t_f", 2), LabeledSpace("c_f", p)])


@dataclass(frozen=True, eq=False)
class ProcessMatrix:
    """Labeled positive-semidefinite operator over an ordered space list."""

    spaces: tuple[LabeledSpace, ...]
    matrix: np.ndarray = field(repr=False)

    def __init__(self, spaces, matrix, validate: bool = True, tol: float = 1e-9):
        spaces = tuple(spaces)
        matrix = np.array(matrix, dtype=complex)
        d = int(np.prod(space_dims(spaces)))
        if matrix.shape != (d, d):
            raise ValueError(f"matrix shape {matrix.shape} does not match spaces (dim {d})")
        if validate:
            if np.max(np.abs(matrix - matrix.conj().T)) > tol:
                raise ValueError("process matrix is not Hermitian")
            if _psd_violation(matrix, tol) > tol:
                raise ValueError("process matrix is not positive semidefinite")
        matrix.flags.writeable = False
        object.__setattr__(self, "spaces", spaces)
        object.__setattr__(self, "matrix", matrix)

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def labels(self) -> list[str]:
        return [s.label for s in self.spaces]


def _reorder_ket(vec: np.ndarray, labels: list[str], dims: list[int],
                 target_labels: list[str]) -> np.ndarray:
    order = [labels.index(lab) for lab in target_labels]
    return reorder_vector(vec, dims, order)


def build_switch_process_ket(perms: PermutationSet = SIGMA_STAR) -> np.ndarray:
    """Ideal wiring ket over (c_p, t_p, parties, t_f, c_f).

    Branch x carries |x> on both control registers and a chain of identity
    links routing t_p through the gate slots in ordering x and out to t_f.
    Squared norm is P * 2**(N+1) (orthogonal branches, N+1 links each).
    """
    p = perms.P
    spaces = switch_process_spaces(p)
    dims = space_dims(spaces)
    target_labels = [s.label for s in spaces]
    total = np.zeros(int(np.prod(dims)), dtype=complex)
    for x in range(p):
        sig = perms.sigma[x]
        basis_x = np.zeros(p, dtype=complex)
        basis_x[x] = 1.0
        factors = [basis_x, _LINK]
        labels = ["c_p", "t_p", f"{PARTY_NAMES[sig[0]]}_I"]
        for j in range(perms.N - 1):
            factors.append(_LINK)
            labels.extend([f"{PARTY_NAMES[sig[j]]}_O", f"{PARTY_NAMES[sig[j + 1]]}_I"])
        factors.append(_LINK)
        labels.extend([f"{PARTY_NAMES[sig[-1]]}_O", "t_f"])
        factors.append(basis_x)
        labels.append("c_f")
        vec = kron_all(factors)
        branch_dims = [dict(zip(target_labels, dims))[lab] for lab in labels]
        total += _reorder_ket(vec, labels, branch_dims, target_labels)
    return total


def build_effective_ket(target_in: np.ndarray, m: SignMatrix,
                        perms: PermutationSet = SIGMA_STAR) -> np.ndarray:
    """Wiring ket after fixing the algorithm's preparations and readout.

    The uniform control preparation weights every branch by 1/sqrt(P), the
    target state enters the first gate slot of each branch, and the inverse
    control gate acts before the readout register ``c``.  Lives on
    (parties, t_f, c); squared norm P * 2**(N-1) for a qubit target.
    """
    target = as_state(target_in)
    p = perms.P
    if m.P != p:
        raise ValueError("sign-matrix order does not match the permutation set")
    h = m.as_gate()
    hinv = m.as_gate_inverse()
    spaces = party_spaces() + [LabeledSpace("t_f", 2), LabeledSpace("c", p)]
    dims = space_dims(spaces)
    target_labels = [s.label for s in spaces]
    total = np.zeros(int(np.prod(dims)), dtype=complex)
    for x in range(p):
        sig = perms.sigma[x]
        factors = [target]
        labels = [f"{PARTY_NAMES[sig[0]]}_I"]
        for j in range(perms.N - 1):
            factors.append(_LINK)
            labels.extend([f"{PARTY_NAMES[sig[j]]}_O", f"{PARTY_NAMES[sig[j + 1]]}_I"])
        factors.append(_LINK)
        labels.extend([f"{PARTY_NAMES[sig[-1]]}_O", "t_f"])
        factors.append(hinv[:, x])
        labels.append("c")
        vec = h[x, 0] * kron_all(factors)
        branch_dims = [dict(zip(target_labels, dims))[lab] for lab in labels]
        total += _reorder_ket(vec, labels, branch_dims, target_labels)
    return total


def build_effective_process(target_in: np.ndarray, m: SignMatrix,
                            perms: PermutationSet = SIGMA_STAR,
                            validate: bool = True) -> ProcessMatrix:
    """Effective process over (parties, c): the pure wiring ket with the
    final target register traced out.  Trace P * 2**(N-1); rank <= 2."""
    ket = build_effective_ket(target_in, m, perms)
    spaces = party_spaces() + [LabeledSpace("t_f", 2), LabeledSpace("c", m.P)]
    matrix = trace_out_pure(ket, spaces, {"t_f"})
    return ProcessMatrix(effective_spaces(m.P), matrix, validate=validate)


def definite_order_process(order: str, target_in: np.ndarray, answer_y: int,
                           p: int = 4) -> ProcessMatrix:
    """Comb that wires the slots in one fixed order and always reports
    ``answer_y``: the baseline every witness is scored against."""
    target = as_state(target_in)
    seq = [PARTY_NAMES.index(ch) for ch in order.upper()]
    if sorted(seq) != list(range(len(PARTY_NAMES))):
        raise ValueError(f"{order!r} is not an ordering of {PARTY_NAMES}")
    factors = [target]
    labels = [f"{PARTY_NAMES[seq[0]]}_I"]
    for j in range(len(seq) - 1):
        factors.append(_LINK)
        labels.extend([f"{PARTY_NAMES[seq[j]]}_O", f"{PARTY_NAMES[seq[j + 1]]}_I"])
    factors.append(_LINK)
    labels.extend([f"{PARTY_NAMES[seq[-1]]}_O", "t_f"])
    chain = kron_all(factors)
    chain_spaces = [LabeledSpace(lab, 2) for lab in labels]
    order_axes = [labels.index(lab) for lab in PARTY_LABELS] + [labels.index("t_f")]
    chain = reorder_vector(chain, space_dims(chain_spaces), order_axes)
    rho = trace_out_pure(chain, [LabeledSpace(lab, 2) for lab in PARTY_LABELS]
                         + [LabeledSpace("t_f", 2)], {"t_f"})
    readout = np.zeros((p, p), dtype=complex)
    readout[answer_y, answer_y] = 1.0
    return ProcessMatrix(effective_spaces(p), np.kron(rho, readout))


# ---------------------------------------------------------------------------
# Witness operators
# ---------------------------------------------------------------------------

def oracle_choi_ket(oracle: OracleSet) -> np.ndarray:
    """Product of the gate Choi vectors over (A_I, A_O, ..., D_O)."""
    return kron_all([choi_vector(g.matrix) for g in oracle.gates])


@dataclass(frozen=True, eq=False)
class WitnessOperator:
    """Convex combination of transposed oracle Choi projectors tagged with
    their promised readout outcome; expectation against an effective process
    is the algorithm's success probability."""

    spaces: tuple[LabeledSpace, ...]
    components: tuple[tuple[OracleSet, int, float], ...]

    def __init__(self, spaces, components):
        components = tuple((o, int(y), float(q)) for o, y, q in components)
        if not components:
            raise ValueError("witness needs at least one component")
        weights = np.array([q for _, _, q in components])
        if np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-9:
            raise ValueError("weights must be nonnegative and sum to 1")
        p = spaces[-1].dim
        for o, y, _ in components:
            if o.N != 4 or o.dim != 2:
                raise ValueError("witness components need four qubit gates")
            if not 0 <= y < p:
                raise ValueError(f"outcome {y} out of range for readout dim {p}")
        object.__setattr__(self, "spaces", tuple(spaces))
        object.__setattr__(self, "components", components)

    def matrix(self) -> np.ndarray:
        """Dense form: sum_k q_k (|U_k>><<U_k|)^T (x) |y_k><y_k|."""
        p = self.spaces[-1].dim
        d = int(np.prod(space_dims(self.spaces)))
        out = np.zeros((d, d), dtype=complex)
        for oracle, y, q in self.components:
            g = oracle_choi_ket(oracle).conj()    # transpose of the projector
            proj = np.zeros((p, p))
            proj[y, y] = 1.0
            out += q * np.kron(np.outer(g, g.conj()), proj)
        return out


def witness_operator(components) -> WitnessOperator:
    """Build a witness on the standard (parties, c) spaces."""
    return WitnessOperator(effective_spaces(4), components)


def uniform_witness(oracles) -> WitnessOperator:
    """Equal weights over oracle sets that carry their verified column."""
    oracles = list(oracles)
    q = 1.0 / len(oracles)
    return witness_operator([(o, o.claimed_y, q) for o in oracles])


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Superinstrument:
    """Per-outcome blocks W[y] = Tr_c[(1 (x) |y><y|) W] over the party spaces."""

    parts: tuple[np.ndarray, ...]
    spaces: tuple[LabeledSpace, ...]

    @property
    def total_trace(self) -> float:
        return float(sum(np.trace(w).real for w in self.parts))


def superinstrument(w: ProcessMatrix) -> Superinstrument:
    if "c" not in w.labels():
        raise ValueError("process has no readout space 'c'")
    c = space_index(w.spaces, "c")
    dims = space_dims(w.spaces)
    k = len(dims)
    order = [i for i in range(k) if i != c] + [c]
    mat = reorder_matrix(w.matrix, dims, order) if order != list(range(k)) else w.matrix
    p = dims[c]
    d = mat.shape[0] // p
    arr = mat.reshape(d, p, d, p)
    parts = tuple(np.ascontiguousarray(arr[:, y, :, y]) for y in range(p))
    kept = tuple(w.spaces[i] for i in order[:-1])
    return Superinstrument(parts, kept)


def success_probability(w: ProcessMatrix, g: WitnessOperator) -> float:
    """Tr[G W], evaluated blockwise through the superinstrument reduction."""
    if w.labels() != [s.label for s in g.spaces] or space_dims(w.spaces) != space_dims(g.spaces):
        raise ValueError("witness and process spaces do not match")
    blocks = superinstrument(w).parts
    val = 0.0
    for oracle, y, q in g.components:
        gk = oracle_choi_ket(oracle).conj()
        val += q * float(np.real(gk.conj() @ blocks[y] @ gk))
    if not -1e-8 <= val <= 1.0 + 1e-8:
        raise ValueError(f"success probability {val} outside [0, 1]")
    return val


# ---------------------------------------------------------------------------
# Decomposition constraints for classically controlled gate orders
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstraintCheck:
    name: str
    passed: bool
    residual: float


@dataclass(frozen=True)
class CcgoReport:
    """Outcome of checking a 24-part decomposition against the reduced
    identity-on-output constraints.  ``normalized`` records whether the parts
    sum to the canonical trace 2**N (vacuous passes are possible otherwise)."""

    checks: tuple[ConstraintCheck, ...]
    trace: float
    normalized: bool

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[ConstraintCheck]:
        return [c for c in self.checks if not c.passed]


def _identity_residual(mat: np.ndarray, spaces, out_label: str) -> float:
    """Max-norm distance of ``mat`` from (Tr_out mat)/2 (x) 1 on out_label."""
    dims = space_dims(spaces)
    k = len(dims)
    i = space_index(spaces, out_label)
    reduced = partial_trace(mat, spaces, {out_label}) / spaces[i].dim
    # re-insert the identity factor at position i
    rest = [j for j in range(k) if j != i]
    expanded = np.kron(reduced, np.eye(spaces[i].dim))
    order = rest + [i]
    inverse = [order.index(j) for j in range(k)]
    expanded = reorder_matrix(expanded, [dims[j] for j in order], inverse)
    return float(np.max(np.abs(mat - expanded)))


def verify_ccgo_decomposition(parts, tolerance: float = 1e-9) -> CcgoReport:
    """Check a candidate decomposition {ordering -> matrix over (parties, c)}.

    Requirements checked, one named entry each: every part positive
    semidefinite; for each ordering (i,j,k,l) the readout-traced part is
    identity on l_O; tracing slot l leaves identity on k_O; summing over k
    and tracing leaves identity on j_O; summing over j likewise on i_O.
    """
    orderings = list(itertools.permutations(PARTY_NAMES))
    keys = {tuple(k) for k in parts.keys()}
    if keys != set(orderings):
        raise ValueError("need exactly the 24 orderings of A, B, C, D as keys")
    spaces_c = effective_spaces(4)
    d = int(np.prod(space_dims(spaces_c)))
    checks: list[ConstraintCheck] = []
    total_trace = 0.0

    def spaces_for(labels_present):
        return [s for s in party_spaces() if s.label.split("_")[0] in labels_present]

    reduced4: dict[tuple, np.ndarray] = {}
    for key in orderings:
        mat = np.asarray(parts[key], dtype=complex)
        if mat.shape != (d, d):
            raise ValueError(f"part {key} has shape {mat.shape}, expected {(d, d)}")
        total_trace += float(np.trace(mat).real)
        if np.max(np.abs(mat)) == 0.0:
            herm_res, eig_defect = 0.0, 0.0
        else:
            herm_res = float(np.max(np.abs(mat - mat.conj().T)))
            eig_defect = _psd_violation(mat, tolerance)
        psd_ok = herm_res <= tolerance and eig_defect <= tolerance
        checks.append(ConstraintCheck(f"psd[{''.join(key)}]", psd_ok,
                                      max(herm_res, eig_defect)))
        reduced4[key] = partial_trace(mat, spaces_c, {"c"})

    # level 4: identity on the last slot's output
    reduced3: dict[tuple, np.ndarray] = {}
    for key in orderings:
        i, j, k, l = key
        res = _identity_residual(reduced4[key], party_spaces(), f"{l}_O")
        checks.append(ConstraintCheck(f"reduced[{''.join(key)}] = ~W (x) 1[{l}_O]",
                                      res <= tolerance, res))
        reduced3[key[:3]] = partial_trace(reduced4[key], party_spaces(),
                                          {f"{l}_I", f"{l}_O"})

    # level 3
    reduced2: dict[tuple, np.ndarray] = {}
    for key3 in sorted({k[:3] for k in orderings}):
        i, j, k = key3
        spaces3 = spaces_for({i, j, k})
        res = _identity_residual(reduced3[key3], spaces3, f"{k}_O")
        checks.append(ConstraintCheck(f"reduced[{''.join(key3)}] = ~W (x) 1[{k}_O]",
                                      res <= tolerance, res))
    for i, j in sorted({k[:2] for k in orderings}):
        rest = [x for x in PARTY_NAMES if x not in (i, j)]
        acc = None
        for k in rest:
            spaces3 = spaces_for({i, j, k})
            tr = partial_trace(reduced3[(i, j, k)], spaces3, {f"{k}_I", f"{k}_O"})
            acc = tr if acc is None else acc + tr
        reduced2[(i, j)] = acc

    # level 2
    reduced1: dict[str, np.ndarray] = {}
    for i, j in sorted(reduced2.keys()):
        spaces2 = spaces_for({i, j})
        res = _identity_residual(reduced2[(i, j)], spaces2, f"{j}_O")
        checks.append(ConstraintCheck(f"reduced[{i}{j}] = ~W (x) 1[{j}_O]",
                                      res <= tolerance, res))
    for i in PARTY_NAMES:
        acc = None
        for j in [x for x in PARTY_NAMES if x != i]:
            spaces2 = spaces_for({i, j})
            tr = partial_trace(reduced2[(i, j)], spaces2, {f"{j}_I", f"{j}_O"})
            acc = tr if acc is None else acc + tr
        reduced1[i] = acc

    # level 1
    for i in PARTY_NAMES:
        res = _identity_residual(reduced1[i], spaces_for({i}), f"{i}_O")
        checks.append(ConstraintCheck(f"reduced[{i}] = ~W (x) 1[{i}_O]",
                                      res <= tolerance, res))

    normalized = abs(total_trace - 2 ** 4) <= 1e-8 * 2 ** 4
    return CcgoReport(tuple(checks), total_trace, normalized)
