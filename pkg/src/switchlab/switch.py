"""The quantum N-switch gate and the promise-problem algorithms built on it.

The switch applies the x-th ordering of N oracle gates to a target system,
conditioned on control basis state |x>.  Two single-shot decoding algorithms
are provided: the sign-matrix variant (conjugating the switch by H_P built
from a +-1 sign matrix, works for any even target dimension) and the Fourier
variant (conjugating by F_P, which needs target dimension >= P).

A two-knob noise model is included for qualitative studies: control
dephasing scales the off-diagonal control blocks of the post-switch density
matrix by (1 - gamma), and gate overrotation left-multiplies every oracle
gate by a rotation of angle epsilon about the Y axis.  Both knobs at zero
reproduce the ideal pure-state evolution exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .gates import NamedGate, SignMatrix, fourier_matrix
from .linalg import as_state

_LABELS = "ABCDEFGH"


@dataclass(frozen=True)
class PermutationSet:
    """P orderings of N gate labels; sigma[x][j] is the j-th gate applied in
    ordering x.  The first ordering is the identity and defines the reference
    product."""

    sigma: tuple[tuple[int, ...], ...]

    def __init__(self, sigma, require_identity_reference: bool = True):
        sigma = tuple(tuple(int(j) for j in row) for row in sigma)
        if not sigma:
            raise ValueError("at least one ordering is required")
        n = len(sigma[0])
        ident = tuple(range(n))
        for row in sigma:
            if sorted(row) != list(range(n)):
                raise ValueError(f"{row} is not a permutation of 0..{n - 1}")
        if len(set(sigma)) != len(sigma):
            raise ValueError("orderings must be pairwise distinct")
        if len(sigma) > math.factorial(n):
            raise ValueError("more orderings than permutations exist")
        if require_identity_reference and sigma[0] != ident:
            # The relabeling-consistency property needs the escape hatch; the
            # published fixtures never do.
            raise ValueError("the first ordering must be the identity")
        object.__setattr__(self, "sigma", sigma)

    @property
    def N(self) -> int:
        return len(self.sigma[0])

    @property
    def P(self) -> int:
        return len(self.sigma)

    @classmethod
    def from_strings(cls, words, require_identity_reference: bool = True) -> "PermutationSet":
        words = list(words)
        n = len(words[0])
        if n > len(_LABELS):
            raise ValueError("at most 8 labels supported")
        alphabet = _LABELS[:n]
        rows = []
        for w in words:
            w = w.upper()
            if len(w) != n or sorted(w) != sorted(alphabet):
                raise ValueError(f"{w!r} is not a permutation of {alphabet!r}")
            rows.append(tuple(alphabet.index(ch) for ch in w))
        return cls(rows, require_identity_reference=require_identity_reference)

    def to_strings(self) -> list[str]:
        return ["".join(_LABELS[j] for j in row) for row in self.sigma]


SIGMA_STAR = PermutationSet.from_strings(("ABCD", "BADC", "CBDA", "DACB"))


@dataclass(frozen=True)
class OracleSet:
    """An N-tuple of oracle gates, optionally carrying a verified column y."""

    gates: tuple[NamedGate, ...]
    claimed_y: int | None = None

    def __post_init__(self):
        gates = tuple(self.gates)
        if not gates:
            raise ValueError("oracle needs at least one gate")
        dims = {g.dim for g in gates}
        if len(dims) != 1:
            raise ValueError("oracle gates must share one dimension")
        if self.claimed_y is not None and self.claimed_y < 0:
            raise ValueError("claimed_y must be a column index")
        object.__setattr__(self, "gates", gates)

    @property
    def N(self) -> int:
        return len(self.gates)

    @property
    def dim(self) -> int:
        return self.gates[0].dim

    def matrices(self) -> np.ndarray:
        return np.stack([g.matrix for g in self.gates])

    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.gates)

    def conjugated(self, v: np.ndarray) -> "OracleSet":
        """Simultaneously conjugate every gate by the same unitary."""
        vd = np.asarray(v).conj().T
        return OracleSet(
            tuple(NamedGate(f"{g.name}^V", v @ g.matrix @ vd) for g in self.gates),
            claimed_y=self.claimed_y,
        )


@dataclass(frozen=True)
class NoiseModel:
    """Control dephasing gamma in [0, 1], gate overrotation epsilon (radians),
    and a default seed for downstream shot samplers.  The channel itself is
    deterministic."""

    gamma: float = 0.0
    epsilon: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("gamma must lie in [0, 1]")

    @property
    def is_trivial(self) -> bool:
        return self.gamma == 0.0 and self.epsilon == 0.0


@dataclass(frozen=True)
class RunResult:
    """Outcome distribution of a single algorithm run."""

    outcome_distribution: np.ndarray = field(repr=False)
    decoded_y: int
    success_probability: float | None

    def __post_init__(self):
        p = np.asarray(self.outcome_distribution, dtype=float)
        if np.min(p) < -1e-9:
            raise ValueError("negative outcome probability")
        if abs(p.sum() - 1.0) > 1e-9:
            raise ValueError("outcome probabilities must sum to 1")
        p = np.clip(p, 0.0, None)
        p.flags.writeable = False
        object.__setattr__(self, "outcome_distribution", p)


def product_pi(oracle: OracleSet, perms: PermutationSet, x: int) -> np.ndarray:
    """Product of the oracle gates in their x-th ordering; the ordering's
    first gate acts first (rightmost factor)."""
    if not 0 <= x < perms.P:
        raise IndexError(f"ordering index {x} out of range for P={perms.P}")
    if oracle.N != perms.N:
        raise ValueError("oracle size does not match the permutation set")
    mats = oracle.matrices()
    out = np.eye(oracle.dim, dtype=complex)
    for j in perms.sigma[x]:
        out = mats[j] @ out
    return out


def all_products(oracle: OracleSet, perms: PermutationSet) -> np.ndarray:
    """Stack of the P ordering products, shape (P, d, d)."""
    if oracle.N != perms.N:
        raise ValueError("oracle size does not match the permutation set")
    mats = oracle.matrices()
    d = oracle.dim
    out = np.empty((perms.P, d, d), dtype=complex)
    for x, sig in enumerate(perms.sigma):
        p = np.eye(d, dtype=complex)
        for j in sig:
            p = mats[j] @ p
        out[x] = p
    return out


def apply_n_switch(control: np.ndarray, target: np.ndarray,
                   oracle: OracleSet, perms: PermutationSet) -> np.ndarray:
    """Joint (control (x) target) state after the controlled-ordering gate:
    |x>|psi> -> |x> Pi_x |psi>, extended linearly."""
    control = as_state(control)
    target = as_state(target)
    if control.size != perms.P:
        raise ValueError(f"control dimension {control.size} != P={perms.P}")
    if target.size != oracle.dim:
        raise ValueError("target dimension does not match the oracle gates")
    pis = all_products(oracle, perms)
    joint = control[:, None] * np.einsum("xij,j->xi", pis, target)
    return joint.reshape(-1)


def _distribution_pure(pis: np.ndarray, u_ctrl: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Outcome distribution of u_ctrl^-1 . switch . u_ctrl on |0>|target>."""
    c0 = u_ctrl[:, 0]
    joint = c0[:, None] * np.einsum("xij,j->xi", pis, target)
    out = np.einsum("yx,xi->yi", u_ctrl.conj().T, joint)
    return np.sum(np.abs(out) ** 2, axis=1)


def _distribution_dephased(pis: np.ndarray, u_ctrl: np.ndarray, target: np.ndarray,
                           gamma: float) -> np.ndarray:
    """Density-matrix evolution with post-switch control dephasing."""
    p = u_ctrl.shape[0]
    c0 = u_ctrl[:, 0]
    joint = c0[:, None] * np.einsum("xij,j->xi", pis, target)
    rho = np.einsum("xi,yj->xiyj", joint, joint.conj())
    factor = (1.0 - gamma) + gamma * np.eye(p)
    rho = rho * factor[:, None, :, None]
    uinv = u_ctrl.conj().T
    rho = np.einsum("ax,xiyj,by->aibj", uinv, rho, uinv.conj())
    return np.einsum("xixi->x", rho).real


def _overrotation(epsilon: float) -> np.ndarray:
    # exp(-i epsilon Y / 2): a real rotation by epsilon in the qubit plane
    c, s = np.cos(epsilon / 2.0), np.sin(epsilon / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _noisy_products(oracle: OracleSet, perms: PermutationSet, epsilon: float) -> np.ndarray:
    if epsilon == 0.0:
        return all_products(oracle, perms)
    r = _overrotation(epsilon)
    gates = tuple(NamedGate(g.name, r @ g.matrix) for g in oracle.gates)
    return all_products(OracleSet(gates), perms)


def _finish(dist: np.ndarray, claimed_y: int | None) -> RunResult:
    dist = np.clip(dist, 0.0, None)
    dist = dist / dist.sum()
    decoded = int(np.argmax(dist))  # ties break to the lowest index
    success = float(dist[claimed_y]) if claimed_y is not None else None
    return RunResult(dist, decoded, success)


def run_hadamard_algorithm(oracle: OracleSet, perms: PermutationSet, m: SignMatrix,
                           target_state: np.ndarray,
                           noise: NoiseModel | None = None) -> RunResult:
    """Conjugate the switch by the sign-matrix gate H_P and measure the
    control.  For a promise-satisfying oracle and no noise the distribution
    is a point mass on the promised column."""
    if m.P != perms.P:
        raise ValueError(f"sign matrix order {m.P} does not match P={perms.P}")
    if oracle.dim != 2:
        raise ValueError("the sign-matrix algorithm runs qubit targets only")
    target = as_state(target_state)
    if target.size != oracle.dim:
        raise ValueError("target dimension does not match the oracle gates")
    h = m.as_gate()
    if noise is None or noise.is_trivial:
        dist = _distribution_pure(all_products(oracle, perms), h, target)
    else:
        pis = _noisy_products(oracle, perms, noise.epsilon)
        if noise.gamma == 0.0:
            dist = _distribution_pure(pis, h, target)
        else:
            dist = _distribution_dephased(pis, h, target, noise.gamma)
    return _finish(dist, oracle.claimed_y)


def run_fourier_algorithm(oracle: OracleSet, perms: PermutationSet,
                          target_state: np.ndarray) -> RunResult:
    """Phase-estimation variant: conjugate the switch by F_P.  Decodes the
    promised exponent when the orderings differ by powers of exp(2 pi i/P);
    the promise itself forces target dimension >= P."""
    target = as_state(target_state)
    if target.size != oracle.dim:
        raise ValueError("target dimension does not match the oracle gates")
    f = fourier_matrix(perms.P)
    dist = _distribution_pure(all_products(oracle, perms), f, target)
    return _finish(dist, oracle.claimed_y)


def dimension_constraint_ok(problem: str, d: int, p: int) -> bool:
    """Solvability constraint on the target dimension: the Fourier promise
    needs d >= P, the sign-matrix promise needs even d (or the trivial P=1)."""
    if d < 1 or p < 1:
        raise ValueError("dimensions must be positive")
    if problem == "fourier":
        return d >= p
    if problem == "hadamard":
        return p == 1 or d % 2 == 0
    raise ValueError(f"unknown problem kind {problem!r}")


def sample_shots(result: RunResult, shots: int, seed: int) -> np.ndarray:
    """Multinomial counts per outcome; deterministic for a fixed seed."""
    if shots < 1:
        raise ValueError("shots must be at least 1")
    rng = np.random.default_rng(seed)
    p = result.outcome_distribution
    return rng.multinomial(shots, p / p.sum())
