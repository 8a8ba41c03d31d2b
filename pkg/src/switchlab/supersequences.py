"""Shortest common supersequences of gate-order permutations.

The minimal supersequence length is the query cost of simulating the
controlled-ordering gate with a fixed-order circuit, so this module fixes
the query-complexity numbers: a breadth-first search over progress vectors
(one per permutation, each counting matched symbols) finds a certified
shortest supersequence, and a census over all four-permutation sets that
contain the identity ordering histograms the minimal lengths.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from ._parallel import chunked, ordered_map
from .switch import PermutationSet

_LABELS = "ABCDEFGH"


def is_supersequence(sequence: str, perm: str):
    """Greedy-leftmost subsequence test; returns (ok, positions or None)."""
    pos = []
    start = 0
    for ch in perm:
        i = sequence.find(ch, start)
        if i < 0:
            return False, None
        pos.append(i)
        start = i + 1
    return True, tuple(pos)


@dataclass(frozen=True)
class SupersequenceResult:
    """A common supersequence with one greedy-leftmost embedding per
    permutation; ``length`` is certified minimal when produced by ``scs``."""

    sequence: str
    length: int
    embeddings: tuple[tuple[int, ...], ...]
    perms: PermutationSet = field(repr=False)

    def __post_init__(self):
        if self.length != len(self.sequence):
            raise ValueError("length field disagrees with the sequence")
        words = self.perms.to_strings()
        if len(self.embeddings) != len(words):
            raise ValueError("one embedding per permutation required")
        for word, emb in zip(words, self.embeddings):
            if list(emb) != sorted(emb) or len(set(emb)) != len(emb):
                raise ValueError("embedding positions must strictly increase")
            if "".join(self.sequence[i] for i in emb) != word:
                raise ValueError(f"embedding does not spell {word!r}")


def embed_sequence(sequence: str, perms: PermutationSet) -> SupersequenceResult:
    """Wrap an externally chosen supersequence with greedy embeddings."""
    sequence = sequence.upper()
    embs = []
    for word in perms.to_strings():
        ok, emb = is_supersequence(sequence, word)
        if not ok:
            raise ValueError(f"{sequence!r} is not a supersequence of {word!r}")
        embs.append(emb)
    return SupersequenceResult(sequence, len(sequence), tuple(embs), perms)


def scs(perms: PermutationSet) -> SupersequenceResult:
    """Shortest common supersequence of the orderings.

    BFS over progress vectors: appending symbol s advances every permutation
    whose next required symbol is s.  Expanding symbols in alphabetical order
    from a FIFO queue makes the first path reaching the goal the
    lexicographically smallest among all shortest ones.
    """
    n, p = perms.N, perms.P
    if n > 6 or p > 8:
        raise ValueError("limits exceeded: supports N <= 6 and P <= 8")
    sigma = perms.sigma
    start = (0,) * p
    goal = (n,) * p
    parent: dict[tuple, tuple | None] = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if state == goal:
            break
        for s in range(n):
            new = tuple(
                pk + 1 if pk < n and sigma[k][pk] == s else pk
                for k, pk in enumerate(state)
            )
            if new != state and new not in parent:
                parent[new] = (state, s)
                queue.append(new)
    symbols = []
    cur = goal
    while parent[cur] is not None:
        cur, s = parent[cur]
        symbols.append(_LABELS[s])
    sequence = "".join(reversed(symbols))
    return embed_sequence(sequence, perms)


@dataclass(frozen=True)
class QuartetCensus:
    """Histogram of minimal supersequence lengths over permutation quartets."""

    histogram: dict[int, int]
    total: int
    collected: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        if self.total != sum(self.histogram.values()):
            raise ValueError("total disagrees with the histogram")


def _scs_length(perm_rows: tuple[tuple[int, ...], ...], n: int) -> int:
    """Length-only BFS, used by the census (no path reconstruction)."""
    start = (0,) * len(perm_rows)
    goal_val = n * len(perm_rows)
    frontier = {start}
    seen = {start}
    depth = 0
    while True:
        if any(sum(st) == goal_val for st in frontier):
            return depth
        depth += 1
        nxt = set()
        for st in frontier:
            for s in range(n):
                new = tuple(
                    pk + 1 if pk < n and perm_rows[k][pk] == s else pk
                    for k, pk in enumerate(st)
                )
                if new != st and new not in seen:
                    seen.add(new)
                    nxt.add(new)
        frontier = nxt


def _census_chunk(args):
    quartets, n, collect = args
    hist: dict[int, int] = {}
    collected = []
    for quartet in quartets:
        length = _scs_length(quartet, n)
        hist[length] = hist.get(length, 0) + 1
        if collect is not None and length == collect:
            collected.append(tuple("".join(_LABELS[j] for j in row) for row in quartet))
    return hist, collected


def quartet_census(n_labels: int = 4, threads: int = 1,
                   collect: int | None = None) -> QuartetCensus:
    """Minimal-length histogram over all quartets of distinct orderings of
    ``n_labels`` labels that contain the identity ordering (fixing the
    identity quotients out relabeling).  ``collect`` optionally gathers the
    quartets of one specific length."""
    ident = tuple(range(n_labels))
    others = [p for p in itertools.permutations(range(n_labels)) if p != ident]
    quartets = [(ident,) + trio for trio in itertools.combinations(others, 3)]
    chunks = chunked(quartets, 128)
    results = ordered_map(_census_chunk, [(c, n_labels, collect) for c in chunks], threads)
    hist: dict[int, int] = {}
    collected: list[tuple[str, ...]] = []
    for h, coll in results:
        for k, v in h.items():
            hist[k] = hist.get(k, 0) + v
        collected.extend(coll)
    return QuartetCensus(dict(sorted(hist.items())), len(quartets), tuple(collected))
