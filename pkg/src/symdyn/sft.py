"""Subshifts of finite type in 0/1 vertex-shift form.

A shift is stored as its state labels and transition matrix; the points are the
one-sided infinite paths.  Multigraphs are only an input format and are recoded
on their edges by :func:`edge_to_vertex`.  Words are tuples of state indices.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import _matrix
from .errors import (
    CapExceeded,
    DimensionMismatch,
    DuplicateState,
    EmptyShift,
    EntryOutOfRange,
    InadmissibleWord,
    InconsistentTable,
    LengthZero,
    NotEssential,
    NotSquare,
    WordTooShort,
)

DEFAULT_CAP = 10**6

Word = tuple


@dataclass(frozen=True)
class Sft:
    states: tuple
    transition: tuple
    essential: bool = False

    @property
    def n(self) -> int:
        return len(self.states)

    def __len__(self):
        return len(self.states)

    @functools.cached_property
    def matrix(self) -> np.ndarray:
        return _matrix.as_array(self.transition, self.n)

    @functools.cached_property
    def successors(self) -> tuple:
        return tuple(tuple(j for j, v in enumerate(row) if v) for row in self.transition)

    def edges(self):
        return [(i, j) for i in range(self.n) for j in self.successors[i]]

    def out_degree(self, i: int) -> int:
        return len(self.successors[i])

    @property
    def is_empty(self) -> bool:
        return self.n == 0

    @property
    def is_essential(self) -> bool:
        """Every state has a successor (structural check, independent of the flag)."""
        return all(self.successors)

    def index(self, label: str) -> int:
        return self.states.index(label)

    def induced(self, indices: Sequence[int], essential: bool | None = None) -> "Sft":
        idx = list(indices)
        states = tuple(self.states[i] for i in idx)
        rows = tuple(tuple(self.transition[i][j] for j in idx) for i in idx)
        return Sft(states, rows, self.essential if essential is None else essential)

    def label_word(self, w) -> str:
        return " ".join(self.states[i] for i in w)

    def __str__(self):
        rows = "\n".join(" ".join(map(str, r)) for r in self.transition)
        return f"Sft(states={' '.join(self.states)})\n{rows}"


@dataclass(frozen=True)
class MultiGraph:
    """Directed multigraph; edges are (source index, target index, label or None)."""

    states: tuple
    edges: tuple = ()

    def __post_init__(self):
        if len(set(self.states)) != len(self.states):
            raise DuplicateState("state labels must be distinct")
        n = len(self.states)
        for e in self.edges:
            if not (0 <= e[0] < n and 0 <= e[1] < n):
                raise DimensionMismatch(f"edge {e} refers to a missing state")


def from_matrix(states: Sequence[str], matrix) -> Sft:
    rows = [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSquare(f"transition matrix must be square, got {n} rows of lengths "
                        f"{sorted({len(r) for r in rows})}")
    if len(states) != n:
        raise DimensionMismatch(f"{len(states)} state labels for a {n}x{n} matrix")
    states = tuple(str(s) for s in states)
    if len(set(states)) != n:
        raise DuplicateState("state labels must be distinct")
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            if isinstance(v, bool) or v not in (0, 1):
                raise EntryOutOfRange(f"entry ({i},{j}) = {v!r} is not 0 or 1")
    return Sft(states, tuple(tuple(int(v) for v in r) for r in rows), False)


def from_edges(states: Sequence[str], edges) -> Sft:
    """Vertex shift with the given simple edge set (pairs of indices)."""
    n = len(states)
    rows = [[0] * n for _ in range(n)]
    for i, j in edges:
        rows[i][j] = 1
    return from_matrix(states, rows)


def full_shift(k: int) -> Sft:
    return from_matrix([str(i) for i in range(k)], [[1] * k for _ in range(k)])


def cycle(n: int) -> Sft:
    return from_edges([f"c{i}" for i in range(n)], [(i, (i + 1) % n) for i in range(n)])


def golden_mean() -> Sft:
    return from_matrix(["a", "b"], [[1, 1], [1, 0]])


def empty_sft() -> Sft:
    return Sft((), (), True)


def edge_to_vertex(g: MultiGraph) -> Sft:
    """Edge shift of a multigraph, presented as a vertex shift on its edges."""
    labels = []
    seen: dict = {}
    for src, dst, label in g.edges:
        k = seen.get((src, dst), 0)
        seen[(src, dst)] = k + 1
        labels.append(label if label is not None else f"{g.states[src]}->{g.states[dst]}#{k}")
    m = len(g.edges)
    rows = [[1 if g.edges[a][1] == g.edges[b][0] else 0 for b in range(m)] for a in range(m)]
    return from_matrix(labels, rows)


def prune(x: Sft) -> Sft:
    """Drop states with no successor until none remain.

    The infinite paths are unchanged.  States without predecessors are kept, as
    they can still start a one-sided path.
    """
    alive = set(range(x.n))
    changed = True
    while changed:
        changed = False
        for i in sorted(alive):
            if not any(j in alive for j in x.successors[i]):
                alive.discard(i)
                changed = True
    return x.induced(sorted(alive), essential=True)


def _require_words(x: Sft) -> None:
    if x.is_empty:
        raise EmptyShift("the shift has no states")
    if not x.is_essential:
        raise NotEssential("prune the shift first: some states have no successor")


def path_count(x: Sft, l: int) -> int:
    """Number of paths with l vertices (no essentiality requirement)."""
    if l < 1:
        raise LengthZero("word length must be positive")
    if x.is_empty:
        return 0
    return _matrix.total(_matrix.matpow(x.matrix, l - 1))


def word_count(x: Sft, l: int) -> int:
    """|W(X, l)|, the sum of the entries of A^(l-1)."""
    _require_words(x)
    return path_count(x, l)


def _check_cap(count, cap):
    cap = DEFAULT_CAP if cap is None else cap
    if count > cap:
        raise CapExceeded(f"{count} items exceed the enumeration cap {cap}")


def _paths(x: Sft, l: int):
    stack = [(i,) for i in reversed(range(x.n))]
    while stack:
        w = stack.pop()
        if len(w) == l:
            yield w
            continue
        for j in reversed(x.successors[w[-1]]):
            stack.append(w + (j,))


def enumerate_words(x: Sft, l: int, cap: int | None = None) -> list:
    """Admissible words of length l in lexicographic index order."""
    _check_cap(path_count(x, l), cap)
    return list(_paths(x, l))


def is_word(x: Sft, w) -> bool:
    if len(w) == 0:
        return False
    if any(not (0 <= i < x.n) for i in w):
        return False
    t = x.transition
    return all(t[a][b] for a, b in zip(w, w[1:]))


def periodic_count(x: Sft, n: int) -> int:
    """Number of points fixed by the n-th power of the shift, i.e. tr(A^n)."""
    if n < 1:
        raise LengthZero("period must be positive")
    if x.is_empty:
        return 0
    return _matrix.trace(_matrix.matpow(x.matrix, n))


def enumerate_periodic(x: Sft, n: int, cap: int | None = None) -> list:
    """Words w of length n that close up (w_{n-1} -> w_0), in lexicographic order."""
    _check_cap(periodic_count(x, n), cap)
    if x.is_empty:
        return []
    t = x.transition
    out = [w for w in _paths(x, n) if t[w[-1]][w[0]]]
    assert len(out) == periodic_count(x, n)
    return out


# ---------------------------------------------------------------------------
# block maps

@dataclass(frozen=True, eq=False)
class BlockMap:
    """Sliding block code with a window of ``window`` symbols.

    ``table`` maps admissible domain words of that length to codomain state indices.
    """

    domain: Sft
    codomain: Sft
    window: int
    table: Mapping = field(default_factory=dict)


@dataclass(frozen=True)
class BlockMapCheck:
    ok: bool
    missing: tuple = ()
    witness: tuple | None = None
    message: str = ""

    def raise_if_invalid(self):
        if not self.ok:
            raise InconsistentTable(self.message, self.witness)


def validate_block_map(m: BlockMap, cap: int | None = None) -> BlockMapCheck:
    """Check totality on W(domain, l) and consistency over W(domain, l+1)."""
    if m.window < 1:
        return BlockMapCheck(False, message="window must be positive")
    words = enumerate_words(m.domain, m.window, cap)
    missing = tuple(w for w in words if w not in m.table)
    if missing:
        return BlockMapCheck(False, missing, missing[0],
                             f"table undefined on {len(missing)} words, e.g. "
                             f"{m.domain.label_word(missing[0])}")
    for w in words:
        v = m.table[w]
        if not (isinstance(v, int) and 0 <= v < m.codomain.n):
            return BlockMapCheck(False, (), w, f"image {v!r} of {m.domain.label_word(w)} "
                                                "is not a codomain state")
    ct = m.codomain.transition
    for w in enumerate_words(m.domain, m.window + 1, cap):
        a, b = m.table[w[:-1]], m.table[w[1:]]
        if not ct[a][b]:
            return BlockMapCheck(
                False, (), w,
                f"word {m.domain.label_word(w)} maps to the forbidden pair "
                f"{m.codomain.states[a]} {m.codomain.states[b]}")
    return BlockMapCheck(True)


def _lookup(m: BlockMap, w):
    try:
        return m.table[tuple(w)]
    except KeyError:
        raise InconsistentTable(f"table undefined on {m.domain.label_word(w)}", tuple(w)) from None


def apply_block_map(m: BlockMap, w) -> Word:
    w = tuple(w)
    if len(w) < m.window:
        raise WordTooShort(f"word of length {len(w)} is shorter than the window {m.window}")
    if not is_word(m.domain, w):
        raise InadmissibleWord(f"{w} is not a word of the domain")
    l = m.window
    return tuple(_lookup(m, w[i:i + l]) for i in range(len(w) - l + 1))


def apply_block_map_periodic(m: BlockMap, w) -> Word:
    """Image of the periodic point w w w ..., returned as one period."""
    w = tuple(w)
    if not w:
        raise WordTooShort("empty period")
    if not is_word(m.domain, w + w[:1]):
        raise InadmissibleWord(f"{w} does not close up into a periodic point")
    l = m.window
    ext = w * (1 + (l - 1 + len(w) - 1) // len(w))
    return tuple(_lookup(m, ext[i:i + l]) for i in range(len(w)))


def _word_labels(x: Sft, words) -> list:
    labels = [".".join(x.states[i] for i in w) for w in words]
    if len(set(labels)) != len(labels):
        labels = [f"w{k}" for k in range(len(words))]
    return labels


def higher_block(x: Sft, l: int, cap: int | None = None):
    """The l-block presentation of x and the 1-block conjugacy back onto x."""
    _require_words(x)
    words = enumerate_words(x, l, cap)
    pos = {w: k for k, w in enumerate(words)}
    rows = [[0] * len(words) for _ in words]
    for u in words:
        for j in x.successors[u[-1]]:
            v = u[1:] + (j,)
            rows[pos[u]][pos[v]] = 1
    y = from_matrix(_word_labels(x, words), rows)
    y = Sft(y.states, y.transition, True)
    conj = BlockMap(y, x, 1, {(k,): w[0] for k, w in enumerate(words)})
    return y, conj
