"""Communicating classes, irreducible and sigma-connected components, strong core."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import networkx as nx

from .errors import EmptyComponent, NotEssential, NotIrreducible, NotWeaklyConnected
from .sft import Sft, periodic_count, prune


def _digraph(x: Sft) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(x.n))
    g.add_edges_from(x.edges())
    return g


@dataclass(frozen=True)
class Decomposition:
    """Communicating classes in block-triangular order.

    An edge of the shift from ``classes[j]`` into ``classes[i]`` with i != j
    only occurs for j > i; ``condensation_edges`` lists those (j, i) pairs.
    """

    classes: tuple
    condensation_edges: tuple
    has_edge: tuple

    def class_of(self, state: int) -> int:
        for k, c in enumerate(self.classes):
            if state in c:
                return k
        raise KeyError(state)


def communicating_classes(x: Sft) -> Decomposition:
    g = _digraph(x)
    sccs = [tuple(sorted(c)) for c in nx.strongly_connected_components(g)]
    owner = {}
    for k, c in enumerate(sccs):
        for v in c:
            owner[v] = k
    dag = nx.DiGraph()
    dag.add_nodes_from(range(len(sccs)))
    for u, v in x.edges():
        if owner[u] != owner[v]:
            dag.add_edge(owner[u], owner[v])
    topo = list(nx.lexicographical_topological_sort(dag, key=lambda k: sccs[k][0]))
    order = topo[::-1]  # sinks first
    pos = {k: i for i, k in enumerate(order)}
    classes = tuple(sccs[k] for k in order)
    cond = tuple(sorted((pos[a], pos[b]) for a, b in dag.edges()))
    t = x.transition
    has_edge = tuple(any(t[u][v] for u in c for v in c) for c in classes)
    return Decomposition(classes, cond, has_edge)


def irreducible_components(x: Sft) -> list:
    d = communicating_classes(x)
    return [x.induced(c, essential=True) for c, e in zip(d.classes, d.has_edge) if e]


def is_irreducible(x: Sft) -> bool:
    if x.is_empty:
        return False
    d = communicating_classes(x)
    return len(d.classes) == 1 and d.has_edge[0]


def nonwandering(x: Sft) -> Sft:
    """Disjoint union of the irreducible components (cross-class edges dropped)."""
    d = communicating_classes(x)
    keep = sorted(v for c, e in zip(d.classes, d.has_edge) if e for v in c)
    owner = {v: d.class_of(v) for v in keep}
    rows = tuple(
        tuple(x.transition[u][v] if owner[u] == owner[v] else 0 for v in keep) for u in keep)
    return Sft(tuple(x.states[v] for v in keep), rows, True)


@dataclass(frozen=True)
class FiniteOrbit:
    length: int


@dataclass(frozen=True)
class InfiniteShift:
    pass


def classify_irreducible(x: Sft):
    """A single periodic orbit, or an infinite shift with (dense) periodic points."""
    if not is_irreducible(x):
        raise NotIrreducible("shift is not irreducible")
    if all(x.out_degree(i) == 1 for i in range(x.n)):
        return FiniteOrbit(x.n)
    assert any(periodic_count(x, n) >= 1 for n in range(1, x.n + 1))
    return InfiniteShift()


def sigma_component_indices(x: Sft):
    """Prune x and split it into weakly connected pieces.

    Returns the pruned shift and, for each piece, its sorted state indices in the
    pruned shift; pieces are ordered by least index.
    """
    ess = prune(x)
    comps = sorted(tuple(sorted(c)) for c in nx.weakly_connected_components(_digraph(ess)))
    return ess, comps


def sigma_components(x: Sft) -> list:
    ess, comps = sigma_component_indices(x)
    return [ess.induced(c, essential=True) for c in comps]


def cyclic_period(c: Sft):
    """Largest d admitting labels l with l(v) = l(u) + 1 mod d on every edge u -> v.

    Returns ``(d, labels)`` with labels aligned to ``c.states`` and state 0
    labelled 0.  Potentials along a BFS tree are exact integers; every other
    edge contributes its defect to a gcd.
    """
    if c.is_empty:
        raise EmptyComponent("component has no states")
    if not c.is_essential:
        raise NotEssential("component has states without successors")
    preds = [[] for _ in range(c.n)]
    for u, v in c.edges():
        preds[v].append(u)
    pot = {0: 0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in c.successors[u]:
            if v not in pot:
                pot[v] = pot[u] + 1
                queue.append(v)
        for v in preds[u]:
            if v not in pot:
                pot[v] = pot[u] - 1
                queue.append(v)
    if len(pot) != c.n:
        raise NotWeaklyConnected("component is not weakly connected")
    d = 0
    for u, v in c.edges():
        d = math.gcd(d, pot[u] + 1 - pot[v])
    assert d >= 1
    base = pot[0]
    labels = tuple((pot[i] - base) % d for i in range(c.n))
    return d, labels


@dataclass(frozen=True)
class QuotientComponent:
    states: tuple
    modulus: int
    labels: tuple


@dataclass(frozen=True)
class PeriodicQuotient:
    components: tuple

    @property
    def moduli(self) -> tuple:
        return tuple(c.modulus for c in self.components)

    def label_map(self) -> dict:
        """state label -> (component index, cyclic label)."""
        out = {}
        for k, comp in enumerate(self.components):
            for s, l in zip(comp.states, comp.labels):
                out[s] = (k, l)
        return out


def strong_core(x: Sft) -> PeriodicQuotient:
    """Maximal 1-block quotient of the (pruned) shift onto a union of cycles."""
    comps = []
    for c in sigma_components(x):
        d, labels = cyclic_period(c)
        comps.append(QuotientComponent(c.states, d, labels))
    return PeriodicQuotient(tuple(comps))
