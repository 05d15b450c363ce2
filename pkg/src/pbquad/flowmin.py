"""Minimum cut minimisation of submodular quadratic pseudo-Boolean functions.

Nodes are ``0`` (source), ``1..n`` (variables) and ``n + 1`` (sink).  A cut puts
variable ``i`` on the sink side iff ``x_i = 1``; for *every* cut, the capacity
crossing from the source side to the sink side plus ``constant_offset`` equals
``g`` at the induced assignment.  Capacities stay exact: they are scaled to
integers by their common denominator before running Dinic's algorithm.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .core import PseudoBooleanFunction
from .errors import NotSubmodularError
from .verify import MinResult, quadratic_submodularity

SOURCE = 0


@dataclass(frozen=True)
class FlowNetwork:
    n: int
    arcs: tuple[tuple[int, int, Fraction], ...]
    constant_offset: Fraction

    @property
    def sink(self) -> int:
        return self.n + 1

    def cut_value(self, x: Sequence[int]) -> Fraction:
        """Capacity of the cut induced by ``x`` (``x_i = 1``: node ``i`` on the sink side)."""
        side = [0] + [int(b) for b in x] + [1]
        return sum((c for u, v, c in self.arcs if side[u] == 0 and side[v] == 1), Fraction(0))


def build_network(g: PseudoBooleanFunction) -> FlowNetwork:
    if g.degree > 2:
        raise ValueError(f"expected a quadratic function, got degree {g.degree}")
    if not quadratic_submodularity(g):
        raise NotSubmodularError("positive quadratic coefficient; min-cut needs a submodular quadratic")
    n = g.n_vars
    offset = g[()]
    linear = {i: g[(i,)] for i in range(1, n + 1)}
    arcs: list[tuple[int, int, Fraction]] = []
    # -c x_i x_j = c ~x_i x_j - c x_j
    for key, c in g.items():
        if len(key) == 2:
            i, j = key
            arcs.append((i, j, -c))
            linear[j] += c
    for i in range(1, n + 1):
        a = linear[i]
        if a > 0:
            arcs.append((SOURCE, i, a))
        elif a < 0:
            arcs.append((i, n + 1, -a))
            offset += a
    return FlowNetwork(n, tuple(arcs), offset)


def _dinic(num_nodes: int, arcs: Sequence[tuple[int, int, int]], s: int, t: int):
    graph: list[list[list[int]]] = [[] for _ in range(num_nodes)]
    for u, v, c in arcs:
        graph[u].append([v, c, len(graph[v])])
        graph[v].append([u, 0, len(graph[u]) - 1])

    flow = 0
    while True:
        level = [-1] * num_nodes
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v, cap, _ in graph[u]:
                if cap > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        if level[t] < 0:
            return flow, graph
        it = [0] * num_nodes
        while True:
            path: list[tuple[int, int]] = []
            u = s
            pushed = 0
            while True:
                if u == t:
                    pushed = min(graph[v][e][1] for v, e in path)
                    for v, e in path:
                        edge = graph[v][e]
                        edge[1] -= pushed
                        graph[edge[0]][edge[2]][1] += pushed
                    break
                edges = graph[u]
                while it[u] < len(edges):
                    v, cap, _ = edges[it[u]]
                    if cap > 0 and level[v] == level[u] + 1:
                        break
                    it[u] += 1
                if it[u] < len(edges):
                    path.append((u, it[u]))
                    u = edges[it[u]][0]
                    continue
                if not path:
                    break
                level[u] = -1
                u, _ = path.pop()
                it[u] += 1
            if not pushed:
                break
            flow += pushed


def max_flow(network: FlowNetwork, order: Sequence[int] | None = None) -> tuple[Fraction, tuple[int, ...]]:
    """Max-flow value and the induced minimiser; ``order`` permutes arc insertion."""
    arcs = network.arcs if order is None else [network.arcs[k] for k in order]
    scale = 1
    for _, _, c in arcs:
        scale = lcm(scale, c.denominator)
    int_arcs = [(u, v, int(c * scale)) for u, v, c in arcs]
    flow, graph = _dinic(network.n + 2, int_arcs, SOURCE, network.sink)

    reach = [False] * (network.n + 2)
    reach[SOURCE] = True
    queue = deque([SOURCE])
    while queue:
        u = queue.popleft()
        for v, cap, _ in graph[u]:
            if cap > 0 and not reach[v]:
                reach[v] = True
                queue.append(v)
    x = tuple(0 if reach[i] else 1 for i in range(1, network.n + 1))
    return Fraction(flow, scale), x


def min_cut_minimize(g: PseudoBooleanFunction) -> MinResult:
    network = build_network(g)
    flow, x = max_flow(network)
    return MinResult(flow + network.constant_offset, x)
