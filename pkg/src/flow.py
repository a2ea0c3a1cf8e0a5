#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Поток минимальной стоимости с нижними границами на дугах

Алгоритм последовательных кратчайших путей:
- нижние границы снимаются стандартным преобразованием (дисбалансы узлов,
  суперисток и суперсток);
- начальные потенциалы считаются одним проходом кратчайших путей по DAG
  в топологическом порядке, далее Дейкстра по приведенным стоимостям;
- среди оптимальных потоков выбирается лексикографически наименьший
  по порядку дуг, поэтому результат воспроизводим.

Поддерживаются только сети той формы, которую строит модуль separation
(ациклические, целочисленные пропускные способности).
"""

import heapq
import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from src.errors import FlowInfeasibleError

logger = logging.getLogger(__name__)

ARC_SLOT = "slot"      # A1: (s, v_j)
ARC_ASSIGN = "assign"  # A2: (v_j, w_k)
ARC_BAND = "band"      # A3: (w_k, t)

INF = math.inf


@dataclass(frozen=True)
class Arc:
    """Дуга сети с тройкой (lower, upper, cost)"""
    tail: int
    head: int
    lower: int
    upper: int
    cost: float
    kind: str = ""
    slot: Optional[int] = None
    band: Optional[int] = None


@dataclass(frozen=True)
class FlowNetwork:
    """
    Сеть (G, c)

    Attributes:
        num_nodes: Число узлов
        source: Исток s
        sink: Сток t
        arcs: Дуги в фиксированном порядке (A1 по j, A2 по (j, k), A3 по k)
        required_flow: Требуемая величина потока
        node_labels: Подписи узлов для диагностики
    """
    num_nodes: int
    source: int
    sink: int
    arcs: Tuple[Arc, ...]
    required_flow: int
    node_labels: Tuple[str, ...] = ()

    def label(self, node: int) -> str:
        if node < len(self.node_labels):
            return self.node_labels[node]
        return str(node)


@dataclass(frozen=True)
class FlowSolution:
    """Целочисленный поток и его стоимость"""
    flow: Tuple[int, ...]
    cost: float


class _Residual:
    """Остаточная сеть: ребро 2e прямое, 2e+1 обратное"""

    def __init__(self, num_nodes: int):
        self.num_nodes = num_nodes
        self.head: List[int] = []
        self.cap: List[int] = []
        self.cost: List[float] = []
        self.adj: List[List[int]] = [[] for _ in range(num_nodes)]

    def add_edge(self, u: int, v: int, cap: int, cost: float) -> int:
        idx = len(self.head)
        self.head.extend((v, u))
        self.cap.extend((cap, 0))
        self.cost.extend((cost, -cost))
        self.adj[u].append(idx)
        self.adj[v].append(idx + 1)
        return idx

    def tail(self, edge: int) -> int:
        return self.head[edge ^ 1]


def min_cost_flow(
    net: FlowNetwork,
    lexicographic: bool = True,
    cost_tolerance: float = 1e-9,
) -> FlowSolution:
    """
    Целочисленный поток величины required_flow минимальной стоимости

    Среди потоков минимальной стоимости возвращается лексикографически
    наименьший по порядку дуг: поток на каждой дуге по очереди понижается,
    пока стоимость остается оптимальной, затем дуга фиксируется.

    Args:
        net: Сеть
        lexicographic: False - вернуть первый найденный оптимальный поток
            без уточнения (детерминирован, но не обязательно наименьший)
        cost_tolerance: Относительный допуск сравнения стоимостей
            при лексикографическом уточнении

    Returns:
        FlowSolution

    Raises:
        FlowInfeasibleError: Границы не допускают поток требуемой величины
    """
    lowers = [arc.lower for arc in net.arcs]
    uppers = [arc.upper for arc in net.arcs]
    solution = _solve(net, lowers, uppers)
    if not lexicographic:
        return solution

    best_cost = solution.cost
    tolerance = cost_tolerance * (1.0 + abs(best_cost))
    for idx in range(len(net.arcs)):
        while solution.flow[idx] > lowers[idx]:
            trial_upper = list(uppers)
            trial_upper[idx] = solution.flow[idx] - 1
            try:
                trial = _solve(net, lowers, trial_upper)
            except FlowInfeasibleError:
                break
            if trial.cost > best_cost + tolerance:
                break
            uppers = trial_upper
            solution = trial
        lowers[idx] = uppers[idx] = solution.flow[idx]
    return solution


def _solve(net: FlowNetwork, lowers: Sequence[int], uppers: Sequence[int]) -> FlowSolution:
    n = net.num_nodes
    super_source, super_sink = n, n + 1
    residual = _Residual(n + 2)

    excess = [0] * n
    forward_edges: List[int] = []
    for idx, arc in enumerate(net.arcs):
        lo, up = lowers[idx], uppers[idx]
        if up < lo:
            raise FlowInfeasibleError(
                f"Дуга {net.label(arc.tail)}->{net.label(arc.head)}: верхняя граница {up} < нижней {lo}",
                cut_nodes=(net.label(arc.tail), net.label(arc.head)),
                deficit=lo - up,
            )
        forward_edges.append(residual.add_edge(arc.tail, arc.head, up - lo, arc.cost))
        excess[arc.head] += lo
        excess[arc.tail] -= lo
    excess[net.source] += net.required_flow
    excess[net.sink] -= net.required_flow

    total = 0
    for v in range(n):
        if excess[v] > 0:
            residual.add_edge(super_source, v, excess[v], 0.0)
            total += excess[v]
        elif excess[v] < 0:
            residual.add_edge(v, super_sink, -excess[v], 0.0)

    potential = _initial_potentials(residual, super_source)
    sent = 0
    while sent < total:
        dist, parent = _dijkstra(residual, super_source, potential)
        if dist[super_sink] == INF:
            reachable = [v for v in range(n) if dist[v] < INF]
            raise FlowInfeasibleError(
                "Поток требуемой величины не существует",
                cut_nodes=tuple(net.label(v) for v in reachable),
                deficit=total - sent,
            )
        for v in range(n + 2):
            if dist[v] < INF:
                potential[v] += dist[v]

        bottleneck = total - sent
        v = super_sink
        while v != super_source:
            edge = parent[v]
            bottleneck = min(bottleneck, residual.cap[edge])
            v = residual.tail(edge)
        v = super_sink
        while v != super_source:
            edge = parent[v]
            residual.cap[edge] -= bottleneck
            residual.cap[edge ^ 1] += bottleneck
            v = residual.tail(edge)
        sent += bottleneck

    flow = []
    for idx, edge in enumerate(forward_edges):
        flow.append(lowers[idx] + residual.cap[edge ^ 1])
    cost = math.fsum(arc.cost * f for arc, f in zip(net.arcs, flow))
    logger.debug(f"Поток: величина {net.required_flow}, стоимость {cost:.6g}")
    return FlowSolution(tuple(flow), cost)


def _initial_potentials(residual: _Residual, start: int) -> List[float]:
    """Кратчайшие расстояния от start по DAG (ребра с положительной емкостью)"""
    size = residual.num_nodes
    indegree = [0] * size
    for u in range(size):
        for edge in residual.adj[u]:
            if residual.cap[edge] > 0:
                indegree[residual.head[edge]] += 1

    order: List[int] = []
    queue = deque(v for v in range(size) if indegree[v] == 0)
    while queue:
        u = queue.popleft()
        order.append(u)
        for edge in residual.adj[u]:
            if residual.cap[edge] > 0:
                v = residual.head[edge]
                indegree[v] -= 1
                if indegree[v] == 0:
                    queue.append(v)

    dist = [INF] * size
    dist[start] = 0.0
    if len(order) < size:
        # не DAG: Беллман-Форд
        for _ in range(size - 1):
            changed = False
            for u in range(size):
                if dist[u] == INF:
                    continue
                for edge in residual.adj[u]:
                    if residual.cap[edge] > 0 and dist[u] + residual.cost[edge] < dist[residual.head[edge]]:
                        dist[residual.head[edge]] = dist[u] + residual.cost[edge]
                        changed = True
            if not changed:
                break
    else:
        for u in order:
            if dist[u] == INF:
                continue
            for edge in residual.adj[u]:
                if residual.cap[edge] > 0:
                    v = residual.head[edge]
                    candidate = dist[u] + residual.cost[edge]
                    if candidate < dist[v]:
                        dist[v] = candidate
    return [d if d < INF else 0.0 for d in dist]


def _dijkstra(residual: _Residual, start: int, potential: List[float]) -> Tuple[List[float], List[int]]:
    size = residual.num_nodes
    dist = [INF] * size
    parent = [-1] * size
    done = [False] * size
    dist[start] = 0.0
    heap: List[Tuple[float, int]] = [(0.0, start)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for edge in residual.adj[u]:
            if residual.cap[edge] <= 0:
                continue
            v = residual.head[edge]
            if done[v]:
                continue
            reduced = residual.cost[edge] + potential[u] - potential[v]
            if reduced < 0.0:
                reduced = 0.0  # погрешность округления
            candidate = d + reduced
            if candidate < dist[v]:
                dist[v] = candidate
                parent[v] = edge
                heapq.heappush(heap, (candidate, v))
    return dist, parent


def decode_assignment(net: FlowNetwork, solution: FlowSolution) -> Dict[int, int]:
    """Назначение slot -> band по дугам A2 с единичным потоком"""
    assignment: Dict[int, int] = {}
    for idx, arc in enumerate(net.arcs):
        if arc.kind == ARC_ASSIGN and solution.flow[idx] > 0 and arc.slot is not None:
            assignment[arc.slot] = arc.band
    return assignment
