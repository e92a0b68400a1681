"""Exact max-flow / min-cut on :class:`~homcmc.cut.CutComplex` networks.

Capacities are scaled to a common denominator and Dinic's algorithm runs on
Python integers, so every value is exact.  The two extremal minimum cuts come
from residual reachability: the cells SOURCE still reaches give the smallest
optimal region, the complement of the cells that still reach SINK gives the
largest.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .complex import Region
from .cut import CutComplex
from .exact import common_denominator


@dataclass(frozen=True)
class CutResult:
    value: Fraction
    min_region: Region
    max_region: Region

    @property
    def unique(self) -> bool:
        return self.min_region.cells == self.max_region.cells


class _Network:
    __slots__ = ("head", "cap", "adj", "level", "it")

    def __init__(self, n: int):
        self.head: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(n)]

    def add(self, u: int, v: int, c_uv: int, c_vu: int) -> None:
        self.adj[u].append(len(self.head))
        self.head.append(v)
        self.cap.append(c_uv)
        self.adj[v].append(len(self.head))
        self.head.append(u)
        self.cap.append(c_vu)

    def _bfs(self, s: int, t: int) -> bool:
        level = [-1] * len(self.adj)
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.adj[u]:
                v = self.head[e]
                if self.cap[e] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        self.level = level
        return level[t] >= 0

    def _dfs(self, s: int, t: int) -> int:
        # iterative blocking-flow search along the level graph
        head, cap, adj, level, it = self.head, self.cap, self.adj, self.level, self.it
        path: list[int] = []
        u = s
        total = 0
        while True:
            if u == t:
                push = min(cap[e] for e in path)
                for e in path:
                    cap[e] -= push
                    cap[e ^ 1] += push
                total += push
                path.clear()
                u = s
                continue
            advanced = False
            while it[u] < len(adj[u]):
                e = adj[u][it[u]]
                v = head[e]
                if cap[e] > 0 and level[v] == level[u] + 1:
                    path.append(e)
                    u = v
                    advanced = True
                    break
                it[u] += 1
            if advanced:
                continue
            if u == s:
                return total
            level[u] = -1
            e = path.pop()
            u = head[e ^ 1]
            it[u] += 1

    def maxflow(self, s: int, t: int) -> int:
        flow = 0
        while self._bfs(s, t):
            self.it = [0] * len(self.adj)
            flow += self._dfs(s, t)
        return flow

    def reach(self, start: int, forward: bool) -> set[int]:
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for e in self.adj[u]:
                v = self.head[e]
                # forward: residual u->v; backward: residual v->u (edge e^1)
                c = self.cap[e] if forward else self.cap[e ^ 1]
                if c > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen


def mincut(
    C: CutComplex,
    source_bonus: Mapping[str, Fraction] | None = None,
    sink_bonus: Mapping[str, Fraction] | None = None,
) -> CutResult:
    """Minimum terminal cut, optionally with extra SOURCE/SINK capacity per cell.

    The value includes the bonus arcs that are cut, plus the fixed offset.
    """
    source_bonus = source_bonus or {}
    sink_bonus = sink_bonus or {}
    for bonus in (source_bonus, sink_bonus):
        for c, b in bonus.items():
            if b < 0:
                raise ValueError(f"negative bonus capacity at {c}")
    cells = C.cell_ids
    idx = {c: i + 2 for i, c in enumerate(cells)}
    S, T = 0, 1
    caps = [a.capacity for a in C.arcs + C.source_arcs + C.sink_arcs]
    caps += list(source_bonus.values()) + list(sink_bonus.values())
    denom = common_denominator(caps)

    def sc(q) -> int:
        return int(Fraction(q) * denom)

    net = _Network(len(cells) + 2)
    src_cap: dict[int, int] = {}
    snk_cap: dict[int, int] = {}
    for a in C.source_arcs:
        src_cap[idx[a.cell]] = src_cap.get(idx[a.cell], 0) + sc(a.capacity)
    for c, b in source_bonus.items():
        src_cap[idx[c]] = src_cap.get(idx[c], 0) + sc(b)
    for a in C.sink_arcs:
        snk_cap[idx[a.cell]] = snk_cap.get(idx[a.cell], 0) + sc(a.capacity)
    for c, b in sink_bonus.items():
        snk_cap[idx[c]] = snk_cap.get(idx[c], 0) + sc(b)
    for i in sorted(src_cap):
        if src_cap[i]:
            net.add(S, i, src_cap[i], 0)
    for i in sorted(snk_cap):
        if snk_cap[i]:
            net.add(i, T, snk_cap[i], 0)
    for a in C.arcs:
        w = sc(a.capacity)
        net.add(idx[a.u], idx[a.v], w, w)

    flow = net.maxflow(S, T)
    from_source = net.reach(S, forward=True)
    to_sink = net.reach(T, forward=False)
    small = [c for c in cells if idx[c] in from_source]
    large = [c for c in cells if idx[c] not in to_sink]
    return CutResult(
        value=Fraction(flow, denom) + C.offset,
        min_region=C.region(small),
        max_region=C.region(large),
    )

