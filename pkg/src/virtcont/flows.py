"""Combinatorial optimization kernels shared by the measure-theoretic layers.

Two solvers live here:

* a bipartite max-flow / min-cut routine (weighted vertex cover by LP duality
  on a totally unimodular system), and
* a balanced min-cost transportation solver (successive shortest paths with
  node potentials) that also handles the max-profit / slack-marginal variant
  through a dummy row and column.

Both run unchanged on Fractions (exact) and floats.  Augmentation order is
deterministic: ties break on the lowest node index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .model import Number, ValidationError, all_exact, is_exact

EPS = 1e-12


def _zero_like(values) -> Number:
    return Fraction(0) if all_exact(values) else 0.0


class InfeasibleError(ValueError):
    """The instance has no feasible solution."""


@dataclass(frozen=True)
class BipartiteCoverInstance:
    """Weighted vertex cover data: row/column costs and the edge set to cover."""

    row_costs: tuple
    col_costs: tuple
    edges: tuple  # sorted tuple of (i, j)

    def __init__(self, row_costs: Sequence[Number], col_costs: Sequence[Number], edges):
        row_costs, col_costs = tuple(row_costs), tuple(col_costs)
        edges = tuple(sorted(set((int(i), int(j)) for i, j in edges)))
        if any(c <= 0 for c in row_costs) or any(c <= 0 for c in col_costs):
            raise ValidationError("cover costs must be strictly positive")
        for i, j in edges:
            if not (0 <= i < len(row_costs) and 0 <= j < len(col_costs)):
                raise ValidationError(f"edge ({i},{j}) out of range")
        object.__setattr__(self, "row_costs", row_costs)
        object.__setattr__(self, "col_costs", col_costs)
        object.__setattr__(self, "edges", edges)


@dataclass
class CoverResult:
    value: Number
    rows: list            # picked row indices
    cols: list            # picked column indices
    flow: list            # certificate flow per edge, aligned with inst.edges
    flow_value: Number


def min_weighted_vertex_cover(inst: BipartiteCoverInstance) -> CoverResult:
    """Minimum-weight cover of all edges, with the max-flow optimality certificate.

    Network: source -> row i (capacity row cost), col j -> sink (capacity col
    cost), row->col arcs of effectively infinite capacity on the edges.  By
    max-flow/min-cut the optimal cover weight equals the max flow, and the cut
    is read off residual reachability (source-side rows stay unpicked).
    """
    nr, nc = len(inst.row_costs), len(inst.col_costs)
    zero = _zero_like(inst.row_costs + inst.col_costs)
    if not inst.edges:
        return CoverResult(zero, [], [], [], zero)

    big = sum(inst.row_costs) + sum(inst.col_costs)  # exceeds any cut

    # node ids: 0 = source, 1..nr rows, nr+1..nr+nc cols, nr+nc+1 = sink
    src, snk = 0, nr + nc + 1
    n = nr + nc + 2
    # adjacency as arc lists; arcs stored as [to, cap, flow, rev_index]
    graph: list[list[list]] = [[] for _ in range(n)]

    def add_arc(u, v, cap):
        graph[u].append([v, cap, zero, len(graph[v])])
        graph[v].append([u, zero, zero, len(graph[u]) - 1])

    for i in range(nr):
        add_arc(src, 1 + i, inst.row_costs[i])
    for j in range(nc):
        add_arc(1 + nr + j, snk, inst.col_costs[j])
    edge_arc_pos = {}
    for (i, j) in inst.edges:
        edge_arc_pos[(i, j)] = (1 + i, len(graph[1 + i]))
        add_arc(1 + i, 1 + nr + j, big)

    total = zero
    tol = 0 if is_exact(zero) else EPS
    while True:
        # BFS (lowest index first) for a shortest augmenting path
        parent: list[Optional[tuple]] = [None] * n
        parent[src] = (src, -1)
        queue = [src]
        qi = 0
        while qi < len(queue) and parent[snk] is None:
            u = queue[qi]
            qi += 1
            for ai, arc in enumerate(graph[u]):
                v, cap, flow, _ = arc
                if parent[v] is None and cap - flow > tol:
                    parent[v] = (u, ai)
                    queue.append(v)
        if parent[snk] is None:
            break
        # bottleneck
        path = []
        v = snk
        while v != src:
            u, ai = parent[v]
            path.append((u, ai))
            v = u
        bottleneck = min(graph[u][ai][1] - graph[u][ai][2] for u, ai in path)
        for u, ai in path:
            arc = graph[u][ai]
            arc[2] += bottleneck
            graph[arc[0]][arc[3]][2] -= bottleneck
        total += bottleneck

    # residual reachability from the source
    seen = [False] * n
    seen[src] = True
    stack = [src]
    while stack:
        u = stack.pop()
        for v, cap, flow, _ in graph[u]:
            if not seen[v] and cap - flow > tol:
                seen[v] = True
                stack.append(v)
    rows = [i for i in range(nr) if not seen[1 + i]]
    cols = [j for j in range(nc) if seen[1 + nr + j]]
    flow_per_edge = []
    for (i, j) in inst.edges:
        u, ai = edge_arc_pos[(i, j)]
        flow_per_edge.append(graph[u][ai][2])
    value = sum((inst.row_costs[i] for i in rows), zero) + \
        sum((inst.col_costs[j] for j in cols), zero)
    return CoverResult(value, rows, cols, flow_per_edge, total)


@dataclass(frozen=True)
class TransportationInstance:
    """Supplies, demands, and a profit or cost matrix.

    mode "min-cost": marginals must hold with equality (totals must match).
    mode "max-profit": marginals are upper bounds; shipping is optional.
    """

    supplies: tuple
    demands: tuple
    matrix: tuple
    mode: str = "min-cost"

    def __init__(self, supplies, demands, matrix, mode="min-cost"):
        supplies, demands = tuple(supplies), tuple(demands)
        matrix = tuple(tuple(row) for row in matrix)
        if mode not in ("min-cost", "max-profit"):
            raise ValidationError(f"unknown mode {mode!r}")
        if len(matrix) != len(supplies) or any(len(r) != len(demands) for r in matrix):
            raise ValidationError("matrix dimensions do not match supplies/demands")
        if any(s < 0 for s in supplies) or any(d < 0 for d in demands):
            raise ValidationError("negative supply or demand")
        object.__setattr__(self, "supplies", supplies)
        object.__setattr__(self, "demands", demands)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "mode", mode)


@dataclass
class TransportResultRaw:
    value: Number
    plan: list            # nr x nc matrix
    u: list               # dual per source: u_i + v_j <= cost_ij, tight on support
    v: list               # dual per sink


def _ssp_balanced(supplies, demands, cost, tol):
    """Successive shortest paths on the balanced transportation network.

    Returns (total cost, plan, potentials pi) with reduced-cost optimality:
    cost[i][j] + pi[row i] - pi[col j] >= 0 on all arcs, equality where the
    plan is positive.
    """
    nr, nc = len(supplies), len(demands)
    zero = _zero_like(list(supplies) + list(demands))
    src, snk = 0, nr + nc + 1
    n = nr + nc + 2

    plan = [[zero] * nc for _ in range(nr)]
    remaining_supply = list(supplies)
    remaining_demand = list(demands)
    pi = [zero] * n  # accumulated shortest distances from the source

    def reduced(c, u, v):
        return c + pi[u] - pi[v]

    total_cost = zero
    to_ship = sum(supplies, zero)
    INF = None
    while to_ship > tol:
        # Dijkstra on reduced costs (exact comparisons work for Fractions).
        # Initial potentials are zero, so the very first pass must tolerate
        # negative reduced costs: use Bellman-Ford-style relaxation instead,
        # which is cheap at these sizes and always correct.
        dist = [INF] * n
        prev = [None] * n
        dist[src] = zero
        for _ in range(n):
            changed = False
            # source -> rows with remaining supply, cost 0
            for i in range(nr):
                if remaining_supply[i] > tol:
                    d = dist[src] + reduced(zero, src, 1 + i)
                    if dist[1 + i] is None or d < dist[1 + i]:
                        dist[1 + i] = d
                        prev[1 + i] = (src, ("s", i))
                        changed = True
            for i in range(nr):
                if dist[1 + i] is None:
                    continue
                for j in range(nc):
                    d = dist[1 + i] + reduced(cost[i][j], 1 + i, 1 + nr + j)
                    if dist[1 + nr + j] is None or d < dist[1 + nr + j]:
                        dist[1 + nr + j] = d
                        prev[1 + nr + j] = (1 + i, ("f", i, j))
                        changed = True
            for j in range(nc):
                if dist[1 + nr + j] is None:
                    continue
                # backward arcs col -> row where plan > 0
                for i in range(nr):
                    if plan[i][j] > tol:
                        d = dist[1 + nr + j] + reduced(-cost[i][j], 1 + nr + j, 1 + i)
                        if dist[1 + i] is None or d < dist[1 + i]:
                            dist[1 + i] = d
                            prev[1 + i] = (1 + nr + j, ("b", i, j))
                            changed = True
                if remaining_demand[j] > tol:
                    d = dist[1 + nr + j] + reduced(zero, 1 + nr + j, snk)
                    if dist[snk] is None or d < dist[snk]:
                        dist[snk] = d
                        prev[snk] = (1 + nr + j, ("t", j))
                        changed = True
            if not changed:
                break
        if dist[snk] is None:
            raise InfeasibleError("transportation network disconnected")

        # trace the path and find the bottleneck
        path = []
        node = snk
        while node != src:
            pnode, tag = prev[node]
            path.append(tag)
            node = pnode
        path.reverse()
        bottleneck = to_ship
        for tag in path:
            if tag[0] == "s":
                bottleneck = min(bottleneck, remaining_supply[tag[1]])
            elif tag[0] == "t":
                bottleneck = min(bottleneck, remaining_demand[tag[1]])
            elif tag[0] == "b":
                bottleneck = min(bottleneck, plan[tag[1]][tag[2]])
        for tag in path:
            if tag[0] == "s":
                remaining_supply[tag[1]] -= bottleneck
            elif tag[0] == "t":
                remaining_demand[tag[1]] -= bottleneck
            elif tag[0] == "f":
                plan[tag[1]][tag[2]] += bottleneck
                total_cost += cost[tag[1]][tag[2]] * bottleneck
            elif tag[0] == "b":
                plan[tag[1]][tag[2]] -= bottleneck
                total_cost -= cost[tag[1]][tag[2]] * bottleneck
        to_ship -= bottleneck

        # fold distances into potentials (unreached nodes get the max distance)
        finite = [d for d in dist if d is not None]
        dmax = max(finite)
        for k in range(n):
            pi[k] += dist[k] if dist[k] is not None else dmax

    return total_cost, plan, pi


def solve_transportation(inst: TransportationInstance, tol_zero: float = EPS) -> TransportResultRaw:
    """Solve either transportation mode with dual certificates.

    min-cost: returns cost, a plan meeting the marginals exactly, and duals
    (u, v) with u_i + v_j <= cost_ij, tight on the support, and
    sum(s*u) + sum(d*v) = cost.

    max-profit: marginals are <=; returns profit, plan, and nonnegative duals
    (a, b) with a_i + b_j >= profit_ij, tight on the support, and
    sum(s*a) + sum(d*b) = profit.
    """
    exact = all_exact(inst.supplies + inst.demands) and all(
        all_exact(row) for row in inst.matrix)
    tol = 0 if exact else tol_zero
    zero = Fraction(0) if exact else 0.0

    if inst.mode == "min-cost":
        if not (abs(sum(inst.supplies) - sum(inst.demands)) <= tol):
            raise InfeasibleError("marginal totals differ")
        cost, plan, pi = _ssp_balanced(inst.supplies, inst.demands, inst.matrix, tol)
        nr, nc = len(inst.supplies), len(inst.demands)
        u = [-pi[1 + i] for i in range(nr)]
        v = [pi[1 + nr + j] for j in range(nc)]
        return TransportResultRaw(cost, plan, u, v)

    # max-profit: reduce to balanced min-cost with a dummy row and column.
    nr, nc = len(inst.supplies), len(inst.demands)
    supplies = list(inst.supplies) + [sum(inst.demands, zero)]
    demands = list(inst.demands) + [sum(inst.supplies, zero)]
    cost = [[-inst.matrix[i][j] for j in range(nc)] + [zero] for i in range(nr)]
    cost.append([zero] * (nc + 1))
    total_cost, plan_ext, pi = _ssp_balanced(supplies, demands, cost, tol)
    plan = [row[:nc] for row in plan_ext[:nr]]
    u = [-pi[1 + i] for i in range(nr + 1)]
    v = [pi[1 + nr + 1 + j] for j in range(nc + 1)]
    u_dummy, v_dummy = u[nr], v[nc]
    a = [-(u[i] + v_dummy) for i in range(nr)]
    b = [-(v[j] + u_dummy) for j in range(nc)]
    # guard against float dust in the nonnegative duals
    if not exact:
        a = [max(x, 0.0) for x in a]
        b = [max(x, 0.0) for x in b]
    return TransportResultRaw(-total_cost, plan, a, b)
