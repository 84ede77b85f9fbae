"""Utilization matrices aggregated from acyclic trajectories.

Every matrix is a sum of per-trajectory contributions, so aggregation order
never matters and all cells stay finite.  For one trajectory and an ordered
node pair (i, j) with i strictly before j:

    F   counts the pair when j immediately follows i (the edge is traversed)
    D   counts every such pair (origin-destination at any distance)
    L   counts pairs separated by at least one intermediate node
    T   the L pairs where the graph does offer a direct edge (unused here)
    Tc  the L pairs where no direct edge exists at all

The five count matrices are built by direct counting; construction then
cross-checks them against their algebraic reconstructions and refuses to
return a bundle that violates one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CrossCheckFailure,
    MissingEdge,
    RepeatedNode,
    TooShort,
    TrajectoryError,
)
from .matrices import BinaryMatrix, CountMatrix, binarize, ew_add, hadamard
from .structure import Graph, StructureBundle

__all__ = [
    "Trajectory",
    "Dataset",
    "UtilizationBundle",
    "validate_trajectory",
    "flow_matrix",
    "od_matrix",
    "indirect_flow_matrix",
    "alternative_route_matrix",
    "substitute_route_matrix",
    "build_utilization",
    "is_fully_utilized",
]


@dataclass(frozen=True)
class Trajectory:
    """Ordered sequence of distinct node indices visited by one moving agent."""

    nodes: tuple[int, ...]

    def __post_init__(self):
        nodes = tuple(self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if len(nodes) < 2:
            raise TooShort(f"trajectory has {len(nodes)} node(s), need at least 2")
        seen = set()
        for v in nodes:
            if v in seen:
                raise RepeatedNode(f"node {v} visited twice")
            seen.add(v)


def validate_trajectory(t: Trajectory, g: Graph) -> None:
    """Check a trajectory against a graph; raises on the first violation."""
    for v in t.nodes:
        if not 0 <= v < g.n:
            raise TrajectoryError(f"node index {v} not in graph with {g.n} nodes")
    for i, j in zip(t.nodes, t.nodes[1:]):
        if (i, j) not in g.edges:
            raise MissingEdge(g.labels[i], g.labels[j])


@dataclass(frozen=True)
class Dataset:
    """A graph together with trajectories recorded on it; validated on build."""

    graph: Graph
    trajectories: tuple[Trajectory, ...]

    def __post_init__(self):
        trajectories = tuple(self.trajectories)
        object.__setattr__(self, "trajectories", trajectories)
        for t in trajectories:
            validate_trajectory(t, self.graph)


@dataclass(frozen=True)
class UtilizationBundle:
    """The five utilization matrices of one dataset plus their binarizations."""

    F: CountMatrix
    D: CountMatrix
    L: CountMatrix
    T: CountMatrix
    Tc: CountMatrix
    Fhat: BinaryMatrix
    Dhat: BinaryMatrix
    Lhat: BinaryMatrix
    That: BinaryMatrix
    Tchat: BinaryMatrix


def _grid(n: int) -> list[list[int]]:
    return [[0] * n for _ in range(n)]


def _freeze(grid: list[list[int]]) -> CountMatrix:
    return CountMatrix(tuple(tuple(row) for row in grid))


def flow_matrix(d: Dataset) -> CountMatrix:
    """f(i, j) = number of trajectories traversing the edge (i, j)."""
    f = _grid(d.graph.n)
    for t in d.trajectories:
        for i, j in zip(t.nodes, t.nodes[1:]):
            f[i][j] += 1
    return _freeze(f)


def od_matrix(d: Dataset) -> CountMatrix:
    """d(i, j) = number of trajectories visiting i strictly before j."""
    m = _grid(d.graph.n)
    for t in d.trajectories:
        nodes = t.nodes
        for p in range(len(nodes)):
            row = m[nodes[p]]
            for q in range(p + 1, len(nodes)):
                row[nodes[q]] += 1
    return _freeze(m)


def indirect_flow_matrix(d: Dataset) -> CountMatrix:
    """l(i, j) = trajectories connecting i to j with >= 1 node in between."""
    m = _grid(d.graph.n)
    for t in d.trajectories:
        nodes = t.nodes
        for p in range(len(nodes)):
            row = m[nodes[p]]
            for q in range(p + 2, len(nodes)):
                row[nodes[q]] += 1
    return _freeze(m)


def alternative_route_matrix(d: Dataset, s: StructureBundle) -> CountMatrix:
    """Indirect flows between pairs that do have a direct edge (left unused)."""
    m = _grid(d.graph.n)
    a = s.A.cells
    for t in d.trajectories:
        nodes = t.nodes
        for p in range(len(nodes)):
            i = nodes[p]
            for q in range(p + 2, len(nodes)):
                j = nodes[q]
                if a[i][j]:
                    m[i][j] += 1
    return _freeze(m)


def substitute_route_matrix(d: Dataset, s: StructureBundle) -> CountMatrix:
    """Indirect flows between pairs with no direct edge at all."""
    m = _grid(d.graph.n)
    a = s.A.cells
    for t in d.trajectories:
        nodes = t.nodes
        for p in range(len(nodes)):
            i = nodes[p]
            for q in range(p + 2, len(nodes)):
                j = nodes[q]
                if not a[i][j]:
                    m[i][j] += 1
    return _freeze(m)


def _count_all(d: Dataset) -> tuple[CountMatrix, ...]:
    # Single pass over all ordered pairs of every trajectory; the direct /
    # indirect split uses the dataset's own edge set.
    n = d.graph.n
    edges = d.graph.edges
    f, dd, l, t, tc = (_grid(n) for _ in range(5))
    for traj in d.trajectories:
        nodes = traj.nodes
        k = len(nodes)
        for p in range(k):
            i = nodes[p]
            for q in range(p + 1, k):
                j = nodes[q]
                dd[i][j] += 1
                if q == p + 1:
                    f[i][j] += 1
                elif (i, j) in edges:
                    l[i][j] += 1
                    t[i][j] += 1
                else:
                    l[i][j] += 1
                    tc[i][j] += 1
    return tuple(_freeze(g) for g in (f, dd, l, t, tc))


def _cross_check(name: str, counted: CountMatrix, derived: CountMatrix) -> None:
    if counted.cells == derived.cells:
        return
    for i, (cr, dr) in enumerate(zip(counted.cells, derived.cells)):
        for j, (a, b) in enumerate(zip(cr, dr)):
            if a != b:
                raise CrossCheckFailure(
                    f"{name} violated at cell ({i}, {j}): counted {a!r}, derived {b!r}"
                )


def build_utilization(d: Dataset, s: StructureBundle) -> UtilizationBundle:
    """Aggregate all five utilization matrices and their binarizations.

    The counted matrices are verified against their algebraic forms
    (T = A o L, Tc = Ehat o D, L = T + Tc, D = F + T + Tc); any disagreement
    raises CrossCheckFailure naming the identity and the witness cell.
    """
    f, dd, l, t, tc = _count_all(d)
    _cross_check("T = A o L", t, hadamard(s.A, l))
    _cross_check("Tc = Ehat o D", tc, hadamard(s.Ehat, dd))
    _cross_check("L = T + Tc", l, ew_add(t, tc))
    _cross_check("D = F + T + Tc", dd, ew_add(f, ew_add(t, tc)))
    return UtilizationBundle(
        F=f,
        D=dd,
        L=l,
        T=t,
        Tc=tc,
        Fhat=binarize(f),
        Dhat=binarize(dd),
        Lhat=binarize(l),
        That=binarize(t),
        Tchat=binarize(tc),
    )


def is_fully_utilized(u: UtilizationBundle, s: StructureBundle) -> bool:
    """True iff every edge carries at least one trajectory (Fhat equals A)."""
    return u.Fhat == s.A
