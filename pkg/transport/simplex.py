"""
Transportation simplex (network simplex on the complete bipartite graph).

Start from the northwest-corner basis, price with MODI potentials
(u_i + v_j = c_ij on basic cells), pivot along the stepping-stone cycle.
Entering and leaving cells follow Bland's rule (smallest row-major index),
so degenerate pivots cannot cycle. Arithmetic follows the inputs: Fractions
stay exact, floats stay floats.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from chains.arithmetic import Scalar
from errors import SolverStall

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]

DEFAULT_MAX_PIVOTS = 10_000


@dataclass(slots=True)
class TransportSolution:
    """Basic feasible solution with its MODI potentials."""

    flows: Dict[Cell, Scalar]
    row_potentials: List[Scalar]
    col_potentials: List[Scalar]
    objective: Scalar
    pivots: int

    @property
    def basis(self) -> List[Cell]:
        return sorted(self.flows)

    def reduced_cost(self, cost: Sequence[Sequence[Scalar]], i: int, j: int) -> Scalar:
        return cost[i][j] - self.row_potentials[i] - self.col_potentials[j]


class TransportationSimplex:
    """Minimise sum c_ij x_ij subject to row sums = supply, column sums = demand."""

    def __init__(
        self,
        supply: Sequence[Scalar],
        demand: Sequence[Scalar],
        cost: Sequence[Sequence[Scalar]],
        *,
        allowed: Optional[Sequence[Sequence[bool]]] = None,
        max_pivots: int = DEFAULT_MAX_PIVOTS,
    ) -> None:
        if not supply or not demand:
            raise ValueError("transportation problem needs at least one source and one sink")
        if len(cost) != len(supply) or any(len(row) != len(demand) for row in cost):
            raise ValueError("cost matrix shape does not match supply/demand")
        self.supply = list(supply)
        self.demand = list(demand)
        self.cost = [list(row) for row in cost]
        self.allowed = allowed
        self.max_pivots = max_pivots
        self.m = len(self.supply)
        self.k = len(self.demand)

    def _northwest_corner(self) -> Dict[Cell, Scalar]:
        remaining_supply = list(self.supply)
        remaining_demand = list(self.demand)
        flows: Dict[Cell, Scalar] = {}
        i = j = 0
        while True:
            quantity = min(remaining_supply[i], remaining_demand[j])
            if quantity < 0:
                quantity = quantity * 0
            flows[(i, j)] = quantity
            remaining_supply[i] -= quantity
            remaining_demand[j] -= quantity
            if i == self.m - 1 and j == self.k - 1:
                break
            if i == self.m - 1:
                j += 1
            elif j == self.k - 1:
                i += 1
            elif remaining_supply[i] <= remaining_demand[j]:
                i += 1
            else:
                j += 1
        return flows

    def _potentials(self, basis: Sequence[Cell]) -> Tuple[List[Scalar], List[Scalar]]:
        """Solve u_i + v_j = c_ij over the basis tree with u_0 = 0."""
        adjacency: Dict[int, List[Tuple[int, Cell]]] = {node: [] for node in range(self.m + self.k)}
        for i, j in basis:
            adjacency[i].append((self.m + j, (i, j)))
            adjacency[self.m + j].append((i, (i, j)))

        zero = self.cost[0][0] * 0
        u: List[Optional[Scalar]] = [None] * self.m
        v: List[Optional[Scalar]] = [None] * self.k
        u[0] = zero
        queue = deque([0])
        while queue:
            node = queue.popleft()
            for other, (i, j) in adjacency[node]:
                if node < self.m and v[j] is None:
                    v[j] = self.cost[i][j] - u[i]
                    queue.append(other)
                elif node >= self.m and u[i] is None:
                    u[i] = self.cost[i][j] - v[j]
                    queue.append(other)
        if any(value is None for value in u) or any(value is None for value in v):
            raise SolverStall("basis does not span all rows and columns")
        return u, v  # type: ignore[return-value]

    def _tree_path(self, basis: Sequence[Cell], start: int, goal: int) -> List[Cell]:
        """Basic cells on the unique tree path from node ``start`` to node ``goal``."""
        adjacency: Dict[int, List[Tuple[int, Cell]]] = {node: [] for node in range(self.m + self.k)}
        for i, j in basis:
            adjacency[i].append((self.m + j, (i, j)))
            adjacency[self.m + j].append((i, (i, j)))
        parent: Dict[int, Tuple[int, Cell]] = {}
        seen = {start}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            if node == goal:
                break
            for other, cell in adjacency[node]:
                if other not in seen:
                    seen.add(other)
                    parent[other] = (node, cell)
                    queue.append(other)
        if goal not in seen:
            raise SolverStall("entering cell does not close a cycle")
        path: List[Cell] = []
        node = goal
        while node != start:
            node, cell = parent[node]
            path.append(cell)
        path.reverse()
        return path

    def _is_allowed(self, i: int, j: int) -> bool:
        return self.allowed is None or bool(self.allowed[i][j])

    def solve(self, start: Optional[TransportSolution] = None) -> TransportSolution:
        """Run the simplex from the northwest corner or from a given basis."""
        flows: Dict[Cell, Scalar] = dict(start.flows) if start is not None else self._northwest_corner()
        if len(flows) != self.m + self.k - 1:
            raise SolverStall(f"basis has {len(flows)} cells, expected {self.m + self.k - 1}")

        pivots = 0
        while True:
            basis = sorted(flows)
            u, v = self._potentials(basis)
            entering: Optional[Cell] = None
            for i in range(self.m):
                for j in range(self.k):
                    if (i, j) in flows or not self._is_allowed(i, j):
                        continue
                    if self.cost[i][j] - u[i] - v[j] < 0:
                        entering = (i, j)
                        break
                if entering is not None:
                    break

            if entering is None:
                objective = sum(
                    (self.cost[i][j] * quantity for (i, j), quantity in flows.items()),
                    self.cost[0][0] * 0,
                )
                logger.debug("Transportation simplex optimal after %s pivots", pivots)
                return TransportSolution(
                    flows=flows,
                    row_potentials=u,
                    col_potentials=v,
                    objective=objective,
                    pivots=pivots,
                )

            if pivots >= self.max_pivots:
                raise SolverStall(f"pivot limit {self.max_pivots} exceeded")

            i, j = entering
            path = self._tree_path(basis, i, self.m + j)
            # Cycle: entering (+), then the path walked back from column j (alternating -, +, ...).
            cycle = [entering] + list(reversed(path))
            minus_cells = cycle[1::2]
            theta = min(flows[cell] for cell in minus_cells)
            leaving = min(
                (cell for cell in minus_cells if flows[cell] == theta),
                key=lambda cell: cell[0] * self.k + cell[1],
            )
            flows[entering] = theta
            for position, cell in enumerate(cycle[1:], start=1):
                if position % 2 == 1:
                    flows[cell] = flows[cell] - theta
                else:
                    flows[cell] = flows[cell] + theta
            del flows[leaving]
            pivots += 1
