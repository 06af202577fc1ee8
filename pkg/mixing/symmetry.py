"""
Transitivity of a chain: for every pair (x, y) some bijection f with f(x) = y
preserves the kernel, P(f(u), f(v)) = P(u, v).

Automorphisms of 0 onto each y are searched with the networkx VF2 matcher on
the weighted support digraph, self-loop weights carried as node attributes.
"""

from __future__ import annotations

import logging

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from chains.chain import Chain
from errors import InvariantViolation, TooLargeError

logger = logging.getLogger(__name__)

SEARCH_LIMIT = 12
TRANSITIVE_TAG = "transitive_by_construction"


def _weighted_graph(chain: Chain, anchor: int) -> nx.DiGraph:
    graph = nx.DiGraph()
    for x in range(chain.n):
        graph.add_node(x, loop=chain.P[x, x], anchor=(x == anchor))
    for x, y in chain.support():
        graph.add_edge(x, y, p=chain.P[x, y])
    return graph


def _same(a, b, exact: bool) -> bool:
    if exact:
        return a == b
    return abs(float(a) - float(b)) <= 1e-12


def _maps_onto(chain: Chain, source: nx.DiGraph, target_state: int) -> bool:
    target = _weighted_graph(chain, target_state)
    matcher = DiGraphMatcher(
        source,
        target,
        node_match=lambda a, b: a["anchor"] == b["anchor"] and _same(a["loop"], b["loop"], chain.exact),
        edge_match=lambda a, b: _same(a["p"], b["p"], chain.exact),
    )
    return matcher.is_isomorphic()


def search_transitive(chain: Chain) -> bool:
    """Exhaustive automorphism search; the orbit of state 0 must be every state."""
    columns = [sum(chain.P[:, y]) for y in range(chain.n)]
    # A transitive kernel is doubly stochastic.
    if any(not _same(value, 1, chain.exact) for value in columns):
        return False
    source = _weighted_graph(chain, 0)
    for y in range(1, chain.n):
        if not _maps_onto(chain, source, y):
            logger.debug("No automorphism maps state 0 to state %s", y)
            return False
    return True


def is_transitive(chain: Chain, *, limit: int = SEARCH_LIMIT) -> bool:
    """Transitivity check.

    Generator-tagged chains are transitive by construction; for them the
    search runs only as a spot check when n <= limit. Untagged chains larger
    than ``limit`` raise :class:`TooLargeError`.
    """
    tagged = TRANSITIVE_TAG in chain.meta.get("tags", ())
    if chain.n > limit:
        if tagged:
            return True
        raise TooLargeError(chain.n, limit, "automorphism search")
    found = search_transitive(chain)
    if tagged and not found:
        raise InvariantViolation("chain tagged transitive by construction has no transitive symmetry")
    return found
