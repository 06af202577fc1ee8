"""
Finite groups used by the Cayley-walk generators: products of cyclic groups
and symmetric groups on at most four letters. Elements are tuples; the
element order is fixed (mixed-radix for Abelian groups, lexicographic for
permutations) so generated chains are reproducible.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

import networkx as nx
import numpy as np

Element = Tuple[int, ...]


@dataclass(frozen=True)
class FiniteGroup:
    """Elements in a fixed order plus the group law and inverse."""

    name: str
    elements: Tuple[Element, ...]
    multiply: Callable[[Element, Element], Element]
    inverse: Callable[[Element], Element]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Element:
        return self.elements[0]

    def index(self) -> Dict[Element, int]:
        return {element: i for i, element in enumerate(self.elements)}

    def label(self, element: Element) -> str:
        return "(" + ",".join(str(part) for part in element) + ")"


def abelian_group(moduli: Sequence[int]) -> FiniteGroup:
    """Z_{m1} x ... x Z_{mk}."""
    moduli = tuple(int(m) for m in moduli)
    if not moduli or any(m < 1 for m in moduli):
        raise ValueError(f"invalid moduli {moduli}")

    def multiply(a: Element, b: Element) -> Element:
        return tuple((x + y) % m for x, y, m in zip(a, b, moduli))

    def inverse(a: Element) -> Element:
        return tuple((-x) % m for x, m in zip(a, moduli))

    elements = tuple(itertools.product(*(range(m) for m in moduli)))
    name = "x".join(f"Z{m}" for m in moduli)
    return FiniteGroup(name=name, elements=elements, multiply=multiply, inverse=inverse)


def symmetric_group(m: int) -> FiniteGroup:
    """S_m acting on {0..m-1}; (p * q)(i) = p(q(i))."""

    def multiply(p: Element, q: Element) -> Element:
        return tuple(p[q[i]] for i in range(m))

    def inverse(p: Element) -> Element:
        result = [0] * m
        for i, image in enumerate(p):
            result[image] = i
        return tuple(result)

    elements = tuple(itertools.permutations(range(m)))
    return FiniteGroup(name=f"S{m}", elements=elements, multiply=multiply, inverse=inverse)


def transpositions(m: int) -> List[Element]:
    result = []
    for i, j in itertools.combinations(range(m), 2):
        image = list(range(m))
        image[i], image[j] = j, i
        result.append(tuple(image))
    return result


def generates(group: FiniteGroup, generators: Iterable[Element]) -> bool:
    """True iff the Cayley digraph of the generators is strongly connected."""
    generators = list(generators)
    graph = nx.DiGraph()
    graph.add_nodes_from(group.elements)
    graph.add_edges_from(
        (x, group.multiply(s, x)) for x in group.elements for s in generators
    )
    return nx.is_strongly_connected(graph)


def is_conjugacy_invariant(group: FiniteGroup, multiset: Iterable[Element]) -> bool:
    """mu(g s g^-1) = mu(s) for every g, checked over the whole group."""
    counts = Counter(multiset)
    for g in group.elements:
        g_inv = group.inverse(g)
        conjugated = Counter({group.multiply(group.multiply(g, s), g_inv): c for s, c in counts.items()})
        if conjugated != counts:
            return False
    return True


def is_symmetric(group: FiniteGroup, multiset: Iterable[Element]) -> bool:
    """mu(s) = mu(s^-1)."""
    counts = Counter(multiset)
    return all(counts[group.inverse(s)] == c for s, c in counts.items())


def cayley_matrix(group: FiniteGroup, multiset: Sequence[Element]) -> np.ndarray:
    """P(x, s x) += 1/|S| for every s in the multiset S."""
    if not multiset:
        raise ValueError("empty increment multiset")
    index = group.index()
    weight = Fraction(1, len(multiset))
    matrix = np.empty((group.order, group.order), dtype=object)
    matrix.fill(Fraction(0))
    for x in group.elements:
        for s in multiset:
            matrix[index[x], index[group.multiply(s, x)]] += weight
    return matrix
