"""
Chain families: cycles, Abelian Cayley walks, the transposition walk,
birth-death segments, directed cycles and double stars.

Every generator is deterministic given its parameters (and seed), returns a
validated exact chain by default, and records ``family``, ``params`` and
structural ``tags`` in the chain metadata.

Updates: v0.1.0 - 2026-10-16 - Six core families plus the double-star negative-curvature witness.
"""

from __future__ import annotations

import logging
import math
import zlib
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from chains.chain import EXACT, Chain, build_chain, lazify
from errors import NotGeneratingError, SizeError
from generators.groups import (
    Element,
    FiniteGroup,
    abelian_group,
    cayley_matrix,
    generates,
    is_conjugacy_invariant,
    is_symmetric,
    symmetric_group,
    transpositions,
)
from mixing.symmetry import TRANSITIVE_TAG
from utils.helpers import parse_fraction

logger = logging.getLogger(__name__)

MAX_STATES = 64
MAX_RANDOM_ATTEMPTS = 1000


def _zeros(n: int) -> np.ndarray:
    matrix = np.empty((n, n), dtype=object)
    matrix.fill(Fraction(0))
    return matrix


def _finish(
    matrix: np.ndarray,
    family: str,
    params: Dict[str, Any],
    tags: Iterable[str],
    *,
    lazy: bool,
    mode: str,
    labels: Optional[Sequence[str]] = None,
) -> Chain:
    tags = set(tags)
    meta = {"family": family, "params": {key: str(value) for key, value in params.items()}}
    chain = build_chain(matrix, mode=EXACT, labels=labels)
    if lazy:
        chain = lazify(chain)
        tags.add("lazy")
    meta["tags"] = sorted(tags)
    matrix = chain.P if mode == EXACT else np.array([[float(v) for v in row] for row in chain.P])
    return build_chain(matrix, mode=mode, labels=labels, meta=meta)


def _cayley(
    group: FiniteGroup,
    multiset: Sequence[Element],
    family: str,
    params: Dict[str, Any],
    *,
    lazy: bool,
    mode: str,
) -> Chain:
    if group.order > MAX_STATES:
        raise SizeError(f"{group.name} has {group.order} elements, limit is {MAX_STATES}")
    if not generates(group, multiset):
        raise NotGeneratingError(f"increments do not generate {group.name}")
    tags = {TRANSITIVE_TAG}
    if is_symmetric(group, multiset):
        tags.add("reversible")
    labels = [group.label(element) for element in group.elements]
    return _finish(cayley_matrix(group, multiset), family, params, tags, lazy=lazy, mode=mode, labels=labels)


def cycle(n: int, lazy: bool = True, *, mode: str = EXACT) -> Chain:
    """Simple random walk on the n-cycle."""
    if n < 3:
        raise SizeError(f"cycle needs n >= 3, got {n}")
    if n > MAX_STATES:
        raise SizeError(f"cycle with {n} states exceeds the {MAX_STATES}-state limit")
    matrix = _zeros(n)
    for x in range(n):
        matrix[x, (x + 1) % n] += Fraction(1, 2)
        matrix[x, (x - 1) % n] += Fraction(1, 2)
    return _finish(
        matrix, "cycle", {"n": n, "lazy": lazy}, {TRANSITIVE_TAG, "reversible"}, lazy=lazy, mode=mode
    )


def hypercube_times_cycle(d: int, n: int, lazy: bool = True, *, mode: str = EXACT) -> Chain:
    """Simple random walk on the Cayley graph of Z_2^d x Z_n."""
    if d < 1 or n < 3:
        raise SizeError(f"need d >= 1 and n >= 3, got d={d}, n={n}")
    if 2 ** d * n > MAX_STATES:
        raise SizeError(f"2^{d} * {n} = {2 ** d * n} states exceeds {MAX_STATES}")
    group = abelian_group([2] * d + [n])
    steps: List[Element] = []
    for i in range(d):
        unit = [0] * (d + 1)
        unit[i] = 1
        steps.append(tuple(unit))
    steps.append(tuple([0] * d + [1]))
    steps.append(tuple([0] * d + [n - 1]))
    return _cayley(group, steps, "hypercube_times_cycle", {"d": d, "n": n, "lazy": lazy}, lazy=lazy, mode=mode)


def parse_element(text: str, moduli: Sequence[int]) -> Element:
    """"3" or "1,0" -> element tuple reduced modulo the moduli."""
    parts = [int(part) for part in str(text).replace("(", "").replace(")", "").split(",") if part.strip()]
    if len(parts) != len(moduli):
        raise ValueError(f"element {text!r} does not match moduli {list(moduli)}")
    return tuple(value % m for value, m in zip(parts, moduli))


def default_degree(order: int) -> int:
    """ceil(log2 |G|), at least 1."""
    return max(1, math.ceil(math.log2(order))) if order > 1 else 1


def _random_generators(group: FiniteGroup, degree: int, seed: int) -> List[Element]:
    candidates = group.elements[1:]
    rng = np.random.default_rng([seed, zlib.crc32(group.name.encode())])
    for _ in range(MAX_RANDOM_ATTEMPTS):
        picks = rng.integers(0, len(candidates), size=degree)
        multiset = [candidates[int(i)] for i in picks]
        if generates(group, multiset):
            return multiset
    raise NotGeneratingError(
        f"no generating set of degree {degree} for {group.name} in {MAX_RANDOM_ATTEMPTS} draws"
    )


def abelian_cayley(
    moduli: Sequence[int],
    generators: Optional[Sequence[Any]] = None,
    lazy: bool = True,
    *,
    degree: Optional[int] = None,
    seed: int = 0,
    mode: str = EXACT,
) -> Chain:
    """Random walk on Z_{m1} x ... x Z_{mk} with increments uniform on a multiset.

    Without explicit generators, ``degree`` non-identity increments (default
    ceil(log2 |G|)) are drawn uniformly with replacement from ``seed`` until
    they generate the group.
    """
    group = abelian_group(moduli)
    if group.order > MAX_STATES:
        raise SizeError(f"{group.name} has {group.order} elements, limit is {MAX_STATES}")
    params: Dict[str, Any] = {"moduli": ",".join(str(int(m)) for m in moduli), "lazy": lazy}
    if generators is not None:
        multiset = [
            element if isinstance(element, tuple) else parse_element(element, moduli) for element in generators
        ]
        params["generators"] = " ".join(group.label(s) for s in multiset)
    else:
        if group.order == 1:
            raise NotGeneratingError("the trivial group has no non-identity increments")
        degree = degree or default_degree(group.order)
        multiset = _random_generators(group, degree, seed)
        params.update({"degree": degree, "seed": seed, "generators": " ".join(group.label(s) for s in multiset)})
    return _cayley(group, multiset, "abelian_cayley", params, lazy=lazy, mode=mode)


def transposition_walk(m: int, lazy: bool = True, *, mode: str = EXACT) -> Chain:
    """Walk on S_m with increments uniform over all transpositions."""
    if m not in (3, 4):
        raise SizeError(f"transposition walk supports m in {{3, 4}}, got {m}")
    group = symmetric_group(m)
    steps = transpositions(m)
    if not is_conjugacy_invariant(group, steps):
        raise AssertionError("transpositions must form a conjugacy class")
    return _cayley(group, steps, "transposition_walk", {"m": m, "lazy": lazy}, lazy=lazy, mode=mode)


def biased_segment(n: int, up_prob: Any = Fraction(3, 4), *, mode: str = EXACT) -> Chain:
    """Lazy birth-death chain on {0..n-1}: up with p/2, down with (1-p)/2, held at the ends."""
    up = parse_fraction(up_prob)
    if n < 2:
        raise SizeError(f"segment needs n >= 2, got {n}")
    if n > MAX_STATES:
        raise SizeError(f"segment with {n} states exceeds the {MAX_STATES}-state limit")
    if not 0 < up < 1:
        raise ValueError(f"up_prob must lie in (0, 1), got {up}")
    matrix = _zeros(n)
    for x in range(n):
        if x + 1 < n:
            matrix[x, x + 1] = up / 2
        if x > 0:
            matrix[x, x - 1] = (1 - up) / 2
        matrix[x, x] = 1 - sum(matrix[x], Fraction(0))
    return _finish(
        matrix, "biased_segment", {"n": n, "up_prob": up}, {"lazy", "reversible"}, lazy=False, mode=mode
    )


def directed_lazy_cycle(n: int, *, mode: str = EXACT) -> Chain:
    """P(x, x) = P(x, x+1) = 1/2: asymmetric support, non-reversible."""
    if n < 3:
        raise SizeError(f"directed cycle needs n >= 3, got {n}")
    if n > MAX_STATES:
        raise SizeError(f"directed cycle with {n} states exceeds the {MAX_STATES}-state limit")
    matrix = _zeros(n)
    for x in range(n):
        matrix[x, x] = Fraction(1, 2)
        matrix[x, (x + 1) % n] = Fraction(1, 2)
    return _finish(
        matrix, "directed_lazy_cycle", {"n": n}, {"lazy", TRANSITIVE_TAG}, lazy=False, mode=mode
    )


def double_star(k: int = 2, lazy: bool = True, *, mode: str = EXACT) -> Chain:
    """Simple random walk on two adjacent hubs, each carrying k pendant leaves.

    States: 0 and 1 are the hubs, 2..k+1 the leaves of hub 0, k+2..2k+1 the
    leaves of hub 1. For k >= 2 the lazy walk has W(P(0,.), P(1,.)) > 1.
    """
    if k < 1:
        raise SizeError(f"double star needs k >= 1, got {k}")
    n = 2 * k + 2
    if n > MAX_STATES:
        raise SizeError(f"double star with {n} states exceeds the {MAX_STATES}-state limit")
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(k)]
    edges += [(1, k + 2 + i) for i in range(k)]
    neighbours: Dict[int, List[int]] = {x: [] for x in range(n)}
    for a, b in edges:
        neighbours[a].append(b)
        neighbours[b].append(a)
    matrix = _zeros(n)
    for x, adjacent in neighbours.items():
        for y in adjacent:
            matrix[x, y] = Fraction(1, len(adjacent))
    labels = ["a", "b"] + [f"a{i}" for i in range(k)] + [f"b{i}" for i in range(k)]
    return _finish(
        matrix, "double_star", {"k": k, "lazy": lazy}, {"reversible"}, lazy=lazy, mode=mode, labels=labels
    )
