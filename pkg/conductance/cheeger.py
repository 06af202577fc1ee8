"""
Conductance of P^t by exhaustive subset enumeration.

Subsets are bitmasks over the states. Masks are scanned in blocks of 2^16:
each block is a 0/1 matrix B, and the boundary flow of every subset in the
block is B·r - rowsum((B @ W) * B) with W = diag(pi) Q and r the row sums of W.
The float pass only selects candidates within a relative 1e-9 of the block
minimum; in exact mode every candidate is then re-evaluated in rationals and
the smallest ratio wins, ties going to the smallest bitmask.

Updates: v0.1.0 - 2026-10-16 - Exhaustive and sweep conductance.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.linalg import eigh

from chains.arithmetic import Scalar, common_denominator, float_array
from chains.chain import DEFAULT_BIT_BUDGET, Chain, StationaryDist, stationary
from chains.powers import TransitionPowers
from errors import NoAdmissibleSetError, TooLargeError
from utils.helpers import value_payload

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_LIMIT = 24
BLOCK_BITS = 16
CANDIDATE_TOLERANCE = 1e-9
FLOAT_HALF_TOLERANCE = 1e-12


@dataclass(frozen=True, slots=True)
class ConductanceValue:
    """Phi(P^t) with the minimising subset as a bitmask."""

    t: int
    phi: Scalar
    argmin_set: int
    n: int
    upper_bound: bool = False

    def members(self) -> List[int]:
        return [x for x in range(self.n) if self.argmin_set >> x & 1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "phi": value_payload(self.phi),
            "argmin_set": self.members(),
            "bitmask": self.argmin_set,
            "upper_bound": self.upper_bound,
        }


def subset_ratio(matrix: np.ndarray, pi: np.ndarray, mask: int) -> Scalar:
    """(1 / pi(A)) * sum over x in A, y not in A of pi(x) Q(x, y)."""
    n = len(pi)
    inside = [x for x in range(n) if mask >> x & 1]
    outside = [y for y in range(n) if not mask >> y & 1]
    if not inside:
        raise ValueError("empty subset has no conductance ratio")
    mass = sum((pi[x] for x in inside), pi[0] * 0)
    flow = sum((pi[x] * matrix[x, y] for x in inside for y in outside), pi[0] * 0)
    return flow / mass


def subset_mass(pi: np.ndarray, mask: int) -> Scalar:
    return sum((pi[x] for x in range(len(pi)) if mask >> x & 1), pi[0] * 0)


class _BlockScanner:
    """Float-guided scan of one block of 2^BLOCK_BITS masks."""

    def __init__(self, matrix: np.ndarray, pi: np.ndarray, exact: bool) -> None:
        n = len(pi)
        self.n = n
        self.exact = exact
        pi_float = float_array(pi)
        q_float = float_array(matrix)
        self.pi_float = pi_float
        self.weights = pi_float[:, None] * q_float
        self.row_totals = self.weights.sum(axis=1)
        self.low_bits = min(n, BLOCK_BITS)
        self.high_bits = n - self.low_bits
        low_masks = np.arange(1 << self.low_bits, dtype=np.int64)
        self.low_masks = low_masks
        self.low_table = ((low_masks[:, None] >> np.arange(self.low_bits)) & 1).astype(float)
        if exact:
            numerators, denominator = common_denominator(pi)
            self.half_denominator = denominator
            if max(int(value) for value in numerators) * n < (1 << 62):
                self.pi_numerators = np.array([int(value) for value in numerators], dtype=np.int64)
                self.low_int = self.low_table.astype(np.int64)
            else:
                self.pi_numerators = numerators
                self.low_int = self.low_table.astype(np.int64).astype(object)

    def __call__(self, high: int) -> Tuple[float, List[Tuple[float, int]]]:
        if self.high_bits:
            high_vec = ((high >> np.arange(self.high_bits)) & 1).astype(float)
            B = np.hstack([self.low_table, np.broadcast_to(high_vec, (len(self.low_masks), self.high_bits))])
        else:
            B = self.low_table
        masks = (np.int64(high) << self.low_bits) | self.low_masks
        mass = B @ self.pi_float
        inside = ((B @ self.weights) * B).sum(axis=1)
        flow = B @ self.row_totals - inside

        if self.exact:
            if self.high_bits:
                high_int = np.broadcast_to(
                    ((high >> np.arange(self.high_bits)) & 1).astype(self.low_int.dtype),
                    (len(self.low_masks), self.high_bits),
                )
                B_int = np.hstack([self.low_int, high_int])
            else:
                B_int = self.low_int
            exact_mass = B_int @ self.pi_numerators
            admissible = np.array([2 * int(value) <= self.half_denominator for value in exact_mass]) \
                if exact_mass.dtype == object else (2 * exact_mass <= self.half_denominator)
        else:
            admissible = mass <= 0.5 + FLOAT_HALF_TOLERANCE
        admissible &= masks != 0

        if not np.any(admissible):
            return float("inf"), []
        ratio = np.full(len(masks), np.inf)
        ratio[admissible] = flow[admissible] / mass[admissible]
        block_min = float(ratio.min())
        cutoff = block_min * (1 + CANDIDATE_TOLERANCE) + 1e-300
        picked = np.nonzero(ratio <= cutoff)[0]
        return block_min, [(float(ratio[i]), int(masks[i])) for i in picked]


def conductance_of_matrix(
    matrix: np.ndarray,
    pi: np.ndarray,
    *,
    t: int = 1,
    enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
    threads: int = 1,
) -> ConductanceValue:
    """Exhaustive conductance of a stochastic matrix Q with invariant law pi."""
    n = len(pi)
    if n < 2:
        raise NoAdmissibleSetError("a single state has no set with 0 < pi(A) <= 1/2")
    if n > enumeration_limit:
        raise TooLargeError(n, enumeration_limit, "conductance enumeration")

    exact = matrix.dtype == object and pi.dtype == object
    scanner = _BlockScanner(matrix, pi, exact)
    blocks = range(1 << scanner.high_bits)
    workers = max(1, min(threads, len(blocks)))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(scanner, blocks))
    else:
        results = [scanner(high) for high in blocks]

    best = min(block_min for block_min, _ in results)
    if best == float("inf"):
        raise NoAdmissibleSetError("no subset with 0 < pi(A) <= 1/2")
    cutoff = best * (1 + CANDIDATE_TOLERANCE) + 1e-300
    candidates = sorted(mask for _, entries in results for ratio, mask in entries if ratio <= cutoff)
    logger.debug("Conductance t=%s: %s candidate subsets after float pass", t, len(candidates))

    if exact:
        best_value: Optional[Fraction] = None
        best_mask = 0
        for mask in candidates:
            if 2 * subset_mass(pi, mask) > 1:
                continue
            value = subset_ratio(matrix, pi, mask)
            if best_value is None or value < best_value:
                best_value, best_mask = value, mask
        if best_value is None:
            raise NoAdmissibleSetError("no subset with 0 < pi(A) <= 1/2")
        return ConductanceValue(t=t, phi=best_value, argmin_set=best_mask, n=n)

    scored = [(float(subset_ratio(matrix, pi, mask)), mask) for mask in candidates]
    low = min(value for value, _ in scored)
    best_mask = min(mask for value, mask in scored if value <= low * (1 + FLOAT_HALF_TOLERANCE) + 1e-300)
    phi = float(subset_ratio(matrix, pi, best_mask))
    return ConductanceValue(t=t, phi=phi, argmin_set=best_mask, n=n)


def power_matrix(chain: Chain, t: int, *, bit_budget: int = DEFAULT_BIT_BUDGET) -> np.ndarray:
    if t < 1:
        raise ValueError("conductance is defined for t >= 1")
    powers = TransitionPowers(chain, bit_budget=bit_budget)
    powers.advance_to(t)
    return powers.matrix()


def conductance(
    chain: Chain,
    t: int = 1,
    *,
    dist: Optional[StationaryDist] = None,
    enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
    threads: int = 1,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> ConductanceValue:
    """Phi(P^t): exhaustive minimum over 0 < pi(A) <= 1/2, exact in rational mode."""
    if chain.n < 2:
        raise NoAdmissibleSetError("a single state has no set with 0 < pi(A) <= 1/2")
    if chain.n > enumeration_limit:
        raise TooLargeError(chain.n, enumeration_limit, "conductance enumeration")
    dist = dist or stationary(chain)
    matrix = power_matrix(chain, t, bit_budget=bit_budget)
    pi = dist.pi if matrix.dtype == object else float_array(dist.pi)
    return conductance_of_matrix(matrix, pi, t=t, enumeration_limit=enumeration_limit, threads=threads)


def sweep_conductance(
    chain: Chain,
    t: int = 1,
    *,
    dist: Optional[StationaryDist] = None,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> ConductanceValue:
    """Upper bound on Phi(P^t) from prefix sets of a spectral ordering.

    States are sorted by the second eigenvector of the additive symmetrisation
    of D^{1/2} Q D^{-1/2}; every prefix and suffix with pi-mass <= 1/2 is scored.
    """
    if chain.n < 2:
        raise NoAdmissibleSetError("a single state has no set with 0 < pi(A) <= 1/2")
    dist = dist or stationary(chain)
    matrix = power_matrix(chain, t, bit_budget=bit_budget)
    pi = dist.pi if matrix.dtype == object else float_array(dist.pi)
    pi_float = float_array(pi)
    root = np.sqrt(pi_float)
    similar = root[:, None] * float_array(matrix) / root[None, :]
    symmetric = 0.5 * (similar + similar.T)
    _, vectors = eigh(symmetric)
    fiedler = vectors[:, -2] / root
    order = [int(x) for x in np.argsort(fiedler, kind="stable")]

    best_value: Optional[Scalar] = None
    best_mask = 0
    for size in range(1, chain.n):
        for states in (order[:size], order[chain.n - size:]):
            mask = sum(1 << x for x in states)
            if 2 * subset_mass(pi, mask) > 1:
                continue
            value = subset_ratio(matrix, pi, mask)
            if best_value is None or value < best_value or (value == best_value and mask < best_mask):
                best_value, best_mask = value, mask
    if best_value is None:
        raise NoAdmissibleSetError("no prefix set with 0 < pi(A) <= 1/2")
    logger.info("Sweep conductance upper bound for n=%s, t=%s: %s", chain.n, t, best_value)
    return ConductanceValue(t=t, phi=best_value, argmin_set=best_mask, n=chain.n, upper_bound=True)
