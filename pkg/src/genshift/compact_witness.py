"""Compactness of the shift operator and explicit non-compactness witnesses.

On a finite index set every linear operator is compact. On the unbounded
index set the scaled basis vectors at indices with nonempty fibers have
pairwise-separated images, so the image of the unit ball contains a sequence
with no convergent subsequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import SearchExhaustedError, UnsupportedError
from .index_domain import DEFAULT_WINDOW, IndexMap
from .sparse_vec import SparseVector, scale, unit_vector


@dataclass(frozen=True)
class WitnessSequence:
    """Vectors (1/2) e_alpha whose images stay uniformly far apart.

    Distinct indices have disjoint fibers, so the image distance between
    items i and j is exactly sqrt(c_i + c_j) / 2 with c the fiber sizes.
    Nonempty fibers make that at least sqrt(2)/2; the minimum over all pairs
    is computed in exact rationals before taking the root.
    """

    indices: tuple[int, ...]
    fiber_sizes: tuple[int, ...]
    vectors: tuple[SparseVector, ...]
    min_distance_sq: Fraction
    pairwise_separation: float


def is_compact(m: IndexMap) -> bool:
    """The operator is compact exactly when the index set is finite."""
    return m.domain.is_finite


def witness_sequence(
    m: IndexMap,
    count: int,
    window: int = DEFAULT_WINDOW,
    search_cap: int = 1 << 20,
) -> WitnessSequence:
    """Non-compactness certificate on the unbounded index set.

    Collects the ``count`` smallest indices with nonempty fibers, extending
    the initial ``window`` as needed up to ``search_cap``. Requires a map
    with a certified finite fiber bound (for unbounded maps the operator
    does not even act within the square-summable family).
    """
    if m.domain.is_finite:
        raise UnsupportedError("finite index set: the operator is compact, no witness exists")
    if count < 2:
        raise UnsupportedError(f"need at least 2 witness vectors, got {count}")
    rule = m.rule
    if rule.sup_card is None or rule.sup_card.is_infinite:
        raise UnsupportedError("witness needs a map with a certified finite fiber bound")
    cap = max(window, search_cap)
    found: list[tuple[int, int]] = []
    for alpha in range(1, cap + 1):
        c = rule.card_fn(alpha)
        if c is not None and c >= 1:
            found.append((alpha, c))
            if len(found) == count:
                break
    if len(found) < count:
        # cannot happen for a total map with bounded fibers; defensive only
        raise SearchExhaustedError(
            f"only {len(found)} nonempty fibers below {cap}; need {count}"
        )
    indices = tuple(a for a, _ in found)
    sizes = tuple(c for _, c in found)
    vectors = tuple(scale(0.5, unit_vector(m.domain, a)) for a in indices)
    smallest_two = sorted(sizes)[:2]
    min_sq = Fraction(smallest_two[0] + smallest_two[1], 4)
    return WitnessSequence(
        indices=indices,
        fiber_sizes=sizes,
        vectors=vectors,
        min_distance_sq=min_sq,
        pairwise_separation=math.sqrt(min_sq),
    )
