"""Dense matrix realisation of the shift on a finite index set.

An independent numerical route used to validate the fiber-based analysis:
the matrix has a single 1 per row at the image column, so its largest
singular value (by power iteration) and its exact integer rank (by
fraction-free elimination) yield norm and injectivity/surjectivity verdicts
with no reference to fibers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import NumericError, UnsupportedError
from .gen_shift import classify, operator_norm
from .index_domain import IndexMap, IndexSet

EXHAUSTIVE_CAP = 7


@dataclass(frozen=True)
class PowerIterationConfig:
    """Stopping rule for the singular-value iteration; the seed fixes the start vector."""

    tol: float = 1e-12
    max_iter: int = 10_000
    seed: int = 74


DEFAULT_POWER_CONFIG = PowerIterationConfig()


@dataclass(frozen=True)
class DenseOperator:
    """n x n 0/1 matrix with a 1 in row a at column eval(a).

    Each row holds exactly one 1 (the map is total and single-valued) and
    each column sum equals the corresponding fiber cardinality.
    """

    matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def to_dense(m: IndexMap) -> DenseOperator:
    if not m.is_finite:
        raise UnsupportedError("dense realisation needs a finite domain")
    n = m.domain.size
    A = np.zeros((n, n), dtype=np.int64)
    A[np.arange(n), np.asarray(m.table) - 1] = 1
    return DenseOperator(A)


def spectral_norm(
    op: DenseOperator,
    config: PowerIterationConfig = DEFAULT_POWER_CONFIG,
    rng: np.random.Generator | None = None,
) -> float:
    """Largest singular value by power iteration on A^T A with a random start.

    Deterministic for a given generator (or config seed). Raises NumericError
    when the eigenvalue estimate has not settled within the iteration cap.
    """
    if rng is None:
        rng = np.random.default_rng(config.seed)
    B = (op.matrix.T @ op.matrix).astype(np.float64)
    v = rng.standard_normal(op.n)
    v /= np.linalg.norm(v)
    lam = 0.0
    lam_prev = math.inf
    for _ in range(config.max_iter):
        w = B @ v
        nw = float(np.linalg.norm(w))
        if nw == 0.0:
            # start vector landed in the kernel; redraw
            v = rng.standard_normal(op.n)
            v /= np.linalg.norm(v)
            lam_prev = math.inf
            continue
        lam = float(v @ w)
        v = w / nw
        if abs(lam - lam_prev) <= config.tol * max(1.0, abs(lam)):
            return math.sqrt(max(lam, 0.0))
        lam_prev = lam
    raise NumericError(
        f"power iteration did not converge in {config.max_iter} steps; "
        f"last eigenvalue step {abs(lam - lam_prev):.3e}"
    )


@dataclass(frozen=True)
class StructuralReport:
    rank: int
    injective: bool
    surjective: bool
    unitary: bool


def structural_check(op: DenseOperator) -> StructuralReport:
    """Exact integer verdicts for the dense matrix.

    Rank comes from fraction-free elimination over the integers (the entries
    are 0/1, so no tolerances enter); a square matrix is injective iff
    surjective iff full rank; unitarity compares A^T A with the identity.
    """
    n = op.n
    rank = _integer_rank([[int(x) for x in row] for row in op.matrix])
    gram = op.matrix.T @ op.matrix
    unitary = bool(np.array_equal(gram, np.eye(n, dtype=np.int64)))
    return StructuralReport(rank=rank, injective=rank == n, surjective=rank == n, unitary=unitary)


def _integer_rank(rows: list[list[int]]) -> int:
    """Bareiss fraction-free elimination; every intermediate value stays integral."""
    if not rows:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        row_p = rows[rank]
        for r in range(rank + 1, nrows):
            row_r = rows[r]
            f = row_r[col]
            for c in range(col + 1, ncols):
                row_r[c] = (row_r[c] * p - f * row_p[c]) // prev
            row_r[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def exhaustive_maps(n: int) -> Iterator[IndexMap]:
    """Every image table on {1..n} exactly once, in lexicographic order."""
    if n > EXHAUSTIVE_CAP:
        raise UnsupportedError(f"exhaustive enumeration capped at n = {EXHAUSTIVE_CAP}, got {n}")
    domain = IndexSet.finite(n)  # rejects n < 2

    def generate() -> Iterator[IndexMap]:
        for images in itertools.product(range(1, n + 1), repeat=n):
            yield IndexMap(domain, table=images)

    return generate()


def random_tables(n: int, count: int, rng: np.random.Generator) -> Iterator[tuple[int, ...]]:
    for _ in range(count):
        yield tuple(int(v) for v in rng.integers(1, n + 1, size=n))


@dataclass(frozen=True)
class MapAgreement:
    """Outcome of checking one finite map against the dense oracle."""

    table: tuple[int, ...]
    structural_norm: float
    oracle_norm: float
    norm_error: float
    norm_ok: bool
    classification_ok: bool

    @property
    def ok(self) -> bool:
        return self.norm_ok and self.classification_ok


def check_map_agreement(
    m: IndexMap,
    tol: float = 1e-9,
    config: PowerIterationConfig = DEFAULT_POWER_CONFIG,
    rng: np.random.Generator | None = None,
) -> MapAgreement:
    """Compare the fiber-based analysis of one finite map against the oracle."""
    op = to_dense(m)
    oracle = spectral_norm(op, config=config, rng=rng)
    structural = operator_norm(m)
    err = abs(oracle - structural)
    rep = classify(m)
    st = structural_check(op)
    cls_ok = (
        rep.sigma_injective == st.injective
        and rep.sigma_surjective == st.surjective
        and rep.isometry == st.unitary
    )
    return MapAgreement(
        table=m.table,
        structural_norm=structural,
        oracle_norm=oracle,
        norm_error=err,
        norm_ok=err <= tol,
        classification_ok=cls_ok,
    )
