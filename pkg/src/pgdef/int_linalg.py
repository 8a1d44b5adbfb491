"""Exact integer linear algebra: Smith normal form and finite abelian groups.

Matrices act on row vectors. An ``IntMatrix`` of shape ``(m, n)`` is a map
``Z^m -> Z^n`` whose ``i``-th row is the image of the ``i``-th basis vector,
so the cokernel of a relation matrix (one row per relator, one column per
generator) is ``Z^n`` modulo the row lattice.

Entries are Python integers throughout. Dense storage is a numpy array with
``dtype=object``; sparse storage is a list of ``{column: value}`` rows.
"""

from __future__ import annotations

import heapq
import json
import logging
import math
from collections import defaultdict
from collections.abc import Iterable, Sequence
from functools import reduce
from typing import Any, Literal, NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import factorint

from ._constants import KERNEL_ROUTE_MAX_RANK, SPARSE_DENSITY_THRESHOLD
from ._exceptions import ChainConditionViolated, InfiniteAbelianError

logger = logging.getLogger(__name__)

SparseRows = list[dict[int, int]]


# ---------------------------------------------------------------------------
# IntMatrix
# ---------------------------------------------------------------------------


class IntMatrix:
    """Immutable arbitrary-precision integer matrix.

    Storage is chosen by density at construction: below 10% nonzero entries
    the matrix keeps sparse rows, otherwise a dense object array. Both views
    are always available through :meth:`to_dense` and :meth:`sparse_rows`.
    """

    __slots__ = ("_nrows", "_ncols", "_rows", "_dense")

    def __init__(self, nrows: int, ncols: int, *, rows: SparseRows | None = None, dense: np.ndarray | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self._nrows = nrows
        self._ncols = ncols
        self._rows = rows
        self._dense = dense

    # -- Construction --------------------------------------------------------

    @classmethod
    def _from_sparse(cls, nrows: int, ncols: int, rows: SparseRows) -> IntMatrix:
        nnz = sum(len(r) for r in rows)
        cells = nrows * ncols
        if cells and nnz / cells >= SPARSE_DENSITY_THRESHOLD:
            dense = np.zeros((nrows, ncols), dtype=object)
            for i, row in enumerate(rows):
                for j, v in row.items():
                    dense[i, j] = v
            return cls(nrows, ncols, dense=dense)
        return cls(nrows, ncols, rows=rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
        """Build from a list of equal-length integer rows.

        ``ncols`` is required when ``rows`` is empty.
        """
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        sparse: SparseRows = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("all rows must have the same length")
            sparse.append({j: int(v) for j, v in enumerate(row) if v})
        return cls._from_sparse(len(rows), ncols, sparse)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int, int]]) -> IntMatrix:
        """Build from ``(row, column, value)`` triples; repeated cells are summed."""
        sparse: SparseRows = [defaultdict(int) for _ in range(nrows)]
        for i, j, v in entries:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside a {nrows}x{ncols} matrix")
            sparse[i][j] += v
        return cls._from_sparse(nrows, ncols, [{j: v for j, v in row.items() if v} for row in sparse])

    @classmethod
    def from_array(cls, array: np.ndarray) -> IntMatrix:
        nrows, ncols = array.shape
        return cls.from_rows([[int(v) for v in row] for row in array], ncols=ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls(nrows, ncols, rows=[{} for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls._from_sparse(n, n, [{i: 1} for i in range(n)])

    # -- Views ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self._nrows, self._ncols

    @property
    def nrows(self) -> int:
        return self._nrows

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def is_sparse(self) -> bool:
        """Whether the matrix is stored as sparse rows."""
        return self._dense is None

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._sparse())

    @property
    def density(self) -> float:
        cells = self._nrows * self._ncols
        return self.nnz / cells if cells else 0.0

    def _sparse(self) -> SparseRows:
        if self._rows is None:
            assert self._dense is not None
            self._rows = [{j: int(v) for j, v in enumerate(row) if v} for row in self._dense]
        return self._rows

    def sparse_rows(self) -> SparseRows:
        """A fresh copy of the rows as ``{column: value}`` dicts."""
        return [dict(r) for r in self._sparse()]

    def to_dense(self) -> np.ndarray:
        """A fresh dense copy with ``dtype=object``."""
        if self._dense is not None:
            return self._dense.copy()
        dense = np.zeros((self._nrows, self._ncols), dtype=object)
        for i, row in enumerate(self._sparse()):
            for j, v in row.items():
                dense[i, j] = v
        return dense

    def tolist(self) -> list[list[int]]:
        rows = self._sparse()
        return [[rows[i].get(j, 0) for j in range(self._ncols)] for i in range(self._nrows)]

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if self._dense is not None:
            return int(self._dense[i, j])
        return self._sparse()[i].get(j, 0)

    # -- Algebra -------------------------------------------------------------

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self._ncols != other._nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        right = other._sparse()
        out: SparseRows = []
        for row in self._sparse():
            acc: dict[int, int] = defaultdict(int)
            for k, v in row.items():
                for j, w in right[k].items():
                    acc[j] += v * w
            out.append({j: v for j, v in acc.items() if v})
        return IntMatrix._from_sparse(self._nrows, other._ncols, out)

    def transpose(self) -> IntMatrix:
        cols: SparseRows = [{} for _ in range(self._ncols)]
        for i, row in enumerate(self._sparse()):
            for j, v in row.items():
                cols[j][i] = v
        return IntMatrix._from_sparse(self._ncols, self._nrows, cols)

    def is_zero(self) -> bool:
        return all(not r for r in self._sparse())

    def select_columns(self, columns: Sequence[int]) -> IntMatrix:
        position = {c: k for k, c in enumerate(columns)}
        rows = [{position[j]: v for j, v in row.items() if j in position} for row in self._sparse()]
        return IntMatrix._from_sparse(self._nrows, len(columns), rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._sparse() == other._sparse()

    def __hash__(self) -> int:
        return hash((self.shape, tuple(tuple(sorted(r.items())) for r in self._sparse())))

    def __repr__(self) -> str:
        storage = "sparse" if self.is_sparse else "dense"
        return f"IntMatrix({self._nrows}x{self._ncols}, {storage}, nnz={self.nnz})"

    # -- Serialisation -------------------------------------------------------

    def to_json(self) -> str:
        entries = [[i, j, v] for i, row in enumerate(self._sparse()) for j, v in sorted(row.items())]
        return json.dumps({"rows": self._nrows, "cols": self._ncols, "entries": entries})

    @classmethod
    def from_json(cls, data: str) -> IntMatrix:
        payload = json.loads(data)
        return cls.from_entries(payload["rows"], payload["cols"], (tuple(e) for e in payload["entries"]))


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


class SmithNormalForm(NamedTuple):
    """Result of :func:`smith_normal_form`.

    When transforms were requested, ``left @ M @ right`` is the diagonal
    matrix with entries ``diagonal``, and ``left_inverse``/``right_inverse``
    are the exact inverses of the unimodular ``left``/``right``.
    """

    diagonal: tuple[int, ...]
    """Diagonal ``d_1 | d_2 | ... | d_k`` (non-negative, zeros last), ``k = min(rows, cols)``."""

    left: IntMatrix | None
    right: IntMatrix | None
    left_inverse: IntMatrix | None
    right_inverse: IntMatrix | None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _eye(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


class _DenseReducer:
    """In-place Smith reduction of a dense object array, optionally tracking transforms."""

    def __init__(self, matrix: np.ndarray, transforms: bool):
        self.D = matrix
        self.m, self.n = matrix.shape
        self.transforms = transforms
        if transforms:
            self.U, self.Ui = _eye(self.m), _eye(self.m)
            self.V, self.Vi = _eye(self.n), _eye(self.n)

    # Row i += c * row k
    def row_add(self, i: int, k: int, c: int) -> None:
        self.D[i] += c * self.D[k]
        if self.transforms:
            self.U[i] += c * self.U[k]
            self.Ui[:, k] -= c * self.Ui[:, i]

    def row_swap(self, i: int, k: int) -> None:
        if i == k:
            return
        self.D[[i, k]] = self.D[[k, i]]
        if self.transforms:
            self.U[[i, k]] = self.U[[k, i]]
            self.Ui[:, [i, k]] = self.Ui[:, [k, i]]

    def row_negate(self, i: int) -> None:
        self.D[i] = -self.D[i]
        if self.transforms:
            self.U[i] = -self.U[i]
            self.Ui[:, i] = -self.Ui[:, i]

    # Column j += c * column k
    def col_add(self, j: int, k: int, c: int) -> None:
        self.D[:, j] += c * self.D[:, k]
        if self.transforms:
            self.V[:, j] += c * self.V[:, k]
            self.Vi[k] -= c * self.Vi[j]

    def col_swap(self, j: int, k: int) -> None:
        if j == k:
            return
        self.D[:, [j, k]] = self.D[:, [k, j]]
        if self.transforms:
            self.V[:, [j, k]] = self.V[:, [k, j]]
            self.Vi[[j, k]] = self.Vi[[k, j]]

    def choose_pivot(self, t: int) -> tuple[int, int] | None:
        """Smallest nonzero absolute value; ties go to the sparsest row+column, then by index."""
        sub = self.D[t:, t:]
        mask = sub != 0
        if not mask.any():
            return None
        absolute = np.abs(sub)
        smallest = min(absolute[mask])
        rows, cols = np.nonzero(mask & (absolute == smallest))
        fill = mask.sum(axis=1)[rows] + mask.sum(axis=0)[cols]
        best = np.lexsort((cols, rows, fill))[0]
        return t + int(rows[best]), t + int(cols[best])

    def clear_cross(self, t: int) -> None:
        """Zero row ``t`` and column ``t`` outside the pivot, shrinking the pivot as needed."""
        D = self.D
        while True:
            dirty = False
            for i in range(t + 1, self.m):
                if D[i, t]:
                    self.row_add(i, t, -(D[i, t] // D[t, t]))
                    if D[i, t]:
                        self.row_swap(i, t)
                        dirty = True
            for j in range(t + 1, self.n):
                if D[t, j]:
                    self.col_add(j, t, -(D[t, j] // D[t, t]))
                    if D[t, j]:
                        self.col_swap(j, t)
                        dirty = True
            if not dirty and not D[t + 1 :, t].any() and not D[t, t + 1 :].any():
                return

    def first_non_multiple(self, t: int) -> int | None:
        pivot = self.D[t, t]
        rest = self.D[t + 1 :, t + 1 :]
        if rest.size == 0:
            return None
        bad = np.nonzero((rest % pivot) != 0)[0]
        return t + 1 + int(bad[0]) if len(bad) else None

    def run(self) -> list[int]:
        t = 0
        while t < min(self.m, self.n):
            pivot = self.choose_pivot(t)
            if pivot is None:
                break
            self.row_swap(t, pivot[0])
            self.col_swap(t, pivot[1])
            while True:
                self.clear_cross(t)
                row = self.first_non_multiple(t)
                if row is None:
                    break
                self.row_add(t, row, 1)
            if self.D[t, t] < 0:
                self.row_negate(t)
            t += 1
        return [int(self.D[i, i]) for i in range(min(self.m, self.n))]


def _sparse_diagonal(nrows: int, ncols: int, rows: SparseRows) -> list[int]:
    """Smith diagonal of a sparse matrix.

    Unit pivots are eliminated first, always taking the column with the
    fewest entries and then the shortest row holding a unit in it. The
    remainder that has no unit entries left is reduced densely.
    """
    rows = [dict(r) for r in rows]
    cols: dict[int, set[int]] = defaultdict(set)
    for i, row in enumerate(rows):
        for j in row:
            cols[j].add(i)

    heap = [(len(members), j) for j, members in cols.items() if members]
    heapq.heapify(heap)
    units = 0
    while heap:
        size, j = heapq.heappop(heap)
        members = cols.get(j)
        if not members:
            continue
        if len(members) != size:
            heapq.heappush(heap, (len(members), j))
            continue
        candidates = [i for i in members if abs(rows[i][j]) == 1]
        if not candidates:
            continue
        i = min(candidates, key=lambda r: (len(rows[r]), r))
        pivot_row = rows[i]
        pivot = pivot_row[j]
        for r in list(members):
            if r == i:
                continue
            target = rows[r]
            factor = target[j] * pivot
            for c, v in pivot_row.items():
                value = target.get(c, 0) - factor * v
                if value:
                    if c not in target:
                        cols[c].add(r)
                    target[c] = value
                elif c in target:
                    del target[c]
                    cols[c].discard(r)
        for c in pivot_row:
            cols[c].discard(i)
        rows[i] = {}
        del cols[j]
        units += 1
        for c in pivot_row:
            if cols.get(c):
                heapq.heappush(heap, (len(cols[c]), c))

    remaining_rows = [row for row in rows if row]
    remaining_cols = sorted({c for row in remaining_rows for c in row})
    logger.debug(
        "sparse SNF on %dx%d: %d unit pivots, dense remainder %dx%d",
        nrows,
        ncols,
        units,
        len(remaining_rows),
        len(remaining_cols),
    )
    tail: list[int] = []
    if remaining_rows:
        position = {c: k for k, c in enumerate(remaining_cols)}
        dense = np.zeros((len(remaining_rows), len(remaining_cols)), dtype=object)
        for k, row in enumerate(remaining_rows):
            for c, v in row.items():
                dense[k, position[c]] = v
        tail = [d for d in _DenseReducer(dense, transforms=False).run() if d]
    diagonal = [1] * units + tail
    return diagonal + [0] * (min(nrows, ncols) - len(diagonal))


def smith_normal_form(matrix: IntMatrix, *, transforms: bool = False) -> SmithNormalForm:
    """Smith normal form of an integer matrix.

    Args:
        matrix: The matrix to diagonalise.
        transforms: Also return unimodular ``left``/``right`` with
            ``left @ matrix @ right == diag`` and their inverses. This forces
            the dense engine.

    Returns:
        The diagonal ``d_1 | d_2 | ... | d_k`` (zeros last) and the transforms if requested.

    Example:
        ```python
        smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]])).diagonal
        # (2, 4)
        ```
    """
    m, n = matrix.shape
    if matrix.is_sparse and not transforms and m and n:
        logger.debug("SNF engine: sparse (%dx%d, density %.4f)", m, n, matrix.density)
        return SmithNormalForm(tuple(_sparse_diagonal(m, n, matrix.sparse_rows())), None, None, None, None)

    logger.debug("SNF engine: dense (%dx%d, transforms=%s)", m, n, transforms)
    reducer = _DenseReducer(matrix.to_dense(), transforms=transforms)
    diagonal = tuple(reducer.run())
    if not transforms:
        return SmithNormalForm(diagonal, None, None, None, None)
    return SmithNormalForm(
        diagonal,
        IntMatrix.from_array(reducer.U),
        IntMatrix.from_array(reducer.V),
        IntMatrix.from_array(reducer.Ui),
        IntMatrix.from_array(reducer.Vi),
    )


def rank(matrix: IntMatrix) -> int:
    return smith_normal_form(matrix).rank


def kernel_basis(matrix: IntMatrix) -> IntMatrix:
    """Rows spanning ``{v : v @ matrix = 0}``, read off the left Smith transform."""
    snf = smith_normal_form(matrix, transforms=True)
    assert snf.left is not None
    return IntMatrix.from_rows(snf.left.tolist()[snf.rank :], ncols=matrix.nrows)


# ---------------------------------------------------------------------------
# Finite(ly generated) abelian groups
# ---------------------------------------------------------------------------


def _invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors of a direct sum of cyclic groups of the given orders."""
    exponents: dict[int, list[int]] = defaultdict(list)
    for order in orders:
        if order < 1:
            raise ValueError(f"cyclic factor orders must be positive, got {order}")
        for prime, exponent in factorint(order).items():
            exponents[prime].append(exponent)
    if not exponents:
        return ()
    length = max(len(es) for es in exponents.values())
    factors = [1] * length
    for prime, es in exponents.items():
        for k, e in enumerate(sorted(es, reverse=True)):
            factors[k] *= prime**e
    return tuple(reversed(factors))


class FinAbGroup(BaseModel):
    """A finitely generated abelian group ``Z^rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | ... | d_k``.

    Attributes:
        torsion_free_rank: The rank of the free part.
        invariant_factors: Torsion invariant factors, each at least 2 and dividing the next.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    torsion_free_rank: int = Field(default=0, ge=0)
    invariant_factors: tuple[int, ...] = Field(default=())

    @model_validator(mode="after")
    def _check_chain(self) -> FinAbGroup:
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError(f"invariant factors must be at least 2, got {d}")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError(f"invariant factor {a} does not divide {b}")
        return self

    @classmethod
    def from_orders(cls, orders: Iterable[int] = (), torsion_free_rank: int = 0) -> FinAbGroup:
        """Normalise any list of cyclic orders (1s allowed) into invariant-factor form."""
        return cls(torsion_free_rank=torsion_free_rank, invariant_factors=_invariant_factors(orders))

    @classmethod
    def trivial(cls) -> FinAbGroup:
        return cls()

    @classmethod
    def free(cls, rank: int) -> FinAbGroup:
        return cls(torsion_free_rank=rank)

    @classmethod
    def cyclic(cls, n: int) -> FinAbGroup:
        return cls.from_orders([n])

    @classmethod
    def elementary(cls, p: int, k: int) -> FinAbGroup:
        """``(Z/p)^k``."""
        return cls.from_orders([p] * k)

    @property
    def is_finite(self) -> bool:
        return self.torsion_free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.torsion_free_rank == 0 and not self.invariant_factors

    @property
    def order(self) -> int | None:
        """Cardinality, or None for an infinite group."""
        if not self.is_finite:
            return None
        return math.prod(self.invariant_factors)

    def primary_decomposition(self) -> dict[int, list[int]]:
        """Prime powers of the torsion part, grouped by prime."""
        parts: dict[int, list[int]] = defaultdict(list)
        for d in self.invariant_factors:
            for prime, exponent in factorint(d).items():
                parts[prime].append(prime**exponent)
        return {prime: sorted(powers) for prime, powers in sorted(parts.items())}

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        parts = []
        if self.torsion_free_rank:
            parts.append("Z" if self.torsion_free_rank == 1 else f"Z^{self.torsion_free_rank}")
        counts: dict[int, int] = defaultdict(int)
        for d in self.invariant_factors:
            counts[d] += 1
        for d, k in counts.items():
            parts.append(f"Z/{d}" if k == 1 else f"(Z/{d})^{k}")
        return " + ".join(parts)


def cokernel(matrix: IntMatrix) -> FinAbGroup:
    """``Z^cols`` modulo the row lattice of ``matrix``."""
    snf = smith_normal_form(matrix)
    return FinAbGroup.from_orders(
        [d for d in snf.diagonal if d > 1],
        torsion_free_rank=matrix.ncols - snf.rank,
    )


def homology_quotient(
    d_out: IntMatrix,
    d_in: IntMatrix,
    *,
    route: Literal["auto", "kernel", "summand"] = "auto",
) -> FinAbGroup:
    """Homology ``ker(d_out) / im(d_in)`` at the chain space between two boundary maps.

    ``d_in`` maps into the chain space (its columns) and ``d_out`` maps out of
    it (its rows). The ``kernel`` route takes a kernel lattice basis from the
    Smith transforms of ``d_out`` and computes the cokernel of ``d_in`` in
    those coordinates. The ``summand`` route uses that the kernel is a direct
    summand, so the torsion is the torsion of ``coker(d_in)`` and the free rank
    is ``dim - rank(d_out) - rank(d_in)``; it only needs Smith diagonals and
    runs on sparse matrices. ``auto`` picks the kernel route for chain spaces
    of rank at most 100.

    Raises:
        ChainConditionViolated: If ``d_in @ d_out`` is not zero.
    """
    if d_in.ncols != d_out.nrows:
        raise ValueError(f"boundary maps do not compose: {d_in.shape} then {d_out.shape}")
    if not (d_in @ d_out).is_zero():
        raise ChainConditionViolated("consecutive boundary maps do not compose to zero")

    dim = d_out.nrows
    if route == "auto":
        route = "kernel" if dim <= KERNEL_ROUTE_MAX_RANK else "summand"

    if route == "kernel":
        snf = smith_normal_form(d_out, transforms=True)
        assert snf.left_inverse is not None
        coordinates = (d_in @ snf.left_inverse).select_columns(range(snf.rank, dim))
        return cokernel(coordinates)

    snf_out = smith_normal_form(d_out)
    snf_in = smith_normal_form(d_in)
    return FinAbGroup.from_orders(
        [d for d in snf_in.diagonal if d > 1],
        torsion_free_rank=dim - snf_out.rank - snf_in.rank,
    )


def min_generators(group: FinAbGroup) -> int:
    """Minimal number of generators ``d(A)``: free rank plus number of invariant factors."""
    return group.torsion_free_rank + len(group.invariant_factors)


def direct_sum(first: FinAbGroup, second: FinAbGroup) -> FinAbGroup:
    return FinAbGroup.from_orders(
        first.invariant_factors + second.invariant_factors,
        torsion_free_rank=first.torsion_free_rank + second.torsion_free_rank,
    )


def direct_sum_all(groups: Iterable[FinAbGroup]) -> FinAbGroup:
    return reduce(direct_sum, groups, FinAbGroup.trivial())


def tensor(first: FinAbGroup, second: FinAbGroup) -> FinAbGroup:
    """``A (x)_Z B`` for finite ``A`` and ``B``: ``Z/gcd(d_i, e_j)`` over all factor pairs.

    Raises:
        InfiniteAbelianError: If either group has a free part.
    """
    if not (first.is_finite and second.is_finite):
        raise InfiniteAbelianError("tensor products are only supported for finite abelian groups")
    return FinAbGroup.from_orders(math.gcd(d, e) for d in first.invariant_factors for e in second.invariant_factors)


def matrix_summary(matrix: IntMatrix) -> dict[str, Any]:
    """Shape and storage statistics, for logs and reports."""
    return {"rows": matrix.nrows, "cols": matrix.ncols, "nnz": matrix.nnz, "sparse": matrix.is_sparse}


__all__ = [
    "FinAbGroup",
    "IntMatrix",
    "SmithNormalForm",
    "cokernel",
    "direct_sum",
    "direct_sum_all",
    "homology_quotient",
    "kernel_basis",
    "matrix_summary",
    "min_generators",
    "rank",
    "smith_normal_form",
    "tensor",
]
