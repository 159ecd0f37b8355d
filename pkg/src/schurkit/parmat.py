"""Block matrices of non-negative integers decorated with partitions.

Rows index the strands of the top object (codomain), columns those of the
bottom object (domain).  Both are grouped into blocks by the components of a
multicomposition, with blocks numbered from 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .combinatorics import (
    Composition,
    DomainError,
    MultiComposition,
    Partition,
    SemistandardTableau,
    enumerate_partitions,
    flatten_parts,
    is_partition,
    partitions_in_box,
    size,
)

NMatrix = tuple[tuple[int, ...], ...]
PartitionMatrix = tuple[tuple[Partition, ...], ...]


@lru_cache(maxsize=None)
def enumerate_nmatrices(row_sums: Composition, col_sums: Composition) -> tuple[NMatrix, ...]:
    """All non-negative integer matrices with the given margins, lexicographically by rows."""
    row_sums, col_sums = tuple(row_sums), tuple(col_sums)
    if sum(row_sums) != sum(col_sums):
        raise DomainError("row and column totals differ")
    out: list[NMatrix] = []
    ncols = len(col_sums)

    def fill_row(k: int, remaining: tuple[int, ...], acc: list[tuple[int, ...]]) -> None:
        if k == len(row_sums):
            if not any(remaining):
                out.append(tuple(acc))
            return
        for row in _row_choices(row_sums[k], remaining):
            acc.append(row)
            fill_row(k + 1, tuple(r - v for r, v in zip(remaining, row)), acc)
            acc.pop()

    if not row_sums:
        return ((),) if not any(col_sums) else ()
    fill_row(0, col_sums, [])
    if ncols == 0:
        return tuple(out)
    return tuple(sorted(out, reverse=True))


def _row_choices(total: int, caps: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    if not caps:
        if total == 0:
            yield ()
        return
    for first in range(min(total, caps[0]), -1, -1):
        if total - first <= sum(caps[1:]):
            for rest in _row_choices(total - first, caps[1:]):
                yield (first,) + rest


def _block_index(parts: MultiComposition) -> list[tuple[int, int]]:
    """``(block, index_within_block)`` for each flattened position, both 1-based."""
    return [(p, i) for p, comp in enumerate(parts, start=1) for i in range(1, len(comp) + 1)]


@dataclass(frozen=True)
class ParMat:
    """A pair (A, P) with row blocks ``row_blocks`` and column blocks ``col_blocks``."""

    A: NMatrix
    P: PartitionMatrix
    row_blocks: MultiComposition
    col_blocks: MultiComposition

    def __post_init__(self) -> None:
        rows, cols = flatten_parts(self.row_blocks), flatten_parts(self.col_blocks)
        if len(self.A) != len(rows) or any(len(r) != len(cols) for r in self.A):
            raise DomainError("matrix shape does not match the block structure")
        if len(self.P) != len(rows) or any(len(r) != len(cols) for r in self.P):
            raise DomainError("partition matrix has the wrong shape")
        for i, row in enumerate(self.A):
            if sum(row) != rows[i]:
                raise DomainError("row sums do not match")
        for j in range(len(cols)):
            if sum(self.A[i][j] for i in range(len(rows))) != cols[j]:
                raise DomainError("column sums do not match")
        for i, row in enumerate(self.P):
            for j, eta in enumerate(row):
                a = self.A[i][j]
                if a < 0 or not is_partition(eta):
                    raise DomainError("entries must be non-negative and partitions")
                if eta and eta[0] > a:
                    raise DomainError("partition part exceeds the matrix entry")

    # ---- block views
    @property
    def row_index(self) -> list[tuple[int, int]]:
        return _block_index(self.row_blocks)

    @property
    def col_index(self) -> list[tuple[int, int]]:
        return _block_index(self.col_blocks)

    def entry(self, p: int, i: int, q: int, j: int) -> tuple[int, Partition]:
        r = self.row_index.index((p, i))
        c = self.col_index.index((q, j))
        return self.A[r][c], self.P[r][c]

    def block(self, p: int, q: int) -> tuple[NMatrix, PartitionMatrix]:
        rows = [k for k, (b, _) in enumerate(self.row_index) if b == p]
        cols = [k for k, (b, _) in enumerate(self.col_index) if b == q]
        return (
            tuple(tuple(self.A[r][c] for c in cols) for r in rows),
            tuple(tuple(self.P[r][c] for c in cols) for r in rows),
        )

    def is_flat(self) -> bool:
        """Partition lengths bounded by ``min(p, q) - 1`` in block ``(p, q)``."""
        for r, (p, _) in enumerate(self.row_index):
            for c, (q, _) in enumerate(self.col_index):
                if len(self.P[r][c]) > min(p, q) - 1:
                    return False
        return True

    def degree(self) -> int:
        return degree(self)

    def to_json(self) -> dict:
        return {
            "A": [list(r) for r in self.A],
            "P": [[list(eta) for eta in r] for r in self.P],
            "row_blocks": [list(c) for c in self.row_blocks],
            "col_blocks": [list(c) for c in self.col_blocks],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "ParMat":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            A = tuple(tuple(int(v) for v in r) for r in data["A"])
            rows = tuple(tuple(int(v) for v in c) for c in data["row_blocks"])
            cols = tuple(tuple(int(v) for v in c) for c in data["col_blocks"])
            if "P" in data:
                P = tuple(tuple(tuple(int(v) for v in eta) for eta in r) for r in data["P"])
            else:
                P = tuple(tuple(() for _ in r) for r in A)
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed ParMat JSON: {exc}") from exc
        return cls(A, P, rows, cols)


def flatten(x: ParMat) -> tuple[NMatrix, PartitionMatrix]:
    """Forget the block structure."""
    return x.A, x.P


def reshape(A: NMatrix, P: PartitionMatrix, row_blocks: MultiComposition, col_blocks: MultiComposition) -> ParMat:
    return ParMat(tuple(map(tuple, A)), tuple(tuple(map(tuple, r)) for r in P), row_blocks, col_blocks)


def empty_partitions(A: NMatrix) -> PartitionMatrix:
    return tuple(tuple(() for _ in row) for row in A)


def degree(x: ParMat) -> int:
    """Total dot weight: the sum of all parts of all partitions."""
    return sum(sum(eta) for row in x.P for eta in row)


def _decorations(A: NMatrix, choices, budget: int | None) -> Iterator[PartitionMatrix]:
    """Cartesian product of per-entry partition lists ``choices(r, c, a)`` within a degree budget."""
    cells = [(r, c) for r in range(len(A)) for c in range(len(A[r]))]
    pools = [choices(r, c, A[r][c]) for r, c in cells]
    ncols = len(A[0]) if A else 0
    acc: list[Partition] = []

    def rec(k: int, left) -> Iterator[PartitionMatrix]:
        if k == len(cells):
            yield tuple(tuple(acc[r * ncols : (r + 1) * ncols]) for r in range(len(A)))
            return
        for eta in pools[k]:
            w = sum(eta)
            if left is not None and w > left:
                continue
            acc.append(eta)
            yield from rec(k + 1, None if left is None else left - w)
            acc.pop()

    return rec(0, budget)


def enumerate_parmat(
    nu: MultiComposition, mu: MultiComposition, degree_cap: int
) -> list[ParMat]:
    """All decorated matrices in Hom(mu, nu) of total dot degree at most ``degree_cap``.

    Partition entries have parts bounded by the matrix entry and no length bound,
    so the cap is what keeps the list finite.
    """
    if size(nu) != size(mu):
        return []
    if degree_cap < 0:
        raise DomainError("degree cap must be non-negative")
    out = []
    for A in enumerate_nmatrices(flatten_parts(nu), flatten_parts(mu)):

        def choices(r, c, a):
            if a == 0:
                return [()]
            return [eta for n in range(degree_cap + 1) for eta in enumerate_partitions(n, max_part=a)]

        for P in _decorations(A, choices, degree_cap):
            out.append(ParMat(A, P, nu, mu))
    return out


def enumerate_parmat_flat(
    nu: MultiComposition, mu: MultiComposition, degree_cap: int | None = None
) -> list[ParMat]:
    """All flat decorated matrices: in block (p, q) partitions have length < min(p, q)."""
    if len(nu) != len(mu):
        raise DomainError("levels differ")
    if size(nu) != size(mu):
        return []
    rblocks = [p for p, _ in _block_index(nu)]
    cblocks = [q for q, _ in _block_index(mu)]
    out = []
    for A in enumerate_nmatrices(flatten_parts(nu), flatten_parts(mu)):

        def choices(r, c, a):
            bound = min(rblocks[r], cblocks[c]) - 1
            if a == 0 or bound <= 0:
                return [()]
            return partitions_in_box(a, bound, degree_cap)

        for P in _decorations(A, choices, degree_cap):
            out.append(ParMat(A, P, nu, mu))
    return out


def count_parmat_flat(nu: MultiComposition, mu: MultiComposition) -> int:
    """Cardinality without materializing the elements."""
    if size(nu) != size(mu):
        return 0
    rblocks = [p for p, _ in _block_index(nu)]
    cblocks = [q for q, _ in _block_index(mu)]
    total = 0
    for A in enumerate_nmatrices(flatten_parts(nu), flatten_parts(mu)):
        prod = 1
        for r, row in enumerate(A):
            for c, a in enumerate(row):
                bound = min(rblocks[r], cblocks[c]) - 1
                if a and bound > 0:
                    prod *= _box_count(a, bound)
        total += prod
    return total


@lru_cache(maxsize=None)
def _box_count(max_part: int, max_len: int) -> int:
    from math import comb

    return comb(max_part + max_len, max_len)


def a_matrix_of_sst(T: SemistandardTableau) -> ParMat:
    """Entry ``((p, i), (q, j))`` counts the letters ``i_p`` in row ``j`` of component ``q``."""
    rows = _block_index(T.type)
    cols = _block_index(T.shape)
    rpos = {key: k for k, key in enumerate(rows)}
    cpos = {key: k for k, key in enumerate(cols)}
    A = [[0] * len(cols) for _ in rows]
    for q, j, _, (i, p) in T.entries():
        A[rpos[(p, i)]][cpos[(q, j)]] += 1
    At = tuple(map(tuple, A))
    return ParMat(At, empty_partitions(At), T.type, T.shape)


def identity_parmat(lam: MultiComposition) -> ParMat:
    parts = flatten_parts(lam)
    A = tuple(tuple(parts[i] if i == j else 0 for j in range(len(parts))) for i in range(len(parts)))
    return ParMat(A, empty_partitions(A), lam, lam)
