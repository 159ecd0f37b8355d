"""Partitions, compositions, multicompositions, permutations and tableaux.

Conventions used throughout the package:

* A partition or composition is a tuple of ints; a multicomposition is a
  tuple of such tuples (empty components kept in place).
* Permutations are one-line tuples over ``1..n`` and multiply as functions:
  ``compose(v, w)(i) == v(w(i))``.
* Tableau entries of semistandard tableaux are pairs ``(i, p)`` meaning
  "row ``i`` of component ``p`` of the type"; they compare by ``(p, i)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

Partition = tuple[int, ...]
Composition = tuple[int, ...]
MultiComposition = tuple[tuple[int, ...], ...]
Permutation = tuple[int, ...]
Entry = tuple[int, int]


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


# ---------------------------------------------------------------------------
# partitions and compositions


def is_partition(parts: Sequence[int]) -> bool:
    return all(p > 0 for p in parts) and all(
        parts[k] >= parts[k + 1] for k in range(len(parts) - 1)
    )


def is_strict_composition(parts: Sequence[int]) -> bool:
    return all(p > 0 for p in parts)


def enumerate_partitions(
    n: int, max_part: int | None = None, max_len: int | None = None
) -> list[Partition]:
    """All partitions of ``n`` with bounded parts/length, in decreasing lex order."""
    if n < 0:
        raise DomainError("n must be non-negative")
    cap = n if max_part is None else min(max_part, n)
    out: list[Partition] = []

    def rec(rest: int, bound: int, prefix: list[int]) -> None:
        if rest == 0:
            out.append(tuple(prefix))
            return
        if max_len is not None and len(prefix) >= max_len:
            return
        for first in range(min(bound, rest), 0, -1):
            prefix.append(first)
            rec(rest - first, first, prefix)
            prefix.pop()

    rec(n, cap, [])
    return out


def partitions_in_box(max_part: int, max_len: int, max_size: int | None = None) -> list[Partition]:
    """Partitions with parts <= max_part, length <= max_len and size <= max_size."""
    top = max_part * max_len if max_size is None else min(max_size, max_part * max_len)
    out: list[Partition] = []
    for n in range(top + 1):
        out.extend(enumerate_partitions(n, max_part=max_part, max_len=max_len))
    return out


def dual_partition(parts: Sequence[int]) -> Partition:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > k) for k in range(parts[0]))


@lru_cache(maxsize=None)
def strict_compositions(n: int) -> tuple[Composition, ...]:
    """All compositions of ``n`` into positive parts, lexicographically sorted."""
    if n == 0:
        return ((),)
    out = []
    for first in range(1, n + 1):
        for rest in strict_compositions(n - first):
            out.append((first,) + rest)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _weak_splits(m: int, k: int) -> tuple[tuple[int, ...], ...]:
    if k == 0:
        return ((),) if m == 0 else ()
    out = []
    for first in range(m + 1):
        for rest in _weak_splits(m - first, k - 1):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_multicompositions(m: int, ell: int) -> tuple[MultiComposition, ...]:
    """Strict ``ell``-multicompositions of ``m`` (empty components allowed)."""
    out = []
    for sizes in _weak_splits(m, ell):
        pools = [strict_compositions(s) for s in sizes]
        for combo in _product(pools):
            out.append(tuple(combo))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def enumerate_multipartitions(m: int, ell: int) -> tuple[MultiComposition, ...]:
    out = []
    for sizes in _weak_splits(m, ell):
        pools = [tuple(enumerate_partitions(s)) for s in sizes]
        for combo in _product(pools):
            out.append(tuple(combo))
    return tuple(sorted(out))


def _product(pools: Sequence[Sequence]) -> Iterator[tuple]:
    if not pools:
        yield ()
        return
    for head in pools[0]:
        for tail in _product(pools[1:]):
            yield (head,) + tail


def size(lam: MultiComposition) -> int:
    return sum(sum(c) for c in lam)


def flatten_parts(lam: MultiComposition) -> Composition:
    """The forgetful composition: concatenate components, dropping nothing but empties."""
    return tuple(p for comp in lam for p in comp)


def is_multipartition(lam: MultiComposition) -> bool:
    return all(is_partition(c) for c in lam)


def dominance_leq(lam: MultiComposition, mu: MultiComposition) -> bool:
    """True iff ``lam`` is dominated by ``mu`` (component-weighted partial sums)."""
    if len(lam) != len(mu):
        raise DomainError("levels differ")
    if size(lam) != size(mu):
        raise DomainError("sizes differ")
    before_l = before_m = 0
    for cl, cm in zip(lam, mu):
        run_l, run_m = before_l, before_m
        for h in range(max(len(cl), len(cm))):
            run_l += cl[h] if h < len(cl) else 0
            run_m += cm[h] if h < len(cm) else 0
            if run_l > run_m:
                return False
        if before_l > before_m:
            return False
        before_l += sum(cl)
        before_m += sum(cm)
    return True


# ---------------------------------------------------------------------------
# permutations


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def compose(v: Permutation, w: Permutation) -> Permutation:
    return tuple(v[w[i] - 1] for i in range(len(w)))


def inverse(w: Permutation) -> Permutation:
    out = [0] * len(w)
    for i, wi in enumerate(w, start=1):
        out[wi - 1] = i
    return tuple(out)


def simple_transposition(i: int, n: int) -> Permutation:
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def is_permutation(w: Sequence[int]) -> bool:
    return sorted(w) == list(range(1, len(w) + 1))


def perm_length(w: Permutation) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


@lru_cache(maxsize=None)
def reduced_word(w: Permutation) -> tuple[int, ...]:
    """Indices ``(i1, ..., ik)`` with ``w = s_i1 * ... * s_ik`` and ``k`` minimal."""
    cur = list(w)
    word: list[int] = []
    while True:
        for i in range(len(cur) - 1):
            if cur[i] > cur[i + 1]:
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                word.append(i + 1)
                break
        else:
            break
    word.reverse()
    return tuple(word)


def block_bounds(blocks: Sequence[int]) -> list[tuple[int, int]]:
    out, start = [], 0
    for b in blocks:
        out.append((start, start + b))
        start += b
    return out


@lru_cache(maxsize=None)
def block_increasing_perms(blocks: tuple[int, ...]) -> tuple[Permutation, ...]:
    """Permutations increasing on each block of positions.

    These are the shortest representatives of the cosets ``w * S_blocks``.
    """
    n = sum(blocks)
    out: list[Permutation] = []

    def rec(k: int, remaining: tuple[int, ...], acc: list[int]) -> None:
        if k == len(blocks):
            out.append(tuple(acc))
            return
        for chosen in combinations(remaining, blocks[k]):
            rest = tuple(x for x in remaining if x not in chosen)
            rec(k + 1, rest, acc + list(chosen))

    rec(0, tuple(range(1, n + 1)), [])
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def young_subgroup(blocks: tuple[int, ...]) -> tuple[Permutation, ...]:
    bounds = block_bounds(blocks)
    pieces = [list(permutations(range(lo + 1, hi + 1))) for lo, hi in bounds]
    return tuple(tuple(x for piece in combo for x in piece) for combo in _product(pieces))


def crossing_permutation(a: int, b: int) -> Permutation:
    """The permutation sending positions ``1..a`` to ``b+1..b+a`` and the rest to ``1..b``."""
    return tuple(i + b if i <= a else i - a for i in range(1, a + b + 1))


# ---------------------------------------------------------------------------
# tableaux


@dataclass(frozen=True)
class StandardTableau:
    shape: MultiComposition
    rows: tuple[tuple[tuple[int, ...], ...], ...]

    def entries(self) -> Iterator[tuple[int, int, int, int]]:
        """Yield ``(component, row, column, value)`` with 1-based indices."""
        for c, comp in enumerate(self.rows, start=1):
            for r, row in enumerate(comp, start=1):
                for k, v in enumerate(row, start=1):
                    yield c, r, k, v

    def cell_of(self) -> dict[int, tuple[int, int, int]]:
        return {v: (c, r, k) for c, r, k, v in self.entries()}


@dataclass(frozen=True)
class SemistandardTableau:
    shape: MultiComposition
    type: MultiComposition
    rows: tuple[tuple[tuple[Entry, ...], ...], ...]

    def entries(self) -> Iterator[tuple[int, int, int, Entry]]:
        for c, comp in enumerate(self.rows, start=1):
            for r, row in enumerate(comp, start=1):
                for k, v in enumerate(row, start=1):
                    yield c, r, k, v

    def to_json(self) -> dict:
        return tableau_to_json(self)


def entry_key(e: Entry) -> tuple[int, int]:
    return (e[1], e[0])


def _shape_cells(shape: MultiComposition) -> list[tuple[int, int, int]]:
    return [
        (c, r, k)
        for c, comp in enumerate(shape, start=1)
        for r, length in enumerate(comp, start=1)
        for k in range(1, length + 1)
    ]


def canonical_tableau(lam: MultiComposition) -> StandardTableau:
    """Fill ``1..m`` along rows, component by component."""
    counter = 0
    comps = []
    for comp in lam:
        rows = []
        for length in comp:
            rows.append(tuple(range(counter + 1, counter + length + 1)))
            counter += length
        comps.append(tuple(rows))
    return StandardTableau(tuple(tuple(c) for c in lam), tuple(comps))


def is_standard(t: StandardTableau) -> bool:
    values = sorted(v for *_, v in t.entries())
    if values != list(range(1, len(values) + 1)):
        return False
    for comp in t.rows:
        for r, row in enumerate(comp):
            if any(row[k] >= row[k + 1] for k in range(len(row) - 1)):
                return False
            if r > 0:
                above = comp[r - 1]
                if any(k >= len(above) or above[k] >= row[k] for k in range(len(row))):
                    return False
    return True


@lru_cache(maxsize=None)
def standard_tableaux(lam: MultiComposition) -> tuple[StandardTableau, ...]:
    """All standard tableaux of a multipartition shape, by placing ``1..m`` in turn."""
    if not is_multipartition(lam):
        raise DomainError("standard tableaux are enumerated for multipartitions only")
    m = size(lam)
    out: list[StandardTableau] = []
    filling = [[[] for _ in comp] for comp in lam]

    def rec(k: int) -> None:
        if k > m:
            out.append(
                StandardTableau(lam, tuple(tuple(tuple(r) for r in comp) for comp in filling))
            )
            return
        for c, comp in enumerate(lam):
            for r, length in enumerate(comp):
                row = filling[c][r]
                if len(row) >= length:
                    continue
                if r > 0 and len(filling[c][r - 1]) <= len(row):
                    continue
                row.append(k)
                rec(k + 1)
                row.pop()

    rec(1)
    return tuple(out)


def act_on_tableau(t: StandardTableau, w: Permutation) -> StandardTableau:
    """Right action on entries: the entry ``k`` becomes ``w^{-1}(k)``.

    With functions composing as ``(v*w)(i) = v(w(i))`` this is the right
    action matching the group product, i.e. ``(t.v).w == t.(v*w)``.
    """
    winv = inverse(w)
    rows = tuple(tuple(tuple(winv[v - 1] for v in row) for row in comp) for comp in t.rows)
    return StandardTableau(t.shape, rows)


def minimal_coset_rep(t: StandardTableau) -> Permutation:
    """The shortest ``d`` with ``t == canonical_tableau(shape).d``."""
    if not is_standard(t):
        raise DomainError("tableau is not standard")
    base = canonical_tableau(t.shape)
    m = sum(1 for _ in t.entries())
    target = [0] * m
    base_cells = base.cell_of()
    t_cells = t.cell_of()
    cell_to_t = {cell: v for v, cell in t_cells.items()}
    # act_on_tableau puts w^{-1}(k) where k was, so w^{-1}(k) = t(cell of k in base).
    for k in range(1, m + 1):
        target[k - 1] = cell_to_t[base_cells[k]]
    return inverse(tuple(target))


# ---- semistandard tableaux


def _horizontal_strips(
    current: list[list[int]], shape: MultiComposition, count: int, max_comp: int
) -> Iterator[list[tuple[int, int, int]]]:
    """Ways to add ``count`` cells as a horizontal strip in components ``< max_comp``.

    Yields lists of ``(component, row, added)`` with positive ``added``.
    """
    slots: list[tuple[int, int, int]] = []
    for c in range(max_comp):
        comp = shape[c]
        cur = current[c]
        for r, length in enumerate(comp):
            ceiling = length if r == 0 else min(length, cur[r - 1])
            room = ceiling - cur[r]
            if room > 0:
                slots.append((c, r, room))

    def rec(k: int, left: int) -> Iterator[list[tuple[int, int, int]]]:
        if left == 0:
            yield []
            return
        if k == len(slots):
            return
        c, r, room = slots[k]
        for add in range(min(room, left), -1, -1):
            for rest in rec(k + 1, left - add):
                yield ([(c, r, add)] if add else []) + rest

    yield from rec(0, count)


def enumerate_sst(lam: MultiComposition, mu: MultiComposition) -> list[SemistandardTableau]:
    """All semistandard ``lam``-tableaux of type ``mu``."""
    if len(lam) != len(mu) or size(lam) != size(mu):
        return []
    if not is_multipartition(lam):
        raise DomainError("shape must be a multipartition")
    return list(_sst_cached(tuple(map(tuple, lam)), tuple(map(tuple, mu))))


@lru_cache(maxsize=None)
def _sst_cached(lam: MultiComposition, mu: MultiComposition) -> tuple[SemistandardTableau, ...]:
    values = [(i, p) for p in range(1, len(mu) + 1) for i in range(1, len(mu[p - 1]) + 1)]
    out: list[SemistandardTableau] = []
    current = [[0] * len(comp) for comp in lam]
    filling: list[list[list[Entry]]] = [[[] for _ in comp] for comp in lam]

    def rec(k: int) -> None:
        if k == len(values):
            if all(current[c][r] == lam[c][r] for c in range(len(lam)) for r in range(len(lam[c]))):
                out.append(
                    SemistandardTableau(
                        lam, mu, tuple(tuple(tuple(row) for row in comp) for comp in filling)
                    )
                )
            return
        i, p = values[k]
        count = mu[p - 1][i - 1]
        for strip in list(_horizontal_strips(current, lam, count, p)):
            for c, r, add in strip:
                current[c][r] += add
                filling[c][r].extend([(i, p)] * add)
            rec(k + 1)
            for c, r, add in strip:
                current[c][r] -= add
                del filling[c][r][len(filling[c][r]) - add :]

    rec(0)
    out.sort(key=lambda s: json.dumps(tableau_to_json(s), sort_keys=True))
    return tuple(out)


def is_semistandard(s: SemistandardTableau) -> bool:
    counts: dict[Entry, int] = {}
    for c, comp in enumerate(s.rows, start=1):
        for r, row in enumerate(comp):
            for k, e in enumerate(row):
                if e[1] < c:
                    return False
                counts[e] = counts.get(e, 0) + 1
                if k and entry_key(row[k - 1]) > entry_key(e):
                    return False
                if r and (k >= len(comp[r - 1]) or entry_key(comp[r - 1][k]) >= entry_key(e)):
                    return False
    expected = {
        (i, p): n
        for p, comp in enumerate(s.type, start=1)
        for i, n in enumerate(comp, start=1)
    }
    return counts == expected


def initial_sst(lam: MultiComposition) -> SemistandardTableau:
    """The unique tableau of shape and type ``lam``: row ``i`` of component ``p`` holds ``i_p``."""
    rows = tuple(
        tuple(tuple([(i, p)] * length) for i, length in enumerate(comp, start=1))
        for p, comp in enumerate(lam, start=1)
    )
    return SemistandardTableau(lam, lam, rows)


def mu_map(s: StandardTableau, mu: MultiComposition) -> SemistandardTableau:
    """Replace each entry ``k`` by ``i_p`` when ``k`` lies in row ``i`` of component ``p`` of ``t^mu``."""
    base = canonical_tableau(mu)
    label: dict[int, Entry] = {}
    for c, r, _k, v in base.entries():
        label[v] = (r, c)
    rows = tuple(tuple(tuple(label[v] for v in row) for row in comp) for comp in s.rows)
    return SemistandardTableau(s.shape, mu, rows)


def mu_fiber(S: SemistandardTableau) -> list[StandardTableau]:
    """All standard tableaux ``s`` with ``mu_map(s, type) == S``.

    Each label's cells are filled with the consecutive block of numbers
    that ``t^type`` assigns to that label; within one row of ``S`` the block
    numbers must increase, so the fiber is a product of ordered set splits.
    """
    mu = S.type
    base = canonical_tableau(mu)
    block: dict[Entry, list[int]] = {}
    for c, r, _k, v in base.entries():
        block.setdefault((r, c), []).append(v)
    # cells of S grouped by label, grouped further by (component, row)
    segments: dict[Entry, list[tuple[int, int, list[int]]]] = {}
    for c, comp in enumerate(S.rows):
        for r, row in enumerate(comp):
            cols_by_label: dict[Entry, list[int]] = {}
            for k, e in enumerate(row):
                cols_by_label.setdefault(e, []).append(k)
            for e, cols in cols_by_label.items():
                segments.setdefault(e, []).append((c, r, cols))
    per_label_choices = []
    labels = sorted(segments, key=entry_key)
    for e in labels:
        numbers = block[e]
        segs = segments[e]
        sizes = [len(cols) for _, _, cols in segs]
        choices = []
        for split in _ordered_splits(tuple(numbers), tuple(sizes)):
            choices.append([(c, r, cols, part) for (c, r, cols), part in zip(segs, split)])
        per_label_choices.append(choices)
    out = []
    for combo in _product(per_label_choices):
        grid = [[list(row) for row in comp] for comp in S.rows]
        for assignment in combo:
            for c, r, cols, part in assignment:
                for k, v in zip(cols, part):
                    grid[c][r][k] = v
        t = StandardTableau(S.shape, tuple(tuple(tuple(row) for row in comp) for comp in grid))
        if is_standard(t):
            out.append(t)
    out.sort(key=lambda t: t.rows)
    return out


def _ordered_splits(numbers: tuple[int, ...], sizes: tuple[int, ...]) -> Iterator[list[tuple[int, ...]]]:
    if not sizes:
        yield []
        return
    first = sizes[0]
    for chosen in combinations(numbers, first):
        rest = tuple(x for x in numbers if x not in chosen)
        for tail in _ordered_splits(rest, sizes[1:]):
            yield [chosen] + tail


# ---- JSON


def tableau_to_json(t: SemistandardTableau | StandardTableau) -> dict:
    cells = []
    for c, r, k, v in t.entries():
        entry = [v[0], v[1]] if isinstance(v, tuple) else v
        cells.append({"comp": c, "row": r, "col": k, "entry": entry})
    out = {"shape": [list(comp) for comp in t.shape], "cells": cells}
    if isinstance(t, SemistandardTableau):
        out["type"] = [list(comp) for comp in t.type]
    return out


def tableau_from_json(data: dict) -> SemistandardTableau | StandardTableau:
    shape = tuple(tuple(int(x) for x in comp) for comp in data["shape"])
    grid: list[list[list]] = [[[None] * length for length in comp] for comp in shape]
    semistandard = False
    for cell in data["cells"]:
        entry = cell["entry"]
        if isinstance(entry, list):
            semistandard = True
            entry = (int(entry[0]), int(entry[1]))
        grid[cell["comp"] - 1][cell["row"] - 1][cell["col"] - 1] = entry
    if any(v is None for comp in grid for row in comp for v in row):
        raise DomainError("tableau has unfilled cells")
    rows = tuple(tuple(tuple(row) for row in comp) for comp in grid)
    if not semistandard:
        return StandardTableau(shape, rows)
    if "type" in data:
        mu = tuple(tuple(int(x) for x in comp) for comp in data["type"])
    else:
        mu = type_of_entries(rows, len(shape))
    return SemistandardTableau(shape, mu, rows)


def type_of_entries(rows: Iterable, ell: int) -> MultiComposition:
    counts: dict[Entry, int] = {}
    for comp in rows:
        for row in comp:
            for e in row:
                counts[e] = counts.get(e, 0) + 1
    out = []
    for p in range(1, ell + 1):
        comp = []
        i = 1
        while (i, p) in counts:
            comp.append(counts[(i, p)])
            i += 1
        out.append(tuple(comp))
    return tuple(out)


def multicomposition_from_json(data) -> MultiComposition:
    return tuple(tuple(int(x) for x in comp) for comp in data)
