"""Vectorized integer polynomials in x only, for fast numeric evaluation of diagrams.

A polynomial is a pair of int64 arrays ``(keys, coeffs)`` with sorted, distinct
keys and nonzero coefficients.  A key packs one monomial, most significant
field first: total degree, then ``x_1 ... x_n``.  Adding keys multiplies
monomials (degrees add too), and comparing keys is graded lex with
``x_1 > ... > x_n``.  Every operation checks that int64 cannot overflow and
raises :class:`PackedOverflow` otherwise, so results are always exact.
:mod:`schurkit.polyalg` remains the reference implementation.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from gmpy2 import mpq

from .combinatorics import crossing_permutation, reduced_word
from .polyalg import PolyElt, merge_representatives

LIMIT = 1 << 62


class PackedOverflow(ArithmeticError):
    pass


class Layout:
    def __init__(self, nx: int, max_degree: int):
        width = max(1, int(max_degree).bit_length())
        if (nx + 1) * width > 62:
            raise PackedOverflow("too many variables or too high a degree for int64 keys")
        self.nx = nx
        self.width = width
        self.mask = (1 << width) - 1
        self.one_degree = 1 << (width * nx)

    def shift(self, i: int) -> int:
        return self.width * (self.nx - i)

    def pack(self, exp: Sequence[int]) -> int:
        key = sum(exp)
        if key > self.mask:
            raise PackedOverflow("degree exceeds the layout")
        for a in exp:
            key = (key << self.width) | a
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        key = int(key)
        return tuple((key >> self.shift(i)) & self.mask for i in range(1, self.nx + 1))


Packed = tuple  # (keys, coeffs)


def _check_bound(coeffs: np.ndarray, count: int) -> None:
    if len(coeffs) and int(np.abs(coeffs).max()) * max(count, 1) >= LIMIT:
        raise PackedOverflow("coefficients too large for int64")


def combine(keys: np.ndarray, coeffs: np.ndarray) -> Packed:
    """Sort, add coefficients of equal keys, drop zeros."""
    if not len(keys):
        return keys, coeffs
    _check_bound(coeffs, len(coeffs))
    order = np.argsort(keys)
    keys = keys[order]
    coeffs = coeffs[order]
    starts = np.concatenate(([0], np.flatnonzero(np.diff(keys)) + 1))
    sums = np.add.reduceat(coeffs, starts)
    keep = sums != 0
    return keys[starts][keep], sums[keep]


def from_poly(f: PolyElt, layout: Layout) -> Packed:
    if f.nu:
        raise ValueError("packed polynomials carry no parameters")
    keys, coeffs = [], []
    for e, c in f.terms.items():
        c = mpq(c)
        if c.denominator != 1 or abs(int(c)) >= LIMIT:
            raise PackedOverflow("coefficient is not a small integer")
        keys.append(layout.pack(e))
        coeffs.append(int(c))
    return combine(np.array(keys, dtype=np.int64), np.array(coeffs, dtype=np.int64))


def to_poly(d: Packed, layout: Layout) -> PolyElt:
    keys, coeffs = d
    return PolyElt._raw({layout.unpack(k): int(c) for k, c in zip(keys.tolist(), coeffs.tolist())}, layout.nx, 0)


def to_dict(d: Packed) -> dict[int, int]:
    return dict(zip(d[0].tolist(), d[1].tolist()))


def demazure(d: Packed, j: int, layout: Layout) -> Packed:
    """``s_j.f = f^{s_j} + (f - f^{s_j})/(x_j - x_{j+1})`` on every term at once."""
    keys, coeffs = d
    if not len(keys):
        return d
    sj, sj1 = layout.shift(j), layout.shift(j + 1)
    mask = layout.mask
    a = (keys >> sj) & mask
    b = (keys >> sj1) & mask
    base = keys - (a << sj) - (b << sj1)
    swapped = base + (b << sj) + (a << sj1)
    n = np.abs(a - b)
    total = int(n.sum())
    if total == 0:
        return combine(swapped, coeffs)
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    start = base - layout.one_degree + (lo << sj) + ((hi - 1) << sj1)
    signed = np.where(a > b, coeffs, -coeffs)
    idx = np.repeat(np.arange(len(keys)), n)
    within = np.arange(total) - np.repeat(np.cumsum(n) - n, n)
    step = (1 << sj) - (1 << sj1)
    new_keys = start[idx] + within * step
    return combine(np.concatenate((swapped, new_keys)), np.concatenate((coeffs, signed[idx])))


def demazure_perm(d: Packed, w: tuple[int, ...], offset: int, layout: Layout) -> Packed:
    for i in reversed(reduced_word(tuple(w))):
        d = demazure(d, offset + i, layout)
    return d


def add_all(parts: list[Packed]) -> Packed:
    keys = np.concatenate([p[0] for p in parts])
    coeffs = np.concatenate([p[1] for p in parts])
    return combine(keys, coeffs)


def sigma_action(d: Packed, a: int, b: int, offset: int, layout: Layout) -> Packed:
    # application sequences of the coset representatives share prefixes; reuse them
    done: dict[tuple[int, ...], Packed] = {(): d}
    parts = []
    for w in merge_representatives(a, b):
        seq = tuple(reversed(reduced_word(tuple(w))))
        k = len(seq)
        while seq[:k] not in done:
            k -= 1
        cur = done[seq[:k]]
        for i in range(k, len(seq)):
            cur = demazure(cur, offset + seq[i], layout)
            done[seq[: i + 1]] = cur
        parts.append(cur)
    return add_all(parts)


def multiply(d: Packed, e: Packed) -> Packed:
    (k1, c1), (k2, c2) = d, e
    if not len(k1) or not len(k2):
        return k1[:0], c1[:0]
    if int(np.abs(c1).max()) * int(np.abs(c2).max()) * min(len(k1), len(k2)) >= LIMIT:
        raise PackedOverflow("product coefficients too large for int64")
    keys = (k1[:, None] + k2[None, :]).ravel()
    coeffs = (c1[:, None] * c2[None, :]).ravel()
    return combine(keys, coeffs)


def monomial_key(variables: Sequence[int], layout: Layout) -> int:
    exp = [0] * layout.nx
    for v in variables:
        exp[v - 1] += 1
    return layout.pack(exp)


def scaled_traverse_factor(offset: int, a: int, value, layout: Layout) -> Packed:
    """``prod (q x_k - p)`` over the strand for ``u = p/q``."""
    value = mpq(value)
    p, q = int(value.numerator), int(value.denominator)
    out = (np.array([0], dtype=np.int64), np.array([1], dtype=np.int64))
    for k in range(offset + 1, offset + a + 1):
        lin = combine(np.array([monomial_key([k], layout), 0], dtype=np.int64), np.array([q, -p], dtype=np.int64))
        out = multiply(out, lin)
    return out


def cross(d: Packed, a: int, b: int, offset: int, layout: Layout) -> Packed:
    return demazure_perm(d, crossing_permutation(a, b), offset, layout)


def dot(d: Packed, a: int, r: int, offset: int, layout: Layout) -> Packed:
    if r == 0:
        return d
    mono = monomial_key(range(offset + 1, offset + r + 1), layout)
    d = (d[0] + mono, d[1])
    return d if r == a else sigma_action(d, r, a - r, offset, layout)


def leading_exponent(d: Packed, layout: Layout) -> tuple[int, ...] | None:
    return layout.unpack(d[0][-1]) if len(d[0]) else None
