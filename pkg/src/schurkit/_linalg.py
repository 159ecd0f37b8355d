"""Exact sparse linear algebra over the rationals.

Vectors are dicts mapping comparable keys to ``mpq``.  Elimination is keyed on
the largest key of each vector, which is enough for ranks and for solving.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping

from gmpy2 import mpq

SparseVec = dict


def _axpy(target: dict, scale, source: Mapping) -> None:
    for k, v in source.items():
        s = target.get(k)
        s = -scale * v if s is None else s - scale * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)


class Echelon:
    """Incremental row echelon form that also remembers how each row was built."""

    def __init__(self, track: bool = False):
        self.rows: dict[Hashable, tuple[dict, dict]] = {}
        self.track = track
        self.count = 0

    def reduce(self, vec: Mapping, combo: dict | None = None) -> tuple[dict, dict]:
        v = {k: mpq(c) for k, c in vec.items() if c}
        combo = dict(combo or {})
        while v:
            lead = max(v)
            row = self.rows.get(lead)
            if row is None:
                break
            c = v[lead]
            _axpy(v, c, row[0])
            if self.track:
                _axpy(combo, c, row[1])
        return v, combo

    def add(self, vec: Mapping) -> bool:
        """Insert a vector; return True when it is independent of the previous ones."""
        idx = self.count
        self.count += 1
        v, combo = self.reduce(vec, {idx: mpq(1)} if self.track else None)
        if not v:
            return False
        lead = max(v)
        inv = 1 / v[lead]
        self.rows[lead] = (
            {k: c * inv for k, c in v.items()},
            {k: c * inv for k, c in combo.items()} if self.track else {},
        )
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(vectors: Iterable[Mapping]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def solve(vectors: list[Mapping], target: Mapping) -> dict[int, mpq] | None:
    """Coefficients ``c`` with ``sum c[i] * vectors[i] == target``, or None if impossible."""
    ech = Echelon(track=True)
    for v in vectors:
        ech.add(v)
    rest, combo = ech.reduce(target, {})
    if rest:
        return None
    # reduce() subtracted multiples of rows from the target: target = sum(combo_i * v_i) with sign flip
    return {k: -c for k, c in combo.items() if c}


MODULUS = 1073741789  # largest prime below 2**30


class EchelonModP:
    """Row echelon form over ``Z/p`` for integer vectors.

    Full rank modulo ``p`` implies full rank over the rationals, so this is a
    cheap certificate; a deficient result must be rechecked exactly.
    """

    def __init__(self, p: int = MODULUS):
        self.p = p
        self.rows: dict[Hashable, dict] = {}

    def add(self, vec: Mapping) -> bool:
        p = self.p
        v = {}
        for k, c in vec.items():
            c %= p
            if c:
                v[k] = c
        rows = self.rows
        while v:
            lead = max(v)
            row = rows.get(lead)
            if row is None:
                break
            c = v[lead]
            for k, r in row.items():
                s = (v.get(k, 0) - c * r) % p
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
        if not v:
            return False
        lead = max(v)
        inv = pow(v[lead], -1, p)
        rows[lead] = {k: c * inv % p for k, c in v.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)
