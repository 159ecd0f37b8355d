"""Exact sparse polynomials in x-variables and parameter indeterminates.

A :class:`PolyElt` stores a dict from exponent tuples to ``gmpy2.mpq``
coefficients.  The first ``nx`` slots of an exponent tuple belong to
``x1..x_nx`` and the remaining ``nu`` slots to the parameters ``u1..u_nu``.

The degenerate affine Hecke algebra acts on polynomials with ``x_i`` by
multiplication and ``s_j`` by the Demazure-type operator
``s_j.f = f^{s_j} + (f - f^{s_j}) / (x_j - x_{j+1})``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .combinatorics import (
    DomainError,
    Permutation,
    block_bounds,
    block_increasing_perms,
    reduced_word,
)

Monomial = tuple[int, ...]


class PolyElt:
    """Immutable exact polynomial; ``terms`` never holds a zero coefficient."""

    __slots__ = ("terms", "nx", "nu", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, nx: int = 0, nu: int = 0):
        clean: dict[Monomial, mpq] = {}
        width = nx + nu
        if terms:
            for exp, c in terms.items():
                if len(exp) != width:
                    raise DomainError(f"exponent {exp} does not fit {nx}+{nu} variables")
                c = mpq(c)
                if c:
                    clean[tuple(exp)] = c
        self.terms = clean
        self.nx = nx
        self.nu = nu
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nx: int, nu: int) -> "PolyElt":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.nx = nx
        obj.nu = nu
        obj._hash = None
        return obj

    # ---- constructors
    @classmethod
    def zero(cls, nx: int, nu: int = 0) -> "PolyElt":
        return cls._raw({}, nx, nu)

    @classmethod
    def const(cls, c, nx: int, nu: int = 0) -> "PolyElt":
        c = mpq(c)
        return cls._raw({(0,) * (nx + nu): c} if c else {}, nx, nu)

    @classmethod
    def x(cls, i: int, nx: int, nu: int = 0) -> "PolyElt":
        exp = [0] * (nx + nu)
        exp[i - 1] = 1
        return cls._raw({tuple(exp): mpq(1)}, nx, nu)

    @classmethod
    def u(cls, j: int, nx: int, nu: int) -> "PolyElt":
        exp = [0] * (nx + nu)
        exp[nx + j - 1] = 1
        return cls._raw({tuple(exp): mpq(1)}, nx, nu)

    @classmethod
    def monomial(cls, exp: Sequence[int], nx: int, nu: int = 0, coeff=1) -> "PolyElt":
        return cls({tuple(exp): coeff}, nx, nu)

    # ---- arithmetic
    def _check(self, other: "PolyElt") -> None:
        if self.nx != other.nx or self.nu != other.nu:
            raise DomainError("polynomials live in different rings")

    def _coerce(self, other) -> "PolyElt":
        if isinstance(other, PolyElt):
            self._check(other)
            return other
        return PolyElt.const(other, self.nx, self.nu)

    def __add__(self, other) -> "PolyElt":
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            big, small = dict(other.terms), self.terms
        else:
            big, small = dict(self.terms), other.terms
        for e, c in small.items():
            s = big.get(e)
            if s is None:
                big[e] = c
            else:
                s = s + c
                if s:
                    big[e] = s
                else:
                    del big[e]
        return PolyElt._raw(big, self.nx, self.nu)

    __radd__ = __add__

    def __neg__(self) -> "PolyElt":
        return PolyElt._raw({e: -c for e, c in self.terms.items()}, self.nx, self.nu)

    def __sub__(self, other) -> "PolyElt":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PolyElt":
        return self._coerce(other) - self

    def scale(self, c) -> "PolyElt":
        c = mpq(c)
        if not c:
            return PolyElt.zero(self.nx, self.nu)
        return PolyElt._raw({e: v * c for e, v in self.terms.items()}, self.nx, self.nu)

    def __mul__(self, other) -> "PolyElt":
        if not isinstance(other, PolyElt):
            return self.scale(other)
        self._check(other)
        out: dict[Monomial, mpq] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return PolyElt._raw({e: c for e, c in out.items() if c}, self.nx, self.nu)

    def __rmul__(self, other) -> "PolyElt":
        return self.scale(other)

    def __pow__(self, k: int) -> "PolyElt":
        out = PolyElt.const(1, self.nx, self.nu)
        for _ in range(k):
            out = out * self
        return out

    def mul_monomial(self, exp: Monomial, coeff=1) -> "PolyElt":
        if coeff == 1:
            terms = {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()}
        else:
            coeff = mpq(coeff)
            terms = {tuple(a + b for a, b in zip(e, exp)): c * coeff for e, c in self.terms.items()}
        return PolyElt._raw(
            terms,
            self.nx,
            self.nu,
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyElt):
            return self.nx == other.nx and self.nu == other.nu and self.terms == other.terms
        if other == 0:
            return not self.terms
        return self == PolyElt.const(other, self.nx, self.nu)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nx, self.nu, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"PolyElt({format_poly(self)!r}, nx={self.nx}, nu={self.nu})"

    def __str__(self) -> str:
        return format_poly(self)

    # ---- queries
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def x_degree(self) -> int:
        return max((sum(e[: self.nx]) for e in self.terms), default=-1)

    def leading_monomial(self) -> Monomial:
        """Graded-lex leading exponent with ``x1 > ... > x_nx > u1 > ...``."""
        if not self.terms:
            raise DomainError("zero polynomial has no leading term")
        return max(self.terms, key=lambda e: (sum(e), e))

    def leading_coefficient(self) -> mpq:
        return self.terms[self.leading_monomial()]

    def coefficient(self, exp: Monomial) -> mpq:
        return self.terms.get(tuple(exp), mpq(0))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> mpq:
        return self.terms.get((0,) * (self.nx + self.nu), mpq(0))

    def top_homogeneous(self) -> "PolyElt":
        d = self.degree()
        return PolyElt._raw({e: c for e, c in self.terms.items() if sum(e) == d}, self.nx, self.nu)

    # ---- ring changes
    def specialize(self, values: Sequence) -> "PolyElt":
        """Substitute numbers for the parameters; the result has ``nu == 0``."""
        vals = [mpq(v) for v in values]
        if len(vals) != self.nu:
            raise DomainError("need one value per parameter")
        nx = self.nx
        weight: dict[Monomial, mpq] = {}
        out: dict[Monomial, mpq] = {}
        for e, c in self.terms.items():
            ue = e[nx:]
            w = weight.get(ue)
            if w is None:
                w = mpq(1)
                for k, p in enumerate(ue):
                    if p:
                        w *= vals[k] ** p
                weight[ue] = w
            key = e[:nx]
            v = out.get(key)
            out[key] = c * w if v is None else v + c * w
        return PolyElt._raw({e: c for e, c in out.items() if c}, nx, 0)

    def extend(self, nx: int, nu: int | None = None) -> "PolyElt":
        """Embed into a ring with at least as many variables."""
        nu = self.nu if nu is None else nu
        if nx < self.nx or nu < self.nu:
            raise DomainError("cannot shrink the ring")
        pad_x = (0,) * (nx - self.nx)
        pad_u = (0,) * (nu - self.nu)
        return PolyElt._raw(
            {e[: self.nx] + pad_x + e[self.nx :] + pad_u: c for e, c in self.terms.items()},
            nx,
            nu,
        )


# ---------------------------------------------------------------------------
# text form


_VAR = re.compile(r"([xu])(\d+)(?:\^(\d+))?")


def format_monomial(exp: Monomial, nx: int) -> str:
    parts = []
    for k, p in enumerate(exp):
        if not p:
            continue
        name = f"x{k + 1}" if k < nx else f"u{k - nx + 1}"
        parts.append(name if p == 1 else f"{name}^{p}")
    return "*".join(parts)


def format_poly(f: PolyElt) -> str:
    """Canonical text: terms in decreasing graded-lex order."""
    if not f.terms:
        return "0"
    out = []
    for exp in sorted(f.terms, key=lambda e: (sum(e), e), reverse=True):
        c = f.terms[exp]
        mono = format_monomial(exp, f.nx)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def parse_poly(text: str, nx: int | None = None, nu: int | None = None) -> PolyElt:
    """Parse sums of terms like ``3/2*x1^2*u1 - x2 + 5``."""
    src = text.replace(" ", "")
    if not src:
        raise DomainError("empty polynomial text")
    if src[0] not in "+-":
        src = "+" + src
    pieces = re.findall(r"[+-][^+-]+", src)
    if "".join(pieces) != src:
        raise DomainError(f"cannot parse polynomial {text!r}")
    parsed: list[tuple[mpq, dict[tuple[str, int], int]]] = []
    max_x = max_u = 0
    for piece in pieces:
        sign = -1 if piece[0] == "-" else 1
        coeff = mpq(sign)
        powers: dict[tuple[str, int], int] = {}
        for factor in piece[1:].split("*"):
            m = _VAR.fullmatch(factor)
            if m:
                key = (m.group(1), int(m.group(2)))
                if key[1] < 1:
                    raise DomainError("variable indices start at 1")
                powers[key] = powers.get(key, 0) + int(m.group(3) or 1)
                if key[0] == "x":
                    max_x = max(max_x, key[1])
                else:
                    max_u = max(max_u, key[1])
            else:
                try:
                    coeff *= mpq(factor)
                except ValueError as exc:
                    raise DomainError(f"bad factor {factor!r}") from exc
        parsed.append((coeff, powers))
    nx = max_x if nx is None else nx
    nu = max_u if nu is None else nu
    if max_x > nx or max_u > nu:
        raise DomainError("polynomial uses more variables than declared")
    out = PolyElt.zero(nx, nu)
    for coeff, powers in parsed:
        exp = [0] * (nx + nu)
        for (kind, idx), p in powers.items():
            exp[idx - 1 if kind == "x" else nx + idx - 1] += p
        out = out + PolyElt({tuple(exp): coeff}, nx, nu)
    return out


# ---------------------------------------------------------------------------
# symmetric-group actions


def act_perm(f: PolyElt, w: Permutation, offset: int = 0) -> PolyElt:
    """Plain variable permutation: ``x_{offset+i}`` becomes ``x_{offset+w(i)}``."""
    k = len(w)
    if offset + k > f.nx:
        raise DomainError("permutation acts beyond the x-variables")
    out = {}
    for e, c in f.terms.items():
        new = list(e)
        for i in range(k):
            new[offset + w[i] - 1] = e[offset + i]
        out[tuple(new)] = c
    return PolyElt._raw(out, f.nx, f.nu)


def swap(f: PolyElt, j: int) -> PolyElt:
    """``f^{s_j}``: exchange ``x_j`` and ``x_{j+1}``."""
    p, q = j - 1, j
    out = {}
    for e, c in f.terms.items():
        new = list(e)
        new[p], new[q] = e[q], e[p]
        out[tuple(new)] = c
    return PolyElt._raw(out, f.nx, f.nu)


def exact_divide_by_difference(g: PolyElt, j: int) -> PolyElt:
    """Return ``g / (x_j - x_{j+1})``, asserting the division is exact.

    Synthetic division in ``x_j`` with coefficients in ``x_{j+1}``, done
    separately for each monomial in the remaining variables.
    """
    if not 1 <= j < g.nx:
        raise DomainError("index out of range")
    p, q = j - 1, j
    groups: dict[Monomial, dict[int, dict[int, mpq]]] = {}
    for e, c in g.terms.items():
        rest = e[:p] + e[q + 1 :]
        groups.setdefault(rest, {}).setdefault(e[p], {})[e[q]] = c
    out: dict[Monomial, mpq] = {}
    for rest, by_xdeg in groups.items():
        top = max(by_xdeg)
        carry: dict[int, mpq] = {}
        # quotient coefficient of x^(k-1) is  C_k(y) + y * Q_k(y)
        for k in range(top, 0, -1):
            coeff = dict(by_xdeg.get(k, {}))
            for b, v in carry.items():
                coeff[b + 1] = coeff.get(b + 1, mpq(0)) + v
            carry = {b: v for b, v in coeff.items() if v}
            for b, v in carry.items():
                out[rest[:p] + (k - 1, b) + rest[p:]] = v
        remainder = dict(by_xdeg.get(0, {}))
        for b, v in carry.items():
            remainder[b + 1] = remainder.get(b + 1, mpq(0)) + v
        if any(remainder.values()):
            raise ArithmeticError("polynomial is not divisible by x_j - x_{j+1}")
    return PolyElt._raw(out, g.nx, g.nu)


def divided_difference(f: PolyElt, j: int) -> PolyElt:
    return exact_divide_by_difference(f - swap(f, j), j)


def demazure_s(f: PolyElt, j: int) -> PolyElt:
    """``s_j.f = f^{s_j} + (f - f^{s_j})/(x_j - x_{j+1})``."""
    if not 1 <= j < f.nx:
        raise DomainError("index out of range")
    out: dict[Monomial, mpq] = {}
    get = out.get
    for e, c in f.terms.items():
        plus, minus = _demazure_monomial(e, j, f.nx, f.nu)
        for e2 in plus:
            out[e2] = get(e2, 0) + c
        for e2 in minus:
            out[e2] = get(e2, 0) - c
    return PolyElt._raw({e: c for e, c in out.items() if c}, f.nx, f.nu)


@lru_cache(maxsize=8192)
def _demazure_monomial(exp: Monomial, j: int, nx: int, nu: int) -> tuple[tuple[Monomial, ...], tuple[Monomial, ...]]:
    """The operator on ``x^a y^b`` (``x = x_j``, ``y = x_{j+1}``), memoized.

    ``(x^a y^b - x^b y^a) / (x - y)`` is ``x^b y^b`` times a geometric sum, so
    the result splits into monomials with coefficient ``+1`` and ``-1``.
    """
    p = j - 1
    a, b = exp[p], exp[p + 1]
    head, tail = exp[:p], exp[p + 2 :]
    plus = [head + (b, a) + tail]
    minus: list = []
    if a > b:
        plus.extend(head + (b + k, a - 1 - k) + tail for k in range(a - b))
    elif b > a:
        minus.extend(head + (a + k, b - 1 - k) + tail for k in range(b - a))
    return tuple(plus), tuple(minus)


def demazure_perm(f: PolyElt, w: Permutation, offset: int = 0) -> PolyElt:
    """Action of the permutation ``w`` (on positions ``offset+1..``) through a reduced word."""
    for i in reversed(reduced_word(tuple(w))):
        f = demazure_s(f, offset + i)
    return f


def act_hecke_word(f: PolyElt, word: Iterable[tuple[str, int]]) -> PolyElt:
    """Apply ``('s', j)`` / ``('x', i)`` letters in order, first letter first."""
    for kind, idx in word:
        if kind == "s":
            f = demazure_s(f, idx)
        elif kind == "x":
            f = f * PolyElt.x(idx, f.nx, f.nu)
        else:
            raise DomainError(f"unknown letter {kind!r}")
    return f


def is_symmetric(f: PolyElt, blocks: Sequence[int], offset: int = 0) -> bool:
    """True iff ``f`` is fixed by plain swaps inside each block of ``x_{offset+1..}``."""
    for lo, hi in block_bounds(blocks):
        for j in range(offset + lo + 1, offset + hi):
            if swap(f, j) != f:
                return False
    return True


@lru_cache(maxsize=None)
def merge_representatives(a: int, b: int) -> tuple[Permutation, ...]:
    """Shortest representatives of ``S_{a+b} / (S_a x S_b)``: increasing on both blocks."""
    return block_increasing_perms((a, b))


def sigma_action(f: PolyElt, a: int, b: int, offset: int = 0) -> PolyElt:
    """Sum of the Demazure actions of all shortest coset representatives."""
    if not is_symmetric(f, (a, b), offset):
        raise DomainError("input is not symmetric in the two blocks")
    out = PolyElt.zero(f.nx, f.nu)
    for d in merge_representatives(a, b):
        out = out + demazure_perm(f, d, offset)
    return out


def elementary_symmetric(r: int, variables: Sequence[int], nx: int, nu: int = 0) -> PolyElt:
    from itertools import combinations

    terms = {}
    for chosen in combinations(variables, r):
        exp = [0] * (nx + nu)
        for v in chosen:
            exp[v - 1] = 1
        terms[tuple(exp)] = 1
    return PolyElt(terms, nx, nu)


def monomial_symmetric_basis(blocks: Sequence[int], max_degree: int, nx: int, nu: int = 0, offset: int = 0) -> list[PolyElt]:
    """Products of orbit sums, one per block: a spanning set of the block-symmetric polynomials."""
    from .combinatorics import enumerate_partitions

    per_block: list[list[tuple[int, PolyElt]]] = []
    for lo, hi in block_bounds(blocks):
        width = hi - lo
        opts = []
        for d in range(max_degree + 1):
            for lam in enumerate_partitions(d, max_len=width):
                padded = tuple(lam) + (0,) * (width - len(lam))
                orbit = set()
                _orbit(padded, orbit)
                terms = {}
                for o in orbit:
                    exp = [0] * (nx + nu)
                    for k, v in enumerate(o):
                        exp[offset + lo + k] = v
                    terms[tuple(exp)] = 1
                opts.append((d, PolyElt(terms, nx, nu)))
        per_block.append(opts)
    out = []

    def rec(k: int, deg: int, acc: PolyElt) -> None:
        if k == len(per_block):
            out.append(acc)
            return
        for d, g in per_block[k]:
            if deg + d <= max_degree:
                rec(k + 1, deg + d, acc * g)

    rec(0, 0, PolyElt.const(1, nx, nu))
    return out


def _orbit(vec: tuple[int, ...], acc: set) -> None:
    from itertools import permutations

    for p in set(permutations(vec)):
        acc.add(p)
