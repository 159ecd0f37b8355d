"""Degenerate affine and cyclotomic Hecke algebras.

An element of the affine algebra is stored as ``{w: P_w}`` meaning
``sum_w P_w(x, u) * w``: polynomials sit to the left of permutations.  The
parameters ``u`` are central, so they live inside the polynomial coefficients
(generic mode) or are numbers (numeric mode, ``nu == 0``).

Relations used for normalization::

    s_i * g = g^{s_i} * s_i + (g - g^{s_i}) / (x_i - x_{i+1})

which packs ``s_i^2 = 1``, commuting ``x``'s and ``x_{i+1} s_i = s_i x_i - 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterable, Iterator, Mapping, Sequence

from gmpy2 import mpq

from ._linalg import Echelon
from .combinatorics import (
    DomainError,
    MultiComposition,
    Permutation,
    SemistandardTableau,
    StandardTableau,
    block_increasing_perms,
    compose,
    enumerate_multipartitions,
    enumerate_sst,
    flatten_parts,
    identity,
    inverse,
    is_multipartition,
    minimal_coset_rep,
    mu_fiber,
    reduced_word,
    size,
    standard_tableaux,
    young_subgroup,
)
from .polyalg import PolyElt, demazure_s, format_poly, parse_poly, swap

Key = tuple[Permutation, tuple[int, ...]]


class ContextError(DomainError):
    """A cyclotomic context cannot serve the request (bound too small, wrong mode)."""


# ---------------------------------------------------------------------------
# the affine algebra


@lru_cache(maxsize=400_000)
def _perm_times_monomial(w: Permutation, exp: tuple[int, ...], nx: int, nu: int) -> tuple:
    """Normal form of ``w * x^exp`` as ``((perm, terms), ...)``."""
    state: dict[Permutation, PolyElt] = {identity(len(w)): PolyElt._raw({exp: mpq(1)}, nx, nu)}
    for i in reversed(reduced_word(w)):
        s = _transposition(i, len(w))
        new: dict[Permutation, PolyElt] = {}
        for p, P in state.items():
            Ps = swap(P, i)
            part = demazure_s(P, i) - Ps
            _acc(new, compose(s, p), Ps)
            _acc(new, p, part)
        state = new
    return tuple((p, P.terms) for p, P in state.items() if P)


@lru_cache(maxsize=None)
def _transposition(i: int, n: int) -> Permutation:
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def _acc(target: dict, key, poly: PolyElt) -> None:
    if not poly:
        return
    cur = target.get(key)
    if cur is None:
        target[key] = poly
    else:
        s = cur + poly
        if s:
            target[key] = s
        else:
            del target[key]


class AffHeckeElt:
    """Immutable element ``sum_w P_w * w`` of the degenerate affine Hecke algebra."""

    __slots__ = ("m", "nu", "terms")

    def __init__(self, m: int, nu: int = 0, terms: Mapping[Permutation, PolyElt] | None = None):
        self.m = m
        self.nu = nu
        clean: dict[Permutation, PolyElt] = {}
        for w, P in (terms or {}).items():
            w = tuple(w)
            if len(w) != m:
                raise DomainError("permutation has the wrong size")
            if P.nx != m or P.nu != nu:
                raise DomainError("coefficient lives in the wrong polynomial ring")
            if P:
                clean[w] = P
        self.terms = clean

    # ---- constructors
    @classmethod
    def zero(cls, m: int, nu: int = 0) -> "AffHeckeElt":
        return cls(m, nu)

    @classmethod
    def one(cls, m: int, nu: int = 0) -> "AffHeckeElt":
        return cls.poly(PolyElt.const(1, m, nu))

    @classmethod
    def poly(cls, P: PolyElt) -> "AffHeckeElt":
        return cls(P.nx, P.nu, {identity(P.nx): P})

    @classmethod
    def x(cls, i: int, m: int, nu: int = 0) -> "AffHeckeElt":
        return cls.poly(PolyElt.x(i, m, nu))

    @classmethod
    def perm(cls, w: Sequence[int], nu: int = 0, coeff=1) -> "AffHeckeElt":
        w = tuple(w)
        return cls(len(w), nu, {w: PolyElt.const(coeff, len(w), nu)})

    @classmethod
    def s(cls, j: int, m: int, nu: int = 0) -> "AffHeckeElt":
        if not 1 <= j < m:
            raise DomainError("simple reflection index out of range")
        return cls.perm(_transposition(j, m), nu)

    @classmethod
    def monomial(cls, alpha: Sequence[int], w: Sequence[int], nu: int = 0, coeff=1) -> "AffHeckeElt":
        m = len(w)
        return cls(m, nu, {tuple(w): PolyElt.monomial(tuple(alpha) + (0,) * nu, m, nu, coeff)})

    # ---- arithmetic
    def _same(self, other: "AffHeckeElt") -> None:
        if self.m != other.m or self.nu != other.nu:
            raise DomainError("elements live in different algebras")

    def __add__(self, other: "AffHeckeElt") -> "AffHeckeElt":
        self._same(other)
        out = dict(self.terms)
        for w, P in other.terms.items():
            _acc(out, w, P)
        return AffHeckeElt._raw(self.m, self.nu, out)

    def __neg__(self) -> "AffHeckeElt":
        return AffHeckeElt._raw(self.m, self.nu, {w: -P for w, P in self.terms.items()})

    def __sub__(self, other: "AffHeckeElt") -> "AffHeckeElt":
        return self + (-other)

    def scale(self, c) -> "AffHeckeElt":
        """Multiply by a scalar: a number or a polynomial in ``u`` (or central in ``x``)."""
        if isinstance(c, PolyElt):
            if c.nx == 0:
                c = c.extend(self.m, self.nu)
            out = {}
            for w, P in self.terms.items():
                _acc(out, w, c * P)
            return AffHeckeElt._raw(self.m, self.nu, out)
        c = mpq(c)
        if not c:
            return AffHeckeElt.zero(self.m, self.nu)
        return AffHeckeElt._raw(self.m, self.nu, {w: P.scale(c) for w, P in self.terms.items()})

    def __mul__(self, other) -> "AffHeckeElt":
        if not isinstance(other, AffHeckeElt):
            return self.scale(other)
        self._same(other)
        out: dict[Permutation, PolyElt] = {}
        m, nu = self.m, self.nu
        for w, P in self.terms.items():
            moved: dict[Permutation, PolyElt] = {}
            for v, Q in other.terms.items():
                for exp, c in Q.terms.items():
                    for p, terms in _perm_times_monomial(w, exp, m, nu):
                        poly = PolyElt._raw({e: t * c for e, t in terms.items()}, m, nu)
                        _acc(moved, compose(p, v), poly)
            for p, R in moved.items():
                _acc(out, p, P * R)
        return AffHeckeElt._raw(m, nu, out)

    def __rmul__(self, other) -> "AffHeckeElt":
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffHeckeElt):
            return NotImplemented
        return self.m == other.m and self.nu == other.nu and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.m, self.nu, frozenset((w, P) for w, P in self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"AffHeckeElt({format_hecke(self)})"

    @classmethod
    def _raw(cls, m: int, nu: int, terms: dict) -> "AffHeckeElt":
        obj = cls.__new__(cls)
        obj.m, obj.nu, obj.terms = m, nu, terms
        return obj

    # ---- queries
    def x_degree(self) -> int:
        return max((P.x_degree() for P in self.terms.values()), default=-1)

    def items(self) -> Iterator[tuple[tuple[int, ...], Permutation, PolyElt]]:
        """Yield ``(alpha, w, coeff)`` with ``coeff`` a polynomial in the parameters only."""
        for w in sorted(self.terms):
            grouped: dict[tuple[int, ...], dict] = {}
            for e, c in self.terms[w].terms.items():
                grouped.setdefault(e[: self.m], {})[e[self.m :]] = c
            for alpha in sorted(grouped):
                yield alpha, w, PolyElt._raw(grouped[alpha], 0, self.nu)

    def coordinates(self) -> dict[Key, mpq]:
        """Coefficients on the basis ``x^alpha w``; numeric elements only."""
        if self.nu:
            raise ContextError("coordinates need numeric parameters")
        return {(w, e): c for w, P in self.terms.items() for e, c in P.terms.items()}

    def specialize(self, values: Sequence) -> "AffHeckeElt":
        out = {}
        for w, P in self.terms.items():
            _acc(out, w, P.specialize(values))
        return AffHeckeElt._raw(self.m, 0, out)

    def to_json(self) -> list[dict]:
        return [
            {"alpha": list(alpha), "w": list(w), "coeff": format_poly(c)}
            for alpha, w, c in self.items()
        ]

    @classmethod
    def from_json(cls, data: list | str, m: int, nu: int = 0) -> "AffHeckeElt":
        if isinstance(data, str):
            data = json.loads(data)
        out = cls.zero(m, nu)
        try:
            for item in data:
                alpha, w = tuple(int(a) for a in item["alpha"]), tuple(int(v) for v in item["w"])
                if len(alpha) != m or sorted(w) != list(range(1, m + 1)):
                    raise DomainError("term does not fit the algebra")
                coeff = parse_poly(str(item.get("coeff", "1")), 0, nu)
                out = out + cls.monomial(alpha, w, nu).scale(coeff)
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed Hecke element JSON: {exc}") from exc
        return out


def format_hecke(a: AffHeckeElt) -> str:
    if not a.terms:
        return "0"
    pieces = []
    for alpha, w, c in a.items():
        mono = "*".join(
            (f"x{k + 1}" if p == 1 else f"x{k + 1}^{p}") for k, p in enumerate(alpha) if p
        )
        word = "".join(f"s{i}" for i in reduced_word(w))
        basis = "*".join(b for b in (mono, word) if b) or "1"
        pieces.append(f"({format_poly(c)})*{basis}")
    return " + ".join(pieces)


def aff_mul(a: AffHeckeElt, b: AffHeckeElt) -> AffHeckeElt:
    return a * b


def anti_involution(a: AffHeckeElt) -> AffHeckeElt:
    """Reverse products while fixing every ``x_i`` and ``s_j``: ``(P w)^* = w^{-1} P``."""
    out = AffHeckeElt.zero(a.m, a.nu)
    for w, P in a.terms.items():
        out = out + AffHeckeElt.perm(inverse(w), a.nu) * AffHeckeElt.poly(P)
    return out


def perm_sum(perms: Iterable[Permutation], m: int, nu: int = 0) -> AffHeckeElt:
    one = PolyElt.const(1, m, nu)
    return AffHeckeElt(m, nu, {tuple(w): one for w in perms})


def embed_perm(w: Permutation, offset: int, m: int) -> Permutation:
    """Let ``w`` act on positions ``offset+1..offset+len(w)`` of ``1..m``."""
    out = list(range(1, m + 1))
    for i, wi in enumerate(w):
        out[offset + i] = offset + wi
    return tuple(out)


def sigma_star(a: int, b: int, offset: int, m: int, nu: int = 0) -> AffHeckeElt:
    """Sum of the shortest representatives of ``S_{a+b} / (S_a x S_b)`` placed at ``offset``."""
    return perm_sum((embed_perm(d, offset, m) for d in block_increasing_perms((a, b))), m, nu)


def x_product(indices: Iterable[int], m: int, nu: int = 0) -> AffHeckeElt:
    exp = [0] * (m + nu)
    for k in indices:
        exp[k - 1] += 1
    return AffHeckeElt.poly(PolyElt.monomial(exp, m, nu))


# ---------------------------------------------------------------------------
# cyclotomic quotient


def sample_parameters(ell: int) -> tuple[mpq, ...]:
    """A fixed rational point ``u_k = (3k + 1) / 7`` with distinct coordinates."""
    return tuple(mpq(3 * k + 1, 7) for k in range(1, ell + 1))


class CycContext:
    """The quotient by the two-sided ideal generated by ``prod_i (x_1 - u_i)``.

    ``u=None`` keeps ``u_1..u_ell`` as indeterminates; otherwise ``u`` is a
    sequence of rationals.  Reduction rewrites ``x_k^ell`` using
    ``f(x_k) = R_k`` where ``R_1 = 0`` and
    ``R_{k+1} = s_k R_k s_k - Delta_k s_k`` with
    ``Delta_k = (f(x_k) - f(x_{k+1})) / (x_k - x_{k+1})``.
    """

    def __init__(self, m: int, ell: int, u: Sequence | None = None, degree_bound: int | None = None):
        if m < 0 or ell < 1:
            raise DomainError("need m >= 0 and ell >= 1")
        self.m = m
        self.ell = ell
        self.numeric = u is not None
        if self.numeric:
            if len(u) != ell:
                raise DomainError("need one parameter value per red strand")
            self.u_values = tuple(mpq(v) for v in u)
        else:
            self.u_values = None
        self.nu = 0 if self.numeric else ell
        self.degree_bound = degree_bound if degree_bound is not None else m * (ell - 1) + ell + 1
        self._R: list[AffHeckeElt] = []
        self._mono_cache: dict[tuple[int, ...], dict[Permutation, PolyElt]] = {}
        self._ideal: dict[int, Echelon] = {}
        self._perm_cache: dict = {}

    # ---- scalars
    def param(self, j: int) -> PolyElt:
        """``u_j`` as a polynomial in this context's ring."""
        if not 1 <= j <= self.ell:
            raise DomainError("parameter index out of range")
        if self.numeric:
            return PolyElt.const(self.u_values[j - 1], self.m, 0)
        return PolyElt.u(j, self.m, self.nu)

    def scalar(self, c) -> PolyElt:
        """Bring a number or a parameter polynomial (``nx == 0``) into the ring."""
        if isinstance(c, PolyElt):
            if c.nx != 0:
                raise DomainError("scalars may not involve x")
            if self.numeric:
                vals = list(self.u_values) + [mpq(0)] * max(0, c.nu - self.ell)
                return PolyElt.const(c.specialize(vals[: c.nu]).constant_value(), self.m, 0)
            if c.nu > self.ell:
                raise DomainError("scalar uses too many parameters")
            return c.extend(self.m, self.nu)
        return PolyElt.const(c, self.m, self.nu)

    def one(self) -> AffHeckeElt:
        return AffHeckeElt.one(self.m, self.nu)

    def zero(self) -> AffHeckeElt:
        return AffHeckeElt.zero(self.m, self.nu)

    def x(self, i: int) -> AffHeckeElt:
        return AffHeckeElt.x(i, self.m, self.nu)

    def s(self, j: int) -> AffHeckeElt:
        return AffHeckeElt.s(j, self.m, self.nu)

    def perm(self, w: Sequence[int]) -> AffHeckeElt:
        return AffHeckeElt.perm(w, self.nu)

    def cyclotomic_poly(self, k: int = 1) -> PolyElt:
        """``f(x_k) = prod_i (x_k - u_i)``."""
        out = PolyElt.const(1, self.m, self.nu)
        xk = PolyElt.x(k, self.m, self.nu)
        for j in range(1, self.ell + 1):
            out = out * (xk - self.param(j))
        return out

    def lift(self, a: AffHeckeElt) -> AffHeckeElt:
        """Move an element built with generic parameters into this context."""
        if a.m != self.m:
            raise DomainError("wrong number of strands")
        if a.nu == self.nu:
            return a
        if self.numeric and a.nu == self.ell:
            return a.specialize(self.u_values)
        raise DomainError("cannot move the element into this context")

    # ---- rewriting
    def rewrite_rule(self, k: int) -> AffHeckeElt:
        """``R_k``: the reduced element equal to ``f(x_k)`` in the quotient."""
        while len(self._R) < k:
            j = len(self._R)
            if j == 0:
                self._R.append(self.zero())
                continue
            # R_{j+1} from R_j, with s = s_j
            s = self.s(j)
            f = self.cyclotomic_poly(j)
            f_next = self.cyclotomic_poly(j + 1)
            delta = _exact_difference_quotient(f - f_next, j)
            R = s * self._R[j - 1] * s - AffHeckeElt.poly(delta) * s
            if R.x_degree() >= self.ell:
                raise ContextError("rewrite rule has unexpected degree")
            self._R.append(R)
        return self._R[k - 1]

    def _reduce_monomial(self, exp: tuple[int, ...]) -> dict[Permutation, PolyElt]:
        hit = self._mono_cache.get(exp)
        if hit is not None:
            return hit
        m, ell = self.m, self.ell
        big = next((k for k in range(m) if exp[k] >= ell), None)
        ident = identity(m)
        if big is None:
            out = {ident: PolyElt._raw({exp: mpq(1)}, m, self.nu)}
            self._mono_cache[exp] = out
            return out
        rest = list(exp)
        rest[big] -= ell
        rest_mono = PolyElt._raw({tuple(rest): mpq(1)}, m, self.nu)
        xk = PolyElt.x(big + 1, m, self.nu)
        tail = rest_mono * (xk ** ell - self.cyclotomic_poly(big + 1))
        out: dict[Permutation, PolyElt] = {}
        for e, c in tail.terms.items():
            for p, P in self._reduce_monomial(e).items():
                _acc(out, p, P.scale(c))
        for v, Q in self.rewrite_rule(big + 1).terms.items():
            for e, c in (rest_mono * Q).terms.items():
                for p, P in self._reduce_monomial(e).items():
                    _acc(out, compose(p, v), P.scale(c))
        self._mono_cache[exp] = out
        return out

    def reduce(self, a: AffHeckeElt) -> AffHeckeElt:
        a = self.lift(a)
        out: dict[Permutation, PolyElt] = {}
        for w, P in a.terms.items():
            for e, c in P.terms.items():
                for p, Q in self._reduce_monomial(e).items():
                    _acc(out, compose(p, w), Q.scale(c))
        return AffHeckeElt._raw(self.m, self.nu, out)

    def mul(self, *elts: AffHeckeElt) -> AffHeckeElt:
        out = self.one()
        for e in elts:
            out = self.reduce(out * self.lift(e))
        return out

    # ---- the reduced basis
    def reduced_exponents(self) -> list[tuple[int, ...]]:
        return [tuple(a) for a in cartesian(range(self.ell), repeat=self.m)]

    def basis(self) -> list[Key]:
        perms = young_subgroup((self.m,)) if self.m else ((),)
        return sorted((w, a) for w in perms for a in self.reduced_exponents())

    def basis_element(self, key: Key) -> AffHeckeElt:
        w, alpha = key
        return AffHeckeElt.monomial(alpha, w, self.nu)

    def dimension(self) -> int:
        return len(self.basis())

    def require_numeric(self) -> None:
        if not self.numeric:
            raise ContextError("this computation needs a numeric parameter specialization")

    # ---- independent route: truncated two-sided ideal
    def ideal_span(self, D: int | None = None) -> Echelon:
        """Row-reduced span of ``w * f(x_1) * x^gamma * v`` with total x-degree at most ``D``.

        Rows are keyed so that non-reduced monomials are eliminated first.
        """
        self.require_numeric()
        D = self.degree_bound if D is None else D
        if D in self._ideal:
            return self._ideal[D]
        ech = Echelon()
        f = AffHeckeElt.poly(self.cyclotomic_poly(1))
        perms = young_subgroup((self.m,))
        for d in range(0, D - self.ell + 1):
            for gamma in _exponents_of_degree(d, self.m):
                core = f * AffHeckeElt.monomial(gamma, identity(self.m), 0)
                for w in perms:
                    left = AffHeckeElt.perm(w) * core
                    for v in perms:
                        ech.add(_ordered_coordinates(left * AffHeckeElt.perm(v), self.ell))
        self._ideal[D] = ech
        return ech

    def ideal_reduce(self, a: AffHeckeElt, D: int | None = None) -> AffHeckeElt:
        """Representative on the reduced basis found by elimination against the ideal span."""
        self.require_numeric()
        a = self.lift(a)
        D = self.degree_bound if D is None else D
        if a.x_degree() > D:
            raise ContextError(f"degree {a.x_degree()} exceeds the ideal bound {D}")
        rest, _ = self.ideal_span(D).reduce(_ordered_coordinates(a, self.ell))
        out: dict[Permutation, dict] = {}
        for (flag, _deg, alpha, w), c in rest.items():
            if flag:
                raise ContextError("ideal bound too small to reach the reduced basis")
            out.setdefault(w, {})[alpha] = c
        return AffHeckeElt(self.m, 0, {w: PolyElt(t, self.m, 0) for w, t in out.items()})

    def quotient_dimension(self, D: int | None = None) -> int:
        """``dim V_D - dim J_D`` with ``V_D`` all ``x^alpha w`` of degree at most ``D``."""
        D = self.degree_bound if D is None else D
        ech = self.ideal_span(D)
        total = sum(1 for d in range(D + 1) for _ in _exponents_of_degree(d, self.m))
        total *= len(young_subgroup((self.m,)))
        return total - ech.rank

    def reduced_basis_rank_mod_ideal(self, D: int | None = None) -> int:
        """Rank of the reduced monomials modulo the truncated ideal span."""
        ech = self.ideal_span(D)
        rows = Echelon()
        for key in self.basis():
            vec, _ = ech.reduce(_ordered_coordinates(self.basis_element(key), self.ell))
            rows.add(vec)
        return rows.rank


def _exact_difference_quotient(g: PolyElt, j: int) -> PolyElt:
    from .polyalg import exact_divide_by_difference

    return exact_divide_by_difference(g, j)


@lru_cache(maxsize=None)
def _exponents_of_degree(d: int, n: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),) if d == 0 else ()
    out = []
    for first in range(d, -1, -1):
        for rest in _exponents_of_degree(d - first, n - 1):
            out.append((first,) + rest)
    return tuple(out)


def _ordered_coordinates(a: AffHeckeElt, ell: int) -> dict:
    """Coordinates keyed by ``(non_reduced, degree, alpha, w)`` so larger keys are eliminated first."""
    out = {}
    for w, P in a.terms.items():
        for e, c in P.terms.items():
            alpha = e[: a.m]
            out[(any(p >= ell for p in alpha), sum(alpha), alpha, w)] = c
    return out


def cyc_reduce(a: AffHeckeElt, ctx: CycContext) -> AffHeckeElt:
    return ctx.reduce(a)


# ---------------------------------------------------------------------------
# Murphy-type elements


def _check_level(lam: MultiComposition, ctx: CycContext) -> None:
    if len(lam) != ctx.ell or size(lam) != ctx.m:
        raise DomainError(f"{lam} is not an {ctx.ell}-multicomposition of {ctx.m}")


def x_lambda(lam: MultiComposition, ctx: CycContext) -> AffHeckeElt:
    _check_level(lam, ctx)
    return perm_sum(young_subgroup(flatten_parts(lam)), ctx.m, ctx.nu)


def pi_lambda(lam: MultiComposition, ctx: CycContext) -> AffHeckeElt:
    _check_level(lam, ctx)
    P = PolyElt.const(1, ctx.m, ctx.nu)
    a = 0
    for i in range(1, ctx.ell):
        a += sum(lam[i - 1])
        for j in range(1, a + 1):
            P = P * (PolyElt.x(j, ctx.m, ctx.nu) - ctx.param(i + 1))
    return AffHeckeElt.poly(P)


def m_lambda(lam: MultiComposition, ctx: CycContext) -> AffHeckeElt:
    key = ("m_lambda", lam)
    if key not in ctx._perm_cache:
        ctx._perm_cache[key] = ctx.reduce(pi_lambda(lam, ctx) * x_lambda(lam, ctx))
    return ctx._perm_cache[key]


def coset_rep(t: StandardTableau) -> Permutation:
    """``d(t)``: the shortest permutation carrying the row reading tableau to ``t``."""
    return minimal_coset_rep(t)


def m_st(s: StandardTableau, t: StandardTableau, ctx: CycContext) -> AffHeckeElt:
    if s.shape != t.shape:
        raise DomainError("tableaux have different shapes")
    if not is_multipartition(s.shape):
        raise DomainError("shape is not a multipartition")
    ds, dt = coset_rep(s), coset_rep(t)
    return ctx.reduce(ctx.perm(inverse(ds)) * m_lambda(s.shape, ctx) * ctx.perm(dt))


def _fiber(X: SemistandardTableau | StandardTableau) -> list[StandardTableau]:
    return [X] if isinstance(X, StandardTableau) else mu_fiber(X)


def m_ST(
    S: SemistandardTableau | StandardTableau, T: SemistandardTableau | StandardTableau, ctx: CycContext
) -> AffHeckeElt:
    """Sum of ``m_st`` over the standard fibers; standard tableaux count as their own fiber."""
    if S.shape != T.shape:
        raise DomainError("tableaux have different shapes")
    lam = S.shape
    ml = m_lambda(lam, ctx)
    left = perm_sum((inverse(coset_rep(s)) for s in _fiber(S)), ctx.m, ctx.nu)
    right = perm_sum((coset_rep(t) for t in _fiber(T)), ctx.m, ctx.nu)
    return ctx.reduce(left * ml * right)


# ---------------------------------------------------------------------------
# permutation modules


@dataclass
class PermModuleElt:
    mu: MultiComposition
    coords: dict = field(default_factory=dict)

    def vector(self, labels: Sequence) -> list[mpq]:
        return [self.coords.get(lab, mpq(0)) for lab in labels]


@dataclass
class PermModuleBasis:
    mu: MultiComposition
    labels: list[tuple[SemistandardTableau, StandardTableau]]
    elements: list[AffHeckeElt]
    _solver: Echelon | None = None


def perm_module_labels(mu: MultiComposition, ell: int) -> list[tuple[SemistandardTableau, StandardTableau]]:
    out = []
    for lam in enumerate_multipartitions(size(mu), ell):
        ssts = enumerate_sst(lam, mu)
        if not ssts:
            continue
        for S in ssts:
            for t in standard_tableaux(lam):
                out.append((S, t))
    return out


def perm_module_basis(mu: MultiComposition, ctx: CycContext) -> PermModuleBasis:
    key = ("basis", mu)
    if key not in ctx._perm_cache:
        _check_level(mu, ctx)
        labels = perm_module_labels(mu, ctx.ell)
        elems = [m_ST(S, t, ctx) for S, t in labels]
        ctx._perm_cache[key] = PermModuleBasis(mu, labels, elems)
    return ctx._perm_cache[key]


def right_ideal_rank(mu: MultiComposition, ctx: CycContext) -> int:
    """``dim m_mu H`` computed from the spanning set ``m_mu * (x^alpha w)``."""
    ctx.require_numeric()
    ml = m_lambda(mu, ctx)
    ech = Echelon()
    for key in ctx.basis():
        ech.add(ctx.reduce(ml * ctx.basis_element(key)).coordinates())
    return ech.rank


def perm_module_expand(xi: AffHeckeElt, mu: MultiComposition, ctx: CycContext) -> PermModuleElt:
    """Coordinates of ``xi`` on the basis ``m_{S t}`` of ``M^mu``."""
    ctx.require_numeric()
    basis = perm_module_basis(mu, ctx)
    if basis._solver is None:
        ech = Echelon(track=True)
        for e in basis.elements:
            if not ech.add(e.coordinates()):
                raise DomainError("permutation module basis is linearly dependent")
        basis._solver = ech
    rest, combo = basis._solver.reduce(ctx.reduce(xi).coordinates(), {})
    if rest:
        raise DomainError("element does not lie in the permutation module")
    return PermModuleElt(mu, {basis.labels[i]: -c for i, c in combo.items() if c})


# ---------------------------------------------------------------------------
# dots and balloons on the Hecke side


def dot_multiplier(a: int, r: int, offset: int, ctx: CycContext) -> AffHeckeElt:
    """Left multiplier for a weight ``r`` dot on a strand of thickness ``a`` at ``offset``."""
    if not 0 <= r <= a:
        raise DomainError("dot weight out of range")
    xs = x_product(range(offset + 1, offset + r + 1), ctx.m, ctx.nu)
    if r == 0 or r == a:
        return xs
    return sigma_star(r, a - r, offset, ctx.m, ctx.nu) * xs


def g_r_element(r: int, i: int, ctx: CycContext, offset: int = 0) -> AffHeckeElt:
    """Image of ``prod_{j <= i} g_r(u_j)`` on a thickness ``r`` strand starting after ``offset``."""
    if r < 1:
        raise DomainError("r must be positive")
    if not 0 <= i <= ctx.ell:
        raise DomainError("i out of range")
    out = ctx.one()
    for j in range(1, i + 1):
        u = ctx.param(j)
        g = ctx.zero()
        coeff = PolyElt.const(1, ctx.m, ctx.nu)
        for k in range(r + 1):
            if k:
                coeff = coeff * (u + (k - 1)) * (-1)
            g = g + dot_multiplier(r, r - k, offset, ctx).scale(coeff)
        out = out * g
    return out
