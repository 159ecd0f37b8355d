"""Polynomial representation of the affine Schur category.

Objects are words of thick strands ``Thick(a)`` and red strands ``Red(j)``.
A thick strand of thickness ``a`` owns ``a`` consecutive x-variables, and a
morphism acts on polynomials that are symmetric within each thick strand.
Red strand ``j`` carries the parameter ``u_j``.

Generators and their operators:

=========  ==============================  ===========================================
kind       word change at ``pos``          operator
=========  ==============================  ===========================================
split      (a+b) -> (a, b)                 inclusion
merge      (a, b) -> (a+b)                 sum of Demazure actions of coset reps
cross      (a, b) -> (b, a)                Demazure action of the block-swap permutation
dot        (a) -> (a), weight r            omega_{a,r}
up         (a, u_j) -> (u_j, a)            identity
down       (u_j, a) -> (a, u_j)            multiplication by prod (x_k - u_j)
=========  ==============================  ===========================================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial
from typing import Iterable, Iterator, Sequence, Union

from gmpy2 import mpq

from . import _packed
from ._linalg import Echelon, EchelonModP
from .combinatorics import (
    DomainError,
    MultiComposition,
    crossing_permutation,
    dual_partition,
    flatten_parts,
    reduced_word,
)
from .parmat import ParMat, _block_index
from .polyalg import (
    PolyElt,
    demazure_perm,
    is_symmetric,
    merge_representatives,
    monomial_symmetric_basis,
    sigma_action,
    swap,
)


@dataclass(frozen=True)
class Thick:
    a: int

    def __repr__(self) -> str:
        return f"T{self.a}"


@dataclass(frozen=True)
class Red:
    j: int

    def __repr__(self) -> str:
        return f"u{self.j}"


Token = Union[Thick, Red]
ObjectWord = tuple[Token, ...]


def thick_blocks(word: ObjectWord) -> tuple[int, ...]:
    return tuple(t.a for t in word if isinstance(t, Thick))


def num_x(word: ObjectWord) -> int:
    return sum(thick_blocks(word))


def num_red(word: ObjectWord) -> int:
    return max((t.j for t in word if isinstance(t, Red)), default=0)


def x_offset(word: ObjectWord, pos: int) -> int:
    """Number of x-variables owned by thick tokens strictly left of ``pos``."""
    return sum(t.a for t in word[:pos] if isinstance(t, Thick))


def object_word(lam: MultiComposition, leading_block: bool = False) -> ObjectWord:
    """``u1 lam1 u2 lam2 ...``; with ``leading_block`` the first component precedes ``u1``."""
    out: list[Token] = []
    for k, comp in enumerate(lam):
        j = k if leading_block else k + 1
        if j >= 1:
            out.append(Red(j))
        out.extend(Thick(a) for a in comp)
    return tuple(out)


def is_valid_word(word: ObjectWord) -> bool:
    reds = [t.j for t in word if isinstance(t, Red)]
    return reds == list(range(1, len(reds) + 1)) and all(
        t.a >= 1 for t in word if isinstance(t, Thick)
    )


@dataclass(frozen=True)
class GenOp:
    """One generator placed at token position ``pos`` (0-based) of its source word.

    ``a`` and ``b`` are thicknesses; for ``dot`` ``b`` is the dot weight ``r``;
    for ``up``/``down`` ``red`` is the parameter index of the red strand.
    """

    kind: str
    pos: int
    a: int
    b: int = 0
    red: int = 0

    def apply_to_word(self, word: ObjectWord) -> ObjectWord:
        w = list(word)
        p, a, b = self.pos, self.a, self.b

        def expect(k: int, tok: Token) -> None:
            if not 0 <= k < len(w) or w[k] != tok:
                raise DomainError(f"{self} does not fit the word {word}")

        if self.kind == "split":
            expect(p, Thick(a + b))
            w[p : p + 1] = [Thick(a), Thick(b)]
        elif self.kind == "merge":
            expect(p, Thick(a))
            expect(p + 1, Thick(b))
            w[p : p + 2] = [Thick(a + b)]
        elif self.kind == "cross":
            expect(p, Thick(a))
            expect(p + 1, Thick(b))
            w[p], w[p + 1] = Thick(b), Thick(a)
        elif self.kind == "dot":
            expect(p, Thick(a))
            if not 0 <= b <= a:
                raise DomainError("dot weight out of range")
        elif self.kind == "up":
            expect(p, Thick(a))
            expect(p + 1, Red(self.red))
            w[p], w[p + 1] = Red(self.red), Thick(a)
        elif self.kind == "down":
            expect(p, Red(self.red))
            expect(p + 1, Thick(a))
            w[p], w[p + 1] = Thick(a), Red(self.red)
        else:
            raise DomainError(f"unknown generator {self.kind!r}")
        return tuple(w)

    def dagger(self) -> "GenOp":
        """The generator reflected top to bottom."""
        swap = {"split": "merge", "merge": "split", "up": "down", "down": "up"}
        if self.kind == "cross":
            return GenOp("cross", self.pos, self.b, self.a)
        return GenOp(swap.get(self.kind, self.kind), self.pos, self.a, self.b, self.red)


@dataclass(frozen=True)
class DiagramProgram:
    """Generators listed bottom to top."""

    source: ObjectWord
    target: ObjectWord
    ops: tuple[GenOp, ...] = ()

    def __post_init__(self) -> None:
        w = self.source
        for g in self.ops:
            w = g.apply_to_word(w)
        if w != self.target:
            raise DomainError(f"program ends at {w}, expected {self.target}")

    def then(self, other: "DiagramProgram") -> "DiagramProgram":
        """Stack ``other`` on top of ``self``."""
        if other.source != self.target:
            raise DomainError("programs are not composable")
        return DiagramProgram(self.source, other.target, self.ops + other.ops)

    def to_json(self) -> dict:
        return {
            "source": word_to_json(self.source),
            "target": word_to_json(self.target),
            "ops": [
                {"kind": g.kind, "pos": g.pos, "a": g.a, "b": g.b, "red": g.red} for g in self.ops
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DiagramProgram":
        try:
            ops = tuple(
                GenOp(o["kind"], int(o["pos"]), int(o["a"]), int(o.get("b", 0)), int(o.get("red", 0)))
                for o in data["ops"]
            )
            return cls(word_from_json(data["source"]), word_from_json(data["target"]), ops)
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed program JSON: {exc}") from exc


def word_to_json(word: ObjectWord) -> list:
    return [t.a if isinstance(t, Thick) else f"u{t.j}" for t in word]


def word_from_json(data: list) -> ObjectWord:
    out: list[Token] = []
    for item in data:
        if isinstance(item, str) and item.startswith("u"):
            out.append(Red(int(item[1:])))
        else:
            out.append(Thick(int(item)))
    return tuple(out)


def dagger(p: DiagramProgram) -> DiagramProgram:
    return DiagramProgram(p.target, p.source, tuple(g.dagger() for g in reversed(p.ops)))


# ---------------------------------------------------------------------------
# operator semantics


def dot_operator(f: PolyElt, a: int, r: int, offset: int) -> PolyElt:
    """``omega_{a,r}``: split off ``r`` strands, multiply them, merge back."""
    if r == 0:
        return f
    exp = [0] * (f.nx + f.nu)
    for k in range(offset, offset + r):
        exp[k] = 1
    g = f.mul_monomial(tuple(exp))
    if r == a:
        return g
    return sigma_action(g, r, a - r, offset)


def dot_closed_form(f: PolyElt, a: int, r: int, offset: int) -> PolyElt:
    """The alternative closed form ``f * sigma_{a-r, r}.(x_1...x_a)`` found in the literature.

    Kept only so that tests can compare it with :func:`dot_operator`.
    """
    exp = [0] * (f.nx + f.nu)
    for k in range(offset, offset + a):
        exp[k] = 1
    base = PolyElt.monomial(exp, f.nx, f.nu)
    if r < a:
        base = sigma_action(base, r, a - r, offset)
    return f * base


def traverse_factor(nx: int, nu: int, offset: int, a: int, j: int, u_values: Sequence | None = None) -> PolyElt:
    """``prod (x_k - u_j)`` over the strand; ``u_j`` is a number when ``u_values`` is given."""
    out = PolyElt.const(1, nx, nu)
    for k in range(offset + 1, offset + a + 1):
        uj = PolyElt.u(j, nx, nu) if u_values is None else PolyElt.const(u_values[j - 1], nx, nu)
        out = out * (PolyElt.x(k, nx, nu) - uj)
    return out


def eval_gen(
    g: GenOp, word: ObjectWord, f: PolyElt, u_values: Sequence | None = None
) -> tuple[ObjectWord, PolyElt]:
    target = g.apply_to_word(word)
    off = x_offset(word, g.pos)
    if g.kind in ("split", "up"):
        return target, f
    if g.kind == "merge":
        return target, sigma_action(f, g.a, g.b, off)
    if g.kind == "cross":
        return target, demazure_perm(f, crossing_permutation(g.a, g.b), off)
    if g.kind == "dot":
        return target, dot_operator(f, g.a, g.b, off)
    if g.kind == "down":
        if u_values is not None:
            if g.red > len(u_values):
                raise DomainError("red strand index exceeds the parameter count")
            return target, traverse_factor(f.nx, f.nu, off, g.a, g.red, u_values) * f
        if g.red > f.nu:
            raise DomainError("red strand index exceeds the parameter count")
        return target, traverse_factor(f.nx, f.nu, off, g.a, g.red) * f
    raise DomainError(f"unknown generator {g.kind!r}")


def eval_program_packed(p: DiagramProgram, f: PolyElt, u_values: Sequence):
    """Numeric evaluation in the packed integer representation.

    Returns ``(layout, packed)``.  The value is ``q^k`` times the true one,
    where ``u = p/q`` runs over the parameters met by traverse-down generators
    (``k`` counts the strands).  Only integer inputs without parameters are
    accepted; :class:`PackedOverflow` signals that the exact path is needed.
    """
    bound = f.degree() + sum(g.b if g.kind == "dot" else g.a for g in p.ops if g.kind in ("dot", "down"))
    layout = _packed.Layout(f.nx, bound)
    d = _packed.from_poly(f, layout)
    word = p.source
    for g in p.ops:
        off = x_offset(word, g.pos)
        target = g.apply_to_word(word)
        if g.kind == "merge":
            d = _packed.sigma_action(d, g.a, g.b, off, layout)
        elif g.kind == "cross":
            d = _packed.cross(d, g.a, g.b, off, layout)
        elif g.kind == "dot":
            d = _packed.dot(d, g.a, g.b, off, layout)
        elif g.kind == "down":
            d = _packed.multiply(_packed.scaled_traverse_factor(off, g.a, u_values[g.red - 1], layout), d)
        word = target
    return layout, d


def eval_program(p: DiagramProgram, f: PolyElt, check: bool = True, u_values: Sequence | None = None) -> PolyElt:
    """Apply ``p`` to ``f``; with ``u_values`` the red parameters are numbers throughout."""
    if f.nx != num_x(p.source):
        raise DomainError("polynomial ring does not match the source object")
    if check and not is_symmetric(f, thick_blocks(p.source)):
        raise DomainError("input lacks the symmetry of the source object")
    word = p.source
    for g in p.ops:
        word, f = eval_gen(g, word, f, u_values)
    return f


# ---------------------------------------------------------------------------
# building programs with possibly empty strands


class Builder:
    """Records generators on a word that may contain ``Thick(0)`` placeholders.

    Generators touching a zero-thickness strand are identities and are dropped;
    positions are translated to the word without placeholders at the end.
    """

    def __init__(self, word: Sequence[Token]):
        self.start = tuple(word)
        self.word: list[Token] = list(word)
        self.log: list[tuple[GenOp, tuple[Token, ...]]] = []

    def _record(self, op: GenOp) -> None:
        self.log.append((op, tuple(self.word)))

    def split(self, pos: int, a: int, b: int) -> "Builder":
        assert self.word[pos] == Thick(a + b), (self.word, pos, a, b)
        if a and b:
            self._record(GenOp("split", pos, a, b))
        self.word[pos : pos + 1] = [Thick(a), Thick(b)]
        return self

    def merge(self, pos: int, a: int, b: int) -> "Builder":
        assert self.word[pos] == Thick(a) and self.word[pos + 1] == Thick(b), (self.word, pos)
        if a and b:
            self._record(GenOp("merge", pos, a, b))
        self.word[pos : pos + 2] = [Thick(a + b)]
        return self

    def cross(self, pos: int) -> "Builder":
        s, t = self.word[pos], self.word[pos + 1]
        assert isinstance(s, Thick) and isinstance(t, Thick)
        if s.a and t.a:
            self._record(GenOp("cross", pos, s.a, t.a))
        self.word[pos], self.word[pos + 1] = t, s
        return self

    def dot(self, pos: int, r: int) -> "Builder":
        s = self.word[pos]
        assert isinstance(s, Thick) and 0 <= r <= s.a
        if r:
            self._record(GenOp("dot", pos, s.a, r))
        return self

    def packet(self, pos: int, eta: Sequence[int]) -> "Builder":
        for r in eta:
            self.dot(pos, r)
        return self

    def up(self, pos: int) -> "Builder":
        s, t = self.word[pos], self.word[pos + 1]
        assert isinstance(s, Thick) and isinstance(t, Red)
        if s.a:
            self._record(GenOp("up", pos, s.a, 0, t.j))
        self.word[pos], self.word[pos + 1] = t, s
        return self

    def down(self, pos: int) -> "Builder":
        s, t = self.word[pos], self.word[pos + 1]
        assert isinstance(s, Red) and isinstance(t, Thick)
        if t.a:
            self._record(GenOp("down", pos, t.a, 0, s.j))
        self.word[pos], self.word[pos + 1] = t, s
        return self

    def build(self) -> DiagramProgram:
        def strip(w) -> ObjectWord:
            return tuple(t for t in w if not (isinstance(t, Thick) and t.a == 0))

        ops = []
        for op, w in self.log:
            shift = sum(1 for t in w[: op.pos] if isinstance(t, Thick) and t.a == 0)
            ops.append(GenOp(op.kind, op.pos - shift, op.a, op.b, op.red))
        return DiagramProgram(strip(self.start), strip(self.word), tuple(ops))


# ---------------------------------------------------------------------------
# elementary diagrams


def compile_parmat(x: ParMat, leading_block: bool = False) -> DiagramProgram:
    """Canonical program for the elementary diagram of ``x``.

    Bottom: each bottom vertex splits into its legs (ordered by target vertex)
    and each leg gets its dot packet.  Middle: legs and red strands are bubble
    sorted stably into target order; a leg overtaking a red strand to the right
    is a traverse-up, to the left a traverse-down.  Top: legs sharing a target
    vertex merge left to right.
    """
    src = object_word(x.col_blocks, leading_block)
    tgt = object_word(x.row_blocks, leading_block)
    # target position of each top vertex and each red strand
    top_pos = [k for k, t in enumerate(tgt) if isinstance(t, Thick)]
    red_pos = {t.j: k for k, t in enumerate(tgt) if isinstance(t, Red)}
    b = Builder(src)
    items: list[tuple[str, int]] = []  # ('leg', target row) or ('red', j)
    col = 0
    for tok in src:
        if isinstance(tok, Red):
            items.append(("red", tok.j))
            continue
        legs = [(r, x.A[r][col], x.P[r][col]) for r in range(len(x.A)) if x.A[r][col]]
        pos = len(items)
        rest = tok.a
        for k, (r, a, eta) in enumerate(legs):
            if k < len(legs) - 1:
                b.split(pos + k, a, rest - a)
                rest -= a
            items.append(("leg", r))
        for k, (r, a, eta) in enumerate(legs):
            b.packet(pos + k, eta)
        col += 1

    def key(item: tuple[str, int]) -> int:
        return top_pos[item[1]] if item[0] == "leg" else red_pos[item[1]]

    n = len(items)
    for sweep in range(n):
        moved = False
        for k in range(n - 1 - sweep):
            if key(items[k]) > key(items[k + 1]):
                left, right = items[k][0], items[k + 1][0]
                if left == "leg" and right == "leg":
                    b.cross(k)
                elif left == "leg":
                    b.up(k)
                elif right == "leg":
                    b.down(k)
                else:
                    raise DomainError("red strands cannot cross")
                items[k], items[k + 1] = items[k + 1], items[k]
                moved = True
        if not moved:
            break

    # merge legs of each top vertex, scanning from the right so positions stay valid
    k = len(items) - 1
    while k > 0:
        if items[k][0] == "leg" and items[k - 1][0] == "leg" and items[k][1] == items[k - 1][1]:
            start = k
            while start > 0 and items[start - 1][0] == "leg" and items[start - 1][1] == items[k][1]:
                start -= 1
            for _ in range(k - start):
                left = b.word[start]
                right = b.word[start + 1]
                b.merge(start, left.a, right.a)
                items.pop(start + 1)
            k = start - 1
        else:
            k -= 1
    prog = b.build()
    if prog.target != tgt:
        raise DomainError("compiled program does not reach the target object")
    return prog


def staircase_input(x: ParMat, N: int, nu: int, leading_block: bool = False) -> PolyElt:
    """Bottom vertex ``k`` (1-based) gets exponent ``k*N`` on each of its variables."""
    parts = flatten_parts(x.col_blocks)
    exp: list[int] = []
    for k, a in enumerate(parts, start=1):
        exp.extend([k * N] * a)
    return PolyElt.monomial(tuple(exp) + (0,) * nu, sum(parts), nu)


def predicted_leading_exponent(x: ParMat, N: int) -> tuple[int, ...]:
    """Closed-form leading exponent of the diagram applied to the staircase input."""
    rows = _block_index(x.row_blocks)
    cols = _block_index(x.col_blocks)
    out: list[int] = []
    for i, (p, _) in enumerate(rows):
        exps: list[int] = []
        for j, (q, _) in enumerate(cols):
            a = x.A[i][j]
            if not a:
                continue
            dual = dual_partition(x.P[i][j])
            dual = tuple(dual) + (0,) * (a - len(dual))
            shift = max(0, q - p)
            exps.extend((j + 1) * N + dual[k] + shift for k in range(a))
        out.extend(sorted(exps, reverse=True))
    return tuple(out)


def default_staircase_N(x: ParMat) -> int:
    m = sum(flatten_parts(x.col_blocks))
    thick = max(flatten_parts(x.col_blocks) + flatten_parts(x.row_blocks), default=0)
    return m + x.degree() + thick + 1


@dataclass
class LeadingTermReport:
    parmat: ParMat
    N: int
    observed: tuple[int, ...]
    predicted: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.observed == self.predicted


def _swap_perm(f: PolyElt, w, offset: int) -> PolyElt:
    for i in reversed(reduced_word(tuple(w))):
        f = swap(f, offset + i)
    return f


def eval_program_top_degree(p: DiagramProgram, f: PolyElt) -> PolyElt:
    """Top total-degree component of ``eval_program(p, f)`` for homogeneous ``f``.

    Each generator is replaced by its top-degree part: a Demazure step by the
    plain swap, a traverse down by ``prod (x_k - u_j)``, and splits and
    traverses up stay the identity.  For a monomial input with positive
    coefficient the result is nonzero (its ``u = 0`` part is a sum of
    monomials with positive coefficients), so it has the same degree and the
    same graded leading monomial as the full evaluation.
    """
    if f.nx != num_x(p.source):
        raise DomainError("polynomial ring does not match the source object")
    word = p.source
    for g in p.ops:
        off = x_offset(word, g.pos)
        target = g.apply_to_word(word)
        if g.kind == "merge":
            f = _symmetrize_top(f, g.a, g.b, off)
        elif g.kind == "cross":
            f = _swap_perm(f, crossing_permutation(g.a, g.b), off)
        elif g.kind == "dot" and g.b:
            exp = [0] * (f.nx + f.nu)
            for k in range(off, off + g.b):
                exp[k] = 1
            f = f.mul_monomial(tuple(exp))
            if g.b < g.a:
                f = _symmetrize_top(f, g.b, g.a - g.b, off)
        elif g.kind == "down":
            if g.red > f.nu:
                raise DomainError("red strand index exceeds the parameter count")
            f = traverse_factor(f.nx, f.nu, off, g.a, g.red) * f
        word = target
    return f


def _symmetrize_top(f: PolyElt, a: int, b: int, offset: int) -> PolyElt:
    out = PolyElt.zero(f.nx, f.nu)
    for w in merge_representatives(a, b):
        out = out + _swap_perm(f, w, offset)
    return out


def leading_term_check(
    x: ParMat,
    N: int | None = None,
    leading_block: bool = False,
    nu: int | None = None,
    top_degree: bool = False,
) -> LeadingTermReport:
    """Compare the graded leading exponent of the staircase evaluation with the prediction.

    ``top_degree=True`` evaluates only the top-degree component, which has the
    same leading monomial and stays small when the full output would not fit
    in memory.
    """
    N = default_staircase_N(x) if N is None else N
    prog = compile_parmat(x, leading_block)
    nu = num_red(prog.source) if nu is None else nu
    f = staircase_input(x, N, nu, leading_block)
    out = eval_program_top_degree(prog, f) if top_degree else eval_program(prog, f, check=False)
    lead = out.leading_monomial()
    return LeadingTermReport(x, N, tuple(lead[: out.nx]), predicted_leading_exponent(x, N))


def evaluation_rank(
    elements: Sequence[ParMat],
    inputs: Sequence[PolyElt],
    leading_block: bool = False,
    u_values: Sequence | None = None,
) -> int:
    """Rank of the matrix whose columns are the diagrams evaluated on ``inputs``.

    Parameters are specialized to ``u_values`` when given; independence at one
    numeric point implies independence over the field of rational functions.
    """
    ech = Echelon()
    for x in elements:
        prog = compile_parmat(x, leading_block)
        vec: dict = {}
        for k, f in enumerate(inputs):
            out = eval_program(prog, f, check=False)
            if u_values is not None:
                out = out.specialize(u_values)
            for e, c in out.terms.items():
                vec[(k, e)] = c
        ech.add(vec)
    return ech.rank


@dataclass
class FaithfulnessReport:
    nu: MultiComposition
    mu: MultiComposition
    count: int = 0
    rank: int = 0
    distinct_leading: int = 0
    formula_mismatches: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.rank == self.count == self.distinct_leading and not self.formula_mismatches
        )

    def to_json(self) -> dict:
        return {
            "nu": [list(c) for c in self.nu],
            "mu": [list(c) for c in self.mu],
            "count": self.count,
            "rank": self.rank,
            "distinct_leading": self.distinct_leading,
            "formula_mismatches": self.formula_mismatches[:10],
            "ok": self.ok,
        }


def _column_rank(vectors: list[dict], integral: bool) -> int:
    """Exact rank; integer vectors are first tried modulo a large prime."""
    if integral:
        mod = EchelonModP()
        for v in vectors:
            mod.add(v)
        if mod.rank == len(vectors):
            return mod.rank
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def faithfulness_check(
    nu: MultiComposition,
    mu: MultiComposition,
    max_degree: int = 2,
    leading_block: bool = False,
    u_values: Sequence | None = None,
    family_size: int = 1,
    N: int | None = None,
) -> FaithfulnessReport:
    """Leading terms and evaluation rank for every decorated matrix up to ``max_degree``.

    All elements of ``ParMat(nu, mu)`` act on the staircase monomials for
    ``family_size`` consecutive values of ``N``.  The leading monomial at the
    smallest ``N`` is compared with the closed formula, and the rank of the
    stacked coefficient vectors (at the numeric point ``u_values`` when given)
    must equal the number of elements.

    ``N`` defaults to ``m + max_degree + 1``, the smallest value exceeding
    every dot degree plus ``m``; output size grows quickly with ``N``.

    With ``u_values`` the evaluation runs on the packed integer path and the
    rank is certified modulo a large prime first, falling back to exact
    rational elimination only if that certificate fails.
    """
    from .parmat import enumerate_parmat

    rep = FaithfulnessReport(nu, mu)
    elements = enumerate_parmat(nu, mu, max_degree)
    rep.count = len(elements)
    if not elements:
        return rep
    N0 = sum(flatten_parts(mu)) + max_degree + 1 if N is None else N
    src = object_word(mu, leading_block)
    # specializing commutes with every generator, so numbers can go in from the start
    nu_count = 0 if u_values is not None else max(num_red(src), 1)
    inputs = [staircase_input(elements[0], N0 + k, nu_count, leading_block) for k in range(family_size)]
    vectors = []
    leads = set()
    for x in elements:
        prog = compile_parmat(x, leading_block)
        vec: dict = {}
        for k, f in enumerate(inputs):
            if u_values is None:
                out = eval_program(prog, f, check=False)
                lead = tuple(out.leading_monomial()[: out.nx]) if out.terms else None
                terms = out.terms
            else:
                # a nonzero rescaling of a column keeps both the rank and the leading monomial
                try:
                    layout, packed = eval_program_packed(prog, f, u_values)
                    lead = _packed.leading_exponent(packed, layout)
                    terms = _packed.to_dict(packed)
                except _packed.PackedOverflow:
                    out = eval_program(prog, f, check=False, u_values=u_values)
                    lead = tuple(out.leading_monomial()[: out.nx]) if out.terms else None
                    terms = out.terms
            if k == 0:
                leads.add(lead)
                want = predicted_leading_exponent(x, N0)
                if lead != want:
                    rep.formula_mismatches.append(
                        {"parmat": x.to_json(), "observed": lead and list(lead), "predicted": list(want)}
                    )
            if family_size == 1:
                vec = terms
            else:
                for e, c in terms.items():
                    vec[(k, e)] = c
        vectors.append(vec)
    rep.rank = _column_rank(vectors, integral=u_values is not None)
    rep.distinct_leading = len(leads)
    return rep


# ---------------------------------------------------------------------------
# relations


Coefficient = Union[int, mpq, PolyElt]


@dataclass
class RelationInstance:
    """``sum(c * F(p) for c, p in lhs) == sum(c * F(p) for c, p in rhs)``."""

    name: str
    params: tuple
    lhs: list[tuple[Coefficient, DiagramProgram]]
    rhs: list[tuple[Coefficient, DiagramProgram]]

    @property
    def source(self) -> ObjectWord:
        return (self.lhs or self.rhs)[0][1].source


@dataclass
class RelationReport:
    suite: str
    checked: int = 0
    instances: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "instances": self.instances,
            "evaluations": self.checked,
            "failures": self.failures,
            "ok": self.ok,
        }


def _lift(c: Coefficient, nx: int, nu: int) -> PolyElt:
    if isinstance(c, PolyElt):
        return c.extend(nx, nu) if c.nx == 0 else c
    return PolyElt.const(c, nx, nu)


def u_poly(j: int, nu: int) -> PolyElt:
    return PolyElt.u(j, 0, nu)


def evaluate_side(side, f: PolyElt) -> PolyElt:
    out = PolyElt.zero(f.nx, f.nu)
    for c, prog in side:
        out = out + _lift(c, f.nx, f.nu) * eval_program(prog, f, check=False)
    return out


def check_instance(inst: RelationInstance, max_degree: int, nu: int | None = None) -> tuple[int, dict | None]:
    src = inst.source
    nx = num_x(src)
    nu = max(num_red(src), 1) if nu is None else nu
    count = 0
    for f in monomial_symmetric_basis(thick_blocks(src), max_degree, nx, nu):
        count += 1
        left = evaluate_side(inst.lhs, f)
        right = evaluate_side(inst.rhs, f)
        if left != right:
            return count, {
                "relation": inst.name,
                "params": list(inst.params),
                "input": str(f),
                "lhs": str(left),
                "rhs": str(right),
            }
    return count, None


def _prog(word, steps) -> DiagramProgram:
    b = Builder(word)
    for name, *args in steps:
        getattr(b, name)(*args)
    return b.build()


T = Thick


def _pairs(max_thickness: int) -> Iterator[tuple[int, int]]:
    for a in range(1, max_thickness + 1):
        for b in range(1, max_thickness + 1):
            yield a, b


def g_r(r: int, pos: int, word, j: int, nu: int) -> list[tuple[Coefficient, DiagramProgram]]:
    """``g_r(u_j) = sum_i (-1)^i (u_j)(u_j+1)...(u_j+i-1) omega_{r-i}`` on the strand at ``pos``."""
    out = []
    u = u_poly(j, nu)
    for i in range(r + 1):
        coeff = PolyElt.const((-1) ** i, 0, nu)
        for k in range(i):
            coeff = coeff * (u + k)
        out.append((coeff, _prog(word, [("dot", pos, r - i)])))
    return out


def full_relations(max_thickness: int = 3) -> Iterator[RelationInstance]:
    A = max_thickness
    ident = lambda w: _prog(w, [])
    # associativity of merges and splits
    for a in range(1, A + 1):
        for b in range(1, A + 1):
            for c in range(1, A + 1):
                w = (T(a), T(b), T(c))
                l = _prog(w, [("merge", 0, a, b), ("merge", 0, a + b, c)])
                r = _prog(w, [("merge", 1, b, c), ("merge", 0, a, b + c)])
                yield RelationInstance("webassoc/merge", (a, b, c), [(1, l)], [(1, r)])
                yield RelationInstance("webassoc/split", (a, b, c), [(1, dagger(l))], [(1, dagger(r))])
    # merge followed by split
    for a, c in _pairs(A):
        for b in range(1, a + c):
            d = a + c - b
            w = (T(a), T(c))
            lhs = _prog(w, [("merge", 0, a, c), ("split", 0, b, d)])
            rhs = []
            for s in range(0, a + 1):
                t = d - a + s
                if not 0 <= t <= c or s + c - t != b:
                    continue
                rhs.append((1, _prog(w, [
                    ("split", 0, s, a - s), ("split", 2, c - t, t), ("cross", 1),
                    ("merge", 0, s, c - t), ("merge", 1, a - s, t),
                ])))
            yield RelationInstance("mergesplit", (a, c, b, d), [(1, lhs)], rhs)
    # split followed by merge
    for a, b in _pairs(A):
        w = (T(a + b),)
        yield RelationInstance(
            "splitmerge", (a, b),
            [(1, _prog(w, [("split", 0, a, b), ("merge", 0, a, b)]))],
            [(comb(a + b, a), ident(w))],
        )
    for a, b in _pairs(A):
        w = (T(a), T(b))
        yield RelationInstance(
            "symmetric", (a, b), [(1, _prog(w, [("cross", 0), ("cross", 0)]))], [(1, ident(w))]
        )
        # crossing through splits and merges
        rhs = []
        for t in range(0, min(a, b) + 1):
            rhs.append(((-1) ** t, _prog(w, [
                ("split", 0, t, a - t), ("merge", 1, a - t, b), ("split", 1, b - t, a), ("merge", 0, t, b - t),
            ])))
        yield RelationInstance("crossgen", (a, b), [(1, _prog(w, [("cross", 0)]))], rhs)
        # dots moving through crossings
        lhs = _prog(w, [("cross", 0), ("dot", 0, b)])
        rhs = []
        for t in range(0, min(a, b) + 1):
            rhs.append((factorial(t), _prog(w, [
                ("split", 0, t, a - t), ("split", 2, b - t, t), ("dot", 2, b - t), ("cross", 1),
                ("merge", 0, t, b - t), ("merge", 1, a - t, t),
            ])))
        yield RelationInstance("dotmovecrossing/top", (a, b), [(1, lhs)], rhs)
        wm = (T(b), T(a))
        lhs = _prog(wm, [("dot", 0, b), ("cross", 0)])
        rhs = []
        for t in range(0, min(a, b) + 1):
            rhs.append((factorial(t), _prog(wm, [
                ("split", 0, t, b - t), ("split", 2, a - t, t), ("cross", 1), ("dot", 2, b - t),
                ("merge", 0, t, a - t), ("merge", 1, b - t, t),
            ])))
        yield RelationInstance("dotmovecrossing/bottom", (a, b), [(1, lhs)], rhs)
        # dots through a split and a merge
        w1 = (T(a + b),)
        yield RelationInstance(
            "dotmovesplitss/split", (a, b),
            [(1, _prog(w1, [("dot", 0, a + b), ("split", 0, a, b)]))],
            [(1, _prog(w1, [("split", 0, a, b), ("dot", 0, a), ("dot", 1, b)]))],
        )
        yield RelationInstance(
            "dotmovesplitss/merge", (a, b),
            [(1, _prog(w, [("merge", 0, a, b), ("dot", 0, a + b)]))],
            [(1, _prog(w, [("dot", 0, a), ("dot", 1, b), ("merge", 0, a, b)]))],
        )
        # swallowing a crossing into a merge or split
        yield RelationInstance(
            "swallows/merge", (a, b),
            [(1, _prog(w, [("cross", 0), ("merge", 0, b, a)]))],
            [(1, _prog(w, [("merge", 0, a, b)]))],
        )
        yield RelationInstance(
            "swallows/split", (a, b),
            [(1, _prog(w1, [("split", 0, b, a), ("cross", 0)]))],
            [(1, _prog(w1, [("split", 0, a, b)]))],
        )
    # balloon: a-fold split, a dots, a-fold merge
    for a in range(1, A + 1):
        w = (T(a),)
        steps = [("split", k, 1, a - 1 - k) for k in range(a - 1)] + [("dot", k, 1) for k in range(a)]
        steps += [("merge", 0, k, 1) for k in range(1, a)]
        yield RelationInstance(
            "intergralballon", (a,), [(1, _prog(w, steps))], [(factorial(a), _prog(w, [("dot", 0, a)]))]
        )
    # sliders: a strand passing a split or merge
    for a in range(1, A + 1):
        for b in range(1, A + 1):
            for c in range(1, A + 1):
                yield RelationInstance(
                    "sliders/split-left", (a, b, c),
                    [(1, _prog((T(b + c), T(a)), [("cross", 0), ("split", 1, b, c)]))],
                    [(1, _prog((T(b + c), T(a)), [("split", 0, b, c), ("cross", 1), ("cross", 0)]))],
                )
                yield RelationInstance(
                    "sliders/split-right", (a, b, c),
                    [(1, _prog((T(a), T(b + c)), [("cross", 0), ("split", 0, b, c)]))],
                    [(1, _prog((T(a), T(b + c)), [("split", 1, b, c), ("cross", 0), ("cross", 1)]))],
                )
                yield RelationInstance(
                    "sliders/merge-left", (a, b, c),
                    [(1, _prog((T(b), T(c), T(a)), [("merge", 0, b, c), ("cross", 0)]))],
                    [(1, _prog((T(b), T(c), T(a)), [("cross", 1), ("cross", 0), ("merge", 1, b, c)]))],
                )
                yield RelationInstance(
                    "sliders/merge-right", (a, b, c),
                    [(1, _prog((T(a), T(b), T(c)), [("merge", 1, b, c), ("cross", 0)]))],
                    [(1, _prog((T(a), T(b), T(c)), [("cross", 0), ("cross", 1), ("merge", 0, b, c)]))],
                )
    # braid relation for thick crossings
    for a in range(1, A + 1):
        for b in range(1, A + 1):
            for c in range(1, A + 1):
                w = (T(a), T(b), T(c))
                yield RelationInstance(
                    "braid", (a, b, c),
                    [(1, _prog(w, [("cross", 0), ("cross", 1), ("cross", 0)]))],
                    [(1, _prog(w, [("cross", 1), ("cross", 0), ("cross", 1)]))],
                )
    yield from red_relations(A)


def red_relations(max_thickness: int = 3) -> Iterator[RelationInstance]:
    A = max_thickness
    R = Red(1)
    nu = 1
    for r in range(1, A + 1):
        w = (T(r), R)
        yield RelationInstance("adaptorR", (r,), [(1, _prog(w, [("up", 0), ("down", 0)]))], g_r(r, 0, w, 1, nu))
        w = (R, T(r))
        yield RelationInstance("adaptorL", (r,), [(1, _prog(w, [("down", 0), ("up", 0)]))], g_r(r, 1, w, 1, nu))
        for s in range(0, r + 1):
            yield RelationInstance(
                "dotmoveadaptor/up", (r, s),
                [(1, _prog((T(r), R), [("dot", 0, s), ("up", 0)]))],
                [(1, _prog((T(r), R), [("up", 0), ("dot", 1, s)]))],
            )
            yield RelationInstance(
                "dotmoveadaptor/down", (r, s),
                [(1, _prog((R, T(r)), [("dot", 1, s), ("down", 0)]))],
                [(1, _prog((R, T(r)), [("down", 0), ("dot", 0, s)]))],
            )
    for a, b in _pairs(A):
        w = (T(a), R, T(b))
        lhs = _prog(w, [("up", 0), ("cross", 1), ("down", 0)])
        rhs = [(1, _prog(w, [("down", 1), ("cross", 0), ("up", 1)]))]
        for t in range(1, min(a, b) + 1):
            # (t, a-t, u, b-t, t) -> ... -> (b, u, a)
            rhs.append((factorial(t), _prog(w, [
                ("split", 0, t, a - t), ("split", 3, b - t, t), ("down", 2), ("cross", 1),
                ("up", 2), ("merge", 0, t, b - t), ("merge", 2, a - t, t),
            ])))
        yield RelationInstance("adaptrermovecross", (a, b), [(1, lhs)], rhs)
        # a red strand passing a crossing
        w = (R, T(a), T(b))
        yield RelationInstance(
            "adamovecrossings/down", (a, b),
            [(1, _prog(w, [("down", 0), ("down", 1), ("cross", 0)]))],
            [(1, _prog(w, [("cross", 1), ("down", 0), ("down", 1)]))],
        )
        w = (T(a), T(b), R)
        yield RelationInstance(
            "adamovecrossings/up", (a, b),
            [(1, _prog(w, [("up", 1), ("up", 0), ("cross", 1)]))],
            [(1, _prog(w, [("cross", 0), ("up", 1), ("up", 0)]))],
        )
        # a red strand passing a split or merge
        yield RelationInstance(
            "adaptermovemerge/split-up", (a, b),
            [(1, _prog((T(a + b), R), [("up", 0), ("split", 1, a, b)]))],
            [(1, _prog((T(a + b), R), [("split", 0, a, b), ("up", 1), ("up", 0)]))],
        )
        yield RelationInstance(
            "adaptermovemerge/split-down", (a, b),
            [(1, _prog((R, T(a + b)), [("down", 0), ("split", 0, a, b)]))],
            [(1, _prog((R, T(a + b)), [("split", 1, a, b), ("down", 0), ("down", 1)]))],
        )
        yield RelationInstance(
            "adaptermovemerge/merge-down", (a, b),
            [(1, _prog((R, T(a), T(b)), [("merge", 1, a, b), ("down", 0)]))],
            [(1, _prog((R, T(a), T(b)), [("down", 0), ("down", 1), ("merge", 0, a, b)]))],
        )
        yield RelationInstance(
            "adaptermovemerge/merge-up", (a, b),
            [(1, _prog((T(a), T(b), R), [("merge", 0, a, b), ("up", 0)]))],
            [(1, _prog((T(a), T(b), R), [("up", 1), ("up", 0), ("merge", 1, a, b)]))],
        )


def reduced_relations(max_thickness: int = 3) -> Iterator[RelationInstance]:
    """The smaller presentation: thin dots only, plus the red-strand relations at thickness one."""
    A = max_thickness
    ident = lambda w: _prog(w, [])
    for inst in full_relations(A):
        if inst.name.split("/")[0] in ("webassoc", "mergesplit", "splitmerge"):
            yield RelationInstance(inst.name + " C", inst.params, inst.lhs, inst.rhs)
    w = (T(1), T(1))
    yield RelationInstance(
        "dotmovecrossingC/top", (1, 1),
        [(1, _prog(w, [("cross", 0), ("dot", 0, 1)]))],
        [(1, _prog(w, [("dot", 1, 1), ("cross", 0)])), (1, ident(w))],
    )
    yield RelationInstance(
        "dotmovecrossingC/bottom", (1, 1),
        [(1, _prog(w, [("dot", 0, 1), ("cross", 0)]))],
        [(1, _prog(w, [("cross", 0), ("dot", 1, 1)])), (1, ident(w))],
    )
    R = Red(1)
    u = u_poly(1, 1)
    for w, steps, pos in (((T(1), R), [("up", 0), ("down", 0)], 0), ((R, T(1)), [("down", 0), ("up", 0)], 1)):
        yield RelationInstance(
            "chamvanish1 C", (pos,),
            [(1, _prog(w, steps))],
            [(1, _prog(w, [("dot", pos, 1)])), (-u, ident(w))],
        )
    w = (T(1), R, T(1))
    yield RelationInstance(
        "adaptrermovecross C", (1, 1),
        [(1, _prog(w, [("up", 0), ("cross", 1), ("down", 0)]))],
        [(1, _prog(w, [("down", 1), ("cross", 0), ("up", 1)])), (1, ident(w))],
    )
    for inst in red_relations(A):
        if inst.name.startswith("adaptermovemerge"):
            yield RelationInstance(inst.name.replace("adaptermovemerge", "adaptermovemerge C"), inst.params, inst.lhs, inst.rhs)


def crossing_instances(max_thickness: int = 3) -> Iterator[RelationInstance]:
    """Demazure crossing against its expression through splits and merges."""
    for inst in full_relations(max_thickness):
        if inst.name == "crossgen":
            yield inst


SUITES = {
    "full": full_relations,
    "reduced": reduced_relations,
    "crossgen": crossing_instances,
}


def verify_relations(suite: str = "full", max_thickness: int = 3, max_degree: int = 4) -> RelationReport:
    if suite not in SUITES:
        raise DomainError(f"unknown relation suite {suite!r}")
    report = RelationReport(suite)
    for inst in SUITES[suite](max_thickness):
        report.instances += 1
        n, failure = check_instance(inst, max_degree)
        report.checked += n
        if failure:
            report.failures.append(failure)
    return report
