"""Cyclotomic Schur algebra of permutation-module homomorphisms.

A morphism ``M^nu -> M^mu`` is stored as the image of the cyclic generator
``m_nu``.  Diagram programs from :mod:`schurkit.schurrep` are evaluated on this
side by turning each generator into a left multiplier of the Hecke algebra.
Linear solves (composition, coordinates, ranks) run at numeric parameters.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from gmpy2 import mpq

from ._linalg import Echelon
from .combinatorics import (
    DomainError,
    MultiComposition,
    SemistandardTableau,
    dominance_leq,
    enumerate_multicompositions,
    enumerate_multipartitions,
    enumerate_sst,
    size,
)
from .hecke import (
    AffHeckeElt,
    ContextError,
    CycContext,
    PermModuleElt,
    anti_involution,
    dot_multiplier,
    m_lambda,
    m_ST,
    perm_module_expand,
    sigma_star,
)
from .parmat import ParMat, a_matrix_of_sst, count_parmat_flat, enumerate_parmat_flat
from .polyalg import PolyElt
from .schurrep import (
    DiagramProgram,
    GenOp,
    ObjectWord,
    Red,
    RelationInstance,
    Thick,
    compile_parmat,
    dagger,
    full_relations,
    num_x,
    object_word,
    reduced_relations,
    x_offset,
)

# ---------------------------------------------------------------------------
# objects


def in_layout(word: ObjectWord, ell: int) -> bool:
    """True for ``u1 comp1 u2 comp2 ... u_ell comp_ell``: nothing left of ``u1``."""
    reds = [t.j for t in word if isinstance(t, Red)]
    if reds != list(range(1, ell + 1)):
        return False
    return bool(word) and isinstance(word[0], Red)


def word_multicomposition(word: ObjectWord, ell: int) -> MultiComposition:
    if not in_layout(word, ell):
        raise DomainError(f"{word} is not a level-{ell} object with empty leading block")
    comps: list[list[int]] = []
    for t in word:
        if isinstance(t, Red):
            comps.append([])
        else:
            comps[-1].append(t.a)
    return tuple(tuple(c) for c in comps)


# ---------------------------------------------------------------------------
# generators as left multipliers


def crossing_multiplier(a: int, b: int, offset: int, ctx: CycContext) -> AffHeckeElt:
    """Alternating sum of split/merge ladders that expresses a thick crossing."""
    out = ctx.zero()
    for t in range(0, min(a, b) + 1):
        term = sigma_star(t, b - t, offset, ctx.m, ctx.nu) * sigma_star(a - t, b, offset + t, ctx.m, ctx.nu)
        out = out + (term if t % 2 == 0 else -term)
    return out


def traverse_down_multiplier(a: int, offset: int, red: int, ctx: CycContext) -> AffHeckeElt:
    P = PolyElt.const(1, ctx.m, ctx.nu)
    for k in range(offset + 1, offset + a + 1):
        P = P * (PolyElt.x(k, ctx.m, ctx.nu) - ctx.param(red))
    return AffHeckeElt.poly(P)


def gen_multiplier(g: GenOp, word: ObjectWord, ctx: CycContext) -> AffHeckeElt | None:
    """Left multiplier for ``g`` applied to ``word``; ``None`` means the zero morphism."""
    target = g.apply_to_word(word)
    if not (in_layout(word, ctx.ell) and in_layout(target, ctx.ell)):
        return None
    off = x_offset(word, g.pos)
    if g.kind in ("split", "up"):
        return ctx.one()
    if g.kind == "merge":
        return sigma_star(g.a, g.b, off, ctx.m, ctx.nu)
    if g.kind == "dot":
        return dot_multiplier(g.a, g.b, off, ctx)
    if g.kind == "down":
        return traverse_down_multiplier(g.a, off, g.red, ctx)
    if g.kind == "cross":
        return crossing_multiplier(g.a, g.b, off, ctx)
    raise DomainError(f"unknown generator {g.kind!r}")


# ---------------------------------------------------------------------------
# morphisms


@dataclass
class SchurMorphism:
    """``M^source -> M^target`` determined by ``m_source -> image``."""

    source: MultiComposition
    target: MultiComposition
    image: AffHeckeElt
    ctx: CycContext = field(repr=False, compare=False)

    def coordinates(self) -> PermModuleElt:
        return perm_module_expand(self.image, self.target, self.ctx)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SchurMorphism):
            return NotImplemented
        return (self.source, self.target, self.image) == (other.source, other.target, other.image)

    def __add__(self, other: "SchurMorphism") -> "SchurMorphism":
        self._same_hom(other)
        return SchurMorphism(self.source, self.target, self.image + other.image, self.ctx)

    def scale(self, c) -> "SchurMorphism":
        return SchurMorphism(self.source, self.target, self.image.scale(self.ctx.scalar(c)), self.ctx)

    def _same_hom(self, other: "SchurMorphism") -> None:
        if (self.source, self.target) != (other.source, other.target):
            raise DomainError("morphisms live in different Hom spaces")

    def is_zero(self) -> bool:
        return not self.image


def identity_morphism(mu: MultiComposition, ctx: CycContext) -> SchurMorphism:
    return SchurMorphism(mu, mu, m_lambda(mu, ctx), ctx)


def zero_morphism(source: MultiComposition, target: MultiComposition, ctx: CycContext) -> SchurMorphism:
    return SchurMorphism(source, target, ctx.zero(), ctx)


def _layout_or_none(word: ObjectWord, ell: int) -> MultiComposition | None:
    return word_multicomposition(word, ell) if in_layout(word, ell) else None


def apply_program(p: DiagramProgram, elt: AffHeckeElt, ctx: CycContext) -> AffHeckeElt:
    """Left-multiply ``elt`` by the generators of ``p``, bottom first, reducing as it goes."""
    word = p.source
    if num_x(word) != ctx.m:
        raise DomainError("program acts on a different number of strands")
    for g in p.ops:
        mult = gen_multiplier(g, word, ctx)
        if mult is None:
            return ctx.zero()
        elt = ctx.reduce(mult * elt)
        word = g.apply_to_word(word)
    return elt


def eval_program_hecke(p: DiagramProgram, ctx: CycContext) -> SchurMorphism | None:
    """The morphism of ``p``; ``None`` when an end lies outside the cyclotomic objects."""
    src = _layout_or_none(p.source, ctx.ell)
    tgt = _layout_or_none(p.target, ctx.ell)
    if src is None or tgt is None:
        return None
    return SchurMorphism(src, tgt, apply_program(p, m_lambda(src, ctx), ctx), ctx)


def gen_image(g: GenOp, word: ObjectWord, ctx: CycContext) -> SchurMorphism | None:
    return eval_program_hecke(DiagramProgram(word, g.apply_to_word(word), (g,)), ctx)


def phi_ST(S: SemistandardTableau, T: SemistandardTableau, ctx: CycContext) -> SchurMorphism:
    """The cellular basis map ``m_{T.type} h -> m_{S T} h``."""
    if S.shape != T.shape:
        raise DomainError("labels have different shapes")
    return SchurMorphism(T.type, S.type, m_ST(S, T, ctx), ctx)


class _Solver:
    """Echelon form of ``m_mu * b`` over the reduced basis ``b`` of the algebra."""

    def __init__(self, mu: MultiComposition, ctx: CycContext):
        self.keys = ctx.basis()
        self.ech = Echelon(track=True)
        self.null: list[dict] = []
        ml = m_lambda(mu, ctx)
        for k, key in enumerate(self.keys):
            vec = ctx.reduce(ml * ctx.basis_element(key)).coordinates()
            rest, combo = self.ech.reduce(vec, {k: mpq(1)})
            if not rest:
                # vec minus its expansion vanishes: an element of the annihilator
                self.null.append(combo)
            self.ech.add(vec)

    def solve(self, target: AffHeckeElt, ctx: CycContext) -> AffHeckeElt:
        rest, combo = self.ech.reduce(target.coordinates(), {})
        if rest:
            raise AssertionError("element is not in the cyclic module")
        return self.element({k: -c for k, c in combo.items()}, ctx)

    def element(self, coeffs: dict, ctx: CycContext) -> AffHeckeElt:
        out = ctx.zero()
        for k, c in coeffs.items():
            if c:
                out = out + ctx.basis_element(self.keys[k]).scale(c)
        return out


def _solver(mu: MultiComposition, ctx: CycContext) -> _Solver:
    key = ("solver", mu)
    if key not in ctx._perm_cache:
        ctx._perm_cache[key] = _Solver(mu, ctx)
    return ctx._perm_cache[key]


def compose(g: SchurMorphism, h: SchurMorphism, check_alternatives: bool = False) -> SchurMorphism:
    """``h o g``: write ``g.image = m_mu z`` and send it to ``h.image z``."""
    if g.target != h.source:
        raise DomainError("morphisms are not composable")
    ctx = g.ctx
    ctx.require_numeric()
    solver = _solver(g.target, ctx)
    z = solver.solve(g.image, ctx)
    image = ctx.reduce(h.image * z)
    if check_alternatives:
        for combo in solver.null:
            k = solver.element(combo, ctx)
            if ctx.reduce(h.image * k):
                raise AssertionError("composition depends on the chosen preimage")
    return SchurMorphism(g.source, h.target, image, ctx)


def sst_program(T: SemistandardTableau) -> DiagramProgram:
    return compile_parmat(a_matrix_of_sst(T))


def eval_sst_diagram(T: SemistandardTableau, ctx: CycContext, reflected: bool = False) -> SchurMorphism:
    p = sst_program(T)
    out = eval_program_hecke(dagger(p) if reflected else p, ctx)
    assert out is not None
    return out


# ---------------------------------------------------------------------------
# reports


@dataclass
class Report:
    name: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"suite": self.name, "checked": self.checked, "failures": self.failures[:20],
                "failure_count": len(self.failures), "ok": self.ok, **self.data}


def sst_labels(m: int, ell: int) -> Iterator[tuple[MultiComposition, MultiComposition, SemistandardTableau]]:
    """``(lam, mu, S)`` for every ``S`` in ``SST(lam, mu)``."""
    mus = enumerate_multicompositions(m, ell)
    for lam in enumerate_multipartitions(m, ell):
        for mu in mus:
            for S in enumerate_sst(lam, mu):
                yield lam, mu, S


def _tab(T: SemistandardTableau) -> dict:
    return T.to_json()


def functor_check(m: int, ell: int, ctx: CycContext) -> Report:
    """``[T] o [S]^reflected`` lands on the basis map with image ``m_{T S}``."""
    rep = Report("functor")
    by_shape: dict = {}
    for lam, _mu, S in sst_labels(m, ell):
        by_shape.setdefault(lam, []).append(S)
    for lam, tabs in by_shape.items():
        for S in tabs:
            down = dagger(sst_program(S))
            for T in tabs:
                prog = down.then(sst_program(T))
                got = eval_program_hecke(prog, ctx)
                want = phi_ST(T, S, ctx)
                rep.checked += 1
                if got != want:
                    rep.failures.append({"S": _tab(S), "T": _tab(T), "got": got.image.to_json(),
                                         "want": want.image.to_json()})
    return rep


def cellular_basis(m: int, ell: int, ctx: CycContext) -> list[tuple[SemistandardTableau, SemistandardTableau]]:
    by_shape: dict = {}
    for lam, _mu, S in sst_labels(m, ell):
        by_shape.setdefault(lam, []).append(S)
    return [(S, T) for tabs in by_shape.values() for S in tabs for T in tabs]


def algebra_dimension(m: int, ell: int, ctx: CycContext) -> tuple[int, int]:
    """Double semistandard count and rank of the assembled basis images."""
    count1 = 0
    for lam in enumerate_multipartitions(m, ell):
        k = sum(len(enumerate_sst(lam, mu)) for mu in enumerate_multicompositions(m, ell))
        count1 += k * k
    ctx.require_numeric()
    blocks: dict = {}
    for S, T in cellular_basis(m, ell, ctx):
        blocks.setdefault((S.type, T.type), Echelon()).add(m_ST(S, T, ctx).coordinates())
    count2 = sum(e.rank for e in blocks.values())
    return count1, count2


class _HomExpander:
    """Coordinates of ``Hom(M^nu, M^mu)`` elements on the cellular basis."""

    def __init__(self, mu: MultiComposition, nu: MultiComposition, ctx: CycContext):
        self.labels = []
        self.ech = Echelon(track=True)
        for lam in enumerate_multipartitions(size(mu), ctx.ell):
            for S in enumerate_sst(lam, mu):
                for T in enumerate_sst(lam, nu):
                    self.labels.append((S, T))
                    if not self.ech.add(m_ST(S, T, ctx).coordinates()):
                        raise AssertionError("cellular basis images are dependent")

    def expand(self, image: AffHeckeElt) -> dict:
        rest, combo = self.ech.reduce(image.coordinates(), {})
        if rest:
            raise AssertionError("image is outside the span of the cellular basis")
        return {self.labels[k]: -c for k, c in combo.items() if c}


def _expander(mu, nu, ctx) -> _HomExpander:
    key = ("hom", mu, nu)
    if key not in ctx._perm_cache:
        ctx._perm_cache[key] = _HomExpander(mu, nu, ctx)
    return ctx._perm_cache[key]


def expand_morphism(f: SchurMorphism) -> dict:
    return _expander(f.target, f.source, f.ctx).expand(f.image)


def cellularity_check(m: int, ell: int, ctx: CycContext) -> Report:
    """Anti-involution symmetry and dominance triangularity of products.

    For ``phi_ST o phi_UV`` every shape in the expansion must dominate both
    ``shape(S)`` and ``shape(U)``.  When the two shapes agree, the top-shape
    part must be ``r(T, U) * phi_{S V}`` with ``r`` independent of ``S`` and ``V``.
    """
    ctx.require_numeric()
    rep = Report("cellularity")
    basis = cellular_basis(m, ell, ctx)
    for S, T in basis:
        rep.checked += 1
        if ctx.reduce(anti_involution(m_ST(S, T, ctx))) != m_ST(T, S, ctx):
            rep.failures.append({"kind": "anti-involution", "S": _tab(S), "T": _tab(T)})
    maps = {(S, T): phi_ST(S, T, ctx) for S, T in basis}
    by_target: dict = {}
    for (U, V), f in maps.items():
        by_target.setdefault(f.target, []).append((U, V, f))
    top_coeff: dict = {}
    products = 0
    for (S, T), g in maps.items():
        for U, V, f in by_target.get(g.source, []):
            prod = compose(f, g)
            products += 1
            lam1, lam2 = S.shape, U.shape
            expansion = expand_morphism(prod)
            for (X, Y), c in expansion.items():
                shape = X.shape
                if not (dominance_leq(lam1, shape) and dominance_leq(lam2, shape)):
                    rep.failures.append({"kind": "dominance", "left": [_tab(S), _tab(T)],
                                         "right": [_tab(U), _tab(V)], "term": [_tab(X), _tab(Y)]})
                    continue
                if shape == lam1 == lam2:
                    if X != S or Y != V:
                        rep.failures.append({"kind": "top-shape label", "left": [_tab(S), _tab(T)],
                                             "right": [_tab(U), _tab(V)], "term": [_tab(X), _tab(Y)]})
                        continue
            if lam1 == lam2:
                coeff = expansion.get((S, V), mpq(0))
                prev = top_coeff.setdefault((T, U), coeff)
                if prev != coeff:
                    rep.failures.append({"kind": "coefficient depends on outer labels",
                                         "T": _tab(T), "U": _tab(U)})
    rep.checked += products
    rep.data["products"] = products
    rep.data["basis_size"] = len(basis)
    return rep


def parmat_flat_rank(nu: MultiComposition, mu: MultiComposition, ctx: CycContext) -> Report:
    """Rank of the images of all flat decorated matrices from ``mu`` to ``nu``."""
    ctx.require_numeric()
    rep = Report("rank-flat")
    rep.data.update({"nu": [list(c) for c in nu], "mu": [list(c) for c in mu]})
    if size(nu) != size(mu) or len(nu) != len(mu):
        rep.data.update({"count": 0, "rank": 0})
        return rep
    items = enumerate_parmat_flat(nu, mu)
    ech = Echelon()
    dependent = []
    for x in items:
        f = eval_program_hecke(compile_parmat(x), ctx)
        if not ech.add(f.image.coordinates()):
            dependent.append(x.to_json())
    rep.checked = len(items)
    rep.data.update({"count": len(items), "predicted": count_parmat_flat(nu, mu), "rank": ech.rank})
    if ech.rank != len(items) or len(items) != count_parmat_flat(nu, mu):
        rep.failures.append({"kind": "rank defect", "dependent": dependent[:5]})
    return rep


# ---------------------------------------------------------------------------
# defining relations on the Hecke side


def _shift_program(p: DiagramProgram, prefix: Sequence, suffix: Sequence, red_map: dict) -> DiagramProgram:
    def word(w):
        body = tuple(Red(red_map[t.j]) if isinstance(t, Red) else t for t in w)
        return tuple(prefix) + body + tuple(suffix)

    k = len(prefix)
    ops = tuple(GenOp(g.kind, g.pos + k, g.a, g.b, red_map.get(g.red, g.red)) for g in p.ops)
    return DiagramProgram(word(p.source), word(p.target), ops)


def _remap_scalar(c, red_map: dict, ell: int):
    if not isinstance(c, PolyElt):
        return c
    out = {}
    for e, v in c.terms.items():
        new = [0] * ell
        for j, p in enumerate(e[c.nx:], start=1):
            if p:
                new[red_map[j] - 1] += p
        key = (0,) * c.nx + tuple(new)
        out[key] = out.get(key, mpq(0)) + v
    return PolyElt(out, c.nx, ell)


def embed_relation(inst: RelationInstance, ell: int, prefix_thick: Sequence[int] = ()) -> Iterator[RelationInstance]:
    """Place a relation into level-``ell`` words in every admissible way.

    A relation without red strands sits after ``u_i``; a relation with red
    strand ``u1`` has it renamed ``u_j``.  Extra thick strands ``prefix_thick``
    go directly after ``u_1`` as spectators.
    """
    uses_red = any(isinstance(t, Red) for t in inst.source)
    spect = [Thick(a) for a in prefix_thick]
    choices = range(1, ell + 1)
    for j in choices:
        if uses_red:
            red_map = {1: j}
            before = [Red(k) for k in range(1, j)]
            if j > 1:
                before = [Red(1)] + spect + before[1:]
            elif spect:
                continue
            after = [Red(k) for k in range(j + 1, ell + 1)]
        else:
            red_map = {}
            before = [Red(1)] + spect + [Red(k) for k in range(2, j + 1)]
            after = [Red(k) for k in range(j + 1, ell + 1)]
        lhs = [(_remap_scalar(c, red_map, ell), _shift_program(p, before, after, red_map)) for c, p in inst.lhs]
        rhs = [(_remap_scalar(c, red_map, ell), _shift_program(p, before, after, red_map)) for c, p in inst.rhs]
        yield RelationInstance(inst.name, inst.params + (("red", j), ("spectators", tuple(prefix_thick))), lhs, rhs)


def _side_value(side, ctx: CycContext) -> AffHeckeElt:
    out = ctx.zero()
    for c, p in side:
        src = _layout_or_none(p.source, ctx.ell)
        if src is None:
            continue
        val = apply_program(p, m_lambda(src, ctx), ctx)
        out = out + val.scale(ctx.scalar(c))
    return out


def cycpolyvanish_instances(ell: int, max_m: int) -> Iterator[RelationInstance]:
    """``g_{r,i}`` on a strand right of ``u_1..u_i`` equals zero, with optional spectators."""
    from .schurrep import g_r

    for i in range(1, ell + 1):
        for r in range(1, max_m + 1):
            for extra in range(0, max_m - r + 1):
                base = [Red(k) for k in range(1, i + 1)] + [Thick(r)]
                tail = ([Thick(extra)] if extra else []) + [Red(k) for k in range(i + 1, ell + 1)]
                word = tuple(base + tail)
                pos = i
                terms = [(PolyElt.const(1, 0, ell), DiagramProgram(word, word, ()))]
                for j in range(1, i + 1):
                    new = []
                    for c, prog in terms:
                        for c2, dot in g_r(r, pos, word, j, ell):
                            new.append((c * c2, prog.then(dot)))
                    terms = new
                yield RelationInstance("cycpolyvanish", (r, i, extra), terms, [])


def djm_relation_instances(ell: int, max_m: int, max_thickness: int = 3) -> Iterator[RelationInstance]:
    seen = set()
    pool = list(full_relations(max_thickness)) + list(reduced_relations(max_thickness))
    for inst in pool:
        base_m = num_x(inst.source)
        if base_m > max_m:
            continue
        spect_options = [()] + [(a,) for a in range(1, max_m - base_m + 1)]
        for spect in spect_options:
            for emb in embed_relation(inst, ell, spect):
                key = (emb.name, emb.params)
                if key in seen:
                    continue
                seen.add(key)
                yield emb
    yield from cycpolyvanish_instances(ell, max_m)


def check_djm_instance(inst: RelationInstance, ell: int, u: Sequence | None,
                       contexts: dict[int, CycContext] | None = None) -> dict | None:
    """Compare both sides of one relation in the Hecke model; a failure payload or None."""
    m = num_x(inst.source)
    contexts = {} if contexts is None else contexts
    ctx = contexts.get(m)
    if ctx is None:
        ctx = contexts[m] = CycContext(m, ell, u)
    left = _side_value(inst.lhs, ctx)
    right = _side_value(inst.rhs, ctx)
    if left == right:
        return None
    return {"relation": inst.name, "params": repr(inst.params),
            "lhs": left.to_json(), "rhs": right.to_json()}


def verify_relations_djm(ell: int, max_m: int, u: Sequence | None = None, max_thickness: int = 3) -> Report:
    """Evaluate both sides of every embedded relation through the Hecke model."""
    rep = Report("djm-relations")
    contexts: dict[int, CycContext] = {}
    for inst in djm_relation_instances(ell, max_m, max_thickness):
        rep.checked += 1
        failure = check_djm_instance(inst, ell, u, contexts)
        if failure:
            rep.failures.append(failure)
    return rep


def hom_is_zero_outside(ctx: CycContext) -> bool:
    """Objects with a nonempty leading block give zero morphisms."""
    word = (Thick(1), Red(1)) + tuple(Red(k) for k in range(2, ctx.ell + 1))
    return eval_program_hecke(DiagramProgram(word, word, ()), ctx) is None


def random_label_pairs(m: int, ell: int, ctx: CycContext, count: int, seed: int) -> list:
    rng = random.Random(seed)
    basis = cellular_basis(m, ell, ctx)
    return [rng.choice(basis) for _ in range(count)]


__all__ = [
    "SchurMorphism",
    "algebra_dimension",
    "apply_program",
    "cellularity_check",
    "check_djm_instance",
    "djm_relation_instances",
    "compose",
    "crossing_multiplier",
    "eval_program_hecke",
    "eval_sst_diagram",
    "functor_check",
    "gen_image",
    "gen_multiplier",
    "identity_morphism",
    "in_layout",
    "parmat_flat_rank",
    "phi_ST",
    "verify_relations_djm",
    "word_multicomposition",
]
