import pytest
from gmpy2 import mpq

from oracles import nonneg_matrices_brute
from schurkit.combinatorics import (
    DomainError,
    enumerate_multicompositions,
    enumerate_multipartitions,
    enumerate_sst,
    initial_sst,
)
from schurkit.hecke import AffHeckeElt, CycContext, m_lambda, sample_parameters
from schurkit.parmat import count_parmat_flat
from schurkit.schurdjm import (
    algebra_dimension,
    cellular_basis,
    cellularity_check,
    check_djm_instance,
    compose,
    djm_relation_instances,
    eval_program_hecke,
    expand_morphism,
    functor_check,
    gen_image,
    hom_is_zero_outside,
    identity_morphism,
    in_layout,
    parmat_flat_rank,
    phi_ST,
    random_label_pairs,
    verify_relations_djm,
    word_multicomposition,
    zero_morphism,
)
from schurkit.schurrep import DiagramProgram, GenOp, Red, Thick as T


def numeric(m, ell):
    return CycContext(m, ell, sample_parameters(ell))


# ---- objects


def test_layout_of_words():
    assert in_layout((Red(1), T(2), Red(2), T(1)), 2)
    assert word_multicomposition((Red(1), T(2), Red(2), T(1)), 2) == ((2,), (1,))
    assert word_multicomposition((Red(1), Red(2)), 2) == ((), ())
    # a thick strand before u1 is outside the cyclotomic objects
    assert not in_layout((T(1), Red(1), Red(2)), 2)
    assert not in_layout((Red(1), T(1)), 2)


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_objects_with_leading_block_are_zero(ell):
    assert hom_is_zero_outside(CycContext(1, ell))


# ---- generator images


def test_merge_and_split_images_level_one():
    ctx = numeric(2, 1)
    merge = gen_image(GenOp("merge", 1, 1, 1), (Red(1), T(1), T(1)), ctx)
    assert (merge.source, merge.target) == (((1, 1),), ((2,),))
    assert merge.image == ctx.one() + ctx.s(1)
    split = gen_image(GenOp("split", 1, 1, 1), (Red(1), T(2)), ctx)
    assert split.image == m_lambda(((2,),), ctx)
    cross = gen_image(GenOp("cross", 1, 1, 1), (Red(1), T(1), T(1)), ctx)
    assert cross.image == ctx.s(1)


def test_dot_at_level_one_is_the_parameter():
    ctx = numeric(1, 1)
    dot = gen_image(GenOp("dot", 1, 1, 1), (Red(1), T(1)), ctx)
    assert dot.image == ctx.one().scale(ctx.scalar(mpq(4, 7)))


def test_traverse_images_level_two():
    ctx = CycContext(1, 2)
    up = gen_image(GenOp("up", 1, 1, 0, 2), (Red(1), T(1), Red(2)), ctx)
    down = gen_image(GenOp("down", 1, 1, 0, 2), (Red(1), Red(2), T(1)), ctx)
    factor = ctx.x(1) - AffHeckeElt.poly(ctx.param(2))
    assert (up.source, up.target) == (((1,), ()), ((), (1,)))
    assert up.image == factor
    assert (down.source, down.target) == (((), (1,)), ((1,), ()))
    assert down.image == factor
    # a traverse-down across u1 starts outside the cyclotomic objects
    assert gen_image(GenOp("down", 0, 1, 0, 1), (Red(1), T(1), Red(2)), ctx) is None


# ---- composition


def test_identity_and_zero_composition():
    ctx = numeric(2, 2)
    for S, T_ in cellular_basis(2, 2, ctx)[:12]:
        f = phi_ST(S, T_, ctx)
        assert compose(identity_morphism(f.source, ctx), f) == f
        assert compose(f, identity_morphism(f.target, ctx)) == f
        assert compose(zero_morphism(f.source, f.source, ctx), f).is_zero()


def test_composition_is_associative():
    ctx = numeric(2, 2)
    maps = [phi_ST(S, T_, ctx) for S, T_ in random_label_pairs(2, 2, ctx, 40, seed=3)]
    by_source = {}
    for f in maps:
        by_source.setdefault(f.source, []).append(f)
    triples = 0
    for f in maps:
        for g in by_source.get(f.target, []):
            for h in by_source.get(g.target, []):
                assert compose(compose(f, g), h) == compose(f, compose(g, h))
                triples += 1
    assert triples > 0


def test_composition_is_well_defined():
    ctx = numeric(2, 2)
    for S, T_ in cellular_basis(2, 2, ctx):
        f = phi_ST(S, T_, ctx)
        for U, V in cellular_basis(2, 2, ctx):
            if V.type == f.target:
                compose(f, phi_ST(U, V, ctx), check_alternatives=True)


def test_composition_type_errors():
    ctx = numeric(1, 2)
    a = identity_morphism(((1,), ()), ctx)
    b = identity_morphism(((), (1,)), ctx)
    with pytest.raises(DomainError):
        compose(a, b)
    with pytest.raises(DomainError):
        a + b


# ---- cellular basis


def _classical_schur_dimension(m):
    objs = [c[0] for c in enumerate_multicompositions(m, 1)]
    return sum(len(nonneg_matrices_brute(a, b)) for a in objs for b in objs)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_level_one_dimension_counts_matrices(m):
    count1, count2 = algebra_dimension(m, 1, numeric(m, 1))
    assert count1 == count2 == _classical_schur_dimension(m)


def test_level_one_two_strands_dimension_is_five():
    assert algebra_dimension(2, 1, numeric(2, 1)) == (5, 5)


def test_level_two_one_strand_dimension():
    # Hom spaces between M^((1),()) (dimension 1) and M^((),(1)) (dimension 2): 1 + 1 + 1 + 2
    assert algebra_dimension(1, 2, numeric(1, 2)) == (5, 5)


@pytest.mark.parametrize("m,ell", [(2, 2), (1, 3)])
def test_dimension_matches_flat_count(m, ell):
    objs = enumerate_multicompositions(m, ell)
    flat = sum(count_parmat_flat(a, b) for a in objs for b in objs)
    count1, count2 = algebra_dimension(m, ell, numeric(m, ell))
    assert count1 == count2 == flat


def test_initial_labels_give_identity():
    ctx = numeric(2, 2)
    for lam in enumerate_multipartitions(2, 2):
        T_ = initial_sst(lam)
        assert phi_ST(T_, T_, ctx) == identity_morphism(lam, ctx)


def test_expansion_of_basis_map_is_a_unit_vector():
    ctx = numeric(2, 2)
    for S, T_ in cellular_basis(2, 2, ctx):
        assert expand_morphism(phi_ST(S, T_, ctx)) == {(S, T_): 1}


@pytest.mark.parametrize("m,ell", [(2, 1), (2, 2), (1, 3)])
def test_cellularity_small(m, ell):
    rep = cellularity_check(m, ell, numeric(m, ell))
    assert rep.ok, rep.failures[:3]
    assert rep.data["products"] > 0


def test_mismatched_shapes_rejected():
    ctx = numeric(2, 2)
    a = enumerate_sst(((2,), ()), ((2,), ()))[0]
    b = enumerate_sst(((1,), (1,)), ((1,), (1,)))[0]
    with pytest.raises(DomainError):
        phi_ST(a, b, ctx)


# ---- the functor from diagrams


@pytest.mark.parametrize("m,ell", [(1, 2), (2, 2), (2, 1), (1, 3)])
def test_functor_on_double_tableaux(m, ell):
    rep = functor_check(m, ell, numeric(m, ell))
    assert rep.checked > 0 and rep.ok, rep.failures[:2]


@pytest.mark.parametrize("m,ell", [(2, 2), (1, 3)])
def test_flat_images_are_independent(m, ell):
    ctx = numeric(m, ell)
    objs = enumerate_multicompositions(m, ell)
    for nu in objs:
        for mu in objs:
            rep = parmat_flat_rank(nu, mu, ctx)
            assert rep.ok and rep.data["rank"] == rep.data["count"]


def test_empty_program_is_identity_morphism():
    ctx = numeric(2, 2)
    word = (Red(1), T(1), Red(2), T(1))
    f = eval_program_hecke(DiagramProgram(word, word), ctx)
    assert f == identity_morphism(((1,), (1,)), ctx)


@pytest.mark.parametrize("ell,max_m", [(1, 2), (2, 2)])
def test_relations_hold_in_hecke_model(ell, max_m):
    rep = verify_relations_djm(ell, max_m, sample_parameters(ell), max_thickness=2)
    assert rep.checked > 0 and rep.ok, rep.failures[:2]


def test_cyclotomic_vanishing_instances_generic():
    insts = [i for i in djm_relation_instances(2, 2, 2) if i.name == "cycpolyvanish"]
    assert insts
    for inst in insts:
        assert check_djm_instance(inst, 2, None) is None


def test_broken_relation_detected():
    inst = next(i for i in djm_relation_instances(1, 2, 2) if i.name == "splitmerge")
    inst.rhs = [(c * 5 if not hasattr(c, "terms") else c.scale(5), p) for c, p in inst.rhs]
    assert check_djm_instance(inst, 1, sample_parameters(1)) is not None
