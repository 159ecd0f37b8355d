from math import comb

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from schurkit import _packed
from schurkit.combinatorics import DomainError, dual_partition, enumerate_multicompositions
from schurkit.parmat import ParMat, empty_partitions, enumerate_parmat, identity_parmat
from schurkit.polyalg import (
    PolyElt,
    demazure_s,
    elementary_symmetric,
    is_symmetric,
    monomial_symmetric_basis,
    parse_poly,
)
from schurkit.schurrep import (
    Builder,
    DiagramProgram,
    GenOp,
    Red,
    Thick,
    check_instance,
    compile_parmat,
    dagger,
    dot_closed_form,
    dot_operator,
    eval_gen,
    eval_program,
    eval_program_packed,
    eval_program_top_degree,
    evaluate_side,
    faithfulness_check,
    full_relations,
    leading_term_check,
    num_red,
    object_word,
    predicted_leading_exponent,
    reduced_relations,
    staircase_input,
    verify_relations,
)

T = Thick


def _instances(suite, name, params=None, bound=2):
    return [
        i for i in suite(bound) if i.name == name and (params is None or i.params == params)
    ]


# ---- single generators


def test_merge_of_two_single_strands_on_one():
    word, out = eval_gen(GenOp("merge", 0, 1, 1), (T(1), T(1)), PolyElt.const(1, 2))
    assert word == (T(2),)
    assert out == PolyElt.const(2, 2)


def test_traverse_down_multiplies_by_linear_factor():
    f = parse_poly("x1^2 + 3", 1, 1)
    word, out = eval_gen(GenOp("down", 0, 1, 0, 1), (Red(1), T(1)), f)
    assert word == (T(1), Red(1))
    assert out == parse_poly("x1^3 - x1^2*u1 + 3*x1 - 3*u1", 1, 1)


def test_traverse_up_and_split_are_inclusions():
    f = parse_poly("x1 + x2", 2, 1)
    assert eval_gen(GenOp("up", 0, 2, 0, 1), (T(2), Red(1)), f)[1] == f
    assert eval_gen(GenOp("split", 0, 1, 1), (T(2),), f)[1] == f


def test_crossing_on_x1():
    _, out = eval_gen(GenOp("cross", 0, 1, 1), (T(1), T(1)), PolyElt.x(1, 2))
    assert out == parse_poly("x2 + 1", 2)


def test_full_dot_multiplies_all_variables():
    f = parse_poly("x1 + x2", 2)
    _, out = eval_gen(GenOp("dot", 0, 2, 2), (T(2),), f)
    assert out == parse_poly("x1^2*x2 + x1*x2^2", 2)


def test_partial_dot_on_one():
    # split 2 -> (1,1), multiply x1, merge: x1 + s1.x1 = x1 + x2 + 1
    _, out = eval_gen(GenOp("dot", 0, 2, 1), (T(2),), PolyElt.const(1, 2))
    assert out == parse_poly("x1 + x2 + 1", 2)
    # three coset representatives e, s1, s2 s1 acting on x1
    _, out = eval_gen(GenOp("dot", 0, 3, 1), (T(3),), PolyElt.const(1, 3))
    assert out == parse_poly("x1 + x2 + x3 + 3", 3)


def test_generator_type_errors():
    with pytest.raises(DomainError):
        GenOp("merge", 0, 1, 2).apply_to_word((T(1), T(1)))
    with pytest.raises(DomainError):
        GenOp("dot", 0, 1, 2).apply_to_word((T(1),))
    with pytest.raises(DomainError):
        GenOp("warp", 0, 1).apply_to_word((T(1),))
    with pytest.raises(DomainError):
        DiagramProgram((T(1), T(1)), (T(1), T(1)), (GenOp("merge", 0, 1, 1),))


# ---- programs


def test_empty_program_is_identity():
    f = parse_poly("x1*x2 + 7", 2)
    p = DiagramProgram((T(1), T(1)), (T(1), T(1)))
    assert eval_program(p, f) == f


@pytest.mark.parametrize("a,b", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)])
def test_split_then_merge_is_binomial(a, b):
    n = a + b
    p = DiagramProgram((T(n),), (T(n),), (GenOp("split", 0, a, b), GenOp("merge", 0, a, b)))
    for f in monomial_symmetric_basis((n,), 2, n):
        assert eval_program(p, f) == f.scale(comb(n, a))


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 2)])
def test_double_crossing_is_identity(a, b):
    p = DiagramProgram((T(a), T(b)), (T(a), T(b)), (GenOp("cross", 0, a, b), GenOp("cross", 0, b, a)))
    for f in monomial_symmetric_basis((a, b), 3, a + b):
        assert eval_program(p, f) == f


def test_program_rejects_wrong_symmetry_type():
    p = DiagramProgram((T(2),), (T(1), T(1)), (GenOp("split", 0, 1, 1),))
    with pytest.raises(DomainError):
        eval_program(p, PolyElt.x(1, 2))
    with pytest.raises(DomainError):
        eval_program(p, PolyElt.x(1, 3))


def test_program_json_round_trip_and_dagger():
    p = DiagramProgram(
        (T(2), Red(1)),
        (Red(1), T(1), T(1)),
        (GenOp("dot", 0, 2, 1), GenOp("up", 0, 2, 0, 1), GenOp("split", 1, 1, 1)),
    )
    assert DiagramProgram.from_json(p.to_json()) == p
    d = dagger(p)
    assert d.source == p.target and d.target == p.source
    assert dagger(d) == p
    with pytest.raises(DomainError):
        DiagramProgram.from_json({"source": [1]})


def test_builder_drops_zero_strands():
    prog = Builder((T(0), T(2))).cross(0).split(0, 1, 1).build()
    assert prog.source == (T(2),)
    assert prog.ops == (GenOp("split", 0, 1, 1),)


_STEPS = st.sampled_from(["cross", "dot", "split-merge"])


@given(st.lists(_STEPS, min_size=1, max_size=4), st.integers(0, 3))
def test_program_concatenation_is_composition(steps, degree):
    word = (T(1), T(2))
    progs = []
    for s in steps:
        if s == "cross":
            b = Builder(word).cross(0).cross(0)
        elif s == "dot":
            b = Builder(word).dot(1, 1)
        else:
            b = Builder(word).split(1, 1, 1).merge(1, 1, 1)
        progs.append(b.build())
    whole = progs[0]
    for p in progs[1:]:
        whole = whole.then(p)
    for f in monomial_symmetric_basis((1, 2), degree, 3):
        g = f
        for p in progs:
            g = eval_program(p, g)
        assert eval_program(whole, f) == g


# ---- dots


def test_dot_extremes():
    for a in (1, 2, 3):
        e = elementary_symmetric(a, list(range(1, a + 1)), a)
        for f in monomial_symmetric_basis((a,), 3, a):
            assert dot_operator(f, a, 0, 0) == f
            assert dot_operator(f, a, a, 0) == e * f
            assert dot_closed_form(f, a, a, 0) == e * f


@pytest.mark.parametrize("a,r", [(2, 1), (3, 1), (3, 2)])
def test_closed_form_differs_from_composite_below_full_weight(a, r):
    one = PolyElt.const(1, a)
    assert dot_operator(one, a, r, 0) != dot_closed_form(one, a, r, 0)
    assert dot_operator(one, a, r, 0).degree() == r


@pytest.mark.parametrize("a,r", [(2, 1), (3, 1), (3, 2)])
def test_partial_dot_output_is_symmetric(a, r):
    for f in monomial_symmetric_basis((a,), 2, a):
        assert is_symmetric(dot_operator(f, a, r, 0), (a,))


# ---- compiled elementary diagrams


def test_identity_parmat_compiles_to_empty_program():
    for lam in [((2, 1),), ((1,), (2,)), ((), (1, 1))]:
        prog = compile_parmat(identity_parmat(lam))
        assert prog.ops == ()
        assert prog.source == prog.target == object_word(lam)


def test_antidiagonal_compiles_to_single_crossing():
    lam = ((1, 1),)
    A = ((0, 1), (1, 0))
    prog = compile_parmat(ParMat(A, empty_partitions(A), lam, lam))
    assert prog.ops == (GenOp("cross", 1, 1, 1),)


def _ornamented_example(with_dots: bool) -> ParMat:
    # nine and seven on top, five, five and six at the bottom, one red strand
    A = ((2, 3, 4), (3, 2, 2))
    duals = {(0, 0): (2, 1), (1, 0): (3, 2, 1), (0, 1): (4, 3, 2), (1, 1): (5, 4), (0, 2): (6, 5, 4, 3), (1, 2): (7, 6)}
    if with_dots:
        P = tuple(tuple(dual_partition(duals[(i, j)]) for j in range(3)) for i in range(2))
    else:
        P = empty_partitions(A)
    return ParMat(A, P, ((9,), (7,)), ((5, 5), (6,)))


def test_ornamented_example_has_one_traverse_down():
    prog = compile_parmat(_ornamented_example(True), leading_block=True)
    kinds = [g.kind for g in prog.ops]
    assert prog.source == (T(5), T(5), Red(1), T(6))
    assert prog.target == (T(9), Red(1), T(7))
    # legs into the right top vertex pass the red strand upward
    assert kinds.count("down") == 1 and kinds.count("up") == 2
    assert {"split", "dot", "cross", "merge"} <= set(kinds)


def test_ornamented_example_leading_exponent_formula():
    N = 100
    got = predicted_leading_exponent(_ornamented_example(True), N)
    expected = (
        [3 * N + e for e in (7, 6, 5, 4)]
        + [2 * N + e for e in (4, 3, 2)]
        + [N + e for e in (2, 1)]
        + [3 * N + e for e in (7, 6)]
        + [2 * N + e for e in (5, 4)]
        + [N + e for e in (3, 2, 1)]
    )
    assert got == tuple(expected)


def test_ornamented_example_without_dots_leading_term():
    # the full output has billions of terms here; its top-degree part is small
    rep = leading_term_check(_ornamented_example(False), leading_block=True, nu=1, top_degree=True)
    N = rep.N
    assert rep.ok
    assert rep.observed == tuple([3 * N + 1] * 4 + [2 * N] * 3 + [N] * 2 + [3 * N] * 2 + [2 * N] * 2 + [N] * 3)


def test_leading_term_of_identity_is_input():
    x = identity_parmat(((2, 1),))
    rep = leading_term_check(x, N=10)
    assert rep.observed == staircase_input(x, 10, 1).leading_monomial()[:3]
    assert rep.ok


def test_leading_term_with_dot_and_traverse_down():
    # one strand moving from the second component to the first across u2, with one dot
    nu, mu = ((1,), ()), ((), (1,))
    x = ParMat(((1,),), (((1,),),), nu, mu)
    prog = compile_parmat(x)
    assert [g.kind for g in prog.ops] == ["dot", "down"]
    N = 7
    out = eval_program(prog, staircase_input(x, N, 2), check=False)
    assert out == parse_poly(f"x1^{N + 2} - x1^{N + 1}*u2", 1, 2)
    assert leading_term_check(x, N=N).observed == (N + 2,)
    assert predicted_leading_exponent(x, N) == (N + 2,)


@pytest.mark.parametrize("m,ell,lb", [(2, 1, False), (2, 2, False), (2, 2, True)])
def test_faithfulness_small(m, ell, lb):
    objs = enumerate_multicompositions(m, ell)
    u = [mpq(3 * k + 1, 7) for k in range(1, ell + 1)]
    for nu in objs:
        for mu in objs:
            rep = faithfulness_check(nu, mu, 2, lb, u)
            assert rep.ok, rep.to_json()


def _scale_of(prog, u):
    scale = mpq(1)
    for g in prog.ops:
        if g.kind == "down":
            scale *= mpq(u[g.red - 1]).denominator ** g.a
    return scale


@pytest.mark.parametrize(
    "nu,mu,lb",
    [
        (((1, 1, 2), ()), ((1,), (1, 1, 1)), True),
        (((3,), (1,)), ((1, 1), (1, 1)), True),
        (((), (2, 1)), ((1, 1), (1,)), False),
        (((2,), (1,)), ((1,), (2,)), False),
    ],
)
def test_packed_evaluation_matches_reference(nu, mu, lb):
    u = [mpq(3 * k + 1, 7) for k in range(1, 3)]
    elements = enumerate_parmat(nu, mu, 2)
    f = staircase_input(elements[0], 6, 0, lb)
    for x in elements[:: max(1, len(elements) // 25)]:
        prog = compile_parmat(x, lb)
        layout, packed = eval_program_packed(prog, f, u)
        want = eval_program(prog, f, check=False, u_values=u).scale(_scale_of(prog, u))
        assert _packed.to_poly(packed, layout) == want
        if want.terms:
            assert _packed.leading_exponent(packed, layout) == want.leading_monomial()


@given(
    st.lists(st.integers(0, 9), min_size=3, max_size=3),
    st.lists(st.integers(0, 9), min_size=3, max_size=3),
    st.integers(1, 2),
)
def test_packed_demazure_matches_reference(e1, e2, j):
    f = PolyElt({tuple(e1): 3, tuple(e2): -5}, 3)
    layout = _packed.Layout(3, 20)
    got = _packed.demazure(_packed.from_poly(f, layout), j, layout)
    assert _packed.to_poly(got, layout) == demazure_s(f, j)


def test_packed_overflow_is_reported():
    layout = _packed.Layout(2, 10)
    with pytest.raises(_packed.PackedOverflow):
        layout.pack((9, 9))
    with pytest.raises(_packed.PackedOverflow):
        _packed.Layout(8, 1 << 12)
    big = PolyElt({(1, 0): 3 << 59, (0, 1): 3 << 59}, 2)
    d = _packed.from_poly(big, layout)
    with pytest.raises(_packed.PackedOverflow):
        _packed.demazure(d, 1, layout)
    with pytest.raises(_packed.PackedOverflow):
        _packed.from_poly(PolyElt({(1, 0): mpq(1, 2)}, 2), layout)


def test_faithfulness_without_numbers_uses_exact_path():
    nu = mu = ((1,), (1,))
    assert faithfulness_check(nu, mu, 1, False, None).ok
    assert faithfulness_check(nu, mu, 1, False, None, family_size=2).ok


def _top_homogeneous(f):
    d = f.degree()
    return PolyElt._raw({e: c for e, c in f.terms.items() if sum(e) == d}, f.nx, f.nu)


@pytest.mark.parametrize("nu,mu,lb", [
    (((1,), (2,)), ((2,), (1,)), False),
    (((2,), (1,)), ((1,), (2,)), True),
    (((1, 1), (1,)), ((), (2, 1)), False),
    (((3,), ()), ((1,), (2,)), True),
])
def test_top_degree_route_matches_exact_evaluation(nu, mu, lb):
    for x in enumerate_parmat(nu, mu, 2):
        prog = compile_parmat(x, lb)
        f = staircase_input(x, 9, num_red(prog.source), lb)
        full = eval_program(prog, f, check=False)
        top = eval_program_top_degree(prog, f)
        assert top == _top_homogeneous(full)
        assert top.leading_monomial() == full.leading_monomial()
        assert leading_term_check(x, N=9, leading_block=lb, top_degree=True).observed == \
            leading_term_check(x, N=9, leading_block=lb).observed


def test_distinct_elements_have_distinct_leading_terms():
    nu, mu = ((1,), (2,)), ((2,), (1,))
    leads = {}
    for x in enumerate_parmat(nu, mu, 2):
        lead = leading_term_check(x, N=12).observed
        assert lead not in leads
        leads[lead] = x


# ---- relations


def test_splitmerge_instance_on_one():
    (inst,) = _instances(full_relations, "splitmerge", (2, 1))
    one = PolyElt.const(1, 3, 1)
    assert evaluate_side(inst.lhs, one) == PolyElt.const(3, 3, 1)
    assert evaluate_side(inst.rhs, one) == PolyElt.const(3, 3, 1)


def test_adaptor_r_at_thickness_one():
    # traverse-down after traverse-up multiplies by (x1 - u1)
    (inst,) = _instances(full_relations, "adaptorR", (1,))
    prog = Builder((T(1), Red(1))).up(0).down(0).build()
    for f in monomial_symmetric_basis((1,), 3, 1, 1):
        assert eval_program(prog, f) == (PolyElt.x(1, 1, 1) - PolyElt.u(1, 1, 1)) * f
    assert check_instance(inst, 3)[1] is None


def test_integral_balloon_at_two():
    # split into single strands, dot each, merge back: twice the full dot
    (inst,) = _instances(full_relations, "intergralballon", (2,))
    balloon = Builder((T(2),)).split(0, 1, 1).dot(0, 1).dot(1, 1).merge(0, 1, 1).build()
    for f in monomial_symmetric_basis((2,), 3, 2):
        assert eval_program(balloon, f) == dot_operator(f, 2, 2, 0).scale(2)
    assert check_instance(inst, 3)[1] is None


def test_crossing_matches_demazure_operator():
    prog = Builder((T(1), T(1))).cross(0).build()
    for f in monomial_symmetric_basis((1, 1), 4, 2):
        assert eval_program(prog, f) == demazure_s(f, 1)


def test_broken_relation_is_reported():
    (inst,) = _instances(full_relations, "splitmerge", (1, 1))
    inst.rhs = [(3, c) for _, c in inst.rhs]
    n, failure = check_instance(inst, 2)
    assert failure is not None and failure["relation"] == "splitmerge"


@pytest.mark.parametrize("suite", ["full", "reduced", "crossgen"])
def test_relation_suites_at_small_bounds(suite):
    rep = verify_relations(suite, max_thickness=2, max_degree=2)
    assert rep.instances > 0 and rep.checked >= rep.instances
    assert rep.ok, rep.failures[:3]


def test_reduced_suite_names():
    names = {i.name.split("/")[0] for i in reduced_relations(2)}
    assert "chamvanish1 C" in names and "splitmerge C" in names


def test_unknown_suite_rejected():
    with pytest.raises(DomainError):
        verify_relations("nope")
