from itertools import permutations

import pytest
from hypothesis import given, strategies as st
from sympy.utilities.iterables import partitions as sympy_partitions

from oracles import (
    compose_perm,
    inversions,
    multitableaux_sst_brute,
    partitions_brute,
    young_subgroup_brute,
)
from schurkit.combinatorics import (
    DomainError,
    SemistandardTableau,
    StandardTableau,
    act_on_tableau,
    block_increasing_perms,
    canonical_tableau,
    compose,
    dominance_leq,
    dual_partition,
    enumerate_multicompositions,
    enumerate_multipartitions,
    enumerate_partitions,
    enumerate_sst,
    identity,
    initial_sst,
    inverse,
    is_semistandard,
    is_standard,
    minimal_coset_rep,
    mu_fiber,
    mu_map,
    perm_length,
    reduced_word,
    simple_transposition,
    standard_tableaux,
    strict_compositions,
    tableau_from_json,
    tableau_to_json,
    young_subgroup,
)


# ---- partitions


def test_partitions_small_cases():
    assert enumerate_partitions(0) == [()]
    assert enumerate_partitions(3, max_part=2) == [(2, 1), (1, 1, 1)]
    assert len(enumerate_partitions(4)) == 5


@pytest.mark.parametrize("n", range(0, 9))
def test_partition_counts_match_sympy(n):
    expected = {tuple(sorted((k for k, v in p.items() for _ in range(v)), reverse=True)) for p in sympy_partitions(n)}
    if n == 0:
        expected = {()}
    assert set(enumerate_partitions(n)) == expected


@pytest.mark.parametrize("n,cap", [(4, 2), (5, 3), (6, 1), (5, 5)])
def test_bounded_partitions_match_brute_force(n, cap):
    assert set(enumerate_partitions(n, max_part=cap)) == partitions_brute(n, cap)


def test_negative_size_rejected():
    with pytest.raises(DomainError):
        enumerate_partitions(-1)


def test_dual_partition_examples():
    assert dual_partition((3, 1)) == (2, 1, 1)
    assert dual_partition(()) == ()
    assert dual_partition((2, 1)) == (2, 1)


@given(st.integers(0, 12).flatmap(lambda n: st.sampled_from(enumerate_partitions(n))))
def test_dual_is_involution_preserving_size(p):
    d = dual_partition(p)
    assert dual_partition(d) == p
    assert sum(d) == sum(p)


# ---- compositions and dominance


def test_strict_compositions_count_is_power_of_two():
    for n in range(1, 8):
        assert len(strict_compositions(n)) == 2 ** (n - 1)


def test_multicomposition_count_small():
    # level 2, size 2: ((2),()), ((1,1),()), ((1),(1)), ((),(2)), ((),(1,1))
    assert len(enumerate_multicompositions(2, 2)) == 5
    assert all(len(lam) == 2 for lam in enumerate_multicompositions(3, 2))


def test_dominance_examples():
    assert dominance_leq(((1, 1),), ((2,),))
    lam = ((2, 1), (1,))
    assert dominance_leq(lam, lam)
    assert not dominance_leq(((2,), ()), ((), (2,)))
    assert dominance_leq(((), (2,)), ((2,), ()))


def _dominance_oracle(lam, mu):
    """Partial sums over the concatenation with earlier components counted in full."""
    def sums(nu):
        out, before = [], 0
        width = max(max((len(c) for c in lam), default=0), max((len(c) for c in mu), default=0))
        for comp in nu:
            run = before
            for h in range(width):
                run += comp[h] if h < len(comp) else 0
                out.append(run)
            before += sum(comp)
        return out

    return all(a <= b for a, b in zip(sums(lam), sums(mu)))


@pytest.mark.parametrize("m,ell", [(3, 1), (3, 2), (4, 2), (2, 3)])
def test_dominance_matches_partial_sum_oracle(m, ell):
    objs = enumerate_multicompositions(m, ell)
    for lam in objs:
        for mu in objs:
            assert dominance_leq(lam, mu) == _dominance_oracle(lam, mu)


@pytest.mark.parametrize("m,ell", [(3, 2), (4, 1)])
def test_dominance_is_a_partial_order_on_multipartitions(m, ell):
    objs = enumerate_multipartitions(m, ell)
    for a in objs:
        for b in objs:
            if a != b and dominance_leq(a, b):
                assert not dominance_leq(b, a)
            for c in objs:
                if dominance_leq(a, b) and dominance_leq(b, c):
                    assert dominance_leq(a, c)


# ---- permutations


@given(st.permutations(list(range(1, 6))))
def test_reduced_word_rebuilds_permutation(w):
    w = tuple(w)
    word = reduced_word(w)
    assert len(word) == perm_length(w) == inversions(w)
    acc = identity(len(w))
    for i in word:
        acc = compose(acc, simple_transposition(i, len(w)))
    assert acc == w


@given(st.permutations(list(range(1, 6))), st.permutations(list(range(1, 6))))
def test_compose_and_inverse(v, w):
    v, w = tuple(v), tuple(w)
    assert compose(v, w) == compose_perm(v, w)
    assert compose(v, inverse(v)) == identity(5)


@pytest.mark.parametrize("blocks", [(2, 1), (1, 2, 1), (3,), (2, 2)])
def test_young_subgroup_matches_brute_force(blocks):
    assert set(young_subgroup(blocks)) == set(young_subgroup_brute(blocks))


@pytest.mark.parametrize("blocks", [(2, 1), (1, 2, 1), (2, 2)])
def test_block_increasing_perms_are_shortest_coset_reps(blocks):
    n = sum(blocks)
    sub = young_subgroup_brute(blocks)
    reps = block_increasing_perms(blocks)
    seen = set()
    for d in reps:
        coset = {compose_perm(d, y) for y in sub}
        assert min(inversions(x) for x in coset) == inversions(d)
        seen |= coset
    assert len(seen) == len(list(permutations(range(1, n + 1))))


# ---- tableaux


def test_canonical_tableau_examples():
    t = canonical_tableau(((3, 2), (2,), (2, 1)))
    assert t.rows == (((1, 2, 3), (4, 5)), ((6, 7),), ((8, 9), (10,)))
    assert canonical_tableau(((1,),)).rows == (((1,),),)
    assert canonical_tableau(((2, 1),)).rows == (((1, 2), (3,)),)


def test_minimal_coset_rep_examples():
    lam = ((2, 1),)
    assert minimal_coset_rep(canonical_tableau(lam)) == identity(3)
    assert minimal_coset_rep(StandardTableau(((2,),), (((1, 2),),))) == identity(2)
    # two single cells in separate components: both orders are standard
    shape = ((1,), (1,))
    assert minimal_coset_rep(StandardTableau(shape, (((1,),), ((2,),)))) == identity(2)
    assert minimal_coset_rep(StandardTableau(shape, (((2,),), ((1,),)))) == (2, 1)


@pytest.mark.parametrize("lam", [((2, 1),), ((1,), (1, 1)), ((2,), (1,)), ((2, 1), (1,))])
def test_coset_rep_rebuilds_tableau_and_is_minimal(lam):
    base = canonical_tableau(lam)
    blocks = tuple(p for comp in lam for p in comp)
    sub = young_subgroup_brute(blocks)
    for t in standard_tableaux(lam):
        d = minimal_coset_rep(t)
        assert act_on_tableau(base, d) == t
        coset = [compose_perm(y, d) for y in sub]
        assert inversions(d) == min(inversions(x) for x in coset)


@pytest.mark.parametrize("lam", [((2, 1),), ((1,), (1, 1)), ((2,), (1,)), ((3, 1),)])
def test_standard_tableaux_are_all_standard_fillings(lam):
    m = sum(sum(c) for c in lam)
    cells = [(c, r, k) for c, comp in enumerate(lam) for r, length in enumerate(comp) for k in range(length)]
    expected = set()
    for perm in permutations(range(1, m + 1)):
        grid = dict(zip(cells, perm))
        rows = tuple(
            tuple(tuple(grid[(c, r, k)] for k in range(length)) for r, length in enumerate(comp))
            for c, comp in enumerate(lam)
        )
        if is_standard(StandardTableau(lam, rows)):
            expected.add(rows)
    assert {t.rows for t in standard_tableaux(lam)} == expected


def test_paper_semistandard_example_is_found():
    lam = ((3, 2), (2,), (2, 1))
    mu = ((2, 3), (1,), (2, 1, 1))
    rows = (
        (((1, 1), (1, 1), (2, 1)), ((2, 1), (2, 1))),
        (((1, 2), (2, 3)),),
        (((1, 3), (1, 3)), ((3, 3),)),
    )
    S = SemistandardTableau(lam, mu, rows)
    assert is_semistandard(S)
    assert S in enumerate_sst(lam, mu)


def test_sst_trivial_cases():
    assert enumerate_sst(((1, 1),), ((2,),)) == []
    lam = ((2, 1), (1,))
    assert enumerate_sst(lam, lam) == [initial_sst(lam)]


SST_CASES = [
    (((2, 1),), ((1, 1, 1),)),
    (((2,), (1,)), ((1, 1), (1,))),
    (((1,), (1, 1)), ((1,), (2,))),
    (((2, 1), (1,)), ((1, 1), (1, 1))),
    (((1,), (2,)), ((2,), (1,))),
    (((2,), (1,), (1,)), ((1,), (1, 1), (1,))),
]


@pytest.mark.parametrize("lam,mu", SST_CASES)
def test_sst_enumeration_matches_brute_force(lam, mu):
    got = {S.rows for S in enumerate_sst(lam, mu)}
    assert got == multitableaux_sst_brute(lam, mu)
    assert all(is_semistandard(S) for S in enumerate_sst(lam, mu))


@pytest.mark.parametrize("m,ell", [(3, 2), (2, 3), (4, 1)])
def test_sst_nonempty_only_when_dominated(m, ell):
    for lam in enumerate_multipartitions(m, ell):
        for mu in enumerate_multicompositions(m, ell):
            if enumerate_sst(lam, mu):
                assert dominance_leq(mu, lam)


def test_mu_fiber_examples():
    one = initial_sst(((2,),))
    assert [t.rows for t in mu_fiber(one)] == [(((1, 2),),)]
    S = SemistandardTableau(((2,),), ((1, 1),), ((((1, 1), (2, 1)),),))
    assert [t.rows for t in mu_fiber(S)] == [(((1, 2),),)]
    assert len(mu_fiber(initial_sst(((1, 1),)))) == 1


@pytest.mark.parametrize("lam,mu", SST_CASES + [(((2, 1),), ((2, 1),)), (((3,),), ((2, 1),))])
def test_mu_fiber_partitions_standard_tableaux(lam, mu):
    fibers = {}
    for t in standard_tableaux(lam):
        S = mu_map(t, mu)
        if is_semistandard(S):
            fibers.setdefault(S.rows, set()).add(t.rows)
    for S in enumerate_sst(lam, mu):
        assert {t.rows for t in mu_fiber(S)} == fibers.get(S.rows, set())


@pytest.mark.parametrize("lam,mu", SST_CASES)
def test_tableau_json_round_trip(lam, mu):
    for S in enumerate_sst(lam, mu):
        assert tableau_from_json(tableau_to_json(S)) == S
    for t in standard_tableaux(lam):
        assert tableau_from_json(tableau_to_json(t)) == t
