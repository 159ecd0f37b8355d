import pytest
from hypothesis import given, strategies as st

from oracles import longest_chain_weight, rsk_biword
from sample_data import worked_example
from schurkit.combinatorics import (
    DomainError,
    enumerate_multicompositions,
    is_semistandard,
)
from schurkit.parmat import ParMat, empty_partitions, enumerate_parmat_flat
from schurkit.rsk import (
    phi,
    phi_inverse,
    reduce_level,
    rsk1,
    rsk1_inverse,
    sst_pairs,
    unreduce_level,
    verify_bijection,
)


def _plain(t):
    return [[e[0] for e in row] for row in t.rows[0]]


# ---- level one


def test_rsk1_examples():
    S, T = rsk1(((3,),))
    assert _plain(S) == [[1, 1, 1]] and _plain(T) == [[1, 1, 1]]
    S, T = rsk1(((1, 0), (0, 1)))
    assert S.shape == ((2,),) and _plain(S) == _plain(T) == [[1, 2]]
    S, T = rsk1(((0, 1), (1, 0)))
    assert S.shape == ((1, 1),)
    assert _plain(S) == [[1], [2]] and _plain(T) == [[1], [2]]


@pytest.mark.parametrize("A", [((3,),), ((1, 0), (0, 1)), ((0, 1), (1, 0))])
def test_rsk1_inverse_examples(A):
    assert rsk1_inverse(*rsk1(A)) == A


positive_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 3), min_size=c, max_size=c), min_size=r, max_size=r)
    )
).filter(lambda M: all(sum(row) for row in M) and all(sum(col) for col in zip(*M)))


@given(positive_matrices)
def test_rsk1_matches_independent_insertion(M):
    A = tuple(map(tuple, M))
    S, T = rsk1(A)
    Q, P = rsk_biword(A)
    assert _plain(S) == Q and _plain(T) == P
    assert S.shape[0][0] == longest_chain_weight(A)
    assert is_semistandard(S) and is_semistandard(T)


@given(positive_matrices)
def test_rsk1_round_trip_and_transpose_symmetry(M):
    A = tuple(map(tuple, M))
    S, T = rsk1(A)
    assert rsk1_inverse(S, T) == A
    At = tuple(zip(*A))
    S2, T2 = rsk1(At)
    assert _plain(S2) == _plain(T) and _plain(T2) == _plain(S)


def test_rsk1_rejects_zero_margins():
    with pytest.raises(DomainError):
        rsk1(((1, 0),))


# ---- one reduction step


def test_worked_example_reduction():
    x = worked_example()
    r = reduce_level(x)
    assert r.b == (9, 0, 7)
    assert r.c == (1, 8, 5, 4)
    assert r.hat_nu == (3, 9, 3)
    assert r.hat_mu == (4, 2, 7, 2)
    assert r.hat_matrix == ((1, 1, 0, 1), (3, 1, 5, 0), (0, 0, 2, 1))
    assert r.a_prime == ((1, 3, 0, 2), (0, 0, 0, 0), (0, 3, 0, 2))
    assert all(eta == () for row in r.p_prime for eta in row)
    # the zero part b_2 is dropped but its position is remembered
    assert r.tilde_nu == ((2, 6, 6, 9, 7),)
    assert r.b_index == (1, 3)
    assert r.tilde_mu == ((8, 4, 1, 8, 5, 4),)
    padded = (
        (2, 0, 0, 0, 0, 0),
        (3, 1, 0, 2, 0, 0),
        (0, 1, 0, 0, 5, 0),
        (3, 0, 1, 3, 0, 2),
        (0, 0, 0, 0, 0, 0),
        (0, 2, 0, 3, 0, 2),
    )
    assert r.tilde_pair.A == tuple(row for k, row in enumerate(padded) if k != 4)
    assert unreduce_level(r, x.row_blocks, x.col_blocks) == x


def test_reduction_with_nothing_to_move():
    nu = mu = ((1,), (2,))
    A = ((1, 0), (0, 2))
    x = ParMat(A, empty_partitions(A), nu, mu)
    r = reduce_level(x)
    assert r.b == (0,) and r.c == (0,)
    assert r.hat_matrix == ((2,),) and r.hat_nu == (2,)
    assert unreduce_level(r, nu, mu) == x


def test_reduction_with_everything_moved():
    nu = mu = ((), (2, 1))
    A = ((2, 0), (0, 1))
    P = (((2,), ()), ((), (1,)))
    x = ParMat(A, P, nu, mu)
    r = reduce_level(x)
    assert r.d == 0 and r.hat_nu == () and r.hat_mu == ()
    assert r.hat_matrix == ()
    assert unreduce_level(r, nu, mu) == x


@pytest.mark.parametrize("m,ell", [(3, 2), (2, 3)])
def test_unreduce_inverts_reduce(m, ell):
    objs = enumerate_multicompositions(m, ell)
    for nu in objs:
        for mu in objs:
            for x in enumerate_parmat_flat(nu, mu):
                assert unreduce_level(reduce_level(x), nu, mu) == x


def test_reduce_rejects_level_one_and_non_flat():
    lam = ((1,),)
    with pytest.raises(DomainError):
        reduce_level(ParMat(((1,),), (((),),), lam, lam))
    with pytest.raises(DomainError):
        A = ((1,),)
        reduce_level(ParMat(A, (((1,),),), ((1,), ()), ((1,), ())))  # block (1, 1) must be empty


# ---- the full bijection


def test_level_one_phi_is_rsk():
    A = ((1, 1), (1, 0))
    x = ParMat(A, empty_partitions(A), ((2, 1),), ((2, 1),))
    S, T = phi(x)
    assert (S.rows, T.rows) == tuple(t.rows for t in rsk1(A))


def test_phi_with_empty_last_component():
    # all mass in the first blocks: the last component of the shape stays empty
    nu = mu = ((2,), ())
    A = ((2,),)
    x = ParMat(A, empty_partitions(A), nu, mu)
    S, T = phi(x)
    assert S.shape == ((2,), ())
    assert phi_inverse(S, T) == x


def test_worked_example_round_trip():
    x = worked_example()
    S, T = phi(x)
    assert S.type == x.row_blocks and T.type == x.col_blocks
    assert is_semistandard(S) and is_semistandard(T)
    assert phi_inverse(S, T) == x


@pytest.mark.parametrize("m,ell", [(2, 2), (3, 2), (2, 3), (4, 1)])
def test_phi_is_a_bijection_onto_double_tableaux(m, ell):
    objs = enumerate_multicompositions(m, ell)
    for nu in objs:
        for mu in objs:
            images = [phi(x) for x in enumerate_parmat_flat(nu, mu)]
            assert len(set(images)) == len(images)
            assert set(images) == set(sst_pairs(nu, mu))


@pytest.mark.parametrize("m,ell", [(3, 2), (2, 3)])
def test_verify_bijection_report(m, ell):
    report = verify_bijection(m, ell)
    assert report.ok
    assert report.pairs_checked == len(enumerate_multicompositions(m, ell)) ** 2


@st.composite
def flat_elements(draw):
    ell = draw(st.integers(2, 3))
    m = draw(st.integers(1, 4 if ell == 2 else 3))
    objs = enumerate_multicompositions(m, ell)
    nu, mu = draw(st.sampled_from(objs)), draw(st.sampled_from(objs))
    return draw(st.sampled_from(enumerate_parmat_flat(nu, mu)))


@given(flat_elements())
def test_phi_round_trip_property(x):
    S, T = phi(x)
    assert S.shape == T.shape
    assert is_semistandard(S) and is_semistandard(T)
    assert phi_inverse(S, T) == x
