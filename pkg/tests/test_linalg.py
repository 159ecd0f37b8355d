from gmpy2 import mpq
from hypothesis import given, strategies as st

from schurkit._linalg import Echelon, EchelonModP, rank, solve

vectors = st.lists(
    st.dictionaries(st.integers(0, 5), st.integers(-4, 4), max_size=5), min_size=1, max_size=6
)


def _sympy_rank(vecs):
    import sympy

    keys = sorted({k for v in vecs for k in v})
    if not keys:
        return 0
    return sympy.Matrix([[v.get(k, 0) for k in keys] for v in vecs]).rank()


@given(vectors)
def test_rank_matches_sympy(vecs):
    assert rank(vecs) == _sympy_rank(vecs)


@given(vectors)
def test_modular_rank_never_exceeds_exact_rank(vecs):
    mod = EchelonModP()
    for v in vecs:
        mod.add(v)
    assert mod.rank <= rank(vecs)
    # small entries: no prime this large divides a nonzero minor
    assert mod.rank == rank(vecs)


def test_modular_rank_detects_dependence_mod_p():
    p = 7
    mod = EchelonModP(p)
    assert mod.add({0: 1, 1: 2})
    assert not mod.add({0: 8, 1: 16})
    # exactly independent, dependent modulo 7
    assert not mod.add({0: 1, 1: 9})
    assert rank([{0: 1, 1: 2}, {0: 1, 1: 9}]) == 2


def test_solve_round_trip():
    vecs = [{0: mpq(1), 1: mpq(2)}, {1: mpq(3)}]
    combo = solve(vecs, {0: mpq(2), 1: mpq(7)})
    assert combo == {0: 2, 1: 1}
    assert solve(vecs, {2: mpq(1)}) is None


def test_echelon_reports_independence():
    ech = Echelon()
    assert ech.add({0: 1})
    assert not ech.add({0: 5})
    assert ech.rank == 1
