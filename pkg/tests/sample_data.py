"""Literal inputs shared by several test modules."""

from schurkit.parmat import ParMat


def worked_example() -> ParMat:
    A11 = ((2, 0), (3, 1), (0, 1))
    A12 = ((0, 0, 0, 0), (0, 2, 0, 0), (0, 0, 5, 0))
    A21 = ((3, 0), (0, 0), (0, 2))
    A22 = ((2, 4, 0, 3), (3, 1, 5, 0), (0, 3, 2, 3))
    A = tuple(a + b for a, b in zip(A11, A12)) + tuple(a + b for a, b in zip(A21, A22))
    e = ()
    P22 = (((1,), (3,), e, (2,)), (e, e, e, e), (e, (3,), e, (2,)))
    P = tuple((e,) * 6 for _ in range(3)) + tuple((e, e) + row for row in P22)
    return ParMat(A, P, ((2, 6, 6), (12, 9, 10)), ((8, 4), (5, 10, 12, 6)))
