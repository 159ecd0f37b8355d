"""The recursive bijection between flat decorated block matrices and pairs of tableaux.

Level one is classical row-insertion RSK.  Level ``ell`` peels the last block
off: the largest part of each partition in block ``(ell, ell)`` stays behind as
an ordinary matrix entry, the remainder of that block is folded into block
``ell - 1``, and the leftover matrix goes through level-one RSK.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

from .combinatorics import (
    Composition,
    DomainError,
    MultiComposition,
    SemistandardTableau,
    enumerate_multicompositions,
    enumerate_multipartitions,
    enumerate_sst,
    flatten_parts,
    size,
)
from .parmat import NMatrix, ParMat, PartitionMatrix, _block_index, enumerate_parmat_flat


class InvariantViolation(AssertionError):
    """A structural identity that must hold for well-formed input failed."""


# ---------------------------------------------------------------------------
# level one


def _level_one_tableau(rows: list[list[int]], content: Composition) -> SemistandardTableau:
    shape = (tuple(len(r) for r in rows),)
    return SemistandardTableau(shape, (tuple(content),), (tuple(tuple((v, 1) for v in r) for r in rows),))


def rsk1(A: NMatrix) -> tuple[SemistandardTableau, SemistandardTableau]:
    """Row-insertion RSK on the two-line array of ``A``.

    Returns ``(S, T)``: ``S`` records the row indices (content = row sums),
    ``T`` holds the inserted column indices (content = column sums).
    """
    row_sums = tuple(sum(r) for r in A)
    col_sums = tuple(sum(A[i][j] for i in range(len(A))) for j in range(len(A[0]) if A else 0))
    if any(v < 0 for r in A for v in r):
        raise DomainError("matrix entries must be non-negative")
    if 0 in row_sums or 0 in col_sums:
        raise DomainError("zero row or column: margins must be strict compositions")
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for i, row in enumerate(A, start=1):
        for j, count in enumerate(row, start=1):
            for _ in range(count):
                value = j
                r = 0
                while True:
                    if r == len(P):
                        P.append([value])
                        Q.append([i])
                        break
                    pos = bisect_right(P[r], value)
                    if pos == len(P[r]):
                        P[r].append(value)
                        Q[r].append(i)
                        break
                    P[r][pos], value = value, P[r][pos]
                    r += 1
    return _level_one_tableau(Q, row_sums), _level_one_tableau(P, col_sums)


def rsk1_inverse(S: SemistandardTableau, T: SemistandardTableau) -> NMatrix:
    """Reverse bumping; ``S`` is the recording tableau, ``T`` the insertion tableau."""
    if S.shape != T.shape or len(S.shape) != 1:
        raise DomainError("need two level-one tableaux of the same shape")
    Q = [[e[0] for e in row] for row in S.rows[0]]
    P = [[e[0] for e in row] for row in T.rows[0]]
    nrows = len(S.type[0])
    ncols = len(T.type[0])
    A = [[0] * ncols for _ in range(nrows)]
    total = sum(len(r) for r in Q)
    for _ in range(total):
        # largest recording entry; equal entries form a horizontal strip whose
        # rightmost cell lies in the topmost row holding that value
        best_r, best_val = -1, 0
        for r, row in enumerate(Q):
            if row and row[-1] > best_val:
                best_r, best_val = r, row[-1]
        i = Q[best_r].pop()
        value = P[best_r].pop()
        for r in range(best_r - 1, -1, -1):
            pos = bisect_right(P[r], value - 1) - 1
            if P[r][pos] >= value:
                raise DomainError("insertion tableau is not semistandard")
            P[r][pos], value = value, P[r][pos]
        if not 1 <= i <= nrows or not 1 <= value <= ncols:
            raise DomainError("entries exceed the declared contents")
        A[i - 1][value - 1] += 1
    if any(Q[r] for r in range(len(Q))):
        raise DomainError("inconsistent tableaux")
    return tuple(map(tuple, A))


# ---------------------------------------------------------------------------
# one reduction step


@dataclass(frozen=True)
class ReductionOutput:
    """Data produced by peeling the last level off a flat decorated matrix."""

    tilde_pair: ParMat
    hat_matrix: NMatrix
    tilde_nu: MultiComposition
    tilde_mu: MultiComposition
    hat_nu: Composition
    hat_mu: Composition
    d: int
    a_prime: NMatrix
    p_prime: PartitionMatrix
    b: Composition
    c: Composition
    # original last-block indices of the surviving (nonzero) b, c, hat_nu, hat_mu parts
    b_index: tuple[int, ...] = field(default=())
    c_index: tuple[int, ...] = field(default=())
    hat_row_index: tuple[int, ...] = field(default=())
    hat_col_index: tuple[int, ...] = field(default=())


def _nonzero(parts) -> tuple[tuple[int, ...], tuple[int, ...]]:
    idx = tuple(k for k, v in enumerate(parts, start=1) if v)
    return tuple(parts[k - 1] for k in idx), idx


def reduce_level(x: ParMat, level: int | None = None) -> ReductionOutput:
    nu, mu = x.row_blocks, x.col_blocks
    ell = len(nu) if level is None else level
    if ell < 2 or len(nu) != ell or len(mu) != ell:
        raise DomainError("reduction needs level at least 2 matching the block structure")
    if not x.is_flat():
        raise DomainError("input is not flat")
    rows, cols = x.row_index, x.col_index
    h_last, t_last = len(nu[-1]), len(mu[-1])
    last_rows = [k for k, (p, _) in enumerate(rows) if p == ell]
    last_cols = [k for k, (q, _) in enumerate(cols) if q == ell]
    early_rows = [k for k, (p, _) in enumerate(rows) if p < ell]
    early_cols = [k for k, (q, _) in enumerate(cols) if q < ell]

    a_prime = tuple(
        tuple(x.P[r][c][0] if x.P[r][c] else 0 for c in last_cols) for r in last_rows
    )
    p_prime = tuple(tuple(x.P[r][c][1:] for c in last_cols) for r in last_rows)
    b = tuple(
        sum(x.A[r][c] for c in early_cols) + sum(a_prime[i]) for i, r in enumerate(last_rows)
    )
    c = tuple(
        sum(x.A[r][cc] for r in early_rows) + sum(a_prime[i][j] for i in range(h_last))
        for j, cc in enumerate(last_cols)
    )
    hat_full = tuple(
        tuple(x.A[r][cc] - a_prime[i][j] for j, cc in enumerate(last_cols))
        for i, r in enumerate(last_rows)
    )
    hat_nu_full = tuple(v - bb for v, bb in zip(nu[-1], b))
    hat_mu_full = tuple(v - cc for v, cc in zip(mu[-1], c))
    if min(hat_nu_full + hat_mu_full + tuple(v for r in hat_full for v in r), default=0) < 0:
        raise InvariantViolation("negative entry after reduction")

    b_nz, b_index = _nonzero(b)
    c_nz, c_index = _nonzero(c)
    hat_nu, hat_row_index = _nonzero(hat_nu_full)
    hat_mu, hat_col_index = _nonzero(hat_mu_full)
    hat_matrix = tuple(
        tuple(hat_full[i - 1][j - 1] for j in hat_col_index) for i in hat_row_index
    )

    tilde_nu = tuple(nu[:-2]) + (tuple(nu[-2]) + b_nz,)
    tilde_mu = tuple(mu[:-2]) + (tuple(mu[-2]) + c_nz,)
    new_rows = early_rows + [last_rows[i - 1] for i in b_index]
    new_cols = early_cols + [last_cols[j - 1] for j in c_index]
    pos_r = {r: i for i, r in enumerate(last_rows)}
    pos_c = {cc: j for j, cc in enumerate(last_cols)}

    def tilde_entry(r: int, cc: int):
        if r in pos_r and cc in pos_c:
            return a_prime[pos_r[r]][pos_c[cc]], p_prime[pos_r[r]][pos_c[cc]]
        return x.A[r][cc], x.P[r][cc]

    tA = tuple(tuple(tilde_entry(r, cc)[0] for cc in new_cols) for r in new_rows)
    tP = tuple(tuple(tilde_entry(r, cc)[1] for cc in new_cols) for r in new_rows)
    try:
        tilde_pair = ParMat(tA, tP, tilde_nu, tilde_mu)
    except DomainError as exc:
        raise InvariantViolation(f"reduced pair is malformed: {exc}") from exc

    A_last = sum(x.A[r][cc] for r in last_rows for cc in last_cols)
    d = sum(hat_nu)
    m = size(nu)
    # the structural identities that make the reduction well defined
    if not (d == sum(hat_mu) == A_last - sum(map(sum, a_prime))):
        raise InvariantViolation("reduced degree mismatch")
    if tuple(sum(r) for r in hat_matrix) != hat_nu or tuple(
        sum(r[j] for r in hat_matrix) for j in range(len(hat_mu))
    ) != hat_mu:
        raise InvariantViolation("leftover matrix has the wrong margins")
    if not (size(tilde_nu) == size(tilde_mu) == m - d):
        raise InvariantViolation("reduced sizes mismatch")
    if not tilde_pair.is_flat():
        raise InvariantViolation("reduced pair is not flat")
    return ReductionOutput(
        tilde_pair, hat_matrix, tilde_nu, tilde_mu, hat_nu, hat_mu, d,
        a_prime, p_prime, b, c, b_index, c_index, hat_row_index, hat_col_index,
    )


def unreduce_level(r: ReductionOutput, nu: MultiComposition, mu: MultiComposition) -> ParMat:
    """Rebuild the level-``ell`` matrix from its reduction."""
    return _assemble(
        r.tilde_pair, r.hat_matrix, r.b_index, r.c_index, r.hat_row_index, r.hat_col_index, nu, mu
    )


def _assemble(
    tilde: ParMat,
    hat: NMatrix,
    b_index,
    c_index,
    hat_rows,
    hat_cols,
    nu: MultiComposition,
    mu: MultiComposition,
) -> ParMat:
    ell = len(nu)
    if len(mu) != ell or ell < 2:
        raise DomainError("target shapes must share a level of at least 2")
    expect_nu = tuple(nu[:-2]) + (tuple(nu[-2]) + tuple(0 for _ in b_index),)
    if len(tilde.row_blocks) != ell - 1 or tuple(map(len, tilde.row_blocks)) != tuple(map(len, expect_nu)):
        raise DomainError("reduced pair does not fit the target row shape")
    expect_mu = tuple(mu[:-2]) + (tuple(mu[-2]) + tuple(0 for _ in c_index),)
    if len(tilde.col_blocks) != ell - 1 or tuple(map(len, tilde.col_blocks)) != tuple(map(len, expect_mu)):
        raise DomainError("reduced pair does not fit the target column shape")
    rows, cols = _block_index(nu), _block_index(mu)
    n_early_r = sum(1 for p, _ in rows if p < ell)
    n_early_c = sum(1 for q, _ in cols if q < ell)
    # flattened position of each original row/col inside the reduced pair
    tr = {k: k for k in range(n_early_r)}
    for k, i in enumerate(b_index):
        tr[n_early_r + i - 1] = n_early_r + k
    tc = {k: k for k in range(n_early_c)}
    for k, j in enumerate(c_index):
        tc[n_early_c + j - 1] = n_early_c + k
    hr = {n_early_r + i - 1: k for k, i in enumerate(hat_rows)}
    hc = {n_early_c + j - 1: k for k, j in enumerate(hat_cols)}
    A = [[0] * len(cols) for _ in rows]
    P: list[list[tuple[int, ...]]] = [[() for _ in cols] for _ in rows]
    for r in range(len(rows)):
        for c in range(len(cols)):
            last = r >= n_early_r and c >= n_early_c
            a = tilde.A[tr[r]][tc[c]] if r in tr and c in tc else 0
            eta = tilde.P[tr[r]][tc[c]] if r in tr and c in tc else ()
            if last:
                if eta and (not a or eta[0] > a):
                    raise DomainError("reduced decoration exceeds its leading part")
                eta = (a,) + tuple(eta) if a else ()
                a += hat[hr[r]][hc[c]] if r in hr and c in hc else 0
            A[r][c] = a
            P[r][c] = tuple(eta)
    try:
        return ParMat(tuple(map(tuple, A)), tuple(map(tuple, P)), nu, mu)
    except DomainError as exc:
        raise DomainError(f"reduction data inconsistent with target shapes: {exc}") from exc


# ---------------------------------------------------------------------------
# the full map and its inverse


def _relabel(t: SemistandardTableau, table: dict, shape, type_) -> SemistandardTableau:
    rows = tuple(
        tuple(tuple(table.get(e, e) for e in row) for row in comp) for comp in t.rows
    )
    return SemistandardTableau(shape, type_, rows)


def phi(x: ParMat) -> tuple[SemistandardTableau, SemistandardTableau]:
    """Send a flat decorated matrix over ``(nu, mu)`` to ``(S, T)`` with types ``nu`` and ``mu``."""
    nu, mu = x.row_blocks, x.col_blocks
    ell = len(nu)
    if ell != len(mu):
        raise DomainError("levels differ")
    if not x.is_flat():
        raise DomainError("input is not flat")
    if ell == 1:
        if size(nu) == 0:
            empty = SemistandardTableau(((),), nu, ((),))
            return empty, SemistandardTableau(((),), mu, ((),))
        S, T = rsk1(x.A)
        return (
            SemistandardTableau(S.shape, nu, S.rows),
            SemistandardTableau(T.shape, mu, T.rows),
        )
    red = reduce_level(x, ell)
    tS, tT = phi(red.tilde_pair)
    if red.d:
        hS, hT = rsk1(red.hat_matrix)
        hat_shape = hS.shape[0]
        hS_rows = tuple(tuple((red.hat_row_index[e[0] - 1], ell) for e in row) for row in hS.rows[0])
        hT_rows = tuple(tuple((red.hat_col_index[e[0] - 1], ell) for e in row) for row in hT.rows[0])
    else:
        hat_shape, hS_rows, hT_rows = (), (), ()
    h_prev, t_prev = len(nu[-2]), len(mu[-2])
    s_table = {(h_prev + k, ell - 1): (i, ell) for k, i in enumerate(red.b_index, start=1)}
    t_table = {(t_prev + k, ell - 1): (j, ell) for k, j in enumerate(red.c_index, start=1)}
    shape = tuple(tS.shape) + (hat_shape,)
    S_rows = tuple(
        tuple(tuple(s_table.get(e, e) for e in row) for row in comp) for comp in tS.rows
    ) + (hS_rows,)
    T_rows = tuple(
        tuple(tuple(t_table.get(e, e) for e in row) for row in comp) for comp in tT.rows
    ) + (hT_rows,)
    return SemistandardTableau(shape, nu, S_rows), SemistandardTableau(shape, mu, T_rows)


def _count(t: SemistandardTableau, entry, components) -> int:
    return sum(1 for c, _, _, e in t.entries() if e == entry and c in components)


def phi_inverse(S: SemistandardTableau, T: SemistandardTableau) -> ParMat:
    if S.shape != T.shape:
        raise DomainError("tableaux have different shapes")
    nu, mu = S.type, T.type
    ell = len(S.shape)
    if len(nu) != ell or len(mu) != ell:
        raise DomainError("levels differ")
    if ell == 1:
        if size(nu) == 0:
            return ParMat(tuple(), tuple(), nu, mu)
        lvl_s = SemistandardTableau(S.shape, (flatten_parts(nu),), S.rows)
        lvl_t = SemistandardTableau(T.shape, (flatten_parts(mu),), T.rows)
        A = rsk1_inverse(lvl_s, lvl_t)
        return ParMat(A, tuple(tuple(() for _ in r) for r in A), nu, mu)

    early = set(range(1, ell))
    b = tuple(_count(S, (i, ell), early) for i in range(1, len(nu[-1]) + 1))
    c = tuple(_count(T, (j, ell), early) for j in range(1, len(mu[-1]) + 1))
    b_nz, b_index = _nonzero(b)
    c_nz, c_index = _nonzero(c)
    hat_nu_full = tuple(_count(S, (i, ell), {ell}) for i in range(1, len(nu[-1]) + 1))
    hat_mu_full = tuple(_count(T, (j, ell), {ell}) for j in range(1, len(mu[-1]) + 1))
    hat_nu, hat_rows = _nonzero(hat_nu_full)
    hat_mu, hat_cols = _nonzero(hat_mu_full)

    h_prev, t_prev = len(nu[-2]), len(mu[-2])
    s_table = {(i, ell): (h_prev + k, ell - 1) for k, i in enumerate(b_index, start=1)}
    t_table = {(j, ell): (t_prev + k, ell - 1) for k, j in enumerate(c_index, start=1)}
    tilde_nu = tuple(nu[:-2]) + (tuple(nu[-2]) + b_nz,)
    tilde_mu = tuple(mu[:-2]) + (tuple(mu[-2]) + c_nz,)
    tilde_shape = tuple(S.shape[:-1])
    tS = _relabel(SemistandardTableau(tilde_shape, tilde_nu, S.rows[:-1]), s_table, tilde_shape, tilde_nu)
    tT = _relabel(SemistandardTableau(tilde_shape, tilde_mu, T.rows[:-1]), t_table, tilde_shape, tilde_mu)
    tilde = phi_inverse(tS, tT)

    if hat_nu:
        inv_r = {i: k for k, i in enumerate(hat_rows, start=1)}
        inv_c = {j: k for k, j in enumerate(hat_cols, start=1)}
        hS = SemistandardTableau(
            (S.shape[-1],), (hat_nu,), (tuple(tuple((inv_r[e[0]], 1) for e in row) for row in S.rows[-1]),)
        )
        hT = SemistandardTableau(
            (T.shape[-1],), (hat_mu,), (tuple(tuple((inv_c[e[0]], 1) for e in row) for row in T.rows[-1]),)
        )
        hat = rsk1_inverse(hS, hT)
    else:
        hat = ()
    return _assemble(tilde, hat, b_index, c_index, hat_rows, hat_cols, nu, mu)


# ---------------------------------------------------------------------------
# exhaustive verification


def sst_pairs(nu: MultiComposition, mu: MultiComposition) -> list[tuple[SemistandardTableau, SemistandardTableau]]:
    """Pairs ``(S, T)`` of common multipartition shape with types ``nu`` and ``mu``."""
    out = []
    for lam in enumerate_multipartitions(size(nu), len(nu)):
        left = enumerate_sst(lam, nu)
        if not left:
            continue
        right = enumerate_sst(lam, mu)
        out.extend((S, T) for S in left for T in right)
    return out


@dataclass
class BijectionReport:
    pairs_checked: int = 0
    elements_checked: int = 0
    mismatches: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "pairs_checked": self.pairs_checked,
            "elements_checked": self.elements_checked,
            "mismatches": self.mismatches[:20],
            "mismatch_count": len(self.mismatches),
            "ok": self.ok,
        }


def verify_pair(nu: MultiComposition, mu: MultiComposition, report: BijectionReport) -> None:
    flats = enumerate_parmat_flat(nu, mu)
    pairs = sst_pairs(nu, mu)
    report.pairs_checked += 1
    where = {"nu": [list(c) for c in nu], "mu": [list(c) for c in mu]}
    if len(flats) != len(pairs):
        report.mismatches.append({**where, "kind": "count", "flat": len(flats), "sst2": len(pairs)})
    images = set()
    for x in flats:
        report.elements_checked += 1
        try:
            S, T = phi(x)
            back = phi_inverse(S, T)
        except (DomainError, InvariantViolation) as exc:
            report.mismatches.append({**where, "kind": "error", "input": x.to_json(), "error": str(exc)})
            continue
        if back != x:
            report.mismatches.append({**where, "kind": "round trip", "input": x.to_json()})
        images.add((S, T))
    if images != set(pairs):
        report.mismatches.append({**where, "kind": "image", "missing": len(set(pairs) - images)})
    for S, T in pairs:
        try:
            if phi(phi_inverse(S, T)) != (S, T):
                report.mismatches.append({**where, "kind": "inverse round trip", "S": S.to_json()})
        except (DomainError, InvariantViolation) as exc:
            report.mismatches.append({**where, "kind": "error", "S": S.to_json(), "error": str(exc)})


def verify_bijection(m: int, ell: int) -> BijectionReport:
    """Check ``phi`` against the double tableau enumeration for every pair of types."""
    report = BijectionReport()
    types = enumerate_multicompositions(m, ell)
    for nu in types:
        for mu in types:
            verify_pair(nu, mu, report)
    return report
