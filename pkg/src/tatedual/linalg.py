"""Exact dense and sparse linear algebra over the prime field F_p.

Dense matrices are int64 numpy arrays with entries in [0, p).  Products are
taken through float64 BLAS, which is exact as long as the inner dimension
times (p-1)^2 stays below 2^53; every matrix in this package is far inside
that bound and we assert it anyway.

Elimination uses a blocked right-looking LU so the trailing updates run
through BLAS; the naive row loop is kept for small matrices.  The sparse
routines exist for symmetric powers whose dimension exceeds DENSE_LIMIT;
they compute ranks only.
"""

from __future__ import annotations

import numpy as np
from scipy import sparse

DENSE_LIMIT = 2000

_FLOAT_EXACT_BOUND = 2**53
_BLOCK = 128
_BLOCKED_MIN = 192


def as_field_matrix(a, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("expected a 2-d array")
    return a % p


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact a @ b mod p, through BLAS for anything nontrivial."""
    inner = a.shape[1]
    if inner != b.shape[0]:
        raise ValueError("shape mismatch")
    if inner == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if inner * (p - 1) ** 2 >= _FLOAT_EXACT_BOUND:
        raise OverflowError("matrix too large for exact float64 product")
    if min(a.shape[0], inner, b.shape[1]) < 32:
        return (a @ b) % p
    c = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    return c % p


def matrix_power_mod(a: np.ndarray, e: int, p: int) -> np.ndarray:
    if e < 0:
        raise ValueError("negative power")
    out = np.eye(a.shape[0], dtype=np.int64)
    base = a % p
    while e:
        if e & 1:
            out = matmul_mod(out, base, p)
        base = matmul_mod(base, base, p) if e > 1 else base
        e >>= 1
    return out


# ---------------------------------------------------------------------------
# forward elimination


def _forward_naive(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        v = int(a[r, c])
        if v != 1:
            a[r] = (a[r] * pow(v, -1, p)) % p
        below = r + 1 + np.flatnonzero(a[r + 1 :, c])
        if below.size:
            a[below] = (a[below] - a[below, c][:, None] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def _forward_blocked(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Right-looking blocked LU: panel factorization with delayed reduction,
    one triangular pass for the pivot rows, one BLAS update for the rest."""
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    c0 = 0
    while c0 < cols and r < rows:
        c1 = min(c0 + _BLOCK, cols)
        width = c1 - c0
        lower = np.zeros((rows - r, width), dtype=np.int64)
        found: list[int] = []
        for c in range(c0, c1):
            rr = r + len(found)
            if rr == rows:
                break
            a[rr:, c] %= p
            nz = np.flatnonzero(a[rr:, c])
            if nz.size == 0:
                continue
            pr = rr + int(nz[0])
            if pr != rr:
                a[[rr, pr]] = a[[pr, rr]]
                lower[[rr - r, pr - r]] = lower[[pr - r, rr - r]]
            a[rr, c0:c1] %= p
            v = int(a[rr, c])
            if v != 1:
                inv = pow(v, -1, p)
                a[rr] = (a[rr] * inv) % p
                lower[rr - r] = (lower[rr - r] * inv) % p
            f = a[rr + 1 :, c] % p
            hit = np.flatnonzero(f)
            if hit.size:
                rows_hit = rr + 1 + hit
                a[rows_hit, c0:c1] -= f[hit, None] * a[rr, c0:c1]
                lower[rows_hit - r, len(found)] = f[hit]
            found.append(c)
        rk = len(found)
        if rk:
            a[r:, c0:c1] %= p
            if c1 < cols:
                # finish the pivot rows first (unit triangular update) ...
                for t in range(rk):
                    a[r + t, c1:] %= p
                    if t + 1 < rk:
                        fcol = lower[t + 1 : rk, t]
                        hit = np.flatnonzero(fcol)
                        if hit.size:
                            a[r + t + 1 + hit, c1:] -= fcol[hit, None] * a[r + t, c1:]
                # ... then the remaining rows in one multiply
                if r + rk < rows:
                    prod = matmul_mod(lower[rk:, :rk], a[r : r + rk, c1:], p)
                    a[r + rk :, c1:] = (a[r + rk :, c1:] - prod) % p
            pivots.extend(found)
            r += rk
        c0 = c1
    a %= p
    return a, pivots


def forward_eliminate(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Row echelon form (not reduced) and pivot columns.  Copies the input."""
    a = as_field_matrix(a, p).copy()
    if min(a.shape) == 0:
        return a, []
    if min(a.shape) >= _BLOCKED_MIN:
        return _forward_blocked(a, p)
    return _forward_naive(a, p)


def row_reduce(a, p: int, reduced: bool = True) -> tuple[np.ndarray, list[int]]:
    """Row echelon form mod p.  Returns (form, pivot column indices)."""
    ech, pivots = forward_eliminate(a, p)
    if reduced and pivots:
        for t in range(len(pivots) - 1, -1, -1):
            c = pivots[t]
            above = np.flatnonzero(ech[:t, c])
            if above.size:
                ech[above] = (ech[above] - ech[above, c][:, None] * ech[t]) % p
    return ech, pivots


def _solve_unit_upper(m: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Solve m @ x = b where m is upper triangular with unit diagonal."""
    k = m.shape[0]
    x = b % p
    if k == 0 or x.shape[1] == 0:
        return x
    for lo in range(((k - 1) // _BLOCK) * _BLOCK, -1, -_BLOCK):
        hi = min(lo + _BLOCK, k)
        if hi < k:
            x[lo:hi] = (x[lo:hi] - matmul_mod(m[lo:hi, hi:], x[hi:], p)) % p
        for t in range(hi - 1, lo, -1):
            col = m[lo:t, t]
            hit = np.flatnonzero(col)
            if hit.size:
                x[lo + hit] = (x[lo + hit] - col[hit, None] * x[t]) % p
    return x


def rank_mod(a, p: int) -> int:
    if sparse.issparse(a):
        return sparse_rank_mod(a, p)
    _, pivots = forward_eliminate(a, p)
    return len(pivots)


def kernel_basis(a, p: int) -> np.ndarray:
    """Columns form a basis of the right nullspace of a over F_p."""
    a = as_field_matrix(a, p)
    cols = a.shape[1]
    ech, pivots = forward_eliminate(a, p)
    rank = len(pivots)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    if not free:
        return np.zeros((cols, 0), dtype=np.int64)
    coords = _solve_unit_upper(ech[:rank][:, pivots], ech[:rank][:, free], p)
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    basis[free, np.arange(len(free))] = 1
    basis[pivots, :] = (-coords) % p
    return basis


def image_basis(a, p: int) -> np.ndarray:
    """Columns of a spanning its column space (the pivot columns)."""
    a = as_field_matrix(a, p)
    _, pivots = forward_eliminate(a, p)
    return a[:, pivots].copy()


def kernel_and_image(a, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Kernel basis and image basis from a single elimination."""
    a = as_field_matrix(a, p)
    cols = a.shape[1]
    ech, pivots = forward_eliminate(a, p)
    rank = len(pivots)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    if free:
        coords = _solve_unit_upper(ech[:rank][:, pivots], ech[:rank][:, free], p)
        basis[free, np.arange(len(free))] = 1
        basis[pivots, :] = (-coords) % p
    return basis, a[:, pivots].copy()


def coordinates_in_span(basis: np.ndarray, vecs: np.ndarray, p: int) -> np.ndarray:
    """Express the columns of vecs in the independent columns of basis.

    Raises ValueError if some column is not in the span.
    """
    basis = as_field_matrix(basis, p)
    vecs = as_field_matrix(vecs, p)
    k = basis.shape[1]
    aug = np.hstack([basis, vecs])
    ech, pivots = forward_eliminate(aug, p)
    if any(c >= k for c in pivots):
        raise ValueError("vector outside span")
    if pivots != list(range(k)):
        raise ValueError("basis columns are not independent")
    return _solve_unit_upper(ech[:k, :k], ech[:k, k:], p)


def complete_subspace(sub: np.ndarray, space: np.ndarray, p: int) -> np.ndarray:
    """Columns of space completing the columns of sub to a basis of space.

    sub must be contained in the column span of space.
    """
    aug = np.hstack([as_field_matrix(sub, p), as_field_matrix(space, p)])
    _, pivots = forward_eliminate(aug, p)
    k = sub.shape[1]
    if len([c for c in pivots if c < k]) != k:
        raise ValueError("sub columns are not independent")
    extra = [c - k for c in pivots if c >= k]
    return as_field_matrix(space, p)[:, extra].copy()


def inverse_mod(a, p: int) -> np.ndarray:
    a = as_field_matrix(a, p)
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError("not square")
    try:
        return coordinates_in_span(a, np.eye(n, dtype=np.int64), p)
    except ValueError as exc:
        raise ValueError("matrix is singular mod p") from exc


def sparse_rank_mod(a, p: int) -> int:
    """Rank of a scipy sparse matrix over F_p by elimination on row dicts.

    Pivots are chosen on the column of least fill to keep the elimination
    sparse; adequate for the structured matrices produced here.
    """
    a = a.tocsr()
    rows: dict[int, dict[int, int]] = {}
    col_rows: dict[int, set[int]] = {}
    for i in range(a.shape[0]):
        lo, hi = a.indptr[i], a.indptr[i + 1]
        entries = {}
        for j, v in zip(a.indices[lo:hi], a.data[lo:hi]):
            v = int(v) % p
            if v:
                entries[int(j)] = v
        if entries:
            rows[i] = entries
            for j in entries:
                col_rows.setdefault(j, set()).add(i)
    rank = 0
    while col_rows:
        c = min(col_rows, key=lambda j: (len(col_rows[j]), j))
        touching = col_rows[c]
        pr = min(touching, key=lambda i: (len(rows[i]), i))
        prow = rows.pop(pr)
        for j in prow:
            col_rows[j].discard(pr)
            if not col_rows[j]:
                del col_rows[j]
        inv = pow(prow[c], -1, p)
        prow = {j: (v * inv) % p for j, v in prow.items()}
        for i in list(col_rows.get(c, ())):
            row = rows[i]
            f = row[c]
            for j, v in prow.items():
                cur = row.get(j)
                nv = ((cur or 0) - f * v) % p
                if nv:
                    if cur is None:
                        col_rows.setdefault(j, set()).add(i)
                    row[j] = nv
                elif cur is not None:
                    del row[j]
                    col_rows[j].discard(i)
                    if not col_rows[j]:
                        del col_rows[j]
            if not row:
                del rows[i]
        rank += 1
    return rank
