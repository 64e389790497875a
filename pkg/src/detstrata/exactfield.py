"""
Dense exact linear algebra over a prime field F_p.

Matrices are plain ``numpy`` int64 arrays with entries in ``[0, p)``.
Elimination is blocked: pivots are located column by column inside a
narrow panel, and the trailing update is a float64 matrix product. The
product is exact as long as ``panel * (p - 1)**2 < 2**53``, which bounds
the panel width for a given prime.
"""

from __future__ import annotations

import numpy as np

DEFAULT_PRIME = 32003

_EXACT_FLOAT = 2**53


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    """Return ``p`` if it is an odd prime small enough for exact float products."""
    p = int(p)
    if p == 2 or not is_prime(p):
        raise ValueError(f"modulus {p} is not an odd prime")
    if (p - 1) ** 2 >= _EXACT_FLOAT:
        raise ValueError(f"prime {p} too large for exact float64 products")
    return p


def _exact_depth(p: int) -> int:
    """Longest inner dimension whose float64 dot products stay exact."""
    return int(max(1, (_EXACT_FLOAT - 1) // ((p - 1) ** 2) - 1))


def _panel_width(p: int) -> int:
    return min(128, _exact_depth(p))


def as_matrix(m, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Coerce ``m`` to a reduced int64 matrix."""
    a = np.asarray(m, dtype=np.int64)
    if shape is not None and a.size == 0:
        a = a.reshape(shape)
    if a.ndim == 1 and shape is not None:
        a = a.reshape(shape)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return np.mod(a, p)


def inv_mod(x: int, p: int) -> int:
    x = int(x) % p
    if x == 0:
        raise ZeroDivisionError("zero has no inverse")
    return pow(x, p - 2, p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product ``a @ b`` reduced mod ``p``, exact for any inner dimension."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    return _fmatmul(np.mod(a, p).astype(np.float64),
                    np.mod(b, p).astype(np.float64), p).astype(np.int64)


def _freduce(x: np.ndarray, p: int) -> np.ndarray:
    """In-place reduction of exact non-negative float integers below 2**53."""
    q = np.floor(x * (1.0 / p))
    q *= p
    x -= q
    # the float quotient may be off by one either way
    x[x < 0] += p
    x[x >= p] -= p
    return x


def _fmatmul(af: np.ndarray, bf: np.ndarray, p: int) -> np.ndarray:
    # float inputs already reduced to [0, p)
    width = _exact_depth(p)
    out = np.zeros((af.shape[0], bf.shape[1]), dtype=np.float64)
    for k in range(0, af.shape[1], width):
        out += af[:, k:k + width] @ bf[k:k + width]
        _freduce(out, p)
    return out


def _panel_pivots(panel: np.ndarray, p: int) -> list[tuple[int, int]]:
    """Greedy pivot rows for the columns of ``panel`` (row, col pairs)."""
    work = panel.copy()
    rows = work.shape[0]
    free = np.ones(rows, dtype=bool)
    found = []
    for col in range(work.shape[1]):
        cand = np.flatnonzero(free & (work[:, col] != 0))
        if cand.size == 0:
            continue
        r = int(cand[0])
        inv = inv_mod(work[r, col], p)
        prow = (work[r, col:] * inv) % p
        free[r] = False
        others = np.flatnonzero(free & (work[:, col] != 0))
        if others.size:
            work[others, col:] = (work[others, col:]
                                  - np.outer(work[others, col], prow)) % p
        found.append((r, col))
    return found


def rref(m, p: int = DEFAULT_PRIME) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form.

    Returns the nonzero rows of the RREF (shape ``rank x cols``) and the
    pivot column of each row. The result is canonical, independent of the
    pivot rows chosen along the way.
    """
    a = as_matrix(m, p)
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return np.zeros((0, cols), dtype=np.int64), ()
    a = a.astype(np.float64)
    width = _panel_width(p)
    is_pivot = np.zeros(rows, dtype=bool)
    pivot_of: dict[int, int] = {}
    for c0 in range(0, cols, width):
        c1 = min(cols, c0 + width)
        while True:
            live = np.flatnonzero(~is_pivot & np.any(a[:, c0:c1] != 0, axis=1))
            if live.size == 0:
                break
            # pivot columns of a subset of rows are pivot columns of the whole
            # block, so a short chunk of candidates is enough per pass
            cand = live[:2 * width]
            found = _panel_pivots(a[np.ix_(cand, np.arange(c0, c1))].astype(np.int64), p)
            sel = cand[[i for i, _ in found]]
            pc = np.array([c0 + j for _, j in found])
            lead = a[np.ix_(sel, pc)].astype(np.int64)
            newpiv = _fmatmul(_small_inverse(lead, p).astype(np.float64), a[sel, c0:], p)
            coef = a[:, pc]
            coef[sel, np.arange(len(sel))] -= 1
            coef = _freduce(p - coef, p)
            tail = a[:, c0:]
            tail += _fmatmul(coef, newpiv, p)
            _freduce(tail, p)
            is_pivot[sel] = True
            for row, col in zip(sel, pc):
                pivot_of[int(row)] = int(col)
    order = sorted(pivot_of, key=pivot_of.get)
    out = a[order].astype(np.int64)
    return out, tuple(pivot_of[r] for r in order)


def _small_inverse(m: np.ndarray, p: int) -> np.ndarray:
    k = m.shape[0]
    aug = np.concatenate([m % p, np.eye(k, dtype=np.int64)], axis=1)
    for col in range(k):
        nz = np.flatnonzero(aug[col:, col])
        if nz.size == 0:
            raise ZeroDivisionError("singular pivot block")
        piv = col + int(nz[0])
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        aug[col] = (aug[col] * inv_mod(aug[col, col], p)) % p
        f = aug[:, col].copy()
        f[col] = 0
        nzr = np.flatnonzero(f)
        if nzr.size:
            aug[nzr] = (aug[nzr] - np.outer(f[nzr], aug[col])) % p
    return aug[:, k:]


def rank(m, p: int = DEFAULT_PRIME) -> int:
    a = np.asarray(m)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def kernel_from_rref(red: np.ndarray, pivots, cols: int, p: int) -> np.ndarray:
    """Canonical right-kernel basis read off a reduced echelon form."""
    pivots = list(pivots)
    free = np.setdiff1d(np.arange(cols), np.array(pivots, dtype=np.int64))
    basis = np.zeros((free.size, cols), dtype=np.int64)
    if free.size == 0:
        return basis
    basis[np.arange(free.size), free] = 1
    if pivots:
        basis[:, pivots] = (-red[:, free].T) % p
    return basis


def kernel_basis(m, p: int = DEFAULT_PRIME, cols: int | None = None) -> np.ndarray:
    """Rows spanning the right null space ``{x : m @ x = 0}``."""
    a = np.asarray(m, dtype=np.int64)
    if a.ndim != 2:
        if cols is None:
            raise ValueError("cols required for an empty matrix")
        a = a.reshape(0, cols)
    n = a.shape[1]
    red, piv = rref(a, p)
    return kernel_from_rref(red, piv, n, p)


def left_kernel(m, p: int = DEFAULT_PRIME) -> np.ndarray:
    """Rows ``y`` with ``y @ m = 0``."""
    return kernel_basis(np.asarray(m, dtype=np.int64).T, p)


def solve(m, rhs, p: int = DEFAULT_PRIME) -> np.ndarray | None:
    """Some ``x`` with ``m @ x = rhs`` or ``None``."""
    a = as_matrix(m, p)
    b = np.mod(np.asarray(rhs, dtype=np.int64).reshape(-1), p)
    if b.size != a.shape[0]:
        raise ValueError(f"rhs has length {b.size}, matrix has {a.shape[0]} rows")
    cols = a.shape[1]
    red, piv = rref(np.concatenate([a, b[:, None]], axis=1), p)
    if piv and piv[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, c in zip(red, piv):
        x[c] = row[cols]
    return x


def row_space(m, p: int = DEFAULT_PRIME) -> np.ndarray:
    return rref(m, p)[0]


def intersection_dim(u: np.ndarray, v: np.ndarray, p: int = DEFAULT_PRIME) -> int:
    """dim(rowspace(u) ∩ rowspace(v)) via rank additivity."""
    ru, rv = rank(u, p), rank(v, p)
    if ru == 0 or rv == 0:
        return 0
    return ru + rv - rank(np.concatenate([u, v], axis=0), p)


def reduce_against(vectors: np.ndarray, red: np.ndarray, pivots, p: int) -> np.ndarray:
    """Reduce the rows of ``vectors`` modulo the span of an RREF ``red``."""
    vectors = np.asarray(vectors, dtype=np.int64)
    if len(pivots) == 0 or vectors.shape[0] == 0:
        return vectors % p
    coef = vectors[:, list(pivots)]
    return (vectors - matmul(coef, red, p)) % p
