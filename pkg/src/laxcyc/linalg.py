"""Dense exact linear algebra over a field given by duck-typed scalars.

Scalars must support +, -, *, /, == 0 comparison. Works for Fraction and
Cyclotomic (and mixtures: Fraction coerces into Cyclotomic on contact).
"""

from __future__ import annotations

from fractions import Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


def mat_copy(m):
    return [list(row) for row in m]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = _F0
            for t in range(k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def identity(n, one=_F1, zero=_F0):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def rref(mat):
    """Reduced row echelon form. Returns (rref_matrix, pivot_columns)."""
    m = mat_copy(mat)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if not m[i][c] == 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(rows):
            if i != r and not m[i][c] == 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(mat) -> int:
    if not mat or not mat[0]:
        return 0
    _, pivots = rref(mat)
    return len(pivots)


def kernel_basis(mat):
    """Basis of the right null space {v : mat v = 0} as a list of vectors."""
    if not mat:
        return []
    cols = len(mat[0])
    red, pivots = rref(mat)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [_F0] * cols
        v[fc] = _F1
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(mat, rhs):
    """One solution of mat x = rhs, or None if inconsistent."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    aug = [list(mat[i]) + [rhs[i]] for i in range(rows)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [_F0] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return x


def det(mat):
    """Determinant by fraction-free-ish Gaussian elimination (field scalars)."""
    n = len(mat)
    m = mat_copy(mat)
    sign = 1
    acc = _F1
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if not m[i][c] == 0:
                pivot = i
                break
        if pivot is None:
            return _F0 * acc
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        pv = m[c][c]
        acc = acc * pv
        for i in range(c + 1, n):
            if not m[i][c] == 0:
                f = m[i][c] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return acc if sign > 0 else -acc


def inverse(mat):
    """Matrix inverse; raises ValueError if singular."""
    n = len(mat)
    aug = [list(mat[i]) + [_F1 if i == j else _F0 for j in range(n)] for i in range(n)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]
