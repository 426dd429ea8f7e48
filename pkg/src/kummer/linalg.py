"""Row reduction, rank and kernels over the fields in :mod:`kummer.fields`."""

from __future__ import annotations

import numpy as np


def _is_complex(field) -> bool:
    return not getattr(field, "exact", False)


def _svd_rank(rows, rtol: float) -> tuple[int, np.ndarray, np.ndarray]:
    m = np.asarray(rows, dtype=complex)
    if m.size == 0:
        return 0, np.zeros(0), np.zeros((0, 0))
    _, s, vh = np.linalg.svd(m)
    scale = s[0] if s.size and s[0] > 0 else 1.0
    rank = int(np.sum(s > rtol * scale))
    return rank, s, vh


def row_reduce(rows, field):
    """Reduced row echelon form over an exact field.

    Returns ``(rref_rows, pivot_columns)``.
    """
    m = [[field(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not field.is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field, rtol: float = 1e-9) -> int:
    if _is_complex(field):
        return _svd_rank(rows, rtol)[0]
    return len(row_reduce(rows, field)[1])


def nullspace(rows, field, rtol: float = 1e-9) -> list[list]:
    """Basis of ``{v : rows @ v = 0}``."""
    if _is_complex(field):
        m = np.asarray(rows, dtype=complex)
        ncols = m.shape[1]
        r, _, vh = _svd_rank(m, rtol)
        return [list(v) for v in vh[r:].conj()] if r < ncols else []
    red, pivots = row_reduce(rows, field)
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(columns, target, field, rtol: float = 1e-9):
    """Coefficients ``c`` with ``sum c_j columns[j] = target``, or ``None``.

    Complex inputs are solved by least squares; a solution is accepted only if
    its residual is below ``rtol`` relative to ``|target|``.
    """
    if _is_complex(field):
        a = np.asarray(columns, dtype=complex).T
        b = np.asarray(target, dtype=complex)
        c, *_ = np.linalg.lstsq(a, b, rcond=None)
        res = np.linalg.norm(a @ c - b)
        scale = max(np.linalg.norm(b), np.abs(a).max(initial=0.0), 1e-300)
        return list(c) if res <= rtol * scale else None
    n = len(columns)
    aug = [[columns[j][i] for j in range(n)] + [target[i]] for i in range(len(target))]
    red, pivots = row_reduce(aug, field)
    if n in pivots:
        return None
    c = [field.zero] * n
    for row, pc in zip(red, pivots):
        c[pc] = row[n]
    return c


def det(m, field):
    """Determinant by elimination (exact fields) or numpy (complex)."""
    if _is_complex(field):
        return complex(np.linalg.det(np.asarray(m, dtype=complex)))
    a = [[field(x) for x in r] for r in m]
    n = len(a)
    d = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if not field.is_zero(a[i][c])), None)
        if piv is None:
            return field.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d = d * a[c][c]
        inv = field.one / a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] * inv
            if not field.is_zero(f):
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d
