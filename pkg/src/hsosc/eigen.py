"""Dense symmetric eigenvalues: Householder tridiagonalization followed by
implicit-shift QL on the tridiagonal form (eigenvalues only)."""
from __future__ import annotations

import math

import numpy as np


class EigenSolverError(RuntimeError):
    pass


def tridiagonalize(a):
    """Reduce a symmetric matrix to tridiagonal form by Householder reflections.

    Returns ``(d, e)``: the diagonal and the sub-diagonal (length n-1).
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    for k in range(n - 2):
        x = a[k + 1:, k]
        sigma = math.sqrt(float(x @ x))
        if sigma == 0.0:
            continue
        alpha = -math.copysign(sigma, x[0])
        v = x.copy()
        v[0] -= alpha
        vnorm = math.sqrt(float(v @ v))
        if vnorm == 0.0:
            continue
        v /= vnorm
        sub = a[k + 1:, k + 1:]
        p = sub @ v
        w = p - (v @ p) * v
        sub -= 2.0 * (np.outer(v, w) + np.outer(w, v))
        a[k + 1, k] = a[k, k + 1] = alpha
        a[k + 2:, k] = 0.0
        a[k, k + 2:] = 0.0
    return np.diag(a).copy(), np.diag(a, -1).copy()


def tql_eigenvalues(d, e, max_iter: int = 60):
    """Eigenvalues of the symmetric tridiagonal matrix (d, e) by implicit QL."""
    d = [float(v) for v in d]
    n = len(d)
    e = [float(v) for v in e] + [0.0]
    eps = np.finfo(float).eps
    safmin = np.finfo(float).tiny
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                # second test catches blocks whose squares underflow
                if abs(e[m]) <= eps * dd or e[m] * e[m] <= safmin:
                    break
                m += 1
            if m == l:
                break
            if it == max_iter:
                raise EigenSolverError(f"QL iteration did not converge for eigenvalue {l}")
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    # underflow: deflate and retry
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    return np.sort(np.array(d))


def symmetric_eigenvalues(a):
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if a.shape[0] == 0:
        return np.empty(0)
    if a.shape[0] == 1:
        return a.ravel().copy()
    # unit max-norm keeps squared entries clear of underflow/overflow
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        return np.zeros(a.shape[0])
    return scale * tql_eigenvalues(*tridiagonalize(a / scale))


def eigen_lowest(matrix, count: int, split_parity: bool = True):
    """Lowest ``count`` eigenvalues in ascending order.

    With ``split_parity`` the even and odd index sublattices are diagonalized
    separately when the matrix does not couple them.
    """
    a = np.asarray(matrix, dtype=float)
    size = a.shape[0]
    if not 0 <= count <= size:
        raise ValueError(f"count must be in 0..{size}, got {count}")
    if split_parity and size >= 2:
        even, odd = np.arange(0, size, 2), np.arange(1, size, 2)
        if not np.any(a[np.ix_(even, odd)]):
            vals = np.concatenate([
                symmetric_eigenvalues(a[np.ix_(even, even)]),
                symmetric_eigenvalues(a[np.ix_(odd, odd)]),
            ])
            return np.sort(vals)[:count]
    return symmetric_eigenvalues(a)[:count]
