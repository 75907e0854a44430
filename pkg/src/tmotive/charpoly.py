"""Division-free determinants and characteristic vectors (Berkowitz).

Works over any commutative ring whose elements implement ``+``, ``-``, ``*``;
no divisions or zero tests are performed, so rings with zero divisors
(truncated power series) are fine.
"""

from __future__ import annotations


def berkowitz_vector(mat, one):
    """Coefficients ``[v_0, ..., v_n]`` with det(x*I - A) = sum v_i x^(n-i).

    Equivalently det(1 - T*A) = sum v_i T^i, which is the form consumed by
    the dual characteristic polynomial.  ``one`` is the ring unit.
    """
    n = len(mat)
    zero = one - one
    if n == 0:
        return [one]
    if n == 1:
        return [one, zero - mat[0][0]]
    a = mat[0][0]
    row = mat[0][1:]
    col = [mat[i][0] for i in range(1, n)]
    sub = [r[1:] for r in mat[1:]]
    # Toeplitz column: 1, -a, -(row . col), -(row . sub col), ...
    items = [one, zero - a]
    w = col
    for _ in range(n - 1):
        dot = zero
        for ri, wi in zip(row, w):
            dot = dot + ri * wi
        items.append(zero - dot)
        w = _matvec(sub, w, zero)
    prev = berkowitz_vector(sub, one)
    out = []
    for i in range(n + 1):
        acc = zero
        for j in range(max(0, i - len(items) + 1), min(i, len(prev) - 1) + 1):
            acc = acc + items[i - j] * prev[j]
        out.append(acc)
    return out


def _matvec(mat, vec, zero):
    out = []
    for r in mat:
        acc = zero
        for c, v in zip(r, vec):
            acc = acc + c * v
        out.append(acc)
    return out


def det(mat, one):
    """Exact determinant via the Berkowitz vector."""
    n = len(mat)
    v = berkowitz_vector(mat, one)
    d = v[n]
    if n % 2 == 1:
        d = (one - one) - d
    return d


def det_one_minus_t(mat, one):
    """Coefficients of det(1 - T*A) as a list indexed by T-power."""
    return berkowitz_vector(mat, one)
