"""Dense exact linear algebra over pluggable scalar rings.

Matrices are tuples of tuples (row-major); scalars only need +, -, *, bool,
and, where stated, exact division.  Used for representation matrices over
LaurentQ / RationalQ / CycloQ and for small polynomial-valued systems.
"""

from __future__ import annotations

__all__ = [
    "identity",
    "mat_add",
    "mat_sub",
    "mat_mul",
    "mat_vec",
    "mat_scale",
    "kron",
    "mat_inverse",
    "kernel_basis",
    "solve_exact",
]


def identity(n: int, one, zero):
    return tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )


def mat_add(a, b):
    return tuple(
        tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_sub(a, b):
    return tuple(
        tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_scale(a, c):
    return tuple(tuple(x * c for x in row) for row in a)


def mat_mul(a, b, zero):
    n, m = len(a), len(b[0])
    inner = len(b)
    bt = tuple(zip(*b))
    out = []
    for i in range(n):
        row = []
        ra = a[i]
        for j in range(m):
            cb = bt[j]
            acc = zero
            for t in range(inner):
                x = ra[t]
                if x and cb[t]:
                    acc = acc + x * cb[t]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a, v, zero):
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return tuple(out)


def kron(a, b):
    """Tensor product: index (i1,i2) -> i1*dim(b)+i2, row-major."""
    nb = len(b)
    mb = len(b[0])
    out = []
    for ra in a:
        for rb in b:
            row = []
            for x in ra:
                for y in rb:
                    row.append(x * y)
            out.append(tuple(row))
    return tuple(out)


def mat_inverse(a, zero, one, singular_msg: str = "singular matrix"):
    """Gauss-Jordan inverse over a field (entries support /)."""
    n = len(a)
    rows = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            raise ValueError(singular_msg)
        rows[col], rows[piv] = rows[piv], rows[col]
        pv = rows[col][col]
        rows[col] = [x / pv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return tuple(tuple(r[n:]) for r in rows)


def kernel_basis(a, zero, one):
    """Basis of the null space of a (rows may outnumber columns)."""
    if not a:
        return []
    m = len(a[0])
    rows = [list(r) for r in a]
    n = len(rows)
    pivots = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, n) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == n:
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * m
        v[fc] = one
        for i, pc in enumerate(pivots):
            x = rows[i][fc]
            if x:
                v[pc] = zero - x
        basis.append(tuple(v))
    return basis


def solve_exact(a, rhs, zero, one, inconsistent_msg: str = "inconsistent system"):
    """Least structure solver: unique/overdetermined exact solve of a x = rhs.

    Raises ValueError(inconsistent_msg) when no exact solution exists and
    ValueError("underdetermined system") when the solution is not unique.
    """
    n = len(a)
    m = len(a[0]) if a else 0
    rows = [list(r) + [b] for r, b in zip(a, rhs)]
    pivots = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, n) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if rows[i][m]:
            raise ValueError(inconsistent_msg)
    if len(pivots) < m:
        raise ValueError("underdetermined system")
    sol = [zero] * m
    for i, pc in enumerate(pivots):
        sol[pc] = rows[i][m]
    return tuple(sol)
