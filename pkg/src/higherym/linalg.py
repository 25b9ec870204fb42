"""Exact linear algebra over the rationals.

Matrices are tuples of row tuples of Fractions.  Dimensions here are tiny
(Lie algebra dims and symmetric-form spaces), so plain Gaussian elimination
with exact pivots is both fast enough and round-off free.
"""

from __future__ import annotations

from fractions import Fraction

Mat = tuple[tuple[Fraction, ...], ...]
Vec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def q(x) -> Fraction:
    """Coerce ints, strings like '-3/4' and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def mat(rows) -> Mat:
    return tuple(tuple(q(x) for x in row) for row in rows)


def zeros(r: int, c: int) -> Mat:
    return tuple(tuple(ZERO for _ in range(c)) for _ in range(r))


def eye(n: int) -> Mat:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def shape(m: Mat) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def transpose(m: Mat) -> Mat:
    r, c = shape(m)
    return tuple(tuple(m[i][j] for i in range(r)) for j in range(c))


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

def mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, m: Mat) -> Mat:
    c = q(c)
    return tuple(tuple(c * x for x in row) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ra == 0:
        return ()
    if ca == 0:
        # result is the ra x cb zero matrix; cb is unknowable when b has no rows
        return tuple(tuple(ZERO for _ in range(cb)) for _ in range(ra))
    if ca != rb:
        raise ValueError(f"shape mismatch: {shape(a)} @ {shape(b)}")
    bt = transpose(b)
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt) for row in a
    )


def mat_vec(m: Mat, v: Vec) -> Vec:
    r, c = shape(m)
    if r == 0:
        return ()
    if c != len(v):
        raise ValueError(f"shape mismatch: {shape(m)} @ len {len(v)}")
    return tuple(sum((m[i][j] * v[j] for j in range(c)), ZERO) for i in range(r))


def is_symmetric(m: Mat) -> bool:
    r, c = shape(m)
    return r == c and all(m[i][j] == m[j][i] for i in range(r) for j in range(i))


def _echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Row-reduce in place; returns (reduced rows, pivot column list)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ONE / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def nullspace(m: Mat) -> list[Vec]:
    """Basis of the right nullspace {v : m v = 0}."""
    r, c = shape(m)
    if c == 0:
        return []
    if r == 0:
        return [tuple(ONE if i == j else ZERO for j in range(c)) for i in range(c)]
    rows, pivots = _echelon([list(row) for row in m])
    free = [j for j in range(c) if j not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * c
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        basis.append(tuple(v))
    return basis


def solve(a: Mat, b: Vec) -> Vec:
    """Unique solution of a square nonsingular system a x = b."""
    n, c = shape(a)
    if n != c or n != len(b):
        raise ValueError("solve expects a square system")
    if n == 0:
        return ()
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    rows, pivots = _echelon(aug)
    if pivots != list(range(n)):
        raise ValueError("singular matrix")
    return tuple(rows[i][n] for i in range(n))


def inverse(m: Mat) -> Mat:
    n, c = shape(m)
    if n != c:
        raise ValueError("inverse expects a square matrix")
    if n == 0:
        return ()
    aug = [list(m[i]) + list(eye(n)[i]) for i in range(n)]
    rows, pivots = _echelon(aug)
    if pivots != list(range(n)):
        raise ValueError("singular matrix")
    return tuple(tuple(rows[i][n:]) for i in range(n))


def det(m: Mat) -> Fraction:
    n, c = shape(m)
    if n != c:
        raise ValueError("det expects a square matrix")
    if n == 0:
        return ONE
    rows = [list(r) for r in m]
    d = ONE
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col] != 0), None)
        if piv is None:
            return ZERO
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            d = -d
        d *= rows[col][col]
        inv = ONE / rows[col][col]
        for i in range(col + 1, n):
            if rows[i][col] != 0:
                f = rows[i][col] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return d


def is_positive_definite(m: Mat) -> bool:
    """Sylvester criterion with exact leading principal minors."""
    n, c = shape(m)
    if n != c or not is_symmetric(m):
        return False
    for k in range(1, n + 1):
        sub = tuple(tuple(m[i][j] for j in range(k)) for i in range(k))
        if det(sub) <= 0:
            return False
    return True


def lstsq_exact(a: Mat, b: Vec) -> Vec:
    """Solve the normal equations aᵀa x = aᵀb (a must have full column rank)."""
    at = transpose(a)
    return solve(mat_mul(at, a), mat_vec(at, b))
