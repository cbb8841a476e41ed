"""Dense exact linear algebra over the rationals.

Matrices are lists of row lists of Fraction.  Everything here is
deterministic: row echelon pivots are chosen left to right, kernel bases are
parametrized by unit free variables in index order, so repeated runs give
byte-identical output.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def frac_matrix(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def transpose(mat):
    if not mat:
        return []
    return [list(col) for col in zip(*mat)]


def matmul(a, b):
    if not a or not b:
        return [[] for _ in a]
    cols = len(b[0])
    inner = len(b)
    out = []
    for row in a:
        out.append([sum((row[k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(cols)])
    return out


def mat_vec(a, v):
    return [sum((row[k] * v[k] for k in range(len(v))), Fraction(0)) for row in a]


def rref(mat) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form together with the pivot column list."""
    a = [[Fraction(x) for x in row] for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(mat) -> int:
    return len(rref(mat)[1])


def nullspace(mat) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    if not mat or not mat[0]:
        n = len(mat[0]) if mat else 0
        return [[Fraction(1 if i == j else 0) for i in range(n)] for j in range(n)]
    red, pivots = rref(mat)
    cols = len(mat[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def solve(mat, rhs) -> list[Fraction] | None:
    """One exact solution of mat·x = rhs, or None when inconsistent."""
    if not mat:
        return []
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(mat, rhs)]
    red, pivots = rref(aug)
    cols = len(mat[0])
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, p in enumerate(pivots):
        x[p] = red[r][cols]
    return x


def inverse(mat) -> list[list[Fraction]] | None:
    n = len(mat)
    aug = [[Fraction(x) for x in row] + identity(n)[i] for i, row in enumerate(mat)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in red]


def primitive_integer_vector(vec) -> list[int]:
    """Scale a rational vector to coprime integers with positive first support."""
    fracs = [Fraction(x) for x in vec]
    denom = 1
    for q in fracs:
        denom = denom * q.denominator // gcd(denom, q.denominator)
    ints = [int(q * denom) for q in fracs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g:
        ints = [v // g for v in ints]
    lead = next((v for v in ints if v), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return ints
