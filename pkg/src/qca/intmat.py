"""Integer matrices as tuples of row tuples, plus the exact solvers built on them.

Python ints are arbitrary precision, so nothing here can overflow.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import DimensionMismatch, MalformedInput, NotSkewSymmetrizable

Matrix = tuple  # tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Validate and freeze a list of integer rows.

    ``ncols`` must be given for matrices with no rows.
    """
    out = []
    for r in rows:
        row = tuple(r)
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise MalformedInput(f"matrix entries must be integers, got {x!r}")
        out.append(row)
    if out:
        width = len(out[0])
        if any(len(r) != width for r in out):
            raise MalformedInput("ragged matrix")
        if ncols is not None and width != ncols:
            raise DimensionMismatch(f"expected {ncols} columns, got {width}")
    return tuple(out)


def shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def zeros(m: int, n: int) -> Matrix:
    return tuple((0,) * n for _ in range(m))


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A)) if A else ()


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if A and B and len(A[0]) != len(B):
        raise DimensionMismatch(f"cannot multiply {shape(A)} by {shape(B)}")
    if not A:
        return ()
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A: Matrix, x: Sequence[int]) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def scale(A: Matrix, c: int) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in A)


def add(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(A, B))


def neg(A: Matrix) -> Matrix:
    return scale(A, -1)


def vstack(*blocks: Matrix) -> Matrix:
    return tuple(row for blk in blocks for row in blk)


def direct_sum(A: Matrix, B: Matrix) -> Matrix:
    ma, na = shape(A)
    mb, nb = shape(B)
    top = tuple(row + (0,) * nb for row in A)
    bottom = tuple((0,) * na + row for row in B)
    return top + bottom


def submatrix(A: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return tuple(tuple(A[i][j] for j in cols) for i in rows)


def is_zero(A: Matrix) -> bool:
    return all(x == 0 for row in A for x in row)


def is_skew_symmetric(A: Matrix) -> bool:
    m, n = shape(A)
    if m != n:
        return False
    return all(A[i][j] == -A[j][i] for i in range(m) for j in range(i, m))


def is_diagonal(A: Matrix) -> bool:
    return all(x == 0 for i, row in enumerate(A) for j, x in enumerate(row) if i != j)


def diagonal(A: Matrix) -> tuple:
    return tuple(A[i][i] for i in range(min(shape(A))))


def diag(entries: Sequence[int]) -> Matrix:
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n))


def skew_from_upper(values: Sequence[int], m: int) -> Matrix:
    """Skew-symmetric m x m matrix from its strict upper triangle in row order."""
    M = [[0] * m for _ in range(m)]
    it = iter(values)
    for i in range(m):
        for j in range(i + 1, m):
            x = next(it)
            M[i][j] = x
            M[j][i] = -x
    return tuple(map(tuple, M))


def upper_entries(A: Matrix) -> tuple:
    m = len(A)
    return tuple(A[i][j] for i in range(m) for j in range(i + 1, m))


# ---------------------------------------------------------------- symmetrizer

def symmetrizer_components(B: Matrix) -> list[list[int]]:
    """Connected components of the graph i - j iff b_ij != 0 or b_ji != 0.

    Ordered by smallest member; members ascending.
    """
    n = len(B)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and (B[i][j] or B[j][i]):
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def skew_symmetrizer(B: Matrix) -> tuple:
    """Componentwise-minimal positive integer diagonal D with DB skew-symmetric.

    Returned as the tuple of diagonal entries. Each connected component of B
    gets entries with gcd 1; the ratio d_i/d_j = -b_ji/b_ij is propagated
    along a spanning tree and then checked on every edge.
    """
    n, c = shape(B)
    if n != c:
        raise DimensionMismatch(f"skew_symmetrizer needs a square matrix, got {n}x{c}")
    for i in range(n):
        if B[i][i]:
            raise NotSkewSymmetrizable(f"nonzero diagonal entry b_{i}{i}")
        for j in range(i + 1, n):
            a, b = B[i][j], B[j][i]
            if (a == 0) != (b == 0) or a * b > 0:
                raise NotSkewSymmetrizable(f"sign obstruction at ({i},{j})")
    d: list[Fraction | None] = [None] * n
    for comp in symmetrizer_components(B):
        root = comp[0]
        d[root] = Fraction(1)
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if B[i][j] and d[j] is None:
                    # d_i b_ij = -d_j b_ji
                    d[j] = d[i] * Fraction(B[i][j], -B[j][i])
                    stack.append(j)
        den = lcm(*(x.denominator for x in (d[i] for i in comp)))
        ints = [int(d[i] * den) for i in comp]
        g = gcd(*ints)
        for i, x in zip(comp, ints):
            d[i] = x // g
    for i in range(n):
        for j in range(n):
            if d[i] * B[i][j] != -d[j] * B[j][i]:
                raise NotSkewSymmetrizable(f"inconsistent cycle ratio through ({i},{j})")
    return tuple(int(x) for x in d)


# ---------------------------------------------------------------- nullspace

def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style HNF of the lattice spanned by ``rows`` (zero rows dropped).

    Pivots are positive, strictly increasing in column, and entries above a
    pivot lie in [0, pivot). The result depends only on the lattice.
    """
    A = [list(r) for r in rows if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    out: list[list[int]] = []
    r = 0
    for col in range(ncols):
        # rows r.. still active; eliminate in this column
        while True:
            nz = [i for i in range(r, len(A)) if A[i][col]]
            if not nz:
                break
            # smallest |pivot| first, row order breaks ties
            p = min(nz, key=lambda i: (abs(A[i][col]), i))
            A[r], A[p] = A[p], A[r]
            if A[r][col] < 0:
                A[r] = [-x for x in A[r]]
            piv = A[r][col]
            done = True
            for i in range(r + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // piv
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][col]:
                        done = False
            if done:
                break
        if r < len(A) and A[r][col]:
            piv = A[r][col]
            for i in range(r):
                q = A[i][col] // piv
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
            if r == len(A):
                break
    out = [row for row in A[:r]]
    assert all(len(row) == ncols for row in out)
    return out


def integer_nullspace(A: Matrix, ncols: int | None = None) -> list[tuple]:
    """Basis of the integer kernel lattice {x in Z^n : A x = 0}.

    The basis is the row HNF of the kernel lattice, so it is canonical:
    vectors are primitive, pivots positive, ordered by pivot column.
    ``ncols`` is needed only when A has no rows.
    """
    m = len(A)
    n = len(A[0]) if A else ncols
    if n is None:
        raise DimensionMismatch("cannot infer column count of an empty matrix")
    # Column operations on A tracked in U: A U = H. Implemented as row ops on
    # the augmented rows [A^T | I].
    aug = [list(A[i][j] for i in range(m)) + [int(j == k) for k in range(n)] for j in range(n)]
    r = 0
    for col in range(m):
        while True:
            nz = [i for i in range(r, n) if aug[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(aug[i][col]), i))
            aug[r], aug[p] = aug[p], aug[r]
            piv = aug[r][col]
            done = True
            for i in range(r + 1, n):
                if aug[i][col]:
                    q = aug[i][col] // piv
                    aug[i] = [a - q * b for a, b in zip(aug[i], aug[r])]
                    if aug[i][col]:
                        done = False
            if done:
                break
        if r < n and aug[r][col]:
            r += 1
    kernel = [row[m:] for row in aug[r:]]
    return [tuple(v) for v in hermite_normal_form(kernel)]


def rational_rank(A: Matrix) -> int:
    """Rank over Q by fraction-free elimination."""
    M = [list(map(Fraction, row)) for row in A]
    rank = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        p = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if p is None:
            continue
        M[rank], M[p] = M[p], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][col]:
                f = M[i][col] / M[rank][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank
