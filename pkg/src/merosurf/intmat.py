"""Small exact integer matrix utilities: products, Smith normal form with
recorded transforms, and GF(2) solving.  Matrices are lists of lists of
ints; everything here is sized for cell complexes with a few dozen cells.
"""

from __future__ import annotations

from .errors import InternalError


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    if not B:
        return [[] for _ in A]
    n, m, k = len(A), len(B), len(B[0])
    out = [[0] * k for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for j in range(m):
            a = Ai[j]
            if a:
                Bj = B[j]
                row = out[i]
                for c in range(k):
                    row[c] += a * Bj[c]
    return out


def matvec(A, v):
    return [sum(A[i][j] * v[j] for j in range(len(v))) for i in range(len(A))]


def transpose(A):
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def smith_normal_form(M):
    """Diagonalize over Z.  Returns (S, U, Uinv, V, Vinv) with S = U*M*V,
    U, V unimodular; S diagonal (no divisibility chain is enforced)."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    S = [list(r) for r in M]
    U, Uinv = identity(rows), identity(rows)
    V, Vinv = identity(cols), identity(cols)

    def row_add(i, j, k):  # row_i += k * row_j
        for c in range(cols):
            S[i][c] += k * S[j][c]
        for c in range(rows):
            U[i][c] += k * U[j][c]
        for r in range(rows):
            Uinv[r][j] -= k * Uinv[r][i]

    def col_add(i, j, k):  # col_i += k * col_j
        for r in range(rows):
            S[r][i] += k * S[r][j]
        for r in range(cols):
            V[r][i] += k * V[r][j]
        for c in range(cols):
            Vinv[j][c] -= k * Vinv[i][c]

    def row_swap(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]
        for r in range(rows):
            Uinv[r][i], Uinv[r][j] = Uinv[r][j], Uinv[r][i]

    def col_swap(i, j):
        for r in range(rows):
            S[r][i], S[r][j] = S[r][j], S[r][i]
        for r in range(cols):
            V[r][i], V[r][j] = V[r][j], V[r][i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_neg(i):
        for c in range(cols):
            S[i][c] = -S[i][c]
        for c in range(rows):
            U[i][c] = -U[i][c]
        for r in range(rows):
            Uinv[r][i] = -Uinv[r][i]

    t = 0
    while t < rows and t < cols:
        # locate smallest nonzero entry in the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if S[i][j] != 0 and (best is None or abs(S[i][j]) < best[0]):
                    best = (abs(S[i][j]), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        if S[t][t] < 0:
            row_neg(t)
        dirty = False
        for i in range(t + 1, rows):
            if S[i][t]:
                q = S[i][t] // S[t][t]
                row_add(i, t, -q)
                if S[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if S[t][j]:
                q = S[t][j] // S[t][t]
                col_add(j, t, -q)
                if S[t][j]:
                    dirty = True
        if dirty:
            continue
        t += 1
    return S, U, Uinv, V, Vinv


def solve_gf2(A, b):
    """One solution x of A x = b over GF(2), or None.  A: list of rows."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [[A[i][j] & 1 for j in range(cols)] + [b[i] & 1] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(rows):
            if i != r and M[i][c]:
                M[i] = [x ^ y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if M[i][cols]:
            return None
    x = [0] * cols
    for i, c in enumerate(pivots):
        x[c] = M[i][cols]
    return x


def check_unimodular_product(U, Uinv):
    n = len(U)
    if matmul(U, Uinv) != identity(n):
        raise InternalError("transform bookkeeping broke in SNF")
