"""Exact dense linear algebra over a FieldCtx.

Matrices are lists of rows of element codes.  Elimination is plain
Gauss-Jordan with deterministic pivoting (first nonzero entry in column
order, rows scanned top to bottom), so every result is byte-stable.
Over prime fields the elimination kernels run vectorized on int64 numpy
arrays; extension fields use the context's multiplication tables.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from wildcoh.gf import FieldCtx

Matrix = list[list[int]]
Vector = list[int]

# numpy path requires p small enough that row_update products cannot
# overflow int64: (p-1)^2 * ncols stays far below 2**63 for p <= 2**15.
_NUMPY_P_LIMIT = 1 << 15


def _use_numpy(ctx: FieldCtx) -> bool:
    return ctx.m == 1 and ctx.p <= _NUMPY_P_LIMIT


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return a == b


def is_identity(a: Matrix) -> bool:
    return a == identity(len(a))


def mat_mul(ctx: FieldCtx, a: Matrix, b: Matrix) -> Matrix:
    if len(b) != (len(a[0]) if a else 0):
        raise ValueError("matrix shape mismatch")
    if not a:
        return []
    if not b:
        return [[] for _ in a]
    if _use_numpy(ctx):
        arr = (np.array(a, dtype=np.int64) @ np.array(b, dtype=np.int64)) % ctx.p
        return arr.tolist()
    mul, add = ctx.mul, ctx.add
    bt = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = add(acc, mul(x, y))
            out_row.append(acc)
        out.append(out_row)
    return out


def mat_vec(ctx: FieldCtx, a: Matrix, v: Vector) -> Vector:
    return [row[0] for row in mat_mul(ctx, a, [[x] for x in v])]


def mat_add(ctx: FieldCtx, a: Matrix, b: Matrix) -> Matrix:
    add = ctx.add
    return [[add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(ctx: FieldCtx, a: Matrix, b: Matrix) -> Matrix:
    sub = ctx.sub
    return [[sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_pow(ctx: FieldCtx, a: Matrix, e: int) -> Matrix:
    if e < 0:
        raise ValueError("negative matrix power not supported")
    result = identity(len(a))
    base = [row[:] for row in a]
    while e:
        if e & 1:
            result = mat_mul(ctx, result, base)
        base = mat_mul(ctx, base, base)
        e >>= 1
    return result


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def _rref_numpy(ctx: FieldCtx, a: Matrix) -> tuple[Matrix, list[int]]:
    p = ctx.p
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = None
        for i in range(r, rows):
            if m[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        m[r] = (m[r] * pow(int(m[r, c]), p - 2, p)) % p
        factors = m[:, c].copy()
        factors[r] = 0
        m -= np.outer(factors, m[r])
        m %= p
        pivots.append(c)
        r += 1
    return m.tolist(), pivots


def _rref_generic(ctx: FieldCtx, a: Matrix) -> tuple[Matrix, list[int]]:
    m = [row[:] for row in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    mul, sub, inv = ctx.mul, ctx.sub, ctx.inv
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = None
        for i in range(r, rows):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        scale = inv(m[r][c])
        m[r] = [mul(scale, x) for x in m[r]]
        prow = m[r]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [sub(x, mul(f, y)) for x, y in zip(m[i], prow)]
        pivots.append(c)
        r += 1
    return m, pivots


def rref(ctx: FieldCtx, a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot column list (deterministic)."""
    if not a or not a[0]:
        return [row[:] for row in a], []
    if _use_numpy(ctx):
        return _rref_numpy(ctx, a)
    return _rref_generic(ctx, a)


def rank(ctx: FieldCtx, a: Matrix) -> int:
    return len(rref(ctx, a)[1])


def nullspace(ctx: FieldCtx, a: Matrix) -> list[Vector]:
    """Deterministic kernel basis: one vector per free column, in column order."""
    if not a:
        return []
    cols = len(a[0])
    red, pivots = rref(ctx, a)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    neg = ctx.neg
    for fc in free:
        vec = [0] * cols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = neg(red[r][fc])
        basis.append(vec)
    return basis


def inverse(ctx: FieldCtx, a: Matrix) -> Matrix:
    n = len(a)
    aug = [row[:] + ident_row for row, ident_row in zip(a, identity(n))]
    red, pivots = rref(ctx, aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


class RowEchelon:
    """Incremental row space with exact reduction, for rank-mod-subspace work.

    Rows are kept normalized (leading coefficient 1) and fully reduced
    against each other; pivot choice is the leftmost nonzero coordinate.
    """

    def __init__(self, ctx: FieldCtx, rows: Sequence[Vector] = ()):
        self.ctx = ctx
        self._rows: dict[int, Vector] = {}
        for row in rows:
            self.add(row)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Vector) -> Vector:
        """Residual of vec after reduction against the stored rows."""
        ctx = self.ctx
        mul, sub = ctx.mul, ctx.sub
        v = list(vec)
        for pc in sorted(self._rows):
            f = v[pc]
            if f:
                row = self._rows[pc]
                v = [sub(x, mul(f, y)) for x, y in zip(v, row)]
        return v

    def add(self, vec: Vector) -> Vector:
        """Reduce and, if independent, insert; returns the normalized residual."""
        ctx = self.ctx
        v = self.reduce(vec)
        pivot = next((i for i, x in enumerate(v) if x), None)
        if pivot is None:
            return v
        scale = ctx.inv(v[pivot])
        v = [ctx.mul(scale, x) for x in v]
        # keep existing rows reduced against the new one
        for pc, row in list(self._rows.items()):
            f = row[pivot]
            if f:
                self._rows[pc] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(row, v)]
        self._rows[pivot] = v
        return v

    def contains(self, vec: Vector) -> bool:
        return not any(self.reduce(vec))

    def rows(self) -> list[Vector]:
        return [self._rows[pc][:] for pc in sorted(self._rows)]

    def pivots(self) -> list[int]:
        return sorted(self._rows)
