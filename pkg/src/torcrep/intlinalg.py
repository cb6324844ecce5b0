"""Exact integer matrices with Hermite and Smith normal forms.

Everything here runs on Python's arbitrary-precision integers (and
``fractions.Fraction`` for the rational solvers); no floating point is
ever involved, so results are bit-exact and deterministic.

Conventions:

* ``hermite_normal_form(m)`` returns ``(h, u)`` with ``h = m * u`` and
  ``u`` unimodular.  The form is column-style: pivots walk down the rows,
  pivot entries are positive, entries to the left of a pivot in its row
  are reduced into ``[0, pivot)``, and zero columns are pushed to the
  right.  For a nonsingular square input ``h`` is lower triangular.
* ``smith_normal_form(m)`` returns ``(s, p, q)`` with ``s = p * m * q``,
  ``p``/``q`` unimodular and ``s`` diagonal with ``s[i] | s[i+1]``.
"""

from __future__ import annotations

from fractions import Fraction


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: ``(g, x, y)`` with ``g = a*x + b*y`` and ``g >= 0``."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


class IntMatrix:
    """Immutable integer matrix stored row-major as tuples."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("rows have unequal lengths")
        self.rows = len(rows)
        self.cols = len(rows[0])
        self.data = rows

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, columns) -> "IntMatrix":
        columns = [tuple(c) for c in columns]
        return cls([[c[i] for c in columns] for i in range(len(columns[0]))])

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.data == other.data

    def __hash__(self) -> int:
        return hash(self.data)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"IntMatrix[{body}]"

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.data)))

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        cols = list(zip(*other.data))
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.data]
        )

    def mul_vec(self, v) -> tuple[int, ...]:
        v = tuple(v)
        if len(v) != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.data)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = [list(row) for row in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and abs(self.det()) == 1

    def inverse_unimodular(self) -> "IntMatrix":
        """Exact inverse; the matrix must be unimodular."""
        if not self.is_unimodular():
            raise ValueError("matrix is not unimodular")
        n = self.rows
        cols = []
        for j in range(n):
            e = tuple(int(i == j) for i in range(n))
            sol = solve_rational(self, e)
            cols.append(tuple(int(x) for x in sol))
        return IntMatrix.from_columns(cols)


def hermite_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form ``(h, u)`` with ``h = m * u``."""
    nrows, ncols = m.rows, m.cols
    h = [list(c) for c in m.columns()]          # column-major working copies
    u = [[int(i == j) for i in range(ncols)] for j in range(ncols)]

    def negate(j):
        h[j] = [-x for x in h[j]]
        u[j] = [-x for x in u[j]]

    def addmul(dst, src, f):
        h[dst] = [a + f * b for a, b in zip(h[dst], h[src])]
        u[dst] = [a + f * b for a, b in zip(u[dst], u[src])]

    pc = 0
    for i in range(nrows):
        if pc >= ncols:
            break
        j0 = next((j for j in range(pc, ncols) if h[j][i] != 0), None)
        if j0 is None:
            continue
        if j0 != pc:
            h[pc], h[j0] = h[j0], h[pc]
            u[pc], u[j0] = u[j0], u[pc]
        for j in range(pc + 1, ncols):
            if h[j][i] == 0:
                continue
            a, b = h[pc][i], h[j][i]
            if b % a == 0:
                addmul(j, pc, -(b // a))
            else:
                g, x, y = xgcd(a, b)
                hp, hj = h[pc], h[j]
                up, uj = u[pc], u[j]
                h[pc] = [x * s + y * t for s, t in zip(hp, hj)]
                h[j] = [-(b // g) * s + (a // g) * t for s, t in zip(hp, hj)]
                u[pc] = [x * s + y * t for s, t in zip(up, uj)]
                u[j] = [-(b // g) * s + (a // g) * t for s, t in zip(up, uj)]
        if h[pc][i] < 0:
            negate(pc)
        piv = h[pc][i]
        for j in range(pc):
            f = h[j][i] // piv
            if f:
                addmul(j, pc, -f)
        pc += 1
    return IntMatrix.from_columns(h), IntMatrix.from_columns(u)


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``(s, p, q)`` with ``s = p * m * q``."""
    nrows, ncols = m.rows, m.cols
    s = [list(row) for row in m.data]
    p = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    q = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def combine_rows(i, j, a, b, c, d):
        # rows (i, j) <- (a*ri + b*rj, c*ri + d*rj); requires ad - bc = ±1
        for mat in (s, p):
            ri, rj = mat[i], mat[j]
            mat[i] = [a * x + b * y for x, y in zip(ri, rj)]
            mat[j] = [c * x + d * y for x, y in zip(ri, rj)]

    def combine_cols(i, j, a, b, c, d):
        for mat in (s, q):
            for row in mat:
                row[i], row[j] = a * row[i] + b * row[j], c * row[i] + d * row[j]

    t = 0
    bound = min(nrows, ncols)
    while t < bound:
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = s[i][j]
                if v and (pivot is None or abs(v) < abs(s[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            combine_rows(t, pi, 0, 1, 1, 0)
        if pj != t:
            combine_cols(t, pj, 0, 1, 1, 0)
        while True:
            for i in range(t + 1, nrows):
                a, b = s[t][t], s[i][t]
                if b == 0:
                    continue
                if b % a == 0:
                    combine_rows(t, i, 1, 0, -(b // a), 1)
                else:
                    g, x, y = xgcd(a, b)
                    combine_rows(t, i, x, y, -(b // g), a // g)
            for j in range(t + 1, ncols):
                a, b = s[t][t], s[t][j]
                if b == 0:
                    continue
                if b % a == 0:
                    combine_cols(t, j, 1, 0, -(b // a), 1)
                else:
                    g, x, y = xgcd(a, b)
                    combine_cols(t, j, x, y, -(b // g), a // g)
            col_clear = all(s[i][t] == 0 for i in range(t + 1, nrows))
            row_clear = all(s[t][j] == 0 for j in range(t + 1, ncols))
            if not (col_clear and row_clear):
                continue
            a = s[t][t]
            bad = next(
                (
                    i
                    for i in range(t + 1, nrows)
                    if any(s[i][j] % a for j in range(t + 1, ncols))
                ),
                None,
            )
            if bad is None:
                break
            combine_rows(t, bad, 1, 1, 0, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            p[t] = [-x for x in p[t]]
        t += 1
    return IntMatrix(s), IntMatrix(p), IntMatrix(q)


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith normal form."""
    s, _, _ = smith_normal_form(m)
    diag = [s[i][i] for i in range(min(s.rows, s.cols))]
    return tuple(d for d in diag if d != 0)


def kernel_basis(m: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the integer kernel ``{x : m*x = 0}``."""
    h, u = hermite_normal_form(m)
    out = []
    for j in range(h.cols):
        if all(h[i][j] == 0 for i in range(h.rows)):
            out.append(u.column(j))
    return out


def solve_integer(m: IntMatrix, b) -> tuple[int, ...] | None:
    """One integer solution of ``m*x = b``, or None when there is none."""
    b = tuple(int(x) for x in b)
    if len(b) != m.rows:
        raise ValueError("dimension mismatch")
    h, u = hermite_normal_form(m)
    res = list(b)
    y = [0] * h.cols
    for j in range(h.cols):
        i = next((i for i in range(h.rows) if h[i][j] != 0), None)
        if i is None:
            continue
        if res[i] % h[i][j] != 0:
            return None
        f = res[i] // h[i][j]
        if f:
            for k in range(h.rows):
                res[k] -= f * h[k][j]
        y[j] = f
    if any(res):
        return None
    return u.mul_vec(y)


def solve_rational(m: IntMatrix, b) -> tuple[Fraction, ...] | None:
    """Unique rational solution of ``m*x = b``.

    Returns None when the system is inconsistent.  Requires the columns of
    ``m`` to be linearly independent (raises ValueError otherwise), which
    is the only case this package needs.
    """
    b = [Fraction(int(x)) for x in b]
    if len(b) != m.rows:
        raise ValueError("dimension mismatch")
    a = [[Fraction(x) for x in row] for row in m.data]
    ncols = m.cols
    pivots = []
    r = 0
    for j in range(ncols):
        i = next((i for i in range(r, m.rows) if a[i][j] != 0), None)
        if i is None:
            raise ValueError("columns are linearly dependent")
        a[r], a[i] = a[i], a[r]
        b[r], b[i] = b[i], b[r]
        inv = 1 / a[r][j]
        a[r] = [x * inv for x in a[r]]
        b[r] = b[r] * inv
        for k in range(m.rows):
            if k != r and a[k][j] != 0:
                f = a[k][j]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
                b[k] = b[k] - f * b[r]
        pivots.append(j)
        r += 1
    if any(b[i] != 0 for i in range(r, m.rows)):
        return None
    return tuple(b[i] for i in range(ncols))


def rank(m: IntMatrix) -> int:
    """Rank over Q, by fraction-free elimination."""
    a = [list(row) for row in m.data]
    nrows, ncols = m.rows, m.cols
    r = 0
    for j in range(ncols):
        i = next((i for i in range(r, nrows) if a[i][j] != 0), None)
        if i is None:
            continue
        a[r], a[i] = a[i], a[r]
        for k in range(r + 1, nrows):
            if a[k][j] != 0:
                piv, val = a[r][j], a[k][j]
                a[k] = [piv * x - val * y for x, y in zip(a[k], a[r])]
        r += 1
        if r == nrows:
            break
    return r
