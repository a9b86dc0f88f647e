"""Dense exact linear algebra over a :class:`~homalg.fields.Field`.

Pivoting is deterministic (first nonzero entry in column order), so every
result is reproducible bit for bit.
"""

from __future__ import annotations

from .fields import QQ, Field, FieldMismatchError
from .kernels import rref_rows


class Matrix:
    """Immutable dense matrix with entries in a single field."""

    __slots__ = ("field", "ncols", "nrows", "rows")

    def __init__(self, rows, field: Field = QQ, ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = tuple(tuple(field.coerce(x) for x in r) for r in rows)

    @classmethod
    def zeros(cls, nrows, ncols, field=QQ):
        return cls([[0] * ncols for _ in range(nrows)], field, ncols)

    @classmethod
    def identity(cls, n, field=QQ):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field, n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.shape, self.rows))

    def __repr__(self):
        return f"Matrix({[list(r) for r in self.rows]!r}, {self.field})"

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self.field.check_same(other.field)
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
            norm = self.field.norm
            return Matrix(
                [[norm(sum(a * b for a, b in zip(r, c) if a and b)) for c in cols] for r in self.rows],
                self.field,
                other.ncols,
            )
        return NotImplemented

    def apply(self, v):
        """Matrix times column vector (any sequence)."""
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        norm = self.field.norm
        return tuple(norm(sum(a * b for a, b in zip(r, v) if a and b)) for r in self.rows)

    def transpose(self):
        return Matrix([list(c) for c in zip(*self.rows)] if self.nrows else [], self.field, self.nrows)

    def submatrix(self, rows, cols):
        return Matrix([[self.rows[i][j] for j in cols] for i in rows], self.field, len(cols))


def rref(m: Matrix):
    """Reduced row echelon form and pivot columns of ``m``."""
    red, pivots = rref_rows(m.rows, m.ncols, m.field)
    return Matrix(red, m.field, m.ncols), pivots


def rank(m: Matrix) -> int:
    return len(rref_rows(m.rows, m.ncols, m.field)[1])


def kernel_from_rref(red_rows, pivots, ncols):
    """Null space basis from an rref; one vector per free column."""
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for k, pc in enumerate(pivots):
            x = red_rows[k][f]
            if x:
                v[pc] = -x
        basis.append(v)
    return basis


def kernel_basis(m: Matrix):
    """Basis of the right null space ``{v : m v = 0}`` as tuples."""
    red, pivots = rref_rows(m.rows, m.ncols, m.field)
    norm = m.field.norm
    return [tuple(norm(x) for x in v) for v in kernel_from_rref(red, pivots, m.ncols)]


def det(m: Matrix):
    """Determinant by Gaussian elimination over the field."""
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    field = m.field
    a = [list(r) for r in m.rows]
    n = m.nrows
    result = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        p = a[c][c]
        result = field.norm(result * p)
        inv = field.inv(p)
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                f = f * inv
                a[i] = [field.norm(x - f * y) for x, y in zip(a[i], a[c])]
    return field.norm(result)


def solve(m: Matrix, b):
    """Return one ``x`` with ``m x = b``, or ``None`` when inconsistent."""
    return LinearSolver(m.rows, m.ncols, m.field).solve(b)


class LinearSolver:
    """Reusable solver for ``A x = b`` with a fixed coefficient matrix.

    ``A`` is given by its rows (``nrows`` x ``ncols``).  The echelon form is
    computed once together with the row transform, so each solve costs one
    matrix-vector product.
    """

    def __init__(self, rows, ncols: int, field: Field):
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        aug = [list(r) + [1 if i == j else 0 for j in range(self.nrows)] for i, r in enumerate(rows)]
        red, pivots = rref_rows(aug, ncols + self.nrows, field, limit=ncols)
        self.rank = len(pivots)
        self.pivots = pivots
        self.reduced = [r[:ncols] for r in red[: self.rank]]
        # T with T A = R; rows past the rank annihilate the column space
        self.transform = [r[ncols:] for r in red]

    def solve(self, b):
        if len(b) != self.nrows:
            raise ValueError("right-hand side has wrong length")
        norm = self.field.norm
        c = [norm(sum(t * x for t, x in zip(row, b) if t and x)) for row in self.transform]
        if any(c[self.rank:]):
            return None
        x = [0] * self.ncols
        for k, pc in enumerate(self.pivots):
            x[pc] = c[k]
        return x

    def kernel(self):
        norm = self.field.norm
        return [[norm(x) for x in v] for v in kernel_from_rref(self.reduced, self.pivots, self.ncols)]


def check_fields(*matrices):
    fields = {m.field for m in matrices}
    if len(fields) > 1:
        raise FieldMismatchError(f"mixed fields: {sorted(map(str, fields))}")


def inverse(m: Matrix) -> Matrix:
    """Exact inverse of a square matrix; ``ValueError`` if singular."""
    if m.nrows != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    n = m.nrows
    solver = LinearSolver(m.rows, n, m.field)
    if solver.rank < n:
        raise ValueError("matrix is singular")
    cols = [solver.solve([1 if i == j else 0 for i in range(n)]) for j in range(n)]
    return Matrix([[cols[j][i] for j in range(n)] for i in range(n)], m.field, ncols=n)
