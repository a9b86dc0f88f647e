"""Integer polynomials in one variable ``t`` and fraction-free determinants."""

from __future__ import annotations

from itertools import permutations


class IntPolynomial:
    """Polynomial with arbitrary-precision integer coefficients.

    ``coeffs[i]`` is the coefficient of ``t**i``; trailing zeros are stripped
    so the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def t(cls):
        return cls((0, 1))

    @classmethod
    def coerce(cls, x):
        return x if isinstance(x, IntPolynomial) else cls(x)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial(other)
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = IntPolynomial.coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial([-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-IntPolynomial.coerce(other))

    def __rsub__(self, other):
        return IntPolynomial.coerce(other) - self

    def __mul__(self, other):
        other = IntPolynomial.coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = IntPolynomial(1)
        for _ in range(n):
            result = result * self
        return result

    def exact_div(self, other):
        """Quotient of an exact division in Z[t]; raises if not exact."""
        other = IntPolynomial.coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.coeffs[-1]
        q = [0] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            if c % lead:
                raise ArithmeticError("division is not exact over the integers")
            f = c // lead
            q[k - db] = f
            for i, y in enumerate(other.coeffs):
                rem[k - db + i] -= f * y
        if any(rem):
            raise ArithmeticError("division leaves a remainder")
        return IntPolynomial(q)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"


def det_int_poly(grid) -> IntPolynomial:
    """Determinant of a square grid of integer polynomials (Bareiss)."""
    n = len(grid)
    if any(len(row) != n for row in grid):
        raise ValueError("determinant needs a square grid")
    if n == 0:
        return IntPolynomial(1)
    a = [[IntPolynomial.coerce(x) for x in row] for row in grid]
    sign = 1
    prev = IntPolynomial(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return IntPolynomial()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def det_leibniz(grid) -> IntPolynomial:
    """Permutation-expansion determinant; an independent check for small n."""
    n = len(grid)
    total = IntPolynomial()
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = IntPolynomial(1)
        for i, j in enumerate(perm):
            term = term * IntPolynomial.coerce(grid[i][j])
        total = total - term if inversions % 2 else total + term
    return total
