"""Pure-Python elimination kernels (fallback for the compiled ``_ckernels``).

Both kernels take a list of rows and return ``(rows, pivots)`` where the
rows (all of them, zero rows last) are in reduced row echelon form.  Pivots
are searched only among the first ``limit`` columns; row operations still
act on every column, which lets callers carry a transform block along.
"""

from fractions import Fraction


def rref_q(rows, ncols, limit=-1):
    if limit < 0:
        limit = ncols
    rows = [list(r) for r in rows]
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(limit):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        a = prow[c]
        if a != 1:
            if a == -1:
                inv = -1
            elif type(a) is int:
                inv = Fraction(1, a)
            else:
                inv = 1 / a
            for j in range(c, ncols):
                x = prow[j]
                if x:
                    x = x * inv
                    if type(x) is Fraction and x.denominator == 1:
                        x = x.numerator
                    prow[j] = x
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            for j in nz:
                x = row[j] - f * prow[j]
                if type(x) is Fraction and x.denominator == 1:
                    x = x.numerator
                row[j] = x
        pivots.append(c)
        r += 1
    return rows, pivots


def rref_p(rows, ncols, p, limit=-1):
    if limit < 0:
        limit = ncols
    rows = [[x % p for x in r] for r in rows]
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(limit):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        a = prow[c]
        if a != 1:
            inv = pow(a, -1, p)
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] * inv % p
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            for j in nz:
                row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        r += 1
    return rows, pivots
