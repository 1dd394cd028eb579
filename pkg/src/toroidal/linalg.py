"""Exact sparse linear algebra over the rationals.

Vectors are plain dicts mapping hashable coordinate keys to ``Fraction``
values with no stored zeros.  Everything here is exact; there is no
pivoting strategy beyond "first available key", which keeps results
deterministic for deterministically built inputs.
"""

from fractions import Fraction


def clean(vec):
    return {k: v for k, v in vec.items() if v}


def axpy(target, coeff, vec):
    """In-place ``target += coeff * vec``, dropping cancelled entries."""
    if not coeff:
        return target
    for k, v in vec.items():
        s = target.get(k, 0) + coeff * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)
    return target


def scale(vec, coeff):
    if not coeff:
        return {}
    return {k: coeff * v for k, v in vec.items()}


class Echelon:
    """Incrementally maintained reduced row echelon basis of a span.

    Each stored row remembers which combination of the vectors passed to
    :meth:`add` produced it, so :meth:`coordinates` can express any vector
    of the span in terms of the accepted generators.
    """

    def __init__(self):
        self._rows = {}  # pivot key -> (row, combination of accepted ids)
        self.accepted = []

    def __len__(self):
        return len(self._rows)

    @property
    def rank(self):
        return len(self._rows)

    def _reduce(self, vec):
        residual = dict(vec)
        combo = {}
        for p, c in [(p, vec[p]) for p in vec if p in self._rows]:
            row, rcombo = self._rows[p]
            axpy(residual, -c, row)
            axpy(combo, -c, rcombo)
        return residual, combo

    def reduce(self, vec):
        return self._reduce(vec)[0]

    def contains(self, vec):
        return not self._reduce(vec)[0]

    def add(self, vec, label=None):
        """Add ``vec``; return True iff it enlarged the span."""
        residual, combo = self._reduce(vec)
        if not residual:
            return False
        ident = len(self.accepted) if label is None else label
        self.accepted.append(ident)
        combo[ident] = combo.get(ident, 0) + 1
        pivot = next(iter(residual))
        inv = 1 / Fraction(residual[pivot])
        row = scale(residual, inv)
        combo = scale(combo, inv)
        for q, (qrow, qcombo) in self._rows.items():
            c = qrow.get(pivot)
            if c:
                axpy(qrow, -c, row)
                axpy(qcombo, -c, combo)
        self._rows[pivot] = (row, combo)
        return True

    def coordinates(self, vec):
        """Coefficients of ``vec`` on the accepted generators.

        Raises ``ValueError`` when ``vec`` is outside the span.
        """
        coords = {}
        residual = dict(vec)
        for p, c in [(p, vec[p]) for p in vec if p in self._rows]:
            row, rcombo = self._rows[p]
            axpy(residual, -c, row)
            axpy(coords, c, rcombo)
        if residual:
            raise ValueError("vector is not in the span")
        return coords

    def basis(self):
        return [row for row, _ in self._rows.values()]


def rank(vectors):
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def column_kernel(columns):
    """Basis of ``{x : sum_j x_j * columns[j] == 0}`` as dicts index -> coeff."""
    ech = Echelon()
    kernel = []
    for j, col in enumerate(columns):
        residual, combo = ech._reduce(col)
        if residual:
            ech.add(col, label=j)
        else:
            # residual = col + sum combo_i columns_i = 0
            rel = dict(combo)
            rel[j] = Fraction(1)
            kernel.append(clean(rel))
    return kernel


def matrix_rank(matrix):
    """Rank of a dense matrix given as a list of rows."""
    return rank([{j: Fraction(x) for j, x in enumerate(row) if x} for row in matrix])


def nullspace(matrix, ncols=None):
    """Right kernel of a dense row-list matrix, returned as dense vectors."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    columns = [
        {i: Fraction(row[j]) for i, row in enumerate(matrix) if row[j]}
        for j in range(ncols)
    ]
    out = []
    for rel in column_kernel(columns):
        out.append([rel.get(j, Fraction(0)) for j in range(ncols)])
    return out


def matmul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = [[Fraction(0)] * p for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(m):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(p):
                    if bk[j]:
                        oi[j] += x * bk[j]
    return out


def matsub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matadd(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matscale(a, c):
    return [[c * x for x in row] for row in a]


def commutator(a, b):
    return matsub(matmul(a, b), matmul(b, a))


def zeros(n, m=None):
    m = n if m is None else m
    return [[Fraction(0)] * m for _ in range(n)]


def identity(n):
    out = zeros(n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def is_zero_matrix(a):
    return all(not x for row in a for x in row)


def mat_vec(a, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def integer_inverse(a):
    """Inverse of a square integer matrix with determinant +-1, as ints."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = [row[n:] for row in aug]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


def determinant(a):
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det
