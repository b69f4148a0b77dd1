"""Square matrices over the ring backends, with exact linear solving.

Dimensions stay small (n <= 4 in practice), so determinants use cofactor
expansion and inverses the adjugate; both are exact over any backend.
Linear systems are solved by Gauss-Jordan elimination with unit pivots,
the right discipline over Z/p^N.
"""

from __future__ import annotations

from .errors import (
    InconsistentSystemError,
    InputError,
    NonUnitError,
    ShapeError,
    SingularPivotError,
)
from .rings import ARITHMETIC
from .serialize import elem_from_json, elem_to_json


class SquareMatrix:
    """Immutable n x n matrix of ring elements."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring, rows):
        self.ring = ring
        self.n = len(rows)
        self.rows = tuple(tuple(r) for r in rows)
        for r in self.rows:
            if len(r) != self.n:
                raise ShapeError("matrix rows must all have length n")

    @classmethod
    def from_rows(cls, ring, rows):
        conv = [
            [ring.from_int(e) if isinstance(e, int) else e for e in row]
            for row in rows
        ]
        return cls(ring, conv)

    @classmethod
    def identity(cls, ring, n):
        return cls.from_rows(
            ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @classmethod
    def zero(cls, ring, n):
        return cls.from_rows(ring, [[0] * n for _ in range(n)])

    @classmethod
    def diagonal(cls, ring, entries):
        n = len(entries)
        z = ring.zero
        return cls(
            ring,
            [[entries[i] if i == j else z for j in range(n)] for i in range(n)],
        )

    @classmethod
    def permutation(cls, ring, sigma):
        """Permutation matrix M with M[i][sigma[i]] = 1."""
        n = len(sigma)
        if sorted(sigma) != list(range(n)):
            raise ShapeError(f"not a permutation: {sigma}")
        return cls.from_rows(
            ring, [[1 if j == sigma[i] else 0 for j in range(n)] for i in range(n)]
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self):
        return f"SquareMatrix({[[repr(e) for e in r] for r in self.rows]})"

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix) or other.n != self.n:
            return NotImplemented
        return all(
            self.rows[i][j] == other.rows[i][j]
            for i in range(self.n)
            for j in range(self.n)
        )

    __hash__ = None

    def map(self, fn):
        return SquareMatrix(self.ring, [[fn(e) for e in r] for r in self.rows])

    def min_prec(self):
        return min(e.prec for r in self.rows for e in r)

    def reduce_prec(self, prec):
        return self.map(lambda e: e.at_prec(min(prec, e.prec)))

    def __add__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return SquareMatrix(
            self.ring,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return SquareMatrix(
            self.ring,
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def __neg__(self):
        return self.map(lambda e: -e)

    def __mul__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        n = self.n
        cols = list(zip(*other.rows))
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = None
                for a, b in zip(self.rows[i], cols[j]):
                    t = a * b
                    acc = t if acc is None else acc + t
                row.append(acc)
            out.append(row)
        return SquareMatrix(self.ring, out)

    def scale(self, c):
        if isinstance(c, int):
            c = self.ring.from_int(c)
        return self.map(lambda e: c * e)

    def transpose(self):
        return SquareMatrix(self.ring, list(zip(*self.rows)))

    def trace(self):
        acc = self.rows[0][0]
        for i in range(1, self.n):
            acc = acc + self.rows[i][i]
        return acc

    def det(self):
        return _det(self.ring, [list(r) for r in self.rows])

    def is_unit(self):
        return self.det().is_unit()

    def invert(self):
        d = self.det()
        if not d.is_unit():
            raise NonUnitError(d, "matrix determinant is not a unit")
        dinv = d.invert()
        n = self.n
        if n == 1:
            return SquareMatrix(self.ring, [[dinv]])
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = [
                    [self.rows[r][c] for c in range(n) if c != i]
                    for r in range(n)
                    if r != j
                ]
                cof = _det(self.ring, minor)
                if (i + j) % 2:
                    cof = -cof
                row.append(cof * dinv)
            rows.append(row)
        return SquareMatrix(self.ring, rows)

    def block(self, r0, r1, c0, c1):
        return SquareMatrix(
            self.ring, [list(r[c0:c1]) for r in self.rows[r0:r1]]
        )

    def is_permutation_matrix(self):
        one, zero = self.ring.one, self.ring.zero
        for r in self.rows:
            if sum(1 for e in r if e == one) != 1:
                return False
            if any(not (e == one or e == zero) for e in r):
                return False
        for c in zip(*self.rows):
            if sum(1 for e in c if e == one) != 1:
                return False
        return True

    def to_json(self):
        return {"n": self.n, "rows": [[elem_to_json(e) for e in r] for r in self.rows]}

    @classmethod
    def from_json(cls, ring, obj):
        rows = [[elem_from_json(ring, e) for e in r] for r in obj["rows"]]
        if len(rows) != obj.get("n", len(rows)):
            raise InputError("matrix row count disagrees with n")
        return cls(ring, rows)


def _det(ring, rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = None
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(ring, minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


# ---------------------------------------------------------------------------
# sampling


def random_gl(ring, n, rng):
    """Uniform entries, resampled until the determinant is a unit."""
    while True:
        m = SquareMatrix(
            ring, [[ring.random_element(rng) for _ in range(n)] for _ in range(n)]
        )
        if m.det().is_unit():
            return m


def random_sl(ring, n, rng):
    """GL sample with the first row scaled by det^{-1}."""
    g = random_gl(ring, n, rng)
    dinv = g.det().invert()
    rows = [list(r) for r in g.rows]
    rows[0] = [dinv * e for e in rows[0]]
    return SquareMatrix(ring, rows)


def random_constant_gl(ring, n, rng):
    """Invertible matrix with delta-constant entries."""
    while True:
        if ring.kind == ARITHMETIC:
            entries = [
                [ring.teichmueller(rng.randrange(ring.q) if ring.m == 1
                                   else [rng.randrange(ring.p) for _ in range(ring.m)])
                 for _ in range(n)]
                for _ in range(n)
            ]
        else:
            entries = [
                [ring.from_rational(rng.randint(-3, 3)) for _ in range(n)]
                for _ in range(n)
            ]
        m = SquareMatrix(ring, entries)
        if m.det().is_unit():
            return m


# ---------------------------------------------------------------------------
# linear solving


def solve_linear(ring, rows, rhs):
    """Solve A x = b exactly; requires unit pivots.

    Raises SingularPivotError when some needed column has no unit pivot
    and InconsistentSystemError when eliminated rows leave a nonzero
    right-hand side.
    """
    m = len(rows)
    if m == 0:
        return []
    k = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivot_of_col = {}
    prow = 0
    for col in range(k):
        sel = None
        for r in range(prow, m):
            if aug[r][col].is_unit():
                sel = r
                break
        if sel is None:
            if any(not aug[r][col].is_zero() for r in range(prow, m)):
                best = min(
                    aug[r][col].valuation()
                    for r in range(prow, m)
                    if not aug[r][col].is_zero()
                )
                raise SingularPivotError(col, best)
            continue
        aug[prow], aug[sel] = aug[sel], aug[prow]
        inv = aug[prow][col].invert()
        aug[prow] = [inv * e for e in aug[prow]]
        for r in range(m):
            if r != prow and not aug[r][col].is_zero():
                c = aug[r][col]
                aug[r] = [e - c * pe for e, pe in zip(aug[r], aug[prow])]
        pivot_of_col[col] = prow
        prow += 1
        if prow == m:
            break
    for r in range(prow, m):
        if not aug[r][k].is_zero():
            raise InconsistentSystemError(
                f"residual {aug[r][k]!r} in eliminated row {r}"
            )
    missing = [c for c in range(k) if c not in pivot_of_col]
    if missing:
        raise SingularPivotError(missing[0], None)
    return [aug[pivot_of_col[c]][k] for c in range(k)]
