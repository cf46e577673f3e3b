"""Lattice vectors and exact integer linear algebra.

Vectors live either in Z^n or in the quotient N = Z^n / Z*(1,...,1); a
quotient vector is stored as the full-length representative canonicalized
to last coordinate 0.  The quotient embeds in Z^(n-1) by dropping that
coordinate, which is how the matrix routines below see it.

Matrix routines (Smith normal form, Bareiss determinants, rational rank,
integer kernel bases) all work on plain sequences of integer rows with
arbitrary-precision arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class LatticeVector:
    __slots__ = ("coords", "quotient")

    def __init__(self, coords, quotient=False):
        coords = tuple(int(c) for c in coords)
        if quotient:
            if len(coords) < 2:
                raise ValueError("quotient vectors need length >= 2")
            last = coords[-1]
            if last:
                coords = tuple(c - last for c in coords)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "quotient", quotient)

    def __setattr__(self, name, value):
        raise AttributeError("LatticeVector is immutable")

    @classmethod
    def e_subset(cls, n, mask):
        """Image of sum(e_i for i in S) in Z^n / Z*(1,..,1), S given as bitmask."""
        if mask <= 0 or mask >= (1 << n) - 1:
            raise ValueError("subset must be nonempty and proper")
        return cls(((mask >> i) & 1 for i in range(n)), quotient=True)

    def reduced(self):
        """Coordinates in a plain Z^d basis (drops the redundant coordinate)."""
        return self.coords[:-1] if self.quotient else self.coords

    @property
    def dim(self):
        return len(self.coords) - (1 if self.quotient else 0)

    def _check(self, other):
        if not isinstance(other, LatticeVector):
            raise TypeError("expected LatticeVector")
        if other.quotient != self.quotient or len(other.coords) != len(self.coords):
            raise ValueError("mixed lattice types")

    def __add__(self, other):
        self._check(other)
        return LatticeVector(
            (a + b for a, b in zip(self.coords, other.coords)), self.quotient
        )

    def __sub__(self, other):
        self._check(other)
        return LatticeVector(
            (a - b for a, b in zip(self.coords, other.coords)), self.quotient
        )

    def __neg__(self):
        return LatticeVector((-a for a in self.coords), self.quotient)

    def __rmul__(self, k):
        return LatticeVector((k * a for a in self.coords), self.quotient)

    def dot(self, other):
        """Full-coordinate pairing; well defined on the quotient when the
        functional's coordinates sum to zero."""
        coords = other.coords if isinstance(other, LatticeVector) else tuple(other)
        return sum(a * b for a, b in zip(self.coords, coords))

    def is_zero(self):
        return not any(self.coords)

    def is_primitive(self):
        red = self.reduced()
        g = 0
        for c in red:
            g = gcd(g, c)
        return g == 1

    def primitive(self):
        red = self.reduced()
        g = 0
        for c in red:
            g = gcd(g, c)
        if g <= 1:
            return self
        if self.quotient:
            return LatticeVector(tuple(c // g for c in red) + (0,), True)
        return LatticeVector((c // g for c in red))

    def __eq__(self, other):
        return (
            isinstance(other, LatticeVector)
            and self.quotient == other.quotient
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.coords, self.quotient))

    def __repr__(self):
        tag = " mod (1,..,1)" if self.quotient else ""
        return f"LatticeVector({list(self.coords)}{tag})"


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple

    @classmethod
    def from_rows(cls, rows):
        rows = [tuple(int(x) for x in r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), ncols, tuple(rows))

    def row_list(self):
        return [list(r) for r in self.entries]


def _as_rows(m):
    if isinstance(m, IntegerMatrix):
        return m.row_list()
    return [list(int(x) for x in r) for r in m]


def _snf_core(rows, track_v=False):
    """Reduce to Smith normal form; returns (diagonal, rank, V or None).

    V records the column operations, so when A*V is formed the columns
    matching zero diagonal entries span the integer kernel of A.
    """
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if track_v else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if v is not None:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        ai, aj = a[src], a[dst]
        for k in range(n):
            aj[k] += c * ai[k]

    def add_col(src, dst, c):
        for row in a:
            row[dst] += c * row[src]
        if v is not None:
            for row in v:
                row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        # locate smallest nonzero entry in the working submatrix
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            restart = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        restart = True
                        break
            if restart:
                continue
            if all(a[i][t] == 0 for i in range(t + 1, m)) and all(
                a[t][j] == 0 for j in range(t + 1, n)
            ):
                break
        # enforce divisibility of the remaining block by the pivot
        piv_val = a[t][t]
        fixed = True
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % piv_val:
                    add_row(i, t, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1
    diag = [abs(a[i][i]) for i in range(min(m, n))]
    rank = sum(1 for d in diag if d)
    diag = diag[:rank] + [0] * (min(m, n) - rank)
    return diag, rank, v


def smith_normal_form(m):
    """Invariant factors d_1 | d_2 | ... (nonzero ones) and the rank."""
    diag, rank, _ = _snf_core(_as_rows(m))
    return [d for d in diag if d], rank


def kernel_basis(rows):
    """Z-basis of the integer kernel {x : A x = 0} of A given by rows."""
    rows = _as_rows(rows)
    if not rows:
        raise ValueError("kernel_basis needs the ambient dimension; pass [[0]*d]")
    n = len(rows[0])
    diag, rank, v = _snf_core(rows, track_v=True)
    return [tuple(v[i][j] for i in range(n)) for j in range(rank, n)]


def rank_of(rows):
    """Rank over Q via fraction-free Gaussian elimination."""
    a = [list(r) for r in _as_rows(rows)]
    m = len(a)
    n = len(a[0]) if m else 0
    rank = 0
    col = 0
    while rank < m and col < n:
        piv = next((i for i in range(rank, m) if a[i][col]), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pr = a[rank]
        for i in range(rank + 1, m):
            ri = a[i]
            if ri[col]:
                f, p = ri[col], pr[col]
                for k in range(col, n):
                    ri[k] = ri[k] * p - pr[k] * f
                g = 0
                for k in range(col, n):
                    g = gcd(g, ri[k])
                if g > 1:
                    for k in range(col, n):
                        ri[k] //= g
        rank += 1
        col += 1
    return rank


def det_bareiss(rows):
    """Exact determinant of a square integer matrix."""
    a = [list(r) for r in _as_rows(rows)]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * akk - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = akk
    return sign * a[n - 1][n - 1] if n else 1


def rational_solve_membership(v, spanning):
    """Is v in the rational span of the given vectors?

    Quotient vectors are compared modulo the all-ones line (their reduced
    coordinates already account for it).
    """
    if spanning:
        for w in spanning:
            if (w.quotient, len(w.coords)) != (v.quotient, len(v.coords)):
                raise ValueError("mixed lattice types in membership test")
    rows = [list(w.reduced()) for w in spanning]
    if v.is_zero():
        return True
    if not rows:
        return False
    return rank_of(rows) == rank_of(rows + [list(v.reduced())])
