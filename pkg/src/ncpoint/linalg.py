"""Dense and sparse exact linear algebra over Q and Q(t).

Everything here is exact: a kernel vector multiplies back to literal
zero, never to "small".  The dense :class:`Matrix` API serves the small
systems of the point-propagation and Koszul checks; :class:`RowReducer`
is the sparse incremental RREF used for per-degree ideal spans, where
rows are dictionaries column -> scalar.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import (
    Scalar,
    denominator_poly,
    numerator_poly,
    poly_degree,
    poly_rational_roots,
    scalar_to_str,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Matrix:
    """Dense row-major matrix of exact scalars."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows, ncols=None):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ValueError("ragged matrix")
        else:
            self.ncols = 0 if ncols is None else ncols

    @classmethod
    def identity(cls, n):
        return cls([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)])

    def transpose(self) -> "Matrix":
        return Matrix([[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)], ncols=self.nrows)

    def mul_vec(self, v):
        return [sum((row[j] * v[j] for j in range(self.ncols)), _ZERO)
                for row in self.rows]

    def mul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in matrix product")
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc: Scalar = _ZERO
                for l in range(self.ncols):
                    a = self.rows[i][l]
                    if a:
                        b = other.rows[l][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out, ncols=other.ncols)

    def is_zero(self) -> bool:
        return all(not e for row in self.rows for e in row)

    def __repr__(self):
        body = "; ".join(
            " ".join(scalar_to_str(e) for e in row) for row in self.rows)
        return f"Matrix[{self.nrows}x{self.ncols}: {body}]"


def rref(m: Matrix):
    """Reduced row echelon form.

    Returns (rank, pivot columns in increasing order, reduced Matrix).
    """
    rows = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, nrows):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = rows[r][c]
        rows[r] = [e / inv for e in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return r, pivots, Matrix(rows, ncols=ncols)


def rank(m: Matrix) -> int:
    return rref(m)[0]


def kernel_basis(m: Matrix):
    """Basis of the right kernel {v : m v = 0}; len = ncols - rank."""
    r, pivots, red = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [_ZERO] * m.ncols
        v[f] = _ONE
        for i, p in enumerate(pivots):
            v[p] = -red.rows[i][f]
        basis.append(v)
    return basis


def solve_affine(m: Matrix, b):
    """Solve m x = b exactly.

    Returns (particular, kernel) where particular is None when the
    system is inconsistent; kernel is always the full kernel basis.
    """
    if len(b) != m.nrows:
        raise ValueError("right-hand side length mismatch")
    aug = Matrix([row + [b[i]] for i, row in enumerate(m.rows)],
                 ncols=m.ncols + 1)
    r, pivots, red = rref(aug)
    if m.ncols in pivots:
        return None, kernel_basis(m)
    x = [_ZERO] * m.ncols
    for i, p in enumerate(pivots):
        x[p] = red.rows[i][m.ncols]
    return x, kernel_basis(m)


def kernel_basis_tracking_pivots(m: Matrix):
    """Kernel basis plus the rational t-values where the elimination path
    could change.

    Over Q(t) a pivot is invertible as a rational function, so the RREF
    is the generic one; at a rational root of any pivot's numerator (or
    a pole of any pivot) the specialized matrix may have lower rank and
    a strictly larger kernel.  Those finitely many candidate values are
    returned so callers can re-run the computation numerically there.
    """
    special = set()
    rows = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, nrows):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        piv = rows[r][c]
        for poly in (numerator_poly(piv), denominator_poly(piv)):
            if poly_degree(poly) > 0:
                special.update(poly_rational_roots(poly))
        rows[r] = [e / piv for e in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [_ZERO] * ncols
        v[f] = _ONE
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        basis.append(v)
    return basis, sorted(special)


class RowReducer:
    """Incremental reduced row echelon form over sparse rows.

    Rows are dicts mapping column index -> nonzero scalar.  Columns are
    eliminated in increasing index order, so callers choose the pivot
    preference by their column numbering.  After every insertion the
    stored rows form an RREF: each pivot column appears in exactly one
    row, with coefficient 1.
    """

    __slots__ = ("pivot_rows",)

    def __init__(self):
        self.pivot_rows = {}  # pivot column -> row dict (row[pivot] == 1)

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, row: dict) -> dict:
        """Residue of row modulo the current row space (row is not mutated)."""
        out = dict(row)
        for c in sorted(out):
            coeff = out.get(c)
            if not coeff:
                out.pop(c, None)
                continue
            piv = self.pivot_rows.get(c)
            if piv is None:
                continue
            for cc, vv in piv.items():
                new = out.get(cc, _ZERO) - coeff * vv
                if new:
                    out[cc] = new
                else:
                    out.pop(cc, None)
        return {c: v for c, v in out.items() if v}

    def insert(self, row: dict):
        """Reduce and store; returns the new pivot column or None if dependent."""
        res = self.reduce(row)
        if not res:
            return None
        p = min(res)
        inv = res[p]
        res = {c: v / inv for c, v in res.items()}
        for other in self.pivot_rows.values():
            f = other.get(p)
            if f:
                for cc, vv in res.items():
                    new = other.get(cc, _ZERO) - f * vv
                    if new:
                        other[cc] = new
                    else:
                        other.pop(cc, None)
        self.pivot_rows[p] = res
        return p

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def canonical(self):
        """Hashable canonical form of the row space (for span comparison)."""
        return tuple(
            (p, tuple(sorted(self.pivot_rows[p].items())))
            for p in sorted(self.pivot_rows)
        )


def span_equal(rows_a, rows_b) -> bool:
    """Do two lists of sparse rows span the same subspace?"""
    ra, rb = RowReducer(), RowReducer()
    for r in rows_a:
        ra.insert(r)
    for r in rows_b:
        rb.insert(r)
    return ra.canonical() == rb.canonical()
