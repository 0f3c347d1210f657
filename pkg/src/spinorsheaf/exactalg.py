"""Exact rational linear algebra: matrices, matrices of linear forms,
univariate polynomials.

Every scalar is a fractions.Fraction, eliminations are fraction-free
(Bareiss), and every operation is a deterministic function of its inputs,
so identical inputs give bit-identical outputs.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd

from . import _kernels

Rat = Fraction


def rat(x) -> Fraction:
    """Coerce an int, 'a/b' string or Fraction to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) or isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot make an exact rational from {x!r}")


def rat_to_json(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rat_from_json(v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise ValueError(f"rationals must be integers or 'a/b' strings, got {v!r}")
    return rat(v)


def vec(values) -> tuple:
    return tuple(rat(v) for v in values)


ZERO = Fraction(0)
ONE = Fraction(1)


class Mat:
    """Dense exact rational matrix, row major, treated as immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match the shape")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows) -> "Mat":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return cls(len(rows), ncols, [rat(x) for r in rows for x in r])

    @classmethod
    def from_cols(cls, cols) -> "Mat":
        return cls.from_rows(list(zip(*cols))) if cols else cls(0, 0, [])

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls(rows, cols, [ZERO] * (rows * cols))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_lists(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Mat":
        return Mat(
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def __add__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Mat(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Mat(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, s) -> "Mat":
        s = rat(s)
        return Mat(self.rows, self.cols, [s * a for a in self.entries])

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        n, m, k = self.rows, other.cols, self.cols
        out = [ZERO] * (n * m)
        oe = other.entries
        for i in range(n):
            base = i * k
            obase = i * m
            for t in range(k):
                a = self.entries[base + t]
                if a:
                    rb = t * m
                    for j in range(m):
                        b = oe[rb + j]
                        if b:
                            out[obase + j] += a * b
        return Mat(n, m, out)

    def mul_vec(self, v) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        out = [ZERO] * self.rows
        for i in range(self.rows):
            base = i * self.cols
            s = ZERO
            for j, x in enumerate(v):
                if x:
                    a = self.entries[base + j]
                    if a:
                        s += a * x
            out[i] = s
        return tuple(out)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(
            " ".join(str(x) for x in self.row(i)) for i in range(self.rows)
        )
        return f"Mat({self.rows}x{self.cols}: {body})"


def _scaled_int_rows(frac_rows):
    """Clear denominators row by row; row scaling preserves rank and kernel."""
    out = []
    for row in frac_rows:
        l = 1
        for x in row:
            d = x.denominator
            if d != 1:
                l = l * d // gcd(l, d)
        out.append([x.numerator * (l // x.denominator) for x in row])
    return out


def _kernel_from_echelon(rows, pivots, ncols):
    """Kernel basis in reduced echelon-normal form: one vector per free
    column, with entry 1 there and zeros at the other free columns."""
    rank = len(pivots)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        x = [ZERO] * ncols
        x[f] = ONE
        for i in range(rank - 1, -1, -1):
            c = pivots[i]
            if c > f:
                continue
            row = rows[i]
            s = 0
            for j in range(c + 1, ncols):
                xj = x[j]
                if xj and row[j]:
                    s += row[j] * xj
            x[c] = Fraction(-s, row[c]) if s else ZERO
        basis.append(tuple(x))
    return tuple(basis)


def mat_rank_kernel(m: Mat):
    """Rank and a deterministic kernel basis of ``m``."""
    rows = _scaled_int_rows(m.row_lists())
    rank, pivots = _kernels.echelon(rows, m.cols)
    return rank, _kernel_from_echelon(rows, pivots, m.cols)


def mat_rank(m: Mat) -> int:
    rows = _scaled_int_rows(m.row_lists())
    rank, _ = _kernels.echelon(rows, m.cols)
    return rank


def mat_solve(a: Mat, target):
    """Solve a x = target.  Returns (particular, kernel_basis) or None if
    the system is inconsistent."""
    if len(target) != a.rows:
        raise ValueError("target length mismatch")
    aug = [list(a.row(i)) + [rat(target[i])] for i in range(a.rows)]
    rows = _scaled_int_rows(aug)
    rank, pivots = _kernels.echelon(rows, a.cols + 1)
    if pivots and pivots[-1] == a.cols:
        return None
    x = [ZERO] * a.cols
    for i in range(rank - 1, -1, -1):
        c = pivots[i]
        row = rows[i]
        s = row[a.cols]
        for j in range(c + 1, a.cols):
            xj = x[j]
            if xj and row[j]:
                s -= row[j] * xj
        x[c] = Fraction(s, row[c]) if s else ZERO
    kernel = _kernel_from_echelon(rows, pivots, a.cols)
    return tuple(x), kernel


def mat_invertible(m: Mat):
    """Inverse of ``m`` or None if singular.  Non-square input is rejected."""
    if m.rows != m.cols:
        raise ValueError("mat_invertible requires a square matrix")
    n = m.rows
    ident = Mat.identity(n)
    aug = [list(m.row(i)) + list(ident.row(i)) for i in range(n)]
    rows = _scaled_int_rows(aug)
    rank, pivots = _kernels.echelon(rows, 2 * n)
    if pivots[:n] != list(range(n)):
        return None
    cols = []
    for k in range(n):
        x = [ZERO] * n
        for i in range(n - 1, -1, -1):
            row = rows[i]
            s = row[n + k]
            for j in range(i + 1, n):
                xj = x[j]
                if xj and row[j]:
                    s -= row[j] * xj
            x[i] = Fraction(s, row[i]) if s else ZERO
        cols.append(x)
    return Mat.from_cols(cols)


def rref_rows(vectors, ncols):
    """Reduced row echelon basis of the span of ``vectors``.

    Rows are normalized to pivot 1 and fully back-eliminated, so the output
    is the canonical basis of the span.  Returns (rows, pivots).
    """
    rows = _scaled_int_rows([list(v) for v in vectors])
    rank, pivots = _kernels.echelon(rows, ncols)
    out = [[Fraction(x) for x in rows[i]] for i in range(rank)]
    for i in range(rank):
        p = out[i][pivots[i]]
        if p != 1:
            out[i] = [x / p for x in out[i]]
    for i in range(rank - 1, -1, -1):
        c = pivots[i]
        for k in range(i):
            f = out[k][c]
            if f:
                rowi = out[i]
                rowk = out[k]
                for j in range(c, ncols):
                    if rowi[j]:
                        rowk[j] -= f * rowi[j]
    return [tuple(r) for r in out], pivots


class SpanSolver:
    """Express vectors in the span of a fixed RREF basis."""

    def __init__(self, rref, pivots):
        self.rref = rref
        self.pivots = pivots

    def coords(self, v):
        """Coordinates of v in the basis, or None if v is outside the span."""
        v = list(v)
        coords = []
        for row, c in zip(self.rref, self.pivots):
            a = v[c]
            coords.append(a)
            if a:
                for j, x in enumerate(row):
                    if x:
                        v[j] -= a * x
        if any(v):
            return None
        return tuple(coords)


class LinMat:
    """Matrix of linear forms M(x) = sum_i x_i * coeff[i], all shapes equal."""

    __slots__ = ("n", "rows", "cols", "coeff")

    def __init__(self, n: int, coeff):
        coeff = tuple(coeff)
        if len(coeff) != n:
            raise ValueError("need one coefficient matrix per coordinate")
        if not coeff:
            raise ValueError("ambient dimension must be positive")
        r, c = coeff[0].rows, coeff[0].cols
        for m in coeff:
            if (m.rows, m.cols) != (r, c):
                raise ValueError("coefficient matrices must share a shape")
        self.n = n
        self.rows = r
        self.cols = c
        self.coeff = coeff

    def evaluate(self, v) -> Mat:
        if len(v) != self.n:
            raise ValueError("vector length mismatch")
        out = Mat.zeros(self.rows, self.cols)
        for x, m in zip(v, self.coeff):
            if x:
                out = out + m.scale(x)
        return out

    def transpose(self) -> "LinMat":
        return LinMat(self.n, [m.transpose() for m in self.coeff])

    def block_diag(self, other: "LinMat") -> "LinMat":
        if self.n != other.n:
            raise ValueError("ambient dimension mismatch")
        coeff = []
        for a, b in zip(self.coeff, other.coeff):
            rows = a.rows + b.rows
            cols = a.cols + b.cols
            m = [[ZERO] * cols for _ in range(rows)]
            for i in range(a.rows):
                for j in range(a.cols):
                    m[i][j] = a[i, j]
            for i in range(b.rows):
                for j in range(b.cols):
                    m[a.rows + i][a.cols + j] = b[i, j]
            coeff.append(Mat.from_rows(m))
        return LinMat(self.n, coeff)

    def __eq__(self, other):
        return (
            isinstance(other, LinMat)
            and self.n == other.n
            and self.coeff == other.coeff
        )

    def __hash__(self):
        return hash((self.n, self.coeff))

    def entry_str(self, i: int, j: int) -> str:
        terms = []
        for k in range(self.n):
            a = self.coeff[k][i, j]
            if not a:
                continue
            var = f"x{k}"
            if a == 1:
                s = var
            elif a == -1:
                s = f"-{var}"
            else:
                s = f"{a}*{var}"
            if terms and not s.startswith("-"):
                terms.append("+" + s)
            else:
                terms.append(s)
        return "".join(terms) if terms else "0"

    def __repr__(self):
        body = "; ".join(
            " ".join(self.entry_str(i, j) for j in range(self.cols))
            for i in range(self.rows)
        )
        return f"LinMat({self.rows}x{self.cols} in {self.n} vars: {body})"


class UniPoly:
    """Univariate polynomial with exact rational coefficients, ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [rat(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def __call__(self, t) -> Fraction:
        acc = ZERO
        t = rat(t)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            [self.coeff(i) + other.coeff(i) for i in range(n)]
        )

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            [self.coeff(i) - other.coeff(i) for i in range(n)]
        )

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if not self.coeffs or not other.coeffs:
            return UniPoly([])
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return UniPoly(out)

    def scale(self, s) -> "UniPoly":
        s = rat(s)
        return UniPoly([s * c for c in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "UniPoly(0)"
        parts = [f"{c}*t^{i}" for i, c in enumerate(self.coeffs) if c]
        return "UniPoly(" + " + ".join(parts) + ")"


def binomial_upoly(offset: int, k: int) -> UniPoly:
    """The polynomial C(t + offset, k) in t."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    p = UniPoly([1])
    for i in range(k):
        p = p * UniPoly([offset - i, 1])
    return p.scale(Fraction(1, factorial(k)))


@lru_cache(maxsize=None)
def monomials(n: int, d: int):
    """Exponent tuples of the degree-d monomials in n variables, in
    lexicographically descending order (x0 powers first)."""
    if d < 0:
        return ()
    if n == 1:
        return ((d,),)
    out = []
    for a in range(d, -1, -1):
        for rest in monomials(n - 1, d - a):
            out.append((a,) + rest)
    return tuple(out)


def monomial_count(n: int, d: int) -> int:
    if d < 0:
        return 0
    num = 1
    for i in range(1, n):
        num = num * (d + i)
    return num // factorial(n - 1)


def monomial_multiplication_matrix(lm: LinMat, t: int) -> Mat:
    """Matrix of multiplication by ``lm`` from (degree t-1 forms)^cols to
    (degree t forms)^rows, monomials ordered lexicographically."""
    if t <= 0:
        raise ValueError("t must be at least 1")
    n = lm.n
    dom = monomials(n, t - 1)
    codom = monomials(n, t)
    idx = {m: i for i, m in enumerate(codom)}
    R, C = lm.rows, lm.cols
    nrows = len(codom) * R
    ncols = len(dom) * C
    out = [ZERO] * (nrows * ncols)
    for mi, mu in enumerate(dom):
        for k in range(n):
            nu = mu[:k] + (mu[k] + 1,) + mu[k + 1 :]
            ri = idx[nu]
            coeff = lm.coeff[k]
            for r in range(R):
                for j in range(C):
                    v = coeff[r, j]
                    if v:
                        out[(ri * R + r) * ncols + mi * C + j] += v
    return Mat(nrows, ncols, out)


_SPARSE_CUTOFF = 250_000


def mult_map_rank(lm: LinMat, t: int) -> int:
    """Rank of monomial_multiplication_matrix(lm, t); t <= 0 gives an empty
    domain and rank 0.  Large instances avoid materializing the dense
    matrix but compute the identical rank."""
    if t <= 0:
        return 0
    n = lm.n
    dom = monomials(n, t - 1)
    codom = monomials(n, t)
    R, C = lm.rows, lm.cols
    nrows = len(codom) * R
    ncols = len(dom) * C
    if nrows * ncols <= _SPARSE_CUTOFF:
        return mat_rank(monomial_multiplication_matrix(lm, t))
    idx = {m: i for i, m in enumerate(codom)}
    rows = [dict() for _ in range(nrows)]
    for mi, mu in enumerate(dom):
        for k in range(n):
            nu = mu[:k] + (mu[k] + 1,) + mu[k + 1 :]
            ri = idx[nu]
            coeff = lm.coeff[k]
            for r in range(R):
                base = rows[ri * R + r]
                for j in range(C):
                    v = coeff[r, j]
                    if v:
                        col = mi * C + j
                        base[col] = base.get(col, ZERO) + v
    int_rows = []
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        if not row:
            continue
        l = 1
        for v in row.values():
            d = v.denominator
            if d != 1:
                l = l * d // gcd(l, d)
        int_rows.append({c: v.numerator * (l // v.denominator) for c, v in row.items()})
    return _kernels.sparse_rank(int_rows)
