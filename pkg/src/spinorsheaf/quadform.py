"""Quadratic and bilinear form bookkeeping.

Convention: q(v) = b(v, v), so the Gram matrix stores b and the polynomial
q = x0*x3 encodes the off-diagonal entry 1/2.  The radical K is the kernel
of the Gram matrix; an isotropic subspace has b identically zero on it.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import PreconditionError, SchemaError, StandardizationUnavailable
from .exactalg import (
    Mat,
    SpanSolver,
    ZERO,
    mat_rank,
    mat_rank_kernel,
    mat_solve,
    rat,
    rref_rows,
    vec,
)


class QuadraticSpace:
    """A rational vector space with a symmetric bilinear form of rank >= 2."""

    __slots__ = ("n", "gram", "_rank", "_radical", "_clifford")

    def __init__(self, gram: Mat):
        if gram.rows != gram.cols:
            raise SchemaError("gram matrix must be square")
        if gram != gram.transpose():
            raise SchemaError("gram matrix must be symmetric")
        self.n = gram.rows
        self.gram = gram
        self._rank = mat_rank(gram)
        if self._rank < 2:
            raise SchemaError("quadratic form must have rank at least 2")
        self._radical = None
        self._clifford = None

    @property
    def rank(self) -> int:
        return self._rank

    def b(self, v, w) -> Fraction:
        if len(v) != self.n or len(w) != self.n:
            raise PreconditionError("vector length mismatch")
        gw = self.gram.mul_vec(w)
        s = ZERO
        for a, c in zip(v, gw):
            if a and c:
                s += a * c
        return s

    def q(self, v) -> Fraction:
        return self.b(v, v)

    def basis_vector(self, i: int) -> tuple:
        return tuple(Fraction(1) if j == i else ZERO for j in range(self.n))

    def __eq__(self, other):
        return isinstance(other, QuadraticSpace) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return f"QuadraticSpace(n={self.n}, rank={self._rank})"


class Subspace:
    """A subspace given by linearly independent column vectors."""

    __slots__ = ("ambient", "basis", "_rref", "_solver")

    def __init__(self, ambient: QuadraticSpace, basis):
        basis = tuple(vec(v) for v in basis)
        for v in basis:
            if len(v) != ambient.n:
                raise SchemaError("basis vector length does not match ambient")
        rows, pivots = rref_rows(basis, ambient.n) if basis else ([], [])
        if len(rows) != len(basis):
            raise SchemaError("subspace basis vectors must be independent")
        self.ambient = ambient
        self.basis = basis
        self._rref = (tuple(rows), tuple(pivots))
        self._solver = SpanSolver(rows, list(pivots))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def rref_basis(self):
        return self._rref[0]

    def contains(self, v) -> bool:
        return self._solver.coords(vec(v)) is not None

    def same_span(self, other: "Subspace") -> bool:
        return self._rref[0] == other._rref[0]

    def __repr__(self):
        return f"Subspace(dim={self.dim} of n={self.ambient.n})"


def evaluate(space: QuadraticSpace, v, w=None) -> Fraction:
    """b(v, w); with w omitted, q(v) = b(v, v)."""
    v = vec(v)
    if w is None:
        return space.q(v)
    return space.b(v, vec(w))


def radical_basis(space: QuadraticSpace) -> Subspace:
    """The kernel K of the form; dim K = n - rank(q)."""
    if space._radical is None:
        _, kernel = mat_rank_kernel(space.gram)
        space._radical = Subspace(space, kernel)
    return space._radical


def check_isotropic(space: QuadraticSpace, w: Subspace) -> bool:
    """True iff b vanishes on all pairs of basis vectors of w."""
    if w.ambient is not space and w.ambient != space:
        raise PreconditionError("subspace belongs to a different space")
    for i, vi in enumerate(w.basis):
        for vj in w.basis[i:]:
            if space.b(vi, vj) != 0:
                return False
    return True


def sub_intersection(a: Subspace, b: Subspace) -> Subspace:
    """Intersection of two subspaces of the same ambient space."""
    if a.ambient != b.ambient:
        raise PreconditionError("ambient mismatch")
    if a.dim == 0 or b.dim == 0:
        return Subspace(a.ambient, [])
    cols = list(a.basis) + list(b.basis)
    m = Mat.from_cols(cols)
    _, kernel = mat_rank_kernel(m)
    vectors = []
    for k in kernel:
        v = [ZERO] * a.ambient.n
        for coeff, bas in zip(k[: a.dim], a.basis):
            if coeff:
                for i, x in enumerate(bas):
                    v[i] += coeff * x
        vectors.append(tuple(v))
    rows, _ = rref_rows(vectors, a.ambient.n) if vectors else ([], [])
    return Subspace(a.ambient, rows)


def sub_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient != b.ambient:
        raise PreconditionError("ambient mismatch")
    rows, _ = rref_rows(list(a.basis) + list(b.basis), a.ambient.n)
    return Subspace(a.ambient, rows)


class QuotientSpace:
    """V / modded with a chosen section; requires modded inside the radical
    so the form descends."""

    __slots__ = ("source", "modded", "section", "projection", "space")

    def __init__(self, source, modded, section, projection, space):
        self.source = source
        self.modded = modded
        self.section = section
        self.projection = projection
        self.space = space

    @property
    def induced_gram(self) -> Mat:
        return self.space.gram

    def project(self, v) -> tuple:
        return self.projection.mul_vec(vec(v))

    def lift(self, v) -> tuple:
        return self.section.mul_vec(vec(v))


def quotient_space(space: QuadraticSpace, modded: Subspace) -> QuotientSpace:
    """Form V/modded. The section picks the standard coordinates not pivoted
    by modded, so projection . section = identity."""
    rad = radical_basis(space)
    for v in modded.basis:
        if not rad.contains(v):
            raise PreconditionError("modded subspace must lie in the radical")
    d = modded.dim
    n = space.n
    _, pivots = rref_rows(modded.basis, n) if modded.basis else ([], [])
    pivot_set = set(pivots)
    free_positions = [i for i in range(n) if i not in pivot_set]
    section_cols = [space.basis_vector(i) for i in free_positions]
    basis_change = Mat.from_cols(list(modded.basis) + section_cols)
    inv = _invert_or_die(basis_change)
    projection = Mat.from_rows([inv.row(d + i) for i in range(n - d)])
    section = Mat.from_cols(section_cols)
    induced = section.transpose() @ space.gram @ section
    quotient = QuadraticSpace(induced)
    if quotient.rank != space.rank:
        raise PreconditionError("induced form lost rank; modded not radical")
    return QuotientSpace(space, modded, section, projection, quotient)


def _invert_or_die(m: Mat) -> Mat:
    from .exactalg import mat_invertible

    inv = mat_invertible(m)
    if inv is None:
        raise PreconditionError("expected an invertible change of basis")
    return inv


class StdProfile:
    """Positions of the normal-form blocks after standardization."""

    __slots__ = (
        "n",
        "rank",
        "k",
        "pi_dim",
        "diag_index",
        "diag_value",
        "a_positions",
        "b_positions",
        "radical_positions",
        "w_radical_count",
    )

    def __init__(self, n, rank, k, pi_dim, diag_index, diag_value,
                 a_positions, b_positions, radical_positions, w_radical_count):
        self.n = n
        self.rank = rank
        self.k = k
        self.pi_dim = pi_dim
        self.diag_index = diag_index
        self.diag_value = diag_value
        self.a_positions = tuple(a_positions)
        self.b_positions = tuple(b_positions)
        self.radical_positions = tuple(radical_positions)
        self.w_radical_count = w_radical_count

    @property
    def w_positions(self):
        return self.b_positions[: self.pi_dim] + self.radical_positions[: self.w_radical_count]

    def normal_gram(self) -> Mat:
        half = Fraction(1, 2)
        g = [[ZERO] * self.n for _ in range(self.n)]
        for a, b in zip(self.a_positions, self.b_positions):
            g[a][b] = half
            g[b][a] = half
        if self.diag_index is not None:
            g[self.diag_index][self.diag_index] = self.diag_value
        return Mat.from_rows(g)


class Standardization:
    """Result of standardize(): new basis, change of basis and profile."""

    __slots__ = ("source", "w", "new_basis", "change", "inverse", "space_std",
                 "w_std", "profile")

    def __init__(self, source, w, new_basis, change, inverse, space_std, w_std, profile):
        self.source = source
        self.w = w
        self.new_basis = new_basis
        self.change = change
        self.inverse = inverse
        self.space_std = space_std
        self.w_std = w_std
        self.profile = profile

    def to_new_coords(self, v) -> tuple:
        return self.inverse.mul_vec(vec(v))


def _rational_sqrt(x: Fraction):
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _solve_partner(space, constraints, rhs):
    rows = [space.gram.mul_vec(c) for c in constraints]
    sol = mat_solve(Mat.from_rows(rows), rhs)
    if sol is None:
        raise StandardizationUnavailable("no dual partner solves the pairing system")
    return sol[0]


def _isotropic_in(space, cols):
    """Deterministic search for an isotropic, non-radical vector in the span
    of cols (with the restricted form).  Returns the vector or None."""
    m = len(cols)
    sub_gram = Mat.from_rows(
        [[space.b(cols[i], cols[j]) for j in range(m)] for i in range(m)]
    )

    def non_radical(coords):
        return not all(x == 0 for x in sub_gram.mul_vec(coords))

    def embed(coords):
        v = [ZERO] * space.n
        for c, col in zip(coords, cols):
            if c:
                for i, x in enumerate(col):
                    v[i] += c * x
        return tuple(v)

    for i in range(m):
        coords = tuple(Fraction(1) if t == i else ZERO for t in range(m))
        if sub_gram[i, i] == 0 and non_radical(coords):
            return embed(coords)
    for i in range(m):
        for j in range(i + 1, m):
            qa = sub_gram[i, i]
            qb = sub_gram[j, j]
            bb = 2 * sub_gram[i, j]
            # q(c_i + t c_j) = qb t^2 + bb t + qa
            candidates = []
            if qb == 0:
                if bb != 0:
                    candidates.append(Fraction(-qa, bb))
            else:
                disc = bb * bb - 4 * qb * qa
                root = _rational_sqrt(disc)
                if root is not None:
                    candidates.extend(sorted({Fraction(-bb - root, 2 * qb),
                                              Fraction(-bb + root, 2 * qb)}))
            for t in candidates:
                coords = tuple(
                    Fraction(1) if s == i else (t if s == j else ZERO)
                    for s in range(m)
                )
                if non_radical(coords):
                    return embed(coords)
    return None


def _orthogonal_complement(space, vectors):
    """Basis of the subspace orthogonal to all of ``vectors``."""
    rows = [space.gram.mul_vec(v) for v in vectors]
    _, kernel = mat_rank_kernel(Mat.from_rows(rows))
    return list(kernel)


def standardize(space: QuadraticSpace, w: Subspace):
    """Hyperbolic standardization adapted to the isotropic subspace w.

    Produces a basis in which q = sum_i x_{a_i} x_{b_i} (+ c x0^2 in odd
    rank) with b(a_i, b_i) = 1/2, w spanned by the leading tail positions
    followed by radical positions.  Raises StandardizationUnavailable when
    the leftover form admits no rational hyperbolic completion.
    """
    if not check_isotropic(space, w):
        raise PreconditionError("standardize requires an isotropic subspace")
    n = space.n
    rank = space.rank
    k = rank // 2
    rad = radical_basis(space)
    w_cap_k = sub_intersection(w, rad)
    l = w_cap_k.dim
    j = w.dim - l

    # complement of w∩K inside w, giving representatives of pi(w)
    w_part = []
    taken = list(w_cap_k.basis)
    for v in w.basis:
        trial = taken + w_part + [v]
        if len(rref_rows(trial, n)[0]) == len(trial):
            w_part.append(v)
    if len(w_part) != j:
        raise PreconditionError("could not split w against the radical")
    if j > k:
        raise PreconditionError("isotropic projection exceeds the Witt bound")

    a_vecs = []
    b_vecs = list(w_part)
    for t in range(j):
        constraints = b_vecs[:j] + a_vecs
        rhs = [Fraction(1, 2) if i == t else ZERO for i in range(j)] + [ZERO] * len(a_vecs)
        u = _solve_partner(space, constraints, rhs)
        qu = space.q(u)
        if qu:
            u = tuple(x - qu * y for x, y in zip(u, b_vecs[t]))
        a_vecs.append(u)

    # hyperbolically complete the orthogonal complement of the pairs so far
    comp = _orthogonal_complement(space, a_vecs + b_vecs[:j]) if j else None
    cols = comp if comp is not None else [space.basis_vector(i) for i in range(n)]
    while True:
        sub_rank = mat_rank(
            Mat.from_rows([[space.b(u, v) for v in cols] for u in cols])
        ) if cols else 0
        if sub_rank <= 1:
            break
        iso = _isotropic_in(space, cols)
        if iso is None:
            raise StandardizationUnavailable(
                "no rational isotropic vector found in the leftover form"
            )
        # partner inside the complement span
        giso = space.gram.mul_vec(iso)
        proj = [sum((giso[i] * c[i] for i in range(n)), ZERO) for c in cols]
        sol = mat_solve(Mat.from_rows([proj]), (Fraction(1, 2),))
        if sol is None:
            raise StandardizationUnavailable("no dual partner in the leftover form")
        u = [ZERO] * n
        for c, col in zip(sol[0], cols):
            if c:
                for i, x in enumerate(col):
                    u[i] += c * x
        u = tuple(u)
        qu = space.q(u)
        if qu:
            u = tuple(x - qu * y for x, y in zip(u, iso))
        a_vecs.append(u)
        b_vecs.append(iso)
        cols = _orthogonal_complement(space, a_vecs + b_vecs)

    diag_vec = None
    if rank % 2 == 1:
        for cvec in cols:
            if space.q(cvec) != 0:
                diag_vec = cvec
                break
        if diag_vec is None:
            raise StandardizationUnavailable("odd-rank leftover has no anisotropic vector")
        cols = _orthogonal_complement(space, a_vecs + b_vecs + [diag_vec])

    # leftover must now be exactly the radical
    rad_basis = list(w_cap_k.basis)
    for v in rad.basis:
        trial = rad_basis + [v]
        if len(rref_rows(trial, n)[0]) == len(trial):
            rad_basis.append(v)
    if len(rad_basis) != rad.dim:
        raise PreconditionError("radical completion failed")

    new_basis = []
    diag_index = None
    diag_value = None
    if diag_vec is not None:
        diag_index = 0
        diag_value = space.q(diag_vec)
        new_basis.append(diag_vec)
    offset = len(new_basis)
    a_positions = list(range(offset, offset + k))
    b_positions = list(range(offset + k, offset + 2 * k))
    new_basis.extend(a_vecs)
    new_basis.extend(b_vecs)
    radical_positions = list(range(offset + 2 * k, offset + 2 * k + len(rad_basis)))
    new_basis.extend(rad_basis)
    if len(new_basis) != n:
        raise StandardizationUnavailable("standardization produced a defective basis")

    profile = StdProfile(
        n, rank, k, j, diag_index, diag_value,
        a_positions, b_positions, radical_positions, l,
    )
    change = Mat.from_cols(new_basis)
    inverse = _invert_or_die(change)
    gram_std = change.transpose() @ space.gram @ change
    if gram_std != profile.normal_gram():
        raise StandardizationUnavailable("completed basis is not in normal form")
    space_std = QuadraticSpace(gram_std)
    w_std = Subspace(
        space_std, [space_std.basis_vector(i) for i in profile.w_positions]
    )
    # the coordinates of w in the new basis must span the same subspace
    w_coords = Subspace(space_std, [inverse.mul_vec(v) for v in w.basis])
    if not w_coords.same_span(w_std):
        raise PreconditionError("w is not tail-positioned after standardization")
    return Standardization(space, w, tuple(new_basis), change, inverse,
                           space_std, w_std, profile)


def detect_standard_profile(space: QuadraticSpace, w: Subspace):
    """Recognize a space already in standardized coordinates; returns the
    StdProfile or None.  Used by consumers whose preconditions require a
    standardized basis."""
    n = space.n
    rank = space.rank
    k = rank // 2
    diag_index = None
    diag_value = None
    offset = 0
    if rank % 2 == 1:
        diag_index = 0
        diag_value = space.gram[0, 0]
        if diag_value == 0:
            return None
        offset = 1
    a_positions = list(range(offset, offset + k))
    b_positions = list(range(offset + k, offset + 2 * k))
    radical_positions = list(range(offset + 2 * k, n))
    # w must be spanned by coordinate vectors among tails and radicals
    positions = []
    for row in w.rref_basis():
        nz = [i for i, x in enumerate(row) if x]
        if len(nz) != 1 or row[nz[0]] != 1:
            return None
        positions.append(nz[0])
    tail_hits = [p for p in positions if p in b_positions]
    rad_hits = [p for p in positions if p in radical_positions]
    if len(tail_hits) + len(rad_hits) != len(positions):
        return None
    if tail_hits != b_positions[: len(tail_hits)]:
        return None
    if rad_hits != radical_positions[: len(rad_hits)]:
        return None
    profile = StdProfile(
        n, rank, k, len(tail_hits), diag_index, diag_value,
        a_positions, b_positions, radical_positions, len(rad_hits),
    )
    if space.gram != profile.normal_gram():
        return None
    return profile
