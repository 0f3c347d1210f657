"""The Clifford algebra of a quadratic space.

Elements are exact linear combinations of subset monomials e_{i1}...e_{ik}
(i1 < ... < ik) over the standard basis; monomials are stored as bitmasks.
Multiplication rewrites with e_j e_i = 2 b(e_j, e_i) - e_i e_j (i < j) and
e_i e_i = q(e_i), which handles hyperbolic (non-orthogonal) bases directly.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError, SpanError
from .exactalg import Mat, SpanSolver, ZERO, ONE, rat, rref_rows, vec
from .quadform import QuadraticSpace, Subspace

_POPCOUNT = int.bit_count if hasattr(int, "bit_count") else (lambda m: bin(m).count("1"))


class _Context:
    """Per-space monomial order and multiplication cache."""

    __slots__ = ("space", "n", "order", "index", "vec_cache", "gram_rows", "top")

    def __init__(self, space: QuadraticSpace):
        self.space = space
        n = space.n
        self.n = n
        self.order = tuple(sorted(range(1 << n), key=lambda m: (_POPCOUNT(m), m)))
        self.index = {m: i for i, m in enumerate(self.order)}
        self.vec_cache = {}
        self.gram_rows = [space.gram.row(i) for i in range(n)]
        self.top = (1 << n) - 1

    def vec_mono(self, i: int, mask: int) -> dict:
        """Normal form of e_i * (monomial mask)."""
        key = (i, mask)
        cached = self.vec_cache.get(key)
        if cached is not None:
            return cached
        bit = 1 << i
        if mask == 0:
            res = {bit: ONE}
        else:
            j = (mask & -mask).bit_length() - 1
            if i < j:
                res = {bit | mask: ONE}
            elif i == j:
                qi = self.gram_rows[i][i]
                rest = mask & (mask - 1)
                res = {rest: qi} if qi else {}
            else:
                rest = mask & (mask - 1)
                jbit = 1 << j
                res = {}
                two_b = 2 * self.gram_rows[i][j]
                if two_b:
                    res[rest] = two_b
                for m, c in self.vec_mono(i, rest).items():
                    prev = res.get(m | jbit, ZERO) - c
                    if prev:
                        res[m | jbit] = prev
                    elif (m | jbit) in res:
                        del res[m | jbit]
        self.vec_cache[key] = res
        return res

    def vec_mul_terms(self, i: int, terms: dict) -> dict:
        out = {}
        for m, c in terms.items():
            for mm, cc in self.vec_mono(i, m).items():
                v = out.get(mm, ZERO) + c * cc
                if v:
                    out[mm] = v
                elif mm in out:
                    del out[mm]
        return out

    def mono_mul_terms(self, mask: int, terms: dict) -> dict:
        acc = terms
        m = mask
        while m:
            i = m.bit_length() - 1
            m &= ~(1 << i)
            acc = self.vec_mul_terms(i, acc)
            if not acc:
                break
        return acc


def _ctx(space: QuadraticSpace) -> _Context:
    if space._clifford is None:
        space._clifford = _Context(space)
    return space._clifford


class CliffordElement:
    """An exact element of Cl(V, q)."""

    __slots__ = ("space", "terms")

    def __init__(self, space: QuadraticSpace, terms: dict):
        self.space = space
        self.terms = {m: c for m, c in terms.items() if c}

    @classmethod
    def zero(cls, space) -> "CliffordElement":
        return cls(space, {})

    @classmethod
    def scalar(cls, space, c) -> "CliffordElement":
        return cls(space, {0: rat(c)})

    @classmethod
    def from_vector(cls, space, v) -> "CliffordElement":
        v = vec(v)
        if len(v) != space.n:
            raise PreconditionError("vector length mismatch")
        return cls(space, {1 << i: x for i, x in enumerate(v) if x})

    @classmethod
    def monomial(cls, space, indices, coeff=1) -> "CliffordElement":
        mask = 0
        for i in indices:
            bit = 1 << i
            if mask & bit:
                raise PreconditionError("monomial indices must be distinct")
            mask |= bit
        return cls(space, {mask: rat(coeff)})

    def _require_same_space(self, other):
        if self.space is not other.space and self.space != other.space:
            raise PreconditionError("elements live in different Clifford algebras")

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        self._require_same_space(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            elif m in out:
                del out[m]
        return CliffordElement(self.space, out)

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return self + (-other)

    def __neg__(self) -> "CliffordElement":
        return CliffordElement(self.space, {m: -c for m, c in self.terms.items()})

    def scale(self, s) -> "CliffordElement":
        s = rat(s)
        if not s:
            return CliffordElement.zero(self.space)
        return CliffordElement(self.space, {m: s * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def is_zero(self) -> bool:
        return not self.terms

    def coords(self) -> tuple:
        ctx = _ctx(self.space)
        out = [ZERO] * (1 << ctx.n)
        for m, c in self.terms.items():
            out[ctx.index[m]] = c
        return tuple(out)

    @classmethod
    def from_coords(cls, space, coords) -> "CliffordElement":
        ctx = _ctx(space)
        return cls(space, {ctx.order[i]: c for i, c in enumerate(coords) if c})

    def vector_part(self):
        """The degree-1 coordinates, or None if other monomials appear."""
        v = [ZERO] * self.space.n
        for m, c in self.terms.items():
            if _POPCOUNT(m) != 1:
                return None
            v[m.bit_length() - 1] = c
        return tuple(v)

    def __eq__(self, other):
        return (
            isinstance(other, CliffordElement)
            and self.space == other.space
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.space, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return "0"
        ctx = _ctx(self.space)
        parts = []
        for m in sorted(self.terms, key=lambda mm: ctx.index[mm]):
            c = self.terms[m]
            mono = "*".join(f"e{i}" for i in range(ctx.n) if m >> i & 1) or "1"
            if c == 1 and m:
                body = mono
            elif c == -1 and m:
                body = f"-{mono}"
            elif m:
                body = f"{c}*{mono}"
            else:
                body = str(c)
            if parts and not body.startswith("-"):
                parts.append("+" + body)
            else:
                parts.append(body)
        return "".join(parts)


def multiply(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    """The Clifford product."""
    a._require_same_space(b)
    ctx = _ctx(a.space)
    out = {}
    for m, c in a.terms.items():
        prod = ctx.mono_mul_terms(m, b.terms)
        for mm, cc in prod.items():
            v = out.get(mm, ZERO) + c * cc
            if v:
                out[mm] = v
            elif mm in out:
                del out[mm]
    return CliffordElement(a.space, out)


def grade_parts(a: CliffordElement):
    """Split into (even, odd) by monomial length parity."""
    ev = {m: c for m, c in a.terms.items() if _POPCOUNT(m) % 2 == 0}
    od = {m: c for m, c in a.terms.items() if _POPCOUNT(m) % 2 == 1}
    return CliffordElement(a.space, ev), CliffordElement(a.space, od)


def transpose_anti(a: CliffordElement) -> CliffordElement:
    """The anti-automorphism reversing products of vectors."""
    ctx = _ctx(a.space)
    out = {}
    for m, c in a.terms.items():
        # reversed product e_{ik}...e_{i1}: left-multiply 1 by the indices
        # in ascending order
        acc = {0: ONE}
        mm = m
        while mm:
            i = (mm & -mm).bit_length() - 1
            mm &= mm - 1
            acc = ctx.vec_mul_terms(i, acc)
        for mono, cc in acc.items():
            v = out.get(mono, ZERO) + c * cc
            if v:
                out[mono] = v
            elif mono in out:
                del out[mono]
    return CliffordElement(a.space, out)


def trace_form(a: CliffordElement, b: CliffordElement | None = None) -> Fraction:
    """Coefficient of the top monomial e_0...e_{n-1}; with b, tr(a*b)."""
    if b is not None:
        a = multiply(a, b)
    ctx = _ctx(a.space)
    return a.terms.get(ctx.top, ZERO)


def left_action_matrix(v, domain_basis, codomain_basis) -> Mat:
    """Matrix of xi -> v*xi from span(domain_basis) to span(codomain_basis).

    Raises SpanError (with the offending element as witness) when the image
    leaves the codomain span.
    """
    if not domain_basis:
        return Mat.zeros(len(codomain_basis), 0)
    space = domain_basis[0].space
    velt = CliffordElement.from_vector(space, v)
    ncols = 1 << space.n
    rows, pivots = rref_rows([x.coords() for x in codomain_basis], ncols)
    solver = SpanSolver(rows, list(pivots))
    raw = [x.coords() for x in codomain_basis]
    change = _basis_change(raw, rows, pivots)
    cols = []
    for xi in domain_basis:
        image = multiply(velt, xi)
        in_rref = solver.coords(image.coords())
        if in_rref is None:
            raise SpanError("image leaves the codomain span", witness=image)
        cols.append(change.mul_vec(in_rref))
    return Mat.from_cols(cols) if cols else Mat.zeros(len(codomain_basis), 0)


def _basis_change(raw_coords, rref, pivots) -> Mat:
    """Matrix turning rref-coordinates into raw-basis coordinates."""
    solver = SpanSolver(rref, list(pivots))
    cols = []
    for v in raw_coords:
        c = solver.coords(v)
        if c is None:
            raise SpanError("basis is not inside its own span")
        cols.append(c)
    m = Mat.from_cols(cols)
    from .exactalg import mat_invertible

    inv = mat_invertible(m)
    if inv is None:
        raise SpanError("codomain basis vectors are dependent")
    return inv


def reflect(space: QuadraticSpace, u, v) -> tuple:
    """v - (2 b(v,u)/q(u)) u; agrees with -u v u^{-1} in the algebra."""
    u = vec(u)
    v = vec(v)
    qu = space.q(u)
    if qu == 0:
        raise PreconditionError("reflection axis must be anisotropic")
    f = 2 * space.b(v, u) / qu
    return tuple(x - f * y for x, y in zip(v, u))


class GroupElement:
    """A product of anisotropic vectors inside the unit group of Cl."""

    __slots__ = ("space", "factors", "_element", "_inverse")

    def __init__(self, space: QuadraticSpace, factors):
        factors = tuple(vec(f) for f in factors)
        for f in factors:
            if space.q(f) == 0:
                raise PreconditionError("group element factors must be anisotropic")
        self.space = space
        self.factors = factors
        self._element = None
        self._inverse = None

    @property
    def parity(self) -> int:
        return len(self.factors) % 2

    @property
    def as_element(self) -> CliffordElement:
        if self._element is None:
            acc = CliffordElement.scalar(self.space, 1)
            for f in self.factors:
                acc = multiply(acc, CliffordElement.from_vector(self.space, f))
            self._element = acc
        return self._element

    @property
    def inverse_element(self) -> CliffordElement:
        if self._inverse is None:
            acc = CliffordElement.scalar(self.space, 1)
            denom = Fraction(1)
            for f in reversed(self.factors):
                acc = multiply(acc, CliffordElement.from_vector(self.space, f))
                denom *= self.space.q(f)
            self._inverse = acc.scale(Fraction(1) / denom)
        return self._inverse

    def conjugate_vector(self, v) -> tuple:
        """g v g^{-1} as a vector: (-1)^r composite reflection."""
        out = vec(v)
        for f in reversed(self.factors):
            out = reflect(self.space, f, out)
        if len(self.factors) % 2:
            out = tuple(-x for x in out)
        return out


def conjugate_subspace(g: GroupElement, w: Subspace) -> Subspace:
    """The subspace g W g^{-1}."""
    new_basis = [g.conjugate_vector(v) for v in w.basis]
    return Subspace(g.space, new_basis)
