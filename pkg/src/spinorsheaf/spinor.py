"""Ideal modules I = Cl . w1...wm and their matrix factorizations.

An ideal module carries canonical (reduced echelon) bases of its even and
odd parts; left multiplication by the coordinate vectors gives the pair
(phi, psi) of matrices of linear forms with phi psi = psi phi = q * Id.
Everything downstream (flags, duals, restriction, cones, equivariance) is
verified through exact linear algebra on those bases.
"""

from __future__ import annotations

from fractions import Fraction

from .clifford import (
    CliffordElement,
    GroupElement,
    _ctx,
    conjugate_subspace,
    multiply,
)
from .errors import PreconditionError, SpanError
from .exactalg import (
    LinMat,
    Mat,
    SpanSolver,
    ZERO,
    mat_invertible,
    mat_rank,
    mat_solve,
    rref_rows,
    vec,
)
from .quadform import (
    QuadraticSpace,
    QuotientSpace,
    Subspace,
    check_isotropic,
    detect_standard_profile,
    radical_basis,
    sub_intersection,
    sub_sum,
)


class IdealModule:
    """The graded left ideal generated by the product of a basis of an
    isotropic subspace, with canonical bases of both graded pieces."""

    __slots__ = (
        "space",
        "w",
        "generator",
        "ev_basis",
        "odd_basis",
        "shift",
        "_solver_ev",
        "_solver_odd",
        "_act_ev",
        "_act_odd",
    )

    def __init__(self, space, w, generator, ev_basis, odd_basis, shift=0):
        self.space = space
        self.w = w
        self.generator = generator
        self.ev_basis = tuple(ev_basis)
        self.odd_basis = tuple(odd_basis)
        self.shift = shift
        self._solver_ev = None
        self._solver_odd = None
        self._act_ev = None
        self._act_odd = None

    @property
    def ev_dim(self) -> int:
        return len(self.ev_basis)

    @property
    def odd_dim(self) -> int:
        return len(self.odd_basis)

    @property
    def codim(self) -> int:
        return self.space.n - self.w.dim

    def _solver(self, parity):
        attr = "_solver_ev" if parity == 0 else "_solver_odd"
        if getattr(self, attr) is None:
            basis = self.ev_basis if parity == 0 else self.odd_basis
            rows, pivots = rref_rows([x.coords() for x in basis], 1 << self.space.n)
            setattr(self, attr, SpanSolver(rows, list(pivots)))
        return getattr(self, attr)

    def coords_in(self, parity, element):
        """Coordinates of element in the basis of the given graded part, or
        None when it lies outside."""
        return self._solver(parity).coords(element.coords())

    @property
    def act_ev(self):
        """Matrices of left multiplication by e_i: ev part -> odd part."""
        if self._act_ev is None:
            self._act_ev = tuple(
                _action_matrix(self.space, i, self.ev_basis, self._solver(1), self.odd_dim)
                for i in range(self.space.n)
            )
        return self._act_ev

    @property
    def act_odd(self):
        if self._act_odd is None:
            self._act_odd = tuple(
                _action_matrix(self.space, i, self.odd_basis, self._solver(0), self.ev_dim)
                for i in range(self.space.n)
            )
        return self._act_odd

    def same_module(self, other) -> bool:
        return (
            isinstance(other, IdealModule)
            and self.space == other.space
            and self.shift == other.shift
            and [x.coords() for x in self.ev_basis] == [x.coords() for x in other.ev_basis]
            and [x.coords() for x in self.odd_basis] == [x.coords() for x in other.odd_basis]
        )

    def __repr__(self):
        tag = "[1]" if self.shift else ""
        return f"IdealModule(dim W={self.w.dim}, N={self.ev_dim}){tag}"


def _action_matrix(space, i, domain, codomain_solver, codomain_dim):
    velt = CliffordElement.from_vector(space, space.basis_vector(i))
    cols = []
    for xi in domain:
        image = multiply(velt, xi)
        coords = codomain_solver.coords(image.coords())
        if coords is None:
            raise SpanError("left action leaves the module", witness=image)
        cols.append(coords)
    return Mat.from_cols(cols) if cols else Mat.zeros(codomain_dim, 0)


def build_ideal(space: QuadraticSpace, w: Subspace) -> IdealModule:
    """The ideal module of an isotropic subspace, with canonical bases."""
    if w.dim == 0:
        raise PreconditionError("the isotropic subspace must be nonzero")
    if not check_isotropic(space, w):
        raise PreconditionError("the subspace is not isotropic")
    gen = CliffordElement.scalar(space, 1)
    for v in w.basis:
        gen = multiply(gen, CliffordElement.from_vector(space, v))
    ctx = _ctx(space)
    m = w.dim
    ev_raw = []
    odd_raw = []
    for mask in range(1 << space.n):
        prod = ctx.mono_mul_terms(mask, gen.terms)
        if not prod:
            continue
        elt = CliffordElement(space, prod)
        if (bin(mask).count("1") + m) % 2 == 0:
            ev_raw.append(elt.coords())
        else:
            odd_raw.append(elt.coords())
    dim = 1 << space.n
    ev_rows, _ = rref_rows(ev_raw, dim)
    odd_rows, _ = rref_rows(odd_raw, dim)
    ev_basis = [CliffordElement.from_coords(space, r) for r in ev_rows]
    odd_basis = [CliffordElement.from_coords(space, r) for r in odd_rows]
    expected = 1 << (space.n - m - 1)
    assert len(ev_basis) == len(odd_basis) == expected, "dimension law violated"
    return IdealModule(space, w, gen, ev_basis, odd_basis, shift=0)


def shift(i: IdealModule) -> IdealModule:
    """Swap the graded pieces; an involution."""
    out = IdealModule(i.space, i.w, i.generator, i.odd_basis, i.ev_basis,
                      shift=1 - i.shift)
    out._solver_ev = i._solver_odd
    out._solver_odd = i._solver_ev
    out._act_ev = i._act_odd
    out._act_odd = i._act_ev
    return out


class DirectSumModule:
    """Formal direct sum; only the action matrices matter downstream."""

    __slots__ = ("space", "ev_dim", "odd_dim", "act_ev", "act_odd", "parts")

    def __init__(self, space, ev_dim, odd_dim, act_ev, act_odd, parts=()):
        self.space = space
        self.ev_dim = ev_dim
        self.odd_dim = odd_dim
        self.act_ev = tuple(act_ev)
        self.act_odd = tuple(act_odd)
        self.parts = tuple(parts)

    def __repr__(self):
        return f"DirectSumModule(ev={self.ev_dim}, odd={self.odd_dim})"


def zero_module(space: QuadraticSpace) -> DirectSumModule:
    zero = Mat.zeros(0, 0)
    return DirectSumModule(space, 0, 0,
                           [zero] * space.n, [zero] * space.n)


def direct_sum(a, b) -> DirectSumModule:
    """Block sum of two modules over the same space."""
    if a.space != b.space:
        raise PreconditionError("direct sum needs a common space")
    act_ev = []
    act_odd = []
    for i in range(a.space.n):
        act_ev.append(_block_diag(a.act_ev[i], b.act_ev[i]))
        act_odd.append(_block_diag(a.act_odd[i], b.act_odd[i]))
    return DirectSumModule(
        a.space,
        a.ev_dim + b.ev_dim,
        a.odd_dim + b.odd_dim,
        act_ev,
        act_odd,
        parts=(a, b),
    )


def _block_diag(a: Mat, b: Mat) -> Mat:
    rows = a.rows + b.rows
    cols = a.cols + b.cols
    out = [[ZERO] * cols for _ in range(rows)]
    for i in range(a.rows):
        for j in range(a.cols):
            out[i][j] = a[i, j]
    for i in range(b.rows):
        for j in range(b.cols):
            out[a.rows + i][a.cols + j] = b[i, j]
    return Mat.from_rows(out) if rows else Mat.zeros(0, cols)


def _sparse_rows(m: Mat):
    return [
        [(j, v) for j, v in enumerate(m.row(i)) if v] for i in range(m.rows)
    ]


class FactorizationPair:
    """A pair (phi, psi) of square matrices of linear forms with
    phi(v) psi(v) = psi(v) phi(v) = q(v) Id."""

    __slots__ = ("space", "phi", "psi", "N")

    def __init__(self, space, phi: LinMat, psi: LinMat):
        self.space = space
        self.phi = phi
        self.psi = psi
        self.N = phi.rows

    def check_identity(self) -> bool:
        g = self.space.gram
        n = self.space.n
        N = self.N
        phi_rows = [_sparse_rows(m) for m in self.phi.coeff]
        psi_rows = [_sparse_rows(m) for m in self.psi.coeff]
        for first, second in ((phi_rows, psi_rows), (psi_rows, phi_rows)):
            for i in range(n):
                for j in range(i, n):
                    target = g[i, i] if i == j else 2 * g[i, j]
                    for r in range(N):
                        acc = {}
                        for t, v in first[i][r]:
                            for c, w in second[j][t]:
                                acc[c] = acc.get(c, ZERO) + v * w
                        if i != j:
                            for t, v in first[j][r]:
                                for c, w in second[i][t]:
                                    acc[c] = acc.get(c, ZERO) + v * w
                        for c, v in acc.items():
                            if v != (target if c == r else 0):
                                return False
                        if target and acc.get(r, ZERO) != target:
                            return False
        return True


class MatrixFactorization(FactorizationPair):
    """The factorization attached to a module: phi is left multiplication
    ev -> odd, psi is odd -> ev."""

    __slots__ = ("module",)

    def __init__(self, module):
        n = module.space.n
        phi = LinMat(n, module.act_ev)
        psi = LinMat(n, module.act_odd)
        super().__init__(module.space, phi, psi)
        self.module = module


def build_factorization(i) -> MatrixFactorization:
    mf = MatrixFactorization(i)
    assert mf.check_identity(), "factorization identity failed: multiplication bug"
    return mf


def fiber_rank(mf: FactorizationPair, v):
    """(rank of phi(v), N - rank): the fiber dimension of coker phi at v."""
    v = vec(v)
    if all(x == 0 for x in v):
        raise PreconditionError("fiber point must be nonzero")
    if mf.space.q(v) != 0:
        raise PreconditionError("fiber points must lie on the quadric")
    r = mat_rank(mf.phi.evaluate(v))
    return r, mf.N - r


def dual_factorization(mf: FactorizationPair) -> FactorizationPair:
    """The transposed pair; its first map presents the twisted dual."""
    return FactorizationPair(mf.space, mf.phi.transpose(), mf.psi.transpose())


class FlagSequence:
    """Data of 0 -> I_W -> I_W' -> I_W[1] -> 0 for W' of codimension 1."""

    __slots__ = (
        "inner",
        "outer",
        "connecting_vector",
        "inclusion_ev",
        "inclusion_odd",
        "quotient_ev",
        "quotient_odd",
        "exact",
        "split_subspace",
        "split_module",
    )

    def __init__(self, **kw):
        for k, v in kw.items():
            setattr(self, k, v)

    @property
    def split_agree(self) -> bool:
        return self.split_subspace == self.split_module


def flag_sequence(space: QuadraticSpace, w: Subspace, drop) -> FlagSequence:
    """Build and verify the codimension-1 flag sequence obtained by
    dropping the direction of ``drop`` from w."""
    drop = vec(drop)
    if w.dim < 2:
        raise PreconditionError("flags need an isotropic subspace of dimension >= 2")
    coords = mat_solve(Mat.from_cols(list(w.basis)), drop)
    if coords is None:
        raise PreconditionError("the dropped vector must lie in w")
    coeffs = coords[0]
    pivot = next((t for t, c in enumerate(coeffs) if c), None)
    if pivot is None:
        raise PreconditionError("the dropped vector must be nonzero")
    w_prime = Subspace(space, [v for t, v in enumerate(w.basis) if t != pivot])
    if w_prime.contains(drop):
        raise PreconditionError("the dropped vector lies in the smaller subspace")

    inner = build_ideal(space, Subspace(space, list(w_prime.basis) + [drop]))
    outer = build_ideal(space, w_prime)

    def inclusion(par):
        basis = inner.ev_basis if par == 0 else inner.odd_basis
        cols = []
        for xi in basis:
            c = outer.coords_in(par, xi)
            if c is None:
                raise SpanError("inner module does not embed", witness=xi)
            cols.append(c)
        dim = outer.ev_dim if par == 0 else outer.odd_dim
        return Mat.from_cols(cols) if cols else Mat.zeros(dim, 0)

    inc_ev = inclusion(0)
    inc_odd = inclusion(1)

    drop_elt = CliffordElement.from_vector(space, drop)

    def quotient(par):
        basis = outer.ev_basis if par == 0 else outer.odd_basis
        cols = []
        for xi in basis:
            image = multiply(xi, drop_elt)
            c = inner.coords_in(1 - par, image)
            if c is None:
                raise SpanError("right multiplication leaves the flag", witness=image)
            cols.append(c)
        dim = inner.odd_dim if par == 0 else inner.ev_dim
        return Mat.from_cols(cols) if cols else Mat.zeros(dim, 0)

    q_ev = quotient(0)   # outer ev -> inner odd
    q_odd = quotient(1)  # outer odd -> inner ev

    exact = True
    # injectivity, vanishing composite, middle exactness, surjectivity
    for inc, q, inner_dim, outer_dim in (
        (inc_ev, q_ev, inner.ev_dim, outer.ev_dim),
        (inc_odd, q_odd, inner.odd_dim, outer.odd_dim),
    ):
        if mat_rank(inc) != inner_dim:
            exact = False
        if not (q @ inc).is_zero():
            exact = False
        if mat_rank(q) != inner_dim:
            exact = False
        if mat_rank(inc) + mat_rank(q) != outer_dim:
            exact = False

    rad = radical_basis(space)
    w_full = inner.w
    split_subspace = sub_intersection(w_full, rad).same_span(
        sub_intersection(w_prime, rad)
    )
    split_module = _splitting_exists(inner, outer, q_ev, q_odd)

    return FlagSequence(
        inner=inner,
        outer=outer,
        connecting_vector=drop,
        inclusion_ev=inc_ev,
        inclusion_odd=inc_odd,
        quotient_ev=q_ev,
        quotient_odd=q_odd,
        exact=exact,
        split_subspace=split_subspace,
        split_module=split_module,
    )


def _splitting_exists(inner, outer, q_ev, q_odd) -> bool:
    """Is there a graded Cl-linear section of the quotient map?

    The section sigma has components s_ev: inner_odd -> outer_ev and
    s_odd: inner_ev -> outer_odd (the target of the quotient is the
    shifted inner module).  Constraints: Cl-linearity against every
    coordinate vector and q . sigma = id.
    """
    n = inner.space.n
    a_rows, a_cols = outer.ev_dim, inner.odd_dim
    b_rows, b_cols = outer.odd_dim, inner.ev_dim
    nvars = a_rows * a_cols + b_rows * b_cols

    def a_index(r, c):
        return r * a_cols + c

    def b_index(r, c):
        return a_rows * a_cols + r * b_cols + c

    rows = []
    rhs = []

    def add_row(coeffs, target):
        row = [ZERO] * nvars
        for idx, val in coeffs:
            row[idx] += val
        rows.append(row)
        rhs.append(target)

    # Cl-linearity: outer.act_ev[i] @ s_ev = s_odd @ inner.act_odd[i]
    # (left mult by e_i maps inner_odd -> inner_ev, i.e. shifted ev -> odd)
    for i in range(n):
        oa = outer.act_ev[i]
        ia = inner.act_odd[i]
        for r in range(b_rows):
            for c in range(a_cols):
                coeffs = []
                for t in range(a_rows):
                    v = oa[r, t]
                    if v:
                        coeffs.append((a_index(t, c), v))
                for t in range(b_cols):
                    v = ia[t, c]
                    if v:
                        coeffs.append((b_index(r, t), -v))
                add_row(coeffs, ZERO)
        ob = outer.act_odd[i]
        ib = inner.act_ev[i]
        for r in range(a_rows):
            for c in range(b_cols):
                coeffs = []
                for t in range(b_rows):
                    v = ob[r, t]
                    if v:
                        coeffs.append((b_index(t, c), v))
                for t in range(a_cols):
                    v = ib[t, c]
                    if v:
                        coeffs.append((a_index(r, t), -v))
                add_row(coeffs, ZERO)

    # section property: q_ev @ s_ev = id, q_odd @ s_odd = id
    for r in range(a_cols):
        for c in range(a_cols):
            coeffs = []
            for t in range(a_rows):
                v = q_ev[r, t]
                if v:
                    coeffs.append((a_index(t, c), v))
            add_row(coeffs, Fraction(1) if r == c else ZERO)
    for r in range(b_cols):
        for c in range(b_cols):
            coeffs = []
            for t in range(b_rows):
                v = q_odd[r, t]
                if v:
                    coeffs.append((b_index(t, c), v))
            add_row(coeffs, Fraction(1) if r == c else ZERO)

    return mat_solve(Mat.from_rows(rows), rhs) is not None


def recover_intersection_with_radical(i: IdealModule) -> Subspace:
    """{v in V : v annihilates the module} computed exactly; equals the
    intersection of w with the radical."""
    space = i.space
    dim = 1 << space.n
    rows = []
    for xi in list(i.ev_basis) + list(i.odd_basis):
        images = []
        for t in range(space.n):
            velt = CliffordElement.from_vector(space, space.basis_vector(t))
            images.append(multiply(velt, xi).coords())
        for c in range(dim):
            row = [images[t][c] for t in range(space.n)]
            if any(row):
                rows.append(row)
    if not rows:
        return Subspace(space, [space.basis_vector(t) for t in range(space.n)])
    from .exactalg import mat_rank_kernel

    _, kernel = mat_rank_kernel(Mat.from_rows(rows))
    return Subspace(space, kernel)


def family_indicator(i: IdealModule) -> str:
    """Which graded half the standardized witness element annihilates.

    Requires the module to live on a standardized space (even-rank form,
    tails of w leading) with pi(w) maximal.  The witness is the product of
    the hyperbolic partners and the radical directions outside w.
    """
    profile = detect_standard_profile(i.space, i.w)
    if profile is None:
        raise PreconditionError("family_indicator needs a standardized basis")
    if profile.diag_index is not None:
        raise PreconditionError("family_indicator needs dim V/K even")
    if profile.pi_dim != profile.k:
        raise PreconditionError("family_indicator needs pi(w) maximal")
    witness_positions = list(profile.a_positions) + list(
        profile.radical_positions[profile.w_radical_count :]
    )
    xi = CliffordElement.monomial(i.space, sorted(witness_positions))
    killed_ev = all(multiply(xi, b).is_zero() for b in i.ev_basis)
    killed_odd = all(multiply(xi, b).is_zero() for b in i.odd_basis)
    if killed_ev and not killed_odd:
        return "EVEN"
    if killed_odd and not killed_ev:
        return "ODD"
    return "NONE"


class RestrictVerdict:
    __slots__ = ("kind", "codim_u", "parity", "restricted", "map_ev", "map_odd",
                 "bijective", "linear")

    def __init__(self, **kw):
        self.kind = kw.get("kind")
        self.codim_u = kw.get("codim_u")
        self.parity = kw.get("parity")
        self.restricted = kw.get("restricted")
        self.map_ev = kw.get("map_ev")
        self.map_odd = kw.get("map_odd")
        self.bijective = kw.get("bijective")
        self.linear = kw.get("linear")

    @property
    def matches(self) -> str:
        return "S" if self.parity == 0 else "T"


def _embed_element(space, cols, element):
    """Push an element of Cl(U) into Cl(V) along the column list (an
    isometric embedding of quadratic spaces)."""
    out = CliffordElement.zero(space)
    for mask, c in element.terms.items():
        acc = CliffordElement.scalar(space, c)
        mm = mask
        while mm:
            j = (mm & -mm).bit_length() - 1
            mm &= mm - 1
            acc = multiply(acc, CliffordElement.from_vector(space, cols[j]))
        out = out + acc
    return out


def restrict_compare(i: IdealModule, u: Subspace) -> RestrictVerdict:
    """Compare the module with the one built on a transverse subspace.

    Builds I' over (U, q|_U, W cap U) and certifies that right
    multiplication by the complementary generators is a bijective
    Cl(U)-linear map I' -> I shifted by codim U.
    """
    space = i.space
    n = space.n
    w = i.w
    if i.shift:
        raise PreconditionError("restrict_compare expects an unshifted module")
    if sub_sum(u, w).dim != n:
        raise PreconditionError("restriction subspace is not transverse")
    cap = sub_intersection(w, u)
    l = cap.dim
    codim_u = n - u.dim
    if l == 0:
        return RestrictVerdict(kind="REDUCES_TO_FREE", codim_u=codim_u,
                               parity=codim_u % 2)
    ucols = list(u.basis)
    gram_u = Mat.from_rows(
        [[space.b(a, b) for b in ucols] for a in ucols]
    )
    try:
        space_u = QuadraticSpace(gram_u)
    except Exception as exc:
        raise PreconditionError(f"restricted form is degenerate: {exc}") from exc
    # W cap U in U coordinates
    ucol_mat = Mat.from_cols(ucols)
    cap_in_u = []
    for v in cap.basis:
        sol = mat_solve(ucol_mat, v)
        assert sol is not None
        cap_in_u.append(sol[0])
    restricted = build_ideal(space_u, Subspace(space_u, cap_in_u))

    # adapted basis of w: cap part first, then a complement inside w
    rest = []
    taken = list(cap.basis)
    for v in w.basis:
        trial = taken + rest + [v]
        if len(rref_rows(trial, n)[0]) == len(trial):
            rest.append(v)
    assert l + len(rest) == w.dim
    shift_amount = len(rest)
    assert shift_amount == codim_u, "transversality bookkeeping failed"
    tail = CliffordElement.scalar(space, 1)
    for v in rest:
        tail = multiply(tail, CliffordElement.from_vector(space, v))

    # the adapted module is the same ideal as i (basis change rescales the
    # generator), so coordinates may be taken in i's bases
    adapted = build_ideal(space, Subspace(space, list(cap.basis) + rest))
    assert [x.coords() for x in adapted.ev_basis] == [x.coords() for x in i.ev_basis]

    def tau(par):
        basis = restricted.ev_basis if par == 0 else restricted.odd_basis
        out_par = (par + shift_amount) % 2
        cols = []
        for xi in basis:
            image = multiply(_embed_element(space, ucols, xi), tail)
            c = i.coords_in(out_par, image)
            if c is None:
                raise SpanError("comparison map leaves the module", witness=image)
            cols.append(c)
        dim = i.ev_dim if out_par == 0 else i.odd_dim
        return Mat.from_cols(cols) if cols else Mat.zeros(dim, 0)

    map_ev = tau(0)
    map_odd = tau(1)
    bijective = (
        mat_invertible(map_ev) is not None and mat_invertible(map_odd) is not None
    )

    linear = True
    for t in range(space_u.n):
        ut_small = CliffordElement.from_vector(space_u, space_u.basis_vector(t))
        ut_big = CliffordElement.from_vector(space, ucols[t])
        for xi in list(restricted.ev_basis) + list(restricted.odd_basis):
            lhs = multiply(_embed_element(space, ucols, multiply(ut_small, xi)), tail)
            rhs = multiply(ut_big, multiply(_embed_element(space, ucols, xi), tail))
            if lhs != rhs:
                linear = False
    return RestrictVerdict(
        kind="ISOMORPHIC",
        codim_u=codim_u,
        parity=codim_u % 2,
        restricted=restricted,
        map_ev=map_ev,
        map_odd=map_odd,
        bijective=bijective,
        linear=linear,
    )


class ConeVerdict:
    __slots__ = ("dim_u", "parity", "total", "map_ev", "map_odd", "bijective", "linear")

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw.get(k))

    @property
    def matches(self) -> str:
        return "S" if self.parity == 0 else "T"


def cone_compare(i_quotient: IdealModule, qs: QuotientSpace) -> ConeVerdict:
    """Compare the module of W/U on V/U with the module of W on V.

    The section embeds Cl(V/U) into Cl(V); right multiplication by a basis
    of U gives the isomorphism I' -> I shifted by dim U, checked exactly,
    Cl(V)-linearly.
    """
    space = qs.source
    u = qs.modded
    if i_quotient.shift:
        raise PreconditionError("cone_compare expects an unshifted module")
    if i_quotient.space != qs.space:
        raise PreconditionError("quotient module does not live on the quotient space")
    rad = radical_basis(space)
    for v in u.basis:
        if not rad.contains(v):
            raise PreconditionError("cone vertex must lie inside the radical")
    section_cols = [qs.section.col(j) for j in range(qs.section.cols)]
    lifted = [qs.lift(wb) for wb in i_quotient.w.basis]
    w_total = Subspace(space, lifted + list(u.basis))
    if not check_isotropic(space, w_total):
        raise PreconditionError("lifted subspace is not isotropic")
    for v in u.basis:
        if not w_total.contains(v):
            raise PreconditionError("cone vertex must lie inside w")
    total = build_ideal(space, w_total)
    d = u.dim
    tail = CliffordElement.scalar(space, 1)
    for v in u.basis:
        tail = multiply(tail, CliffordElement.from_vector(space, v))

    def tau(par):
        basis = i_quotient.ev_basis if par == 0 else i_quotient.odd_basis
        out_par = (par + d) % 2
        cols = []
        for xi in basis:
            image = multiply(_embed_element(space, section_cols, xi), tail)
            c = total.coords_in(out_par, image)
            if c is None:
                raise SpanError("cone comparison leaves the module", witness=image)
            cols.append(c)
        dim = total.ev_dim if out_par == 0 else total.odd_dim
        return Mat.from_cols(cols) if cols else Mat.zeros(dim, 0)

    map_ev = tau(0)
    map_odd = tau(1)
    bijective = (
        mat_invertible(map_ev) is not None and mat_invertible(map_odd) is not None
    )
    linear = True
    for t in range(space.n):
        pi_e = qs.project(space.basis_vector(t))
        small = CliffordElement.from_vector(qs.space, pi_e)
        big = CliffordElement.from_vector(space, space.basis_vector(t))
        for xi in list(i_quotient.ev_basis) + list(i_quotient.odd_basis):
            lhs = multiply(_embed_element(space, section_cols, multiply(small, xi)), tail)
            rhs = multiply(big, multiply(_embed_element(space, section_cols, xi), tail))
            if lhs != rhs:
                linear = False
    return ConeVerdict(
        dim_u=d,
        parity=d % 2,
        total=total,
        map_ev=map_ev,
        map_odd=map_odd,
        bijective=bijective,
        linear=linear,
    )


def sample_quadric_points(space: QuadraticSpace, seed: int = 20103, extra: int = 24):
    """Deterministic rational points on the quadric: coordinate vectors,
    pairwise sums/differences, and seeded points found by solving q = 0 on
    random small-integer lines."""
    import random as _random

    from .quadform import _rational_sqrt

    n = space.n
    points = []
    seen = set()

    def push(v):
        if all(x == 0 for x in v):
            return
        # projective dedup: normalize by the first nonzero coordinate
        lead = next(x for x in v if x)
        key = tuple(x / lead for x in v)
        if key not in seen:
            seen.add(key)
            points.append(tuple(v))

    basis = [space.basis_vector(i) for i in range(n)]
    for v in basis:
        if space.q(v) == 0:
            push(v)
    for i in range(n):
        for j in range(i + 1, n):
            for s in (1, -1):
                v = tuple(x + s * y for x, y in zip(basis[i], basis[j]))
                if space.q(v) == 0:
                    push(v)
    rng = _random.Random(seed)
    attempts = 0
    found = 0
    while found < extra and attempts < 40 * extra:
        attempts += 1
        a = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
        b = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
        qa = space.q(a)
        qb = space.q(b)
        bb = 2 * space.b(a, b)
        roots = []
        if qb == 0:
            if bb != 0:
                roots.append(Fraction(-qa, bb))
        else:
            disc = bb * bb - 4 * qb * qa
            root = _rational_sqrt(disc)
            if root is not None:
                roots.extend({Fraction(-bb - root, 2 * qb), Fraction(-bb + root, 2 * qb)})
        for t in sorted(roots):
            v = tuple(x + t * y for x, y in zip(a, b))
            if any(v) and space.q(v) == 0:
                push(v)
                found += 1
    return points


class EquivarianceVerdict:
    __slots__ = ("parity", "target_shifted", "bijective", "linear", "twisted")

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw.get(k))

    @property
    def ok(self) -> bool:
        return bool(self.bijective and self.linear and self.twisted)


def equivariance_check(g: GroupElement, i: IdealModule) -> EquivarianceVerdict:
    """Verify that right multiplication by g^{-1} is a Cl-linear bijection
    onto the module of gWg^{-1} (shifted for odd g) and that conjugation
    satisfies the twisted commuting square with the reflected vectors."""
    space = i.space
    w_prime = conjugate_subspace(g, i.w)
    iprime = build_ideal(space, w_prime)
    par = g.parity
    target = shift(iprime) if par else iprime
    ginv = g.inverse_element
    gelt = g.as_element

    def rho(src_par):
        basis = i.ev_basis if src_par == 0 else i.odd_basis
        cols = []
        for xi in basis:
            image = multiply(xi, ginv)
            c = target.coords_in(src_par, image)
            if c is None:
                raise SpanError("right multiplication misses the target", witness=image)
            cols.append(c)
        dim = target.ev_dim if src_par == 0 else target.odd_dim
        return Mat.from_cols(cols) if cols else Mat.zeros(dim, 0)

    rho_ev = rho(0)
    rho_odd = rho(1)
    bijective = (
        mat_invertible(rho_ev) is not None and mat_invertible(rho_odd) is not None
    )
    linear = True
    for t in range(space.n):
        if target.act_ev[t] @ rho_ev != rho_odd @ i.act_ev[t]:
            linear = False
        if target.act_odd[t] @ rho_odd != rho_ev @ i.act_odd[t]:
            linear = False

    # twisted square: conjugation sigma(xi) = g xi g^{-1} lands in the
    # unshifted module of gWg^{-1} and intertwines phi(v) with phi'(gvg^{-1})
    def sigma(src_par):
        basis = i.ev_basis if src_par == 0 else i.odd_basis
        cols = []
        for xi in basis:
            image = multiply(gelt, multiply(xi, ginv))
            c = iprime.coords_in(src_par, image)
            if c is None:
                raise SpanError("conjugation misses the target", witness=image)
            cols.append(c)
        dim = iprime.ev_dim if src_par == 0 else iprime.odd_dim
        return Mat.from_cols(cols) if cols else Mat.zeros(dim, 0)

    sig_ev = sigma(0)
    sig_odd = sigma(1)
    twisted = True
    for t in range(space.n):
        gv = g.conjugate_vector(space.basis_vector(t))
        phi_prime_gv = Mat.zeros(iprime.odd_dim, iprime.ev_dim)
        for j, x in enumerate(gv):
            if x:
                phi_prime_gv = phi_prime_gv + iprime.act_ev[j].scale(x)
        if phi_prime_gv @ sig_ev != sig_odd @ i.act_ev[t]:
            twisted = False
    return EquivarianceVerdict(
        parity=par,
        target_shifted=bool(par),
        bijective=bijective,
        linear=linear,
        twisted=twisted,
    )
