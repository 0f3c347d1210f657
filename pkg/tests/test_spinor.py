from fractions import Fraction

import pytest

from spinorsheaf.clifford import CliffordElement, GroupElement
from spinorsheaf.errors import PreconditionError
from spinorsheaf.exactalg import Mat, vec
from spinorsheaf.fixtures import get_fixture, grid_spaces
from spinorsheaf.quadform import Subspace, quotient_space, radical_basis, standardize
from spinorsheaf.spinor import (
    FactorizationPair,
    build_factorization,
    build_ideal,
    cone_compare,
    direct_sum,
    dual_factorization,
    equivariance_check,
    family_indicator,
    fiber_rank,
    flag_sequence,
    recover_intersection_with_radical,
    restrict_compare,
    sample_quadric_points,
    shift,
    zero_module,
)


def e(n, i):
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def module(label):
    fx = get_fixture(label)
    return build_ideal(fx.space, fx.w)


class TestBuildIdeal:
    def test_fh2_bases(self):
        i = module("F-H2")
        assert i.ev_dim == i.odd_dim == 1
        space = i.space
        assert i.ev_basis[0] == CliffordElement.monomial(space, (0, 1))
        assert i.odd_basis[0] == CliffordElement.monomial(space, (1,))

    def test_fh6_size(self):
        i = module("F-H6")
        assert i.ev_dim == i.odd_dim == 4

    def test_fqs_size(self):
        assert module("F-QS").ev_dim == 2

    def test_dimension_law_on_grid(self):
        for space, w in grid_spaces(5):
            i = build_ideal(space, w)
            assert i.ev_dim == i.odd_dim == 1 << (space.n - w.dim - 1)

    def test_rejects_zero_and_nonisotropic(self):
        fx = get_fixture("F-H6")
        with pytest.raises(PreconditionError):
            build_ideal(fx.space, Subspace(fx.space, []))
        with pytest.raises(PreconditionError):
            build_ideal(fx.space, Subspace(fx.space, [vec((1, 0, 0, 1, 0, 0))]))


class TestShift:
    def test_involution(self):
        i = module("F-H6")
        assert shift(shift(i)).same_module(i)

    def test_swaps_pieces(self):
        i = module("F-H2")
        s = shift(i)
        assert s.ev_basis == i.odd_basis
        assert s.odd_basis == i.ev_basis
        assert s.shift == 1


class TestFactorization:
    def test_fh2_forms(self):
        mf = build_factorization(module("F-H2"))
        assert mf.N == 1
        # phi = [x1], psi = [x0]
        assert mf.phi.coeff[0] == Mat.zeros(1, 1)
        assert mf.phi.coeff[1] == Mat.identity(1)
        assert mf.psi.coeff[0] == Mat.identity(1)
        assert mf.psi.coeff[1] == Mat.zeros(1, 1)

    def test_identity_exact_on_fixtures(self):
        for label in ("F-H2", "F-QS", "F-QSb", "F-C5", "F-H6", "F-H6a"):
            mf = build_factorization(module(label))
            assert mf.check_identity()

    def test_identity_on_grid(self):
        for space, w in grid_spaces(5):
            mf = build_factorization(build_ideal(space, w))
            assert mf.check_identity()

    def test_phi_matches_left_action(self):
        from spinorsheaf.clifford import left_action_matrix

        i = module("F-H6")
        mf = build_factorization(i)
        got = left_action_matrix(e(6, 3), list(i.ev_basis), list(i.odd_basis))
        assert got == mf.phi.coeff[3]

    def test_identity_check_is_strict(self):
        from spinorsheaf.exactalg import LinMat

        mf = build_factorization(module("F-QS"))
        coeff = list(mf.phi.coeff)
        rows = coeff[0].row_lists()
        rows[0][0] += 1
        coeff[0] = Mat.from_rows(rows)
        bad = FactorizationPair(mf.space, LinMat(4, coeff), mf.psi)
        assert not bad.check_identity()


class TestFiberRank:
    def test_fqs_strata(self):
        mf = build_factorization(module("F-QS"))
        # e2 lies in w cap K: the whole fiber survives
        assert fiber_rank(mf, e(4, 2)) == (0, 2)
        # e1 lies in w off the radical
        assert fiber_rank(mf, e(4, 1)) == (1, 1)

    def test_fh6_generic_point(self):
        mf = build_factorization(module("F-H6"))
        assert fiber_rank(mf, e(6, 0)) == (2, 2)

    def test_rejects_bad_points(self):
        mf = build_factorization(module("F-H6"))
        with pytest.raises(PreconditionError):
            fiber_rank(mf, vec((1, 0, 0, 1, 0, 0)))  # q = 1
        with pytest.raises(PreconditionError):
            fiber_rank(mf, vec((0,) * 6))

    def test_stratification_on_sampled_points(self):
        for label in ("F-QS", "F-QSb", "F-C5", "F-H6", "F-H6a"):
            fx = get_fixture(label)
            i = build_ideal(fx.space, fx.w)
            mf = build_factorization(i)
            c = i.codim
            rad = radical_basis(fx.space)
            from spinorsheaf.quadform import sub_intersection

            wk = sub_intersection(fx.w, rad)
            for v in sample_quadric_points(fx.space):
                _, fiber = fiber_rank(mf, v)
                if wk.contains(v):
                    assert fiber == 1 << (c - 1)
                else:
                    assert fiber == 1 << (c - 2)

    def test_codim_one_components(self):
        # rank-2 surface: Q = PW cup PW'; the 1x1 factorization vanishes on
        # exactly one of the two hyperplanes
        mf = build_factorization(module("F-H2"))
        r0, f0 = fiber_rank(mf, e(2, 0))
        r1, f1 = fiber_rank(mf, e(2, 1))
        assert sorted((f0, f1)) == [0, 1]


class TestDual:
    def test_double_transpose(self):
        mf = build_factorization(module("F-QS"))
        dd = dual_factorization(dual_factorization(mf))
        assert dd.phi == mf.phi and dd.psi == mf.psi

    def test_fh2_self(self):
        mf = build_factorization(module("F-H2"))
        d = dual_factorization(mf)
        assert d.phi == mf.phi and d.psi == mf.psi

    def test_dual_is_factorization(self):
        for label in ("F-QS", "F-H6"):
            mf = build_factorization(module(label))
            assert dual_factorization(mf).check_identity()

    def test_parity_equivalence(self):
        from spinorsheaf.homalg import factorization_equivalent

        # codim 3 (odd): dual pair equivalent to (phi, psi)
        mf = build_factorization(module("F-H6"))
        dual = dual_factorization(mf)
        cert = factorization_equivalent(dual, mf)
        assert cert is not None
        # codim 2 (even): dual pair equivalent to (psi, phi)
        mf2 = build_factorization(module("F-QS"))
        dual2 = dual_factorization(mf2)
        swapped = FactorizationPair(mf2.space, mf2.psi, mf2.phi)
        assert factorization_equivalent(dual2, swapped) is not None
        assert factorization_equivalent(dual2, mf2) is None


class TestFlag:
    def test_fh6_split(self):
        fx = get_fixture("F-H6")
        fl = flag_sequence(fx.space, fx.w, fx.flag_drop)
        assert fl.exact
        assert fl.split_subspace and fl.split_module and fl.split_agree
        assert fl.outer.ev_dim == 2 * fl.inner.ev_dim

    def test_fqs_nonsplit(self):
        fx = get_fixture("F-QS")
        fl = flag_sequence(fx.space, fx.w, fx.flag_drop)
        assert fl.exact
        assert not fl.split_subspace and not fl.split_module and fl.split_agree

    def test_split_iso_to_direct_sum(self):
        from spinorsheaf.homalg import is_isomorphic

        fx = get_fixture("F-H6")
        fl = flag_sequence(fx.space, fx.w, fx.flag_drop)
        target = direct_sum(fl.inner, shift(fl.inner))
        assert is_isomorphic(fl.outer, target).kind == "ISO"

    def test_degenerate_inputs(self):
        fx = get_fixture("F-H6")
        with pytest.raises(PreconditionError):
            flag_sequence(fx.space, fx.w, vec((0,) * 6))
        with pytest.raises(PreconditionError):
            flag_sequence(fx.space, fx.w, e(6, 0))  # not in w
        fx2 = get_fixture("F-H2")
        with pytest.raises(PreconditionError):
            flag_sequence(fx2.space, fx2.w, e(2, 1))  # dim w = 1

    def test_grid_split_agreement(self):
        for space, w in grid_spaces(4):
            if w.dim < 2:
                continue
            for drop in w.basis:
                fl = flag_sequence(space, w, drop)
                assert fl.exact
                assert fl.split_agree


class TestRestrict:
    def test_fh6_hyperplane(self):
        fx = get_fixture("F-H6")
        i = build_ideal(fx.space, fx.w)
        u = Subspace(fx.space, fx.section_subspace)
        verdict = restrict_compare(i, u)
        assert verdict.kind == "ISOMORPHIC"
        assert verdict.parity == 1  # codim 1: matches T
        assert verdict.bijective and verdict.linear

    def test_full_space(self):
        fx = get_fixture("F-H6")
        i = build_ideal(fx.space, fx.w)
        u = Subspace(fx.space, [e(6, t) for t in range(6)])
        verdict = restrict_compare(i, u)
        assert verdict.kind == "ISOMORPHIC"
        assert verdict.parity == 0
        assert verdict.bijective and verdict.linear

    def test_reduces_to_free(self):
        fx = get_fixture("F-H6")
        i = build_ideal(fx.space, fx.w)
        u = Subspace(fx.space, [e(6, 0), e(6, 1), e(6, 2)])
        verdict = restrict_compare(i, u)
        assert verdict.kind == "REDUCES_TO_FREE"

    def test_non_transverse_rejected(self):
        fx = get_fixture("F-H6")
        i = build_ideal(fx.space, fx.w)
        with pytest.raises(PreconditionError):
            restrict_compare(i, Subspace(fx.space, [e(6, 0), e(6, 1)]))


class TestCone:
    def test_fc5_cone(self):
        fx = get_fixture("F-C5")
        qs = quotient_space(fx.space, Subspace(fx.space, fx.cone_mod))
        wbar = Subspace(qs.space, [qs.project(fx.w.basis[0])])
        iq = build_ideal(qs.space, wbar)
        verdict = cone_compare(iq, qs)
        assert verdict.dim_u == 1
        assert verdict.parity == 1
        assert verdict.bijective and verdict.linear

    def test_zero_vertex(self):
        fx = get_fixture("F-H6")
        qs = quotient_space(fx.space, Subspace(fx.space, []))
        iq = build_ideal(qs.space, Subspace(qs.space, [qs.project(v) for v in fx.w.basis]))
        verdict = cone_compare(iq, qs)
        assert verdict.dim_u == 0
        assert verdict.parity == 0
        assert verdict.bijective and verdict.linear

    def test_vertex_outside_radical_rejected(self):
        fx = get_fixture("F-C5")
        with pytest.raises(PreconditionError):
            quotient_space(fx.space, Subspace(fx.space, [e(5, 0)]))


class TestRecover:
    def test_values(self):
        assert recover_intersection_with_radical(module("F-H6")).dim == 0
        got = recover_intersection_with_radical(module("F-QS"))
        assert got.dim == 1 and got.contains(e(4, 2))
        got = recover_intersection_with_radical(module("F-C5"))
        assert got.dim == 1 and got.contains(e(5, 4))

    def test_matches_subspace_computation_on_grid(self):
        from spinorsheaf.quadform import sub_intersection

        for space, w in grid_spaces(4):
            i = build_ideal(space, w)
            expected = sub_intersection(w, radical_basis(space))
            assert recover_intersection_with_radical(i).same_span(expected)


class TestFamilyIndicator:
    def test_fqs_kills_odd(self):
        fx = get_fixture("F-QS")
        std = standardize(fx.space, fx.w)
        i = build_ideal(std.space_std, std.w_std)
        assert family_indicator(i) == "ODD"

    def test_fh2_kills_even(self):
        i = module("F-H2")  # dim w odd, already standard coordinates
        assert family_indicator(i) == "EVEN"

    def test_shift_flips(self):
        fx = get_fixture("F-QS")
        std = standardize(fx.space, fx.w)
        i = build_ideal(std.space_std, std.w_std)
        assert family_indicator(shift(i)) == "EVEN"

    def test_preconditions(self):
        i = module("F-H6a")  # pi(w) not maximal
        with pytest.raises(PreconditionError):
            family_indicator(i)


class TestEquivariance:
    def test_empty_product(self):
        i = module("F-H6")
        g = GroupElement(i.space, [])
        v = equivariance_check(g, i)
        assert v.ok and not v.target_shifted

    def test_even_pair(self):
        i = module("F-H6")
        g = GroupElement(i.space, [vec((1, 0, 0, 1, 0, 0)), vec((0, 1, 0, 0, 1, 0))])
        v = equivariance_check(g, i)
        assert v.ok and not v.target_shifted

    def test_single_odd_factor(self):
        i = module("F-H6")
        g = GroupElement(i.space, [vec((1, 0, 0, 1, 0, 0))])
        v = equivariance_check(g, i)
        assert v.ok and v.target_shifted

    def test_other_fixtures(self):
        for label, factors in (
            ("F-QS", [vec((1, 1, 0, 0)), vec((1, -1, 0, 0))]),
            ("F-C5", [vec((1, 0, 1, 0, 0)), vec((0, 1, 0, 1, 0))]),
        ):
            i = module(label)
            g = GroupElement(i.space, factors)
            assert equivariance_check(g, i).ok


class TestDirectSum:
    def test_sum_with_zero(self):
        from spinorsheaf.homalg import is_isomorphic

        i = module("F-QS")
        s = direct_sum(i, zero_module(i.space))
        assert (s.ev_dim, s.odd_dim) == (i.ev_dim, i.odd_dim)
        assert is_isomorphic(s, i).kind == "ISO"

    def test_block_identity(self):
        from spinorsheaf.exactalg import LinMat

        a = module("F-QS")
        b = shift(module("F-QS"))
        s = direct_sum(a, b)
        pair = FactorizationPair(
            s.space, LinMat(s.space.n, s.act_ev), LinMat(s.space.n, s.act_odd)
        )
        assert pair.check_identity()


class TestSampler:
    def test_points_lie_on_quadric(self):
        for label in ("F-H6", "F-QS", "F-C5"):
            space = get_fixture(label).space
            pts = sample_quadric_points(space)
            assert len(pts) >= 4
            for v in pts:
                assert space.q(v) == 0

    def test_deterministic(self):
        space = get_fixture("F-H6").space
        assert sample_quadric_points(space) == sample_quadric_points(space)
