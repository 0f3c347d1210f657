from fractions import Fraction

import pytest

from spinorsheaf.clifford import CliffordElement
from spinorsheaf.errors import PreconditionError
from spinorsheaf.exactalg import Mat, UniPoly
from spinorsheaf.fixtures import get_fixture
from spinorsheaf.homalg import (
    ann_in_v,
    cohomology_dim,
    euler_characteristic_matches,
    factorization_equivalent,
    hom_space,
    idempotent_probe,
    irreducibility_check,
    is_isomorphic,
    pair_view,
    predict_simplicity,
    sheaf_numerics,
    simplicity_verdict,
    submodule_closure,
)
from spinorsheaf.quadform import QuadraticSpace, Subspace
from spinorsheaf.spinor import (
    build_factorization,
    build_ideal,
    flag_sequence,
    shift,
)


def e(n, i):
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def module(label):
    fx = get_fixture(label)
    return build_ideal(fx.space, fx.w)


def odd5_module():
    half = Fraction(1, 2)
    g = [[Fraction(0)] * 5 for _ in range(5)]
    g[0][0] = Fraction(1)
    for a, b in ((1, 3), (2, 4)):
        g[a][b] = half
        g[b][a] = half
    sp = QuadraticSpace(Mat.from_rows(g))
    return build_ideal(sp, Subspace(sp, [e(5, 3), e(5, 4)]))


class TestHomSpace:
    def test_end_dims(self):
        assert hom_space(module("F-H6"), module("F-H6")).dimension == 1
        assert hom_space(module("F-QS"), module("F-QS")).dimension == 1

    def test_split_flag_outer_end(self):
        fx = get_fixture("F-H6")
        fl = flag_sequence(fx.space, fx.w, fx.flag_drop)
        assert hom_space(fl.outer, fl.outer).dimension == 2

    def test_companion_identity(self):
        for label in ("F-H2", "F-QS", "F-C5", "F-H6"):
            i = module(label)
            h = hom_space(i, i)
            assert h.companion_identity_holds
            assert h.crosscheck_dimension == h.dimension

    def test_intertwining_equations_hold(self):
        a = module("F-QS")
        b = shift(a)
        h = hom_space(a, b)
        for A, B in h.basis:
            for t in range(a.space.n):
                assert A @ a.act_ev[t] == b.act_ev[t] @ B
                assert B @ a.act_odd[t] == b.act_odd[t] @ A

    def test_space_mismatch(self):
        with pytest.raises(PreconditionError):
            hom_space(module("F-H6"), module("F-QS"))

    def test_hom_between_different_w(self):
        # split additivity: Hom(S', S) for the flag has dimension 1
        fx = get_fixture("F-H6")
        fl = flag_sequence(fx.space, fx.w, fx.flag_drop)
        assert hom_space(fl.outer, fl.inner).dimension == 1
        assert hom_space(fl.inner, fl.outer).dimension == 1


class TestIsIsomorphic:
    def test_shift_iso_small_pi(self):
        i = module("F-H6a")
        v = is_isomorphic(i, shift(i))
        assert v.kind == "ISO"
        assert v.certificate is not None

    def test_shift_not_iso_maximal_pi(self):
        for label in ("F-H6", "F-QS"):
            i = module(label)
            v = is_isomorphic(i, shift(i))
            assert v.kind == "NOT_ISO"
            assert v.reason == "family indicator"

    def test_distinct_radical_intersection(self):
        v = is_isomorphic(module("F-QS"), module("F-QSb"))
        assert v.kind == "NOT_ISO"
        assert "radical" in v.reason

    def test_self_iso(self):
        i = module("F-C5")
        assert is_isomorphic(i, i).kind == "ISO"

    def test_symmetry_on_fixtures(self):
        mods = {label: module(label) for label in ("F-QS", "F-QSb")}
        mods["F-QS-shift"] = shift(mods["F-QS"])
        labels = list(mods)
        for x in labels:
            for y in labels:
                assert (
                    is_isomorphic(mods[x], mods[y]).kind
                    == is_isomorphic(mods[y], mods[x]).kind
                )

    def test_iso_certificate_is_intertwiner(self):
        i = module("F-H6a")
        v = is_isomorphic(i, shift(i))
        A, B = v.certificate["A"], v.certificate["B"]
        b = shift(i)
        for t in range(i.space.n):
            assert A @ i.act_ev[t] == b.act_ev[t] @ B


class TestAnnihilator:
    def test_matches_radical_intersections(self):
        assert ann_in_v(module("F-H6")).dim == 0
        got = ann_in_v(module("F-QS"))
        assert got.dim == 1 and got.contains(e(4, 2))


class TestSimplicity:
    def test_fixture_trichotomy(self):
        expected = {
            "F-H2": (1, "maximal"),
            "F-QS": (1, "corank-one-in-radical"),
            "F-QSb": (1, "corank-one-in-radical"),
            "F-C5": (2, "otherwise"),
            "F-H6": (1, "maximal"),
        }
        for label, (dim, case) in expected.items():
            sv = simplicity_verdict(module(label))
            assert sv.end_dim == dim
            assert sv.case == case
            assert sv.agree

    def test_fh6a_not_simple(self):
        sv = simplicity_verdict(module("F-H6a"))
        assert sv.end_dim == 8
        assert not sv.computed_simple and not sv.predicted_simple
        assert sv.agree

    def test_predict_only(self):
        fx = get_fixture("F-H6")
        assert predict_simplicity(fx.space, fx.w) == (True, "maximal")


class TestClosure:
    def test_generator_generates(self):
        i = module("F-H6")
        cl = submodule_closure(i, i.generator)
        assert (cl.ev_dim, cl.odd_dim) == (4, 4)

    def test_zero_seed(self):
        i = module("F-H6")
        cl = submodule_closure(i, CliffordElement.zero(i.space))
        assert (cl.ev_dim, cl.odd_dim) == (0, 0)

    def test_fqs_proper_submodule(self):
        i = module("F-QS")
        seed = CliffordElement.monomial(i.space, (1, 2, 3))
        cl = submodule_closure(i, seed)
        assert (cl.ev_dim, cl.odd_dim) == (1, 1)

    def test_outside_seed_rejected(self):
        i = module("F-QS")
        with pytest.raises(PreconditionError):
            submodule_closure(i, CliffordElement.monomial(i.space, (0,)))


class TestIrreducibility:
    def test_fh6_certificate(self):
        v = irreducibility_check(module("F-H6"))
        assert v.kind == "IRREDUCIBLE"
        assert "w kills the generator" in v.certificate["identities"]

    def test_odd_rank_certificate(self):
        v = irreducibility_check(odd5_module())
        assert v.kind == "IRREDUCIBLE"
        assert any("anisotropic" in c for c in v.certificate["identities"])

    def test_reducible_witnesses(self):
        for label in ("F-QS", "F-H6a"):
            v = irreducibility_check(module(label))
            assert v.kind == "REDUCIBLE"
            assert v.witness["ev_dim"] + v.witness["odd_dim"] > 0


class TestNumerics:
    def test_fixture_values(self):
        for label, rank in (("F-QS", 1), ("F-QSb", 1), ("F-C5", 2), ("F-H6", 2)):
            num = sheaf_numerics(build_factorization(module(label)))
            assert not num.torsion_flag
            assert num.rank == rank
            assert num.slope == 1

    def test_fh6_closed_form(self):
        num = sheaf_numerics(build_factorization(module("F-H6")))
        # 4 * (C(t+5,5) - C(t+4,5)) = (t+1)(t+2)(t+3)(t+4)/6
        expected = UniPoly([Fraction(4), Fraction(25, 3), Fraction(35, 6),
                            Fraction(5, 3), Fraction(1, 6)])
        assert num.hilbert == expected
        assert num.hilbert(0) == 4

    def test_torsion_flag(self):
        num = sheaf_numerics(build_factorization(module("F-H2")))
        assert num.torsion_flag
        assert num.slope is None


class TestCohomology:
    def test_h0_values(self):
        m6 = build_factorization(module("F-H6"))
        assert cohomology_dim(m6, 0, 0) == 4

    def test_acm_vanishing(self):
        m6 = build_factorization(module("F-H6"))
        for i in (1, 2, 3):
            for t in range(-5, 6):
                assert cohomology_dim(m6, i, t) == 0

    def test_euler_consistency(self):
        for label in ("F-H2", "F-QS", "F-C5", "F-H6"):
            m = build_factorization(module(label))
            num = sheaf_numerics(m)
            for t in range(-5, 6):
                assert euler_characteristic_matches(m, num, t)

    def test_top_cohomology_nonzero_for_negative_twist(self):
        m6 = build_factorization(module("F-H6"))
        assert cohomology_dim(m6, 4, -5) == 4
        assert cohomology_dim(m6, 4, -6) == 20

    def test_window_enforced(self):
        m = build_factorization(module("F-QS"))
        with pytest.raises(PreconditionError):
            cohomology_dim(m, 0, 9)
        with pytest.raises(PreconditionError):
            cohomology_dim(m, 7, 0)


class TestIdempotentProbe:
    def test_split_flag_has_idempotent(self):
        fx = get_fixture("F-H6")
        fl = flag_sequence(fx.space, fx.w, fx.flag_drop)
        end = hom_space(fl.outer, fl.outer)
        assert end.dimension == 2
        probe = idempotent_probe(end)
        assert probe is not None
        A, B = probe["A"], probe["B"]
        assert A @ A == A and B @ B == B

    def test_nonsplit_flag_has_none(self):
        fx = get_fixture("F-QS")
        fl = flag_sequence(fx.space, fx.w, fx.flag_drop)
        end = hom_space(fl.outer, fl.outer)
        assert end.dimension == 2
        assert idempotent_probe(end) is None


class TestFactorizationEquivalence:
    def test_pair_view_roundtrip(self):
        mf = build_factorization(module("F-QS"))
        view = pair_view(mf)
        assert (view.ev_dim, view.odd_dim) == (2, 2)

    def test_self_equivalent(self):
        mf = build_factorization(module("F-H6"))
        assert factorization_equivalent(mf, mf) is not None
