import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ejump import localring
from ejump.errors import ArityMismatch, NotContained, NotPrime, ZeroDivisorDetected
from ejump.ff_arith import IdealPresentation, MultiPoly, poly_from_text, render_poly
from ejump.instances import (
    cusp_char2,
    cusp_char3,
    random_bound_instance,
    random_separable_point_instance,
)
from ejump.localring import ClosedPoint, base_change_point, edim_at_point
from ejump.tower import BaseField


def simple_point(p=2, d=("t",), varnames=("y", "x"), gens=("y", "x^2 + t")):
    base = BaseField(p, d)
    field = base.field
    return base, ClosedPoint(
        base, varnames, tuple(poly_from_text(field, varnames, g) for g in gens)
    )


class TestClosedPoint:
    def test_residue_degree(self):
        _, P = simple_point()
        assert P.degrees() == [1, 2]
        assert P.residue_degree() == 2

    def test_non_monic_rejected(self):
        base = BaseField(2, ("t",))
        field = base.field
        bad = poly_from_text(field, ("x",), "t*x + 1")
        with pytest.raises(ArityMismatch):
            ClosedPoint(base, ("x",), (bad,))

    def test_later_variable_rejected(self):
        base = BaseField(2, ("t",))
        field = base.field
        u1 = poly_from_text(field, ("x", "y"), "x + y")
        u2 = poly_from_text(field, ("x", "y"), "y")
        with pytest.raises(ArityMismatch):
            ClosedPoint(base, ("x", "y"), (u1, u2))

    def test_residue_tower_images(self):
        _, P = simple_point()
        kappa, images = P.residue_tower()
        assert kappa.height == 1
        y_img, x_img = images
        assert y_img.is_zero
        assert x_img * x_img == kappa.base_var("t")


class TestEdimExamples:
    def test_cusp_point_before(self):
        I, P = cusp_char2()
        assert edim_at_point(I, P) == 1
        assert localring.ecodim_at_point(I, P) == 0

    def test_line_point(self):
        base = BaseField(2, ("t",))
        field = base.field
        x = MultiPoly.gen(field, 1, 0)
        I = IdealPresentation(field, ("x",), (MultiPoly.zero(field, 1),))
        P = ClosedPoint(base, ("x",), (x,))
        assert edim_at_point(I, P) == 1
        assert localring.ecodim_at_point(I, P) == 0

    def test_plane_origin(self):
        base = BaseField(3, ("t",))
        field = base.field
        x = MultiPoly.gen(field, 2, 0)
        y = MultiPoly.gen(field, 2, 1)
        I = IdealPresentation(field, ("x", "y"), (MultiPoly.zero(field, 2),))
        P = ClosedPoint(base, ("x", "y"), (x, y))
        assert edim_at_point(I, P) == 2
        assert localring.ecodim_at_point(I, P) == 0

    def test_not_contained(self):
        base = BaseField(2, ("t",))
        field = base.field
        I = IdealPresentation(field, ("x",), (poly_from_text(field, ("x",), "x + 1"),))
        P = ClosedPoint(base, ("x",), (MultiPoly.gen(field, 1, 0),))
        with pytest.raises(NotContained):
            edim_at_point(I, P)


class TestBaseChangePoint:
    def test_cusp_height_one(self):
        I, P = cusp_char2()
        nI, nP, nb = base_change_point(I, P, {"t": 1})
        assert nb.varnames == ("s",)
        assert [render_poly(g, nI.varnames) for g in nI.generators] == ["y^3 + x^2 + (s^2)"]
        assert [render_poly(g, nP.varnames) for g in nP.generators] == ["y", "x + s"]

    def test_cusp_exponent_two(self):
        I, P = cusp_char2()
        nI, nP, _ = base_change_point(I, P, {"t": 2})
        assert [render_poly(g, nI.varnames) for g in nI.generators] == ["y^3 + x^2 + (s^4)"]
        assert [render_poly(g, nP.varnames) for g in nP.generators] == ["y", "x + (s^2)"]

    def test_identity_transform(self):
        I, P = cusp_char2()
        nI, nP, nb = base_change_point(I, P, {"t": 0})
        assert nI is I and nP is P and nb == P.base


class TestJumpReports:
    def test_cusp_char2(self):
        I, P = cusp_char2()
        report = localring.ejump_at_point(I, P, {"t": 1})
        assert report.edim_before == 1
        assert report.edim_after == 2
        assert report.ejump == 1
        assert report.ecodim_after == 1
        assert report.bound_lemma == 1
        assert report.bound_theorem == 1
        assert report.all_satisfied()

    def test_cusp_char3(self):
        I, P = cusp_char3()
        report = localring.ejump_at_point(I, P, {"t": 1})
        assert report.ejump == 1
        assert report.ecodim_after == 1
        assert report.bound_theorem == 1
        assert report.all_satisfied()

    def test_separable_point_no_jump(self):
        base = BaseField(5, ("t",))
        field = base.field
        varnames = ("x", "y")
        I = IdealPresentation(
            field, varnames, (poly_from_text(field, varnames, "x^2 + y^3 + t"),)
        )
        P = ClosedPoint(
            base,
            varnames,
            (
                poly_from_text(field, varnames, "x - 1"),
                poly_from_text(field, varnames, "y^3 + t + 1"),
            ),
        )
        report = localring.ejump_at_point(I, P, {"t": 1})
        assert report.ejump == 0
        assert report.bound_theorem == 0
        assert report.all_satisfied()

    def test_strict_mode_passes_on_sound_input(self):
        I, P = cusp_char2()
        report = localring.verify_bounds(I, P, {"t": 1}, strict=True)
        assert report.all_satisfied()


class TestHeightOneStability:
    def test_cusp_fixtures(self):
        for I, P in (cusp_char2(), cusp_char3()):
            report = localring.verify_height_one_stability(I, P, "t", 3)
            assert report.jumps == (1, 1, 1)
            assert report.stable

    def test_separable_point_never_jumps(self):
        from ejump.ff_arith import poly_from_text
        from ejump.tower import BaseField

        base = BaseField(5, ("t",))
        field = base.field
        varnames = ("x", "y")
        I = localring.IdealPresentation(
            field, varnames, (poly_from_text(field, varnames, "x^2 + y^3 + t"),)
        )
        P = localring.ClosedPoint(
            base,
            varnames,
            (
                poly_from_text(field, varnames, "x - 1"),
                poly_from_text(field, varnames, "y^3 + t + 1"),
            ),
        )
        report = localring.verify_height_one_stability(I, P, "t", 3)
        assert report.jumps == (0, 0, 0)
        assert report.stable


class TestJetOracle:
    def test_disagrees_at_inseparable_point(self):
        I, P = cusp_char2()
        assert edim_at_point(I, P) == 1
        assert localring.classical_jacobian_edim(I, P) == 2

    @given(st.integers(0, 2**32 - 1))
    def test_agrees_at_separable_points(self, seed):
        rng = random.Random(seed)
        I, P = random_separable_point_instance(rng)
        assert edim_at_point(I, P) == localring.classical_jacobian_edim(I, P)


@given(st.integers(0, 2**32 - 1))
def test_bound_chain_random(seed):
    rng = random.Random(seed)
    I, P, exponents = random_bound_instance(rng)
    report = localring.ejump_at_point(I, P, exponents)
    assert report.all_satisfied(), report.to_dict()


def test_zero_divisor_translates_to_not_prime():
    with pytest.raises(NotPrime):
        with localring._not_prime_on_zero_divisor():
            raise ZeroDivisorDetected("u")
