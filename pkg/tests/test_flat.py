import pytest
from hypothesis import given

from ejump.ff_arith import FractionField, RatFunc
from ejump.flat import FlatAlgebra, FlatLayer, flat_model, frobenius_split, p_power_root
from ejump.tower import BaseField, FieldTower, adjoin_p_root

from .strategies import ratfuncs, towers


def algebra_mod_square_diff():
    """F_2(t)[z]/(z^2 - t^2): has the zero divisor z - t."""
    field = FractionField(2, ("t",))
    t = field.gen(0)
    return field, FlatAlgebra(field, [FlatLayer("z", 2, {(0,): t * t})])


class TestFlatAlgebra:
    def test_dimension_and_basis(self):
        k = FieldTower(BaseField(2, ("t",)))
        K = adjoin_p_root(k, k.base_var("t"), 2, name="q")
        model = flat_model(K)
        assert model.algebra.dimension == 4
        assert len(model.algebra.basis()) == 4

    def test_reduction(self):
        field, alg = algebra_mod_square_diff()
        z = alg.gen(0)
        t = alg.scalar(field.gen(0))
        assert alg.eq(alg.mul(z, z), alg.mul(t, t))

    def test_invert_unit(self):
        field, alg = algebra_mod_square_diff()
        z = alg.gen(0)
        one_plus_z = alg.add(alg.one(), z)  # residue 1 + t != 0: a unit? (1+z)(1+z) = 1+t^2
        inv = alg.invert(one_plus_z)
        assert inv is not None
        assert alg.eq(alg.mul(one_plus_z, inv), alg.one())

    def test_invert_zero_divisor_returns_none(self):
        field, alg = algebra_mod_square_diff()
        z = alg.gen(0)
        zero_divisor = alg.sub(z, alg.scalar(field.gen(0)))  # (z - t)(z + t) = 0
        assert alg.invert(zero_divisor) is None
        assert alg.invert(alg.zero()) is None

    def test_flatten_unflatten_roundtrip(self):
        k = FieldTower(BaseField(3, ("t",)))
        K = adjoin_p_root(k, k.base_var("t"), 1, name="u")
        model = flat_model(K)
        x = (K.gen("u") + K.one) / (K.base_var("t") + K.from_int(2))
        assert model.unflatten(model.flatten(x)) == x


class TestFrobeniusSplit:
    @given(ratfuncs(nonzero=True))
    def test_reassembles(self, f):
        p = f.num.dom.p
        nvars = f.num.arity
        field = FractionField(p, tuple(f"v{i}" for i in range(nvars)))
        pieces = frobenius_split(f, p, nvars)
        total = field.zero
        for mu, piece in pieces.items():
            mono = RatFunc.from_poly(
                type(f.num).from_terms(f.num.dom, nvars, [(mu, 1)])
            )
            total = total + (piece**p) * mono
        assert total == f


class TestPPowerRoot:
    def test_solves_in_nonreduced_algebra(self):
        # x^2 = t^2 has the solutions t + nilpotent; any exact one is accepted
        field, alg = algebra_mod_square_diff()
        t = alg.scalar(field.gen(0))
        target = alg.mul(t, t)
        x = p_power_root(alg, target, 1)
        assert x is not None
        assert alg.eq(alg.pow(x, 2), target)

    def test_no_solution(self):
        field, alg = algebra_mod_square_diff()
        assert p_power_root(alg, alg.scalar(field.gen(0)), 1) is None

    @given(towers(max_layers=2))
    def test_unique_root_in_fields(self, K):
        model = flat_model(K)
        x = K.base_var(K.base.varnames[0]) + K.one
        vec = model.flatten(x ** K.p)
        root = p_power_root(model.algebra, vec, 1)
        assert root is not None
        assert model.unflatten(root) == x
