from hypothesis import given

from ejump import kaehler
from ejump.tower import (
    BaseField,
    FieldTower,
    adjoin_p_root,
    algebraic_layer,
    tower_extend,
    transcendental_layer,
)

from .strategies import towers


def sqrt_t():
    k = FieldTower(BaseField(2, ("t",)))
    return adjoin_p_root(k, k.base_var("t"), 1, name="u")


class TestRankExamples:
    def test_inseparable_over_base_rank_zero(self):
        # relation d(u^2 - t) over the base kills nothing: 2u = 0
        assert kaehler.relative_jacobian_rank(sqrt_t(), "base") == 0

    def test_inseparable_over_prime_rank_one(self):
        # dt = d(u^2) = 0 forces one relation among dt, du
        assert kaehler.relative_jacobian_rank(sqrt_t(), "prime") == 1

    def test_transcendental_no_relations(self):
        k = FieldTower(BaseField(3, ("t",)))
        K = tower_extend(k, transcendental_layer("y"))
        assert kaehler.relative_jacobian_rank(K, "base") == 0


class TestPdegTrdeg:
    def test_rational_base_over_prime(self):
        k = FieldTower(BaseField(2, ("t",)))
        assert kaehler.pdeg(k, "prime") == 1
        assert kaehler.trdeg(k, "prime") == 1

    def test_inseparable_pdeg_one(self):
        assert kaehler.pdeg(sqrt_t(), "base") == 1
        assert kaehler.trdeg(sqrt_t(), "base") == 0

    def test_separable_pdeg_zero(self):
        k = FieldTower(BaseField(5, ("t",)))
        K = tower_extend(k, algebraic_layer(k, "u", [-(k.base_var("t") + k.one), k.zero]))
        assert kaehler.pdeg(K, "base") == 0

    def test_two_variables(self):
        k = FieldTower(BaseField(3, ("t1", "t2")))
        K = tower_extend(k, algebraic_layer(k, "u", [-k.base_var("t1"), k.zero]))
        assert kaehler.pdeg(K, "prime") == 2
        assert kaehler.trdeg(K, "prime") == 2


class TestPredictedEdim:
    def test_sqrt_t(self):
        assert kaehler.schroer_predicted_edim(sqrt_t(), "base") == 1

    def test_trivial_extension(self):
        k = FieldTower(BaseField(2, ("t",)))
        assert kaehler.schroer_predicted_edim(k, "base") == 0

    def test_two_variable_inseparable(self):
        k = FieldTower(BaseField(2, ("t1", "t2")))
        K = tower_extend(k, algebraic_layer(k, "u", [-k.base_var("t1"), k.zero]))
        assert kaehler.schroer_predicted_edim(K, "base") == 1


class TestDifferentialIsZero:
    def test_examples(self):
        K = sqrt_t()
        assert kaehler.differential_is_zero(K.base_var("t"))
        k = FieldTower(BaseField(2, ("t",)))
        t = k.base_var("t")
        assert not kaehler.differential_is_zero(t)
        assert not kaehler.differential_is_zero(t * t + t)
        assert kaehler.differential_is_zero(t * t)


def test_presentation_shape():
    pres = kaehler.jacobian_presentation(sqrt_t(), "prime")
    assert pres.generators == ("t", "u")
    assert pres.relation_layers == ("u",)
    assert len(pres.matrix) == 1 and len(pres.matrix[0]) == 2


@given(towers())
def test_perfect_base_equality(K):
    assert kaehler.pdeg(K, "prime") == kaehler.trdeg(K, "prime")


@given(towers())
def test_monotone_chain(K):
    predicted = kaehler.schroer_predicted_edim(K, "base")
    assert 0 <= predicted <= kaehler.pdeg(K, "base")
