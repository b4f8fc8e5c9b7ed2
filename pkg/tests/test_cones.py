"""Coherence checks, natural-extension membership, and prevision bounds."""

import random
from fractions import Fraction

import pytest

from desir.cones import (
    DesirCone,
    IncoherentConeError,
    PrevisionValue,
    avoids_nonpositivity,
    is_marginally_desirable,
    lower_prevision,
    membership_report,
    natural_extension_member,
    updated_member,
    upper_prevision,
)
from desir.bernstein import FrequencyVector, multinomial_lpr
from desir.gambles import Gamble, SequenceSpace, count_representation, kernel_basis

F = Fraction
BW = ("b", "w")
SPACE2 = SequenceSpace(BW, 2)


def seq_gamble(space, *values):
    pts = list(space.points())
    assert len(pts) == len(values)
    return Gamble.from_mapping(space, dict(zip(pts, map(F, values))))


def random_gamble(rng, space, lo=-3, hi=3):
    return Gamble.from_function(space, lambda x: F(rng.randint(lo, hi)))


def verify_witness(witness, assessment, lineality):
    """Recompute the claimed non-positive combination from its weights."""
    space = witness.combination.space
    total = Gamble.zero(space)
    for lam, g in zip(witness.generator_weights, assessment):
        total = total + lam * g
    for point, weight in witness.indicator_weights:
        total = total + weight * Gamble.indicator(space, [point])
    for mu, v in zip(witness.lineality_weights, lineality):
        total = total + mu * v
    assert total == witness.combination
    assert total.is_nonpositive()
    normalization = sum(witness.generator_weights, F(0)) + sum(
        (w for _, w in witness.indicator_weights), F(0)
    )
    assert normalization == 1
    assert all(lam >= 0 for lam in witness.generator_weights)
    assert all(w >= 0 for _, w in witness.indicator_weights)


class TestAvoidance:
    def test_empty_assessment_avoids(self):
        report = avoids_nonpositivity((), space=SPACE2)
        assert report.avoids and report.witness is None

    def test_nonpositive_generator_is_caught(self):
        g = seq_gamble(SPACE2, -1, 0, 0, -2)
        report = avoids_nonpositivity([g])
        assert not report.avoids
        verify_witness(report.witness, [g], [])

    def test_single_mixed_generator_avoids(self):
        g = seq_gamble(SPACE2, -3, 1, 1, -3)
        assert avoids_nonpositivity([g]).avoids

    def test_opposed_pair_is_caught(self):
        g = seq_gamble(SPACE2, -3, 1, 1, -3)
        h = seq_gamble(SPACE2, 1, -3, -3, 1)
        report = avoids_nonpositivity([g, h])
        assert not report.avoids
        verify_witness(report.witness, [g, h], [])

    def test_lineality_can_break_avoidance(self):
        # f is fine alone, but subtracting the lineality direction v
        # with weight 1 sends it nonpositive.
        f = seq_gamble(SPACE2, -1, 2, 0, -1)
        v = seq_gamble(SPACE2, 0, 1, 0, 0)
        assert avoids_nonpositivity([f]).avoids
        report = avoids_nonpositivity([f], lineality=[v])
        assert not report.avoids
        verify_witness(report.witness, [f], [v])

    def test_zero_gamble_alone_is_caught(self):
        report = avoids_nonpositivity([Gamble.zero(SPACE2)])
        assert not report.avoids

    def test_space_mismatch_rejected(self):
        g = Gamble.unit(SequenceSpace(BW, 3))
        with pytest.raises(ValueError):
            avoids_nonpositivity([g], space=SPACE2)


class TestMembership:
    def setup_method(self):
        self.g = seq_gamble(SPACE2, -3, 1, 1, -3)
        self.cone = DesirCone(SPACE2, [self.g])

    def test_zero_is_never_a_member(self):
        assert not natural_extension_member(self.cone, Gamble.zero(SPACE2))

    def test_nonnegative_nonzero_is_always_a_member(self):
        rng = random.Random(3)
        for _ in range(20):
            f = Gamble.from_function(SPACE2, lambda x: F(rng.randint(0, 3)))
            if f.is_zero():
                continue
            assert natural_extension_member(self.cone, f)

    def test_generators_are_members(self):
        assert natural_extension_member(self.cone, self.g)

    def test_membership_decomposition_is_exact(self):
        f = self.g + Gamble.indicator(SPACE2, [("b", "b")])
        report = membership_report(self.cone, f)
        assert report.member
        total = Gamble.zero(SPACE2)
        for lam, g in zip(report.generator_weights, self.cone.generators):
            total = total + lam * g
        for point, weight in report.indicator_weights:
            total = total + weight * Gamble.indicator(SPACE2, [point])
        assert total == f
        assert all(lam >= 0 for lam in report.generator_weights)
        assert all(w >= 0 for _, w in report.indicator_weights)

    def test_uniform_loss_is_not_a_member(self):
        f = seq_gamble(SPACE2, -1, -1, -1, -1)
        assert not natural_extension_member(self.cone, f)

    def test_scaled_generator_with_slack_is_member(self):
        f = 2 * self.g + Gamble.unit(SPACE2)
        assert natural_extension_member(self.cone, f)

    def test_kernel_direction_is_not_a_member_under_lineality(self):
        # Lineality directions and their negatives are in the cone's
        # linear part, but membership asks for the strict cone.
        cone = DesirCone(SPACE2, [self.g], kernel_basis(SPACE2))
        for v in cone.lineality:
            assert not natural_extension_member(cone, v)
            assert not natural_extension_member(cone, -v)

    def test_member_plus_lineality_shift_is_member(self):
        cone = DesirCone(SPACE2, [self.g], kernel_basis(SPACE2))
        v = cone.lineality[0]
        assert natural_extension_member(cone, self.g + v)
        assert natural_extension_member(cone, self.g - 2 * v)

    def test_incoherent_cone_refuses_queries(self):
        bad = DesirCone(SPACE2, [seq_gamble(SPACE2, -1, -1, -1, -1)])
        with pytest.raises(IncoherentConeError):
            natural_extension_member(bad, Gamble.unit(SPACE2))

    def test_query_space_mismatch_rejected(self):
        with pytest.raises(ValueError):
            natural_extension_member(self.cone, Gamble.unit(SequenceSpace(BW, 3)))


class TestClosureProperties:
    """Random sampling of the cone axioms: addition and positive scaling."""

    def _random_coherent_cone(self, rng):
        while True:
            gens = [random_gamble(rng, SPACE2) for _ in range(rng.randint(1, 3))]
            cone = DesirCone(SPACE2, gens)
            if cone.is_coherent:
                return cone

    def _random_member(self, rng, cone):
        # Random positive-hull element: guaranteed member by construction.
        total = Gamble.zero(SPACE2)
        for g in cone.generators:
            total = total + F(rng.randint(0, 2)) * g
        for x in SPACE2.points():
            total = total + F(rng.randint(0, 2)) * Gamble.indicator(SPACE2, [x])
        if total.is_zero():
            total = Gamble.unit(SPACE2)
        return total

    def test_sums_and_scalings_stay_inside(self):
        rng = random.Random(17)
        for _ in range(25):
            cone = self._random_coherent_cone(rng)
            f = self._random_member(rng, cone)
            h = self._random_member(rng, cone)
            assert natural_extension_member(cone, f)
            assert natural_extension_member(cone, h)
            assert natural_extension_member(cone, f + h)
            assert natural_extension_member(cone, F(rng.randint(1, 5), rng.randint(1, 3)) * f)

    def test_dominating_gambles_stay_inside(self):
        rng = random.Random(19)
        for _ in range(25):
            cone = self._random_coherent_cone(rng)
            f = self._random_member(rng, cone)
            bump = Gamble.from_function(SPACE2, lambda x: F(rng.randint(0, 2)))
            assert natural_extension_member(cone, f + bump)


class TestPrevisions:
    def test_vacuous_previsions_are_min_and_max(self):
        cone = DesirCone(SPACE2, [])
        rng = random.Random(29)
        for _ in range(20):
            f = random_gamble(rng, SPACE2, -5, 5)
            assert lower_prevision(cone, f) == PrevisionValue.of(f.min_value())
            assert upper_prevision(cone, f) == PrevisionValue.of(f.max_value())

    def test_known_prevision_pair(self):
        g = seq_gamble(SPACE2, -3, 1, 1, -3)
        cone = DesirCone(SPACE2, [g], kernel_basis(SPACE2))
        f = Gamble.indicator(SPACE2, [("b", "w")])
        assert lower_prevision(cone, f) == PrevisionValue.of(F(3, 8))
        assert upper_prevision(cone, f) == PrevisionValue.of(F(1, 2))

    def test_conjugacy(self):
        rng = random.Random(31)
        g = seq_gamble(SPACE2, -3, 1, 1, -3)
        cone = DesirCone(SPACE2, [g])
        for _ in range(20):
            f = random_gamble(rng, SPACE2)
            assert upper_prevision(cone, f) == -lower_prevision(cone, -f)

    def test_constant_shift(self):
        rng = random.Random(33)
        g = seq_gamble(SPACE2, -3, 1, 1, -3)
        cone = DesirCone(SPACE2, [g])
        for _ in range(10):
            f = random_gamble(rng, SPACE2)
            c = F(rng.randint(-3, 3), rng.randint(1, 4))
            base = lower_prevision(cone, f)
            shifted = lower_prevision(cone, f.shift(c))
            assert shifted == PrevisionValue.of(base.value + c)

    def test_bounds_bracket_the_gamble(self):
        rng = random.Random(35)
        g = seq_gamble(SPACE2, -3, 1, 1, -3)
        cone = DesirCone(SPACE2, [g])
        for _ in range(20):
            f = random_gamble(rng, SPACE2, -4, 4)
            lo = lower_prevision(cone, f)
            hi = upper_prevision(cone, f)
            assert f.min_value() <= lo.value <= hi.value <= f.max_value()

    def test_incoherent_cone_is_unbounded(self):
        bad = DesirCone(SPACE2, [seq_gamble(SPACE2, -1, -1, -1, -1)])
        out = lower_prevision(bad, Gamble.unit(SPACE2))
        assert out == PrevisionValue.unbounded_above()
        assert not out.is_finite

    def test_marginal_desirability(self):
        g = seq_gamble(SPACE2, -3, 1, 1, -3)
        cone = DesirCone(SPACE2, [g], kernel_basis(SPACE2))
        f = Gamble.indicator(SPACE2, [("b", "w")])
        assert is_marginally_desirable(cone, f.shift(F(-3, 8)))
        assert not is_marginally_desirable(cone, f)


class TestConditioning:
    def test_conditioning_on_sure_event_is_plain_membership(self):
        g = seq_gamble(SPACE2, -3, 1, 1, -3)
        cone = DesirCone(SPACE2, [g])
        f = g + Gamble.unit(SPACE2)
        assert updated_member(cone, SPACE2.points(), f) == natural_extension_member(cone, f)

    def test_conditioning_respects_the_event(self):
        cone = DesirCone(SPACE2, [seq_gamble(SPACE2, 2, -1, 0, 0)])
        event = [("b", "b"), ("b", "w")]
        # Supported on the event and a positive multiple of the generator
        # there: desirable contingent on the event.
        f = seq_gamble(SPACE2, 2, -1, 0, 0)
        assert updated_member(cone, event, f)
        # A sure loss on the event is not.
        loss = seq_gamble(SPACE2, -1, -1, 0, 0)
        assert not updated_member(cone, event, loss)

    def test_gamble_outside_event_support_is_not_a_member(self):
        # The updated cone contains only gambles vanishing off the event,
        # so anything with mass outside is out regardless of its values.
        cone = DesirCone(SPACE2, [seq_gamble(SPACE2, -3, 1, 1, -3)])
        event = [("b", "b")]
        assert not updated_member(cone, event, Gamble.unit(SPACE2))

    def test_empty_event_rejected(self):
        cone = DesirCone(SPACE2, [seq_gamble(SPACE2, -3, 1, 1, -3)])
        with pytest.raises(ValueError):
            updated_member(cone, [], Gamble.unit(SPACE2))


def lex_prevision_member(theta: FrequencyVector, f: Gamble) -> bool:
    """Membership in the lexicographic refinement of an iid prevision.

    The prevision of f under independent draws with chances theta comes
    first; ties on its zero hyperplane are broken by the coordinates in
    point order.  The result is a strict total ordering of the nonzero
    gambles against zero.
    """
    key = [multinomial_lpr(theta, count_representation(f))]
    key.extend(f[x] for x in f.space.points())
    for entry in key:
        if entry != 0:
            return entry > 0
    return False


class TestMaximality:
    """Maximal coherent sets accept every nonzero gamble or its negation."""

    THETA = FrequencyVector(BW, (F(1, 3), F(2, 3)))

    def test_refined_prevision_set_decides_every_nonzero_gamble(self):
        rng = random.Random(401)
        for _ in range(200):
            f = Gamble.from_function(
                SPACE2, lambda x: F(rng.randint(-3, 3), rng.randint(1, 3))
            )
            if f.is_zero():
                continue
            assert lex_prevision_member(self.THETA, f) != lex_prevision_member(
                self.THETA, -f
            )

    def test_refined_prevision_set_is_coherent(self):
        rng = random.Random(403)
        assert not lex_prevision_member(self.THETA, Gamble.zero(SPACE2))
        members = []
        for _ in range(120):
            f = Gamble.from_function(SPACE2, lambda x: F(rng.randint(-4, 4)))
            if f.is_zero():
                continue
            if f.is_nonnegative():
                assert lex_prevision_member(self.THETA, f)
            if f.is_nonpositive():
                assert not lex_prevision_member(self.THETA, f)
            if lex_prevision_member(self.THETA, f):
                members.append(f)
        for i in range(0, len(members) - 1, 2):
            combo = members[i] + F(rng.randint(1, 5), 2) * members[i + 1]
            assert lex_prevision_member(self.THETA, combo)

    def test_vacuous_set_leaves_gambles_undecided(self):
        cone = DesirCone(SPACE2, [])
        f = seq_gamble(SPACE2, 1, -1, 0, 0)
        assert not natural_extension_member(cone, f)
        assert not natural_extension_member(cone, -f)
